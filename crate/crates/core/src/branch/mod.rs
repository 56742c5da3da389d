//! Single-branch analysis: characteristic data, valuations, implicit
//! equations and intersection multiplicities.

pub mod puiseux;

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::exactalg::resultant::{norm_monomial_x, norm_monomial_x_mod, resultant_t};
use crate::exactalg::series::{map_coeffs, mul_trunc, order_of, poly_eval_series, powers_trunc};
use crate::exactalg::{BivarPoly, FieldOps, Order, PrimeField, Rat, Rationals, TruncSeries, UniPoly};
use crate::Error;

pub use puiseux::newton_puiseux;

/// Default bound on the truncation used for intersection numbers of exact
/// branches; truncated branches are limited by their own precision.
pub const DEFAULT_TRUNCATION: u32 = 4096;

/// Largest expansion order tried by the adaptive equation pipeline.
const MAX_ADAPTIVE_PRECISION: u32 = 1 << 14;

/// A branch `t ↦ (x(t), y(t))` given by polynomials with rational
/// coefficients.
///
/// `precision` is `None` when the polynomials are the branch itself and
/// `Some(N)` when they only agree with it through `t^N` (as produced by a
/// truncated Newton–Puiseux expansion).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parametrization {
    x: UniPoly,
    y: UniPoly,
    precision: Option<u32>,
}

/// Which coordinate is the monomial `s t^n` of a Puiseux-type parametrization.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MonomialAxis {
    X,
    Y,
}

impl Parametrization {
    /// `(t^n, Σ a_j t^j)` with `j ≥ n`.
    pub fn puiseux(n: u32, y_terms: &[(u32, Rat)]) -> Result<Self, Error> {
        if n == 0 {
            return Err(Error::InvalidParametrization("multiplicity must be positive".into()));
        }
        if let Some((j, _)) = y_terms.iter().find(|(j, c)| *j < n && !c.is_zero()) {
            return Err(Error::InvalidParametrization(format!("exponent {j} is below the multiplicity {n}")));
        }
        let deg = y_terms.iter().map(|t| t.0).max().unwrap_or(0) as usize;
        let mut ys = vec![Rat::zero(); deg + 1];
        for (j, c) in y_terms {
            ys[*j as usize] += c;
        }
        Self::new(UniPoly::monomial(Rat::one(), n as usize), UniPoly::from_coeffs(ys), None)
    }

    /// Convenience for integer coefficients: `(t^n, Σ c t^j)`.
    pub fn puiseux_int(n: u32, y_terms: &[(u32, i64)]) -> Result<Self, Error> {
        let ts: Vec<(u32, Rat)> = y_terms.iter().map(|&(j, c)| (j, Rat::from_integer(c.into()))).collect();
        Self::puiseux(n, &ts)
    }

    /// General constructor. Both coordinates must vanish at `t = 0`, not
    /// both be zero, and one of them must be a monomial of minimal order.
    pub fn new(x: UniPoly, y: UniPoly, precision: Option<u32>) -> Result<Self, Error> {
        if !x.coeff(0).is_zero() || !y.coeff(0).is_zero() {
            return Err(Error::InvalidParametrization("the branch must pass through the origin".into()));
        }
        if x.is_zero() && y.is_zero() {
            return Err(Error::InvalidParametrization("both coordinates vanish".into()));
        }
        let p = Parametrization { x, y, precision };
        p.monomial_axis()?;
        let g = p.exponents().fold(0u32, |acc, j| acc.gcd(&j));
        if g != 1 {
            return Err(Error::InvalidParametrization(format!("exponents share the common factor {g}")));
        }
        Ok(p)
    }

    pub fn x(&self) -> &UniPoly {
        &self.x
    }

    pub fn y(&self) -> &UniPoly {
        &self.y
    }

    pub fn precision(&self) -> Option<u32> {
        self.precision
    }

    pub fn is_exact(&self) -> bool {
        self.precision.is_none()
    }

    /// The same branch with coordinates exchanged.
    pub fn swapped(&self) -> Self {
        Parametrization { x: self.y.clone(), y: self.x.clone(), precision: self.precision }
    }

    fn exponents(&self) -> impl Iterator<Item = u32> + '_ {
        let sup = |p: &UniPoly| -> Vec<u32> {
            p.coeffs().iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, _)| k as u32).collect()
        };
        sup(&self.x).into_iter().chain(sup(&self.y))
    }

    /// Multiplicity of the branch (minimal order of the coordinates).
    pub fn multiplicity(&self) -> u32 {
        let ox = self.x.order().map_or(u32::MAX, |k| k as u32);
        let oy = self.y.order().map_or(u32::MAX, |k| k as u32);
        ox.min(oy)
    }

    /// The coordinate that is a monomial of minimal order.
    pub fn monomial_axis(&self) -> Result<MonomialAxis, Error> {
        let is_mono = |p: &UniPoly| p.coeffs().iter().filter(|c| !c.is_zero()).count() == 1;
        let m = self.multiplicity();
        if is_mono(&self.x) && self.x.order() == Some(m as usize) {
            Ok(MonomialAxis::X)
        } else if is_mono(&self.y) && self.y.order() == Some(m as usize) {
            Ok(MonomialAxis::Y)
        } else {
            Err(Error::InvalidParametrization(
                "one coordinate must be a monomial of minimal order (Puiseux form)".into(),
            ))
        }
    }

    /// `(s, n, Y(t))` with the monomial coordinate `s t^n` and the other one `Y`.
    fn puiseux_form(&self) -> (Rat, u32, &UniPoly, MonomialAxis) {
        let axis = self.monomial_axis().expect("validated at construction");
        let (mono, other) = match axis {
            MonomialAxis::X => (&self.x, &self.y),
            MonomialAxis::Y => (&self.y, &self.x),
        };
        let n = mono.order().unwrap();
        (mono.coeff(n), n as u32, other, axis)
    }

    /// Largest exponent appearing in either coordinate.
    pub fn degree(&self) -> u32 {
        self.x.degree().unwrap_or(0).max(self.y.degree().unwrap_or(0)) as u32
    }

    /// The coordinates as truncated series.
    pub fn series(&self, trunc: u32) -> (TruncSeries, TruncSeries) {
        (TruncSeries::from_poly(&self.x, trunc), TruncSeries::from_poly(&self.y, trunc))
    }

    /// Replaces the coordinates by their truncations at `t^n`.
    pub fn truncated(&self, n: u32) -> Self {
        let cut = |p: &UniPoly| UniPoly::from_coeffs(p.coeffs().iter().take(n as usize + 1).cloned().collect());
        let precision = Some(self.precision.map_or(n, |p| p.min(n)));
        Parametrization { x: cut(&self.x), y: cut(&self.y), precision }
    }
}

/// Characteristic data of a plane branch.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharData {
    pub g: usize,
    /// Characteristic exponents `β_0..β_g`.
    pub beta: Vec<u32>,
    /// Semigroup generators `β̄_0..β̄_g`.
    pub beta_bar: Vec<u32>,
    /// `e_i = gcd(β_0..β_i)`.
    pub e: Vec<u32>,
    /// `n_i = e_{i-1}/e_i` for `i = 1..g`.
    pub n_seq: Vec<u32>,
    pub conductor: u32,
}

impl CharData {
    pub fn delta(&self) -> u32 {
        self.conductor / 2
    }

    pub fn multiplicity(&self) -> u32 {
        self.beta[0]
    }

    /// `n_g β̄_g`, defined for singular branches.
    pub fn n_g_beta_bar_g(&self) -> Option<u32> {
        (self.g >= 1).then(|| self.n_seq[self.g - 1] * self.beta_bar[self.g])
    }

    /// Membership table of `⟨β̄_0..β̄_g⟩` on `0..=bound`.
    pub fn semigroup_table(&self, bound: u32) -> Vec<bool> {
        semigroup_table(&self.beta_bar, bound)
    }

    /// Characteristic data from semigroup generators, checking that they
    /// form the semigroup of a plane branch.
    pub fn from_semigroup(beta_bar: &[u32]) -> Result<CharData, Error> {
        let bad = |m: &str| Error::InvalidParametrization(format!("{beta_bar:?} is not a plane branch semigroup: {m}"));
        if beta_bar.is_empty() || beta_bar[0] == 0 {
            return Err(bad("empty"));
        }
        let mut e = vec![beta_bar[0]];
        let mut n_seq = Vec::new();
        let mut beta = vec![beta_bar[0]];
        for i in 1..beta_bar.len() {
            let ei = e[i - 1].gcd(&beta_bar[i]);
            if ei == e[i - 1] {
                return Err(bad("gcd sequence must strictly decrease"));
            }
            let ni = e[i - 1] / ei;
            if i >= 2 {
                let prev_n = n_seq[i - 2];
                if beta_bar[i] <= prev_n * beta_bar[i - 1] {
                    return Err(bad("β̄_{i+1} must exceed n_i β̄_i"));
                }
                // β_{i} = β̄_{i} - n_{i-1} β̄_{i-1} + β_{i-1}
                beta.push(beta_bar[i] - prev_n * beta_bar[i - 1] + beta[i - 1]);
            } else {
                beta.push(beta_bar[1]);
            }
            e.push(ei);
            n_seq.push(ni);
        }
        if *e.last().unwrap() != 1 {
            return Err(bad("generators are not coprime"));
        }
        let g = beta_bar.len() - 1;
        Ok(CharData { g, conductor: conductor_formula(beta_bar, &n_seq), beta, beta_bar: beta_bar.to_vec(), e, n_seq })
    }
}

fn conductor_formula(beta_bar: &[u32], n_seq: &[u32]) -> u32 {
    let s: i64 = n_seq.iter().zip(&beta_bar[1..]).map(|(&n, &b)| (n as i64 - 1) * b as i64).sum();
    (s - beta_bar[0] as i64 + 1).max(0) as u32
}

/// Membership table of the numerical semigroup generated by `gens` on `0..=bound`.
pub fn semigroup_table(gens: &[u32], bound: u32) -> Vec<bool> {
    let mut t = vec![false; bound as usize + 1];
    t[0] = true;
    for k in 1..=bound as usize {
        t[k] = gens.iter().any(|&g| g as usize <= k && g > 0 && t[k - g as usize]);
    }
    t
}

/// Characteristic exponents and semigroup of a parametrization in Puiseux form.
pub fn char_data(p: &Parametrization) -> Result<CharData, Error> {
    let (_, n, other, _) = p.puiseux_form();
    let support: Vec<u32> =
        other.coeffs().iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, _)| k as u32).collect();
    let mut beta = vec![n];
    let mut e = vec![n];
    while *e.last().unwrap() > 1 {
        let prev = *e.last().unwrap();
        let Some(&b) = support.iter().find(|&&j| j % prev != 0) else {
            return Err(match p.precision {
                Some(nn) => Error::TruncationTooSmall { attempted: nn },
                None => Error::InvalidParametrization("exponents are not coprime".into()),
            });
        };
        if let Some(nn) = p.precision {
            if b > nn {
                return Err(Error::TruncationTooSmall { attempted: nn });
            }
        }
        beta.push(b);
        e.push(prev.gcd(&b));
    }
    let g = beta.len() - 1;
    let n_seq: Vec<u32> = (1..=g).map(|i| e[i - 1] / e[i]).collect();
    let mut beta_bar = vec![beta[0]];
    if g >= 1 {
        beta_bar.push(beta[1]);
    }
    for i in 1..g {
        beta_bar.push(n_seq[i - 1] * beta_bar[i] + beta[i + 1] - beta[i]);
    }
    let conductor = conductor_formula(&beta_bar, &n_seq);
    Ok(CharData { g, beta, beta_bar, e, n_seq, conductor })
}

/// `ord_t h(φ(t))`, computed through `t^T` (and never beyond the precision
/// of a truncated parametrization).
pub fn valuation(p: &Parametrization, h: &BivarPoly, trunc: u32) -> Order {
    let t = p.precision.map_or(trunc, |n| n.min(trunc));
    let (x, y) = p.series(t);
    poly_eval_series(h, &x, &y).order()
}

/// Minimal polynomial of the branch, with integer coefficients of content
/// one and positive leading coefficient in `y`.
pub fn implicitize(p: &Parametrization) -> Result<BivarPoly, Error> {
    let f = match p.monomial_axis() {
        Ok(MonomialAxis::X) => {
            let (s, n, other, _) = p.puiseux_form();
            norm_monomial_x(&s, n as usize, other)
        }
        Ok(MonomialAxis::Y) => {
            let (s, n, other, _) = p.puiseux_form();
            swap_xy(&norm_monomial_x(&s, n as usize, other))
        }
        Err(_) => implicitize_by_resultant(p)?,
    };
    let f = f.normalized();
    if !is_squarefree(&f) {
        return Err(Error::InvalidParametrization("the implicit equation is not reduced".into()));
    }
    Ok(f)
}

/// `Res_t(x - x(t), y - y(t))`, normalized.
pub fn implicitize_by_resultant(p: &Parametrization) -> Result<BivarPoly, Error> {
    let lift = |poly: &UniPoly, var: BivarPoly| -> Vec<BivarPoly> {
        let mut out: Vec<BivarPoly> = poly.coeffs().iter().map(|c| BivarPoly::constant(-c.clone())).collect();
        if out.is_empty() {
            out.push(BivarPoly::zero());
        }
        out[0] = &out[0] + &var;
        out
    };
    Ok(resultant_t(&lift(&p.x, BivarPoly::x()), &lift(&p.y, BivarPoly::y()))?.normalized())
}

pub(crate) fn swap_xy(f: &BivarPoly) -> BivarPoly {
    BivarPoly::from_terms(f.terms().map(|(a, b, c)| (b, a, c.clone())))
}

/// Heuristic squarefreeness test: `gcd(f(x0, y), f_y(x0, y))` is trivial
/// for at least one of a few specializations that keep the `y`-degree.
pub fn is_squarefree(f: &BivarPoly) -> bool {
    if f.deg_y() == 0 {
        return f.eval_at_y(&Rat::zero()).squarefree_part().degree() == f.eval_at_y(&Rat::zero()).degree();
    }
    let fy = f.dy();
    let nodes =
        [crate::exactalg::rat(2), crate::exactalg::rat(-3), crate::exactalg::ratio(5, 7), crate::exactalg::rat(11)];
    nodes.iter().any(|x0| {
        let a = f.eval_at_x(x0);
        if a.degree() != Some(f.deg_y() as usize) {
            return false;
        }
        a.gcd(&fy.eval_at_x(x0)).degree() == Some(0)
    })
}

/// Equation of the branch modulo `A^d`, where `A` is the monomial
/// coordinate. With `d = None` this is the full (unnormalized) norm.
pub fn local_equation(p: &Parametrization, d: Option<usize>) -> BivarPoly {
    let (s, n, other, axis) = p.puiseux_form();
    let f = norm_monomial_x_mod(&s, n as usize, other, d);
    match axis {
        MonomialAxis::X => f,
        MonomialAxis::Y => swap_xy(&f),
    }
}

/// `ord φ_1^*(f_2)` if it provably equals `[f_1, f_2]_0`.
///
/// The norm and its pullback are computed modulo two primes and accepted
/// when both give the same order, as for ranks. Otherwise, or when a prime
/// divides a denominator, the computation is redone over `Q`.
fn one_sided(p1: &Parametrization, p2: &Parametrization, trunc: u32) -> Option<u32> {
    let (m1, m2) = (p1.multiplicity() as u64, p2.multiplicity() as u64);
    let t = p1.precision.map_or(trunc, |n| n.min(trunc));
    let d = (t as u64 / m1 + 1) as usize;
    let [q1, q2] = crate::valmod::DEFAULT_PRIMES.map(|q| norm_order(&PrimeField::new(q), p1, p2, d, t));
    let i = match (q1, q2) {
        (Some(a), Some(b)) if a == b => a,
        _ => norm_order(&Rationals, p1, p2, d, t).expect("rational evaluation is always defined"),
    }?;
    // A truncated second branch is a branch with contact at least N2 + 1
    // to the true one, so by the ultrametric property of contact the
    // value carries over while it stays strictly below that contact.
    let ok2 = p2.precision.map_or(true, |n| (i as u64) * m2 < (n as u64 + 1) * m1);
    (ok2 && (i as u64) < d as u64 * m1).then_some(i)
}

/// Order at `t` (up to `t^trunc`) of the norm of `p2`, taken modulo the
/// `d`-th power of its monomial coordinate, pulled back along `p1`. The
/// outer `None` means a coefficient has no image in `F`.
fn norm_order<F: FieldOps>(
    f: &F,
    p1: &Parametrization,
    p2: &Parametrization,
    d: usize,
    trunc: u32,
) -> Option<Option<u32>> {
    let (s, n, other, axis) = p2.puiseux_form();
    let n = n as usize;
    let s_inv = f.inv(&f.reduce_rat(&s)?);
    // Column j of the matrix of multiplication by Y(t) on the basis t^0..t^{n-1}.
    let mut mat = vec![vec![vec![f.zero(); d]; n]; n];
    let mut s_pows = vec![f.one()];
    for (k, c) in other.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let c = f.reduce_rat(c)?;
        for j in 0..n {
            let (q, r) = ((k + j) / n, (k + j) % n);
            if q >= d {
                continue;
            }
            while s_pows.len() <= q {
                let next = f.mul(s_pows.last().unwrap(), &s_inv);
                s_pows.push(next);
            }
            mat[r][j][q] = f.add(&mat[r][j][q], &f.mul(&c, &s_pows[q]));
        }
    }
    let norm = char_poly_trunc(f, &mat, d);
    let (big_x, big_y) = match axis {
        MonomialAxis::X => (p1.x(), p1.y()),
        MonomialAxis::Y => (p1.y(), p1.x()),
    };
    let len = trunc as usize + 1;
    let xs = map_coeffs(f, big_x.coeffs(), len)?;
    let ys = map_coeffs(f, big_y.coeffs(), len)?;
    let x_pows = powers_trunc(f, &xs, d as u32 - 1, len);
    let mut acc = vec![f.zero(); len];
    for coeff in norm.iter().rev() {
        acc = mul_trunc(f, &acc, &ys, len);
        for (a, c) in coeff.iter().enumerate() {
            if f.is_zero(c) {
                continue;
            }
            for (o, xa) in acc.iter_mut().zip(&x_pows[a]) {
                if !f.is_zero(xa) {
                    *o = f.add(o, &f.mul(c, xa));
                }
            }
        }
    }
    Some(order_of(f, &acc).map(|o| o as u32))
}

/// `det(λ - A)` for `A` over `F[x]/(x^d)`, by Faddeev–LeVerrier. Entry `k`
/// is the coefficient of `λ^k`.
fn char_poly_trunc<F: FieldOps>(f: &F, a: &[Vec<Vec<F::Elem>>], d: usize) -> Vec<Vec<F::Elem>> {
    let n = a.len();
    let zero = vec![f.zero(); d];
    let mut coeffs = vec![zero.clone(); n + 1];
    coeffs[n][0] = f.one();
    let mut m: Vec<Vec<Vec<F::Elem>>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { coeffs[n].clone() } else { zero.clone() }).collect()).collect();
    for k in 1..=n {
        let mut am = vec![vec![zero.clone(); n]; n];
        for i in 0..n {
            for l in 0..n {
                if a[i][l].iter().all(|c| f.is_zero(c)) {
                    continue;
                }
                for j in 0..n {
                    let prod = mul_trunc(f, &a[i][l], &m[l][j], d);
                    for (o, v) in am[i][j].iter_mut().zip(prod) {
                        *o = f.add(o, &v);
                    }
                }
            }
        }
        let scale = f.neg(&f.inv(&f.int(k as i64)));
        let c: Vec<F::Elem> =
            (0..d).map(|e| f.mul(&scale, &(0..n).fold(f.zero(), |s, i| f.add(&s, &am[i][i][e])))).collect();
        for i in 0..n {
            for (o, v) in am[i][i].iter_mut().zip(&c) {
                *o = f.add(o, v);
            }
        }
        coeffs[n - k] = c;
        m = am;
    }
    coeffs
}

/// Intersection multiplicity `[f_1, f_2]_0`, computed from both sides.
///
/// Both branches are first cut at `t^16`, then at doubling orders. Every
/// accepted value is certified for the cut branches, and a cut branch
/// stands in for the full one within its precision, so the first accepted
/// value is final.
pub fn intersection(p1: &Parametrization, p2: &Parametrization, trunc: u32) -> Result<u32, Error> {
    let limit = trunc.min(p1.precision.unwrap_or(u32::MAX)).min(p2.precision.unwrap_or(u32::MAX));
    let mut t = 16;
    while t < limit {
        if let Ok(i) = intersection_at(&p1.truncated(t), &p2.truncated(t), t) {
            return Ok(i);
        }
        t *= 2;
    }
    intersection_at(p1, p2, trunc)
}

fn intersection_at(p1: &Parametrization, p2: &Parametrization, trunc: u32) -> Result<u32, Error> {
    let attempted = p1.precision.unwrap_or(trunc).min(p2.precision.unwrap_or(trunc)).min(trunc);
    let a = one_sided(p1, p2, trunc);
    let b = one_sided(p2, p1, trunc);
    match (a, b) {
        (Some(a), Some(b)) if a != b => {
            if p1.is_exact() && p2.is_exact() {
                panic!("intersection multiplicity is not symmetric: {a} vs {b}");
            }
            Err(Error::TruncationTooSmall { attempted })
        }
        (Some(a), _) | (None, Some(a)) => Ok(a),
        (None, None) => {
            if p1.is_exact() && p2.is_exact() && implicitize(p1)? == implicitize(p2)? {
                Err(Error::BranchesNotDistinct)
            } else {
                Err(Error::TruncationTooSmall { attempted })
            }
        }
    }
}

/// Outcome of [`diagonal_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalCheck {
    pub equisingular: bool,
    pub intersection: u32,
    pub n_g_beta_bar_g: Option<u32>,
    /// Equisingular, singular (`g ≥ 1`) and `I > n_g β̄_g`.
    pub diagonal: bool,
}

pub fn diagonal_check(p1: &Parametrization, p2: &Parametrization, trunc: u32) -> Result<DiagonalCheck, Error> {
    let (c1, c2) = (char_data(p1)?, char_data(p2)?);
    let i = intersection(p1, p2, trunc)?;
    Ok(diagonal_from_data(&c1, &c2, i))
}

pub fn diagonal_from_data(c1: &CharData, c2: &CharData, i: u32) -> DiagonalCheck {
    let equisingular = c1.beta_bar == c2.beta_bar;
    let bound = c1.n_g_beta_bar_g();
    let diagonal = equisingular && bound.is_some_and(|b| i > b);
    DiagonalCheck { equisingular, intersection: i, n_g_beta_bar_g: bound, diagonal }
}

/// Branch data, pairwise intersections and the semigroup conductor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveData {
    pub chars: Vec<CharData>,
    /// Symmetric, with zeros on the diagonal.
    pub intersections: Vec<Vec<u32>>,
    /// `c_i + Σ_{j≠i} I_{ij}`.
    pub conductor: Vec<i64>,
}

impl CurveData {
    pub fn r(&self) -> usize {
        self.chars.len()
    }

    pub fn delta(&self) -> u64 {
        let r = self.r();
        let branches: u64 = self.chars.iter().map(|c| c.delta() as u64).sum();
        let pairs: u64 =
            (0..r).flat_map(|i| (0..i).map(move |j| (i, j))).map(|(i, j)| self.intersections[i][j] as u64).sum();
        branches + pairs
    }

    /// `Σ c_i + 2 Σ_{i<j} I_{ij} - r + 1`.
    pub fn milnor(&self) -> u64 {
        let total: i64 = self.conductor.iter().sum();
        (total - self.r() as i64 + 1) as u64
    }
}

pub fn curve_data(spec: &CurveSpec, trunc: u32) -> Result<CurveData, Error> {
    let r = spec.r();
    let chars = spec.branches.iter().map(char_data).collect::<Result<Vec<_>, _>>()?;
    let mut inter = vec![vec![0u32; r]; r];
    for i in 0..r {
        for j in 0..i {
            let v = intersection(&spec.branches[i], &spec.branches[j], trunc)?;
            inter[i][j] = v;
            inter[j][i] = v;
        }
    }
    let conductor =
        (0..r).map(|i| chars[i].conductor as i64 + inter[i].iter().map(|&v| v as i64).sum::<i64>()).collect();
    Ok(CurveData { chars, intersections: inter, conductor })
}

/// The defining polynomial: the given equation, or the product of the
/// branch equations (given, or implicitized from exact branches).
pub fn curve_equation(spec: &CurveSpec) -> Result<BivarPoly, Error> {
    if let Some(f) = &spec.equation {
        return Ok(f.clone());
    }
    let mut f = BivarPoly::from_i64_terms(&[(0, 0, 1)]);
    for i in 0..spec.r() {
        f = &f * &branch_equation(spec, i)?;
    }
    Ok(f)
}

/// Equation of branch `i`: the given one, or the implicitization of an
/// exact parametrization.
pub fn branch_equation(spec: &CurveSpec, i: usize) -> Result<BivarPoly, Error> {
    if let Some(f) = &spec.branch_equations[i] {
        return Ok(f.clone());
    }
    let p = &spec.branches[i];
    if !p.is_exact() {
        return Err(Error::Unsupported("a truncated branch has no implicit equation".into()));
    }
    implicitize(p)
}

/// One entry of a curve description: a branch, or an equation whose
/// branches are found by Newton–Puiseux.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BranchInput {
    Param(Parametrization),
    Equation(BivarPoly),
}

/// Branches of a curve entered as one or more equations.
pub fn spec_from_equations(equations: &[BivarPoly], precision: Option<u32>) -> Result<CurveSpec, Error> {
    let inputs: Vec<BranchInput> = equations.iter().cloned().map(BranchInput::Equation).collect();
    spec_from_inputs(&inputs, precision)
}

/// Assembles a curve from parametrized branches and equations. Equations
/// are expanded far enough for the value-set engine, whose largest box (the
/// Jacobian one) reaches `β_0 + 2c_S` on each branch.
///
/// With `precision = None` the expansion starts at `t^32`, doubles until
/// characteristic data and intersections are certified, and is then redone
/// at the required order. A fixed precision is used as given.
pub fn spec_from_inputs(inputs: &[BranchInput], precision: Option<u32>) -> Result<CurveSpec, Error> {
    if inputs.is_empty() {
        return Err(Error::Unsupported("a curve needs at least one branch or equation".into()));
    }
    let equations: Vec<&BivarPoly> = inputs
        .iter()
        .filter_map(|b| match b {
            BranchInput::Equation(f) => Some(f),
            BranchInput::Param(_) => None,
        })
        .collect();
    for f in &equations {
        // Surfaces NotThroughOrigin and NonReducedInput before anything else.
        newton_puiseux(f, 1)?;
    }
    let product = if equations.is_empty() {
        None
    } else {
        let mut acc = BivarPoly::from_i64_terms(&[(0, 0, 1)]);
        for b in inputs {
            let f = match b {
                BranchInput::Equation(f) => f.clone(),
                BranchInput::Param(p) => implicitize(p)?,
            };
            acc = &acc * &f;
        }
        Some(acc)
    };
    if let Some(f) = &product {
        if inputs.len() > 1 && !is_squarefree(f) {
            return Err(Error::BranchesNotDistinct);
        }
    }
    let expand = |prec: u32| -> Result<CurveSpec, Error> {
        let mut branches = Vec::new();
        let mut eqs = Vec::new();
        for b in inputs {
            match b {
                BranchInput::Param(p) => {
                    branches.push(p.clone());
                    eqs.push(None);
                }
                BranchInput::Equation(f) => {
                    let bs = newton_puiseux(f, prec)?;
                    let single = bs.len() == 1;
                    for p in bs {
                        branches.push(p);
                        eqs.push(single.then(|| f.clone()));
                    }
                }
            }
        }
        let mut spec = match &product {
            Some(f) => CurveSpec::with_equation(branches, f.clone()),
            None => CurveSpec::new(branches),
        };
        spec.branch_equations = eqs;
        Ok(spec)
    };
    if let Some(prec) = precision {
        return expand(prec);
    }
    if equations.is_empty() {
        return expand(0);
    }
    let mut prec = 32u32;
    loop {
        let spec = expand(prec)?;
        match curve_data(&spec, DEFAULT_TRUNCATION) {
            Ok(data) => {
                let needed = (0..spec.r())
                    .map(|i| data.chars[i].multiplicity() as i64 * 2 + 2 * data.conductor[i])
                    .max()
                    .unwrap_or(0) as u32;
                return if needed <= prec { Ok(spec) } else { expand(needed) };
            }
            Err(Error::TruncationTooSmall { .. }) if prec < MAX_ADAPTIVE_PRECISION => prec *= 2,
            Err(e) => return Err(e),
        }
    }
}

/// A reduced plane curve germ given branch by branch.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveSpec {
    pub branches: Vec<Parametrization>,
    /// The defining polynomial when the curve was entered as one.
    pub equation: Option<BivarPoly>,
    /// Known irreducible equations, one slot per branch.
    pub branch_equations: Vec<Option<BivarPoly>>,
}

impl CurveSpec {
    pub fn new(branches: Vec<Parametrization>) -> Self {
        let r = branches.len();
        CurveSpec { branches, equation: None, branch_equations: vec![None; r] }
    }

    pub fn with_equation(branches: Vec<Parametrization>, f: BivarPoly) -> Self {
        CurveSpec { equation: Some(f), ..Self::new(branches) }
    }

    pub fn r(&self) -> usize {
        self.branches.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;

    fn p(n: u32, ys: &[(u32, i64)]) -> Parametrization {
        Parametrization::puiseux_int(n, ys).unwrap()
    }

    /// Gap enumeration oracle: the conductor is one past the largest gap.
    fn conductor_by_gaps(gens: &[u32]) -> u32 {
        let bound = 4 * gens.iter().product::<u32>().max(4);
        let t = semigroup_table(gens, bound);
        t.iter().rposition(|&m| !m).map_or(0, |g| g as u32 + 1)
    }

    #[test]
    fn char_data_examples() {
        let cusp = char_data(&p(2, &[(3, 1)])).unwrap();
        assert_eq!((cusp.beta_bar.clone(), cusp.e.clone(), cusp.conductor), (vec![2, 3], vec![2, 1], 2));

        let c = char_data(&p(4, &[(6, 1), (7, 1)])).unwrap();
        assert_eq!(c.beta, vec![4, 6, 7]);
        assert_eq!(c.beta_bar, vec![4, 6, 13]);
        assert_eq!(c.conductor, 16);
        let gaps: Vec<u32> = (0..20).filter(|&k| !c.semigroup_table(20)[k as usize]).collect();
        assert_eq!(gaps, vec![1, 2, 3, 5, 7, 9, 11, 15]);

        let c58 = char_data(&p(5, &[(8, 1)])).unwrap();
        assert_eq!((c58.beta_bar.clone(), c58.conductor), (vec![5, 8], 28));
        assert_eq!(conductor_by_gaps(&[5, 8]), 28);

        let c6919 = char_data(&p(6, &[(9, 1), (10, 1)])).unwrap();
        assert_eq!((c6919.beta_bar.clone(), c6919.conductor), (vec![6, 9, 19], 42));
        assert_eq!(c6919.n_g_beta_bar_g(), Some(57));
        assert_eq!(conductor_by_gaps(&[6, 9, 19]), 42);
    }

    #[test]
    fn non_primitive_input_is_rejected() {
        assert!(matches!(Parametrization::puiseux_int(2, &[(4, 1)]), Err(Error::InvalidParametrization(_))));
        assert!(matches!(Parametrization::puiseux_int(4, &[(6, 1)]), Err(Error::InvalidParametrization(_))));
    }

    #[test]
    fn semigroup_from_generators_round_trips() {
        for gens in [vec![2, 3], vec![4, 6, 13], vec![6, 9, 19], vec![10, 14, 71], vec![5, 8]] {
            let cd = CharData::from_semigroup(&gens).unwrap();
            assert_eq!(cd.conductor, conductor_by_gaps(&gens), "{gens:?}");
        }
        assert!(CharData::from_semigroup(&[4, 6, 9]).is_err());
    }

    #[test]
    fn valuation_examples() {
        let cusp = p(2, &[(3, 1)]);
        assert_eq!(valuation(&cusp, &BivarPoly::y(), 20), Order::Finite(3));
        let g = &(&BivarPoly::y() - &BivarPoly::x().pow(2)).pow(2) - &BivarPoly::x().pow(3);
        assert_eq!(valuation(&cusp, &g, 20), Order::Finite(7));
        let f = BivarPoly::from_i64_terms(&[(0, 2, 1), (3, 0, -1)]);
        assert_eq!(valuation(&cusp, &f, 20), Order::AboveTruncation);
    }

    #[test]
    fn implicit_equations() {
        assert_eq!(implicitize(&p(2, &[(3, 1)])).unwrap(), BivarPoly::from_i64_terms(&[(0, 2, 1), (3, 0, -1)]));
        let expect = &(&BivarPoly::y() - &BivarPoly::x().pow(2)).pow(2) - &BivarPoly::x().pow(3);
        assert_eq!(implicitize(&p(2, &[(3, 1), (4, 1)])).unwrap(), expect);
        let b = p(6, &[(9, 1), (10, 1)]);
        let f = implicitize(&b).unwrap();
        assert_eq!(f.deg_y(), 6);
        assert_eq!(valuation(&b, &f, 200), Order::AboveTruncation);
        assert_eq!(implicitize_by_resultant(&b).unwrap(), f);
    }

    #[test]
    fn intersection_examples() {
        let cusp = p(2, &[(3, 1)]);
        assert_eq!(intersection(&cusp, &p(2, &[(3, 1), (4, 1)]), 40).unwrap(), 7);
        assert_eq!(intersection(&cusp, &p(2, &[(3, 1), (5, 1)]), 40).unwrap(), 8);
        let x_axis = p(1, &[]);
        let tangent = p(1, &[(2, 1)]);
        assert_eq!(intersection(&x_axis, &tangent, 40).unwrap(), 2);
        let swapped_parabola =
            Parametrization::new(UniPoly::from_i64s(&[0, 0, 1]), UniPoly::from_i64s(&[0, 1]), None).unwrap();
        assert_eq!(intersection(&x_axis, &swapped_parabola, 40).unwrap(), 1);
    }

    #[test]
    fn same_curve_is_reported() {
        let a = p(2, &[(3, 1)]);
        let b = p(2, &[(3, -1)]);
        assert_eq!(intersection(&a, &b, 60), Err(Error::BranchesNotDistinct));
    }

    #[test]
    fn diagonal_examples() {
        let d = diagonal_check(&p(2, &[(3, 1)]), &p(2, &[(3, 1), (4, 1)]), 60).unwrap();
        assert_eq!(d, DiagonalCheck { equisingular: true, intersection: 7, n_g_beta_bar_g: Some(6), diagonal: true });
        let base = [(9, 1), (10, 1)];
        let f = p(6, &base);
        let g = p(6, &[(9, 1), (10, 1), (11, 1)]);
        let h = p(6, &[(9, 1), (10, 1), (16, 1)]);
        assert_eq!(diagonal_check(&f, &g, 200).unwrap().intersection, 58);
        assert_eq!(diagonal_check(&f, &h, 200).unwrap().intersection, 63);
        let boundary = diagonal_check(&f, &p(6, &[(9, 1), (10, 2)]), 200).unwrap();
        assert_eq!((boundary.intersection, boundary.diagonal), (57, false));
        let _ = rat(0);
    }
}
