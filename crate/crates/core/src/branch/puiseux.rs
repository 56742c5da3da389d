//! Newton–Puiseux expansion restricted to rational coefficients.
//!
//! Each stage substitutes `T = z^v T1^p`, `Y = T1^q (z^u + Y1)` with
//! `u p - v q = 1` for a rational root `z` of an edge polynomial. This keeps
//! every coefficient rational when the branch itself is defined over `Q`,
//! and the current stage always satisfies `x = s T^N`, `y = A(T) + b T^E Y`.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

use super::{is_squarefree, swap_xy, Parametrization};
use crate::exactalg::{BivarPoly, Rat, TruncSeries, UniPoly};
use crate::Error;

const MAX_STAGES: usize = 256;

/// Parametrizations of all branches of `f` at the origin, each accurate
/// at least through `t^precision` (exact when the expansion terminates).
pub fn newton_puiseux(f: &BivarPoly, precision: u32) -> Result<Vec<Parametrization>, Error> {
    if f.is_zero() || !f.constant_term().is_zero() {
        return Err(Error::NotThroughOrigin);
    }
    let (ax, ay) = (f.x_adic_order(), f.y_adic_order());
    if ax >= 2 || ay >= 2 {
        return Err(Error::NonReducedInput);
    }
    let f0 = f.unshift(ax, ay);
    if !is_squarefree(&f0) {
        return Err(Error::NonReducedInput);
    }
    let mut out = Vec::new();
    if ay == 1 {
        out.push(Parametrization::new(UniPoly::from_i64s(&[0, 1]), UniPoly::zero(), None)?);
    }
    if ax == 1 {
        out.push(Parametrization::new(UniPoly::zero(), UniPoly::from_i64s(&[0, 1]), None)?);
    }
    // Branches with ord y >= ord x are expanded in x; the others in y.
    for p in expand(&f0, precision, |p, q| q >= p)? {
        out.push(p);
    }
    for p in expand(&swap_xy(&f0), precision, |p, q| q > p)? {
        out.push(p.swapped());
    }
    Ok(out)
}

#[derive(Clone)]
struct Stage {
    g: BivarPoly,
    s: Rat,
    n: u32,
    a: UniPoly,
    b: Rat,
    e: u32,
    depth: usize,
}

fn expand(f: &BivarPoly, precision: u32, first_edge: impl Fn(u32, u32) -> bool) -> Result<Vec<Parametrization>, Error> {
    let start = Stage { g: f.clone(), s: Rat::one(), n: 1, a: UniPoly::zero(), b: Rat::one(), e: 0, depth: 0 };
    let mut out = Vec::new();
    let mut stack = vec![start];
    while let Some(mut st) = stack.pop() {
        if st.depth > MAX_STAGES {
            return Err(Error::NonReducedInput);
        }
        if st.depth > 0 {
            let oy = st.g.y_adic_order();
            if oy >= 2 {
                return Err(Error::NonReducedInput);
            }
            if oy == 1 {
                out.push(finish(&st, UniPoly::zero(), None)?);
                st.g = st.g.unshift(0, 1);
            }
        }
        let top = (0..=st.g.deg_y()).find(|&j| !st.g.coeff(0, j).is_zero());
        let Some(top) = top else { continue };
        if top == 0 {
            continue;
        }
        if st.depth > 0 && top == 1 {
            out.push(regular(&st, precision)?);
            continue;
        }
        for (p, q) in edges(&st.g, top) {
            if st.depth == 0 && !first_edge(p, q) {
                continue;
            }
            let (l, phi) = edge_polynomial(&st.g, p, q);
            let (roots, complete) = rational_roots(&phi);
            if !complete {
                return Err(Error::UnsupportedCoefficientField);
            }
            for (z, _) in roots {
                stack.push(substitute(&st, p, q, l, &z));
            }
        }
    }
    Ok(out)
}

/// Lower Newton polygon edges from `(0, top)` down to the `T`-axis, as
/// reduced slopes `(p, q)` meaning `Y ~ T^{q/p}`.
fn edges(g: &BivarPoly, top: u32) -> Vec<(u32, u32)> {
    let mut min_i: Vec<Option<u32>> = vec![None; top as usize + 1];
    for (i, j, _) in g.terms() {
        if j <= top {
            let slot = &mut min_i[j as usize];
            *slot = Some(slot.map_or(i, |m| m.min(i)));
        }
    }
    let mut out = Vec::new();
    let (mut ic, mut jc) = (0u32, top);
    while jc > 0 {
        // Smallest rise per unit drop; ties go to the farthest point.
        let mut best: Option<(u32, u32)> = None;
        for j in (0..jc).rev() {
            let Some(i) = min_i[j as usize] else { continue };
            let better = match best {
                None => true,
                Some((bi, bj)) => {
                    let lhs = (i - ic) as u64 * (jc - bj) as u64;
                    let rhs = (bi - ic) as u64 * (jc - j) as u64;
                    lhs <= rhs
                }
            };
            if better {
                best = Some((i, j));
            }
        }
        let (ni, nj) = best.expect("the T-axis is reached since Y does not divide G");
        let (di, dj) = (ni - ic, jc - nj);
        let d = di.gcd(&dj);
        out.push((dj / d, di / d));
        ic = ni;
        jc = nj;
    }
    out
}

fn edge_polynomial(g: &BivarPoly, p: u32, q: u32) -> (u64, UniPoly) {
    let l = g.terms().map(|(i, j, _)| p as u64 * i as u64 + q as u64 * j as u64).min().unwrap();
    let on: Vec<(u32, &Rat)> = g
        .terms()
        .filter(|(i, j, _)| p as u64 * *i as u64 + q as u64 * *j as u64 == l)
        .map(|(_, j, c)| (j, c))
        .collect();
    let jmin = on.iter().map(|t| t.0).min().unwrap();
    let deg = on.iter().map(|t| ((t.0 - jmin) / p) as usize).max().unwrap();
    let mut cs = vec![Rat::zero(); deg + 1];
    for (j, c) in on {
        cs[((j - jmin) / p) as usize] += c;
    }
    (l, UniPoly::from_coeffs(cs))
}

fn pow_i(z: &Rat, e: i64) -> Rat {
    if e >= 0 {
        num_traits::pow(z.clone(), e as usize)
    } else {
        num_traits::pow(z.recip(), (-e) as usize)
    }
}

/// `(u, v)` with `u p - v q = 1`.
fn bezout(p: u32, q: u32) -> (i64, i64) {
    let eg = (p as i64).extended_gcd(&(q as i64));
    debug_assert_eq!(eg.gcd, 1);
    (eg.x, -eg.y)
}

fn substitute(st: &Stage, p: u32, q: u32, l: u64, z: &Rat) -> Stage {
    let (u, v) = bezout(p, q);
    let zu = pow_i(z, u);
    let deg = st.g.deg_y() as usize;
    // Rows of binomial expansions of (z^u + Y1)^j.
    let mut binom: Vec<Vec<Rat>> = vec![vec![Rat::one()]];
    for j in 1..=deg {
        let prev = &binom[j - 1];
        let mut row = vec![Rat::zero(); j + 1];
        for (k, c) in prev.iter().enumerate() {
            row[k] += c * &zu;
            row[k + 1] += c;
        }
        binom.push(row);
    }
    let mut g1 = BivarPoly::zero();
    for (i, j, c) in st.g.terms() {
        let base = c * pow_i(z, v * i as i64);
        let texp = (p as u64 * i as u64 + q as u64 * j as u64 - l) as u32;
        for (k, b) in binom[j as usize].iter().enumerate() {
            g1.add_term(texp, k as u32, &base * b);
        }
    }
    let mut a = UniPoly::zero();
    for (k, c) in st.a.coeffs().iter().enumerate() {
        if !c.is_zero() {
            a = &a + &UniPoly::monomial(c * pow_i(z, v * k as i64), p as usize * k);
        }
    }
    let e1 = p * st.e + q;
    a = &a + &UniPoly::monomial(&st.b * pow_i(z, v * st.e as i64 + u), e1 as usize);
    Stage {
        g: g1,
        s: &st.s * pow_i(z, v * st.n as i64),
        n: p * st.n,
        a,
        b: &st.b * pow_i(z, v * st.e as i64),
        e: e1,
        depth: st.depth + 1,
    }
}

/// Regular stage: `G(0,0) = 0`, `G_Y(0,0) ≠ 0`. Solves `G(T, Y(T)) = 0` by
/// Newton iteration with doubling precision, stopping early when the
/// solution is a polynomial.
fn regular(st: &Stage, precision: u32) -> Result<Parametrization, Error> {
    let target = precision.saturating_sub(st.e).max(1);
    let gy = st.g.dy();
    let mut k = target.min(4);
    let mut y = TruncSeries::zero(k);
    loop {
        let (gk, gyk) = (coefficient_series(&st.g, k), coefficient_series(&gy, k));
        for _ in 0..64 {
            let val = horner(&gk, &y, k);
            if val.is_zero() {
                break;
            }
            let d = horner(&gyk, &y, k).inverse().expect("regular stage has a unit derivative");
            y = y.sub(&val.mul(&d));
        }
        let y_poly = UniPoly::from_coeffs(y.coeffs().to_vec());
        if y_poly.degree().map_or(true, |d| 2 * d as u32 <= k) && eval_poly_at(&st.g, &y_poly).is_zero() {
            return finish(st, y_poly, None);
        }
        if k >= target {
            return finish(st, y_poly, Some(st.e + k));
        }
        k = (2 * k).min(target);
        y = TruncSeries::from_poly(&y_poly, k);
    }
}

/// Coefficients of `Y^j` as series in `T` truncated at `k`.
fn coefficient_series(g: &BivarPoly, k: u32) -> Vec<TruncSeries> {
    let mut out = vec![TruncSeries::zero(k); g.deg_y() as usize + 1];
    let mut terms: Vec<Vec<(u32, Rat)>> = vec![Vec::new(); out.len()];
    for (i, j, c) in g.terms() {
        if i <= k {
            terms[j as usize].push((i, c.clone()));
        }
    }
    for (slot, ts) in out.iter_mut().zip(terms) {
        *slot = TruncSeries::from_terms(&ts, k);
    }
    out
}

fn horner(coeffs: &[TruncSeries], y: &TruncSeries, k: u32) -> TruncSeries {
    let mut acc = TruncSeries::zero(k);
    for c in coeffs.iter().rev() {
        acc = acc.mul(y).add(c);
    }
    acc
}

fn eval_poly_at(g: &BivarPoly, y: &UniPoly) -> UniPoly {
    let mut pows = vec![UniPoly::constant(Rat::one())];
    let mut acc = UniPoly::zero();
    for (i, j, c) in g.terms() {
        while pows.len() <= j as usize {
            let next = &pows[pows.len() - 1] * y;
            pows.push(next);
        }
        acc = &acc + &(&UniPoly::monomial(c.clone(), i as usize) * &pows[j as usize]);
    }
    acc
}

fn finish(st: &Stage, y1: UniPoly, precision: Option<u32>) -> Result<Parametrization, Error> {
    let x = UniPoly::monomial(st.s.clone(), st.n as usize);
    let tail = &UniPoly::monomial(st.b.clone(), st.e as usize) * &y1;
    let y = &st.a + &tail;
    Parametrization::new(x, y, precision)
}

/// Rational roots of `p` with multiplicities, and whether they account for
/// all roots (counted with multiplicity).
pub fn rational_roots(p: &UniPoly) -> (Vec<(Rat, usize)>, bool) {
    let Some(deg) = p.degree() else { return (Vec::new(), false) };
    if deg == 0 {
        return (Vec::new(), true);
    }
    let sqf = p.squarefree_part().primitive_rational();
    let mut found: Vec<Rat> = Vec::new();
    for r in approximate_roots(&sqf) {
        for cand in candidates(&sqf, r) {
            if sqf.eval(&cand).is_zero() && !found.contains(&cand) {
                found.push(cand);
                break;
            }
        }
    }
    found.sort();
    let mut out = Vec::new();
    let mut total = 0;
    for z in found {
        let lin = UniPoly::from_coeffs(vec![-z.clone(), Rat::one()]);
        let mut rest = p.clone();
        let mut m = 0;
        loop {
            let (qq, rr) = rest.div_rem(&lin);
            if !rr.is_zero() {
                break;
            }
            rest = qq;
            m += 1;
        }
        total += m;
        out.push((z, m));
    }
    (out, total == deg)
}

fn round_big(x: f64) -> Option<BigInt> {
    BigInt::from_f64(if x >= 0.0 { x + 0.5 } else { x - 0.5 })
}

fn candidates(sqf: &UniPoly, r: f64) -> Vec<Rat> {
    let mut out = Vec::new();
    let lead = sqf.leading().unwrap();
    let lead_int = lead.numer().clone() * lead.denom().clone();
    if let Some(k) = lead.to_f64().and_then(|l| round_big(r * l)) {
        out.push(Rat::new(k, lead.clone().to_integer().max(BigInt::one())));
    }
    if let Some(k) = lead_int.to_f64().and_then(|l| round_big(r * l)) {
        if !lead_int.is_zero() {
            out.push(Rat::new(k, lead_int.abs()));
        }
    }
    // Continued-fraction convergents of r.
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let mut x = r;
    for _ in 0..40 {
        let Some(a) = BigInt::from_f64(floor(x)) else { break };
        let h2 = &a * &h1 + &h0;
        let k2 = &a * &k1 + &k0;
        if !k2.is_zero() {
            out.push(Rat::new(h2.clone(), k2.clone()));
        }
        h0 = core::mem::replace(&mut h1, h2);
        k0 = core::mem::replace(&mut k1, k2);
        let frac = x - floor(x);
        if frac < 1e-12 {
            break;
        }
        x = 1.0 / frac;
    }
    out
}

fn floor(x: f64) -> f64 {
    let t = x as i64 as f64;
    if t > x {
        t - 1.0
    } else {
        t
    }
}

#[derive(Clone, Copy)]
struct C(f64, f64);

impl C {
    fn add(self, o: C) -> C {
        C(self.0 + o.0, self.1 + o.1)
    }
    fn sub(self, o: C) -> C {
        C(self.0 - o.0, self.1 - o.1)
    }
    fn mul(self, o: C) -> C {
        C(self.0 * o.0 - self.1 * o.1, self.0 * o.1 + self.1 * o.0)
    }
    fn div(self, o: C) -> C {
        let d = o.0 * o.0 + o.1 * o.1;
        C((self.0 * o.0 + self.1 * o.1) / d, (self.1 * o.0 - self.0 * o.1) / d)
    }
    fn norm2(self) -> f64 {
        self.0 * self.0 + self.1 * self.1
    }
}

/// Real parts of the nearly real roots, by Durand–Kerner followed by Newton
/// polishing.
fn approximate_roots(p: &UniPoly) -> Vec<f64> {
    let deg = p.degree().unwrap();
    let lead = p.leading().unwrap().clone();
    let cs: Vec<f64> = p.coeffs().iter().map(|c| (c / &lead).to_f64().unwrap_or(0.0)).collect();
    let eval = |z: C| cs.iter().rev().fold(C(0.0, 0.0), |acc, &c| acc.mul(z).add(C(c, 0.0)));
    let bound = 1.0 + cs[..deg].iter().fold(0.0f64, |m, c| if c.abs_val() > m { c.abs_val() } else { m });
    let mut zs: Vec<C> = (0..deg)
        .map(|k| {
            let mut w = C(1.0, 0.0);
            let step = C(0.4, 0.9);
            for _ in 0..=k {
                w = w.mul(step);
            }
            C(w.0 * bound, w.1 * bound)
        })
        .collect();
    for _ in 0..2000 {
        let mut moved = 0.0f64;
        for i in 0..deg {
            let mut den = C(1.0, 0.0);
            for j in 0..deg {
                if i != j {
                    den = den.mul(zs[i].sub(zs[j]));
                }
            }
            let delta = eval(zs[i]).div(den);
            zs[i] = zs[i].sub(delta);
            let d = delta.norm2();
            if d > moved {
                moved = d;
            }
        }
        if moved < 1e-28 {
            break;
        }
    }
    let dcs: Vec<f64> = (1..=deg).map(|k| cs[k] * k as f64).collect();
    zs.iter()
        .filter(|z| z.1.abs_val() < 1e-6 * (1.0 + z.0.abs_val()))
        .map(|z| {
            let mut x = z.0;
            for _ in 0..8 {
                let v = cs.iter().rev().fold(0.0, |acc, &c| acc * x + c);
                let dv = dcs.iter().rev().fold(0.0, |acc, &c| acc * x + c);
                if dv == 0.0 {
                    break;
                }
                x -= v / dv;
            }
            x
        })
        .collect()
}

trait AbsVal {
    fn abs_val(self) -> f64;
}

impl AbsVal for f64 {
    fn abs_val(self) -> f64 {
        if self < 0.0 {
            -self
        } else {
            self
        }
    }
}
