//! Value sets of fractional ideals given by generators.
//!
//! A [`ValuedModule`] is `O·g_1 + … + O·g_k` inside the normalization, where
//! `O` acts through its monomials `x^a y^b` pulled back to each branch. Its
//! value set is read off from the dimensions
//! `g(α) = dim M(α)/M(γ_ref)` with `M(α) = {m : v(m) ≥ α}`: a point `α`
//! belongs to the value set exactly when `g(α) > g(α + e_i)` for every
//! coordinate `i` (a vector space over an infinite field is not a finite
//! union of proper subspaces). Every coordinate at or above `γ_ref` lies
//! in the tail, so only orders below `γ_ref` are ever materialized.

pub mod span;

use alloc::vec;
use alloc::vec::Vec;

use crate::branch::{CurveData, CurveSpec, Parametrization};
use crate::exactalg::series::{eval_bivar_trunc, map_coeffs, mul_trunc, order_of, powers_trunc};
use crate::exactalg::{poly_eval_series, BivarPoly, FieldOps, PrimeField, Rat, Rationals, TruncSeries};
use crate::valueset::BoxedValueSet;
use crate::Error;

/// `2^61 - 1` and `2^62 - 57`.
pub const DEFAULT_PRIMES: [u64; 2] = [2_305_843_009_213_693_951, 4_611_686_018_427_387_847];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EngineConfig {
    /// Two primes for the modular fast path. Ranks are accepted when both
    /// agree; otherwise the computation is redone over `Q`.
    pub primes: [u64; 2],
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig { primes: DEFAULT_PRIMES }
    }
}

/// A differential `A dx + B dy`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PullbackForm {
    pub a: BivarPoly,
    pub b: BivarPoly,
}

impl PullbackForm {
    pub fn dx() -> Self {
        PullbackForm { a: BivarPoly::from_i64_terms(&[(0, 0, 1)]), b: BivarPoly::zero() }
    }

    pub fn dy() -> Self {
        PullbackForm { a: BivarPoly::zero(), b: BivarPoly::from_i64_terms(&[(0, 0, 1)]) }
    }

    /// `dh = h_x dx + h_y dy`.
    pub fn differential(h: &BivarPoly) -> Self {
        PullbackForm { a: h.dx(), b: h.dy() }
    }

    /// `h·ω`.
    pub fn times(&self, h: &BivarPoly) -> Self {
        PullbackForm { a: h * &self.a, b: h * &self.b }
    }

    /// `t·(A(φ) x' + B(φ) y')` through `t^trunc`.
    pub fn pullback(&self, p: &Parametrization, trunc: u32) -> TruncSeries {
        let (x, y) = p.series(trunc);
        let tx = scaled_derivative(&x);
        let ty = scaled_derivative(&y);
        poly_eval_series(&self.a, &x, &y).mul(&tx).add(&poly_eval_series(&self.b, &x, &y).mul(&ty))
    }
}

/// `t·s'(t)`.
fn scaled_derivative(s: &TruncSeries) -> TruncSeries {
    let terms: Vec<(u32, Rat)> =
        s.coeffs().iter().enumerate().map(|(k, c)| (k as u32, c * Rat::from_integer((k as i64).into()))).collect();
    TruncSeries::from_terms(&terms, s.truncation())
}

/// A module generator: a function or a differential form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Generator {
    Function(BivarPoly),
    Form(PullbackForm),
}

/// `O·g_1 + … + O·g_k` with a reference point `γ_ref` at or above the
/// conductor of its value set.
#[derive(Clone, Debug)]
pub struct ValuedModule {
    params: Vec<Parametrization>,
    generators: Vec<Generator>,
    gamma_ref: Vec<i64>,
}

/// A computed value set together with its rank table, which answers
/// colength queries `dim M(α)/M(β)` directly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValueTable {
    set: BoxedValueSet,
    h: Vec<u32>,
    strides: Vec<usize>,
}

impl ValueTable {
    fn from_ranks(lo: Vec<i64>, hi: Vec<i64>, h: Vec<u32>) -> Result<Self, Error> {
        let r = lo.len();
        let widths: Vec<usize> = lo.iter().zip(&hi).map(|(l, h)| (h - l) as usize).collect();
        let mut strides = vec![1usize; r];
        for k in (0..r.saturating_sub(1)).rev() {
            strides[k] = strides[k + 1] * (widths[k + 1] + 1);
        }
        let mut bits = Vec::with_capacity(h.len());
        for idx in 0..h.len() {
            let member = (0..r).all(|k| {
                let a = (idx / strides[k]) % (widths[k] + 1);
                a == widths[k] || h[idx + strides[k]] > h[idx]
            });
            bits.push(member);
        }
        let set = BoxedValueSet::from_bits(lo, hi, bits)?;
        Ok(ValueTable { set, h, strides })
    }

    pub fn set(&self) -> &BoxedValueSet {
        &self.set
    }

    pub fn into_set(self) -> BoxedValueSet {
        self.set
    }

    /// `dim M(α)/M(β)` for `α ≤ β` (any points, not only members).
    pub fn colength(&self, a: &[i64], b: &[i64]) -> u64 {
        self.rank_at(b) - self.rank_at(a)
    }

    /// `dim M(m_E)/M(α)`: rank plus one per step beyond the box.
    fn rank_at(&self, a: &[i64]) -> u64 {
        let (lo, hi) = (self.set.lo(), self.set.hi());
        let mut idx = 0;
        let mut extra = 0u64;
        for k in 0..a.len() {
            let c = a[k].clamp(lo[k], hi[k]);
            extra += (a[k] - c).max(0) as u64;
            idx += (c - lo[k]) as usize * self.strides[k];
        }
        self.h[idx] as u64 + extra
    }
}

/// Per-branch assembly data over one field.
struct Assembly<E> {
    lo: Vec<i64>,
    /// `rows[row][branch]` holds orders `lo..hi` of that branch.
    rows: Vec<Vec<Vec<E>>>,
}

impl ValuedModule {
    pub fn new(params: Vec<Parametrization>, generators: Vec<Generator>, gamma_ref: Vec<i64>) -> Result<Self, Error> {
        assert!(!params.is_empty() && !generators.is_empty(), "a module needs branches and generators");
        assert_eq!(params.len(), gamma_ref.len(), "one reference coordinate per branch");
        Ok(ValuedModule { params, generators, gamma_ref })
    }

    /// The local ring `O`, boxed at the semigroup conductor.
    pub fn ring(spec: &CurveSpec, data: &CurveData) -> Result<Self, Error> {
        let one = BivarPoly::from_i64_terms(&[(0, 0, 1)]);
        Self::new(spec.branches.clone(), vec![Generator::Function(one)], data.conductor.clone())
    }

    /// `φ^*(Ω_f)`, generated by the pullbacks of `dx` and `dy`. Since it
    /// contains `S ∖ {0}`, its conductor is at most `max(c_S, 1)`.
    pub fn kahler(spec: &CurveSpec, data: &CurveData) -> Result<Self, Error> {
        let gens = vec![Generator::Form(PullbackForm::dx()), Generator::Form(PullbackForm::dy())];
        let gamma = data.conductor.iter().map(|&c| c.max(1)).collect();
        Self::new(spec.branches.clone(), gens, gamma)
    }

    /// The Jacobian ideal `(f_x, f_y)` restricted to the branches. Its value
    /// set `E` has conductor at most `m_E + c_S`.
    pub fn jacobian(spec: &CurveSpec, data: &CurveData, f: &BivarPoly) -> Result<Self, Error> {
        let gens = vec![Generator::Function(f.dx()), Generator::Function(f.dy())];
        let probe = Self::new(spec.branches.clone(), gens.clone(), vec![0; spec.r()])?;
        let gamma = (0..spec.r())
            .map(|i| {
                let m = probe.min_order(i).ok_or(Error::NonReducedInput)?;
                Ok(m + data.conductor[i])
            })
            .collect::<Result<Vec<_>, Error>>()?;
        Self::new(spec.branches.clone(), gens, gamma)
    }

    pub fn r(&self) -> usize {
        self.params.len()
    }

    pub fn gamma_ref(&self) -> &[i64] {
        &self.gamma_ref
    }

    pub fn with_gamma_ref(&self, gamma: Vec<i64>) -> Self {
        ValuedModule { gamma_ref: gamma, ..self.clone() }
    }

    /// Order of the generators on branch `i` (their minimum), found by
    /// doubling the truncation. Reduction modulo a prime can only raise an
    /// order, so the smaller of two modular answers is a safe upper bound
    /// for the box; `Q` is used when a denominator vanishes.
    fn min_order(&self, i: usize) -> Option<i64> {
        let modular =
            DEFAULT_PRIMES.iter().map(|&p| self.min_order_over(&PrimeField::new(p), i)).collect::<Option<Vec<_>>>();
        match modular {
            Some(v) => v.into_iter().min().flatten(),
            None => self.min_order_over(&Rationals, i).flatten(),
        }
    }

    /// `None` when the coefficients do not reduce, `Some(None)` when every
    /// generator vanishes through the available precision.
    fn min_order_over<F: FieldOps>(&self, f: &F, i: usize) -> Option<Option<i64>> {
        let p = &self.params[i];
        let cap = p.precision().map_or(4096, |n| n + 1);
        let mut len = 16u32;
        loop {
            let len_u = len.min(cap) as usize;
            let (x, y) = branch_series(f, p, len_u)?;
            let mut best = None;
            for g in &self.generators {
                if let Some(o) = order_of(f, &generator_series(f, g, &x, &y, len_u)?) {
                    best = Some(best.map_or(o, |b: usize| b.min(o)));
                }
            }
            if let Some(o) = best {
                return Some(Some(o as i64));
            }
            if len >= cap {
                return Some(None);
            }
            len *= 2;
        }
    }

    fn check_precision(&self, hi: &[i64]) -> Result<(), Error> {
        for (p, &h) in self.params.iter().zip(hi) {
            if let Some(n) = p.precision() {
                if (n as i64) + 1 < h {
                    return Err(Error::TruncationTooSmall { attempted: n });
                }
            }
        }
        Ok(())
    }

    /// Multiplier × generator rows, each branch cut to orders `lo..hi`.
    fn assemble<F: FieldOps>(&self, f: &F, hi: &[i64]) -> Option<Assembly<F::Elem>> {
        let r = self.r();
        let lens: Vec<usize> = hi.iter().map(|&h| h.max(0) as usize).collect();
        let mut xs = Vec::with_capacity(r);
        let mut ys = Vec::with_capacity(r);
        let mut gens = Vec::with_capacity(r);
        for i in 0..r {
            let (x, y) = branch_series(f, &self.params[i], lens[i])?;
            let gi =
                self.generators.iter().map(|g| generator_series(f, g, &x, &y, lens[i])).collect::<Option<Vec<_>>>()?;
            xs.push(x);
            ys.push(y);
            gens.push(gi);
        }
        let lo: Vec<i64> =
            (0..r).map(|i| gens[i].iter().filter_map(|g| order_of(f, g)).min().map_or(hi[i], |o| o as i64)).collect();
        let ox: Vec<i64> = xs.iter().map(|x| order_of(f, x).map_or(i64::MAX / 4, |o| o as i64)).collect();
        let oy: Vec<i64> = ys.iter().map(|y| order_of(f, y).map_or(i64::MAX / 4, |o| o as i64)).collect();
        let gen_ord: Vec<Vec<i64>> = gens
            .iter()
            .map(|gi| gi.iter().map(|g| order_of(f, g).map_or(i64::MAX / 4, |o| o as i64)).collect())
            .collect();

        let useful = |a: i64, b: i64, k: usize| (0..r).any(|i| a * ox[i] + b * oy[i] + gen_ord[i][k] < hi[i]);
        let any_useful = |a: i64, b: i64| (0..self.generators.len()).any(|k| useful(a, b, k));
        let mut rows = Vec::new();
        // Pure powers of x for each branch, then walk up in y.
        let mut a = 0i64;
        let mut xa: Vec<Vec<F::Elem>> = (0..r).map(|i| unit(f, lens[i])).collect();
        while any_useful(a, 0) {
            let mut b = 0i64;
            let mut mono = xa.clone();
            while any_useful(a, b) {
                for k in 0..self.generators.len() {
                    if !useful(a, b, k) {
                        continue;
                    }
                    let row: Vec<Vec<F::Elem>> = (0..r)
                        .map(|i| {
                            let full = mul_trunc(f, &mono[i], &gens[i][k], lens[i]);
                            full[lo[i] as usize..].to_vec()
                        })
                        .collect();
                    rows.push(row);
                }
                for i in 0..r {
                    mono[i] = mul_trunc(f, &mono[i], &ys[i], lens[i]);
                }
                b += 1;
            }
            for i in 0..r {
                xa[i] = mul_trunc(f, &xa[i], &xs[i], lens[i]);
            }
            a += 1;
        }
        Some(Assembly { lo, rows })
    }

    fn table_over<F: FieldOps>(&self, f: &F, hi: &[i64]) -> Option<(Vec<i64>, Vec<u32>)> {
        let asm = self.assemble(f, hi)?;
        let widths: Vec<usize> = asm.lo.iter().zip(hi).map(|(l, h)| (h - l) as usize).collect();
        let flat: Vec<Vec<F::Elem>> = asm.rows.into_iter().map(|r| r.concat()).collect();
        Some((asm.lo, span::rank_table(f, &flat, &widths)))
    }

    fn kernel_over<F: FieldOps>(&self, f: &F, hi: &[i64], j: &[usize]) -> Option<(Vec<i64>, Vec<u32>)> {
        let asm = self.assemble(f, hi)?;
        let rest: Vec<usize> = (0..self.r()).filter(|k| !j.contains(k)).collect();
        let width = |i: usize| (hi[i] - asm.lo[i]) as usize;
        let wj: usize = j.iter().map(|&i| width(i)).sum();
        let total = wj + rest.iter().map(|&i| width(i)).sum::<usize>();
        let mut basis = crate::exactalg::EchelonBasis::new(total);
        for row in &asm.rows {
            let v: Vec<F::Elem> = j.iter().chain(&rest).flat_map(|&i| row[i].iter().cloned()).collect();
            basis.insert(f, v);
        }
        let kernel: Vec<Vec<F::Elem>> = basis
            .rows()
            .iter()
            .zip(basis.pivots())
            .filter(|(_, &p)| p >= wj)
            .map(|(row, _)| row[wj..].to_vec())
            .collect();
        let widths: Vec<usize> = rest.iter().map(|&i| width(i)).collect();
        let lo = rest.iter().map(|&i| asm.lo[i]).collect();
        Some((lo, span::rank_table(f, &kernel, &widths)))
    }

    /// Modular ranks with two primes, redone over `Q` on disagreement.
    fn checked<T: PartialEq>(
        &self,
        cfg: &EngineConfig,
        run_p: impl Fn(&PrimeField) -> Option<T>,
        run_q: impl Fn(&Rationals) -> Option<T>,
    ) -> T {
        let a = run_p(&PrimeField::new(cfg.primes[0]));
        let b = run_p(&PrimeField::new(cfg.primes[1]));
        match (a, b) {
            (Some(a), Some(b)) if a == b => a,
            _ => run_q(&Rationals).expect("rational evaluation is always defined"),
        }
    }

    /// The value set, boxed on `[m_E, γ_ref]`.
    pub fn values(&self, cfg: &EngineConfig) -> Result<ValueTable, Error> {
        let hi = self.gamma_ref.clone();
        self.check_precision(&hi)?;
        let (lo, h) = self.checked(cfg, |f| self.table_over(f, &hi), |f| self.table_over(f, &hi));
        ValueTable::from_ranks(lo, hi, h)
    }

    /// Values of the elements vanishing on the branches in `j`, as a set
    /// over the remaining branches (in increasing order).
    ///
    /// The branches in `j` are truncated at `γ_ref`. An element vanishing
    /// there up to that order differs from a genuine kernel element by an
    /// element of the conductor ideal supported on `j`, so nothing is
    /// aliased as long as `γ_ref` is at or above the conductor.
    pub fn kernel_values(&self, j: &[usize], cfg: &EngineConfig) -> Result<ValueTable, Error> {
        assert!(!j.is_empty() && j.len() < self.r(), "the kernel index set must be a nonempty proper subset");
        let hi = self.gamma_ref.clone();
        self.check_precision(&hi)?;
        let (lo, h) = self.checked(cfg, |f| self.kernel_over(f, &hi, j), |f| self.kernel_over(f, &hi, j));
        let rest_hi = (0..self.r()).filter(|k| !j.contains(k)).map(|k| hi[k]).collect();
        ValueTable::from_ranks(lo, rest_hi, h)
    }

    /// Recomputes the kernel with the `j` branches truncated `margin`
    /// orders later and requires the same answer.
    pub fn kernel_values_certified(&self, j: &[usize], margin: i64, cfg: &EngineConfig) -> Result<ValueTable, Error> {
        let base = self.kernel_values(j, cfg)?;
        let mut gamma = self.gamma_ref.clone();
        for &k in j {
            gamma[k] += margin;
        }
        let wider = self.with_gamma_ref(gamma.clone());
        let check = wider.kernel_values(j, cfg)?;
        if !base.set().same_set(check.set()) {
            return Err(Error::TruncationTooSmall { attempted: gamma.iter().copied().max().unwrap_or(0) as u32 });
        }
        Ok(base)
    }

    /// Recomputes the value set at `γ_ref + margin` and requires agreement.
    pub fn values_certified(&self, margin: i64, cfg: &EngineConfig) -> Result<ValueTable, Error> {
        let base = self.values(cfg)?;
        let gamma: Vec<i64> = self.gamma_ref.iter().map(|g| g + margin).collect();
        let check = self.with_gamma_ref(gamma.clone()).values(cfg)?;
        if !base.set().same_set(check.set()) {
            return Err(Error::TruncationTooSmall { attempted: gamma.iter().copied().max().unwrap_or(0) as u32 });
        }
        Ok(base)
    }
}

fn unit<F: FieldOps>(f: &F, len: usize) -> Vec<F::Elem> {
    let mut v = vec![f.zero(); len];
    if len > 0 {
        v[0] = f.one();
    }
    v
}

/// Coefficients of `x(t)` and `y(t)`.
type SeriesPair<E> = (Vec<E>, Vec<E>);

fn branch_series<F: FieldOps>(f: &F, p: &Parametrization, len: usize) -> Option<SeriesPair<F::Elem>> {
    Some((map_coeffs(f, p.x().coeffs(), len)?, map_coeffs(f, p.y().coeffs(), len)?))
}

fn eval_function<F: FieldOps>(f: &F, h: &BivarPoly, x: &[F::Elem], y: &[F::Elem], len: usize) -> Option<Vec<F::Elem>> {
    if h.is_zero() {
        return Some(vec![f.zero(); len]);
    }
    let x_pows = powers_trunc(f, x, h.deg_x(), len);
    eval_bivar_trunc(f, h, &x_pows, y, len)
}

fn generator_series<F: FieldOps>(
    f: &F,
    g: &Generator,
    x: &[F::Elem],
    y: &[F::Elem],
    len: usize,
) -> Option<Vec<F::Elem>> {
    match g {
        Generator::Function(h) => eval_function(f, h, x, y, len),
        Generator::Form(w) => {
            let a = eval_function(f, &w.a, x, y, len)?;
            let b = eval_function(f, &w.b, x, y, len)?;
            let tx: Vec<F::Elem> = x.iter().enumerate().map(|(k, c)| f.mul(c, &f.int(k as i64))).collect();
            let ty: Vec<F::Elem> = y.iter().enumerate().map(|(k, c)| f.mul(c, &f.int(k as i64))).collect();
            let s = mul_trunc(f, &a, &tx, len);
            let t = mul_trunc(f, &b, &ty, len);
            Some(s.iter().zip(&t).map(|(u, v)| f.add(u, v)).collect())
        }
    }
}

/// `Λ` of the curve.
pub fn kahler_values(spec: &CurveSpec, data: &CurveData, cfg: &EngineConfig) -> Result<ValueTable, Error> {
    ValuedModule::kahler(spec, data)?.values(cfg)
}

/// `S` of the curve.
pub fn semigroup_values(spec: &CurveSpec, data: &CurveData, cfg: &EngineConfig) -> Result<ValueTable, Error> {
    ValuedModule::ring(spec, data)?.values(cfg)
}

/// `v(J)` for the Jacobian ideal of `f`.
pub fn jacobian_values(
    spec: &CurveSpec,
    data: &CurveData,
    f: &BivarPoly,
    cfg: &EngineConfig,
) -> Result<ValueTable, Error> {
    ValuedModule::jacobian(spec, data, f)?.values(cfg)
}

/// `Λ + c_S - 1` on the box of `Λ` shifted accordingly.
pub fn shifted_kahler(lambda: &BoxedValueSet, conductor: &[i64]) -> BoxedValueSet {
    let v: Vec<i64> = conductor.iter().map(|c| c - 1).collect();
    lambda.shifted(&v)
}

/// `Δ = {d : -d ∉ Λ}` for one branch, boxed on `[-c-β_0, β_0+c]`.
pub fn residue_values_irreducible(p: &Parametrization, cfg: &EngineConfig) -> Result<BoxedValueSet, Error> {
    let spec = CurveSpec::new(vec![p.clone()]);
    let data = crate::branch::curve_data(&spec, 0)?;
    let lambda = kahler_values(&spec, &data, cfg)?.into_set();
    let c = data.chars[0].conductor as i64;
    let b0 = data.chars[0].multiplicity() as i64;
    let delta = BoxedValueSet::from_fn(vec![-c - b0], vec![b0 + c], |d| !lambda.contains(&[-d[0]]))?;
    assert_eq!(delta.conductor(), &[1 - b0], "the residue conductor must be 1 - β_0");
    Ok(delta)
}

/// `Θ_1..Θ_r` through kernels: `Θ_i = #(pr_i(E) ∖ v_i(N_{[1,i)}))`.
pub fn theta_by_kernels(module: &ValuedModule, values: &BoxedValueSet, cfg: &EngineConfig) -> Result<Vec<u64>, Error> {
    let r = module.r();
    let mut out = vec![0u64; r];
    for i in 1..r {
        let j: Vec<usize> = (0..i).collect();
        let kernel = module.kernel_values(&j, cfg)?.into_set();
        let kproj = kernel.project(&[0]);
        let proj = values.project(&[i]);
        let (lo, hi) = (proj.lo()[0].min(kproj.lo()[0]), proj.hi()[0].max(kproj.hi()[0]));
        out[i] = (lo..=hi).filter(|&v| proj.contains(&[v]) && !kproj.contains(&[v])).count() as u64;
    }
    Ok(out)
}

#[cfg(test)]
mod tests;
