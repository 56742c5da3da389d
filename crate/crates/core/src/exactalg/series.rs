//! Truncated univariate power series.
//!
//! [`TruncSeries`] is the exact rational type used for valuations of single
//! elements. The free functions at the bottom work on plain coefficient
//! vectors over any [`FieldOps`] and feed the modular value-set engine.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::field::FieldOps;
use super::poly::{BivarPoly, UniPoly};
use super::Rat;

/// Order of a truncated series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Order {
    Finite(u32),
    /// Every stored coefficient vanishes: the true order exceeds the truncation.
    AboveTruncation,
}

impl Order {
    pub fn finite(self) -> Option<u32> {
        match self {
            Order::Finite(k) => Some(k),
            Order::AboveTruncation => None,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(k) => write!(f, "{k}"),
            Order::AboveTruncation => f.write_str("above truncation"),
        }
    }
}

/// `Σ_{k ≤ T} c_k t^k`, known exactly up to and including `t^T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSeries {
    coeffs: Vec<Rat>,
}

impl TruncSeries {
    pub fn zero(trunc: u32) -> Self {
        TruncSeries { coeffs: vec![Rat::zero(); trunc as usize + 1] }
    }

    pub fn one(trunc: u32) -> Self {
        let mut s = Self::zero(trunc);
        s.coeffs[0] = Rat::one();
        s
    }

    /// `c t^k` truncated at `trunc`.
    pub fn monomial(c: Rat, k: u32, trunc: u32) -> Self {
        let mut s = Self::zero(trunc);
        if k <= trunc {
            s.coeffs[k as usize] = c;
        }
        s
    }

    pub fn from_poly(p: &UniPoly, trunc: u32) -> Self {
        let mut s = Self::zero(trunc);
        for (k, c) in p.coeffs().iter().enumerate().take(trunc as usize + 1) {
            s.coeffs[k] = c.clone();
        }
        s
    }

    pub fn from_terms(terms: &[(u32, Rat)], trunc: u32) -> Self {
        let mut s = Self::zero(trunc);
        for (k, c) in terms {
            if *k <= trunc {
                s.coeffs[*k as usize] += c;
            }
        }
        s
    }

    pub fn truncation(&self) -> u32 {
        self.coeffs.len() as u32 - 1
    }

    pub fn coeff(&self, k: u32) -> &Rat {
        &self.coeffs[k as usize]
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn order(&self) -> Order {
        match self.coeffs.iter().position(|c| !c.is_zero()) {
            Some(k) => Order::Finite(k as u32),
            None => Order::AboveTruncation,
        }
    }

    pub fn truncate(&self, trunc: u32) -> Self {
        let t = trunc.min(self.truncation());
        TruncSeries { coeffs: self.coeffs[..=t as usize].to_vec() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let t = self.truncation().min(other.truncation()) as usize;
        TruncSeries { coeffs: (0..=t).map(|k| &self.coeffs[k] + &other.coeffs[k]).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let t = self.truncation().min(other.truncation()) as usize;
        TruncSeries { coeffs: (0..=t).map(|k| &self.coeffs[k] - &other.coeffs[k]).collect() }
    }

    pub fn scale(&self, s: &Rat) -> Self {
        TruncSeries { coeffs: self.coeffs.iter().map(|c| c * s).collect() }
    }

    /// Product. The result is known up to `min` of the operand truncations,
    /// which is conservative whenever an operand has positive order.
    ///
    /// Both operands are brought to a common denominator first, so the
    /// quadratic loop runs on integers and each output coefficient is
    /// reduced once.
    pub fn mul(&self, other: &Self) -> Self {
        let t = self.truncation().min(other.truncation()) as usize;
        let (na, da) = super::integer_form(&self.coeffs[..=t]);
        let (nb, db) = super::integer_form(&other.coeffs[..=t]);
        let mut acc = vec![BigInt::zero(); t + 1];
        for (i, a) in na.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in nb.iter().enumerate().take(t + 1 - i) {
                if !b.is_zero() {
                    acc[i + j] += a * b;
                }
            }
        }
        let den = da * db;
        TruncSeries { coeffs: acc.into_iter().map(|n| Rat::new(n, den.clone())).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.truncation());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// `t · d/dt`, which keeps the truncation order.
    pub fn t_derivative(&self) -> Self {
        TruncSeries {
            coeffs: self.coeffs.iter().enumerate().map(|(k, c)| c * Rat::from_integer(BigInt::from(k))).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Inverse of a series with nonzero constant term, by Newton iteration
    /// `u ← u(2 - a u)` with doubling precision.
    pub fn inverse(&self) -> Option<Self> {
        let c0 = self.coeffs[0].clone();
        if c0.is_zero() {
            return None;
        }
        let t = self.truncation();
        let mut u = TruncSeries { coeffs: vec![c0.recip()] };
        let mut k = 0u32;
        while k < t {
            k = (2 * k + 1).min(t);
            let a = self.truncate(k);
            let mut cs = u.coeffs;
            cs.resize(k as usize + 1, Rat::zero());
            let u_k = TruncSeries { coeffs: cs };
            let two = TruncSeries::monomial(Rat::from_integer(BigInt::from(2)), 0, k);
            u = u_k.mul(&two.sub(&a.mul(&u_k)));
        }
        Some(u)
    }
}

/// Evaluates `p(x(t), y(t))`; the truncation is the min of the two inputs.
pub fn poly_eval_series(p: &BivarPoly, x: &TruncSeries, y: &TruncSeries) -> TruncSeries {
    let t = x.truncation().min(y.truncation());
    let (x, y) = (x.truncate(t), y.truncate(t));
    let mut out = TruncSeries::zero(t);
    if p.is_zero() {
        return out;
    }
    // Powers of x beyond the truncation vanish and are never formed.
    let x_ord = match x.order() {
        Order::Finite(o) => o,
        Order::AboveTruncation => t + 1,
    };
    let needed = t.checked_div(x_ord).map_or(p.deg_x(), |q| p.deg_x().min(q));
    let mut x_pows = vec![TruncSeries::one(t)];
    for _ in 0..needed {
        let next = x_pows.last().unwrap().mul(&x);
        x_pows.push(next);
    }
    // Horner in y over x-polynomial coefficients.
    for b in (0..=p.deg_y()).rev() {
        out = out.mul(&y);
        for (a, bb, c) in p.terms() {
            if bb == b && (a as usize) < x_pows.len() {
                out = out.add(&x_pows[a as usize].scale(c));
            }
        }
    }
    out
}

/// One element of the normalization: a truncated series per branch.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesTuple {
    pub components: Vec<TruncSeries>,
}

impl SeriesTuple {
    pub fn new(components: Vec<TruncSeries>) -> Self {
        assert!(!components.is_empty(), "a series tuple needs at least one component");
        SeriesTuple { components }
    }

    pub fn r(&self) -> usize {
        self.components.len()
    }

    pub fn orders(&self) -> Vec<Order> {
        self.components.iter().map(TruncSeries::order).collect()
    }
}

// ---------------------------------------------------------------------------
// Coefficient-vector series over an arbitrary field.

/// Product of two coefficient vectors truncated to `len` coefficients.
pub fn mul_trunc<F: FieldOps>(f: &F, a: &[F::Elem], b: &[F::Elem], len: usize) -> Vec<F::Elem> {
    let mut out = vec![f.zero(); len];
    for (i, ai) in a.iter().enumerate().take(len) {
        if f.is_zero(ai) {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(len - i) {
            if !f.is_zero(bj) {
                out[i + j] = f.add(&out[i + j], &f.mul(ai, bj));
            }
        }
    }
    out
}

/// Image of a rational coefficient list in `F`, `None` on a vanishing denominator.
pub fn map_coeffs<F: FieldOps>(f: &F, cs: &[Rat], len: usize) -> Option<Vec<F::Elem>> {
    let mut out = vec![f.zero(); len];
    for (k, c) in cs.iter().enumerate().take(len) {
        out[k] = f.reduce_rat(c)?;
    }
    Some(out)
}

/// `p(x(t), y(t))` for series given as coefficient vectors of length `len`.
pub fn eval_bivar_trunc<F: FieldOps>(
    f: &F,
    p: &BivarPoly,
    x_pows: &[Vec<F::Elem>],
    y: &[F::Elem],
    len: usize,
) -> Option<Vec<F::Elem>> {
    let mut out = vec![f.zero(); len];
    for b in (0..=p.deg_y()).rev() {
        out = mul_trunc(f, &out, y, len);
        for (a, bb, c) in p.terms() {
            if bb != b {
                continue;
            }
            let c = f.reduce_rat(c)?;
            for (o, xa) in out.iter_mut().zip(&x_pows[a as usize]) {
                if !f.is_zero(xa) {
                    *o = f.add(o, &f.mul(&c, xa));
                }
            }
        }
    }
    Some(out)
}

/// Powers `x^0, …, x^n` truncated to `len`.
pub fn powers_trunc<F: FieldOps>(f: &F, x: &[F::Elem], n: u32, len: usize) -> Vec<Vec<F::Elem>> {
    let mut one = vec![f.zero(); len];
    if len > 0 {
        one[0] = f.one();
    }
    let mut out = vec![one];
    for _ in 0..n {
        let next = mul_trunc(f, out.last().unwrap(), x, len);
        out.push(next);
    }
    out
}

/// Index of the first nonzero coefficient.
pub fn order_of<F: FieldOps>(f: &F, a: &[F::Elem]) -> Option<usize> {
    a.iter().position(|c| !f.is_zero(c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::field::PrimeField;

    fn r(n: i64) -> Rat {
        Rat::from_integer(n.into())
    }

    fn ts(terms: &[(u32, i64)], t: u32) -> TruncSeries {
        TruncSeries::from_terms(&terms.iter().map(|&(k, c)| (k, r(c))).collect::<Vec<_>>(), t)
    }

    #[test]
    fn order_and_truncation_semantics() {
        assert_eq!(ts(&[(2, 2), (5, 3)], 10).order(), Order::Finite(2));
        assert_eq!(TruncSeries::zero(10).order(), Order::AboveTruncation);
        assert_eq!(ts(&[(11, 1)], 10).order(), Order::AboveTruncation);
    }

    #[test]
    fn evaluation_examples() {
        let x = ts(&[(2, 1)], 12);
        let y = ts(&[(3, 1)], 12);
        let cusp = BivarPoly::from_i64_terms(&[(0, 2, 1), (3, 0, -1)]);
        assert!(poly_eval_series(&cusp, &x, &y).is_zero());
        let yy = ts(&[(3, 1), (4, 1)], 12);
        assert_eq!(poly_eval_series(&BivarPoly::y(), &x, &yy), yy);
        // (y - x^2)^2 - x^3 at (t^2, t^3) is -2t^7 + t^8
        let g = &(&BivarPoly::y() - &BivarPoly::x().pow(2)).pow(2) - &BivarPoly::x().pow(3);
        assert_eq!(poly_eval_series(&g, &x, &y), ts(&[(7, -2), (8, 1)], 12));
    }

    #[test]
    fn inverse_and_derivative() {
        let s = ts(&[(0, 1), (1, -1)], 8);
        let inv = s.inverse().unwrap();
        assert_eq!(inv, ts(&(0..=8).map(|k| (k, 1)).collect::<Vec<_>>(), 8));
        assert_eq!(ts(&[(3, 2)], 8).t_derivative(), ts(&[(3, 6)], 8));
    }

    #[test]
    fn modular_evaluation_matches_rational() {
        let f = PrimeField::new(1_000_000_007);
        let x = ts(&[(2, 1)], 20);
        let y = ts(&[(3, 1), (4, 1)], 20);
        let g = &(&BivarPoly::y() - &BivarPoly::x().pow(2)).pow(2) - &BivarPoly::x().pow(3);
        let exact = poly_eval_series(&g, &x, &y);
        let xm = map_coeffs(&f, x.coeffs(), 21).unwrap();
        let ym = map_coeffs(&f, y.coeffs(), 21).unwrap();
        let pows = powers_trunc(&f, &xm, g.deg_x(), 21);
        let modular = eval_bivar_trunc(&f, &g, &pows, &ym, 21).unwrap();
        assert_eq!(modular, map_coeffs(&f, exact.coeffs(), 21).unwrap());
    }
}
