//! Dense univariate and sparse bivariate polynomials over the rationals.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Rat;

/// Dense polynomial `Σ c_k z^k`, trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UniPoly {
    coeffs: Vec<Rat>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rat) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c z^k`
    pub fn monomial(c: Rat, k: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); k + 1];
        coeffs[k] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_i64s(cs: &[i64]) -> Self {
        Self::from_coeffs(cs.iter().map(|&c| Rat::from_integer(c.into())).collect())
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn eval(&self, z: &Rat) -> Rat {
        self.coeffs.iter().rev().fold(Rat::zero(), |acc, c| acc * z + c)
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c * Rat::from_integer(BigInt::from(k))).collect(),
        )
    }

    pub fn scale(&self, s: &Rat) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => self.scale(&l.recip()),
            None => Self::zero(),
        }
    }

    /// Euclidean division; panics when dividing by zero.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead_inv = d.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quo = vec![Rat::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            if rem[k].is_zero() {
                continue;
            }
            let q = &rem[k] * &lead_inv;
            for (j, dc) in d.coeffs.iter().enumerate() {
                let t = &q * dc;
                rem[k - dd + j] -= t;
            }
            quo[k - dd] = q;
        }
        rem.truncate(dd);
        (Self::from_coeffs(quo), Self::from_coeffs(rem))
    }

    /// Monic greatest common divisor (zero when both inputs vanish).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r.primitive_rational();
        }
        a.monic()
    }

    /// Scales to integer coefficients with content one, keeping the sign of
    /// the leading coefficient. Keeps Euclid's remainder sequence small.
    pub fn primitive_rational(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let lcm_den = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> =
            self.coeffs.iter().map(|c| (c * Rat::from_integer(lcm_den.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        Self::from_coeffs(ints.into_iter().map(|c| Rat::from_integer(c / &g)).collect())
    }

    /// Squarefree part `p / gcd(p, p')`, monic.
    pub fn squarefree_part(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    /// `p(c z)`
    pub fn scale_variable(&self, c: &Rat) -> Self {
        let mut pw = Rat::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for coef in &self.coeffs {
            out.push(coef * &pw);
            pw *= c;
        }
        Self::from_coeffs(out)
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::from_coeffs((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::from_coeffs((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let (na, da) = super::integer_form(&self.coeffs);
        let (nb, db) = super::integer_form(&rhs.coeffs);
        let mut out = vec![BigInt::zero(); na.len() + nb.len() - 1];
        for (i, a) in na.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in nb.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        let den = da * db;
        UniPoly::from_coeffs(out.into_iter().map(|n| Rat::new(n, den.clone())).collect())
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

/// Sparse polynomial `Σ c_ab x^a y^b`; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Default, Hash)]
pub struct BivarPoly {
    terms: BTreeMap<(u32, u32), Rat>,
}

impl BivarPoly {
    pub fn zero() -> Self {
        BivarPoly { terms: BTreeMap::new() }
    }

    pub fn constant(c: Rat) -> Self {
        Self::term(c, 0, 0)
    }

    pub fn x() -> Self {
        Self::term(Rat::one(), 1, 0)
    }

    pub fn y() -> Self {
        Self::term(Rat::one(), 0, 1)
    }

    /// `c x^a y^b`
    pub fn term(c: Rat, a: u32, b: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(a, b, c);
        p
    }

    /// Builds from `(a, b, c)` triples, summing repeated exponents.
    pub fn from_terms<I: IntoIterator<Item = (u32, u32, Rat)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (a, b, c) in it {
            p.add_term(a, b, c);
        }
        p
    }

    pub fn from_i64_terms(ts: &[(u32, u32, i64)]) -> Self {
        Self::from_terms(ts.iter().map(|&(a, b, c)| (a, b, Rat::from_integer(c.into()))))
    }

    pub fn add_term(&mut self, a: u32, b: u32, c: Rat) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((a, b)).or_insert_with(Rat::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(a, b));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &Rat)> + '_ {
        self.terms.iter().map(|(&(a, b), c)| (a, b, c))
    }

    pub fn coeff(&self, a: u32, b: u32) -> Rat {
        self.terms.get(&(a, b)).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn deg_x(&self) -> u32 {
        self.terms.keys().map(|k| k.0).max().unwrap_or(0)
    }

    pub fn deg_y(&self) -> u32 {
        self.terms.keys().map(|k| k.1).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|k| k.0 + k.1).max().unwrap_or(0)
    }

    pub fn constant_term(&self) -> Rat {
        self.coeff(0, 0)
    }

    pub fn scale(&self, s: &Rat) -> Self {
        Self::from_terms(self.terms().map(|(a, b, c)| (a, b, c * s)))
    }

    /// Multiplies by `x^a y^b`.
    pub fn shift(&self, a: u32, b: u32) -> Self {
        BivarPoly { terms: self.terms.iter().map(|(&(i, j), c)| ((i + a, j + b), c.clone())).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(Rat::one());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn dx(&self) -> Self {
        Self::from_terms(self.terms().filter(|t| t.0 > 0).map(|(a, b, c)| (a - 1, b, c * Rat::from_integer(a.into()))))
    }

    pub fn dy(&self) -> Self {
        Self::from_terms(self.terms().filter(|t| t.1 > 0).map(|(a, b, c)| (a, b - 1, c * Rat::from_integer(b.into()))))
    }

    pub fn eval(&self, x: &Rat, y: &Rat) -> Rat {
        self.eval_at_x(x).eval(y)
    }

    /// `p(x0, y)` as a polynomial in `y`.
    pub fn eval_at_x(&self, x0: &Rat) -> UniPoly {
        let mut out = vec![Rat::zero(); self.deg_y() as usize + 1];
        for (a, b, c) in self.terms() {
            out[b as usize] += c * pow_rat(x0, a);
        }
        UniPoly::from_coeffs(out)
    }

    /// `p(x, y0)` as a polynomial in `x`.
    pub fn eval_at_y(&self, y0: &Rat) -> UniPoly {
        let mut out = vec![Rat::zero(); self.deg_x() as usize + 1];
        for (a, b, c) in self.terms() {
            out[a as usize] += c * pow_rat(y0, b);
        }
        UniPoly::from_coeffs(out)
    }

    /// Coefficient of `y^b` as a polynomial in `x`.
    pub fn coeff_of_y(&self, b: u32) -> UniPoly {
        let mut out = vec![Rat::zero(); self.deg_x() as usize + 1];
        for (a, bb, c) in self.terms() {
            if bb == b {
                out[a as usize] = c.clone();
            }
        }
        UniPoly::from_coeffs(out)
    }

    /// Largest `k` with `x^k` dividing `p`.
    pub fn x_adic_order(&self) -> u32 {
        self.terms.keys().map(|k| k.0).min().unwrap_or(0)
    }

    /// Largest `k` with `y^k` dividing `p`.
    pub fn y_adic_order(&self) -> u32 {
        self.terms.keys().map(|k| k.1).min().unwrap_or(0)
    }

    /// Divides by `x^a y^b`; the caller guarantees exactness.
    pub fn unshift(&self, a: u32, b: u32) -> Self {
        BivarPoly { terms: self.terms.iter().map(|(&(i, j), c)| ((i - a, j - b), c.clone())).collect() }
    }

    /// Rescales to integer coefficients with content one and a positive
    /// coefficient on the leading power of `y` (ties broken by the
    /// lowest power of `x`).
    pub fn normalized(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let lcm_den = self.terms.values().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let g = self
            .terms
            .values()
            .map(|c| (c * Rat::from_integer(lcm_den.clone())).to_integer())
            .fold(BigInt::zero(), |acc, c| acc.gcd(&c));
        let mut s = Rat::new(lcm_den, g);
        let by = self.deg_y();
        let lead = self.terms.iter().find(|(k, _)| k.1 == by).map(|(_, c)| c.clone()).unwrap();
        if lead.is_negative() {
            s = -s;
        }
        self.scale(&s)
    }

    /// Support points of the Newton polygon, i.e. the exponent pairs.
    pub fn support(&self) -> Vec<(u32, u32)> {
        self.terms.keys().copied().collect()
    }

    /// Largest coefficient height (bits of numerator or denominator).
    pub fn max_height_bits(&self) -> u64 {
        self.terms.values().map(|c| c.numer().bits().max(c.denom().bits())).max().unwrap_or(0)
    }
}

pub(crate) fn pow_rat(x: &Rat, e: u32) -> Rat {
    num_traits::pow(x.clone(), e as usize)
}

impl Add for &BivarPoly {
    type Output = BivarPoly;
    fn add(self, rhs: &BivarPoly) -> BivarPoly {
        let mut out = self.clone();
        for (a, b, c) in rhs.terms() {
            out.add_term(a, b, c.clone());
        }
        out
    }
}

impl Sub for &BivarPoly {
    type Output = BivarPoly;
    fn sub(self, rhs: &BivarPoly) -> BivarPoly {
        let mut out = self.clone();
        for (a, b, c) in rhs.terms() {
            out.add_term(a, b, -c);
        }
        out
    }
}

impl Mul for &BivarPoly {
    type Output = BivarPoly;
    fn mul(self, rhs: &BivarPoly) -> BivarPoly {
        let mut out = BivarPoly::zero();
        for (a1, b1, c1) in self.terms() {
            for (a2, b2, c2) in rhs.terms() {
                out.add_term(a1 + a2, b1 + b2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &BivarPoly {
    type Output = BivarPoly;
    fn neg(self) -> BivarPoly {
        self.scale(&-Rat::one())
    }
}

impl fmt::Display for BivarPoly {
    /// Human-readable form in the grammar accepted by the curve-file parser,
    /// highest total degree first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by(|p, q| (q.0 + q.1).cmp(&(p.0 + p.1)).then(q.1.cmp(&p.1)));
        let mut first = true;
        for (a, b) in keys {
            let c = &self.terms[&(a, b)];
            let neg = c.is_negative();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let abs = c.abs();
            let mono = monomial_string(a, b);
            if mono.is_empty() {
                write!(f, "{}", abs)?;
            } else if abs.is_one() {
                f.write_str(&mono)?;
            } else {
                write!(f, "{}*{}", abs, mono)?;
            }
        }
        Ok(())
    }
}

fn monomial_string(a: u32, b: u32) -> String {
    let part = |v: &str, e: u32| match e {
        0 => String::new(),
        1 => String::from(v),
        _ => alloc::format!("{v}^{e}"),
    };
    match (part("x", a), part("y", b)) {
        (px, py) if px.is_empty() => py,
        (px, py) if py.is_empty() => px,
        (px, py) => alloc::format!("{px}*{py}"),
    }
}
