//! Exact arithmetic substrate: rationals, prime fields, polynomials,
//! truncated series, resultants and ranks.

pub mod field;
pub mod linalg;
pub mod poly;
pub mod resultant;
pub mod series;

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator.
pub type Rat = num_rational::BigRational;

use alloc::vec::Vec;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

pub use field::{FieldOps, PrimeField, Rationals};
pub use linalg::{checked_rank, rank_exact, rank_modular, EchelonBasis, Matrix, MatrixSource, RankMethod};
pub use poly::{BivarPoly, UniPoly};
pub use resultant::{norm_monomial_x, norm_monomial_x_mod, resultant_t, resultant_univariate, PolyInT};
pub use series::{poly_eval_series, Order, SeriesTuple, TruncSeries};

/// Parses `"p/q"` or `"n"` into a rational.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: num_bigint::BigInt = n.trim().parse().ok()?;
            let d: num_bigint::BigInt = d.trim().parse().ok()?;
            if num_traits::Zero::is_zero(&d) {
                return None;
            }
            Some(Rat::new(n, d))
        }
        None => Some(Rat::from_integer(s.parse().ok()?)),
    }
}

/// `n` as a rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

/// `n / d` as a rational.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

/// Integer numerators over the least common denominator.
pub(crate) fn integer_form(cs: &[Rat]) -> (Vec<BigInt>, BigInt) {
    let mut den = BigInt::one();
    for c in cs {
        if !c.is_zero() && !c.denom().is_one() {
            den = den.lcm(c.denom());
        }
    }
    let nums = cs.iter().map(|c| if c.is_zero() { BigInt::zero() } else { c.numer() * (&den / c.denom()) }).collect();
    (nums, den)
}
