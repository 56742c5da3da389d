//! Random analytic representatives of an equisingularity class, and pairs
//! of them with prescribed intersection multiplicity.
//!
//! Two branches `(t^n, y_1)` and `(t^n, y_2)` sharing all terms below `t^k`,
//! with `k > β_g`, meet with multiplicity `k + Σ (e_{i-1} - e_i) β_i`: the
//! conjugate `y_2(ωt)` for `ω ≠ 1` separates from `y_1` at the
//! characteristic exponent where `ω` stops fixing the terms, and `ω = 1`
//! contributes `k`. Changing only the coefficient of `t^{β_g}` gives the
//! boundary value `n_g β̄_g` for generic coefficients.

use alloc::format;
use alloc::vec::Vec;

use num_traits::Zero;
use rand_core::RngCore;

use crate::branch::{intersection, CharData, Parametrization};
use crate::exactalg::Rat;
use crate::Error;

/// Extra random terms placed after the last prescribed exponent.
const TAIL: u32 = 3;

/// Draws before a pair construction gives up.
pub const MAX_DRAWS: usize = 32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Family {
    chars: CharData,
}

/// How the two members of a pair are related.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairKind {
    /// `I > n_g β̄_g`.
    Diagonal,
    /// `I = n_g β̄_g`.
    Boundary,
}

impl Family {
    pub fn from_semigroup(beta_bar: &[u32]) -> Result<Self, Error> {
        Ok(Family { chars: CharData::from_semigroup(beta_bar)? })
    }

    pub fn chars(&self) -> &CharData {
        &self.chars
    }

    /// `Σ (e_{i-1} - e_i) β_i`, the part of `I` fixed by the class.
    fn conjugate_part(&self) -> u32 {
        let c = &self.chars;
        (1..=c.g).map(|i| (c.e[i - 1] - c.e[i]) * c.beta[i]).sum()
    }

    /// Which construction reaches intersection multiplicity `i`, if any.
    pub fn pair_kind(&self, i: u32) -> Option<PairKind> {
        let c = &self.chars;
        match c.n_g_beta_bar_g() {
            None => (i >= 1).then_some(PairKind::Diagonal),
            Some(b) if i > b => Some(PairKind::Diagonal),
            Some(b) if i == b => Some(PairKind::Boundary),
            Some(_) => None,
        }
    }

    /// Random terms of a branch in the class, through exponent `upto`
    /// (exclusive). Characteristic terms get nonzero coefficients; other
    /// terms appear at exponents that keep the characteristic sequence.
    fn terms<R: RngCore>(&self, rng: &mut R, upto: u32) -> Vec<(u32, Rat)> {
        let c = &self.chars;
        let mut out = Vec::new();
        let mut level = 0;
        for j in c.beta[0]..upto {
            if level < c.g && j == c.beta[level + 1] {
                level += 1;
                out.push((j, nonzero(rng)));
            } else if j % c.e[level] == 0 && j > c.beta[0] && rng.next_u32() % 2 == 0 {
                out.push((j, coefficient(rng)));
            }
        }
        out
    }

    /// A random branch with this semigroup.
    pub fn random_branch<R: RngCore>(&self, rng: &mut R) -> Parametrization {
        let top = self.chars.beta.last().copied().unwrap_or(1) + TAIL + 1;
        let terms = self.terms(rng, top);
        Parametrization::puiseux(self.chars.beta[0], &terms).expect("terms follow the characteristic sequence")
    }

    /// Two random branches in the class meeting with multiplicity `i`.
    /// The result is checked by computing the intersection; draws that miss
    /// the target (only possible at the boundary) are retried.
    pub fn random_pair<R: RngCore>(&self, i: u32, rng: &mut R) -> Result<(Parametrization, Parametrization), Error> {
        let kind = self.pair_kind(i).ok_or_else(|| {
            Error::Unsupported(format!(
                "intersection {i} lies below n_g β̄_g = {} for this class",
                self.chars.n_g_beta_bar_g().unwrap_or(0)
            ))
        })?;
        let n = self.chars.beta[0];
        let k = match kind {
            PairKind::Diagonal => i - self.conjugate_part(),
            PairKind::Boundary => *self.chars.beta.last().unwrap(),
        };
        for _ in 0..MAX_DRAWS {
            let shared = self.terms(rng, k);
            let (a, b) = match kind {
                PairKind::Diagonal => distinct(rng, coefficient),
                PairKind::Boundary => distinct(rng, nonzero),
            };
            let build = |lead: Rat, rng: &mut R| {
                let mut ts = shared.clone();
                ts.push((k, lead));
                ts.extend((k + 1..=k + TAIL).map(|j| (j, coefficient(rng))));
                Parametrization::puiseux(n, &ts)
            };
            let p1 = build(a, rng)?;
            let p2 = build(b, rng)?;
            if intersection(&p1, &p2, 4 * i + 64)? == i {
                return Ok((p1, p2));
            }
        }
        Err(Error::Unsupported(format!("no pair with intersection {i} after {MAX_DRAWS} draws")))
    }
}

fn below<R: RngCore>(rng: &mut R, n: u32) -> u32 {
    rng.next_u32() % n
}

/// A small rational `p/q` with `|p| ≤ 9` and `1 ≤ q ≤ 4`, possibly zero.
fn coefficient<R: RngCore>(rng: &mut R) -> Rat {
    let p = below(rng, 19) as i64 - 9;
    let q = below(rng, 4) as i64 + 1;
    Rat::new(p.into(), q.into())
}

fn nonzero<R: RngCore>(rng: &mut R) -> Rat {
    loop {
        let c = coefficient(rng);
        if !c.is_zero() {
            return c;
        }
    }
}

fn distinct<R: RngCore>(rng: &mut R, draw: fn(&mut R) -> Rat) -> (Rat, Rat) {
    let a = draw(rng);
    loop {
        let b = draw(rng);
        if b != a {
            return (a, b);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::branch::char_data;
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn branches_stay_in_the_class() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for gens in [&[2, 3][..], &[4, 6, 13], &[6, 9, 19], &[10, 14, 71], &[1]] {
            let fam = Family::from_semigroup(gens).unwrap();
            for _ in 0..5 {
                assert_eq!(char_data(&fam.random_branch(&mut rng)).unwrap().beta_bar, gens);
            }
        }
    }

    #[test]
    fn pair_intersections_hit_the_target() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let cusp = Family::from_semigroup(&[2, 3]).unwrap();
        assert_eq!(cusp.pair_kind(6), Some(PairKind::Boundary));
        assert_eq!(cusp.pair_kind(5), None);
        for i in 6..12 {
            let (p, q) = cusp.random_pair(i, &mut rng).unwrap();
            assert_eq!(intersection(&p, &q, 200).unwrap(), i);
            assert_eq!(char_data(&q).unwrap().beta_bar, vec![2, 3]);
        }
        // 47 + k for the class of (t^6, t^9 + t^10).
        let f = Family::from_semigroup(&[6, 9, 19]).unwrap();
        assert_eq!(f.conjugate_part(), 47);
        assert_eq!(f.chars().n_g_beta_bar_g(), Some(57));
        assert!(f.random_pair(58, &mut rng).is_ok());
        assert!(f.random_pair(57, &mut rng).is_ok());
    }

    #[test]
    fn same_seed_same_pair() {
        let fam = Family::from_semigroup(&[3, 5]).unwrap();
        let a = fam.random_pair(20, &mut ChaCha8Rng::seed_from_u64(9)).unwrap();
        let b = fam.random_pair(20, &mut ChaCha8Rng::seed_from_u64(9)).unwrap();
        assert_eq!(a, b);
    }
}
