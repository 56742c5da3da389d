//! Colengths `dim C{x,y}/(g_1, …, g_k)` of ideals with finite colength at
//! the origin, computed without any parametrization.
//!
//! Fix positive weights `w = (w_x, w_y)` and let `F_D` be the span of the
//! monomials of weight at least `D`. Since `F_D` is primary to the origin,
//! `d(D) = dim C[x,y]/(I + F_D)` is a local quantity. It is read off from
//! the monomials of weight below `D` modulo the truncated monomial
//! multiples of the generators, and it increases with `D` up to the
//! colength of `I`.
//!
//! If `d(D) = d(D + s)` for a step `s ≥ max(w_x, w_y)`, then
//! `F_D ⊆ I + F_{D+s} ⊆ I + m·F_D`, and Nakayama's lemma in the local ring
//! gives `F_D ⊆ I`, so `d(D)` is the colength. The search additionally
//! requires `d(D + 2s)` to agree before accepting.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;

use crate::exactalg::{checked_rank, BivarPoly, FieldOps, MatrixSource, Rat};
use crate::valmod::DEFAULT_PRIMES;
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    pub primes: [u64; 2],
    /// Largest filtration degree tried. `None` picks `4·(ord_w(f) + s)`.
    pub cap: Option<u32>,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { primes: DEFAULT_PRIMES, cap: None }
    }
}

/// Weights making the principal part of `f` as homogeneous as possible:
/// from the pure powers `x^a` and `y^b` of lowest degree, `(b, a)/gcd`.
/// Falls back to `(1, 1)` when either power is missing.
pub fn newton_weights(f: &BivarPoly) -> (u32, u32) {
    let a = f.terms().filter(|t| t.1 == 0 && t.0 > 0).map(|t| t.0).min();
    let b = f.terms().filter(|t| t.0 == 0 && t.1 > 0).map(|t| t.1).min();
    match (a, b) {
        (Some(a), Some(b)) => {
            let g = a.gcd(&b);
            (b / g, a / g)
        }
        _ => (1, 1),
    }
}

fn weighted_order(f: &BivarPoly, w: (u32, u32)) -> Option<u32> {
    f.terms().map(|(a, b, _)| a * w.0 + b * w.1).min()
}

/// Colength of `(gens)` in `C{x,y}`.
pub fn colength(gens: &[BivarPoly], w: (u32, u32), cfg: &OracleConfig) -> Result<u64, Error> {
    assert!(w.0 > 0 && w.1 > 0, "weights must be positive");
    let s = w.0.max(w.1);
    let ord = gens.iter().filter_map(|g| weighted_order(g, w)).min().unwrap_or(0);
    let cap = cfg.cap.unwrap_or(4 * (ord + s));
    let mut d = (ord + s).max(2 * s);
    let mut last = false;
    loop {
        if d + 2 * s > cap {
            if last || cap < 3 * s {
                return Err(Error::OracleInconclusive { cap });
            }
            d = cap - 2 * s;
            last = true;
        }
        let dims = [d, d + s, d + 2 * s].map(|deg| quotient_dim(gens, w, deg, cfg.primes));
        if dims[0] == dims[1] && dims[1] == dims[2] {
            return Ok(dims[0]);
        }
        if last {
            return Err(Error::OracleInconclusive { cap });
        }
        d *= 2;
    }
}

/// `μ` from `(f_x, f_y)`.
pub fn milnor_oracle(f: &BivarPoly, cfg: &OracleConfig) -> Result<u64, Error> {
    colength(&[f.dx(), f.dy()], newton_weights(f), cfg)
}

/// `τ` from `(f, f_x, f_y)`.
pub fn tjurina_oracle(f: &BivarPoly, cfg: &OracleConfig) -> Result<u64, Error> {
    colength(&[f.clone(), f.dx(), f.dy()], newton_weights(f), cfg)
}

/// Intersection multiplicity `dim C{x,y}/(f, g)`.
pub fn intersection_oracle(f: &BivarPoly, g: &BivarPoly, cfg: &OracleConfig) -> Result<u64, Error> {
    colength(&[f.clone(), g.clone()], newton_weights(&(f * g)), cfg)
}

/// Truncated monomial multiples, as sparse rows over the monomials of
/// weight below the filtration degree.
struct Truncated {
    cols: usize,
    rows: Vec<Vec<(usize, Rat)>>,
}

impl MatrixSource for Truncated {
    fn cols(&self) -> usize {
        self.cols
    }

    fn rows_over<F: FieldOps>(&self, f: &F) -> Option<Vec<Vec<F::Elem>>> {
        self.rows
            .iter()
            .map(|row| {
                let mut v = vec![f.zero(); self.cols];
                for (c, q) in row {
                    v[*c] = f.reduce_rat(q)?;
                }
                Some(v)
            })
            .collect()
    }
}

fn quotient_dim(gens: &[BivarPoly], w: (u32, u32), deg: u32, primes: [u64; 2]) -> u64 {
    // Columns sorted by decreasing weight: multiples of a generator then
    // have their leading entry at the heaviest surviving term.
    let mut monos = Vec::new();
    for a in 0..=deg / w.0 {
        for b in 0..=deg / w.1 {
            if a * w.0 + b * w.1 < deg {
                monos.push((a, b));
            }
        }
    }
    monos.sort_by_key(|&(a, b)| (core::cmp::Reverse(a * w.0 + b * w.1), a));
    let index: BTreeMap<(u32, u32), usize> = monos.iter().enumerate().map(|(i, &m)| (m, i)).collect();

    let mut rows = Vec::new();
    for g in gens {
        let Some(og) = weighted_order(g, w) else { continue };
        let terms: Vec<(u32, u32, Rat)> = g.terms().map(|(a, b, c)| (a, b, c.clone())).collect();
        for &(ma, mb) in &monos {
            if ma * w.0 + mb * w.1 + og >= deg {
                continue;
            }
            let row: Vec<(usize, Rat)> =
                terms.iter().filter_map(|(a, b, c)| index.get(&(a + ma, b + mb)).map(|&i| (i, c.clone()))).collect();
            rows.push(row);
        }
    }
    let src = Truncated { cols: monos.len(), rows };
    let (rank, _) = checked_rank(&src, primes);
    (monos.len() - rank) as u64
}
