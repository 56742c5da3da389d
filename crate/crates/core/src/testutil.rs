//! Shared oracles and fixtures for unit tests.

use alloc::vec;
use alloc::vec::Vec;

use crate::branch::Parametrization;
use crate::exactalg::{parse_rat, poly_eval_series, rank_exact, BivarPoly, Matrix, Rat};
use crate::valmod::Generator;
use crate::valueset::BoxedValueSet;

/// Value set of the span of `x^a y^b` on the given branches, computed
/// directly from ranks: `α ∈ E` iff `g(α) > g(α + e_i)` for every `i`,
/// where `g(α)` is the dimension of the elements of order `≥ α`.
pub fn span_value_set(branches: &[Parametrization], hi: &[i64], max_deg: u32) -> BoxedValueSet {
    let one = Generator::Function(BivarPoly::from_i64_terms(&[(0, 0, 1)]));
    oracle_value_set(branches, &[one], hi, max_deg)
}

/// As [`span_value_set`] for the module generated by `gens`, with all
/// series arithmetic done over `Q`.
pub fn oracle_value_set(branches: &[Parametrization], gens: &[Generator], hi: &[i64], max_deg: u32) -> BoxedValueSet {
    let r = branches.len();
    let mut rows = Vec::new();
    for a in 0..=max_deg {
        for b in 0..=(max_deg - a) {
            let mono = BivarPoly::from_i64_terms(&[(a, b, 1)]);
            for g in gens {
                let mut row = Vec::new();
                for (p, &h) in branches.iter().zip(hi) {
                    let s = match g {
                        Generator::Function(f) => {
                            let (x, y) = p.series(h as u32);
                            poly_eval_series(&(&mono * f), &x, &y)
                        }
                        Generator::Form(w) => w.times(&mono).pullback(p, h as u32),
                    };
                    row.extend(s.coeffs().iter().cloned());
                }
                rows.push(row);
            }
        }
    }
    let offsets: Vec<usize> = (0..r).map(|i| hi[..i].iter().map(|h| *h as usize + 1).sum()).collect();
    let total = rank_exact(&Matrix::from_rows(rows.clone(), rows[0].len()));
    let g = |alpha: &[i64]| -> usize {
        let sel: Vec<Vec<Rat>> = rows
            .iter()
            .map(|row| (0..r).flat_map(|i| row[offsets[i]..offsets[i] + alpha[i] as usize].iter().cloned()).collect())
            .collect();
        let width = alpha.iter().sum::<i64>() as usize;
        if width == 0 {
            return total;
        }
        total - rank_exact(&Matrix::from_rows(sel, width))
    };
    BoxedValueSet::from_fn(vec![0; r], hi.to_vec(), |alpha| {
        let here = g(alpha);
        (0..r).all(|i| {
            let mut up = alpha.to_vec();
            up[i] += 1;
            g(&up) < here
        })
    })
    .unwrap()
}

/// A branch `(t^n, Σ c t^j)` with integer coefficients.
pub fn param(n: u32, ys: &[(u32, i64)]) -> Parametrization {
    Parametrization::puiseux_int(n, ys).unwrap()
}

/// A polynomial from `(a, b, "p/q")` terms.
pub fn poly(terms: &[(u32, u32, &str)]) -> BivarPoly {
    BivarPoly::from_terms(terms.iter().map(|&(a, b, c)| (a, b, parse_rat(c).unwrap())))
}
