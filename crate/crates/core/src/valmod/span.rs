//! Rank tables of a span of truncated series vectors.
//!
//! Columns are grouped in blocks, one block per branch, holding the
//! coefficients of consecutive orders. For a row set `R` the table stores,
//! for every cut `a = (a_0, …, a_{k-1})` with `0 ≤ a_j ≤ w_j`,
//!
//! ```text
//! h(a) = rank of R projected onto the first a_j columns of every block j
//! ```
//!
//! so that `dim span(R) - h(a)` is the dimension of the elements whose
//! order on block `j` is at least `a_j`.
//!
//! The recursion peels off one block at a time. In an echelon basis whose
//! rows vanish before their pivots, the elements vanishing on the first
//! `a_0` columns are exactly the span of the rows with pivot `≥ a_0`.
//! Sorting rows by decreasing pivot turns these subspaces into prefixes,
//! and an echelon basis grown by appending rows gives the basis of every
//! prefix for free.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;

use crate::exactalg::{EchelonBasis, FieldOps};

/// Row-major table over `0..=w_j` per block, last block fastest.
pub(crate) fn rank_table<F: FieldOps>(f: &F, rows: &[Vec<F::Elem>], widths: &[usize]) -> Vec<u32> {
    prefix_tables(f, rows, &[rows.len()], widths).pop().expect("one prefix requested")
}

/// Rank table of every prefix `rows[..len]` for `len` in `lens`.
fn prefix_tables<F: FieldOps>(f: &F, rows: &[Vec<F::Elem>], lens: &[usize], widths: &[usize]) -> Vec<Vec<u32>> {
    let w0 = widths[0];
    let total: usize = widths.iter().sum();
    let mut order: Vec<usize> = (0..lens.len()).collect();
    order.sort_by_key(|&i| lens[i]);

    if widths.len() == 1 {
        let mut basis = EchelonBasis::new(w0);
        let mut hist = vec![0u32; w0];
        let mut out = vec![Vec::new(); lens.len()];
        let mut done = 0;
        for &i in &order {
            while done < lens[i] {
                if let Some(p) = basis.insert_pivot(f, rows[done][..w0].to_vec()) {
                    hist[p] += 1;
                }
                done += 1;
            }
            let mut t = Vec::with_capacity(w0 + 1);
            let mut acc = 0;
            t.push(0);
            for &h in &hist {
                acc += h;
                t.push(acc);
            }
            out[i] = t;
        }
        return out;
    }

    let mut basis = EchelonBasis::new(total);
    let mut snapshot = vec![0usize; lens.len()];
    let mut done = 0;
    for &i in &order {
        while done < lens[i] {
            basis.insert(f, rows[done][..total].to_vec());
            done += 1;
        }
        snapshot[i] = basis.rank();
    }
    let rest: usize = widths[1..].iter().map(|w| w + 1).product();
    let one = |nb: usize| -> Vec<u32> {
        let piv = &basis.pivots()[..nb];
        let mut idx: Vec<usize> = (0..nb).collect();
        idx.sort_by_key(|&k| Reverse(piv[k].min(w0)));
        let sub_rows: Vec<Vec<F::Elem>> = idx.iter().map(|&k| basis.rows()[k][w0..].to_vec()).collect();
        let sub_lens: Vec<usize> = (0..=w0).map(|a| piv.iter().filter(|&&p| p >= a).count()).collect();
        let sub = prefix_tables(f, &sub_rows, &sub_lens, &widths[1..]);
        let mut table = Vec::with_capacity((w0 + 1) * rest);
        for (a, s) in sub.iter().enumerate() {
            let below = (nb - sub_lens[a]) as u32;
            table.extend(s.iter().map(|v| v + below));
        }
        table
    };
    map_snapshots(&snapshot, one)
}

#[cfg(feature = "std")]
fn map_snapshots(snapshot: &[usize], one: impl Fn(usize) -> Vec<u32> + Sync) -> Vec<Vec<u32>> {
    use rayon::prelude::*;
    snapshot.par_iter().map(|&nb| one(nb)).collect()
}

#[cfg(not(feature = "std"))]
fn map_snapshots(snapshot: &[usize], one: impl Fn(usize) -> Vec<u32>) -> Vec<Vec<u32>> {
    snapshot.iter().map(|&nb| one(nb)).collect()
}
