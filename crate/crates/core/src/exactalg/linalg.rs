//! Dense echelon forms and ranks, exact or modulo word-sized primes.

use alloc::vec;
use alloc::vec::Vec;

use super::field::{FieldOps, PrimeField, Rationals};
use super::Rat;

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone> Matrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>, cols: usize) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix");
            data.extend(r);
        }
        Matrix { rows: n, cols, data }
    }

    pub fn filled(rows: usize, cols: usize, v: T) -> Self {
        Matrix { rows, cols, data: vec![v; rows * cols] }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [T] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }
}

impl Matrix<Rat> {
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| Rat::from_integer(v.into())).collect()).collect(), cols)
    }
}

/// Row echelon basis grown one vector at a time. Each stored row has a
/// unit pivot and zeros in every earlier pivot column.
#[derive(Clone, Debug)]
pub struct EchelonBasis<F: FieldOps> {
    cols: usize,
    pivot_of_col: Vec<Option<usize>>,
    rows: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
}

impl<F: FieldOps> EchelonBasis<F> {
    pub fn new(cols: usize) -> Self {
        EchelonBasis { cols, pivot_of_col: vec![None; cols], rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the basis and stores it if independent.
    /// Returns whether the rank grew.
    pub fn insert(&mut self, f: &F, v: Vec<F::Elem>) -> bool {
        self.insert_pivot(f, v).is_some()
    }

    /// As [`insert`](Self::insert), returning the pivot column of the new row.
    pub fn insert_pivot(&mut self, f: &F, mut v: Vec<F::Elem>) -> Option<usize> {
        debug_assert_eq!(v.len(), self.cols);
        for col in 0..self.cols {
            if f.is_zero(&v[col]) {
                continue;
            }
            match self.pivot_of_col[col] {
                Some(r) => {
                    let factor = v[col].clone();
                    f.axpy_neg(&mut v[col..], &self.rows[r][col..], &factor);
                }
                None => {
                    let inv = f.inv(&v[col]);
                    f.scale_in_place(&mut v[col..], &inv);
                    self.pivot_of_col[col] = Some(self.rows.len());
                    self.rows.push(v);
                    self.pivots.push(col);
                    return Some(col);
                }
            }
        }
        None
    }

    /// Pivot column of each stored row, in insertion order.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[Vec<F::Elem>] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<Vec<F::Elem>> {
        self.rows
    }
}

/// Row rank over the field `f` of the given rows.
pub fn rank_of_rows<F: FieldOps>(f: &F, rows: Vec<Vec<F::Elem>>, cols: usize) -> usize {
    let mut basis = EchelonBasis::new(cols);
    for r in rows {
        basis.insert(f, r);
        if basis.rank() == cols {
            break;
        }
    }
    basis.rank()
}

/// Exact rank over `Q`.
pub fn rank_exact(m: &Matrix<Rat>) -> usize {
    let rows = (0..m.nrows()).map(|i| m.row(i).to_vec()).collect();
    rank_of_rows(&Rationals, rows, m.ncols())
}

/// Rank modulo `p`, `None` when `p` divides a denominator.
pub fn rank_modular(m: &Matrix<Rat>, p: u64) -> Option<usize> {
    let f = PrimeField::new(p);
    let mut rows = Vec::with_capacity(m.nrows());
    for i in 0..m.nrows() {
        rows.push(m.row(i).iter().map(|q| f.reduce_rat(q)).collect::<Option<Vec<_>>>()?);
    }
    Some(rank_of_rows(&f, rows, m.ncols()))
}

/// How a checked rank was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RankMethod {
    /// Both primes agreed.
    Modular,
    /// The primes disagreed or were unusable; exact elimination decided.
    Exact,
}

/// Something that can produce its matrix over any field.
pub trait MatrixSource {
    fn cols(&self) -> usize;
    /// Rows over `f`, or `None` if some entry is undefined there.
    fn rows_over<F: FieldOps>(&self, f: &F) -> Option<Vec<Vec<F::Elem>>>;
}

/// Rank modulo two primes, falling back to exact elimination when they
/// disagree or a prime divides a denominator.
pub fn checked_rank<S: MatrixSource>(src: &S, primes: [u64; 2]) -> (usize, RankMethod) {
    let mut ranks = [None, None];
    for (slot, &p) in ranks.iter_mut().zip(&primes) {
        let f = PrimeField::new(p);
        *slot = src.rows_over(&f).map(|rows| rank_of_rows(&f, rows, src.cols()));
    }
    match ranks {
        [Some(a), Some(b)] if a == b => (a, RankMethod::Modular),
        _ => {
            let rows = src.rows_over(&Rationals).expect("rational entries are always defined");
            (rank_of_rows(&Rationals, rows, src.cols()), RankMethod::Exact)
        }
    }
}

impl MatrixSource for Matrix<Rat> {
    fn cols(&self) -> usize {
        self.ncols()
    }
    fn rows_over<F: FieldOps>(&self, f: &F) -> Option<Vec<Vec<F::Elem>>> {
        (0..self.nrows()).map(|i| self.row(i).iter().map(|q| f.reduce_rat(q)).collect()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const P1: u64 = 2_305_843_009_213_693_951;
    const P2: u64 = 4_611_686_018_427_387_847;

    #[test]
    fn small_ranks() {
        let id = Matrix::from_i64(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(rank_exact(&id), 3);
        assert_eq!(rank_exact(&Matrix::filled(2, 5, Rat::from_integer(0.into()))), 0);
        let dep = Matrix::from_i64(&[&[1, 2], &[2, 4]]);
        assert_eq!(rank_exact(&dep), 1);
        assert_eq!(checked_rank(&dep, [P1, P2]), (1, RankMethod::Modular));
    }

    #[test]
    fn small_prime_can_undercount_and_triggers_fallback() {
        // det = 7, singular mod 7 only.
        let m = Matrix::from_i64(&[&[2, 1], &[1, 4]]);
        assert_eq!(rank_modular(&m, 7), Some(1));
        assert_eq!(checked_rank(&m, [7, P1]), (2, RankMethod::Exact));
    }

    proptest! {
        #[test]
        fn modular_rank_matches_exact(entries in proptest::collection::vec(-4i64..5, 24), rank_cap in 1usize..5) {
            // Product of a 6×k and a k×4 matrix has rank at most k.
            let a: Vec<Vec<i64>> = entries[..6 * rank_cap.min(4)].chunks(rank_cap.min(4)).map(|c| c.to_vec()).collect();
            let b: Vec<Vec<i64>> = entries[..4 * rank_cap.min(4)].chunks(4).map(|c| c.to_vec()).collect();
            let k = rank_cap.min(4);
            let prod: Vec<Vec<Rat>> = (0..a.len()).map(|i| (0..4).map(|j| {
                Rat::from_integer((0..k).map(|l| a[i][l] * b[l][j]).sum::<i64>().into())
            }).collect()).collect();
            let m = Matrix::from_rows(prod, 4);
            let exact = rank_exact(&m);
            prop_assert!(exact <= k);
            prop_assert_eq!(rank_modular(&m, P1), Some(exact));
            prop_assert_eq!(rank_modular(&m, P2), Some(exact));
        }
    }
}
