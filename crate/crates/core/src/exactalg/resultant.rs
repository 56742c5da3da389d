//! Resultants eliminating a parameter `t`, and the norm shortcut used when
//! one coordinate of a parametrization is a monomial.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::poly::{BivarPoly, UniPoly};
use super::Rat;
use crate::Error;

/// A polynomial in `t` whose coefficients are polynomials in `x, y`;
/// entry `k` is the coefficient of `t^k`.
pub type PolyInT = Vec<BivarPoly>;

fn t_degree(p: &[BivarPoly]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

/// Resultant of two univariate polynomials taken with their actual degrees.
pub fn resultant_univariate(a: &UniPoly, b: &UniPoly) -> Rat {
    let (Some(m), Some(n)) = (a.degree(), b.degree()) else {
        return Rat::zero();
    };
    if n == 0 {
        return num_traits::pow(b.coeff(0), m);
    }
    if m == 0 {
        return num_traits::pow(a.coeff(0), n);
    }
    if m < n {
        let sign = if (m * n) % 2 == 1 { -Rat::one() } else { Rat::one() };
        return sign * resultant_univariate(b, a);
    }
    let rem = a.div_rem(b).1;
    let Some(k) = rem.degree() else {
        return Rat::zero();
    };
    let sign = if (m * n) % 2 == 1 { -Rat::one() } else { Rat::one() };
    sign * num_traits::pow(b.leading().unwrap().clone(), m - k) * resultant_univariate(b, &rem)
}

/// Determinant of the Sylvester matrix for the formal degrees `m`, `n`
/// (leading coefficients may vanish).
pub fn sylvester_resultant(a: &UniPoly, m: usize, b: &UniPoly, n: usize) -> Rat {
    let size = m + n;
    if size == 0 {
        return Rat::one();
    }
    let mut mat = vec![vec![Rat::zero(); size]; size];
    for i in 0..n {
        for k in 0..=m {
            mat[i][i + k] = a.coeff(m - k);
        }
    }
    for i in 0..m {
        for k in 0..=n {
            mat[n + i][i + k] = b.coeff(n - k);
        }
    }
    determinant(mat)
}

pub(crate) fn determinant(mut mat: Vec<Vec<Rat>>) -> Rat {
    let size = mat.len();
    let mut det = Rat::one();
    for col in 0..size {
        let Some(piv) = (col..size).find(|&r| !mat[r][col].is_zero()) else {
            return Rat::zero();
        };
        if piv != col {
            mat.swap(piv, col);
            det = -det;
        }
        let pv = mat[col][col].clone();
        det *= &pv;
        let inv = pv.recip();
        for r in col + 1..size {
            if mat[r][col].is_zero() {
                continue;
            }
            let factor = &mat[r][col] * &inv;
            for c in col..size {
                let t = &factor * &mat[col][c];
                mat[r][c] -= t;
            }
        }
    }
    det
}

fn specialize(p: &[BivarPoly], x: &Rat, y: &Rat) -> UniPoly {
    UniPoly::from_coeffs(p.iter().map(|c| c.eval(x, y)).collect())
}

/// `Res_t(p, q)` as a polynomial in `x, y`, by evaluation on an integer grid
/// and interpolation. Formal `t`-degrees are those of the inputs.
pub fn resultant_t(p: &[BivarPoly], q: &[BivarPoly]) -> Result<BivarPoly, Error> {
    let (Some(dp), Some(dq)) = (t_degree(p), t_degree(q)) else {
        return Err(Error::InvalidElimination);
    };
    if dp == 0 && dq == 0 {
        return Err(Error::InvalidElimination);
    }
    let max_dx = |ps: &[BivarPoly]| ps.iter().map(BivarPoly::deg_x).max().unwrap_or(0) as usize;
    let max_dy = |ps: &[BivarPoly]| ps.iter().map(BivarPoly::deg_y).max().unwrap_or(0) as usize;
    let bound_x = dq * max_dx(p) + dp * max_dx(q);
    let bound_y = dq * max_dy(p) + dp * max_dy(q);
    let xs: Vec<Rat> = (0..=bound_x).map(|i| Rat::from_integer(BigInt::from(i))).collect();
    let ys: Vec<Rat> = (0..=bound_y).map(|j| Rat::from_integer(BigInt::from(j))).collect();

    // For each x-node, interpolate the resultant as a polynomial in y.
    let mut in_y: Vec<UniPoly> = Vec::with_capacity(xs.len());
    for x0 in &xs {
        let vals: Vec<Rat> = ys
            .iter()
            .map(|y0| {
                let a = specialize(&p[..=dp], x0, y0);
                let b = specialize(&q[..=dq], x0, y0);
                if a.degree() == Some(dp) && b.degree() == Some(dq) {
                    resultant_univariate(&a, &b)
                } else {
                    sylvester_resultant(&a, dp, &b, dq)
                }
            })
            .collect();
        in_y.push(interpolate(&ys, &vals));
    }
    let mut out = BivarPoly::zero();
    for b in 0..=bound_y {
        let vals: Vec<Rat> = in_y.iter().map(|py| py.coeff(b)).collect();
        let in_x = interpolate(&xs, &vals);
        for (a, c) in in_x.coeffs().iter().enumerate() {
            out.add_term(a as u32, b as u32, c.clone());
        }
    }
    Ok(out)
}

/// Newton interpolation through `(nodes[i], vals[i])`.
pub fn interpolate(nodes: &[Rat], vals: &[Rat]) -> UniPoly {
    let n = nodes.len();
    let mut dd: Vec<Rat> = vals.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&nodes[i] - &nodes[i - level]);
        }
    }
    let mut poly = UniPoly::zero();
    for i in (0..n).rev() {
        let lin = UniPoly::from_coeffs(vec![-nodes[i].clone(), Rat::one()]);
        poly = &(&poly * &lin) + &UniPoly::constant(dd[i].clone());
    }
    poly
}

/// `Π_{s t^n = x} (y - Y(t))`, the characteristic polynomial of
/// multiplication by `Y` on `Q[x][t]/(s t^n - x)`. It agrees with
/// `Res_t(s t^n - x, y - Y(t))` up to a nonzero constant.
pub fn norm_monomial_x(s: &Rat, n: usize, y_of_t: &UniPoly) -> BivarPoly {
    norm_monomial_x_mod(s, n, y_of_t, None)
}

fn cut(p: UniPoly, x_bound: Option<usize>) -> UniPoly {
    match x_bound {
        Some(d) if p.coeffs().len() > d => UniPoly::from_coeffs(p.coeffs()[..d].to_vec()),
        _ => p,
    }
}

/// [`norm_monomial_x`] computed in `Q[x]/(x^d)` when `x_bound = Some(d)`:
/// the terms of `x`-degree below `d` are exact.
pub fn norm_monomial_x_mod(s: &Rat, n: usize, y_of_t: &UniPoly, x_bound: Option<usize>) -> BivarPoly {
    assert!(n >= 1 && !s.is_zero());
    let s_inv = s.recip();
    // Reduce t^k to (x/s)^{k div n} t^{k mod n}; entries are polynomials in x.
    let reduce = |p: &UniPoly| -> Vec<UniPoly> {
        let mut out = vec![UniPoly::zero(); n];
        for (k, c) in p.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (q, r) = (k / n, k % n);
            let term = UniPoly::monomial(c * num_traits::pow(s_inv.clone(), q), q);
            out[r] = &out[r] + &term;
        }
        out.into_iter().map(|e| cut(e, x_bound)).collect::<Vec<_>>()
    };
    // Column j of the matrix is Y(t) t^j in the basis 1, t, …, t^{n-1}.
    let mut mat = vec![vec![UniPoly::zero(); n]; n];
    for j in 0..n {
        let shifted = &UniPoly::monomial(Rat::one(), j) * y_of_t;
        for (i, e) in reduce(&shifted).into_iter().enumerate() {
            mat[i][j] = e;
        }
    }
    let char_poly = faddeev_leverrier(&mat, x_bound);
    let mut out = BivarPoly::zero();
    for (b, coeff) in char_poly.iter().enumerate() {
        for (a, c) in coeff.coeffs().iter().enumerate() {
            out.add_term(a as u32, b as u32, c.clone());
        }
    }
    out
}

/// Coefficients `c_0..c_n` of `det(λ I - A)` for a matrix over `Q[x]`.
fn faddeev_leverrier(a: &[Vec<UniPoly>], x_bound: Option<usize>) -> Vec<UniPoly> {
    let n = a.len();
    let mat_mul = |p: &[Vec<UniPoly>], q: &[Vec<UniPoly>]| -> Vec<Vec<UniPoly>> {
        let mut out = vec![vec![UniPoly::zero(); n]; n];
        for i in 0..n {
            for k in 0..n {
                if p[i][k].is_zero() {
                    continue;
                }
                for j in 0..n {
                    if !q[k][j].is_zero() {
                        out[i][j] = cut(&out[i][j] + &(&p[i][k] * &q[k][j]), x_bound);
                    }
                }
            }
        }
        out
    };
    let mut coeffs = vec![UniPoly::zero(); n + 1];
    coeffs[n] = UniPoly::constant(Rat::one());
    let mut m: Vec<Vec<UniPoly>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { UniPoly::constant(Rat::one()) } else { UniPoly::zero() }).collect())
        .collect();
    for k in 1..=n {
        let am = mat_mul(a, &m);
        let mut tr = UniPoly::zero();
        for (i, row) in am.iter().enumerate() {
            tr = &tr + &row[i];
        }
        let c = tr.scale(&-Rat::new(BigInt::one(), BigInt::from(k)));
        coeffs[n - k] = c.clone();
        m = am;
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = &row[i] + &c;
        }
    }
    coeffs
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x_minus_t_pow(k: usize) -> PolyInT {
        // x - t^k
        let mut p = vec![BivarPoly::zero(); k + 1];
        p[0] = BivarPoly::x();
        p[k] = BivarPoly::constant(-Rat::one());
        p
    }

    fn y_minus(terms: &[(usize, i64)]) -> PolyInT {
        let deg = terms.iter().map(|t| t.0).max().unwrap();
        let mut q = vec![BivarPoly::zero(); deg + 1];
        q[0] = BivarPoly::y();
        for &(k, c) in terms {
            q[k] = &q[k] - &BivarPoly::constant(Rat::from_integer((c).into()));
        }
        q
    }

    #[test]
    fn euclid_agrees_with_sylvester() {
        let a = UniPoly::from_i64s(&[3, -1, 0, 2]);
        let b = UniPoly::from_i64s(&[-5, 4, 7]);
        assert_eq!(resultant_univariate(&a, &b), sylvester_resultant(&a, 3, &b, 2));
        assert_eq!(resultant_univariate(&b, &a), sylvester_resultant(&b, 2, &a, 3));
    }

    #[test]
    fn implicitization_resultants() {
        let cusp = resultant_t(&x_minus_t_pow(2), &y_minus(&[(3, 1)])).unwrap().normalized();
        assert_eq!(cusp, BivarPoly::from_i64_terms(&[(0, 2, 1), (3, 0, -1)]));

        let diag = resultant_t(&x_minus_t_pow(1), &y_minus(&[(1, 1)])).unwrap().normalized();
        assert_eq!(diag, BivarPoly::from_i64_terms(&[(0, 1, 1), (1, 0, -1)]));

        let f = resultant_t(&x_minus_t_pow(2), &y_minus(&[(3, 1), (4, 1)])).unwrap().normalized();
        let expect = &(&BivarPoly::y() - &BivarPoly::x().pow(2)).pow(2) - &BivarPoly::x().pow(3);
        assert_eq!(f, expect);
    }

    #[test]
    fn constant_inputs_are_rejected() {
        let c = vec![BivarPoly::x()];
        assert_eq!(resultant_t(&c, &c), Err(Error::InvalidElimination));
    }

    #[test]
    fn norm_agrees_with_resultant() {
        let y = UniPoly::from_i64s(&[0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1]);
        let via_norm = norm_monomial_x(&Rat::one(), 6, &y).normalized();
        let via_res = resultant_t(&x_minus_t_pow(6), &y_minus(&[(9, 1), (10, 1)])).unwrap().normalized();
        assert_eq!(via_norm, via_res);
        assert_eq!(via_norm.deg_y(), 6);
        let low = norm_monomial_x_mod(&Rat::one(), 6, &y, Some(7));
        let expect = BivarPoly::from_terms(
            norm_monomial_x(&Rat::one(), 6, &y).terms().filter(|t| t.0 < 7).map(|(a, b, c)| (a, b, c.clone())),
        );
        assert_eq!(low, expect);
    }
}
