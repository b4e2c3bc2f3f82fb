//! Dense exact linear algebra over a [`Scalar`] field and over polynomial rings.

use super::poly::MPoly;
use super::scalar::Scalar;

pub type Matrix<C> = Vec<Vec<C>>;

/// Rank by Gaussian elimination.
pub fn rank<C: Scalar>(m: &Matrix<C>) -> usize {
    let mut a = m.clone();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][col].inv().unwrap();
        for i in (r + 1)..rows {
            if a[i][col].is_zero() {
                continue;
            }
            let f = a[i][col].mul_ref(&inv);
            for j in col..cols {
                let t = f.mul_ref(&a[r][j]);
                a[i][j] = a[i][j].sub_ref(&t);
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Basis of `{c : Σ g_j c_j = 0}`; empty input row means the whole space.
pub fn kernel_of_row<C: Scalar>(g: &[C]) -> Vec<Vec<C>> {
    let n = g.len();
    let Some(p) = g.iter().position(|x| !x.is_zero()) else {
        return (0..n)
            .map(|j| (0..n).map(|k| if k == j { C::one() } else { C::zero() }).collect())
            .collect();
    };
    let inv = g[p].inv().unwrap();
    (0..n)
        .filter(|&j| j != p)
        .map(|j| {
            let mut v = vec![C::zero(); n];
            v[j] = C::one();
            v[p] = g[j].mul_ref(&inv).neg_ref();
            v
        })
        .collect()
}

pub fn mat_mul<C: Scalar>(a: &Matrix<C>, b: &Matrix<C>) -> Matrix<C> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(C::zero(), |acc, k| acc.add_ref(&row[k].mul_ref(&b[k][j]))))
                .collect()
        })
        .collect()
}

pub fn transpose<C: Clone>(a: &Matrix<C>) -> Matrix<C> {
    let cols = a.first().map_or(0, Vec::len);
    (0..cols).map(|j| a.iter().map(|row| row[j].clone()).collect()).collect()
}

pub fn conj_matrix<C: Scalar>(a: &Matrix<C>) -> Matrix<C> {
    a.iter().map(|row| row.iter().map(Scalar::conj).collect()).collect()
}

/// Determinant of a square polynomial matrix by fraction-free (Bareiss)
/// elimination; every division is exact.
pub fn poly_det<C: Scalar>(m: &[Vec<MPoly<C>>]) -> MPoly<C> {
    let n = m.len();
    assert!(n > 0 && m.iter().all(|r| r.len() == n), "square matrix expected");
    let universe = m[0][0].universe().clone();
    let mut a: Vec<Vec<MPoly<C>>> = m.to_vec();
    let mut sign = false;
    let mut prev = MPoly::one(&universe);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match ((k + 1)..n).find(|&i| !a[i][k].is_zero()) {
                Some(p) => {
                    a.swap(k, p);
                    sign = !sign;
                }
                None => return MPoly::zero(&universe),
            }
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                let num = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.exact_div(&prev).expect("Bareiss division is exact");
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{GaussRat, VarUniverse};
    use num_traits::Zero;

    fn q(x: i64) -> GaussRat {
        GaussRat::from_int(x)
    }

    #[test]
    fn rank_and_kernel() {
        let m = vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)], vec![q(0), q(1), q(1)]];
        assert_eq!(rank(&m), 2);
        let g = vec![q(0), q(0), GaussRat::i()];
        let k = kernel_of_row(&g);
        assert_eq!(k.len(), 2);
        for v in &k {
            let dot = g.iter().zip(v).fold(GaussRat::zero(), |a, (x, y)| a + x * y);
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn bareiss_needs_pivoting() {
        let u = VarUniverse::source(1);
        let z: MPoly = MPoly::var(&u, 0);
        let one = MPoly::one(&u);
        let zero = MPoly::zero(&u);
        let m = vec![vec![zero.clone(), z.clone()], vec![one.clone(), zero.clone()]];
        assert_eq!(poly_det(&m), -&z);
        let singular = vec![vec![z.clone(), z.clone()], vec![one.clone(), one.clone()]];
        assert!(poly_det(&singular).is_zero());
    }
}
