//! Exact rational linear algebra: solving, kernels, and the signature of a
//! symmetric integer matrix by congruence diagonalization.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::matrix::IntMatrix;

fn to_rational(m: &IntMatrix) -> Vec<Vec<BigRational>> {
    m.to_rows()
        .into_iter()
        .map(|r| r.into_iter().map(BigRational::from_integer).collect())
        .collect()
}

/// Reduced row echelon form in place; returns the pivot columns.
fn rref(a: &mut [Vec<BigRational>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..a.len()).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let inv = a[row][col].recip();
        for x in a[row].iter_mut() {
            *x *= &inv;
        }
        for i in 0..a.len() {
            if i != row && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                let pivot_row = a[row].clone();
                for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == a.len() {
            break;
        }
    }
    pivots
}

/// Some rational `x` with `m x = rhs` (free variables set to zero), or `None`
/// if the system is inconsistent.
pub fn solve(m: &IntMatrix, rhs: &[BigInt]) -> Option<Vec<BigRational>> {
    assert_eq!(rhs.len(), m.rows());
    let n = m.cols();
    let mut aug: Vec<Vec<BigRational>> = to_rational(m)
        .into_iter()
        .zip(rhs)
        .map(|(mut r, b)| {
            r.push(BigRational::from_integer(b.clone()));
            r
        })
        .collect();
    let pivots = rref(&mut aug, n);
    if aug.iter().skip(pivots.len()).any(|r| !r[n].is_zero()) {
        return None;
    }
    let mut x = vec![BigRational::zero(); n];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug[r][n].clone();
    }
    Some(x)
}

/// A basis of the rational null space of `m`.
pub fn kernel_basis(m: &IntMatrix) -> Vec<Vec<BigRational>> {
    let n = m.cols();
    let mut a = to_rational(m);
    let pivots = rref(&mut a, n);
    (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![BigRational::zero(); n];
            v[free] = BigRational::from_integer(1.into());
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -a[r][free].clone();
            }
            v
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Inertia {
    pub fn signature(&self) -> i64 {
        self.positive as i64 - self.negative as i64
    }
}

/// Inertia of a symmetric matrix via `P^T M P` diagonalization over Q.
pub fn inertia(m: &IntMatrix) -> Inertia {
    assert!(m.is_symmetric(), "inertia needs a symmetric matrix");
    let n = m.rows();
    let mut a = to_rational(m);
    let mut diag: Vec<BigRational> = Vec::with_capacity(n);
    for k in 0..n {
        if a[k][k].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !a[j][j].is_zero()) {
                // symmetric swap of k and j
                a.swap(k, j);
                for row in a.iter_mut() {
                    row.swap(k, j);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_zero()) {
                // row_k += row_j, col_k += col_j makes a[k][k] = 2 a[k][j]
                let src = a[j].clone();
                for (x, v) in a[k].iter_mut().zip(src) {
                    *x += v;
                }
                for row in a.iter_mut() {
                    let v = row[j].clone();
                    row[k] += v;
                }
            }
        }
        let pivot = a[k][k].clone();
        if !pivot.is_zero() {
            for i in k + 1..n {
                if a[i][k].is_zero() {
                    continue;
                }
                let f = &a[i][k] / &pivot;
                let pivot_row = a[k].clone();
                for (x, p) in a[i].iter_mut().zip(&pivot_row).skip(k) {
                    *x -= &f * p;
                }
                for row in a.iter_mut().skip(k) {
                    let v = &f * &row[k];
                    row[i] -= v;
                }
            }
        }
        diag.push(a[k][k].clone());
    }
    Inertia {
        positive: diag.iter().filter(|x| x.is_positive()).count(),
        negative: diag.iter().filter(|x| x.is_negative()).count(),
        zero: diag.iter().filter(|x| x.is_zero()).count(),
    }
}
