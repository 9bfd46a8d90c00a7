//! Dense matrices over a [`FieldDescriptor`], stored row-major as nested vectors.

use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, FieldElement};

pub type Matrix = Vec<Vec<FieldElement>>;

pub fn identity(k: &FieldDescriptor, n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { k.one() } else { k.zero() }).collect())
        .collect()
}

pub fn transpose(a: &Matrix) -> Matrix {
    if a.is_empty() {
        return Vec::new();
    }
    (0..a[0].len()).map(|j| a.iter().map(|row| row[j].clone()).collect()).collect()
}

pub fn mat_mul(k: &FieldDescriptor, a: &Matrix, b: &Matrix) -> Matrix {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            assert_eq!(row.len(), inner, "dimension mismatch");
            (0..cols)
                .map(|j| {
                    let mut acc = k.zero();
                    for (l, x) in row.iter().enumerate() {
                        if !k.is_zero(x) && !k.is_zero(&b[l][j]) {
                            acc = k.add(&acc, &k.mul(x, &b[l][j]));
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// `PᵀGP`.
pub fn congruence(k: &FieldDescriptor, g: &Matrix, p: &Matrix) -> Matrix {
    mat_mul(k, &transpose(p), &mat_mul(k, g, p))
}

/// Row echelon form by exact Gaussian elimination; returns the pivot columns
/// and the sign-corrected product of pivots (the determinant when square).
fn eliminate(k: &FieldDescriptor, a: &mut Matrix, ncols: usize) -> (Vec<usize>, FieldElement) {
    let rows = a.len();
    let mut det = k.one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !k.is_zero(&a[i][c])) else {
            det = k.zero();
            continue;
        };
        if pr != r {
            a.swap(pr, r);
            det = k.neg(&det);
        }
        let inv = k.inv(&a[r][c]).expect("nonzero pivot");
        det = k.mul(&det, &a[r][c]);
        for i in 0..rows {
            if i == r || k.is_zero(&a[i][c]) {
                continue;
            }
            let f = k.mul(&a[i][c], &inv);
            for j in c..a[i].len() {
                if !k.is_zero(&a[r][j]) {
                    let v = k.sub(&a[i][j], &k.mul(&f, &a[r][j]));
                    a[i][j] = v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if pivots.len() < ncols {
        det = k.zero();
    }
    (pivots, det)
}

pub fn det(k: &FieldDescriptor, a: &Matrix) -> FieldElement {
    let mut m = a.clone();
    let n = m.len();
    if n == 0 {
        return k.one();
    }
    eliminate(k, &mut m, n).1
}

pub fn rank(k: &FieldDescriptor, a: &Matrix) -> usize {
    let mut m = a.clone();
    let cols = m.first().map_or(0, |r| r.len());
    eliminate(k, &mut m, cols).0.len()
}

/// Solves `A x = b` for square invertible `A`.
pub fn solve(k: &FieldDescriptor, a: &Matrix, b: &[FieldElement]) -> Result<Vec<FieldElement>> {
    let n = a.len();
    let mut aug: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (pivots, _) = eliminate(k, &mut aug, n);
    if pivots.len() < n {
        return Err(Error::SingularTheta);
    }
    (0..n).map(|i| k.div(&aug[i][n], &aug[i][i])).collect()
}

/// Inverse of a square invertible matrix.
pub fn inverse(k: &FieldDescriptor, a: &Matrix) -> Result<Matrix> {
    let n = a.len();
    let id = identity(k, n);
    let mut aug: Matrix = a.iter().zip(&id).map(|(r, e)| r.iter().chain(e).cloned().collect()).collect();
    let (pivots, _) = eliminate(k, &mut aug, n);
    if pivots.len() < n {
        return Err(Error::SingularTheta);
    }
    (0..n)
        .map(|i| {
            let inv = k.inv(&aug[i][i])?;
            Ok(aug[i][n..].iter().map(|x| k.mul(x, &inv)).collect())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::q;

    #[test]
    fn det_and_solve_over_q() {
        let k = FieldDescriptor::Rationals;
        let a = vec![vec![q(2, 1), q(1, 1)], vec![q(1, 1), q(3, 1)]];
        assert_eq!(det(&k, &a), q(5, 1));
        let x = solve(&k, &a, &[q(1, 1), q(2, 1)]).unwrap();
        assert_eq!(x, vec![q(1, 5), q(3, 5)]);
        let inv = inverse(&k, &a).unwrap();
        assert_eq!(mat_mul(&k, &a, &inv), identity(&k, 2));
    }

    #[test]
    fn singular() {
        let k = FieldDescriptor::PrimeField(5);
        let a = vec![vec![k.from_i64(1), k.from_i64(2)], vec![k.from_i64(2), k.from_i64(4)]];
        assert!(k.is_zero(&det(&k, &a)));
        assert_eq!(rank(&k, &a), 1);
        assert_eq!(solve(&k, &a, &[k.one(), k.one()]), Err(Error::SingularTheta));
    }

    #[test]
    fn det_sign_under_swap() {
        let k = FieldDescriptor::Rationals;
        let a = vec![vec![q(0, 1), q(1, 1)], vec![q(1, 1), q(0, 1)]];
        assert_eq!(det(&k, &a), q(-1, 1));
    }
}
