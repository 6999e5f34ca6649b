//! Small dense exact linear algebra over the rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;
pub type QMatrix = Vec<Vec<Q>>;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn to_q_matrix(m: &[Vec<i64>]) -> QMatrix {
    m.iter().map(|row| row.iter().map(|&x| q(x)).collect()).collect()
}

pub fn to_q_vector(v: &[i64]) -> Vec<Q> {
    v.iter().map(|&x| q(x)).collect()
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

pub fn mat_vec(m: &[Vec<Q>], v: &[Q]) -> Vec<Q> {
    m.iter().map(|row| dot(row, v)).collect()
}

/// Determinant by fraction-exact Gaussian elimination.
pub fn det(m: &[Vec<Q>]) -> Q {
    let n = m.len();
    let mut a: QMatrix = m.to_vec();
    let mut d = Q::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Q::zero();
        };
        if piv != col {
            a.swap(piv, col);
            d = -d;
        }
        let p = a[col][col].clone();
        d *= &p;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &p;
            for c in col..n {
                let sub = &f * &a[col][c];
                a[r][c] -= sub;
            }
        }
    }
    d
}

/// Solves `m x = rhs` for square non-singular `m`.
pub fn solve(m: &[Vec<Q>], rhs: &[Q]) -> Result<Vec<Q>> {
    let n = m.len();
    let mut a: QMatrix = m
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(Error::SingularSystem)?;
        a.swap(piv, col);
        let p = a[col][col].clone();
        for c in col..=n {
            a[col][c] = &a[col][c] / &p;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for c in col..=n {
                let sub = &f * &a[col][c];
                a[r][c] -= sub;
            }
        }
    }
    Ok(a.into_iter().map(|mut row| row.pop().expect("augmented column")).collect())
}

/// Inverse of a square non-singular matrix.
pub fn inverse(m: &[Vec<Q>]) -> Result<QMatrix> {
    let n = m.len();
    let mut cols = Vec::with_capacity(n);
    for i in 0..n {
        let e: Vec<Q> = (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect();
        cols.push(solve(m, &e)?);
    }
    Ok((0..n).map(|r| (0..n).map(|c| cols[c][r].clone()).collect()).collect())
}

/// Leading principal minors, in order of size.
pub fn leading_minors(m: &[Vec<Q>]) -> Vec<Q> {
    (1..=m.len())
        .map(|k| {
            let sub: QMatrix = m[..k].iter().map(|row| row[..k].to_vec()).collect();
            det(&sub)
        })
        .collect()
}

pub fn is_positive_definite(m: &[Vec<Q>]) -> bool {
    leading_minors(m).iter().all(|d| d.is_positive())
}

/// `(positive, negative, zero)` counts of a symmetric matrix, by congruence.
pub fn inertia(m: &[Vec<Q>]) -> (usize, usize, usize) {
    let n = m.len();
    let mut a: QMatrix = m.to_vec();
    let (mut pos, mut neg, mut zero) = (0, 0, 0);
    let mut active: Vec<usize> = (0..n).collect();
    while let Some(&first) = active.first() {
        let pivot = active.iter().copied().find(|&i| !a[i][i].is_zero());
        let pivot = match pivot {
            Some(p) => p,
            None => {
                // Zero diagonal: fold a row with a non-zero off-diagonal entry into `first`.
                let partner = active.iter().copied().find(|&j| j != first && !a[first][j].is_zero());
                match partner {
                    Some(j) => {
                        for c in 0..n {
                            let v = a[j][c].clone();
                            a[first][c] += v;
                        }
                        for r in 0..n {
                            let v = a[r][j].clone();
                            a[r][first] += v;
                        }
                        first
                    }
                    None => {
                        zero += 1;
                        active.retain(|&i| i != first);
                        continue;
                    }
                }
            }
        };
        let p = a[pivot][pivot].clone();
        if p.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        active.retain(|&i| i != pivot);
        for &r in &active {
            if a[r][pivot].is_zero() {
                continue;
            }
            let f = &a[r][pivot] / &p;
            for &c in &active {
                let sub = &f * &a[pivot][c];
                a[r][c] -= sub;
            }
        }
        for &r in &active {
            a[r][pivot] = Q::zero();
            a[pivot][r] = Q::zero();
        }
    }
    (pos, neg, zero)
}

/// Largest integer `x` with `x² <= v` for rational `v >= 0`.
pub fn floor_sqrt(v: &Q) -> BigInt {
    if !v.is_positive() {
        return BigInt::zero();
    }
    let floor = v.floor().to_integer();
    let mut x = floor.sqrt();
    while Q::from_integer(&x * &x) > *v {
        x -= 1;
    }
    while Q::from_integer((&x + 1) * (&x + 1)) <= *v {
        x += 1;
    }
    x
}
