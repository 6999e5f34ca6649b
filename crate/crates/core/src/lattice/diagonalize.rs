//! Diagonalization of small negative-definite unimodular forms.
//!
//! Repeatedly finds a vector of square `-1`, splits it off orthogonally (the
//! complement is again unimodular), and recurses. The search for `-1` vectors
//! is exhaustive: coordinates are confined to the box `|v_i|² <= (A⁻¹)_ii`
//! where `A = -Q` (Cauchy-Schwarz), and inside the box the Fincke-Pohst
//! recursion prunes with exact rational arithmetic. Failure is therefore a
//! proof that no such vector exists.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::linalg::{floor_sqrt, inverse, q, to_q_matrix, QMatrix, Q};
use super::IntersectionLattice;
use crate::error::{Error, Result};

pub const DEFAULT_DIAGONALIZE_RANK: usize = 8;

/// Returns a unimodular integer matrix `U` (columns are the new basis) with
/// `Uᵀ Q U = diag(-1, …, -1)`.
pub fn diagonalize_definite(lattice: &IntersectionLattice, rank_limit: usize) -> Result<Vec<Vec<i64>>> {
    let n = lattice.rank();
    if n > rank_limit {
        return Err(Error::RankLimit { rank: n, limit: rank_limit });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let (_, neg, _) = lattice.inertia();
    if neg != n {
        return Err(Error::NotNegativeDefinite);
    }
    let det = lattice.det();
    if det.abs() != Q::one() {
        return Err(Error::NotUnimodular(det.to_string()));
    }
    let u = split_recursive(lattice.gram())?;
    let check = congruence(lattice.gram(), &u);
    let target: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| if i == j { -1 } else { 0 }).collect()).collect();
    if check != target || super::linalg::det(&to_q_matrix(&u)).abs() != Q::one() {
        return Err(Error::Internal("diagonalizing basis failed verification".into()));
    }
    Ok(u)
}

/// `Uᵀ G U`.
pub fn congruence(gram: &[Vec<i64>], u: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = gram.len();
    let cols = if n == 0 { 0 } else { u[0].len() };
    let mut gu = vec![vec![0i64; cols]; n];
    for i in 0..n {
        for j in 0..cols {
            gu[i][j] = (0..n).map(|k| gram[i][k] * u[k][j]).sum();
        }
    }
    (0..cols)
        .map(|a| (0..cols).map(|b| (0..n).map(|k| u[k][a] * gu[k][b]).sum()).collect())
        .collect()
}

fn split_recursive(gram: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
    let n = gram.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    let v = find_norm_minus_one(gram)?.ok_or_else(|| {
        Error::NotDiagonalizable(format!(
            "no vector of square -1 in the rank {n} form (exhaustive search)"
        ))
    })?;
    if n == 1 {
        return Ok(vec![v]);
    }
    // Kernel of w ↦ Q(v, w) = (Q v)·w.
    let functional: Vec<i64> = (0..n).map(|i| (0..n).map(|j| gram[i][j] * v[j]).sum()).collect();
    let kernel = integer_kernel(&functional)?;
    let sub = congruence(gram, &kernel);
    let sub_u = split_recursive(&sub)?;
    // U = [v | K · U']
    let mut u = vec![vec![0i64; n]; n];
    for i in 0..n {
        u[i][0] = v[i];
        for j in 0..n - 1 {
            u[i][j + 1] = (0..n - 1).map(|k| kernel[i][k] * sub_u[k][j]).sum();
        }
    }
    Ok(u)
}

/// Z-basis (as columns of an `n × (n-1)` matrix) of the kernel of a primitive functional.
fn integer_kernel(functional: &[i64]) -> Result<Vec<Vec<i64>>> {
    let n = functional.len();
    let mut u = functional.to_vec();
    let mut m: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    loop {
        let nonzero: Vec<usize> = (0..n).filter(|&i| u[i] != 0).collect();
        if nonzero.len() <= 1 {
            break;
        }
        let p = *nonzero.iter().min_by_key(|&&i| u[i].abs()).expect("non-empty");
        for &j in &nonzero {
            if j == p {
                continue;
            }
            let f = u[j] / u[p];
            u[j] -= f * u[p];
            for row in m.iter_mut() {
                row[j] -= f * row[p];
            }
        }
    }
    let pivot = (0..n).find(|&i| u[i] != 0).ok_or_else(|| Error::Internal("zero functional".into()))?;
    if u[pivot].abs() != 1 {
        return Err(Error::Internal("functional is not primitive".into()));
    }
    Ok(m.into_iter()
        .map(|row| row.into_iter().enumerate().filter(|&(j, _)| j != pivot).map(|(_, x)| x).collect())
        .collect())
}

/// Exhaustive search for `v` with `vᵀ Q v = -1` in a negative-definite form.
fn find_norm_minus_one(gram: &[Vec<i64>]) -> Result<Option<Vec<i64>>> {
    let n = gram.len();
    let a: QMatrix = gram.iter().map(|row| row.iter().map(|&x| q(-x)).collect()).collect();
    let target = Q::one();

    let inv = inverse(&a)?;
    let box_bound: Vec<BigInt> = (0..n).map(|i| floor_sqrt(&(&inv[i][i] * &target))).collect();

    // Quadratic completion: vᵀAv = Σ_i d_i (v_i + Σ_{j>i} mu_ij v_j)².
    let mut qm = a.clone();
    for i in 0..n {
        for j in i + 1..n {
            qm[j][i] = qm[i][j].clone();
            qm[i][j] = &qm[i][j] / &qm[i][i];
        }
        for k in i + 1..n {
            for l in k..n {
                let sub = &qm[k][i] * &qm[i][l];
                qm[k][l] -= sub;
            }
        }
    }

    let mut x = vec![BigInt::zero(); n];
    let found = search(n, n, &qm, &box_bound, &target, &mut x, &Q::zero());
    Ok(found.map(|v| v.iter().map(|c| c.to_i64().expect("bounded coordinate")).collect()))
}

fn search(
    n: usize,
    level: usize,
    qm: &QMatrix,
    box_bound: &[BigInt],
    target: &Q,
    x: &mut Vec<BigInt>,
    used: &Q,
) -> Option<Vec<BigInt>> {
    if level == 0 {
        return (used == target).then(|| x.clone());
    }
    let i = level - 1;
    let center: Q = (i + 1..n).fold(Q::zero(), |acc, j| acc + &qm[i][j] * Q::from_integer(x[j].clone()));
    let remaining = (target - used) / &qm[i][i];
    if remaining.is_negative() {
        return None;
    }
    let fits = |xi: &BigInt| {
        let t = Q::from_integer(xi.clone()) + &center;
        &t * &t <= remaining && xi.abs() <= box_bound[i]
    };
    // Candidates: outward from floor(-center), both directions.
    let start = (-&center).floor().to_integer();
    let mut candidates = Vec::new();
    let mut lo = start.clone();
    while fits(&lo) {
        candidates.push(lo.clone());
        lo -= 1;
    }
    let mut hi = start + 1;
    while fits(&hi) {
        candidates.push(hi.clone());
        hi += 1;
    }
    // Prefer small coordinates, non-negative first, for stable output.
    candidates.sort_by(|a, b| a.abs().cmp(&b.abs()).then(b.cmp(a)));
    for xi in candidates {
        let t = Q::from_integer(xi.clone()) + &center;
        let next_used = used + &qm[i][i] * &t * &t;
        x[i] = xi;
        if let Some(v) = search(n, level - 1, qm, box_bound, target, x, &next_used) {
            return Some(v);
        }
    }
    x[i] = BigInt::zero();
    None
}
