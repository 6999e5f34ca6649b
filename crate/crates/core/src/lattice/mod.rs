//! Intersection lattices, period subspaces and monopole-class optimization.

mod diagonalize;
pub mod linalg;
mod monopole;

use std::fmt::Write as _;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use linalg::{inertia, is_positive_definite, mat_vec, solve, to_q_matrix, QMatrix, Q};

pub use diagonalize::{congruence, diagonalize_definite, DEFAULT_DIAGONALIZE_RANK};
pub use monopole::{
    build_ambient, enumerate_monopole_classes, maximize_aplus_squared, Ambient, AmbientMode,
    MonopoleClass, Optimum, SignPattern, DEFAULT_PATTERN_LIMIT,
};

/// `H²` modulo torsion with its integral intersection form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct IntersectionLattice {
    gram: Vec<Vec<i64>>,
}

impl IntersectionLattice {
    pub fn new(gram: Vec<Vec<i64>>) -> Result<Self> {
        let n = gram.len();
        if gram.iter().any(|row| row.len() != n) {
            return Err(Error::Dimension("Gram matrix is not square".into()));
        }
        for i in 0..n {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::Dimension(format!("Gram matrix not symmetric at ({i},{j})")));
                }
            }
        }
        Ok(Self { gram })
    }

    pub fn diagonal(entries: &[i64]) -> Self {
        let n = entries.len();
        let gram = (0..n)
            .map(|i| (0..n).map(|j| if i == j { entries[i] } else { 0 }).collect())
            .collect();
        Self { gram }
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub(crate) fn gram_q(&self) -> QMatrix {
        to_q_matrix(&self.gram)
    }

    pub fn det(&self) -> Q {
        linalg::det(&self.gram_q())
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().abs() == linalg::q(1)
    }

    /// `(b₊, b₋, nullity)`.
    pub fn inertia(&self) -> (usize, usize, usize) {
        inertia(&self.gram_q())
    }

    pub fn b_plus(&self) -> usize {
        self.inertia().0
    }

    /// `Q(a, b)` for rational vectors.
    pub fn pair(&self, a: &[Q], b: &[Q]) -> Q {
        let qb = mat_vec(&self.gram_q(), b);
        linalg::dot(a, &qb)
    }

    pub fn pair_int(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut total = 0;
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                total += ai * self.gram[i][j] * bj;
            }
        }
        total
    }

    /// Plain-text integer grid, one row per line.
    pub fn to_grid(&self) -> String {
        let mut out = String::new();
        for row in &self.gram {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            let _ = writeln!(out, "{}", cells.join(" "));
        }
        out
    }

    /// Parses a whitespace-separated integer grid.
    pub fn parse_grid(text: &str) -> Result<Self> {
        let mut gram = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let row = line
                .split_whitespace()
                .map(|t| t.parse::<i64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| Error::Dimension(format!("line {}: {e}", i + 1)))?;
            gram.push(row);
        }
        Self::new(gram)
    }
}

/// A positive-definite subspace standing in for the self-dual harmonic forms
/// of some metric. Columns of `basis` span it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodSubspace {
    basis: Vec<Vec<Q>>,
    gram: QMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Projection {
    pub a_plus: Vec<Q>,
    pub a_plus_sq: Q,
}

impl PeriodSubspace {
    /// `columns` are the spanning vectors. Their number must equal `b₊(L)` and the
    /// restricted form must be positive definite.
    pub fn new(lattice: &IntersectionLattice, columns: Vec<Vec<Q>>) -> Result<Self> {
        let n = lattice.rank();
        if columns.iter().any(|c| c.len() != n) {
            return Err(Error::Dimension("period vector length differs from lattice rank".into()));
        }
        let b_plus = lattice.b_plus();
        if columns.len() != b_plus {
            return Err(Error::InvalidPeriod(format!(
                "dimension {} differs from b+ = {b_plus}",
                columns.len()
            )));
        }
        let gram: QMatrix = columns
            .iter()
            .map(|u| columns.iter().map(|v| lattice.pair(u, v)).collect())
            .collect();
        if !is_positive_definite(&gram) {
            return Err(Error::InvalidPeriod("restricted form is not positive definite".into()));
        }
        Ok(Self { basis: columns, gram })
    }

    pub fn from_integer_columns(lattice: &IntersectionLattice, columns: &[Vec<i64>]) -> Result<Self> {
        Self::new(lattice, columns.iter().map(|c| linalg::to_q_vector(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Q>] {
        &self.basis
    }
}

/// Orthogonal projection of `a` onto the period subspace with respect to the
/// intersection form: solves `G x = Bᵀ Q a` with `G = Bᵀ Q B`.
pub fn selfdual_project(
    lattice: &IntersectionLattice,
    period: &PeriodSubspace,
    a: &[Q],
) -> Result<Projection> {
    let n = lattice.rank();
    if a.len() != n {
        return Err(Error::Dimension(format!("vector of length {} in rank {n} lattice", a.len())));
    }
    if period.dim() == 0 {
        return Ok(Projection { a_plus: vec![Q::zero(); n], a_plus_sq: Q::zero() });
    }
    let rhs: Vec<Q> = period.basis.iter().map(|b| lattice.pair(b, a)).collect();
    let x = solve(&period.gram, &rhs)?;
    let mut a_plus = vec![Q::zero(); n];
    for (coef, col) in x.iter().zip(&period.basis) {
        for (slot, v) in a_plus.iter_mut().zip(col) {
            *slot += coef * v;
        }
    }
    let a_plus_sq = linalg::dot(&x, &rhs);
    Ok(Projection { a_plus, a_plus_sq })
}
