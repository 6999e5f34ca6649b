//! Sign-pattern monopole classes `Σ ±c₁(X_j) + Σ ±E_i` and the `(a⁺)²` optimum.

use num_traits::Signed;
use serde::Serialize;

use super::linalg::{to_q_vector, Q};
use super::{selfdual_project, IntersectionLattice, PeriodSubspace};
use crate::error::{Error, Result};

/// Default cap on the number of sign patterns enumerated.
pub const DEFAULT_PATTERN_LIMIT: u128 = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AmbientMode {
    /// One axis carrying `α = Σ c₁(X_j)` with square `Σ c₁²`.
    Collapsed,
    /// One axis per surface block with square `c₁²(X_j)`.
    PerBlock,
}

/// The model lattice of `[#X_j] # N`: surface axes followed by the diagonal
/// generators `E_1..E_k` of `H²(N)` with `E_i² = -1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ambient {
    lattice: IntersectionLattice,
    mode: AmbientMode,
    surface_classes: Vec<Vec<i64>>,
    exceptional: Vec<Vec<i64>>,
}

fn check_c1_squares(c1_squares: &[i64]) -> Result<()> {
    if let Some(c) = c1_squares.iter().find(|&&c| c < 0) {
        return Err(Error::UnsupportedParameter(format!(
            "negative c1^2 = {c} cannot be modelled by a diagonal block"
        )));
    }
    Ok(())
}

fn unit(n: usize, i: usize) -> Vec<i64> {
    (0..n).map(|j| i64::from(i == j)).collect()
}

/// `diag(Σ c₁²) ⊕ diag(-1, …, -1)` with `k` trailing entries.
pub fn build_ambient(c1_squares: &[i64], k: usize) -> Result<IntersectionLattice> {
    Ok(Ambient::collapsed(c1_squares, k)?.lattice)
}

impl Ambient {
    pub fn collapsed(c1_squares: &[i64], k: usize) -> Result<Self> {
        check_c1_squares(c1_squares)?;
        let total: i64 = c1_squares.iter().sum();
        let mut diag = vec![total];
        diag.extend(std::iter::repeat(-1).take(k));
        let n = diag.len();
        // A surface class of square zero is modelled as the zero class.
        let alpha = if total > 0 { unit(n, 0) } else { vec![0; n] };
        Ok(Self {
            lattice: IntersectionLattice::diagonal(&diag),
            mode: AmbientMode::Collapsed,
            surface_classes: vec![alpha],
            exceptional: (1..n).map(|i| unit(n, i)).collect(),
        })
    }

    pub fn per_block(c1_squares: &[i64], k: usize) -> Result<Self> {
        check_c1_squares(c1_squares)?;
        let m = c1_squares.len();
        let mut diag = c1_squares.to_vec();
        diag.extend(std::iter::repeat(-1).take(k));
        let n = diag.len();
        Ok(Self {
            lattice: IntersectionLattice::diagonal(&diag),
            mode: AmbientMode::PerBlock,
            surface_classes: (0..m)
                .map(|j| if c1_squares[j] > 0 { unit(n, j) } else { vec![0; n] })
                .collect(),
            exceptional: (m..n).map(|i| unit(n, i)).collect(),
        })
    }

    pub fn lattice(&self) -> &IntersectionLattice {
        &self.lattice
    }

    pub fn mode(&self) -> AmbientMode {
        self.mode
    }

    pub fn k(&self) -> usize {
        self.exceptional.len()
    }

    /// `α = Σ c₁(X_j)`.
    pub fn alpha(&self) -> Vec<i64> {
        let n = self.lattice.rank();
        let mut a = vec![0; n];
        for c in &self.surface_classes {
            for (x, y) in a.iter_mut().zip(c) {
                *x += y;
            }
        }
        a
    }

    pub fn pattern_count(&self) -> u128 {
        let bits = self.surface_classes.len() + self.exceptional.len();
        if bits >= 128 {
            u128::MAX
        } else {
            1u128 << bits
        }
    }

    fn class_for(&self, pattern: SignPattern) -> MonopoleClass {
        let n = self.lattice.rank();
        let mut coords = vec![0i64; n];
        let gens = self.surface_classes.iter().zip(&pattern.surface);
        let gens = gens.chain(self.exceptional.iter().zip(&pattern.exceptional));
        for (g, &s) in gens {
            for (x, y) in coords.iter_mut().zip(g) {
                *x += i64::from(s) * y;
            }
        }
        MonopoleClass { coords, sign_pattern: pattern }
    }
}

/// Signs `s_j` for the surface classes and `t_i` for the generators `E_i`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SignPattern {
    pub surface: Vec<i8>,
    pub exceptional: Vec<i8>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct MonopoleClass {
    pub coords: Vec<i64>,
    pub sign_pattern: SignPattern,
}

fn signs(bits: u128, len: usize, offset: usize) -> Vec<i8> {
    (0..len).map(|i| if bits >> (offset + i) & 1 == 0 { 1 } else { -1 }).collect()
}

/// Every sign pattern, deduplicated by class coordinates (first pattern kept).
pub fn enumerate_monopole_classes(ambient: &Ambient, limit: u128) -> Result<Vec<MonopoleClass>> {
    let count = ambient.pattern_count();
    if count > limit {
        return Err(Error::SizeLimit { count, limit });
    }
    let m = ambient.surface_classes.len();
    let k = ambient.exceptional.len();
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for bits in 0..count {
        let pattern = SignPattern { surface: signs(bits, m, 0), exceptional: signs(bits, k, m) };
        let class = ambient.class_for(pattern);
        if seen.insert(class.coords.clone()) {
            out.push(class);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Optimum {
    /// Brute-force maximizer; ties go to the lexicographically largest sign pattern.
    pub best: MonopoleClass,
    pub value: Q,
    /// The class chosen by the greedy rule: all surface signs `+`, then
    /// `t_i = +1` iff `Q(α⁺, E_i) >= 0`.
    pub greedy: MonopoleClass,
    pub greedy_value: Q,
    /// `Q(α, α)`, the guaranteed floor.
    pub alpha_squared: Q,
}

pub fn maximize_aplus_squared(
    ambient: &Ambient,
    period: &PeriodSubspace,
    classes: &[MonopoleClass],
) -> Result<Optimum> {
    let lattice = &ambient.lattice;
    let mut best: Option<(Q, &MonopoleClass)> = None;
    for class in classes {
        let v = selfdual_project(lattice, period, &to_q_vector(&class.coords))?.a_plus_sq;
        let better = match &best {
            None => true,
            Some((bv, bc)) => v > *bv || (v == *bv && class.sign_pattern > bc.sign_pattern),
        };
        if better {
            best = Some((v, class));
        }
    }
    let (value, best) = best.ok_or_else(|| Error::Internal("no monopole classes".into()))?;

    let alpha = ambient.alpha();
    let alpha_q = to_q_vector(&alpha);
    let alpha_plus = selfdual_project(lattice, period, &alpha_q)?.a_plus;
    let exceptional = ambient
        .exceptional
        .iter()
        .map(|e| {
            let pairing = lattice.pair(&alpha_plus, &to_q_vector(e));
            if pairing.is_negative() {
                -1
            } else {
                1
            }
        })
        .collect();
    let pattern = SignPattern { surface: vec![1; ambient.surface_classes.len()], exceptional };
    let greedy = ambient.class_for(pattern);
    let greedy_value = selfdual_project(lattice, period, &to_q_vector(&greedy.coords))?.a_plus_sq;
    let alpha_squared = lattice.pair(&alpha_q, &alpha_q);

    Ok(Optimum { best: best.clone(), value, greedy, greedy_value, alpha_squared })
}
