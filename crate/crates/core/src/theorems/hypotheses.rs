//! Hypothesis checks on the quadruple `X_1..X_4` that every connected-sum rule quantifies over.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::topo::{ManifoldBlock, Tri};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Unknown,
}

impl CheckStatus {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        }
    }

    pub fn from_flag(t: Tri) -> Self {
        match t {
            Tri::Yes => CheckStatus::Pass,
            Tri::No => CheckStatus::Fail,
            Tri::Unknown => CheckStatus::Unknown,
        }
    }
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::Unknown => "unknown",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HypothesisCheck {
    pub rule_id: String,
    pub condition: String,
    pub status: CheckStatus,
    pub evidence: String,
}

impl HypothesisCheck {
    pub fn new(
        rule_id: impl Into<String>,
        condition: impl Into<String>,
        status: CheckStatus,
        evidence: impl Into<String>,
    ) -> Self {
        Self {
            rule_id: rule_id.into(),
            condition: condition.into(),
            status,
            evidence: evidence.into(),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Pass
    }
}

/// Which per-block hypotheses a rule needs on top of the arithmetic ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HypothesisFamily {
    /// Minimal complex surfaces (exact Yamabe, scalar and Ricci values).
    MinimalSurfaces,
    /// Almost-complex with non-zero mod-2 Seiberg-Witten invariant (bounds and obstructions).
    SeibergWitten,
}

/// Four blocks (repetition allowed); the first `prefix_m` are the summands of the sum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuadrupleWitness {
    blocks: Vec<ManifoldBlock>,
    prefix_m: usize,
}

impl QuadrupleWitness {
    pub fn new(blocks: [ManifoldBlock; 4], prefix_m: usize) -> Result<Self> {
        if !(1..=4).contains(&prefix_m) {
            return Err(Error::OutOfRange(format!("witness prefix m = {prefix_m}")));
        }
        Ok(Self { blocks: blocks.into(), prefix_m })
    }

    pub fn blocks(&self) -> &[ManifoldBlock] {
        &self.blocks
    }

    pub fn prefix_m(&self) -> usize {
        self.prefix_m
    }

    pub fn prefix(&self) -> &[ManifoldBlock] {
        &self.blocks[..self.prefix_m]
    }

    pub fn names(&self) -> Vec<String> {
        self.blocks.iter().map(|b| b.name.clone()).collect()
    }

    /// `Σ_{j≤m} c₁²(X_j)`, when every prefix block records `c₁²`.
    pub fn prefix_c1_sum(&self) -> Option<i64> {
        self.prefix().iter().map(|b| b.c1_squared).sum()
    }
}

const QUADRUPLE: &str = "quadruple";

/// `b₁ = 0`, `b₊ ≡ 3 (mod 4)` for each block, `Σ b₊ ≡ 4 (mod 8)`, plus the family flags.
pub fn check_quadruple(w: &QuadrupleWitness, family: HypothesisFamily) -> Vec<HypothesisCheck> {
    let mut checks = Vec::new();
    for (j, b) in w.blocks.iter().enumerate() {
        let idx = j + 1;
        checks.push(HypothesisCheck::new(
            QUADRUPLE,
            format!("b1(X{idx}) = 0"),
            CheckStatus::from_bool(b.betti.b1 == 0),
            format!("{}: b1 = {}", b.name, b.betti.b1),
        ));
        checks.push(HypothesisCheck::new(
            QUADRUPLE,
            format!("b+(X{idx}) = 3 mod 4"),
            CheckStatus::from_bool(b.betti.b_plus % 4 == 3),
            format!("{}: b+ = {} = {} mod 4", b.name, b.betti.b_plus, b.betti.b_plus % 4),
        ));
    }
    let total: u32 = w.blocks.iter().map(|b| b.betti.b_plus).sum();
    checks.push(HypothesisCheck::new(
        QUADRUPLE,
        "sum of b+(X1..X4) = 4 mod 8",
        CheckStatus::from_bool(total % 8 == 4),
        format!("sum b+ = {total} = {} mod 8", total % 8),
    ));
    for (j, b) in w.blocks.iter().enumerate() {
        let idx = j + 1;
        match family {
            HypothesisFamily::MinimalSurfaces => {
                checks.push(HypothesisCheck::new(
                    QUADRUPLE,
                    format!("X{idx} is a minimal complex surface"),
                    CheckStatus::from_flag(b.flags.minimal_complex_surface),
                    format!("{}: minimal_complex_surface = {}", b.name, b.flags.minimal_complex_surface),
                ));
            }
            HypothesisFamily::SeibergWitten => {
                checks.push(HypothesisCheck::new(
                    QUADRUPLE,
                    format!("X{idx} has non-zero mod-2 Seiberg-Witten invariant"),
                    CheckStatus::from_flag(b.flags.sw_mod2_nonzero),
                    format!("{}: sw_mod2_nonzero = {}", b.name, b.flags.sw_mod2_nonzero),
                ));
            }
        }
        checks.push(HypothesisCheck::new(
            QUADRUPLE,
            format!("X{idx} carries an almost-complex structure with recorded c1^2"),
            CheckStatus::from_bool(b.c1_squared.is_some()),
            match b.c1_squared {
                Some(c) => format!("{}: c1^2 = {c}", b.name),
                None => format!("{}: no c1^2 recorded", b.name),
            },
        ));
    }
    checks
}

/// Pads the surface summands of an expression to a quadruple satisfying
/// `Σ b₊ ≡ 4 (mod 8)`, trying `pool` blocks in order for each open slot.
pub fn suggest_witness(surfaces: &[ManifoldBlock], pool: &[ManifoldBlock]) -> Option<[ManifoldBlock; 4]> {
    if surfaces.is_empty() || surfaces.len() > 4 {
        return None;
    }
    let ok_block = |b: &ManifoldBlock| b.betti.b1 == 0 && b.betti.b_plus % 4 == 3;
    if !surfaces.iter().all(ok_block) {
        return None;
    }
    let pool: Vec<&ManifoldBlock> = pool.iter().filter(|b| ok_block(b)).collect();
    let open = 4 - surfaces.len();
    let mut choice = vec![0usize; open];
    loop {
        let total: u32 = surfaces.iter().map(|b| b.betti.b_plus).sum::<u32>()
            + choice.iter().map(|&i| pool[i].betti.b_plus).sum::<u32>();
        if total % 8 == 4 {
            let mut blocks: Vec<ManifoldBlock> = surfaces.to_vec();
            blocks.extend(choice.iter().map(|&i| pool[i].clone()));
            return blocks.try_into().ok();
        }
        // Next combination, odometer style.
        let mut pos = 0;
        loop {
            if pos == open || pool.is_empty() {
                return None;
            }
            choice[pos] += 1;
            if choice[pos] < pool.len() {
                break;
            }
            choice[pos] = 0;
            pos += 1;
        }
    }
}
