use serde::Serialize;

use super::hypotheses::HypothesisCheck;
use crate::error::Result;
use crate::exact::{ExactInterval, ExactReal};

/// Rule identifiers. Stable strings: they appear in structured reports.
pub mod rule {
    pub const YAMABE_CATALOG: &str = "yamabe.catalog";
    pub const YAMABE_SUM: &str = "yamabe.connected_sum";
    pub const YAMABE_KOBAYASHI: &str = "yamabe.kobayashi";
    pub const YAMABE_FROM_SCALAR: &str = "yamabe.from_scalar";
    pub const SCALAR_SUM: &str = "scalar.connected_sum";
    pub const SCALAR_LOWER: &str = "scalar.monopole_lower_bound";
    pub const SCALAR_SUBADDITIVE: &str = "scalar.subadditivity";
    pub const SCALAR_MINIMAL_SURFACE: &str = "scalar.minimal_surface";
    pub const SCALAR_FROM_YAMABE: &str = "scalar.from_yamabe";
    pub const SCALAR_PSC: &str = "scalar.positive_scalar_curvature";
    pub const RICCI_SUM: &str = "ricci.connected_sum";
    pub const RICCI_LOWER: &str = "ricci.monopole_lower_bound";
    pub const RICCI_ASD_FAMILY: &str = "ricci.asd_family";
    pub const RICCI_TAUTOLOGICAL: &str = "ricci.tautological";
    pub const EINSTEIN_MONOPOLE: &str = "einstein.monopole_obstruction";
    pub const EINSTEIN_SPIN_FAMILY: &str = "einstein.spin_family";
    pub const EINSTEIN_HITCHIN_THORPE: &str = "einstein.hitchin_thorpe";
}

/// Which result a rule applies, stated as a formula.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Anchor {
    pub result: &'static str,
    pub statement: &'static str,
}

pub fn anchor_for(rule_id: &str) -> Anchor {
    let (result, statement) = match rule_id {
        rule::YAMABE_CATALOG => ("recorded Yamabe constant", "Y(M) = catalog value"),
        rule::YAMABE_SUM => (
            "Yamabe invariant of [#X_j] # N",
            "Y([#_{j<=m} X_j] # N) = -4 pi sqrt(2 sum_{j<=m} c1^2(X_j))",
        ),
        rule::YAMABE_KOBAYASHI => (
            "Kobayashi connected-sum estimate",
            "Y(S4) >= Y(k CP2 # l CP2bar) >= Y(CP2), so Y in [12 pi sqrt 2, 8 pi sqrt 6]",
        ),
        rule::YAMABE_FROM_SCALAR => (
            "Yamabe / scalar-curvature duality",
            "I_s(M) > 0 implies Y(M) = -sqrt(I_s(M))",
        ),
        rule::SCALAR_SUM => (
            "L2 scalar invariant of [#X_j] # N",
            "I_s([#_{j<=m} X_j] # N) = 32 pi^2 sum_{j<=m} c1^2(X_j)",
        ),
        rule::SCALAR_LOWER => (
            "monopole-class scalar curvature estimate",
            "int s^2 >= 32 pi^2 (a+)^2 with (a+)^2 >= sum c1^2(X_j), so I_s >= 32 pi^2 sum c1^2(X_j)",
        ),
        rule::SCALAR_SUBADDITIVE => (
            "Gromov-Lawson subadditivity",
            "I_s(X # Y) <= I_s(X) + I_s(Y)",
        ),
        rule::SCALAR_MINIMAL_SURFACE => (
            "scalar invariant of a minimal complex surface with b+ > 1",
            "I_s(X) = 32 pi^2 c1^2(X)",
        ),
        rule::SCALAR_FROM_YAMABE => (
            "Yamabe / scalar-curvature duality",
            "Y(M) <= 0 gives I_s(M) = Y(M)^2; Y(M) >= 0 gives I_s(M) = 0",
        ),
        rule::SCALAR_PSC => (
            "positive scalar curvature",
            "a metric with s >= 0 gives Y(M) >= 0 and hence I_s(M) = 0",
        ),
        rule::RICCI_SUM => (
            "L2 Ricci invariant of [#X_j] # N",
            "I_r([#_{j<=m} X_j] # N) = 8 pi^2 [4m - (2chi + 3tau)(N) + sum c1^2(X_j)]",
        ),
        rule::RICCI_LOWER => (
            "monopole-class Ricci estimate",
            "int |r|^2 >= 8 pi^2 [2 (a+)^2 - (2chi + 3tau)(M)] with (a+)^2 >= sum c1^2(X_j)",
        ),
        rule::RICCI_ASD_FAMILY => (
            "Ricci invariant over k CP2bar # l (S1 x S3)",
            "I_r([#X_j] # k CP2bar # l (S1xS3)) = 8 pi^2 [k + 4(l + m - 1) + sum c1^2(X_j)]",
        ),
        rule::RICCI_TAUTOLOGICAL => (
            "tautological Ricci / scalar inequality in dimension 4",
            "I_r(M) >= 4^{-1} I_s(M)",
        ),
        rule::EINSTEIN_MONOPOLE => (
            "Einstein obstruction from monopole classes",
            "no Einstein metric if 12(m-1) + (12 b1 + 3 b-)(N) >= sum_{j<=m} c1^2(X_j), m = 2, 3, 4",
        ),
        rule::EINSTEIN_SPIN_FAMILY => (
            "Einstein obstruction for X # n K3 # l (S1 x S3)",
            "no Einstein metric if n in {1,2,3} and l + n >= c1^2(X)/12",
        ),
        rule::EINSTEIN_HITCHIN_THORPE => (
            "Hitchin-Thorpe inequality",
            "an Einstein 4-manifold has (2chi + 3tau)(M) >= 0",
        ),
        _ => ("unregistered rule", ""),
    };
    Anchor { result, statement }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    Yamabe,
    IS,
    IR,
    Einstein,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Conclusion {
    Exact { quantity: Quantity, value: ExactReal },
    Interval { quantity: Quantity, interval: ExactInterval },
    LowerBound { quantity: Quantity, value: ExactReal },
    UpperBound { quantity: Quantity, value: ExactReal },
    Verdict { obstructed: bool, detail: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub rule_id: String,
    pub anchor: Anchor,
    pub checks: Vec<HypothesisCheck>,
    pub conclusion: Option<Conclusion>,
    pub notes: Vec<String>,
}

impl Certificate {
    /// Runs `conclude` only when every check passes, so a conclusion is present
    /// exactly when the hypotheses are met.
    pub fn assemble<F>(rule_id: &str, checks: Vec<HypothesisCheck>, conclude: F) -> Result<Self>
    where
        F: FnOnce() -> Result<Conclusion>,
    {
        let conclusion = if checks.iter().all(|c| c.passed()) { Some(conclude()?) } else { None };
        Ok(Self {
            rule_id: rule_id.to_string(),
            anchor: anchor_for(rule_id),
            checks,
            conclusion,
            notes: Vec::new(),
        })
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn fired(&self) -> bool {
        self.conclusion.is_some()
    }

    pub fn failing_checks(&self) -> impl Iterator<Item = &HypothesisCheck> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn exact_value(&self) -> Option<&ExactReal> {
        match &self.conclusion {
            Some(Conclusion::Exact { value, .. }) => Some(value),
            _ => None,
        }
    }

    pub fn verdict(&self) -> Option<bool> {
        match &self.conclusion {
            Some(Conclusion::Verdict { obstructed, .. }) => Some(*obstructed),
            _ => None,
        }
    }
}
