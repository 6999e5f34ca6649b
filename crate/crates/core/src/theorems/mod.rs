//! The rule registry: hypothesis checks, closed-form conclusions and certificates.

pub mod certificate;
pub mod engine;
pub mod hypotheses;
pub mod rules;
pub mod split;

pub use certificate::{anchor_for, rule, Anchor, Certificate, Conclusion, Quantity};
pub use engine::{
    evaluate_expression, einstein_obstruction, hitchin_thorpe, i_r, i_s, spin_family_obstruction, yamabe,
    BettiSummary, Bound, EinsteinVerdict, EvaluationOptions, InvariantReport, InvariantValue, Invariants,
    RuleError, WitnessEcho,
};
pub use hypotheses::{
    check_quadruple, suggest_witness, CheckStatus, HypothesisCheck, HypothesisFamily, QuadrupleWitness,
};
pub use rules::{
    dissolve_rewrite, kobayashi_interval, scalar_from_yamabe, scalar_l2_bound, weyl_bound, yamabe_from_scalar,
};
pub use split::{split_expression, Split};
