//! Exact computation of curvature invariants (Yamabe invariant, `L²` scalar and
//! Ricci invariants) and Einstein obstructions for connected sums of 4-manifolds.
//!
//! Values are exact: every number is `q · π^p · √r` with rational `q`. Rules fire
//! only when their hypotheses are provably met; each conclusion carries a
//! [`theorems::Certificate`] listing the checks behind it.

pub mod catalog;
pub mod error;
pub mod exact;
pub mod lattice;
pub mod surfaces;
pub mod theorems;
pub mod topo;

pub use catalog::{Catalog, DissolveAnnotation};
pub use error::{Error, Result};
pub use exact::{ExactInterval, ExactReal};
pub use lattice::{IntersectionLattice, PeriodSubspace};
pub use surfaces::{double_cover_cp2, hypersurface_cp3, standard_catalog, CatalogEntry, Construction};
pub use theorems::{evaluate_expression, EvaluationOptions, InvariantReport};
pub use topo::{
    connected_sum, reverse_orientation, two_chi_plus_three_tau, BettiData, FlagKind, Flags, ManifoldBlock,
    SumExpression, Summand, Tri,
};
