//! Sharp L1 bounds for the maximal operator on tree-structured probability
//! spaces.
//!
//! The library has four layers:
//!
//! - [`stepfn`]: exact calculus of piecewise-constant functions on `(0,1]` —
//!   integrals, decreasing rearrangements, running averages, and the
//!   log-weighted functional they integrate to.
//! - [`bellman`]: the closed-form sharp bounds for the integral of the
//!   maximal function under sup/integral/infimum constraints, and the
//!   symmetrized integral both reduce to.
//! - [`tree`]: a finite uniform tree model with the maximal operator, level
//!   conditioning, level-set machinery and the extremal constructions that
//!   approach the bounds.
//! - [`search`]: randomized sampling of the admissible class, a local
//!   maximizer of the functional, and an audit driver for every inequality
//!   the crate claims.
//!
//! Everything is deterministic: randomness flows from explicit seeds and
//! reductions use fixed association orders.

pub mod bellman;
pub mod error;
mod num;
pub mod search;
pub mod stepfn;
pub mod tree;

pub use bellman::{bound_full_space, bound_on_set, symmetrization_rhs, MonotoneMap, SetBoundQuery};
pub use error::{Error, Result};
pub use search::{
    audit_bounds, maximize_hardy_integral, sample_admissible, AuditConfig, AuditReport,
    SearchTrace, SuiteReport, TraceRecord,
};
pub use stepfn::{entropy_weight, extremizer_g0, AdmissibleTriple, StepFunction};
pub use tree::{
    extremal_large_set, extremal_small_set, integrate_over, sandwich_set, select_subfamily,
    staircase_extremizer, super_level, upper_quantile, LeafFunction, NodeId, NodeSet,
    SandwichResult, Tree,
};
