//! Greedy descent for minimizing a supermodular, nonincreasing set function
//! over the circuits of a comatroid, with exact tools to check what can and
//! cannot be claimed about it.
//!
//! * [`setfn`]: tabulated set functions, removal marginals, structural
//!   validation, steepness and the claimed ratio bound.
//! * [`comatroid`]: dependence families, circuits, girth, removability and
//!   exchange witnesses; construction from matroid duals.
//! * [`greedy`]: the descent itself, with explicit tie policies and full
//!   trajectory enumeration.
//! * [`audit`]: brute-force optimum, ratio reports and per-step inequality
//!   checks.
//! * [`gen`] and [`search`]: instance generators and seeded counterexample
//!   search.
//! * [`format`]: instance and report files.
//!
//! All arithmetic is exact ([`Rational`]).

pub mod audit;
pub mod comatroid;
pub mod error;
pub mod format;
pub mod gen;
pub mod greedy;
pub mod rational;
pub mod search;
pub mod setfn;
pub mod subset;

pub use audit::{
    audit_instance, brute_force_opt, check_inequality1, check_inequality2, ratio_report, BoundReport, InstanceAudit,
    OptResult, StepAudit,
};
pub use comatroid::{from_matroid_dual, validate_comatroid, Comatroid, ComatroidViolation, MatroidKind, MatroidSpec};
pub use error::{Error, Result};
pub use format::{emit_instance, parse_instance, InstanceFile, ReportFile};
pub use gen::{paper_instance, random_instance, ComatroidKind, FunctionKind, InstanceKind};
pub use greedy::{enumerate_traces, greedy_descent, Descent, GreedyStep, GreedyTrace, TiePolicy};
pub use rational::{Extended, Rational};
pub use search::{search_counterexamples, Finding, SearchConfig};
pub use setfn::{theorem1_bound, FunctionVerdict, SetFunction, SteepnessReport};
pub use subset::{Element, GroundSet, Subset};
