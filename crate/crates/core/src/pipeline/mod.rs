//! Composite operations: end-to-end approximation runs, hinge traces and
//! trace-class checks.

pub mod hinge;
pub mod run;

pub use hinge::{hinge_dominated, hinge_points, hinge_trace, l1_check, l1_weak_equiv, split_signed, HingeSide};
pub use run::{
    contractive_approximate, doubly_stochastic_report, orthogonality_check, sh_approximate, DiscretizationSummary,
    DsReport, FiniteStage, LedgerStep, MatrixStage, RunReport, TruncationSummary, Variant, FULL_DEFECT_LIMIT,
};
