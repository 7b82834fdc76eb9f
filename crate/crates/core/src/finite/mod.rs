//! Finite-dimensional constructions: Horn matrices, T-transform chains,
//! Birkhoff decompositions, contractive compressions and Ky Fan checks.

pub mod birkhoff;
pub mod contractive;
pub mod horn;
pub mod jacobi;
pub mod kyfan;
pub mod matrix;
pub mod repair;
pub mod ttransform;

pub use birkhoff::{birkhoff_decompose, BirkhoffDecomp};
pub use contractive::{compressed_diag_error, contractive_construct, contractive_plan, ContractiveOutcome, ContractivePlan};
pub use horn::{diag_error, diag_tolerance, horn_construct, horn_construct_detailed, horn_plan, GivensStep, HornOutcome, HornPlan};
pub use jacobi::{eigenvalues, largest_singular_value, symmetric_eigen, Eigen};
pub use kyfan::{kyfan_upper, pinch, schur_check};
pub use matrix::{Contraction, DenseMatrix, DoublyStochastic, SymMatrix};
pub use repair::closest_majorized;
pub use ttransform::{ttransform_chain, TChain, TStep};
