//! Atomic spectral model: operators, spectral scales and their integrals.

pub mod curve;
pub mod flag;
pub mod norms;
pub mod operator;
pub mod scale;

pub use curve::{lower_fn, upper_fn, PLFunction};
pub use flag::{flag_combine, flag_sub, refine, AlignedCell, FlaggedOperator};
pub use norms::{
    compact_parts, ess_bounds, in_nbhd, is_tau_compact, ks_norm, nbhd_from_ks_bound, spectral_pad, trace, trace_norm,
    NbhdCert,
};
pub use operator::{normalize, Ambient, Atom, StepOperator};
pub use scale::{lower_scale, singular_scale, upper_scale, Monotone, StepScale};
