//! Majorization decisions for step operators, profiles and finite vectors.

pub mod dilation;
pub mod dominance;
pub mod kadison;
pub mod profile;
pub mod vector;

pub use dilation::{double_dilate, truncate_balanced, truncate_balanced_profiles, Balanced};
pub use dominance::{first_violation, majorizes, pl_dominates, submajorizes};
pub use kadison::{kadison_check, KadisonReport};
pub use profile::{
    prof_lower, prof_lower_fn, prof_majorizes, prof_submajorizes, prof_upper, prof_upper_fn, Profile, ProfileTag,
    SeqPartialSums,
};
pub use vector::{partial_sums, sorted_desc, vec_majorizes, vec_submajorizes};
