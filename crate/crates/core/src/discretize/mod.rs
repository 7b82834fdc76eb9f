//! Reduction of a majorized pair of operators to majorized profiles.

pub mod pair;
pub mod params;
pub mod partition;

pub use pair::{discretize_pair, residual_certificate, split_flags, Balance, DiscretizationResult, FlagSplit, Side, SlackEntry};
pub use params::{cell_means, choose_n, choose_t, choose_t_parts, upper_coeffs};
pub use partition::{build_partition, build_partition_band, count_atoms, Interval, IntervalCount, IntervalPartition};
