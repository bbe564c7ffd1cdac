//! Permutations and permutation groups.

mod group;
pub mod named;
mod permutation;

pub use group::{ConjClass, PermGroup};
pub use permutation::{parse_cycles, parse_cycles_auto, Permutation};

/// Largest supported degree.
pub const DEGREE_CAP: usize = 4096;
/// Largest conjugacy class that will be listed explicitly.
pub const CLASS_CAP: usize = 1_000_000;
