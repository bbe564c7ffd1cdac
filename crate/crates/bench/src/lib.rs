//! Fixtures shared by the benchmarks in `benches/`.

use nonsolv_core::ffmat::{classical_group, CatalogGroup};
use nonsolv_core::perm::named::symmetric;
use nonsolv_core::{PermGroup, Permutation};

/// A catalog group with its permutation action, panicking on a bad catalog.
pub fn catalog_group(family: &str, d: usize, q: usize) -> CatalogGroup {
    classical_group(family, d, q).expect("catalog entry").realize().expect("realizable")
}

/// `S_n` together with the transposition `(1,2)`.
pub fn symmetric_with_transposition(n: usize) -> (PermGroup, Permutation) {
    let g = symmetric(n);
    let x = nonsolv_core::perm::parse_cycles("(1,2)", n).expect("valid");
    (g, x)
}
