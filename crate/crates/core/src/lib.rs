//! Finite-group computations: permutation groups with stabilizer chains,
//! classical matrix groups over small fields, character-table arithmetic,
//! exact counting bounds, and searches for nonsolvable generation.

pub mod bigser;
pub mod bounds;
pub mod chartab;
pub mod error;
pub mod ffmat;
pub mod perm;
pub mod search;

pub use error::{Error, Result};
pub use perm::{ConjClass, PermGroup, Permutation};

use std::path::PathBuf;

/// Directory holding the catalog, character tables and scenario files:
/// `$NONSOLV_DATA` if set, else the workspace `data/` directory.
pub fn data_dir() -> PathBuf {
    match std::env::var_os("NONSOLV_DATA") {
        Some(p) => PathBuf::from(p),
        None => PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/../../data")),
    }
}
