//! Finite fields, matrices over them, and classical groups.

pub mod action;
pub mod canonical;
pub mod field;
pub mod forms;
pub mod lemmas;
pub mod matrix;
pub mod poly;
pub mod sample;

pub use action::MatrixAction;
pub use canonical::{
    invariant_factors, is_pseudoreflection, is_reflection, is_transvection, unipotent_shape, InvariantFactors,
};
pub use field::{Elt, Field};
pub use forms::{Form, FormKind};
pub use matrix::FFMatrix;
pub use poly::Poly;
pub use sample::ProductReplacement;
pub mod builders;
pub mod catalog;

pub use catalog::{classical_group, Catalog, CatalogGroup, CatalogRecord, MatGroupSpec, PermActionKind};
