//! Exact character-table arithmetic: cyclotomic values, class-algebra
//! structure constants and Thompson's coprime-triple criterion.

pub mod corpus;
pub mod cyclotomic;
pub mod dixon;
mod table;

pub use cyclotomic::{CycField, CycInt};
pub use dixon::{character_table, ClassStructure};
pub use table::{load_named, BigNum, CharacterTable, ClassDoc, ClassInfo, CoprimeTriple, CycDoc, TableDoc};
