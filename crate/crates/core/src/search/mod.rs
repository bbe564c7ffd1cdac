//! Searches for nonsolvable subgroups generated by conjugates of an element
//! (or by the element and an involution), randomized or exhaustive.

mod certificate;
mod select;
mod sweep;
mod task;

pub use certificate::{nonsolvable_certificate, Certificate, THOMPSON_DRAWS};
pub use select::{root_elements, select_element, split_classes, ElementSpec, Property, Selected};
pub use sweep::{exhaustive_all_solvable, symmetric_involution_census, Census, ClassCensus, OrderCount, SweepOptions};
pub use task::{find_nonsolvable, random_involution, Mode, SearchTask, Witness, DEFAULT_BUDGET, DEFAULT_SEED};
