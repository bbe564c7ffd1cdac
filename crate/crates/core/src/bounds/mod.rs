//! Exact counting bounds and order arithmetic.

pub mod counting;
pub mod expr;
pub mod orders;
pub mod ppart;
pub mod zsigmondy;

pub use counting::{
    countinv_check, field_aut_gamma_bound, psl2_bounds, sz_countinv_chain, BoundStatus, CountingScenario,
    CountinvOutcome, FieldAutBound, FieldAutFamily, Psl2Bounds, Psl2Case, ScenarioSubgroup,
};
pub use expr::Expr;
pub use orders::{matrix_group_order, order_poly_eval, order_polynomial, OrderPolynomial};
pub use ppart::{load_table, load_tables, PPartRow, PPartTable, RowCheck, RowStatus};
pub use zsigmondy::{p_part, primitive_prime_divisors, zsigmondy_ppd};
