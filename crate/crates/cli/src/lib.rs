//! Scenario runner behind the `nonsolv` command.

pub mod cases;
pub mod groups;
pub mod report;
pub mod scenario;
