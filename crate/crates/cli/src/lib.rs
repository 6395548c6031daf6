//! Workspace persistence and the reproduction harness behind the `qaffine`
//! command.

pub mod scenarios;
pub mod workspace;

pub use scenarios::{catalog, find, Report, Scenario};
pub use workspace::{Config, Workspace};
