//! Command line front end for sheaf-forge: input routing, the golden verification suite
//! and report emission.

pub mod commands;
pub mod golden;
pub mod report;
