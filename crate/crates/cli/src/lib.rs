//! Command-line front end and local play service for the Angel lab.

pub mod render;
pub mod server;
pub mod setup;
pub mod suites;
