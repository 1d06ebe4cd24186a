//! Driver for `nodal-core`: the `nodal` command line, the pinned
//! verification cases and the quartic search.

pub mod app;
pub mod kummer;
pub mod manifest;
pub mod scenarios;
