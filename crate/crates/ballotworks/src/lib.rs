//! Command-line front end and file formats for the ballotworks tallies.

pub mod cli;
pub mod io;
pub mod render;
