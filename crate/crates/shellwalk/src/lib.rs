//! IO, report formats, parallel drivers and the command-line front end for
//! [`shellwalk_core`].

pub mod cli;
pub mod error;
pub mod io;
pub mod manifest;
pub mod parallel;
pub mod report;

pub use error::{Error, Result};
pub use io::{load_edge_list, IngestOptions, LoadedGraph};
pub use parallel::Parallel;
