//! File formats, operation scripts and the `prefagent` command-line tool
//! for [`prefagent_core`].

pub mod cli;
pub mod error;
pub mod format;
pub mod script;
pub mod session;

pub use error::Error;
