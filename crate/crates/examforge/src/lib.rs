//! File formats, batch grading and the command-line front end for
//! [`examforge_core`].

pub mod batch;
pub mod cli;
pub mod error;
pub mod formats;

pub use error::{Error, Result};
