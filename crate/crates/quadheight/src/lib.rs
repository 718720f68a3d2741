//! Range scans, CSV output, checkpointing and the `quadheight` command line
//! on top of [`quadheight_core`].

pub mod census;
pub mod checkpoint;
pub mod cli;
mod error;
pub mod scan;
pub mod table;
pub mod verify;

pub use error::{Error, Result};
