//! File formats, expression parsing, SVG plots and the command line for
//! `iwahori-core`.

pub mod cli;
pub mod datum;
pub mod error;
pub mod expr;
pub mod format;
pub mod plot;
pub mod series;

pub use error::{CliError, ParseError};
