//! Command-line front end for `cores-core`: b-file IO, the JSON output
//! envelope, SVG lattice diagrams and resource budgets.

pub mod bfile;
pub mod budget;
pub mod cli;
pub mod diagram;
pub mod output;

pub use cli::run;
pub use output::OutputEnvelope;
