//! File formats, reports and the command-line driver for `torika-core`.

pub mod datum;
pub mod run;

pub use datum::{load_datum, LoadError, LoadOptions, Loaded, ToricDatum};
pub use run::{run_files, Command, FileOutcome, Format, RunOptions, Status};
