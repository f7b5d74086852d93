//! File formats, the `strlogic` command line, and the acceptance runner
//! built on `strlogic-core`.

pub mod acceptance;
pub mod cli;
pub mod formats;
