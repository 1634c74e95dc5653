//! File formats and the command line for `f2lab-core`.
//!
//! - [`certificate`]: the `key: value` certificate file.
//! - [`csv`]: bench output with fit summary comments.
//! - [`family`]: word lists, one per line.
//! - [`load`]: machine files and builtins.
//! - [`cli`]: the `f2lab` command.

pub mod certificate;
pub mod cli;
pub mod csv;
pub mod family;
pub mod load;
