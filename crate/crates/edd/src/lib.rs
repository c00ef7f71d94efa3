//! File formats, dataset loaders, experiment sweeps and the `edd`
//! command-line tool, on top of [`edd_core`].

pub mod algo;
pub mod bench;
pub mod cli;
pub mod datasets;
mod error;
pub mod format;
pub mod lp;

pub use algo::Algorithm;
pub use edd_core::{generate, GeneratorConfig};
pub use error::{Error, Result};
