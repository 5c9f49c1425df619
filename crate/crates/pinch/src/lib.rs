//! Configuration files, parameter sweeps and table output on top of `pinch-core`.

pub mod config;
pub mod error;
pub mod parallel;
pub mod selftest;
pub mod sweep;
pub mod table;

pub use config::{load_config, parse_config, RunConfig};
pub use error::{Error, Result};
pub use sweep::{run_sweep, Axis, Metric, Quantity, SweepOutput, SweepSpec};
pub use table::{emit_all, emit_table, EmitStatus, OutputTable};
