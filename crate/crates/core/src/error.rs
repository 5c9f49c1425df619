use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("argument {x} outside the real domain of {function}")]
    Domain { function: &'static str, x: f64 },

    #[error("non-finite argument passed to {function}")]
    NonFinite { function: &'static str },

    #[error("invalid `{field}` = {value}: must satisfy {constraint}")]
    InvalidConfig {
        field: &'static str,
        value: f64,
        constraint: &'static str,
    },

    #[error("PA index {k} out of range for M = {m}")]
    IndexOutOfRange { k: usize, m: usize },

    #[error("boundary between PA {k} and its right neighbour is a vertical line (alpha = 0)")]
    DegenerateBoundary { k: usize },

    #[error("boundary circle of PA {k} has imaginary radius (radius^2 = {radius_sq})")]
    ImaginaryRadius { k: usize, radius_sq: f64 },

    #[error("partition has {partition} regions but the layout has {layout} antennas")]
    PartitionMismatch { partition: usize, layout: usize },

    #[error("continuous-PA reference rate is not positive ({0})")]
    ZeroReferenceRate(f64),
}
