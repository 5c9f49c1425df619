//! Closed-form performance analysis of two-state pinching-antenna systems.
//!
//! A dielectric waveguide at height `h` runs along the `x` axis of a
//! `D_x × D_y` room and carries `M` pinching antennas (PAs) at fixed, evenly
//! spaced positions. Exactly one PA radiates at a time, the one that gives the
//! user the highest SNR. This crate evaluates, for a uniformly placed user,
//!
//! * the outage probability ([`metrics::outage_probability`]),
//! * the ergodic rate ([`metrics::ergodic_rate`]),
//! * the rate of an ideal continuously movable PA ([`metrics::continuous_rate`]),
//! * and their ratio, the pinching discretization efficiency ([`metrics::pde`]),
//!
//! together with the serving-region geometry ([`regions`]) and a seeded Monte
//! Carlo simulator ([`montecarlo`]) used to validate the closed forms.
//!
//! The crate is `no_std` and needs only `alloc`.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod error;
pub mod metrics;
pub mod montecarlo;
pub mod optimize;
pub mod quadrature;
pub mod regions;
pub mod specfun;
pub mod system;

pub use error::Error;
pub use metrics::{Diagnostics, MetricKind, MetricResult};
pub use montecarlo::{SimEstimate, SimulationSpec};
pub use regions::{BoundaryCircle, RegionPartition};
pub use system::{DerivedRf, PaLayout, SystemConfig, UserPosition};

pub type Result<T, E = Error> = core::result::Result<T, E>;
