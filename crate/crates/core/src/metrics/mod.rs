//! Closed-form performance metrics under the rectangular region approximation.
//!
//! Every metric is an average over a user dropped uniformly in the room. With
//! PA `k` serving `[x_k − L_k, x_k + R_k] × [−D_y/2, D_y/2]`, the average splits
//! into per-PA, per-side terms that depend only on the side width `Δ`, the PA
//! gain `C_{0,k} = C·e^{−αx_k}` and the room width.

mod continuous;
mod outage;
mod rate;

pub use continuous::{
    continuous_optimal_position, continuous_rate, continuous_rate_with_order, continuous_snr,
    CONTINUOUS_QUADRATURE_ORDER, RICHARDSON_REL_TOL,
};
pub use outage::{outage_probability, outage_regime, p_l, p_l_in_regime, OutageInputs, OutageRegime};
pub use rate::{c_l, ergodic_rate, i_i, i_j, j1, j2};

use crate::regions::RegionPartition;
use crate::system::{PaLayout, SystemConfig};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MetricKind {
    Outage,
    ErgodicRate,
    ContinuousRate,
    Pde,
}

impl MetricKind {
    pub fn name(self) -> &'static str {
        match self {
            MetricKind::Outage => "outage",
            MetricKind::ErgodicRate => "ergodic_rate",
            MetricKind::ContinuousRate => "continuous_rate",
            MetricKind::Pde => "pde",
        }
    }
}

/// Numerical warnings attached to a result. None of them invalidate the value.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Diagnostics {
    /// Some `C_{0,k}` underflowed and was clamped to the smallest normal `f64`.
    pub underflow_clamp: bool,
    /// The doubled-order quadrature disagreed by more than the Richardson tolerance.
    pub quadrature_unconverged: bool,
    /// Relative change between the base and doubled quadrature orders, if computed.
    pub richardson_rel: Option<f64>,
}

impl Diagnostics {
    pub fn merge(self, other: Diagnostics) -> Diagnostics {
        let richardson_rel = match (self.richardson_rel, other.richardson_rel) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, b) => a.or(b),
        };
        Diagnostics {
            underflow_clamp: self.underflow_clamp || other.underflow_clamp,
            quadrature_unconverged: self.quadrature_unconverged || other.quadrature_unconverged,
            richardson_rel,
        }
    }

    pub fn is_clean(&self) -> bool {
        !self.underflow_clamp && !self.quadrature_unconverged
    }
}

/// The parameter point a metric was evaluated at. `m` is `None` for the
/// continuous baseline, which has no PA grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParamPoint {
    pub config: SystemConfig,
    pub m: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricResult {
    pub kind: MetricKind,
    /// Probability, bits/s/Hz or ratio depending on `kind`.
    pub value: f64,
    pub params: ParamPoint,
    pub diagnostics: Diagnostics,
}

/// Discretization efficiency `R̄ / R_c`.
pub fn pde(config: &SystemConfig, layout: &PaLayout, partition: &RegionPartition) -> Result<MetricResult> {
    let discrete = ergodic_rate(config, layout, partition)?;
    let reference = continuous_rate(config)?;
    if reference.value.is_nan() || reference.value <= 0.0 {
        return Err(Error::ZeroReferenceRate(reference.value));
    }
    Ok(MetricResult {
        kind: MetricKind::Pde,
        value: discrete.value / reference.value,
        params: discrete.params,
        diagnostics: discrete.diagnostics.merge(reference.diagnostics),
    })
}

fn check_partition(layout: &PaLayout, partition: &RegionPartition) -> Result<()> {
    if partition.m() != layout.m() {
        return Err(Error::PartitionMismatch {
            partition: partition.m(),
            layout: layout.m(),
        });
    }
    Ok(())
}
