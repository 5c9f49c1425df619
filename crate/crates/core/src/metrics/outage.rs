//! Outage probability.
//!
//! A user at horizontal offset `ε` from PA `k` is in outage when
//! `ε² + y² ≥ A_{0,k}` with `A_{0,k} = C_{0,k}/γ_thr − h²`. Over one side
//! rectangle `[0, Δ] × [−D_y/2, D_y/2]` the outage fraction `P_l(Δ)` takes one
//! of six piecewise forms depending on where `A_{0,k}` sits relative to `Δ²`
//! and `D_y²/4`.

use core::f64::consts::PI;

use super::{check_partition, Diagnostics, MetricKind, MetricResult, ParamPoint};
use crate::regions::RegionPartition;
use crate::system::{Channel, PaLayout, SystemConfig};
use crate::Result;

/// Per-side inputs of the outage fraction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OutageInputs {
    /// `C_{0,k}/γ_thr − h²`, m². May be negative.
    pub a_0k: f64,
    /// `C·e^{−αx_k}`.
    pub c_0k: f64,
    /// Side width `Δ`, m.
    pub delta_width: f64,
    pub d_y: f64,
}

impl OutageInputs {
    pub fn new(config: &SystemConfig, c_0k: f64, delta_width: f64) -> Self {
        Self {
            a_0k: c_0k / config.gamma_thr() - config.h * config.h,
            c_0k,
            delta_width,
            d_y: config.d_y,
        }
    }

    pub fn regime(&self) -> OutageRegime {
        outage_regime(self.delta_width, self.a_0k, self.d_y)
    }

    pub fn p_l(&self) -> f64 {
        p_l(self.delta_width, self.a_0k, self.d_y)
    }
}

/// The six cases for the outage fraction, in dispatch order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OutageRegime {
    /// `A ≤ 0`: the threshold is missed everywhere.
    AllOut,
    /// `0 ≤ A ≤ min(D_y²/4, Δ²)`: the covered disc fits inside the rectangle.
    DiscInside,
    /// `Δ² ≤ A ≤ D_y²/4`: the disc overhangs the far side `ε = Δ`.
    ClippedByWidth,
    /// `D_y²/4 ≤ A ≤ Δ²`: the disc overhangs the room walls `|y| = D_y/2`.
    ClippedByWalls,
    /// `max(Δ², D_y²/4) ≤ A ≤ Δ² + D_y²/4`: only the far corners are in outage.
    CornersOut,
    /// `A ≥ Δ² + D_y²/4`: no outage.
    NoneOut,
}

impl OutageRegime {
    pub const ALL: [OutageRegime; 6] = [
        OutageRegime::AllOut,
        OutageRegime::DiscInside,
        OutageRegime::ClippedByWidth,
        OutageRegime::ClippedByWalls,
        OutageRegime::CornersOut,
        OutageRegime::NoneOut,
    ];
}

/// Regime of `a_0k`. At a shared edge the earlier regime wins.
pub fn outage_regime(delta_width: f64, a_0k: f64, d_y: f64) -> OutageRegime {
    let d2 = delta_width * delta_width;
    let w2 = 0.25 * d_y * d_y;
    if a_0k <= 0.0 {
        OutageRegime::AllOut
    } else if a_0k <= d2.min(w2) {
        OutageRegime::DiscInside
    } else if d2 <= a_0k && a_0k <= w2 {
        OutageRegime::ClippedByWidth
    } else if w2 <= a_0k && a_0k <= d2 {
        OutageRegime::ClippedByWalls
    } else if a_0k <= d2 + w2 {
        OutageRegime::CornersOut
    } else {
        OutageRegime::NoneOut
    }
}

/// Outage fraction of one side rectangle of width `delta_width`.
pub fn p_l(delta_width: f64, a_0k: f64, d_y: f64) -> f64 {
    p_l_in_regime(outage_regime(delta_width, a_0k, d_y), delta_width, a_0k, d_y)
}

/// Evaluates the expression of one regime regardless of whether `a_0k` lies in it.
///
/// Arcsine arguments are clipped to `[−1, 1]` and square-root arguments to
/// `[0, ∞)`, so a regime can be evaluated right at (or slightly past) its
/// edges. The result is clipped to `[0, 1]`.
pub fn p_l_in_regime(regime: OutageRegime, delta_width: f64, a_0k: f64, d_y: f64) -> f64 {
    let d = delta_width;
    let a = a_0k;
    let value = match regime {
        OutageRegime::AllOut => 1.0,
        OutageRegime::DiscInside => 1.0 - PI * a / (2.0 * d_y * d),
        OutageRegime::ClippedByWidth => {
            let ra = libm::sqrt(a);
            1.0 - a / (d_y * d) * asin_clipped(d / ra) - sqrt_pos(a - d * d) / d_y
        }
        OutageRegime::ClippedByWalls => {
            let ra = libm::sqrt(a);
            1.0 - a / (d_y * d) * asin_clipped(d_y / (2.0 * ra)) - sqrt_pos(a - 0.25 * d_y * d_y) / (2.0 * d)
        }
        OutageRegime::CornersOut => {
            let ra = libm::sqrt(a);
            let s = sqrt_pos(4.0 * a - d_y * d_y);
            1.0 - a / (d_y * d) * (asin_clipped(d / ra) - asin_clipped(s / (2.0 * ra)))
                - s / (4.0 * d)
                - sqrt_pos(a - d * d) / d_y
        }
        OutageRegime::NoneOut => 0.0,
    };
    value.clamp(0.0, 1.0)
}

fn asin_clipped(x: f64) -> f64 {
    libm::asin(x.clamp(-1.0, 1.0))
}

fn sqrt_pos(x: f64) -> f64 {
    libm::sqrt(x.max(0.0))
}

/// `P_o = Σ_k [L_k·P_l(L_k) + R_k·P_l(R_k)] / D_x`.
pub fn outage_probability(
    config: &SystemConfig,
    layout: &PaLayout,
    partition: &RegionPartition,
) -> Result<MetricResult> {
    check_partition(layout, partition)?;
    let channel = Channel::new(config, layout);
    let mut total = 0.0;
    for (k, &c_0k) in channel.gains().iter().enumerate() {
        for width in [partition.left_limits()[k], partition.right_limits()[k]] {
            total += width * OutageInputs::new(config, c_0k, width).p_l();
        }
    }
    Ok(MetricResult {
        kind: MetricKind::Outage,
        value: (total / config.d_x).clamp(0.0, 1.0),
        params: ParamPoint {
            config: *config,
            m: Some(layout.m()),
        },
        diagnostics: Diagnostics {
            underflow_clamp: channel.clamped(),
            ..Diagnostics::default()
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::regions::optimize_partition;

    #[test]
    fn regime_dispatch() {
        // Δ = 2 (Δ² = 4), D_y = 10 (D_y²/4 = 25)
        assert_eq!(outage_regime(2.0, -1.0, 10.0), OutageRegime::AllOut);
        assert_eq!(outage_regime(2.0, 0.0, 10.0), OutageRegime::AllOut);
        assert_eq!(outage_regime(2.0, 3.0, 10.0), OutageRegime::DiscInside);
        assert_eq!(outage_regime(2.0, 4.0, 10.0), OutageRegime::DiscInside);
        assert_eq!(outage_regime(2.0, 10.0, 10.0), OutageRegime::ClippedByWidth);
        assert_eq!(outage_regime(2.0, 27.0, 10.0), OutageRegime::CornersOut);
        assert_eq!(outage_regime(2.0, 29.0, 10.0), OutageRegime::CornersOut);
        assert_eq!(outage_regime(2.0, 29.5, 10.0), OutageRegime::NoneOut);
        // Δ = 8 (Δ² = 64)
        assert_eq!(outage_regime(8.0, 30.0, 10.0), OutageRegime::ClippedByWalls);
        assert_eq!(outage_regime(8.0, 70.0, 10.0), OutageRegime::CornersOut);
    }

    #[test]
    fn table_edges() {
        assert_eq!(p_l(2.0, -3.0, 10.0), 1.0);
        assert_eq!(p_l(2.0, 29.0, 10.0), 0.0);
        assert_eq!(p_l(2.0, 100.0, 10.0), 0.0);
        let v = p_l(2.0, 1.0, 10.0);
        assert!((v - (1.0 - PI / 40.0)).abs() < 1e-15);
    }

    #[test]
    fn zero_threshold_no_outage() {
        let mut cfg = SystemConfig::new(10.0);
        cfg.gamma_thr_db = -300.0;
        let layout = PaLayout::new(10.0, 2).unwrap();
        let p = optimize_partition(&cfg, &layout);
        assert_eq!(outage_probability(&cfg, &layout, &p).unwrap().value, 0.0);
        cfg.gamma_thr_db = 300.0;
        assert_eq!(outage_probability(&cfg, &layout, &p).unwrap().value, 1.0);
    }
}
