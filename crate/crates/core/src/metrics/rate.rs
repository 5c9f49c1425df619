//! Ergodic rate.
//!
//! Over one side rectangle of width `Δ`,
//!
//! ```text
//! C_l(Δ) = 2/(ΔD_y ln 2) · ∫₀^Δ ∫₀^{D_y/2} ln(1 + C_{0,k}/(ε² + y² + h²)) dy dε
//! ```
//!
//! Writing the log as a difference `ln(ε²+y²+x)|_{x=C_{0,k}+h²} − ln(…)|_{x=h²}`
//! and integrating over `ε` in closed form leaves two one-dimensional integrals,
//! `I_i(x) = ∫₀^{D_y/2} Δ ln(Δ²+x+y²) dy` and
//! `I_j(x) = ∫₀^{D_y/2} 2√(x+y²) atan(Δ/√(x+y²)) dy`, both with closed forms.

use core::f64::consts::{FRAC_PI_2, LN_2};

use super::{check_partition, Diagnostics, MetricKind, MetricResult, ParamPoint};
use crate::regions::RegionPartition;
use crate::specfun::{asinh, ti2};
use crate::system::{Channel, PaLayout, SystemConfig};
use crate::Result;

/// Above this multiple of `Δ²` the series form of `I_j` is used.
const SERIES_THRESHOLD: f64 = 16.0;

const SERIES_MAX_TERMS: usize = 200;

/// `I_i(x) = (ΔD_y/2)·ln(D_y²/4+Δ²+x) − ΔD_y + 2Δ√(Δ²+x)·atan(D_y/(2√(x+Δ²)))`.
pub fn i_i(x: f64, delta_width: f64, d_y: f64) -> f64 {
    let d = delta_width;
    let q = libm::sqrt(d * d + x);
    0.5 * d * d_y * libm::log(0.25 * d_y * d_y + d * d + x) - d * d_y
        + 2.0 * d * q * libm::atan(d_y / (2.0 * q))
}

/// `J₁ = ∫₀^{D_y/2} Δy²/(x+y²+Δ²) dy = ΔD_y/2 − Δ√(x+Δ²)·atan(D_y/(2√(x+Δ²)))`.
pub fn j1(x: f64, delta_width: f64, d_y: f64) -> f64 {
    let d = delta_width;
    let q = libm::sqrt(x + d * d);
    0.5 * d * d_y - d * q * libm::atan(d_y / (2.0 * q))
}

/// `J₂ = ∫₀^{D_y/2} Δxy·ln(y+√(x+y²)) / (√(x+y²)(x+y²+Δ²)) dy`, `x > 0`, via four `Ti₂` terms.
///
/// The small `Ti₂` argument `(Δ/√x)(√(1+x/Δ²) − 1)` is formed as
/// `(√x/Δ)/(√(1+x/Δ²) + 1)` to avoid cancellation.
pub fn j2(x: f64, delta_width: f64, d_y: f64) -> f64 {
    let d = delta_width;
    let b = 0.5 * d_y;
    let sx = libm::sqrt(x);
    let sq = libm::sqrt(x + b * b);
    let log_sx = libm::log(sx);
    let a = asinh(b / sx);
    // e^{asinh(b/√x)}
    let ea = (b + sq) / sx;
    let s = libm::sqrt(1.0 + x / (d * d));
    let u_minus = (sx / d) / (s + 1.0);
    let u_plus = (d / sx) * (s + 1.0);
    x * ((log_sx + a) * libm::atan(sq / d) - log_sx * libm::atan(sx / d) - FRAC_PI_2 * a
        - ti2(ea * u_minus)
        + ti2(u_minus)
        - ti2(-ea * u_plus)
        + ti2(-u_plus))
}

/// `I_j(x) = ∫₀^{D_y/2} 2√(x+y²)·atan(Δ/√(x+y²)) dy` for `x ≥ 0`.
///
/// Up to `x = 16Δ²` this is the closed form built from [`j1`] and [`j2`]. Beyond
/// that the closed form cancels badly, and the expansion
/// `atan(t) = Σ (−1)ⁿ t^{2n+1}/(2n+1)` is integrated term by term instead;
/// its ratio is at most `Δ²/x ≤ 1/16`.
pub fn i_j(x: f64, delta_width: f64, d_y: f64) -> f64 {
    let d = delta_width;
    if d == 0.0 {
        return 0.0;
    }
    let b = 0.5 * d_y;
    if x == 0.0 {
        return b * b * libm::atan(d / b) + d * (b - d * libm::atan(b / d));
    }
    if x > SERIES_THRESHOLD * d * d {
        return i_j_series(x, d, b);
    }
    let sq = libm::sqrt(x + b * b);
    let sx = libm::sqrt(x);
    (b * sq + x * libm::log(b + sq)) * libm::atan(d / sq) - x * libm::log(sx) * libm::atan(d / sx)
        + j1(x, d, d_y)
        + j2(x, d, d_y)
}

fn i_j_series(x: f64, d: f64, b: f64) -> f64 {
    // With K_n = ∫₀^b (x+y²)^{−n} dy and k_n = Δ^{2n}·K_n:
    //   I_j = 2Δ Σ (−1)ⁿ k_n / (2n+1)
    //   K_{n+1} = b / (2n·x·(x+b²)ⁿ) + (2n−1)/(2n·x) · K_n
    let d2 = d * d;
    let ratio = d2 / (x + b * b);
    let mut sum = b;
    let mut k_n = d2 * libm::atan(b / libm::sqrt(x)) / libm::sqrt(x);
    let mut ratio_pow = ratio;
    for n in 1..SERIES_MAX_TERMS {
        let nf = n as f64;
        let sign = if n % 2 == 1 { -1.0 } else { 1.0 };
        let term = sign * k_n / (2.0 * nf + 1.0);
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() {
            break;
        }
        k_n = d2 / (2.0 * nf * x) * (b * ratio_pow + (2.0 * nf - 1.0) * k_n);
        ratio_pow *= ratio;
    }
    2.0 * d * sum
}

/// Average rate (bits/s/Hz) over one side rectangle of width `delta_width`.
pub fn c_l(delta_width: f64, c_0k: f64, config: &SystemConfig) -> f64 {
    let d = delta_width;
    let d_y = config.d_y;
    let h2 = config.h * config.h;
    let f = |x: f64| i_i(x, d, d_y) + i_j(x, d, d_y);
    let value = 2.0 / (d * d_y * LN_2) * (f(c_0k + h2) - f(h2));
    value.max(0.0)
}

/// `R̄ = Σ_k [L_k·C_l(L_k) + R_k·C_l(R_k)] / D_x`.
pub fn ergodic_rate(config: &SystemConfig, layout: &PaLayout, partition: &RegionPartition) -> Result<MetricResult> {
    check_partition(layout, partition)?;
    let channel = Channel::new(config, layout);
    let mut total = 0.0;
    for (k, &c_0k) in channel.gains().iter().enumerate() {
        for width in [partition.left_limits()[k], partition.right_limits()[k]] {
            total += width * c_l(width, c_0k, config);
        }
    }
    Ok(MetricResult {
        kind: MetricKind::ErgodicRate,
        value: total / config.d_x,
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
