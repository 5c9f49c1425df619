//! Continuous-placement baseline: one PA that can sit anywhere on the waveguide.
//!
//! For a user at `(x_m, y_m)` write `u = x_m − x_p` and `d² = y_m² + h²`. The SNR
//! is proportional to `g(u) = e^{αu}/(u² + d²)`, whose stationary points solve
//! `α(u² + d²) = 2u`:
//!
//! ```text
//! t₁ = αd² / (1 + √(1 − α²d²))   local maximum
//! t₂ = d² / t₁                    local minimum
//! ```
//!
//! `g` rises on `u < t₁`, falls on `(t₁, t₂)` and rises again beyond `t₂`. With
//! `u ≤ x_m` the maximizer is `x_m − t₁` unless the feed end `x_p = 0`
//! (`u = x_m > t₂`) does better. If `α²d² ≥ 1`, `g` is nondecreasing and the PA
//! goes to the feed.

use alloc::vec::Vec;
use core::f64::consts::LN_2;

use super::{Diagnostics, MetricKind, MetricResult, ParamPoint};
use crate::quadrature::GaussLegendre;
use crate::system::{attenuated_gain, derive_rf, SystemConfig, UserPosition};
use crate::Result;

/// Gauss–Legendre order per axis (and per smooth piece in `x`).
pub const CONTINUOUS_QUADRATURE_ORDER: usize = 128;

/// Largest accepted relative change when the order is doubled.
pub const RICHARDSON_REL_TOL: f64 = 1e-6;

/// `(t₁, t₂)`, or `None` when `g` has no stationary point.
fn stationary_offsets(alpha: f64, d_sq: f64) -> Option<(f64, f64)> {
    let disc = 1.0 - alpha * alpha * d_sq;
    if disc <= 0.0 {
        return None;
    }
    let t1 = alpha * d_sq / (1.0 + libm::sqrt(disc));
    let t2 = if t1 > 0.0 { d_sq / t1 } else { f64::INFINITY };
    Some((t1, t2))
}

/// `ln g(u)` up to a constant; logs keep `e^{αu}` from overflowing.
fn log_objective(alpha: f64, d_sq: f64, u: f64) -> f64 {
    alpha * u - libm::log(u * u + d_sq)
}

/// Best PA abscissa on `[0, D_x]` for `user`.
pub fn continuous_optimal_position(config: &SystemConfig, user: UserPosition) -> f64 {
    let alpha = config.alpha;
    let x_m = user.x_m.clamp(0.0, config.d_x);
    if alpha == 0.0 {
        return x_m;
    }
    let d_sq = user.y_m * user.y_m + config.h * config.h;
    match stationary_offsets(alpha, d_sq) {
        None => 0.0,
        Some((t1, t2)) => {
            if x_m <= t1 {
                return 0.0;
            }
            let interior = x_m - t1;
            if x_m > t2 && log_objective(alpha, d_sq, x_m) > log_objective(alpha, d_sq, t1) {
                0.0
            } else {
                interior
            }
        }
    }
}

/// SNR at `user` with the PA at [`continuous_optimal_position`].
pub fn continuous_snr(config: &SystemConfig, user: UserPosition) -> f64 {
    let rf = derive_rf(config);
    let x_p = continuous_optimal_position(config, user);
    let (gain, _) = attenuated_gain(rf.big_c, config.alpha, x_p);
    let dx = user.x_m - x_p;
    gain / (dx * dx + user.y_m * user.y_m + config.h * config.h)
}

/// Ergodic rate of the continuous baseline with the default quadrature order.
pub fn continuous_rate(config: &SystemConfig) -> Result<MetricResult> {
    continuous_rate_with_order(config, CONTINUOUS_QUADRATURE_ORDER)
}

/// `R_c`: average of `log₂(1 + γ)` over the room with the PA placed per user.
///
/// Tensor Gauss–Legendre over `x ∈ [0, D_x]`, `y ∈ [0, D_y/2]` (the integrand
/// is even in `y`). The `x` range is cut where the maximizer changes form, so
/// each piece is smooth. The integral is repeated at twice the order and the
/// higher-order value returned; a relative change above
/// [`RICHARDSON_REL_TOL`] sets `quadrature_unconverged`.
pub fn continuous_rate_with_order(config: &SystemConfig, order: usize) -> Result<MetricResult> {
    config.validate()?;
    let base = GaussLegendre::new(order);
    let fine = GaussLegendre::new(2 * order);
    let (coarse_value, clamp_a) = integrate_rate(config, &base);
    let (fine_value, clamp_b) = integrate_rate(config, &fine);
    let rel = if fine_value != 0.0 {
        ((fine_value - coarse_value) / fine_value).abs()
    } else {
        (fine_value - coarse_value).abs()
    };
    Ok(MetricResult {
        kind: MetricKind::ContinuousRate,
        value: fine_value,
        params: ParamPoint {
            config: *config,
            m: None,
        },
        diagnostics: Diagnostics {
            underflow_clamp: clamp_a || clamp_b,
            quadrature_unconverged: rel.is_nan() || rel > RICHARDSON_REL_TOL,
            richardson_rel: Some(rel),
        },
    })
}

fn integrate_rate(config: &SystemConfig, rule: &GaussLegendre) -> (f64, bool) {
    let rf = derive_rf(config);
    let alpha = config.alpha;
    let h_sq = config.h * config.h;
    let half = 0.5 * config.d_y;
    let mut clamped = false;

    // Where α²(y² + h²) = 1 the maximizer changes form in y.
    let mut y_edges: Vec<f64> = alloc::vec![0.0];
    if alpha > 0.0 {
        let y_sq = 1.0 / (alpha * alpha) - h_sq;
        if y_sq > 0.0 && libm::sqrt(y_sq) < half {
            y_edges.push(libm::sqrt(y_sq));
        }
    }
    y_edges.push(half);

    let mut total = 0.0;
    for ys in y_edges.windows(2) {
        for (y, wy) in rule.points(ys[0], ys[1]) {
            let d_sq = y * y + h_sq;
            let edges = x_breaks(config, d_sq);
            let mut inner = 0.0;
            for xs in edges.windows(2) {
                inner += rule.integrate(xs[0], xs[1], |x| {
                    let user = UserPosition::new(x, y);
                    let x_p = continuous_optimal_position(config, user);
                    let (gain, c) = attenuated_gain(rf.big_c, alpha, x_p);
                    clamped |= c;
                    let dx = x - x_p;
                    libm::log1p(gain / (dx * dx + d_sq))
                });
            }
            total += wy * inner;
        }
    }
    (total / (LN_2 * config.d_x * half), clamped)
}

/// Cut points in `x` for one `y`: the kink at `x = t₁` and, if reachable, the
/// switch to the feed end beyond `t₂`.
fn x_breaks(config: &SystemConfig, d_sq: f64) -> Vec<f64> {
    let mut edges = alloc::vec![0.0];
    if config.alpha > 0.0 {
        if let Some((t1, t2)) = stationary_offsets(config.alpha, d_sq) {
            if t1 > 0.0 && t1 < config.d_x {
                edges.push(t1);
            }
            if t2 < config.d_x {
                if let Some(s) = feed_switch(config.alpha, d_sq, t1, t2, config.d_x) {
                    edges.push(s);
                }
            }
        }
    }
    edges.push(config.d_x);
    edges
}

/// Smallest `x_m > t₂` with `g(x_m) = g(t₁)`, if it is below `d_x`.
fn feed_switch(alpha: f64, d_sq: f64, t1: f64, t2: f64, d_x: f64) -> Option<f64> {
    let target = log_objective(alpha, d_sq, t1);
    let f = |u: f64| log_objective(alpha, d_sq, u) - target;
    if f(d_x) <= 0.0 {
        return None;
    }
    // f < 0 at t₂ and f is increasing beyond it.
    let (mut lo, mut hi) = (t2, d_x);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Some(hi)
}
