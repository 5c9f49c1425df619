//! Defining integrals of the pinching-antenna metrics, evaluated by brute force.

use crate::{argmax_1d, integrate, integrate_with_breaks};

/// Fraction of `[0, Δ] × [−D_y/2, D_y/2]` where `ε² + y² ≥ A`, by quadrature of
/// the indicator with breaks at its jumps.
pub fn outage_fraction(delta: f64, a: f64, d_y: f64) -> f64 {
    let half = 0.5 * d_y;
    let inner = |e: f64| {
        let r = (a - e * e).max(0.0).sqrt();
        let indicator = |y: f64| if e * e + y * y >= a { 1.0 } else { 0.0 };
        integrate_with_breaks(indicator, -half, half, &[-r, r], 1e-13, 0.0)
    };
    let breaks = [a.max(0.0).sqrt(), (a - half * half).max(0.0).sqrt()];
    integrate_with_breaks(inner, 0.0, delta, &breaks, 1e-12, 0.0) / (delta * d_y)
}

/// ∫₀^{D_y/2} Δ·ln(Δ² + x + y²) dy.
pub fn i_i(x: f64, delta: f64, d_y: f64) -> f64 {
    integrate(|y| delta * (delta * delta + x + y * y).ln(), 0.0, 0.5 * d_y, 0.0, 1e-14)
}

/// ∫₀^{D_y/2} 2√(x+y²)·atan(Δ/√(x+y²)) dy.
pub fn i_j(x: f64, delta: f64, d_y: f64) -> f64 {
    integrate(
        |y| {
            let s = (x + y * y).sqrt();
            if s == 0.0 {
                return 0.0;
            }
            2.0 * s * (delta / s).atan()
        },
        0.0,
        0.5 * d_y,
        0.0,
        1e-14,
    )
}

/// ∫₀^{D_y/2} Δy²/(x+y²+Δ²) dy.
pub fn j1(x: f64, delta: f64, d_y: f64) -> f64 {
    integrate(|y| delta * y * y / (x + y * y + delta * delta), 0.0, 0.5 * d_y, 0.0, 1e-14)
}

/// ∫₀^{D_y/2} Δxy·ln(y+√(x+y²)) / (√(x+y²)(x+y²+Δ²)) dy.
pub fn j2(x: f64, delta: f64, d_y: f64) -> f64 {
    integrate(
        |y| {
            let s = (x + y * y).sqrt();
            delta * x * y * (y + s).ln() / (s * (x + y * y + delta * delta))
        },
        0.0,
        0.5 * d_y,
        1e-300,
        1e-14,
    )
}

/// Average of `log₂(1 + c₀/(ε²+y²+h²))` over `[0, Δ] × [−D_y/2, D_y/2]`.
pub fn side_rate(delta: f64, c0: f64, h: f64, d_y: f64) -> f64 {
    let h2 = h * h;
    let inner = |e: f64| integrate(|y| (c0 / (e * e + y * y + h2)).ln_1p(), 0.0, 0.5 * d_y, 0.0, 1e-12);
    2.0 / (delta * d_y * std::f64::consts::LN_2) * integrate(inner, 0.0, delta, 0.0, 1e-11)
}

/// PA position on `[0, d_x]` maximizing `e^{−αx_p}/((x_m−x_p)² + d²)`, by grid search.
pub fn best_position(alpha: f64, x_m: f64, d_sq: f64, d_x: f64) -> f64 {
    let objective = |xp: f64| -alpha * xp - ((x_m - xp).powi(2) + d_sq).ln();
    argmax_1d(objective, 0.0, d_x, 20_000)
}
