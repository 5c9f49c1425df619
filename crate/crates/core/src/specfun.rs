//! Real special functions needed by the ergodic-rate closed forms.
//!
//! * [`dilog`]: the real dilogarithm `Li₂(x) = Σ xⁿ/n²`, `x ≤ 1`.
//! * [`ti2`]: the inverse-tangent integral `Ti₂(z) = ∫₀^z atan(t)/t dt`.
//! * [`asinh`]: inverse hyperbolic sine.
//!
//! Everything is real-valued. `Ti₂` is the imaginary part of `Li₂(iz)`, but the
//! rate expressions only ever need it on the real line, so no complex
//! polylogarithm is provided.

use core::f64::consts::{FRAC_PI_2, PI};

use crate::{Error, Result};

const PI2_6: f64 = PI * PI / 6.0;

/// Accuracy target and series cap for the series-based functions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpecFunTolerance {
    rel_tol: f64,
    max_terms: usize,
}

impl SpecFunTolerance {
    pub fn new(rel_tol: f64, max_terms: usize) -> Result<Self> {
        if !(rel_tol > 0.0 && rel_tol <= 1e-6) {
            return Err(Error::InvalidConfig {
                field: "rel_tol",
                value: rel_tol,
                constraint: "0 < rel_tol <= 1e-6",
            });
        }
        if max_terms < 32 {
            return Err(Error::InvalidConfig {
                field: "max_terms",
                value: max_terms as f64,
                constraint: "max_terms >= 32",
            });
        }
        Ok(Self { rel_tol, max_terms })
    }

    pub fn rel_tol(&self) -> f64 {
        self.rel_tol
    }

    pub fn max_terms(&self) -> usize {
        self.max_terms
    }
}

impl Default for SpecFunTolerance {
    fn default() -> Self {
        Self {
            rel_tol: 1e-12,
            max_terms: 4096,
        }
    }
}

/// Real dilogarithm with the default tolerance.
pub fn dilog(x: f64) -> Result<f64> {
    dilog_with(x, SpecFunTolerance::default())
}

/// Real dilogarithm `Li₂(x)` for `x ≤ 1`.
///
/// The power series is summed on `[0, 1/2]`; `(1/2, 1]` goes through the
/// reflection formula and negative arguments through the Landen map
/// `x ↦ x/(x−1)`, which lands in `(0, 1)`.
pub fn dilog_with(x: f64, tol: SpecFunTolerance) -> Result<f64> {
    if !x.is_finite() {
        if x == f64::NEG_INFINITY {
            return Ok(f64::NEG_INFINITY);
        }
        return Err(Error::NonFinite { function: "dilog" });
    }
    if x > 1.0 {
        return Err(Error::Domain {
            function: "dilog",
            x,
        });
    }
    Ok(dilog_real(x, tol))
}

fn dilog_real(x: f64, tol: SpecFunTolerance) -> f64 {
    if x == 1.0 {
        PI2_6
    } else if x > 0.5 {
        // Li₂(x) + Li₂(1−x) = π²/6 − ln x · ln(1−x)
        PI2_6 - libm::log(x) * libm::log1p(-x) - dilog_series(1.0 - x, tol)
    } else if x >= 0.0 {
        dilog_series(x, tol)
    } else {
        // Li₂(x) = −Li₂(x/(x−1)) − ½ ln²(1−x)
        let l = libm::log1p(-x);
        -dilog_real(x / (x - 1.0), tol) - 0.5 * l * l
    }
}

fn dilog_series(x: f64, tol: SpecFunTolerance) -> f64 {
    let mut sum = 0.0;
    let mut power = x;
    for n in 1..=tol.max_terms {
        let nf = n as f64;
        let term = power / (nf * nf);
        sum += term;
        if term.abs() <= tol.rel_tol * sum.abs() {
            break;
        }
        power *= x;
    }
    sum
}

const PSI_TERMS: usize = 40;

/// Taylor coefficients `c_n` of `ψ / sin ψ = Σ c_n ψ^{2n}` (radius of convergence π),
/// obtained by inverting the sine series.
const PSI_OVER_SIN: [f64; PSI_TERMS] = psi_over_sin_coefficients();

const fn psi_over_sin_coefficients() -> [f64; PSI_TERMS] {
    // sin ψ / ψ = Σ s_k ψ^{2k}, s_k = (−1)^k / (2k+1)!
    let mut s = [0.0; PSI_TERMS];
    s[0] = 1.0;
    let mut k = 1;
    while k < PSI_TERMS {
        let a = (2 * k) as f64;
        let b = (2 * k + 1) as f64;
        s[k] = -s[k - 1] / (a * b);
        k += 1;
    }
    let mut c = [0.0; PSI_TERMS];
    c[0] = 1.0;
    let mut n = 1;
    while n < PSI_TERMS {
        let mut acc = 0.0;
        let mut j = 1;
        while j <= n {
            acc -= s[j] * c[n - j];
            j += 1;
        }
        c[n] = acc;
        n += 1;
    }
    c
}

/// Inverse-tangent integral with the default tolerance.
pub fn ti2(z: f64) -> f64 {
    ti2_with(z, SpecFunTolerance::default())
}

/// Inverse-tangent integral `Ti₂(z) = ∫₀^z atan(t)/t dt`.
///
/// Odd in `z`. For `|z| > 1` the functional equation
/// `Ti₂(z) = Ti₂(1/z) + (π/2) ln z` folds the argument into `(0, 1)`.
/// NaN propagates; `±∞` maps to `±∞`.
pub fn ti2_with(z: f64, tol: SpecFunTolerance) -> f64 {
    if z.is_nan() {
        return z;
    }
    if z < 0.0 {
        return -ti2_with(-z, tol);
    }
    if z.is_infinite() {
        return f64::INFINITY;
    }
    if z > 1.0 {
        ti2_unit(1.0 / z, tol) + FRAC_PI_2 * libm::log(z)
    } else {
        ti2_unit(z, tol)
    }
}

fn ti2_unit(z: f64, tol: SpecFunTolerance) -> f64 {
    if z <= 0.5 {
        // Σ (−1)ⁿ z^{2n+1} / (2n+1)²
        let z2 = z * z;
        let mut power = z;
        let mut sum = 0.0;
        for n in 0..tol.max_terms {
            let d = (2 * n + 1) as f64;
            let term = power / (d * d);
            sum += term;
            if term.abs() <= tol.rel_tol * sum.abs() {
                break;
            }
            power *= -z2;
        }
        sum
    } else {
        // With z = tan(ψ/2): Ti₂(z) = ½ ∫₀^ψ u / sin u du.
        let psi = 2.0 * libm::atan(z);
        let psi2 = psi * psi;
        let mut power = psi;
        let mut sum = 0.0;
        for (n, c) in PSI_OVER_SIN.iter().enumerate() {
            let term = c * power / (2 * n + 1) as f64;
            sum += term;
            if term <= tol.rel_tol * sum {
                break;
            }
            power *= psi2;
        }
        0.5 * sum
    }
}

/// `ln(x + √(x²+1))`, accurate for tiny and huge `|x|`.
pub fn asinh(x: f64) -> f64 {
    libm::asinh(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    const CATALAN: f64 = 0.915_965_594_177_219_015_054_603_514_932_384_110_774;

    fn close(a: f64, b: f64, rel: f64) -> bool {
        (a - b).abs() <= rel * b.abs().max(1e-300)
    }

    #[test]
    fn dilog_basic_values() {
        assert_eq!(dilog(0.0).unwrap(), 0.0);
        assert!(close(dilog(1.0).unwrap(), PI2_6, 1e-15));
        // Li₂(1/2) = π²/12 − ln²2 / 2
        let half = PI * PI / 12.0 - 0.5 * core::f64::consts::LN_2.powi(2);
        assert!(close(dilog(0.5).unwrap(), half, 1e-12));
        // Li₂(−1) = −π²/12
        assert!(close(dilog(-1.0).unwrap(), -PI * PI / 12.0, 1e-12));
    }

    #[test]
    fn dilog_domain() {
        assert!(matches!(dilog(1.0000001), Err(Error::Domain { .. })));
        assert!(matches!(dilog(f64::NAN), Err(Error::NonFinite { .. })));
    }

    #[test]
    fn ti2_catalan() {
        assert!(close(ti2(1.0), CATALAN, 1e-12));
        assert_eq!(ti2(0.0), 0.0);
    }

    #[test]
    fn ti2_odd_and_branches_agree() {
        for z in [0.3, 2.0, 17.5] {
            assert_eq!(ti2(-z), -ti2(z));
        }
        // Either side of the series switch at 1/2.
        let below = ti2(0.5 - 1e-12);
        let above = ti2(0.5 + 1e-12);
        assert!((above - below).abs() < 1e-11);
    }

    #[test]
    fn tolerance_invariants() {
        assert!(SpecFunTolerance::new(1e-5, 64).is_err());
        assert!(SpecFunTolerance::new(1e-10, 8).is_err());
        assert!(SpecFunTolerance::new(0.0, 64).is_err());
        let t = SpecFunTolerance::new(1e-8, 32).unwrap();
        assert!(close(ti2_with(1.0, t), CATALAN, 1e-8));
    }

    #[test]
    fn asinh_values() {
        assert_eq!(asinh(0.0), 0.0);
        assert!(close(asinh(libm::sinh(2.0)), 2.0, 1e-15));
        // asinh(x) = ln 2x + 1/(4x²) − … for large x
        let x = 1e8;
        assert!(close(asinh(x), libm::log(2.0 * x) + 0.25 / (x * x), 1e-12));
        assert!(close(asinh(1e-10), 1e-10, 1e-15));
    }
}
