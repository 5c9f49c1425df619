//! Physical scenario and the per-antenna SNR law.
//!
//! Coordinates: the waveguide runs along `x ∈ [0, D_x]` at `y = 0`, height `h`,
//! fed at `x = 0`. Users live on the floor, `x_m ∈ [0, D_x]`,
//! `y_m ∈ [−D_y/2, D_y/2]`. Everything is linear SI internally; dB values
//! appear only in [`SystemConfig`].

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::{Error, Result};

/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// `α·x` above which `e^{−αx}` is no longer a normal `f64`.
pub const ATTENUATION_EXPONENT_LIMIT: f64 = 700.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemConfig {
    /// Room length along the waveguide, m.
    pub d_x: f64,
    /// Room width, m.
    pub d_y: f64,
    /// Waveguide height, m.
    pub h: f64,
    /// Waveguide power attenuation, nepers per metre.
    pub alpha: f64,
    /// Carrier frequency, Hz.
    pub f_c: f64,
    /// Effective refractive index of the waveguide.
    pub n_eff: f64,
    /// Noise power σ², dBm.
    pub noise_dbm: f64,
    /// Transmit SNR `P_t/σ²`, dB.
    pub gamma_t_db: f64,
    /// Outage threshold SNR, dB.
    pub gamma_thr_db: f64,
}

impl SystemConfig {
    /// A room of length `d_x` with the reference parameters: σ² = −90 dBm,
    /// 28 GHz, n_eff = 1.4, α = 0.05, γ_thr = 20 dB, h = 3 m, D_y = 10 m and
    /// γ_t = 90 dB.
    pub fn new(d_x: f64) -> Self {
        Self {
            d_x,
            d_y: 10.0,
            h: 3.0,
            alpha: 0.05,
            f_c: 28e9,
            n_eff: 1.4,
            noise_dbm: -90.0,
            gamma_t_db: 90.0,
            gamma_thr_db: 20.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        fn check(field: &'static str, value: f64, ok: bool, constraint: &'static str) -> Result<()> {
            if value.is_finite() && ok {
                Ok(())
            } else {
                Err(Error::InvalidConfig {
                    field,
                    value,
                    constraint,
                })
            }
        }
        check("d_x", self.d_x, self.d_x > 0.0, "d_x > 0")?;
        check("d_y", self.d_y, self.d_y > 0.0, "d_y > 0")?;
        check("h", self.h, self.h >= 0.0, "h >= 0")?;
        check("alpha", self.alpha, self.alpha >= 0.0, "alpha in [0, inf)")?;
        check("f_c", self.f_c, self.f_c > 0.0, "f_c > 0")?;
        check("n_eff", self.n_eff, self.n_eff >= 1.0, "n_eff >= 1")?;
        check("noise_dbm", self.noise_dbm, true, "finite")?;
        check("gamma_t_db", self.gamma_t_db, true, "finite")?;
        check("gamma_thr_db", self.gamma_thr_db, true, "finite")?;
        Ok(())
    }

    /// Outage threshold as a linear power ratio.
    pub fn gamma_thr(&self) -> f64 {
        db_to_linear(self.gamma_thr_db)
    }

    /// Transmit power implied by the transmit SNR and noise floor, dBm.
    pub fn transmit_power_dbm(&self) -> f64 {
        self.gamma_t_db + self.noise_dbm
    }
}

/// `10^(db/10)`.
pub fn db_to_linear(db: f64) -> f64 {
    libm::pow(10.0, db / 10.0)
}

/// RF quantities derived from a [`SystemConfig`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedRf {
    /// Free-space wavelength, m.
    pub lambda: f64,
    /// Guided wavelength `λ/n_eff`, m.
    pub lambda_g: f64,
    /// Path loss at 1 m, `λ²/(16π²)`.
    pub eta: f64,
    /// `η·P_t/σ²` (linear).
    pub big_c: f64,
}

pub fn derive_rf(config: &SystemConfig) -> DerivedRf {
    let lambda = SPEED_OF_LIGHT / config.f_c;
    let eta = lambda * lambda / (16.0 * PI * PI);
    DerivedRf {
        lambda,
        lambda_g: lambda / config.n_eff,
        eta,
        big_c: eta * db_to_linear(config.gamma_t_db),
    }
}

/// `C·e^{−αx}` with the exponent clamped so the result stays a positive normal.
///
/// The flag is set when the clamp was applied.
pub fn attenuated_gain(big_c: f64, alpha: f64, x: f64) -> (f64, bool) {
    let exponent = alpha * x;
    if exponent > ATTENUATION_EXPONENT_LIMIT {
        return (f64::MIN_POSITIVE, true);
    }
    let g = big_c * libm::exp(-exponent);
    if g < f64::MIN_POSITIVE {
        (f64::MIN_POSITIVE, true)
    } else {
        (g, false)
    }
}

/// `M` evenly spaced PAs; PA `k` (0-based) sits at `(2k+1)·δ/2`.
#[derive(Debug, Clone, PartialEq)]
pub struct PaLayout {
    m: usize,
    delta: f64,
    x_k: Vec<f64>,
}

impl PaLayout {
    pub fn new(d_x: f64, m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidConfig {
                field: "m",
                value: 0.0,
                constraint: "m >= 1",
            });
        }
        if !(d_x > 0.0 && d_x.is_finite()) {
            return Err(Error::InvalidConfig {
                field: "d_x",
                value: d_x,
                constraint: "d_x > 0",
            });
        }
        let delta = d_x / m as f64;
        let x_k = (0..m).map(|i| (2 * i + 1) as f64 * delta / 2.0).collect();
        Ok(Self { m, delta, x_k })
    }

    pub fn for_config(config: &SystemConfig, m: usize) -> Result<Self> {
        Self::new(config.d_x, m)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn positions(&self) -> &[f64] {
        &self.x_k
    }

    pub fn x(&self, k: usize) -> f64 {
        self.x_k[k]
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UserPosition {
    pub x_m: f64,
    pub y_m: f64,
}

impl UserPosition {
    pub fn new(x_m: f64, y_m: f64) -> Self {
        Self { x_m, y_m }
    }

    pub fn is_inside(&self, config: &SystemConfig) -> bool {
        (0.0..=config.d_x).contains(&self.x_m) && self.y_m.abs() <= 0.5 * config.d_y
    }
}

/// SNR of PA `k` (0-based) at `user`: `C·e^{−αx_k} / ((x_m−x_k)² + y_m² + h²)`.
pub fn snr_linear(config: &SystemConfig, layout: &PaLayout, k: usize, user: UserPosition) -> Result<f64> {
    if k >= layout.m() {
        return Err(Error::IndexOutOfRange { k, m: layout.m() });
    }
    let rf = derive_rf(config);
    let (gain, _) = attenuated_gain(rf.big_c, config.alpha, layout.x(k));
    Ok(gain / distance_sq(config, layout.x(k), user))
}

/// Index of the PA with the highest SNR at `user`; ties go to the smaller index.
pub fn select_pa(config: &SystemConfig, layout: &PaLayout, user: UserPosition) -> usize {
    Channel::new(config, layout).select(user).0
}

fn distance_sq(config: &SystemConfig, x_k: f64, user: UserPosition) -> f64 {
    let dx = user.x_m - x_k;
    dx * dx + (user.y_m * user.y_m + config.h * config.h)
}

/// Per-antenna gains `C·e^{−αx_k}` precomputed for repeated SNR evaluation.
#[derive(Debug, Clone)]
pub struct Channel {
    x_k: Vec<f64>,
    gains: Vec<f64>,
    h_sq: f64,
    clamped: bool,
}

impl Channel {
    pub fn new(config: &SystemConfig, layout: &PaLayout) -> Self {
        let rf = derive_rf(config);
        let mut clamped = false;
        let gains = layout
            .positions()
            .iter()
            .map(|&x| {
                let (g, c) = attenuated_gain(rf.big_c, config.alpha, x);
                clamped |= c;
                g
            })
            .collect();
        Self {
            x_k: layout.positions().to_vec(),
            gains,
            h_sq: config.h * config.h,
            clamped,
        }
    }

    /// `C_{0,k}` for every PA.
    pub fn gains(&self) -> &[f64] {
        &self.gains
    }

    /// Whether any gain hit the underflow clamp.
    pub fn clamped(&self) -> bool {
        self.clamped
    }

    pub fn snr(&self, k: usize, user: UserPosition) -> f64 {
        let dx = user.x_m - self.x_k[k];
        self.gains[k] / (dx * dx + (user.y_m * user.y_m + self.h_sq))
    }

    /// `(k, snr)` of the best PA, smaller `k` on ties.
    pub fn select(&self, user: UserPosition) -> (usize, f64) {
        let w = user.y_m * user.y_m + self.h_sq;
        let mut best = 0;
        let mut best_snr = f64::NEG_INFINITY;
        for (k, (&x, &g)) in self.x_k.iter().zip(&self.gains).enumerate() {
            let dx = user.x_m - x;
            let s = g / (dx * dx + w);
            if s > best_snr {
                best = k;
                best_snr = s;
            }
        }
        (best, best_snr)
    }
}
