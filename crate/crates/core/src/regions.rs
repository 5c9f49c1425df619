//! Serving regions of the PAs.
//!
//! Equating the SNRs of neighbouring PAs `k` and `k+1` gives a circular arc in
//! the floor plane. With `r = e^{−αδ}`, `u = x − x_k` and `w = y² + h²` the
//! equal-SNR condition `(u−δ)² + w = r(u² + w)` is a quadratic in `u` whose
//! root inside `(0, δ)` is
//!
//! ```text
//! u = (δ² + (1−r)w) / (δ + √(rδ² − (1−r)²w))
//! ```
//!
//! (the rationalized form, which stays accurate as `α → 0` where `u → δ/2`).
//! The analytic metrics replace every arc by a vertical cut `b_k`, giving each PA
//! a rectangle that extends `L_k` to its left and `R_k` to its right.

use alloc::vec::Vec;

use crate::optimize::golden_section_min;
use crate::quadrature::GaussLegendre;
use crate::system::{PaLayout, SystemConfig};
use crate::{Error, Result};

/// Gauss–Legendre order of the boundary-mismatch integral over `y`.
pub const MISMATCH_QUADRATURE_ORDER: usize = 64;

/// Absolute tolerance (m) of the cut-position search.
pub const CUT_TOLERANCE: f64 = 1e-6;

/// Circle traced by the equal-SNR boundary to the right of a PA.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryCircle {
    pub center_x: f64,
    pub radius: f64,
    pub curvature: f64,
}

/// Rectangular partition of `[0, D_x]` into per-PA serving intervals.
#[derive(Debug, Clone, PartialEq)]
pub struct RegionPartition {
    boundaries: Vec<f64>,
    left_limits: Vec<f64>,
    right_limits: Vec<f64>,
}

impl RegionPartition {
    /// Builds a partition from cut abscissae `b_0 = 0 < b_1 < … < b_M = D_x`.
    ///
    /// Each PA must lie strictly inside its own interval.
    pub fn from_boundaries(layout: &PaLayout, boundaries: Vec<f64>) -> Result<Self> {
        if boundaries.len() != layout.m() + 1 {
            return Err(Error::PartitionMismatch {
                partition: boundaries.len().saturating_sub(1),
                layout: layout.m(),
            });
        }
        let d_x = layout.delta() * layout.m() as f64;
        if boundaries[0] != 0.0 || (boundaries[layout.m()] - d_x).abs() > 1e-12 * d_x {
            return Err(Error::InvalidConfig {
                field: "boundaries",
                value: boundaries[0],
                constraint: "b_0 = 0 and b_M = D_x",
            });
        }
        let xs = layout.positions();
        let left_limits: Vec<f64> = xs.iter().zip(&boundaries).map(|(x, b)| x - b).collect();
        let right_limits: Vec<f64> = xs.iter().zip(&boundaries[1..]).map(|(x, b)| b - x).collect();
        for (k, (&l, &r)) in left_limits.iter().zip(&right_limits).enumerate() {
            if !(l > 0.0 && r > 0.0) {
                return Err(Error::InvalidConfig {
                    field: "boundaries",
                    value: boundaries[k + 1],
                    constraint: "x_k strictly inside (b_{k-1}, b_k)",
                });
            }
        }
        Ok(Self {
            boundaries,
            left_limits,
            right_limits,
        })
    }

    /// Symmetric partition with `L_k = R_k = δ/2`, exact for a lossless waveguide.
    pub fn symmetric(layout: &PaLayout) -> Self {
        let m = layout.m();
        let half = layout.delta() / 2.0;
        let boundaries = (0..=m).map(|k| k as f64 * layout.delta()).collect();
        Self {
            boundaries,
            left_limits: alloc::vec![half; m],
            right_limits: alloc::vec![half; m],
        }
    }

    pub fn m(&self) -> usize {
        self.left_limits.len()
    }

    pub fn boundaries(&self) -> &[f64] {
        &self.boundaries
    }

    pub fn left_limits(&self) -> &[f64] {
        &self.left_limits
    }

    pub fn right_limits(&self) -> &[f64] {
        &self.right_limits
    }

    /// PA whose rectangle contains abscissa `x` (cuts belong to the left PA).
    pub fn region_of(&self, x: f64) -> usize {
        let inner = &self.boundaries[1..self.boundaries.len() - 1];
        inner.partition_point(|&b| b < x)
    }
}

/// Circle of the boundary between PA `k` and PA `k+1` (0-based).
///
/// Errors with [`Error::DegenerateBoundary`] when `α = 0` (the boundary is a
/// vertical line) and [`Error::ImaginaryRadius`] when the circle does not reach
/// the floor plane.
pub fn boundary_circle(config: &SystemConfig, layout: &PaLayout, k: usize) -> Result<BoundaryCircle> {
    check_cut_index(layout, k)?;
    if config.alpha == 0.0 {
        return Err(Error::DegenerateBoundary { k });
    }
    let delta = layout.delta();
    let ad = config.alpha * delta;
    // e^{αδ}/(e^{αδ}−1) = 1/(1−e^{−αδ});  e^{αδ}/(e^{αδ}−1)² = 1/(4 sinh²(αδ/2))
    let center_x = layout.x(k) - delta / libm::expm1(-ad);
    let s = 2.0 * libm::sinh(0.5 * ad);
    let radius_sq = (delta / s) * (delta / s) - config.h * config.h;
    if radius_sq.is_nan() || radius_sq <= 0.0 {
        return Err(Error::ImaginaryRadius { k, radius_sq });
    }
    let radius = libm::sqrt(radius_sq);
    Ok(BoundaryCircle {
        center_x,
        radius,
        curvature: 1.0 / radius,
    })
}

/// Abscissa right of `x_k` where PAs `k` and `k+1` give equal SNR at ordinate `y`.
///
/// The crossing lies in `(x_k, x_{k+1})` unless `y² + h²` exceeds roughly
/// `δ/α`; further out PA `k` keeps winning past `x_{k+1}` and the root moves
/// beyond it. When the circle does not reach `y` at all, PA `k` wins along the
/// whole line and the point of closest approach `x_k + δ/(1 − e^{−αδ})` is
/// returned, which is where the root disappears.
pub fn exact_boundary_x(config: &SystemConfig, layout: &PaLayout, k: usize, y: f64) -> Result<f64> {
    check_cut_index(layout, k)?;
    Ok(boundary_offset(config.alpha, layout.delta(), y * y + config.h * config.h) + layout.x(k))
}

fn boundary_offset(alpha: f64, delta: f64, w: f64) -> f64 {
    let one_minus_r = -libm::expm1(-alpha * delta);
    let r = 1.0 - one_minus_r;
    let disc = r * delta * delta - one_minus_r * one_minus_r * w;
    if disc < 0.0 {
        // No crossing: report the vertex, where the two SNRs come closest.
        return delta / one_minus_r;
    }
    (delta * delta + one_minus_r * w) / (delta + libm::sqrt(disc))
}

fn check_cut_index(layout: &PaLayout, k: usize) -> Result<()> {
    if k + 1 >= layout.m() {
        return Err(Error::IndexOutOfRange { k, m: layout.m() });
    }
    Ok(())
}

/// Rectangular partition whose cuts best match the exact curved boundaries.
///
/// Each interior cut `b_k` minimizes the misassigned area
/// `∫_{−D_y/2}^{D_y/2} |x*(y) − b_k| dy`, with `x*` the exact boundary, by
/// golden-section search on `(x_k, x_{k+1})`. The outer edges are pinned to
/// `0` and `D_x`. For `α = 0` the exact boundaries are the midpoints and the
/// symmetric partition is returned directly.
pub fn optimize_partition(config: &SystemConfig, layout: &PaLayout) -> RegionPartition {
    if config.alpha == 0.0 {
        return RegionPartition::symmetric(layout);
    }
    let rule = GaussLegendre::new(MISMATCH_QUADRATURE_ORDER);
    let half_width = 0.5 * config.d_y;
    let h_sq = config.h * config.h;
    let delta = layout.delta();

    let mut boundaries = Vec::with_capacity(layout.m() + 1);
    boundaries.push(0.0);
    // The offset x*(y) − x_k is the same for every k.
    let samples: Vec<(f64, f64)> = rule
        .points(-half_width, half_width)
        .map(|(y, w)| (boundary_offset(config.alpha, delta, y * y + h_sq), w))
        .collect();
    let offset = golden_section_min(
        |u| samples.iter().map(|(x, w)| w * (x - u).abs()).sum(),
        0.0,
        delta,
        CUT_TOLERANCE,
    );
    for k in 0..layout.m() - 1 {
        boundaries.push(layout.x(k) + offset);
    }
    boundaries.push(config.d_x);
    RegionPartition::from_boundaries(layout, boundaries)
        .expect("optimized cuts lie strictly between neighbouring PAs")
}

/// Total area (m²) between the rectangular cuts and the exact boundaries,
/// by the same fixed-order quadrature used in the optimization.
pub fn mismatch_area(config: &SystemConfig, layout: &PaLayout, partition: &RegionPartition) -> f64 {
    let rule = GaussLegendre::new(MISMATCH_QUADRATURE_ORDER);
    let half_width = 0.5 * config.d_y;
    let h_sq = config.h * config.h;
    (0..layout.m().saturating_sub(1))
        .map(|k| {
            let cut = partition.boundaries()[k + 1];
            rule.integrate(-half_width, half_width, |y| {
                let exact = layout.x(k) + boundary_offset(config.alpha, layout.delta(), y * y + h_sq);
                (exact - cut).abs()
            })
        })
        .sum()
}

/// `n` samples `(y, x*(y))` of the exact boundary between PAs `k` and `k+1`, evenly spaced in `y`.
pub fn boundary_samples(
    config: &SystemConfig,
    layout: &PaLayout,
    k: usize,
    n: usize,
) -> Result<Vec<(f64, f64)>> {
    check_cut_index(layout, k)?;
    let half_width = 0.5 * config.d_y;
    let steps = n.max(2) - 1;
    (0..=steps)
        .map(|i| {
            let y = -half_width + config.d_y * i as f64 / steps as f64;
            exact_boundary_x(config, layout, k, y).map(|x| (y, x))
        })
        .collect()
}
