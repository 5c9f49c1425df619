#![allow(clippy::excessive_precision)]

//! Reference computations used to validate `pinch-core`.
//!
//! Nothing here shares a code path with the closed forms it checks: integrals
//! are evaluated by globally adaptive Gauss–Kronrod quadrature straight from
//! their defining integrands, and maximizers by exhaustive grid search with a
//! ternary refinement.

/// Kronrod abscissae of the 15-point rule on [-1, 1] (non-negative half).
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

pub mod reference;

/// Gauss weights of the embedded 7-point rule (attached to XGK[1], XGK[3], XGK[5], XGK[7]).
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Cap on the number of subintervals kept by [`integrate`].
const MAX_INTERVALS: usize = 20_000;

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = f(center - dx) + f(center + dx);
        kronrod += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    (kronrod * half, ((kronrod - gauss) * half).abs())
}

struct Piece {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
}

impl PartialEq for Piece {
    fn eq(&self, other: &Self) -> bool {
        self.err.total_cmp(&other.err).is_eq()
    }
}

impl Eq for Piece {}

impl PartialOrd for Piece {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Piece {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        self.err.total_cmp(&other.err)
    }
}

/// Adaptive Gauss–Kronrod integral of `f` over `[a, b]`.
///
/// Keeps a heap of subintervals and bisects the one with the largest
/// Kronrod/Gauss discrepancy until the summed discrepancy is below
/// `max(abs_tol, rel_tol * |estimate|)`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, abs_tol: f64, rel_tol: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    if b < a {
        return -integrate(f, b, a, abs_tol, rel_tol);
    }
    let (value, err) = gk15(&f, a, b);
    let mut heap = std::collections::BinaryHeap::new();
    heap.push(Piece { a, b, value, err });
    let (mut total, mut total_err) = (value, err);
    // Pieces too narrow to split any further.
    let mut frozen = 0.0;
    while total_err > abs_tol.max(rel_tol * total.abs()) && heap.len() < MAX_INTERVALS {
        let Some(worst) = heap.pop() else { break };
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            frozen += worst.value;
            total_err -= worst.err;
            continue;
        }
        let (v1, e1) = gk15(&f, worst.a, mid);
        let (v2, e2) = gk15(&f, mid, worst.b);
        heap.push(Piece { a: worst.a, b: mid, value: v1, err: e1 });
        heap.push(Piece { a: mid, b: worst.b, value: v2, err: e2 });
        total += v1 + v2 - worst.value;
        total_err += e1 + e2 - worst.err;
    }
    frozen + heap.iter().map(|p| p.value).sum::<f64>()
}

/// Like [`integrate`], but splits `[a, b]` at every interior point of `breaks`
/// (points outside the interval are ignored). Use for integrands with kinks.
pub fn integrate_with_breaks<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    breaks: &[f64],
    abs_tol: f64,
    rel_tol: f64,
) -> f64 {
    let mut points: Vec<f64> = breaks.iter().copied().filter(|&p| p > a && p < b).collect();
    points.sort_by(|x, y| x.partial_cmp(y).unwrap());
    points.dedup();
    let mut edges = Vec::with_capacity(points.len() + 2);
    edges.push(a);
    edges.extend(points);
    edges.push(b);
    edges
        .windows(2)
        .map(|w| integrate(&f, w[0], w[1], abs_tol, rel_tol))
        .sum()
}

/// Iterated adaptive integral of `f(x, y)` over `x ∈ [ax, bx]`, `y ∈ [ay, by]`.
pub fn integrate_2d<F: Fn(f64, f64) -> f64>(
    f: F,
    (ax, bx): (f64, f64),
    (ay, by): (f64, f64),
    rel_tol: f64,
) -> f64 {
    integrate(
        |x| integrate(|y| f(x, y), ay, by, 0.0, rel_tol * 0.1),
        ax,
        bx,
        0.0,
        rel_tol,
    )
}

/// Catalan's constant as ∫₀¹ atan(t)/t dt.
pub fn catalan() -> f64 {
    integrate(
        |t: f64| if t == 0.0 { 1.0 } else { t.atan() / t },
        0.0,
        1.0,
        0.0,
        1e-15,
    )
}

/// ∫₀^z atan(t)/t dt by direct quadrature.
pub fn inverse_tangent_integral(z: f64) -> f64 {
    integrate(
        |t: f64| if t == 0.0 { 1.0 } else { t.atan() / t },
        0.0,
        z,
        0.0,
        1e-15,
    )
}

/// −∫₀^x ln(1−t)/t dt.
///
/// Above `t = 1/2` the integral is taken in `s = 1 − t` so the logarithmic
/// singularity at `t = 1` sits at an exactly representable `s = 0`.
pub fn dilogarithm(x: f64) -> f64 {
    let f = |t: f64| if t == 0.0 { 1.0 } else { -(-t).ln_1p() / t };
    if x <= 0.5 {
        return integrate(f, 0.0, x, 0.0, 1e-15);
    }
    integrate(f, 0.0, 0.5, 0.0, 1e-15)
        + integrate(|s: f64| -s.ln() / (1.0 - s), 1.0 - x, 0.5, 0.0, 1e-15)
}

/// Global maximizer of `f` on `[lo, hi]`.
///
/// Evaluates `f` on a uniform grid of `grid + 1` points, then shrinks the
/// bracket around the best grid point by ternary search. Assumes the grid is fine
/// enough that the global maximum lies within one cell of the best sample.
pub fn argmax_1d<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, grid: usize) -> f64 {
    let step = (hi - lo) / grid as f64;
    let mut best = lo;
    let mut best_val = f(lo);
    for i in 1..=grid {
        let x = lo + step * i as f64;
        let v = f(x);
        if v > best_val {
            best_val = v;
            best = x;
        }
    }
    let mut a = (best - step).max(lo);
    let mut b = (best + step).min(hi);
    for _ in 0..200 {
        let m1 = a + (b - a) / 3.0;
        let m2 = b - (b - a) / 3.0;
        if f(m1) < f(m2) {
            a = m1;
        } else {
            b = m2;
        }
        if b - a < 1e-13 {
            break;
        }
    }
    let mid = 0.5 * (a + b);
    // The bracket may end at a boundary maximum.
    [lo, hi, mid]
        .into_iter()
        .max_by(|x, y| f(*x).partial_cmp(&f(*y)).unwrap())
        .unwrap()
}
