//! Bracketed one-dimensional minimization.

/// `1/φ` where `φ` is the golden ratio.
const INV_PHI: f64 = 0.618_033_988_749_894_848_204_586_834_365_638_118;

/// Minimizes a unimodal `f` on `[lo, hi]` by golden-section search.
///
/// Returns the midpoint of the final bracket once its width drops below `abs_tol`.
pub fn golden_section_min<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64, abs_tol: f64) -> f64 {
    let (mut a, mut b) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    // Each step shrinks the bracket by 1/φ; 200 steps is far beyond f64 resolution.
    for _ in 0..200 {
        if b - a <= abs_tol {
            break;
        }
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}
