//! Exhaustive grid search, deliberately independent of the golden-section
//! optimizer used by the closed-form side.

use crate::optimize::Maximum;

/// Evaluates `curve` on `lo, lo + step, …` up to and including `hi` and
/// returns the best node. Ties resolve to the smallest argument.
///
/// # Panics
///
/// If `lo >= hi` or `step <= 0`.
pub fn grid_argmax<F: Fn(f64) -> f64>(curve: F, lo: f64, hi: f64, step: f64) -> Maximum {
    assert!(lo < hi, "grid needs lo < hi");
    assert!(step > 0.0, "grid step must be positive");
    let count = libm::floor((hi - lo) / step + 1e-9) as usize;
    let mut best = Maximum { arg: lo, value: curve(lo) };
    for i in 1..=count {
        let x = (lo + step * i as f64).min(hi);
        let v = curve(x);
        if v > best.value {
            best = Maximum { arg: x, value: v };
        }
    }
    if lo + step * (count as f64) < hi {
        let v = curve(hi);
        if v > best.value {
            best = Maximum { arg: hi, value: v };
        }
    }
    best
}

/// [`grid_argmax`] followed by repeated zooming: each round re-grids the two
/// cells around the incumbent at a tenth of the step, until the step drops
/// below `tol`.
pub fn grid_argmax_refined<F: Fn(f64) -> f64>(curve: F, lo: f64, hi: f64, step: f64, tol: f64) -> Maximum {
    let mut best = grid_argmax(&curve, lo, hi, step);
    let mut step = step;
    while step > tol {
        let a = (best.arg - step).max(lo);
        let b = (best.arg + step).min(hi);
        step /= 10.0;
        if a >= b {
            break;
        }
        let zoomed = grid_argmax(&curve, a, b, step);
        if zoomed.value > best.value || (zoomed.value == best.value && zoomed.arg < best.arg) {
            best = zoomed;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn constant_curve_ties_to_smallest() {
        let m = grid_argmax(|_| 1.0, 0.0, 1.0, 0.1);
        assert_eq!(m.arg, 0.0);
        let m = grid_argmax_refined(|_| 1.0, 0.0, 1.0, 0.1, 1e-10);
        assert_eq!(m.arg, 0.0);
    }

    #[test]
    fn includes_upper_end() {
        let m = grid_argmax(|x| x, 0.0, 1.0, 0.3);
        assert_eq!(m.arg, 1.0);
        let m = grid_argmax(|x| x, 0.0, 1.0, 0.1);
        assert_abs_diff_eq!(m.arg, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn refinement_reaches_tolerance() {
        let f = |x: f64| -(x - 0.123456789) * (x - 0.123456789);
        let coarse = grid_argmax(f, 0.0, 1.0, 1e-2);
        assert_abs_diff_eq!(coarse.arg, 0.12, epsilon = 1e-12);
        let fine = grid_argmax_refined(f, 0.0, 1.0, 1e-2, 1e-10);
        assert_abs_diff_eq!(fine.arg, 0.123456789, epsilon = 1e-9);
    }
}
