//! Boundary location by bisection.

/// Locates the switch point of a predicate that holds at `lo` and fails at
/// `hi`, to within `tol`. Returns the midpoint of the final bracket.
///
/// # Panics
///
/// If the predicate does not hold at `lo` or holds at `hi`.
pub fn bisect_boundary<P: Fn(f64) -> bool>(pred: P, lo: f64, hi: f64, tol: f64) -> f64 {
    assert!(pred(lo), "predicate must hold at the lower end");
    assert!(!pred(hi), "predicate must fail at the upper end");
    let (mut a, mut b) = (lo, hi);
    while b - a > tol {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        if pred(mid) {
            a = mid;
        } else {
            b = mid;
        }
    }
    0.5 * (a + b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn finds_square_root() {
        let r = bisect_boundary(|x| x * x <= 2.0, 0.0, 2.0, 1e-14);
        assert_abs_diff_eq!(r, core::f64::consts::SQRT_2, epsilon = 1e-13);
    }

    #[test]
    fn stops_at_float_resolution() {
        let r = bisect_boundary(|x| x < 1.0, 0.0, 2.0, 0.0);
        assert_abs_diff_eq!(r, 1.0, epsilon = 1e-15);
    }

    #[test]
    #[should_panic(expected = "lower end")]
    fn rejects_bad_bracket() {
        bisect_boundary(|x| x > 1.0, 0.0, 2.0, 1e-6);
    }
}
