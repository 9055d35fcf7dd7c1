//! Bracketed scalar maximization.

/// Location and value of a maximum.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Maximum {
    pub arg: f64,
    pub value: f64,
}

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section search for the maximum of a unimodal `f` on `[lo, hi]`,
/// stopping once the bracket is narrower than `tol`.
pub fn golden_section_max<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, tol: f64) -> Maximum {
    let (mut a, mut b) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    // each step shrinks the bracket by 1/φ, so this bound is never reached
    // for any sane tolerance
    for _ in 0..200 {
        if b - a <= tol {
            break;
        }
        if fc >= fd {
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
    let mut best = if fc >= fd { Maximum { arg: c, value: fc } } else { Maximum { arg: d, value: fd } };
    for x in [a, b] {
        let v = f(x);
        if v > best.value {
            best = Maximum { arg: x, value: v };
        }
    }
    best
}

/// Evaluates `f` on `points + 1` evenly spaced nodes of `[lo, hi]`, then
/// refines around the best node with golden-section search.
pub fn coarse_then_refine<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, points: usize, tol: f64) -> Maximum {
    let points = points.max(2);
    let h = (hi - lo) / points as f64;
    let mut best_i = 0;
    let mut best_v = f(lo);
    for i in 1..=points {
        let v = f(lo + h * i as f64);
        if v > best_v {
            best_v = v;
            best_i = i;
        }
    }
    let left = lo + h * best_i.saturating_sub(1) as f64;
    let right = (lo + h * (best_i + 1) as f64).min(hi);
    let refined = golden_section_max(&f, left, right, tol);
    let node = Maximum { arg: lo + h * best_i as f64, value: best_v };
    if refined.value >= node.value {
        refined
    } else {
        node
    }
}
