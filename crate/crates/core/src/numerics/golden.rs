//! Golden-section minimization on a bracketing interval.

/// 1/φ² = (3 − √5)/2, the golden-section interior fraction.
const INV_PHI2: f64 = 0.381_966_011_250_105_15;

/// Minimizes a unimodal `f` on [a, b] to absolute x-tolerance `xtol`.
///
/// Returns the best evaluated point and its value.  On non-unimodal input
/// this still converges, just to some local minimum inside the bracket, so
/// callers that cannot prove unimodality should seed the bracket from a scan.
///
/// Comparison-based search cannot localize a smooth minimum in x better
/// than about √ε_machine times the problem scale, because f is constant to
/// rounding on that plateau; the *value* returned is nevertheless accurate
/// to O(ε_machine) since f is flat to second order there.  Requesting a
/// tighter `xtol` is harmless but buys nothing beyond the plateau edge.
pub fn golden_min(f: &dyn Fn(f64) -> f64, a: f64, b: f64, xtol: f64) -> (f64, f64) {
    let (mut lo, mut hi) = if a < b { (a, b) } else { (b, a) };
    let mut x1 = lo + INV_PHI2 * (hi - lo);
    let mut x2 = hi - INV_PHI2 * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    // Enough iterations to shrink any sensible bracket below xtol; the loop
    // also exits early once the bracket is tight.
    for _ in 0..200 {
        if hi - lo <= xtol {
            break;
        }
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = lo + INV_PHI2 * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = hi - INV_PHI2 * (hi - lo);
            f2 = f(x2);
        }
    }
    if f1 <= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_minimum_found() {
        // x is only localizable to the √ε plateau (~2e-8 here); the value is
        // ε-accurate because the quadratic is flat to second order.
        let (x, fx) = golden_min(&|x| (x - 1.25) * (x - 1.25) + 3.0, 0.0, 4.0, 1e-12);
        assert!((x - 1.25).abs() < 1e-7, "got {x}");
        assert!((fx - 3.0).abs() < 1e-15);
    }

    #[test]
    fn works_with_reversed_bracket() {
        let (x, fx) = golden_min(&|x: f64| x.cosh(), 2.0, -1.0, 1e-12);
        assert!(x.abs() < 1e-7, "got {x}");
        assert!((fx - 1.0).abs() < 1e-15);
    }
}
