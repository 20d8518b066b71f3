//! Adaptive Gauss–Kronrod quadrature (G7–K15 panels, worst-first bisection).
//!
//! Each panel is evaluated with the 15-point Kronrod rule; the embedded
//! 7-point Gauss value provides the error estimate |K15 − G7|.  Refinement
//! is global: the panel with the largest error estimate is bisected until
//! the summed estimate drops below the tolerance.  The tolerance is taken
//! relative to the accumulated L¹-type scale Σ|panelᵢ| rather than to the
//! (possibly cancelling) signed total, since roundoff alone contributes
//! ε·Σ|panelᵢ| and nothing below that is meaningful.  Panels too narrow to
//! own a representable midpoint are finalized as they stand.

use std::collections::BinaryHeap;

use crate::{Error, Result};

// 15-point Kronrod abscissae on [0, 1] side of the symmetric rule.
const XGK: [f64; 8] = [
    0.0,
    0.207784955007898467600689403773245,
    0.405845151377397166906606412076961,
    0.586087235467691130294144838258730,
    0.741531185599394439863864773280788,
    0.864864423359769072789712788640926,
    0.949107912342758524526189684047851,
    0.991455371120812639206854697526329,
];

// Kronrod weights for the nodes above (shared by the mirrored node).
const WGK: [f64; 8] = [
    0.209482141084727828012999174891714,
    0.204432940075298892414161999234649,
    0.190350578064785409913256402421014,
    0.169004726639267902826583426598550,
    0.140653259715525918745189590510238,
    0.104790010322250183839876322541518,
    0.063092092629978553290700663189204,
    0.022935322010529224963732008058970,
];

// 7-point Gauss weights, for the even-index Kronrod nodes (0, 2, 4, 6).
const WG: [f64; 4] = [
    0.417959183673469387755102040816327,
    0.381830050505118944950369775488975,
    0.279705391489276667901467771423780,
    0.129484966168869693270611432679082,
];

const MAX_PANELS: usize = 4096;

#[derive(Debug, Clone, Copy)]
pub struct QuadResult {
    pub value: f64,
    pub error_estimate: f64,
    pub panels: usize,
}

struct Seg {
    err: f64,
    a: f64,
    b: f64,
    value: f64,
}

impl PartialEq for Seg {
    fn eq(&self, other: &Self) -> bool {
        self.err.total_cmp(&other.err).is_eq()
    }
}
impl Eq for Seg {}
impl PartialOrd for Seg {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Seg {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.err.total_cmp(&other.err)
    }
}

/// Integrates `f` over [a, b] until the error estimate drops below
/// `rel_tol` times the accumulated panel scale or below `abs_tol`,
/// whichever is larger.
///
/// `abs_tol` exists for integrands that vanish identically up to rounding
/// noise: such noise cannot be integrated to any relative accuracy, so the
/// caller must say what "zero" means on its problem scale.  Pass 0.0 when
/// the integrand has genuine magnitude.
pub fn integrate(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    rel_tol: f64,
    abs_tol: f64,
) -> Result<QuadResult> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::InvalidInput("non-finite integration limits".into()));
    }
    if !(abs_tol >= 0.0 && abs_tol.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "absolute tolerance must be nonnegative and finite, got {abs_tol}"
        )));
    }
    if a == b {
        return Ok(QuadResult {
            value: 0.0,
            error_estimate: 0.0,
            panels: 0,
        });
    }
    let (lo, hi, sign) = if a < b { (a, b, 1.0) } else { (b, a, -1.0) };

    let mut live = BinaryHeap::new();
    let mut finalized: Vec<Seg> = Vec::new();
    let (v0, e0) = panel(f, lo, hi);
    live.push(Seg { err: e0, a: lo, b: hi, value: v0 });
    let mut panels = 1usize;

    loop {
        let mut value = 0.0f64;
        let mut scale = 0.0f64;
        let mut err = 0.0f64;
        for seg in live.iter().chain(finalized.iter()) {
            value += seg.value;
            scale += seg.value.abs();
            err += seg.err;
        }
        let tol = (rel_tol * scale.max(1e-300) + 1e-305).max(abs_tol);
        if err <= tol {
            return Ok(QuadResult {
                value: sign * value,
                error_estimate: err,
                panels,
            });
        }
        if panels >= MAX_PANELS {
            return Err(Error::Convergence(format!(
                "quadrature failed to converge on [{lo}, {hi}] after {panels} panels \
                 (error {err:.2e} > tolerance {tol:.2e})"
            )));
        }
        let Some(worst) = live.pop() else {
            return Err(Error::Convergence(format!(
                "quadrature stuck at floating-point resolution on [{lo}, {hi}] \
                 (error {err:.2e} > tolerance {tol:.2e})"
            )));
        };
        let mid = 0.5 * (worst.a + worst.b);
        if !(worst.a < mid && mid < worst.b) {
            finalized.push(worst);
            continue;
        }
        let (vl, el) = panel(f, worst.a, mid);
        let (vr, er) = panel(f, mid, worst.b);
        panels += 2;
        live.push(Seg { err: el, a: worst.a, b: mid, value: vl });
        live.push(Seg { err: er, a: mid, b: worst.b, value: vr });
    }
}

/// One G7–K15 panel: returns (Kronrod value, |Kronrod − Gauss|).
fn panel(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let half = 0.5 * (b - a);
    let center = 0.5 * (a + b);
    let fc = f(center);
    let mut kron = WGK[0] * fc;
    let mut gauss = WG[0] * fc;
    for j in 1..8 {
        let x = half * XGK[j];
        let fsum = f(center - x) + f(center + x);
        kron += WGK[j] * fsum;
        if j % 2 == 0 {
            gauss += WG[j / 2] * fsum;
        }
    }
    (kron * half, ((kron - gauss) * half).abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_is_exact() {
        // K15 integrates degree-22 polynomials exactly; this one is easy.
        let r = integrate(&|x| 3.0 * x * x, 0.0, 2.0, 1e-12, 0.0).unwrap();
        assert!((r.value - 8.0).abs() < 1e-13);
    }

    #[test]
    fn oscillatory_integrand_converges() {
        let r = integrate(&|x: f64| (10.0 * x).sin(), 0.0, std::f64::consts::PI, 1e-11, 0.0).unwrap();
        let exact = (1.0 - (10.0 * std::f64::consts::PI).cos()) / 10.0;
        assert!((r.value - exact).abs() < 1e-10, "got {}", r.value);
    }

    #[test]
    fn reversed_limits_flip_sign() {
        let fwd = integrate(&|x: f64| x.exp(), 0.0, 1.0, 1e-12, 0.0).unwrap();
        let rev = integrate(&|x: f64| x.exp(), 1.0, 0.0, 1e-12, 0.0).unwrap();
        assert!((fwd.value + rev.value).abs() < 1e-13);
    }

    #[test]
    fn mildly_singular_derivative_is_fine() {
        // sqrt has unbounded derivative at 0 but the nodes never hit it.
        let r = integrate(&|x: f64| x.sqrt(), 0.0, 1.0, 1e-10, 0.0).unwrap();
        assert!((r.value - 2.0 / 3.0).abs() < 1e-9);
    }

    #[test]
    fn noise_level_integrand_needs_an_absolute_tolerance() {
        // (x·(1/x))·x − x is zero up to rounding, so the integrand is pure
        // noise: relative tolerance alone must refuse, an absolute one
        // accepts with a value below it.
        let noise = |x: f64| (x * (1.0 / x)) * x - x;
        assert!(integrate(&noise, 0.5, 2.0, 1e-10, 0.0).is_err());
        let r = integrate(&noise, 0.5, 2.0, 1e-10, 1e-12).unwrap();
        assert!(r.value.abs() <= 1e-12, "got {}", r.value);
    }

    #[test]
    fn rejects_bad_absolute_tolerance() {
        assert!(integrate(&|x| x, 0.0, 1.0, 1e-10, -1.0).is_err());
        assert!(integrate(&|x| x, 0.0, 1.0, 1e-10, f64::NAN).is_err());
    }
}
