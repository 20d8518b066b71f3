//! Radial comparison kernels and their optimization in the collar depth δ.
//!
//! Everything here is a scalar function of the depth δ at which a collar
//! test function is cut off.  The basic object is the kernel
//!
//! ```text
//! E(δ) = n · (β² tan(βδ) + β𝒦) / (β − 𝒦 tan(βδ)) + 1/δ        (β > 0)
//! E(δ) = n · 𝒦 / (1 − 𝒦δ) + 1/δ                               (β = 0)
//! ```
//!
//! valid for 0 < δ < arctan(β/𝒦)/β (resp. 1/𝒦): the first summand is −n
//! times the comparison principal curvature of the parallel hypersurface at
//! depth δ under Sec ≤ β² and boundary principal curvatures ≤ 𝒦, and 1/δ is
//! the cutoff's gradient cost.  The variant P uses a mean-curvature
//! comparison instead and drops the factor n, with parameters (b, ℋ).
//! Derived combinations: F = 2E − nκ, Q = 2P − nκ, T = 2E − h.
//!
//! E and P are strictly convex on their branch (substituting u = tan(βδ)
//! writes the curvature summand as a convex increasing function of a convex
//! function, and 1/δ is convex), which is what licenses golden-section
//! refinement after a coarse bracketing scan in [`optimize_delta`].

use crate::numerics::golden::golden_min;
use crate::{Error, Result};

/// Relative margin around a kernel's branch singularity: depths beyond
/// (1 − guard) times the branch supremum are refused as domain errors.
/// A relative margin keeps the guarded window covariant under rescaling.
pub const SINGULARITY_GUARD: f64 = 1e-12;

/// δ-tolerance of the minimizer search, relative to the window supremum so
/// the search is covariant under metric rescaling.
pub const DELTA_TOL: f64 = 1e-10;

const SCAN_POINTS: usize = 64;

/// Supremum of admissible depths: min{r, arctan(β/𝒦)/β} for β > 0 and
/// min{r, 1/𝒦} for β = 0.
pub fn delta_sup(r: f64, beta: f64, big_k: f64) -> Result<f64> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::InvalidInput(format!("collar depth r must be positive, got {r}")));
    }
    Ok(r.min(branch_sup(beta, big_k)?))
}

/// The branch singularity of the (β, 𝒦) comparison alone, ignoring r.
pub fn branch_sup(beta: f64, big_k: f64) -> Result<f64> {
    if !(big_k > 0.0 && big_k.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "curvature upper bound must be positive, got {big_k}"
        )));
    }
    if !(beta >= 0.0 && beta.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "comparison rate must be nonnegative, got {beta}"
        )));
    }
    Ok(if beta > 0.0 {
        (beta / big_k).atan() / beta
    } else {
        1.0 / big_k
    })
}

/// Shared branch evaluation: weight · (curvature comparison) + 1/δ.
fn branch_value(weight: f64, beta: f64, big_k: f64, delta: f64) -> Result<f64> {
    let sup = branch_sup(beta, big_k)?;
    if !(delta > 0.0) {
        return Err(Error::Domain(format!("depth must be positive, got {delta}")));
    }
    if delta > sup * (1.0 - SINGULARITY_GUARD) {
        return Err(Error::Domain(format!(
            "depth {delta} at or beyond the branch singularity {sup}"
        )));
    }
    let frac = if beta > 0.0 {
        let tn = (beta * delta).tan();
        (beta * beta * tn + beta * big_k) / (beta - big_k * tn)
    } else {
        big_k / (1.0 - big_k * delta)
    };
    Ok(weight * frac + 1.0 / delta)
}

/// Principal-curvature comparison kernel E (weight n, parameters β, 𝒦).
pub fn kernel_e(delta: f64, n: u32, beta: f64, big_k: f64) -> Result<f64> {
    if n < 1 {
        return Err(Error::InvalidInput("boundary dimension n must be >= 1".into()));
    }
    branch_value(n as f64, beta, big_k, delta)
}

/// Mean-curvature comparison kernel P (weight 1, parameters b, ℋ).
pub fn kernel_p(delta: f64, b: f64, big_h: f64) -> Result<f64> {
    branch_value(1.0, b, big_h, delta)
}

/// F(δ) = 2 E(δ) − nκ.
pub fn kernel_f(delta: f64, n: u32, beta: f64, big_k: f64, kappa: f64) -> Result<f64> {
    Ok(2.0 * kernel_e(delta, n, beta, big_k)? - n as f64 * kappa)
}

/// Q(δ) = 2 P(δ) − nκ.
pub fn kernel_q(delta: f64, b: f64, big_h: f64, n: u32, kappa: f64) -> Result<f64> {
    Ok(2.0 * kernel_p(delta, b, big_h)? - n as f64 * kappa)
}

/// T(δ) = 2 E(δ) − h.
pub fn kernel_t(delta: f64, n: u32, beta: f64, big_k: f64, h: f64) -> Result<f64> {
    Ok(2.0 * kernel_e(delta, n, beta, big_k)? - h)
}

/// A kernel to minimize over δ, with its parameters fixed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RadialKernel {
    E { n: u32, beta: f64, big_k: f64 },
    P { b: f64, big_h: f64 },
}

impl RadialKernel {
    pub fn eval(&self, delta: f64) -> Result<f64> {
        match *self {
            RadialKernel::E { n, beta, big_k } => kernel_e(delta, n, beta, big_k),
            RadialKernel::P { b, big_h } => kernel_p(delta, b, big_h),
        }
    }

    pub fn branch_sup(&self) -> Result<f64> {
        match *self {
            RadialKernel::E { beta, big_k, .. } => branch_sup(beta, big_k),
            RadialKernel::P { b, big_h } => branch_sup(b, big_h),
        }
    }

    /// Exact interior minimizer when the comparison rate vanishes:
    /// δ* = 1/(𝒦(1+√n)) for E with β = 0, δ* = 1/(2ℋ) for P with b = 0.
    fn closed_form_minimizer(&self) -> Option<f64> {
        match *self {
            RadialKernel::E { n, beta, big_k } if beta == 0.0 => {
                Some(1.0 / (big_k * (1.0 + (n as f64).sqrt())))
            }
            RadialKernel::P { b, big_h } if b == 0.0 => Some(1.0 / (2.0 * big_h)),
            _ => None,
        }
    }
}

/// Minimizes `kernel` over 0 < δ < min(window_sup, branch sup).
///
/// Returns (δ*, kernel(δ*)).  The rate-zero cases use their closed-form
/// minimizer directly; otherwise a 64-point scan brackets the valley and
/// golden-section refines it to [`DELTA_TOL`].  When the window truncates
/// the kernel before its interior minimum, the near-endpoint value is
/// returned (the infimum over the open window is then not attained).
pub fn optimize_delta(kernel: &RadialKernel, window_sup: f64) -> Result<(f64, f64)> {
    if let RadialKernel::E { n: 0, .. } = kernel {
        return Err(Error::InvalidInput("boundary dimension n must be >= 1".into()));
    }
    if !(window_sup > 0.0 && window_sup.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "window supremum must be positive and finite, got {window_sup}"
        )));
    }
    let sup = window_sup.min(kernel.branch_sup()?);
    if sup <= 64.0 * SINGULARITY_GUARD {
        return Err(Error::Domain(format!("admissible window (0, {sup}) is too thin")));
    }

    // Multiplicative backoff keeps the clipped point inside the open window
    // and makes it scale exactly with the window under metric rescaling.
    let clip = |x: f64| x * (1.0 - 1e-12);

    if let Some(star) = kernel.closed_form_minimizer() {
        let star = if star < sup { star } else { clip(sup) };
        return Ok((star, kernel.eval(star)?));
    }

    // Bracket scan.  E is strictly convex on the branch so there is exactly
    // one valley, but the fallback handles any grid shape defensively.
    let grid: Vec<f64> = (1..=SCAN_POINTS)
        .map(|i| sup * i as f64 / (SCAN_POINTS + 1) as f64)
        .collect();
    let vals: Vec<f64> = grid
        .iter()
        .map(|&d| kernel.eval(d))
        .collect::<Result<_>>()?;

    let mut best: Option<(f64, f64)> = None;
    for m in 0..grid.len() {
        let left_ok = m == 0 || vals[m] <= vals[m - 1];
        let right_ok = m + 1 == grid.len() || vals[m] <= vals[m + 1];
        if !(left_ok && right_ok) {
            continue; // not a grid-local minimum
        }
        let lo = if m > 0 { grid[m - 1] } else { grid[m] * 0.5 };
        let hi = if m + 1 < grid.len() {
            grid[m + 1]
        } else {
            clip(0.5 * (grid[m] + sup))
        };
        let clamp = |x: f64| x.clamp(lo, hi);
        let obj = |d: f64| kernel.eval(clamp(d)).unwrap_or(f64::INFINITY);
        let (x, fx) = golden_min(&obj, lo, hi, DELTA_TOL * sup);
        if best.map_or(true, |(_, fb)| fx < fb) {
            best = Some((clamp(x), fx));
        }
    }
    let (star, val) = best.expect("scan grid is nonempty");
    // A window that cuts the valley off leaves the best grid value at the
    // right edge; return the near-endpoint point explicitly in that case.
    let edge = clip(sup);
    let edge_val = kernel.eval(edge)?;
    if edge_val < val {
        return Ok((edge, edge_val));
    }
    Ok((star, val))
}

#[cfg(test)]
mod tests {
    use super::*;

    const PI: f64 = std::f64::consts::PI;

    #[test]
    fn delta_sup_takes_the_smaller_of_radius_and_branch() {
        assert_eq!(delta_sup(1.0, 0.0, 1.0).unwrap(), 1.0);
        assert_eq!(delta_sup(2.0, 0.0, 1.0).unwrap(), 1.0);
        assert_eq!(delta_sup(0.5, 0.0, 1.0).unwrap(), 0.5);
        assert!((delta_sup(1.0, 1.0, 1.0).unwrap() - PI / 4.0).abs() < 1e-15);
        assert_eq!(delta_sup(0.2, 1.0, 1.0).unwrap(), 0.2);
        let d = delta_sup(1.0, 2.0, 1.0).unwrap();
        assert!((d - 2.0f64.atan() / 2.0).abs() < 1e-15);
    }

    #[test]
    fn delta_sup_is_continuous_at_vanishing_rate() {
        let base = delta_sup(10.0, 0.0, 2.0).unwrap();
        let near = delta_sup(10.0, 1e-8, 2.0).unwrap();
        assert!((base - near).abs() < 1e-12);
    }

    #[test]
    fn kernel_e_matches_hand_values() {
        // n = 2, β = 0, 𝒦 = 1 at δ = 1/2: 2/(1 − 1/2) + 2 = 6.
        assert!((kernel_e(0.5, 2, 0.0, 1.0).unwrap() - 6.0).abs() < 1e-14);
        // Interior minimum value (1 + √2)² at δ = 1/(1 + √2).
        let s = 1.0 + 2.0f64.sqrt();
        assert!((kernel_e(1.0 / s, 2, 0.0, 1.0).unwrap() - s * s).abs() < 1e-13);
        // n = 2, β = 𝒦 = 1 at δ = π/8: 2·tan(3π/8) + 8/π, and tan(3π/8) = 1 + √2.
        let v = kernel_e(PI / 8.0, 2, 1.0, 1.0).unwrap();
        assert!((v - (2.0 * s + 8.0 / PI)).abs() < 1e-12, "got {v}");
    }

    #[test]
    fn kernel_domain_errors() {
        assert!(kernel_e(0.0, 2, 0.0, 1.0).is_err());
        assert!(kernel_e(-0.1, 2, 0.0, 1.0).is_err());
        assert!(kernel_e(1.0, 2, 0.0, 1.0).is_err()); // at the 1/𝒦 singularity
        assert!(kernel_e(PI / 4.0, 2, 1.0, 1.0).is_err()); // at arctan(β/𝒦)/β
        assert!(kernel_e(PI / 4.0 - 1e-13, 2, 1.0, 1.0).is_err()); // inside the guard
        assert!(kernel_e(PI / 4.0 - 1e-6, 2, 1.0, 1.0).is_ok());
        assert!(kernel_e(0.5, 2, 0.0, -1.0).is_err()); // 𝒦 must be positive
    }

    #[test]
    fn kernel_e_blows_up_at_both_ends() {
        let (star, at_star) = optimize_delta(
            &RadialKernel::E { n: 2, beta: 1.0, big_k: 1.0 },
            PI / 4.0,
        )
        .unwrap();
        let near_zero = kernel_e(PI / 4.0 * 1e-9, 2, 1.0, 1.0).unwrap();
        let near_sup = kernel_e(PI / 4.0 * (1.0 - 1e-9), 2, 1.0, 1.0).unwrap();
        assert!(near_zero > at_star + 1e6);
        assert!(near_sup > at_star + 1e6);
        assert!(star > 0.0 && star < PI / 4.0);
    }

    #[test]
    fn derived_kernels_are_affine_in_e_and_p() {
        let e = kernel_e(0.3, 3, 0.5, 1.2).unwrap();
        assert!((kernel_f(0.3, 3, 0.5, 1.2, 0.7).unwrap() - (2.0 * e - 3.0 * 0.7)).abs() < 1e-14);
        assert!((kernel_t(0.3, 3, 0.5, 1.2, 1.9).unwrap() - (2.0 * e - 1.9)).abs() < 1e-14);
        let p = kernel_p(0.3, 0.5, 1.2).unwrap();
        assert!((kernel_q(0.3, 0.5, 1.2, 3, 0.7).unwrap() - (2.0 * p - 3.0 * 0.7)).abs() < 1e-14);
        // P is E without the dimension weight.
        assert!((kernel_p(0.3, 0.5, 1.2).unwrap() - kernel_e(0.3, 1, 0.5, 1.2).unwrap()).abs() < 1e-14);
    }

    #[test]
    fn kernel_q_hand_value() {
        // b = 0, ℋ = 2, δ = 1/4: P = 2/(1 − 1/2) + 4 = 8, Q = 16 − 2 = 14.
        assert!((kernel_p(0.25, 0.0, 2.0).unwrap() - 8.0).abs() < 1e-14);
        assert!((kernel_q(0.25, 0.0, 2.0, 2, 1.0).unwrap() - 14.0).abs() < 1e-14);
    }

    #[test]
    fn optimize_rate_zero_closed_forms() {
        for n in [2u32, 4, 9, 100] {
            let rn = (n as f64).sqrt();
            let k = RadialKernel::E { n, beta: 0.0, big_k: 1.0 };
            let (star, val) = optimize_delta(&k, 1.0).unwrap();
            assert!((star - 1.0 / (1.0 + rn)).abs() < 1e-15, "n = {n}");
            assert!((val - (1.0 + rn) * (1.0 + rn)).abs() < 1e-12, "n = {n}");
            // δ* = (√n − 1)/(n − 1) is the same point written with a
            // rationalized denominator; check the identity numerically.
            if n > 1 {
                let alt = (rn - 1.0) / (n as f64 - 1.0);
                assert!((star - alt).abs() < 1e-15);
            }
        }
        let p = RadialKernel::P { b: 0.0, big_h: 2.0 };
        let (star, val) = optimize_delta(&p, 0.5).unwrap();
        assert!((star - 0.25).abs() < 1e-15);
        assert!((val - 8.0).abs() < 1e-13);
    }

    #[test]
    fn optimize_clips_to_a_narrow_window() {
        let k = RadialKernel::E { n: 2, beta: 0.0, big_k: 1.0 };
        let (star, val) = optimize_delta(&k, 0.2).unwrap();
        assert!(star < 0.2 && star > 0.2 * (1.0 - 1e-11));
        assert!((val - kernel_e(star, 2, 0.0, 1.0).unwrap()).abs() == 0.0);
        // The clipped value sits just above the one-sided infimum E(0.2⁻).
        assert!((val - (2.0 / 0.8 + 5.0)).abs() < 1e-8);
    }

    #[test]
    fn optimize_positive_rate_agrees_with_dense_scan() {
        // Independent oracle: dense grid scan plus local parabolic refinement.
        let k = RadialKernel::E { n: 1, beta: 1.0, big_k: 1.0 };
        let sup = PI / 4.0;
        let m = 1 << 20;
        let mut best_i = 1usize;
        let mut best_v = f64::INFINITY;
        for i in 1..m {
            let d = sup * i as f64 / m as f64;
            let v = kernel_e(d, 1, 1.0, 1.0).unwrap();
            if v < best_v {
                best_v = v;
                best_i = i;
            }
        }
        let scan_star = sup * best_i as f64 / m as f64;
        let (star, val) = optimize_delta(&k, sup).unwrap();
        assert!((star - scan_star).abs() < 2.0 * sup / m as f64, "{star} vs {scan_star}");
        assert!(val <= best_v + 1e-12);
        assert!((val - best_v).abs() < 1e-9);
    }

    #[test]
    fn optimize_rejects_bad_windows() {
        let k = RadialKernel::E { n: 2, beta: 0.0, big_k: 1.0 };
        assert!(optimize_delta(&k, 0.0).is_err());
        assert!(optimize_delta(&k, f64::INFINITY).is_err());
        assert!(optimize_delta(&k, 1e-11).is_err());
    }
}
