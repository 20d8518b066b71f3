//! Closed-form and numerical solutions of the radial Riccati comparison
//! equation y' = −(y² + c), which governs the normal derivative of the
//! distance-to-boundary function along inward geodesics.
//!
//! Two one-parameter families matter here.  With an upper curvature rate
//! (c = β² ≥ 0) and initial slope −𝒦 (𝒦 > 0 a principal-curvature upper
//! bound) the solution is
//!
//! ```text
//! φ(t) = −(β² tan(βt) + β𝒦) / (β − 𝒦 tan(βt))      (β > 0)
//! φ(t) = −𝒦 / (1 − 𝒦t)                              (β = 0)
//! ```
//!
//! blowing up to −∞ at arctan(β/𝒦)/β resp. 1/𝒦.  With a lower rate
//! (c = −α² ≤ 0) and initial slope −κ the solution ψ decreases when
//! κ > α ≥ 0 and blows up at arctanh(α/κ)/α (1/κ for α = 0); at α = κ it
//! sits at the equilibrium −κ forever.  The regime α > κ is rejected: the
//! comparison arguments built on ψ need the initial slope to dominate the
//! curvature rate.
//!
//! `integrate_riccati` solves the same equation numerically and is kept
//! independent of the closed forms so the two can cross-check each other.

use crate::geometry::GeometricData;
use crate::kernel::{branch_sup, delta_sup};
use crate::numerics::ode::{integrate_with_halt, OdeOptions};
use crate::{Error, Result};

/// Magnitude at which a numerical Riccati solution counts as blown up.
const BLOW_UP: f64 = 1e12;

/// Upper-rate comparison solution φ(t) with φ(0) = −𝒦; defined for
/// 0 ≤ t < arctan(β/𝒦)/β (1/𝒦 when β = 0).
pub fn phi_closed(t: f64, beta: f64, big_k: f64) -> Result<f64> {
    let sup = branch_sup(beta, big_k)?;
    if !(t >= 0.0 && t < sup) {
        return Err(Error::Domain(format!(
            "time {t} outside the maximal interval [0, {sup})"
        )));
    }
    if beta == 0.0 {
        Ok(-big_k / (1.0 - big_k * t))
    } else {
        let tan = (beta * t).tan();
        Ok(-(beta * beta * tan + beta * big_k) / (beta - big_k * tan))
    }
}

/// Length of the maximal interval of φ.
pub fn phi_maximal_time(beta: f64, big_k: f64) -> Result<f64> {
    branch_sup(beta, big_k)
}

fn check_psi_params(alpha: f64, kappa: f64) -> Result<()> {
    if !(kappa > 0.0 && kappa.is_finite()) {
        return Err(Error::InvalidInput(format!("kappa must be positive, got {kappa}")));
    }
    if !(alpha >= 0.0 && alpha.is_finite()) {
        return Err(Error::InvalidInput(format!("alpha must be >= 0, got {alpha}")));
    }
    if alpha > kappa {
        return Err(Error::Inapplicable(format!(
            "the lower-rate comparison needs alpha <= kappa, got alpha = {alpha}, kappa = {kappa}"
        )));
    }
    Ok(())
}

/// Length of the maximal interval of ψ: arctanh(α/κ)/α for 0 < α < κ,
/// 1/κ for α = 0, and +∞ at the equilibrium α = κ.
pub fn psi_maximal_time(alpha: f64, kappa: f64) -> Result<f64> {
    check_psi_params(alpha, kappa)?;
    if alpha == kappa {
        Ok(f64::INFINITY)
    } else if alpha == 0.0 {
        Ok(1.0 / kappa)
    } else {
        Ok((alpha / kappa).atanh() / alpha)
    }
}

/// Lower-rate comparison solution ψ(t) with ψ(0) = −κ; requires α ≤ κ and
/// 0 ≤ t < the maximal time.
pub fn psi_closed(t: f64, alpha: f64, kappa: f64) -> Result<f64> {
    let sup = psi_maximal_time(alpha, kappa)?;
    if !(t >= 0.0 && t < sup) {
        return Err(Error::Domain(format!(
            "time {t} outside the maximal interval [0, {sup})"
        )));
    }
    if alpha == kappa {
        Ok(-kappa)
    } else if alpha == 0.0 {
        Ok(-kappa / (1.0 - kappa * t))
    } else {
        let tanh = (alpha * t).tanh();
        Ok(-(kappa * alpha - alpha * alpha * tanh) / (alpha - kappa * tanh))
    }
}

/// Numerical solution of y' = −(y² + c) from y(0) = y0.
#[derive(Debug, Clone)]
pub struct RiccatiTrajectory {
    /// Accepted step times, starting at 0.
    pub times: Vec<f64>,
    /// Solution values at those times.
    pub values: Vec<f64>,
    /// Last time reached (equals the requested end unless `blew_up`).
    pub effective_end: f64,
    /// True when integration halted because |y| exceeded the blow-up size.
    pub blew_up: bool,
}

/// Integrates y' = −(y² + c) on [0, t_end], halting once |y| > 1e12.
pub fn integrate_riccati(c: f64, y0: f64, t_end: f64) -> Result<RiccatiTrajectory> {
    integrate_riccati_with(c, y0, t_end, &OdeOptions::default())
}

/// As [`integrate_riccati`] but with caller-chosen step control.
pub fn integrate_riccati_with(
    c: f64,
    y0: f64,
    t_end: f64,
    step_control: &OdeOptions,
) -> Result<RiccatiTrajectory> {
    if !(c.is_finite() && y0.is_finite()) {
        return Err(Error::InvalidInput("non-finite Riccati parameter".into()));
    }
    if !(t_end > 0.0 && t_end.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "integration end must be positive and finite, got {t_end}"
        )));
    }
    let rhs = move |_t: f64, y: &[f64; 1]| [-(y[0] * y[0] + c)];
    let halt = |_t: f64, y: &[f64; 1]| y[0].abs() > BLOW_UP;
    let traj = integrate_with_halt(&rhs, 0.0, [y0], t_end, step_control, &halt)?;
    Ok(RiccatiTrajectory {
        effective_end: traj.end_time(),
        blew_up: traj.halted,
        values: traj.states.iter().map(|s| s[0]).collect(),
        times: traj.times,
    })
}

/// Central-difference residual of the Riccati equation at one point,
/// normalized by (1 + y²)² so it stays meaningful near blow-up: for a true
/// solution sampled at spacing h the value is O(h²) uniformly.
pub fn riccati_residual(y_minus: f64, y_center: f64, y_plus: f64, h: f64, c: f64) -> f64 {
    let derivative = (y_plus - y_minus) / (2.0 * h);
    let scale = (1.0 + y_center * y_center).powi(2);
    (derivative + y_center * y_center + c).abs() / scale
}

/// Which curvature data drives the parallel-surface comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComparisonVariant {
    /// Upper sectional bound β² and principal-curvature bound 𝒦.
    Sectional,
    /// Upper Ricci bound b² and mean-curvature bound ℋ; needs κ > 0 and
    /// the sectional lower rate α ≤ κ to preserve convexity inward.
    Ricci,
}

/// Upper bound for the mean curvature of the inward parallel surface at
/// depth `delta`, taken with respect to the inward normal of the parallel
/// surface.  Sectional variant: −n·φ_{β,𝒦}(δ); Ricci variant: −φ_{b,ℋ}(δ).
pub fn parallel_h_upper(
    delta: f64,
    geom: &GeometricData,
    variant: ComparisonVariant,
) -> Result<f64> {
    geom.validate()?;
    match variant {
        ComparisonVariant::Sectional => {
            let window = delta_sup(geom.collar_radius, geom.beta(), geom.kappa_upper)?;
            if !(delta > 0.0 && delta < window) {
                return Err(Error::Domain(format!(
                    "depth {delta} outside the admissible window (0, {window})"
                )));
            }
            Ok(-(geom.n as f64) * phi_closed(delta, geom.beta(), geom.kappa_upper)?)
        }
        ComparisonVariant::Ricci => {
            if !(geom.kappa_lower > 0.0) {
                return Err(Error::Inapplicable(
                    "mean-curvature comparison needs a positive principal-curvature \
                     lower bound"
                        .into(),
                ));
            }
            if geom.alpha() > geom.kappa_lower {
                return Err(Error::Inapplicable(
                    "mean-curvature comparison needs the sectional lower rate alpha \
                     to be at most kappa"
                        .into(),
                ));
            }
            let b = geom.ric_upper_sqrt();
            let window = delta_sup(geom.collar_radius, b, geom.mean_upper)?;
            if !(delta > 0.0 && delta < window) {
                return Err(Error::Domain(format!(
                    "depth {delta} outside the admissible window (0, {window})"
                )));
            }
            Ok(-phi_closed(delta, b, geom.mean_upper)?)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_matches_hand_values() {
        // β = 𝒦 = 1 at t = π/8: −tan(π/8 + π/4) = −(1 + √2).
        let v = phi_closed(std::f64::consts::FRAC_PI_8, 1.0, 1.0).unwrap();
        assert!((v + 1.0 + 2.0f64.sqrt()).abs() < 1e-12, "got {v}");
        assert_eq!(phi_closed(0.0, 1.0, 1.0).unwrap(), -1.0);
        // β = 0: −𝒦/(1 − 𝒦t).
        let v = phi_closed(0.3, 0.0, 2.0).unwrap();
        assert!((v + 5.0).abs() < 1e-14);
        assert!((phi_maximal_time(1.0, 1.0).unwrap() - std::f64::consts::FRAC_PI_4).abs() < 1e-15);
        assert!((phi_maximal_time(0.0, 2.0).unwrap() - 0.5).abs() < 1e-15);
        assert!(phi_closed(0.5, 0.0, 2.0).is_err());
        assert!(phi_closed(-0.1, 0.0, 2.0).is_err());
    }

    #[test]
    fn psi_cases() {
        // α = 0 collapses to the rational solution.
        let v = psi_closed(0.3, 0.0, 2.0).unwrap();
        assert!((v + 5.0).abs() < 1e-14);
        // Equilibrium at α = κ.
        assert_eq!(psi_closed(5.0, 1.0, 1.0).unwrap(), -1.0);
        assert_eq!(psi_maximal_time(1.0, 1.0).unwrap(), f64::INFINITY);
        // 0 < α < κ: cross-check the rational form against the coth form
        // ψ(t) = −α coth(α(T − t)).
        let (alpha, kappa) = (1.0, 2.0);
        let t_max = psi_maximal_time(alpha, kappa).unwrap();
        assert!((t_max - 0.5f64.atanh()).abs() < 1e-15);
        for &t in &[0.0, 0.1, 0.2, 0.4, 0.5] {
            let v = psi_closed(t, alpha, kappa).unwrap();
            let coth = 1.0 / (alpha * (t_max - t)).tanh();
            assert!((v + alpha * coth).abs() < 1e-10, "t = {t}: {v} vs {}", -alpha * coth);
        }
        let v = psi_closed(0.2, 1.0, 2.0).unwrap();
        assert!((v + 2.97832).abs() < 1e-4, "got {v}");
        // α > κ is rejected as outside the comparison's hypotheses.
        assert!(matches!(
            psi_closed(0.1, 2.0, 1.0).unwrap_err(),
            Error::Inapplicable(_)
        ));
    }

    #[test]
    fn numerical_integration_tracks_closed_forms() {
        // Upper-rate case c = β² = 1 with 𝒦 = 1.
        let t_end = 0.95 * std::f64::consts::FRAC_PI_4;
        let traj = integrate_riccati(1.0, -1.0, t_end).unwrap();
        assert!(!traj.blew_up);
        for (&t, &y) in traj.times.iter().zip(&traj.values) {
            let exact = phi_closed(t, 1.0, 1.0).unwrap();
            assert!((y - exact).abs() <= 1e-8 * (1.0 + exact.abs()), "t = {t}");
        }
        // Curvature-free case c = 0 with 𝒦 = 2.
        let traj = integrate_riccati(0.0, -2.0, 0.95 * 0.5).unwrap();
        for (&t, &y) in traj.times.iter().zip(&traj.values) {
            let exact = phi_closed(t, 0.0, 2.0).unwrap();
            assert!((y - exact).abs() <= 1e-8 * (1.0 + exact.abs()));
        }
        // Lower-rate case c = −1 with κ = 2.
        let t_max = psi_maximal_time(1.0, 2.0).unwrap();
        let traj = integrate_riccati(-1.0, -2.0, 0.95 * t_max).unwrap();
        for (&t, &y) in traj.times.iter().zip(&traj.values) {
            let exact = psi_closed(t, 1.0, 2.0).unwrap();
            assert!((y - exact).abs() <= 1e-8 * (1.0 + exact.abs()));
        }
    }

    #[test]
    fn equilibrium_is_preserved() {
        let traj = integrate_riccati(-1.0, -1.0, 10.0).unwrap();
        assert!(!traj.blew_up);
        for &y in &traj.values {
            assert!((y + 1.0).abs() <= 1e-10, "drifted to {y}");
        }
    }

    #[test]
    fn blow_up_is_detected_near_the_maximal_time() {
        // φ with β = 0, 𝒦 = 2 blows up at t = 0.5.
        let traj = integrate_riccati(0.0, -2.0, 0.6).unwrap();
        assert!(traj.blew_up);
        assert!(traj.effective_end < 0.6);
        assert!((traj.effective_end - 0.5).abs() < 1e-3, "end = {}", traj.effective_end);
    }

    #[test]
    fn residual_of_closed_forms_is_tiny() {
        let h = 1e-5;
        for &(beta, big_k, t) in &[(1.0, 1.0, 0.3), (0.0, 2.0, 0.2), (2.0, 0.5, 0.5)] {
            let c = beta * beta;
            let r = riccati_residual(
                phi_closed(t - h, beta, big_k).unwrap(),
                phi_closed(t, beta, big_k).unwrap(),
                phi_closed(t + h, beta, big_k).unwrap(),
                h,
                c,
            );
            assert!(r <= 1e-9, "residual {r} at ({beta}, {big_k}, {t})");
        }
        let r = riccati_residual(
            psi_closed(0.3 - h, 1.0, 2.0).unwrap(),
            psi_closed(0.3, 1.0, 2.0).unwrap(),
            psi_closed(0.3 + h, 1.0, 2.0).unwrap(),
            h,
            -1.0,
        );
        assert!(r <= 1e-9);
    }

    #[test]
    fn parallel_mean_curvature_bounds() {
        let flat = GeometricData::flat_ball(2, 1.0);
        // Flat ball: the sectional comparison is exact, n/(R − δ).
        let v = parallel_h_upper(0.5, &flat, ComparisonVariant::Sectional).unwrap();
        assert!((v - 4.0).abs() < 1e-12);
        let v = parallel_h_upper(0.25, &flat, ComparisonVariant::Sectional).unwrap();
        assert!((v - 2.0 / 0.75).abs() < 1e-12);
        // Ricci variant on the flat ball is exact too: ℋ/(1 − ℋδ/n)…
        // with b = 0, ℋ = 2: 2/(1 − 2δ).  Window is (0, 0.5).
        let v = parallel_h_upper(0.25, &flat, ComparisonVariant::Ricci).unwrap();
        assert!((v - 4.0).abs() < 1e-12);
        assert!(parallel_h_upper(0.5, &flat, ComparisonVariant::Ricci).is_err());

        // Spherical cap of radius π/4 in the unit 3-sphere at depth π/8:
        // exact value 2 cot(π/8) = 2(1 + √2).
        let cap = GeometricData {
            n: 2,
            ric_lower_global: 2.0,
            ric_lower_collar: 2.0,
            ric_upper_collar: 2.0,
            sec_upper_collar: 1.0,
            sec_lower_collar: 0.0,
            kappa_lower: 1.0,
            kappa_upper: 1.0,
            mean_lower: 2.0,
            mean_upper: 2.0,
            rolling_radius: std::f64::consts::FRAC_PI_4,
            collar_radius: std::f64::consts::FRAC_PI_4,
        };
        let v = parallel_h_upper(std::f64::consts::FRAC_PI_8, &cap, ComparisonVariant::Sectional)
            .unwrap();
        assert!((v - 2.0 * (1.0 + 2.0f64.sqrt())).abs() < 1e-12, "got {v}");

        // Hyperbolic ball (curvature −1, radius 0.5): the β = 0 comparison
        // must dominate the exact value 2 coth(0.25).
        let kappa = 1.0 / 0.5f64.tanh();
        let hyp = GeometricData {
            n: 2,
            ric_lower_global: -2.0,
            ric_lower_collar: 0.0,
            ric_upper_collar: 0.0,
            sec_upper_collar: 0.0,
            sec_lower_collar: -1.0,
            kappa_lower: kappa,
            kappa_upper: kappa,
            mean_lower: 2.0 * kappa,
            mean_upper: 2.0 * kappa,
            rolling_radius: 0.5,
            collar_radius: 0.5,
        };
        let v = parallel_h_upper(0.25, &hyp, ComparisonVariant::Sectional).unwrap();
        let exact = 2.0 / 0.25f64.tanh();
        assert!(v >= exact - 1e-12, "comparison {v} must dominate exact {exact}");
    }
}
