//! Curvature and boundary data consumed by the bound computations.

use crate::{Error, Result};

/// Geometric input for the σ₁ lower bounds on an (n+1)-manifold M with
/// boundary Σⁿ.
///
/// All curvature fields are *bounds certified by the caller*, not measured
/// values: `ric_lower_collar = a²` promises Ric ≥ a² g on the inner collar
/// M_r of depth `collar_radius`, `sec_upper_collar = β²` promises Sec ≤ β²
/// there, and so on.  Principal curvatures κᵢ of Σ (with respect to the
/// outward normal) satisfy `kappa_lower ≤ κᵢ ≤ kappa_upper`; the mean
/// curvature H = Σκᵢ satisfies `mean_lower ≤ H ≤ mean_upper`.
///
/// `rolling_radius` is the largest r such that the distance function to Σ is
/// smooth on the collar of depth r (no focal/cut points); `collar_radius`
/// is the depth actually used for the collar bounds and may not exceed it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeometricData {
    /// Boundary dimension n ≥ 1 (M has dimension n+1).
    pub n: u32,
    /// Lower bound for Ric on all of M (may be negative).
    pub ric_lower_global: f64,
    /// a² ≥ 0 with Ric ≥ a² on the collar.
    pub ric_lower_collar: f64,
    /// b² ≥ 0 with Ric ≤ b² on the collar.
    pub ric_upper_collar: f64,
    /// β² ≥ 0 with Sec ≤ β² on the collar.
    pub sec_upper_collar: f64,
    /// −α² ≤ 0 with Sec ≥ −α² on the collar.
    pub sec_lower_collar: f64,
    /// κ with κ ≤ κᵢ for every principal curvature of Σ.
    pub kappa_lower: f64,
    /// 𝒦 > 0 with κᵢ ≤ 𝒦.
    pub kappa_upper: f64,
    /// h with H ≥ h for the mean curvature of Σ.
    pub mean_lower: f64,
    /// ℋ > 0 with H ≤ ℋ.
    pub mean_upper: f64,
    /// Smoothness radius of the boundary-distance function.
    pub rolling_radius: f64,
    /// Collar depth r the collar bounds refer to; 0 < r ≤ rolling_radius.
    pub collar_radius: f64,
}

impl GeometricData {
    /// Checks internal consistency; every bound entry point calls this.
    pub fn validate(&self) -> Result<()> {
        let all = [
            self.ric_lower_global,
            self.ric_lower_collar,
            self.ric_upper_collar,
            self.sec_upper_collar,
            self.sec_lower_collar,
            self.kappa_lower,
            self.kappa_upper,
            self.mean_lower,
            self.mean_upper,
            self.rolling_radius,
            self.collar_radius,
        ];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput(
                "geometric data contains a non-finite field".into(),
            ));
        }
        if self.n < 1 {
            return Err(Error::InvalidInput("boundary dimension n must be >= 1".into()));
        }
        let checks: [(bool, &str); 10] = [
            (self.ric_lower_collar >= 0.0, "ric_lower_collar must be >= 0"),
            (self.ric_upper_collar >= 0.0, "ric_upper_collar must be >= 0"),
            (self.sec_upper_collar >= 0.0, "sec_upper_collar must be >= 0"),
            (self.sec_lower_collar <= 0.0, "sec_lower_collar must be <= 0"),
            (
                self.ric_lower_collar <= self.ric_upper_collar,
                "ric_lower_collar must not exceed ric_upper_collar",
            ),
            (
                self.ric_lower_global <= self.ric_lower_collar,
                "ric_lower_global must not exceed ric_lower_collar",
            ),
            (
                self.kappa_lower <= self.kappa_upper && self.kappa_upper > 0.0,
                "principal curvature bounds need kappa_lower <= kappa_upper and kappa_upper > 0",
            ),
            (
                self.mean_lower <= self.mean_upper && self.mean_upper > 0.0,
                "mean curvature bounds need mean_lower <= mean_upper and mean_upper > 0",
            ),
            (
                self.n as f64 * self.kappa_lower <= self.mean_upper
                    && self.mean_lower <= self.n as f64 * self.kappa_upper,
                "principal and mean curvature bounds are mutually inconsistent",
            ),
            (
                self.collar_radius > 0.0 && self.collar_radius <= self.rolling_radius,
                "need 0 < collar_radius <= rolling_radius",
            ),
        ];
        for (ok, msg) in checks {
            if !ok {
                return Err(Error::InvalidInput(msg.into()));
            }
        }
        Ok(())
    }

    /// α ≥ 0 from the sectional lower bound Sec ≥ −α².
    pub fn alpha(&self) -> f64 {
        (-self.sec_lower_collar).max(0.0).sqrt()
    }

    /// β ≥ 0 from the sectional upper bound Sec ≤ β².
    pub fn beta(&self) -> f64 {
        self.sec_upper_collar.max(0.0).sqrt()
    }

    /// b ≥ 0 from the Ricci upper bound Ric ≤ b².
    pub fn ric_upper_sqrt(&self) -> f64 {
        self.ric_upper_collar.max(0.0).sqrt()
    }

    /// Rescales the metric by length factor `c > 0`: lengths multiply by c,
    /// curvatures of dimension 1/length divide by c, curvature bounds of
    /// dimension 1/length² divide by c².
    pub fn scaled(&self, c: f64) -> GeometricData {
        let c2 = c * c;
        GeometricData {
            n: self.n,
            ric_lower_global: self.ric_lower_global / c2,
            ric_lower_collar: self.ric_lower_collar / c2,
            ric_upper_collar: self.ric_upper_collar / c2,
            sec_upper_collar: self.sec_upper_collar / c2,
            sec_lower_collar: self.sec_lower_collar / c2,
            kappa_lower: self.kappa_lower / c,
            kappa_upper: self.kappa_upper / c,
            mean_lower: self.mean_lower / c,
            mean_upper: self.mean_upper / c,
            rolling_radius: self.rolling_radius * c,
            collar_radius: self.collar_radius * c,
        }
    }

    /// Data of the flat unit-scale ball of radius `radius` in ℝⁿ⁺¹: every
    /// curvature vanishes and every principal curvature equals 1/radius.
    /// Handy baseline for tests and sweeps.
    pub fn flat_ball(n: u32, radius: f64) -> GeometricData {
        let kappa = 1.0 / radius;
        GeometricData {
            n,
            ric_lower_global: 0.0,
            ric_lower_collar: 0.0,
            ric_upper_collar: 0.0,
            sec_upper_collar: 0.0,
            sec_lower_collar: 0.0,
            kappa_lower: kappa,
            kappa_upper: kappa,
            mean_lower: n as f64 * kappa,
            mean_upper: n as f64 * kappa,
            rolling_radius: radius,
            collar_radius: radius,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flat_ball_data_validates() {
        GeometricData::flat_ball(2, 1.0).validate().unwrap();
        GeometricData::flat_ball(1, 0.25).validate().unwrap();
        GeometricData::flat_ball(100, 3.0).validate().unwrap();
    }

    #[test]
    fn inconsistent_fields_are_rejected() {
        let mut g = GeometricData::flat_ball(2, 1.0);
        g.kappa_upper = -1.0;
        assert!(g.validate().is_err());

        let mut g = GeometricData::flat_ball(2, 1.0);
        g.collar_radius = 2.0; // exceeds rolling_radius
        assert!(g.validate().is_err());

        let mut g = GeometricData::flat_ball(2, 1.0);
        g.ric_lower_collar = -0.5;
        assert!(g.validate().is_err());

        let mut g = GeometricData::flat_ball(2, 1.0);
        g.mean_lower = 5.0; // exceeds n * kappa_upper = 2
        assert!(g.validate().is_err());

        let mut g = GeometricData::flat_ball(2, 1.0);
        g.ric_lower_global = f64::NAN;
        assert!(g.validate().is_err());
    }

    #[test]
    fn scaling_is_exactly_involutive_on_powers_of_two() {
        let g = GeometricData::flat_ball(3, 1.5);
        let back = g.scaled(4.0).scaled(0.25);
        assert_eq!(g, back);
    }

    #[test]
    fn alpha_beta_roots() {
        let mut g = GeometricData::flat_ball(2, 1.0);
        g.sec_lower_collar = -4.0;
        g.sec_upper_collar = 9.0;
        assert_eq!(g.alpha(), 2.0);
        assert_eq!(g.beta(), 3.0);
    }
}
