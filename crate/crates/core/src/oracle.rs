//! Independent Steklov oracle for warped-product balls.
//!
//! On [0, R] × Sⁿ with metric dr² + f(r)² g_{Sⁿ}, harmonic functions split
//! into modes u = φ(r)·Y(θ) with Δ_{Sⁿ}Y = −ℓ(ℓ+n−1)Y, and the boundary
//! condition ∂u/∂r = σu at r = R turns each mode into a radial eigenvalue
//! σ(ℓ) = φ'(R)/φ(R).  The log-derivative w = φ'/φ obeys
//!
//! ```text
//! w' = ℓ(ℓ+n−1)/f² − n (f'/f) w − w²,    w(r₀) = ℓ/r₀,
//! ```
//!
//! which is shot from r₀ near the pole; every eigenvalue is re-computed
//! with r₀ and the step tolerances halved and the two runs must agree.
//! The first-mode eigenfunction is reconstructed from the linear form of
//! the same equation, and its energy functionals (Dirichlet, Hessian,
//! tangential boundary energy) reduce to one-dimensional integrals of
//! (φ, φ', φ'').  The Hessian reduction is cross-validated against raw
//! finite differences of u along numerically integrated geodesics, so
//! nothing here leans on the certified-bound formulas it is meant to
//! check.

use std::cell::RefCell;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::kernel;
use crate::models::{curvature_data, WarpedProfile};
use crate::numerics::ode::{self, OdeOptions, Trajectory};
use crate::numerics::quadrature;
use crate::{Error, Result};

/// Default relative accuracy demanded of every eigenvalue.
pub const DEFAULT_ORACLE_TOL: f64 = 1e-9;
/// Default highest harmonic degree scanned by [`steklov_spectrum`].
pub const DEFAULT_L_MAX: u32 = 10;
/// Shooting starts at this fraction of the ball radius.
const R0_FRACTION: f64 = 1e-6;
/// Relative tolerance for the eigenfunction-functional quadratures.
const QUAD_TOL: f64 = 1e-10;
/// Points and threshold for the internal Hessian-reduction validation.
const HESSIAN_VALIDATION_POINTS: usize = 20;
const HESSIAN_VALIDATION_TOL: f64 = 1e-6;

/// Laplace eigenvalue ℓ(ℓ+n−1) of degree-ℓ spherical harmonics on Sⁿ.
fn sphere_eigenvalue(n: u32, ell: u32) -> f64 {
    ell as f64 * (ell as f64 + n as f64 - 1.0)
}

fn binom(a: u64, b: u64) -> u64 {
    if b > a {
        return 0;
    }
    let b = b.min(a - b);
    let mut acc: u128 = 1;
    for i in 0..b {
        acc = acc * (a - i) as u128 / (i as u128 + 1);
    }
    acc.min(u64::MAX as u128) as u64
}

/// Dimension of the degree-ℓ spherical-harmonic space on Sⁿ.
pub fn harmonic_multiplicity(n: u32, ell: u32) -> u64 {
    let (n, ell) = (n as u64, ell as u64);
    let lower = if n + ell >= 2 { binom(n + ell - 2, n) } else { 0 };
    binom(n + ell, n) - lower
}

fn check_tol(tol: f64) -> Result<()> {
    if !(tol > 0.0 && tol < 1e-2) {
        return Err(Error::InvalidInput(format!(
            "oracle tolerance must lie in (0, 1e-2), got {tol}"
        )));
    }
    Ok(())
}

/// One shooting pass of the log-derivative equation from `r0` to R.
fn shoot(profile: &WarpedProfile, ell: u32, r0: f64, ode_tol: f64) -> Result<f64> {
    let n = profile.n() as f64;
    let lam = sphere_eigenvalue(profile.n(), ell);
    let p = profile.clone();
    let rhs = move |_r: f64, y: &[f64; 1]| {
        let f = p.f(_r);
        let fp = p.df(_r);
        [lam / (f * f) - n * (fp / f) * y[0] - y[0] * y[0]]
    };
    let opts = OdeOptions {
        rel_tol: ode_tol,
        abs_tol: ode_tol * 1e-2,
        ..OdeOptions::default()
    };
    let traj = ode::integrate(&rhs, r0, [ell as f64 / r0], profile.radius(), &opts)?;
    Ok(traj.end_state()[0])
}

/// Computes σ(ℓ) for the warped-product ball to relative accuracy `tol`.
///
/// Two shooting passes (the second with r₀ and tolerances halved) must
/// agree within `tol`; otherwise the eigenvalue is refused rather than
/// reported with unknown accuracy.
pub fn mode_sigma(profile: &WarpedProfile, ell: u32, tol: f64) -> Result<f64> {
    if ell < 1 {
        return Err(Error::InvalidInput("harmonic degree must be >= 1".into()));
    }
    check_tol(tol)?;
    let r0 = R0_FRACTION * profile.radius();
    let coarse = shoot(profile, ell, r0, tol * 1e-2)?;
    let fine = shoot(profile, ell, r0 * 0.5, tol * 0.5e-2)?;
    if (coarse - fine).abs() > tol * fine.abs().max(1.0) {
        return Err(Error::Oracle(format!(
            "shooting refinement moved sigma({ell}) by {:.3e}, beyond tolerance {tol:.3e}",
            (coarse - fine).abs()
        )));
    }
    Ok(fine)
}

/// One Steklov mode: harmonic degree, eigenvalue, multiplicity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeRecord {
    pub ell: u32,
    pub sigma: f64,
    pub multiplicity: u64,
}

/// The low Steklov spectrum of a warped-product ball.
#[derive(Debug, Clone)]
pub struct SteklovEstimate {
    /// Modes for ℓ = 0, 1, …, including the constant mode σ = 0.
    pub modes: Vec<ModeRecord>,
    /// Smallest eigenvalue over the computed degrees ℓ ≥ 1.
    pub sigma1: f64,
    /// Per-eigenvalue verified relative accuracy.
    pub error_estimate: f64,
    /// True when the scan hit `l_max` before σ(ℓ) had risen three times in
    /// a row, so σ₁ is not yet bracketed by an increasing tail.
    pub truncated: bool,
    /// False when some σ(ℓ) dipped below its predecessor.
    pub monotone: bool,
}

/// Scans σ(ℓ) for ℓ = 1…l_max, stopping early once the eigenvalues have
/// increased for three consecutive degrees.
pub fn steklov_spectrum(profile: &WarpedProfile, l_max: u32, tol: f64) -> Result<SteklovEstimate> {
    if l_max < 1 {
        return Err(Error::InvalidInput("l_max must be >= 1".into()));
    }
    check_tol(tol)?;
    let n = profile.n();
    let mut modes = vec![ModeRecord { ell: 0, sigma: 0.0, multiplicity: 1 }];
    let mut truncated = true;
    let mut monotone = true;
    let mut increases = 0u32;
    let mut prev = f64::NAN;
    for ell in 1..=l_max {
        let sigma = mode_sigma(profile, ell, tol)?;
        modes.push(ModeRecord { ell, sigma, multiplicity: harmonic_multiplicity(n, ell) });
        if ell >= 2 {
            if sigma > prev {
                increases += 1;
            } else {
                increases = 0;
            }
            if sigma < prev * (1.0 - 1e-10) - 1e-12 {
                monotone = false;
            }
        }
        prev = sigma;
        if increases >= 3 {
            truncated = false;
            break;
        }
    }
    let sigma1 = modes[1..]
        .iter()
        .map(|m| m.sigma)
        .fold(f64::INFINITY, f64::min);
    Ok(SteklovEstimate { modes, sigma1, error_estimate: tol, truncated, monotone })
}

/// Radial profile φ of the first nonconstant Steklov mode, normalized so
/// that φ(R) = 1, with derivative evaluation anywhere in [0, R].
pub struct RadialEigenfunction {
    profile: WarpedProfile,
    ell: u32,
    sigma: f64,
    r0: f64,
    traj: Trajectory<2>,
    scale: f64,
    opts: OdeOptions,
}

fn linear_rhs(profile: &WarpedProfile, ell: u32) -> impl Fn(f64, &[f64; 2]) -> [f64; 2] {
    let n = profile.n() as f64;
    let lam = sphere_eigenvalue(profile.n(), ell);
    let p = profile.clone();
    move |r: f64, y: &[f64; 2]| {
        let f = p.f(r);
        let fp = p.df(r);
        [y[1], lam * y[0] / (f * f) - n * (fp / f) * y[1]]
    }
}

impl RadialEigenfunction {
    pub fn new(profile: &WarpedProfile, ell: u32, tol: f64) -> Result<Self> {
        if ell < 1 {
            return Err(Error::InvalidInput("harmonic degree must be >= 1".into()));
        }
        check_tol(tol)?;
        let sigma = mode_sigma(profile, ell, tol)?;
        let r0 = R0_FRACTION * profile.radius();
        let opts = OdeOptions { rel_tol: 1e-12, abs_tol: 1e-16, ..OdeOptions::default() };
        let rhs = linear_rhs(profile, ell);
        let y0 = [r0.powi(ell as i32), ell as f64 * r0.powi(ell as i32 - 1)];
        let traj = ode::integrate(&rhs, r0, y0, profile.radius(), &opts)?;
        let end = traj.end_state();
        let sigma_linear = end[1] / end[0];
        if (sigma_linear - sigma).abs() > 10.0 * tol * sigma.abs().max(1.0) {
            return Err(Error::Oracle(format!(
                "eigenfunction integration gives sigma = {sigma_linear}, shooting gives {sigma}"
            )));
        }
        Ok(RadialEigenfunction {
            profile: profile.clone(),
            ell,
            sigma,
            r0,
            scale: 1.0 / end[0],
            traj,
            opts,
        })
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    /// (φ, φ', φ'') at radius r; below the shooting start the regular
    /// branch φ ∝ r^ℓ continues the trajectory to the pole.
    pub fn values(&self, r: f64) -> Result<(f64, f64, f64)> {
        let radius = self.profile.radius();
        if !(0.0..=radius).contains(&r) {
            return Err(Error::Domain(format!("radius {r} outside [0, {radius}]")));
        }
        if r < self.r0 {
            let ell = self.ell;
            let phi0 = self.scale * self.traj.states[0][0];
            let t = r / self.r0;
            let phi = phi0 * t.powi(ell as i32);
            let dphi = ell as f64 * phi0 * t.powi(ell as i32 - 1) / self.r0;
            let ddphi = if ell <= 1 {
                0.0
            } else {
                (ell * (ell - 1)) as f64 * phi0 * t.powi(ell as i32 - 2) / (self.r0 * self.r0)
            };
            return Ok((phi, dphi, ddphi));
        }
        let rhs = linear_rhs(&self.profile, self.ell);
        let y = ode::eval_on(&rhs, &self.traj, r, &self.opts)?;
        let phi = self.scale * y[0];
        let dphi = self.scale * y[1];
        let f = self.profile.f(r);
        let fp = self.profile.df(r);
        let lam = sphere_eigenvalue(self.profile.n(), self.ell);
        let ddphi = lam * phi / (f * f) - self.profile.n() as f64 * (fp / f) * dphi;
        Ok((phi, dphi, ddphi))
    }
}

/// Adaptive quadrature of a fallible integrand.  `abs_tol` is the caller's
/// notion of a negligible integral; pass 0.0 for integrands with genuine
/// magnitude.
fn integrate_checked(
    f: &dyn Fn(f64) -> Result<f64>,
    lo: f64,
    hi: f64,
    abs_tol: f64,
) -> Result<f64> {
    let failure: RefCell<Option<Error>> = RefCell::new(None);
    let wrapped = |r: f64| match f(r) {
        Ok(v) => v,
        Err(e) => {
            let mut slot = failure.borrow_mut();
            if slot.is_none() {
                *slot = Some(e);
            }
            0.0
        }
    };
    let out = quadrature::integrate(&wrapped, lo, hi, QUAD_TOL, abs_tol)?;
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    Ok(out.value)
}

/// Dirichlet and Hessian energies of u = φ·Y over {lo ≤ r ≤ R}, per unit
/// of the squared harmonic mass ∫_{Sⁿ} Y².  Valid for ℓ = 1, where the
/// angular Hessian of Y is −Y g_{Sⁿ} pointwise, giving
///
/// ```text
/// |∇u|²  → φ'² fⁿ + n φ² f^{n−2}
/// |∇²u|² → φ''² fⁿ + 2n (φ' − (f'/f)φ)² f^{n−2} + n (f f' φ' − φ)² f^{n−4}
/// ```
fn first_mode_energies(
    profile: &WarpedProfile,
    eig: &RadialEigenfunction,
    lo: f64,
) -> Result<(f64, f64)> {
    let n = profile.n() as f64;
    let grad = |r: f64| -> Result<f64> {
        let (phi, dphi, _) = eig.values(r)?;
        let f = profile.f(r);
        Ok(dphi * dphi * f.powf(n) + n * phi * phi * f.powf(n - 2.0))
    };
    let hess = |r: f64| -> Result<f64> {
        let (phi, dphi, ddphi) = eig.values(r)?;
        let f = profile.f(r);
        let fp = profile.df(r);
        let mixed = dphi - (fp / f) * phi;
        let tangential = f * fp * dphi - phi;
        Ok(ddphi * ddphi * f.powf(n)
            + 2.0 * n * mixed * mixed * f.powf(n - 2.0)
            + n * tangential * tangential * f.powf(n - 4.0))
    };
    // Cancellation-free majorant of the Hessian integrand's term sizes.
    // On round balls the true integrand vanishes identically and what the
    // quadrature sees is pure rounding noise, so the Hessian integral needs
    // an absolute notion of zero; sampling the majorant supplies its scale.
    let hess_term_scale = |r: f64| -> Result<f64> {
        let (phi, dphi, ddphi) = eig.values(r)?;
        let f = profile.f(r);
        let fp = profile.df(r);
        Ok(ddphi * ddphi * f.powf(n)
            + 2.0 * n * (dphi * dphi + (fp / f * phi).powi(2)) * f.powf(n - 2.0)
            + n * ((f * fp * dphi).powi(2) + phi * phi) * f.powf(n - 4.0))
    };
    let radius = profile.radius();
    let mut scale_hint = 0.0f64;
    for i in 1..=33 {
        let r = lo + (radius - lo) * i as f64 / 33.0;
        scale_hint = scale_hint.max(hess_term_scale(r)?);
    }
    Ok((
        integrate_checked(&grad, lo, radius, 0.0)?,
        integrate_checked(&hess, lo, radius, QUAD_TOL * scale_hint * (radius - lo))?,
    ))
}

/// Tangential boundary energy of the normalized first mode, per unit
/// harmonic mass: n φ(R)² f(R)^{n−2} with φ(R) = 1.
fn boundary_tangential_energy(profile: &WarpedProfile) -> f64 {
    let n = profile.n() as f64;
    n * profile.f(profile.radius()).powf(n - 2.0)
}

/// Numerical check of the integrated curvature identity that every bound
/// in [`crate::bounds`] ultimately rests on: with rate certificates
/// a1 ≤ Ric, a2 ≤ H, a3 ≤ κᵢ, harmonicity of the first mode forces
///
/// ```text
/// 0 ≥ ∫|∇²u|² + (a1 + a2 σ)∫|∇u|² + (a3 − 2σ)∫_Σ|∇ᵀu|².
/// ```
#[derive(Debug, Clone)]
pub struct ReillyCheck {
    pub sigma: f64,
    pub hessian: f64,
    pub gradient: f64,
    pub boundary_tangential: f64,
    /// Signed right-hand side; the identity demands it be ≤ 0.
    pub rhs: f64,
    /// Largest |term| that entered rhs (at least 1e−300).
    pub scale: f64,
    /// rhs / scale; the check passes when this is ≤ 1e−6.
    pub residual: f64,
    /// Worst relative disagreement of the Hessian reduction against
    /// finite differences along geodesics.
    pub hessian_validation: f64,
}

pub fn reilly_inequality_check(
    profile: &WarpedProfile,
    a1: f64,
    a2: f64,
    a3: f64,
) -> Result<ReillyCheck> {
    for (name, v) in [("a1", a1), ("a2", a2), ("a3", a3)] {
        if !v.is_finite() {
            return Err(Error::InvalidInput(format!("rate {name} must be finite, got {v}")));
        }
    }
    let eig = RadialEigenfunction::new(profile, 1, DEFAULT_ORACLE_TOL)?;
    let hessian_validation =
        hessian_fd_max_mismatch(profile, &|r| eig.values(r), HESSIAN_VALIDATION_POINTS, 0)?;
    if hessian_validation > HESSIAN_VALIDATION_TOL {
        return Err(Error::Oracle(format!(
            "Hessian reduction disagrees with finite differences by {hessian_validation:.3e}"
        )));
    }
    let (gradient, hessian) = first_mode_energies(profile, &eig, 0.0)?;
    let boundary = boundary_tangential_energy(profile);
    let sigma = eig.sigma();
    let terms = [hessian, (a1 + a2 * sigma) * gradient, (a3 - 2.0 * sigma) * boundary];
    let rhs: f64 = terms.iter().sum();
    let scale = terms.iter().fold(1e-300f64, |m, t| m.max(t.abs()));
    Ok(ReillyCheck {
        sigma,
        hessian,
        gradient,
        boundary_tangential: boundary,
        rhs,
        scale,
        residual: rhs / scale,
        hessian_validation,
    })
}

/// Numerical check of the collar trace inequality behind the kernel E:
/// for the harmonic first mode and any ε > 0, depth δ inside the
/// comparison window,
///
/// ```text
/// ε ∫_Σ|∇ᵀu|²  ≤  ∫_{collar}|∇²u|² + ε(ε + E(δ)) ∫_{collar}|∇u|².
/// ```
#[derive(Debug, Clone)]
pub struct CollarCheck {
    pub sigma: f64,
    pub epsilon: f64,
    pub delta: f64,
    /// Trace kernel E(δ) built from the collar's own curvature data.
    pub kernel_e: f64,
    pub collar_hessian: f64,
    pub collar_gradient: f64,
    pub boundary_tangential: f64,
    pub lhs: f64,
    pub rhs: f64,
    /// (lhs − rhs) / scale; the check passes when this is ≤ 1e−6.
    pub residual: f64,
}

pub fn collar_inequality_check(
    profile: &WarpedProfile,
    epsilon: f64,
    delta: f64,
) -> Result<CollarCheck> {
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(Error::InvalidInput(format!("epsilon must be positive, got {epsilon}")));
    }
    let radius = profile.radius();
    if !(delta > 0.0 && delta < radius) {
        return Err(Error::Domain(format!("depth must lie in (0, {radius}), got {delta}")));
    }
    let data = curvature_data(profile, delta)?;
    let window = kernel::delta_sup(data.rolling_radius, data.beta(), data.kappa_upper)?;
    if delta >= window {
        return Err(Error::Domain(format!(
            "depth {delta} reaches the comparison window supremum {window}"
        )));
    }
    let e_val = kernel::kernel_e(delta, data.n, data.beta(), data.kappa_upper)?;
    let eig = RadialEigenfunction::new(profile, 1, DEFAULT_ORACLE_TOL)?;
    let (collar_gradient, collar_hessian) = first_mode_energies(profile, &eig, radius - delta)?;
    let boundary = boundary_tangential_energy(profile);
    let lhs = epsilon * boundary;
    let rhs = collar_hessian + epsilon * (epsilon + e_val) * collar_gradient;
    let scale = lhs.abs().max(rhs.abs()).max(1e-300);
    Ok(CollarCheck {
        sigma: eig.sigma(),
        epsilon,
        delta,
        kernel_e: e_val,
        collar_hessian,
        collar_gradient,
        boundary_tangential: boundary,
        lhs,
        rhs,
        residual: (lhs - rhs) / scale,
    })
}

// ---------------------------------------------------------------------
// Finite-difference validation of the Hessian reduction.
//
// For u = φ(r)·Y with Y(θ) = ⟨ω, θ⟩ a first harmonic, the Hessian in the
// orthonormal frame {∂r, vᵢ/f} is
//
//   H(∂r, ∂r) = φ'' Y
//   H(∂r, eᵢ) = ((φ' − (f'/f) φ)/f) (ω·vᵢ)
//   H(eᵢ, eⱼ) = ((f f' φ' − φ)/f²) δᵢⱼ Y
//
// and each entry equals the second derivative of u along the geodesic
// spray of the corresponding direction(s), which is what the finite
// differences below compute without using any of these formulas.
// ---------------------------------------------------------------------

const GEODESIC_OPTS: OdeOptions = OdeOptions {
    rel_tol: 1e-13,
    abs_tol: 1e-15,
    max_steps: 1_000_000,
    initial_step: None,
};

/// u(exp_p(w)) where w has radial part `w_radial` and tangential norm
/// `w_tangential` along a unit direction v̂ with ω·v̂ = `y_vhat`.  The
/// geodesic stays in the meridian plane of v̂, reducing to
/// r'' = L² f'/f³, ρ' = L/f² with angular momentum L = f(r_p)·|w_T|.
fn u_along_geodesic(
    profile: &WarpedProfile,
    phi: &dyn Fn(f64) -> Result<f64>,
    r_p: f64,
    y_center: f64,
    y_vhat: f64,
    w_radial: f64,
    w_tangential: f64,
) -> Result<f64> {
    if w_tangential == 0.0 {
        return Ok(phi(r_p + w_radial)? * y_center);
    }
    let l = w_tangential * profile.f(r_p);
    let p = profile.clone();
    let rhs = move |_t: f64, y: &[f64; 3]| {
        let f = p.f(y[0]);
        let fp = p.df(y[0]);
        [y[1], l * l * fp / (f * f * f), l / (f * f)]
    };
    let traj = ode::integrate(&rhs, 0.0, [r_p, w_radial, 0.0], 1.0, &GEODESIC_OPTS)?;
    let end = traj.end_state();
    let (r_end, rho_end) = (end[0], end[2]);
    Ok(phi(r_end)? * (rho_end.cos() * y_center + rho_end.sin() * y_vhat))
}

/// Fourth-order five-point second difference of u along one direction.
#[allow(clippy::too_many_arguments)]
fn fd_diag(
    profile: &WarpedProfile,
    phi: &dyn Fn(f64) -> Result<f64>,
    r_p: f64,
    y_center: f64,
    y_vhat: f64,
    dir_radial: f64,
    dir_tangential: f64,
    h: f64,
    u_center: f64,
) -> Result<f64> {
    let mut vals = [0.0; 4];
    for (k, s) in [-2.0f64, -1.0, 1.0, 2.0].iter().enumerate() {
        let t = s * h;
        vals[k] = u_along_geodesic(
            profile,
            phi,
            r_p,
            y_center,
            if *s < 0.0 { -y_vhat } else { y_vhat },
            dir_radial * t,
            dir_tangential * t.abs(),
        )?;
    }
    Ok((-vals[3] + 16.0 * vals[2] - 30.0 * u_center + 16.0 * vals[1] - vals[0]) / (12.0 * h * h))
}

/// Richardson-extrapolated cross difference ∂²u/∂x∂y in normal
/// coordinates, where `mk(x, y)` maps stencil offsets to a tangent vector
/// (radial part, tangential norm, ω·v̂ of the tangential direction).
fn fd_cross(
    profile: &WarpedProfile,
    phi: &dyn Fn(f64) -> Result<f64>,
    r_p: f64,
    y_center: f64,
    mk: &dyn Fn(f64, f64) -> (f64, f64, f64),
    h: f64,
) -> Result<f64> {
    let c_at = |hh: f64| -> Result<f64> {
        let mut acc = 0.0;
        for (sx, sy, sign) in
            [(1.0, 1.0, 1.0), (1.0, -1.0, -1.0), (-1.0, 1.0, -1.0), (-1.0, -1.0, 1.0)]
        {
            let (wr, wt, yv) = mk(sx * hh, sy * hh);
            acc += sign * u_along_geodesic(profile, phi, r_p, y_center, yv, wr, wt)?;
        }
        Ok(acc / (4.0 * hh * hh))
    };
    Ok((4.0 * c_at(h)? - c_at(2.0 * h)?) / 3.0)
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn random_unit_vector(rng: &mut ChaCha8Rng, dim: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let norm = dot(&v, &v).sqrt();
        if norm > 0.1 && norm <= 1.0 {
            return v.iter().map(|x| x / norm).collect();
        }
    }
}

/// Orthonormal basis of the tangent space of Sⁿ at θ₀, by Gram–Schmidt
/// of the standard basis.
fn tangent_frame(theta0: &[f64]) -> Vec<Vec<f64>> {
    let dim = theta0.len();
    let mut frame: Vec<Vec<f64>> = Vec::new();
    for k in 0..dim {
        let mut v = vec![0.0; dim];
        v[k] = 1.0;
        let d = dot(&v, theta0);
        for i in 0..dim {
            v[i] -= d * theta0[i];
        }
        for u in &frame {
            let d = dot(&v, u);
            for i in 0..dim {
                v[i] -= d * u[i];
            }
        }
        let norm = dot(&v, &v).sqrt();
        if norm > 1e-3 {
            frame.push(v.iter().map(|x| x / norm).collect());
            if frame.len() == dim - 1 {
                break;
            }
        }
    }
    frame
}

/// Worst relative mismatch between the radial Hessian reduction and raw
/// finite differences of u along geodesics, over `points` random frames
/// with base radii in (0.2R, 0.9R).  `values` supplies (φ, φ', φ'').
fn hessian_fd_max_mismatch(
    profile: &WarpedProfile,
    values: &dyn Fn(f64) -> Result<(f64, f64, f64)>,
    points: usize,
    seed: u64,
) -> Result<f64> {
    let n = profile.n() as usize;
    let radius = profile.radius();
    let h = radius / 100.0;
    let phi = |r: f64| values(r).map(|v| v.0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs: Vec<(f64, f64)> = Vec::new();
    for _ in 0..points {
        let r_p = rng.gen_range(0.2..0.9) * radius;
        let theta0 = random_unit_vector(&mut rng, n + 1);
        let omega = random_unit_vector(&mut rng, n + 1);
        let frame = tangent_frame(&theta0);
        let y0 = dot(&omega, &theta0);
        let yv: Vec<f64> = frame.iter().map(|v| dot(&omega, v)).collect();

        let (p0, p1, p2) = values(r_p)?;
        let f = profile.f(r_p);
        let fp = profile.df(r_p);
        let c_mix = (p1 - (fp / f) * p0) / f;
        let c_tan = (f * fp * p1 - p0) / (f * f);
        let u_center = p0 * y0;

        pairs.push((p2 * y0, fd_diag(profile, &phi, r_p, y0, 0.0, 1.0, 0.0, h, u_center)?));
        for i in 0..n {
            pairs.push((
                c_mix * yv[i],
                fd_cross(profile, &phi, r_p, y0, &|x, y| (x, y.abs(), y.signum() * yv[i]), h)?,
            ));
            pairs.push((
                c_tan * y0,
                fd_diag(profile, &phi, r_p, y0, yv[i], 0.0, 1.0, h, u_center)?,
            ));
            for j in (i + 1)..n {
                pairs.push((
                    0.0,
                    fd_cross(
                        profile,
                        &phi,
                        r_p,
                        y0,
                        &|x, y| {
                            let s = x.hypot(y);
                            (0.0, s, (x * yv[i] + y * yv[j]) / s)
                        },
                        h,
                    )?,
                ));
            }
        }
    }
    let scale = pairs.iter().fold(1.0f64, |m, (a, _)| m.max(a.abs()));
    let worst = pairs.iter().fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
    Ok(worst / scale)
}

/// Validates the first-mode Hessian reduction against finite differences
/// at `points` seeded random frames; returns the worst relative mismatch.
pub fn validate_hessian_reduction(
    profile: &WarpedProfile,
    points: usize,
    seed: u64,
) -> Result<f64> {
    if points == 0 {
        return Err(Error::InvalidInput("need at least one validation point".into()));
    }
    let eig = RadialEigenfunction::new(profile, 1, DEFAULT_ORACLE_TOL)?;
    hessian_fd_max_mismatch(profile, &|r| eig.values(r), points, seed)
}
