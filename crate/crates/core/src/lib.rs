//! Certified lower bounds for the first Steklov eigenvalue σ₁ of a compact
//! manifold with boundary, together with a numerical Steklov oracle on
//! rotationally symmetric warped-product models.
//!
//! The Steklov problem on a compact Riemannian manifold (M, g) with boundary
//! Σ asks for σ such that Δf = 0 in M and ∂f/∂ν = σ f on Σ.  Its spectrum is
//! discrete, 0 = σ₀ < σ₁ ≤ σ₂ ≤ …, and σ₁ is the quantity everything here is
//! about.  The library has two halves that deliberately never share code:
//!
//! * the *bound* side ([`kernel`], [`bounds`], [`riccati`]) evaluates
//!   closed-form lower bounds for σ₁ from curvature and boundary-convexity
//!   data — radial comparison kernels, their optimization in the collar
//!   depth δ, and the fixed-point iterations that turn a kernel value into a
//!   certified bound;
//! * the *oracle* side ([`models`], [`oracle`]) computes σ₁ numerically on
//!   warped-product balls dr² + f(r)² g_{Sⁿ} by separation of variables and
//!   high-accuracy ODE shooting, plus direct quadrature checks of the
//!   integral inequalities the bounds rest on.
//!
//! [`verify`] runs the two halves against each other (bounds must never
//! exceed the oracle's σ₁), and [`report`] renders results as plain-text
//! documents the CLI prints.
//!
//! All numerics are plain `f64`.  Functions that take geometric data
//! validate it and report hypothesis violations as data, not panics: a bound
//! that does not apply returns a report with `applicable = false` and the
//! list of failed gates.

pub mod bounds;
pub mod geometry;
pub mod kernel;
pub mod models;
pub mod numerics;
pub mod oracle;
pub mod report;
pub mod riccati;
pub mod verify;

pub use bounds::{
    best_bound, best_bound_at, corollary_b_bound, corollary_b_bound_at,
    corollary_b_rolling_lower, escobar_baselines, fixed_point_epsilon, fixed_point_epsilon_mean,
    iterate_epsilon, iterate_epsilon_mean, spectral_gap, theorem_a_bound, theorem_a_bound_at,
    theorem_c_bound, theorem_c_bound_at, theorem_e_bound, theorem_e_bound_at, theorem_f_bound,
    theorem_f_bound_at, BestBound, BoundReport, DeltaChoice, KernelValues, Theorem,
};
pub use geometry::GeometricData;
pub use kernel::{
    delta_sup, kernel_e, kernel_f, kernel_p, kernel_q, kernel_t, optimize_delta, RadialKernel,
};
pub use models::{curvature_data, parallel_mean_curvature_exact, ProfileKind, WarpedProfile};
pub use oracle::{
    collar_inequality_check, harmonic_multiplicity, mode_sigma, reilly_inequality_check,
    steklov_spectrum, validate_hessian_reduction, CollarCheck, ModeRecord, RadialEigenfunction,
    ReillyCheck, SteklovEstimate,
};
pub use riccati::{
    integrate_riccati, parallel_h_upper, phi_closed, phi_maximal_time, psi_closed,
    psi_maximal_time, riccati_residual, ComparisonVariant, RiccatiTrajectory,
};
pub use verify::{run_suite, CaseRecord, Suite, SuiteReport};

/// Errors shared across the crate.
///
/// The variants distinguish *whose fault* a failure is: `InvalidInput` means
/// the data itself is malformed, `Domain` means a numerically valid input
/// fell outside a function's mathematical domain (for example a collar depth
/// at or beyond a kernel singularity), `Inapplicable` means the input is
/// fine but a theorem's hypotheses exclude it, and `Convergence`/`Oracle`
/// flag internal numerical failures that should never occur on admissible
/// input.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("hypotheses not satisfied: {0}")]
    Inapplicable(String),
    #[error("convergence failure: {0}")]
    Convergence(String),
    #[error("oracle failure: {0}")]
    Oracle(String),
}

pub type Result<T> = std::result::Result<T, Error>;
