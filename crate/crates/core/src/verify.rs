//! Verification suites.
//!
//! Each suite drives one slice of the library against independent ground
//! truth: certified bounds against the numerical Steklov oracle on model
//! geometries, closed-form comparison solutions against direct ODE
//! integration, the integrated curvature inequalities against quadrature
//! of an actual eigenfunction, and the algebraic layers against seeded
//! random property sweeps.  A suite passes only if every case passes; a
//! case records what it compared and which checks failed.
//!
//! Reports are deterministic for a fixed seed apart from the wall-time
//! field.

use std::time::Instant;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bounds::{
    best_bound, corollary_b_bound, corollary_b_rolling_lower, fixed_point_epsilon,
    fixed_point_epsilon_mean, iterate_epsilon, iterate_epsilon_mean, spectral_gap,
    theorem_a_bound, theorem_c_bound, theorem_e_bound, theorem_f_bound, BestBound, BoundReport,
    Theorem,
};
use crate::geometry::GeometricData;
use crate::kernel::{delta_sup, optimize_delta, RadialKernel};
use crate::models::{curvature_data, parallel_mean_curvature_exact, WarpedProfile};
use crate::oracle::{
    collar_inequality_check, mode_sigma, reilly_inequality_check, steklov_spectrum,
    validate_hessian_reduction,
};
use crate::riccati::{
    integrate_riccati, parallel_h_upper, phi_closed, phi_maximal_time, psi_closed,
    psi_maximal_time, riccati_residual, ComparisonVariant,
};
use crate::{Error, Result};

/// Worst tolerated bound excess over the oracle: margins must stay above
/// −1e−8.
pub const MARGIN_SLACK: f64 = 1e-8;
/// Eigenvalue accuracy requested from the oracle inside suites.
const SUITE_ORACLE_TOL: f64 = 1e-9;

/// The named verification suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    /// Flat balls: exact spectrum plus bound margins.
    Balls,
    /// Spherical caps: bound margins and cross-bound dominance.
    Caps,
    /// Hyperbolic balls: the forbidden spectral interval.
    HyperbolicGap,
    /// Comparison ODEs: closed forms vs. integration, sharpness on models.
    Riccati,
    /// Integrated curvature inequalities on actual eigenfunctions.
    Reilly,
    /// Seeded random property sweeps of the algebraic layers.
    Properties,
    /// Everything above, concatenated.
    All,
}

impl Suite {
    pub fn name(&self) -> &'static str {
        match self {
            Suite::Balls => "balls",
            Suite::Caps => "caps",
            Suite::HyperbolicGap => "hyperbolic_gap",
            Suite::Riccati => "riccati",
            Suite::Reilly => "reilly",
            Suite::Properties => "properties",
            Suite::All => "all",
        }
    }
}

impl std::str::FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        match s {
            "balls" => Ok(Suite::Balls),
            "caps" => Ok(Suite::Caps),
            "hyperbolic_gap" => Ok(Suite::HyperbolicGap),
            "riccati" => Ok(Suite::Riccati),
            "reilly" => Ok(Suite::Reilly),
            "properties" => Ok(Suite::Properties),
            "all" => Ok(Suite::All),
            other => Err(Error::InvalidInput(format!(
                "unknown suite '{other}'; expected one of balls, caps, hyperbolic_gap, \
                 riccati, reilly, properties, all"
            ))),
        }
    }
}

/// One verified comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct CaseRecord {
    pub key: String,
    pub pass: bool,
    /// Oracle value the case compared against, when there is one.
    pub oracle: Option<f64>,
    /// Best certified bound entering the comparison, when there is one.
    pub bound: Option<f64>,
    /// oracle − bound; negative beyond −1e−8 is a failure.
    pub margin: Option<f64>,
    pub notes: Vec<String>,
    pub failures: Vec<String>,
}

/// Outcome of one suite run.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: Vec<CaseRecord>,
    pub pass: bool,
    /// Wall-clock seconds; the only nondeterministic field.
    pub wall_time_s: f64,
}

struct Case {
    key: String,
    oracle: Option<f64>,
    bound: Option<f64>,
    margin: Option<f64>,
    notes: Vec<String>,
    failures: Vec<String>,
}

impl Case {
    fn new(key: impl Into<String>) -> Self {
        Case {
            key: key.into(),
            oracle: None,
            bound: None,
            margin: None,
            notes: Vec::new(),
            failures: Vec::new(),
        }
    }

    fn fail(&mut self, msg: String) {
        self.failures.push(msg);
    }

    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        if !ok {
            self.fail(msg());
        }
    }

    fn note(&mut self, msg: impl Into<String>) {
        self.notes.push(msg.into());
    }

    fn finish(mut self) -> CaseRecord {
        if self.failures.len() > 6 {
            let extra = self.failures.len() - 5;
            self.failures.truncate(5);
            self.failures.push(format!("... and {extra} more"));
        }
        CaseRecord {
            pass: self.failures.is_empty(),
            key: self.key,
            oracle: self.oracle,
            bound: self.bound,
            margin: self.margin,
            notes: self.notes,
            failures: self.failures,
        }
    }
}

/// Runs `body`, converting an error into a recorded failure instead of
/// aborting the suite.
fn guarded(case: &mut Case, body: impl FnOnce(&mut Case) -> Result<()>) {
    if let Err(e) = body(case) {
        case.fail(format!("error: {e}"));
    }
}

/// Runs one suite with the given property seed.
pub fn run_suite(suite: Suite, seed: u64) -> Result<SuiteReport> {
    let start = Instant::now();
    let cases = match suite {
        Suite::Balls => balls_cases(),
        Suite::Caps => caps_cases(),
        Suite::HyperbolicGap => hyperbolic_gap_cases(),
        Suite::Riccati => riccati_cases(),
        Suite::Reilly => reilly_cases(seed),
        Suite::Properties => properties_cases(seed),
        Suite::All => {
            let mut all = balls_cases();
            all.extend(caps_cases());
            all.extend(hyperbolic_gap_cases());
            all.extend(riccati_cases());
            all.extend(reilly_cases(seed));
            all.extend(properties_cases(seed));
            all
        }
    };
    let pass = cases.iter().all(|c| c.pass);
    Ok(SuiteReport {
        suite: suite.name().to_string(),
        cases,
        pass,
        wall_time_s: start.elapsed().as_secs_f64(),
    })
}

/// Margin checks of every applicable bound against the oracle σ₁.
fn check_margins(case: &mut Case, best: &BestBound, sigma1: f64) {
    for rep in &best.reports {
        if let Some(b) = rep.bound {
            let margin = sigma1 - b;
            case.check(margin >= -MARGIN_SLACK, || {
                format!(
                    "bound {} = {b} exceeds oracle sigma1 = {sigma1} (margin {margin:.3e})",
                    rep.theorem
                )
            });
        }
    }
    case.bound = best.bound;
    case.margin = best.bound.map(|b| sigma1 - b);
    if let Some(th) = best.best {
        case.note(format!("best = {th}"));
    }
}

fn report_for(best: &BestBound, theorem: Theorem) -> Option<&BoundReport> {
    best.reports.iter().find(|r| r.theorem == theorem)
}

// -------------------------------------------------------------------
// balls
// -------------------------------------------------------------------

fn balls_cases() -> Vec<CaseRecord> {
    let mut out = Vec::new();
    for n in [1u32, 2, 3, 4] {
        for radius in [0.5, 1.0, 2.0] {
            let mut case = Case::new(format!("balls/n{n}_R{radius}"));
            guarded(&mut case, |case| {
                let profile = WarpedProfile::flat(n, radius)?;
                let est = steklov_spectrum(&profile, 10, SUITE_ORACLE_TOL)?;
                let exact = 1.0 / radius;
                case.oracle = Some(est.sigma1);
                case.check((est.sigma1 - exact).abs() <= 1e-8 * exact.max(1.0), || {
                    format!("sigma1 = {} but the exact value is {exact}", est.sigma1)
                });
                case.check(est.monotone, || "eigenvalue scan is not monotone".into());
                let data = curvature_data(&profile, radius)?;
                let best = best_bound(&data)?;
                case.check(best.bound.is_some(), || "no bound applies to a flat ball".into());
                check_margins(case, &best, est.sigma1);
                Ok(())
            });
            out.push(case.finish());
        }
    }
    out
}

// -------------------------------------------------------------------
// caps
// -------------------------------------------------------------------

fn caps_cases() -> Vec<CaseRecord> {
    use std::f64::consts::PI;
    let mut out = Vec::new();
    for n in [1u32, 2, 3] {
        for (tag, radius) in [("pi_over_6", PI / 6.0), ("pi_over_4", PI / 4.0), ("pi_over_3", PI / 3.0)]
        {
            let mut case = Case::new(format!("caps/n{n}_R{tag}"));
            guarded(&mut case, |case| {
                let profile = WarpedProfile::spherical(n, radius, 1.0)?;
                let est = steklov_spectrum(&profile, 10, SUITE_ORACLE_TOL)?;
                case.oracle = Some(est.sigma1);
                let data = curvature_data(&profile, radius)?;
                let best = best_bound(&data)?;
                case.check(best.bound.is_some(), || "no bound applies to a cap".into());
                check_margins(case, &best, est.sigma1);
                let e_rep = report_for(&best, Theorem::E).and_then(|r| r.bound);
                let f_rep = report_for(&best, Theorem::F).and_then(|r| r.bound);
                match (e_rep, f_rep) {
                    (Some(e), Some(f)) => case.check(f >= e - 1e-12, || {
                        format!("iterated mean bound {f} fell below its one-step version {e}")
                    }),
                    _ => case.fail("one-step and iterated bounds must both apply on caps".into()),
                }
                Ok(())
            });
            out.push(case.finish());
        }
    }
    out
}

// -------------------------------------------------------------------
// hyperbolic gap
// -------------------------------------------------------------------

fn hyperbolic_gap_cases() -> Vec<CaseRecord> {
    let mut out = Vec::new();
    for radius in [0.3, 0.5, 0.8] {
        let mut case = Case::new(format!("hyperbolic_gap/R{radius}"));
        guarded(&mut case, |case| {
            let profile = WarpedProfile::hyperbolic(2, radius, 1.0)?;
            let data = curvature_data(&profile, radius)?;
            let a_sq = -data.ric_lower_global;
            case.check((a_sq - 2.0).abs() <= 1e-12, || {
                format!("curvature extraction got a_sq = {a_sq}, expected 2")
            });
            let kappa = data.kappa_lower;
            let gap = spectral_gap(data.n, a_sq, kappa)?;
            let (lo, hi) = match gap {
                Some(g) => g,
                None => {
                    case.fail(format!("gap gate closed at kappa = {kappa}"));
                    return Ok(());
                }
            };
            case.note(format!("gap = ({lo}, {hi})"));
            if radius == 0.5 {
                case.check((lo - 0.46211715726000974).abs() <= 1e-9, || {
                    format!("lower endpoint {lo} drifted")
                });
                case.check((hi - 1.0819767068693265).abs() <= 1e-9, || {
                    format!("upper endpoint {hi} drifted")
                });
            }
            let guard = 1e-9 * hi.max(1.0);
            let mut sigma1 = f64::INFINITY;
            for ell in 1..=10u32 {
                let sigma = mode_sigma(&profile, ell, SUITE_ORACLE_TOL)?;
                sigma1 = sigma1.min(sigma);
                case.check(!(sigma > lo + guard && sigma < hi - guard), || {
                    format!("sigma({ell}) = {sigma} landed inside the forbidden ({lo}, {hi})")
                });
            }
            case.oracle = Some(sigma1);
            Ok(())
        });
        out.push(case.finish());
    }

    let mut gate = Case::new("hyperbolic_gap/gate_none");
    guarded(&mut gate, |case| {
        case.check(spectral_gap(2, 2.0, 1.2)?.is_none(), || {
            "gap gate must stay closed below the threshold".into()
        });
        case.check(spectral_gap(2, 2.0, 2.0f64.sqrt())?.is_none(), || {
            "gap gate must stay closed at the threshold".into()
        });
        case.check(spectral_gap(2, 2.0, 1.5)?.is_some(), || {
            "gap gate must open above the threshold".into()
        });
        Ok(())
    });
    out.push(gate.finish());
    out
}

// -------------------------------------------------------------------
// riccati
// -------------------------------------------------------------------

/// Max of |trajectory − closed form| / max(1, |closed form|) over the
/// trajectory's own sample times.
fn trajectory_error(
    traj_times: &[f64],
    traj_values: &[f64],
    exact: impl Fn(f64) -> Result<f64>,
) -> Result<f64> {
    let mut worst = 0.0f64;
    for (t, y) in traj_times.iter().zip(traj_values) {
        let e = exact(*t)?;
        worst = worst.max((y - e).abs() / e.abs().max(1.0));
    }
    Ok(worst)
}

fn riccati_cases() -> Vec<CaseRecord> {
    let mut out = Vec::new();

    for beta in [0.0, 0.5, 1.0, 2.0] {
        for big_k in [0.5, 1.0, 2.0] {
            let mut case = Case::new(format!("riccati/phi_b{beta}_K{big_k}"));
            guarded(&mut case, |case| {
                let t_end = 0.95 * phi_maximal_time(beta, big_k)?;
                let traj = integrate_riccati(beta * beta, -big_k, t_end)?;
                case.check(!traj.blew_up, || "unexpected blow-up inside the window".into());
                let err =
                    trajectory_error(&traj.times, &traj.values, |t| phi_closed(t, beta, big_k))?;
                case.note(format!("max_err = {err:.3e}"));
                case.check(err <= 1e-8, || format!("trajectory error {err:.3e} > 1e-8"));
                Ok(())
            });
            out.push(case.finish());
        }
    }

    for alpha in [0.0, 0.5, 1.0, 2.0] {
        for kappa in [0.5, 1.0, 2.0] {
            if alpha > kappa {
                continue;
            }
            let mut case = Case::new(format!("riccati/psi_a{alpha}_k{kappa}"));
            guarded(&mut case, |case| {
                if alpha == kappa {
                    let traj = integrate_riccati(-alpha * alpha, -kappa, 10.0)?;
                    let worst = traj
                        .values
                        .iter()
                        .fold(0.0f64, |m, y| m.max((y + kappa).abs()));
                    case.check(worst <= 1e-10, || {
                        format!("equilibrium drifted by {worst:.3e}")
                    });
                } else {
                    let t_end = 0.95 * psi_maximal_time(alpha, kappa)?;
                    let traj = integrate_riccati(-alpha * alpha, -kappa, t_end)?;
                    let err = trajectory_error(&traj.times, &traj.values, |t| {
                        psi_closed(t, alpha, kappa)
                    })?;
                    case.note(format!("max_err = {err:.3e}"));
                    case.check(err <= 1e-8, || format!("trajectory error {err:.3e} > 1e-8"));
                }
                Ok(())
            });
            out.push(case.finish());
        }
    }

    let mut cont = Case::new("riccati/continuity_at_zero_rate");
    guarded(&mut cont, |case| {
        let t_end = 0.95 / 1.0;
        for i in 0..=20 {
            let t = t_end * i as f64 / 20.0;
            let d_phi = (phi_closed(t, 1e-7, 1.0)? - phi_closed(t, 0.0, 1.0)?).abs();
            case.check(d_phi <= 1e-9, || {
                format!("phi jumps by {d_phi:.3e} across rate 0 at t = {t}")
            });
            let d_psi = (psi_closed(t, 1e-7, 1.0)? - psi_closed(t, 0.0, 1.0)?).abs();
            case.check(d_psi <= 1e-9, || {
                format!("psi jumps by {d_psi:.3e} across rate 0 at t = {t}")
            });
        }
        Ok(())
    });
    out.push(cont.finish());

    let mut res = Case::new("riccati/closed_form_residuals");
    guarded(&mut res, |case| {
        let h = 1e-5;
        let phi_specs = [(1.0f64, 1.0f64), (0.0, 2.0), (2.0, 0.5)];
        for (beta, big_k) in phi_specs {
            let t_hi = 0.95 * phi_maximal_time(beta, big_k)?;
            let mut worst = 0.0f64;
            for i in 1..=200 {
                let t = h + (t_hi - 2.0 * h) * i as f64 / 200.0;
                let r = riccati_residual(
                    phi_closed(t - h, beta, big_k)?,
                    phi_closed(t, beta, big_k)?,
                    phi_closed(t + h, beta, big_k)?,
                    h,
                    beta * beta,
                );
                worst = worst.max(r);
            }
            case.check(worst <= 1e-9, || {
                format!("phi({beta}, {big_k}) residual {worst:.3e} > 1e-9")
            });
        }
        let psi_specs = [(0.5f64, 1.0f64), (0.0, 1.0), (1.0, 2.0)];
        for (alpha, kappa) in psi_specs {
            let t_hi = 0.95 * psi_maximal_time(alpha, kappa)?;
            let mut worst = 0.0f64;
            for i in 1..=200 {
                let t = h + (t_hi - 2.0 * h) * i as f64 / 200.0;
                let r = riccati_residual(
                    psi_closed(t - h, alpha, kappa)?,
                    psi_closed(t, alpha, kappa)?,
                    psi_closed(t + h, alpha, kappa)?,
                    h,
                    -alpha * alpha,
                );
                worst = worst.max(r);
            }
            case.check(worst <= 1e-9, || {
                format!("psi({alpha}, {kappa}) residual {worst:.3e} > 1e-9")
            });
        }
        Ok(())
    });
    out.push(res.finish());

    for (tag, profile) in [
        ("flat", WarpedProfile::flat(2, 1.0)),
        (
            "cap",
            WarpedProfile::spherical(2, std::f64::consts::FRAC_PI_4, 1.0),
        ),
    ] {
        let mut case = Case::new(format!("riccati/sharpness_{tag}"));
        guarded(&mut case, |case| {
            let profile = profile?;
            let data = curvature_data(&profile, profile.radius())?;
            let window_e = delta_sup(data.collar_radius, data.beta(), data.kappa_upper)?;
            let window_p = delta_sup(data.collar_radius, data.ric_upper_sqrt(), data.mean_upper)?;
            let window = window_e.min(window_p);
            for i in 1..=100 {
                let delta = window * i as f64 / 101.0;
                let exact = parallel_mean_curvature_exact(&profile, delta)?;
                let sec = parallel_h_upper(delta, &data, ComparisonVariant::Sectional)?;
                let ric = parallel_h_upper(delta, &data, ComparisonVariant::Ricci)?;
                let scale = exact.abs().max(1.0);
                case.check((sec - exact).abs() <= 1e-9 * scale, || {
                    format!("sectional comparison off by {:.3e} at {delta}", sec - exact)
                });
                case.check(ric >= exact - 1e-9 * scale, || {
                    format!("Ricci comparison {ric} fell below the true value {exact}")
                });
                case.check(ric >= sec - 1e-9 * scale, || {
                    format!("Ricci comparison {ric} undercut the sectional one {sec}")
                });
            }
            Ok(())
        });
        out.push(case.finish());
    }

    out
}

// -------------------------------------------------------------------
// reilly
// -------------------------------------------------------------------

fn reilly_cases(seed: u64) -> Vec<CaseRecord> {
    let mut out = Vec::new();

    let mut flat = Case::new("reilly/flat_ball");
    guarded(&mut flat, |case| {
        let profile = WarpedProfile::flat(2, 1.0)?;
        let check = reilly_inequality_check(&profile, 0.0, 2.0, 1.0)?;
        case.oracle = Some(check.sigma);
        case.note(format!("residual = {:.3e}", check.residual));
        case.check(check.residual <= 1e-6, || {
            format!("integrated inequality residual {:.3e} > 1e-6", check.residual)
        });
        case.check(check.residual.abs() <= 1e-6, || {
            format!("flat-ball equality case drifted to {:.3e}", check.residual)
        });
        case.check(check.hessian_validation <= 1e-6, || {
            format!("Hessian reduction mismatch {:.3e}", check.hessian_validation)
        });
        Ok(())
    });
    out.push(flat.finish());

    let mut cap = Case::new("reilly/cap");
    guarded(&mut cap, |case| {
        let profile = WarpedProfile::spherical(2, std::f64::consts::FRAC_PI_4, 1.0)?;
        let check = reilly_inequality_check(&profile, 2.0, 2.0, 1.0)?;
        case.oracle = Some(check.sigma);
        case.note(format!("residual = {:.3e}", check.residual));
        case.check(check.residual <= 1e-6, || {
            format!("integrated inequality residual {:.3e} > 1e-6", check.residual)
        });
        Ok(())
    });
    out.push(cap.finish());

    let mut collar_flat = Case::new("reilly/collar_flat");
    guarded(&mut collar_flat, |case| {
        let profile = WarpedProfile::flat(2, 1.0)?;
        let check = collar_inequality_check(&profile, 1.0, 0.25)?;
        case.note(format!("residual = {:.3e}", check.residual));
        case.check(check.residual <= 1e-6, || {
            format!("collar trace residual {:.3e} > 1e-6", check.residual)
        });
        Ok(())
    });
    out.push(collar_flat.finish());

    let mut collar_cap = Case::new("reilly/collar_cap");
    guarded(&mut collar_cap, |case| {
        let profile = WarpedProfile::spherical(2, std::f64::consts::FRAC_PI_4, 1.0)?;
        let check = collar_inequality_check(&profile, 0.5, std::f64::consts::PI / 16.0)?;
        case.note(format!("residual = {:.3e}", check.residual));
        case.check(check.residual <= 1e-6, || {
            format!("collar trace residual {:.3e} > 1e-6", check.residual)
        });
        Ok(())
    });
    out.push(collar_cap.finish());

    for (tag, profile) in [
        ("flat", WarpedProfile::flat(2, 1.0)),
        (
            "cap",
            WarpedProfile::spherical(2, std::f64::consts::FRAC_PI_4, 1.0),
        ),
    ] {
        let mut case = Case::new(format!("reilly/hessian_fd_{tag}"));
        guarded(&mut case, |case| {
            let err = validate_hessian_reduction(&profile?, 20, seed)?;
            case.note(format!("max_mismatch = {err:.3e}"));
            case.check(err <= 1e-6, || format!("Hessian reduction mismatch {err:.3e} > 1e-6"));
            Ok(())
        });
        out.push(case.finish());
    }

    out
}

// -------------------------------------------------------------------
// properties
// -------------------------------------------------------------------

fn log_uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    lo * (hi / lo).powf(rng.gen::<f64>())
}

/// Random certified data on which every collar bound applies.
fn random_applicable_data(rng: &mut ChaCha8Rng) -> GeometricData {
    let n = rng.gen_range(1..=6u32);
    let kappa = log_uniform(rng, 0.1, 10.0);
    let big_k = kappa * rng.gen_range(1.0..2.0);
    let a_sq = log_uniform(rng, 1e-3, 10.0);
    let b_sq = a_sq * rng.gen_range(1.0..4.0);
    let beta_sq = log_uniform(rng, 1e-3, 4.0);
    let alpha = kappa * rng.gen_range(0.1..0.9);
    let rolling = log_uniform(rng, 0.1, 10.0);
    let collar = rolling * rng.gen_range(0.3..1.0);
    GeometricData {
        n,
        ric_lower_global: 0.0,
        ric_lower_collar: a_sq,
        ric_upper_collar: b_sq,
        sec_upper_collar: beta_sq,
        sec_lower_collar: -alpha * alpha,
        kappa_lower: kappa,
        kappa_upper: big_k,
        mean_lower: n as f64 * kappa,
        mean_upper: n as f64 * big_k,
        rolling_radius: rolling,
        collar_radius: collar,
    }
}

fn properties_cases(seed: u64) -> Vec<CaseRecord> {
    let mut out = Vec::new();

    let mut fp = Case::new("properties/fixed_point_iteration");
    {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        fp.note("1000 samples: E in [0.1, 100], kappa in [0.01, 100], a_sq in {0} u [1e-4, 1e4], n in 1..=10, h in [0.01, 300]");
        for i in 0..1000 {
            let e_val = log_uniform(&mut rng, 0.1, 100.0);
            let n = rng.gen_range(1..=10u32);
            let kappa = log_uniform(&mut rng, 0.01, 100.0);
            let a_sq = if rng.gen::<f64>() < 0.25 {
                0.0
            } else {
                log_uniform(&mut rng, 1e-4, 1e4)
            };
            let h = log_uniform(&mut rng, 0.01, 300.0);
            guarded(&mut fp, |case| {
                let closed = fixed_point_epsilon(e_val, n, kappa, a_sq)?;
                let trace = iterate_epsilon(e_val, n, kappa, a_sq, 1e-12, 100_000)?;
                let last = *trace.last().expect("trace is nonempty");
                case.check((last - closed).abs() <= 1e-10, || {
                    format!("sample {i}: iteration limit {last} vs closed form {closed}")
                });
                case.check(trace.windows(2).all(|w| w[1] > w[0]), || {
                    format!("sample {i}: iterate trace is not strictly increasing")
                });

                let h_match = n as f64 * kappa;
                let via_mean = fixed_point_epsilon_mean(e_val, a_sq, h_match, kappa)?;
                case.check(
                    (via_mean - closed).abs() <= 1e-13 * closed.abs().max(1.0),
                    || format!("sample {i}: mean form at h = n*kappa gives {via_mean}, principal gives {closed}"),
                );

                let mean_closed = fixed_point_epsilon_mean(e_val, a_sq, h, kappa)?;
                let mean_trace = iterate_epsilon_mean(e_val, a_sq, h, kappa, 1e-12, 100_000)?;
                let mean_last = *mean_trace.last().expect("trace is nonempty");
                case.check((mean_last - mean_closed).abs() <= 1e-10, || {
                    format!("sample {i}: mean iteration limit {mean_last} vs closed form {mean_closed}")
                });
                Ok(())
            });
        }
    }
    out.push(fp.finish());

    let mut scaling = Case::new("properties/scaling_covariance");
    {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5ca1_ab1e);
        scaling.note("1000 random data sets, factors in [1e-3, 1e3], all five collar bounds");
        type BoundFn = fn(&GeometricData) -> Result<BoundReport>;
        let theorems: [(&str, BoundFn); 5] = [
            ("A", theorem_a_bound),
            ("E", theorem_e_bound),
            ("F", theorem_f_bound),
            ("C", theorem_c_bound),
            ("corB", corollary_b_bound),
        ];
        for i in 0..1000 {
            let data = random_applicable_data(&mut rng);
            let factor = log_uniform(&mut rng, 1e-3, 1e3);
            let scaled = data.scaled(factor);
            guarded(&mut scaling, |case| {
                for (label, f) in theorems {
                    let base = f(&data)?;
                    let scl = f(&scaled)?;
                    let (Some(b0), Some(b1)) = (base.bound, scl.bound) else {
                        case.fail(format!("sample {i}: bound {label} unexpectedly inapplicable"));
                        continue;
                    };
                    let err = (factor * b1 - b0).abs();
                    case.check(err <= 1e-12 * b0.abs().max(1.0), || {
                        format!("sample {i}: bound {label} breaks scaling by {err:.3e}")
                    });
                }
                Ok(())
            });
        }
    }
    out.push(scaling.finish());

    let mut oracle_scaling = Case::new("properties/oracle_scaling");
    {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x0dd_ba11);
        oracle_scaling.note("100 random model profiles, factors in [1/3, 3]");
        for i in 0..100 {
            guarded(&mut oracle_scaling, |case| {
                let n = rng.gen_range(1..=3u32);
                let kind = rng.gen_range(0..3u32);
                let c: f64 = rng.gen_range(0.2..1.0);
                let radius = rng.gen_range(0.2..1.5);
                let profile = match kind {
                    0 => WarpedProfile::flat(n, radius)?,
                    1 => {
                        let r = radius.min(0.95 * std::f64::consts::FRAC_PI_2 / c.sqrt());
                        WarpedProfile::spherical(n, r, c)?
                    }
                    _ => WarpedProfile::hyperbolic(n, radius, c)?,
                };
                let factor = log_uniform(&mut rng, 1.0 / 3.0, 3.0);
                let s1 = mode_sigma(&profile, 1, 1e-10)?;
                let s2 = mode_sigma(&profile.scaled(factor)?, 1, 1e-10)?;
                let err = (factor * s2 - s1).abs();
                case.check(err <= 1e-9 * s1.abs().max(1.0), || {
                    format!("sample {i}: eigenvalue breaks scaling by {err:.3e}")
                });
                Ok(())
            });
        }
    }
    out.push(oracle_scaling.finish());

    let mut mono = Case::new("properties/kernel_monotonicity");
    {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xfee1_600d);
        mono.note("200 bases x 4-point grids in each of a_sq, kappa, big_k, beta");
        let mk = |n: u32, kappa: f64, big_k: f64, a_sq: f64, beta: f64, rolling: f64, collar: f64| {
            GeometricData {
                n,
                ric_lower_global: 0.0,
                ric_lower_collar: a_sq,
                ric_upper_collar: a_sq,
                sec_upper_collar: beta * beta,
                sec_lower_collar: 0.0,
                kappa_lower: kappa,
                kappa_upper: big_k,
                mean_lower: n as f64 * kappa,
                mean_upper: n as f64 * big_k,
                rolling_radius: rolling,
                collar_radius: collar,
            }
        };
        for i in 0..200 {
            let n = rng.gen_range(1..=6u32);
            let kappa = log_uniform(&mut rng, 0.1, 5.0);
            let big_k = kappa * rng.gen_range(1.0..2.0);
            let a_sq = log_uniform(&mut rng, 1e-3, 10.0);
            let beta = log_uniform(&mut rng, 0.01, 2.0);
            let rolling = log_uniform(&mut rng, 0.2, 5.0);
            let collar = rolling * rng.gen_range(0.5..1.0);
            guarded(&mut mono, |case| {
                let eval = |d: &GeometricData| -> Result<f64> {
                    Ok(theorem_a_bound(d)?.bound.expect("applicable by construction"))
                };
                let slack = 1e-11;
                let mut prev = f64::NEG_INFINITY;
                for s in [0.5, 1.0, 2.0, 4.0] {
                    let b = eval(&mk(n, kappa, big_k, a_sq * s, beta, rolling, collar))?;
                    case.check(b >= prev - slack * b.abs().max(1.0), || {
                        format!("sample {i}: bound decreased along the a_sq grid")
                    });
                    prev = b;
                }
                prev = f64::NEG_INFINITY;
                for s in [0.25, 0.5, 0.75, 1.0] {
                    let b = eval(&mk(n, kappa * s, big_k, a_sq, beta, rolling, collar))?;
                    case.check(b >= prev - slack * b.abs().max(1.0), || {
                        format!("sample {i}: bound decreased along the kappa grid")
                    });
                    prev = b;
                }
                prev = f64::INFINITY;
                for s in [1.0, 1.5, 2.0, 3.0] {
                    let b = eval(&mk(n, kappa, big_k * s, a_sq, beta, rolling, collar))?;
                    case.check(b <= prev + slack * b.abs().max(1.0), || {
                        format!("sample {i}: bound increased along the big_k grid")
                    });
                    prev = b;
                }
                prev = f64::INFINITY;
                for s in [0.5, 1.0, 2.0, 4.0] {
                    let b = eval(&mk(n, kappa, big_k, a_sq, beta * s, rolling, collar))?;
                    case.check(b <= prev + slack * b.abs().max(1.0), || {
                        format!("sample {i}: bound increased along the beta grid")
                    });
                    prev = b;
                }
                Ok(())
            });
        }
    }
    out.push(mono.finish());

    let mut window = Case::new("properties/window_interior_minimizer");
    {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xca11_ab1e);
        window.note("200 random trace kernels");
        for i in 0..200 {
            let n = rng.gen_range(1..=6u32);
            let beta = if rng.gen::<f64>() < 1.0 / 3.0 {
                0.0
            } else {
                log_uniform(&mut rng, 0.01, 3.0)
            };
            let big_k = log_uniform(&mut rng, 0.05, 5.0);
            let r = log_uniform(&mut rng, 0.05, 5.0);
            guarded(&mut window, |case| {
                let kernel = RadialKernel::E { n, beta, big_k };
                let sup = delta_sup(r, beta, big_k)?;
                let (d_star, v) = optimize_delta(&kernel, sup)?;
                case.check(d_star > 0.0 && d_star < sup, || {
                    format!("sample {i}: minimizer {d_star} left the open window (0, {sup})")
                });
                let near_zero = kernel.eval(sup * 1e-6)?;
                let near_edge = kernel.eval(sup * (1.0 - 1e-9))?;
                case.check(near_zero >= v && near_edge >= v - 1e-12 * v.abs().max(1.0), || {
                    format!("sample {i}: endpoint values undercut the reported minimum")
                });
                for j in 1..=64 {
                    let delta = sup * j as f64 / 65.0;
                    let val = kernel.eval(delta)?;
                    case.check(val >= v - 1e-12 * v.abs().max(1.0), || {
                        format!("sample {i}: grid value at {delta} beats the reported minimum")
                    });
                }
                Ok(())
            });
        }
    }
    out.push(window.finish());

    let mut rolling = Case::new("properties/rolling_certificate");
    {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xdead_beef);
        rolling.note("200 hyperbolic balls: certified interior radius never exceeds the true one");
        for i in 0..200 {
            let n = rng.gen_range(1..=4u32);
            let c = log_uniform(&mut rng, 0.1, 4.0);
            let radius = log_uniform(&mut rng, 0.1, 2.0);
            guarded(&mut rolling, |case| {
                let profile = WarpedProfile::hyperbolic(n, radius, c)?;
                let data = curvature_data(&profile, radius)?;
                let cert = corollary_b_rolling_lower(
                    data.kappa_lower,
                    data.alpha(),
                    data.beta(),
                    data.kappa_upper,
                )?;
                case.check(cert <= radius + 1e-12, || {
                    format!("sample {i}: certified radius {cert} exceeds the true radius {radius}")
                });
                Ok(())
            });
        }
    }
    out.push(rolling.finish());

    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in [
            Suite::Balls,
            Suite::Caps,
            Suite::HyperbolicGap,
            Suite::Riccati,
            Suite::Reilly,
            Suite::Properties,
            Suite::All,
        ] {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn riccati_suite_passes() {
        let report = run_suite(Suite::Riccati, 0).unwrap();
        for case in &report.cases {
            assert!(case.pass, "{}: {:?}", case.key, case.failures);
        }
        assert!(report.pass);
    }

    #[test]
    fn balls_suite_passes_and_is_deterministic() {
        let mut a = run_suite(Suite::Balls, 0).unwrap();
        let mut b = run_suite(Suite::Balls, 0).unwrap();
        for case in &a.cases {
            assert!(case.pass, "{}: {:?}", case.key, case.failures);
        }
        a.wall_time_s = 0.0;
        b.wall_time_s = 0.0;
        assert_eq!(a, b);
    }

    #[test]
    fn properties_suite_passes() {
        let report = run_suite(Suite::Properties, 0).unwrap();
        for case in &report.cases {
            assert!(case.pass, "{}: {:?}", case.key, case.failures);
        }
    }
}
