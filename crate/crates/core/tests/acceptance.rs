//! Acceptance battery: one test per shipping criterion, each printing a
//! single pass/fail line (run with `--nocapture` to see them).
//!
//! The criteria pin the library's externally promised behaviour: oracle
//! accuracy on model balls, closed-form kernel facts, convergence of the
//! fixed-point recursions, bound/oracle consistency, comparison sharpness,
//! the integral inequalities behind the bounds, the hyperbolic forbidden
//! interval, scaling covariance, and determinism of the verification suites.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use steklov::{
    best_bound, collar_inequality_check, curvature_data, delta_sup, fixed_point_epsilon,
    fixed_point_epsilon_mean, integrate_riccati, iterate_epsilon, iterate_epsilon_mean,
    kernel_e, kernel_f, kernel_p, mode_sigma, optimize_delta, parallel_h_upper,
    parallel_mean_curvature_exact, phi_closed, phi_maximal_time, psi_maximal_time,
    reilly_inequality_check, run_suite, spectral_gap, theorem_a_bound, validate_hessian_reduction,
    ComparisonVariant, GeometricData, RadialKernel, Suite, Theorem, WarpedProfile,
};

/// Runs one criterion body and prints its verdict line.
fn criterion(id: u32, title: &str, body: impl FnOnce() -> Result<(), String>) {
    match body() {
        Ok(()) => println!("criterion {id:02} ({title}): PASS"),
        Err(msg) => {
            println!("criterion {id:02} ({title}): FAIL - {msg}");
            panic!("criterion {id:02} ({title}) failed: {msg}");
        }
    }
}

macro_rules! ensure {
    ($cond:expr, $($arg:tt)+) => {
        if !$cond {
            return Err(format!($($arg)+));
        }
    };
}

fn lib<T>(r: steklov::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn log_uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    lo * (hi / lo).powf(rng.gen_range(0.0..1.0))
}

#[test]
fn criterion_01_flat_ball_spectra_match_l_over_r() {
    criterion(1, "flat ball spectra match l/R", || {
        let start = Instant::now();
        for n in 1..=4u32 {
            for radius in [0.5, 1.0, 2.0] {
                let profile = lib(WarpedProfile::flat(n, radius))?;
                for ell in 1..=3u32 {
                    let sigma = lib(mode_sigma(&profile, ell, 1e-9))?;
                    let exact = ell as f64 / radius;
                    ensure!(
                        (sigma - exact).abs() <= 1e-8,
                        "n={n} R={radius} l={ell}: sigma={sigma} vs exact={exact}"
                    );
                }
            }
        }
        let elapsed = start.elapsed().as_secs_f64();
        ensure!(elapsed < 5.0, "spectra took {elapsed:.2}s, budget is 5s");
        Ok(())
    });
}

#[test]
fn criterion_02_curved_surface_spectra_match_closed_forms() {
    criterion(2, "curved n=1 spectra match closed forms", || {
        for radius in [0.3, std::f64::consts::FRAC_PI_4, 0.8] {
            let cap = lib(WarpedProfile::spherical(1, radius, 1.0))?;
            let pseudo = lib(WarpedProfile::hyperbolic(1, radius, 1.0))?;
            for ell in 1..=3u32 {
                let got = lib(mode_sigma(&cap, ell, 1e-9))?;
                let exact = ell as f64 / radius.sin();
                ensure!(
                    (got - exact).abs() <= 1e-8 * exact.max(1.0),
                    "cap R={radius} l={ell}: {got} vs {exact}"
                );
                let got = lib(mode_sigma(&pseudo, ell, 1e-9))?;
                let exact = ell as f64 / radius.sinh();
                ensure!(
                    (got - exact).abs() <= 1e-8 * exact.max(1.0),
                    "hyperbolic R={radius} l={ell}: {got} vs {exact}"
                );
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_03_closed_form_minimizer_and_growth_in_n() {
    criterion(3, "kernel minimizer closed forms and bound growth in n", || {
        for n in [2u32, 4, 9, 100] {
            let kern = RadialKernel::E { n, beta: 0.0, big_k: 1.0 };
            let (delta_star, _) = lib(optimize_delta(&kern, 1.0))?;
            let nf = n as f64;
            let expected_delta = (nf.sqrt() - 1.0) / (nf - 1.0);
            ensure!(
                (delta_star - expected_delta).abs() <= 1e-8,
                "n={n}: delta*={delta_star} vs {expected_delta}"
            );
            let f_star = lib(kernel_f(delta_star, n, 0.0, 1.0, 1.0))?;
            let expected_f = 2.0 + 4.0 * nf.sqrt() + nf;
            ensure!(
                (f_star - expected_f).abs() <= 1e-10 * expected_f.max(1.0),
                "n={n}: F(delta*)={f_star} vs {expected_f}"
            );
        }

        let mut prev = f64::NEG_INFINITY;
        let mut last = 0.0;
        for n in [1u32, 2, 4, 9, 100, 10_000] {
            let rep = lib(theorem_a_bound(&GeometricData::flat_ball(n, 1.0)))?;
            let bound = rep.bound.ok_or_else(|| format!("no bound at n={n}"))?;
            ensure!(bound > prev, "bound should grow with n: {bound} after {prev} at n={n}");
            prev = bound;
            last = bound;
        }
        ensure!(last > 0.98, "bound at n=10000 is {last}, expected > 0.98");
        Ok(())
    });
}

#[test]
fn criterion_04_flat_unit_ball_bound_brackets() {
    criterion(4, "flat unit ball bound sits in (0.5, sigma1]", || {
        let profile = lib(WarpedProfile::flat(2, 1.0))?;
        let geom = lib(curvature_data(&profile, 1.0))?;
        let best = lib(best_bound(&geom))?;
        let bound = best.bound.ok_or("no bound on the flat unit ball")?;
        ensure!((bound - 0.599456).abs() <= 1e-4, "bound={bound}, expected about 0.599456");
        ensure!(bound > 0.5, "bound={bound} should beat the 1/2 baseline");
        let sigma1 = lib(mode_sigma(&profile, 1, 1e-9))?;
        ensure!(bound <= sigma1 + 1e-8, "bound={bound} exceeds oracle sigma1={sigma1}");
        Ok(())
    });
}

#[test]
fn criterion_05_fixed_point_recursions_converge() {
    criterion(5, "fixed-point recursions converge to the closed forms", || {
        let mut rng = ChaCha8Rng::seed_from_u64(20_260_816);
        for sample in 0..1000 {
            let e_val = log_uniform(&mut rng, 0.1, 100.0);
            let n = rng.gen_range(1..=10u32);
            let kappa = log_uniform(&mut rng, 0.01, 100.0);
            let a_sq = if rng.gen_range(0.0..1.0) < 0.25 {
                0.0
            } else {
                log_uniform(&mut rng, 1e-4, 1e4)
            };
            let h = log_uniform(&mut rng, 0.01, 300.0);
            let tag = format!(
                "sample {sample}: E={e_val} n={n} kappa={kappa} a_sq={a_sq} h={h}"
            );

            let closed = lib(fixed_point_epsilon(e_val, n, kappa, a_sq))?;
            let trace = lib(iterate_epsilon(e_val, n, kappa, a_sq, 1e-12, 200_000))?;
            ensure!(trace[0] == 0.0, "{tag}: principal recursion must start at 0");
            ensure!(
                trace.windows(2).all(|w| w[1] > w[0]),
                "{tag}: principal iterates must increase strictly"
            );
            let last = *trace.last().unwrap();
            ensure!(
                (last - closed).abs() <= 1e-10 * closed.abs().max(1.0),
                "{tag}: principal limit {last} vs closed form {closed}"
            );

            let eps1 = 0.5 * (-e_val + (e_val * e_val + 4.0 * a_sq).sqrt());
            let closed = lib(fixed_point_epsilon_mean(e_val, a_sq, h, kappa))?;
            let trace = lib(iterate_epsilon_mean(e_val, a_sq, h, kappa, 1e-12, 200_000))?;
            ensure!(
                (trace[0] - eps1).abs() <= 1e-15 * eps1.max(1.0),
                "{tag}: mean recursion must start at the single-step value {eps1}"
            );
            ensure!(
                trace.windows(2).all(|w| w[1] > w[0]),
                "{tag}: mean iterates must increase strictly"
            );
            let last = *trace.last().unwrap();
            ensure!(
                (last - closed).abs() <= 1e-10 * closed.abs().max(1.0),
                "{tag}: mean limit {last} vs closed form {closed}"
            );
        }
        Ok(())
    });
}

#[test]
fn criterion_06_bounds_never_exceed_the_oracle() {
    criterion(6, "no bound exceeds the oracle on model balls and caps", || {
        let mut models: Vec<(String, WarpedProfile)> = Vec::new();
        for n in 1..=4u32 {
            for radius in [0.5, 1.0, 2.0] {
                models.push((
                    format!("flat n={n} R={radius}"),
                    lib(WarpedProfile::flat(n, radius))?,
                ));
            }
        }
        use std::f64::consts::PI;
        for n in 1..=3u32 {
            for radius in [PI / 6.0, PI / 4.0, PI / 3.0] {
                models.push((
                    format!("cap n={n} R={radius:.4}"),
                    lib(WarpedProfile::spherical(n, radius, 1.0))?,
                ));
            }
        }

        for (tag, profile) in &models {
            let geom = lib(curvature_data(profile, profile.radius()))?;
            let sigma1 = lib(mode_sigma(profile, 1, 1e-9))?;
            let best = lib(best_bound(&geom))?;
            let mut e_bound = None;
            let mut f_bound = None;
            for rep in &best.reports {
                if let (true, Some(bound)) = (rep.applicable, rep.bound) {
                    ensure!(
                        sigma1 - bound >= -1e-8 * sigma1.max(1.0),
                        "{tag}: {} bound {bound} exceeds sigma1 {sigma1}",
                        rep.theorem.label()
                    );
                    match rep.theorem {
                        Theorem::E => e_bound = Some(bound),
                        Theorem::F => f_bound = Some(bound),
                        _ => {}
                    }
                }
            }
            // On caps both refinements apply and the mean-curvature one
            // can only improve on the single-step value.
            if let (Some(e), Some(f)) = (e_bound, f_bound) {
                ensure!(
                    f >= e - 1e-12 * e.abs().max(1.0),
                    "{tag}: iterated bound {f} fell below single-step bound {e}"
                );
            }
            if tag.starts_with("cap") {
                ensure!(
                    e_bound.is_some() && f_bound.is_some(),
                    "{tag}: expected both refinement bounds to apply"
                );
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_07_parallel_comparisons_are_sharp_on_models() {
    criterion(7, "parallel mean-curvature comparisons are sharp on models", || {
        let models = [
            lib(WarpedProfile::flat(2, 1.0))?,
            lib(WarpedProfile::spherical(2, std::f64::consts::FRAC_PI_4, 1.0))?,
        ];
        for profile in &models {
            let geom = lib(curvature_data(profile, profile.radius()))?;
            let window_e = lib(delta_sup(geom.collar_radius, geom.beta(), geom.kappa_upper))?;
            let window_p =
                lib(delta_sup(geom.collar_radius, geom.ric_upper_sqrt(), geom.mean_upper))?;
            let window = window_e.min(window_p);
            for i in 1..=100 {
                let delta = window * i as f64 / 101.0;
                let exact = lib(parallel_mean_curvature_exact(profile, delta))?;
                let scale = exact.abs().max(1.0);

                let sec = lib(parallel_h_upper(delta, &geom, ComparisonVariant::Sectional))?;
                ensure!(
                    (sec - exact).abs() <= 1e-9 * scale,
                    "sectional comparison at delta={delta}: {sec} vs exact {exact}"
                );
                let e_val = lib(kernel_e(delta, geom.n, geom.beta(), geom.kappa_upper))?;
                ensure!(
                    ((e_val - 1.0 / delta) - sec).abs() <= 1e-12 * scale,
                    "kernel E minus 1/delta should equal the sectional comparison"
                );
                ensure!(
                    exact <= sec + 1e-9 * scale,
                    "exact parallel curvature {exact} exceeds its bound {sec} at {delta}"
                );

                let ric = lib(parallel_h_upper(delta, &geom, ComparisonVariant::Ricci))?;
                ensure!(
                    ric >= exact - 1e-9 * scale,
                    "Ricci comparison {ric} fell below exact {exact} at delta={delta}"
                );
                let p_val = lib(kernel_p(delta, geom.ric_upper_sqrt(), geom.mean_upper))?;
                ensure!(
                    ((p_val - 1.0 / delta) - ric).abs() <= 1e-12 * scale,
                    "kernel P minus 1/delta should equal the Ricci comparison"
                );
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_08_riccati_closed_forms_match_integration() {
    criterion(8, "Riccati closed forms match direct integration", || {
        for beta in [0.0, 0.5, 1.0, 2.0] {
            for big_k in [0.5, 1.0, 2.0] {
                let t_max = lib(phi_maximal_time(beta, big_k))?;
                let traj = lib(integrate_riccati(beta * beta, -big_k, 0.95 * t_max))?;
                ensure!(!traj.blew_up, "phi(beta={beta}, K={big_k}) blew up early");
                for (t, y) in traj.times.iter().zip(&traj.values) {
                    let closed = lib(phi_closed(*t, beta, big_k))?;
                    ensure!(
                        (y - closed).abs() <= 1e-8 * closed.abs().max(1.0),
                        "phi(beta={beta}, K={big_k}) at t={t}: {y} vs {closed}"
                    );
                }
            }
        }
        for alpha in [0.0f64, 0.5, 1.0, 2.0] {
            for kappa in [0.5, 1.0, 2.0] {
                if alpha > kappa {
                    continue; // the comparison solution is not defined here
                }
                if alpha == kappa {
                    // Equilibrium: the solution must hold the constant value.
                    let traj = lib(integrate_riccati(-alpha * alpha, -kappa, 10.0))?;
                    for y in &traj.values {
                        ensure!(
                            (y + kappa).abs() <= 1e-10 * kappa.max(1.0),
                            "equilibrium at alpha=kappa={kappa} drifted to {y}"
                        );
                    }
                    continue;
                }
                let t_max = lib(psi_maximal_time(alpha, kappa))?;
                let traj = lib(integrate_riccati(-alpha * alpha, -kappa, 0.95 * t_max))?;
                ensure!(!traj.blew_up, "psi(alpha={alpha}, kappa={kappa}) blew up early");
                for (t, y) in traj.times.iter().zip(&traj.values) {
                    let closed = lib(steklov::psi_closed(*t, alpha, kappa))?;
                    ensure!(
                        (y - closed).abs() <= 1e-8 * closed.abs().max(1.0),
                        "psi(alpha={alpha}, kappa={kappa}) at t={t}: {y} vs {closed}"
                    );
                }
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_09_integral_inequalities_hold_numerically() {
    criterion(9, "integral inequalities hold on flat and cap models", || {
        let flat = lib(WarpedProfile::flat(2, 1.0))?;
        let cap = lib(WarpedProfile::spherical(2, std::f64::consts::FRAC_PI_4, 1.0))?;

        let check = lib(reilly_inequality_check(&flat, 0.0, 2.0, 1.0))?;
        ensure!(
            check.residual.abs() <= 1e-6,
            "flat boundary identity residual {}",
            check.residual
        );
        ensure!(
            check.hessian_validation <= 1e-6,
            "flat Hessian reduction mismatch {}",
            check.hessian_validation
        );
        let check = lib(reilly_inequality_check(&cap, 2.0, 2.0, 1.0))?;
        ensure!(check.residual.abs() <= 1e-6, "cap boundary identity residual {}", check.residual);
        ensure!(
            check.hessian_validation <= 1e-6,
            "cap Hessian reduction mismatch {}",
            check.hessian_validation
        );

        let collar = lib(collar_inequality_check(&flat, 1.0, 0.25))?;
        ensure!(collar.residual <= 1e-6, "flat collar inequality residual {}", collar.residual);
        let collar = lib(collar_inequality_check(&cap, 0.5, std::f64::consts::PI / 16.0))?;
        ensure!(collar.residual <= 1e-6, "cap collar inequality residual {}", collar.residual);

        for (tag, profile) in [("flat", &flat), ("cap", &cap)] {
            let worst = lib(validate_hessian_reduction(profile, 20, 1))?;
            ensure!(worst <= 1e-6, "{tag}: Hessian reduction vs finite differences {worst}");
        }
        Ok(())
    });
}

#[test]
fn criterion_10_hyperbolic_forbidden_interval_is_empty() {
    criterion(10, "hyperbolic forbidden interval contains no modes", || {
        let profile = lib(WarpedProfile::hyperbolic(2, 0.5, 1.0))?;
        let geom = lib(curvature_data(&profile, 0.5))?;
        let a_sq = -geom.ric_lower_global;
        ensure!((a_sq - 2.0).abs() <= 1e-12, "interior Ricci bound should be -2, got {a_sq}");

        let gap = lib(spectral_gap(geom.n, a_sq, geom.kappa_lower))?;
        let (lo, hi) = gap.ok_or("the forbidden interval should exist here")?;
        ensure!(
            (lo - 0.462_117_157_260_009_74).abs() <= 1e-9,
            "lower endpoint {lo} vs tanh(1/2)"
        );
        ensure!(
            (hi - 1.081_976_706_869_326_5).abs() <= 1e-9,
            "upper endpoint {hi} vs coth(1/2)/2"
        );

        let guard = 1e-8 * hi.max(1.0);
        for ell in 1..=10u32 {
            let sigma = lib(mode_sigma(&profile, ell, 1e-9))?;
            ensure!(
                sigma <= lo + guard || sigma >= hi - guard,
                "mode l={ell} has sigma={sigma} inside the forbidden interval ({lo}, {hi})"
            );
        }

        // The interval only exists when kappa clears the Ricci threshold.
        ensure!(
            lib(spectral_gap(2, 2.0, 1.2))?.is_none(),
            "no interval should exist at kappa=1.2"
        );
        ensure!(
            lib(spectral_gap(2, 2.0, std::f64::consts::SQRT_2))?.is_none(),
            "no interval should exist at the threshold itself"
        );
        ensure!(
            lib(spectral_gap(2, 2.0, 1.5))?.is_some(),
            "the interval should exist just above the threshold"
        );
        Ok(())
    });
}

#[test]
fn criterion_11_everything_is_scaling_covariant() {
    criterion(11, "bounds and oracle transform correctly under rescaling", || {
        // A synthetic datum on which every bound applies.
        let synthetic = GeometricData {
            n: 2,
            ric_lower_global: 0.0,
            ric_lower_collar: 0.5,
            ric_upper_collar: 1.0,
            sec_upper_collar: 0.5,
            sec_lower_collar: -0.64,
            kappa_lower: 1.0,
            kappa_upper: 1.5,
            mean_lower: 2.0,
            mean_upper: 3.0,
            rolling_radius: 1.0,
            collar_radius: 0.6,
        };
        let flat = lib(curvature_data(&lib(WarpedProfile::flat(2, 1.0))?, 1.0))?;
        let cap = lib(curvature_data(
            &lib(WarpedProfile::spherical(2, std::f64::consts::FRAC_PI_4, 1.0))?,
            std::f64::consts::FRAC_PI_4,
        ))?;

        for (tag, geom) in [("synthetic", &synthetic), ("flat", &flat), ("cap", &cap)] {
            let base = lib(best_bound(geom))?;
            for factor in [0.1, 2.0, 37.5] {
                let scaled = lib(best_bound(&geom.scaled(factor)))?;
                for (rep, rep_s) in base.reports.iter().zip(&scaled.reports) {
                    ensure!(
                        rep.applicable == rep_s.applicable,
                        "{tag} x{factor}: {} applicability changed under scaling",
                        rep.theorem.label()
                    );
                    if let (Some(b), Some(bs)) = (rep.bound, rep_s.bound) {
                        ensure!(
                            (factor * bs - b).abs() <= 1e-12 * b.abs().max(1.0),
                            "{tag} x{factor}: {} bound {b} vs rescaled {}",
                            rep.theorem.label(),
                            factor * bs
                        );
                    }
                }
            }
        }

        let profiles = [
            lib(WarpedProfile::flat(2, 1.0))?,
            lib(WarpedProfile::spherical(2, std::f64::consts::FRAC_PI_4, 1.0))?,
            lib(WarpedProfile::hyperbolic(1, 0.5, 2.0))?,
        ];
        for profile in &profiles {
            let sigma = lib(mode_sigma(profile, 1, 1e-10))?;
            for factor in [0.5, 3.0] {
                let scaled = lib(profile.scaled(factor))?;
                let sigma_s = lib(mode_sigma(&scaled, 1, 1e-10))?;
                ensure!(
                    (factor * sigma_s - sigma).abs() <= 1e-9 * sigma.max(1.0),
                    "oracle sigma1 {sigma} vs rescaled {} at factor {factor}",
                    factor * sigma_s
                );
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_12_verification_suites_pass_deterministically() {
    criterion(12, "all verification suites pass, deterministically", || {
        let start = Instant::now();
        let mut first = lib(run_suite(Suite::All, 0))?;
        let mut second = lib(run_suite(Suite::All, 0))?;
        let elapsed = start.elapsed().as_secs_f64();

        ensure!(first.pass, "verification failed: {:?}", failing_keys(&first));
        first.wall_time_s = 0.0;
        second.wall_time_s = 0.0;
        ensure!(first == second, "two identically seeded runs disagreed");
        ensure!(elapsed < 60.0, "two full runs took {elapsed:.1}s, budget is 60s per run");
        Ok(())
    });
}

fn failing_keys(report: &steklov::SuiteReport) -> Vec<String> {
    report
        .cases
        .iter()
        .filter(|c| !c.pass)
        .map(|c| format!("{}: {}", c.key, c.failures.join("; ")))
        .collect()
}
