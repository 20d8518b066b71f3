//! Command-line interface: certified Steklov lower bounds, kernel sweeps,
//! the numerical oracle, the verification suites, and the spectral-gap gate.
//!
//! ```text
//! steklov bound  INPUT [--theorem auto|A|E|F|C|corB|escobar] [--delta auto|DEPTH]
//! steklov sweep  INPUT [--samples N] [--output PATH|-]
//! steklov oracle --kind KIND --n N --radius R [--c C] [--l-max L] [--tol T]
//! steklov verify [--suite NAME] [--seed S]
//! steklov gap    --n N --a-sq A2 --kappa K
//! ```
//!
//! Input documents are TOML with exactly one of two geometry sections:
//!
//! ```text
//! [geometry]   # curvature/convexity data; the 12 fields reports print
//! [profile]    # a model ball: kind = "flat"|"spherical"|"hyperbolic",
//!              # n, radius, optional c (curved kinds) and collar_radius
//! ```
//!
//! plus an optional `[solver]` table carrying a theorem selection, a fixed
//! collar depth `delta`, oracle knobs (`l_max`, `oracle_tol`), and a
//! property-suite `seed`.  Command-line flags override `[solver]` entries.
//!
//! Reports embed the resolved `[geometry]` (and a `[solver]` echo whenever a
//! non-default selection was in force), and every float is printed with 17
//! significant digits, which round-trips `f64` exactly.  Feeding a printed
//! report back in as the input therefore reproduces the same report byte for
//! byte; the extra `[report]` table is ignored on input.
//!
//! Exit codes: 0 success — including bounds whose hypotheses fail, which is
//! a report (`applicable = false`), not an error; 1 verification-suite
//! failure; 2 malformed input.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand};
use serde::Deserialize;

use steklov::report::{self, DocBuilder};
use steklov::{
    best_bound_at, corollary_b_bound_at, curvature_data, delta_sup, escobar_baselines, kernel_e,
    kernel_f, kernel_p, kernel_q, run_suite, spectral_gap, steklov_spectrum, theorem_a_bound_at,
    theorem_c_bound_at, theorem_e_bound_at, theorem_f_bound_at, BestBound, DeltaChoice, Error,
    GeometricData, ProfileKind, Result, Suite, Theorem, WarpedProfile,
};

/// Seed the property suites run with when neither `--seed` nor the
/// `STEKLOV_SEED` environment variable says otherwise.
const DEFAULT_SEED: u64 = 0;

#[derive(Parser)]
#[command(
    name = "steklov",
    version,
    about = "Certified lower bounds for the first Steklov eigenvalue, \
             with a numerical cross-check oracle on warped-product balls"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the lower bounds on an input document and print a report.
    Bound {
        /// TOML input document ([geometry] or [profile], optional [solver]).
        input: PathBuf,
        /// Bound to evaluate: auto, A, E, F, C, corB, or escobar.
        #[arg(long)]
        theorem: Option<String>,
        /// Collar depth: "auto" minimizes the kernel, a number forces that depth.
        #[arg(long)]
        delta: Option<String>,
    },
    /// Tabulate kernels and bounds across the admissible depth window as CSV.
    Sweep {
        /// TOML input document ([geometry] or [profile]).
        input: PathBuf,
        /// Number of interior sample depths (at least 2).
        #[arg(long, default_value_t = 100)]
        samples: usize,
        /// Output CSV path, or "-" for standard output.
        #[arg(long, default_value = "-")]
        output: String,
    },
    /// Compute the low Steklov spectrum of a model ball by ODE shooting.
    Oracle {
        /// Model kind: flat, spherical, or hyperbolic.
        #[arg(long)]
        kind: String,
        /// Boundary dimension n (the ball has dimension n + 1).
        #[arg(long)]
        n: u32,
        /// Geodesic radius of the ball.
        #[arg(long)]
        radius: f64,
        /// Curvature magnitude for the curved kinds (defaults to 1).
        #[arg(long)]
        c: Option<f64>,
        /// Largest harmonic degree to scan.
        #[arg(long, default_value_t = 10)]
        l_max: u32,
        /// Verified relative accuracy per eigenvalue.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Run a verification suite; exits 1 when any case fails.
    Verify {
        /// Suite name: balls, caps, hyperbolic_gap, riccati, reilly,
        /// properties, or all.
        #[arg(long, default_value = "all")]
        suite: String,
        /// Property-suite seed (overrides the STEKLOV_SEED environment variable).
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Report the forbidden interval for Steklov eigenvalues, if one exists.
    Gap {
        /// Boundary dimension n.
        #[arg(long)]
        n: u32,
        /// Interior Ricci lower bound a² (Ric >= a² > 0).
        #[arg(long)]
        a_sq: f64,
        /// Principal-curvature lower bound of the boundary.
        #[arg(long)]
        kappa: f64,
    },
}

/// Top-level shape of an input document.  Exactly one of `geometry` and
/// `profile` must be present; a `report` table (as printed by `bound` or
/// `oracle`) is accepted and ignored so reports can be fed back in.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct InputDoc {
    geometry: Option<GeometryDoc>,
    profile: Option<ProfileDoc>,
    solver: Option<SolverDoc>,
    #[serde(default)]
    #[allow(dead_code)]
    report: Option<toml::Value>,
}

/// Curvature and boundary-convexity data, mirroring the report fields.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GeometryDoc {
    n: u32,
    ric_lower_global: f64,
    ric_lower_collar: f64,
    ric_upper_collar: f64,
    sec_upper_collar: f64,
    sec_lower_collar: f64,
    kappa_lower: f64,
    kappa_upper: f64,
    mean_lower: f64,
    mean_upper: f64,
    rolling_radius: f64,
    collar_radius: f64,
}

impl GeometryDoc {
    fn to_data(&self) -> GeometricData {
        GeometricData {
            n: self.n,
            ric_lower_global: self.ric_lower_global,
            ric_lower_collar: self.ric_lower_collar,
            ric_upper_collar: self.ric_upper_collar,
            sec_upper_collar: self.sec_upper_collar,
            sec_lower_collar: self.sec_lower_collar,
            kappa_lower: self.kappa_lower,
            kappa_upper: self.kappa_upper,
            mean_lower: self.mean_lower,
            mean_upper: self.mean_upper,
            rolling_radius: self.rolling_radius,
            collar_radius: self.collar_radius,
        }
    }
}

/// A model ball described by its warping profile.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ProfileDoc {
    kind: String,
    n: u32,
    radius: f64,
    c: Option<f64>,
    /// Collar depth the derived curvature data certifies (defaults to radius).
    collar_radius: Option<f64>,
}

impl ProfileDoc {
    fn build(&self) -> Result<WarpedProfile> {
        build_model(&self.kind, self.n, self.radius, self.c)
    }
}

/// Optional overrides; command-line flags take precedence over these.
///
/// `l_max`, `oracle_tol`, and `seed` are accepted so one document can carry
/// settings for every command, but only `theorem` and `delta` matter to the
/// commands that read documents.
#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct SolverDoc {
    theorem: Option<String>,
    delta: Option<f64>,
    #[allow(dead_code)]
    l_max: Option<u32>,
    #[allow(dead_code)]
    oracle_tol: Option<f64>,
    #[allow(dead_code)]
    seed: Option<u64>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Bound { input, theorem, delta } => cmd_bound(&input, theorem, delta),
        Command::Sweep { input, samples, output } => cmd_sweep(&input, samples, &output),
        Command::Oracle { kind, n, radius, c, l_max, tol } => {
            cmd_oracle(&kind, n, radius, c, l_max, tol)
        }
        Command::Verify { suite, seed } => cmd_verify(&suite, seed),
        Command::Gap { n, a_sq, kappa } => cmd_gap(n, a_sq, kappa),
    }
}

fn load_input(path: &Path) -> Result<InputDoc> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
    toml::from_str(&text)
        .map_err(|e| Error::InvalidInput(format!("cannot parse {}: {e}", path.display())))
}

fn resolve_geometry(doc: &InputDoc) -> Result<GeometricData> {
    match (&doc.geometry, &doc.profile) {
        (Some(g), None) => {
            let geom = g.to_data();
            geom.validate()?;
            Ok(geom)
        }
        (None, Some(p)) => {
            let profile = p.build()?;
            curvature_data(&profile, p.collar_radius.unwrap_or(p.radius))
        }
        (Some(_), Some(_)) => Err(Error::InvalidInput(
            "input document must contain exactly one of [geometry] or [profile], not both".into(),
        )),
        (None, None) => Err(Error::InvalidInput(
            "input document needs a [geometry] or [profile] section".into(),
        )),
    }
}

fn build_model(kind: &str, n: u32, radius: f64, c: Option<f64>) -> Result<WarpedProfile> {
    match kind {
        "flat" => {
            if c.is_some() {
                return Err(Error::InvalidInput(
                    "a flat profile takes no curvature parameter c".into(),
                ));
            }
            WarpedProfile::flat(n, radius)
        }
        "spherical" => WarpedProfile::spherical(n, radius, c.unwrap_or(1.0)),
        "hyperbolic" => WarpedProfile::hyperbolic(n, radius, c.unwrap_or(1.0)),
        other => Err(Error::InvalidInput(format!(
            "unknown profile kind {other:?}; expected flat, spherical, or hyperbolic"
        ))),
    }
}

/// Dispatches a theorem selector to the matching bound, wrapping single
/// theorems in the same comparison shape `auto` produces.
fn run_selected(geom: &GeometricData, selector: &str, choice: DeltaChoice) -> Result<BestBound> {
    let single = |theorem: Theorem, rep: steklov::BoundReport| BestBound {
        best: rep.bound.map(|_| theorem),
        bound: rep.bound,
        reports: vec![rep],
    };
    match selector {
        "auto" => best_bound_at(geom, choice),
        "A" => Ok(single(Theorem::A, theorem_a_bound_at(geom, choice)?)),
        "E" => Ok(single(Theorem::E, theorem_e_bound_at(geom, choice)?)),
        "F" => Ok(single(Theorem::F, theorem_f_bound_at(geom, choice)?)),
        "C" => Ok(single(Theorem::C, theorem_c_bound_at(geom, choice)?)),
        "corB" => Ok(single(Theorem::CorB, corollary_b_bound_at(geom, choice)?)),
        "escobar" => {
            let reports = escobar_baselines(geom)?;
            let mut best: Option<(Theorem, f64)> = None;
            for rep in &reports {
                if let (true, Some(b)) = (rep.applicable, rep.bound) {
                    if best.map_or(true, |(_, cur)| b > cur) {
                        best = Some((rep.theorem, b));
                    }
                }
            }
            Ok(BestBound {
                best: best.map(|(t, _)| t),
                bound: best.map(|(_, b)| b),
                reports,
            })
        }
        other => Err(Error::InvalidInput(format!(
            "unknown theorem selector {other:?}; expected auto, A, E, F, C, corB, or escobar"
        ))),
    }
}

fn parse_depth(text: &str) -> Result<f64> {
    text.parse::<f64>().map_err(|_| {
        Error::InvalidInput(format!("collar depth must be a number or \"auto\", got {text:?}"))
    })
}

/// Echoes a non-default selection into the report so that re-reading the
/// report reproduces the run exactly.
fn solver_echo(doc: &mut DocBuilder, selector: &str, choice: DeltaChoice) {
    let fixed = match choice {
        DeltaChoice::Fixed(d) => Some(d),
        DeltaChoice::Optimize => None,
    };
    if selector == "auto" && fixed.is_none() {
        return;
    }
    doc.section("solver");
    doc.kv_str("theorem", selector);
    doc.kv_float_opt("delta", fixed);
}

fn cmd_bound(input: &Path, theorem: Option<String>, delta: Option<String>) -> Result<ExitCode> {
    let doc = load_input(input)?;
    let geom = resolve_geometry(&doc)?;
    let solver = doc.solver.unwrap_or_default();
    let selector = theorem
        .or(solver.theorem)
        .unwrap_or_else(|| "auto".into());
    let choice = match delta.as_deref() {
        Some("auto") => DeltaChoice::Optimize,
        Some(text) => DeltaChoice::Fixed(parse_depth(text)?),
        None => match solver.delta {
            Some(d) => DeltaChoice::Fixed(d),
            None => DeltaChoice::Optimize,
        },
    };
    let best = run_selected(&geom, &selector, choice)?;
    let mut out = DocBuilder::new();
    report::geometry_section(&mut out, "geometry", &geom);
    solver_echo(&mut out, &selector, choice);
    report::best_bound_report(&mut out, &best);
    print!("{}", out.finish());
    Ok(ExitCode::SUCCESS)
}

fn cmd_sweep(input: &Path, samples: usize, output: &str) -> Result<ExitCode> {
    if samples < 2 {
        return Err(Error::InvalidInput(format!(
            "sweep needs at least 2 samples, got {samples}"
        )));
    }
    let doc = load_input(input)?;
    let geom = resolve_geometry(&doc)?;
    let probe = theorem_a_bound_at(&geom, DeltaChoice::Optimize)?;
    if !probe.applicable {
        return Err(Error::Inapplicable(format!(
            "sweep needs the principal-curvature bound to apply; violated: {}",
            probe.violations.join("; ")
        )));
    }
    // The swept window is the joint admissible window of every tabulated
    // column, so each row evaluates every kernel strictly inside its domain.
    let with_c = theorem_c_bound_at(&geom, DeltaChoice::Optimize)?.applicable;
    let window_e = delta_sup(geom.collar_radius, geom.beta(), geom.kappa_upper)?;
    let window = if with_c {
        window_e.min(delta_sup(geom.collar_radius, geom.ric_upper_sqrt(), geom.mean_upper)?)
    } else {
        window_e
    };
    let mut csv = String::new();
    csv.push_str(if with_c { "delta,E,F,bound_A,P,Q,bound_C\n" } else { "delta,E,F,bound_A\n" });
    for i in 1..=samples {
        let delta = window * i as f64 / (samples + 1) as f64;
        let e = kernel_e(delta, geom.n, geom.beta(), geom.kappa_upper)?;
        let f = kernel_f(delta, geom.n, geom.beta(), geom.kappa_upper, geom.kappa_lower)?;
        let a = theorem_a_bound_at(&geom, DeltaChoice::Fixed(delta))?
            .bound
            .ok_or_else(|| Error::Convergence(format!("no principal bound at depth {delta}")))?;
        let mut row = vec![
            report::fmt_float(delta),
            report::fmt_float(e),
            report::fmt_float(f),
            report::fmt_float(a),
        ];
        if with_c {
            let p = kernel_p(delta, geom.ric_upper_sqrt(), geom.mean_upper)?;
            let q = kernel_q(delta, geom.ric_upper_sqrt(), geom.mean_upper, geom.n, geom.kappa_lower)?;
            let c = theorem_c_bound_at(&geom, DeltaChoice::Fixed(delta))?
                .bound
                .ok_or_else(|| {
                    Error::Convergence(format!("no Ricci-window bound at depth {delta}"))
                })?;
            row.push(report::fmt_float(p));
            row.push(report::fmt_float(q));
            row.push(report::fmt_float(c));
        }
        csv.push_str(&row.join(","));
        csv.push('\n');
    }
    if output == "-" {
        print!("{csv}");
    } else {
        fs::write(output, &csv)
            .map_err(|e| Error::InvalidInput(format!("cannot write {output}: {e}")))?;
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_oracle(
    kind: &str,
    n: u32,
    radius: f64,
    c: Option<f64>,
    l_max: u32,
    tol: f64,
) -> Result<ExitCode> {
    let profile = build_model(kind, n, radius, c)?;
    let est = steklov_spectrum(&profile, l_max, tol)?;
    let mut out = DocBuilder::new();
    out.section("profile");
    out.kv_str("kind", kind);
    out.kv_int("n", n as i64);
    out.kv_float("radius", radius);
    if let ProfileKind::Spherical { c } | ProfileKind::Hyperbolic { c } = profile.kind() {
        out.kv_float("c", c);
    }
    out.section("report");
    out.kv_str("command", "oracle");
    out.kv_float("sigma1", est.sigma1);
    out.kv_float("error_estimate", est.error_estimate);
    out.kv_bool("truncated", est.truncated);
    out.kv_bool("monotone", est.monotone);
    out.kv_int("l_max", l_max as i64);
    for mode in &est.modes {
        out.array_section("report.modes");
        out.kv_int("ell", mode.ell as i64);
        out.kv_float("sigma", mode.sigma);
        out.kv_int("multiplicity", mode.multiplicity as i64);
    }
    print!("{}", out.finish());
    Ok(ExitCode::SUCCESS)
}

/// Seed precedence: explicit flag, then STEKLOV_SEED, then the default.
fn effective_seed(flag: Option<u64>) -> Result<u64> {
    if let Some(seed) = flag {
        return Ok(seed);
    }
    match std::env::var("STEKLOV_SEED") {
        Ok(text) => text.trim().parse::<u64>().map_err(|_| {
            Error::InvalidInput(format!("STEKLOV_SEED must be an unsigned integer, got {text:?}"))
        }),
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_SEED),
        Err(e) => Err(Error::InvalidInput(format!("cannot read STEKLOV_SEED: {e}"))),
    }
}

fn cmd_verify(suite: &str, seed: Option<u64>) -> Result<ExitCode> {
    let suite = Suite::from_str(suite)?;
    let seed = effective_seed(seed)?;
    let outcome = run_suite(suite, seed)?;
    print!("{}", report::render_suite_report(&outcome));
    Ok(if outcome.pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_gap(n: u32, a_sq: f64, kappa: f64) -> Result<ExitCode> {
    let gap = spectral_gap(n, a_sq, kappa)?;
    let mut out = DocBuilder::new();
    out.section("report");
    out.kv_str("command", "gap");
    out.kv_int("n", n as i64);
    out.kv_float("a_sq", a_sq);
    out.kv_float("kappa", kappa);
    out.kv_bool("gap_exists", gap.is_some());
    if let Some((lower, upper)) = gap {
        out.kv_float("lower", lower);
        out.kv_float("upper", upper);
    }
    print!("{}", out.finish());
    Ok(ExitCode::SUCCESS)
}
