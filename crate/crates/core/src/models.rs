//! Rotationally symmetric model geometries: geodesic balls in warped
//! products ([0, R] × Sⁿ, dr² + f(r)² g_{Sⁿ}).
//!
//! These are the verification substrate: their curvature, boundary data,
//! and parallel-hypersurface mean curvature are all known in closed form,
//!
//! ```text
//! Sec(∂r, v)   = −f''/f            Ric(∂r, ∂r)/|∂r|² = −n f''/f
//! Sec(v, w)    = (1 − f'²)/f²      Ric(v, v)/|v|²    = −f''/f + (n−1)(1−f'²)/f²
//! κ_i(Σ)       = f'(R)/f(R)        H(Σ_δ)            = n f'(R−δ)/f(R−δ)
//! ```
//!
//! so every certified inequality produced from a model can be checked
//! against exact values.  Three analytic families are built in (flat r,
//! spherical sin(√c·r)/√c, hyperbolic sinh(√c·r)/√c) alongside a custom
//! kind that takes user-supplied (f, f', f'') — derivatives must be
//! supplied analytically, never differenced.

use std::sync::Arc;

use crate::geometry::GeometricData;
use crate::{Error, Result};

/// Which analytic family a profile belongs to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ProfileKind {
    Flat,
    Spherical { c: f64 },
    Hyperbolic { c: f64 },
    Custom,
}

type RadialFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A warped-product geodesic ball of radius `radius` with fiber Sⁿ.
#[derive(Clone)]
pub struct WarpedProfile {
    kind: ProfileKind,
    n: u32,
    radius: f64,
    f: RadialFn,
    df: RadialFn,
    ddf: RadialFn,
}

impl std::fmt::Debug for WarpedProfile {
    fn fmt(&self, fmt: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        fmt.debug_struct("WarpedProfile")
            .field("kind", &self.kind)
            .field("n", &self.n)
            .field("radius", &self.radius)
            .finish()
    }
}

/// Pole-regularity probe location and tolerance: f(0) = 0, f'(0) = 1.
const POLE_PROBE: f64 = 1e-8;
const POLE_TOL: f64 = 1e-10;
/// Sample counts for positivity and curvature extremization.
const POSITIVITY_SAMPLES: usize = 64;
const CURVATURE_SAMPLES: usize = 1024;
/// Custom-profile curvature formulas are 0/0 at the pole; sampling stays
/// at least this fraction of R away from it.
const POLE_FLOOR_FRACTION: f64 = 1e-3;

impl WarpedProfile {
    /// Euclidean ball: f(r) = r.
    pub fn flat(n: u32, radius: f64) -> Result<Self> {
        check_basics(n, radius)?;
        Ok(WarpedProfile {
            kind: ProfileKind::Flat,
            n,
            radius,
            f: Arc::new(|r| r),
            df: Arc::new(|_| 1.0),
            ddf: Arc::new(|_| 0.0),
        })
    }

    /// Geodesic ball in the round sphere of curvature c > 0:
    /// f(r) = sin(√c·r)/√c.  Requires radius < π/(2√c) so the boundary
    /// stays strictly convex.
    pub fn spherical(n: u32, radius: f64, c: f64) -> Result<Self> {
        check_basics(n, radius)?;
        if !(c > 0.0 && c.is_finite()) {
            return Err(Error::InvalidInput(format!("curvature c must be positive, got {c}")));
        }
        let s = c.sqrt();
        if !(radius < std::f64::consts::FRAC_PI_2 / s) {
            return Err(Error::InvalidInput(format!(
                "spherical radius {radius} must stay below the hemisphere bound {}",
                std::f64::consts::FRAC_PI_2 / s
            )));
        }
        Ok(WarpedProfile {
            kind: ProfileKind::Spherical { c },
            n,
            radius,
            f: Arc::new(move |r| (s * r).sin() / s),
            df: Arc::new(move |r| (s * r).cos()),
            ddf: Arc::new(move |r| -s * (s * r).sin()),
        })
    }

    /// Geodesic ball in hyperbolic space of curvature −c (c > 0):
    /// f(r) = sinh(√c·r)/√c.
    pub fn hyperbolic(n: u32, radius: f64, c: f64) -> Result<Self> {
        check_basics(n, radius)?;
        if !(c > 0.0 && c.is_finite()) {
            return Err(Error::InvalidInput(format!("curvature c must be positive, got {c}")));
        }
        let s = c.sqrt();
        Ok(WarpedProfile {
            kind: ProfileKind::Hyperbolic { c },
            n,
            radius,
            f: Arc::new(move |r| (s * r).sinh() / s),
            df: Arc::new(move |r| (s * r).cosh()),
            ddf: Arc::new(move |r| s * (s * r).sinh()),
        })
    }

    /// User-supplied warping triple (f, f', f'').  The derivatives are
    /// trusted as analytic; only pole regularity and positivity of f on
    /// (0, R] are checked.
    pub fn custom(
        n: u32,
        radius: f64,
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
        df: impl Fn(f64) -> f64 + Send + Sync + 'static,
        ddf: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Result<Self> {
        check_basics(n, radius)?;
        let profile = WarpedProfile {
            kind: ProfileKind::Custom,
            n,
            radius,
            f: Arc::new(f),
            df: Arc::new(df),
            ddf: Arc::new(ddf),
        };
        if (profile.f(POLE_PROBE) - POLE_PROBE).abs() > POLE_TOL
            || (profile.df(POLE_PROBE) - 1.0).abs() > POLE_TOL
        {
            return Err(Error::InvalidInput(
                "pole regularity failed: need f(0) = 0 and f'(0) = 1".into(),
            ));
        }
        for i in 1..=POSITIVITY_SAMPLES {
            let r = radius * i as f64 / POSITIVITY_SAMPLES as f64;
            if !(profile.f(r) > 0.0) {
                return Err(Error::InvalidInput(format!(
                    "warping function must be positive on (0, R]; f({r}) = {}",
                    profile.f(r)
                )));
            }
        }
        Ok(profile)
    }

    pub fn kind(&self) -> ProfileKind {
        self.kind
    }

    /// Fiber dimension n (the manifold has dimension n + 1).
    pub fn n(&self) -> u32 {
        self.n
    }

    /// Geodesic-ball radius R.
    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn f(&self, r: f64) -> f64 {
        (self.f)(r)
    }

    pub fn df(&self, r: f64) -> f64 {
        (self.df)(r)
    }

    pub fn ddf(&self, r: f64) -> f64 {
        (self.ddf)(r)
    }

    /// Boundary principal curvature f'(R)/f(R) (all n of them coincide).
    pub fn boundary_kappa(&self) -> f64 {
        self.df(self.radius) / self.f(self.radius)
    }

    /// Homothety by `factor`: (f, R) ↦ (factor·f(·/factor), factor·R),
    /// which divides every curvature by factor² and every Steklov
    /// eigenvalue by factor.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        if !(factor > 0.0 && factor.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "scale factor must be positive, got {factor}"
            )));
        }
        match self.kind {
            ProfileKind::Flat => WarpedProfile::flat(self.n, self.radius * factor),
            ProfileKind::Spherical { c } => {
                WarpedProfile::spherical(self.n, self.radius * factor, c / (factor * factor))
            }
            ProfileKind::Hyperbolic { c } => {
                WarpedProfile::hyperbolic(self.n, self.radius * factor, c / (factor * factor))
            }
            ProfileKind::Custom => {
                let (f, df, ddf) = (self.f.clone(), self.df.clone(), self.ddf.clone());
                WarpedProfile::custom(
                    self.n,
                    self.radius * factor,
                    move |r| factor * f(r / factor),
                    move |r| df(r / factor),
                    move |r| ddf(r / factor) / factor,
                )
            }
        }
    }

    /// Radial sectional curvature Sec(∂r, v) as a function of r.
    fn sec_radial_fn(&self) -> RadialFn {
        match self.kind {
            ProfileKind::Flat => Arc::new(|_| 0.0),
            ProfileKind::Spherical { c } => Arc::new(move |_| c),
            ProfileKind::Hyperbolic { c } => Arc::new(move |_| -c),
            ProfileKind::Custom => {
                let (f, ddf) = (self.f.clone(), self.ddf.clone());
                Arc::new(move |r| -ddf(r) / f(r))
            }
        }
    }

    /// Tangential sectional curvature Sec(v, w) as a function of r.
    fn sec_tangential_fn(&self) -> RadialFn {
        match self.kind {
            ProfileKind::Flat => Arc::new(|_| 0.0),
            ProfileKind::Spherical { c } => Arc::new(move |_| c),
            ProfileKind::Hyperbolic { c } => Arc::new(move |_| -c),
            ProfileKind::Custom => {
                let (f, df) = (self.f.clone(), self.df.clone());
                Arc::new(move |r| {
                    let fp = df(r);
                    (1.0 - fp * fp) / (f(r) * f(r))
                })
            }
        }
    }

    /// Per-unit-vector Ricci curvature in the radial direction.
    fn ric_radial_fn(&self) -> RadialFn {
        let n = self.n as f64;
        let sec = self.sec_radial_fn();
        Arc::new(move |r| n * sec(r))
    }

    /// Per-unit-vector Ricci curvature in a tangential direction.
    fn ric_tangential_fn(&self) -> RadialFn {
        let n = self.n as f64;
        let sec_r = self.sec_radial_fn();
        let sec_t = self.sec_tangential_fn();
        Arc::new(move |r| sec_r(r) + (n - 1.0) * sec_t(r))
    }

    /// Smallest admissible sample radius for curvature formulas: custom
    /// profiles stay away from the 0/0 pole.
    fn sample_floor(&self) -> f64 {
        match self.kind {
            ProfileKind::Custom => POLE_FLOOR_FRACTION * self.radius,
            _ => 0.0,
        }
    }
}

fn check_basics(n: u32, radius: f64) -> Result<()> {
    if n < 1 {
        return Err(Error::InvalidInput("fiber dimension n must be >= 1".into()));
    }
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::InvalidInput(format!("radius must be positive, got {radius}")));
    }
    Ok(())
}

/// Extremizes g over [lo, hi] by dense sampling with a parabolic
/// three-point refinement at each extremal sample.
fn sample_extremes(g: &RadialFn, lo: f64, hi: f64) -> (f64, f64) {
    let m = CURVATURE_SAMPLES;
    let mut values = Vec::with_capacity(m);
    for i in 0..m {
        let r = lo + (hi - lo) * i as f64 / (m - 1) as f64;
        values.push((r, g(r)));
    }
    let refine = |idx: usize, sign: f64| -> f64 {
        // Parabola through the extremal sample and its neighbors; evaluate
        // g at the vertex if it falls inside the bracket.
        let mut best = values[idx].1;
        if idx == 0 || idx + 1 == m {
            return best;
        }
        let (x0, y0) = values[idx - 1];
        let (x1, y1) = values[idx];
        let (x2, y2) = values[idx + 1];
        let denom = (x1 - x0) * (y1 - y2) - (x1 - x2) * (y1 - y0);
        if denom != 0.0 {
            let vertex = x1
                - 0.5
                    * ((x1 - x0).powi(2) * (y1 - y2) - (x1 - x2).powi(2) * (y1 - y0))
                    / denom;
            if vertex > x0 && vertex < x2 {
                let y = g(vertex);
                if sign * y < sign * best {
                    best = y;
                }
            }
        }
        best
    };
    let imin = (0..m).fold(0, |a, i| if values[i].1 < values[a].1 { i } else { a });
    let imax = (0..m).fold(0, |a, i| if values[i].1 > values[a].1 { i } else { a });
    (refine(imin, 1.0), refine(imax, -1.0))
}

/// Extracts certified [`GeometricData`] for the geodesic ball: exact
/// boundary data κᵢ = f'(R)/f(R), H = nκ, rolling radius R, and curvature
/// bounds extremized over the collar [R − collar_r, R] (and over the whole
/// ball for the global Ricci bound).
///
/// The collar Ricci lower certificate a² is floored at zero because its
/// field is, by convention, a nonnegative rate; every bound that consumes
/// it also gates on the (honest, unfloored) global Ricci bound, so the
/// floor can never feed a kernel on data where it would be false.
pub fn curvature_data(profile: &WarpedProfile, collar_r: f64) -> Result<GeometricData> {
    let radius = profile.radius();
    if !(collar_r > 0.0 && collar_r <= radius) {
        return Err(Error::InvalidInput(format!(
            "collar radius must lie in (0, {radius}], got {collar_r}"
        )));
    }
    let kappa = profile.boundary_kappa();
    let n = profile.n();

    let floor = profile.sample_floor();
    let collar_lo = (radius - collar_r).max(floor);
    let global_lo = floor;

    let sec_r = profile.sec_radial_fn();
    let sec_t = profile.sec_tangential_fn();
    let ric_r = profile.ric_radial_fn();
    let ric_t = profile.ric_tangential_fn();

    let (ric_r_min_g, _) = sample_extremes(&ric_r, global_lo, radius);
    let (ric_t_min_g, _) = sample_extremes(&ric_t, global_lo, radius);
    let (ric_r_min, ric_r_max) = sample_extremes(&ric_r, collar_lo, radius);
    let (ric_t_min, ric_t_max) = sample_extremes(&ric_t, collar_lo, radius);
    let (sec_r_min, sec_r_max) = sample_extremes(&sec_r, collar_lo, radius);
    let (sec_t_min, sec_t_max) = sample_extremes(&sec_t, collar_lo, radius);

    Ok(GeometricData {
        n,
        ric_lower_global: ric_r_min_g.min(ric_t_min_g),
        ric_lower_collar: ric_r_min.min(ric_t_min).max(0.0),
        ric_upper_collar: ric_r_max.max(ric_t_max).max(0.0),
        sec_upper_collar: sec_r_max.max(sec_t_max).max(0.0),
        sec_lower_collar: sec_r_min.min(sec_t_min).min(0.0),
        kappa_lower: kappa,
        kappa_upper: kappa,
        mean_lower: n as f64 * kappa,
        mean_upper: n as f64 * kappa,
        rolling_radius: radius,
        collar_radius: collar_r,
    })
}

/// Exact mean curvature of the parallel hypersurface at depth δ in the
/// model: n·f'(R−δ)/f(R−δ).
pub fn parallel_mean_curvature_exact(profile: &WarpedProfile, delta: f64) -> Result<f64> {
    let radius = profile.radius();
    if !(delta > 0.0 && delta < radius) {
        return Err(Error::Domain(format!(
            "depth must lie in (0, {radius}), got {delta}"
        )));
    }
    let r = radius - delta;
    Ok(profile.n() as f64 * profile.df(r) / profile.f(r))
}
