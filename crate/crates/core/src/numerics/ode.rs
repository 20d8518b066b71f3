//! Adaptive Dormand–Prince 5(4) integration for small fixed-size systems.
//!
//! The state is a `[f64; N]`; the right-hand side is any `Fn(t, y) -> dy`.
//! Step size is controlled by the embedded 4th-order error estimate with the
//! usual 0.9 safety factor and growth clamped to [0.2, 5].  The solver keeps
//! every accepted step, so a [`Trajectory`] doubles as a set of checkpoints
//! from which [`eval_on`] can re-integrate to any interior time at full
//! accuracy (no interpolation error is ever introduced).

use crate::{Error, Result};

// Dormand-Prince 5(4) tableau.
const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A2: [f64; 1] = [1.0 / 5.0];
const A3: [f64; 2] = [3.0 / 40.0, 9.0 / 40.0];
const A4: [f64; 3] = [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0];
const A5: [f64; 4] = [
    19372.0 / 6561.0,
    -25360.0 / 2187.0,
    64448.0 / 6561.0,
    -212.0 / 729.0,
];
const A6: [f64; 5] = [
    9017.0 / 3168.0,
    -355.0 / 33.0,
    46732.0 / 5247.0,
    49.0 / 176.0,
    -5103.0 / 18656.0,
];
// Fifth-order weights; also the last stage row (FSAL).
const B5: [f64; 7] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];
// Embedded fourth-order weights.
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

const SAFETY: f64 = 0.9;
const MIN_SCALE: f64 = 0.2;
const MAX_SCALE: f64 = 5.0;

#[derive(Debug, Clone)]
pub struct OdeOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_steps: usize,
    /// First trial step; chosen from the initial derivative scale if `None`.
    pub initial_step: Option<f64>,
}

impl Default for OdeOptions {
    fn default() -> Self {
        OdeOptions {
            rel_tol: 1e-10,
            abs_tol: 1e-12,
            max_steps: 1_000_000,
            initial_step: None,
        }
    }
}

impl OdeOptions {
    pub fn with_tol(rel_tol: f64, abs_tol: f64) -> Self {
        OdeOptions {
            rel_tol,
            abs_tol,
            ..Self::default()
        }
    }
}

/// Accepted steps of one integration, in increasing time order.
#[derive(Debug, Clone)]
pub struct Trajectory<const N: usize> {
    pub times: Vec<f64>,
    pub states: Vec<[f64; N]>,
    /// True when a halt condition stopped the integration before `t_end`.
    pub halted: bool,
}

impl<const N: usize> Trajectory<N> {
    pub fn end_time(&self) -> f64 {
        *self.times.last().expect("trajectory is never empty")
    }

    pub fn end_state(&self) -> [f64; N] {
        *self.states.last().expect("trajectory is never empty")
    }
}

/// Integrates y' = f(t, y) from `t0` to `t_end` (forward only).
pub fn integrate<const N: usize>(
    f: &dyn Fn(f64, &[f64; N]) -> [f64; N],
    t0: f64,
    y0: [f64; N],
    t_end: f64,
    opt: &OdeOptions,
) -> Result<Trajectory<N>> {
    integrate_with_halt(f, t0, y0, t_end, opt, &|_, _| false)
}

/// Like [`integrate`] but stops after any accepted step where `halt(t, y)`
/// returns true; the trajectory then ends at that step with `halted` set.
pub fn integrate_with_halt<const N: usize>(
    f: &dyn Fn(f64, &[f64; N]) -> [f64; N],
    t0: f64,
    y0: [f64; N],
    t_end: f64,
    opt: &OdeOptions,
    halt: &dyn Fn(f64, &[f64; N]) -> bool,
) -> Result<Trajectory<N>> {
    if !(t_end > t0) {
        return Err(Error::InvalidInput(format!(
            "integration interval is empty: t0 = {t0}, t_end = {t_end}"
        )));
    }
    if !y0.iter().all(|v| v.is_finite()) {
        return Err(Error::InvalidInput("non-finite initial state".into()));
    }

    let mut t = t0;
    let mut y = y0;
    let mut k1 = f(t, &y);
    let mut h = opt
        .initial_step
        .unwrap_or_else(|| initial_step_guess(&y, &k1, t_end - t0, opt));

    let mut times = vec![t0];
    let mut states = vec![y0];
    let mut halted = false;

    for _ in 0..opt.max_steps {
        if t >= t_end || halted {
            return Ok(Trajectory {
                times,
                states,
                halted,
            });
        }
        h = h.min(t_end - t);
        if h < f64::EPSILON * t.abs().max(1e-300) * 4.0 {
            return Err(Error::Convergence(format!(
                "step size underflow at t = {t} (h = {h})"
            )));
        }

        let mut k = [[0.0; N]; 7];
        k[0] = k1;
        k[1] = f(t + C[1] * h, &axpy(&y, h, &[(&k[0], A2[0])]));
        k[2] = f(t + C[2] * h, &axpy(&y, h, &[(&k[0], A3[0]), (&k[1], A3[1])]));
        k[3] = f(
            t + C[3] * h,
            &axpy(&y, h, &[(&k[0], A4[0]), (&k[1], A4[1]), (&k[2], A4[2])]),
        );
        k[4] = f(
            t + C[4] * h,
            &axpy(
                &y,
                h,
                &[
                    (&k[0], A5[0]),
                    (&k[1], A5[1]),
                    (&k[2], A5[2]),
                    (&k[3], A5[3]),
                ],
            ),
        );
        k[5] = f(
            t + C[5] * h,
            &axpy(
                &y,
                h,
                &[
                    (&k[0], A6[0]),
                    (&k[1], A6[1]),
                    (&k[2], A6[2]),
                    (&k[3], A6[3]),
                    (&k[4], A6[4]),
                ],
            ),
        );
        let y5 = axpy(
            &y,
            h,
            &[
                (&k[0], B5[0]),
                (&k[2], B5[2]),
                (&k[3], B5[3]),
                (&k[4], B5[4]),
                (&k[5], B5[5]),
            ],
        );
        k[6] = f(t + h, &y5);

        // Embedded error estimate, scaled per component.
        let mut err_sq = 0.0;
        let mut finite = true;
        for i in 0..N {
            let e = h
                * ((B5[0] - B4[0]) * k[0][i]
                    + (B5[2] - B4[2]) * k[2][i]
                    + (B5[3] - B4[3]) * k[3][i]
                    + (B5[4] - B4[4]) * k[4][i]
                    + (B5[5] - B4[5]) * k[5][i]
                    + (B5[6] - B4[6]) * k[6][i]);
            let sc = opt.abs_tol + opt.rel_tol * y[i].abs().max(y5[i].abs());
            if !e.is_finite() || !y5[i].is_finite() {
                finite = false;
                break;
            }
            err_sq += (e / sc) * (e / sc);
        }
        let err = if finite {
            (err_sq / N as f64).sqrt()
        } else {
            f64::INFINITY
        };

        if err <= 1.0 {
            t += h;
            y = y5;
            k1 = k[6]; // FSAL
            times.push(t);
            states.push(y);
            if halt(t, &y) {
                halted = true;
            }
        }
        let scale = if err == 0.0 {
            MAX_SCALE
        } else if err.is_finite() {
            (SAFETY * err.powf(-0.2)).clamp(MIN_SCALE, MAX_SCALE)
        } else {
            MIN_SCALE
        };
        h *= scale;
    }
    Err(Error::Convergence(format!(
        "step budget of {} exhausted at t = {t}",
        opt.max_steps
    )))
}

/// Re-integrates from the last checkpoint at or before `t`, giving the state
/// at an arbitrary interior time with the solver's own accuracy.
pub fn eval_on<const N: usize>(
    f: &dyn Fn(f64, &[f64; N]) -> [f64; N],
    traj: &Trajectory<N>,
    t: f64,
    opt: &OdeOptions,
) -> Result<[f64; N]> {
    let t0 = traj.times[0];
    let t1 = traj.end_time();
    if t < t0 || t > t1 {
        return Err(Error::Domain(format!(
            "time {t} outside trajectory range [{t0}, {t1}]"
        )));
    }
    // Last index with times[idx] <= t.
    let idx = match traj
        .times
        .binary_search_by(|probe| probe.partial_cmp(&t).expect("times are finite"))
    {
        Ok(i) => return Ok(traj.states[i]),
        Err(i) => i - 1,
    };
    if traj.times[idx] == t {
        return Ok(traj.states[idx]);
    }
    let local = integrate(f, traj.times[idx], traj.states[idx], t, opt)?;
    Ok(local.end_state())
}

fn axpy<const N: usize>(y: &[f64; N], h: f64, terms: &[(&[f64; N], f64)]) -> [f64; N] {
    let mut out = *y;
    for (k, a) in terms {
        for i in 0..N {
            out[i] += h * a * k[i];
        }
    }
    out
}

fn initial_step_guess<const N: usize>(
    y: &[f64; N],
    dy: &[f64; N],
    span: f64,
    opt: &OdeOptions,
) -> f64 {
    let mut d0: f64 = 0.0;
    let mut d1: f64 = 0.0;
    for i in 0..N {
        let sc = opt.abs_tol + opt.rel_tol * y[i].abs();
        d0 = d0.max((y[i] / sc).abs());
        d1 = d1.max((dy[i] / sc).abs());
    }
    let h = if d1 > 0.0 { 0.01 * d0.max(1.0) / d1 } else { span * 1e-3 };
    h.min(span * 0.1).max(span * 1e-12)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_decay_matches_closed_form() {
        let f = |_t: f64, y: &[f64; 1]| [-y[0]];
        let traj = integrate(&f, 0.0, [1.0], 3.0, &OdeOptions::default()).unwrap();
        assert!((traj.end_state()[0] - (-3.0f64).exp()).abs() < 1e-10);
    }

    #[test]
    fn harmonic_oscillator_conserves_energy() {
        let f = |_t: f64, y: &[f64; 2]| [y[1], -y[0]];
        let opt = OdeOptions::with_tol(1e-12, 1e-14);
        let traj = integrate(&f, 0.0, [1.0, 0.0], 20.0, &opt).unwrap();
        let [x, v] = traj.end_state();
        assert!((x * x + v * v - 1.0).abs() < 1e-9);
        assert!((x - (20.0f64).cos()).abs() < 1e-9);
    }

    #[test]
    fn eval_on_reproduces_interior_values() {
        let f = |_t: f64, y: &[f64; 1]| [y[0]];
        let opt = OdeOptions::with_tol(1e-12, 1e-14);
        let traj = integrate(&f, 0.0, [1.0], 2.0, &opt).unwrap();
        for &t in &[0.0, 0.3, 0.777, 1.5, 2.0] {
            let v = eval_on(&f, &traj, t, &opt).unwrap()[0];
            assert!((v - t.exp()).abs() < 1e-10, "t = {t}: {v}");
        }
    }

    #[test]
    fn halt_condition_stops_early() {
        let f = |_t: f64, y: &[f64; 1]| [y[0] * y[0]];
        // y = 1/(1-t) blows up at t = 1; halt well before.
        let traj = integrate_with_halt(
            &f,
            0.0,
            [1.0],
            2.0,
            &OdeOptions::default(),
            &|_, y| y[0] > 100.0,
        )
        .unwrap();
        assert!(traj.halted);
        assert!(traj.end_time() < 1.0);
        assert!(traj.end_state()[0] > 100.0);
    }

    #[test]
    fn empty_interval_is_rejected() {
        let f = |_t: f64, y: &[f64; 1]| [-y[0]];
        assert!(integrate(&f, 1.0, [1.0], 1.0, &OdeOptions::default()).is_err());
    }
}
