//! Fixed-step RK4 integration backing the dynamic optimal-control fitness.
//!
//! The control problem is a second-order nonlinear ODE reduced to a first-order
//! pair `(z, y)` with `y = dz/dt`, integrated over `t in [0, 1]` from
//! `z(0) = 2, y(0) = 2`. The score of a control pair is `J = z(1)^2`
//! (maximized). A non-finite state mid-integration marks the evaluation as
//! failed; the caller scores it as worst-possible rather than aborting.

use thiserror::Error;

/// Bounds on each raw control variable before the drift shift is applied.
pub const CONTROL_BOUND: f64 = 5.0;

/// State of the reduced first-order system.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OdeState {
    pub z: f64,
    /// y = dz/dt.
    pub y: f64,
    pub t: f64,
}

impl OdeState {
    /// The problem's fixed initial condition: z(0) = 2, z'(0) = 2.
    pub fn initial() -> Self {
        OdeState {
            z: 2.0,
            y: 2.0,
            t: 0.0,
        }
    }
}

/// Shifted control pair entering the dynamics: `U_i = u_i + delta`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ControlPair {
    pub u1: f64,
    pub u2: f64,
    pub delta: f64,
}

impl ControlPair {
    /// Panics if a raw control is outside `[-CONTROL_BOUND, CONTROL_BOUND]`;
    /// bounds apply before the shift.
    pub fn new(u1: f64, u2: f64, delta: f64) -> Self {
        assert!(
            u1.abs() <= CONTROL_BOUND && u2.abs() <= CONTROL_BOUND,
            "controls must lie in [-{CONTROL_BOUND}, {CONTROL_BOUND}], got ({u1}, {u2})"
        );
        ControlPair { u1, u2, delta }
    }

    pub fn shifted(&self) -> (f64, f64) {
        (self.u1 + self.delta, self.u2 + self.delta)
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum IntegrationError {
    #[error("state became non-finite at t = {t}")]
    NonFinite { t: f64 },
}

/// Right-hand side of the reduced system:
/// `dz = y`,
/// `dy = sin(t)U1^2 + cos(t)U2^2 + sin(t)U1U2 - sin(z)y - sin(t)cos(z)z^3`.
pub fn control_rhs(t: f64, state: [f64; 2], u1_shifted: f64, u2_shifted: f64) -> [f64; 2] {
    let [z, y] = state;
    let forcing = t.sin() * u1_shifted * u1_shifted
        + t.cos() * u2_shifted * u2_shifted
        + t.sin() * u1_shifted * u2_shifted;
    [y, forcing - z.sin() * y - t.sin() * z.cos() * z * z * z]
}

/// Classical 4th-order Runge-Kutta with fixed step `(t_f - t0) / steps`.
///
/// Returns the state at `t_f`, or an error as soon as any component goes
/// non-finite. Global error is O(h^4).
pub fn integrate<const N: usize, F>(
    rhs: F,
    t0: f64,
    y0: [f64; N],
    t_f: f64,
    steps: usize,
) -> Result<[f64; N], IntegrationError>
where
    F: Fn(f64, [f64; N]) -> [f64; N],
{
    assert!(steps >= 1, "integration needs at least one step");
    let h = (t_f - t0) / steps as f64;
    let mut y = y0;
    let mut t = t0;
    for _ in 0..steps {
        let k1 = rhs(t, y);
        let k2 = rhs(t + h / 2.0, add_scaled(y, k1, h / 2.0));
        let k3 = rhs(t + h / 2.0, add_scaled(y, k2, h / 2.0));
        let k4 = rhs(t + h, add_scaled(y, k3, h));
        for i in 0..N {
            y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        t += h;
        if y.iter().any(|v| !v.is_finite()) {
            return Err(IntegrationError::NonFinite { t });
        }
    }
    Ok(y)
}

fn add_scaled<const N: usize>(y: [f64; N], k: [f64; N], s: f64) -> [f64; N] {
    let mut out = y;
    for i in 0..N {
        out[i] += s * k[i];
    }
    out
}

/// Integrates the control system from the fixed initial condition and returns
/// the state at `t_f = 1`.
pub fn integrate_control(pair: ControlPair, steps: usize) -> Result<OdeState, IntegrationError> {
    let (u1, u2) = pair.shifted();
    let out = integrate(
        |t, s| control_rhs(t, s, u1, u2),
        0.0,
        [2.0, 2.0],
        1.0,
        steps,
    )?;
    Ok(OdeState {
        z: out[0],
        y: out[1],
        t: 1.0,
    })
}

/// Fitness of a control pair: `J = z(1)^2`. Evaluation failures score
/// negative infinity (worst possible for maximization).
pub fn control_fitness(u1: f64, u2: f64, delta: f64, steps: usize) -> f64 {
    match integrate_control(ControlPair::new(u1, u2, delta), steps) {
        Ok(state) => state.z * state.z,
        Err(_) => f64::NEG_INFINITY,
    }
}
