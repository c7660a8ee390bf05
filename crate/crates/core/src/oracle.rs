//! Brute-force integrators used to validate the closed forms.
//!
//! Classic fixed-step fourth-order Runge–Kutta for both representations of
//! the dynamics: the Schrödinger equation `i dψ/dt = H(t)ψ` and the
//! precession equation `dr/dt = -ω₀ n(t) × r`. Fixed step keeps convergence
//! studies and CSV grids reproducible bit-for-bit; renormalization is off by
//! default so norm drift stays visible as an accuracy diagnostic.

use num_complex::Complex64;

use crate::error::{domain, Error, Result};
use crate::propagator::{sample_at, Trajectory};
use crate::spin::{BlochVector, FieldSchedule, Operator, SpinState};

/// Norm drift beyond this aborts a run with [`Error::Accuracy`].
pub const DRIFT_LIMIT: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Rk4,
}

/// Fixed-step integrator settings. `dt` is an upper bound on the step; the
/// actual step divides the horizon exactly and must be at most T/100.
#[derive(Debug, Clone, Copy)]
pub struct IntegratorConfig {
    pub dt: f64,
    pub method: Method,
    pub renormalize: bool,
}

impl IntegratorConfig {
    pub fn rk4(dt: f64) -> Self {
        Self { dt, method: Method::Rk4, renormalize: false }
    }

    pub fn renormalizing(mut self) -> Self {
        self.renormalize = true;
        self
    }

    fn steps_for(&self, horizon: f64) -> Result<usize> {
        if !(self.dt > 0.0) || !self.dt.is_finite() {
            return Err(domain(format!("dt must be positive and finite, got {}", self.dt)));
        }
        if !(horizon > 0.0) || !horizon.is_finite() {
            return Err(domain(format!("integration horizon must be positive and finite, got {horizon}")));
        }
        if self.dt > horizon / 100.0 {
            return Err(domain(format!(
                "dt = {} too coarse: need dt <= T/100 = {}",
                self.dt,
                horizon / 100.0
            )));
        }
        Ok((horizon / self.dt).ceil() as usize)
    }
}

/// Outcome of a Schrödinger-equation run.
#[derive(Debug, Clone)]
pub struct SchrodingerRun {
    pub trajectory: Trajectory,
    /// Largest |norm - 1| seen at any step (before renormalization).
    pub max_norm_drift: f64,
    /// |norm - 1| of the final state as delivered.
    pub final_norm_deviation: f64,
    pub steps: usize,
}

/// Outcome of a Bloch-equation run (Bloch samples only).
#[derive(Debug, Clone)]
pub struct BlochRun {
    pub times: Vec<f64>,
    pub points: Vec<BlochVector>,
    pub max_norm_drift: f64,
    pub steps: usize,
}

const MINUS_I: Complex64 = Complex64::new(0.0, -1.0);

/// RK4 on `dψ/dt = -i H(t) ψ` for an arbitrary Hamiltonian, recording every
/// `record_every`-th step (plus the endpoints).
pub(crate) fn rk4_state_span(
    schedule: &FieldSchedule,
    hamiltonian: impl Fn(f64) -> Operator,
    psi0: &SpinState,
    config: &IntegratorConfig,
    horizon: f64,
    record_every: usize,
) -> Result<SchrodingerRun> {
    let steps = config.steps_for(horizon)?;
    let h = horizon / steps as f64;
    let deriv = |t: f64, y: &nalgebra::Vector2<Complex64>| (hamiltonian(t) * y).map(|e| e * MINUS_I);

    let mut y = psi0.as_vector();
    let mut samples = Vec::with_capacity(steps / record_every + 2);
    samples.push(sample_at(schedule, SpinState::from_vector(&y), 0.0));
    let mut max_drift: f64 = 0.0;

    for step in 0..steps {
        let t = step as f64 * h;
        let k1 = deriv(t, &y);
        let k2 = deriv(t + 0.5 * h, &(y + k1.map(|e| e * Complex64::new(0.5 * h, 0.0))));
        let k3 = deriv(t + 0.5 * h, &(y + k2.map(|e| e * Complex64::new(0.5 * h, 0.0))));
        let k4 = deriv(t + h, &(y + k3.map(|e| e * Complex64::new(h, 0.0))));
        let incr = k1 + k2.map(|e| e * Complex64::new(2.0, 0.0))
            + k3.map(|e| e * Complex64::new(2.0, 0.0))
            + k4;
        y += incr.map(|e| e * Complex64::new(h / 6.0, 0.0));

        let norm = y.norm();
        max_drift = max_drift.max((norm - 1.0).abs());
        if config.renormalize {
            y /= Complex64::new(norm, 0.0);
        }
        let done = step + 1 == steps;
        if done || (step + 1) % record_every == 0 {
            let t_next = if done { horizon } else { (step + 1) as f64 * h };
            samples.push(sample_at(schedule, SpinState::from_vector(&y), t_next));
        }
    }

    if !config.renormalize && max_drift > DRIFT_LIMIT {
        return Err(Error::Accuracy { drift: max_drift, limit: DRIFT_LIMIT });
    }
    let final_norm_deviation = (y.norm() - 1.0).abs();
    Ok(SchrodingerRun {
        trajectory: Trajectory { samples, schedule: *schedule },
        max_norm_drift: max_drift,
        final_norm_deviation,
        steps,
    })
}

/// RK4 integration of `i dψ/dt = H(t)ψ` over the schedule's full duration,
/// one recorded sample per step.
pub fn rk4_schrodinger(
    schedule: &FieldSchedule,
    psi0: &SpinState,
    config: &IntegratorConfig,
) -> Result<SchrodingerRun> {
    let horizon = schedule.duration();
    if !horizon.is_finite() {
        return Err(domain(
            "static schedule (ω = 0) has no finite duration; use rk4_schrodinger_span",
        ));
    }
    rk4_schrodinger_span(schedule, psi0, config, horizon)
}

/// Same as [`rk4_schrodinger`] with an explicit horizon, for static fields.
pub fn rk4_schrodinger_span(
    schedule: &FieldSchedule,
    psi0: &SpinState,
    config: &IntegratorConfig,
    horizon: f64,
) -> Result<SchrodingerRun> {
    if horizon > schedule.duration() {
        return Err(domain(format!(
            "horizon {horizon} exceeds the schedule duration {}",
            schedule.duration()
        )));
    }
    let s = *schedule;
    rk4_state_span(schedule, move |t| s.hamiltonian_unchecked(t), psi0, config, horizon, 1)
}

/// RK4 integration of the precession equation `dr/dt = -ω₀ n(t) × r` over
/// the schedule's full duration.
pub fn rk4_bloch(
    schedule: &FieldSchedule,
    r0: &BlochVector,
    config: &IntegratorConfig,
) -> Result<BlochRun> {
    let horizon = schedule.duration();
    if !horizon.is_finite() {
        return Err(domain("static schedule (ω = 0) has no finite duration; use rk4_bloch_span"));
    }
    rk4_bloch_span(schedule, r0, config, horizon)
}

/// Same as [`rk4_bloch`] with an explicit horizon.
pub fn rk4_bloch_span(
    schedule: &FieldSchedule,
    r0: &BlochVector,
    config: &IntegratorConfig,
    horizon: f64,
) -> Result<BlochRun> {
    let deviation = (r0.norm() - 1.0).abs();
    if deviation > crate::spin::NORM_CONTRACT {
        return Err(Error::Contract {
            what: "initial Bloch vector norm",
            deviation,
            limit: crate::spin::NORM_CONTRACT,
        });
    }
    let steps = config.steps_for(horizon)?;
    let h = horizon / steps as f64;
    let omega0 = schedule.omega0;
    let deriv = |t: f64, r: &BlochVector| {
        let (theta, phi) = schedule.angles(t);
        let n = BlochVector::from_angles(theta, phi);
        n.cross(r).scaled(-omega0)
    };

    let mut r = *r0;
    let mut times = Vec::with_capacity(steps + 1);
    let mut points = Vec::with_capacity(steps + 1);
    times.push(0.0);
    points.push(r);
    let mut max_drift: f64 = 0.0;

    for step in 0..steps {
        let t = step as f64 * h;
        let k1 = deriv(t, &r);
        let k2 = deriv(t + 0.5 * h, &add(&r, &k1, 0.5 * h));
        let k3 = deriv(t + 0.5 * h, &add(&r, &k2, 0.5 * h));
        let k4 = deriv(t + h, &add(&r, &k3, h));
        r = BlochVector::new(
            r.x + h / 6.0 * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x),
            r.y + h / 6.0 * (k1.y + 2.0 * k2.y + 2.0 * k3.y + k4.y),
            r.z + h / 6.0 * (k1.z + 2.0 * k2.z + 2.0 * k3.z + k4.z),
        );
        max_drift = max_drift.max((r.norm() - 1.0).abs());
        if config.renormalize {
            r = r.normalized();
        }
        times.push(if step + 1 == steps { horizon } else { (step + 1) as f64 * h });
        points.push(r);
    }

    if !config.renormalize && max_drift > DRIFT_LIMIT {
        return Err(Error::Accuracy { drift: max_drift, limit: DRIFT_LIMIT });
    }
    Ok(BlochRun { times, points, max_norm_drift: max_drift, steps })
}

fn add(r: &BlochVector, k: &BlochVector, h: f64) -> BlochVector {
    BlochVector::new(r.x + h * k.x, r.y + h * k.y, r.z + h * k.z)
}
