//! Closed-form time evolution through the adiabatic frame.
//!
//! Writing `|ψ(t)⟩ = A(t)|φ(t)⟩`, where the unitary `A(t)` has the
//! instantaneous eigenstates `|n₊(t)⟩, |n₋(t)⟩` as columns, turns the
//! Schrödinger equation into one with the constant effective Hamiltonian
//!
//! ```text
//! H_eff = A†HA - iA†(dA/dt)
//!       = -(ω₀/2)σ_z + (φ̇/2)(I - cosθ σ_z + sinθ σ_x) - (θ̇/2)σ_y
//!       = -(Ω/2) m·σ + c·I
//! ```
//!
//! For a latitude rotation `Ω = √(ω₀² + 2ω₀ω cosθ + ω²)`,
//! `m = (-sin α, 0, cos α)` with `tan α = ω sinθ / (ω₀ + ω cosθ)` and trace
//! part `c = ω/2`; for a meridian rotation `Ω = √(ω₀² + ω²)`,
//! `m = (0, sin α, cos α)` with `tan α = ω/ω₀` and `c = 0`. The exact
//! propagator is therefore
//!
//! ```text
//! |ψ(t)⟩ = A(t) · e^{-ict} · exp(+i (Ωt/2) m·σ) · A†(0) |ψ(0)⟩ ,
//! ```
//!
//! i.e. the inverse frame map at t = 0, a constant-axis SU(2) rotation, and
//! the frame map at t. This is the operator ordering that satisfies the
//! time-dependent Schrödinger equation, as the RK4 oracle tests verify; the
//! trace part only moves the global phase but matters for total-phase
//! bookkeeping.
//!
//! In the adiabatic frame the Bloch vector precesses on a cone of half-angle
//! equal to its initial separation from `m`. Mapped back to the lab sphere,
//! the rim state `|n₊(0)⟩` (separation α) traces a spherical cycloid whose
//! rolling circle has radius `a = sin α`; initial states inside or outside
//! that circle trace curtate and prolate cycloids, and the state aligned with
//! `m` itself traces the axis curve parallel to the adiabatic path.

use num_complex::Complex64;

use crate::error::{domain, Result};
use crate::spin::{
    eigenstate_minus, eigenstate_plus, exp_i_pauli, BlochVector, FieldDirection, FieldSchedule,
    Operator, RotationMode, SpinState,
};

/// Adiabatic-frame rotation data: the constant effective Hamiltonian is
/// `-(Ω/2) m·σ` up to a multiple of the identity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectiveRotation {
    /// Precession frequency Ω in the adiabatic frame.
    pub omega: f64,
    /// Tilt of the rotation axis away from the frame z-axis.
    pub alpha: f64,
    /// Rolling-circle radius `a = sin α`.
    pub a: f64,
    /// Unit rotation axis in the adiabatic frame.
    pub m: BlochVector,
}

/// Frame frequency, tilt angle, and rolling-circle radius for a schedule.
pub fn effective_rotation(schedule: &FieldSchedule) -> EffectiveRotation {
    let w0 = schedule.omega0;
    let w = schedule.omega;
    match schedule.mode {
        RotationMode::Latitude { theta } => {
            let omega = (w0 * w0 + 2.0 * w0 * w * theta.cos() + w * w).sqrt();
            let alpha = (w * theta.sin()).atan2(w0 + w * theta.cos());
            let a = alpha.sin();
            EffectiveRotation {
                omega,
                alpha,
                a,
                m: BlochVector::new(-a, 0.0, alpha.cos()),
            }
        }
        RotationMode::Meridian { .. } => {
            let omega = (w0 * w0 + w * w).sqrt();
            let alpha = w.atan2(w0);
            let a = alpha.sin();
            EffectiveRotation {
                omega,
                alpha,
                a,
                m: BlochVector::new(0.0, a, alpha.cos()),
            }
        }
    }
}

/// Coefficient of the identity in `H_eff`; pure global-phase drift.
pub(crate) fn frame_trace_rate(schedule: &FieldSchedule) -> f64 {
    match schedule.mode {
        RotationMode::Latitude { .. } => 0.5 * schedule.omega,
        RotationMode::Meridian { .. } => 0.0,
    }
}

/// The frame unitary `A(t)` whose columns are `|n₊(t)⟩` and `|n₋(t)⟩`,
/// built from the schedule's analytic angles so it stays continuous across
/// the poles.
#[derive(Debug, Clone, Copy)]
pub struct AdiabaticFrame {
    schedule: FieldSchedule,
}

impl AdiabaticFrame {
    pub fn new(schedule: &FieldSchedule) -> Self {
        Self { schedule: *schedule }
    }

    /// `A(t)`.
    pub fn matrix(&self, t: f64) -> Operator {
        let (theta, phi) = self.schedule.angles(t);
        let plus = eigenstate_plus(theta, phi);
        let minus = eigenstate_minus(theta, phi);
        Operator::new(plus.c0, minus.c0, plus.c1, minus.c1)
    }

    /// Lab state expressed in the adiabatic frame, `|φ(t)⟩ = A†(t)|ψ(t)⟩`.
    pub fn to_frame(&self, psi: &SpinState, t: f64) -> SpinState {
        SpinState::from_vector(&(self.matrix(t).adjoint() * psi.as_vector()))
    }

    /// Frame state mapped back to the lab, `|ψ(t)⟩ = A(t)|φ(t)⟩`.
    pub fn to_lab(&self, phi_state: &SpinState, t: f64) -> SpinState {
        SpinState::from_vector(&(self.matrix(t) * phi_state.as_vector()))
    }
}

/// Adiabatic-frame view of a schedule: `A(t)` as a callable object.
pub fn adiabatic_frame(schedule: &FieldSchedule) -> AdiabaticFrame {
    AdiabaticFrame::new(schedule)
}

/// Exact state at time `t`: frame map, constant-axis SU(2) rotation
/// `exp(+i (Ωt/2) m·σ)`, inverse frame map, and the trace-part phase.
pub fn propagate_exact(schedule: &FieldSchedule, psi0: &SpinState, t: f64) -> Result<SpinState> {
    let duration = schedule.duration();
    if !t.is_finite() || t < 0.0 || t > duration {
        return Err(domain(format!(
            "time {t} outside the schedule range [0, {duration}]"
        )));
    }
    let rot = effective_rotation(schedule);
    let frame = AdiabaticFrame::new(schedule);
    let u = exp_i_pauli(&rot.m, 0.5 * rot.omega * t);
    let drift = Complex64::from_polar(1.0, -frame_trace_rate(schedule) * t);
    let v = frame.matrix(t) * (u * (frame.matrix(0.0).adjoint() * psi0.as_vector()));
    Ok(SpinState::from_vector(&v.map(|e| e * drift)))
}

/// One point of a sampled evolution.
#[derive(Debug, Clone, Copy)]
pub struct TrajectorySample {
    pub t: f64,
    pub state: SpinState,
    pub bloch: BlochVector,
    pub field: FieldDirection,
    /// Instantaneous energy uncertainty `ΔE/ħ = (ω₀/2)|n × r|`.
    pub delta_e: f64,
}

/// Time-ordered samples of an evolution, stored with the schedule that
/// produced them.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub samples: Vec<TrajectorySample>,
    pub schedule: FieldSchedule,
}

impl Trajectory {
    /// Bloch points of the samples, in order.
    pub fn bloch_points(&self) -> Vec<BlochVector> {
        self.samples.iter().map(|s| s.bloch).collect()
    }

    /// Largest deviation of any sample's state norm from 1.
    pub fn max_norm_deviation(&self) -> f64 {
        self.samples
            .iter()
            .map(|s| (s.state.norm() - 1.0).abs())
            .fold(0.0, f64::max)
    }

    /// Checks ordering and per-sample norms (1 within 1e-12).
    pub fn validate(&self) -> Result<()> {
        if self.samples.is_empty() {
            return Err(domain("trajectory has no samples"));
        }
        if self.samples[0].t != 0.0 {
            return Err(domain("trajectory must start at t = 0"));
        }
        for pair in self.samples.windows(2) {
            if pair[1].t <= pair[0].t {
                return Err(domain("trajectory times must be strictly increasing"));
            }
        }
        let deviation = self.max_norm_deviation();
        if deviation > 1e-12 {
            return Err(crate::error::Error::Contract {
                what: "trajectory sample norm",
                deviation,
                limit: 1e-12,
            });
        }
        Ok(())
    }
}

pub(crate) fn sample_at(schedule: &FieldSchedule, state: SpinState, t: f64) -> TrajectorySample {
    let field = BlochVector::from_angles(schedule.angles(t).0, schedule.angles(t).1);
    let bloch = state.bloch();
    let delta_e = 0.5 * schedule.omega0 * field.cross(&bloch).norm();
    TrajectorySample { t, state, bloch, field, delta_e }
}

/// Exact evolution sampled on a uniform grid over `[0, T]`.
pub fn trajectory(
    schedule: &FieldSchedule,
    psi0: &SpinState,
    num_samples: usize,
) -> Result<Trajectory> {
    if num_samples < 2 {
        return Err(domain(format!("need at least 2 samples, got {num_samples}")));
    }
    let duration = schedule.duration();
    if !duration.is_finite() {
        return Err(domain("static schedule (ω = 0) has no finite duration to sample"));
    }
    let mut samples = Vec::with_capacity(num_samples);
    for i in 0..num_samples {
        let t = duration * i as f64 / (num_samples - 1) as f64;
        let state = propagate_exact(schedule, psi0, t)?;
        samples.push(sample_at(schedule, state, t));
    }
    Ok(Trajectory { samples, schedule: *schedule })
}

/// Which member of the cycloid family an initial state generates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CycloidKind {
    /// `|n₊(0)⟩`: a point on the rim of the rolling circle (separation α
    /// from the frame axis m) — the exact cycloid.
    Rim,
    /// Frame separation `b < α` from m: inside the rolling circle.
    Curtate(f64),
    /// Frame separation `b > α` from m: outside the rolling circle.
    Prolate(f64),
    /// The state aligned with m itself; its lab trajectory stays at the
    /// constant angle α from the adiabatic path.
    Axis,
}

/// Initial state whose exact evolution traces the requested cycloid.
///
/// Curtate and prolate states are placed at angular distance `b` from the
/// frame axis `m`, in the plane spanned by `m` and the frame z-axis.
pub fn cycloid_family_initial_state(
    schedule: &FieldSchedule,
    kind: CycloidKind,
) -> Result<SpinState> {
    let rot = effective_rotation(schedule);
    let frame = AdiabaticFrame::new(schedule);
    let frame_vector = match kind {
        CycloidKind::Rim => return Ok(schedule.initial_eigenstate()),
        CycloidKind::Axis => rot.m,
        CycloidKind::Curtate(b) => {
            if !(b >= 0.0 && b < rot.alpha) {
                return Err(domain(format!(
                    "curtate separation must satisfy 0 <= b < alpha = {}, got {b}",
                    rot.alpha
                )));
            }
            tilted_from_axis(&rot, b, schedule.mode)
        }
        CycloidKind::Prolate(b) => {
            if !(b > rot.alpha && b <= std::f64::consts::PI) {
                return Err(domain(format!(
                    "prolate separation must satisfy alpha = {} < b <= pi, got {b}",
                    rot.alpha
                )));
            }
            tilted_from_axis(&rot, b, schedule.mode)
        }
    };
    let frame_state = SpinState::from_bloch(&frame_vector);
    Ok(frame.to_lab(&frame_state, 0.0))
}

/// Unit vector at angle `b` from `m`, rotated toward (and past) the frame
/// z-axis within the plane containing both.
fn tilted_from_axis(rot: &EffectiveRotation, b: f64, mode: RotationMode) -> BlochVector {
    let axis = rot.m.cross(&BlochVector::new(0.0, 0.0, 1.0));
    let axis = if axis.norm() > 1e-12 {
        axis.normalized()
    } else {
        // m ∥ z (α = 0): the m–z plane is degenerate, fall back to the
        // transverse axis the mode would tilt about.
        match mode {
            RotationMode::Latitude { .. } => BlochVector::new(0.0, 1.0, 0.0),
            RotationMode::Meridian { .. } => BlochVector::new(1.0, 0.0, 0.0),
        }
    };
    rotate_about(&rot.m, &axis, b)
}

/// Rodrigues rotation of `v` about the unit `axis` by `angle`.
pub fn rotate_about(v: &BlochVector, axis: &BlochVector, angle: f64) -> BlochVector {
    let (s, c) = angle.sin_cos();
    let kxv = axis.cross(v);
    let kdv = axis.dot(v);
    BlochVector::new(
        v.x * c + kxv.x * s + axis.x * kdv * (1.0 - c),
        v.y * c + kxv.y * s + axis.y * kdv * (1.0 - c),
        v.z * c + kxv.z * s + axis.z * kdv * (1.0 - c),
    )
}
