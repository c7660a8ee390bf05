//! Exact quantum dynamics of a spin-1/2 in a uniformly rotating magnetic field.
//!
//! A magnetic field of constant strength whose direction sweeps a latitude
//! circle or a meridian of the unit sphere at constant angular speed drives
//! the spin through a closed-form evolution: transforming to the frame of the
//! instantaneous eigenstates turns the Hamiltonian into a constant, so the
//! Bloch vector rolls along the adiabatic path like a circle rolling on a
//! line, tracing a spherical cycloid. This crate builds everything on top of
//! that closed form:
//!
//! - [`spin`] — states, Bloch vectors, field schedules, instantaneous
//!   eigenstates, and the Zeeman Hamiltonian;
//! - [`propagator`] — the adiabatic-frame transformation and the exact
//!   propagator, plus the cycloid family of initial states (rim, curtate,
//!   prolate, axis);
//! - [`oracle`] — brute-force fixed-step RK4 integrators for the Schrödinger
//!   and Bloch equations, used to validate every closed form;
//! - [`geometry`] — arc length and enclosed solid angle of curves on the
//!   sphere, the spherical-cycloid closed forms, and the isoperimetric
//!   defect;
//! - [`phases`] — dynamical, Aharonov–Anandan, and Berry phases, the energy
//!   uncertainty, and the Fubini–Study length functional whose adiabatic
//!   limit is 4 rather than the geodesic value π;
//! - [`resonance`] — non-adiabatic resonance conditions, infidelity, and
//!   parameter sweeps;
//! - [`transitionless`] — the counterdiabatic driving term that pins the
//!   state to the instantaneous eigenstate at any sweep speed.
//!
//! # Units
//!
//! Everything is nondimensionalized: frequencies are quoted in units of the
//! Larmor frequency `ω₀`, times in units of `1/ω₀`, and `ħ = 1`. The physics
//! depends only on the adiabaticity ratio `λ = ω/ω₀` of the drive speed to
//! the Larmor frequency, so the convenience constructors fix `ω₀ = 1`.
//!
//! # Example
//!
//! ```
//! use spintop_core::{FieldSchedule, propagator, resonance};
//!
//! // Sweep the field pole-to-pole at the first non-adiabatic resonance:
//! // the state lands exactly on |1⟩ after a single cycloid arc.
//! let lambda = resonance::meridian_resonance_lambda(1).unwrap();
//! let schedule = FieldSchedule::meridian_sweep(lambda).unwrap();
//! let traj = propagator::trajectory(&schedule, &schedule.initial_eigenstate(), 1001).unwrap();
//! let end = traj.samples.last().unwrap();
//! assert!((end.bloch.z + 1.0).abs() < 1e-12);
//! ```

pub mod error;
pub mod geometry;
pub mod oracle;
pub mod phases;
pub mod propagator;
pub mod resonance;
pub mod spin;
pub mod transitionless;

pub use error::{Error, Result};
pub use propagator::{
    AdiabaticFrame, CycloidKind, EffectiveRotation, Trajectory, TrajectorySample,
};
pub use spin::{BlochVector, FieldDirection, FieldSchedule, Operator, RotationMode, SpinState};
