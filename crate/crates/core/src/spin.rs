//! Domain types: spin states, Bloch vectors, field schedules, and the
//! lab-frame Zeeman Hamiltonian `H(t) = -(ω₀/2) n(t)·σ`.
//!
//! The field direction `n(t)` rotates at constant angular speed `ω` either
//! along a latitude circle (fixed polar angle `θ`, azimuth `φ = ωt`) or along
//! a meridian (fixed azimuth `φ`, polar angle `θ = ωt`). The instantaneous
//! eigenstates use the gauge
//!
//! ```text
//! |n₊⟩ = cos(θ/2)|0⟩ + e^{iφ} sin(θ/2)|1⟩
//! |n₋⟩ = -sin(θ/2)|0⟩ + e^{iφ} cos(θ/2)|1⟩
//! ```
//!
//! with `H|n±⟩ = ∓(ω₀/2)|n±⟩`. All phase bookkeeping elsewhere in the crate
//! references this gauge.

use nalgebra::{Matrix2, Vector2};
use num_complex::Complex64;

use crate::error::{domain, Error, Result};

/// 2×2 complex matrix acting on spin states.
pub type Operator = Matrix2<Complex64>;

/// Norm tolerance accepted on states handed in from outside.
pub const NORM_CONTRACT: f64 = 1e-9;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Pure qubit state `c0|0⟩ + c1|1⟩`, kept normalized to 1 within 1e-12.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinState {
    pub c0: Complex64,
    pub c1: Complex64,
}

impl SpinState {
    /// Builds a state from amplitudes, rejecting vectors whose norm deviates
    /// from 1 by more than [`NORM_CONTRACT`].
    pub fn new(c0: Complex64, c1: Complex64) -> Result<Self> {
        let state = Self { c0, c1 };
        let deviation = (state.norm() - 1.0).abs();
        if deviation > NORM_CONTRACT {
            return Err(Error::Contract {
                what: "spin state norm",
                deviation,
                limit: NORM_CONTRACT,
            });
        }
        Ok(state.renormalized())
    }

    /// Builds a state from any nonzero amplitude pair, normalizing it.
    pub fn normalized(c0: Complex64, c1: Complex64) -> Result<Self> {
        let n = (c0.norm_sqr() + c1.norm_sqr()).sqrt();
        if n == 0.0 || !n.is_finite() {
            return Err(domain("cannot normalize a zero or non-finite amplitude pair"));
        }
        Ok(Self { c0: c0 / n, c1: c1 / n })
    }

    /// `|0⟩`, the north pole of the Bloch sphere.
    pub fn ket0() -> Self {
        Self { c0: ONE, c1: ZERO }
    }

    /// `|1⟩`, the south pole of the Bloch sphere.
    pub fn ket1() -> Self {
        Self { c0: ZERO, c1: ONE }
    }

    /// State with Bloch vector `r` (polar angle θ, azimuth φ of `r`), in the
    /// `|n₊⟩` gauge.
    pub fn from_bloch(r: &BlochVector) -> Self {
        let theta = r.polar_angle();
        let phi = r.azimuth();
        eigenstate_plus(theta, phi)
    }

    pub fn norm(&self) -> f64 {
        (self.c0.norm_sqr() + self.c1.norm_sqr()).sqrt()
    }

    fn renormalized(&self) -> Self {
        let n = self.norm();
        Self { c0: self.c0 / n, c1: self.c1 / n }
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Complex64 {
        self.c0.conj() * other.c0 + self.c1.conj() * other.c1
    }

    /// `|⟨self|other⟩|²`.
    pub fn fidelity(&self, other: &Self) -> f64 {
        self.inner(other).norm_sqr()
    }

    /// The same ray multiplied by `e^{iχ}`.
    pub fn with_global_phase(&self, chi: f64) -> Self {
        let phase = Complex64::from_polar(1.0, chi);
        Self { c0: self.c0 * phase, c1: self.c1 * phase }
    }

    /// Bloch vector `r = ⟨ψ|σ|ψ⟩`; see [`bloch_from_state`].
    pub fn bloch(&self) -> BlochVector {
        let cross = self.c0.conj() * self.c1;
        BlochVector {
            x: 2.0 * cross.re,
            y: 2.0 * cross.im,
            z: self.c0.norm_sqr() - self.c1.norm_sqr(),
        }
    }

    pub fn as_vector(&self) -> Vector2<Complex64> {
        Vector2::new(self.c0, self.c1)
    }

    pub fn from_vector(v: &Vector2<Complex64>) -> Self {
        Self { c0: v[0], c1: v[1] }
    }
}

/// Real 3-vector `r = ⟨ψ|σ|ψ⟩`; unit length for pure states. The same struct
/// represents field directions (see [`FieldDirection`]).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

/// Unit 3-vector giving the instantaneous field direction `n(t)`.
///
/// Field directions and Bloch vectors live on the same sphere and are
/// compared constantly (the energy uncertainty is `(ω₀/2)|n × r|`), so they
/// share one representation.
pub type FieldDirection = BlochVector;

impl BlochVector {
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    /// Unit vector with polar angle `theta` and azimuth `phi`.
    pub fn from_angles(theta: f64, phi: f64) -> Self {
        Self {
            x: theta.sin() * phi.cos(),
            y: theta.sin() * phi.sin(),
            z: theta.cos(),
        }
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn dot(&self, other: &Self) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn cross(&self, other: &Self) -> Self {
        Self {
            x: self.y * other.z - self.z * other.y,
            y: self.z * other.x - self.x * other.z,
            z: self.x * other.y - self.y * other.x,
        }
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self { x: self.x * s, y: self.y * s, z: self.z * s }
    }

    pub fn normalized(&self) -> Self {
        self.scaled(1.0 / self.norm())
    }

    /// Angle to `other` in radians, computed with `atan2` so it stays
    /// accurate for nearly parallel and nearly antiparallel vectors.
    pub fn angle_to(&self, other: &Self) -> f64 {
        self.cross(other).norm().atan2(self.dot(other))
    }

    /// Polar angle θ ∈ [0, π] of this vector.
    pub fn polar_angle(&self) -> f64 {
        (self.x * self.x + self.y * self.y).sqrt().atan2(self.z)
    }

    /// Azimuth φ ∈ (-π, π]; zero on the z-axis where it is undefined.
    pub fn azimuth(&self) -> f64 {
        if self.x == 0.0 && self.y == 0.0 {
            0.0
        } else {
            self.y.atan2(self.x)
        }
    }
}

/// Which great-circle family the field direction sweeps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RotationMode {
    /// Fixed polar angle θ ∈ (0, π); azimuth advances as `φ = ωt`.
    Latitude { theta: f64 },
    /// Fixed azimuth φ; polar angle advances as `θ = ωt`.
    Meridian { phi: f64 },
}

/// Rotating-field specification. The drive sweeps a total angle `beta`, so
/// the run lasts `T = beta / omega` (infinite for a static field).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldSchedule {
    pub mode: RotationMode,
    /// Larmor frequency ω₀ (units of the reference frequency).
    pub omega0: f64,
    /// Drive angular speed ω (same units). `λ = ω/ω₀`.
    pub omega: f64,
    /// Total sweep angle in radians.
    pub beta: f64,
}

impl FieldSchedule {
    pub fn new(mode: RotationMode, omega0: f64, omega: f64, beta: f64) -> Result<Self> {
        if !(omega0 >= 0.0) || !omega0.is_finite() {
            return Err(domain(format!("omega0 must be >= 0 and finite, got {omega0}")));
        }
        if !(omega >= 0.0) || !omega.is_finite() {
            return Err(domain(format!("omega must be >= 0 and finite, got {omega}")));
        }
        if omega0 == 0.0 && omega == 0.0 {
            return Err(domain("omega0 and omega cannot both be zero"));
        }
        if !(beta > 0.0) || !beta.is_finite() {
            return Err(domain(format!("beta must be > 0 and finite, got {beta}")));
        }
        if let RotationMode::Latitude { theta } = mode {
            if !(theta > 0.0 && theta < std::f64::consts::PI) {
                return Err(domain(format!(
                    "latitude polar angle must lie in (0, pi), got {theta}"
                )));
            }
        }
        if let RotationMode::Meridian { phi } = mode {
            if !phi.is_finite() {
                return Err(domain(format!("meridian azimuth must be finite, got {phi}")));
            }
        }
        Ok(Self { mode, omega0, omega, beta })
    }

    /// Latitude rotation at polar angle `theta`, `ω₀ = 1`, `ω = lambda`.
    pub fn latitude(theta: f64, lambda: f64, beta: f64) -> Result<Self> {
        Self::new(RotationMode::Latitude { theta }, 1.0, lambda, beta)
    }

    /// Full latitude loop (`beta = 2π`).
    pub fn latitude_loop(theta: f64, lambda: f64) -> Result<Self> {
        Self::latitude(theta, lambda, 2.0 * std::f64::consts::PI)
    }

    /// Meridian rotation starting at the north pole, azimuth `phi`,
    /// `ω₀ = 1`, `ω = lambda`.
    pub fn meridian(phi: f64, lambda: f64, beta: f64) -> Result<Self> {
        Self::new(RotationMode::Meridian { phi }, 1.0, lambda, beta)
    }

    /// Pole-to-pole meridian sweep (`beta = π`, azimuth 0).
    pub fn meridian_sweep(lambda: f64) -> Result<Self> {
        Self::meridian(0.0, lambda, std::f64::consts::PI)
    }

    /// Full meridian loop (`beta = 2π`, azimuth 0).
    pub fn meridian_loop(lambda: f64) -> Result<Self> {
        Self::meridian(0.0, lambda, 2.0 * std::f64::consts::PI)
    }

    /// Adiabaticity parameter `λ = ω/ω₀` (infinite when ω₀ = 0).
    pub fn lambda(&self) -> f64 {
        self.omega / self.omega0
    }

    /// Run duration `T = β/ω`; infinite for a static field (ω = 0).
    pub fn duration(&self) -> f64 {
        if self.omega == 0.0 {
            f64::INFINITY
        } else {
            self.beta / self.omega
        }
    }

    /// Polar and azimuthal angles `(θ(t), φ(t))` of the field direction.
    ///
    /// These are analytic continuations of the schedule parameters: a
    /// meridian sweep past the south pole keeps `φ` fixed and lets `θ` grow
    /// beyond π, which keeps the eigenstate gauge (and hence the adiabatic
    /// frame) continuous in `t`.
    pub fn angles(&self, t: f64) -> (f64, f64) {
        match self.mode {
            RotationMode::Latitude { theta } => (theta, self.omega * t),
            RotationMode::Meridian { phi } => (self.omega * t, phi),
        }
    }

    fn check_time(&self, t: f64) -> Result<()> {
        let duration = self.duration();
        if !t.is_finite() || t < 0.0 || t > duration {
            return Err(domain(format!(
                "time {t} outside the schedule range [0, {duration}]"
            )));
        }
        Ok(())
    }

    /// Field direction `n(t)`.
    ///
    /// Latitude mode: `(sinθ cos ωt, sinθ sin ωt, cosθ)`.
    /// Meridian mode: `(sin ωt cos φ, sin ωt sin φ, cos ωt)`.
    pub fn field_direction(&self, t: f64) -> Result<FieldDirection> {
        self.check_time(t)?;
        let (theta, phi) = self.angles(t);
        Ok(BlochVector::from_angles(theta, phi))
    }

    /// Lab-frame Hamiltonian `H(t) = -(ω₀/2) n(t)·σ` (units ħ = 1).
    ///
    /// Hermitian and traceless with eigenvalues ∓ω₀/2 for any unit `n`.
    pub fn hamiltonian(&self, t: f64) -> Result<Operator> {
        self.check_time(t)?;
        Ok(self.hamiltonian_unchecked(t))
    }

    /// [`Self::hamiltonian`] without the time-range check, for integrator
    /// inner loops that already validated their span.
    pub(crate) fn hamiltonian_unchecked(&self, t: f64) -> Operator {
        let (theta, phi) = self.angles(t);
        let n = BlochVector::from_angles(theta, phi);
        pauli_dot(&n).map(|e| e * Complex64::new(-0.5 * self.omega0, 0.0))
    }

    /// The instantaneous ground state `|n₊(0)⟩` at the start of the sweep.
    pub fn initial_eigenstate(&self) -> SpinState {
        let (theta, phi) = self.angles(0.0);
        eigenstate_plus(theta, phi)
    }
}

/// `n·σ` for a 3-vector `n`.
pub fn pauli_dot(n: &BlochVector) -> Operator {
    Operator::new(
        Complex64::new(n.z, 0.0),
        Complex64::new(n.x, -n.y),
        Complex64::new(n.x, n.y),
        Complex64::new(-n.z, 0.0),
    )
}

/// `exp(i φ (n·σ)) = cos φ · I + i sin φ · (n·σ)` for unit `n`.
pub fn exp_i_pauli(n: &BlochVector, phi: f64) -> Operator {
    let (s, c) = phi.sin_cos();
    Operator::identity().map(|e| e * Complex64::new(c, 0.0)) + pauli_dot(n).map(|e| e * I * s)
}

/// Eigenstate `|n₊⟩` of `n·σ` (eigenvalue +1) in the fixed gauge, from the
/// polar/azimuthal angles of `n`.
pub fn eigenstate_plus(theta: f64, phi: f64) -> SpinState {
    let half = 0.5 * theta;
    SpinState {
        c0: Complex64::new(half.cos(), 0.0),
        c1: Complex64::from_polar(1.0, phi) * half.sin(),
    }
}

/// Eigenstate `|n₋⟩` of `n·σ` (eigenvalue −1) in the fixed gauge.
pub fn eigenstate_minus(theta: f64, phi: f64) -> SpinState {
    let half = 0.5 * theta;
    SpinState {
        c0: Complex64::new(-half.sin(), 0.0),
        c1: Complex64::from_polar(1.0, phi) * half.cos(),
    }
}

/// Instantaneous eigenstates `(|n₊⟩, |n₋⟩)` of `H = -(ω₀/2) n·σ`, so that
/// `H|n±⟩ = ∓(ω₀/2)|n±⟩`.
///
/// The angles are recovered from the vector; exactly at the south pole the
/// azimuth is undefined and the θ→π limit with φ = 0 is returned. Code that
/// needs a continuous gauge across the pole should derive eigenstates from
/// schedule angles instead (see [`crate::propagator::AdiabaticFrame`]).
pub fn instantaneous_eigenstates(n: &FieldDirection) -> Result<(SpinState, SpinState)> {
    let deviation = (n.norm() - 1.0).abs();
    if deviation > NORM_CONTRACT {
        return Err(Error::Contract {
            what: "field direction norm",
            deviation,
            limit: NORM_CONTRACT,
        });
    }
    let theta = n.polar_angle();
    let phi = n.azimuth();
    Ok((eigenstate_plus(theta, phi), eigenstate_minus(theta, phi)))
}

/// Bloch vector of a normalized state:
/// `r = (2 Re(c0* c1), 2 Im(c0* c1), |c0|² − |c1|²)`.
///
/// Errors if the input norm deviates from 1 by more than 1e-9.
pub fn bloch_from_state(psi: &SpinState) -> Result<BlochVector> {
    let deviation = (psi.norm() - 1.0).abs();
    if deviation > NORM_CONTRACT {
        return Err(Error::Contract {
            what: "spin state norm",
            deviation,
            limit: NORM_CONTRACT,
        });
    }
    Ok(psi.bloch())
}
