//! Non-adiabatic resonance conditions, transition infidelity, and λ-sweeps.
//!
//! The Bloch vector of the rim state returns to the adiabatic path whenever
//! the adiabatic frame completes whole rotations, `ΩT = 2πk`. For the
//! pole-to-pole meridian sweep (`ωT = π`) this puts perfect `|0⟩ → |1⟩`
//! transitions at `Ω/ω = 2n`, i.e. `ω₀/ω = √(4n² − 1)`, where the trajectory
//! consists of exactly n congruent cycloid arcs of radius `a = 1/(2n)`.

use crate::error::{domain, Result};
use crate::geometry::path_length;
use crate::phases::length_functional;
use crate::propagator::{effective_rotation, propagate_exact, trajectory};
use crate::spin::{eigenstate_plus, FieldSchedule, RotationMode, SpinState};

/// Infidelity below which a sweep row is tagged resonant.
pub const RESONANCE_INFIDELITY: f64 = 1e-8;

/// `Ω/ω = 4πn/β`: the frequency ratio at which the adiabatic-frame
/// propagator `exp(+i(Ωt/2) m·σ)` returns to +1 after sweeping `β`, so the
/// state closes including its sign. The Bloch vector (the ray) already
/// closes at half this ratio; see [`meridian_resonance_lambda`].
pub fn resonance_ratio(beta: f64, n: u32) -> Result<f64> {
    if !(beta > 0.0) || !beta.is_finite() {
        return Err(domain(format!("beta must be > 0 and finite, got {beta}")));
    }
    if n < 1 {
        return Err(domain("resonance index must be at least 1"));
    }
    Ok(4.0 * std::f64::consts::PI * n as f64 / beta)
}

/// Adiabaticity `λ = 1/√(4n² − 1)` of the n-th perfect pole-to-pole
/// transition (meridian sweep, `ωT = π`, Bloch closure `ΩT = 2πn`). The
/// rolling-circle radius there is `a = 1/(2n)`.
pub fn meridian_resonance_lambda(n: u32) -> Result<f64> {
    if n < 1 {
        return Err(domain("resonance index must be at least 1"));
    }
    let n = n as f64;
    Ok(1.0 / (4.0 * n * n - 1.0).sqrt())
}

/// Adiabaticity of the n-th closed latitude loop (`β = 2π`) whose frame
/// propagator returns to +1: `Ω/ω = 2n`, i.e.
/// `ω₀/ω = -cosθ + √(4n² - sin²θ)`. These are the loops on which the
/// closed form `γ_AA = π + γ_d` holds exactly.
pub fn latitude_resonance_lambda(theta: f64, n: u32) -> Result<f64> {
    if n < 1 {
        return Err(domain("resonance index must be at least 1"));
    }
    if !(theta > 0.0 && theta < std::f64::consts::PI) {
        return Err(domain(format!("theta must lie in (0, pi), got {theta}")));
    }
    let n = n as f64;
    let x = -theta.cos() + (4.0 * n * n - theta.sin().powi(2)).sqrt();
    Ok(1.0 / x)
}

/// `1 − |⟨target|ψ(T)⟩|²` for the exact evolution over the full sweep.
pub fn infidelity(schedule: &FieldSchedule, psi0: &SpinState, target: &SpinState) -> Result<f64> {
    let duration = schedule.duration();
    if !duration.is_finite() {
        return Err(domain("static schedule (ω = 0) has no finite sweep to evaluate"));
    }
    let psi_t = propagate_exact(schedule, psi0, duration)?;
    Ok((1.0 - psi_t.fidelity(target)).max(0.0))
}

/// Closed-form pole-to-pole infidelity `a² sin²(ΩT/2)` (units ω₀ = 1).
pub fn meridian_infidelity_closed_form(lambda: f64) -> f64 {
    let a2 = lambda * lambda / (1.0 + lambda * lambda);
    let half_angle = 0.5 * std::f64::consts::PI * (1.0 + 1.0 / (lambda * lambda)).sqrt();
    a2 * half_angle.sin().powi(2)
}

/// One row of a λ-sweep.
#[derive(Debug, Clone, Copy)]
pub struct SweepRow {
    pub lambda: f64,
    /// `1/(2λ)`, the abscissa Fig.-style sweep plots use.
    pub inv_two_lambda: f64,
    pub infidelity: f64,
    /// Fubini–Study length of the sweep at this λ.
    pub length: f64,
    /// Index of the nearest Bloch-closure resonance `ΩT = 2πn`.
    pub nearest_resonance_n: u32,
    /// True when the infidelity is below [`RESONANCE_INFIDELITY`].
    pub at_resonance: bool,
}

/// Evaluates infidelity and evolution length across a λ grid.
///
/// The template fixes the mode, ω₀, and β; each row replaces the drive speed
/// with `λ·ω₀`. The initial state is the rim state, the target the
/// instantaneous eigenstate at the end of the sweep. Rows come back in grid
/// order regardless of evaluation order.
pub fn sweep(lambda_grid: &[f64], template: &FieldSchedule) -> Result<Vec<SweepRow>> {
    if lambda_grid.is_empty() {
        return Err(domain("sweep grid is empty"));
    }
    let pole_to_pole = matches!(template.mode, RotationMode::Meridian { .. })
        && (template.beta - std::f64::consts::PI).abs() < 1e-9;
    let mut rows = Vec::with_capacity(lambda_grid.len());
    for &lambda in lambda_grid {
        if !(lambda > 0.0) || !lambda.is_finite() {
            return Err(domain(format!("sweep grid values must be > 0, got {lambda}")));
        }
        let schedule = FieldSchedule::new(
            template.mode,
            template.omega0,
            lambda * template.omega0,
            template.beta,
        )?;
        let duration = schedule.duration();
        let psi0 = schedule.initial_eigenstate();
        let (theta_end, phi_end) = schedule.angles(duration);
        let target = eigenstate_plus(theta_end, phi_end);
        let infid = infidelity(&schedule, &psi0, &target)?;
        let length = if pole_to_pole {
            length_functional(lambda)?
        } else {
            let traj = trajectory(&schedule, &psi0, 20_001)?;
            path_length(&traj.bloch_points())?
        };
        let rot = effective_rotation(&schedule);
        let nearest = (rot.omega * duration / (2.0 * std::f64::consts::PI)).round().max(1.0);
        rows.push(SweepRow {
            lambda,
            inv_two_lambda: 0.5 / lambda,
            infidelity: infid,
            length,
            nearest_resonance_n: nearest as u32,
            at_resonance: infid < RESONANCE_INFIDELITY,
        });
    }
    Ok(rows)
}

/// Bisects `sin(ΩT/2)` for the pole-to-pole meridian sweep to pin a
/// resonance between two λ values where the sign changes, to ~1e-15
/// relative accuracy. Infidelity is quadratic around its zeros, so root
/// refinement on the signed factor is what sharpens a grid detection.
pub fn refine_meridian_resonance(mut lo: f64, mut hi: f64) -> Result<f64> {
    if !(lo > 0.0 && hi > lo) {
        return Err(domain(format!("need 0 < lo < hi, got [{lo}, {hi}]")));
    }
    let g = |lambda: f64| (0.5 * std::f64::consts::PI * (1.0 + 1.0 / (lambda * lambda)).sqrt()).sin();
    let (mut glo, ghi) = (g(lo), g(hi));
    if glo == 0.0 {
        return Ok(lo);
    }
    if ghi == 0.0 {
        return Ok(hi);
    }
    if glo.signum() == ghi.signum() {
        return Err(domain(format!("no resonance bracketed in [{lo}, {hi}]")));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let gm = g(mid);
        if gm == 0.0 || (hi - lo) < 1e-15 * mid {
            return Ok(mid);
        }
        if gm.signum() == glo.signum() {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
