//! Dynamical, Aharonov–Anandan, and Berry phases; the energy uncertainty
//! ΔE(t); and the Fubini–Study length functional L[λ] with its singular
//! adiabatic limit.
//!
//! For a cyclic evolution the total phase `arg⟨ψ(0)|ψ(T)⟩` splits into the
//! dynamical part `-∫⟨H⟩dt/ħ` and the geometric (Aharonov–Anandan) part,
//! which equals half the solid angle enclosed by the Bloch trajectory up to
//! sign. With `γ_d ≡ +∫⟨H⟩dt/ħ` (the sign used throughout this module), the
//! geometric phase is `total + γ_d`; on the closed latitude loops whose frame
//! propagator returns to +1 the total phase is exactly π, giving the closed
//! form `γ_AA = π + γ_d = π − (π/λ)cos²α`. As λ → 0 this converges (mod 2π)
//! to ± the Berry phase `π(1 − cosθ)`; both signed foldings are reported and
//! compared by magnitude.
//!
//! The Fubini–Study length of the evolution is `L = 2∫ΔE dt/ħ`, which for a
//! pure qubit equals the Bloch-sphere arc length. For the pole-to-pole
//! meridian sweep started in `|0⟩`,
//!
//! ```text
//! ΔE(t) = (ω₀/2) √(1 − [cos²(Ωt/2) + ((1−λ²)/(1+λ²)) sin²(Ωt/2)]²) ,
//! ```
//!
//! and substituting x = Ωt/2,
//!
//! ```text
//! L[λ] = 2/√(1+λ²) ∫₀^{(π/2)√(1+λ²)/λ} √(1 − [cos²x + ((1−λ²)/(1+λ²)) sin²x]²) dx .
//! ```
//!
//! Along the resonance sequence L[λ] is n times the cycloid arc length and
//! increases monotonically to 4 as λ → 0 — strictly above the geodesic
//! length π even though the trajectory itself converges to the geodesic.

use std::f64::consts::PI;

use crate::error::{domain, Error, Result};
use crate::geometry::CLOSURE_TOL;
use crate::propagator::{effective_rotation, propagate_exact};
use crate::spin::{FieldSchedule, RotationMode, SpinState};

/// Phase bookkeeping for one cyclic evolution.
///
/// `dynamical_phase` carries the sign convention `γ_d = +∫⟨H⟩dt/ħ` (negative
/// for the ground band), so the Aharonov–Anandan phase — total phase minus
/// the standard dynamical phase `-∫⟨H⟩dt/ħ` — is `total_phase +
/// dynamical_phase`.
#[derive(Debug, Clone, Copy)]
pub struct PhaseSummary {
    /// `arg⟨ψ(0)|ψ(T)⟩` folded into (−π, π].
    pub total_phase: f64,
    /// Total phase with winding tracked by continuous sampling of
    /// `arg⟨ψ(0)|ψ(t)⟩`; unreliable if `min_overlap` is close to zero.
    pub total_phase_unfolded: f64,
    /// Whole turns separating the unfolded and folded total phases.
    pub winding: i64,
    /// Smallest `|⟨ψ(0)|ψ(t)⟩|` seen while unwinding.
    pub min_overlap: f64,
    /// `γ_d = ∫⟨H⟩dt/ħ` along the evolution.
    pub dynamical_phase: f64,
    /// Aharonov–Anandan phase `total_phase + dynamical_phase`, folded into
    /// [0, 2π).
    pub geometric_phase: f64,
    /// The same phase folded into (−π, π].
    pub geometric_phase_signed: f64,
    /// Closed form `π + γ_d` folded into [0, 2π); coincides with
    /// `geometric_phase` on loops whose frame propagator returns to +1.
    pub closed_form_aa: f64,
    /// Magnitude disagreement between `geometric_phase` and the closed form
    /// after folding both into (−π, π].
    pub closed_form_residual: f64,
    /// Adiabatic geometric phase of the mode's field loop:
    /// `π(1 − cosθ)` for a latitude loop, π for a meridian great circle.
    pub berry_phase: f64,
}

/// Time-energy uncertainty report for the pole-to-pole sweep at one λ.
#[derive(Debug, Clone, Copy)]
pub struct UncertaintyReport {
    pub lambda: f64,
    /// Fubini–Study length L[λ] in radians.
    pub length: f64,
    /// `⟨ΔE⟩T/ħ = L/2`.
    pub mean_uncertainty_times_t: f64,
}

/// Instantaneous energy uncertainty `ΔE(t)/ħ` of the exactly evolved state.
///
/// `⟨H²⟩ = ω₀²/4` identically, so `ΔE = (ω₀/2)|n(t) × r(t)|`.
pub fn energy_uncertainty(schedule: &FieldSchedule, psi0: &SpinState, t: f64) -> Result<f64> {
    let state = propagate_exact(schedule, psi0, t)?;
    let (theta, phi) = schedule.angles(t);
    let n = crate::spin::BlochVector::from_angles(theta, phi);
    Ok(0.5 * schedule.omega0 * n.cross(&state.bloch()).norm())
}

/// Closed-form ΔE(t)/ħ for the meridian pole-to-pole sweep from `|0⟩`
/// (units ω₀ = 1).
pub fn meridian_uncertainty_closed_form(lambda: f64, t: f64) -> f64 {
    let omega = (1.0 + lambda * lambda).sqrt();
    let (s, c) = (0.5 * omega * t).sin_cos();
    let bracket = c * c + (1.0 - lambda * lambda) / (1.0 + lambda * lambda) * s * s;
    0.5 * (1.0 - bracket * bracket).max(0.0).sqrt()
}

/// Fubini–Study length `L[λ] = 2∫₀ᵀ ΔE dt/ħ` of the meridian pole-to-pole
/// sweep from `|0⟩`, by adaptive Simpson quadrature (absolute tolerance
/// 1e-8). The integrand completes one arch per π of the substituted
/// variable, so the quadrature splits there; the arch count grows as 1/λ.
pub fn length_functional(lambda: f64) -> Result<f64> {
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(domain(format!("lambda must be > 0 and finite, got {lambda}")));
    }
    let s2 = lambda * lambda / (1.0 + lambda * lambda); // sin²α
    let upper = 0.5 * PI * (1.0 + lambda * lambda).sqrt() / lambda;
    let f = |x: f64| {
        let sx = x.sin();
        let bracket = 1.0 - 2.0 * s2 * sx * sx;
        (1.0 - bracket * bracket).max(0.0).sqrt()
    };
    let chunks = (upper / PI).ceil().max(1.0);
    let prefactor = 2.0 / (1.0 + lambda * lambda).sqrt();
    let tol_per_chunk = 1e-8 / prefactor / chunks;
    let mut raw = 0.0;
    let mut k = 0.0;
    while k * PI < upper {
        let hi = ((k + 1.0) * PI).min(upper);
        raw += adaptive_simpson(&f, k * PI, hi, tol_per_chunk);
        k += 1.0;
    }
    Ok(prefactor * raw)
}

/// Length and mean uncertainty for the pole-to-pole sweep at `lambda`.
pub fn uncertainty_report(lambda: f64) -> Result<UncertaintyReport> {
    let length = length_functional(lambda)?;
    Ok(UncertaintyReport { lambda, length, mean_uncertainty_times_t: 0.5 * length })
}

/// Dynamical phase `γ_d = ∫₀ᵀ ⟨ψ(t)|H(t)|ψ(t)⟩ dt / ħ` of the exact
/// evolution, by composite Simpson with at least 10⁴ panels.
///
/// Negative for ground-band states; for a rim-state closed latitude loop at
/// resonance it equals `-(π/λ)cos²α`.
pub fn dynamical_phase(schedule: &FieldSchedule, psi0: &SpinState, duration: f64) -> Result<f64> {
    if !(duration > 0.0) || !duration.is_finite() || duration > schedule.duration() {
        return Err(domain(format!(
            "integration window {duration} outside the schedule range (0, {}]",
            schedule.duration()
        )));
    }
    let rot = effective_rotation(schedule);
    let oscillations = (rot.omega * duration / (2.0 * PI)).ceil() as usize;
    let panels = (10_000usize.max(200 * oscillations) + 1) & !1usize; // even
    let h = duration / panels as f64;
    let expectation = |t: f64| -> Result<f64> {
        let state = propagate_exact(schedule, psi0, t)?;
        let (theta, phi) = schedule.angles(t);
        let n = crate::spin::BlochVector::from_angles(theta, phi);
        Ok(-0.5 * schedule.omega0 * n.dot(&state.bloch()))
    };
    let mut sum = expectation(0.0)? + expectation(duration)?;
    for i in 1..panels {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        sum += w * expectation(i as f64 * h)?;
    }
    Ok(sum * h / 3.0)
}

/// Closed-form `γ_d(t)` for the rim initial state `|n₊(0)⟩`:
/// `-(ω₀/2)[t cos²α + sin²α sin(Ωt)/Ω]`.
pub fn rim_dynamical_phase_closed_form(schedule: &FieldSchedule, t: f64) -> f64 {
    let rot = effective_rotation(schedule);
    let c2 = rot.alpha.cos().powi(2);
    let s2 = rot.a * rot.a;
    -0.5 * schedule.omega0 * (t * c2 + s2 * (rot.omega * t).sin() / rot.omega)
}

/// Adiabatic geometric phase `π(1 − cosθ)` of a latitude loop at polar angle
/// θ ∈ [0, π]: half the solid angle swept by the field direction.
pub fn berry_phase(theta: f64) -> f64 {
    PI * (1.0 - theta.cos())
}

/// Phase summary of the cyclic evolution of the rim state `|n₊(0)⟩` over
/// `[0, t_closed]`. Errors with [`Error::Closure`] if the Bloch trajectory
/// does not return to its start within 1e-6.
pub fn aa_phase(schedule: &FieldSchedule, t_closed: f64) -> Result<PhaseSummary> {
    aa_phase_with_initial(schedule, &schedule.initial_eigenstate(), t_closed)
}

/// [`aa_phase`] for an arbitrary normalized initial state.
pub fn aa_phase_with_initial(
    schedule: &FieldSchedule,
    psi0: &SpinState,
    t_closed: f64,
) -> Result<PhaseSummary> {
    let psi_t = propagate_exact(schedule, psi0, t_closed)?;
    let gap = psi0.bloch().angle_to(&psi_t.bloch());
    if gap > CLOSURE_TOL {
        return Err(Error::Closure { gap, tol: CLOSURE_TOL });
    }

    let total_phase = psi0.inner(&psi_t).arg();
    let (total_phase_unfolded, min_overlap) = unfolded_total_phase(schedule, psi0, t_closed)?;
    let winding = ((total_phase_unfolded - total_phase) / (2.0 * PI)).round() as i64;

    let gamma_d = dynamical_phase(schedule, psi0, t_closed)?;
    let geometric_phase = fold_two_pi(total_phase + gamma_d);
    let geometric_phase_signed = fold_pm_pi(geometric_phase);
    let closed_form_aa = fold_two_pi(PI + gamma_d);
    let closed_form_residual =
        (geometric_phase_signed.abs() - fold_pm_pi(closed_form_aa).abs()).abs();

    let berry = match schedule.mode {
        RotationMode::Latitude { theta } => berry_phase(theta),
        RotationMode::Meridian { .. } => PI,
    };

    Ok(PhaseSummary {
        total_phase,
        total_phase_unfolded,
        winding,
        min_overlap,
        dynamical_phase: gamma_d,
        geometric_phase,
        geometric_phase_signed,
        closed_form_aa,
        closed_form_residual,
        berry_phase: berry,
    })
}

fn unfolded_total_phase(
    schedule: &FieldSchedule,
    psi0: &SpinState,
    t_closed: f64,
) -> Result<(f64, f64)> {
    let rot = effective_rotation(schedule);
    let rate = schedule.omega0 + rot.omega + schedule.omega;
    let samples = 4096usize.max((16.0 * rate * t_closed / (2.0 * PI)).ceil() as usize);
    let mut phase = 0.0;
    let mut prev_arg = 0.0;
    let mut min_overlap = f64::INFINITY;
    for i in 1..=samples {
        let t = t_closed * i as f64 / samples as f64;
        let overlap = psi0.inner(&propagate_exact(schedule, psi0, t)?);
        min_overlap = min_overlap.min(overlap.norm());
        let arg = overlap.arg();
        phase += fold_pm_pi(arg - prev_arg);
        prev_arg = arg;
    }
    Ok((phase, min_overlap))
}

/// Fold into (−π, π].
pub fn fold_pm_pi(x: f64) -> f64 {
    let two_pi = 2.0 * PI;
    let mut y = x % two_pi;
    if y > PI {
        y -= two_pi;
    } else if y <= -PI {
        y += two_pi;
    }
    y
}

/// Fold into [0, 2π).
pub fn fold_two_pi(x: f64) -> f64 {
    let two_pi = 2.0 * PI;
    let mut y = x % two_pi;
    if y < 0.0 {
        y += two_pi;
    }
    y
}

fn adaptive_simpson(f: &impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    // the first levels are forced: symmetric integrands can fool the
    // error estimate on the undivided interval
    simpson_step(f, a, b, fa, fb, fm, whole, tol, 40, 4)
}

#[allow(clippy::too_many_arguments)]
fn simpson_step(
    f: &impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    fa: f64,
    fb: f64,
    fm: f64,
    whole: f64,
    tol: f64,
    depth: u32,
    force: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || (force == 0 && delta.abs() <= 15.0 * tol) {
        left + right + delta / 15.0
    } else {
        let force = force.saturating_sub(1);
        simpson_step(f, a, m, fa, fm, flm, left, 0.5 * tol, depth - 1, force)
            + simpson_step(f, m, b, fm, fb, frm, right, 0.5 * tol, depth - 1, force)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{cycloid_arc_area, cycloid_arc_length, enclosed_solid_angle, path_length};
    use crate::propagator::trajectory;
    use crate::resonance::{latitude_resonance_lambda, meridian_resonance_lambda};
    use approx::assert_abs_diff_eq;

    #[test]
    fn uncertainty_vanishes_for_initial_eigenstate() {
        let s = FieldSchedule::meridian_sweep(0.5).unwrap();
        let de = energy_uncertainty(&s, &SpinState::ket0(), 0.0).unwrap();
        assert_abs_diff_eq!(de, 0.0, epsilon = 1e-14);
        // static field: eigenstate stays sharp forever
        let s = FieldSchedule::latitude(1.0, 0.0, PI).unwrap();
        let de = energy_uncertainty(&s, &s.initial_eigenstate(), 40.0).unwrap();
        assert_abs_diff_eq!(de, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn uncertainty_is_maximal_at_resonance_midpoint_for_unit_lambda() {
        // λ = 1: the bracket vanishes at Ωt = π and ΔE = ω₀/2
        let t = PI / 2.0_f64.sqrt();
        assert_abs_diff_eq!(meridian_uncertainty_closed_form(1.0, t), 0.5, epsilon = 1e-14);
        let s = FieldSchedule::meridian_sweep(1.0).unwrap();
        let de = energy_uncertainty(&s, &SpinState::ket0(), t).unwrap();
        assert_abs_diff_eq!(de, 0.5, epsilon = 1e-12);
    }

    #[test]
    fn closed_form_uncertainty_matches_direct_computation() {
        for &lambda in &[0.2, 0.5, 1.0, 3.0] {
            let s = FieldSchedule::meridian_sweep(lambda).unwrap();
            for k in 0..=40 {
                let t = s.duration() * k as f64 / 40.0;
                let direct = energy_uncertainty(&s, &SpinState::ket0(), t).unwrap();
                let closed = meridian_uncertainty_closed_form(lambda, t);
                assert!(
                    (direct * direct - closed * closed).abs() < 1e-10,
                    "ΔE² mismatch at λ={lambda}, t={t}"
                );
            }
        }
    }

    #[test]
    fn length_functional_matches_cycloid_closed_form_at_resonances() {
        for n in [1usize, 2, 5] {
            let lambda = meridian_resonance_lambda(n as u32).unwrap();
            let l = length_functional(lambda).unwrap();
            let expected = n as f64 * cycloid_arc_length(1.0 / (2.0 * n as f64)).unwrap();
            assert_abs_diff_eq!(l, expected, epsilon = 1e-7);
        }
        // frozen quadrature values
        assert_abs_diff_eq!(length_functional(0.2).unwrap(), 3.9133270171302037, epsilon = 1e-6);
        assert_abs_diff_eq!(length_functional(0.5).unwrap(), 3.085331131487113, epsilon = 1e-6);
        assert_abs_diff_eq!(length_functional(1.0).unwrap(), 2.5296301669134706, epsilon = 1e-6);
    }

    #[test]
    fn length_functional_sudden_quench_limit() {
        assert!(length_functional(1000.0).unwrap() < 5e-3);
        assert!(length_functional(0.0).is_err());
        assert!(length_functional(-1.0).is_err());
    }

    #[test]
    fn length_functional_agrees_with_trajectory_path_length() {
        for &lambda in &[0.2, 0.5, 1.0] {
            let s = FieldSchedule::meridian_sweep(lambda).unwrap();
            let traj = trajectory(&s, &SpinState::ket0(), 100_001).unwrap();
            let sampled = path_length(&traj.bloch_points()).unwrap();
            let quadrature = length_functional(lambda).unwrap();
            assert!(
                (sampled - quadrature).abs() < 2e-3,
                "λ={lambda}: sampled {sampled} vs quadrature {quadrature}"
            );
        }
    }

    #[test]
    fn dynamical_phase_of_stationary_eigenstate() {
        let s = FieldSchedule::latitude(1.2, 0.0, PI).unwrap();
        let t = 7.0;
        let gd = dynamical_phase(&s, &s.initial_eigenstate(), t).unwrap();
        // constant ⟨H⟩ = -ω₀/2
        assert_abs_diff_eq!(gd, -0.5 * t, epsilon = 1e-9);
    }

    #[test]
    fn dynamical_phase_latitude_resonance_closed_form() {
        let theta = PI / 3.0;
        let lambda = latitude_resonance_lambda(theta, 5).unwrap();
        assert_abs_diff_eq!(1.0 / lambda, 9.462429422585638, epsilon = 1e-9);
        let s = FieldSchedule::latitude_loop(theta, lambda).unwrap();
        let gd = dynamical_phase(&s, &s.initial_eigenstate(), s.duration()).unwrap();
        let rot = effective_rotation(&s);
        let closed = -(PI / lambda) * rot.alpha.cos().powi(2);
        assert_abs_diff_eq!(gd, closed, epsilon = 1e-6);
        assert_abs_diff_eq!(closed, -29.504145518413647, epsilon = 1e-9);
        assert_abs_diff_eq!(
            rim_dynamical_phase_closed_form(&s, s.duration()),
            closed,
            epsilon = 1e-9
        );
    }

    #[test]
    fn dynamical_phase_adds_per_loop_at_resonance() {
        let theta = PI / 3.0;
        let lambda = latitude_resonance_lambda(theta, 3).unwrap();
        let one = FieldSchedule::latitude_loop(theta, lambda).unwrap();
        let two = FieldSchedule::latitude(theta, lambda, 4.0 * PI).unwrap();
        let gd1 = dynamical_phase(&one, &one.initial_eigenstate(), one.duration()).unwrap();
        let gd2 = dynamical_phase(&two, &two.initial_eigenstate(), two.duration()).unwrap();
        assert_abs_diff_eq!(gd2, 2.0 * gd1, epsilon = 1e-7);
    }

    #[test]
    fn aa_phase_frozen_latitude_resonance() {
        let theta = PI / 3.0;
        let lambda = latitude_resonance_lambda(theta, 10).unwrap();
        let s = FieldSchedule::latitude_loop(theta, lambda).unwrap();
        let summary = aa_phase(&s, s.duration()).unwrap();
        // frame propagator returns to +1, trace phase contributes -1
        assert!((summary.total_phase.abs() - PI).abs() < 1e-9);
        assert_abs_diff_eq!(summary.geometric_phase, 4.886075463169689, epsilon = 1e-6);
        assert!(summary.closed_form_residual < 1e-6);
        assert_abs_diff_eq!(summary.berry_phase, PI / 2.0, epsilon = 1e-15);
    }

    #[test]
    fn aa_phase_rejects_open_evolutions() {
        let s = FieldSchedule::latitude_loop(PI / 3.0, 0.3).unwrap();
        assert!(matches!(
            aa_phase(&s, s.duration()),
            Err(Error::Closure { .. })
        ));
    }

    #[test]
    fn aa_phase_is_gauge_invariant() {
        let theta = PI / 3.0;
        let lambda = latitude_resonance_lambda(theta, 5).unwrap();
        let s = FieldSchedule::latitude_loop(theta, lambda).unwrap();
        let base = aa_phase(&s, s.duration()).unwrap();
        for &chi in &[0.7, -2.1, 3.0] {
            let shifted = aa_phase_with_initial(
                &s,
                &s.initial_eigenstate().with_global_phase(chi),
                s.duration(),
            )
            .unwrap();
            assert!((shifted.geometric_phase - base.geometric_phase).abs() < 1e-10);
        }
    }

    #[test]
    fn aa_to_berry_gap_matches_summed_arc_areas() {
        // the AA-Berry magnitude gap equals half the enclosed-area deficit,
        // which is the summed cycloid arc areas
        let theta: f64 = PI / 3.0;
        let n = 10u32;
        let lambda = latitude_resonance_lambda(theta, n).unwrap();
        let s = FieldSchedule::latitude_loop(theta, lambda).unwrap();
        let summary = aa_phase(&s, s.duration()).unwrap();
        let gap = (summary.geometric_phase_signed.abs() - summary.berry_phase).abs();
        let a = theta.sin() / (2.0 * n as f64);
        let arc_sum = n as f64 * cycloid_arc_area(a).unwrap();
        assert!(
            (gap / arc_sum - 1.0).abs() < 0.05,
            "gap {gap} vs arc-area sum {arc_sum}"
        );
        // and the trajectory's enclosed area halves to |γ_AA|
        let traj = trajectory(&s, &s.initial_eigenstate(), 200_001).unwrap();
        let area = enclosed_solid_angle(&traj.bloch_points()).unwrap();
        assert!(
            (0.5 * area.abs() - summary.geometric_phase_signed.abs()).abs() < 1e-3,
            "area/2 = {} vs |γ_AA| = {}",
            0.5 * area.abs(),
            summary.geometric_phase_signed.abs()
        );
    }

    #[test]
    fn berry_phase_values_and_solid_angle_link() {
        assert_abs_diff_eq!(berry_phase(PI / 3.0), PI / 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(berry_phase(0.0), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(berry_phase(PI / 2.0), PI, epsilon = 1e-15);
        let theta = 1.1;
        let circle: Vec<_> = (0..=2000)
            .map(|i| crate::spin::BlochVector::from_angles(theta, 2.0 * PI * i as f64 / 2000.0))
            .collect();
        let area = enclosed_solid_angle(&circle).unwrap();
        assert_abs_diff_eq!(berry_phase(theta), 0.5 * area, epsilon = 1e-9);
    }

    #[test]
    fn report_halves_the_length() {
        let report = uncertainty_report(0.5).unwrap();
        assert_abs_diff_eq!(
            report.mean_uncertainty_times_t,
            0.5 * report.length,
            epsilon = 1e-15
        );
    }
}
