//! Geometric quantities of curves on the unit sphere: arc length, enclosed
//! solid angle, the spherical-cycloid closed forms, and the isoperimetric
//! inequality `L² ≥ A(4π − A)` (equality exactly for circles).
//!
//! The solid angle is computed from the line integral `∮ (1 − cosθ) dφ` with
//! explicitly unwrapped azimuth. The `(1 − cosθ)` weight vanishes at the
//! north pole, so the integral is robust there; samples at a pole carry the
//! azimuth continued from their neighbor, which assigns a pole passage's
//! azimuth jump to a segment with the correct weight.

use crate::error::{domain, Error, Result};
use crate::spin::BlochVector;

/// Endpoint gap below which a curve counts as closed.
pub const CLOSURE_TOL: f64 = 1e-6;

/// sin θ below which the azimuth of a sample is treated as undefined.
const POLE_TOL: f64 = 1e-9;

/// Length and signed enclosed area of a sampled spherical curve.
#[derive(Debug, Clone, Copy)]
pub struct CurveMetrics {
    /// Great-circle arc length in radians.
    pub length: f64,
    /// Signed enclosed solid angle in steradians; `None` for open curves.
    pub enclosed_area: Option<f64>,
    pub closed: bool,
}

/// Sum of great-circle distances between consecutive samples.
///
/// Converges to the true curve length second-order in the sample spacing.
pub fn path_length(points: &[BlochVector]) -> Result<f64> {
    if points.len() < 2 {
        return Err(domain(format!(
            "path length needs at least 2 samples, got {}",
            points.len()
        )));
    }
    Ok(points
        .windows(2)
        .map(|pair| pair[0].angle_to(&pair[1]))
        .sum())
}

/// Richardson extrapolation of a second-order quantity evaluated at sample
/// counts N and 2N; cancels the leading O(1/N²) error.
pub fn richardson(coarse: f64, fine: f64) -> f64 {
    fine + (fine - coarse) / 3.0
}

/// Signed solid angle enclosed by a closed sampled curve, via the line
/// integral `∮ (1 − cosθ) dφ` with unwrapped φ.
///
/// Counterclockwise as seen from +z is positive. The result is folded into
/// (−4π, 4π]. Errors if the endpoints are farther apart than [`CLOSURE_TOL`].
pub fn enclosed_solid_angle(points: &[BlochVector]) -> Result<f64> {
    if points.len() < 2 {
        return Err(domain(format!(
            "solid angle needs at least 2 samples, got {}",
            points.len()
        )));
    }
    let gap = points[0].angle_to(points.last().unwrap());
    if gap > CLOSURE_TOL {
        return Err(Error::Closure { gap, tol: CLOSURE_TOL });
    }

    // Azimuths with pole samples continued from their predecessor.
    let mut azimuths = Vec::with_capacity(points.len());
    let mut last_defined: Option<f64> = None;
    for p in points {
        let sin_theta_sq = p.x * p.x + p.y * p.y;
        if sin_theta_sq > POLE_TOL * POLE_TOL {
            let phi = p.y.atan2(p.x);
            azimuths.push(Some(phi));
            last_defined = Some(phi);
        } else {
            azimuths.push(last_defined);
        }
    }
    // Leading pole samples take the first defined azimuth (Δφ = 0 across them).
    let first_defined = match azimuths.iter().flatten().next() {
        Some(&phi) => phi,
        None => return Ok(0.0), // the whole curve sits on a pole
    };
    let azimuths: Vec<f64> = azimuths.into_iter().map(|a| a.unwrap_or(first_defined)).collect();

    let mut area = 0.0;
    for i in 0..points.len() - 1 {
        let mut dphi = azimuths[i + 1] - azimuths[i];
        dphi = wrap_pm_pi(dphi);
        let weight = 1.0 - 0.5 * (points[i].z + points[i + 1].z);
        area += weight * dphi;
    }
    Ok(fold_area(area))
}

/// Length and (for closed curves) enclosed area of a sampled curve.
pub fn curve_metrics(points: &[BlochVector]) -> Result<CurveMetrics> {
    let length = path_length(points)?;
    let gap = points[0].angle_to(points.last().unwrap());
    let closed = gap <= CLOSURE_TOL;
    let enclosed_area = if closed { Some(enclosed_solid_angle(points)?) } else { None };
    Ok(CurveMetrics { length, enclosed_area, closed })
}

/// Arc length of one arch of a spherical cycloid rolled by a circle of
/// radius `a = sin α ∈ (0, 1)`:
///
/// ```text
/// 4a cos α [1 + (1 − a²)/(2a) · ln((1 + a)/(1 − a))]
/// ```
///
/// Approaches the plane-cycloid value `8a` as `a → 0`.
pub fn cycloid_arc_length(a: f64) -> Result<f64> {
    check_radius(a)?;
    let cos_alpha = (1.0 - a * a).sqrt();
    Ok(4.0 * a * cos_alpha * (1.0 + (1.0 - a * a) / (2.0 * a) * ((1.0 + a) / (1.0 - a)).ln()))
}

/// Area between one arch of a spherical cycloid and its base line:
///
/// ```text
/// 2π a² [1 + cos²α / (1 + cos α)]
/// ```
///
/// Approaches the plane-cycloid value `3πa²` as `a → 0`.
pub fn cycloid_arc_area(a: f64) -> Result<f64> {
    check_radius(a)?;
    let cos_alpha = (1.0 - a * a).sqrt();
    Ok(2.0 * std::f64::consts::PI
        * a
        * a
        * (1.0 + cos_alpha * cos_alpha / (1.0 + cos_alpha)))
}

fn check_radius(a: f64) -> Result<()> {
    if !(a > 0.0 && a < 1.0) {
        return Err(domain(format!(
            "rolling-circle radius must lie in (0, 1), got {a} (a = 1 is the degenerate great-circle roller)"
        )));
    }
    Ok(())
}

/// `L² − A(4π − A)`; nonnegative (up to numerical slack) for every closed
/// spherical curve, zero exactly for circles.
pub fn isoperimetric_defect(length: f64, area: f64) -> Result<f64> {
    if !(length >= 0.0) {
        return Err(domain(format!("length must be >= 0, got {length}")));
    }
    let four_pi = 4.0 * std::f64::consts::PI;
    if !(0.0..=four_pi).contains(&area) {
        return Err(domain(format!("area must lie in [0, 4π], got {area}")));
    }
    Ok(length * length - area * (four_pi - area))
}

fn wrap_pm_pi(x: f64) -> f64 {
    let two_pi = 2.0 * std::f64::consts::PI;
    let mut y = x % two_pi;
    if y > std::f64::consts::PI {
        y -= two_pi;
    } else if y <= -std::f64::consts::PI {
        y += two_pi;
    }
    y
}

fn fold_area(area: f64) -> f64 {
    let four_pi = 4.0 * std::f64::consts::PI;
    let mut a = area % (2.0 * four_pi);
    if a > four_pi {
        a -= 2.0 * four_pi;
    } else if a <= -four_pi {
        a += 2.0 * four_pi;
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    fn latitude_circle(theta: f64, n: usize) -> Vec<BlochVector> {
        (0..=n)
            .map(|i| BlochVector::from_angles(theta, 2.0 * PI * i as f64 / n as f64))
            .collect()
    }

    fn meridian_path(from: f64, to: f64, n: usize) -> Vec<BlochVector> {
        (0..=n)
            .map(|i| BlochVector::from_angles(from + (to - from) * i as f64 / n as f64, 0.0))
            .collect()
    }

    #[test]
    fn geodesic_and_equator_lengths() {
        let l = path_length(&meridian_path(0.0, PI, 10_000)).unwrap();
        assert_abs_diff_eq!(l, PI, epsilon = 1e-4);
        let l = path_length(&latitude_circle(PI / 2.0, 10_000)).unwrap();
        assert_abs_diff_eq!(l, 2.0 * PI, epsilon = 1e-4);
        assert!(path_length(&meridian_path(0.0, PI, 10_000)[..1]).is_err());
    }

    #[test]
    fn length_refines_second_order() {
        let coarse = path_length(&latitude_circle(1.0, 400)).unwrap();
        let fine = path_length(&latitude_circle(1.0, 800)).unwrap();
        let exact = 2.0 * PI * 1.0_f64.sin();
        let ratio = (exact - coarse) / (exact - fine);
        assert!((3.6..=4.4).contains(&ratio), "refinement ratio {ratio}");
        assert_abs_diff_eq!(richardson(coarse, fine), exact, epsilon = 1e-9);
    }

    #[test]
    fn solid_angle_of_latitude_circles() {
        let area = enclosed_solid_angle(&latitude_circle(PI / 2.0, 20_000)).unwrap();
        assert_abs_diff_eq!(area, 2.0 * PI, epsilon = 1e-9);
        // 2π(1 − cos θ) is exact for latitude circles at any sampling
        let area = enclosed_solid_angle(&latitude_circle(PI / 3.0, 360)).unwrap();
        assert_abs_diff_eq!(area, PI, epsilon = 1e-12);
        // orientation flips the sign
        let mut reversed = latitude_circle(PI / 3.0, 360);
        reversed.reverse();
        let area = enclosed_solid_angle(&reversed).unwrap();
        assert_abs_diff_eq!(area, -PI, epsilon = 1e-12);
    }

    #[test]
    fn solid_angle_of_degenerate_point_curve() {
        let p = BlochVector::from_angles(0.7, 0.3);
        assert_abs_diff_eq!(enclosed_solid_angle(&[p; 8]).unwrap(), 0.0, epsilon = 1e-15);
        // a point curve sitting exactly on a pole
        let pole = BlochVector::new(0.0, 0.0, -1.0);
        assert_abs_diff_eq!(enclosed_solid_angle(&[pole; 8]).unwrap(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn solid_angle_rejects_open_curves() {
        let open = meridian_path(0.0, PI / 2.0, 100);
        match enclosed_solid_angle(&open) {
            Err(Error::Closure { gap, .. }) => assert!(gap > 1.0),
            other => panic!("expected closure error, got {other:?}"),
        }
    }

    #[test]
    fn great_circle_through_both_poles_bounds_a_hemisphere() {
        // meridian down at φ = 0, back up at φ = π, passing both poles
        let mut points = meridian_path(0.0, PI, 5000);
        points.extend(
            (1..=5000).map(|i| BlochVector::from_angles(PI - PI * i as f64 / 5000.0, PI)),
        );
        let area = enclosed_solid_angle(&points).unwrap();
        assert_abs_diff_eq!(area.abs(), 2.0 * PI, epsilon = 1e-6);
        let metrics = curve_metrics(&points).unwrap();
        assert!(metrics.closed);
        assert_abs_diff_eq!(metrics.length, 2.0 * PI, epsilon = 1e-6);
    }

    #[test]
    fn cycloid_closed_forms() {
        assert_abs_diff_eq!(cycloid_arc_length(0.5).unwrap(), 3.1591900339133963, epsilon = 1e-12);
        assert_abs_diff_eq!(cycloid_arc_area(0.5).unwrap(), 2.202136737652596, epsilon = 1e-12);
        assert!(cycloid_arc_length(0.0).is_err());
        assert!(cycloid_arc_length(1.0).is_err());
        assert!(cycloid_arc_area(-0.2).is_err());
    }

    #[test]
    fn cycloid_plane_limits() {
        let a = 0.01;
        let len_ratio = cycloid_arc_length(a).unwrap() / (8.0 * a);
        let area_ratio = cycloid_arc_area(a).unwrap() / (3.0 * PI * a * a);
        assert!((len_ratio - 1.0).abs() < 1e-3, "length ratio {len_ratio}");
        assert!((area_ratio - 1.0).abs() < 1e-3, "area ratio {area_ratio}");

        // both ratios approach 1 monotonically from below as a shrinks
        let grid = [0.3, 0.1, 0.03, 0.01];
        let mut prev_len = 0.0;
        let mut prev_area = 0.0;
        for &a in &grid {
            let lr = cycloid_arc_length(a).unwrap() / (8.0 * a);
            let ar = cycloid_arc_area(a).unwrap() / (3.0 * PI * a * a);
            assert!(lr > prev_len && lr < 1.0);
            assert!(ar > prev_area && ar < 1.0);
            prev_len = lr;
            prev_area = ar;
        }
    }

    #[test]
    fn isoperimetric_cases() {
        // circle: equality
        let defect = isoperimetric_defect(2.0 * PI, 2.0 * PI).unwrap();
        assert_abs_diff_eq!(defect, 0.0, epsilon = 1e-12);
        // quantum great-circle loop: L = 8 with hemisphere area
        let defect = isoperimetric_defect(8.0, 2.0 * PI).unwrap();
        assert_abs_diff_eq!(defect, 64.0 - 4.0 * PI * PI, epsilon = 1e-12);
        assert!(defect > 0.0);
        // point curve
        assert_abs_diff_eq!(isoperimetric_defect(0.0, 0.0).unwrap(), 0.0, epsilon = 1e-15);
        assert!(isoperimetric_defect(-1.0, 0.0).is_err());
        assert!(isoperimetric_defect(1.0, 13.0).is_err());
    }
}
