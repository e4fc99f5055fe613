//! Validity limit of the first-order approximation and its calibration against
//! the exact three-component evolution.

use crate::constants::{constants, HBAR};
use crate::error::{Error, Result};
use crate::propagation::{exact_detector_density, exact_grid, ExperimentParams};
use crate::wavepacket::{
    first_order_detector_density, first_order_grid, DEFAULT_GRID_HALF_WIDTHS, DEFAULT_GRID_POINTS,
};

/// Relative mean deviation below which the exact and first-order detector
/// distributions are taken to coincide. Frozen from the θ = 2.9 scan, where the
/// deviation is 0.0347 at L = 0.37 and 0.0366 at L = 0.38.
pub const DEFAULT_DEVIATION_TOLERANCE: f64 = 0.035;
/// Pre-selection angle of the calibration scans.
pub const CALIBRATION_THETA: f64 = 2.9;
pub const SCAN_STEP: f64 = 0.01;
pub const SCAN_MAX: f64 = 1.5;

fn half_angle_tan(theta: f64) -> Result<f64> {
    let half = 0.5 * theta;
    if half.cos().abs() < 1e-12 {
        return Err(Error::TanPole(theta));
    }
    Ok(half.tan())
}

/// `L = µΔt (B0 + (∂B/∂z) σ) / ħ · tan(θ/2)`
pub fn limit_of(params: &ExperimentParams) -> Result<f64> {
    let tan = half_angle_tan(params.theta)?;
    Ok(params.phase_at(params.sigma) * tan)
}

/// Gradient that sets the limit (homogeneous field neglected) to `limit` for metastable helium.
pub fn gradient_for_limit(limit: f64, theta: f64, sigma: f64, delta_t: f64) -> Result<f64> {
    gradient_for_limit_with_moment(
        limit,
        theta,
        sigma,
        delta_t,
        constants().metastable_he_moment,
    )
}

pub fn gradient_for_limit_with_moment(
    limit: f64,
    theta: f64,
    sigma: f64,
    delta_t: f64,
    moment: f64,
) -> Result<f64> {
    if !(limit > 0.0) {
        return Err(Error::NonPositiveInputs("limit"));
    }
    if !(sigma > 0.0) {
        return Err(Error::NonPositiveInputs("sigma"));
    }
    if !(delta_t > 0.0) {
        return Err(Error::NonPositiveInputs("delta_t"));
    }
    if !(moment > 0.0) {
        return Err(Error::NonPositiveInputs("moment"));
    }
    let tan = half_angle_tan(theta)?;
    if !(tan > 0.0) || theta >= std::f64::consts::PI {
        return Err(Error::NonPositiveInputs("theta must lie in (0, pi)"));
    }
    Ok(limit * HBAR / (moment * delta_t * sigma * tan))
}

/// Exact and first-order detector means over a set of limits.
#[derive(Clone, Debug, PartialEq)]
pub struct LimitScan {
    pub limits: Vec<f64>,
    /// m
    pub mean_exact: Vec<f64>,
    /// m
    pub mean_first_order: Vec<f64>,
    /// `|mean_exact - mean_first_order| / |mean_first_order|`
    pub deviation: Vec<f64>,
}

impl LimitScan {
    pub fn len(&self) -> usize {
        self.limits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.limits.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LimitPoint {
    pub limit: f64,
    pub mean_exact: f64,
    pub mean_first_order: f64,
    pub deviation: f64,
}

/// Sets the gradient for `limit` (all else held) and compares the two detector means.
pub fn compare_at_limit(base: &ExperimentParams, limit: f64) -> Result<LimitPoint> {
    let params = base.with_limit(limit)?;
    let exact = exact_detector_density(
        &params,
        &exact_grid(&params, DEFAULT_GRID_POINTS, DEFAULT_GRID_HALF_WIDTHS),
    )?;
    let first = first_order_detector_density(
        &params,
        &first_order_grid(&params, DEFAULT_GRID_POINTS, DEFAULT_GRID_HALF_WIDTHS)?,
    )?;
    Ok(LimitPoint {
        limit,
        mean_exact: exact.mean,
        mean_first_order: first.mean,
        deviation: (exact.mean - first.mean).abs() / first.mean.abs(),
    })
}

/// `0.01, 0.02, ..., 1.50`
pub fn default_limit_grid() -> Vec<f64> {
    let n = (SCAN_MAX / SCAN_STEP).round() as usize;
    (1..=n).map(|k| k as f64 * SCAN_STEP).collect()
}

pub fn scan_limits(base: &ExperimentParams, limit_grid: &[f64]) -> Result<LimitScan> {
    if limit_grid.is_empty() {
        return Err(Error::InvalidParams("empty limit grid".into()));
    }
    if limit_grid[0] <= 0.0 || limit_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidParams(
            "limit grid must be positive and strictly increasing".into(),
        ));
    }
    let mut scan = LimitScan {
        limits: Vec::with_capacity(limit_grid.len()),
        mean_exact: Vec::with_capacity(limit_grid.len()),
        mean_first_order: Vec::with_capacity(limit_grid.len()),
        deviation: Vec::with_capacity(limit_grid.len()),
    };
    for &limit in limit_grid {
        let p = compare_at_limit(base, limit)?;
        scan.limits.push(p.limit);
        scan.mean_exact.push(p.mean_exact);
        scan.mean_first_order.push(p.mean_first_order);
        scan.deviation.push(p.deviation);
    }
    Ok(scan)
}

/// Largest limit on the default scan grid whose relative mean deviation stays within
/// `tolerance`, found by bisection over the grid (resolution 0.01).
pub fn find_max_limit(base: &ExperimentParams, tolerance: f64) -> Result<f64> {
    find_max_limit_on(base, tolerance, &default_limit_grid())
}

pub fn find_max_limit_on(base: &ExperimentParams, tolerance: f64, grid: &[f64]) -> Result<f64> {
    if !(tolerance > 0.0 && tolerance < 1.0) {
        return Err(Error::InvalidParams(format!(
            "tolerance {tolerance} outside (0, 1)"
        )));
    }
    if grid.is_empty() {
        return Err(Error::InvalidParams("empty limit grid".into()));
    }
    let within =
        |i: usize| -> Result<bool> { Ok(compare_at_limit(base, grid[i])?.deviation <= tolerance) };
    if !within(0)? {
        return Err(Error::NoValidLimit(tolerance));
    }
    let last = grid.len() - 1;
    if within(last)? {
        return Ok(grid[last]);
    }
    let (mut lo, mut hi) = (0, last);
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if within(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(grid[lo])
}

#[cfg(test)]
mod tests {
    use std::f64::consts::{FRAC_PI_2, PI};

    use super::*;

    fn geometry() -> ExperimentParams {
        ExperimentParams::calibration_geometry()
    }

    #[test]
    fn limit_examples() {
        let zero = ExperimentParams {
            dbdz: 0.0,
            b0: 0.0,
            ..geometry()
        };
        assert_eq!(limit_of(&zero).unwrap(), 0.0);

        let p = geometry().with_limit(0.37).unwrap();
        assert!((limit_of(&p).unwrap() - 0.37).abs() < 1e-12);

        let q = ExperimentParams {
            theta: FRAC_PI_2,
            dbdz: 3.0,
            ..geometry()
        };
        let expected = q.moment * q.delta_t * q.dbdz * q.sigma / HBAR;
        assert!((limit_of(&q).unwrap() - expected).abs() < 1e-12 * expected);

        assert!(matches!(
            limit_of(&ExperimentParams { theta: PI, ..q }),
            Err(Error::TanPole(_))
        ));
    }

    #[test]
    fn homogeneous_field_enters_limit() {
        let p = ExperimentParams {
            b0: 1e-6,
            ..geometry().with_limit(0.2).unwrap()
        };
        let extra = p.moment * p.delta_t * p.b0 / HBAR * (p.theta / 2.0).tan();
        assert!((limit_of(&p).unwrap() - 0.2 - extra).abs() < 1e-12);
    }

    #[test]
    fn gradient_examples() {
        let dt = 0.01 / 1750.0;
        let g = gradient_for_limit(0.37, 2.9, 1e-6, dt).unwrap();
        let p = ExperimentParams {
            theta: 2.9,
            sigma: 1e-6,
            delta_t: dt,
            dbdz: g,
            ..geometry()
        };
        assert!((limit_of(&p).unwrap() - 0.37).abs() < 1e-12);
        // µΔt/ħ · σ tan(1.45) · g = 0.37
        let direct =
            0.37 * HBAR / (2.0 * crate::constants::BOHR_MAGNETON * dt * 1e-6 * 1.45f64.tan());
        assert!((g - direct).abs() / direct < 1e-12);

        assert_eq!(
            gradient_for_limit(0.0, 2.9, 1e-6, dt),
            Err(Error::NonPositiveInputs("limit"))
        );
        assert!(gradient_for_limit(0.3, PI, 1e-6, dt).is_err());
        assert!(gradient_for_limit(0.3, 0.0, 1e-6, dt).is_err());
        assert!(gradient_for_limit(0.3, 1.0, -1e-6, dt).is_err());
    }

    #[test]
    fn scan_examples() {
        let scan = scan_limits(&geometry(), &[0.05, 1.0]).unwrap();
        assert!(scan.deviation[0] < 0.02);
        assert!(scan.deviation[1] > 0.2);
        // exact displacement lags behind first order
        assert!(scan.mean_exact[1].abs() < scan.mean_first_order[1].abs());
        assert!(scan_limits(&geometry(), &[]).is_err());
        assert!(scan_limits(&geometry(), &[0.2, 0.1]).is_err());
    }

    #[test]
    fn default_grid_shape() {
        let g = default_limit_grid();
        assert_eq!(g.len(), 150);
        assert!((g[0] - 0.01).abs() < 1e-15);
        assert!((g[149] - 1.5).abs() < 1e-12);
    }

    #[test]
    fn max_limit_tolerance_behaviour() {
        let base = geometry();
        let tight = find_max_limit(&base, 1e-4).unwrap();
        assert!(tight <= 0.03, "{tight}");
        let loose = find_max_limit(&base, 0.5).unwrap();
        assert!(loose > 0.37);
        assert!(matches!(
            find_max_limit(&base, 1e-7),
            Err(Error::NoValidLimit(_))
        ));
        assert!(find_max_limit(&base, 0.0).is_err());
        assert!(find_max_limit(&base, 1.0).is_err());
    }
}
