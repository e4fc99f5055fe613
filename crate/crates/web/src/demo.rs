use std::f64::consts::TAU;

use weakspin::calibration::{default_limit_grid, find_max_limit, scan_limits};
use weakspin::cli;
use weakspin::config::RunConfig;
use weakspin::spin::post_selection_probability;
use weakspin::Result;

#[derive(Clone, Debug, PartialEq)]
pub struct Curves {
    pub phi: Vec<f64>,
    pub re: Vec<f64>,
    pub im: Vec<f64>,
}

pub fn weak_curves(theta: f64, steps: usize) -> Result<Curves> {
    let rows = cli::weak_curves(theta, 0.0, TAU, steps)?;
    Ok(Curves {
        phi: rows.iter().map(|r| r.phi).collect(),
        re: rows.iter().map(|r| r.re).collect(),
        im: rows.iter().map(|r| r.im).collect(),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct Profiles {
    pub z_um: Vec<f64>,
    pub first_order: Vec<f64>,
    pub exact: Vec<f64>,
    pub mean_first_order_um: f64,
    pub mean_exact_um: f64,
    pub displacement_um: f64,
    pub post_selection_probability: f64,
}

/// Densities are in 1/µm so they plot on the same axis as `z_um`.
pub fn detector_profiles(
    theta: f64,
    phi: f64,
    limit: f64,
    velocity: f64,
    sigma_um: f64,
    points: usize,
) -> Result<Profiles> {
    let cfg = RunConfig {
        theta,
        phi,
        limit: Some(limit),
        beam_velocity: velocity,
        sigma: sigma_um * 1e-6,
        grid_points: points,
        ..RunConfig::default()
    };
    let sim = cli::simulate(&cfg)?;
    let per_um = |d: &[f64]| d.iter().map(|v| v * 1e-6).collect();
    Ok(Profiles {
        z_um: sim.first_order.z_grid.iter().map(|z| z * 1e6).collect(),
        first_order: per_um(&sim.first_order.density),
        exact: per_um(&sim.exact.density),
        mean_first_order_um: sim.first_order.mean * 1e6,
        mean_exact_um: sim.exact.mean * 1e6,
        displacement_um: sim.displacement * 1e6,
        post_selection_probability: post_selection_probability(theta, phi),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct Scan {
    pub limits: Vec<f64>,
    /// Displacements (sign flipped means), µm.
    pub exact_um: Vec<f64>,
    pub first_order_um: Vec<f64>,
    pub deviation: Vec<f64>,
    /// NaN when no scanned limit is within tolerance.
    pub max_limit: f64,
}

/// Limit scan in the calibration geometry at angle `theta`.
pub fn limit_scan(theta: f64, tolerance: f64) -> Result<Scan> {
    let params = RunConfig {
        theta,
        ..RunConfig::calibration_default()
    }
    .params()?;
    let scan = scan_limits(&params, &default_limit_grid())?;
    let max_limit = match find_max_limit(&params, tolerance) {
        Ok(l) => l,
        Err(weakspin::Error::NoValidLimit(_)) => f64::NAN,
        Err(e) => return Err(e),
    };
    Ok(Scan {
        exact_um: scan.mean_exact.iter().map(|m| -m * 1e6).collect(),
        first_order_um: scan.mean_first_order.iter().map(|m| -m * 1e6).collect(),
        limits: scan.limits,
        deviation: scan.deviation,
        max_limit,
    })
}
