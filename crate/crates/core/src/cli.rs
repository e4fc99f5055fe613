//! Command implementations behind the `weakspin` binary. Each command builds its
//! table and writes CSV with a `#`-prefixed metadata header; all values are SI.

use std::f64::consts::TAU;
use std::io::Write;

use crate::calibration::{default_limit_grid, find_max_limit, limit_of, scan_limits, LimitScan};
use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::planner::{self, PlanResult, Resolvability};
use crate::propagation::{exact_detector_density, exact_grid};
use crate::spin::weak_value;
use crate::wavepacket::{
    first_order_closed_form, first_order_detector_density, uniform_grid, DetectorProfile,
};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WeakCurveRow {
    pub phi: f64,
    pub re: f64,
    pub im: f64,
}

/// Weak value along a φ sweep at fixed θ. Points with orthogonal pre/post selection
/// are reported as NaN.
pub fn weak_curves(
    theta: f64,
    phi_min: f64,
    phi_max: f64,
    steps: usize,
) -> Result<Vec<WeakCurveRow>> {
    if steps < 2 {
        return Err(Error::InvalidParams("steps must be >= 2".into()));
    }
    if !(phi_min.is_finite() && phi_max.is_finite() && phi_max > phi_min && theta.is_finite()) {
        return Err(Error::InvalidParams(
            "phi range must be finite with phi_max > phi_min".into(),
        ));
    }
    Ok(uniform_grid(phi_min, phi_max, steps)
        .into_iter()
        .map(|phi| match weak_value(theta, phi) {
            Ok(w) => WeakCurveRow {
                phi,
                re: w.re(),
                im: w.im(),
            },
            Err(_) => WeakCurveRow {
                phi,
                re: f64::NAN,
                im: f64::NAN,
            },
        })
        .collect())
}

pub fn write_weak_curves(
    w: &mut impl Write,
    theta: f64,
    rows: &[WeakCurveRow],
) -> std::io::Result<()> {
    writeln!(w, "# command = weak-curves")?;
    writeln!(w, "# theta = {theta} [rad]")?;
    writeln!(
        w,
        "# units: phi [rad], W_Re and W_Im dimensionless (spin units)"
    )?;
    writeln!(w, "phi,W_Re,W_Im")?;
    for r in rows {
        writeln!(w, "{},{},{}", r.phi, r.re, r.im)?;
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq)]
pub struct Simulation {
    pub limit: f64,
    /// Δw from the limit form, m
    pub displacement: f64,
    pub first_order: DetectorProfile,
    pub exact: DetectorProfile,
}

/// First-order and exact detector densities on a shared grid.
pub fn simulate(cfg: &RunConfig) -> Result<Simulation> {
    let params = cfg.params()?;
    let limit = limit_of(&params)?;
    let fo = first_order_closed_form(&params)?;
    let exact_span = exact_grid(&params, 2, cfg.grid_half_widths);
    let lo = exact_span[0].min(fo.mean - cfg.grid_half_widths * fo.rms);
    let hi = exact_span[1].max(fo.mean + cfg.grid_half_widths * fo.rms);
    let grid = uniform_grid(lo, hi, cfg.grid_points);
    Ok(Simulation {
        limit,
        displacement: planner::displacement(&params, limit.abs())?,
        first_order: first_order_detector_density(&params, &grid)?,
        exact: exact_detector_density(&params, &grid)?,
    })
}

pub fn write_simulation(
    w: &mut impl Write,
    cfg: &RunConfig,
    sim: &Simulation,
) -> std::io::Result<()> {
    writeln!(w, "# command = simulate")?;
    writeln!(w, "# theta = {} [rad]", cfg.theta)?;
    writeln!(w, "# phi = {} [rad]", cfg.phi)?;
    writeln!(w, "# beam_velocity = {} [m/s]", cfg.beam_velocity)?;
    writeln!(w, "# limit = {}", sim.limit)?;
    writeln!(w, "# displacement = {} [m]", sim.displacement)?;
    writeln!(w, "# weight_first_order = {}", sim.first_order.total_weight)?;
    writeln!(w, "# weight_exact = {}", sim.exact.total_weight)?;
    writeln!(w, "# mean_first_order = {} [m]", sim.first_order.mean)?;
    writeln!(w, "# mean_exact = {} [m]", sim.exact.mean)?;
    writeln!(w, "# units: z [m], densities [1/m]")?;
    writeln!(w, "z,density_first_order,density_exact")?;
    for ((z, a), b) in sim
        .first_order
        .z_grid
        .iter()
        .zip(&sim.first_order.density)
        .zip(&sim.exact.density)
    {
        writeln!(w, "{z},{a},{b}")?;
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq)]
pub struct Calibration {
    pub tolerance: f64,
    pub scan: LimitScan,
    pub max_limit: f64,
}

pub fn calibrate(cfg: &RunConfig, tolerance: f64) -> Result<Calibration> {
    let params = cfg.params()?;
    let max_limit = find_max_limit(&params, tolerance)?;
    let scan = scan_limits(&params, &default_limit_grid())?;
    Ok(Calibration {
        tolerance,
        scan,
        max_limit,
    })
}

pub fn write_calibration(
    w: &mut impl Write,
    cfg: &RunConfig,
    cal: &Calibration,
) -> std::io::Result<()> {
    writeln!(w, "# command = calibrate")?;
    writeln!(w, "# theta = {} [rad]", cfg.theta)?;
    writeln!(w, "# sigma = {} [m]", cfg.sigma)?;
    writeln!(w, "# beam_velocity = {} [m/s]", cfg.beam_velocity)?;
    writeln!(w, "# flight_distance = {} [m]", cfg.flight_distance)?;
    writeln!(w, "# tolerance = {}", cal.tolerance)?;
    writeln!(w, "# max_limit = {}", cal.max_limit)?;
    writeln!(w, "# units: means [m], deviation relative")?;
    writeln!(w, "limit,mean_exact,mean_first_order,deviation")?;
    let s = &cal.scan;
    for i in 0..s.len() {
        writeln!(
            w,
            "{},{},{},{}",
            s.limits[i], s.mean_exact[i], s.mean_first_order[i], s.deviation[i]
        )?;
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq)]
pub struct PlanReport {
    pub plan: PlanResult,
    pub resolvability: Resolvability,
    pub sweep: Vec<PlanResult>,
}

pub fn plan(cfg: &RunConfig) -> Result<PlanReport> {
    let params = cfg.params()?;
    let limit = limit_of(&params)?;
    let plan = planner::plan(&params, limit, cfg.detector_pitch)?;
    let resolvability = planner::resolvability(plan.displacement, cfg.detector_pitch)?;
    if cfg.velocities.iter().any(|v| !(*v > 0.0)) {
        return Err(Error::NonPositiveInputs("velocities"));
    }
    let sweep = planner::velocity_sweep(&params, &cfg.velocities, limit, cfg.detector_pitch)?;
    Ok(PlanReport {
        plan,
        resolvability,
        sweep,
    })
}

pub fn write_plan(w: &mut impl Write, cfg: &RunConfig, report: &PlanReport) -> std::io::Result<()> {
    let p = &report.plan;
    writeln!(w, "# command = plan")?;
    writeln!(w, "# beam_velocity = {} [m/s]", p.beam_velocity)?;
    writeln!(w, "# flight_time = {} [s]", p.flight_time)?;
    writeln!(w, "# limit = {}", p.limit)?;
    writeln!(w, "# displacement = {} [m]", p.displacement)?;
    writeln!(w, "# evolved_width = {} [m]", p.evolved_width)?;
    writeln!(
        w,
        "# post_selection_probability = {}",
        p.post_selection_probability
    )?;
    writeln!(w, "# detector_pitch = {} [m]", cfg.detector_pitch)?;
    writeln!(w, "# resolvable = {}", report.resolvability.resolvable)?;
    writeln!(w, "# margin = {}", report.resolvability.margin)?;
    writeln!(
        w,
        "# units: velocity [m/s], displacement and width [m], peak_density [1/m]"
    )?;
    writeln!(
        w,
        "velocity,displacement,evolved_width,peak_density,resolvable"
    )?;
    for r in &report.sweep {
        writeln!(
            w,
            "{},{},{},{},{}",
            r.beam_velocity, r.displacement, r.evolved_width, r.peak_density, r.resolvable
        )?;
    }
    Ok(())
}

/// Default φ sweep of the weak-value curves.
pub const DEFAULT_PHI_RANGE: (f64, f64) = (0.0, TAU);
pub const DEFAULT_STEPS: usize = 629;
