//! Closed-form experiment planning at a fixed validity limit.
//!
//! The displacement at the detector can be written two ways,
//! `Δw = µ (∂B/∂z) Δt t / m · tan(θ/2) = ħ t L / (σ m)`,
//! so at fixed `L` it depends only on flight time, beam width and mass.

use std::f64::consts::PI;

use crate::calibration::{gradient_for_limit_with_moment, limit_of};
use crate::constants::HBAR;
use crate::error::{Error, Result};
use crate::propagation::{check_inequalities, ExperimentParams, DEFAULT_INEQUALITY_THRESHOLD};
use crate::spin::post_selection_probability;
use crate::wavepacket::evolved_width;

/// Spatial resolution assumed for the detector, m. A typical MCP figure, not a measured one.
pub const DEFAULT_DETECTOR_PITCH: f64 = 25e-6;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PlanResult {
    /// m/s
    pub beam_velocity: f64,
    /// s
    pub flight_time: f64,
    /// Δw, m
    pub displacement: f64,
    pub limit: f64,
    /// m
    pub evolved_width: f64,
    /// Peak of the first-order detector density, 1/m.
    pub peak_density: f64,
    pub post_selection_probability: f64,
    pub resolvable: bool,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Resolvability {
    pub resolvable: bool,
    /// `Δw / pitch`
    pub margin: f64,
}

fn check_positive(value: f64, name: &'static str) -> Result<()> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(Error::NonPositiveInputs(name))
    }
}

/// `Δw = ħ (d/v) L / (σ m)`
pub fn displacement(params: &ExperimentParams, limit: f64) -> Result<f64> {
    if !(limit >= 0.0) {
        return Err(Error::NonPositiveInputs("limit"));
    }
    check_positive(params.sigma, "sigma")?;
    check_positive(params.beam_velocity, "beam_velocity")?;
    check_positive(params.mass, "mass")?;
    Ok(HBAR * params.flight_time() * limit / (params.sigma * params.mass))
}

/// `(field form, limit form)` of the displacement, with the limit taken from the same
/// parameters and the homogeneous field neglected.
pub fn displacement_two_ways(params: &ExperimentParams) -> Result<(f64, f64)> {
    let tan = (0.5 * params.theta).tan();
    if (0.5 * params.theta).cos().abs() < 1e-12 {
        return Err(Error::TanPole(params.theta));
    }
    let t = params.flight_time();
    let field_form = params.moment * params.dbdz * params.delta_t * t / params.mass * tan;
    let limit = limit_of(&ExperimentParams { b0: 0.0, ..*params })?;
    let limit_form = HBAR * t * limit / (params.sigma * params.mass);
    Ok((field_form, limit_form))
}

pub fn resolvability(displacement: f64, detector_pitch: f64) -> Result<Resolvability> {
    check_positive(detector_pitch, "detector_pitch")?;
    let margin = displacement / detector_pitch;
    Ok(Resolvability {
        resolvable: margin >= 1.0,
        margin,
    })
}

/// Full plan for one parameter set held at `limit`.
pub fn plan(params: &ExperimentParams, limit: f64, detector_pitch: f64) -> Result<PlanResult> {
    params.validate()?;
    let displacement = displacement(params, limit)?;
    let t = params.flight_time();
    let width = evolved_width(params.sigma, t, params.mass);
    let prob = post_selection_probability(params.theta, params.phi);
    Ok(PlanResult {
        beam_velocity: params.beam_velocity,
        flight_time: t,
        displacement,
        limit,
        evolved_width: width,
        peak_density: prob / ((2.0 * PI).sqrt() * width),
        post_selection_probability: prob,
        resolvable: resolvability(displacement, detector_pitch)?.resolvable,
    })
}

/// One plan per velocity at fixed `limit`. `Δw ∝ 1/v`.
pub fn velocity_sweep(
    params: &ExperimentParams,
    velocities: &[f64],
    limit: f64,
    detector_pitch: f64,
) -> Result<Vec<PlanResult>> {
    velocities
        .iter()
        .map(|&v| {
            plan(
                &ExperimentParams {
                    beam_velocity: v,
                    ..*params
                },
                limit,
                detector_pitch,
            )
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThetaRow {
    pub theta: f64,
    /// T/m
    pub dbdz: f64,
    pub limit: f64,
    /// m
    pub displacement: f64,
    pub weak_value_re: f64,
    pub post_selection_probability: f64,
    /// All validity inequalities hold at the default threshold.
    pub first_order_valid: bool,
}

/// Sweeps the pre-selection angle. With `hold_limit_fixed` the gradient is re-solved
/// per angle so `L` stays at its base value; otherwise the field is held and `L` follows
/// `tan(θ/2)`.
pub fn theta_sweep(
    params: &ExperimentParams,
    thetas: &[f64],
    hold_limit_fixed: bool,
) -> Result<Vec<ThetaRow>> {
    let base_limit = limit_of(&ExperimentParams { b0: 0.0, ..*params })?;
    thetas
        .iter()
        .map(|&theta| {
            if !(theta > 0.0 && theta < PI) {
                return Err(Error::TanPole(theta));
            }
            let mut p = ExperimentParams { theta, ..*params };
            if hold_limit_fixed {
                p.dbdz = gradient_for_limit_with_moment(
                    base_limit, theta, p.sigma, p.delta_t, p.moment,
                )?;
            }
            let (field_form, _) = displacement_two_ways(&p)?;
            let limit = limit_of(&ExperimentParams { b0: 0.0, ..p })?;
            let report = check_inequalities(&p, 4, DEFAULT_INEQUALITY_THRESHOLD)?;
            Ok(ThetaRow {
                theta,
                dbdz: p.dbdz,
                limit,
                displacement: field_form,
                weak_value_re: crate::spin::weak_value(theta, p.phi)?.re(),
                post_selection_probability: post_selection_probability(theta, p.phi),
                first_order_valid: report.all_hold(),
            })
        })
        .collect()
}
