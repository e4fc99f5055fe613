//! Gaussian centre-of-mass packets, free flight, and detector-plane densities.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::constants::HBAR;
use crate::error::{Error, Result};
use crate::propagation::ExperimentParams;
use crate::spin::{transition_amplitude, weak_value};

pub const DEFAULT_GRID_POINTS: usize = 4096;
/// Default half-span of a detector grid, in evolved widths.
pub const DEFAULT_GRID_HALF_WIDTHS: f64 = 8.0;

/// A unit-norm 1-D Gaussian, optionally displaced and carrying a transverse velocity.
///
/// At `t = 0` the amplitude is
/// `(2πσ²)^(-1/4) exp(-(z - mean)²/4σ² + i k (z - mean) + i global_phase)`
/// with `k = mass · velocity_kick / ħ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WavePacket {
    /// m
    pub sigma: f64,
    /// m
    pub mean: f64,
    /// m/s
    pub velocity_kick: f64,
    /// rad
    pub global_phase: f64,
}

pub fn initial_packet(sigma: f64) -> Result<WavePacket> {
    if !(sigma > 0.0 && sigma.is_finite()) {
        return Err(Error::NonPositiveWidth(sigma));
    }
    Ok(WavePacket {
        sigma,
        mean: 0.0,
        velocity_kick: 0.0,
        global_phase: 0.0,
    })
}

/// Width after free flight for `t` seconds: `σ √(1 + ħ²t²/4m²σ⁴)`.
pub fn spread_at(packet: &WavePacket, t: f64, mass: f64) -> f64 {
    evolved_width(packet.sigma, t, mass)
}

pub(crate) fn evolved_width(sigma: f64, t: f64, mass: f64) -> f64 {
    let tau = HBAR * t / (2.0 * mass * sigma * sigma);
    sigma * (1.0 + tau * tau).sqrt()
}

impl WavePacket {
    pub fn wavenumber(&self, mass: f64) -> f64 {
        mass * self.velocity_kick / HBAR
    }

    /// Centre of the packet after free flight for `t`.
    pub fn centre_at(&self, t: f64) -> f64 {
        self.mean + self.velocity_kick * t
    }

    /// Applies the momentum kick `e^{i dk z}` (dk in 1/m) and an extra phase.
    pub fn kicked(&self, dk: f64, phase: f64, mass: f64) -> Self {
        // e^{i dk z} = e^{i dk (z - mean)} e^{i dk mean}
        Self {
            velocity_kick: self.velocity_kick + HBAR * dk / mass,
            global_phase: self.global_phase + dk * self.mean + phase,
            ..*self
        }
    }

    /// Freely evolved amplitude at position `z` after time `t`.
    pub fn amplitude_at(&self, z: f64, t: f64, mass: f64) -> Complex64 {
        let s2 = self.sigma * self.sigma;
        let tau = HBAR * t / (2.0 * mass * s2);
        let k = self.wavenumber(mass);
        let x = z - self.mean;
        let drift = self.velocity_kick * t;
        let one_i_tau = Complex64::new(1.0, tau);
        let envelope = -(x - drift) * (x - drift) / (4.0 * s2 * one_i_tau);
        let phase = Complex64::new(0.0, k * (x - 0.5 * drift) + self.global_phase);
        (2.0 * PI * s2).powf(-0.25) / one_i_tau.sqrt() * (envelope + phase).exp()
    }

    /// `⟨self|other⟩`, time independent under free flight. Both packets must share `sigma`.
    pub fn overlap(&self, other: &WavePacket, mass: f64) -> Complex64 {
        debug_assert!((self.sigma - other.sigma).abs() <= 1e-12 * self.sigma);
        let s2 = self.sigma * self.sigma;
        let (k1, k2) = (self.wavenumber(mass), other.wavenumber(mass));
        let dk = k2 - k1;
        let da = self.mean - other.mean;
        let c = 0.5 * (self.mean + other.mean);
        let re = -da * da / (8.0 * s2) - 0.5 * dk * dk * s2;
        let im = dk * c - k2 * other.mean + k1 * self.mean + other.global_phase - self.global_phase;
        Complex64::new(re, im).exp()
    }
}

/// Trapezoidal rule on a (possibly non-uniform) grid.
pub fn trapezoid(z: &[f64], f: &[f64]) -> f64 {
    z.windows(2)
        .zip(f.windows(2))
        .map(|(zw, fw)| 0.5 * (zw[1] - zw[0]) * (fw[0] + fw[1]))
        .sum()
}

pub fn uniform_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let step = (hi - lo) / (n.max(2) - 1) as f64;
    (0..n).map(|i| lo + step * i as f64).collect()
}

fn check_grid(z: &[f64]) -> Result<()> {
    if z.len() < 3 || z.iter().any(|v| !v.is_finite()) || z.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::EmptyGrid);
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Moments {
    /// m
    pub mean: f64,
    /// m
    pub rms: f64,
    pub weight: f64,
}

/// Sampled detector density `|Ψ_D(z, t)|²` and its moments.
#[derive(Clone, Debug, PartialEq)]
pub struct DetectorProfile {
    /// m
    pub z_grid: Vec<f64>,
    /// 1/m
    pub density: Vec<f64>,
    /// m
    pub mean: f64,
    /// m
    pub rms_width: f64,
    /// 1/m
    pub peak: f64,
    pub total_weight: f64,
    /// Validity limit of the parameters that produced the profile, when defined.
    pub limit: Option<f64>,
}

impl DetectorProfile {
    pub fn new(z_grid: Vec<f64>, density: Vec<f64>) -> Result<Self> {
        check_grid(&z_grid)?;
        if density.len() != z_grid.len() {
            return Err(Error::InvalidParams(
                "density and grid lengths differ".into(),
            ));
        }
        let m = moments(&z_grid, &density);
        let peak = density.iter().copied().fold(0.0, f64::max);
        Ok(Self {
            z_grid,
            density,
            mean: m.mean,
            rms_width: m.rms,
            peak,
            total_weight: m.weight,
            limit: None,
        })
    }
}

fn moments(z: &[f64], density: &[f64]) -> Moments {
    let weight = trapezoid(z, density);
    let first: Vec<f64> = z.iter().zip(density).map(|(z, d)| z * d).collect();
    let mean = trapezoid(z, &first) / weight;
    let second: Vec<f64> = z
        .iter()
        .zip(density)
        .map(|(z, d)| (z - mean).powi(2) * d)
        .collect();
    let rms = (trapezoid(z, &second) / weight).sqrt();
    Moments { mean, rms, weight }
}

/// Trapezoidal weight, mean and rms width. Mean and rms are NaN for a zero-weight profile.
pub fn profile_moments(profile: &DetectorProfile) -> Result<Moments> {
    check_grid(&profile.z_grid)?;
    Ok(moments(&profile.z_grid, &profile.density))
}

/// Closed-form mean and weight of the first-order detector density.
///
/// Completing the square in the exponent: with shift `a = u t Re W`,
/// `c = 2 Im W µΔt ∂B/∂z / ħ` and evolved width `s`, the mean is `-a + c s²`
/// and the weight `|⟨f|i⟩|² exp(2 Im W µΔt B0/ħ - c a + c² s²/2)`.
pub fn first_order_closed_form(params: &ExperimentParams) -> Result<Moments> {
    let w = weak_value(params.theta, params.phi)?;
    let prob = transition_amplitude(params.theta, params.phi).norm_sqr();
    let t = params.flight_time();
    let s = evolved_width(params.sigma, t, params.mass);
    let a = params.transverse_velocity() * t * w.re();
    let c = 2.0 * w.im() * params.phase_gradient();
    let c0 = 2.0 * w.im() * params.homogeneous_phase();
    Ok(Moments {
        mean: -a + c * s * s,
        rms: s,
        weight: prob * (c0 - c * a + 0.5 * c * c * s * s).exp(),
    })
}

/// Grid of `points` samples spanning `half_widths` evolved widths around the first-order mean.
pub fn first_order_grid(
    params: &ExperimentParams,
    points: usize,
    half_widths: f64,
) -> Result<Vec<f64>> {
    let m = first_order_closed_form(params)?;
    Ok(uniform_grid(
        m.mean - half_widths * m.rms,
        m.mean + half_widths * m.rms,
        points,
    ))
}

/// First-order (weak-value) detector density on `z_grid`:
///
/// ```text
/// |⟨f|i⟩|² (2π s²)^(-1/2) exp[-(z + u t Re W)²/2s² + 2 Im W µΔt B_z(z)/ħ]
/// ```
///
/// with `B_z(z) = B0 + (∂B/∂z) z` and `s` the evolved width.
pub fn first_order_detector_density(
    params: &ExperimentParams,
    z_grid: &[f64],
) -> Result<DetectorProfile> {
    params.validate()?;
    check_grid(z_grid)?;
    let w = weak_value(params.theta, params.phi)?;
    let prob = transition_amplitude(params.theta, params.phi).norm_sqr();
    let t = params.flight_time();
    let s = evolved_width(params.sigma, t, params.mass);
    let shift = params.transverse_velocity() * t * w.re();
    let norm = prob / (2.0 * PI * s * s).sqrt();
    let density = z_grid
        .iter()
        .map(|&z| {
            let g = -(z + shift).powi(2) / (2.0 * s * s);
            norm * (g + 2.0 * w.im() * params.phase_at(z)).exp()
        })
        .collect();
    let mut profile = DetectorProfile::new(z_grid.to_vec(), density)?;
    profile.limit = crate::calibration::limit_of(params).ok();
    Ok(profile)
}
