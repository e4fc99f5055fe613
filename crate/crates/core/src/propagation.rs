//! Weak-stage interaction in the impulsive approximation, post-selection, and the
//! exact three-component detector density.
//!
//! Inside the weak magnet each `s_z` component `m` picks up
//! `exp(-i m µΔt (B0 + ∂B/∂z z) / ħ)`: a momentum kick `-m µΔt ∂B/∂z` and a
//! constant phase. Spatial evolution during `Δt` is neglected. After post-selection
//! every term is still a Gaussian, so free flight to the detector is analytic.

use num_complex::Complex64;

use crate::constants::{constants, HBAR};
use crate::error::{Error, Result};
use crate::spin::{
    inner, make_spinor, matrix_element, post_selector, SpinMatrices, Spinor3, ORTHOGONALITY_EPS,
};
use crate::wavepacket::{evolved_width, initial_packet, uniform_grid, DetectorProfile, WavePacket};

/// Default reading of "much less than" in the validity inequalities.
pub const DEFAULT_INEQUALITY_THRESHOLD: f64 = 0.1;
/// Largest fraction of the weight allowed outside an exact-density grid.
pub const MAX_OUTSIDE_WEIGHT: f64 = 1e-6;

/// All physical knobs of one run, in SI units.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExperimentParams {
    /// Pre-selection polar angle, rad.
    pub theta: f64,
    /// Pre-selection azimuth, rad.
    pub phi: f64,
    /// Homogeneous field of the weak magnet, T.
    pub b0: f64,
    /// Field gradient of the weak magnet, T/m.
    pub dbdz: f64,
    /// Time spent in the weak field, s.
    pub delta_t: f64,
    /// Beam width before the weak stage, m.
    pub sigma: f64,
    /// Free flight from weak-stage exit to detector, m.
    pub flight_distance: f64,
    /// m/s
    pub beam_velocity: f64,
    /// kg
    pub mass: f64,
    /// Magnetic moment, J/T.
    pub moment: f64,
}

/// Length of the weak magnet, m.
pub const MAGNET_LENGTH: f64 = 0.01;

impl Default for ExperimentParams {
    /// Final-experiment settings: v = 1717 m/s, d = 2.5 m, σ = 0.5 µm, φ = 0,
    /// θ = 2.9 rad, with the gradient chosen so the validity limit is 0.37.
    fn default() -> Self {
        let c = constants();
        let v = 1717.0;
        let p = Self {
            theta: 2.9,
            phi: 0.0,
            b0: 0.0,
            dbdz: 0.0,
            delta_t: MAGNET_LENGTH / v,
            sigma: 0.5e-6,
            flight_distance: 2.5,
            beam_velocity: v,
            mass: c.helium4_mass,
            moment: c.metastable_he_moment,
        };
        p.with_limit(0.37).expect("default parameters are valid")
    }
}

impl ExperimentParams {
    /// Geometry of the limit calibration: σ = 1 µm, 10 mm magnet, 2.5 m flight at 1750 m/s.
    /// The gradient is left at zero.
    pub fn calibration_geometry() -> Self {
        let v = 1750.0;
        Self {
            sigma: 1e-6,
            beam_velocity: v,
            delta_t: MAGNET_LENGTH / v,
            flight_distance: 2.5,
            dbdz: 0.0,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [
            self.theta,
            self.phi,
            self.b0,
            self.dbdz,
            self.delta_t,
            self.sigma,
            self.flight_distance,
            self.beam_velocity,
            self.mass,
            self.moment,
        ]
        .iter()
        .all(|v| v.is_finite());
        if !finite {
            return Err(Error::InvalidParams("non-finite value".into()));
        }
        if self.sigma <= 0.0 {
            return Err(Error::NonPositiveWidth(self.sigma));
        }
        // delta_t usually derives from it
        if self.beam_velocity <= 0.0 {
            return Err(Error::NonPositiveInputs("beam_velocity"));
        }
        if self.delta_t < 0.0 {
            return Err(Error::InvalidParams("delta_t must be >= 0".into()));
        }
        if self.flight_distance < 0.0 {
            return Err(Error::InvalidParams("flight_distance must be >= 0".into()));
        }
        if self.mass <= 0.0 {
            return Err(Error::NonPositiveInputs("mass"));
        }
        Ok(())
    }

    /// Flight time to the detector, `d / v`.
    pub fn flight_time(&self) -> f64 {
        self.flight_distance / self.beam_velocity
    }

    /// Transverse velocity of the `m = -1` component, `u = µ (∂B/∂z) Δt / m`.
    pub fn transverse_velocity(&self) -> f64 {
        self.moment * self.dbdz * self.delta_t / self.mass
    }

    /// `µΔt (∂B/∂z) / ħ`, in 1/m.
    pub fn phase_gradient(&self) -> f64 {
        self.moment * self.delta_t * self.dbdz / HBAR
    }

    /// `µΔt B0 / ħ`
    pub fn homogeneous_phase(&self) -> f64 {
        self.moment * self.delta_t * self.b0 / HBAR
    }

    /// `µΔt B_z(z) / ħ` with `B_z = B0 + (∂B/∂z) z`.
    pub fn phase_at(&self, z: f64) -> f64 {
        self.homogeneous_phase() + self.phase_gradient() * z
    }

    /// Same parameters with `∂B/∂z` chosen so the limit (homogeneous field neglected) equals `limit`.
    pub fn with_limit(&self, limit: f64) -> Result<Self> {
        let dbdz = crate::calibration::gradient_for_limit_with_moment(
            limit,
            self.theta,
            self.sigma,
            self.delta_t,
            self.moment,
        )?;
        Ok(Self { dbdz, ..*self })
    }

    pub fn pre_selection(&self) -> Spinor3 {
        make_spinor(self.theta, self.phi)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpinComponent {
    /// `s_z` eigenvalue, one of +1, 0, -1.
    pub m: i8,
    pub weight: Complex64,
    pub packet: WavePacket,
}

/// Spin-1 wave function as three Gaussian components with complex weights.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpinorPacket {
    pub components: [SpinComponent; 3],
}

impl SpinorPacket {
    /// `ψ(z) ξ`: the same spatial packet on every component.
    pub fn new(packet: WavePacket, spinor: &Spinor3) -> Self {
        let [cp, c0, cm] = spinor.components();
        let comp = |m, weight| SpinComponent { m, weight, packet };
        Self {
            components: [comp(1, cp), comp(0, c0), comp(-1, cm)],
        }
    }

    /// Initial state of a run: Gaussian of width σ times the pre-selected spinor.
    pub fn initial(params: &ExperimentParams) -> Result<Self> {
        Ok(Self::new(
            initial_packet(params.sigma)?,
            &params.pre_selection(),
        ))
    }

    /// Total norm; components are orthogonal in spin so cross terms vanish.
    pub fn norm(&self) -> f64 {
        self.components.iter().map(|c| c.weight.norm_sqr()).sum()
    }
}

/// Applies `exp(-i µΔt B_z(z) s_z / ħ)` to every component.
pub fn apply_weak_stage(packet: &SpinorPacket, params: &ExperimentParams) -> SpinorPacket {
    let kappa = params.phase_gradient();
    let beta = params.homogeneous_phase();
    let mut out = *packet;
    for c in out.components.iter_mut() {
        let m = f64::from(c.m);
        c.packet = c.packet.kicked(-m * kappa, -m * beta, params.mass);
    }
    out
}

/// Scalar wave function left after projecting onto a spin state.
#[derive(Clone, Debug, PartialEq)]
pub struct PostSelected {
    pub terms: Vec<(Complex64, WavePacket)>,
    pub mass: f64,
}

impl PostSelected {
    pub fn amplitude_at(&self, z: f64, t: f64) -> Complex64 {
        self.terms
            .iter()
            .map(|(a, p)| a * p.amplitude_at(z, t, self.mass))
            .sum()
    }

    /// Squared norm of the post-selected state, i.e. the post-selection probability.
    pub fn weight(&self) -> f64 {
        let mut total = Complex64::new(0.0, 0.0);
        for (ai, pi) in &self.terms {
            for (aj, pj) in &self.terms {
                total += ai.conj() * aj * pi.overlap(pj, self.mass);
            }
        }
        total.re
    }

    /// Analytic mean position after free flight for `t`.
    pub fn mean_at(&self, t: f64) -> f64 {
        // ⟨z⟩_t = ⟨z⟩_0 + t ⟨p⟩_0 / m; Gaussian overlaps give both moments in closed form.
        let mut num = Complex64::new(0.0, 0.0);
        for (ai, pi) in &self.terms {
            for (aj, pj) in &self.terms {
                let ov = ai.conj() * aj * pi.overlap(pj, self.mass);
                let s2 = pi.sigma * pi.sigma;
                let (ki, kj) = (pi.wavenumber(self.mass), pj.wavenumber(self.mass));
                // ⟨g_i|z|g_j⟩ / ⟨g_i|g_j⟩ for equal widths
                let z_ij = Complex64::new(0.5 * (pi.mean + pj.mean), (kj - ki) * s2);
                // ⟨g_i|p|g_j⟩ / ⟨g_i|g_j⟩
                let p_ij = Complex64::new(
                    HBAR * 0.5 * (ki + kj),
                    HBAR * (pi.mean - pj.mean) / (4.0 * s2),
                );
                num += ov * (z_ij + p_ij * (t / self.mass));
            }
        }
        num.re / self.weight()
    }
}

/// Projects onto `bra`: `Σ_m bra_m* weight_m ψ_m`.
pub fn post_select(packet: &SpinorPacket, bra: &Spinor3, mass: f64) -> PostSelected {
    let terms = packet
        .components
        .iter()
        .zip(bra.components())
        .map(|(c, b)| (b.conj() * c.weight, c.packet))
        .collect();
    PostSelected { terms, mass }
}

/// Post-selected state just after the weak stage, for the fixed x-basis post-selector.
pub fn weak_stage_output(params: &ExperimentParams) -> Result<PostSelected> {
    params.validate()?;
    let packet = apply_weak_stage(&SpinorPacket::initial(params)?, params);
    Ok(post_select(&packet, &post_selector(), params.mass))
}

/// Grid wide enough for all three displaced components plus `half_widths` evolved widths.
pub fn exact_grid(params: &ExperimentParams, points: usize, half_widths: f64) -> Vec<f64> {
    let t = params.flight_time();
    let reach = params.transverse_velocity().abs() * t;
    let s = evolved_width(params.sigma, t, params.mass);
    uniform_grid(-reach - half_widths * s, reach + half_widths * s, points)
}

/// Exact detector density: each post-selected component flies freely with its kick,
/// and the interfering superposition is sampled on `z_grid`.
pub fn exact_detector_density(
    params: &ExperimentParams,
    z_grid: &[f64],
) -> Result<DetectorProfile> {
    let state = weak_stage_output(params)?;
    let t = params.flight_time();
    let density: Vec<f64> = z_grid
        .iter()
        .map(|&z| state.amplitude_at(z, t).norm_sqr())
        .collect();
    let mut profile = DetectorProfile::new(z_grid.to_vec(), density)?;

    // ‖Σ a_j ψ_j‖ outside the grid is at most Σ |a_j| ‖ψ_j‖_outside.
    let weight = state.weight();
    let scale: f64 = state.terms.iter().map(|(a, _)| a.norm_sqr()).sum();
    let s = evolved_width(params.sigma, t, params.mass);
    let (lo, hi) = (z_grid[0], z_grid[z_grid.len() - 1]);
    let bound: f64 = state
        .terms
        .iter()
        .map(|(a, p)| {
            let c = p.centre_at(t);
            let tail = 0.5 * libm::erfc((c - lo) / (std::f64::consts::SQRT_2 * s))
                + 0.5 * libm::erfc((hi - c) / (std::f64::consts::SQRT_2 * s));
            a.norm() * tail.sqrt()
        })
        .sum();
    let outside = bound * bound;
    if weight > 1e-12 * scale && outside > MAX_OUTSIDE_WEIGHT * weight {
        return Err(Error::GridTooNarrow(outside / weight));
    }
    profile.limit = crate::calibration::limit_of(params).ok();
    Ok(profile)
}

/// `⟨S_f| exp(-i µΔt B_z s_z / ħ) |S_i⟩` with `B_z` evaluated at `z`.
pub fn exact_amplitude_at(params: &ExperimentParams, z: f64) -> Complex64 {
    let phase = params.phase_at(z);
    let f = post_selector().components();
    let i = params.pre_selection().components();
    [1.0, 0.0, -1.0]
        .iter()
        .zip(f.iter().zip(i))
        .map(|(m, (f, i))| f.conj() * i * Complex64::from_polar(1.0, -m * phase))
        .sum()
}

/// Taylor series of the post-selected spin amplitude through `order`, with `B_z`
/// evaluated at `z = σ`:
/// `Σ_n (-i µΔt B_z/ħ)^n / n! ⟨S_f|s_z^n|S_i⟩`.
pub fn truncated_expansion_amplitude(params: &ExperimentParams, order: u32) -> Complex64 {
    let phase = params.phase_at(params.sigma);
    let bra = post_selector();
    let ket = params.pre_selection();
    let s = SpinMatrices::new();
    let step = Complex64::new(0.0, -phase);
    let mut coeff = Complex64::new(1.0, 0.0);
    let mut sum = Complex64::new(0.0, 0.0);
    for n in 0..=order {
        if n > 0 {
            coeff *= step / f64::from(n);
        }
        sum += coeff * matrix_element(&bra, &s.sz_pow(n), &ket);
    }
    sum
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OrderRatios {
    pub order: u32,
    /// `|(µΔtB_z/ħ)^n ⟨f|s_z^n|i⟩| / |⟨f|i⟩|`
    pub vs_amplitude: f64,
    /// `|(µΔtB_z/ħ)^n ⟨f|s_z^n|i⟩| / |(µΔtB_z/ħ) ⟨f|s_z|i⟩|`
    pub vs_first_order: f64,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct InequalityReport {
    pub threshold: f64,
    pub orders: Vec<OrderRatios>,
    /// `|(µΔtB_z/ħ) W|`
    pub limit: f64,
    pub limit_holds: bool,
}

impl InequalityReport {
    pub fn all_hold(&self) -> bool {
        self.limit_holds && self.orders.iter().all(|o| o.holds)
    }
}

fn ratio(num: f64, den: f64) -> f64 {
    if num == 0.0 {
        0.0
    } else {
        num / den
    }
}

/// Evaluates the higher-order validity inequalities for `n = 2..=n_max` and the
/// first-order limit, all with `B_z` at `z = σ`. A ratio "holds" when below `threshold`.
pub fn check_inequalities(
    params: &ExperimentParams,
    n_max: u32,
    threshold: f64,
) -> Result<InequalityReport> {
    if n_max < 2 {
        return Err(Error::InvalidParams("n_max must be >= 2".into()));
    }
    let bra = post_selector();
    let ket = params.pre_selection();
    let amp = inner(&bra, &ket).norm();
    if amp <= ORTHOGONALITY_EPS {
        return Err(Error::OrthogonalSelection(amp));
    }
    let s = SpinMatrices::new();
    let phase = params.phase_at(params.sigma).abs();
    let first = phase * matrix_element(&bra, &s.sz, &ket).norm();
    let orders = (2..=n_max)
        .map(|n| {
            let term = phase.powi(n as i32) * matrix_element(&bra, &s.sz_pow(n), &ket).norm();
            let vs_amplitude = ratio(term, amp);
            let vs_first_order = ratio(term, first);
            OrderRatios {
                order: n,
                vs_amplitude,
                vs_first_order,
                holds: vs_amplitude < threshold && vs_first_order < threshold,
            }
        })
        .collect();
    let limit = first / amp;
    Ok(InequalityReport {
        threshold,
        orders,
        limit,
        limit_holds: limit < threshold,
    })
}
