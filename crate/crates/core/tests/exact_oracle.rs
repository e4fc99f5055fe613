//! Spectral free-flight propagation as an independent check of the analytic
//! kicked-Gaussian evolution used for the exact detector density.

use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;

use weakspin::constants::HBAR;
use weakspin::propagation::exact_detector_density;
use weakspin::ExperimentParams;

/// Post-selected wave function just after the weak stage, built from the closed forms.
fn post_selected_initial(p: &ExperimentParams, z: f64) -> Complex64 {
    let (s, c) = p.theta.sin_cos();
    let c_plus = Complex64::from_polar(0.5 * (1.0 + s), -p.phi);
    let c_zero = Complex64::new(c / 2f64.sqrt(), 0.0);
    let c_minus = Complex64::from_polar(0.5 * (1.0 - s), p.phi);
    let phase = p.moment * p.delta_t * (p.b0 + p.dbdz * z) / HBAR;
    let envelope =
        (2.0 * PI * p.sigma * p.sigma).powf(-0.25) * (-z * z / (4.0 * p.sigma * p.sigma)).exp();
    let spin = 0.5 * c_plus * Complex64::from_polar(1.0, -phase)
        + c_zero / 2f64.sqrt()
        + 0.5 * c_minus * Complex64::from_polar(1.0, phase);
    spin * envelope
}

fn spectral_density(p: &ExperimentParams, n: usize, half_box: f64) -> (Vec<f64>, Vec<f64>) {
    let dz = 2.0 * half_box / n as f64;
    let z: Vec<f64> = (0..n).map(|i| -half_box + dz * i as f64).collect();
    let mut psi: Vec<Complex64> = z.iter().map(|&z| post_selected_initial(p, z)).collect();
    let mut planner = FftPlanner::new();
    planner.plan_fft_forward(n).process(&mut psi);
    let t = p.flight_time();
    for (i, a) in psi.iter_mut().enumerate() {
        let j = if i < n / 2 {
            i as f64
        } else {
            i as f64 - n as f64
        };
        let k = 2.0 * PI * j / (n as f64 * dz);
        *a *= Complex64::from_polar(1.0 / n as f64, -HBAR * k * k * t / (2.0 * p.mass));
    }
    planner.plan_fft_inverse(n).process(&mut psi);
    (z, psi.iter().map(|a| a.norm_sqr()).collect())
}

#[test]
fn exact_density_matches_spectral_propagation() {
    let cases = [
        (2.9, 0.0, 0.37, 0.0),
        (0.5, 0.0, 0.1, 0.0),
        (1.2, 0.9, 1.5, 2e-6),
        (2.5, 0.3, 4.0, 0.0),
    ];
    for (theta, phi, limit, b0) in cases {
        let p = ExperimentParams {
            theta,
            phi,
            b0,
            ..ExperimentParams::calibration_geometry()
        }
        .with_limit(limit)
        .unwrap();
        let (z, spectral) = spectral_density(&p, 1 << 15, 0.5e-3);
        // compare on the central window where the beam lives
        let keep: Vec<usize> = (0..z.len()).filter(|&i| z[i].abs() < 250e-6).collect();
        let zs: Vec<f64> = keep.iter().map(|&i| z[i]).collect();
        let profile = exact_detector_density(&p, &zs).unwrap();
        let peak = profile.peak;
        let max_err = keep
            .iter()
            .zip(&profile.density)
            .map(|(&i, d)| (spectral[i] - d).abs() / peak)
            .fold(0.0, f64::max);
        assert!(
            max_err < 1e-8,
            "theta={theta} limit={limit}: max err {max_err:e}"
        );
    }
}
