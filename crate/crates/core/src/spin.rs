//! Spin-1 algebra: spinors, spin matrices, transition amplitudes and weak values.
//!
//! Spin matrices are dimensionless with `s_z = diag(1, 0, -1)`; ħ only enters
//! through phase factors in [`crate::propagation`].

use std::f64::consts::{FRAC_1_SQRT_2, TAU};

use nalgebra::{Matrix3, Vector3};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Below this transition-amplitude magnitude the weak value is treated as divergent.
pub const ORTHOGONALITY_EPS: f64 = 1e-12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Spin-1 state in the `s_z` basis, components ordered `m = +1, 0, -1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Spinor3 {
    pub c_plus: Complex64,
    pub c_zero: Complex64,
    pub c_minus: Complex64,
}

impl Spinor3 {
    pub const fn new(c_plus: Complex64, c_zero: Complex64, c_minus: Complex64) -> Self {
        Self {
            c_plus,
            c_zero,
            c_minus,
        }
    }

    /// Components as `[c+, c0, c-]`.
    pub fn components(&self) -> [Complex64; 3] {
        [self.c_plus, self.c_zero, self.c_minus]
    }

    pub fn to_vector(&self) -> Vector3<Complex64> {
        Vector3::new(self.c_plus, self.c_zero, self.c_minus)
    }

    pub fn from_vector(v: &Vector3<Complex64>) -> Self {
        Self::new(v[0], v[1], v[2])
    }

    pub fn norm_sqr(&self) -> f64 {
        self.components().iter().map(|c| c.norm_sqr()).sum()
    }

    /// Applies a 3×3 operator.
    pub fn apply(&self, op: &Matrix3<Complex64>) -> Self {
        Self::from_vector(&(op * self.to_vector()))
    }
}

/// Pre-selected spinor for polar angle `theta` and azimuth `phi`:
///
/// ```text
/// c+ = ½(1 + sin θ) e^{-iφ}
/// c0 = cos θ / √2
/// c- = ½(1 - sin θ) e^{+iφ}
/// ```
///
/// With this parametrisation the `s_z = +1` eigenstate sits at `θ = π/2`.
pub fn make_spinor(theta: f64, phi: f64) -> Spinor3 {
    let theta = theta.rem_euclid(TAU);
    let phi = phi.rem_euclid(TAU);
    let (s, c) = theta.sin_cos();
    Spinor3::new(
        Complex64::from_polar(0.5 * (1.0 + s), -phi),
        Complex64::new(c * FRAC_1_SQRT_2, 0.0),
        Complex64::from_polar(0.5 * (1.0 - s), phi),
    )
}

/// The post-selected state, `m = +1` along x: `(½, 1/√2, ½)`.
pub fn post_selector() -> Spinor3 {
    Spinor3::new(
        Complex64::new(0.5, 0.0),
        Complex64::new(FRAC_1_SQRT_2, 0.0),
        Complex64::new(0.5, 0.0),
    )
}

/// `⟨bra|ket⟩`, conjugate-linear in `bra`.
pub fn inner(bra: &Spinor3, ket: &Spinor3) -> Complex64 {
    bra.components()
        .iter()
        .zip(ket.components())
        .map(|(b, k)| b.conj() * k)
        .sum()
}

/// `⟨bra|op|ket⟩`
pub fn matrix_element(bra: &Spinor3, op: &Matrix3<Complex64>, ket: &Spinor3) -> Complex64 {
    inner(bra, &ket.apply(op))
}

/// Transition amplitude `⟨S_f|S_i⟩` for the fixed post-selector.
pub fn transition_amplitude(theta: f64, phi: f64) -> Complex64 {
    inner(&post_selector(), &make_spinor(theta, phi))
}

/// Post-selection probability `|⟨S_f|S_i⟩|²`.
pub fn post_selection_probability(theta: f64, phi: f64) -> f64 {
    transition_amplitude(theta, phi).norm_sqr()
}

/// Dimensionless spin-1 matrices.
#[derive(Clone, Debug, PartialEq)]
pub struct SpinMatrices {
    pub sx: Matrix3<Complex64>,
    pub sy: Matrix3<Complex64>,
    pub sz: Matrix3<Complex64>,
}

impl SpinMatrices {
    pub fn new() -> Self {
        let r = Complex64::new(FRAC_1_SQRT_2, 0.0);
        let i = Complex64::new(0.0, FRAC_1_SQRT_2);
        let one = Complex64::new(1.0, 0.0);
        #[rustfmt::skip]
        let sx = Matrix3::new(
            ZERO, r, ZERO,
            r, ZERO, r,
            ZERO, r, ZERO,
        );
        #[rustfmt::skip]
        let sy = Matrix3::new(
            ZERO, -i, ZERO,
            i, ZERO, -i,
            ZERO, i, ZERO,
        );
        let sz = Matrix3::from_diagonal(&Vector3::new(one, ZERO, -one));
        Self { sx, sy, sz }
    }

    /// `s_z^n`, which is `diag(1, δ_{n0}, (-1)^n)`.
    pub fn sz_pow(&self, n: u32) -> Matrix3<Complex64> {
        self.sz.pow(n)
    }
}

impl Default for SpinMatrices {
    fn default() -> Self {
        Self::new()
    }
}

/// Complex weak value `W = ⟨S_f|s_z|S_i⟩ / ⟨S_f|S_i⟩`, in units of ħ.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WeakValue(pub Complex64);

impl WeakValue {
    pub fn value(&self) -> Complex64 {
        self.0
    }

    pub fn re(&self) -> f64 {
        self.0.re
    }

    pub fn im(&self) -> f64 {
        self.0.im
    }
}

// 1 + cos φ cos θ = cos²((θ+φ)/2) + cos²((θ-φ)/2), free of cancellation near θ = π.
fn one_plus_cos_cos(theta: f64, phi: f64) -> f64 {
    let a = (0.5 * (theta + phi)).cos();
    let b = (0.5 * (theta - phi)).cos();
    a * a + b * b
}

/// Weak value from the closed forms
/// `Re W = sin θ / (1 + cos φ cos θ)` and `Im W = -sin φ cos θ / (1 + cos φ cos θ)`.
pub fn weak_value(theta: f64, phi: f64) -> Result<WeakValue> {
    let denom = one_plus_cos_cos(theta, phi);
    // |⟨S_f|S_i⟩| = (1 + cos φ cos θ) / 2
    let amplitude = 0.5 * denom;
    if amplitude <= ORTHOGONALITY_EPS {
        return Err(Error::OrthogonalSelection(amplitude));
    }
    let half = 0.5 * theta;
    let sin_theta = 2.0 * half.sin() * half.cos();
    Ok(WeakValue(Complex64::new(
        sin_theta / denom,
        -phi.sin() * theta.cos() / denom,
    )))
}

/// Weak value from the matrix-element ratio, computed with explicit spinors and `s_z`.
pub fn weak_value_from_matrix_elements(theta: f64, phi: f64) -> Result<WeakValue> {
    let bra = post_selector();
    let ket = make_spinor(theta, phi);
    let denom = inner(&bra, &ket);
    if denom.norm() <= ORTHOGONALITY_EPS {
        return Err(Error::OrthogonalSelection(denom.norm()));
    }
    let num = matrix_element(&bra, &SpinMatrices::new().sz, &ket);
    Ok(WeakValue(num / denom))
}

/// Difference between the matrix-element route and the closed form.
pub fn weak_value_ratio_check(theta: f64, phi: f64) -> Result<Complex64> {
    let ratio = weak_value_from_matrix_elements(theta, phi)?;
    let closed = weak_value(theta, phi)?;
    Ok(ratio.value() - closed.value())
}
