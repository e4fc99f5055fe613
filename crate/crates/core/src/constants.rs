//! Physical constants in SI units (CODATA 2018).
//!
//! Every other module computes in SI; unit labels live in the docs only.

/// Reduced Planck constant, J·s.
pub const HBAR: f64 = 1.054_571_817e-34;
/// Bohr magneton, J/T.
pub const BOHR_MAGNETON: f64 = 9.274_010_078_3e-24;
/// Unified atomic mass unit, kg.
pub const AMU: f64 = 1.660_539_066_60e-27;
/// Helium-4 atomic mass in atomic mass units.
pub const HELIUM4_MASS_AMU: f64 = 4.002_602;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhysicalConstants {
    /// J·s
    pub hbar: f64,
    /// J/T
    pub bohr_magneton: f64,
    /// kg
    pub amu: f64,
    /// kg
    pub helium4_mass: f64,
    /// Magnetic moment of He 2³S₁, two Bohr magnetons (J/T).
    pub metastable_he_moment: f64,
}

pub const fn constants() -> PhysicalConstants {
    PhysicalConstants {
        hbar: HBAR,
        bohr_magneton: BOHR_MAGNETON,
        amu: AMU,
        helium4_mass: HELIUM4_MASS_AMU * AMU,
        metastable_he_moment: 2.0 * BOHR_MAGNETON,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moment_is_two_magnetons() {
        let c = constants();
        assert_eq!(c.metastable_he_moment / c.bohr_magneton, 2.0);
    }

    #[test]
    fn helium_mass() {
        let m = constants().helium4_mass;
        let expected = 4.002602 * 1.66054e-27;
        assert!((m - expected).abs() / expected < 1e-3);
        assert!((m - 6.646e-27).abs() / 6.646e-27 < 1e-3);
    }

    #[test]
    fn positive_and_deterministic() {
        let a = constants();
        let b = constants();
        assert_eq!(a, b);
        for v in [
            a.hbar,
            a.bohr_magneton,
            a.amu,
            a.helium4_mass,
            a.metastable_he_moment,
        ] {
            assert!(v > 0.0);
        }
    }
}
