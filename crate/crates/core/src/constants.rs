//! Physical constants in SI units.
//!
//! Values follow CODATA 2018; the exact SI defining constants (`E_CHARGE`,
//! `HBAR` up to the 2019 redefinition rounding, `C_LIGHT`) are exact.

/// Speed of light in vacuum, m/s (exact).
pub const C_LIGHT: f64 = 299_792_458.0;

/// Reduced Planck constant, J s.
pub const HBAR: f64 = 1.054_571_817e-34;

/// Elementary charge, C (exact).
pub const E_CHARGE: f64 = 1.602_176_634e-19;

/// Vacuum permittivity, F/m.
pub const EPS0: f64 = 8.854_187_812_8e-12;

/// Vacuum permeability, N/A^2.
pub const MU0: f64 = 1.256_637_062_12e-6;

/// Electron mass, kg.
pub const M_ELECTRON: f64 = 9.109_383_701_5e-31;

/// Bohr radius, m.
pub const BOHR_RADIUS: f64 = 5.291_772_109_03e-11;

/// One electronvolt, J (exact).
pub const EV: f64 = 1.602_176_634e-19;

/// Atomic unit of squared dipole moment, (e a0)^2 in C^2 m^2.
pub const DIPOLE_SQ_AU: f64 = (E_CHARGE * BOHR_RADIUS) * (E_CHARGE * BOHR_RADIUS);

/// Default graphene Fermi velocity, m/s (c/300).
pub const V_FERMI_DEFAULT: f64 = C_LIGHT / 300.0;

/// Default graphene degeneracy (spin x valley).
pub const DEGENERACY_DEFAULT: f64 = 4.0;

/// Default AB-bilayer interlayer hopping energy, J (0.4 eV).
pub const GAMMA_HOP_DEFAULT: f64 = 0.4 * EV;

/// Default AB-bilayer interlayer spacing, m (3.3 Angstrom).
pub const D_LAYER_DEFAULT: f64 = 3.3e-10;

/// Gold Drude plasma frequency, rad/s.
pub const GOLD_OMEGA_PE: f64 = 1.37e16;

/// Gold Drude relaxation rate, rad/s.
pub const GOLD_GAMMA_E: f64 = 4.12e13;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permeability_matches_permittivity() {
        // mu0 = 1/(eps0 c^2) to the precision both constants are quoted at.
        let derived = 1.0 / (EPS0 * C_LIGHT * C_LIGHT);
        assert!((derived / MU0 - 1.0).abs() < 1e-9);
    }

    #[test]
    fn dipole_unit_value() {
        // (e a0)^2 = 7.18823...e-59 C^2 m^2
        assert!((DIPOLE_SQ_AU / 7.188_23e-59 - 1.0).abs() < 1e-5);
    }
}
