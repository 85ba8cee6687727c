//! In-plane response functions of atomically thin conducting sheets.
//!
//! Single-layer sheets are described by the density-density correlation
//! function chi(k, i xi) of the Dirac model, with or without doping; the
//! AB-stacked bilayer by its local longitudinal conductivity sigma_xx(omega)
//! rotated onto the imaginary axis. All of them feed the dimensionless sheet
//! polarizability alpha(k, i xi) that the TM reflection coefficient is built
//! from.

use num_complex::Complex64;

use crate::constants::{EPS0, E_CHARGE, HBAR};
use crate::error::{Error, Result};
use crate::numerics::{casin, imag_axis_from_absorptive, sqrt_one_minus_sq_upper, QuadratureSpec};

/// Response model of a single suspended sheet.
#[derive(Debug, Clone, PartialEq)]
pub enum SheetResponse {
    /// Undoped single-layer Dirac sheet.
    UndopedDirac { v_fermi: f64, degeneracy: f64 },
    /// Doped single-layer Dirac sheet with carrier density `doping` in 1/m^2.
    DopedDirac {
        v_fermi: f64,
        degeneracy: f64,
        doping: f64,
    },
    /// Undoped AB-stacked bilayer with a precomputed sigma(i xi) table.
    BilayerAB(BilayerSheet),
    /// Idealized sheet reflecting both polarizations completely.
    PerfectSheet,
}

impl SheetResponse {
    pub fn undoped(v_fermi: f64, degeneracy: f64) -> Result<Self> {
        if !(v_fermi > 0.0 && v_fermi.is_finite()) {
            return Err(Error::invalid("v_fermi must be positive"));
        }
        if !(degeneracy > 0.0 && degeneracy.is_finite()) {
            return Err(Error::invalid("degeneracy must be positive"));
        }
        Ok(Self::UndopedDirac {
            v_fermi,
            degeneracy,
        })
    }

    pub fn doped(doping: f64, v_fermi: f64, degeneracy: f64) -> Result<Self> {
        if !(doping > 0.0 && doping.is_finite()) {
            return Err(Error::invalid(
                "doping must be positive; use UndopedDirac for zero doping",
            ));
        }
        if !(v_fermi > 0.0 && v_fermi.is_finite()) {
            return Err(Error::invalid("v_fermi must be positive"));
        }
        if !(degeneracy > 0.0 && degeneracy.is_finite()) {
            return Err(Error::invalid("degeneracy must be positive"));
        }
        Ok(Self::DopedDirac {
            v_fermi,
            degeneracy,
            doping,
        })
    }

    pub fn bilayer(gamma_hop: f64, d_layer: f64, v_fermi: f64) -> Result<Self> {
        Ok(Self::BilayerAB(BilayerSheet::new(
            gamma_hop, d_layer, v_fermi,
        )?))
    }

    pub fn perfect() -> Self {
        Self::PerfectSheet
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            Self::UndopedDirac { .. } => "undoped",
            Self::DopedDirac { .. } => "doped",
            Self::BilayerAB(_) => "bilayer",
            Self::PerfectSheet => "perfect-sheet",
        }
    }
}

/// Density-density correlation of the undoped Dirac sheet on the imaginary
/// axis, in 1/(J m^2): chi = -(g/16 hbar) k^2 / sqrt(v_F^2 k^2 + xi^2).
pub fn chi_undoped(k: f64, xi: f64, v_fermi: f64, degeneracy: f64) -> Result<f64> {
    if k < 0.0 || xi < 0.0 || (k == 0.0 && xi == 0.0) {
        return Err(Error::domain(format!(
            "chi_undoped needs k >= 0, xi >= 0, not both zero; got k={k:e}, xi={xi:e}"
        )));
    }
    Ok(-(degeneracy / (16.0 * HBAR)) * k * k / (v_fermi * k).hypot(xi))
}

/// The complex-arcsine combination entering the doped-sheet response, in the
/// dimensionless variables k_tilde = k/2k_F and xi_tilde = hbar xi/2E_F:
///
/// f = arcsin(w1) + arcsin(w2) + w1 sqrt(1 - w1^2) + w2 sqrt(1 - w2^2),
/// w1 = (1 - i xi_tilde)/k_tilde,  w2 = (1 + i xi_tilde)/k_tilde.
///
/// The two halves are conjugates for real arguments, so the sum is real up
/// to floating error; at xi_tilde = 0 the pair collapses onto the branch cut
/// and the two one-sided limits are paired explicitly.
pub fn f_doped(k_tilde: f64, xi_tilde: f64) -> Complex64 {
    debug_assert!(k_tilde > 0.0 && xi_tilde >= 0.0);
    if xi_tilde == 0.0 {
        let x = 1.0 / k_tilde;
        let upper = casin(Complex64::new(x, 0.0)) + x * sqrt_one_minus_sq_upper(x);
        return upper + upper.conj();
    }
    let w1 = Complex64::new(1.0 / k_tilde, -xi_tilde / k_tilde);
    let w2 = Complex64::new(1.0 / k_tilde, xi_tilde / k_tilde);
    casin(w1) + casin(w2) + w1 * sqrt_one_minus_sq(w1) + w2 * sqrt_one_minus_sq(w2)
}

fn sqrt_one_minus_sq(z: Complex64) -> Complex64 {
    ((1.0 - z) * (1.0 + z)).sqrt()
}

/// Density-density correlation of the doped Dirac sheet on the imaginary
/// axis, in 1/(J m^2): chi = -D0 [1 + k~^2 (pi - f)/(4 sqrt(k~^2 + xi~^2))]
/// with D0 = sqrt(g n / pi)/(hbar v_F), k_F = sqrt(4 pi n / g), E_F = hbar
/// v_F k_F.
///
/// When the arcsine arguments grow large the bracket is a difference of
/// terms of order xi~/k~^2 that cancels down to order k~^2, so the direct
/// form loses roughly xi~/k~^4 digits. Past |w|^2 = (1 + xi~^2)/k~^2 = 1e6
/// the large-argument expansion of f is used instead:
///
/// chi = -D0 [ k~^2/(s(s + xi~)) + k~^2 arctan(xi~)/(2s)
///             + xi~ k~^4/(8 s (1 + xi~^2)^2) ],   s = sqrt(k~^2 + xi~^2),
///
/// whose k -> 0 limit carries both the intraband (Drude) weight
/// e^2 E_F/(pi hbar^2 xi) and the Pauli-blocked interband conductivity
/// (e^2/4 hbar)[1 - (2/pi) arctan(2 E_F/hbar xi)]; the truncation error is
/// below 1e-12 at the switch point.
pub fn chi_doped(k: f64, xi: f64, doping: f64, v_fermi: f64, degeneracy: f64) -> Result<f64> {
    if !(k > 0.0) || xi < 0.0 || !(doping > 0.0) {
        return Err(Error::domain(format!(
            "chi_doped needs k > 0, xi >= 0, doping > 0; got k={k:e}, xi={xi:e}, n={doping:e}"
        )));
    }
    let k_fermi = (4.0 * std::f64::consts::PI * doping / degeneracy).sqrt();
    let d0 = (degeneracy * doping / std::f64::consts::PI).sqrt() / (HBAR * v_fermi);
    let kt = k / (2.0 * k_fermi);
    let xt = xi / (2.0 * v_fermi * k_fermi);
    if 1.0 + xt * xt >= 1e6 * kt * kt {
        let s = kt.hypot(xt);
        let bracket = kt * kt / (s * (s + xt))
            + kt * kt * xt.atan() / (2.0 * s)
            + xt * kt.powi(4) / (8.0 * s * (1.0 + xt * xt).powi(2));
        return Ok(-d0 * bracket);
    }
    let f = f_doped(kt, xt).re;
    Ok(-d0 * (1.0 + kt * kt * (std::f64::consts::PI - f) / (4.0 * kt.hypot(xt))))
}

fn theta(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        0.0
    } else {
        0.5
    }
}

/// Longitudinal conductivity of the undoped AB-stacked bilayer at real
/// frequency, in siemens. `gamma_hop` is the interlayer hopping energy in J,
/// converted internally to the angular frequency gamma_hop/hbar; step
/// functions use theta(0) = 1/2.
pub fn bilayer_sigma_xx(omega: f64, gamma_hop: f64) -> Result<f64> {
    if !(omega > 0.0) || !(gamma_hop > 0.0) {
        return Err(Error::domain(format!(
            "bilayer_sigma_xx needs omega > 0 and gamma_hop > 0; got omega={omega:e}"
        )));
    }
    let g = gamma_hop / HBAR;
    let scale = E_CHARGE * E_CHARGE / (2.0 * HBAR);
    let mut bracket = (omega + 2.0 * g) / (2.0 * (omega + g));
    // The step gates the omega = gamma pole of the second term off.
    let t2 = theta(omega - 2.0 * g);
    if t2 > 0.0 {
        bracket += t2 * (omega - 2.0 * g) / (2.0 * (omega - g));
    }
    bracket += theta(omega - g) * (theta(omega - g) + theta(omega + g)) * g * g
        / (2.0 * omega * omega);
    Ok(scale * bracket)
}

/// Perpendicular conductivity of the undoped AB-stacked bilayer at real
/// frequency, in siemens:
/// sigma_zz = (e^2/4 hbar)(gamma d / hbar v_F)^2 [omega/(2(omega+gamma)) +
/// theta(omega-2 gamma) omega/(2(omega-gamma))].
///
/// Exposed for completeness; the reflection coefficients use only the
/// longitudinal response.
pub fn bilayer_sigma_zz(omega: f64, gamma_hop: f64, d_layer: f64, v_fermi: f64) -> Result<f64> {
    if !(omega > 0.0) || !(gamma_hop > 0.0) || !(d_layer > 0.0) || !(v_fermi > 0.0) {
        return Err(Error::domain(
            "bilayer_sigma_zz needs omega, gamma_hop, d_layer, v_fermi > 0".to_string(),
        ));
    }
    let g = gamma_hop / HBAR;
    let ratio = gamma_hop * d_layer / (HBAR * v_fermi);
    let scale = E_CHARGE * E_CHARGE / (4.0 * HBAR) * ratio * ratio;
    let mut bracket = omega / (2.0 * (omega + g));
    let t2 = theta(omega - 2.0 * g);
    if t2 > 0.0 {
        bracket += t2 * omega / (2.0 * (omega - g));
    }
    Ok(scale * bracket)
}

/// Bilayer sheet with its imaginary-axis conductivity tabulated once at
/// construction on a log grid and linearly interpolated afterwards.
#[derive(Debug, Clone, PartialEq)]
pub struct BilayerSheet {
    gamma_hop: f64,
    d_layer: f64,
    v_fermi: f64,
    ln_xi_min: f64,
    ln_step: f64,
    sigma: Vec<f64>,
}

const BILAYER_XI_MIN: f64 = 1e9;
const BILAYER_XI_MAX: f64 = 1e19;
const BILAYER_POINTS_PER_DECADE: usize = 25;

impl BilayerSheet {
    pub fn new(gamma_hop: f64, d_layer: f64, v_fermi: f64) -> Result<Self> {
        if !(gamma_hop > 0.0 && gamma_hop.is_finite()) {
            return Err(Error::invalid("gamma_hop must be positive"));
        }
        if !(d_layer > 0.0 && d_layer.is_finite()) {
            return Err(Error::invalid("d_layer must be positive"));
        }
        if !(v_fermi > 0.0 && v_fermi.is_finite()) {
            return Err(Error::invalid("v_fermi must be positive"));
        }
        let decades = (BILAYER_XI_MAX / BILAYER_XI_MIN).log10().round() as usize;
        let n_points = decades * BILAYER_POINTS_PER_DECADE + 1;
        let ln_xi_min = BILAYER_XI_MIN.ln();
        let ln_step = (BILAYER_XI_MAX.ln() - ln_xi_min) / (n_points - 1) as f64;
        let g = gamma_hop / HBAR;
        let mut sigma = Vec::with_capacity(n_points);
        for i in 0..n_points {
            let xi = (ln_xi_min + i as f64 * ln_step).exp();
            let spec = QuadratureSpec {
                rel_tol: 1e-9,
                max_refinements: 500,
                ..QuadratureSpec::default()
            }
            .with_map_scale(g.max(xi));
            let value = imag_axis_from_absorptive(
                |w| bilayer_sigma_xx(w, gamma_hop).unwrap_or(0.0),
                xi,
                &spec,
            )
            .map_err(|e| e.at_stage("bilayer sigma(i xi) table"))?;
            sigma.push(value);
        }
        Ok(Self {
            gamma_hop,
            d_layer,
            v_fermi,
            ln_xi_min,
            ln_step,
            sigma,
        })
    }

    pub fn gamma_hop(&self) -> f64 {
        self.gamma_hop
    }

    pub fn d_layer(&self) -> f64 {
        self.d_layer
    }

    pub fn v_fermi(&self) -> f64 {
        self.v_fermi
    }

    /// sigma(i xi) in siemens, interpolated on the cached grid; clamped to
    /// the grid's end values outside [1e9, 1e19] rad/s, where the
    /// conductivity has flattened to e^2/2hbar to well below the table's
    /// interpolation error.
    pub fn sigma_imag(&self, xi: f64) -> f64 {
        let t = (xi.ln() - self.ln_xi_min) / self.ln_step;
        if t <= 0.0 {
            return self.sigma[0];
        }
        let last = self.sigma.len() - 1;
        if t >= last as f64 {
            return self.sigma[last];
        }
        let i = t as usize;
        let frac = t - i as f64;
        self.sigma[i] + frac * (self.sigma[i + 1] - self.sigma[i])
    }
}

/// Dimensionless sheet polarizability alpha(k, i xi) = -e^2 chi/(2 eps0 k),
/// equal to sigma(i xi) k/(2 eps0 xi) for conductivity-based sheets.
/// PerfectSheet returns +infinity, which the reflection builder folds into
/// R_TM = 1, R_TE = -1.
pub fn sheet_alpha(response: &SheetResponse, k: f64, xi: f64) -> Result<f64> {
    if !(k > 0.0) || !(xi >= 0.0) {
        return Err(Error::domain(format!(
            "sheet_alpha needs k > 0 and xi >= 0; got k={k:e}, xi={xi:e}"
        )));
    }
    match response {
        SheetResponse::UndopedDirac {
            v_fermi,
            degeneracy,
        } => {
            let chi = chi_undoped(k, xi, *v_fermi, *degeneracy)?;
            Ok(-E_CHARGE * E_CHARGE * chi / (2.0 * EPS0 * k))
        }
        SheetResponse::DopedDirac {
            v_fermi,
            degeneracy,
            doping,
        } => {
            let chi = chi_doped(k, xi, *doping, *v_fermi, *degeneracy)?;
            Ok(-E_CHARGE * E_CHARGE * chi / (2.0 * EPS0 * k))
        }
        SheetResponse::BilayerAB(sheet) => {
            if xi == 0.0 {
                return Err(Error::domain(
                    "bilayer sheet_alpha is undefined at xi = 0; the potential \
                     integrand never needs it there"
                        .to_string(),
                ));
            }
            Ok(sheet.sigma_imag(xi) * k / (2.0 * EPS0 * xi))
        }
        SheetResponse::PerfectSheet => Ok(f64::INFINITY),
    }
}
