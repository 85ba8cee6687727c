//! Reflection coefficients of the sheet-gap-substrate stack.
//!
//! On the imaginary frequency axis everything is real: the substrate gets the
//! usual Fresnel coefficients, the sheet the nonretarded TM coefficient
//! alpha/(1+alpha), and the composite stacks them with the round-trip damping
//! e^(-2 kappa_0z d). At real frequencies the same composition runs on complex
//! responses, with the principal square root k_0z = sqrt(omega^2/c^2 - k^2 + i0)
//! switching between propagating and evanescent waves.

use num_complex::Complex64;

use crate::constants::{C_LIGHT, EPS0, E_CHARGE, HBAR};
use crate::error::{Error, Result};
use crate::numerics::casin;
use crate::sheet::{bilayer_sigma_xx, sheet_alpha, SheetResponse};

/// Half-space below the gap.
#[derive(Debug, Clone, PartialEq)]
pub enum SubstrateModel {
    DrudeMetal { omega_pe: f64, gamma_e: f64 },
    PerfectConductor,
    Vacuum,
}

impl SubstrateModel {
    pub fn drude(omega_pe: f64, gamma_e: f64) -> Result<Self> {
        if !(omega_pe > 0.0 && omega_pe.is_finite()) {
            return Err(Error::invalid("omega_pe must be positive"));
        }
        if !(gamma_e > 0.0 && gamma_e.is_finite()) {
            return Err(Error::invalid("gamma_e must be positive"));
        }
        Ok(Self::DrudeMetal { omega_pe, gamma_e })
    }

    /// Drude gold: omega_pe = 1.37e16 rad/s, gamma_e = 4.12e13 rad/s.
    pub fn gold() -> Self {
        Self::DrudeMetal {
            omega_pe: crate::constants::GOLD_OMEGA_PE,
            gamma_e: crate::constants::GOLD_GAMMA_E,
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            Self::DrudeMetal { .. } => "drude",
            Self::PerfectConductor => "perfect-conductor",
            Self::Vacuum => "vacuum",
        }
    }
}

/// Optional sheet suspended a gap `gap_d` above a substrate.
#[derive(Debug, Clone, PartialEq)]
pub struct LayerStack {
    sheet: Option<SheetResponse>,
    gap_d: f64,
    substrate: SubstrateModel,
}

impl LayerStack {
    pub fn new(sheet: Option<SheetResponse>, gap_d: f64, substrate: SubstrateModel) -> Result<Self> {
        if !(gap_d >= 0.0) || !gap_d.is_finite() {
            return Err(Error::invalid(format!(
                "gap_d must be finite and >= 0, got {gap_d:e}"
            )));
        }
        Ok(Self {
            sheet,
            gap_d,
            substrate,
        })
    }

    /// Free-standing sheet, no substrate.
    pub fn bare_sheet(sheet: SheetResponse) -> Self {
        Self {
            sheet: Some(sheet),
            gap_d: 0.0,
            substrate: SubstrateModel::Vacuum,
        }
    }

    /// Substrate with nothing above it.
    pub fn bare_substrate(substrate: SubstrateModel) -> Self {
        Self {
            sheet: None,
            gap_d: 0.0,
            substrate,
        }
    }

    pub fn sheet(&self) -> Option<&SheetResponse> {
        self.sheet.as_ref()
    }

    pub fn gap_d(&self) -> f64 {
        self.gap_d
    }

    pub fn substrate(&self) -> &SubstrateModel {
        &self.substrate
    }
}

/// TM/TE reflection amplitudes; real on the imaginary axis, complex at real
/// frequencies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReflectionPair<T = f64> {
    pub r_tm: T,
    pub r_te: T,
}

/// Drude permittivity on the imaginary axis:
/// eps(i xi) = 1 + omega_pe^2 / (xi (xi + gamma_e)).
pub fn drude_eps_imag(omega_pe: f64, gamma_e: f64, xi: f64) -> Result<f64> {
    if !(xi > 0.0) {
        return Err(Error::domain(format!(
            "drude_eps_imag needs xi > 0, got {xi:e}"
        )));
    }
    Ok(1.0 + omega_pe * omega_pe / (xi * (xi + gamma_e)))
}

/// Fresnel coefficients of the bare substrate on the imaginary axis, with
/// gamma_iz = sqrt(1 + eps_i(i xi) xi^2/(c^2 k^2)).
pub fn fresnel_substrate(sub: &SubstrateModel, k: f64, xi: f64) -> Result<ReflectionPair> {
    if !(k > 0.0) || !(xi >= 0.0) {
        return Err(Error::domain(format!(
            "fresnel_substrate needs k > 0 and xi >= 0; got k={k:e}, xi={xi:e}"
        )));
    }
    match sub {
        SubstrateModel::Vacuum => Ok(ReflectionPair {
            r_tm: 0.0,
            r_te: 0.0,
        }),
        SubstrateModel::PerfectConductor => Ok(ReflectionPair {
            r_tm: 1.0,
            r_te: -1.0,
        }),
        SubstrateModel::DrudeMetal { omega_pe, gamma_e } => {
            let eps = drude_eps_imag(*omega_pe, *gamma_e, xi)?;
            let r2 = (xi / (C_LIGHT * k)).powi(2);
            let g0 = (1.0 + r2).sqrt();
            let gs = (1.0 + eps * r2).sqrt();
            Ok(ReflectionPair {
                r_tm: (eps * g0 - gs) / (eps * g0 + gs),
                r_te: (g0 - gs) / (g0 + gs),
            })
        }
    }
}

/// Reflection of the bare sheet on the imaginary axis: R_TM = alpha/(1+alpha)
/// with the nonretarded sheet polarizability, R_TE = 0 (single sheets carry
/// no transverse response); PerfectSheet gives (1, -1).
pub fn sheet_reflection(sheet: &SheetResponse, k: f64, xi: f64) -> Result<ReflectionPair> {
    if matches!(sheet, SheetResponse::PerfectSheet) {
        return Ok(ReflectionPair {
            r_tm: 1.0,
            r_te: -1.0,
        });
    }
    let alpha = sheet_alpha(sheet, k, xi)?;
    let r_tm = if alpha.is_infinite() {
        1.0
    } else {
        alpha / (1.0 + alpha)
    };
    Ok(ReflectionPair { r_tm, r_te: 0.0 })
}

fn compose(sheet: ReflectionPair, sub: ReflectionPair, round_trip: f64) -> ReflectionPair {
    let (g, s) = (sheet.r_tm, sub.r_tm * round_trip);
    let r_tm = (g + s - 2.0 * g * s) / (1.0 - g * s);
    let (g, s) = (sheet.r_te, sub.r_te * round_trip);
    let r_te = (g + s + 2.0 * g * s) / (1.0 - g * s);
    ReflectionPair { r_tm, r_te }
}

/// Composite reflection of the full stack on the imaginary axis, combining
/// sheet and substrate with the round trip e^(-2 kappa_0z d),
/// kappa_0z = sqrt(k^2 + xi^2/c^2).
pub fn stack_reflection(stack: &LayerStack, k: f64, xi: f64) -> Result<ReflectionPair> {
    let sub = fresnel_substrate(stack.substrate(), k, xi)?;
    let Some(sheet) = stack.sheet() else {
        return Ok(sub);
    };
    if matches!(sheet, SheetResponse::PerfectSheet) {
        return Ok(ReflectionPair {
            r_tm: 1.0,
            r_te: -1.0,
        });
    }
    let g = sheet_reflection(sheet, k, xi)?;
    let kappa = k.hypot(xi / C_LIGHT);
    Ok(compose(g, sub, (-2.0 * kappa * stack.gap_d()).exp()))
}

/// Fully nonretarded variant: substrate TM collapses to the electrostatic
/// image strength (eps-1)/(eps+1), TE survives only for the ideal conductor,
/// and the round trip decays as e^(-2 k d).
pub fn stack_reflection_nonretarded(stack: &LayerStack, k: f64, xi: f64) -> Result<ReflectionPair> {
    if !(k > 0.0) || !(xi >= 0.0) {
        return Err(Error::domain(format!(
            "stack_reflection_nonretarded needs k > 0 and xi >= 0; got k={k:e}, xi={xi:e}"
        )));
    }
    let sub = match stack.substrate() {
        SubstrateModel::Vacuum => ReflectionPair {
            r_tm: 0.0,
            r_te: 0.0,
        },
        SubstrateModel::PerfectConductor => ReflectionPair {
            r_tm: 1.0,
            r_te: -1.0,
        },
        SubstrateModel::DrudeMetal { omega_pe, gamma_e } => {
            let eps = drude_eps_imag(*omega_pe, *gamma_e, xi)?;
            ReflectionPair {
                r_tm: (eps - 1.0) / (eps + 1.0),
                r_te: 0.0,
            }
        }
    };
    let Some(sheet) = stack.sheet() else {
        return Ok(sub);
    };
    if matches!(sheet, SheetResponse::PerfectSheet) {
        return Ok(ReflectionPair {
            r_tm: 1.0,
            r_te: -1.0,
        });
    }
    let g = sheet_reflection(sheet, k, xi)?;
    Ok(compose(g, sub, (-2.0 * k * stack.gap_d()).exp()))
}

/// omega^2/c^2 - k^2 under the principal square root approached from +i0, so
/// propagating waves get k_0z > 0 and evanescent ones k_0z = +i kappa.
fn k_z(eps: Complex64, k: f64, omega: f64) -> Complex64 {
    let w = omega / C_LIGHT;
    (eps * w * w - k * k).sqrt()
}

fn drude_eps_real(omega_pe: f64, gamma_e: f64, omega: f64) -> Complex64 {
    1.0 - omega_pe * omega_pe / (Complex64::new(omega * omega, omega * gamma_e))
}

fn fresnel_substrate_real(
    sub: &SubstrateModel,
    k: f64,
    omega: f64,
) -> Result<ReflectionPair<Complex64>> {
    match sub {
        SubstrateModel::Vacuum => Ok(ReflectionPair {
            r_tm: Complex64::ZERO,
            r_te: Complex64::ZERO,
        }),
        SubstrateModel::PerfectConductor => Ok(ReflectionPair {
            r_tm: Complex64::ONE,
            r_te: -Complex64::ONE,
        }),
        SubstrateModel::DrudeMetal { omega_pe, gamma_e } => {
            let eps = drude_eps_real(*omega_pe, *gamma_e, omega);
            let k0z = k_z(Complex64::ONE, k, omega);
            let ksz = k_z(eps, k, omega);
            Ok(ReflectionPair {
                r_tm: (eps * k0z - ksz) / (eps * k0z + ksz),
                r_te: (k0z - ksz) / (k0z + ksz),
            })
        }
    }
}

/// Sheet polarizability at real frequency, alpha = i sigma(omega) k /
/// (2 eps0 omega), continued from the imaginary axis through the upper
/// half-plane.
fn sheet_alpha_real(sheet: &SheetResponse, k: f64, omega: f64) -> Result<Complex64> {
    match sheet {
        SheetResponse::UndopedDirac {
            v_fermi,
            degeneracy,
        } => {
            // chi = -(g/16 hbar) k^2 / sqrt(v_F^2 k^2 - (omega + i0)^2)
            let under = (v_fermi * k) * (v_fermi * k) - omega * omega;
            let root = if under >= 0.0 {
                Complex64::new(under.sqrt(), 0.0)
            } else {
                Complex64::new(0.0, -(-under).sqrt())
            };
            let chi = -(degeneracy / (16.0 * HBAR)) * k * k / root;
            Ok(-E_CHARGE * E_CHARGE * chi / (2.0 * EPS0 * k))
        }
        SheetResponse::DopedDirac {
            v_fermi,
            degeneracy,
            doping,
        } => {
            let k_fermi = (4.0 * std::f64::consts::PI * doping / degeneracy).sqrt();
            let d0 = (degeneracy * doping / std::f64::consts::PI).sqrt() / (HBAR * v_fermi);
            let kt = k / (2.0 * k_fermi);
            let wt = omega / (2.0 * v_fermi * k_fermi);
            // xi_tilde = delta - i omega_tilde just off the real axis.
            let xt = Complex64::new(1e-8 * wt, -wt);
            let w1 = (1.0 - Complex64::i() * xt) / kt;
            let w2 = (1.0 + Complex64::i() * xt) / kt;
            // Same cancellation guard as chi_doped, continued off the axis.
            let chi = if w1.norm_sqr().min(w2.norm_sqr()) >= 1e6 {
                let s = (kt * kt + xt * xt).sqrt();
                let bracket = kt * kt / (s * (s + xt))
                    + kt * kt * xt.atan() / (2.0 * s)
                    + xt * kt.powi(4) / (8.0 * s * (1.0 + xt * xt).powi(2));
                -d0 * bracket
            } else {
                let f = casin(w1)
                    + casin(w2)
                    + w1 * ((1.0 - w1) * (1.0 + w1)).sqrt()
                    + w2 * ((1.0 - w2) * (1.0 + w2)).sqrt();
                let root = (kt * kt + xt * xt).sqrt();
                -d0 * (1.0 + kt * kt * (std::f64::consts::PI - f) / (4.0 * root))
            };
            Ok(-E_CHARGE * E_CHARGE * chi / (2.0 * EPS0 * k))
        }
        SheetResponse::BilayerAB(b) => {
            let sigma = bilayer_sigma_xx(omega, b.gamma_hop())?;
            Ok(Complex64::new(0.0, sigma * k / (2.0 * EPS0 * omega)))
        }
        SheetResponse::PerfectSheet => Ok(Complex64::new(f64::INFINITY, 0.0)),
    }
}

/// Composite reflection at real frequency; the real parts feed the resonant
/// potential.
pub fn stack_reflection_real_axis(
    stack: &LayerStack,
    k: f64,
    omega: f64,
) -> Result<ReflectionPair<Complex64>> {
    if !(k > 0.0) || !(omega > 0.0) {
        return Err(Error::domain(format!(
            "stack_reflection_real_axis needs k > 0 and omega > 0; got k={k:e}, omega={omega:e}"
        )));
    }
    let sub = fresnel_substrate_real(stack.substrate(), k, omega)?;
    let Some(sheet) = stack.sheet() else {
        return Ok(sub);
    };
    if matches!(sheet, SheetResponse::PerfectSheet) {
        return Ok(ReflectionPair {
            r_tm: Complex64::ONE,
            r_te: -Complex64::ONE,
        });
    }
    let alpha = sheet_alpha_real(sheet, k, omega)?;
    let g_tm = alpha / (1.0 + alpha);
    let k0z = k_z(Complex64::ONE, k, omega);
    let p = (2.0 * Complex64::i() * k0z * stack.gap_d()).exp();

    let s_tm = sub.r_tm * p;
    let r_tm = (g_tm + s_tm - 2.0 * g_tm * s_tm) / (1.0 - g_tm * s_tm);
    // Single sheets have no TE response, so the substrate TE only picks up
    // the round-trip phase.
    Ok(ReflectionPair {
        r_tm,
        r_te: sub.r_te * p,
    })
}
