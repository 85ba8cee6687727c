//! The Casimir-Polder engine: nested quadrature over imaginary frequency and
//! in-plane wavevector for the nonresonant part, plus the real-frequency
//! emission integral for excited states.
//!
//! The nonresonant potential of an atom at height z_A above the stack is
//!
//! U/hbar = (mu0/8 pi^2) Int dxi alpha(i xi) Int dk (k/kappa) e^(-2 kappa z_A)
//!          [xi^2 R_TE + (xi^2 - 2 kappa^2 c^2) R_TM],
//!
//! with kappa = sqrt(k^2 + xi^2/c^2). In the default mode the reflection
//! coefficients mix a nonretarded sheet with a retarded substrate; the fully
//! nonretarded mode collapses the kernel to the electrostatic image form
//! -(1/4 pi^2 eps0) Int dxi alpha Int dk k^2 e^(-2 k z_A) R_TM.
//!
//! Each downward transition of an excited atom adds the emission term
//!
//! U_R/hbar = -(mu0/4 pi hbar) Sum omega^2 d^2 Int dkappa e^(-2 kappa z_A)
//!            [Re R_TE + Re R_TM (1 + 2 kappa^2 c^2/omega^2)]
//!
//! with the reflections taken on the real axis at k = kappa, which keeps the
//! evanescent sector and drops propagating-wave oscillations.

use std::cell::Cell;

use rayon::prelude::*;

use crate::atom::{downward_transitions, polarizability_imag, AtomModel};
use crate::constants::{C_LIGHT, EPS0, HBAR, MU0};
use crate::error::{Error, Result};
use crate::layers::{
    stack_reflection, stack_reflection_nonretarded, stack_reflection_real_axis, LayerStack,
    SubstrateModel,
};
use crate::numerics::{try_integrate_semi_infinite, QuadratureSpec};
use crate::sheet::SheetResponse;

/// Lower clamp of the imaginary-frequency integration. The integrand scales
/// as xi^2 there, so the clipped sliver is many orders below any tolerance
/// this engine accepts, while the clamp keeps Drude permittivities off their
/// xi = 0 singularity.
const XI_MIN: f64 = 1e-3;

/// Kernel treatment for the nonresonant integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    /// Retarded kernel and substrate, nonretarded sheet coefficients.
    #[default]
    RetardedKernel,
    /// Electrostatic image kernel e^(-2 k z_A) with nonretarded reflections
    /// throughout.
    FullyNonretarded,
}

/// One evaluation request: an atom at height `z_a` above a stack.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub atom: AtomModel,
    pub stack: LayerStack,
    pub z_a: f64,
    pub quad: QuadratureSpec,
    pub mode: Mode,
}

impl Scenario {
    pub fn new(atom: AtomModel, stack: LayerStack, z_a: f64) -> Result<Self> {
        let s = Self {
            atom,
            stack,
            z_a,
            quad: QuadratureSpec::default(),
            mode: Mode::default(),
        };
        s.validate()?;
        Ok(s)
    }

    pub fn with_quad(mut self, quad: QuadratureSpec) -> Self {
        self.quad = quad;
        self
    }

    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.z_a > 0.0) || !self.z_a.is_finite() {
            return Err(Error::invalid(format!(
                "z_a must be finite and positive, got {:e}",
                self.z_a
            )));
        }
        self.quad.validate()
    }
}

/// Potential split into its parts, in angular-frequency units (rad/s) and in
/// joules.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialResult {
    pub u_over_hbar: f64,
    pub u_joule: f64,
    pub nonresonant: f64,
    pub resonant: f64,
    pub err_estimate: f64,
}

impl PotentialResult {
    fn from_parts(nonresonant: f64, resonant: f64, err_estimate: f64) -> Self {
        let u_over_hbar = nonresonant + resonant;
        Self {
            u_over_hbar,
            u_joule: HBAR * u_over_hbar,
            nonresonant,
            resonant,
            err_estimate,
        }
    }
}

fn is_all_vacuum(stack: &LayerStack) -> bool {
    stack.sheet().is_none() && matches!(stack.substrate(), SubstrateModel::Vacuum)
}

/// Imaginary-frequency integration scale: the kernel dies past c/(2 z_A) and
/// the polarizability past the strongest line, whichever is reached first.
fn xi_scale(s: &Scenario) -> f64 {
    let from_atom = s.atom.dominant_omega();
    match s.mode {
        Mode::RetardedKernel => from_atom.min(C_LIGHT / (2.0 * s.z_a)),
        Mode::FullyNonretarded => from_atom,
    }
}

/// Nonresonant part alone; the `resonant` field is zero.
pub fn nonresonant_potential(s: &Scenario) -> Result<PotentialResult> {
    s.validate()?;
    if is_all_vacuum(&s.stack) {
        return Ok(PotentialResult::from_parts(0.0, 0.0, 0.0));
    }
    let z = s.z_a;
    let mut inner_spec = s.quad.with_map_scale(1.0 / (2.0 * z));
    inner_spec.rel_tol /= 10.0;
    let outer_spec = s.quad.with_map_scale(xi_scale(s));
    let worst_inner = Cell::new(0.0f64);

    let integrand = |t: f64| -> Result<f64> {
        let xi = XI_MIN + t;
        let alpha = polarizability_imag(&s.atom, xi);
        if alpha == 0.0 {
            return Ok(0.0);
        }
        let inner = match s.mode {
            Mode::RetardedKernel => try_integrate_semi_infinite(
                |k| {
                    let kappa = k.hypot(xi / C_LIGHT);
                    let r = stack_reflection(&s.stack, k, xi)?;
                    let bracket = xi * xi * r.r_te
                        + (xi * xi - 2.0 * kappa * kappa * C_LIGHT * C_LIGHT) * r.r_tm;
                    Ok((k / kappa) * (-2.0 * kappa * z).exp() * bracket)
                },
                &inner_spec,
            ),
            Mode::FullyNonretarded => try_integrate_semi_infinite(
                |k| {
                    let r = stack_reflection_nonretarded(&s.stack, k, xi)?;
                    Ok(k * k * (-2.0 * k * z).exp() * r.r_tm)
                },
                &inner_spec,
            ),
        }
        .map_err(|e| e.at_stage("k-integral"))?;
        if inner.value != 0.0 {
            worst_inner.set(worst_inner.get().max(inner.err_estimate / inner.value.abs()));
        }
        Ok(alpha * inner.value)
    };
    let outer =
        try_integrate_semi_infinite(integrand, &outer_spec).map_err(|e| e.at_stage("xi-integral"))?;

    let prefactor = match s.mode {
        Mode::RetardedKernel => MU0 / (8.0 * std::f64::consts::PI.powi(2)),
        Mode::FullyNonretarded => -1.0 / (4.0 * std::f64::consts::PI.powi(2) * EPS0),
    };
    let value = prefactor * outer.value;
    let err = prefactor.abs() * outer.err_estimate.hypot(outer.value.abs() * worst_inner.get());
    Ok(PotentialResult::from_parts(value, 0.0, err))
}

/// Resonant part alone; zero for ground states, which have no downward
/// transitions. The `nonresonant` field is zero.
pub fn resonant_potential(s: &Scenario) -> Result<PotentialResult> {
    s.validate()?;
    let lines = downward_transitions(&s.atom);
    if lines.is_empty() || is_all_vacuum(&s.stack) {
        return Ok(PotentialResult::from_parts(0.0, 0.0, 0.0));
    }
    let z = s.z_a;
    let spec = s.quad.with_map_scale(1.0 / (2.0 * z));
    let mut total = 0.0;
    let mut err_sq = 0.0;
    for line in lines {
        if line.d2 == 0.0 {
            continue;
        }
        let omega = line.omega;
        let integral = try_integrate_semi_infinite(
            |kappa| {
                let r = stack_reflection_real_axis(&s.stack, kappa, omega)?;
                let w = 1.0 + 2.0 * (kappa * C_LIGHT / omega).powi(2);
                Ok((-2.0 * kappa * z).exp() * (r.r_te.re + r.r_tm.re * w))
            },
            &spec,
        )
        .map_err(|e| e.at_stage("kappa-integral"))?;
        let weight = -MU0 / (4.0 * std::f64::consts::PI * HBAR) * omega * omega * line.d2;
        total += weight * integral.value;
        err_sq += (weight * integral.err_estimate).powi(2);
    }
    Ok(PotentialResult::from_parts(0.0, total, err_sq.sqrt()))
}

/// Nonresonant plus resonant part.
pub fn total_potential(s: &Scenario) -> Result<PotentialResult> {
    let nr = nonresonant_potential(s)?;
    let r = resonant_potential(s)?;
    Ok(PotentialResult::from_parts(
        nr.nonresonant,
        r.resonant,
        nr.err_estimate.hypot(r.err_estimate),
    ))
}

/// Ratio of the composite potential (sheet above substrate at gap `gap_d`)
/// to the free-standing-sheet potential at the same atom height. Values
/// above 1 measure how much of the substrate's field the sheet fails to
/// shield; the ratio tends to 1 as the gap widens.
pub fn shielding_ratio(
    atom: &AtomModel,
    sheet: &SheetResponse,
    substrate: &SubstrateModel,
    z_a: f64,
    gap_d: f64,
) -> Result<f64> {
    if matches!(substrate, SubstrateModel::Vacuum) {
        return Ok(1.0);
    }
    let composite = Scenario::new(
        atom.clone(),
        LayerStack::new(Some(sheet.clone()), gap_d, substrate.clone())?,
        z_a,
    )?;
    let alone = Scenario::new(
        atom.clone(),
        LayerStack::bare_sheet(sheet.clone()),
        z_a,
    )?;
    let u_composite = total_potential(&composite)?;
    let u_alone = total_potential(&alone)?;
    if u_alone.u_over_hbar.abs() <= u_alone.err_estimate.max(f64::MIN_POSITIVE) {
        return Err(Error::domain(
            "sheet-alone potential is zero within its error estimate; ratio undefined",
        ));
    }
    Ok(u_composite.u_over_hbar / u_alone.u_over_hbar)
}

/// Parameter varied along a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepAxis {
    AtomHeight,
    GapWidth,
    Doping,
}

/// One sweep point. Quadrature failures stay inside their row; `ratio` is the
/// shielding ratio where the stack has both a sheet and a substrate, exactly
/// 1 for a vacuum substrate, and absent without a sheet or on failure.
#[derive(Debug)]
pub struct SweepRow {
    pub axis_value: f64,
    pub result: Result<PotentialResult>,
    pub ratio: Option<f64>,
}

fn scenario_at(template: &Scenario, axis: SweepAxis, value: f64) -> Result<Scenario> {
    let mut s = template.clone();
    match axis {
        SweepAxis::AtomHeight => s.z_a = value,
        SweepAxis::GapWidth => {
            s.stack = LayerStack::new(
                template.stack.sheet().cloned(),
                value,
                template.stack.substrate().clone(),
            )?;
        }
        SweepAxis::Doping => {
            let Some(SheetResponse::DopedDirac {
                v_fermi,
                degeneracy,
                ..
            }) = template.stack.sheet()
            else {
                return Err(Error::invalid(
                    "doping sweep needs a doped Dirac sheet in the template stack",
                ));
            };
            s.stack = LayerStack::new(
                Some(SheetResponse::doped(value, *v_fermi, *degeneracy)?),
                template.stack.gap_d(),
                template.stack.substrate().clone(),
            )?;
        }
    }
    s.validate()?;
    Ok(s)
}

fn sweep_row(template: &Scenario, axis: SweepAxis, value: f64) -> SweepRow {
    let evaluate = || -> Result<(PotentialResult, Option<f64>)> {
        let s = scenario_at(template, axis, value)?;
        let result = total_potential(&s)?;
        let ratio = match (s.stack.sheet(), s.stack.substrate()) {
            (None, _) => None,
            (Some(_), SubstrateModel::Vacuum) => Some(1.0),
            (Some(sheet), substrate) => Some(shielding_ratio(
                &s.atom,
                sheet,
                substrate,
                s.z_a,
                s.stack.gap_d(),
            )?),
        };
        Ok((result, ratio))
    };
    match evaluate() {
        Ok((result, ratio)) => SweepRow {
            axis_value: value,
            result: Ok(result),
            ratio,
        },
        Err(e) => SweepRow {
            axis_value: value,
            result: Err(e),
            ratio: None,
        },
    }
}

/// Evaluate the template scenario over a grid of values of one axis. Rows are
/// independent and computed in parallel; a failing row carries its error
/// without aborting the others.
pub fn sweep(template: &Scenario, axis: SweepAxis, grid: &[f64]) -> Result<Vec<SweepRow>> {
    template.validate()?;
    if axis == SweepAxis::Doping
        && !matches!(template.stack.sheet(), Some(SheetResponse::DopedDirac { .. }))
    {
        return Err(Error::invalid(
            "doping sweep needs a doped Dirac sheet in the template stack",
        ));
    }
    if grid.is_empty() {
        return Err(Error::invalid("sweep grid is empty"));
    }
    if grid.iter().any(|v| !(v.is_finite() && *v > 0.0)) {
        return Err(Error::invalid("sweep grid values must be finite and positive"));
    }
    if grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::invalid("sweep grid must be strictly increasing"));
    }
    Ok(grid
        .par_iter()
        .map(|&v| sweep_row(template, axis, v))
        .collect())
}
