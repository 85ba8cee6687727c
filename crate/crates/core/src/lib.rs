//! Casimir-Polder potentials for atoms above graphene-coated substrates.
//!
//! The crate computes the zero-temperature interaction between a polarizable
//! atom and a planar stack made of an atomically thin conducting sheet
//! suspended at a gap above a half-space substrate. The nonresonant part is
//! an integral of the atomic polarizability against stack reflection
//! coefficients over imaginary frequencies; for initially excited atoms a
//! resonant part evaluated on the real axis is added. The headline quantity
//! is the shielding ratio: how much of the substrate's fluctuation field the
//! sheet removes as a function of gap width and sheet doping.
//!
//! Layout:
//!
//! * [`atom`]: atomic transition data, polarizability, fixture parsing.
//! * [`sheet`]: in-plane response of the sheet (undoped and doped
//!   single-layer models, an AB-stacked bilayer, a perfectly reflecting
//!   sheet).
//! * [`layers`]: substrate permittivities, Fresnel coefficients, and the
//!   composite sheet-plus-substrate reflection.
//! * [`potential`]: the nested-quadrature engine, parameter sweeps, and the
//!   shielding ratio.
//! * [`numerics`]: adaptive semi-infinite quadrature, a branch-pinned
//!   complex arcsine, Kramers-Kronig rotation.
//! * [`constants`]: CODATA values and material defaults in SI units.

// Validation guards use the negated forms (!(x > 0.0)) so that NaN fails them.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod atom;
pub mod constants;
mod error;
pub mod layers;
pub mod numerics;
pub mod potential;
pub mod sheet;

pub use error::{Error, Result};

pub use atom::{
    downward_transitions, load_atom_fixture, polarizability_imag, AtomModel, Transition,
};
pub use layers::{
    drude_eps_imag, fresnel_substrate, sheet_reflection, stack_reflection,
    stack_reflection_nonretarded, stack_reflection_real_axis, LayerStack, ReflectionPair,
    SubstrateModel,
};
pub use numerics::{integrate_semi_infinite, Integral, QuadratureSpec};
pub use potential::{
    nonresonant_potential, resonant_potential, shielding_ratio, sweep, total_potential, Mode,
    PotentialResult, Scenario, SweepAxis, SweepRow,
};
pub use sheet::{
    bilayer_sigma_xx, bilayer_sigma_zz, chi_doped, chi_undoped, f_doped, sheet_alpha,
    BilayerSheet, SheetResponse,
};
