//! Quadrature, special functions, and dispersion-relation helpers.

mod kk;
mod quad;
mod special;

pub use kk::{imag_axis_from_absorptive, kramers_kronig_imag_axis};
pub use quad::{integrate_semi_infinite, try_integrate_semi_infinite, Integral, QuadratureSpec};
pub use special::casin;

pub(crate) use special::sqrt_one_minus_sq_upper;
