//! Complex arcsine on the principal branch.
//!
//! Response-function algebra below needs arcsin of arguments that land on or
//! near the real-axis cuts (-inf, -1) and (1, inf). To keep results
//! reproducible the branch is pinned explicitly: `casin` is the principal
//! branch, continuous from the upper half-plane on both cuts, computed through
//! the log-sqrt composition -i ln(iz + sqrt(1 - z^2)).

use num_complex::Complex64;

/// Principal-branch complex arcsine, Im-continuous from above on the cuts.
///
/// Exactly-real inputs with |Re z| > 1 (either sign of the zero imaginary
/// part) are treated as the limit from Im z -> 0+, so
/// casin(x) = pi/2 + i arccosh(x) for x > 1 and -pi/2 + i arccosh(-x) for
/// x < -1.
pub fn casin(z: Complex64) -> Complex64 {
    if z.im == 0.0 {
        let x = z.re;
        if x.abs() <= 1.0 {
            return Complex64::new(x.asin(), 0.0);
        }
        let ax = x.abs();
        let acosh = (ax + (ax * ax - 1.0).sqrt()).ln();
        return Complex64::new(std::f64::consts::FRAC_PI_2.copysign(x), acosh);
    }
    let s = sqrt_one_minus_sq(z);
    let iz = Complex64::new(-z.im, z.re);
    let sum = iz + s;
    let diff = iz - s;
    // (iz + s)(iz - s) = -1 exactly, so when one of the two loses all its
    // digits to cancellation (|z| large, s ~ -iz or s ~ iz) the other is
    // accurate and the small one is its negated reciprocal.
    let arg = if sum.norm_sqr() >= diff.norm_sqr() {
        sum
    } else {
        -diff.inv()
    };
    let log = arg.ln();
    Complex64::new(log.im, -log.re)
}

/// sqrt(1 - z^2) on the principal branch, with (1-z)(1+z) factoring so the
/// difference stays accurate near z = +/-1.
pub(crate) fn sqrt_one_minus_sq(z: Complex64) -> Complex64 {
    ((Complex64::new(1.0, 0.0) - z) * (Complex64::new(1.0, 0.0) + z)).sqrt()
}

/// Limit of sqrt(1 - w^2) as w -> x + i0+ for real x.
///
/// On the cut |x| > 1 the limit is -i sign(x) sqrt(x^2 - 1).
pub(crate) fn sqrt_one_minus_sq_upper(x: f64) -> Complex64 {
    if x.abs() <= 1.0 {
        Complex64::new((1.0 - x * x).sqrt(), 0.0)
    } else {
        Complex64::new(0.0, -((x * x - 1.0).sqrt()).copysign(x))
    }
}
