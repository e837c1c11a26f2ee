//! Special functions: log-gamma, digamma, modified Bessel `I_ν`/`K_ν` for
//! complex argument, Bessel-I ratios, zeros of `J_ν` and the regularized
//! incomplete gamma function.

mod bessel;
mod bessel_j;
mod gamma;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub use bessel::{
    bessel_i, bessel_i_ratio, bessel_i_scaled, bessel_k, bessel_k_ratio, bessel_k_scaled,
    log_bessel_i_reduced, log_bessel_k,
};
pub use bessel_j::{bessel_j, bessel_j_zero, bessel_j_zeros};
pub use gamma::{digamma, ln_gamma, log_gamma, regularized_gamma_p, EULER_GAMMA};

/// Complex scalar used for every complex-valued quantity in the crate.
pub type ComplexScalar = Complex64;

pub(crate) fn check_finite(function: &'static str, z: Complex64) -> Result<Complex64> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(Error::NonFinite { function })
    }
}

pub(crate) fn is_nonpositive_integer(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0
}
