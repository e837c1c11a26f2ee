//! Closed-form driving distribution functions.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::{FamilyDescriptor, FamilyParams};
use crate::error::{Error, Result};
use crate::quad::integrate;
use crate::specfun::{bessel_i_scaled, regularized_gamma_p};

/// Exact `G_X(a)` where a formula is known:
///
/// * Gamma(α, λ), `a > 0`: `e^{−α} + e^{−α} ∫₀^{2√(αλa)} I₁(w) e^{−w²/(4α)} dw`
///   (and 0 for `a < 0`);
/// * Student t with `ν = 1/2`: `1/2 + arctan(a)/π`.
///
/// `None` for other families and at the Gamma atom `a = 0`.
pub fn closed_form_bddf(desc: &FamilyDescriptor, a: f64) -> Result<Option<f64>> {
    match desc.params {
        FamilyParams::Gamma { alpha, lambda } => {
            if a < 0.0 {
                return Ok(Some(0.0));
            }
            if a == 0.0 {
                return Ok(None);
            }
            let upper = 2.0 * (alpha * lambda * a).sqrt();
            let integrand = |w: f64| -> Result<f64> {
                if w == 0.0 {
                    return Ok(0.0);
                }
                let i1 = bessel_i_scaled(1.0, Complex64::new(w, 0.0))?.re;
                Ok(i1 * (w - w * w / (4.0 * alpha)).exp())
            };
            let r = integrate(integrand, 0.0, upper, 1e-13, 4000)?;
            let atom = (-alpha).exp();
            Ok(Some((atom + atom * r.value).clamp(0.0, 1.0)))
        }
        FamilyParams::StudentT { nu: 0.5 } => Ok(Some(0.5 + a.atan() / PI)),
        _ => Ok(None),
    }
}

/// `P(Σ_{k=1}^{N} E_k ≤ a)` with `N ~ Poisson(α)` and `E_k ~ Exp(λ)`, i.e.
/// `e^{−α} [1 + Σ_n αⁿ/n! · P(n, λa)]`, summed until the Poisson tail is
/// below `1e-12`. Gamma(α, λ) and ChiSquare(n) (α = n/2, λ = 1/2), `a > 0`.
pub fn bddf_compound_poisson_oracle(desc: &FamilyDescriptor, a: f64) -> Result<f64> {
    let (alpha, lambda) = match desc.params {
        FamilyParams::Gamma { alpha, lambda } => (alpha, lambda),
        FamilyParams::ChiSquare { n } => (0.5 * n, 0.5),
        _ => {
            return Err(Error::Unsupported(format!(
                "compound Poisson oracle is only defined for gamma and chi-square, not {}",
                desc.id
            )))
        }
    };
    if !(a > 0.0 && a.is_finite()) {
        return Err(Error::Domain {
            function: "bddf_compound_poisson_oracle",
            detail: format!("requires a > 0, got {a}"),
        });
    }
    let mut weight = (-alpha).exp();
    let mut cumulative = weight;
    let mut value = weight;
    let mut n = 0usize;
    while 1.0 - cumulative > 1e-12 || (n as f64) < alpha {
        n += 1;
        weight *= alpha / n as f64;
        cumulative += weight;
        value += weight * regularized_gamma_p(n as f64, lambda * a)?;
        if n > 100_000 {
            break;
        }
    }
    Ok(value.clamp(0.0, 1.0))
}
