//! `log φ_X(t)` and `η(t) = t (log φ_X)'(t)` for every family.
//!
//! Everything is evaluated for `t > 0` and extended by `f(−t) = conj f(t)`.
//! Logs are composed from principal logs of factors that stay off the branch
//! cut, which makes `log φ_X` continuous on each half-line.

use num_complex::Complex64;

use super::{FamilyDescriptor, FamilyParams};
use crate::error::Result;
use crate::specfun::{
    bessel_i_ratio, bessel_k_ratio, digamma, ln_gamma, log_bessel_i_reduced, log_bessel_k, log_gamma,
};

type C = Complex64;

fn real(v: f64) -> C {
    C::new(v, 0.0)
}

fn i_times(t: f64) -> C {
    C::new(0.0, t)
}

/// `log cosh t`, overflow-free.
fn log_cosh(t: f64) -> f64 {
    let t = t.abs();
    t + (-2.0 * t).exp().ln_1p() - std::f64::consts::LN_2
}

/// `log(t / sinh t)`.
fn log_t_over_sinh(t: f64) -> f64 {
    let t = t.abs();
    if t < 1e-4 {
        let t2 = t * t;
        -t2 / 6.0 + t2 * t2 / 180.0
    } else if t < 20.0 {
        (t / t.sinh()).ln()
    } else {
        t.ln() - t + std::f64::consts::LN_2 - (-(-2.0 * t).exp()).ln_1p()
    }
}

/// `1 − t coth t`.
fn one_minus_t_coth(t: f64) -> f64 {
    let t = t.abs();
    if t < 1e-2 {
        let t2 = t * t;
        -t2 / 3.0 + t2 * t2 / 45.0 - 2.0 * t2 * t2 * t2 / 945.0
    } else {
        1.0 - t / t.tanh()
    }
}

/// `x / sinh x`, underflowing gracefully to 0.
fn x_over_sinh(x: f64) -> f64 {
    let x = x.abs();
    if x < 1e-8 {
        1.0
    } else if x > 700.0 {
        2.0 * x * (-x).exp()
    } else {
        x / x.sinh()
    }
}

/// `sech t`, overflow-free.
fn sech(t: f64) -> f64 {
    let e = (-t.abs()).exp();
    2.0 * e / (1.0 + e * e)
}

/// `tanh t / t`.
fn tanh_over_t(t: f64) -> f64 {
    if t.abs() < 1e-8 {
        1.0
    } else {
        t.tanh() / t
    }
}

impl FamilyDescriptor {
    /// `log φ_X(t)`, with `log φ_X(0) = 0`.
    pub fn log_cf(&self, t: f64) -> Result<C> {
        if t == 0.0 {
            return Ok(real(0.0));
        }
        if t < 0.0 {
            return Ok(self.log_cf_pos(-t)?.conj());
        }
        self.log_cf_pos(t)
    }

    /// `η(t) = t (log φ_X)'(t)`, with `η(0) = 0`.
    pub fn bdcf_exponent(&self, t: f64) -> Result<C> {
        if t == 0.0 {
            return Ok(real(0.0));
        }
        if t < 0.0 {
            return Ok(self.eta_pos(-t)?.conj());
        }
        self.eta_pos(t)
    }

    /// Real part of `η` only; for symmetric families this is all of `η`.
    pub fn bdcf_exponent_real(&self, t: f64) -> Result<f64> {
        Ok(self.bdcf_exponent(t)?.re)
    }

    fn log_cf_pos(&self, t: f64) -> Result<C> {
        Ok(match self.params {
            FamilyParams::Gamma { alpha, lambda } => -alpha * C::new(1.0, -t / lambda).ln(),
            FamilyParams::ChiSquare { n } => -0.5 * n * C::new(1.0, -2.0 * t).ln(),
            FamilyParams::LogGamma { alpha, lambda } => {
                i_times(-t * lambda.ln()) + log_gamma(C::new(alpha, t))? - ln_gamma(alpha)
            }
            FamilyParams::InverseGamma { alpha, lambda } => {
                let z = 2.0 * C::new(0.0, -lambda * t).sqrt();
                std::f64::consts::LN_2 - ln_gamma(alpha) + alpha * (z * 0.5).ln() + log_bessel_k(alpha, z)?
            }
            FamilyParams::HyperbolicCosine => real(-log_cosh(t)),
            FamilyParams::HyperbolicSine => real(log_t_over_sinh(t)),
            FamilyParams::HyperbolicTangent => real(log_sinh_over_t(t) - log_cosh(t)),
            FamilyParams::BesselZeroSeries { nu } => real(-log_bessel_i_reduced(nu, t)?),
            FamilyParams::StudentT { nu } => {
                let x = (2.0 * nu).sqrt() * t;
                let k = log_bessel_k(nu, real(x))?.re;
                real((1.0 - nu) * std::f64::consts::LN_2 - ln_gamma(nu) + nu * x.ln() + k)
            }
            FamilyParams::StochasticArea => real(log_t_over_sinh(t) + one_minus_t_coth(t)),
            FamilyParams::GeneralizedStochasticArea { nu } => {
                let r1 = 1.0 / bessel_i_ratio(nu + 1.0, t)?;
                real(-log_bessel_i_reduced(nu, t)? - t * r1)
            }
            FamilyParams::InverseGaussian { lambda, mu } => {
                let x = i_times(2.0 * mu * mu * t / lambda);
                (lambda / mu) * x / (1.0 + (1.0 - x).sqrt())
            }
            FamilyParams::QuadraticBM { a, b } => {
                let th = t.tanh();
                real(
                    -0.5 * log_cosh(t) - 0.5 * a * a * t * th + 0.5 * b * b * (tanh_over_t(t) - 1.0)
                        + a * b * (sech(t) - 1.0),
                )
            }
            FamilyParams::Logistic { a, b } => {
                let s = b * 3f64.sqrt();
                C::new(log_t_over_sinh(s * t), t * a)
            }
            FamilyParams::NoncentralChiSquare { k, c } => {
                let w = C::new(1.0, -2.0 * t);
                i_times(t * c) / w - 0.5 * k * w.ln()
            }
            FamilyParams::BesselH { nu } => {
                let w = C::new(1.0, -t);
                let s = C::new(-t * t, -2.0 * t).sqrt();
                -nu * (w + s).ln()
            }
            FamilyParams::FisherZ { alpha1, alpha2 } => {
                i_times(t * (alpha2 / alpha1).ln()) + log_gamma(C::new(alpha1, t))? + log_gamma(C::new(alpha2, -t))?
                    - ln_gamma(alpha1)
                    - ln_gamma(alpha2)
            }
        })
    }

    fn eta_pos(&self, t: f64) -> Result<C> {
        Ok(match self.params {
            FamilyParams::Gamma { alpha, lambda } => {
                let u = i_times(t / lambda);
                alpha * u / (1.0 - u)
            }
            FamilyParams::ChiSquare { n } => {
                let u = i_times(2.0 * t);
                0.5 * n * u / (1.0 - u)
            }
            FamilyParams::LogGamma { alpha, lambda } => {
                i_times(t) * (digamma(C::new(alpha, t))? - lambda.ln())
            }
            FamilyParams::InverseGamma { alpha, lambda } => {
                let z = 2.0 * C::new(0.0, -lambda * t).sqrt();
                -0.5 * z * bessel_k_ratio(alpha, z)?
            }
            FamilyParams::HyperbolicCosine => real(-t * t.tanh()),
            FamilyParams::HyperbolicSine => real(one_minus_t_coth(t)),
            FamilyParams::HyperbolicTangent => real(x_over_sinh(2.0 * t) - 1.0),
            FamilyParams::BesselZeroSeries { nu } => {
                // 2ν − t I_{ν−1}/I_ν = −t I_{ν+1}/I_ν
                real(-t / bessel_i_ratio(nu + 1.0, t)?)
            }
            FamilyParams::StudentT { nu } => {
                let x = (2.0 * nu).sqrt() * t;
                real(-x * bessel_k_ratio(nu, real(x))?.re)
            }
            FamilyParams::StochasticArea => {
                let t2 = t * t;
                if t < 1e-2 {
                    real(-t2 + t2 * t2 / 9.0 - 2.0 * t2 * t2 * t2 / 135.0)
                } else {
                    let q = x_over_sinh(t);
                    real(1.0 - 2.0 * t / t.tanh() + q * q)
                }
            }
            FamilyParams::GeneralizedStochasticArea { nu } => {
                let r1 = 1.0 / bessel_i_ratio(nu + 1.0, t)?;
                real((2.0 * nu - 1.0) * t * r1 - t * t * (1.0 - r1) * (1.0 + r1))
            }
            FamilyParams::InverseGaussian { lambda, mu } => {
                let x = i_times(2.0 * mu * mu * t / lambda);
                i_times(mu * t) / (1.0 - x).sqrt()
            }
            FamilyParams::QuadraticBM { a, b } => {
                let th = t.tanh();
                let sh = sech(t);
                let sech2_minus_tanh_over_t = if t < 1e-3 {
                    let t2 = t * t;
                    -2.0 * t2 / 3.0 + 8.0 * t2 * t2 / 15.0
                } else {
                    sh * sh - th / t
                };
                real(
                    -0.5 * (1.0 + a * a) * t * th + 0.5 * b * b * sech2_minus_tanh_over_t
                        - 0.5 * a * a * t * t * sh * sh
                        - a * b * t * th * sh,
                )
            }
            FamilyParams::Logistic { a, b } => {
                let s = b * 3f64.sqrt();
                C::new(one_minus_t_coth(s * t), t * a)
            }
            FamilyParams::NoncentralChiSquare { k, c } => {
                let w = C::new(1.0, -2.0 * t);
                i_times(t) * (c / (w * w) + k / w)
            }
            FamilyParams::BesselH { nu } => {
                let it = i_times(t);
                i_times(nu) * (it / (2.0 - it)).sqrt()
            }
            FamilyParams::FisherZ { alpha1, alpha2 } => {
                i_times(t)
                    * ((alpha2 / alpha1).ln() + digamma(C::new(alpha1, t))? - digamma(C::new(alpha2, -t))?)
            }
        })
    }
}

/// `log(sinh t / t)`.
fn log_sinh_over_t(t: f64) -> f64 {
    -log_t_over_sinh(t)
}

/// Free-function form of [`FamilyDescriptor::log_cf`].
pub fn log_cf(desc: &FamilyDescriptor, t: f64) -> Result<C> {
    desc.log_cf(t)
}

/// Free-function form of [`FamilyDescriptor::bdcf_exponent`].
pub fn bdcf_exponent(desc: &FamilyDescriptor, t: f64) -> Result<C> {
    desc.bdcf_exponent(t)
}
