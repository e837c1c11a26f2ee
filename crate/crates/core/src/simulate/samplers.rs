use std::f64::consts::PI;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{ChiSquared, Distribution, Exp, Exp1, Gamma, InverseGaussian, Poisson, StandardNormal, StudentT};

use super::{RngSeed, SampleBatch, SampleMethod, TruncationMeta};
use crate::catalog::{FamilyDescriptor, FamilyId, FamilyParams};
use crate::error::{Error, Result};
use crate::specfun::bessel_j_zeros;

pub const DEFAULT_SERIES_TERMS: usize = 2000;
pub const DEFAULT_PATH_STEPS: usize = 1000;

fn unsupported(op: &str, id: FamilyId) -> Error {
    Error::Unsupported(format!("{op} is not available for {id}"))
}

fn distr_err(e: impl std::fmt::Display) -> Error {
    Error::InvalidParameter {
        family: "sampler",
        constraint: e.to_string(),
    }
}

/// Rate α and jump rate λ of a compound-Poisson BDRV with exponential jumps.
fn compound_poisson(desc: &FamilyDescriptor, op: &str) -> Result<(f64, f64)> {
    match desc.params {
        FamilyParams::Gamma { alpha, lambda } => Ok((alpha, lambda)),
        FamilyParams::ChiSquare { n } => Ok((0.5 * n, 0.5)),
        _ => Err(unsupported(op, desc.id)),
    }
}

/// Draws of `Y(1) = Σ_{k ≤ N} E_k` with `N ~ Poisson(α)`, `E_k ~ Exp(λ)`.
pub fn sample_bdrv(desc: &FamilyDescriptor, n: usize, seed: RngSeed) -> Result<SampleBatch> {
    let (alpha, lambda) = compound_poisson(desc, "sample_bdrv")?;
    let count = Poisson::new(alpha).map_err(distr_err)?;
    let jump = Exp::new(lambda).map_err(distr_err)?;
    SampleBatch::generate(desc.id, SampleMethod::CompoundPoissonBdrv, n, seed, None, |rng| {
        let k = count.sample(rng) as u64;
        (0..k).map(|_| jump.sample(rng)).sum()
    })
}

/// Shot-noise draws of `X = ∫₀^∞ e^{−s} dY(s)`: `Σ_{T_k ≤ H} e^{−T_k} J_k` over
/// the arrivals of a rate-α Poisson process. `horizon` defaults to
/// `max(20/α, 20)`.
pub fn sample_x_shot_noise(
    desc: &FamilyDescriptor,
    n: usize,
    seed: RngSeed,
    horizon: Option<f64>,
) -> Result<SampleBatch> {
    let (alpha, lambda) = compound_poisson(desc, "sample_x_shot_noise")?;
    let h = horizon.unwrap_or((20.0 / alpha).max(20.0));
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::Domain {
            function: "sample_x_shot_noise",
            detail: format!("horizon must be positive, got {h}"),
        });
    }
    let gap = Exp::new(alpha).map_err(distr_err)?;
    let jump = Exp::new(lambda).map_err(distr_err)?;
    let meta = TruncationMeta::Horizon {
        horizon: h,
        bias_bound: (-h).exp() * alpha / lambda,
    };
    SampleBatch::generate(desc.id, SampleMethod::ShotNoise, n, seed, Some(meta), |rng| {
        let mut t = gap.sample(rng);
        let mut x = 0.0;
        while t <= h {
            x += (-t).exp() * jump.sample(rng);
            t += gap.sample(rng);
        }
        x
    })
}

fn laplace(rng: &mut ChaCha8Rng) -> f64 {
    let e: f64 = Exp1.sample(rng);
    if rng.random::<bool>() {
        e
    } else {
        -e
    }
}

/// Truncated Laplace series `Σ_{k ≤ n_terms} c_k η_k` with standard Laplace
/// `η_k`: `c_k = 2/(π(2k−1))` for Ĉ, `1/(πk)` for Ŝ and `1/j_{ν,k}` for the
/// Bessel-zero series.
pub fn sample_x_series(desc: &FamilyDescriptor, n: usize, n_terms: usize, seed: RngSeed) -> Result<SampleBatch> {
    if n_terms == 0 {
        return Err(Error::Domain {
            function: "sample_x_series",
            detail: "n_terms must be at least 1".into(),
        });
    }
    let (coef, tail_sq): (Vec<f64>, f64) = match desc.params {
        FamilyParams::HyperbolicCosine => {
            let c: Vec<f64> = (1..=n_terms).map(|k| 2.0 / (PI * (2 * k - 1) as f64)).collect();
            // Σ_{k>m} 1/(2k−1)² ≤ 1/(2(2m−1))
            (c, 4.0 / (PI * PI) / (2.0 * (2 * n_terms - 1) as f64))
        }
        FamilyParams::HyperbolicSine => {
            let c: Vec<f64> = (1..=n_terms).map(|k| 1.0 / (PI * k as f64)).collect();
            (c, 1.0 / (PI * PI * n_terms as f64))
        }
        FamilyParams::BesselZeroSeries { nu } => {
            let c: Vec<f64> = bessel_j_zeros(nu, n_terms)?.iter().map(|j| 1.0 / j).collect();
            // Rayleigh: Σ_k j_{ν,k}^{−2} = 1/(4(ν+1))
            let head: f64 = c.iter().map(|c| c * c).sum();
            (c, (0.25 / (nu + 1.0) - head).max(0.0))
        }
        _ => return Err(unsupported("sample_x_series", desc.id)),
    };
    let meta = TruncationMeta::Terms {
        terms: n_terms,
        tail_variance: 2.0 * tail_sq,
    };
    SampleBatch::generate(desc.id, SampleMethod::LaplaceSeries, n, seed, Some(meta), |rng| {
        // smallest coefficients first
        coef.iter().rev().map(|c| c * laplace(rng)).sum()
    })
}

/// Direct draws of X from gamma, normal and inverse-Gaussian generators.
/// Ŝ uses `(1/π) log(E₁/E₂)` and FisherZ `log(γ_{α₁,α₁}/γ_{α₂,α₂})`; those two
/// are tagged [`SampleMethod::RatioIdentity`].
pub fn sample_x_exact(desc: &FamilyDescriptor, n: usize, seed: RngSeed) -> Result<SampleBatch> {
    let id = desc.id;
    match desc.params {
        FamilyParams::Gamma { alpha, lambda } => {
            let g = Gamma::new(alpha, 1.0 / lambda).map_err(distr_err)?;
            SampleBatch::generate(id, SampleMethod::Exact, n, seed, None, |rng| g.sample(rng))
        }
        FamilyParams::ChiSquare { n: dof } => {
            let g = ChiSquared::new(dof).map_err(distr_err)?;
            SampleBatch::generate(id, SampleMethod::Exact, n, seed, None, |rng| g.sample(rng))
        }
        FamilyParams::LogGamma { alpha, lambda } => {
            let g = Gamma::new(alpha, 1.0 / lambda).map_err(distr_err)?;
            SampleBatch::generate(id, SampleMethod::Exact, n, seed, None, |rng| g.sample(rng).ln())
        }
        FamilyParams::InverseGamma { alpha, lambda } => {
            let g = Gamma::new(alpha, 1.0).map_err(distr_err)?;
            SampleBatch::generate(id, SampleMethod::Exact, n, seed, None, |rng| lambda / g.sample(rng))
        }
        FamilyParams::InverseGaussian { lambda, mu } => {
            let g = InverseGaussian::new(mu, lambda).map_err(distr_err)?;
            SampleBatch::generate(id, SampleMethod::Exact, n, seed, None, |rng| g.sample(rng))
        }
        FamilyParams::StudentT { nu } => {
            // φ with index ν is Student's t with 2ν degrees of freedom
            let g = StudentT::new(2.0 * nu).map_err(distr_err)?;
            SampleBatch::generate(id, SampleMethod::Exact, n, seed, None, |rng| g.sample(rng))
        }
        FamilyParams::HyperbolicSine => SampleBatch::generate(id, SampleMethod::RatioIdentity, n, seed, None, |rng| {
            let e1: f64 = Exp1.sample(rng);
            let e2: f64 = Exp1.sample(rng);
            (e1 / e2).ln() / PI
        }),
        FamilyParams::FisherZ { alpha1, alpha2 } => {
            let g1 = Gamma::new(alpha1, 1.0 / alpha1).map_err(distr_err)?;
            let g2 = Gamma::new(alpha2, 1.0 / alpha2).map_err(distr_err)?;
            SampleBatch::generate(id, SampleMethod::RatioIdentity, n, seed, None, |rng| {
                let x = g1.sample(rng);
                let y = g2.sample(rng);
                x.ln() - y.ln()
            })
        }
        _ => Err(unsupported("sample_x_exact", id)),
    }
}

/// `Q(a, b) = N · (∫₀¹ (W_s + bs + a)² ds)^{1/2}` with the integral taken by
/// the trapezoid rule on `m_steps` Brownian increments. The discretization
/// bias of the integral is O(1/m_steps).
pub fn sample_q_path(a: f64, b: f64, n: usize, m_steps: usize, seed: RngSeed) -> Result<SampleBatch> {
    if !(a.is_finite() && b.is_finite()) || m_steps == 0 {
        return Err(Error::Domain {
            function: "sample_q_path",
            detail: format!("need finite a, b and m_steps ≥ 1, got a={a}, b={b}, m_steps={m_steps}"),
        });
    }
    let dt = 1.0 / m_steps as f64;
    let sd = dt.sqrt();
    let meta = TruncationMeta::Steps { steps: m_steps };
    SampleBatch::generate(FamilyId::QuadraticBM, SampleMethod::PathDiscretized, n, seed, Some(meta), |rng| {
        let mut w = 0.0;
        let mut prev = a * a;
        let mut acc = 0.0;
        for k in 1..=m_steps {
            let z: f64 = StandardNormal.sample(rng);
            w += sd * z;
            let y = w + b * k as f64 * dt + a;
            let cur = y * y;
            acc += 0.5 * (prev + cur);
            prev = cur;
        }
        let n: f64 = StandardNormal.sample(rng);
        n * (acc * dt).sqrt()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unsupported_families_are_rejected() {
        let d = FamilyDescriptor::reference(FamilyId::BesselH);
        assert!(matches!(sample_bdrv(&d, 10, RngSeed(1)), Err(Error::Unsupported(_))));
        assert!(sample_x_exact(&d, 10, RngSeed(1)).is_err());
        assert!(sample_x_series(&d, 10, 100, RngSeed(1)).is_err());
        assert!(sample_x_shot_noise(&d, 10, RngSeed(1), None).is_err());
    }

    #[test]
    fn zero_draws_rejected() {
        let d = FamilyDescriptor::reference(FamilyId::Gamma);
        assert!(sample_x_exact(&d, 0, RngSeed(1)).is_err());
    }

    #[test]
    fn series_tail_variance_bessel_zero() {
        let d = FamilyDescriptor::reference(FamilyId::BesselZeroSeries);
        let b = sample_x_series(&d, 4, 100, RngSeed(3)).unwrap();
        match b.truncation_meta {
            Some(TruncationMeta::Terms { terms, tail_variance }) => {
                assert_eq!(terms, 100);
                // j_{2,k} ≈ πk: tail ≈ 2/(π² · 100)
                assert!(tail_variance > 1e-3 && tail_variance < 3e-3, "{tail_variance}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn shot_noise_default_horizon() {
        let d = FamilyDescriptor::reference(FamilyId::Gamma);
        let b = sample_x_shot_noise(&d, 3, RngSeed(5), None).unwrap();
        match b.truncation_meta {
            Some(TruncationMeta::Horizon { horizon, bias_bound }) => {
                assert_eq!(horizon, 20.0);
                assert!((bias_bound - 2.0 * (-20f64).exp()).abs() < 1e-20);
            }
            other => panic!("{other:?}"),
        }
    }
}
