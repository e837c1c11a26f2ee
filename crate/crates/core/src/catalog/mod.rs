//! Registry of selfdecomposable families: parameters, `log φ_X`, the
//! background-driving exponent `η(t) = t (log φ_X)'(t)`, atoms of the driving
//! law and the closed forms available for a few members.

mod closed;
mod exponent;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use closed::{bddf_compound_poisson_oracle, closed_form_bddf};
pub use exponent::{bdcf_exponent, log_cf};

/// Family identifiers. `name()` gives the stable kebab-case id.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyId {
    Gamma,
    ChiSquare,
    LogGamma,
    InverseGamma,
    HyperbolicCosine,
    HyperbolicSine,
    HyperbolicTangent,
    BesselZeroSeries,
    StudentT,
    StochasticArea,
    GeneralizedStochasticArea,
    InverseGaussian,
    #[serde(rename = "quadratic-bm")]
    QuadraticBM,
    Logistic,
    NoncentralChiSquare,
    BesselH,
    FisherZ,
}

impl FamilyId {
    pub const ALL: [FamilyId; 17] = [
        FamilyId::Gamma,
        FamilyId::ChiSquare,
        FamilyId::LogGamma,
        FamilyId::InverseGamma,
        FamilyId::HyperbolicCosine,
        FamilyId::HyperbolicSine,
        FamilyId::HyperbolicTangent,
        FamilyId::BesselZeroSeries,
        FamilyId::StudentT,
        FamilyId::StochasticArea,
        FamilyId::GeneralizedStochasticArea,
        FamilyId::InverseGaussian,
        FamilyId::QuadraticBM,
        FamilyId::Logistic,
        FamilyId::NoncentralChiSquare,
        FamilyId::BesselH,
        FamilyId::FisherZ,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyId::Gamma => "gamma",
            FamilyId::ChiSquare => "chi-square",
            FamilyId::LogGamma => "log-gamma",
            FamilyId::InverseGamma => "inverse-gamma",
            FamilyId::HyperbolicCosine => "hyperbolic-cosine",
            FamilyId::HyperbolicSine => "hyperbolic-sine",
            FamilyId::HyperbolicTangent => "hyperbolic-tangent",
            FamilyId::BesselZeroSeries => "bessel-zero-series",
            FamilyId::StudentT => "student-t",
            FamilyId::StochasticArea => "stochastic-area",
            FamilyId::GeneralizedStochasticArea => "generalized-stochastic-area",
            FamilyId::InverseGaussian => "inverse-gaussian",
            FamilyId::QuadraticBM => "quadratic-bm",
            FamilyId::Logistic => "logistic",
            FamilyId::NoncentralChiSquare => "noncentral-chi-square",
            FamilyId::BesselH => "bessel-h",
            FamilyId::FisherZ => "fisher-z",
        }
    }

    /// Parameter names accepted by [`FamilyParams::from_named`], in order.
    pub fn param_names(self) -> &'static [&'static str] {
        match self {
            FamilyId::Gamma | FamilyId::LogGamma | FamilyId::InverseGamma => &["alpha", "lambda"],
            FamilyId::ChiSquare => &["n"],
            FamilyId::HyperbolicCosine
            | FamilyId::HyperbolicSine
            | FamilyId::HyperbolicTangent
            | FamilyId::StochasticArea => &[],
            FamilyId::BesselZeroSeries
            | FamilyId::StudentT
            | FamilyId::GeneralizedStochasticArea
            | FamilyId::BesselH => &["nu"],
            FamilyId::InverseGaussian => &["lambda", "mu"],
            FamilyId::QuadraticBM | FamilyId::Logistic => &["a", "b"],
            FamilyId::NoncentralChiSquare => &["k", "c"],
            FamilyId::FisherZ => &["alpha1", "alpha2"],
        }
    }

    /// `φ_X` real and even.
    pub fn is_symmetric(self) -> bool {
        matches!(
            self,
            FamilyId::HyperbolicCosine
                | FamilyId::HyperbolicSine
                | FamilyId::HyperbolicTangent
                | FamilyId::BesselZeroSeries
                | FamilyId::StudentT
                | FamilyId::StochasticArea
                | FamilyId::GeneralizedStochasticArea
        )
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FamilyId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::UnknownFamily(s.to_string()))
    }
}

/// Parameters of one family instance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum FamilyParams {
    /// Shape `alpha`, rate `lambda`.
    Gamma { alpha: f64, lambda: f64 },
    /// `n` degrees of freedom.
    ChiSquare { n: f64 },
    /// Law of `log γ_{α,λ}`.
    LogGamma { alpha: f64, lambda: f64 },
    /// Law of `1/γ_{α,λ}`.
    InverseGamma { alpha: f64, lambda: f64 },
    HyperbolicCosine,
    HyperbolicSine,
    HyperbolicTangent,
    /// `X_ν = Σ η_k / j_{ν,k}` with standard Laplace `η_k`.
    BesselZeroSeries { nu: f64 },
    /// Student t with `2ν` degrees of freedom scaled to `φ(t) ∝ (√(2ν)|t|)^ν K_ν(√(2ν)|t|)`.
    StudentT { nu: f64 },
    StochasticArea,
    /// `ν = p + 1/2`.
    GeneralizedStochasticArea { nu: f64 },
    /// Inverse Gaussian with shape `lambda`, mean `mu`.
    InverseGaussian { lambda: f64, mu: f64 },
    /// `N · (∫₀¹ (W_s + b s + a)² ds)^{1/2}`.
    #[serde(rename = "quadratic-bm")]
    QuadraticBM { a: f64, b: f64 },
    /// Location `a`, standard deviation `b`.
    Logistic { a: f64, b: f64 },
    /// `k` degrees of freedom, noncentrality `c`.
    NoncentralChiSquare { k: f64, c: f64 },
    /// `φ(t) = [1 − it − √((1−it)² − 1)]^ν`.
    BesselH { nu: f64 },
    /// The scaled variable `2z(2α₁, 2α₂)`.
    FisherZ { alpha1: f64, alpha2: f64 },
}

fn lookup(id: FamilyId, named: &[(&str, f64)], key: &'static str) -> Result<f64> {
    let mut found = None;
    for (name, value) in named {
        if *name == key {
            if found.is_some() {
                return Err(Error::InvalidParameter {
                    family: id.name(),
                    constraint: format!("parameter `{key}` given more than once"),
                });
            }
            found = Some(*value);
        }
    }
    found.ok_or_else(|| Error::InvalidParameter {
        family: id.name(),
        constraint: format!("missing parameter `{key}`"),
    })
}

impl FamilyParams {
    pub fn id(&self) -> FamilyId {
        match self {
            FamilyParams::Gamma { .. } => FamilyId::Gamma,
            FamilyParams::ChiSquare { .. } => FamilyId::ChiSquare,
            FamilyParams::LogGamma { .. } => FamilyId::LogGamma,
            FamilyParams::InverseGamma { .. } => FamilyId::InverseGamma,
            FamilyParams::HyperbolicCosine => FamilyId::HyperbolicCosine,
            FamilyParams::HyperbolicSine => FamilyId::HyperbolicSine,
            FamilyParams::HyperbolicTangent => FamilyId::HyperbolicTangent,
            FamilyParams::BesselZeroSeries { .. } => FamilyId::BesselZeroSeries,
            FamilyParams::StudentT { .. } => FamilyId::StudentT,
            FamilyParams::StochasticArea => FamilyId::StochasticArea,
            FamilyParams::GeneralizedStochasticArea { .. } => FamilyId::GeneralizedStochasticArea,
            FamilyParams::InverseGaussian { .. } => FamilyId::InverseGaussian,
            FamilyParams::QuadraticBM { .. } => FamilyId::QuadraticBM,
            FamilyParams::Logistic { .. } => FamilyId::Logistic,
            FamilyParams::NoncentralChiSquare { .. } => FamilyId::NoncentralChiSquare,
            FamilyParams::BesselH { .. } => FamilyId::BesselH,
            FamilyParams::FisherZ { .. } => FamilyId::FisherZ,
        }
    }

    /// Builds parameters from `name=value` pairs; every name listed by
    /// [`FamilyId::param_names`] is required and unknown names are rejected.
    pub fn from_named(id: FamilyId, named: &[(&str, f64)]) -> Result<Self> {
        let allowed = id.param_names();
        if let Some((bad, _)) = named.iter().find(|(n, _)| !allowed.contains(n)) {
            return Err(Error::InvalidParameter {
                family: id.name(),
                constraint: format!(
                    "unknown parameter `{bad}` (expected: {})",
                    if allowed.is_empty() { "none".to_string() } else { allowed.join(", ") }
                ),
            });
        }
        let get = |key| lookup(id, named, key);
        Ok(match id {
            FamilyId::Gamma => FamilyParams::Gamma { alpha: get("alpha")?, lambda: get("lambda")? },
            FamilyId::ChiSquare => FamilyParams::ChiSquare { n: get("n")? },
            FamilyId::LogGamma => FamilyParams::LogGamma { alpha: get("alpha")?, lambda: get("lambda")? },
            FamilyId::InverseGamma => FamilyParams::InverseGamma { alpha: get("alpha")?, lambda: get("lambda")? },
            FamilyId::HyperbolicCosine => FamilyParams::HyperbolicCosine,
            FamilyId::HyperbolicSine => FamilyParams::HyperbolicSine,
            FamilyId::HyperbolicTangent => FamilyParams::HyperbolicTangent,
            FamilyId::BesselZeroSeries => FamilyParams::BesselZeroSeries { nu: get("nu")? },
            FamilyId::StudentT => FamilyParams::StudentT { nu: get("nu")? },
            FamilyId::StochasticArea => FamilyParams::StochasticArea,
            FamilyId::GeneralizedStochasticArea => FamilyParams::GeneralizedStochasticArea { nu: get("nu")? },
            FamilyId::InverseGaussian => FamilyParams::InverseGaussian { lambda: get("lambda")?, mu: get("mu")? },
            FamilyId::QuadraticBM => FamilyParams::QuadraticBM { a: get("a")?, b: get("b")? },
            FamilyId::Logistic => FamilyParams::Logistic { a: get("a")?, b: get("b")? },
            FamilyId::NoncentralChiSquare => FamilyParams::NoncentralChiSquare { k: get("k")?, c: get("c")? },
            FamilyId::BesselH => FamilyParams::BesselH { nu: get("nu")? },
            FamilyId::FisherZ => FamilyParams::FisherZ { alpha1: get("alpha1")?, alpha2: get("alpha2")? },
        })
    }

    /// `(name, value)` pairs in [`FamilyId::param_names`] order.
    pub fn named(&self) -> Vec<(&'static str, f64)> {
        let values: Vec<f64> = match *self {
            FamilyParams::Gamma { alpha, lambda }
            | FamilyParams::LogGamma { alpha, lambda }
            | FamilyParams::InverseGamma { alpha, lambda } => vec![alpha, lambda],
            FamilyParams::ChiSquare { n } => vec![n],
            FamilyParams::HyperbolicCosine
            | FamilyParams::HyperbolicSine
            | FamilyParams::HyperbolicTangent
            | FamilyParams::StochasticArea => vec![],
            FamilyParams::BesselZeroSeries { nu }
            | FamilyParams::StudentT { nu }
            | FamilyParams::GeneralizedStochasticArea { nu }
            | FamilyParams::BesselH { nu } => vec![nu],
            FamilyParams::InverseGaussian { lambda, mu } => vec![lambda, mu],
            FamilyParams::QuadraticBM { a, b } | FamilyParams::Logistic { a, b } => vec![a, b],
            FamilyParams::NoncentralChiSquare { k, c } => vec![k, c],
            FamilyParams::FisherZ { alpha1, alpha2 } => vec![alpha1, alpha2],
        };
        self.id().param_names().iter().copied().zip(values).collect()
    }

    fn validate(&self) -> Result<()> {
        let family = self.id().name();
        let positive = |name: &str, v: f64| -> Result<()> {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(Error::InvalidParameter {
                    family,
                    constraint: format!("{name} > 0 (got {v})"),
                })
            }
        };
        let finite = |name: &str, v: f64| -> Result<()> {
            if v.is_finite() {
                Ok(())
            } else {
                Err(Error::InvalidParameter {
                    family,
                    constraint: format!("{name} finite (got {v})"),
                })
            }
        };
        match *self {
            FamilyParams::Logistic { a, b } => {
                finite("a", a)?;
                positive("b", b)
            }
            FamilyParams::QuadraticBM { a, b } => {
                finite("a", a)?;
                finite("b", b)
            }
            _ => {
                for (name, v) in self.named() {
                    positive(name, v)?;
                }
                Ok(())
            }
        }
    }
}

/// A validated family instance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FamilyDescriptor {
    pub id: FamilyId,
    pub params: FamilyParams,
    /// `φ_X` is real and even.
    pub symmetric: bool,
    /// Point mass of the driving law at 0, `exp(lim_{t→∞} Re η(t))`, when
    /// the driving process is compound Poisson.
    pub atom_mass_at_zero: Option<f64>,
    pub has_closed_form_bddf: bool,
}

/// Validates `params` and fills in the derived descriptor fields.
pub fn make_family(params: FamilyParams) -> Result<FamilyDescriptor> {
    params.validate()?;
    let id = params.id();
    let atom_mass_at_zero = match params {
        FamilyParams::Gamma { alpha, .. } => Some((-alpha).exp()),
        FamilyParams::ChiSquare { n } => Some((-0.5 * n).exp()),
        FamilyParams::HyperbolicTangent => Some((-1f64).exp()),
        FamilyParams::NoncentralChiSquare { k, .. } => Some((-0.5 * k).exp()),
        FamilyParams::BesselH { nu } => Some((-nu).exp()),
        _ => None,
    };
    let has_closed_form_bddf = match params {
        FamilyParams::Gamma { .. } => true,
        FamilyParams::StudentT { nu } => nu == 0.5,
        _ => false,
    };
    Ok(FamilyDescriptor {
        id,
        params,
        symmetric: id.is_symmetric(),
        atom_mass_at_zero,
        has_closed_form_bddf,
    })
}

impl FamilyDescriptor {
    pub fn new(params: FamilyParams) -> Result<Self> {
        make_family(params)
    }

    /// The parameterization used by the reference tables (for example
    /// Gamma(2, 1), Student t with ν = 2, BesselH with ν = 10).
    pub fn reference(id: FamilyId) -> Self {
        let params = match id {
            FamilyId::Gamma => FamilyParams::Gamma { alpha: 2.0, lambda: 1.0 },
            FamilyId::ChiSquare => FamilyParams::ChiSquare { n: 2.0 },
            FamilyId::LogGamma => FamilyParams::LogGamma { alpha: 2.0, lambda: 1.0 },
            FamilyId::InverseGamma => FamilyParams::InverseGamma { alpha: 2.0, lambda: 2.0 },
            FamilyId::HyperbolicCosine => FamilyParams::HyperbolicCosine,
            FamilyId::HyperbolicSine => FamilyParams::HyperbolicSine,
            FamilyId::HyperbolicTangent => FamilyParams::HyperbolicTangent,
            FamilyId::BesselZeroSeries => FamilyParams::BesselZeroSeries { nu: 2.0 },
            FamilyId::StudentT => FamilyParams::StudentT { nu: 2.0 },
            FamilyId::StochasticArea => FamilyParams::StochasticArea,
            FamilyId::GeneralizedStochasticArea => FamilyParams::GeneralizedStochasticArea { nu: 2.0 },
            FamilyId::InverseGaussian => FamilyParams::InverseGaussian { lambda: 1.0, mu: 1.0 },
            FamilyId::QuadraticBM => FamilyParams::QuadraticBM { a: 1.0, b: 2.0 },
            FamilyId::Logistic => FamilyParams::Logistic { a: 0.0, b: 1.0 },
            FamilyId::NoncentralChiSquare => FamilyParams::NoncentralChiSquare { k: 2.0, c: 1.0 },
            FamilyId::BesselH => FamilyParams::BesselH { nu: 10.0 },
            FamilyId::FisherZ => FamilyParams::FisherZ { alpha1: 1.0, alpha2: 2.0 },
        };
        make_family(params).expect("reference parameters are valid")
    }

    /// Parses `name=value` pairs for the family `id` and validates them.
    pub fn from_named(id: FamilyId, named: &[(&str, f64)]) -> Result<Self> {
        make_family(FamilyParams::from_named(id, named)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for id in FamilyId::ALL {
            assert_eq!(id.name().parse::<FamilyId>().unwrap(), id);
        }
        assert!(matches!("gama".parse::<FamilyId>(), Err(Error::UnknownFamily(_))));
        for id in FamilyId::ALL {
            assert_eq!(serde_json::to_value(id).unwrap(), id.name());
            let p = FamilyDescriptor::reference(id).params;
            assert_eq!(serde_json::to_value(p).unwrap()["family"], id.name());
        }
    }

    #[test]
    fn descriptor_examples() {
        let g = make_family(FamilyParams::Gamma { alpha: 2.0, lambda: 1.0 }).unwrap();
        assert!(!g.symmetric);
        assert_eq!(g.atom_mass_at_zero, Some((-2f64).exp()));
        let t = make_family(FamilyParams::StudentT { nu: 2.0 }).unwrap();
        assert!(t.symmetric);
        assert_eq!(t.atom_mass_at_zero, None);
        let err = make_family(FamilyParams::Gamma { alpha: -1.0, lambda: 1.0 }).unwrap_err();
        assert!(err.to_string().contains("alpha > 0"), "{err}");
    }

    #[test]
    fn named_parameters() {
        let d = FamilyDescriptor::from_named(FamilyId::NoncentralChiSquare, &[("c", 1.0), ("k", 2.0)]).unwrap();
        assert_eq!(d.params, FamilyParams::NoncentralChiSquare { k: 2.0, c: 1.0 });
        assert_eq!(d.params.named(), vec![("k", 2.0), ("c", 1.0)]);
        assert!(FamilyDescriptor::from_named(FamilyId::Gamma, &[("alpha", 2.0)]).is_err());
        assert!(FamilyDescriptor::from_named(FamilyId::HyperbolicSine, &[("nu", 2.0)]).is_err());
        assert!(FamilyDescriptor::from_named(FamilyId::Logistic, &[("a", -3.0), ("b", 1.0)]).is_ok());
        assert!(FamilyDescriptor::from_named(FamilyId::Logistic, &[("a", 0.0), ("b", 0.0)]).is_err());
    }

    #[test]
    fn symmetric_set() {
        let count = FamilyId::ALL.iter().filter(|id| id.is_symmetric()).count();
        assert_eq!(count, 7);
    }
}
