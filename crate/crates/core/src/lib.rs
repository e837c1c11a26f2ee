//! Background driving distribution functions (BDDF) of selfdecomposable laws.
//!
//! A selfdecomposable random variable `X` is the random integral
//! `X = ∫₀^∞ e^{-s} dY(s)` of a unique Lévy process `Y`. The law of `Y(1)`
//! (the background driving random variable) has characteristic function
//! `exp(η(t))` with `η(t) = t · (log φ_X)'(t)`. This crate evaluates `log φ_X`,
//! `η` and the distribution function of `Y(1)` for a catalog of classical
//! families, and provides samplers for the associated representations.
//!
//! Modules, bottom up:
//!
//! * [`specfun`]: complex log-gamma and digamma, modified Bessel `I_ν`/`K_ν`,
//!   Bessel-`I` ratios, zeros of `J_ν`, the regularized incomplete gamma.
//! * [`catalog`]: the family registry, `log φ_X`, `η` and closed forms.
//! * [`inversion`]: Gil–Pelaez inversion with oscillatory tail acceleration.
//! * [`simulate`]: seeded samplers, Kolmogorov–Smirnov and empirical CF tools.
//! * [`verify`]: the reference tables and identity checks run by `bddf verify`.

pub mod catalog;
pub mod error;
pub mod format;
pub mod inversion;
pub mod quad;
pub mod simulate;
pub mod specfun;
pub mod verify;

pub use catalog::{FamilyDescriptor, FamilyId, FamilyParams};
pub use error::{Error, Result};
pub use inversion::{CdfEstimate, QuadratureConfig};
pub use simulate::{KsResult, RngSeed, SampleBatch, SampleMethod, SampleOptions};
pub use specfun::ComplexScalar;
