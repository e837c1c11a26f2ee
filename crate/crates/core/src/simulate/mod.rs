//! Seeded samplers and the goodness-of-fit tools used to check them.
//!
//! Every draw `i` of a batch uses its own ChaCha8 stream `i` under the batch
//! seed, so batches are bit-identical regardless of thread count.

use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::catalog::{FamilyDescriptor, FamilyId, FamilyParams};
use crate::error::{Error, Result};
use crate::format::sig9;
use crate::inversion::{cdf_of_x, QuadratureConfig};

mod samplers;

pub use samplers::{
    sample_bdrv, sample_q_path, sample_x_exact, sample_x_series, sample_x_shot_noise, DEFAULT_PATH_STEPS,
    DEFAULT_SERIES_TERMS,
};

/// Seed of the per-draw ChaCha8 streams.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RngSeed(pub u64);

impl RngSeed {
    /// Generator for draw `index`.
    pub fn stream(self, index: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.0);
        rng.set_stream(index);
        rng
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SampleMethod {
    Exact,
    CompoundPoissonBdrv,
    ShotNoise,
    LaplaceSeries,
    RatioIdentity,
    PathDiscretized,
}

impl SampleMethod {
    pub const ALL: [SampleMethod; 6] = [
        SampleMethod::Exact,
        SampleMethod::CompoundPoissonBdrv,
        SampleMethod::ShotNoise,
        SampleMethod::LaplaceSeries,
        SampleMethod::RatioIdentity,
        SampleMethod::PathDiscretized,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SampleMethod::Exact => "exact",
            SampleMethod::CompoundPoissonBdrv => "compound_poisson_bdrv",
            SampleMethod::ShotNoise => "shot_noise",
            SampleMethod::LaplaceSeries => "laplace_series",
            SampleMethod::RatioIdentity => "ratio_identity",
            SampleMethod::PathDiscretized => "path_discretized",
        }
    }

    /// Kebab-case spelling used on the command line.
    pub fn flag(self) -> &'static str {
        match self {
            SampleMethod::Exact => "exact",
            SampleMethod::CompoundPoissonBdrv => "compound-poisson-bdrv",
            SampleMethod::ShotNoise => "shot-noise",
            SampleMethod::LaplaceSeries => "laplace-series",
            SampleMethod::RatioIdentity => "ratio-identity",
            SampleMethod::PathDiscretized => "path-discretized",
        }
    }
}

/// Accepts the snake-case and kebab-case spellings, and `bdrv`.
impl FromStr for SampleMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "bdrv" {
            return Ok(SampleMethod::CompoundPoissonBdrv);
        }
        SampleMethod::ALL
            .into_iter()
            .find(|m| m.name() == s || m.flag() == s)
            .ok_or_else(|| Error::Unsupported(format!("unknown sampling method `{s}`")))
    }
}

/// Methods available for each family.
pub fn supported_methods(id: FamilyId) -> &'static [SampleMethod] {
    use SampleMethod::*;
    match id {
        FamilyId::Gamma | FamilyId::ChiSquare => &[Exact, ShotNoise, CompoundPoissonBdrv],
        FamilyId::LogGamma | FamilyId::InverseGamma | FamilyId::InverseGaussian | FamilyId::StudentT => &[Exact],
        FamilyId::HyperbolicSine => &[RatioIdentity, LaplaceSeries],
        FamilyId::FisherZ => &[RatioIdentity],
        FamilyId::HyperbolicCosine | FamilyId::BesselZeroSeries => &[LaplaceSeries],
        FamilyId::QuadraticBM => &[PathDiscretized],
        _ => &[],
    }
}

/// Method-specific knobs of [`sample`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleOptions {
    pub terms: usize,
    /// Shot-noise horizon; `None` picks the default of [`sample_x_shot_noise`].
    pub horizon: Option<f64>,
    pub steps: usize,
}

impl Default for SampleOptions {
    fn default() -> Self {
        SampleOptions {
            terms: DEFAULT_SERIES_TERMS,
            horizon: None,
            steps: DEFAULT_PATH_STEPS,
        }
    }
}

/// Draws `n` values of `desc` with `method`. Pairs missing from
/// [`supported_methods`] are rejected with a message naming the alternatives.
pub fn sample(
    desc: &FamilyDescriptor,
    method: SampleMethod,
    n: usize,
    seed: RngSeed,
    opts: &SampleOptions,
) -> Result<SampleBatch> {
    let supported = supported_methods(desc.id);
    if !supported.contains(&method) {
        let list: Vec<&str> = supported.iter().map(|m| m.flag()).collect();
        return Err(Error::Unsupported(format!(
            "method {} is not available for {}; supported: {}",
            method.flag(),
            desc.id,
            if list.is_empty() { "none".to_string() } else { list.join(", ") }
        )));
    }
    match (method, desc.params) {
        (SampleMethod::Exact | SampleMethod::RatioIdentity, _) => sample_x_exact(desc, n, seed),
        (SampleMethod::ShotNoise, _) => sample_x_shot_noise(desc, n, seed, opts.horizon),
        (SampleMethod::CompoundPoissonBdrv, _) => sample_bdrv(desc, n, seed),
        (SampleMethod::LaplaceSeries, _) => sample_x_series(desc, n, opts.terms, seed),
        (SampleMethod::PathDiscretized, FamilyParams::QuadraticBM { a, b }) => sample_q_path(a, b, n, opts.steps, seed),
        (SampleMethod::PathDiscretized, _) => unreachable!("path_discretized is registered for quadratic-bm only"),
    }
}

/// What was cut off to make a sampler finite.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum TruncationMeta {
    /// Poisson arrivals beyond `horizon` dropped; the mean of the dropped
    /// part is at most `bias_bound`.
    Horizon { horizon: f64, bias_bound: f64 },
    /// Series cut after `terms`; variance of the dropped terms.
    Terms { terms: usize, tail_variance: f64 },
    /// Brownian path on `steps` increments, trapezoid rule.
    Steps { steps: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleBatch {
    pub values: Vec<f64>,
    pub family: FamilyId,
    pub method: SampleMethod,
    pub n: usize,
    pub seed: RngSeed,
    pub truncation_meta: Option<TruncationMeta>,
}

impl SampleBatch {
    pub(crate) fn generate<F>(
        family: FamilyId,
        method: SampleMethod,
        n: usize,
        seed: RngSeed,
        truncation_meta: Option<TruncationMeta>,
        draw: F,
    ) -> Result<Self>
    where
        F: Fn(&mut ChaCha8Rng) -> f64 + Sync,
    {
        if n == 0 {
            return Err(Error::Domain {
                function: "sample",
                detail: "n must be at least 1".into(),
            });
        }
        let values: Vec<f64> = (0..n as u64)
            .into_par_iter()
            .map(|i| draw(&mut seed.stream(i)))
            .collect();
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite { function: "sample" });
        }
        Ok(SampleBatch {
            values,
            family,
            method,
            n,
            seed,
            truncation_meta,
        })
    }

    /// Single-column CSV with a leading `# family=… method=… n=… seed=…` line.
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(self.values.len() * 14 + 64);
        let _ = writeln!(
            out,
            "# family={} method={} n={} seed={}",
            self.family,
            self.method.name(),
            self.n,
            self.seed.0
        );
        out.push_str("value\n");
        for v in &self.values {
            out.push_str(&sig9(*v));
            out.push('\n');
        }
        out
    }

    pub fn write_csv(&self, path: &Path) -> std::io::Result<()> {
        std::fs::write(path, self.to_csv())
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.n as f64
    }

    pub fn std_dev(&self) -> f64 {
        let m = self.mean();
        let ss: f64 = self.values.iter().map(|v| (v - m) * (v - m)).sum();
        (ss / (self.n.max(2) - 1) as f64).sqrt()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KsResult {
    pub statistic: f64,
    pub n: usize,
    /// `1.358/√n`, the 95% band of the one-sample statistic.
    pub threshold_095: f64,
}

impl KsResult {
    pub fn passes_095(&self) -> bool {
        self.statistic <= self.threshold_095
    }
}

/// One-sample Kolmogorov–Smirnov statistic of `values` against `cdf`.
pub fn ks_statistic_values<F: Fn(f64) -> f64>(values: &[f64], cdf: F) -> KsResult {
    let n = values.len();
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let nf = n as f64;
    let mut d = 0.0f64;
    for (i, &x) in sorted.iter().enumerate() {
        let f = cdf(x);
        d = d.max((i + 1) as f64 / nf - f).max(f - i as f64 / nf);
    }
    KsResult {
        statistic: d.clamp(0.0, 1.0),
        n,
        threshold_095: 1.358 / nf.sqrt(),
    }
}

pub fn ks_statistic<F: Fn(f64) -> f64>(batch: &SampleBatch, cdf: F) -> KsResult {
    ks_statistic_values(&batch.values, cdf)
}

/// Two-sample Kolmogorov–Smirnov statistic `sup |F_x − F_y|`.
pub fn two_sample_ks(x: &[f64], y: &[f64]) -> f64 {
    let mut a = x.to_vec();
    let mut b = y.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0, 0);
    let mut d = 0.0f64;
    while i < a.len() && j < b.len() {
        let v = a[i].min(b[j]);
        while i < a.len() && a[i] <= v {
            i += 1;
        }
        while j < b.len() && b[j] <= v {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    d
}

/// `(1/n) Σ e^{itx_j}`.
pub fn empirical_cf(batch: &SampleBatch, t: f64) -> Complex64 {
    empirical_cf_values(&batch.values, t)
}

pub fn empirical_cf_values(values: &[f64], t: f64) -> Complex64 {
    let (mut re, mut im) = (0.0, 0.0);
    for &x in values {
        let (s, c) = (t * x).sin_cos();
        re += c;
        im += s;
    }
    let n = values.len() as f64;
    Complex64::new(re / n, im / n)
}

/// CDF of X tabulated by inversion on a uniform grid and interpolated
/// linearly; 0 and 1 outside the grid.
#[derive(Debug, Clone)]
pub struct GridCdf {
    lo: f64,
    step: f64,
    values: Vec<f64>,
}

impl GridCdf {
    pub fn new(desc: &FamilyDescriptor, lo: f64, hi: f64, points: usize, cfg: &QuadratureConfig) -> Result<Self> {
        if !(hi > lo) || points < 2 {
            return Err(Error::Domain {
                function: "GridCdf::new",
                detail: format!("need lo < hi and at least 2 points, got [{lo}, {hi}] with {points}"),
            });
        }
        let step = (hi - lo) / (points - 1) as f64;
        let values = (0..points)
            .into_par_iter()
            .map(|k| cdf_of_x(desc, lo + step * k as f64, cfg).map(|r| r.value))
            .collect::<Result<Vec<f64>>>()?;
        Ok(GridCdf { lo, step, values })
    }

    pub fn eval(&self, x: f64) -> f64 {
        let u = (x - self.lo) / self.step;
        if u <= 0.0 {
            return if u == 0.0 { self.values[0] } else { 0.0 };
        }
        let last = self.values.len() - 1;
        if u >= last as f64 {
            return if u == last as f64 { self.values[last] } else { 1.0 };
        }
        let k = u.floor() as usize;
        let w = u - k as f64;
        self.values[k] * (1.0 - w) + self.values[k + 1] * w
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ks_of_uniform_order_statistics() {
        let u = [0.05, 0.3, 0.42, 0.77, 0.9];
        let r = ks_statistic_values(&u, |x| x);
        let n = 5.0;
        let expect = u
            .iter()
            .enumerate()
            .map(|(i, &x)| ((i + 1) as f64 / n - x).max(x - i as f64 / n))
            .fold(0.0, f64::max);
        assert_eq!(r.statistic, expect);
        assert_eq!(r.n, 5);
    }

    #[test]
    fn ks_of_constant_batch() {
        let r = ks_statistic_values(&[0.5; 100], |x| x);
        assert_eq!(r.statistic, 0.5);
    }

    #[test]
    fn two_sample_ks_basics() {
        assert_eq!(two_sample_ks(&[1.0, 2.0, 3.0], &[1.0, 2.0, 3.0]), 0.0);
        assert_eq!(two_sample_ks(&[1.0, 2.0], &[3.0, 4.0]), 1.0);
        assert!((two_sample_ks(&[1.0, 3.0], &[2.0, 4.0]) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn empirical_cf_basics() {
        let v = [-1.5, 1.5, -0.2, 0.2];
        assert_eq!(empirical_cf_values(&v, 0.0), Complex64::new(1.0, 0.0));
        assert!(empirical_cf_values(&v, 0.7).im.abs() < 1e-16);
    }

    #[test]
    fn streams_differ_and_repeat() {
        use rand::Rng;
        let s = RngSeed(7);
        let a: u64 = s.stream(0).random();
        let b: u64 = s.stream(1).random();
        assert_ne!(a, b);
        assert_eq!(a, s.stream(0).random::<u64>());
    }

    #[test]
    fn method_names_parse() {
        for m in SampleMethod::ALL {
            assert_eq!(m.name().parse::<SampleMethod>().unwrap(), m);
            assert_eq!(m.flag().parse::<SampleMethod>().unwrap(), m);
        }
        assert_eq!("bdrv".parse::<SampleMethod>().unwrap(), SampleMethod::CompoundPoissonBdrv);
        assert!("magic".parse::<SampleMethod>().is_err());
    }

    #[test]
    fn registry_dispatch() {
        let opts = SampleOptions::default();
        for id in FamilyId::ALL {
            let d = FamilyDescriptor::reference(id);
            for m in SampleMethod::ALL {
                let r = sample(&d, m, 3, RngSeed(1), &SampleOptions { terms: 50, steps: 20, ..opts });
                if supported_methods(id).contains(&m) {
                    let b = r.unwrap();
                    assert_eq!((b.family, b.n), (id, 3));
                } else {
                    assert!(matches!(r, Err(Error::Unsupported(_))), "{id} {m:?}");
                }
            }
        }
        let err = sample(&FamilyDescriptor::reference(FamilyId::Gamma), SampleMethod::LaplaceSeries, 3, RngSeed(1), &opts)
            .unwrap_err()
            .to_string();
        assert!(err.contains("exact, shot-noise, compound-poisson-bdrv"), "{err}");
    }

    #[test]
    fn csv_header() {
        let b = SampleBatch {
            values: vec![1.0, 0.123456789012],
            family: FamilyId::Gamma,
            method: SampleMethod::Exact,
            n: 2,
            seed: RngSeed(42),
            truncation_meta: None,
        };
        assert_eq!(b.to_csv(), "# family=gamma method=exact n=2 seed=42\nvalue\n1\n0.123456789\n");
    }
}
