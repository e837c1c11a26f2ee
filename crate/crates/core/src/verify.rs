//! Reference tables and identity checks behind `bddf verify` and the
//! acceptance tests.
//!
//! Table tolerances follow the printed precision: `2e-3` for values printed
//! with at least four decimals, `6e-3` otherwise.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::Serialize;

use crate::catalog::{bddf_compound_poisson_oracle, closed_form_bddf, make_family, FamilyDescriptor, FamilyId, FamilyParams};
use crate::error::{Error, Result};
use crate::inversion::{bddf, bessel_transform_check, QuadratureConfig};
use crate::quad::integrate;
use crate::simulate::{
    ks_statistic, sample_bdrv, sample_x_exact, sample_x_series, sample_x_shot_noise, two_sample_ks, GridCdf, RngSeed,
    DEFAULT_SERIES_TERMS,
};
use crate::specfun::regularized_gamma_p;

/// One printed table of BDDF values.
#[derive(Debug, Clone, Serialize)]
pub struct ReferenceTable {
    pub criterion: u8,
    pub label: &'static str,
    pub family: FamilyParams,
    pub hard_truncation: Option<f64>,
    /// `(a, printed value)`.
    pub points: Vec<(f64, &'static str)>,
}

/// Printed values as numbers plus their count of decimals. A decimal comma is
/// accepted, and a leading `0` with no separator (`073103`) is read as `0.`.
pub fn parse_printed(s: &str) -> Result<(f64, usize)> {
    let s = s.trim().replace(',', ".");
    if let Some((mantissa, exp)) = s.split_once('e') {
        let v: f64 = s.parse().map_err(|_| Error::Unsupported(format!("unparseable table value {s}")))?;
        let decimals = mantissa.split_once('.').map_or(0, |(_, f)| f.len());
        let e: i32 = exp.parse().unwrap_or(0);
        return Ok((v, (decimals as i32 - e).max(0) as usize));
    }
    let fixed = if !s.contains('.') && s.len() > 1 && s.starts_with('0') {
        format!("0.{}", &s[1..])
    } else {
        s
    };
    let v: f64 = fixed
        .parse()
        .map_err(|_| Error::Unsupported(format!("unparseable table value {fixed}")))?;
    let decimals = fixed.split_once('.').map_or(0, |(_, f)| f.len());
    Ok((v, decimals))
}

pub fn table_tolerance(decimals: usize) -> f64 {
    if decimals >= 4 {
        2e-3
    } else {
        6e-3
    }
}

pub fn reference_tables() -> Vec<ReferenceTable> {
    use FamilyParams::*;
    let t = |criterion, label, family, points: Vec<(f64, &'static str)>| ReferenceTable {
        criterion,
        label,
        family,
        hard_truncation: None,
        points,
    };
    let mut v = vec![
        t(
            1,
            "gamma(2,1)",
            Gamma { alpha: 2.0, lambda: 1.0 },
            vec![
                (0.001, "0.135606"),
                (0.01, "0.138042"),
                (1.0, "0.394297"),
                (2.0, "0.6035"),
                (3.0, "0.753011"),
                (4.0, "0.8519"),
                (6.0, "0.95123"),
            ],
        ),
        t(
            2,
            "chi-square(2)",
            ChiSquare { n: 2.0 },
            vec![
                (1.0, "0.53013"),
                (3.0, "0.7477"),
                (5.0, "0.8686"),
                (7.0, "0.9332"),
                (10.0, "0.9766"),
                (15.0, "0.9962"),
            ],
        ),
        t(
            3,
            "log-gamma(2,1)",
            LogGamma { alpha: 2.0, lambda: 1.0 },
            vec![(-2.0, "0.03"), (-1.0, "0.109"), (0.0, "0.3099"), (1.0, "0.6635"), (2.0, "0.9503")],
        ),
        t(
            4,
            "inverse-gamma(2,2)",
            InverseGamma { alpha: 2.0, lambda: 2.0 },
            vec![
                (0.0, "3.807e-11"),
                (0.1, "0.00318"),
                (0.2, "0.0501"),
                (0.5, "0.292043"),
                (1.0, "0.550257"),
                (2.0, "0.7645"),
                (3.0, "0.851994"),
                (5.0, "0.924258"),
                (6.0, "0.941699"),
                (10.0, "0.973368"),
                (20.0, "0.992454"),
            ],
        ),
        t(
            5,
            "hyperbolic-tangent",
            HyperbolicTangent,
            vec![(0.4, "0.7653"), (1.0, "0.8645"), (2.0, "0.9528"), (3.0, "0.9846")],
        ),
        t(
            6,
            "bessel-zero-series(2)",
            BesselZeroSeries { nu: 2.0 },
            vec![
                (0.001, "0.500757"),
                (0.01, "0.5075"),
                (0.1, "0.57"),
                (0.5, "0.82"),
                (1.0, "0.95"),
                (2.0, "0.998"),
                (3.0, "0.999973"),
            ],
        ),
        t(
            7,
            "student-t(2)",
            StudentT { nu: 2.0 },
            vec![
                (0.02, "0.50558"),
                (0.5, "0.6253"),
                (1.0, "0.7458"),
                (2.0, "0.8888"),
                (3.0, "0.9497"),
                (4.0, "0.9756"),
                (10.0, "0.9988"),
            ],
        ),
        t(
            8,
            "stochastic-area",
            StochasticArea,
            vec![
                (0.5, "0.649892"),
                (1.0, "0.775697"),
                (1.2, "0.8163"),
                (1.5, "0.86674"),
                (2.0, "0.92558"),
                (3.0, "0.9799"),
            ],
        ),
        t(
            9,
            "generalized-stochastic-area(2)",
            GeneralizedStochasticArea { nu: 2.0 },
            vec![
                (0.1, "0.5420"),
                (0.3, "0.6239"),
                (0.5, "0.700"),
                (1.0, "0.84422"),
                (2.0, "0.97553"),
                (3.0, "0.997414"),
            ],
        ),
        t(
            10,
            "inverse-gaussian(1,1)",
            InverseGaussian { lambda: 1.0, mu: 1.0 },
            vec![
                (-5.0, "0.00"),
                (-3.0, "0.04"),
                (-2.0, "0.23"),
                (-1.0, "0.55"),
                (-0.1, "0.77"),
                (0.0, "0.79"),
                (0.1, "0.81"),
                (0.5, "0,87"),
                (1.0, "0.91"),
                (2.0, "0.96"),
                (3.0, "0.98"),
                (5.0, "0.99"),
            ],
        ),
        t(
            10,
            "inverse-gaussian(2,1)",
            InverseGaussian { lambda: 2.0, mu: 1.0 },
            vec![
                (-3.0, "0.007"),
                (-2.0, "0.14"),
                (-1.0, "0.54"),
                (-0.5, "0.72"),
                (0.0, "085"),
                (0.5, "0.926"),
                (1.0, "0.9638"),
                (2.0, "0.9914"),
            ],
        ),
        t(
            11,
            "quadratic-bm(1,2)",
            QuadraticBM { a: 1.0, b: 2.0 },
            vec![
                (0.01, "0.501664"),
                (0.1, "0.516603"),
                (1.0, "0.648221"),
                (2.0, "0.763609"),
                (3.0, "0.849722"),
                (4.0, "0.908518"),
                (5.0, "0.966382"),
            ],
        ),
        t(
            12,
            "logistic(0,1)",
            Logistic { a: 0.0, b: 1.0 },
            vec![(0.5, "0.58"), (1.0, "0.62"), (2.0, "0.8"), (3.0, "0.89"), (5.0, "0.97")],
        ),
        ReferenceTable {
            criterion: 13,
            label: "noncentral-chi-square(2,1), t ≤ 10",
            family: NoncentralChiSquare { k: 2.0, c: 1.0 },
            hard_truncation: Some(10.0),
            points: vec![
                (1.0, "0.4729"),
                (2.0, "0.55157"),
                (4.0, "0.709"),
                (8.0, "0.88"),
                (10.0, "0.93"),
                (15.0, "0.98"),
            ],
        },
        t(
            14,
            "bessel-h(10)",
            BesselH { nu: 10.0 },
            vec![
                (1.0, "0.0091"),
                (5.0, "0.03430"),
                (8.0, "0.09192"),
                (10.0, "0.1272"),
                (200.0, "0.717063"),
                (900.0, "0.868878"),
                (1200.0, "0.882203"),
                (1500.0, "0.899366"),
                (2000.0, "0.911412"),
            ],
        ),
        t(
            15,
            "fisher-z(1,2)",
            FisherZ { alpha1: 1.0, alpha2: 2.0 },
            vec![
                (-5.0, "0.02727"),
                (-3.0, "0.1022"),
                (-2.0, "0.18881"),
                (-1.0, "0.3296"),
                (-0.01, "0.522759"),
                (0.0, "0.524879"),
                (0.01, "0.5270"),
                (0.1, "0.5461"),
                (0.5, "0.63107"),
                (1.0, "073103"),
                (2.0, "0.8818"),
                (3.0, "0.9582"),
                (4.0, "0.987396"),
                (5.0, "0.996587"),
            ],
        ),
    ];
    v.sort_by_key(|t| t.criterion);
    v
}

#[derive(Debug, Clone, Serialize)]
pub struct TableRow {
    pub a: f64,
    pub expected: f64,
    pub computed: f64,
    pub tolerance: f64,
    pub passed: bool,
}

/// Result of one numbered check.
#[derive(Debug, Clone, Serialize)]
pub struct CheckOutcome {
    pub criterion: u8,
    /// Stable kebab-case identifier, see [`criterion_name`].
    pub name: &'static str,
    pub title: String,
    pub passed: bool,
    pub detail: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub rows: Vec<TableRow>,
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "criterion {:>2} {} {}: {}: {}",
            self.criterion,
            self.name,
            if self.passed { "PASS" } else { "FAIL" },
            self.title,
            self.detail
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    ReferenceTables,
    Identities,
    Samplers,
    All,
}

impl Suite {
    pub fn criteria(self) -> std::ops::RangeInclusive<u8> {
        match self {
            Suite::ReferenceTables => 1..=15,
            Suite::Identities => 16..=22,
            Suite::Samplers => 23..=26,
            Suite::All => 1..=26,
        }
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper-tables" => Ok(Suite::ReferenceTables),
            "identities" => Ok(Suite::Identities),
            "samplers" => Ok(Suite::Samplers),
            "all" => Ok(Suite::All),
            other => Err(Error::Unsupported(format!(
                "unknown suite `{other}` (expected paper-tables, identities, samplers or all)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub n: usize,
    pub seed: u64,
    pub cfg: QuadratureConfig,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            n: 100_000,
            seed: 42,
            cfg: QuadratureConfig::default(),
        }
    }
}

/// Evaluates every point of the tables belonging to `criterion`.
pub fn check_table_criterion(criterion: u8, cfg: &QuadratureConfig) -> Result<CheckOutcome> {
    let tables: Vec<ReferenceTable> = reference_tables()
        .into_iter()
        .filter(|t| t.criterion == criterion)
        .collect();
    if tables.is_empty() {
        return Err(Error::Unsupported(format!("criterion {criterion} has no reference table")));
    }
    let mut rows = Vec::new();
    let mut worst: Option<(f64, f64, &str)> = None;
    for table in &tables {
        let desc = make_family(table.family)?;
        let mut c = *cfg;
        c.hard_truncation = table.hard_truncation;
        for &(a, printed) in &table.points {
            let (expected, decimals) = parse_printed(printed)?;
            let r = bddf(&desc, a, &c)?;
            // printed values far below the table resolution are upper bounds
            let (tolerance, passed) = if expected < 1e-6 {
                (1e-9, r.value <= 1e-9)
            } else {
                let tol = table_tolerance(decimals);
                (tol, (r.value - expected).abs() <= tol)
            };
            let dev = (r.value - expected).abs();
            if !passed && worst.is_none_or(|w| dev > w.1) {
                worst = Some((a, dev, table.label));
            }
            rows.push(TableRow {
                a,
                expected,
                computed: r.value,
                tolerance,
                passed: passed && r.converged,
            });
        }
    }
    let failed = rows.iter().filter(|r| !r.passed).count();
    let title = tables.iter().map(|t| t.label).collect::<Vec<_>>().join(" + ");
    let detail = match worst {
        None if failed == 0 => format!("{} points within tolerance", rows.len()),
        None => format!("{failed} of {} points did not converge", rows.len()),
        Some((a, dev, label)) => format!(
            "{failed} of {} points outside tolerance; worst {label} at a={a}: |Δ|={dev:.2e}",
            rows.len()
        ),
    };
    Ok(CheckOutcome {
        criterion,
        name: criterion_name(criterion),
        title,
        passed: failed == 0,
        detail,
        rows,
    })
}

fn outcome(criterion: u8, title: &str, passed: bool, detail: String) -> CheckOutcome {
    CheckOutcome {
        criterion,
        name: criterion_name(criterion),
        title: title.to_string(),
        passed,
        detail,
        rows: Vec::new(),
    }
}

fn hyperbolic_identity() -> Result<CheckOutcome> {
    let c = FamilyDescriptor::reference(FamilyId::HyperbolicCosine);
    let s = FamilyDescriptor::reference(FamilyId::HyperbolicSine);
    let t_ = FamilyDescriptor::reference(FamilyId::HyperbolicTangent);
    let mut worst = 0.0f64;
    for i in 1..=3000 {
        let t = i as f64 * 0.01;
        let lhs = s.bdcf_exponent_real(t)? + t_.bdcf_exponent_real(t)?;
        worst = worst.max((lhs - c.bdcf_exponent_real(t)?).abs());
    }
    Ok(outcome(
        16,
        "η_Ŝ + η_T̂ = η_Ĉ on (0, 30]",
        worst <= 1e-12,
        format!("max |Δ| = {worst:.2e} (tol 1e-12)"),
    ))
}

fn area_coincidence() -> Result<CheckOutcome> {
    let a = FamilyDescriptor::reference(FamilyId::StochasticArea);
    let g = make_family(FamilyParams::GeneralizedStochasticArea { nu: 0.5 })?;
    let mut worst = 0.0f64;
    for i in 1..=1000 {
        let t = i as f64 * 0.01;
        let x = a.bdcf_exponent_real(t)?;
        let y = g.bdcf_exponent_real(t)?;
        worst = worst.max((x - y).abs() / x.abs());
    }
    Ok(outcome(
        17,
        "stochastic area = generalized area at ν=1/2",
        worst <= 1e-9,
        format!("max relative |Δη| = {worst:.2e} (tol 1e-9)"),
    ))
}

fn student_half(cfg: &QuadratureConfig) -> Result<CheckOutcome> {
    let d = make_family(FamilyParams::StudentT { nu: 0.5 })?;
    let mut worst = 0.0f64;
    for a in [-2.0, 0.5, 3.0] {
        let v = bddf(&d, a, cfg)?.value;
        worst = worst.max((v - (0.5 + a.atan() / PI)).abs());
    }
    Ok(outcome(
        18,
        "Student ν=1/2 inversion vs ½ + arctan(a)/π",
        worst <= 1e-6,
        format!("max |Δ| = {worst:.2e} (tol 1e-6)"),
    ))
}

fn gamma_three_forms(cfg: &QuadratureConfig) -> Result<CheckOutcome> {
    let d = FamilyDescriptor::reference(FamilyId::Gamma);
    let mut worst = 0.0f64;
    for k in 1..=10 {
        let a = 0.6 * k as f64;
        let inv = bddf(&d, a, cfg)?.value;
        let poisson = bddf_compound_poisson_oracle(&d, a)?;
        let bessel = closed_form_bddf(&d, a)?.unwrap_or(f64::NAN);
        let spread = (inv - poisson).abs().max((inv - bessel).abs()).max((poisson - bessel).abs());
        worst = worst.max(spread);
    }
    Ok(outcome(
        19,
        "gamma(2,1): inversion, Poisson–gamma sum and I₁ integral agree",
        worst <= 5e-4,
        format!("max spread over a = 0.6..6 = {worst:.2e} (tol 5e-4)"),
    ))
}

fn bessel_transform() -> Result<CheckOutcome> {
    let mut worst = 0.0f64;
    for t in [0.5, 1.0, 2.0] {
        let (l, r) = bessel_transform_check(t)?;
        worst = worst.max((l - r).norm());
    }
    Ok(outcome(
        20,
        "∫e^{itx}e^{−x}I₀(x)dx = (1/t)√(−t/(t+2i))",
        worst <= 1e-6,
        format!("max |lhs − rhs| over t ∈ {{0.5, 1, 2}} = {worst:.2e} (tol 1e-6)"),
    ))
}

/// Families and parameterizations covered by the derivative checks.
pub fn identity_instances() -> Vec<FamilyDescriptor> {
    let mut v: Vec<FamilyDescriptor> = FamilyId::ALL.iter().map(|&id| FamilyDescriptor::reference(id)).collect();
    v.push(make_family(FamilyParams::StudentT { nu: 0.5 }).expect("valid"));
    v.push(make_family(FamilyParams::InverseGaussian { lambda: 2.0, mu: 1.0 }).expect("valid"));
    v
}

fn derivative_identities() -> Result<CheckOutcome> {
    let mut worst_fd = 0.0f64;
    let mut worst_ftc = 0.0f64;
    for d in identity_instances() {
        for t in [0.1f64, 0.5, 1.0, 2.0, 5.0, 10.0] {
            for t in [t, -t] {
                let h = 1e-5 * t.abs().max(1.0);
                let fd = t * (d.log_cf(t + h)? - d.log_cf(t - h)?) / (2.0 * h);
                let eta = d.bdcf_exponent(t)?;
                worst_fd = worst_fd.max((eta - fd).norm() / (1.0 + eta.norm()));
            }
        }
        for t in [0.5, 1.0, 3.0] {
            let f = |u: f64| -> Result<Complex64> { Ok(d.bdcf_exponent(u)? / u) };
            let r = integrate(f, 0.0, t, 1e-9, 2000)?;
            worst_ftc = worst_ftc.max((r.value - d.log_cf(t)?).norm());
        }
    }
    Ok(outcome(
        21,
        "η = t·(log φ)′ and log φ(t) = ∫₀ᵗ η(u)/u du, all families",
        worst_fd <= 1e-6 && worst_ftc <= 1e-6,
        format!("finite-difference rel. error {worst_fd:.2e}, integral error {worst_ftc:.2e} (tol 1e-6)"),
    ))
}

fn gamma_midpoint(cfg: &QuadratureConfig) -> Result<CheckOutcome> {
    let d = FamilyDescriptor::reference(FamilyId::Gamma);
    let v = bddf(&d, 0.0, cfg)?.value;
    let target = 0.5 * (-2f64).exp();
    Ok(outcome(
        22,
        "gamma(2,1) midpoint at the atom",
        (v - target).abs() <= 1e-3,
        format!("G(0) = {v:.6}, e^-2/2 = {target:.6} (tol 1e-3)"),
    ))
}

fn shot_noise_gamma(opts: &VerifyOptions) -> Result<CheckOutcome> {
    let d = FamilyDescriptor::reference(FamilyId::Gamma);
    let b = sample_x_shot_noise(&d, opts.n, RngSeed(opts.seed), None)?;
    let r = ks_statistic(&b, |x| if x <= 0.0 { 0.0 } else { regularized_gamma_p(2.0, x).unwrap_or(f64::NAN) });
    Ok(outcome(
        23,
        "shot-noise gamma(2,1) vs incomplete gamma",
        r.statistic <= 0.0136,
        format!("KS = {:.4} (n = {}, tol 0.0136)", r.statistic, opts.n),
    ))
}

fn ratio_vs_series(opts: &VerifyOptions) -> Result<CheckOutcome> {
    let d = FamilyDescriptor::reference(FamilyId::HyperbolicSine);
    let ratio = sample_x_exact(&d, opts.n, RngSeed(opts.seed))?;
    let series = sample_x_series(&d, opts.n, DEFAULT_SERIES_TERMS, RngSeed(opts.seed.wrapping_add(1)))?;
    let stat = two_sample_ks(&ratio.values, &series.values);
    let tol = 1.95 * (2.0 / opts.n as f64).sqrt();
    Ok(outcome(
        24,
        "Ŝ by log-ratio vs 2000-term Laplace series",
        stat <= tol,
        format!("two-sample KS = {stat:.4} (tol {tol:.4})"),
    ))
}

fn fisher_z_samples(opts: &VerifyOptions) -> Result<CheckOutcome> {
    let d = FamilyDescriptor::reference(FamilyId::FisherZ);
    let b = sample_x_exact(&d, opts.n, RngSeed(opts.seed))?;
    let lo = b.values.iter().copied().fold(f64::INFINITY, f64::min).max(-40.0);
    let hi = b.values.iter().copied().fold(f64::NEG_INFINITY, f64::max).min(40.0);
    let cdf = GridCdf::new(&d, lo - 0.1, hi + 0.1, 2001, &opts.cfg)?;
    let r = ks_statistic(&b, |x| cdf.eval(x));
    Ok(outcome(
        25,
        "fisher-z(1,2) log-gamma-ratio draws vs inversion CDF",
        r.statistic <= 0.015,
        format!("KS = {:.4} (tol 0.015)", r.statistic),
    ))
}

fn bdrv_atom(opts: &VerifyOptions) -> Result<CheckOutcome> {
    let d = FamilyDescriptor::reference(FamilyId::Gamma);
    let b = sample_bdrv(&d, opts.n, RngSeed(opts.seed))?;
    let p = (-2f64).exp();
    let frac = b.values.iter().filter(|v| **v == 0.0).count() as f64 / opts.n as f64;
    let tol = 4.0 * (p * (1.0 - p) / opts.n as f64).sqrt();
    Ok(outcome(
        26,
        "gamma(2,1) BDRV zero fraction",
        (frac - p).abs() <= tol,
        format!("fraction = {frac:.5}, e^-2 = {p:.5} (tol {tol:.5})"),
    ))
}

pub const CRITERION_NAMES: [&str; 26] = [
    "gamma-table",
    "chi-square-table",
    "log-gamma-table",
    "inverse-gamma-table",
    "hyperbolic-tangent-table",
    "bessel-zero-series-table",
    "student-t-table",
    "stochastic-area-table",
    "generalized-stochastic-area-table",
    "inverse-gaussian-tables",
    "quadratic-bm-table",
    "logistic-table",
    "noncentral-chi-square-table",
    "bessel-h-table",
    "fisher-z-table",
    "hyperbolic-exponent-identity",
    "stochastic-area-coincidence",
    "student-half-arctan",
    "gamma-three-forms",
    "bessel-transform-identity",
    "exponent-derivative-identities",
    "gamma-atom-midpoint",
    "shot-noise-gamma-ks",
    "hyperbolic-sine-two-sample-ks",
    "fisher-z-ks",
    "bdrv-zero-fraction",
];

/// Identifier of criterion `k`, or `"unknown"`.
pub fn criterion_name(k: u8) -> &'static str {
    CRITERION_NAMES.get(usize::from(k).wrapping_sub(1)).copied().unwrap_or("unknown")
}

/// Runs criterion `k` (1..=26).
pub fn check_criterion(k: u8, opts: &VerifyOptions) -> Result<CheckOutcome> {
    match k {
        1..=15 => check_table_criterion(k, &opts.cfg),
        16 => hyperbolic_identity(),
        17 => area_coincidence(),
        18 => student_half(&opts.cfg),
        19 => gamma_three_forms(&opts.cfg),
        20 => bessel_transform(),
        21 => derivative_identities(),
        22 => gamma_midpoint(&opts.cfg),
        23 => shot_noise_gamma(opts),
        24 => ratio_vs_series(opts),
        25 => fisher_z_samples(opts),
        26 => bdrv_atom(opts),
        _ => Err(Error::Unsupported(format!("no criterion {k}"))),
    }
}

pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> Result<Vec<CheckOutcome>> {
    suite.criteria().map(|k| check_criterion(k, opts)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn printed_values() {
        assert_eq!(parse_printed("0.394297").unwrap(), (0.394297, 6));
        assert_eq!(parse_printed("0,87").unwrap(), (0.87, 2));
        assert_eq!(parse_printed("073103").unwrap(), (0.73103, 5));
        assert_eq!(parse_printed("085").unwrap(), (0.85, 2));
        assert_eq!(parse_printed("0.8").unwrap(), (0.8, 1));
        let (v, d) = parse_printed("3.807e-11").unwrap();
        assert_eq!(v, 3.807e-11);
        assert!(d >= 4);
        assert_eq!(table_tolerance(4), 2e-3);
        assert_eq!(table_tolerance(3), 6e-3);
    }

    #[test]
    fn every_table_criterion_present() {
        let t = reference_tables();
        for k in 1..=15u8 {
            assert!(t.iter().any(|t| t.criterion == k), "criterion {k}");
        }
        assert!(t.iter().all(|t| make_family(t.family).is_ok()));
    }

    #[test]
    fn suites() {
        assert_eq!("all".parse::<Suite>().unwrap().criteria(), 1..=26);
        assert!("tables".parse::<Suite>().is_err());
    }
}
