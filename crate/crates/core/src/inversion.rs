//! Gil–Pelaez inversion of characteristic-function exponents.
//!
//! For an exponent `g` with `g(0) = 0` the distribution function is
//! `F(a) = ½ − (1/π) ∫₀^∞ Im(exp[g(t) − ita]) / t dt`, with the midpoint value
//! at jumps. The integral is split into an initial panel on `(0, t₀]`, a ramp
//! of geometrically growing panels, and half-periods of `sin(ta)` whose
//! partial sums are extrapolated with Wynn's epsilon algorithm.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::catalog::FamilyDescriptor;
use crate::error::{Error, Result};
use crate::quad::{integrate, wynn_epsilon};
use crate::specfun::bessel_i_scaled;

/// Tuning knobs of the inversion engine.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct QuadratureConfig {
    pub abs_tol: f64,
    pub max_half_periods: usize,
    pub acceleration_order: usize,
    /// Integrate only over `t ∈ (0, T]`.
    pub hard_truncation: Option<f64>,
    pub small_t_cutoff: f64,
    pub panel_rule_order: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            abs_tol: 5e-7,
            max_half_periods: 4000,
            acceleration_order: 8,
            hard_truncation: None,
            small_t_cutoff: 1e-4,
            panel_rule_order: 15,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0 && self.abs_tol.is_finite()) {
            return Err(Error::InvalidConfig(format!("abs_tol must be positive, got {}", self.abs_tol)));
        }
        if !(self.small_t_cutoff > 0.0 && self.small_t_cutoff.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "small_t_cutoff must be positive, got {}",
                self.small_t_cutoff
            )));
        }
        if let Some(t) = self.hard_truncation {
            if !(t > self.small_t_cutoff && t.is_finite()) {
                return Err(Error::InvalidConfig(format!(
                    "hard_truncation must exceed small_t_cutoff ({}), got {t}",
                    self.small_t_cutoff
                )));
            }
        }
        if self.max_half_periods == 0 {
            return Err(Error::InvalidConfig("max_half_periods must be at least 1".into()));
        }
        if self.acceleration_order == 0 {
            return Err(Error::InvalidConfig("acceleration_order must be at least 1".into()));
        }
        if self.panel_rule_order != 15 {
            return Err(Error::InvalidConfig(format!(
                "only the 15-point Gauss-Kronrod panel rule is available, got {}",
                self.panel_rule_order
            )));
        }
        Ok(())
    }
}

/// Result of one inversion.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CdfEstimate {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
    pub converged: bool,
    /// The raw value fell slightly outside `[0, 1]` and was clamped.
    pub clipped: bool,
}

/// Outcome of the oscillatory integral `∫₀^∞ Im(e^{g(t) − ita})/t dt`.
struct Oscillatory {
    value: f64,
    error: f64,
    evaluations: usize,
    converged: bool,
}

// Ramp panels grow by this factor until the half-period of sin(ta) is reached.
const RAMP_GROWTH: f64 = 2.0;
// Envelope exp(Re g) below which the tail is treated as negligible.
const ENVELOPE_FLOOR: f64 = 1e-17;
const PANEL_SUBDIVISIONS: usize = 200;

struct Engine<'a, G> {
    g: G,
    a: f64,
    cfg: &'a QuadratureConfig,
    evaluations: usize,
}

impl<G: FnMut(f64) -> Result<Complex64>> Engine<'_, G> {
    fn exponent(&mut self, t: f64) -> Result<Complex64> {
        self.evaluations += 1;
        let w = (self.g)(t)?;
        if !(w.re.is_finite() && w.im.is_finite()) {
            return Err(Error::NonFinite { function: "invert_cdf exponent" });
        }
        Ok(w)
    }

    fn panel(&mut self, lo: f64, hi: f64, tol: f64) -> Result<(f64, f64)> {
        let a = self.a;
        let g = &mut self.g;
        let mut calls = 0usize;
        let r = integrate(
            |t: f64| -> Result<f64> {
                calls += 1;
                let w = g(t)?;
                if !(w.re.is_finite() && w.im.is_finite()) {
                    return Err(Error::NonFinite { function: "invert_cdf exponent" });
                }
                Ok(w.re.exp() * (w.im - t * a).sin() / t)
            },
            lo,
            hi,
            tol,
            PANEL_SUBDIVISIONS,
        )?;
        self.evaluations += calls;
        Ok((r.value, r.error))
    }

    /// Angular rate of the phase `Im g(t)` near `t`.
    fn phase_rate(&mut self, t: f64) -> Result<f64> {
        let h = 1e-3 * t;
        let lo = self.exponent(t)?.im;
        let hi = self.exponent(t + h)?.im;
        Ok(((hi - lo) / h).abs())
    }

    fn run(&mut self) -> Result<Oscillatory> {
        let cfg = *self.cfg;
        let tol = PI * cfg.abs_tol;
        let panel_tol = tol * 1e-3;
        let t0 = cfg.small_t_cutoff;
        let truncation = cfg.hard_truncation;
        let half_period = if self.a != 0.0 { PI / self.a.abs() } else { f64::INFINITY };

        let first_end = match truncation {
            Some(t) => t0.min(t),
            None => t0,
        };
        let (mut sum, mut quad_err) = self.panel(0.0, first_end, panel_tol)?;
        let mut t = first_end;
        let mut panels = 0usize;
        // Partial sums after each ramp panel (used only when a = 0) and after
        // each half-period panel.
        let mut ramp_sums: Vec<f64> = Vec::new();
        let mut ramp_from = 0usize;
        let mut half_sums: Vec<f64> = Vec::new();
        let mut last_estimates: Vec<f64> = Vec::new();
        let window = 2 * cfg.acceleration_order + 1;

        loop {
            if let Some(tt) = truncation {
                if t >= tt {
                    return Ok(Oscillatory {
                        value: sum,
                        error: quad_err,
                        evaluations: self.evaluations,
                        converged: quad_err <= tol,
                    });
                }
            }
            if panels >= cfg.max_half_periods {
                let value = last_estimates.last().copied().unwrap_or(sum);
                return Ok(Oscillatory {
                    value,
                    error: f64::INFINITY,
                    evaluations: self.evaluations,
                    converged: false,
                });
            }
            let in_ramp = t < half_period;
            let mut end = if in_ramp {
                let rate = self.phase_rate(t)?;
                let mut len = t * (RAMP_GROWTH - 1.0);
                if rate > 0.0 {
                    len = len.min(PI / rate);
                }
                (t + len).min(half_period)
            } else {
                // aligned to multiples of π/|a|
                let k = (t / half_period).round() + 1.0;
                (k * half_period).max(t + 0.5 * half_period)
            };
            if let Some(tt) = truncation {
                end = end.min(tt);
            }
            let (v, e) = self.panel(t, end, panel_tol)?;
            sum += v;
            quad_err += e;
            t = end;
            panels += 1;

            let w = self.exponent(t)?;
            let envelope = w.re.exp();
            if truncation.is_some() {
                continue;
            }
            if envelope <= ENVELOPE_FLOOR && v.abs() <= panel_tol {
                return Ok(Oscillatory {
                    value: sum,
                    error: quad_err + v.abs(),
                    evaluations: self.evaluations,
                    converged: quad_err <= tol,
                });
            }
            let sums = if in_ramp {
                if self.a != 0.0 {
                    continue;
                }
                ramp_sums.push(sum);
                // extrapolate only once the geometric panels are contracting
                let m = ramp_sums.len();
                let contracting = m >= 6
                    && (m - 4..m).all(|j| {
                        let now = (ramp_sums[j] - ramp_sums[j - 1]).abs();
                        let before = (ramp_sums[j - 1] - ramp_sums[j - 2]).abs();
                        now <= 0.75 * before
                    });
                if !contracting {
                    ramp_from = m - 1;
                    last_estimates.clear();
                    continue;
                }
                &ramp_sums[ramp_from..]
            } else {
                if half_sums.is_empty() {
                    last_estimates.clear();
                }
                half_sums.push(sum);
                &half_sums[..]
            };
            if sums.len() < 3 {
                continue;
            }
            let start = sums.len().saturating_sub(window);
            let est = wynn_epsilon(&sums[start..]);
            last_estimates.push(est);
            let n = last_estimates.len();
            if n >= 3 && sums.len() >= 5 {
                let d1 = (last_estimates[n - 1] - last_estimates[n - 2]).abs();
                let d2 = (last_estimates[n - 2] - last_estimates[n - 3]).abs();
                let accel_err = d1.max(d2);
                if accel_err + quad_err <= tol {
                    return Ok(Oscillatory {
                        value: est,
                        error: accel_err + quad_err,
                        evaluations: self.evaluations,
                        converged: true,
                    });
                }
            }
        }
    }
}

fn finish(raw: Oscillatory, cfg: &QuadratureConfig) -> CdfEstimate {
    let value = 0.5 - raw.value / PI;
    let error_estimate = raw.error / PI;
    let mut converged = raw.converged && error_estimate <= cfg.abs_tol;
    let mut clipped = false;
    let excursion = if value < 0.0 {
        -value
    } else if value > 1.0 {
        value - 1.0
    } else {
        0.0
    };
    if excursion > 0.0 {
        clipped = true;
        if excursion > 10.0 * cfg.abs_tol {
            converged = false;
        }
    }
    CdfEstimate {
        value: value.clamp(0.0, 1.0),
        error_estimate: if error_estimate.is_finite() { error_estimate } else { f64::MAX },
        evaluations: raw.evaluations,
        converged,
        clipped,
    }
}

fn check_a(a: f64) -> Result<()> {
    if a.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain {
            function: "invert_cdf",
            detail: format!("evaluation point must be finite, got {a}"),
        })
    }
}

/// `½ − (1/π) ∫₀^∞ Im(exp[g(t) − ita]) dt/t` for a characteristic exponent
/// `g` evaluated at `t > 0`.
pub fn invert_cdf<G>(exponent: G, a: f64, cfg: &QuadratureConfig) -> Result<CdfEstimate>
where
    G: FnMut(f64) -> Result<Complex64>,
{
    cfg.validate()?;
    check_a(a)?;
    let mut engine = Engine {
        g: exponent,
        a,
        cfg,
        evaluations: 0,
    };
    let raw = engine.run()?;
    Ok(finish(raw, cfg))
}

/// Sine form `½ + (1/π) ∫₀^∞ exp[g(t)] sin(ta) dt/t` for a real exponent.
/// Odd in `a` about ½ by construction.
pub fn invert_cdf_symmetric<G>(mut exponent: G, a: f64, cfg: &QuadratureConfig) -> Result<CdfEstimate>
where
    G: FnMut(f64) -> Result<f64>,
{
    invert_cdf(move |t| Ok(Complex64::new(exponent(t)?, 0.0)), a, cfg)
}

/// `G_X(a) = P(Y(1) ≤ a)` from the exponent `η` of the family.
pub fn bddf(desc: &FamilyDescriptor, a: f64, cfg: &QuadratureConfig) -> Result<CdfEstimate> {
    if desc.symmetric {
        invert_cdf_symmetric(|t| desc.bdcf_exponent_real(t), a, cfg)
    } else {
        invert_cdf(|t| desc.bdcf_exponent(t), a, cfg)
    }
}

/// `P(X ≤ a)` from `log φ_X`.
pub fn cdf_of_x(desc: &FamilyDescriptor, a: f64, cfg: &QuadratureConfig) -> Result<CdfEstimate> {
    if desc.symmetric {
        invert_cdf_symmetric(|t| Ok(desc.log_cf(t)?.re), a, cfg)
    } else {
        invert_cdf(|t| desc.log_cf(t), a, cfg)
    }
}

/// Closed form `(1/t)√(−t/(t+2i))` of `∫₀^∞ e^{itx} e^{−x} I₀(x) dx`, extended to
/// `t < 0` by conjugation.
pub fn bessel_transform_rhs(t: f64) -> Result<Complex64> {
    if t == 0.0 || !t.is_finite() {
        return Err(Error::Domain {
            function: "bessel_transform_rhs",
            detail: format!("requires finite t ≠ 0, got {t}"),
        });
    }
    if t < 0.0 {
        return Ok(bessel_transform_rhs(-t)?.conj());
    }
    let r = (Complex64::new(-t, 0.0) / Complex64::new(t, 2.0)).sqrt();
    Ok(r / t)
}

/// `∫₀^∞ e^{itx} e^{−x} I₀(x) dx` by half-period panels of `π/|t|` with Wynn
/// acceleration of the real and imaginary partial sums.
pub fn bessel_transform_lhs(t: f64) -> Result<Complex64> {
    if t == 0.0 || !t.is_finite() {
        return Err(Error::Domain {
            function: "bessel_transform_lhs",
            detail: format!("requires finite t ≠ 0, got {t}"),
        });
    }
    let f = |x: f64| -> Result<Complex64> {
        let k = bessel_i_scaled(0.0, Complex64::new(x, 0.0))?.re;
        Ok(Complex64::new(0.0, t * x).exp() * k)
    };
    let h = PI / t.abs();
    let tol = 1e-12;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut re = Vec::new();
    let mut im = Vec::new();
    let mut estimates: Vec<Complex64> = Vec::new();
    for k in 0..4000 {
        let lo = k as f64 * h;
        let r = integrate(f, lo, lo + h, tol, 200)?;
        sum += r.value;
        re.push(sum.re);
        im.push(sum.im);
        if k < 8 {
            continue;
        }
        let start = re.len().saturating_sub(17);
        let est = Complex64::new(wynn_epsilon(&re[start..]), wynn_epsilon(&im[start..]));
        estimates.push(est);
        let n = estimates.len();
        if n >= 3
            && (estimates[n - 1] - estimates[n - 2]).norm() < 1e-11
            && (estimates[n - 2] - estimates[n - 3]).norm() < 1e-11
        {
            return Ok(est);
        }
    }
    Err(Error::NoConvergence {
        function: "bessel_transform_lhs",
        iterations: 4000,
    })
}

/// Both sides of `∫₀^∞ e^{itx} e^{−x} I₀(x) dx = (1/t)√(−t/(t+2i))`.
pub fn bessel_transform_check(t: f64) -> Result<(Complex64, Complex64)> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::Domain {
            function: "bessel_transform_check",
            detail: format!("requires t > 0, got {t}"),
        });
    }
    Ok((bessel_transform_lhs(t)?, bessel_transform_rhs(t)?))
}
