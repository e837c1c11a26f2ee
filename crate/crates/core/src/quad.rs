//! Adaptive Gauss–Kronrod quadrature and Wynn's epsilon algorithm.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Values that can be integrated: real or complex.
pub trait QuadValue: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {
    fn zero() -> Self;
    fn magnitude(self) -> f64;
    fn is_finite_value(self) -> bool;
}

impl QuadValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn magnitude(self) -> f64 {
        self.abs()
    }
    fn is_finite_value(self) -> bool {
        self.is_finite()
    }
}

impl QuadValue for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn magnitude(self) -> f64 {
        self.norm()
    }
    fn is_finite_value(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639,
    0.949_107_912_342_758_525,
    0.864_864_423_359_769_073,
    0.741_531_185_599_394_440,
    0.586_087_235_467_691_130,
    0.405_845_151_377_397_167,
    0.207_784_955_007_898_468,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_225,
    0.063_092_092_629_978_553,
    0.104_790_010_322_250_184,
    0.140_653_259_715_525_919,
    0.169_004_726_639_267_903,
    0.190_350_578_064_785_410,
    0.204_432_940_075_298_892,
    0.209_482_141_084_727_828,
];
// Gauss weights for the nodes XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_693,
    0.279_705_391_489_276_668,
    0.381_830_050_505_118_945,
    0.417_959_183_673_469_388,
];

/// One 15-point Kronrod / 7-point Gauss panel on `[a, b]`.
/// Returns the Kronrod value and an error estimate derived from `|K − G|`.
pub fn gk15<T, F>(f: &mut F, a: f64, b: f64) -> Result<(T, f64)>
where
    T: QuadValue,
    F: FnMut(f64) -> Result<T>,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center)?;
    let mut fv = [T::zero(); 15];
    fv[7] = fc;
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx)?;
        let f2 = f(center + dx)?;
        fv[j] = f1;
        fv[14 - j] = f2;
        let pair = f1 + f2;
        kronrod = kronrod + pair * WGK[j];
        if j % 2 == 1 {
            gauss = gauss + pair * WG[j / 2];
        }
    }
    if !kronrod.is_finite_value() {
        return Err(Error::NonFinite { function: "gk15" });
    }
    // QUADPACK error scaling: |K − G| relative to the integrand's variation
    let mean = kronrod * 0.5;
    let weight = |j: usize| WGK[j.min(14 - j)];
    let mut resasc = 0.0;
    let mut resabs = 0.0;
    for (j, v) in fv.iter().enumerate() {
        resasc += weight(j) * (*v - mean).magnitude();
        resabs += weight(j) * v.magnitude();
    }
    let resasc = resasc * half.abs();
    let resabs = resabs * half.abs();
    let k = kronrod * half;
    let mut err = (k - gauss * half).magnitude();
    if resasc != 0.0 && err != 0.0 {
        err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * resabs);
    }
    Ok((k, err))
}

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy)]
pub struct Integral<T> {
    pub value: T,
    pub error: f64,
    pub evaluations: usize,
    pub converged: bool,
}

/// Globally adaptive GK15 on the finite interval `[a, b]`: the panel with the
/// largest error is bisected until the summed error is below `abs_tol` or
/// `max_panels` is reached.
pub fn integrate<T, F>(mut f: F, a: f64, b: f64, abs_tol: f64, max_panels: usize) -> Result<Integral<T>>
where
    T: QuadValue,
    F: FnMut(f64) -> Result<T>,
{
    if a == b {
        return Ok(Integral {
            value: T::zero(),
            error: 0.0,
            evaluations: 0,
            converged: true,
        });
    }
    let (v, e) = gk15(&mut f, a, b)?;
    let mut panels = vec![(a, b, v, e)];
    let mut evaluations = 15;
    loop {
        let total_err: f64 = panels.iter().map(|p| p.3).sum();
        let converged = total_err <= abs_tol;
        if converged || panels.len() >= max_panels {
            let value = panels.iter().fold(T::zero(), |acc, p| acc + p.2);
            return Ok(Integral {
                value,
                error: total_err,
                evaluations,
                converged,
            });
        }
        let (worst, _) = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .expect("non-empty");
        let (lo, hi, _, _) = panels.swap_remove(worst);
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            // interval exhausted at machine resolution
            let value = panels.iter().fold(T::zero(), |acc, p| acc + p.2);
            let (v, e) = gk15(&mut f, lo, hi)?;
            return Ok(Integral {
                value: value + v,
                error: total_err + e,
                evaluations: evaluations + 15,
                converged: false,
            });
        }
        let (v1, e1) = gk15(&mut f, lo, mid)?;
        let (v2, e2) = gk15(&mut f, mid, hi)?;
        evaluations += 30;
        panels.push((lo, mid, v1, e1));
        panels.push((mid, hi, v2, e2));
    }
}

/// Wynn's epsilon extrapolation of a sequence of partial sums; returns the
/// deepest even-column entry reachable without a vanishing difference.
pub fn wynn_epsilon(sums: &[f64]) -> f64 {
    let Some(&last) = sums.last() else {
        return 0.0;
    };
    if sums.len() < 3 {
        return last;
    }
    let mut prev = vec![0.0; sums.len()];
    let mut cur = sums.to_vec();
    let mut best = last;
    let mut column = 0;
    while cur.len() >= 2 {
        let scale = cur.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(f64::MIN_POSITIVE);
        let mut next = Vec::with_capacity(cur.len() - 1);
        for j in 0..cur.len() - 1 {
            let d = cur[j + 1] - cur[j];
            if column % 2 == 0 && d.abs() <= 1e-15 * scale {
                // even column has converged to rounding level
                return cur[j + 1];
            }
            let v = prev[j + 1] + 1.0 / d;
            if !v.is_finite() {
                return best;
            }
            next.push(v);
        }
        column += 1;
        prev = cur;
        cur = next;
        if column % 2 == 0 {
            if let Some(&v) = cur.last() {
                best = v;
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gk15_is_exact_for_polynomials() {
        let (v, e) = gk15(&mut |x: f64| Ok(x.powi(12) - 3.0 * x), -1.0, 2.0).unwrap();
        let exact = (2f64.powi(13) + 1.0) / 13.0 - 1.5 * (4.0 - 1.0);
        assert!((v - exact).abs() < 1e-11);
        assert!(e < 1e-6);
    }

    #[test]
    fn adaptive_handles_endpoint_singularity() {
        // ∫₀¹ x^{-1/2} dx = 2
        let r = integrate(|x: f64| Ok(1.0 / x.sqrt()), 0.0, 1.0, 1e-10, 2000).unwrap();
        assert!(r.converged);
        assert!((r.value - 2.0).abs() < 1e-9);
    }

    #[test]
    fn adaptive_complex() {
        // ∫₀^π e^{ix} dx = 2i
        let r = integrate(|x: f64| Ok(Complex64::new(0.0, x).exp()), 0.0, std::f64::consts::PI, 1e-13, 100).unwrap();
        assert!((r.value - Complex64::new(0.0, 2.0)).norm() < 1e-13);
    }

    #[test]
    fn wynn_accelerates_alternating_series() {
        // partial sums of log 2 = 1 − 1/2 + 1/3 − …
        let mut s = 0.0;
        let sums: Vec<f64> = (1..=15)
            .map(|k| {
                s += if k % 2 == 1 { 1.0 } else { -1.0 } / k as f64;
                s
            })
            .collect();
        assert!((sums[14] - 2f64.ln()).abs() > 1e-2);
        assert!((wynn_epsilon(&sums) - 2f64.ln()).abs() < 1e-10);
    }

    #[test]
    fn wynn_on_constant_sequence() {
        assert_eq!(wynn_epsilon(&[1.5, 1.5, 1.5, 1.5]), 1.5);
        assert_eq!(wynn_epsilon(&[0.25]), 0.25);
    }
}
