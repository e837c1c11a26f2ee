//! Bessel `J_ν(x)` for real `x > 0` and its positive zeros.

use std::f64::consts::PI;

use super::gamma::ln_gamma;
use crate::error::{Error, Result};

const SERIES_BELOW: f64 = 5.0;
const RESCALE_ABOVE: f64 = 1e200;

fn j_series(nu: f64, x: f64) -> f64 {
    let q = -0.25 * x * x;
    let mut term = (nu * (0.5 * x).ln() - ln_gamma(nu + 1.0)).exp();
    let mut sum = term;
    for k in 1..200 {
        let kf = k as f64;
        term *= q / (kf * (nu + kf));
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    sum
}

// Miller's backward recurrence normalized with
// (x/2)^μ = Σ_k (μ+2k) Γ(μ+k)/k! · J_{μ+2k}(x).
fn j_miller(nu: f64, x: f64) -> (f64, f64) {
    let n = nu.floor() as usize;
    let mu = nu - n as f64;
    let top = nu.max(x);
    let start = (top + 15.0 * top.cbrt() + 40.0).ceil() as usize;
    let mut weights = Vec::with_capacity(start / 2 + 2);
    let mut g = (ln_gamma(mu + 1.0)).exp(); // Γ(μ+k)/k! at k = 1
    weights.push(g);
    for k in 1..=start / 2 + 1 {
        let kf = k as f64;
        weights.push((mu + 2.0 * kf) * g);
        g *= (mu + kf) / (kf + 1.0);
    }
    let mut next = 0.0;
    let mut cur = 1e-30;
    let mut sum = 0.0;
    let mut saved = (0.0, 0.0);
    for m in (0..=start).rev() {
        if m % 2 == 0 {
            sum += weights[m / 2] * cur;
        }
        if m == n {
            saved = (cur, next);
        }
        if m == 0 {
            break;
        }
        let prev = 2.0 * (mu + m as f64) / x * cur - next;
        next = cur;
        cur = prev;
        if cur.abs() > RESCALE_ABOVE {
            cur /= RESCALE_ABOVE;
            next /= RESCALE_ABOVE;
            sum /= RESCALE_ABOVE;
            saved.0 /= RESCALE_ABOVE;
            saved.1 /= RESCALE_ABOVE;
        }
    }
    let norm = (mu * (0.5 * x).ln()).exp() / sum;
    (saved.0 * norm, saved.1 * norm)
}

fn j_pair(nu: f64, x: f64) -> (f64, f64) {
    if x < SERIES_BELOW {
        (j_series(nu, x), j_series(nu + 1.0, x))
    } else {
        j_miller(nu, x)
    }
}

/// `J_ν(x)` for `ν ≥ 0`, `x ≥ 0`.
pub fn bessel_j(nu: f64, x: f64) -> Result<f64> {
    if !(nu >= 0.0 && x >= 0.0 && nu.is_finite() && x.is_finite()) {
        return Err(Error::Domain {
            function: "bessel_j",
            detail: format!("nu={nu}, x={x}"),
        });
    }
    if x == 0.0 {
        return Ok(if nu == 0.0 { 1.0 } else { 0.0 });
    }
    Ok(j_pair(nu, x).0)
}

/// McMahon's large-zero expansion of `j_{ν,k}`.
fn mcmahon(nu: f64, k: usize) -> f64 {
    let beta = (k as f64 + 0.5 * nu - 0.25) * PI;
    let m = 4.0 * nu * nu;
    let b8 = 8.0 * beta;
    let t1 = (m - 1.0) / b8;
    let t3 = 4.0 * (m - 1.0) * (7.0 * m - 31.0) / (3.0 * b8.powi(3));
    let t5 = 32.0 * (m - 1.0) * (83.0 * m * m - 982.0 * m + 3779.0) / (15.0 * b8.powi(5));
    beta - t1 - t3 - t5
}

fn newton(nu: f64, mut x: f64) -> Option<f64> {
    for _ in 0..60 {
        let (j, j1) = j_pair(nu, x);
        let dj = nu / x * j - j1;
        if dj == 0.0 || !dj.is_finite() {
            return None;
        }
        let step = j / dj;
        x -= step;
        if !(x > 0.0) {
            return None;
        }
        if step.abs() <= 1e-15 * x {
            return Some(x);
        }
    }
    None
}

fn bisect_then_newton(nu: f64, mut lo: f64, mut hi: f64) -> Result<f64> {
    let mut flo = j_pair(nu, lo).0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let fm = j_pair(nu, mid).0;
        if (fm < 0.0) == (flo < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-6 {
            break;
        }
    }
    newton(nu, 0.5 * (lo + hi)).ok_or(Error::NoConvergence {
        function: "bessel_j_zero",
        iterations: 60,
    })
}

// Smallest spacing of consecutive zeros over ν ≥ 0 is j_{0,2} − j_{0,1} ≈ 3.115.
const MIN_SPACING: f64 = 3.0;
const SCAN_STEP: f64 = 0.5;

fn next_zero(nu: f64, k: usize, prev: f64) -> Result<f64> {
    let lower = if k == 1 { nu.max(0.0) } else { prev + MIN_SPACING * 0.8 };
    let guess = mcmahon(nu, k);
    let plausible_guess = k > 1 && guess > prev + MIN_SPACING && guess < prev + 2.0 * PI;
    if plausible_guess {
        if let Some(root) = newton(nu, guess) {
            // must lie within the expected window and be a true sign change
            if root > prev + MIN_SPACING && (root - guess).abs() < 0.5 {
                let d = 1e-7 * root;
                if (j_pair(nu, root - d).0 < 0.0) != (j_pair(nu, root + d).0 < 0.0) {
                    return Ok(root);
                }
            }
        }
    }
    // sign-change scan from a safe lower bound
    let mut lo = lower.max(1e-3);
    let mut flo = j_pair(nu, lo).0;
    for _ in 0..100_000 {
        let hi = lo + SCAN_STEP;
        let fhi = j_pair(nu, hi).0;
        if (flo < 0.0) != (fhi < 0.0) {
            return bisect_then_newton(nu, lo, hi);
        }
        lo = hi;
        flo = fhi;
    }
    Err(Error::NoConvergence {
        function: "bessel_j_zero",
        iterations: 100_000,
    })
}

/// The first `count` positive zeros `j_{ν,1} < … < j_{ν,count}` of `J_ν`.
pub fn bessel_j_zeros(nu: f64, count: usize) -> Result<Vec<f64>> {
    if !(nu >= 0.0 && nu.is_finite()) {
        return Err(Error::Domain {
            function: "bessel_j_zeros",
            detail: format!("nu={nu}"),
        });
    }
    let mut out = Vec::with_capacity(count);
    let mut prev = 0.0;
    for k in 1..=count {
        let z = next_zero(nu, k, prev)?;
        out.push(z);
        prev = z;
    }
    Ok(out)
}

/// The `k`-th positive zero `j_{ν,k}` of `J_ν` (`k ≥ 1`).
///
/// Large `k` starts Newton from McMahon's expansion directly; small `k` (or
/// a guess that lands on the wrong root) walks the zeros in order.
pub fn bessel_j_zero(nu: f64, k: usize) -> Result<f64> {
    if !(nu >= 0.0 && nu.is_finite()) || k == 0 {
        return Err(Error::Domain {
            function: "bessel_j_zero",
            detail: format!("nu={nu}, k={k}"),
        });
    }
    let beta = (k as f64 + 0.5 * nu - 0.25) * PI;
    if k > 20 && beta > 4.0 * nu * nu {
        let guess = mcmahon(nu, k);
        if let Some(root) = newton(nu, guess) {
            if (root - guess).abs() < 0.25 {
                return Ok(root);
            }
        }
    }
    Ok(*bessel_j_zeros(nu, k)?.last().expect("k >= 1"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn series_and_miller_agree() {
        for nu in [0.0, 0.5, 1.0, 2.0, 3.7] {
            for x in [5.0, 6.0, 9.0, 12.0] {
                let (a, a1) = j_miller(nu, x);
                assert!((a - j_series(nu, x)).abs() < 1e-12, "nu={nu} x={x}");
                assert!((a1 - j_series(nu + 1.0, x)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn half_order_closed_form() {
        for x in [0.3, 2.0, 7.0, 40.0, 500.0] {
            let exact = (2.0 / (PI * x)).sqrt() * x.sin();
            assert!((bessel_j(0.5, x).unwrap() - exact).abs() < 1e-13);
        }
    }

    #[test]
    fn first_zero_of_j0_matches_series_newton() {
        // Newton on the J0 power series (J0' = −J1) as an independent oracle
        let j0 = |x: f64| {
            let mut t = 1.0;
            let mut s = 1.0;
            for k in 1..60 {
                t *= -0.25 * x * x / ((k * k) as f64);
                s += t;
            }
            s
        };
        let j1 = |x: f64| {
            let mut t = 0.5 * x;
            let mut s = t;
            for k in 1..60 {
                t *= -0.25 * x * x / ((k * (k + 1)) as f64);
                s += t;
            }
            s
        };
        let mut x = 2.4;
        for _ in 0..20 {
            x += j0(x) / j1(x);
        }
        assert!((bessel_j_zero(0.0, 1).unwrap() - x).abs() < 1e-12);
        assert_relative_eq!(x, 2.404_825_557_695_773, max_relative = 1e-14);
    }

    #[test]
    fn zeros_are_ordered_and_spaced() {
        for nu in [0.0, 2.0] {
            let zs = bessel_j_zeros(nu, 21).unwrap();
            for w in zs.windows(2) {
                assert!(w[0] < w[1]);
            }
            for (k, z) in zs.iter().enumerate() {
                assert!((z - bessel_j_zero(nu, k + 1).unwrap()).abs() < 1e-10);
                assert!(bessel_j(nu, *z).unwrap().abs() < 1e-12);
            }
        }
        let spacing = bessel_j_zero(0.0, 51).unwrap() - bessel_j_zero(0.0, 50).unwrap();
        assert!((spacing - PI).abs() <= 1e-2);
    }

    #[test]
    fn half_order_zeros_are_multiples_of_pi() {
        for k in [1, 2, 10, 30, 500] {
            assert!((bessel_j_zero(0.5, k).unwrap() - k as f64 * PI).abs() < 1e-10);
        }
    }

    #[test]
    fn direct_and_sequential_agree_for_large_k() {
        let seq = bessel_j_zeros(2.0, 120).unwrap();
        for k in [25, 60, 120] {
            assert!((seq[k - 1] - bessel_j_zero(2.0, k).unwrap()).abs() < 1e-10);
        }
        let big = bessel_j_zeros(12.0, 3).unwrap();
        for z in big {
            assert!(bessel_j(12.0, z).unwrap().abs() < 1e-12);
        }
    }
}
