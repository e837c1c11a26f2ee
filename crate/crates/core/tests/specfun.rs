use std::f64::consts::PI;

use bddf_core::specfun::{
    bessel_i, bessel_k, digamma, log_gamma, regularized_gamma_p, ComplexScalar, EULER_GAMMA,
};
use num_complex::Complex64;
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm().max(1e-300)
}

// Compensated summation of the terms produced by `f(0..n)`.
fn kahan(n: usize, f: impl Fn(usize) -> Complex64) -> Complex64 {
    let mut sum = c(0.0, 0.0);
    let mut comp = c(0.0, 0.0);
    for k in 0..n {
        let y = f(k) - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    sum
}

// Weierstrass product: log Γ(1+z) = −γz + Σ_{k≥1} (z/k − log(1+z/k)),
// tail Σ_{k>N} ≈ z²/(2N) − z³/(6N²)… handled by Euler–Maclaurin leading terms.
fn log_gamma_1p_oracle(z: Complex64) -> Complex64 {
    let n = 2_000_000;
    let s = kahan(n, |k| {
        let k = (k + 1) as f64;
        z / k - (1.0 + z / k).ln()
    });
    let nf = n as f64;
    let tail = z * z / (2.0 * nf) - z * z / (4.0 * nf * nf) - z * z * z / (6.0 * nf * nf);
    -EULER_GAMMA * z + s + tail
}

// ψ(z) = −γ + Σ_{k≥0} (1/(k+1) − 1/(k+z)), tail by the integral/EM estimate.
fn digamma_oracle(z: Complex64) -> Complex64 {
    let n = 2_000_000;
    let s = kahan(n, |k| {
        let k = k as f64;
        1.0 / (k + 1.0) - (k + z).inv()
    });
    let nf = n as f64;
    let tail = ((nf + z) / (nf + 1.0)).ln() - 0.5 * (nf + z).inv() + 0.5 / (nf + 1.0);
    -EULER_GAMMA + s + tail
}

#[test]
fn log_gamma_reflection_identity_at_one() {
    let s = log_gamma(c(1.0, 1.0)).unwrap() + log_gamma(c(1.0, -1.0)).unwrap();
    let exact = (PI / PI.sinh()).ln();
    assert!((s.re - exact).abs() < 1e-14);
    let oracle = log_gamma_1p_oracle(c(0.0, 1.0)) + log_gamma_1p_oracle(c(0.0, -1.0));
    assert!((oracle.re - exact).abs() < 1e-11);
}

#[test]
fn log_gamma_against_product_oracle() {
    for z in [c(1.0, 1.0), c(2.5, -3.0), c(0.6, 0.2), c(4.0, 10.0)] {
        let got = log_gamma(z).unwrap();
        let want = log_gamma_1p_oracle(z - 1.0);
        assert!(rel(got, want) < 1e-10, "z={z}: {got} vs {want}");
    }
}

#[test]
fn digamma_against_series_oracle() {
    let z = c(2.0, 1.0);
    let got = digamma(z).unwrap();
    let want = digamma_oracle(z);
    assert!(rel(got, want) < 1e-10, "{got} vs {want}");
    for z in [c(0.3, 5.0), c(12.0, -1.0), c(1.0, 40.0)] {
        assert!(rel(digamma(z).unwrap(), digamma_oracle(z)) < 1e-9);
    }
}

#[test]
fn gamma_p_against_trapezoid_oracle() {
    // P(2, 2) = ∫₀² x e^{−x} dx
    let n = 200_000;
    let h = 2.0 / n as f64;
    let f = |x: f64| x * (-x).exp();
    let mut s = 0.5 * (f(0.0) + f(2.0));
    for i in 1..n {
        s += f(i as f64 * h);
    }
    let oracle = s * h;
    assert!((regularized_gamma_p(2.0, 2.0).unwrap() - oracle).abs() < 1e-10);
}

#[test]
fn gamma_p_monotone_in_x() {
    for shape in [0.3, 1.0, 2.5, 30.0] {
        let mut prev = 0.0;
        for i in 0..400 {
            let p = regularized_gamma_p(shape, i as f64 * 0.2).unwrap();
            assert!(p >= prev && p <= 1.0);
            prev = p;
        }
    }
}

#[test]
fn complex_scalar_is_num_complex() {
    let z: ComplexScalar = c(1.0, 2.0);
    assert_eq!(z.conj(), c(1.0, -2.0));
}

proptest! {
    #[test]
    fn log_gamma_conjugate_symmetric(re in 0.05f64..60.0, im in -60.0f64..60.0) {
        let z = c(re, im);
        let a = log_gamma(z.conj()).unwrap();
        let b = log_gamma(z).unwrap().conj();
        prop_assert!(rel(a, b) < 1e-12);
    }

    #[test]
    fn digamma_recurrence(re in 0.05f64..60.0, im in -60.0f64..60.0) {
        let z = c(re, im);
        let d = digamma(z + 1.0).unwrap() - digamma(z).unwrap();
        prop_assert!(rel(d, z.inv()) < 1e-10);
        prop_assert!(rel(digamma(z.conj()).unwrap(), digamma(z).unwrap().conj()) < 1e-12);
    }

    #[test]
    fn k_recurrence_right_half_plane(nu in 0.0f64..6.0, re in 0.05f64..30.0, im in -30.0f64..30.0) {
        let z = c(re, im);
        let km = bessel_k(nu - 1.0, z).unwrap();
        let k0 = bessel_k(nu, z).unwrap();
        let kp = bessel_k(nu + 1.0, z).unwrap();
        prop_assert!(rel(kp, km + 2.0 * nu / z * k0) < 1e-9);
        prop_assert!(rel(bessel_k(nu, z.conj()).unwrap(), k0.conj()) < 1e-12);
    }

    #[test]
    fn i_conjugate_symmetric(nu in 0.0f64..6.0, re in 0.05f64..30.0, im in -30.0f64..30.0) {
        let z = c(re, im);
        let a = bessel_i(nu, z.conj()).unwrap();
        let b = bessel_i(nu, z).unwrap().conj();
        prop_assert!(rel(a, b) < 1e-12);
    }
}
