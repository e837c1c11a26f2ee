use std::f64::consts::PI;

use bddf_core::catalog::{bddf_compound_poisson_oracle, closed_form_bddf, make_family, FamilyDescriptor, FamilyId, FamilyParams};
use bddf_core::inversion::{bddf, bessel_transform_check, bessel_transform_lhs, bessel_transform_rhs, cdf_of_x, invert_cdf, invert_cdf_symmetric, QuadratureConfig};
use bddf_core::specfun::regularized_gamma_p;
use num_complex::Complex64;
use proptest::prelude::*;

fn cfg() -> QuadratureConfig {
    QuadratureConfig::default()
}

// (family, lower end, upper end) of the grid scanned for monotonicity
fn grid_ranges() -> Vec<(FamilyDescriptor, f64, f64)> {
    use FamilyId::*;
    let r = FamilyDescriptor::reference;
    vec![
        (r(Gamma), 0.001, 12.0),
        (r(ChiSquare), 0.5, 15.0),
        (r(LogGamma), -3.0, 3.0),
        (r(InverseGamma), 0.0, 20.0),
        (r(HyperbolicCosine), -8.0, 8.0),
        (r(HyperbolicSine), -8.0, 8.0),
        (r(HyperbolicTangent), -4.0, 4.0),
        (r(BesselZeroSeries), -3.0, 3.0),
        (r(StudentT), -10.0, 10.0),
        (r(StochasticArea), -3.0, 3.0),
        (r(GeneralizedStochasticArea), -3.0, 3.0),
        (r(InverseGaussian), 0.01, 5.0),
        (r(QuadraticBM), -5.0, 5.0),
        (r(Logistic), -5.0, 5.0),
        (r(NoncentralChiSquare), 0.5, 15.0),
        (r(BesselH), 1.0, 2000.0),
        (r(FisherZ), -4.0, 4.0),
    ]
}

#[test]
fn bddf_is_monotone_on_25_point_grids() {
    let c = cfg();
    for (d, lo, hi) in grid_ranges() {
        let mut prev = -1.0;
        for k in 0..25 {
            let a = lo + (hi - lo) * k as f64 / 24.0;
            let r = bddf(&d, a, &c).unwrap();
            assert!(r.converged, "{} a={a}: {r:?}", d.id);
            assert!((0.0..=1.0).contains(&r.value));
            assert!(r.value >= prev - 2.0 * c.abs_tol, "{} a={a}: {} < {prev}", d.id, r.value);
            prev = r.value;
        }
    }
}

#[test]
fn tail_limits() {
    let c = cfg();
    let g = FamilyDescriptor::reference(FamilyId::Gamma);
    // G(12) = 0.99888 by the Poisson sum, so the upper bound sits at 13
    assert!(bddf(&g, 12.0, &c).unwrap().value < 0.999);
    assert!(bddf(&g, 13.0, &c).unwrap().value >= 0.999);
    assert!(bddf(&g, -0.5, &c).unwrap().value <= 0.001);
    let h = FamilyDescriptor::reference(FamilyId::HyperbolicCosine);
    assert!(bddf(&h, 8.0, &c).unwrap().value >= 0.999);
    assert!(bddf(&h, -8.0, &c).unwrap().value <= 0.001);
}

#[test]
fn symmetric_families_reflect() {
    let c = cfg();
    for id in FamilyId::ALL.into_iter().filter(|id| id.is_symmetric()) {
        let d = FamilyDescriptor::reference(id);
        for a in [0.3, 1.0, 2.0] {
            let p = bddf(&d, a, &c).unwrap().value;
            let m = bddf(&d, -a, &c).unwrap().value;
            assert!((p + m - 1.0).abs() <= 2.0 * c.abs_tol, "{id} a={a}");
        }
    }
}

#[test]
fn gamma_and_chi_square_match_poisson_sums() {
    let c = cfg();
    for id in [FamilyId::Gamma, FamilyId::ChiSquare] {
        let d = FamilyDescriptor::reference(id);
        for k in 1..=10 {
            let a = 0.7 * k as f64;
            let v = bddf(&d, a, &c).unwrap().value;
            let o = bddf_compound_poisson_oracle(&d, a).unwrap();
            assert!((v - o).abs() <= 5e-4, "{id} a={a}: {v} vs {o}");
            if id == FamilyId::Gamma {
                let i1 = closed_form_bddf(&d, a).unwrap().unwrap();
                assert!((v - i1).abs() <= 5e-4);
            }
        }
    }
}

#[test]
fn student_half_is_arctan() {
    let d = make_family(FamilyParams::StudentT { nu: 0.5 }).unwrap();
    for a in [-2.0, 0.5, 3.0] {
        let v = bddf(&d, a, &cfg()).unwrap().value;
        assert!((v - (0.5 + a.atan() / PI)).abs() <= 1e-6, "a={a}: {v}");
    }
}

#[test]
fn gamma_midpoint_at_atom() {
    let d = FamilyDescriptor::reference(FamilyId::Gamma);
    let v = bddf(&d, 0.0, &cfg()).unwrap().value;
    assert!((v - 0.5 * (-2f64).exp()).abs() <= 1e-3);
}

#[test]
fn cdf_of_gamma_is_incomplete_gamma() {
    let d = FamilyDescriptor::reference(FamilyId::Gamma);
    for x in [1.0, 2.0, 5.0] {
        let v = cdf_of_x(&d, x, &cfg()).unwrap().value;
        let p = regularized_gamma_p(2.0, x).unwrap();
        assert!((v - p).abs() <= 5e-5, "x={x}: {v} vs {p}");
    }
}

#[test]
fn cdf_of_symmetric_laws_at_zero() {
    for d in [
        make_family(FamilyParams::StudentT { nu: 0.5 }).unwrap(),
        FamilyDescriptor::reference(FamilyId::Logistic),
    ] {
        assert!((cdf_of_x(&d, 0.0, &cfg()).unwrap().value - 0.5).abs() < 1e-9);
    }
}

#[test]
fn cdf_of_logistic_is_sigmoid() {
    // φ(t) = πct/sinh(πct) with c = √3/π: logistic with scale c, unit variance
    let d = FamilyDescriptor::reference(FamilyId::Logistic);
    let c = 3f64.sqrt() / PI;
    for x in [-1.5, 0.4, 2.0] {
        let v = cdf_of_x(&d, x, &cfg()).unwrap().value;
        let f = 1.0 / (1.0 + (-x / c).exp());
        assert!((v - f).abs() < 1e-5, "x={x}: {v} vs {f}");
    }
}

#[test]
fn exponent_examples() {
    let c = cfg();
    let t = FamilyDescriptor::reference(FamilyId::HyperbolicTangent);
    let v = invert_cdf_symmetric(|s| t.bdcf_exponent_real(s), 1.0, &c).unwrap().value;
    assert!((v - 0.8645).abs() <= 5e-3);
    let ch = FamilyDescriptor::reference(FamilyId::HyperbolicCosine);
    assert_eq!(invert_cdf_symmetric(|s| ch.bdcf_exponent_real(s), 0.0, &c).unwrap().value, 0.5);
    let g = FamilyDescriptor::reference(FamilyId::Gamma);
    let v = invert_cdf(|s| g.bdcf_exponent(s), 2.0, &c).unwrap().value;
    assert!((v - bddf_compound_poisson_oracle(&g, 2.0).unwrap()).abs() <= 5e-4);
}

#[test]
fn bessel_transform_identity() {
    for t in [0.5, 1.0, 2.0] {
        let (l, r) = bessel_transform_check(t).unwrap();
        assert!((l - r).norm() <= 1e-6, "t={t}: {l} vs {r}");
        let neg = bessel_transform_lhs(-t).unwrap();
        assert!((neg - bessel_transform_rhs(-t).unwrap()).norm() <= 1e-6);
        assert_eq!(bessel_transform_rhs(-t).unwrap(), r.conj());
    }
    assert!(bessel_transform_check(0.0).is_err());
}

#[test]
fn bit_identical_reruns() {
    let d = FamilyDescriptor::reference(FamilyId::BesselH);
    let c = cfg();
    assert_eq!(bddf(&d, 200.0, &c).unwrap(), bddf(&d, 200.0, &c).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn stable_law_inversion(a in -20.0f64..20.0, scale in 0.1f64..5.0) {
        // g(t) = −scale·t: Cauchy with scale `scale`
        let r = invert_cdf(|t| Ok(Complex64::new(-scale * t, 0.0)), a, &cfg()).unwrap();
        prop_assert!(r.converged);
        prop_assert!((r.value - (0.5 + (a / scale).atan() / PI)).abs() <= 1e-6);
    }

    #[test]
    fn values_stay_in_unit_interval(a in -30.0f64..30.0, idx in 0usize..17) {
        let d = FamilyDescriptor::reference(FamilyId::ALL[idx]);
        let r = bddf(&d, a, &cfg()).unwrap();
        prop_assert!((0.0..=1.0).contains(&r.value));
        prop_assert!(!r.converged || r.error_estimate <= cfg().abs_tol);
    }
}
