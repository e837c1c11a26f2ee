//! One test per acceptance criterion. Each writes a single PASS/FAIL line to
//! stderr (uncaptured) and then asserts the outcome.

use std::io::Write;

use bddf_core::verify::{check_criterion, VerifyOptions};

fn run(k: u8) {
    let outcome = check_criterion(k, &VerifyOptions::default()).expect("criterion evaluation");
    let mut line = format!("{outcome}\n");
    for row in outcome.rows.iter().filter(|r| !r.passed) {
        line.push_str(&format!(
            "             a={:<8} expected {:<10} computed {:.6} (tol {:e})\n",
            row.a, row.expected, row.computed, row.tolerance
        ));
    }
    let _ = std::io::stderr().write_all(line.as_bytes());
    assert!(outcome.passed, "{outcome}");
}

macro_rules! criteria {
    ($($name:ident = $k:expr;)*) => {
        $(
            #[test]
            fn $name() {
                run($k);
            }
        )*
    };
}

criteria! {
    c01_gamma_table = 1;
    c02_chi_square_table = 2;
    c03_log_gamma_table = 3;
    c04_inverse_gamma_table = 4;
    c05_hyperbolic_tangent_table = 5;
    c06_bessel_zero_series_table = 6;
    c07_student_t_table = 7;
    c08_stochastic_area_table = 8;
    c09_generalized_area_table = 9;
    c10_inverse_gaussian_tables = 10;
    c11_quadratic_bm_table = 11;
    c12_logistic_table = 12;
    c13_noncentral_chi_square_truncated_table = 13;
    c14_bessel_h_table = 14;
    c15_fisher_z_table = 15;
    c16_hyperbolic_exponent_identity = 16;
    c17_area_coincidence = 17;
    c18_student_half_arctan = 18;
    c19_gamma_three_forms = 19;
    c20_bessel_transform = 20;
    c21_derivative_and_integral_identities = 21;
    c22_gamma_midpoint = 22;
    c23_shot_noise_gamma_ks = 23;
    c24_ratio_vs_series_two_sample_ks = 24;
    c25_fisher_z_ks = 25;
    c26_bdrv_zero_fraction = 26;
}
