//! Property tests for the algebraic invariants.

mod common;

use common::*;
use num_complex::Complex64;
use proptest::prelude::*;

use nugcd::bench::{BenchReport, BenchRow};
use nugcd::poly::{format_complex_entry, parse_complex_entry, Polynomial, PolynomialPair};
use nugcd::{uvgcd, GcdConfig};

fn complex_coeff() -> impl Strategy<Value = Complex64> {
    (-4i32..=4, -4i32..=4).prop_map(|(re, im)| Complex64::new(re as f64 * 0.75, im as f64 * 0.75))
}

fn poly(max_deg: usize) -> impl Strategy<Value = Polynomial> {
    (1..=max_deg)
        .prop_flat_map(move |d| proptest::collection::vec(complex_coeff(), d + 1))
        .prop_filter_map("nonzero leading", |mut coeffs| {
            if coeffs.last() == Some(&Complex64::default()) {
                *coeffs.last_mut().unwrap() = Complex64::new(1.0, -0.5);
            }
            Polynomial::new(coeffs).ok()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn multiply_commutes(a in poly(6), b in poly(6)) {
        let ab = a.multiply(&b);
        let ba = b.multiply(&a);
        let scale = ab.norm().max(1e-30);
        for (x, y) in ab.coeffs().iter().zip(ba.coeffs()) {
            prop_assert!((x - y).norm() <= 1e-13 * scale);
        }
    }

    #[test]
    fn multiply_associates(a in poly(4), b in poly(4), c in poly(4)) {
        let l = a.multiply(&b).multiply(&c);
        let r = a.multiply(&b.multiply(&c));
        let scale = l.norm().max(1e-30);
        for (x, y) in l.coeffs().iter().zip(r.coeffs()) {
            prop_assert!((x - y).norm() <= 1e-13 * scale);
        }
    }

    #[test]
    fn product_norm_bound(a in poly(6), b in poly(6)) {
        // convolution Frobenius bound
        let lhs = a.multiply(&b).norm();
        let min_deg = a.degree().unwrap().min(b.degree().unwrap());
        let rhs = ((min_deg + 1) as f64).sqrt() * a.norm() * b.norm();
        prop_assert!(lhs <= rhs * (1.0 + 1e-12));
    }

    #[test]
    fn evaluate_is_multiplicative(a in poly(6), b in poly(6), re in -1.0f64..1.0, im in -1.0f64..1.0) {
        let an = a.scaled(Complex64::new(1.0 / a.norm(), 0.0));
        let bn = b.scaled(Complex64::new(1.0 / b.norm(), 0.0));
        let x = Complex64::new(re, im);
        let lhs = an.multiply(&bn).evaluate(x);
        let rhs = an.evaluate(x) * bn.evaluate(x);
        prop_assert!((lhs - rhs).norm() <= 1e-12 * rhs.norm().max(1.0));
    }

    #[test]
    fn complex_entry_text_round_trips(re in proptest::num::f64::NORMAL, im in proptest::num::f64::NORMAL) {
        let c = Complex64::new(re, im);
        let back = parse_complex_entry(&format_complex_entry(c)).unwrap();
        prop_assert_eq!(c, back);
    }

    #[test]
    fn coeff_line_round_trips(coeffs in proptest::collection::vec((proptest::num::f64::NORMAL, proptest::num::f64::NORMAL), 1..8)) {
        let v: Vec<Complex64> = coeffs.iter().map(|&(re, im)| Complex64::new(re, im)).collect();
        if v.last() == Some(&Complex64::default()) {
            return Ok(());
        }
        let p = Polynomial::new(v).unwrap();
        let back = Polynomial::from_coeff_line(&p.to_coeff_line()).unwrap();
        prop_assert_eq!(p, back);
    }

    #[test]
    fn csv_numeric_fields_round_trip(rho in proptest::num::f64::POSITIVE, kappa in proptest::num::f64::POSITIVE, ms in proptest::num::f64::POSITIVE, coef in proptest::option::of(proptest::num::f64::POSITIVE)) {
        let report = BenchReport {
            rows: vec![BenchRow {
                case: "case".into(),
                meta: "meta".into(),
                degree: 3,
                rho,
                kappa,
                coef_error: coef,
                ms,
                passed: true,
            }],
            failures: vec![],
        };
        let back = BenchReport::from_csv(&report.to_csv()).unwrap();
        prop_assert_eq!(back.rows[0].rho.to_bits(), rho.to_bits());
        prop_assert_eq!(back.rows[0].kappa.to_bits(), kappa.to_bits());
        prop_assert_eq!(back.rows[0].ms.to_bits(), ms.to_bits());
        prop_assert_eq!(back.rows[0].coef_error.map(f64::to_bits), coef.map(f64::to_bits));
    }
}

proptest! {
    // exact-GCD recovery runs the full pipeline; keep the case count low
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn exact_gcd_recovery(seed in 0u64..10000) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let du = rng.random_range(1..=4usize);
        let dv = rng.random_range(1..=4usize);
        let dw = rng.random_range(1..=4usize);
        let u = random_integer_poly(&mut rng, du);
        let v = random_integer_poly(&mut rng, dv);
        let w = random_integer_poly(&mut rng, dw);
        let Ok(vw) = PolynomialPair::new(v.clone(), w.clone()) else { return Ok(()) };
        let s1 = nugcd::sylvester::sylvester_matrix(&vw, 1).unwrap();
        if svd_smallest(&s1) < 1e-6 * s1.frobenius_norm() {
            return Ok(()); // v, w not numerically coprime; resample
        }
        let Ok(pair) = PolynomialPair::new(u.multiply(&v), u.multiply(&w)) else { return Ok(()) };
        for eps in [1e-12, 1e-10, 1e-8] {
            let r = uvgcd(&pair, &GcdConfig { epsilon: eps, relative: true, ..GcdConfig::default() }).unwrap();
            prop_assert_eq!(r.degree, du, "eps {}", eps);
            let err = aligned_relative_error(&r.triplet.u, &u);
            prop_assert!(err <= 1e-10, "err {err}");
        }
    }
}
