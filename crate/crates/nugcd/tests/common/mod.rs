//! Shared helpers for the integration suites: conversion to nalgebra for
//! the independent SVD/QR oracle, seeded random polynomial generators, and
//! the worked pairs used across criteria.

#![allow(dead_code)]

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;

use nugcd::matrix::DenseMatrix;
use nugcd::poly::{Polynomial, PolynomialPair};

pub fn to_na(a: &DenseMatrix) -> DMatrix<Complex64> {
    DMatrix::from_fn(a.rows(), a.cols(), |i, j| a.get(i, j))
}

/// Singular values by the independent full-SVD oracle, ascending.
pub fn svd_singular_values(a: &DenseMatrix) -> Vec<f64> {
    let m = to_na(a);
    let mut s: Vec<f64> = m.svd(false, false).singular_values.iter().copied().collect();
    s.sort_by(|x, y| x.partial_cmp(y).unwrap());
    s
}

pub fn svd_smallest(a: &DenseMatrix) -> f64 {
    svd_singular_values(a)[0]
}

pub fn random_real_poly(rng: &mut impl Rng, degree: usize) -> Polynomial {
    loop {
        let coeffs: Vec<f64> = (0..=degree).map(|_| 2.0 * rng.random::<f64>() - 1.0).collect();
        if coeffs[degree].abs() > 0.1 {
            return Polynomial::from_real(&coeffs).unwrap();
        }
    }
}

pub fn random_integer_poly(rng: &mut impl Rng, degree: usize) -> Polynomial {
    loop {
        let coeffs: Vec<f64> = (0..=degree).map(|_| rng.random_range(-5..=5) as f64).collect();
        if coeffs[degree] != 0.0 {
            return Polynomial::from_real(&coeffs).unwrap();
        }
    }
}

/// The worked perturbed pair from the introduction: ten digits of the
/// rational coefficients, tolerance 1e-8, numerical GCD x + 10.
pub fn example1_pair() -> PolynomialPair {
    let mut p = vec![0.0; 11];
    p[0] = 10.0;
    p[1] = 1.0;
    p[8] = 3.333333333;
    p[9] = 10.33333333;
    p[10] = 1.0;
    let mut q = vec![0.0; 11];
    q[0] = -8.571428571;
    q[1] = -0.8571428571;
    q[8] = 1.428571429;
    q[9] = 10.14285714;
    q[10] = 1.0;
    PolynomialPair::new(
        Polynomial::from_real(&p).unwrap(),
        Polynomial::from_real(&q).unwrap(),
    )
    .unwrap()
}

fn prod(factors: &[Polynomial]) -> Polynomial {
    let mut acc = Polynomial::one();
    for f in factors {
        acc = acc.multiply(f);
    }
    acc
}

pub fn rp(coeffs: &[f64]) -> Polynomial {
    Polynomial::from_real(coeffs).unwrap()
}

/// Ill-conditioned family: u = x^2-1 with v, w nearly sharing the factor
/// x-1, condition number ~ 1.14/delta.
pub fn ilpair(delta: f64) -> PolynomialPair {
    let u = rp(&[-1.0, 0.0, 1.0]);
    let v = prod(&[rp(&[-1.0 + delta, 1.0]), rp(&[1.0, 0.0, 0.0, 0.0, 1.0])]);
    let w = prod(&[rp(&[-1.0 - delta, 1.0]), rp(&[2.0, 0.0, 0.0, 1.0])]);
    PolynomialPair::new(u.multiply(&v), u.multiply(&w)).unwrap()
}

/// Sensitive-stage-one but well-conditioned pair: u = x^2+1,
/// v = (x-1+mu)(x^4+1), w = (x-1)(x^3-2); kappa stays ~3.55 for small mu.
pub fn moderate_pair(mu: f64) -> (PolynomialPair, Polynomial) {
    let u = rp(&[1.0, 0.0, 1.0]);
    let v = prod(&[rp(&[-1.0 + mu, 1.0]), rp(&[1.0, 0.0, 0.0, 0.0, 1.0])]);
    let w = prod(&[rp(&[-1.0, 1.0]), rp(&[-2.0, 0.0, 0.0, 1.0])]);
    (
        PolynomialPair::new(u.multiply(&v), u.multiply(&w)).unwrap(),
        u,
    )
}

/// Relative u error after the optimal scalar alignment.
pub fn aligned_relative_error(computed: &Polynomial, truth: &Polynomial) -> f64 {
    let len = computed.coeffs().len().max(truth.coeffs().len());
    let mut num = Complex64::default();
    let mut den = 0.0f64;
    for i in 0..len {
        let c = computed.coeff(i);
        let t = truth.coeff(i);
        num += c.conj() * t;
        den += c.norm_sqr();
    }
    if den == 0.0 {
        return f64::INFINITY;
    }
    let alpha = num / den;
    let mut err = 0.0f64;
    let mut tn = 0.0f64;
    for i in 0..len {
        err += (computed.coeff(i) * alpha - truth.coeff(i)).norm_sqr();
        tn += truth.coeff(i).norm_sqr();
    }
    (err / tn).sqrt()
}
