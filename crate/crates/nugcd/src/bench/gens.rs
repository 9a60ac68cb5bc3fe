//! Benchmark case generators: the standard families used to exercise the
//! solver (high sensitivity, tolerance ladders, large degrees, wild
//! coefficient magnitudes, and derivative pairs with multiple roots).


use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::driver::GcdConfig;
use crate::error::{Error, Result};
use crate::poly::{Polynomial, PolynomialPair};

/// One benchmark instance. When `true_gcd` is present the pair was built as
/// (true_gcd*v, true_gcd*w) and the cofactors are retained for checking.
#[derive(Debug, Clone)]
pub struct BenchCase {
    pub name: String,
    pub meta: String,
    pub pair: PolynomialPair,
    pub true_gcd: Option<Polynomial>,
    pub cofactors: Option<(Polynomial, Polynomial)>,
    pub epsilon: f64,
    pub relative_eps: bool,
    pub normalize_inputs: bool,
    pub expected_degree: Option<usize>,
    /// Case-specific weight floor; None takes the config default.
    pub weight_floor: Option<f64>,
    /// Certified nearness must stay within a factor of ten of this.
    pub nearness_target: Option<f64>,
    /// Coefficient-wise error bound against `true_gcd` for regression.
    pub error_bound: Option<f64>,
}

impl BenchCase {
    pub fn config(&self, base: &GcdConfig) -> GcdConfig {
        GcdConfig {
            epsilon: self.epsilon,
            relative: self.relative_eps,
            normalize_inputs: self.normalize_inputs,
            weight_floor: self.weight_floor.unwrap_or(base.weight_floor),
            ..base.clone()
        }
    }
}

fn product_of(factors: impl IntoIterator<Item = Polynomial>) -> Polynomial {
    let mut acc = Polynomial::one();
    for f in factors {
        acc = acc.multiply(&f);
    }
    acc
}

fn quadratic(r: f64, alpha: f64) -> Polynomial {
    // (x - r*alpha)^2 + r^2*beta^2 = x^2 - 2 r alpha x + r^2
    Polynomial::from_real(&[r * r, -2.0 * r * alpha, 1.0]).unwrap()
}

/// High-sensitivity family: roots on two circles of radius 0.5 and 1.5 at
/// angles j*pi/n. The GCD condition number grows quickly with n.
pub fn gen_test1(n: usize) -> Result<BenchCase> {
    if n % 2 != 0 || n < 4 {
        return Err(Error::DegenerateCandidate("test1 requires even n >= 4"));
    }
    let k = n / 2;
    let (r1, r2) = (0.5, 1.5);
    let alpha = |j: usize| (j as f64 * std::f64::consts::PI / n as f64).cos();
    let u = product_of((1..=k).map(|j| quadratic(r1, alpha(j))));
    let v = product_of((1..=k).map(|j| quadratic(r2, alpha(j))));
    let w = product_of((k + 1..=n).map(|j| quadratic(r1, alpha(j))));
    let pair = PolynomialPair::new(u.multiply(&v), u.multiply(&w))?;
    let bound = match n {
        0..=6 => 1e-13,
        7..=10 => 1e-10,
        11..=16 => 1e-7,
        _ => 1e-4,
    };
    // past n = 16 the pair norm reaches 1e9 and the stock relative
    // tolerance stops separating the true degree from the stratum above it
    let epsilon = if n <= 16 { 1e-10 } else { 1e-12 };
    Ok(BenchCase {
        name: format!("test1:n={n}"),
        meta: format!("n={n}"),
        pair,
        true_gcd: Some(u),
        cofactors: Some((v, w)),
        epsilon,
        relative_eps: true,
        normalize_inputs: false,
        expected_degree: Some(n),
        weight_floor: None,
        nearness_target: None,
        error_bound: Some(bound),
    })
}

/// Tolerance-ladder family: ten roots at (-1)^j * j/2 against the same
/// roots offset by 10^-j, producing a different numerical GCD at each
/// tolerance. Emits the single pair once per ladder tolerance.
pub fn gen_test2() -> Vec<BenchCase> {
    let roots: Vec<f64> = (1i32..=10).map(|j| (-1f64).powi(j) * (j as f64 / 2.0)).collect();
    let p = product_of(roots.iter().map(|&r| Polynomial::from_real(&[-r, 1.0]).unwrap()));
    let q = product_of(
        roots
            .iter()
            .enumerate()
            .map(|(idx, &r)| Polynomial::from_real(&[-r + 10f64.powi(-(idx as i32 + 1)), 1.0]).unwrap()),
    );
    let ladder: [(f64, usize, f64); 8] = [
        (1e-2, 9, 0.56e-2),
        (1e-3, 8, 0.26e-3),
        (1e-4, 7, 0.14e-4),
        (1e-5, 6, 0.11e-5),
        (1e-6, 5, 0.41e-7),
        (1e-8, 4, 0.42e-8),
        (1e-9, 3, 0.14e-9),
        (1e-10, 2, 0.24e-10),
    ];
    ladder
        .iter()
        .map(|&(eps, deg, near)| BenchCase {
            name: format!("test2:eps={eps:.0e}"),
            meta: format!("eps={eps:.0e}"),
            pair: PolynomialPair::new(p.clone(), q.clone()).unwrap(),
            true_gcd: None,
            cofactors: None,
            epsilon: eps,
            relative_eps: false,
            normalize_inputs: true,
            expected_degree: Some(deg),
            weight_floor: Some(1e-3),
            nearness_target: Some(near),
            error_bound: None,
        })
        .collect()
}

fn test3_cofactors() -> (Polynomial, Polynomial) {
    (
        Polynomial::from_real(&[1.0, 1.0, 1.0, 1.0]).unwrap(),
        Polynomial::from_real(&[1.0, -1.0, 1.0, -1.0, 1.0]).unwrap(),
    )
}

fn random_integer_poly(rng: &mut impl Rng, degree: usize) -> Polynomial {
    loop {
        let coeffs: Vec<f64> = (0..=degree).map(|_| rng.random_range(-5..=5) as f64).collect();
        if coeffs[degree] != 0.0 && coeffs.iter().any(|&c| c != 0.0) {
            return Polynomial::from_real(&coeffs).unwrap();
        }
    }
}

/// Large-degree family: a random integer GCD of degree n against the fixed
/// cofactors 1+x+x^2+x^3 and 1-x+x^2-x^3+x^4.
pub fn gen_test3(n: usize, seed: u64) -> Result<BenchCase> {
    if n < 1 {
        return Err(Error::DegenerateCandidate("test3 requires n >= 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let u = random_integer_poly(&mut rng, n);
    let (v, w) = test3_cofactors();
    let pair = PolynomialPair::new(u.multiply(&v), u.multiply(&w))?;
    Ok(BenchCase {
        name: format!("test3:n={n}"),
        meta: format!("n={n};seed={seed}"),
        pair,
        true_gcd: Some(u),
        cofactors: Some((v, w)),
        epsilon: 1e-10,
        relative_eps: true,
        normalize_inputs: false,
        expected_degree: Some(n),
        weight_floor: None,
        nearness_target: None,
        error_bound: Some(1e-12),
    })
}

/// Wild-magnitude family: GCD of degree 15 with coefficients c*10^e,
/// c in [-5,5], e in [0,6], against the fixed cofactors.
pub fn gen_test5(seed: u64) -> BenchCase {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let u = loop {
        let coeffs: Vec<f64> = (0..=15)
            .map(|_| {
                let c = rng.random_range(-5..=5) as f64;
                let e = rng.random_range(0..=6);
                c * 10f64.powi(e)
            })
            .collect();
        if coeffs[15] != 0.0 {
            break Polynomial::from_real(&coeffs).unwrap();
        }
    };
    let (v, w) = test3_cofactors();
    let pair = PolynomialPair::new(u.multiply(&v), u.multiply(&w)).unwrap();
    BenchCase {
        name: format!("test5:seed={seed}"),
        meta: format!("seed={seed}"),
        pair,
        true_gcd: Some(u),
        cofactors: Some((v, w)),
        epsilon: 1e-10,
        relative_eps: true,
        normalize_inputs: false,
        expected_degree: Some(15),
        weight_floor: None,
        nearness_target: None,
        error_bound: Some(1e-9),
    }
}

/// Derivative family: p = (x-1)^m1 (x-2)^m2 (x-3)^m3 (x-4)^m4 paired with
/// its formal derivative; the GCD drops each multiplicity by one.
pub fn gen_test6(multiplicities: [usize; 4]) -> Result<BenchCase> {
    if multiplicities.iter().all(|&m| m == 0) {
        return Err(Error::DegenerateCandidate("test6 requires a nonzero multiplicity"));
    }
    let factors = |ms: &[usize; 4]| {
        let mut fs = Vec::new();
        for (root, &m) in (1..=4).zip(ms) {
            for _ in 0..m {
                fs.push(Polynomial::from_real(&[-(root as f64), 1.0]).unwrap());
            }
        }
        fs
    };
    let p = product_of(factors(&multiplicities));
    let dp = p.derivative();
    let reduced = [
        multiplicities[0].saturating_sub(1),
        multiplicities[1].saturating_sub(1),
        multiplicities[2].saturating_sub(1),
        multiplicities[3].saturating_sub(1),
    ];
    let true_gcd = product_of(factors(&reduced));
    let degree = true_gcd.degree().unwrap_or(0);
    let pair = PolynomialPair::new(p, dp)?;
    let bound = if multiplicities.iter().sum::<usize>() > 12 { 1e-9 } else { 1e-11 };
    let ms = multiplicities;
    Ok(BenchCase {
        name: format!("test6:[{},{},{},{}]", ms[0], ms[1], ms[2], ms[3]),
        meta: format!("m={};{};{};{}", ms[0], ms[1], ms[2], ms[3]),
        pair,
        true_gcd: Some(true_gcd),
        cofactors: None,
        epsilon: 1e-10,
        relative_eps: true,
        normalize_inputs: false,
        expected_degree: Some(degree),
        weight_floor: None,
        nearness_target: None,
        error_bound: Some(bound),
    })
}

/// Coefficient-wise error after monic normalization: relative per
/// coefficient where the true coefficient clears 1e-3 of the true norm,
/// absolute below that floor.
pub fn coefficient_error(computed: &Polynomial, truth: &Polynomial) -> f64 {
    let c = computed.monic();
    let t = truth.monic();
    let len = c.coeffs().len().max(t.coeffs().len());
    let tnorm = t.norm();
    let mut worst = 0.0f64;
    for i in 0..len {
        let cv = c.coeff(i);
        let tv = t.coeff(i);
        let d = (cv - tv).norm();
        let err = if tv.norm() > 1e-3 * tnorm { d / tv.norm() } else { d };
        worst = worst.max(err);
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::pair_distance;

    fn product_consistency(case: &BenchCase) {
        let (Some(g), Some((v, w))) = (&case.true_gcd, &case.cofactors) else {
            return;
        };
        let rebuilt = PolynomialPair::new(g.multiply(v), g.multiply(w)).unwrap();
        let d = pair_distance(&rebuilt, &case.pair);
        assert!(d <= 1e-13 * case.pair.norm(), "distance {d}");
    }

    #[test]
    fn test1_construction() {
        assert!(gen_test1(5).is_err());
        assert!(gen_test1(2).is_err());
        let c = gen_test1(6).unwrap();
        assert_eq!(c.pair.m(), 12);
        assert_eq!(c.pair.n(), 12);
        assert_eq!(c.true_gcd.as_ref().unwrap().degree(), Some(6));
        product_consistency(&c);
    }

    #[test]
    fn test2_ladder_shape() {
        let cases = gen_test2();
        assert_eq!(cases.len(), 8);
        assert_eq!(cases[0].pair.m(), 10);
        assert_eq!(cases[0].expected_degree, Some(9));
        assert_eq!(cases[7].expected_degree, Some(2));
        assert!(cases.iter().all(|c| c.normalize_inputs));
    }

    #[test]
    fn test3_deterministic_and_consistent() {
        let a = gen_test3(20, 7).unwrap();
        let b = gen_test3(20, 7).unwrap();
        assert_eq!(a.pair.p().coeffs(), b.pair.p().coeffs());
        assert_eq!(a.pair.m(), 23);
        assert_eq!(a.pair.n(), 24);
        product_consistency(&a);
    }

    #[test]
    fn test5_magnitudes() {
        let c = gen_test5(3);
        let u = c.true_gcd.as_ref().unwrap();
        assert_eq!(u.degree(), Some(15));
        let maxc = u.coeffs().iter().map(|z| z.norm()).fold(0.0f64, f64::max);
        assert!(maxc >= 1e4, "expected wide magnitudes, got max {maxc}");
        product_consistency(&c);
    }

    #[test]
    fn test6_derivative_and_gcd() {
        let c = gen_test6([2, 1, 1, 0]).unwrap();
        assert_eq!(c.pair.m(), 4);
        assert_eq!(c.pair.n(), 3);
        assert_eq!(c.true_gcd.as_ref().unwrap().degree(), Some(1));
        assert!(gen_test6([0, 0, 0, 0]).is_err());
        // degenerate reduction: all multiplicities one -> constant gcd
        let c1 = gen_test6([1, 1, 1, 1]).unwrap();
        assert_eq!(c1.true_gcd.as_ref().unwrap().degree(), Some(0));
    }

    #[test]
    fn coefficient_error_metric() {
        let t = Polynomial::from_real(&[2.0, 0.0, 4.0]).unwrap();
        let c = Polynomial::from_real(&[2.0 + 4e-3, 1e-6, 4.0]).unwrap();
        // monic: divide by leading; relative on 0.5-size entries, absolute on 0
        let e = coefficient_error(&c, &t);
        assert!(e > 1e-4 && e < 3e-3, "e = {e}");
        assert_eq!(coefficient_error(&t, &t), 0.0);
    }
}
