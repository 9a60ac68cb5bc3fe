//! Pedagogical floating-point Euclidean remainder sequence. Division is the
//! numerically wrong tool for inexact GCDs; this demo reports the remainder
//! norms so the instability is visible.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::poly::{Polynomial, PolynomialPair};

#[derive(Debug, Clone)]
pub struct EuclidStep {
    pub index: usize,
    pub divisor_degree: usize,
    pub remainder_degree: Option<usize>,
    pub remainder_norm: f64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EuclidOutcome {
    /// Remainder vanished (relative to the working scale): the last divisor
    /// plays the role of a GCD.
    ZeroRemainder { gcd_degree: usize },
    /// Sequence bottomed out at a nonzero constant: coprime verdict.
    NonzeroConstant,
}

#[derive(Debug, Clone)]
pub struct EuclidReport {
    pub steps: Vec<EuclidStep>,
    pub outcome: EuclidOutcome,
}

/// Runs naive Euclidean division steps f_j = q_j f_{j+1} + f_{j+2} in
/// floating point, reporting each remainder's norm.
pub fn euclid_demo(pair: &PolynomialPair) -> Result<EuclidReport> {
    if pair.m() < pair.n() {
        return Err(Error::IndexOutOfRange { j: pair.n(), min: 0, max: pair.m() });
    }
    let mut f0 = pair.p().clone();
    let mut f1 = pair.q().clone();
    let scale = pair.norm();
    let mut steps = Vec::new();
    let mut index = 0;
    loop {
        index += 1;
        let divisor_degree = f1.degree().expect("divisor nonzero");
        let rem = divide_remainder(&f0, &f1);
        let rnorm = rem.norm();
        steps.push(EuclidStep {
            index,
            divisor_degree,
            remainder_degree: rem.degree(),
            remainder_norm: rnorm,
        });
        // loose demo cutoff: division itself amplifies coefficient roundoff
        // by powers of the root magnitudes, so exact products do not reach
        // machine-level remainders
        if rnorm <= 1e-6 * scale {
            return Ok(EuclidReport { steps, outcome: EuclidOutcome::ZeroRemainder { gcd_degree: divisor_degree } });
        }
        if rem.degree().unwrap_or(0) == 0 {
            return Ok(EuclidReport { steps, outcome: EuclidOutcome::NonzeroConstant });
        }
        f0 = f1;
        f1 = rem;
    }
}

/// Classical long division remainder, with the exact-zero leading entries
/// of the structural remainder trimmed so the sequence descends.
fn divide_remainder(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let dg = g.degree().expect("divisor nonzero");
    let mut work: Vec<Complex64> = f.coeffs().to_vec();
    let lead = g.coeff(dg);
    while work.len() >= dg + 1 {
        let df = work.len() - 1;
        if df < dg {
            break;
        }
        let q = work[df] / lead;
        for i in 0..dg {
            let idx = df - dg + i;
            work[idx] -= q * g.coeff(i);
        }
        work.pop(); // leading term cancels by construction
        if dg == 0 {
            work.clear();
        }
    }
    while work.last() == Some(&Complex64::default()) {
        work.pop();
    }
    Polynomial::from_raw(work)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fg_pair(perturbed: bool) -> PolynomialPair {
        let mut f = vec![0.0; 11];
        if perturbed {
            f[0] = 10.0;
            f[1] = 1.0;
            f[8] = 3.333333333;
            f[9] = 10.33333333;
            f[10] = 1.0;
        } else {
            f[0] = 10.0;
            f[1] = 1.0;
            f[8] = 10.0 / 3.0;
            f[9] = 31.0 / 3.0;
            f[10] = 1.0;
        }
        PolynomialPair::new(
            Polynomial::from_real(&f).unwrap(),
            Polynomial::from_real(&[10.0, 1.0]).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn exact_pair_stops_in_one_step() {
        let rep = euclid_demo(&fg_pair(false)).unwrap();
        assert_eq!(rep.steps.len(), 1);
        // the remainder is f(-10) evaluated on rounded coefficients: the
        // 10^9 amplification leaves ~1e-7, seven orders below the perturbed
        // pair's 3.3 but far from machine level
        assert!(rep.steps[0].remainder_norm <= 1e-5, "norm {}", rep.steps[0].remainder_norm);
        assert_eq!(rep.outcome, EuclidOutcome::ZeroRemainder { gcd_degree: 1 });
    }

    #[test]
    fn perturbed_pair_yields_large_remainder() {
        let rep = euclid_demo(&fg_pair(true)).unwrap();
        let first = &rep.steps[0];
        assert!((first.remainder_norm - 3.3).abs() < 0.2, "norm {}", first.remainder_norm);
        assert_eq!(rep.outcome, EuclidOutcome::NonzeroConstant);
    }

    #[test]
    fn coprime_pair_terminates_at_constant() {
        let pair = PolynomialPair::new(
            Polynomial::from_real(&[1.0, 3.0, 1.0]).unwrap(),
            Polynomial::from_real(&[-2.0, 0.0, 1.0]).unwrap(),
        )
        .unwrap();
        let rep = euclid_demo(&pair).unwrap();
        assert_eq!(rep.outcome, EuclidOutcome::NonzeroConstant);
    }
}
