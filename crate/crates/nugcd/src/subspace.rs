//! Smallest singular pair of a triangular factor by inverse iteration:
//! alternate forward/backward triangular solves with normalization. The
//! iterate converges to the right singular vector of the smallest singular
//! value at rate (sigma_min/sigma_2)^2 per step, so near rank deficiency a
//! handful of steps suffice.

use num_complex::Complex64;
use rand::Rng;

use crate::matrix::{solve_upper, solve_upper_hermitian, DenseMatrix};
use crate::poly::Polynomial;

/// Stopping control for the iteration.
#[derive(Debug, Clone)]
pub struct SvOpts {
    /// Relative tolerance on successive sigma estimates.
    pub rel_tol: f64,
    /// Absolute floor as a multiple of ||R||_F.
    pub floor: f64,
    pub max_iters: usize,
}

impl Default for SvOpts {
    fn default() -> Self {
        // order-of-magnitude accuracy is all the sweep threshold needs
        Self { rel_tol: 1e-2, floor: 1e-15, max_iters: 30 }
    }
}

impl SvOpts {
    /// Tight profile for oracle comparisons.
    pub fn tight() -> Self {
        Self { rel_tol: 1e-13, floor: 1e-16, max_iters: 2000 }
    }
}

/// Estimate of the smallest singular value and unit right singular vector.
#[derive(Debug, Clone)]
pub struct SingularPair {
    pub sigma: f64,
    /// Unit right singular vector in the (permuted) column coordinates of R.
    pub y: Vec<Complex64>,
    pub iterations: usize,
    pub converged: bool,
    /// Contraction of successive iterate differences; sqrt of it estimates
    /// sigma_min / sigma_2. Diagnostic only.
    pub contraction: Option<f64>,
}

fn random_unit(rng: &mut impl Rng, len: usize) -> Vec<Complex64> {
    loop {
        let v: Vec<Complex64> = (0..len)
            .map(|_| Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
            .collect();
        let nrm = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if nrm > 1e-6 {
            return v.into_iter().map(|c| c / nrm).collect();
        }
    }
}

/// Inverse iteration on a square upper-triangular R from a random unit
/// start. Diagonal entries below machine-epsilon * ||R||_F are floored with
/// their phase kept during the solves.
pub fn smallest_singular(r: &DenseMatrix, rng: &mut impl Rng, opts: &SvOpts) -> SingularPair {
    let t = r.cols();
    assert_eq!(r.rows(), t, "smallest_singular needs a square triangle");
    let rnorm = r.frobenius_norm();
    if rnorm == 0.0 || t == 0 {
        return SingularPair {
            sigma: 0.0,
            y: {
                let mut e = vec![Complex64::default(); t.max(1)];
                e[0] = Complex64::new(1.0, 0.0);
                e.truncate(t);
                e
            },
            iterations: 0,
            converged: true,
            contraction: None,
        };
    }
    let diag_floor = f64::EPSILON * rnorm;

    let mut z = random_unit(rng, t);
    let mut sigma_prev = f64::INFINITY;
    let mut sigma = rnorm;
    let mut diff_prev: Option<f64> = None;
    let mut contraction = None;
    let mut iterations = 0;
    let mut converged = false;

    while iterations < opts.max_iters {
        iterations += 1;
        let y = solve_upper_hermitian(r, &z, diag_floor);
        let w = solve_upper(r, &y, diag_floor);
        let wnorm = w.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if !wnorm.is_finite() || wnorm == 0.0 {
            break;
        }
        let mut z_new: Vec<Complex64> = w.into_iter().map(|c| c / wnorm).collect();
        // phase-align with the previous iterate so vector differences are
        // meaningful for the contraction diagnostic
        let mut dot = Complex64::default();
        for (a, b) in z.iter().zip(&z_new) {
            dot += a.conj() * b;
        }
        if dot.norm() > 0.0 {
            let ph = dot.conj() / dot.norm();
            for v in z_new.iter_mut() {
                *v *= ph;
            }
        }
        let diff = z
            .iter()
            .zip(&z_new)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt();
        if let Some(dp) = diff_prev {
            if dp > 0.0 {
                contraction = Some(diff / dp);
            }
        }
        diff_prev = Some(diff);
        z = z_new;

        sigma = r.matvec(&z).iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if (sigma - sigma_prev).abs() <= opts.rel_tol * sigma + opts.floor * rnorm {
            converged = true;
            break;
        }
        sigma_prev = sigma;
    }

    SingularPair { sigma, y: z, iterations, converged, contraction }
}

/// Splits the right singular vector of S_j(p,q)·P_j into the cofactor
/// candidates: un-permute, take the leading n-j+1 entries as w0 and the
/// negated trailing m-j+1 entries as v0. Degrees are structural; leading
/// entries may be small.
pub fn extract_cofactors(
    y: &[Complex64],
    perm: &[usize],
    m: usize,
    n: usize,
    j: usize,
) -> (Polynomial, Polynomial) {
    debug_assert_eq!(y.len(), perm.len());
    debug_assert_eq!(y.len(), m + n - 2 * j + 2);
    let mut x = vec![Complex64::default(); y.len()];
    for (i, &dst) in perm.iter().enumerate() {
        x[dst] = y[i];
    }
    let w0 = Polynomial::from_raw(x[..n - j + 1].to_vec());
    let v0 = Polynomial::from_raw(x[n - j + 1..].iter().map(|c| -c).collect());
    (v0, w0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn identity_triangle() {
        let mut r = DenseMatrix::zeros(5, 5);
        for i in 0..5 {
            r.set(i, i, Complex64::new(1.0, 0.0));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let sp = smallest_singular(&r, &mut rng, &SvOpts::default());
        assert!((sp.sigma - 1.0).abs() < 1e-12);
        let ynorm = sp.y.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        assert!((ynorm - 1.0).abs() < 1e-14);
    }

    #[test]
    fn prescribed_small_singular_value() {
        // diagonal triangle with a known tiny entry: sigma_min = 1e-8
        let vals = [2.0, 1.0, 1e-8, 3.0, 1.5];
        let mut r = DenseMatrix::zeros(5, 5);
        for (i, v) in vals.iter().enumerate() {
            r.set(i, i, Complex64::new(*v, 0.0));
            for j in i + 1..5 {
                r.set(i, j, Complex64::new(0.1 * (i + j) as f64, 0.05));
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let sp = smallest_singular(&r, &mut rng, &SvOpts::default());
        assert!(sp.converged);
        assert!(sp.iterations <= 5, "took {}", sp.iterations);
        // sigma never undershoots and here must land very close
        assert!(sp.sigma >= 0.0);
        assert!(sp.sigma <= 1.1e-8, "sigma {}", sp.sigma);
    }

    #[test]
    fn exact_zero_diagonal_is_floored_not_fatal() {
        let mut r = DenseMatrix::zeros(3, 3);
        r.set(0, 0, Complex64::new(1.0, 0.0));
        r.set(1, 1, Complex64::default());
        r.set(2, 2, Complex64::new(2.0, 0.0));
        r.set(0, 2, Complex64::new(0.5, 0.0));
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let sp = smallest_singular(&r, &mut rng, &SvOpts::default());
        assert!(sp.sigma <= 1e-12 * r.frobenius_norm());
    }

    #[test]
    fn scale_equivariance_power_of_two() {
        let mut r = DenseMatrix::zeros(4, 4);
        let diag = [1.3, 0.2, 2.1, 0.9];
        for (i, d) in diag.iter().enumerate() {
            r.set(i, i, Complex64::new(*d, 0.1));
            for j in i + 1..4 {
                r.set(i, j, Complex64::new(0.3, -0.2 * j as f64));
            }
        }
        let mut r4 = r.clone();
        for j in 0..4 {
            for v in r4.col_mut(j) {
                *v *= Complex64::new(4.0, 0.0);
            }
        }
        let sp1 = smallest_singular(&r, &mut ChaCha8Rng::seed_from_u64(11), &SvOpts::default());
        let sp2 = smallest_singular(&r4, &mut ChaCha8Rng::seed_from_u64(11), &SvOpts::default());
        assert!((sp2.sigma - 4.0 * sp1.sigma).abs() <= 1e-12 * sp2.sigma);
        for (a, b) in sp1.y.iter().zip(&sp2.y) {
            assert!((a - b).norm() < 1e-10);
        }
    }

    #[test]
    fn extract_identity_permutation() {
        // y = [w; -v] with w = x - 3, v = x - 2, j = 1, m = n = 2
        let y = [
            Complex64::new(-3.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(2.0, 0.0),
            Complex64::new(-1.0, 0.0),
        ];
        let perm = [0usize, 1, 2, 3];
        let (v0, w0) = extract_cofactors(&y, &perm, 2, 2, 1);
        assert_eq!(w0.coeffs(), &[Complex64::new(-3.0, 0.0), Complex64::new(1.0, 0.0)]);
        assert_eq!(v0.coeffs(), &[Complex64::new(-2.0, 0.0), Complex64::new(1.0, 0.0)]);
    }
}
