//! Certification and refinement of a candidate GCD degree: solve the
//! regularized quadratic least-squares system
//!
//! ```text
//! f_h(u,v,w) = [h^H u; coeffs(u*v); coeffs(u*w)] = [beta; p; q]
//! ```
//!
//! by Gauss-Newton. The scale ambiguity of the triplet is removed by the
//! auxiliary row h^H u = beta with h a scalar multiple of the initial GCD
//! approximation. Steps solve a linear least-squares problem with the block
//! Jacobian; the Moore-Penrose inverse is never formed.
//!
//! The residual is minimized in a row-weighted norm, w_i =
//! N/max(|b_i|, floor*N) with N the largest coefficient magnitude, so
//! coefficients are matched in a relative sense. All weights are >= 1,
//! hence the reported rho upper-bounds the plain backward distance and
//! certifying rho < eps stays conservative.

use num_complex::Complex64;
use rand::Rng;

use crate::compensated::{conv_sub, dot_conj_sub};
use crate::error::{Error, Result};
use crate::matrix::{householder_qr, least_squares, DenseMatrix};
use crate::poly::{Polynomial, PolynomialPair};
use crate::subspace::{smallest_singular, SvOpts};


const RANK_TOL: f64 = 1e-14;
/// Relative improvement below which the residual counts as stalled.
const STALL_REL: f64 = 1e-3;
const DIVERGE_STEPS: usize = 5;

/// The weighted quadratic system for one candidate degree.
#[derive(Debug, Clone)]
pub struct GcdSystem {
    m: usize,
    n: usize,
    k: usize,
    /// Scaling vector, a unit multiple of the initial GCD approximation.
    h: Vec<Complex64>,
    beta: Complex64,
    /// Stacked right-hand side [beta; p; q].
    target: Vec<Complex64>,
    /// Row weights; weights[0] = 1 for the beta row.
    weights: Vec<f64>,
}

impl GcdSystem {
    /// Builds the system for candidate degree k with h = u0/||u0||, so that
    /// the rescaled initial iterate satisfies h^H u = beta = 1 exactly.
    pub fn new(pair: &PolynomialPair, k: usize, u0: &Polynomial, weight_floor: f64) -> Result<Self> {
        let gamma = u0.norm();
        if gamma == 0.0 || !gamma.is_finite() {
            return Err(Error::DegenerateCandidate("zero initial GCD approximation"));
        }
        if u0.coeffs().len() != k + 1 {
            return Err(Error::DegenerateCandidate("initial GCD length does not match candidate degree"));
        }
        let h: Vec<Complex64> = u0.coeffs().iter().map(|c| c / gamma).collect();
        let (m, n) = (pair.m(), pair.n());
        let mut target = Vec::with_capacity(m + n + 3);
        target.push(Complex64::new(1.0, 0.0));
        target.extend_from_slice(pair.p().coeffs());
        target.extend_from_slice(pair.q().coeffs());

        let nb = target[1..].iter().map(|c| c.norm()).fold(0.0f64, f64::max);
        let floor = (weight_floor * nb).max(f64::MIN_POSITIVE);
        let mut weights = Vec::with_capacity(target.len());
        weights.push(1.0);
        for b in &target[1..] {
            weights.push((nb / b.norm().max(floor)).max(1.0));
        }
        Ok(Self { m, n, k, h, beta: Complex64::new(1.0, 0.0), target, weights })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn h(&self) -> &[Complex64] {
        &self.h
    }

    pub fn beta(&self) -> Complex64 {
        self.beta
    }

    pub fn target(&self) -> &[Complex64] {
        &self.target
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Replaces the scaling vector; used when re-checking a result against
    /// the h it was actually computed with.
    pub(crate) fn set_h(&mut self, h: Vec<Complex64>) {
        debug_assert_eq!(h.len(), self.k + 1);
        self.h = h;
    }

    /// f_h(u,v,w) = [h^H u; coeffs(u*v); coeffs(u*w)], structural lengths.
    pub fn eval(&self, u: &[Complex64], v: &[Complex64], w: &[Complex64]) -> Vec<Complex64> {
        let mut out = Vec::with_capacity(self.m + self.n + 3);
        out.push(dot_conj_sub(&self.h, u, Complex64::default()));
        out.extend(conv_sub(u, v, &[]));
        out.extend(conv_sub(u, w, &[]));
        out
    }

    /// f_h(u,v,w) - [beta; p; q], each entry accumulated in double-double.
    pub fn residual(&self, u: &[Complex64], v: &[Complex64], w: &[Complex64]) -> Vec<Complex64> {
        let mut out = Vec::with_capacity(self.m + self.n + 3);
        out.push(dot_conj_sub(&self.h, u, self.beta));
        out.extend(conv_sub(u, v, &self.target[1..self.m + 2]));
        out.extend(conv_sub(u, w, &self.target[self.m + 2..]));
        out
    }

    /// Norm of a residual vector in the row-weighted metric.
    pub fn weighted_norm(&self, r: &[Complex64]) -> f64 {
        r.iter()
            .zip(&self.weights)
            .map(|(c, w)| (w * c.norm()).powi(2))
            .sum::<f64>()
            .sqrt()
    }
}

/// Certified triplet with its residuals and condition estimate.
#[derive(Debug, Clone)]
pub struct GcdTriplet {
    pub u: Polynomial,
    pub v: Polynomial,
    pub w: Polynomial,
    /// Weighted residual norm used for certification (the nearness).
    pub rho: f64,
    /// Plain backward distance ||(u*v, u*w) - (p, q)||; always <= rho.
    pub backward_error: f64,
    /// Reciprocal smallest singular value of the Jacobian at exit.
    pub kappa: f64,
    pub gn_steps: usize,
    pub converged: bool,
    /// Weighted residual after each step.
    pub residual_trace: Vec<f64>,
    /// Scaling vector and beta actually used, for verification.
    pub h: Vec<Complex64>,
    pub beta: Complex64,
}

/// Least-squares solution u0 of [C_k(v0); C_k(w0)] u = [p; q] by Householder
/// QR of the stacked convolution matrix.
pub fn initial_gcd(
    v0: &Polynomial,
    w0: &Polynomial,
    pair: &PolynomialPair,
    k: usize,
) -> Result<Polynomial> {
    let (m, n) = (pair.m(), pair.n());
    debug_assert_eq!(v0.coeffs().len(), m - k + 1);
    debug_assert_eq!(w0.coeffs().len(), n - k + 1);
    let top = conv_matrix_raw(v0.coeffs(), k);
    let bot = conv_matrix_raw(w0.coeffs(), k);
    let rows = (m + 1) + (n + 1);
    let mut a = DenseMatrix::zeros(rows, k + 1);
    for c in 0..=k {
        a.col_mut(c)[..m + 1].copy_from_slice(top.col(c));
        a.col_mut(c)[m + 1..].copy_from_slice(bot.col(c));
    }
    let mut b = Vec::with_capacity(rows);
    b.extend_from_slice(pair.p().coeffs());
    b.extend_from_slice(pair.q().coeffs());
    let x = least_squares(a, &b, RANK_TOL)?;
    Ok(Polynomial::from_raw(x))
}

// conv_matrix for structurally-degreed raw slices (leading entries may be
// tiny or zero, so the Polynomial constructor is bypassed).
fn conv_matrix_raw(f: &[Complex64], m: usize) -> DenseMatrix {
    let deg = f.len() - 1;
    let mut a = DenseMatrix::zeros(deg + m + 1, m + 1);
    for j in 0..=m {
        a.col_mut(j)[j..j + deg + 1].copy_from_slice(f);
    }
    a
}

/// The block Jacobian of f_h at (u,v,w):
/// [h^H 0 0; C_k(v) C_{m-k}(u) 0; C_k(w) 0 C_{n-k}(u)].
pub fn assemble_jacobian(sys: &GcdSystem, u: &Polynomial, v: &Polynomial, w: &Polynomial) -> DenseMatrix {
    let (m, n, k) = (sys.m, sys.n, sys.k);
    let rows = 1 + (m + 1) + (n + 1);
    let cols = (k + 1) + (m - k + 1) + (n - k + 1);
    let mut jac = DenseMatrix::zeros(rows, cols);
    for (c, hc) in sys.h.iter().enumerate() {
        jac.set(0, c, hc.conj());
    }
    let ck_v = conv_matrix_raw(v.coeffs(), k);
    let ck_w = conv_matrix_raw(w.coeffs(), k);
    let cu_v = conv_matrix_raw(u.coeffs(), m - k);
    let cu_w = conv_matrix_raw(u.coeffs(), n - k);
    for c in 0..=k {
        for i in 0..m + 1 {
            jac.set(1 + i, c, ck_v.get(i, c));
        }
        for i in 0..n + 1 {
            jac.set(2 + m + i, c, ck_w.get(i, c));
        }
    }
    for c in 0..=(m - k) {
        for i in 0..m + 1 {
            jac.set(1 + i, k + 1 + c, cu_v.get(i, c));
        }
    }
    for c in 0..=(n - k) {
        for i in 0..n + 1 {
            jac.set(2 + m + i, m + 2 + c, cu_w.get(i, c));
        }
    }
    jac
}

/// Gauss-Newton refinement from the initial triplet. Returns the iterate
/// with the smallest weighted residual once the residual stalls, or the
/// best-so-far with `converged == false` after five consecutive increases.
pub fn gauss_newton(
    sys: &GcdSystem,
    u0: &Polynomial,
    v0: &Polynomial,
    w0: &Polynomial,
    max_steps: usize,
    rng: &mut impl Rng,
) -> Result<GcdTriplet> {
    let (m, _n, k) = (sys.m, sys.n, sys.k);
    let gamma = u0.norm();
    if gamma == 0.0 {
        return Err(Error::DegenerateCandidate("zero initial GCD approximation"));
    }
    // rescale so that h^H u = beta exactly at the start
    let scale = Complex64::new(gamma, 0.0);
    let mut u: Vec<Complex64> = u0.coeffs().iter().map(|c| c / scale).collect();
    let mut v: Vec<Complex64> = v0.coeffs().iter().map(|c| c * scale).collect();
    let mut w: Vec<Complex64> = w0.coeffs().iter().map(|c| c * scale).collect();
    reslice(sys, &mut u, &mut v, &mut w);

    let mut trace = Vec::new();
    let mut best: Option<(f64, f64, Vec<Complex64>, Vec<Complex64>, Vec<Complex64>)> = None;
    let mut prev_rho: Option<f64> = None;
    let mut growth = 0usize;
    let mut converged = true;
    let mut steps = 0usize;

    for _ in 0..max_steps.max(1) {
        steps += 1;
        let r = sys.residual(&u, &v, &w);
        let rho_w = sys.weighted_norm(&r);
        let backward = r[1..].iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        trace.push(rho_w);
        if best.as_ref().map_or(true, |(b, ..)| rho_w < *b) {
            best = Some((rho_w, backward, u.clone(), v.clone(), w.clone()));
        }
        if let Some(p) = prev_rho {
            if rho_w > p {
                growth += 1;
                if growth >= DIVERGE_STEPS {
                    converged = false;
                    break;
                }
            } else {
                growth = 0;
                if rho_w >= p * (1.0 - STALL_REL) {
                    break;
                }
            }
        }
        prev_rho = Some(rho_w);
        if steps == max_steps.max(1) {
            break; // step budget exhausted; skip the unused solve
        }

        let jac = assemble_jacobian(
            sys,
            &Polynomial::from_raw(u.clone()),
            &Polynomial::from_raw(v.clone()),
            &Polynomial::from_raw(w.clone()),
        );
        let mut wjac = jac;
        for c in 0..wjac.cols() {
            let col = wjac.col_mut(c);
            for (i, val) in col.iter_mut().enumerate() {
                *val *= sys.weights[i];
            }
        }
        let wr: Vec<Complex64> = r.iter().zip(&sys.weights).map(|(c, wt)| c * *wt).collect();
        let dz = least_squares(wjac, &wr, RANK_TOL)?;

        for (ui, d) in u.iter_mut().zip(&dz[..k + 1]) {
            *ui -= d;
        }
        for (vi, d) in v.iter_mut().zip(&dz[k + 1..m + 2]) {
            *vi -= d;
        }
        for (wi, d) in w.iter_mut().zip(&dz[m + 2..]) {
            *wi -= d;
        }
        reslice(sys, &mut u, &mut v, &mut w);
    }

    let (rho, backward, u, v, w) = best.expect("at least one iterate evaluated");
    let (u, v, w) = (Polynomial::from_raw(u), Polynomial::from_raw(v), Polynomial::from_raw(w));

    let jac = assemble_jacobian(sys, &u, &v, &w);
    let kappa = condition_estimate(&qr_triangle(jac), rng);

    Ok(GcdTriplet {
        u,
        v,
        w,
        rho,
        backward_error: backward,
        kappa,
        gn_steps: steps,
        converged,
        residual_trace: trace,
        h: sys.h.clone(),
        beta: sys.beta,
    })
}

/// Rescales the triplet along its scale-flat direction so h^H u = beta
/// exactly; the products u*v, u*w are unchanged.
fn reslice(sys: &GcdSystem, u: &mut [Complex64], v: &mut [Complex64], w: &mut [Complex64]) {
    let s = dot_conj_sub(&sys.h, u, Complex64::default());
    if s == Complex64::default() {
        return;
    }
    let c = sys.beta / s;
    for x in u.iter_mut() {
        *x *= c;
    }
    for x in v.iter_mut() {
        *x /= c;
    }
    for x in w.iter_mut() {
        *x /= c;
    }
}

/// Triangular factor of a tall matrix, cropped square.
pub fn qr_triangle(mut a: DenseMatrix) -> DenseMatrix {
    householder_qr(&mut a, None, None);
    a.crop_upper_triangle()
}

/// Reciprocal of the smallest singular value of the exit triangle, estimated
/// by a short burst of inverse iteration. Returns +infinity when the
/// triangle is numerically singular.
pub fn condition_estimate(triangle: &DenseMatrix, rng: &mut impl Rng) -> f64 {
    let opts = SvOpts { max_iters: 2, ..SvOpts::default() };
    let sp = smallest_singular(triangle, rng, &opts);
    if sp.sigma < f64::EPSILON * triangle.frobenius_norm() {
        f64::INFINITY
    } else {
        1.0 / sp.sigma
    }
}
