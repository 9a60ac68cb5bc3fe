//! Top-level two-stage driver: orient the pair, sweep the Sylvester index
//! downward with QR updating, test the detection threshold
//! sigma < eps*sqrt(m-j+1), refine candidates by Gauss-Newton, and certify
//! the first degree whose residual clears the tolerance. A failed candidate
//! never touches the sweep state; the sweep simply continues one index down.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::poly::{Polynomial, PolynomialPair};
use crate::refine::{gauss_newton, initial_gcd, GcdSystem, GcdTriplet};
use crate::subspace::{extract_cofactors, smallest_singular, SvOpts};
use crate::sylvester::SylvesterQrState;

#[derive(Debug, Clone)]
pub struct GcdConfig {
    /// Backward-error tolerance; absolute unless `relative` is set.
    pub epsilon: f64,
    /// Interpret epsilon as epsilon * ||(p,q)||.
    pub relative: bool,
    /// Scale p and q to unit norm first; results then refer to the scaled
    /// pair (the recorded scales allow reconstruction).
    pub normalize_inputs: bool,
    pub rng_seed: u64,
    pub max_gn_steps: usize,
    pub max_iter_steps: usize,
    /// Floor for the relative row weights in the refinement, as a fraction
    /// of the largest coefficient magnitude.
    pub weight_floor: f64,
}

impl Default for GcdConfig {
    fn default() -> Self {
        Self {
            epsilon: 1e-10,
            relative: false,
            normalize_inputs: false,
            rng_seed: 0x75764743,
            max_gn_steps: 50,
            max_iter_steps: 30,
            weight_floor: 1e-2,
        }
    }
}

#[derive(Debug, Clone)]
pub struct GcdResult {
    pub triplet: GcdTriplet,
    /// Certified numerical GCD degree; 0 for the trivial triplet.
    pub degree: usize,
    /// True when a candidate degree passed certification (or the input had
    /// a constant member, whose GCD is exactly the trivial triplet).
    pub certified: bool,
    /// (j, sigma) for every Sylvester index visited, j strictly decreasing.
    pub sigma_trace: Vec<(usize, f64)>,
    /// Whether p and q were exchanged to enforce m >= n; v and w in the
    /// triplet are already swapped back to match the caller's order.
    pub swapped: bool,
    /// Effective absolute tolerance after the relative/normalize modes.
    pub epsilon_used: f64,
    /// Input scales actually divided out (1.0 unless normalize_inputs).
    pub scale_p: f64,
    pub scale_q: f64,
    /// Weight floor the certification residual was computed with.
    pub weight_floor: f64,
}

/// Computes the numerical GCD triplet of (p, q) within the tolerance.
pub fn uvgcd(pair: &PolynomialPair, config: &GcdConfig) -> Result<GcdResult> {
    if !(config.epsilon > 0.0) || !config.epsilon.is_finite() {
        return Err(Error::InvalidEpsilon(config.epsilon));
    }
    let (scale_p, scale_q) = if config.normalize_inputs {
        (pair.p().norm(), pair.q().norm())
    } else {
        (1.0, 1.0)
    };
    let p_work = pair.p().scaled(Complex64::new(1.0 / scale_p, 0.0));
    let q_work = pair.q().scaled(Complex64::new(1.0 / scale_q, 0.0));

    let swapped = p_work.degree() < q_work.degree();
    let oriented = if swapped {
        PolynomialPair::new(q_work, p_work)?
    } else {
        PolynomialPair::new(p_work, q_work)?
    };
    let (m, n) = (oriented.m(), oriented.n());

    let eps_abs = if config.relative {
        config.epsilon * oriented.norm()
    } else {
        config.epsilon
    };

    let mut rng = ChaCha8Rng::seed_from_u64(config.rng_seed);
    let sv_opts = SvOpts { max_iters: config.max_iter_steps, ..SvOpts::default() };
    let mut sigma_trace = Vec::new();

    if n >= 1 {
        let mut state = SylvesterQrState::qr_init(&oriented)?;
        loop {
            let j = state.j();
            let sp = smallest_singular(state.r(), &mut rng, &sv_opts);
            sigma_trace.push((j, sp.sigma));
            if sp.sigma < eps_abs * ((m - j + 1) as f64).sqrt() {
                if let Some(result) = try_candidate(
                    &oriented, j, &sp.y, state.perm(), eps_abs, config, &mut rng,
                )? {
                    return Ok(finish(result, j, true, sigma_trace, swapped, eps_abs, scale_p, scale_q, config));
                }
            }
            if j <= 1 {
                break;
            }
            state.qr_downdate()?;
        }
    }

    // no degree certified (or a constant input): trivial triplet (1, p, q)
    let sys = GcdSystem::new(&oriented, 0, &Polynomial::one(), config.weight_floor)?;
    let triplet = gauss_newton(
        &sys,
        &Polynomial::one(),
        oriented.p(),
        oriented.q(),
        1,
        &mut rng,
    )?;
    let certified = n == 0; // a nonzero constant divides everything exactly
    Ok(finish(triplet, 0, certified, sigma_trace, swapped, eps_abs, scale_p, scale_q, config))
}

fn try_candidate(
    oriented: &PolynomialPair,
    j: usize,
    y: &[Complex64],
    perm: &[usize],
    eps_abs: f64,
    config: &GcdConfig,
    rng: &mut ChaCha8Rng,
) -> Result<Option<GcdTriplet>> {
    let (m, n) = (oriented.m(), oriented.n());
    let (v0, w0) = extract_cofactors(y, perm, m, n, j);
    let u0 = match initial_gcd(&v0, &w0, oriented, j) {
        Ok(u0) => u0,
        Err(Error::DegenerateCandidate(_)) => return Ok(None),
        Err(e) => return Err(e),
    };
    let sys = match GcdSystem::new(oriented, j, &u0, config.weight_floor) {
        Ok(sys) => sys,
        Err(Error::DegenerateCandidate(_)) => return Ok(None),
        Err(e) => return Err(e),
    };
    match gauss_newton(&sys, &u0, &v0, &w0, config.max_gn_steps, rng) {
        Ok(triplet) if triplet.rho < eps_abs => Ok(Some(triplet)),
        Ok(_) => Ok(None),
        Err(Error::DegenerateCandidate(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

#[allow(clippy::too_many_arguments)]
fn finish(
    mut triplet: GcdTriplet,
    degree: usize,
    certified: bool,
    sigma_trace: Vec<(usize, f64)>,
    swapped: bool,
    epsilon_used: f64,
    scale_p: f64,
    scale_q: f64,
    config: &GcdConfig,
) -> GcdResult {
    if swapped {
        std::mem::swap(&mut triplet.v, &mut triplet.w);
    }
    normalize_phase(&mut triplet);
    GcdResult {
        triplet,
        degree,
        certified,
        sigma_trace,
        swapped,
        epsilon_used,
        scale_p,
        scale_q,
        weight_floor: config.weight_floor,
    }
}

/// Rotates the whole triplet by a unit phase so the largest GCD
/// coefficient is real positive. The products u*v, u*w, the residuals, and
/// the slice h^H u are all invariant (h is rotated along with u), but real
/// inputs come out with an essentially real GCD instead of a random ray.
fn normalize_phase(t: &mut GcdTriplet) {
    let Some((idx, _)) = t
        .u
        .coeffs()
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.norm().partial_cmp(&b.1.norm()).unwrap())
    else {
        return;
    };
    let pivot = t.u.coeff(idx);
    if pivot.norm() == 0.0 {
        return;
    }
    let c = pivot.conj() / pivot.norm();
    t.u = t.u.scaled(c);
    t.v = t.v.scaled(c.conj());
    t.w = t.w.scaled(c.conj());
    for h in t.h.iter_mut() {
        *h *= c;
    }
}

/// Independent re-check of a result against the pair it came from.
#[derive(Debug, Clone)]
pub struct VerifyReport {
    /// ||(u*v, u*w) - (p, q)|| recomputed from scratch on the scaled pair.
    pub backward_error: f64,
    /// Certification residual recomputed from scratch.
    pub recomputed_rho: f64,
    /// |h^H u - beta|.
    pub slice_error: f64,
    pub backward_within_rho: bool,
    pub rho_consistent: bool,
    pub slice_consistent: bool,
    pub certified_consistent: bool,
}

impl VerifyReport {
    pub fn pass(&self) -> bool {
        self.backward_within_rho && self.rho_consistent && self.slice_consistent && self.certified_consistent
    }
}

/// Recomputes the residuals of `result` from scratch (multiply plus pair
/// distance) and checks the certification invariants.
pub fn verify_result(pair: &PolynomialPair, result: &GcdResult) -> VerifyReport {
    let p_work = pair.p().scaled(Complex64::new(1.0 / result.scale_p, 0.0));
    let q_work = pair.q().scaled(Complex64::new(1.0 / result.scale_q, 0.0));
    let t = &result.triplet;

    let uv = t.u.multiply(&t.v);
    let uw = t.u.multiply(&t.w);
    let backward = (diff_norm_sqr(uv.coeffs(), p_work.coeffs())
        + diff_norm_sqr(uw.coeffs(), q_work.coeffs()))
    .sqrt();

    // slice residual
    let mut s = -t.beta;
    for (hc, uc) in t.h.iter().zip(t.u.coeffs()) {
        s += hc.conj() * uc;
    }
    let slice_error = s.norm();

    // recompute the weighted residual with the recorded floor; the oriented
    // pair matches (v, w) after undoing the swap
    let (pp, qq) = if result.swapped { (&q_work, &p_work) } else { (&p_work, &q_work) };
    let (vv, ww) = if result.swapped { (&t.w, &t.v) } else { (&t.v, &t.w) };
    let recomputed_rho = (|| -> Result<f64> {
        let oriented = PolynomialPair::new(pp.clone(), qq.clone())?;
        let mut sys =
            GcdSystem::new(&oriented, t.u.coeffs().len() - 1, &unit_like(&t.u), result.weight_floor)?;
        // use the recorded h (GcdSystem::new normalizes the supplied u)
        sys_set_h(&mut sys, &t.h);
        let r = sys.residual(t.u.coeffs(), vv.coeffs(), ww.coeffs());
        Ok(sys.weighted_norm(&r))
    })()
    .unwrap_or(f64::NAN);

    let pairnorm = (p_work.norm().powi(2) + q_work.norm().powi(2)).sqrt();
    let backward_within_rho = backward <= t.rho + 1e-12 * pairnorm;
    let rho_consistent = recomputed_rho.is_finite()
        && (recomputed_rho - t.rho).abs() <= 1e-6 * t.rho.max(1e-300) + 1e-13 * pairnorm;
    let slice_consistent = slice_error <= 1e-10 * (norm_of(&t.h) * t.u.norm()).max(1.0);
    let certified_consistent = !result.certified || backward < result.epsilon_used;

    VerifyReport {
        backward_error: backward,
        recomputed_rho,
        slice_error,
        backward_within_rho,
        rho_consistent,
        slice_consistent,
        certified_consistent,
    }
}

fn diff_norm_sqr(a: &[Complex64], b: &[Complex64]) -> f64 {
    let len = a.len().max(b.len());
    (0..len)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or_default();
            let y = b.get(i).copied().unwrap_or_default();
            (x - y).norm_sqr()
        })
        .sum()
}

fn norm_of(v: &[Complex64]) -> f64 {
    v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

fn unit_like(u: &Polynomial) -> Polynomial {
    if u.norm() > 0.0 {
        u.clone()
    } else {
        Polynomial::one()
    }
}

fn sys_set_h(sys: &mut GcdSystem, h: &[Complex64]) {
    sys.set_h(h.to_vec());
}


#[cfg(test)]
mod tests {
    use super::*;

    fn rp(coeffs: &[f64]) -> Polynomial {
        Polynomial::from_real(coeffs).unwrap()
    }

    fn known_triplet_pair() -> (PolynomialPair, Polynomial) {
        let u = rp(&[-2.0, 1.0, 1.0]);
        let v = rp(&[1.0, -4.0, 2.0, 1.0]);
        let w = rp(&[3.0, 1.0, -1.0, 0.0, 2.0]);
        (PolynomialPair::new(u.multiply(&v), u.multiply(&w)).unwrap(), u)
    }

    #[test]
    fn exact_recovery_with_swap() {
        // q has the higher degree, so the driver must orient and swap back
        let (pair, u) = known_triplet_pair();
        let cfg = GcdConfig { epsilon: 1e-8, ..Default::default() };
        let r = uvgcd(&pair, &cfg).unwrap();
        assert!(r.certified);
        assert!(r.swapped);
        assert_eq!(r.degree, 2);
        let got = r.triplet.u.monic();
        let want = u.monic();
        for (a, b) in got.coeffs().iter().zip(want.coeffs()) {
            assert!((a - b).norm() < 1e-10);
        }
        // v matches p's cofactor: u*v == p
        let uv = r.triplet.u.multiply(&r.triplet.v);
        for (a, b) in uv.coeffs().iter().zip(pair.p().coeffs()) {
            assert!((a - b).norm() < 1e-8);
        }
        let rep = verify_result(&pair, &r);
        assert!(rep.pass(), "{rep:?}");
    }

    #[test]
    fn coprime_pair_returns_trivial() {
        let p = rp(&[1.0, 3.0, 1.0]);
        let q = rp(&[-2.0, 0.0, 1.0]);
        let pair = PolynomialPair::new(p.clone(), q.clone()).unwrap();
        let cfg = GcdConfig { epsilon: 1e-10, ..Default::default() };
        let r = uvgcd(&pair, &cfg).unwrap();
        assert!(!r.certified);
        assert_eq!(r.degree, 0);
        assert_eq!(r.triplet.u, Polynomial::one());
        assert_eq!(r.triplet.v, p);
        assert_eq!(r.triplet.w, q);
        assert_eq!(r.triplet.rho, 0.0);
        // full sweep: j = 2, 1 visited in order
        assert_eq!(r.sigma_trace.iter().map(|t| t.0).collect::<Vec<_>>(), vec![2, 1]);
    }

    #[test]
    fn constant_input_short_circuits() {
        let pair = PolynomialPair::new(rp(&[1.0, 2.0, 1.0]), rp(&[5.0])).unwrap();
        let r = uvgcd(&pair, &GcdConfig { epsilon: 1e-8, ..Default::default() }).unwrap();
        assert!(r.certified);
        assert_eq!(r.degree, 0);
        assert!(r.sigma_trace.is_empty());
        assert_eq!(r.triplet.rho, 0.0);
    }

    #[test]
    fn rejects_bad_epsilon() {
        let pair = PolynomialPair::new(rp(&[1.0, 1.0]), rp(&[1.0, 2.0])).unwrap();
        assert!(uvgcd(&pair, &GcdConfig { epsilon: 0.0, ..Default::default() }).is_err());
        assert!(uvgcd(&pair, &GcdConfig { epsilon: -1.0, ..Default::default() }).is_err());
    }

    #[test]
    fn verify_detects_tampering() {
        let (pair, _) = known_triplet_pair();
        let cfg = GcdConfig { epsilon: 1e-8, ..Default::default() };
        let mut r = uvgcd(&pair, &cfg).unwrap();
        assert!(verify_result(&pair, &r).pass());
        // scale u by 2 without rescaling v, w
        r.triplet.u = r.triplet.u.scaled(Complex64::new(2.0, 0.0));
        assert!(!verify_result(&pair, &r).pass());
    }

    #[test]
    fn scale_equivariance_of_products() {
        let (pair, _) = known_triplet_pair();
        let c = 4.0; // power of two
        let scaled = PolynomialPair::new(
            pair.p().scaled(Complex64::new(c, 0.0)),
            pair.q().scaled(Complex64::new(c, 0.0)),
        )
        .unwrap();
        let cfg = GcdConfig { epsilon: 1e-8, ..Default::default() };
        let cfg_scaled = GcdConfig { epsilon: c * 1e-8, ..Default::default() };
        let r1 = uvgcd(&pair, &cfg).unwrap();
        let r2 = uvgcd(&scaled, &cfg_scaled).unwrap();
        assert_eq!(r1.degree, r2.degree);
        let uv1 = r1.triplet.u.multiply(&r1.triplet.v);
        let uv2 = r2.triplet.u.multiply(&r2.triplet.v);
        for (a, b) in uv1.coeffs().iter().zip(uv2.coeffs()) {
            assert!((a * Complex64::new(c, 0.0) - b).norm() <= 1e-12 * b.norm().max(1.0));
        }
    }

    #[test]
    fn normalize_inputs_mode() {
        let (pair, u) = known_triplet_pair();
        let cfg = GcdConfig { epsilon: 1e-9, normalize_inputs: true, ..Default::default() };
        let r = uvgcd(&pair, &cfg).unwrap();
        assert!(r.certified);
        assert_eq!(r.degree, 2);
        assert!((r.scale_p - pair.p().norm()).abs() < 1e-12);
        let got = r.triplet.u.monic();
        for (a, b) in got.coeffs().iter().zip(u.monic().coeffs()) {
            assert!((a - b).norm() < 1e-9);
        }
        assert!(verify_result(&pair, &r).pass());
    }
}
