//! C ABI for the numerical polynomial GCD solver.
//!
//! Polynomials cross the boundary as parallel real/imaginary coefficient
//! arrays in ascending power order (the imaginary array may be NULL for
//! real input). Results live behind an opaque handle with getter functions
//! and must be released with [`nugcd_result_free`]. Every entry point
//! catches panics and maps failures to [`NugcdStatus`] codes.

use std::os::raw::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use num_complex::Complex64;
use nugcd::{uvgcd, GcdConfig, GcdResult, Polynomial, PolynomialPair};

/// Status codes returned by every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NugcdStatus {
    Ok = 0,
    /// A required pointer argument was NULL.
    NullArgument = 1,
    /// The coefficients do not form a valid nonzero polynomial
    /// (zero-length, zero leading coefficient, or non-finite entries).
    InvalidInput = 2,
    /// The tolerance was not a positive finite number.
    InvalidEpsilon = 3,
    /// An output buffer was smaller than the reported length.
    BufferTooSmall = 4,
    /// The computation failed numerically.
    NumericFailure = 5,
    /// A panic was caught at the boundary.
    Panic = 6,
}

/// Solver options; obtain defaults from [`nugcd_options_default`].
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct NugcdOptions {
    /// Backward-error tolerance.
    pub epsilon: f64,
    /// Nonzero: interpret epsilon relative to the pair norm.
    pub relative: u8,
    /// Nonzero: scale both inputs to unit norm first.
    pub normalize_inputs: u8,
    pub rng_seed: u64,
    pub max_gn_steps: usize,
    pub max_iter_steps: usize,
    /// Floor for the relative residual row weights, as a fraction of the
    /// largest coefficient magnitude.
    pub weight_floor: f64,
}

/// Opaque result handle.
pub struct NugcdResult {
    inner: GcdResult,
}

#[no_mangle]
pub extern "C" fn nugcd_options_default() -> NugcdOptions {
    let d = GcdConfig::default();
    NugcdOptions {
        epsilon: d.epsilon,
        relative: d.relative as u8,
        normalize_inputs: d.normalize_inputs as u8,
        rng_seed: d.rng_seed,
        max_gn_steps: d.max_gn_steps,
        max_iter_steps: d.max_iter_steps,
        weight_floor: d.weight_floor,
    }
}

unsafe fn poly_from_parts(re: *const f64, im: *const f64, len: usize) -> Result<Polynomial, NugcdStatus> {
    if re.is_null() || len == 0 {
        return Err(NugcdStatus::NullArgument);
    }
    let res = std::slice::from_raw_parts(re, len);
    let coeffs: Vec<Complex64> = if im.is_null() {
        res.iter().map(|&r| Complex64::new(r, 0.0)).collect()
    } else {
        let ims = std::slice::from_raw_parts(im, len);
        res.iter().zip(ims).map(|(&r, &i)| Complex64::new(r, i)).collect()
    };
    Polynomial::new(coeffs).map_err(|_| NugcdStatus::InvalidInput)
}

/// Computes the numerical GCD of the two polynomials within the tolerance.
///
/// `p_im`/`q_im` may be NULL for real coefficients; `options` may be NULL
/// for defaults. On success `*out` owns the result and must be freed with
/// [`nugcd_result_free`].
///
/// # Safety
/// Coefficient pointers must reference at least `p_len`/`q_len` readable
/// doubles; `out` must be a valid writable pointer.
#[no_mangle]
pub unsafe extern "C" fn nugcd_gcd(
    p_re: *const f64,
    p_im: *const f64,
    p_len: usize,
    q_re: *const f64,
    q_im: *const f64,
    q_len: usize,
    options: *const NugcdOptions,
    out: *mut *mut NugcdResult,
) -> NugcdStatus {
    if out.is_null() {
        return NugcdStatus::NullArgument;
    }
    *out = ptr::null_mut();
    let p = match poly_from_parts(p_re, p_im, p_len) {
        Ok(p) => p,
        Err(s) => return s,
    };
    let q = match poly_from_parts(q_re, q_im, q_len) {
        Ok(q) => q,
        Err(s) => return s,
    };
    let opts = if options.is_null() { nugcd_options_default() } else { *options };
    if !(opts.epsilon > 0.0) || !opts.epsilon.is_finite() {
        return NugcdStatus::InvalidEpsilon;
    }
    let config = GcdConfig {
        epsilon: opts.epsilon,
        relative: opts.relative != 0,
        normalize_inputs: opts.normalize_inputs != 0,
        rng_seed: opts.rng_seed,
        max_gn_steps: opts.max_gn_steps.max(1),
        max_iter_steps: opts.max_iter_steps.max(1),
        weight_floor: opts.weight_floor,
    };
    let run = catch_unwind(AssertUnwindSafe(|| {
        let pair = PolynomialPair::new(p, q).map_err(|_| NugcdStatus::InvalidInput)?;
        uvgcd(&pair, &config).map_err(|_| NugcdStatus::NumericFailure)
    }));
    match run {
        Ok(Ok(result)) => {
            *out = Box::into_raw(Box::new(NugcdResult { inner: result }));
            NugcdStatus::Ok
        }
        Ok(Err(status)) => status,
        Err(_) => NugcdStatus::Panic,
    }
}

/// Releases a result handle; NULL is a no-op.
///
/// # Safety
/// `result` must come from [`nugcd_gcd`] and not have been freed before.
#[no_mangle]
pub unsafe extern "C" fn nugcd_result_free(result: *mut NugcdResult) {
    if !result.is_null() {
        drop(Box::from_raw(result));
    }
}

/// Certified numerical GCD degree.
///
/// # Safety
/// `result` must be a live handle from [`nugcd_gcd`].
#[no_mangle]
pub unsafe extern "C" fn nugcd_result_degree(result: *const NugcdResult) -> usize {
    (*result).inner.degree
}

/// Nonzero when a candidate degree passed certification.
///
/// # Safety
/// `result` must be a live handle from [`nugcd_gcd`].
#[no_mangle]
pub unsafe extern "C" fn nugcd_result_certified(result: *const NugcdResult) -> u8 {
    (*result).inner.certified as u8
}

/// Certification residual (weighted nearness).
///
/// # Safety
/// `result` must be a live handle from [`nugcd_gcd`].
#[no_mangle]
pub unsafe extern "C" fn nugcd_result_rho(result: *const NugcdResult) -> f64 {
    (*result).inner.triplet.rho
}

/// Plain backward distance ||(u*v, u*w) - (p, q)||.
///
/// # Safety
/// `result` must be a live handle from [`nugcd_gcd`].
#[no_mangle]
pub unsafe extern "C" fn nugcd_result_backward_error(result: *const NugcdResult) -> f64 {
    (*result).inner.triplet.backward_error
}

/// Condition estimate (reciprocal smallest singular value of the Jacobian).
///
/// # Safety
/// `result` must be a live handle from [`nugcd_gcd`].
#[no_mangle]
pub unsafe extern "C" fn nugcd_result_kappa(result: *const NugcdResult) -> f64 {
    (*result).inner.triplet.kappa
}

/// Nonzero when the inputs were exchanged internally to enforce
/// deg p >= deg q (the cofactors are already swapped back).
///
/// # Safety
/// `result` must be a live handle from [`nugcd_gcd`].
#[no_mangle]
pub unsafe extern "C" fn nugcd_result_swapped(result: *const NugcdResult) -> u8 {
    (*result).inner.swapped as u8
}

/// Effective absolute tolerance after the relative/normalize modes.
///
/// # Safety
/// `result` must be a live handle from [`nugcd_gcd`].
#[no_mangle]
pub unsafe extern "C" fn nugcd_result_epsilon_used(result: *const NugcdResult) -> f64 {
    (*result).inner.epsilon_used
}

/// Coefficient count of the GCD (degree + 1).
///
/// # Safety
/// `result` must be a live handle from [`nugcd_gcd`].
#[no_mangle]
pub unsafe extern "C" fn nugcd_result_gcd_len(result: *const NugcdResult) -> usize {
    (*result).inner.triplet.u.coeffs().len()
}

/// Coefficient count of the first input's cofactor.
///
/// # Safety
/// `result` must be a live handle from [`nugcd_gcd`].
#[no_mangle]
pub unsafe extern "C" fn nugcd_result_cofactor_p_len(result: *const NugcdResult) -> usize {
    (*result).inner.triplet.v.coeffs().len()
}

/// Coefficient count of the second input's cofactor.
///
/// # Safety
/// `result` must be a live handle from [`nugcd_gcd`].
#[no_mangle]
pub unsafe extern "C" fn nugcd_result_cofactor_q_len(result: *const NugcdResult) -> usize {
    (*result).inner.triplet.w.coeffs().len()
}

/// Number of Sylvester indices visited by the sweep.
///
/// # Safety
/// `result` must be a live handle from [`nugcd_gcd`].
#[no_mangle]
pub unsafe extern "C" fn nugcd_result_sigma_trace_len(result: *const NugcdResult) -> usize {
    (*result).inner.sigma_trace.len()
}

unsafe fn copy_poly(p: &Polynomial, re: *mut f64, im: *mut f64, cap: usize) -> NugcdStatus {
    if re.is_null() || im.is_null() {
        return NugcdStatus::NullArgument;
    }
    let coeffs = p.coeffs();
    if cap < coeffs.len() {
        return NugcdStatus::BufferTooSmall;
    }
    for (i, c) in coeffs.iter().enumerate() {
        *re.add(i) = c.re;
        *im.add(i) = c.im;
    }
    NugcdStatus::Ok
}

/// Copies the GCD coefficients (ascending) into the caller's buffers.
///
/// # Safety
/// `result` must be live; `re`/`im` must hold at least `cap` doubles, with
/// `cap >= nugcd_result_gcd_len(result)`.
#[no_mangle]
pub unsafe extern "C" fn nugcd_result_gcd(
    result: *const NugcdResult,
    re: *mut f64,
    im: *mut f64,
    cap: usize,
) -> NugcdStatus {
    copy_poly(&(*result).inner.triplet.u, re, im, cap)
}

/// Copies the cofactor of the first input (u * v ~ p).
///
/// # Safety
/// Same contract as [`nugcd_result_gcd`] with the v length.
#[no_mangle]
pub unsafe extern "C" fn nugcd_result_cofactor_p(
    result: *const NugcdResult,
    re: *mut f64,
    im: *mut f64,
    cap: usize,
) -> NugcdStatus {
    copy_poly(&(*result).inner.triplet.v, re, im, cap)
}

/// Copies the cofactor of the second input (u * w ~ q).
///
/// # Safety
/// Same contract as [`nugcd_result_gcd`] with the w length.
#[no_mangle]
pub unsafe extern "C" fn nugcd_result_cofactor_q(
    result: *const NugcdResult,
    re: *mut f64,
    im: *mut f64,
    cap: usize,
) -> NugcdStatus {
    copy_poly(&(*result).inner.triplet.w, re, im, cap)
}

/// Copies the sweep trace: Sylvester index and smallest-singular-value
/// estimate per visited degree, in sweep order.
///
/// # Safety
/// `indices` and `sigmas` must hold at least `cap` entries, with
/// `cap >= nugcd_result_sigma_trace_len(result)`.
#[no_mangle]
pub unsafe extern "C" fn nugcd_result_sigma_trace(
    result: *const NugcdResult,
    indices: *mut usize,
    sigmas: *mut f64,
    cap: usize,
) -> NugcdStatus {
    if indices.is_null() || sigmas.is_null() {
        return NugcdStatus::NullArgument;
    }
    let trace = &(*result).inner.sigma_trace;
    if cap < trace.len() {
        return NugcdStatus::BufferTooSmall;
    }
    for (i, (j, s)) in trace.iter().enumerate() {
        *indices.add(i) = *j;
        *sigmas.add(i) = *s;
    }
    NugcdStatus::Ok
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn nugcd_status_message(status: NugcdStatus) -> *const c_char {
    let msg: &'static [u8] = match status {
        NugcdStatus::Ok => b"ok\0",
        NugcdStatus::NullArgument => b"null argument\0",
        NugcdStatus::InvalidInput => b"invalid polynomial input\0",
        NugcdStatus::InvalidEpsilon => b"tolerance must be positive\0",
        NugcdStatus::BufferTooSmall => b"output buffer too small\0",
        NugcdStatus::NumericFailure => b"numeric failure\0",
        NugcdStatus::Panic => b"internal panic\0",
    };
    msg.as_ptr() as *const c_char
}
