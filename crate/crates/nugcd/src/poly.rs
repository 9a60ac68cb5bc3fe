//! Dense univariate polynomials over complex floating-point coefficients.
//!
//! Coefficients are stored in ascending power order `[c_0, c_1, ..., c_d]`.
//! The zero polynomial is the empty sequence and reports degree `None`
//! (standing in for degree -infinity). Degrees are structural: the
//! constructor rejects an exact-zero leading coefficient instead of
//! silently trimming, because the Sylvester dimensions downstream are
//! derived from the declared degrees.

use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<Complex64>,
}

impl Polynomial {
    /// Builds a polynomial from ascending coefficients. An empty sequence is
    /// the zero polynomial. Rejects non-finite entries and an exact-zero
    /// leading coefficient.
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        for (i, c) in coeffs.iter().enumerate() {
            if !c.re.is_finite() || !c.im.is_finite() {
                return Err(Error::NonFiniteCoefficient(i));
            }
        }
        if let Some(last) = coeffs.last() {
            if *last == Complex64::new(0.0, 0.0) {
                return Err(Error::ZeroLeadingCoefficient);
            }
        }
        Ok(Self { coeffs })
    }

    /// Convenience constructor embedding a real coefficient sequence.
    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    /// Internal constructor for structurally-degreed coefficient vectors
    /// coming out of the solvers, where a leading entry may be small or,
    /// in degenerate cases, zero. Degree stays as supplied.
    pub(crate) fn from_raw(coeffs: Vec<Complex64>) -> Self {
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self { coeffs: vec![Complex64::new(1.0, 0.0)] }
    }

    pub fn constant(c: Complex64) -> Result<Self> {
        Self::new(vec![c])
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient of x^i, zero beyond the stored length.
    pub fn coeff(&self, i: usize) -> Complex64 {
        self.coeffs.get(i).copied().unwrap_or_default()
    }

    /// `None` encodes the zero polynomial's degree of -infinity.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Euclidean norm of the coefficient vector.
    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Product by plain convolution of the coefficient sequences; zero if
    /// either factor is zero.
    pub fn multiply(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Complex64::default(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::from_raw(out)
    }

    /// Horner evaluation at x.
    pub fn evaluate(&self, x: Complex64) -> Complex64 {
        let mut acc = Complex64::default();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Polynomial {
        if self.coeffs.len() <= 1 {
            return Polynomial::zero();
        }
        let out = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * (i as f64))
            .collect();
        Polynomial::from_raw(out)
    }

    /// Scalar multiple.
    pub fn scaled(&self, c: Complex64) -> Polynomial {
        Polynomial::from_raw(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Scaled so the leading coefficient is one; zero stays zero.
    pub fn monic(&self) -> Polynomial {
        match self.coeffs.last() {
            Some(&lead) if lead != Complex64::default() => self.scaled(Complex64::new(1.0, 0.0) / lead),
            _ => self.clone(),
        }
    }

    /// Parses the one-line text form: ascending coefficients separated by
    /// whitespace, complex entries as `a+bi` with no internal spaces.
    /// An empty line is the zero polynomial.
    pub fn from_coeff_line(line: &str) -> Result<Self> {
        let mut coeffs = Vec::new();
        let mut offset = 0usize;
        for tok in line.split_whitespace() {
            let pos = line[offset..].find(tok).map(|p| p + offset).unwrap_or(offset);
            offset = pos + tok.len();
            coeffs.push(parse_complex_entry(tok).map_err(|message| Error::Parse { position: pos, message })?);
        }
        Self::new(coeffs)
    }

    /// Formats the one-line text form with shortest round-trip decimals.
    pub fn to_coeff_line(&self) -> String {
        self.coeffs
            .iter()
            .map(|c| format_complex_entry(*c))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// A pair of nonzero polynomials with their declared degrees.
#[derive(Debug, Clone)]
pub struct PolynomialPair {
    p: Polynomial,
    q: Polynomial,
}

impl PolynomialPair {
    pub fn new(p: Polynomial, q: Polynomial) -> Result<Self> {
        if p.is_zero() || q.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(Self { p, q })
    }

    pub fn p(&self) -> &Polynomial {
        &self.p
    }

    pub fn q(&self) -> &Polynomial {
        &self.q
    }

    pub fn m(&self) -> usize {
        self.p.degree().expect("p nonzero")
    }

    pub fn n(&self) -> usize {
        self.q.degree().expect("q nonzero")
    }

    /// Norm of the pair as a stacked coefficient array.
    pub fn norm(&self) -> f64 {
        (self.p.norm().powi(2) + self.q.norm().powi(2)).sqrt()
    }
}

/// Distance between two pairs, padding shorter coefficient sequences with
/// zeros before taking the stacked Euclidean norm.
pub fn pair_distance(a: &PolynomialPair, b: &PolynomialPair) -> f64 {
    (coeff_dist_sqr(a.p.coeffs(), b.p.coeffs()) + coeff_dist_sqr(a.q.coeffs(), b.q.coeffs())).sqrt()
}

fn coeff_dist_sqr(a: &[Complex64], b: &[Complex64]) -> f64 {
    let len = a.len().max(b.len());
    let mut acc = 0.0;
    for i in 0..len {
        let x = a.get(i).copied().unwrap_or_default();
        let y = b.get(i).copied().unwrap_or_default();
        acc += (x - y).norm_sqr();
    }
    acc
}

/// Parses a single complex coefficient entry: `3`, `-4.5e-2`, `2i`, `-i`,
/// `1+2i`, `1.5-0.5i`.
pub fn parse_complex_entry(tok: &str) -> std::result::Result<Complex64, String> {
    if tok.is_empty() {
        return Err("empty coefficient".into());
    }
    // find a +/- separator that is not leading and not part of an exponent
    let bytes = tok.as_bytes();
    let mut split = None;
    for i in (1..bytes.len()).rev() {
        let c = bytes[i] as char;
        if (c == '+' || c == '-') && !matches!(bytes[i - 1] as char, 'e' | 'E') {
            split = Some(i);
            break;
        }
    }
    let parse_imag = |s: &str| -> std::result::Result<f64, String> {
        let body = &s[..s.len() - 1];
        match body {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => body.parse::<f64>().map_err(|e| format!("bad imaginary part `{body}`: {e}")),
        }
    };
    if let Some(i) = split {
        let (re_s, im_s) = tok.split_at(i);
        if !im_s.ends_with('i') {
            return Err(format!("expected `i` suffix in `{tok}`"));
        }
        let re = re_s.parse::<f64>().map_err(|e| format!("bad real part `{re_s}`: {e}"))?;
        Ok(Complex64::new(re, parse_imag(im_s)?))
    } else if tok.ends_with('i') {
        Ok(Complex64::new(0.0, parse_imag(tok)?))
    } else {
        tok.parse::<f64>()
            .map(|re| Complex64::new(re, 0.0))
            .map_err(|e| format!("bad number `{tok}`: {e}"))
    }
}

/// Formats a complex entry in the same `a+bi` form the parser accepts,
/// with shortest round-trip decimals.
pub fn format_complex_entry(c: Complex64) -> String {
    if c.im == 0.0 {
        format!("{}", c.re)
    } else if c.re == 0.0 {
        format!("{}i", c.im)
    } else if c.im < 0.0 {
        format!("{}-{}i", c.re, -c.im)
    } else {
        format!("{}+{}i", c.re, c.im)
    }
}
