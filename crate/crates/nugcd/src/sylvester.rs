//! Convolution and Sylvester matrices, and the QR sweep over the Sylvester
//! index j = n, n-1, ..., 1 by column insertion.
//!
//! The state keeps the square-cropped triangular factor R_j of
//! S_j(p,q)·P_j, the column permutation P_j, and the Householder reflectors
//! accumulated so far. Going from j to j-1 appends one zero row and the two
//! shifted coefficient columns [0; p], [0; q] at the right end of the
//! permuted matrix; the old reflectors are applied to the new columns and
//! two fresh reflectors restore triangularity. Each downdate costs
//! O((m+n)^2), the whole sweep O((m+n)^3), matching a from-scratch
//! factorization only on the first step.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::{householder_qr, DenseMatrix, Reflector};
use crate::poly::{Polynomial, PolynomialPair};

/// The convolution matrix C_m(f): the matrix of g -> f*g on polynomials of
/// degree <= m, of size (deg f + m + 1) x (m + 1).
pub fn conv_matrix(f: &Polynomial, m: usize) -> Result<DenseMatrix> {
    let deg = f.degree().ok_or(Error::ZeroPolynomial)?;
    let rows = deg + m + 1;
    let mut a = DenseMatrix::zeros(rows, m + 1);
    for j in 0..=m {
        let col = a.col_mut(j);
        col[j..j + deg + 1].copy_from_slice(f.coeffs());
    }
    Ok(a)
}

/// The j-th Sylvester matrix S_j(p,q) = [C_{n-j}(p) | C_{m-j}(q)], of size
/// (m+n-j+1) x (m+n-2j+2), for 1 <= j <= min(m,n).
pub fn sylvester_matrix(pair: &PolynomialPair, j: usize) -> Result<DenseMatrix> {
    let (m, n) = (pair.m(), pair.n());
    let max_j = m.min(n);
    if j < 1 || j > max_j {
        return Err(Error::IndexOutOfRange { j, min: 1, max: max_j });
    }
    let rows = m + n - j + 1;
    let p_cols = n - j + 1;
    let q_cols = m - j + 1;
    let mut s = DenseMatrix::zeros(rows, p_cols + q_cols);
    for c in 0..p_cols {
        s.col_mut(c)[c..c + m + 1].copy_from_slice(pair.p().coeffs());
    }
    for c in 0..q_cols {
        s.col_mut(p_cols + c)[c..c + n + 1].copy_from_slice(pair.q().coeffs());
    }
    Ok(s)
}

/// Triangular factor of the permuted Sylvester matrix, updated in place
/// across the degree sweep.
#[derive(Debug, Clone)]
pub struct SylvesterQrState {
    j: usize,
    m: usize,
    n: usize,
    rows: usize,
    r: DenseMatrix,
    perm: Vec<usize>,
    reflectors: Vec<Reflector>,
    p_col: Vec<Complex64>,
    q_col: Vec<Complex64>,
}

impl SylvesterQrState {
    /// Factors S_n(p,q) by Householder QR; requires m >= n >= 1 (the caller
    /// orients the pair).
    pub fn qr_init(pair: &PolynomialPair) -> Result<Self> {
        let (m, n) = (pair.m(), pair.n());
        if n < 1 || m < n {
            return Err(Error::IndexOutOfRange { j: n, min: 1, max: m });
        }
        let mut s = sylvester_matrix(pair, n)?;
        let t = s.cols();
        let mut reflectors = Vec::with_capacity(t + 2 * n);
        householder_qr(&mut s, Some(&mut reflectors), None);
        Ok(Self {
            j: n,
            m,
            n,
            rows: m + 1,
            r: s.crop_upper_triangle(),
            perm: (0..t).collect(),
            reflectors,
            p_col: pair.p().coeffs().to_vec(),
            q_col: pair.q().coeffs().to_vec(),
        })
    }

    pub fn j(&self) -> usize {
        self.j
    }

    /// Square-cropped triangular factor of S_j(p,q)·P_j.
    pub fn r(&self) -> &DenseMatrix {
        &self.r
    }

    /// Column permutation as an index sequence: permuted column i holds the
    /// natural column perm[i] of S_j(p,q).
    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    /// Updates the factorization from S_j to S_{j-1}: one zero row appended,
    /// the columns [0; p] and [0; q] inserted at the right end under the
    /// updated permutation, triangularity restored by two new reflectors.
    pub fn qr_downdate(&mut self) -> Result<()> {
        if self.j < 2 {
            return Err(Error::IndexOutOfRange { j: self.j, min: 2, max: self.n });
        }
        let j = self.j;
        let (m, n) = (self.m, self.n);
        let t_old = self.r.cols();
        let new_rows = self.rows + 1;

        let mut c1 = vec![Complex64::default(); new_rows];
        c1[n - j + 1..n - j + 2 + m].copy_from_slice(&self.p_col);
        let mut c2 = vec![Complex64::default(); new_rows];
        c2[m - j + 1..m - j + 2 + n].copy_from_slice(&self.q_col);

        for refl in &self.reflectors {
            refl.apply(&mut c1);
            refl.apply(&mut c2);
        }

        let mut r_new = DenseMatrix::zeros(t_old + 2, t_old + 2);
        for c in 0..t_old {
            for i in 0..=c {
                r_new.set(i, c, self.r.get(i, c));
            }
        }

        let (refl1, alpha1) = Reflector::from_column(t_old, &c1[t_old..]);
        if let Some(refl) = &refl1 {
            refl.apply(&mut c2);
        }
        for i in 0..t_old {
            r_new.set(i, t_old, c1[i]);
        }
        r_new.set(t_old, t_old, alpha1);

        let (refl2, alpha2) = Reflector::from_column(t_old + 1, &c2[t_old + 1..]);
        for i in 0..=t_old {
            r_new.set(i, t_old + 1, c2[i]);
        }
        r_new.set(t_old + 1, t_old + 1, alpha2);

        if let Some(refl) = refl1 {
            self.reflectors.push(refl);
        }
        if let Some(refl) = refl2 {
            self.reflectors.push(refl);
        }

        // natural column indices shift: the p block gains one column, so all
        // old q-block columns move up by one; the new columns are the last
        // of each block.
        for e in self.perm.iter_mut() {
            if *e >= n - j + 1 {
                *e += 1;
            }
        }
        self.perm.push(n - j + 1);
        self.perm.push(t_old + 1);

        self.r = r_new;
        self.rows = new_rows;
        self.j = j - 1;
        Ok(())
    }
}
