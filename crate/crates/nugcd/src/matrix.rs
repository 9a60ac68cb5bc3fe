//! Dense complex matrices in column-major storage, with the Householder QR
//! machinery shared by the Sylvester sweep and the refinement stage.
//!
//! Only the triangular factor is ever kept; orthogonal factors exist as
//! lists of reflectors applied on the fly.

use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>, // column-major
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Complex64::default(); rows * cols] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[j * self.rows + i]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[j * self.rows + i] = v;
    }

    pub fn col(&self, j: usize) -> &[Complex64] {
        &self.data[j * self.rows..(j + 1) * self.rows]
    }

    pub fn col_mut(&mut self, j: usize) -> &mut [Complex64] {
        &mut self.data[j * self.rows..(j + 1) * self.rows]
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// y = A x.
    pub fn matvec(&self, x: &[Complex64]) -> Vec<Complex64> {
        debug_assert_eq!(x.len(), self.cols);
        let mut y = vec![Complex64::default(); self.rows];
        for (j, &xj) in x.iter().enumerate() {
            if xj == Complex64::default() {
                continue;
            }
            for (yi, aij) in y.iter_mut().zip(self.col(j)) {
                *yi += aij * xj;
            }
        }
        y
    }

    /// A^H A, used by the Gram-identity checks.
    pub fn gram(&self) -> DenseMatrix {
        let mut g = DenseMatrix::zeros(self.cols, self.cols);
        for i in 0..self.cols {
            for j in 0..self.cols {
                let mut s = Complex64::default();
                for (a, b) in self.col(i).iter().zip(self.col(j)) {
                    s += a.conj() * b;
                }
                g.set(i, j, s);
            }
        }
        g
    }

    /// Copies the leading t x t upper triangle (t = cols), zeroing below.
    pub fn crop_upper_triangle(&self) -> DenseMatrix {
        let t = self.cols;
        let mut r = DenseMatrix::zeros(t, t);
        for j in 0..t {
            for i in 0..=j.min(self.rows.saturating_sub(1)) {
                r.set(i, j, self.get(i, j));
            }
        }
        r
    }
}

/// One Householder reflector H = I - beta v v^H acting on rows
/// `offset..offset+v.len()`.
#[derive(Debug, Clone)]
pub struct Reflector {
    offset: usize,
    v: Vec<Complex64>,
    beta: f64,
}

impl Reflector {
    /// Builds a reflector sending `x` to `alpha e_1`; returns the reflector
    /// (None for a zero column) and alpha. The sign choice
    /// alpha = -phase(x_0)*||x|| avoids cancellation in v_0.
    pub fn from_column(offset: usize, x: &[Complex64]) -> (Option<Reflector>, Complex64) {
        let nrm = x.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if nrm == 0.0 {
            return (None, Complex64::default());
        }
        let phase = if x[0] == Complex64::default() {
            Complex64::new(1.0, 0.0)
        } else {
            x[0] / x[0].norm()
        };
        let alpha = -phase * nrm;
        let mut v = x.to_vec();
        v[0] -= alpha;
        let vnorm_sqr: f64 = v.iter().map(|c| c.norm_sqr()).sum();
        if vnorm_sqr == 0.0 {
            return (None, alpha);
        }
        (Some(Reflector { offset, v, beta: 2.0 / vnorm_sqr }), alpha)
    }

    /// Applies the reflector to a full-length vector.
    pub fn apply(&self, x: &mut [Complex64]) {
        let seg = &mut x[self.offset..self.offset + self.v.len()];
        let mut s = Complex64::default();
        for (vi, xi) in self.v.iter().zip(seg.iter()) {
            s += vi.conj() * xi;
        }
        s *= self.beta;
        if s == Complex64::default() {
            return;
        }
        for (vi, xi) in self.v.iter().zip(seg.iter_mut()) {
            *xi -= s * vi;
        }
    }
}

/// In-place Householder QR. The upper triangle of `a` becomes R; the
/// reflectors go to `store` when supplied, and are applied to `rhs`.
pub fn householder_qr(
    a: &mut DenseMatrix,
    mut store: Option<&mut Vec<Reflector>>,
    mut rhs: Option<&mut [Complex64]>,
) {
    let steps = a.cols.min(a.rows);
    for c in 0..steps {
        let col = &a.col(c)[c..];
        let (refl, alpha) = Reflector::from_column(c, col);
        if let Some(refl) = refl {
            for j in c + 1..a.cols {
                refl.apply(a.col_mut(j));
            }
            if let Some(b) = rhs.as_deref_mut() {
                refl.apply(b);
            }
            if let Some(list) = store.as_deref_mut() {
                list.push(refl);
            }
        }
        a.set(c, c, alpha);
        for i in c + 1..a.rows {
            a.set(i, c, Complex64::default());
        }
    }
}

/// Replaces tiny diagonal entries by `floor` with the original phase, the
/// standard guard for inverse iteration on a rank-deficient triangle.
fn floored(d: Complex64, floor: f64) -> Complex64 {
    if d.norm() >= floor {
        d
    } else if d == Complex64::default() {
        Complex64::new(floor, 0.0)
    } else {
        d / d.norm() * floor
    }
}

/// Solves R^H y = b by forward substitution (R upper triangular, square).
pub fn solve_upper_hermitian(r: &DenseMatrix, b: &[Complex64], diag_floor: f64) -> Vec<Complex64> {
    let t = r.cols();
    debug_assert_eq!(r.rows(), t);
    let mut y = vec![Complex64::default(); t];
    for i in 0..t {
        let col = r.col(i);
        let mut s = b[i];
        for k in 0..i {
            s -= col[k].conj() * y[k];
        }
        y[i] = s / floored(col[i], diag_floor).conj();
    }
    y
}

/// Solves R x = b by backward substitution in column-saxpy form.
pub fn solve_upper(r: &DenseMatrix, b: &[Complex64], diag_floor: f64) -> Vec<Complex64> {
    let t = r.cols();
    debug_assert_eq!(r.rows(), t);
    let mut work = b.to_vec();
    for i in (0..t).rev() {
        let col = r.col(i);
        let xi = work[i] / floored(col[i], diag_floor);
        work[i] = xi;
        for k in 0..i {
            work[k] -= col[k] * xi;
        }
    }
    work
}

/// Least-squares solve min ||A x - b|| by Householder QR with unit-column
/// equilibration. Consumes `a`. Errors when the equilibrated triangle has a
/// diagonal entry below `rank_tol` (relative to the Frobenius norm).
pub fn least_squares(mut a: DenseMatrix, b: &[Complex64], rank_tol: f64) -> Result<Vec<Complex64>> {
    debug_assert_eq!(a.rows, b.len());
    let cols = a.cols;
    let mut scale = vec![1.0f64; cols];
    for j in 0..cols {
        let nrm = a.col(j).iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if nrm > 0.0 {
            scale[j] = 1.0 / nrm;
            for v in a.col_mut(j) {
                *v *= scale[j];
            }
        }
    }
    let mut rhs = b.to_vec();
    householder_qr(&mut a, None, Some(&mut rhs));
    let fro = a.frobenius_norm();
    if fro == 0.0 {
        return Err(Error::DegenerateCandidate("zero least-squares system"));
    }
    for j in 0..cols {
        if a.get(j, j).norm() < rank_tol * fro {
            return Err(Error::DegenerateCandidate("rank-deficient least-squares system"));
        }
    }
    let r = a.crop_upper_triangle();
    let x = solve_upper(&r, &rhs[..cols], 0.0);
    Ok(x.into_iter().zip(scale).map(|(xi, s)| xi * s).collect())
}
