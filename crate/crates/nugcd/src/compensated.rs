//! Error-free transformations for the refinement residual.
//!
//! The Gauss-Newton residual subtracts two nearly equal coefficient vectors,
//! so each entry is accumulated in double-double precision (Ogita-Rump-Oishi
//! style two-sum/two-product) and rounded once at the end. Everything else in
//! the pipeline stays plain f64.

use num_complex::Complex64;

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let e = a.mul_add(b, -p);
    (p, e)
}

/// Running double-double sum.
#[derive(Clone, Copy, Default)]
struct DdSum {
    hi: f64,
    lo: f64,
}

impl DdSum {
    #[inline]
    fn add(&mut self, x: f64) {
        let (s, e) = two_sum(self.hi, x);
        self.hi = s;
        self.lo += e;
    }

    #[inline]
    fn add_prod(&mut self, a: f64, b: f64) {
        let (p, e) = two_prod(a, b);
        self.add(p);
        self.lo += e;
    }

    #[inline]
    fn value(self) -> f64 {
        self.hi + self.lo
    }
}

/// Coefficients of a*b minus `sub`, each entry accumulated in double-double.
/// `sub` may be shorter; missing entries are zero. The output has the
/// structural product length.
pub fn conv_sub(a: &[Complex64], b: &[Complex64], sub: &[Complex64]) -> Vec<Complex64> {
    if a.is_empty() || b.is_empty() {
        return sub.iter().map(|s| -s).collect();
    }
    let len = a.len() + b.len() - 1;
    debug_assert!(sub.len() <= len);
    let mut out = Vec::with_capacity(len);
    for k in 0..len {
        let mut re = DdSum::default();
        let mut im = DdSum::default();
        let lo = k.saturating_sub(b.len() - 1);
        let hi = k.min(a.len() - 1);
        for i in lo..=hi {
            let x = a[i];
            let y = b[k - i];
            re.add_prod(x.re, y.re);
            re.add_prod(-x.im, y.im);
            im.add_prod(x.re, y.im);
            im.add_prod(x.im, y.re);
        }
        if let Some(s) = sub.get(k) {
            re.add(-s.re);
            im.add(-s.im);
        }
        out.push(Complex64::new(re.value(), im.value()));
    }
    out
}

/// h^H u minus `sub`, accumulated in double-double.
pub fn dot_conj_sub(h: &[Complex64], u: &[Complex64], sub: Complex64) -> Complex64 {
    let mut re = DdSum::default();
    let mut im = DdSum::default();
    for (a, b) in h.iter().zip(u) {
        // conj(a) * b
        re.add_prod(a.re, b.re);
        re.add_prod(a.im, b.im);
        im.add_prod(a.re, b.im);
        im.add_prod(-a.im, b.re);
    }
    re.add(-sub.re);
    im.add(-sub.im);
    Complex64::new(re.value(), im.value())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conv_sub_cancellation() {
        // (1+x)^2 coefficients vs [1, 2, 1 + 1e-30]: the tiny defect must
        // survive the cancellation.
        let a = [Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)];
        let sub = [
            Complex64::new(1.0, 0.0),
            Complex64::new(2.0, 0.0),
            Complex64::new(1.0, 1e-16),
        ];
        let r = conv_sub(&a, &a, &sub);
        assert_eq!(r[0], Complex64::default());
        assert_eq!(r[1], Complex64::default());
        assert!((r[2].im + 1e-16).abs() < 1e-30);
    }

    #[test]
    fn conv_sub_matches_plain_on_benign_data() {
        let a: Vec<Complex64> = (0..5).map(|i| Complex64::new(i as f64 - 2.0, 0.3 * i as f64)).collect();
        let b: Vec<Complex64> = (0..4).map(|i| Complex64::new(1.5 - i as f64, -0.2)).collect();
        let r = conv_sub(&a, &b, &[]);
        for k in 0..r.len() {
            let mut s = Complex64::default();
            for i in 0..a.len() {
                if k >= i && k - i < b.len() {
                    s += a[i] * b[k - i];
                }
            }
            assert!((r[k] - s).norm() <= 1e-14 * s.norm().max(1.0));
        }
    }

    #[test]
    fn dot_conj_matches_plain() {
        let h: Vec<Complex64> = (0..6).map(|i| Complex64::new(0.1 * i as f64, -0.4)).collect();
        let u: Vec<Complex64> = (0..6).map(|i| Complex64::new(1.0 - 0.2 * i as f64, 0.7)).collect();
        let mut s = Complex64::default();
        for (a, b) in h.iter().zip(&u) {
            s += a.conj() * b;
        }
        let d = dot_conj_sub(&h, &u, Complex64::default());
        assert!((d - s).norm() <= 1e-14 * s.norm().max(1.0));
    }
}
