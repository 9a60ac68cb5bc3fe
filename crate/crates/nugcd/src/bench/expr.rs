//! Recursive-descent parser for the human polynomial expression form:
//! `x^2+3*x+2`, decimal or complex coefficients (`i` suffix), parentheses,
//! unary sign, `^` with a nonnegative integer exponent. Expressions expand
//! to coefficient vectors in floating point.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::poly::Polynomial;

pub fn parse_expression(text: &str) -> Result<Polynomial> {
    let mut p = Parser { bytes: text.as_bytes(), pos: 0 };
    p.skip_ws();
    let poly = p.expr()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(p.error("unexpected trailing input"));
    }
    // canonicalize: expressions like 0*x^2 leave exact-zero leading entries
    let mut coeffs = poly.coeffs().to_vec();
    while coeffs.last() == Some(&Complex64::default()) {
        coeffs.pop();
    }
    Ok(Polynomial::from_raw(coeffs))
}

/// Dispatches between the coefficient-list form (no `x`) and the expression
/// form.
pub fn parse_polynomial(text: &str) -> Result<Polynomial> {
    if text.contains('x') || text.contains('X') {
        parse_expression(&text.to_ascii_lowercase())
    } else {
        Polynomial::from_coeff_line(text)
    }
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, message: &str) -> Error {
        Error::Parse { position: self.pos, message: message.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                self.skip_ws();
                neg(&self.term()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.skip_ws();
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    self.skip_ws();
                    acc = add(&acc, &self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    self.skip_ws();
                    acc = add(&acc, &neg(&self.term()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
                self.skip_ws();
                acc = acc.multiply(&self.factor()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        self.skip_ws();
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.integer()?;
            let mut acc = Polynomial::one();
            for _ in 0..e {
                acc = acc.multiply(&base);
            }
            Ok(acc)
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                self.skip_ws();
                let inner = self.expr()?;
                self.skip_ws();
                if self.peek() != Some(b')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'x') => {
                self.pos += 1;
                Ok(Polynomial::from_raw(vec![
                    Complex64::default(),
                    Complex64::new(1.0, 0.0),
                ]))
            }
            Some(b'i') => {
                self.pos += 1;
                Ok(Polynomial::from_raw(vec![Complex64::new(0.0, 1.0)]))
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => self.number(),
            Some(b'-') => {
                self.pos += 1;
                self.skip_ws();
                Ok(neg(&self.factor()?))
            }
            _ => Err(self.error("expected a number, `x`, `i`, or `(`")),
        }
    }

    fn number(&mut self) -> Result<Polynomial> {
        let start = self.pos;
        while let Some(c) = self.peek() {
            match c {
                b'0'..=b'9' | b'.' => self.pos += 1,
                b'e' | b'E' => {
                    // exponent only if followed by digits or a signed digit
                    let next = self.bytes.get(self.pos + 1).copied();
                    let next2 = self.bytes.get(self.pos + 2).copied();
                    let ok = match next {
                        Some(d) if d.is_ascii_digit() => true,
                        Some(b'+') | Some(b'-') => next2.map_or(false, |d| d.is_ascii_digit()),
                        _ => false,
                    };
                    if !ok {
                        break;
                    }
                    self.pos += 2;
                    while self.peek().map_or(false, |d| d.is_ascii_digit()) {
                        self.pos += 1;
                    }
                    break;
                }
                _ => break,
            }
        }
        if self.pos == start {
            return Err(self.error("expected a number"));
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        let value: f64 = text.parse().map_err(|e| Error::Parse {
            position: start,
            message: format!("bad number `{text}`: {e}"),
        })?;
        if self.peek() == Some(b'i') {
            self.pos += 1;
            Ok(Polynomial::from_raw(vec![Complex64::new(0.0, value)]))
        } else {
            Ok(Polynomial::from_raw(vec![Complex64::new(value, 0.0)]))
        }
    }

    fn integer(&mut self) -> Result<usize> {
        let start = self.pos;
        while self.peek().map_or(false, |d| d.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected a nonnegative integer exponent"));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| Error::Parse { position: start, message: "exponent too large".into() })
    }
}

fn add(a: &Polynomial, b: &Polynomial) -> Polynomial {
    let len = a.coeffs().len().max(b.coeffs().len());
    let mut out = vec![Complex64::default(); len];
    for (i, c) in a.coeffs().iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.coeffs().iter().enumerate() {
        out[i] += c;
    }
    // trim exact-zero leading coefficients introduced by cancellation
    while out.last() == Some(&Complex64::default()) {
        out.pop();
    }
    Polynomial::from_raw(out)
}

fn neg(a: &Polynomial) -> Polynomial {
    Polynomial::from_raw(a.coeffs().iter().map(|c| -c).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple_forms() {
        let p = parse_polynomial("x+10").unwrap();
        assert_eq!(p, Polynomial::from_real(&[10.0, 1.0]).unwrap());
        let q = parse_polynomial("x^2+3*x+2").unwrap();
        assert_eq!(q, Polynomial::from_real(&[2.0, 3.0, 1.0]).unwrap());
        let r = parse_polynomial("(x-1)*(x+1)").unwrap();
        assert_eq!(r, Polynomial::from_real(&[-1.0, 0.0, 1.0]).unwrap());
    }

    #[test]
    fn perturbed_coefficients_from_text() {
        let p = parse_polynomial("x^10+10.33333333*x^9+3.333333333*x^8+x+10.").unwrap();
        assert_eq!(p.degree(), Some(10));
        assert_eq!(p.coeff(0).re, 10.0);
        assert_eq!(p.coeff(1).re, 1.0);
        assert_eq!(p.coeff(8).re, 3.333333333);
        assert_eq!(p.coeff(9).re, 10.33333333);
        assert_eq!(p.coeff(10).re, 1.0);
        for i in [2usize, 3, 4, 5, 6, 7] {
            assert_eq!(p.coeff(i), Complex64::default());
        }
    }

    #[test]
    fn complex_coefficients_round_trip() {
        let p = parse_polynomial("(1+2i)*x^2-3").unwrap();
        assert_eq!(p.coeff(2), Complex64::new(1.0, 2.0));
        assert_eq!(p.coeff(0), Complex64::new(-3.0, 0.0));
        let line = p.to_coeff_line();
        let back = parse_polynomial(&line).unwrap();
        assert_eq!(p, back);
    }

    #[test]
    fn coefficient_list_dispatch() {
        assert_eq!(parse_polynomial("10 1").unwrap(), Polynomial::from_real(&[10.0, 1.0]).unwrap());
        assert_eq!(
            parse_polynomial("1+2i 0 1").unwrap().coeff(0),
            Complex64::new(1.0, 2.0)
        );
    }

    #[test]
    fn position_annotated_errors() {
        let err = parse_polynomial("x^2 + + 3").unwrap_err();
        match err {
            Error::Parse { position, .. } => assert_eq!(position, 6),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_polynomial("x^").is_err());
        assert!(parse_polynomial("(x+1").is_err());
    }
}
