//! Text format for polynomials.
//!
//! ```text
//! poly   := ['-'] term (('+'|'-') term)*
//! term   := coeff ['*'] factor ('*' factor)* | coeff | factor ('*' factor)*
//! factor := var ['^' uint]
//! coeff  := int | int '/' uint        (fractions over Q only)
//! var    := 'x' digit
//! ```
//!
//! Whitespace is ignored. Printing emits terms in descending grevlex with
//! explicit `*` and `^` only for exponents of at least 2; prime-field
//! coefficients are printed in the symmetric range.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::field::{Field, Scalar};
use super::monomial::Monomial;
use super::polynomial::{Polynomial, Ring};
use crate::error::{Error, Result};

pub fn parse_poly(text: &str, ring: Ring) -> Result<Polynomial> {
    Parser { src: text.as_bytes(), pos: 0, ring }.poly()
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ring: Ring,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { position: self.pos, message: message.into() })
    }

    fn poly(&mut self) -> Result<Polynomial> {
        let mut terms = Vec::new();
        let mut negative = false;
        if self.peek() == Some(b'-') {
            negative = true;
            self.pos += 1;
        }
        loop {
            let (m, c) = self.term()?;
            terms.push((m, if negative { -c } else { c }));
            match self.peek() {
                None => break,
                Some(b'+') => negative = false,
                Some(b'-') => negative = true,
                Some(ch) => return self.error(format!("unexpected `{}`", ch as char)),
            }
            self.pos += 1;
        }
        Ok(Polynomial::from_terms(self.ring, terms))
    }

    fn term(&mut self) -> Result<(Monomial, Scalar)> {
        let n = self.ring.nvars();
        let mut mono = Monomial::one(n);
        let coeff = match self.peek() {
            Some(ch) if ch.is_ascii_digit() => {
                let c = self.coeff()?;
                match self.peek() {
                    Some(b'*') => {
                        self.pos += 1;
                    }
                    Some(b'x') => {}
                    _ => return Ok((mono, c)),
                }
                c
            }
            Some(b'x') => self.ring.field().one(),
            Some(ch) => return self.error(format!("expected a term, found `{}`", ch as char)),
            None => return self.error("expected a term, found end of input"),
        };
        loop {
            mono = mono.mul(&self.factor()?);
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok((mono, coeff))
    }

    fn uint(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.error("expected digits");
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        Ok(digits.parse().expect("digits parse"))
    }

    fn coeff(&mut self) -> Result<Scalar> {
        let start = self.pos;
        let num = self.uint()?;
        if self.peek() != Some(b'/') {
            return Ok(self.ring.field().from_bigint(&num));
        }
        self.pos += 1;
        let den = self.uint()?;
        let text = String::from_utf8_lossy(&self.src[start..self.pos]).trim().to_string();
        match self.ring.field() {
            Field::Rational if !den.is_zero() => Ok(Scalar::Rational(BigRational::new(num, den))),
            field => Err(Error::InvalidCoefficient { text, field: field.to_string() }),
        }
    }

    fn factor(&mut self) -> Result<Monomial> {
        let n = self.ring.nvars();
        if self.peek() != Some(b'x') {
            return self.error("expected a variable");
        }
        let start = self.pos;
        self.pos += 1;
        let Some(d) = self.src.get(self.pos).filter(|c| c.is_ascii_digit()) else {
            return self.error("expected a digit after `x`");
        };
        let index = (d - b'0') as usize;
        self.pos += 1;
        if index >= n {
            return Err(Error::UnknownVariable { name: format!("x{index}"), position: start, nvars: n });
        }
        let mut exp = 1u32;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.uint()?;
            exp = match u16::try_from(&e) {
                Ok(v) => v as u32,
                Err(_) => return self.error("exponent too large"),
            };
        }
        let mut m = Monomial::one(n);
        m.set_exponent(index, exp);
        Ok(m)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms().iter().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            if m.is_one() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{a}*{m}")?;
            }
        }
        Ok(())
    }
}
