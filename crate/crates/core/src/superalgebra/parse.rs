//! Parser for the textual polynomial format, e.g. `2*x1^2 - xg1*xg2`.
//!
//! Grammar:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*      // '/' only by a constant
//! unary  := '-' unary | '+' unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | 'x' integer | 'xg' integer | '(' expr ')'
//! ```
//!
//! Grassmann factors may appear in any order; signs are worked out by the
//! multiplication.

use num_bigint::BigInt;
use num_traits::Zero;

use super::{Rational, SuperPolynomial};
use crate::error::{Error, Result};

pub fn parse_polynomial(src: &str) -> Result<SuperPolynomial> {
    let mut p = Parser { src: src.as_bytes(), pos: 0 };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(out)
}

/// Parse and check that only `x1..xm` and `xg1..xg{2n}` occur.
pub fn parse_in(src: &str, m: usize, n: usize) -> Result<SuperPolynomial> {
    let p = parse_polynomial(src)?;
    if p.bosonic_span() > m {
        return Err(Error::IndexOutOfRange { index: p.bosonic_span(), bound: m });
    }
    if p.fermionic_span() > 2 * n {
        return Err(Error::IndexOutOfRange { index: p.fermionic_span(), bound: 2 * n });
    }
    Ok(p)
}

impl std::str::FromStr for SuperPolynomial {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_polynomial(s)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse { position: self.pos, message: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<SuperPolynomial> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<SuperPolynomial> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = &acc * &self.unary()?;
            } else if self.eat(b'/') {
                let at = self.pos;
                let d = self.unary()?;
                let c = d.constant_term();
                if d.len() > 1 || (d.len() == 1 && c.is_zero()) {
                    self.pos = at;
                    return Err(self.error("division by a non-constant"));
                }
                if c.is_zero() {
                    self.pos = at;
                    return Err(self.error("division by zero"));
                }
                acc = acc.scale(&c.recip());
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<SuperPolynomial> {
        if self.eat(b'-') {
            return Ok(-self.unary()?);
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<SuperPolynomial> {
        let base = self.atom()?;
        if self.eat(b'^') {
            self.skip_ws();
            let e = self.integer()?;
            let e: u32 = e
                .try_into()
                .map_err(|_| self.error("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("ascii digits"))
    }

    fn index(&mut self) -> Result<usize> {
        let at = self.pos;
        let i = self.integer()?;
        let i: usize = i.try_into().map_err(|_| self.error("index too large"))?;
        if i == 0 {
            self.pos = at;
            return Err(self.error("variable indices start at 1"));
        }
        Ok(i - 1)
    }

    fn atom(&mut self) -> Result<SuperPolynomial> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(SuperPolynomial::constant(Rational::from(n)))
            }
            Some(b'x') => {
                self.pos += 1;
                if self.src.get(self.pos) == Some(&b'g') {
                    self.pos += 1;
                    let j = self.index()?;
                    if j >= super::monomial::MAX_FERMIONS {
                        return Err(Error::IndexOutOfRange {
                            index: j + 1,
                            bound: super::monomial::MAX_FERMIONS,
                        });
                    }
                    Ok(SuperPolynomial::xg(j))
                } else {
                    Ok(SuperPolynomial::x(self.index()?))
                }
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}
