//! Text grammar shared by coefficients and polynomials.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' int)?
//! int    := '-'? digits | '(' '-'? digits ')'
//! atom   := digits | 'v' | 'q' | 'X' | 'X' digits | '(' expr ')'
//! ```
//!
//! `q` abbreviates `v^2`; a bare `X` names the last variable `X_n`.
//! Division is only allowed by a single term with a unit coefficient.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::coeffring::Coefficient;
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;

pub fn parse_poly(input: &str, n: usize) -> Result<LaurentPoly> {
    let mut p = Parser { src: input.as_bytes(), pos: 0, n };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(out)
}

pub fn parse_coefficient(input: &str) -> Result<Coefficient> {
    let p = parse_poly(input, 0)?;
    p.as_constant().ok_or_else(|| Error::Parse { pos: 0, msg: "expected a coefficient".into() })
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    n: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.to_string() }
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

    fn expr(&mut self) -> Result<LaurentPoly> {
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

    fn term(&mut self) -> Result<LaurentPoly> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = &acc * &self.unary()?;
            } else if self.eat(b'/') {
                let at = self.pos;
                let d = self.unary()?;
                let inv = invert_unit(&d).ok_or(Error::Parse { pos: at, msg: "can only divide by a unit monomial".into() })?;
                acc = &acc * &inv;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<LaurentPoly> {
        if self.eat(b'-') {
            Ok(-self.unary()?)
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<LaurentPoly> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let paren = self.eat(b'(');
        let neg = self.eat(b'-');
        let k = self.digits()?;
        if paren && !self.eat(b')') {
            return Err(self.err("expected ')'"));
        }
        let k: i32 = k.try_into().map_err(|_| self.err("exponent too large"))?;
        let k = if neg { -k } else { k };
        let mut acc = LaurentPoly::one(self.n);
        let factor = if k < 0 {
            invert_unit(&base).ok_or_else(|| self.err("negative powers need a unit monomial base"))?
        } else {
            base
        };
        for _ in 0..k.unsigned_abs() {
            acc = &acc * &factor;
        }
        Ok(acc)
    }

    fn digits(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(text.parse().unwrap())
    }

    fn atom(&mut self) -> Result<LaurentPoly> {
        let n = self.n;
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let k = self.digits()?;
                Ok(LaurentPoly::constant(n, Coefficient::from_rational(BigRational::from_integer(k))))
            }
            Some(b'v') => {
                self.pos += 1;
                Ok(LaurentPoly::constant(n, Coefficient::v_pow(1)))
            }
            Some(b'q') => {
                self.pos += 1;
                Ok(LaurentPoly::constant(n, Coefficient::q_pow(1)))
            }
            Some(b'X') => {
                self.pos += 1;
                let idx = if self.src.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
                    let at = self.pos;
                    let k = self.digits()?;
                    usize::try_from(k).map_err(|_| Error::Parse { pos: at, msg: "bad variable index".into() })?
                } else {
                    n
                };
                if idx == 0 || idx > n {
                    return Err(self.err(&format!("variable X{idx} out of range (n = {n})")));
                }
                Ok(LaurentPoly::var(n, idx))
            }
            _ => Err(self.err("expected a number, v, q, X or '('")),
        }
    }
}

fn invert_unit(p: &LaurentPoly) -> Option<LaurentPoly> {
    if p.num_terms() != 1 {
        return None;
    }
    let (e, c) = p.terms().next()?;
    let inv = c.inverse()?;
    Some(LaurentPoly::monomial(e.iter().map(|k| -k).collect(), inv))
}
