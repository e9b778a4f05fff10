//! Text grammar for polynomials.
//!
//! ```text
//! poly    := ['+'|'-'] product (('+'|'-') product)*
//! product := power ('*' power)*
//! power   := atom ['^' ['-'] digits]
//! atom    := number | 'w(' number ',' number ')' | ident | '(' poly ')'
//! number  := digits ['/' digits]
//! ```
//!
//! `w(a,b)` is the quadratic element `a + b·√d`; `d` defaults to -3 and is
//! set with [`parse_poly_in`]. Negative exponents are allowed only on
//! expressions that are units (monomials with unit coefficient).

use num_bigint::BigInt;
use num_rational::BigRational;

use super::coeff::{check_square_free, Coeff};
use super::poly::{LaurentPoly, Vars};
use super::AlgebraError;

pub const DEFAULT_FIELD: i64 = -3;

pub fn parse_poly(s: &str, vars: &Vars) -> Result<LaurentPoly, AlgebraError> {
    parse_poly_in(s, vars, DEFAULT_FIELD)
}

pub fn parse_poly_in(s: &str, vars: &Vars, d: i64) -> Result<LaurentPoly, AlgebraError> {
    check_square_free(d)?;
    let mut p = Parser { src: s.as_bytes(), pos: 0, vars, d };
    p.skip_ws();
    if p.pos == p.src.len() {
        return Err(p.err("empty polynomial"));
    }
    let v = p.poly()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(v)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a Vars,
    d: i64,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> AlgebraError {
        AlgebraError::Parse { pos: self.pos, msg: msg.to_string() }
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

    fn poly(&mut self) -> Result<LaurentPoly, AlgebraError> {
        let mut acc = LaurentPoly::zero(self.vars);
        let mut sign = 1;
        if self.eat(b'-') {
            sign = -1;
        } else {
            self.eat(b'+');
        }
        loop {
            let t = self.product()?;
            acc = if sign > 0 { &acc + &t } else { &acc - &t };
            if self.eat(b'+') {
                sign = 1;
            } else if self.eat(b'-') {
                sign = -1;
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self) -> Result<LaurentPoly, AlgebraError> {
        let mut acc = self.power()?;
        while self.eat(b'*') {
            let f = self.power()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<LaurentPoly, AlgebraError> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let neg = self.eat(b'-');
        let start = self.pos;
        let n = self.digits().ok_or_else(|| self.err("expected exponent"))?;
        let n: u32 = n.try_into().map_err(|_| AlgebraError::Parse {
            pos: start,
            msg: "exponent too large".into(),
        })?;
        if !neg {
            return Ok(base.pow(n));
        }
        if !base.is_unit() {
            return Err(AlgebraError::Parse { pos: start, msg: "negative power of a non-unit".into() });
        }
        let inv = LaurentPoly::one(self.vars).exact_div(&base).expect("unit");
        Ok(inv.pow(n))
    }

    fn digits(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        std::str::from_utf8(&self.src[start..self.pos]).ok()?.parse().ok()
    }

    fn number(&mut self) -> Result<BigRational, AlgebraError> {
        let neg = self.eat(b'-');
        let n = self.digits().ok_or_else(|| self.err("expected number"))?;
        let mut r = BigRational::from_integer(n);
        if self.eat(b'/') {
            let d = self.digits().ok_or_else(|| self.err("expected denominator"))?;
            if d == BigInt::from(0) {
                return Err(self.err("zero denominator"));
            }
            r /= BigRational::from_integer(d);
        }
        Ok(if neg { -r } else { r })
    }

    fn atom(&mut self) -> Result<LaurentPoly, AlgebraError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let p = self.poly()?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(p)
            }
            Some(c) if c.is_ascii_digit() => {
                let r = self.number()?;
                let c = if r.is_integer() { Coeff::Int(r.to_integer()) } else { Coeff::Rat(r) };
                Ok(LaurentPoly::constant(self.vars, c))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                if name == "w" && self.src.get(self.pos) == Some(&b'(') {
                    self.pos += 1;
                    let re = self.number()?;
                    if !self.eat(b',') {
                        return Err(self.err("expected ','"));
                    }
                    let im = self.number()?;
                    if !self.eat(b')') {
                        return Err(self.err("expected ')'"));
                    }
                    return Ok(LaurentPoly::constant(self.vars, Coeff::quad(re, im, self.d)));
                }
                LaurentPoly::var(self.vars, name).ok_or(AlgebraError::Parse {
                    pos: start,
                    msg: format!("unknown variable '{name}'"),
                })
            }
            _ => Err(self.err("expected a term")),
        }
    }
}
