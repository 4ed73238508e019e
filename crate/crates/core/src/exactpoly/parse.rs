use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;

use num_bigint::BigInt;

use super::poly::Poly;
use super::scalar::Scalar;
use super::spec::{RingSpec, MAX_EXPONENT};
use crate::error::{Error, Result};

/// Parses polynomial text over `spec`.
///
/// Accepts the canonical output grammar (`-3/2*x^2*y + z - 4`) and, for
/// convenience in data files, parentheses, integer powers of subexpressions
/// and division by integer literals: `(1 + h)^3`, `tau*(rho + b1/3)`.
pub fn parse_poly(text: &str, spec: &Arc<RingSpec>) -> Result<Poly> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, spec };
    p.skip_ws();
    if p.at_end() {
        return Err(p.err("empty input"));
    }
    let out = p.expr()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    spec: &'a Arc<RingSpec>,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.into() }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ' | b'\t' | b'\n' | b'\r')) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = Poly::zero(self.spec);
        let mut negate = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        loop {
            let t = self.term()?;
            acc = if negate { &acc - &t } else { &acc + &t };
            if self.eat(b'+') {
                negate = false;
            } else if self.eat(b'-') {
                negate = true;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.signed()?;
        loop {
            if self.eat(b'*') {
                let f = self.signed()?;
                acc = acc.try_mul(&f)?;
            } else if self.eat(b'/') {
                self.skip_ws();
                let d = self.integer().ok_or_else(|| self.err("malformed fraction: expected integer divisor"))?;
                let d = Scalar::from_bigint(d);
                let inv = d.inv().ok_or_else(|| self.err("malformed fraction: zero denominator"))?;
                acc = acc.scale(&inv);
            } else {
                return Ok(acc);
            }
        }
    }

    fn signed(&mut self) -> Result<Poly> {
        if self.eat(b'-') {
            return Ok(-&self.signed()?);
        }
        self.eat(b'+');
        self.power()
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.eat(b'^') {
            self.skip_ws();
            let e = self.integer().ok_or_else(|| self.err("expected exponent"))?;
            let e: u32 = u32::try_from(e)
                .ok()
                .filter(|e| *e <= MAX_EXPONENT)
                .ok_or(Error::ExponentOverflow { cap: MAX_EXPONENT })?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly> {
        self.skip_ws();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected `)`"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer().expect("digit present");
                Ok(Poly::constant(self.spec, Scalar::from_bigint(n)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == b'_') {
                    self.pos += 1;
                }
                let name = core::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                Poly::var(self.spec, name)
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn integer(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        core::str::from_utf8(&self.src[start..self.pos]).ok()?.parse().ok()
    }
}

/// Parses a list of polynomials separated by commas or newlines.
pub fn parse_poly_list(text: &str, spec: &Arc<RingSpec>) -> Result<alloc::vec::Vec<Poly>> {
    let mut out = alloc::vec::Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in text.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if (ch == ',' || ch == '\n') && depth == 0 {
            if !cur.trim().is_empty() {
                out.push(parse_poly(&cur, spec)?);
            }
            cur.clear();
        } else {
            cur.push(ch);
        }
    }
    if !cur.trim().is_empty() {
        out.push(parse_poly(&cur, spec)?);
    }
    if depth != 0 {
        return Err(Error::Parse { pos: text.len(), msg: format!("unbalanced parentheses ({depth})") });
    }
    Ok(out)
}
