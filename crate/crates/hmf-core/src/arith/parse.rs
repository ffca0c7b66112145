//! Parser for univariate polynomial expressions such as `x^2-x-1`,
//! `3*w+7`, `(w+3)^2` or `-1/2 + w`.

use super::int::Q;
use super::poly::{self, QPoly};
use num_bigint::BigInt;
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse `{input}`: {reason}")]
pub struct ParseError {
    pub input: String,
    pub reason: String,
}

struct Parser<'a> {
    src: &'a str,
    chars: Vec<char>,
    pos: usize,
    var: &'a str,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, reason: &str) -> Result<T, ParseError> {
        Err(ParseError { input: self.src.to_string(), reason: format!("{} at offset {}", reason, self.pos) })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<QPoly, ParseError> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                '+' => {
                    self.pos += 1;
                    acc = poly::add(&acc, &self.term()?);
                }
                '-' => {
                    self.pos += 1;
                    acc = poly::sub(&acc, &self.term()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<QPoly, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = poly::mul(&acc, &self.unary()?);
                }
                Some('/') => {
                    self.pos += 1;
                    let d = self.unary()?;
                    if d.len() != 1 {
                        return self.err("division by a non-constant");
                    }
                    acc = poly::scale(&acc, &(Q::one() / &d[0]));
                }
                Some(c) if c == '(' || c.is_alphabetic() => {
                    // implicit multiplication, e.g. 3w or 2(w+1)
                    acc = poly::mul(&acc, &self.unary()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<QPoly, ParseError> {
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                let v = self.unary()?;
                Ok(poly::scale(&v, &-Q::one()))
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<QPoly, ParseError> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if start == self.pos {
                return self.err("expected exponent");
            }
            let e: u32 = self.chars[start..self.pos]
                .iter()
                .collect::<String>()
                .parse()
                .map_err(|_| ParseError { input: self.src.to_string(), reason: "exponent too large".into() })?;
            return Ok(poly::pow(&base, e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<QPoly, ParseError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(')') {
                    return self.err("expected `)`");
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let s: String = self.chars[start..self.pos].iter().collect();
                let n: BigInt = s.parse().unwrap();
                Ok(if n.is_zero() { Vec::new() } else { vec![Q::from_integer(n)] })
            }
            Some(c) if c.is_alphabetic() => {
                let start = self.pos;
                while self.pos < self.chars.len()
                    && (self.chars[self.pos].is_alphanumeric() || self.chars[self.pos] == '_')
                {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                if name != self.var {
                    self.pos = start;
                    return self.err(&format!("unknown symbol `{}`", name));
                }
                Ok(vec![Q::zero(), Q::one()])
            }
            _ => self.err("unexpected token"),
        }
    }
}

/// Parse a polynomial expression in the variable `var`.
pub fn parse_poly(src: &str, var: &str) -> Result<QPoly, ParseError> {
    let mut p = Parser { src, chars: src.chars().collect(), pos: 0, var };
    let v = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::poly::from_i64;

    #[test]
    fn parses() {
        assert_eq!(parse_poly("x^2-x-1", "x").unwrap(), from_i64(&[-1, -1, 1]));
        assert_eq!(parse_poly("3*w+7", "w").unwrap(), from_i64(&[7, 3]));
        assert_eq!(parse_poly("(w+3)^2", "w").unwrap(), from_i64(&[9, 6, 1]));
        assert_eq!(parse_poly("2w - 4", "w").unwrap(), from_i64(&[-4, 2]));
        assert_eq!(parse_poly("-1", "w").unwrap(), from_i64(&[-1]));
        assert_eq!(parse_poly("0", "w").unwrap(), from_i64(&[]));
        assert!(parse_poly("y+1", "x").is_err());
        assert!(parse_poly("x+", "x").is_err());
        let h = parse_poly("w/2 + 1/2", "w").unwrap();
        assert_eq!(h[0], Q::new(1.into(), 2.into()));
    }
}
