//! Element expressions: `t[1,0]*s1`, `s0*s1*s0`, `(s1*s2)^3`, `1`.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! product := factor ('*' factor)*
//! factor  := atom ('^' int)?
//! atom    := 't' '[' int (',' int)* ']' | 's' digits ('_' digits)? | '1' | '(' product ')'
//! ```
//!
//! `s0` is the affine reflection `t^{-theta^vee} s_theta`; for reducible data
//! the affine reflection of the `c`-th component is `s0_c` (plain `s0`
//! means `s0_1`).

use iwahori_core::{AffineElt, RootDatum};

use crate::error::{CliResult, ParseError};

/// Largest accepted `|n|` in `x^n`.
pub const MAX_POWER: i64 = 100_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    One,
    Translation(Vec<i64>),
    /// `s_i` for `i >= 1`.
    Simple(usize),
    /// `s0` (component 1) or `s0_c`.
    Affine(usize),
    Product(Vec<Expr>),
    Power(Box<Expr>, i64),
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        match self.peek() {
            Some(d) if d == c => {
                self.pos += 1;
                Ok(())
            }
            Some(d) => Err(ParseError::new(self.pos, format!("expected '{}', found '{}'", c as char, d as char))),
            None => Err(ParseError::new(self.pos, format!("expected '{}', found end of input", c as char))),
        }
    }

    fn digits(&mut self) -> Result<&'a str, ParseError> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(ParseError::new(start, "expected a number"));
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).expect("ascii"))
    }

    fn int(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let neg = match self.src.get(self.pos) {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        self.skip_ws();
        let d = self.digits()?;
        let v: i64 = d.parse().map_err(|_| ParseError::new(start, "integer out of range"))?;
        Ok(if neg { -v } else { v })
    }

    fn product(&mut self) -> Result<Expr, ParseError> {
        let mut parts = vec![self.factor()?];
        while self.peek() == Some(b'*') {
            self.pos += 1;
            parts.push(self.factor()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { Expr::Product(parts) })
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let a = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let at = self.pos;
            let n = self.int()?;
            if n.abs() > MAX_POWER {
                return Err(ParseError::new(at, format!("exponent {n} exceeds {MAX_POWER}")));
            }
            return Ok(Expr::Power(Box::new(a), n));
        }
        Ok(a)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let at = self.pos;
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.product()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(b'1') => {
                self.pos += 1;
                Ok(Expr::One)
            }
            Some(b't') => {
                self.pos += 1;
                self.expect(b'[')?;
                let mut v = vec![self.int()?];
                while self.peek() == Some(b',') {
                    self.pos += 1;
                    v.push(self.int()?);
                }
                self.expect(b']')?;
                Ok(Expr::Translation(v))
            }
            Some(b's') => {
                self.pos += 1;
                let at = self.pos;
                let i: usize = self.digits()?.parse().map_err(|_| ParseError::new(at, "index out of range"))?;
                if i == 0 {
                    if self.src.get(self.pos) == Some(&b'_') {
                        self.pos += 1;
                        let at = self.pos;
                        let c: usize =
                            self.digits()?.parse().map_err(|_| ParseError::new(at, "index out of range"))?;
                        if c == 0 {
                            return Err(ParseError::new(at, "components are numbered from 1"));
                        }
                        return Ok(Expr::Affine(c));
                    }
                    return Ok(Expr::Affine(1));
                }
                Ok(Expr::Simple(i))
            }
            Some(c) => Err(ParseError::new(self.pos, format!("unexpected '{}'", c as char))),
            None => Err(ParseError::new(at.max(self.pos), "unexpected end of input")),
        }
    }
}

/// Parses without reference to a datum.
pub fn parse_expr(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let e = p.product()?;
    if let Some(c) = p.peek() {
        return Err(ParseError::new(p.pos, format!("trailing '{}'", c as char)));
    }
    Ok(e)
}

/// Evaluates in the extended affine Weyl group of `rd`.
pub fn eval(rd: &RootDatum, e: &Expr) -> CliResult<AffineElt> {
    use iwahori_core::Error;
    Ok(match e {
        Expr::One => rd.identity(),
        Expr::Translation(l) => {
            let x = rd.translation(l.clone());
            rd.check_elt(&x)?;
            x
        }
        Expr::Simple(i) => {
            if *i > rd.rank() {
                return Err(Error::DimensionMismatch(format!("s{i} but the rank is {}", rd.rank())).into());
            }
            rd.finite(rd.weyl().simple(i - 1))
        }
        Expr::Affine(c) => {
            let n = rd.affine_generators().len() - rd.rank();
            if *c > n {
                return Err(Error::DimensionMismatch(format!("no affine reflection for component {c}")).into());
            }
            rd.affine_generators()[rd.rank() + c - 1].clone()
        }
        Expr::Product(parts) => {
            let mut acc = rd.identity();
            for p in parts {
                acc = rd.mul(&acc, &eval(rd, p)?);
            }
            acc
        }
        Expr::Power(b, n) => rd.pow(&eval(rd, b)?, *n),
    })
}

pub fn parse_element(rd: &RootDatum, text: &str) -> CliResult<AffineElt> {
    eval(rd, &parse_expr(text)?)
}

/// Canonical form, re-parses to the same element.
pub fn print_element(rd: &RootDatum, x: &AffineElt) -> String {
    rd.format_elt(x)
}
