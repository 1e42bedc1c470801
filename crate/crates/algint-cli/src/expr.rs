//! Exact polynomial expressions such as `y^2 - (1 - x^2)*(1 - k^2*x^2)`.
//!
//! Grammar (whitespace is ignored):
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := ('-' | '+') unary | power
//! power := atom ('^' integer)?
//! atom  := number | 'i' | 'x' | 'y' | name | '(' expr ')'
//! ```
//!
//! Numbers are exact (`3`, `0.125`, `1.5e-3`); names are looked up in the
//! parameter table; division is only allowed by constants.

use std::collections::BTreeMap;
use std::fmt;

use algint::algebra::{gq, gq_complex, parse_rational, rat, Gq, Poly2};
use num::traits::Zero;
use num::Complex;

/// A parse or evaluation error with the byte offset where it occurred.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExprError {
    pub pos: usize,
    pub msg: String,
}

impl fmt::Display for ExprError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at position {}", self.msg, self.pos)
    }
}

impl std::error::Error for ExprError {}

type Res<T> = std::result::Result<T, ExprError>;

/// Parameter values available to expressions.
pub type Params = BTreeMap<String, Gq>;

/// Parses `src` into a polynomial in `x` and `y`.
pub fn parse_poly(src: &str, params: &Params) -> Res<Poly2<Gq>> {
    let mut p = Parser {
        src: src.as_bytes(),
        pos: 0,
        params,
    };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.err("unexpected character"));
    }
    Ok(v)
}

/// Parses `src` into a constant (no `x` or `y` allowed).
pub fn parse_constant(src: &str, params: &Params) -> Res<Gq> {
    let p = parse_poly(src, params)?;
    constant_of(&p).ok_or(ExprError {
        pos: 0,
        msg: format!("{src:?} is not a constant"),
    })
}

fn constant_of(p: &Poly2<Gq>) -> Option<Gq> {
    if p.terms().all(|(&e, _)| e == (0, 0)) {
        Some(p.coeff(0, 0))
    } else {
        None
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    params: &'a Params,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> ExprError {
        ExprError {
            pos: self.pos,
            msg: msg.to_string(),
        }
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

    fn expr(&mut self) -> Res<Poly2<Gq>> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == b'+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Res<Poly2<Gq>> {
        let mut acc = self.unary()?;
        while let Some(c @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let at = self.pos;
            let rhs = self.unary()?;
            if c == b'*' {
                acc = &acc * &rhs;
            } else {
                let d = constant_of(&rhs).ok_or(ExprError {
                    pos: at,
                    msg: "division by a non-constant".into(),
                })?;
                if d.is_zero() {
                    return Err(ExprError {
                        pos: at,
                        msg: "division by zero".into(),
                    });
                }
                acc = acc.scale(&(gq(1, 1) / d));
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Res<Poly2<Gq>> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-&self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Res<Poly2<Gq>> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("");
        let n: u32 = digits.parse().map_err(|_| ExprError {
            pos: start,
            msg: "expected a non-negative integer exponent".into(),
        })?;
        if n > 64 {
            return Err(ExprError {
                pos: start,
                msg: "exponent too large".into(),
            });
        }
        Ok(base.pow(n))
    }

    fn atom(&mut self) -> Res<Poly2<Gq>> {
        let Some(c) = self.peek() else {
            return Err(self.err("unexpected end of input"));
        };
        if c == b'(' {
            self.pos += 1;
            let v = self.expr()?;
            if self.peek() != Some(b')') {
                return Err(self.err("expected ')'"));
            }
            self.pos += 1;
            return Ok(v);
        }
        if c.is_ascii_digit() || c == b'.' {
            return self.number();
        }
        if c.is_ascii_alphabetic() || c == b'_' {
            let start = self.pos;
            while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
                self.pos += 1;
            }
            let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("");
            return match name {
                "x" => Ok(Poly2::x()),
                "y" => Ok(Poly2::y()),
                "i" if !self.params.contains_key("i") => Ok(Poly2::constant(gq_complex(rat(0, 1), rat(1, 1)))),
                _ => self.params.get(name).map(|v| Poly2::constant(v.clone())).ok_or(ExprError {
                    pos: start,
                    msg: format!("unknown name {name:?}"),
                }),
            };
        }
        Err(self.err("unexpected character"))
    }

    fn number(&mut self) -> Res<Poly2<Gq>> {
        let start = self.pos;
        let s = self.src;
        while self.pos < s.len() && (s[self.pos].is_ascii_digit() || s[self.pos] == b'.') {
            self.pos += 1;
        }
        // Optional exponent, only if followed by digits.
        if self.pos < s.len() && (s[self.pos] == b'e' || s[self.pos] == b'E') {
            let mut k = self.pos + 1;
            if k < s.len() && (s[k] == b'+' || s[k] == b'-') {
                k += 1;
            }
            if k < s.len() && s[k].is_ascii_digit() {
                while k < s.len() && s[k].is_ascii_digit() {
                    k += 1;
                }
                self.pos = k;
            }
        }
        let text = std::str::from_utf8(&s[start..self.pos]).unwrap_or("");
        let r = parse_rational(text).map_err(|_| ExprError {
            pos: start,
            msg: format!("bad number {text:?}"),
        })?;
        Ok(Poly2::constant(Complex::new(r, Zero::zero())))
    }
}
