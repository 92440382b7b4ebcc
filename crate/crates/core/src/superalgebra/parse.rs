//! Text form of superpolynomials.
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := atom ('*' atom)*
//! atom   := rational | var ['^' posint]
//! rational := int ['/' posint]
//! ```
//!
//! Fermionic variables raised to a power of at least 2 give zero.

use std::sync::Arc;

use super::poly::SuperPolynomial;
use super::varspec::{Var, VarSpec};
use crate::exactmath::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("{msg} at position {pos}")]
    Syntax { msg: String, pos: usize },
}

impl ParseError {
    pub fn position(&self) -> usize {
        match self {
            ParseError::UnknownVariable { pos, .. } | ParseError::Syntax { pos, .. } => *pos,
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    spec: &'a Arc<VarSpec>,
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

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            msg: msg.into(),
            pos: self.pos,
        })
    }

    fn integer(&mut self) -> Result<u64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        text.parse().map_err(|_| ParseError::Syntax {
            msg: "number too large".into(),
            pos: start,
        })
    }

    fn expr(&mut self) -> Result<SuperPolynomial, ParseError> {
        let mut out = SuperPolynomial::zero(self.spec);
        let mut sign = Rational::ONE;
        if self.peek() == Some(b'-') {
            self.pos += 1;
            sign = -Rational::ONE;
        } else if self.peek() == Some(b'+') {
            self.pos += 1;
        }
        loop {
            let t = self.term()?;
            out.add_scaled(&sign, &t);
            match self.peek() {
                Some(b'+') => sign = Rational::ONE,
                Some(b'-') => sign = -Rational::ONE,
                Some(_) => return self.err("expected `+`, `-` or `*`"),
                None => return Ok(out),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<SuperPolynomial, ParseError> {
        let mut acc = self.atom()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let a = self.atom()?;
            acc = &acc * &a;
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<SuperPolynomial, ParseError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                let mut q = Rational::from(num_bigint::BigInt::from(num));
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let at = self.pos;
                    let den = self.integer()?;
                    if den == 0 {
                        return Err(ParseError::Syntax {
                            msg: "zero denominator".into(),
                            pos: at,
                        });
                    }
                    q = &q / &Rational::from(num_bigint::BigInt::from(den));
                }
                Ok(SuperPolynomial::constant(self.spec, q))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let v = self
                    .spec
                    .lookup(name)
                    .ok_or_else(|| ParseError::UnknownVariable {
                        name: name.to_string(),
                        pos: start,
                    })?;
                let mut e = 1u64;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    let at = self.pos;
                    e = self.integer()?;
                    if e == 0 {
                        return Err(ParseError::Syntax {
                            msg: "exponent must be positive".into(),
                            pos: at,
                        });
                    }
                    if e > 255 {
                        return Err(ParseError::Syntax {
                            msg: "exponent too large".into(),
                            pos: at,
                        });
                    }
                }
                let x = SuperPolynomial::var(self.spec, v);
                Ok(match v {
                    Var::Ferm(_) if e >= 2 => SuperPolynomial::zero(self.spec),
                    _ => x.pow(e as u32),
                })
            }
            Some(_) => self.err("expected a number or a variable"),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses `text` against the variable names of `spec`.
pub fn parse(spec: &Arc<VarSpec>, text: &str) -> Result<SuperPolynomial, ParseError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        spec,
    };
    if p.peek().is_none() {
        return p.err("empty input");
    }
    p.expr()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superalgebra::SuperMonomial;

    fn spec() -> Arc<VarSpec> {
        Arc::new(VarSpec::superspace(2, 1))
    }

    #[test]
    fn examples() {
        let s = spec();
        let f = parse(&s, "x1^2*e1*e2").unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(
            f.coeff(&SuperMonomial::from_parts(&[2, 0], 0b11)),
            Rational::ONE
        );
        assert_eq!(parse(&s, "e2*e1").unwrap(), parse(&s, "-e1*e2").unwrap());
        assert_eq!(
            parse(&s, "3/2*x1 - x1").unwrap(),
            parse(&s, "1/2*x1").unwrap()
        );
        assert!(parse(&s, "e1^2").unwrap().is_zero());
    }

    #[test]
    fn printing_round_trip() {
        let s = spec();
        let f = parse(&s, "1 - 2/3*x2*x1^3*e2 + e2*e1 + x1").unwrap();
        let text = f.to_string();
        assert_eq!(text, "1 + x1 - e1*e2 - 2/3*x1^3*x2*e2");
        assert_eq!(parse(&s, &text).unwrap(), f);
        assert_eq!(SuperPolynomial::zero(&s).to_string(), "0");
    }

    #[test]
    fn errors_carry_positions() {
        let s = spec();
        assert_eq!(
            parse(&s, "x1 + y3"),
            Err(ParseError::UnknownVariable {
                name: "y3".into(),
                pos: 5
            })
        );
        assert_eq!(parse(&s, "x1 +").unwrap_err().position(), 4);
        assert_eq!(parse(&s, "x1 x2").unwrap_err().position(), 3);
        assert_eq!(parse(&s, "1/0").unwrap_err().position(), 2);
        assert!(parse(&s, "").is_err());
    }
}
