//! Recursive-descent parser for the coefficient expression grammar:
//! integer literals, parameter identifiers, `+ - * / ^` (nonnegative
//! integer exponents), parentheses. Whitespace is insignificant.
//!
//! Accepted examples: `-2*q`, `-(1+q)/2`, `q*rho1^2/rho2`.

use std::sync::Arc;

use num::bigint::BigInt;

use super::field::FieldElem;
use super::poly::Rational;
use super::{CoeffError, Context};

struct Parser<'a> {
    ctx: &'a Arc<Context>,
    input: &'a [u8],
    pos: usize,
}

impl Context {
    /// Parse an expression in this context's parameters.
    pub fn parse(self: &Arc<Self>, s: &str) -> Result<FieldElem, CoeffError> {
        let mut p = Parser {
            ctx: self,
            input: s.as_bytes(),
            pos: 0,
        };
        let e = p.expr()?;
        p.skip_ws();
        if p.pos != p.input.len() {
            return Err(p.err("unexpected trailing input"));
        }
        Ok(e)
    }
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> CoeffError {
        CoeffError::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.input.len() && self.input[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.input.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn expr(&mut self) -> Result<FieldElem, CoeffError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.bump();
                    acc = acc.add(&self.term()?)?;
                }
                Some(b'-') => {
                    self.bump();
                    acc = acc.sub(&self.term()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<FieldElem, CoeffError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.bump();
                    acc = acc.mul(&self.factor()?)?;
                }
                Some(b'/') => {
                    self.bump();
                    acc = acc.div(&self.factor()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<FieldElem, CoeffError> {
        if self.peek() == Some(b'-') {
            self.bump();
            return Ok(self.factor()?.neg());
        }
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.bump();
            let e = self.uint()?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<FieldElem, CoeffError> {
        match self.peek() {
            Some(b'(') => {
                self.bump();
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.bump();
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self
                    .input
                    .get(self.pos)
                    .map_or(false, |c| c.is_ascii_digit())
                {
                    self.pos += 1;
                }
                let text = std::str::from_utf8(&self.input[start..self.pos]).unwrap();
                let n: BigInt = text.parse().expect("digits");
                Ok(FieldElem::constant(
                    self.ctx,
                    Rational::from_integer(n),
                ))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self
                    .input
                    .get(self.pos)
                    .map_or(false, |c| c.is_ascii_alphanumeric() || *c == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.input[start..self.pos]).unwrap();
                FieldElem::var(self.ctx, name)
            }
            _ => Err(self.err("expected number, parameter, or `(`")),
        }
    }

    fn uint(&mut self) -> Result<u32, CoeffError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self
                    .input
                    .get(self.pos)
                    .map_or(false, |c| c.is_ascii_digit())
                {
                    self.pos += 1;
                }
                std::str::from_utf8(&self.input[start..self.pos])
                    .unwrap()
                    .parse()
                    .map_err(|_| self.err("exponent too large"))
            }
            _ => Err(self.err("expected nonnegative integer exponent")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_spec_examples() {
        let ctx = Context::new(["q", "rho1", "rho2"]);
        for s in ["-2*q", "-(1+q)/2", "q*rho1^2/rho2"] {
            ctx.parse(s).unwrap();
        }
    }

    #[test]
    fn parse_matches_hand_built() {
        let ctx = Context::new(["q"]);
        let q = FieldElem::var(&ctx, "q").unwrap();
        let two = FieldElem::int(&ctx, 2);
        assert!(ctx.parse("-2*q").unwrap().equals(&two.mul(&q).unwrap().neg()));
        let one = FieldElem::one(&ctx);
        let expected = one.add(&q).unwrap().neg().div(&two).unwrap();
        assert!(ctx.parse("-(1+q)/2").unwrap().equals(&expected));
    }

    #[test]
    fn rejects_unknown_parameter() {
        let ctx = Context::new(["q"]);
        assert!(matches!(
            ctx.parse("z + 1"),
            Err(CoeffError::UnknownParameter(_))
        ));
    }

    #[test]
    fn reports_error_position() {
        let ctx = Context::new(["q"]);
        match ctx.parse("1 + ") {
            Err(CoeffError::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("expected parse error, got {:?}", other),
        }
    }

    #[test]
    fn power_binds_tighter_than_mul() {
        let ctx = Context::new(["q"]);
        let q = FieldElem::var(&ctx, "q").unwrap();
        let expected = FieldElem::int(&ctx, 2).mul(&q.pow(3)).unwrap();
        assert!(ctx.parse("2*q^3").unwrap().equals(&expected));
    }
}
