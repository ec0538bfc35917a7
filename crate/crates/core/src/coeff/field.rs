//! Rational functions num/den over the polynomial ring.
//!
//! Fractions are not reduced by multivariate gcd; equality is the
//! cross-multiplication test. Normalization fixes a canonical scaling: the
//! denominator has content 1 and positive leading coefficient.

use std::fmt;
use std::sync::Arc;

use num::{One, Signed, Zero};

use super::poly::{MultiPoly, Rational};
use super::{check_same_ctx, CoeffError, Context};

#[derive(Debug, Clone)]
pub struct FieldElem {
    num: MultiPoly,
    den: MultiPoly,
}

impl FieldElem {
    pub fn from_parts(num: MultiPoly, den: MultiPoly) -> Result<Self, CoeffError> {
        check_same_ctx(num.ctx(), den.ctx())?;
        if den.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        Ok(FieldElem { num, den }.normalize())
    }

    fn normalize(self) -> Self {
        if self.num.is_zero() {
            let ctx = self.num.ctx().clone();
            return FieldElem {
                num: MultiPoly::zero(&ctx),
                den: MultiPoly::constant(&ctx, Rational::one()),
            };
        }
        let mut scale = self.den.content();
        if self.den.leading_coeff().is_negative() {
            scale = -scale;
        }
        let inv = Rational::one() / scale;
        FieldElem {
            num: self.num.scale(&inv),
            den: self.den.scale(&inv),
        }
    }

    pub fn zero(ctx: &Arc<Context>) -> Self {
        FieldElem {
            num: MultiPoly::zero(ctx),
            den: MultiPoly::constant(ctx, Rational::one()),
        }
    }

    pub fn one(ctx: &Arc<Context>) -> Self {
        FieldElem::constant(ctx, Rational::one())
    }

    pub fn constant(ctx: &Arc<Context>, c: Rational) -> Self {
        FieldElem {
            num: MultiPoly::constant(ctx, c),
            den: MultiPoly::constant(ctx, Rational::one()),
        }
    }

    pub fn int(ctx: &Arc<Context>, n: i64) -> Self {
        FieldElem::constant(ctx, Rational::from_integer(n.into()))
    }

    pub fn var(ctx: &Arc<Context>, name: &str) -> Result<Self, CoeffError> {
        Ok(FieldElem {
            num: MultiPoly::var(ctx, name)?,
            den: MultiPoly::constant(ctx, Rational::one()),
        })
    }

    pub fn ctx(&self) -> &Arc<Context> {
        self.num.ctx()
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, other: &FieldElem) -> Result<FieldElem, CoeffError> {
        let num = self
            .num
            .mul(&other.den)?
            .add(&other.num.mul(&self.den)?)?;
        let den = self.den.mul(&other.den)?;
        FieldElem::from_parts(num, den)
    }

    pub fn sub(&self, other: &FieldElem) -> Result<FieldElem, CoeffError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> FieldElem {
        FieldElem {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &FieldElem) -> Result<FieldElem, CoeffError> {
        FieldElem::from_parts(self.num.mul(&other.num)?, self.den.mul(&other.den)?)
    }

    pub fn div(&self, other: &FieldElem) -> Result<FieldElem, CoeffError> {
        if other.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        FieldElem::from_parts(self.num.mul(&other.den)?, self.den.mul(&other.num)?)
    }

    pub fn inv(&self) -> Result<FieldElem, CoeffError> {
        FieldElem::one(self.ctx()).div(self)
    }

    pub fn pow(&self, e: u32) -> FieldElem {
        let mut out = FieldElem::one(self.ctx());
        for _ in 0..e {
            out = out.mul(self).expect("same context");
        }
        out
    }

    /// Semantic equality: num(a)*den(b) - num(b)*den(a) = 0 as a polynomial.
    pub fn equals(&self, other: &FieldElem) -> bool {
        check_same_ctx(self.ctx(), other.ctx()).is_ok()
            && self
                .num
                .mul(&other.den)
                .and_then(|l| l.sub(&other.num.mul(&self.den).unwrap()))
                .map(|d| d.is_zero())
                .unwrap_or(false)
    }

    /// Exact evaluation at a full parameter assignment; errors if the
    /// denominator vanishes there.
    pub fn eval(&self, values: &[Rational]) -> Result<Rational, CoeffError> {
        let d = self.den.eval(values)?;
        if d.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        Ok(self.num.eval(values)? / d)
    }
}

impl PartialEq for FieldElem {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other)
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() && self.den.as_constant() == Some(Rational::one()) {
            let many = self.num.terms().count() > 1;
            if many {
                write!(f, "({})", self.num)
            } else {
                write!(f, "{}", self.num)
            }
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}
