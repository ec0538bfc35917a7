//! Multivariate polynomials over Q with a canonical graded-lexicographic
//! term order.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, Zero};

use super::{check_same_ctx, CoeffError, Context};

pub type Rational = BigRational;

/// Exponent vector, ordered by total degree first, then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mono(pub Vec<u32>);

impl Mono {
    fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A multivariate polynomial: map from exponent vectors to nonzero rational
/// coefficients. Zero coefficients are never stored, so equal polynomials
/// have identical representations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    ctx: Arc<Context>,
    terms: BTreeMap<Mono, Rational>,
}

impl MultiPoly {
    pub fn zero(ctx: &Arc<Context>) -> Self {
        MultiPoly {
            ctx: ctx.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ctx: &Arc<Context>, c: Rational) -> Self {
        let mut p = MultiPoly::zero(ctx);
        if !c.is_zero() {
            p.terms.insert(Mono(vec![0; ctx.num_vars()]), c);
        }
        p
    }

    pub fn var(ctx: &Arc<Context>, name: &str) -> Result<Self, CoeffError> {
        let idx = ctx
            .var_index(name)
            .ok_or_else(|| CoeffError::UnknownParameter(name.to_string()))?;
        let mut exps = vec![0; ctx.num_vars()];
        exps[idx] = 1;
        let mut p = MultiPoly::zero(ctx);
        p.terms.insert(Mono(exps), Rational::one());
        Ok(p)
    }

    pub fn ctx(&self) -> &Arc<Context> {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn as_constant(&self) -> Option<Rational> {
        if self.is_zero() {
            return Some(Rational::zero());
        }
        if self.is_constant() {
            return self.terms.values().next().cloned();
        }
        None
    }

    fn insert_term(&mut self, m: Mono, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &MultiPoly) -> Result<MultiPoly, CoeffError> {
        check_same_ctx(&self.ctx, &other.ctx)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &MultiPoly) -> Result<MultiPoly, CoeffError> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &MultiPoly) -> Result<MultiPoly, CoeffError> {
        check_same_ctx(&self.ctx, &other.ctx)?;
        let mut out = MultiPoly::zero(&self.ctx);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let exps: Vec<u32> = ma
                    .0
                    .iter()
                    .zip(mb.0.iter())
                    .map(|(a, b)| a + b)
                    .collect();
                out.insert_term(Mono(exps), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(&self.ctx);
        }
        MultiPoly {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut out = MultiPoly::constant(&self.ctx, Rational::one());
        for _ in 0..e {
            out = out.mul(self).expect("same context");
        }
        out
    }

    /// Leading (graded-lex greatest) coefficient; zero for the zero polynomial.
    pub fn leading_coeff(&self) -> Rational {
        self.terms
            .iter()
            .next_back()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    /// Positive rational `c` such that `self / c` has coprime integer
    /// coefficients. Zero for the zero polynomial.
    pub fn content(&self) -> Rational {
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(&c.numer().abs());
            den_lcm = den_lcm.lcm(c.denom());
        }
        if num_gcd.is_zero() {
            Rational::zero()
        } else {
            Rational::new(num_gcd, den_lcm)
        }
    }

    /// Evaluate at a full assignment of parameter values.
    pub fn eval(&self, values: &[Rational]) -> Result<Rational, CoeffError> {
        if values.len() != self.ctx.num_vars() {
            return Err(CoeffError::Dimension(format!(
                "expected {} parameter values, got {}",
                self.ctx.num_vars(),
                values.len()
            )));
        }
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in values.iter().zip(m.0.iter()) {
                for _ in 0..e {
                    t *= v;
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Rational)> {
        self.terms.iter()
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        // highest term first
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.degree() == 0 {
                factors.push(abs.to_string());
            }
            for (name, &e) in self.ctx.vars().iter().zip(m.0.iter()) {
                match e {
                    0 => {}
                    1 => factors.push(name.clone()),
                    _ => factors.push(format!("{}^{}", name, e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> Arc<Context> {
        Context::new(["q", "r"])
    }

    #[test]
    fn graded_lex_order() {
        // q^2 > q*r > r^2 > q > r > 1 under graded lex with q before r
        let a = Mono(vec![2, 0]);
        let b = Mono(vec![1, 1]);
        let c = Mono(vec![0, 2]);
        let d = Mono(vec![1, 0]);
        assert!(a > b && b > c && c > d);
    }

    #[test]
    fn add_cancels() {
        let c = ctx();
        let q = MultiPoly::var(&c, "q").unwrap();
        let s = q.add(&q.neg()).unwrap();
        assert!(s.is_zero());
    }

    #[test]
    fn content_and_leading() {
        let c = ctx();
        let q = MultiPoly::var(&c, "q").unwrap();
        let p = q
            .scale(&Rational::new(4.into(), 3.into()))
            .add(&MultiPoly::constant(&c, Rational::new(2.into(), 3.into())))
            .unwrap();
        // content of (4/3)q + 2/3 is 2/3
        assert_eq!(p.content(), Rational::new(2.into(), 3.into()));
        assert_eq!(p.leading_coeff(), Rational::new(4.into(), 3.into()));
    }

    #[test]
    fn eval_simple() {
        let c = ctx();
        let q = MultiPoly::var(&c, "q").unwrap();
        let p = q.mul(&q).unwrap(); // q^2
        let v = p
            .eval(&[Rational::new(3.into(), 1.into()), Rational::zero()])
            .unwrap();
        assert_eq!(v, Rational::new(9.into(), 1.into()));
    }
}
