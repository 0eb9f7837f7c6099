//! Quotients of multivariate polynomials.
//!
//! No multivariate gcd is taken. The stored form is reduced only by content
//! (the denominator is primitive, with positive constant term when it has
//! one and positive leading coefficient otherwise) and by
//! common monomial factors; equality is decided by cross-multiplication.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::poly::MultiPoly;
use super::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RationalFunctionError {
    #[error("denominator is the zero polynomial")]
    ZeroDenominator,
    #[error("denominator `{0}` vanishes at the evaluation point")]
    VanishingDenominator(String),
    #[error("no value supplied for variable `{0}`")]
    MissingVariable(String),
}

#[derive(Clone, Debug)]
pub struct RationalFunction {
    num: MultiPoly,
    den: MultiPoly,
}

impl RationalFunction {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self, RationalFunctionError> {
        if den.is_zero() {
            return Err(RationalFunctionError::ZeroDenominator);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: MultiPoly, den: MultiPoly) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return Self::zero();
        }
        if let Some(c) = den.as_constant() {
            return RationalFunction {
                num: num.scale(&c.recip()),
                den: MultiPoly::one(),
            };
        }
        let (mut num, mut den) = (num, den);
        // strip the common monomial factor
        let mn = num.monomial_content();
        let md = den.monomial_content();
        let common: BTreeMap<String, u32> = mn
            .iter()
            .filter_map(|(v, &e)| md.get(v).map(|&f| (v.clone(), e.min(f))))
            .collect();
        if !common.is_empty() {
            num = num.divide_monomial(&common);
            den = den.divide_monomial(&common);
        }
        let (mut c, mut prim) = den.primitive();
        let negative_constant = prim
            .terms()
            .next()
            .is_some_and(|(e, a)| e.total_degree() == 0 && *a < Rational::zero());
        if negative_constant {
            c = -c;
            prim = prim.scale(&-Rational::one());
        }
        let num = num.scale(&c.recip());
        if num == prim {
            return Self::one();
        }
        if let Some(c) = prim.as_constant() {
            return RationalFunction {
                num: num.scale(&c.recip()),
                den: MultiPoly::one(),
            };
        }
        RationalFunction { num, den: prim }
    }

    pub fn zero() -> Self {
        RationalFunction {
            num: MultiPoly::zero(),
            den: MultiPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        RationalFunction {
            num: MultiPoly::constant(c),
            den: MultiPoly::one(),
        }
    }

    pub fn numerator(&self) -> &MultiPoly {
        &self.num
    }

    pub fn denominator(&self) -> &MultiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn recip(&self) -> Result<Self, RationalFunctionError> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, e: i32) -> Result<Self, RationalFunctionError> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let k = e.unsigned_abs();
        Ok(RationalFunction {
            num: base.num.pow(k),
            den: base.den.pow(k),
        })
    }

    /// Cancels the denominator when it divides the numerator exactly.
    pub fn simplify(&self) -> Self {
        match self.num.try_divide(&self.den) {
            Some(q) => RationalFunction {
                num: q,
                den: MultiPoly::one(),
            },
            None => self.clone(),
        }
    }

    pub fn eval_with(
        &self,
        value: impl Fn(&str) -> Option<Rational> + Copy,
    ) -> Result<Rational, RationalFunctionError> {
        let n = self
            .num
            .eval_with(value)
            .map_err(RationalFunctionError::MissingVariable)?;
        let d = self
            .den
            .eval_with(value)
            .map_err(RationalFunctionError::MissingVariable)?;
        if d.is_zero() {
            return Err(RationalFunctionError::VanishingDenominator(self.den.to_string()));
        }
        Ok(n / d)
    }

    pub fn eval(&self, point: &BTreeMap<String, Rational>) -> Result<Rational, RationalFunctionError> {
        self.eval_with(|v| point.get(v).cloned())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RationalFunction {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn mul_poly(&self, p: &MultiPoly) -> Self {
        Self::normalized(&self.num * p, self.den.clone())
    }

    fn add_impl(&self, other: &Self, sign: bool) -> Self {
        let rhs_num = if sign { other.num.clone() } else { -&other.num };
        if self.den == other.den {
            return Self::normalized(&self.num + &rhs_num, self.den.clone());
        }
        let num = &self.num * &other.den + &rhs_num * &self.den;
        Self::normalized(num, &self.den * &other.den)
    }

    fn mul_impl(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        Self::normalized(&self.num * &other.num, &self.den * &other.den)
    }

    fn div_impl(&self, other: &Self) -> Result<Self, RationalFunctionError> {
        if other.is_zero() {
            return Err(RationalFunctionError::ZeroDenominator);
        }
        Ok(Self::normalized(&self.num * &other.den, &self.den * &other.num))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, RationalFunctionError> {
        self.div_impl(other)
    }
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for RationalFunction {}

impl From<MultiPoly> for RationalFunction {
    fn from(p: MultiPoly) -> Self {
        RationalFunction {
            num: p,
            den: MultiPoly::one(),
        }
    }
}

impl From<Rational> for RationalFunction {
    fn from(c: Rational) -> Self {
        Self::constant(c)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<&RationalFunction> for &RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: &RationalFunction) -> RationalFunction {
                let f: fn(&RationalFunction, &RationalFunction) -> RationalFunction = $body;
                f(self, rhs)
            }
        }
        impl $tr<RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: RationalFunction) -> RationalFunction {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: &RationalFunction) -> RationalFunction {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.add_impl(b, true));
forward_binop!(Sub, sub, |a, b| a.add_impl(b, false));
forward_binop!(Mul, mul, |a, b| a.mul_impl(b));
// Panics on division by zero, like the scalar types; use `checked_div` otherwise.
forward_binop!(Div, div, |a, b| a.div_impl(b).expect("division by zero rational function"));

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}
