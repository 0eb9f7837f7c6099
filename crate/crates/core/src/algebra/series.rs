//! Novikov-style power series in one or more degree symbols, truncated at a
//! maximum total degree, with rational-function coefficients.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::poly::Exponents;
use super::ratfun::RationalFunction;
use super::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeriesError {
    #[error("degree arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },
    #[error("degree symbols differ: {left:?} vs {right:?}")]
    SymbolMismatch { left: Vec<String>, right: Vec<String> },
    #[error("degree vector {degree:?} has length {len}, expected {arity}")]
    BadDegree { degree: Vec<u32>, len: usize, arity: usize },
}

#[derive(Clone, Debug)]
pub struct TruncatedSeries {
    symbols: Vec<String>,
    truncation: u32,
    coeffs: BTreeMap<Exponents, RationalFunction>,
}

impl TruncatedSeries {
    pub fn zero(symbols: &[&str], truncation: u32) -> Self {
        TruncatedSeries {
            symbols: symbols.iter().map(|s| s.to_string()).collect(),
            truncation,
            coeffs: BTreeMap::new(),
        }
    }

    /// Single-symbol series from coefficients of `q^0, q^1, ...`; entries past
    /// the truncation are dropped.
    pub fn from_coefficients(
        symbol: &str,
        truncation: u32,
        coeffs: impl IntoIterator<Item = RationalFunction>,
    ) -> Self {
        let mut s = Self::zero(&[symbol], truncation);
        for (d, c) in coeffs.into_iter().enumerate() {
            s.set(&[d as u32], c).expect("arity one");
        }
        s
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn arity(&self) -> usize {
        self.symbols.len()
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    fn check_degree(&self, degree: &[u32]) -> Result<(), SeriesError> {
        if degree.len() != self.arity() {
            return Err(SeriesError::BadDegree {
                degree: degree.to_vec(),
                len: degree.len(),
                arity: self.arity(),
            });
        }
        Ok(())
    }

    /// Sets a coefficient. Degrees above the truncation are silently dropped.
    pub fn set(&mut self, degree: &[u32], c: RationalFunction) -> Result<(), SeriesError> {
        self.check_degree(degree)?;
        let key = Exponents::new(degree.to_vec());
        if key.total_degree() > self.truncation as u64 || c.is_zero() {
            self.coeffs.remove(&key);
        } else {
            self.coeffs.insert(key, c);
        }
        Ok(())
    }

    pub fn coefficient(&self, degree: &[u32]) -> RationalFunction {
        self.coeffs
            .get(&Exponents::new(degree.to_vec()))
            .cloned()
            .unwrap_or_else(RationalFunction::zero)
    }

    /// Non-zero coefficients in graded-lex degree order.
    pub fn iter(&self) -> impl Iterator<Item = (&[u32], &RationalFunction)> {
        self.coeffs.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn check_compatible(&self, other: &Self) -> Result<(), SeriesError> {
        if self.arity() != other.arity() {
            return Err(SeriesError::ArityMismatch {
                left: self.arity(),
                right: other.arity(),
            });
        }
        if self.symbols != other.symbols {
            return Err(SeriesError::SymbolMismatch {
                left: self.symbols.clone(),
                right: other.symbols.clone(),
            });
        }
        Ok(())
    }

    fn combine(&self, other: &Self, sign: bool) -> Result<Self, SeriesError> {
        self.check_compatible(other)?;
        let truncation = self.truncation.min(other.truncation);
        let mut out = Self {
            symbols: self.symbols.clone(),
            truncation,
            coeffs: BTreeMap::new(),
        };
        let keys: std::collections::BTreeSet<&Exponents> =
            self.coeffs.keys().chain(other.coeffs.keys()).collect();
        for k in keys {
            if k.total_degree() > truncation as u64 {
                continue;
            }
            let a = self.coeffs.get(k);
            let b = other.coeffs.get(k);
            let c = match (a, b, sign) {
                (Some(a), Some(b), true) => a + b,
                (Some(a), Some(b), false) => a - b,
                (Some(a), None, _) => a.clone(),
                (None, Some(b), true) => b.clone(),
                (None, Some(b), false) => -b,
                (None, None, _) => unreachable!(),
            };
            if !c.is_zero() {
                out.coeffs.insert(k.clone(), c);
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.combine(other, true)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.combine(other, false)
    }

    /// Cauchy product, truncated at the smaller truncation.
    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_compatible(other)?;
        let truncation = self.truncation.min(other.truncation);
        let mut acc: BTreeMap<Exponents, RationalFunction> = BTreeMap::new();
        for (ea, ca) in &self.coeffs {
            for (eb, cb) in &other.coeffs {
                if ea.total_degree() + eb.total_degree() > truncation as u64 {
                    continue;
                }
                let e = Exponents::new(
                    ea.as_slice()
                        .iter()
                        .zip(eb.as_slice())
                        .map(|(x, y)| x + y)
                        .collect(),
                );
                let prod = ca * cb;
                let slot = acc.entry(e).or_insert_with(RationalFunction::zero);
                *slot = &*slot + &prod;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(Self {
            symbols: self.symbols.clone(),
            truncation,
            coeffs: acc,
        })
    }

    pub fn scalar_mul(&self, c: &RationalFunction) -> Self {
        let coeffs = if c.is_zero() {
            BTreeMap::new()
        } else {
            self.coeffs
                .iter()
                .map(|(e, x)| (e.clone(), x * c))
                .filter(|(_, x)| !x.is_zero())
                .collect()
        };
        Self {
            symbols: self.symbols.clone(),
            truncation: self.truncation,
            coeffs,
        }
    }

    /// Applies `f(degree, coefficient)` to every stored coefficient.
    pub fn map_coefficients(
        &self,
        mut f: impl FnMut(&[u32], &RationalFunction) -> RationalFunction,
    ) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(e, c)| (e.clone(), f(e.as_slice(), c)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        Self {
            symbols: self.symbols.clone(),
            truncation: self.truncation,
            coeffs,
        }
    }

    /// Multiplies by the monomial `q^shift`, dropping what falls past the
    /// truncation.
    pub fn shift(&self, shift: &[u32]) -> Result<Self, SeriesError> {
        self.check_degree(shift)?;
        let mut out = Self::zero(&[], self.truncation);
        out.symbols = self.symbols.clone();
        for (e, c) in &self.coeffs {
            let d: Vec<u32> = e.as_slice().iter().zip(shift).map(|(a, b)| a + b).collect();
            out.set(&d, c.clone())?;
        }
        Ok(out)
    }

    /// Restricts to total degree `<= truncation` (which must not exceed the
    /// current truncation).
    pub fn truncate(&self, truncation: u32) -> Self {
        let truncation = truncation.min(self.truncation);
        Self {
            symbols: self.symbols.clone(),
            truncation,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(e, _)| e.total_degree() <= truncation as u64)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Evaluates every coefficient at a rational point.
    pub fn specialize(
        &self,
        point: &BTreeMap<String, Rational>,
    ) -> Result<Self, super::ratfun::RationalFunctionError> {
        let mut out = Self::zero(&[], self.truncation);
        out.symbols = self.symbols.clone();
        for (e, c) in &self.coeffs {
            let v = c.eval(point)?;
            out.set(e.as_slice(), RationalFunction::constant(v))
                .expect("same arity");
        }
        Ok(out)
    }

    pub fn to_json(&self) -> SeriesJson {
        SeriesJson {
            symbols: self.symbols.clone(),
            truncation: self.truncation,
            coefficients: self
                .iter()
                .map(|(d, c)| CoefficientJson {
                    degree: d.to_vec(),
                    value: c.to_string(),
                })
                .collect(),
        }
    }
}

impl PartialEq for TruncatedSeries {
    fn eq(&self, other: &Self) -> bool {
        self.symbols == other.symbols
            && self.truncation == other.truncation
            && self.coeffs.len() == other.coeffs.len()
            && self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .all(|((ea, ca), (eb, cb))| ea == eb && ca == cb)
    }
}

impl Eq for TruncatedSeries {}

#[derive(Debug, Clone, Serialize, serde::Deserialize, PartialEq, Eq)]
pub struct SeriesJson {
    pub symbols: Vec<String>,
    pub truncation: u32,
    pub coefficients: Vec<CoefficientJson>,
}

#[derive(Debug, Clone, Serialize, serde::Deserialize, PartialEq, Eq)]
pub struct CoefficientJson {
    pub degree: Vec<u32>,
    pub value: String,
}

fn write_degree(f: &mut fmt::Formatter<'_>, symbols: &[String], degree: &[u32]) -> fmt::Result {
    let mut first = true;
    for (s, &d) in symbols.iter().zip(degree) {
        if d == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        if d == 1 {
            f.write_str(s)?;
        } else {
            write!(f, "{s}^{d}")?;
        }
    }
    Ok(())
}

/// Canonical text, ascending in degree. Constant coefficients print like
/// polynomial coefficients (`1 - 1/2*q + 3*q^2`); other coefficients are
/// parenthesized (`(beta + zeta)*q`, `(1)/(beta + zeta)*q^2`).
impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.coeffs.iter().enumerate() {
            let constant_deg = e.total_degree() == 0;
            match c.as_constant() {
                Some(q) => {
                    let neg = q < Rational::from_integer(0.into());
                    let a = if neg { -q } else { q };
                    match (i, neg) {
                        (0, true) => f.write_str("-")?,
                        (0, false) => {}
                        (_, true) => f.write_str(" - ")?,
                        (_, false) => f.write_str(" + ")?,
                    }
                    let one = a == Rational::from_integer(1.into());
                    if constant_deg {
                        f.write_str(&super::rational::format_rational(&a))?;
                    } else {
                        if !one {
                            write!(f, "{}*", super::rational::format_rational(&a))?;
                        }
                        write_degree(f, &self.symbols, e.as_slice())?;
                    }
                }
                None => {
                    if i > 0 {
                        f.write_str(" + ")?;
                    }
                    if c.is_polynomial() {
                        write!(f, "({c})")?;
                    } else {
                        write!(f, "{c}")?;
                    }
                    if !constant_deg {
                        f.write_str("*")?;
                        write_degree(f, &self.symbols, e.as_slice())?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::MultiPoly;
    use crate::algebra::rational::{int, rat};

    fn k(n: i64) -> RationalFunction {
        RationalFunction::constant(int(n))
    }

    #[test]
    fn one_plus_q_times_one_minus_q() {
        let a = TruncatedSeries::from_coefficients("q", 2, [k(1), k(1)]);
        let b = TruncatedSeries::from_coefficients("q", 2, [k(1), k(-1)]);
        let p = a.mul(&b).unwrap();
        assert_eq!(p, TruncatedSeries::from_coefficients("q", 2, [k(1), k(0), k(-1)]));
        assert_eq!(p.to_string(), "1 - q^2");
    }

    #[test]
    fn times_zero_is_zero() {
        let a = TruncatedSeries::from_coefficients("q", 3, [k(2), k(5)]);
        let z = TruncatedSeries::zero(&["q"], 3);
        assert!(a.mul(&z).unwrap().is_zero());
    }

    #[test]
    fn truncation_is_minimum() {
        let a = TruncatedSeries::from_coefficients("q", 5, [k(1), k(1), k(1)]);
        let b = TruncatedSeries::from_coefficients("q", 1, [k(1), k(1)]);
        let s = a.add(&b).unwrap();
        assert_eq!(s.truncation(), 1);
        assert_eq!(s.to_string(), "2 + 2*q");
    }

    #[test]
    fn arity_mismatch() {
        let a = TruncatedSeries::zero(&["q"], 2);
        let b = TruncatedSeries::zero(&["q1", "q2"], 2);
        assert_eq!(
            a.mul(&b).unwrap_err(),
            SeriesError::ArityMismatch { left: 1, right: 2 }
        );
    }

    #[test]
    fn text_form() {
        let s = TruncatedSeries::from_coefficients(
            "q",
            4,
            [
                k(1),
                RationalFunction::constant(rat(-1, 2)),
                k(3),
                RationalFunction::from(MultiPoly::var("beta") + MultiPoly::var("zeta")),
                RationalFunction::new(MultiPoly::one(), MultiPoly::var("beta")).unwrap(),
            ],
        );
        assert_eq!(
            s.to_string(),
            "1 - 1/2*q + 3*q^2 + (zeta + beta)*q^3 + (1)/(beta)*q^4"
        );
        let t = TruncatedSeries::zero(&["q1", "q2"], 3);
        let mut t = t;
        t.set(&[1, 2], k(-2)).unwrap();
        t.set(&[1, 0], k(1)).unwrap();
        assert_eq!(t.to_string(), "q1 - 2*q1*q2^2");
    }
}
