//! Rational scalars and their canonical `p/q` text form.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal `{0}`")]
pub struct ParseRationalError(pub String);

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n/d` reduced. Panics on `d == 0`, so only use with literal denominators.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn parse_rational(text: &str) -> Result<Rational, ParseRationalError> {
    let err = || ParseRationalError(text.to_string());
    let t = text.trim();
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n = BigInt::from_str(n).map_err(|_| err())?;
    let d = BigInt::from_str(d).map_err(|_| err())?;
    if d.is_zero() {
        return Err(err());
    }
    Ok(Rational::new(n, d))
}

/// `p/q`, or just `p` for integers.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Least common multiple of the denominators of `values`.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    use num_integer::Integer;
    values
        .into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

/// Scales a rational vector to the primitive integer vector on the same ray.
/// The zero vector maps to itself.
pub fn primitive_integer_vector(v: &[Rational]) -> Vec<BigInt> {
    use num_integer::Integer;
    let den = common_denominator(v);
    let ints: Vec<BigInt> = v
        .iter()
        .map(|q| q.numer() * (&den / q.denom()))
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

pub fn abs(q: &Rational) -> Rational {
    q.abs()
}

/// Serde adapter: rationals cross every I/O boundary as `"p/q"` strings.
/// Plain JSON integers are accepted on input.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalText(pub Rational);

impl From<Rational> for RationalText {
    fn from(q: Rational) -> Self {
        RationalText(q)
    }
}

impl fmt::Display for RationalText {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_rational(&self.0))
    }
}

impl Serialize for RationalText {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(&self.0))
    }
}

impl<'de> Deserialize<'de> for RationalText {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = RationalText;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a rational as \"p/q\" or an integer")
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<RationalText, E> {
                parse_rational(v).map(RationalText).map_err(E::custom)
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<RationalText, E> {
                Ok(RationalText(int(v)))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<RationalText, E> {
                Ok(RationalText(Rational::from_integer(BigInt::from(v))))
            }
        }
        d.deserialize_any(V)
    }
}

pub fn to_texts(v: &[Rational]) -> Vec<RationalText> {
    v.iter().cloned().map(RationalText).collect()
}

pub fn from_texts(v: &[RationalText]) -> Vec<Rational> {
    v.iter().map(|t| t.0.clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("2/4").unwrap(), rat(1, 2));
        assert_eq!(parse_rational(" -3 ").unwrap(), int(-3));
        assert_eq!(parse_rational("1/-2").unwrap(), rat(-1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(format_rational(&rat(-6, 4)), "-3/2");
        assert_eq!(format_rational(&int(7)), "7");
    }

    #[test]
    fn primitive_vectors() {
        let v = primitive_integer_vector(&[rat(1, 2), rat(-3, 4)]);
        assert_eq!(v, vec![BigInt::from(2), BigInt::from(-3)]);
        let z = primitive_integer_vector(&[int(0), int(0)]);
        assert_eq!(z, vec![BigInt::zero(), BigInt::zero()]);
    }

    #[test]
    fn serde_accepts_strings_and_ints() {
        let v: Vec<RationalText> = serde_json::from_str(r#"["1/2", 3, "-4/6"]"#).unwrap();
        assert_eq!(from_texts(&v), vec![rat(1, 2), int(3), rat(-2, 3)]);
        assert_eq!(serde_json::to_string(&v).unwrap(), r#"["1/2","3","-2/3"]"#);
    }
}
