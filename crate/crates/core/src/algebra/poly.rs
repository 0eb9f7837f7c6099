//! Sparse multivariate polynomials over the rationals.
//!
//! A polynomial carries its own sorted variable list and is kept trimmed:
//! every listed variable occurs in some term, so structurally equal values
//! are mathematically equal and `Eq`/`Hash` can be derived.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::{format_rational, Rational};

/// Exponent vector ordered graded-lexicographically: total degree first,
/// ties broken by comparing the exponent of the first variable, then the
/// second, and so on.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Exponents(Vec<u32>);

impl Exponents {
    pub fn new(v: Vec<u32>) -> Self {
        Exponents(v)
    }

    pub fn zero(len: usize) -> Self {
        Exponents(vec![0; len])
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn divides(&self, other: &Exponents) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn add(&self, other: &Exponents) -> Exponents {
        Exponents(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn sub(&self, other: &Exponents) -> Exponents {
        Exponents(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl Ord for Exponents {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Exponents {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

type Terms = BTreeMap<Exponents, Rational>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: Terms,
}

fn merge_vars(a: &[String], b: &[String]) -> Vec<String> {
    let mut out: Vec<String> = a.iter().chain(b).cloned().collect();
    out.sort();
    out.dedup();
    out
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut terms = Terms::new();
        if !c.is_zero() {
            terms.insert(Exponents::zero(0), c);
        }
        MultiPoly { vars: Vec::new(), terms }
    }

    pub fn var(name: &str) -> Self {
        Self::monomial(Rational::one(), &[(name, 1)])
    }

    /// `coeff * Π name^exp`. Repeated names multiply.
    pub fn monomial(coeff: Rational, powers: &[(&str, u32)]) -> Self {
        let mut vars: Vec<String> = powers.iter().map(|(n, _)| n.to_string()).collect();
        vars.sort();
        vars.dedup();
        let mut e = vec![0u32; vars.len()];
        for (n, p) in powers {
            let i = vars.binary_search_by(|v| v.as_str().cmp(n)).unwrap();
            e[i] += p;
        }
        let mut terms = Terms::new();
        terms.insert(Exponents(e), coeff);
        Self::canonical(vars, terms)
    }

    /// Builds a polynomial from exponent vectors aligned with `vars`, which
    /// need not be sorted. Duplicate exponent vectors are summed.
    pub fn from_terms(
        vars: &[&str],
        terms: impl IntoIterator<Item = (Vec<u32>, Rational)>,
    ) -> Self {
        let mut sorted: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), vars.len(), "duplicate variable names");
        let perm: Vec<usize> = vars
            .iter()
            .map(|v| sorted.binary_search_by(|s| s.as_str().cmp(v)).unwrap())
            .collect();
        let mut map = Terms::new();
        for (e, c) in terms {
            assert_eq!(e.len(), vars.len(), "exponent vector length mismatch");
            let mut aligned = vec![0u32; sorted.len()];
            for (i, x) in e.into_iter().enumerate() {
                aligned[perm[i]] = x;
            }
            *map.entry(Exponents(aligned)).or_insert_with(Rational::zero) += c;
        }
        Self::canonical(sorted, map)
    }

    fn canonical(vars: Vec<String>, mut terms: Terms) -> Self {
        terms.retain(|_, c| !c.is_zero());
        let used: Vec<bool> = (0..vars.len())
            .map(|i| terms.keys().any(|e| e.0[i] > 0))
            .collect();
        if used.iter().all(|&u| u) {
            return MultiPoly { vars, terms };
        }
        let vars = vars
            .into_iter()
            .zip(&used)
            .filter(|(_, &u)| u)
            .map(|(v, _)| v)
            .collect();
        let terms = terms
            .into_iter()
            .map(|(e, c)| {
                let e = e
                    .0
                    .into_iter()
                    .zip(&used)
                    .filter(|(_, &u)| u)
                    .map(|(x, _)| x)
                    .collect();
                (Exponents(e), c)
            })
            .collect();
        MultiPoly { vars, terms }
    }

    /// Re-expresses the terms over `universe`, a sorted superset of `vars`.
    fn lift(&self, universe: &[String]) -> Terms {
        if self.vars.as_slice() == universe {
            return self.terms.clone();
        }
        let pos: Vec<usize> = self
            .vars
            .iter()
            .map(|v| universe.binary_search(v).expect("universe must contain vars"))
            .collect();
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut out = vec![0u32; universe.len()];
                for (i, &x) in e.0.iter().enumerate() {
                    out[pos[i]] = x;
                }
                (Exponents(out), c.clone())
            })
            .collect()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponents, &Rational)> {
        self.terms.iter()
    }

    /// Terms with named exponents, graded-lex ascending.
    pub fn named_terms(&self) -> impl Iterator<Item = (Vec<(&str, u32)>, &Rational)> {
        self.terms.iter().map(move |(e, c)| {
            let m = self
                .vars
                .iter()
                .zip(&e.0)
                .filter(|(_, &x)| x > 0)
                .map(|(v, &x)| (v.as_str(), x))
                .collect();
            (m, c)
        })
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// Constant value if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<Rational> {
        if !self.vars.is_empty() {
            return None;
        }
        Some(self.terms.values().next().cloned().unwrap_or_else(Rational::zero))
    }

    pub fn total_degree(&self) -> u64 {
        self.terms.keys().map(Exponents::total_degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: &str) -> u32 {
        match self.vars.iter().position(|v| v == var) {
            Some(i) => self.terms.keys().map(|e| e.0[i]).max().unwrap_or(0),
            None => 0,
        }
    }

    /// Largest term in graded-lex order.
    pub fn leading_term(&self) -> Option<(&Exponents, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> MultiPoly {
        let mut base = self.clone();
        let mut acc = MultiPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Evaluates with values supplied by `value`; `None` for the first
    /// variable without a value.
    pub fn eval_with(&self, value: impl Fn(&str) -> Option<Rational>) -> Result<Rational, String> {
        let vals: Vec<Rational> = self
            .vars
            .iter()
            .map(|v| value(v).ok_or_else(|| v.clone()))
            .collect::<Result<_, _>>()?;
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in vals.iter().zip(&e.0) {
                if k > 0 {
                    t *= num_traits::pow(x.clone(), k as usize);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    pub fn eval(&self, point: &BTreeMap<String, Rational>) -> Result<Rational, String> {
        self.eval_with(|v| point.get(v).cloned())
    }

    /// Replaces `var` by `replacement` and expands.
    pub fn substitute(&self, var: &str, replacement: &MultiPoly) -> MultiPoly {
        let Some(i) = self.vars.iter().position(|v| v == var) else {
            return self.clone();
        };
        let mut powers: Vec<MultiPoly> = vec![MultiPoly::one()];
        let mut acc = MultiPoly::zero();
        for (e, c) in &self.terms {
            let k = e.0[i] as usize;
            while powers.len() <= k {
                let next = powers.last().unwrap() * replacement;
                powers.push(next);
            }
            let mut rest = e.0.clone();
            rest[i] = 0;
            let names: Vec<&str> = self.vars.iter().map(String::as_str).collect();
            let mono = MultiPoly::from_terms(&names, [(rest, c.clone())]);
            acc = &acc + &(&mono * &powers[k]);
        }
        acc
    }

    /// Splits off the rational content: `self = c * p` where `p` has coprime
    /// integer coefficients and a positive leading coefficient.
    pub fn primitive(&self) -> (Rational, MultiPoly) {
        if self.is_zero() {
            return (Rational::zero(), MultiPoly::zero());
        }
        let den = self
            .terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num_gcd = self
            .terms
            .values()
            .fold(BigInt::zero(), |acc, c| acc.gcd(&(c.numer() * (&den / c.denom()))));
        let mut content = Rational::new(num_gcd, den);
        if self.leading_term().unwrap().1.is_negative() {
            content = -content;
        }
        let inv = content.recip();
        (content, self.scale(&inv))
    }

    /// Largest monomial dividing every term, by variable name.
    pub fn monomial_content(&self) -> BTreeMap<String, u32> {
        let mut out = BTreeMap::new();
        for (i, v) in self.vars.iter().enumerate() {
            let m = self.terms.keys().map(|e| e.0[i]).min().unwrap_or(0);
            if m > 0 {
                out.insert(v.clone(), m);
            }
        }
        out
    }

    /// Divides every term by `Π name^exp`; the monomial must divide each term.
    pub fn divide_monomial(&self, powers: &BTreeMap<String, u32>) -> MultiPoly {
        let sub: Vec<u32> = self
            .vars
            .iter()
            .map(|v| powers.get(v).copied().unwrap_or(0))
            .collect();
        let sub = Exponents(sub);
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.sub(&sub), c.clone()))
            .collect();
        Self::canonical(self.vars.clone(), terms)
    }

    /// Exact quotient `self / divisor` when it exists.
    pub fn try_divide(&self, divisor: &MultiPoly) -> Option<MultiPoly> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(MultiPoly::zero());
        }
        let universe = merge_vars(&self.vars, &divisor.vars);
        let mut rem = self.lift(&universe);
        let d = divisor.lift(&universe);
        let (dl, dc) = d.iter().next_back().map(|(e, c)| (e.clone(), c.clone()))?;
        let mut quot = Terms::new();
        while let Some((rl, rc)) = rem.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
            if !dl.divides(&rl) {
                return None;
            }
            let qe = rl.sub(&dl);
            let qc = rc / &dc;
            for (e, c) in &d {
                let key = e.add(&qe);
                let entry = rem.entry(key.clone()).or_insert_with(Rational::zero);
                *entry -= c * &qc;
                if entry.is_zero() {
                    rem.remove(&key);
                }
            }
            quot.insert(qe, qc);
        }
        Some(Self::canonical(universe, quot))
    }

    fn add_impl(&self, other: &MultiPoly, sign: bool) -> MultiPoly {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if sign { other.clone() } else { -other };
        }
        let universe = merge_vars(&self.vars, &other.vars);
        let mut terms = self.lift(&universe);
        for (e, c) in other.lift(&universe) {
            let entry = terms.entry(e).or_insert_with(Rational::zero);
            if sign {
                *entry += c;
            } else {
                *entry -= c;
            }
        }
        Self::canonical(universe, terms)
    }

    fn mul_impl(&self, other: &MultiPoly) -> MultiPoly {
        if self.is_zero() || other.is_zero() {
            return MultiPoly::zero();
        }
        let universe = merge_vars(&self.vars, &other.vars);
        let a = self.lift(&universe);
        let b = other.lift(&universe);
        let mut terms = Terms::new();
        for (ea, ca) in &a {
            for (eb, cb) in &b {
                *terms.entry(ea.add(eb)).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        Self::canonical(universe, terms)
    }
}

impl From<Rational> for MultiPoly {
    fn from(c: Rational) -> Self {
        MultiPoly::constant(c)
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<&MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &MultiPoly) -> MultiPoly {
                let f: fn(&MultiPoly, &MultiPoly) -> MultiPoly = $body;
                f(self, rhs)
            }
        }
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &MultiPoly) -> MultiPoly {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.add_impl(b, true));
forward_binop!(Sub, sub, |a, b| a.add_impl(b, false));
forward_binop!(Mul, mul, |a, b| a.mul_impl(b));

fn write_monomial(f: &mut fmt::Formatter<'_>, mono: &[(&str, u32)]) -> fmt::Result {
    for (i, (v, e)) in mono.iter().enumerate() {
        if i > 0 {
            f.write_str("*")?;
        }
        if *e == 1 {
            f.write_str(v)?;
        } else {
            write!(f, "{v}^{e}")?;
        }
    }
    Ok(())
}

/// Canonical text: terms ascending in graded-lex order, coefficients as
/// `num/den`, e.g. `1 - 1/2*q + 3*q^2`.
impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (mono, c)) in self.named_terms().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            if mono.is_empty() {
                f.write_str(&format_rational(&a))?;
            } else {
                if !a.is_one() {
                    write!(f, "{}*", format_rational(&a))?;
                }
                write_monomial(f, &mono)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, rat};

    fn v(name: &str) -> MultiPoly {
        MultiPoly::var(name)
    }

    #[test]
    fn square_and_difference_of_squares() {
        let b = v("beta");
        let z = v("zeta");
        assert_eq!(&b * &b, MultiPoly::monomial(int(1), &[("beta", 2)]));
        let lhs = (&b + &z) * (&b - &z);
        let rhs = b.pow(2) - z.pow(2);
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.to_string(), "-zeta^2 + beta^2");
    }

    #[test]
    fn zero_is_additive_identity() {
        let p = v("x").scale(&int(3)) + MultiPoly::constant(rat(1, 2));
        assert_eq!(MultiPoly::zero() + p.clone(), p);
        assert_eq!(&p - &p, MultiPoly::zero());
        assert!((&p - &p).vars().is_empty());
    }

    #[test]
    fn canonical_text() {
        let q = v("q");
        let p = MultiPoly::one() - q.scale(&rat(1, 2)) + q.pow(2).scale(&int(3));
        assert_eq!(p.to_string(), "1 - 1/2*q + 3*q^2");
        assert_eq!(MultiPoly::zero().to_string(), "0");
        assert_eq!((-v("a") * v("b")).to_string(), "-a*b");
    }

    #[test]
    fn grlex_order() {
        let a = Exponents::new(vec![0, 2]);
        let b = Exponents::new(vec![1, 1]);
        let c = Exponents::new(vec![2, 0]);
        let d = Exponents::new(vec![0, 3]);
        assert!(a < b && b < c && c < d);
    }

    #[test]
    fn evaluation_and_substitution() {
        let p = (v("x") + v("y")).pow(2);
        let mut pt = BTreeMap::new();
        pt.insert("x".to_string(), int(2));
        pt.insert("y".to_string(), rat(1, 2));
        assert_eq!(p.eval(&pt).unwrap(), rat(25, 4));
        let s = p.substitute("y", &(MultiPoly::one() - v("x")));
        assert_eq!(s, MultiPoly::one());
        assert!(p.eval(&BTreeMap::new()).is_err());
    }

    #[test]
    fn exact_division() {
        let a = v("a");
        let b = v("b");
        let f = (&a + &b) * (&a - &b.scale(&int(2)));
        assert_eq!(f.try_divide(&(&a + &b)), Some(&a - &b.scale(&int(2))));
        assert_eq!(f.try_divide(&(&a + &MultiPoly::one())), None);
    }

    #[test]
    fn primitive_part() {
        let p = v("x").scale(&rat(-2, 3)) + MultiPoly::constant(rat(4, 9));
        let (c, prim) = p.primitive();
        assert_eq!(c, rat(-2, 9));
        assert_eq!(prim, v("x").scale(&int(3)) - MultiPoly::constant(int(2)));
        assert_eq!(prim.scale(&c), p);
    }

    #[test]
    fn from_terms_unsorted_vars() {
        let p = MultiPoly::from_terms(&["z", "a"], [(vec![1, 2], int(5)), (vec![0, 0], int(1))]);
        assert_eq!(p.vars(), &["a".to_string(), "z".to_string()]);
        assert_eq!(p.to_string(), "1 + 5*a^2*z");
    }
}
