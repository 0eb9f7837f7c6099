//! Monomial rewriting modulo binomial relations.
//!
//! Each relation `lhs = rhs` is oriented `lhs -> rhs`. A monomial divisible
//! by some `lhs` is rewritten in place; the first applicable relation (in
//! declaration order) wins. Termination is not assumed: every rewrite spends
//! one unit of fuel and running dry is an error.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::poly::MultiPoly;
use super::rational::{format_rational, Rational};

pub const DEFAULT_FUEL: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RewriteError {
    #[error("rewriting did not terminate within {0} steps")]
    FuelExhausted(usize),
    #[error("relation {0} is not a binomial: {1}")]
    NotBinomial(usize, String),
    #[error("symbol `{0}` is not a generator of the presentation")]
    UnknownSymbol(String),
}

/// `coeff * Π x^e` with named exponents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub coeff: Rational,
    pub powers: BTreeMap<String, u32>,
}

impl Term {
    pub fn new(coeff: Rational, powers: &[(&str, u32)]) -> Self {
        let mut map = BTreeMap::new();
        for (v, e) in powers {
            if *e > 0 {
                *map.entry(v.to_string()).or_insert(0) += e;
            }
        }
        Term { coeff, powers: map }
    }

    pub fn monic(powers: &[(&str, u32)]) -> Self {
        Self::new(Rational::one(), powers)
    }

    pub fn is_constant(&self) -> bool {
        self.powers.is_empty()
    }

    fn divides(&self, other: &Term) -> bool {
        self.powers
            .iter()
            .all(|(v, e)| other.powers.get(v).is_some_and(|f| f >= e))
    }

    pub fn to_poly(&self) -> MultiPoly {
        let p: Vec<(&str, u32)> = self.powers.iter().map(|(v, &e)| (v.as_str(), e)).collect();
        MultiPoly::monomial(self.coeff.clone(), &p)
    }

    pub fn degree(&self) -> u32 {
        self.powers.values().sum()
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.powers.is_empty() {
            return f.write_str(&format_rational(&self.coeff));
        }
        if !self.coeff.is_one() {
            write!(f, "{}*", format_rational(&self.coeff))?;
        }
        for (i, (v, e)) in self.powers.iter().enumerate() {
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
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinomialRelation {
    pub lhs: Term,
    pub rhs: Term,
}

impl fmt::Display for BinomialRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinomialPresentation {
    generators: Vec<String>,
    relations: Vec<BinomialRelation>,
    fuel: usize,
}

impl BinomialPresentation {
    pub fn new(generators: &[&str], relations: Vec<BinomialRelation>) -> Result<Self, RewriteError> {
        let generators: Vec<String> = generators.iter().map(|s| s.to_string()).collect();
        for (i, r) in relations.iter().enumerate() {
            if r.lhs.coeff.is_zero() || r.rhs.coeff.is_zero() || r.lhs == r.rhs {
                return Err(RewriteError::NotBinomial(i, r.to_string()));
            }
            for v in r.lhs.powers.keys().chain(r.rhs.powers.keys()) {
                if !generators.contains(v) {
                    return Err(RewriteError::UnknownSymbol(v.clone()));
                }
            }
        }
        Ok(BinomialPresentation {
            generators,
            relations,
            fuel: DEFAULT_FUEL,
        })
    }

    pub fn with_fuel(mut self, fuel: usize) -> Self {
        self.fuel = fuel;
        self
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relations(&self) -> &[BinomialRelation] {
        &self.relations
    }

    /// Rewrites a single term until no relation's left side divides it.
    pub fn normal_form_term(&self, t: &Term) -> Result<Term, RewriteError> {
        let mut cur = t.clone();
        let mut steps = 0usize;
        'outer: loop {
            if cur.coeff.is_zero() {
                return Ok(cur);
            }
            for r in &self.relations {
                if r.lhs.divides(&cur) {
                    if steps == self.fuel {
                        return Err(RewriteError::FuelExhausted(self.fuel));
                    }
                    steps += 1;
                    for (v, e) in &r.lhs.powers {
                        let slot = cur.powers.get_mut(v).unwrap();
                        *slot -= e;
                        if *slot == 0 {
                            cur.powers.remove(v);
                        }
                    }
                    for (v, e) in &r.rhs.powers {
                        *cur.powers.entry(v.clone()).or_insert(0) += e;
                    }
                    cur.coeff = &cur.coeff * &r.rhs.coeff / &r.lhs.coeff;
                    continue 'outer;
                }
            }
            return Ok(cur);
        }
    }

    pub fn normal_form(&self, t: &Term) -> Result<MultiPoly, RewriteError> {
        self.normal_form_term(t).map(|t| t.to_poly())
    }

    /// Term-wise normal form of a polynomial in the generators.
    pub fn normal_form_poly(&self, p: &MultiPoly) -> Result<MultiPoly, RewriteError> {
        for v in p.vars() {
            if !self.generators.contains(v) {
                return Err(RewriteError::UnknownSymbol(v.clone()));
            }
        }
        let mut acc = MultiPoly::zero();
        for (mono, c) in p.named_terms() {
            let t = Term::new(c.clone(), &mono);
            acc = acc + self.normal_form(&t)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for BinomialPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.relations.iter().enumerate() {
            if i > 0 {
                f.write_str("\n")?;
            }
            write!(f, "{r}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;

    fn beta_k(k: u32) -> BinomialPresentation {
        BinomialPresentation::new(
            &["beta", "q"],
            vec![BinomialRelation {
                lhs: Term::monic(&[("beta", k)]),
                rhs: Term::monic(&[("q", 1)]),
            }],
        )
        .unwrap()
    }

    #[test]
    fn reduces_top_power() {
        let p = beta_k(3);
        assert_eq!(p.normal_form(&Term::monic(&[("beta", 3)])).unwrap(), MultiPoly::var("q"));
        assert_eq!(
            p.normal_form(&Term::monic(&[("beta", 2)])).unwrap(),
            MultiPoly::var("beta").pow(2)
        );
        // beta^(2k+1) -> q^2 beta
        assert_eq!(
            p.normal_form(&Term::monic(&[("beta", 7)])).unwrap(),
            MultiPoly::monomial(int(1), &[("q", 2), ("beta", 1)])
        );
    }

    #[test]
    fn non_terminating_presentation_runs_out_of_fuel() {
        let p = BinomialPresentation::new(
            &["x"],
            vec![BinomialRelation {
                lhs: Term::monic(&[("x", 1)]),
                rhs: Term::monic(&[("x", 2)]),
            }],
        )
        .unwrap()
        .with_fuel(50);
        assert_eq!(
            p.normal_form(&Term::monic(&[("x", 1)])).unwrap_err(),
            RewriteError::FuelExhausted(50)
        );
    }

    #[test]
    fn rejects_degenerate_relations() {
        let same = BinomialRelation {
            lhs: Term::monic(&[("x", 1)]),
            rhs: Term::monic(&[("x", 1)]),
        };
        assert!(matches!(
            BinomialPresentation::new(&["x"], vec![same]),
            Err(RewriteError::NotBinomial(0, _))
        ));
        let unknown = BinomialRelation {
            lhs: Term::monic(&[("y", 1)]),
            rhs: Term::monic(&[]),
        };
        assert!(matches!(
            BinomialPresentation::new(&["x"], vec![unknown]),
            Err(RewriteError::UnknownSymbol(_))
        ));
    }

    #[test]
    fn coefficients_follow_the_relation() {
        let p = BinomialPresentation::new(
            &["a", "b"],
            vec![BinomialRelation {
                lhs: Term::new(int(2), &[("a", 2)]),
                rhs: Term::new(int(3), &[("b", 1)]),
            }],
        )
        .unwrap();
        // a^5 = a * (a^2)^2 -> a * (3/2 b)^2
        let nf = p.normal_form(&Term::monic(&[("a", 5)])).unwrap();
        assert_eq!(nf.to_string(), "9/4*a*b^2");
    }
}
