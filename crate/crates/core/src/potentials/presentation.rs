//! Binomial presentations of quantum cohomology and quantum K-theory.
//!
//! The K-theoretic ring of `P^{k-1}` is rewritten in the generator
//! `b = 1 - Linv`, which turns its single relation into the binomial
//! `b^k = q`. Polynomials in `Linv` are reduced by substituting
//! `Linv = 1 - b`.

use std::fmt;

use serde::Serialize;

use crate::algebra::poly::MultiPoly;
use crate::algebra::rational::Rational;
use crate::algebra::rewrite::{BinomialPresentation, BinomialRelation, Term};

use super::{degree_symbols, LinearActionSpec, PotentialError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresentationResult {
    pub presentation: BinomialPresentation,
    /// Generator name and the class it stands for.
    pub dictionary: Vec<(String, String)>,
    /// Relations whose left side is constant; kept out of the rewriting
    /// system.
    pub degenerate: Vec<BinomialRelation>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PresentationJson {
    pub generators: Vec<String>,
    pub relations: Vec<String>,
    pub degenerate: Vec<String>,
    pub dictionary: Vec<(String, String)>,
}

impl PresentationResult {
    pub fn to_json(&self) -> PresentationJson {
        PresentationJson {
            generators: self.presentation.generators().to_vec(),
            relations: self.presentation.relations().iter().map(ToString::to_string).collect(),
            degenerate: self.degenerate.iter().map(ToString::to_string).collect(),
            dictionary: self.dictionary.clone(),
        }
    }

    /// Normal form of a polynomial in the generators.
    pub fn reduce(&self, p: &MultiPoly) -> Result<MultiPoly, PotentialError> {
        Ok(self.presentation.normal_form_poly(p)?)
    }
}

impl fmt::Display for PresentationResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.presentation)?;
        for r in &self.degenerate {
            writeln!(f, "degenerate: {r}")?;
        }
        for (g, meaning) in &self.dictionary {
            writeln!(f, "{g}: {meaning}")?;
        }
        Ok(())
    }
}

fn power_relation(generator: &str, k: u32) -> BinomialRelation {
    BinomialRelation {
        lhs: Term::monic(&[(generator, k)]),
        rhs: Term::monic(&[("q", 1)]),
    }
}

fn check_k(k: u32) -> Result<(), PotentialError> {
    if k < 2 {
        Err(PotentialError::KTooSmall(k))
    } else {
        Ok(())
    }
}

/// `Q[beta, q] / (beta^k - q)`.
pub fn qh_presentation(k: u32) -> Result<PresentationResult, PotentialError> {
    check_k(k)?;
    let presentation = BinomialPresentation::new(&["beta", "q"], vec![power_relation("beta", k)])?;
    let result = PresentationResult {
        presentation,
        dictionary: vec![
            ("beta".into(), "equivariant Euler class of the hyperplane bundle".into()),
            ("q".into(), "Novikov variable of the line class".into()),
        ],
        degenerate: vec![],
    };
    let top = result.reduce(&MultiPoly::var("beta").pow(k))?;
    assert_eq!(top, MultiPoly::var("q"), "beta^k must reduce to q");
    Ok(result)
}

/// `Q[L, L^{-1}, q] / ((1 - L^{-1})^k - q)` in the generator `b = 1 - Linv`.
pub fn qk_presentation(k: u32) -> Result<PresentationResult, PotentialError> {
    check_k(k)?;
    let presentation = BinomialPresentation::new(&["b", "q"], vec![power_relation("b", k)])?;
    let result = PresentationResult {
        presentation,
        dictionary: vec![
            ("b".into(), "1 - Linv".into()),
            ("Linv".into(), "class of the dual hyperplane bundle".into()),
            ("q".into(), "Novikov variable of the line class".into()),
        ],
        degenerate: vec![],
    };
    let top = qk_reduce(&result, &(MultiPoly::one() - MultiPoly::var("Linv")).pow(k))?;
    assert_eq!(top, MultiPoly::var("q"), "(1 - Linv)^k must reduce to q");
    Ok(result)
}

/// Normal form of a polynomial in `Linv` and `q` modulo the K-theoretic
/// relation, expressed in `b`.
pub fn qk_reduce(result: &PresentationResult, p: &MultiPoly) -> Result<MultiPoly, PotentialError> {
    let in_b = p.substitute("Linv", &(MultiPoly::one() - MultiPoly::var("b")));
    result.reduce(&in_b)
}

/// One relation per degree class `d`:
/// `Π_{mu_j(d) > 0} beta_j^{mu_j(d)} = q^d Π_{mu_j(d) < 0} beta_j^{-mu_j(d)}`.
pub fn batyrev_presentation(
    spec: &LinearActionSpec,
    degree_generators: &[Vec<u32>],
) -> Result<PresentationResult, PotentialError> {
    let betas: Vec<String> = (1..=spec.weights.len()).map(|j| format!("beta{j}")).collect();
    let qs = degree_symbols(spec.rank);
    let mut relations = Vec::new();
    let mut degenerate = Vec::new();
    for (idx, d) in degree_generators.iter().enumerate() {
        if d.len() != spec.rank {
            return Err(PotentialError::DegreeLength {
                index: idx + 1,
                expected: spec.rank,
                found: d.len(),
            });
        }
        let mut lhs = Vec::new();
        let mut rhs: Vec<(&str, u32)> = qs.iter().zip(d).map(|(q, &e)| (q.as_str(), e)).collect();
        for (j, b) in betas.iter().enumerate() {
            let mu = spec.pairing(j, d);
            if mu > 0 {
                lhs.push((b.as_str(), mu as u32));
            } else if mu < 0 {
                rhs.push((b.as_str(), (-mu) as u32));
            }
        }
        let rel = BinomialRelation {
            lhs: Term::new(Rational::from_integer(1.into()), &lhs),
            rhs: Term::new(Rational::from_integer(1.into()), &rhs),
        };
        if rel.lhs.is_constant() {
            degenerate.push(rel);
        } else {
            relations.push(rel);
        }
    }
    let mut generators: Vec<&str> = betas.iter().map(String::as_str).collect();
    generators.extend(qs.iter().map(String::as_str));
    let presentation = BinomialPresentation::new(&generators, relations)?;
    let mut dictionary: Vec<(String, String)> = betas
        .iter()
        .enumerate()
        .map(|(j, b)| (b.clone(), format!("Euler class of weight space {}", j + 1)))
        .collect();
    dictionary.extend(qs.iter().map(|q| (q.clone(), "Novikov variable".into())));
    Ok(PresentationResult {
        presentation,
        dictionary,
        degenerate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;

    #[test]
    fn projective_relations() {
        let qh = qh_presentation(2).unwrap();
        assert_eq!(qh.presentation.to_string(), "beta^2 = q");
        let qh3 = qh_presentation(3).unwrap();
        let nf = qh3.reduce(&MultiPoly::var("beta").pow(7)).unwrap();
        assert_eq!(nf, MultiPoly::monomial(int(1), &[("beta", 1), ("q", 2)]));
        let qk = qk_presentation(2).unwrap();
        let nf = qk_reduce(&qk, &(MultiPoly::one() - MultiPoly::var("Linv")).pow(2)).unwrap();
        assert_eq!(nf, MultiPoly::var("q"));
        assert_eq!(qh_presentation(1), Err(PotentialError::KTooSmall(1)));
    }

    #[test]
    fn toric_relations() {
        let p2 = LinearActionSpec::projective_space(3, 1);
        let r = batyrev_presentation(&p2, &[vec![1]]).unwrap();
        assert_eq!(r.presentation.to_string(), "beta1*beta2*beta3 = q");
        let spec = LinearActionSpec::new(1, vec![vec![1], vec![1], vec![-1]], 1).unwrap();
        let r = batyrev_presentation(&spec, &[vec![1]]).unwrap();
        assert_eq!(r.presentation.to_string(), "beta1*beta2 = beta3*q");
        let zero = LinearActionSpec::new(1, vec![vec![0]], 1).unwrap();
        let r = batyrev_presentation(&zero, &[vec![1]]).unwrap();
        assert_eq!(r.degenerate.len(), 1);
        assert_eq!(r.degenerate[0].to_string(), "1 = q");
    }
}
