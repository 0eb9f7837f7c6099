//! Truncated series invariants of linear torus actions: Δ-factors, localized
//! potentials, J-function residuals, presentations of quantum rings, the
//! framed-sheaf fundamental solution, ages and the crepancy test.
//!
//! Inverted classes are separate symbols (`Xinv1`, `Linv`, ...), never
//! negative exponents. Semi-infinite products are always cancelled to finite
//! ratios before anything is built.

pub mod framed;
pub mod presentation;
pub mod qde;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::poly::MultiPoly;
use crate::algebra::ratfun::{RationalFunction, RationalFunctionError};
use crate::algebra::rational::{int, Rational};
use crate::algebra::rewrite::RewriteError;
use crate::algebra::series::TruncatedSeries;

pub use framed::{framed_sheaf_fundamental_solution, FramedMode, FramedSheafSpec};
pub use presentation::{batyrev_presentation, qh_presentation, qk_presentation, PresentationResult};
pub use qde::{qde_classical_term, qde_residual_cohomological, qde_residual_ktheoretic};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PotentialError {
    #[error("k = {0}: projective space presentations need k >= 2")]
    KTooSmall(u32),
    #[error("{0} must be at least 1")]
    NonPositive(&'static str),
    #[error("weight {index} has length {found}, expected rank {expected}")]
    WeightLength { index: usize, expected: usize, found: usize },
    #[error("degree class {index} has length {found}, expected rank {expected}")]
    DegreeLength { index: usize, expected: usize, found: usize },
    #[error("symbolic evaluation is capped at k <= 3 and D <= 3 (got k = {k}, D = {d})")]
    SymbolicTooLarge { k: u32, d: u32 },
    #[error("denominator factor {0} vanishes at the specialization point")]
    VanishingDenominator(String),
    #[error("exponent s_{index} = {value} is not below the order {order}")]
    AgeExponent { index: usize, value: u32, order: u32 },
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
    #[error(transparent)]
    RationalFunction(#[from] RationalFunctionError),
}

/// `Δ_m(theta, w)`: `Π_{l=1}^{m} (theta + w + l zeta)` for `m >= 0` and
/// `1 / Π_{l=m+1}^{0} (theta + w + l zeta)` for `m < 0`.
pub fn delta_factor(m: i64, theta: &MultiPoly, w: &MultiPoly, zeta: &MultiPoly) -> RationalFunction {
    let factor = |l: i64| theta + w + zeta.scale(&int(l));
    if m >= 0 {
        let p = (1..=m).fold(MultiPoly::one(), |acc, l| acc * factor(l));
        RationalFunction::from(p)
    } else {
        let p = (m + 1..=0).fold(MultiPoly::one(), |acc, l| acc * factor(l));
        RationalFunction::new(MultiPoly::one(), p).expect("product of non-zero linear forms")
    }
}

/// Δ-factor in the symbols `theta`, `w`, `zeta`.
pub fn delta_factor_symbolic(m: i64) -> RationalFunction {
    delta_factor(m, &MultiPoly::var("theta"), &MultiPoly::var("w"), &MultiPoly::var("zeta"))
}

/// Degree symbols: `q` in rank one, `q1..qr` otherwise.
pub fn degree_symbols(rank: usize) -> Vec<String> {
    if rank == 1 {
        vec!["q".into()]
    } else {
        (1..=rank).map(|i| format!("q{i}")).collect()
    }
}

/// Non-negative integer vectors of length `parts` with entries summing to
/// `total`, in lexicographically decreasing order.
pub fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    if parts == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in (0..=total).rev() {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Effective classes of total degree at most `max`, by increasing degree.
pub fn effective_classes(rank: usize, max: u32) -> Vec<Vec<u32>> {
    (0..=max).flat_map(|d| compositions(d, rank)).collect()
}

/// Torus weights on a vector space and a truncation for series in the
/// effective classes, identified with non-negative multi-indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearActionSpec {
    pub rank: usize,
    pub weights: Vec<Vec<i64>>,
    pub truncation: u32,
}

impl LinearActionSpec {
    pub fn new(rank: usize, weights: Vec<Vec<i64>>, truncation: u32) -> Result<Self, PotentialError> {
        if rank == 0 {
            return Err(PotentialError::NonPositive("rank"));
        }
        for (i, w) in weights.iter().enumerate() {
            if w.len() != rank {
                return Err(PotentialError::WeightLength {
                    index: i + 1,
                    expected: rank,
                    found: w.len(),
                });
            }
        }
        Ok(LinearActionSpec {
            rank,
            weights,
            truncation,
        })
    }

    /// `P^{k-1}`: rank one, `k` weights equal to one.
    pub fn projective_space(k: usize, truncation: u32) -> Self {
        LinearActionSpec {
            rank: 1,
            weights: vec![vec![1]; k],
            truncation,
        }
    }

    pub fn pairing(&self, j: usize, d: &[u32]) -> i64 {
        self.weights[j].iter().zip(d).map(|(a, &b)| a * i64::from(b)).sum()
    }
}

/// Which of the two localized potentials to compute.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// Factors `1 - X_j^{-1} zeta^m`.
    #[default]
    Displayed,
    /// The same products with `zeta` replaced by its inverse `zetainv`.
    /// Obtained by analogy only.
    Opposite,
}

/// `1 - Xinv * z^m` for a possibly negative `m`, as a rational function.
fn one_minus(xinv: &MultiPoly, z: &MultiPoly, m: i64) -> RationalFunction {
    if m >= 0 {
        RationalFunction::from(MultiPoly::one() - xinv * &z.pow(m as u32))
    } else {
        let zm = z.pow((-m) as u32);
        RationalFunction::new(&zm - xinv, zm).expect("monomial denominator")
    }
}

/// Localized gauged potential at zero of a linear torus action.
pub fn localized_potential(spec: &LinearActionSpec, branch: Branch) -> TruncatedSeries {
    let symbols = degree_symbols(spec.rank);
    let refs: Vec<&str> = symbols.iter().map(String::as_str).collect();
    let z = MultiPoly::var(match branch {
        Branch::Displayed => "zeta",
        Branch::Opposite => "zetainv",
    });
    let xinv: Vec<MultiPoly> = (1..=spec.weights.len())
        .map(|j| MultiPoly::var(&format!("Xinv{j}")))
        .collect();
    let mut out = TruncatedSeries::zero(&refs, spec.truncation);
    for d in effective_classes(spec.rank, spec.truncation) {
        let mut c = RationalFunction::one();
        for (j, x) in xinv.iter().enumerate() {
            let mu = spec.pairing(j, &d);
            if mu >= 0 {
                let den = (1..=mu).fold(RationalFunction::one(), |acc, m| acc * one_minus(x, &z, m));
                c = c.checked_div(&den).expect("non-zero product");
            } else {
                for m in mu + 1..=0 {
                    c = c * one_minus(x, &z, m);
                }
            }
        }
        out.set(&d, c).expect("arity matches rank");
    }
    out
}

/// `age = (1/r) Σ s_j`.
pub fn age(order: u32, exponents: &[u32]) -> Result<Rational, PotentialError> {
    if order == 0 {
        return Err(PotentialError::NonPositive("order"));
    }
    if let Some((i, &s)) = exponents.iter().enumerate().find(|(_, &s)| s >= order) {
        return Err(PotentialError::AgeExponent {
            index: i + 1,
            value: s,
            order,
        });
    }
    let total: u64 = exponents.iter().map(|&s| u64::from(s)).sum();
    Ok(Rational::new(total.into(), order.into()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", content = "sum", rename_all = "snake_case")]
pub enum Crepancy {
    Crepant,
    NonCrepant(i64),
}

impl fmt::Display for Crepancy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Crepancy::Crepant => f.write_str("crepant"),
            Crepancy::NonCrepant(s) => write!(f, "non_crepant({s})"),
        }
    }
}

/// A wall crossing for a `C^*` action is crepant iff the fixed-point weights
/// sum to zero.
pub fn crepancy_check(weights: &[i64]) -> Crepancy {
    match weights.iter().sum() {
        0 => Crepancy::Crepant,
        s => Crepancy::NonCrepant(s),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;
    use std::collections::BTreeMap;

    fn v(s: &str) -> MultiPoly {
        MultiPoly::var(s)
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta_factor_symbolic(0), RationalFunction::one());
        let base = v("theta") + v("w");
        let two = (&base + &v("zeta")) * (&base + &v("zeta").scale(&int(2)));
        assert_eq!(delta_factor_symbolic(2), RationalFunction::from(two));
        let inv = RationalFunction::new(MultiPoly::one(), base).unwrap();
        assert_eq!(delta_factor_symbolic(-1), inv);
    }

    #[test]
    fn delta_agrees_with_semi_infinite_ratio_truncated_far_enough() {
        // Π_{l=-N}^{m} / Π_{l=-N}^{0} for N large enough to contain both ranges.
        let point: BTreeMap<String, Rational> = [("theta", rat(1, 3)), ("w", rat(2, 7)), ("zeta", rat(5, 11))]
            .into_iter()
            .map(|(k, x)| (k.to_string(), x))
            .collect();
        let f = |l: i64| &point["theta"] + &point["w"] + &point["zeta"] * int(l);
        for m in -4..=4 {
            let n = 6;
            let top: Rational = (-n..=m).map(f).product();
            let bottom: Rational = (-n..=0).map(f).product();
            assert_eq!(delta_factor_symbolic(m).eval(&point).unwrap(), top / bottom, "m = {m}");
        }
    }

    #[test]
    fn localized_examples() {
        let spec = LinearActionSpec::new(1, vec![vec![1]], 2).unwrap();
        let s = localized_potential(&spec, Branch::Displayed);
        assert_eq!(s.coefficient(&[0]), RationalFunction::one());
        let f1 = MultiPoly::one() - v("Xinv1") * v("zeta");
        let f2 = MultiPoly::one() - v("Xinv1") * v("zeta").pow(2);
        assert_eq!(
            s.coefficient(&[1]),
            RationalFunction::new(MultiPoly::one(), f1.clone()).unwrap()
        );
        assert_eq!(s.coefficient(&[2]), RationalFunction::new(MultiPoly::one(), f1 * f2).unwrap());
    }

    #[test]
    fn negative_pairings_land_in_the_numerator() {
        let spec = LinearActionSpec::new(1, vec![vec![-1]], 1).unwrap();
        let s = localized_potential(&spec, Branch::Displayed);
        assert_eq!(s.coefficient(&[1]), RationalFunction::from(MultiPoly::one() - v("Xinv1")));
        let o = localized_potential(&LinearActionSpec::new(1, vec![vec![1]], 1).unwrap(), Branch::Opposite);
        assert!(o.coefficient(&[1]).to_string().contains("zetainv"));
    }

    #[test]
    fn ages_and_crepancy() {
        assert_eq!(age(1, &[0, 0, 0]).unwrap(), int(0));
        assert_eq!(age(2, &[1, 1]).unwrap(), int(1));
        assert_eq!(age(3, &[1, 2]).unwrap(), int(1));
        assert!(matches!(age(3, &[3]), Err(PotentialError::AgeExponent { .. })));
        assert_eq!(crepancy_check(&[0, 1, 1, -1, -1]), Crepancy::Crepant);
        assert_eq!(crepancy_check(&[1, 1]), Crepancy::NonCrepant(2));
        assert_eq!(crepancy_check(&[]), Crepancy::Crepant);
    }

    #[test]
    fn composition_counts() {
        assert_eq!(compositions(2, 2), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(compositions(3, 3).len(), 10);
        assert_eq!(effective_classes(2, 2).len(), 6);
    }
}
