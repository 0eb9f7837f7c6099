//! Ramanathan and Mundet weights, and Mundet stability of toric gauged maps.
//!
//! A toric gauged map over a genus-zero curve is modeled by the degree
//! `d(P)` of its bundle, the set of weight spaces where its section is
//! non-zero and the degree of the twisting line bundle. Stability reduces to
//! the torus criterion after shifting every weight by the metric image of
//! `d(P)`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::linalg;
use crate::algebra::rational::{format_rational, to_texts, Rational, RationalText};
use crate::stability::{
    classify_points, format_vector, StabilityError, StabilityStatus, WeightSystem, WeightSystemJson,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MundetError {
    #[error(transparent)]
    Stability(#[from] StabilityError),
    #[error("block ranks sum to {found}, expected total rank {expected}")]
    RankSum { expected: u32, found: u32 },
    #[error("block degrees sum to {found}, expected total degree {expected}")]
    DegreeSum { expected: i64, found: i64 },
    #[error("block ranks must be positive")]
    ZeroBlockRank,
    #[error("lambda has {found} entries, expected one per block ({expected})")]
    LambdaLength { expected: usize, found: usize },
    #[error("lambda is not dominant: entries must be non-increasing")]
    NotDominant,
    #[error("lambda is constant, hence central")]
    CentralLambda,
    #[error("bundle degree has length {found}, expected {expected}")]
    BundleDegreeLength { expected: usize, found: usize },
    #[error("d(P) + d(u) = {0} < 0: the section space is empty")]
    EmptyModuli(i64),
    #[error("number of weights must be positive")]
    ZeroWeights,
}

/// Ranks and degrees of the graded pieces of a filtration, sub first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiltrationData {
    pub total_rank: u32,
    pub total_degree: i64,
    pub blocks: Vec<(u32, i64)>,
}

impl FiltrationData {
    pub fn new(blocks: Vec<(u32, i64)>) -> Result<Self, MundetError> {
        let total_rank = blocks.iter().map(|b| b.0).sum();
        let total_degree = blocks.iter().map(|b| b.1).sum();
        let f = FiltrationData {
            total_rank,
            total_degree,
            blocks,
        };
        f.validate()?;
        Ok(f)
    }

    pub fn validate(&self) -> Result<(), MundetError> {
        if self.blocks.iter().any(|b| b.0 == 0) {
            return Err(MundetError::ZeroBlockRank);
        }
        let r: u32 = self.blocks.iter().map(|b| b.0).sum();
        if r != self.total_rank {
            return Err(MundetError::RankSum {
                expected: self.total_rank,
                found: r,
            });
        }
        let d: i64 = self.blocks.iter().map(|b| b.1).sum();
        if d != self.total_degree {
            return Err(MundetError::DegreeSum {
                expected: self.total_degree,
                found: d,
            });
        }
        Ok(())
    }
}

/// `sum_i lambda_i deg_i` for a dominant, non-central `lambda`.
pub fn ramanathan_weight(f: &FiltrationData, lambda: &[Rational]) -> Result<Rational, MundetError> {
    f.validate()?;
    if lambda.len() != f.blocks.len() {
        return Err(MundetError::LambdaLength {
            expected: f.blocks.len(),
            found: lambda.len(),
        });
    }
    if lambda.windows(2).any(|w| w[0] < w[1]) {
        return Err(MundetError::NotDominant);
    }
    if lambda.windows(2).all(|w| w[0] == w[1]) {
        return Err(MundetError::CentralLambda);
    }
    Ok(lambda
        .iter()
        .zip(&f.blocks)
        .map(|(l, b)| l * Rational::from_integer(b.1.into()))
        .sum())
}

/// Total Mundet weight from its bundle and target parts.
pub fn total_mundet_weight(mu_bg: &Rational, mu_x: &Rational) -> Rational {
    mu_bg + mu_x
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaugedMapData {
    pub ws: WeightSystem,
    pub bundle_degree: Vec<i64>,
    /// 1-based weight indices where the section is non-zero; empty for a
    /// generalized map.
    pub support: BTreeSet<usize>,
    pub section_degree: i64,
}

impl GaugedMapData {
    pub fn new(
        ws: WeightSystem,
        bundle_degree: Vec<i64>,
        support: impl IntoIterator<Item = usize>,
        section_degree: i64,
    ) -> Result<Self, MundetError> {
        if bundle_degree.len() != ws.rank() {
            return Err(MundetError::BundleDegreeLength {
                expected: ws.rank(),
                found: bundle_degree.len(),
            });
        }
        let support: BTreeSet<usize> = support.into_iter().collect();
        let k = ws.num_weights();
        if let Some(&bad) = support.iter().find(|&&i| i == 0 || i > k) {
            return Err(StabilityError::SupportIndex { index: bad, k }.into());
        }
        Ok(GaugedMapData {
            ws,
            bundle_degree,
            support,
            section_degree,
        })
    }

    pub fn bundle_degree_q(&self) -> Vec<Rational> {
        self.bundle_degree.iter().map(|&x| Rational::from_integer(x.into())).collect()
    }

    /// `mu_i - d(P)^dual` for every weight in the support.
    pub fn shifted_weights(&self) -> Vec<Vec<Rational>> {
        let d = self.ws.dual(&self.bundle_degree_q());
        self.support
            .iter()
            .map(|&i| linalg::sub(&self.ws.weight(i), &d))
            .collect()
    }

    /// Same map with `c` added to `d(P)` and `theta` replaced.
    pub fn shifted(&self, c: &[i64], theta: Vec<Rational>) -> Result<Self, MundetError> {
        let ws = self.ws.with_theta(theta)?;
        let d = self.bundle_degree.iter().zip(c).map(|(a, b)| a + b).collect();
        GaugedMapData::new(ws, d, self.support.iter().copied(), self.section_degree)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GaugedMapJson {
    pub weight_system: WeightSystemJson,
    pub bundle_degree: Vec<i64>,
    pub support: Vec<usize>,
    #[serde(default)]
    pub section_degree: i64,
}

impl TryFrom<GaugedMapJson> for GaugedMapData {
    type Error = MundetError;

    fn try_from(j: GaugedMapJson) -> Result<Self, MundetError> {
        let ws = WeightSystem::try_from(j.weight_system)?;
        GaugedMapData::new(ws, j.bundle_degree, j.support, j.section_degree)
    }
}

/// A Mundet weight, infinite for a map whose section vanishes identically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MundetWeight {
    Finite(Rational),
    Infinite,
}

impl MundetWeight {
    pub fn is_destabilizing(&self) -> bool {
        match self {
            MundetWeight::Finite(w) => *w > Rational::from_integer(0.into()),
            MundetWeight::Infinite => true,
        }
    }
}

impl fmt::Display for MundetWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MundetWeight::Finite(w) => f.write_str(&format_rational(w)),
            MundetWeight::Infinite => f.write_str("+inf"),
        }
    }
}

/// `min_{i in support} (d(P), lambda) - <mu_i, lambda> + <theta, lambda>`.
pub fn mundet_weight_toric(g: &GaugedMapData, lambda: &[Rational]) -> Result<MundetWeight, MundetError> {
    let r = g.ws.rank();
    if lambda.len() != r {
        return Err(StabilityError::CoweightLength {
            expected: r,
            found: lambda.len(),
        }
        .into());
    }
    if linalg::is_zero_vec(lambda) {
        return Err(StabilityError::ZeroCoweight.into());
    }
    let base = linalg::bilinear(g.ws.metric(), &g.bundle_degree_q(), lambda) + linalg::dot(g.ws.theta(), lambda);
    Ok(g.support
        .iter()
        .map(|&i| &base - linalg::dot(&g.ws.weight(i), lambda))
        .min()
        .map_or(MundetWeight::Infinite, MundetWeight::Finite))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MundetStatus {
    Unstable,
    Semistable,
    Polystable,
    Stable,
}

impl MundetStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            MundetStatus::Unstable => "unstable",
            MundetStatus::Semistable => "semistable",
            MundetStatus::Polystable => "polystable",
            MundetStatus::Stable => "stable",
        }
    }
}

impl From<StabilityStatus> for MundetStatus {
    fn from(s: StabilityStatus) -> Self {
        match s {
            StabilityStatus::Unstable => MundetStatus::Unstable,
            StabilityStatus::SemistableNotPolystable => MundetStatus::Semistable,
            StabilityStatus::PolystableNotStable => MundetStatus::Polystable,
            StabilityStatus::Stable => MundetStatus::Stable,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MundetVerdict {
    pub status: MundetStatus,
    pub witness: Option<Vec<Rational>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MundetVerdictJson {
    pub status: MundetStatus,
    pub witness: Option<Vec<RationalText>>,
}

impl From<&MundetVerdict> for MundetVerdictJson {
    fn from(v: &MundetVerdict) -> Self {
        MundetVerdictJson {
            status: v.status,
            witness: v.witness.as_ref().map(|w| to_texts(w)),
        }
    }
}

impl fmt::Display for MundetVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.status.as_str())?;
        if let Some(w) = &self.witness {
            write!(f, " witness={}", format_vector(w))?;
        }
        Ok(())
    }
}

/// Semistable iff `theta` lies in `hull{mu_i - d(P)^dual : i in support}`.
pub fn mundet_classify(g: &GaugedMapData) -> MundetVerdict {
    let v = classify_points(&g.shifted_weights(), g.ws.theta());
    MundetVerdict {
        status: v.status.into(),
        witness: v.witness,
    }
}

/// Projective dimension `k(dP + du + 1) - 1` of the quot compactification
/// for `C^*` acting with weight one on `C^k` over a genus-zero curve.
pub fn quot_moduli_dimension(k: u32, dp: i64, du: i64) -> Result<i64, MundetError> {
    if k == 0 {
        return Err(MundetError::ZeroWeights);
    }
    let e = dp + du;
    if e < 0 {
        return Err(MundetError::EmptyModuli(e));
    }
    Ok(i64::from(k) * (e + 1) - 1)
}

/// Extrapolation to a general torus over a genus-zero curve: the weight
/// space `V_i` contributes sections of degree `<mu_i, d(P)> + d(u)`, each
/// with `h^0 = e + 1` when `e >= 0` and nothing otherwise. Returns the
/// projective dimension, or `EmptyModuli` when no sections exist.
pub fn section_space_dimension(ws: &WeightSystem, bundle_degree: &[i64], du: i64) -> Result<i64, MundetError> {
    if bundle_degree.len() != ws.rank() {
        return Err(MundetError::BundleDegreeLength {
            expected: ws.rank(),
            found: bundle_degree.len(),
        });
    }
    let mut total = 0i64;
    let mut max_e = i64::MIN;
    for w in ws.weights() {
        let e: i64 = w.iter().zip(bundle_degree).map(|(a, b)| a * b).sum::<i64>() + du;
        max_e = max_e.max(e);
        total += (e + 1).max(0);
    }
    if total == 0 {
        return Err(MundetError::EmptyModuli(max_e));
    }
    Ok(total - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, rat};

    fn map(weights: &[i64], theta: Rational, d: i64, support: &[usize]) -> GaugedMapData {
        let ws = WeightSystem::rank_one(weights, theta).unwrap();
        GaugedMapData::new(ws, vec![d], support.iter().copied(), 0).unwrap()
    }

    #[test]
    fn ramanathan_examples() {
        let l = [int(1), int(-1)];
        let f = FiltrationData::new(vec![(1, 1), (1, -1)]).unwrap();
        assert_eq!(ramanathan_weight(&f, &l).unwrap(), int(2));
        let f = FiltrationData::new(vec![(1, 0), (1, 0)]).unwrap();
        assert_eq!(ramanathan_weight(&f, &l).unwrap(), int(0));
        let f = FiltrationData::new(vec![(1, -1), (1, 1)]).unwrap();
        assert_eq!(ramanathan_weight(&f, &l).unwrap(), int(-2));
        assert_eq!(ramanathan_weight(&f, &[int(-1), int(1)]), Err(MundetError::NotDominant));
        assert_eq!(ramanathan_weight(&f, &[int(1), int(1)]), Err(MundetError::CentralLambda));
    }

    #[test]
    fn weight_examples() {
        let g = map(&[0, 2], int(0), 1, &[1, 2]);
        assert_eq!(mundet_weight_toric(&g, &[int(1)]).unwrap(), MundetWeight::Finite(int(-1)));
        let g = map(&[1], int(0), 0, &[1]);
        assert_eq!(mundet_weight_toric(&g, &[int(-1)]).unwrap(), MundetWeight::Finite(int(1)));
        let g = map(&[3], int(3), 0, &[1]);
        assert_eq!(mundet_weight_toric(&g, &[int(5)]).unwrap(), MundetWeight::Finite(int(0)));
        let g = map(&[3], int(0), 0, &[]);
        assert_eq!(mundet_weight_toric(&g, &[int(1)]).unwrap(), MundetWeight::Infinite);
    }

    #[test]
    fn classify_examples() {
        assert_eq!(mundet_classify(&map(&[0, 1], rat(1, 2), 0, &[1, 2])).status, MundetStatus::Stable);
        let v = mundet_classify(&map(&[0, 1], rat(1, 2), 0, &[2]));
        assert_eq!(v.status, MundetStatus::Unstable);
        assert!(v.witness.is_some());
        assert_eq!(mundet_classify(&map(&[0, 1], rat(1, 2), 1, &[1, 2])).status, MundetStatus::Unstable);
        assert_eq!(mundet_classify(&map(&[0, 1], rat(1, 2), 0, &[])).status, MundetStatus::Unstable);
    }

    #[test]
    fn shifting_theta_by_plus_c_is_not_an_invariance() {
        // hull{mu_i - d} moves by -c, so theta must move by -c to follow it.
        let g = map(&[0, 1], rat(1, 2), 0, &[1, 2]);
        let plus = g.shifted(&[1], vec![rat(3, 2)]).unwrap();
        let minus = g.shifted(&[1], vec![rat(-1, 2)]).unwrap();
        assert_eq!(mundet_classify(&plus).status, MundetStatus::Unstable);
        assert_eq!(mundet_classify(&minus).status, MundetStatus::Stable);
    }

    #[test]
    fn quot_dimensions() {
        assert_eq!(quot_moduli_dimension(2, 1, 0).unwrap(), 3);
        assert_eq!(quot_moduli_dimension(1, 0, 0).unwrap(), 0);
        assert_eq!(quot_moduli_dimension(3, 2, 1).unwrap(), 11);
        assert_eq!(quot_moduli_dimension(3, -2, 1), Err(MundetError::EmptyModuli(-1)));
        let ws = WeightSystem::rank_one(&[1, 1, 1], int(0)).unwrap();
        assert_eq!(section_space_dimension(&ws, &[2], 1).unwrap(), 11);
        let ws = WeightSystem::rank_one(&[1, -1], int(0)).unwrap();
        assert_eq!(section_space_dimension(&ws, &[2], 0).unwrap(), 2);
    }
}
