//! Hilbert-Mumford stability for a linearized torus acting on `P(V)`.
//!
//! A point is represented by its support: the set of weight spaces in which
//! it has a non-zero coordinate. Stability depends on nothing else.
//!
//! The torus has no Weyl chamber to restrict to, so coweights range over all
//! of `Q^r`.

pub mod hull;

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::linalg::{self, Matrix};
use crate::algebra::rational::{format_rational, from_texts, to_texts, Rational, RationalText};

use hull::{locate, subsets_of_size, HullPosition};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StabilityError {
    #[error("torus rank must be positive")]
    ZeroRank,
    #[error("at least one weight is required")]
    NoWeights,
    #[error("weight {index} has length {found}, expected {expected}")]
    WeightLength { index: usize, expected: usize, found: usize },
    #[error("theta has length {found}, expected {expected}")]
    ThetaLength { expected: usize, found: usize },
    #[error("metric must be a {0}x{0} matrix")]
    MetricShape(usize),
    #[error("metric is not symmetric")]
    MetricNotSymmetric,
    #[error("metric is not positive definite")]
    MetricNotPositiveDefinite,
    #[error("support set is empty")]
    EmptySupport,
    #[error("support index {index} out of range 1..={k}")]
    SupportIndex { index: usize, k: usize },
    #[error("coweight has length {found}, expected {expected}")]
    CoweightLength { expected: usize, found: usize },
    #[error("coweight must be non-zero")]
    ZeroCoweight,
}

/// Torus weights on `V`, the linearization shift and a metric on coweights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightSystem {
    rank: usize,
    weights: Vec<Vec<i64>>,
    theta: Vec<Rational>,
    metric: Matrix,
}

impl WeightSystem {
    pub fn new(
        rank: usize,
        weights: Vec<Vec<i64>>,
        theta: Vec<Rational>,
        metric: Option<Matrix>,
    ) -> Result<Self, StabilityError> {
        if rank == 0 {
            return Err(StabilityError::ZeroRank);
        }
        if weights.is_empty() {
            return Err(StabilityError::NoWeights);
        }
        for (i, w) in weights.iter().enumerate() {
            if w.len() != rank {
                return Err(StabilityError::WeightLength {
                    index: i + 1,
                    expected: rank,
                    found: w.len(),
                });
            }
        }
        if theta.len() != rank {
            return Err(StabilityError::ThetaLength {
                expected: rank,
                found: theta.len(),
            });
        }
        let metric = metric.unwrap_or_else(|| linalg::identity(rank));
        if metric.len() != rank || metric.iter().any(|row| row.len() != rank) {
            return Err(StabilityError::MetricShape(rank));
        }
        if !linalg::is_symmetric(&metric) {
            return Err(StabilityError::MetricNotSymmetric);
        }
        if !linalg::is_positive_definite(&metric) {
            return Err(StabilityError::MetricNotPositiveDefinite);
        }
        Ok(WeightSystem {
            rank,
            weights,
            theta,
            metric,
        })
    }

    /// Rank one, identity metric.
    pub fn rank_one(weights: &[i64], theta: Rational) -> Result<Self, StabilityError> {
        Self::new(1, weights.iter().map(|&w| vec![w]).collect(), vec![theta], None)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn num_weights(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[Vec<i64>] {
        &self.weights
    }

    pub fn weight(&self, index: usize) -> Vec<Rational> {
        self.weights[index - 1].iter().map(|&x| Rational::from_integer(x.into())).collect()
    }

    pub fn theta(&self) -> &[Rational] {
        &self.theta
    }

    pub fn metric(&self) -> &Matrix {
        &self.metric
    }

    pub fn with_theta(&self, theta: Vec<Rational>) -> Result<Self, StabilityError> {
        Self::new(self.rank, self.weights.clone(), theta, Some(self.metric.clone()))
    }

    /// Metric image `G c` of a coweight, as a weight.
    pub fn dual(&self, coweight: &[Rational]) -> Vec<Rational> {
        linalg::mat_vec(&self.metric, coweight)
    }

    pub fn support(&self, indices: impl IntoIterator<Item = usize>) -> Result<SupportSet, StabilityError> {
        SupportSet::new(indices, self.num_weights())
    }

    /// Every non-empty support, in order of the bitmask `1..2^k`.
    pub fn all_supports(&self) -> Vec<SupportSet> {
        let k = self.num_weights();
        (1u64..(1u64 << k))
            .map(|mask| SupportSet {
                indices: (0..k).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect(),
            })
            .collect()
    }

    fn check_coweight(&self, lambda: &[Rational]) -> Result<(), StabilityError> {
        if lambda.len() != self.rank {
            return Err(StabilityError::CoweightLength {
                expected: self.rank,
                found: lambda.len(),
            });
        }
        if linalg::is_zero_vec(lambda) {
            return Err(StabilityError::ZeroCoweight);
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WeightSystemJson {
    pub rank: usize,
    pub weights: Vec<Vec<i64>>,
    pub theta: Vec<RationalText>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metric: Option<Vec<Vec<RationalText>>>,
}

impl TryFrom<WeightSystemJson> for WeightSystem {
    type Error = StabilityError;

    fn try_from(j: WeightSystemJson) -> Result<Self, StabilityError> {
        let metric = j.metric.map(|m| m.iter().map(|row| from_texts(row)).collect());
        WeightSystem::new(j.rank, j.weights, from_texts(&j.theta), metric)
    }
}

impl From<&WeightSystem> for WeightSystemJson {
    fn from(ws: &WeightSystem) -> Self {
        WeightSystemJson {
            rank: ws.rank,
            weights: ws.weights.clone(),
            theta: to_texts(&ws.theta),
            metric: Some(ws.metric.iter().map(|row| to_texts(row)).collect()),
        }
    }
}

impl Serialize for WeightSystem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        WeightSystemJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for WeightSystem {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = WeightSystemJson::deserialize(d)?;
        WeightSystem::try_from(j).map_err(serde::de::Error::custom)
    }
}

/// Indices (1-based) of the weight spaces where a point has non-zero
/// coordinates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SupportSet {
    indices: BTreeSet<usize>,
}

impl SupportSet {
    pub fn new(indices: impl IntoIterator<Item = usize>, k: usize) -> Result<Self, StabilityError> {
        let indices: BTreeSet<usize> = indices.into_iter().collect();
        if indices.is_empty() {
            return Err(StabilityError::EmptySupport);
        }
        if let Some(&bad) = indices.iter().find(|&&i| i == 0 || i > k) {
            return Err(StabilityError::SupportIndex { index: bad, k });
        }
        Ok(SupportSet { indices })
    }

    pub fn indices(&self) -> &BTreeSet<usize> {
        &self.indices
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.indices.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn is_subset_of(&self, other: &BTreeSet<usize>) -> bool {
        self.indices.is_subset(other)
    }
}

impl fmt::Display for SupportSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.indices.iter().map(usize::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StabilityStatus {
    Unstable,
    SemistableNotPolystable,
    PolystableNotStable,
    Stable,
}

impl StabilityStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            StabilityStatus::Unstable => "unstable",
            StabilityStatus::SemistableNotPolystable => "semistable_not_polystable",
            StabilityStatus::PolystableNotStable => "polystable_not_stable",
            StabilityStatus::Stable => "stable",
        }
    }

    pub fn is_semistable(self) -> bool {
        self != StabilityStatus::Unstable
    }

    pub fn is_polystable(self) -> bool {
        matches!(self, StabilityStatus::PolystableNotStable | StabilityStatus::Stable)
    }
}

impl fmt::Display for StabilityStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilityVerdict {
    pub status: StabilityStatus,
    /// Integral destabilizing coweight, present exactly when unstable.
    pub witness: Option<Vec<Rational>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictJson {
    pub status: StabilityStatus,
    pub witness: Option<Vec<RationalText>>,
}

impl From<&StabilityVerdict> for VerdictJson {
    fn from(v: &StabilityVerdict) -> Self {
        VerdictJson {
            status: v.status,
            witness: v.witness.as_ref().map(|w| to_texts(w)),
        }
    }
}

pub fn format_vector(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(format_rational).collect();
    format!("({})", parts.join(", "))
}

impl fmt::Display for StabilityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.status)?;
        if let Some(w) = &self.witness {
            write!(f, " witness={}", format_vector(w))?;
        }
        Ok(())
    }
}

/// `min_{i in s} -<mu_i, lambda> + <theta, lambda>`.
pub fn hm_weight(ws: &WeightSystem, s: &SupportSet, lambda: &[Rational]) -> Result<Rational, StabilityError> {
    ws.check_coweight(lambda)?;
    let shift = linalg::dot(&ws.theta, lambda);
    Ok(s.iter()
        .map(|i| -linalg::dot(&ws.weight(i), lambda) + &shift)
        .min()
        .expect("support is non-empty"))
}

/// Classifies `target` against the hull of `points` in `Q^rank`.
///
/// This is the whole criterion once weights have been shifted; Mundet
/// stability calls it with bundle-twisted weights.
pub fn classify_points(points: &[Vec<Rational>], target: &[Rational]) -> StabilityVerdict {
    let rank = target.len();
    let report = locate(points, target);
    match report.position {
        HullPosition::Outside { separator } => StabilityVerdict {
            status: StabilityStatus::Unstable,
            witness: Some(separator.into_iter().map(Rational::from_integer).collect()),
        },
        HullPosition::Boundary => StabilityVerdict {
            status: StabilityStatus::SemistableNotPolystable,
            witness: None,
        },
        HullPosition::RelativeInterior => StabilityVerdict {
            status: if report.affine_dimension == Some(rank) {
                StabilityStatus::Stable
            } else {
                StabilityStatus::PolystableNotStable
            },
            witness: None,
        },
    }
}

pub fn classify(ws: &WeightSystem, s: &SupportSet) -> StabilityVerdict {
    let points: Vec<Vec<Rational>> = s.iter().map(|i| ws.weight(i)).collect();
    classify_points(&points, &ws.theta)
}

/// A Kempf-Ness stratum, indexed by its most destabilizing coweight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KNStratum {
    /// `lambda = -G^{-1} beta`.
    pub lambda: Vec<Rational>,
    /// Closest point to the origin of the shifted hull `hull{mu_i - theta}`.
    pub beta: Vec<Rational>,
    /// `(lambda, lambda)`, also the Hilbert-Mumford weight along `lambda` of
    /// every point in the stratum.
    pub norm_squared: Rational,
    /// Weights attaining the minimum along `lambda`: the fixed component.
    pub fixed_support: BTreeSet<usize>,
    /// Weights allowed in the support of a point flowing to the fixed
    /// component.
    pub upper: BTreeSet<usize>,
}

impl KNStratum {
    /// A support lies in the stratum iff it only uses upper weights and its
    /// fixed part already reaches `beta`.
    pub fn contains(&self, ws: &WeightSystem, s: &SupportSet) -> bool {
        if !s.is_subset_of(&self.upper) {
            return false;
        }
        let face: Vec<Vec<Rational>> = s
            .iter()
            .filter(|i| self.fixed_support.contains(i))
            .map(|i| linalg::sub(&ws.weight(i), &ws.theta))
            .collect();
        !face.is_empty() && !matches!(locate(&face, &self.beta).position, HullPosition::Outside { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumJson {
    pub lambda: Vec<RationalText>,
    pub beta: Vec<RationalText>,
    pub norm_squared: RationalText,
    pub fixed_support: Vec<usize>,
    pub upper: Vec<usize>,
}

impl From<&KNStratum> for StratumJson {
    fn from(s: &KNStratum) -> Self {
        StratumJson {
            lambda: to_texts(&s.lambda),
            beta: to_texts(&s.beta),
            norm_squared: RationalText(s.norm_squared.clone()),
            fixed_support: s.fixed_support.iter().copied().collect(),
            upper: s.upper.iter().copied().collect(),
        }
    }
}

impl fmt::Display for KNStratum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let set = |s: &BTreeSet<usize>| {
            let v: Vec<String> = s.iter().map(usize::to_string).collect();
            format!("{{{}}}", v.join(","))
        };
        write!(
            f,
            "lambda={} |lambda|^2={} fixed={} upper={}",
            format_vector(&self.lambda),
            format_rational(&self.norm_squared),
            set(&self.fixed_support),
            set(&self.upper)
        )
    }
}

/// Closest point to the origin of `hull(points)` under the bilinear form `m`.
pub fn closest_point(points: &[Vec<Rational>], m: &Matrix) -> Vec<Rational> {
    let distinct: Vec<&Vec<Rational>> = {
        let mut seen = BTreeSet::new();
        points.iter().filter(|p| seen.insert((*p).clone())).collect()
    };
    let r = points[0].len();
    for size in 1..=distinct.len().min(r + 1) {
        for t in subsets_of_size(distinct.len(), size) {
            let base = distinct[t[0]];
            let dirs: Vec<Vec<Rational>> = t[1..].iter().map(|&i| linalg::sub(distinct[i], base)).collect();
            if linalg::rank(&dirs) != dirs.len() {
                continue;
            }
            let gram: Matrix = dirs
                .iter()
                .map(|a| dirs.iter().map(|b| linalg::bilinear(m, a, b)).collect())
                .collect();
            let rhs: Vec<Rational> = dirs.iter().map(|a| -linalg::bilinear(m, a, base)).collect();
            let c = if dirs.is_empty() {
                vec![]
            } else {
                linalg::solve(&gram, &rhs).expect("independent directions")
            };
            let lead = Rational::one() - c.iter().sum::<Rational>();
            if lead < Rational::zero() || c.iter().any(|x| *x < Rational::zero()) {
                continue;
            }
            let mut p = base.clone();
            for (ci, d) in c.iter().zip(&dirs) {
                for (x, y) in p.iter_mut().zip(d) {
                    *x += ci * y;
                }
            }
            let pp = linalg::bilinear(m, &p, &p);
            if distinct.iter().all(|q| linalg::bilinear(m, q, &p) >= pp) {
                return p;
            }
        }
    }
    unreachable!("a closest point always exists on some simplex face")
}

/// Kempf-Ness strata of the unstable locus, sorted by `(lambda, lambda)` and
/// then by `lambda`.
///
/// Sign convention: for a point in the stratum of `lambda`, the
/// Hilbert-Mumford weight along `lambda` is `(lambda, lambda) > 0`.
pub fn kn_strata(ws: &WeightSystem) -> Vec<KNStratum> {
    let dual = linalg::inverse(&ws.metric).expect("metric is positive definite");
    let shifted: Vec<Vec<Rational>> = (1..=ws.num_weights())
        .map(|i| linalg::sub(&ws.weight(i), &ws.theta))
        .collect();
    let mut betas = BTreeSet::new();
    for s in ws.all_supports() {
        let pts: Vec<Vec<Rational>> = s.iter().map(|i| shifted[i - 1].clone()).collect();
        let beta = closest_point(&pts, &dual);
        if !linalg::is_zero_vec(&beta) {
            betas.insert(beta);
        }
    }
    let mut strata: Vec<KNStratum> = betas
        .into_iter()
        .map(|beta| {
            let bb = linalg::bilinear(&dual, &beta, &beta);
            let pair = |i: usize| linalg::bilinear(&dual, &shifted[i - 1], &beta);
            let fixed_support = (1..=ws.num_weights()).filter(|&i| pair(i) == bb).collect();
            let upper = (1..=ws.num_weights()).filter(|&i| pair(i) >= bb).collect();
            let lambda: Vec<Rational> = linalg::mat_vec(&dual, &beta).into_iter().map(|x| -x).collect();
            KNStratum {
                lambda,
                beta,
                norm_squared: bb,
                fixed_support,
                upper,
            }
        })
        .collect();
    strata.sort_by(|a, b| a.norm_squared.cmp(&b.norm_squared).then_with(|| a.lambda.cmp(&b.lambda)));
    strata
}

/// Index of the stratum containing `s`, if `s` is unstable.
pub fn stratum_of(ws: &WeightSystem, strata: &[KNStratum], s: &SupportSet) -> Option<usize> {
    strata.iter().position(|st| st.contains(ws, s))
}
