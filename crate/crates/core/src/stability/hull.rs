//! Exact convex geometry of finite point sets in `Q^r`.
//!
//! Membership of a target in the convex hull, relative-interior membership
//! and affine dimension are read off a half-space description of the hull
//! inside its own affine span. Facets are found by direct enumeration of
//! affinely independent subsets, which is adequate for the handful of
//! weights a torus action on `P(V)` carries.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::algebra::linalg::{self, Matrix};
use crate::algebra::rational::{primitive_integer_vector, Rational};

/// Where a target point sits relative to the hull of a point set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HullPosition {
    /// Outside the hull, with the lexicographically smallest primitive
    /// integral direction `lambda` satisfying `<p - target, lambda> < 0` for
    /// every point `p`.
    Outside { separator: Vec<BigInt> },
    /// On the relative boundary.
    Boundary,
    /// In the relative interior (for a single point: equal to it).
    RelativeInterior,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HullReport {
    pub position: HullPosition,
    /// Dimension of the affine span of the points; `None` for no points.
    pub affine_dimension: Option<usize>,
}

/// A facet `<normal, x> <= offset` of a full-dimensional polytope given in
/// coordinates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Facet {
    pub normal: Vec<BigInt>,
    pub offset: Rational,
}

/// Facets of the hull of `points`, which must affinely span `Q^m`, `m >= 1`.
pub fn facets(points: &[Vec<Rational>]) -> Vec<Facet> {
    let m = points[0].len();
    let distinct: Vec<&Vec<Rational>> = {
        let mut seen = BTreeSet::new();
        points.iter().filter(|p| seen.insert((*p).clone())).collect()
    };
    let mut out = BTreeSet::new();
    for subset in subsets_of_size(distinct.len(), m) {
        let base = distinct[subset[0]];
        let diffs: Vec<Vec<Rational>> = subset[1..]
            .iter()
            .map(|&i| linalg::sub(distinct[i], base))
            .collect();
        let ns = linalg::nullspace(&diffs, m);
        if ns.len() != 1 {
            continue;
        }
        let normal_q = &ns[0];
        let b = linalg::dot(normal_q, base);
        let vals: Vec<Rational> = distinct.iter().map(|p| linalg::dot(normal_q, p)).collect();
        let sign = if vals.iter().all(|v| *v <= b) {
            1
        } else if vals.iter().all(|v| *v >= b) {
            -1
        } else {
            continue;
        };
        let oriented: Vec<Rational> = normal_q
            .iter()
            .map(|x| if sign > 0 { x.clone() } else { -x })
            .collect();
        let normal = primitive_integer_vector(&oriented);
        let as_q: Vec<Rational> = normal.iter().map(|x| Rational::from_integer(x.clone())).collect();
        let offset = linalg::dot(&as_q, base);
        out.insert(Facet { normal, offset });
    }
    out.into_iter().collect()
}

/// All `k`-element index subsets of `0..n`, in lexicographic order.
pub fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn to_rationals(v: &[BigInt]) -> Vec<Rational> {
    v.iter().map(|x| Rational::from_integer(x.clone())).collect()
}

/// Locates `target` relative to the convex hull of `points` (all in `Q^r`).
pub fn locate(points: &[Vec<Rational>], target: &[Rational]) -> HullReport {
    let r = target.len();
    if points.is_empty() {
        // Nothing to contain the target; every direction separates vacuously.
        let mut e1 = vec![BigInt::zero(); r];
        if r > 0 {
            e1[0] = BigInt::from(1);
        }
        return HullReport {
            position: HullPosition::Outside { separator: e1 },
            affine_dimension: None,
        };
    }
    let shifted: Vec<Vec<Rational>> = points.iter().map(|p| linalg::sub(p, target)).collect();
    let base = &shifted[0];
    let diffs: Vec<Vec<Rational>> = shifted[1..].iter().map(|p| linalg::sub(p, base)).collect();
    let basis = linalg::row_space_basis(&diffs);
    let dim = basis.len();

    // Component of `base` orthogonal to the direction space.
    let gram: Matrix = basis
        .iter()
        .map(|a| basis.iter().map(|b| linalg::dot(a, b)).collect())
        .collect();
    let along = if dim == 0 {
        vec![Rational::zero(); r]
    } else {
        let rhs: Vec<Rational> = basis.iter().map(|b| linalg::dot(b, base)).collect();
        let c = linalg::solve(&gram, &rhs).expect("basis Gram matrix is invertible");
        let mut acc = vec![Rational::zero(); r];
        for (ci, b) in c.iter().zip(&basis) {
            for (a, x) in acc.iter_mut().zip(b) {
                *a += ci * x;
            }
        }
        acc
    };
    let normal_part = linalg::sub(base, &along);
    if !linalg::is_zero_vec(&normal_part) {
        // Target is off the affine span: push against the offset.
        let neg: Vec<Rational> = normal_part.iter().map(|x| -x).collect();
        return HullReport {
            position: HullPosition::Outside {
                separator: primitive_integer_vector(&neg),
            },
            affine_dimension: Some(dim),
        };
    }
    if dim == 0 {
        return HullReport {
            position: HullPosition::RelativeInterior,
            affine_dimension: Some(0),
        };
    }

    // Coordinates of each shifted point in the basis; the target is the origin.
    let coords: Vec<Vec<Rational>> = shifted
        .iter()
        .map(|p| {
            let rhs: Vec<Rational> = basis.iter().map(|b| linalg::dot(b, p)).collect();
            linalg::solve(&gram, &rhs).expect("point lies in the span")
        })
        .collect();
    // Facets in coordinates; lift normals back through the dual basis so the
    // ambient pairing reproduces the coordinate pairing.
    let gram_inv = linalg::inverse(&gram).expect("invertible");
    let mut violated: Vec<Vec<BigInt>> = Vec::new();
    let mut on_boundary = false;
    for f in facets(&coords) {
        let sign = f.offset.signum();
        if sign.is_negative() {
            let a = to_rationals(&f.normal);
            let t = linalg::mat_vec(&gram_inv, &a);
            let mut lam = vec![Rational::zero(); r];
            for (ti, b) in t.iter().zip(&basis) {
                for (l, x) in lam.iter_mut().zip(b) {
                    *l += ti * x;
                }
            }
            violated.push(primitive_integer_vector(&lam));
        } else if sign.is_zero() {
            on_boundary = true;
        }
    }
    let position = if let Some(min) = violated.into_iter().min() {
        HullPosition::Outside { separator: min }
    } else if on_boundary {
        HullPosition::Boundary
    } else {
        HullPosition::RelativeInterior
    };
    HullReport {
        position,
        affine_dimension: Some(dim),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, rat};

    fn pts(v: &[&[i64]]) -> Vec<Vec<Rational>> {
        v.iter().map(|p| p.iter().map(|&x| int(x)).collect()).collect()
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn interval_positions() {
        let p = pts(&[&[-1], &[1]]);
        assert_eq!(locate(&p, &[int(0)]).position, HullPosition::RelativeInterior);
        assert_eq!(locate(&p, &[int(1)]).position, HullPosition::Boundary);
        assert_eq!(
            locate(&p, &[int(2)]).position,
            HullPosition::Outside { separator: big(&[1]) }
        );
        assert_eq!(
            locate(&p, &[rat(-3, 2)]).position,
            HullPosition::Outside { separator: big(&[-1]) }
        );
    }

    #[test]
    fn square_facets() {
        let f = facets(&pts(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1], &[0, 0]]));
        assert_eq!(f.len(), 4);
        let t = locate(&pts(&[&[0, 0], &[2, 0], &[0, 2]]), &[rat(1, 2), rat(1, 2)]);
        assert_eq!(t.position, HullPosition::RelativeInterior);
        assert_eq!(t.affine_dimension, Some(2));
    }

    #[test]
    fn off_span_target() {
        // segment on the x-axis, target above it
        let rep = locate(&pts(&[&[-1, 0], &[1, 0]]), &[int(0), int(1)]);
        assert_eq!(rep.affine_dimension, Some(1));
        assert_eq!(rep.position, HullPosition::Outside { separator: big(&[0, 1]) });
        // in the span and inside the segment
        let rep = locate(&pts(&[&[-1, 0], &[1, 0]]), &[int(0), int(0)]);
        assert_eq!(rep.position, HullPosition::RelativeInterior);
    }

    #[test]
    fn segment_in_plane_outside_along_line() {
        let rep = locate(&pts(&[&[1, 1], &[2, 2]]), &[int(0), int(0)]);
        assert_eq!(rep.position, HullPosition::Outside { separator: big(&[-1, -1]) });
    }
}
