//! Combinatorial types of stable scaled marked curves.
//!
//! A type is a rooted tree whose vertices carry a scaling label. Reading
//! down any root-to-leaf path, labels go infinite, then at most one
//! transition, then zero. In projective mode the root maps isomorphically to
//! the target curve and is either a finite root (scaling finite and non-zero
//! on it) or an infinite root. In affine mode the root carries the base
//! marking `z0` and is an infinite or a transition vertex.
//!
//! A zero vertex hangs only below a transition vertex, a zero vertex or a
//! finite root; a path from an infinite vertex reaches zero vertices only
//! through a transition vertex.

mod term;

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::rational::Rational;

pub use term::parse_term;

pub const DEFAULT_BOUND: u32 = 6;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CurveError {
    #[error("n = {n} exceeds the enumeration bound {bound}")]
    BoundExceeded { n: u32, bound: u32 },
    #[error("affine mode needs at least one marking besides z0")]
    AffineWithoutMarkings,
    #[error("invalid type: {0}")]
    Invalid(Violation),
    #[error("cannot parse term: {0}")]
    Parse(String),
    #[error("expected {expected} edge parameters, found {found}")]
    ParamCount { expected: usize, found: usize },
    #[error("edge parameter {0} is zero")]
    ZeroParameter(usize),
    #[error("z1 = z2 with finite non-zero scaling is not a point of the open stratum")]
    CoincidentMarkings,
    #[error("the forgetful map to the scaling line is defined for projective types only")]
    AffineRho,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Projective,
    Affine,
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "projective" => Ok(Mode::Projective),
            "affine" => Ok(Mode::Affine),
            other => Err(format!("unknown mode `{other}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Label {
    FiniteRoot,
    InfiniteRoot,
    Infinite,
    Transition,
    Zero,
}

impl Label {
    fn carries_markings(self) -> bool {
        matches!(self, Label::FiniteRoot | Label::Transition | Label::Zero)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Vertex {
    pub label: Label,
    #[serde(default)]
    pub markings: BTreeSet<u32>,
    #[serde(default)]
    pub children: Vec<Vertex>,
}

impl Vertex {
    pub fn new(label: Label, markings: impl IntoIterator<Item = u32>, children: Vec<Vertex>) -> Self {
        Vertex {
            label,
            markings: markings.into_iter().collect(),
            children,
        }
    }

    pub fn leaf(label: Label, markings: impl IntoIterator<Item = u32>) -> Self {
        Self::new(label, markings, vec![])
    }

    fn min_marking(&self) -> Option<u32> {
        let below = self.children.iter().filter_map(Vertex::min_marking).min();
        match (self.markings.iter().next().copied(), below) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }

    fn canonicalize(&mut self) {
        for c in &mut self.children {
            c.canonicalize();
        }
        self.children
            .sort_by_cached_key(|c| (c.min_marking().unwrap_or(u32::MAX), term::vertex_term(c)));
    }

    fn collect_markings(&self, out: &mut Vec<u32>) {
        out.extend(self.markings.iter().copied());
        for c in &self.children {
            c.collect_markings(out);
        }
    }
}

/// A vertex in preorder with its parent index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlatVertex<'a> {
    pub vertex: &'a Vertex,
    pub parent: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ScaledType {
    pub mode: Mode,
    pub root: Vertex,
}

impl ScaledType {
    /// Builds a type with children in canonical order.
    pub fn new(mode: Mode, root: Vertex) -> Self {
        let mut t = ScaledType { mode, root };
        t.root.canonicalize();
        t
    }

    /// Vertices in preorder; edge `e` joins vertex `e + 1` to its parent.
    pub fn vertices(&self) -> Vec<FlatVertex<'_>> {
        fn walk<'a>(v: &'a Vertex, parent: Option<usize>, out: &mut Vec<FlatVertex<'a>>) {
            let me = out.len();
            out.push(FlatVertex { vertex: v, parent });
            for c in &v.children {
                walk(c, Some(me), out);
            }
        }
        let mut out = Vec::new();
        walk(&self.root, None, &mut out);
        out
    }

    pub fn num_edges(&self) -> usize {
        self.vertices().len() - 1
    }

    /// Number of markings other than `z0`.
    pub fn marking_count(&self) -> u32 {
        let mut all = Vec::new();
        self.root.collect_markings(&mut all);
        all.iter().filter(|&&m| m != 0).count() as u32
    }

    pub fn term(&self) -> String {
        term::type_term(self)
    }

    pub fn transition_vertices(&self) -> Vec<usize> {
        self.vertices()
            .iter()
            .enumerate()
            .filter(|(_, fv)| fv.vertex.label == Label::Transition)
            .map(|(i, _)| i)
            .collect()
    }
}

impl fmt::Display for ScaledType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.term())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Clause {
    RootLabel,
    Monotonicity,
    FiniteRootBubble,
    MarkingPlacement,
    MarkingSet,
    BaseMarking,
    Stability,
}

impl Clause {
    pub fn as_str(self) -> &'static str {
        match self {
            Clause::RootLabel => "root_label",
            Clause::Monotonicity => "monotonicity",
            Clause::FiniteRootBubble => "finite_root_bubble",
            Clause::MarkingPlacement => "marking_placement",
            Clause::MarkingSet => "marking_set",
            Clause::BaseMarking => "base_marking",
            Clause::Stability => "stability",
        }
    }
}

/// First failed clause, at a vertex given by its preorder index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub clause: Clause,
    pub vertex: usize,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at vertex {}: {}", self.clause.as_str(), self.vertex, self.detail)
    }
}

fn violation(clause: Clause, vertex: usize, detail: impl Into<String>) -> Result<(), Violation> {
    Err(Violation {
        clause,
        vertex,
        detail: detail.into(),
    })
}

fn allowed_child(parent: Label, child: Label) -> Result<(), Clause> {
    match (parent, child) {
        (_, Label::FiniteRoot | Label::InfiniteRoot) => Err(Clause::RootLabel),
        (Label::FiniteRoot, Label::Zero) => Ok(()),
        (Label::FiniteRoot, _) => Err(Clause::FiniteRootBubble),
        (Label::InfiniteRoot | Label::Infinite, Label::Infinite | Label::Transition) => Ok(()),
        (Label::Transition | Label::Zero, Label::Zero) => Ok(()),
        _ => Err(Clause::Monotonicity),
    }
}

fn special_points(fv: &FlatVertex<'_>) -> usize {
    fv.vertex.markings.len() + fv.vertex.children.len() + usize::from(fv.parent.is_some())
}

pub fn validate(t: &ScaledType) -> Result<(), Violation> {
    let verts = t.vertices();
    let root = t.root.label;
    match t.mode {
        Mode::Projective if !matches!(root, Label::FiniteRoot | Label::InfiniteRoot) => {
            return violation(Clause::RootLabel, 0, "projective root must be finite_root or infinite_root")
        }
        Mode::Affine if !matches!(root, Label::Infinite | Label::Transition) => {
            return violation(Clause::RootLabel, 0, "affine root must be infinite or transition")
        }
        _ => {}
    }

    let mut all = Vec::new();
    t.root.collect_markings(&mut all);
    let positive: Vec<u32> = all.iter().copied().filter(|&m| m != 0).collect();
    let distinct: BTreeSet<u32> = positive.iter().copied().collect();
    let n = positive.len() as u32;
    if distinct.len() != positive.len() || distinct != (1..=n).collect() {
        return violation(Clause::MarkingSet, 0, "markings must be exactly z1..zn, each once");
    }
    let zeros = all.iter().filter(|&&m| m == 0).count();
    match t.mode {
        Mode::Affine if zeros != 1 || !t.root.markings.contains(&0) => {
            return violation(Clause::BaseMarking, 0, "z0 must sit on the root exactly once")
        }
        Mode::Projective if zeros != 0 => {
            return violation(Clause::BaseMarking, 0, "z0 exists only in affine mode")
        }
        _ => {}
    }

    for (i, fv) in verts.iter().enumerate() {
        let v = fv.vertex;
        if let Some(p) = fv.parent {
            if let Err(clause) = allowed_child(verts[p].vertex.label, v.label) {
                let detail = format!("{:?} below {:?}", v.label, verts[p].vertex.label);
                return violation(clause, i, detail);
            }
        }
        if !v.label.carries_markings() && v.markings.iter().any(|&m| m != 0) {
            return violation(Clause::MarkingPlacement, i, "markings need finite scaling");
        }
        let special = special_points(fv);
        let needed = match (t.mode, fv.parent, v.label) {
            (Mode::Projective, None, _) => 0,
            (_, _, Label::Transition) => 2,
            _ => 3,
        };
        if special < needed {
            return violation(
                Clause::Stability,
                i,
                format!("{special} special points, need {needed}"),
            );
        }
    }
    Ok(())
}

fn vertex_dimension(mode: Mode, fv: &FlatVertex<'_>) -> i64 {
    let n = special_points(fv) as i64;
    match (mode, fv.parent, fv.vertex.label) {
        (Mode::Projective, None, Label::FiniteRoot) => n + 1,
        (Mode::Projective, None, _) => n,
        (_, _, Label::Transition) => n - 2,
        _ => n - 3,
    }
}

pub fn stratum_dimension(t: &ScaledType) -> Result<u32, CurveError> {
    validate(t).map_err(CurveError::Invalid)?;
    let d: i64 = t.vertices().iter().map(|fv| vertex_dimension(t.mode, fv)).sum();
    Ok(d as u32)
}

fn subsets(items: &[u32]) -> Vec<(Vec<u32>, Vec<u32>)> {
    (0u32..(1 << items.len()))
        .map(|mask| {
            let (a, b): (Vec<_>, Vec<_>) = items.iter().enumerate().partition(|(i, _)| mask >> i & 1 == 1);
            (a.into_iter().map(|x| *x.1).collect(), b.into_iter().map(|x| *x.1).collect())
        })
        .collect()
}

/// All set partitions of `items` into non-empty blocks.
pub fn set_partitions(items: &[u32]) -> Vec<Vec<Vec<u32>>> {
    let Some((&first, rest)) = items.split_first() else {
        return vec![vec![]];
    };
    let mut out = Vec::new();
    for (with, without) in subsets(rest) {
        let mut block = vec![first];
        block.extend(with);
        for mut p in set_partitions(&without) {
            p.insert(0, block.clone());
            out.push(p);
        }
    }
    out
}

fn product(choices: Vec<Vec<Vertex>>) -> Vec<Vec<Vertex>> {
    choices.into_iter().fold(vec![vec![]], |acc, opts| {
        acc.iter()
            .flat_map(|prefix| {
                opts.iter().map(move |o| {
                    let mut p = prefix.clone();
                    p.push(o.clone());
                    p
                })
            })
            .collect()
    })
}

/// Children of a vertex whose label admits markings: every split into
/// markings kept here and zero-labeled child blocks.
fn finite_fillings(label: Label, base: &[u32], items: &[u32], needed: usize, extra: usize) -> Vec<Vertex> {
    let mut out = Vec::new();
    for (here, rest) in subsets(items) {
        for blocks in set_partitions(&rest) {
            if extra + here.len() + blocks.len() < needed {
                continue;
            }
            let choices = blocks.iter().map(|b| subtrees(Label::Zero, b)).collect();
            for children in product(choices) {
                let markings = base.iter().chain(&here).copied();
                out.push(Vertex::new(label, markings, children));
            }
        }
    }
    out
}

fn infinite_fillings(label: Label, base: &[u32], items: &[u32], needed: usize, extra: usize) -> Vec<Vertex> {
    let mut out = Vec::new();
    for blocks in set_partitions(items) {
        if extra + blocks.len() < needed {
            continue;
        }
        let choices = blocks
            .iter()
            .map(|b| {
                let mut v = subtrees(Label::Transition, b);
                v.extend(subtrees(Label::Infinite, b));
                v
            })
            .collect();
        for children in product(choices) {
            out.push(Vertex::new(label, base.iter().copied(), children));
        }
    }
    out
}

/// Stable non-root subtrees with the given label carrying exactly `items`.
fn subtrees(label: Label, items: &[u32]) -> Vec<Vertex> {
    match label {
        Label::Zero => finite_fillings(label, &[], items, 3, 1),
        Label::Transition => finite_fillings(label, &[], items, 2, 1),
        Label::Infinite => infinite_fillings(label, &[], items, 3, 1),
        Label::FiniteRoot | Label::InfiniteRoot => vec![],
    }
}

fn canonical_order(types: Vec<ScaledType>) -> Vec<ScaledType> {
    let mut keyed: Vec<(std::cmp::Reverse<u32>, String, ScaledType)> = types
        .into_iter()
        .map(|t| {
            let d = stratum_dimension(&t).expect("enumerated types are valid");
            (std::cmp::Reverse(d), t.term(), t)
        })
        .collect();
    keyed.sort_by(|a, b| (&a.0, &a.1).cmp(&(&b.0, &b.1)));
    keyed.dedup_by(|a, b| a.1 == b.1);
    keyed.into_iter().map(|k| k.2).collect()
}

/// All stable types with `n` markings, up to isomorphism, ordered by
/// decreasing dimension and then by term.
pub fn enumerate_types(n: u32, mode: Mode, bound: u32) -> Result<Vec<ScaledType>, CurveError> {
    if n > bound {
        return Err(CurveError::BoundExceeded { n, bound });
    }
    let items: Vec<u32> = (1..=n).collect();
    let roots = match mode {
        Mode::Projective => {
            let mut r = finite_fillings(Label::FiniteRoot, &[], &items, 0, 0);
            r.extend(infinite_fillings(Label::InfiniteRoot, &[], &items, 0, 0));
            r
        }
        Mode::Affine => {
            if n == 0 {
                return Err(CurveError::AffineWithoutMarkings);
            }
            let mut r = finite_fillings(Label::Transition, &[0], &items, 2, 1);
            r.extend(infinite_fillings(Label::Infinite, &[0], &items, 3, 1));
            r
        }
    };
    Ok(canonical_order(roots.into_iter().map(|v| ScaledType::new(mode, v)).collect()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RhoImage {
    Zero,
    GenericFinite,
    Infinity,
    Dominant,
}

impl RhoImage {
    pub fn as_str(self) -> &'static str {
        match self {
            RhoImage::Zero => "zero",
            RhoImage::GenericFinite => "generic_finite",
            RhoImage::Infinity => "infinity",
            RhoImage::Dominant => "dominant",
        }
    }
}

/// Image of a stratum under the forgetful map to the scaling line.
///
/// The scaling on a finite root is a free parameter of the stratum; its
/// value zero is a fiber of that family rather than a separate type, so no
/// type maps to `Zero`.
pub fn rho_image(t: &ScaledType) -> Result<RhoImage, CurveError> {
    validate(t).map_err(CurveError::Invalid)?;
    match (t.mode, t.root.label) {
        (Mode::Affine, _) => Err(CurveError::AffineRho),
        (_, Label::InfiniteRoot) => Ok(RhoImage::Infinity),
        _ => Ok(RhoImage::Dominant),
    }
}

/// Non-zero deformation parameters, one per edge in preorder.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeParams(pub Vec<Rational>);

/// Product of the parameters on the path from vertex `v` up to the root.
pub fn path_to_root_product(t: &ScaledType, params: &EdgeParams, v: usize) -> Rational {
    let verts = t.vertices();
    let mut acc = Rational::one();
    let mut cur = v;
    while let Some(p) = verts[cur].parent {
        acc *= &params.0[cur - 1];
        cur = p;
    }
    acc
}

/// True iff the signed parameter product along the path between every pair
/// of transition vertices is one. Edges traversed toward the root count with
/// exponent `+1`, edges traversed away from it with `-1`.
pub fn check_balanced(t: &ScaledType, params: &EdgeParams) -> Result<bool, CurveError> {
    validate(t).map_err(CurveError::Invalid)?;
    let edges = t.num_edges();
    if params.0.len() != edges {
        return Err(CurveError::ParamCount {
            expected: edges,
            found: params.0.len(),
        });
    }
    if let Some(i) = params.0.iter().position(Zero::is_zero) {
        return Err(CurveError::ZeroParameter(i));
    }
    let products: BTreeSet<Rational> = t
        .transition_vertices()
        .into_iter()
        .map(|v| path_to_root_product(t, params, v))
        .collect();
    Ok(products.len() <= 1)
}

/// `delta (z2 - z1)`, the coordinate on the two-marked affine moduli line.
pub fn affine_two_marking_coordinate(z1: &Rational, z2: &Rational, delta: &Rational) -> Result<Rational, CurveError> {
    if z1 == z2 && !delta.is_zero() {
        return Err(CurveError::CoincidentMarkings);
    }
    Ok(delta * (z2 - z1))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "term", rename_all = "snake_case")]
pub enum DivisorMember {
    /// A boundary stratum of codimension one.
    Boundary(String),
    /// The fiber over scaling zero of the family of the given finite-root type.
    DeltaZeroFiber(String),
}

impl fmt::Display for DivisorMember {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DivisorMember::Boundary(t) => f.write_str(t),
            DivisorMember::DeltaZeroFiber(t) => write!(f, "delta=0 in {t}"),
        }
    }
}

/// Two linearly equivalent groups of boundary divisors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorRelation {
    pub mode: Mode,
    pub left_name: String,
    pub left: Vec<DivisorMember>,
    pub right_name: String,
    pub right: Vec<DivisorMember>,
}

pub fn divisor_pairs(n: u32, mode: Mode, bound: u32) -> Result<DivisorRelation, CurveError> {
    let types = enumerate_types(n, mode, bound)?;
    match mode {
        Mode::Projective => {
            let open = types
                .iter()
                .find(|t| stratum_dimension(t).ok() == Some(n + 1) && t.root.label == Label::FiniteRoot)
                .expect("open stratum exists");
            let infinity = types
                .iter()
                .filter(|t| t.root.label == Label::InfiniteRoot && stratum_dimension(t).ok() == Some(n))
                .map(|t| DivisorMember::Boundary(t.term()))
                .collect();
            Ok(DivisorRelation {
                mode,
                left_name: "zero".into(),
                left: vec![DivisorMember::DeltaZeroFiber(open.term())],
                right_name: "infinity".into(),
                right: infinity,
            })
        }
        Mode::Affine => {
            let codim_one: Vec<&ScaledType> = types
                .iter()
                .filter(|t| i64::from(stratum_dimension(t).unwrap()) == i64::from(n) - 2)
                .collect();
            let (single, multiple): (Vec<&ScaledType>, Vec<&ScaledType>) =
                codim_one.into_iter().partition(|t| t.transition_vertices().len() == 1);
            Ok(DivisorRelation {
                mode,
                left_name: "single_transition".into(),
                left: single.iter().map(|t| DivisorMember::Boundary(t.term())).collect(),
                right_name: "multiple_transitions".into(),
                right: multiple.iter().map(|t| DivisorMember::Boundary(t.term())).collect(),
            })
        }
    }
}

fn replace_at(v: &Vertex, path: &[usize], f: &dyn Fn(&Vertex) -> Vertex) -> Vertex {
    match path.split_first() {
        None => f(v),
        Some((&i, rest)) => {
            let mut out = v.clone();
            out.children[i] = replace_at(&v.children[i], rest, f);
            out
        }
    }
}

fn paths(v: &Vertex, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    out.push(prefix.clone());
    for (i, c) in v.children.iter().enumerate() {
        prefix.push(i);
        paths(c, prefix, out);
        prefix.pop();
    }
}

/// Types reached by sending one finite non-zero scaling to zero or infinity.
///
/// A finite root becomes an infinite root over a transition bubble carrying
/// its contents. A transition vertex either becomes infinite, each of its
/// markings and zero bubbles moving onto its own transition bubble, or
/// becomes zero below a new transition vertex. Results may be unstable.
pub fn degenerations(t: &ScaledType) -> Vec<ScaledType> {
    let mut out = Vec::new();
    if t.root.label == Label::FiniteRoot {
        let bubble = Vertex::new(Label::Transition, t.root.markings.iter().copied(), t.root.children.clone());
        out.push(ScaledType::new(t.mode, Vertex::new(Label::InfiniteRoot, [], vec![bubble])));
    }
    let mut all = Vec::new();
    paths(&t.root, &mut Vec::new(), &mut all);
    for path in all {
        let is_root = path.is_empty();
        let target = path.iter().fold(&t.root, |v, &i| &v.children[i]);
        if target.label != Label::Transition {
            continue;
        }
        let base: Vec<u32> = target.markings.iter().copied().filter(|&m| m == 0).collect();
        let to_infinite = move |v: &Vertex| {
            let mut children: Vec<Vertex> = v
                .markings
                .iter()
                .filter(|&&m| m != 0)
                .map(|&m| Vertex::leaf(Label::Transition, [m]))
                .collect();
            children.extend(
                v.children
                    .iter()
                    .map(|c| Vertex::new(Label::Transition, c.markings.iter().copied(), c.children.clone())),
            );
            Vertex::new(Label::Infinite, base.iter().copied(), children)
        };
        out.push(ScaledType::new(t.mode, replace_at(&t.root, &path, &to_infinite)));
        let to_zero = move |v: &Vertex| {
            let own: Vec<u32> = v.markings.iter().copied().filter(|&m| m != 0).collect();
            let inner = Vertex::new(Label::Zero, own, v.children.clone());
            let keep: Vec<u32> = if is_root { vec![0] } else { vec![] };
            Vertex::new(Label::Transition, keep, vec![inner])
        };
        out.push(ScaledType::new(t.mode, replace_at(&t.root, &path, &to_zero)));
    }
    out
}

/// Number of label- and marking-preserving automorphisms of the tree.
pub fn automorphism_count(t: &ScaledType) -> u64 {
    fn count(v: &Vertex) -> u64 {
        let mut terms: Vec<String> = v.children.iter().map(term::vertex_term).collect();
        terms.sort();
        let mut acc: u64 = v.children.iter().map(count).product();
        let mut i = 0;
        while i < terms.len() {
            let j = (i..terms.len()).find(|&j| terms[j] != terms[i]).unwrap_or(terms.len());
            acc *= (1..=(j - i) as u64).product::<u64>();
            i = j;
        }
        acc
    }
    count(&t.root)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, rat};

    fn dims(types: &[ScaledType]) -> Vec<u32> {
        types.iter().map(|t| stratum_dimension(t).unwrap()).collect()
    }

    #[test]
    fn census() {
        let p2 = enumerate_types(2, Mode::Projective, 6).unwrap();
        assert_eq!(dims(&p2), vec![3, 2, 2, 2, 1, 1]);
        let terms: Vec<String> = p2.iter().map(ScaledType::term).collect();
        assert_eq!(
            terms,
            vec![
                "(τκ)(z1 z2)",
                "(τκ)((z1 z2))",
                "τ(κ(z1 z2))",
                "τ(κ(z1) κ(z2))",
                "τ((κ(z1) κ(z2)))",
                "τ(κ((z1 z2)))",
            ]
        );
        assert_eq!(enumerate_types(0, Mode::Projective, 6).unwrap().len(), 2);
        let a2 = enumerate_types(2, Mode::Affine, 6).unwrap();
        assert_eq!(dims(&a2), vec![1, 0, 0]);
        assert_eq!(enumerate_types(1, Mode::Affine, 6).unwrap().len(), 1);
        assert_eq!(enumerate_types(0, Mode::Affine, 6), Err(CurveError::AffineWithoutMarkings));
        assert!(matches!(
            enumerate_types(7, Mode::Projective, 6),
            Err(CurveError::BoundExceeded { .. })
        ));
    }

    #[test]
    fn validation_examples() {
        let open = ScaledType::new(Mode::Projective, Vertex::leaf(Label::FiniteRoot, []));
        assert_eq!(validate(&open), Ok(()));
        let boundary = ScaledType::new(
            Mode::Projective,
            Vertex::new(Label::InfiniteRoot, [], vec![Vertex::leaf(Label::Transition, [1])]),
        );
        assert_eq!(validate(&boundary), Ok(()));
        let bad = ScaledType::new(
            Mode::Projective,
            Vertex::new(
                Label::InfiniteRoot,
                [],
                vec![Vertex::new(Label::Zero, [], vec![Vertex::leaf(Label::Transition, [1, 2])])],
            ),
        );
        assert_eq!(validate(&bad).unwrap_err().clause, Clause::Monotonicity);
        let unstable = ScaledType::new(
            Mode::Projective,
            Vertex::new(Label::FiniteRoot, [1], vec![Vertex::leaf(Label::Zero, [2])]),
        );
        assert_eq!(validate(&unstable).unwrap_err().clause, Clause::Stability);
    }

    #[test]
    fn dimensions_and_rho() {
        let a3 = enumerate_types(3, Mode::Affine, 6).unwrap();
        assert_eq!(stratum_dimension(&a3[0]).unwrap(), 2);
        let p2 = enumerate_types(2, Mode::Projective, 6).unwrap();
        assert_eq!(rho_image(&p2[0]).unwrap(), RhoImage::Dominant);
        assert_eq!(rho_image(&p2[1]).unwrap(), RhoImage::Dominant);
        assert_eq!(rho_image(&p2[3]).unwrap(), RhoImage::Infinity);
        assert_eq!(rho_image(&a3[0]), Err(CurveError::AffineRho));
    }

    #[test]
    fn balanced_examples() {
        let t = parse_term("τ((κ(z1) κ(z2)))", Mode::Projective).unwrap();
        assert_eq!(t.num_edges(), 3);
        // edges: root-inf, inf-κ(z1), inf-κ(z2)
        let ok = EdgeParams(vec![int(5), int(2), int(2)]);
        assert!(check_balanced(&t, &ok).unwrap());
        let bad = EdgeParams(vec![int(5), int(2), int(3)]);
        assert!(!check_balanced(&t, &bad).unwrap());
        let single = parse_term("τ(κ(z1 z2))", Mode::Projective).unwrap();
        assert!(check_balanced(&single, &EdgeParams(vec![rat(7, 3)])).unwrap());
        assert_eq!(
            check_balanced(&single, &EdgeParams(vec![int(0)])),
            Err(CurveError::ZeroParameter(0))
        );
    }

    #[test]
    fn affine_coordinate() {
        assert_eq!(affine_two_marking_coordinate(&int(0), &int(1), &int(1)).unwrap(), int(1));
        assert_eq!(affine_two_marking_coordinate(&int(0), &int(1), &int(0)).unwrap(), int(0));
        assert_eq!(affine_two_marking_coordinate(&int(1), &int(3), &rat(1, 2)).unwrap(), int(1));
        assert_eq!(
            affine_two_marking_coordinate(&int(1), &int(1), &int(2)),
            Err(CurveError::CoincidentMarkings)
        );
    }

    #[test]
    fn divisors() {
        let a = divisor_pairs(2, Mode::Affine, 6).unwrap();
        assert_eq!(a.left, vec![DivisorMember::Boundary("κ((z1 z2))".into())]);
        assert_eq!(a.right, vec![DivisorMember::Boundary("κ(z1) κ(z2)".into())]);
        let p = divisor_pairs(2, Mode::Projective, 6).unwrap();
        assert_eq!(p.right.len(), 2);
        assert_eq!(p.left, vec![DivisorMember::DeltaZeroFiber("(τκ)(z1 z2)".into())]);
        let p1 = divisor_pairs(1, Mode::Projective, 6).unwrap();
        assert_eq!(p1.right, vec![DivisorMember::Boundary("τ(κ(z1))".into())]);
    }

    #[test]
    fn degenerations_stay_in_the_census() {
        for mode in [Mode::Projective, Mode::Affine] {
            for n in 1..=4 {
                let types = enumerate_types(n, mode, 6).unwrap();
                let terms: BTreeSet<String> = types.iter().map(ScaledType::term).collect();
                for t in &types {
                    assert_eq!(automorphism_count(t), 1);
                    for d in degenerations(t) {
                        if validate(&d).is_ok() {
                            assert!(terms.contains(&d.term()), "{} -> {}", t, d);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let t = parse_term("τ((κ(z1) κ(z2)))", Mode::Projective).unwrap();
        let text = serde_json::to_string(&t).unwrap();
        let back: ScaledType = serde_json::from_str(&text).unwrap();
        assert_eq!(back, t);
    }
}
