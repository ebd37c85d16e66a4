//! Finite topological spaces.
//!
//! A finite space is stored through its minimal open neighbourhoods
//! `x ↦ V_x`. Every open set is a union of these, and the specialization
//! preorder used throughout the crate is
//!
//! ```text
//! x ≤ y  ⟺  V_y ⊆ V_x      (equivalently  y ∈ V_x)
//! ```
//!
//! so the up-set of `x` in the preorder is exactly `V_x`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::pointset::PointSet;

/// Default cap on the number of points for enumeration-heavy operations.
pub const DEFAULT_ENUMERATION_BOUND: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpaceError {
    #[error("open-set family is missing the empty set or the full point set")]
    MissingEmptyOrFull,
    #[error("not a topology: {0}")]
    NotATopology(TopologyViolation),
    #[error("unknown point id `{0}`")]
    UnknownPoint(String),
    #[error("duplicate point id `{0}`")]
    DuplicatePoint(String),
    #[error("minimal open set of `{point}` is invalid: {reason}")]
    InvalidMinimalOpen { point: String, reason: String },
    #[error("relation is not a preorder: {0}")]
    NotAPreorder(String),
    #[error("{what} is not a valid cover: {reason}")]
    InvalidCover { what: &'static str, reason: String },
    #[error("covers live on different spaces")]
    SpaceMismatch,
    #[error("map assignment is invalid: {0}")]
    InvalidAssignment(String),
    #[error("space has {points} points, enumeration bound is {bound}")]
    TooLarge { points: usize, bound: usize },
}

/// The first axiom failure found while validating an explicit open-set family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TopologyViolation {
    Union(Vec<String>, Vec<String>),
    Intersection(Vec<String>, Vec<String>),
    /// A set produced by unions of minimal opens that the input family lacks.
    ClosureMismatch(Vec<String>),
}

impl fmt::Display for TopologyViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Union(a, b) => write!(f, "union of {a:?} and {b:?} is not open"),
            Self::Intersection(a, b) => write!(f, "intersection of {a:?} and {b:?} is not open"),
            Self::ClosureMismatch(s) => write!(f, "{s:?} is a union of minimal opens but not listed"),
        }
    }
}

pub type Result<T, E = SpaceError> = std::result::Result<T, E>;

/// A topology on a finite, ordered list of opaque point ids.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteSpace {
    points: Vec<String>,
    min_open: Vec<PointSet>,
}

impl fmt::Debug for FiniteSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for (i, p) in self.points.iter().enumerate() {
            m.entry(p, &self.ids(&self.min_open[i]));
        }
        m.finish()
    }
}

fn index_points(points: &[String]) -> Result<HashMap<&str, usize>> {
    let mut index = HashMap::with_capacity(points.len());
    for (i, p) in points.iter().enumerate() {
        if index.insert(p.as_str(), i).is_some() {
            return Err(SpaceError::DuplicatePoint(p.clone()));
        }
    }
    Ok(index)
}

fn subset_from_ids<S: AsRef<str>>(index: &HashMap<&str, usize>, n: usize, ids: &[S]) -> Result<PointSet> {
    let mut set = PointSet::empty(n);
    for id in ids {
        let id = id.as_ref();
        let &i = index.get(id).ok_or_else(|| SpaceError::UnknownPoint(id.to_string()))?;
        set.insert(i);
    }
    Ok(set)
}

impl FiniteSpace {
    /// Validates an explicit open-set family and extracts the minimal opens.
    pub fn from_open_sets<S: AsRef<str>>(points: Vec<String>, opens: &[Vec<S>]) -> Result<Self> {
        let index = index_points(&points)?;
        let n = points.len();
        let family = opens
            .iter()
            .map(|o| subset_from_ids(&index, n, o))
            .collect::<Result<Vec<_>>>()?;
        drop(index);
        Self::from_open_family(points, family)
    }

    /// Same as [`FiniteSpace::from_open_sets`] with subsets already encoded.
    pub fn from_open_family(points: Vec<String>, family: Vec<PointSet>) -> Result<Self> {
        index_points(&points)?;
        let n = points.len();
        let family: BTreeSet<PointSet> = family.into_iter().collect();
        if !family.contains(&PointSet::empty(n)) || !family.contains(&PointSet::full(n)) {
            return Err(SpaceError::MissingEmptyOrFull);
        }
        let named = |s: &PointSet| s.iter().map(|i| points[i].clone()).collect::<Vec<_>>();
        let members: Vec<&PointSet> = family.iter().collect();
        for (i, a) in members.iter().enumerate() {
            for b in &members[i + 1..] {
                if !family.contains(&a.union(b)) {
                    return Err(SpaceError::NotATopology(TopologyViolation::Union(named(a), named(b))));
                }
                if !family.contains(&a.intersection(b)) {
                    return Err(SpaceError::NotATopology(TopologyViolation::Intersection(named(a), named(b))));
                }
            }
        }
        let min_open: Vec<PointSet> = (0..n)
            .map(|x| {
                family
                    .iter()
                    .filter(|o| o.contains(x))
                    .fold(PointSet::full(n), |acc, o| acc.intersection(o))
            })
            .collect();
        let space = Self { points, min_open };
        // Union closure of the minimal opens must give back the input family.
        let closure = space.union_closure(family.len());
        match closure {
            Some(c) if c == family => Ok(space),
            Some(c) => {
                let extra = c.difference(&family).next().or_else(|| family.difference(&c).next()).cloned();
                Err(SpaceError::NotATopology(TopologyViolation::ClosureMismatch(
                    extra.map(|s| space.ids(&s)).unwrap_or_default(),
                )))
            }
            None => Err(SpaceError::NotATopology(TopologyViolation::ClosureMismatch(Vec::new()))),
        }
    }

    /// Builds a space from its minimal open sets, checking `x ∈ V_x` and
    /// `y ∈ V_x ⟹ V_y ⊆ V_x`.
    pub fn from_min_open<S: AsRef<str>>(points: Vec<String>, min_open: &[Vec<S>]) -> Result<Self> {
        let index = index_points(&points)?;
        let n = points.len();
        if min_open.len() != n {
            return Err(SpaceError::InvalidMinimalOpen {
                point: String::new(),
                reason: format!("expected {n} minimal open sets, got {}", min_open.len()),
            });
        }
        let sets = min_open
            .iter()
            .map(|o| subset_from_ids(&index, n, o))
            .collect::<Result<Vec<_>>>()?;
        drop(index);
        Self::from_min_open_sets(points, sets)
    }

    pub fn from_min_open_sets(points: Vec<String>, min_open: Vec<PointSet>) -> Result<Self> {
        index_points(&points)?;
        let n = points.len();
        for (x, vx) in min_open.iter().enumerate() {
            if !vx.contains(x) {
                return Err(SpaceError::InvalidMinimalOpen {
                    point: points[x].clone(),
                    reason: "does not contain the point itself".into(),
                });
            }
            if let Some(y) = vx.iter().find(|&y| !min_open[y].is_subset(vx)) {
                return Err(SpaceError::InvalidMinimalOpen {
                    point: points[x].clone(),
                    reason: format!("contains `{}` but not its minimal open set", points[y]),
                });
            }
            debug_assert_eq!(vx.universe(), n);
        }
        Ok(Self { points, min_open })
    }

    /// The Alexandrov space of a preorder: `V_x = { y : x ≤ y }`.
    pub fn from_preorder(p: &Preorder) -> Self {
        Self { points: p.points.clone(), min_open: p.up.clone() }
    }

    /// Disjoint union; point ids of `other` must not clash with ours.
    pub fn disjoint_union(&self, other: &Self) -> Result<Self> {
        let n = self.len();
        let total = n + other.len();
        let mut points = self.points.clone();
        points.extend(other.points.iter().cloned());
        let mut min_open: Vec<PointSet> = self
            .min_open
            .iter()
            .map(|v| PointSet::from_indices(total, v.iter()))
            .collect();
        min_open.extend(other.min_open.iter().map(|v| PointSet::from_indices(total, v.iter().map(|y| y + n))));
        Self::from_min_open_sets(points, min_open)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn point_index(&self, id: &str) -> Option<usize> {
        self.points.iter().position(|p| p == id)
    }

    /// `V_x`, the smallest open set containing `x`.
    pub fn min_open(&self, x: usize) -> &PointSet {
        &self.min_open[x]
    }

    pub fn min_opens(&self) -> &[PointSet] {
        &self.min_open
    }

    pub fn full_set(&self) -> PointSet {
        PointSet::full(self.len())
    }

    pub fn subset<S: AsRef<str>>(&self, ids: &[S]) -> Result<PointSet> {
        let index = index_points(&self.points)?;
        subset_from_ids(&index, self.len(), ids)
    }

    /// Point ids of `set`, in point order.
    pub fn ids(&self, set: &PointSet) -> Vec<String> {
        set.iter().map(|i| self.points[i].clone()).collect()
    }

    pub fn is_open(&self, set: &PointSet) -> bool {
        set.iter().all(|x| self.min_open[x].is_subset(set))
    }

    /// Smallest open set containing `set`.
    pub fn open_hull(&self, set: &PointSet) -> PointSet {
        set.iter().fold(PointSet::empty(self.len()), |acc, x| acc.union(&self.min_open[x]))
    }

    fn union_closure(&self, limit: usize) -> Option<BTreeSet<PointSet>> {
        let mut seen = BTreeSet::new();
        let mut frontier = vec![PointSet::empty(self.len())];
        seen.insert(PointSet::empty(self.len()));
        while let Some(s) = frontier.pop() {
            for v in &self.min_open {
                let u = s.union(v);
                if seen.insert(u.clone()) {
                    if seen.len() > limit {
                        return None;
                    }
                    frontier.push(u);
                }
            }
        }
        Some(seen)
    }

    /// The full lattice of open sets, sorted. Exponential in general.
    pub fn open_sets(&self) -> Vec<PointSet> {
        self.union_closure(usize::MAX).unwrap_or_default().into_iter().collect()
    }

    pub fn specialization_preorder(&self) -> Preorder {
        Preorder { points: self.points.clone(), up: self.min_open.clone() }
    }

    /// `x ≤ y` in the specialization preorder.
    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.min_open[x].contains(y)
    }

    pub fn is_t0(&self) -> bool {
        let distinct: BTreeSet<&PointSet> = self.min_open.iter().collect();
        distinct.len() == self.len()
    }

    /// Connected components of the subspace `set`, ordered by smallest point.
    ///
    /// Two points of a finite space lie in the same component iff they are
    /// joined by a path of comparable points; inside a subspace `A` the
    /// minimal opens are `V_x ∩ A`.
    pub fn components_of(&self, set: &PointSet) -> Vec<PointSet> {
        let n = self.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for x in set.iter() {
            for y in self.min_open[x].intersection(set).iter() {
                let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
                if rx != ry {
                    parent[rx.max(ry)] = rx.min(ry);
                }
            }
        }
        let mut blocks: Vec<(usize, PointSet)> = Vec::new();
        for x in set.iter() {
            let r = find(&mut parent, x);
            match blocks.iter_mut().find(|(root, _)| *root == r) {
                Some((_, b)) => b.insert(x),
                None => blocks.push((r, PointSet::singleton(n, x))),
            }
        }
        blocks.into_iter().map(|(_, b)| b).collect()
    }

    /// π₀′(X): the partition into connected components.
    pub fn connected_components(self: &Arc<Self>) -> OpenPartition {
        let blocks = self.components_of(&self.full_set());
        OpenPartition::new(self.clone(), blocks).expect("components form an open partition")
    }

    /// All open partitions of the space.
    ///
    /// Open partitions are exactly the partitions whose blocks are unions of
    /// connected components, so they are enumerated as set partitions of the
    /// component list (restricted growth strings). The first entry is the
    /// one-block partition.
    pub fn enumerate_open_partitions(self: &Arc<Self>, bound: usize) -> Result<Vec<OpenPartition>> {
        if self.len() > bound {
            return Err(SpaceError::TooLarge { points: self.len(), bound });
        }
        let comps = self.components_of(&self.full_set());
        let k = comps.len();
        let mut out = Vec::new();
        if k == 0 {
            out.push(OpenPartition::new(self.clone(), Vec::new())?);
            return Ok(out);
        }
        let mut rgs = vec![0usize; k];
        loop {
            let groups = rgs.iter().max().copied().unwrap_or(0) + 1;
            let mut blocks = vec![PointSet::empty(self.len()); groups];
            for (c, &g) in comps.iter().zip(&rgs) {
                blocks[g].union_with(c);
            }
            out.push(OpenPartition::new(self.clone(), blocks)?);
            // next restricted growth string
            let mut i = k;
            loop {
                if i <= 1 {
                    return Ok(out);
                }
                i -= 1;
                let prefix_max = rgs[..i].iter().max().copied().unwrap_or(0);
                if rgs[i] <= prefix_max {
                    rgs[i] += 1;
                    for r in &mut rgs[i + 1..] {
                        *r = 0;
                    }
                    break;
                }
            }
        }
    }

    /// Kolmogorov quotient: identifies `x` and `y` when `x ≤ y ≤ x`
    /// (equivalently `V_x = V_y`). Each class is named after its first point.
    pub fn t0_quotient(self: &Arc<Self>) -> (Arc<FiniteSpace>, ContinuousMap) {
        let mut class_of = vec![usize::MAX; self.len()];
        let mut reps: Vec<usize> = Vec::new();
        for x in 0..self.len() {
            if let Some(c) = reps.iter().position(|&r| self.min_open[r] == self.min_open[x]) {
                class_of[x] = c;
            } else {
                class_of[x] = reps.len();
                reps.push(x);
            }
        }
        let m = reps.len();
        let points = reps.iter().map(|&r| self.points[r].clone()).collect();
        let min_open = reps
            .iter()
            .map(|&r| PointSet::from_indices(m, self.min_open[r].iter().map(|y| class_of[y])))
            .collect();
        let quotient = Arc::new(
            Self::from_min_open_sets(points, min_open).expect("quotient of a valid space is valid"),
        );
        let map = ContinuousMap::new(self.clone(), quotient.clone(), class_of)
            .expect("quotient assignment is total");
        (quotient, map)
    }
}

/// A reflexive, transitive relation on an ordered point list.
///
/// Stored as up-sets: `up[x] = { y : x ≤ y }`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Preorder {
    points: Vec<String>,
    up: Vec<PointSet>,
}

impl Preorder {
    /// Validates reflexivity and transitivity of the given up-sets.
    pub fn new(points: Vec<String>, up: Vec<PointSet>) -> Result<Self> {
        index_points(&points)?;
        if up.len() != points.len() {
            return Err(SpaceError::NotAPreorder("one up-set per point required".into()));
        }
        for (x, ux) in up.iter().enumerate() {
            if !ux.contains(x) {
                return Err(SpaceError::NotAPreorder(format!("`{}` ≤ `{}` missing", points[x], points[x])));
            }
            for y in ux.iter() {
                if let Some(z) = up[y].iter().find(|&z| !ux.contains(z)) {
                    return Err(SpaceError::NotAPreorder(format!(
                        "`{}` ≤ `{}` ≤ `{}` but not `{}` ≤ `{}`",
                        points[x], points[y], points[z], points[x], points[z]
                    )));
                }
            }
        }
        Ok(Self { points, up })
    }

    /// Reflexive-transitive closure of the generating pairs `(x, y)` meaning `x ≤ y`.
    pub fn from_pairs<S: AsRef<str>>(points: Vec<String>, pairs: &[(S, S)]) -> Result<Self> {
        let index = index_points(&points)?;
        let n = points.len();
        let lookup = |s: &S| {
            index.get(s.as_ref()).copied().ok_or_else(|| SpaceError::UnknownPoint(s.as_ref().to_string()))
        };
        let mut up: Vec<PointSet> = (0..n).map(|x| PointSet::singleton(n, x)).collect();
        for (a, b) in pairs {
            let (x, y) = (lookup(a)?, lookup(b)?);
            up[x].insert(y);
        }
        drop(index);
        Ok(Self { points, up: transitive_closure(up) })
    }

    /// Reflexive-transitive closure of a relation given by index pairs.
    pub fn closure_of(points: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self> {
        index_points(&points)?;
        let n = points.len();
        let mut up: Vec<PointSet> = (0..n).map(|x| PointSet::singleton(n, x)).collect();
        for &(x, y) in pairs {
            if x >= n || y >= n {
                return Err(SpaceError::NotAPreorder(format!("pair ({x}, {y}) out of range")));
            }
            up[x].insert(y);
        }
        Ok(Self { points, up: transitive_closure(up) })
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x].contains(y)
    }

    pub fn up_set(&self, x: usize) -> &PointSet {
        &self.up[x]
    }

    /// Pairs `(x, y)` with `x ≤ y` and `x ≠ y`, in lexicographic index order.
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|x| self.up[x].iter().filter(move |&y| y != x).map(move |y| (x, y)))
            .collect()
    }

    pub fn is_partial_order(&self) -> bool {
        self.strict_pairs().iter().all(|&(x, y)| !self.leq(y, x))
    }
}

fn transitive_closure(mut up: Vec<PointSet>) -> Vec<PointSet> {
    let n = up.len();
    for k in 0..n {
        let uk = up[k].clone();
        for row in up.iter_mut() {
            if row.contains(k) {
                row.union_with(&uk);
            }
        }
    }
    up
}

/// An indexed family of nonempty open sets whose union is the whole space.
///
/// Members keep their labels; two labels may carry the same subset.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OpenCover {
    space: Arc<FiniteSpace>,
    labels: Vec<String>,
    members: Vec<PointSet>,
}

impl OpenCover {
    pub fn new(space: Arc<FiniteSpace>, members: Vec<PointSet>) -> Result<Self> {
        let labels = (0..members.len()).map(|i| format!("U{i}")).collect();
        Self::with_labels(space, labels, members)
    }

    pub fn with_labels(space: Arc<FiniteSpace>, labels: Vec<String>, members: Vec<PointSet>) -> Result<Self> {
        let invalid = |reason: String| SpaceError::InvalidCover { what: "family", reason };
        if labels.len() != members.len() {
            return Err(invalid("one label per member required".into()));
        }
        let mut union = PointSet::empty(space.len());
        for (label, m) in labels.iter().zip(&members) {
            if m.universe() != space.len() {
                return Err(invalid(format!("member `{label}` has the wrong universe")));
            }
            if m.is_empty() {
                return Err(invalid(format!("member `{label}` is empty")));
            }
            if !space.is_open(m) {
                return Err(invalid(format!("member `{label}` = {:?} is not open", space.ids(m))));
            }
            union.union_with(m);
        }
        if !union.is_full() {
            let missing = space.full_set().difference(&union);
            return Err(invalid(format!("points {:?} are not covered", space.ids(&missing))));
        }
        Ok(Self { space, labels, members })
    }

    /// `{V_x : x ∈ X}`, labelled by point id. It refines every open cover.
    pub fn finest(space: &Arc<FiniteSpace>) -> Self {
        Self {
            space: space.clone(),
            labels: space.points().to_vec(),
            members: space.min_opens().to_vec(),
        }
    }

    /// The one-member cover `{X}` of a nonempty space.
    pub fn trivial(space: &Arc<FiniteSpace>) -> Result<Self> {
        Self::with_labels(space.clone(), vec!["X".into()], vec![space.full_set()])
    }

    pub fn space(&self) -> &Arc<FiniteSpace> {
        &self.space
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn members(&self) -> &[PointSet] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// An open cover by pairwise disjoint blocks.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OpenPartition(OpenCover);

impl OpenPartition {
    pub fn new(space: Arc<FiniteSpace>, blocks: Vec<PointSet>) -> Result<Self> {
        for (i, a) in blocks.iter().enumerate() {
            if let Some(b) = blocks[i + 1..].iter().find(|b| b.intersects(a)) {
                return Err(SpaceError::InvalidCover {
                    what: "partition",
                    reason: format!("blocks {:?} and {:?} overlap", space.ids(a), space.ids(b)),
                });
            }
        }
        let labels = blocks.iter().map(|b| format!("{{{}}}", space.ids(b).join(","))).collect();
        OpenCover::with_labels(space, labels, blocks).map(Self)
    }

    pub fn blocks(&self) -> &[PointSet] {
        self.0.members()
    }

    pub fn as_cover(&self) -> &OpenCover {
        &self.0
    }

    pub fn space(&self) -> &Arc<FiniteSpace> {
        self.0.space()
    }

    /// Index of the block containing `x`.
    pub fn block_of(&self, x: usize) -> Option<usize> {
        self.blocks().iter().position(|b| b.contains(x))
    }

    /// Blocks as a canonical (sorted) set, for comparing partitions.
    pub fn canonical(&self) -> BTreeSet<PointSet> {
        self.blocks().iter().cloned().collect()
    }
}

/// True iff every member of `fine` is contained in some member of `coarse`.
pub fn refines(fine: &OpenCover, coarse: &OpenCover) -> Result<bool> {
    if fine.space != coarse.space {
        return Err(SpaceError::SpaceMismatch);
    }
    Ok(fine.members.iter().all(|f| coarse.members.iter().any(|c| f.is_subset(c))))
}

/// A point assignment between finite spaces.
///
/// Construction only checks that the assignment is total; continuity is
/// decided by [`check_continuity`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ContinuousMap {
    source: Arc<FiniteSpace>,
    target: Arc<FiniteSpace>,
    assignment: Vec<usize>,
}

impl ContinuousMap {
    pub fn new(source: Arc<FiniteSpace>, target: Arc<FiniteSpace>, assignment: Vec<usize>) -> Result<Self> {
        if assignment.len() != source.len() {
            return Err(SpaceError::InvalidAssignment(format!(
                "{} images for {} source points",
                assignment.len(),
                source.len()
            )));
        }
        if let Some(&bad) = assignment.iter().find(|&&y| y >= target.len()) {
            return Err(SpaceError::InvalidAssignment(format!("image index {bad} out of range")));
        }
        Ok(Self { source, target, assignment })
    }

    pub fn from_ids<S: AsRef<str>>(source: Arc<FiniteSpace>, target: Arc<FiniteSpace>, images: &[(S, S)]) -> Result<Self> {
        let mut assignment = vec![usize::MAX; source.len()];
        for (x, y) in images {
            let xi = source.point_index(x.as_ref()).ok_or_else(|| SpaceError::UnknownPoint(x.as_ref().into()))?;
            let yi = target.point_index(y.as_ref()).ok_or_else(|| SpaceError::UnknownPoint(y.as_ref().into()))?;
            assignment[xi] = yi;
        }
        if let Some(x) = assignment.iter().position(|&y| y == usize::MAX) {
            return Err(SpaceError::InvalidAssignment(format!("no image for `{}`", source.points()[x])));
        }
        Self::new(source, target, assignment)
    }

    pub fn identity(space: &Arc<FiniteSpace>) -> Self {
        Self { source: space.clone(), target: space.clone(), assignment: (0..space.len()).collect() }
    }

    pub fn constant(source: &Arc<FiniteSpace>, target: &Arc<FiniteSpace>, point: usize) -> Result<Self> {
        Self::new(source.clone(), target.clone(), vec![point; source.len()])
    }

    pub fn source(&self) -> &Arc<FiniteSpace> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteSpace> {
        &self.target
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.assignment[x]
    }

    pub fn preimage(&self, set: &PointSet) -> PointSet {
        PointSet::from_indices(
            self.source.len(),
            (0..self.source.len()).filter(|&x| set.contains(self.assignment[x])),
        )
    }

    pub fn is_continuous(&self) -> bool {
        check_continuity(self)
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &ContinuousMap) -> Result<ContinuousMap> {
        if first.target != self.source {
            return Err(SpaceError::SpaceMismatch);
        }
        let assignment = first.assignment.iter().map(|&y| self.assignment[y]).collect();
        Ok(Self { source: first.source.clone(), target: self.target.clone(), assignment })
    }
}

/// Continuity test through the specialization preorders.
///
/// For finite spaces a map is continuous iff it is monotone:
/// preimages of opens are open ⟺ `f(V_x) ⊆ V_{f(x)}` for every `x`
/// (take the open set `V_{f(x)}`; conversely every open is a union of
/// minimal opens) ⟺ `x ≤ y ⟹ f(x) ≤ f(y)`.
pub fn check_continuity(f: &ContinuousMap) -> bool {
    (0..f.source.len()).all(|x| {
        let fx = f.assignment[x];
        f.source.min_open(x).iter().all(|y| f.target.leq(fx, f.assignment[y]))
    })
}
