//! Hypercoverings of a finite space by open subsets.
//!
//! Every level is a finite list of pieces, each an open subset of the base,
//! and the structure maps are inclusions. So a hypercovering is a truncated
//! simplicial set of piece labels (the `shape`) plus one subset per piece,
//! with `subset(P) ⊆ subset(d_i P)` and `subset(s_i P) = subset(P)`.

use std::collections::HashMap;
use std::sync::Arc;

use thiserror::Error;

use crate::pointset::PointSet;
use crate::simplicial::{SimplicialError, SimplicialMap, TruncSimplicialSet};
use crate::space::{FiniteSpace, OpenCover};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HypercoverError {
    #[error("piece {piece} of degree {degree} is not a nonempty open subset")]
    BadPiece { degree: usize, piece: String },
    #[error("{map} does not send piece {piece} of degree {degree} into a larger piece")]
    NotAnInclusion { degree: usize, piece: String, map: String },
    #[error("expected {expected} pieces at degree {degree}, got {got}")]
    Shape { degree: usize, expected: usize, got: usize },
    #[error("hypercoverings live over different spaces or depths")]
    BaseMismatch,
    #[error("no morphism: piece {piece} of degree {degree} has no admissible image")]
    NoMorphismFound { degree: usize, piece: String },
    #[error(transparent)]
    Simplicial(#[from] SimplicialError),
}

pub type Result<T, E = HypercoverError> = std::result::Result<T, E>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypercovering {
    base: Arc<FiniteSpace>,
    shape: Arc<TruncSimplicialSet>,
    labels: Labels,
    subsets: Vec<Vec<PointSet>>,
}

// Piece labels, either given or spelled from the shape keys on demand.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Labels {
    Explicit(Vec<Vec<String>>),
    Tuples { names: Vec<String>, sep: &'static str },
}

impl Hypercovering {
    /// Checks pieces are nonempty opens and that every face and degeneracy
    /// is an inclusion over the base.
    pub fn from_parts(
        base: Arc<FiniteSpace>,
        shape: TruncSimplicialSet,
        labels: Vec<Vec<String>>,
        subsets: Vec<Vec<PointSet>>,
    ) -> Result<Self> {
        for n in 0..=shape.depth() {
            let (expected, got) = (shape.cell_count(n), labels.get(n).map_or(0, Vec::len));
            if got != expected {
                return Err(HypercoverError::Shape { degree: n, expected, got });
            }
        }
        if labels.len() != shape.depth() + 1 {
            return Err(HypercoverError::Shape { degree: shape.depth() + 1, expected: 0, got: labels.len() });
        }
        Self::assemble(base, shape, Labels::Explicit(labels), subsets)
    }

    fn assemble(base: Arc<FiniteSpace>, shape: TruncSimplicialSet, labels: Labels, subsets: Vec<Vec<PointSet>>) -> Result<Self> {
        let depth = shape.depth();
        for n in 0..=depth {
            let (expected, got) = (shape.cell_count(n), subsets.get(n).map_or(0, Vec::len));
            if got != expected {
                return Err(HypercoverError::Shape { degree: n, expected, got });
            }
        }
        if subsets.len() != depth + 1 {
            return Err(HypercoverError::Shape { degree: depth + 1, expected: 0, got: subsets.len() });
        }
        let label = |n: usize, p: usize| Self::spell(&labels, &shape, n, p);
        for n in 0..=depth {
            for (p, s) in subsets[n].iter().enumerate() {
                if s.is_empty() || s.universe() != base.len() || !base.is_open(s) {
                    return Err(HypercoverError::BadPiece { degree: n, piece: label(n, p) });
                }
                for i in 0..=n {
                    let bad = |map: String| HypercoverError::NotAnInclusion { degree: n, piece: label(n, p), map };
                    if n > 0 && !s.is_subset(&subsets[n - 1][shape.face(n, i, p)]) {
                        return Err(bad(format!("d{i}")));
                    }
                    if n < depth && subsets[n + 1][shape.degeneracy(n, i, p)] != *s {
                        return Err(bad(format!("s{i}")));
                    }
                }
            }
        }
        Ok(Self { base, shape: Arc::new(shape), labels, subsets })
    }

    pub fn base(&self) -> &Arc<FiniteSpace> {
        &self.base
    }

    pub fn depth(&self) -> usize {
        self.shape.depth()
    }

    pub fn shape(&self) -> &Arc<TruncSimplicialSet> {
        &self.shape
    }

    pub fn piece_count(&self, n: usize) -> usize {
        self.subsets[n].len()
    }

    pub fn label(&self, n: usize, piece: usize) -> String {
        Self::spell(&self.labels, &self.shape, n, piece)
    }

    fn spell(labels: &Labels, shape: &TruncSimplicialSet, n: usize, piece: usize) -> String {
        match labels {
            Labels::Explicit(l) => l[n][piece].clone(),
            Labels::Tuples { names, sep } => tuple_label(shape.key(n, piece).iter().map(|&i| names[i].as_str()), sep),
        }
    }

    pub fn subset(&self, n: usize, piece: usize) -> &PointSet {
        &self.subsets[n][piece]
    }

    pub fn subsets(&self, n: usize) -> &[PointSet] {
        &self.subsets[n]
    }

    /// Same pieces with one degree-0 piece (and everything built on it)
    /// removed. Useful for exhibiting failures of the covering conditions.
    pub fn without_vertex(&self, vertex: usize) -> Result<Self> {
        let depth = self.depth();
        let keep: Vec<Vec<usize>> = (0..=depth)
            .map(|n| {
                (0..self.piece_count(n))
                    .filter(|&p| vertices_of(&self.shape, n, p).iter().all(|&v| v != vertex))
                    .collect()
            })
            .collect();
        let renumber: Vec<HashMap<usize, usize>> =
            keep.iter().map(|k| k.iter().enumerate().map(|(new, &old)| (old, new)).collect()).collect();
        let mut keys = Vec::new();
        let mut faces = Vec::new();
        let mut degens = Vec::new();
        for n in 0..=depth {
            keys.push(keep[n].iter().map(|&p| self.shape.key(n, p).to_vec()).collect());
            let mut f = Vec::new();
            let mut s = Vec::new();
            for &p in &keep[n] {
                for i in 0..=n {
                    if n > 0 {
                        f.push(renumber[n - 1][&self.shape.face(n, i, p)]);
                    }
                    if n < depth {
                        s.push(renumber[n + 1][&self.shape.degeneracy(n, i, p)]);
                    }
                }
            }
            faces.push(f);
            degens.push(s);
        }
        let shape = TruncSimplicialSet::new(depth, keys, faces, degens)?;
        let labels = keep.iter().enumerate().map(|(n, k)| k.iter().map(|&p| self.label(n, p)).collect()).collect();
        let subsets = keep.iter().enumerate().map(|(n, k)| k.iter().map(|&p| self.subsets[n][p].clone()).collect()).collect();
        Self::from_parts(self.base.clone(), shape, labels, subsets)
    }
}

// The degree-0 pieces a piece lies over (iterated last-vertex faces).
fn vertices_of(s: &TruncSimplicialSet, n: usize, piece: usize) -> Vec<usize> {
    (0..=n)
        .map(|k| {
            // vertex k: delete every other position
            let mut c = piece;
            let mut deg = n;
            let mut pos = k;
            while deg > 0 {
                if pos < deg {
                    c = s.face(deg, deg, c);
                } else {
                    c = s.face(deg, 0, c);
                    pos -= 1;
                }
                deg -= 1;
            }
            c
        })
        .collect()
}

fn intersect_all<'a>(universe: usize, sets: impl IntoIterator<Item = &'a PointSet>) -> PointSet {
    let mut acc = PointSet::full(universe);
    for s in sets {
        acc.intersect_with(s);
    }
    acc
}

/// Čech hypercovering of an arbitrary family of open sets; degree `n`
/// pieces are ordered `(n+1)`-tuples of members with nonempty intersection.
/// The family need not cover (so the result may fail the covering check).
pub fn cech_hypercover_of(
    base: &Arc<FiniteSpace>,
    labels: &[String],
    members: &[PointSet],
    depth: usize,
) -> Result<Hypercovering> {
    let shape = TruncSimplicialSet::from_tuples(members.len(), depth, |t| {
        !intersect_all(base.len(), t.iter().map(|&i| &members[i])).is_empty()
    })?;
    let subsets = (0..=depth)
        .map(|n| shape.keys(n).iter().map(|k| intersect_all(base.len(), k.iter().map(|&i| &members[i]))).collect())
        .collect();
    Hypercovering::assemble(base.clone(), shape, Labels::Tuples { names: labels.to_vec(), sep: "," }, subsets)
}

pub fn cech_hypercover(cover: &OpenCover, depth: usize) -> Result<Hypercovering> {
    cech_hypercover_of(cover.space(), cover.labels(), cover.members(), depth)
}

/// McCord hypercovering: degree `n` pieces are chains `x_0 ≤ .. ≤ x_n` of
/// the specialization preorder carrying `V_{x_n}`.
pub fn mccord_hypercover(space: &Arc<FiniteSpace>, depth: usize) -> Result<Hypercovering> {
    let p = space.specialization_preorder();
    let shape = TruncSimplicialSet::from_tuples(space.len(), depth, |t| t.windows(2).all(|w| p.leq(w[0], w[1])))?;
    let labels = Labels::Tuples { names: space.points().to_vec(), sep: "≤" };
    let subsets = (0..=depth)
        .map(|n| shape.keys(n).iter().map(|k| space.min_open(*k.last().expect("nonempty chain")).clone()).collect())
        .collect();
    Hypercovering::assemble(space.clone(), shape, labels, subsets)
}

fn tuple_label<'a>(parts: impl Iterator<Item = &'a str>, sep: &str) -> String {
    format!("({})", parts.collect::<Vec<_>>().join(sep))
}

/// Outcome of comparing level `degree` with the matching object built
/// from level `degree - 1`, pointwise over the base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelCheck {
    pub degree: usize,
    /// Points `(y, x)` of the matching object: `y` a compatible tuple of
    /// lower pieces, `x` in their common subset.
    pub matching_points: usize,
    /// Points `(P, x)` of the level, `x ∈ subset(P)`.
    pub piece_points: usize,
    pub covering: bool,
    pub bijective: bool,
    /// A matching point hit by no piece: face tuple labels and base point.
    pub uncovered: Option<(Vec<String>, String)>,
    /// A matching point hit by at least two pieces.
    pub overcovered: Option<(Vec<String>, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperReport {
    /// Degree-0 pieces cover the base.
    pub covers_base: bool,
    pub uncovered_points: Vec<String>,
    /// One entry per degree `1..=depth`.
    pub levels: Vec<LevelCheck>,
}

impl HyperReport {
    /// Base covering plus the covering condition at every checked level.
    pub fn all_covering(&self) -> bool {
        self.covers_base && self.levels.iter().all(|l| l.covering)
    }

    pub fn all_bijective(&self) -> bool {
        self.levels.iter().all(|l| l.bijective)
    }
}

/// Checks the covering conditions of `h` at every level its truncation
/// allows. Never fails; failures come back as witnesses.
pub fn verify_hyper(h: &Hypercovering) -> HyperReport {
    let base = &h.base;
    let covered = h.subsets[0].iter().fold(PointSet::empty(base.len()), |mut acc, s| {
        acc.union_with(s);
        acc
    });
    let uncovered_points = base.ids(&base.full_set().difference(&covered));
    let levels = (1..=h.depth()).map(|m| check_level(h, m)).collect();
    HyperReport { covers_base: uncovered_points.is_empty(), uncovered_points, levels }
}

fn check_level(h: &Hypercovering, m: usize) -> LevelCheck {
    let s = &h.shape;
    let lower = h.piece_count(m - 1);
    let (group_start, grouped) = if m >= 2 {
        group_by(lower, h.piece_count(m - 2), |c| s.face(m - 1, 0, c))
    } else {
        (vec![0, lower], (0..lower).collect())
    };
    let (piece_start, pieces) = group_by(h.piece_count(m), lower, |p| s.face(m, 0, p));
    let mut walk = MatchingWalk {
        h,
        m,
        group_start,
        grouped,
        piece_start,
        pieces,
        candidates: Vec::new(),
        tuple: vec![0; m + 1],
        common: vec![h.base.full_set(); m + 2],
        matching_points: 0,
        uncovered: None,
        overcovered: None,
    };
    walk.extend(0);
    let MatchingWalk { matching_points, uncovered, overcovered, .. } = walk;
    LevelCheck {
        degree: m,
        matching_points,
        piece_points: h.subsets[m].iter().map(PointSet::len).sum(),
        covering: uncovered.is_none(),
        bijective: uncovered.is_none() && overcovered.is_none(),
        uncovered,
        overcovered,
    }
}

// Counting sort of `0..items` by `key`, as (group offsets, items).
fn group_by(items: usize, groups: usize, key: impl Fn(usize) -> usize) -> (Vec<usize>, Vec<usize>) {
    let mut start = vec![0; groups + 1];
    for c in 0..items {
        start[key(c) + 1] += 1;
    }
    for g in 0..groups {
        start[g + 1] += start[g];
    }
    let mut fill = start.clone();
    let mut grouped = vec![0; items];
    for c in 0..items {
        let g = key(c);
        grouped[fill[g]] = c;
        fill[g] += 1;
    }
    (start, grouped)
}

// Depth-first enumeration of matching tuples of degree m-1 pieces, pruned
// as soon as the running intersection of their subsets is empty.
struct MatchingWalk<'a> {
    h: &'a Hypercovering,
    m: usize,
    // degree m-1 pieces grouped by d_0 (one group when m = 1)
    group_start: Vec<usize>,
    grouped: Vec<usize>,
    // degree m pieces grouped by d_0
    piece_start: Vec<usize>,
    pieces: Vec<usize>,
    // degree m pieces whose d_0, d_1 agree with the current tuple
    candidates: Vec<usize>,
    tuple: Vec<usize>,
    // common[j] = intersection of the subsets of tuple[..j]
    common: Vec<PointSet>,
    matching_points: usize,
    uncovered: Option<(Vec<String>, String)>,
    overcovered: Option<(Vec<String>, String)>,
}

impl MatchingWalk<'_> {
    fn extend(&mut self, j: usize) {
        let (h, m) = (self.h, self.m);
        let s = &h.shape;
        if j == m + 1 {
            self.visit();
            return;
        }
        if j == 2 {
            let (y0, y1) = (self.tuple[0], self.tuple[1]);
            self.candidates.clear();
            let group = &self.pieces[self.piece_start[y0]..self.piece_start[y0 + 1]];
            self.candidates.extend(group.iter().copied().filter(|&p| s.face(m, 1, p) == y1));
        }
        let (lo, hi) = if m >= 2 && j >= 1 {
            let g = s.face(m - 1, j - 1, self.tuple[0]);
            (self.group_start[g], self.group_start[g + 1])
        } else {
            (0, self.grouped.len())
        };
        for idx in lo..hi {
            let y = self.grouped[idx];
            if m >= 2 && (1..j).any(|i| s.face(m - 1, i, y) != s.face(m - 1, j - 1, self.tuple[i])) {
                continue;
            }
            let next = self.common[j].intersection(&h.subsets[m - 1][y]);
            if next.is_empty() {
                continue;
            }
            self.tuple[j] = y;
            self.common[j + 1] = next;
            self.extend(j + 1);
        }
    }

    fn visit(&mut self) {
        let (h, m) = (self.h, self.m);
        let s = &h.shape;
        let common = &self.common[m + 1];
        self.matching_points += common.len();
        let t = self.tuple.as_slice();
        let over: &[usize] = if m == 1 {
            &self.pieces[self.piece_start[t[0]]..self.piece_start[t[0] + 1]]
        } else {
            &self.candidates
        };
        let mut covered = PointSet::empty(h.base.len());
        let mut twice = PointSet::empty(h.base.len());
        for &p in over {
            if s.face_tuple(m, p) != t {
                continue;
            }
            let piece = &h.subsets[m][p];
            twice.union_with(&covered.intersection(piece));
            covered.union_with(piece);
        }
        let describe = |x: usize| (t.iter().map(|&q| h.label(m - 1, q)).collect(), h.base.points()[x].clone());
        if self.uncovered.is_none() {
            if let Some(x) = common.difference(&covered).first() {
                self.uncovered = Some(describe(x));
            }
        }
        if self.overcovered.is_none() {
            if let Some(x) = common.intersection(&twice).first() {
                self.overcovered = Some(describe(x));
            }
        }
    }
}

/// Levelwise connected components of a hypercovering.
#[derive(Clone, Debug)]
pub struct Gamma {
    pub set: Arc<TruncSimplicialSet>,
    /// `cells[n][c] = (piece, component of its subset)`.
    pub cells: Vec<Vec<(usize, PointSet)>>,
    // cell_of[n][piece] = first cell of that piece; its components follow
    first_cell: Vec<Vec<usize>>,
}

impl Gamma {
    /// Cell of the component of `piece` containing base point `x`.
    pub fn cell_containing(&self, n: usize, piece: usize, x: usize) -> Option<usize> {
        let start = self.first_cell[n][piece];
        self.cells[n][start..]
            .iter()
            .take_while(|(p, _)| *p == piece)
            .position(|(_, comp)| comp.contains(x))
            .map(|k| start + k)
    }
}

/// Applies π₀ levelwise. Cell keys are `[piece, component index]`.
pub fn gamma(h: &Hypercovering) -> Result<Gamma> {
    let depth = h.depth();
    let mut cells: Vec<Vec<(usize, PointSet)>> = Vec::with_capacity(depth + 1);
    let mut keys = Vec::with_capacity(depth + 1);
    let mut first_cell = Vec::with_capacity(depth + 1);
    for n in 0..=depth {
        let mut level = Vec::new();
        let mut level_keys = Vec::new();
        let mut firsts = Vec::new();
        for (p, s) in h.subsets[n].iter().enumerate() {
            firsts.push(level.len());
            for (k, comp) in h.base.components_of(s).into_iter().enumerate() {
                level_keys.push(vec![p, k]);
                level.push((p, comp));
            }
        }
        cells.push(level);
        keys.push(level_keys);
        first_cell.push(firsts);
    }
    let partial = Gamma { set: Arc::new(TruncSimplicialSet::from_tuples(0, 0, |_| true)?), cells, first_cell };
    let mut faces = vec![Vec::new(); depth + 1];
    let mut degens = vec![Vec::new(); depth + 1];
    for n in 0..=depth {
        for (p, comp) in &partial.cells[n] {
            let x = comp.first().expect("components are nonempty");
            for i in 0..=n {
                if n > 0 {
                    let q = h.shape.face(n, i, *p);
                    faces[n].push(partial.cell_containing(n - 1, q, x).expect("faces are inclusions"));
                }
                if n < depth {
                    let q = h.shape.degeneracy(n, i, *p);
                    degens[n].push(partial.cell_containing(n + 1, q, x).expect("degeneracies are inclusions"));
                }
            }
        }
    }
    let set = TruncSimplicialSet::new(depth, keys, faces, degens)?;
    Ok(Gamma { set: Arc::new(set), ..partial })
}

/// Piece maps commuting with the structure maps and landing in larger
/// subsets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypercoverMorphism {
    pub levels: Vec<Vec<usize>>,
}

impl HypercoverMorphism {
    pub fn identity(h: &Hypercovering) -> Self {
        Self { levels: (0..=h.depth()).map(|n| (0..h.piece_count(n)).collect()).collect() }
    }

    /// Verifies the morphism conditions and returns the map on shapes.
    pub fn check(&self, src: &Hypercovering, dst: &Hypercovering) -> Result<SimplicialMap> {
        if !same_base(src, dst) {
            return Err(HypercoverError::BaseMismatch);
        }
        let map = SimplicialMap::new(src.shape.clone(), dst.shape.clone(), self.levels.clone())?;
        for n in 0..=src.depth() {
            for (p, &q) in self.levels[n].iter().enumerate() {
                if !src.subsets[n][p].is_subset(&dst.subsets[n][q]) {
                    return Err(HypercoverError::NotAnInclusion {
                        degree: n,
                        piece: src.label(n, p),
                        map: "the morphism".into(),
                    });
                }
            }
        }
        Ok(map)
    }

    /// The induced map `Γ(src) → Γ(dst)`.
    pub fn gamma_map(&self, src: &Gamma, dst: &Gamma) -> Result<SimplicialMap> {
        let levels = src
            .cells
            .iter()
            .enumerate()
            .map(|(n, cells)| {
                cells
                    .iter()
                    .map(|(p, comp)| {
                        let x = comp.first().expect("components are nonempty");
                        dst.cell_containing(n, self.levels[n][*p], x).expect("morphism pieces are inclusions")
                    })
                    .collect()
            })
            .collect();
        Ok(SimplicialMap::new(src.set.clone(), dst.set.clone(), levels)?)
    }
}

fn same_base(a: &Hypercovering, b: &Hypercovering) -> bool {
    (Arc::ptr_eq(&a.base, &b.base) || a.base == b.base) && a.depth() == b.depth()
}

/// Builds a morphism `src → dst` level by level. Degenerate pieces are
/// forced by the lower levels; every other piece goes to the dst piece
/// with the required faces whose subset contains it, preferring the
/// smallest such subset and then the smallest label index. Also returns
/// the induced map on levelwise components.
pub fn hypercover_morphism(src: &Hypercovering, dst: &Hypercovering) -> Result<(HypercoverMorphism, SimplicialMap)> {
    if !same_base(src, dst) {
        return Err(HypercoverError::BaseMismatch);
    }
    let (s, t) = (&src.shape, &dst.shape);
    let mut levels: Vec<Vec<usize>> = Vec::with_capacity(src.depth() + 1);
    for n in 0..=src.depth() {
        let mut by_faces: HashMap<&[usize], Vec<usize>> = HashMap::new();
        if n > 0 {
            for q in 0..dst.piece_count(n) {
                by_faces.entry(t.face_tuple(n, q)).or_default().push(q);
            }
        }
        // degenerate piece -> (j, lower piece) with piece = s_j(lower)
        let mut degenerate: HashMap<usize, (usize, usize)> = HashMap::new();
        if n > 0 {
            for lower in 0..src.piece_count(n - 1) {
                for j in 0..n {
                    degenerate.entry(s.degeneracy(n - 1, j, lower)).or_insert((j, lower));
                }
            }
        }
        let mut level = Vec::with_capacity(src.piece_count(n));
        for p in 0..src.piece_count(n) {
            let image = if let Some(&(j, lower)) = degenerate.get(&p) {
                t.degeneracy(n - 1, j, levels[n - 1][lower])
            } else {
                let all: Vec<usize>;
                let candidates: &[usize] = if n == 0 {
                    all = (0..dst.piece_count(0)).collect();
                    &all
                } else {
                    let want: Vec<usize> = s.face_tuple(n, p).iter().map(|&f| levels[n - 1][f]).collect();
                    by_faces.get(want.as_slice()).map_or(&[][..], Vec::as_slice)
                };
                candidates
                    .iter()
                    .copied()
                    .filter(|&q| src.subsets[n][p].is_subset(&dst.subsets[n][q]))
                    .min_by_key(|&q| (dst.subsets[n][q].len(), q))
                    .ok_or_else(|| HypercoverError::NoMorphismFound { degree: n, piece: src.label(n, p) })?
            };
            level.push(image);
        }
        levels.push(level);
    }
    let morphism = HypercoverMorphism { levels };
    morphism.check(src, dst)?;
    let gamma_map = morphism.gamma_map(&gamma(src)?, &gamma(dst)?)?;
    Ok((morphism, gamma_map))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;
    use crate::homology::homology_map;

    fn labels_at(h: &Hypercovering, n: usize) -> Vec<String> {
        (0..h.piece_count(n)).map(|p| h.label(n, p)).collect()
    }

    #[test]
    fn trivial_cover_one_piece_per_degree() {
        let x = generate::four_circle();
        let h = cech_hypercover(&OpenCover::trivial(&x).unwrap(), 3).unwrap();
        for n in 0..=3 {
            assert_eq!(h.piece_count(n), 1);
            assert!(h.subset(n, 0).is_full());
        }
        let g = gamma(&h).unwrap();
        assert_eq!(g.set.cell_counts(), vec![1, 1, 1, 1]);
    }

    #[test]
    fn finest_cech_counts() {
        let x = generate::four_circle();
        let h = cech_hypercover(&OpenCover::finest(&x), 2).unwrap();
        assert_eq!(h.piece_count(0), 4);
        assert_eq!(h.piece_count(1), 14);
        let bd = (0..14).find(|&p| h.label(1, p) == "(b,d)").unwrap();
        assert_eq!(x.ids(h.subset(1, bd)), vec!["a", "c"]);
    }

    #[test]
    fn two_set_cover_pieces() {
        let x = generate::four_circle();
        let cover =
            OpenCover::new(x.clone(), vec![x.subset(&["a", "b", "c"]).unwrap(), x.subset(&["a", "d", "c"]).unwrap()])
                .unwrap();
        let h = cech_hypercover(&cover, 1).unwrap();
        assert_eq!(h.piece_count(1), 4);
        assert_eq!(x.ids(h.subset(1, 1)), vec!["a", "c"]);
        assert_eq!(x.ids(h.subset(1, 2)), vec!["a", "c"]);
    }

    #[test]
    fn mccord_pieces() {
        let x = generate::four_circle();
        let h = mccord_hypercover(&x, 1).unwrap();
        assert_eq!(labels_at(&h, 0), vec!["(a)", "(b)", "(c)", "(d)"]);
        let mut edges = labels_at(&h, 1);
        edges.sort();
        assert_eq!(edges, vec!["(a≤a)", "(b≤a)", "(b≤b)", "(b≤c)", "(c≤c)", "(d≤a)", "(d≤c)", "(d≤d)"]);

        let s = generate::sierpinski();
        let h = mccord_hypercover(&s, 1).unwrap();
        assert_eq!(labels_at(&h, 1), vec!["(0≤0)", "(0≤1)", "(1≤1)"]);
        assert_eq!(s.ids(h.subset(1, 1)), vec!["1"]);
        assert_eq!(mccord_hypercover(&generate::discrete(1), 3).unwrap().shape().cell_counts(), vec![1, 1, 1, 1]);
    }

    #[test]
    fn cech_is_covering_and_bijective() {
        let x = generate::four_circle();
        let r = verify_hyper(&cech_hypercover(&OpenCover::finest(&x), 3).unwrap());
        assert!(r.all_covering() && r.all_bijective(), "{r:?}");
        assert_eq!(r.levels.len(), 3);
    }

    #[test]
    fn dropping_a_member_breaks_base_covering() {
        let x = generate::four_circle();
        let h = cech_hypercover(&OpenCover::finest(&x), 2).unwrap();
        let b = x.point_index("b").unwrap();
        let r = verify_hyper(&h.without_vertex(b).unwrap());
        assert!(!r.covers_base);
        assert_eq!(r.uncovered_points, vec!["b"]);
    }

    #[test]
    fn mccord_level_one_not_covering_over_strict_relation() {
        // the pair (V_0, V_1) matches over point 1 but no chain has those faces
        let r = verify_hyper(&mccord_hypercover(&generate::sierpinski(), 2).unwrap());
        assert!(r.covers_base);
        assert!(!r.levels[0].covering);
        assert_eq!(r.levels[0].matching_points, 5);
        assert_eq!(r.levels[0].piece_points, 4);
        // discrete spaces have no strict relations
        let r = verify_hyper(&mccord_hypercover(&generate::discrete(3), 3).unwrap());
        assert!(r.all_covering() && r.all_bijective());
    }

    #[test]
    fn gamma_splits_disconnected_pieces() {
        let x = generate::four_circle();
        let h = cech_hypercover(&OpenCover::finest(&x), 3).unwrap();
        let g = gamma(&h).unwrap();
        let bd = (0..h.piece_count(1)).find(|&p| h.label(1, p) == "(b,d)").unwrap();
        assert_eq!(g.cells[1].iter().filter(|(p, _)| *p == bd).count(), 2);
        let c = crate::simplicial::normalized_chains(&g.set, 2).unwrap();
        assert_eq!(crate::homology::homology(&c, 2).unwrap().betti(), vec![1, 1, 0]);
    }

    #[test]
    fn mccord_to_finest_cech() {
        let x = generate::four_circle();
        let src = mccord_hypercover(&x, 3).unwrap();
        let dst = cech_hypercover(&OpenCover::finest(&x), 3).unwrap();
        let (m, g) = hypercover_morphism(&src, &dst).unwrap();
        for n in 0..=3 {
            for p in 0..src.piece_count(n) {
                assert_eq!(src.shape().key(n, p), dst.shape().key(n, m.levels[n][p]));
            }
        }
        let hm = homology_map(&g, 2).unwrap();
        assert!(hm.degrees[0].is_iso && hm.degrees[1].is_iso);
    }

    #[test]
    fn identity_and_collapse() {
        let s = generate::sierpinski();
        let src = mccord_hypercover(&s, 2).unwrap();
        let id = HypercoverMorphism::identity(&src);
        assert!(id.check(&src, &src).is_ok());
        let dst = cech_hypercover(&OpenCover::trivial(&s).unwrap(), 2).unwrap();
        let (m, g) = hypercover_morphism(&src, &dst).unwrap();
        assert!(m.levels.iter().all(|l| l.iter().all(|&q| q == 0)));
        assert_eq!(g.target().cell_counts(), vec![1, 1, 1]);
    }

    #[test]
    fn no_morphism_into_finer_cover() {
        let x = generate::four_circle();
        let src = cech_hypercover(&OpenCover::trivial(&x).unwrap(), 1).unwrap();
        let dst = mccord_hypercover(&x, 1).unwrap();
        assert_eq!(
            hypercover_morphism(&src, &dst).unwrap_err(),
            HypercoverError::NoMorphismFound { degree: 0, piece: "(X)".into() }
        );
    }
}
