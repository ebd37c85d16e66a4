//! Truncated simplicial sets and simplicial maps.
//!
//! A [`TruncSimplicialSet`] of depth `N` holds finite sets of cells in
//! degrees `0..=N` with faces `d_i` (degrees `1..=N`) and degeneracies
//! `s_i` (degrees `0..N`). Every cell carries a `key`, an integer tuple
//! whose meaning depends on the construction (a chain of points, a tuple
//! of cover labels, a `(piece, component)` pair, a matching tuple, ...).

mod chains;
mod constructions;

use std::sync::Arc;

use thiserror::Error;

pub use chains::{chain_map, normalized_chains, ChainComplex};
pub use constructions::{
    cech_nerve, cech_nerve_unordered, coskeleton, coskeleton_unit, nerve_map_with_choice, nerve_refinement_map,
    order_complex, OrderComplex, T0Mode,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimplicialError {
    #[error("malformed simplicial data: {0}")]
    Shape(String),
    #[error("simplicial identity fails: {0}")]
    IdentityViolated(String),
    #[error("not a simplicial map: {0}")]
    NotASimplicialMap(String),
    #[error("depth {depth} is too shallow, {needed} needed")]
    DepthTooShallow { needed: usize, depth: usize },
    #[error("cover does not refine the target cover: member `{0}` fits in no coarse member")]
    NotARefinement(String),
    #[error("operands live on different spaces")]
    SpaceMismatch,
}

pub type Result<T, E = SimplicialError> = std::result::Result<T, E>;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncSimplicialSet {
    depth: usize,
    keys: Vec<Vec<Vec<usize>>>,
    // faces[n][c * (n + 1) + i] = d_i(c), n ≥ 1
    faces: Vec<Vec<usize>>,
    // degeneracies[n][c * (n + 1) + i] = s_i(c), n < depth
    degeneracies: Vec<Vec<usize>>,
}

impl TruncSimplicialSet {
    /// Assembles and fully verifies a truncated simplicial set.
    pub fn new(
        depth: usize,
        keys: Vec<Vec<Vec<usize>>>,
        faces: Vec<Vec<usize>>,
        degeneracies: Vec<Vec<usize>>,
    ) -> Result<Self> {
        if keys.len() != depth + 1 || faces.len() != depth + 1 || degeneracies.len() != depth + 1 {
            return Err(SimplicialError::Shape("expected depth + 1 levels".into()));
        }
        for n in 0..=depth {
            let cells = keys[n].len();
            let arity = n + 1;
            let expect_faces = if n == 0 { 0 } else { cells * arity };
            let expect_degens = if n == depth { 0 } else { cells * arity };
            if faces[n].len() != expect_faces || degeneracies[n].len() != expect_degens {
                return Err(SimplicialError::Shape(format!("structure maps at degree {n} have the wrong length")));
            }
            if n > 0 && faces[n].iter().any(|&f| f >= keys[n - 1].len()) {
                return Err(SimplicialError::Shape(format!("face out of range at degree {n}")));
            }
            if n < depth && degeneracies[n].iter().any(|&s| s >= keys[n + 1].len()) {
                return Err(SimplicialError::Shape(format!("degeneracy out of range at degree {n}")));
            }
        }
        let s = Self { depth, keys, faces, degeneracies };
        s.verify_identities()?;
        Ok(s)
    }

    /// Cells are the `(n+1)`-tuples over `0..vertices` accepted by `accept`,
    /// `d_i` deletes entry `i` and `s_i` repeats it. `accept` must be closed
    /// under deleting and repeating entries.
    pub fn from_tuples(vertices: usize, depth: usize, accept: impl Fn(&[usize]) -> bool) -> Result<Self> {
        const NONE: usize = usize::MAX;
        let missing = |t: &[usize]| {
            SimplicialError::Shape(format!("tuple {t:?} missing: predicate is not closed under faces/degeneracies"))
        };
        let mut keys: Vec<Vec<Vec<usize>>> = Vec::with_capacity(depth + 1);
        let mut vertex_cell = vec![NONE; vertices];
        keys.push(Vec::new());
        for v in 0..vertices {
            if accept(&[v]) {
                vertex_cell[v] = keys[0].len();
                keys[0].push(vec![v]);
            }
        }
        // degree n+1 cells extend a degree n parent by one vertex, so the
        // children of each parent are contiguous and sorted by last vertex
        let mut parent: Vec<Vec<usize>> = vec![Vec::new()];
        let mut child_start: Vec<Vec<usize>> = Vec::with_capacity(depth);
        let mut ext = Vec::with_capacity(depth + 1);
        for n in 1..=depth {
            let mut next = Vec::new();
            let mut up = Vec::new();
            let mut starts = Vec::with_capacity(keys[n - 1].len() + 1);
            for (q, t) in keys[n - 1].iter().enumerate() {
                starts.push(next.len());
                ext.clear();
                ext.extend_from_slice(t);
                ext.push(0);
                for v in 0..vertices {
                    ext[n] = v;
                    if accept(&ext) {
                        next.push(ext.clone());
                        up.push(q);
                    }
                }
            }
            starts.push(next.len());
            keys.push(next);
            parent.push(up);
            child_start.push(starts);
        }
        let child = |n: usize, q: usize, v: usize| -> Option<usize> {
            let (lo, hi) = (child_start[n][q], child_start[n][q + 1]);
            let range = &keys[n + 1][lo..hi];
            range.binary_search_by(|k| k[n + 1].cmp(&v)).ok().map(|i| lo + i)
        };

        let mut faces = vec![Vec::new(); depth + 1];
        for n in 1..=depth {
            let mut level = Vec::with_capacity(keys[n].len() * (n + 1));
            for (c, t) in keys[n].iter().enumerate() {
                let (p, v) = (parent[n][c], t[n]);
                if n == 1 {
                    let d0 = vertex_cell[v];
                    if d0 == NONE {
                        return Err(missing(&[v]));
                    }
                    level.push(d0);
                } else {
                    for i in 0..n {
                        let f = faces[n - 1][p * n + i];
                        level.push(child(n - 2, f, v).ok_or_else(|| {
                            let mut f_key = t.clone();
                            f_key.remove(i);
                            missing(&f_key)
                        })?);
                    }
                }
                level.push(p);
            }
            faces[n] = level;
        }

        let mut degeneracies = vec![Vec::new(); depth + 1];
        for n in 0..depth {
            let mut level = Vec::with_capacity(keys[n].len() * (n + 1));
            for (c, t) in keys[n].iter().enumerate() {
                let v = t[n];
                for i in 0..n {
                    let s = degeneracies[n - 1][parent[n][c] * n + i];
                    level.push(child(n, s, v).ok_or_else(|| {
                        let mut s_key = t.clone();
                        s_key.insert(i, t[i]);
                        missing(&s_key)
                    })?);
                }
                level.push(child(n, c, v).ok_or_else(|| {
                    let mut s_key = t.clone();
                    s_key.push(v);
                    missing(&s_key)
                })?);
            }
            degeneracies[n] = level;
        }
        Ok(Self { depth, keys, faces, degeneracies })
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn cell_count(&self, n: usize) -> usize {
        self.keys[n].len()
    }

    pub fn cell_counts(&self) -> Vec<usize> {
        self.keys.iter().map(Vec::len).collect()
    }

    pub fn key(&self, n: usize, cell: usize) -> &[usize] {
        &self.keys[n][cell]
    }

    pub fn keys(&self, n: usize) -> &[Vec<usize>] {
        &self.keys[n]
    }

    #[inline]
    pub fn face(&self, n: usize, i: usize, cell: usize) -> usize {
        self.faces[n][cell * (n + 1) + i]
    }

    #[inline]
    pub fn degeneracy(&self, n: usize, i: usize, cell: usize) -> usize {
        self.degeneracies[n][cell * (n + 1) + i]
    }

    /// `(d_0 c, .., d_n c)` for a cell of degree `n ≥ 1`.
    pub fn face_tuple(&self, n: usize, cell: usize) -> &[usize] {
        &self.faces[n][cell * (n + 1)..(cell + 1) * (n + 1)]
    }

    /// Flags cells of degree `n` lying in the image of some `s_i`.
    pub fn degenerate_flags(&self, n: usize) -> Vec<bool> {
        let mut flags = vec![false; self.cell_count(n)];
        if n > 0 {
            for &c in &self.degeneracies[n - 1] {
                flags[c] = true;
            }
        }
        flags
    }

    pub fn nondegenerate(&self, n: usize) -> Vec<usize> {
        self.degenerate_flags(n).iter().enumerate().filter(|(_, &d)| !d).map(|(c, _)| c).collect()
    }

    /// Checks every simplicial identity defined within the truncation.
    pub fn verify_identities(&self) -> Result<()> {
        let fail = |msg: String| Err(SimplicialError::IdentityViolated(msg));
        let d = |n: usize, i: usize, c: usize| self.face(n, i, c);
        let s = |n: usize, i: usize, c: usize| self.degeneracy(n, i, c);
        for n in 2..=self.depth {
            for c in 0..self.cell_count(n) {
                for j in 1..=n {
                    for i in 0..j {
                        if d(n - 1, i, d(n, j, c)) != d(n - 1, j - 1, d(n, i, c)) {
                            return fail(format!("d{i} d{j} ≠ d{} d{i} on cell {c} of degree {n}", j - 1));
                        }
                    }
                }
            }
        }
        for n in 0..self.depth {
            for c in 0..self.cell_count(n) {
                for j in 0..=n {
                    let x = s(n, j, c);
                    if d(n + 1, j, x) != c || d(n + 1, j + 1, x) != c {
                        return fail(format!("d{j} s{j} or d{} s{j} ≠ id on cell {c} of degree {n}", j + 1));
                    }
                    for i in 0..=n + 1 {
                        let ok = if i < j {
                            d(n + 1, i, x) == s(n - 1, j - 1, d(n, i, c))
                        } else if i > j + 1 {
                            d(n + 1, i, x) == s(n - 1, j, d(n, i - 1, c))
                        } else {
                            true
                        };
                        if !ok {
                            return fail(format!("d{i} s{j} on cell {c} of degree {n}"));
                        }
                    }
                }
                if n + 1 < self.depth {
                    for j in 0..=n {
                        for i in 0..=j {
                            if s(n + 1, i, s(n, j, c)) != s(n + 1, j + 1, s(n, i, c)) {
                                return fail(format!("s{i} s{j} ≠ s{} s{i} on cell {c} of degree {n}", j + 1));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Levelwise maps commuting with all faces and degeneracies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialMap {
    source: Arc<TruncSimplicialSet>,
    target: Arc<TruncSimplicialSet>,
    levels: Vec<Vec<usize>>,
}

impl SimplicialMap {
    pub fn new(source: Arc<TruncSimplicialSet>, target: Arc<TruncSimplicialSet>, levels: Vec<Vec<usize>>) -> Result<Self> {
        let bad = |m: String| Err(SimplicialError::NotASimplicialMap(m));
        if source.depth != target.depth || levels.len() != source.depth + 1 {
            return bad("source, target and level maps must share the depth".into());
        }
        for n in 0..=source.depth {
            if levels[n].len() != source.cell_count(n) || levels[n].iter().any(|&c| c >= target.cell_count(n)) {
                return bad(format!("level map {n} has the wrong shape"));
            }
        }
        for n in 0..=source.depth {
            for c in 0..source.cell_count(n) {
                let fc = levels[n][c];
                for i in 0..=n {
                    if n > 0 && levels[n - 1][source.face(n, i, c)] != target.face(n, i, fc) {
                        return bad(format!("does not commute with d{i} at cell {c} of degree {n}"));
                    }
                    if n < source.depth && levels[n + 1][source.degeneracy(n, i, c)] != target.degeneracy(n, i, fc) {
                        return bad(format!("does not commute with s{i} at cell {c} of degree {n}"));
                    }
                }
            }
        }
        Ok(Self { source, target, levels })
    }

    pub fn identity(s: &Arc<TruncSimplicialSet>) -> Self {
        Self { source: s.clone(), target: s.clone(), levels: s.keys.iter().map(|l| (0..l.len()).collect()).collect() }
    }

    pub fn source(&self) -> &Arc<TruncSimplicialSet> {
        &self.source
    }

    pub fn target(&self) -> &Arc<TruncSimplicialSet> {
        &self.target
    }

    #[inline]
    pub fn apply(&self, n: usize, cell: usize) -> usize {
        self.levels[n][cell]
    }

    pub fn level(&self, n: usize) -> &[usize] {
        &self.levels[n]
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &SimplicialMap) -> Result<SimplicialMap> {
        if !(Arc::ptr_eq(&first.target, &self.source) || first.target == self.source) {
            return Err(SimplicialError::NotASimplicialMap("maps are not composable".into()));
        }
        let levels = first.levels.iter().zip(&self.levels).map(|(f, g)| f.iter().map(|&c| g[c]).collect()).collect();
        Ok(Self { source: first.source.clone(), target: self.target.clone(), levels })
    }

    pub fn is_injective_at(&self, n: usize) -> bool {
        let mut seen = vec![false; self.target.cell_count(n)];
        self.levels[n].iter().all(|&c| !std::mem::replace(&mut seen[c], true))
    }

    pub fn is_levelwise_bijective(&self) -> bool {
        (0..=self.source.depth)
            .all(|n| self.source.cell_count(n) == self.target.cell_count(n) && self.is_injective_at(n))
    }
}
