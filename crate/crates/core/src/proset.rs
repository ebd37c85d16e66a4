//! Finite inverse systems of finite sets and the open-partition functor π.
//!
//! `π(X)` is indexed by the open partitions of `X` ordered by refinement
//! (`𝒰 ≤ 𝒱` when `𝒱` refines `𝒰`); its value at `𝒰` is the set of blocks of
//! `𝒰`, and the bond `𝒱 → 𝒰` sends a block to the unique block of `𝒰`
//! containing it. A continuous `f : X → Y` induces the morphism whose index
//! map pulls partitions of `Y` back to `X` and whose components send a
//! nonempty preimage block `f⁻¹(B)` to `B`.

use std::collections::HashMap;
use std::sync::Arc;

use thiserror::Error;

use crate::pointset::PointSet;
use crate::space::{refines, ContinuousMap, FiniteSpace, OpenPartition, SpaceError};

/// `pi_proset` refuses spaces with more open partitions than this.
pub const MAX_PARTITIONS: usize = 2_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProSetError {
    #[error("index relation is not a partial order: {0}")]
    NotAPartialOrder(String),
    #[error("invalid bonding data: {0}")]
    InvalidBond(String),
    #[error("bonding maps are not coherent: {0}")]
    Incoherent(String),
    #[error("index poset has no maximum; maximal elements {maximal:?}")]
    NotConstant { maximal: Vec<String> },
    #[error("map is not continuous")]
    NotContinuous,
    #[error("morphisms are not composable")]
    Mismatch,
    #[error("{partitions} open partitions exceed the limit of {limit}")]
    TooManyPartitions { partitions: usize, limit: usize },
    #[error(transparent)]
    Space(#[from] SpaceError),
}

pub type Result<T, E = ProSetError> = std::result::Result<T, E>;

/// A finite partially ordered index set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexPoset {
    elements: Vec<String>,
    up: Vec<PointSet>,
}

impl IndexPoset {
    /// `up[i]` lists the `j` with `i ≤ j`.
    pub fn new(elements: Vec<String>, up: Vec<PointSet>) -> Result<Self> {
        let n = elements.len();
        if up.len() != n {
            return Err(ProSetError::NotAPartialOrder("one up-set per element required".into()));
        }
        for i in 0..n {
            if !up[i].contains(i) {
                return Err(ProSetError::NotAPartialOrder(format!("`{}` is not ≤ itself", elements[i])));
            }
            for j in up[i].iter() {
                if j != i && up[j].contains(i) {
                    return Err(ProSetError::NotAPartialOrder(format!(
                        "`{}` and `{}` are distinct but mutually ≤",
                        elements[i], elements[j]
                    )));
                }
                if !up[j].is_subset(&up[i]) {
                    return Err(ProSetError::NotAPartialOrder("relation is not transitive".into()));
                }
            }
        }
        Ok(Self { elements, up })
    }

    pub fn discrete(elements: Vec<String>) -> Self {
        let n = elements.len();
        Self { elements, up: (0..n).map(|i| PointSet::singleton(n, i)).collect() }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    #[inline]
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.up[i].contains(j)
    }

    pub fn upper_bounds(&self, i: usize, j: usize) -> PointSet {
        self.up[i].intersection(&self.up[j])
    }

    pub fn is_directed(&self) -> bool {
        !self.is_empty() && (0..self.len()).all(|i| (i..self.len()).all(|j| !self.upper_bounds(i, j).is_empty()))
    }

    pub fn maximum(&self) -> Option<usize> {
        (0..self.len()).find(|&m| (0..self.len()).all(|i| self.leq(i, m)))
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&m| self.up[m].len() == 1).collect()
    }
}

/// An inverse system of finite sets over an [`IndexPoset`].
///
/// Level elements are named for reporting; bonds act on element indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProSet {
    index: IndexPoset,
    levels: Vec<Vec<String>>,
    // bonds[i * n + j] for i ≤ j: level(j) → level(i)
    bonds: Vec<Option<Vec<usize>>>,
}

impl ProSet {
    /// Validates shapes, `bond(i ≤ i) = id` and
    /// `bond(i ≤ j) ∘ bond(j ≤ k) = bond(i ≤ k)` over every chain `i ≤ j ≤ k`.
    pub fn new(index: IndexPoset, levels: Vec<Vec<String>>, bonds: HashMap<(usize, usize), Vec<usize>>) -> Result<Self> {
        let n = index.len();
        if levels.len() != n {
            return Err(ProSetError::InvalidBond("one level per index required".into()));
        }
        let mut table = vec![None; n * n];
        for ((i, j), map) in bonds {
            if i >= n || j >= n || !index.leq(i, j) {
                return Err(ProSetError::InvalidBond(format!("bond for non-relation ({i}, {j})")));
            }
            if map.len() != levels[j].len() || map.iter().any(|&e| e >= levels[i].len()) {
                return Err(ProSetError::InvalidBond(format!(
                    "bond {} ≤ {} has the wrong shape",
                    index.elements[i], index.elements[j]
                )));
            }
            table[i * n + j] = Some(map);
        }
        for i in 0..n {
            for j in index.up[i].iter() {
                if table[i * n + j].is_none() {
                    return Err(ProSetError::InvalidBond(format!(
                        "missing bond {} ≤ {}",
                        index.elements[i], index.elements[j]
                    )));
                }
            }
        }
        let p = Self { index, levels, bonds: table };
        p.check_coherence()?;
        Ok(p)
    }

    fn check_coherence(&self) -> Result<()> {
        let n = self.index.len();
        let name = |i: usize| &self.index.elements[i];
        for i in 0..n {
            if self.bond(i, i).iter().enumerate().any(|(e, &img)| e != img) {
                return Err(ProSetError::Incoherent(format!("bond {0} ≤ {0} is not the identity", name(i))));
            }
            for j in self.index.up[i].iter() {
                let ij = self.bond(i, j);
                for k in self.index.up[j].iter() {
                    let jk = self.bond(j, k);
                    let ik = self.bond(i, k);
                    if (0..jk.len()).any(|e| ij[jk[e]] != ik[e]) {
                        return Err(ProSetError::Incoherent(format!(
                            "bonds along {} ≤ {} ≤ {} do not compose",
                            name(i),
                            name(j),
                            name(k)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// The system with a single index.
    pub fn constant(elements: Vec<String>) -> Self {
        let id = (0..elements.len()).collect();
        Self { index: IndexPoset::discrete(vec!["*".into()]), levels: vec![elements], bonds: vec![Some(id)] }
    }

    pub fn index(&self) -> &IndexPoset {
        &self.index
    }

    pub fn level(&self, i: usize) -> &[String] {
        &self.levels[i]
    }

    /// `bond(i ≤ j) : level(j) → level(i)`. Panics unless `i ≤ j`.
    pub fn bond(&self, i: usize, j: usize) -> &[usize] {
        self.bonds[i * self.index.len() + j].as_deref().expect("bond requested for i ≰ j")
    }
}

/// `constant_value` result: the maximum index and its level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstantValue {
    pub top: usize,
    pub elements: Vec<String>,
}

impl ConstantValue {
    /// `{top}` is cofinal in the index: every index lies below it.
    pub fn is_cofinal_in(&self, p: &ProSet) -> bool {
        (0..p.index.len()).all(|i| p.index.leq(i, self.top))
    }
}

/// If the index has a maximum `m`, the system is isomorphic to the
/// constant system `level(m)` (the restriction to `{m}` is cofinal).
pub fn constant_value(p: &ProSet) -> Result<ConstantValue> {
    match p.index.maximum() {
        Some(top) => Ok(ConstantValue { top, elements: p.levels[top].clone() }),
        None => Err(ProSetError::NotConstant {
            maximal: p.index.maximal_elements().into_iter().map(|i| p.index.elements[i].clone()).collect(),
        }),
    }
}

/// A morphism of inverse systems given by an index function
/// `target.index → source.index` and level components
/// `source.level(ξ(u)) → target.level(u)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProSetMorphism {
    source: Arc<ProSet>,
    target: Arc<ProSet>,
    index_map: Vec<usize>,
    components: Vec<Vec<usize>>,
}

impl ProSetMorphism {
    pub fn new(
        source: Arc<ProSet>,
        target: Arc<ProSet>,
        index_map: Vec<usize>,
        components: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let tn = target.index.len();
        if index_map.len() != tn || components.len() != tn {
            return Err(ProSetError::InvalidBond("index map must cover the target index".into()));
        }
        for u in 0..tn {
            let xi = index_map[u];
            if xi >= source.index.len() {
                return Err(ProSetError::InvalidBond(format!("index image {xi} out of range")));
            }
            if components[u].len() != source.levels[xi].len() || components[u].iter().any(|&e| e >= target.levels[u].len())
            {
                return Err(ProSetError::InvalidBond(format!(
                    "component at {} has the wrong shape",
                    target.index.elements[u]
                )));
            }
        }
        let m = Self { source, target, index_map, components };
        m.check_coherence()?;
        Ok(m)
    }

    /// For `u ≤ u'` in the target index some `k` above `ξ(u)` and `ξ(u')`
    /// must make both routes `source.level(k) → target.level(u)` agree.
    fn check_coherence(&self) -> Result<()> {
        let (src, tgt) = (&self.source, &self.target);
        for u in 0..tgt.index.len() {
            for v in tgt.index.up[u].iter() {
                let (xu, xv) = (self.index_map[u], self.index_map[v]);
                let bound = src.index.upper_bounds(xu, xv);
                let agrees = |k: usize| {
                    let (to_u, to_v) = (src.bond(xu, k), src.bond(xv, k));
                    let down = tgt.bond(u, v);
                    (0..src.levels[k].len())
                        .all(|e| down[self.components[v][to_v[e]]] == self.components[u][to_u[e]])
                };
                if !bound.iter().any(agrees) {
                    return Err(ProSetError::Incoherent(format!(
                        "square over {} ≤ {} does not commute",
                        tgt.index.elements[u], tgt.index.elements[v]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn identity(p: &Arc<ProSet>) -> Self {
        Self {
            source: p.clone(),
            target: p.clone(),
            index_map: (0..p.index.len()).collect(),
            components: p.levels.iter().map(|l| (0..l.len()).collect()).collect(),
        }
    }

    pub fn source(&self) -> &Arc<ProSet> {
        &self.source
    }

    pub fn target(&self) -> &Arc<ProSet> {
        &self.target
    }

    pub fn index_map(&self) -> &[usize] {
        &self.index_map
    }

    pub fn component(&self, u: usize) -> &[usize] {
        &self.components[u]
    }

    /// Same index map and components (and same endpoints).
    pub fn same_as(&self, other: &Self) -> bool {
        self.index_map == other.index_map
            && self.components == other.components
            && (Arc::ptr_eq(&self.source, &other.source) || self.source == other.source)
            && (Arc::ptr_eq(&self.target, &other.target) || self.target == other.target)
    }
}

/// `g ∘ f` for `f : P → Q`, `g : Q → R`.
pub fn compose(g: &ProSetMorphism, f: &ProSetMorphism) -> Result<ProSetMorphism> {
    if !(Arc::ptr_eq(&f.target, &g.source) || f.target == g.source) {
        return Err(ProSetError::Mismatch);
    }
    let index_map: Vec<usize> = g.index_map.iter().map(|&q| f.index_map[q]).collect();
    let components = (0..g.target.index.len())
        .map(|r| {
            let q = g.index_map[r];
            f.components[q].iter().map(|&e| g.components[r][e]).collect()
        })
        .collect();
    ProSetMorphism::new(f.source.clone(), g.target.clone(), index_map, components)
}

/// `π(X)` together with the partitions indexing it.
#[derive(Clone, Debug)]
pub struct PiSystem {
    space: Arc<FiniteSpace>,
    partitions: Vec<OpenPartition>,
    proset: Arc<ProSet>,
    lookup: HashMap<Vec<PointSet>, usize>,
}

fn partition_key(blocks: &[PointSet]) -> Vec<PointSet> {
    let mut k = blocks.to_vec();
    k.sort();
    k
}

impl PiSystem {
    pub fn space(&self) -> &Arc<FiniteSpace> {
        &self.space
    }

    pub fn partitions(&self) -> &[OpenPartition] {
        &self.partitions
    }

    pub fn proset(&self) -> &Arc<ProSet> {
        &self.proset
    }

    /// Index of the partition with exactly these blocks.
    pub fn index_of(&self, blocks: &[PointSet]) -> Option<usize> {
        self.lookup.get(&partition_key(blocks)).copied()
    }
}

/// Builds `π(X)` over `Part(X)`.
pub fn pi_proset(space: &Arc<FiniteSpace>, bound: usize) -> Result<PiSystem> {
    let partitions = space.enumerate_open_partitions(bound)?;
    if partitions.len() > MAX_PARTITIONS {
        return Err(ProSetError::TooManyPartitions { partitions: partitions.len(), limit: MAX_PARTITIONS });
    }
    let n = partitions.len();
    let mut up = vec![PointSet::empty(n); n];
    for (i, coarse) in partitions.iter().enumerate() {
        for (j, fine) in partitions.iter().enumerate() {
            if refines(fine.as_cover(), coarse.as_cover())? {
                up[i].insert(j);
            }
        }
    }
    let names = partitions
        .iter()
        .map(|p| p.as_cover().labels().join("|"))
        .collect();
    let index = IndexPoset::new(names, up)?;
    let levels = partitions.iter().map(|p| p.as_cover().labels().to_vec()).collect();
    let mut bonds = HashMap::new();
    for i in 0..n {
        for j in index.up[i].iter() {
            let coarse = &partitions[i];
            let map = partitions[j]
                .blocks()
                .iter()
                .map(|b| {
                    let x = b.first().expect("blocks are nonempty");
                    coarse.block_of(x).expect("coarse partition covers")
                })
                .collect();
            bonds.insert((i, j), map);
        }
    }
    let proset = Arc::new(ProSet::new(index, levels, bonds)?);
    let lookup = partitions.iter().enumerate().map(|(i, p)| (partition_key(p.blocks()), i)).collect();
    Ok(PiSystem { space: space.clone(), partitions, proset, lookup })
}

/// `π(f)` built against already computed systems for source and target.
pub fn pi_map_between(f: &ContinuousMap, source: &PiSystem, target: &PiSystem) -> Result<ProSetMorphism> {
    if !f.is_continuous() {
        return Err(ProSetError::NotContinuous);
    }
    if **f.source() != *source.space || **f.target() != *target.space {
        return Err(ProSetError::Mismatch);
    }
    let mut index_map = Vec::with_capacity(target.partitions.len());
    let mut components = Vec::with_capacity(target.partitions.len());
    for part in &target.partitions {
        // pullback partition, empty preimages dropped
        let mut pulled = Vec::new();
        let mut origin = Vec::new();
        for (b, block) in part.blocks().iter().enumerate() {
            let pre = f.preimage(block);
            if !pre.is_empty() {
                pulled.push(pre);
                origin.push(b);
            }
        }
        let xi = source.index_of(&pulled).ok_or_else(|| {
            ProSetError::InvalidBond("pullback of an open partition is missing from Part(X)".into())
        })?;
        let component = source.partitions[xi]
            .blocks()
            .iter()
            .map(|blk| origin[pulled.iter().position(|p| p == blk).expect("same blocks")])
            .collect();
        index_map.push(xi);
        components.push(component);
    }
    ProSetMorphism::new(source.proset.clone(), target.proset.clone(), index_map, components)
}

/// `π(f)`, building both systems.
pub fn pi_map(f: &ContinuousMap, bound: usize) -> Result<ProSetMorphism> {
    if !f.is_continuous() {
        return Err(ProSetError::NotContinuous);
    }
    let source = pi_proset(f.source(), bound)?;
    let target = pi_proset(f.target(), bound)?;
    pi_map_between(f, &source, &target)
}
