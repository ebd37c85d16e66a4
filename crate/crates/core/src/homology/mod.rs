//! Integral homology of chain complexes and of simplicial maps.

mod matrix;
mod snf;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::simplicial::{chain_map, normalized_chains, ChainComplex, SimplicialError, SimplicialMap};

pub use matrix::IntegerMatrix;
pub use snf::{invariant_factors, smith_normal_form, SmithNormalForm};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error("∂∂ ≠ 0 at degree {degree}")]
    NotAComplex { degree: usize },
    #[error("chains stop at degree {top}, degree {needed} is needed")]
    DegreeOutOfRange { needed: usize, top: usize },
    #[error("chain matrices do not commute with ∂ at degree {degree}")]
    NotAChainMap { degree: usize },
    #[error(transparent)]
    Simplicial(#[from] SimplicialError),
}

pub type Result<T, E = HomologyError> = std::result::Result<T, E>;

/// `Z^betti ⊕ ⨁ Z/t` for the listed torsion coefficients (each `> 1`,
/// in divisibility order).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DegreeHomology {
    pub betti: usize,
    pub torsion: Vec<BigInt>,
}

impl DegreeHomology {
    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }
}

impl fmt::Display for DegreeHomology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push("Z".to_string()),
            b => parts.push(format!("Z^{b}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Homology in degrees `0..=max_degree`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomologyGroups {
    degrees: Vec<DegreeHomology>,
}

impl HomologyGroups {
    pub fn new(degrees: Vec<DegreeHomology>) -> Self {
        Self { degrees }
    }

    pub fn degrees(&self) -> &[DegreeHomology] {
        &self.degrees
    }

    pub fn degree(&self, n: usize) -> &DegreeHomology {
        &self.degrees[n]
    }

    pub fn max_degree(&self) -> usize {
        self.degrees.len() - 1
    }

    pub fn betti(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.betti).collect()
    }

    /// Betti numbers with trailing zeros removed, e.g. `(1, 1)` for a circle.
    pub fn betti_trimmed(&self) -> Vec<usize> {
        let mut b = self.betti();
        while b.len() > 1 && b.last() == Some(&0) {
            b.pop();
        }
        b
    }

    pub fn is_torsion_free(&self) -> bool {
        self.degrees.iter().all(DegreeHomology::is_free)
    }
}

impl fmt::Display for HomologyGroups {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.degrees.iter().enumerate().map(|(n, d)| format!("H{n}={d}")).collect();
        write!(f, "{}", parts.join(", "))
    }
}

fn check_range(c: &ChainComplex, max_degree: usize) -> Result<()> {
    if c.top() < max_degree + 1 {
        return Err(HomologyError::DegreeOutOfRange { needed: max_degree + 1, top: c.top() });
    }
    match c.first_nonzero_square() {
        Some(degree) if degree <= max_degree + 1 => Err(HomologyError::NotAComplex { degree }),
        _ => Ok(()),
    }
}

/// `H_n` for `n ≤ max_degree`; the complex must reach degree `max_degree + 1`.
pub fn homology(c: &ChainComplex, max_degree: usize) -> Result<HomologyGroups> {
    check_range(c, max_degree)?;
    // factors[n] = invariant factors of ∂_n, n = 1..=max_degree + 1
    let mut factors: Vec<Vec<BigInt>> = vec![Vec::new()];
    for n in 1..=max_degree + 1 {
        factors.push(invariant_factors(c.boundary(n)));
    }
    let degrees = (0..=max_degree)
        .map(|n| {
            let outgoing = factors[n].len();
            let incoming = &factors[n + 1];
            DegreeHomology {
                betti: c.rank(n) - outgoing - incoming.len(),
                torsion: incoming.iter().filter(|d| !d.is_one()).cloned().collect(),
            }
        })
        .collect();
    Ok(HomologyGroups { degrees })
}

/// Chosen generators of `H_n` and a coordinate map for cycles.
#[derive(Clone, Debug)]
pub struct HomologyBasis {
    /// Order of each generator: `Some(t)` for `Z/t`, `None` for `Z`.
    /// Torsion generators come first.
    pub orders: Vec<Option<BigInt>>,
    /// Columns are cycle representatives in chain coordinates.
    pub generators: IntegerMatrix,
    // chain coordinates of a cycle -> coordinates over all of Z_n, the
    // generator coordinates are the trailing `orders.len()` entries
    coordinates: IntegerMatrix,
    skip: usize,
}

impl HomologyBasis {
    /// Builds a basis of `H_n` of `c`; requires `c.top() ≥ n + 1`.
    pub fn new(c: &ChainComplex, n: usize) -> Self {
        let dim = c.rank(n);
        let (cycles, to_cycles) = if n == 0 {
            (IntegerMatrix::identity(dim), IntegerMatrix::identity(dim))
        } else {
            let s = smith_normal_form(c.boundary(n));
            (s.right.col_block(s.rank, dim), s.right_inverse.row_block(s.rank, dim))
        };
        // boundaries expressed over the cycle basis
        let b = to_cycles.mul(c.boundary(n + 1));
        let s = smith_normal_form(&b);
        let k = cycles.cols();
        let trivial = s.invariant_factors().iter().take_while(|d| d.is_one()).count();
        let mut orders: Vec<Option<BigInt>> = s.invariant_factors()[trivial..].iter().cloned().map(Some).collect();
        orders.extend((s.rank..k).map(|_| None));
        let generators = cycles.mul(&s.left_inverse.col_block(trivial, k));
        let coordinates = s.left.mul(&to_cycles);
        Self { orders, generators, coordinates, skip: trivial }
    }

    pub fn len(&self) -> usize {
        self.orders.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orders.is_empty()
    }

    /// Coordinates of the class of a cycle; torsion entries reduced into `0..t`.
    pub fn coordinates_of(&self, cycle: &[BigInt]) -> Vec<BigInt> {
        let all = self.coordinates.mul_vec(cycle);
        all[self.skip..]
            .iter()
            .zip(&self.orders)
            .map(|(v, o)| match o {
                Some(t) => v.mod_floor(t),
                None => v.clone(),
            })
            .collect()
    }

    pub fn groups(&self) -> DegreeHomology {
        DegreeHomology {
            betti: self.orders.iter().filter(|o| o.is_none()).count(),
            torsion: self.orders.iter().flatten().cloned().collect(),
        }
    }
}

/// Induced map in one degree, in the chosen bases.
#[derive(Clone, Debug)]
pub struct DegreeMap {
    pub source: DegreeHomology,
    pub target: DegreeHomology,
    /// Rows follow target generators, columns source generators.
    pub matrix: IntegerMatrix,
    pub is_iso: bool,
}

#[derive(Clone, Debug)]
pub struct HomologyMap {
    pub degrees: Vec<DegreeMap>,
}

impl HomologyMap {
    pub fn is_iso(&self) -> bool {
        self.degrees.iter().all(|d| d.is_iso)
    }

    /// Degrees where the induced map is not an isomorphism.
    pub fn failing_degrees(&self) -> Vec<usize> {
        self.degrees.iter().enumerate().filter(|(_, d)| !d.is_iso).map(|(n, _)| n).collect()
    }
}

fn is_unimodular(m: &IntegerMatrix) -> bool {
    m.rows() == m.cols() && {
        let f = invariant_factors(m);
        f.len() == m.rows() && f.iter().all(One::is_one)
    }
}

fn decide_iso(src: &HomologyBasis, tgt: &HomologyBasis, m: &IntegerMatrix) -> bool {
    let (gs, gt) = (src.groups(), tgt.groups());
    if gs != gt {
        return false;
    }
    // torsion generators first in both bases; torsion maps into torsion
    let t = gs.torsion.len();
    let g = src.len();
    let mut free = IntegerMatrix::zeros(g - t, g - t);
    for r in t..g {
        for c in t..g {
            free.set(r - t, c - t, m.get(r, c).clone());
        }
    }
    if !is_unimodular(&free) {
        return false;
    }
    if t == 0 {
        return true;
    }
    // torsion block T is onto ⨁ Z/t_i iff [T | diag(t_i)] has all invariant factors 1
    let mut aug = IntegerMatrix::zeros(t, 2 * t);
    for r in 0..t {
        for c in 0..t {
            aug.set(r, c, m.get(r, c).clone());
        }
        aug.set(r, t + r, gt.torsion[r].clone());
    }
    let f = invariant_factors(&aug);
    f.len() == t && f.iter().all(One::is_one)
}

/// Map induced on `H_0..=H_max_degree` by a simplicial map, computed on
/// normalized chains. Both sides need depth `≥ max_degree + 1`.
pub fn homology_map(f: &SimplicialMap, max_degree: usize) -> Result<HomologyMap> {
    let src = normalized_chains(f.source(), max_degree)?;
    let tgt = normalized_chains(f.target(), max_degree)?;
    check_range(&src, max_degree)?;
    check_range(&tgt, max_degree)?;
    let maps = chain_map(f, max_degree)?;
    for n in 1..=max_degree + 1 {
        if tgt.boundary(n).mul(&maps[n]) != maps[n - 1].mul(src.boundary(n)) {
            return Err(HomologyError::NotAChainMap { degree: n });
        }
    }
    let degrees = (0..=max_degree)
        .map(|n| {
            let bs = HomologyBasis::new(&src, n);
            let bt = HomologyBasis::new(&tgt, n);
            let images = maps[n].mul(&bs.generators);
            let mut matrix = IntegerMatrix::zeros(bt.len(), bs.len());
            for c in 0..bs.len() {
                for (r, v) in bt.coordinates_of(&images.column(c)).into_iter().enumerate() {
                    if !v.is_zero() {
                        matrix.set(r, c, v);
                    }
                }
            }
            let is_iso = decide_iso(&bs, &bt, &matrix);
            DegreeMap { source: bs.groups(), target: bt.groups(), matrix, is_iso }
        })
        .collect();
    Ok(HomologyMap { degrees })
}
