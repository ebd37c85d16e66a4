use std::collections::HashMap;

use num_bigint::BigInt;

use super::{Result, SimplicialError, SimplicialMap, TruncSimplicialSet};
use crate::homology::IntegerMatrix;

/// Finite chain complex `C_0 ← C_1 ← .. ← C_top` of free abelian groups.
///
/// `generators[n]` lists the cell ids spanning `C_n`; `boundary(n)` is
/// `∂_n : C_n → C_{n-1}` with rows indexed by degree `n-1` generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    generators: Vec<Vec<usize>>,
    boundaries: Vec<IntegerMatrix>,
}

impl ChainComplex {
    /// `boundaries[k]` is `∂_{k+1}`. Shapes are checked, `∂∂ = 0` is not
    /// (see [`ChainComplex::is_complex`]).
    pub fn new(generators: Vec<Vec<usize>>, boundaries: Vec<IntegerMatrix>) -> Result<Self> {
        if generators.is_empty() || boundaries.len() + 1 != generators.len() {
            return Err(SimplicialError::Shape("need one boundary per positive degree".into()));
        }
        for (k, b) in boundaries.iter().enumerate() {
            if b.rows() != generators[k].len() || b.cols() != generators[k + 1].len() {
                return Err(SimplicialError::Shape(format!("∂_{} has the wrong shape", k + 1)));
            }
        }
        Ok(Self { generators, boundaries })
    }

    /// Complex with generators `0..ranks[n]` in each degree.
    pub fn from_ranks(ranks: &[usize], boundaries: Vec<IntegerMatrix>) -> Result<Self> {
        Self::new(ranks.iter().map(|&r| (0..r).collect()).collect(), boundaries)
    }

    /// Highest degree with generators recorded.
    pub fn top(&self) -> usize {
        self.generators.len() - 1
    }

    pub fn rank(&self, n: usize) -> usize {
        self.generators.get(n).map_or(0, Vec::len)
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.generators.iter().map(Vec::len).collect()
    }

    pub fn generators(&self, n: usize) -> &[usize] {
        &self.generators[n]
    }

    /// `∂_n` for `1 ≤ n ≤ top`.
    pub fn boundary(&self, n: usize) -> &IntegerMatrix {
        &self.boundaries[n - 1]
    }

    /// First degree `n` where `∂_{n-1} ∂_n ≠ 0`, if any.
    pub fn first_nonzero_square(&self) -> Option<usize> {
        (2..=self.top()).find(|&n| !self.boundary(n - 1).mul(self.boundary(n)).is_zero())
    }

    pub fn is_complex(&self) -> bool {
        self.first_nonzero_square().is_none()
    }
}

/// Normalized chains through degree `max_degree + 1`.
///
/// Generators are the nondegenerate cells; `∂ = Σ (-1)^i d_i` with
/// degenerate faces dropped. Homology in degree `max_degree` needs the
/// extra degree, so `s.depth() ≥ max_degree + 1` is required.
pub fn normalized_chains(s: &TruncSimplicialSet, max_degree: usize) -> Result<ChainComplex> {
    let top = max_degree + 1;
    if s.depth() < top {
        return Err(SimplicialError::DepthTooShallow { needed: top, depth: s.depth() });
    }
    let generators: Vec<Vec<usize>> = (0..=top).map(|n| s.nondegenerate(n)).collect();
    let position: Vec<HashMap<usize, usize>> =
        generators.iter().map(|g| g.iter().enumerate().map(|(i, &c)| (c, i)).collect()).collect();
    let mut boundaries = Vec::with_capacity(top);
    for n in 1..=top {
        let mut m = IntegerMatrix::zeros(generators[n - 1].len(), generators[n].len());
        for (col, &c) in generators[n].iter().enumerate() {
            for i in 0..=n {
                if let Some(&row) = position[n - 1].get(&s.face(n, i, c)) {
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    *m.get_mut(row, col) += BigInt::from(sign);
                }
            }
        }
        boundaries.push(m);
    }
    let c = ChainComplex::new(generators, boundaries)?;
    debug_assert!(c.is_complex(), "normalized chains must square to zero");
    Ok(c)
}

/// Matrices of the induced map on normalized chains, degrees
/// `0..=max_degree + 1`; a generator whose image is degenerate maps to 0.
pub fn chain_map(f: &SimplicialMap, max_degree: usize) -> Result<Vec<IntegerMatrix>> {
    let top = max_degree + 1;
    let (src, tgt) = (f.source(), f.target());
    if src.depth() < top {
        return Err(SimplicialError::DepthTooShallow { needed: top, depth: src.depth() });
    }
    (0..=top)
        .map(|n| {
            let from = src.nondegenerate(n);
            let to = tgt.nondegenerate(n);
            let position: HashMap<usize, usize> = to.iter().enumerate().map(|(i, &c)| (c, i)).collect();
            let mut m = IntegerMatrix::zeros(to.len(), from.len());
            for (col, &c) in from.iter().enumerate() {
                if let Some(&row) = position.get(&f.apply(n, c)) {
                    m.set(row, col, 1);
                }
            }
            Ok(m)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;
    use crate::simplicial::{cech_nerve, order_complex, T0Mode};
    use crate::space::OpenCover;

    #[test]
    fn four_circle_boundary_is_signed_cycle_incidence() {
        let x = generate::four_circle();
        let oc = order_complex(&x.specialization_preorder(), 3, T0Mode::Quotient).unwrap();
        let c = normalized_chains(&oc.set, 2).unwrap();
        assert_eq!(c.ranks()[..3], [4, 4, 0]);
        // edges ba, bc, da, dc ; vertices a, b, c, d ; ∂(xy) = y - x
        let expect = IntegerMatrix::from_rows(&[
            vec![1, 0, 1, 0],
            vec![-1, -1, 0, 0],
            vec![0, 1, 0, 1],
            vec![0, 0, -1, -1],
        ]);
        assert_eq!(c.boundary(1), &expect);
        assert!(c.is_complex());
    }

    #[test]
    fn point_chains() {
        let oc = order_complex(&generate::discrete(1).specialization_preorder(), 4, T0Mode::Quotient).unwrap();
        let c = normalized_chains(&oc.set, 3).unwrap();
        assert_eq!(c.ranks(), vec![1, 0, 0, 0, 0]);
    }

    #[test]
    fn nerve_chains_square_to_zero() {
        let x = generate::four_circle();
        let n = cech_nerve(&OpenCover::finest(&x), 3).unwrap();
        let c = normalized_chains(&n, 2).unwrap();
        assert!(c.is_complex());
        assert_eq!(c.rank(1), 10);
    }

    #[test]
    fn depth_too_shallow() {
        let oc = order_complex(&generate::sierpinski().specialization_preorder(), 2, T0Mode::Raw).unwrap();
        assert_eq!(
            normalized_chains(&oc.set, 2).unwrap_err(),
            SimplicialError::DepthTooShallow { needed: 3, depth: 2 }
        );
    }
}
