use std::collections::HashMap;
use std::sync::Arc;

use super::{Result, SimplicialError, SimplicialMap, TruncSimplicialSet};
use crate::pointset::PointSet;
use crate::space::{refines, FiniteSpace, OpenCover, Preorder};

/// Whether `order_complex` first collapses `x ≤ y ≤ x` pairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum T0Mode {
    #[default]
    Quotient,
    Raw,
}

/// The McCord complex `K` of a preorder together with the preorder its
/// chains refer to (the T0 quotient unless [`T0Mode::Raw`] was asked for).
#[derive(Clone, Debug)]
pub struct OrderComplex {
    pub preorder: Preorder,
    /// True when the quotient actually merged points.
    pub quotient_applied: bool,
    pub set: TruncSimplicialSet,
}

/// Cells of degree `n` are weakly increasing chains `x_0 ≤ .. ≤ x_n`;
/// `d_i` deletes entry `i`, `s_i` repeats it. Keys are the chains.
pub fn order_complex(p: &Preorder, depth: usize, mode: T0Mode) -> Result<OrderComplex> {
    let (preorder, quotient_applied) = match mode {
        T0Mode::Raw => (p.clone(), false),
        T0Mode::Quotient => {
            let space = Arc::new(FiniteSpace::from_preorder(p));
            let (q, _) = space.t0_quotient();
            let merged = q.len() != p.len();
            (q.specialization_preorder(), merged)
        }
    };
    let set = TruncSimplicialSet::from_tuples(preorder.len(), depth, |t| t.windows(2).all(|w| preorder.leq(w[0], w[1])))?;
    Ok(OrderComplex { preorder, quotient_applied, set })
}

fn intersection_nonempty(members: &[PointSet], t: &[usize]) -> bool {
    let mut acc = members[t[0]].clone();
    for &i in &t[1..] {
        acc.intersect_with(&members[i]);
    }
    !acc.is_empty()
}

/// Čech nerve: cells of degree `n` are ordered `(n+1)`-tuples of member
/// indices (repetition allowed) with nonempty common intersection.
pub fn cech_nerve(cover: &OpenCover, depth: usize) -> Result<TruncSimplicialSet> {
    let members = cover.members();
    TruncSimplicialSet::from_tuples(members.len(), depth, |t| intersection_nonempty(members, t))
}

/// Alternative nerve model: only weakly increasing label tuples, i.e. the
/// ordered simplicial complex of the unordered nerve. Same homology as
/// [`cech_nerve`], far fewer cells.
pub fn cech_nerve_unordered(cover: &OpenCover, depth: usize) -> Result<TruncSimplicialSet> {
    let members = cover.members();
    TruncSimplicialSet::from_tuples(members.len(), depth, |t| {
        t.windows(2).all(|w| w[0] <= w[1]) && intersection_nonempty(members, t)
    })
}

/// Nerve map induced by a member assignment `fine member ↦ coarse member`
/// with `fine[i] ⊆ coarse[choice[i]]`, applied labelwise to tuples.
pub fn nerve_map_with_choice(
    fine: &OpenCover,
    coarse: &OpenCover,
    choice: &[usize],
    depth: usize,
) -> Result<SimplicialMap> {
    if fine.space() != coarse.space() {
        return Err(SimplicialError::SpaceMismatch);
    }
    if choice.len() != fine.len() {
        return Err(SimplicialError::Shape("one choice per fine member required".into()));
    }
    for (i, &c) in choice.iter().enumerate() {
        if c >= coarse.len() || !fine.members()[i].is_subset(&coarse.members()[c]) {
            return Err(SimplicialError::NotARefinement(fine.labels()[i].clone()));
        }
    }
    let source = Arc::new(cech_nerve(fine, depth)?);
    let target = Arc::new(cech_nerve(coarse, depth)?);
    let levels = (0..=depth)
        .map(|n| {
            let lookup: HashMap<&[usize], usize> =
                target.keys(n).iter().enumerate().map(|(i, k)| (k.as_slice(), i)).collect();
            source
                .keys(n)
                .iter()
                .map(|k| {
                    let image: Vec<usize> = k.iter().map(|&i| choice[i]).collect();
                    lookup[image.as_slice()]
                })
                .collect()
        })
        .collect();
    SimplicialMap::new(source, target, levels)
}

/// Canonical refinement map `N(fine) → N(coarse)`: each fine member goes
/// to the smallest containing coarse member, ties broken by label index.
/// A cover refining itself thus maps by the identity.
pub fn nerve_refinement_map(fine: &OpenCover, coarse: &OpenCover, depth: usize) -> Result<SimplicialMap> {
    if !refines(fine, coarse).map_err(|_| SimplicialError::SpaceMismatch)? {
        let bad = fine
            .members()
            .iter()
            .position(|f| !coarse.members().iter().any(|c| f.is_subset(c)))
            .expect("some member fails");
        return Err(SimplicialError::NotARefinement(fine.labels()[bad].clone()));
    }
    let choice: Vec<usize> = fine
        .members()
        .iter()
        .map(|f| {
            (0..coarse.len())
                .filter(|&c| f.is_subset(&coarse.members()[c]))
                .min_by_key(|&c| (coarse.members()[c].len(), c))
                .expect("refinement")
        })
        .collect();
    nerve_map_with_choice(fine, coarse, &choice, depth)
}

/// Enumerates matching tuples `(y_0, .., y_m)` of cells drawn from
/// `candidates` (all of degree `m - 1`) with `d_i y_j = d_{j-1} y_i` for
/// `i < j`. `face(i, c)` must return `d_i c`; it is not called when `m = 1`.
fn matching_tuples(candidates: &[usize], m: usize, face: impl Fn(usize, usize) -> usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if m == 0 {
        return out;
    }
    let mut by_d0: HashMap<usize, Vec<usize>> = HashMap::new();
    if m >= 2 {
        for &c in candidates {
            by_d0.entry(face(0, c)).or_default().push(c);
        }
    }
    let mut tuple = Vec::with_capacity(m + 1);
    fn extend(
        tuple: &mut Vec<usize>,
        m: usize,
        candidates: &[usize],
        by_d0: &HashMap<usize, Vec<usize>>,
        face: &dyn Fn(usize, usize) -> usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        let j = tuple.len();
        if j == m + 1 {
            out.push(tuple.clone());
            return;
        }
        let pool: &[usize] = if m >= 2 && j >= 1 {
            match by_d0.get(&face(j - 1, tuple[0])) {
                Some(v) => v,
                None => return,
            }
        } else {
            candidates
        };
        for &y in pool {
            if m >= 2 && (1..j).any(|i| face(i, y) != face(j - 1, tuple[i])) {
                continue;
            }
            tuple.push(y);
            extend(tuple, m, candidates, by_d0, face, out);
            tuple.pop();
        }
    }
    extend(&mut tuple, m, candidates, &by_d0, &face, &mut out);
    out
}

/// `Cosk_n(s)` truncated at `depth`: degrees `≤ n` are copied from `s`;
/// a cell of degree `m > n` is a matching tuple of degree-`(m-1)` cells
/// (its key), faces are the projections.
pub fn coskeleton(s: &TruncSimplicialSet, n: usize, depth: usize) -> Result<TruncSimplicialSet> {
    if n > s.depth() {
        return Err(SimplicialError::DepthTooShallow { needed: n, depth: s.depth() });
    }
    let copied = n.min(depth);
    let mut keys: Vec<Vec<Vec<usize>>> = (0..=copied).map(|k| s.keys(k).to_vec()).collect();
    let mut faces: Vec<Vec<usize>> = (0..=copied).map(|k| if k == 0 { Vec::new() } else { s.faces[k].clone() }).collect();
    let mut degeneracies: Vec<Vec<usize>> = (0..=copied)
        .map(|k| if k < copied { s.degeneracies[k].clone() } else { Vec::new() })
        .collect();

    for m in n + 1..=depth {
        let lower: Vec<usize> = (0..keys[m - 1].len()).collect();
        let face_lower = |i: usize, c: usize| faces[m - 1][c * m + i];
        let tuples = matching_tuples(&lower, m, face_lower);
        let lookup: HashMap<Vec<usize>, usize> = tuples.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
        faces.push(tuples.iter().flatten().copied().collect());

        // s_j : degree m-1 → m through the simplicial identities
        let k = m - 1;
        let mut degens = Vec::with_capacity(keys[k].len() * m);
        for y in 0..keys[k].len() {
            for j in 0..=k {
                let z: Vec<usize> = (0..=m)
                    .map(|i| {
                        if i == j || i == j + 1 {
                            y
                        } else if i < j {
                            degeneracies[k - 1][faces[k][y * m + i] * k + (j - 1)]
                        } else {
                            degeneracies[k - 1][faces[k][y * m + i - 1] * k + j]
                        }
                    })
                    .collect();
                let id = lookup.get(&z).copied().ok_or_else(|| {
                    SimplicialError::IdentityViolated(format!("degenerate tuple {z:?} is not matching"))
                })?;
                degens.push(id);
            }
        }
        degeneracies[k] = degens;
        degeneracies.push(Vec::new());
        keys.push(tuples);
    }
    TruncSimplicialSet::new(depth, keys, faces, degeneracies)
}

/// The unit `s → Cosk_n(s)` at the depth of `s`.
pub fn coskeleton_unit(s: &Arc<TruncSimplicialSet>, n: usize) -> Result<SimplicialMap> {
    let target = Arc::new(coskeleton(s, n, s.depth())?);
    let mut levels: Vec<Vec<usize>> = (0..=n.min(s.depth())).map(|k| (0..s.cell_count(k)).collect()).collect();
    for m in n + 1..=s.depth() {
        let lookup: HashMap<&[usize], usize> = target.keys(m).iter().enumerate().map(|(i, k)| (k.as_slice(), i)).collect();
        let level = (0..s.cell_count(m))
            .map(|c| {
                let t: Vec<usize> = s.face_tuple(m, c).iter().map(|&f| levels[m - 1][f]).collect();
                lookup[t.as_slice()]
            })
            .collect();
        levels.push(level);
    }
    SimplicialMap::new(s.clone(), target, levels)
}
