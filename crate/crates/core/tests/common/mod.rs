//! Independent reference computations used by the integration tests.
//! None of these reuse the library's algorithms: ranks come from
//! fraction-free elimination, invariant factors from determinantal
//! divisors, partitions and topologies from brute-force enumeration.
#![allow(dead_code)]

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use protoshape::generate;
use protoshape::space::{ContinuousMap, FiniteSpace, Preorder};
use protoshape::{IntegerMatrix, PointSet};

/// Rank over Q by Bareiss fraction-free elimination.
pub fn bareiss_rank(m: &IntegerMatrix) -> usize {
    let mut a = m.to_rows();
    let (rows, cols) = (m.rows(), m.cols());
    let mut rank = 0;
    let mut prev = BigInt::from(1);
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else { continue };
        a.swap(rank, p);
        for r in rank + 1..rows {
            for k in c + 1..cols {
                let v = (&a[rank][c] * &a[r][k] - &a[r][c] * &a[rank][k]) / &prev;
                a[r][k] = v;
            }
            a[r][c] = BigInt::zero();
        }
        prev = a[rank][c].clone();
        rank += 1;
    }
    rank
}

/// Determinant by Bareiss elimination.
pub fn bareiss_det(rows: &[Vec<BigInt>]) -> BigInt {
    let n = rows.len();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut a = rows.to_vec();
    let mut sign = 1;
    let mut prev = BigInt::from(1);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else { return BigInt::zero() };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[k][k] * &a[i][j] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    a[n - 1][n - 1].clone() * sign
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

/// Invariant factors from determinantal divisors: `D_k` is the gcd of all
/// `k × k` minors and `d_k = D_k / D_{k-1}`. Only for small matrices.
pub fn invariant_factors_by_minors(m: &IntegerMatrix) -> Vec<BigInt> {
    let rows = m.to_rows();
    let mut out = Vec::new();
    let mut prev = BigInt::from(1);
    for k in 1..=m.rows().min(m.cols()) {
        let mut g = BigInt::zero();
        for rs in subsets(m.rows(), k) {
            for cs in subsets(m.cols(), k) {
                let minor: Vec<Vec<BigInt>> =
                    rs.iter().map(|&r| cs.iter().map(|&c| rows[r][c].clone()).collect()).collect();
                g = g.gcd(&bareiss_det(&minor));
            }
        }
        if g.is_zero() {
            break;
        }
        out.push((&g / &prev).abs());
        prev = g;
    }
    out
}

/// Every subset of `0..n` as a point set.
pub fn all_subsets(n: usize) -> Vec<PointSet> {
    (0u32..1 << n).map(|mask| PointSet::from_indices(n, (0..n).filter(|i| mask >> i & 1 == 1))).collect()
}

/// Open sets straight from the definition: `U` is open iff it is a union
/// of minimal opens, i.e. `U = ∪_{x ∈ U} V_x`.
pub fn opens_by_definition(x: &FiniteSpace) -> Vec<PointSet> {
    all_subsets(x.len())
        .into_iter()
        .filter(|u| {
            let mut hull = PointSet::empty(x.len());
            for p in u.iter() {
                hull.union_with(x.min_open(p));
            }
            hull == *u
        })
        .collect()
}

/// Continuity through preimages of every open set.
pub fn continuous_by_preimage(f: &ContinuousMap) -> bool {
    let src_opens = opens_by_definition(f.source());
    opens_by_definition(f.target()).iter().all(|u| {
        let pre = PointSet::from_indices(f.source().len(), (0..f.source().len()).filter(|&x| u.contains(f.apply(x))));
        src_opens.contains(&pre)
    })
}

/// All set partitions of `0..n`, as block lists.
pub fn set_partitions(n: usize) -> Vec<Vec<PointSet>> {
    let mut out = Vec::new();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    fn go(i: usize, n: usize, blocks: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<PointSet>>) {
        if i == n {
            out.push(blocks.iter().map(|b| PointSet::from_indices(n, b.iter().copied())).collect());
            return;
        }
        for b in 0..blocks.len() {
            blocks[b].push(i);
            go(i + 1, n, blocks, out);
            blocks[b].pop();
        }
        blocks.push(vec![i]);
        go(i + 1, n, blocks, out);
        blocks.pop();
    }
    go(0, n, &mut blocks, &mut out);
    out
}

/// Open partitions by filtering all set partitions.
pub fn open_partitions_brute_force(x: &FiniteSpace) -> Vec<Vec<PointSet>> {
    let opens = opens_by_definition(x);
    set_partitions(x.len()).into_iter().filter(|p| p.iter().all(|b| opens.contains(b))).collect()
}

/// Every topology on `0..n`: families of subsets containing ∅ and the whole
/// set, closed under pairwise union and intersection.
pub fn all_topologies(n: usize) -> Vec<Arc<FiniteSpace>> {
    let subs = all_subsets(n);
    let full = subs.len() - 1;
    // the empty set (mask 0) and the full set are always present
    let middle: Vec<usize> = (1..full).collect();
    let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let mut out = Vec::new();
    for choice in 0u64..1 << middle.len() {
        let mut fam = vec![0, full];
        fam.extend(middle.iter().enumerate().filter(|(k, _)| choice >> k & 1 == 1).map(|(_, &m)| m));
        let closed = fam.iter().all(|&a| {
            fam.iter().all(|&b| fam.contains(&(a | b)) && fam.contains(&(a & b)))
        });
        if closed {
            let family = fam.iter().map(|&m| subs[m].clone()).collect();
            out.push(Arc::new(FiniteSpace::from_open_family(names.clone(), family).expect("closed family")));
        }
    }
    out
}

/// Every function `0..m → 0..n`.
pub fn all_functions(m: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..m {
        out = out.into_iter().flat_map(|f| (0..n).map(move |v| [f.clone(), vec![v]].concat())).collect();
    }
    out
}

/// Every continuous map between two spaces.
pub fn continuous_maps(x: &Arc<FiniteSpace>, y: &Arc<FiniteSpace>) -> Vec<ContinuousMap> {
    all_functions(x.len(), y.len())
        .into_iter()
        .map(|a| ContinuousMap::new(x.clone(), y.clone(), a).expect("total assignment"))
        .filter(continuous_by_preimage)
        .collect()
}

/// Bell numbers by the triangle recurrence.
pub fn bell(n: usize) -> usize {
    let mut row = vec![1usize];
    for _ in 0..n {
        let mut next = vec![*row.last().unwrap()];
        for v in &row {
            let add = next.last().unwrap() + v;
            next.push(add);
        }
        row = next;
    }
    row[0]
}

/// Every family of distinct nonempty open sets whose union is the space.
pub fn all_open_covers(x: &FiniteSpace) -> Vec<Vec<PointSet>> {
    let opens: Vec<PointSet> = opens_by_definition(x).into_iter().filter(|u| !u.is_empty()).collect();
    let mut out = Vec::new();
    for choice in 1u64..1 << opens.len() {
        let fam: Vec<PointSet> = (0..opens.len()).filter(|k| choice >> k & 1 == 1).map(|k| opens[k].clone()).collect();
        let mut union = PointSet::empty(x.len());
        for u in &fam {
            union.union_with(u);
        }
        if union.is_full() {
            out.push(fam);
        }
    }
    out
}

/// The 6-vertex triangulation of the real projective plane as a face
/// poset (faces ordered by inclusion).
pub fn projective_plane_face_poset() -> Arc<FiniteSpace> {
    let triangles: [[usize; 3]; 10] =
        [[1, 2, 3], [1, 3, 4], [1, 4, 5], [1, 5, 6], [1, 6, 2], [2, 3, 5], [3, 4, 6], [4, 5, 2], [5, 6, 3], [6, 2, 4]];
    let mut faces: Vec<Vec<usize>> = Vec::new();
    for t in &triangles {
        let mut t = t.to_vec();
        t.sort();
        for mask in 1u32..8 {
            let f: Vec<usize> = (0..3).filter(|i| mask >> i & 1 == 1).map(|i| t[i]).collect();
            if !faces.contains(&f) {
                faces.push(f);
            }
        }
    }
    let name = |f: &Vec<usize>| f.iter().map(|v| v.to_string()).collect::<String>();
    let points: Vec<String> = faces.iter().map(name).collect();
    let mut pairs = Vec::new();
    for (i, f) in faces.iter().enumerate() {
        for (j, g) in faces.iter().enumerate() {
            if f.iter().all(|v| g.contains(v)) {
                pairs.push((i, j));
            }
        }
    }
    Arc::new(FiniteSpace::from_preorder(&Preorder::closure_of(points, &pairs).expect("valid pairs")))
}

/// The spaces used across the suite: named examples plus 20 seeded random
/// spaces on 1 to 6 points.
pub fn suite() -> Vec<(String, Arc<FiniteSpace>)> {
    let mut out: Vec<(String, Arc<FiniteSpace>)> = Vec::new();
    for name in ["4circle", "sierpinski", "discrete:1", "discrete:2", "discrete:3", "discrete:4", "sphere:1", "sphere:2"] {
        out.push((name.to_string(), generate::by_name(name).expect("builtin")));
    }
    for seed in 1..=20u64 {
        let n = (seed % 6 + 1) as usize;
        out.push((format!("random:{seed},{n}"), generate::random(seed, n)));
    }
    out
}
