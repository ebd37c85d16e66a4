//! Builtin spaces: the 4-point circle, discrete spaces, the Sierpiński
//! space, minimal finite models of spheres and seeded random spaces.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::pointset::PointSet;
use crate::space::{FiniteSpace, Preorder};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerateError {
    #[error("unknown generator `{0}` (expected 4circle, discrete:n, sierpinski, sphere:n or random:seed,n)")]
    UnknownName(String),
    #[error("bad argument for `{name}`: {reason}")]
    BadArgument { name: String, reason: String },
}

fn names<I: IntoIterator<Item = S>, S: ToString>(it: I) -> Vec<String> {
    it.into_iter().map(|s| s.to_string()).collect()
}

/// Points `a, b, c, d` with opens `X, ∅, {a}, {c}, {a,b,c}, {a,d,c}, {a,c}`.
pub fn four_circle() -> Arc<FiniteSpace> {
    let opens: [&[&str]; 7] = [&["a", "b", "c", "d"], &[], &["a"], &["c"], &["a", "b", "c"], &["a", "d", "c"], &["a", "c"]];
    let opens: Vec<Vec<&str>> = opens.iter().map(|o| o.to_vec()).collect();
    Arc::new(FiniteSpace::from_open_sets(names(["a", "b", "c", "d"]), &opens).expect("4-point circle is a topology"))
}

/// `n` points `0..n`, every subset open.
pub fn discrete(n: usize) -> Arc<FiniteSpace> {
    let min_open = (0..n).map(|x| PointSet::singleton(n, x)).collect();
    Arc::new(FiniteSpace::from_min_open_sets(names(0..n), min_open).expect("discrete space"))
}

/// Points `0, 1` with opens `∅, {1}, X`.
pub fn sierpinski() -> Arc<FiniteSpace> {
    Arc::new(
        FiniteSpace::from_open_sets(names(["0", "1"]), &[vec![], vec!["1"], vec!["0", "1"]])
            .expect("Sierpinski space is a topology"),
    )
}

/// Non-Hausdorff suspension: adds two open points `p`, `q` lying above
/// every old point in the specialization preorder.
pub fn suspension(space: &FiniteSpace, p: &str, q: &str) -> Arc<FiniteSpace> {
    let n = space.len();
    let m = n + 2;
    let mut points = space.points().to_vec();
    points.push(p.to_string());
    points.push(q.to_string());
    let mut min_open: Vec<PointSet> = space
        .min_opens()
        .iter()
        .map(|v| {
            let mut w = PointSet::from_indices(m, v.iter());
            w.insert(n);
            w.insert(n + 1);
            w
        })
        .collect();
    min_open.push(PointSet::singleton(m, n));
    min_open.push(PointSet::singleton(m, n + 1));
    Arc::new(FiniteSpace::from_min_open_sets(points, min_open).expect("suspension of a valid space"))
}

/// `n`-fold non-Hausdorff suspension of the 2-point discrete space, a
/// `2n+2`-point model of the `n`-sphere. Points are `p0, q0, p1, q1, ..`.
/// `sphere(1)` is the 4-point circle up to renaming.
pub fn sphere(n: usize) -> Arc<FiniteSpace> {
    let min_open = vec![PointSet::singleton(2, 0), PointSet::singleton(2, 1)];
    let mut space = Arc::new(FiniteSpace::from_min_open_sets(names(["p0", "q0"]), min_open).expect("S0"));
    for k in 1..=n {
        space = suspension(&space, &format!("p{k}"), &format!("q{k}"));
    }
    space
}

/// Seeded random T0 space on points `0..n`.
///
/// A `ChaCha8Rng` seeded with `seed` decides, for each pair `i < j` in
/// lexicographic order, whether to add the relation `i ≤ j` (probability
/// 1/2). The space is the Alexandrov topology of the reflexive-transitive
/// closure of that DAG.
pub fn random(seed: u64, n: usize) -> Arc<FiniteSpace> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(0.5) {
                pairs.push((i, j));
            }
        }
    }
    let p = Preorder::closure_of(names(0..n), &pairs).expect("DAG closure is a preorder");
    Arc::new(FiniteSpace::from_preorder(&p))
}

/// Parses generator names as accepted by the command line.
pub fn by_name(name: &str) -> Result<Arc<FiniteSpace>, GenerateError> {
    let bad = |reason: &str| GenerateError::BadArgument { name: name.to_string(), reason: reason.to_string() };
    let (head, arg) = match name.split_once(':') {
        Some((h, a)) => (h, Some(a)),
        None => (name, None),
    };
    let number = |s: &str| s.trim().parse::<u64>().map_err(|_| bad("expected a non-negative integer"));
    match (head, arg) {
        ("4circle", None) => Ok(four_circle()),
        ("sierpinski", None) => Ok(sierpinski()),
        ("discrete", Some(a)) => Ok(discrete(number(a)? as usize)),
        ("sphere", Some(a)) => Ok(sphere(number(a)? as usize)),
        ("random", Some(a)) => {
            let (seed, n) = a.split_once(',').ok_or_else(|| bad("expected random:seed,n"))?;
            Ok(random(number(seed)?, number(n)? as usize))
        }
        _ => Err(GenerateError::UnknownName(name.to_string())),
    }
}
