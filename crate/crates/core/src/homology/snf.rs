//! Smith normal form over the integers.
//!
//! Pivoting picks the nonzero entry of smallest absolute value in the
//! remaining block (first in row-major order), clears its row and column
//! by Euclidean steps, and repeats until the pivot divides the rest of the
//! block. Entries are arbitrary precision throughout.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntegerMatrix;

/// `left · m · right = diag(diagonal)` with `left`, `right` unimodular.
#[derive(Clone, Debug)]
pub struct SmithNormalForm {
    /// `min(rows, cols)` entries, `d_1 | d_2 | ..`, nonnegative, zeros last.
    pub diagonal: Vec<BigInt>,
    pub rank: usize,
    pub left: IntegerMatrix,
    pub left_inverse: IntegerMatrix,
    pub right: IntegerMatrix,
    pub right_inverse: IntegerMatrix,
}

impl SmithNormalForm {
    /// Nonzero diagonal entries.
    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.diagonal[..self.rank]
    }

    pub fn diagonal_matrix(&self) -> IntegerMatrix {
        let mut d = IntegerMatrix::zeros(self.left.rows(), self.right.cols());
        for (i, v) in self.diagonal.iter().enumerate() {
            d.set(i, i, v.clone());
        }
        d
    }

    /// Re-checks the factorization, the divisibility chain and that both
    /// transforms have integer inverses (hence determinant ±1).
    pub fn verify(&self, m: &IntegerMatrix) -> Result<(), String> {
        if self.left.mul(m).mul(&self.right) != self.diagonal_matrix() {
            return Err("left · m · right is not the diagonal".into());
        }
        if !self.left.mul(&self.left_inverse).is_identity() {
            return Err("left transform is not unimodular".into());
        }
        if !self.right.mul(&self.right_inverse).is_identity() {
            return Err("right transform is not unimodular".into());
        }
        let nz = self.invariant_factors();
        if nz.iter().any(|d| !d.is_positive()) || self.diagonal[self.rank..].iter().any(|d| !d.is_zero()) {
            return Err("diagonal is not positive-then-zero".into());
        }
        if nz.windows(2).any(|w| !w[1].is_multiple_of(&w[0])) {
            return Err("diagonal is not a divisibility chain".into());
        }
        Ok(())
    }
}

struct Transforms {
    left: IntegerMatrix,
    left_inverse: IntegerMatrix,
    right: IntegerMatrix,
    right_inverse: IntegerMatrix,
}

struct Engine {
    a: IntegerMatrix,
    t: Option<Transforms>,
}

impl Engine {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        if let Some(t) = &mut self.t {
            t.left.swap_rows(i, j);
            t.left_inverse.swap_cols(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        if let Some(t) = &mut self.t {
            t.right.swap_cols(i, j);
            t.right_inverse.swap_rows(i, j);
        }
    }

    /// row[dst] += q · row[src]
    fn row_op(&mut self, dst: usize, src: usize, q: &BigInt) {
        self.a.add_row_multiple(dst, src, q);
        if let Some(t) = &mut self.t {
            t.left.add_row_multiple(dst, src, q);
            t.left_inverse.add_col_multiple(src, dst, &-q);
        }
    }

    /// col[dst] += q · col[src]
    fn col_op(&mut self, dst: usize, src: usize, q: &BigInt) {
        self.a.add_col_multiple(dst, src, q);
        if let Some(t) = &mut self.t {
            t.right.add_col_multiple(dst, src, q);
            t.right_inverse.add_row_multiple(src, dst, &-q);
        }
    }

    fn negate_row(&mut self, r: usize) {
        self.a.negate_row(r);
        if let Some(t) = &mut self.t {
            t.left.negate_row(r);
            t.left_inverse.negate_col(r);
        }
    }

    fn smallest_pivot(&self, from: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, BigInt)> = None;
        for r in from..self.a.rows() {
            for c in from..self.a.cols() {
                let v = self.a.get(r, c);
                if v.is_zero() {
                    continue;
                }
                let abs = v.abs();
                if best.as_ref().map_or(true, |(_, _, b)| abs < *b) {
                    let unit = abs.is_one();
                    best = Some((r, c, abs));
                    if unit {
                        return best.map(|(r, c, _)| (r, c));
                    }
                }
            }
        }
        best.map(|(r, c, _)| (r, c))
    }

    fn run(&mut self) -> (Vec<BigInt>, usize) {
        let (rows, cols) = (self.a.rows(), self.a.cols());
        let mut rank = 0;
        for t in 0..rows.min(cols) {
            loop {
                let Some((pr, pc)) = self.smallest_pivot(t) else {
                    return (self.diagonal(), rank);
                };
                self.swap_rows(t, pr);
                self.swap_cols(t, pc);
                let pivot = self.a.get(t, t).clone();
                let mut dirty = false;
                for r in t + 1..rows {
                    let v = self.a.get(r, t);
                    if !v.is_zero() {
                        let q = v.div_floor(&pivot);
                        self.row_op(r, t, &-q);
                        dirty |= !self.a.get(r, t).is_zero();
                    }
                }
                for c in t + 1..cols {
                    let v = self.a.get(t, c);
                    if !v.is_zero() {
                        let q = v.div_floor(&pivot);
                        self.col_op(c, t, &-q);
                        dirty |= !self.a.get(t, c).is_zero();
                    }
                }
                if dirty {
                    continue;
                }
                if !pivot.abs().is_one() {
                    let offender = (t + 1..rows)
                        .find(|&r| (t + 1..cols).any(|c| !self.a.get(r, c).is_multiple_of(&pivot)));
                    if let Some(r) = offender {
                        self.row_op(t, r, &BigInt::one());
                        continue;
                    }
                }
                break;
            }
            if self.a.get(t, t).is_negative() {
                self.negate_row(t);
            }
            rank += 1;
        }
        (self.diagonal(), rank)
    }

    fn diagonal(&self) -> Vec<BigInt> {
        (0..self.a.rows().min(self.a.cols())).map(|i| self.a.get(i, i).clone()).collect()
    }
}

/// Smith normal form with transforms; the result is re-verified before
/// it is returned.
pub fn smith_normal_form(m: &IntegerMatrix) -> SmithNormalForm {
    let (rows, cols) = (m.rows(), m.cols());
    let mut engine = Engine {
        a: m.clone(),
        t: Some(Transforms {
            left: IntegerMatrix::identity(rows),
            left_inverse: IntegerMatrix::identity(rows),
            right: IntegerMatrix::identity(cols),
            right_inverse: IntegerMatrix::identity(cols),
        }),
    };
    let (diagonal, rank) = engine.run();
    let t = engine.t.expect("transforms tracked");
    let snf = SmithNormalForm {
        diagonal,
        rank,
        left: t.left,
        left_inverse: t.left_inverse,
        right: t.right,
        right_inverse: t.right_inverse,
    };
    if let Err(e) = snf.verify(m) {
        panic!("Smith normal form self-check failed: {e}");
    }
    snf
}

/// Nonzero invariant factors only, without tracking transforms.
pub fn invariant_factors(m: &IntegerMatrix) -> Vec<BigInt> {
    let mut engine = Engine { a: m.clone(), t: None };
    let (mut diagonal, rank) = engine.run();
    diagonal.truncate(rank);
    diagonal
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn two_by_two_example() {
        let m = IntegerMatrix::from_rows(&[vec![2, 4], vec![6, 8]]);
        let snf = smith_normal_form(&m);
        assert_eq!(snf.diagonal, ints(&[2, 4]));
        assert_eq!(invariant_factors(&m), ints(&[2, 4]));
    }

    #[test]
    fn zero_and_identity() {
        let z = IntegerMatrix::zeros(3, 2);
        let snf = smith_normal_form(&z);
        assert_eq!(snf.diagonal, ints(&[0, 0]));
        assert_eq!(snf.rank, 0);
        let id = IntegerMatrix::identity(4);
        assert_eq!(smith_normal_form(&id).diagonal, ints(&[1, 1, 1, 1]));
    }

    #[test]
    fn divisibility_fixup_needed() {
        // diag(2, 3) is not in normal form: gcd 1, product 6
        let m = IntegerMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(smith_normal_form(&m).diagonal, ints(&[1, 6]));
    }

    #[test]
    fn empty_shapes() {
        let m = IntegerMatrix::zeros(0, 3);
        let snf = smith_normal_form(&m);
        assert!(snf.diagonal.is_empty());
        assert_eq!(snf.right.rows(), 3);
    }
}
