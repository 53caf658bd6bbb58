//! Smith normal form over the integers, with unimodular witnesses.
//!
//! The witnesses satisfy `U * B * V = diag(s)` exactly and are retained
//! for testing and for the kernel construction of phase vectors. Pivots
//! are chosen by smallest nonzero absolute value to limit entry growth.

use crate::error::Result;
use crate::{Int, IntMatrix, Matrix};
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone)]
pub struct SnfResult {
    /// Diagonal invariants s_1 | s_2 | ... | s_t (nonnegative, zeros last),
    /// t = min(rows, cols).
    pub invariants: Vec<Int>,
    /// Number of nonzero invariants = rank of the matrix.
    pub rank: usize,
    /// Left unimodular witness (rows x rows).
    pub left: IntMatrix,
    /// Right unimodular witness (cols x cols).
    pub right: IntMatrix,
}

impl SnfResult {
    /// diag(s) as a full matrix, for witness checks.
    pub fn diagonal_matrix(&self, rows: usize, cols: usize) -> IntMatrix {
        let mut d = Matrix::zeros(rows, cols);
        for (i, s) in self.invariants.iter().enumerate() {
            d[(i, i)] = s.clone();
        }
        d
    }
}

/// Smith normal form of an integer matrix.
pub fn snf_integer(b: &IntMatrix) -> Result<SnfResult> {
    let rows = b.rows();
    let cols = b.cols();
    let mut w: Vec<Vec<Int>> = (0..rows).map(|i| b.row(i).to_vec()).collect();
    let mut left: IntMatrix = Matrix::identity(rows);
    let mut right: IntMatrix = Matrix::identity(cols);
    let t = rows.min(cols);

    let mut k = 0usize;
    while k < t {
        let Some((pi, pj)) = smallest_nonzero(&w, k) else {
            break;
        };
        swap_rows(&mut w, &mut left, k, pi);
        swap_cols(&mut w, &mut right, k, pj);

        loop {
            // clear column k below the pivot
            let mut dirty = false;
            for i in k + 1..rows {
                if !w[i][k].is_zero() {
                    let q = div_round(&w[i][k], &w[k][k]);
                    row_op(&mut w, &mut left, i, k, &q);
                    if !w[i][k].is_zero() {
                        // remainder became the new, smaller pivot candidate
                        swap_rows(&mut w, &mut left, k, i);
                        dirty = true;
                    }
                }
            }
            // clear row k right of the pivot
            for j in k + 1..cols {
                if !w[k][j].is_zero() {
                    let q = div_round(&w[k][j], &w[k][k]);
                    col_op(&mut w, &mut right, j, k, &q);
                    if !w[k][j].is_zero() {
                        swap_cols(&mut w, &mut right, k, j);
                        dirty = true;
                    }
                }
            }
            if !dirty && column_clear(&w, k, rows) && row_clear(&w, k, cols) {
                break;
            }
        }

        // enforce the divisibility chain: the pivot must divide everything
        // in the trailing block
        if let Some((i, _)) = non_divisible(&w, k, rows, cols) {
            // fold the offending row into row k and redo elimination at k
            add_row(&mut w, &mut left, k, i, &Int::one());
            continue;
        }

        if w[k][k].is_negative() {
            negate_row(&mut w, &mut left, k);
        }
        k += 1;
    }

    let mut invariants: Vec<Int> = (0..t).map(|i| w[i][i].clone()).collect();
    let rank = invariants.iter().filter(|s| !s.is_zero()).count();
    debug_assert!(invariants[rank..].iter().all(|s| s.is_zero()));
    invariants.truncate(t);
    Ok(SnfResult {
        invariants,
        rank,
        left,
        right,
    })
}

fn smallest_nonzero(w: &[Vec<Int>], k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in w.iter().enumerate().skip(k) {
        for (j, v) in row.iter().enumerate().skip(k) {
            if v.is_zero() {
                continue;
            }
            match best {
                None => best = Some((i, j)),
                Some((bi, bj)) => {
                    if v.abs() < w[bi][bj].abs() {
                        best = Some((i, j));
                    }
                }
            }
        }
    }
    best
}

fn column_clear(w: &[Vec<Int>], k: usize, rows: usize) -> bool {
    (k + 1..rows).all(|i| w[i][k].is_zero())
}

fn row_clear(w: &[Vec<Int>], k: usize, cols: usize) -> bool {
    (k + 1..cols).all(|j| w[k][j].is_zero())
}

fn non_divisible(w: &[Vec<Int>], k: usize, rows: usize, cols: usize) -> Option<(usize, usize)> {
    let pivot = &w[k][k];
    for (i, row) in w.iter().enumerate().take(rows).skip(k + 1) {
        for (j, v) in row.iter().enumerate().take(cols).skip(k + 1) {
            if !(v % pivot).is_zero() {
                return Some((i, j));
            }
        }
    }
    None
}

/// Rounded division keeps remainders at most half the divisor.
fn div_round(a: &Int, b: &Int) -> Int {
    let two = Int::from(2);
    let (q, r) = num_integer::Integer::div_rem(a, b);
    if (r.abs() * two) > b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q + Int::one()
        } else {
            q - Int::one()
        }
    } else {
        q
    }
}

fn swap_rows(w: &mut [Vec<Int>], left: &mut IntMatrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    w.swap(a, b);
    for j in 0..left.cols() {
        let t = left[(a, j)].clone();
        left[(a, j)] = left[(b, j)].clone();
        left[(b, j)] = t;
    }
}

fn swap_cols(w: &mut [Vec<Int>], right: &mut IntMatrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    for row in w.iter_mut() {
        row.swap(a, b);
    }
    for i in 0..right.rows() {
        let t = right[(i, a)].clone();
        right[(i, a)] = right[(i, b)].clone();
        right[(i, b)] = t;
    }
}

/// row i -= q * row k
fn row_op(w: &mut [Vec<Int>], left: &mut IntMatrix, i: usize, k: usize, q: &Int) {
    if q.is_zero() {
        return;
    }
    for j in 0..w[i].len() {
        let delta = q * &w[k][j];
        w[i][j] -= delta;
    }
    for j in 0..left.cols() {
        let delta = q * &left[(k, j)];
        left[(i, j)] -= delta;
    }
}

/// row k += q * row i
fn add_row(w: &mut [Vec<Int>], left: &mut IntMatrix, k: usize, i: usize, q: &Int) {
    for j in 0..w[k].len() {
        let delta = q * &w[i][j];
        w[k][j] += delta;
    }
    for j in 0..left.cols() {
        let delta = q * &left[(i, j)];
        left[(k, j)] += delta;
    }
}

/// col j -= q * col k
fn col_op(w: &mut [Vec<Int>], right: &mut IntMatrix, j: usize, k: usize, q: &Int) {
    if q.is_zero() {
        return;
    }
    for row in w.iter_mut() {
        let delta = q * &row[k];
        row[j] -= delta;
    }
    for i in 0..right.rows() {
        let delta = q * &right[(i, k)];
        right[(i, j)] -= delta;
    }
}

fn negate_row(w: &mut [Vec<Int>], left: &mut IntMatrix, k: usize) {
    for v in w[k].iter_mut() {
        *v = -std::mem::take(v);
    }
    for j in 0..left.cols() {
        let t = -left[(k, j)].clone();
        left[(k, j)] = t;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int_mat(rows: &[&[i64]]) -> IntMatrix {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Int::from(v)).collect())
                .collect(),
        )
        .unwrap()
    }

    fn check_witnesses(b: &IntMatrix, snf: &SnfResult) {
        let product = snf.left.mul(b).mul(&snf.right);
        assert_eq!(product, snf.diagonal_matrix(b.rows(), b.cols()));
        assert_eq!(snf.left.bareiss_det().abs(), Int::one());
        assert_eq!(snf.right.bareiss_det().abs(), Int::one());
    }

    fn check_chain(snf: &SnfResult) {
        for w in snf.invariants.windows(2) {
            if w[1].is_zero() {
                continue;
            }
            assert!(!w[0].is_zero(), "zero before nonzero in the chain");
            assert!((&w[1] % &w[0]).is_zero(), "chain divisibility violated");
        }
    }

    #[test]
    fn single_row_gcd() {
        let b = int_mat(&[&[1, 1, 1]]);
        let snf = snf_integer(&b).unwrap();
        assert_eq!(snf.invariants, vec![Int::from(1)]);
        assert_eq!(snf.rank, 1);
        check_witnesses(&b, &snf);
    }

    #[test]
    fn loose_path_incidence() {
        let b = int_mat(&[&[1, 1, 1, 0, 0], &[0, 0, 1, 1, 1]]);
        let snf = snf_integer(&b).unwrap();
        assert_eq!(snf.invariants, vec![Int::from(1), Int::from(1)]);
        assert_eq!(snf.rank, 2);
        check_witnesses(&b, &snf);
    }

    #[test]
    fn diagonal_already() {
        let b = int_mat(&[&[2, 0], &[0, 4]]);
        let snf = snf_integer(&b).unwrap();
        assert_eq!(snf.invariants, vec![Int::from(2), Int::from(4)]);
        check_witnesses(&b, &snf);
    }

    #[test]
    fn needs_divisibility_fix() {
        // diag(2, 3) has SNF diag(1, 6)
        let b = int_mat(&[&[2, 0], &[0, 3]]);
        let snf = snf_integer(&b).unwrap();
        assert_eq!(snf.invariants, vec![Int::from(1), Int::from(6)]);
        check_witnesses(&b, &snf);
        check_chain(&snf);
    }

    #[test]
    fn rank_deficient() {
        let b = int_mat(&[&[1, 2, 3], &[2, 4, 6], &[1, 1, 1]]);
        let snf = snf_integer(&b).unwrap();
        assert_eq!(snf.rank, 2);
        assert!(snf.invariants[2].is_zero());
        check_witnesses(&b, &snf);
        check_chain(&snf);
    }

    #[test]
    fn known_invariant_factors() {
        let b = int_mat(&[
            &[-6, 111, -36, 6],
            &[5, -672, 210, 74],
            &[0, -255, 81, 24],
            &[-7, 255, -81, -10],
        ]);
        let snf = snf_integer(&b).unwrap();
        assert_eq!(
            snf.invariants,
            vec![Int::from(1), Int::from(3), Int::from(21), Int::from(0)]
        );
        check_witnesses(&b, &snf);
        check_chain(&snf);
    }

    #[test]
    fn zero_matrix() {
        let b: IntMatrix = Matrix::zeros(2, 3);
        let snf = snf_integer(&b).unwrap();
        assert_eq!(snf.rank, 0);
        assert!(snf.invariants.iter().all(|s| s.is_zero()));
        check_witnesses(&b, &snf);
    }
}
