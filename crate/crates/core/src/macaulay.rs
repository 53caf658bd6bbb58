//! The Macaulay determinant-quotient construction for tensor
//! characteristic polynomials.
//!
//! For an order-k dimension-n tensor with slice polynomials
//! `F_i = (T x^{k-1})_i`, the monomial set S collects all monomials of
//! total degree d = n(k-1) - n + 1. Each monomial belongs to the class
//! S_i of the first variable whose (k-1)-th power divides it; row
//! `alpha` of the matrix M holds the coefficients of
//! `x^alpha / x_i^{k-1} * F_i`. Dropping the rows and columns of the
//! monomials divisible by exactly one such power (the reduced ones)
//! yields the submatrix M'. With one shared monomial ordering for rows
//! and columns, the characteristic polynomial of the tensor is the exact
//! quotient `det(xI - M) / det(xI' - M')`.

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::matrix::Matrix;
use crate::scalar::Scalar;
use crate::tensor::{laplacian_tensor, CubicalTensor};
use crate::{Rat, RatMatrix, RatPoly, RatTensor};
use num_traits::{One, Signed, Zero};
use std::collections::HashMap;
use std::fmt::Display;

/// The degree-d monomial basis with its partition and reduced flags.
#[derive(Debug, Clone)]
pub struct MonomialBasis {
    n: usize,
    k: usize,
    degree: usize,
    monomials: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
    class_of: Vec<usize>,
    reduced: Vec<bool>,
}

impl MonomialBasis {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Total degree d = n(k-1) - n + 1 of every basis monomial.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    /// Exponent vectors in the shared (graded-lex, descending) order.
    pub fn monomials(&self) -> &[Vec<u32>] {
        &self.monomials
    }

    /// Partition class of monomial `idx`: the first variable i with
    /// x_i^{k-1} dividing it.
    pub fn class_of(&self, idx: usize) -> usize {
        self.class_of[idx]
    }

    pub fn is_reduced(&self, idx: usize) -> bool {
        self.reduced[idx]
    }

    pub fn reduced_count(&self) -> usize {
        self.reduced.iter().filter(|&&r| r).count()
    }

    pub fn position(&self, exponents: &[u32]) -> Option<usize> {
        self.index.get(exponents).copied()
    }

    /// Human-readable monomial, e.g. `x1^2*x3`.
    pub fn monomial_string(&self, idx: usize) -> String {
        let mut parts = Vec::new();
        for (var, &e) in self.monomials[idx].iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(format!("x{}", var + 1)),
                _ => parts.push(format!("x{}^{}", var + 1, e)),
            }
        }
        parts.join("*")
    }
}

/// |S| = C(n(k-1), n-1); `None` on u128 overflow (always over any cap).
pub fn basis_size(n: usize, k: usize) -> Option<u128> {
    binomial(n * (k - 1), n - 1)
}

fn binomial(top: usize, bottom: usize) -> Option<u128> {
    if bottom > top {
        return Some(0);
    }
    let bottom = bottom.min(top - bottom);
    let mut result: u128 = 1;
    for i in 0..bottom {
        result = result.checked_mul((top - i) as u128)?;
        result /= (i + 1) as u128;
    }
    Some(result)
}

/// Enumerate the basis for an order-k dimension-n problem, refusing
/// anything larger than `cap` monomials.
pub fn build_basis(n: usize, k: usize, cap: usize) -> Result<MonomialBasis> {
    assert!(n >= 1 && k >= 2, "basis needs n >= 1, k >= 2");
    let size = basis_size(n, k);
    match size {
        Some(s) if s <= cap as u128 => {}
        _ => {
            return Err(Error::SizeGuard {
                top: n * (k - 1),
                bottom: n - 1,
                size: size.unwrap_or(u128::MAX),
                cap,
            });
        }
    }
    let degree = n * (k - 1) - n + 1;
    let threshold = (k - 1) as u32;

    let mut monomials = Vec::new();
    let mut current = vec![0u32; n];
    current[0] = degree as u32;
    loop {
        monomials.push(current.clone());
        // next exponent vector in descending lex order
        let Some(j) = (0..n - 1).rev().find(|&j| current[j] > 0) else {
            break;
        };
        let rest: u32 = current[j + 1..].iter().sum();
        current[j] -= 1;
        current[j + 1] = rest + 1;
        for v in current[j + 2..].iter_mut() {
            *v = 0;
        }
    }
    debug_assert_eq!(monomials.len() as u128, size.unwrap());

    let mut index = HashMap::with_capacity(monomials.len());
    let mut class_of = Vec::with_capacity(monomials.len());
    let mut reduced = Vec::with_capacity(monomials.len());
    for (pos, mono) in monomials.iter().enumerate() {
        index.insert(mono.clone(), pos);
        let divisors: Vec<usize> = (0..n).filter(|&i| mono[i] >= threshold).collect();
        debug_assert!(
            !divisors.is_empty(),
            "every degree-d monomial is divisible by some x_i^(k-1)"
        );
        class_of.push(divisors[0]);
        reduced.push(divisors.len() == 1);
    }

    Ok(MonomialBasis {
        n,
        k,
        degree,
        monomials,
        index,
        class_of,
        reduced,
    })
}

/// The matrix M, its reduced-free submatrix M', and the basis indexing
/// both of them.
#[derive(Debug, Clone)]
pub struct MacaulayPair<S> {
    pub matrix: Matrix<S>,
    pub minor: Matrix<S>,
    pub basis: MonomialBasis,
}

/// Assemble M and M' for the slice polynomials of `t`. Coefficients come
/// straight from the sparse tensor by exponent shifts; no multivariate
/// multiplication happens.
pub fn macaulay_matrices<S: Scalar>(t: &CubicalTensor<S>, cap: usize) -> Result<MacaulayPair<S>> {
    let n = t.dim();
    let k = t.order();
    let basis = build_basis(n, k, cap)?;
    let size = basis.len();
    let threshold = (k - 1) as u32;

    // per-slice coefficient lists, exponent vectors included
    let mut slice_coeffs: Vec<Vec<(Vec<u32>, S)>> = Vec::with_capacity(n);
    for i in 0..n {
        let coeffs = t
            .slice_coefficients(i)
            .into_iter()
            .map(|(rest, c)| {
                let mut exp = vec![0u32; n];
                for j in rest {
                    exp[j] += 1;
                }
                (exp, c)
            })
            .collect();
        slice_coeffs.push(coeffs);
    }

    let mut matrix = Matrix::zeros(size, size);
    for row in 0..size {
        let class = basis.class_of(row);
        let alpha = &basis.monomials()[row];
        for (exp, coeff) in &slice_coeffs[class] {
            let mut target = alpha.clone();
            target[class] -= threshold;
            for (v, e) in target.iter_mut().zip(exp.iter()) {
                *v += e;
            }
            let col = basis
                .position(&target)
                .expect("shifted monomial stays within degree d");
            matrix[(row, col)] += coeff.clone();
        }
    }

    let keep: Vec<bool> = (0..size).map(|i| !basis.is_reduced(i)).collect();
    let minor = matrix.principal_submatrix(&keep);
    Ok(MacaulayPair {
        matrix,
        minor,
        basis,
    })
}

/// Exact characteristic polynomial of a rational tensor:
/// `det(xI - M) / det(xI' - M')`, the division checked to be remainder-free.
pub fn tensor_charpoly(t: &RatTensor, cap: usize) -> Result<RatPoly> {
    let pair = macaulay_matrices(t, cap)?;
    let outer = pair.matrix.charpoly();
    if pair.minor.rows() == 0 {
        return Ok(outer);
    }
    let inner = pair.minor.charpoly();
    outer.exact_div(&inner)
}

/// Build the Laplacian Macaulay matrix and return `I - M / max_degree`
/// after asserting, exactly, that every row of M sums to zero and that
/// the result is row-stochastic with nonnegative entries.
pub fn laplacian_stochastic_matrix(h: &Hypergraph, cap: usize) -> Result<RatMatrix> {
    if !h.is_connected() {
        return Err(Error::Disconnected("the Laplacian stochastic form"));
    }
    if h.m() == 0 {
        return Err(Error::InvalidParameter(
            "the Laplacian stochastic form needs at least one edge".into(),
        ));
    }
    let l: RatTensor = laplacian_tensor(h);
    let pair = macaulay_matrices(&l, cap)?;
    let m = &pair.matrix;
    for i in 0..m.rows() {
        if !m.row_sum(i).is_zero() {
            return Err(Error::ConsistencyCheck(format!(
                "Laplacian Macaulay row {i} does not sum to zero"
            )));
        }
    }
    let delta = Rat::from_integer(crate::Int::from(h.max_degree() as u64));
    let a = Matrix::from_fn(m.rows(), m.cols(), |i, j| {
        let scaled = m[(i, j)].clone() / delta.clone();
        if i == j {
            Rat::one() - scaled
        } else {
            -scaled
        }
    });
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            if a[(i, j)].is_negative() {
                return Err(Error::ConsistencyCheck(format!(
                    "stochastic form has a negative entry at ({i}, {j})"
                )));
            }
        }
        if a.row_sum(i) != Rat::one() {
            return Err(Error::ConsistencyCheck(format!(
                "stochastic form row {i} does not sum to one"
            )));
        }
    }
    Ok(a)
}

/// Exact kernel dimension of the Laplacian Macaulay matrix; equal to the
/// zero-eigenvariety cardinality for connected inputs.
pub fn laplacian_macaulay_nullity(h: &Hypergraph, cap: usize) -> Result<usize> {
    if !h.is_connected() {
        return Err(Error::Disconnected("the Laplacian Macaulay nullity"));
    }
    let l: RatTensor = laplacian_tensor(h);
    let pair = macaulay_matrices(&l, cap)?;
    Ok(pair.matrix.nullity())
}

/// CSV dumps of M and M' with monomial headers, for golden-file tests.
pub fn dump_csv<S: Scalar + Display>(pair: &MacaulayPair<S>) -> (String, String) {
    let basis = &pair.basis;
    let all: Vec<usize> = (0..basis.len()).collect();
    let kept: Vec<usize> = all
        .iter()
        .copied()
        .filter(|&i| !basis.is_reduced(i))
        .collect();
    let render = |m: &Matrix<S>, rows: &[usize]| {
        let mut out = String::new();
        out.push_str("monomial");
        for &c in rows {
            out.push(',');
            out.push_str(&basis.monomial_string(c));
        }
        out.push('\n');
        for (ri, &r) in rows.iter().enumerate() {
            out.push_str(&basis.monomial_string(r));
            for ci in 0..rows.len() {
                out.push(',');
                out.push_str(&m[(ri, ci)].to_string());
            }
            out.push('\n');
        }
        out
    };
    (render(&pair.matrix, &all), render(&pair.minor, &kept))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::{adjacency_tensor, identity_tensor};
    use crate::Int;

    fn edge3() -> Hypergraph {
        Hypergraph::from_one_based(3, 3, vec![vec![1, 2, 3]]).unwrap()
    }

    const CAP: usize = 1500;

    #[test]
    fn basis_count_n3_k3() {
        let b = build_basis(3, 3, CAP).unwrap();
        assert_eq!(b.degree(), 4);
        assert_eq!(b.len(), 15);
        assert_eq!(b.reduced_count(), 12);
    }

    #[test]
    fn basis_count_n2_k2() {
        let b = build_basis(2, 2, CAP).unwrap();
        assert_eq!(b.degree(), 1);
        assert_eq!(b.len(), 2);
        assert_eq!(b.reduced_count(), 2);
    }

    #[test]
    fn basis_count_n5_k3() {
        let b = build_basis(5, 3, CAP).unwrap();
        assert_eq!(b.degree(), 6);
        assert_eq!(b.len(), 210);
    }

    #[test]
    fn basis_guard_trips() {
        // squid S(3,3) has n = 9: C(18, 8) = 43758
        let err = build_basis(9, 3, CAP).unwrap_err();
        match err {
            Error::SizeGuard { top, bottom, size, cap } => {
                assert_eq!((top, bottom, size, cap), (18, 8, 43758, CAP));
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn partition_is_first_divisor() {
        let b = build_basis(3, 3, CAP).unwrap();
        for (idx, mono) in b.monomials().iter().enumerate() {
            let class = b.class_of(idx);
            assert!(mono[class] >= 2);
            assert!(
                mono[..class].iter().all(|&e| e < 2),
                "class must be the first divisor"
            );
        }
    }

    #[test]
    fn identity_tensor_yields_identity_matrix() {
        let t: RatTensor = identity_tensor(3, 3);
        let pair = macaulay_matrices(&t, CAP).unwrap();
        assert_eq!(pair.matrix, Matrix::identity(15));
    }

    #[test]
    fn laplacian_rows_sum_to_zero() {
        let l: RatTensor = laplacian_tensor(&edge3());
        let pair = macaulay_matrices(&l, CAP).unwrap();
        for i in 0..pair.matrix.rows() {
            assert!(pair.matrix.row_sum(i).is_zero());
        }
    }

    #[test]
    fn laplacian_diagonal_lists_degrees() {
        let h = Hypergraph::from_one_based(3, 5, vec![vec![1, 2, 3], vec![3, 4, 5]]).unwrap();
        let l: RatTensor = laplacian_tensor(&h);
        let pair = macaulay_matrices(&l, CAP).unwrap();
        let degrees = h.degrees();
        for row in 0..pair.matrix.rows() {
            let class = pair.basis.class_of(row);
            assert_eq!(
                pair.matrix[(row, row)],
                Rat::from_integer(Int::from(degrees[class] as u64))
            );
        }
    }

    #[test]
    fn k2_matrix_case_is_the_matrix_itself() {
        // for k = 2 the Macaulay matrix of A is A and M' is empty
        let g = crate::hypergraph::SimpleGraph::path(3).unwrap().to_hypergraph();
        let a: RatTensor = adjacency_tensor(&g);
        let pair = macaulay_matrices(&a, CAP).unwrap();
        assert_eq!(pair.minor.rows(), 0);
        assert_eq!(pair.matrix.rows(), 3);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(pair.matrix[(i, j)], a.entry(&[i, j]));
            }
        }
    }

    #[test]
    fn charpoly_k2_edge() {
        let g = crate::hypergraph::SimpleGraph::single_edge().to_hypergraph();
        let a: RatTensor = adjacency_tensor(&g);
        let p = tensor_charpoly(&a, CAP).unwrap();
        // x^2 - 1
        assert_eq!(
            p.coeffs(),
            &[
                -Rat::one(),
                Rat::zero(),
                Rat::one()
            ]
        );
    }

    #[test]
    fn charpoly_laplacian_edge3() {
        let l: RatTensor = laplacian_tensor(&edge3());
        let p = tensor_charpoly(&l, CAP).unwrap();
        assert_eq!(p.degree(), Some(12));
        assert_eq!(p.trailing_zero_count(), 3);
    }

    #[test]
    fn charpoly_adjacency_edge3_largest_root() {
        let a: RatTensor = adjacency_tensor(&edge3());
        let p = tensor_charpoly(&a, CAP).unwrap();
        assert_eq!(p.degree(), Some(12));
        // largest real root is 1; (x - 1) divides with multiplicity 3
        let (c, factors) = p.squarefree_decompose().unwrap();
        assert!(!c.is_zero());
        let one = Rat::one();
        let at_one: Vec<(usize, u32)> = factors
            .iter()
            .enumerate()
            .filter(|(_, (f, _))| f.eval(&one).is_zero())
            .map(|(i, (_, m))| (i, *m))
            .collect();
        assert_eq!(at_one.len(), 1);
        assert_eq!(at_one[0].1, 3);
    }

    #[test]
    fn quotient_reconstructs_exactly() {
        let l: RatTensor = laplacian_tensor(&edge3());
        let pair = macaulay_matrices(&l, CAP).unwrap();
        let outer = pair.matrix.charpoly();
        let inner = pair.minor.charpoly();
        let quotient = tensor_charpoly(&l, CAP).unwrap();
        assert_eq!(quotient.mul(&inner), outer);
    }

    #[test]
    fn stochastic_form_edge3() {
        let a = laplacian_stochastic_matrix(&edge3(), CAP).unwrap();
        assert_eq!(a.rows(), 15);
        for i in 0..a.rows() {
            assert_eq!(a.row_sum(i), Rat::one());
        }
    }

    #[test]
    fn nullity_edge3() {
        assert_eq!(laplacian_macaulay_nullity(&edge3(), CAP).unwrap(), 3);
    }

    #[test]
    fn diagonal_similarity_preserves_charpoly() {
        use crate::tensor::{diagonal_similarity, DiagonalScaling};
        let a: RatTensor = adjacency_tensor(&edge3());
        let d = DiagonalScaling::new(vec![
            Rat::from_integer(Int::from(1)),
            Rat::from_integer(Int::from(2)),
            Rat::from_integer(Int::from(3)),
        ])
        .unwrap();
        let similar = diagonal_similarity(&a, &d).unwrap();
        assert_eq!(
            tensor_charpoly(&a, CAP).unwrap(),
            tensor_charpoly(&similar, CAP).unwrap()
        );
    }
}
