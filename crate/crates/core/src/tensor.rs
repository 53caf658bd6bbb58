//! Sparse order-k cubical tensors.
//!
//! Entries are stored under a canonical key: the first index kept as is,
//! the trailing k-1 indices sorted ascending. Every tensor built here is
//! invariant under permutations of the trailing indices (hypergraph
//! tensors are fully symmetric; diagonal triple products preserve the
//! trailing symmetry), so one stored value plus the arrangement count of
//! the trailing multiset stands in for the full k!-fold expansion.

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::scalar::{factorial, small, Scalar};
use std::collections::BTreeMap;

/// Canonical entry key: `key[0]` is the slice index, `key[1..]` is sorted.
type Key = Vec<usize>;

#[derive(Debug, Clone, PartialEq)]
pub struct CubicalTensor<S> {
    order: usize,
    dim: usize,
    entries: BTreeMap<Key, S>,
}

impl<S: Scalar> CubicalTensor<S> {
    pub fn zero(order: usize, dim: usize) -> Self {
        assert!(order >= 2, "tensor order must be at least 2");
        Self {
            order,
            dim,
            entries: BTreeMap::new(),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Add `value` to the entry class of `index` (any representative of
    /// the trailing multiset); zero results are dropped.
    pub fn add_entry(&mut self, index: &[usize], value: S) {
        assert_eq!(index.len(), self.order, "index arity mismatch");
        debug_assert!(index.iter().all(|&i| i < self.dim), "index out of range");
        let mut key = index.to_vec();
        key[1..].sort_unstable();
        let slot = self.entries.entry(key).or_insert_with(S::zero);
        *slot += value;
        if slot.is_zero() {
            let mut key = index.to_vec();
            key[1..].sort_unstable();
            self.entries.remove(&key);
        }
    }

    /// Entry at an arbitrary index tuple (trailing order irrelevant).
    pub fn entry(&self, index: &[usize]) -> S {
        let mut key = index.to_vec();
        key[1..].sort_unstable();
        self.entries
            .get(&key)
            .cloned()
            .unwrap_or_else(S::zero)
    }

    /// Canonical stored entries: (slice index, sorted trailing indices, value).
    pub fn canonical_entries(&self) -> impl Iterator<Item = (usize, &[usize], &S)> {
        self.entries.iter().map(|(k, v)| (k[0], &k[1..], v))
    }

    /// Number of entries in the fully expanded tensor (each canonical
    /// entry counted once per arrangement of its trailing indices).
    pub fn expanded_entry_count(&self) -> u128 {
        self.entries
            .keys()
            .map(|k| arrangements(&k[1..]))
            .sum()
    }

    /// T x^{k-1}: the i-th component sums a_{i,rest} * x^rest over all
    /// arrangements of the trailing indices.
    pub fn apply(&self, x: &[S]) -> Result<Vec<S>> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                context: "tensor apply",
                expected: self.dim,
                found: x.len(),
            });
        }
        let mut out = vec![S::zero(); self.dim];
        for (k, v) in &self.entries {
            let mut term = v.clone() * small::<S>(arrangements(&k[1..]) as u64);
            for &j in &k[1..] {
                term *= x[j].clone();
            }
            out[k[0]] += term;
        }
        Ok(out)
    }

    /// Row sums of each slice: `apply` at the all-ones vector.
    pub fn slice_row_sums(&self) -> Vec<S> {
        self.apply(&vec![S::one(); self.dim])
            .expect("all-ones vector has the right length")
    }

    /// Degree-(k-1) polynomial coefficients of the i-th slice: for each
    /// exponent vector (as a sorted trailing multiset) the coefficient of
    /// the corresponding monomial in (T x^{k-1})_i.
    pub fn slice_coefficients(&self, i: usize) -> Vec<(Vec<usize>, S)> {
        let mut out = Vec::new();
        for (k, v) in self.entries.range(slice_range(i, self.order, self.dim)) {
            let coeff = v.clone() * small::<S>(arrangements(&k[1..]) as u64);
            out.push((k[1..].to_vec(), coeff));
        }
        out
    }

    /// True when every stored entry is invariant under all permutations of
    /// the full index tuple (not just the trailing ones).
    pub fn is_symmetric(&self) -> bool {
        for (k, v) in &self.entries {
            let mut multiset = k.clone();
            multiset.sort_unstable();
            let mut seen = Vec::new();
            for pos in 0..multiset.len() {
                let first = multiset[pos];
                if seen.contains(&first) {
                    continue;
                }
                seen.push(first);
                let mut rest: Vec<usize> = multiset.clone();
                rest.remove(pos);
                let mut key = Vec::with_capacity(self.order);
                key.push(first);
                key.extend(rest);
                if self.entry(&key) != *v {
                    return false;
                }
            }
        }
        true
    }

    /// Digraph strong connectivity of the nonzero pattern: arc (i, j) when
    /// some nonzero entry in slice i touches j.
    pub fn weakly_irreducible(&self) -> bool {
        let n = self.dim;
        if n == 0 {
            return false;
        }
        let mut fwd = vec![Vec::new(); n];
        let mut rev = vec![Vec::new(); n];
        for k in self.entries.keys() {
            let i = k[0];
            for &j in &k[1..] {
                if j != i {
                    fwd[i].push(j);
                    rev[j].push(i);
                }
            }
        }
        reaches_all(&fwd, n) && reaches_all(&rev, n)
    }

    pub fn map<T: Scalar>(&self, mut f: impl FnMut(&S) -> T) -> CubicalTensor<T> {
        let mut out = CubicalTensor::zero(self.order, self.dim);
        for (k, v) in &self.entries {
            let w = f(v);
            if !w.is_zero() {
                out.entries.insert(k.clone(), w);
            }
        }
        out
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = Self::zero(self.order, self.dim);
        for (k, v) in &self.entries {
            let w = v.clone() * c.clone();
            if !w.is_zero() {
                out.entries.insert(k.clone(), w);
            }
        }
        out
    }
}

impl CubicalTensor<crate::Rat> {
    /// Exact dump: one line per canonical entry,
    /// `i1 i2 ... ik numerator denominator`, 1-based indices in canonical
    /// order. Trailing indices are sorted; the entry value applies to
    /// every arrangement of them.
    pub fn dump_exact(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.entries {
            for &i in k {
                out.push_str(&(i + 1).to_string());
                out.push(' ');
            }
            out.push_str(&v.numer().to_string());
            out.push(' ');
            out.push_str(&v.denom().to_string());
            out.push('\n');
        }
        out
    }
}

fn slice_range(i: usize, order: usize, dim: usize) -> std::ops::Range<Key> {
    let lo = {
        let mut k = vec![0usize; order];
        k[0] = i;
        k
    };
    let hi = {
        let mut k = vec![dim; order];
        k[0] = i;
        k
    };
    lo..hi
}

/// Number of distinct arrangements of a sorted multiset.
pub fn arrangements(sorted: &[usize]) -> u128 {
    let mut result: u128 = 1;
    let mut total = 0u128;
    let mut run = 0u128;
    let mut prev: Option<usize> = None;
    for &v in sorted {
        total += 1;
        if Some(v) == prev {
            run += 1;
        } else {
            run = 1;
            prev = Some(v);
        }
        // multinomial built incrementally: C(total-1, run-1) style update
        result = result * total / run;
    }
    result
}

fn reaches_all(adj: &[Vec<usize>], n: usize) -> bool {
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    count == n
}

// ---------------------------------------------------------------------------
// Hypergraph tensors
// ---------------------------------------------------------------------------

/// Adjacency tensor: 1/(k-1)! on every permutation of every edge.
pub fn adjacency_tensor<S: Scalar>(h: &Hypergraph) -> CubicalTensor<S> {
    let k = h.k();
    let weight = S::one() / factorial::<S>(k - 1);
    let mut t = CubicalTensor::zero(k, h.n());
    for e in h.edges() {
        for (pos, &first) in e.iter().enumerate() {
            let mut key = Vec::with_capacity(k);
            key.push(first);
            key.extend(e.iter().enumerate().filter(|&(p, _)| p != pos).map(|(_, &v)| v));
            t.add_entry(&key, weight.clone());
        }
    }
    t
}

/// Diagonal degree tensor.
pub fn degree_tensor<S: Scalar>(h: &Hypergraph) -> CubicalTensor<S> {
    let mut t = CubicalTensor::zero(h.k(), h.n());
    for (v, d) in h.degrees().into_iter().enumerate() {
        if d > 0 {
            t.add_entry(&vec![v; h.k()], small::<S>(d as u64));
        }
    }
    t
}

/// Laplacian tensor: degrees on the diagonal minus the adjacency tensor.
pub fn laplacian_tensor<S: Scalar>(h: &Hypergraph) -> CubicalTensor<S> {
    let mut t = degree_tensor::<S>(h);
    let a = adjacency_tensor::<S>(h);
    for (k, v) in &a.entries {
        let mut key = k.clone();
        let neg = -v.clone();
        key[1..].sort_unstable();
        let slot = t.entries.entry(key.clone()).or_insert_with(S::zero);
        *slot += neg;
        if slot.is_zero() {
            t.entries.remove(&key);
        }
    }
    t
}

/// Signless Laplacian: degrees on the diagonal plus the adjacency tensor.
pub fn signless_laplacian_tensor<S: Scalar>(h: &Hypergraph) -> CubicalTensor<S> {
    let mut t = degree_tensor::<S>(h);
    let a = adjacency_tensor::<S>(h);
    for (k, v) in &a.entries {
        let slot = t.entries.entry(k.clone()).or_insert_with(S::zero);
        *slot += v.clone();
        if slot.is_zero() {
            t.entries.remove(k);
        }
    }
    t
}

/// Identity tensor: 1 exactly on the diagonal tuples.
pub fn identity_tensor<S: Scalar>(order: usize, dim: usize) -> CubicalTensor<S> {
    let mut t = CubicalTensor::zero(order, dim);
    for i in 0..dim {
        t.add_entry(&vec![i; order], S::one());
    }
    t
}

// ---------------------------------------------------------------------------
// Diagonal scalings and the triple product
// ---------------------------------------------------------------------------

/// Diagonal matrix with nonzero entries, used on both sides of the
/// triple product.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalScaling<S> {
    entries: Vec<S>,
}

impl<S: Scalar> DiagonalScaling<S> {
    pub fn new(entries: Vec<S>) -> Result<Self> {
        if let Some(index) = entries.iter().position(|v| v.is_zero()) {
            return Err(Error::ZeroDiagonal { index });
        }
        Ok(Self { entries })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            entries: vec![S::one(); n],
        }
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[S] {
        &self.entries
    }

    /// Entrywise integer power; negative exponents invert.
    pub fn power(&self, exp: i32) -> Self {
        let entries = self
            .entries
            .iter()
            .map(|v| {
                let mut acc = S::one();
                for _ in 0..exp.unsigned_abs() {
                    acc *= v.clone();
                }
                if exp < 0 {
                    S::one() / acc
                } else {
                    acc
                }
            })
            .collect();
        Self { entries }
    }
}

/// Shao's triple product with diagonal factors:
/// `(P T Q)_{i1..ik} = p_{i1} a_{i1..ik} q_{i2} ... q_{ik}`.
pub fn triple_product<S: Scalar>(
    p: &DiagonalScaling<S>,
    t: &CubicalTensor<S>,
    q: &DiagonalScaling<S>,
) -> Result<CubicalTensor<S>> {
    if p.n() != t.dim() || q.n() != t.dim() {
        return Err(Error::DimensionMismatch {
            context: "triple product",
            expected: t.dim(),
            found: p.n().min(q.n()),
        });
    }
    let mut out = CubicalTensor::zero(t.order(), t.dim());
    for (k, v) in &t.entries {
        let mut w = v.clone() * p.entries[k[0]].clone();
        for &j in &k[1..] {
            w *= q.entries[j].clone();
        }
        if !w.is_zero() {
            out.entries.insert(k.clone(), w);
        }
    }
    Ok(out)
}

/// `D^{-(k-1)} T D`, which preserves the spectrum.
pub fn diagonal_similarity<S: Scalar>(
    t: &CubicalTensor<S>,
    d: &DiagonalScaling<S>,
) -> Result<CubicalTensor<S>> {
    let left = d.power(-((t.order() - 1) as i32));
    triple_product(&left, t, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Rat, RatTensor};
    use num_traits::{One, Zero};

    fn edge3() -> Hypergraph {
        Hypergraph::from_one_based(3, 3, vec![vec![1, 2, 3]]).unwrap()
    }

    fn loose_path() -> Hypergraph {
        Hypergraph::from_one_based(3, 5, vec![vec![1, 2, 3], vec![3, 4, 5]]).unwrap()
    }

    fn half() -> Rat {
        Rat::new(crate::Int::from(1), crate::Int::from(2))
    }

    #[test]
    fn adjacency_single_edge() {
        let a: RatTensor = adjacency_tensor(&edge3());
        // 6 expanded entries, each 1/2
        assert_eq!(a.expanded_entry_count(), 6);
        assert_eq!(a.entry(&[0, 1, 2]), half());
        assert_eq!(a.entry(&[2, 0, 1]), half());
        assert_eq!(a.entry(&[0, 0, 1]), Rat::zero());
        assert!(a.is_symmetric());
    }

    #[test]
    fn adjacency_edgeless_is_zero() {
        let h = Hypergraph::new(3, 4, vec![]).unwrap();
        let a: RatTensor = adjacency_tensor(&h);
        assert_eq!(a.expanded_entry_count(), 0);
    }

    #[test]
    fn adjacency_loose_path_expansion() {
        let a: RatTensor = adjacency_tensor(&loose_path());
        // 2 edges x 3! permutations
        assert_eq!(a.expanded_entry_count(), 12);
        assert!(a.is_symmetric());
    }

    #[test]
    fn laplacian_single_edge_entries() {
        let l: RatTensor = laplacian_tensor(&edge3());
        assert_eq!(l.entry(&[0, 0, 0]), Rat::one());
        assert_eq!(l.entry(&[1, 1, 1]), Rat::one());
        assert_eq!(l.entry(&[0, 1, 2]), -half());
        let q: RatTensor = signless_laplacian_tensor(&edge3());
        assert_eq!(q.entry(&[0, 1, 2]), half());
        assert_eq!(q.entry(&[2, 2, 2]), Rat::one());
    }

    #[test]
    fn laplacian_plus_signless_is_twice_degree() {
        for h in [edge3(), loose_path()] {
            let l: RatTensor = laplacian_tensor(&h);
            let q: RatTensor = signless_laplacian_tensor(&h);
            let d: RatTensor = degree_tensor(&h);
            let two = Rat::from_integer(crate::Int::from(2));
            let mut sum = CubicalTensor::zero(h.k(), h.n());
            for (i, rest, v) in l.canonical_entries() {
                let mut key = vec![i];
                key.extend_from_slice(rest);
                sum.add_entry(&key, v.clone());
            }
            for (i, rest, v) in q.canonical_entries() {
                let mut key = vec![i];
                key.extend_from_slice(rest);
                sum.add_entry(&key, v.clone());
            }
            assert_eq!(sum, d.scale(&two));
        }
    }

    #[test]
    fn apply_all_ones() {
        let a: RatTensor = adjacency_tensor(&edge3());
        let ones = vec![Rat::one(); 3];
        assert_eq!(a.apply(&ones).unwrap(), vec![Rat::one(); 3]);
    }

    #[test]
    fn laplacian_kills_ones() {
        for h in [edge3(), loose_path(), Hypergraph::complete(4, 3).unwrap()] {
            let l: RatTensor = laplacian_tensor(&h);
            let ones = vec![Rat::one(); h.n()];
            assert!(l.apply(&ones).unwrap().iter().all(|v| v.is_zero()));
        }
    }

    #[test]
    fn identity_tensor_applies_powers() {
        let t: RatTensor = identity_tensor(3, 3);
        let x = vec![
            Rat::from_integer(crate::Int::from(2)),
            Rat::from_integer(crate::Int::from(3)),
            Rat::from_integer(crate::Int::from(-1)),
        ];
        let out = t.apply(&x).unwrap();
        let expect: Vec<Rat> = x.iter().map(|v| v.clone() * v.clone()).collect();
        assert_eq!(out, expect);
    }

    #[test]
    fn apply_dimension_check() {
        let a: RatTensor = adjacency_tensor(&edge3());
        assert!(a.apply(&vec![Rat::one(); 2]).is_err());
    }

    #[test]
    fn weak_irreducibility_matches_connectivity() {
        let a: RatTensor = adjacency_tensor(&loose_path());
        assert!(a.weakly_irreducible());
        let split = Hypergraph::from_one_based(3, 6, vec![vec![1, 2, 3], vec![4, 5, 6]]).unwrap();
        let b: RatTensor = adjacency_tensor(&split);
        assert!(!b.weakly_irreducible());
        let z: RatTensor = CubicalTensor::zero(3, 2);
        assert!(!z.weakly_irreducible());
    }

    #[test]
    fn triple_product_identity_is_noop() {
        let a: RatTensor = adjacency_tensor(&edge3());
        let id = DiagonalScaling::identity(3);
        assert_eq!(triple_product(&id, &a, &id).unwrap(), a);
    }

    #[test]
    fn scalar_diagonal_similarity_is_noop() {
        let a: RatTensor = adjacency_tensor(&edge3());
        let c = Rat::from_integer(crate::Int::from(5));
        let d = DiagonalScaling::new(vec![c.clone(), c.clone(), c]).unwrap();
        assert_eq!(diagonal_similarity(&a, &d).unwrap(), a);
    }

    #[test]
    fn zero_diagonal_rejected() {
        assert!(DiagonalScaling::new(vec![Rat::one(), Rat::zero()]).is_err());
    }

    #[test]
    fn apply_is_homogeneous() {
        // apply(T, c*x) = c^{k-1} apply(T, x)
        let t: RatTensor = laplacian_tensor(&loose_path());
        let x: Vec<Rat> = (0..5)
            .map(|i| Rat::new(crate::Int::from(i as i64 + 2), crate::Int::from(3)))
            .collect();
        let c = Rat::new(crate::Int::from(-7), crate::Int::from(5));
        let scaled: Vec<Rat> = x.iter().map(|v| v.clone() * c.clone()).collect();
        let lhs = t.apply(&scaled).unwrap();
        let c2 = c.clone() * c;
        let rhs: Vec<Rat> = t
            .apply(&x)
            .unwrap()
            .into_iter()
            .map(|v| v * c2.clone())
            .collect();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn exact_dump_is_canonical() {
        let l: RatTensor = laplacian_tensor(&edge3());
        let dump = l.dump_exact();
        let expect = "\
1 1 1 1 1
1 2 3 -1 2
2 1 3 -1 2
2 2 2 1 1
3 1 2 -1 2
3 3 3 1 1
";
        assert_eq!(dump, expect);
    }

    #[test]
    fn arrangement_counts() {
        assert_eq!(arrangements(&[1, 2]), 2);
        assert_eq!(arrangements(&[1, 1]), 1);
        assert_eq!(arrangements(&[1, 2, 3]), 6);
        assert_eq!(arrangements(&[1, 1, 2]), 3);
        assert_eq!(arrangements(&[]), 1);
    }
}
