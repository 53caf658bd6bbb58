//! k-uniform hypergraphs: validation, family generators, binary
//! constructions, and incidence matrices.
//!
//! Vertices are 0-based internally; the JSON interchange format and all
//! user-facing output are 1-based. Edges are stored canonically: each
//! edge sorted ascending, the edge list sorted lexicographically, so
//! every construction is deterministic.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    k: usize,
    n: usize,
    edges: Vec<Vec<usize>>,
}

impl Hypergraph {
    /// Validate and canonicalize; vertices are 0-based here.
    pub fn new(k: usize, n: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidParameter(format!(
                "uniformity k must be at least 2, got {k}"
            )));
        }
        let mut canonical = Vec::with_capacity(edges.len());
        for (index, edge) in edges.into_iter().enumerate() {
            let set: BTreeSet<usize> = edge.iter().copied().collect();
            if set.len() != k || edge.len() != k {
                return Err(Error::EdgeSize {
                    index: index + 1,
                    expected: k,
                    found: set.len().min(edge.len()),
                });
            }
            for &v in &set {
                if v >= n {
                    return Err(Error::VertexRange {
                        index: index + 1,
                        vertex: v + 1,
                        n,
                    });
                }
            }
            canonical.push(set.into_iter().collect::<Vec<_>>());
        }
        canonical.sort();
        for i in 1..canonical.len() {
            if canonical[i] == canonical[i - 1] {
                return Err(Error::DuplicateEdge { index: i + 1 });
            }
        }
        Ok(Self {
            k,
            n,
            edges: canonical,
        })
    }

    /// Validate 1-based input (the JSON convention).
    pub fn from_one_based(k: usize, n: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        let mut shifted = Vec::with_capacity(edges.len());
        for (index, edge) in edges.into_iter().enumerate() {
            let mut e = Vec::with_capacity(edge.len());
            for v in edge {
                if v == 0 || v > n {
                    return Err(Error::VertexRange {
                        index: index + 1,
                        vertex: v,
                        n,
                    });
                }
                e.push(v - 1);
            }
            shifted.push(e);
        }
        Self::new(k, n, shifted)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of edges.
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Canonically ordered edges, 0-based.
    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for e in &self.edges {
            for &v in e {
                d[v] += 1;
            }
        }
        d
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let mut dsu = Dsu::new(self.n);
        for e in &self.edges {
            for w in e.windows(2) {
                dsu.union(w[0], w[1]);
            }
        }
        let root = dsu.find(0);
        (1..self.n).all(|v| dsu.find(v) == root)
    }

    /// 0/1 incidence matrix, rows in canonical edge order.
    pub fn incidence_matrix(&self) -> IncidenceMatrix {
        let mut data = vec![0u32; self.edges.len() * self.n];
        for (i, e) in self.edges.iter().enumerate() {
            for &v in e {
                data[i * self.n + v] += 1;
            }
        }
        IncidenceMatrix {
            rows: self.edges.len(),
            cols: self.n,
            data,
        }
    }

    // -- family generators --------------------------------------------------

    /// Complete k-uniform hypergraph on n vertices.
    pub fn complete(n: usize, k: usize) -> Result<Self> {
        if n < k {
            return Err(Error::InvalidParameter(format!(
                "complete hypergraph needs n >= k, got n={n}, k={k}"
            )));
        }
        let mut edges = Vec::new();
        let mut subset: Vec<usize> = (0..k).collect();
        loop {
            edges.push(subset.clone());
            // next k-subset in lexicographic order
            let mut i = k;
            loop {
                if i == 0 {
                    return Self::new(k, n, edges);
                }
                i -= 1;
                if subset[i] != i + n - k {
                    break;
                }
            }
            subset[i] += 1;
            for j in i + 1..k {
                subset[j] = subset[j - 1] + 1;
            }
        }
    }

    /// k-th power of a simple graph: every edge becomes a k-set by
    /// appending k-2 fresh vertices, in canonical edge order.
    pub fn power_of_graph(g: &SimpleGraph, k: usize) -> Result<Self> {
        if k < 3 {
            return Err(Error::InvalidParameter(format!(
                "graph power needs k >= 3, got {k}"
            )));
        }
        let mut edges = Vec::with_capacity(g.edges.len());
        let mut next = g.n;
        for &(u, v) in &g.edges {
            let mut e = vec![u, v];
            e.extend(next..next + (k - 2));
            next += k - 2;
            edges.push(e);
        }
        Self::new(k, next, edges)
    }

    /// Generalized squid S(k, t): a body edge on vertices 0..k plus t leg
    /// edges, leg i attached at body vertex i with k-1 fresh vertices.
    pub fn squid(k: usize, t: usize) -> Result<Self> {
        if t == 0 || t > k {
            return Err(Error::InvalidParameter(format!(
                "squid needs 1 <= t <= k, got t={t}, k={k}"
            )));
        }
        let mut edges = vec![(0..k).collect::<Vec<_>>()];
        for i in 0..t {
            let start = k + i * (k - 1);
            let mut e = vec![i];
            e.extend(start..start + (k - 1));
            edges.push(e);
        }
        Self::new(k, k + t * (k - 1), edges)
    }

    /// Sunflower S(k, s, p): s seed vertices shared by all p edges, each
    /// edge adding k-s fresh petal vertices.
    pub fn sunflower(k: usize, s: usize, p: usize) -> Result<Self> {
        if s == 0 || s >= k {
            return Err(Error::InvalidParameter(format!(
                "sunflower needs 1 <= s <= k-1, got s={s}, k={k}"
            )));
        }
        if p == 0 {
            return Err(Error::InvalidParameter("sunflower needs p >= 1".into()));
        }
        let mut edges = Vec::with_capacity(p);
        for j in 0..p {
            let start = s + j * (k - s);
            let mut e: Vec<usize> = (0..s).collect();
            e.extend(start..start + (k - s));
            edges.push(e);
        }
        Self::new(k, s + p * (k - s), edges)
    }

    // -- binary constructions -----------------------------------------------

    /// Coalescence: identify vertex `v1` of `self` with vertex `v2` of
    /// `other`. Vertices of `self` keep their labels; the merged vertex
    /// takes `v1`; remaining vertices of `other` follow in order.
    pub fn coalesce(&self, v1: usize, other: &Self, v2: usize) -> Result<Self> {
        if self.k != other.k {
            return Err(Error::UniformityMismatch {
                left: self.k,
                right: other.k,
            });
        }
        if v1 >= self.n {
            return Err(Error::InvalidVertex {
                vertex: v1 + 1,
                n: self.n,
            });
        }
        if v2 >= other.n {
            return Err(Error::InvalidVertex {
                vertex: v2 + 1,
                n: other.n,
            });
        }
        if self.n < 2 || other.n < 2 {
            return Err(Error::TrivialHypergraph("coalescence"));
        }
        let relabel = |u: usize| -> usize {
            use std::cmp::Ordering::*;
            match u.cmp(&v2) {
                Equal => v1,
                Less => self.n + u,
                Greater => self.n + u - 1,
            }
        };
        let mut edges = self.edges.clone();
        for e in &other.edges {
            edges.push(e.iter().map(|&u| relabel(u)).collect());
        }
        Self::new(self.k, self.n + other.n - 1, edges)
    }

    /// Cartesian product: vertex set V(self) x V(other) flattened
    /// row-major; one factor's edges are copied while the other
    /// coordinate stays constant.
    pub fn cartesian(&self, other: &Self) -> Result<Self> {
        if self.k != other.k {
            return Err(Error::UniformityMismatch {
                left: self.k,
                right: other.k,
            });
        }
        let flat = |a: usize, b: usize| a * other.n + b;
        let mut edges = Vec::with_capacity(self.n * other.m() + other.n * self.m());
        for a in 0..self.n {
            for e in &other.edges {
                edges.push(e.iter().map(|&b| flat(a, b)).collect());
            }
        }
        for b in 0..other.n {
            for e in &self.edges {
                edges.push(e.iter().map(|&a| flat(a, b)).collect());
            }
        }
        Self::new(self.k, self.n * other.n, edges)
    }

    // -- JSON interchange ----------------------------------------------------

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: HypergraphJson = serde_json::from_str(text)?;
        Self::from_one_based(raw.k, raw.n, raw.edges)
    }

    pub fn to_json(&self) -> String {
        let raw = HypergraphJson {
            k: self.k,
            n: self.n,
            edges: self
                .edges
                .iter()
                .map(|e| e.iter().map(|&v| v + 1).collect())
                .collect(),
        };
        serde_json::to_string_pretty(&raw).expect("hypergraph serializes")
    }
}

/// On-disk format: `{"k": int, "n": int, "edges": [[int, ...], ...]}`
/// with 1-based vertices.
#[derive(Debug, Serialize, Deserialize)]
struct HypergraphJson {
    k: usize,
    n: usize,
    edges: Vec<Vec<usize>>,
}

/// Incidence matrix B with rows indexed by edges in canonical order and
/// columns by vertices; entry counts how often the vertex occurs in the
/// edge (0/1 for set edges).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceMatrix {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl IncidenceMatrix {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, e: usize, v: usize) -> u32 {
        self.data[e * self.cols + v]
    }

    pub fn row_sums(&self) -> Vec<u32> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.entry(i, j)).sum())
            .collect()
    }

    pub fn col_sums(&self) -> Vec<u32> {
        (0..self.cols)
            .map(|j| (0..self.rows).map(|i| self.entry(i, j)).sum())
            .collect()
    }

    pub fn to_int_matrix(&self) -> crate::IntMatrix {
        crate::Matrix::from_fn(self.rows, self.cols, |i, j| {
            crate::Int::from(self.entry(i, j))
        })
    }
}

/// Simple graph, used as the base of the power construction and for the
/// k = 2 regression corpus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl SimpleGraph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut canonical: Vec<(usize, usize)> = Vec::with_capacity(edges.len());
        for (index, (a, b)) in edges.into_iter().enumerate() {
            if a == b {
                return Err(Error::InvalidParameter(format!(
                    "edge {} is a loop at vertex {}",
                    index + 1,
                    a + 1
                )));
            }
            if a >= n || b >= n {
                return Err(Error::VertexRange {
                    index: index + 1,
                    vertex: a.max(b) + 1,
                    n,
                });
            }
            canonical.push((a.min(b), a.max(b)));
        }
        canonical.sort();
        for i in 1..canonical.len() {
            if canonical[i] == canonical[i - 1] {
                return Err(Error::DuplicateEdge { index: i + 1 });
            }
        }
        Ok(Self { n, edges: canonical })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn single_edge() -> Self {
        Self::new(2, vec![(0, 1)]).unwrap()
    }

    pub fn path(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter("path needs n >= 2".into()));
        }
        Self::new(n, (0..n - 1).map(|i| (i, i + 1)).collect())
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidParameter("cycle needs n >= 3".into()));
        }
        Self::new(n, (0..n).map(|i| (i, (i + 1) % n)).collect())
    }

    /// Star with center 0 and n-1 leaves.
    pub fn star(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter("star needs n >= 2".into()));
        }
        Self::new(n, (1..n).map(|i| (0, i)).collect())
    }

    pub fn triangle() -> Self {
        Self::cycle(3).unwrap()
    }

    pub fn petersen() -> Self {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5)); // outer cycle
            edges.push((5 + i, 5 + (i + 2) % 5)); // inner pentagram
            edges.push((i, 5 + i)); // spokes
        }
        Self::new(10, edges).unwrap()
    }

    /// View a graph as a 2-uniform hypergraph.
    pub fn to_hypergraph(&self) -> Hypergraph {
        Hypergraph::new(
            2,
            self.n,
            self.edges.iter().map(|&(a, b)| vec![a, b]).collect(),
        )
        .expect("a valid simple graph is a valid 2-uniform hypergraph")
    }
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }

    fn union(&mut self, a: usize, b: usize) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn single_edge3() -> Hypergraph {
        Hypergraph::from_one_based(3, 3, vec![vec![1, 2, 3]]).unwrap()
    }

    pub(crate) fn loose_path() -> Hypergraph {
        Hypergraph::from_one_based(3, 5, vec![vec![1, 2, 3], vec![3, 4, 5]]).unwrap()
    }

    #[test]
    fn validate_smallest() {
        let h = single_edge3();
        assert_eq!((h.k(), h.n(), h.m()), (3, 3, 1));
    }

    #[test]
    fn validate_loose_path() {
        let h = loose_path();
        assert_eq!(h.m(), 2);
        assert_eq!(h.edges(), &[vec![0, 1, 2], vec![2, 3, 4]]);
    }

    #[test]
    fn validate_rejects_short_edge() {
        let err = Hypergraph::from_one_based(3, 3, vec![vec![1, 2]]).unwrap_err();
        assert!(matches!(err, Error::EdgeSize { .. }));
    }

    #[test]
    fn validate_rejects_out_of_range() {
        let err = Hypergraph::from_one_based(3, 3, vec![vec![1, 2, 4]]).unwrap_err();
        assert!(matches!(err, Error::VertexRange { .. }));
    }

    #[test]
    fn validate_rejects_duplicates() {
        let err =
            Hypergraph::from_one_based(3, 4, vec![vec![1, 2, 3], vec![3, 2, 1]]).unwrap_err();
        assert!(matches!(err, Error::DuplicateEdge { .. }));
    }

    #[test]
    fn connectivity() {
        assert!(loose_path().is_connected());
        assert!(single_edge3().is_connected());
        let split =
            Hypergraph::from_one_based(3, 6, vec![vec![1, 2, 3], vec![4, 5, 6]]).unwrap();
        assert!(!split.is_connected());
    }

    #[test]
    fn degree_sequences() {
        assert_eq!(single_edge3().degrees(), vec![1, 1, 1]);
        assert_eq!(loose_path().degrees(), vec![1, 1, 2, 1, 1]);
        // K_4^[3]: C(3,2) = 3 triples through each vertex
        let k4 = Hypergraph::complete(4, 3).unwrap();
        assert_eq!(k4.degrees(), vec![3, 3, 3, 3]);
    }

    #[test]
    fn incidence_entries() {
        let h = single_edge3();
        let b = h.incidence_matrix();
        assert_eq!((b.rows(), b.cols()), (1, 3));
        assert_eq!(b.row_sums(), vec![3]);

        let b = loose_path().incidence_matrix();
        let rows: Vec<Vec<u32>> = (0..b.rows())
            .map(|i| (0..b.cols()).map(|j| b.entry(i, j)).collect())
            .collect();
        assert_eq!(rows, vec![vec![1, 1, 1, 0, 0], vec![0, 0, 1, 1, 1]]);

        let k4 = Hypergraph::complete(4, 3).unwrap().incidence_matrix();
        assert_eq!(k4.row_sums(), vec![3, 3, 3, 3]);
        assert_eq!(k4.col_sums(), vec![3, 3, 3, 3]);
    }

    #[test]
    fn complete_counts() {
        assert_eq!(Hypergraph::complete(4, 3).unwrap().m(), 4);
        assert_eq!(Hypergraph::complete(3, 3).unwrap().m(), 1);
        assert_eq!(Hypergraph::complete(5, 3).unwrap().m(), 10);
        assert!(Hypergraph::complete(2, 3).is_err());
    }

    #[test]
    fn power_constructions() {
        let single = Hypergraph::power_of_graph(&SimpleGraph::single_edge(), 3).unwrap();
        assert_eq!(single, single_edge3());

        let p3 = Hypergraph::power_of_graph(&SimpleGraph::path(3).unwrap(), 3).unwrap();
        assert_eq!((p3.n(), p3.m()), (5, 2));
        assert!(p3.is_connected());

        let tri = Hypergraph::power_of_graph(&SimpleGraph::triangle(), 3).unwrap();
        assert_eq!((tri.n(), tri.m()), (6, 3));

        assert!(Hypergraph::power_of_graph(&SimpleGraph::triangle(), 2).is_err());
    }

    #[test]
    fn squid_counts() {
        let s = Hypergraph::squid(3, 1).unwrap();
        assert_eq!((s.n(), s.m()), (5, 2));
        let s = Hypergraph::squid(3, 3).unwrap();
        assert_eq!((s.n(), s.m()), (9, 4));
        let s = Hypergraph::squid(4, 2).unwrap();
        assert_eq!((s.n(), s.m()), (10, 3));
        assert!(Hypergraph::squid(3, 4).is_err());
        assert!(Hypergraph::squid(3, 0).is_err());
    }

    #[test]
    fn sunflower_counts() {
        let s = Hypergraph::sunflower(3, 1, 2).unwrap();
        assert_eq!((s.n(), s.m()), (5, 2));
        let s = Hypergraph::sunflower(3, 2, 3).unwrap();
        assert_eq!((s.n(), s.m()), (5, 3));
        let s = Hypergraph::sunflower(4, 1, 2).unwrap();
        assert_eq!((s.n(), s.m()), (7, 2));
        assert!(Hypergraph::sunflower(3, 3, 2).is_err());
    }

    #[test]
    fn coalesce_two_edges_gives_loose_path() {
        let e = single_edge3();
        // vertex 3 of the first copy with vertex 1 of the second (1-based)
        let h = e.coalesce(2, &e, 0).unwrap();
        assert_eq!((h.n(), h.m()), (5, 2));
        assert!(h.is_connected());
        assert_eq!(h.degrees().iter().copied().max(), Some(2));
    }

    #[test]
    fn coalesce_counts() {
        let e = single_edge3();
        let h = e.coalesce(0, &e, 1).unwrap();
        assert_eq!((h.n(), h.m()), (5, 2));

        let hp = loose_path().coalesce(4, &e, 0).unwrap();
        assert_eq!((hp.n(), hp.m()), (7, 3));
        assert!(hp.is_connected());
    }

    #[test]
    fn coalesce_rejects_bad_vertex() {
        let e = single_edge3();
        assert!(matches!(
            e.coalesce(7, &e, 0),
            Err(Error::InvalidVertex { .. })
        ));
    }

    #[test]
    fn cartesian_single_edges() {
        let e = single_edge3();
        let p = e.cartesian(&e).unwrap();
        assert_eq!((p.n(), p.m()), (9, 6));
        assert!(p.is_connected());
    }

    #[test]
    fn cartesian_with_trivial_factor() {
        let e = single_edge3();
        let trivial = Hypergraph::new(3, 1, vec![]).unwrap();
        let p = e.cartesian(&trivial).unwrap();
        assert_eq!((p.n(), p.m()), (e.n(), e.m()));
        assert_eq!(p.edges(), e.edges());
    }

    #[test]
    fn cartesian_rejects_mixed_k() {
        let e3 = single_edge3();
        let e2 = SimpleGraph::single_edge().to_hypergraph();
        assert!(matches!(
            e3.cartesian(&e2),
            Err(Error::UniformityMismatch { .. })
        ));
    }

    #[test]
    fn json_round_trip() {
        let h = loose_path();
        let text = h.to_json();
        assert_eq!(Hypergraph::from_json(&text).unwrap(), h);
    }

    #[test]
    fn json_rejects_malformed() {
        assert!(Hypergraph::from_json("{\"k\": 3").is_err());
        let err = Hypergraph::from_json("{\"k\":3,\"n\":3,\"edges\":[[1,2,9]]}").unwrap_err();
        assert!(err.to_string().contains("edge 1"));
    }

    #[test]
    fn petersen_is_cubic() {
        let g = SimpleGraph::petersen();
        assert_eq!((g.n(), g.m()), (10, 15));
        let h = g.to_hypergraph();
        assert!(h.is_connected());
        assert!(h.degrees().iter().all(|&d| d == 3));
    }
}
