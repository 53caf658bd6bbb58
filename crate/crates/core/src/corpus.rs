//! The named instance corpus used by the verification CLI and the
//! acceptance suite.
//!
//! Instances whose Macaulay basis stays small enough run the full exact
//! pipeline; the deliberately oversized ones exercise the guard-skip
//! path. Instances with a heavy in-guard basis (e.g. graph powers on six
//! or more vertices) are exercised through the closed-form family sweep
//! instead of the charpoly corpus.

use crate::hypergraph::{Hypergraph, SimpleGraph};

pub struct CorpusEntry {
    pub name: &'static str,
    pub hypergraph: Hypergraph,
}

fn entry(name: &'static str, hypergraph: Hypergraph) -> CorpusEntry {
    CorpusEntry { name, hypergraph }
}

pub fn single_edge(k: usize) -> Hypergraph {
    Hypergraph::new(k, k, vec![(0..k).collect()]).expect("single edge is valid")
}

pub fn loose_path3() -> Hypergraph {
    Hypergraph::from_one_based(3, 5, vec![vec![1, 2, 3], vec![3, 4, 5]])
        .expect("loose path is valid")
}

/// Canonical hypertree with m edges: the k-th power of the path graph.
pub fn hypertree(k: usize, m: usize) -> crate::Result<Hypergraph> {
    Hypergraph::power_of_graph(&SimpleGraph::path(m + 1)?, k)
}

pub fn default_corpus() -> Vec<CorpusEntry> {
    let e3 = single_edge(3);
    let path = loose_path3();
    vec![
        entry("edge3", e3.clone()),
        entry("loose-path", path.clone()),
        entry("complete-4-3", Hypergraph::complete(4, 3).unwrap()),
        entry("complete-5-3", Hypergraph::complete(5, 3).unwrap()),
        entry("k2-edge", SimpleGraph::single_edge().to_hypergraph()),
        entry("k2-path4", SimpleGraph::path(4).unwrap().to_hypergraph()),
        entry("k2-cycle5", SimpleGraph::cycle(5).unwrap().to_hypergraph()),
        entry("k2-star4", SimpleGraph::star(4).unwrap().to_hypergraph()),
        entry("k2-petersen", SimpleGraph::petersen().to_hypergraph()),
        entry("squid-3-1", Hypergraph::squid(3, 1).unwrap()),
        entry("squid-3-2", Hypergraph::squid(3, 2).unwrap()),
        entry("squid-3-3", Hypergraph::squid(3, 3).unwrap()),
        entry("sunflower-3-1-2", Hypergraph::sunflower(3, 1, 2).unwrap()),
        entry("sunflower-3-1-3", Hypergraph::sunflower(3, 1, 3).unwrap()),
        entry("sunflower-3-2-2", Hypergraph::sunflower(3, 2, 2).unwrap()),
        entry("sunflower-3-2-3", Hypergraph::sunflower(3, 2, 3).unwrap()),
        entry("edge4", single_edge(4)),
        entry("squid-4-2", Hypergraph::squid(4, 2).unwrap()),
        entry("coalesce-edge3-edge3", e3.coalesce(2, &e3, 0).unwrap()),
        entry("coalesce-path-edge3", path.coalesce(4, &e3, 0).unwrap()),
        entry("cartesian-edge3-edge3", e3.cartesian(&e3).unwrap()),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_valid_and_connected() {
        for entry in default_corpus() {
            assert!(
                entry.hypergraph.is_connected(),
                "{} must be connected",
                entry.name
            );
        }
    }

    #[test]
    fn hypertree_m2_is_a_loose_path() {
        let t = hypertree(3, 2).unwrap();
        assert_eq!((t.n(), t.m()), (5, 2));
        assert!(t.is_connected());
        // two edges sharing exactly one vertex
        let degrees = t.degrees();
        assert_eq!(degrees.iter().filter(|&&d| d == 2).count(), 1);
        assert_eq!(degrees.iter().filter(|&&d| d == 1).count(), 4);
    }
}
