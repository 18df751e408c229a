//! Fixtures shared by the benchmarks.

use kgraph::sample::{random_element, random_homogeneous};
use kgraph::{Algebra, Degree, Element, KGraph, ZDegree};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

pub fn rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(7)
}

/// The (2,2) graph with θ = identity.
pub fn identity_graph() -> KGraph {
    KGraph::two_graph(2, 2, vec![0, 1, 2, 3]).expect("valid graph")
}

/// The (2,2) graph with the aperiodic 3-cycle θ.
pub fn cycle_graph() -> KGraph {
    KGraph::two_graph(2, 2, vec![2, 0, 1, 3]).expect("valid graph")
}

pub fn algebra(g: KGraph) -> Arc<Algebra> {
    Algebra::new(g)
}

/// A pair of random elements with words up to degree (2,2).
pub fn element_pair(alg: &Arc<Algebra>, terms: usize) -> (Element, Element) {
    let mut r = rng();
    let max = Degree(vec![2, 2]);
    (
        random_element(alg, &mut r, terms, &max),
        random_element(alg, &mut r, terms, &max),
    )
}

/// A random element of degree (1,-1).
pub fn offdiagonal(alg: &Arc<Algebra>, terms: usize) -> Element {
    random_homogeneous(alg, &mut rng(), &ZDegree(vec![1, -1]), terms, &Degree(vec![1, 1]))
}
