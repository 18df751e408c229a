//! Seeded random graphs, words and elements for tests and benchmarks.

use crate::algebra::{Algebra, Element};
use crate::degree::{Degree, ZDegree};
use crate::graph::{Edge, KGraph, ThetaFamily};
use crate::rational::Coeff;
use crate::word::NormalWord;
use rand::seq::SliceRandom;
use rand::Rng;
use std::collections::BTreeMap;
use std::sync::Arc;

/// A degree with every entry at most the corresponding entry of `max`.
pub fn random_degree<R: Rng>(rng: &mut R, max: &Degree) -> Degree {
    Degree(max.0.iter().map(|&x| rng.gen_range(0..=x)).collect())
}

/// A uniformly random edge sequence of degree `d`, shuffled and normalized.
pub fn random_word_of_degree<R: Rng>(g: &KGraph, rng: &mut R, d: &Degree) -> NormalWord {
    let mut edges = random_edges(g, rng, d);
    edges.shuffle(rng);
    g.normalize(&edges).expect("edges are in range")
}

/// Edges of degree `d` in random order, not normalized.
pub fn random_edges<R: Rng>(g: &KGraph, rng: &mut R, d: &Degree) -> Vec<Edge> {
    let mut edges = Vec::new();
    for (c, &n) in d.0.iter().enumerate() {
        for _ in 0..n {
            edges.push(Edge::new(c, rng.gen_range(0..g.m()[c] as usize)));
        }
    }
    edges.shuffle(rng);
    edges
}

pub fn random_word<R: Rng>(g: &KGraph, rng: &mut R, max: &Degree) -> NormalWord {
    let d = random_degree(rng, max);
    random_word_of_degree(g, rng, &d)
}

/// A nonzero rational `p/q` with `|p| <= 5`, `1 <= q <= 4`.
pub fn random_coeff<R: Rng>(rng: &mut R) -> Coeff {
    let mut p = 0;
    while p == 0 {
        p = rng.gen_range(-5i64..=5);
    }
    Coeff::new(p.into(), rng.gen_range(1i64..=4).into())
}

/// A sum of `terms` random terms with word degrees bounded by `max`.
pub fn random_element<R: Rng>(alg: &Arc<Algebra>, rng: &mut R, terms: usize, max: &Degree) -> Element {
    let g = alg.graph();
    let raw: Vec<_> = (0..terms)
        .map(|_| (random_word(g, rng, max), random_word(g, rng, max), random_coeff(rng)))
        .collect();
    alg.canonicalize(raw).expect("small elements fit the budget")
}

/// A random element of degree exactly `n`: terms `s_u s_v*` with
/// `d(v) = P`, `d(u) = n + P`, and `P - n-` bounded by `extra`.
pub fn random_homogeneous<R: Rng>(
    alg: &Arc<Algebra>,
    rng: &mut R,
    n: &ZDegree,
    terms: usize,
    extra: &Degree,
) -> Element {
    let g = alg.graph();
    let raw: Vec<_> = (0..terms)
        .map(|_| {
            let core = random_degree(rng, extra);
            let right = core.add(&n.minus());
            let left = core.add(&n.plus());
            (
                random_word_of_degree(g, rng, &left),
                random_word_of_degree(g, rng, &right),
                random_coeff(rng),
            )
        })
        .collect();
    alg.canonicalize(raw).expect("small elements fit the budget")
}

/// A random valid graph with edge counts `m`, by rejection sampling over
/// independent uniform permutations. `None` after `attempts` failures.
pub fn random_graph<R: Rng>(rng: &mut R, m: &[u32], attempts: usize) -> Option<KGraph> {
    let k = m.len();
    for _ in 0..attempts {
        let mut perms = BTreeMap::new();
        for i in 0..k {
            for j in i + 1..k {
                let mut p: Vec<u32> = (0..m[i] * m[j]).collect();
                p.shuffle(rng);
                perms.insert((i, j), p);
            }
        }
        if let Ok(g) = KGraph::new(k, m.to_vec(), ThetaFamily { perms }) {
            return Some(g);
        }
    }
    None
}
