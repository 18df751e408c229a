//! Minimal common extensions and the alignment properties built on them.

use crate::degree::Degree;
use crate::graph::{Edge, KGraph};
use crate::word::NormalWord;
use std::collections::HashMap;

/// `Λ^min(mu, nu)`: all `(xi, eta)` with `mu xi = nu eta` at degree `d(mu) v d(nu)`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MinimalExtensionSet {
    pub pairs: Vec<(NormalWord, NormalWord)>,
}

impl MinimalExtensionSet {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// Outcome of the little pull-back check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PullbackReport {
    pub holds: bool,
    /// First edge pair (in colour-then-index order) with two or more minimal extensions.
    pub witness: Option<(Edge, Edge)>,
}

/// Outcome of the bounded single-alignment check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlignmentReport {
    pub holds: bool,
    pub witness: Option<(NormalWord, NormalWord)>,
}

impl KGraph {
    /// Enumerates `xi` over `Λ^{(d(mu) v d(nu)) - d(mu)}` and keeps those for
    /// which `nu` is the degree-`d(nu)` prefix of `mu xi`.
    pub fn lambda_min(&self, mu: &NormalWord, nu: &NormalWord) -> MinimalExtensionSet {
        let dmu = self.degree_of(mu);
        let dnu = self.degree_of(nu);
        let join = dmu.join(&dnu);
        let pairs = self
            .enumerate_level(&join.sub(&dmu))
            .into_iter()
            .filter_map(|xi| {
                let w = self.concat(mu, &xi);
                let (prefix, eta) = self.split(&w, &dnu);
                (prefix == *nu).then_some((xi, eta))
            })
            .collect();
        MinimalExtensionSet { pairs }
    }

    /// `|Λ^min(e, f)| <= 1` for every pair of edges of distinct colours.
    pub fn check_little_pullback(&self) -> PullbackReport {
        let edges = self.edges();
        for e in &edges {
            for f in edges.iter().filter(|f| f.colour > e.colour) {
                let mu = NormalWord::from_sorted(vec![*e]).unwrap();
                let nu = NormalWord::from_sorted(vec![*f]).unwrap();
                if self.lambda_min(&mu, &nu).len() > 1 {
                    return PullbackReport {
                        holds: false,
                        witness: Some((*e, *f)),
                    };
                }
            }
        }
        PullbackReport {
            holds: true,
            witness: None,
        }
    }

    /// `|Λ^min(mu, nu)| <= 1` for all words with degrees at most `maxdeg`.
    ///
    /// For each `mu` and each target degree `b`, one pass over the extensions
    /// `xi` counts the prefixes of degree `b` of `mu xi`; a prefix seen twice is
    /// a `nu` with two minimal extensions.
    pub fn check_singly_aligned(&self, maxdeg: &Degree) -> AlignmentReport {
        let degrees = maxdeg.box_below();
        let mut counts: HashMap<NormalWord, u32> = HashMap::new();
        for a in &degrees {
            for mu in self.enumerate_level(a) {
                for b in &degrees {
                    let ext = a.join(b).sub(a);
                    counts.clear();
                    for xi in self.enumerate_level(&ext) {
                        let w = self.concat(&mu, &xi);
                        let (prefix, _) = self.split(&w, b);
                        let n = counts.entry(prefix).or_insert(0);
                        *n += 1;
                        if *n > 1 {
                            let nu = counts.keys().find(|k| counts[*k] > 1).cloned().unwrap();
                            return AlignmentReport {
                                holds: false,
                                witness: Some((mu, nu)),
                            };
                        }
                    }
                }
            }
        }
        AlignmentReport {
            holds: true,
            witness: None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(g: &KGraph, edges: &[(usize, usize)]) -> NormalWord {
        let e: Vec<Edge> = edges.iter().map(|&(c, i)| Edge::one_based(c, i)).collect();
        g.normalize(&e).unwrap()
    }

    #[test]
    fn equal_words_have_trivial_extension() {
        let g = KGraph::two_graph(2, 2, vec![2, 0, 1, 3]).unwrap();
        let mu = word(&g, &[(1, 2), (2, 1)]);
        let lm = g.lambda_min(&mu, &mu);
        assert_eq!(lm.pairs, vec![(NormalWord::empty(), NormalWord::empty())]);
    }

    #[test]
    fn identity_and_flip_extensions() {
        let g = KGraph::two_graph(2, 2, vec![0, 1, 2, 3]).unwrap();
        let (mu, nu) = (word(&g, &[(1, 1)]), word(&g, &[(2, 1)]));
        assert_eq!(g.lambda_min(&mu, &nu).pairs, vec![(nu.clone(), mu.clone())]);
        assert!(g.check_little_pullback().holds);

        let g = KGraph::two_graph(2, 2, vec![0, 2, 1, 3]).unwrap();
        let lm = g.lambda_min(&mu, &nu);
        assert_eq!(
            lm.pairs,
            vec![
                (word(&g, &[(2, 1)]), word(&g, &[(1, 1)])),
                (word(&g, &[(2, 2)]), word(&g, &[(1, 2)])),
            ]
        );
        let rep = g.check_little_pullback();
        assert!(!rep.holds);
        assert_eq!(rep.witness, Some((Edge::one_based(1, 1), Edge::one_based(2, 1))));
    }

    #[test]
    fn three_cycle_fails_pullback() {
        let g = KGraph::two_graph(2, 2, vec![2, 0, 1, 3]).unwrap();
        assert!(!g.check_little_pullback().holds);
    }

    #[test]
    fn lambda_min_is_symmetric() {
        for perm in [[0, 1, 2, 3], [0, 2, 1, 3], [2, 0, 1, 3], [1, 0, 3, 2]] {
            let g = KGraph::two_graph(2, 2, perm.to_vec()).unwrap();
            let words: Vec<NormalWord> = Degree(vec![1, 2])
                .box_below()
                .iter()
                .flat_map(|d| g.enumerate_level(d))
                .collect();
            for mu in &words {
                for nu in &words {
                    let mut a: Vec<_> = g.lambda_min(mu, nu).pairs;
                    let mut b: Vec<_> = g
                        .lambda_min(nu, mu)
                        .pairs
                        .into_iter()
                        .map(|(x, y)| (y, x))
                        .collect();
                    a.sort();
                    b.sort();
                    assert_eq!(a, b);
                }
            }
        }
    }
}
