//! Normal forms of words in the k-graph semigroup.
//!
//! A word is normal when its edges appear in ascending colour order. Every
//! element of the semigroup has exactly one normal representative.

use crate::degree::Degree;
use crate::error::{Error, Result};
use crate::graph::{Edge, KGraph};
use rand::Rng;
use std::fmt;

/// A colour-ordered word: the blocks `u_1 ... u_k` stored back to back.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct NormalWord(Vec<Edge>);

impl NormalWord {
    pub fn empty() -> Self {
        NormalWord(Vec::new())
    }

    pub fn edges(&self) -> &[Edge] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self, k: usize) -> Degree {
        let mut d = vec![0; k];
        for e in &self.0 {
            d[e.colour as usize] += 1;
        }
        Degree(d)
    }

    /// The block of colour `c`, as 0-based edge indices.
    pub fn block(&self, c: usize) -> Vec<u16> {
        self.0
            .iter()
            .filter(|e| e.colour as usize == c)
            .map(|e| e.index)
            .collect()
    }

    /// Wraps an already colour-ordered edge list.
    pub fn from_sorted(edges: Vec<Edge>) -> Option<Self> {
        edges
            .windows(2)
            .all(|w| w[0].colour <= w[1].colour)
            .then_some(NormalWord(edges))
    }
}

impl fmt::Debug for NormalWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "∅");
        }
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{e:?}")?;
        }
        Ok(())
    }
}

impl KGraph {
    fn check_edge(&self, e: Edge) -> Result<()> {
        let c = e.colour as usize;
        if c >= self.k() || e.index as u32 >= self.m()[c] {
            return Err(Error::Degree(format!("edge {e:?} out of range")));
        }
        Ok(())
    }

    /// Appends `e` to a normal edge list, moving it left past every edge of
    /// higher colour.
    pub(crate) fn push_edge(&self, word: &mut Vec<Edge>, mut e: Edge) {
        let c = e.colour as usize;
        let mut pos = word.len();
        while pos > 0 && word[pos - 1].colour > e.colour {
            let prev = word[pos - 1];
            let (s, t) = self.lower(prev.colour as usize, prev.index, c, e.index);
            word[pos - 1].index = t;
            e.index = s;
            pos -= 1;
        }
        word.insert(pos, e);
    }

    /// Normal form of an arbitrary edge sequence.
    pub fn normalize(&self, word: &[Edge]) -> Result<NormalWord> {
        let mut out = Vec::with_capacity(word.len());
        for &e in word {
            self.check_edge(e)?;
            self.push_edge(&mut out, e);
        }
        Ok(NormalWord(out))
    }

    /// Normal form reached by applying the rewrite rule at randomly chosen
    /// positions until no colour inversion remains.
    pub fn normalize_randomly<R: Rng>(&self, word: &[Edge], rng: &mut R) -> Result<NormalWord> {
        for &e in word {
            self.check_edge(e)?;
        }
        let mut w = word.to_vec();
        let mut inversions: Vec<usize> = Vec::new();
        loop {
            inversions.clear();
            inversions.extend((0..w.len().saturating_sub(1)).filter(|&i| w[i].colour > w[i + 1].colour));
            if inversions.is_empty() {
                return Ok(NormalWord(w));
            }
            let i = inversions[rng.gen_range(0..inversions.len())];
            let (hi, lo) = (w[i], w[i + 1]);
            let (s, t) = self.lower(hi.colour as usize, hi.index, lo.colour as usize, lo.index);
            w[i] = Edge { colour: lo.colour, index: s };
            w[i + 1] = Edge { colour: hi.colour, index: t };
        }
    }

    /// Normal form of the product `a b`.
    pub fn concat(&self, a: &NormalWord, b: &NormalWord) -> NormalWord {
        let mut out = Vec::with_capacity(a.len() + b.len());
        out.extend_from_slice(&a.0);
        for &e in &b.0 {
            self.push_edge(&mut out, e);
        }
        NormalWord(out)
    }

    pub fn degree_of(&self, w: &NormalWord) -> Degree {
        w.degree(self.k())
    }

    /// The unique split `w = mu nu` with `d(mu) = p`.
    pub fn factorize(&self, w: &NormalWord, p: &Degree) -> Result<(NormalWord, NormalWord)> {
        let d = self.degree_of(w);
        if !p.le(&d) {
            return Err(Error::Degree(format!("{p} is not below d(w) = {d}")));
        }
        Ok(self.split(w, p))
    }

    /// `factorize` without the precondition check.
    pub(crate) fn split(&self, w: &NormalWord, p: &Degree) -> (NormalWord, NormalWord) {
        let mut mu: Vec<Edge> = Vec::with_capacity(p.total() as usize);
        let mut nu: Vec<Edge> = Vec::with_capacity(w.len() - p.total() as usize);
        let mut seen = vec![0u32; self.k()];
        for &e in &w.0 {
            let c = e.colour as usize;
            if seen[c] < p.0[c] {
                seen[c] += 1;
                // move the prefix edge left past the suffix edges collected so far,
                // all of which have lower colour
                let mut e = e;
                for slot in nu.iter_mut().rev() {
                    let (t, s) = self.raise(slot.colour as usize, slot.index, c, e.index);
                    e.index = t;
                    slot.index = s;
                }
                mu.push(e);
            } else {
                nu.push(e);
            }
        }
        (NormalWord(mu), NormalWord(nu))
    }

    /// All words of degree `p`, in lexicographic order on blocks.
    pub fn enumerate_level(&self, p: &Degree) -> Vec<NormalWord> {
        let mut out = vec![Vec::with_capacity(p.total() as usize)];
        for (c, &len) in p.0.iter().enumerate() {
            for _ in 0..len {
                out = out
                    .into_iter()
                    .flat_map(|w: Vec<Edge>| {
                        (0..self.m()[c] as usize).map(move |i| {
                            let mut w = w.clone();
                            w.push(Edge::new(c, i));
                            w
                        })
                    })
                    .collect();
            }
        }
        out.into_iter().map(NormalWord).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    const ID: [u32; 4] = [0, 1, 2, 3];
    const FLIP: [u32; 4] = [0, 2, 1, 3];

    fn e(c: usize, i: usize) -> Edge {
        Edge::one_based(c, i)
    }

    #[test]
    fn ordered_word_is_fixed() {
        let g = KGraph::two_graph(2, 2, ID.to_vec()).unwrap();
        let w = [e(1, 2), e(1, 1), e(2, 2)];
        assert_eq!(g.normalize(&w).unwrap().edges(), &w);
    }

    #[test]
    fn swap_under_identity_and_flip() {
        let g = KGraph::two_graph(2, 2, ID.to_vec()).unwrap();
        assert_eq!(g.normalize(&[e(2, 1), e(1, 2)]).unwrap().edges(), &[e(1, 2), e(2, 1)]);
        let g = KGraph::two_graph(2, 2, FLIP.to_vec()).unwrap();
        assert_eq!(g.normalize(&[e(2, 1), e(1, 2)]).unwrap().edges(), &[e(1, 1), e(2, 2)]);
    }

    #[test]
    fn factorize_examples() {
        let g = KGraph::two_graph(2, 2, ID.to_vec()).unwrap();
        let w = g.normalize(&[e(1, 1), e(2, 2)]).unwrap();
        let (mu, nu) = g.factorize(&w, &Degree(vec![0, 1])).unwrap();
        assert_eq!(mu.edges(), &[e(2, 2)]);
        assert_eq!(nu.edges(), &[e(1, 1)]);
        let (mu, nu) = g.factorize(&w, &Degree(vec![0, 0])).unwrap();
        assert!(mu.is_empty());
        assert_eq!(nu, w);
        let (mu, nu) = g.factorize(&w, &Degree(vec![1, 1])).unwrap();
        assert_eq!(mu, w);
        assert!(nu.is_empty());
        assert!(matches!(g.factorize(&w, &Degree(vec![2, 0])), Err(Error::Degree(_))));
    }

    #[test]
    fn level_sizes() {
        let g = KGraph::two_graph(2, 3, (0..6).collect()).unwrap();
        assert_eq!(g.enumerate_level(&Degree(vec![0, 0])).len(), 1);
        assert_eq!(g.enumerate_level(&Degree(vec![1, 1])).len(), 6);
        let lvl = g.enumerate_level(&Degree(vec![1, 0]));
        assert_eq!(lvl.iter().map(|w| w.edges()[0]).collect::<Vec<_>>(), vec![e(1, 1), e(1, 2)]);
        let lvl = g.enumerate_level(&Degree(vec![2, 2]));
        assert_eq!(lvl.len(), 36);
        assert!(lvl.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn factorization_round_trip_exhaustive() {
        for perm in [ID, FLIP, [2, 0, 1, 3], [3, 2, 1, 0]] {
            let g = KGraph::two_graph(2, 2, perm.to_vec()).unwrap();
            for d in Degree(vec![2, 2]).box_below() {
                for w in g.enumerate_level(&d) {
                    for p in d.box_below() {
                        let (mu, nu) = g.factorize(&w, &p).unwrap();
                        assert_eq!(g.degree_of(&mu), p);
                        assert_eq!(g.concat(&mu, &nu), w);
                        // uniqueness: no other pair of the right degrees multiplies to w
                        let hits = g
                            .enumerate_level(&p)
                            .iter()
                            .flat_map(|a| {
                                g.enumerate_level(&d.sub(&p))
                                    .into_iter()
                                    .map(move |b| (a.clone(), b))
                            })
                            .filter(|(a, b)| g.concat(a, b) == w)
                            .count();
                        assert_eq!(hits, 1);
                    }
                }
            }
        }
    }

    #[test]
    fn random_orders_agree_on_three_graph() {
        let m = vec![2, 3, 2];
        let g = KGraph::new(3, m.clone(), crate::graph::ThetaFamily::identity(&m)).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let len = rng.gen_range(0..10);
            let w: Vec<Edge> = (0..len)
                .map(|_| {
                    let c = rng.gen_range(0..3);
                    Edge::new(c, rng.gen_range(0..m[c] as usize))
                })
                .collect();
            assert_eq!(g.normalize(&w).unwrap(), g.normalize_randomly(&w, &mut rng).unwrap());
        }
    }
}
