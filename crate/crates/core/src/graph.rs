//! Single-vertex k-graphs: the commutation data and its validation.

use crate::degree::Degree;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// A generator `e^colour_index`. Both fields are 0-based internally.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub colour: u16,
    pub index: u16,
}

impl Edge {
    pub fn new(colour: usize, index: usize) -> Self {
        Edge {
            colour: colour as u16,
            index: index as u16,
        }
    }

    /// Builds an edge from the 1-based labels used in files and on the command line.
    pub fn one_based(colour: usize, index: usize) -> Self {
        Edge::new(colour - 1, index - 1)
    }
}

impl fmt::Debug for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e^{}_{}", self.colour + 1, self.index + 1)
    }
}

/// One permutation `theta_ij` of `m_i x m_j` per colour pair `i < j`.
///
/// Keys are 0-based colour pairs. A permutation maps the flat index
/// `s * m_j + t` of `(s, t)` to the flat index of `theta_ij(s, t)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ThetaFamily {
    pub perms: BTreeMap<(usize, usize), Vec<u32>>,
}

impl ThetaFamily {
    /// Identity permutations on every pair.
    pub fn identity(m: &[u32]) -> Self {
        let mut perms = BTreeMap::new();
        for i in 0..m.len() {
            for j in i + 1..m.len() {
                perms.insert((i, j), (0..m[i] * m[j]).collect());
            }
        }
        ThetaFamily { perms }
    }

    /// The 2-graph family with a single permutation.
    pub fn pair(perm: Vec<u32>) -> Self {
        let mut perms = BTreeMap::new();
        perms.insert((0, 1), perm);
        ThetaFamily { perms }
    }
}

/// Location of a failure of the cubic condition; all labels 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubicViolation {
    pub colours: (usize, usize, usize),
    pub edges: (usize, usize, usize),
}

/// A validated single-vertex k-graph.
///
/// Stores both `theta` and its inverse so that rewriting in either
/// direction is a table lookup.
#[derive(Clone, Debug)]
pub struct KGraph {
    k: usize,
    m: Vec<u32>,
    theta: ThetaFamily,
    // Indexed by i * k + j for i < j; empty otherwise.
    fwd: Vec<Vec<u32>>,
    inv: Vec<Vec<u32>>,
}

impl PartialEq for KGraph {
    fn eq(&self, other: &Self) -> bool {
        self.k == other.k && self.m == other.m && self.theta == other.theta
    }
}

impl Eq for KGraph {}

impl KGraph {
    /// Validates `(k, m, theta)` and builds the graph.
    ///
    /// Structural problems are reported as [`Error::Structural`]; a well-formed
    /// family that fails the cubic condition yields [`Error::Cubic`] listing
    /// every violating colour/edge triple.
    pub fn new(k: usize, m: Vec<u32>, theta: ThetaFamily) -> Result<Self> {
        let g = Self::structural(k, m, theta)?;
        let violations = g.cubic_violations();
        if violations.is_empty() {
            Ok(g)
        } else {
            Err(Error::Cubic(violations))
        }
    }

    /// Builds the graph after the structural checks only.
    fn structural(k: usize, m: Vec<u32>, theta: ThetaFamily) -> Result<Self> {
        if k == 0 {
            return Err(Error::Structural("k must be at least 1".into()));
        }
        if m.len() != k {
            return Err(Error::Structural(format!(
                "expected {k} edge counts, got {}",
                m.len()
            )));
        }
        if let Some(i) = m.iter().position(|&x| x == 0) {
            return Err(Error::Structural(format!("colour {} has no edges", i + 1)));
        }
        if m.iter().any(|&x| x > u16::MAX as u32) {
            return Err(Error::Structural("edge count too large".into()));
        }
        let expected = k * (k - 1) / 2;
        if theta.perms.len() != expected {
            return Err(Error::Structural(format!(
                "expected {expected} permutations, got {}",
                theta.perms.len()
            )));
        }
        let mut fwd = vec![Vec::new(); k * k];
        let mut inv = vec![Vec::new(); k * k];
        for (&(i, j), perm) in &theta.perms {
            if !(i < j && j < k) {
                return Err(Error::Structural(format!(
                    "invalid colour pair ({},{})",
                    i + 1,
                    j + 1
                )));
            }
            let n = (m[i] * m[j]) as usize;
            if perm.len() != n {
                return Err(Error::Structural(format!(
                    "permutation for ({},{}) has length {}, expected {n}",
                    i + 1,
                    j + 1,
                    perm.len()
                )));
            }
            let mut inverse = vec![u32::MAX; n];
            for (x, &y) in perm.iter().enumerate() {
                if (y as usize) >= n || inverse[y as usize] != u32::MAX {
                    return Err(Error::Structural(format!(
                        "theta for ({},{}) is not a bijection",
                        i + 1,
                        j + 1
                    )));
                }
                inverse[y as usize] = x as u32;
            }
            fwd[i * k + j] = perm.clone();
            inv[i * k + j] = inverse;
        }
        Ok(KGraph {
            k,
            m,
            theta,
            fwd,
            inv,
        })
    }

    /// Convenience constructor for 2-graphs.
    pub fn two_graph(m1: u32, m2: u32, perm: Vec<u32>) -> Result<Self> {
        KGraph::new(2, vec![m1, m2], ThetaFamily::pair(perm))
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn m(&self) -> &[u32] {
        &self.m
    }

    pub fn theta(&self) -> &ThetaFamily {
        &self.theta
    }

    /// All edges, colour by colour.
    pub fn edges(&self) -> Vec<Edge> {
        (0..self.k)
            .flat_map(|c| (0..self.m[c] as usize).map(move |i| Edge::new(c, i)))
            .collect()
    }

    /// `m^p`, the size of the level of degree `p`.
    pub fn level_size(&self, p: &Degree) -> u128 {
        self.m
            .iter()
            .zip(&p.0)
            .map(|(&mi, &pi)| (mi as u128).pow(pi))
            .product()
    }

    /// Rewrites `e^lo_s e^hi_t` (lo < hi) as `e^hi_t' e^lo_s'`, returning `(t', s')`.
    #[inline]
    pub fn raise(&self, lo: usize, s: u16, hi: usize, t: u16) -> (u16, u16) {
        let mj = self.m[hi];
        let img = self.fwd[lo * self.k + hi][(s as u32 * mj + t as u32) as usize];
        ((img % mj) as u16, (img / mj) as u16)
    }

    /// Rewrites `e^hi_t' e^lo_s'` (lo < hi) as `e^lo_s e^hi_t`, returning `(s, t)`.
    #[inline]
    pub fn lower(&self, hi: usize, t_prime: u16, lo: usize, s_prime: u16) -> (u16, u16) {
        let mj = self.m[hi];
        let pre = self.inv[lo * self.k + hi][(s_prime as u32 * mj + t_prime as u32) as usize];
        ((pre / mj) as u16, (pre % mj) as u16)
    }

    /// Every colour/edge triple on which the two reorderings of
    /// `e^i_t1 e^j_t2 e^l_t3` into the order `l, j, i` disagree.
    pub fn cubic_violations(&self) -> Vec<CubicViolation> {
        let mut out = Vec::new();
        let k = self.k;
        for i in 0..k {
            for j in i + 1..k {
                for l in j + 1..k {
                    for t1 in 0..self.m[i] as u16 {
                        for t2 in 0..self.m[j] as u16 {
                            for t3 in 0..self.m[l] as u16 {
                                if self.cubic_paths(i, j, l, t1, t2, t3).is_none() {
                                    out.push(CubicViolation {
                                        colours: (i + 1, j + 1, l + 1),
                                        edges: (t1 as usize + 1, t2 as usize + 1, t3 as usize + 1),
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// Both bracketings of the tri-coloured word; `Some` when they agree.
    fn cubic_paths(
        &self,
        i: usize,
        j: usize,
        l: usize,
        t1: u16,
        t2: u16,
        t3: u16,
    ) -> Option<(u16, u16, u16)> {
        // i j l -> i l j -> l i j -> l j i
        let (a, b) = self.raise(j, t2, l, t3);
        let (c, d) = self.raise(i, t1, l, a);
        let (e, f) = self.raise(i, d, j, b);
        // i j l -> j i l -> j l i -> l j i
        let (a2, b2) = self.raise(i, t1, j, t2);
        let (c2, d2) = self.raise(i, b2, l, t3);
        let (e2, f2) = self.raise(j, a2, l, c2);
        ((c, e, f) == (e2, f2, d2)).then_some((c, e, f))
    }
}

/// Checks `(k, m, theta)` without constructing a graph, returning the
/// cubic violations (empty when valid) or a structural error.
pub fn validate_kgraph(k: usize, m: Vec<u32>, theta: ThetaFamily) -> Result<Vec<CubicViolation>> {
    Ok(KGraph::structural(k, m, theta)?.cubic_violations())
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Flat-index permutation of `(Z/n)^2` from a map on pairs.
    fn perm_from(m1: u32, m2: u32, f: impl Fn(u32, u32) -> (u32, u32)) -> Vec<u32> {
        (0..m1 * m2)
            .map(|x| {
                let (s, t) = f(x / m2, x % m2);
                s * m2 + t
            })
            .collect()
    }

    #[test]
    fn every_two_graph_is_valid() {
        // cubic condition is vacuous for k = 2
        let perms = [[0, 1, 2, 3], [1, 0, 3, 2], [3, 2, 1, 0], [2, 0, 1, 3]];
        for p in perms {
            assert!(KGraph::two_graph(2, 2, p.to_vec()).is_ok());
        }
    }

    #[test]
    fn identity_three_graph_is_valid() {
        let m = vec![2, 2, 2];
        assert!(KGraph::new(3, m.clone(), ThetaFamily::identity(&m)).is_ok());
    }

    /// Exhaustive oracle: rewrite both bracketings by hand-coded table lookups.
    fn oracle_violations(m: u32, theta: &BTreeMap<(usize, usize), Vec<u32>>) -> usize {
        let ap = |i: usize, j: usize, s: u32, t: u32| -> (u32, u32) {
            let img = theta[&(i, j)][(s * m + t) as usize];
            (img / m, img % m)
        };
        let mut bad = 0;
        for t1 in 0..m {
            for t2 in 0..m {
                for t3 in 0..m {
                    // path A
                    let (t2a, t3a) = ap(1, 2, t2, t3);
                    let (t1a, t3b) = ap(0, 2, t1, t3a);
                    let (t1b, t2b) = ap(0, 1, t1a, t2a);
                    // path B
                    let (t1c, t2c) = ap(0, 1, t1, t2);
                    let (t1d, t3c) = ap(0, 2, t1c, t3);
                    let (t2d, t3d) = ap(1, 2, t2c, t3c);
                    if (t3b, t2b, t1b) != (t3d, t2d, t1d) {
                        bad += 1;
                    }
                }
            }
        }
        bad
    }

    #[test]
    fn four_cycle_on_one_pair_matches_exhaustive_oracle() {
        let id = perm_from(2, 2, |s, t| (s, t));
        // (1,1) -> (1,2) -> (2,2) -> (2,1) -> (1,1)
        let cyc = perm_from(2, 2, |s, t| match (s, t) {
            (0, 0) => (0, 1),
            (0, 1) => (1, 1),
            (1, 1) => (1, 0),
            _ => (0, 0),
        });
        let mut perms = BTreeMap::new();
        perms.insert((0, 1), id.clone());
        perms.insert((0, 2), id);
        perms.insert((1, 2), cyc);
        let expected = oracle_violations(2, &perms);
        let found = validate_kgraph(3, vec![2, 2, 2], ThetaFamily { perms }).unwrap();
        assert_eq!(found.len(), expected);
    }

    #[test]
    fn random_families_match_exhaustive_oracle() {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let mut perms = BTreeMap::new();
            for pair in [(0, 1), (0, 2), (1, 2)] {
                let mut p: Vec<u32> = (0..4).collect();
                p.shuffle(&mut rng);
                perms.insert(pair, p);
            }
            let expected = oracle_violations(2, &perms);
            let found = validate_kgraph(3, vec![2, 2, 2], ThetaFamily { perms }).unwrap();
            assert_eq!(found.len(), expected);
        }
    }

    #[test]
    fn structural_errors_are_distinct() {
        let e = KGraph::two_graph(2, 2, vec![0, 0, 1, 2]).unwrap_err();
        assert!(matches!(e, Error::Structural(_)));
        let e = KGraph::two_graph(2, 2, vec![0, 1, 2]).unwrap_err();
        assert!(matches!(e, Error::Structural(_)));
        let e = KGraph::new(3, vec![2, 2, 2], ThetaFamily::pair(vec![0, 1, 2, 3])).unwrap_err();
        assert!(matches!(e, Error::Structural(_)));
    }

    #[test]
    fn raise_and_lower_are_inverse() {
        let g = KGraph::two_graph(2, 3, vec![5, 0, 3, 1, 4, 2]).unwrap();
        for s in 0..2 {
            for t in 0..3 {
                let (t2, s2) = g.raise(0, s, 1, t);
                assert_eq!(g.lower(1, t2, 0, s2), (s, t));
            }
        }
    }
}
