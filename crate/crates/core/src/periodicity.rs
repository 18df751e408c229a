//! Bounded search for periodicity witnesses.
//!
//! A witness is a degree `g` with `m^g = 1` together with a bijection
//! `γ: Λ^{g+} → Λ^{g-}` for which `W = Σ_u s_u s_{γ(u)}*` commutes with every
//! generator `s_e`. Commutation with `s_e` for `e` of colour `c` unrolls to a
//! rule on words: for every `u` and every `ξ ∈ Λ^{ε_c}`, the colour-`c`
//! prefix of `uξ` must equal that of `γ(u)ξ` (when `g_-` has no colour `c`)
//! or of `γ(u)` (otherwise), and `γ` of the remaining suffix is forced. The
//! search assigns `γ` one word at a time and propagates these forced values.

use crate::algebra::{Algebra, Element};
use crate::degree::{Degree, ZDegree};
use crate::error::Result;
use crate::graph::{Edge, KGraph};
use crate::rational::m_pow;
use crate::word::NormalWord;
use num_traits::One;
use std::collections::HashMap;

/// Default height bound for the search.
pub const DEFAULT_PERIODICITY_BOUND: u32 = 4;

/// Candidate degrees whose levels exceed this size are not searched.
pub const MAX_SEARCH_LEVEL: u128 = 4096;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicityWitness {
    pub g: ZDegree,
    /// `(u, γ(u))` for every `u ∈ Λ^{g+}`, sorted by `u`.
    pub pairing: Vec<(NormalWord, NormalWord)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Periodicity {
    Periodic(PeriodicityWitness),
    /// No witness with `‖g‖∞ <= bound`. Degrees listed in `skipped` were
    /// too large to search, so the result is inconclusive for them.
    AperiodicUpTo { bound: u32, skipped: Vec<ZDegree> },
}

impl Periodicity {
    pub fn is_periodic(&self) -> bool {
        matches!(self, Periodicity::Periodic(_))
    }
}

/// Nonzero `g` with `m^g = 1` and `‖g‖∞ <= bound`, one per `±g` pair (first
/// nonzero entry positive), ordered by sup norm and then lexicographically.
pub fn candidate_degrees(m: &[u32], bound: u32) -> Vec<ZDegree> {
    let k = m.len();
    let b = bound as i64;
    let mut out = Vec::new();
    let mut g = vec![-b; k];
    loop {
        let first = g.iter().find(|&&x| x != 0);
        if matches!(first, Some(&x) if x > 0) && m_pow(m, &g).is_one() {
            out.push(ZDegree(g.clone()));
        }
        let mut i = k;
        loop {
            if i == 0 {
                out.sort_by(|x, y| x.sup_norm().cmp(&y.sup_norm()).then_with(|| x.cmp(y)));
                return out;
            }
            i -= 1;
            if g[i] < b {
                g[i] += 1;
                break;
            }
            g[i] = -b;
        }
    }
}

/// Forced-value tables for one candidate degree.
struct Rules {
    /// `(c, ξ, u) -> (prefix edge of uξ, index of the suffix in Λ^a)`.
    left: Vec<Vec<Vec<(Edge, usize)>>>,
    /// `(c, ξ, v) -> (prefix edge required, index in Λ^b forced for the suffix)`.
    right: Vec<Vec<Vec<(Edge, usize)>>>,
}

fn build_rules(g: &KGraph, b: &Degree, la: &[NormalWord], lb: &[NormalWord]) -> Rules {
    let k = g.k();
    let ia: HashMap<&NormalWord, usize> = la.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let ib: HashMap<&NormalWord, usize> = lb.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut left = Vec::with_capacity(k);
    let mut right = Vec::with_capacity(k);
    for c in 0..k {
        let step = Degree::unit(k, c);
        let xis = g.enumerate_level(&step);
        let lc: Vec<Vec<(Edge, usize)>> = xis
            .iter()
            .map(|xi| {
                la.iter()
                    .map(|u| {
                        let (e, rest) = g.split(&g.concat(u, xi), &step);
                        (e.edges()[0], ia[&rest])
                    })
                    .collect()
            })
            .collect();
        let rc: Vec<Vec<(Edge, usize)>> = xis
            .iter()
            .map(|xi| {
                lb.iter()
                    .map(|v| {
                        if b.0[c] == 0 {
                            let (e, rest) = g.split(&g.concat(v, xi), &step);
                            (e.edges()[0], ib[&rest])
                        } else {
                            let (e, rest) = g.split(v, &step);
                            (e.edges()[0], ib[&g.concat(&rest, xi)])
                        }
                    })
                    .collect()
            })
            .collect();
        left.push(lc);
        right.push(rc);
    }
    Rules { left, right }
}

struct Search<'a> {
    rules: &'a Rules,
    gamma: Vec<Option<usize>>,
    used: Vec<bool>,
    trail: Vec<usize>,
}

impl Search<'_> {
    /// Assigns `γ(u) = v` and everything it forces; false on a conflict.
    fn assign(&mut self, u: usize, v: usize) -> bool {
        let mut stack = vec![(u, v)];
        while let Some((u, v)) = stack.pop() {
            match self.gamma[u] {
                Some(w) if w == v => continue,
                Some(_) => return false,
                None => {}
            }
            if self.used[v] {
                return false;
            }
            self.gamma[u] = Some(v);
            self.used[v] = true;
            self.trail.push(u);
            for (lc, rc) in self.rules.left.iter().zip(&self.rules.right) {
                for (lx, rx) in lc.iter().zip(rc) {
                    let (e, u2) = lx[u];
                    let (f, v2) = rx[v];
                    if e != f {
                        return false;
                    }
                    stack.push((u2, v2));
                }
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let u = self.trail.pop().unwrap();
            let v = self.gamma[u].take().unwrap();
            self.used[v] = false;
        }
    }

    fn solve(&mut self, accept: &mut dyn FnMut(&[Option<usize>]) -> bool) -> bool {
        let Some(u) = self.gamma.iter().position(Option::is_none) else {
            return accept(&self.gamma);
        };
        for v in 0..self.used.len() {
            if self.used[v] {
                continue;
            }
            let mark = self.trail.len();
            if self.assign(u, v) && self.solve(accept) {
                return true;
            }
            self.undo(mark);
        }
        false
    }
}

/// Builds `W = Σ_u s_u s_{γ(u)}*`.
pub fn witness_element(alg: &std::sync::Arc<Algebra>, pairing: &[(NormalWord, NormalWord)]) -> Result<Element> {
    alg.canonicalize(
        pairing
            .iter()
            .map(|(u, v)| (u.clone(), v.clone(), num_traits::One::one())),
    )
}

/// Checks `s_e W = W s_e` for every edge, exactly.
pub fn is_central(alg: &std::sync::Arc<Algebra>, w: &Element) -> Result<bool> {
    for e in alg.graph().edges() {
        let s = alg.isometry(NormalWord::from_sorted(vec![e]).unwrap());
        if s.mul(w)? != w.mul(&s)? {
            return Ok(false);
        }
    }
    Ok(true)
}

impl KGraph {
    /// Searches `g ∈ G \ {0}` with `‖g‖∞ <= bound` for a central unitary
    /// `W = Σ_u s_u s_{γ(u)}*`; every witness returned has been verified
    /// against all generators in the algebra.
    pub fn check_periodicity(&self, bound: u32) -> Result<Periodicity> {
        let k = self.k();
        let alg = Algebra::new(self.clone());
        let mut skipped = Vec::new();
        for g in candidate_degrees(self.m(), bound) {
            let a = g.plus();
            let b = g.minus();
            let size = self.level_size(&a);
            if size > MAX_SEARCH_LEVEL || self.level_size(&b) != size {
                skipped.push(g);
                continue;
            }
            let la = self.enumerate_level(&a);
            let lb = self.enumerate_level(&b);
            let rules = build_rules(self, &b, &la, &lb);
            let mut search = Search {
                rules: &rules,
                gamma: vec![None; la.len()],
                used: vec![false; lb.len()],
                trail: Vec::new(),
            };
            let mut found = None;
            let mut failure = None;
            search.solve(&mut |gamma| {
                let pairing: Vec<(NormalWord, NormalWord)> = gamma
                    .iter()
                    .enumerate()
                    .map(|(i, v)| (la[i].clone(), lb[v.unwrap()].clone()))
                    .collect();
                let verified = witness_element(&alg, &pairing).and_then(|w| is_central(&alg, &w));
                match verified {
                    Ok(true) => {
                        found = Some(pairing);
                        true
                    }
                    Ok(false) => false,
                    Err(e) => {
                        failure = Some(e);
                        true
                    }
                }
            });
            if let Some(e) = failure {
                return Err(e);
            }
            if let Some(pairing) = found {
                debug_assert_eq!(g.k(), k);
                return Ok(Periodicity::Periodic(PeriodicityWitness { g, pairing }));
            }
        }
        Ok(Periodicity::AperiodicUpTo { bound, skipped })
    }
}
