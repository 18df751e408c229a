//! Isomorphism-invariant serialization of single-vertex k-graphs.
//!
//! Two graphs are identified when one is obtained from the other by
//! relabelling the edges of each colour and permuting colours that carry the
//! same number of edges.

use crate::error::{Error, Result};
use crate::graph::{KGraph, ThetaFamily};
use std::collections::BTreeMap;

/// Relabelling-group size above which canonicalization is refused.
pub const MAX_RELABELINGS: u128 = 5_000_000;

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
}

fn factorial(n: u32) -> u128 {
    (1..=n as u128).product()
}

/// The graph obtained by renaming colour `c` to `sigma[c]` and edge `e^c_s`
/// to `e^{sigma[c]}_{pi[c][s]}`.
pub fn transport(g: &KGraph, sigma: &[usize], pi: &[Vec<usize>]) -> ThetaFamily {
    let m = g.m();
    let k = g.k();
    let mut new_m = vec![0u32; k];
    for c in 0..k {
        new_m[sigma[c]] = m[c];
    }
    let mut perms: BTreeMap<(usize, usize), Vec<u32>> = BTreeMap::new();
    for (&(i, j), perm) in &g.theta().perms {
        let (a, b) = (sigma[i], sigma[j]);
        let (lo, hi) = (a.min(b), a.max(b));
        let mhi = new_m[hi] as usize;
        let entry = perms
            .entry((lo, hi))
            .or_insert_with(|| vec![0; new_m[lo] as usize * mhi]);
        let mj = m[j] as usize;
        for (x, &y) in perm.iter().enumerate() {
            let (s, t) = (x / mj, x % mj);
            let (s2, t2) = (y as usize / mj, y as usize % mj);
            if a < b {
                // e^a_{pi s} e^b_{pi t} = e^b_{pi t'} e^a_{pi s'}
                entry[pi[i][s] * mhi + pi[j][t]] = (pi[i][s2] * mhi + pi[j][t2]) as u32;
            } else {
                // the relation read right to left: e^b_{pi t'} e^a_{pi s'} = e^a_{pi s} e^b_{pi t}
                entry[pi[j][t2] * mhi + pi[i][s2]] = (pi[j][t] * mhi + pi[i][s]) as u32;
            }
        }
    }
    ThetaFamily { perms }
}

fn flatten(theta: &ThetaFamily) -> Vec<u32> {
    theta.perms.values().flatten().copied().collect()
}

/// Serializes `k`, `m` and the permutations as `k|m_1,...,m_k|theta_12|...`.
pub fn serialize(k: usize, m: &[u32], theta: &ThetaFamily) -> String {
    let join = |v: &[u32]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
    let mut parts = vec![k.to_string(), join(m)];
    parts.extend(theta.perms.values().map(|p| join(p)));
    parts.join("|")
}

/// The lexicographically least permutation data over the relabelling group,
/// serialized.
pub fn canonical_iso_form(g: &KGraph) -> Result<String> {
    let k = g.k();
    let m = g.m();
    let colour_perms: Vec<Vec<usize>> = permutations(k)
        .into_iter()
        .filter(|s| (0..k).all(|c| m[s[c]] == m[c]))
        .collect();
    let size: u128 =
        colour_perms.len() as u128 * m.iter().map(|&x| factorial(x)).product::<u128>();
    if size > MAX_RELABELINGS {
        return Err(Error::Resource(format!(
            "relabelling group of size {size} exceeds {MAX_RELABELINGS}"
        )));
    }
    let edge_perms: Vec<Vec<Vec<usize>>> = m.iter().map(|&x| permutations(x as usize)).collect();
    let mut best: Option<Vec<u32>> = None;
    let mut choice = vec![0usize; k];
    for sigma in &colour_perms {
        choice.iter_mut().for_each(|c| *c = 0);
        loop {
            let pi: Vec<Vec<usize>> = (0..k).map(|c| edge_perms[c][choice[c]].clone()).collect();
            let flat = flatten(&transport(g, sigma, &pi));
            if best.as_ref().is_none_or(|b| flat < *b) {
                best = Some(flat);
            }
            // odometer over the per-colour relabellings
            let mut c = 0;
            while c < k {
                choice[c] += 1;
                if choice[c] < edge_perms[c].len() {
                    break;
                }
                choice[c] = 0;
                c += 1;
            }
            if c == k {
                break;
            }
        }
    }
    let best = best.expect("relabelling group is never empty");
    // re-split the flat minimum into the pair permutations
    let mut perms = BTreeMap::new();
    let mut offset = 0;
    for i in 0..k {
        for j in i + 1..k {
            let len = (m[i] * m[j]) as usize;
            perms.insert((i, j), best[offset..offset + len].to_vec());
            offset += len;
        }
    }
    Ok(serialize(k, m, &ThetaFamily { perms }))
}
