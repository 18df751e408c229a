use super::{Component, Element};
use crate::rational::{sqrt_upper, to_f64, Coeff};
use nalgebra::DMatrix;
use num_traits::{Signed, Zero};
use std::collections::HashMap;

/// Blocks with more rows or columns than this skip the SVD.
const SVD_LIMIT: usize = 600;

/// Bounds on the operator norm of an element.
///
/// Each spectral component at a fixed bidegree is a compression of its
/// coefficient matrix, so `‖A_n‖` equals that matrix's norm; `lower` is the
/// largest of these and `upper` their sum. `certified_upper` is an exact
/// rational upper bound built from Schur and Frobenius estimates.
#[derive(Clone, Debug)]
pub struct NormBounds {
    pub lower: f64,
    pub upper: f64,
    pub certified_upper: Coeff,
}

impl Element {
    pub fn norm_bounds(&self) -> NormBounds {
        let mut lower: f64 = 0.0;
        let mut upper = 0.0;
        let mut certified = Coeff::zero();
        for comp in self.components().values() {
            let cert = certified_component_bound(comp);
            let est = component_norm(comp).unwrap_or_else(|| to_f64(&cert));
            lower = lower.max(est);
            upper += est;
            certified += cert;
        }
        NormBounds {
            lower,
            upper,
            certified_upper: certified,
        }
    }
}

/// `min(sqrt(max row sum · max column sum), Frobenius norm)`, rounded up.
pub(crate) fn certified_component_bound(comp: &Component) -> Coeff {
    let mut rows: HashMap<_, Coeff> = HashMap::new();
    let mut cols: HashMap<_, Coeff> = HashMap::new();
    let mut frob = Coeff::zero();
    for ((u, v), c) in &comp.terms {
        *rows.entry(u).or_insert_with(Coeff::zero) += c.abs();
        *cols.entry(v).or_insert_with(Coeff::zero) += c.abs();
        frob += c * c;
    }
    let r = rows.into_values().max().unwrap_or_else(Coeff::zero);
    let c = cols.into_values().max().unwrap_or_else(Coeff::zero);
    let schur = if r == c { r } else { sqrt_upper(&(r * c)) };
    schur.min(sqrt_upper(&frob))
}

/// Largest singular value, computed per connected block of the matrix.
fn component_norm(comp: &Component) -> Option<f64> {
    let mut row_ix = HashMap::new();
    let mut col_ix = HashMap::new();
    for (u, v) in comp.terms.keys() {
        let n = row_ix.len();
        row_ix.entry(u).or_insert(n);
        let n = col_ix.len();
        col_ix.entry(v).or_insert(n);
    }
    let nr = row_ix.len();
    let mut parent: Vec<usize> = (0..nr + col_ix.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (u, v) in comp.terms.keys() {
        let a = find(&mut parent, row_ix[u]);
        let b = find(&mut parent, nr + col_ix[v]);
        parent[a] = b;
    }
    let mut blocks: HashMap<usize, Vec<(usize, usize, f64)>> = HashMap::new();
    for ((u, v), c) in &comp.terms {
        let root = find(&mut parent, row_ix[u]);
        blocks
            .entry(root)
            .or_default()
            .push((row_ix[u], col_ix[v], to_f64(c)));
    }
    let mut best: f64 = 0.0;
    for entries in blocks.into_values() {
        let mut rmap = HashMap::new();
        let mut cmap = HashMap::new();
        for &(r, c, _) in &entries {
            let n = rmap.len();
            rmap.entry(r).or_insert(n);
            let n = cmap.len();
            cmap.entry(c).or_insert(n);
        }
        if rmap.len() > SVD_LIMIT || cmap.len() > SVD_LIMIT {
            return None;
        }
        let mut mat = DMatrix::<f64>::zeros(rmap.len(), cmap.len());
        for (r, c, x) in entries {
            mat[(rmap[&r], cmap[&c])] = x;
        }
        let s = mat.singular_values().max();
        best = best.max(s);
    }
    Some(best)
}
