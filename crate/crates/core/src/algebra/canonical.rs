use super::{Algebra, Component, Element, Term};
use crate::degree::{Degree, ZDegree};
use crate::error::{Error, Result};
use crate::rational::Coeff;
use crate::word::NormalWord;
use num_traits::Zero;
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

impl Algebra {
    /// Brings a list of raw terms into canonical form.
    ///
    /// Terms are grouped by `n = d(u) - d(v)`, each group is refined to the
    /// join of its right degrees, like terms are merged, zeros dropped, and the
    /// group is then coarsened back to the smallest bidegree it fits.
    pub fn canonicalize(self: &Arc<Self>, raw: impl IntoIterator<Item = Term>) -> Result<Element> {
        let g = &self.graph;
        let k = g.k();
        let mut groups: BTreeMap<ZDegree, Vec<Term>> = BTreeMap::new();
        for (u, v, c) in raw {
            for e in u.edges().iter().chain(v.edges()) {
                if e.colour as usize >= k || e.index as u32 >= g.m()[e.colour as usize] {
                    return Err(Error::Degree(format!("edge {e:?} is not in the graph")));
                }
            }
            if c.is_zero() {
                continue;
            }
            let n = ZDegree::diff(&u.degree(k), &v.degree(k));
            groups.entry(n).or_default().push((u, v, c));
        }
        let mut comps = BTreeMap::new();
        for (n, terms) in groups {
            let right = terms
                .iter()
                .fold(Degree::zero(k), |acc, (_, v, _)| acc.join(&v.degree(k)));
            let mut total: u128 = 0;
            for (_, v, _) in &terms {
                total += g.level_size(&right.sub(&v.degree(k)));
            }
            self.check_budget(total, "canonical refinement")?;
            let mut merged: BTreeMap<(NormalWord, NormalWord), Coeff> = BTreeMap::new();
            for (u, v, c) in terms {
                let q = right.sub(&v.degree(k));
                if q.is_zero() {
                    *merged.entry((u, v)).or_insert_with(Coeff::zero) += c;
                    continue;
                }
                for w in self.level(&q)?.iter() {
                    *merged
                        .entry((g.concat(&u, w), g.concat(&v, w)))
                        .or_insert_with(Coeff::zero) += &c;
                }
            }
            merged.retain(|_, c| !c.is_zero());
            if merged.is_empty() {
                continue;
            }
            let left = Degree(
                n.0.iter()
                    .zip(&right.0)
                    .map(|(&a, &b)| (a + b as i64) as u32)
                    .collect(),
            );
            let comp = self.coarsen(Component {
                left,
                right,
                terms: merged,
            });
            comps.insert(n, comp);
        }
        Ok(Element::from_components(self.clone(), comps))
    }

    /// Lowers the bidegree one colour at a time while the terms are an exact
    /// refinement of terms one step lower, then tries sideways moves (refine
    /// by one colour, lower by the others) that reach a smaller bidegree.
    ///
    /// Minimal bidegrees need not be unique: in the flip graph
    /// `s_{e^1_1} s_{e^1_1}* = s_{e^2_1} s_{e^2_1}*`. Ties are broken by total
    /// degree and then lexicographically.
    fn coarsen(&self, comp: Component) -> Component {
        let k = self.graph.k();
        let mut best = self.descend(comp, None);
        'outer: loop {
            for c in 0..k {
                let step = Degree::unit(k, c);
                let budget = best.terms.len() as u128 * self.graph.m()[c] as u128;
                if budget > self.max_terms as u128 {
                    continue;
                }
                let Ok(level) = self.level(&step) else { continue };
                let g = &self.graph;
                let mut terms = BTreeMap::new();
                for ((u, v), x) in &best.terms {
                    for w in level.iter() {
                        terms.insert((g.concat(u, w), g.concat(v, w)), x.clone());
                    }
                }
                let up = Component {
                    left: best.left.add(&step),
                    right: best.right.add(&step),
                    terms,
                };
                let cand = self.descend(up, Some(c));
                if bidegree_key(&cand.right) < bidegree_key(&best.right) {
                    best = cand;
                    continue 'outer;
                }
            }
            return best;
        }
    }

    /// Greedy descent, trying colour `last` only after every other colour.
    fn descend(&self, mut comp: Component, last: Option<usize>) -> Component {
        let k = self.graph.k();
        let order: Vec<usize> = (0..k)
            .filter(|&c| Some(c) != last)
            .chain(last)
            .collect();
        loop {
            let mut changed = false;
            for &c in &order {
                if comp.right.0[c] == 0 || comp.left.0[c] == 0 {
                    continue;
                }
                if let Some(next) = self.coarsen_colour(&comp, c) {
                    comp = next;
                    changed = true;
                    break;
                }
            }
            if !changed {
                return comp;
            }
        }
    }

    fn coarsen_colour(&self, comp: &Component, c: usize) -> Option<Component> {
        let g = &self.graph;
        let k = g.k();
        let step = Degree::unit(k, c);
        let left = comp.left.sub(&step);
        let right = comp.right.sub(&step);
        let mc = g.m()[c] as usize;
        if !comp.terms.len().is_multiple_of(mc) {
            return None;
        }
        let mut groups: HashMap<(NormalWord, NormalWord), (usize, &Coeff)> = HashMap::new();
        for ((u, v), x) in &comp.terms {
            let (pu, su) = g.split(u, &left);
            let (pv, sv) = g.split(v, &right);
            if su != sv {
                return None;
            }
            match groups.get_mut(&(pu.clone(), pv.clone())) {
                Some((count, y)) => {
                    if *y != x {
                        return None;
                    }
                    *count += 1;
                }
                None => {
                    groups.insert((pu, pv), (1, x));
                }
            }
        }
        if groups.values().any(|(count, _)| *count != mc) {
            return None;
        }
        let terms = groups
            .into_iter()
            .map(|(key, (_, x))| (key, x.clone()))
            .collect();
        Some(Component { left, right, terms })
    }

    /// The terms of `comp` refined by `q` on both sides.
    pub(crate) fn refine_component(&self, comp: &Component, q: &Degree) -> Result<Vec<Term>> {
        let g = &self.graph;
        if q.is_zero() {
            return Ok(comp
                .terms
                .iter()
                .map(|((u, v), c)| (u.clone(), v.clone(), c.clone()))
                .collect());
        }
        let level = self.level(q)?;
        let mut out = Vec::with_capacity(comp.terms.len() * level.len());
        for ((u, v), c) in &comp.terms {
            for w in level.iter() {
                out.push((g.concat(u, w), g.concat(v, w), c.clone()));
            }
        }
        Ok(out)
    }

    /// The terms of `comp` at the bidegree `(n + p, p)`. If `p` is not above
    /// the stored right degree, the component is refined to the join and then
    /// coarsened down to `p`; a shape error means it has no form at `p`.
    pub fn terms_at(&self, comp: &Component, p: &Degree) -> Result<Vec<Term>> {
        if comp.right.le(p) {
            self.check_budget(
                comp.terms.len() as u128 * self.graph.level_size(&p.sub(&comp.right)),
                "refinement",
            )?;
            return self.refine_component(comp, &p.sub(&comp.right));
        }
        let join = comp.right.join(p);
        let q = join.sub(&comp.right);
        self.check_budget(comp.terms.len() as u128 * self.graph.level_size(&q), "refinement")?;
        let mut cur = Component {
            left: comp.left.add(&q),
            right: join,
            terms: self
                .refine_component(comp, &q)?
                .into_iter()
                .map(|(u, v, c)| ((u, v), c))
                .collect(),
        };
        while cur.right != *p {
            let c = (0..p.k()).find(|&c| cur.right.0[c] > p.0[c]).unwrap();
            cur = self.coarsen_colour(&cur, c).ok_or_else(|| {
                Error::Shape(format!(
                    "component at right degree {} has no form at {p}",
                    comp.right
                ))
            })?;
        }
        Ok(cur
            .terms
            .into_iter()
            .map(|((u, v), c)| (u, v, c))
            .collect())
    }
}

fn bidegree_key(p: &Degree) -> (u32, &[u32]) {
    (p.total(), &p.0)
}
