//! Exact calculus on the dense subalgebra spanned by the `s_u s_v*`.
//!
//! An [`Element`] is kept in a canonical form: terms are grouped by their
//! gauge degree `n = d(u) - d(v)`, and all terms of one group sit at a common
//! bidegree `(n + P, P)` with `P` as small as possible. Since refinement
//! `s_u s_v* = Σ_{w ∈ Λ^q} s_{uw} s_{vw}*` is the only relation between the
//! spanning terms at a fixed degree, two elements are equal iff their
//! canonical forms are.

mod canonical;
pub mod matrix;
pub mod modular;
pub mod norm;
pub mod state;

use crate::degree::{Degree, ZDegree};
use crate::error::{Error, Result};
use crate::graph::KGraph;
use crate::rational::Coeff;
use crate::word::NormalWord;
use num_traits::{One, Zero};
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

pub use matrix::{matrix_model, CoreMatrixLevel, MatrixModelReport};
pub use modular::{modular_action, ModularKind, ModularResult, PhasedComponent};
pub use norm::NormBounds;
pub use state::KmsOutcome;

/// Default cap on the number of terms any single operation may materialize.
pub const DEFAULT_MAX_TERMS: usize = 1_000_000;

/// A raw term `coeff · s_u s_v*`.
pub type Term = (NormalWord, NormalWord, Coeff);

/// The algebra of a fixed graph, with its term budget and a cache of levels.
pub struct Algebra {
    graph: KGraph,
    max_terms: usize,
    levels: RwLock<HashMap<Degree, Arc<Vec<NormalWord>>>>,
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Algebra")
            .field("k", &self.graph.k())
            .field("m", &self.graph.m())
            .field("max_terms", &self.max_terms)
            .finish()
    }
}

/// The terms of one degree, all at bidegree `(left, right)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Component {
    pub left: Degree,
    pub right: Degree,
    pub terms: BTreeMap<(NormalWord, NormalWord), Coeff>,
}

/// An element of the algebraic part, in canonical form.
#[derive(Clone)]
pub struct Element {
    alg: Arc<Algebra>,
    comps: BTreeMap<ZDegree, Component>,
}

impl PartialEq for Element {
    /// Equality in the algebra: components of equal degree are compared after
    /// refining both to the join of their bidegrees.
    fn eq(&self, other: &Self) -> bool {
        if !(Arc::ptr_eq(&self.alg, &other.alg) || self.alg.graph == other.alg.graph) {
            return false;
        }
        if self.comps == other.comps {
            return true;
        }
        if self.comps.len() != other.comps.len() {
            return false;
        }
        let g = &self.alg.graph;
        self.comps.iter().zip(&other.comps).all(|((n1, a), (n2, b))| {
            if n1 != n2 {
                return false;
            }
            let p = a.right.join(&b.right);
            let refine = |c: &Component| -> BTreeMap<(NormalWord, NormalWord), Coeff> {
                let level = g.enumerate_level(&p.sub(&c.right));
                let mut out = BTreeMap::new();
                for ((u, v), x) in &c.terms {
                    for w in &level {
                        out.insert((g.concat(u, w), g.concat(v, w)), x.clone());
                    }
                }
                out
            };
            refine(a) == refine(b)
        })
    }
}

impl Eq for Element {}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.comps.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (_, u, v, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})·s[{u:?}]s[{v:?}]*")?;
        }
        Ok(())
    }
}

impl Algebra {
    pub fn new(graph: KGraph) -> Arc<Self> {
        Self::with_max_terms(graph, DEFAULT_MAX_TERMS)
    }

    pub fn with_max_terms(graph: KGraph, max_terms: usize) -> Arc<Self> {
        Arc::new(Algebra {
            graph,
            max_terms,
            levels: RwLock::new(HashMap::new()),
        })
    }

    pub fn graph(&self) -> &KGraph {
        &self.graph
    }

    pub fn k(&self) -> usize {
        self.graph.k()
    }

    pub fn max_terms(&self) -> usize {
        self.max_terms
    }

    /// `Λ^p`, cached.
    pub fn level(&self, p: &Degree) -> Result<Arc<Vec<NormalWord>>> {
        if let Some(l) = self.levels.read().unwrap().get(p) {
            return Ok(l.clone());
        }
        let size = self.graph.level_size(p);
        if size > self.max_terms as u128 {
            return Err(Error::Resource(format!(
                "level {p} has {size} words, above the term budget {}",
                self.max_terms
            )));
        }
        let words = Arc::new(self.graph.enumerate_level(p));
        self.levels.write().unwrap().insert(p.clone(), words.clone());
        Ok(words)
    }

    pub(crate) fn check_budget(&self, n: u128, what: &str) -> Result<()> {
        if n > self.max_terms as u128 {
            Err(Error::Resource(format!(
                "{what} needs {n} terms, above the budget {}",
                self.max_terms
            )))
        } else {
            Ok(())
        }
    }

    pub fn zero(self: &Arc<Self>) -> Element {
        Element {
            alg: self.clone(),
            comps: BTreeMap::new(),
        }
    }

    pub fn identity(self: &Arc<Self>) -> Element {
        self.scalar(Coeff::one())
    }

    pub fn scalar(self: &Arc<Self>, c: Coeff) -> Element {
        self.term(NormalWord::empty(), NormalWord::empty(), c)
    }

    /// `c · s_u s_v*`.
    pub fn term(self: &Arc<Self>, u: NormalWord, v: NormalWord, c: Coeff) -> Element {
        self.canonicalize([(u, v, c)])
            .expect("a single term never exceeds the budget")
    }

    /// `s_u`.
    pub fn isometry(self: &Arc<Self>, u: NormalWord) -> Element {
        self.term(u, NormalWord::empty(), Coeff::one())
    }

    /// `s_u s_v*` with coefficient 1.
    pub fn unit(self: &Arc<Self>, u: NormalWord, v: NormalWord) -> Element {
        self.term(u, v, Coeff::one())
    }
}

impl Element {
    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn graph(&self) -> &KGraph {
        &self.alg.graph
    }

    pub fn components(&self) -> &BTreeMap<ZDegree, Component> {
        &self.comps
    }

    /// All terms, sorted by `(n, u, v)`.
    pub fn terms(&self) -> impl Iterator<Item = (&ZDegree, &NormalWord, &NormalWord, &Coeff)> {
        self.comps
            .iter()
            .flat_map(|(n, c)| c.terms.iter().map(move |((u, v), x)| (n, u, v, x)))
    }

    pub fn term_count(&self) -> usize {
        self.comps.values().map(|c| c.terms.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    /// The gauge degrees present.
    pub fn degrees(&self) -> Vec<ZDegree> {
        self.comps.keys().cloned().collect()
    }

    /// `Some(n)` when the element is nonzero and has the single degree `n`.
    pub fn homogeneous_degree(&self) -> Option<ZDegree> {
        (self.comps.len() == 1).then(|| self.comps.keys().next().unwrap().clone())
    }

    /// `Some(c)` when the element is `c · I` (including `0`).
    pub fn scalar_value(&self) -> Option<Coeff> {
        if self.comps.is_empty() {
            return Some(Coeff::zero());
        }
        let zero = ZDegree::zero(self.alg.k());
        match (self.comps.len(), self.comps.get(&zero)) {
            (1, Some(c)) if c.right.is_zero() => c.terms.values().next().cloned(),
            _ => None,
        }
    }

    pub(crate) fn from_components(alg: Arc<Algebra>, comps: BTreeMap<ZDegree, Component>) -> Self {
        Element { alg, comps }
    }

    /// The raw terms of the element.
    pub fn to_terms(&self) -> Vec<Term> {
        self.terms()
            .map(|(_, u, v, c)| (u.clone(), v.clone(), c.clone()))
            .collect()
    }

    fn check_same(&self, other: &Element) -> Result<()> {
        if Arc::ptr_eq(&self.alg, &other.alg) || self.alg.graph == other.alg.graph {
            Ok(())
        } else {
            Err(Error::GraphMismatch)
        }
    }

    /// The degree-`n` spectral component.
    pub fn spectral_component(&self, n: &ZDegree) -> Element {
        let comps = self
            .comps
            .get(n)
            .map(|c| BTreeMap::from([(n.clone(), c.clone())]))
            .unwrap_or_default();
        Element::from_components(self.alg.clone(), comps)
    }

    pub fn add(&self, other: &Element) -> Result<Element> {
        self.check_same(other)?;
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        self.alg
            .canonicalize(self.to_terms().into_iter().chain(other.to_terms()))
    }

    pub fn sub(&self, other: &Element) -> Result<Element> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Element {
        self.scale(&-Coeff::one())
    }

    pub fn scale(&self, c: &Coeff) -> Element {
        if c.is_zero() {
            return self.alg.zero();
        }
        let mut out = self.clone();
        for comp in out.comps.values_mut() {
            for x in comp.terms.values_mut() {
                *x *= c;
            }
        }
        out
    }

    /// Sum of `|c|` over the canonical terms.
    pub fn coefficient_sum(&self) -> Coeff {
        use num_traits::Signed;
        self.terms().map(|(_, _, _, c)| c.abs()).sum()
    }

    /// `A*`: every term `(u, v, c)` becomes `(v, u, c)`; coefficients are real.
    pub fn adjoint(&self) -> Element {
        let comps = self
            .comps
            .iter()
            .map(|(n, c)| {
                let terms = c
                    .terms
                    .iter()
                    .map(|((u, v), x)| ((v.clone(), u.clone()), x.clone()))
                    .collect();
                (
                    n.neg(),
                    Component {
                        left: c.right.clone(),
                        right: c.left.clone(),
                        terms,
                    },
                )
            })
            .collect();
        Element::from_components(self.alg.clone(), comps)
    }

    /// The product, computed by refining both factors until the inner words
    /// have a common degree, where the spanning terms multiply as matrix units.
    pub fn mul(&self, other: &Element) -> Result<Element> {
        self.check_same(other)?;
        let alg = &self.alg;
        let mut raw: Vec<Term> = Vec::new();
        for a in self.comps.values() {
            for b in other.comps.values() {
                let join = a.right.join(&b.left);
                let qa = join.sub(&a.right);
                let qb = join.sub(&b.left);
                let g = &alg.graph;
                alg.check_budget(
                    a.terms.len() as u128 * g.level_size(&qa)
                        + b.terms.len() as u128 * g.level_size(&qb),
                    "product refinement",
                )?;
                let mut by_left: HashMap<NormalWord, Vec<(NormalWord, Coeff)>> = HashMap::new();
                for (x, y, c) in alg.refine_component(b, &qb)? {
                    by_left.entry(x).or_default().push((y, c));
                }
                for (u, v, c) in alg.refine_component(a, &qa)? {
                    if let Some(row) = by_left.get(&v) {
                        for (y, c2) in row {
                            raw.push((u.clone(), y.clone(), &c * c2));
                        }
                    }
                }
                alg.check_budget(raw.len() as u128, "product")?;
            }
        }
        alg.canonicalize(raw)
    }

    /// The product through the minimal-extension rule
    /// `s_u s_v* · s_x s_y* = Σ_{(α,β) ∈ Λ^min(v,x)} s_{uα} s_{yβ}*`.
    ///
    /// Independent of [`Element::mul`]; used to cross-check it.
    pub fn mul_via_lambda_min(&self, other: &Element) -> Result<Element> {
        self.check_same(other)?;
        let g = &self.alg.graph;
        let mut raw = Vec::new();
        for (_, u, v, c1) in self.terms() {
            for (_, x, y, c2) in other.terms() {
                for (alpha, beta) in g.lambda_min(v, x).pairs {
                    raw.push((g.concat(u, &alpha), g.concat(y, &beta), c1 * c2));
                }
            }
            self.alg.check_budget(raw.len() as u128, "product")?;
        }
        self.alg.canonicalize(raw)
    }

    /// `self^n` for `n >= 0`.
    pub fn pow(&self, n: u32) -> Result<Element> {
        let mut out = self.alg.identity();
        for _ in 0..n {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// `U A U*`.
    pub fn conjugate_by(&self, u: &Element) -> Result<Element> {
        u.mul(self)?.mul(&u.adjoint())
    }
}
