//! Endomorphisms `γ_p`, averaging unitaries and the averaging operators `α_p`.

pub mod schedule;

use crate::algebra::{Algebra, Element, Term};
use crate::degree::{Degree, ZDegree};
use crate::error::{Error, Result};
use crate::graph::Edge;
use crate::lattice::is_in_group;
use crate::rational::{m_pow, Coeff};
use crate::word::NormalWord;
use num_traits::{One, Zero};
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

pub use schedule::{
    dixmier_average, replay, shrink_offdiagonal, shrink_offdiagonal_levels, AveragingSchedule,
    DixmierOutcome, ReplayReport, ShiftedElement, ShrinkOutcome, Step,
};

/// Default cap on `2^N · N!` for [`alpha_brute`].
pub const DEFAULT_BRUTE_CAP: u128 = 100_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TupleKind {
    /// `E_e = s_e`.
    Standard,
    /// `E_e = γ_r(s_e)`.
    Gamma(Degree),
    Custom,
}

/// A family `E_e` of isometries satisfying the same relations as the `s_e`.
#[derive(Clone, Debug)]
pub struct CuntzTuple {
    alg: Arc<Algebra>,
    kind: TupleKind,
    images: Vec<Vec<Element>>,
}

fn edge_word(e: Edge) -> NormalWord {
    NormalWord::from_sorted(vec![e]).expect("single edge")
}

/// `γ_r(s_x s_y*) = Σ_{w ∈ Λ^r} s_{wx} s_{wy}*` as raw terms.
fn push_gamma_terms(alg: &Algebra, level: &[NormalWord], x: &NormalWord, y: &NormalWord, c: &Coeff, out: &mut Vec<Term>) {
    let g = alg.graph();
    for w in level {
        out.push((g.concat(w, x), g.concat(w, y), c.clone()));
    }
}

impl CuntzTuple {
    pub fn standard(alg: &Arc<Algebra>) -> Self {
        let g = alg.graph();
        let images = (0..g.k())
            .map(|c| {
                (0..g.m()[c] as usize)
                    .map(|i| alg.isometry(edge_word(Edge::new(c, i))))
                    .collect()
            })
            .collect();
        CuntzTuple {
            alg: alg.clone(),
            kind: TupleKind::Standard,
            images,
        }
    }

    /// `E_e = γ_r(s_e) = Σ_{w ∈ Λ^r} s_{we} s_w*`.
    pub fn gamma(alg: &Arc<Algebra>, r: &Degree) -> Result<Self> {
        let g = alg.graph();
        let level = alg.level(r)?;
        let mut images = Vec::with_capacity(g.k());
        for c in 0..g.k() {
            let mut row = Vec::new();
            for i in 0..g.m()[c] as usize {
                let mut raw = Vec::new();
                push_gamma_terms(alg, &level, &edge_word(Edge::new(c, i)), &NormalWord::empty(), &Coeff::one(), &mut raw);
                row.push(alg.canonicalize(raw)?);
            }
            images.push(row);
        }
        Ok(CuntzTuple {
            alg: alg.clone(),
            kind: TupleKind::Gamma(r.clone()),
            images,
        })
    }

    /// A tuple given by explicit images, validated exactly.
    pub fn custom(alg: &Arc<Algebra>, images: Vec<Vec<Element>>) -> Result<Self> {
        let t = CuntzTuple {
            alg: alg.clone(),
            kind: TupleKind::Custom,
            images,
        };
        t.validate()?;
        Ok(t)
    }

    pub fn kind(&self) -> &TupleKind {
        &self.kind
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn image(&self, e: Edge) -> &Element {
        &self.images[e.colour as usize][e.index as usize]
    }

    /// Checks `E_s* E_t = δ I`, `Σ_s E_s E_s* = I` per colour and the
    /// commutation relations.
    pub fn validate(&self) -> Result<()> {
        let g = self.alg.graph();
        let k = g.k();
        if self.images.len() != k || (0..k).any(|c| self.images[c].len() != g.m()[c] as usize) {
            return Err(Error::Structural("tuple does not match the edge counts".into()));
        }
        let one = self.alg.identity();
        for c in 0..k {
            let mut sum = self.alg.zero();
            for (s, es) in self.images[c].iter().enumerate() {
                for (t, et) in self.images[c].iter().enumerate() {
                    let expected = if s == t { one.clone() } else { self.alg.zero() };
                    if es.adjoint().mul(et)? != expected {
                        return Err(Error::Structural(format!(
                            "images of e^{0}_{1} and e^{0}_{2} are not orthogonal isometries",
                            c + 1,
                            s + 1,
                            t + 1
                        )));
                    }
                }
                sum = sum.add(&es.mul(&es.adjoint())?)?;
            }
            if sum != one {
                return Err(Error::Structural(format!("colour {} is not defect free", c + 1)));
            }
        }
        for i in 0..k {
            for j in i + 1..k {
                for s in 0..g.m()[i] as u16 {
                    for t in 0..g.m()[j] as u16 {
                        let (t2, s2) = g.raise(i, s, j, t);
                        let lhs = self.images[i][s as usize].mul(&self.images[j][t as usize])?;
                        let rhs = self.images[j][t2 as usize].mul(&self.images[i][s2 as usize])?;
                        if lhs != rhs {
                            return Err(Error::Structural(format!(
                                "commutation relation fails for colours {} and {}",
                                i + 1,
                                j + 1
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// `E_w`.
    pub fn word_image(&self, w: &NormalWord) -> Result<Element> {
        if self.kind == TupleKind::Standard {
            return Ok(self.alg.isometry(w.clone()));
        }
        if let TupleKind::Gamma(r) = &self.kind {
            let mut raw = Vec::new();
            push_gamma_terms(&self.alg, &self.alg.level(r)?, w, &NormalWord::empty(), &Coeff::one(), &mut raw);
            return self.alg.canonicalize(raw);
        }
        let mut out = self.alg.identity();
        for &e in w.edges() {
            out = out.mul(self.image(e))?;
        }
        Ok(out)
    }
}

/// `γ_p^E(A) = Σ_{w ∈ Λ^p} E_w A E_w*`.
pub fn gamma_endo(e: &CuntzTuple, p: &Degree, a: &Element) -> Result<Element> {
    let alg = e.algebra();
    if e.kind == TupleKind::Standard {
        let level = alg.level(p)?;
        alg.check_budget(level.len() as u128 * a.term_count() as u128, "gamma")?;
        let mut raw = Vec::new();
        for (_, x, y, c) in a.terms() {
            push_gamma_terms(alg, &level, x, y, c, &mut raw);
        }
        return alg.canonicalize(raw);
    }
    let mut out = alg.zero();
    for w in alg.level(p)?.iter() {
        let ew = e.word_image(w)?;
        out = out.add(&ew.mul(a)?.mul(&ew.adjoint())?)?;
    }
    Ok(out)
}

/// A signed permutation of `Λ^p`: `sigma[i]` is the image of the `i`-th word
/// of the level, `flips[i]` its sign bit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AveragingUnitarySpec {
    pub p: Degree,
    pub flips: Vec<bool>,
    pub sigma: Vec<usize>,
}

/// `U = Σ_w (-1)^{f(w)} E_{ς(w)} E_w*`, checked to be unitary.
pub fn averaging_unitary(e: &CuntzTuple, spec: &AveragingUnitarySpec) -> Result<Element> {
    let u = realize_unitary(e, spec)?;
    let one = e.alg.identity();
    if u.mul(&u.adjoint())? != one || u.adjoint().mul(&u)? != one {
        return Err(Error::Structural("averaging unitary is not unitary".into()));
    }
    Ok(u)
}

fn realize_unitary(e: &CuntzTuple, spec: &AveragingUnitarySpec) -> Result<Element> {
    let alg = e.algebra();
    let level = alg.level(&spec.p)?;
    let n = level.len();
    let mut seen = vec![false; n];
    if spec.sigma.len() != n || spec.flips.len() != n || spec.sigma.iter().any(|&j| j >= n || std::mem::replace(&mut seen[j], true)) {
        return Err(Error::Structural("sigma is not a permutation of the level".into()));
    }
    let mut out = alg.zero();
    for (i, w) in level.iter().enumerate() {
        let sign = if spec.flips[i] { -Coeff::one() } else { Coeff::one() };
        let term = e.word_image(&level[spec.sigma[i]])?.mul(&e.word_image(w)?.adjoint())?;
        out = out.add(&term.scale(&sign))?;
    }
    Ok(out)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    crate::iso::permutations(n)
}

/// `α_p` as the literal average of `U A U*` over all `2^N · N!` signed
/// permutations of `Λ^p`, `N = m^p`.
pub fn alpha_brute(e: &CuntzTuple, p: &Degree, a: &Element, cap: u128) -> Result<Element> {
    let alg = e.algebra();
    let n = alg.graph().level_size(p);
    let count = (1u128 << n.min(127)) * (1..=n).product::<u128>();
    if n > 20 || count > cap {
        return Err(Error::Resource(format!(
            "brute-force average over {n} words needs {count} unitaries; use the closed form"
        )));
    }
    let n = n as usize;
    let mut sum = alg.zero();
    for sigma in permutations(n) {
        for bits in 0u32..(1 << n) {
            let spec = AveragingUnitarySpec {
                p: p.clone(),
                flips: (0..n).map(|i| bits >> i & 1 == 1).collect(),
                sigma: sigma.clone(),
            };
            let u = realize_unitary(e, &spec)?;
            sum = sum.add(&u.mul(a)?.mul(&u.adjoint())?)?;
        }
    }
    Ok(sum.scale(&Coeff::new(1.into(), count.into())))
}

/// `α_p` in closed form.
///
/// For the standard tuple each term `s_u s_v*` is handled by one of two
/// rules. With `p <= d(u), d(v)`, writing `u = u1 u2`, `v = v1 v2` with
/// `d(u1) = d(v1) = p`:
/// `α_p(s_u s_v*) = δ_{u1,v1} m^{-p} γ_p(s_{u2} s_{v2}*)`.
/// With `d(u) ∧ d(v) = 0` and `p = d(u) + d(v)`:
/// `α_p(s_u s_v*) = m^{-p} Σ_{(v',u') ∈ Λ^min(u,v)} γ_p(s_{v'}* s_{u'})`.
/// Any other term is first refined until the first rule applies.
///
/// For `E = γ_r(s)` the element is pulled back through `γ_r`, averaged with
/// the standard tuple and pushed forward again, since
/// `α_p^{γ_r(s)} ∘ γ_r = γ_r ∘ α_p`.
pub fn alpha_closed(e: &CuntzTuple, p: &Degree, a: &Element) -> Result<Element> {
    match &e.kind {
        TupleKind::Standard => alpha_standard(e.algebra(), p, a),
        TupleKind::Gamma(r) => {
            let alg = e.algebra();
            let x = gamma_preimage(alg, r, a)?;
            let y = alpha_standard(alg, p, &x)?;
            gamma_endo(&CuntzTuple::standard(alg), r, &y)
        }
        TupleKind::Custom => Err(Error::Unsupported(
            "closed-form averaging needs a standard or γ-shifted tuple".into(),
        )),
    }
}

/// The mixed-term rule before `γ_p` is applied:
/// `X = m^{-p} Σ_{(v',u') ∈ Λ^min(u,v)} s_{v'}* s_{u'}`, so that
/// `α_p(s_u s_v*) = γ_p(X)` for `p = d(u) + d(v)`.
pub fn alpha_mixed_preimage(alg: &Arc<Algebra>, u: &NormalWord, v: &NormalWord) -> Result<Element> {
    let g = alg.graph();
    let k = g.k();
    let (du, dv) = (u.degree(k), v.degree(k));
    if !du.meet(&dv).is_zero() {
        return Err(Error::Shape("term is not mixed: d(u) and d(v) overlap".into()));
    }
    let p = du.add(&dv);
    let scale = m_pow(g.m(), &p.to_z().neg().0);
    let mut raw = Vec::new();
    for (v2, u2) in g.lambda_min(u, v).pairs {
        for (alpha, beta) in g.lambda_min(&v2, &u2).pairs {
            raw.push((alpha, beta, scale.clone()));
        }
    }
    alg.canonicalize(raw)
}

fn alpha_standard(alg: &Arc<Algebra>, p: &Degree, a: &Element) -> Result<Element> {
    let x = alpha_pullback(alg, p, a)?;
    gamma_endo(&CuntzTuple::standard(alg), p, &x)
}

/// `X` with `α_p(A) = γ_p(X)` for the standard tuple, read off the closed
/// form without applying `γ_p`.
pub fn alpha_pullback(alg: &Arc<Algebra>, p: &Degree, a: &Element) -> Result<Element> {
    let g = alg.graph();
    let scale = m_pow(g.m(), &p.to_z().neg().0);
    let mut raw: Vec<Term> = Vec::new();
    for comp in a.components().values() {
        let (du, dv) = (&comp.left, &comp.right);
        let mixed = du.meet(dv).is_zero() && du.add(dv) == *p && !p.is_zero();
        if mixed {
            for ((u, v), c) in &comp.terms {
                let x = alpha_mixed_preimage(alg, u, v)?;
                raw.extend(x.terms().map(|(_, y, z, d)| (y.clone(), z.clone(), c * d)));
            }
            alg.check_budget(raw.len() as u128, "averaging")?;
            continue;
        }
        let q = p.saturating_sub(du).join(&p.saturating_sub(dv));
        let refined = alg.terms_at(comp, &dv.add(&q))?;
        for (u, v, c) in refined {
            let (u1, u2) = g.split(&u, p);
            let (v1, v2) = g.split(&v, p);
            if u1 == v1 {
                raw.push((u2, v2, &c * &scale));
            }
        }
        alg.check_budget(raw.len() as u128, "averaging")?;
    }
    alg.canonicalize(raw)
}

/// `X` with `γ_r(X) = A`, when it exists.
pub fn gamma_preimage(alg: &Arc<Algebra>, r: &Degree, a: &Element) -> Result<Element> {
    let g = alg.graph();
    let level_size = g.level_size(r);
    let mut raw = Vec::new();
    for comp in a.components().values() {
        // both sides need degree at least r
        let lift = r.saturating_sub(&comp.right).join(&r.saturating_sub(&comp.left));
        let terms = alg.terms_at(comp, &comp.right.add(&lift))?;
        let mut groups: HashMap<(NormalWord, NormalWord), BTreeMap<NormalWord, Coeff>> = HashMap::new();
        for (u, v, c) in terms {
            let (w1, x) = g.split(&u, r);
            let (w2, y) = g.split(&v, r);
            if w1 != w2 {
                return Err(Error::Shape("element is not in the range of γ".into()));
            }
            groups.entry((x, y)).or_default().insert(w1, c);
        }
        for ((x, y), by_prefix) in groups {
            let first = by_prefix.values().next().cloned().unwrap_or_else(Coeff::zero);
            if by_prefix.len() as u128 != level_size || by_prefix.values().any(|c| *c != first) {
                return Err(Error::Shape("element is not in the range of γ".into()));
            }
            raw.push((x, y, first));
        }
    }
    alg.canonicalize(raw)
}

/// `U = Σ_{u ∈ Λ^{g+}} s_u s_{ȷ(u)}*` for `g ∈ G`.
#[derive(Clone, Debug)]
pub struct IntrinsicUnitary {
    pub g: ZDegree,
    pub pairing: Vec<(NormalWord, NormalWord)>,
    pub element: Element,
}

/// Builds `U_g`; the default pairing matches both levels in lexicographic
/// order. Unitarity is verified exactly.
pub fn build_intrinsic_unitary(
    alg: &Arc<Algebra>,
    gvec: &ZDegree,
    pairing: Option<Vec<(NormalWord, NormalWord)>>,
) -> Result<IntrinsicUnitary> {
    let g = alg.graph();
    let m: Vec<u64> = g.m().iter().map(|&x| x as u64).collect();
    if gvec.k() != g.k() || !is_in_group(&m, &gvec.0) {
        return Err(Error::Degree(format!("{gvec} is not in the intrinsic group")));
    }
    let (a, b) = (gvec.plus(), gvec.minus());
    let pairing = match pairing {
        Some(p) => p,
        None => {
            let la = alg.level(&a)?;
            let lb = alg.level(&b)?;
            la.iter().cloned().zip(lb.iter().cloned()).collect()
        }
    };
    let element = alg.canonicalize(pairing.iter().map(|(u, v)| (u.clone(), v.clone(), Coeff::one())))?;
    let one = alg.identity();
    if element.mul(&element.adjoint())? != one || element.adjoint().mul(&element)? != one {
        return Err(Error::Degree("pairing is not a bijection between the levels".into()));
    }
    Ok(IntrinsicUnitary {
        g: gvec.clone(),
        pairing,
        element,
    })
}
