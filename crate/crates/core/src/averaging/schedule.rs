//! Contraction of nonzero spectral components and the full averaging
//! pipeline, recorded as replayable schedules.

use super::{alpha_closed, alpha_pullback, gamma_endo, CuntzTuple};
use crate::algebra::{Algebra, Element};
use crate::degree::{Degree, ZDegree};
use crate::error::{Error, Result};
use crate::io::{terms_from_json, terms_to_json, GraphSpec, TermJson};
use crate::rational::{format, m_pow, parse, Coeff};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// One averaging operator applied to the whole element. Every family of
/// unitaries is taken in the image of `γ_shift`, so each `U` is `γ_shift(U₀)`
/// for a unitary `U₀` of degree 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Step {
    /// `α_q` for the tuple `γ_shift(s)`.
    AlphaQ { q: Degree, shift: Degree },
    /// `α_p` for the tuple `γ_shift(s)`; `level` counts from 1.
    AlphaP { p: Degree, level: u32, shift: Degree },
    /// Average over all diagonal sign unitaries `Σ_w ±s_w s_w*` on `Λ^level`.
    MatrixDiagonalSigns { level: Degree, shift: Degree },
    /// Average over the powers of the cyclic shift of `Λ^level`.
    MatrixCyclicShift { level: Degree, shift: Degree },
}

fn tuple(alg: &std::sync::Arc<Algebra>, shift: &Degree) -> Result<CuntzTuple> {
    if shift.is_zero() {
        Ok(CuntzTuple::standard(alg))
    } else {
        CuntzTuple::gamma(alg, shift)
    }
}

impl Step {
    pub fn shift(&self) -> &Degree {
        match self {
            Step::AlphaQ { shift, .. }
            | Step::AlphaP { shift, .. }
            | Step::MatrixDiagonalSigns { shift, .. }
            | Step::MatrixCyclicShift { shift, .. } => shift,
        }
    }

    /// Applies the operator to `a` directly.
    pub fn apply(&self, a: &Element) -> Result<Element> {
        let alg = a.algebra();
        match self {
            Step::AlphaQ { q: p, shift } | Step::AlphaP { p, shift, .. } => {
                alpha_closed(&tuple(alg, shift)?, p, a)
            }
            Step::MatrixDiagonalSigns { shift, .. } | Step::MatrixCyclicShift { shift, .. } => {
                if shift.is_zero() {
                    return self.apply_unshifted(a);
                }
                let x = super::gamma_preimage(alg, shift, a)?;
                gamma_endo(&CuntzTuple::standard(alg), shift, &self.apply_unshifted(&x)?)
            }
        }
    }

    fn apply_unshifted(&self, a: &Element) -> Result<Element> {
        match self {
            Step::MatrixDiagonalSigns { level, .. } => diagonal_sign_average(a, level),
            Step::MatrixCyclicShift { level, .. } => cyclic_shift_average(a, level),
            _ => unreachable!("only matrix steps are applied without shift"),
        }
    }
}

/// An element stored as `γ_shift(inner)`.
///
/// Contracting components of different colours one after the other makes the
/// plain representation grow like `m` to the sum of all shifts, while `inner`
/// stays small: every step maps the range of `γ_shift` into the range of
/// `γ_{shift + p}`. Since `γ_r` is isometric and `ω ∘ γ_r = ω`, norms, the
/// state and scalars can be read off `inner`.
#[derive(Clone, Debug)]
pub struct ShiftedElement {
    pub shift: Degree,
    pub inner: Element,
}

impl ShiftedElement {
    pub fn new(a: &Element) -> Self {
        ShiftedElement {
            shift: Degree::zero(a.algebra().k()),
            inner: a.clone(),
        }
    }

    /// Rewrites the element as `γ_target(x)`.
    fn align(&mut self, target: &Degree) -> Result<()> {
        if self.shift == *target {
            return Ok(());
        }
        let alg = self.inner.algebra().clone();
        let common = self.shift.meet(target);
        if self.shift != common {
            self.inner = gamma_endo(&CuntzTuple::standard(&alg), &self.shift.sub(&common), &self.inner)?;
        }
        if *target != common {
            self.inner = super::gamma_preimage(&alg, &target.sub(&common), &self.inner)?;
        }
        self.shift = target.clone();
        Ok(())
    }

    pub fn apply(&mut self, step: &Step) -> Result<()> {
        self.align(step.shift())?;
        let alg = self.inner.algebra().clone();
        match step {
            Step::AlphaQ { q: p, .. } | Step::AlphaP { p, .. } => {
                self.inner = alpha_pullback(&alg, p, &self.inner)?;
                self.shift = self.shift.add(p);
            }
            _ => self.inner = step.apply_unshifted(&self.inner)?,
        }
        Ok(())
    }

    /// `γ_shift(inner)` written out.
    pub fn materialize(&self) -> Result<Element> {
        gamma_endo(&CuntzTuple::standard(self.inner.algebra()), &self.shift, &self.inner)
    }
}

/// Averages over `{I, U_w}` for each `w`, where `U_w` flips the sign of
/// `s_w s_w*`; the composite is the average over all `2^d` sign patterns.
fn diagonal_sign_average(a: &Element, level: &Degree) -> Result<Element> {
    let alg = a.algebra();
    let words = alg.level(level)?;
    let one = alg.identity();
    let half = Coeff::new(1.into(), 2.into());
    let mut cur = a.clone();
    for w in words.iter() {
        let proj = alg.unit(w.clone(), w.clone());
        let u = one.sub(&proj.scale(&Coeff::from_integer(2.into())))?;
        cur = cur.add(&u.mul(&cur)?.mul(&u)?)?.scale(&half);
    }
    Ok(cur)
}

/// `(1/d) Σ_j V^j A V^{-j}` for `V = Σ_i s_{w_{i+1}} s_{w_i}*`.
fn cyclic_shift_average(a: &Element, level: &Degree) -> Result<Element> {
    let alg = a.algebra();
    let words = alg.level(level)?;
    let d = words.len();
    let v = alg.canonicalize(
        (0..d).map(|i| (words[(i + 1) % d].clone(), words[i].clone(), Coeff::one())),
    )?;
    let mut sum = alg.zero();
    let mut cur = a.clone();
    for _ in 0..d {
        sum = sum.add(&cur)?;
        cur = v.mul(&cur)?.mul(&v.adjoint())?;
    }
    Ok(sum.scale(&Coeff::new(1.into(), (d as i64).into())))
}

/// Result of contracting one nonzero spectral component.
#[derive(Clone, Debug)]
pub struct ShrinkOutcome {
    pub steps: Vec<Step>,
    pub result: Element,
    /// Coefficient 1-sum `Σ|a|` of `X` with `α_q(A) = γ_q(X)`.
    pub coefficient_sum: Coeff,
    pub levels: u32,
    /// `m^{-N p} Σ|a|`.
    pub bound: Coeff,
}

fn require_lpb(alg: &Algebra) -> Result<()> {
    if alg.graph().check_little_pullback().holds {
        Ok(())
    } else {
        Err(Error::Unsupported(
            "contraction needs the little pull-back property".into(),
        ))
    }
}

/// Plans and runs `α_p^{E^N} ∘ ⋯ ∘ α_p^{E^1} ∘ α_q` for a homogeneous `A`
/// of degree `n ≠ 0`, with `p = n+ + n-`, `E^i = γ_{(i-1)p+q}(s)` and
/// `N` the least integer with `m^{-Np} Σ|a| < eps`.
pub fn shrink_offdiagonal(a: &Element, eps: &Coeff) -> Result<ShrinkOutcome> {
    shrink_with(a, |p, sum| levels_needed(a.graph().m(), p, sum, eps))
}

/// The same construction with a fixed number of levels.
pub fn shrink_offdiagonal_levels(a: &Element, levels: u32) -> Result<ShrinkOutcome> {
    shrink_with(a, |_, _| levels)
}

fn shrink_with(a: &Element, choose: impl Fn(&Degree, &Coeff) -> u32) -> Result<ShrinkOutcome> {
    let alg = a.algebra();
    require_lpb(alg)?;
    if a.is_zero() {
        return Ok(ShrinkOutcome {
            steps: Vec::new(),
            result: a.clone(),
            coefficient_sum: Coeff::zero(),
            levels: 0,
            bound: Coeff::zero(),
        });
    }
    let n = a
        .homogeneous_degree()
        .ok_or_else(|| Error::Degree("element is not homogeneous".into()))?;
    if n.is_zero() {
        return Err(Error::Degree("element lies in the core".into()));
    }
    let comp = &a.components()[&n];
    let q = comp.right.sub(&n.minus());
    let p = n.plus().add(&n.minus());
    let mut steps = vec![Step::AlphaQ { q: q.clone(), shift: Degree::zero(alg.k()) }];
    let mut cur = steps[0].apply(a)?;
    let x1 = super::gamma_preimage(alg, &q, &cur)?;
    let sum = x1.coefficient_sum();
    let levels = choose(&p, &sum);
    for i in 1..=levels {
        let shift = q.add(&p.scale(i - 1));
        let step = Step::AlphaP {
            p: p.clone(),
            level: i,
            shift,
        };
        cur = step.apply(&cur)?;
        steps.push(step);
    }
    let bound = &sum * m_pow(alg.graph().m(), &p.scale(levels).to_z().neg().0);
    debug_assert!(cur.degrees().iter().all(|d| *d == n));
    Ok(ShrinkOutcome {
        steps,
        result: cur,
        coefficient_sum: sum,
        levels,
        bound,
    })
}

/// A replayable record of an averaging run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AveragingSchedule {
    pub graph: GraphSpec,
    pub input: Vec<TermJson>,
    pub eps: String,
    pub steps: Vec<Step>,
    /// Certified upper bound for the norm of the non-scalar remainder.
    pub residual_bound: String,
    pub scalar: String,
}

#[derive(Clone, Debug)]
pub struct DixmierOutcome {
    pub scalar: Coeff,
    pub schedule: AveragingSchedule,
    /// The element after all steps, as `γ_shift(inner)`.
    pub result: ShiftedElement,
    /// The non-scalar part of `result.inner`; `γ_shift` of it is the remainder
    /// and has the same norm.
    pub remainder: Element,
    pub residual_bound: Coeff,
}

/// Least `N` with `m^{-N p} · sum < eps`.
fn levels_needed(m: &[u32], p: &Degree, sum: &Coeff, eps: &Coeff) -> u32 {
    let step = m_pow(m, &p.to_z().neg().0);
    let mut n = 0;
    let mut bound = sum.clone();
    while bound >= *eps {
        bound *= &step;
        n += 1;
    }
    n
}

/// Averages `A` towards a scalar: each nonzero spectral component is
/// contracted below `eps / L` in lexicographic order of degree, then the
/// core part is averaged exactly inside a matrix level, landing on `ω(A)`.
///
/// The run is carried out on [`ShiftedElement`]s; the schedule records the
/// shift of every unitary family, so it replays the same way.
pub fn dixmier_average(a: &Element, eps: &Coeff) -> Result<DixmierOutcome> {
    let alg = a.algebra();
    if !eps.is_positive() {
        return Err(Error::Domain("eps must be positive".into()));
    }
    let scalar_input = a.scalar_value();
    if scalar_input.is_none() {
        require_lpb(alg)?;
    }
    let k = alg.k();
    let m = alg.graph().m().to_vec();
    let zero = ZDegree::zero(k);
    let nonzero: Vec<ZDegree> = a.degrees().into_iter().filter(|n| *n != zero).collect();
    let share = eps / Coeff::from_integer((nonzero.len().max(1) as i64).into());
    let mut steps = Vec::new();
    let mut cur = ShiftedElement::new(a);
    for n in &nonzero {
        let part = cur.inner.spectral_component(n);
        if part.is_zero() {
            continue;
        }
        let q = part.components()[n].right.sub(&n.minus());
        let p = n.plus().add(&n.minus());
        let sum = alpha_pullback(alg, &q, &part)?.coefficient_sum();
        let base = cur.shift.clone();
        let mut plan = vec![Step::AlphaQ { q: q.clone(), shift: base.clone() }];
        for i in 1..=levels_needed(&m, &p, &sum, &share) {
            plan.push(Step::AlphaP {
                p: p.clone(),
                level: i,
                shift: base.add(&q).add(&p.scale(i - 1)),
            });
        }
        for step in plan {
            cur.apply(&step)?;
            steps.push(step);
        }
    }
    if cur.inner.spectral_component(&zero).scalar_value().is_none() {
        let level = cur.inner.components()[&zero].right.clone();
        for step in [
            Step::MatrixDiagonalSigns { level: level.clone(), shift: cur.shift.clone() },
            Step::MatrixCyclicShift { level, shift: cur.shift.clone() },
        ] {
            cur.apply(&step)?;
            steps.push(step);
        }
    }
    let core = cur.inner.spectral_component(&zero);
    let scalar = core
        .scalar_value()
        .ok_or_else(|| Error::Shape("matrix stage did not reach a scalar".into()))?;
    let remainder = cur.inner.sub(&core)?;
    let residual_bound = remainder.norm_bounds().certified_upper;
    if residual_bound >= *eps {
        return Err(Error::Resource(format!(
            "certified remainder bound {} is not below eps",
            format(&residual_bound)
        )));
    }
    let schedule = AveragingSchedule {
        graph: GraphSpec::from_graph(alg.graph()),
        input: terms_to_json(a),
        eps: format(eps),
        steps,
        residual_bound: format(&residual_bound),
        scalar: format(&scalar),
    };
    Ok(DixmierOutcome {
        scalar,
        schedule,
        result: cur,
        remainder,
        residual_bound,
    })
}

/// Outcome of re-executing a schedule.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReplayReport {
    pub confirmed: bool,
    pub recorded_bound: String,
    pub recomputed_bound: String,
    pub recorded_scalar: String,
    pub recomputed_scalar: Option<String>,
    pub bound_below_eps: bool,
    pub problems: Vec<String>,
}

/// Re-runs every step on the recorded input and checks that the recomputed
/// certified bound and scalar equal the recorded ones and that the bound is
/// below `eps`.
pub fn replay(schedule: &AveragingSchedule, max_terms: usize) -> Result<ReplayReport> {
    let alg = Algebra::with_max_terms(schedule.graph.to_graph()?, max_terms);
    let input = terms_from_json(&alg, &schedule.input)?;
    let eps = parse(&schedule.eps)?;
    let recorded_bound = parse(&schedule.residual_bound)?;
    let recorded_scalar = parse(&schedule.scalar)?;
    let mut problems = Vec::new();
    let mut cur = ShiftedElement::new(&input);
    for step in &schedule.steps {
        cur.apply(step)?;
    }
    let zero = ZDegree::zero(alg.k());
    let core = cur.inner.spectral_component(&zero);
    let scalar = core.scalar_value();
    let remainder = cur.inner.sub(&core)?;
    let bound = remainder.norm_bounds().certified_upper;
    if bound != recorded_bound {
        problems.push(format!(
            "recorded bound {} differs from recomputed {}",
            format(&recorded_bound),
            format(&bound)
        ));
    }
    let bound_below_eps = bound < eps && recorded_bound < eps;
    if !bound_below_eps {
        problems.push("bound is not below eps".into());
    }
    match &scalar {
        None => problems.push("core part is not scalar after the schedule".into()),
        Some(s) if *s != recorded_scalar => problems.push(format!(
            "recorded scalar {} differs from recomputed {}",
            format(&recorded_scalar),
            format(s)
        )),
        Some(s) if *s != input.omega() => problems.push("scalar differs from the state value".into()),
        _ => {}
    }
    Ok(ReplayReport {
        confirmed: problems.is_empty(),
        recorded_bound: format(&recorded_bound),
        recomputed_bound: format(&bound),
        recorded_scalar: format(&recorded_scalar),
        recomputed_scalar: scalar.as_ref().map(format),
        bound_below_eps,
        problems,
    })
}

