//! Modular objects of the state `ω` on the dense subspace `AΩ`.
//!
//! With `Δ(A_n Ω) = m^{-n} A_n Ω` for a degree-`n` component, the Tomita
//! operators act as `S A_n = A_n*`, `F A_n = m^{n} A_n*`,
//! `J A_n = m^{n/2} A_n*` and `σ_t(A_n) = m^{-itn} A_n`.

use super::Element;
use crate::degree::ZDegree;
use crate::error::{Error, Result};
use crate::rational::{exact_sqrt, m_pow, to_f64, Coeff};
use num_traits::ToPrimitive;

#[derive(Clone, Debug, PartialEq)]
pub enum ModularKind {
    /// The modular automorphism group, returned with symbolic phases.
    Sigma,
    /// `Δ^z`.
    Delta(Coeff),
    S,
    F,
    J,
}

/// `m^{i t · exponent} · component`.
#[derive(Clone, Debug)]
pub struct PhasedComponent {
    pub exponent: ZDegree,
    pub component: Element,
}

#[derive(Clone, Debug)]
pub enum ModularResult {
    Exact(Element),
    /// `σ_t(A) = Σ m^{i t e} A_e` for the listed pairs.
    Phased(Vec<PhasedComponent>),
    /// `Σ factor · element`, used when a scaling is irrational.
    Approximate(Vec<(f64, Element)>),
}

/// Applies a modular operator. In exact mode an irrational scaling is an
/// [`Error::Mode`]; otherwise it falls back to floating-point factors.
pub fn modular_action(a: &Element, kind: &ModularKind, exact: bool) -> Result<ModularResult> {
    let alg = a.algebra();
    let m = a.graph().m().to_vec();
    match kind {
        ModularKind::Sigma => Ok(ModularResult::Phased(
            a.degrees()
                .into_iter()
                .map(|n| PhasedComponent {
                    exponent: n.neg(),
                    component: a.spectral_component(&n),
                })
                .collect(),
        )),
        ModularKind::S => Ok(ModularResult::Exact(a.adjoint())),
        ModularKind::F => {
            let mut out = alg.zero();
            for n in a.degrees() {
                let part = a.spectral_component(&n).adjoint().scale(&m_pow(&m, &n.0));
                out = out.add(&part)?;
            }
            Ok(ModularResult::Exact(out))
        }
        ModularKind::J => scaled(a, exact, |n| {
            let full = m_pow(&m, &n.0);
            exact_sqrt(&full).ok_or_else(|| to_f64(&full).sqrt())
        })
        .map(|r| match r {
            ModularResult::Exact(e) => ModularResult::Exact(e.adjoint()),
            ModularResult::Approximate(v) => {
                ModularResult::Approximate(v.into_iter().map(|(f, e)| (f, e.adjoint())).collect())
            }
            other => other,
        }),
        ModularKind::Delta(z) => scaled(a, exact, |n| {
            let neg: Vec<i64> = n.0.iter().map(|x| -x).collect();
            if z.is_integer() {
                let zi = z.to_integer().to_i64().unwrap_or(i64::MAX);
                let exps: Vec<i64> = neg.iter().map(|x| x * zi).collect();
                return Ok(m_pow(&m, &exps));
            }
            if n.is_zero() {
                return Ok(Coeff::from_integer(1.into()));
            }
            Err(to_f64(&m_pow(&m, &neg)).powf(to_f64(z)))
        }),
    }
}

/// Scales each spectral component by `factor(n)`, where `Err(x)` marks a
/// factor that is only known as the float `x`.
fn scaled(
    a: &Element,
    exact: bool,
    factor: impl Fn(&ZDegree) -> std::result::Result<Coeff, f64>,
) -> Result<ModularResult> {
    let alg = a.algebra();
    let mut out = alg.zero();
    let mut approx: Vec<(f64, Element)> = Vec::new();
    let mut all_exact = true;
    for n in a.degrees() {
        let part = a.spectral_component(&n);
        match factor(&n) {
            Ok(c) => {
                approx.push((to_f64(&c), part.clone()));
                out = out.add(&part.scale(&c))?;
            }
            Err(f) => {
                if exact {
                    return Err(Error::Mode(format!(
                        "scaling of degree {n} is irrational"
                    )));
                }
                all_exact = false;
                approx.push((f, part));
            }
        }
    }
    Ok(if all_exact {
        ModularResult::Exact(out)
    } else {
        ModularResult::Approximate(approx)
    })
}
