use super::{closed_formula_agrees, intrinsic_group, lambda_value, spectrum_generator, IntrinsicGroup, Spectrum};
use crate::degree::ZDegree;
use crate::error::Result;
use crate::graph::KGraph;
use crate::periodicity::{Periodicity, PeriodicityWitness};
use crate::rational::decimal;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Aperiodicity {
    /// Follows from the little pull-back property or from `G = {0}`.
    Proved,
    /// No witness up to this height bound.
    Unknown { bound: u32 },
    /// Periodic. The witness is absent only when some `m_i = 1`, which rules
    /// out aperiodicity on its own.
    Periodic(Option<PeriodicityWitness>),
}

impl Aperiodicity {
    pub fn label(&self) -> String {
        match self {
            Aperiodicity::Proved => "true".into(),
            Aperiodicity::Unknown { bound } => format!("unknown({bound})"),
            Aperiodicity::Periodic(_) => "false".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    NotFactor,
    III1,
    /// `λ = base^{-exp}`.
    IIILambda { base: u64, exp: u64 },
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Verdict::NotFactor => s.serialize_str("NotFactor"),
            Verdict::III1 => s.serialize_str("III_1"),
            Verdict::IIILambda { base, exp } => {
                #[derive(Serialize)]
                struct Lambda {
                    base: u64,
                    exp: u64,
                }
                let mut map = s.serialize_map(Some(1))?;
                map.serialize_entry("III_lambda", &Lambda { base: *base, exp: *exp })?;
                map.end()
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeReport {
    pub aperiodic: Aperiodicity,
    pub lpb: bool,
    pub rank_g: usize,
    pub basis: Vec<ZDegree>,
    pub factor_certified: bool,
    pub verdict: Verdict,
    pub spectrum: Option<Spectrum>,
    /// For a cyclic spectrum: whether `m_1^{-1/(b_2⋯b_k)}` equals the generator.
    pub closed_formula_agrees: Option<bool>,
}

impl TypeReport {
    /// `λ` to 20 decimal places in the cyclic case.
    pub fn lambda_decimal(&self) -> Option<String> {
        match self.verdict {
            Verdict::IIILambda { base, exp } => Some(decimal(&lambda_value(base, exp), 20)),
            _ => None,
        }
    }
}

impl Serialize for TypeReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(None)?;
        map.serialize_entry("aperiodic", &self.aperiodic.label())?;
        map.serialize_entry("lpb", &self.lpb)?;
        map.serialize_entry("rankG", &self.rank_g)?;
        map.serialize_entry("basis", &self.basis)?;
        map.serialize_entry("factor_certified", &self.factor_certified)?;
        map.serialize_entry("verdict", &self.verdict)?;
        map.serialize_entry("lambda_decimal", &self.lambda_decimal())?;
        if let Some(agree) = self.closed_formula_agrees {
            map.serialize_entry("closed_formula_agrees", &agree)?;
        }
        if let Aperiodicity::Periodic(Some(w)) = &self.aperiodic {
            map.serialize_entry("periodicity_witness", &crate::io::WitnessJson::from(w))?;
        }
        map.end()
    }
}

/// Classifies the factor type of the graph's von Neumann algebra.
///
/// A periodicity witness gives `NotFactor`; otherwise the spectrum decides
/// between `III_1` (dense) and `III_λ` (cyclic). The verdict is certified
/// only when `G = {0}` or the little pull-back property holds.
pub fn classify_type(g: &KGraph, periodicity_bound: u32) -> Result<TypeReport> {
    let m: Vec<u64> = g.m().iter().map(|&x| x as u64).collect();
    let lpb = g.check_little_pullback().holds;
    let has_unit = m.iter().any(|&x| x < 2);
    let group = if has_unit {
        None
    } else {
        Some(intrinsic_group(&m)?)
    };
    let (rank_g, basis) = match &group {
        Some(IntrinsicGroup { rank, basis }) => (*rank, basis.clone()),
        None => (0, Vec::new()),
    };
    let aperiodic = if has_unit {
        match g.check_periodicity(periodicity_bound)? {
            Periodicity::Periodic(w) => Aperiodicity::Periodic(Some(w)),
            Periodicity::AperiodicUpTo { .. } => Aperiodicity::Periodic(None),
        }
    } else if rank_g == 0 || lpb {
        Aperiodicity::Proved
    } else {
        match g.check_periodicity(periodicity_bound)? {
            Periodicity::Periodic(w) => Aperiodicity::Periodic(Some(w)),
            Periodicity::AperiodicUpTo { bound, .. } => Aperiodicity::Unknown { bound },
        }
    };
    let (verdict, spectrum, closed) = match &aperiodic {
        Aperiodicity::Periodic(_) => (Verdict::NotFactor, None, None),
        _ => {
            let spec = spectrum_generator(&m)?;
            let verdict = match spec {
                Spectrum::Dense => Verdict::III1,
                Spectrum::Cyclic { base, exp } => Verdict::IIILambda { base, exp },
            };
            (verdict, Some(spec), closed_formula_agrees(&m)?)
        }
    };
    let factor_certified = !has_unit && (rank_g == 0 || lpb);
    Ok(TypeReport {
        aperiodic,
        lpb,
        rank_g,
        basis,
        factor_certified,
        verdict,
        spectrum,
        closed_formula_agrees: closed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::ThetaFamily;

    #[test]
    fn small_examples() {
        let id23 = KGraph::new(2, vec![2, 3], ThetaFamily::identity(&[2, 3])).unwrap();
        let r = classify_type(&id23, 4).unwrap();
        assert_eq!(r.verdict, Verdict::III1);
        assert!(r.factor_certified);

        let id22 = KGraph::two_graph(2, 2, vec![0, 1, 2, 3]).unwrap();
        let r = classify_type(&id22, 4).unwrap();
        assert_eq!(r.verdict, Verdict::IIILambda { base: 2, exp: 1 });
        assert_eq!(r.lambda_decimal().unwrap(), "0.50000000000000000000");

        let flip = KGraph::two_graph(2, 2, vec![0, 2, 1, 3]).unwrap();
        let r = classify_type(&flip, 4).unwrap();
        assert_eq!(r.verdict, Verdict::NotFactor);
        assert!(!r.factor_certified);
    }
}
