//! Exhaustive enumeration and classification of small single-vertex graphs.

use crate::error::{Error, Result};
use crate::graph::{KGraph, ThetaFamily};
use crate::iso::canonical_iso_form;
use crate::lattice::{classify_type, lambda_value, Aperiodicity, TypeReport, Verdict};
use crate::rational::format;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;

/// Default cap on the number of candidate families.
pub const DEFAULT_CENSUS_CAP: u128 = 50_000_000;

#[derive(Clone, Debug, Serialize)]
pub struct CensusRow {
    pub canonical_form: String,
    pub class_size: usize,
    pub lpb: bool,
    /// `"yes"`, `"no"` (proved aperiodic) or `"unknown(bound)"`.
    pub periodic: String,
    pub verdict: Verdict,
    /// `λ` as `"p/q"` in the cyclic case.
    pub lambda: Option<String>,
    #[serde(skip)]
    pub report: TypeReport,
    #[serde(skip)]
    pub representative: KGraph,
}

impl CensusRow {
    /// Flat fields for tabular output, in the order of [`CensusRow::CSV_HEADER`].
    pub fn csv_record(&self) -> Vec<String> {
        let verdict = match self.verdict {
            Verdict::NotFactor => "NotFactor",
            Verdict::III1 => "III_1",
            Verdict::IIILambda { .. } => "III_lambda",
        };
        vec![
            self.canonical_form.clone(),
            self.class_size.to_string(),
            self.lpb.to_string(),
            self.periodic.clone(),
            verdict.to_string(),
            self.lambda.clone().unwrap_or_default(),
        ]
    }

    pub const CSV_HEADER: [&'static str; 6] =
        ["canonical_form", "class_size", "lpb", "periodic", "verdict", "lambda"];
}

#[derive(Clone, Debug, Serialize)]
pub struct Census {
    pub k: usize,
    pub m: Vec<u32>,
    pub candidates: u128,
    pub valid: usize,
    pub classes: usize,
    pub periodicity_bound: u32,
    pub rows: Vec<CensusRow>,
}

/// Colour pairs `(i, j)`, `i < j`, in lexicographic order.
fn pairs(k: usize) -> Vec<(usize, usize)> {
    (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).collect()
}

fn factorial(n: u128) -> Option<u128> {
    (1..=n).try_fold(1u128, |acc, x| acc.checked_mul(x))
}

/// The `idx`-th permutation of `0..n` in lexicographic order.
fn nth_permutation(n: usize, mut idx: u128) -> Vec<u32> {
    let mut pool: Vec<u32> = (0..n as u32).collect();
    let mut out = Vec::with_capacity(n);
    for i in (0..n).rev() {
        let f = factorial(i as u128).unwrap();
        let pos = (idx / f) as usize;
        idx %= f;
        out.push(pool.remove(pos));
    }
    out
}

/// Number of permutation families on edge counts `m`.
pub fn candidate_count(m: &[u32]) -> Option<u128> {
    pairs(m.len()).iter().try_fold(1u128, |acc, &(i, j)| {
        acc.checked_mul(factorial(m[i] as u128 * m[j] as u128)?)
    })
}

/// The `idx`-th family, most significant pair first.
pub fn nth_family(m: &[u32], mut idx: u128) -> ThetaFamily {
    let ps = pairs(m.len());
    let mut perms = BTreeMap::new();
    for &(i, j) in ps.iter().rev() {
        let n = (m[i] * m[j]) as usize;
        let f = factorial(n as u128).unwrap();
        perms.insert((i, j), nth_permutation(n, idx % f));
        idx /= f;
    }
    ThetaFamily { perms }
}

/// All valid graphs on edge counts `m`, in enumeration order.
pub fn valid_graphs(m: &[u32], cap: u128) -> Result<Vec<KGraph>> {
    let count = candidate_count(m)
        .filter(|&c| c <= cap)
        .ok_or_else(|| Error::Resource(format!("more than {cap} candidate families")))?;
    let k = m.len();
    let graphs: Vec<Option<KGraph>> = (0..count)
        .into_par_iter()
        .map(|idx| KGraph::new(k, m.to_vec(), nth_family(m, idx)).ok())
        .collect();
    Ok(graphs.into_iter().flatten().collect())
}

/// Partitions graphs into isomorphism classes, ordered by canonical form;
/// each class lists input positions in increasing order.
pub fn orbit_classes(graphs: &[KGraph]) -> Result<Vec<(String, Vec<usize>)>> {
    if let Some(first) = graphs.first() {
        let mut sig = first.m().to_vec();
        sig.sort_unstable();
        for g in graphs {
            let mut s = g.m().to_vec();
            s.sort_unstable();
            if g.k() != first.k() || s != sig {
                return Err(Error::Structural("graphs have different edge counts".into()));
            }
        }
    }
    let forms: Vec<String> = graphs
        .par_iter()
        .map(canonical_iso_form)
        .collect::<Result<_>>()?;
    let mut classes: BTreeMap<String, Vec<usize>> = BTreeMap::new();
    for (i, f) in forms.into_iter().enumerate() {
        classes.entry(f).or_default().push(i);
    }
    Ok(classes.into_iter().collect())
}

pub fn periodic_label(a: &Aperiodicity) -> String {
    match a {
        Aperiodicity::Proved => "no".into(),
        Aperiodicity::Unknown { bound } => format!("unknown({bound})"),
        Aperiodicity::Periodic(_) => "yes".into(),
    }
}

/// Enumerates every family on edge counts `m`, keeps the valid ones, groups
/// them into isomorphism classes and classifies one member of each class.
pub fn enumerate_census(m: &[u32], periodicity_bound: u32, cap: u128) -> Result<Census> {
    let graphs = valid_graphs(m, cap)?;
    let classes = orbit_classes(&graphs)?;
    let rows = classes
        .par_iter()
        .map(|(form, members)| {
            let rep = &graphs[members[0]];
            let report = classify_type(rep, periodicity_bound)?;
            let lambda = match report.verdict {
                Verdict::IIILambda { base, exp } => Some(format(&lambda_value(base, exp))),
                _ => None,
            };
            Ok(CensusRow {
                canonical_form: form.clone(),
                class_size: members.len(),
                lpb: report.lpb,
                periodic: periodic_label(&report.aperiodic),
                verdict: report.verdict.clone(),
                lambda,
                report,
                representative: rep.clone(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Census {
        k: m.len(),
        m: m.to_vec(),
        candidates: candidate_count(m).unwrap_or(u128::MAX),
        valid: graphs.len(),
        classes: rows.len(),
        periodicity_bound,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutation_decoding_is_lexicographic() {
        assert_eq!(nth_permutation(3, 0), vec![0, 1, 2]);
        assert_eq!(nth_permutation(3, 1), vec![0, 2, 1]);
        assert_eq!(nth_permutation(3, 5), vec![2, 1, 0]);
    }

    #[test]
    fn small_censuses() {
        let c = enumerate_census(&[2, 2], 4, DEFAULT_CENSUS_CAP).unwrap();
        assert_eq!((c.valid, c.classes), (24, 9));
        assert_eq!(c.rows.iter().map(|r| r.class_size).sum::<usize>(), 24);
        let c = enumerate_census(&[1, 1], 4, DEFAULT_CENSUS_CAP).unwrap();
        assert_eq!((c.valid, c.classes), (1, 1));
        assert!(enumerate_census(&[3, 3], 4, 1000).is_err());
    }
}
