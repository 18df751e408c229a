//! JSON formats for graphs, elements and witnesses.
//!
//! Colours and edge indices are 1-based in every file; the theta array for
//! the pair `"i,j"` maps the flat index `(s-1)·m_j + (t-1)` to `(s'-1)·m_j + (t'-1)`.

use crate::algebra::{Algebra, Element};
use crate::error::{Error, Result};
use crate::graph::{Edge, KGraph, ThetaFamily};
use crate::periodicity::PeriodicityWitness;
use crate::rational::{format, parse};
use crate::word::NormalWord;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::sync::Arc;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphSpec {
    pub k: usize,
    pub m: Vec<u32>,
    pub theta: BTreeMap<String, Vec<u32>>,
}

impl GraphSpec {
    pub fn from_graph(g: &KGraph) -> Self {
        GraphSpec {
            k: g.k(),
            m: g.m().to_vec(),
            theta: g
                .theta()
                .perms
                .iter()
                .map(|(&(i, j), p)| (format!("{},{}", i + 1, j + 1), p.clone()))
                .collect(),
        }
    }

    /// The raw family, without validation.
    pub fn theta_family(&self) -> Result<ThetaFamily> {
        let mut perms = BTreeMap::new();
        for (key, perm) in &self.theta {
            let bad = || Error::Structural(format!("bad colour pair key {key:?}"));
            let (i, j) = key.split_once(',').ok_or_else(bad)?;
            let i: usize = i.trim().parse().map_err(|_| bad())?;
            let j: usize = j.trim().parse().map_err(|_| bad())?;
            if i == 0 || j == 0 {
                return Err(bad());
            }
            if perms.insert((i - 1, j - 1), perm.clone()).is_some() {
                return Err(Error::Structural(format!("duplicate colour pair {key:?}")));
            }
        }
        Ok(ThetaFamily { perms })
    }

    pub fn to_graph(&self) -> Result<KGraph> {
        KGraph::new(self.k, self.m.clone(), self.theta_family()?)
    }
}

pub fn parse_graph(json: &str) -> Result<KGraph> {
    let spec: GraphSpec = serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
    spec.to_graph()
}

/// A word as a list of `[colour, index]` pairs.
pub type WordJson = Vec<[usize; 2]>;

pub fn word_to_json(w: &NormalWord) -> WordJson {
    w.edges()
        .iter()
        .map(|e| [e.colour as usize + 1, e.index as usize + 1])
        .collect()
}

/// Reads any edge sequence and returns its normal form.
pub fn word_from_json(g: &KGraph, w: &WordJson) -> Result<NormalWord> {
    let mut edges = Vec::with_capacity(w.len());
    for &[c, i] in w {
        if c == 0 || i == 0 || c > g.k() || i > g.m()[c - 1] as usize {
            return Err(Error::Degree(format!("edge [{c},{i}] is not in the graph")));
        }
        edges.push(Edge::one_based(c, i));
    }
    g.normalize(&edges)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub u: WordJson,
    pub v: WordJson,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementJson {
    pub graph: GraphSpec,
    pub terms: Vec<TermJson>,
}

impl ElementJson {
    pub fn from_element(a: &Element) -> Self {
        ElementJson {
            graph: GraphSpec::from_graph(a.graph()),
            terms: terms_to_json(a),
        }
    }

    /// Canonicalizes the terms in a fresh algebra with the given term budget.
    pub fn to_element(&self, max_terms: usize) -> Result<Element> {
        let alg = Algebra::with_max_terms(self.graph.to_graph()?, max_terms);
        terms_from_json(&alg, &self.terms)
    }
}

/// Canonical terms in `(n, u, v)` order.
pub fn terms_to_json(a: &Element) -> Vec<TermJson> {
    a.terms()
        .map(|(_, u, v, c)| TermJson {
            u: word_to_json(u),
            v: word_to_json(v),
            coeff: format(c),
        })
        .collect()
}

pub fn terms_from_json(alg: &Arc<Algebra>, terms: &[TermJson]) -> Result<Element> {
    let g = alg.graph();
    let mut raw = Vec::with_capacity(terms.len());
    for t in terms {
        raw.push((word_from_json(g, &t.u)?, word_from_json(g, &t.v)?, parse(&t.coeff)?));
    }
    alg.canonicalize(raw)
}

pub fn parse_element(json: &str, max_terms: usize) -> Result<Element> {
    let spec: ElementJson = serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
    spec.to_element(max_terms)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub g: Vec<i64>,
    pub pairing: Vec<[WordJson; 2]>,
}

impl From<&PeriodicityWitness> for WitnessJson {
    fn from(w: &PeriodicityWitness) -> Self {
        WitnessJson {
            g: w.g.0.clone(),
            pairing: w
                .pairing
                .iter()
                .map(|(u, v)| [word_to_json(u), word_to_json(v)])
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_round_trip() {
        let json = r#"{"k": 2, "m": [2, 2], "theta": {"1,2": [0, 2, 1, 3]}}"#;
        let g = parse_graph(json).unwrap();
        assert_eq!(g, KGraph::two_graph(2, 2, vec![0, 2, 1, 3]).unwrap());
        let back = serde_json::to_string(&GraphSpec::from_graph(&g)).unwrap();
        assert_eq!(parse_graph(&back).unwrap(), g);
        assert!(matches!(
            parse_graph(r#"{"k": 2, "m": [2, 2], "theta": {"1,2": [0, 0, 1, 3]}}"#),
            Err(Error::Structural(_))
        ));
    }

    #[test]
    fn element_round_trip() {
        let json = r#"{"graph": {"k": 2, "m": [2, 2], "theta": {"1,2": [0, 1, 2, 3]}},
            "terms": [{"u": [[1, 1]], "v": [[1, 1]], "coeff": "1"},
                      {"u": [[1, 2]], "v": [[1, 2]], "coeff": "1/1"}]}"#;
        let a = parse_element(json, 1000).unwrap();
        assert_eq!(a.scalar_value(), Some(crate::rational::int(1)));
        let out = serde_json::to_string(&ElementJson::from_element(&a)).unwrap();
        assert_eq!(parse_element(&out, 1000).unwrap(), a);
        let bad = json.replace("[[1, 2]], \"v\"", "[[3, 2]], \"v\"");
        assert!(matches!(parse_element(&bad, 1000), Err(Error::Degree(_))));
    }
}
