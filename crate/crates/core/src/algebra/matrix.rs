//! The core `F_p ≅ M_{Λ^p}(ℚ)` as explicit matrices.

use super::Element;
use crate::degree::{Degree, ZDegree};
use crate::error::{Error, Result};
use crate::rational::Coeff;
use crate::word::NormalWord;
use num_traits::Zero;
use serde::Serialize;
use std::collections::HashMap;

/// Dense matrices over `Λ^level`, indexed in the order of `basis`.
#[derive(Clone, Debug)]
pub struct CoreMatrixLevel {
    pub level: Degree,
    pub basis: Vec<NormalWord>,
    index: HashMap<NormalWord, usize>,
}

pub type Matrix = Vec<Vec<Coeff>>;

impl CoreMatrixLevel {
    pub fn new(a: &Element, level: &Degree, max_dim: usize) -> Result<Self> {
        let size = a.graph().level_size(level);
        if size > max_dim as u128 {
            return Err(Error::Resource(format!(
                "matrix level {level} has dimension {size}, above {max_dim}"
            )));
        }
        let basis = a.algebra().level(level)?.to_vec();
        let index = basis.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        Ok(CoreMatrixLevel {
            level: level.clone(),
            basis,
            index,
        })
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// The matrix of a core element whose bidegree is at most the level.
    pub fn to_matrix(&self, a: &Element) -> Result<Matrix> {
        let n = self.dimension();
        let mut out = vec![vec![Coeff::zero(); n]; n];
        let k = a.graph().k();
        for (deg, comp) in a.components() {
            if *deg != ZDegree::zero(k) {
                return Err(Error::Degree(format!(
                    "component of degree {deg} is not in the core"
                )));
            }
            for (u, v, c) in a.algebra().terms_at(comp, &self.level)? {
                out[self.index[&u]][self.index[&v]] += c;
            }
        }
        Ok(out)
    }

    pub fn from_matrix(&self, a: &Element, mat: &Matrix) -> Result<Element> {
        let mut raw = Vec::new();
        for (i, row) in mat.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    raw.push((self.basis[i].clone(), self.basis[j].clone(), c.clone()));
                }
            }
        }
        a.algebra().canonicalize(raw)
    }
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let mut out = vec![vec![Coeff::zero(); n]; n];
    for i in 0..n {
        for (l, x) in a[i].iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[l][j].is_zero() {
                    out[i][j] += x * &b[l][j];
                }
            }
        }
    }
    out
}

pub fn trace(a: &Matrix) -> Coeff {
    a.iter().enumerate().map(|(i, r)| r[i].clone()).sum()
}

/// Consistency of the matrix picture with the symbolic calculus.
#[derive(Clone, Debug, Serialize)]
pub struct MatrixModelReport {
    pub level: Degree,
    pub dimension: usize,
    /// `M(A) M(B) = M(AB)`.
    pub product_consistent: bool,
    /// `tr(M(A)) / dim = ω(A)`.
    pub trace_consistent: bool,
    /// The inclusion into each next level is `M ↦ M ⊗ 1` and keeps products.
    pub embedding_consistent: bool,
}

/// Builds matrices of the core elements `a` and `b` at `level` and checks
/// them against the symbolic product, the state and the level inclusions.
pub fn matrix_model(a: &Element, b: &Element, level: &Degree, max_dim: usize) -> Result<MatrixModelReport> {
    let lv = CoreMatrixLevel::new(a, level, max_dim)?;
    let ma = lv.to_matrix(a)?;
    let mb = lv.to_matrix(b)?;
    let ab = a.mul(b)?;
    let product_consistent = mat_mul(&ma, &mb) == lv.to_matrix(&ab)?;
    let dim = Coeff::from_integer((lv.dimension() as i64).into());
    let trace_consistent = trace(&ma) / &dim == a.omega() && trace(&mb) / &dim == b.omega();
    let mut embedding_consistent = lv.from_matrix(a, &ma)? == *a;
    let k = a.graph().k();
    for c in 0..k {
        let next = level.add(&Degree::unit(k, c));
        let Ok(up) = CoreMatrixLevel::new(a, &next, max_dim) else {
            continue;
        };
        let big = up.to_matrix(a)?;
        let mut expected = vec![vec![Coeff::zero(); up.dimension()]; up.dimension()];
        for (i, x) in lv.basis.iter().enumerate() {
            for (j, y) in lv.basis.iter().enumerate() {
                if ma[i][j].is_zero() {
                    continue;
                }
                for w in a.algebra().level(&Degree::unit(k, c))?.iter() {
                    let g = a.graph();
                    expected[up.index[&g.concat(x, w)]][up.index[&g.concat(y, w)]] = ma[i][j].clone();
                }
            }
        }
        let upb = up.to_matrix(b)?;
        embedding_consistent &= big == expected
            && mat_mul(&big, &upb) == up.to_matrix(&ab)?
            && trace(&big) / Coeff::from_integer((up.dimension() as i64).into()) == a.omega();
    }
    Ok(MatrixModelReport {
        level: level.clone(),
        dimension: lv.dimension(),
        product_consistent,
        trace_consistent,
        embedding_consistent,
    })
}
