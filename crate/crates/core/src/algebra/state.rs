use super::Element;
use crate::degree::ZDegree;
use crate::error::Result;
use crate::rational::{m_pow, Coeff};
use num_traits::Zero;
use serde::Serialize;

/// Result of checking `ω(AB) = m^{d(B)} ω(BA)` on homogeneous pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KmsOutcome {
    pub holds: bool,
    /// Number of degree pairs `(n, -n)` present in both elements.
    pub pairs_checked: usize,
    /// `ω(AB)`.
    #[serde(with = "crate::rational::serde_coeff")]
    pub lhs: Coeff,
    /// `Σ_n m^{-n} ω(B_{-n} A_n)`.
    #[serde(with = "crate::rational::serde_coeff")]
    pub rhs: Coeff,
}

impl Element {
    /// The gauge-invariant state `ω(s_u s_v*) = δ_{u,v} m^{-d(u)}`.
    pub fn omega(&self) -> Coeff {
        let g = self.graph();
        let zero = ZDegree::zero(g.k());
        let Some(comp) = self.components().get(&zero) else {
            return Coeff::zero();
        };
        let trace: Coeff = comp
            .terms
            .iter()
            .filter(|((u, v), _)| u == v)
            .map(|(_, c)| c.clone())
            .sum();
        let p: Vec<i64> = comp.right.0.iter().map(|&x| -(x as i64)).collect();
        trace * m_pow(g.m(), &p)
    }

    /// Checks the KMS relation for `ω` against `other`, one degree pair at a time.
    pub fn kms_check(&self, other: &Element) -> Result<KmsOutcome> {
        let m = self.graph().m().to_vec();
        let mut holds = true;
        let mut pairs_checked = 0;
        let mut rhs = Coeff::zero();
        for n in self.degrees() {
            let a = self.spectral_component(&n);
            let b = other.spectral_component(&n.neg());
            if b.is_zero() {
                continue;
            }
            pairs_checked += 1;
            let ab = a.mul(&b)?.omega();
            let ba = b.mul(&a)?.omega() * m_pow(&m, &n.neg().0);
            holds &= ab == ba;
            rhs += ba;
        }
        let lhs = self.mul(other)?.omega();
        holds &= lhs == rhs;
        Ok(KmsOutcome {
            holds,
            pairs_checked,
            lhs,
            rhs,
        })
    }
}
