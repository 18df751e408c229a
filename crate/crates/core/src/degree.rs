//! Degrees in `N^k` and `Z^k`.

use serde::{Deserialize, Serialize};
use std::fmt;

/// A multidegree in `N^k`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Degree(pub Vec<u32>);

/// A multidegree in `Z^k`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ZDegree(pub Vec<i64>);

impl Degree {
    pub fn zero(k: usize) -> Self {
        Degree(vec![0; k])
    }

    /// The unit vector of colour `c` (0-based).
    pub fn unit(k: usize, c: usize) -> Self {
        let mut d = vec![0; k];
        d[c] = 1;
        Degree(d)
    }

    /// `(n, ..., n)`.
    pub fn uniform(k: usize, n: u32) -> Self {
        Degree(vec![n; k])
    }

    pub fn k(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Coordinatewise `self <= other`.
    pub fn le(&self, other: &Degree) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn join(&self, other: &Degree) -> Degree {
        Degree(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn meet(&self, other: &Degree) -> Degree {
        Degree(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn add(&self, other: &Degree) -> Degree {
        Degree(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self - other`, which must be non-negative.
    pub fn sub(&self, other: &Degree) -> Degree {
        debug_assert!(other.le(self), "{other:?} is not below {self:?}");
        Degree(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    /// `(self - other) v 0`.
    pub fn saturating_sub(&self, other: &Degree) -> Degree {
        Degree(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.saturating_sub(*b))
                .collect(),
        )
    }

    pub fn scale(&self, n: u32) -> Degree {
        Degree(self.0.iter().map(|a| a * n).collect())
    }

    pub fn to_z(&self) -> ZDegree {
        ZDegree(self.0.iter().map(|&a| a as i64).collect())
    }

    /// All degrees `d` with `0 <= d <= self`, in lexicographic order.
    pub fn box_below(&self) -> Vec<Degree> {
        let mut out = vec![Degree(Vec::with_capacity(self.k()))];
        for &bound in &self.0 {
            out = out
                .into_iter()
                .flat_map(|d| {
                    (0..=bound).map(move |x| {
                        let mut v = d.0.clone();
                        v.push(x);
                        Degree(v)
                    })
                })
                .collect();
        }
        out
    }
}

impl ZDegree {
    pub fn zero(k: usize) -> Self {
        ZDegree(vec![0; k])
    }

    pub fn k(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// The positive part `n v 0`.
    pub fn plus(&self) -> Degree {
        Degree(self.0.iter().map(|&x| x.max(0) as u32).collect())
    }

    /// The negative part `(-n) v 0`.
    pub fn minus(&self) -> Degree {
        Degree(self.0.iter().map(|&x| (-x).max(0) as u32).collect())
    }

    pub fn add(&self, other: &ZDegree) -> ZDegree {
        ZDegree(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn neg(&self) -> ZDegree {
        ZDegree(self.0.iter().map(|a| -a).collect())
    }

    pub fn sup_norm(&self) -> i64 {
        self.0.iter().map(|x| x.abs()).max().unwrap_or(0)
    }

    /// `a - b` for `a, b` in `N^k`.
    pub fn diff(a: &Degree, b: &Degree) -> ZDegree {
        ZDegree(
            a.0.iter()
                .zip(&b.0)
                .map(|(x, y)| *x as i64 - *y as i64)
                .collect(),
        )
    }
}

impl fmt::Debug for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Debug for ZDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ZDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plus_minus_decomposition() {
        let n = ZDegree(vec![3, -2, 0]);
        assert_eq!(n.plus(), Degree(vec![3, 0, 0]));
        assert_eq!(n.minus(), Degree(vec![0, 2, 0]));
        assert!(n.plus().meet(&n.minus()).is_zero());
        assert_eq!(ZDegree::diff(&n.plus(), &n.minus()), n);
    }

    #[test]
    fn box_below_counts() {
        let d = Degree(vec![1, 2]);
        let all = d.box_below();
        assert_eq!(all.len(), 6);
        assert_eq!(all[0], Degree(vec![0, 0]));
        assert_eq!(all[5], Degree(vec![1, 2]));
    }
}
