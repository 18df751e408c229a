//! The intrinsic group `G = {g ∈ Z^k : m^g = 1}` and the multiplicative
//! spectrum `{m^n : n ∈ Z^k}`.

pub mod classify;
pub mod snf;

use crate::degree::ZDegree;
use crate::error::{Error, Result};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Pow, ToPrimitive, Zero};
use serde::Serialize;

pub use classify::{classify_type, Aperiodicity, TypeReport, Verdict};

/// `m_i = Π_p p^{exponents[p][i]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeExponentMatrix {
    pub primes: Vec<u64>,
    pub exponents: Vec<Vec<u32>>,
}

impl PrimeExponentMatrix {
    pub fn new(m: &[u64]) -> Self {
        let mut factored: Vec<Vec<(u64, u32)>> = Vec::new();
        let mut primes: Vec<u64> = Vec::new();
        for &mi in m {
            let f = factorize(mi);
            primes.extend(f.iter().map(|&(p, _)| p));
            factored.push(f);
        }
        primes.sort_unstable();
        primes.dedup();
        let exponents = primes
            .iter()
            .map(|p| {
                factored
                    .iter()
                    .map(|f| f.iter().find(|(q, _)| q == p).map_or(0, |&(_, e)| e))
                    .collect()
            })
            .collect();
        PrimeExponentMatrix { primes, exponents }
    }

    /// `Π_p p^{E[p][i]}` for column `i`.
    pub fn reconstruct(&self, i: usize) -> BigUint {
        self.primes
            .iter()
            .zip(&self.exponents)
            .map(|(&p, row)| BigUint::from(p).pow(row[i]))
            .product()
    }
}

/// Trial division.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntrinsicGroup {
    pub rank: usize,
    pub basis: Vec<ZDegree>,
}

/// `m^{g+} = m^{g-}` over arbitrary-precision integers.
pub fn is_in_group(m: &[u64], g: &[i64]) -> bool {
    let mut lhs = BigUint::one();
    let mut rhs = BigUint::one();
    for (&mi, &gi) in m.iter().zip(g) {
        let p = BigUint::from(mi).pow(gi.unsigned_abs() as u32);
        if gi > 0 {
            lhs *= p;
        } else {
            rhs *= p;
        }
    }
    lhs == rhs
}

/// `G` as the integer kernel of the prime exponent matrix, in Hermite form.
pub fn intrinsic_group(m: &[u64]) -> Result<IntrinsicGroup> {
    if let Some(bad) = m.iter().find(|&&x| x < 2) {
        return Err(Error::Domain(format!("multiplicity {bad} is below 2")));
    }
    let k = m.len();
    let e = PrimeExponentMatrix::new(m);
    let mat: snf::IntMatrix = e
        .exponents
        .iter()
        .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let kernel = snf::hermite_rows(&snf::integer_kernel(&mat, k));
    let basis: Vec<ZDegree> = kernel
        .iter()
        .map(|row| ZDegree(row.iter().map(|x| x.to_i64().expect("kernel entry fits i64")).collect()))
        .collect();
    for g in &basis {
        if !is_in_group(m, &g.0) {
            return Err(Error::Domain(format!("kernel vector {g} fails m^g = 1")));
        }
    }
    Ok(IntrinsicGroup {
        rank: basis.len(),
        basis,
    })
}

/// The closure of `{m^n}` in `[0, ∞)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Spectrum {
    /// Dense: the closure is all of `[0, ∞)`.
    Dense,
    /// `{c^{gN} : N ∈ Z}`, generated by `λ = c^{-g}`.
    Cyclic { base: u64, exp: u64 },
}

pub fn spectrum_generator(m: &[u64]) -> Result<Spectrum> {
    let k = m.len();
    let group = intrinsic_group(m)?;
    if group.rank + 1 != k {
        return Ok(Spectrum::Dense);
    }
    // the exponent columns are all multiples of one primitive vector
    let e = PrimeExponentMatrix::new(m);
    let content = |col: usize| e.exponents.iter().fold(0u32, |acc, row| acc.gcd(&row[col]));
    let c0 = content(0);
    let primitive: Vec<u32> = e.exponents.iter().map(|row| row[0] / c0).collect();
    let base: u64 = e
        .primes
        .iter()
        .zip(&primitive)
        .map(|(&p, &x)| p.pow(x))
        .product();
    let pivot = primitive.iter().position(|&x| x > 0).expect("m_1 >= 2");
    let g = (0..k).fold(0u64, |acc, i| {
        acc.gcd(&(e.exponents[pivot][i] / primitive[pivot]).into())
    });
    Ok(Spectrum::Cyclic { base, exp: g })
}

/// Evaluates `λ = m_1^{-1/(b_2⋯b_k)}`, where `m_1^{a_j} = m_j^{b_j}` with
/// `gcd(a_j, b_j) = 1`, and compares it with the cyclic generator `c^{-g}`.
///
/// Returns `None` outside the cyclic case.
pub fn closed_formula_agrees(m: &[u64]) -> Result<Option<bool>> {
    let Spectrum::Cyclic { base, exp } = spectrum_generator(m)? else {
        return Ok(None);
    };
    // m_j = c^{d_j}; m_1^{a} = m_j^{b} with a/b = d_j/d_1 in lowest terms
    let d = |x: u64| -> u64 {
        let mut n = 0;
        let mut y = x;
        while y > 1 {
            y /= base;
            n += 1;
        }
        n
    };
    let d1 = d(m[0]);
    let b_prod: u64 = m[1..]
        .iter()
        .map(|&mj| {
            let dj = d(mj);
            d1 / d1.gcd(&dj)
        })
        .product();
    // m_1^{-1/B} = c^{-d1/B}; agreement means d1/B = g
    Ok(Some(d1 == exp * b_prod))
}

/// `λ = c^{-g}` as an exact rational.
pub fn lambda_value(base: u64, exp: u64) -> crate::rational::Coeff {
    let den = BigInt::from(base).pow(exp as u32);
    crate::rational::Coeff::new(BigInt::one(), den)
}

/// `true` if `g` has both a positive and a negative entry, or is zero.
pub fn is_balanced(g: &ZDegree) -> bool {
    g.0.iter().all(Zero::is_zero) || (g.0.iter().any(|&x| x > 0) && g.0.iter().any(|&x| x < 0))
}
