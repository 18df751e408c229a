//! Exact rational helpers.

use crate::error::{Error, Result};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Coeff = BigRational;

pub fn int(n: i64) -> Coeff {
    Coeff::from_integer(BigInt::from(n))
}

pub fn frac(p: i64, q: i64) -> Coeff {
    Coeff::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `"p/q"` or `"p"`.
pub fn parse(s: &str) -> Result<Coeff> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Coeff::new(p, q))
        }
        None => Ok(Coeff::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Always `"p/q"`, including integers (`"3/1"`).
pub fn format(c: &Coeff) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

/// Decimal rendering truncated to `digits` places after the point.
pub fn decimal(c: &Coeff, digits: u32) -> String {
    let neg = c.is_negative();
    let a = c.abs();
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = (a.numer() * &scale) / a.denom();
    let int_part = &scaled / &scale;
    let frac_part = &scaled % &scale;
    let mut s = format!(
        "{}{}.{:0>width$}",
        if neg { "-" } else { "" },
        int_part,
        frac_part.to_string(),
        width = digits as usize
    );
    if digits == 0 {
        s.pop();
    }
    s
}

pub fn to_f64(c: &Coeff) -> f64 {
    c.to_f64().unwrap_or(f64::NAN)
}

/// `prod m_i^{n_i}` for integer exponents of either sign.
pub fn m_pow(m: &[u32], n: &[i64]) -> Coeff {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for (&mi, &ni) in m.iter().zip(n) {
        let p = BigInt::from(mi).pow(ni.unsigned_abs() as u32);
        if ni >= 0 {
            num *= p;
        } else {
            den *= p;
        }
    }
    Coeff::new(num, den)
}

fn ceil_sqrt(n: &BigUint) -> BigUint {
    let r = n.sqrt();
    if &r * &r == *n {
        r
    } else {
        r + 1u32
    }
}

/// A rational upper bound for `sqrt(x)`, exact when `x` is the square of a
/// rational and otherwise within `2^-64` relative.
pub fn sqrt_upper(x: &Coeff) -> Coeff {
    assert!(!x.is_negative(), "square root of a negative number");
    if x.is_zero() {
        return Coeff::zero();
    }
    let n = x.numer().magnitude();
    let d = x.denom().magnitude();
    let (rn, rd) = (n.sqrt(), d.sqrt());
    if &rn * &rn == *n && &rd * &rd == *d {
        return Coeff::new(rn.into(), rd.into());
    }
    // sqrt(n/d) = sqrt(n d) / d
    let shift = 64u32;
    let scaled: BigUint = (n * d) << (2 * shift);
    let root = ceil_sqrt(&scaled);
    Coeff::new(root.into(), BigInt::from(d.clone()) << shift)
}

/// Serde adapter writing coefficients as `"p/q"` strings.
pub mod serde_coeff {
    use super::Coeff;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(c: &Coeff, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::format(c))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Coeff, D::Error> {
        let s = String::deserialize(d)?;
        super::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// `Some(r)` when `x = r^2` for a rational `r >= 0`.
pub fn exact_sqrt(x: &Coeff) -> Option<Coeff> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().magnitude();
    let d = x.denom().magnitude();
    let (rn, rd) = (n.sqrt(), d.sqrt());
    (&rn * &rn == *n && &rd * &rd == *d).then(|| Coeff::new(rn.into(), rd.into()))
}
