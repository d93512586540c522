//! Exact rational coefficients.
//!
//! Every coefficient in the workbench is a [`Rat`], an arbitrary-precision
//! rational. There is no floating point anywhere in the evaluation path, so
//! two series agree exactly or they do not; there are no tolerances.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub type Rat = num_rational::BigRational;

/// Integer as a rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Fraction `n/d`. Panics if `d == 0`.
pub fn frac(n: i64, d: i64) -> Rat {
    assert!(d != 0, "zero denominator");
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// `r^e` for any integer `e`. Panics when raising zero to a negative power.
pub fn rat_pow(r: &Rat, e: i64) -> Rat {
    if e == 0 {
        return Rat::one();
    }
    if r.is_zero() {
        assert!(e > 0, "zero raised to a negative power");
        return Rat::zero();
    }
    let base = if e > 0 { r.clone() } else { r.recip() };
    let mut out = Rat::one();
    let mut sq = base;
    let mut n = e.unsigned_abs();
    while n > 0 {
        if n & 1 == 1 {
            out *= &sq;
        }
        n >>= 1;
        if n > 0 {
            sq = &sq * &sq;
        }
    }
    out
}

/// Renders without a spurious `/1` on integers, e.g. `-3/2`, `7`.
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Accepts `7`, `-7`, `3/4`, `-3/4`. Rejects empty input and zero denominators.
pub fn rat_from_str(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rat::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().ok()?;
            Some(Rat::from_integer(n))
        }
    }
}

/// Sign of `(-1)^e` for any integer `e`, including negative ones.
pub fn neg_one_pow(e: i64) -> Rat {
    if e.rem_euclid(2) == 0 {
        Rat::one()
    } else {
        -Rat::one()
    }
}

/// True when `r` is a (possibly negative) integer.
pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

/// Exact conversion to `i64` when the value is a small integer.
pub fn to_i64(r: &Rat) -> Option<i64> {
    use num_traits::ToPrimitive;
    if !is_integer(r) {
        return None;
    }
    r.numer().to_i64()
}

/// Absolute value, used by a few heuristics that order candidate terms.
pub fn rat_abs(r: &Rat) -> Rat {
    r.abs()
}

/// serde adapter storing rationals as compact strings (`-3/2`, `7`), for use
/// with `#[serde(with = "...")]` on [`Rat`] fields in catalog data types.
pub mod rat_serde {
    use serde::{Deserialize, Deserializer, Serializer};

    use super::{rat_from_str, rat_to_string, Rat};

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&rat_to_string(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        rat_from_str(&s).ok_or_else(|| serde::de::Error::custom(format!("bad rational {s:?}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pow_handles_negative_exponents() {
        assert_eq!(rat_pow(&frac(2, 3), -2), frac(9, 4));
        assert_eq!(rat_pow(&rat(-2), 3), rat(-8));
        assert_eq!(rat_pow(&rat(5), 0), rat(1));
        assert_eq!(rat_pow(&rat(0), 4), rat(0));
    }

    #[test]
    fn string_round_trip() {
        for s in ["7", "-7", "3/4", "-3/4", "0"] {
            let r = rat_from_str(s).unwrap();
            assert_eq!(rat_to_string(&r), s);
        }
        assert_eq!(rat_from_str("6/4").map(|r| rat_to_string(&r)), Some("3/2".into()));
        assert!(rat_from_str("1/0").is_none());
        assert!(rat_from_str("").is_none());
    }

    #[test]
    fn parity_sign() {
        assert_eq!(neg_one_pow(-3), rat(-1));
        assert_eq!(neg_one_pow(-2), rat(1));
        assert_eq!(neg_one_pow(0), rat(1));
        assert_eq!(neg_one_pow(7), rat(-1));
    }
}
