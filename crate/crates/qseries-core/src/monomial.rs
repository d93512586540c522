//! Monomials `c*q^t` with an exact rational coefficient and integer exponent.
//!
//! Monomials are the common currency for parameters: sample bindings like
//! `z = -1/2*q^3`, sum prefactors, and per-index geometric bases are all
//! monomials in `q`. They render to and parse from a compact text form used
//! throughout the catalog file and the CLI.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::coeff::{rat, rat_from_str, rat_pow, rat_to_string, Rat};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub coeff: Rat,
    pub exp: i64,
}

impl Monomial {
    pub fn new(coeff: Rat, exp: i64) -> Self {
        // 0*q^t and 0*q^s are the same monomial; keep a single representative.
        if coeff.is_zero() {
            return Monomial { coeff, exp: 0 };
        }
        Monomial { coeff, exp }
    }

    pub fn constant(c: Rat) -> Self {
        Monomial::new(c, 0)
    }

    pub fn int(n: i64) -> Self {
        Monomial::constant(rat(n))
    }

    pub fn one() -> Self {
        Monomial::int(1)
    }

    pub fn zero() -> Self {
        Monomial::int(0)
    }

    pub fn q() -> Self {
        Monomial::q_pow(1)
    }

    pub fn q_pow(exp: i64) -> Self {
        Monomial::new(rat(1), exp)
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.coeff.is_one() && self.exp == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial::new(&self.coeff * &other.coeff, self.exp + other.exp)
    }

    /// Reciprocal. Panics on the zero monomial.
    pub fn inv(&self) -> Monomial {
        assert!(!self.is_zero(), "reciprocal of the zero monomial");
        Monomial::new(self.coeff.recip(), -self.exp)
    }

    /// Integer power, negative allowed for nonzero monomials.
    pub fn pow(&self, e: i64) -> Monomial {
        if self.is_zero() {
            assert!(e > 0, "zero monomial raised to a non-positive power");
            return Monomial::zero();
        }
        Monomial::new(rat_pow(&self.coeff, e), self.exp * e)
    }

    pub fn neg(&self) -> Monomial {
        Monomial::new(-self.coeff.clone(), self.exp)
    }

    /// Substitutes `q -> q^b`, i.e. multiplies the exponent by `b`.
    pub fn rebase(&self, b: i64) -> Monomial {
        if self.is_zero() {
            return self.clone();
        }
        Monomial::new(self.coeff.clone(), self.exp * b)
    }

    /// Substitutes `q -> -q`: the coefficient picks up the exponent's parity sign.
    pub fn negate_q(&self) -> Monomial {
        if self.exp.rem_euclid(2) == 0 {
            self.clone()
        } else {
            self.neg()
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeff.is_zero() {
            return write!(f, "0");
        }
        if self.exp == 0 {
            return write!(f, "{}", rat_to_string(&self.coeff));
        }
        let qpart = if self.exp == 1 {
            "q".to_string()
        } else {
            format!("q^{}", self.exp)
        };
        if self.coeff.is_one() {
            write!(f, "{qpart}")
        } else if (-self.coeff.clone()).is_one() {
            write!(f, "-{qpart}")
        } else {
            write!(f, "{}*{}", rat_to_string(&self.coeff), qpart)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialParseError(pub String);

impl fmt::Display for MonomialParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid monomial: {}", self.0)
    }
}

impl std::error::Error for MonomialParseError {}

impl FromStr for Monomial {
    type Err = MonomialParseError;

    /// Accepts `q`, `q^-3`, `2*q^5`, `-q`, `3/4`, `-3/4*q^2`, `0`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let original = s;
        let s = s.trim();
        let err = || MonomialParseError(original.to_string());

        let (sign, s) = match s.strip_prefix('-') {
            Some(rest) => (-rat(1), rest.trim_start()),
            None => (rat(1), s),
        };

        let (coeff_str, q_str) = match s.split_once('*') {
            Some((c, rest)) => (Some(c.trim()), Some(rest.trim())),
            None if s.starts_with('q') => (None, Some(s)),
            None => (Some(s), None),
        };

        let coeff = match coeff_str {
            Some(c) => rat_from_str(c).ok_or_else(err)?,
            None => rat(1),
        };

        let exp = match q_str {
            None => 0,
            Some("q") => 1,
            Some(qs) => {
                let e = qs.strip_prefix("q^").ok_or_else(err)?;
                e.parse::<i64>().map_err(|_| err())?
            }
        };

        Ok(Monomial::new(sign * coeff, exp))
    }
}

impl Serialize for Monomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Monomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::frac;

    #[test]
    fn display_round_trip() {
        let cases = [
            Monomial::one(),
            Monomial::zero(),
            Monomial::q(),
            Monomial::q_pow(-3),
            Monomial::new(rat(2), 5),
            Monomial::new(rat(-1), 1),
            Monomial::new(frac(-3, 4), 2),
            Monomial::new(frac(1, 2), 0),
        ];
        for m in cases {
            let r: Monomial = m.to_string().parse().unwrap();
            assert_eq!(r, m, "failed on {m}");
        }
    }

    #[test]
    fn parse_rejects_garbage() {
        for bad in ["", "q^", "^3", "2**q", "q^x", "1/0*q"] {
            assert!(bad.parse::<Monomial>().is_err(), "accepted {bad:?}");
        }
    }

    #[test]
    fn algebra() {
        let a = Monomial::new(rat(2), 3);
        let b = Monomial::new(frac(1, 2), -1);
        assert_eq!(a.mul(&b), Monomial::new(rat(1), 2));
        assert_eq!(a.pow(-2), Monomial::new(frac(1, 4), -6));
        assert_eq!(a.inv().mul(&a), Monomial::one());
        assert_eq!(a.rebase(5), Monomial::new(rat(2), 15));
        assert_eq!(a.negate_q(), Monomial::new(rat(-2), 3));
        assert_eq!(Monomial::q_pow(2).negate_q(), Monomial::q_pow(2));
    }
}
