//! Truncated Laurent series in `q` over exact rationals.
//!
//! A [`QSeries`] stores the coefficients of `q^vmin ... q^order` densely and
//! records `order` as the largest exponent whose coefficient is known exactly.
//! Every operation propagates the provable window honestly:
//!
//! - add/sub: result order is the minimum of the operand orders;
//! - mul: result order is `min(a.order + b.vmin, b.order + a.vmin)`, the
//!   largest exponent whose full convolution window is known on both sides;
//! - reciprocal of a series with valuation `v` known through `order` is known
//!   through `order - 2v`.
//!
//! Invariants: `order >= vmin - 1` always holds; `coeffs.len()` equals
//! `order - vmin + 1`; the leading stored coefficient is nonzero (leading
//! zeros are trimmed by advancing `vmin`). The zero-through-order series has
//! an empty coefficient vector and `vmin == order + 1`. Trailing zeros inside
//! the window are kept: they are knowledge, not noise.

use std::fmt;

use num_traits::{One, Zero};

use crate::coeff::{neg_one_pow, rat_to_string, Rat};
use crate::error::SeriesError;
use crate::monomial::Monomial;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    vmin: i64,
    order: i64,
    coeffs: Vec<Rat>,
}

impl QSeries {
    /// The zero series, known to vanish through `q^order`.
    pub fn zero(order: i64) -> Self {
        QSeries { vmin: order + 1, order, coeffs: Vec::new() }
    }

    /// The constant 1, known through `q^order`. Requires `order >= 0` so the
    /// constant term is inside the window.
    pub fn one(order: i64) -> Self {
        QSeries::from_monomial(&Monomial::one(), order)
    }

    /// A single monomial as a series through `q^order`. A monomial beyond the
    /// window truncates to the zero series; that is the honest reading of
    /// "known through `order`".
    pub fn from_monomial(m: &Monomial, order: i64) -> Self {
        if m.is_zero() || m.exp > order {
            return QSeries::zero(order);
        }
        let mut coeffs = vec![Rat::zero(); (order - m.exp + 1) as usize];
        coeffs[0] = m.coeff.clone();
        QSeries { vmin: m.exp, order, coeffs }
    }

    /// Builds a series from an explicit coefficient window. `coeffs[i]` is the
    /// coefficient of `q^(vmin + i)`; the order is `vmin + coeffs.len() - 1`.
    pub fn from_coeffs(vmin: i64, coeffs: Vec<Rat>) -> Self {
        let order = vmin + coeffs.len() as i64 - 1;
        let mut s = QSeries { vmin, order, coeffs };
        s.trim_leading_zeros();
        s
    }

    fn trim_leading_zeros(&mut self) {
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.vmin += lead as i64;
        }
        debug_assert_eq!(self.coeffs.len() as i64, self.order - self.vmin + 1);
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    /// Smallest exponent with a (potentially) nonzero coefficient. For the
    /// zero series this is `order + 1` by convention.
    pub fn vmin(&self) -> i64 {
        self.vmin
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Valuation: exponent of the first nonzero coefficient, `None` when the
    /// series vanishes through its order.
    pub fn valuation(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.vmin)
        }
    }

    /// Exact coefficient of `q^exp`. Exponents below the window are known
    /// zeros; exponents above it are unknowable and rejected.
    pub fn coeff(&self, exp: i64) -> Result<Rat, SeriesError> {
        if exp > self.order {
            return Err(SeriesError::BeyondOrder { exp, order: self.order });
        }
        if exp < self.vmin {
            return Ok(Rat::zero());
        }
        Ok(self.coeffs[(exp - self.vmin) as usize].clone())
    }

    /// Iterates `(exponent, coefficient)` over the stored window.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &Rat)> {
        self.coeffs.iter().enumerate().map(move |(i, c)| (self.vmin + i as i64, c))
    }

    /// Restricts the window to `new_order`. Only shrinking is meaningful;
    /// asking for more than is known is a caller bug.
    pub fn truncate(&self, new_order: i64) -> QSeries {
        assert!(
            new_order <= self.order,
            "cannot extend a series from order {} to {}",
            self.order,
            new_order
        );
        if new_order < self.vmin {
            return QSeries::zero(new_order);
        }
        let keep = (new_order - self.vmin + 1) as usize;
        QSeries {
            vmin: self.vmin,
            order: new_order,
            coeffs: self.coeffs[..keep].to_vec(),
        }
    }

    pub fn neg(&self) -> QSeries {
        QSeries {
            vmin: self.vmin,
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn add(&self, other: &QSeries) -> QSeries {
        let order = self.order.min(other.order);
        let vmin = self.vmin.min(other.vmin).min(order + 1);
        let mut coeffs = vec![Rat::zero(); (order - vmin + 1).max(0) as usize];
        for (e, c) in self.iter().take_while(|(e, _)| *e <= order) {
            coeffs[(e - vmin) as usize] += c;
        }
        for (e, c) in other.iter().take_while(|(e, _)| *e <= order) {
            coeffs[(e - vmin) as usize] += c;
        }
        QSeries::from_coeffs(vmin, coeffs).with_order(order)
    }

    pub fn sub(&self, other: &QSeries) -> QSeries {
        self.add(&other.neg())
    }

    /// Internal: reattach an order after from_coeffs trimmed leading zeros
    /// (which can only have shortened the vector, never the window).
    fn with_order(mut self, order: i64) -> QSeries {
        debug_assert!(self.order <= order || self.is_zero());
        if self.is_zero() {
            return QSeries::zero(order);
        }
        debug_assert_eq!(self.order, order);
        self.order = order;
        self
    }

    pub fn scale(&self, c: &Rat) -> QSeries {
        if c.is_zero() {
            return QSeries::zero(self.order);
        }
        QSeries {
            vmin: self.vmin,
            order: self.order,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Multiplies by a monomial: scale plus exponent shift. The window shifts
    /// with it, so no information is lost or invented.
    pub fn mul_monomial(&self, m: &Monomial) -> QSeries {
        if m.is_zero() {
            return QSeries::zero(self.order + m.exp);
        }
        QSeries {
            vmin: self.vmin + m.exp,
            order: self.order + m.exp,
            coeffs: self.coeffs.iter().map(|x| x * &m.coeff).collect(),
        }
    }

    /// Full Cauchy product on the provable window.
    pub fn mul(&self, other: &QSeries) -> QSeries {
        let order = (self.order + other.vmin).min(other.order + self.vmin);
        if self.is_zero() || other.is_zero() {
            return QSeries::zero(order);
        }
        let vmin = self.vmin + other.vmin;
        let len = (order - vmin + 1).max(0) as usize;
        let mut coeffs = vec![Rat::zero(); len];
        for (ea, ca) in self.iter() {
            if ca.is_zero() {
                continue;
            }
            let hi = order - ea;
            for (eb, cb) in other.iter().take_while(move |(eb, _)| *eb <= hi) {
                coeffs[(ea + eb - vmin) as usize] += ca * cb;
            }
        }
        QSeries::from_coeffs(vmin, coeffs).with_order(order)
    }

    /// Multiplies by the exact binomial `1 - c*q^t` in one pass. For `t < 0`
    /// the window drops by `|t|` because the product's low end moves down.
    pub fn mul_binomial(&self, c: &Rat, t: i64) -> QSeries {
        if c.is_zero() {
            return self.clone();
        }
        if t == 0 {
            return self.scale(&(Rat::one() - c));
        }
        let shift = t.min(0);
        let vmin = self.vmin + shift;
        let order = self.order + shift;
        if self.is_zero() {
            return QSeries::zero(order);
        }
        let mut coeffs = vec![Rat::zero(); (order - vmin + 1) as usize];
        for (e, x) in self.iter() {
            if e <= order {
                coeffs[(e - vmin) as usize] += x;
            }
            let e2 = e + t;
            if e2 <= order {
                coeffs[(e2 - vmin) as usize] -= x * c;
            }
        }
        QSeries::from_coeffs(vmin, coeffs).with_order(order)
    }

    /// Divides by the exact binomial `1 - c*q^t` in one pass. For `t > 0` the
    /// window is unchanged; for `t < 0` it grows by `|t|` since the divisor's
    /// valuation is negative. Dividing by `1 - c*q^0` requires `c != 1`.
    pub fn div_binomial(&self, c: &Rat, t: i64) -> QSeries {
        if c.is_zero() {
            return self.clone();
        }
        if t == 0 {
            let d = Rat::one() - c;
            assert!(!d.is_zero(), "division by the zero binomial 1 - 1*q^0");
            return self.scale(&d.recip());
        }
        if t < 0 {
            // 1 - c*q^t = (-c*q^t) * (1 - (1/c)*q^(-t)); peel off the monomial.
            let m = Monomial::new(-c.clone().recip(), -t);
            return self.mul_monomial(&m).div_binomial(&c.recip(), -t);
        }
        if self.is_zero() {
            return self.clone();
        }
        let vmin = self.vmin;
        let order = self.order;
        let mut coeffs = vec![Rat::zero(); (order - vmin + 1) as usize];
        for i in 0..coeffs.len() {
            let mut v = self.coeffs[i].clone();
            if i as i64 >= t {
                let prev = &coeffs[i - t as usize];
                if !prev.is_zero() {
                    v += prev * c;
                }
            }
            coeffs[i] = v;
        }
        QSeries::from_coeffs(vmin, coeffs).with_order(order)
    }

    /// Reciprocal. A series with valuation `v` known through `order` has a
    /// reciprocal with valuation `-v` known through `order - 2v`.
    pub fn invert(&self) -> Result<QSeries, SeriesError> {
        if self.is_zero() {
            return Err(SeriesError::NotInvertible { order: self.order });
        }
        let v = self.vmin;
        let rel = (self.order - v) as usize; // coefficients of the unit part, indices 0..=rel
        let lead = &self.coeffs[0];
        let lead_inv = lead.clone().recip();
        let mut w = vec![Rat::zero(); rel + 1];
        w[0] = lead_inv.clone();
        for n in 1..=rel {
            let mut acc = Rat::zero();
            for i in 1..=n {
                if !self.coeffs[i].is_zero() && !w[n - i].is_zero() {
                    acc += &self.coeffs[i] * &w[n - i];
                }
            }
            if !acc.is_zero() {
                w[n] = -acc * &lead_inv;
            }
        }
        Ok(QSeries::from_coeffs(-v, w).with_order(self.order - 2 * v))
    }

    pub fn div(&self, other: &QSeries) -> Result<QSeries, SeriesError> {
        Ok(self.mul(&other.invert()?))
    }

    /// Substitutes `q -> -q`: the coefficient of `q^e` picks up `(-1)^e`.
    pub fn negate_q(&self) -> QSeries {
        let coeffs = self
            .iter()
            .map(|(e, c)| c * neg_one_pow(e))
            .collect();
        QSeries { vmin: self.vmin, order: self.order, coeffs }
    }

    /// Substitutes `q -> q^b` for `b >= 1`. Exponents multiply by `b`; between
    /// the stretched coefficients everything is a known zero, so the result is
    /// known through `b*(order + 1) - 1`.
    pub fn rebase(&self, b: i64) -> QSeries {
        assert!(b >= 1, "rebase exponent must be positive, got {b}");
        let order = b * (self.order + 1) - 1;
        if self.is_zero() {
            return QSeries::zero(order);
        }
        let vmin = b * self.vmin;
        let mut coeffs = vec![Rat::zero(); (order - vmin + 1) as usize];
        for (e, c) in self.iter() {
            coeffs[(b * e - vmin) as usize] = c.clone();
        }
        QSeries { vmin, order, coeffs }
    }

    /// Compares two series on the window where both are provable. Returns the
    /// common order together with the first disagreement, if any.
    pub fn first_difference(&self, other: &QSeries) -> (i64, Option<(i64, Rat, Rat)>) {
        let order = self.order.min(other.order);
        let lo = self.vmin.min(other.vmin);
        for e in lo..=order {
            let a = self.coeff(e).expect("within common window");
            let b = other.coeff(e).expect("within common window");
            if a != b {
                return (order, Some((e, a, b)));
            }
        }
        (order, None)
    }

    /// True when the two series agree on their whole common window.
    pub fn agrees_with(&self, other: &QSeries) -> bool {
        self.first_difference(other).1.is_none()
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let shown: Vec<(i64, &Rat)> = self.iter().filter(|(_, c)| !c.is_zero()).collect();
        const LIMIT: usize = 24;
        let mut first = true;
        for (e, c) in shown.iter().take(LIMIT) {
            let mag = if c.is_negative_coeff() { -(*c).clone() } else { (*c).clone() };
            let sign = if c.is_negative_coeff() { "-" } else { "+" };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            let body = match (*e, mag.is_one()) {
                (0, _) => rat_to_string(&mag),
                (1, true) => "q".to_string(),
                (1, false) => format!("{}*q", rat_to_string(&mag)),
                (_, true) => format!("q^{e}"),
                (_, false) => format!("{}*q^{e}", rat_to_string(&mag)),
            };
            write!(f, "{body}")?;
        }
        if shown.len() > LIMIT {
            write!(f, " + ...")?;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.order + 1)
    }
}

trait CoeffSign {
    fn is_negative_coeff(&self) -> bool;
}

impl CoeffSign for Rat {
    fn is_negative_coeff(&self) -> bool {
        use num_traits::Signed;
        self.is_negative()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{frac, rat};

    fn s(vmin: i64, coeffs: &[i64]) -> QSeries {
        QSeries::from_coeffs(vmin, coeffs.iter().map(|&n| rat(n)).collect())
    }

    #[test]
    fn zero_series_invariants() {
        let z = QSeries::zero(10);
        assert!(z.is_zero());
        assert_eq!(z.order(), 10);
        assert_eq!(z.vmin(), 11);
        assert_eq!(z.coeff(10).unwrap(), rat(0));
        assert_eq!(z.coeff(-5).unwrap(), rat(0));
        assert!(z.coeff(11).is_err());
        assert_eq!(z.valuation(), None);
    }

    #[test]
    fn coeff_window_semantics() {
        let a = s(-2, &[1, 0, 3]); // q^-2 + 3 + O(q)
        assert_eq!(a.order(), 0);
        assert_eq!(a.coeff(-2).unwrap(), rat(1));
        assert_eq!(a.coeff(-1).unwrap(), rat(0));
        assert_eq!(a.coeff(0).unwrap(), rat(3));
        assert_eq!(a.coeff(-100).unwrap(), rat(0));
        assert_eq!(
            a.coeff(1),
            Err(SeriesError::BeyondOrder { exp: 1, order: 0 })
        );
    }

    #[test]
    fn leading_zeros_are_trimmed() {
        let a = QSeries::from_coeffs(0, vec![rat(0), rat(0), rat(5)]);
        assert_eq!(a.vmin(), 2);
        assert_eq!(a.order(), 2);
        assert_eq!(a.valuation(), Some(2));
    }

    #[test]
    fn add_takes_min_order() {
        let a = s(0, &[1, 1, 1, 1]); // order 3
        let b = s(1, &[2, 2]); // order 2
        let c = a.add(&b);
        assert_eq!(c.order(), 2);
        assert_eq!(c.coeff(0).unwrap(), rat(1));
        assert_eq!(c.coeff(1).unwrap(), rat(3));
        assert_eq!(c.coeff(2).unwrap(), rat(3));
        assert!(c.coeff(3).is_err());
    }

    #[test]
    fn cancellation_keeps_order() {
        let a = s(0, &[1, 2]);
        let d = a.sub(&a);
        assert!(d.is_zero());
        assert_eq!(d.order(), 1);
    }

    #[test]
    fn mul_window_rule() {
        // (1 + q + ... known to order 3) * (q^2 + ... known to order 5)
        let a = s(0, &[1, 1, 1, 1]);
        let b = s(2, &[1, 0, 0, 1]);
        let p = a.mul(&b);
        // order = min(3 + 2, 5 + 0) = 5
        assert_eq!(p.order(), 5);
        assert_eq!(p.vmin(), 2);
        assert_eq!(p.coeff(2).unwrap(), rat(1));
        assert_eq!(p.coeff(5).unwrap(), rat(2)); // q^3*q^2 + 1*q^5
    }

    #[test]
    fn mul_by_zero_is_exact_zero() {
        let a = s(0, &[1, 2, 3]);
        let z = QSeries::zero(5);
        let p = a.mul(&z);
        assert!(p.is_zero());
        // window: min(2 + 6, 5 + 0) = 5
        assert_eq!(p.order(), 5);
    }

    #[test]
    fn geometric_series_inverse() {
        // 1/(1 - q) through q^6
        let one = QSeries::one(6);
        let g = one.div_binomial(&rat(1), 1);
        for e in 0..=6 {
            assert_eq!(g.coeff(e).unwrap(), rat(1));
        }
        // multiply back
        let back = g.mul_binomial(&rat(1), 1);
        assert!(back.agrees_with(&QSeries::one(6)));
        assert_eq!(back.order(), 6);
    }

    #[test]
    fn binomial_negative_exponent_window() {
        let a = QSeries::one(10);
        let b = a.mul_binomial(&rat(2), -3); // (1 - 2q^-3) * 1
        assert_eq!(b.order(), 7);
        assert_eq!(b.vmin(), -3);
        assert_eq!(b.coeff(-3).unwrap(), rat(-2));
        assert_eq!(b.coeff(0).unwrap(), rat(1));
        // dividing the product back restores 1 with the window it can prove
        let c = b.div_binomial(&rat(2), -3);
        assert_eq!(c.order(), 10);
        assert!(c.agrees_with(&QSeries::one(10)));
    }

    #[test]
    fn invert_respects_valuation_window() {
        // f = q^2 * (1 + q), known through order 8
        let f = s(2, &[1, 1, 0, 0, 0, 0, 0]);
        assert_eq!(f.order(), 8);
        let g = f.invert().unwrap();
        assert_eq!(g.vmin(), -2);
        assert_eq!(g.order(), 8 - 4);
        // 1/(q^2 (1+q)) = q^-2 (1 - q + q^2 - ...)
        assert_eq!(g.coeff(-2).unwrap(), rat(1));
        assert_eq!(g.coeff(-1).unwrap(), rat(-1));
        assert_eq!(g.coeff(0).unwrap(), rat(1));
        let prod = f.mul(&g);
        assert!(prod.agrees_with(&QSeries::one(prod.order())));
    }

    #[test]
    fn invert_zero_fails() {
        assert_eq!(
            QSeries::zero(5).invert(),
            Err(SeriesError::NotInvertible { order: 5 })
        );
    }

    #[test]
    fn negate_q_parity() {
        let a = s(-1, &[1, 1, 1, 1]); // q^-1 + 1 + q + q^2
        let b = a.negate_q();
        assert_eq!(b.coeff(-1).unwrap(), rat(-1));
        assert_eq!(b.coeff(0).unwrap(), rat(1));
        assert_eq!(b.coeff(1).unwrap(), rat(-1));
        assert_eq!(b.coeff(2).unwrap(), rat(1));
    }

    #[test]
    fn rebase_stretches_known_zeros() {
        let a = s(0, &[1, 2]); // 1 + 2q + O(q^2)
        let b = a.rebase(3);
        assert_eq!(b.order(), 5);
        assert_eq!(b.coeff(0).unwrap(), rat(1));
        assert_eq!(b.coeff(1).unwrap(), rat(0));
        assert_eq!(b.coeff(3).unwrap(), rat(2));
        assert_eq!(b.coeff(5).unwrap(), rat(0));
    }

    #[test]
    fn first_difference_reports_smallest_exponent() {
        let a = s(0, &[1, 2, 3]);
        let b = s(0, &[1, 5, 3]);
        let (order, diff) = a.first_difference(&b);
        assert_eq!(order, 2);
        assert_eq!(diff, Some((1, rat(2), rat(5))));
        assert!(a.agrees_with(&a.clone()));
    }

    #[test]
    fn scale_by_fraction() {
        let a = s(0, &[2, 4]);
        let b = a.scale(&frac(1, 2));
        assert_eq!(b.coeff(0).unwrap(), rat(1));
        assert_eq!(b.coeff(1).unwrap(), rat(2));
    }

    #[test]
    fn display_is_readable() {
        let a = s(-1, &[-1, 0, 2]);
        assert_eq!(a.to_string(), "-q^-1 + 2*q + O(q^2)");
        assert_eq!(QSeries::zero(4).to_string(), "0 + O(q^5)");
    }
}
