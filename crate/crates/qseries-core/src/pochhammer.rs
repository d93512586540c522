//! q-shifted factorials and structured products of them.
//!
//! A [`PochSpec`] is one factor `(a; q^b)_len` where the argument is a
//! monomial in `q`, the base exponent `b` steps successive factors, and the
//! length is any integer or infinity. All three cases of the definition are
//! supported:
//!
//! - length `k > 0`: the product of `1 - a*q^(b*j)` for `j = 0..k-1`;
//! - length `0`: the empty product, 1;
//! - length `k < 0`: the reciprocal `1 / prod_{j=1..-k} (1 - a*q^(-b*j))`.
//!
//! A [`ProductSpec`] is a monomial prefactor times a quotient of such
//! factors. Evaluation collects every linear factor `1 - c*q^t` with its net
//! power, normalizes negative exponents through
//! `1 - c*q^t = (-c*q^t) * (1 - c^{-1} * q^{-t})`, and then decides zero,
//! pole, or series. A vanishing factor with net positive power makes the
//! whole product exactly zero; with net negative power the product is
//! undefined and evaluation fails instead of guessing.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::coeff::{neg_one_pow, rat_pow, Rat};
use crate::error::EvalError;
use crate::monomial::Monomial;
use crate::series::QSeries;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PochLen {
    Finite(i64),
    Infinite,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PochSpec {
    pub arg: Monomial,
    pub base_exp: i64,
    pub len: PochLen,
}

impl PochSpec {
    pub fn new(arg: Monomial, base_exp: i64, len: PochLen) -> Self {
        PochSpec { arg, base_exp, len }
    }

    pub fn infinite(arg: Monomial, base_exp: i64) -> Self {
        PochSpec::new(arg, base_exp, PochLen::Infinite)
    }

    pub fn finite(arg: Monomial, base_exp: i64, len: i64) -> Self {
        PochSpec::new(arg, base_exp, PochLen::Finite(len))
    }

    /// Substitutes `q -> q^b`: argument exponent and step both scale.
    pub fn rebase(&self, b: i64) -> Self {
        PochSpec::new(self.arg.rebase(b), self.base_exp * b, self.len)
    }

    /// Evaluates this single factor through `q^order`.
    pub fn eval(&self, order: i64) -> Result<QSeries, EvalError> {
        ProductSpec::one().times_poch(self.clone()).eval(order)
    }
}

impl fmt::Display for PochSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let base = if self.base_exp == 1 {
            "q".to_string()
        } else {
            format!("q^{}", self.base_exp)
        };
        match self.len {
            PochLen::Infinite => write!(f, "({}; {})_inf", self.arg, base),
            PochLen::Finite(k) => write!(f, "({}; {})_{}", self.arg, base, k),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductSpec {
    pub prefactor: Monomial,
    pub numer: Vec<PochSpec>,
    pub denom: Vec<PochSpec>,
}

impl ProductSpec {
    pub fn one() -> Self {
        ProductSpec { prefactor: Monomial::one(), numer: Vec::new(), denom: Vec::new() }
    }

    pub fn from_monomial(m: Monomial) -> Self {
        ProductSpec { prefactor: m, numer: Vec::new(), denom: Vec::new() }
    }

    pub fn scaled(mut self, m: Monomial) -> Self {
        self.prefactor = self.prefactor.mul(&m);
        self
    }

    pub fn times_poch(mut self, p: PochSpec) -> Self {
        self.numer.push(p);
        self
    }

    pub fn over_poch(mut self, p: PochSpec) -> Self {
        self.denom.push(p);
        self
    }

    /// Substitutes `q -> q^b` in every component.
    pub fn rebase(&self, b: i64) -> Self {
        ProductSpec {
            prefactor: self.prefactor.rebase(b),
            numer: self.numer.iter().map(|p| p.rebase(b)).collect(),
            denom: self.denom.iter().map(|p| p.rebase(b)).collect(),
        }
    }

    pub fn eval(&self, order: i64) -> Result<QSeries, EvalError> {
        // First pass with the tail cut at zero reaches every factor that can
        // shift the valuation or vanish, so zero/pole status and the exact
        // valuation come out of it.
        let probe = self.accumulate(0)?;
        if probe.zero_power < 0 {
            return Err(EvalError::ZeroDenominatorFactor {
                context: probe.pole_context.unwrap_or_else(|| self.to_string()),
            });
        }
        if probe.zero_power > 0 {
            return Ok(QSeries::zero(order));
        }
        let valuation = probe.prefactor.exp;
        if valuation > order {
            return Ok(QSeries::zero(order));
        }
        let acc = self.accumulate(order - valuation)?;
        Ok(acc.into_series(order))
    }

    fn accumulate(&self, cut: i64) -> Result<FactorAccumulator, EvalError> {
        let mut acc = FactorAccumulator::new();
        if self.prefactor.is_zero() {
            acc.zero_power += 1;
        } else {
            acc.push_monomial(&self.prefactor);
        }
        for p in &self.numer {
            acc.push_poch(p, 1, cut)?;
        }
        for p in &self.denom {
            acc.push_poch(p, -1, cut)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for ProductSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if !self.prefactor.is_one() || self.numer.is_empty() {
            parts.push(self.prefactor.to_string());
        }
        parts.extend(self.numer.iter().map(|p| p.to_string()));
        let head = parts.join(" * ");
        if self.denom.is_empty() {
            write!(f, "{head}")
        } else {
            let tail: Vec<String> = self.denom.iter().map(|p| p.to_string()).collect();
            write!(f, "{head} / ({})", tail.join(" * "))
        }
    }
}

/// Collects linear factors `1 - c*q^t` with net integer powers. After
/// normalization every stored factor has `t >= 1`, so assembling the series
/// costs one linear pass per factor and the final window never shrinks.
pub(crate) struct FactorAccumulator {
    pub(crate) prefactor: Monomial,
    factors: BTreeMap<(i64, Rat), i64>,
    pub(crate) zero_power: i64,
    pub(crate) pole_context: Option<String>,
}

impl FactorAccumulator {
    pub(crate) fn new() -> Self {
        FactorAccumulator {
            prefactor: Monomial::one(),
            factors: BTreeMap::new(),
            zero_power: 0,
            pole_context: None,
        }
    }

    pub(crate) fn push_monomial(&mut self, m: &Monomial) {
        debug_assert!(!m.is_zero());
        self.prefactor = self.prefactor.mul(m);
    }

    pub(crate) fn push_binomial(&mut self, c: Rat, t: i64, power: i64, context: &dyn Fn() -> String) {
        if power == 0 || c.is_zero() {
            return;
        }
        if t == 0 {
            if c.is_one() {
                self.zero_power += power;
                if power < 0 && self.pole_context.is_none() {
                    self.pole_context = Some(context());
                }
            } else {
                let v = Rat::one() - c;
                self.prefactor = self.prefactor.mul(&Monomial::constant(rat_pow(&v, power)));
            }
            return;
        }
        if t < 0 {
            let peeled = Monomial::new(-c.clone(), t).pow(power);
            self.prefactor = self.prefactor.mul(&peeled);
            return self.push_binomial(c.recip(), -t, power, context);
        }
        // entries whose powers cancel to zero stay in the map; assembly skips
        // them since their repeat count is zero
        *self.factors.entry((t, c)).or_insert(0) += power;
    }

    /// Adds one Pochhammer factor with the given outer sign (`+1` numerator,
    /// `-1` denominator). `cut` bounds the factor exponents that can still
    /// touch the requested window; only the tails of infinite products are
    /// trimmed by it, finite lists are always complete.
    pub(crate) fn push_poch(&mut self, p: &PochSpec, sign: i64, cut: i64) -> Result<(), EvalError> {
        if p.arg.is_zero() {
            return Ok(());
        }
        let c = &p.arg.coeff;
        let e0 = p.arg.exp;
        let b = p.base_exp;
        let ctx = || p.to_string();
        match p.len {
            PochLen::Finite(k) if k >= 0 => {
                for j in 0..k {
                    self.push_binomial(c.clone(), e0 + b * j, sign, &ctx);
                }
            }
            PochLen::Finite(k) => {
                for j in 1..=(-k) {
                    self.push_binomial(c.clone(), e0 - b * j, -sign, &ctx);
                }
            }
            PochLen::Infinite => {
                if b < 1 {
                    return Err(EvalError::DivergentProduct { product: p.to_string() });
                }
                let mut t = e0;
                while t <= cut.max(0) {
                    self.push_binomial(c.clone(), t, sign, &ctx);
                    t += b;
                }
            }
        }
        Ok(())
    }

    /// Multiplies everything out through `q^order`. Callers must have ruled
    /// out zero and pole cases first.
    pub(crate) fn into_series(self, order: i64) -> QSeries {
        debug_assert_eq!(self.zero_power, 0);
        debug_assert!(self.prefactor.exp <= order);
        let mut s = QSeries::from_monomial(&self.prefactor, order);
        for ((t, c), power) in &self.factors {
            for _ in 0..power.unsigned_abs() {
                s = if *power > 0 {
                    s.mul_binomial(c, *t)
                } else {
                    s.div_binomial(c, *t)
                };
            }
        }
        debug_assert_eq!(s.order(), order);
        s
    }
}

/// Theta-series side of the triple product: the bilateral sum of
/// `(-z)^k * q^(b*k*(k-1)/2)` over all integers `k`, through `q^order`.
pub fn jtp_theta(z: &Monomial, b: i64, order: i64) -> QSeries {
    assert!(b >= 1, "theta base exponent must be positive");
    assert!(!z.is_zero(), "theta argument must be nonzero");
    let mut terms: BTreeMap<i64, Rat> = BTreeMap::new();
    let mut walk = |dir: i64| {
        let mut k = if dir > 0 { 0 } else { -1 };
        let mut prev_exp: Option<i64> = None;
        loop {
            let e = b * k * (k - 1) / 2 + z.exp * k;
            if e > order {
                // quadratic in k: once past the vertex the exponents only grow
                if prev_exp.map_or(false, |p| e > p) {
                    break;
                }
            } else {
                let c = neg_one_pow(k) * rat_pow(&z.coeff, k);
                *terms.entry(e).or_insert_with(Rat::zero) += c;
            }
            prev_exp = Some(e);
            k += dir;
        }
    };
    walk(1);
    walk(-1);
    terms.retain(|_, c| !c.is_zero());
    let vmin = terms.keys().next().copied().unwrap_or(order + 1);
    let mut coeffs = vec![Rat::zero(); (order - vmin + 1).max(0) as usize];
    for (e, c) in terms {
        coeffs[(e - vmin) as usize] = c;
    }
    QSeries::from_coeffs(vmin, coeffs)
}

/// Product side of the triple product: `(q^b, z, q^b/z; q^b)_inf`.
pub fn jtp_product(z: &Monomial, b: i64, order: i64) -> Result<QSeries, EvalError> {
    assert!(b >= 1, "product base exponent must be positive");
    assert!(!z.is_zero(), "product argument must be nonzero");
    ProductSpec::one()
        .times_poch(PochSpec::infinite(Monomial::q_pow(b), b))
        .times_poch(PochSpec::infinite(z.clone(), b))
        .times_poch(PochSpec::infinite(Monomial::q_pow(b).mul(&z.inv()), b))
        .eval(order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{frac, rat};

    fn q() -> Monomial {
        Monomial::q()
    }

    fn qp(e: i64) -> Monomial {
        Monomial::q_pow(e)
    }

    #[test]
    fn empty_product_is_one() {
        let s = PochSpec::finite(q(), 1, 0).eval(5).unwrap();
        assert!(s.agrees_with(&QSeries::one(5)));
        assert_eq!(s.order(), 5);
    }

    #[test]
    fn finite_positive_length() {
        // (q; q)_3 = (1-q)(1-q^2)(1-q^3) = 1 - q - q^2 + q^4 + q^5 - q^6
        let s = PochSpec::finite(q(), 1, 3).eval(8).unwrap();
        let expected: Vec<i64> = vec![1, -1, -1, 0, 1, 1, -1, 0, 0];
        for (e, want) in expected.iter().enumerate() {
            assert_eq!(s.coeff(e as i64).unwrap(), rat(*want), "exponent {e}");
        }
    }

    #[test]
    fn negative_length_is_reciprocal() {
        // (a; q)_{-2} * (a*q^{-2}; q)_2 = 1 with a = 2q^3
        let a = Monomial::new(rat(2), 3);
        let order = 12;
        let neg = PochSpec::finite(a.clone(), 1, -2).eval(order).unwrap();
        let pos = PochSpec::finite(Monomial::new(rat(2), 1), 1, 2).eval(order).unwrap();
        let prod = neg.mul(&pos);
        assert!(prod.agrees_with(&QSeries::one(prod.order())));
    }

    #[test]
    fn negative_exponent_factors_extend_below_zero() {
        // (q^{-2}; q)_2 = (1 - q^{-2})(1 - q^{-1}) = 1 - q^{-1} - q^{-2} + q^{-3}
        let s = PochSpec::finite(qp(-2), 1, 2).eval(4).unwrap();
        assert_eq!(s.vmin(), -3);
        assert_eq!(s.order(), 4);
        assert_eq!(s.coeff(-3).unwrap(), rat(1));
        assert_eq!(s.coeff(-2).unwrap(), rat(-1));
        assert_eq!(s.coeff(-1).unwrap(), rat(-1));
        assert_eq!(s.coeff(0).unwrap(), rat(1));
        assert_eq!(s.coeff(1).unwrap(), rat(0));
    }

    #[test]
    fn euler_function_pentagonal_numbers() {
        // (q; q)_inf: exponents are the generalized pentagonal numbers with
        // signs following the pentagonal number theorem.
        let s = PochSpec::infinite(q(), 1).eval(30).unwrap();
        let mut expected = vec![0i64; 31];
        expected[0] = 1;
        for (e, v) in [(1, -1), (2, -1), (5, 1), (7, 1), (12, -1), (15, -1), (22, 1), (26, 1)] {
            expected[e as usize] = v;
        }
        for e in 0..=30 {
            assert_eq!(s.coeff(e).unwrap(), rat(expected[e as usize]), "exponent {e}");
        }
    }

    #[test]
    fn vanishing_numerator_factor_gives_exact_zero() {
        // (q^{-3}; q)_inf contains the factor 1 - q^0 at j = 3.
        let s = PochSpec::infinite(qp(-3), 1).eval(10).unwrap();
        assert!(s.is_zero());
        assert_eq!(s.order(), 10);
    }

    #[test]
    fn vanishing_denominator_factor_is_an_error() {
        let spec = ProductSpec::one().over_poch(PochSpec::infinite(qp(-3), 1));
        match spec.eval(10) {
            Err(EvalError::ZeroDenominatorFactor { context }) => {
                assert!(context.contains("q^-3"), "context was {context:?}");
            }
            other => panic!("expected zero denominator error, got {other:?}"),
        }
        // the pole is structural, a narrow window does not excuse it
        assert!(spec.eval(0).is_err());
    }

    #[test]
    fn zero_factors_cancel_between_numerator_and_denominator() {
        // (q^{-1}; q)_inf / (q^{-1}; q)_inf: the j = 1 zero factors cancel
        // exactly, everything else cancels too, so the quotient is 1.
        let p = PochSpec::infinite(qp(-1), 1);
        let spec = ProductSpec::one().times_poch(p.clone()).over_poch(p);
        let s = spec.eval(6).unwrap();
        assert!(s.agrees_with(&QSeries::one(6)));
    }

    #[test]
    fn infinite_product_with_non_positive_base_diverges() {
        let spec = PochSpec::new(Monomial::int(2), 0, PochLen::Infinite);
        match spec.eval(5) {
            Err(EvalError::DivergentProduct { .. }) => {}
            other => panic!("expected divergence, got {other:?}"),
        }
    }

    #[test]
    fn prefactor_and_constant_arguments() {
        // 3*q^2 / (2; q)_1 = 3*q^2 / (1 - 2) = -3*q^2
        let spec = ProductSpec::from_monomial(Monomial::new(rat(3), 2))
            .over_poch(PochSpec::finite(Monomial::int(2), 1, 1));
        let s = spec.eval(5).unwrap();
        assert_eq!(s.coeff(2).unwrap(), rat(-3));
        assert_eq!(s.valuation(), Some(2));
    }

    #[test]
    fn valuation_beyond_window_truncates_to_zero() {
        let spec = ProductSpec::from_monomial(qp(50));
        let s = spec.eval(10).unwrap();
        assert!(s.is_zero());
        assert_eq!(s.order(), 10);
    }

    #[test]
    fn rational_coefficients_survive_round_trip() {
        // (1/2; q)_2 = (1 - 1/2)(1 - q/2) = 1/2 - q/4
        let s = PochSpec::finite(Monomial::constant(frac(1, 2)), 1, 2).eval(4).unwrap();
        assert_eq!(s.coeff(0).unwrap(), frac(1, 2));
        assert_eq!(s.coeff(1).unwrap(), frac(-1, 4));
    }

    #[test]
    fn rebase_matches_series_rebase() {
        let spec = ProductSpec::one().over_poch(PochSpec::infinite(q(), 1));
        let direct = spec.rebase(3).eval(20).unwrap();
        let stretched = spec.eval(6).unwrap().rebase(3);
        assert!(direct.agrees_with(&stretched));
    }

    #[test]
    fn theta_vanishes_when_product_has_zero_factor() {
        // z = q makes q^b/z contain the factor 1 - q^0
        let s = jtp_theta(&q(), 1, 15);
        assert!(s.is_zero());
        let p = jtp_product(&q(), 1, 15).unwrap();
        assert!(p.is_zero());
    }

    #[test]
    fn triple_product_smoke() {
        // z = -q, b = 1: both sides equal (q;q)_inf (-q;q)_inf (-1;q)_inf
        let z = Monomial::new(rat(-1), 1);
        let theta = jtp_theta(&z, 1, 40);
        let product = jtp_product(&z, 1, 40).unwrap();
        assert_eq!(theta.order(), 40);
        assert_eq!(product.order(), 40);
        let (_, diff) = theta.first_difference(&product);
        assert_eq!(diff, None);
    }

    #[test]
    fn triple_product_with_rational_z() {
        let z = Monomial::constant(frac(3, 2));
        let theta = jtp_theta(&z, 2, 30);
        let product = jtp_product(&z, 2, 30).unwrap();
        assert!(theta.agrees_with(&product));
        // negative exponents appear through q^b/z in neither side here, but
        // the theta side must still carry exact rational coefficients
        assert_eq!(theta.coeff(0).unwrap(), product.coeff(0).unwrap());
    }

    #[test]
    fn display_forms() {
        let p = PochSpec::infinite(qp(2), 5);
        assert_eq!(p.to_string(), "(q^2; q^5)_inf");
        let spec = ProductSpec::one().over_poch(p);
        assert_eq!(spec.to_string(), "1 / ((q^2; q^5)_inf)");
    }
}
