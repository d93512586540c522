//! Formal evaluation of unilateral, bilateral, and lattice sums.
//!
//! A [`SumSpec`] describes a sum of structured terms: each term is a monomial
//! prefactor times `q^(Q(k))` times per-index geometric bases times a quotient
//! of Pochhammer factors whose argument exponents and lengths are affine in
//! the indices. For more than one index the domain is always the ordered cone
//! `k_1 >= k_2 >= ... >= k_d` (over the integers, the nonnegative integers,
//! or a finite range `n >= k_1`, `k_d >= 0`).
//!
//! Convergence here is formal, not numeric: a sum is accepted only when the
//! engine can certify that every omitted term has valuation beyond the
//! requested order. One-dimensional sums walk outward until a configurable
//! number of consecutive terms settle beyond the window, then probe twice as
//! far to confirm valuations keep growing; lattice sums grow a bounding box
//! until a full doubling contributes nothing. Anything else is rejected as
//! [`EvalError::FormalDivergence`], never silently truncated.
//!
//! Two term-level subtleties carry the bilateral conventions:
//!
//! - a vanishing factor with net positive power makes a term exactly zero
//!   (so `1/(q;q)_k` kills every term with `k < 0`, which is what lets a
//!   bilateral sum collapse to a unilateral one);
//! - a vanishing factor with net negative power is a pole and evaluation
//!   fails with [`EvalError::PoleAtTerm`]. Poles are never cancelled against
//!   vanishing factors of a different shape, only against literally identical
//!   factors, which is ordinary rational-function cancellation.

use serde::{Deserialize, Serialize};

use crate::coeff::{rat_to_string, Rat};
use crate::error::EvalError;
use crate::forms::{AffineForm, QuadraticForm};
use crate::monomial::Monomial;
use crate::pochhammer::{PochLen, PochSpec, ProductSpec};
use crate::series::QSeries;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum IndexDomain {
    /// `k_1 >= ... >= k_d >= 0`.
    NonNegative,
    /// `k_1 >= ... >= k_d`, unbounded in both directions.
    AllIntegers,
    /// `n >= k_1 >= ... >= k_d >= 0`; empty when `n < 0`.
    Range0To(i64),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum FactorLen {
    Affine(AffineForm),
    Infinite,
}

/// One Pochhammer factor `(c * q^E(k); q^b)_L(k)` inside a summand.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SumFactor {
    #[serde(with = "crate::coeff::rat_serde")]
    pub arg_coeff: Rat,
    pub arg_exp: AffineForm,
    pub base_exp: i64,
    pub len: FactorLen,
}

impl SumFactor {
    pub fn infinite(arg_coeff: Rat, arg_exp: AffineForm, base_exp: i64) -> Self {
        SumFactor { arg_coeff, arg_exp, base_exp, len: FactorLen::Infinite }
    }

    pub fn finite(arg_coeff: Rat, arg_exp: AffineForm, base_exp: i64, len: AffineForm) -> Self {
        SumFactor { arg_coeff, arg_exp, base_exp, len: FactorLen::Affine(len) }
    }

    fn instantiate(&self, point: &[i64]) -> PochSpec {
        let arg = Monomial::new(self.arg_coeff.clone(), self.arg_exp.eval(point));
        let len = match &self.len {
            FactorLen::Infinite => PochLen::Infinite,
            FactorLen::Affine(l) => PochLen::Finite(l.eval(point)),
        };
        PochSpec::new(arg, self.base_exp, len)
    }

    /// Valuation shift and vanishing-factor count this factor contributes to
    /// the term at `point`, with outer sign `sign` (+1 numerator, -1
    /// denominator). Pure integer arithmetic; must agree exactly with what
    /// the factor accumulator would compute, which a property test enforces.
    fn status_at(&self, point: &[i64], sign: i64) -> (i64, i64) {
        use num_traits::{One, Zero};
        if self.arg_coeff.is_zero() {
            return (0, 0);
        }
        let coeff_one = self.arg_coeff.is_one();
        let e0 = self.arg_exp.eval(point);
        let b = self.base_exp;
        let mut dv = 0i64;
        let mut dz = 0i64;
        match &self.len {
            FactorLen::Infinite => {
                // validated: b >= 1, so only finitely many low factors
                if e0 <= -1 {
                    let jn = (-e0 - 1).div_euclid(b);
                    let cnt = jn + 1;
                    dv = sign * (cnt * e0 + b * jn * (jn + 1) / 2);
                }
                if coeff_one && e0 <= 0 && (-e0) % b == 0 {
                    dz = sign;
                }
            }
            FactorLen::Affine(lf) => {
                let l = lf.eval(point);
                let (count, start, step, s) = if l >= 0 {
                    (l, e0, b, sign)
                } else {
                    (-l, e0 - b, -b, -sign)
                };
                let mut t = start;
                for _ in 0..count {
                    if t < 0 {
                        dv += s * t;
                    } else if t == 0 && coeff_one {
                        dz += s;
                    }
                    t += step;
                }
            }
        }
        (dv, dz)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SumSpec {
    pub dim: usize,
    pub domain: IndexDomain,
    pub prefactor: Monomial,
    pub numer: Vec<SumFactor>,
    pub denom: Vec<SumFactor>,
    pub q_exponent: QuadraticForm,
    pub index_bases: Vec<Monomial>,
}

impl SumSpec {
    pub fn new(dim: usize, domain: IndexDomain) -> Self {
        SumSpec {
            dim,
            domain,
            prefactor: Monomial::one(),
            numer: Vec::new(),
            denom: Vec::new(),
            q_exponent: QuadraticForm::zero(dim),
            index_bases: vec![Monomial::one(); dim],
        }
    }

    pub fn prefactor(mut self, m: Monomial) -> Self {
        self.prefactor = m;
        self
    }

    pub fn q_exp(mut self, f: QuadraticForm) -> Self {
        assert_eq!(f.dim(), self.dim, "q-exponent dimension mismatch");
        self.q_exponent = f;
        self
    }

    pub fn base(mut self, i: usize, m: Monomial) -> Self {
        self.index_bases[i] = m;
        self
    }

    pub fn times(mut self, f: SumFactor) -> Self {
        self.numer.push(f);
        self
    }

    pub fn over(mut self, f: SumFactor) -> Self {
        self.denom.push(f);
        self
    }

    /// Substitutes `q -> q^b` everywhere.
    pub fn rebase(&self, b: i64) -> Self {
        let map = |f: &SumFactor| SumFactor {
            arg_coeff: f.arg_coeff.clone(),
            arg_exp: f.arg_exp.scale(b),
            base_exp: f.base_exp * b,
            len: f.len.clone(),
        };
        SumSpec {
            dim: self.dim,
            domain: self.domain,
            prefactor: self.prefactor.rebase(b),
            numer: self.numer.iter().map(map).collect(),
            denom: self.denom.iter().map(map).collect(),
            q_exponent: self.q_exponent.rebase(b),
            index_bases: self.index_bases.iter().map(|m| m.rebase(b)).collect(),
        }
    }

    /// One-variable reindexing `k = s*j + t` (`s != 0`). The caller chooses
    /// the new domain so that `j` ranging over it hits exactly the intended
    /// original indices.
    pub fn reindex1(&self, s: i64, t: i64, new_domain: IndexDomain) -> Self {
        assert_eq!(self.dim, 1, "reindex1 applies to one-index sums");
        assert!(s != 0, "reindex stride must be nonzero");
        let base = &self.index_bases[0];
        let map = |f: &SumFactor| SumFactor {
            arg_coeff: f.arg_coeff.clone(),
            arg_exp: f.arg_exp.subst1(s, t),
            base_exp: f.base_exp,
            len: match &f.len {
                FactorLen::Infinite => FactorLen::Infinite,
                FactorLen::Affine(l) => FactorLen::Affine(l.subst1(s, t)),
            },
        };
        SumSpec {
            dim: 1,
            domain: new_domain,
            prefactor: self.prefactor.mul(&base.pow(t)),
            numer: self.numer.iter().map(map).collect(),
            denom: self.denom.iter().map(map).collect(),
            q_exponent: self.q_exponent.subst1(s, t),
            index_bases: vec![base.pow(s)],
        }
    }

    fn validate(&self) -> Result<(), EvalError> {
        assert_eq!(self.index_bases.len(), self.dim, "one geometric base per index");
        assert_eq!(self.q_exponent.dim(), self.dim, "q-exponent dimension mismatch");
        for f in self.numer.iter().chain(&self.denom) {
            if matches!(f.len, FactorLen::Infinite) && f.base_exp < 1 {
                return Err(EvalError::DivergentProduct {
                    product: format!(
                        "({}*q^({}); q^{})_inf",
                        rat_to_string(&f.arg_coeff),
                        f.arg_exp,
                        f.base_exp
                    ),
                });
            }
        }
        Ok(())
    }

    /// Cheap integer-only term classification: pole, exact zero, or the
    /// valuation the term's series would have.
    pub fn term_status(&self, point: &[i64]) -> Result<TermStatus, EvalError> {
        let qv = self.q_exponent.eval(point).map_err(|v| EvalError::NonIntegralExponent {
            point: point.to_vec(),
            value: rat_to_string(&v),
        })?;
        let mut valuation = self.prefactor.exp + qv;
        let mut zero_power = 0i64;
        for (i, base) in self.index_bases.iter().enumerate() {
            let k = point[i];
            if base.is_zero() {
                match k.cmp(&0) {
                    std::cmp::Ordering::Equal => {}
                    std::cmp::Ordering::Greater => zero_power += 1,
                    std::cmp::Ordering::Less => {
                        return Err(EvalError::PoleAtTerm { point: point.to_vec() })
                    }
                }
            } else {
                valuation += base.exp * k;
            }
        }
        for (f, sign) in self
            .numer
            .iter()
            .map(|f| (f, 1i64))
            .chain(self.denom.iter().map(|f| (f, -1i64)))
        {
            let (dv, dz) = f.status_at(point, sign);
            valuation += dv;
            zero_power += dz;
        }
        if zero_power < 0 {
            return Err(EvalError::PoleAtTerm { point: point.to_vec() });
        }
        Ok(TermStatus { valuation, zero_power })
    }

    /// The term at `point` as an explicit product specification.
    pub fn term_product(&self, point: &[i64]) -> Result<ProductSpec, EvalError> {
        let qv = self.q_exponent.eval(point).map_err(|v| EvalError::NonIntegralExponent {
            point: point.to_vec(),
            value: rat_to_string(&v),
        })?;
        let mut pre = self.prefactor.mul(&Monomial::q_pow(qv));
        for (i, base) in self.index_bases.iter().enumerate() {
            let k = point[i];
            if base.is_zero() {
                match k.cmp(&0) {
                    std::cmp::Ordering::Equal => {}
                    std::cmp::Ordering::Greater => pre = Monomial::zero(),
                    std::cmp::Ordering::Less => {
                        return Err(EvalError::PoleAtTerm { point: point.to_vec() })
                    }
                }
            } else {
                pre = pre.mul(&base.pow(k));
            }
        }
        Ok(ProductSpec {
            prefactor: pre,
            numer: self.numer.iter().map(|f| f.instantiate(point)).collect(),
            denom: self.denom.iter().map(|f| f.instantiate(point)).collect(),
        })
    }

    /// Full series of the term at `point`, through `q^order`.
    pub fn term_series(&self, point: &[i64], order: i64) -> Result<QSeries, EvalError> {
        self.term_product(point)?.eval(order).map_err(|e| match e {
            EvalError::ZeroDenominatorFactor { .. } => {
                EvalError::PoleAtTerm { point: point.to_vec() }
            }
            other => other,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TermStatus {
    pub valuation: i64,
    pub zero_power: i64,
}

impl TermStatus {
    /// `None` when the term is exactly zero (treated as valuation infinity).
    pub fn series_valuation(&self) -> Option<i64> {
        if self.zero_power > 0 {
            None
        } else {
            Some(self.valuation)
        }
    }
}

/// Knobs for the convergence prober.
#[derive(Clone, Copy, Debug)]
pub struct EngineConfig {
    /// Consecutive settled terms required before a direction is closed.
    pub margin: u32,
    /// Index cap as a multiple of `order`.
    pub hard_cap_factor: f64,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig { margin: 5, hard_cap_factor: 10.0 }
    }
}

impl EngineConfig {
    // Valuations may grow as slowly as linearly in the index (slope-one rays
    // are common among bilateral series), so the guard must scale linearly
    // with the window. Convergent walks stop via the settled streak long
    // before reaching it; only divergent input ever pays the full cap.
    fn cap(&self, order: i64) -> i64 {
        let base = (order.max(1) as f64) * self.hard_cap_factor;
        (base.ceil() as i64).max(self.margin as i64 + 2)
    }
}

#[derive(Clone, Debug)]
pub struct SumEval {
    pub series: QSeries,
    pub certificate: ConvergenceCertificate,
}

/// Evidence that the computed window is complete: how far the engine probed
/// and how far beyond the window the omitted terms sit.
#[derive(Clone, Debug, Serialize)]
pub struct ConvergenceCertificate {
    pub contributing_terms: usize,
    pub probe: ProbeSummary,
}

#[derive(Clone, Debug, Serialize)]
pub enum ProbeSummary {
    /// Finite domain, every point enumerated.
    Complete { points: usize },
    /// One-dimensional walk(s): indices probed and the smallest valuation
    /// excess seen among settled terms (`None` when all were exact zeros).
    Ray { lo: i64, hi: i64, min_excess: Option<i64>, monotone: bool },
    /// Lattice box doubling: the final radius whose whole outer shell was
    /// silent, and the smallest excess in that shell.
    Shells { final_radius: i64, min_excess: Option<i64> },
}

pub fn eval_sum(spec: &SumSpec, order: i64, cfg: &EngineConfig) -> Result<SumEval, EvalError> {
    spec.validate()?;
    if spec.prefactor.is_zero() {
        return Ok(SumEval {
            series: QSeries::zero(order),
            certificate: ConvergenceCertificate {
                contributing_terms: 0,
                probe: ProbeSummary::Complete { points: 0 },
            },
        });
    }
    match spec.domain {
        IndexDomain::Range0To(n) => eval_finite(spec, n, order),
        IndexDomain::NonNegative | IndexDomain::AllIntegers if spec.dim == 1 => {
            eval_line(spec, order, cfg)
        }
        IndexDomain::NonNegative | IndexDomain::AllIntegers => eval_lattice(spec, order, cfg),
    }
}

fn eval_finite(spec: &SumSpec, n: i64, order: i64) -> Result<SumEval, EvalError> {
    let mut acc = QSeries::zero(order);
    let mut points = 0usize;
    let mut contributing = 0usize;
    for_each_cone_point(spec.dim, 0, n, None, &mut |point| {
        points += 1;
        let st = spec.term_status(point)?;
        if st.series_valuation().is_some_and(|v| v <= order) {
            acc = acc.add(&spec.term_series(point, order)?);
            contributing += 1;
        }
        Ok(())
    })?;
    Ok(SumEval {
        series: acc,
        certificate: ConvergenceCertificate {
            contributing_terms: contributing,
            probe: ProbeSummary::Complete { points },
        },
    })
}

struct RayLeg {
    extreme: i64,
    contributing: usize,
    min_excess: Option<i64>,
}

fn eval_line(spec: &SumSpec, order: i64, cfg: &EngineConfig) -> Result<SumEval, EvalError> {
    let mut acc = QSeries::zero(order);
    let up = walk_line(spec, order, cfg, 1, &mut acc)?;
    let down = if spec.domain == IndexDomain::AllIntegers {
        Some(walk_line(spec, order, cfg, -1, &mut acc)?)
    } else {
        None
    };
    let (lo, contributing_down, excess_down) = match down {
        Some(leg) => (leg.extreme, leg.contributing, leg.min_excess),
        None => (0, 0, None),
    };
    let min_excess = match (up.min_excess, excess_down) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, b) => a.or(b),
    };
    Ok(SumEval {
        series: acc,
        certificate: ConvergenceCertificate {
            contributing_terms: up.contributing + contributing_down,
            probe: ProbeSummary::Ray { lo, hi: up.extreme, min_excess, monotone: true },
        },
    })
}

fn walk_line(
    spec: &SumSpec,
    order: i64,
    cfg: &EngineConfig,
    dir: i64,
    acc: &mut QSeries,
) -> Result<RayLeg, EvalError> {
    let cap = cfg.cap(order);
    let m = cfg.margin as i64;
    let mut k: i64 = if dir > 0 { 0 } else { -1 };
    let mut streak = 0i64;
    let mut contributing = 0usize;
    let mut min_excess: Option<i64> = None;
    let mut streak_anchor: Option<i64> = None;
    let stop_k;
    loop {
        if k.abs() > cap {
            return Err(EvalError::FormalDivergence {
                reason: format!(
                    "no run of {m} settled terms within index cap {cap} (direction {dir:+})"
                ),
            });
        }
        let st = spec.term_status(&[k])?;
        match st.series_valuation() {
            Some(v) if v <= order => {
                *acc = acc.add(&spec.term_series(&[k], order)?);
                contributing += 1;
                streak = 0;
                streak_anchor = None;
            }
            sv => {
                streak += 1;
                if let Some(v) = sv {
                    min_excess = Some(min_excess.map_or(v - order, |e| e.min(v - order)));
                    streak_anchor = Some(v);
                }
                if streak >= m {
                    stop_k = k;
                    break;
                }
            }
        }
        k += dir;
    }
    // Confirm the tail: probe to twice the stopping index. Valuations must
    // stay beyond the window and must not decrease, otherwise the "settled"
    // run may have been a plateau in front of more contributing terms.
    let ray_limit = (stop_k.abs() * 2).max(stop_k.abs() + m);
    let mut prev = streak_anchor;
    let mut kk = stop_k + dir;
    while kk.abs() <= ray_limit {
        let st = spec.term_status(&[kk])?;
        if let Some(v) = st.series_valuation() {
            if v <= order {
                return Err(EvalError::FormalDivergence {
                    reason: format!(
                        "term at index {kk} re-enters the window after {m} settled terms"
                    ),
                });
            }
            if let Some(p) = prev {
                if v < p {
                    return Err(EvalError::FormalDivergence {
                        reason: format!(
                            "valuations decrease along the tail at index {kk} ({v} after {p})"
                        ),
                    });
                }
            }
            prev = Some(v);
            min_excess = Some(min_excess.map_or(v - order, |e| e.min(v - order)));
        }
        kk += dir;
    }
    Ok(RayLeg { extreme: kk - dir, contributing, min_excess })
}

fn eval_lattice(spec: &SumSpec, order: i64, cfg: &EngineConfig) -> Result<SumEval, EvalError> {
    if !spec.q_exponent.quadratic_part_positive_definite() {
        return Err(EvalError::FormalDivergence {
            reason: "quadratic part of the q-exponent is not positive definite".into(),
        });
    }
    let lo_of = |radius: i64| match spec.domain {
        IndexDomain::NonNegative => 0,
        _ => -radius,
    };
    let cap = cfg.cap(order);
    let mut acc = QSeries::zero(order);
    let mut contributing = 0usize;
    let mut radius = (isqrt(order) + 1).max(4).min(cap);
    // first box in full
    let scan = |lo: i64, hi: i64, inner: Option<(i64, i64)>,
                    acc: &mut QSeries, contributing: &mut usize|
     -> Result<(bool, Option<i64>), EvalError> {
        let mut any = false;
        let mut min_excess: Option<i64> = None;
        for_each_cone_point(spec.dim, lo, hi, inner, &mut |point| {
            let st = spec.term_status(point)?;
            match st.series_valuation() {
                Some(v) if v <= order => {
                    *acc = acc.add(&spec.term_series(point, order)?);
                    *contributing += 1;
                    any = true;
                }
                Some(v) => {
                    min_excess = Some(min_excess.map_or(v - order, |e| e.min(v - order)));
                }
                None => {}
            }
            Ok(())
        })?;
        Ok((any, min_excess))
    };
    scan(lo_of(radius), radius, None, &mut acc, &mut contributing)?;
    loop {
        let next = radius * 2;
        if next > cap {
            return Err(EvalError::FormalDivergence {
                reason: format!("lattice box radius cap {cap} exceeded; shells keep contributing"),
            });
        }
        let (any, min_excess) = scan(
            lo_of(next),
            next,
            Some((lo_of(radius), radius)),
            &mut acc,
            &mut contributing,
        )?;
        if !any {
            return Ok(SumEval {
                series: acc,
                certificate: ConvergenceCertificate {
                    contributing_terms: contributing,
                    probe: ProbeSummary::Shells { final_radius: next, min_excess },
                },
            });
        }
        radius = next;
    }
}

/// Visits the cone points `hi >= k_1 >= ... >= k_d >= lo`. With `skip_inner`
/// set, points lying entirely inside the smaller box (`k_1 <= inner_hi` and
/// `k_d >= inner_lo`) are skipped; the cone ordering makes those two
/// comparisons sufficient.
fn for_each_cone_point(
    dim: usize,
    lo: i64,
    hi: i64,
    skip_inner: Option<(i64, i64)>,
    f: &mut impl FnMut(&[i64]) -> Result<(), EvalError>,
) -> Result<(), EvalError> {
    fn rec(
        point: &mut Vec<i64>,
        dim: usize,
        lo: i64,
        upper: i64,
        skip_inner: Option<(i64, i64)>,
        f: &mut impl FnMut(&[i64]) -> Result<(), EvalError>,
    ) -> Result<(), EvalError> {
        for k in lo..=upper {
            point.push(k);
            if point.len() == dim {
                let inside_old = skip_inner.is_some_and(|(ilo, ihi)| {
                    point[0] <= ihi && *point.last().unwrap() >= ilo
                });
                if !inside_old {
                    f(point)?;
                }
            } else {
                rec(point, dim, lo, k, skip_inner, f)?;
            }
            point.pop();
        }
        Ok(())
    }
    if dim == 0 {
        return f(&[]);
    }
    rec(&mut Vec::with_capacity(dim), dim, lo, hi, skip_inner, f)
}

fn isqrt(n: i64) -> i64 {
    let mut r = (n.max(0) as f64).sqrt() as i64;
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    while r * r > n {
        r -= 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{frac, rat};
    use crate::pochhammer::{jtp_theta, PochSpec, ProductSpec};

    fn cfg() -> EngineConfig {
        EngineConfig::default()
    }

    #[test]
    fn geometric_series() {
        // sum_{k>=0} q^k = 1/(1-q)
        let spec = SumSpec::new(1, IndexDomain::NonNegative)
            .q_exp(QuadraticForm::poly1(rat(0), rat(1), rat(0)));
        let got = eval_sum(&spec, 20, &cfg()).unwrap();
        let want = QSeries::one(20).div_binomial(&rat(1), 1);
        assert!(got.series.agrees_with(&want));
        assert_eq!(got.series.order(), 20);
        assert_eq!(got.certificate.contributing_terms, 21);
        match got.certificate.probe {
            ProbeSummary::Ray { lo, hi, min_excess, monotone } => {
                assert_eq!(lo, 0);
                assert!(hi >= 25 + 20); // stop near 25, tail to at least 2x
                assert_eq!(min_excess, Some(1));
                assert!(monotone);
            }
            ref other => panic!("expected ray probe, got {other:?}"),
        }
    }

    #[test]
    fn bilateral_theta_matches_triple_product_sum() {
        // sum over Z of (-z)^k q^(k(k-1)/2) with z = 2q^-3: exercises negative
        // valuations and the downward walk (z = q^-3 itself would be the
        // degenerate theta that cancels to zero term by term)
        let z = Monomial::new(rat(2), -3);
        let spec = SumSpec::new(1, IndexDomain::AllIntegers)
            .q_exp(QuadraticForm::poly1(frac(1, 2), frac(-1, 2), rat(0)))
            .base(0, z.neg());
        let got = eval_sum(&spec, 30, &cfg()).unwrap();
        let want = jtp_theta(&z, 1, 30);
        assert!(got.series.agrees_with(&want));
        assert_eq!(got.series.vmin(), want.vmin());
        assert!(got.series.vmin() < 0);
    }

    #[test]
    fn rogers_ramanujan_first_identity_smoke() {
        // sum_{k>=0} q^(k^2) / (q;q)_k = 1 / ((q;q^5)_inf (q^4;q^5)_inf)
        let lhs = SumSpec::new(1, IndexDomain::NonNegative)
            .q_exp(QuadraticForm::poly1(rat(1), rat(0), rat(0)))
            .over(SumFactor::finite(rat(1), AffineForm::constant_form(1), 1, AffineForm::linear1(1, 0)));
        let got = eval_sum(&lhs, 60, &cfg()).unwrap();
        let want = ProductSpec::one()
            .over_poch(PochSpec::infinite(Monomial::q(), 5))
            .over_poch(PochSpec::infinite(Monomial::q_pow(4), 5))
            .eval(60)
            .unwrap();
        let (_, diff) = got.series.first_difference(&want);
        assert_eq!(diff, None);
    }

    #[test]
    fn andrews_gordon_two_index_lattice() {
        // sum_{k1>=k2>=0} q^(k1^2+k2^2) / ((q;q)_{k1-k2} (q;q)_{k2})
        //   = prod over n = 1,2,5,6 mod 7 of 1/(1-q^n)
        let spec = SumSpec::new(2, IndexDomain::NonNegative)
            .q_exp(QuadraticForm::new(
                vec![vec![rat(1), rat(0)], vec![rat(0), rat(1)]],
                vec![rat(0), rat(0)],
                rat(0),
            ))
            .over(SumFactor::finite(
                rat(1),
                AffineForm::constant_form(1),
                1,
                AffineForm::new(0, vec![1, -1]),
            ))
            .over(SumFactor::finite(
                rat(1),
                AffineForm::constant_form(1),
                1,
                AffineForm::new(0, vec![0, 1]),
            ));
        let got = eval_sum(&spec, 40, &cfg()).unwrap();
        let mut want = ProductSpec::one();
        for r in [1, 2, 5, 6] {
            want = want.over_poch(PochSpec::infinite(Monomial::q_pow(r), 7));
        }
        let want = want.eval(40).unwrap();
        assert!(got.series.agrees_with(&want));
        assert!(matches!(got.certificate.probe, ProbeSummary::Shells { .. }));
    }

    #[test]
    fn denominator_pochhammer_kills_negative_indices() {
        // 1/(q;q)_k vanishes for k < 0, so the bilateral sum collapses to the
        // unilateral one
        let body = |domain| {
            SumSpec::new(1, domain)
                .q_exp(QuadraticForm::poly1(rat(1), rat(0), rat(0)))
                .over(SumFactor::finite(
                    rat(1),
                    AffineForm::constant_form(1),
                    1,
                    AffineForm::linear1(1, 0),
                ))
        };
        let bilateral = eval_sum(&body(IndexDomain::AllIntegers), 30, &cfg()).unwrap();
        let unilateral = eval_sum(&body(IndexDomain::NonNegative), 30, &cfg()).unwrap();
        assert!(bilateral.series.agrees_with(&unilateral.series));
        assert_eq!(
            bilateral.certificate.contributing_terms,
            unilateral.certificate.contributing_terms
        );
        let status = body(IndexDomain::AllIntegers).term_status(&[-1]).unwrap();
        assert_eq!(status.series_valuation(), None);
    }

    #[test]
    fn pole_at_term_is_reported_with_its_point() {
        // denominator (q^(1-k); q)_inf vanishes at k = 1
        let spec = SumSpec::new(1, IndexDomain::AllIntegers)
            .q_exp(QuadraticForm::poly1(rat(1), rat(0), rat(0)))
            .over(SumFactor::infinite(rat(1), AffineForm::linear1(-1, 1), 1));
        match eval_sum(&spec, 20, &cfg()) {
            Err(EvalError::PoleAtTerm { point }) => assert_eq!(point, vec![1]),
            other => panic!("expected pole, got {other:?}"),
        }
    }

    #[test]
    fn flat_valuations_hit_the_cap() {
        // sum_{k>=0} 2^k: every term has valuation 0
        let spec = SumSpec::new(1, IndexDomain::NonNegative).base(0, Monomial::int(2));
        match eval_sum(&spec, 20, &cfg()) {
            Err(EvalError::FormalDivergence { reason }) => {
                assert!(reason.contains("cap"), "reason was {reason:?}");
            }
            other => panic!("expected formal divergence, got {other:?}"),
        }
    }

    #[test]
    fn far_vertex_is_rejected_not_mis_summed() {
        // q^((k-40)^2): the walk settles immediately but valuations decrease
        // along the tail, which must be flagged rather than summed to zero
        let spec = SumSpec::new(1, IndexDomain::NonNegative)
            .q_exp(QuadraticForm::poly1(rat(1), rat(-80), rat(1600)));
        match eval_sum(&spec, 20, &cfg()) {
            Err(EvalError::FormalDivergence { reason }) => {
                assert!(reason.contains("decrease"), "reason was {reason:?}");
            }
            other => panic!("expected formal divergence, got {other:?}"),
        }
    }

    #[test]
    fn non_integral_exponent_is_rejected() {
        let spec = SumSpec::new(1, IndexDomain::NonNegative)
            .q_exp(QuadraticForm::poly1(frac(1, 2), rat(0), rat(0)));
        match eval_sum(&spec, 10, &cfg()) {
            Err(EvalError::NonIntegralExponent { point, .. }) => assert_eq!(point, vec![1]),
            other => panic!("expected integrality error, got {other:?}"),
        }
    }

    #[test]
    fn finite_range_is_enumerated_completely() {
        // sum_{2 >= k >= 0} q^k = 1 + q + q^2
        let spec = SumSpec::new(1, IndexDomain::Range0To(2))
            .q_exp(QuadraticForm::poly1(rat(0), rat(1), rat(0)));
        let got = eval_sum(&spec, 10, &cfg()).unwrap();
        assert_eq!(got.series.coeff(0).unwrap(), rat(1));
        assert_eq!(got.series.coeff(1).unwrap(), rat(1));
        assert_eq!(got.series.coeff(2).unwrap(), rat(1));
        assert_eq!(got.series.coeff(3).unwrap(), rat(0));
        assert!(matches!(got.certificate.probe, ProbeSummary::Complete { points: 3 }));
        // empty range sums to zero
        let empty = SumSpec::new(1, IndexDomain::Range0To(-1));
        let z = eval_sum(&empty, 5, &cfg()).unwrap();
        assert!(z.series.is_zero());
    }

    #[test]
    fn indefinite_lattice_form_is_rejected() {
        let spec = SumSpec::new(2, IndexDomain::AllIntegers).q_exp(QuadraticForm::new(
            vec![vec![rat(1), rat(0)], vec![rat(0), rat(-1)]],
            vec![rat(0), rat(0)],
            rat(0),
        ));
        match eval_sum(&spec, 10, &cfg()) {
            Err(EvalError::FormalDivergence { reason }) => {
                assert!(reason.contains("positive definite"), "reason was {reason:?}");
            }
            other => panic!("expected formal divergence, got {other:?}"),
        }
    }

    #[test]
    fn fast_status_matches_accumulator_valuation() {
        // the integer fast path and the full product expansion must agree on
        // valuation and zero detection across a spread of factor shapes
        let factors = vec![
            SumFactor::infinite(rat(1), AffineForm::linear1(-2, 1), 1),
            SumFactor::infinite(rat(-1), AffineForm::linear1(1, -4), 3),
            SumFactor::finite(rat(1), AffineForm::linear1(-1, 0), 2, AffineForm::linear1(1, 2)),
            SumFactor::finite(frac(2, 3), AffineForm::linear1(2, -5), 1, AffineForm::linear1(-1, 1)),
        ];
        let spec = SumSpec {
            dim: 1,
            domain: IndexDomain::AllIntegers,
            prefactor: Monomial::new(rat(3), -2),
            numer: vec![factors[0].clone(), factors[2].clone()],
            denom: vec![factors[1].clone(), factors[3].clone()],
            q_exponent: QuadraticForm::poly1(frac(3, 2), frac(1, 2), rat(0)),
            index_bases: vec![Monomial::new(frac(1, 2), 2)],
        };
        for k in -6..=6 {
            let fast = spec.term_status(&[k]);
            let product = spec.term_product(&[k]).unwrap();
            let slow = product.eval(25);
            match (fast, slow) {
                (Ok(st), Ok(series)) => match st.series_valuation() {
                    None => assert!(series.is_zero(), "k={k}"),
                    Some(v) if v <= 25 => {
                        assert_eq!(series.valuation(), Some(v), "k={k}");
                    }
                    Some(_) => assert!(series.is_zero(), "k={k} beyond window"),
                },
                (Err(EvalError::PoleAtTerm { .. }), Err(EvalError::ZeroDenominatorFactor { .. })) => {}
                (f, s) => panic!("fast/slow disagree at k={k}: {f:?} vs {s:?}"),
            }
        }
    }

    #[test]
    fn reindex_preserves_sums_over_shifted_range() {
        // sum_{k>=1} q^(k^2) z^k  ==  reindexed j = k-1 over j >= 0
        let base = Monomial::new(rat(2), 1);
        let full = SumSpec::new(1, IndexDomain::NonNegative)
            .q_exp(QuadraticForm::poly1(rat(1), rat(0), rat(0)))
            .base(0, base.clone());
        // original k >= 1 part = full minus k=0 term (which is 1)
        let shifted = full.reindex1(1, 1, IndexDomain::NonNegative);
        let got = eval_sum(&shifted, 25, &cfg()).unwrap().series;
        let want = eval_sum(&full, 25, &cfg())
            .unwrap()
            .series
            .sub(&QSeries::one(25));
        assert!(got.agrees_with(&want));
        // stride-2 even subsequence: k = 2j
        let even = full.reindex1(2, 0, IndexDomain::NonNegative);
        let got_even = eval_sum(&even, 25, &cfg()).unwrap().series;
        let mut expect = QSeries::zero(25);
        for j in 0..=2 {
            let k = 2 * j;
            if k * k <= 25 {
                expect = expect.add(&QSeries::from_monomial(
                    &Monomial::new(crate::coeff::rat_pow(&rat(2), k), k * k + k),
                    25,
                ));
            }
        }
        assert!(got_even.agrees_with(&expect));
    }

    #[test]
    fn rebase_commutes_with_evaluation() {
        let spec = SumSpec::new(1, IndexDomain::NonNegative)
            .q_exp(QuadraticForm::poly1(rat(1), rat(0), rat(0)))
            .over(SumFactor::finite(
                rat(1),
                AffineForm::constant_form(1),
                1,
                AffineForm::linear1(1, 0),
            ));
        let direct = eval_sum(&spec.rebase(2), 30, &cfg()).unwrap().series;
        let stretched = eval_sum(&spec, 15, &cfg()).unwrap().series.rebase(2);
        assert!(direct.agrees_with(&stretched));
    }
}
