//! Expression trees for identity sides.
//!
//! A side of an identity is a sum of terms; each term is either a closed
//! product of Pochhammer symbols or a structured sum, optionally multiplied
//! by a closed product (needed for right-hand sides that put an infinite
//! product in front of a theta-style sum). Keeping the shape this small
//! means every record in the catalog is plain data that the summation
//! engine can evaluate directly.

use serde::{Deserialize, Serialize};

use crate::error::EvalError;
use crate::pochhammer::ProductSpec;
use crate::series::QSeries;
use crate::sums::{eval_sum, ConvergenceCertificate, EngineConfig, SumSpec};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum SideTerm {
    Product(ProductSpec),
    Sum {
        /// Closed-product multiplier in front of the sum, if any.
        scale: Option<ProductSpec>,
        spec: SumSpec,
    },
}

impl SideTerm {
    pub fn product(p: ProductSpec) -> Self {
        SideTerm::Product(p)
    }

    pub fn sum(spec: SumSpec) -> Self {
        SideTerm::Sum { scale: None, spec }
    }

    pub fn scaled_sum(scale: ProductSpec, spec: SumSpec) -> Self {
        SideTerm::Sum { scale: Some(scale), spec }
    }

    /// Substitutes `q -> q^b`.
    pub fn rebase(&self, b: i64) -> Self {
        match self {
            SideTerm::Product(p) => SideTerm::Product(p.rebase(b)),
            SideTerm::Sum { scale, spec } => SideTerm::Sum {
                scale: scale.as_ref().map(|s| s.rebase(b)),
                spec: spec.rebase(b),
            },
        }
    }

    fn eval(
        &self,
        order: i64,
        cfg: &EngineConfig,
    ) -> Result<(QSeries, Option<ConvergenceCertificate>), EvalError> {
        match self {
            SideTerm::Product(p) => Ok((p.eval(order)?, None)),
            SideTerm::Sum { scale, spec } => {
                let sum = eval_sum(spec, order, cfg)?;
                let series = match scale {
                    None => sum.series,
                    Some(s) => s.eval(order)?.mul(&sum.series),
                };
                Ok((series, Some(sum.certificate)))
            }
        }
    }
}

/// One side of an identity: the sum of its terms.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SideExpr {
    pub terms: Vec<SideTerm>,
}

impl SideExpr {
    pub fn product(p: ProductSpec) -> Self {
        SideExpr { terms: vec![SideTerm::Product(p)] }
    }

    pub fn sum(spec: SumSpec) -> Self {
        SideExpr { terms: vec![SideTerm::sum(spec)] }
    }

    pub fn scaled_sum(scale: ProductSpec, spec: SumSpec) -> Self {
        SideExpr { terms: vec![SideTerm::scaled_sum(scale, spec)] }
    }

    pub fn of(terms: Vec<SideTerm>) -> Self {
        SideExpr { terms }
    }

    pub fn rebase(&self, b: i64) -> Self {
        SideExpr { terms: self.terms.iter().map(|t| t.rebase(b)).collect() }
    }

    /// Expands the side through `q^order` (or as far as the term windows
    /// permit) and returns the certificates of the sums involved.
    pub fn eval(
        &self,
        order: i64,
        cfg: &EngineConfig,
    ) -> Result<(QSeries, Vec<ConvergenceCertificate>), EvalError> {
        let mut acc = QSeries::zero(order);
        let mut certificates = Vec::new();
        for term in &self.terms {
            let (series, cert) = term.eval(order, cfg)?;
            acc = acc.add(&series);
            certificates.extend(cert);
        }
        Ok((acc, certificates))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::rat;
    use crate::forms::QuadraticForm;
    use crate::monomial::Monomial;
    use crate::pochhammer::PochSpec;
    use crate::sums::{IndexDomain, SumFactor};

    #[test]
    fn two_term_side_adds_up() {
        // (q;q)_inf + 1/(q;q)_inf, checked against the directly computed sum
        let p1 = ProductSpec::one().times_poch(PochSpec::infinite(Monomial::q(), 1));
        let p2 = ProductSpec::one().over_poch(PochSpec::infinite(Monomial::q(), 1));
        let side = SideExpr::of(vec![SideTerm::product(p1.clone()), SideTerm::product(p2.clone())]);
        let (got, certs) = side.eval(30, &EngineConfig::default()).unwrap();
        let want = p1.eval(30).unwrap().add(&p2.eval(30).unwrap());
        assert!(got.agrees_with(&want));
        assert!(certs.is_empty());
    }

    #[test]
    fn scaled_sum_multiplies_by_the_product() {
        // (q;q)_inf * sum_{k>=0} q^k/(q;q)_k = 1 (Euler), a compact smoke test
        use crate::forms::AffineForm;
        let scale = ProductSpec::one().times_poch(PochSpec::infinite(Monomial::q(), 1));
        let spec = SumSpec::new(1, IndexDomain::NonNegative)
            .q_exp(QuadraticForm::poly1(rat(0), rat(1), rat(0)))
            .over(SumFactor::finite(rat(1), AffineForm::constant_form(1), 1, AffineForm::var(0, 1)));
        let side = SideExpr::scaled_sum(scale, spec);
        let (got, certs) = side.eval(25, &EngineConfig::default()).unwrap();
        assert!(got.agrees_with(&QSeries::one(25)));
        assert_eq!(certs.len(), 1);
    }
}
