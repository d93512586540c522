//! The identity catalog: a library of series identities stored as data,
//! plus the verifier that expands both sides and compares coefficients.
//!
//! Records live in `data/catalog.ron` (embedded into the binary). Each
//! record carries one or more samples; a sample fixes every free parameter
//! of the identity, so that both sides are closed expressions the engine
//! can expand. The builders in [`records`] construct the same catalog
//! programmatically; a test pins the data file to the builders.

pub mod expr;
pub mod records;

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coeff::Rat;
use crate::error::{CatalogError, EvalError};
use crate::sums::{ConvergenceCertificate, EngineConfig};

pub use expr::{SideExpr, SideTerm};
pub use records::build_catalog;

/// One fully bound instance of an identity.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    /// Short human-readable description of the parameter bindings,
    /// e.g. `"z=2"` or `"base 5, z=q^-3"`.
    pub name: String,
    pub lhs: SideExpr,
    pub rhs: SideExpr,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentityRecord {
    /// Stable identifier used by the CLI and the tests.
    pub id: String,
    /// Where the identity is stated in the classical literature.
    pub citation: String,
    /// Free parameters of the general statement and how the samples bind
    /// them; empty for parameter-free identities.
    pub params: String,
    /// Expansion order used when the caller does not override it.
    pub default_order: i64,
    pub samples: Vec<Sample>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Catalog {
    pub records: Vec<IdentityRecord>,
}

/// Outcome of comparing the two sides of one sample.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum Verdict {
    Pass,
    Fail {
        /// Exponent of the first coefficient where the sides disagree.
        exponent: i64,
        #[serde(with = "crate::coeff::rat_serde")]
        lhs: Rat,
        #[serde(with = "crate::coeff::rat_serde")]
        rhs: Rat,
    },
    Error {
        kind: String,
    },
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub id: String,
    pub sample: String,
    /// Order through which the comparison was actually performed.
    pub order: i64,
    pub verdict: Verdict,
    /// Convergence certificates of every structured sum that was expanded,
    /// left-hand side first.
    pub certificates: Vec<ConvergenceCertificate>,
    pub elapsed_ms: u64,
}

/// How many rounds of window widening `verify` attempts before giving up.
/// Each round re-expands both sides with the order raised by the observed
/// shortfall, which converges quickly because the shortfall comes from
/// fixed negative valuations in the factors.
const WIDEN_ROUNDS: u32 = 4;

fn eval_sample(
    sample: &Sample,
    order: i64,
    cfg: &EngineConfig,
) -> Result<(i64, Option<(i64, Rat, Rat)>, Vec<ConvergenceCertificate>), EvalError> {
    let mut working = order;
    for _ in 0..WIDEN_ROUNDS {
        let (lhs, mut certs) = sample.lhs.eval(working, cfg)?;
        let (rhs, rcerts) = sample.rhs.eval(working, cfg)?;
        certs.extend(rcerts);
        let (common, diff) = lhs.first_difference(&rhs);
        if let Some(first) = &diff {
            if first.0 <= order {
                return Ok((common.min(order), diff, certs));
            }
        }
        if common >= order {
            let capped = lhs.truncate(order).first_difference(&rhs.truncate(order));
            return Ok((order, capped.1, certs));
        }
        working += order - common;
    }
    Err(EvalError::WindowTooNarrow { requested: order })
}

/// Expands both sides of one sample through `q^order` and compares every
/// coefficient on the common window.
pub fn verify_sample(
    record: &IdentityRecord,
    sample: &Sample,
    order: i64,
    cfg: &EngineConfig,
) -> VerificationReport {
    let start = Instant::now();
    let (order_done, diff, certificates) = match eval_sample(sample, order, cfg) {
        Ok(r) => r,
        Err(e) => {
            return VerificationReport {
                id: record.id.clone(),
                sample: sample.name.clone(),
                order,
                verdict: Verdict::Error { kind: e.to_string() },
                certificates: Vec::new(),
                elapsed_ms: start.elapsed().as_millis() as u64,
            }
        }
    };
    let verdict = match diff {
        None => Verdict::Pass,
        Some((exponent, lhs, rhs)) => Verdict::Fail { exponent, lhs, rhs },
    };
    VerificationReport {
        id: record.id.clone(),
        sample: sample.name.clone(),
        order: order_done,
        verdict,
        certificates,
        elapsed_ms: start.elapsed().as_millis() as u64,
    }
}

impl Catalog {
    /// Parses the catalog shipped with the crate.
    pub fn builtin() -> Result<Catalog, CatalogError> {
        Catalog::from_ron(include_str!("../../data/catalog.ron"))
    }

    pub fn from_ron(text: &str) -> Result<Catalog, CatalogError> {
        ron::from_str(text).map_err(|e| CatalogError::Corrupt(e.to_string()))
    }

    pub fn to_ron(&self) -> Result<String, CatalogError> {
        let pretty = ron::ser::PrettyConfig::new()
            .depth_limit(4)
            .indentor("  ".to_string());
        ron::ser::to_string_pretty(self, pretty).map_err(|e| CatalogError::Corrupt(e.to_string()))
    }

    pub fn get(&self, id: &str) -> Result<&IdentityRecord, CatalogError> {
        self.records
            .iter()
            .find(|r| r.id == id)
            .ok_or_else(|| CatalogError::UnknownIdentity(id.to_string()))
    }

    /// Verifies every sample of one record. `sample` restricts to a single
    /// named sample, `order` overrides the record default.
    pub fn verify(
        &self,
        id: &str,
        sample: Option<&str>,
        order: Option<i64>,
        cfg: &EngineConfig,
    ) -> Result<Vec<VerificationReport>, CatalogError> {
        let record = self.get(id)?;
        let order = order.unwrap_or(record.default_order);
        let chosen: Vec<&Sample> = match sample {
            None => record.samples.iter().collect(),
            Some(name) => {
                let s = record.samples.iter().find(|s| s.name == name).ok_or_else(|| {
                    CatalogError::UnknownSample { id: id.to_string(), sample: name.to_string() }
                })?;
                vec![s]
            }
        };
        Ok(chosen
            .par_iter()
            .map(|s| verify_sample(record, s, order, cfg))
            .collect())
    }

    /// Verifies every sample of every record; report order follows catalog
    /// order regardless of the parallel schedule.
    pub fn verify_all(&self, order: Option<i64>, cfg: &EngineConfig) -> Vec<VerificationReport> {
        let jobs: Vec<(&IdentityRecord, &Sample)> = self
            .records
            .iter()
            .flat_map(|r| r.samples.iter().map(move |s| (r, s)))
            .collect();
        jobs.par_iter()
            .map(|(r, s)| verify_sample(r, s, order.unwrap_or(r.default_order), cfg))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::rat;
    use crate::forms::{AffineForm, QuadraticForm};
    use crate::pochhammer::{PochSpec, ProductSpec};
    use crate::monomial::Monomial;
    use crate::sums::{IndexDomain, SumFactor, SumSpec};

    fn tiny_record() -> IdentityRecord {
        // sum_{k>=0} q^{k^2}/(q;q)_k = 1/((q;q^5)(q^4;q^5))_inf
        let lhs = SideExpr::sum(
            SumSpec::new(1, IndexDomain::NonNegative)
                .q_exp(QuadraticForm::poly1(rat(1), rat(0), rat(0)))
                .over(SumFactor::finite(
                    rat(1),
                    AffineForm::constant_form(1),
                    1,
                    AffineForm::var(0, 1),
                )),
        );
        let rhs = SideExpr::product(
            ProductSpec::one()
                .over_poch(PochSpec::infinite(Monomial::q(), 5))
                .over_poch(PochSpec::infinite(Monomial::q_pow(4), 5)),
        );
        IdentityRecord {
            id: "tiny".into(),
            citation: "Rogers-Ramanujan, first".into(),
            params: String::new(),
            default_order: 40,
            samples: vec![Sample { name: "default".into(), lhs, rhs }],
        }
    }

    #[test]
    fn verify_passes_on_a_true_identity() {
        let record = tiny_record();
        let report = verify_sample(&record, &record.samples[0], 40, &EngineConfig::default());
        assert_eq!(report.verdict, Verdict::Pass);
        assert_eq!(report.order, 40);
        assert_eq!(report.certificates.len(), 1);
    }

    #[test]
    fn verify_reports_first_mismatch() {
        let mut record = tiny_record();
        // Perturb the right side: drop the (q^4;q^5) factor. First mismatch
        // is at q^4, where the true side still has coefficient 2.
        record.samples[0].rhs = SideExpr::product(
            ProductSpec::one().over_poch(PochSpec::infinite(Monomial::q(), 5)),
        );
        let report = verify_sample(&record, &record.samples[0], 40, &EngineConfig::default());
        match report.verdict {
            Verdict::Fail { exponent, .. } => assert_eq!(exponent, 4),
            other => panic!("expected a failure, got {other:?}"),
        }
    }

    #[test]
    fn catalog_round_trips_through_ron() {
        let catalog = Catalog { records: vec![tiny_record()] };
        let text = catalog.to_ron().unwrap();
        let back = Catalog::from_ron(&text).unwrap();
        assert_eq!(catalog, back);
    }
}
