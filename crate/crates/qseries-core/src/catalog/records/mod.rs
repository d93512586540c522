//! Programmatic construction of the catalog.
//!
//! Each submodule builds one family of records; `build_catalog` concatenates
//! them in a stable order. The data file shipped with the crate is the
//! serialized form of exactly this catalog, pinned by a test.
//!
//! The helpers below keep the transcriptions close to how the identities are
//! written on paper: `ip(&[2,3], 5)` is the pair of infinite products with
//! arguments q^2 and q^3 in base q^5, `fpoch` is a finite q-shifted factorial
//! whose length may depend on the summation indices, and `diag` builds the
//! diagonal quadratic exponents a*(k_1^2+...+k_d^2) + l_1 k_1 + ... that every
//! multilateral sum in the catalog uses.

mod bilateral;
mod classical;
mod comb;
mod multilateral;
mod transforms;

use crate::coeff::{rat, Rat};
use crate::forms::{AffineForm, QuadraticForm};
use crate::monomial::Monomial;
use crate::pochhammer::{PochSpec, ProductSpec};
use crate::sums::{SumFactor, SumSpec};

use super::{Catalog, IdentityRecord, Sample, SideExpr};

pub fn build_catalog() -> Catalog {
    let mut records = Vec::new();
    records.extend(classical::records());
    records.extend(bilateral::records());
    records.extend(transforms::records());
    records.extend(multilateral::records());
    records.extend(comb::records());
    Catalog { records }
}

// ---- monomials ----

/// q^e
pub(self) fn qm(e: i64) -> Monomial {
    Monomial::q_pow(e)
}

/// integer constant
pub(self) fn cm(n: i64) -> Monomial {
    Monomial::int(n)
}

/// rational constant n/d
pub(self) fn cf(n: i64, d: i64) -> Monomial {
    Monomial::constant(crate::coeff::frac(n, d))
}

// ---- infinite products ----

/// (q^e; q^base)_inf for each listed exponent.
pub(self) fn ip(exps: &[i64], base: i64) -> Vec<PochSpec> {
    exps.iter().map(|&e| PochSpec::infinite(qm(e), base)).collect()
}

/// (arg; q^base)_inf for each listed monomial argument.
pub(self) fn ipm(args: &[Monomial], base: i64) -> Vec<PochSpec> {
    args.iter().map(|a| PochSpec::infinite(a.clone(), base)).collect()
}

pub(self) fn product(numer: Vec<PochSpec>, denom: Vec<PochSpec>) -> ProductSpec {
    ProductSpec { prefactor: Monomial::one(), numer, denom }
}

pub(self) fn scaled_product(
    prefactor: Monomial,
    numer: Vec<PochSpec>,
    denom: Vec<PochSpec>,
) -> ProductSpec {
    ProductSpec { prefactor, numer, denom }
}

// ---- affine forms over the summation indices ----

/// k_i in dimension d
pub(self) fn k(i: usize, d: usize) -> AffineForm {
    AffineForm::var(i, d)
}

/// c + a*k_i in dimension d
pub(self) fn klin(a: i64, i: usize, c: i64, d: usize) -> AffineForm {
    let mut coeffs = vec![0; d];
    coeffs[i] = a;
    AffineForm::new(c, coeffs)
}

/// k_i - k_{i+1} in dimension d
pub(self) fn kdiff(i: usize, d: usize) -> AffineForm {
    let mut coeffs = vec![0; d];
    coeffs[i] = 1;
    coeffs[i + 1] = -1;
    AffineForm::new(0, coeffs)
}

pub(self) fn ac(c: i64) -> AffineForm {
    AffineForm::constant_form(c)
}

// ---- summand factors ----

/// (c*q^e; q^b)_len with a constant argument.
pub(self) fn fpoch(c: Rat, e: i64, b: i64, len: AffineForm) -> SumFactor {
    SumFactor::finite(c, ac(e), b, len)
}

/// (m; q^b)_len for a monomial argument m.
pub(self) fn fpoch_m(m: &Monomial, b: i64, len: AffineForm) -> SumFactor {
    SumFactor::finite(m.coeff.clone(), ac(m.exp), b, len)
}

/// (c*q^(arg); q^b)_len with an index-dependent argument exponent.
pub(self) fn fpoch_arg(c: Rat, arg: AffineForm, b: i64, len: AffineForm) -> SumFactor {
    SumFactor::finite(c, arg, b, len)
}

/// (m*q^(arg'); q^b)_inf where arg' = m.exp + arg.
pub(self) fn infpoch(m: &Monomial, arg: AffineForm, b: i64) -> SumFactor {
    let mut shifted = arg;
    shifted.constant += m.exp;
    SumFactor::infinite(m.coeff.clone(), shifted, b)
}

// ---- quadratic exponents ----

/// a*(k_1^2 + ... + k_d^2) + linear . k + c, the shape of every multilateral
/// exponent in the catalog.
pub(self) fn diag(d: usize, a: i64, linear: &[i64], c: i64) -> QuadraticForm {
    assert_eq!(linear.len(), d);
    let mut quad = vec![vec![rat(0); d]; d];
    for (i, row) in quad.iter_mut().enumerate() {
        row[i] = rat(a);
    }
    QuadraticForm::new(quad, linear.iter().map(|&l| rat(l)).collect(), rat(c))
}

/// Applies the chain 1/((q^b;q^b)_{k_1-k_2} ... (q^b;q^b)_{k_{d-1}-k_d}) that
/// every multilateral sum carries over its outer index differences.
pub(self) fn over_diff_chain(mut spec: SumSpec, b: i64) -> SumSpec {
    let d = spec.dim;
    for i in 0..d.saturating_sub(1) {
        spec = spec.over(fpoch(rat(1), b, b, kdiff(i, d)));
    }
    spec
}

/// Sets every index base to the same monomial (for z^{k_1+...+k_d} weights).
pub(self) fn bases_all(mut spec: SumSpec, m: &Monomial) -> SumSpec {
    for i in 0..spec.dim {
        spec = spec.base(i, m.clone());
    }
    spec
}

// ---- record assembly ----

pub(self) fn sample(name: &str, lhs: SideExpr, rhs: SideExpr) -> Sample {
    Sample { name: name.to_string(), lhs, rhs }
}

pub(self) fn record(
    id: &str,
    citation: &str,
    params: &str,
    default_order: i64,
    samples: Vec<Sample>,
) -> IdentityRecord {
    IdentityRecord {
        id: id.to_string(),
        citation: citation.to_string(),
        params: params.to_string(),
        default_order,
        samples,
    }
}

/// A parameter-free identity: one sample holding the identity itself.
pub(self) fn fixed(
    id: &str,
    citation: &str,
    default_order: i64,
    lhs: SideExpr,
    rhs: SideExpr,
) -> IdentityRecord {
    record(id, citation, "", default_order, vec![sample("default", lhs, rhs)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn catalog_shape_is_sound() {
        let catalog = build_catalog();
        assert!(catalog.records.len() >= 70, "only {} records", catalog.records.len());

        let mut ids = HashSet::new();
        for r in &catalog.records {
            assert!(ids.insert(r.id.clone()), "duplicate id {}", r.id);
            assert!(!r.citation.is_empty(), "{} lacks a citation", r.id);
            assert!(!r.samples.is_empty(), "{} has no samples", r.id);
            assert!(r.default_order > 0, "{} has a nonpositive order", r.id);
            if !r.params.is_empty() {
                assert!(
                    r.samples.len() >= 3,
                    "{} is parametrized but has only {} samples",
                    r.id,
                    r.samples.len()
                );
            }
            let mut names = HashSet::new();
            for s in &r.samples {
                assert!(names.insert(s.name.clone()), "{} repeats sample {}", r.id, s.name);
            }
        }
    }

    #[test]
    fn record_rr_a_is_parameter_free() {
        let catalog = build_catalog();
        let r = catalog.get("rr-a").unwrap();
        assert!(r.params.is_empty());
        assert_eq!(r.samples.len(), 1);
    }
}
