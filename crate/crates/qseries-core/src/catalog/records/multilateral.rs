//! Lattice-cone extensions of the classical and bilateral families: the
//! Andrews-Gordon identities with their Gollnitz-Gordon and even modulus
//! companions on the nonnegative cone, theta expansions of the same sums
//! over the full cone k_1 >= ... >= k_{r-1} with both ends unbounded, the
//! mod (2r+1)^2 and mod 8r^2 product specializations, and lattice versions
//! of the Cauchy, Jackson, and two-sided modulus summations. Every record
//! is indexed by the number of quadratic blocks r (the sum has r-1 indices)
//! and, where the family carries one, the selector i of the linear tail.

use crate::coeff::rat;
use crate::monomial::Monomial;
use crate::pochhammer::PochSpec;
use crate::sums::{IndexDomain, SumFactor, SumSpec};

use super::super::{IdentityRecord, SideExpr, SideTerm};
use super::*;

pub(super) fn records() -> Vec<IdentityRecord> {
    let mut out = Vec::new();
    out.extend(andrews_gordon());
    out.extend(gollnitz_gordon_analogue());
    out.extend(even_modulus());
    out.extend(rr_theta_lattice());
    out.extend(gg_theta_lattice());
    out.extend(rr_mod_squared());
    out.extend(gg_mod_squared());
    out.extend(even_modulus_lattice());
    out.extend(cauchy_odd_mod());
    out.extend(cauchy_even_mod());
    out.extend(cauchy_even_mod_two_term());
    out.extend(jackson_mod_4r());
    out.extend(jackson_products());
    out.extend(mod_twice_odd_sums());
    out.extend(jackson_mod_squared());
    out
}

// ---- local helpers ----

/// (m*q^(a*k_1); q^b)_{k_1}, the factor tied to the first index that the
/// Gollnitz-Gordon style sums carry.
fn head_factor(m: &Monomial, a: i64, b: i64, d: usize) -> SumFactor {
    fpoch_arg(m.coeff.clone(), klin(a, 0, m.exp, d), b, k(0, d))
}

/// Linear exponent weights `all + extra*[j >= i]` for j = 1..d, the shape
/// sum_j all*k_j + sum_{j>=i} extra*k_j that selects the family member.
fn tail_linear(d: usize, all: i64, i: i64, extra: i64) -> Vec<i64> {
    (1..=d as i64).map(|j| all + if j >= i { extra } else { 0 }).collect()
}

/// numer/denom * (q^m;q^m) [ (w q^u, q^v/w; q^m) + pref (w q^v, q^u/w; q^m) ],
/// the two-term theta closed form shared by the full-cone expansions.
fn theta_pair(
    numer: Vec<PochSpec>,
    denom: Vec<PochSpec>,
    m: i64,
    w: &Monomial,
    u: i64,
    v: i64,
    pref: Monomial,
) -> SideExpr {
    let term = |p: Monomial, x: i64, y: i64| {
        SideTerm::product(scaled_product(
            p,
            [
                numer.clone(),
                ip(&[m], m),
                ipm(&[w.mul(&qm(x)), w.inv().mul(&qm(y))], m),
            ]
            .concat(),
            denom.clone(),
        ))
    };
    SideExpr::of(vec![term(Monomial::one(), u, v), term(pref, v, u)])
}

// ---- multisums on the nonnegative cone ----

/// sum_{k_1>=...>=k_{r-1}>=0} q^{sum k_j^2 + k_i+...+k_{r-1}}
///   / ((q;q)_{k_{r-1}} prod (q;q)_{k_j-k_{j+1}})
///   = (q^i,q^{2r+1-i},q^{2r+1};q^{2r+1})/(q;q).
fn andrews_gordon() -> Vec<IdentityRecord> {
    let mut out = Vec::new();
    for r in 2i64..=4 {
        for i in 1..=r {
            let d = (r - 1) as usize;
            let lhs = SideExpr::sum(over_diff_chain(
                SumSpec::new(d, IndexDomain::NonNegative)
                    .q_exp(diag(d, 1, &tail_linear(d, 0, i, 1), 0))
                    .over(fpoch(rat(1), 1, 1, k(d - 1, d))),
                1,
            ));
            let rhs = SideExpr::product(product(
                ip(&[i, 2 * r + 1 - i, 2 * r + 1], 2 * r + 1),
                ip(&[1], 1),
            ));
            out.push(fixed(
                &format!("agm-r{r}i{i}"),
                "Andrews-Gordon identities",
                60,
                lhs,
                rhs,
            ));
        }
    }
    out
}

/// sum_{k_1>=...>=k_{r-1}>=0} (-q^{1-2k_1};q^2)_{k_1}
///   q^{2 sum k_j^2 + 2(k_i+...+k_{r-1})}
///   / ((q^2;q^2)_{k_{r-1}} prod (q^2;q^2)_{k_j-k_{j+1}})
///   = (q^2;q^4)(q^{2i-1},q^{4r+1-2i},q^{4r};q^{4r})/(q;q).
fn gollnitz_gordon_analogue() -> Vec<IdentityRecord> {
    let mut out = Vec::new();
    for r in 2i64..=4 {
        for i in 1..=r {
            let d = (r - 1) as usize;
            let lhs = SideExpr::sum(over_diff_chain(
                SumSpec::new(d, IndexDomain::NonNegative)
                    .q_exp(diag(d, 2, &tail_linear(d, 0, i, 2), 0))
                    .times(head_factor(&qm(1).neg(), -2, 2, d))
                    .over(fpoch(rat(1), 2, 2, k(d - 1, d))),
                2,
            ));
            let rhs = SideExpr::product(product(
                [ip(&[2], 4), ip(&[2 * i - 1, 4 * r + 1 - 2 * i, 4 * r], 4 * r)].concat(),
                ip(&[1], 1),
            ));
            out.push(fixed(
                &format!("aggm-r{r}i{i}"),
                "Gollnitz-Gordon analogue of the Andrews-Gordon identities",
                60,
                lhs,
                rhs,
            ));
        }
    }
    out
}

/// sum_{k_1>=...>=k_{r-1}>=0} q^{sum k_j^2 + k_i+...+k_{r-1}}
///   / ((q^2;q^2)_{k_{r-1}} prod (q;q)_{k_j-k_{j+1}})
///   = (q^i,q^{2r-i},q^{2r};q^{2r})/(q;q).
fn even_modulus() -> Vec<IdentityRecord> {
    let mut out = Vec::new();
    for r in 2i64..=4 {
        for i in 1..=r {
            let d = (r - 1) as usize;
            let lhs = SideExpr::sum(over_diff_chain(
                SumSpec::new(d, IndexDomain::NonNegative)
                    .q_exp(diag(d, 1, &tail_linear(d, 0, i, 1), 0))
                    .over(fpoch(rat(1), 2, 2, k(d - 1, d))),
                1,
            ));
            let rhs = SideExpr::product(product(
                ip(&[i, 2 * r - i, 2 * r], 2 * r),
                ip(&[1], 1),
            ));
            out.push(fixed(
                &format!("brm-r{r}i{i}"),
                "Bressoud's even modulus multisum",
                60,
                lhs,
                rhs,
            ));
        }
    }
    out
}

// ---- theta expansions over the full cone ----

/// sum over the full cone of q^{sum k_j^2 + k_i+...+k_{r-1}} z^{2 sum k_j}
///   / ((zq;q)_{k_{r-1}} prod (q;q)_{k_j-k_{j+1}})
///   = (1/z;q)/((1/z^2,z^2q;q)) (q^{2r+1};q^{2r+1})
///     * [ (z^{2r+1}q^{2r+1-i}, z^{-2r-1}q^i; q^{2r+1})
///         + z^{2i-1-2r} (swapped) ].
fn rr_theta_lattice() -> Vec<IdentityRecord> {
    let instance = |r: i64, i: i64, z: &Monomial| {
        let d = (r - 1) as usize;
        let lhs = SideExpr::sum(over_diff_chain(
            bases_all(
                SumSpec::new(d, IndexDomain::AllIntegers)
                    .q_exp(diag(d, 1, &tail_linear(d, 0, i, 1), 0)),
                &z.pow(2),
            )
            .over(fpoch_m(&z.mul(&qm(1)), 1, k(d - 1, d))),
            1,
        ));
        let rhs = theta_pair(
            ipm(&[z.inv()], 1),
            ipm(&[z.pow(-2), z.pow(2).mul(&qm(1))], 1),
            2 * r + 1,
            &z.pow(2 * r + 1),
            2 * r + 1 - i,
            i,
            z.pow(2 * i - 1 - 2 * r),
        );
        (lhs, rhs)
    };
    let mut out = Vec::new();
    for r in 2i64..=3 {
        for i in 1..=r {
            let samples = vec![("z=2", cm(2)), ("z=3", cm(3)), ("z=1/2", cf(1, 2))];
            out.push(record(
                &format!("bilagm-r{r}i{i}"),
                "multilateral Andrews-Gordon sum, theta expansion",
                "z: monomial with z^2 != 1; pure q-powers z = q^j are poles \
                 of the right-hand theta quotient",
                60,
                samples
                    .into_iter()
                    .map(|(name, z)| {
                        let (lhs, rhs) = instance(r, i, &z);
                        sample(name, lhs, rhs)
                    })
                    .collect(),
            ));
        }
    }
    out
}

/// sum over the full cone of (-q^{1-2k_1}/z;q^2)_{k_1}
///   q^{2 sum k_j^2 + 2(k_i+...+k_{r-1})} z^{2 sum k_j}
///   / ((zq^2;q^2)_{k_{r-1}} prod (q^2;q^2)_{k_j-k_{j+1}})
///   = (-zq,1/z;q^2)/((z^2q^2,1/z^2;q^2)) (q^{4r};q^{4r})
///     * [ (z^{2r}q^{4r+1-2i}, z^{-2r}q^{2i-1}; q^{4r})
///         + z^{2i-1-2r} (swapped) ].
fn gg_theta_lattice() -> Vec<IdentityRecord> {
    let instance = |r: i64, i: i64, z: &Monomial| {
        let d = (r - 1) as usize;
        let lhs = SideExpr::sum(over_diff_chain(
            bases_all(
                SumSpec::new(d, IndexDomain::AllIntegers)
                    .q_exp(diag(d, 2, &tail_linear(d, 0, i, 2), 0)),
                &z.pow(2),
            )
            .times(head_factor(&z.inv().neg().mul(&qm(1)), -2, 2, d))
            .over(fpoch_m(&z.mul(&qm(2)), 2, k(d - 1, d))),
            2,
        ));
        let rhs = theta_pair(
            ipm(&[z.neg().mul(&qm(1)), z.inv()], 2),
            ipm(&[z.pow(2).mul(&qm(2)), z.pow(-2)], 2),
            4 * r,
            &z.pow(2 * r),
            4 * r + 1 - 2 * i,
            2 * i - 1,
            z.pow(2 * i - 1 - 2 * r),
        );
        (lhs, rhs)
    };
    let mut out = Vec::new();
    for r in 2i64..=3 {
        for i in 1..=r {
            let samples = vec![("z=2", cm(2)), ("z=3", cm(3)), ("z=1/2", cf(1, 2))];
            out.push(record(
                &format!("bilaggm-r{r}i{i}"),
                "multilateral Gollnitz-Gordon sum, theta expansion",
                "z: monomial with z^2 != 1; pure q-powers z = q^j are poles \
                 of the right-hand theta quotient",
                60,
                samples
                    .into_iter()
                    .map(|(name, z)| {
                        let (lhs, rhs) = instance(r, i, &z);
                        sample(name, lhs, rhs)
                    })
                    .collect(),
            ));
        }
    }
    out
}

// ---- mod (2r+1)^2 and mod 8r^2 product specializations ----

/// The q-power specializations of the full-cone theta expansion above, in
/// base q^{2r+1}: variant (a) carries the linear weight -2i and closes to
///   (q^i;q^{2r+1})(q^{2i(2r+1)},q^{(2r+1-2i)(2r+1)},q^{(2r+1)^2};q^{(2r+1)^2})
///     / (q^{2i},q^{2r+1-2i};q^{2r+1}),
/// variant (b) carries -2(2r+1-i), a prefactor q^{(i-1)(2r+1-2i)}, and the
/// same product with (q^{2r+1-i};q^{2r+1}) in front.
fn rr_mod_squared() -> Vec<IdentityRecord> {
    let mut out = Vec::new();
    let b = |r: i64| 2 * r + 1;
    for r in 2i64..=3 {
        for i in 1..=r {
            let d = (r - 1) as usize;
            let trio = ip(&[2 * i * b(r), (b(r) - 2 * i) * b(r), b(r) * b(r)], b(r) * b(r));
            let denom = ip(&[2 * i, b(r) - 2 * i], b(r));
            let lhs_a = SideExpr::sum(over_diff_chain(
                SumSpec::new(d, IndexDomain::AllIntegers)
                    .q_exp(diag(d, b(r), &tail_linear(d, -2 * i, i, b(r)), 0))
                    .over(fpoch(rat(1), b(r) - i, b(r), k(d - 1, d))),
                b(r),
            ));
            let rhs_a = SideExpr::product(product(
                [ip(&[i], b(r)), trio.clone()].concat(),
                denom.clone(),
            ));
            out.push(fixed(
                &format!("agsq-a-r{r}i{i}"),
                "multilateral Rogers-Ramanujan series, mod (2r+1)^2 product (a)",
                60,
                lhs_a,
                rhs_a,
            ));
            let lhs_b = SideExpr::sum(over_diff_chain(
                SumSpec::new(d, IndexDomain::AllIntegers)
                    .q_exp(diag(
                        d,
                        b(r),
                        &tail_linear(d, -2 * (b(r) - i), i, b(r)),
                        (i - 1) * (b(r) - 2 * i),
                    ))
                    .over(fpoch(rat(1), i, b(r), k(d - 1, d))),
                b(r),
            ));
            let rhs_b = SideExpr::product(product(
                [ip(&[b(r) - i], b(r)), trio].concat(),
                denom,
            ));
            out.push(fixed(
                &format!("agsq-b-r{r}i{i}"),
                "multilateral Rogers-Ramanujan series, mod (2r+1)^2 product (b)",
                60,
                lhs_b,
                rhs_b,
            ));
        }
    }
    out
}

/// The q-power specializations of the Gollnitz-Gordon theta expansion, in
/// base q^{2r}: variant (a) with head (-q^{2r-1+2i-4rk_1};q^{4r})_{k_1} and
/// weight -2(2i-1), variant (b) with head exponent 2r+1-2i, weight +2(2i-1),
/// and prefactor q^{2(2i-1)(r-i)}; both close to mod 8r^2 products.
fn gg_mod_squared() -> Vec<IdentityRecord> {
    let mut out = Vec::new();
    for r in 2i64..=3 {
        for i in 1..=r {
            let d = (r - 1) as usize;
            let trio = ip(
                &[4 * r * (2 * i - 1), 4 * r * (2 * r + 1 - 2 * i), 8 * r * r],
                8 * r * r,
            );
            let lhs_a = SideExpr::sum(over_diff_chain(
                SumSpec::new(d, IndexDomain::AllIntegers)
                    .q_exp(diag(d, 4 * r, &tail_linear(d, -2 * (2 * i - 1), i, 4 * r), 0))
                    .times(head_factor(&qm(2 * r - 1 + 2 * i).neg(), -4 * r, 4 * r, d))
                    .over(fpoch(rat(1), 4 * r + 1 - 2 * i, 4 * r, k(d - 1, d))),
                4 * r,
            ));
            let rhs_a = SideExpr::product(product(
                [ip(&[2 * i - 1], 4 * r), trio.clone()].concat(),
                [
                    ip(&[2 * (2 * i - 1), 2 * r + 1 - 2 * i], 4 * r),
                    ip(&[2 * (4 * r + 1 - 2 * i)], 8 * r),
                ]
                .concat(),
            ));
            out.push(fixed(
                &format!("aggsq-a-r{r}i{i}"),
                "multilateral Gollnitz-Gordon series, mod 8r^2 product (a)",
                60,
                lhs_a,
                rhs_a,
            ));
            let lhs_b = SideExpr::sum(over_diff_chain(
                SumSpec::new(d, IndexDomain::AllIntegers)
                    .q_exp(diag(
                        d,
                        4 * r,
                        &tail_linear(d, 2 * (2 * i - 1), i, 4 * r),
                        2 * (2 * i - 1) * (r - i),
                    ))
                    .times(head_factor(&qm(2 * r + 1 - 2 * i).neg(), -4 * r, 4 * r, d))
                    .over(fpoch(rat(1), 2 * i - 1, 4 * r, klin(1, d - 1, 1, d))),
                4 * r,
            ));
            let rhs_b = SideExpr::product(product(
                [ip(&[4 * r + 1 - 2 * i], 4 * r), trio].concat(),
                [
                    ip(&[2 * r - 1 + 2 * i, 2 * (2 * r + 1 - 2 * i)], 4 * r),
                    ip(&[2 * (2 * i - 1)], 8 * r),
                ]
                .concat(),
            ));
            out.push(fixed(
                &format!("aggsq-b-r{r}i{i}"),
                "multilateral Gollnitz-Gordon series, mod 8r^2 product (b)",
                60,
                lhs_b,
                rhs_b,
            ));
        }
    }
    out
}

// ---- even modulus lattice sum ----

/// sum over the full cone of q^{sum k_j^2} z^{sum k_j}
///   / ((zq^2;q^2)_{k_{r-1}} prod (q;q)_{k_j-k_{j+1}})
///   = (q;q^2)(z^r q^r, z^{-r} q^r, q^{2r}; q^{2r}) / ((zq;q)(q/z;q^2)).
fn even_modulus_lattice() -> Vec<IdentityRecord> {
    let instance = |r: i64, z: &Monomial| {
        let d = (r - 1) as usize;
        let lhs = SideExpr::sum(over_diff_chain(
            bases_all(
                SumSpec::new(d, IndexDomain::AllIntegers).q_exp(diag(d, 1, &vec![0; d], 0)),
                z,
            )
            .over(fpoch_m(&z.mul(&qm(2)), 2, k(d - 1, d))),
            1,
        ));
        let rhs = SideExpr::product(product(
            [
                ip(&[1], 2),
                ipm(
                    &[z.pow(r).mul(&qm(r)), z.pow(-r).mul(&qm(r)), qm(2 * r)],
                    2 * r,
                ),
            ]
            .concat(),
            [ipm(&[z.mul(&qm(1))], 1), ipm(&[z.inv().mul(&qm(1))], 2)].concat(),
        ));
        (lhs, rhs)
    };
    (2i64..=3)
        .map(|r| {
            let samples = vec![
                ("z=1", cm(1)),
                ("z=2", cm(2)),
                ("z=1/2", cf(1, 2)),
                ("z=q^2", qm(2)),
            ];
            record(
                &format!("brx-r{r}"),
                "multilateral even modulus sum, mod 2r theta product",
                "z: nonzero monomial; z = q^j with j odd puts a unit argument \
                 in a denominator product",
                60,
                samples
                    .into_iter()
                    .map(|(name, z)| {
                        let (lhs, rhs) = instance(r, &z);
                        sample(name, lhs, rhs)
                    })
                    .collect(),
            )
        })
        .collect()
}

// ---- Cauchy and Jackson style lattice sums ----

/// sum over the full cone of (-q^{1-k_1}/z;q)_{k_1} q^{sum k_j(k_j-1)}
///   z^{2 sum k_j} / ((z^2q;q^2)_{k_{r-1}} prod (q;q)_{k_j-k_{j+1}})
///   = (-z;q)(q;q^2)(z^{2r-1},z^{1-2r}q^{2r-1},q^{2r-1};q^{2r-1})
///     / ((z^2;q)(q^2/z^2;q^2)).
fn cauchy_odd_mod() -> Vec<IdentityRecord> {
    let instance = |r: i64, z: &Monomial| {
        let d = (r - 1) as usize;
        let lhs = SideExpr::sum(over_diff_chain(
            bases_all(
                SumSpec::new(d, IndexDomain::AllIntegers).q_exp(diag(d, 1, &vec![-1; d], 0)),
                &z.pow(2),
            )
            .times(head_factor(&z.inv().neg().mul(&qm(1)), -1, 1, d))
            .over(fpoch_m(&z.pow(2).mul(&qm(1)), 2, k(d - 1, d))),
            1,
        ));
        let rhs = SideExpr::product(product(
            [
                ipm(&[z.neg()], 1),
                ip(&[1], 2),
                ipm(
                    &[
                        z.pow(2 * r - 1),
                        z.pow(1 - 2 * r).mul(&qm(2 * r - 1)),
                        qm(2 * r - 1),
                    ],
                    2 * r - 1,
                ),
            ]
            .concat(),
            [ipm(&[z.pow(2)], 1), ipm(&[z.pow(-2).mul(&qm(2))], 2)].concat(),
        ));
        (lhs, rhs)
    };
    (2i64..=3)
        .map(|r| {
            let samples = vec![
                ("z=2", cm(2)),
                ("z=-1/2", cf(-1, 2)),
                ("z=2q", cm(2).mul(&qm(1))),
            ];
            record(
                &format!("mcc-b-r{r}"),
                "multilateral Cauchy identity, odd modulus product",
                "z: nonzero monomial with z^2 != 1; pure q-powers are poles \
                 of the right-hand quotient",
                60,
                samples
                    .into_iter()
                    .map(|(name, z)| {
                        let (lhs, rhs) = instance(r, &z);
                        sample(name, lhs, rhs)
                    })
                    .collect(),
            )
        })
        .collect()
}

/// sum over the full cone of (-q^{2-2k_1}/z;q^2)_{k_1} q^{2 sum k_j^2}
///   z^{2 sum k_j} / ((zq;q)_{2k_{r-1}} prod (q^2;q^2)_{k_j-k_{j+1}})
///   = (q/z;q)(-zq^2;q^2)(-z^{2r-1}q^{2r-1},-z^{1-2r}q^{2r-1},q^{4r-2};q^{4r-2})
///     / (z^2q^2,q^2/z^2,q;q^2).
fn cauchy_even_mod() -> Vec<IdentityRecord> {
    let instance = |r: i64, z: &Monomial| {
        let d = (r - 1) as usize;
        let lhs = SideExpr::sum(over_diff_chain(
            bases_all(
                SumSpec::new(d, IndexDomain::AllIntegers).q_exp(diag(d, 2, &vec![0; d], 0)),
                &z.pow(2),
            )
            .times(head_factor(&z.inv().neg().mul(&qm(2)), -2, 2, d))
            .over(fpoch_m(&z.mul(&qm(1)), 1, klin(2, d - 1, 0, d))),
            2,
        ));
        let rhs = SideExpr::product(product(
            [
                ipm(&[z.inv().mul(&qm(1))], 1),
                ipm(&[z.neg().mul(&qm(2))], 2),
                ipm(
                    &[
                        z.pow(2 * r - 1).neg().mul(&qm(2 * r - 1)),
                        z.pow(1 - 2 * r).neg().mul(&qm(2 * r - 1)),
                        qm(4 * r - 2),
                    ],
                    4 * r - 2,
                ),
            ]
            .concat(),
            ipm(&[z.pow(2).mul(&qm(2)), z.pow(-2).mul(&qm(2)), qm(1)], 2),
        ));
        (lhs, rhs)
    };
    (2i64..=3)
        .map(|r| {
            let samples = vec![
                ("z=1", cm(1)),
                ("z=-1", cm(-1)),
                ("z=2", cm(2)),
                ("z=2q", cm(2).mul(&qm(1))),
            ];
            record(
                &format!("mcc-a-r{r}"),
                "multilateral Cauchy identity, mod 4r-2 product",
                "z: nonzero monomial; pure q-powers put a unit argument in \
                 the denominator theta and are poles",
                60,
                samples
                    .into_iter()
                    .map(|(name, z)| {
                        let (lhs, rhs) = instance(r, &z);
                        sample(name, lhs, rhs)
                    })
                    .collect(),
            )
        })
        .collect()
}

/// sum over the full cone of (-q^{2-2k_1}/z;q^2)_{k_1} q^{2 sum k_j(k_j-1)}
///   z^{2 sum k_j} / ((z;q)_{2k_{r-1}} prod (q^2;q^2)_{k_j-k_{j+1}})
///   = (q/z;q)(-z;q^2)/(z^2,q^2/z^2,q;q^2) (q^{4r-2};q^{4r-2})
///     * [ (-z^{2r-1}q, -z^{1-2r}q^{4r-3}; q^{4r-2}) + z^{2r-2} (swapped) ].
fn cauchy_even_mod_two_term() -> Vec<IdentityRecord> {
    let instance = |r: i64, z: &Monomial| {
        let d = (r - 1) as usize;
        let lhs = SideExpr::sum(over_diff_chain(
            bases_all(
                SumSpec::new(d, IndexDomain::AllIntegers).q_exp(diag(d, 2, &vec![-2; d], 0)),
                &z.pow(2),
            )
            .times(head_factor(&z.inv().neg().mul(&qm(2)), -2, 2, d))
            .over(fpoch_m(z, 1, klin(2, d - 1, 0, d))),
            2,
        ));
        let rhs = theta_pair(
            [ipm(&[z.inv().mul(&qm(1))], 1), ipm(&[z.neg()], 2)].concat(),
            ipm(&[z.pow(2), z.pow(-2).mul(&qm(2)), qm(1)], 2),
            4 * r - 2,
            &z.pow(2 * r - 1).neg(),
            1,
            4 * r - 3,
            z.pow(2 * r - 2),
        );
        (lhs, rhs)
    };
    (2i64..=3)
        .map(|r| {
            let samples = vec![
                ("z=2", cm(2)),
                ("z=-2", cm(-2)),
                ("z=1/2", cf(1, 2)),
                ("z=2q", cm(2).mul(&qm(1))),
            ];
            record(
                &format!("mcc-a2-r{r}"),
                "multilateral Cauchy identity, mod 4r-2 theta expansion",
                "z: nonzero monomial with z^2 != 1; pure q-powers are poles \
                 of the right-hand quotient",
                60,
                samples
                    .into_iter()
                    .map(|(name, z)| {
                        let (lhs, rhs) = instance(r, &z);
                        sample(name, lhs, rhs)
                    })
                    .collect(),
            )
        })
        .collect()
}

/// sum over the full cone of q^{2 sum k_j^2} z^{2 sum k_j}
///   / ((z;q)_{1+2k_{r-1}} prod (q^2;q^2)_{k_j-k_{j+1}})
///   = (q/z;q)(q^{4r};q^{4r})/(z^2,q^2/z^2,q;q^2)
///     * [ (-z^{2r}q^{2r-1}, -z^{-2r}q^{2r+1}; q^{4r}) + z (swapped) ].
fn jackson_mod_4r() -> Vec<IdentityRecord> {
    let instance = |r: i64, z: &Monomial| {
        let d = (r - 1) as usize;
        let lhs = SideExpr::sum(over_diff_chain(
            bases_all(
                SumSpec::new(d, IndexDomain::AllIntegers).q_exp(diag(d, 2, &vec![0; d], 0)),
                &z.pow(2),
            )
            .over(fpoch_m(z, 1, klin(2, d - 1, 1, d))),
            2,
        ));
        let rhs = theta_pair(
            ipm(&[z.inv().mul(&qm(1))], 1),
            ipm(&[z.pow(2), z.pow(-2).mul(&qm(2)), qm(1)], 2),
            4 * r,
            &z.pow(2 * r).neg(),
            2 * r - 1,
            2 * r + 1,
            z.clone(),
        );
        (lhs, rhs)
    };
    (2i64..=3)
        .map(|r| {
            let samples = vec![
                ("z=2", cm(2)),
                ("z=-2", cm(-2)),
                ("z=1/2", cf(1, 2)),
                ("z=2q", cm(2).mul(&qm(1))),
            ];
            record(
                &format!("mjac-r{r}"),
                "multilateral Jackson-type sum, mod 4r theta expansion",
                "z: nonzero monomial with z^2 != 1; pure q-powers are poles \
                 of the right-hand quotient",
                60,
                samples
                    .into_iter()
                    .map(|(name, z)| {
                        let (lhs, rhs) = instance(r, &z);
                        sample(name, lhs, rhs)
                    })
                    .collect(),
            )
        })
        .collect()
}

/// The two q-power limits of the sum above, for delta = 0, 1:
/// sum over the full cone of q^{2 sum k_j(k_j+delta)}
///   / ((q;q)_{delta+2k_{r-1}} prod (q^2;q^2)_{k_j-k_{j+1}})
///   = (-q^{2r(1+delta)-1},-q^{2r(1-delta)+1},q^{4r};q^{4r})/(q^2;q^2).
/// Terms with delta + 2k_{r-1} < 0 vanish against (q;q) of negative length.
fn jackson_products() -> Vec<IdentityRecord> {
    let mut out = Vec::new();
    for delta in 0i64..=1 {
        for r in 2i64..=3 {
            let d = (r - 1) as usize;
            let lhs = SideExpr::sum(over_diff_chain(
                SumSpec::new(d, IndexDomain::AllIntegers)
                    .q_exp(diag(d, 2, &vec![2 * delta; d], 0))
                    .over(fpoch(rat(1), 1, 1, klin(2, d - 1, delta, d))),
                2,
            ));
            let rhs = SideExpr::product(product(
                ipm(
                    &[
                        qm(2 * r * (1 + delta) - 1).neg(),
                        qm(2 * r * (1 - delta) + 1).neg(),
                        qm(4 * r),
                    ],
                    4 * r,
                ),
                ip(&[2], 2),
            ));
            let form = if delta == 0 { "first" } else { "second" };
            out.push(fixed(
                &format!("mjack{}-r{r}", delta + 1),
                &format!("multilateral Jackson sum, mod 4r product ({form} form)"),
                60,
                lhs,
                rhs,
            ));
        }
    }
    out
}

// ---- two-sided mod 2(2r-1) and mod 8r^2 summations ----

/// With s = 2r-1, the pair
///   sum (q^{1-2sk_1};q^{2s})_{k_1} q^{2s sum k_j^2 + 4(r-1) sum k_j}
///     / ((-q^{2r-2};q^s)_{1+2k_{r-1}} prod (q^{2s};q^{2s})_{k_j-k_{j+1}})
///   = (q^{4r-3};q^{2s})(q^{2s},q^{4(r-1)s},q^{2s^2};q^{2s^2})
///     / ((q;q^s)(q^s,q^{4(r-1)};q^{2s}))
/// and its companion with head exponent 4r-3, weight -4(r-1), denominator
/// (-q;q^s)_{2k_{r-1}}, and numerator (q;q^{2s}).
fn mod_twice_odd_sums() -> Vec<IdentityRecord> {
    let mut out = Vec::new();
    for r in 2i64..=3 {
        let d = (r - 1) as usize;
        let s = 2 * r - 1;
        let trio = ip(&[2 * s, 4 * (r - 1) * s, 2 * s * s], 2 * s * s);
        let lhs_1 = SideExpr::sum(over_diff_chain(
            SumSpec::new(d, IndexDomain::AllIntegers)
                .q_exp(diag(d, 2 * s, &vec![4 * (r - 1); d], 0))
                .times(head_factor(&qm(1), -2 * s, 2 * s, d))
                .over(fpoch(rat(-1), 2 * r - 2, s, klin(2, d - 1, 1, d))),
            2 * s,
        ));
        let rhs_1 = SideExpr::product(product(
            [ip(&[4 * r - 3], 2 * s), trio.clone()].concat(),
            [ip(&[1], s), ip(&[s, 4 * (r - 1)], 2 * s)].concat(),
        ));
        out.push(fixed(
            &format!("mcs-1-r{r}"),
            "multilateral mod 2(2r-1) summation (1)",
            60,
            lhs_1,
            rhs_1,
        ));
        let lhs_2 = SideExpr::sum(over_diff_chain(
            SumSpec::new(d, IndexDomain::AllIntegers)
                .q_exp(diag(d, 2 * s, &vec![-4 * (r - 1); d], 0))
                .times(head_factor(&qm(4 * r - 3), -2 * s, 2 * s, d))
                .over(fpoch(rat(-1), 1, s, klin(2, d - 1, 0, d))),
            2 * s,
        ));
        let rhs_2 = SideExpr::product(product(
            [ip(&[1], 2 * s), trio].concat(),
            [ip(&[2 * (r - 1)], s), ip(&[2, s], 2 * s)].concat(),
        ));
        out.push(fixed(
            &format!("mcs-2-r{r}"),
            "multilateral mod 2(2r-1) summation (2)",
            60,
            lhs_2,
            rhs_2,
        ));
    }
    out
}

/// Four parameter-free companions with exponent 4r sum k_j^2
///   +- 2(2r-1) sum k_j, two denominator factors on the last index, and
/// mod 8r^2 products on the right; at r = 2 they collapse to the bilateral
/// mod 32 summations.
fn jackson_mod_squared() -> Vec<IdentityRecord> {
    struct Shape {
        tag: i64,
        sign: i64,
        // plain and negated denominator factors on k_{r-1}: argument
        // exponent as a multiple of r plus a constant, and the length shift
        den_plain: (i64, i64, i64),
        den_neg: (i64, i64, i64),
        numer: [(i64, i64); 2],
        den_4r: [(i64, i64); 2],
        den_8r: [(i64, i64); 2],
    }
    // exponents are c0 + c1*r read off the four printed forms
    let shapes = [
        Shape {
            tag: 1,
            sign: -1,
            den_plain: (1, 0, 0),
            den_neg: (1, 2, 0),
            numer: [(0, 2), (-1, 4)],
            den_4r: [(2, 0), (-1, 2)],
            den_8r: [(0, 4), (-2, 8)],
        },
        Shape {
            tag: 3,
            sign: 1,
            den_plain: (-1, 2, 1),
            den_neg: (-1, 4, 0),
            numer: [(0, 2), (1, 2)],
            den_4r: [(1, 0), (-2, 4)],
            den_8r: [(0, 4), (2, 4)],
        },
        Shape {
            tag: 5,
            sign: -1,
            den_plain: (1, 2, 0),
            den_neg: (1, 0, 0),
            numer: [(-1, 2), (0, 2)],
            den_4r: [(2, 0), (-1, 4)],
            den_8r: [(-2, 4), (0, 4)],
        },
        Shape {
            tag: 7,
            sign: 1,
            den_plain: (-1, 4, 0),
            den_neg: (-1, 2, 1),
            numer: [(1, 0), (0, 2)],
            den_4r: [(1, 2), (-2, 4)],
            den_8r: [(2, 0), (0, 4)],
        },
    ];
    let e = |(c0, c1): (i64, i64), r: i64| c0 + c1 * r;
    let mut out = Vec::new();
    for r in 2i64..=3 {
        let d = (r - 1) as usize;
        for sh in &shapes {
            let lhs = SideExpr::sum(over_diff_chain(
                SumSpec::new(d, IndexDomain::AllIntegers)
                    .q_exp(diag(d, 4 * r, &vec![sh.sign * 2 * (2 * r - 1); d], 0))
                    .over(fpoch(
                        rat(1),
                        sh.den_plain.0 + sh.den_plain.1 * r,
                        4 * r,
                        klin(1, d - 1, sh.den_plain.2, d),
                    ))
                    .over(fpoch(
                        rat(-1),
                        sh.den_neg.0 + sh.den_neg.1 * r,
                        4 * r,
                        klin(1, d - 1, sh.den_neg.2, d),
                    )),
                4 * r,
            ));
            let rhs = SideExpr::product(product(
                [
                    ip(&[e(sh.numer[0], r), e(sh.numer[1], r)], 4 * r),
                    ip(&[4 * r, 4 * r * (2 * r - 1), 8 * r * r], 8 * r * r),
                ]
                .concat(),
                [
                    ip(&[e(sh.den_4r[0], r), e(sh.den_4r[1], r)], 4 * r),
                    ip(&[e(sh.den_8r[0], r), e(sh.den_8r[1], r)], 8 * r),
                ]
                .concat(),
            ));
            out.push(fixed(
                &format!("mjacs-{}-r{r}", sh.tag),
                &format!("multilateral mod 8r^2 summation ({})", sh.tag),
                60,
                lhs,
                rhs,
            ));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::verify_sample;
    use crate::sums::EngineConfig;

    fn pass_all(rec: &IdentityRecord, order: i64) {
        let cfg = EngineConfig::default();
        for s in &rec.samples {
            let report = verify_sample(rec, s, order, &cfg);
            assert!(
                report.verdict.is_pass(),
                "{} / {}: {:?}",
                rec.id,
                s.name,
                report.verdict
            );
        }
    }

    #[test]
    fn triple_sums_on_the_nonnegative_cone_pass() {
        // r = 4 sends all three unilateral families through the
        // three-dimensional box scan.
        for rec in [andrews_gordon(), gollnitz_gordon_analogue(), even_modulus()].concat() {
            if rec.id.ends_with("r4i2") {
                pass_all(&rec, 25);
            }
        }
    }

    #[test]
    fn even_modulus_r2_cases_match_their_euler_products() {
        // For r = 2 the even modulus multisum degenerates to the two Euler
        // summations sum q^{k^2}/(q^2;q^2)_k = (-q;q^2) and
        // sum q^{k(k+1)}/(q^2;q^2)_k = (-q^2;q^2), an oracle independent of
        // the record's own right side.
        let cfg = EngineConfig::default();
        let recs = even_modulus();
        for (i, e) in [(2i64, 1i64), (1, 2)] {
            let rec = recs.iter().find(|r| r.id == format!("brm-r2i{i}")).unwrap();
            let (got, _) = rec.samples[0].lhs.eval(30, &cfg).unwrap();
            let euler = SideExpr::product(product(ipm(&[qm(e).neg()], 2), vec![]));
            let (want, _) = euler.eval(30, &cfg).unwrap();
            let (_, diff) = want.first_difference(&got);
            assert!(diff.is_none(), "{}: {:?}", rec.id, diff);
        }
    }

    #[test]
    fn lattice_collapse_at_unit_z_matches_the_nonnegative_cone() {
        // At z = 1 every term of the even modulus lattice sum with
        // k_{r-1} < 0 dies against (q^2;q^2) of negative length, so the
        // r = 3 record must reproduce the i = 3 multisum termwise.
        let cfg = EngineConfig::default();
        let lattice = even_modulus_lattice();
        let cone = even_modulus();
        let brx = lattice.iter().find(|r| r.id == "brx-r3").unwrap();
        let brm = cone.iter().find(|r| r.id == "brm-r3i3").unwrap();
        let z1 = brx.samples.iter().find(|s| s.name == "z=1").unwrap();
        let (got, _) = z1.lhs.eval(30, &cfg).unwrap();
        let (want, _) = brm.samples[0].lhs.eval(30, &cfg).unwrap();
        let (_, diff) = want.first_difference(&got);
        assert!(diff.is_none(), "{:?}", diff);
    }
}
