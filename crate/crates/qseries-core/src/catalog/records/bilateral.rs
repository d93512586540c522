//! Two-sided series summed over all integers: bilateral Rogers-Ramanujan and
//! Gollnitz-Gordon sums with theta-quotient closed forms, the mod 25 and
//! mod 32 product identities they specialize to at q-power arguments, an
//! averaged bilateral sum with a mod 20 product, bilateral Cauchy and
//! Jackson style expansions, and two-sided mod 6 summations.

use crate::coeff::{frac, rat};
use crate::forms::QuadraticForm;
use crate::monomial::Monomial;
use crate::sums::{IndexDomain, SumSpec};

use super::super::{IdentityRecord, SideExpr, SideTerm};
use super::*;

pub(super) fn records() -> Vec<IdentityRecord> {
    let mut out = Vec::new();
    out.push(rr_theta(1));
    out.push(rr_theta(2));
    out.push(theta_average());
    out.extend(rr_mod25());
    out.push(gg_theta(1));
    out.push(gg_theta(2));
    out.extend(gg_mod32());
    out.push(cauchy_mod6());
    out.push(cauchy_mod3());
    out.push(cauchy_mod6_two_term());
    out.push(jackson_mod8());
    out.extend(mod6_sums());
    out.extend(mod6_sums_reversed());
    out.extend(jackson_mod32());
    out
}

// ---- bilateral Rogers-Ramanujan sums ----

/// sum_{k in Z} q^{b*k^2} z^{2k}/(zq^b;q^b)_k  (part 1), or the same sum
/// with exponent b*k(k+1) (part 2).
fn rr_theta_lhs(z: &Monomial, b: i64, part: u8) -> SideExpr {
    let lin = if part == 1 { 0 } else { b };
    SideExpr::sum(
        SumSpec::new(1, IndexDomain::AllIntegers)
            .q_exp(QuadraticForm::poly1(rat(b), rat(lin), rat(0)))
            .base(0, z.pow(2))
            .over(fpoch_m(&z.mul(&qm(b)), b, k(0, 1))),
    )
}

/// The matching closed form: a theta quotient in z times a two-term
/// combination of mod 5b theta products,
///   (1/z;q^b)/((1/z^2;q^b)(z^2 q^b;q^b)) (q^{5b};q^{5b})
///     * [ (z^5 q^{3b}, z^{-5} q^{2b}; q^{5b}) + z^{-1} (swapped) ]
/// for part 1; part 2 carries exponents (4b, b) and prefactor z^{-3}.
fn rr_theta_rhs(z: &Monomial, b: i64, part: u8) -> SideExpr {
    let ((u1, v1), shift) = if part == 1 { ((3, 2), -1) } else { ((4, 1), -3) };
    let term = |pref: Monomial, u: i64, v: i64| {
        SideTerm::product(scaled_product(
            pref,
            [
                ipm(&[z.inv()], b),
                ip(&[5 * b], 5 * b),
                ipm(&[z.pow(5).mul(&qm(u * b)), z.pow(-5).mul(&qm(v * b))], 5 * b),
            ]
            .concat(),
            ipm(&[z.pow(-2), z.pow(2).mul(&qm(b))], b),
        ))
    };
    SideExpr::of(vec![term(Monomial::one(), u1, v1), term(z.pow(shift), v1, u1)])
}

fn rr_theta(part: u8) -> IdentityRecord {
    let (id, citation) = match part {
        1 => ("bilrrg-1", "bilateral Rogers-Ramanujan sum, theta expansion (first form)"),
        _ => ("bilrrg-2", "bilateral Rogers-Ramanujan sum, theta expansion (second form)"),
    };
    let samples: Vec<(&str, Monomial, i64)> = match part {
        1 => vec![
            ("z=2,b=1", cm(2), 1),
            ("z=3,b=1", cm(3), 1),
            ("z=1/2,b=1", cf(1, 2), 1),
            ("z=q^-3,b=5", qm(-3), 5),
            ("z=q^-2,b=5", qm(-2), 5),
        ],
        _ => vec![
            ("z=2,b=1", cm(2), 1),
            ("z=3,b=1", cm(3), 1),
            ("z=1/2,b=1", cf(1, 2), 1),
            ("z=q^-4,b=5", qm(-4), 5),
            ("z=q^-1,b=5", qm(-1), 5),
        ],
    };
    record(
        id,
        citation,
        "z: monomial with z^2 != 1; b: positive base exponent. Pure q-powers \
         z = q^j need a rebased b (j not divisible by b), otherwise a unit \
         argument lands in the denominator quotient and the side is a pole.",
        120,
        samples
            .into_iter()
            .map(|(name, z, b)| sample(name, rr_theta_lhs(&z, b, part), rr_theta_rhs(&z, b, part)))
            .collect(),
    )
}

/// (1/2)[g(z) + g(-z)] for g(z) = (-z;q) sum_{k in Z} q^{k(k-1)} z^{2k}/(-z;q)_k,
/// closing to (q^2, -z^2, -q^2/z^2; q^2)/((q;q^2)(q^4,q^16;q^20)).
fn theta_average() -> IdentityRecord {
    let instance = |z: Monomial| {
        let half = |w: &Monomial| {
            SideTerm::scaled_sum(
                scaled_product(cf(1, 2), ipm(&[w.neg()], 1), vec![]),
                SumSpec::new(1, IndexDomain::AllIntegers)
                    .q_exp(QuadraticForm::poly1(rat(1), rat(-1), rat(0)))
                    .base(0, w.pow(2))
                    .over(fpoch_m(&w.neg(), 1, k(0, 1))),
            )
        };
        let lhs = SideExpr::of(vec![half(&z), half(&z.neg())]);
        let rhs = SideExpr::product(product(
            ipm(&[qm(2), z.pow(2).neg(), z.pow(-2).neg().mul(&qm(2))], 2),
            [ipm(&[qm(1)], 2), ip(&[4, 16], 20)].concat(),
        ));
        (lhs, rhs)
    };
    let samples = vec![
        ("z=q", qm(1)),
        ("z=2", cm(2)),
        ("z=q^2", qm(2)),
        ("z=1/2", cf(1, 2)),
    ];
    record(
        "remga",
        "averaged bilateral Lebesgue-type sum, mod 20 product",
        "z: any nonzero monomial; the average is even in z",
        120,
        samples
            .into_iter()
            .map(|(name, z)| {
                let (lhs, rhs) = instance(z);
                sample(name, lhs, rhs)
            })
            .collect(),
    )
}

/// The four mod 25 specializations of the bilateral Rogers-Ramanujan sums.
fn rr_mod25() -> Vec<IdentityRecord> {
    let lhs = |quad: (i64, i64, i64), e: i64| {
        SideExpr::sum(
            SumSpec::new(1, IndexDomain::AllIntegers)
                .q_exp(QuadraticForm::poly1(rat(quad.0), rat(quad.1), rat(quad.2)))
                .over(fpoch(rat(1), e, 5, k(0, 1))),
        )
    };
    let rhs = |e: i64, theta: [i64; 3], d: [i64; 2]| {
        SideExpr::product(product(
            [ip(&[e], 5), ip(&theta, 25)].concat(),
            ip(&d, 5),
        ))
    };
    vec![
        // sum q^{k(5k-3)}/(q;q^5)_k = (q^4;q^5)(q^10,q^15,q^25;q^25)/(q^2,q^3;q^5)
        fixed(
            "bilrr-a",
            "bilateral Rogers-Ramanujan series, mod 25 product (a)",
            200,
            lhs((5, -3, 0), 1),
            rhs(4, [10, 15, 25], [2, 3]),
        ),
        // sum q^{(k-1)(5k-1)}/(q^2;q^5)_k = (q^3;q^5)(q^5,q^20,q^25;q^25)/(q,q^4;q^5)
        fixed(
            "bilrr-b",
            "bilateral Rogers-Ramanujan series, mod 25 product (b)",
            200,
            lhs((5, -6, 1), 2),
            rhs(3, [5, 20, 25], [1, 4]),
        ),
        // sum q^{k(5k-4)}/(q^3;q^5)_k = (q^2;q^5)(q^5,q^20,q^25;q^25)/(q,q^4;q^5)
        fixed(
            "bilrr-c",
            "bilateral Rogers-Ramanujan series, mod 25 product (c)",
            200,
            lhs((5, -4, 0), 3),
            rhs(2, [5, 20, 25], [1, 4]),
        ),
        // sum q^{k(5k+3)}/(q^4;q^5)_k = (q;q^5)(q^10,q^15,q^25;q^25)/(q^2,q^3;q^5)
        fixed(
            "bilrr-d",
            "bilateral Rogers-Ramanujan series, mod 25 product (d)",
            200,
            lhs((5, 3, 0), 4),
            rhs(1, [10, 15, 25], [2, 3]),
        ),
    ]
}

// ---- bilateral Gollnitz-Gordon sums ----

/// sum_{k in Z} (-zq^B;q^{2B})_k q^{B*k^2} z^k/(zq^{2B};q^{2B})_k  (part 1),
/// or exponent B*k(k+2) (part 2).
fn gg_theta_lhs(z: &Monomial, b: i64, part: u8) -> SideExpr {
    let lin = if part == 1 { 0 } else { 2 * b };
    SideExpr::sum(
        SumSpec::new(1, IndexDomain::AllIntegers)
            .q_exp(QuadraticForm::poly1(rat(b), rat(lin), rat(0)))
            .base(0, z.clone())
            .times(fpoch_m(&z.neg().mul(&qm(b)), 2 * b, k(0, 1)))
            .over(fpoch_m(&z.mul(&qm(2 * b)), 2 * b, k(0, 1))),
    )
}

/// Closed form: (-zq^B,1/z;q^{2B})/((z^2 q^{2B},1/z^2;q^{2B})) (q^{8B};q^{8B})
///   * [ (z^4 q^{5B}, z^{-4} q^{3B}; q^{8B}) + z^{-1} (swapped) ]  (part 1);
/// part 2 carries exponents (7B, B) and prefactor z^{-3}.
fn gg_theta_rhs(z: &Monomial, b: i64, part: u8) -> SideExpr {
    let ((u1, v1), shift) = if part == 1 { ((5, 3), -1) } else { ((7, 1), -3) };
    let term = |pref: Monomial, u: i64, v: i64| {
        SideTerm::product(scaled_product(
            pref,
            [
                ipm(&[z.neg().mul(&qm(b)), z.inv()], 2 * b),
                ip(&[8 * b], 8 * b),
                ipm(&[z.pow(4).mul(&qm(u * b)), z.pow(-4).mul(&qm(v * b))], 8 * b),
            ]
            .concat(),
            ipm(&[z.pow(2).mul(&qm(2 * b)), z.pow(-2)], 2 * b),
        ))
    };
    SideExpr::of(vec![term(Monomial::one(), u1, v1), term(z.pow(shift), v1, u1)])
}

fn gg_theta(part: u8) -> IdentityRecord {
    let (id, citation) = match part {
        1 => ("bilggg-1", "bilateral Gollnitz-Gordon sum, theta expansion (first form)"),
        _ => ("bilggg-2", "bilateral Gollnitz-Gordon sum, theta expansion (second form)"),
    };
    let samples: Vec<(&str, Monomial, i64)> = match part {
        1 => vec![
            ("z=2,b=1", cm(2), 1),
            ("z=3,b=1", cm(3), 1),
            ("z=1/2,b=1", cf(1, 2), 1),
            ("z=q^3,b=4", qm(3), 4),
            ("z=q^-3,b=4", qm(-3), 4),
        ],
        _ => vec![
            ("z=2,b=1", cm(2), 1),
            ("z=3,b=1", cm(3), 1),
            ("z=1/2,b=1", cf(1, 2), 1),
            ("z=q,b=4", qm(1), 4),
            ("z=q^-1,b=4", qm(-1), 4),
        ],
    };
    record(
        id,
        citation,
        "z: monomial with z^2 != 1; b: positive base exponent. Pure q-powers \
         z = q^j need a rebased b so that no unit theta argument lands in the \
         denominator.",
        120,
        samples
            .into_iter()
            .map(|(name, z, b)| sample(name, gg_theta_lhs(&z, b, part), gg_theta_rhs(&z, b, part)))
            .collect(),
    )
}

/// The four mod 32 specializations of the bilateral Gollnitz-Gordon sums.
fn gg_mod32() -> Vec<IdentityRecord> {
    let lhs = |num_e: i64, quad: (i64, i64, i64), den_e: i64, den_shift: i64| {
        SideExpr::sum(
            SumSpec::new(1, IndexDomain::AllIntegers)
                .q_exp(QuadraticForm::poly1(rat(quad.0), rat(quad.1), rat(quad.2)))
                .times(fpoch(rat(-1), num_e, 8, k(0, 1)))
                .over(fpoch(rat(1), den_e, 8, klin(1, 0, den_shift, 1))),
        )
    };
    let rhs = |e: i64, h: i64, d: [i64; 2], dh: i64| {
        SideExpr::product(product(
            [ip(&[e], 8), ip(&[h], 16), ip(&[32], 32)].concat(),
            [ip(&d, 8), ip(&[dh], 16)].concat(),
        ))
    };
    vec![
        // sum (-q^5;q^8)_k q^{(k+2)(4k+1)}/(q;q^8)_{k+1}
        //   = (q^7;q^8)(q^8;q^16)(q^32;q^32)/((q^5,q^6;q^8)(q^2;q^16))
        fixed(
            "bilgg-a",
            "bilateral Gollnitz-Gordon series, mod 32 product (a)",
            200,
            lhs(5, (4, 9, 2), 1, 1),
            rhs(7, 8, [5, 6], 2),
        ),
        // sum (-q^7;q^8)_k q^{k(4k+3)}/(q^3;q^8)_{k+1}
        //   = (q^5;q^8)(q^8;q^16)(q^32;q^32)/((q^2,q^7;q^8)(q^6;q^16))
        fixed(
            "bilgg-b",
            "bilateral Gollnitz-Gordon series, mod 32 product (b)",
            200,
            lhs(7, (4, 3, 0), 3, 1),
            rhs(5, 8, [2, 7], 6),
        ),
        // sum (-q;q^8)_k q^{k(4k-3)}/(q^5;q^8)_k
        //   = (q^3;q^8)(q^8;q^16)(q^32;q^32)/((q,q^6;q^8)(q^10;q^16))
        fixed(
            "bilgg-c",
            "bilateral Gollnitz-Gordon series, mod 32 product (c)",
            200,
            lhs(1, (4, -3, 0), 5, 0),
            rhs(3, 8, [1, 6], 10),
        ),
        // sum (-q^3;q^8)_k q^{k(4k+7)}/(q^7;q^8)_k
        //   = (q;q^8)(q^8;q^16)(q^32;q^32)/((q^2,q^3;q^8)(q^14;q^16))
        fixed(
            "bilgg-d",
            "bilateral Gollnitz-Gordon series, mod 32 product (d)",
            200,
            lhs(3, (4, 7, 0), 7, 0),
            rhs(1, 8, [2, 3], 14),
        ),
    ]
}

// ---- bilateral Cauchy and Jackson style sums ----

/// sum (-z;q^2)_k q^{k(k+1)} z^k/(zq;q)_{2k}
///   = (q/z;q)(-zq^2;q^2)(q^6,-z^3q^3,-q^3/z^3;q^6)/(z^2q^2,q^2/z^2,q;q^2).
fn cauchy_mod6() -> IdentityRecord {
    let instance = |z: Monomial| {
        let lhs = SideExpr::sum(
            SumSpec::new(1, IndexDomain::AllIntegers)
                .q_exp(QuadraticForm::poly1(rat(1), rat(1), rat(0)))
                .base(0, z.clone())
                .times(fpoch_m(&z.neg(), 2, k(0, 1)))
                .over(fpoch_m(&z.mul(&qm(1)), 1, klin(2, 0, 0, 1))),
        );
        let rhs = SideExpr::product(product(
            [
                ipm(&[z.inv().mul(&qm(1))], 1),
                ipm(&[z.neg().mul(&qm(2))], 2),
                ipm(
                    &[qm(6), z.pow(3).neg().mul(&qm(3)), z.pow(-3).neg().mul(&qm(3))],
                    6,
                ),
            ]
            .concat(),
            ipm(&[z.pow(2).mul(&qm(2)), z.pow(-2).mul(&qm(2)), qm(1)], 2),
        ));
        (lhs, rhs)
    };
    let samples = vec![
        ("z=1", cm(1)),
        ("z=-1", cm(-1)),
        ("z=2", cm(2)),
        ("z=2q", cm(2).mul(&qm(1))),
    ];
    record(
        "bilcc-a",
        "bilateral Cauchy identity, mod 6 product",
        "z: nonzero monomial; pure q-powers put a unit argument in the \
         denominator theta and are poles",
        120,
        samples
            .into_iter()
            .map(|(name, z)| {
                let (lhs, rhs) = instance(z);
                sample(name, lhs, rhs)
            })
            .collect(),
    )
}

/// sum (-z;q)_k q^{binom(k,2)} z^k/(z^2q;q^2)_k
///   = (-z;q)(q;q^2)(q^3,z^3,q^3/z^3;q^3)/((z^2;q)(q^2/z^2;q^2)).
fn cauchy_mod3() -> IdentityRecord {
    let instance = |z: Monomial| {
        let lhs = SideExpr::sum(
            SumSpec::new(1, IndexDomain::AllIntegers)
                .q_exp(QuadraticForm::poly1(frac(1, 2), frac(-1, 2), rat(0)))
                .base(0, z.clone())
                .times(fpoch_m(&z.neg(), 1, k(0, 1)))
                .over(fpoch_m(&z.pow(2).mul(&qm(1)), 2, k(0, 1))),
        );
        let rhs = SideExpr::product(product(
            [
                ipm(&[z.neg()], 1),
                ipm(&[qm(1)], 2),
                ipm(&[qm(3), z.pow(3), z.pow(-3).mul(&qm(3))], 3),
            ]
            .concat(),
            [ipm(&[z.pow(2)], 1), ipm(&[z.pow(-2).mul(&qm(2))], 2)].concat(),
        ));
        (lhs, rhs)
    };
    let samples = vec![
        ("z=2", cm(2)),
        ("z=-1/2", cf(-1, 2)),
        ("z=2q", cm(2).mul(&qm(1))),
    ];
    record(
        "bilcc-b",
        "bilateral Cauchy identity, mod 3 product",
        "z: nonzero monomial with z^2 != 1; pure q-powers are poles of the \
         right-hand quotient",
        120,
        samples
            .into_iter()
            .map(|(name, z)| {
                let (lhs, rhs) = instance(z);
                sample(name, lhs, rhs)
            })
            .collect(),
    )
}

/// sum (-z;q^2)_k q^{k(k-1)} z^k/(z;q)_{2k} = (q/z;q)(-z;q^2)/(z^2,q^2/z^2,q;q^2)
///   * (q^6;q^6) [ (-z^3q,-q^5/z^3;q^6) + z^2 (-z^3q^5,-q/z^3;q^6) ].
fn cauchy_mod6_two_term() -> IdentityRecord {
    let instance = |z: Monomial| {
        let lhs = SideExpr::sum(
            SumSpec::new(1, IndexDomain::AllIntegers)
                .q_exp(QuadraticForm::poly1(rat(1), rat(-1), rat(0)))
                .base(0, z.clone())
                .times(fpoch_m(&z.neg(), 2, k(0, 1)))
                .over(fpoch_m(&z, 1, klin(2, 0, 0, 1))),
        );
        let term = |pref: Monomial, u: i64, v: i64| {
            SideTerm::product(scaled_product(
                pref,
                [
                    ipm(&[z.inv().mul(&qm(1))], 1),
                    ipm(&[z.neg()], 2),
                    ip(&[6], 6),
                    ipm(&[z.pow(3).neg().mul(&qm(u)), z.pow(-3).neg().mul(&qm(v))], 6),
                ]
                .concat(),
                ipm(&[z.pow(2), z.pow(-2).mul(&qm(2)), qm(1)], 2),
            ))
        };
        let rhs = SideExpr::of(vec![term(Monomial::one(), 1, 5), term(z.pow(2), 5, 1)]);
        (lhs, rhs)
    };
    let samples = vec![
        ("z=2", cm(2)),
        ("z=-2", cm(-2)),
        ("z=1/2", cf(1, 2)),
        ("z=2q", cm(2).mul(&qm(1))),
    ];
    record(
        "bilcc-a2",
        "bilateral Cauchy identity, mod 6 theta expansion",
        "z: nonzero monomial with z^2 != 1; pure q-powers are poles of the \
         right-hand quotient",
        120,
        samples
            .into_iter()
            .map(|(name, z)| {
                let (lhs, rhs) = instance(z);
                sample(name, lhs, rhs)
            })
            .collect(),
    )
}

/// sum q^{2k^2} z^{2k}/(z;q)_{2k+1} = (q/z;q)/(z^2,q^2/z^2,q;q^2)
///   * (q^8;q^8) [ (-z^4q^3,-q^5/z^4;q^8) + z (-z^4q^5,-q^3/z^4;q^8) ].
fn jackson_mod8() -> IdentityRecord {
    let instance = |z: Monomial| {
        let lhs = SideExpr::sum(
            SumSpec::new(1, IndexDomain::AllIntegers)
                .q_exp(QuadraticForm::poly1(rat(2), rat(0), rat(0)))
                .base(0, z.pow(2))
                .over(fpoch_m(&z, 1, klin(2, 0, 1, 1))),
        );
        let term = |pref: Monomial, u: i64, v: i64| {
            SideTerm::product(scaled_product(
                pref,
                [
                    ipm(&[z.inv().mul(&qm(1))], 1),
                    ip(&[8], 8),
                    ipm(&[z.pow(4).neg().mul(&qm(u)), z.pow(-4).neg().mul(&qm(v))], 8),
                ]
                .concat(),
                ipm(&[z.pow(2), z.pow(-2).mul(&qm(2)), qm(1)], 2),
            ))
        };
        let rhs = SideExpr::of(vec![term(Monomial::one(), 3, 5), term(z.clone(), 5, 3)]);
        (lhs, rhs)
    };
    let samples = vec![
        ("z=2", cm(2)),
        ("z=-2", cm(-2)),
        ("z=1/2", cf(1, 2)),
        ("z=2q", cm(2).mul(&qm(1))),
    ];
    record(
        "biljac",
        "bilateral Jackson-type sum, mod 8 theta expansion",
        "z: nonzero monomial with z^2 != 1; pure q-powers are poles of the \
         right-hand quotient",
        120,
        samples
            .into_iter()
            .map(|(name, z)| {
                let (lhs, rhs) = instance(z);
                sample(name, lhs, rhs)
            })
            .collect(),
    )
}

// ---- two-sided mod 6 and mod 32 summations ----

fn mod6_sums() -> Vec<IdentityRecord> {
    vec![
        // sum (q^5;q^6)_k (-1)^k q^{k(3k+2)}/(-q^2;q^3)_{2k+1}
        //   = (q^5,q^6;q^6)/((q;q^3)(q^3,q^4;q^6))
        fixed(
            "bilcs-1",
            "bilateral mod 6 summation (1)",
            200,
            SideExpr::sum(
                SumSpec::new(1, IndexDomain::AllIntegers)
                    .q_exp(QuadraticForm::poly1(rat(3), rat(2), rat(0)))
                    .base(0, cm(-1))
                    .times(fpoch(rat(1), 5, 6, k(0, 1)))
                    .over(fpoch(rat(-1), 2, 3, klin(2, 0, 1, 1))),
            ),
            SideExpr::product(product(
                ip(&[5, 6], 6),
                [ip(&[1], 3), ip(&[3, 4], 6)].concat(),
            )),
        ),
        // sum (q;q^6)_k (-1)^k q^{k(3k-2)}/(-q;q^3)_{2k}
        //   = (q,q^6;q^6)/((q^2;q^3)(q^2,q^3;q^6))
        fixed(
            "bilcs-2",
            "bilateral mod 6 summation (2)",
            200,
            SideExpr::sum(
                SumSpec::new(1, IndexDomain::AllIntegers)
                    .q_exp(QuadraticForm::poly1(rat(3), rat(-2), rat(0)))
                    .base(0, cm(-1))
                    .times(fpoch(rat(1), 1, 6, k(0, 1)))
                    .over(fpoch(rat(-1), 1, 3, klin(2, 0, 0, 1))),
            ),
            SideExpr::product(product(
                ip(&[1, 6], 6),
                [ip(&[2], 3), ip(&[2, 3], 6)].concat(),
            )),
        ),
    ]
}

/// The same two summations with the index reversed, which trades the
/// quadratic exponent for a purely linear one.
fn mod6_sums_reversed() -> Vec<IdentityRecord> {
    vec![
        // sum (-q;q^3)_{2k-1} q^{3k-2}/(q;q^6)_k = (q^5,q^6;q^6)/((q;q^3)(q^3,q^4;q^6))
        fixed(
            "bilcsp-1",
            "bilateral mod 6 summation, reversed index (1)",
            200,
            SideExpr::sum(
                SumSpec::new(1, IndexDomain::AllIntegers)
                    .q_exp(QuadraticForm::poly1(rat(0), rat(3), rat(-2)))
                    .times(fpoch(rat(-1), 1, 3, klin(2, 0, -1, 1)))
                    .over(fpoch(rat(1), 1, 6, k(0, 1))),
            ),
            SideExpr::product(product(
                ip(&[5, 6], 6),
                [ip(&[1], 3), ip(&[3, 4], 6)].concat(),
            )),
        ),
        // sum (-q^2;q^3)_{2k} q^{3k}/(q^5;q^6)_k = (q,q^6;q^6)/((q^2;q^3)(q^2,q^3;q^6))
        fixed(
            "bilcsp-2",
            "bilateral mod 6 summation, reversed index (2)",
            200,
            SideExpr::sum(
                SumSpec::new(1, IndexDomain::AllIntegers)
                    .q_exp(QuadraticForm::poly1(rat(0), rat(3), rat(0)))
                    .times(fpoch(rat(-1), 2, 3, klin(2, 0, 0, 1)))
                    .over(fpoch(rat(1), 5, 6, k(0, 1))),
            ),
            SideExpr::product(product(
                ip(&[1, 6], 6),
                [ip(&[2], 3), ip(&[2, 3], 6)].concat(),
            )),
        ),
    ]
}

fn jackson_mod32() -> Vec<IdentityRecord> {
    let lhs = |lin: i64, e1: i64, s1: i64, e2: i64, s2: i64| {
        SideExpr::sum(
            SumSpec::new(1, IndexDomain::AllIntegers)
                .q_exp(QuadraticForm::poly1(rat(8), rat(lin), rat(0)))
                .over(fpoch(rat(1), e1, 8, klin(1, 0, s1, 1)))
                .over(fpoch(rat(-1), e2, 8, klin(1, 0, s2, 1))),
        )
    };
    let rhs = |n: [i64; 2], d: [i64; 2], dh: i64| {
        SideExpr::product(product(
            [ip(&n, 8), ip(&[32], 32)].concat(),
            [ip(&d, 8), ip(&[dh], 16)].concat(),
        ))
    };
    vec![
        // sum q^{2k(4k-3)}/((q;q^8)_k (-q^5;q^8)_k)
        //   = (q^4,q^7;q^8)(q^32;q^32)/((q^2,q^3;q^8)(q^14;q^16))
        fixed(
            "biljacs-1",
            "bilateral mod 32 summation (1)",
            200,
            lhs(-6, 1, 0, 5, 0),
            rhs([4, 7], [2, 3], 14),
        ),
        // sum q^{2k(4k+3)}/((q^3;q^8)_{k+1} (-q^7;q^8)_k)
        //   = (q^4,q^5;q^8)(q^32;q^32)/((q,q^6;q^8)(q^10;q^16))
        fixed(
            "biljacs-3",
            "bilateral mod 32 summation (3)",
            200,
            lhs(6, 3, 1, 7, 0),
            rhs([4, 5], [1, 6], 10),
        ),
        // sum q^{2k(4k-3)}/((q^5;q^8)_k (-q;q^8)_k)
        //   = (q^3,q^4;q^8)(q^32;q^32)/((q^2,q^7;q^8)(q^6;q^16))
        fixed(
            "biljacs-5",
            "bilateral mod 32 summation (5)",
            200,
            lhs(-6, 5, 0, 1, 0),
            rhs([3, 4], [2, 7], 6),
        ),
        // sum q^{2k(4k+3)}/((q^7;q^8)_k (-q^3;q^8)_{k+1})
        //   = (q,q^4;q^8)(q^32;q^32)/((q^5,q^6;q^8)(q^2;q^16))
        fixed(
            "biljacs-7",
            "bilateral mod 32 summation (7)",
            200,
            lhs(6, 7, 0, 3, 1),
            rhs([1, 4], [5, 6], 2),
        ),
    ]
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
    fn mod25_specializations_hold_to_low_order() {
        for rec in rr_mod25() {
            pass_all(&rec, 40);
        }
    }

    #[test]
    fn theta_expansion_holds_at_rebased_q_power() {
        let rec = rr_theta(2);
        pass_all(&rec, 40);
    }

    #[test]
    fn reversed_mod6_sums_match_their_quadratic_forms() {
        for rec in [mod6_sums(), mod6_sums_reversed()].concat() {
            pass_all(&rec, 40);
        }
    }
}
