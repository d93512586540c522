//! Classical sum-product identities and summations: the two Rogers-Ramanujan
//! identities, the Gollnitz-Gordon pair, the Jacobi triple product, the
//! 1psi1 and 1phi0 summations, the bilateral Lebesgue identity with its
//! named specializations, and the Slater / Jackson / Ismail-Stanton forms.

use crate::coeff::{frac, rat};
use crate::forms::QuadraticForm;
use crate::monomial::Monomial;
use crate::sums::{IndexDomain, SumSpec};

use super::super::{IdentityRecord, SideExpr};
use super::*;

pub(super) fn records() -> Vec<IdentityRecord> {
    let mut out = Vec::new();
    out.extend(rogers_ramanujan());
    out.extend(gollnitz_gordon());
    out.push(triple_product());
    out.push(ramanujan_1psi1());
    out.push(cauchy_1phi0());
    out.extend(lebesgue_family());
    out.extend(slater_family());
    out
}

/// sum_{k>=0} q^{k^2 + lk}/(q;q)_k for l = 0, 1.
fn rr_sum(l: i64) -> SideExpr {
    SideExpr::sum(
        SumSpec::new(1, IndexDomain::NonNegative)
            .q_exp(QuadraticForm::poly1(rat(1), rat(l), rat(0)))
            .over(fpoch(rat(1), 1, 1, k(0, 1))),
    )
}

fn rogers_ramanujan() -> Vec<IdentityRecord> {
    vec![
        fixed(
            "rr-a",
            "Rogers-Ramanujan, first identity; Slater (18)",
            200,
            rr_sum(0),
            SideExpr::product(product(vec![], ip(&[1, 4], 5))),
        ),
        fixed(
            "rr-b",
            "Rogers-Ramanujan, second identity; Slater (14)",
            200,
            rr_sum(1),
            SideExpr::product(product(vec![], ip(&[2, 3], 5))),
        ),
    ]
}

/// sum_{k>=0} (-q;q^2)_k q^{k^2 + 2lk}/(q^2;q^2)_k for l = 0, 1.
fn gg_sum(l: i64) -> SideExpr {
    SideExpr::sum(
        SumSpec::new(1, IndexDomain::NonNegative)
            .q_exp(QuadraticForm::poly1(rat(1), rat(2 * l), rat(0)))
            .times(fpoch(rat(-1), 1, 2, k(0, 1)))
            .over(fpoch(rat(1), 2, 2, k(0, 1))),
    )
}

fn gollnitz_gordon() -> Vec<IdentityRecord> {
    vec![
        fixed(
            "gg-a",
            "Gollnitz-Gordon, first identity; Slater (36)",
            200,
            gg_sum(0),
            SideExpr::product(product(vec![], ip(&[1, 4, 7], 8))),
        ),
        fixed(
            "gg-b",
            "Gollnitz-Gordon, second identity; Slater (34)",
            200,
            gg_sum(1),
            SideExpr::product(product(vec![], ip(&[3, 4, 5], 8))),
        ),
    ]
}

/// sum_{k in Z} q^{b*k(k-1)/2} (-z)^k = (q^b, z, q^b/z; q^b)_inf.
fn triple_product() -> IdentityRecord {
    let instance = |z: Monomial, b: i64| {
        let lhs = SideExpr::sum(
            SumSpec::new(1, IndexDomain::AllIntegers)
                .q_exp(QuadraticForm::poly1(frac(b, 2), frac(-b, 2), rat(0)))
                .base(0, z.neg()),
        );
        let rhs = SideExpr::product(product(
            [ip(&[b], b), ipm(&[z.clone(), z.inv().mul(&qm(b))], b)].concat(),
            vec![],
        ));
        (lhs, rhs)
    };
    let samples = vec![
        ("z=2,b=1", cm(2), 1),
        ("z=1/2,b=1", cf(1, 2), 1),
        ("z=-q,b=1", qm(1).neg(), 1),
        ("z=q,b=1", qm(1), 1), // both sides vanish identically
        ("z=-1,b=1", cm(-1), 1),
        ("z=2*q^-1,b=3", cm(2).mul(&qm(-1)), 3),
        ("z=q^2,b=5", qm(2), 5),
    ];
    record(
        "jtpi",
        "Jacobi triple product",
        "z: any nonzero monomial; b: positive base exponent",
        200,
        samples
            .into_iter()
            .map(|(name, z, b)| {
                let (lhs, rhs) = instance(z, b);
                sample(name, lhs, rhs)
            })
            .collect(),
    )
}

/// sum_{k in Z} (a;q)_k z^k/(b;q)_k
///   = (q, az, q/(az), b/a; q)_inf / (b, z, b/(az), q/a; q)_inf.
fn ramanujan_1psi1() -> IdentityRecord {
    let instance = |a: Monomial, b: Monomial, z: Monomial| {
        let lhs = SideExpr::sum(
            SumSpec::new(1, IndexDomain::AllIntegers)
                .base(0, z.clone())
                .times(fpoch_m(&a, 1, k(0, 1)))
                .over(fpoch_m(&b, 1, k(0, 1))),
        );
        let az = a.mul(&z);
        let rhs = SideExpr::product(product(
            ipm(&[qm(1), az.clone(), az.inv().mul(&qm(1)), b.mul(&a.inv())], 1),
            ipm(&[b.clone(), z.clone(), b.mul(&az.inv()), a.inv().mul(&qm(1))], 1),
        ));
        (lhs, rhs)
    };
    let samples = vec![
        ("a=-q^-1,b=q^3,z=q", qm(-1).neg(), qm(3), qm(1)),
        ("a=-q^-1,b=q^4,z=q^2", qm(-1).neg(), qm(4), qm(2)),
        ("a=2,b=q^3,z=q", cm(2), qm(3), qm(1)),
    ];
    record(
        "1psi1",
        "Ramanujan's 1psi1 summation",
        "a, b, z monomials; z and b/(az) must have positive exponent",
        120,
        samples
            .into_iter()
            .map(|(name, a, b, z)| {
                let (lhs, rhs) = instance(a, b, z);
                sample(name, lhs, rhs)
            })
            .collect(),
    )
}

/// sum_{k>=0} (a;q)_k z^k/(q;q)_k = (az;q)_inf/(z;q)_inf.
fn cauchy_1phi0() -> IdentityRecord {
    let instance = |a: Monomial, z: Monomial| {
        let lhs = SideExpr::sum(
            SumSpec::new(1, IndexDomain::NonNegative)
                .base(0, z.clone())
                .times(fpoch_m(&a, 1, k(0, 1)))
                .over(fpoch(rat(1), 1, 1, k(0, 1))),
        );
        let rhs = SideExpr::product(product(ipm(&[a.mul(&z)], 1), ipm(&[z.clone()], 1)));
        (lhs, rhs)
    };
    let samples = vec![
        ("a=q^-2,z=q^3", qm(-2), qm(3)), // terminating numerator
        ("a=2,z=q", cm(2), qm(1)),
        ("a=-q^-1,z=q^2", qm(-1).neg(), qm(2)),
    ];
    record(
        "1phi0",
        "q-binomial theorem (Cauchy)",
        "a any monomial, z of positive exponent",
        120,
        samples
            .into_iter()
            .map(|(name, a, z)| {
                let (lhs, rhs) = instance(a, z);
                sample(name, lhs, rhs)
            })
            .collect(),
    )
}

/// The bilateral Lebesgue sum and its named specializations.
///
/// sum_{k in Z} (a;q)_k q^{k(k+1)/2} b^k / (bq;q)_k
///   = (q^2, abq, q/(ab), bq^2/a; q^2)_inf / ((bq;q)_inf (q/a;q)_inf)
fn lebesgue_family() -> Vec<IdentityRecord> {
    let instance = |a: Monomial, b: Monomial| {
        let lhs = SideExpr::sum(
            SumSpec::new(1, IndexDomain::AllIntegers)
                .base(0, b.clone())
                .q_exp(QuadraticForm::poly1(frac(1, 2), frac(1, 2), rat(0)))
                .times(fpoch_m(&a, 1, k(0, 1)))
                .over(fpoch_m(&b.mul(&qm(1)), 1, k(0, 1))),
        );
        let ab = a.mul(&b);
        let rhs = SideExpr::product(product(
            ipm(
                &[qm(2), ab.mul(&qm(1)), ab.inv().mul(&qm(1)), b.mul(&a.inv()).mul(&qm(2))],
                2,
            ),
            ipm(&[b.mul(&qm(1)), a.inv().mul(&qm(1))], 1),
        ));
        (lhs, rhs)
    };
    let samples = vec![
        ("a=-q,b=2", qm(1).neg(), cm(2)),
        ("a=2,b=q", cm(2), qm(1)),
        ("a=q^-1,b=-q", qm(-1), qm(1).neg()),
    ];
    let billeb = record(
        "billeb",
        "bilateral Lebesgue identity",
        "a, b monomials avoiding vanishing denominators",
        120,
        samples
            .into_iter()
            .map(|(name, a, b)| {
                let (lhs, rhs) = instance(a, b);
                sample(name, lhs, rhs)
            })
            .collect(),
    );

    // a = -q, b = 1 in base q^2: Gollnitz's mod-8 identity.
    let goellnitz = fixed(
        "goellnitz",
        "Gollnitz; bilateral Lebesgue at a=-q, b=1 in base q^2",
        200,
        SideExpr::sum(
            SumSpec::new(1, IndexDomain::NonNegative)
                .q_exp(QuadraticForm::poly1(rat(1), rat(1), rat(0)))
                .times(fpoch(rat(-1), 1, 2, k(0, 1)))
                .over(fpoch(rat(1), 2, 2, k(0, 1))),
        ),
        SideExpr::product(product(vec![], ip(&[2, 3, 7], 8))),
    );

    // a = -q, b = 1: Slater's identity (8).
    let slater8 = fixed(
        "slater8",
        "Slater (8)",
        200,
        SideExpr::sum(
            SumSpec::new(1, IndexDomain::NonNegative)
                .q_exp(QuadraticForm::poly1(frac(1, 2), frac(1, 2), rat(0)))
                .times(fpoch(rat(-1), 1, 1, k(0, 1)))
                .over(fpoch(rat(1), 1, 1, k(0, 1))),
        ),
        SideExpr::product(product(ip(&[4], 4), ip(&[1], 1))),
    );

    vec![billeb, goellnitz, slater8]
}

fn slater_family() -> Vec<IdentityRecord> {
    let mut out = Vec::new();

    // Slater (25): sum (-q;q^2)_k q^{k^2}/(q^4;q^4)_k
    //   = (q^3;q^3)_inf / ((q^4;q^4)_inf (q,q^5;q^6)_inf)
    out.push(fixed(
        "s3",
        "Slater (25)",
        200,
        SideExpr::sum(
            SumSpec::new(1, IndexDomain::NonNegative)
                .q_exp(QuadraticForm::poly1(rat(1), rat(0), rat(0)))
                .times(fpoch(rat(-1), 1, 2, k(0, 1)))
                .over(fpoch(rat(1), 4, 4, k(0, 1))),
        ),
        SideExpr::product(product(ip(&[3], 3), [ip(&[4], 4), ip(&[1, 5], 6)].concat())),
    ));

    // Slater (48): sum (-1;q^2)_k q^{k(k+1)}/(q;q)_{2k}
    //   = (q^4;q^4)(q^6;q^6)^5 / ((q^2;q^2)^2 (q^3;q^3)^2 (q^12;q^12)^2)
    out.push(fixed(
        "s1",
        "Slater (48)",
        200,
        SideExpr::sum(
            SumSpec::new(1, IndexDomain::NonNegative)
                .q_exp(QuadraticForm::poly1(rat(1), rat(1), rat(0)))
                .times(fpoch(rat(-1), 0, 2, k(0, 1)))
                .over(fpoch(rat(1), 1, 1, klin(2, 0, 0, 1))),
        ),
        SideExpr::product(product(
            [ip(&[4], 4), ip(&[6, 6, 6, 6, 6], 6)].concat(),
            [ip(&[2, 2], 2), ip(&[3, 3], 3), ip(&[12, 12], 12)].concat(),
        )),
    ));

    // Slater (50): sum (-q;q^2)_k q^{k(k+2)}/(q;q)_{2k+1}
    //   = (q^2;q^2)(q^12;q^12)^2 / ((q;q)(q^4;q^4)(q^6;q^6))
    out.push(fixed(
        "s1b",
        "Slater (50)",
        200,
        SideExpr::sum(
            SumSpec::new(1, IndexDomain::NonNegative)
                .q_exp(QuadraticForm::poly1(rat(1), rat(2), rat(0)))
                .times(fpoch(rat(-1), 1, 2, k(0, 1)))
                .over(fpoch(rat(1), 1, 1, klin(2, 0, 1, 1))),
        ),
        SideExpr::product(product(
            [ip(&[2], 2), ip(&[12, 12], 12)].concat(),
            [ip(&[1], 1), ip(&[4], 4), ip(&[6], 6)].concat(),
        )),
    ));

    // Slater (29): sum (-q;q^2)_k q^{k^2}/(q;q)_{2k}
    //   = (q^6;q^6)^2 / ((q;q)(q^12;q^12))
    out.push(fixed(
        "s12",
        "Slater (29)",
        200,
        SideExpr::sum(
            SumSpec::new(1, IndexDomain::NonNegative)
                .q_exp(QuadraticForm::poly1(rat(1), rat(0), rat(0)))
                .times(fpoch(rat(-1), 1, 2, k(0, 1)))
                .over(fpoch(rat(1), 1, 1, klin(2, 0, 0, 1))),
        ),
        SideExpr::product(product(ip(&[6, 6], 6), [ip(&[1], 1), ip(&[12], 12)].concat())),
    ));

    // Slater (28): sum (-q^2;q^2)_k q^{k(k+1)}/(q;q)_{2k+1}
    //   = (q^3;q^3)(q^12;q^12) / ((q;q)(q^6;q^6))
    out.push(fixed(
        "s12b",
        "Slater (28)",
        200,
        SideExpr::sum(
            SumSpec::new(1, IndexDomain::NonNegative)
                .q_exp(QuadraticForm::poly1(rat(1), rat(1), rat(0)))
                .times(fpoch(rat(-1), 2, 2, k(0, 1)))
                .over(fpoch(rat(1), 1, 1, klin(2, 0, 1, 1))),
        ),
        SideExpr::product(product(
            [ip(&[3], 3), ip(&[12], 12)].concat(),
            [ip(&[1], 1), ip(&[6], 6)].concat(),
        )),
    ));

    // Jackson: sum q^{2k^2}/(q;q)_{2k} = 1/((q^3,q^4,q^5;q^8)(q^2,q^14;q^16))
    out.push(fixed(
        "jack1",
        "Jackson; Slater (39)",
        200,
        SideExpr::sum(
            SumSpec::new(1, IndexDomain::NonNegative)
                .q_exp(QuadraticForm::poly1(rat(2), rat(0), rat(0)))
                .over(fpoch(rat(1), 1, 1, klin(2, 0, 0, 1))),
        ),
        SideExpr::product(product(vec![], [ip(&[3, 4, 5], 8), ip(&[2, 14], 16)].concat())),
    ));

    // Jackson: sum q^{2k(k+1)}/(q;q)_{2k+1} = 1/((q,q^4,q^7;q^8)(q^6,q^10;q^16))
    out.push(fixed(
        "jack2",
        "Jackson; Slater (38)",
        200,
        SideExpr::sum(
            SumSpec::new(1, IndexDomain::NonNegative)
                .q_exp(QuadraticForm::poly1(rat(2), rat(2), rat(0)))
                .over(fpoch(rat(1), 1, 1, klin(2, 0, 1, 1))),
        ),
        SideExpr::product(product(vec![], [ip(&[1, 4, 7], 8), ip(&[6, 10], 16)].concat())),
    ));

    // Ismail-Stanton: sum (-1;q)_{2k} q^k/(q^2;q^2)_k
    //   = 1/((q,q^2;q^3)(q,q^5;q^6))
    out.push(fixed(
        "s2",
        "Ismail-Stanton; Slater (24)",
        200,
        SideExpr::sum(
            SumSpec::new(1, IndexDomain::NonNegative)
                .q_exp(QuadraticForm::poly1(rat(0), rat(1), rat(0)))
                .times(fpoch(rat(-1), 0, 1, klin(2, 0, 0, 1)))
                .over(fpoch(rat(1), 2, 2, k(0, 1))),
        ),
        SideExpr::product(product(vec![], [ip(&[1, 2], 3), ip(&[1, 5], 6)].concat())),
    ));

    // Ismail-Stanton: sum (-q;q)_{2k} q^k/(q^2;q^2)_k = (q^6;q^6)^2/((q;q)(q^3;q^3)... )
    out.push(fixed(
        "s22",
        "Ismail-Stanton",
        200,
        SideExpr::sum(
            SumSpec::new(1, IndexDomain::NonNegative)
                .q_exp(QuadraticForm::poly1(rat(0), rat(1), rat(0)))
                .times(fpoch(rat(-1), 1, 1, klin(2, 0, 0, 1)))
                .over(fpoch(rat(1), 2, 2, k(0, 1))),
        ),
        SideExpr::product(product(ip(&[6, 6], 6), [ip(&[1], 1), ip(&[3], 3)].concat())),
    ));

    out
}
