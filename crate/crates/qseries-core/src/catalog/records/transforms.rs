//! Transformations: Bailey's well-poised bilateral transformation, its
//! confluent limit, Agarwal's finite multisum reduction, and the multilateral
//! forms obtained by pushing the top index of the finite reduction to
//! infinity. Unlike the summations elsewhere in the catalog, both sides here
//! are series, so each sample pins a full parameter tuple.

use crate::coeff::{frac, rat};
use crate::forms::{AffineForm, QuadraticForm};
use crate::monomial::Monomial;
use crate::sums::{IndexDomain, SumFactor, SumSpec};

use super::super::{IdentityRecord, SideExpr, SideTerm};
use super::*;

pub(super) fn records() -> Vec<IdentityRecord> {
    let mut out = Vec::new();
    out.push(bailey_8psi8());
    out.push(bailey_5psi8());
    out.extend(agarwal_reduction());
    out.extend(bailey_8psi8_multilateral());
    out.extend(bailey_5psi8_multilateral());
    out.extend(bailey_5psi8_extremal());
    out
}

fn div(n: &Monomial, d: &Monomial) -> Monomial {
    n.mul(&d.inv())
}

/// (1 - m*q^(arg)) as a single length-one linear factor.
fn lin1(m: &Monomial, arg: AffineForm) -> SumFactor {
    let mut shifted = arg;
    shifted.constant += m.exp;
    fpoch_arg(m.coeff.clone(), shifted, 1, ac(1))
}

// ---- the bilateral well-poised transformation and its limit ----

/// sum_{k in Z} (e,f;q)_k (aq/ef)^k / (aq/c,aq/d;q)_k
///   = (q/c,q/d,aq/e,aq/f;q) / (aq,q/a,aq/cd,aq/ef;q)
///     * sum_{k in Z} (1-aq^{2k}) (c,d,e,f;q)_k q^{k^2} (a^3q/cdef)^k
///                    / ((1-a) (aq/c,aq/d,aq/e,aq/f;q)_k).
fn bailey_8psi8() -> IdentityRecord {
    let instance = |a: Monomial, c: Monomial, d: Monomial, e: Monomial, f: Monomial| {
        let aq = a.mul(&qm(1));
        let lhs = SideExpr::sum(
            SumSpec::new(1, IndexDomain::AllIntegers)
                .base(0, div(&aq, &e.mul(&f)))
                .times(fpoch_m(&e, 1, k(0, 1)))
                .times(fpoch_m(&f, 1, k(0, 1)))
                .over(fpoch_m(&div(&aq, &c), 1, k(0, 1)))
                .over(fpoch_m(&div(&aq, &d), 1, k(0, 1))),
        );
        let scale = product(
            ipm(
                &[div(&qm(1), &c), div(&qm(1), &d), div(&aq, &e), div(&aq, &f)],
                1,
            ),
            ipm(
                &[
                    aq.clone(),
                    div(&qm(1), &a),
                    div(&aq, &c.mul(&d)),
                    div(&aq, &e.mul(&f)),
                ],
                1,
            ),
        );
        let mut sum = SumSpec::new(1, IndexDomain::AllIntegers)
            .q_exp(QuadraticForm::poly1(rat(1), rat(0), rat(0)))
            .base(0, div(&a.pow(3).mul(&qm(1)), &c.mul(&d).mul(&e).mul(&f)))
            .times(lin1(&a, klin(2, 0, 0, 1)))
            .over(fpoch_m(&a, 1, ac(1)));
        for x in [&c, &d, &e, &f] {
            sum = sum
                .times(fpoch_m(x, 1, k(0, 1)))
                .over(fpoch_m(&div(&aq, x), 1, k(0, 1)));
        }
        (lhs, SideExpr::scaled_sum(scale, sum))
    };
    let samples = vec![
        ("a=2q,c=2,d=3,e=5,f=1/2", cm(2).mul(&qm(1)), cm(2), cm(3), cm(5), cf(1, 2)),
        ("a=3q^2,c=2q,d=3,e=5,f=7", cm(3).mul(&qm(2)), cm(2).mul(&qm(1)), cm(3), cm(5), cm(7)),
        ("a=-q,c=2,d=3,e=5,f=1/2", qm(1).neg(), cm(2), cm(3), cm(5), cf(1, 2)),
    ];
    record(
        "bailey88",
        "Bailey's well-poised 8psi8 transformation",
        "monomials a,c,d,e,f with aq/cd and aq/ef of positive q-exponent and \
         no unit argument among the Pochhammer quotients",
        80,
        samples
            .into_iter()
            .map(|(name, a, c, d, e, f)| {
                let (lhs, rhs) = instance(a, c, d, e, f);
                sample(name, lhs, rhs)
            })
            .collect(),
    )
}

/// sum_{k in Z} (a;q)_k q^{binom(k+1,2)} (-z)^k / (bq,cq;q)_k
///   = (bq/az,cq/az,zq;q) / (azq,q/az,bcq/az;q)
///     * sum_{k in Z} (1-azq^{2k}) (az/b,az/c,a;q)_k q^{3binom(k,2)} (-bczq^2)^k
///                    / ((1-az) (bq,cq,zq;q)_k).
fn bailey_5psi8() -> IdentityRecord {
    let samples = five_psi_samples();
    record(
        "bailey58",
        "confluent limit of Bailey's 8psi8 transformation",
        "monomials a,b,c and z = q^j with bcq/az of positive q-exponent",
        80,
        samples
            .into_iter()
            .map(|(name, a, b, c, z)| {
                let lhs = SideExpr::sum(five_psi_lhs_base(&a, &b, &c, &z));
                sample(name, lhs, five_psi_rhs(&a, &b, &c, &z))
            })
            .collect(),
    )
}

/// Shared parameter tuples for the confluent transformation and its
/// multilateral extremal form, whose left sides agree term by term.
fn five_psi_samples() -> Vec<(&'static str, Monomial, Monomial, Monomial, Monomial)> {
    vec![
        ("a=2,b=3q,c=5q,z=q", cm(2), cm(3).mul(&qm(1)), cm(5).mul(&qm(1)), qm(1)),
        ("a=1/2,b=2q,c=3q^2,z=q", cf(1, 2), cm(2).mul(&qm(1)), cm(3).mul(&qm(2)), qm(1)),
        ("a=-2,b=3q,c=5q^2,z=q", cm(-2), cm(3).mul(&qm(1)), cm(5).mul(&qm(2)), qm(1)),
    ]
}

/// The one-index confluent left side sum(a;q)_k q^{binom(k+1,2)}(-z)^k/(bq,cq;q)_k.
fn five_psi_lhs_base(a: &Monomial, b: &Monomial, c: &Monomial, z: &Monomial) -> SumSpec {
    SumSpec::new(1, IndexDomain::AllIntegers)
        .q_exp(QuadraticForm::poly1(frac(1, 2), frac(1, 2), rat(0)))
        .base(0, z.neg())
        .times(fpoch_m(a, 1, k(0, 1)))
        .over(fpoch_m(&b.mul(&qm(1)), 1, k(0, 1)))
        .over(fpoch_m(&c.mul(&qm(1)), 1, k(0, 1)))
}

fn five_psi_rhs(a: &Monomial, b: &Monomial, c: &Monomial, z: &Monomial) -> SideExpr {
    let az = a.mul(z);
    let azq = az.mul(&qm(1));
    let scale = product(
        ipm(
            &[div(&b.mul(&qm(1)), &az), div(&c.mul(&qm(1)), &az), z.mul(&qm(1))],
            1,
        ),
        ipm(&[azq, div(&qm(1), &az), div(&b.mul(c).mul(&qm(1)), &az)], 1),
    );
    let sum = SumSpec::new(1, IndexDomain::AllIntegers)
        .q_exp(QuadraticForm::poly1(frac(3, 2), frac(-3, 2), rat(0)))
        .base(0, b.mul(c).mul(z).mul(&qm(2)).neg())
        .times(lin1(&az, klin(2, 0, 0, 1)))
        .times(fpoch_m(&div(&az, b), 1, k(0, 1)))
        .times(fpoch_m(&div(&az, c), 1, k(0, 1)))
        .times(fpoch_m(a, 1, k(0, 1)))
        .over(fpoch_m(&az, 1, ac(1)))
        .over(fpoch_m(&b.mul(&qm(1)), 1, k(0, 1)))
        .over(fpoch_m(&c.mul(&qm(1)), 1, k(0, 1)))
        .over(fpoch_m(&z.mul(&qm(1)), 1, k(0, 1)));
    SideExpr::scaled_sum(scale, sum)
}

// ---- Agarwal's finite reduction ----

/// The (r-1)-fold sum over n >= k_1 >= ... >= k_{r-1} >= 0 of
///   prod_j (b_j,c_j;q)_{k_j} / (q;q)_{k_{j-1}-k_j}
///   * prod_{j<i} (a/b_jc_j;q)_{k_{j-1}-k_j} / (a/b_j,a/c_j;q)_{k_{j-1}}
///   * prod_{j>=i} (aq/b_jc_j;q)_{k_{j-1}-k_j} / (aq/b_j,aq/c_j;q)_{k_{j-1}}
///   * prod_{j<r} (a/b_jc_j)^{k_j} * q^{sum_{j>=i} k_j}        (k_0 = n, k_r = 0)
/// collapses to a single sum of length n with a two-term linear bracket.
fn agarwal_reduction() -> Vec<IdentityRecord> {
    struct Params {
        n: i64,
        a: Monomial,
        b: Vec<Monomial>,
        c: Vec<Monomial>,
    }

    let lhs = |p: &Params, r: usize, i: usize| -> SideExpr {
        let d = r - 1;
        let aq = p.a.mul(&qm(1));
        // length of the difference k_{j-1} - k_j, with the boundary indices
        // k_0 = n and k_r = 0 substituted
        let len_between = |j: usize| -> AffineForm {
            if j == 1 {
                klin(-1, 0, p.n, d)
            } else if j == r {
                k(d - 1, d)
            } else {
                kdiff(j - 2, d)
            }
        };
        let len_at = |j: usize| -> AffineForm {
            if j == 1 {
                ac(p.n)
            } else {
                k(j - 2, d)
            }
        };
        let mut spec = SumSpec::new(d, IndexDomain::Range0To(p.n));
        let mut linear = vec![0; d];
        for j in i..r {
            linear[j - 1] = 1;
        }
        spec = spec.q_exp(diag(d, 0, &linear, 0));
        for j in 1..r {
            spec = spec
                .base(j - 1, div(&p.a, &p.b[j - 1].mul(&p.c[j - 1])))
                .times(fpoch_m(&p.b[j - 1], 1, k(j - 1, d)))
                .times(fpoch_m(&p.c[j - 1], 1, k(j - 1, d)));
        }
        for j in 1..=r {
            spec = spec.over(fpoch(rat(1), 1, 1, len_between(j)));
            let x = if j < i { &p.a } else { &aq };
            spec = spec
                .times(fpoch_m(&div(x, &p.b[j - 1].mul(&p.c[j - 1])), 1, len_between(j)))
                .over(fpoch_m(&div(x, &p.b[j - 1]), 1, len_at(j)))
                .over(fpoch_m(&div(x, &p.c[j - 1]), 1, len_at(j)));
        }
        SideExpr::sum(spec)
    };

    let rhs = |p: &Params, r: usize, i: usize| -> SideExpr {
        let aq = p.a.mul(&qm(1));
        let common = || {
            let mut base = p.a.pow(r as i64).neg();
            for j in 0..r {
                base = div(&base, &p.b[j].mul(&p.c[j]));
            }
            let mut spec = SumSpec::new(1, IndexDomain::Range0To(p.n))
                .base(0, base)
                .times(fpoch_m(&p.a, 1, k(0, 1)))
                .over(fpoch(rat(1), 1, 1, k(0, 1)))
                .over(fpoch(rat(1), 1, 1, klin(-1, 0, p.n, 1)))
                .over(fpoch_m(&p.a, 1, klin(1, 0, p.n, 1)));
            for j in 1..=r {
                let x = if j < i { &p.a } else { &aq };
                spec = spec
                    .times(fpoch_m(&p.b[j - 1], 1, k(0, 1)))
                    .times(fpoch_m(&p.c[j - 1], 1, k(0, 1)))
                    .over(fpoch_m(&div(x, &p.b[j - 1]), 1, k(0, 1)))
                    .over(fpoch_m(&div(x, &p.c[j - 1]), 1, k(0, 1)));
            }
            spec
        };
        let lin_exp = (r + 1 - i) as i64;
        let t1 = common().q_exp(QuadraticForm::poly1(
            frac(1, 2),
            frac(2 * lin_exp - 1, 2),
            rat(0),
        ));
        // bracket remainder: (1-q^k) aq^{k-1}/(1-aq^{k-1})
        //   * prod_{j>=i} b_jc_j (1-aq^k/b_j)(1-aq^k/c_j)
        //                 / (aq (1-b_jq^{k-1})(1-c_jq^{k-1}))
        let mut pref = p.a.mul(&qm(-1));
        for j in i..=r {
            pref = pref.mul(&div(&p.b[j - 1].mul(&p.c[j - 1]), &aq));
        }
        let mut t2 = common()
            .prefactor(pref)
            .q_exp(QuadraticForm::poly1(
                frac(1, 2),
                frac(2 * lin_exp + 1, 2),
                rat(0),
            ))
            .times(lin1(&Monomial::one(), k(0, 1)))
            .over(lin1(&p.a.mul(&qm(-1)), k(0, 1)));
        for j in i..=r {
            t2 = t2
                .times(lin1(&div(&p.a, &p.b[j - 1]), k(0, 1)))
                .times(lin1(&div(&p.a, &p.c[j - 1]), k(0, 1)))
                .over(lin1(&p.b[j - 1].mul(&qm(-1)), k(0, 1)))
                .over(lin1(&p.c[j - 1].mul(&qm(-1)), k(0, 1)));
        }
        SideExpr::of(vec![SideTerm::sum(t1), SideTerm::sum(t2)])
    };

    let mut out = Vec::new();
    for r in [2usize, 3] {
        for i in 1..=r {
            let samples = vec![
                Params {
                    n: 4,
                    a: cm(2),
                    b: vec![cm(3), cm(5), cm(7)],
                    c: vec![cf(1, 2), cf(1, 3), cf(1, 5)],
                },
                Params {
                    n: 5,
                    a: cm(3),
                    b: vec![cm(2), cm(5), cm(7)],
                    c: vec![cf(1, 2), cf(1, 5), cf(1, 7)],
                },
                Params {
                    n: 6,
                    a: cm(2).mul(&qm(1)),
                    b: vec![cm(3), cm(5), cm(7)],
                    c: vec![cf(1, 2), cf(1, 3), cf(1, 5)],
                },
            ];
            out.push(record(
                &format!("agarwal-r{r}i{i}"),
                "Agarwal's finite multisum reduction",
                "n >= 0; monomials a, b_1..b_r, c_1..c_r avoiding unit \
                 Pochhammer arguments on either side",
                80,
                samples
                    .into_iter()
                    .map(|p| {
                        let name = format!("n={},a={}", p.n, p.a);
                        sample(&name, lhs(&p, r, i), rhs(&p, r, i))
                    })
                    .collect(),
            ));
        }
    }
    out
}

// ---- multilateral forms of the reduction ----

/// Pushing n to infinity in the finite reduction (r = 2) leaves bilateral
/// sums: the j = 1 quotient freezes into an infinite-product scale and the
/// remaining index runs over all of Z.
fn bailey_8psi8_multilateral() -> Vec<IdentityRecord> {
    let instance = |i: usize, a: &Monomial, bc: &[(Monomial, Monomial); 2]| {
        let aq = a.mul(&qm(1));
        let (b1, c1) = &bc[0];
        let (b2, c2) = &bc[1];
        // group j = 1 uses a when it sits left of the split (i = 2), aq otherwise
        let x = if i == 1 { aq.clone() } else { a.clone() };
        let lhs_scale = product(
            ipm(&[div(&x, &b1.mul(c1))], 1),
            ipm(&[div(&x, b1), div(&x, c1)], 1),
        );
        let lhs_sum = SumSpec::new(1, IndexDomain::AllIntegers)
            .q_exp(QuadraticForm::poly1(rat(0), rat(if i == 1 { 1 } else { 0 }), rat(0)))
            .base(0, div(a, &b1.mul(c1)))
            .times(fpoch_m(b1, 1, k(0, 1)))
            .times(fpoch_m(c1, 1, k(0, 1)))
            .over(fpoch_m(&div(&aq, b2), 1, k(0, 1)))
            .over(fpoch_m(&div(&aq, c2), 1, k(0, 1)));
        let lhs = SideExpr::scaled_sum(lhs_scale, lhs_sum);

        let rhs_scale = product(
            ipm(&[div(&qm(1), b2), div(&qm(1), c2)], 1),
            ipm(&[a.clone(), div(&qm(1), a), div(&aq, &b2.mul(c2))], 1),
        );
        let common = || {
            let mut base = a.pow(3);
            for (bj, cj) in bc {
                base = div(&base, &bj.mul(cj));
            }
            let mut spec = SumSpec::new(1, IndexDomain::AllIntegers).base(0, base);
            for (j, (bj, cj)) in bc.iter().enumerate() {
                let x = if j + 1 < i { a } else { &aq };
                spec = spec
                    .times(fpoch_m(bj, 1, k(0, 1)))
                    .times(fpoch_m(cj, 1, k(0, 1)))
                    .over(fpoch_m(&div(x, bj), 1, k(0, 1)))
                    .over(fpoch_m(&div(x, cj), 1, k(0, 1)));
            }
            spec
        };
        let t1 = common().q_exp(QuadraticForm::poly1(rat(1), rat(2 - i as i64), rat(0)));
        let mut pref = Monomial::one().neg();
        for (bj, cj) in &bc[i - 1..] {
            pref = pref.mul(&div(&bj.mul(cj), &aq));
        }
        let mut t2 = common()
            .prefactor(pref)
            .q_exp(QuadraticForm::poly1(rat(1), rat(2 - i as i64), rat(0)));
        for (bj, cj) in &bc[i - 1..] {
            t2 = t2
                .times(lin1(&div(a, bj), k(0, 1)))
                .times(lin1(&div(a, cj), k(0, 1)))
                .over(lin1(&bj.mul(&qm(-1)), k(0, 1)))
                .over(lin1(&cj.mul(&qm(-1)), k(0, 1)));
        }
        let rhs = SideExpr::of(vec![
            SideTerm::scaled_sum(rhs_scale.clone(), t1),
            SideTerm::scaled_sum(rhs_scale, t2),
        ]);
        (lhs, rhs)
    };

    let samples: Vec<(&str, Monomial, [(Monomial, Monomial); 2])> = vec![
        (
            "a=2q^2,b=(2,5),c=(3,7)",
            cm(2).mul(&qm(2)),
            [(cm(2), cm(3)), (cm(5), cm(7))],
        ),
        (
            "a=3q^2,b=(2,1/2),c=(5,7)",
            cm(3).mul(&qm(2)),
            [(cm(2), cm(5)), (cf(1, 2), cm(7))],
        ),
        (
            "a=-2q^3,b=(3,5),c=(1/2,2)",
            cm(-2).mul(&qm(3)),
            [(cm(3), cf(1, 2)), (cm(5), cm(2))],
        ),
    ];
    [1usize, 2]
        .into_iter()
        .map(|i| {
            record(
                &format!("bailey88m-i{i}"),
                "multilateral form of the well-poised 8psi8 transformation",
                "monomials a, b_1, c_1, b_2, c_2 with a/(b_j c_j) of positive \
                 q-exponent",
                60,
                samples
                    .iter()
                    .map(|(name, a, bc)| {
                        let (lhs, rhs) = instance(i, a, bc);
                        sample(name, lhs, rhs)
                    })
                    .collect(),
            )
        })
        .collect()
}

/// The multilateral confluent reduction: an (r-1)-fold cone sum over Z equals
/// a scale times the difference of two one-index well-poised sums.
fn bailey_5psi8_multilateral() -> Vec<IdentityRecord> {
    let lhs = |r: usize, i: usize, a: &Monomial, b: &Monomial, c: &Monomial, z: &Monomial| {
        let d = r - 1;
        let az = a.mul(z);
        let ainv = a.inv();
        let mut linear = vec![0; d];
        for j in i..r {
            linear[j - 1] = 1;
        }
        let mut spec = SumSpec::new(d, IndexDomain::AllIntegers)
            .q_exp(diag(d, 1, &linear, 0))
            .times(fpoch_arg(
                ainv.coeff.clone(),
                klin(-1, 0, 1 + ainv.exp, d),
                1,
                k(0, d),
            ))
            .over(fpoch_m(&b.mul(&qm(1)), 1, k(d - 1, d)))
            .over(fpoch_m(&c.mul(&qm(1)), 1, k(d - 1, d)));
        spec = bases_all(spec, &az);
        SideExpr::sum(over_diff_chain(spec, 1))
    };

    let rhs = |r: usize, i: usize, a: &Monomial, b: &Monomial, c: &Monomial, z: &Monomial| {
        let az = a.mul(z);
        let scale = product(
            ipm(&[z.mul(&qm(1)), div(b, &az), div(c, &az)], 1),
            ipm(&[az.mul(&qm(1)), az.inv(), div(&b.mul(c), &az)], 1),
        );
        let common = || {
            SumSpec::new(1, IndexDomain::AllIntegers)
                .times(fpoch_m(a, 1, k(0, 1)))
                .times(fpoch_m(&div(&az.mul(&qm(1)), b), 1, k(0, 1)))
                .times(fpoch_m(&div(&az.mul(&qm(1)), c), 1, k(0, 1)))
                .over(fpoch_m(&z.mul(&qm(1)), 1, k(0, 1)))
                .over(fpoch_m(&b.mul(&qm(1)), 1, k(0, 1)))
                .over(fpoch_m(&c.mul(&qm(1)), 1, k(0, 1)))
        };
        let m = (2 * r - 1) as i64;
        let base = a
            .pow(r as i64 - 2)
            .mul(b)
            .mul(c)
            .mul(&z.pow(r as i64 - 1))
            .mul(&qm(2 * r as i64 - i as i64));
        let t1 = common()
            .q_exp(QuadraticForm::poly1(frac(m, 2), frac(-m, 2), rat(0)))
            .base(0, base.neg());
        let shift = i as i64 + 1 - r as i64;
        let pref = div(&a.pow(shift).mul(&z.pow(shift)), &b.mul(c));
        let t2 = common()
            .prefactor(pref.neg())
            .q_exp(QuadraticForm::poly1(frac(m, 2), frac(4 * shift - 4 - m, 2), rat(0)))
            .base(0, base.neg())
            .times(lin1(b, k(0, 1)))
            .times(lin1(c, k(0, 1)))
            .over(lin1(&div(&az, b), k(0, 1)))
            .over(lin1(&div(&az, c), k(0, 1)));
        SideExpr::of(vec![
            SideTerm::scaled_sum(scale.clone(), t1),
            SideTerm::scaled_sum(scale, t2),
        ])
    };

    let mut out = Vec::new();
    for r in [2usize, 3] {
        for i in 1..=r {
            out.push(record(
                &format!("bailey58m-r{r}i{i}"),
                "multilateral form of the confluent 8psi8 limit",
                "monomials a,b,c and z = q^j with q b c / (a z q^{[i<r]}) of \
                 positive q-exponent",
                60,
                five_psi_samples()
                    .into_iter()
                    .map(|(name, a, b, c, z)| {
                        sample(name, lhs(r, i, &a, &b, &c, &z), rhs(r, i, &a, &b, &c, &z))
                    })
                    .collect(),
            ));
        }
    }
    out
}

/// The extremal split i = r of the multilateral confluent reduction, whose
/// right side collapses to a single very-well-poised sum. At r = 2 the left
/// side is the confluent transformation's left side term by term.
fn bailey_5psi8_extremal() -> Vec<IdentityRecord> {
    let lhs = |r: usize, a: &Monomial, b: &Monomial, c: &Monomial, z: &Monomial| {
        let d = r - 1;
        let az = a.mul(z);
        let ainv = a.inv();
        let mut spec = SumSpec::new(d, IndexDomain::AllIntegers)
            .q_exp(diag(d, 1, &vec![0; d], 0))
            .times(fpoch_arg(
                ainv.coeff.clone(),
                klin(-1, 0, 1 + ainv.exp, d),
                1,
                k(0, d),
            ))
            .over(fpoch_m(&b.mul(&qm(1)), 1, k(d - 1, d)))
            .over(fpoch_m(&c.mul(&qm(1)), 1, k(d - 1, d)));
        spec = bases_all(spec, &az);
        SideExpr::sum(over_diff_chain(spec, 1))
    };

    let rhs = |r: usize, a: &Monomial, b: &Monomial, c: &Monomial, z: &Monomial| {
        let az = a.mul(z);
        let azq = az.mul(&qm(1));
        let scale = product(
            ipm(
                &[
                    z.mul(&qm(1)),
                    div(&b.mul(&qm(1)), &az),
                    div(&c.mul(&qm(1)), &az),
                ],
                1,
            ),
            ipm(
                &[azq, div(&qm(1), &az), div(&b.mul(c).mul(&qm(1)), &az)],
                1,
            ),
        );
        let m = (2 * r - 1) as i64;
        let base = a
            .pow(r as i64 - 2)
            .mul(b)
            .mul(c)
            .mul(&z.pow(r as i64 - 1))
            .mul(&qm(r as i64));
        let sum = SumSpec::new(1, IndexDomain::AllIntegers)
            .q_exp(QuadraticForm::poly1(frac(m, 2), frac(-m, 2), rat(0)))
            .base(0, base.neg())
            .times(lin1(&az, klin(2, 0, 0, 1)))
            .times(fpoch_m(a, 1, k(0, 1)))
            .times(fpoch_m(&div(&az, b), 1, k(0, 1)))
            .times(fpoch_m(&div(&az, c), 1, k(0, 1)))
            .over(fpoch_m(&az, 1, ac(1)))
            .over(fpoch_m(&z.mul(&qm(1)), 1, k(0, 1)))
            .over(fpoch_m(&b.mul(&qm(1)), 1, k(0, 1)))
            .over(fpoch_m(&c.mul(&qm(1)), 1, k(0, 1)));
        SideExpr::scaled_sum(scale, sum)
    };

    [2usize, 3]
        .into_iter()
        .map(|r| {
            record(
                &format!("bailey58x-r{r}"),
                "extremal multilateral confluent reduction",
                "monomials a,b,c and z = q^j with bc/az of positive q-exponent",
                60,
                five_psi_samples()
                    .into_iter()
                    .map(|(name, a, b, c, z)| {
                        sample(name, lhs(r, &a, &b, &c, &z), rhs(r, &a, &b, &c, &z))
                    })
                    .collect(),
            )
        })
        .collect()
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
    fn extremal_confluent_left_side_matches_the_bilateral_one_termwise() {
        // (q^{1-k}/a;q)_k = (-1/a)^k q^{-binom(k,2)} (a;q)_k turns the r = 2
        // extremal left side into the confluent left side exactly.
        let cfg = EngineConfig::default();
        let ext = bailey_5psi8_extremal();
        for (s, (_, a, b, c, z)) in ext[0].samples.iter().zip(five_psi_samples()) {
            let direct = SideExpr::sum(five_psi_lhs_base(&a, &b, &c, &z));
            let (lhs, _) = s.lhs.eval(25, &cfg).unwrap();
            let (want, _) = direct.eval(25, &cfg).unwrap();
            let (_, diff) = lhs.first_difference(&want);
            assert!(diff.is_none(), "sample {}: {:?}", s.name, diff);
        }
    }

    #[test]
    fn finite_reduction_holds_at_small_n() {
        for rec in agarwal_reduction() {
            pass_all(&rec, 30);
        }
    }

    #[test]
    fn bilateral_transformations_hold_to_low_order() {
        pass_all(&bailey_8psi8(), 30);
        pass_all(&bailey_5psi8(), 30);
    }

    #[test]
    fn confluent_multilateral_right_side_agrees_with_the_bilateral_one() {
        // For r = 2, i = 2 the multilateral left side is termwise the
        // confluent bilateral left side, so the right sides must agree as
        // series. This pins the z^{r-1} power in the geometric base.
        let cfg = EngineConfig::default();
        let bil = bailey_5psi8();
        let mult = bailey_5psi8_multilateral();
        let r2i2 = mult.iter().find(|r| r.id == "bailey58m-r2i2").unwrap();
        for (bs, ms) in bil.samples.iter().zip(&r2i2.samples) {
            let (want, _) = bs.rhs.eval(12, &cfg).unwrap();
            let (got, _) = ms.rhs.eval(12, &cfg).unwrap();
            let (_, diff) = want.first_difference(&got);
            assert!(diff.is_none(), "sample {}: {:?}", bs.name, diff);
        }
    }

    #[test]
    fn well_poised_multilateral_bracket_matches_its_factored_form() {
        // For i = r the two-term bracket collapses to
        //   (1 - aq^{2k-1})(1 - b_2 c_2/aq) / ((1 - b_2 q^{k-1})(1 - c_2 q^{k-1})),
        // giving an independent single-sum form of the right side.
        let cfg = EngineConfig::default();
        let a = cm(2).mul(&qm(2));
        let (b1, c1, b2, c2) = (cm(2), cm(3), cm(5), cm(7));
        let aq = a.mul(&qm(1));
        let recs = bailey_8psi8_multilateral();
        let i2 = recs.iter().find(|r| r.id == "bailey88m-i2").unwrap();
        let (split, _) = i2.samples[0].rhs.eval(12, &cfg).unwrap();
        let scale = product(
            ipm(&[div(&qm(1), &b2), div(&qm(1), &c2)], 1),
            ipm(&[a.clone(), div(&qm(1), &a), div(&aq, &b2.mul(&c2))], 1),
        );
        let factored = SumSpec::new(1, IndexDomain::AllIntegers)
            .q_exp(QuadraticForm::poly1(rat(1), rat(0), rat(0)))
            .base(0, div(&a.pow(3), &b1.mul(&c1).mul(&b2).mul(&c2)))
            .times(fpoch_m(&b1, 1, k(0, 1)))
            .times(fpoch_m(&c1, 1, k(0, 1)))
            .over(fpoch_m(&div(&a, &b1), 1, k(0, 1)))
            .over(fpoch_m(&div(&a, &c1), 1, k(0, 1)))
            .times(fpoch_m(&b2, 1, k(0, 1)))
            .times(fpoch_m(&c2, 1, k(0, 1)))
            .over(fpoch_m(&div(&aq, &b2), 1, k(0, 1)))
            .over(fpoch_m(&div(&aq, &c2), 1, k(0, 1)))
            .times(lin1(&div(&a, &qm(1)), klin(2, 0, 0, 1)))
            .times(lin1(&div(&b2.mul(&c2), &aq), ac(0)))
            .over(lin1(&div(&b2, &qm(1)), k(0, 1)))
            .over(lin1(&div(&c2, &qm(1)), k(0, 1)));
        let (want, _) = SideExpr::scaled_sum(scale, factored).eval(12, &cfg).unwrap();
        let (_, diff) = want.first_difference(&split);
        assert!(diff.is_none(), "{:?}", diff);
    }
}
