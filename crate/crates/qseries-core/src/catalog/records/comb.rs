//! Two-term rearrangements of the bilateral mod 25 sums. Dividing each
//! bilateral series by the numerator of its product side and splitting the
//! sum into positive indices, nonpositive even indices, and negative odd
//! indices (the last moved across the equation) leaves an identity whose
//! four pieces all have nonnegative coefficients. The partition checks read
//! their series counts off these records, so the inner sums are reindexed
//! over j >= 0: k = j+1 for the positive part and k = -2j, k = -(2j+1) for
//! the two tails, whose flipped factors 1/(q^e;q^5)_{-m} become
//! (q^{5-e};q^5)_m / (q^{5-e};q^5)_inf up to a sign and a power of q.

use crate::coeff::rat;
use crate::monomial::Monomial;
use crate::sums::{IndexDomain, SumSpec};

use super::super::{IdentityRecord, SideExpr, SideTerm};
use super::*;

struct Split {
    tag: &'static str,
    /// q-power on the scale in front of every sum (the rearrangement keeps
    /// the printed inner exponents and compensates here).
    shift: i64,
    /// Base 5 exponent of the lone numerator factor of the bilateral
    /// product side; the mod 25 trio is the other scale denominator.
    mod5: i64,
    mod25: [i64; 3],
    /// Positive part: linear and constant of the exponent 5j^2+..., and the
    /// argument exponent of the length j+1 factor under it.
    pos: (i64, i64, i64),
    /// Even tail: linear and constant of 10j^2+..., and the constant in the
    /// infinite factor argument e+10j.
    even: (i64, i64, i64),
    /// Product term on the right side, base 5.
    closed: [i64; 2],
    /// Odd tail, same shape as the even one.
    odd: (i64, i64, i64),
}

const SPLITS: [Split; 4] = [
    Split {
        tag: "a",
        shift: 0,
        mod5: 4,
        mod25: [10, 15, 25],
        pos: (7, 2, 1),
        even: (3, 0, 4),
        closed: [2, 3],
        odd: (13, 4, 9),
    },
    Split {
        tag: "b",
        shift: -2,
        mod5: 3,
        mod25: [5, 20, 25],
        pos: (4, 2, 2),
        even: (11, 3, 3),
        closed: [1, 4],
        odd: (21, 11, 8),
    },
    Split {
        tag: "c",
        shift: -2,
        mod5: 2,
        mod25: [5, 20, 25],
        pos: (6, 3, 3),
        even: (9, 2, 2),
        closed: [1, 4],
        odd: (19, 9, 7),
    },
    Split {
        tag: "d",
        shift: 0,
        mod5: 1,
        mod25: [10, 15, 25],
        pos: (13, 8, 4),
        even: (-3, 0, 1),
        closed: [2, 3],
        odd: (7, 1, 6),
    },
];

fn tail(linear: i64, constant: i64, arg: i64) -> SumSpec {
    SumSpec::new(1, IndexDomain::NonNegative)
        .q_exp(diag(1, 10, &[linear], constant))
        .over(infpoch(&Monomial::one(), klin(10, 0, arg, 1), 5))
}

pub(super) fn records() -> Vec<IdentityRecord> {
    SPLITS
        .iter()
        .map(|sp| {
            let scale_pos = scaled_product(
                qm(sp.shift),
                vec![],
                [ip(&[sp.mod5], 5), ip(&sp.mod25, 25)].concat(),
            );
            let scale_tail = scaled_product(qm(sp.shift), vec![], ip(&sp.mod25, 25));
            let pos = SumSpec::new(1, IndexDomain::NonNegative)
                .q_exp(diag(1, 5, &[sp.pos.0], sp.pos.1))
                .over(fpoch(rat(1), sp.pos.2, 5, klin(1, 0, 1, 1)));
            let lhs = SideExpr::of(vec![
                SideTerm::scaled_sum(scale_pos, pos),
                SideTerm::scaled_sum(scale_tail.clone(), tail(sp.even.0, sp.even.1, sp.even.2)),
            ]);
            let rhs = SideExpr::of(vec![
                SideTerm::product(product(vec![], ip(&sp.closed, 5))),
                SideTerm::scaled_sum(scale_tail, tail(sp.odd.0, sp.odd.1, sp.odd.2)),
            ]);
            fixed(
                &format!("split25-{}", sp.tag),
                &format!(
                    "bilateral Rogers-Ramanujan series, mod 25 split form ({})",
                    sp.tag
                ),
                60,
                lhs,
                rhs,
            )
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::verify_sample;
    use crate::sums::EngineConfig;

    #[test]
    fn split_forms_pass() {
        let cfg = EngineConfig::default();
        for rec in records() {
            let report = verify_sample(&rec, &rec.samples[0], 40, &cfg);
            assert!(report.verdict.is_pass(), "{}: {:?}", rec.id, report.verdict);
        }
    }

    #[test]
    fn split_reassembles_the_bilateral_sum() {
        // Scaled bilateral sum B = positive part + even tail - odd tail, so
        // B + odd must equal the record's left side. This checks the
        // reindexing and the tail prefactors against the bilateral series
        // without using the record's own right side.
        let cfg = EngineConfig::default();
        let order = 40;
        let bilateral = |linear: i64, e: i64| {
            SumSpec::new(1, IndexDomain::AllIntegers)
                .q_exp(diag(1, 5, &[linear], 0))
                .over(fpoch(rat(1), e, 5, k(0, 1)))
        };
        for (tag, linear, e) in [("a", -3, 1), ("d", 3, 4)] {
            let sp = SPLITS.iter().find(|s| s.tag == tag).unwrap();
            let rec = records().into_iter().find(|r| r.id.ends_with(tag)).unwrap();
            let scale = scaled_product(
                qm(sp.shift),
                vec![],
                [ip(&[sp.mod5], 5), ip(&sp.mod25, 25)].concat(),
            );
            let (b, _) = SideExpr::scaled_sum(scale, bilateral(linear, e))
                .eval(order, &cfg)
                .unwrap();
            let odd = SideExpr::of(vec![rec.samples[0].rhs.terms[1].clone()]);
            let (odd, _) = odd.eval(order, &cfg).unwrap();
            let (lhs, _) = rec.samples[0].lhs.eval(order, &cfg).unwrap();
            let (_, diff) = b.add(&odd).first_difference(&lhs);
            assert!(diff.is_none(), "split25-{tag}: {diff:?}");
        }
    }
}
