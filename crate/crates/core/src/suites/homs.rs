//! Brute-force homomorphism counts from torus knot groups G_{a,b} into Λ(q,r).
//! When gcd(ab, qr) = 1 every such hom has cyclic image, giving |Λ(q,r)| homs.

use serde::Serialize;

use super::{SuiteCheck, SuiteResult};
use crate::arith::gcd;
use crate::gdihedral::LambdaGroup;
use crate::homsearch::brute::DEFAULT_BUDGET;
use crate::homsearch::{count_homs_bruteforce, HomError};
use crate::knotpres::torus_group;
use crate::suites::lambda::SUITE_GROUPS;

/// Groups larger than this are left out of the count suite.
pub const MAX_GROUP_ORDER: u64 = 10_000;

const EXPONENTS: [(u64, u64); 11] = [
    (2, 3),
    (2, 5),
    (3, 5),
    (2, 7),
    (3, 7),
    (5, 7),
    (3, 4),
    (4, 5),
    (7, 9),
    (7, 11),
    (11, 13),
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomCount {
    pub q: u32,
    pub r: u32,
    pub a: u64,
    pub b: u64,
    pub count: u64,
    pub expected: u64,
}

/// The first `per_group` exponent pairs with gcd(ab, qr) = 1 for each suite group.
pub fn coprime_cases(per_group: usize) -> Vec<(u32, u32, u64, u64)> {
    let mut out = Vec::new();
    for (q, r) in SUITE_GROUPS {
        let qr = q as u64 * r as u64;
        let size = LambdaGroup::new(q, r).map_or(u64::MAX, |l| l.order_of_group());
        if size > MAX_GROUP_ORDER {
            continue;
        }
        EXPONENTS
            .iter()
            .filter(|&&(a, b)| gcd(a, b) == 1 && gcd(a * b, qr) == 1)
            .take(per_group)
            .for_each(|&(a, b)| out.push((q, r, a, b)));
    }
    out
}

/// Exact counts: |Hom(G_{2,3}, Λ(5,2))| = 10, and |Λ(q,r)| for every coprime case.
pub fn hom_count_suite(per_group: usize) -> Result<(SuiteResult, Vec<HomCount>), HomError> {
    let mut cases = vec![(5, 2, 2, 3, 10)];
    for (q, r, a, b) in coprime_cases(per_group) {
        let size = LambdaGroup::new(q, r)?.order_of_group();
        cases.push((q, r, a, b, size));
    }
    let mut counts = Vec::new();
    let mut check = SuiteCheck::new("torus_hom_counts");
    for (q, r, a, b, expected) in cases {
        let lam = LambdaGroup::new(q, r)?;
        let count = count_homs_bruteforce(&torus_group(a, b)?, &lam, DEFAULT_BUDGET)?;
        check.record(count == expected, || {
            format!("|Hom(G_{{{a},{b}}}, Λ({q},{r}))| = {count}, expected {expected}")
        });
        counts.push(HomCount { q, r, a, b, count, expected });
    }
    Ok((
        SuiteResult {
            name: "hom_counts".into(),
            checks: vec![check],
        },
        counts,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_suite_group_is_covered() {
        let cases = coprime_cases(1);
        assert_eq!(cases.len(), SUITE_GROUPS.len());
        assert!(cases.contains(&(2, 3, 5, 7)));
        assert!(cases.contains(&(11, 5, 2, 3)));
    }
}
