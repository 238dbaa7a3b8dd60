//! Brute-force n-th roots in W(q,r,s,t): every (hat, component tuple) is raised to
//! the n-th power over integer Cayley tables and compared with the target.

use rayon::prelude::*;
use thiserror::Error;

use super::target::{TargetWreath, WElem};
use super::WreathElem;
use crate::group::{CayleyTable, GroupError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("search needs {needed} candidates, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("exponent must be positive")]
    ZeroExponent,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub roots: Vec<WElem>,
    pub candidates: u128,
}

/// Number of candidates an exhaustive search over `w` visits.
pub fn candidate_count(w: &TargetWreath) -> u128 {
    w.order_of_group()
}

struct Flat<'a> {
    base: &'a CayleyTable,
    top: &'a CayleyTable,
    np: usize,
    action: Vec<u32>,
}

impl Flat<'_> {
    #[inline]
    fn mul(&self, a: &[u32], ah: u32, b: &[u32], bh: u32, out: &mut [u32]) -> u32 {
        let row = &self.action[ah as usize * self.np..(ah as usize + 1) * self.np];
        for g in 0..self.np {
            out[g] = self.base.op(a[g], b[row[g] as usize]);
        }
        self.top.op(ah, bh)
    }

    /// η^n by left-to-right square and multiply.
    fn pow(&self, eta: &[u32], eh: u32, n: u64, acc: &mut Vec<u32>, tmp: &mut Vec<u32>) -> u32 {
        acc.copy_from_slice(eta);
        let mut h = eh;
        let bits = 64 - n.leading_zeros();
        for k in (0..bits - 1).rev() {
            h = self.mul(acc, h, acc, h, tmp);
            std::mem::swap(acc, tmp);
            if (n >> k) & 1 == 1 {
                h = self.mul(acc, h, eta, eh, tmp);
                std::mem::swap(acc, tmp);
            }
        }
        h
    }
}

/// All η ∈ W with η^n = α, sorted, by visiting every element of W.
pub fn exhaustive_nth_roots(
    w: &TargetWreath,
    alpha: &WElem,
    n: u64,
    budget: u128,
) -> Result<OracleResult, OracleError> {
    if n == 0 {
        return Err(OracleError::ZeroExponent);
    }
    let candidates = candidate_count(w);
    if candidates > budget {
        return Err(OracleError::BudgetExceeded {
            needed: candidates,
            budget,
        });
    }
    let lam = w.base();
    let (base, labels) = CayleyTable::from_group(lam, CayleyTable::DEFAULT_LIMIT)?;
    let wr = w.wreath();
    let np = wr.npoints();
    let nt = wr.top().len();
    let action = (0..nt as u32)
        .flat_map(|h| (0..np).map(move |p| (h, p)))
        .map(|(h, p)| wr.act(p, h) as u32)
        .collect();
    let flat = Flat {
        base: &base,
        top: wr.top(),
        np,
        action,
    };
    let target: Vec<u32> = alpha.comps.iter().map(|c| lam.index_of(c) as u32).collect();
    let target_hat = alpha.hat;
    let nb = base.len() as u32;

    let tasks: Vec<(u32, u32)> = (0..nt as u32)
        .flat_map(|h| (0..nb).map(move |c0| (h, c0)))
        .collect();
    let found: Vec<Vec<(u32, Vec<u32>)>> = tasks
        .par_iter()
        .map(|&(h, c0)| {
            let mut hits = Vec::new();
            let mut eta = vec![0u32; np];
            eta[0] = c0;
            let mut acc = vec![0u32; np];
            let mut tmp = vec![0u32; np];
            loop {
                let ph = flat.pow(&eta, h, n, &mut acc, &mut tmp);
                if ph == target_hat && acc == target {
                    hits.push((h, eta.clone()));
                }
                // odometer over components 1..np
                let mut j = np;
                loop {
                    if j == 1 {
                        return hits;
                    }
                    j -= 1;
                    eta[j] += 1;
                    if eta[j] < nb {
                        break;
                    }
                    eta[j] = 0;
                }
            }
        })
        .collect();

    let mut roots: Vec<WElem> = found
        .into_iter()
        .flatten()
        .map(|(h, comps)| WreathElem {
            comps: comps.iter().map(|&c| labels[c as usize].clone()).collect(),
            hat: h,
        })
        .collect();
    roots.sort();
    Ok(OracleResult { roots, candidates })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Group;

    #[test]
    fn matches_power_map_on_small_target() {
        // W(3,2,2,3): |Λ(3,2)| = 6, four points, |W| = 6^4 · 12
        let w = TargetWreath::new(3, 2, 2, 3).unwrap();
        let elems: Vec<WElem> = {
            let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(3);
            (0..5).map(|_| w.random_elem(&mut rng)).collect()
        };
        for a in &elems {
            for n in [2u64, 5] {
                let alpha = w.pow(a, n as i64);
                let res = exhaustive_nth_roots(&w, &alpha, n, u128::MAX).unwrap();
                assert!(res.roots.contains(a));
                assert!(res.roots.iter().all(|e| w.pow(e, n as i64) == alpha));
                assert_eq!(res.candidates, 6u128.pow(4) * 12);
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        let w = TargetWreath::new(3, 2, 2, 3).unwrap();
        let id = w.identity();
        assert!(matches!(
            exhaustive_nth_roots(&w, &id, 2, 100),
            Err(OracleError::BudgetExceeded { .. })
        ));
    }
}
