//! Exact homomorphism counts into small groups by depth-first assignment of
//! generator images, checking each relator once its generators are all assigned.

use rayon::prelude::*;

use super::HomError;
use crate::group::FiniteGroup;
use crate::knotpres::Presentation;

pub const DEFAULT_BUDGET: u128 = 1_000_000_000;

struct Search<'a, G: FiniteGroup> {
    group: &'a G,
    // powers[gen][slot][elem]
    powers: Vec<Vec<Vec<G::Elem>>>,
    // relator letters as (gen, slot), grouped by the generator completing them
    checks: Vec<Vec<Vec<(usize, usize)>>>,
    nelems: usize,
}

impl<G: FiniteGroup + Sync> Search<'_, G>
where
    G::Elem: Send + Sync,
{
    fn holds(&self, letters: &[(usize, usize)], assign: &[usize]) -> bool {
        let mut acc = self.group.identity();
        for &(g, slot) in letters {
            acc = self.group.mul(&acc, &self.powers[g][slot][assign[g]]);
        }
        self.group.is_identity(&acc)
    }

    fn count(&self, depth: usize, assign: &mut Vec<usize>) -> u64 {
        if depth == self.checks.len() {
            return 1;
        }
        let mut total = 0;
        for e in 0..self.nelems {
            assign.push(e);
            if self.checks[depth].iter().all(|r| self.holds(r, assign)) {
                total += self.count(depth + 1, assign);
            }
            assign.pop();
        }
        total
    }
}

/// |Hom(⟨gens | rels⟩, G)|. Generators are assigned in declaration order, images in
/// the group's element order; the first generator's image is split across threads.
pub fn count_homs_bruteforce<G>(pres: &Presentation, group: &G, budget: u128) -> Result<u64, HomError>
where
    G: FiniteGroup + Sync,
    G::Elem: Send + Sync,
{
    pres.validate()?;
    let elems = group.elements();
    let ngens = pres.gens.len();
    let needed = (elems.len() as u128).saturating_pow(ngens as u32);
    if needed > budget {
        return Err(HomError::BudgetExceeded { needed, budget });
    }

    let mut exps: Vec<Vec<i64>> = vec![Vec::new(); ngens];
    for r in &pres.rels {
        for &(g, e) in &r.0 {
            if !exps[g].contains(&e) {
                exps[g].push(e);
            }
        }
    }
    let powers = exps
        .iter()
        .map(|es| {
            es.iter()
                .map(|&e| elems.iter().map(|x| group.pow(x, e)).collect())
                .collect()
        })
        .collect();
    // empty relators always hold and are never checked
    let mut checks = vec![Vec::new(); ngens];
    for r in &pres.rels {
        if let Some(m) = r.max_gen() {
            checks[m].push(
                r.0.iter()
                    .map(|&(g, e)| (g, exps[g].iter().position(|&x| x == e).unwrap()))
                    .collect::<Vec<_>>(),
            );
        }
    }
    if ngens == 0 {
        return Ok(1);
    }
    let search = Search {
        group,
        powers,
        checks,
        nelems: elems.len(),
    };
    let total = (0..elems.len())
        .into_par_iter()
        .map(|e| {
            let mut assign = vec![e];
            if search.checks[0].iter().all(|r| search.holds(r, &assign)) {
                search.count(1, &mut assign)
            } else {
                0
            }
        })
        .sum();
    Ok(total)
}
