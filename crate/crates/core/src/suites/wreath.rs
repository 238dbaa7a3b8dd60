//! Wreath product checks: cycle products under powers, reduced standard form,
//! centralisers, conjugation into A(r,s,t) and the structure of n-th roots.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{merge_all, SuiteCheck, SuiteResult};
use crate::arith::{gcd, mod_inverse};
use crate::gdihedral::LambdaGroup;
use crate::group::{CayleyTable, Group};
use crate::wreath::target::WElem;
use crate::wreath::{cyclic_shift, TargetWreath, Wreath, WreathElem, WreathError};

/// Points of the generic suite: Z_5 acting on itself.
pub const GENERIC_POINTS: usize = 5;

/// Powers checked per element by the generic suite.
pub const GENERIC_MAX_POWER: u32 = 30;

type TableWreath = Wreath<CayleyTable>;
type TElem = WreathElem<u32>;

/// A Cayley table of Λ(q,r) and the least conjugate of each element.
fn tabulate(q: u32, r: u32) -> Result<(CayleyTable, Vec<u32>), WreathError> {
    let lam = LambdaGroup::new(q, r)?;
    let (table, _) = CayleyTable::from_group(&lam, CayleyTable::DEFAULT_LIMIT)?;
    let n = table.len() as u32;
    let class = (0..n)
        .map(|x| (0..n).map(|h| table.conjugate(&h, &x)).min().unwrap())
        .collect();
    Ok((table, class))
}

/// Element number `idx` of a table wreath: hat = idx mod |top|, then base digits.
fn decode(w: &TableWreath, mut idx: u64) -> TElem {
    let nt = w.top().len() as u64;
    let nb = w.base().len() as u64;
    let hat = (idx % nt) as u32;
    idx /= nt;
    let comps = (0..w.npoints())
        .map(|_| {
            let c = (idx % nb) as u32;
            idx /= nb;
            c
        })
        .collect();
    WreathElem { comps, hat }
}

fn element_count(w: &TableWreath) -> u64 {
    (w.base().len() as u64).pow(w.npoints() as u32) * w.top().len() as u64
}

/// Λ(2,3) ≀ Z_5, checked over every element: the power identity
/// π_g(γ^m) = π_g(γ)^{m/gcd(ℓ_g, m)} with γ̂^m the hat of γ^m and the class of
/// π_g(γ^m) constant on γ̂-orbits, for m ≤ `max_m`; the postconditions of to_rsf;
/// and the base-point shift π_{g·γ̂}(γ) = γ_g⁻¹ π_g(γ) γ_g.
pub fn generic_wreath_suite(max_m: u32) -> Result<SuiteResult, WreathError> {
    let (table, class) = tabulate(2, 3)?;
    let w = cyclic_shift(table, GENERIC_POINTS);
    let total = element_count(&w);
    let chunk = total / (w.top().len() as u64 * w.base().len() as u64);
    let parts: Vec<[SuiteCheck; 3]> = (0..total / chunk)
        .into_par_iter()
        .map(|task| {
            let mut out = [
                SuiteCheck::new("power_cycle_products"),
                SuiteCheck::new("rsf_conjugation"),
                SuiteCheck::new("cycle_product_shift"),
            ];
            for idx in task * chunk..(task + 1) * chunk {
                let g = decode(&w, idx);
                check_powers(&w, &class, &g, max_m, &mut out[0]);
                check_rsf(&w, &class, &g, &mut out[1]);
                check_shift(&w, &g, &mut out[2]);
            }
            out
        })
        .collect();
    let mut cols: [Vec<SuiteCheck>; 3] = Default::default();
    for p in parts {
        for (col, c) in cols.iter_mut().zip(p) {
            col.push(c);
        }
    }
    let names = ["power_cycle_products", "rsf_conjugation", "cycle_product_shift"];
    Ok(SuiteResult {
        name: "generic_wreath".into(),
        checks: names
            .iter()
            .zip(cols)
            .map(|(n, col)| merge_all(n, col))
            .collect(),
    })
}

fn check_powers(w: &TableWreath, class: &[u32], g: &TElem, max_m: u32, c: &mut SuiteCheck) {
    let np = w.npoints();
    let pi: Vec<u32> = (0..np).map(|p| w.cycle_product(g, p)).collect();
    let len: Vec<u64> = (0..np).map(|p| w.cycle_len(g, p) as u64).collect();
    let mut cur = g.clone();
    for m in 1..=max_m as u64 {
        if m > 1 {
            cur = w.mul(&cur, g);
        }
        let mut ok = cur.hat == w.top().pow(&g.hat, m as i64);
        for p in 0..np {
            let got = w.cycle_product(&cur, p);
            let want = w.base().pow(&pi[p], (m / gcd(len[p], m)) as i64);
            let next = w.cycle_product(&cur, w.act(p, g.hat));
            ok &= got == want && class[got as usize] == class[next as usize];
        }
        c.record(ok, || format!("power identity fails for {g:?} at m = {m}"));
    }
}

fn check_rsf(w: &TableWreath, class: &[u32], g: &TElem, c: &mut SuiteCheck) {
    let ok = match w.to_rsf(g) {
        Err(_) => false,
        Ok((gamma, sigma)) => {
            gamma == w.conjugate(&sigma, g)
                && w.is_rsf(&gamma)
                && gamma.hat == g.hat
                && sigma.hat == w.top().identity_index()
                && (0..w.npoints()).all(|p| {
                    class[w.cycle_product(&gamma, p) as usize] == class[w.cycle_product(g, p) as usize]
                })
        }
    };
    c.record(ok, || format!("to_rsf postconditions fail for {g:?}"));
}

fn check_shift(w: &TableWreath, g: &TElem, c: &mut SuiteCheck) {
    let b = w.base();
    let ok = (0..w.npoints()).all(|p| {
        let gp = &g.comps[p];
        w.cycle_product(g, w.act(p, g.hat)) == b.mul(&b.mul(&b.inv(gp), &w.cycle_product(g, p)), gp)
    });
    c.record(ok, || format!("base-point shift fails for {g:?}"));
}

/// Λ(2,3) ≀ Z_3, over every pair (β, γ) with commuting hats, β constant on
/// orbits of γ̂ and γ constant on orbits of β̂: βγ = γβ iff β_g γ_g = γ_g β_g
/// for all g.
pub fn centraliser_suite() -> Result<SuiteResult, WreathError> {
    let (table, _) = tabulate(2, 3)?;
    let w = cyclic_shift(table, 3);
    let all: Vec<TElem> = (0..element_count(&w)).map(|i| decode(&w, i)).collect();
    let id = w.top().identity_index();
    let parts: Vec<[SuiteCheck; 2]> = all
        .par_iter()
        .map(|b| {
            let mut general = SuiteCheck::new("componentwise_commuting");
            let mut base_only = SuiteCheck::new("componentwise_commuting_trivial_hat");
            for g in &all {
                if !w.top().commute(&b.hat, &g.hat)
                    || !w.constant_on_orbits(&b.comps, g.hat)
                    || !w.constant_on_orbits(&g.comps, b.hat)
                {
                    continue;
                }
                let base = w.base();
                let comps = (0..w.npoints()).all(|p| base.commute(&b.comps[p], &g.comps[p]));
                let ok = w.commute(b, g) == comps;
                let what = || format!("β = {b:?}, γ = {g:?}");
                general.record(ok, what);
                if g.hat == id {
                    base_only.record(ok, what);
                }
            }
            [general, base_only]
        })
        .collect();
    let (mut general, mut base_only) = (Vec::new(), Vec::new());
    for [a, b] in parts {
        general.push(a);
        base_only.push(b);
    }
    Ok(SuiteResult {
        name: "centraliser".into(),
        checks: vec![
            merge_all("componentwise_commuting", general),
            merge_all("componentwise_commuting_trivial_hat", base_only),
        ],
    })
}

/// Seeded checks on W(q,r,s,t): group axioms, bracket additivity, reduced
/// standard form, conjugation into A(r,s,t), and the shape of n-th roots with
/// n = q for elements of A in rsf.
pub fn target_wreath_suite(w: &TargetWreath, samples: usize, seed: u64) -> Result<SuiteResult, WreathError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = w.params();
    let base = w.base();
    let wr = w.wreath();
    let mut axioms = SuiteCheck::new("group_axioms");
    let mut bracket = SuiteCheck::new("bracket_additive");
    let mut rsf = SuiteCheck::new("rsf_conjugation");
    let mut into_a = SuiteCheck::new("conjugation_into_a");
    let mut roots = SuiteCheck::new("root_structure");
    let mut power = SuiteCheck::new("power_cycle_products");
    let class = |e: &crate::gdihedral::LambdaElem| base.class_key(e);

    for _ in 0..samples {
        let (a, b, c) = (w.random_elem(&mut rng), w.random_elem(&mut rng), w.random_elem(&mut rng));
        let id = w.identity();
        let ok = w.mul(&w.mul(&a, &b), &c) == w.mul(&a, &w.mul(&b, &c))
            && w.mul(&a, &w.inv(&a)) == id
            && w.mul(&w.inv(&a), &a) == id
            && w.mul(&a, &id) == a
            && w.mul(&id, &a) == a;
        axioms.record(ok, || format!("axioms fail for {a:?}, {b:?}, {c:?}"));
        let sum = (w.bracket2(&a) + w.bracket2(&b)) % p.r;
        bracket.record(w.bracket2(&w.mul(&a, &b)) == sum, || format!("[[ab]] for {a:?}, {b:?}"));

        let ok = match w.to_rsf(&a) {
            Err(_) => false,
            Ok((g, s)) => {
                g == w.conjugate(&s, &a)
                    && wr.is_rsf(&g)
                    && g.hat == a.hat
                    && s.hat == wr.top().identity_index()
                    && (0..w.npoints())
                        .all(|x| class(&wr.cycle_product(&g, x)) == class(&wr.cycle_product(&a, x)))
            }
        };
        rsf.record(ok, || format!("to_rsf fails for {a:?}"));

        // x^q has cycle products of order 1 or r; its rsf has components of order 1 or r
        let xq = w.pow(&a, p.q as i64);
        let (alpha, _) = w.to_rsf(&xq)?;
        let ok = match w.to_a(&alpha) {
            Err(_) => false,
            Ok((g, s)) => {
                g == w.conjugate(&s, &alpha)
                    && w.in_a(&g)
                    && wr.is_rsf(&g)
                    && g.hat == alpha.hat
                    && (0..w.npoints()).all(|x| class(&g.comps[x]) == class(&alpha.comps[x]))
            }
        };
        into_a.record(ok, || format!("to_a fails for {alpha:?}"));

        let m = rng.gen_range(1..=2 * p.s * p.t) as u64;
        let gm = w.pow(&b, m as i64);
        let ok = gm.hat == wr.top().pow(&b.hat, m as i64)
            && (0..w.npoints()).all(|x| {
                let l = wr.cycle_len(&b, x) as u64;
                wr.cycle_product(&gm, x) == base.pow(&wr.cycle_product(&b, x), (m / gcd(l, m)) as i64)
                    && class(&wr.cycle_product(&gm, x))
                        == class(&wr.cycle_product(&gm, wr.act(x, b.hat)))
            });
        power.record(ok, || format!("power identity fails for {b:?} at m = {m}"));

        if let Ok((g, _)) = w.to_a(&alpha) {
            if g.hat != wr.top().identity_index() {
                check_roots(w, &g, p.q as u64, &mut roots)?;
            }
        }
    }
    Ok(SuiteResult {
        name: format!("target_wreath({},{},{},{})", p.q, p.r, p.s, p.t),
        checks: vec![axioms, bracket, rsf, into_a, power, roots],
    })
}

/// Every enumerated root η of α satisfies η^n = α, η̂ = α̂^k for the n-th root
/// of α̂ in ⟨α̂⟩, constancy on orbits of α̂, η_g = α_g^{1/n} where α_g ≠ 1 and
/// η_g ∈ V elsewhere; and there are |V|^c of them, pairwise distinct.
fn check_roots(w: &TargetWreath, a: &WElem, n: u64, c: &mut SuiteCheck) -> Result<(), WreathError> {
    let wr = w.wreath();
    let base = w.base();
    let roots = w.nth_roots(a, n)?;
    let ord = wr.top().order(&a.hat);
    let k = mod_inverse(n as i64, ord).expect("n coprime to st");
    let hat = wr.top().pow(&a.hat, k as i64);
    let rinv = mod_inverse(n as i64, w.params().r as u64).expect("n coprime to r") as i64;
    let c_orbits = w.free_orbits(a).len() as u32;
    let expected = (base.v_size() as u128).pow(c_orbits);
    c.record(roots.len() as u128 == expected, || {
        format!("{} roots, expected {expected}", roots.len())
    });
    for eta in &roots {
        let ok = w.pow(eta, n as i64) == *a
            && eta.hat == hat
            && wr.constant_on_orbits(&eta.comps, a.hat)
            && (0..w.npoints()).all(|x| {
                let ax = &a.comps[x];
                if base.is_identity(ax) {
                    eta.comps[x].i == 0
                } else {
                    eta.comps[x] == base.pow(ax, rinv)
                }
            });
        c.record(ok, || format!("root {eta:?} of {a:?}"));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn commuting_components() {
        let s = centraliser_suite().unwrap();
        assert!(s.passed(), "{s:?}");
        // β̂ = 1 pairs with any γ of trivial hat; otherwise γ is constant
        let expected = 1728 * 1728 + 2 * 1728 * 12;
        assert_eq!(s.check("componentwise_commuting_trivial_hat").unwrap().cases, expected);
    }

    #[test]
    fn sampled_target_wreath() {
        let w = TargetWreath::new(11, 5, 2, 3).unwrap();
        let s = target_wreath_suite(&w, 200, 3).unwrap();
        assert!(s.passed(), "{s:?}");
        assert!(s.check("root_structure").unwrap().cases > 0);
    }
}
