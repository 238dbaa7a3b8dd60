//! Structural checks on Λ(q,r): orders, centralisers, conjugacy classes,
//! generation, n-th roots, the D_5 dictionary and non-cyclic solutions of
//! x^a = y^b. Each check compares a closed form against brute force.

use std::collections::{BTreeSet, HashMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{merge_all, SuiteCheck, SuiteResult};
use crate::arith::gcd;
use crate::ffield::FieldElem;
use crate::gdihedral::{LambdaElem, LambdaError, LambdaGroup};
use crate::group::{FiniteGroup, Group};
use crate::wreath::{TargetWreath, WreathError};

/// Groups covered by the exhaustive Λ suite.
pub const SUITE_GROUPS: [(u32, u32); 7] = [(2, 3), (3, 2), (2, 5), (5, 2), (11, 5), (7, 3), (3, 7)];

/// Above this many (pair × closure) steps the generation check switches from
/// direct closure of every pair to canonicalised representatives.
const DIRECT_GENERATION_LIMIT: u64 = 20_000_000;

/// Exponents for the n-th root check.
pub const ROOT_EXPONENTS: std::ops::RangeInclusive<u64> = 2..=12;

pub fn lambda_suite(q: u32, r: u32) -> Result<SuiteResult, LambdaError> {
    lambda_suite_for(&LambdaGroup::new(q, r)?)
}

pub fn lambda_suite_for(lam: &LambdaGroup) -> Result<SuiteResult, LambdaError> {
    let elems = lam.elements();
    Ok(SuiteResult {
        name: format!("lambda({},{})", lam.q(), lam.r()),
        checks: vec![
            element_orders(lam, &elems),
            commuting_pairs(lam, &elems),
            conjugacy_classes(lam, &elems),
            generation(lam, &elems)?,
            nth_roots(lam, &elems)?,
        ],
    })
}

fn show(g: &LambdaElem) -> String {
    format!("({:?},{})", g.v.coeffs.as_slice(), g.i)
}

fn element_orders(lam: &LambdaGroup, elems: &[LambdaElem]) -> SuiteCheck {
    let (q, r) = (lam.q() as u64, lam.r() as u64);
    let mut c = SuiteCheck::new("element_orders");
    for g in elems {
        let o = lam.order(g);
        let ok = o == lam.lorder(g) && [1, q, r].contains(&o);
        c.record(ok, || format!("{} has order {o}", show(g)));
    }
    c
}

/// ⟨g⟩ as a set.
fn cyclic(lam: &LambdaGroup, g: &LambdaElem) -> HashSet<LambdaElem> {
    let mut out = HashSet::new();
    let mut cur = lam.identity();
    loop {
        out.insert(cur.clone());
        cur = lam.mul(&cur, g);
        if lam.is_identity(&cur) {
            return out;
        }
    }
}

/// g, h commute iff both lie in V or both lie in one cyclic subgroup of order r.
fn commuting_pairs(lam: &LambdaGroup, elems: &[LambdaElem]) -> SuiteCheck {
    let r = lam.r() as u64;
    let parts: Vec<SuiteCheck> = elems
        .par_iter()
        .map(|g| {
            let mut c = SuiteCheck::new("commuting_pairs");
            let gen = if lam.lorder(g) == r { Some(cyclic(lam, g)) } else { None };
            for h in elems {
                let predicted = (g.i == 0 && h.i == 0)
                    || gen.as_ref().is_some_and(|s| s.contains(h))
                    || lam.is_identity(g);
                c.record(lam.commute(g, h) == predicted, || {
                    format!("{} and {}: predicted commute = {predicted}", show(g), show(h))
                });
            }
            c
        })
        .collect();
    merge_all("commuting_pairs", parts)
}

fn conjugacy_classes(lam: &LambdaGroup, elems: &[LambdaElem]) -> SuiteCheck {
    let (r, vs) = (lam.r() as usize, lam.v_size() as usize);
    let mut c = SuiteCheck::new("conjugacy_classes");
    let mut seen: HashSet<LambdaElem> = HashSet::new();
    for g in elems {
        if seen.contains(g) {
            continue;
        }
        let orbit: BTreeSet<LambdaElem> = elems.iter().map(|h| lam.conjugate(h, g)).collect();
        let size = orbit.len();
        let size_ok = if lam.is_identity(g) {
            size == 1
        } else if g.i == 0 {
            size == r
        } else {
            size == vs
        };
        c.record(size_ok, || format!("class of {} has size {size}", show(g)));
        c.record(lam.conj_class(g) == orbit, || {
            format!("closed-form class of {} differs from its orbit", show(g))
        });
        let key = orbit.iter().next().unwrap();
        for x in &orbit {
            c.record(lam.class_key(x) == *key, || format!("class key of {}", show(x)));
        }
        seen.extend(orbit);
    }
    c
}

fn field_inverse(lam: &LambdaGroup, x: &FieldElem) -> FieldElem {
    let f = lam.field();
    f.pow(x, f.size() - 2)
}

/// Every pair (a, b) with ord a = q and ord b = r generates Λ.
///
/// Small groups close every pair directly. Larger ones conjugate each pair by
/// h = (u, 0), u = −v(1 − ζ^i)⁻¹, taking b = (v, i) to (0, i); the conjugation is
/// checked, and ⟨hah⁻¹, (0, i)⟩ = ⟨hah⁻¹, (0, 1)⟩ is closed once per hah⁻¹.
fn generation(lam: &LambdaGroup, elems: &[LambdaElem]) -> Result<SuiteCheck, LambdaError> {
    let (q, r) = (lam.q() as u64, lam.r() as u64);
    let n = elems.len();
    let of_q: Vec<&LambdaElem> = elems.iter().filter(|g| lam.lorder(g) == q).collect();
    let of_r: Vec<&LambdaElem> = elems.iter().filter(|g| lam.lorder(g) == r).collect();
    let pairs = (of_q.len() * of_r.len()) as u64;
    let mut c = SuiteCheck::new("generation");

    if pairs * n as u64 <= DIRECT_GENERATION_LIMIT {
        let parts: Vec<SuiteCheck> = of_q
            .par_iter()
            .map(|a| {
                let mut c = SuiteCheck::new("generation");
                for b in &of_r {
                    let size = lam.gen_closure(&[(*a).clone(), (*b).clone()], n).map(|s| s.len());
                    c.record(size == Ok(n), || {
                        format!("<{}, {}> has size {size:?}", show(a), show(b))
                    });
                }
                c
            })
            .collect();
        return Ok(merge_all("generation", parts));
    }

    let f = lam.field();
    let unit = LambdaElem { v: f.zero(), i: 1 };
    let mut closes: HashMap<LambdaElem, bool> = HashMap::new();
    for a in &of_q {
        let size = lam.gen_closure(&[(*a).clone(), unit.clone()], n).map(|s| s.len());
        closes.insert((*a).clone(), size == Ok(n));
    }
    for b in &of_r {
        // 1 − ζ^i is a unit since ζ^i ≠ 1
        let denom = f.sub(&f.one(), f.zeta_power(b.i as i64));
        let u = f.neg(&f.mul(&b.v, &field_inverse(lam, &denom)));
        let h = lam.translation(u);
        let target = LambdaElem { v: f.zero(), i: b.i };
        let conj_ok = lam.conjugate(&h, b) == target;
        for a in &of_q {
            let a2 = lam.conjugate(&h, a);
            let ok = conj_ok && a2.i == 0 && closes.get(&a2).copied().unwrap_or(false);
            c.record(ok, || format!("<{}, {}> does not generate", show(a), show(b)));
        }
    }
    Ok(c)
}

/// A nontrivial g has an n-th root iff gcd(ord g, n) = 1, and then exactly one,
/// which nth_root returns. The identity has 1 + (|V|−1)[q | n] + (|Λ|−|V|)[r | n].
fn nth_roots(lam: &LambdaGroup, elems: &[LambdaElem]) -> Result<SuiteCheck, LambdaError> {
    let (q, r) = (lam.q() as u64, lam.r() as u64);
    let (vs, total) = (lam.v_size(), lam.order_of_group());
    let mut c = SuiteCheck::new("nth_roots");
    for n in ROOT_EXPONENTS {
        let mut buckets: HashMap<LambdaElem, Vec<&LambdaElem>> = HashMap::new();
        for x in elems {
            buckets.entry(lam.pow(x, n as i64)).or_default().push(x);
        }
        for g in elems {
            let found = buckets.get(g).map(Vec::as_slice).unwrap_or(&[]);
            if lam.is_identity(g) {
                let expected = 1
                    + if n % q == 0 { vs - 1 } else { 0 }
                    + if n % r == 0 { total - vs } else { 0 };
                c.record(found.len() as u64 == expected, || {
                    format!("identity has {} {n}-th roots, expected {expected}", found.len())
                });
                c.record(lam.nth_root(g, n) == Err(LambdaError::IdentityRoot), || {
                    "nth_root accepted the identity".into()
                });
                continue;
            }
            let coprime = gcd(lam.lorder(g), n) == 1;
            let root = lam.nth_root(g, n)?;
            let ok = if coprime {
                found.len() == 1 && root.as_ref() == Some(found[0])
            } else {
                found.is_empty() && root.is_none()
            };
            c.record(ok, || format!("{} has {} {n}-th roots", show(g), found.len()));
        }
    }
    Ok(c)
}

/// The dictionary between Λ(5,2) and D_5: σ_k = (k, ζ) and ρ_k = (2k, 1), with
/// the wreath product multiplication over H ≀ D_5 for H = Λ(2,3).
pub fn d5_fixture() -> Result<SuiteResult, WreathError> {
    let lam = LambdaGroup::new(5, 2)?;
    let f = lam.field();
    let sigma = |k: i64| LambdaElem { v: f.scalar(k), i: 1 };
    let rho = |k: i64| LambdaElem { v: f.scalar(2 * k), i: 0 };

    let mut sub = SuiteCheck::new("rotation_subgroup");
    let rot = lam.gen_closure(&[rho(1)], 10)?;
    let expected: Vec<LambdaElem> = {
        let mut v: Vec<_> = (0..5).map(rho).collect();
        v.sort();
        v
    };
    sub.record(rot.len() == 5, || format!("<ρ_1> has order {}", rot.len()));
    sub.record(rot == expected, || "<ρ_1> is not {ρ_k}".into());
    sub.record(rot == lam.v_elements(), || "<ρ_1> is not V".into());

    let mut refl = SuiteCheck::new("reflections");
    let class: Vec<LambdaElem> = lam.elements().into_iter().filter(|g| g.i == 1).collect();
    let sigmas: BTreeSet<LambdaElem> = (0..5).map(sigma).collect();
    refl.record(class.len() == 5, || format!("{} elements of bracket 1", class.len()));
    refl.record(class.iter().cloned().collect::<BTreeSet<_>>() == sigmas, || {
        "bracket-1 elements are not the σ_k".into()
    });
    refl.record(lam.conj_class(&sigma(0)) == sigmas, || "σ_k are not one class".into());
    for k in 0..5 {
        refl.record(lam.order(&sigma(k)) == 2, || format!("σ_{k} is not an involution"));
    }

    let mut rc = SuiteCheck::new("reflection_conjugation");
    let mut tc = SuiteCheck::new("rotation_conjugation");
    for k in 0..5 {
        for i in 0..5 {
            let got = lam.mul(&lam.mul(&lam.inv(&sigma(k)), &sigma(i)), &sigma(k));
            rc.record(got == sigma(2 * k - i), || {
                format!("σ_{k}⁻¹σ_{i}σ_{k} = {}", show(&got))
            });
            let got = lam.mul(&lam.mul(&lam.inv(&rho(k)), &sigma(i)), &rho(k));
            tc.record(got == sigma(i + k), || format!("ρ_{k}⁻¹σ_{i}ρ_{k} = {}", show(&got)));
        }
    }

    Ok(SuiteResult {
        name: "d5_fixture".into(),
        checks: vec![sub, refl, rc, tc, d5_wreath_products(&sigma, &rho)?],
    })
}

/// In Λ(2,3) ≀ D_5 with points σ_k: for α̂ = ρ_1 and β̂ = σ_0,
/// (αβ)_i = α_i β_{i+1}, the hat is ρ_1σ_0, and (α⁻¹)_i = (α_{i−1})⁻¹.
fn d5_wreath_products(
    sigma: &dyn Fn(i64) -> LambdaElem,
    rho: &dyn Fn(i64) -> LambdaElem,
) -> Result<SuiteCheck, WreathError> {
    let w = TargetWreath::new(2, 3, 5, 2)?;
    let base = w.base().clone();
    let mut c = SuiteCheck::new("wreath_products");
    for k in 0..5 {
        c.record(w.point_of(&sigma(k)) == Some(k as usize), || format!("σ_{k} is not point {k}"));
    }
    let top = w.top_group().clone();
    let hat_ab = top.mul(&rho(1), &sigma(0));
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let nb = base.order_of_group() as usize;
    for _ in 0..20 {
        let mut comps = || -> Vec<LambdaElem> {
            (0..5).map(|_| base.element_at(rng.gen_range(0..nb))).collect()
        };
        let a = w.elem(comps(), &rho(1))?;
        let b = w.elem(comps(), &sigma(0))?;
        let ab = w.mul(&a, &b);
        c.record(*w.top_elem(ab.hat) == hat_ab, || "hat of αβ is not ρ_1σ_0".into());
        let ai = w.inv(&a);
        for i in 0..5 {
            let expected = base.mul(&a.comps[i], &b.comps[(i + 1) % 5]);
            c.record(ab.comps[i] == expected, || format!("(αβ)_{i} != α_{i}β_{}", (i + 1) % 5));
            let expected = base.inv(&a.comps[(i + 4) % 5]);
            c.record(ai.comps[i] == expected, || format!("(α⁻¹)_{i} != (α_{})⁻¹", (i + 4) % 5));
        }
    }
    Ok(c)
}

/// Non-cyclic solutions of g^a = h^b in Λ(q,r), each checked to satisfy
/// g^a = h^b = 1 and to generate Λ.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct NonCyclicReport {
    pub q: u32,
    pub r: u32,
    pub a: u64,
    pub b: u64,
    pub count: usize,
    pub suite: SuiteResult,
}

pub fn noncyclic_suite(q: u32, r: u32, a: u64, b: u64) -> Result<NonCyclicReport, LambdaError> {
    let lam = LambdaGroup::new(q, r)?;
    let sols = lam.noncyclic_solutions(a, b)?;
    let n = lam.order_of_group() as usize;
    let mut c = SuiteCheck::new("noncyclic_solutions");
    for (g, h) in &sols {
        let ga = lam.pow(g, a as i64);
        c.record(ga == lam.pow(h, b as i64), || format!("{}^a != {}^b", show(g), show(h)));
        c.record(lam.is_identity(&ga), || format!("{}^a is not trivial", show(g)));
        let size = lam.gen_closure(&[g.clone(), h.clone()], n).map(|s| s.len());
        c.record(size == Ok(n), || format!("<{}, {}> has size {size:?}", show(g), show(h)));
    }
    Ok(NonCyclicReport {
        q,
        r,
        a,
        b,
        count: sols.len(),
        suite: SuiteResult {
            name: format!("noncyclic({q},{r},{a},{b})"),
            checks: vec![c],
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_groups_pass() {
        for (q, r) in [(2, 3), (3, 2), (5, 2)] {
            let s = lambda_suite(q, r).unwrap();
            assert!(s.passed(), "{s:?}");
        }
    }

    #[test]
    fn d5_dictionary() {
        let s = d5_fixture().unwrap();
        assert!(s.passed(), "{s:?}");
        assert_eq!(s.check("reflection_conjugation").unwrap().cases, 25);
    }

    #[test]
    fn noncyclic_counts() {
        let rep = noncyclic_suite(2, 3, 2, 3).unwrap();
        assert_eq!(rep.count, 24);
        assert!(rep.suite.passed());
        assert_eq!(noncyclic_suite(2, 3, 5, 7).unwrap().count, 0);
    }
}
