//! W(q,r,s,t) = Λ(q,r) ≀ Λ(s,t) acting on C(s,t) = {g ∈ Λ(s,t) : [g] = 1}
//! by g·α = α⁻¹gα, together with A(r,s,t) = ⟨ξ⟩ ≀ Λ(s,t).

use std::collections::HashMap;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{Wreath, WreathElem, WreathError};
use crate::arith::{gcd, mod_inverse};
use crate::gdihedral::{LambdaElem, LambdaGroup};
use crate::group::{CayleyTable, FiniteGroup, Group};

pub type WElem = WreathElem<LambdaElem>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WreathParams {
    pub q: u32,
    pub r: u32,
    pub s: u32,
    pub t: u32,
}

/// A fixed element ξ ∈ Λ(q,r) of order r with [ξ] = 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XiElement {
    xi: LambdaElem,
}

impl XiElement {
    pub fn new(base: &LambdaGroup, xi: LambdaElem) -> Result<Self, WreathError> {
        if !base.contains(&xi) {
            return Err(WreathError::Foreign);
        }
        if base.lorder(&xi) != base.r() as u64 || base.bracket(&xi) != 1 {
            return Err(WreathError::Precondition(
                "ξ must have order r and bracket 1".into(),
            ));
        }
        Ok(XiElement { xi })
    }

    /// ξ = (0, ζ)
    pub fn canonical(base: &LambdaGroup) -> Self {
        XiElement {
            xi: base.zeta_elem(),
        }
    }

    pub fn elem(&self) -> &LambdaElem {
        &self.xi
    }

    pub fn power(&self, base: &LambdaGroup, k: i64) -> LambdaElem {
        base.pow(&self.xi, k)
    }
}

/// JSON shape of a wreath element: {hat, comps}.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WreathView {
    pub hat: LambdaElem,
    pub comps: Vec<LambdaElem>,
}

/// Roots of an element, possibly truncated to a limit.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RootSet {
    pub total: u128,
    pub roots: Vec<WElem>,
}

impl RootSet {
    pub fn complete(&self) -> bool {
        self.roots.len() as u128 == self.total
    }
}

/// The solution set of η^n = m, indexed by 0..total in mixed radix
/// (first coordinate most significant).
enum RootSpace {
    Componentwise {
        options: Vec<Vec<LambdaElem>>,
        hat: u32,
    },
    Structural {
        fixed: Vec<LambdaElem>,
        free: Vec<Vec<usize>>,
        vs: Vec<LambdaElem>,
        hat: u32,
        // (σ⁻¹, σ) mapping roots of σmσ⁻¹ back to roots of m
        conj: Option<(WElem, WElem)>,
    },
}

impl RootSpace {
    fn total(&self) -> u128 {
        match self {
            RootSpace::Componentwise { options, .. } => {
                options.iter().map(|o| o.len() as u128).product()
            }
            RootSpace::Structural { free, vs, .. } => (vs.len() as u128).pow(free.len() as u32),
        }
    }

    fn at(&self, w: &Wreath<LambdaGroup>, mut idx: u128) -> WElem {
        match self {
            RootSpace::Componentwise { options, hat } => {
                let mut comps: Vec<LambdaElem> = options.iter().map(|o| o[0].clone()).collect();
                for (g, o) in options.iter().enumerate().rev() {
                    let len = o.len() as u128;
                    comps[g] = o[(idx % len) as usize].clone();
                    idx /= len;
                }
                WreathElem { comps, hat: *hat }
            }
            RootSpace::Structural {
                fixed,
                free,
                vs,
                hat,
                conj,
            } => {
                let nv = vs.len() as u128;
                let mut comps = fixed.clone();
                for orbit in free.iter().rev() {
                    let v = &vs[(idx % nv) as usize];
                    idx /= nv;
                    for &g in orbit {
                        comps[g] = v.clone();
                    }
                }
                let eta = WreathElem { comps, hat: *hat };
                match conj {
                    Some((sinv, s)) => w.mul(&w.mul(sinv, &eta), s),
                    None => eta,
                }
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct TargetWreath {
    params: WreathParams,
    top: LambdaGroup,
    top_labels: Vec<LambdaElem>,
    top_index: HashMap<LambdaElem, u32>,
    points: Vec<LambdaElem>,
    wreath: Wreath<LambdaGroup>,
    xi: XiElement,
}

impl TargetWreath {
    pub fn new(q: u32, r: u32, s: u32, t: u32) -> Result<Self, WreathError> {
        let base = LambdaGroup::new(q, r)?;
        let top = LambdaGroup::new(s, t)?;
        Self::from_groups(base, top)
    }

    pub fn from_groups(base: LambdaGroup, top: LambdaGroup) -> Result<Self, WreathError> {
        let params = WreathParams {
            q: base.q(),
            r: base.r(),
            s: top.q(),
            t: top.r(),
        };
        let (table, top_labels) = CayleyTable::from_group(&top, CayleyTable::DEFAULT_LIMIT)?;
        let top_index: HashMap<LambdaElem, u32> = top_labels
            .iter()
            .enumerate()
            .map(|(k, e)| (e.clone(), k as u32))
            .collect();
        let points: Vec<LambdaElem> = top_labels.iter().filter(|e| e.i == 1).cloned().collect();
        let point_index: HashMap<&LambdaElem, usize> =
            points.iter().enumerate().map(|(k, e)| (e, k)).collect();
        let act = |p: usize, h: u32| {
            let a = &top_labels[h as usize];
            let img = top.mul(&top.mul(&top.inv(a), &points[p]), a);
            point_index[&img]
        };
        let xi = XiElement::canonical(&base);
        let wreath = Wreath::new(base, table, points.len(), act)?;
        Ok(TargetWreath {
            params,
            top,
            top_labels,
            top_index,
            points,
            wreath,
            xi,
        })
    }

    /// Replaces the fixed ξ used by A(r,s,t).
    pub fn with_xi(mut self, xi: XiElement) -> Self {
        self.xi = xi;
        self
    }

    pub fn params(&self) -> WreathParams {
        self.params
    }

    pub fn wreath(&self) -> &Wreath<LambdaGroup> {
        &self.wreath
    }

    pub fn base(&self) -> &LambdaGroup {
        self.wreath.base()
    }

    pub fn top_group(&self) -> &LambdaGroup {
        &self.top
    }

    pub fn xi(&self) -> &XiElement {
        &self.xi
    }

    pub fn xi_pow(&self, k: i64) -> LambdaElem {
        self.xi.power(self.base(), k)
    }

    pub fn top_elem(&self, hat: u32) -> &LambdaElem {
        &self.top_labels[hat as usize]
    }

    pub fn top_idx(&self, e: &LambdaElem) -> Result<u32, WreathError> {
        self.top_index.get(e).copied().ok_or(WreathError::Foreign)
    }

    pub fn top_elements(&self) -> &[LambdaElem] {
        &self.top_labels
    }

    /// C(s,t) in lexicographic order.
    pub fn points(&self) -> &[LambdaElem] {
        &self.points
    }

    pub fn npoints(&self) -> usize {
        self.points.len()
    }

    pub fn point_of(&self, g: &LambdaElem) -> Option<usize> {
        self.points.iter().position(|p| p == g)
    }

    /// |W| = |Λ(q,r)|^|C| · |Λ(s,t)|
    pub fn order_of_group(&self) -> u128 {
        (self.base().order_of_group() as u128).pow(self.npoints() as u32)
            * self.top_labels.len() as u128
    }

    pub fn elem(&self, comps: Vec<LambdaElem>, hat: &LambdaElem) -> Result<WElem, WreathError> {
        let h = self.top_idx(hat)?;
        self.wreath.elem(comps, h)
    }

    pub fn hat_order(&self, hat: u32) -> u64 {
        self.top.lorder(self.top_elem(hat))
    }

    /// The unique point fixed by a hat of order t: its power lying in C(s,t).
    pub fn hat_fixed_point(&self, hat: u32) -> Result<usize, WreathError> {
        let h = self.top_elem(hat);
        if self.top.lorder(h) != self.params.t as u64 {
            return Err(WreathError::Precondition(format!(
                "hat {h:?} does not have order t = {}",
                self.params.t
            )));
        }
        let k = mod_inverse(h.i as i64, self.params.t as u64).expect("nonzero exponent");
        let f = self.top.pow(h, k as i64);
        Ok(self.point_of(&f).expect("power with bracket 1 lies in C"))
    }

    /// [[α]] = Σ_g [α_g] mod r
    pub fn bracket2(&self, a: &WElem) -> u32 {
        let r = self.params.r as u64;
        (a.comps.iter().map(|c| c.i as u64).sum::<u64>() % r) as u32
    }

    /// Whether ξ^k = g for some k.
    pub fn in_xi(&self, g: &LambdaElem) -> bool {
        *g == self.xi_pow(g.i as i64)
    }

    /// Membership in A(r,s,t).
    pub fn in_a(&self, a: &WElem) -> bool {
        a.comps.iter().all(|c| self.in_xi(c))
    }

    pub fn to_rsf(&self, a: &WElem) -> Result<(WElem, WElem), WreathError> {
        self.wreath.to_rsf(a)
    }

    /// Conjugates α into A(r,s,t) in reduced standard form: (γ, σ) with
    /// γ = σασ⁻¹ and every γ_g a power of ξ.
    pub fn to_a(&self, a: &WElem) -> Result<(WElem, WElem), WreathError> {
        let base = self.base();
        let (gamma, sigma) = self.wreath.to_rsf(a)?;
        let mut tau = vec![base.identity(); self.npoints()];
        let mut changed = false;
        for cyc in self.wreath.orbits(gamma.hat) {
            let c = &gamma.comps[cyc[0]];
            match base.lorder(c) {
                1 => continue,
                o if o == self.params.q as u64 => return Err(WreathError::NotInA(cyc[0])),
                _ => {}
            }
            let target = self.xi_pow(c.i as i64);
            if *c == target {
                continue;
            }
            let h = (0..base.order_of_group() as usize)
                .map(|k| base.element_at(k))
                .find(|h| base.conjugate(h, c) == target)
                .expect("elements of equal bracket off V are conjugate");
            for &g in &cyc {
                tau[g] = h.clone();
            }
            changed = true;
        }
        if !changed {
            return Ok((gamma, sigma));
        }
        let tau = self.wreath.base_elem(tau);
        let gamma = self.wreath.conjugate(&tau, &gamma);
        let sigma = self.wreath.mul(&tau, &sigma);
        Ok((gamma, sigma))
    }

    fn check_root_exponent(&self, n: u64) -> Result<(), WreathError> {
        let p = self.params;
        if n % p.q as u64 != 0 {
            return Err(WreathError::Precondition(format!("q = {} must divide n = {n}", p.q)));
        }
        if gcd(p.r as u64 * p.s as u64 * p.t as u64, n) != 1 {
            return Err(WreathError::Precondition(format!(
                "n = {n} must be coprime to rst = {}",
                p.r * p.s * p.t
            )));
        }
        Ok(())
    }

    fn check_root_target(&self, a: &WElem, n: u64) -> Result<(), WreathError> {
        self.check_root_exponent(n)?;
        if !self.wreath.contains(a) {
            return Err(WreathError::Foreign);
        }
        if a.hat == self.wreath.top().identity_index() {
            return Err(WreathError::Precondition("hat must be nontrivial".into()));
        }
        if !self.in_a(a) || !self.wreath.is_rsf(a) {
            return Err(WreathError::Precondition(
                "element must lie in A(r,s,t) in reduced standard form".into(),
            ));
        }
        Ok(())
    }

    /// Orbits of α̂ on which α is trivial.
    pub fn free_orbits(&self, a: &WElem) -> Vec<Vec<usize>> {
        let base = self.base();
        self.wreath
            .orbits(a.hat)
            .into_iter()
            .filter(|c| base.is_identity(&a.comps[c[0]]))
            .collect()
    }

    /// |V(q,r)|^c, the number of n-th roots of α ∈ A in rsf.
    pub fn nth_root_count(&self, a: &WElem, n: u64) -> Result<u128, WreathError> {
        self.check_root_target(a, n)?;
        let c = self.free_orbits(a).len() as u32;
        Ok((self.base().v_size() as u128).pow(c))
    }

    /// Roots of α ∈ A in rsf: η̂ = α̂^k with kn = 1 mod ord α̂, η_g = α_g^{1/n} where
    /// α_g ≠ 1, and η constant with value in V on each remaining orbit.
    fn structural_space(&self, a: &WElem, n: u64) -> Result<RootSpace, WreathError> {
        self.check_root_target(a, n)?;
        let base = self.base();
        let ord = self.wreath.top().order(&a.hat);
        let k = mod_inverse(n as i64, ord).expect("gcd(st, n) = 1");
        let hat = self.wreath.top().pow(&a.hat, k as i64);
        let rinv = mod_inverse(n as i64, self.params.r as u64).expect("gcd(r, n) = 1") as i64;
        let fixed = a
            .comps
            .iter()
            .map(|c| {
                if base.is_identity(c) {
                    base.identity()
                } else {
                    base.pow(c, rinv)
                }
            })
            .collect();
        Ok(RootSpace::Structural {
            fixed,
            free: self.free_orbits(a),
            vs: base.v_elements(),
            hat,
            conj: None,
        })
    }

    /// Root space of an arbitrary m; `None` when m has no n-th roots.
    fn root_space(&self, m: &WElem, n: u64) -> Result<Option<RootSpace>, WreathError> {
        self.check_root_exponent(n)?;
        if !self.wreath.contains(m) {
            return Err(WreathError::Foreign);
        }
        if m.hat != self.wreath.top().identity_index() {
            return match self.to_a(m) {
                Err(WreathError::NotInA(_)) => Ok(None),
                Err(e) => Err(e),
                Ok((gamma, sigma)) => {
                    let mut space = self.structural_space(&gamma, n)?;
                    if let RootSpace::Structural { conj, .. } = &mut space {
                        *conj = Some((self.wreath.inv(&sigma), sigma));
                    }
                    Ok(Some(space))
                }
            };
        }
        let base = self.base();
        let unit_roots: Vec<LambdaElem> = base
            .elements()
            .into_iter()
            .filter(|e| base.is_identity(&base.pow(e, n as i64)))
            .collect();
        let mut options = Vec::with_capacity(m.comps.len());
        for c in &m.comps {
            if base.is_identity(c) {
                options.push(unit_roots.clone());
            } else {
                match base.nth_root(c, n)? {
                    Some(x) => options.push(vec![x]),
                    None => return Ok(None),
                }
            }
        }
        Ok(Some(RootSpace::Componentwise {
            options,
            hat: self.wreath.top().identity_index(),
        }))
    }

    /// All η with η^n = α, for α ∈ A(r,s,t) in rsf with nontrivial hat; sorted.
    pub fn nth_roots(&self, a: &WElem, n: u64) -> Result<Vec<WElem>, WreathError> {
        let space = self.structural_space(a, n)?;
        let total = space.total();
        self.collect_roots(&space, a, n, 0..total)
    }

    fn collect_roots(
        &self,
        space: &RootSpace,
        m: &WElem,
        n: u64,
        indices: impl Iterator<Item = u128>,
    ) -> Result<Vec<WElem>, WreathError> {
        let mut out = Vec::new();
        for idx in indices {
            let eta = space.at(&self.wreath, idx);
            if self.wreath.pow(&eta, n as i64) != *m {
                return Err(WreathError::Precondition(format!(
                    "computed root fails η^{n} = m"
                )));
            }
            out.push(eta);
        }
        out.sort();
        out.dedup();
        Ok(out)
    }

    /// n-th roots of an arbitrary m: the first `limit` in parameter order (sorted),
    /// with the exact total. Trivial hats are handled component-wise in Λ(q,r);
    /// otherwise m is conjugated into A.
    pub fn all_nth_roots(&self, m: &WElem, n: u64, limit: usize) -> Result<RootSet, WreathError> {
        let Some(space) = self.root_space(m, n)? else {
            return Ok(RootSet::default());
        };
        let total = space.total();
        let roots = self.collect_roots(&space, m, n, 0..total.min(limit as u128))?;
        Ok(RootSet { total, roots })
    }

    /// Up to `k` distinct n-th roots of m chosen uniformly at random (all of them when
    /// there are at most `k`), sorted, with the exact total.
    pub fn sample_nth_roots<R: Rng + ?Sized>(
        &self,
        m: &WElem,
        n: u64,
        k: usize,
        rng: &mut R,
    ) -> Result<RootSet, WreathError> {
        let Some(space) = self.root_space(m, n)? else {
            return Ok(RootSet::default());
        };
        let total = space.total();
        if total <= k as u128 {
            let roots = self.collect_roots(&space, m, n, 0..total)?;
            return Ok(RootSet { total, roots });
        }
        let mut picked = std::collections::BTreeSet::new();
        while picked.len() < k {
            picked.insert(rng.gen_range(0..total));
        }
        let roots = self.collect_roots(&space, m, n, picked.into_iter())?;
        Ok(RootSet { total, roots })
    }

    /// Uniformly random element.
    pub fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R) -> WElem {
        let base = self.base();
        let nb = base.order_of_group() as usize;
        let comps = (0..self.npoints())
            .map(|_| base.element_at(rng.gen_range(0..nb)))
            .collect();
        WreathElem {
            comps,
            hat: rng.gen_range(0..self.top_labels.len() as u32),
        }
    }

    pub fn view(&self, a: &WElem) -> WreathView {
        WreathView {
            hat: self.top_elem(a.hat).clone(),
            comps: a.comps.clone(),
        }
    }
}

impl Group for TargetWreath {
    type Elem = WElem;

    fn identity(&self) -> WElem {
        self.wreath.identity()
    }
    fn mul(&self, a: &WElem, b: &WElem) -> WElem {
        self.wreath.mul(a, b)
    }
    fn inv(&self, a: &WElem) -> WElem {
        self.wreath.inv(a)
    }
    fn contains(&self, a: &WElem) -> bool {
        self.wreath.contains(a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn w11() -> TargetWreath {
        TargetWreath::new(11, 5, 2, 3).unwrap()
    }

    #[test]
    fn point_set_sizes() {
        let w = w11();
        assert_eq!(w.npoints(), 4);
        assert_eq!(w.top_elements().len(), 12);
        assert_eq!(w.order_of_group(), 55u128.pow(4) * 12);
        let w7 = TargetWreath::new(7, 3, 2, 5).unwrap();
        assert_eq!(w7.npoints(), 16);
        assert!(w.points().windows(2).all(|p| p[0] < p[1]));
    }

    #[test]
    fn cycle_lengths_follow_hat_order() {
        let w = w11();
        for h in 0..12u32 {
            let a = WreathElem {
                comps: vec![w.base().identity(); 4],
                hat: h,
            };
            let lens: Vec<usize> = (0..4).map(|g| w.wreath().cycle_len(&a, g)).collect();
            match w.hat_order(h) {
                1 => assert!(lens.iter().all(|&l| l == 1)),
                2 => assert!(lens.iter().all(|&l| l == 2)),
                3 => {
                    assert_eq!(lens.iter().filter(|&&l| l == 1).count(), 1);
                    assert_eq!(lens.iter().filter(|&&l| l == 3).count(), 3);
                    let f = w.hat_fixed_point(h).unwrap();
                    assert_eq!(lens[f], 1);
                }
                o => panic!("unexpected order {o}"),
            }
        }
    }

    #[test]
    fn fixed_points() {
        let w = w11();
        for (k, p) in w.points().iter().enumerate() {
            let h = w.top_idx(p).unwrap();
            assert_eq!(w.hat_fixed_point(h).unwrap(), k);
            let h2 = w.top_idx(&w.top_group().pow(p, 2)).unwrap();
            assert_eq!(w.hat_fixed_point(h2).unwrap(), k);
        }
        let order_s = (0..12u32).find(|&h| w.hat_order(h) == 2).unwrap();
        assert!(w.hat_fixed_point(order_s).is_err());
    }

    #[test]
    fn xi_validation() {
        let w = w11();
        let b = w.base();
        assert!(XiElement::new(b, b.elem(&[3], 1).unwrap()).is_ok());
        assert!(XiElement::new(b, b.elem(&[3], 2).unwrap()).is_err());
        assert!(XiElement::new(b, b.elem(&[3], 0).unwrap()).is_err());
    }

    #[test]
    fn bracket2_is_additive() {
        let w = w11();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let a = w.random_elem(&mut rng);
            let b = w.random_elem(&mut rng);
            let ab = w.mul(&a, &b);
            assert_eq!(w.bracket2(&ab), (w.bracket2(&a) + w.bracket2(&b)) % 5);
        }
        assert_eq!(w.bracket2(&w.identity()), 0);
        let hat = w.top_elem(3).clone();
        let c = w.elem(vec![w.xi().elem().clone(); 4], &hat).unwrap();
        assert_eq!(w.bracket2(&c), 4);
    }

    #[test]
    fn to_a_on_random_elements() {
        let w = w11();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut converted = 0;
        for _ in 0..500 {
            let a = w.random_elem(&mut rng);
            match w.to_a(&a) {
                Ok((g, s)) => {
                    converted += 1;
                    assert_eq!(g, w.conjugate(&s, &a));
                    assert!(w.in_a(&g) && w.wreath().is_rsf(&g));
                    assert_eq!(g.hat, a.hat);
                    assert_eq!(s.hat, w.wreath().top().identity_index());
                }
                Err(WreathError::NotInA(p)) => {
                    assert_eq!(w.base().lorder(&w.wreath().cycle_product(&a, p)), 11);
                }
                Err(e) => panic!("{e}"),
            }
        }
        assert!(converted > 0);
    }

    #[test]
    fn root_preconditions() {
        let w = w11();
        let hat = w.top_elem(3).clone();
        let a = w.elem(vec![w.xi().elem().clone(); 4], &hat).unwrap();
        assert!(w.nth_roots(&a, 3).is_err());
        assert!(w.nth_roots(&a, 22).is_err());
        assert!(w.nth_roots(&a, 55).is_err());
        assert!(w.nth_roots(&w.identity(), 11).is_err());
        assert_eq!(w.nth_roots(&a, 11).unwrap().len(), 1);
    }

    #[test]
    fn trivial_hat_roots_componentwise() {
        let w = w11();
        let b = w.base();
        let m = w.wreath().base_elem(vec![
            b.identity(),
            w.xi().elem().clone(),
            b.identity(),
            b.elem(&[0], 2).unwrap(),
        ]);
        let set = w.all_nth_roots(&m, 11, 1000).unwrap();
        // identity comps admit V (11 choices); order-r comps a unique root
        assert_eq!(set.total, 121);
        assert!(set.complete());
        let bad = w.wreath().base_elem(vec![b.elem(&[1], 0).unwrap(); 4]);
        assert_eq!(w.all_nth_roots(&bad, 11, 10).unwrap().total, 0);
    }
}
