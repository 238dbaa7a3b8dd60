//! Wreath products B ≀ G = B^X ⋊ G over a finite right G-set X.
//!
//! The top group is always tabulated (its elements are indices into a
//! [`CayleyTable`]) and points are `0..n`. Products follow
//! (αβ)_g = α_g β_{g·α̂} and (α⁻¹)_g = (α_{g·α̂⁻¹})⁻¹.

pub mod oracle;
pub mod target;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{gcd, mod_inverse};
use crate::group::{CayleyTable, Group};

pub use target::{TargetWreath, WreathParams, XiElement};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WreathError {
    #[error("action is not a right action: {0}")]
    BadAction(String),
    #[error("element does not belong to this wreath product")]
    Foreign,
    #[error("cycle of length {len} at point {point} is not coprime to its cycle product order {order}")]
    NotCoprime { point: usize, len: usize, order: u64 },
    #[error("cycle product at point {0} has order q; element is not conjugate into A(r,s,t)")]
    NotInA(usize),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parameters: {0}")]
    Params(String),
    #[error(transparent)]
    Lambda(#[from] crate::gdihedral::LambdaError),
    #[error(transparent)]
    Group(#[from] crate::group::GroupError),
}

/// ((α_g)_{g ∈ X}, α̂)
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct WreathElem<E> {
    pub comps: Vec<E>,
    pub hat: u32,
}

#[derive(Debug, Clone)]
pub struct Wreath<B: Group> {
    base: B,
    top: CayleyTable,
    npoints: usize,
    // action[hat * npoints + point] = point · hat
    action: Vec<u32>,
}

impl<B: Group> Wreath<B> {
    /// Builds the context and checks that `act` is a right action.
    pub fn new(
        base: B,
        top: CayleyTable,
        npoints: usize,
        act: impl Fn(usize, u32) -> usize,
    ) -> Result<Self, WreathError> {
        let mut action = Vec::with_capacity(top.len() * npoints);
        for h in 0..top.len() as u32 {
            for p in 0..npoints {
                let img = act(p, h);
                if img >= npoints {
                    return Err(WreathError::BadAction(format!(
                        "point {p} maps outside X under {h}"
                    )));
                }
                action.push(img as u32);
            }
        }
        let w = Wreath {
            base,
            top,
            npoints,
            action,
        };
        w.check_action()?;
        Ok(w)
    }

    fn check_action(&self) -> Result<(), WreathError> {
        let id = self.top.identity_index();
        for p in 0..self.npoints {
            if self.act(p, id) != p {
                return Err(WreathError::BadAction(format!("identity moves point {p}")));
            }
        }
        for a in 0..self.top.len() as u32 {
            for b in 0..self.top.len() as u32 {
                let ab = self.top.op(a, b);
                for p in 0..self.npoints {
                    if self.act(self.act(p, a), b) != self.act(p, ab) {
                        return Err(WreathError::BadAction(format!(
                            "(p·a)·b != p·(ab) at p={p}, a={a}, b={b}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn base(&self) -> &B {
        &self.base
    }

    pub fn top(&self) -> &CayleyTable {
        &self.top
    }

    pub fn npoints(&self) -> usize {
        self.npoints
    }

    /// g · h for a point g and top element h.
    #[inline]
    pub fn act(&self, point: usize, hat: u32) -> usize {
        self.action[hat as usize * self.npoints + point] as usize
    }

    pub fn elem(&self, comps: Vec<B::Elem>, hat: u32) -> Result<WreathElem<B::Elem>, WreathError> {
        let e = WreathElem { comps, hat };
        if self.contains(&e) {
            Ok(e)
        } else {
            Err(WreathError::Foreign)
        }
    }

    /// Element with trivial hat and the given components.
    pub fn base_elem(&self, comps: Vec<B::Elem>) -> WreathElem<B::Elem> {
        WreathElem {
            comps,
            hat: self.top.identity_index(),
        }
    }

    /// Element with all components equal to `c`.
    pub fn constant(&self, c: &B::Elem, hat: u32) -> WreathElem<B::Elem> {
        WreathElem {
            comps: vec![c.clone(); self.npoints],
            hat,
        }
    }

    pub fn checked_wmul(
        &self,
        a: &WreathElem<B::Elem>,
        b: &WreathElem<B::Elem>,
    ) -> Result<WreathElem<B::Elem>, WreathError> {
        if !self.contains(a) || !self.contains(b) {
            return Err(WreathError::Foreign);
        }
        Ok(self.mul(a, b))
    }

    /// The cycle (g, g·ĥ, g·ĥ², ...) of `hat` through `point`.
    pub fn cycle(&self, hat: u32, point: usize) -> Vec<usize> {
        let mut out = vec![point];
        let mut cur = self.act(point, hat);
        while cur != point {
            out.push(cur);
            cur = self.act(cur, hat);
        }
        out
    }

    /// Length of the cycle of α̂ through `point`.
    pub fn cycle_len(&self, a: &WreathElem<B::Elem>, point: usize) -> usize {
        self.cycle(a.hat, point).len()
    }

    /// Disjoint cycles of `hat`, each starting at its least point, ordered by that point.
    pub fn orbits(&self, hat: u32) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.npoints];
        let mut out = Vec::new();
        for p in 0..self.npoints {
            if !seen[p] {
                let c = self.cycle(hat, p);
                for &x in &c {
                    seen[x] = true;
                }
                out.push(c);
            }
        }
        out
    }

    /// π_g(α) = α_g α_{g·α̂} ⋯ α_{g·α̂^{ℓ-1}}
    pub fn cycle_product(&self, a: &WreathElem<B::Elem>, point: usize) -> B::Elem {
        self.cycle(a.hat, point)
            .iter()
            .fold(self.base.identity(), |acc, &p| self.base.mul(&acc, &a.comps[p]))
    }

    /// Components constant on orbits of the hat.
    pub fn is_rsf(&self, g: &WreathElem<B::Elem>) -> bool {
        (0..self.npoints).all(|p| g.comps[self.act(p, g.hat)] == g.comps[p])
    }

    /// Whether `comps` is constant on orbits of `hat`.
    pub fn constant_on_orbits(&self, comps: &[B::Elem], hat: u32) -> bool {
        (0..self.npoints).all(|p| comps[self.act(p, hat)] == comps[p])
    }

    /// Conjugates α into reduced standard form. Returns (γ, σ) with γ = σασ⁻¹,
    /// σ̂ = 1, γ̂ = α̂, and on each cycle γ equal to the ℓ-th root ρ = p^e of the
    /// cycle product p taken at the cycle's least point (eℓ = 1 mod ord p).
    #[allow(clippy::type_complexity)]
    pub fn to_rsf(
        &self,
        a: &WreathElem<B::Elem>,
    ) -> Result<(WreathElem<B::Elem>, WreathElem<B::Elem>), WreathError> {
        let base = &self.base;
        let mut sigma = vec![base.identity(); self.npoints];
        let mut gamma = vec![base.identity(); self.npoints];
        for cyc in self.orbits(a.hat) {
            let len = cyc.len();
            let p = cyc
                .iter()
                .fold(base.identity(), |acc, &g| base.mul(&acc, &a.comps[g]));
            let ord = base.order(&p);
            if gcd(ord, len as u64) != 1 {
                return Err(WreathError::NotCoprime {
                    point: cyc[0],
                    len,
                    order: ord,
                });
            }
            let e = mod_inverse(len as i64, ord).expect("coprime");
            let rho = base.pow(&p, e as i64);
            let rho_inv = base.inv(&rho);
            // σ_{g0} = 1, σ_{g_{j+1}} = ρ⁻¹ σ_{g_j} α_{g_j}
            let mut cur = base.identity();
            for (j, &g) in cyc.iter().enumerate() {
                sigma[g] = cur.clone();
                gamma[g] = rho.clone();
                if j + 1 < len {
                    cur = base.mul(&base.mul(&rho_inv, &cur), &a.comps[g]);
                }
            }
        }
        Ok((
            WreathElem {
                comps: gamma,
                hat: a.hat,
            },
            self.base_elem(sigma),
        ))
    }
}

impl<B: Group> Group for Wreath<B> {
    type Elem = WreathElem<B::Elem>;

    fn identity(&self) -> Self::Elem {
        WreathElem {
            comps: vec![self.base.identity(); self.npoints],
            hat: self.top.identity_index(),
        }
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let comps = (0..self.npoints)
            .map(|g| self.base.mul(&a.comps[g], &b.comps[self.act(g, a.hat)]))
            .collect();
        WreathElem {
            comps,
            hat: self.top.op(a.hat, b.hat),
        }
    }

    fn inv(&self, a: &Self::Elem) -> Self::Elem {
        let hinv = self.top.inverse(a.hat);
        let comps = (0..self.npoints)
            .map(|g| self.base.inv(&a.comps[self.act(g, hinv)]))
            .collect();
        WreathElem { comps, hat: hinv }
    }

    fn contains(&self, a: &Self::Elem) -> bool {
        a.comps.len() == self.npoints
            && (a.hat as usize) < self.top.len()
            && a.comps.iter().all(|c| self.base.contains(c))
    }
}

/// Z_n acting on n points by p · k = p + k.
pub fn cyclic_shift<B: Group>(base: B, n: usize) -> Wreath<B> {
    Wreath::new(base, CayleyTable::cyclic(n), n, |p, k| (p + k as usize) % n)
        .expect("cyclic shift is a right action")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gdihedral::LambdaGroup;
    use crate::group::FiniteGroup;

    fn tiny() -> (Wreath<CayleyTable>, Vec<crate::gdihedral::LambdaElem>) {
        let lam = LambdaGroup::new(2, 3).unwrap();
        let (table, labels) = CayleyTable::from_group(&lam, 100).unwrap();
        (cyclic_shift(table, 5), labels)
    }

    #[test]
    fn rejects_non_actions() {
        let z3 = CayleyTable::cyclic(3);
        let left = Wreath::new(CayleyTable::cyclic(2), z3.clone(), 3, |p, _| p.min(1));
        assert!(left.is_err());
        let moved = Wreath::new(CayleyTable::cyclic(2), z3, 3, |p, _| (p + 1) % 3);
        assert!(matches!(moved, Err(WreathError::BadAction(_))));
    }

    #[test]
    fn identity_and_inverse() {
        let (w, _) = tiny();
        let a = w.elem(vec![1, 5, 7, 0, 11], 2).unwrap();
        assert_eq!(w.mul(&w.identity(), &a), a);
        assert_eq!(w.mul(&a, &w.inv(&a)), w.identity());
        assert_eq!(w.inv(&w.identity()), w.identity());
        let c = w.constant(&3, 4);
        assert_eq!(w.mul(&c, &w.inv(&c)), w.identity());
        assert!(w.elem(vec![1, 2], 0).is_err());
        assert!(w.checked_wmul(&a, &WreathElem { comps: vec![0; 5], hat: 9 }).is_err());
    }

    #[test]
    fn cycle_products_on_shift() {
        let (w, _) = tiny();
        let z3 = cyclic_shift(w.base().clone(), 3);
        let a = z3.elem(vec![4, 7, 9], 1).unwrap();
        let b = z3.base();
        assert_eq!(z3.cycle_product(&a, 0), b.mul(&b.mul(&4, &7), &9));
        let id_hat = z3.elem(vec![4, 7, 9], 0).unwrap();
        for g in 0..3 {
            assert_eq!(z3.cycle_len(&id_hat, g), 1);
            assert_eq!(z3.cycle_product(&id_hat, g), id_hat.comps[g]);
        }
        // π_{g·α̂}(α) = α_g⁻¹ π_g(α) α_g
        for g in 0..3 {
            let next = z3.act(g, a.hat);
            let lhs = z3.cycle_product(&a, next);
            let rhs = b.mul(&b.mul(&b.inv(&a.comps[g]), &z3.cycle_product(&a, g)), &a.comps[g]);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn rsf_predicates() {
        let (w, _) = tiny();
        assert!(w.is_rsf(&w.identity()));
        assert!(w.is_rsf(&w.constant(&6, 3)));
        let a = w.elem(vec![1, 1, 1, 1, 2], 1).unwrap();
        assert!(!w.is_rsf(&a));
        let fixed = w.elem(vec![1, 2, 3, 4, 5], 0).unwrap();
        assert!(w.is_rsf(&fixed));
        assert_eq!(w.to_rsf(&fixed).unwrap(), (fixed.clone(), w.identity()));
    }

    #[test]
    fn to_rsf_conjugates() {
        let (w, _) = tiny();
        let b = w.base();
        let elems = b.elements();
        for (k, hat) in [(0usize, 1u32), (3, 2), (7, 4), (11, 0)] {
            let a = w
                .elem((0..5).map(|j| elems[(k + 3 * j) % 12]).collect(), hat)
                .unwrap();
            let (g, s) = w.to_rsf(&a).unwrap();
            assert_eq!(g, w.conjugate(&s, &a));
            assert!(w.is_rsf(&g));
            assert_eq!(g.hat, a.hat);
        }
    }

    #[test]
    fn to_rsf_rejects_non_coprime_cycles() {
        // base Z_2 on a 2-cycle: cycle product of order 2 on a cycle of length 2
        let w = cyclic_shift(CayleyTable::cyclic(2), 2);
        let a = w.elem(vec![1, 0], 1).unwrap();
        assert!(matches!(w.to_rsf(&a), Err(WreathError::NotCoprime { .. })));
    }
}
