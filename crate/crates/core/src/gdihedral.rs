//! The generalised dihedral groups Λ(q,r) = V(q,r) ⋊ E_q^(r).
//!
//! Elements are kept in the normal form (v, i) meaning (v, ζ^i), with
//! multiplication (v₁, i₁)(v₂, i₂) = (v₁ + ζ^{i₁} v₂, i₁ + i₂).

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{gcd, mod_inverse};
use crate::ffield::{FieldElem, FieldError, FieldSpec};
use crate::group::{self, FiniteGroup, Group, GroupError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LambdaError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("exponent {0} out of range for r = {1}")]
    ExponentOutOfRange(u32, u32),
    #[error("n-th roots of the identity are not unique; enumerate V instead")]
    IdentityRoot,
    #[error("exponents must satisfy a, b >= 2 and gcd(a, b) = 1 (got a = {0}, b = {1})")]
    BadExponents(u64, u64),
}

/// The element (v, ζ^i).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LambdaElem {
    pub v: FieldElem,
    pub i: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaGroup {
    field: Arc<FieldSpec>,
}

impl LambdaGroup {
    pub fn new(q: u32, r: u32) -> Result<Self, LambdaError> {
        Ok(LambdaGroup {
            field: FieldSpec::build(q, r)?,
        })
    }

    pub fn from_field(field: Arc<FieldSpec>) -> Self {
        LambdaGroup { field }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn field_arc(&self) -> Arc<FieldSpec> {
        Arc::clone(&self.field)
    }

    pub fn q(&self) -> u32 {
        self.field.q()
    }

    pub fn r(&self) -> u32 {
        self.field.r()
    }

    /// |V(q,r)| = q^d.
    pub fn v_size(&self) -> u64 {
        self.field.size()
    }

    /// |Λ(q,r)| = q^d · r.
    pub fn order_of_group(&self) -> u64 {
        self.field.size() * self.r() as u64
    }

    pub fn elem(&self, coeffs: &[u32], i: u32) -> Result<LambdaElem, LambdaError> {
        if i >= self.r() {
            return Err(LambdaError::ExponentOutOfRange(i, self.r()));
        }
        Ok(LambdaElem {
            v: self.field.elem(coeffs)?,
            i,
        })
    }

    /// (v, 0) for an additive element v.
    pub fn translation(&self, v: FieldElem) -> LambdaElem {
        LambdaElem { v, i: 0 }
    }

    /// The element (0, 1), of order r and bracket 1.
    pub fn zeta_elem(&self) -> LambdaElem {
        LambdaElem {
            v: self.field.zero(),
            i: 1 % self.r(),
        }
    }

    /// Multiplication with membership checks on both operands.
    pub fn lmul(&self, g: &LambdaElem, h: &LambdaElem) -> Result<LambdaElem, LambdaError> {
        Ok(self.checked_mul(g, h)?)
    }

    pub fn linv(&self, g: &LambdaElem) -> LambdaElem {
        self.inv(g)
    }

    /// Exact order: 1 for the identity, q on V \ {0}, r off V.
    pub fn lorder(&self, g: &LambdaElem) -> u64 {
        if g.i != 0 {
            self.r() as u64
        } else if g.v.is_zero() {
            1
        } else {
            self.q() as u64
        }
    }

    /// The quotient map [g] onto Z_r.
    pub fn bracket(&self, g: &LambdaElem) -> u32 {
        g.i
    }

    /// Conjugacy class, from the closed-form description.
    pub fn conj_class(&self, g: &LambdaElem) -> BTreeSet<LambdaElem> {
        if g.i != 0 {
            self.field
                .elements()
                .into_iter()
                .map(|u| LambdaElem { v: u, i: g.i })
                .collect()
        } else if g.v.is_zero() {
            BTreeSet::from([g.clone()])
        } else {
            (0..self.r())
                .map(|j| LambdaElem {
                    v: self.field.zeta_mul(j, &g.v),
                    i: 0,
                })
                .collect()
        }
    }

    /// Least element of the conjugacy class; equal keys mean conjugate elements.
    pub fn class_key(&self, g: &LambdaElem) -> LambdaElem {
        if g.i != 0 {
            LambdaElem {
                v: self.field.zero(),
                i: g.i,
            }
        } else {
            (0..self.r())
                .map(|j| LambdaElem {
                    v: self.field.zeta_mul(j, &g.v),
                    i: 0,
                })
                .min()
                .unwrap()
        }
    }

    /// The unique n-th root of a nontrivial g when gcd(ord g, n) = 1, namely
    /// g^k with kn = 1 mod ord g; `None` when no root exists.
    pub fn nth_root(&self, g: &LambdaElem, n: u64) -> Result<Option<LambdaElem>, LambdaError> {
        if self.is_identity(g) {
            return Err(LambdaError::IdentityRoot);
        }
        let ord = self.lorder(g);
        if gcd(ord, n) != 1 {
            return Ok(None);
        }
        let k = mod_inverse(n as i64, ord).expect("coprime");
        Ok(Some(self.pow(g, k as i64)))
    }

    pub fn gen_closure(
        &self,
        gens: &[LambdaElem],
        bound: usize,
    ) -> Result<Vec<LambdaElem>, LambdaError> {
        Ok(group::gen_closure(self, gens, bound)?)
    }

    /// Whether ⟨g, h⟩ is cyclic. Every nontrivial element has prime order,
    /// so this holds iff one of them lies in the cyclic group of the other.
    pub fn generates_cyclic(&self, g: &LambdaElem, h: &LambdaElem) -> bool {
        self.in_cyclic(h, g) || self.in_cyclic(g, h)
    }

    fn in_cyclic(&self, x: &LambdaElem, gen: &LambdaElem) -> bool {
        let mut cur = self.identity();
        for _ in 0..self.lorder(gen) {
            if cur == *x {
                return true;
            }
            cur = self.mul(&cur, gen);
        }
        false
    }

    /// All non-cyclic solutions (g, h) to x^a = y^b, sorted.
    pub fn noncyclic_solutions(
        &self,
        a: u64,
        b: u64,
    ) -> Result<Vec<(LambdaElem, LambdaElem)>, LambdaError> {
        if a < 2 || b < 2 || gcd(a, b) != 1 {
            return Err(LambdaError::BadExponents(a, b));
        }
        let elems = self.elements();
        let mut by_power: HashMap<LambdaElem, Vec<usize>> = HashMap::new();
        for (k, h) in elems.iter().enumerate() {
            by_power.entry(self.pow(h, b as i64)).or_default().push(k);
        }
        let mut out = Vec::new();
        for g in &elems {
            if let Some(hs) = by_power.get(&self.pow(g, a as i64)) {
                for &k in hs {
                    let h = &elems[k];
                    if !self.generates_cyclic(g, h) {
                        out.push((g.clone(), h.clone()));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Index of an element in lexicographic order: rank(v) · r + i.
    pub fn index_of(&self, g: &LambdaElem) -> usize {
        self.field.index_of(&g.v) * self.r() as usize + g.i as usize
    }

    pub fn element_at(&self, idx: usize) -> LambdaElem {
        let r = self.r() as usize;
        LambdaElem {
            v: self.field.element_at(idx / r),
            i: (idx % r) as u32,
        }
    }

    /// The normal subgroup V as elements (v, 0).
    pub fn v_elements(&self) -> Vec<LambdaElem> {
        self.field
            .elements()
            .into_iter()
            .map(|v| LambdaElem { v, i: 0 })
            .collect()
    }
}

impl Group for LambdaGroup {
    type Elem = LambdaElem;

    fn identity(&self) -> LambdaElem {
        LambdaElem {
            v: self.field.zero(),
            i: 0,
        }
    }

    fn mul(&self, g: &LambdaElem, h: &LambdaElem) -> LambdaElem {
        let r = self.r();
        let mut i = g.i + h.i;
        if i >= r {
            i -= r;
        }
        LambdaElem {
            v: self.field.add(&g.v, &self.field.zeta_mul(g.i, &h.v)),
            i,
        }
    }

    /// (v, i)^-1 = (−ζ^{-i} v, −i)
    fn inv(&self, g: &LambdaElem) -> LambdaElem {
        let r = self.r();
        let ni = (r - g.i) % r;
        LambdaElem {
            v: self.field.neg(&self.field.zeta_mul(ni, &g.v)),
            i: ni,
        }
    }

    fn contains(&self, g: &LambdaElem) -> bool {
        g.i < self.r() && self.field.contains(&g.v)
    }

    fn is_identity(&self, g: &LambdaElem) -> bool {
        g.i == 0 && g.v.is_zero()
    }

    fn order(&self, g: &LambdaElem) -> u64 {
        // generic loop rather than lorder, so the two can be compared
        let mut cur = g.clone();
        let mut k = 1;
        while !self.is_identity(&cur) {
            cur = self.mul(&cur, g);
            k += 1;
        }
        k
    }
}

impl FiniteGroup for LambdaGroup {
    fn elements(&self) -> Vec<LambdaElem> {
        (0..self.order_of_group() as usize)
            .map(|k| self.element_at(k))
            .collect()
    }

    fn size(&self) -> u64 {
        self.order_of_group()
    }
}
