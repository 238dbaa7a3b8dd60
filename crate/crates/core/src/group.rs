//! A minimal group abstraction shared by the dihedral, wreath and table groups.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt::Debug;
use std::hash::Hash;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("subgroup closure exceeded the bound of {0} elements")]
    ClosureBound(usize),
    #[error("group of order {0} is too large to tabulate (limit {1})")]
    TooLarge(u64, u64),
    #[error("operand does not belong to this group")]
    Foreign,
}

pub trait Group {
    type Elem: Clone + Eq + Ord + Hash + Debug;

    fn identity(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    /// Membership check; operations assume their operands pass it.
    fn contains(&self, a: &Self::Elem) -> bool;

    fn is_identity(&self, a: &Self::Elem) -> bool {
        *a == self.identity()
    }

    fn checked_mul(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, GroupError> {
        if self.contains(a) && self.contains(b) {
            Ok(self.mul(a, b))
        } else {
            Err(GroupError::Foreign)
        }
    }

    fn pow(&self, a: &Self::Elem, e: i64) -> Self::Elem {
        let base = if e < 0 { self.inv(a) } else { a.clone() };
        let mut e = e.unsigned_abs();
        let mut result = self.identity();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &sq);
            }
            e >>= 1;
            if e > 0 {
                sq = self.mul(&sq, &sq);
            }
        }
        result
    }

    /// Multiplicative order by repeated multiplication.
    fn order(&self, a: &Self::Elem) -> u64 {
        let id = self.identity();
        let mut cur = a.clone();
        let mut k = 1;
        while cur != id {
            cur = self.mul(&cur, a);
            k += 1;
        }
        k
    }

    /// h g h^-1
    fn conjugate(&self, h: &Self::Elem, g: &Self::Elem) -> Self::Elem {
        self.mul(&self.mul(h, g), &self.inv(h))
    }

    fn commute(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }
}

pub trait FiniteGroup: Group {
    /// Every element, in a fixed deterministic order.
    fn elements(&self) -> Vec<Self::Elem>;

    fn size(&self) -> u64 {
        self.elements().len() as u64
    }
}

/// Least subgroup containing `gens`, by breadth-first right multiplication.
/// The result is sorted.
pub fn gen_closure<G: Group>(
    group: &G,
    gens: &[G::Elem],
    bound: usize,
) -> Result<Vec<G::Elem>, GroupError> {
    let id = group.identity();
    let mut seen: HashSet<G::Elem> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(id.clone());
    queue.push_back(id);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = group.mul(&x, g);
            if !seen.contains(&y) {
                if seen.len() >= bound {
                    return Err(GroupError::ClosureBound(bound));
                }
                seen.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    let mut out: Vec<_> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}

/// A finite subgroup (given as its element list) is cyclic iff some element
/// has order equal to its size.
pub fn is_cyclic_subgroup<G: Group>(group: &G, elems: &[G::Elem]) -> bool {
    let n = elems.len() as u64;
    elems.iter().any(|e| group.order(e) == n)
}

/// Dense multiplication table for a small group; elements are indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CayleyTable {
    n: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    identity: u32,
}

impl CayleyTable {
    pub const DEFAULT_LIMIT: u64 = 4096;

    /// Tabulates `group`; returns the table and the element behind each index.
    pub fn from_group<G: FiniteGroup>(
        group: &G,
        limit: u64,
    ) -> Result<(CayleyTable, Vec<G::Elem>), GroupError> {
        let size = group.size();
        if size > limit {
            return Err(GroupError::TooLarge(size, limit));
        }
        let labels = group.elements();
        let index: HashMap<&G::Elem, u32> = labels
            .iter()
            .enumerate()
            .map(|(k, e)| (e, k as u32))
            .collect();
        let n = labels.len();
        let mut mul = vec![0u32; n * n];
        for (a, ea) in labels.iter().enumerate() {
            for (b, eb) in labels.iter().enumerate() {
                mul[a * n + b] = index[&group.mul(ea, eb)];
            }
        }
        let inv = labels.iter().map(|e| index[&group.inv(e)]).collect();
        let identity = index[&group.identity()];
        Ok((CayleyTable { n, mul, inv, identity }, labels))
    }

    /// Z_n written additively as indices 0..n.
    pub fn cyclic(n: usize) -> CayleyTable {
        let mut mul = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                mul[a * n + b] = ((a + b) % n) as u32;
            }
        }
        let inv = (0..n).map(|a| ((n - a) % n) as u32).collect();
        CayleyTable {
            n,
            mul,
            inv,
            identity: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn op(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.n + b as usize]
    }

    #[inline]
    pub fn inverse(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    pub fn identity_index(&self) -> u32 {
        self.identity
    }
}

impl Group for CayleyTable {
    type Elem = u32;

    fn identity(&self) -> u32 {
        self.identity
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        self.op(*a, *b)
    }
    fn inv(&self, a: &u32) -> u32 {
        self.inverse(*a)
    }
    fn contains(&self, a: &u32) -> bool {
        (*a as usize) < self.n
    }
}

impl FiniteGroup for CayleyTable {
    fn elements(&self) -> Vec<u32> {
        (0..self.n as u32).collect()
    }
    fn size(&self) -> u64 {
        self.n as u64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_table_basics() {
        let z6 = CayleyTable::cyclic(6);
        assert_eq!(z6.order(&2), 3);
        assert_eq!(z6.pow(&5, -1), 1);
        assert_eq!(gen_closure(&z6, &[4], 100).unwrap(), vec![0, 2, 4]);
        assert!(is_cyclic_subgroup(&z6, &z6.elements()));
        assert_eq!(gen_closure(&z6, &[1], 3), Err(GroupError::ClosureBound(3)));
        assert_eq!(z6.checked_mul(&7, &1), Err(GroupError::Foreign));
    }

    #[test]
    fn tabulating_a_table_is_identity() {
        let z5 = CayleyTable::cyclic(5);
        let (t, labels) = CayleyTable::from_group(&z5, 10).unwrap();
        assert_eq!(labels, vec![0, 1, 2, 3, 4]);
        assert_eq!(t, z5);
        assert!(CayleyTable::from_group(&z5, 4).is_err());
    }
}
