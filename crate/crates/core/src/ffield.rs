//! Arithmetic in GF(q) and in the r-th cyclotomic extension GF(q)^(r).
//!
//! The extension is modelled as Z_q[x] / (m(x)) where m is the lexicographically
//! least monic irreducible factor of the cyclotomic polynomial
//! Q_r(x) = 1 + x + ... + x^(r-1). Coefficient vectors are little-endian
//! (constant term first) everywhere, including the cache file.

use std::fs;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;
use thiserror::Error;

use crate::arith::is_prime;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("the characteristic and the root order must be distinct primes (both {0})")]
    EqualPrimes(u32),
    #[error("element has {got} coefficients, field has degree {expected}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("coefficient {0} out of range for modulus {1}")]
    CoeffOutOfRange(u32, u32),
    #[error("cyclotomic cache record for (q={q}, r={r}) is invalid: {reason}")]
    BadCacheRecord { q: u32, r: u32, reason: String },
    #[error("cache i/o: {0}")]
    CacheIo(String),
}

/// Polynomial over Z_q, little-endian coefficients.
pub type Poly = Vec<u32>;

fn trim(p: &mut Poly) {
    while p.len() > 1 && *p.last().unwrap() == 0 {
        p.pop();
    }
}

fn poly_is_zero(p: &[u32]) -> bool {
    p.iter().all(|&c| c == 0)
}

/// Remainder of `a` modulo the monic polynomial `m`.
pub fn poly_rem(a: &[u32], m: &[u32], q: u32) -> Poly {
    let dm = m.len() - 1;
    let mut r: Vec<u64> = a.iter().map(|&c| c as u64).collect();
    let q64 = q as u64;
    if r.len() > dm {
        for k in (dm..r.len()).rev() {
            let c = r[k] % q64;
            r[k] = 0;
            if c == 0 {
                continue;
            }
            for j in 0..dm {
                let idx = k - dm + j;
                // subtract c*m[j]
                r[idx] = (r[idx] + (q64 - c) * m[j] as u64) % q64;
            }
        }
        r.truncate(dm.max(1));
    }
    let mut out: Poly = r.into_iter().map(|c| (c % q64) as u32).collect();
    trim(&mut out);
    out
}

pub fn poly_mul(a: &[u32], b: &[u32], q: u32) -> Poly {
    let q64 = q as u64;
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % q64;
        }
    }
    let mut out: Poly = out.into_iter().map(|c| c as u32).collect();
    trim(&mut out);
    out
}

/// The cyclotomic polynomial Q_r(x) = (x^r - 1)/(x - 1) for prime r.
pub fn cyclotomic(r: u32) -> Poly {
    vec![1; r as usize]
}

/// Least d >= 1 with q^d = 1 mod r.
pub fn mult_order(q: u32, r: u32) -> Result<usize, FieldError> {
    check_primes(q, r)?;
    let (q, r) = (q as u64, r as u64);
    let mut acc = q % r;
    let mut d = 1;
    while acc != 1 {
        acc = acc * q % r;
        d += 1;
    }
    Ok(d)
}

fn check_primes(q: u32, r: u32) -> Result<(), FieldError> {
    if !is_prime(q as u64) {
        return Err(FieldError::NotPrime(q));
    }
    if !is_prime(r as u64) {
        return Err(FieldError::NotPrime(r));
    }
    if q == r {
        return Err(FieldError::EqualPrimes(q));
    }
    Ok(())
}

/// Monic polynomials of degree `deg` in lexicographic order of their
/// coefficient vector, constant term most significant.
fn monic_candidates(q: u32, deg: usize) -> impl Iterator<Item = Poly> {
    let total = (q as u64).pow(deg as u32);
    (0..total).map(move |mut k| {
        let mut p = vec![0u32; deg + 1];
        for idx in (0..deg).rev() {
            p[idx] = (k % q as u64) as u32;
            k /= q as u64;
        }
        p[deg] = 1;
        p
    })
}

/// Irreducibility by trial division against every monic polynomial of degree <= deg/2.
pub fn is_irreducible(p: &[u32], q: u32) -> bool {
    let deg = p.len() - 1;
    if deg == 0 {
        return false;
    }
    for k in 1..=deg / 2 {
        for cand in monic_candidates(q, k) {
            if poly_is_zero(&poly_rem(p, &cand, q)) {
                return false;
            }
        }
    }
    true
}

fn divides_cyclotomic(p: &[u32], q: u32, r: u32) -> bool {
    poly_is_zero(&poly_rem(&cyclotomic(r), p, q))
}

/// All monic irreducible degree-d factors of Q_r over Z_q, in canonical order.
pub fn cyclotomic_factors(q: u32, r: u32) -> Result<Vec<Poly>, FieldError> {
    let d = mult_order(q, r)?;
    Ok(monic_candidates(q, d)
        .filter(|p| divides_cyclotomic(p, q, r) && is_irreducible(p, q))
        .collect())
}

fn least_factor(q: u32, r: u32, d: usize) -> Poly {
    monic_candidates(q, d)
        .find(|p| divides_cyclotomic(p, q, r) && is_irreducible(p, q))
        .expect("Q_r always has a degree-d irreducible factor")
}

/// Element of GF(q)^(r): `d` residues mod q, constant term first.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FieldElem {
    pub coeffs: SmallVec<[u32; 6]>,
}

impl FieldElem {
    pub fn from_coeffs(coeffs: &[u32]) -> Self {
        FieldElem {
            coeffs: SmallVec::from_slice(coeffs),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

/// A concrete model of the r-th cyclotomic extension of GF(q).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldSpec {
    q: u32,
    r: u32,
    d: usize,
    modulus: Poly,
    zeta: FieldElem,
    zeta_pows: Vec<FieldElem>,
    // zeta_mats[i] is the d×d matrix (row-major) of multiplication by ζ^i
    zeta_mats: Vec<Vec<u32>>,
}

impl FieldSpec {
    /// Builds the canonical model: lexicographically least factor of Q_r, ζ = x.
    pub fn build(q: u32, r: u32) -> Result<Arc<FieldSpec>, FieldError> {
        let d = mult_order(q, r)?;
        let modulus = least_factor(q, r, d);
        Ok(Arc::new(FieldSpec::from_modulus(q, r, d, modulus)))
    }

    /// Like [`FieldSpec::build`], consulting `cache` first. A cached modulus is
    /// accepted only if it is exactly the canonical choice.
    pub fn build_cached(
        q: u32,
        r: u32,
        cache: Option<&CyclotomicCache>,
    ) -> Result<Arc<FieldSpec>, FieldError> {
        let d = mult_order(q, r)?;
        if let Some(rec) = cache.and_then(|c| c.get(q, r)) {
            rec.validate(d)?;
            return Ok(Arc::new(FieldSpec::from_modulus(q, r, d, rec.modulus.clone())));
        }
        FieldSpec::build(q, r)
    }

    fn from_modulus(q: u32, r: u32, d: usize, modulus: Poly) -> FieldSpec {
        let mut x = vec![0u32; 2];
        x[1] = 1;
        let zeta_poly = poly_rem(&x, &modulus, q);
        let mut spec = FieldSpec {
            q,
            r,
            d,
            modulus,
            zeta: FieldElem::from_coeffs(&[]),
            zeta_pows: Vec::new(),
            zeta_mats: Vec::new(),
        };
        spec.zeta = spec.pad(&zeta_poly);
        let mut pows = Vec::with_capacity(r as usize);
        let mut cur = spec.one();
        for _ in 0..r {
            pows.push(cur.clone());
            cur = spec.mul(&cur, &spec.zeta);
        }
        let mut mats = Vec::with_capacity(r as usize);
        for zp in &pows {
            let mut m = vec![0u32; d * d];
            for j in 0..d {
                let mut basis = vec![0u32; d];
                basis[j] = 1;
                let col = spec.mul(zp, &FieldElem::from_coeffs(&basis));
                for row in 0..d {
                    m[row * d + j] = col.coeffs[row];
                }
            }
            mats.push(m);
        }
        spec.zeta_pows = pows;
        spec.zeta_mats = mats;
        spec
    }

    fn pad(&self, p: &[u32]) -> FieldElem {
        let mut coeffs: SmallVec<[u32; 6]> = SmallVec::from_elem(0, self.d);
        for (i, &c) in p.iter().enumerate().take(self.d) {
            coeffs[i] = c;
        }
        FieldElem { coeffs }
    }

    pub fn q(&self) -> u32 {
        self.q
    }
    pub fn r(&self) -> u32 {
        self.r
    }
    pub fn degree(&self) -> usize {
        self.d
    }
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }
    pub fn zeta(&self) -> &FieldElem {
        &self.zeta
    }
    /// q^d.
    pub fn size(&self) -> u64 {
        (self.q as u64).pow(self.d as u32)
    }

    /// Validated constructor.
    pub fn elem(&self, coeffs: &[u32]) -> Result<FieldElem, FieldError> {
        let e = FieldElem::from_coeffs(coeffs);
        self.check(&e)?;
        Ok(e)
    }

    pub fn check(&self, e: &FieldElem) -> Result<(), FieldError> {
        if e.coeffs.len() != self.d {
            return Err(FieldError::DegreeMismatch {
                expected: self.d,
                got: e.coeffs.len(),
            });
        }
        if let Some(&c) = e.coeffs.iter().find(|&&c| c >= self.q) {
            return Err(FieldError::CoeffOutOfRange(c, self.q));
        }
        Ok(())
    }

    pub fn contains(&self, e: &FieldElem) -> bool {
        self.check(e).is_ok()
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem {
            coeffs: SmallVec::from_elem(0, self.d),
        }
    }

    pub fn one(&self) -> FieldElem {
        let mut z = self.zero();
        z.coeffs[0] = 1;
        z
    }

    /// The constant `c mod q`.
    pub fn scalar(&self, c: i64) -> FieldElem {
        let mut z = self.zero();
        z.coeffs[0] = c.rem_euclid(self.q as i64) as u32;
        z
    }

    pub fn add(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        let q = self.q;
        FieldElem {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(&x, &y)| {
                    let s = x + y;
                    if s >= q {
                        s - q
                    } else {
                        s
                    }
                })
                .collect(),
        }
    }

    pub fn neg(&self, a: &FieldElem) -> FieldElem {
        let q = self.q;
        FieldElem {
            coeffs: a
                .coeffs
                .iter()
                .map(|&x| if x == 0 { 0 } else { q - x })
                .collect(),
        }
    }

    pub fn sub(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        let prod = poly_mul(&a.coeffs, &b.coeffs, self.q);
        self.pad(&poly_rem(&prod, &self.modulus, self.q))
    }

    pub fn pow(&self, a: &FieldElem, e: u64) -> FieldElem {
        let mut result = self.one();
        let mut base = a.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        result
    }

    /// ζ^i with i reduced mod r.
    pub fn zeta_power(&self, i: i64) -> &FieldElem {
        &self.zeta_pows[i.rem_euclid(self.r as i64) as usize]
    }

    /// ζ^i · v, via the precomputed multiplication matrix.
    pub fn zeta_mul(&self, i: u32, v: &FieldElem) -> FieldElem {
        if i == 0 {
            return v.clone();
        }
        let d = self.d;
        let m = &self.zeta_mats[i as usize];
        let q = self.q as u64;
        let mut out: SmallVec<[u32; 6]> = SmallVec::with_capacity(d);
        for row in 0..d {
            let mut acc = 0u64;
            for j in 0..d {
                acc += m[row * d + j] as u64 * v.coeffs[j] as u64;
            }
            out.push((acc % q) as u32);
        }
        FieldElem { coeffs: out }
    }

    /// Evaluates a polynomial over Z_q at a field element.
    pub fn eval_poly(&self, p: &[u32], at: &FieldElem) -> FieldElem {
        let mut acc = self.zero();
        for &c in p.iter().rev() {
            acc = self.add(&self.mul(&acc, at), &self.scalar(c as i64));
        }
        acc
    }

    /// Lexicographic rank of an element (constant term most significant).
    pub fn index_of(&self, e: &FieldElem) -> usize {
        e.coeffs
            .iter()
            .fold(0usize, |acc, &c| acc * self.q as usize + c as usize)
    }

    pub fn element_at(&self, mut idx: usize) -> FieldElem {
        let mut coeffs: SmallVec<[u32; 6]> = SmallVec::from_elem(0, self.d);
        for k in (0..self.d).rev() {
            coeffs[k] = (idx % self.q as usize) as u32;
            idx /= self.q as usize;
        }
        FieldElem { coeffs }
    }

    /// All elements, in lexicographic order.
    pub fn elements(&self) -> Vec<FieldElem> {
        (0..self.size() as usize).map(|k| self.element_at(k)).collect()
    }
}

/// One record of the optional cyclotomic cache file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheRecord {
    pub q: u32,
    pub r: u32,
    pub d: usize,
    pub modulus: Vec<u32>,
}

impl CacheRecord {
    fn bad(&self, reason: &str) -> FieldError {
        FieldError::BadCacheRecord {
            q: self.q,
            r: self.r,
            reason: reason.to_string(),
        }
    }

    fn validate(&self, d: usize) -> Result<(), FieldError> {
        if self.d != d {
            return Err(self.bad("wrong extension degree"));
        }
        if self.modulus.len() != d + 1 || self.modulus[d] != 1 {
            return Err(self.bad("modulus is not monic of degree d"));
        }
        if self.modulus.iter().any(|&c| c >= self.q) {
            return Err(self.bad("coefficient out of range"));
        }
        if !divides_cyclotomic(&self.modulus, self.q, self.r) {
            return Err(self.bad("modulus does not divide Q_r"));
        }
        // canonical choice only: nothing lexicographically smaller may divide Q_r
        let smaller = monic_candidates(self.q, d)
            .take_while(|p| *p != self.modulus)
            .any(|p| divides_cyclotomic(&p, self.q, self.r));
        if smaller {
            return Err(self.bad("modulus is not the least factor"));
        }
        Ok(())
    }
}

/// JSON array of [`CacheRecord`]s.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CyclotomicCache {
    records: Vec<CacheRecord>,
}

impl CyclotomicCache {
    pub fn load(path: &Path) -> Result<Self, FieldError> {
        let text = fs::read_to_string(path).map_err(|e| FieldError::CacheIo(e.to_string()))?;
        let records: Vec<CacheRecord> =
            serde_json::from_str(&text).map_err(|e| FieldError::CacheIo(e.to_string()))?;
        Ok(CyclotomicCache { records })
    }

    pub fn save(&self, path: &Path) -> Result<(), FieldError> {
        let text = serde_json::to_string_pretty(&self.records)
            .map_err(|e| FieldError::CacheIo(e.to_string()))?;
        fs::write(path, text).map_err(|e| FieldError::CacheIo(e.to_string()))
    }

    pub fn get(&self, q: u32, r: u32) -> Option<&CacheRecord> {
        self.records.iter().find(|rec| rec.q == q && rec.r == r)
    }

    pub fn insert(&mut self, field: &FieldSpec) {
        if self.get(field.q, field.r).is_some() {
            return;
        }
        self.records.push(CacheRecord {
            q: field.q,
            r: field.r,
            d: field.d,
            modulus: field.modulus.clone(),
        });
        self.records.sort_by_key(|rec| (rec.q, rec.r));
    }

    pub fn records(&self) -> &[CacheRecord] {
        &self.records
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mult_order_examples() {
        assert_eq!(mult_order(2, 3), Ok(2));
        assert_eq!(mult_order(5, 2), Ok(1));
        assert_eq!(mult_order(11, 5), Ok(1));
        assert_eq!(mult_order(3, 7), Ok(6));
        assert_eq!(mult_order(4, 3), Err(FieldError::NotPrime(4)));
        assert_eq!(mult_order(5, 5), Err(FieldError::EqualPrimes(5)));
    }

    // iterate powers of q mod r directly
    #[test]
    fn mult_order_matches_power_iteration() {
        for q in [2u32, 3, 5, 7, 11, 13] {
            for r in [2u32, 3, 5, 7, 11, 13] {
                if q == r {
                    continue;
                }
                let d = (1..r).find(|&e| (q as u64).pow(e) % r as u64 == 1).unwrap();
                assert_eq!(mult_order(q, r).unwrap(), d as usize);
            }
        }
    }

    #[test]
    fn build_field_examples() {
        let f = FieldSpec::build(2, 3).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        assert_eq!(f.zeta().coeffs.as_slice(), &[0, 1]);

        let f = FieldSpec::build(5, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 1]);
        assert_eq!(f.zeta().coeffs.as_slice(), &[4]);

        // roots of Q_5 over GF(11) are 3, 4, 5, 9; least coefficient vector is x + 2
        let f = FieldSpec::build(11, 5).unwrap();
        assert_eq!(f.modulus(), &[2, 1]);
        assert_eq!(f.zeta().coeffs.as_slice(), &[9]);
    }

    #[test]
    fn x_squared_in_gf4() {
        let f = FieldSpec::build(2, 3).unwrap();
        let x = f.elem(&[0, 1]).unwrap();
        assert_eq!(f.mul(&x, &x).coeffs.as_slice(), &[1, 1]);
    }

    #[test]
    fn zeta_properties() {
        for (q, r) in [(2, 3), (3, 2), (2, 5), (5, 2), (11, 5), (7, 3), (3, 7), (2, 7)] {
            let f = FieldSpec::build(q, r).unwrap();
            let pows: std::collections::BTreeSet<_> =
                (0..r as i64).map(|i| f.zeta_power(i).clone()).collect();
            assert_eq!(pows.len(), r as usize);
            assert_eq!(f.pow(f.zeta(), r as u64), f.one());
            assert_ne!(f.zeta(), &f.one());
            assert!(f.eval_poly(f.modulus(), f.zeta()).is_zero());
            assert!(f.eval_poly(&cyclotomic(r), f.zeta()).is_zero());
            assert_eq!(f.mul(f.zeta(), f.zeta_power(r as i64 - 1)), f.one());
            for v in f.elements().iter().take(50) {
                for i in 0..r {
                    assert_eq!(f.zeta_mul(i, v), f.mul(f.zeta_power(i as i64), v));
                }
            }
        }
    }

    #[test]
    fn factorization_reassembles_cyclotomic() {
        for (q, r) in [(2, 7), (11, 5), (3, 13), (2, 3), (5, 11)] {
            let d = mult_order(q, r).unwrap();
            let factors = cyclotomic_factors(q, r).unwrap();
            assert_eq!(factors.len(), (r as usize - 1) / d);
            let prod = factors
                .iter()
                .fold(vec![1u32], |acc, p| poly_mul(&acc, p, q));
            assert_eq!(prod, cyclotomic(r));
            assert_eq!(FieldSpec::build(q, r).unwrap().modulus(), factors[0].as_slice());
        }
    }

    #[test]
    fn additive_group_is_elementary_abelian() {
        for (q, r) in [(2, 3), (2, 5), (3, 7), (11, 5)] {
            let f = FieldSpec::build(q, r).unwrap();
            let elems = f.elements();
            assert_eq!(elems.len() as u64, f.size());
            let set: std::collections::HashSet<_> = elems.iter().collect();
            assert_eq!(set.len(), elems.len());
            for (k, a) in elems.iter().enumerate() {
                assert_eq!(f.index_of(a), k);
                let mut acc = f.zero();
                for _ in 0..q {
                    acc = f.add(&acc, a);
                }
                assert!(acc.is_zero());
            }
            // closure under addition, sampled pairs across the whole set
            for a in elems.iter().step_by(7) {
                for b in elems.iter().step_by(5) {
                    let s = f.add(a, b);
                    assert!(f.contains(&s));
                    assert_eq!(f.add(&s, &f.neg(b)), *a);
                }
            }
        }
    }

    #[test]
    fn mixed_field_elements_rejected() {
        let f = FieldSpec::build(2, 3).unwrap();
        let g = FieldSpec::build(11, 5).unwrap();
        assert!(matches!(
            f.check(g.zeta()),
            Err(FieldError::DegreeMismatch { .. })
        ));
        assert_eq!(f.elem(&[2, 0]), Err(FieldError::CoeffOutOfRange(2, 2)));
    }

    #[test]
    fn cache_roundtrip_and_validation() {
        let dir = std::env::temp_dir().join(format!("gnknot-cache-{}", std::process::id()));
        let mut cache = CyclotomicCache::default();
        let f = FieldSpec::build(3, 7).unwrap();
        cache.insert(&f);
        cache.save(&dir).unwrap();
        let loaded = CyclotomicCache::load(&dir).unwrap();
        assert_eq!(loaded, cache);
        let g = FieldSpec::build_cached(3, 7, Some(&loaded)).unwrap();
        assert_eq!(*g, *f);

        // a valid but non-canonical factor must be refused
        let other = cyclotomic_factors(11, 5).unwrap()[1].clone();
        let bad: Vec<CacheRecord> = vec![CacheRecord { q: 11, r: 5, d: 1, modulus: other }];
        fs::write(&dir, serde_json::to_string(&bad).unwrap()).unwrap();
        let loaded = CyclotomicCache::load(&dir).unwrap();
        assert!(FieldSpec::build_cached(11, 5, Some(&loaded)).is_err());
        let _ = fs::remove_file(&dir);
    }
}
