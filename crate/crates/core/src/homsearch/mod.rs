//! Homomorphisms from knot-group presentations, map-root pairs and their
//! compatibility with the longitudes of GK_{a,b} and SK_{a,b}.

pub mod brute;
pub mod classify;
pub mod family;
pub mod report;
pub mod witness;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{gcd, is_prime};
use crate::gdihedral::LambdaError;
use crate::group::{Group, GroupError};
use crate::knotpres::{self, eval_word, KnotKind, PresError, Presentation, Word};
use crate::wreath::WreathError;

pub use brute::count_homs_bruteforce;
pub use classify::{classify_torus_hom, ClassifyRecord, TorusCase};
pub use family::{generate_pair_families, FamilyConfig, FamilyPair, PairKind};
pub use report::{verify_main, VerificationReport, VerifyConfig};
pub use witness::{build_witness, Witness};

#[derive(Debug, Error)]
pub enum HomError {
    #[error("invalid parameters: {0}")]
    Params(String),
    #[error("images do not satisfy relator {0}")]
    Relator(usize),
    #[error("expected {expected} generator images, got {got}")]
    ImageCount { expected: usize, got: usize },
    #[error("image does not belong to the target group")]
    Foreign,
    #[error("presentation has no meridian")]
    NoMeridian,
    #[error("η^n differs from the meridian image")]
    NotARoot,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("conclusion '{name}' failed: {detail}")]
    Conclusion { name: String, detail: String },
    #[error("assertion failed: {0}")]
    Assertion(String),
    #[error("search needs {needed} candidate states, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error(transparent)]
    Pres(#[from] PresError),
    #[error(transparent)]
    Wreath(#[from] WreathError),
    #[error(transparent)]
    Lambda(#[from] LambdaError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// (a, b, n, q, r, s, t) subject to the separation theorem's hypotheses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremParams {
    pub a: u64,
    pub b: u64,
    pub n: u64,
    pub q: u32,
    pub r: u32,
    pub s: u32,
    pub t: u32,
}

impl TheoremParams {
    /// The two smallest instances.
    pub const PRESETS: [TheoremParams; 2] = [
        TheoremParams {
            a: 2,
            b: 3,
            n: 11,
            q: 11,
            r: 5,
            s: 2,
            t: 3,
        },
        TheoremParams {
            a: 2,
            b: 5,
            n: 7,
            q: 7,
            r: 3,
            s: 2,
            t: 5,
        },
    ];

    pub fn validate(&self) -> Result<(), HomError> {
        let bad = |m: String| Err(HomError::Params(m));
        let (a, b, n) = (self.a, self.b, self.n);
        let (q, r, s, t) = (self.q as u64, self.r as u64, self.s as u64, self.t as u64);
        if a < 2 || b < 2 || gcd(a, b) != 1 {
            return bad(format!("a, b >= 2 with gcd(a, b) = 1 (a = {a}, b = {b})"));
        }
        if n < 2 {
            return bad(format!("n >= 2 (n = {n})"));
        }
        for (name, p) in [("q", q), ("r", r), ("s", s), ("t", t)] {
            if !is_prime(p) {
                return bad(format!("{name} = {p} must be prime"));
            }
        }
        if a % s != 0 {
            return bad(format!("s = {s} must divide a = {a}"));
        }
        if b % t != 0 {
            return bad(format!("t = {t} must divide b = {b}"));
        }
        if gcd(s * t, n) != 1 {
            return bad(format!("gcd(st, n) = 1 (st = {}, n = {n})", s * t));
        }
        if n % q != 0 {
            return bad(format!("q = {q} must divide n = {n}"));
        }
        if gcd(r, 2 * n * a * b) != 1 {
            return bad(format!("r = {r} must be coprime to 2nab = {}", 2 * n * a * b));
        }
        let ps = [q, r, s, t];
        for i in 0..4 {
            for j in i + 1..4 {
                if ps[i] == ps[j] {
                    return bad(format!("q, r, s, t must be distinct (got {q}, {r}, {s}, {t})"));
                }
            }
        }
        Ok(())
    }

    pub fn cd(&self) -> (u64, u64) {
        knotpres::bezout_cd(self.a, self.b).expect("validated")
    }
}

/// Generator images satisfying every relator of the source presentation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hom<E> {
    images: Vec<E>,
}

impl<E: Clone> Hom<E> {
    pub fn new<G: Group<Elem = E>>(
        group: &G,
        pres: &Presentation,
        images: Vec<E>,
    ) -> Result<Self, HomError> {
        if images.len() != pres.gens.len() {
            return Err(HomError::ImageCount {
                expected: pres.gens.len(),
                got: images.len(),
            });
        }
        if !images.iter().all(|e| group.contains(e)) {
            return Err(HomError::Foreign);
        }
        for (k, r) in pres.rels.iter().enumerate() {
            if !group.is_identity(&eval_word(group, &images, r)?) {
                return Err(HomError::Relator(k));
            }
        }
        Ok(Hom { images })
    }

    pub fn images(&self) -> &[E] {
        &self.images
    }

    pub fn image(&self, gen: usize) -> &E {
        &self.images[gen]
    }

    pub fn eval<G: Group<Elem = E>>(&self, group: &G, w: &Word) -> E {
        eval_word(group, &self.images, w).expect("hom covers every generator")
    }

    /// g ρ g⁻¹, re-gated.
    pub fn conjugate<G: Group<Elem = E>>(
        &self,
        group: &G,
        pres: &Presentation,
        g: &E,
    ) -> Result<Self, HomError> {
        let images = self.images.iter().map(|e| group.conjugate(g, e)).collect();
        Hom::new(group, pres, images)
    }
}

/// (ρ, η) with ρ: H_{a,b} → G and η^n = ρ(μ).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MapRootPair<E> {
    pub hom: Hom<E>,
    pub eta: E,
}

impl<E: Clone + Eq> MapRootPair<E> {
    pub fn new<G: Group<Elem = E>>(
        group: &G,
        pres: &Presentation,
        hom: Hom<E>,
        eta: E,
        n: u64,
    ) -> Result<Self, HomError> {
        let mu = pres.meridian.as_ref().ok_or(HomError::NoMeridian)?;
        if !group.contains(&eta) {
            return Err(HomError::Foreign);
        }
        if group.pow(&eta, n as i64) != hom.eval(group, mu) {
            return Err(HomError::NotARoot);
        }
        Ok(MapRootPair { hom, eta })
    }

    pub fn conjugate<G: Group<Elem = E>>(
        &self,
        group: &G,
        pres: &Presentation,
        g: &E,
        n: u64,
    ) -> Result<Self, HomError> {
        let hom = self.hom.conjugate(group, pres, g)?;
        MapRootPair::new(group, pres, hom, group.conjugate(g, &self.eta), n)
    }
}

/// Whether ρ(λ_K) commutes with η, where λ_GK = x^a w^a and λ_SK = x^a w^{-a}.
pub fn check_compatibility<G: Group>(
    group: &G,
    pair: &MapRootPair<G::Elem>,
    a: u64,
    kind: KnotKind,
) -> bool
where
    G::Elem: Clone,
{
    let lambda = pair.hom.eval(group, &knotpres::longitude_word(a, kind));
    group.commute(&lambda, &pair.eta)
}

/// Whether ν ↦ η extends ρ to a homomorphism from G_n(K).
pub fn lifts<G: Group>(
    group: &G,
    pair: &MapRootPair<G::Elem>,
    params: &TheoremParams,
    kind: KnotKind,
) -> Result<bool, HomError>
where
    G::Elem: Clone,
{
    let pres = knotpres::gn_presentation(params.a, params.b, params.n, kind)?;
    let mut images = pair.hom.images().to_vec();
    images.push(pair.eta.clone());
    Ok(pres.relators_hold(group, &images)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gdihedral::LambdaGroup;
    use crate::group::CayleyTable;
    use crate::knotpres::{composite_group, torus_group};

    #[test]
    fn parameter_validation() {
        for p in TheoremParams::PRESETS {
            p.validate().unwrap();
        }
        let mut p = TheoremParams::PRESETS[0];
        p.n = 33;
        let msg = p.validate().unwrap_err().to_string();
        assert!(msg.contains("gcd(st, n)"), "{msg}");
        let mut p = TheoremParams::PRESETS[0];
        p.r = 11;
        assert!(p.validate().is_err());
        let mut p = TheoremParams::PRESETS[0];
        p.q = 13;
        assert!(p.validate().unwrap_err().to_string().contains("divide n"));
        let mut p = TheoremParams::PRESETS[1];
        p.r = 5;
        assert!(p.validate().is_err());
    }

    #[test]
    fn relator_gate() {
        let lam = LambdaGroup::new(5, 2).unwrap();
        let pres = torus_group(2, 3).unwrap();
        let u = lam.elem(&[0], 1).unwrap();
        let id = lam.elem(&[0], 0).unwrap();
        // u² = 1 = 1³
        assert!(Hom::new(&lam, &pres, vec![u.clone(), id.clone()]).is_ok());
        assert!(matches!(
            Hom::new(&lam, &pres, vec![id.clone(), u.clone()]),
            Err(HomError::Relator(0))
        ));
        assert!(matches!(
            Hom::new(&lam, &pres, vec![id]),
            Err(HomError::ImageCount { .. })
        ));
    }

    #[test]
    fn central_roots_are_compatible() {
        // abelian target: everything commutes
        let z = CayleyTable::cyclic(7);
        let h = composite_group(2, 3).unwrap();
        // x, w ↦ 3m, y, z ↦ 2m with m = 1: meridian 2·2 − 3 = 1
        let hom = Hom::new(&z, &h, vec![3, 2, 3, 2]).unwrap();
        let pair = MapRootPair::new(&z, &h, hom, 2, 4).unwrap();
        for kind in KnotKind::BOTH {
            assert!(check_compatibility(&z, &pair, 2, kind));
        }
        let hom = Hom::new(&z, &h, vec![3, 2, 3, 2]).unwrap();
        assert!(matches!(
            MapRootPair::new(&z, &h, hom, 1, 4),
            Err(HomError::NotARoot)
        ));
    }
}
