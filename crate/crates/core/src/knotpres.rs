//! Finite presentations with a meridian and longitude: torus knot groups G_{a,b},
//! the amalgam H_{a,b}, and the generalised knot groups G_n(GK_{a,b}), G_n(SK_{a,b}).
//!
//! Words are never reduced; evaluating them is their only meaning.

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{ext_gcd, gcd};
use crate::group::Group;

#[derive(Debug, Error)]
pub enum PresError {
    #[error("a and b must be coprime and at least 2 (got a = {0}, b = {1})")]
    BadExponents(u64, u64),
    #[error("n must be at least 2 (got {0})")]
    BadRootOrder(u64),
    #[error("word uses generator {gen} but only {count} images were supplied")]
    MissingImage { gen: usize, count: usize },
    #[error("presentation refers to generator {0}, which is not declared")]
    UndeclaredGenerator(usize),
    #[error("zero exponent in word")]
    ZeroExponent,
    #[error("reading presentation: {0}")]
    Io(#[from] std::io::Error),
    #[error("parsing presentation: {0}")]
    Json(#[from] serde_json::Error),
}

/// Letters (generator index, nonzero exponent), read left to right.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(pub Vec<(usize, i64)>);

impl Word {
    pub fn new(letters: &[(usize, i64)]) -> Self {
        Word(letters.to_vec())
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|&(g, e)| (g, -e)).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Highest generator index used, if any.
    pub fn max_gen(&self) -> Option<usize> {
        self.0.iter().map(|&(g, _)| g).max()
    }

    /// Image under the map sending generator k to `weights[k]` in Z.
    pub fn abelianize(&self, weights: &[i64]) -> i64 {
        self.0.iter().map(|&(g, e)| weights[g] * e).sum()
    }
}

/// [u, v] = u v u⁻¹ v⁻¹
pub fn commutator(u: &Word, v: &Word) -> Word {
    u.concat(v).concat(&u.inverse()).concat(&v.inverse())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum KnotKind {
    /// granny analogue T_{a,b} # T_{a,b}
    GK,
    /// square analogue T_{a,b} # T_{-a,b}
    SK,
}

impl KnotKind {
    pub const BOTH: [KnotKind; 2] = [KnotKind::GK, KnotKind::SK];

    /// Sign of the w-exponent in the longitude x^a w^{±a}.
    pub fn longitude_sign(self) -> i64 {
        match self {
            KnotKind::GK => 1,
            KnotKind::SK => -1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub gens: Vec<String>,
    pub rels: Vec<Word>,
    #[serde(default)]
    pub meridian: Option<Word>,
    #[serde(default)]
    pub longitude: Option<Word>,
}

impl Presentation {
    pub fn validate(&self) -> Result<(), PresError> {
        let n = self.gens.len();
        let words = self
            .rels
            .iter()
            .chain(self.meridian.iter())
            .chain(self.longitude.iter());
        for w in words {
            for &(g, e) in &w.0 {
                if g >= n {
                    return Err(PresError::UndeclaredGenerator(g));
                }
                if e == 0 {
                    return Err(PresError::ZeroExponent);
                }
            }
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self, PresError> {
        let p: Presentation = serde_json::from_str(text)?;
        p.validate()?;
        Ok(p)
    }

    pub fn load(path: &Path) -> Result<Self, PresError> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("presentation serializes")
    }

    pub fn gen_index(&self, name: &str) -> Option<usize> {
        self.gens.iter().position(|g| g == name)
    }

    /// Whether every relator maps to the identity.
    pub fn relators_hold<G: Group>(&self, group: &G, images: &[G::Elem]) -> Result<bool, PresError> {
        for r in &self.rels {
            if !group.is_identity(&eval_word(group, images, r)?) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn check_ab(a: u64, b: u64) -> Result<(), PresError> {
    if a < 2 || b < 2 || gcd(a, b) != 1 {
        return Err(PresError::BadExponents(a, b));
    }
    Ok(())
}

/// Least positive (c, d) with ad − bc = 1.
pub fn bezout_cd(a: u64, b: u64) -> Result<(u64, u64), PresError> {
    check_ab(a, b)?;
    let (_, x, _) = ext_gcd(a as i64, b as i64);
    let mut d = x.rem_euclid(b as i64) as u64;
    if d == 0 {
        d = b;
    }
    Ok(((a * d - 1) / b, d))
}

fn gens(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

/// ⟨u, v | u^a v^{-b}⟩ with μ = v^d u^{-c}, λ = u^a.
pub fn torus_group(a: u64, b: u64) -> Result<Presentation, PresError> {
    let (c, d) = bezout_cd(a, b)?;
    let (a, b, c, d) = (a as i64, b as i64, c as i64, d as i64);
    Ok(Presentation {
        gens: gens(&["u", "v"]),
        rels: vec![Word::new(&[(0, a), (1, -b)])],
        meridian: Some(Word::new(&[(1, d), (0, -c)])),
        longitude: Some(Word::new(&[(0, a)])),
    })
}

pub const X: usize = 0;
pub const Y: usize = 1;
pub const W: usize = 2;
pub const Z: usize = 3;
pub const NU: usize = 4;

/// H_{a,b} on x, y, w, z: x^a = y^b, w^a = z^b, y^d x^{-c} = z^d w^{-c}; μ = y^d x^{-c}.
pub fn composite_group(a: u64, b: u64) -> Result<Presentation, PresError> {
    let (c, d) = bezout_cd(a, b)?;
    let (a, b, c, d) = (a as i64, b as i64, c as i64, d as i64);
    Ok(Presentation {
        gens: gens(&["x", "y", "w", "z"]),
        rels: vec![
            Word::new(&[(X, a), (Y, -b)]),
            Word::new(&[(W, a), (Z, -b)]),
            Word::new(&[(Y, d), (X, -c), (W, c), (Z, -d)]),
        ],
        meridian: Some(Word::new(&[(Y, d), (X, -c)])),
        longitude: None,
    })
}

/// x^a w^{±a}
pub fn longitude_word(a: u64, kind: KnotKind) -> Word {
    let a = a as i64;
    Word::new(&[(X, a), (W, kind.longitude_sign() * a)])
}

/// G_n(K): H_{a,b} with ν adjoined, ν^n = μ and ν commuting with the longitude of K.
pub fn gn_presentation(a: u64, b: u64, n: u64, kind: KnotKind) -> Result<Presentation, PresError> {
    if n < 2 {
        return Err(PresError::BadRootOrder(n));
    }
    let mut p = composite_group(a, b)?;
    p.gens.push("nu".into());
    let mu = p.meridian.clone().expect("meridian");
    let lambda = longitude_word(a, kind);
    let nu = Word::new(&[(NU, 1)]);
    p.rels.push(Word::new(&[(NU, n as i64)]).concat(&mu.inverse()));
    p.rels.push(commutator(&nu, &lambda));
    p.longitude = Some(lambda);
    Ok(p)
}

/// Product of the images with exponents, left to right.
pub fn eval_word<G: Group>(group: &G, images: &[G::Elem], w: &Word) -> Result<G::Elem, PresError> {
    let mut acc = group.identity();
    for &(g, e) in &w.0 {
        let img = images.get(g).ok_or(PresError::MissingImage {
            gen: g,
            count: images.len(),
        })?;
        acc = group.mul(&acc, &group.pow(img, e));
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::CayleyTable;

    #[test]
    fn bezout_examples() {
        assert_eq!(bezout_cd(2, 3).unwrap(), (1, 2));
        assert_eq!(bezout_cd(2, 5).unwrap(), (1, 3));
        assert_eq!(bezout_cd(3, 2).unwrap(), (1, 1));
        assert!(bezout_cd(4, 6).is_err());
        assert!(bezout_cd(1, 3).is_err());
        for a in 2..30u64 {
            for b in 2..30u64 {
                if gcd(a, b) == 1 {
                    let (c, d) = bezout_cd(a, b).unwrap();
                    assert_eq!((a * d) as i64 - (b * c) as i64, 1);
                    assert!(d <= b && c >= 1);
                }
            }
        }
    }

    #[test]
    fn torus_words() {
        let p = torus_group(2, 3).unwrap();
        assert_eq!(p.rels, vec![Word::new(&[(0, 2), (1, -3)])]);
        assert_eq!(p.meridian, Some(Word::new(&[(1, 2), (0, -1)])));
        assert_eq!(p.longitude, Some(Word::new(&[(0, 2)])));
        let p = torus_group(2, 5).unwrap();
        assert_eq!(p.meridian, Some(Word::new(&[(1, 3), (0, -1)])));
        // u ↦ b, v ↦ a
        for (a, b) in [(2u64, 3u64), (3, 5), (5, 7), (7, 2)] {
            let p = torus_group(a, b).unwrap();
            let wts = [b as i64, a as i64];
            assert_eq!(p.rels[0].abelianize(&wts), 0);
            assert_eq!(p.meridian.as_ref().unwrap().abelianize(&wts), 1);
            assert_eq!(p.longitude.as_ref().unwrap().abelianize(&wts), (a * b) as i64);
        }
    }

    #[test]
    fn composite_and_gn() {
        let h = composite_group(2, 3).unwrap();
        let wts = [3, 2, 3, 2];
        assert!(h.rels.iter().all(|r| r.abelianize(&wts) == 0));
        assert_eq!(h.meridian.as_ref().unwrap().abelianize(&wts), 1);
        let gk = gn_presentation(2, 3, 11, KnotKind::GK).unwrap();
        let sk = gn_presentation(2, 3, 11, KnotKind::SK).unwrap();
        assert_eq!(gk.rels.len(), 5);
        assert_eq!(sk.rels.len(), 5);
        assert_eq!(gk.rels[..4], sk.rels[..4]);
        assert_ne!(gk.rels[4], sk.rels[4]);
        assert!(gn_presentation(2, 3, 1, KnotKind::GK).is_err());
        gk.validate().unwrap();
    }

    #[test]
    fn evaluation() {
        let z6 = CayleyTable::cyclic(6);
        assert_eq!(eval_word(&z6, &[], &Word::default()).unwrap(), 0);
        // u ↦ 3, v ↦ 2 in Z_6: u² v⁻³ = 6 − 6 = 0
        let p = torus_group(2, 3).unwrap();
        assert!(p.relators_hold(&z6, &[3, 2]).unwrap());
        assert!(!p.relators_hold(&z6, &[1, 1]).unwrap());
        assert!(matches!(
            eval_word(&z6, &[1], &p.rels[0]),
            Err(PresError::MissingImage { gen: 1, count: 1 })
        ));
    }

    #[test]
    fn json_roundtrip() {
        let p = gn_presentation(2, 5, 7, KnotKind::SK).unwrap();
        let text = p.to_json();
        assert_eq!(Presentation::from_json(&text).unwrap(), p);
        assert!(text.starts_with("{\"gens\":[\"x\",\"y\",\"w\",\"z\",\"nu\"],\"rels\":[[[0,2],[1,-5]]"));
        let bad = r#"{"gens":["u"],"rels":[[[1,2]]]}"#;
        assert!(matches!(Presentation::from_json(bad), Err(PresError::UndeclaredGenerator(1))));
    }
}
