//! Longitude images of torus-knot homomorphisms into W(q,r,s,t) whose meridian
//! image lies in A(r,s,t) in reduced standard form.

use serde::Serialize;

use super::{HomError, TheoremParams};
use crate::arith::mod_inverse;
use crate::group::Group;
use crate::wreath::target::WElem;
use crate::wreath::TargetWreath;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum TorusCase {
    Cyclic,
    NonCyclic,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Conclusion {
    pub name: &'static str,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassifyRecord {
    pub case: TorusCase,
    pub conclusions: Vec<Conclusion>,
}

/// Classifies ρ: G_{a,b} → W given by u ↦ χ, v ↦ ψ, with α = ρ(μ) = ψ^d χ^{-c}
/// and ε = χ^a. Every applicable conclusion is checked by direct computation; a
/// failing one is an error.
pub fn classify_torus_hom(
    w: &TargetWreath,
    params: &TheoremParams,
    chi: &WElem,
    psi: &WElem,
) -> Result<ClassifyRecord, HomError> {
    let (a, b) = (params.a as i64, params.b as i64);
    let (c, d) = params.cd();
    let wr = w.wreath();
    let top = wr.top();
    let eps = w.pow(chi, a);
    if eps != w.pow(psi, b) {
        return Err(HomError::Relator(0));
    }
    let alpha = w.mul(&w.pow(psi, d as i64), &w.pow(chi, -(c as i64)));
    if alpha.hat == top.identity_index() {
        return Err(HomError::Precondition("meridian image has trivial hat".into()));
    }
    if !w.in_a(&alpha) || !wr.is_rsf(&alpha) {
        return Err(HomError::Precondition(
            "meridian image must lie in A(r,s,t) in reduced standard form".into(),
        ));
    }

    let (ch, ph) = (w.top_elem(chi.hat), w.top_elem(psi.hat));
    let record = if w.top_group().generates_cyclic(ch, ph) {
        ClassifyRecord {
            case: TorusCase::Cyclic,
            conclusions: vec![Conclusion {
                name: "eps_is_alpha_power",
                holds: eps == w.pow(&alpha, a * b),
            }],
        }
    } else {
        let base = w.base();
        let r = params.r as u64;
        let npts = w.npoints();
        let cinv = mod_inverse(npts as i64, r).expect("gcd(r, s) = 1");
        let k = ((a * b) as u64 % r * w.bracket2(&alpha) as u64 % r * cinv % r) as u32;
        let key0 = base.class_key(&eps.comps[0]);
        let xk = w.xi_pow(k as i64);
        let conclusions = vec![
            Conclusion {
                name: "hat_orders",
                holds: top.order(&chi.hat) == params.s as u64
                    && top.order(&psi.hat) == params.t as u64,
            },
            Conclusion {
                name: "eps_hat_trivial",
                holds: eps.hat == top.identity_index(),
            },
            Conclusion {
                name: "eps_constant_on_orbits",
                holds: wr.constant_on_orbits(&eps.comps, alpha.hat),
            },
            Conclusion {
                name: "eps_class_constant",
                holds: eps.comps.iter().all(|e| base.class_key(e) == key0),
            },
            Conclusion {
                name: "eps_bracket",
                holds: eps.comps.iter().all(|e| base.bracket(e) == k),
            },
            Conclusion {
                name: "eps_on_support",
                holds: (0..npts)
                    .filter(|&g| !base.is_identity(&alpha.comps[g]))
                    .all(|g| eps.comps[g] == xk),
            },
        ];
        ClassifyRecord {
            case: TorusCase::NonCyclic,
            conclusions,
        }
    };
    if let Some(bad) = record.conclusions.iter().find(|c| !c.holds) {
        return Err(HomError::Conclusion {
            name: bad.name.into(),
            detail: format!("{:?} case, a = {a}, b = {b}", record.case),
        });
    }
    Ok(record)
}
