//! The explicit homomorphism H_{a,b} → W(q,r,s,t) whose map-root pairs are
//! compatible for SK_{a,b} but, for all but one root, not for GK_{a,b}.

use std::collections::BTreeMap;

use serde::Serialize;

use super::{check_compatibility, lifts, Hom, HomError, MapRootPair, TheoremParams};
use crate::arith::mod_inverse;
use crate::ffield::mult_order;
use crate::gdihedral::LambdaElem;
use crate::group::Group;
use crate::knotpres::{composite_group, KnotKind, Presentation};
use crate::wreath::target::{WElem, WreathView};
use crate::wreath::TargetWreath;

#[derive(Debug, Clone)]
pub struct Witness {
    pub params: TheoremParams,
    pub chi: WElem,
    pub psi: WElem,
    /// ρ(μ) before conjugation
    pub beta: WElem,
    /// α = ω β ω⁻¹
    pub omega: WElem,
    pub alpha: WElem,
    /// ω ρ ω⁻¹ on x, y, w, z
    pub hom: Hom<WElem>,
    /// the point fixed by β̂
    pub f: usize,
    pub presentation: Presentation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RootRecord {
    pub eta: WreathView,
    pub eta_f_trivial: bool,
    /// η_g = 1 at every g with α_g = 1
    pub trivial_off_support: bool,
    pub sk_ok: bool,
    pub gk_ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessView {
    pub hom: BTreeMap<String, WreathView>,
    pub fixed_point: LambdaElem,
    pub alpha: WreathView,
    pub bracket: u32,
    pub root_count: usize,
    pub sk_only: usize,
    pub roots: Vec<RootRecord>,
}

fn ensure(cond: bool, what: &str) -> Result<(), HomError> {
    if cond {
        Ok(())
    } else {
        Err(HomError::Assertion(what.into()))
    }
}

/// Top elements of orders s and t chosen lexicographically first.
pub fn default_hats(w: &TargetWreath) -> (u32, u32) {
    let p = w.params();
    let first = |o: u32| {
        (0..w.top_elements().len() as u32)
            .find(|&h| w.hat_order(h) == o as u64)
            .expect("Λ(s,t) has elements of orders s and t")
    };
    (first(p.s), first(p.t))
}

/// Builds the witness in a freshly constructed W(q,r,s,t).
pub fn build_witness(params: &TheoremParams) -> Result<(TargetWreath, Witness), HomError> {
    params.validate()?;
    let w = TargetWreath::new(params.q, params.r, params.s, params.t)?;
    let (ch, ph) = default_hats(&w);
    let wit = build_witness_in(&w, params, ch, ph)?;
    Ok((w, wit))
}

/// Builds the witness from given hats χ̂ (order s) and ψ̂ (order t), checking each
/// intermediate identity along the way.
pub fn build_witness_in(
    w: &TargetWreath,
    params: &TheoremParams,
    chi_hat: u32,
    psi_hat: u32,
) -> Result<Witness, HomError> {
    params.validate()?;
    let p = w.params();
    if (p.q, p.r, p.s, p.t) != (params.q, params.r, params.s, params.t) {
        return Err(HomError::Params("wreath product does not match parameters".into()));
    }
    let (a, b) = (params.a as i64, params.b as i64);
    let (c, d) = params.cd();
    let (c, d) = (c as i64, d as i64);
    let wr = w.wreath();
    let top = wr.top();
    let base = w.base();
    let id_hat = top.identity_index();
    if w.hat_order(chi_hat) != p.s as u64 || w.hat_order(psi_hat) != p.t as u64 {
        return Err(HomError::Precondition("χ̂ must have order s and ψ̂ order t".into()));
    }
    ensure(top.pow(&chi_hat, a) == id_hat, "χ̂^a = 1")?;
    ensure(top.pow(&psi_hat, b) == id_hat, "ψ̂^b = 1")?;

    let beta_hat = top.op(top.pow(&psi_hat, d), top.pow(&chi_hat, -c));
    let f = w.hat_fixed_point(beta_hat)?;
    ensure(f != w.hat_fixed_point(psi_hat)?, "f differs from the fixed point of ψ̂")?;
    let before_f = wr.act(f, top.inverse(psi_hat));
    let g_star = wr.act(f, top.pow(&psi_hat, -d));

    let npts = w.npoints();
    let chi = wr.constant(&w.xi_pow(b), chi_hat);
    let psi_comps = (0..npts)
        .map(|g| {
            if g == before_f {
                w.xi_pow(a + 1)
            } else if g == f {
                w.xi_pow(a - 1)
            } else {
                w.xi_pow(a)
            }
        })
        .collect();
    let psi = wr.elem(psi_comps, psi_hat)?;
    let xab = w.xi_pow(a * b);
    let chi_a = w.pow(&chi, a);
    let psi_b = w.pow(&psi, b);
    ensure(chi_a.comps.iter().all(|e| *e == xab), "(χ^a)_g = ξ^{ab}")?;
    ensure(psi_b.comps.iter().all(|e| *e == xab), "(ψ^b)_g = ξ^{ab}")?;
    ensure(chi_a == psi_b, "χ^a = ψ^b")?;

    let pres = composite_group(params.a, params.b)?;
    let rho = Hom::new(w, &pres, vec![chi.clone(), psi.clone(), chi.clone(), psi.clone()])?;
    let beta = rho.eval(w, pres.meridian.as_ref().expect("meridian"));
    ensure(beta.hat == beta_hat, "β̂ = ψ̂^d χ̂^{-c}")?;
    let xi = w.xi_pow(1);
    let xi2 = w.xi_pow(2);
    ensure(base.is_identity(&beta.comps[f]), "β_f = 1")?;
    ensure(beta.comps[g_star] == xi2, "β = ξ² at f·ψ̂^{-d}")?;
    ensure(
        (0..npts)
            .filter(|&g| g != f && g != g_star)
            .all(|g| beta.comps[g] == xi),
        "β = ξ away from f and f·ψ̂^{-d}",
    )?;
    let r = p.r as u64;
    let csize = (p.s as u64).pow(mult_order(p.s, p.t).expect("distinct primes") as u32);
    ensure(csize == npts as u64, "|C(s,t)| = s^{ord_t(s)}")?;
    ensure(w.bracket2(&beta) as u64 == csize % r, "[[β]] = s^{ord_t(s)} mod r")?;
    ensure(csize % r != 0, "s^{ord_t(s)} ≠ 0 mod r")?;

    let (alpha, omega) = w.to_a(&beta)?;
    ensure(w.conjugate(&omega, &beta) == alpha, "α = ωβω⁻¹")?;
    ensure(w.in_a(&alpha) && wr.is_rsf(&alpha), "α ∈ A(r,s,t) in reduced standard form")?;
    ensure(alpha.hat == beta.hat, "α̂ = β̂")?;
    ensure(base.is_identity(&alpha.comps[f]), "α_f = 1")?;
    let tinv = mod_inverse(p.t as i64, r).expect("gcd(r, t) = 1");
    let special = w.xi_pow(((p.t as u64 + 1) * tinv % r) as i64);
    let star_orbit = wr.cycle(alpha.hat, g_star);
    ensure(
        star_orbit.iter().all(|&g| alpha.comps[g] == special),
        "α = ξ^{(t+1)/t} on the orbit of f·ψ̂^{-d}",
    )?;
    ensure(
        (0..npts)
            .filter(|g| *g != f && !star_orbit.contains(g))
            .all(|g| alpha.comps[g] == xi),
        "α = ξ on the remaining orbits",
    )?;
    ensure(w.bracket2(&alpha) == w.bracket2(&beta), "[[α]] = [[β]]")?;
    let hom = rho.conjugate(w, &pres, &omega)?;
    ensure(hom.eval(w, pres.meridian.as_ref().unwrap()) == alpha, "ρ′(μ) = α")?;

    Ok(Witness {
        params: *params,
        chi,
        psi,
        beta,
        omega,
        alpha,
        hom,
        f,
        presentation: pres,
    })
}

impl Witness {
    /// All n-th roots of α, sorted.
    pub fn roots(&self, w: &TargetWreath) -> Result<Vec<WElem>, HomError> {
        Ok(w.nth_roots(&self.alpha, self.params.n)?)
    }

    /// |V(q,r)|^c with c the number of orbits of α̂ on which α is trivial.
    pub fn expected_root_count(&self, w: &TargetWreath) -> u128 {
        let c = w.free_orbits(&self.alpha).len() as u32;
        (w.base().v_size() as u128).pow(c)
    }

    pub fn pair(&self, w: &TargetWreath, eta: WElem) -> Result<MapRootPair<WElem>, HomError> {
        MapRootPair::new(w, &self.presentation, self.hom.clone(), eta, self.params.n)
    }

    /// Compatibility of every root, with the lift to G_n(K) checked against the verdict.
    pub fn root_records(&self, w: &TargetWreath) -> Result<Vec<RootRecord>, HomError> {
        let mut out = Vec::new();
        for eta in self.roots(w)? {
            let pair = self.pair(w, eta)?;
            let sk_ok = check_compatibility(w, &pair, self.params.a, KnotKind::SK);
            let gk_ok = check_compatibility(w, &pair, self.params.a, KnotKind::GK);
            ensure(
                lifts(w, &pair, &self.params, KnotKind::SK)? == sk_ok
                    && lifts(w, &pair, &self.params, KnotKind::GK)? == gk_ok,
                "lift to G_n(K) agrees with compatibility",
            )?;
            let base = w.base();
            out.push(RootRecord {
                eta_f_trivial: base.is_identity(&pair.eta.comps[self.f]),
                trivial_off_support: (0..w.npoints())
                    .filter(|&g| base.is_identity(&self.alpha.comps[g]))
                    .all(|g| base.is_identity(&pair.eta.comps[g])),
                eta: w.view(&pair.eta),
                sk_ok,
                gk_ok,
            });
        }
        Ok(out)
    }

    pub fn view(&self, w: &TargetWreath, roots: Vec<RootRecord>) -> WitnessView {
        let hom = self
            .presentation
            .gens
            .iter()
            .zip(self.hom.images())
            .map(|(g, e)| (g.clone(), w.view(e)))
            .collect();
        WitnessView {
            hom,
            fixed_point: w.points()[self.f].clone(),
            alpha: w.view(&self.alpha),
            bracket: w.bracket2(&self.alpha),
            root_count: roots.len(),
            sk_only: roots.iter().filter(|r| r.sk_ok && !r.gk_ok).count(),
            roots,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_instance() {
        let (w, wit) = build_witness(&TheoremParams::PRESETS[0]).unwrap();
        assert_eq!(w.bracket2(&wit.alpha), 4);
        // (t+1)/t = 4 · 2 = 3 mod 5
        assert!(wit.alpha.comps.contains(&w.xi_pow(3)));
        let recs = wit.root_records(&w).unwrap();
        assert_eq!(recs.len(), 11);
        assert!(recs.iter().all(|r| r.sk_ok));
        let gk: Vec<_> = recs.iter().filter(|r| r.gk_ok).collect();
        assert_eq!(gk.len(), 1);
        assert!(gk[0].eta_f_trivial);
        assert_eq!(recs.iter().filter(|r| r.eta_f_trivial).count(), 1);
    }

    #[test]
    fn second_instance() {
        let (w, wit) = build_witness(&TheoremParams::PRESETS[1]).unwrap();
        assert_eq!(w.npoints(), 16);
        assert_eq!(w.bracket2(&wit.alpha), 1);
        // (t+1)/t = 0 mod 3, so α is trivial on two orbits
        assert_eq!(w.free_orbits(&wit.alpha).len(), 2);
        assert_eq!(wit.expected_root_count(&w), 49);
        let recs = wit.root_records(&w).unwrap();
        assert_eq!(recs.len(), 49);
        assert!(recs.iter().all(|r| r.sk_ok && r.gk_ok == r.trivial_off_support));
        assert_eq!(recs.iter().filter(|r| r.gk_ok).count(), 1);
        assert_eq!(recs.iter().filter(|r| r.eta_f_trivial).count(), 7);
    }

    #[test]
    fn every_hat_choice_works() {
        let params = TheoremParams::PRESETS[0];
        let w = TargetWreath::new(11, 5, 2, 3).unwrap();
        let n = w.top_elements().len() as u32;
        let mut built = 0;
        for ch in (0..n).filter(|&h| w.hat_order(h) == 2) {
            for ph in (0..n).filter(|&h| w.hat_order(h) == 3) {
                let wit = build_witness_in(&w, &params, ch, ph).unwrap();
                assert_ne!(Some(wit.f), w.hat_fixed_point(ph).ok());
                built += 1;
            }
        }
        assert_eq!(built, 3 * 8);
    }
}
