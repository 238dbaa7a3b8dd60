//! End-to-end verification of the GK/SK separation for one parameter set.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use super::classify::{classify_torus_hom, TorusCase};
use super::family::{generate_pair_families, FamilyConfig, FamilyPair, PairKind};
use super::witness::{build_witness, WitnessView};
use super::{check_compatibility, lifts, Hom, HomError, TheoremParams};
use crate::group::Group;
use crate::knotpres::KnotKind;
use crate::wreath::target::WElem;
use crate::wreath::{TargetWreath, WreathError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Overall {
    Pass,
    Fail,
    Incomplete,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: String,
    pub count: Option<u64>,
    pub millis: Option<u64>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct KindStats {
    pub pairs: u64,
    pub gk: u64,
    pub sk: u64,
    pub sk_only: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ClassifierStats {
    pub homs: u64,
    pub cyclic: u64,
    pub noncyclic: u64,
    /// torus factors whose meridian image has trivial hat
    pub outside_hypotheses: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct FamilySummary {
    pub seed: u64,
    pub pairs: u64,
    pub by_kind: BTreeMap<PairKind, KindStats>,
    pub classifier: ClassifierStats,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub params: TheoremParams,
    pub status: Overall,
    pub checks: Vec<Check>,
    pub witness: Option<WitnessView>,
    pub family: Option<FamilySummary>,
    pub conclusion: String,
}

impl VerificationReport {
    pub fn new(params: TheoremParams, checks: Vec<Check>) -> Self {
        let status = overall(&checks);
        VerificationReport {
            params,
            status,
            checks,
            witness: None,
            family: None,
            conclusion: String::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Overall::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Pass only when every check passes; any failure fails; otherwise incomplete.
pub fn overall(checks: &[Check]) -> Overall {
    if checks.iter().any(|c| c.status == Status::Fail) {
        Overall::Fail
    } else if checks.iter().all(|c| c.status == Status::Pass) {
        Overall::Pass
    } else {
        Overall::Incomplete
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct VerifyConfig {
    pub family: FamilyConfig,
    /// record wall-clock times (makes output run-dependent)
    pub timings: bool,
}

struct Recorder {
    timings: bool,
    checks: Vec<Check>,
}

impl Recorder {
    fn run<T>(
        &mut self,
        name: &str,
        f: impl FnOnce() -> Result<(bool, String, Option<u64>, T), HomError>,
    ) -> Option<T> {
        let start = Instant::now();
        let res = f();
        let millis = self.timings.then(|| start.elapsed().as_millis() as u64);
        let (status, detail, count, value) = match res {
            Ok((ok, detail, count, v)) => (
                if ok { Status::Pass } else { Status::Fail },
                detail,
                count,
                Some(v),
            ),
            Err(e) => (Status::Fail, e.to_string(), None, None),
        };
        self.checks.push(Check {
            name: name.into(),
            status,
            detail,
            count,
            millis,
        });
        value
    }

    fn skip(&mut self, name: &str, why: &str) {
        self.checks.push(Check {
            name: name.into(),
            status: Status::Skipped,
            detail: why.into(),
            count: None,
            millis: None,
        });
    }
}

struct PairVerdict {
    kind: PairKind,
    gk: bool,
    sk: bool,
    lift_ok: bool,
}

fn evaluate(
    w: &TargetWreath,
    params: &TheoremParams,
    fam: &[FamilyPair],
) -> Result<Vec<PairVerdict>, HomError> {
    fam.par_iter()
        .map(|fp| {
            let gk = check_compatibility(w, &fp.pair, params.a, KnotKind::GK);
            let sk = check_compatibility(w, &fp.pair, params.a, KnotKind::SK);
            let lift_ok = lifts(w, &fp.pair, params, KnotKind::GK)? == gk
                && lifts(w, &fp.pair, params, KnotKind::SK)? == sk;
            Ok(PairVerdict {
                kind: fp.kind,
                gk,
                sk,
                lift_ok,
            })
        })
        .collect()
}

/// Runs the torus classifier on both factors of every distinct hom, after
/// conjugating the factor's meridian image into A(r,s,t) in rsf.
pub fn classify_family(
    w: &TargetWreath,
    params: &TheoremParams,
    homs: &[Hom<WElem>],
) -> Result<ClassifierStats, HomError> {
    let (c, d) = params.cd();
    let per: Vec<ClassifierStats> = homs
        .par_iter()
        .map(|h| {
            let mut st = ClassifierStats {
                homs: 1,
                ..Default::default()
            };
            for (gx, gy) in [(0, 1), (2, 3)] {
                let (chi, psi) = (h.image(gx), h.image(gy));
                let alpha = w.mul(&w.pow(psi, d as i64), &w.pow(chi, -(c as i64)));
                if alpha.hat == w.wreath().top().identity_index() {
                    st.outside_hypotheses += 1;
                    continue;
                }
                let (_, sigma) = match w.to_a(&alpha) {
                    Ok(x) => x,
                    Err(WreathError::NotInA(_)) => {
                        st.outside_hypotheses += 1;
                        continue;
                    }
                    Err(e) => return Err(e.into()),
                };
                let rec = classify_torus_hom(w, params, &w.conjugate(&sigma, chi), &w.conjugate(&sigma, psi))?;
                match rec.case {
                    TorusCase::Cyclic => st.cyclic += 1,
                    TorusCase::NonCyclic => st.noncyclic += 1,
                }
            }
            Ok(st)
        })
        .collect::<Result<_, HomError>>()?;
    Ok(per.into_iter().fold(ClassifierStats::default(), |mut acc, s| {
        acc.homs += s.homs;
        acc.cyclic += s.cyclic;
        acc.noncyclic += s.noncyclic;
        acc.outside_hypotheses += s.outside_hypotheses;
        acc
    }))
}

/// Builds the witness, counts and classifies its roots, generates the pair family,
/// checks GK ⇒ SK on every pair, and runs the classifier gate.
pub fn verify_main(params: &TheoremParams, cfg: &VerifyConfig) -> Result<VerificationReport, HomError> {
    params.validate()?;
    let mut rec = Recorder {
        timings: cfg.timings,
        checks: Vec::new(),
    };

    let built = rec.run("witness_construction", || {
        let (w, wit) = build_witness(params)?;
        let detail = format!(
            "W({},{},{},{}) with |C(s,t)| = {}; all construction identities hold",
            params.q,
            params.r,
            params.s,
            params.t,
            w.npoints()
        );
        Ok((true, detail, Some(w.npoints() as u64), (w, wit)))
    });
    let Some((w, wit)) = built else {
        for name in [
            "witness_bracket",
            "witness_root_count",
            "witness_compatibility",
            "family_generation",
            "gk_implies_sk",
            "lift_relators",
            "torus_classifier",
        ] {
            rec.skip(name, "witness construction failed");
        }
        let mut report = VerificationReport::new(*params, rec.checks);
        report.conclusion = "verification failed: witness_construction".into();
        return Ok(report);
    };

    rec.run("witness_bracket", || {
        let br = w.bracket2(&wit.alpha);
        let expect = (w.npoints() as u64 % params.r as u64) as u32;
        Ok((
            br == expect && br != 0,
            format!("[[α]] = {br}, s^ord_t(s) mod r = {expect}"),
            Some(br as u64),
            (),
        ))
    });

    let roots = rec.run("witness_root_count", || {
        let records = wit.root_records(&w)?;
        let expected = wit.expected_root_count(&w);
        let counted = w.nth_root_count(&wit.alpha, params.n)?;
        let ok = records.len() as u128 == expected && counted == expected;
        Ok((
            ok,
            format!("{} roots, |V(q,r)|^c = {expected}", records.len()),
            Some(records.len() as u64),
            records,
        ))
    });

    let sk_only = match &roots {
        Some(records) => rec
            .run("witness_compatibility", || {
                let sk_only = records.iter().filter(|r| r.sk_ok && !r.gk_ok).count();
                let all_sk = records.iter().all(|r| r.sk_ok);
                let gk_iff = records.iter().all(|r| r.gk_ok == r.trivial_off_support);
                let gk: Vec<_> = records.iter().filter(|r| r.gk_ok).collect();
                let one_gk = gk.len() == 1 && gk[0].eta_f_trivial;
                let ok = all_sk && gk_iff && one_gk && sk_only >= 1;
                Ok((
                    ok,
                    format!(
                        "all SK-compatible: {all_sk}; GK-compatible exactly when η = 1 wherever α = 1: {gk_iff}; \
                         GK-compatible roots: {} (η_f = 1: {one_gk}); SK-only: {sk_only}",
                        gk.len()
                    ),
                    Some(sk_only as u64),
                    sk_only,
                ))
            })
            .unwrap_or(0),
        None => {
            rec.skip("witness_compatibility", "roots unavailable");
            0
        }
    };

    let fam = rec.run("family_generation", || {
        let fam = generate_pair_families(&w, params, &wit, &cfg.family)?;
        let n = fam.len();
        Ok((n > 0, format!("{n} map-root pairs, seed {}", cfg.family.seed), Some(n as u64), fam))
    });

    let mut summary = None;
    if let Some(fam) = fam {
        let verdicts = rec.run("gk_implies_sk", || {
            let v = evaluate(&w, params, &fam)?;
            let bad = v.iter().filter(|p| p.gk && !p.sk).count();
            Ok((
                bad == 0,
                format!("{bad} counterexamples among {} pairs", v.len()),
                Some(v.len() as u64),
                v,
            ))
        });
        if let Some(v) = &verdicts {
            rec.run("lift_relators", || {
                let bad = v.iter().filter(|p| !p.lift_ok).count();
                Ok((
                    bad == 0,
                    format!("ν ↦ η satisfies the G_n(K) relators exactly when compatible; {bad} mismatches"),
                    Some(v.len() as u64),
                    (),
                ))
            });
        } else {
            rec.skip("lift_relators", "pair evaluation failed");
        }
        let homs: Vec<Hom<WElem>> = fam
            .iter()
            .map(|p| p.pair.hom.clone())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let cls = rec.run("torus_classifier", || {
            let st = classify_family(&w, params, &homs)?;
            let n = st.cyclic + st.noncyclic;
            Ok((
                n > 0,
                format!(
                    "{n} torus factors classified ({} cyclic, {} non-cyclic), {} outside hypotheses",
                    st.cyclic, st.noncyclic, st.outside_hypotheses
                ),
                Some(n),
                st,
            ))
        });
        let mut by_kind: BTreeMap<PairKind, KindStats> = BTreeMap::new();
        for p in verdicts.iter().flatten() {
            let e = by_kind.entry(p.kind).or_default();
            e.pairs += 1;
            e.gk += p.gk as u64;
            e.sk += p.sk as u64;
            e.sk_only += (p.sk && !p.gk) as u64;
        }
        summary = Some(FamilySummary {
            seed: cfg.family.seed,
            pairs: fam.len() as u64,
            by_kind,
            classifier: cls.unwrap_or_default(),
        });
    } else {
        for name in ["gk_implies_sk", "lift_relators", "torus_classifier"] {
            rec.skip(name, "family generation failed");
        }
    }

    let mut report = VerificationReport::new(*params, rec.checks);
    let pairs = summary.as_ref().map_or(0, |s| s.pairs);
    report.conclusion = match report.status {
        Overall::Pass => format!(
            "strict inequality |Hom(G_n(GK),W)| < |Hom(G_n(SK),W)| witnessed on the verified universe: \
             {sk_only} witness map-root pairs extend to G_n(SK) but not to G_n(GK), and every \
             GK-compatible pair among {pairs} constructed pairs is SK-compatible; \
             the full Hom sets were not enumerated"
        ),
        Overall::Fail => format!(
            "verification failed: {}",
            report
                .checks
                .iter()
                .filter(|c| c.status == Status::Fail)
                .map(|c| c.name.as_str())
                .collect::<Vec<_>>()
                .join(", ")
        ),
        Overall::Incomplete => "verification incomplete: some checks were skipped".into(),
    };
    if let Some(records) = roots {
        report.witness = Some(wit.view(&w, records));
    }
    report.family = summary;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_rules() {
        let mk = |s| Check {
            name: "x".into(),
            status: s,
            detail: String::new(),
            count: None,
            millis: None,
        };
        assert_eq!(overall(&[]), Overall::Pass);
        assert_eq!(overall(&[mk(Status::Pass), mk(Status::Skipped)]), Overall::Incomplete);
        assert_eq!(overall(&[mk(Status::Fail), mk(Status::Skipped)]), Overall::Fail);
        let r = VerificationReport::new(TheoremParams::PRESETS[0], vec![]);
        assert!(r.to_json().contains("\"checks\": []"));
    }

    #[test]
    fn rejects_bad_parameters_up_front() {
        let mut p = TheoremParams::PRESETS[0];
        p.n = 33;
        assert!(matches!(
            verify_main(&p, &VerifyConfig::default()),
            Err(HomError::Params(_))
        ));
    }
}
