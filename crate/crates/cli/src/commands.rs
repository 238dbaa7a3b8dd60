use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use gnknot::arith::is_prime;
use gnknot::ffield::{CyclotomicCache, FieldSpec};
use gnknot::gdihedral::{LambdaElem, LambdaGroup};
use gnknot::homsearch::brute::DEFAULT_BUDGET;
use gnknot::homsearch::report::Overall;
use gnknot::homsearch::witness::{build_witness_in, default_hats, WitnessView};
use gnknot::homsearch::{
    count_homs_bruteforce, verify_main, FamilyConfig, HomError, TheoremParams, VerifyConfig,
};
use gnknot::knotpres::{composite_group, gn_presentation, torus_group, KnotKind, Presentation};
use gnknot::suites::lambda::{d5_fixture, lambda_suite_for, noncyclic_suite, NonCyclicReport};
use gnknot::suites::wreath::{
    centraliser_suite, generic_wreath_suite, target_wreath_suite, GENERIC_MAX_POWER,
};
use gnknot::suites::SuiteResult;
use gnknot::wreath::oracle::{candidate_count, exhaustive_nth_roots};
use gnknot::wreath::target::WreathView;
use gnknot::wreath::{TargetWreath, WreathParams};
use serde::Serialize;

use crate::{ParamArgs, PresKind};

/// Default cap on exhaustive root-search candidates.
pub const DEFAULT_ORACLE_BUDGET: u128 = 200_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Incomplete,
}

impl Verdict {
    fn of(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    fn and(self, other: Verdict) -> Verdict {
        match (self, other) {
            (Verdict::Fail, _) | (_, Verdict::Fail) => Verdict::Fail,
            (Verdict::Pass, Verdict::Pass) => Verdict::Pass,
            _ => Verdict::Incomplete,
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    /// bad flags or violated preconditions (exit 2)
    Usage(String),
    /// a computation that should succeed did not (exit 1)
    Failure(String),
}

pub struct Outcome {
    pub verdict: Verdict,
    pub json: String,
    pub text: String,
}

pub struct Context {
    pub cache: Option<PathBuf>,
    pub seed: u64,
    pub budget: Option<u128>,
    pub timings: bool,
}

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

fn failure(e: impl std::fmt::Display) -> CliError {
    CliError::Failure(e.to_string())
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("output serializes")
}

fn show(g: &LambdaElem) -> String {
    format!("({:?}, {})", g.v.coeffs.as_slice(), g.i)
}

fn field(ctx: &Context, q: u32, r: u32) -> Result<Arc<FieldSpec>, CliError> {
    let Some(path) = &ctx.cache else {
        return FieldSpec::build(q, r).map_err(usage);
    };
    let mut cache = if path.exists() {
        CyclotomicCache::load(path).map_err(usage)?
    } else {
        CyclotomicCache::default()
    };
    let f = FieldSpec::build_cached(q, r, Some(&cache)).map_err(usage)?;
    if cache.get(q, r).is_none() {
        cache.insert(&f);
        cache.save(path).map_err(usage)?;
    }
    Ok(f)
}

fn lambda_group(ctx: &Context, q: u32, r: u32) -> Result<LambdaGroup, CliError> {
    Ok(LambdaGroup::from_field(field(ctx, q, r)?))
}

fn target_wreath(ctx: &Context, [q, r, s, t]: [u32; 4]) -> Result<TargetWreath, CliError> {
    for (name, p) in [("q", q), ("r", r), ("s", s), ("t", t)] {
        if !is_prime(p as u64) {
            return Err(usage(format!("{name} = {p} must be prime")));
        }
    }
    let ps = [q, r, s, t];
    if (0..4).any(|i| (i + 1..4).any(|j| ps[i] == ps[j])) {
        return Err(usage(format!("q, r, s, t must be distinct (got {q}, {r}, {s}, {t})")));
    }
    let base = lambda_group(ctx, q, r)?;
    let top = lambda_group(ctx, s, t)?;
    TargetWreath::from_groups(base, top).map_err(usage)
}

impl ParamArgs {
    fn resolve(&self) -> Result<TheoremParams, CliError> {
        let base = match self.preset {
            Some(k @ 1..=2) => Some(TheoremParams::PRESETS[k - 1]),
            Some(k) => return Err(usage(format!("--preset must be 1 or 2 (got {k})"))),
            None => None,
        };
        let given = [
            self.a.is_some(),
            self.b.is_some(),
            self.n.is_some(),
            self.q.is_some(),
            self.r.is_some(),
            self.s.is_some(),
            self.t.is_some(),
        ];
        let base = match base {
            Some(p) => p,
            None if given.iter().all(|g| !g) => TheoremParams::PRESETS[0],
            None if given.iter().all(|&g| g) => TheoremParams::PRESETS[0],
            None => {
                return Err(usage(
                    "give all of --a --b --n --q --r --s --t, or a --preset to fill the rest",
                ))
            }
        };
        let p = TheoremParams {
            a: self.a.unwrap_or(base.a),
            b: self.b.unwrap_or(base.b),
            n: self.n.unwrap_or(base.n),
            q: self.q.unwrap_or(base.q),
            r: self.r.unwrap_or(base.r),
            s: self.s.unwrap_or(base.s),
            t: self.t.unwrap_or(base.t),
        };
        p.validate().map_err(usage)?;
        Ok(p)
    }
}

fn witness_wreath(ctx: &Context, p: &TheoremParams) -> Result<TargetWreath, CliError> {
    target_wreath(ctx, [p.q, p.r, p.s, p.t])
}

fn suite_lines(out: &mut String, s: &SuiteResult) {
    let _ = writeln!(out, "suite {}: {}", s.name, if s.passed() { "pass" } else { "FAIL" });
    for c in &s.checks {
        let _ = writeln!(out, "  {:<40} {:>10} cases {:>6} failures", c.name, c.cases, c.failures);
        if let Some(f) = &c.first_failure {
            let _ = writeln!(out, "    first failure: {f}");
        }
    }
}

#[derive(Serialize)]
struct LambdaOut {
    status: Verdict,
    q: u32,
    r: u32,
    degree: usize,
    modulus: Vec<u32>,
    zeta: Vec<u32>,
    order: u64,
    v_size: u64,
    classes: u64,
    suite: Option<SuiteResult>,
    noncyclic: Option<NonCyclicReport>,
}

pub fn lambda(
    ctx: &Context,
    q: u32,
    r: u32,
    verify: bool,
    ab: Option<(u64, u64)>,
) -> Result<Outcome, CliError> {
    let lam = lambda_group(ctx, q, r)?;
    let f = lam.field();
    let suite = if verify {
        Some(lambda_suite_for(&lam).map_err(failure)?)
    } else {
        None
    };
    let noncyclic = match ab {
        Some((a, b)) => Some(noncyclic_suite(q, r, a, b).map_err(usage)?),
        None => None,
    };
    let mut verdict = Verdict::Pass;
    if let Some(s) = &suite {
        verdict = verdict.and(Verdict::of(s.passed()));
    }
    if let Some(n) = &noncyclic {
        verdict = verdict.and(Verdict::of(n.suite.passed()));
    }
    let vs = lam.v_size();
    let out = LambdaOut {
        status: verdict,
        q,
        r,
        degree: f.degree(),
        modulus: f.modulus().to_vec(),
        zeta: f.zeta().coeffs.to_vec(),
        order: lam.order_of_group(),
        v_size: vs,
        classes: 1 + (vs - 1) / r as u64 + (r as u64 - 1),
        suite,
        noncyclic,
    };
    let mut text = String::new();
    let _ = writeln!(text, "Λ({q},{r}): order {}, |V| = {vs}, degree {}", out.order, out.degree);
    let _ = writeln!(text, "modulus (constant term first): {:?}", out.modulus);
    let _ = writeln!(text, "conjugacy classes: {}", out.classes);
    if let Some(s) = &out.suite {
        suite_lines(&mut text, s);
    }
    if let Some(n) = &out.noncyclic {
        let _ = writeln!(text, "non-cyclic solutions of x^{} = y^{}: {}", n.a, n.b, n.count);
        suite_lines(&mut text, &n.suite);
    }
    let _ = writeln!(text, "status: {:?}", out.status);
    Ok(Outcome {
        verdict,
        json: to_json(&out),
        text,
    })
}

#[derive(Serialize)]
struct WreathOut {
    status: Verdict,
    params: WreathParams,
    order: u128,
    base_order: u64,
    top_order: u64,
    points: Vec<LambdaElem>,
    xi: LambdaElem,
    suites: Vec<SuiteResult>,
}

pub fn wreath(
    ctx: &Context,
    qrst: [u32; 4],
    samples: Option<usize>,
    generic: bool,
) -> Result<Outcome, CliError> {
    let w = target_wreath(ctx, qrst)?;
    let mut suites = Vec::new();
    if let Some(k) = samples {
        suites.push(target_wreath_suite(&w, k, ctx.seed).map_err(failure)?);
    }
    if generic {
        suites.push(d5_fixture().map_err(failure)?);
        suites.push(centraliser_suite().map_err(failure)?);
        suites.push(generic_wreath_suite(GENERIC_MAX_POWER).map_err(failure)?);
    }
    let verdict = Verdict::of(suites.iter().all(SuiteResult::passed));
    let out = WreathOut {
        status: verdict,
        params: w.params(),
        order: w.order_of_group(),
        base_order: w.base().order_of_group(),
        top_order: w.top_group().order_of_group(),
        points: w.points().to_vec(),
        xi: w.xi().elem().clone(),
        suites,
    };
    let [q, r, s, t] = qrst;
    let mut text = String::new();
    let _ = writeln!(text, "W({q},{r},{s},{t}) = Λ({q},{r}) ≀ Λ({s},{t})");
    let _ = writeln!(text, "order {}, |C({s},{t})| = {}", out.order, out.points.len());
    let _ = writeln!(text, "ξ = {}", show(&out.xi));
    for s in &out.suites {
        suite_lines(&mut text, s);
    }
    let _ = writeln!(text, "status: {:?}", out.status);
    Ok(Outcome {
        verdict,
        json: to_json(&out),
        text,
    })
}

#[derive(Serialize)]
struct OracleOut {
    status: Verdict,
    candidates: u128,
    budget: u128,
    found: Option<usize>,
    identical: Option<bool>,
}

#[derive(Serialize)]
struct RootsOut {
    status: Verdict,
    params: TheoremParams,
    alpha: WreathView,
    free_orbits: Vec<Vec<usize>>,
    expected_count: u128,
    roots: Vec<WreathView>,
    oracle: Option<OracleOut>,
}

pub fn roots(ctx: &Context, args: &ParamArgs, oracle: bool) -> Result<Outcome, CliError> {
    let p = args.resolve()?;
    let w = witness_wreath(ctx, &p)?;
    let (ch, ph) = default_hats(&w);
    let wit = build_witness_in(&w, &p, ch, ph).map_err(failure)?;
    let roots = wit.roots(&w).map_err(failure)?;
    let expected = wit.expected_root_count(&w);
    let mut verdict = Verdict::of(roots.len() as u128 == expected);
    let oracle = if oracle {
        let budget = ctx.budget.unwrap_or(DEFAULT_ORACLE_BUDGET);
        let candidates = candidate_count(&w);
        let o = if candidates > budget {
            OracleOut {
                status: Verdict::Incomplete,
                candidates,
                budget,
                found: None,
                identical: None,
            }
        } else {
            let res = exhaustive_nth_roots(&w, &wit.alpha, p.n, budget).map_err(failure)?;
            let identical = res.roots == roots;
            OracleOut {
                status: Verdict::of(identical),
                candidates: res.candidates,
                budget,
                found: Some(res.roots.len()),
                identical: Some(identical),
            }
        };
        verdict = verdict.and(o.status);
        Some(o)
    } else {
        None
    };
    let out = RootsOut {
        status: verdict,
        params: p,
        alpha: w.view(&wit.alpha),
        free_orbits: w.free_orbits(&wit.alpha),
        expected_count: expected,
        roots: roots.iter().map(|e| w.view(e)).collect(),
        oracle,
    };
    let mut text = String::new();
    let _ = writeln!(text, "n = {}: {} roots of α (expected |V|^c = {expected})", p.n, roots.len());
    let _ = writeln!(text, "orbits of α̂ where α is trivial: {:?}", out.free_orbits);
    for (k, e) in out.roots.iter().enumerate() {
        let comps: Vec<String> = e.comps.iter().map(show).collect();
        let _ = writeln!(text, "  η{k:<3} hat {} comps {}", show(&e.hat), comps.join(" "));
    }
    if let Some(o) = &out.oracle {
        match o.found {
            Some(found) => {
                let _ = writeln!(
                    text,
                    "oracle: {found} roots over {} candidates, identical = {}",
                    o.candidates,
                    o.identical == Some(true)
                );
            }
            None => {
                let _ = writeln!(
                    text,
                    "oracle skipped: {} candidates exceed the budget of {}",
                    o.candidates, o.budget
                );
            }
        }
    }
    let _ = writeln!(text, "status: {:?}", out.status);
    Ok(Outcome {
        verdict,
        json: to_json(&out),
        text,
    })
}

#[derive(Serialize)]
struct WitnessOut {
    status: Verdict,
    params: TheoremParams,
    witness: WitnessView,
}

pub fn witness(ctx: &Context, args: &ParamArgs) -> Result<Outcome, CliError> {
    let p = args.resolve()?;
    let w = witness_wreath(ctx, &p)?;
    let (ch, ph) = default_hats(&w);
    let wit = build_witness_in(&w, &p, ch, ph).map_err(failure)?;
    let records = wit.root_records(&w).map_err(failure)?;
    let view = wit.view(&w, records);
    let gk: Vec<_> = view.roots.iter().filter(|r| r.gk_ok).collect();
    let ok = view.roots.iter().all(|r| r.sk_ok) && gk.len() == 1 && gk[0].eta_f_trivial;
    let verdict = Verdict::of(ok);
    let mut text = String::new();
    let _ = writeln!(
        text,
        "witness in W({},{},{},{}) for (a, b, n) = ({}, {}, {})",
        p.q, p.r, p.s, p.t, p.a, p.b, p.n
    );
    let _ = writeln!(text, "fixed point f = {}, [[α]] = {}", show(&view.fixed_point), view.bracket);
    let _ = writeln!(text, "{:<6} {:<8} {:<4} {:<4}", "root", "η_f = 1", "SK", "GK");
    for (k, r) in view.roots.iter().enumerate() {
        let yn = |b: bool| if b { "yes" } else { "no" };
        let _ = writeln!(
            text,
            "{:<6} {:<8} {:<4} {:<4}",
            k,
            yn(r.eta_f_trivial),
            yn(r.sk_ok),
            yn(r.gk_ok)
        );
    }
    let _ = writeln!(text, "{} roots, {} SK-only", view.root_count, view.sk_only);
    let _ = writeln!(text, "status: {verdict:?}");
    let out = WitnessOut {
        status: verdict,
        params: p,
        witness: view,
    };
    Ok(Outcome {
        verdict,
        json: to_json(&out),
        text,
    })
}

pub fn verify_theorem(
    ctx: &Context,
    args: &ParamArgs,
    homs_per_kind: usize,
    roots_per_hom: usize,
) -> Result<Outcome, CliError> {
    let p = args.resolve()?;
    let cfg = VerifyConfig {
        family: FamilyConfig {
            seed: ctx.seed,
            homs_per_kind,
            roots_per_hom,
        },
        timings: ctx.timings,
    };
    let report = verify_main(&p, &cfg).map_err(|e| match e {
        HomError::Params(_) => usage(e),
        e => failure(e),
    })?;
    let verdict = match report.status {
        Overall::Pass => Verdict::Pass,
        Overall::Fail => Verdict::Fail,
        Overall::Incomplete => Verdict::Incomplete,
    };
    let mut text = String::new();
    let _ = writeln!(
        text,
        "(a, b, n, q, r, s, t) = ({}, {}, {}, {}, {}, {}, {})",
        p.a, p.b, p.n, p.q, p.r, p.s, p.t
    );
    for c in &report.checks {
        let _ = writeln!(text, "  {:<24} {:<8} {}", c.name, format!("{:?}", c.status), c.detail);
    }
    let _ = writeln!(text, "{}", report.conclusion);
    let _ = writeln!(text, "status: {verdict:?}");
    Ok(Outcome {
        verdict,
        json: report.to_json(),
        text,
    })
}

#[derive(Serialize)]
struct CountOut {
    status: Verdict,
    q: u32,
    r: u32,
    generators: Vec<String>,
    relators: usize,
    candidates: u128,
    budget: u128,
    count: Option<u64>,
    expected: Option<u64>,
}

fn presentation(
    file: Option<&Path>,
    kind: PresKind,
    (a, b, n): (u64, u64, u64),
) -> Result<Presentation, CliError> {
    if let Some(path) = file {
        return Presentation::load(path).map_err(usage);
    }
    match kind {
        PresKind::Torus => torus_group(a, b),
        PresKind::Composite => composite_group(a, b),
        PresKind::Gk => gn_presentation(a, b, n, KnotKind::GK),
        PresKind::Sk => gn_presentation(a, b, n, KnotKind::SK),
    }
    .map_err(usage)
}

pub fn count_homs(
    ctx: &Context,
    q: u32,
    r: u32,
    file: Option<&Path>,
    kind: PresKind,
    abn: (u64, u64, u64),
    expect: Option<u64>,
) -> Result<Outcome, CliError> {
    let pres = presentation(file, kind, abn)?;
    let lam = lambda_group(ctx, q, r)?;
    let budget = ctx.budget.unwrap_or(DEFAULT_BUDGET);
    let candidates = (lam.order_of_group() as u128).saturating_pow(pres.gens.len() as u32);
    let count = match count_homs_bruteforce(&pres, &lam, budget) {
        Ok(c) => Some(c),
        Err(HomError::BudgetExceeded { .. }) => None,
        Err(e) => return Err(usage(e)),
    };
    let verdict = match (count, expect) {
        (None, _) => Verdict::Incomplete,
        (Some(c), Some(e)) => Verdict::of(c == e),
        (Some(_), None) => Verdict::Pass,
    };
    let out = CountOut {
        status: verdict,
        q,
        r,
        generators: pres.gens.clone(),
        relators: pres.rels.len(),
        candidates,
        budget,
        count,
        expected: expect,
    };
    let mut text = String::new();
    let _ = writeln!(
        text,
        "presentation on {} generators ({}), {} relators; target Λ({q},{r})",
        out.generators.len(),
        out.generators.join(", "),
        out.relators
    );
    match count {
        Some(c) => {
            let _ = writeln!(text, "|Hom| = {c}");
        }
        None => {
            let _ = writeln!(text, "skipped: {candidates} assignments exceed the budget of {budget}");
        }
    }
    let _ = writeln!(text, "status: {verdict:?}");
    Ok(Outcome {
        verdict,
        json: to_json(&out),
        text,
    })
}
