//! `gnknot`: inspect Λ(q,r) and W(q,r,s,t), enumerate roots, build the GK/SK
//! witness, verify the separation theorem and count homomorphisms.

mod commands;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use commands::{CliError, Outcome, Verdict};

#[derive(Debug, Parser)]
#[command(name = "gnknot", version, about = "Generalised knot groups and wreath products of generalised dihedral groups")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Debug, Args)]
struct Common {
    /// Emit JSON instead of a table
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Cyclotomic modulus cache (JSON); created or extended as fields are built
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    /// Seed for sampled checks and generated families
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Cap on candidates visited by exhaustive searches
    #[arg(long, global = true)]
    budget: Option<u128>,
    /// Record wall-clock times in reports
    #[arg(long, global = true)]
    timings: bool,
}

/// Theorem parameters (a, b, n, q, r, s, t). Flags override the chosen preset;
/// with neither, preset 1 is used.
#[derive(Debug, Clone, Args)]
pub struct ParamArgs {
    /// 1 = (2,3,11,11,5,2,3), 2 = (2,5,7,7,3,2,5)
    #[arg(long)]
    preset: Option<usize>,
    #[arg(long)]
    a: Option<u64>,
    #[arg(long)]
    b: Option<u64>,
    #[arg(long)]
    n: Option<u64>,
    #[arg(long)]
    q: Option<u32>,
    #[arg(long)]
    r: Option<u32>,
    #[arg(long)]
    s: Option<u32>,
    #[arg(long)]
    t: Option<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PresKind {
    /// G_{a,b} = <u, v | u^a = v^b>
    Torus,
    /// H_{a,b}, the group of GK_{a,b} and SK_{a,b}
    Composite,
    /// G_n(GK_{a,b})
    Gk,
    /// G_n(SK_{a,b})
    Sk,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Inspect Λ(q,r); optionally run its structural suite
    Lambda {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        r: u32,
        /// Run the exhaustive suite
        #[arg(long)]
        verify: bool,
        /// Count non-cyclic solutions of x^a = y^b (needs --b)
        #[arg(long, requires = "b")]
        a: Option<u64>,
        #[arg(long, requires = "a")]
        b: Option<u64>,
    },
    /// Inspect W(q,r,s,t); optionally run the wreath suites
    Wreath {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        s: u32,
        #[arg(long)]
        t: u32,
        /// Run the sampled suite on W(q,r,s,t)
        #[arg(long)]
        verify: bool,
        /// Samples for --verify
        #[arg(long, default_value_t = 500)]
        samples: usize,
        /// Also run the exhaustive suites on Λ(2,3) ≀ Z_5, Λ(2,3) ≀ Z_3 and the D_5 fixture
        #[arg(long)]
        generic: bool,
    },
    /// Enumerate the n-th roots of the witness meridian image α
    Roots {
        #[command(flatten)]
        params: ParamArgs,
        /// Cross-check against an exhaustive search over W
        #[arg(long)]
        oracle: bool,
    },
    /// Build the witness map and tabulate GK/SK compatibility of its roots
    Witness {
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Run the full verification pipeline and print the report
    VerifyTheorem {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 40)]
        homs_per_kind: usize,
        #[arg(long, default_value_t = 12)]
        roots_per_hom: usize,
    },
    /// Count homomorphisms into Λ(q,r) by brute force
    CountHoms {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        r: u32,
        /// Presentation file (JSON); overrides --family
        #[arg(long)]
        pres: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = PresKind::Torus)]
        family: PresKind,
        #[arg(long, default_value_t = 2)]
        a: u64,
        #[arg(long, default_value_t = 3)]
        b: u64,
        /// Root exponent for the gk and sk families
        #[arg(long, default_value_t = 2)]
        n: u64,
        /// Fail unless the count equals this
        #[arg(long)]
        expect: Option<u64>,
    },
}

fn dispatch(cli: Cli) -> Result<Outcome, CliError> {
    let c = &cli.common;
    let ctx = commands::Context {
        cache: c.cache.clone(),
        seed: c.seed,
        budget: c.budget,
        timings: c.timings,
    };
    match cli.cmd {
        Cmd::Lambda { q, r, verify, a, b } => commands::lambda(&ctx, q, r, verify, a.zip(b)),
        Cmd::Wreath {
            q,
            r,
            s,
            t,
            verify,
            samples,
            generic,
        } => commands::wreath(&ctx, [q, r, s, t], verify.then_some(samples), generic),
        Cmd::Roots { params, oracle } => commands::roots(&ctx, &params, oracle),
        Cmd::Witness { params } => commands::witness(&ctx, &params),
        Cmd::VerifyTheorem {
            params,
            homs_per_kind,
            roots_per_hom,
        } => commands::verify_theorem(&ctx, &params, homs_per_kind, roots_per_hom),
        Cmd::CountHoms {
            q,
            r,
            pres,
            family,
            a,
            b,
            n,
            expect,
        } => commands::count_homs(&ctx, q, r, pres.as_deref(), family, (a, b, n), expect),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.common.threads {
        if n == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let json = cli.common.json;
    match dispatch(cli) {
        Ok(out) => {
            // a closed pipe is not an error worth reporting
            let mut so = std::io::stdout().lock();
            let _ = if json {
                writeln!(so, "{}", out.json)
            } else {
                write!(so, "{}", out.text)
            };
            match out.verdict {
                Verdict::Pass => ExitCode::SUCCESS,
                Verdict::Fail | Verdict::Incomplete => ExitCode::from(1),
            }
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Failure(msg)) => {
            eprintln!("failure: {msg}");
            ExitCode::from(1)
        }
    }
}
