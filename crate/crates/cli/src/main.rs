mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use mzv_core::convolution::{schur_truncated, SchurDiagramModN};
use mzv_core::harmonic::{HarmonicFamily, PrefixTable};
use mzv_core::poset::{evaluate_poset, LabeledPoset};
use mzv_core::real::DEFAULT_BITS;
use mzv_core::registry::{self, Ctx, IdentityReport, Params, DEFAULT_TOL};
use mzv_core::series::SeriesConfig;
use mzv_core::values::{self, bar_zeta, Family, ValueDescriptor};
use mzv_core::{ApproxReal, Composition, Error, Result};

use report::Report;

/// Multiple zeta values, their level-two relatives, labeled-poset integrals
/// and numerical checks of the identities between them.
#[derive(Parser, Debug)]
#[command(name = "mzv", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Global {
    /// Working precision in bits.
    #[arg(long, global = true, default_value_t = DEFAULT_BITS)]
    bits: u32,
    /// Initial number of series terms before tail extrapolation.
    #[arg(long, global = true)]
    terms: Option<u64>,
    /// Target error radius for values; pass tolerance for `verify`.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for `verify` (defaults to all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate a value such as `zeta 1,2`, `T 1,2` or `A 1,1 --x 0.5`.
    Value {
        /// zeta, zeta_star, t, t_star, T, S, M, zeta_bar, or with --x: Li, A, L, t.
        family: String,
        /// Composition, e.g. `2,1` or `-1,3` (a minus sign marks a bar).
        #[arg(allow_hyphen_values = true)]
        composition: String,
        /// Argument of a one-variable function, |x| ≤ 1.
        #[arg(long, allow_hyphen_values = true)]
        x: Option<f64>,
    },
    /// Exact truncated harmonic sum, e.g. `sum T 1,1 2`.
    Sum {
        /// zeta, zeta_star, T, S, t, t_star, hat_t_star, s_star, M.
        family: String,
        #[arg(allow_hyphen_values = true)]
        composition: String,
        n: u64,
    },
    /// Check registered identities.
    Verify(VerifyArgs),
    /// Labeled-poset integrals.
    Poset {
        #[command(subcommand)]
        action: PosetCmd,
    },
    /// Schur multiple zeta values modulo N, truncated.
    Schur {
        #[command(subcommand)]
        action: SchurCmd,
    },
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Identity id (see --list).
    id: Option<String>,
    /// Run every enumerated case of every identity.
    #[arg(long, conflicts_with = "id")]
    all: bool,
    /// Weight bound for --all.
    #[arg(long, default_value_t = 6)]
    max_weight: u32,
    /// Parameters such as `k=1,2; l=3`; defaults per identity.
    #[arg(long, allow_hyphen_values = true, requires = "id")]
    params: Option<String>,
    /// List identities with their parameters and defaults.
    #[arg(long, conflicts_with_all = ["id", "all"])]
    list: bool,
}

#[derive(Subcommand, Debug)]
enum PosetCmd {
    /// Evaluate I(X) for a poset given as JSON.
    Eval {
        file: PathBuf,
        /// Also print the exact combination of (alternating) MZVs.
        #[arg(long)]
        symbolic: bool,
    },
}

#[derive(Subcommand, Debug)]
enum SchurCmd {
    /// Exact sum over fillings with entries ≤ BOUND.
    Eval {
        #[arg(long)]
        bound: u32,
        file: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(k) = cli.global.threads {
        if k == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new().num_threads(k).build_global().expect("thread pool");
    }
    let mut rep = Report::new(std::env::args().skip(1).collect(), &cli.global);
    let start = Instant::now();
    let outcome = run(&cli, &mut rep);
    rep.elapsed(start.elapsed());
    let code = match outcome {
        Ok(code) => code,
        Err(e) => {
            rep.error(&e);
            e.exit_code()
        }
    };
    rep.emit(cli.global.json);
    ExitCode::from(code as u8)
}

fn series_config(g: &Global) -> SeriesConfig {
    let mut cfg = SeriesConfig { bits: g.bits, ..SeriesConfig::default() };
    if let Some(t) = g.terms {
        cfg.terms = t.max(16);
        cfg.max_terms = cfg.max_terms.max(cfg.terms);
    }
    if let Some(t) = g.tol {
        cfg.tol = t;
    }
    cfg
}

fn run(cli: &Cli, rep: &mut Report) -> Result<i32> {
    let g = &cli.global;
    if !(16..=4096).contains(&g.bits) {
        return Err(Error::Parse(format!("--bits {} outside 16..=4096", g.bits)));
    }
    if g.tol.is_some_and(|t| !(t > 0.0)) {
        return Err(Error::Parse("--tol must be positive".into()));
    }
    match &cli.command {
        Command::Value { family, composition, x } => cmd_value(family, composition, *x, g, rep),
        Command::Sum { family, composition, n } => cmd_sum(family, composition, *n, rep),
        Command::Verify(a) => cmd_verify(a, g, rep),
        Command::Poset { action: PosetCmd::Eval { file, symbolic } } => cmd_poset(file, *symbolic, g, rep),
        Command::Schur { action: SchurCmd::Eval { bound, file } } => cmd_schur(file, *bound, g, rep),
    }
}

fn cmd_value(family: &str, comp: &str, x: Option<f64>, g: &Global, rep: &mut Report) -> Result<i32> {
    let cfg = series_config(g);
    let (name, v): (String, ApproxReal) = match (family, x) {
        ("zeta_bar", None) => {
            let m: u32 = comp.parse().map_err(|_| Error::Parse(format!("zeta_bar takes an integer, got '{comp}'")))?;
            (format!("ζ̄({m})"), bar_zeta(m, cfg.bits))
        }
        ("Li" | "A" | "L" | "t", _) if x.is_some() || family != "t" => {
            let k: Composition = comp.parse()?;
            let x = x.unwrap_or(1.0);
            let v = match family {
                "Li" => values::li_single(&k, x, &cfg)?,
                "A" => values::a_function(&k, x, &cfg)?,
                "L" => values::l_function(&k, x, &cfg)?,
                _ => values::t_function(&k, x, &cfg)?,
            };
            (format!("{family}({}; {x})", show(&k)), v)
        }
        (_, Some(_)) => return Err(Error::Parse(format!("--x does not apply to family '{family}'"))),
        _ => {
            let d = ValueDescriptor::new(Family::parse(family)?, comp.parse()?);
            let v = d.eval(&cfg)?;
            (d.to_string(), v)
        }
    };
    rep.value(&name, &v);
    if v.radius > cfg.tol {
        return Err(Error::Precision(format!("radius {:.1e} above tolerance {:.1e}", v.radius, cfg.tol)));
    }
    Ok(0)
}

fn show(k: &Composition) -> String {
    if k.is_empty() {
        "∅".into()
    } else {
        k.to_string()
    }
}

fn cmd_sum(family: &str, comp: &str, n: u64, rep: &mut Report) -> Result<i32> {
    const MAX_N: u64 = 100_000;
    let fam = HarmonicFamily::parse(family)?;
    let k: Composition = comp.parse()?;
    if n > MAX_N {
        return Err(Error::Domain(format!("n = {n} above {MAX_N}")));
    }
    let table = PrefixTable::build(fam, &k, n)?;
    rep.exact(&format!("{}_{n}({})", fam.name(), show(&k)), table.at(n));
    Ok(0)
}

fn cmd_verify(a: &VerifyArgs, g: &Global, rep: &mut Report) -> Result<i32> {
    if a.list {
        for e in registry::entries() {
            rep.identity_info(e);
        }
        return Ok(0);
    }
    // --tol is the pass tolerance here; the series keep their own target.
    let cfg = SeriesConfig { tol: SeriesConfig::default().tol, ..series_config(g) };
    let ctx = Ctx { cfg, tol: g.tol.unwrap_or(DEFAULT_TOL) };
    let reports: Vec<IdentityReport> = if a.all {
        let all: Vec<_> = registry::entries().iter().collect();
        registry::verify_all(&all, a.max_weight, &ctx)
    } else {
        let id = a.id.as_deref().ok_or_else(|| Error::Parse("give an identity id or --all".into()))?;
        let params = a.params.as_deref().map(Params::parse).transpose()?;
        vec![registry::verify_identity(id, params.as_ref(), &ctx)?]
    };
    let failed = reports.iter().filter(|r| !r.pass).count();
    for r in &reports {
        rep.identity(r);
    }
    rep.summary(reports.len() - failed, failed);
    Ok(if failed == 0 { 0 } else { 1 })
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))
}

fn cmd_poset(file: &Path, symbolic: bool, g: &Global, rep: &mut Report) -> Result<i32> {
    let x = LabeledPoset::from_json(&read(file)?)?;
    let v = evaluate_poset(&x, &series_config(g))?;
    rep.poset(&v, symbolic);
    Ok(0)
}

fn cmd_schur(file: &Path, bound: u32, g: &Global, rep: &mut Report) -> Result<i32> {
    let d = SchurDiagramModN::from_json(&read(file)?)?;
    let q = schur_truncated(&d, bound)?;
    let approx = ApproxReal::from_rational(g.bits, &q);
    rep.schur(bound, &q, &approx);
    Ok(0)
}
