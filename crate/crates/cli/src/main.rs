use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Value};

use qaffine::cluster::{enumerate, named_seed, type_a_seed, Seed, SEED_NAMES};
use qaffine::qchar::{fm_with, Discipline, FmOptions, QCharError};
use qaffine::qgroth::canonical_class;
use qaffine::relations::{qq_star_relation, qq_system, tq_relation};
use qaffine::truncation::{conjecture_enumerate, shortest_chains, ChiTables, TruncationParam};
use qaffine::vars::{mono, Psi, Y};
use qaffine::xxz::{bethe_check, commutativity, fit_spectrum, verify_qq_polynomial, ChainSpec, XxzError};
use qaffine::{CartanData, PsiWeight};
use qaffine_cli::workspace::{to_pretty, write_atomic};
use qaffine_cli::{catalog, find, Workspace};

#[derive(Parser)]
#[command(name = "qaffine", version, about = "q-characters, cluster mutation, Baxter relations and XXZ numerics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// q-character of a fundamental module.
    Qchar(QcharArgs),
    /// Seeds and mutation-class enumeration.
    #[command(subcommand)]
    Cluster(ClusterCmd),
    /// TQ, QQ and QQ* relations.
    Relations(RelationArgs),
    /// Truncation parameters.
    #[command(subcommand)]
    Truncate(TruncateCmd),
    /// The sl2 quantum Grothendieck ring.
    #[command(subcommand)]
    Qgroth(QgrothCmd),
    /// XXZ spin-chain numerics.
    #[command(subcommand)]
    Xxz(XxzCmd),
    /// Re-run the built-in scenarios.
    Repro(ReproArgs),
    /// Workspace cache maintenance.
    #[command(subcommand)]
    Cache(CacheCmd),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum RelFormat {
    Json,
    Latex,
}

#[derive(Clone, Copy, ValueEnum)]
enum DisciplineArg {
    Forward,
    Reverse,
}

#[derive(Args)]
struct QcharArgs {
    #[arg(long = "type")]
    kind: String,
    #[arg(long)]
    node: usize,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    shift: i64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Maximum number of monomials created.
    #[arg(long)]
    budget: Option<usize>,
    #[arg(long, value_enum, default_value_t = DisciplineArg::Forward)]
    discipline: DisciplineArg,
    /// Recompute even when a cached result exists.
    #[arg(long)]
    no_cache: bool,
}

#[derive(Subcommand)]
enum ClusterCmd {
    /// Breadth-first enumeration of clusters.
    Enumerate {
        /// `aN`, a built-in seed name, or a JSON seed file.
        #[arg(long)]
        seed: String,
        /// Window length for the infinite families.
        #[arg(long, default_value_t = 4)]
        length: usize,
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Prints a seed as JSON.
    Seed {
        #[arg(long)]
        seed: String,
        #[arg(long, default_value_t = 4)]
        length: usize,
    },
    /// Lists the built-in seed names.
    List,
}

#[derive(Clone, Copy, ValueEnum)]
enum RelKind {
    Tq,
    Qq,
    Qqstar,
}

#[derive(Args)]
struct RelationArgs {
    #[arg(value_enum)]
    kind: RelKind,
    #[arg(long = "type")]
    cartan: String,
    #[arg(long)]
    node: usize,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    shift: i64,
    #[arg(long, value_enum, default_value_t = RelFormat::Latex)]
    format: RelFormat,
    /// Drop the weight prefactors.
    #[arg(long)]
    omit_weights: bool,
}

#[derive(Subcommand)]
enum TruncateCmd {
    /// Parameters coming from χ(Z).
    Enumerate {
        #[arg(long = "type")]
        cartan: String,
        /// Per-node root exponents, e.g. `[[], [0]]`.
        #[arg(long = "Z")]
        z: String,
        /// JSON file with χ tables for types without built-in ones.
        #[arg(long)]
        tables: Option<PathBuf>,
    },
    /// Shortest chains from Z to a target parameter.
    Chain {
        #[arg(long = "type")]
        cartan: String,
        #[arg(long = "Z")]
        z: String,
        /// Target as a parameter in the `--Z` syntax, or as
        /// `[[node, shift, exponent], ...]`.
        #[arg(long)]
        target: String,
        #[arg(long)]
        max_depth: Option<usize>,
        #[arg(long)]
        tables: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum QgrothCmd {
    /// Canonical class of the simple module with the given highest shifts.
    Canonical {
        /// Comma-separated shifts, e.g. `0,2`.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        shifts: Vec<i64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Subcommand)]
enum XxzCmd {
    /// Diagonalize, fit λ and Q, and check Bethe and q-Wronskian identities.
    Fit {
        #[arg(long = "N")]
        n: usize,
        /// Twist, `re` or `re,im`.
        #[arg(long, default_value = "0.5")]
        u: String,
        /// Quantum parameter, `re` or `re,im`.
        #[arg(long, default_value = "0.7,0.1")]
        q: String,
        #[arg(long)]
        seed: Option<u64>,
        /// Write the report here instead of stdout.
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Args)]
struct ReproArgs {
    /// Run every scenario.
    #[arg(long)]
    all: bool,
    /// Print the catalog and exit.
    #[arg(long)]
    list: bool,
    names: Vec<String>,
}

#[derive(Subcommand)]
enum CacheCmd {
    /// Remove cache entries older than the given age.
    Gc {
        #[arg(long, default_value_t = 0)]
        max_age_secs: u64,
    },
}

enum Failure {
    Mismatch(String),
    Usage(String),
    Resource(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Mismatch(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Resource(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Mismatch(m) | Failure::Usage(m) | Failure::Resource(m) => m,
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Resource(e.to_string())
    }
}

fn usage<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Usage(e.to_string())
}

fn qchar_failure(e: QCharError) -> Failure {
    match e {
        QCharError::NonTermination(_) => Failure::Resource(e.to_string()),
        _ => Failure::Usage(e.to_string()),
    }
}

fn xxz_failure(e: XxzError) -> Failure {
    match e {
        XxzError::TooLarge(_) => Failure::Resource(e.to_string()),
        _ => Failure::Usage(e.to_string()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn print_json(v: &Value) {
    print!("{}", to_pretty(v));
}

fn cartan(label: &str) -> Result<CartanData, Failure> {
    CartanData::from_label(label).map_err(usage)
}

fn cartan_json(cd: &CartanData) -> Value {
    let m: Vec<Vec<i64>> = cd.nodes().map(|i| cd.nodes().map(|j| cd.cij(i, j)).collect()).collect();
    json!({"type": cd.kind.to_string(), "matrix": m})
}

fn run(cmd: Command) -> Result<(), Failure> {
    let ws = Workspace::from_env()?;
    let config = ws.config()?;
    match cmd {
        Command::Qchar(a) => {
            let cd = cartan(&a.kind)?;
            cd.check_node(a.node).map_err(usage)?;
            let opts = FmOptions {
                budget: a.budget.unwrap_or(config.qchar_budget),
                discipline: match a.discipline {
                    DisciplineArg::Forward => Discipline::Forward,
                    DisciplineArg::Reverse => Discipline::Reverse,
                },
            };
            let input = json!({"cartan": cartan_json(&cd), "node": a.node, "shift": a.shift});
            let compute = || -> Result<Value, Failure> {
                let qc = fm_with(&cd, &mono::<Y>(&[(a.node, a.shift, 1)]), &opts).map_err(qchar_failure)?;
                Ok(json!({"json": qc.to_json(), "text": qc.to_string()}))
            };
            let (v, hit) = if a.no_cache { (compute()?, false) } else { ws.cached("qchar", &input, compute)? };
            ws.log_run(&format!("qchar {} {} {} cache={}", cd.kind, a.node, a.shift, if hit { "hit" } else { "miss" }))?;
            match a.format {
                Format::Json => print_json(&v["json"]),
                Format::Text => println!("{}", v["text"].as_str().unwrap_or_default()),
            }
        }
        Command::Cluster(c) => match c {
            ClusterCmd::Enumerate { seed, length, budget } => {
                let s = load_seed(&seed, length)?;
                let e = enumerate(&s, budget.unwrap_or(config.cluster_budget));
                ws.log_run(&format!("cluster enumerate {seed} clusters={}", e.clusters.len()))?;
                print_json(&json!({
                    "seed": s.to_json(),
                    "variables": e.variables.len(),
                    "clusters": e.clusters.len(),
                    "enumeration": e.to_json(),
                }));
            }
            ClusterCmd::Seed { seed, length } => print_json(&load_seed(&seed, length)?.to_json()),
            ClusterCmd::List => {
                for n in SEED_NAMES {
                    println!("{n}");
                }
            }
        },
        Command::Relations(a) => {
            let cd = cartan(&a.cartan)?;
            cd.check_node(a.node).map_err(usage)?;
            let rel = match a.kind {
                RelKind::Tq => {
                    let qc = fm_with(&cd, &mono::<Y>(&[(a.node, a.shift, 1)]), &FmOptions::default())
                        .map_err(qchar_failure)?;
                    tq_relation(&cd, &qc).map_err(usage)?
                }
                RelKind::Qq => qq_system(&cd, a.node, a.shift).map_err(usage)?,
                RelKind::Qqstar => qq_star_relation(&cd, a.node, a.shift).map_err(usage)?,
            };
            match a.format {
                RelFormat::Json => print_json(&rel.to_json(a.omit_weights)),
                RelFormat::Latex => println!("{}", rel.to_latex(a.omit_weights)),
            }
        }
        Command::Truncate(t) => match t {
            TruncateCmd::Enumerate { cartan: label, z, tables } => {
                let cd = cartan(&label)?;
                let z = parse_param(&z, cd.rank())?;
                let tables = load_tables(tables.as_ref())?;
                let list = conjecture_enumerate(&cd, &z, tables.as_ref()).map_err(usage)?;
                print_json(&json!({
                    "Z": z.to_json(),
                    "count": list.len(),
                    "parameters": list.iter().map(|e| e.to_json()).collect::<Vec<_>>(),
                }));
            }
            TruncateCmd::Chain { cartan: label, z, target, max_depth, tables } => {
                let cd = cartan(&label)?;
                let z = parse_param(&z, cd.rank())?;
                let target = parse_target(&target, cd.rank())?;
                let tables = load_tables(tables.as_ref())?;
                let depth = max_depth.unwrap_or(config.chain_depth);
                let chains = shortest_chains(&cd, &z, &target, depth, tables.as_ref()).map_err(usage)?;
                print_json(&json!({
                    "found": !chains.is_empty(),
                    "chains": chains.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
                }));
                if chains.is_empty() {
                    return Err(Failure::Mismatch(format!("no chain within depth {depth}")));
                }
            }
        },
        Command::Qgroth(QgrothCmd::Canonical { shifts, format }) => {
            let l = canonical_class(&shifts).map_err(usage)?;
            match format {
                Format::Json => print_json(&json!({"shifts": shifts, "canonical": l.to_json()})),
                Format::Text => println!("{l}"),
            }
        }
        Command::Xxz(XxzCmd::Fit { n, u, q, seed, json: out }) => {
            let spec = ChainSpec::homogeneous(n, parse_complex(&q)?, parse_complex(&u)?).map_err(xxz_failure)?;
            let seed = seed.unwrap_or(config.xxz_seed);
            let comm = commutativity(&spec, 5, seed).map_err(xxz_failure)?;
            let fit = fit_spectrum(&spec, seed).map_err(xxz_failure)?;
            let (bethe, skipped) = bethe_check(&fit);
            let qq = verify_qq_polynomial(&fit);
            let report = json!({
                "commutator": comm,
                "spectrum": fit.to_json(),
                "bethe_max": bethe,
                "bethe_skipped": skipped,
                "wronskian": qq.to_json(),
            });
            ws.log_run(&format!("xxz fit N={n} tq={:e} bethe={bethe:e}", fit.max_tq_residual()))?;
            match out {
                Some(p) => write_atomic(&p, &to_pretty(&report))?,
                None => print_json(&report),
            }
            if comm > config.commutator_tol || fit.max_tq_residual() > config.fit_tol {
                return Err(Failure::Mismatch("residuals above tolerance".into()));
            }
        }
        Command::Repro(a) => repro(&ws, &a)?,
        Command::Cache(CacheCmd::Gc { max_age_secs }) => {
            let freed = ws.cache_gc(Duration::from_secs(max_age_secs))?;
            ws.log_run(&format!("cache gc freed={freed}"))?;
            println!("freed {freed} bytes");
        }
    }
    Ok(())
}

fn repro(ws: &Workspace, a: &ReproArgs) -> Result<(), Failure> {
    if a.list {
        for s in catalog() {
            println!("{:<28} {:<22} {}", s.name, s.module, s.expected);
        }
        return Ok(());
    }
    let selected = if a.all {
        catalog()
    } else {
        a.names
            .iter()
            .map(|n| find(n).ok_or_else(|| Failure::Usage(format!("unknown scenario {n}"))))
            .collect::<Result<Vec<_>, _>>()?
    };
    let config = ws.config()?;
    let mut failed = Vec::new();
    for s in &selected {
        let t0 = Instant::now();
        let r = s.run(&config);
        ws.write_report(s.name, &r.to_json())?;
        ws.log_run(&format!("repro {} passed={} {:?}", s.name, r.passed, t0.elapsed()))?;
        println!("{} {}", if r.passed { "PASS" } else { "FAIL" }, s.name);
        if !r.passed {
            eprintln!("{}:\n{}", s.name, r.diff());
            failed.push(s.name);
        }
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Mismatch(format!("{} scenario(s) failed: {}", failed.len(), failed.join(", "))))
    }
}

fn load_seed(name: &str, length: usize) -> Result<Seed, Failure> {
    let lower = name.to_ascii_lowercase();
    if let Some(n) = lower.strip_prefix('a').and_then(|r| r.parse::<usize>().ok()) {
        if n == 0 {
            return Err(Failure::Usage("type A seeds need rank at least 1".into()));
        }
        return Ok(type_a_seed(n));
    }
    if SEED_NAMES.contains(&name) {
        return named_seed(name, length).map_err(usage);
    }
    let text = std::fs::read_to_string(name).map_err(|e| Failure::Usage(format!("{name}: {e}")))?;
    let v: Value = serde_json::from_str(&text).map_err(usage)?;
    Seed::from_json(&v).map_err(usage)
}

fn load_tables(path: Option<&PathBuf>) -> Result<Option<ChiTables>, Failure> {
    let Some(p) = path else { return Ok(None) };
    let text = std::fs::read_to_string(p).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?;
    let v: Value = serde_json::from_str(&text).map_err(usage)?;
    ChiTables::from_json(&v).map(Some).map_err(usage)
}

fn parse_param(s: &str, rank: usize) -> Result<TruncationParam, Failure> {
    let v: Value = serde_json::from_str(s).map_err(usage)?;
    TruncationParam::from_json(&v, rank).map_err(usage)
}

fn parse_target(s: &str, rank: usize) -> Result<PsiWeight, Failure> {
    if let Ok(p) = parse_param(s, rank) {
        return Ok(p.to_psi());
    }
    let v: Vec<(usize, i64, i64)> = serde_json::from_str(s).map_err(usage)?;
    Ok(PsiWeight::from_monomial(mono::<Psi>(&v)))
}

fn parse_complex(s: &str) -> Result<Complex64, Failure> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |x: &str| x.parse::<f64>().map_err(|e| Failure::Usage(format!("{s}: {e}")));
    match parts.as_slice() {
        [re] => Ok(Complex64::new(num(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(num(re)?, num(im)?)),
        _ => Err(Failure::Usage(format!("expected `re` or `re,im`, got {s}"))),
    }
}
