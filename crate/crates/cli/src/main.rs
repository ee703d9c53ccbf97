//! `tyang`: run verification suites, manage the structure-constant cache.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use tyang_core::liealg::{build_lie_algebra, LieAlgebra};
use tyang_core::rootdata::{build_cartan, CartanData};
use tyang_core::verify::{aggregate, applicable, run_suite, Status, SuiteParams, VerificationReport, SUITES};

const SCHEMA: &str = "tyang-report/1";
const EXIT_USAGE: u8 = 1;

#[derive(Parser)]
#[command(name = "tyang", version, about = "Exact checks for split twisted Yangian presentations")]
struct Cli {
    /// worker threads (default: all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run one suite on one type
    Check {
        /// jacobi, table1, classical, limit, equivalences, genfun, degeneration, reduced, g2, flatness
        suite: String,
        #[arg(long = "type")]
        cartan_type: String,
        #[command(flatten)]
        bounds: Bounds,
        #[command(flatten)]
        out: Output,
    },
    /// Build or re-verify the structure-constant cache
    Cache {
        #[arg(value_enum)]
        action: CacheAction,
        #[arg(long = "type")]
        cartan_type: String,
        /// cache directory (default: $TYANG_CACHE_DIR, else .tyang-cache)
        #[arg(long)]
        cache_dir: Option<PathBuf>,
    },
    /// Run every applicable suite on each listed type
    All {
        /// comma-separated type labels
        #[arg(long, value_delimiter = ',')]
        types: Vec<String>,
        #[command(flatten)]
        bounds: Bounds,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Args, Clone, Copy)]
struct Bounds {
    /// index bound (shift bound for degeneration)
    #[arg(long = "K")]
    k: Option<u32>,
    /// truncation degree of the current algebra
    #[arg(long = "D")]
    d: Option<u32>,
    /// loop-algebra window
    #[arg(long = "M")]
    m: Option<i32>,
    /// degree bound
    #[arg(long = "n")]
    n: Option<u32>,
    /// length bound
    #[arg(long = "L")]
    l: Option<usize>,
    /// slack
    #[arg(long = "S")]
    s: Option<usize>,
    /// generating-function window
    #[arg(long)]
    window: Option<u32>,
}

impl Bounds {
    fn params(self) -> SuiteParams {
        SuiteParams { k: self.k, d: self.d, m: self.m, n: self.n, l: self.l, s: self.s, window: self.window }
    }

    fn validate(self) -> Result<(), String> {
        let pos = [self.k.map(|x| x as i64), self.d.map(|x| x as i64), self.m.map(|x| x as i64), self.window.map(|x| x as i64)];
        if pos.iter().flatten().any(|&x| x <= 0) {
            return Err("bounds K, D, M and window must be positive".into());
        }
        Ok(())
    }
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// write the report here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, ValueEnum)]
enum CacheAction {
    Build,
    Verify,
}

fn exit_for(s: Status) -> ExitCode {
    ExitCode::from(match s {
        Status::Pass => 0,
        Status::Fail => 2,
        Status::Inconclusive => 3,
    })
}

fn usage(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    eprintln!("run `tyang --help` for usage");
    ExitCode::from(EXIT_USAGE)
}

fn cartan(label: &str) -> Result<CartanData, String> {
    build_cartan(label).map_err(|e| format!("invalid type '{label}': {e}"))
}

fn status_name(s: Status) -> Value {
    serde_json::to_value(s).expect("status serializes")
}

fn emit(out: &Output, payload: Value, timing: Value, table: String) -> Result<(), String> {
    let text = match out.format {
        Format::Json => {
            let doc = json!({ "schema": SCHEMA, "payload": payload, "timing": timing });
            serde_json::to_string_pretty(&doc).expect("report serializes") + "\n"
        }
        Format::Table => table,
    };
    match &out.output {
        Some(p) => std::fs::write(p, text).map_err(|e| format!("cannot write {}: {e}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn report_value(r: &VerificationReport) -> Value {
    serde_json::to_value(r).expect("report serializes")
}

fn cmd_check(suite: &str, label: &str, bounds: Bounds, out: &Output) -> ExitCode {
    if !SUITES.contains(&suite) {
        return usage(&format!("unknown suite '{suite}' (expected one of {})", SUITES.join(", ")));
    }
    if let Err(e) = bounds.validate() {
        return usage(&e);
    }
    let c = match cartan(label) {
        Ok(c) => c,
        Err(e) => return usage(&e),
    };
    let rep = match run_suite(suite, &c, &bounds.params()) {
        Ok(r) => r,
        Err(e) => return usage(&e),
    };
    let timing = json!({ "wall_time_ms": rep.wall_time_ms as u64 });
    if let Err(e) = emit(out, report_value(&rep), timing, rep.table()) {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_USAGE);
    }
    if out.output.is_some() {
        eprintln!("{suite} [{label}] {:?}", rep.status);
    }
    exit_for(rep.status)
}

fn cmd_all(types: &[String], bounds: Bounds, out: &Output) -> ExitCode {
    let types: Vec<&str> = types.iter().map(|s| s.trim()).filter(|s| !s.is_empty()).collect();
    if types.is_empty() {
        return usage("empty type list");
    }
    if let Err(e) = bounds.validate() {
        return usage(&e);
    }
    let mut cartans = Vec::new();
    for t in &types {
        match cartan(t) {
            Ok(c) => cartans.push(c),
            Err(e) => return usage(&e),
        }
    }
    // the index bound drives the realization-type suites only; the ideal
    // suites keep their own bounds
    let mut ideal_params = bounds.params();
    ideal_params.k = None;
    let mut reports = Vec::new();
    let mut timing = BTreeMap::new();
    let mut table = String::new();
    for c in &cartans {
        for suite in SUITES {
            if !applicable(suite, c) {
                continue;
            }
            let p = if matches!(*suite, "reduced" | "g2") { ideal_params } else { bounds.params() };
            let rep = run_suite(suite, c, &p).expect("known suite");
            eprintln!("{suite} [{}] {:?}", c.label, rep.status);
            timing.insert(format!("{}/{suite}", c.label), rep.wall_time_ms as u64);
            table.push_str(&rep.table());
            reports.push(rep);
        }
    }
    let status = aggregate(reports.iter().map(|r| r.status));
    table.push_str(&format!("== overall {status:?}\n"));
    let payload = json!({
        "types": types,
        "status": status_name(status),
        "reports": reports.iter().map(report_value).collect::<Vec<_>>(),
    });
    if let Err(e) = emit(out, payload, json!({ "wall_time_ms": timing }), table) {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_USAGE);
    }
    exit_for(status)
}

fn cache_dir(flag: Option<PathBuf>) -> PathBuf {
    flag.or_else(|| std::env::var_os("TYANG_CACHE_DIR").map(PathBuf::from)).unwrap_or_else(|| PathBuf::from(".tyang-cache"))
}

fn cache_file(dir: &Path, label: &str) -> PathBuf {
    dir.join(format!("{label}.json"))
}

fn cmd_cache(action: CacheAction, label: &str, dir: PathBuf) -> ExitCode {
    let c = match cartan(label) {
        Ok(c) => c,
        Err(e) => return usage(&e),
    };
    let path = cache_file(&dir, label);
    match action {
        CacheAction::Build => {
            let g = match build_lie_algebra(&c) {
                Ok(g) => g,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            if let Err(e) = g.verify_jacobi() {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            let text = serde_json::to_string_pretty(&g.to_cache()).expect("cache serializes");
            if let Err(e) = std::fs::create_dir_all(&dir).and_then(|_| std::fs::write(&path, text)) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(EXIT_USAGE);
            }
            println!("wrote {} (dim {}, Jacobi verified)", path.display(), g.dim());
            ExitCode::SUCCESS
        }
        CacheAction::Verify => {
            let text = match std::fs::read(&path) {
                Ok(b) => String::from_utf8_lossy(&b).into_owned(),
                Err(e) => {
                    eprintln!("error: cannot read {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            };
            match LieAlgebra::from_cache_json(&text) {
                Ok(g) => {
                    println!("{} ok (dim {}, digest and Jacobi verified)", path.display(), g.dim());
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("error: {}: {e}", path.display());
                    ExitCode::from(2)
                }
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(EXIT_USAGE);
        }
    };
    if let Some(j) = cli.jobs {
        if j == 0 {
            return usage("--jobs must be positive");
        }
        rayon::ThreadPoolBuilder::new().num_threads(j).build_global().expect("thread pool configured once");
    }
    match cli.cmd {
        Cmd::Check { suite, cartan_type, bounds, out } => cmd_check(&suite, &cartan_type, bounds, &out),
        Cmd::All { types, bounds, out } => cmd_all(&types, bounds, &out),
        Cmd::Cache { action, cartan_type, cache_dir: d } => cmd_cache(action, &cartan_type, cache_dir(d)),
    }
}
