//! The `nssets` command line.
//!
//! Verbs read their input set from a file or standard input and write results
//! to standard output (or `--out`), so they chain with shell pipes:
//!
//! ```text
//! nssets build collapse simplex:2 boundary:2 | nssets run sd --iterations 2 | nssets run desing | nssets run homology
//! ```
//!
//! Exit codes: 0 success, 1 a check failed, 2 usage or I/O error.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::accept::{self, AcceptOptions};
use crate::colimit::{collapse, is_abyss, is_eden, is_full, product_with_interval, pushout, standard_pair};
use crate::corpus::{generate, CorpusSpec};
use crate::desing::desingularize;
use crate::error::{Error, Result};
use crate::format::{poset_to_json, read_map, read_set, read_strom, read_subcomplex, set_to_json, write_strom};
use crate::homology::homology;
use crate::iso::are_isomorphic;
use crate::poset::{nerve, pc, FinPoset};
use crate::sset::{standard, FinSimpSet, StandardKind};
use crate::strom::{cobase_change_strom, strom_from_barratt_eden, strom_sd2, verify_strom};
use crate::subdivision::{barratt, sd_iter};

#[derive(Parser, Debug)]
#[command(name = "nssets", version, about = "Finite simplicial sets, subdivision and desingularization")]
pub struct Cli {
    /// Directory for intermediate and report files
    #[arg(long, global = true)]
    pub work_dir: Option<PathBuf>,
    /// Seed for corpus generation and the acceptance suite
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write step logs and progress to standard error
    #[arg(long, global = true)]
    pub log: bool,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Materialize a standard object: `simplex n`, `boundary n`, `horn n k`,
    /// `collapse simplex:n boundary:n|horn:n:k|simplex:n`, `nerve-chain n`
    Build {
        name: String,
        params: Vec<String>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Apply one verb
    Run {
        #[command(subcommand)]
        verb: Verb,
    },
    /// Write a seeded random corpus, one file per set
    Corpus {
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, default_value_t = 3)]
        max_dim: usize,
        #[arg(long, default_value_t = 12)]
        max_cells: usize,
        /// Output directory (defaults to the work directory, then `.`)
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Run the acceptance suite
    Accept {
        /// Skip the Δ[3]/∂Δ[3] unit check
        #[arg(long)]
        skip_slow: bool,
        /// Run only these criteria
        #[arg(long, value_delimiter = ',')]
        only: Vec<usize>,
    },
}

#[derive(Args, Debug, Clone)]
pub struct Io {
    /// Input set file; standard input when absent or `-`
    pub input: Option<PathBuf>,
    #[arg(short, long)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Verb {
    /// Kan subdivision, iterated
    Sd {
        #[arg(long, default_value_t = 1)]
        iterations: usize,
        #[command(flatten)]
        io: Io,
    },
    /// Barratt nerve `N(X^♯)`
    Barratt {
        #[command(flatten)]
        io: Io,
    },
    /// Desingularization `D X`
    Desing {
        #[command(flatten)]
        io: Io,
    },
    /// Pushout of two maps out of the same set
    Pushout {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Collapse a simplicial subset to a point
    Collapse {
        /// Subset file (it names its ambient set)
        subset: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// `X × Δ[1]`
    ProductInterval {
        #[command(flatten)]
        io: Io,
    },
    /// Poset reflection `pc X`
    Pc {
        #[command(flatten)]
        io: Io,
    },
    /// Integral homology
    Homology {
        #[command(flatten)]
        io: Io,
    },
    /// Property checks; exit code 1 when the property fails
    Check {
        #[command(subcommand)]
        what: CheckKind,
    },
    /// Strøm structures
    Strom {
        #[command(subcommand)]
        action: StromAction,
    },
}

#[derive(Subcommand, Debug)]
pub enum CheckKind {
    Nonsingular { input: Option<PathBuf> },
    Eden { subset: PathBuf },
    Abyss { subset: PathBuf },
    Full { subset: PathBuf },
    Iso { left: PathBuf, right: PathBuf },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StromMethod {
    /// the Barratt construction on an eden in a non-singular set
    Barratt,
    /// `Sd²` of an inclusion
    Sd2,
}

#[derive(Subcommand, Debug)]
pub enum StromAction {
    /// Build a structure for a subset and write it as a bundle directory
    Build {
        subset: PathBuf,
        #[arg(long, value_enum, default_value_t = StromMethod::Sd2)]
        method: StromMethod,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check the four conditions of a bundle
    Verify { bundle: PathBuf },
    /// Cobase change of a bundle along a map out of its source
    Cobase {
        bundle: PathBuf,
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

/// Outcome of a command: success or a failed check.
enum Status {
    Pass,
    Fail,
}

struct Context {
    work_dir: Option<PathBuf>,
    seed: u64,
    log: bool,
    format: OutputFormat,
}

impl Context {
    fn emit(&self, text: &str, out: Option<&Path>, name: &str) -> Result<()> {
        if let Some(dir) = &self.work_dir {
            fs::create_dir_all(dir)?;
            fs::write(dir.join(name), text)?;
        }
        match out {
            Some(p) => fs::write(p, text)?,
            None => io::stdout().write_all(text.as_bytes())?,
        }
        Ok(())
    }

    fn emit_set(&self, x: &FinSimpSet, out: Option<&Path>, name: &str) -> Result<()> {
        self.emit(&set_to_json(x), out, &format!("{name}.json"))
    }

    fn report(&self, name: &str, passed: bool, detail: &str) -> Result<Status> {
        let text = match self.format {
            OutputFormat::Text => format!("{name}: {}{}\n", if passed { "pass" } else { "fail" }, suffix(detail)),
            OutputFormat::Json => {
                let mut s = serde_json::to_string_pretty(&json!({"check": name, "passed": passed, "detail": detail}))?;
                s.push('\n');
                s
            }
        };
        self.emit(&text, None, &format!("check-{name}.txt"))?;
        Ok(if passed { Status::Pass } else { Status::Fail })
    }
}

fn suffix(detail: &str) -> String {
    if detail.is_empty() {
        String::new()
    } else {
        format!(" ({detail})")
    }
}

fn load(input: &Option<PathBuf>) -> Result<Arc<FinSimpSet>> {
    let text = match input {
        Some(p) if p.as_os_str() != "-" => fs::read_to_string(p)?,
        _ => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            s
        }
    };
    Ok(Arc::new(crate::format::set_from_json(&text)?))
}

fn number(params: &[String], k: usize, what: &str) -> Result<usize> {
    params
        .get(k)
        .ok_or_else(|| Error::Params(format!("missing {what}")))?
        .parse()
        .map_err(|e| Error::Params(format!("{what}: {e}")))
}

/// `simplex:n`, `boundary:n` or `horn:n:k`.
fn parse_standard(spec: &str) -> Result<(StandardKind, usize, Option<usize>)> {
    let parts: Vec<&str> = spec.split(':').collect();
    let num = |k: usize| -> Result<usize> {
        parts
            .get(k)
            .ok_or_else(|| Error::Params(format!("`{spec}` is incomplete")))?
            .parse()
            .map_err(|e| Error::Params(format!("`{spec}`: {e}")))
    };
    match parts[0] {
        "simplex" if parts.len() == 2 => Ok((StandardKind::Simplex, num(1)?, None)),
        "boundary" if parts.len() == 2 => Ok((StandardKind::Boundary, num(1)?, None)),
        "horn" if parts.len() == 3 => Ok((StandardKind::Horn, num(1)?, Some(num(2)?))),
        _ => Err(Error::Params(format!("`{spec}` is not simplex:n, boundary:n or horn:n:k"))),
    }
}

pub fn build(name: &str, params: &[String]) -> Result<FinSimpSet> {
    match name {
        "simplex" => standard(StandardKind::Simplex, number(params, 0, "n")?, None),
        "boundary" => standard(StandardKind::Boundary, number(params, 0, "n")?, None),
        "horn" => standard(StandardKind::Horn, number(params, 0, "n")?, Some(number(params, 1, "k")?)),
        "nerve-chain" => Ok(nerve(&FinPoset::chain(number(params, 0, "n")?))),
        "collapse" => {
            let [ambient, sub] = params else {
                return Err(Error::Params("collapse takes an ambient and a subset, e.g. simplex:2 boundary:2".into()));
            };
            let (kind, n, _) = parse_standard(ambient)?;
            if kind != StandardKind::Simplex {
                return Err(Error::Params("the ambient of a collapse is simplex:n".into()));
            }
            let (kind, m, k) = parse_standard(sub)?;
            if m != n {
                return Err(Error::Params(format!("subset {sub} does not live in Δ[{n}]")));
            }
            let (_, a) = standard_pair(kind, n, k)?;
            Ok((*collapse(&a)?.apex).clone())
        }
        _ => Err(Error::Params(format!("unknown object `{name}`"))),
    }
}

fn run_verb(ctx: &Context, verb: &Verb) -> Result<Status> {
    match verb {
        Verb::Sd { iterations, io } => {
            let x = sd_iter(&load(&io.input)?, *iterations)?;
            ctx.emit_set(&x, io.out.as_deref(), "sd")?;
        }
        Verb::Barratt { io } => ctx.emit_set(&barratt(&*load(&io.input)?), io.out.as_deref(), "barratt")?,
        Verb::Desing { io } => {
            let d = desingularize(&load(&io.input)?)?;
            if ctx.log {
                let mut err = io::stderr();
                match ctx.format {
                    OutputFormat::Text => {
                        for (n, s) in d.steps.iter().enumerate() {
                            writeln!(
                                err,
                                "step {n} round {}: simplex {}/{} vertices {}={} interval [{}..{}] -> counts {:?}",
                                s.round, s.dim, s.index, s.i, s.j, s.i, s.j, s.counts_after
                            )?;
                        }
                        writeln!(
                            err,
                            "{} steps in {} rounds",
                            d.steps.len(),
                            d.steps.last().map_or(0, |s| s.round + 1)
                        )?;
                    }
                    OutputFormat::Json => writeln!(err, "{}", serde_json::to_string_pretty(&d.steps)?)?,
                }
            }
            if let Some(dir) = &ctx.work_dir {
                fs::create_dir_all(dir)?;
                fs::write(dir.join("desing-log.json"), serde_json::to_string_pretty(&d.steps)? + "\n")?;
            }
            ctx.emit_set(&d.dx, io.out.as_deref(), "desing")?;
        }
        Verb::Pushout { left, right, out } => {
            let p = pushout(&read_map(left)?, &read_map(right)?)?;
            ctx.emit_set(&p.apex, out.as_deref(), "pushout")?;
        }
        Verb::Collapse { subset, out } => {
            let p = collapse(&read_subcomplex(subset)?)?;
            ctx.emit_set(&p.apex, out.as_deref(), "collapse")?;
        }
        Verb::ProductInterval { io } => {
            let p = product_with_interval(&load(&io.input)?);
            ctx.emit_set(&p.set, io.out.as_deref(), "product-interval")?;
        }
        Verb::Pc { io } => {
            let p = pc(&*load(&io.input)?);
            let text = match ctx.format {
                OutputFormat::Json => poset_to_json(&p, false),
                OutputFormat::Text => {
                    let edges: Vec<String> = p.hasse().iter().map(|(a, b)| format!("{a}<{b}")).collect();
                    format!("size {}\nhasse {}\n", p.size(), edges.join(" "))
                }
            };
            ctx.emit(&text, io.out.as_deref(), "pc.txt")?;
        }
        Verb::Homology { io } => {
            let h = homology(&*load(&io.input)?);
            let text = match ctx.format {
                OutputFormat::Text => h.to_string(),
                OutputFormat::Json => {
                    let groups: Vec<String> = (0..h.betti.len()).map(|n| h.group(n)).collect();
                    let torsion: Vec<Vec<String>> =
                        h.torsion.iter().map(|t| t.iter().map(|c| c.to_string()).collect()).collect();
                    serde_json::to_string_pretty(&json!({"betti": h.betti, "torsion": torsion, "groups": groups}))?
                        + "\n"
                }
            };
            ctx.emit(&text, io.out.as_deref(), "homology.txt")?;
        }
        Verb::Check { what } => return run_check(ctx, what),
        Verb::Strom { action } => return run_strom(ctx, action),
    }
    Ok(Status::Pass)
}

fn run_check(ctx: &Context, what: &CheckKind) -> Result<Status> {
    match what {
        CheckKind::Nonsingular { input } => {
            let x = load(input)?;
            let bad = x.non_embedded();
            let detail = if bad.is_empty() { String::new() } else { format!("{} non-embedded simplices", bad.len()) };
            ctx.report("nonsingular", bad.is_empty(), &detail)
        }
        CheckKind::Eden { subset } => ctx.report("eden", is_eden(&read_subcomplex(subset)?), ""),
        CheckKind::Abyss { subset } => ctx.report("abyss", is_abyss(&read_subcomplex(subset)?), ""),
        CheckKind::Full { subset } => ctx.report("full", is_full(&read_subcomplex(subset)?), ""),
        CheckKind::Iso { left, right } => {
            let (x, y) = (Arc::new(read_set(left)?), Arc::new(read_set(right)?));
            ctx.report("iso", are_isomorphic(&x, &y).is_some(), "")
        }
    }
}

fn run_strom(ctx: &Context, action: &StromAction) -> Result<Status> {
    match action {
        StromAction::Build { subset, method, out } => {
            let a = read_subcomplex(subset)?;
            let s = match method {
                StromMethod::Barratt => strom_from_barratt_eden(a.ambient(), &a)?,
                StromMethod::Sd2 => strom_sd2(a.ambient(), &a)?,
            };
            write_strom(out, &s)?;
            if ctx.log {
                eprintln!("wrote {} (W has counts {:?})", out.display(), s.w_set.counts());
            }
            Ok(Status::Pass)
        }
        StromAction::Verify { bundle } => {
            let rep = verify_strom(&read_strom(bundle)?)?;
            let text = match ctx.format {
                OutputFormat::Text => {
                    let names = ["eden inclusion", "abyss factorization", "retraction", "deformation"];
                    names
                        .iter()
                        .zip(rep.as_array())
                        .map(|(n, ok)| format!("{n}: {}\n", if ok { "pass" } else { "fail" }))
                        .collect()
                }
                OutputFormat::Json => serde_json::to_string_pretty(&rep)? + "\n",
            };
            ctx.emit(&text, None, "strom-verify.txt")?;
            Ok(if rep.passed() { Status::Pass } else { Status::Fail })
        }
        StromAction::Cobase { bundle, map, out } => {
            let s = read_strom(bundle)?;
            let f = read_map(map)?;
            let t = cobase_change_strom(&s, &f)?;
            write_strom(out, &t)?;
            Ok(Status::Pass)
        }
    }
}

fn run_corpus(ctx: &Context, spec: &CorpusSpec, out_dir: Option<&Path>) -> Result<Status> {
    let dir = out_dir.map(Path::to_path_buf).or_else(|| ctx.work_dir.clone()).unwrap_or_else(|| PathBuf::from("."));
    fs::create_dir_all(&dir)?;
    for (k, x) in generate(spec)?.iter().enumerate() {
        let path = dir.join(format!("corpus-{}-{k:04}.json", spec.seed));
        fs::write(&path, set_to_json(x))?;
        println!("{}", path.display());
    }
    Ok(Status::Pass)
}

fn run_accept(ctx: &Context, skip_slow: bool, only: &[usize]) -> Result<Status> {
    let opts = AcceptOptions { seed: ctx.seed, skip_slow };
    let ids: Vec<usize> = if only.is_empty() { (1..=accept::criterion_count()).collect() } else { only.to_vec() };
    let mut criteria = Vec::new();
    for id in ids {
        let c = accept::run_criterion(id, &opts)?;
        if ctx.log {
            eprintln!("{c}");
        }
        criteria.push(c);
    }
    criteria.sort_by_key(|c| c.id);
    let report = accept::AcceptReport { criteria };
    let json = serde_json::to_string_pretty(&report)? + "\n";
    if let Some(dir) = &ctx.work_dir {
        fs::create_dir_all(dir)?;
        fs::write(dir.join("accept.json"), &json)?;
    }
    match ctx.format {
        OutputFormat::Text => println!("{report}"),
        OutputFormat::Json => print!("{json}"),
    }
    Ok(if report.passed() { Status::Pass } else { Status::Fail })
}

fn dispatch(cli: &Cli) -> Result<Status> {
    let ctx = Context { work_dir: cli.work_dir.clone(), seed: cli.seed, log: cli.log, format: cli.format };
    match &cli.command {
        Command::Build { name, params, out } => {
            let x = build(name, params)?;
            ctx.emit_set(&x, out.as_deref(), &format!("build-{name}"))?;
            Ok(Status::Pass)
        }
        Command::Run { verb } => run_verb(&ctx, verb),
        Command::Corpus { count, max_dim, max_cells, out_dir } => {
            let spec = CorpusSpec { seed: cli.seed, max_dim: *max_dim, max_cells: *max_cells, count: *count };
            run_corpus(&ctx, &spec, out_dir.as_deref())
        }
        Command::Accept { skip_slow, only } => run_accept(&ctx, *skip_slow, only),
    }
}

/// Runs the command line on `args` (including the program name) and returns
/// the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match dispatch(&cli) {
        Ok(Status::Pass) => 0,
        Ok(Status::Fail) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

pub fn main() -> i32 {
    run(std::env::args_os())
}
