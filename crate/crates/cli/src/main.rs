//! `lowdeg`: exact bounds for low-degree points on curves on surfaces.

mod render;

use std::fs::File;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lowdeg_core::cone::ConeJson;
use lowdeg_core::destab::contradiction_certificate;
use lowdeg_core::exc::exc_set;
use lowdeg_core::invariants::certify;
use lowdeg_core::model::GenericModel;
use lowdeg_core::selftest::{self, Hooks};
use lowdeg_core::sheaf::sheaf_report;
use lowdeg_core::{
    CurveSpec, DestabilizerQuery, DivisorClass, IntersectionLattice, RationalCone, SurfaceModel,
    DEFAULT_MAX_RANK,
};
use num_bigint::BigInt;
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(
    name = "lowdeg",
    version,
    about = "Exact gonality and degree-of-irrationality bounds for curves on surfaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Enumerate the exceptional classes H of a cone with 9 H.P > H.H
    Exc(ExcArgs),
    /// Search for destabilizing classes of the kernel sheaf of a pencil
    Destab(DestabArgs),
    /// Chern character, discriminant and slope of the kernel sheaf
    Sheaf(SheafArgs),
    /// Certified gonality and a.irr intervals for a curve class
    Invariants(InvariantsArgs),
    /// Run the brute-force oracle suite
    Selftest(SelftestArgs),
}

#[derive(Debug, Args)]
struct Output {
    /// Write JSON instead of a table, to PATH or to stdout when PATH is omitted
    #[arg(long, value_name = "PATH", num_args = 0..=1, default_missing_value = "-")]
    json: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ExcArgs {
    /// Built-in model supplying the lattice (and, on rank-1 models, the cone and P)
    #[arg(long)]
    model: Option<String>,
    /// Lattice JSON file {"rank", "gram", "canonical"}
    #[arg(long)]
    lattice: Option<PathBuf>,
    /// Cone JSON file {"rays", "facets"}
    #[arg(long)]
    cone: Option<PathBuf>,
    /// Level form P, e.g. "[1,1]"
    #[arg(long)]
    p: Option<String>,
    #[command(flatten)]
    out: Output,
}

#[derive(Debug, Args)]
struct DestabArgs {
    /// p2, p1p1, exp1, rank1:<d>, ci:<d1>,<d2>,... or generic
    #[arg(long)]
    model: String,
    /// Lattice JSON file; required for the generic model
    #[arg(long)]
    lattice: Option<PathBuf>,
    /// Curve class C, e.g. "[5,4]"
    #[arg(long)]
    curve: String,
    /// Pencil degree
    #[arg(long)]
    e: String,
    /// Search cone JSON file; defaults to the model's effective cone
    #[arg(long)]
    effective_cone: Option<PathBuf>,
    #[command(flatten)]
    out: Output,
}

#[derive(Debug, Args)]
struct SheafArgs {
    #[arg(long, conflicts_with = "model", required_unless_present = "model")]
    lattice: Option<PathBuf>,
    #[arg(long)]
    model: Option<String>,
    #[arg(long)]
    curve: String,
    #[arg(long)]
    e: String,
    #[command(flatten)]
    out: Output,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum YesNo {
    Yes,
    No,
}

impl YesNo {
    fn as_bool(self) -> bool {
        matches!(self, YesNo::Yes)
    }
}

#[derive(Debug, Args)]
struct InvariantsArgs {
    #[arg(long)]
    model: String,
    #[arg(long)]
    class: String,
    /// Whether the curve has a rational point (plane curves); unknown when omitted
    #[arg(long, value_enum)]
    rational_point: Option<YesNo>,
    /// Whether the curve is bielliptic (genus-4 curves on P1 x P1); unknown when omitted
    #[arg(long, value_enum)]
    bielliptic: Option<YesNo>,
    #[command(flatten)]
    out: Output,
}

#[derive(Debug, Args)]
struct SelftestArgs {
    /// Negative control: perturb the built-in grams
    #[arg(long)]
    perturb_gram: bool,
    /// Negative control: lower the exceptional-set level bound by N
    #[arg(long, value_name = "N", default_value_t = 0)]
    level_cut: u32,
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Internal(String),
    Selftest,
}

impl From<lowdeg_core::Error> for Failure {
    fn from(e: lowdeg_core::Error) -> Self {
        if e.is_input_error() {
            Failure::Input(e.to_string())
        } else {
            Failure::Internal(e.to_string())
        }
    }
}

type Run<T = ()> = Result<T, Failure>;

fn input(msg: impl Into<String>) -> Failure {
    Failure::Input(msg.into())
}

fn max_rank() -> Run<usize> {
    match std::env::var("LOWDEG_MAX_RANK") {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&r| r > 0)
            .ok_or_else(|| {
                input(format!(
                    "LOWDEG_MAX_RANK must be a positive integer, got {v:?}"
                ))
            }),
        Err(_) => Ok(DEFAULT_MAX_RANK),
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path, what: &str) -> Run<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| input(format!("cannot read {what} {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| input(format!("malformed {what} {}: {e}", path.display())))
}

fn read_lattice(path: &Path, max_rank: usize) -> Run<Arc<IntersectionLattice>> {
    let lattice: IntersectionLattice = read_json(path, "lattice")?;
    check_rank(&lattice, max_rank)?;
    Ok(Arc::new(lattice))
}

fn check_rank(lattice: &IntersectionLattice, max_rank: usize) -> Run {
    if lattice.rank() > max_rank {
        return Err(input(format!(
            "unsupported rank {} (LOWDEG_MAX_RANK is {max_rank})",
            lattice.rank()
        )));
    }
    Ok(())
}

fn read_cone(path: &Path, lattice: Arc<IntersectionLattice>, max_rank: usize) -> Run<RationalCone> {
    let json: ConeJson = read_json(path, "cone")?;
    Ok(RationalCone::from_json(lattice, json, max_rank)?)
}

fn parse_class(s: &str, flag: &str) -> Run<DivisorClass> {
    DivisorClass::parse(s).map_err(|e| input(format!("--{flag}: {e}")))
}

fn parse_int(s: &str, flag: &str) -> Run<BigInt> {
    s.trim()
        .parse::<BigInt>()
        .map_err(|_| input(format!("--{flag}: expected an integer, got {s:?}")))
}

fn parse_model(s: &str) -> Run<SurfaceModel> {
    Ok(s.parse::<SurfaceModel>()?)
}

/// Where the result goes. File targets are created before any computation.
enum Sink {
    Table,
    JsonStdout,
    JsonFile(File, PathBuf),
}

impl Sink {
    fn open(out: &Output) -> Run<Sink> {
        match &out.json {
            None => Ok(Sink::Table),
            Some(p) if p.as_os_str() == "-" => Ok(Sink::JsonStdout),
            Some(p) => File::create(p)
                .map(|f| Sink::JsonFile(f, p.clone()))
                .map_err(|e| input(format!("cannot write {}: {e}", p.display()))),
        }
    }

    fn emit<T: Serialize>(self, value: &T, table: impl FnOnce() -> String) -> Run {
        let text = match &self {
            Sink::Table => table(),
            _ => {
                let mut s = serde_json::to_string_pretty(value)
                    .map_err(|e| Failure::Internal(e.to_string()))?;
                s.push('\n');
                s
            }
        };
        match self {
            Sink::JsonFile(mut f, path) => f
                .write_all(text.as_bytes())
                .map_err(|e| input(format!("cannot write {}: {e}", path.display()))),
            _ => {
                let mut stdout = io::stdout().lock();
                stdout
                    .write_all(text.as_bytes())
                    .map_err(|e| Failure::Internal(e.to_string()))
            }
        }
    }
}

fn run_exc(args: ExcArgs) -> Run {
    let max_rank = max_rank()?;
    let model = args.model.as_deref().map(parse_model).transpose()?;
    let lattice = match (&model, &args.lattice) {
        (Some(_), Some(_)) => return Err(input("give either --model or --lattice, not both")),
        (Some(m), None) => m.lattice(),
        (None, Some(path)) => read_lattice(path, max_rank)?,
        (None, None) => return Err(input("exc needs --model or --lattice")),
    };
    check_rank(&lattice, max_rank)?;
    let rank1 = lattice.rank() == 1;
    let cone = match (&args.cone, &model) {
        (Some(path), _) => read_cone(path, lattice.clone(), max_rank)?,
        (None, Some(_)) if rank1 => {
            RationalCone::from_rays(lattice.clone(), vec![DivisorClass::from_i64s(&[1])])?
        }
        (None, _) => {
            return Err(input(
                "--cone is required unless the model has Picard rank one",
            ))
        }
    };
    let p = match (&args.p, &model) {
        (Some(s), _) => parse_class(s, "p")?,
        (None, Some(m)) if rank1 => m
            .polarization()
            .expect("built-in models have a polarization"),
        (None, _) => {
            return Err(input(
                "--p is required unless the model has Picard rank one",
            ))
        }
    };
    let sink = Sink::open(&args.out)?;
    let report = exc_set(&cone, &p)?;
    sink.emit(&report, || render::exc(&report, &p))
}

fn run_destab(args: DestabArgs) -> Run {
    let max_rank = max_rank()?;
    let model = if args.model.trim() == "generic" {
        let path = args
            .lattice
            .as_ref()
            .ok_or_else(|| input("--model generic needs --lattice"))?;
        let lattice = read_lattice(path, max_rank)?;
        let path = args
            .effective_cone
            .as_ref()
            .ok_or_else(|| input("--model generic needs --effective-cone"))?;
        let cone = read_cone(path, lattice.clone(), max_rank)?;
        SurfaceModel::Generic(GenericModel {
            lattice,
            ample_cone: None,
            effective_cone: Some(cone),
            very_ample: None,
            irregularity_zero: false,
        })
    } else {
        let model = parse_model(&args.model)?;
        if let Some(path) = &args.lattice {
            let given: IntersectionLattice = read_json(path, "lattice")?;
            if &given != model.lattice().as_ref() {
                return Err(input(format!(
                    "--lattice does not match the built-in lattice of {model}"
                )));
            }
        }
        model
    };
    // the generic model already carries the cone as its effective cone
    let search_cone = match (&args.effective_cone, &model) {
        (Some(path), m) if m.is_builtin() => Some(read_cone(path, m.lattice(), max_rank)?),
        _ => None,
    };
    let curve = parse_class(&args.curve, "curve")?;
    let e = parse_int(&args.e, "e")?;
    let sink = Sink::open(&args.out)?;
    let q = DestabilizerQuery::new(model, curve, e, search_cone)?;
    let cert = contradiction_certificate(&q)?;
    sink.emit(&cert, || render::destab(&cert))
}

fn run_sheaf(args: SheafArgs) -> Run {
    let max_rank = max_rank()?;
    let lattice = match (&args.lattice, &args.model) {
        (Some(path), _) => read_lattice(path, max_rank)?,
        (None, Some(m)) => parse_model(m)?.lattice(),
        (None, None) => unreachable!("clap requires one of --lattice, --model"),
    };
    let c = parse_class(&args.curve, "curve")?;
    let e = parse_int(&args.e, "e")?;
    let sink = Sink::open(&args.out)?;
    let report = sheaf_report(&lattice, &c, &e)?;
    sink.emit(&report, || render::sheaf(&report, &c, &e))
}

fn run_invariants(args: InvariantsArgs) -> Run {
    let model = parse_model(&args.model)?;
    let class = parse_class(&args.class, "class")?;
    let spec = CurveSpec::new(
        model,
        class,
        args.rational_point.map(YesNo::as_bool),
        args.bielliptic.map(YesNo::as_bool),
    )?;
    let sink = Sink::open(&args.out)?;
    let cert = certify(&spec)?;
    sink.emit(&cert, || render::certificate(&cert))
}

fn run_selftest(args: SelftestArgs) -> Run {
    let report = selftest::run(&Hooks {
        perturb_gram: args.perturb_gram,
        level_cut: args.level_cut,
    });
    println!("{report}");
    if report.all_passed() {
        Ok(())
    } else {
        Err(Failure::Selftest)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Exc(a) => run_exc(a),
        Command::Destab(a) => run_destab(a),
        Command::Sheaf(a) => run_sheaf(a),
        Command::Invariants(a) => run_invariants(a),
        Command::Selftest(a) => run_selftest(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Selftest) => {
            eprintln!("selftest failed");
            ExitCode::from(1)
        }
    }
}
