use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use eprlab::construct::{border_duplicate, construct, Construction};
use eprlab::equimodular::{check_ends_naa, condition_battery, conjecture_verdict, dichotomy_check, equimodular_report};
use eprlab::graph::graph_facts;
use eprlab::linalg::{inverse, kronecker};
use eprlab::search::{self, Mode, PropertySet, Restriction, ScanConfig, Shard, MAX_ORDER};
use eprlab::{epr, epr2, EprPattern, EprSequence, Error, IntMatrix};

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser)]
#[command(name = "eprlab", version, about = "Exact epr-sequences, equimodular inverses and exhaustive scans")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the epr-sequence of a symmetric integer matrix.
    Epr { file: PathBuf },
    /// Print the epr-sequence over GF(2) of a symmetric 0-1 matrix.
    Epr2 { file: PathBuf },
    /// Print the exact rational inverse.
    Inverse { file: PathBuf },
    /// Print a JSON bundle of everything known about the matrix.
    Analyze { file: PathBuf },
    /// Exhaustively scan symmetric 0-1 matrices of one order.
    Scan(ScanArgs),
    /// Exit 0 if the sequence matches the pattern, 1 otherwise.
    Match {
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        seq: String,
    },
    /// Write a named matrix.
    Generate(GenerateArgs),
    /// Print graph facts of a zero-diagonal symmetric matrix, by search and from its epr-sequence.
    Graph { file: PathBuf },
}

#[derive(Args)]
struct ScanArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, value_parser = parse_mode)]
    mode: Mode,
    #[arg(long, default_value = "0/1", value_parser = parse_shard)]
    shard: Shard,
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    #[arg(long, requires = "checkpoint")]
    resume: bool,
    /// Matrices between checkpoint writes.
    #[arg(long, default_value_t = 1 << 20)]
    checkpoint_every: u64,
    /// Stop each worker after this many matrices, leaving a checkpoint to resume from.
    #[arg(long)]
    stop_after: Option<u64>,
    #[arg(long, default_value_t = 1)]
    jobs: u64,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Comma-separated subset of forbidden,dichotomy,epr2,battery,graph, or `all`.
    #[arg(long, default_value = "all", value_parser = parse_properties)]
    properties: PropertySet,
    #[arg(long, default_value = "all", value_parser = parse_restriction)]
    restriction: Restriction,
    /// Group NAA-ending matrices by permutation-similarity class.
    #[arg(long)]
    canonical: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Cycle,
    Ones,
    Identity,
    #[value(name = "jn-2i")]
    Jn2i,
    Zero,
    Complete,
    Kron,
    Border,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    #[arg(long)]
    n: Option<usize>,
    /// Left factor for `kron`.
    #[arg(long)]
    left: Option<PathBuf>,
    /// Right factor for `kron`.
    #[arg(long)]
    right: Option<PathBuf>,
    /// Matrix to border for `border`.
    #[arg(long)]
    from: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_mode(s: &str) -> Result<Mode, String> {
    s.parse()
}

fn parse_shard(s: &str) -> Result<Shard, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_properties(s: &str) -> Result<PropertySet, String> {
    s.parse()
}

fn parse_restriction(s: &str) -> Result<Restriction, String> {
    s.parse()
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self { code: 2, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } | Error::Io(_) | Error::Json(_) | Error::Checkpoint(_) => 3,
            Error::PatternSyntax { .. } => 2,
            _ => 4,
        };
        Self { code, message: e.to_string() }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Error::Io(e).into()
    }
}

fn read_input(path: &Path) -> Result<String, Failure> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Failure { code: 3, message: format!("{}: {e}", path.display()) })
    }
}

fn read_matrix(path: &Path) -> Result<IntMatrix, Failure> {
    Ok(read_input(path)?.parse::<IntMatrix>()?)
}

fn write_output(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Failure { code: 3, message: format!("{}: {e}", p.display()) }),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON value serializes");
    s.push('\n');
    s
}

/// The order cap, possibly lowered through `EPRLAB_MAX_N`.
fn max_order() -> Result<usize, Failure> {
    match std::env::var("EPRLAB_MAX_N") {
        Err(_) => Ok(MAX_ORDER),
        Ok(v) => {
            let cap: usize =
                v.trim().parse().map_err(|_| Failure::usage(format!("EPRLAB_MAX_N must be a number, found `{v}`")))?;
            Ok(cap.min(MAX_ORDER))
        }
    }
}

fn optional<T: serde::Serialize>(r: eprlab::Result<T>) -> Value {
    r.ok().map_or(Value::Null, |v| serde_json::to_value(v).expect("serializes"))
}

fn analyze(m: &IntMatrix) -> Value {
    let symmetric = m.is_symmetric();
    let seq = epr(m).ok();
    let graph = match &seq {
        Some(s) if m.has_zero_diagonal() => optional(graph_facts(m, s)),
        _ => Value::Null,
    };
    json!({
        "version": VERSION,
        "n": m.order(),
        "symmetric": symmetric,
        "zero_one": m.is_zero_one(),
        "epr": seq.as_ref().map(EprSequence::word),
        "epr2": epr2(m).ok().map(|s| s.word()),
        "equimodular": equimodular_report(m),
        "ends_naa": optional(check_ends_naa(m)),
        "battery": optional(condition_battery(m)),
        "conjecture": optional(conjecture_verdict(m)),
        "dichotomy": optional(dichotomy_check(m)),
        "graph": graph,
    })
}

fn generate(args: &GenerateArgs) -> Result<IntMatrix, Failure> {
    let need_n = || args.n.ok_or_else(|| Failure::usage("--n is required for this kind"));
    let basic = |c: Construction| -> Result<IntMatrix, Failure> { Ok(construct(c, need_n()?)?) };
    match args.kind {
        Kind::Cycle => basic(Construction::Cycle),
        Kind::Ones => basic(Construction::AllOnes),
        Kind::Identity => basic(Construction::Identity),
        Kind::Jn2i => basic(Construction::OnesMinusTwoIdentity),
        Kind::Zero => basic(Construction::Zero),
        Kind::Complete => basic(Construction::Complete),
        Kind::Kron => {
            let (Some(l), Some(r)) = (&args.left, &args.right) else {
                return Err(Failure::usage("kron needs --left and --right"));
            };
            Ok(kronecker(&read_matrix(l)?, &read_matrix(r)?))
        }
        Kind::Border => {
            let from = args.from.as_ref().ok_or_else(|| Failure::usage("border needs --from"))?;
            Ok(border_duplicate(&read_matrix(from)?)?)
        }
    }
}

fn scan(args: &ScanArgs) -> Result<String, Failure> {
    let cap = max_order()?;
    if args.n > cap {
        return Err(Error::OrderOutOfRange { n: args.n, min: 1, max: cap }.into());
    }
    let mut cfg = ScanConfig::new(args.n, args.mode);
    cfg.shard = args.shard;
    cfg.jobs = args.jobs;
    cfg.checkpoint = args.checkpoint.clone();
    cfg.checkpoint_every = args.checkpoint_every;
    cfg.resume = args.resume;
    cfg.stop_after = args.stop_after;
    cfg.properties = args.properties.clone();
    cfg.restriction = args.restriction;
    cfg.canonical = args.canonical;
    let report = search::scan(&cfg)?;
    let mut text = report.to_json();
    text.push('\n');
    Ok(text)
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Epr { file } => {
            let s = epr(&read_matrix(&file)?)?;
            write_output(None, &format!("{}\n", s.word()))?;
        }
        Command::Epr2 { file } => {
            let s = epr2(&read_matrix(&file)?)?;
            write_output(None, &format!("{}\n", s.word()))?;
        }
        Command::Inverse { file } => {
            let inv = inverse(&read_matrix(&file)?)?;
            write_output(None, &inv.to_string())?;
        }
        Command::Analyze { file } => {
            let m = read_matrix(&file)?;
            write_output(None, &pretty(&analyze(&m)))?;
        }
        Command::Scan(args) => {
            let text = scan(&args)?;
            write_output(args.out.as_deref(), &text)?;
        }
        Command::Match { pattern, seq } => {
            let p = EprPattern::parse(&pattern)?;
            let s: EprSequence = seq.parse().map_err(|e: Error| Failure::usage(format!("bad sequence: {e}")))?;
            let hit = p.matches(&s);
            write_output(None, if hit { "true\n" } else { "false\n" })?;
            return Ok(if hit { 0 } else { 1 });
        }
        Command::Generate(args) => {
            let m = generate(&args)?;
            write_output(args.out.as_deref(), &m.to_text())?;
        }
        Command::Graph { file } => {
            let m = read_matrix(&file)?;
            let s = epr(&m)?;
            let facts = graph_facts(&m, &s)?;
            let mut v = serde_json::to_value(facts).expect("serializes");
            v["version"] = json!(VERSION);
            v["epr"] = json!(s.word());
            write_output(None, &pretty(&v))?;
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("eprlab: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
