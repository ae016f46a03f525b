use std::fmt::Write as _;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use gammafree::callan::{CallanPair, CallanSequence};
use gammafree::counting::{bessel_tree_numbers, count_naf, egf_gamma_free, omega_numbers, poly_bernoulli};
use gammafree::enumerate::{self, GammaMode, PointForestKind};
use gammafree::verify::{self, Report};
use gammafree::{BinaryMatrix, Exec, LabeledForest, PermPair};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "gammafree", version, about = "Γ-free matrices, Callan sequences, forests and permutation pairs")]
struct Cli {
    /// Output style.
    #[arg(long, value_enum, global = true, default_value_t = Format::Table)]
    format: Format,
    /// Run sweeps on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Records,
}

#[derive(Subcommand)]
enum Command {
    /// Exact counts.
    #[command(subcommand)]
    Count(CountCmd),
    /// Truncated generating functions.
    #[command(subcommand)]
    Series(SeriesCmd),
    /// Exhaustive enumeration.
    Enumerate(EnumerateArgs),
    /// Apply one of the bijections to an object read from a file or stdin.
    Convert(ConvertArgs),
    /// Exhaustive verification reports.
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Args)]
struct Size {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
}

#[derive(Args)]
struct MaxSize {
    #[arg(long)]
    max_n: usize,
    #[arg(long)]
    max_k: usize,
}

#[derive(Subcommand)]
enum CountCmd {
    /// B_n^(-k), the number of Γ-free n x k matrices.
    PolyBernoulli(Size),
    /// Non-ambiguous forests with an n x k matrix.
    Naf(Size),
}

#[derive(Subcommand)]
enum SeriesCmd {
    /// n! k! [x^n y^k] of the Γ-free generating function.
    GammaFree {
        #[command(flatten)]
        size: MaxSize,
        /// Show the polynomial in the markers t (top rows), a (empty rows), b (empty columns).
        #[arg(long)]
        markers: bool,
    },
    /// Pairs of permutations with no common rise, from 1/J0(2 sqrt x).
    Omega {
        #[arg(long)]
        max_n: usize,
    },
    /// Complete non-ambiguous trees, from -ln J0(2 sqrt x).
    Bessel {
        #[arg(long)]
        max_n: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    GammaFree,
    Callan,
    IncreasingForests,
    PointForests,
    CompleteNaf,
    NoCommonRise,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    ProperlyLabeled,
    LeftmostValid,
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(value_enum)]
    family: Family,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    /// Permutation for point-forests, e.g. 3,1,2.
    #[arg(long, value_delimiter = ',')]
    eta: Option<Vec<usize>>,
    #[arg(long, value_enum)]
    kind: Option<Kind>,
    /// Filter all 2^(nk) matrices instead of backtracking.
    #[arg(long)]
    naive: bool,
    /// Print only the number of objects.
    #[arg(long)]
    count_only: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Direction {
    MatrixToCallan,
    CallanToMatrix,
    PermToForest,
    ForestToPerm,
    MatrixToPermpair,
    PermpairToMatrix,
}

#[derive(Args)]
struct ConvertArgs {
    #[arg(value_enum)]
    direction: Direction,
    /// Read input from this file instead of stdin.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Dimensions for callan-to-matrix when the input is a bare list of pairs.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
}

#[derive(Subcommand)]
enum VerifyCmd {
    Phi(Size),
    Pi {
        #[arg(long)]
        n: usize,
    },
    Psi {
        #[arg(long)]
        n: usize,
    },
    Theorem5 {
        #[arg(long)]
        n: usize,
    },
    Table1(MaxSize),
    Egf(MaxSize),
}

enum Failure {
    Usage(String),
    Input(anyhow::Error),
    Verification(Box<Report>),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Input(e)
    }
}

impl From<gammafree::Error> for Failure {
    fn from(e: gammafree::Error) -> Self {
        Failure::Input(e.into())
    }
}

type Outcome = Result<String, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => return report_failure(Failure::Usage(e.to_string())),
    };
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => report_failure(f),
    }
}

fn report_failure(f: Failure) -> ExitCode {
    let (code, record) = match f {
        Failure::Usage(msg) => (2, json!({"error": "usage", "message": msg.trim_end()})),
        Failure::Input(e) => (2, json!({"error": "input", "message": format!("{e:#}")})),
        Failure::Verification(report) => {
            print!("{report}");
            (
                1,
                json!({"error": "verification", "target": report.target, "counterexample": report.counterexample}),
            )
        }
    };
    eprintln!("{record}");
    ExitCode::from(code)
}

fn run(cli: &Cli) -> Outcome {
    let exec = if cli.sequential { Exec::Sequential } else { Exec::default() };
    match &cli.command {
        Command::Count(c) => count(c, cli.format),
        Command::Series(s) => series(s, cli.format),
        Command::Enumerate(e) => enumerate(e, cli.format, exec),
        Command::Convert(c) => convert(c, cli.format),
        Command::Verify(v) => verify(v, cli.format, exec),
    }
}

fn records(values: impl IntoIterator<Item = Value>) -> String {
    values.into_iter().map(|v| format!("{v}\n")).collect()
}

fn count(c: &CountCmd, format: Format) -> Outcome {
    let (family, s, value) = match c {
        CountCmd::PolyBernoulli(s) => ("poly-bernoulli", s, poly_bernoulli(s.n, s.k)),
        CountCmd::Naf(s) => ("naf", s, count_naf(s.n, s.k)),
    };
    Ok(match format {
        Format::Table => format!("{value}\n"),
        Format::Records => records([json!({"family": family, "n": s.n, "k": s.k, "value": value.to_string()})]),
    })
}

/// Right-aligned grid with a header row of column indices.
fn grid(rows: &[Vec<String>], corner: &str) -> String {
    let width = rows.iter().flatten().map(String::len).max().unwrap_or(1).max(corner.len());
    let cols = rows.first().map_or(0, Vec::len);
    let mut out = format!("{corner:>width$}");
    for k in 0..cols {
        write!(out, " {k:>width$}").unwrap();
    }
    out.push('\n');
    for (n, row) in rows.iter().enumerate() {
        write!(out, "{n:>width$}").unwrap();
        for cell in row {
            write!(out, " {cell:>width$}").unwrap();
        }
        out.push('\n');
    }
    out
}

fn series(s: &SeriesCmd, format: Format) -> Outcome {
    match s {
        SeriesCmd::GammaFree { size, markers } => {
            if size.max_n > verify::TABLE_LIMIT || size.max_k > verify::TABLE_LIMIT {
                return Err(Failure::Input(anyhow!(
                    "max-n and max-k must be at most {}",
                    verify::TABLE_LIMIT
                )));
            }
            let table = egf_gamma_free(size.max_n, size.max_k);
            let cells = (0..=size.max_n).flat_map(|n| (0..=size.max_k).map(move |k| (n, k)));
            Ok(match (format, markers) {
                (Format::Records, _) => records(cells.map(|(n, k)| {
                    let mut rec = json!({"n": n, "k": k, "total": table.total(n, k).to_string()});
                    if *markers {
                        rec["terms"] = table
                            .entry(n, k)
                            .terms()
                            .iter()
                            .map(|(m, c)| json!({"t": m.t, "a": m.a, "b": m.b, "coefficient": c.to_string()}))
                            .collect();
                    }
                    rec
                })),
                (Format::Table, true) => cells
                    .map(|(n, k)| {
                        let poly: Vec<String> = table
                            .entry(n, k)
                            .terms()
                            .iter()
                            .rev()
                            .map(|(m, c)| if *m == gammafree::counting::Monomial::ONE { c.to_string() } else { format!("{c} {m}") })
                            .collect();
                        format!("{n} {k}: {}\n", poly.join(" + "))
                    })
                    .collect(),
                (Format::Table, false) => {
                    let rows: Vec<Vec<String>> = (0..=size.max_n)
                        .map(|n| (0..=size.max_k).map(|k| table.total(n, k).to_string()).collect())
                        .collect();
                    grid(&rows, "n\\k")
                }
            })
        }
        SeriesCmd::Omega { max_n } | SeriesCmd::Bessel { max_n } => {
            let (name, values) = match s {
                SeriesCmd::Omega { .. } => ("omega", omega_numbers(*max_n)),
                _ => ("bessel", bessel_tree_numbers(*max_n)),
            };
            Ok(match format {
                Format::Table => values.iter().enumerate().map(|(n, v)| format!("{n} {v}\n")).collect(),
                Format::Records => records(
                    values
                        .iter()
                        .enumerate()
                        .map(|(n, v)| json!({"series": name, "n": n, "value": v.to_string()})),
                ),
            })
        }
    }
}

fn require(value: Option<usize>, flag: &str) -> Result<usize, Failure> {
    value.ok_or_else(|| Failure::Usage(format!("--{flag} is required for this family")))
}

fn enumerate(e: &EnumerateArgs, format: Format, exec: Exec) -> Outcome {
    let objects: Vec<(String, Value)> = match e.family {
        Family::GammaFree => {
            let mode = if e.naive { GammaMode::Naive } else { GammaMode::Pruned };
            let (n, k) = (require(e.n, "n")?, require(e.k, "k")?);
            if e.count_only && !e.naive {
                return Ok(count_line(enumerate::count_gamma_free(n, k, exec)? as usize, format));
            }
            enumerate::enumerate_gamma_free_with(n, k, mode, exec)?
                .iter()
                .map(|m| (m.render(), json!(m.render())))
                .collect()
        }
        Family::Callan => enumerate::enumerate_callan(require(e.n, "n")?, require(e.k, "k")?)?
            .iter()
            .map(|s| (format!("{}\n", s.to_json()), serde_json::to_value(s).expect("serializable")))
            .collect(),
        Family::IncreasingForests => {
            let labels: Vec<usize> = (1..=require(e.n, "n")?).collect();
            enumerate::enumerate_increasing_forests(&labels)?
                .iter()
                .map(forest_entry)
                .collect()
        }
        Family::PointForests => {
            let eta = e.eta.as_ref().ok_or_else(|| Failure::Usage("--eta is required".into()))?;
            let kind = match e.kind.ok_or_else(|| Failure::Usage("--kind is required".into()))? {
                Kind::ProperlyLabeled => PointForestKind::ProperlyLabeled,
                Kind::LeftmostValid => PointForestKind::LeftmostValid,
            };
            enumerate::enumerate_point_forests(eta, kind)?
                .iter()
                .map(forest_entry)
                .collect()
        }
        Family::CompleteNaf => enumerate::enumerate_complete_naf(require(e.n, "n")?)?
            .iter()
            .map(|m| (m.render(), json!(m.render())))
            .collect(),
        Family::NoCommonRise => enumerate::enumerate_no_common_rise(require(e.n, "n")?)?
            .iter()
            .map(|p| (p.render(), json!({"alpha": p.alpha(), "beta": p.beta()})))
            .collect(),
    };
    if e.count_only {
        return Ok(count_line(objects.len(), format));
    }
    Ok(match format {
        Format::Table => objects.into_iter().map(|(text, _)| text).collect::<Vec<_>>().join("\n"),
        Format::Records => records(objects.into_iter().map(|(_, v)| v)),
    })
}

fn forest_entry<L>(f: &LabeledForest<L>) -> (String, Value)
where
    L: Ord + Clone + std::fmt::Debug + serde::Serialize,
{
    let value = serde_json::to_value(f).expect("serializable");
    (format!("{value}\n"), value)
}

fn count_line(count: usize, format: Format) -> String {
    match format {
        Format::Table => format!("{count}\n"),
        Format::Records => records([json!({"count": count})]),
    }
}

fn read_input(file: Option<&PathBuf>) -> anyhow::Result<String> {
    match file {
        Some(path) => std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display())),
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).context("reading stdin")?;
            Ok(s)
        }
    }
}

fn parse_callan(text: &str, n: Option<usize>, k: Option<usize>) -> anyhow::Result<CallanSequence> {
    let value: Value = serde_json::from_str(text).context("callan sequence is not valid JSON")?;
    if value.is_array() {
        let (Some(n), Some(k)) = (n, k) else {
            bail!("a bare list of pairs needs --n and --k");
        };
        let pairs: Vec<CallanPair> = serde_json::from_value(value).context("malformed pair list")?;
        return Ok(CallanSequence::new(n, k, pairs)?);
    }
    let s: CallanSequence = serde_json::from_value(value).context("malformed callan sequence")?;
    if n.is_some_and(|n| n != s.n()) || k.is_some_and(|k| k != s.k()) {
        bail!("--n/--k disagree with the dimensions in the input");
    }
    Ok(s)
}

fn parse_labels(text: &str) -> anyhow::Result<Vec<usize>> {
    text.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().with_context(|| format!("cannot parse {t:?} as a label")))
        .collect()
}

fn convert(c: &ConvertArgs, format: Format) -> Outcome {
    if (c.n.is_some() || c.k.is_some()) && c.direction != Direction::CallanToMatrix {
        return Err(Failure::Usage("--n/--k only apply to callan-to-matrix".into()));
    }
    let input = read_input(c.file.as_ref())?;
    let output = match c.direction {
        Direction::MatrixToCallan => format!("{}\n", gammafree::phi(&BinaryMatrix::parse(&input)?)?.to_json()),
        Direction::CallanToMatrix => gammafree::phi_inverse(&parse_callan(&input, c.n, c.k)?).render(),
        Direction::PermToForest => {
            let forest = gammafree::pi_inverse(&parse_labels(&input)?)?;
            format!("{}\n", serde_json::to_string(&forest).expect("serializable"))
        }
        Direction::ForestToPerm => {
            let forest: LabeledForest<usize> = serde_json::from_str(&input).context("malformed forest")?;
            let seq = gammafree::pi(&forest)?;
            format!("{}\n", seq.iter().map(usize::to_string).collect::<Vec<_>>().join(" "))
        }
        Direction::MatrixToPermpair => gammafree::matrix_to_pair(&BinaryMatrix::parse(&input)?)?.render(),
        Direction::PermpairToMatrix => gammafree::pair_to_matrix(&PermPair::parse(&input)?)?.render(),
    };
    Ok(match format {
        Format::Table => output,
        Format::Records => records([json!({"direction": direction_name(c.direction), "output": output})]),
    })
}

fn direction_name(d: Direction) -> String {
    d.to_possible_value().expect("no skipped variants").get_name().to_string()
}

fn verify(v: &VerifyCmd, format: Format, exec: Exec) -> Outcome {
    let report = match v {
        VerifyCmd::Phi(s) => verify::verify_phi_bijective(s.n, s.k, exec)?,
        VerifyCmd::Pi { n } => verify::verify_pi(*n, exec)?,
        VerifyCmd::Psi { n } => verify::verify_psi(*n, exec)?,
        VerifyCmd::Theorem5 { n } => verify::verify_theorem5(*n, exec)?,
        VerifyCmd::Table1(s) => verify::verify_table1(s.max_n, s.max_k, exec)?,
        VerifyCmd::Egf(s) => verify::verify_egf(s.max_n, s.max_k, exec)?,
    };
    if !report.passed() {
        return Err(Failure::Verification(Box::new(report)));
    }
    Ok(match format {
        Format::Table => report.to_string(),
        Format::Records => records([serde_json::to_value(&report).expect("serializable")]),
    })
}
