//! Command-line front end: builds positions, runs valuations and prints a
//! result record as `key=value` lines or JSON.

pub mod text;

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use downset_core::engine::MemoTable;
use downset_core::games::{self, WinLoss};
use downset_core::{enumerate, linext, CanonicalKey, Complex, Error, RunStats, VertexPermutation};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Parser)]
#[command(
    name = "downset",
    version,
    about = "Chomp values and linear extensions on downward-closed set families"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Include positions stored/visited and elapsed time
    #[arg(long, global = true)]
    pub stats: bool,

    /// Emit one JSON object instead of key=value lines
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Grundy value of a Chomp position
    Grundy(EvalArgs),
    /// Win/loss outcome for the player to move
    Winloss(EvalArgs),
    /// Moves that leave the opponent in a lost position
    Moves {
        #[command(flatten)]
        eval: EvalArgs,
        /// Stop at the first winning move
        #[arg(long)]
        find_first: bool,
    },
    /// Number of linear extensions
    Linext(EvalArgs),
    /// Closed-form count of linear extensions of P(n,2)
    LinextFormula {
        #[arg(long)]
        n: u32,
    },
    /// Count complexes on n points, labeled and up to isomorphism
    Enumerate {
        #[arg(long)]
        n: u8,
        /// Write one canonical key per isomorphism class to this file
        #[arg(long)]
        stream: Option<PathBuf>,
    },
    /// Faces fixed by an involutive automorphism
    Reduce {
        #[command(flatten)]
        position: PositionArgs,
        /// Involution in cycle notation, e.g. "(67)" or "(0 1)(2 3)"
        #[arg(long)]
        involution: String,
    },
}

#[derive(Debug, Args)]
pub struct PositionArgs {
    /// Ground set size of P(n,k)
    #[arg(long, requires = "k", conflicts_with = "input")]
    pub n: Option<u8>,
    /// Largest face size of P(n,k)
    #[arg(long, requires = "n")]
    pub k: Option<u8>,
    /// Read the position from a complex text file
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Apply Chomp moves (digit notation) to the position first
    #[arg(long, value_name = "FACE")]
    pub chomp: Vec<String>,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[command(flatten)]
    pub position: PositionArgs,
    /// Abort once the memo table holds this many entries
    #[arg(long)]
    pub memo_limit: Option<usize>,
    /// Try moves on larger faces first in win/loss searches
    #[arg(long)]
    pub largest_first: bool,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Io(String),
    #[error(transparent)]
    Core(#[from] Error),
}

impl CliError {
    /// 2 parse, 3 illegal position or move, 4 resource limit, 5 reduction
    /// not applicable, 1 anything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Io(_) => 1,
            CliError::Core(e) => match e {
                Error::InvalidParameter(_) | Error::IllegalMove(_) | Error::InvalidPosition(_) => 3,
                Error::MemoLimit { .. } | Error::Refused(_) => 4,
                Error::NotApplicable(_) => 5,
                Error::ValuationMismatch { .. } => 1,
            },
        }
    }
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct ResultRecord {
    pub command: String,
    pub input: String,
    pub value: String,
    #[serde(flatten)]
    pub extra: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub positions_stored: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub positions_visited: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
}

impl ResultRecord {
    fn new(command: &str, input: String, value: String) -> ResultRecord {
        ResultRecord {
            command: command.to_string(),
            input,
            value,
            extra: BTreeMap::new(),
            positions_stored: None,
            positions_visited: None,
            elapsed_ms: None,
        }
    }

    fn with_stats(mut self, s: &RunStats) -> ResultRecord {
        self.positions_stored = Some(s.positions_stored);
        self.positions_visited = Some(s.positions_visited);
        self.elapsed_ms = Some(s.elapsed_ms());
        self
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "command={}\ninput={}\nvalue={}\n",
            self.command, self.input, self.value
        );
        for (k, v) in &self.extra {
            out.push_str(&format!("{k}={v}\n"));
        }
        if let (Some(s), Some(v), Some(e)) = (
            self.positions_stored,
            self.positions_visited,
            self.elapsed_ms,
        ) {
            out.push_str(&format!(
                "positions_stored={s}\npositions_visited={v}\nelapsed_ms={e}\n"
            ));
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("record serializes")
    }
}

fn load_position(p: &PositionArgs) -> Result<(Complex, String), CliError> {
    let (mut c, mut desc) = match (&p.input, p.n, p.k) {
        (Some(path), _, _) => {
            let raw = fs::read_to_string(path)
                .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
            let c = text::parse_complex(&raw)
                .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
            (c, format!("file:{}", path.display()))
        }
        (None, Some(n), Some(k)) => (Complex::pnk(n, k)?, format!("P({n},{k})")),
        _ => {
            return Err(CliError::Parse(
                "give a position with --n/--k or --input".into(),
            ))
        }
    };
    for token in &p.chomp {
        let x = text::parse_face(token, c.n())
            .map_err(|m| CliError::Parse(format!("--chomp {token}: {m}")))?;
        c = c.chomp_move(x)?;
        desc.push_str(&format!(" chomp {}", text::format_face(x)));
    }
    Ok((c, desc))
}

fn memo<T>(limit: Option<usize>) -> MemoTable<T> {
    limit.map_or_else(MemoTable::new, MemoTable::with_limit)
}

/// Parses cycle notation: `(67)`, `(6 7)`, `(0,1)(2 3)`; `()` is the identity.
pub fn parse_cycles(s: &str, n: u8) -> Result<VertexPermutation, CliError> {
    let bad = |m: &str| CliError::Parse(format!("involution `{s}`: {m}"));
    let mut cycles = Vec::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        let body = rest.strip_prefix('(').ok_or_else(|| bad("expected `(`"))?;
        let close = body.find(')').ok_or_else(|| bad("missing `)`"))?;
        let cycle: Vec<u8> = body[..close]
            .chars()
            .filter(|c| !c.is_whitespace() && *c != ',')
            .map(|c| {
                c.to_digit(10)
                    .map(|d| d as u8)
                    .ok_or_else(|| bad("vertices are single digits"))
            })
            .collect::<Result<_, _>>()?;
        if !cycle.is_empty() {
            cycles.push(cycle);
        }
        rest = body[close + 1..].trim_start();
    }
    Ok(VertexPermutation::from_cycles(n, &cycles)?)
}

fn scientific(digits: &str) -> Option<String> {
    let x: f64 = digits.parse().ok()?;
    (digits.len() > 15 && x.is_finite()).then(|| format!("~{x:.1e}"))
}

/// Runs one parsed command line.
pub fn run(cli: &Cli) -> Result<ResultRecord, CliError> {
    let rec = match &cli.command {
        Command::Grundy(a) => {
            let (c, desc) = load_position(&a.position)?;
            let (g, s) = games::grundy_with(&c, &mut memo(a.memo_limit))?;
            ResultRecord::new("grundy", desc, g.to_string()).with_stats(&s)
        }
        Command::Winloss(a) => {
            let (c, desc) = load_position(&a.position)?;
            let v = WinLoss {
                largest_first: a.largest_first,
            };
            let (o, s) = games::winloss_with(&c, &v, &mut memo(a.memo_limit))?;
            ResultRecord::new("winloss", desc, o.to_string()).with_stats(&s)
        }
        Command::Moves {
            eval: a,
            find_first,
        } => {
            let (c, desc) = load_position(&a.position)?;
            let v = WinLoss {
                largest_first: a.largest_first,
            };
            let (moves, s) =
                games::winning_moves_with(&c, *find_first, &v, &mut memo(a.memo_limit))?;
            let mut r = ResultRecord::new("moves", desc, text::format_faces(&moves)).with_stats(&s);
            r.extra.insert("count".into(), moves.len().to_string());
            r
        }
        Command::Linext(a) => {
            let (c, desc) = load_position(&a.position)?;
            let (e, s) = linext::count_linear_extensions_with(&c, &mut memo(a.memo_limit))?;
            let digits = e.to_string();
            let mut r = ResultRecord::new("linext", desc, digits.clone()).with_stats(&s);
            if let Some(approx) = scientific(&digits) {
                r.extra.insert("approx".into(), approx);
            }
            r
        }
        Command::LinextFormula { n } => {
            let start = std::time::Instant::now();
            let e = linext::e_pn2_closed_form(*n);
            let s = RunStats {
                elapsed: start.elapsed(),
                ..RunStats::default()
            };
            ResultRecord::new("linext-formula", format!("P({n},2)"), e.to_string()).with_stats(&s)
        }
        Command::Enumerate { n, stream } => {
            let start = std::time::Instant::now();
            let census = match stream {
                Some(path) => {
                    let file = fs::File::create(path).map_err(|e| {
                        CliError::Io(format!("cannot create {}: {e}", path.display()))
                    })?;
                    let mut out = std::io::BufWriter::new(file);
                    let mut failed = None;
                    let mut sink = |k: &CanonicalKey| {
                        if failed.is_none() {
                            if let Err(e) = writeln!(out, "{k}") {
                                failed = Some(e);
                            }
                        }
                    };
                    let census = enumerate::census(*n, Some(&mut sink))?;
                    if let Some(e) = failed.or_else(|| out.flush().err()) {
                        return Err(CliError::Io(format!("writing {}: {e}", path.display())));
                    }
                    census
                }
                None => enumerate::census(*n, None)?,
            };
            let labeled: u64 = census.labeled_count.to_string().parse().unwrap_or(u64::MAX);
            let s = RunStats {
                positions_stored: census.unlabeled_count,
                positions_visited: labeled,
                elapsed: start.elapsed(),
            };
            let mut r = ResultRecord::new(
                "enumerate",
                format!("n={n}"),
                census.labeled_count.to_string(),
            )
            .with_stats(&s);
            r.extra
                .insert("labeled".into(), census.labeled_count.to_string());
            r.extra
                .insert("unlabeled".into(), census.unlabeled_count.to_string());
            r
        }
        Command::Reduce {
            position,
            involution,
        } => {
            let start = std::time::Instant::now();
            let (c, desc) = load_position(position)?;
            let phi = parse_cycles(involution, c.n())?;
            let fixed = games::fixed_subcomplex(&c, &phi)?;
            let s = RunStats {
                elapsed: start.elapsed(),
                ..RunStats::default()
            };
            let mut r = ResultRecord::new(
                "reduce",
                format!("{desc} by {phi}"),
                text::faces_line(&fixed),
            )
            .with_stats(&s);
            r.extra.insert("n".into(), fixed.n().to_string());
            r
        }
    };
    Ok(if cli.stats {
        rec
    } else {
        ResultRecord {
            positions_stored: None,
            positions_visited: None,
            elapsed_ms: None,
            ..rec
        }
    })
}
