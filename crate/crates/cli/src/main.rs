use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use lineidx::bench::{self, HullOutput, LevelOutput};
use lineidx::gen;
use lineidx::io::{FormatError, Mode, StoredIndex};
use lineidx::{GeomError, Line, Point};
use serde::{Deserialize, Serialize};

#[derive(Parser)]
#[command(name = "lineidx", version, about = "Preprocessed line arrangements: hull and level queries")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write a generated instance as JSON.
    Generate {
        #[arg(long)]
        kind: String,
        #[arg(short, long)]
        n: usize,
        /// Hull size for few-hull.
        #[arg(long)]
        h: Option<usize>,
        #[arg(long, env = "GEOM_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "-")]
        out: PathBuf,
    },
    /// Build an index. Hull modes index the lines of the file; the levels
    /// mode indexes its points.
    Preprocess {
        #[arg(long)]
        lines: PathBuf,
        /// std, oblivious, tradeoff:M, tradeoff:sqrt, outsens or levels.
        #[arg(long)]
        mode: Mode,
        #[arg(long, env = "GEOM_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Hull of one point per indexed line.
    Query {
        #[arg(long)]
        index: PathBuf,
        #[arg(long)]
        points: PathBuf,
        #[arg(long, default_value = "-")]
        out: PathBuf,
    },
    /// The (<= k)-level of one line through each indexed point; line `i`
    /// of the file passes through point `i`.
    LevelsQuery {
        #[arg(long)]
        index: PathBuf,
        #[arg(long)]
        lines: PathBuf,
        #[arg(short = 'k', long)]
        k: u32,
        #[arg(long, default_value = "-")]
        out: PathBuf,
    },
    /// Compare every query mode with the oracles on generated instances.
    Verify {
        #[arg(long)]
        kind: String,
        #[arg(long, value_delimiter = ',', default_value = "64")]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 10)]
        trials: u64,
        #[arg(long)]
        h: Option<usize>,
        /// Also check level queries at this k.
        #[arg(long)]
        levels_k: Option<u32>,
        #[arg(long, env = "GEOM_SEED", default_value_t = 0)]
        seed: u64,
    },
    /// Counter-instrumented runs, one CSV row per instance and mode.
    Bench {
        #[arg(long, value_delimiter = ',')]
        kinds: Vec<String>,
        #[arg(long, value_delimiter = ',', default_value = "256,512,1024,2048")]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 1)]
        trials: u64,
        #[arg(long, value_delimiter = ',', default_value = "std,oblivious,tradeoff:sqrt,outsens")]
        modes: Vec<Mode>,
        #[arg(long)]
        h: Option<usize>,
        /// Level for the levels mode.
        #[arg(short = 'k', long, default_value_t = 2)]
        k: u32,
        #[arg(long, env = "GEOM_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "-")]
        csv: PathBuf,
    },
}

/// Any JSON file with lines and/or points; instances qualify.
#[derive(Deserialize)]
struct InputFile {
    #[serde(default)]
    lines: Option<Vec<Line>>,
    #[serde(default)]
    points: Option<Vec<(Point, u32)>>,
}

#[derive(Serialize)]
struct ErrorReport {
    error: String,
    message: String,
}

struct Failure {
    kind: String,
    message: String,
    code: u8,
}

impl From<GeomError> for Failure {
    fn from(e: GeomError) -> Self {
        Failure { kind: e.kind().into(), message: e.to_string(), code: 3 }
    }
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        Failure { kind: e.kind().into(), message: e.to_string(), code: 4 }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure { kind: "Io".into(), message: e.to_string(), code: 2 }
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure { kind: "Json".into(), message: e.to_string(), code: 2 }
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure { kind: "Csv".into(), message: e.to_string(), code: 2 }
    }
}

fn is_std(p: &Path) -> bool {
    p.as_os_str() == "-"
}

fn read_all(p: &PathBuf) -> io::Result<Vec<u8>> {
    if is_std(p) {
        let mut v = Vec::new();
        io::stdin().read_to_end(&mut v)?;
        Ok(v)
    } else {
        fs::read(p).map_err(|e| io::Error::new(e.kind(), format!("{}: {e}", p.display())))
    }
}

fn writer(p: &PathBuf) -> io::Result<Box<dyn Write>> {
    if is_std(p) {
        return Ok(Box::new(io::stdout().lock()));
    }
    let f = fs::File::create(p).map_err(|e| io::Error::new(e.kind(), format!("{}: {e}", p.display())))?;
    Ok(Box::new(io::BufWriter::new(f)))
}

fn write_json<T: Serialize>(p: &PathBuf, v: &T) -> Result<(), Failure> {
    let mut w = writer(p)?;
    serde_json::to_writer(&mut w, v)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

fn read_input(p: &PathBuf) -> Result<InputFile, Failure> {
    Ok(serde_json::from_slice(&read_all(p)?)?)
}

fn missing(what: &str) -> Failure {
    GeomError::InvalidParameter(format!("input has no {what}")).into()
}

fn load_index(p: &PathBuf) -> Result<StoredIndex, Failure> {
    Ok(StoredIndex::from_bytes(&read_all(p)?)?)
}

fn run(cmd: Cmd) -> Result<(), Failure> {
    match cmd {
        Cmd::Generate { kind, n, h, seed, out } => write_json(&out, &gen::generate(&kind, n, h, seed)?),
        Cmd::Preprocess { lines, mode, seed, out } => {
            let input = read_input(&lines)?;
            let ls = input.lines.unwrap_or_default();
            let pts: Option<Vec<Point>> = input.points.map(|v| {
                let mut v = v;
                v.sort_by_key(|&(_, id)| id);
                v.into_iter().map(|(p, _)| p).collect()
            });
            if mode != Mode::Levels && ls.is_empty() {
                return Err(missing("lines"));
            }
            let index = StoredIndex::build(mode, &ls, pts.as_deref(), seed)?;
            let mut w = writer(&out)?;
            w.write_all(&index.to_bytes())?;
            w.flush()?;
            Ok(())
        }
        Cmd::Query { index, points, out } => {
            let index = load_index(&index)?;
            let pts = read_input(&points)?.points.ok_or_else(|| missing("points"))?;
            let (hull, stats) = bench::query_hull(&index, &pts)?;
            write_json(&out, &HullOutput { mode: index.mode().to_string(), vertices: hull.vertices().to_vec(), stats })
        }
        Cmd::LevelsQuery { index, lines, k, out } => {
            let index = load_index(&index)?;
            let ls = read_input(&lines)?.lines.ok_or_else(|| missing("lines"))?;
            let paired: Vec<(Line, u32)> = ls.into_iter().zip(0..).collect();
            let (level, stats) = bench::query_level(&index, &paired, k)?;
            write_json(&out, &LevelOutput { level, stats })
        }
        Cmd::Verify { kind, sizes, trials, h, levels_k, seed } => {
            let rep = bench::verify(&kind, &sizes, trials, h, levels_k, seed)?;
            write_json(&PathBuf::from("-"), &rep)?;
            if rep.ok() {
                Ok(())
            } else {
                Err(Failure {
                    kind: "OracleMismatch".into(),
                    message: format!("{}/{} trials matched", rep.matches, rep.trials),
                    code: 1,
                })
            }
        }
        Cmd::Bench { kinds, sizes, trials, modes, h, k, seed, csv } => {
            if kinds.is_empty() {
                return Err(GeomError::InvalidParameter("--kinds is empty".into()).into());
            }
            let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(writer(&csv)?);
            w.write_record(bench::CSV_COLUMNS)?;
            let mut failed: Option<csv::Error> = None;
            let plan = bench::BenchPlan { kinds, sizes, trials, modes, h, k, seed };
            bench::bench(&plan, |rec| {
                if failed.is_none() {
                    if let Err(e) = w.serialize(&rec) {
                        failed = Some(e);
                    }
                }
                Ok(())
            })?;
            if let Some(e) = failed {
                return Err(e.into());
            }
            w.flush()?;
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => e.exit(),
        Err(e) => {
            report(&Failure { kind: "Usage".into(), message: e.to_string().trim().to_string(), code: 2 });
            return ExitCode::from(2);
        }
    };
    match run(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            report(&f);
            ExitCode::from(f.code)
        }
    }
}

fn report(f: &Failure) {
    let r = ErrorReport { error: f.kind.clone(), message: f.message.clone() };
    eprintln!("{}", serde_json::to_string(&r).unwrap());
}
