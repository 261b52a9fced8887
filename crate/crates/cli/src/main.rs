//! `cayley`: sign queries, element products, multiplication tables,
//! verification suites and benchmarks for Cayley-Dickson algebras.
//!
//! Exit codes: 0 on success, 1 for invalid input, 2 when an engine contradicts
//! itself or a verification outcome is unexpected.

mod export;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use cayley_dickson::analysis::{
    benchmark_engines, build_table, outcome_is_sound, run_suite, BenchConfig, Suite, SuiteConfig, DEFAULT_TABLE_CAP,
};
use cayley_dickson::{basis_mul, AlgebraSignature, BasisIndex, Element, Error};
use clap::{Args, Parser, Subcommand, ValueEnum};

use export::{write_table, Format, IndexStyle};

#[derive(Parser, Debug)]
#[command(name = "cayley", version, about = "Exact arithmetic and verification for Cayley-Dickson algebras")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalArgs {
    /// Algebra level n (dimension 2^n)
    #[arg(short = 'n', long = "level", global = true)]
    level: Option<u32>,

    /// Use the split algebra (last doubling step with gamma = +1)
    #[arg(long, global = true, conflicts_with = "gamma")]
    split: bool,

    /// Explicit doubling parameters, e.g. `-1,1,-1` (doubling engine only)
    #[arg(long, global = true, allow_hyphen_values = true, value_name = "+-1,...")]
    gamma: Option<String>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Write output to a file instead of standard output
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Largest level `table` will build
    #[arg(long, global = true, default_value_t = DEFAULT_TABLE_CAP)]
    cap: u32,

    /// Multiplication engine for `mul` [default: both below level 7, else twist]
    #[arg(long, global = true, value_enum)]
    engine: Option<EngineChoice>,

    /// Print basis indices in binary
    #[arg(long, global = true)]
    binary: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum EngineChoice {
    Twist,
    Doubling,
    Both,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sign and index of e_A * e_B
    Sign { a: u64, b: u64 },
    /// Product of two elements given as comma-separated rationals
    Mul {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
    },
    /// Full multiplication table
    Table,
    /// Run verification suites and emit one JSON report per line
    Verify {
        /// twist-laws, algebra-laws, relations, engines, zero-divisors [default: all]
        #[arg(long = "suite")]
        suites: Vec<String>,
        /// Run every level from 1 up to this one instead of just -n
        #[arg(long)]
        n_max: Option<u32>,
        /// Random samples per level
        #[arg(long, default_value_t = 200)]
        samples: u64,
        /// Candidate pairs examined by the zero-divisor search
        #[arg(long, default_value_t = 1 << 24)]
        budget: u64,
    },
    /// Time the sign engines and emit one JSON row per (level, engine)
    Bench {
        #[arg(long, default_value_t = 8)]
        n_min: u32,
        #[arg(long, default_value_t = 24)]
        n_max: u32,
        #[arg(long, default_value_t = 1 << 20)]
        queries: usize,
        #[arg(long, default_value_t = 5)]
        repetitions: usize,
    },
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_internal() {
            Failure::Internal(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Input(format!("i/o error: {e}"))
    }
}

type CmdResult = Result<(), Failure>;

impl GlobalArgs {
    fn level(&self) -> Result<u32, Failure> {
        self.level
            .ok_or_else(|| Failure::Input("missing -n/--level".into()))
    }

    fn signature_at(&self, level: u32) -> Result<AlgebraSignature, Failure> {
        if self.split {
            return Ok(AlgebraSignature::split(level)?);
        }
        if let Some(list) = &self.gamma {
            let sig = AlgebraSignature::from_gamma_list(list)?;
            if sig.level() != level {
                return Err(Failure::Input(format!(
                    "--gamma lists {} steps but the level is {level}",
                    sig.level()
                )));
            }
            return Ok(sig);
        }
        Ok(AlgebraSignature::standard(level)?)
    }

    fn signature(&self) -> Result<AlgebraSignature, Failure> {
        let level = match (self.level, &self.gamma) {
            (Some(l), _) => l,
            (None, Some(list)) => AlgebraSignature::from_gamma_list(list)?.level(),
            (None, None) => return Err(Failure::Input("missing -n/--level".into())),
        };
        self.signature_at(level)
    }

    fn output(&self) -> Result<Box<dyn Write>, Failure> {
        Ok(match &self.out {
            Some(path) => Box::new(BufWriter::new(File::create(path).map_err(|e| {
                Failure::Input(format!("cannot create {}: {e}", path.display()))
            })?)),
            None => Box::new(BufWriter::new(io::stdout().lock())),
        })
    }
}

fn cmd_sign(g: &GlobalArgs, a: u64, b: u64) -> CmdResult {
    let sig = g.signature()?;
    let bound = 1u64 << sig.level();
    for v in [a, b] {
        if v >= bound {
            return Err(Failure::Input(format!(
                "index {v} out of range for level {} (must be < {bound})",
                sig.level()
            )));
        }
    }
    let p = basis_mul(BasisIndex(a as u32), BasisIndex(b as u32), &sig)?;
    let style = IndexStyle {
        binary: g.binary,
        level: sig.level(),
    };
    let mut out = g.output()?;
    writeln!(
        out,
        "e{} * e{} = {}e{} (sigma={})",
        style.render(a as u32),
        style.render(b as u32),
        p.sign.symbol(),
        style.render(p.index.get()),
        u8::from(p.sign.is_negative())
    )?;
    out.flush()?;
    Ok(())
}

fn cmd_mul(g: &GlobalArgs, x: &str, y: &str) -> CmdResult {
    let sig = g.signature()?;
    let x = Element::parse(sig, x)?;
    let y = Element::parse(sig, y)?;
    let engine = g.engine.unwrap_or(if !sig.has_closed_form() {
        EngineChoice::Doubling
    } else if sig.level() < 7 {
        EngineChoice::Both
    } else {
        EngineChoice::Twist
    });
    let product = match engine {
        EngineChoice::Twist => x.mul_twist(&y)?,
        EngineChoice::Doubling => x.mul_doubling(&y)?,
        EngineChoice::Both => {
            let twist = x.mul_twist(&y)?;
            let doubling = x.mul_doubling(&y)?;
            if twist != doubling {
                return Err(Failure::Internal(format!(
                    "engines disagree: twist gives {twist}, doubling gives {doubling}"
                )));
            }
            twist
        }
    };
    let mut out = g.output()?;
    writeln!(out, "{product}")?;
    out.flush()?;
    Ok(())
}

fn cmd_table(g: &GlobalArgs) -> CmdResult {
    let table = build_table(g.signature()?, g.cap)?;
    let mut out = g.output()?;
    write_table(&mut out, &table, g.format, g.binary)?;
    out.flush()?;
    Ok(())
}

fn cmd_verify(g: &GlobalArgs, suites: &[String], n_max: Option<u32>, samples: u64, budget: u64) -> CmdResult {
    let suites: Vec<Suite> = if suites.is_empty() {
        Suite::ALL.to_vec()
    } else {
        suites.iter().map(|s| Suite::from_name(s)).collect::<Result<_, _>>()?
    };
    let levels: Vec<u32> = match n_max {
        Some(max) => (1..=max).collect(),
        None => vec![g.level()?],
    };
    let config = SuiteConfig {
        samples,
        seed: g.seed,
        zero_divisor_budget: budget,
    };
    let mut out = g.output()?;
    let mut offenders = Vec::new();
    for suite in suites {
        for &level in &levels {
            let sig = g.signature_at(level)?;
            for report in run_suite(suite, sig, &config)? {
                let line = report.to_json_line();
                writeln!(out, "{line}")?;
                if !outcome_is_sound(&report)? {
                    offenders.push(line);
                }
            }
        }
    }
    out.flush()?;
    if offenders.is_empty() {
        Ok(())
    } else {
        Err(Failure::Internal(format!("unexpected outcomes:\n{}", offenders.join("\n"))))
    }
}

fn cmd_bench(g: &GlobalArgs, n_min: u32, n_max: u32, queries: usize, repetitions: usize) -> CmdResult {
    if n_min > n_max {
        return Err(Failure::Input(format!("--n-min {n_min} exceeds --n-max {n_max}")));
    }
    let mut config = BenchConfig::new(n_min..=n_max, queries, g.seed);
    config.repetitions = repetitions;
    let rows = benchmark_engines(&config)?;
    let mut out = g.output()?;
    for row in rows {
        writeln!(out, "{}", row.to_json_line())?;
    }
    out.flush()?;
    Ok(())
}

fn run(cli: &Cli) -> CmdResult {
    let g = &cli.global;
    match &cli.command {
        Command::Sign { a, b } => cmd_sign(g, *a, *b),
        Command::Mul { x, y } => cmd_mul(g, x, y),
        Command::Table => cmd_table(g),
        Command::Verify {
            suites,
            n_max,
            samples,
            budget,
        } => cmd_verify(g, suites, *n_max, *samples, *budget),
        Command::Bench {
            n_min,
            n_max,
            queries,
            repetitions,
        } => cmd_bench(g, *n_min, *n_max, *queries, *repetitions),
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
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(2)
        }
    }
}
