//! `shufsq`: shuffle and square decisions, the 3-Partition reduction, and
//! arc diagrams of square certificates.
//!
//! Exit codes: 0 yes, 1 no, 2 usage or input error, 3 undecided within budget.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use serde_json::json;
use shuffle_square::arcs::{ArcLayout, Format};
use shuffle_square::encoding::Encoding;
use shuffle_square::partition::{self, PartitionInstance};
use shuffle_square::queue::DEFAULT_BUDGET;
use shuffle_square::reduction::{self, Agreement};
use shuffle_square::shuffle::shuffle_witness;
use shuffle_square::square::{is_square, Decision, Method, SquareOptions, DEFAULT_BRUTE_CAP};
use shuffle_square::{Matching, Word};

#[derive(Parser)]
#[command(
    name = "shufsq",
    version,
    about = "Shuffles, squares and the 3-Partition reduction"
)]
struct Cli {
    /// Strings are whitespace-separated symbol names instead of one character per symbol
    #[arg(long, global = true)]
    tokens: bool,

    /// Write the main output to this file instead of stdout
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether W is a shuffle of U and V; prints the copy labels on success
    Shuffle {
        /// First string, or @FILE
        u: String,
        /// Second string, or @FILE
        v: String,
        /// Candidate shuffle, or @FILE
        w: String,
    },
    /// Decide whether W is a square (a shuffle of some string with itself)
    Square {
        /// The string, or @FILE; omit when using --batch
        #[arg(required_unless_present = "batch")]
        w: Option<String>,
        /// auto, brute, search or two-sat
        #[arg(long, default_value = "auto")]
        method: Method,
        /// Most distinct automaton configurations the search may visit
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        /// Longest string the brute-force method accepts
        #[arg(long, default_value_t = DEFAULT_BRUTE_CAP)]
        brute_cap: usize,
        /// Decide every non-empty line of FILE; one verdict per line, in input order
        #[arg(long, value_name = "FILE", conflicts_with = "w")]
        batch: Option<PathBuf>,
        /// Worker threads for --batch
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Build the square-or-not string w_S for a 3-Partition instance
    Reduce {
        /// Instance file: "2 1 1" or {"values":[2,1,1]}; - for stdin
        instance: PathBuf,
        /// Also write an accepting automaton trace (solvable instances only)
        #[arg(long, value_name = "PATH")]
        emit_witness: Option<PathBuf>,
        /// Also write the named part boundaries as JSON
        #[arg(long, value_name = "PATH")]
        emit_spans: Option<PathBuf>,
        /// Reject values outside (B/4, B/2) instead of warning
        #[arg(long)]
        strict: bool,
    },
    /// Solve a 3-Partition instance exactly
    Solve3p {
        /// Instance file; - for stdin
        instance: PathBuf,
    },
    /// Draw a matching as arcs over its string
    Arcs {
        /// The string, or @FILE
        w: String,
        /// Matching JSON file such as [[0,2],[1,3]], or the JSON itself
        matching: String,
        /// ascii, dot or svg
        #[arg(long, default_value = "ascii")]
        format: Format,
    },
    /// Cross-check solver, witness synthesis and automaton search on an instance
    Verify {
        /// Instance file; - for stdin
        instance: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
}

/// An input or usage problem; reported on stderr with exit code 2.
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

type Outcome = Result<u8, Failure>;

const YES: u8 = 0;
const NO: u8 = 1;
const UNKNOWN: u8 = 3;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure(msg)) => {
            eprintln!("shufsq: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    let enc = if cli.tokens {
        Encoding::Tokens
    } else {
        Encoding::Compact
    };
    let out = cli.out.as_deref();
    match &cli.command {
        Command::Shuffle { u, v, w } => shuffle(enc, out, [u, v, w]),
        Command::Square {
            w,
            method,
            budget,
            brute_cap,
            batch,
            jobs,
        } => {
            let opts = SquareOptions {
                method: *method,
                budget: *budget,
                brute_cap: *brute_cap,
            };
            match (w, batch) {
                (_, Some(path)) => square_batch(enc, out, path, opts, *jobs),
                (Some(w), None) => {
                    let text = argument(w)?;
                    let (line, code) = square_line(enc, &text, opts)
                        .map_err(|Failure(e)| Failure(format!("w: {e}")))?;
                    emit(out, &line)?;
                    Ok(code)
                }
                (None, None) => Err(Failure("a string or --batch is required".into())),
            }
        }
        Command::Reduce {
            instance,
            emit_witness,
            emit_spans,
            strict,
        } => reduce(
            enc,
            out,
            instance,
            emit_witness.as_deref(),
            emit_spans.as_deref(),
            *strict,
        ),
        Command::Solve3p { instance } => solve3p(out, instance),
        Command::Arcs {
            w,
            matching,
            format,
        } => arcs(enc, out, w, matching, *format),
        Command::Verify { instance, budget } => verify(out, instance, *budget),
    }
}

/// The text of a string argument: literal, or the contents of FILE for `@FILE`.
fn argument(arg: &str) -> Result<String, Failure> {
    match arg.strip_prefix('@') {
        Some(path) => read_path(Path::new(path)),
        None => Ok(arg.to_string()),
    }
}

fn read_path(path: &Path) -> Result<String, Failure> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn write_path(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

/// Writes `text` plus a newline to `out` or stdout.
fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    let mut body = text.to_string();
    if !body.ends_with('\n') {
        body.push('\n');
    }
    match out {
        Some(path) => write_path(path, &body),
        None => {
            io::stdout().lock().write_all(body.as_bytes())?;
            Ok(())
        }
    }
}

fn load_instance(path: &Path, strict: bool) -> Result<PartitionInstance, Failure> {
    let text = read_path(path)?;
    let inst =
        PartitionInstance::parse(&text).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    if strict {
        return Ok(PartitionInstance::normalize_strict(&inst.values)?);
    }
    Ok(inst)
}

fn shuffle(enc: Encoding, out: Option<&Path>, args: [&String; 3]) -> Outcome {
    let texts = args
        .map(|a| argument(a))
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?;
    for (name, t) in ["u", "v", "w"].iter().zip(&texts) {
        enc.tokenize(t)
            .map_err(|e| Failure(format!("{name}: {e}")))?;
    }
    let refs: Vec<&str> = texts.iter().map(String::as_str).collect();
    let words = enc.decode_all(&refs)?;
    let (u, v, w) = (&words[0], &words[1], &words[2]);
    match shuffle_witness(u.syms(), v.syms(), w.syms()) {
        Some(wit) => {
            emit(
                out,
                &json!({"shuffle": true, "labels": wit.numeric_labels()}).to_string(),
            )?;
            Ok(YES)
        }
        None => {
            emit(out, &json!({"shuffle": false}).to_string())?;
            Ok(NO)
        }
    }
}

/// Verdict JSON for one string and the matching exit code.
fn square_line(enc: Encoding, text: &str, opts: SquareOptions) -> Result<(String, u8), Failure> {
    let w = enc.decode(text)?;
    let verdict = is_square(w.syms(), opts)?;
    let line = verdict.to_json(|u| render(enc, &w.with_syms(u.to_vec())));
    let code = match verdict.decision {
        Decision::Yes => YES,
        Decision::No => NO,
        Decision::Unknown => UNKNOWN,
    };
    Ok((line, code))
}

/// Encodes `w`, falling back to token form when the compact form cannot hold it.
fn render(enc: Encoding, w: &Word) -> String {
    enc.encode(w).unwrap_or_else(|_| w.to_string())
}

fn square_batch(
    enc: Encoding,
    out: Option<&Path>,
    path: &Path,
    opts: SquareOptions,
    jobs: usize,
) -> Outcome {
    let text = read_path(path)?;
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()?;
    let results: Vec<_> = pool.install(|| {
        lines
            .par_iter()
            .map(|&(i, l)| {
                square_line(enc, l, opts)
                    .map_err(|Failure(e)| Failure(format!("line {}: {e}", i + 1)))
            })
            .collect()
    });
    let mut body = String::new();
    let mut worst = YES;
    for r in results {
        let (line, code) = r?;
        body.push_str(&line);
        body.push('\n');
        worst = match (worst, code) {
            (UNKNOWN, _) | (_, UNKNOWN) => UNKNOWN,
            (NO, _) | (_, NO) => NO,
            _ => YES,
        };
    }
    emit(out, &body)?;
    Ok(worst)
}

fn reduce(
    enc: Encoding,
    out: Option<&Path>,
    instance: &Path,
    witness: Option<&Path>,
    spans: Option<&Path>,
    strict: bool,
) -> Outcome {
    let inst = load_instance(instance, strict)?;
    if !inst.within_bounds {
        eprintln!(
            "shufsq: note: not every value lies strictly between B/4 and B/2 (B = {})",
            inst.target
        );
    }
    let built = reduction::build_reduction(&inst);
    emit(out, &render(enc, &built.word))?;
    if let Some(path) = spans {
        write_path(path, &format!("{}\n", built.spans_json()))?;
    }
    if let Some(path) = witness {
        let Some(sol) = partition::solve(&inst)? else {
            eprintln!("shufsq: instance has no solution, so no witness was written");
            return Ok(NO);
        };
        let trace = reduction::synthesize_witness(&inst, &sol)?;
        write_path(path, &trace.to_text(built.word.alphabet()))?;
    }
    Ok(YES)
}

fn solve3p(out: Option<&Path>, instance: &Path) -> Outcome {
    let inst = load_instance(instance, false)?;
    let sol = partition::solve(&inst)?;
    let mut report =
        json!({"values": inst.values, "m": inst.m, "B": inst.target, "solvable": sol.is_some()});
    if let Some(sol) = &sol {
        report["groups"] = json!(sol.groups);
        report["triples"] = json!(sol.group_values(&inst));
    }
    emit(out, &report.to_string())?;
    Ok(if sol.is_some() { YES } else { NO })
}

fn arcs(enc: Encoding, out: Option<&Path>, w: &str, matching: &str, format: Format) -> Outcome {
    let w = enc
        .decode(&argument(w)?)
        .map_err(|e| Failure(format!("w: {e}")))?;
    let text = if matching.trim_start().starts_with('[') {
        matching.to_string()
    } else {
        read_path(Path::new(matching.strip_prefix('@').unwrap_or(matching)))?
    };
    let m = Matching::from_json(&text).map_err(|e| Failure(format!("matching: {e}")))?;
    let labels: Vec<String> = w
        .syms()
        .iter()
        .map(|&s| render(enc, &w.with_syms(vec![s])))
        .collect();
    let layout =
        ArcLayout::new(&labels, &m).map_err(|v| Failure(format!("invalid matching: {v}")))?;
    emit(out, &layout.render(format))?;
    Ok(YES)
}

fn verify(out: Option<&Path>, instance: &Path, budget: usize) -> Outcome {
    let inst = load_instance(instance, false)?;
    let report = reduction::verify_reduction_instance(&inst, budget)?;
    emit(out, &serde_json::to_string(&report)?)?;
    Ok(if report.agreement == Agreement::Contradiction {
        NO
    } else {
        YES
    })
}
