//! The `critfact` command line.
//!
//! ```text
//! critfact <verb> [args] [--json|--csv] [--out PATH] [--jobs K] [--max-words N]
//! ```
//!
//! Exit codes: 0 on success or a passing verification, 1 on a failing
//! verification, 2 on usage, input or resource errors.

pub mod config;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use critfact::explore::{explore_problem1, explore_problem2};
use critfact::record::{csv_rows, ProfileRecord, CSV_HEADER};
use critfact::square_free::estimated_count;
use critfact::thue::{FamilySidecar, FamilySpec};
use critfact::verify::{
    verify, verify_alpha_extremal, verify_beta_eta, verify_wx_density, TheoremId,
    VerificationReport, VerifyOptions,
};
use critfact::{
    collect_square_free, count_square_free_parallel, global_period, profile, Alphabet, Error,
    PeriodProfile, Word,
};

use crate::config::Limits;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Counterexamples shown on the console before truncation.
const CONSOLE_COUNTEREXAMPLES: usize = 10;

#[derive(Debug, Parser)]
#[command(
    name = "critfact",
    version,
    about = "Critical factorisation of words and square-free ternary words"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Emit one JSON document.
    #[arg(long, global = true, conflicts_with = "csv")]
    pub json: bool,
    /// Emit CSV.
    #[arg(long, global = true)]
    pub csv: bool,
    /// Write output to a file instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Worker threads for enumerate and verify.
    #[arg(long, global = true, value_name = "K", default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    pub jobs: u16,
    /// Override the configured word ceiling.
    #[arg(long, global = true, value_name = "N")]
    pub max_words: Option<u64>,
    /// TOML file with resource limits.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Local periods, critical points and repetition words of a word.
    Profile {
        #[arg(required_unless_present = "file", conflicts_with = "file")]
        word: Option<String>,
        /// Profile every word in a file, one per line.
        #[arg(long, value_name = "PATH")]
        file: Option<PathBuf>,
        #[arg(long, default_value_t = 3)]
        alphabet: u8,
    },
    /// Global period of a word.
    Global {
        word: String,
        #[arg(long, default_value_t = 3)]
        alphabet: u8,
    },
    /// Ternary square-free words of length n.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        count_only: bool,
        /// Count words starting 01 and multiply by 6 (with --count-only).
        #[arg(long, requires = "count_only")]
        symmetry: bool,
    },
    /// Generated word families.
    Generate {
        #[command(subcommand)]
        family: Family,
        /// Also write the JSON sidecar to this path.
        #[arg(long, global = true, value_name = "PATH")]
        sidecar: Option<PathBuf>,
    },
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Bounded exploration of open questions.
    Explore {
        #[command(subcommand)]
        problem: Problem,
    },
}

#[derive(Debug, Subcommand)]
pub enum Family {
    /// Prefix of the fixed point m.
    MPrefix {
        #[arg(long)]
        len: usize,
    },
    /// tau^K(0).
    Tau {
        #[arg(long)]
        n: usize,
    },
    Mn {
        #[arg(long)]
        n: usize,
    },
    Alpha {
        #[arg(long)]
        n: usize,
    },
    Beta {
        #[arg(long)]
        n: usize,
    },
    Xn {
        #[arg(long)]
        n: usize,
    },
    /// w_x for x = x_K.
    Wx {
        #[arg(long)]
        n: usize,
    },
    /// w_x for an explicit x.
    WxOf {
        #[arg(long)]
        x: String,
    },
    BetaFamily {
        #[arg(long)]
        count: usize,
        #[arg(long)]
        bound: usize,
    },
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(value_parser = parse_theorem)]
    pub suite: TheoremId,
    #[arg(long)]
    pub min: Option<usize>,
    #[arg(long)]
    pub max: Option<usize>,
    /// beta-eta: number of family words.
    #[arg(long, default_value_t = 3)]
    pub count: usize,
    /// beta-eta: length of the scanned prefix of m.
    #[arg(long, default_value_t = 10_000)]
    pub bound: usize,
    /// wx-density: largest n.
    #[arg(long, default_value_t = 4)]
    pub n: usize,
    /// upper-bound: random square-free words added to the exhaustive range.
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Problem {
    /// Lengths of x for which w_x is square-free.
    Problem1 {
        #[arg(long, default_value_t = 1)]
        min: usize,
        #[arg(long)]
        max: usize,
    },
    /// Square-free words with eta = |w|/4.
    Problem2 {
        #[arg(long)]
        max: usize,
    },
}

fn parse_theorem(s: &str) -> Result<TheoremId, String> {
    s.parse::<TheoremId>().map_err(|_| {
        let names: Vec<&str> = TheoremId::ALL.iter().map(|t| t.cli_name()).collect();
        format!("unknown suite {s:?}; expected one of {}", names.join(", "))
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Plain,
    Json,
    Csv,
}

/// What a command produced: the text to emit and the exit code.
struct Outcome {
    text: String,
    code: i32,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome {
            text,
            code: EXIT_OK,
        }
    }
}

/// Parses `argv` (program name first), runs the command and writes to the
/// given streams. Returns the process exit code.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(stderr, "{}", e.render());
                return EXIT_USAGE;
            }
            let _ = write!(stdout, "{}", e.render());
            return EXIT_OK;
        }
    };
    match execute(&cli) {
        Ok(outcome) => match emit(&cli.output, &outcome.text, stdout) {
            Ok(()) => outcome.code,
            Err(e) => {
                let _ = writeln!(stderr, "error: {e:#}");
                EXIT_USAGE
            }
        },
        Err(e) => {
            let _ = writeln!(stderr, "error: {e:#}");
            EXIT_USAGE
        }
    }
}

fn emit(output: &OutputArgs, text: &str, stdout: &mut dyn Write) -> Result<()> {
    match &output.out {
        Some(path) => {
            std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
        }
        None => stdout
            .write_all(text.as_bytes())
            .context("writing to stdout"),
    }
}

fn format_of(output: &OutputArgs) -> Format {
    if output.json {
        Format::Json
    } else if output.csv {
        Format::Csv
    } else {
        Format::Plain
    }
}

fn execute(cli: &Cli) -> Result<Outcome> {
    let mut limits = Limits::load(cli.output.config.as_deref())?;
    if let Some(n) = cli.output.max_words {
        limits.max_words = n;
    }
    let format = format_of(&cli.output);
    let jobs = usize::from(cli.output.jobs);
    match &cli.command {
        Command::Profile {
            word,
            file,
            alphabet,
        } => {
            let alphabet = Alphabet::new(*alphabet)?;
            match (word, file) {
                (Some(w), _) => {
                    profile_one(&parse_word(w, alphabet)?, format, &limits).map(Outcome::ok)
                }
                (None, Some(path)) => {
                    profile_file(path, alphabet, format, &limits).map(Outcome::ok)
                }
                (None, None) => bail!("profile needs WORD or --file PATH"),
            }
        }
        Command::Global { word, alphabet } => {
            let w = parse_word(word, Alphabet::new(*alphabet)?)?;
            let period = global_period(&w).with_context(|| format!("word {word:?}"))?;
            Ok(Outcome::ok(match format {
                Format::Json => json_line(
                    &json!({ "word": w, "period": period, "unbordered": period == w.len() }),
                ),
                Format::Csv => format!(
                    "word,period,unbordered\n{w},{period},{}\n",
                    period == w.len()
                ),
                Format::Plain => format!("{period}\n"),
            }))
        }
        Command::Enumerate {
            n,
            count_only,
            symmetry,
        } => enumerate(*n, *count_only, *symmetry, jobs, format, &limits).map(Outcome::ok),
        Command::Generate { family, sidecar } => {
            generate(family, sidecar.as_deref(), format, &limits).map(Outcome::ok)
        }
        Command::Verify(args) => run_verify(args, jobs, format, &limits),
        Command::Explore { problem } => explore(problem, format, &limits).map(Outcome::ok),
    }
}

fn parse_word(s: &str, alphabet: Alphabet) -> Result<Word> {
    Word::parse(s.trim(), alphabet).with_context(|| format!("malformed word {s:?}"))
}

fn json_line(value: &serde_json::Value) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("json value");
    text.push('\n');
    text
}

fn checked_profile(w: &Word, limits: &Limits) -> Result<PeriodProfile> {
    if w.len() > limits.max_profile_len {
        return Err(Error::ResourceGuard {
            estimated: w.len() as u64,
            ceiling: limits.max_profile_len as u64,
        })
        .with_context(|| {
            format!(
                "word of length {} exceeds the profile length limit",
                w.len()
            )
        });
    }
    profile(w).with_context(|| format!("cannot profile {w:?}", w = w.to_string()))
}

fn plain_profile(prof: &PeriodProfile) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "word            {}", prof.word);
    let _ = writeln!(s, "length          {}", prof.len());
    let _ = writeln!(s, "period          {}", prof.period);
    let lp: Vec<String> = prof.local_periods.iter().map(usize::to_string).collect();
    let _ = writeln!(s, "local periods   {}", lp.join(","));
    let cp: Vec<String> = prof.critical_points.iter().map(usize::to_string).collect();
    let _ = writeln!(s, "critical points {}", cp.join(","));
    let _ = writeln!(s, "eta             {}", prof.eta);
    let _ = writeln!(s, "density         {}/{}", prof.eta, prof.len() - 1);
    let _ = writeln!(s, "midpoint        {}", prof.midpoint);
    s
}

fn profile_one(w: &Word, format: Format, limits: &Limits) -> Result<String> {
    let prof = checked_profile(w, limits)?;
    Ok(match format {
        Format::Json => json_line(&serde_json::to_value(ProfileRecord::from(&prof))?),
        Format::Csv => {
            let mut s = format!("{CSV_HEADER}\n");
            for row in csv_rows(&prof) {
                s.push_str(&row);
                s.push('\n');
            }
            s
        }
        Format::Plain => plain_profile(&prof),
    })
}

fn profile_file(
    path: &Path,
    alphabet: Alphabet,
    format: Format,
    limits: &Limits,
) -> Result<String> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut profiles = Vec::new();
    for (k, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let w =
            parse_word(line, alphabet).with_context(|| format!("{}:{}", path.display(), k + 1))?;
        profiles.push(
            checked_profile(&w, limits).with_context(|| format!("{}:{}", path.display(), k + 1))?,
        );
    }
    Ok(match format {
        Format::Json => {
            let records: Vec<ProfileRecord> = profiles.iter().map(ProfileRecord::from).collect();
            json_line(&serde_json::to_value(records)?)
        }
        Format::Csv => {
            let mut s = format!("word,{CSV_HEADER}\n");
            for prof in &profiles {
                for row in csv_rows(prof) {
                    let _ = writeln!(s, "{},{row}", prof.word);
                }
            }
            s
        }
        Format::Plain => profiles
            .iter()
            .map(plain_profile)
            .collect::<Vec<_>>()
            .join("\n"),
    })
}

fn enumerate(
    n: usize,
    count_only: bool,
    symmetry: bool,
    jobs: usize,
    format: Format,
    limits: &Limits,
) -> Result<String> {
    let estimated = estimated_count(n);
    if estimated > limits.max_words {
        return Err(Error::ResourceGuard {
            estimated,
            ceiling: limits.max_words,
        })
        .context("enumeration exceeds the word ceiling (raise it with --max-words)");
    }
    if count_only {
        let count = count_square_free_parallel(n, symmetry, jobs)?;
        return Ok(match format {
            Format::Csv => format!("n,count\n{n},{count}\n"),
            _ => serde_json::to_string(&json!({ "n": n, "count": count }))? + "\n",
        });
    }
    let words = collect_square_free(n, jobs)?;
    Ok(match format {
        Format::Json => json_line(&json!({ "n": n, "count": words.len(), "words": words })),
        Format::Csv => {
            let mut s = String::from("word\n");
            for w in &words {
                let _ = writeln!(s, "{w}");
            }
            s
        }
        Format::Plain => {
            let mut s = String::new();
            for w in &words {
                let _ = writeln!(s, "{w}");
            }
            s
        }
    })
}

fn family_spec(family: &Family) -> Result<FamilySpec> {
    Ok(match family {
        Family::MPrefix { len } => FamilySpec::MPrefix(*len),
        Family::Tau { n } => FamilySpec::TauIter(*n),
        Family::Mn { n } => FamilySpec::Mn(*n),
        Family::Alpha { n } => FamilySpec::AlphaN(*n),
        Family::Beta { n } => FamilySpec::BetaN(*n),
        Family::Xn { n } => FamilySpec::Xn(*n),
        Family::Wx { n } => FamilySpec::WxN(*n),
        Family::WxOf { x } => FamilySpec::Wx(parse_word(x, Alphabet::TERNARY)?),
        Family::BetaFamily { count, bound } => FamilySpec::BetaFamily {
            count: *count,
            search_bound: *bound,
        },
    })
}

fn generate(
    family: &Family,
    sidecar: Option<&Path>,
    format: Format,
    limits: &Limits,
) -> Result<String> {
    let spec = family_spec(family)?;
    let longest = spec.max_length();
    if longest > limits.max_m_prefix as u128 {
        return Err(Error::ResourceGuard {
            estimated: longest.min(u64::MAX as u128) as u64,
            ceiling: limits.max_m_prefix as u64,
        })
        .context("generated word would exceed the length limit");
    }
    let words = spec.generate()?;
    let sidecars: Vec<FamilySidecar> = words
        .iter()
        .map(|w| FamilySidecar::describe(&spec, w))
        .collect();
    if let Some(path) = sidecar {
        let value = match sidecars.as_slice() {
            [one] => serde_json::to_value(one)?,
            many => serde_json::to_value(many)?,
        };
        std::fs::write(path, json_line(&value))
            .with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(match format {
        Format::Json => {
            let items: Vec<serde_json::Value> = words
                .iter()
                .zip(&sidecars)
                .map(|(w, side)| {
                    let mut v = serde_json::to_value(side).expect("sidecar");
                    v["word"] = json!(w);
                    v
                })
                .collect();
            json_line(&json!(items))
        }
        Format::Csv => {
            let mut s = String::from("word,length,squareFree\n");
            for (w, side) in words.iter().zip(&sidecars) {
                let _ = writeln!(s, "{w},{},{}", side.length, side.square_free);
            }
            s
        }
        Format::Plain => words.iter().map(|w| format!("{w}\n")).collect(),
    })
}

fn run_verify(args: &VerifyArgs, jobs: usize, format: Format, limits: &Limits) -> Result<Outcome> {
    let mut opts = VerifyOptions {
        jobs,
        max_words: limits.max_words,
        max_profile_len: limits.max_profile_len,
        ..VerifyOptions::default()
    };
    if let Some(samples) = args.samples {
        opts.upper_bound_samples = samples;
    }
    if let Some(seed) = args.seed {
        opts.seed = seed;
    }
    let report = match args.suite {
        TheoremId::AlphaExtremal => verify_alpha_extremal(),
        TheoremId::BetaEta => verify_beta_eta(args.count, args.bound, &opts)?,
        TheoremId::WxDensity => verify_wx_density(args.max.unwrap_or(args.n), &opts)?,
        suite => {
            let default_min = if suite == TheoremId::UpperBound {
                26
            } else {
                2
            };
            let min = args.min.unwrap_or(default_min);
            let Some(max) = args.max else {
                bail!("verify {} needs --max", suite.cli_name())
            };
            verify(suite, min, max, &opts)?
        }
    };
    let code = exit_code(&report);
    let text = match format {
        Format::Json => json_line(&report.to_json()),
        Format::Csv => report_csv(&report),
        Format::Plain => report_plain(&report),
    };
    Ok(Outcome { text, code })
}

/// 0 for a passing report, 1 for a failing one.
pub fn exit_code(report: &VerificationReport) -> i32 {
    if report.passed() {
        EXIT_OK
    } else {
        EXIT_FAIL
    }
}

fn report_plain(report: &VerificationReport) -> String {
    let json = report.to_json();
    let mut s = format!(
        "{} {} tested={} counterexamples={} elapsed={}ms\nrange {}\n",
        report.theorem,
        json["verdict"].as_str().unwrap_or("?"),
        report.tested,
        report.counterexamples.len(),
        report.elapsed.as_millis(),
        report.range
    );
    for c in report.counterexamples.iter().take(CONSOLE_COUNTEREXAMPLES) {
        let _ = writeln!(s, "  {} {}", c.word, c.detail);
    }
    if report.counterexamples.len() > CONSOLE_COUNTEREXAMPLES {
        let _ = writeln!(
            s,
            "  ... and {} more",
            report.counterexamples.len() - CONSOLE_COUNTEREXAMPLES
        );
    }
    s
}

fn report_csv(report: &VerificationReport) -> String {
    let mut s = String::from("theorem,word,detail\n");
    for c in &report.counterexamples {
        let _ = writeln!(
            s,
            "{},{},\"{}\"",
            report.theorem,
            c.word,
            c.detail.replace('"', "\"\"")
        );
    }
    s
}

fn explore(problem: &Problem, format: Format, limits: &Limits) -> Result<String> {
    match problem {
        Problem::Problem1 { min, max } => {
            let report = explore_problem1(*min, *max, limits.max_words)?;
            Ok(match format {
                Format::Json => json_line(&serde_json::to_value(&report)?),
                Format::Csv => {
                    let mut s = String::from("length,searched,witness\n");
                    for row in &report.rows {
                        let witness = row
                            .witness
                            .as_ref()
                            .map(Word::to_string)
                            .unwrap_or_default();
                        let _ = writeln!(s, "{},{},{witness}", row.length, row.searched);
                    }
                    s
                }
                Format::Plain => {
                    let mut s = format!("# {}\n", report.interpretation);
                    for row in &report.rows {
                        let status = match &row.witness {
                            Some(x) => format!("witness {x}"),
                            None => "exhausted".to_string(),
                        };
                        let _ = writeln!(
                            s,
                            "|x|={:<3} searched={:<8} {status}",
                            row.length, row.searched
                        );
                    }
                    s
                }
            })
        }
        Problem::Problem2 { max } => {
            let report = explore_problem2(*max, limits.max_words)?;
            Ok(match format {
                Format::Json => json_line(&serde_json::to_value(&report)?),
                Format::Csv => {
                    let mut s = String::from("length,words,minEta,minSlack,witnesses\n");
                    for r in &report.rows {
                        let _ = writeln!(
                            s,
                            "{},{},{},{},{}",
                            r.length,
                            r.words,
                            r.min_eta,
                            r.min_slack,
                            r.witnesses.len()
                        );
                    }
                    s
                }
                Format::Plain => {
                    let mut s =
                        String::from("# min over square-free w of 4*eta(w) - |w|, for 4 | |w|\n");
                    for r in &report.rows {
                        let _ = writeln!(
                            s,
                            "|w|={:<3} words={:<7} min eta={:<3} min 4eta-|w|={:<3} equality witnesses={}",
                            r.length,
                            r.words,
                            r.min_eta,
                            r.min_slack,
                            r.witnesses.len()
                        );
                    }
                    s
                }
            })
        }
    }
}
