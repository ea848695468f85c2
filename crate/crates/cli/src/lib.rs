//! The `prohibit` command line, as a library so it can be driven in-process.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use prohibit_core::corpus::{ANBNCN_WITNESS, IRREGULAR_VERBS};
use prohibit_core::oracle::member_slice;
use prohibit_core::{
    construct_difference, decidability_status, parse_grammar_file, to_file_text, verify_relation,
    Budget, Claim, Error, Grammar, ProhibitionDecider, ProhibitionGrammar, Word,
};

pub const EXIT_USAGE: i32 = 64;
pub const EXIT_PARSE: i32 = 65;
pub const EXIT_UNSUPPORTED: i32 = 66;
pub const EXIT_INDEFINITE: i32 = 67;

/// Words shown by the irregular-verbs demo.
pub const DEMO_VERBS: [&str; 8] = [
    "wear ed", "keep ed", "go ed", "adopt ed", "walk ed", "wore", "kept", "went",
];

/// Slice depth for the a^n b^n c^n demo.
pub const DEMO_WITNESS_DEPTH: usize = 9;

#[derive(Debug, Parser)]
#[command(
    name = "prohibit",
    version,
    about = "Grammars with prohibition: L(positive) minus L(negative)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the class of each component, the pair class and its decidability.
    Classify { file: PathBuf },
    /// Decide whether a word is generated.
    Member {
        file: PathBuf,
        /// Space-separated tokens; `eps` or "" for the empty word.
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        /// Search caps for Type0 components: STEPS,LENGTH.
        #[arg(long, value_parser = parse_budget)]
        budget: Option<(usize, usize)>,
        /// Print component verdicts and derivations.
        #[arg(long)]
        trace: bool,
    },
    /// Write a single grammar for the difference of a (3,3) or (2,3) pair.
    Construct {
        file: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print every generated word up to a length, one per line.
    Sample {
        file: PathBuf,
        #[arg(long)]
        max_len: usize,
    },
    /// Check a constructive claim (T1, T2, T8, T9, P1) on the file's pair.
    Verify {
        file: PathBuf,
        #[arg(long)]
        claim: String,
        #[arg(long)]
        max_len: Option<usize>,
    },
    /// Run the bundled irregular-verbs and a^n b^n c^n showcases.
    Demo,
}

fn parse_budget(s: &str) -> Result<(usize, usize), String> {
    let (steps, len) = s
        .split_once(',')
        .ok_or_else(|| "expected STEPS,LENGTH".to_string())?;
    let parse = |x: &str| x.trim().parse::<usize>().map_err(|e| format!("{x:?}: {e}"));
    Ok((parse(steps)?, parse(len)?))
}

/// Exit code plus captured output of one invocation.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(code: i32, stdout: String) -> Self {
        Outcome {
            code,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(code: i32, message: impl std::fmt::Display) -> Self {
        Outcome {
            code,
            stdout: String::new(),
            stderr: format!("prohibit: {message}\n"),
        }
    }
}

/// Runs one invocation. `args[0]` is the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome::ok(0, text)
                }
                _ => Outcome {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    match dispatch(cli.command) {
        Ok(outcome) => outcome,
        Err(failure) => failure,
    }
}

fn load(path: &PathBuf) -> Result<ProhibitionGrammar, Outcome> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Outcome::fail(EXIT_PARSE, format!("{}: {e}", path.display())))?;
    parse_grammar_file(&text)
        .map_err(|e| Outcome::fail(EXIT_PARSE, format!("{}: {e}", path.display())))
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Indefinite(_) => EXIT_INDEFINITE,
        Error::UnsupportedPair(_) | Error::SignatureMismatch { .. } => EXIT_UNSUPPORTED,
        Error::UnsupportedClaim(_) | Error::Derivation(_) => EXIT_USAGE,
        _ => EXIT_PARSE,
    }
}

fn failed(e: Error) -> Outcome {
    Outcome::fail(exit_code(&e), e)
}

fn dispatch(command: Command) -> Result<Outcome, Outcome> {
    match command {
        Command::Classify { file } => {
            let pg = load(&file)?;
            Ok(Outcome::ok(0, classify_text(&pg)))
        }
        Command::Member {
            file,
            word,
            budget,
            trace,
        } => {
            let pg = load(&file)?;
            let w = Word::parse(&word);
            let budget = match budget {
                Some((steps, len)) => {
                    Budget::new(steps, len).map_err(|e| Outcome::fail(EXIT_USAGE, e))?
                }
                None => Budget::for_word(&w),
            };
            let decider = ProhibitionDecider::new(&pg).map_err(failed)?;
            let report = decider.member(&w, &budget).map_err(failed)?;
            let mut out = format!("{}\n", report.verdict);
            if trace {
                for (label, c) in [
                    ("positive", &report.positive),
                    ("negative", &report.negative),
                ] {
                    let _ = writeln!(out, "{label}: {} ({})", c.verdict, c.class);
                    if let Some(stats) = c.search {
                        let _ = writeln!(
                            out,
                            "{label} search: {} expansions, saturated {}, capped {}",
                            stats.expansions, stats.saturated, stats.capped
                        );
                    }
                    if let Some(d) = &c.evidence {
                        let _ = writeln!(out, "{label} derivation:");
                        out.push_str(&d.to_string());
                    }
                }
            }
            Ok(Outcome::ok(report.verdict.exit_code(), out))
        }
        Command::Construct { file, out } => {
            let pg = load(&file)?;
            let g = construct_difference(&pg).map_err(failed)?;
            let class = g.classify();
            let empty = Grammar::empty(g.alphabet.clone());
            let result = ProhibitionGrammar::new(g, empty).map_err(|e| failed(e.into()))?;
            std::fs::write(&out, to_file_text(&result))
                .map_err(|e| Outcome::fail(EXIT_USAGE, format!("{}: {e}", out.display())))?;
            Ok(Outcome::ok(
                0,
                format!("wrote {} ({class})\n", out.display()),
            ))
        }
        Command::Sample { file, max_len } => {
            let pg = load(&file)?;
            let slice = member_slice(&pg, max_len).map_err(failed)?;
            Ok(Outcome::ok(0, slice.to_string()))
        }
        Command::Verify {
            file,
            claim,
            max_len,
        } => {
            let claim: Claim = claim.parse().map_err(failed)?;
            let pg = load(&file)?;
            let n = max_len.unwrap_or(claim.default_depth());
            let report = verify_relation(claim, &[pg], n).map_err(failed)?;
            let code = if report.is_consistent() { 0 } else { 1 };
            Ok(Outcome::ok(code, report.to_string()))
        }
        Command::Demo => demo().map_err(failed),
    }
}

/// Output of `classify`.
pub fn classify_text(pg: &ProhibitionGrammar) -> String {
    let pc = prohibit_core::pair_class(pg);
    format!(
        "positive: {}\nnegative: {}\npair: {pc}\nstatus: {}\n",
        pc.positive,
        pc.negative,
        decidability_status(pc)
    )
}

fn demo() -> Result<Outcome, Error> {
    let mut out = String::from("irregular verbs\n");
    let verbs = parse_grammar_file(IRREGULAR_VERBS)?;
    let decider = ProhibitionDecider::new(&verbs)?;
    for text in DEMO_VERBS {
        let w = Word::parse(text);
        let verdict = decider.member(&w, &Budget::for_word(&w))?.verdict;
        let _ = writeln!(out, "{w} → {verdict}");
    }
    let witness = parse_grammar_file(ANBNCN_WITNESS)?;
    let pc = prohibit_core::pair_class(&witness);
    let _ = writeln!(
        out,
        "\na*b*c* minus {{a^i b^j c^k : i != j or j != k}}, pair {pc}, words up to length {DEMO_WITNESS_DEPTH}"
    );
    out.push_str(&member_slice(&witness, DEMO_WITNESS_DEPTH)?.to_string());
    Ok(Outcome::ok(0, out))
}
