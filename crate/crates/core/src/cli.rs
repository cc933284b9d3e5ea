//! The `scoregame` command line.
//!
//! Exit codes: 0 success, 1 violated verification suite, 2 usage or parse
//! error, 3 invalid universe configuration.

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::canonical::{canonicalize, Mode, ReductionTrace};
use crate::notation::{parse_with_warnings, print, Style};
use crate::order::{Comparator, Relation, Verdict};
use crate::score::{base_sets, final_scores, outcome};
use crate::sum::sum_all;
use crate::term::{negate, GameTerm};
use crate::toads_frogs::{tf_parse, tf_to_game};
use crate::universe::{enumerate_universe, UniverseError, UniverseSpec};
use crate::value::Score;
use crate::verify::{run_suite, Suite, VerifyConfig};

pub const EXIT_OK: u8 = 0;
pub const EXIT_VIOLATION: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_CONFIG: u8 = 3;

/// Marker in front of every result that rests on unproved comparisons.
pub const CONJECTURAL_MARKER: &str = "[conjectural]";

#[derive(Debug, Parser)]
#[command(name = "scoregame", version, about = "Exact engine for scoring-play combinatorial games")]
pub struct Cli {
    #[command(flatten)]
    pub config: RunConfig,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    /// Maximum depth of universe games.
    #[arg(long, global = true, default_value_t = 2)]
    pub depth: usize,
    /// Maximum option-set size of universe games.
    #[arg(long, global = true, default_value_t = 2)]
    pub width: usize,
    /// Comma-separated score alphabet, e.g. `-2,-1,0,1,2` or `0,1/2`.
    #[arg(long, global = true, default_value = "-2,-1,0,1,2", allow_hyphen_values = true)]
    pub scores: String,
    /// Maximum vertex count of universe games, or `none`.
    #[arg(long, global = true, default_value = "3")]
    pub nodes: String,
    #[arg(long, global = true, value_enum, default_value_t = ModeArg::Sound)]
    pub mode: ModeArg,
    /// Reduction-order seed; 0 is the default order.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Sound,
    Conjectural,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Sound => Mode::Sound,
            ModeArg::Conjectural => Mode::Conjectural,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    /// One JSON object per line.
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RelationArg {
    Ge,
    Le,
    Eq,
    All,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Final scores, base sets and outcome class.
    Eval { expr: String },
    /// Long-rule sum of two or more games.
    Sum {
        #[arg(num_args = 2.., required = true)]
        exprs: Vec<String>,
    },
    /// Negation.
    Neg { expr: String },
    /// Compare two games against the configured universe.
    Cmp {
        g: String,
        h: String,
        #[arg(long, value_enum, default_value_t = RelationArg::All)]
        relation: RelationArg,
    },
    /// Canonical form with the reduction trace.
    Canon { expr: String },
    /// List the configured universe.
    Enum {
        /// Print only the number of games.
        #[arg(long)]
        count: bool,
    },
    /// Compile a Toads-and-Frogs strip over T, F, B.
    Tf { position: String },
    /// Run a verification suite, or `all`.
    Verify {
        suite: String,
        /// Outcome-template grid is -N..=N.
        #[arg(long, default_value_t = 4)]
        grid: i64,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Config(String),
}

impl From<UniverseError> for Failure {
    fn from(e: UniverseError) -> Self {
        Failure::Config(e.to_string())
    }
}

impl RunConfig {
    pub fn spec(&self) -> Result<UniverseSpec, String> {
        let mut scores = Vec::new();
        for part in self.scores.split(',') {
            let score: Score = part.trim().parse().map_err(|e| format!("--scores: {e}"))?;
            scores.push(score);
        }
        let nodes = match self.nodes.trim() {
            "none" => None,
            n => Some(n.parse::<u64>().map_err(|_| format!("--nodes: expected a count or `none`, found {n:?}"))?),
        };
        UniverseSpec::new(self.depth, self.width, scores, nodes).map_err(|e| e.to_string())
    }
}

fn parse_game(text: &str, err: &mut dyn Write) -> Result<GameTerm, Failure> {
    match parse_with_warnings(text) {
        Ok((g, warnings)) => {
            for w in warnings {
                let _ = writeln!(err, "warning: {w}");
            }
            Ok(g)
        }
        Err(e) => Err(Failure::Usage(format!("cannot parse {text:?}: {e}"))),
    }
}

fn emit(out: &mut dyn Write, line: impl AsRef<str>) {
    let _ = writeln!(out, "{}", line.as_ref());
}

fn summary(g: &GameTerm) -> Value {
    let (sl, sr) = final_scores(g);
    json!({
        "term": g.to_string(),
        "sl": sl.to_string(),
        "sr": sr.to_string(),
        "outcome": outcome(g).to_string(),
    })
}

fn witness_of(verdict: &Verdict) -> Value {
    verdict.refutation().map_or(Value::Null, |r| Value::String(r.context.to_string()))
}

/// Parses `args` and runs the command, writing results to `out` and
/// diagnostics to `err`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return EXIT_USAGE;
            }
            let _ = write!(out, "{e}");
            return EXIT_OK;
        }
    };
    match dispatch(&cli, out, err) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Config(msg)) => {
            let _ = writeln!(err, "error: invalid configuration: {msg}");
            EXIT_CONFIG
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<u8, Failure> {
    let config = &cli.config;
    let json = config.format == Format::Json;
    match &cli.command {
        Command::Eval { expr } => {
            let g = parse_game(expr, err)?;
            let (left_set, right_set) = base_sets(&g);
            if json {
                let mut record = summary(&g);
                record["sets"] = json!([left_set.name(), right_set.name()]);
                emit(out, record.to_string());
            } else {
                let (sl, sr) = final_scores(&g);
                emit(out, format!("SL={sl} SR={sr} outcome={} sets={left_set},{right_set}", outcome(&g)));
            }
        }
        Command::Sum { exprs } => {
            let games = exprs.iter().map(|e| parse_game(e, err)).collect::<Result<Vec<_>, _>>()?;
            let total = sum_all(&games);
            emit(out, if json { summary(&total).to_string() } else { total.to_string() });
        }
        Command::Neg { expr } => {
            let g = negate(&parse_game(expr, err)?);
            emit(out, if json { summary(&g).to_string() } else { g.to_string() });
        }
        Command::Cmp { g, h, relation } => {
            let (g, h) = (parse_game(g, err)?, parse_game(h, err)?);
            let cmp = Comparator::new(&config.spec().map_err(Failure::Config)?)?;
            let relations = match relation {
                RelationArg::Ge => vec![Relation::Ge],
                RelationArg::Le => vec![Relation::Le],
                RelationArg::Eq => vec![Relation::Eq],
                RelationArg::All => vec![Relation::Ge, Relation::Le, Relation::Eq],
            };
            for relation in relations {
                let verdict = cmp.verdict(relation, &g, &h);
                if json {
                    let record = json!({
                        "term": g.to_string(),
                        "other": h.to_string(),
                        "relation": relation.symbol(),
                        "verdict": verdict.to_string(),
                        "witness": witness_of(&verdict),
                    });
                    emit(out, record.to_string());
                } else {
                    emit(out, format!("{} {verdict}", relation.symbol()));
                }
            }
        }
        Command::Canon { expr } => {
            let g = parse_game(expr, err)?;
            let mode = Mode::from(config.mode);
            let cmp = Comparator::new(&config.spec().map_err(Failure::Config)?)?;
            let (canon, trace) = canonicalize(&g, &cmp, mode, config.seed);
            let marker = if mode == Mode::Conjectural { format!("{CONJECTURAL_MARKER} ") } else { String::new() };
            if json {
                let mut record = summary(&canon);
                record["mode"] = json!(mode.to_string());
                record["conjectural"] = json!(mode == Mode::Conjectural);
                record["steps"] = json!(trace.steps.iter().map(|s| s.to_string()).collect::<Vec<_>>());
                record["skipped"] = json!(skipped_lines(&trace));
                emit(out, record.to_string());
            } else {
                emit(out, format!("{marker}{canon}"));
                for (i, step) in trace.steps.iter().enumerate() {
                    emit(out, format!("  {}. {step}", i + 1));
                }
                for line in skipped_lines(&trace) {
                    emit(out, format!("  {line}"));
                }
            }
        }
        Command::Enum { count } => {
            let spec = config.spec().map_err(Failure::Config)?;
            if *count {
                let n = spec.count();
                emit(out, if json { json!({ "count": n.to_string() }).to_string() } else { n.to_string() });
            } else {
                for g in enumerate_universe(&spec)? {
                    emit(out, if json { summary(&g).to_string() } else { print(&g, Style::Compact) });
                }
            }
        }
        Command::Tf { position } => {
            let p = tf_parse(position).map_err(|e| Failure::Usage(format!("cannot parse position {position:?}: {e}")))?;
            let g = tf_to_game(&p);
            if json {
                let mut record = summary(&g);
                record["position"] = json!(p.strip());
                emit(out, record.to_string());
            } else {
                let (sl, sr) = final_scores(&g);
                emit(out, format!("{g}"));
                emit(out, format!("SL={sl} SR={sr} outcome={}", outcome(&g)));
            }
        }
        Command::Verify { suite, grid } => {
            let suites = if suite == "all" {
                Suite::ALL.to_vec()
            } else {
                vec![suite.parse::<Suite>().map_err(Failure::Usage)?]
            };
            if *grid < 0 {
                return Err(Failure::Usage("--grid must be non-negative".into()));
            }
            let verify = VerifyConfig {
                seed: if config.seed == 0 { VerifyConfig::default().seed } else { config.seed },
                template_grid: (-grid..=*grid).collect(),
                ..VerifyConfig::with_spec(config.spec().map_err(Failure::Config)?)
            };
            let mut failed = false;
            for suite in suites {
                let report = run_suite(suite, &verify)?;
                failed |= !report.passed();
                emit(out, if json { serde_json::to_string(&report).expect("serializable") } else { report.to_string() });
            }
            return Ok(if failed { EXIT_VIOLATION } else { EXIT_OK });
        }
    }
    Ok(EXIT_OK)
}

fn skipped_lines(trace: &ReductionTrace) -> Vec<String> {
    trace
        .skipped
        .iter()
        .map(|r| format!("skipped reversal of {} through {} (no replacement options)", r.option, r.witness))
        .collect()
}

/// Entry point for the binary.
pub fn main() -> ExitCode {
    let code = run(std::env::args_os(), &mut std::io::stdout().lock(), &mut std::io::stderr().lock());
    ExitCode::from(code)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_text(args: &[&str]) -> (u8, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("scoregame").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn eval_reports() {
        assert_eq!(run_text(&["eval", "{1|0|0}"]).1, "SL=1 SR=0 outcome=L sets=L_>,R_=\n");
        assert_eq!(run_text(&["eval", "0"]).1, "SL=0 SR=0 outcome=T sets=L_=,R_=\n");
        let (code, out, _) = run_text(&["eval", "{{.|0|{-1|-1|.}}|0|{{.|1|1}|0|.}}"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("SL=-1 SR=1 outcome=P"));
    }

    #[test]
    fn parse_errors_exit_2() {
        let (code, out, err) = run_text(&["eval", "{.|.}"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(out.is_empty());
        assert!(err.contains("3..4"), "{err}");
        assert_eq!(run_text(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(run_text(&["tf", "TXF"]).0, EXIT_USAGE);
        assert_eq!(run_text(&["verify", "nope"]).0, EXIT_USAGE);
    }

    #[test]
    fn config_errors_exit_3() {
        assert_eq!(run_text(&["enum", "--scores", "1/0"]).0, EXIT_CONFIG);
        assert_eq!(run_text(&["enum", "--depth", "5", "--nodes", "none"]).0, EXIT_CONFIG);
        assert_eq!(run_text(&["enum", "--nodes", "0"]).0, EXIT_CONFIG);
    }

    #[test]
    fn cmp_equivalent_pair() {
        let (code, out, _) = run_text(&["cmp", "{1|1|1}", "{1|0|1}"]);
        assert_eq!(code, 0);
        assert!(out.lines().any(|l| l == "= Proved(Equivalent)"), "{out}");
        let (_, out, _) = run_text(&["cmp", "0", "1", "--relation", "ge"]);
        assert_eq!(out, ">= Refuted(X=0, O=L_>)\n");
    }

    #[test]
    fn canon_with_trace() {
        let (code, out, _) = run_text(&["canon", "{{3|0|4},{3|1|4}|0|.}"]);
        assert_eq!(code, 0);
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines[0], "{{3|0|4}|0|.}");
        assert_eq!(lines.len(), 2);
        assert!(lines[1].contains("domination"));
        let (_, out, _) = run_text(&["canon", "{1|0|.}", "--mode", "conjectural"]);
        assert!(out.starts_with(CONJECTURAL_MARKER));
    }

    #[test]
    fn json_lines() {
        let (_, out, _) = run_text(&["eval", "{1|0|0}", "--format", "json"]);
        let v: Value = serde_json::from_str(out.trim()).unwrap();
        assert_eq!(v["sl"], "1");
        assert_eq!(v["outcome"], "L");
        let (_, out, _) = run_text(&["cmp", "0", "1", "--relation", "ge", "--format", "json"]);
        let v: Value = serde_json::from_str(out.trim()).unwrap();
        assert_eq!(v["witness"], "0");
        let (_, out, _) = run_text(&["enum", "--depth", "0", "--scores", "-1,0,1", "--format", "json"]);
        assert_eq!(out.lines().count(), 3);
    }

    #[test]
    fn enum_and_tf() {
        assert_eq!(run_text(&["enum", "--count"]).1, "780\n");
        assert_eq!(run_text(&["enum", "--depth", "0", "--scores", "0"]).1, "0\n");
        let (_, out, _) = run_text(&["tf", "TBF"]);
        assert_eq!(out.lines().next(), Some("{{.|0|{-1|-1|.}}|0|{{.|1|1}|0|.}}"));
    }

    #[test]
    fn sum_and_neg() {
        assert_eq!(run_text(&["sum", "1", "2", "{1|0|0}"]).1, "{4|3|3}\n");
        assert_eq!(run_text(&["neg", "{1|0|0}"]).1, "{0|0|-1}\n");
        assert_eq!(run_text(&["sum", "1"]).0, EXIT_USAGE);
    }

    #[test]
    fn verify_exit_codes() {
        let (code, out, _) = run_text(&["verify", "fixtures"]);
        assert_eq!(code, 0, "{out}");
        let (code, out, _) = run_text(&["verify", "outcome-template", "--grid", "1"]);
        assert_eq!(code, EXIT_VIOLATION);
        assert!(out.contains("VIOLATED"));
    }

    #[test]
    fn output_is_deterministic() {
        let args = ["canon", "{{3|0|4},{3|1|4}|0|.}", "--seed", "5"];
        assert_eq!(run_text(&args), run_text(&args));
    }
}
