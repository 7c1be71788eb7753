//! Argument parsing and the subcommands.
//!
//! Exit status: 0 when every check passes, 1 when a mathematical failure is
//! found and printed, 2 for usage, parse, I/O and file-format errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use freeavg_core::linearalg::{
    check_antipode_averaging, check_averaging_lie, check_hopf_equivalence, check_leibniz, AntipodeVerdict, LieFailure,
};
use freeavg_core::normalform::{describe_violation, first_violation};
use freeavg_core::structures::{
    search_averaging_ops, AveragingLaw, FiniteAveragingGroup, FiniteGroup, OperatorTable, StructureError,
};
use freeavg_core::{extend_hom, FreeAveragingGroup, Generator, Mutation, NormalWord, Oracle, Strategy, Word};

use crate::error::CliError;
use crate::formats::{load_group, load_lie, load_matrix, load_operator, parse_assignment};
use crate::suites::{self, Suite, SuiteConfig};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

/// Largest carrier for which `hopf-check` without an operator tries every map.
pub const EXHAUSTIVE_HOPF_CAP: usize = 5;

#[derive(Debug, Parser)]
#[command(name = "freeavg", version, about = "Normal forms, arithmetic and law checks for free averaging groups")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum StrategyArg {
    InnermostLeftmost,
    OutermostRightmost,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Strategy {
        match s {
            StrategyArg::InnermostLeftmost => Strategy::InnermostLeftmost,
            StrategyArg::OutermostRightmost => Strategy::OutermostRightmost,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Rewrite a word into averaging-word normal form.
    Normalize {
        word: String,
        /// Use the rewriting normalizer (the default and only normalizer).
        #[arg(long)]
        oracle: bool,
        /// Print every rewrite step before the result.
        #[arg(long)]
        trace: bool,
        /// Only report whether the word is already normal.
        #[arg(long, conflicts_with = "trace")]
        check_only: bool,
        #[arg(long, value_enum, default_value = "innermost-leftmost")]
        strategy: StrategyArg,
    },
    /// Multiply two words.
    Mul { u: String, v: String },
    /// Apply the operator, `--iter` times.
    Op {
        w: String,
        #[arg(long, default_value_t = 1)]
        iter: u32,
    },
    /// Invert a word.
    Inv { w: String },
    /// Run randomized law suites.
    Check {
        #[arg(long, default_value = "all", value_parser = parse_suite)]
        suite: Suite,
        #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        max_depth: usize,
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..))]
        max_breadth: u64,
        /// Generator names, comma- or space-separated.
        #[arg(long, default_value = "x,y,z")]
        alphabet: String,
        #[arg(long, hide = true, value_parser = parse_mutation)]
        mutation: Option<Mutation>,
    },
    /// Evaluate a word in a finite averaging group.
    Eval {
        #[arg(long)]
        group: PathBuf,
        /// Generator assignment, e.g. "x=a,y=b".
        #[arg(long)]
        map: String,
        word: String,
    },
    /// List every averaging operator on a finite group.
    SearchOps {
        #[arg(long)]
        group: PathBuf,
        /// Keep only operators with A(e) = e.
        #[arg(long)]
        pointed: bool,
    },
    /// Compare the group-level and algebra-level averaging verdicts.
    HopfCheck {
        #[arg(long)]
        group: PathBuf,
        /// Operator file; defaults to the group file's `op`, else every map.
        #[arg(long)]
        op: Option<PathBuf>,
    },
    /// Check an operator on a Lie algebra and its induced Leibniz bracket.
    LieCheck {
        #[arg(long)]
        structure: PathBuf,
        #[arg(long)]
        operator: PathBuf,
    },
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse()
}

fn parse_mutation(s: &str) -> Result<Mutation, String> {
    Mutation::from_name(s).ok_or_else(|| {
        let names: Vec<&str> = Mutation::ALL.iter().map(|m| m.name()).collect();
        format!("unknown mutation {s:?} (expected one of {})", names.join(", "))
    })
}

/// Runs the command line `args` (including the program name) and returns
/// the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli.cmd, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

type Outcome = Result<u8, CliError>;

fn dispatch(cmd: Cmd, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    match cmd {
        Cmd::Normalize { word, oracle: _, trace, check_only, strategy } => {
            normalize(&word, trace, check_only, strategy.into(), out, err)
        }
        Cmd::Mul { u, v } => {
            let (u, v) = (element(&u, err)?, element(&v, err)?);
            print(out, FreeAveragingGroup::new().diamond(&u, &v))
        }
        Cmd::Op { w, iter } => {
            let w = element(&w, err)?;
            print(out, FreeAveragingGroup::new().op_iter(&w, iter))
        }
        Cmd::Inv { w } => {
            let w = element(&w, err)?;
            print(out, FreeAveragingGroup::new().inverse(&w))
        }
        Cmd::Check { suite, trials, seed, max_depth, max_breadth, alphabet, mutation } => {
            let alphabet = parse_alphabet(&alphabet)?;
            let cfg = SuiteConfig {
                suite,
                trials: trials as usize,
                seed,
                max_depth,
                max_breadth: max_breadth as usize,
                alphabet,
                mutation,
            };
            let report = suites::run(&cfg);
            write!(out, "{}", report.body()).map_err(io_err)?;
            writeln!(out, "{}", report.timing()).map_err(io_err)?;
            Ok(if report.ok() { EXIT_OK } else { EXIT_FAIL })
        }
        Cmd::Eval { group, map, word } => eval(&group, &map, &word, out, err),
        Cmd::SearchOps { group, pointed } => search_ops(&group, pointed, out, err),
        Cmd::HopfCheck { group, op } => hopf_check(&group, op.as_deref(), out, err),
        Cmd::LieCheck { structure, operator } => lie_check(&structure, &operator, out),
    }
}

fn io_err(e: std::io::Error) -> CliError {
    CliError::Io { path: "<stdout>".to_string(), source: e }
}

fn print(out: &mut dyn Write, w: impl std::fmt::Display) -> Outcome {
    writeln!(out, "{w}").map_err(io_err)?;
    Ok(EXIT_OK)
}

fn parse_alphabet(text: &str) -> Result<Vec<Generator>, CliError> {
    let gens = text
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| Generator::new(s).map_err(|e| CliError::Usage(format!("--alphabet: {e}"))))
        .collect::<Result<Vec<_>, _>>()?;
    if gens.is_empty() {
        return Err(CliError::Usage("--alphabet must name at least one generator".to_string()));
    }
    Ok(gens)
}

/// Parses a word as a group element, rewriting non-normal input first.
fn element(text: &str, err: &mut dyn Write) -> Result<NormalWord, CliError> {
    let w = Word::parse(text)?;
    if let Ok(n) = NormalWord::new(w.clone()) {
        return Ok(n);
    }
    let n = Oracle::default().normalize(&w).map_err(|e| CliError::Invalid(format!("{text}: {e}")))?.word;
    let _ = writeln!(err, "note: `{text}` is not an averaging word; using its normal form `{n}`");
    Ok(n)
}

fn normalize(
    text: &str,
    trace: bool,
    check_only: bool,
    strategy: Strategy,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Outcome {
    let w = Word::parse(text)?;
    if check_only {
        return match first_violation(&w) {
            None => print(out, "normal"),
            Some(v) => print(out, format_args!("not normal: {}", describe_violation(&v))),
        };
    }
    let oracle = if trace { Oracle::new(strategy).with_trace() } else { Oracle::new(strategy) };
    match oracle.normalize(&w) {
        Ok(n) => {
            if let Some(t) = n.trace {
                write!(out, "{t}").map_err(io_err)?;
            }
            print(out, n.word)
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}; last word: {}", e.partial);
            Ok(EXIT_FAIL)
        }
    }
}

/// Loads a group file; failing group axioms are a mathematical failure.
fn group_or_fail(path: &Path, err: &mut dyn Write) -> Result<Option<(FiniteGroup, Option<OperatorTable>)>, CliError> {
    match load_group(path)? {
        Ok(g) => Ok(Some(g)),
        Err(e) => {
            let _ = writeln!(err, "{}: not a group: {e}", path.display());
            Ok(None)
        }
    }
}

fn averaging_failure(g: &FiniteGroup, e: &StructureError) -> String {
    match e {
        StructureError::NotAveraging(f) => {
            let law = match f.law {
                AveragingLaw::Left => "A(g)A(h) = A(A(g)h)",
                AveragingLaw::Right => "A(g)A(h) = A(gA(h))",
            };
            format!("{law} fails at (g, h) = ({}, {})", g.name(f.g), g.name(f.h))
        }
        e => e.to_string(),
    }
}

fn eval(path: &Path, map: &str, word: &str, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let Some((g, op)) = group_or_fail(path, err)? else { return Ok(EXIT_FAIL) };
    let op = op.ok_or_else(|| CliError::Format(format!("{}: group file has no `op`", path.display())))?;
    let h = match FiniteAveragingGroup::new(g.clone(), op) {
        Ok(h) => h,
        Err(e) => {
            let _ = writeln!(err, "{}: not an averaging group: {}", path.display(), averaging_failure(&g, &e));
            return Ok(EXIT_FAIL);
        }
    };
    let mut assign = Vec::new();
    for (k, v) in parse_assignment(map)? {
        let gen = Generator::new(&k).map_err(|e| CliError::Usage(format!("--map: {e}")))?;
        let val =
            g.index_of(&v).ok_or_else(|| CliError::Usage(format!("--map: {v:?} is not an element of the group")))?;
        assign.push((gen, val));
    }
    let w = element(word, err)?;
    let f = extend_hom(&h, |x: &Generator| assign.iter().find(|(k, _)| k == x).map(|&(_, v)| v));
    let value = f.apply(&w).map_err(|e| CliError::Usage(format!("--map: no element assigned to `{}`", e.0)))?;
    print(out, g.name(value))
}

fn describe_op(g: &FiniteGroup, op: &OperatorTable) -> String {
    g.elements().map(|a| format!("{}->{}", g.name(a), g.name(op.apply(a)))).collect::<Vec<_>>().join(" ")
}

fn search_ops(path: &Path, pointed: bool, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let Some((g, _)) = group_or_fail(path, err)? else { return Ok(EXIT_FAIL) };
    let ops = search_averaging_ops(&g, pointed).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))?;
    for op in &ops {
        writeln!(out, "{}", describe_op(&g, op)).map_err(io_err)?;
    }
    let kind = if pointed { "pointed averaging operators" } else { "averaging operators" };
    print(out, format_args!("{} {kind}", ops.len()))
}

fn hopf_check(path: &Path, op_path: Option<&Path>, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let Some((g, file_op)) = group_or_fail(path, err)? else { return Ok(EXIT_FAIL) };
    let op = match op_path {
        Some(p) => Some(load_operator(p, &g)?),
        None => file_op,
    };
    if let Some(op) = op {
        return match check_hopf_equivalence(&g, &op, 0) {
            Ok(v) => print(out, v),
            Err(d) => {
                writeln!(out, "verdicts disagree: {}", d.0).map_err(io_err)?;
                Ok(EXIT_FAIL)
            }
        };
    }
    let n = g.order();
    if n > EXHAUSTIVE_HOPF_CAP {
        return Err(CliError::Usage(format!(
            "{}: trying every map needs order <= {EXHAUSTIVE_HOPF_CAP}; pass --op",
            path.display()
        )));
    }
    let (mut averaging, mut disagreements) = (0, 0);
    let total = n.pow(n as u32);
    for code in 0..total {
        let op = OperatorTable((0..n).map(|i| code / n.pow(i as u32) % n).collect());
        let (verdict, tag) = match check_hopf_equivalence(&g, &op, code as u64) {
            Ok(v) => (v, ""),
            Err(d) => {
                disagreements += 1;
                (d.0, "  DISAGREE")
            }
        };
        averaging += usize::from(verdict.group);
        writeln!(out, "{}: {verdict}{tag}", describe_op(&g, &op)).map_err(io_err)?;
    }
    writeln!(out, "{total} maps, {averaging} averaging, {disagreements} disagreements").map_err(io_err)?;
    let antipode = check_antipode_averaging(&g, 0);
    let line = match &antipode {
        AntipodeVerdict::Verified => "antipode: S^2 = S and S is averaging".to_string(),
        AntipodeVerdict::HypothesisFails { witness } => {
            format!("antipode: S^2 != S ({} is not an involution), not applicable", g.name(*witness))
        }
        AntipodeVerdict::Refuted(f) => format!("antipode: S^2 = S but S is not averaging: {f}"),
    };
    writeln!(out, "{line}").map_err(io_err)?;
    let failed = disagreements > 0 || matches!(antipode, AntipodeVerdict::Refuted(_));
    Ok(if failed { EXIT_FAIL } else { EXIT_OK })
}

fn lie_check(structure: &Path, operator: &Path, out: &mut dyn Write) -> Outcome {
    let l = load_lie(structure)?;
    let a = load_matrix(operator)?;
    match check_averaging_lie(&l, &a) {
        Ok(()) => writeln!(out, "averaging: ok").map_err(io_err)?,
        Err(e @ LieFailure::DimensionMismatch { .. }) => return Err(CliError::Format(e.to_string())),
        Err(e) => {
            writeln!(out, "averaging: FAIL: {e}").map_err(io_err)?;
            return Ok(EXIT_FAIL);
        }
    }
    match check_leibniz(&l, &a) {
        Ok(()) => print(out, "leibniz: ok"),
        Err((i, j, k)) => {
            writeln!(out, "leibniz: FAIL at (e{}, e{}, e{})", i + 1, j + 1, k + 1).map_err(io_err)?;
            Ok(EXIT_FAIL)
        }
    }
}
