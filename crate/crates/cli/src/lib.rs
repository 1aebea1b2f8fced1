//! The `boolfn` command line.
//!
//! [`run`] takes the argument list and the three standard streams and returns
//! the exit code: 0 on success, 1 when a sweep finds an assertion failure, 2
//! on usage or input errors. Diagnostics only ever go to the error stream, and
//! the data stream is written in one piece after the command has succeeded.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::PathBuf;

use boolfn_core::algebra::{algebra_summary, AlgebraSummary};
use boolfn_core::chains::{
    alternation_along, decrease_along, gap_family_chain, glued_composition_chain, Chain,
};
use boolfn_core::families::{address, compose_power, gap_family, BasicKind};
use boolfn_core::measures::{alternation_decrease, measure_report, MeasureReport};
use boolfn_core::verify::{measure_matrix_csv, registry, run_check_suite, CheckConfig, Population};
use boolfn_core::{
    parse_corpus, set_dense_cap, BooleanFunction, Counted, Error, LazyFunction, TruthTable,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(
    name = "boolfn",
    version,
    about = "Exact complexity measures of Boolean functions"
)]
struct Cli {
    /// Largest arity stored as a dense truth table (also BOOLFN_DENSE_CAP).
    #[arg(long, global = true, value_name = "N")]
    dense_cap: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print every measure and the algebraic summary of a function.
    Analyze(AnalyzeArgs),
    /// Generate a witness family member or a composition power.
    Family {
        #[command(subcommand)]
        which: FamilyCommand,
    },
    /// Build or evaluate maximal chains.
    Chain {
        #[command(subcommand)]
        which: ChainCommand,
    },
    /// Run the check registry over a population of functions.
    Verify(VerifyArgs),
    /// Print every function of a given arity, one table per line.
    Enumerate(EnumerateArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FamilyName {
    /// The gap family f_k (needs --k).
    Fk,
    /// The address function ADDR_t (needs --t).
    Addr,
    /// Parity of --n bits.
    Parity,
    /// AND of --n bits.
    And,
    /// OR of --n bits.
    Or,
    /// Majority of --n bits (odd n).
    Majority,
}

/// Exactly one of --fn, --file or --family selects the function.
#[derive(Debug, Args)]
struct InputArgs {
    /// Truth table in `n:HEX` form.
    #[arg(long = "fn", value_name = "TABLE", conflicts_with_all = ["file", "family"])]
    function: Option<String>,

    /// Corpus file: one `n:HEX` table per line, `#` comments.
    #[arg(long, value_name = "PATH", conflicts_with = "family")]
    file: Option<PathBuf>,

    /// Named family member.
    #[arg(long, value_enum)]
    family: Option<FamilyName>,

    /// Depth parameter of fk.
    #[arg(long)]
    k: Option<usize>,

    /// Address width of addr.
    #[arg(long)]
    t: Option<usize>,

    /// Arity of parity, and, or, majority.
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Debug, Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Json,
    Text,
    Csv,
}

#[derive(Debug, Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    input: InputArgs,

    /// Include per-input s, bs and C tables.
    #[arg(long)]
    per_point: bool,

    /// Output format (json or text).
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Debug, Subcommand)]
enum FamilyCommand {
    /// The gap family member f_k on 2^k - 1 variables.
    Fk {
        #[arg(long)]
        k: usize,
        /// Always print the descriptor JSON, even when a table fits.
        #[arg(long)]
        descriptor: bool,
    },
    /// The address function on t + 2^t variables.
    Addr {
        #[arg(long)]
        t: usize,
        /// Always print the descriptor JSON.
        #[arg(long)]
        descriptor: bool,
    },
    /// The composition power base^{∘power}.
    Compose {
        /// Base function: addrT, fkK, parityN, andN, orN, majN or an `n:HEX` table.
        #[arg(long)]
        base: String,
        #[arg(long)]
        power: usize,
        /// Always print the descriptor JSON.
        #[arg(long)]
        descriptor: bool,
    },
}

#[derive(Debug, Subcommand)]
enum ChainCommand {
    /// The alternation-maximizing chain of f_k, as a JSON permutation.
    Fk {
        #[arg(long)]
        k: usize,
    },
    /// Glue optimal chains of f and g into a chain for f ∘ g.
    Glue {
        /// Outer function (same forms as `family compose --base`).
        #[arg(long)]
        f: String,
        /// Inner function; must differ on 0^n and 1^n.
        #[arg(long)]
        g: String,
    },
    /// Count alternations of a function along a chain.
    Eval {
        #[command(flatten)]
        input: InputArgs,

        /// Chain as a JSON array, or an object with a "chain" field; read from
        /// standard input when omitted.
        #[arg(long, value_name = "JSON")]
        chain: Option<String>,
    },
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// All functions of arity 1..=N (N <= 4).
    #[arg(long, value_name = "N")]
    exhaustive: Option<usize>,

    /// Seeded random functions of arity N.
    #[arg(long, value_name = "N")]
    sample: Option<usize>,

    /// Number of samples.
    #[arg(long, default_value_t = 10_000, requires = "sample")]
    count: usize,

    /// Seed of the sample stream.
    #[arg(long, default_value_t = 0, requires = "sample")]
    seed: u64,

    /// Family members and baselines up to this arity.
    #[arg(long, value_name = "N")]
    families: Option<usize>,

    /// Explicit tables (repeatable), e.g. to re-run a reported counterexample.
    #[arg(long = "fn", value_name = "TABLE")]
    functions: Vec<String>,

    /// Corpus file of tables.
    #[arg(long, value_name = "PATH")]
    file: Option<PathBuf>,

    /// Comma-separated check names, or `all`.
    #[arg(long, value_delimiter = ',', default_value = "all")]
    checks: Vec<String>,

    /// json or text report; csv prints the measure matrix instead.
    #[arg(long, value_enum, default_value = "json")]
    format: Format,

    /// Worker threads (0 = one per core).
    #[arg(long, default_value_t = 0)]
    jobs: usize,

    /// Exponent c of the polylog report checks.
    #[arg(long, default_value_t = 2.0)]
    c: f64,

    /// Largest arity for the all-chains oracle.
    #[arg(long, default_value_t = 5)]
    chain_oracle_max: usize,

    /// List registered checks and exit.
    #[arg(long)]
    list_checks: bool,
}

#[derive(Debug, Args)]
struct EnumerateArgs {
    /// Arity (at most 4).
    n: usize,
}

enum Failure {
    Usage(String),
    Input(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e)
    }
}

type CmdResult = Result<(String, i32), Failure>;

/// Runs one invocation. `args` includes the program name.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(stderr, "{}", e.render());
                2
            } else {
                let _ = write!(stdout, "{}", e.render());
                0
            };
            return code;
        }
    };
    if let Some(cap) = cli.dense_cap {
        if cap > boolfn_core::table::MAX_DENSE_CAP {
            let _ = writeln!(
                stderr,
                "error: --dense-cap {cap} exceeds the maximum {}",
                boolfn_core::table::MAX_DENSE_CAP
            );
            return 2;
        }
        set_dense_cap(cap);
    }
    let result = match cli.command {
        Command::Analyze(a) => analyze(a),
        Command::Family { which } => family(which),
        Command::Chain { which } => chain(which, stdin),
        Command::Verify(v) => verify(v),
        Command::Enumerate(e) => enumerate(e),
    };
    match result {
        Ok((out, code)) => {
            if stdout
                .write_all(out.as_bytes())
                .and_then(|_| stdout.flush())
                .is_err()
            {
                return 0;
            }
            code
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            2
        }
        Err(Failure::Input(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            2
        }
    }
}

fn json_line(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn read_file(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn need<T>(value: Option<T>, flag: &str, family: &str) -> Result<T, Failure> {
    value.ok_or_else(|| Failure::Usage(format!("--family {family} needs {flag}")))
}

fn family_function(name: FamilyName, input: &InputArgs) -> Result<LazyFunction, Failure> {
    let basic = |kind: BasicKind, label: &str| -> Result<LazyFunction, Failure> {
        let n = need(input.n, "--n", label)?;
        Ok(kind.primitive(n)?.into())
    };
    match name {
        FamilyName::Fk => Ok(gap_family(need(input.k, "--k", "fk")?)?.function),
        FamilyName::Addr => {
            let t = need(input.t, "--t", "addr")?;
            if t == 0 {
                return Err(Error::InvalidParam("address needs t >= 1".into()).into());
            }
            Ok(boolfn_core::Primitive::Address { t }.into())
        }
        FamilyName::Parity => basic(BasicKind::Parity, "parity"),
        FamilyName::And => basic(BasicKind::And, "and"),
        FamilyName::Or => basic(BasicKind::Or, "or"),
        FamilyName::Majority => basic(BasicKind::Majority, "majority"),
    }
}

/// Resolves the input flags to one or more functions.
fn inputs(input: &InputArgs) -> Result<Vec<LazyFunction>, Failure> {
    if let Some(text) = &input.function {
        return Ok(vec![TruthTable::parse(text)?.into()]);
    }
    if let Some(path) = &input.file {
        let tables = parse_corpus(&read_file(path)?)?;
        if tables.is_empty() {
            return Err(Failure::Usage(format!(
                "{} holds no tables",
                path.display()
            )));
        }
        return Ok(tables.into_iter().map(Into::into).collect());
    }
    if let Some(name) = input.family {
        return Ok(vec![family_function(name, input)?]);
    }
    Err(Failure::Usage(
        "one of --fn, --file or --family is required".into(),
    ))
}

fn single_input(input: &InputArgs) -> Result<LazyFunction, Failure> {
    let mut all = inputs(input)?;
    if all.len() != 1 {
        return Err(Failure::Usage(format!(
            "expected one function, the corpus holds {}",
            all.len()
        )));
    }
    Ok(all.remove(0))
}

#[derive(Serialize)]
struct Analysis {
    function: String,
    #[serde(flatten)]
    measures: MeasureReport,
    #[serde(flatten)]
    algebra: AlgebraSummary,
}

fn analysis(f: &TruthTable, per_point: bool) -> Result<Analysis, Failure> {
    Ok(Analysis {
        function: f.to_text(),
        measures: measure_report(f, per_point)?,
        algebra: algebra_summary(f)?,
    })
}

fn analysis_text(a: &Analysis) -> String {
    let opt = |v: Option<usize>| v.map_or("-".to_string(), |v| v.to_string());
    let m = &a.measures;
    let mut out = String::new();
    let _ = writeln!(out, "function      {}", a.function);
    let _ = writeln!(out, "arity         {}", m.arity);
    let _ = writeln!(out, "s             {}", m.s);
    let _ = writeln!(out, "bs            {}", opt(m.bs));
    let _ = writeln!(out, "C             {}", opt(m.c));
    let _ = writeln!(
        out,
        "I             {}",
        boolfn_core::rational::to_text(&m.influence)
    );
    let _ = writeln!(out, "alt           {}", m.alt);
    let _ = writeln!(out, "dc            {}", m.dc);
    let _ = writeln!(out, "DT            {}", opt(m.dt));
    let _ = writeln!(out, "negs          {}", m.negs);
    let _ = writeln!(out, "negs_formula  {}", m.negs_formula);
    let _ = writeln!(out, "witness       {:?}", m.witness.order());
    let _ = writeln!(out, "deg           {}", a.algebra.deg);
    for (modulus, d) in &a.algebra.deg_m {
        let _ = writeln!(out, "deg_{modulus:<10}{d}");
    }
    let _ = writeln!(out, "sparsity      {}", a.algebra.sparsity);
    out
}

fn analyze(args: AnalyzeArgs) -> CmdResult {
    if args.format == Format::Csv {
        return Err(Failure::Usage("analyze supports json and text".into()));
    }
    let tables = inputs(&args.input)?
        .iter()
        .map(LazyFunction::materialize)
        .collect::<Result<Vec<_>, _>>()?;
    let reports = tables
        .iter()
        .map(|t| analysis(t, args.per_point))
        .collect::<Result<Vec<_>, _>>()?;
    let out = match (args.format, args.input.file.is_some()) {
        (Format::Text, _) => reports
            .iter()
            .map(analysis_text)
            .collect::<Vec<_>>()
            .join("\n"),
        (_, true) => json_line(&reports),
        (_, false) => json_line(&reports[0]),
    };
    Ok((out, 0))
}

/// Parses `addr2`, `fk3`, `parity5`, `and3`, `or3`, `maj3` or a table.
fn named_function(text: &str) -> Result<LazyFunction, Failure> {
    if text.contains(':') {
        return Ok(TruthTable::parse(text)?.into());
    }
    let split = text
        .find(|c: char| c.is_ascii_digit())
        .ok_or_else(|| Failure::Usage(format!("unknown function {text:?}")))?;
    let (name, num) = text.split_at(split);
    let num: usize = num
        .parse()
        .map_err(|_| Failure::Usage(format!("bad parameter in {text:?}")))?;
    Ok(match name {
        "addr" => {
            if num == 0 {
                return Err(Error::InvalidParam("address needs t >= 1".into()).into());
            }
            boolfn_core::Primitive::Address { t: num }.into()
        }
        "fk" => gap_family(num)?.function,
        "parity" => BasicKind::Parity.primitive(num)?.into(),
        "and" => BasicKind::And.primitive(num)?.into(),
        "or" => BasicKind::Or.primitive(num)?.into(),
        "maj" => BasicKind::Majority.primitive(num)?.into(),
        _ => return Err(Failure::Usage(format!("unknown function {text:?}"))),
    })
}

fn emit_function(f: &LazyFunction, descriptor: bool) -> String {
    if !descriptor && f.arity() <= boolfn_core::dense_cap() {
        if let Ok(t) = f.materialize() {
            return format!("{t}\n");
        }
    }
    json_line(f)
}

fn family(which: FamilyCommand) -> CmdResult {
    let out = match which {
        FamilyCommand::Fk { k, descriptor } => {
            let g = gap_family(k)?;
            if descriptor {
                json_line(&LazyFunction::from(g.tree))
            } else {
                emit_function(&g.function, false)
            }
        }
        FamilyCommand::Addr { t, descriptor } => {
            if descriptor || t >= 5 {
                if t == 0 {
                    return Err(Error::InvalidParam("address needs t >= 1".into()).into());
                }
                json_line(&LazyFunction::from(boolfn_core::Primitive::Address { t }))
            } else {
                format!("{}\n", address(t)?)
            }
        }
        FamilyCommand::Compose {
            base,
            power,
            descriptor,
        } => emit_function(&compose_power(named_function(&base)?, power)?, descriptor),
    };
    Ok((out, 0))
}

#[derive(Serialize)]
struct GlueReport {
    chain: Chain,
    arity: usize,
    alternation: usize,
    evaluations: u64,
    alt_f: usize,
    alt_g: usize,
    lower_bound: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    alt_composed: Option<usize>,
}

#[derive(Serialize)]
struct EvalReport {
    arity: usize,
    alternation: usize,
    decrease: usize,
    evaluations: u64,
}

fn parse_chain(text: &str) -> Result<Chain, Failure> {
    let value: serde_json::Value = serde_json::from_str(text.trim())
        .map_err(|e| Failure::Usage(format!("chain is not valid JSON: {e}")))?;
    let value = match value {
        serde_json::Value::Object(mut map) => map
            .remove("chain")
            .ok_or_else(|| Failure::Usage("chain object has no \"chain\" field".into()))?,
        other => other,
    };
    let order: Vec<usize> = serde_json::from_value(value)
        .map_err(|e| Failure::Usage(format!("chain must be an array of indices: {e}")))?;
    Ok(Chain::new(order)?)
}

fn chain(which: ChainCommand, stdin: &mut dyn Read) -> CmdResult {
    let out = match which {
        ChainCommand::Fk { k } => {
            let g = gap_family(k)?;
            format!(
                "{}\n",
                serde_json::to_string(&gap_family_chain(&g.tree)?).unwrap()
            )
        }
        ChainCommand::Glue { f, g } => {
            let (f, g) = (named_function(&f)?, named_function(&g)?);
            let (tf, tg) = (f.materialize()?, g.materialize()?);
            let (af, ag) = (alternation_decrease(&tf)?, alternation_decrease(&tg)?);
            let glued = glued_composition_chain(&af.witness, &ag.witness, &g)?;
            let composed = Counted::new(boolfn_core::compose(f, g)?);
            let alternation = alternation_along(&composed, &glued)?;
            let arity = composed.arity();
            let evaluations = composed.calls();
            let alt_composed = if arity <= boolfn_core::dense_cap() {
                Some(alternation_decrease(&composed.into_inner().materialize()?)?.alt)
            } else {
                None
            };
            let report = GlueReport {
                chain: glued,
                arity,
                alternation,
                evaluations,
                alt_f: af.alt,
                alt_g: ag.alt,
                lower_bound: af.alt * ag.alt,
                alt_composed,
            };
            json_line(&report)
        }
        ChainCommand::Eval { input, chain } => {
            let f = single_input(&input)?;
            let text = match chain {
                Some(text) => text,
                None => {
                    let mut buf = String::new();
                    stdin
                        .read_to_string(&mut buf)
                        .map_err(|e| Failure::Usage(format!("cannot read chain: {e}")))?;
                    buf
                }
            };
            let chain = parse_chain(&text)?;
            let counted = Counted::new(f);
            let alternation = alternation_along(&counted, &chain)?;
            let evaluations = counted.calls();
            let decrease = decrease_along(&counted.into_inner(), &chain)?;
            json_line(&EvalReport {
                arity: chain.arity(),
                alternation,
                decrease,
                evaluations,
            })
        }
    };
    Ok((out, 0))
}

fn verify(args: VerifyArgs) -> CmdResult {
    if args.list_checks {
        let mut out = String::new();
        for c in registry() {
            let kind = format!("{:?}", c.kind).to_lowercase();
            let _ = writeln!(out, "{:<24} {:<6} {}", c.name, kind, c.statement);
        }
        return Ok((out, 0));
    }
    let mut parts = Vec::new();
    if let Some(n) = args.exhaustive {
        if n == 0 {
            return Err(Failure::Usage("--exhaustive needs N >= 1".into()));
        }
        parts.push(Population::exhaustive_up_to(n));
    }
    if let Some(n) = args.sample {
        parts.push(boolfn_core::verify::sampled(n, args.count, args.seed)?);
    }
    if let Some(n) = args.families {
        parts.push(Population::Families { max_arity: n });
    }
    let mut tables = args
        .functions
        .iter()
        .map(|t| TruthTable::parse(t))
        .collect::<Result<Vec<_>, _>>()?;
    if let Some(path) = &args.file {
        tables.extend(parse_corpus(&read_file(path)?)?);
    }
    if !tables.is_empty() {
        parts.push(Population::Explicit { tables });
    }
    let population = match parts.len() {
        0 => {
            return Err(Failure::Usage(
                "choose a population: --exhaustive, --sample, --families, --fn or --file".into(),
            ))
        }
        1 => parts.remove(0),
        _ => Population::Union { parts },
    };
    if args.format == Format::Csv {
        return Ok((measure_matrix_csv(&population.members()?)?, 0));
    }
    let config = CheckConfig {
        polylog_exponent: args.c,
        chain_oracle_max_arity: args.chain_oracle_max,
    };
    let report = run_check_suite(&population, &args.checks, &config, args.jobs)?;
    let code = if report.is_clean() { 0 } else { 1 };
    let out = match args.format {
        Format::Text => report.to_text(),
        _ => json_line(&report),
    };
    Ok((out, code))
}

fn enumerate(args: EnumerateArgs) -> CmdResult {
    let mut out = String::new();
    for t in boolfn_core::verify::enumerate_functions(args.n)? {
        out.push_str(&t.to_text());
        out.push('\n');
    }
    Ok((out, 0))
}
