//! Argument parsing and dispatch for the `bentdual` binary.
//!
//! [`parse_args`] turns argv into a validated [`CommandSpec`]; [`run`] executes
//! it and returns the exit code together with the rendered payload. Exit code
//! 1 means a mathematical check failed, 2 means bad usage or bad input.

pub mod verify;

use std::io::Read;
use std::path::PathBuf;

use bentdual::analysis::{
    census, dist_formula_ps_minus, dist_formula_ps_plus, distribution_table, CensusMode, EXHAUSTIVE_MAX_K, SAMPLE_MAX_K,
};
use bentdual::boolfun::{mm_bent, symmetric_bent};
use bentdual::field::FieldCtx;
use bentdual::spectral::{dist_to_dual, dual, nonlinearity, rayleigh, rayleigh_quotient, wht};
use bentdual::spreads::{
    parse_bit_vector, ps_minus, ps_plus, psap_from_g, selection_from_g, PartialSpread, SpreadKind,
};
use bentdual::{DualityClass, Pairing, Permutation, SpreadLine, SpreadSelection, TruthTable};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    Hex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PairingArg {
    Standard,
    Trace,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Sample,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    All,
    Metric,
    Census,
    Symmetric,
    Charsum,
    Table,
    Examples,
    Foundations,
}

#[derive(Parser, Debug)]
#[command(name = "bentdual", version, about = "Bent functions, their duals and distance-to-dual censuses")]
struct Cli {
    /// Output format (json by default)
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,
    /// Write the payload to PATH instead of stdout
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Walsh-Hadamard spectrum
    Wht(TableArgs),
    /// Bentness and nonlinearity
    Bent(TableArgs),
    /// Dual of a bent function
    Dual(TableArgs),
    /// Rayleigh quotient S_f and N_f
    Rayleigh(TableArgs),
    /// Distance between a bent function and its dual
    Dist(TableArgs),
    /// Build a bent function
    Construct {
        #[command(subcommand)]
        what: ConstructCmd,
    },
    /// Census of PS^- selections over the Desarguesian spread
    Census(CensusArgs),
    /// All N_f / dist values for PS_ap at n variables
    Table {
        #[arg(long)]
        n: u32,
    },
    /// Run the identity and proposition checks
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
    },
}

#[derive(Args, Debug)]
struct TableArgs {
    /// Hex truth table; read from stdin when omitted
    table: Option<String>,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long, value_enum, default_value = "standard")]
    pairing: PairingArg,
    /// Reduction polynomial for the trace pairing, as a hex mask
    #[arg(long, value_parser = parse_hex_u32)]
    poly: Option<u32>,
}

#[derive(Args, Debug)]
struct FieldArgs {
    #[arg(long)]
    k: u32,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long, value_parser = parse_hex_u32)]
    poly: Option<u32>,
}

#[derive(Subcommand, Debug)]
enum ConstructCmd {
    /// f(x, y) = g(x / y) for balanced g with g(0) = 0
    Psap {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        g: String,
    },
    /// PS^- from 2^(k-1) Desarguesian lines
    #[command(name = "ps-")]
    PsMinus {
        #[command(flatten)]
        field: FieldArgs,
        /// Comma-separated line labels, e.g. 2,3,5,inf
        #[arg(long)]
        lines: String,
    },
    /// PS^+ from 2^(k-1) + 1 Desarguesian lines
    #[command(name = "ps+")]
    PsPlus {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        lines: String,
    },
    /// PS^- or PS^+ from explicit subspace bases of F_2^n
    #[command(name = "ps-general")]
    PsGeneral {
        #[arg(long)]
        n: u32,
        /// Comma-separated basis bit strings x1x2...xn; repeat per subspace
        #[arg(long, required = true)]
        subspace: Vec<String>,
    },
    /// Symmetric bent function with weight-class constants eps1, eps2
    Symmetric {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value = "0", value_parser = parse_bit, action = clap::ArgAction::Set)]
        eps1: bool,
        #[arg(long, default_value = "0", value_parser = parse_bit, action = clap::ArgAction::Set)]
        eps2: bool,
    },
    /// Maiorana-McFarland x . pi(y) + g(y)
    Mm {
        #[arg(long)]
        n: Option<u32>,
        /// Comma-separated permutation table of {0, ..., 2^(n/2) - 1}
        #[arg(long)]
        perm: String,
        #[arg(long)]
        g: Option<String>,
    },
}

#[derive(Args, Debug)]
struct CensusArgs {
    #[arg(long)]
    k: u32,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long, value_parser = parse_hex_u32)]
    poly: Option<u32>,
    #[arg(long, value_enum, default_value = "exhaustive")]
    mode: ModeArg,
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn parse_hex_u32(s: &str) -> Result<u32, String> {
    let digits = s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")).unwrap_or(s);
    u32::from_str_radix(digits, 16).map_err(|e| format!("bad hex value {s:?}: {e}"))
}

fn parse_bit(s: &str) -> Result<bool, String> {
    match s {
        "0" => Ok(false),
        "1" => Ok(true),
        _ => Err(format!("expected 0 or 1, got {s:?}")),
    }
}

/// Where a command reads its truth table from.
#[derive(Debug, Clone, PartialEq)]
pub enum TableSource {
    Inline(TruthTable),
    Stdin,
}

#[derive(Debug, Clone, PartialEq)]
pub enum PairingChoice {
    Standard,
    Trace { poly: Option<u32> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct TableInput {
    pub source: TableSource,
    pub n: Option<u32>,
    pub pairing: PairingChoice,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Construction {
    Psap { ctx: FieldCtx, g: TruthTable },
    PsMinus(SpreadSelection),
    PsPlus(SpreadSelection),
    PsGeneral { n: u32, bases: Vec<Vec<u32>> },
    Symmetric { n: u32, eps1: bool, eps2: bool },
    Mm { pi: Permutation, g: TruthTable },
}

#[derive(Debug, Clone, PartialEq)]
pub enum Command {
    Wht(TableInput),
    Bent(TableInput),
    Dual(TableInput),
    Rayleigh(TableInput),
    Dist(TableInput),
    Construct(Construction),
    Census { ctx: FieldCtx, mode: CensusMode },
    Table { n: u32 },
    Verify { suite: Suite },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Wht(_) => "wht",
            Command::Bent(_) => "bent",
            Command::Dual(_) => "dual",
            Command::Rayleigh(_) => "rayleigh",
            Command::Dist(_) => "dist",
            Command::Construct(_) => "construct",
            Command::Census { .. } => "census",
            Command::Table { .. } => "table",
            Command::Verify { .. } => "verify",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CommandSpec {
    pub command: Command,
    pub format: OutputFormat,
    pub out: Option<PathBuf>,
}

/// A rejected command line. `exit_code` is 0 for `--help` / `--version`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsageError {
    pub message: String,
    pub exit_code: i32,
}

impl UsageError {
    fn new(message: impl Into<String>) -> Self {
        UsageError { message: message.into(), exit_code: EXIT_USAGE }
    }
}

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

fn usage<E: std::fmt::Display>(e: E) -> UsageError {
    UsageError::new(format!("error: {e}"))
}

fn check_nk(n: Option<u32>, k: u32) -> Result<(), UsageError> {
    match n {
        Some(n) if n != 2 * k => Err(UsageError::new(format!("error: inconsistent --n {n} and --k {k} (need n = 2k)"))),
        _ => Ok(()),
    }
}

fn field(args: &FieldArgs) -> Result<FieldCtx, UsageError> {
    check_nk(args.n, args.k)?;
    FieldCtx::new(args.k, args.poly).map_err(usage)
}

fn parse_lines(ctx: &FieldCtx, list: &str) -> Result<SpreadSelection, UsageError> {
    let lines = list
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.parse::<SpreadLine>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(usage)?;
    SpreadSelection::new(ctx, lines).map_err(usage)
}

fn parse_table_args(args: TableArgs) -> Result<TableInput, UsageError> {
    if let (Some(n), Some(k)) = (args.n, args.k) {
        check_nk(Some(n), k)?;
    }
    let n = args.n.or(args.k.map(|k| 2 * k));
    let source = match &args.table {
        Some(hex) => TableSource::Inline(read_table(hex, n).map_err(usage)?),
        None => TableSource::Stdin,
    };
    let pairing = match args.pairing {
        PairingArg::Standard if args.poly.is_some() => {
            return Err(UsageError::new("error: --poly only applies to --pairing trace"))
        }
        PairingArg::Standard => PairingChoice::Standard,
        PairingArg::Trace => PairingChoice::Trace { poly: args.poly },
    };
    Ok(TableInput { source, n, pairing })
}

fn read_table(hex: &str, n: Option<u32>) -> bentdual::Result<TruthTable> {
    let hex = hex.trim();
    match n {
        Some(n) => TruthTable::from_hex_n(hex, n),
        None => TruthTable::from_hex(hex),
    }
}

fn parse_construction(what: ConstructCmd) -> Result<Construction, UsageError> {
    Ok(match what {
        ConstructCmd::Psap { field: fa, g } => {
            let ctx = field(&fa)?;
            let g = TruthTable::from_hex_n(&g, ctx.k()).map_err(usage)?;
            selection_from_g(&ctx, &g).map_err(usage)?;
            Construction::Psap { ctx, g }
        }
        ConstructCmd::PsMinus { field: fa, lines } => {
            let ctx = field(&fa)?;
            let sel = parse_lines(&ctx, &lines)?;
            sel.expect_len(sel.half()).map_err(usage)?;
            Construction::PsMinus(sel)
        }
        ConstructCmd::PsPlus { field: fa, lines } => {
            let ctx = field(&fa)?;
            let sel = parse_lines(&ctx, &lines)?;
            sel.expect_len(sel.half() + 1).map_err(usage)?;
            Construction::PsPlus(sel)
        }
        ConstructCmd::PsGeneral { n, subspace } => {
            let bases = subspace
                .iter()
                .map(|s| s.split(',').map(parse_bit_vector).collect::<bentdual::Result<Vec<u32>>>())
                .collect::<bentdual::Result<Vec<_>>>()
                .map_err(usage)?;
            PartialSpread::from_bases(n, &bases).map_err(usage)?;
            Construction::PsGeneral { n, bases }
        }
        ConstructCmd::Symmetric { n, eps1, eps2 } => {
            symmetric_bent(n, eps1, eps2).map_err(usage)?;
            Construction::Symmetric { n, eps1, eps2 }
        }
        ConstructCmd::Mm { n, perm, g } => {
            let table =
                perm.split(',').map(|s| s.trim().parse::<u32>().map_err(usage)).collect::<Result<Vec<u32>, _>>()?;
            let pi = Permutation::new(table).map_err(usage)?;
            if !pi.len().is_power_of_two() || pi.len() < 2 {
                return Err(UsageError::new("error: permutation length must be a power of two >= 2"));
            }
            let m = pi.len().trailing_zeros();
            check_nk(n, m)?;
            let g = match g {
                Some(hex) => TruthTable::from_hex_n(&hex, m).map_err(usage)?,
                None => TruthTable::zeros(m).map_err(usage)?,
            };
            Construction::Mm { pi, g }
        }
    })
}

/// Parses and validates a full argv (including the program name).
pub fn parse_args<I, T>(argv: I) -> Result<CommandSpec, UsageError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(|e| UsageError {
        message: e.render().to_string(),
        exit_code: if e.use_stderr() { EXIT_USAGE } else { EXIT_OK },
    })?;
    let command = match cli.command {
        Cmd::Wht(a) => Command::Wht(parse_table_args(a)?),
        Cmd::Bent(a) => Command::Bent(parse_table_args(a)?),
        Cmd::Dual(a) => Command::Dual(parse_table_args(a)?),
        Cmd::Rayleigh(a) => Command::Rayleigh(parse_table_args(a)?),
        Cmd::Dist(a) => Command::Dist(parse_table_args(a)?),
        Cmd::Construct { what } => Command::Construct(parse_construction(what)?),
        Cmd::Census(a) => {
            check_nk(a.n, a.k)?;
            let (mode, max) = match a.mode {
                ModeArg::Exhaustive => (CensusMode::Exhaustive, EXHAUSTIVE_MAX_K),
                ModeArg::Sample => (CensusMode::Sample { count: a.samples, seed: a.seed }, SAMPLE_MAX_K),
            };
            if !(2..=max).contains(&a.k) {
                return Err(UsageError::new(format!(
                    "error: census --k {} out of range for this mode (2 ..= {max})",
                    a.k
                )));
            }
            let ctx = FieldCtx::new(a.k, a.poly).map_err(usage)?;
            Command::Census { ctx, mode }
        }
        Cmd::Table { n } => {
            if n % 2 == 1 || !(4..=24).contains(&n) {
                return Err(UsageError::new(format!("error: table --n {n}: need even n in 4 ..= 24")));
            }
            Command::Table { n }
        }
        Cmd::Verify { suite } => Command::Verify { suite },
    };
    let format = cli.format.unwrap_or(OutputFormat::Json);
    let allowed = match &command {
        Command::Table { .. } => format != OutputFormat::Hex,
        Command::Dual(_) | Command::Construct(_) => format != OutputFormat::Csv,
        _ => format == OutputFormat::Json,
    };
    if !allowed {
        return Err(UsageError::new(format!(
            "error: --format {} is not supported by {}",
            format.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default(),
            command.name()
        )));
    }
    Ok(CommandSpec { command, format, out: cli.out })
}

/// Outcome of [`run`]: exit code, rendered payload, optional stderr message.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunResult {
    pub exit_code: i32,
    pub payload: String,
    pub diagnostic: Option<String>,
}

impl RunResult {
    fn ok(payload: String) -> Self {
        RunResult { exit_code: EXIT_OK, payload, diagnostic: None }
    }

    fn input_error(e: impl std::fmt::Display) -> Self {
        RunResult { exit_code: EXIT_USAGE, payload: String::new(), diagnostic: Some(format!("error: {e}")) }
    }
}

/// Serializes `body` with a leading `"schema"` field.
pub fn envelope<T: Serialize>(body: &T) -> String {
    let mut map = serde_json::Map::new();
    map.insert("schema".into(), json!(SCHEMA_VERSION));
    match serde_json::to_value(body).expect("report types serialize") {
        Value::Object(fields) => map.extend(fields),
        other => {
            map.insert("value".into(), other);
        }
    }
    let mut s = serde_json::to_string_pretty(&Value::Object(map)).expect("json value serializes");
    s.push('\n');
    s
}

fn resolve_pairing(choice: &PairingChoice, n: u32) -> bentdual::Result<Pairing> {
    match choice {
        PairingChoice::Standard => Ok(Pairing::Standard),
        PairingChoice::Trace { poly } => {
            if n % 2 == 1 {
                return Err(bentdual::Error::OddVariableCount(n));
            }
            Ok(Pairing::TraceForm(FieldCtx::new(n / 2, *poly)?))
        }
    }
}

fn load(input: &TableInput, stdin: &mut dyn Read) -> bentdual::Result<(TruthTable, Pairing)> {
    let f = match &input.source {
        TableSource::Inline(f) => f.clone(),
        TableSource::Stdin => {
            let mut buf = String::new();
            stdin.read_to_string(&mut buf).map_err(|e| bentdual::Error::Hex(format!("reading stdin: {e}")))?;
            read_table(&buf, input.n)?
        }
    };
    let pairing = resolve_pairing(&input.pairing, f.n())?;
    pairing.check(f.n())?;
    Ok((f, pairing))
}

/// Runs a command, reading truth tables from stdin when needed.
pub fn run(spec: &CommandSpec) -> RunResult {
    run_with_stdin(spec, &mut std::io::stdin())
}

pub fn run_with_stdin(spec: &CommandSpec, stdin: &mut dyn Read) -> RunResult {
    match dispatch(spec, stdin) {
        Ok(r) => r,
        Err(e) => RunResult::input_error(e),
    }
}

fn dispatch(spec: &CommandSpec, stdin: &mut dyn Read) -> bentdual::Result<RunResult> {
    let out = match &spec.command {
        Command::Wht(input) => {
            let (f, pairing) = load(input, stdin)?;
            let spectrum = wht(&f, &pairing)?;
            envelope(&json!({ "n": f.n(), "pairing": pairing.name(), "spectrum": spectrum.values() }))
        }
        Command::Bent(input) => {
            let (f, pairing) = load(input, stdin)?;
            let spectrum = wht(&f, &pairing)?;
            envelope(&json!({
                "n": f.n(),
                "bent": spectrum.is_flat(),
                "nonlinearity": nonlinearity(&f),
            }))
        }
        Command::Dual(input) => {
            let (f, pairing) = load(input, stdin)?;
            let d = dual(&f, &pairing)?;
            match spec.format {
                OutputFormat::Hex => format!("{}\n", d.to_hex()),
                _ => envelope(&json!({ "n": f.n(), "pairing": pairing.name(), "dual": d.to_hex() })),
            }
        }
        Command::Rayleigh(input) => {
            let (f, pairing) = load(input, stdin)?;
            let body = match rayleigh(&f, &pairing) {
                Ok(r) => json!({ "n": f.n(), "pairing": pairing.name(), "bent": true, "S": r.s, "N": r.n }),
                Err(bentdual::Error::NotBent { .. }) => {
                    json!({ "n": f.n(), "pairing": pairing.name(), "bent": false, "S": rayleigh_quotient(&f, &pairing)? })
                }
                Err(e) => return Err(e),
            };
            envelope(&body)
        }
        Command::Dist(input) => {
            let (f, pairing) = load(input, stdin)?;
            let r = rayleigh(&f, &pairing)?;
            let d = dist_to_dual(&f, &pairing)?;
            envelope(&json!({
                "n": f.n(),
                "pairing": pairing.name(),
                "S": r.s,
                "N": r.n,
                "dist": d,
                "class": DualityClass::from_dist(f.n(), d),
            }))
        }
        Command::Construct(c) => render_construction(c, spec.format)?,
        Command::Census { ctx, mode } => envelope(&census(ctx, *mode)?),
        Command::Table { n } => {
            let row = distribution_table(*n)?;
            match spec.format {
                OutputFormat::Csv => row.to_csv(),
                _ => envelope(&row),
            }
        }
        Command::Verify { suite } => {
            let report = verify::run_suite(*suite);
            let code = if report.passed { EXIT_OK } else { EXIT_CHECK_FAILED };
            return Ok(RunResult { exit_code: code, payload: envelope(&report), diagnostic: None });
        }
    };
    Ok(RunResult::ok(out))
}

#[derive(Serialize)]
struct ConstructReport {
    construction: &'static str,
    n: u32,
    pairing: &'static str,
    truth_table: String,
    bent: bool,
    #[serde(rename = "N_f")]
    nf: Option<i64>,
    dist: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    dist_formula: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    lines: Option<Vec<SpreadLine>>,
}

fn render_construction(c: &Construction, format: OutputFormat) -> bentdual::Result<String> {
    let (name, f, pairing, dist_formula, lines) = match c {
        Construction::Psap { ctx, g } => {
            let sel = selection_from_g(ctx, g)?;
            let f = psap_from_g(ctx, g)?;
            ("psap", f, Pairing::TraceForm(ctx.clone()), None, Some(sel.lines().to_vec()))
        }
        Construction::PsMinus(sel) => {
            let formula = dist_formula_ps_minus(&PartialSpread::from_selection(sel))?;
            let f = ps_minus(sel)?;
            ("ps-", f, Pairing::TraceForm(sel.ctx().clone()), Some(formula), Some(sel.lines().to_vec()))
        }
        Construction::PsPlus(sel) => {
            let formula = dist_formula_ps_plus(&PartialSpread::from_selection(sel))?;
            let f = ps_plus(sel)?;
            ("ps+", f, Pairing::TraceForm(sel.ctx().clone()), Some(formula), Some(sel.lines().to_vec()))
        }
        Construction::PsGeneral { n, bases } => {
            let ps = PartialSpread::from_bases(*n, bases)?;
            let formula = match ps.kind()? {
                SpreadKind::Minus => dist_formula_ps_minus(&ps)?,
                SpreadKind::Plus => dist_formula_ps_plus(&ps)?,
            };
            ("ps-general", ps.function()?, Pairing::Standard, Some(formula), None)
        }
        Construction::Symmetric { n, eps1, eps2 } => {
            ("symmetric", symmetric_bent(*n, *eps1, *eps2)?, Pairing::Standard, None, None)
        }
        Construction::Mm { pi, g } => ("mm", mm_bent(pi, g)?, Pairing::Standard, None, None),
    };
    if format == OutputFormat::Hex {
        return Ok(format!("{}\n", f.to_hex()));
    }
    let (bent, nf, dist) = match rayleigh(&f, &pairing) {
        Ok(r) => (true, Some(r.n), Some(dist_to_dual(&f, &pairing)?)),
        Err(bentdual::Error::NotBent { .. }) => (false, None, None),
        Err(e) => return Err(e),
    };
    Ok(envelope(&ConstructReport {
        construction: name,
        n: f.n(),
        pairing: pairing.name(),
        truth_table: f.to_hex(),
        bent,
        nf,
        dist,
        dist_formula,
        lines,
    }))
}

/// Parses argv, runs, and writes the payload to stdout or `--out`.
/// Returns the process exit code.
pub fn execute<I, T>(
    argv: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn std::io::Write,
    stderr: &mut dyn std::io::Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let spec = match parse_args(argv) {
        Ok(spec) => spec,
        Err(e) => {
            let sink: &mut dyn std::io::Write = if e.exit_code == EXIT_OK { stdout } else { stderr };
            let _ = write!(sink, "{}", e.message);
            if !e.message.ends_with('\n') {
                let _ = writeln!(sink);
            }
            return e.exit_code;
        }
    };
    let result = run_with_stdin(&spec, stdin);
    if let Some(msg) = &result.diagnostic {
        let _ = writeln!(stderr, "{msg}");
    }
    let written = match &spec.out {
        Some(path) => std::fs::write(path, &result.payload),
        None => stdout.write_all(result.payload.as_bytes()),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: writing output: {e}");
        return EXIT_USAGE;
    }
    result.exit_code
}
