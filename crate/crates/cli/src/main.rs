//! Command-line driver for the adlv library.
//!
//! Six commands cover the pipeline: `classify` (bounded-set membership and
//! Harder-Narasimhan class), `pi0` (component-set descriptor), `iset`
//! (finite indexing set of minuscule lifts), `chain` (convexity chains with
//! optional refinement into immediate moves), `oracle` (brute-force lattice
//! model for general linear groups), and `survey` (batch classification
//! tables). Jobs come from inline flags or a JSON job file (`--spec`).
//!
//! Reports are deterministic: identical jobs produce byte-identical output.
//!
//! Exit codes: 0 success; 2 the requested object is empty (proven); 3 input
//! or precondition problem; 4 resource guard tripped; 1 internal invariant
//! failure.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use adlv::connect::{chain_verify, convexity_chain, iset_enumerate, refine_immediate};
use adlv::hnstrat::{hn_classify, in_b_g_mu, HNClass};
use adlv::isocrystal::{BRep, BRepSpec};
use adlv::latoracle::{
    adlv_points, default_max_lattices, nonempty_oracle, OracleConfig, OracleVerdict,
};
use adlv::pi0::{pi0_compute, Pi0Descriptor, Pi0Variant};
use adlv::rootdata::{build_root_datum, DatumSpec, LeviSubset, RootDatum};
use adlv::{ivec, Error};

const EXIT_INTERNAL: u8 = 1;
const EXIT_EMPTY: u8 = 2;
const EXIT_PRECONDITION: u8 = 3;
const EXIT_RESOURCE: u8 = 4;

/// Hard cap on raw box vectors enumerated by a survey range before any
/// dominance filtering.
const SURVEY_BOX_CAP: u128 = 1_000_000;
/// Default survey row guard; override with --max-rows or ADLV_MAX_ROWS.
const DEFAULT_MAX_ROWS: u64 = 100_000;

#[derive(Parser)]
#[command(
    name = "adlv",
    version,
    about = "Sigma-conjugacy classes and component sets of affine Deligne-Lusztig varieties"
)]
struct Cli {
    /// JSON job file with a "command" field; used instead of a subcommand.
    #[arg(long, global = true, value_name = "FILE")]
    spec: Option<PathBuf>,

    /// Write the report to this file instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,

    /// Report format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Bounded-set membership and Harder-Narasimhan classification of (mu, b).
    Classify(PairArgs),
    /// Component-set descriptor of (mu, b): empty, coset, discrete, or product.
    Pi0(PairArgs),
    /// Finite indexing set of minuscule lifts for (mu, b) over a Levi M.
    Iset(IsetArgs),
    /// Convexity chain between two indexing-set elements, verified stepwise.
    Chain(ChainArgs),
    /// Brute-force lattice-model check for general linear groups.
    Oracle(OracleArgs),
    /// Classification table over enumerated (mu, b) pairs.
    Survey(SurveyArgs),
}

#[derive(Args)]
struct DatumArgs {
    /// Preset name: GL, SL, PGL, ResGL, GU, GSp, SO, D4-triality, ...
    #[arg(long)]
    preset: Option<String>,

    /// Preset parameter as NAME=VALUE (e.g. -P n=2); repeatable.
    #[arg(long = "param", short = 'P', value_name = "NAME=VALUE")]
    params: Vec<String>,

    /// Explicit root-datum file (JSON), alternative to --preset.
    #[arg(long, value_name = "FILE", conflicts_with = "preset")]
    datum: Option<PathBuf>,
}

#[derive(Args)]
struct PairArgs {
    #[command(flatten)]
    datum: DatumArgs,

    /// Dominant target cocharacter, comma-separated integers.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true, required = true)]
    mu: Vec<i64>,

    /// Translation part of the representative b, comma-separated integers.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true, required = true)]
    lambda: Vec<i64>,

    /// Weyl part of b as a word in simple-reflection indices (default: identity).
    #[arg(long = "w", value_delimiter = ',')]
    w_word: Vec<usize>,

    /// Declared Levi of b: comma-separated simple indices, or "torus".
    /// Defaults to the full group.
    #[arg(long)]
    levi: Option<String>,
}

#[derive(Args)]
struct IsetArgs {
    #[command(flatten)]
    pair: PairArgs,

    /// Levi M indexing the set: comma-separated simple indices, or "torus".
    /// Defaults to b's declared Levi, else the torus.
    #[arg(long)]
    m: Option<String>,
}

#[derive(Args)]
struct ChainArgs {
    #[command(flatten)]
    iset: IsetArgs,

    /// Coordinates of the start element, comma-separated integers.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true, required = true)]
    from: Vec<i64>,

    /// Coordinates of the end element, comma-separated integers.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true, required = true)]
    to: Vec<i64>,

    /// Refine every move into immediate moves and re-verify the result.
    #[arg(long)]
    refine: bool,
}

#[derive(Args)]
struct OracleArgs {
    /// Rank n of the general linear group (1..=5).
    #[arg(long)]
    n: usize,

    /// Residue-field size (a prime <= 7).
    #[arg(long)]
    q: u64,

    /// Largest residue-extension degree in the widening schedule.
    #[arg(long = "mmax", default_value_t = 2)]
    m_max: usize,

    /// Window depth N: lattices between t^N O^n and t^-N O^n.
    #[arg(long)]
    depth: usize,

    /// Target cocharacter, comma-separated integers.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true, required = true)]
    mu: Vec<i64>,

    /// Translation part of b, comma-separated integers.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true, required = true)]
    lambda: Vec<i64>,

    /// Permutation part of b in one-line notation (default: identity).
    #[arg(long = "w", value_delimiter = ',')]
    w: Vec<usize>,

    /// Match relative positions below mu (closure) instead of exactly mu.
    #[arg(long)]
    closure: bool,

    /// Also enumerate and dump every matching point in the windows.
    #[arg(long)]
    points: bool,

    /// Enumeration budget in lattices; overrides ADLV_MAX_LATTICES.
    #[arg(long)]
    max_lattices: Option<u64>,
}

#[derive(Args)]
struct SurveyArgs {
    #[command(flatten)]
    datum: DatumArgs,

    /// Explicit row as "MU/LAMBDA/WORD", each field comma-separated, WORD may
    /// be empty (e.g. "1,0/0,1/0"); repeatable.
    #[arg(long = "row", value_name = "MU/LAMBDA/WORD")]
    rows: Vec<String>,

    /// Enumerate dominant mu with entries in [-B, B].
    #[arg(long, value_name = "B")]
    mu_bound: Option<i64>,

    /// Keep only minuscule mu from the enumerated range.
    #[arg(long)]
    minuscule: bool,

    /// Enumerate lambda with entries in [-B, B].
    #[arg(long, value_name = "B")]
    lambda_bound: Option<i64>,

    /// Pair every enumerated lambda with every Weyl element instead of only
    /// the identity.
    #[arg(long)]
    all_weyl: bool,

    /// Row-count guard; overrides ADLV_MAX_ROWS.
    #[arg(long)]
    max_rows: Option<u64>,
}

/// A complete job description, as read from a --spec file. The inline flag
/// forms of the subcommands convert into this before execution.
#[derive(Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
enum JobSpec {
    Classify {
        datum: DatumSpec,
        mu: Vec<i64>,
        b: BRepSpec,
    },
    Pi0 {
        datum: DatumSpec,
        mu: Vec<i64>,
        b: BRepSpec,
    },
    Iset {
        datum: DatumSpec,
        mu: Vec<i64>,
        b: BRepSpec,
        /// Simple indices of M; empty list means the torus; absent means
        /// b's declared Levi, else the torus.
        #[serde(default)]
        m: Option<Vec<usize>>,
    },
    Chain {
        datum: DatumSpec,
        mu: Vec<i64>,
        b: BRepSpec,
        #[serde(default)]
        m: Option<Vec<usize>>,
        from: Vec<i64>,
        to: Vec<i64>,
        #[serde(default)]
        refine: bool,
    },
    Oracle {
        #[serde(flatten)]
        config: OracleConfig,
        #[serde(default)]
        points: bool,
    },
    Survey {
        datum: DatumSpec,
        #[serde(default)]
        rows: Vec<RowSpec>,
        #[serde(default)]
        mu_bound: Option<i64>,
        #[serde(default)]
        minuscule: bool,
        #[serde(default)]
        lambda_bound: Option<i64>,
        #[serde(default)]
        all_weyl: bool,
        #[serde(default)]
        max_rows: Option<u64>,
    },
}

/// One explicit survey row: the pair (mu, b) with b = (lambda, word).
#[derive(Clone, Deserialize)]
struct RowSpec {
    mu: Vec<i64>,
    lambda: Vec<i64>,
    #[serde(default)]
    w_word: Vec<usize>,
}

#[derive(Serialize)]
struct SurveyRow {
    mu: Vec<i64>,
    lambda: Vec<i64>,
    w_word: Vec<usize>,
    /// None when the pair lies outside the bounded set (empty variety).
    hn_class: Option<HNClass>,
    pi0: Pi0Descriptor,
}

struct CliError {
    message: String,
    code: u8,
}

impl CliError {
    fn input(message: impl Into<String>) -> CliError {
        CliError { message: message.into(), code: EXIT_PRECONDITION }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        let code = match e {
            Error::EmptyClass(_) => EXIT_EMPTY,
            Error::ResourceExhausted(_) | Error::PrecisionExhausted(_) => EXIT_RESOURCE,
            Error::Internal(_) | Error::Disconnected(_) => EXIT_INTERNAL,
            _ => EXIT_PRECONDITION,
        };
        CliError { message: e.to_string(), code }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> CliError {
        CliError { message: format!("io error: {e}"), code: EXIT_PRECONDITION }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> CliError {
        CliError { message: format!("invalid job description: {e}"), code: EXIT_PRECONDITION }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn run(cli: Cli) -> Result<u8, CliError> {
    let job = match (&cli.spec, cli.command) {
        (Some(_), Some(_)) => {
            return Err(CliError::input("pass either --spec or a subcommand, not both"))
        }
        (None, None) => return Err(CliError::input("a subcommand or --spec FILE is required")),
        (Some(path), None) => serde_json::from_str(&fs::read_to_string(path)?)?,
        (None, Some(cmd)) => cmd.into_job()?,
    };
    let (report, code) = execute(&job)?;
    emit(&report, cli.format, cli.out.as_deref())?;
    Ok(code)
}

impl Command {
    fn into_job(self) -> Result<JobSpec, CliError> {
        Ok(match self {
            Command::Classify(a) => {
                let (datum, mu, b) = a.into_parts()?;
                JobSpec::Classify { datum, mu, b }
            }
            Command::Pi0(a) => {
                let (datum, mu, b) = a.into_parts()?;
                JobSpec::Pi0 { datum, mu, b }
            }
            Command::Iset(a) => {
                let m = a.m.as_deref().map(parse_levi_indices).transpose()?;
                let (datum, mu, b) = a.pair.into_parts()?;
                JobSpec::Iset { datum, mu, b, m }
            }
            Command::Chain(a) => {
                let m = a.iset.m.as_deref().map(parse_levi_indices).transpose()?;
                let (datum, mu, b) = a.iset.pair.into_parts()?;
                JobSpec::Chain { datum, mu, b, m, from: a.from, to: a.to, refine: a.refine }
            }
            Command::Oracle(a) => {
                let w = if a.w.is_empty() { (0..a.n).collect() } else { a.w };
                let config = OracleConfig {
                    n: a.n,
                    q: a.q,
                    m_max: a.m_max,
                    depth: a.depth,
                    mu: a.mu,
                    lambda: a.lambda,
                    w,
                    closure: a.closure,
                    max_lattices: a.max_lattices.unwrap_or_else(default_max_lattices),
                };
                JobSpec::Oracle { config, points: a.points }
            }
            Command::Survey(a) => {
                let rows = a.rows.iter().map(|s| parse_row(s)).collect::<Result<_, _>>()?;
                JobSpec::Survey {
                    datum: a.datum.into_spec()?,
                    rows,
                    mu_bound: a.mu_bound,
                    minuscule: a.minuscule,
                    lambda_bound: a.lambda_bound,
                    all_weyl: a.all_weyl,
                    max_rows: a.max_rows,
                }
            }
        })
    }
}

impl DatumArgs {
    fn into_spec(self) -> Result<DatumSpec, CliError> {
        if let Some(file) = &self.datum {
            return Ok(serde_json::from_str(&fs::read_to_string(file)?)?);
        }
        let preset = self
            .preset
            .ok_or_else(|| CliError::input("a group is required: --preset NAME or --datum FILE"))?;
        let mut params = BTreeMap::new();
        for kv in &self.params {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| CliError::input(format!("parameter {kv:?} is not NAME=VALUE")))?;
            let v: i64 = v
                .parse()
                .map_err(|_| CliError::input(format!("parameter value {v:?} is not an integer")))?;
            params.insert(k.to_string(), v);
        }
        Ok(DatumSpec::Preset { preset, params })
    }
}

impl PairArgs {
    fn into_parts(self) -> Result<(DatumSpec, Vec<i64>, BRepSpec), CliError> {
        let levi = self.levi.as_deref().map(parse_levi_indices).transpose()?;
        let b = BRepSpec { lambda: ivec(&self.lambda), w_word: self.w_word, levi };
        Ok((self.datum.into_spec()?, self.mu, b))
    }
}

/// "torus" or the empty string name the torus; otherwise comma-separated
/// simple indices.
fn parse_levi_indices(s: &str) -> Result<Vec<usize>, CliError> {
    if s.is_empty() || s == "torus" {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|p| {
            p.trim()
                .parse()
                .map_err(|_| CliError::input(format!("Levi index {p:?} is not an integer")))
        })
        .collect()
}

fn parse_row(s: &str) -> Result<RowSpec, CliError> {
    let parts: Vec<&str> = s.split('/').collect();
    if parts.len() != 3 {
        return Err(CliError::input(format!(
            "row {s:?} is not of the form MU/LAMBDA/WORD"
        )));
    }
    let nums = |field: &str| -> Result<Vec<i64>, CliError> {
        if field.is_empty() {
            return Ok(Vec::new());
        }
        field
            .split(',')
            .map(|p| {
                p.trim()
                    .parse()
                    .map_err(|_| CliError::input(format!("row entry {p:?} is not an integer")))
            })
            .collect()
    };
    let word = nums(parts[2])?
        .into_iter()
        .map(|v| {
            usize::try_from(v)
                .map_err(|_| CliError::input(format!("word letter {v} is not a simple index")))
        })
        .collect::<Result<_, _>>()?;
    Ok(RowSpec { mu: nums(parts[0])?, lambda: nums(parts[1])?, w_word: word })
}

fn env_cap(name: &str) -> Result<Option<u64>, CliError> {
    match std::env::var(name) {
        Err(_) => Ok(None),
        Ok(v) => v
            .parse()
            .map(Some)
            .map_err(|_| CliError::input(format!("{name} must be an integer, got {v:?}"))),
    }
}

fn execute(job: &JobSpec) -> Result<(Value, u8), CliError> {
    match job {
        JobSpec::Classify { datum, mu, b } => exec_classify(datum, mu, b),
        JobSpec::Pi0 { datum, mu, b } => exec_pi0(datum, mu, b),
        JobSpec::Iset { datum, mu, b, m } => exec_iset(datum, mu, b, m.as_deref()),
        JobSpec::Chain { datum, mu, b, m, from, to, refine } => {
            exec_chain(datum, mu, b, m.as_deref(), from, to, *refine)
        }
        JobSpec::Oracle { config, points } => exec_oracle(config, *points),
        JobSpec::Survey { datum, rows, mu_bound, minuscule, lambda_bound, all_weyl, max_rows } => {
            exec_survey(datum, rows, *mu_bound, *minuscule, *lambda_bound, *all_weyl, *max_rows)
        }
    }
}

/// Levi resolution shared by iset and chain: explicit indices win, then b's
/// declared Levi, then the torus.
fn resolve_m(m: Option<&[usize]>, b: &BRep) -> LeviSubset {
    match m {
        Some(idx) => LeviSubset::from_indices(idx),
        None => b.levi.clone().unwrap_or_else(LeviSubset::torus),
    }
}

fn pair_inputs(
    datum: &DatumSpec,
    mu: &[i64],
    b: &BRepSpec,
) -> Result<(RootDatum, Vec<adlv::Int>, BRep), CliError> {
    let rd = build_root_datum(datum)?;
    let brep = BRep::from_spec(&rd, b)?;
    Ok((rd, ivec(mu), brep))
}

fn exec_classify(datum: &DatumSpec, mu: &[i64], b: &BRepSpec) -> Result<(Value, u8), CliError> {
    let (rd, mu_int, brep) = pair_inputs(datum, mu, b)?;
    let cert = in_b_g_mu(&rd, &brep, &mu_int, &brep.ambient_levi(&rd))?;
    if !cert.member {
        let report = json!({
            "command": "classify",
            "datum": rd.name,
            "mu": mu,
            "b": b,
            "empty": true,
            "certificate": serde_json::to_value(&cert)?,
        });
        return Ok((report, EXIT_EMPTY));
    }
    let hn = hn_classify(&rd, &brep, &mu_int)?;
    let report = json!({
        "command": "classify",
        "datum": rd.name,
        "mu": mu,
        "b": b,
        "empty": false,
        "report": serde_json::to_value(&hn)?,
    });
    Ok((report, 0))
}

fn exec_pi0(datum: &DatumSpec, mu: &[i64], b: &BRepSpec) -> Result<(Value, u8), CliError> {
    let (rd, mu_int, brep) = pair_inputs(datum, mu, b)?;
    let desc = pi0_compute(&rd, &mu_int, &brep)?;
    let empty = desc.variant == Pi0Variant::Empty;
    let report = json!({
        "command": "pi0",
        "datum": rd.name,
        "mu": mu,
        "b": b,
        "empty": empty,
        "pi0": serde_json::to_value(&desc)?,
    });
    Ok((report, if empty { EXIT_EMPTY } else { 0 }))
}

fn exec_iset(
    datum: &DatumSpec,
    mu: &[i64],
    b: &BRepSpec,
    m: Option<&[usize]>,
) -> Result<(Value, u8), CliError> {
    let (rd, mu_int, brep) = pair_inputs(datum, mu, b)?;
    let levi = resolve_m(m, &brep);
    let iset = iset_enumerate(&rd, &mu_int, &brep, &levi)?;
    let empty = iset.elements.is_empty();
    let report = json!({
        "command": "iset",
        "datum": rd.name,
        "mu": mu,
        "b": b,
        "m": levi.indices(),
        "iset": serde_json::to_value(&iset)?,
    });
    Ok((report, if empty { EXIT_EMPTY } else { 0 }))
}

fn exec_chain(
    datum: &DatumSpec,
    mu: &[i64],
    b: &BRepSpec,
    m: Option<&[usize]>,
    from: &[i64],
    to: &[i64],
    refine: bool,
) -> Result<(Value, u8), CliError> {
    let (rd, mu_int, brep) = pair_inputs(datum, mu, b)?;
    let levi = resolve_m(m, &brep);
    let iset = iset_enumerate(&rd, &mu_int, &brep, &levi)?;
    let chain = convexity_chain(&rd, &iset, &ivec(from), &ivec(to))?;
    chain_verify(&rd, &iset, &chain)?;
    let refined = if refine {
        let fine = refine_immediate(&rd, &iset, &chain)?;
        chain_verify(&rd, &iset, &fine)?;
        Some(fine)
    } else {
        None
    };
    let report = json!({
        "command": "chain",
        "datum": rd.name,
        "mu": mu,
        "b": b,
        "m": levi.indices(),
        "from": from,
        "to": to,
        "chain": serde_json::to_value(&chain)?,
        "refined": serde_json::to_value(&refined)?,
    });
    Ok((report, 0))
}

fn exec_oracle(config: &OracleConfig, points: bool) -> Result<(Value, u8), CliError> {
    let mut config = config.clone();
    if config.max_lattices == default_max_lattices() {
        if let Some(cap) = env_cap("ADLV_MAX_LATTICES")? {
            config.max_lattices = cap;
        }
    }
    let verdict = nonempty_oracle(&config)?;
    let dump = if points { Some(adlv_points(&config)?) } else { None };
    let code = if matches!(verdict.verdict, OracleVerdict::ProvenEmpty) { EXIT_EMPTY } else { 0 };
    let report = json!({
        "command": "oracle",
        "config": serde_json::to_value(&config)?,
        "report": serde_json::to_value(&verdict)?,
        "points": serde_json::to_value(&dump)?,
    });
    Ok((report, code))
}

fn exec_survey(
    datum: &DatumSpec,
    rows: &[RowSpec],
    mu_bound: Option<i64>,
    minuscule: bool,
    lambda_bound: Option<i64>,
    all_weyl: bool,
    max_rows: Option<u64>,
) -> Result<(Value, u8), CliError> {
    let rd = build_root_datum(datum)?;
    let cap = match max_rows {
        Some(v) => v,
        None => env_cap("ADLV_MAX_ROWS")?.unwrap_or(DEFAULT_MAX_ROWS),
    };

    let mut inputs: Vec<RowSpec> = rows.to_vec();
    match (mu_bound, lambda_bound) {
        (None, None) => {}
        (Some(mb), Some(lb)) => {
            let full = LeviSubset::full(rd.n_simple());
            let mut mus = Vec::new();
            for v in boxed_vectors(rd.rank, mb)? {
                let vi = ivec(&v);
                if rd.is_dominant(&vi, &full) && (!minuscule || rd.is_minuscule(&vi, &full)) {
                    mus.push(v);
                }
            }
            let lambdas = boxed_vectors(rd.rank, lb)?;
            let words: Vec<Vec<usize>> = if all_weyl {
                rd.weyl_group(&full).iter().map(|w| w.word.clone()).collect()
            } else {
                vec![Vec::new()]
            };
            let extra = (mus.len() as u128) * (lambdas.len() as u128) * (words.len() as u128);
            if inputs.len() as u128 + extra > cap as u128 {
                return Err(Error::ResourceExhausted(format!(
                    "survey would produce {} rows, cap is {cap} (raise --max-rows or ADLV_MAX_ROWS)",
                    inputs.len() as u128 + extra
                ))
                .into());
            }
            for mu in &mus {
                for lambda in &lambdas {
                    for word in &words {
                        inputs.push(RowSpec {
                            mu: mu.clone(),
                            lambda: lambda.clone(),
                            w_word: word.clone(),
                        });
                    }
                }
            }
        }
        _ => {
            return Err(CliError::input(
                "range enumeration needs both --mu-bound and --lambda-bound",
            ))
        }
    }
    if inputs.len() as u64 > cap {
        return Err(Error::ResourceExhausted(format!(
            "survey has {} rows, cap is {cap} (raise --max-rows or ADLV_MAX_ROWS)",
            inputs.len()
        ))
        .into());
    }

    // Rows run concurrently; the collected order is the input order, so the
    // table is canonical regardless of scheduling.
    use rayon::prelude::*;
    let computed: Result<Vec<SurveyRow>, Error> =
        inputs.par_iter().map(|spec| survey_row(&rd, spec)).collect();
    let computed = computed?;

    let report = json!({
        "command": "survey",
        "datum": rd.name,
        "row_count": computed.len(),
        "rows": serde_json::to_value(&computed)?,
    });
    Ok((report, 0))
}

fn survey_row(rd: &RootDatum, spec: &RowSpec) -> Result<SurveyRow, Error> {
    let mu = ivec(&spec.mu);
    let w = rd.weyl_from_word(&spec.w_word)?;
    let b = BRep::new(rd, ivec(&spec.lambda), w, None)?;
    let pi0 = pi0_compute(rd, &mu, &b)?;
    let hn_class = match hn_classify(rd, &b, &mu) {
        Ok(report) => Some(report.hn_class),
        Err(Error::EmptyClass(_)) => None,
        Err(e) => return Err(e),
    };
    Ok(SurveyRow {
        mu: spec.mu.clone(),
        lambda: spec.lambda.clone(),
        w_word: spec.w_word.clone(),
        hn_class,
        pi0,
    })
}

/// All integer vectors of the given rank with entries in [-bound, bound], in
/// lexicographic order.
fn boxed_vectors(rank: usize, bound: i64) -> Result<Vec<Vec<i64>>, CliError> {
    if bound < 0 {
        return Err(CliError::input("range bound must be nonnegative"));
    }
    let side = 2 * bound as u128 + 1;
    let total = side.checked_pow(rank as u32).filter(|&t| t <= SURVEY_BOX_CAP);
    let total = total.ok_or_else(|| {
        CliError::from(Error::ResourceExhausted(format!(
            "range box (2*{bound}+1)^{rank} exceeds the enumeration cap {SURVEY_BOX_CAP}"
        )))
    })?;
    let mut out = Vec::with_capacity(total as usize);
    let mut cur = vec![-bound; rank];
    loop {
        out.push(cur.clone());
        let mut i = rank;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if cur[i] < bound {
                cur[i] += 1;
                break;
            }
            cur[i] = -bound;
        }
    }
}

fn emit(report: &Value, format: Format, out: Option<&Path>) -> Result<(), CliError> {
    let text = match format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(report)?),
        Format::Table => render_table(report),
    };
    match out {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn compact(v: &Value) -> String {
    serde_json::to_string(v).unwrap_or_default()
}

fn render_table(report: &Value) -> String {
    if report.get("command").and_then(Value::as_str) == Some("survey") {
        if let Some(rows) = report.get("rows").and_then(Value::as_array) {
            return survey_table(rows);
        }
    }
    let mut lines = Vec::new();
    flatten_lines("", report, &mut lines);
    let mut text = lines.join("\n");
    text.push('\n');
    text
}

fn flatten_lines(prefix: &str, v: &Value, lines: &mut Vec<String>) {
    match v {
        Value::Object(map) if !map.is_empty() => {
            for (k, vv) in map {
                let path =
                    if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten_lines(&path, vv, lines);
            }
        }
        _ => lines.push(format!("{prefix} = {}", compact(v))),
    }
}

fn survey_table(rows: &[Value]) -> String {
    let header = ["mu", "lambda", "w", "hn-class", "pi0"];
    let grid: Vec<[String; 5]> = rows
        .iter()
        .map(|r| {
            [
                compact(&r["mu"]),
                compact(&r["lambda"]),
                compact(&r["w_word"]),
                r["hn_class"].as_str().unwrap_or("-").to_string(),
                pi0_cell(&r["pi0"]),
            ]
        })
        .collect();
    let mut widths = header.map(str::len);
    for row in &grid {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let fmt_row = |cells: [&str; 5]| -> String {
        let padded: Vec<String> = cells
            .iter()
            .zip(widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        let mut line = padded.join(" | ");
        line.truncate(line.trim_end().len());
        line
    };
    let mut out = fmt_row(header);
    out.push('\n');
    out.push_str(&"-".repeat(widths.iter().sum::<usize>() + 3 * (widths.len() - 1)));
    out.push('\n');
    for row in &grid {
        out.push_str(&fmt_row([&row[0], &row[1], &row[2], &row[3], &row[4]]));
        out.push('\n');
    }
    out
}

fn pi0_cell(d: &Value) -> String {
    match d.get("variant").and_then(Value::as_str).unwrap_or("?") {
        "empty" => "empty".into(),
        "coset" => format!(
            "coset {} base={}",
            d["coset"]["space"].as_str().unwrap_or("?"),
            compact(&d["coset"]["base"])
        ),
        "discrete" => {
            format!("discrete {}", d["group"]["display"].as_str().unwrap_or("?"))
        }
        "product" => {
            format!("product[{}]", d["factors"].as_array().map_or(0, Vec::len))
        }
        other => other.into(),
    }
}
