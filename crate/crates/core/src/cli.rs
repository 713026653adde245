//! Command-line front end: `eval`, `sweep`, `campaign`, `reproduce`.
//!
//! [`run`] executes a command in process and returns what would be written
//! to stdout and stderr together with the exit code: 0 on success, 1 when a
//! campaign finds violations, 2 for usage or input errors.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;

use crate::bounds::{tripartite_family, BoundReport, BoundSpec, EntanglementProfile, Family};
use crate::error::{Error, Result};
use crate::gsd::{
    gsd_analytic_measures, make_gsd_state, tripartite_concurrences, SchmidtParams, PARTY_B, PARTY_C,
};
use crate::harness::{
    self, figure_profile, profile_table, CampaignConfig, CampaignKind, Figure, Grid,
    DEFAULT_FIGURE_K,
};
use crate::measures::{negativity_pure, Bipartition, PureState};

pub const SCHEMA_VERSION: &str = "1";
/// Decimal inputs may miss unit norm by this much before being rescaled.
pub const INPUT_NORM_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            stdout,
            stderr: String::new(),
            code: 0,
        }
    }

    fn usage(message: impl std::fmt::Display) -> Self {
        Self {
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
            code: 2,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct OutputRecord<T: Serialize> {
    pub schema_version: &'static str,
    pub command: String,
    pub args: Vec<String>,
    pub payload: T,
}

#[derive(Debug, Parser)]
#[command(
    name = "monogamy",
    version,
    about = "Entanglement measures and monogamy lower bounds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Measures and bound values for one three-qubit state.
    Eval(EvalArgs),
    /// Bound table across β for one state, as CSV.
    Sweep(SweepArgs),
    /// Seeded verification campaign, as JSON.
    Campaign(CampaignArgs),
    /// Figure data, as CSV.
    Reproduce(ReproduceArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
enum MeasureKind {
    Concurrence,
    Negativity,
}

#[derive(Debug, Args)]
struct SourceArgs {
    /// Five comma-separated decimals λ0..λ4 of the three-qubit family.
    #[arg(long, value_name = "L0,L1,L2,L3,L4", conflicts_with = "amplitudes")]
    gsd: Option<String>,
    /// Phase of the λ1 amplitude.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    phi: f64,
    /// File with eight amplitudes, one per line as `re,im`, `re im` or `re`.
    /// Qubit 0 is A, qubit 1 is B, qubit 2 is C.
    #[arg(long, value_name = "PATH")]
    amplitudes: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct EvalArgs {
    #[command(flatten)]
    source: SourceArgs,
    #[arg(long, allow_negative_numbers = true)]
    beta: f64,
    #[arg(long, allow_negative_numbers = true)]
    k: f64,
    /// Families to evaluate; all by default.
    #[arg(long, value_delimiter = ',')]
    family: Vec<Family>,
    #[arg(long, value_enum, default_value_t = MeasureKind::Concurrence)]
    measure: MeasureKind,
}

#[derive(Debug, Args)]
struct GridArgs {
    #[arg(long, default_value_t = 4.0, allow_negative_numbers = true)]
    beta_min: f64,
    #[arg(long, default_value_t = 12.0, allow_negative_numbers = true)]
    beta_max: f64,
    #[arg(long, default_value_t = 0.05, allow_negative_numbers = true)]
    step: f64,
    #[arg(long, default_value_t = DEFAULT_FIGURE_K, allow_negative_numbers = true)]
    k: f64,
    /// Write the CSV here instead of stdout.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SweepArgs {
    /// A figure state: fig1 or fig2.
    #[arg(long, conflicts_with_all = ["gsd", "amplitudes"])]
    state: Option<String>,
    #[command(flatten)]
    source: SourceArgs,
    #[arg(long, value_enum, default_value_t = MeasureKind::Concurrence)]
    measure: MeasureKind,
    #[command(flatten)]
    grid: GridArgs,
}

#[derive(Debug, Args)]
struct CampaignArgs {
    /// ckw, lemma, validity or dominance.
    #[arg(long)]
    kind: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    samples: Option<usize>,
    /// Explicit β values (x values for the lemma scan).
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true, conflicts_with_all = ["beta_min", "beta_max", "beta_step"])]
    betas: Vec<f64>,
    #[arg(long, allow_negative_numbers = true, requires_all = ["beta_max", "beta_step"])]
    beta_min: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    beta_max: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    beta_step: Option<f64>,
    /// Explicit k values.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true, conflicts_with_all = ["k_min", "k_max", "k_step"])]
    ks: Vec<f64>,
    #[arg(long, allow_negative_numbers = true, requires_all = ["k_max", "k_step"])]
    k_min: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    k_max: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    k_step: Option<f64>,
    #[arg(long)]
    t_points: Option<usize>,
    #[arg(long)]
    tolerance: Option<f64>,
    /// Family checked by the validity campaign.
    #[arg(long, default_value = "NEW")]
    family: Family,
    /// Report only: skip hypothesis checks and always exit 0.
    #[arg(long)]
    exploratory: bool,
}

#[derive(Debug, Args)]
struct ReproduceArgs {
    /// fig1 or fig2.
    figure: String,
    #[command(flatten)]
    grid: GridArgs,
}

/// Parses and executes one invocation; `args` includes the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code: 2,
                }
            } else {
                Outcome::ok(text)
            };
        }
    };
    let echo: Vec<String> = argv
        .iter()
        .skip(2)
        .map(|a| a.to_string_lossy().into_owned())
        .collect();
    let result = match cli.command {
        Command::Eval(a) => cmd_eval(&a, echo),
        Command::Sweep(a) => cmd_sweep(&a, echo),
        Command::Campaign(a) => cmd_campaign(&a, echo),
        Command::Reproduce(a) => cmd_reproduce(&a, echo),
    };
    result.unwrap_or_else(Outcome::usage)
}

fn to_json<T: Serialize>(command: &str, args: Vec<String>, payload: T) -> Result<String> {
    let record = OutputRecord {
        schema_version: SCHEMA_VERSION,
        command: command.to_string(),
        args,
        payload,
    };
    let mut s = serde_json::to_string_pretty(&record)
        .map_err(|e| Error::Config(format!("serialization failed: {e}")))?;
    s.push('\n');
    Ok(s)
}

/// Parses `λ0,…,λ4` as decimals and rescales to unit norm.
pub fn parse_gsd_params(text: &str, phi: f64) -> Result<SchmidtParams> {
    let values = text
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| Error::Config(format!("'{}' is not a decimal number", s.trim())))
        })
        .collect::<Result<Vec<f64>>>()?;
    let lambdas: [f64; 5] = values
        .try_into()
        .map_err(|v: Vec<f64>| Error::Config(format!("--gsd needs 5 values, got {}", v.len())))?;
    SchmidtParams::normalized(lambdas, phi, INPUT_NORM_TOL)
}

/// Parses one amplitude per line (`re,im`, `re im` or `re`); blank lines
/// and `#` comments are skipped.
pub fn parse_amplitudes(text: &str) -> Result<PureState> {
    let mut amps = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let parts: Vec<&str> = line
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .collect();
        let num = |s: &str| {
            s.parse::<f64>().map_err(|_| {
                Error::Config(format!(
                    "line {}: '{s}' is not a decimal number",
                    lineno + 1
                ))
            })
        };
        let z = match parts.as_slice() {
            [re] => Complex64::new(num(re)?, 0.0),
            [re, im] => Complex64::new(num(re)?, num(im)?),
            _ => {
                return Err(Error::Config(format!(
                    "line {}: expected 're,im', 're im' or 're'",
                    lineno + 1
                )))
            }
        };
        amps.push(z);
    }
    if amps.len() != 8 {
        return Err(Error::Config(format!(
            "expected 8 amplitudes for three qubits, got {}",
            amps.len()
        )));
    }
    let norm_sqr: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
    if !norm_sqr.is_finite() || (norm_sqr - 1.0).abs() > INPUT_NORM_TOL {
        return Err(Error::NotNormalized { norm_sqr });
    }
    PureState::normalized(amps)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
struct TripartiteValues {
    ab: f64,
    ac: f64,
    a_bc: f64,
}

enum Source {
    Gsd(SchmidtParams),
    Amplitudes(PureState),
}

impl Source {
    fn from_args(args: &SourceArgs) -> Result<Self> {
        match (&args.gsd, &args.amplitudes) {
            (Some(text), None) => Ok(Source::Gsd(parse_gsd_params(text, args.phi)?)),
            (None, Some(path)) => Ok(Source::Amplitudes(parse_amplitudes(&read(path)?)?)),
            _ => Err(Error::Config(
                "give exactly one state source: --gsd or --amplitudes".into(),
            )),
        }
    }

    fn state(&self) -> PureState {
        match self {
            Source::Gsd(p) => make_gsd_state(p),
            Source::Amplitudes(psi) => psi.clone(),
        }
    }

    fn parties(&self) -> (usize, usize) {
        match self {
            Source::Gsd(_) => (PARTY_B, PARTY_C),
            Source::Amplitudes(_) => (1, 2),
        }
    }

    fn numeric(&self, measure: MeasureKind) -> Result<TripartiteValues> {
        let psi = self.state();
        let (b, c) = self.parties();
        let m = tripartite_concurrences(&psi, b, c)?;
        let a_bc = match measure {
            MeasureKind::Concurrence => m.c_a_bc,
            MeasureKind::Negativity => negativity_pure(&psi, &Bipartition::first_vs_rest(3)?)?,
        };
        // two-qubit CREN equals concurrence
        Ok(TripartiteValues {
            ab: m.c_ab,
            ac: m.c_ac,
            a_bc,
        })
    }

    /// Closed forms; for this family the CREN values coincide with the
    /// concurrences.
    fn analytic(&self) -> Option<TripartiteValues> {
        match self {
            Source::Gsd(p) => {
                let m = gsd_analytic_measures(p);
                Some(TripartiteValues {
                    ab: m.c_ab,
                    ac: m.c_ac,
                    a_bc: m.c_a_bc,
                })
            }
            Source::Amplitudes(_) => None,
        }
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))
}

fn write_out(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text)
        .map_err(|e| Error::Config(format!("cannot write {}: {e}", path.display())))
}

#[derive(Debug, Serialize)]
struct BoundEntry {
    family: Family,
    #[serde(skip_serializing_if = "Option::is_none")]
    report: Option<BoundReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

#[derive(Debug, Serialize)]
struct EvalReport {
    source: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    params: Option<SchmidtParams>,
    measure: MeasureKind,
    numeric: TripartiteValues,
    #[serde(skip_serializing_if = "Option::is_none")]
    analytic: Option<TripartiteValues>,
    ckw_slack: f64,
    beta: f64,
    k: f64,
    truth: f64,
    bounds: Vec<BoundEntry>,
}

fn cmd_eval(args: &EvalArgs, echo: Vec<String>) -> Result<Outcome> {
    if !args.beta.is_finite() || args.beta <= 0.0 {
        return Err(Error::Config(format!(
            "--beta {} must be positive",
            args.beta
        )));
    }
    if !(args.k > 0.0 && args.k <= 1.0) {
        return Err(Error::Config(format!("--k {} outside (0, 1]", args.k)));
    }
    let source = Source::from_args(&args.source)?;
    let numeric = source.numeric(args.measure)?;
    let families: Vec<Family> = if args.family.is_empty() {
        Family::ALL.to_vec()
    } else {
        args.family.clone()
    };
    let bounds = families
        .into_iter()
        .map(|family| {
            match BoundSpec::tripartite(family, args.beta, args.k)
                .and_then(|s| tripartite_family(numeric.ab, numeric.ac, &s))
            {
                Ok(r) => BoundEntry {
                    family,
                    report: Some(r),
                    error: None,
                },
                Err(e) => BoundEntry {
                    family,
                    report: None,
                    error: Some(e.to_string()),
                },
            }
        })
        .collect();
    let report = EvalReport {
        source: match source {
            Source::Gsd(_) => "gsd",
            Source::Amplitudes(_) => "amplitudes",
        },
        params: match &source {
            Source::Gsd(p) => Some(*p),
            Source::Amplitudes(_) => None,
        },
        measure: args.measure,
        numeric,
        analytic: source.analytic(),
        ckw_slack: numeric.a_bc.powi(2) - numeric.ab.powi(2) - numeric.ac.powi(2),
        beta: args.beta,
        k: args.k,
        truth: numeric.a_bc.powf(args.beta),
        bounds,
    };
    Ok(Outcome::ok(to_json("eval", echo, report)?))
}

#[derive(Debug, Serialize)]
struct WrittenTable {
    out: String,
    rows: usize,
}

fn emit_table(
    command: &str,
    echo: Vec<String>,
    csv: String,
    rows: usize,
    out: Option<&Path>,
) -> Result<Outcome> {
    match out {
        None => Ok(Outcome::ok(csv)),
        Some(path) => {
            write_out(path, &csv)?;
            let payload = WrittenTable {
                out: path.display().to_string(),
                rows,
            };
            Ok(Outcome::ok(to_json(command, echo, payload)?))
        }
    }
}

fn beta_grid(g: &GridArgs) -> Result<Grid> {
    Grid::range(g.beta_min, g.beta_max, g.step)
}

fn cmd_sweep(args: &SweepArgs, echo: Vec<String>) -> Result<Outcome> {
    let profile = match &args.state {
        Some(name) => figure_profile(name.parse::<Figure>()?),
        None => {
            let source = Source::from_args(&args.source)?;
            let v = source.numeric(args.measure)?;
            EntanglementProfile::tripartite(v.ab, v.ac, v.a_bc)?
        }
    };
    let table = profile_table(&profile, args.grid.k, &beta_grid(&args.grid)?)?;
    emit_table(
        "sweep",
        echo,
        table.to_csv(),
        table.rows.len(),
        args.grid.out.as_deref(),
    )
}

fn cmd_reproduce(args: &ReproduceArgs, echo: Vec<String>) -> Result<Outcome> {
    let figure: Figure = args.figure.parse()?;
    let table = harness::reproduce_figure(figure, args.grid.k, &beta_grid(&args.grid)?)?;
    emit_table(
        "reproduce",
        echo,
        table.to_csv(),
        table.rows.len(),
        args.grid.out.as_deref(),
    )
}

fn grid_from(
    list: &[f64],
    range: (Option<f64>, Option<f64>, Option<f64>),
    default: Grid,
) -> Result<Grid> {
    if !list.is_empty() {
        let g = Grid::List(list.to_vec());
        g.validate()?;
        return Ok(g);
    }
    match range {
        (Some(min), Some(max), Some(step)) => Grid::range(min, max, step),
        (None, None, None) => Ok(default),
        _ => Err(Error::Config("grid ranges need min, max and step".into())),
    }
}

fn cmd_campaign(args: &CampaignArgs, echo: Vec<String>) -> Result<Outcome> {
    let kind: CampaignKind = args.kind.parse()?;
    let mut cfg = match kind {
        CampaignKind::Ckw => CampaignConfig::ckw(args.seed, 1000),
        CampaignKind::Lemma => CampaignConfig::lemma_default(),
        CampaignKind::Validity => CampaignConfig::validity(args.seed, 200),
        CampaignKind::Dominance => CampaignConfig::dominance(args.seed, 200),
    };
    cfg.seed = args.seed;
    if let Some(n) = args.samples {
        cfg.sample_count = n;
    }
    cfg.beta_grid = grid_from(
        &args.betas,
        (args.beta_min, args.beta_max, args.beta_step),
        cfg.beta_grid,
    )?;
    cfg.k_grid = grid_from(&args.ks, (args.k_min, args.k_max, args.k_step), cfg.k_grid)?;
    if let Some(t) = args.t_points {
        cfg.t_points = t;
    }
    if let Some(tol) = args.tolerance {
        cfg.tolerance = tol;
    }
    cfg.exploratory = args.exploratory;
    let result = match kind {
        CampaignKind::Ckw => harness::run_ckw_campaign(&cfg)?,
        CampaignKind::Lemma => harness::run_lemma_scan(&cfg)?,
        CampaignKind::Validity => harness::run_bound_validity(&cfg, args.family)?,
        CampaignKind::Dominance => harness::run_dominance(&cfg)?,
    };
    Ok(Outcome {
        stdout: to_json("campaign", echo, &result)?,
        stderr: String::new(),
        code: campaign_exit_code(&result),
    })
}

/// 0 when the campaign passed, 1 when it found violations.
pub fn campaign_exit_code(result: &harness::CampaignResult) -> i32 {
    if result.passed() {
        0
    } else {
        1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Outcome {
        run(std::iter::once("monogamy").chain(args.iter().copied()))
    }

    #[test]
    fn gsd_param_parsing() {
        let p = parse_gsd_params("0.5, 0, 0.70710678, 0.5, 0", 0.0).unwrap();
        let n: f64 = p.lambdas().iter().map(|l| l * l).sum();
        assert!((n - 1.0).abs() < 1e-14);
        assert!(parse_gsd_params("0.5,0,0.7", 0.0).is_err());
        assert!(parse_gsd_params("sqrt2/2,0,0,0,0", 0.0).is_err());
        assert!(parse_gsd_params("0.9,0,0,0,0", 0.0).is_err());
    }

    #[test]
    fn amplitude_parsing() {
        let text = "# ghz\n0.70710678118654752,0\n0 0\n0\n0\n0\n0\n0\n0.70710678118654752 0\n";
        let psi = parse_amplitudes(text).unwrap();
        assert_eq!(psi.num_qubits(), 3);
        assert!(parse_amplitudes("1\n0\n").is_err());
        assert!(parse_amplitudes("1 2 3\n").is_err());
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run_args(&[]).code, 2);
        assert_eq!(run_args(&["eval", "--beta", "4"]).code, 2);
        assert_eq!(run_args(&["campaign", "--kind", "nope"]).code, 2);
        assert_eq!(run_args(&["reproduce", "fig3"]).code, 2);
        assert_eq!(
            run_args(&["eval", "--gsd", "1,0,0", "--beta", "4", "--k", "1"]).code,
            2
        );
        assert_eq!(
            run_args(&["reproduce", "fig1", "--beta-min", "5", "--beta-max", "4"]).code,
            2
        );
        assert_eq!(run_args(&["--help"]).code, 0);
    }

    #[test]
    fn violations_exit_1() {
        let mut r = harness::run_ckw_campaign(&CampaignConfig::ckw(1, 10)).unwrap();
        assert_eq!(campaign_exit_code(&r), 0);
        r.violations = 1;
        assert_eq!(campaign_exit_code(&r), 1);
        r.exploratory = true;
        assert_eq!(campaign_exit_code(&r), 0);
    }

    #[test]
    fn reproduce_single_row() {
        let out = run_args(&[
            "reproduce",
            "fig1",
            "--beta-min",
            "4",
            "--beta-max",
            "4",
            "--step",
            "1",
        ]);
        assert_eq!(out.code, 0, "{}", out.stderr);
        let lines: Vec<&str> = out.stdout.lines().collect();
        assert_eq!(lines.len(), 2);
        assert_eq!(lines[0], "beta,ylm,fei,tao,new,truth");
        assert!(lines[1].starts_with("4.00000000000,0.117187500000,0.109375000000,0.121093750000,0.123281250000,0.250000000000"));
    }
}
