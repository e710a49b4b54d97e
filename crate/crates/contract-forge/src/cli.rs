//! Command-line front end: config ingestion, solves, sweeps, oracle
//! verification, and Monte Carlo runs.
//!
//! All four subcommands read a single JSON config document:
//!
//! ```json
//! {
//!   "profile": { "thetas": [1.0, 2.0], "betas": [0.5, 0.5] },
//!   "params":  { "revenue_r": 1.0, "cost_c": 5.0 },
//!   "regime":  "joint",
//!   "sim":     { "trials": 100000, "seed": 7 },
//!   "sweep":   { "variable": "cost_c", "from": 1.0, "to": 10.0, "steps": 19 }
//! }
//! ```
//!
//! `regime`, `sim`, and `sweep` are optional; `params.fixed_effort` defaults
//! to θ₁R/c whenever the moral-hazard-only regime needs one. A `--regime`
//! flag overrides the config; `--seed` overrides `sim.seed`; `--out` writes
//! to a file instead of stdout. Unknown fields and invariant violations are
//! rejected with messages naming the offending field path.
//!
//! Exit codes: 0 success, 2 configuration or validation error, 3 runtime
//! failure (simulation refusals, output I/O). The `CONTRACT_FORGE_THREADS`
//! environment variable caps the parallelism of the verification oracle.
//!
//! Outputs are deterministic functions of the config file: JSON is emitted
//! with stable key order and CSV rows are sorted by (scenario, value), so
//! reruns are byte-identical.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Once;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::contracts::{check_constraints, default_fixed_effort, solve};
use crate::error::{Error, Result};
use crate::model::{
    MarketParams, ScenarioKind, SolveReport, TypeProfile, EQUALITY_TOL,
};
use crate::oracle::{
    grid_search, grid_search_adverse_only, verify_binding_pattern, BindingAudit, GridSpec,
    OracleVerdict,
};
use crate::sim::{run_simulation, SimConfig, SimStats};

// =============================================================================
// Configuration document
// =============================================================================

/// The JSON configuration document shared by all subcommands.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// The SU population.
    pub profile: TypeProfile,
    /// Market economics.
    pub params: MarketParams,
    /// Default regime for `solve`, `verify`, and `simulate`; `solve` without
    /// a regime reports all three.
    #[serde(default)]
    pub regime: Option<ScenarioKind>,
    /// Monte Carlo settings for `simulate`.
    #[serde(default)]
    pub sim: Option<SimConfig>,
    /// Sweep settings for `sweep`.
    #[serde(default)]
    pub sweep: Option<SweepSpec>,
}

/// Which market quantity a sweep varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepVariable {
    /// Effort-cost coefficient c.
    CostC,
    /// Success revenue R.
    RevenueR,
    /// Probability mass of the stronger of exactly two types.
    HighTypeBeta,
}

impl SweepVariable {
    /// Stable name used in the CSV `variable` column.
    pub fn label(&self) -> &'static str {
        match self {
            SweepVariable::CostC => "cost_c",
            SweepVariable::RevenueR => "revenue_r",
            SweepVariable::HighTypeBeta => "high_type_beta",
        }
    }
}

/// A one-dimensional parameter sweep over a set of regimes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    /// Quantity to vary.
    pub variable: SweepVariable,
    /// First grid value.
    pub from: f64,
    /// Last grid value.
    pub to: f64,
    /// Number of grid points (endpoints included).
    pub steps: usize,
    /// Regimes to solve at each point; defaults to all three.
    #[serde(default = "all_scenarios")]
    pub scenarios: Vec<ScenarioKind>,
}

fn all_scenarios() -> Vec<ScenarioKind> {
    ScenarioKind::all().to_vec()
}

impl SweepSpec {
    /// The conventional range for each variable: c ∈ [1, 10], R ∈ [0.1, 1],
    /// high-type mass ∈ [0.05, 0.95], 19 points each, all regimes.
    pub fn default_range(variable: SweepVariable) -> Self {
        let (from, to) = match variable {
            SweepVariable::CostC => (1.0, 10.0),
            SweepVariable::RevenueR => (0.1, 1.0),
            SweepVariable::HighTypeBeta => (0.05, 0.95),
        };
        Self { variable, from, to, steps: 19, scenarios: all_scenarios() }
    }

    /// Checks range invariants.
    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::InvalidInput(msg));
        if !self.from.is_finite() || !self.to.is_finite() || self.from >= self.to {
            return fail(format!(
                "sweep range must satisfy from < to with finite bounds, got [{}, {}]",
                self.from, self.to
            ));
        }
        if self.steps < 2 {
            return fail(format!("sweep needs at least 2 steps, got {}", self.steps));
        }
        match self.variable {
            SweepVariable::CostC | SweepVariable::RevenueR => {
                if self.from <= 0.0 {
                    return fail(format!(
                        "{} sweeps need positive values, got from = {}",
                        self.variable.label(),
                        self.from
                    ));
                }
            }
            SweepVariable::HighTypeBeta => {
                if self.from <= 0.0 || self.to >= 1.0 {
                    return fail(format!(
                        "high-type mass sweeps must stay strictly inside (0, 1), got [{}, {}]",
                        self.from, self.to
                    ));
                }
            }
        }
        Ok(())
    }
}

// =============================================================================
// Sweeps
// =============================================================================

/// Frozen CSV column order; a golden-file test guards it.
pub const SWEEP_CSV_HEADER: &str = "scenario,variable,value,pu_payoff,su_payoff_low,\
su_payoff_mid,su_payoff_high,welfare,t_low,r_low,t_mid,r_mid,t_high,r_high";

/// One sweep grid point under one regime. Low/mid/high refer to types
/// 1, ⌈n/2⌉, and n.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    /// Regime solved at this point.
    pub scenario: ScenarioKind,
    /// Swept variable.
    pub variable: SweepVariable,
    /// Grid value of the swept variable.
    pub value: f64,
    /// PU expected payoff.
    pub pu_payoff: f64,
    /// SU payoff of the weakest type.
    pub su_payoff_low: f64,
    /// SU payoff of the middle type.
    pub su_payoff_mid: f64,
    /// SU payoff of the strongest type.
    pub su_payoff_high: f64,
    /// Social welfare.
    pub welfare: f64,
    /// Weakest type's down payment.
    pub t_low: f64,
    /// Weakest type's installment.
    pub r_low: f64,
    /// Middle type's down payment.
    pub t_mid: f64,
    /// Middle type's installment.
    pub r_mid: f64,
    /// Strongest type's down payment.
    pub t_high: f64,
    /// Strongest type's installment.
    pub r_high: f64,
}

impl SweepRow {
    fn from_report(variable: SweepVariable, value: f64, report: &SolveReport) -> Self {
        let n = report.menu.len();
        let (low, mid, high) = (0, (n - 1) / 2, n - 1);
        Self {
            scenario: report.regime,
            variable,
            value,
            pu_payoff: report.pu_payoff,
            su_payoff_low: report.su_payoffs[low],
            su_payoff_mid: report.su_payoffs[mid],
            su_payoff_high: report.su_payoffs[high],
            welfare: report.welfare,
            t_low: report.menu[low].down_payment_t,
            r_low: report.menu[low].installment_r,
            t_mid: report.menu[mid].down_payment_t,
            r_mid: report.menu[mid].installment_r,
            t_high: report.menu[high].down_payment_t,
            r_high: report.menu[high].installment_r,
        }
    }

    fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            self.scenario.label(),
            self.variable.label(),
            self.value,
            self.pu_payoff,
            self.su_payoff_low,
            self.su_payoff_mid,
            self.su_payoff_high,
            self.welfare,
            self.t_low,
            self.r_low,
            self.t_mid,
            self.r_mid,
            self.t_high,
            self.r_high,
        )
    }
}

/// Solves every (regime, grid value) pair of a sweep. Rows come back sorted
/// by (scenario label, value).
///
/// The swept variable replaces the corresponding base value at each point;
/// everything else is held at the base config. When the base does not pin a
/// fixed effort, the moral-hazard-only regime re-derives its default ê =
/// θ₁R/c *per grid point*, so sweeping c or R moves ê along.
pub fn sweep_rows(
    profile: &TypeProfile,
    params: &MarketParams,
    spec: &SweepSpec,
) -> Result<Vec<SweepRow>> {
    spec.validate()?;
    profile.validate()?;
    params.validate_for_solve()?;
    if spec.variable == SweepVariable::HighTypeBeta && profile.n() != 2 {
        return Err(Error::InvalidInput(format!(
            "high-type mass sweeps need exactly two types, profile has {}",
            profile.n()
        )));
    }

    let mut scenarios = spec.scenarios.clone();
    if scenarios.is_empty() {
        scenarios = all_scenarios();
    }
    scenarios.sort_by_key(|s| s.label());
    scenarios.dedup();

    let values: Vec<f64> = (0..spec.steps)
        .map(|k| spec.from + (spec.to - spec.from) * k as f64 / (spec.steps - 1) as f64)
        .collect();

    let mut rows = Vec::with_capacity(scenarios.len() * values.len());
    for &scenario in &scenarios {
        for &value in &values {
            let mut point_profile = profile.clone();
            let mut point_params = params.clone();
            match spec.variable {
                SweepVariable::CostC => point_params.cost_c = value,
                SweepVariable::RevenueR => point_params.revenue_r = value,
                SweepVariable::HighTypeBeta => {
                    point_profile.betas = vec![1.0 - value, value];
                }
            }
            if point_params.fixed_effort.is_none() {
                point_params.fixed_effort =
                    Some(default_fixed_effort(&point_profile, &point_params)?);
            }
            let report = solve(scenario, &point_profile, &point_params)?;
            rows.push(SweepRow::from_report(spec.variable, value, &report));
        }
    }
    Ok(rows)
}

/// Renders sweep rows as CSV with the frozen header.
pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::with_capacity(64 * (rows.len() + 1));
    out.push_str(SWEEP_CSV_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&row.csv_line());
        out.push('\n');
    }
    out
}

// =============================================================================
// Errors and exit codes
// =============================================================================

/// A command failure carrying its process exit code.
#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    /// Bad configuration or input — nothing was computed. Exit code 2.
    Validation(String),
    /// The computation or output stage failed. Exit code 3.
    Runtime(String),
}

impl CliError {
    /// Process exit code for this failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Runtime(_) => 3,
        }
    }

    /// Human-readable description.
    pub fn message(&self) -> &str {
        match self {
            CliError::Validation(msg) | CliError::Runtime(msg) => msg,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.message())
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::ProbabilityOutOfRange { .. } | Error::NonFiniteRate(_) => {
                CliError::Runtime(e.to_string())
            }
            _ => CliError::Validation(e.to_string()),
        }
    }
}

// =============================================================================
// Config loading
// =============================================================================

/// Reads and validates a config file.
pub fn load_config(path: &Path) -> std::result::Result<RunConfig, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        CliError::Validation(format!("cannot read config file {}: {e}", path.display()))
    })?;
    parse_config(&text)
}

/// Parses and validates a config document, reporting errors with the dotted
/// path of the offending field (e.g. `profile.betas`).
pub fn parse_config(text: &str) -> std::result::Result<RunConfig, CliError> {
    let mut de = serde_json::Deserializer::from_str(text);
    let config: RunConfig = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let inner = e.inner().to_string();
        let loc = error_location(&e.path().to_string(), &inner);
        CliError::Validation(format!("config error at {loc}: {inner}"))
    })?;
    config
        .profile
        .validate()
        .map_err(|e| CliError::Validation(format!("profile: {e}")))?;
    config
        .params
        .validate()
        .map_err(|e| CliError::Validation(format!("params: {e}")))?;
    if let Some(sim) = &config.sim {
        sim.validate().map_err(|e| CliError::Validation(format!("sim: {e}")))?;
    }
    if let Some(sweep) = &config.sweep {
        sweep.validate().map_err(|e| CliError::Validation(format!("sweep: {e}")))?;
    }
    Ok(config)
}

/// Serde reports a missing field at its *parent* path; append the field name
/// so the message points at the exact hole.
fn error_location(path: &str, message: &str) -> String {
    let missing = message
        .strip_prefix("missing field `")
        .and_then(|rest| rest.split('`').next());
    match missing {
        Some(field) if path == "." => field.to_string(),
        Some(field) => format!("{path}.{field}"),
        None => path.to_string(),
    }
}

// =============================================================================
// Commands
// =============================================================================

/// Output document of `verify`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyOutput {
    /// Regime that was verified.
    pub regime: ScenarioKind,
    /// Grid-search result and its gap to the closed form.
    pub verdict: OracleVerdict,
    /// Binding-pattern audit of the closed-form menu (joint regime only).
    pub binding_audit: Option<BindingAudit>,
}

/// Output document of `simulate`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulateOutput {
    /// Regime whose menu was simulated.
    pub regime: ScenarioKind,
    /// Aggregated Monte Carlo statistics.
    pub stats: SimStats,
    /// Human-readable notes: clamped probabilities, infeasible menus.
    pub warnings: Vec<String>,
}

/// Copies the base params, filling in the default fixed effort when `regime`
/// will need one.
fn params_for(
    regime: ScenarioKind,
    profile: &TypeProfile,
    base: &MarketParams,
) -> Result<MarketParams> {
    let mut params = base.clone();
    if regime == ScenarioKind::MoralHazardOnly && params.fixed_effort.is_none() {
        params.fixed_effort = Some(default_fixed_effort(profile, &params)?);
    }
    Ok(params)
}

/// `solve`: one regime's report, or all three keyed by regime label when the
/// config and flags leave the regime open.
pub fn cmd_solve(
    config: &RunConfig,
    regime_override: Option<ScenarioKind>,
) -> std::result::Result<String, CliError> {
    match regime_override.or(config.regime) {
        Some(regime) => {
            let params = params_for(regime, &config.profile, &config.params)?;
            let report = solve(regime, &config.profile, &params)?;
            to_json(&report)
        }
        None => {
            let mut all = BTreeMap::new();
            for regime in ScenarioKind::all() {
                let params = params_for(regime, &config.profile, &config.params)?;
                let report = solve(regime, &config.profile, &params)?;
                all.insert(regime.label(), report);
            }
            to_json(&all)
        }
    }
}

/// `sweep`: CSV over the configured grid; `--regime` narrows the scenario set.
pub fn cmd_sweep(
    config: &RunConfig,
    regime_override: Option<ScenarioKind>,
) -> std::result::Result<String, CliError> {
    let spec = config
        .sweep
        .as_ref()
        .ok_or_else(|| CliError::Validation("config has no `sweep` section".into()))?;
    let mut spec = spec.clone();
    if let Some(regime) = regime_override {
        spec.scenarios = vec![regime];
    }
    let rows = sweep_rows(&config.profile, &config.params, &spec)?;
    Ok(sweep_csv(&rows))
}

/// `verify`: runs the grid oracle for the joint or observable-effort regime
/// and, for the joint regime, audits the closed-form menu's binding pattern.
pub fn cmd_verify(
    config: &RunConfig,
    regime_override: Option<ScenarioKind>,
    grid: &GridSpec,
) -> std::result::Result<String, CliError> {
    let regime = regime_override.or(config.regime).unwrap_or(ScenarioKind::Joint);
    let output = match regime {
        ScenarioKind::MoralHazardOnly => {
            return Err(CliError::Validation(
                "the moral-hazard-only regime has no grid oracle (its menu is a single \
                 reimbursement contract); verify `joint` or `as` instead"
                    .into(),
            ))
        }
        ScenarioKind::Joint => {
            let verdict = grid_search(&config.profile, &config.params, grid)?;
            let closed = solve(ScenarioKind::Joint, &config.profile, &config.params)?;
            let audit = verify_binding_pattern(
                &closed.menu,
                &config.profile,
                &config.params,
                EQUALITY_TOL,
            )?;
            VerifyOutput { regime, verdict, binding_audit: Some(audit) }
        }
        ScenarioKind::AdverseSelectionOnly => {
            let verdict = grid_search_adverse_only(&config.profile, &config.params, grid)?;
            VerifyOutput { regime, verdict, binding_audit: None }
        }
    };
    to_json(&output)
}

/// `simulate`: solves the effective regime's menu, then Monte Carlos it.
///
/// Precedence for the regime: `--regime` flag, then the config's top-level
/// `regime`, then `sim.regime` (default joint). The seed flag overrides
/// `sim.seed`.
pub fn cmd_simulate(
    config: &RunConfig,
    regime_override: Option<ScenarioKind>,
    seed_override: Option<u64>,
) -> std::result::Result<String, CliError> {
    let mut sim_config = config.sim.clone().unwrap_or_default();
    let regime = regime_override.or(config.regime).unwrap_or(sim_config.regime);
    sim_config.regime = regime;
    if let Some(seed) = seed_override {
        sim_config.seed = seed;
    }

    let params = params_for(regime, &config.profile, &config.params)?;
    let report = solve(regime, &config.profile, &params)?;
    let stats = run_simulation(&report.menu, &config.profile, &params, &sim_config)?;

    let mut warnings = Vec::new();
    let audit = check_constraints(&report.menu, &config.profile, &params, EQUALITY_TOL)?;
    if !audit.is_feasible() {
        warnings.push(format!(
            "solved menu violates {} incentive constraint(s) on this profile; simulated as-is",
            audit.global_ic_violations.len()
        ));
    }
    for (i, &effort) in report.efforts.iter().enumerate() {
        let p = config.profile.thetas[i] * effort;
        if p > 1.0 {
            warnings.push(format!(
                "type index {i}: success probability {p} exceeds 1 and was clamped"
            ));
        }
    }

    to_json(&SimulateOutput { regime, stats, warnings })
}

fn to_json<T: Serialize>(value: &T) -> std::result::Result<String, CliError> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Runtime(format!("cannot serialize output: {e}")))?;
    text.push('\n');
    Ok(text)
}

// =============================================================================
// Argument parsing and the entry point
// =============================================================================

/// Grid geometry flag: `r_steps,t_steps,refine_rounds`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridArg {
    /// Installment steps per axis.
    pub r_steps: usize,
    /// Down-payment steps per axis.
    pub t_steps: usize,
    /// Refinement passes.
    pub refine_rounds: usize,
}

impl std::str::FromStr for GridArg {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(',').collect();
        let [r, t, refine] = parts.as_slice() else {
            return Err(format!("expected `r_steps,t_steps,refine_rounds`, got `{s}`"));
        };
        let parse = |name: &str, raw: &str| {
            raw.trim()
                .parse::<usize>()
                .map_err(|_| format!("{name} must be a nonnegative integer, got `{raw}`"))
        };
        Ok(GridArg {
            r_steps: parse("r_steps", r)?,
            t_steps: parse("t_steps", t)?,
            refine_rounds: parse("refine_rounds", refine)?,
        })
    }
}

impl From<GridArg> for GridSpec {
    fn from(arg: GridArg) -> GridSpec {
        GridSpec::new(arg.r_steps, arg.t_steps, arg.refine_rounds)
    }
}

/// Flags shared by every subcommand.
#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Path to the JSON market configuration.
    #[arg(long, value_name = "PATH")]
    pub config: PathBuf,
    /// Write output here instead of stdout.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Regime override: joint, as, or mh.
    #[arg(long, value_name = "REGIME")]
    pub regime: Option<ScenarioKind>,
}

/// Subcommands.
#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve the contract menu (all three regimes when none is configured).
    Solve {
        /// Shared flags.
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Sweep a market parameter and emit figure-ready CSV.
    Sweep {
        /// Shared flags.
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Check the closed-form menu against the brute-force grid oracle.
    Verify {
        /// Shared flags.
        #[command(flatten)]
        common: CommonArgs,
        /// Grid geometry as `r_steps,t_steps,refine_rounds`.
        #[arg(long, value_name = "SPEC")]
        grid: Option<GridArg>,
    },
    /// Monte Carlo simulation of the solved menu.
    Simulate {
        /// Shared flags.
        #[command(flatten)]
        common: CommonArgs,
        /// Override the configured RNG seed.
        #[arg(long, value_name = "U64")]
        seed: Option<u64>,
    },
}

/// Top-level argument grammar.
#[derive(Debug, Parser)]
#[command(
    name = "contract-forge",
    version,
    about = "Design, verify, and simulate financing contracts for spectrum trading"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Applies `CONTRACT_FORGE_THREADS` to the global worker pool. Unset means
/// library defaults; anything set must be a positive integer.
pub fn init_thread_pool_from_env() -> std::result::Result<(), CliError> {
    static INIT: Once = Once::new();
    let Some(raw) = std::env::var_os("CONTRACT_FORGE_THREADS") else {
        return Ok(());
    };
    let raw = raw.to_string_lossy();
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&k| k >= 1)
        .ok_or_else(|| {
            CliError::Validation(format!(
                "CONTRACT_FORGE_THREADS must be a positive integer, got `{raw}`"
            ))
        })?;
    let mut outcome = Ok(());
    INIT.call_once(|| {
        outcome = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| CliError::Runtime(format!("cannot configure the thread pool: {e}")));
    });
    outcome
}

fn write_output(path: Option<&Path>, content: &str) -> std::result::Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, content)
            .map_err(|e| CliError::Runtime(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn execute(cli: Cli) -> std::result::Result<(), CliError> {
    init_thread_pool_from_env()?;
    match cli.command {
        Command::Solve { common } => {
            let config = load_config(&common.config)?;
            let output = cmd_solve(&config, common.regime)?;
            write_output(common.out.as_deref(), &output)
        }
        Command::Sweep { common } => {
            let config = load_config(&common.config)?;
            let output = cmd_sweep(&config, common.regime)?;
            write_output(common.out.as_deref(), &output)
        }
        Command::Verify { common, grid } => {
            let config = load_config(&common.config)?;
            let spec = grid.map(GridSpec::from).unwrap_or_default();
            let output = cmd_verify(&config, common.regime, &spec)?;
            write_output(common.out.as_deref(), &output)
        }
        Command::Simulate { common, seed } => {
            let config = load_config(&common.config)?;
            let output = cmd_simulate(&config, common.regime, seed)?;
            write_output(common.out.as_deref(), &output)
        }
    }
}

/// Parses the process arguments, runs the command, and returns the exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {}", e.message());
            e.exit_code()
        }
    }
}
