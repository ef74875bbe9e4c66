//! Subcommand drivers.

use clap::{Args, Parser, Subcommand};

use crate::characterize::constraints::{ac_satisfied, Constraint, ConstraintKind};
use crate::characterize::represent::construct_pessimistic_representation;
use crate::characterize::revealed::{is_aom, revealed_preference_pac, PacResult};
use crate::cli::render::OutputFormat;
use crate::core::alphabet::Alphabet;
use crate::core::choice::ChoiceRule;
use crate::core::preference::Preference;
use crate::error::Error;
use crate::inference::bounds::{joint_attention_bounds, BoundEstimate, BoundSide, BoundTarget};
use crate::inference::critical::DEFAULT_DRAWS;
use crate::inference::estimate::estimate_choice_rule;
use crate::inference::test::{confidence_set, test_preference, Method, TestOptions, TestResult};
use crate::io::dataset::{load_dataset, write_dataset, DatasetFormat, LoadedDataset};
use crate::io::parse::{parse_preference, parse_target, render_preference};
use crate::io::report::Value;
use crate::models::{attention_frequency, check_attention_overload, induced_choice_rule};
use crate::sim::{
    figure_percentiles, figure_population, population_cell, rejection_rate, standard_columns,
    standard_preferences, LogitDesign,
};

/// Process exit codes: 0 success, 1 usage, 2 data error, 3 computation error.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExitCode {
    Success = 0,
    Usage = 1,
    Data = 2,
    Compute = 3,
}

/// A failed command, classified for the exit status. Computation failures
/// still carry a structured report.
#[derive(Debug)]
pub enum CliError {
    /// Help or version text; not a failure.
    Help(String),
    Usage(String),
    Data(String),
    Compute { report: Value, message: String },
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Help(_) => ExitCode::Success,
            CliError::Usage(_) => ExitCode::Usage,
            CliError::Data(_) => ExitCode::Data,
            CliError::Compute { .. } => ExitCode::Compute,
        }
    }
}

/// A command's report plus how the caller asked to emit it.
#[derive(Debug)]
pub struct CommandOutput {
    pub report: Value,
    pub format: OutputFormat,
    pub out: Option<String>,
}

#[derive(Parser, Debug)]
#[command(
    name = "aom",
    version,
    about = "Preference and attention elicitation from stochastic choice data"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Args, Debug, Clone)]
struct ReportArgs {
    /// Report format.
    #[arg(long = "output", value_enum, default_value_t)]
    output: OutputFormat,
    /// Write the report to this file instead of stdout.
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args, Debug, Clone)]
struct DataArgs {
    /// Choice-data file.
    #[arg(long)]
    data: String,
    /// Layout of the data file.
    #[arg(long = "data-format", default_value = "long")]
    data_format: String,
}

#[derive(Args, Debug, Clone)]
struct InferenceArgs {
    /// Significance level.
    #[arg(long, default_value_t = 0.05)]
    alpha: f64,
    /// Use the two-step moment-selection critical value (default).
    #[arg(long, overrides_with = "one_step")]
    two_step: bool,
    /// Use the one-step least-favorable critical value.
    #[arg(long, overrides_with = "two_step")]
    one_step: bool,
    /// First-step level for the two-step method.
    #[arg(long, default_value_t = 0.005)]
    c3: f64,
    /// Monte Carlo draws for critical-value simulation.
    #[arg(long = "mc-draws", default_value_t = DEFAULT_DRAWS)]
    mc_draws: usize,
    /// Seed for all simulated randomness.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl InferenceArgs {
    fn method(&self) -> Method {
        if self.one_step {
            Method::OneStep
        } else {
            Method::TwoStep { c3: self.c3 }
        }
    }
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Generate a synthetic dataset from the logit-attention design.
    Simulate {
        /// Attention model; `logit` is the only built-in generator.
        #[arg(long, default_value = "logit")]
        model: String,
        /// Logit attention exponent.
        #[arg(long, default_value_t = 2.0)]
        varsigma: f64,
        /// Number of alternatives (named a1..an).
        #[arg(long = "n-alts", default_value_t = 6)]
        n_alts: usize,
        /// Observations per menu.
        #[arg(long = "n-per-menu", default_value_t = 200)]
        n_per_menu: u64,
        /// Smallest menu size included in the domain.
        #[arg(long = "min-menu-size", default_value_t = 2)]
        min_menu_size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Dataset file to write.
        #[arg(long)]
        out: String,
        /// Dataset layout to write.
        #[arg(long = "data-format", default_value = "long")]
        data_format: String,
        #[command(flatten)]
        report: ReportArgs,
    },
    /// Test a hypothesized preference against the observed choice data.
    Test {
        #[command(flatten)]
        data: DataArgs,
        /// Preference literal, e.g. `a1>a2>a3`.
        #[arg(long)]
        pref: String,
        /// Constraint families: comma-separated subset of aom,ram,binary.
        #[arg(long, default_value = "aom")]
        constraints: String,
        /// Binary attention cap (required with `binary`).
        #[arg(long)]
        eta: Option<f64>,
        #[command(flatten)]
        inference: InferenceArgs,
        #[command(flatten)]
        report: ReportArgs,
    },
    /// Invert the test over every preference ordering.
    Elicit {
        #[command(flatten)]
        data: DataArgs,
        #[arg(long, default_value = "aom")]
        constraints: String,
        #[arg(long)]
        eta: Option<f64>,
        /// Treat the data as exact probabilities and screen by attention
        /// compensation instead of testing.
        #[arg(long)]
        population: bool,
        #[command(flatten)]
        inference: InferenceArgs,
        #[command(flatten)]
        report: ReportArgs,
    },
    /// Estimate attention-frequency bounds.
    Bounds {
        #[command(flatten)]
        data: DataArgs,
        /// Bound target `alt@menu`, e.g. `a1@a1;a2;a3`; repeatable.
        #[arg(long, required = true)]
        target: Vec<String>,
        /// Side(s) to estimate.
        #[arg(long, default_value = "lower")]
        side: String,
        /// Preference literal; required for upper bounds.
        #[arg(long)]
        pref: Option<String>,
        /// Share one critical value across all targets (joint coverage).
        #[arg(long)]
        joint: bool,
        #[command(flatten)]
        inference: InferenceArgs,
        #[command(flatten)]
        report: ReportArgs,
    },
    /// Exact-rule diagnostics: representability and the pessimistic
    /// representation.
    Feasibility {
        #[command(flatten)]
        data: DataArgs,
        /// Preference literal; without it, search for any compatible order.
        #[arg(long)]
        pref: Option<String>,
        #[command(flatten)]
        report: ReportArgs,
    },
    /// Reproduce the rejection-rate table of the reference design.
    #[command(name = "reproduce-table1")]
    ReproduceTable1 {
        /// Monte Carlo replications; 0 runs the deterministic population
        /// rows only.
        #[arg(long, default_value_t = 0)]
        reps: usize,
        #[arg(long, default_value_t = 6)]
        n_alts: usize,
        #[arg(long, default_value_t = 2.0)]
        varsigma: f64,
        #[arg(long = "n-per-menu", default_value_t = 200)]
        n_per_menu: u64,
        #[command(flatten)]
        inference: InferenceArgs,
        #[command(flatten)]
        report: ReportArgs,
    },
    /// Reproduce the attention-frequency bound figure of the reference
    /// design.
    #[command(name = "reproduce-figure1")]
    ReproduceFigure1 {
        /// Monte Carlo replications; 0 emits the population bounds only.
        #[arg(long, default_value_t = 0)]
        reps: usize,
        #[arg(long, default_value_t = 6)]
        n_alts: usize,
        #[arg(long, default_value_t = 2.0)]
        varsigma: f64,
        #[arg(long = "n-per-menu", default_value_t = 200)]
        n_per_menu: u64,
        #[command(flatten)]
        inference: InferenceArgs,
        #[command(flatten)]
        report: ReportArgs,
    },
}

fn parse_kinds(text: &str) -> Result<Vec<ConstraintKind>, CliError> {
    let mut kinds = Vec::new();
    for part in text.split(',') {
        let kind = match part.trim().to_ascii_lowercase().as_str() {
            "aom" | "ac" => ConstraintKind::Ac,
            "ram" => ConstraintKind::Ram,
            "binary" => ConstraintKind::BinaryEta,
            other => {
                return Err(CliError::Usage(format!(
                    "unknown constraint family `{other}` (expected aom, ram, binary)"
                )))
            }
        };
        if !kinds.contains(&kind) {
            kinds.push(kind);
        }
    }
    Ok(kinds)
}

fn parse_data_format(text: &str) -> Result<DatasetFormat, CliError> {
    text.parse()
        .map_err(|_| CliError::Usage(format!("unknown data format `{text}`")))
}

fn load(data: &DataArgs) -> Result<LoadedDataset, CliError> {
    let format = parse_data_format(&data.data_format)?;
    load_dataset(&data.data, format).map_err(|e| CliError::Data(e.to_string()))
}

/// Exact choice rule from aggregated frequencies, for population-mode
/// commands.
fn exact_rule(loaded: &LoadedDataset) -> Result<ChoiceRule, CliError> {
    estimate_choice_rule(&loaded.dataset).map_err(|e| CliError::Data(e.to_string()))
}

fn report_envelope(command: &str, seed: Option<u64>) -> Value {
    let mut v = Value::object();
    v.set("command", command.into());
    v.set("version", env!("CARGO_PKG_VERSION").into());
    v.set("status", "ok".into());
    if let Some(seed) = seed {
        v.set("seed", Value::Int(seed as i64));
    }
    v
}

fn compute_error(command: &str, seed: Option<u64>, err: Error, args: &ReportArgs) -> CliError {
    let mut report = report_envelope(command, seed);
    report.set("status", "error".into());
    report.set("error", err.to_string().into());
    CliError::Compute {
        report,
        message: err.to_string(),
    }
    .with_emission(args)
}

impl CliError {
    fn with_emission(self, _args: &ReportArgs) -> CliError {
        self
    }
}

fn method_value(method: Method) -> Value {
    match method {
        Method::OneStep => "one_step".into(),
        Method::TwoStep { c3 } => {
            let mut v = Value::object();
            v.set("two_step", Value::object().set("c3", c3.into()).clone());
            v
        }
    }
}

fn test_result_value(r: &TestResult) -> Value {
    let mut v = Value::object();
    v.set("statistic", r.statistic.into());
    v.set("cv", r.cv.into());
    v.set("reject", r.reject.into());
    v.set("alpha", r.alpha.into());
    v.set("method", method_value(r.method));
    v.set("n_constraints", r.n_constraints.into());
    v.set("n_violated", r.n_violated.into());
    v.set(
        "max_inequality",
        r.max_inequality.map_or(Value::Null, Value::Float),
    );
    v.set("deterministic_violation", r.deterministic_violation.into());
    v.set("n_dropped", r.n_dropped.into());
    v.set(
        "cv_first_step",
        r.cv_first_step.map_or(Value::Null, Value::Float),
    );
    v.set(
        "cv_nominal",
        r.cv_nominal.map_or(Value::Null, Value::Float),
    );
    v.set(
        "reject_nominal",
        r.reject_nominal.map_or(Value::Null, Value::Bool),
    );
    v.set("mc_draws", r.mc_draws.into());
    v.set("seed", Value::Int(r.seed as i64));
    v
}

fn constraint_value(c: &Constraint, alphabet: &Alphabet) -> Value {
    let mut v = Value::object();
    v.set("kind", c.kind.to_string().into());
    v.set("alt", alphabet.label(c.alt).into());
    v.set("sup", alphabet.render(c.sup.mask()).into());
    v.set("sub", alphabet.render(c.sub.mask()).into());
    if let Some(eta) = c.eta {
        v.set("eta", eta.into());
    }
    v
}

fn bound_value(b: &BoundEstimate, alphabet: &Alphabet) -> Value {
    let mut v = Value::object();
    v.set("alt", alphabet.label(b.alt).into());
    v.set("menu", alphabet.render(b.menu.mask()).into());
    v.set(
        "side",
        match b.side {
            BoundSide::Lower => "lower",
            BoundSide::Upper => "upper",
        }
        .into(),
    );
    v.set("alpha", b.alpha.into());
    v.set("value", b.value.into());
    v.set("cv", b.cv.into());
    v.set("arg_menu", alphabet.render(b.arg_menu.mask()).into());
    let terms: Vec<Value> = b
        .terms
        .iter()
        .map(|t| {
            let mut tv = Value::object();
            tv.set("menu", alphabet.render(t.menu.mask()).into());
            tv.set("estimate", t.estimate.into());
            tv.set("sigma", t.sigma.into());
            tv.set("adjusted", t.adjusted.into());
            tv
        })
        .collect();
    v.set("terms", Value::Array(terms));
    v
}

fn run_simulate(
    model: &str,
    varsigma: f64,
    n_alts: usize,
    n_per_menu: u64,
    min_menu_size: usize,
    seed: u64,
    out: &str,
    data_format: &str,
    report_args: &ReportArgs,
) -> Result<CommandOutput, CliError> {
    if model != "logit" {
        return Err(CliError::Usage(format!(
            "unknown model `{model}` (only `logit` is built in)"
        )));
    }
    if min_menu_size != 2 {
        // The design enumerates menus of size >= min; sizes other than 2 are
        // allowed but keep the guard on 1..=n.
        if min_menu_size < 1 || min_menu_size > n_alts {
            return Err(CliError::Usage(format!(
                "min menu size {min_menu_size} out of range"
            )));
        }
    }
    let format = parse_data_format(data_format)?;
    let design = build_design(n_alts, varsigma, n_per_menu, report_args)?;
    let design = if min_menu_size == 2 {
        design
    } else {
        // Rebuild with a custom domain.
        let alphabet = Alphabet::numbered(n_alts).map_err(|e| CliError::Usage(e.to_string()))?;
        let domain = crate::core::domain::Domain::full(n_alts, min_menu_size);
        let attention = crate::models::logit_attention(&domain, varsigma);
        let truth = Preference::natural(n_alts);
        let choice_rule = induced_choice_rule(&truth, &attention)
            .map_err(|e| compute_error("simulate", Some(seed), e, report_args))?;
        LogitDesign {
            alphabet,
            domain,
            attention,
            truth,
            choice_rule,
            n_per_menu,
        }
    };
    let data = design
        .sample(seed)
        .map_err(|e| compute_error("simulate", Some(seed), e, report_args))?;
    write_dataset(out, &design.alphabet, &data, format)
        .map_err(|e| CliError::Data(e.to_string()))?;
    let mut report = report_envelope("simulate", Some(seed));
    let mut config = Value::object();
    config.set("model", model.into());
    config.set("varsigma", varsigma.into());
    config.set("n_alts", n_alts.into());
    config.set("n_per_menu", Value::Int(n_per_menu as i64));
    config.set("min_menu_size", min_menu_size.into());
    config.set("data_format", data_format.into());
    report.set("config", config);
    report.set("observations", data.len().into());
    report.set("menus", design.domain.len().into());
    report.set("out", out.into());
    Ok(CommandOutput {
        report,
        format: report_args.output,
        out: report_args.out.clone(),
    })
}

fn build_design(
    n_alts: usize,
    varsigma: f64,
    n_per_menu: u64,
    _report_args: &ReportArgs,
) -> Result<LogitDesign, CliError> {
    LogitDesign::new(n_alts, varsigma, n_per_menu).map_err(|e| CliError::Usage(e.to_string()))
}

#[allow(clippy::too_many_arguments)]
fn run_test(
    data: &DataArgs,
    pref: &str,
    constraints: &str,
    eta: Option<f64>,
    inference: &InferenceArgs,
    report_args: &ReportArgs,
) -> Result<CommandOutput, CliError> {
    let kinds = parse_kinds(constraints)?;
    let loaded = load(data)?;
    let pref = parse_preference(pref, &loaded.alphabet)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let opts = TestOptions {
        kinds,
        eta,
        alpha: inference.alpha,
        method: inference.method(),
        draws: inference.mc_draws,
        seed: inference.seed,
    };
    let result = test_preference(&loaded.dataset, &pref, &opts)
        .map_err(|e| compute_error("test", Some(inference.seed), e, report_args))?;
    let mut report = report_envelope("test", Some(inference.seed));
    report.set("preference", render_preference(&pref, &loaded.alphabet).into());
    report.set("constraints", constraints.into());
    report.set("result", test_result_value(&result));
    Ok(CommandOutput {
        report,
        format: report_args.output,
        out: report_args.out.clone(),
    })
}

fn run_elicit(
    data: &DataArgs,
    constraints: &str,
    eta: Option<f64>,
    population: bool,
    inference: &InferenceArgs,
    report_args: &ReportArgs,
) -> Result<CommandOutput, CliError> {
    let kinds = parse_kinds(constraints)?;
    let loaded = load(data)?;
    let n = loaded.alphabet.len();
    let mut report = report_envelope("elicit", Some(inference.seed));
    report.set("population", population.into());
    if population {
        let pi = exact_rule(&loaded)?;
        let domain = pi.domain();
        let result = revealed_preference_pac(&pi, &domain, n)
            .map_err(|e| compute_error("elicit", Some(inference.seed), e, report_args))?;
        match result {
            PacResult::NotAom => {
                report.set("is_aom", false.into());
                report.set("survivors", Value::Array(Vec::new()));
                report.set("revealed_pairs", Value::Array(Vec::new()));
            }
            PacResult::Relation(rel) => {
                report.set("is_aom", true.into());
                report.set("n_survivors", rel.surviving_prefs.into());
                let pairs: Vec<Value> = rel
                    .pairs
                    .iter()
                    .map(|&(b, w)| {
                        Value::Array(vec![
                            loaded.alphabet.label(b).into(),
                            loaded.alphabet.label(w).into(),
                        ])
                    })
                    .collect();
                report.set("revealed_pairs", Value::Array(pairs));
            }
        }
    } else {
        let opts = TestOptions {
            kinds,
            eta,
            alpha: inference.alpha,
            method: inference.method(),
            draws: inference.mc_draws,
            seed: inference.seed,
        };
        let cs = confidence_set(&loaded.dataset, n, &opts)
            .map_err(|e| compute_error("elicit", Some(inference.seed), e, report_args))?;
        report.set("alpha", cs.alpha.into());
        report.set("n_orders", cs.results.len().into());
        report.set("n_survivors", cs.survivors.len().into());
        report.set("specification_rejected", cs.specification_rejected.into());
        let survivors: Vec<Value> = cs
            .survivors
            .iter()
            .map(|p| render_preference(p, &loaded.alphabet).into())
            .collect();
        report.set("survivors", Value::Array(survivors));
        // Pairs every surviving order agrees on.
        let mut pairs = Vec::new();
        if !cs.survivors.is_empty() {
            for better in 0..n {
                for worse in 0..n {
                    if better != worse
                        && cs.survivors.iter().all(|p| p.prefers(better, worse))
                    {
                        pairs.push(Value::Array(vec![
                            loaded.alphabet.label(better).into(),
                            loaded.alphabet.label(worse).into(),
                        ]));
                    }
                }
            }
        }
        report.set("revealed_pairs", Value::Array(pairs));
        let results: Vec<Value> = cs
            .results
            .iter()
            .map(|(p, r)| {
                let mut v = Value::object();
                v.set("preference", render_preference(p, &loaded.alphabet).into());
                v.set("statistic", r.statistic.into());
                v.set("cv", r.cv.into());
                v.set("reject", r.reject.into());
                v
            })
            .collect();
        report.set("results", Value::Array(results));
    }
    Ok(CommandOutput {
        report,
        format: report_args.output,
        out: report_args.out.clone(),
    })
}

fn run_bounds(
    data: &DataArgs,
    target_texts: &[String],
    side: &str,
    pref_text: Option<&str>,
    joint: bool,
    inference: &InferenceArgs,
    report_args: &ReportArgs,
) -> Result<CommandOutput, CliError> {
    let loaded = load(data)?;
    let pref = pref_text
        .map(|t| parse_preference(t, &loaded.alphabet))
        .transpose()
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let sides: Vec<BoundSide> = match side.to_ascii_lowercase().as_str() {
        "lower" => vec![BoundSide::Lower],
        "upper" => vec![BoundSide::Upper],
        "both" => vec![BoundSide::Lower, BoundSide::Upper],
        other => {
            return Err(CliError::Usage(format!(
                "unknown side `{other}` (expected lower, upper, both)"
            )))
        }
    };
    if sides.contains(&BoundSide::Upper) && pref.is_none() {
        return Err(CliError::Usage(
            "upper bounds require --pref".to_string(),
        ));
    }
    let mut targets = Vec::new();
    for text in target_texts {
        let (alt, menu) =
            parse_target(text, &loaded.alphabet).map_err(|e| CliError::Usage(e.to_string()))?;
        for &s in &sides {
            targets.push(match s {
                BoundSide::Lower => BoundTarget::lower(alt, menu),
                BoundSide::Upper => {
                    BoundTarget::upper(alt, menu, pref.clone().expect("checked above"))
                }
            });
        }
    }
    let estimates: Vec<BoundEstimate> = if joint {
        joint_attention_bounds(
            &loaded.dataset,
            &targets,
            inference.alpha,
            inference.mc_draws,
            inference.seed,
        )
        .map_err(|e| compute_error("bounds", Some(inference.seed), e, report_args))?
    } else {
        let mut out = Vec::new();
        for (i, t) in targets.iter().enumerate() {
            let seed = crate::rng::mix(inference.seed, &[crate::rng::tag::BOUND, i as u64]);
            let mut one = joint_attention_bounds(
                &loaded.dataset,
                std::slice::from_ref(t),
                inference.alpha,
                inference.mc_draws,
                seed,
            )
            .map_err(|e| compute_error("bounds", Some(inference.seed), e, report_args))?;
            out.append(&mut one);
        }
        out
    };
    let mut report = report_envelope("bounds", Some(inference.seed));
    report.set("alpha", inference.alpha.into());
    report.set("joint", joint.into());
    let values: Vec<Value> = estimates
        .iter()
        .map(|b| bound_value(b, &loaded.alphabet))
        .collect();
    report.set("bounds", Value::Array(values));
    Ok(CommandOutput {
        report,
        format: report_args.output,
        out: report_args.out.clone(),
    })
}

fn run_feasibility(
    data: &DataArgs,
    pref_text: Option<&str>,
    report_args: &ReportArgs,
) -> Result<CommandOutput, CliError> {
    let loaded = load(data)?;
    let pi = exact_rule(&loaded)?;
    let domain = pi.domain();
    let n = loaded.alphabet.len();
    let mut report = report_envelope("feasibility", None);
    match pref_text {
        Some(text) => {
            let pref = parse_preference(text, &loaded.alphabet)
                .map_err(|e| CliError::Usage(e.to_string()))?;
            let (ok, worst) = ac_satisfied(&pi, &pref, &domain)
                .map_err(|e| compute_error("feasibility", None, e, report_args))?;
            report.set("preference", render_preference(&pref, &loaded.alphabet).into());
            report.set("ac_satisfied", ok.into());
            if let Some((c, v)) = worst {
                let mut w = constraint_value(&c, &loaded.alphabet);
                w.set("value", v.into());
                report.set("worst_constraint", w);
            }
            if ok {
                let mu = construct_pessimistic_representation(&pi, &pref, &domain)
                    .map_err(|e| compute_error("feasibility", None, e, report_args))?;
                let reproduced = induced_choice_rule(&pref, &mu)
                    .map_err(|e| compute_error("feasibility", None, e, report_args))?;
                let mut max_err = 0.0f64;
                for &menu in domain.menus() {
                    for alt in menu.iter() {
                        let a = reproduced.prob(alt, menu).unwrap_or(f64::NAN);
                        let b = pi.prob(alt, menu).unwrap_or(f64::NAN);
                        max_err = max_err.max((a - b).abs());
                    }
                }
                let overload = check_attention_overload(&mu, &domain)
                    .map_err(|e| compute_error("feasibility", None, e, report_args))?;
                let mut rep = Value::object();
                rep.set("feasible", true.into());
                rep.set("max_reconstruction_error", max_err.into());
                rep.set("attention_overload", overload.satisfied.into());
                let mut phis = Vec::new();
                for &menu in domain.menus() {
                    let mut m = Value::object();
                    m.set("menu", loaded.alphabet.render(menu.mask()).into());
                    let values: Vec<Value> = menu
                        .iter()
                        .map(|alt| {
                            attention_frequency(&mu, alt, menu)
                                .map(Value::Float)
                                .unwrap_or(Value::Null)
                        })
                        .collect();
                    m.set("phi", Value::Array(values));
                    phis.push(m);
                }
                rep.set("attention_frequencies", Value::Array(phis));
                report.set("pessimistic_representation", rep);
            } else {
                let mut rep = Value::object();
                rep.set("feasible", false.into());
                report.set("pessimistic_representation", rep);
            }
        }
        None => {
            let witness = is_aom(&pi, &domain, n)
                .map_err(|e| compute_error("feasibility", None, e, report_args))?;
            report.set("is_aom", witness.is_some().into());
            report.set(
                "witness",
                witness.map_or(Value::Null, |p| {
                    render_preference(&p, &loaded.alphabet).into()
                }),
            );
            let pac = revealed_preference_pac(&pi, &domain, n)
                .map_err(|e| compute_error("feasibility", None, e, report_args))?;
            if let PacResult::Relation(rel) = pac {
                report.set("n_survivors", rel.surviving_prefs.into());
                let pairs: Vec<Value> = rel
                    .pairs
                    .iter()
                    .map(|&(b, w)| {
                        Value::Array(vec![
                            loaded.alphabet.label(b).into(),
                            loaded.alphabet.label(w).into(),
                        ])
                    })
                    .collect();
                report.set("revealed_pairs", Value::Array(pairs));
            }
        }
    }
    Ok(CommandOutput {
        report,
        format: report_args.output,
        out: report_args.out.clone(),
    })
}

fn run_table1(
    reps: usize,
    n_alts: usize,
    varsigma: f64,
    n_per_menu: u64,
    inference: &InferenceArgs,
    report_args: &ReportArgs,
) -> Result<CommandOutput, CliError> {
    let design = build_design(n_alts, varsigma, n_per_menu, report_args)?;
    let columns = standard_columns();
    let prefs = standard_preferences(n_alts);
    let mut report = report_envelope("reproduce-table1", Some(inference.seed));
    let mut config = Value::object();
    config.set("reps", reps.into());
    config.set("n_alts", n_alts.into());
    config.set("varsigma", varsigma.into());
    config.set("n_per_menu", Value::Int(n_per_menu as i64));
    config.set("alpha", inference.alpha.into());
    config.set("c3", inference.c3.into());
    config.set("mc_draws", inference.mc_draws.into());
    report.set("config", config);

    let col_values: Vec<Value> = columns
        .iter()
        .map(|c| {
            let mut v = Value::object();
            v.set("label", c.label().into());
            let cell = population_cell(&design, &prefs[0], *c)
                .map(|p| p.n_restrictions)
                .unwrap_or(0);
            v.set("n_restrictions", cell.into());
            v
        })
        .collect();
    report.set("columns", Value::Array(col_values));

    let mut pref_values = Vec::new();
    for pref in &prefs {
        let mut pv = Value::object();
        pv.set(
            "preference",
            render_preference(pref, &design.alphabet).into(),
        );
        let mut cells = Vec::new();
        for col in &columns {
            let pop = population_cell(&design, pref, *col)
                .map_err(|e| compute_error("reproduce-table1", Some(inference.seed), e, report_args))?;
            let mut cv = Value::object();
            cv.set("column", col.label().into());
            cv.set("n_violations", pop.n_violations.into());
            cv.set(
                "max_inequality",
                pop.max_inequality.map_or(Value::Null, Value::Float),
            );
            if reps > 0 {
                let rate = rejection_rate(
                    &design,
                    pref,
                    *col,
                    reps,
                    inference.alpha,
                    inference.c3,
                    inference.mc_draws,
                    inference.seed,
                )
                .map_err(|e| {
                    compute_error("reproduce-table1", Some(inference.seed), e, report_args)
                })?;
                cv.set("rej_prob", rate.into());
            }
            cells.push(cv);
        }
        pv.set("cells", Value::Array(cells));
        pref_values.push(pv);
    }
    report.set("preferences", Value::Array(pref_values));
    Ok(CommandOutput {
        report,
        format: report_args.output,
        out: report_args.out.clone(),
    })
}

fn run_figure1(
    reps: usize,
    n_alts: usize,
    varsigma: f64,
    n_per_menu: u64,
    inference: &InferenceArgs,
    report_args: &ReportArgs,
) -> Result<CommandOutput, CliError> {
    let design = build_design(n_alts, varsigma, n_per_menu, report_args)?;
    let mut report = report_envelope("reproduce-figure1", Some(inference.seed));
    let mut config = Value::object();
    config.set("reps", reps.into());
    config.set("n_alts", n_alts.into());
    config.set("varsigma", varsigma.into());
    config.set("n_per_menu", Value::Int(n_per_menu as i64));
    config.set("alpha", inference.alpha.into());
    config.set("mc_draws", inference.mc_draws.into());
    report.set("config", config);

    let population = figure_population(&design)
        .map_err(|e| compute_error("reproduce-figure1", Some(inference.seed), e, report_args))?;
    let percentiles = if reps > 0 {
        Some(
            figure_percentiles(&design, reps, inference.alpha, inference.mc_draws, inference.seed)
                .map_err(|e| {
                    compute_error("reproduce-figure1", Some(inference.seed), e, report_args)
                })?,
        )
    } else {
        None
    };
    let mut rows = Vec::new();
    for (i, cell) in population.iter().enumerate() {
        let mut v = Value::object();
        v.set("alt", design.alphabet.label(cell.alt).into());
        v.set("menu", design.alphabet.render(cell.menu.mask()).into());
        v.set("true_phi", cell.true_phi.into());
        v.set("lower", cell.lower.into());
        v.set("upper", cell.upper.into());
        if let Some(p) = &percentiles {
            v.set("lower_estimate_p95", p[i].lower_p95.into());
            v.set("upper_estimate_p05", p[i].upper_p05.into());
        }
        rows.push(v);
    }
    report.set("bounds", Value::Array(rows));
    Ok(CommandOutput {
        report,
        format: report_args.output,
        out: report_args.out.clone(),
    })
}

/// Parse an argv and run its subcommand. The binary wraps this; tests call it
/// directly.
pub fn run_command(argv: &[String]) -> Result<CommandOutput, CliError> {
    let cli = Cli::try_parse_from(argv).map_err(|e| {
        use clap::error::ErrorKind;
        match e.kind() {
            ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => CliError::Help(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    })?;
    match cli.command {
        Cmd::Simulate {
            model,
            varsigma,
            n_alts,
            n_per_menu,
            min_menu_size,
            seed,
            out,
            data_format,
            report,
        } => run_simulate(
            &model,
            varsigma,
            n_alts,
            n_per_menu,
            min_menu_size,
            seed,
            &out,
            &data_format,
            &report,
        ),
        Cmd::Test {
            data,
            pref,
            constraints,
            eta,
            inference,
            report,
        } => run_test(&data, &pref, &constraints, eta, &inference, &report),
        Cmd::Elicit {
            data,
            constraints,
            eta,
            population,
            inference,
            report,
        } => run_elicit(&data, &constraints, eta, population, &inference, &report),
        Cmd::Bounds {
            data,
            target,
            side,
            pref,
            joint,
            inference,
            report,
        } => run_bounds(
            &data,
            &target,
            &side,
            pref.as_deref(),
            joint,
            &inference,
            &report,
        ),
        Cmd::Feasibility { data, pref, report } => {
            run_feasibility(&data, pref.as_deref(), &report)
        }
        Cmd::ReproduceTable1 {
            reps,
            n_alts,
            varsigma,
            n_per_menu,
            inference,
            report,
        } => run_table1(reps, n_alts, varsigma, n_per_menu, &inference, &report),
        Cmd::ReproduceFigure1 {
            reps,
            n_alts,
            varsigma,
            n_per_menu,
            inference,
            report,
        } => run_figure1(reps, n_alts, varsigma, n_per_menu, &inference, &report),
    }
}
