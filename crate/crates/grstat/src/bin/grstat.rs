//! Command-line surface: p-values and critical values for greatest-root
//! tests, Tracy-Widom evaluation, reproducible simulation tables and the
//! convergence-rate checks. Scalar answers are JSON, tabular output is CSV;
//! every number is printed with 17 significant digits.

use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use grstat::approx::{self, ApproxError};
use grstat::edge_scaling::{logit_scaling, ScaleKind, ScalingError};
use grstat::liouville_green::{airy_rate_report, kernel_rate_report};
use grstat::math::logit;
use grstat::montecarlo::{draw_spectra, empirical_table, prob_plot_data, SimConfig};
use grstat::params::{Ensemble, StatParams};
use grstat::special::{self, tw_table};

/// Exit code for input/validation failures.
const EXIT_VALIDATION: u8 = 2;
/// Exit code for numerical failures.
const EXIT_NUMERICAL: u8 = 3;

const SCHEMA_VERSION: &str = "1";

/// Default percentile ladder for tables (the conventional levels).
const TABLE_PERCENTILES: [f64; 9] = [0.01, 0.05, 0.10, 0.30, 0.50, 0.70, 0.90, 0.95, 0.99];

#[derive(Parser)]
#[command(name = "grstat", version, about = "Greatest-root statistics for the double-Wishart problem")]
struct Cli {
    /// Number of worker threads for simulation commands (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Skip the on-disk Tracy-Widom table cache.
    #[arg(long, global = true)]
    no_cache: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// p-value of an observed greatest-root statistic.
    Pvalue {
        #[command(flatten)]
        setting: SettingArgs,
        /// Observed largest eigenvalue of (A+B)^{-1} B, in (0,1).
        #[arg(long)]
        theta: f64,
        #[arg(long, value_enum, default_value_t = EnsembleArg::Real)]
        ensemble: EnsembleArg,
    },
    /// Critical value of the greatest root at significance level alpha.
    Crit {
        #[command(flatten)]
        setting: SettingArgs,
        /// Test level: the returned theta satisfies P(root > theta) = alpha.
        #[arg(long)]
        alpha: f64,
        #[arg(long, value_enum, default_value_t = EnsembleArg::Real)]
        ensemble: EnsembleArg,
    },
    /// Monte Carlo table of cumulative probabilities at Tracy-Widom points.
    Table {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 10_000)]
        reps: u32,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        chunks: u32,
        #[arg(long, value_enum, default_value_t = ScaleArg::Theta)]
        scale: ScaleArg,
        #[arg(long, value_enum, default_value_t = EnsembleArg::Real)]
        ensemble: EnsembleArg,
        /// Comma-separated percentile list (default: the conventional nine).
        #[arg(long, value_delimiter = ',')]
        percentiles: Option<Vec<f64>>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Simulate largest-root draws; emits an empirical CDF or probability
    /// plot data as CSV.
    Simulate {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 10_000)]
        reps: u32,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        chunks: u32,
        #[arg(long, value_enum, default_value_t = ScaleArg::Logit)]
        scale: ScaleArg,
        #[arg(long, value_enum, default_value_t = EnsembleArg::Real)]
        ensemble: EnsembleArg,
        /// Emit sorted (empirical, theoretical-quantile) pairs instead of
        /// the empirical CDF.
        #[arg(long)]
        plot_data: bool,
        /// Reference points on the standardized scale for the empirical CDF.
        #[arg(long, value_delimiter = ',')]
        ref_points: Option<Vec<f64>>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tracy-Widom distribution values and quantiles.
    Tw {
        /// 1 (orthogonal) or 2 (unitary).
        #[arg(long)]
        beta: u8,
        /// Evaluate F_beta at this point (JSON output).
        #[arg(long, conflicts_with = "quantile")]
        s: Option<f64>,
        /// Invert F_beta at this probability (JSON output).
        #[arg(long)]
        quantile: Option<f64>,
        /// Without --s/--quantile: tabulate F on a grid (CSV output).
        #[arg(long, default_value_t = -6.0)]
        grid_start: f64,
        #[arg(long, default_value_t = 6.0)]
        grid_end: f64,
        #[arg(long, default_value_t = 0.1)]
        grid_step: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Convergence-rate ladder of the local Airy approximation (CSV).
    LgCheck {
        #[arg(long, value_delimiter = ',', default_value = "50,100,200")]
        n_list: Vec<u32>,
        #[arg(long, default_value_t = 2.0)]
        a: f64,
        #[arg(long, default_value_t = 1.0)]
        b: f64,
        /// Measure the derivative approximation instead of the value.
        #[arg(long)]
        deriv: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Convergence-rate ladder of the rescaled kernel (CSV).
    KernelCheck {
        #[arg(long, value_delimiter = ',', default_value = "50,100,200")]
        n_list: Vec<u32>,
        #[arg(long, default_value_t = 2.0)]
        a: f64,
        #[arg(long, default_value_t = 1.0)]
        b: f64,
        /// Use the naive single-degree scaling instead of the averaged one.
        #[arg(long)]
        naive: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Full spectra of simulated draws (CSV: draw, index, theta).
    Spectrum {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 50)]
        draws: u32,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = EnsembleArg::Real)]
        ensemble: EnsembleArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum, Debug)]
enum EnsembleArg {
    Real,
    Complex,
}

impl From<EnsembleArg> for Ensemble {
    fn from(e: EnsembleArg) -> Ensemble {
        match e {
            EnsembleArg::Real => Ensemble::Real,
            EnsembleArg::Complex => Ensemble::Complex,
        }
    }
}

#[derive(Clone, Copy, ValueEnum, Debug)]
enum ScaleArg {
    Logit,
    Theta,
}

impl From<ScaleArg> for ScaleKind {
    fn from(s: ScaleArg) -> ScaleKind {
        match s {
            ScaleArg::Logit => ScaleKind::Logit,
            ScaleArg::Theta => ScaleKind::Theta,
        }
    }
}

/// Statistical-setting dictionary flags shared by pvalue and crit.
#[derive(Args, Debug)]
struct SettingArgs {
    /// raw | cca | mlm | cov | discrim
    #[arg(long, default_value = "raw")]
    setting: String,
    /// raw: dimension p; cov/discrim: number of variables.
    #[arg(long)]
    p: Option<u32>,
    /// raw: error degrees of freedom.
    #[arg(long)]
    m: Option<u32>,
    /// raw: hypothesis degrees of freedom.
    #[arg(long)]
    n: Option<u32>,
    /// cca: size of the first variable set.
    #[arg(long)]
    pvars: Option<u32>,
    /// cca/mlm: size of the second variable set / regressor count.
    #[arg(long)]
    qvars: Option<u32>,
    /// cca/mlm/discrim: number of observations.
    #[arg(long)]
    nobs: Option<u32>,
    /// cca: subtract variable means (uses n' = n - 1).
    #[arg(long)]
    mean_correct: bool,
    /// mlm: response dimension r.
    #[arg(long)]
    rvars: Option<u32>,
    /// mlm: hypothesis degrees of freedom g; discrim: group count g.
    #[arg(long)]
    groups: Option<u32>,
    /// cov: first sample degrees of freedom.
    #[arg(long)]
    n1: Option<u32>,
    /// cov: second sample degrees of freedom.
    #[arg(long)]
    n2: Option<u32>,
}

enum CliError {
    Validation(String),
    Numerical(String),
}

impl CliError {
    fn validation<E: std::fmt::Display>(e: E) -> CliError {
        CliError::Validation(e.to_string())
    }
    fn numerical<E: std::fmt::Display>(e: E) -> CliError {
        CliError::Numerical(e.to_string())
    }
}

impl From<ApproxError> for CliError {
    fn from(e: ApproxError) -> CliError {
        match e {
            ApproxError::ThetaDomain { .. } | ApproxError::ProbDomain { .. } => {
                CliError::Validation(e.to_string())
            }
            ApproxError::Scaling(ScalingError::HardEdge)
            | ApproxError::Scaling(ScalingError::DegenerateDegree)
            | ApproxError::Scaling(ScalingError::SmallestRootDegenerate) => {
                CliError::Validation(e.to_string())
            }
            other => CliError::Numerical(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        // Ignore failure if a pool already exists (repeat initialization).
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    if !cli.no_cache {
        load_table_cache();
    }
    let result = run(&cli);
    if !cli.no_cache {
        store_table_cache();
    }
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Validation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_VALIDATION)
        }
        Err(CliError::Numerical(msg)) => {
            eprintln!("numerical error: {msg}");
            ExitCode::from(EXIT_NUMERICAL)
        }
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Pvalue { setting, theta, ensemble } => cmd_pvalue(setting, *theta, (*ensemble).into()),
        Command::Crit { setting, alpha, ensemble } => cmd_crit(setting, *alpha, (*ensemble).into()),
        Command::Table { p, m, n, reps, seed, chunks, scale, ensemble, percentiles, out } => {
            cmd_table(
                *p, *m, *n, *reps, *seed, *chunks,
                (*scale).into(),
                (*ensemble).into(),
                percentiles.as_deref(),
                out.as_deref(),
            )
        }
        Command::Simulate {
            p, m, n, reps, seed, chunks, scale, ensemble, plot_data, ref_points, out,
        } => cmd_simulate(
            *p, *m, *n, *reps, *seed, *chunks,
            (*scale).into(),
            (*ensemble).into(),
            *plot_data,
            ref_points.as_deref(),
            out.as_deref(),
        ),
        Command::Tw { beta, s, quantile, grid_start, grid_end, grid_step, out } => {
            cmd_tw(*beta, *s, *quantile, *grid_start, *grid_end, *grid_step, out.as_deref())
        }
        Command::LgCheck { n_list, a, b, deriv, out } => cmd_lg_check(n_list, *a, *b, *deriv, out.as_deref()),
        Command::KernelCheck { n_list, a, b, naive, out } => {
            cmd_kernel_check(n_list, *a, *b, *naive, out.as_deref())
        }
        Command::Spectrum { p, m, n, draws, seed, ensemble, out } => {
            cmd_spectrum(*p, *m, *n, *draws, *seed, (*ensemble).into(), out.as_deref())
        }
    }
}

/// Resolves the statistical-setting dictionary to (p, m, n).
fn resolve_setting(args: &SettingArgs) -> Result<(StatParams, Value), CliError> {
    let need = |v: Option<u32>, name: &str| {
        v.ok_or_else(|| CliError::Validation(format!("--{name} is required for this setting")))
    };
    match args.setting.as_str() {
        "raw" => {
            let (p, m, n) = (need(args.p, "p")?, need(args.m, "m")?, need(args.n, "n")?);
            let sp = StatParams::new(p, m, n).map_err(CliError::validation)?;
            Ok((sp, json!({"setting": "raw", "p": p, "m": m, "n": n})))
        }
        "cca" => {
            let (p, q, n) = (need(args.pvars, "pvars")?, need(args.qvars, "qvars")?, need(args.nobs, "nobs")?);
            let sp = approx::from_cca(p, q, n, args.mean_correct).map_err(CliError::validation)?;
            Ok((sp, json!({
                "setting": "cca", "pvars": p, "qvars": q, "nobs": n,
                "mean_correct": args.mean_correct
            })))
        }
        "mlm" => {
            let (r, g, q, n) = (
                need(args.rvars, "rvars")?,
                need(args.groups, "groups")?,
                need(args.qvars, "qvars")?,
                need(args.nobs, "nobs")?,
            );
            let sp = approx::from_mlm(r, g, q, n).map_err(CliError::validation)?;
            Ok((sp, json!({"setting": "mlm", "rvars": r, "groups": g, "qvars": q, "nobs": n})))
        }
        "cov" => {
            let (p, n1, n2) = (need(args.p, "p")?, need(args.n1, "n1")?, need(args.n2, "n2")?);
            let sp = approx::from_cov_equal(p, n1, n2).map_err(CliError::validation)?;
            Ok((sp, json!({"setting": "cov", "p": p, "n1": n1, "n2": n2})))
        }
        "discrim" => {
            let (p, g, n) = (need(args.p, "p")?, need(args.groups, "groups")?, need(args.nobs, "nobs")?);
            let sp = approx::from_discrim(p, g, n).map_err(CliError::validation)?;
            Ok((sp, json!({"setting": "discrim", "p": p, "groups": g, "nobs": n})))
        }
        other => Err(CliError::Validation(format!(
            "unknown setting {other:?} (expected raw, cca, mlm, cov or discrim)"
        ))),
    }
}

fn cmd_pvalue(setting: &SettingArgs, theta: f64, ensemble: Ensemble) -> Result<(), CliError> {
    let (params, mut inputs) = resolve_setting(setting)?;
    inputs["theta"] = json!(theta);
    inputs["ensemble"] = json!(format!("{ensemble:?}").to_lowercase());
    let test = approx::greatest_root_test(&params, theta, ensemble)?;
    let caveats: Vec<String> = test.caveats.iter().map(|c| c.to_string()).collect();
    let out = command_output(
        "pvalue",
        inputs,
        json!({
            "p": params.p(), "m": params.m(), "n": params.n(),
            "mu": test.scaling.center,
            "sigma": test.scaling.scale,
            "s": test.s_value,
            "p_value": test.p_value,
        }),
        caveats,
    );
    print_json(&out);
    Ok(())
}

fn cmd_crit(setting: &SettingArgs, alpha: f64, ensemble: Ensemble) -> Result<(), CliError> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(CliError::Validation(format!("--alpha must be in (0,1), got {alpha}")));
    }
    let (params, mut inputs) = resolve_setting(setting)?;
    inputs["alpha"] = json!(alpha);
    inputs["ensemble"] = json!(format!("{ensemble:?}").to_lowercase());
    let theta = approx::greatest_root_quantile(&params, 1.0 - alpha, ensemble)?;
    let scaling = logit_scaling(&params, ensemble).map_err(CliError::numerical)?;
    let s = (logit(theta) - scaling.center) / scaling.scale;
    let caveats = if params.p() % 2 == 1 {
        vec![approx::Caveat::OddDimension.to_string()]
    } else {
        Vec::new()
    };
    let out = command_output(
        "crit",
        inputs,
        json!({
            "p": params.p(), "m": params.m(), "n": params.n(),
            "mu": scaling.center,
            "sigma": scaling.scale,
            "s": s,
            "theta_critical": theta,
        }),
        caveats,
    );
    print_json(&out);
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_table(
    p: u32,
    m: u32,
    n: u32,
    reps: u32,
    seed: u64,
    chunks: u32,
    scale: ScaleKind,
    ensemble: Ensemble,
    percentiles: Option<&[f64]>,
    out: Option<&std::path::Path>,
) -> Result<(), CliError> {
    let params = StatParams::new(p, m, n).map_err(CliError::validation)?;
    let pcts: Vec<f64> = percentiles.map(<[f64]>::to_vec).unwrap_or_else(|| TABLE_PERCENTILES.to_vec());
    if pcts.iter().any(|&q| !(q > 0.0 && q < 1.0)) {
        return Err(CliError::Validation("percentiles must lie in (0,1)".into()));
    }
    let beta = ensemble.beta_index();
    let refs: Vec<f64> = pcts
        .iter()
        .map(|&q| special::tw_quantile(beta, q))
        .collect::<Result<_, _>>()
        .map_err(CliError::numerical)?;
    let cfg = SimConfig::new(params, ensemble, reps, seed).with_chunks(chunks);
    let table = empirical_table(&cfg, &refs, scale).map_err(CliError::numerical)?;
    let mut csv = String::from("percentile,tw_s,estimate,se\n");
    for i in 0..pcts.len() {
        csv.push_str(&format!(
            "{:.16e},{:.16e},{:.16e},{:.16e}\n",
            pcts[i], refs[i], table.estimates[i], table.standard_errors[i]
        ));
    }
    emit(&csv, out)
}

#[allow(clippy::too_many_arguments)]
fn cmd_simulate(
    p: u32,
    m: u32,
    n: u32,
    reps: u32,
    seed: u64,
    chunks: u32,
    scale: ScaleKind,
    ensemble: Ensemble,
    plot_data: bool,
    ref_points: Option<&[f64]>,
    out: Option<&std::path::Path>,
) -> Result<(), CliError> {
    let params = StatParams::new(p, m, n).map_err(CliError::validation)?;
    let cfg = SimConfig::new(params, ensemble, reps, seed).with_chunks(chunks);
    if plot_data {
        if reps < 100 {
            return Err(CliError::Validation("--plot-data needs --reps >= 100".into()));
        }
        let pairs = prob_plot_data(&cfg, scale).map_err(CliError::numerical)?;
        let mut csv = String::from("empirical,theoretical\n");
        for (e, t) in pairs {
            csv.push_str(&format!("{e:.16e},{t:.16e}\n"));
        }
        emit(&csv, out)
    } else {
        let beta = ensemble.beta_index();
        let refs: Vec<f64> = match ref_points {
            Some(r) => r.to_vec(),
            None => TABLE_PERCENTILES
                .iter()
                .map(|&q| special::tw_quantile(beta, q))
                .collect::<Result<_, _>>()
                .map_err(CliError::numerical)?,
        };
        let table = empirical_table(&cfg, &refs, scale).map_err(CliError::numerical)?;
        let mut csv = String::from("s,estimate,se\n");
        for ((s, est), se) in refs.iter().zip(&table.estimates).zip(&table.standard_errors) {
            csv.push_str(&format!("{s:.16e},{est:.16e},{se:.16e}\n"));
        }
        emit(&csv, out)
    }
}

fn cmd_tw(
    beta: u8,
    s: Option<f64>,
    quantile: Option<f64>,
    grid_start: f64,
    grid_end: f64,
    grid_step: f64,
    out: Option<&std::path::Path>,
) -> Result<(), CliError> {
    if beta != 1 && beta != 2 {
        return Err(CliError::Validation(format!("--beta must be 1 or 2, got {beta}")));
    }
    let table = tw_table(beta).map_err(CliError::numerical)?;
    if let Some(s) = s {
        let (f, extrapolated) = table.cdf_detailed(s);
        let caveats = if extrapolated {
            vec![approx::Caveat::TailExtrapolated.to_string()]
        } else {
            Vec::new()
        };
        let outv = command_output(
            "tw",
            json!({"beta": beta, "s": s}),
            json!({"F": f}),
            caveats,
        );
        print_json(&outv);
        return Ok(());
    }
    if let Some(prob) = quantile {
        if !(prob > 0.0 && prob < 1.0) {
            return Err(CliError::Validation(format!("--quantile must be in (0,1), got {prob}")));
        }
        let q = table.quantile(prob).map_err(CliError::numerical)?;
        let outv = command_output(
            "tw",
            json!({"beta": beta, "quantile": prob}),
            json!({"s": q}),
            Vec::new(),
        );
        print_json(&outv);
        return Ok(());
    }
    if !(grid_step > 0.0 && grid_end > grid_start) {
        return Err(CliError::Validation("grid requires start < end and step > 0".into()));
    }
    let mut csv = String::from("s,F\n");
    let count = ((grid_end - grid_start) / grid_step).round() as usize + 1;
    for i in 0..count {
        let s = grid_start + i as f64 * grid_step;
        csv.push_str(&format!("{:.16e},{:.16e}\n", s, table.cdf(s)));
    }
    emit(&csv, out)
}

fn cmd_lg_check(n_list: &[u32], a: f64, b: f64, deriv: bool, out: Option<&std::path::Path>) -> Result<(), CliError> {
    validate_ladder(n_list, a, b)?;
    let report = airy_rate_report(n_list, a, b, deriv).map_err(CliError::numerical)?;
    emit(&report.to_csv(), out)
}

fn cmd_kernel_check(n_list: &[u32], a: f64, b: f64, naive: bool, out: Option<&std::path::Path>) -> Result<(), CliError> {
    validate_ladder(n_list, a, b)?;
    let report = kernel_rate_report(n_list, a, b, !naive).map_err(CliError::numerical)?;
    emit(&report.to_csv(), out)
}

fn validate_ladder(n_list: &[u32], a: f64, b: f64) -> Result<(), CliError> {
    if n_list.len() < 2 || n_list.windows(2).any(|w| w[1] <= w[0]) || n_list[0] < 2 {
        return Err(CliError::Validation("--n-list must be increasing with entries >= 2".into()));
    }
    if !a.is_finite() || a <= 0.0 || b < 0.0 {
        return Err(CliError::Validation("growth ratios require a > 0 and b >= 0".into()));
    }
    Ok(())
}

fn cmd_spectrum(
    p: u32,
    m: u32,
    n: u32,
    draws: u32,
    seed: u64,
    ensemble: Ensemble,
    out: Option<&std::path::Path>,
) -> Result<(), CliError> {
    let params = StatParams::new(p, m, n).map_err(CliError::validation)?;
    let cfg = SimConfig::new(params, ensemble, draws, seed);
    let spectra = draw_spectra(&cfg, draws).map_err(CliError::numerical)?;
    let mut csv = String::from("draw,index,theta\n");
    for (d, spec) in spectra.iter().enumerate() {
        for (i, theta) in spec.iter().enumerate() {
            csv.push_str(&format!("{d},{i},{theta:.16e}\n"));
        }
    }
    emit(&csv, out)
}

// ---- output plumbing ----

fn command_output(command: &str, inputs: Value, results: Value, caveats: Vec<String>) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "inputs": inputs,
        "results": results,
        "caveats": caveats,
    })
}

/// serde_json formatter printing every float with 17 significant digits.
struct SciFormatter;

impl serde_json::ser::Formatter for SciFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> std::io::Result<()>
    where
        W: ?Sized + std::io::Write,
    {
        write!(writer, "{value:.16e}")
    }
}

fn print_json(value: &Value) {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, SciFormatter);
    serde::Serialize::serialize(value, &mut ser).expect("JSON serialization cannot fail");
    buf.push(b'\n');
    std::io::stdout().write_all(&buf).expect("stdout write");
}

fn emit(text: &str, out: Option<&std::path::Path>) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| CliError::Validation(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

// ---- Tracy-Widom table cache ----

fn cache_path() -> Option<PathBuf> {
    let dir = std::env::var_os("GRSTAT_CACHE_DIR")
        .map(PathBuf::from)
        .or_else(|| std::env::var_os("XDG_CACHE_HOME").map(|d| PathBuf::from(d).join("grstat")))
        .or_else(|| std::env::var_os("HOME").map(|d| PathBuf::from(d).join(".cache/grstat")))?;
    Some(dir.join("tw-v1-grid-10-10-0.05.csv"))
}

fn load_table_cache() {
    let Some(path) = cache_path() else { return };
    let Ok(text) = fs::read_to_string(&path) else { return };
    if let Ok(pair) = special::tables_from_csv(&text) {
        special::install_tables(pair);
    }
}

fn store_table_cache() {
    let Some(path) = cache_path() else { return };
    if path.exists() {
        return;
    }
    let (Ok(t1), Ok(t2)) = (tw_table(1), tw_table(2)) else { return };
    if let Some(parent) = path.parent() {
        if fs::create_dir_all(parent).is_err() {
            return;
        }
    }
    let _ = fs::write(&path, special::tables_to_csv(t1, t2));
}
