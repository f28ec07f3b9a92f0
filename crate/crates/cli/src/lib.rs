//! Command-line front end: config ingestion, subcommand dispatch and
//! CSV/report emission. `main.rs` only forwards to [`execute`].

pub mod config;

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use multifluid_core::counterexamples::total_ratio_bounds;
use multifluid_core::nalgebra::DMatrix;
use multifluid_core::output::{self, counterexample_row, fmt_f64, COUNTEREXAMPLE_HEADER};
use multifluid_core::viscosity::symmetric_eigenvalues;
use multifluid_core::{
    adiabat_process, bulk_constraint_check, case_tilde_rho, case_total_rho, diagnostics, integral_counterexample,
    weight_search, ConcentrationVector, CounterexampleReport, OffDiagonalRule, Provenance, SearchOutcome,
    SearchRanges, Termination, ViscosityMatrices, ViscosityModel, WeightChoice,
};
use thiserror::Error;

pub use config::{parse_config, ConfigError, RunConfig, GRAMMAR_VERSION};

pub const VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), " (config grammar 1)");

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Runtime(String),
    #[error("{0}")]
    NotReproduced(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Runtime(_) => 2,
            CliError::NotReproduced(_) => 3,
        }
    }
}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<multifluid_core::Error> for CliError {
    fn from(e: multifluid_core::Error) -> Self {
        match e {
            multifluid_core::Error::FloorBreach { .. }
            | multifluid_core::Error::NonFinite(_)
            | multifluid_core::Error::Io(_) => CliError::Runtime(e.to_string()),
            other => CliError::Validation(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Runtime(e.to_string())
    }
}

#[derive(Debug, Parser)]
#[command(name = "multifluid", version = VERSION, about = "Barotropic viscous multi-fluid laboratory")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the 1-D solver and write snapshot and diagnostics CSVs.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        /// Output directory; defaults to `output.directory` of the config.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reproduce the pressure non-monotonicity constructions.
    Counterexample(CounterexampleArgs),
    /// Tabulate the isentropic process of the configured mixture.
    Adiabat {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Build viscosity matrices and check their positivity.
    Viscosity(ViscosityArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CaseArg {
    Tilde,
    Total,
    Integral,
    Search,
}

#[derive(Debug, Args)]
pub struct CounterexampleArgs {
    #[arg(long, value_enum)]
    pub case: CaseArg,
    #[arg(long = "M1")]
    pub m1: Option<f64>,
    #[arg(long = "M2")]
    pub m2: Option<f64>,
    #[arg(long)]
    pub gamma: Option<f64>,
    /// `ρ²/ρ¹` of the total-density case; defaults to the geometric mean of
    /// the admissible bounds. With `--case integral` it selects that case.
    #[arg(long)]
    pub ratio: Option<f64>,
    /// `w1,w2` or `inverse-molar`.
    #[arg(long, default_value = "1,1")]
    pub weight: String,
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Size of each of the two cells of the integral construction.
    #[arg(long, default_value_t = 1.0)]
    pub measure: f64,
}

#[derive(Debug, Args)]
pub struct ViscosityArgs {
    #[arg(long = "mu-hat", value_delimiter = ',', required = true, allow_hyphen_values = true)]
    pub mu_hat: Vec<f64>,
    #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
    pub xi: Vec<f64>,
    /// Row-major N×N second-viscosity matrix.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub lambda: Option<Vec<f64>>,
    /// Row-major N×N exponent constants; selects the exponential rule.
    #[arg(long = "alpha-ij", value_delimiter = ',', allow_hyphen_values = true)]
    pub alpha_ij: Option<Vec<f64>>,
    #[arg(long = "beta-ij", value_delimiter = ',', allow_hyphen_values = true)]
    pub beta_ij: Option<Vec<f64>>,
}

fn parse_list(s: &str) -> Result<Vec<f64>, String> {
    s.split(',')
        .map(|p| {
            let p = p.trim();
            p.parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| format!("`{p}` is not a finite number"))
        })
        .collect()
}

pub fn execute(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Simulate { config, out: dir } => simulate(&config, dir.as_deref(), out),
        Command::Counterexample(args) => counterexample(&args, out),
        Command::Adiabat { config, out: file } => adiabat(&config, &file, out),
        Command::Viscosity(args) => viscosity(&args, out),
    }
}

fn load(path: &Path) -> Result<RunConfig, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))?;
    Ok(parse_config(&text)?)
}

fn create(path: &Path) -> Result<BufWriter<File>, CliError> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| CliError::Runtime(format!("{}: {e}", path.display())))
}

pub fn simulate(config_path: &Path, dir: Option<&Path>, out: &mut dyn Write) -> Result<(), CliError> {
    let config = load(config_path)?;
    let dir = dir
        .map(Path::to_path_buf)
        .or_else(|| config.output.clone())
        .ok_or_else(|| CliError::Validation("output.directory: required when --out is not given".into()))?;
    let (solver, state) = config.initialize()?;
    let initial_masses = diagnostics::masses(&solver, &state);
    let result = solver.run(state, &config.time)?;

    fs::create_dir_all(&dir)?;
    for (idx, snap) in result.snapshots.iter().enumerate() {
        let mut f = create(&dir.join(format!("snapshot_{idx:04}.csv")))?;
        output::write_snapshot(&mut f, &solver, snap)?;
        f.flush()?;
    }
    let mut f = create(&dir.join("diagnostics.csv"))?;
    output::write_diagnostics(&mut f, solver.n_constituents(), &result.diagnostics)?;
    f.flush()?;

    let final_masses = diagnostics::masses(&solver, &result.final_state);
    let drift = initial_masses
        .iter()
        .zip(&final_masses)
        .map(|(a, b)| ((b - a) / a).abs())
        .fold(0.0, f64::max);
    writeln!(out, "steps          {}", result.steps)?;
    writeln!(out, "final time     {}", fmt_f64(result.final_state.time))?;
    writeln!(out, "snapshots      {}", result.snapshots.len())?;
    writeln!(out, "mass drift     {drift:.3e}")?;
    writeln!(out, "output         {}", dir.display())?;
    match result.termination {
        Termination::Completed => Ok(()),
        Termination::FloorBreach(e) => Err(CliError::Runtime(format!(
            "run stopped at t = {}: {e}",
            fmt_f64(result.final_state.time)
        ))),
    }
}

fn parse_weight(s: &str) -> Result<WeightChoice, CliError> {
    if s == "inverse-molar" {
        return Ok(WeightChoice::InverseMolar);
    }
    match parse_list(s).map_err(CliError::Validation)?.as_slice() {
        &[a, b] => Ok(WeightChoice::Fixed([a, b])),
        _ => Err(CliError::Validation(format!("--weight: expected `w1,w2` or `inverse-molar`, got `{s}`"))),
    }
}

fn require(v: Option<f64>, flag: &str) -> Result<f64, CliError> {
    v.ok_or_else(|| CliError::Validation(format!("--{flag} is required for this case")))
}

fn print_report(r: &CounterexampleReport, out: &mut dyn Write) -> std::io::Result<()> {
    writeln!(out, "M1 = {}, M2 = {}, gamma = {}", r.m1, r.m2, r.gamma)?;
    writeln!(out, "epsilon        {}", fmt_f64(r.epsilon))?;
    for (k, s) in r.states.iter().enumerate() {
        writeln!(
            out,
            "state {}        rho = {}  tilde_rho = {}  p = {}  (rho_1, rho_2) = ({}, {})",
            k + 1,
            fmt_f64(s.total_density),
            fmt_f64(s.tilde_density),
            fmt_f64(s.pressure),
            fmt_f64(s.components[0]),
            fmt_f64(s.components[1]),
        )?;
    }
    writeln!(out, "(dp)(d tilde)  {}", fmt_f64(r.product_tilde))?;
    writeln!(out, "(dp)(d rho)    {}", fmt_f64(r.product_total))?;
    writeln!(out, "all positive   {}", r.all_positive)?;
    if r.near_degenerate {
        writeln!(out, "warning        M1 and M2 are nearly equal; reconstruction is ill-conditioned")?;
    }
    writeln!(out, "verdict        {}", r.verdict.as_str())?;
    writeln!(out, "{COUNTEREXAMPLE_HEADER}")?;
    writeln!(out, "{}", counterexample_row(r))
}

pub fn counterexample(args: &CounterexampleArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let weight = parse_weight(&args.weight)?;
    if args.case == CaseArg::Search {
        let outcome = weight_search(weight, SearchRanges::default(), args.samples, args.seed)?;
        return match outcome {
            SearchOutcome::Found {
                report,
                weight,
                value,
                draw,
            } => {
                writeln!(out, "found on draw {draw} (seed {})", args.seed)?;
                writeln!(out, "weight         ({}, {})", fmt_f64(weight[0]), fmt_f64(weight[1]))?;
                writeln!(out, "integral       {}", fmt_f64(value))?;
                print_report(&report, out)?;
                Ok(())
            }
            SearchOutcome::Exhausted { samples } => {
                writeln!(out, "no negative integral in {samples} draws (seed {})", args.seed)?;
                Err(CliError::NotReproduced(format!("weight search exhausted {samples} draws")))
            }
        };
    }

    let (m1, m2, gamma) = (require(args.m1, "M1")?, require(args.m2, "M2")?, require(args.gamma, "gamma")?);
    let report = match (args.case, args.ratio) {
        (CaseArg::Tilde, Some(_)) => return Err(CliError::Validation("--ratio applies to the total case only".into())),
        (CaseArg::Tilde, None) | (CaseArg::Integral, None) => case_tilde_rho(m1, m2, gamma)?,
        (_, ratio) => {
            let (lo, hi) = total_ratio_bounds(m1, m2, gamma);
            writeln!(out, "admissible ratio range ({}, {})", fmt_f64(lo), fmt_f64(hi))?;
            case_total_rho(m1, m2, gamma, ratio)?
        }
    };
    print_report(&report, out)?;
    if args.case != CaseArg::Integral {
        return if report.reproduced() {
            Ok(())
        } else {
            Err(CliError::NotReproduced(format!("verdict {}", report.verdict.as_str())))
        };
    }

    let w = weight.resolve(m1, m2);
    let ic = integral_counterexample(&report, w, args.measure)?;
    writeln!(out, "weight         ({}, {})", fmt_f64(w[0]), fmt_f64(w[1]))?;
    writeln!(
        out,
        "masses         ({}, {}) vs ({}, {})  equal = {}",
        fmt_f64(ic.masses_first[0]),
        fmt_f64(ic.masses_first[1]),
        fmt_f64(ic.masses_second[0]),
        fmt_f64(ic.masses_second[1]),
        ic.masses_equal()
    )?;
    writeln!(out, "integral       {}", fmt_f64(ic.value))?;
    writeln!(out, "|Omega| x pointwise {}", fmt_f64(ic.pointwise_scaled))?;
    if ic.value < 0.0 {
        Ok(())
    } else {
        Err(CliError::NotReproduced(format!(
            "integral {} is not negative for this weight; try --case search",
            fmt_f64(ic.value)
        )))
    }
}

pub fn adiabat(config_path: &Path, file: &Path, out: &mut dyn Write) -> Result<(), CliError> {
    let config = load(config_path)?;
    let result = adiabat_process(&config.mixture, &config.adiabat.volumes())?;
    if let Some(parent) = file.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent)?;
    }
    let mut f = create(file)?;
    output::write_adiabat(&mut f, &result)?;
    f.flush()?;
    writeln!(out, "alpha          {}", fmt_f64(result.alpha_sum))?;
    writeln!(out, "beta           {}", fmt_f64(result.beta_sum))?;
    writeln!(out, "gamma          {}", fmt_f64(result.gamma))?;
    writeln!(out, "C1, C2, C3     {}, {}, {}", fmt_f64(result.c1), fmt_f64(result.c2), fmt_f64(result.c3))?;
    writeln!(out, "K              {}", fmt_f64(result.k_simple))?;
    writeln!(out, "K1             {}", fmt_f64(result.k1_composite))?;
    writeln!(out, "max |p - p_simple|/p     {:.3e}", result.max_pressure_mismatch())?;
    writeln!(out, "max heat residual        {:.3e}", result.max_heat_residual())?;
    Ok(())
}

fn square(v: &[f64], n: usize, flag: &str) -> Result<DMatrix<f64>, CliError> {
    if v.len() != n * n {
        return Err(CliError::Validation(format!(
            "--{flag}: expected {} values ({n}x{n}, row-major), got {}",
            n * n,
            v.len()
        )));
    }
    Ok(DMatrix::from_row_slice(n, n, v))
}

fn print_matrix(out: &mut dyn Write, name: &str, m: &DMatrix<f64>) -> std::io::Result<()> {
    writeln!(out, "{name}")?;
    for row in m.row_iter() {
        let cells: Vec<String> = row.iter().map(|x| format!("{:>24}", fmt_f64(*x))).collect();
        writeln!(out, "  {}", cells.join(" "))?;
    }
    Ok(())
}

pub fn viscosity(args: &ViscosityArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let n = args.mu_hat.len();
    let xi = ConcentrationVector::new(args.xi.clone())?;
    if xi.len() != n {
        return Err(CliError::Validation(format!("--xi has {} entries, --mu-hat has {n}", xi.len())));
    }
    let lambda = args.lambda.as_deref().map(|v| square(v, n, "lambda")).transpose()?;
    let rule = if args.alpha_ij.is_some() || args.beta_ij.is_some() {
        let zero = vec![0.0; n * n];
        OffDiagonalRule::Exponential {
            alpha: square(args.alpha_ij.as_deref().unwrap_or(&zero), n, "alpha-ij")?,
            beta: square(args.beta_ij.as_deref().unwrap_or(&zero), n, "beta-ij")?,
        }
    } else {
        OffDiagonalRule::Simple
    };
    let model = ViscosityModel::new(args.mu_hat.clone(), rule, lambda)?;
    let m: ViscosityMatrices = model.matrices(&xi, Provenance::ConcentrationDependent)?;
    print_matrix(out, "M", &m.shear)?;
    print_matrix(out, "Lambda", &m.second)?;
    print_matrix(out, "H = Lambda + (2/3)M", &m.bulk_combination)?;
    let fmt_all = |v: Vec<f64>| v.into_iter().map(fmt_f64).collect::<Vec<_>>().join(", ");
    writeln!(out, "eig sym(M)     {}", fmt_all(symmetric_eigenvalues(&m.shear)))?;
    writeln!(out, "eig sym(H)     {}", fmt_all(symmetric_eigenvalues(&m.bulk_combination)))?;
    let verdict = bulk_constraint_check(&m)?;
    writeln!(out, "M positive definite       {}", verdict.shear_positive)?;
    writeln!(out, "H positive semi-definite  {}", verdict.bulk_nonnegative)?;
    if verdict.passed() {
        Ok(())
    } else {
        Err(CliError::Validation(verdict.describe()))
    }
}
