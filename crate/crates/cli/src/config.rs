//! Run configuration files.
//!
//! Grammar (version 1):
//!
//! ```text
//! # comment, also allowed after a value
//! seed = 7                 # root-level keys: seed only
//! [mixture]
//! molar_masses = 2, 1      # vectors are comma separated
//! gammas = 1.4, 1.6667
//! [viscosity]
//! shear = 1, 0, 0, 1       # N×N matrices are given row-major
//! grid.n_cells = 128       # a dotted key names its section explicitly
//! ```
//!
//! Keys may appear once. Unknown sections and keys are rejected, as are keys
//! that do not apply to the selected variant (for instance `pressure.k1`
//! with `pressure.law = simple`).

use std::collections::BTreeMap;
use std::path::PathBuf;

use multifluid_core::adiabat::{adiabat_process, uniform_volume_grid};
use multifluid_core::nalgebra::DMatrix;
use multifluid_core::solver::{FieldState, RunSettings};
use multifluid_core::{
    AlphaMode, Error as CoreError, Forcing, Grid1D, MixtureSpec, OffDiagonalRule, PressureSetting, Profile,
    Provenance, ReferenceState, Shape, Solver, SolverConfig, ViscosityMatrices, ViscosityModel, ViscositySetting,
};
use thiserror::Error;

pub const GRAMMAR_VERSION: u32 = 1;

const SECTIONS: &[(&str, &[&str])] = &[
    ("", &["seed"]),
    (
        "mixture",
        &[
            "molar_masses",
            "gammas",
            "dofs",
            "pure_viscosities",
            "gas_constant",
            "ref_densities",
            "ref_temperature",
            "ref_volume",
        ],
    ),
    ("pressure", &["law", "k", "k1", "gamma", "gamma_mode"]),
    ("alpha", &["mode", "constants"]),
    ("viscosity", &["rule", "dependence", "shear", "lambda", "alpha_ij", "beta_ij"]),
    ("grid", &["n_cells", "length"]),
    ("time", &["t_end", "cfl", "snapshot_interval", "dt", "max_steps"]),
    (
        "initial",
        &[
            "profile",
            "densities",
            "density_amplitudes",
            "velocities",
            "velocity_amplitudes",
            "wavenumber",
            "center",
            "width",
        ],
    ),
    ("forces", &["waveform", "amplitudes", "wavenumber"]),
    ("output", &["directory"]),
    ("adiabat", &["v_min", "v_max", "steps"]),
];

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("{key}: {msg}")]
    Invalid { key: String, msg: String },
}

fn invalid(key: &str, msg: impl std::fmt::Display) -> ConfigError {
    ConfigError::Invalid {
        key: key.to_string(),
        msg: msg.to_string(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdiabatGrid {
    pub v_min: f64,
    pub v_max: f64,
    pub steps: usize,
}

impl AdiabatGrid {
    pub fn volumes(&self) -> Vec<f64> {
        uniform_volume_grid(self.v_min, self.v_max, self.steps)
    }
}

/// A fully validated run description.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub mixture: MixtureSpec,
    pub pressure: PressureSetting,
    pub alpha: AlphaMode,
    pub viscosity: ViscositySetting,
    pub grid: Grid1D,
    pub time: RunSettings,
    pub initial: Profile,
    pub forcing: Forcing,
    pub output: Option<PathBuf>,
    pub seed: u64,
    pub adiabat: AdiabatGrid,
}

impl RunConfig {
    pub fn solver_config(&self) -> SolverConfig {
        SolverConfig {
            grid: self.grid,
            mixture: self.mixture.clone(),
            pressure: self.pressure.clone(),
            alpha: self.alpha.clone(),
            viscosity: self.viscosity.clone(),
            forcing: self.forcing.clone(),
        }
    }

    pub fn initialize(&self) -> Result<(Solver, FieldState), ConfigError> {
        Solver::init(self.solver_config(), &self.initial).map_err(init_error)
    }
}

/// Maps a failure of the solver's own validation onto the key that controls it.
fn init_error(e: CoreError) -> ConfigError {
    let key = match &e {
        CoreError::ViscosityConstraint(_) => "viscosity",
        CoreError::FloorBreach { .. } | CoreError::NonPositiveDensity(_) => "initial.densities",
        CoreError::DimensionMismatch { .. } => "mixture.molar_masses",
        _ => "config",
    };
    invalid(key, e)
}

struct Entry {
    value: String,
    line: usize,
    used: bool,
}

struct Table {
    entries: BTreeMap<String, Entry>,
}

fn strip_comment(line: &str) -> &str {
    line.split_once('#').map_or(line, |(a, _)| a).trim()
}

fn known(section: &str, key: &str) -> bool {
    SECTIONS.iter().any(|(s, keys)| *s == section && keys.contains(&key))
}

fn lex(text: &str) -> Result<Table, ConfigError> {
    let mut entries = BTreeMap::new();
    let mut section = String::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = strip_comment(raw);
        if content.is_empty() {
            continue;
        }
        if let Some(rest) = content.strip_prefix('[') {
            let name = rest
                .strip_suffix(']')
                .ok_or_else(|| ConfigError::Syntax {
                    line,
                    msg: format!("unterminated section header `{content}`"),
                })?
                .trim();
            if name.is_empty() || !SECTIONS.iter().any(|(s, _)| *s == name) {
                return Err(ConfigError::Syntax {
                    line,
                    msg: format!("unknown section `[{name}]`"),
                });
            }
            section = name.to_string();
            continue;
        }
        let (key, value) = content.split_once('=').ok_or_else(|| ConfigError::Syntax {
            line,
            msg: format!("expected `key = value`, found `{content}`"),
        })?;
        let (key, value) = (key.trim(), value.trim());
        if key.is_empty() || !key.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '.') {
            return Err(ConfigError::Syntax {
                line,
                msg: format!("malformed key `{key}`"),
            });
        }
        if value.is_empty() {
            return Err(ConfigError::Syntax {
                line,
                msg: format!("missing value for `{key}`"),
            });
        }
        let (sec, name) = match key.split_once('.') {
            Some((s, k)) => (s.to_string(), k.to_string()),
            None => (section.clone(), key.to_string()),
        };
        if name.contains('.') || !known(&sec, &name) {
            let path = if sec.is_empty() { name } else { format!("{sec}.{name}") };
            return Err(ConfigError::Syntax {
                line,
                msg: format!("unknown key `{path}`"),
            });
        }
        let path = if sec.is_empty() { name } else { format!("{sec}.{name}") };
        if let Some(prev) = entries.get(&path) {
            let prev: &Entry = prev;
            return Err(ConfigError::Syntax {
                line,
                msg: format!("duplicate key `{path}` (first set on line {})", prev.line),
            });
        }
        entries.insert(
            path,
            Entry {
                value: value.to_string(),
                line,
                used: false,
            },
        );
    }
    Ok(Table { entries })
}

impl Table {
    fn raw(&mut self, key: &str) -> Option<&str> {
        self.entries.get_mut(key).map(|e| {
            e.used = true;
            e.value.as_str()
        })
    }

    fn has(&self, key: &str) -> bool {
        self.entries.contains_key(key)
    }

    fn f64(&mut self, key: &str) -> Result<Option<f64>, ConfigError> {
        self.raw(key).map(|v| parse_f64(key, v)).transpose()
    }

    fn usize(&mut self, key: &str) -> Result<Option<usize>, ConfigError> {
        self.raw(key)
            .map(|v| v.parse::<usize>().map_err(|_| invalid(key, format!("expected a nonnegative integer, got `{v}`"))))
            .transpose()
    }

    fn u64(&mut self, key: &str) -> Result<Option<u64>, ConfigError> {
        self.raw(key)
            .map(|v| v.parse::<u64>().map_err(|_| invalid(key, format!("expected a nonnegative integer, got `{v}`"))))
            .transpose()
    }

    fn vec(&mut self, key: &str) -> Result<Option<Vec<f64>>, ConfigError> {
        self.raw(key)
            .map(|v| v.split(',').map(|s| parse_f64(key, s.trim())).collect())
            .transpose()
    }

    fn vec_len(&mut self, key: &str, n: usize) -> Result<Option<Vec<f64>>, ConfigError> {
        match self.vec(key)? {
            Some(v) if v.len() != n => Err(invalid(key, format!("expected {n} values, got {}", v.len()))),
            other => Ok(other),
        }
    }

    fn matrix(&mut self, key: &str, n: usize) -> Result<Option<DMatrix<f64>>, ConfigError> {
        match self.vec(key)? {
            Some(v) if v.len() != n * n => Err(invalid(
                key,
                format!("expected {} values ({n}x{n}, row-major), got {}", n * n, v.len()),
            )),
            Some(v) => Ok(Some(DMatrix::from_row_slice(n, n, &v))),
            None => Ok(None),
        }
    }

    fn word<'a>(&mut self, key: &str, choices: &[&'a str], default: &'a str) -> Result<&'a str, ConfigError> {
        match self.raw(key) {
            None => Ok(default),
            Some(v) => choices
                .iter()
                .copied()
                .find(|c| *c == v)
                .ok_or_else(|| invalid(key, format!("expected one of {}, got `{v}`", choices.join("|")))),
        }
    }

    fn required<T>(&self, key: &str, value: Option<T>) -> Result<T, ConfigError> {
        value.ok_or_else(|| invalid(key, "required key is missing"))
    }

    /// Keys present in the file that the selected variants never read.
    fn reject_unused(&self) -> Result<(), ConfigError> {
        match self.entries.iter().find(|(_, e)| !e.used) {
            Some((k, e)) => Err(invalid(k, format!("not applicable to this configuration (line {})", e.line))),
            None => Ok(()),
        }
    }
}

fn parse_f64(key: &str, s: &str) -> Result<f64, ConfigError> {
    match s.parse::<f64>() {
        Ok(x) if x.is_finite() => Ok(x),
        _ => Err(invalid(key, format!("expected a finite number, got `{s}`"))),
    }
}

fn core(key: &str) -> impl Fn(CoreError) -> ConfigError + '_ {
    move |e| invalid(key, e)
}

pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    let mut t = lex(text)?;
    let seed = t.u64("seed")?.unwrap_or(0);

    let molar_masses = t.vec("mixture.molar_masses")?;
    let molar_masses = t.required("mixture.molar_masses", molar_masses)?;
    let n = molar_masses.len();
    let pure_given = t.vec_len("mixture.pure_viscosities", n)?;
    let pure = pure_given.clone().unwrap_or(vec![0.0; n]);
    let gas_constant = t.f64("mixture.gas_constant")?.unwrap_or(1.0);
    let reference = ReferenceState {
        densities: t.vec_len("mixture.ref_densities", n)?.unwrap_or(vec![1.0; n]),
        temperature: t.f64("mixture.ref_temperature")?.unwrap_or(1.0),
        volume: t.f64("mixture.ref_volume")?.unwrap_or(1.0),
    };
    let mixture = match (t.has("mixture.gammas"), t.has("mixture.dofs")) {
        (true, false) => {
            let g = t.vec_len("mixture.gammas", n)?.unwrap();
            MixtureSpec::new(molar_masses, g, pure.clone(), gas_constant, reference)
                .map_err(core("mixture"))?
        }
        (false, true) => {
            let d = t.vec_len("mixture.dofs", n)?.unwrap();
            MixtureSpec::from_degrees_of_freedom(molar_masses, d, pure.clone(), gas_constant, reference)
                .map_err(core("mixture"))?
        }
        (true, true) => return Err(invalid("mixture.dofs", "give either gammas or dofs, not both")),
        (false, false) => return Err(invalid("mixture.gammas", "one of gammas or dofs is required")),
    };

    let (v_min, v_max) = {
        let v0 = mixture.reference().volume;
        (
            t.f64("adiabat.v_min")?.unwrap_or(0.5 * v0),
            t.f64("adiabat.v_max")?.unwrap_or(2.0 * v0),
        )
    };
    let adiabat = AdiabatGrid {
        v_min,
        v_max,
        steps: t.usize("adiabat.steps")?.unwrap_or(64),
    };
    if !(adiabat.v_min > 0.0 && adiabat.v_min < adiabat.v_max) {
        return Err(invalid("adiabat.v_min", "need 0 < v_min < v_max"));
    }
    if adiabat.steps == 0 {
        return Err(invalid("adiabat.steps", "must be positive"));
    }

    // Constants of the reference adiabat supply the default K and K1.
    let reference_adiabat =
        adiabat_process(&mixture, &[mixture.reference().volume]).map_err(core("mixture"))?;
    let pressure = match t.word("pressure.law", &["simple", "composite"], "simple")? {
        "simple" => PressureSetting::Simple {
            k: t.f64("pressure.k")?.unwrap_or(reference_adiabat.k_simple),
            gamma: t.f64("pressure.gamma")?,
        },
        _ => PressureSetting::Composite {
            k1: t.f64("pressure.k1")?.unwrap_or(reference_adiabat.k1_composite),
            pointwise: t.word("pressure.gamma_mode", &["frozen", "pointwise"], "frozen")? == "pointwise",
        },
    };
    match &pressure {
        PressureSetting::Simple { k, gamma } => {
            if *k < 0.0 {
                return Err(invalid("pressure.k", "must be nonnegative"));
            }
            if gamma.is_some_and(|g| g <= 1.0) {
                return Err(invalid("pressure.gamma", "must exceed 1"));
            }
        }
        PressureSetting::Composite { k1, .. } => {
            if *k1 < 0.0 {
                return Err(invalid("pressure.k1", "must be nonnegative"));
            }
        }
    }

    let alpha = match t.word("alpha.mode", &["concentration", "constant"], "concentration")? {
        "concentration" => AlphaMode::Concentration,
        _ => {
            let c = t.vec_len("alpha.constants", n)?;
            AlphaMode::Constant(t.required("alpha.constants", c)?)
        }
    };
    alpha.validate(n).map_err(core("alpha.constants"))?;

    let lambda = t.matrix("viscosity.lambda", n)?;
    let rule = t.word("viscosity.rule", &["geometric", "exponential", "matrix"], "geometric")?;
    let dependence = t.word("viscosity.dependence", &["constant", "concentration"], "constant")?;
    let viscosity = if rule == "matrix" {
        if dependence == "concentration" {
            return Err(invalid("viscosity.dependence", "explicit matrices are constant by definition"));
        }
        let shear = t.matrix("viscosity.shear", n)?;
        let shear = t.required("viscosity.shear", shear)?;
        let second = lambda.unwrap_or_else(|| DMatrix::zeros(n, n));
        ViscositySetting::Matrices(
            ViscosityMatrices::new(shear, second, Provenance::Constant).map_err(core("viscosity.shear"))?,
        )
    } else {
        let offdiag = if rule == "exponential" {
            OffDiagonalRule::Exponential {
                alpha: t.matrix("viscosity.alpha_ij", n)?.unwrap_or_else(|| DMatrix::zeros(n, n)),
                beta: t.matrix("viscosity.beta_ij", n)?.unwrap_or_else(|| DMatrix::zeros(n, n)),
            }
        } else {
            OffDiagonalRule::Simple
        };
        if pure_given.is_none() {
            return Err(invalid("mixture.pure_viscosities", format!("required by viscosity.rule = {rule}")));
        }
        let model = ViscosityModel::new(pure, offdiag, lambda).map_err(core("viscosity"))?;
        if dependence == "concentration" {
            ViscositySetting::ConcentrationDependent(model)
        } else {
            ViscositySetting::Frozen(model)
        }
    };

    let grid = Grid1D::new(
        t.usize("grid.n_cells")?.unwrap_or(64),
        t.f64("grid.length")?.unwrap_or(1.0),
    )
    .map_err(core("grid"))?;

    let time = RunSettings {
        snapshot_interval: t.f64("time.snapshot_interval")?,
        max_dt: t.f64("time.dt")?,
        max_steps: t.usize("time.max_steps")?,
        ..RunSettings::new(
            t.f64("time.t_end")?.unwrap_or(0.0),
            t.f64("time.cfl")?.unwrap_or(0.4),
        )
    };
    time.validate().map_err(core("time"))?;

    let shape = match t.word("initial.profile", &["uniform", "sine", "bump", "random"], "uniform")? {
        "uniform" => Shape::Uniform,
        "sine" => Shape::Sine {
            wavenumber: t.f64("initial.wavenumber")?.unwrap_or(1.0),
        },
        "bump" => Shape::Bump {
            center: t.f64("initial.center")?.unwrap_or(0.5 * grid.length()),
            width: t.f64("initial.width")?.unwrap_or(0.1 * grid.length()),
        },
        _ => Shape::Random { seed },
    };
    let densities = t.vec_len("initial.densities", n)?;
    let densities = t.required("initial.densities", densities)?;
    let zeros = vec![0.0; n];
    let (density_amp, velocities, velocity_amp) = if shape == Shape::Uniform {
        (zeros.clone(), t.vec_len("initial.velocities", n)?.unwrap_or(zeros.clone()), zeros)
    } else {
        (
            t.vec_len("initial.density_amplitudes", n)?.unwrap_or(zeros.clone()),
            t.vec_len("initial.velocities", n)?.unwrap_or(zeros.clone()),
            t.vec_len("initial.velocity_amplitudes", n)?.unwrap_or(zeros),
        )
    };
    let initial =
        Profile::new(shape, &grid, densities, density_amp, velocities, velocity_amp).map_err(core("initial"))?;

    let forcing = match t.word("forces.waveform", &["none", "constant", "sine"], "none")? {
        "none" => Forcing::Zero,
        "constant" => {
            let a = t.vec_len("forces.amplitudes", n)?;
            Forcing::Constant(t.required("forces.amplitudes", a)?)
        }
        _ => {
            let a = t.vec_len("forces.amplitudes", n)?;
            Forcing::Sinusoid {
                amplitudes: t.required("forces.amplitudes", a)?,
                wavenumber: t.f64("forces.wavenumber")?.unwrap_or(1.0),
            }
        }
    };

    let output = t.raw("output.directory").map(PathBuf::from);
    t.reject_unused()?;

    let config = RunConfig {
        mixture,
        pressure,
        alpha,
        viscosity,
        grid,
        time,
        initial,
        forcing,
        output,
        seed,
        adiabat,
    };
    config.initialize()?;
    Ok(config)
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = "[mixture]\nmolar_masses = 1\ngammas = 1.4\npure_viscosities = 1\n[initial]\ndensities = 1\n";

    fn key_of(e: ConfigError) -> String {
        match e {
            ConfigError::Invalid { key, .. } => key,
            ConfigError::Syntax { line, msg } => panic!("unexpected syntax error on line {line}: {msg}"),
        }
    }

    fn line_of(e: ConfigError) -> usize {
        match e {
            ConfigError::Syntax { line, .. } => line,
            other => panic!("expected a syntax error, got {other}"),
        }
    }

    #[test]
    fn minimal_single_constituent_config_is_accepted() {
        let c = parse_config(MINIMAL).unwrap();
        assert_eq!(c.grid.n_cells(), 64);
        assert_eq!(c.time.t_end, 0.0);
        assert_eq!(c.seed, 0);
        let (_, s) = c.initialize().unwrap();
        assert!(s.momentum[0].iter().all(|&m| m == 0.0));
    }

    #[test]
    fn default_k_comes_from_reference_state() {
        // single gas: K = R θ0 ρ0^{1−γ}/M = 1 at the unit reference
        let c = parse_config(MINIMAL).unwrap();
        match c.pressure {
            PressureSetting::Simple { k, gamma: None } => assert!((k - 1.0).abs() < 1e-15),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn alpha_constants_must_sum_to_one() {
        let text = "[mixture]\nmolar_masses = 2, 1\ngammas = 1.4, 1.4\n\
                    [alpha]\nmode = constant\nconstants = 0.6, 0.6\n[initial]\ndensities = 1, 1\n";
        assert_eq!(key_of(parse_config(text).unwrap_err()), "alpha.constants");
    }

    #[test]
    fn geometric_rule_with_absent_constituent_is_rejected() {
        for dependence in ["constant", "concentration"] {
            let text = format!(
                "[mixture]\nmolar_masses = 2, 1\ngammas = 1.4, 1.4\npure_viscosities = 1, 1\n\
                 [viscosity]\nrule = geometric\ndependence = {dependence}\n[initial]\ndensities = 1, 0\n"
            );
            assert_eq!(key_of(parse_config(&text).unwrap_err()), "viscosity");
        }
    }

    #[test]
    fn explicit_matrices_allow_absent_viscosity_data() {
        let text = "[mixture]\nmolar_masses = 2, 1\ngammas = 1.4, 1.4\n\
                    [viscosity]\nrule = matrix\nshear = 1, 0, 0, 1\nlambda = 0, 0, 0, 0\n\
                    [initial]\ndensities = 1, 1\n";
        let c = parse_config(text).unwrap();
        assert!(matches!(c.viscosity, ViscositySetting::Matrices(_)));
    }

    #[test]
    fn syntax_errors_carry_line_numbers() {
        assert_eq!(line_of(parse_config("[mixture]\nmolar_masses 2\n").unwrap_err()), 2);
        assert_eq!(line_of(parse_config("# c\n\n[mixtur]\n").unwrap_err()), 3);
        assert_eq!(line_of(parse_config("[grid]\ncells = 3\n").unwrap_err()), 2);
        assert_eq!(line_of(parse_config("[grid\n").unwrap_err()), 1);
        assert_eq!(line_of(parse_config("grid.n_cells = 8\n[grid]\nn_cells = 9\n").unwrap_err()), 3);
        assert_eq!(line_of(parse_config("length = 2\n").unwrap_err()), 1);
    }

    #[test]
    fn dotted_keys_and_comments() {
        let text = "seed = 5 # root\nmixture.molar_masses = 1\nmixture.gammas = 2\nmixture.pure_viscosities = 0.1\n\
                    [grid]\nn_cells = 10   # trailing\ninitial.densities = 2\n";
        let c = parse_config(text).unwrap();
        assert_eq!(c.seed, 5);
        assert_eq!(c.grid.n_cells(), 10);
    }

    #[test]
    fn variant_specific_keys_are_checked() {
        let base = "[mixture]\nmolar_masses = 1\ngammas = 1.4\npure_viscosities = 1\n[initial]\ndensities = 1\n";
        let k1 = format!("{base}[pressure]\nlaw = simple\nk1 = 2\n");
        assert_eq!(key_of(parse_config(&k1).unwrap_err()), "pressure.k1");
        let law = format!("{base}[pressure]\nlaw = ideal\n");
        assert_eq!(key_of(parse_config(&law).unwrap_err()), "pressure.law");
        let both = "[mixture]\nmolar_masses = 1\ngammas = 1.4\ndofs = 5\npure_viscosities = 1\n[initial]\ndensities = 1\n";
        assert_eq!(key_of(parse_config(both).unwrap_err()), "mixture.dofs");
    }

    #[test]
    fn validation_errors_name_the_key() {
        let cases = [
            ("[mixture]\ngammas = 1.4\n[initial]\ndensities = 1\n", "mixture.molar_masses"),
            ("[mixture]\nmolar_masses = 1, 2\ngammas = 1.4\n[initial]\ndensities = 1, 1\n", "mixture.gammas"),
            ("[mixture]\nmolar_masses = 1\ngammas = 0.9\npure_viscosities = 1\n[initial]\ndensities = 1\n", "mixture"),
            ("[mixture]\nmolar_masses = 1\ngammas = 1.4\npure_viscosities = 1\n[initial]\ndensities = x\n", "initial.densities"),
            ("[mixture]\nmolar_masses = 1\ngammas = 1.4\npure_viscosities = 1\n", "initial.densities"),
            ("[mixture]\nmolar_masses = 1\ngammas = 1.4\npure_viscosities = 1\n[initial]\ndensities = 1\n[time]\ncfl = 2\n", "time"),
            ("[mixture]\nmolar_masses = 1\ngammas = 1.4\npure_viscosities = 1\n[initial]\ndensities = 1\n[grid]\nn_cells = 2\n", "grid"),
            (
                "[mixture]\nmolar_masses = 1\ngammas = 1.4\npure_viscosities = 1\n[initial]\ndensities = 1\n\
                 [viscosity]\nrule = matrix\nshear = 1\nlambda = -2\n",
                "viscosity",
            ),
            ("[mixture]\nmolar_masses = 1\ngammas = 1.4\npure_viscosities = 1\n[initial]\ndensities = 1\n[viscosity]\nrule = matrix\n", "viscosity.shear"),
        ];
        for (text, key) in cases {
            assert_eq!(key_of(parse_config(text).unwrap_err()), key, "config:\n{text}");
        }
    }

    #[test]
    fn full_config_round_trip() {
        let text = "\
seed = 11
[mixture]
molar_masses = 2, 1
dofs = 5, 3
pure_viscosities = 0.02, 0.01
ref_densities = 1, 1
[pressure]
law = composite
gamma_mode = pointwise
[viscosity]
rule = exponential
dependence = concentration
alpha_ij = 0, 0.1, 0.1, 0
beta_ij = 0, -0.1, -0.1, 0
[grid]
n_cells = 32
length = 2
[time]
t_end = 0.1
cfl = 0.3
snapshot_interval = 0.05
[initial]
profile = random
densities = 1, 0.5
density_amplitudes = 0.1, 0.1
velocity_amplitudes = 0.05, 0.05
[forces]
waveform = sine
amplitudes = 0.1, -0.1
wavenumber = 2
[output]
directory = out
[adiabat]
steps = 8
";
        let c = parse_config(text).unwrap();
        assert_eq!(c.seed, 11);
        assert_eq!(c.initial.shape(), Shape::Random { seed: 11 });
        assert!(matches!(c.pressure, PressureSetting::Composite { pointwise: true, .. }));
        assert!(matches!(c.viscosity, ViscositySetting::ConcentrationDependent(_)));
        assert_eq!(c.adiabat.volumes().len(), 9);
        assert_eq!(c.output, Some(PathBuf::from("out")));
        assert!((c.mixture.gammas()[0] - 1.4).abs() < 1e-15);
    }
}
