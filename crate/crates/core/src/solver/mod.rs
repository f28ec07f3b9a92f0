//! One-dimensional periodic solver for the N-constituent system
//!
//! ```text
//! ∂_t ρ_i + ∂_x(ρ_i v) = 0
//! ∂_t(ρ_i u_i) + ∂_x(ρ_i v u_i) + α_i ∂_x p = ∂_x(Σ_j (2μ_ij + λ_ij) ∂_x u_j) + ρ_i f_i
//! ```
//!
//! with `v = Σ α_i u_i`. Cell-centred finite volumes: upwinded mass and
//! momentum fluxes driven by the face-averaged `v`, centred pressure
//! gradient, centred viscous fluxes with face-averaged coefficients, and a
//! two-stage SSP Runge–Kutta step.

mod profile;
mod scheme;

use nalgebra::DMatrix;

use crate::error::{invalid, Error, Result};
use crate::mixture::{check_len, gamma_of, AlphaMode, ConcentrationVector, GammaMode, MixtureSpec};
use crate::viscosity::{
    bulk_constraint_check, shear_from_slice, symmetric_eigenvalues, Provenance, ViscosityMatrices,
    ViscosityModel,
};

pub use profile::{InitialCondition, Profile, Shape};
pub use scheme::{Derivative, Primitives};

/// Smallest partial density from which a velocity is recovered.
pub const DENSITY_FLOOR: f64 = 1e-10;

/// Concentration below which a concentration-dependent viscosity is refused.
pub const MIN_DEPENDENT_CONCENTRATION: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid1D {
    n_cells: usize,
    length: f64,
}

impl Grid1D {
    pub fn new(n_cells: usize, length: f64) -> Result<Self> {
        if n_cells < 4 {
            return Err(invalid(format!("grid needs at least 4 cells, got {n_cells}")));
        }
        if !(length > 0.0 && length.is_finite()) {
            return Err(invalid(format!("domain length must be positive, got {length}")));
        }
        Ok(Self { n_cells, length })
    }

    pub fn n_cells(&self) -> usize {
        self.n_cells
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn dx(&self) -> f64 {
        self.length / self.n_cells as f64
    }

    pub fn center(&self, k: usize) -> f64 {
        (k as f64 + 0.5) * self.dx()
    }

    pub fn centers(&self) -> Vec<f64> {
        (0..self.n_cells).map(|k| self.center(k)).collect()
    }
}

/// Pressure law as configured; unset exponents are taken from the initial
/// mean concentration.
#[derive(Debug, Clone, PartialEq)]
pub enum PressureSetting {
    /// `p = Kρ^γ`
    Simple { k: f64, gamma: Option<f64> },
    /// `p = K₁ρ^{γ−1}ρ̃`, with `γ` frozen or evaluated per cell.
    Composite { k1: f64, pointwise: bool },
}

/// Pressure law after initialisation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PressureClosure {
    Simple { k: f64, gamma: f64 },
    Composite { k1: f64, mode: GammaMode },
}

#[derive(Debug, Clone, PartialEq)]
pub enum ViscositySetting {
    /// Explicit constant matrices.
    Matrices(ViscosityMatrices),
    /// Model evaluated once at the initial mean concentration.
    Frozen(ViscosityModel),
    /// Model re-evaluated from local concentrations at every stage.
    ConcentrationDependent(ViscosityModel),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Forcing {
    Zero,
    /// Spatially uniform `f_i`.
    Constant(Vec<f64>),
    /// `f_i(x) = a_i sin(2π k x / L)`.
    Sinusoid { amplitudes: Vec<f64>, wavenumber: f64 },
}

impl Forcing {
    fn sample(&self, n: usize, grid: &Grid1D) -> Result<Vec<Vec<f64>>> {
        let cells = grid.n_cells();
        Ok(match self {
            Forcing::Zero => vec![vec![0.0; cells]; n],
            Forcing::Constant(f) => {
                check_len(n, f.len())?;
                f.iter().map(|&fi| vec![fi; cells]).collect()
            }
            Forcing::Sinusoid { amplitudes, wavenumber } => {
                check_len(n, amplitudes.len())?;
                let kx = 2.0 * std::f64::consts::PI * wavenumber / grid.length();
                amplitudes
                    .iter()
                    .map(|a| (0..cells).map(|k| a * (kx * grid.center(k)).sin()).collect())
                    .collect()
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    pub grid: Grid1D,
    pub mixture: MixtureSpec,
    pub pressure: PressureSetting,
    pub alpha: AlphaMode,
    pub viscosity: ViscositySetting,
    pub forcing: Forcing,
}

#[derive(Debug, Clone)]
pub(crate) enum ViscosityClosure {
    Constant {
        matrices: ViscosityMatrices,
        /// Row-major `2M + Λ`.
        coeffs: Vec<f64>,
        sigma_max: f64,
    },
    Dependent(ViscosityModel),
}

/// Partial densities and momenta `ρ_i u_i` on the grid, indexed `[i][cell]`.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldState {
    pub time: f64,
    pub rho: Vec<Vec<f64>>,
    pub momentum: Vec<Vec<f64>>,
}

impl FieldState {
    pub fn n_constituents(&self) -> usize {
        self.rho.len()
    }

    pub fn n_cells(&self) -> usize {
        self.rho.first().map_or(0, Vec::len)
    }

    pub fn total_density(&self, cell: usize) -> f64 {
        self.rho.iter().map(|r| r[cell]).sum()
    }
}

/// Resolved physics of a run: grid, closure, weights, viscosity and forces.
#[derive(Debug, Clone)]
pub struct Solver {
    grid: Grid1D,
    mixture: MixtureSpec,
    closure: PressureClosure,
    alpha: AlphaMode,
    viscosity: ViscosityClosure,
    forcing: Forcing,
    forces: Vec<Vec<f64>>,
}

impl Solver {
    /// Validates the configuration against the cell-averaged initial data and
    /// returns the solver together with the initial state.
    pub fn init(config: SolverConfig, initial: &dyn InitialCondition) -> Result<(Self, FieldState)> {
        let SolverConfig {
            grid,
            mixture,
            pressure,
            alpha,
            viscosity,
            forcing,
        } = config;
        let n = mixture.n_constituents();
        check_len(n, initial.n_constituents())?;
        alpha.validate(n)?;

        let state = profile::cell_averages(&grid, initial);
        for k in 0..grid.n_cells() {
            let total = state.total_density(k);
            if !(total > 0.0 && total.is_finite()) {
                return Err(Error::NonPositiveDensity(total));
            }
        }

        let masses: Vec<f64> = state.rho.iter().map(|r| r.iter().sum()).collect();
        let total_mass: f64 = masses.iter().sum();
        let mean_xi: Vec<f64> = masses.iter().map(|m| m / total_mass).collect();

        let viscosity = match viscosity {
            ViscositySetting::Matrices(m) => {
                check_len(n, m.size())?;
                bulk_constraint_check(&m)?.into_result()?;
                ViscosityClosure::constant(m)
            }
            ViscositySetting::Frozen(model) => {
                check_len(n, model.size())?;
                let xi = ConcentrationVector::new(mean_xi.clone())
                    .or_else(|_| renormalised(&mean_xi))?;
                let m = model.matrices(&xi, Provenance::Constant)?;
                bulk_constraint_check(&m)?.into_result()?;
                ViscosityClosure::constant(m)
            }
            ViscositySetting::ConcentrationDependent(model) => {
                check_len(n, model.size())?;
                let mut xi = vec![0.0; n];
                for k in 0..grid.n_cells() {
                    let total = state.total_density(k);
                    for i in 0..n {
                        xi[i] = state.rho[i][k] / total;
                        if xi[i] < MIN_DEPENDENT_CONCENTRATION {
                            return Err(Error::ViscosityConstraint(format!(
                                "concentration-dependent viscosity needs every initial concentration \
                                 >= {MIN_DEPENDENT_CONCENTRATION:e}; constituent {} has {:e} in cell {k}; \
                                 use constant matrices instead",
                                i + 1,
                                xi[i]
                            )));
                        }
                    }
                    let m = ViscosityMatrices::new(
                        shear_from_slice(&model, &xi),
                        model.lambda().clone(),
                        Provenance::ConcentrationDependent,
                    )?;
                    bulk_constraint_check(&m)?
                        .into_result()
                        .map_err(|e| Error::ViscosityConstraint(format!("cell {k}: {e}")))?;
                }
                ViscosityClosure::Dependent(model)
            }
        };

        for (i, r) in state.rho.iter().enumerate() {
            for (k, &v) in r.iter().enumerate() {
                if !(v >= DENSITY_FLOOR) {
                    return Err(Error::FloorBreach {
                        constituent: i,
                        cell: k,
                        value: v,
                    });
                }
            }
        }

        let closure = match pressure {
            PressureSetting::Simple { k, gamma } => {
                let gamma = gamma.unwrap_or_else(|| gamma_of(&mean_xi, &mixture));
                if !(k >= 0.0 && k.is_finite()) || !(gamma > 1.0) {
                    return Err(invalid(format!("need K >= 0 and gamma > 1, got K={k}, gamma={gamma}")));
                }
                PressureClosure::Simple { k, gamma }
            }
            PressureSetting::Composite { k1, pointwise } => {
                if !(k1 >= 0.0 && k1.is_finite()) {
                    return Err(invalid(format!("K1 must be nonnegative, got {k1}")));
                }
                let mode = if pointwise {
                    GammaMode::Pointwise
                } else {
                    GammaMode::Frozen(gamma_of(&mean_xi, &mixture))
                };
                PressureClosure::Composite { k1, mode }
            }
        };

        let forces = forcing.sample(n, &grid)?;
        let solver = Self {
            grid,
            mixture,
            closure,
            alpha,
            viscosity,
            forcing,
            forces,
        };
        Ok((solver, state))
    }

    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    pub fn mixture(&self) -> &MixtureSpec {
        &self.mixture
    }

    pub fn closure(&self) -> PressureClosure {
        self.closure
    }

    pub fn alpha_mode(&self) -> &AlphaMode {
        &self.alpha
    }

    pub fn forcing(&self) -> &Forcing {
        &self.forcing
    }

    /// Body forces sampled at cell centres, `[i][cell]`.
    pub fn forces(&self) -> &[Vec<f64>] {
        &self.forces
    }

    pub fn n_constituents(&self) -> usize {
        self.mixture.n_constituents()
    }

    /// Constant viscosity matrices, if the run uses them.
    pub fn constant_viscosity(&self) -> Option<&ViscosityMatrices> {
        match &self.viscosity {
            ViscosityClosure::Constant { matrices, .. } => Some(matrices),
            ViscosityClosure::Dependent(_) => None,
        }
    }

    /// Advances `state` until `settings.t_end`, recording diagnostics after
    /// every step and snapshots at the requested interval.
    pub fn run(&self, initial: FieldState, settings: &RunSettings) -> Result<RunOutput> {
        settings.validate()?;
        let t_end = settings.t_end;
        let mut state = initial;
        let mut budget = crate::diagnostics::energy_budget(self, &state)?;
        let mut out = RunOutput {
            snapshots: vec![state.clone()],
            diagnostics: vec![DiagnosticsRow::new(state.time, crate::diagnostics::masses(self, &state), &budget, 0.0)],
            steps: 0,
            termination: Termination::Completed,
            final_state: state.clone(),
        };
        let snap_every = settings.snapshot_interval.filter(|s| *s > 0.0);
        let mut next_snapshot = snap_every.map(|s| state.time + s);
        let close = |a: f64, b: f64| (a - b).abs() <= 1e-12 * b.abs().max(1.0);

        while state.time < t_end && !close(state.time, t_end) {
            if settings.max_steps.is_some_and(|m| out.steps >= m) {
                break;
            }
            let mut dt = self.stable_dt(&state, settings.cfl)?;
            if let Some(max_dt) = settings.max_dt {
                dt = dt.min(max_dt);
            }
            let mut target = t_end;
            if let Some(ns) = next_snapshot {
                target = target.min(ns);
            }
            dt = dt.min(target - state.time);

            let next = match self.step(&state, dt) {
                Ok(mut s) => {
                    if close(s.time, target) {
                        s.time = target;
                    }
                    s
                }
                Err(e @ Error::FloorBreach { .. }) => {
                    out.termination = Termination::FloorBreach(e);
                    break;
                }
                Err(e) => return Err(e),
            };
            let next_budget = crate::diagnostics::energy_budget(self, &next)?;
            let residual = crate::diagnostics::residual_from_budgets(&budget, &next_budget, next.time - state.time);
            out.steps += 1;
            out.diagnostics.push(DiagnosticsRow::new(
                next.time,
                crate::diagnostics::masses(self, &next),
                &next_budget,
                residual,
            ));
            state = next;
            budget = next_budget;

            if let (Some(ns), Some(every)) = (next_snapshot, snap_every) {
                if close(state.time, ns) {
                    out.snapshots.push(state.clone());
                    next_snapshot = Some(ns + every);
                }
            }
        }
        if out.snapshots.last().map(|s| s.time) != Some(state.time) {
            out.snapshots.push(state.clone());
        }
        out.final_state = state;
        Ok(out)
    }
}

impl ViscosityClosure {
    fn constant(matrices: ViscosityMatrices) -> Self {
        let a = matrices.dissipation_matrix();
        let sigma_max = symmetric_eigenvalues(&a).last().copied().unwrap_or(0.0);
        let n = a.nrows();
        let coeffs = (0..n * n).map(|idx| a[(idx / n, idx % n)]).collect();
        ViscosityClosure::Constant {
            matrices,
            coeffs,
            sigma_max,
        }
    }
}

fn renormalised(xi: &[f64]) -> Result<ConcentrationVector> {
    let s: f64 = xi.iter().sum();
    ConcentrationVector::new(xi.iter().map(|x| x / s).collect())
}

/// Row-major `2M(ξ) + Λ` of a concentration-dependent model.
pub(crate) fn dependent_coeffs(model: &ViscosityModel, xi: &[f64], out: &mut [f64]) {
    let m: DMatrix<f64> = shear_from_slice(model, xi);
    let n = model.size();
    let lambda = model.lambda();
    for i in 0..n {
        for j in 0..n {
            out[i * n + j] = 2.0 * m[(i, j)] + lambda[(i, j)];
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunSettings {
    pub t_end: f64,
    pub cfl: f64,
    /// `None` records only the initial and final states.
    pub snapshot_interval: Option<f64>,
    /// Upper bound on the step, applied after the CFL bound.
    pub max_dt: Option<f64>,
    pub max_steps: Option<usize>,
}

impl RunSettings {
    pub fn new(t_end: f64, cfl: f64) -> Self {
        Self {
            t_end,
            cfl,
            snapshot_interval: None,
            max_dt: None,
            max_steps: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.t_end >= 0.0 && self.t_end.is_finite()) {
            return Err(invalid(format!("t_end must be nonnegative, got {}", self.t_end)));
        }
        if !(self.cfl > 0.0 && self.cfl <= 1.0) {
            return Err(invalid(format!("cfl must lie in (0, 1], got {}", self.cfl)));
        }
        if let Some(dt) = self.max_dt {
            if !(dt > 0.0) {
                return Err(invalid(format!("max dt must be positive, got {dt}")));
            }
        }
        Ok(())
    }
}

/// One row of the diagnostics stream.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagnosticsRow {
    pub time: f64,
    pub masses: Vec<f64>,
    pub energy: f64,
    pub dissipation: f64,
    pub power_input: f64,
    /// Zero on the initial row.
    pub energy_residual: f64,
}

impl DiagnosticsRow {
    fn new(time: f64, masses: Vec<f64>, budget: &crate::diagnostics::EnergyBudget, residual: f64) -> Self {
        Self {
            time,
            masses,
            energy: budget.total(),
            dissipation: budget.dissipation,
            power_input: budget.power_input,
            energy_residual: residual,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Termination {
    Completed,
    FloorBreach(Error),
}

#[derive(Debug, Clone)]
pub struct RunOutput {
    pub snapshots: Vec<FieldState>,
    pub diagnostics: Vec<DiagnosticsRow>,
    pub final_state: FieldState,
    pub steps: usize,
    pub termination: Termination,
}


/// Builds the solver and the cell-averaged initial state; see [`Solver::init`].
pub fn init_state(config: SolverConfig, initial: &dyn InitialCondition) -> Result<(Solver, FieldState)> {
    Solver::init(config, initial)
}
