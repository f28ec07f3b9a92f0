//! Integral quantities of the energy balance on discrete states.
//!
//! On a periodic domain every flux divergence integrates to zero, so the
//! balance reduces to `dE/dt = −D + W` with
//!
//! - `E = Σ_i ∫ ρ_i u_i²/2 + ∫ p/(γ − 1)`,
//! - `D = ∫ Σ_ij (2μ_ij + λ_ij) ∂_x u_i ∂_x u_j`,
//! - `W = ∫ Σ_i ρ_i u_i f_i`.
//!
//! Integrals are cell sums times `dx`; gradients are centred differences.

use crate::error::{invalid, Error, Result};
use crate::solver::{FieldState, PressureClosure, Primitives, Solver};

/// Bounds slack for range-preservation checks.
pub const EXTREMUM_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyBudget {
    pub kinetic: f64,
    pub internal: f64,
    pub dissipation: f64,
    pub power_input: f64,
    pub residual: f64,
}

impl EnergyBudget {
    pub fn total(&self) -> f64 {
        self.kinetic + self.internal
    }
}

/// `∫ρ_i dx` per constituent.
pub fn masses(solver: &Solver, state: &FieldState) -> Vec<f64> {
    let dx = solver.grid().dx();
    state.rho.iter().map(|r| r.iter().sum::<f64>() * dx).collect()
}

pub fn energy(solver: &Solver, state: &FieldState) -> Result<f64> {
    Ok(energy_budget(solver, state)?.total())
}

pub fn dissipation(solver: &Solver, state: &FieldState) -> Result<f64> {
    let prim = solver.primitives(state)?;
    Ok(dissipation_from(solver, &prim))
}

pub fn power_input(solver: &Solver, state: &FieldState) -> f64 {
    let dx = solver.grid().dx();
    let mut w = 0.0;
    for (m, f) in state.momentum.iter().zip(solver.forces()) {
        for (mk, fk) in m.iter().zip(f) {
            w += mk * fk;
        }
    }
    w * dx
}

/// Kinetic, internal, dissipation and power terms of one state; `residual` is 0.
pub fn energy_budget(solver: &Solver, state: &FieldState) -> Result<EnergyBudget> {
    let prim = solver.primitives(state)?;
    let dx = solver.grid().dx();
    let mut kinetic = 0.0;
    for (m, u) in state.momentum.iter().zip(&prim.velocity) {
        for (mk, uk) in m.iter().zip(u) {
            kinetic += 0.5 * mk * uk;
        }
    }
    let mut internal = 0.0;
    for (p, g) in prim.pressure.iter().zip(&prim.gamma) {
        if !(*g > 1.0) {
            return Err(invalid(format!("internal energy needs gamma > 1, got {g}")));
        }
        internal += p / (g - 1.0);
    }
    Ok(EnergyBudget {
        kinetic: kinetic * dx,
        internal: internal * dx,
        dissipation: dissipation_from(solver, &prim),
        power_input: power_input(solver, state),
        residual: 0.0,
    })
}

pub(crate) fn dissipation_from(solver: &Solver, prim: &Primitives) -> f64 {
    let grid = solver.grid();
    let cells = grid.n_cells();
    let dx = grid.dx();
    let n = solver.n_constituents();
    let mut grad = vec![0.0; n];
    let mut d = 0.0;
    for k in 0..cells {
        let kr = if k + 1 == cells { 0 } else { k + 1 };
        let kl = if k == 0 { cells - 1 } else { k - 1 };
        for (g, u) in grad.iter_mut().zip(&prim.velocity) {
            *g = (u[kr] - u[kl]) / (2.0 * dx);
        }
        for i in 0..n {
            for j in 0..n {
                d += solver.coeff(prim, k, i, j) * grad[i] * grad[j];
            }
        }
    }
    d * dx
}

/// `(E¹ − E⁰)/dt + (D⁰ + D¹)/2 − (W⁰ + W¹)/2`
pub fn residual_from_budgets(before: &EnergyBudget, after: &EnergyBudget, dt: f64) -> f64 {
    (after.total() - before.total()) / dt + 0.5 * (before.dissipation + after.dissipation)
        - 0.5 * (before.power_input + after.power_input)
}

/// Discrete energy-balance residual between consecutive snapshots.
pub fn energy_residual(solver: &Solver, before: &FieldState, after: &FieldState) -> Result<f64> {
    let cells = solver.grid().n_cells();
    for s in [before, after] {
        if s.n_cells() != cells || s.n_constituents() != solver.n_constituents() {
            return Err(Error::DimensionMismatch {
                expected: cells,
                found: s.n_cells(),
            });
        }
    }
    let dt = after.time - before.time;
    if !(dt > 0.0) {
        return Err(invalid(format!("snapshots must be consecutive in time, got dt = {dt}")));
    }
    let a = energy_budget(solver, before)?;
    let b = energy_budget(solver, after)?;
    Ok(residual_from_budgets(&a, &b, dt))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtremumVerdict {
    pub passed: bool,
    pub min: f64,
    pub max: f64,
    /// Largest excursion outside `[lo, hi]`, zero when inside.
    pub worst_excess: f64,
}

/// Checks `lo − 1e-10 ≤ field ≤ hi + 1e-10` everywhere.
pub fn extremum_check(field: &[f64], bounds: (f64, f64)) -> ExtremumVerdict {
    let (lo, hi) = bounds;
    let min = field.iter().copied().fold(f64::INFINITY, f64::min);
    let max = field.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let worst_excess = (lo - min).max(max - hi).max(0.0);
    ExtremumVerdict {
        passed: min >= lo - EXTREMUM_TOL && max <= hi + EXTREMUM_TOL,
        min,
        max,
        worst_excess,
    }
}

/// Range of a field, for seeding [`extremum_check`].
pub fn field_bounds(field: &[f64]) -> (f64, f64) {
    (
        field.iter().copied().fold(f64::INFINITY, f64::min),
        field.iter().copied().fold(f64::NEG_INFINITY, f64::max),
    )
}

/// `∫ |∂_t e + ∂_x(v e) + p ∂_x v| dx` with `e = p/(γ − 1)`, for the simple
/// law with spatially constant `K` and `γ`. `∂_t e` follows from the
/// continuity right-hand side by the chain rule.
pub fn pressure_transport_residual(solver: &Solver, state: &FieldState) -> Result<f64> {
    let PressureClosure::Simple { k: kk, gamma } = solver.closure() else {
        return Err(invalid("pressure transport check needs the simple law with constant K and gamma"));
    };
    let prim = solver.primitives(state)?;
    let d = solver.rhs_from(state, &prim);
    let grid = solver.grid();
    let cells = grid.n_cells();
    let dx = grid.dx();
    let e: Vec<f64> = prim.pressure.iter().map(|p| p / (gamma - 1.0)).collect();
    let mut total = 0.0;
    for k in 0..cells {
        let kr = if k + 1 == cells { 0 } else { k + 1 };
        let kl = if k == 0 { cells - 1 } else { k - 1 };
        let drho: f64 = d.rho.iter().map(|r| r[k]).sum();
        let rho = prim.total_density[k];
        let de_dt = kk * gamma * rho.powf(gamma - 1.0) / (gamma - 1.0) * drho;
        let v = &prim.average_velocity;
        let flux = (v[kr] * e[kr] - v[kl] * e[kl]) / (2.0 * dx);
        let work = prim.pressure[k] * (v[kr] - v[kl]) / (2.0 * dx);
        total += (de_dt + flux + work).abs();
    }
    Ok(total * dx)
}
