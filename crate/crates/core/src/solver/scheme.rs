use crate::error::{Error, Result};
use crate::mixture::{composite_pressure, gamma_of, molar_weighted_sum, AlphaMode, GammaMode};

use super::{dependent_coeffs, FieldState, PressureClosure, Solver, ViscosityClosure, DENSITY_FLOOR};

/// Cell-wise derived quantities of a state, indexed `[i][cell]` or `[cell]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Primitives {
    pub velocity: Vec<Vec<f64>>,
    pub concentration: Vec<Vec<f64>>,
    pub alpha: Vec<Vec<f64>>,
    pub average_velocity: Vec<f64>,
    pub total_density: Vec<f64>,
    pub pressure: Vec<f64>,
    pub gamma: Vec<f64>,
    /// Row-major `2M + Λ` per cell (`N²` entries each); empty for constant
    /// viscosity.
    pub(crate) dissipation_coeffs: Vec<f64>,
}

/// Time derivatives of `ρ_i` and `ρ_i u_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct Derivative {
    pub rho: Vec<Vec<f64>>,
    pub momentum: Vec<Vec<f64>>,
}

impl Solver {
    pub fn primitives(&self, state: &FieldState) -> Result<Primitives> {
        let n = self.n_constituents();
        let cells = self.grid.n_cells();
        let mut p = Primitives {
            velocity: vec![vec![0.0; cells]; n],
            concentration: vec![vec![0.0; cells]; n],
            alpha: vec![vec![0.0; cells]; n],
            average_velocity: vec![0.0; cells],
            total_density: vec![0.0; cells],
            pressure: vec![0.0; cells],
            gamma: vec![0.0; cells],
            dissipation_coeffs: Vec::new(),
        };
        let dependent = match &self.viscosity {
            ViscosityClosure::Dependent(model) => {
                p.dissipation_coeffs = vec![0.0; cells * n * n];
                Some(model)
            }
            ViscosityClosure::Constant { .. } => None,
        };
        let mut rho_cell = vec![0.0; n];
        let mut xi_cell = vec![0.0; n];
        for k in 0..cells {
            let mut total = 0.0;
            for i in 0..n {
                let r = state.rho[i][k];
                let m = state.momentum[i][k];
                if !(r >= DENSITY_FLOOR) {
                    return Err(Error::FloorBreach {
                        constituent: i,
                        cell: k,
                        value: r,
                    });
                }
                if !m.is_finite() {
                    return Err(Error::NonFinite("momentum"));
                }
                rho_cell[i] = r;
                total += r;
            }
            let mut v = 0.0;
            for i in 0..n {
                let xi = rho_cell[i] / total;
                let u = state.momentum[i][k] / rho_cell[i];
                let a = match &self.alpha {
                    AlphaMode::Concentration => xi,
                    AlphaMode::Constant(c) => c[i],
                };
                xi_cell[i] = xi;
                p.concentration[i][k] = xi;
                p.velocity[i][k] = u;
                p.alpha[i][k] = a;
                v += a * u;
            }
            let (pressure, gamma) = match self.closure {
                PressureClosure::Simple { k: kk, gamma } => (kk * total.powf(gamma), gamma),
                PressureClosure::Composite { k1, mode } => {
                    let gamma = match mode {
                        GammaMode::Frozen(g) => g,
                        GammaMode::Pointwise => gamma_of(&xi_cell, &self.mixture),
                    };
                    let tilde = molar_weighted_sum(&rho_cell, self.mixture.molar_masses());
                    (composite_pressure(k1, total, tilde, gamma), gamma)
                }
            };
            p.total_density[k] = total;
            p.average_velocity[k] = v;
            p.pressure[k] = pressure;
            p.gamma[k] = gamma;
            if let Some(model) = dependent {
                dependent_coeffs(model, &xi_cell, &mut p.dissipation_coeffs[k * n * n..(k + 1) * n * n]);
            }
        }
        Ok(p)
    }

    /// Entry `(i, j)` of `2M + Λ` in `cell`.
    pub(crate) fn coeff(&self, prim: &Primitives, cell: usize, i: usize, j: usize) -> f64 {
        let n = self.n_constituents();
        match &self.viscosity {
            ViscosityClosure::Constant { coeffs, .. } => coeffs[i * n + j],
            ViscosityClosure::Dependent(_) => prim.dissipation_coeffs[cell * n * n + i * n + j],
        }
    }

    pub fn rhs(&self, state: &FieldState) -> Result<Derivative> {
        let prim = self.primitives(state)?;
        Ok(self.rhs_from(state, &prim))
    }

    pub(crate) fn rhs_from(&self, state: &FieldState, prim: &Primitives) -> Derivative {
        let n = self.n_constituents();
        let cells = self.grid.n_cells();
        let dx = self.grid.dx();
        let right = |k: usize| if k + 1 == cells { 0 } else { k + 1 };
        let left = |k: usize| if k == 0 { cells - 1 } else { k - 1 };

        // Face k+1/2 sits between cells k and k+1.
        let face_v: Vec<f64> = (0..cells)
            .map(|k| 0.5 * (prim.average_velocity[k] + prim.average_velocity[right(k)]))
            .collect();

        let mut mass_flux = vec![vec![0.0; cells]; n];
        let mut mom_flux = vec![vec![0.0; cells]; n];
        for i in 0..n {
            for k in 0..cells {
                let vf = face_v[k];
                let donor = if vf >= 0.0 { k } else { right(k) };
                mass_flux[i][k] = vf * state.rho[i][donor];
                mom_flux[i][k] = vf * state.momentum[i][donor];
            }
        }

        // Σ_j A_ij,face (u_j,k+1 − u_j,k)/dx with A = 2M + Λ averaged to the face.
        let mut visc_flux = vec![vec![0.0; cells]; n];
        for k in 0..cells {
            let kr = right(k);
            for i in 0..n {
                let mut s = 0.0;
                for j in 0..n {
                    let a = 0.5 * (self.coeff(prim, k, i, j) + self.coeff(prim, kr, i, j));
                    s += a * (prim.velocity[j][kr] - prim.velocity[j][k]);
                }
                visc_flux[i][k] = s / dx;
            }
        }

        let mut d_rho = vec![vec![0.0; cells]; n];
        let mut d_mom = vec![vec![0.0; cells]; n];
        for k in 0..cells {
            let (kl, kr) = (left(k), right(k));
            let dpdx = (prim.pressure[kr] - prim.pressure[kl]) / (2.0 * dx);
            for i in 0..n {
                d_rho[i][k] = -(mass_flux[i][k] - mass_flux[i][kl]) / dx;
                d_mom[i][k] = -(mom_flux[i][k] - mom_flux[i][kl]) / dx - prim.alpha[i][k] * dpdx
                    + (visc_flux[i][k] - visc_flux[i][kl]) / dx
                    + state.rho[i][k] * self.forces[i][k];
            }
        }
        Derivative {
            rho: d_rho,
            momentum: d_mom,
        }
    }

    /// `cfl · min_k min(dx/(|v|+c), dx² ρ_min/(2σ_max))` with `c = √(γp/ρ)`;
    /// infinite when neither bound is active.
    pub fn stable_dt(&self, state: &FieldState, cfl: f64) -> Result<f64> {
        let prim = self.primitives(state)?;
        Ok(self.stable_dt_from(state, &prim, cfl))
    }

    pub(crate) fn stable_dt_from(&self, state: &FieldState, prim: &Primitives, cfl: f64) -> f64 {
        let n = self.n_constituents();
        let dx = self.grid.dx();
        let mut dt = f64::INFINITY;
        let mut a = nalgebra::DMatrix::zeros(n, n);
        for k in 0..self.grid.n_cells() {
            let c = (prim.gamma[k] * prim.pressure[k] / prim.total_density[k]).sqrt();
            let speed = prim.average_velocity[k].abs() + c;
            if speed > 0.0 {
                dt = dt.min(dx / speed);
            }
            let sigma = match &self.viscosity {
                ViscosityClosure::Constant { sigma_max, .. } => *sigma_max,
                ViscosityClosure::Dependent(_) => {
                    for i in 0..n {
                        for j in 0..n {
                            a[(i, j)] = self.coeff(prim, k, i, j);
                        }
                    }
                    crate::viscosity::symmetric_eigenvalues(&a).last().copied().unwrap_or(0.0)
                }
            };
            if sigma > 0.0 {
                let rho_min = (0..n).map(|i| state.rho[i][k]).fold(f64::INFINITY, f64::min);
                dt = dt.min(dx * dx * rho_min / (2.0 * sigma));
            }
        }
        cfl * dt
    }

    /// Two-stage SSP Runge–Kutta step.
    pub fn step(&self, state: &FieldState, dt: f64) -> Result<FieldState> {
        if !(dt >= 0.0 && dt.is_finite()) {
            return Err(crate::error::invalid(format!("time step must be finite and nonnegative, got {dt}")));
        }
        let d0 = self.rhs(state)?;
        let stage = axpy(state, &d0, dt, 1.0, None);
        let d1 = self.rhs(&stage)?;
        let mut next = axpy(&stage, &d1, dt, 0.5, Some(state));
        next.time = state.time + dt;
        for (i, r) in next.rho.iter().enumerate() {
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
        Ok(next)
    }
}

/// `w·(s + dt·d) + (1 − w)·base` (or `s + dt·d` without a base).
fn axpy(s: &FieldState, d: &Derivative, dt: f64, w: f64, base: Option<&FieldState>) -> FieldState {
    let combine = |x: &[Vec<f64>], dx: &[Vec<f64>], b: Option<&[Vec<f64>]>| -> Vec<Vec<f64>> {
        x.iter()
            .zip(dx)
            .enumerate()
            .map(|(i, (xi, di))| {
                xi.iter()
                    .zip(di)
                    .enumerate()
                    .map(|(k, (xv, dv))| {
                        let euler = xv + dt * dv;
                        match b {
                            Some(b) => (1.0 - w) * b[i][k] + w * euler,
                            None => euler,
                        }
                    })
                    .collect()
            })
            .collect()
    };
    FieldState {
        time: s.time,
        rho: combine(&s.rho, &d.rho, base.map(|b| b.rho.as_slice())),
        momentum: combine(&s.momentum, &d.momentum, base.map(|b| b.momentum.as_slice())),
    }
}
