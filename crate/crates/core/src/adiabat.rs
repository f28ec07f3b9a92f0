//! Isentropic compression/expansion of a material volume of ideal gases.
//!
//! The volume carries fixed masses `m_i = ρ_{0i} V_0`. With
//! `α = Σ m_iν_i/(2M_i)` and `β = Σ m_i/M_i` the temperature follows
//! `θ = C₁ V^{−β/α} = C₂ ρ^{β/α}` and the pressure is `p = Kρ^γ = K₁ρ^γ ξ̃`.

use crate::error::{invalid, Result};
use crate::mixture::{composite_pressure, MixtureSpec};

#[derive(Debug, Clone, PartialEq)]
pub struct AdiabatSample {
    pub volume: f64,
    pub density: f64,
    pub temperature: f64,
    /// `p_i = (ρ_i/M_i) R θ`
    pub partial_pressures: Vec<f64>,
    /// `Σ p_i`
    pub pressure: f64,
    /// `K ρ^γ`
    pub pressure_simple: f64,
    /// `K₁ ρ^{γ−1} ρ̃`
    pub pressure_composite: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AdiabatResult {
    pub alpha_sum: f64,
    pub beta_sum: f64,
    /// Exponent `γ = β/α + 1` of the reference composition.
    pub gamma: f64,
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub k_simple: f64,
    pub k1_composite: f64,
    /// `ξ̃`, constant along the adiabat.
    pub tilde_xi: f64,
    pub samples: Vec<AdiabatSample>,
    /// Midpoint residual `Σ ΔU_i + Σ p_i(V_mid) ΔV` for each interval of the
    /// volume grid; `heat_residuals[k]` belongs to `[V_k, V_{k+1}]`.
    pub heat_residuals: Vec<f64>,
}

impl AdiabatResult {
    pub fn max_heat_residual(&self) -> f64 {
        self.heat_residuals.iter().fold(0.0, |a, r| a.max(r.abs()))
    }

    /// Largest relative mismatch between `Σp_i`, `Kρ^γ` and `K₁ρ^{γ−1}ρ̃`.
    pub fn max_pressure_mismatch(&self) -> f64 {
        self.samples
            .iter()
            .map(|s| {
                let a = (s.pressure_simple - s.pressure_composite).abs() / s.pressure_composite;
                let b = (s.pressure - s.pressure_composite).abs() / s.pressure_composite;
                a.max(b)
            })
            .fold(0.0, f64::max)
    }
}

pub fn adiabat_process(spec: &MixtureSpec, volume_grid: &[f64]) -> Result<AdiabatResult> {
    if let Some(v) = volume_grid.iter().find(|v| !(**v > 0.0 && v.is_finite())) {
        return Err(invalid(format!("volumes must be positive, got {v}")));
    }
    let reference = spec.reference();
    let r_gas = spec.gas_constant();
    let v0 = reference.volume;
    let theta0 = reference.temperature;

    let masses: Vec<f64> = reference.densities.iter().map(|r| r * v0).collect();
    let dofs = spec.degrees_of_freedom();
    let mut alpha = 0.0;
    let mut beta = 0.0;
    for ((m, mm), nu) in masses.iter().zip(spec.molar_masses()).zip(&dofs) {
        alpha += m * nu / (2.0 * mm);
        beta += m / mm;
    }
    let exponent = beta / alpha;
    let gamma = exponent + 1.0;

    let rho0: f64 = reference.densities.iter().sum();
    let total_mass = rho0 * v0;
    let c1 = v0.powf(exponent) * theta0;
    let c2 = rho0.powf(-exponent) * theta0;
    let c3 = r_gas * c2;
    let tilde_rho0: f64 = reference
        .densities
        .iter()
        .zip(spec.molar_masses())
        .map(|(r, m)| r / m)
        .sum();
    let k_simple = r_gas * theta0 * rho0.powf(-gamma) * tilde_rho0;
    let k1 = c3;
    let tilde_xi = tilde_rho0 / rho0;

    let temperature = |v: f64| c1 * v.powf(-exponent);

    let samples = volume_grid
        .iter()
        .map(|&v| {
            let theta = temperature(v);
            let density = total_mass / v;
            let partial_pressures: Vec<f64> = masses
                .iter()
                .zip(spec.molar_masses())
                .map(|(m, mm)| (m / v) / mm * r_gas * theta)
                .collect();
            let tilde_rho: f64 = masses.iter().zip(spec.molar_masses()).map(|(m, mm)| m / v / mm).sum();
            AdiabatSample {
                volume: v,
                density,
                temperature: theta,
                pressure: partial_pressures.iter().sum(),
                partial_pressures,
                pressure_simple: k_simple * density.powf(gamma),
                pressure_composite: composite_pressure(k1, density, tilde_rho, gamma),
            }
        })
        .collect();

    // ΣU_i = Rαθ and Σp_i = Rβθ/V.
    let heat_residuals = volume_grid
        .windows(2)
        .map(|w| {
            let (va, vb) = (w[0], w[1]);
            let vm = 0.5 * (va + vb);
            let du = r_gas * alpha * (temperature(vb) - temperature(va));
            let work = r_gas * beta * temperature(vm) / vm * (vb - va);
            du + work
        })
        .collect();

    Ok(AdiabatResult {
        alpha_sum: alpha,
        beta_sum: beta,
        gamma,
        c1,
        c2,
        c3,
        k_simple,
        k1_composite: k1,
        tilde_xi,
        samples,
        heat_residuals,
    })
}

/// Uniform volume grid with `steps` intervals on `[v_min, v_max]`.
pub fn uniform_volume_grid(v_min: f64, v_max: f64, steps: usize) -> Vec<f64> {
    let h = (v_max - v_min) / steps as f64;
    (0..=steps).map(|k| v_min + h * k as f64).collect()
}
