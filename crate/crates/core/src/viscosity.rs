//! Shear (`M`) and second (`Λ`) viscosity matrices.
//!
//! Off-diagonal shear entries follow
//! `μ_ij = μ⁰_ij ξ_iξ_j exp((α_ijξ_i + β_ijξ_j)/(ξ_i + ξ_j))` with
//! `μ⁰_ij = √(μ̂_iμ̂_j)`; the diagonal is completed as
//! `μ_ii = μ̂_iξ_i² + Σ_{j≠i} μ_ij`. With zero empiric constants this
//! collapses to `μ_ij = ν̂_iν̂_j + ν̂_i(ν̂ − ν̂_i)δ_ij`, `ν̂_i = √μ̂_i ξ_i`.
//!
//! Positivity is judged on symmetric parts: `M` must be positive definite and
//! `H = Λ + (2/3)M` positive semi-definite.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::error::{invalid, Error, Result};
use crate::mixture::{check_len, ConcentrationVector};

/// Lowest admissible eigenvalue of `sym(H)`.
pub const SEMIDEFINITE_TOL: f64 = -1e-12;

/// `sym(M)` counts as positive definite when its smallest eigenvalue exceeds
/// this fraction of its largest.
const DEFINITE_REL_TOL: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Constant,
    ConcentrationDependent,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ViscosityMatrices {
    pub shear: DMatrix<f64>,
    pub second: DMatrix<f64>,
    /// `H = Λ + (2/3)M`
    pub bulk_combination: DMatrix<f64>,
    pub provenance: Provenance,
}

impl ViscosityMatrices {
    pub fn new(shear: DMatrix<f64>, second: DMatrix<f64>, provenance: Provenance) -> Result<Self> {
        check_square(&shear, "shear")?;
        check_square(&second, "second")?;
        check_len(shear.nrows(), second.nrows())?;
        let bulk_combination = &second + &shear * (2.0 / 3.0);
        Ok(Self {
            shear,
            second,
            bulk_combination,
            provenance,
        })
    }

    pub fn size(&self) -> usize {
        self.shear.nrows()
    }

    /// `2M + Λ`, the coefficient matrix of the 1-D stress.
    pub fn dissipation_matrix(&self) -> DMatrix<f64> {
        &self.shear * 2.0 + &self.second
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum OffDiagonalRule {
    /// `μ_ij = √(μ̂_iμ̂_j) ξ_iξ_j`
    Simple,
    /// Geometric-mean prefactor with the exponential concentration factor.
    Exponential {
        alpha: DMatrix<f64>,
        beta: DMatrix<f64>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ViscosityModel {
    pure_viscosities: Vec<f64>,
    rule: OffDiagonalRule,
    /// Constant second-viscosity matrix; zero unless supplied.
    lambda: DMatrix<f64>,
}

impl ViscosityModel {
    pub fn new(pure_viscosities: Vec<f64>, rule: OffDiagonalRule, lambda: Option<DMatrix<f64>>) -> Result<Self> {
        let n = pure_viscosities.len();
        if n == 0 {
            return Err(invalid("no pure viscosities given"));
        }
        if let Some(m) = pure_viscosities.iter().find(|m| !(**m >= 0.0 && m.is_finite())) {
            return Err(invalid(format!("pure viscosities must be nonnegative, got {m}")));
        }
        if let OffDiagonalRule::Exponential { alpha, beta } = &rule {
            for (name, m) in [("alpha_ij", alpha), ("beta_ij", beta)] {
                check_square(m, name)?;
                check_len(n, m.nrows())?;
                if m.iter().any(|x| !x.is_finite()) {
                    return Err(invalid(format!("{name} has non-finite entries")));
                }
            }
        }
        let lambda = lambda.unwrap_or_else(|| DMatrix::zeros(n, n));
        check_square(&lambda, "lambda")?;
        check_len(n, lambda.nrows())?;
        Ok(Self {
            pure_viscosities,
            rule,
            lambda,
        })
    }

    pub fn simple(pure_viscosities: Vec<f64>) -> Result<Self> {
        Self::new(pure_viscosities, OffDiagonalRule::Simple, None)
    }

    pub fn size(&self) -> usize {
        self.pure_viscosities.len()
    }

    pub fn pure_viscosities(&self) -> &[f64] {
        &self.pure_viscosities
    }

    pub fn rule(&self) -> &OffDiagonalRule {
        &self.rule
    }

    pub fn lambda(&self) -> &DMatrix<f64> {
        &self.lambda
    }

    /// Evaluates `M(ξ)` and pairs it with the model's `Λ`.
    pub fn matrices(&self, xi: &ConcentrationVector, provenance: Provenance) -> Result<ViscosityMatrices> {
        let shear = shear_matrix(self, xi)?;
        ViscosityMatrices::new(shear, self.lambda.clone(), provenance)
    }
}

/// Builds `M(ξ)`. The simple rule uses the closed `ν̂` form; the exponential
/// rule assembles off-diagonals with [`offdiag_general`] and completes the
/// diagonal.
pub fn shear_matrix(model: &ViscosityModel, xi: &ConcentrationVector) -> Result<DMatrix<f64>> {
    check_len(model.size(), xi.len())?;
    Ok(shear_from_slice(model, xi.as_slice()))
}

pub(crate) fn shear_from_slice(model: &ViscosityModel, xi: &[f64]) -> DMatrix<f64> {
    let n = model.size();
    match &model.rule {
        OffDiagonalRule::Simple => {
            let nu: Vec<f64> = model
                .pure_viscosities
                .iter()
                .zip(xi)
                .map(|(m, x)| m.sqrt() * x)
                .collect();
            let total: f64 = nu.iter().sum();
            DMatrix::from_fn(n, n, |i, j| {
                let mut v = nu[i] * nu[j];
                if i == j {
                    v += nu[i] * (total - nu[i]);
                }
                v
            })
        }
        OffDiagonalRule::Exponential { .. } => {
            let mut m = DMatrix::from_fn(n, n, |i, j| {
                if i == j {
                    0.0
                } else {
                    offdiag_value(model, i, j, xi).value
                }
            });
            for i in 0..n {
                let off: f64 = (0..n).filter(|&j| j != i).map(|j| m[(i, j)]).sum();
                m[(i, i)] = model.pure_viscosities[i] * xi[i] * xi[i] + off;
            }
            m
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OffDiagonal {
    pub value: f64,
    /// Set when `ξ_i + ξ_j = 0`; the value is then the limit 0.
    pub degenerate: bool,
}

/// General off-diagonal entry `μ_ij`, `i ≠ j`.
pub fn offdiag_general(model: &ViscosityModel, i: usize, j: usize, xi: &ConcentrationVector) -> Result<OffDiagonal> {
    check_len(model.size(), xi.len())?;
    let n = model.size();
    if i >= n || j >= n {
        return Err(invalid(format!("index out of range for {n} constituents")));
    }
    if i == j {
        return Err(invalid("off-diagonal entry requested on the diagonal"));
    }
    Ok(offdiag_value(model, i, j, xi.as_slice()))
}

fn offdiag_value(model: &ViscosityModel, i: usize, j: usize, xi: &[f64]) -> OffDiagonal {
    let (xi_i, xi_j) = (xi[i], xi[j]);
    let s = xi_i + xi_j;
    if s == 0.0 {
        return OffDiagonal {
            value: 0.0,
            degenerate: true,
        };
    }
    let mu0 = (model.pure_viscosities[i] * model.pure_viscosities[j]).sqrt();
    let factor = match &model.rule {
        OffDiagonalRule::Simple => 1.0,
        OffDiagonalRule::Exponential { alpha, beta } => {
            ((alpha[(i, j)] * xi_i + beta[(i, j)] * xi_j) / s).exp()
        }
    };
    OffDiagonal {
        value: mu0 * xi_i * xi_j * factor,
        degenerate: false,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstraintVerdict {
    /// Smallest eigenvalue of `sym(M)`.
    pub min_eig_shear: f64,
    /// Smallest eigenvalue of `sym(H)`.
    pub min_eig_bulk: f64,
    pub shear_positive: bool,
    pub bulk_nonnegative: bool,
}

impl ConstraintVerdict {
    pub fn passed(&self) -> bool {
        self.shear_positive && self.bulk_nonnegative
    }

    pub fn into_result(self) -> Result<Self> {
        if self.passed() {
            Ok(self)
        } else {
            Err(Error::ViscosityConstraint(self.describe()))
        }
    }

    pub fn describe(&self) -> String {
        let mut parts = Vec::new();
        if !self.shear_positive {
            parts.push(format!("M not positive definite (min eigenvalue {:e})", self.min_eig_shear));
        }
        if !self.bulk_nonnegative {
            parts.push(format!(
                "H = Λ + (2/3)M not positive semi-definite (min eigenvalue {:e})",
                self.min_eig_bulk
            ));
        }
        if parts.is_empty() {
            "pass".into()
        } else {
            parts.join("; ")
        }
    }
}

pub fn bulk_constraint_check(matrices: &ViscosityMatrices) -> Result<ConstraintVerdict> {
    check_square(&matrices.shear, "shear")?;
    check_square(&matrices.second, "second")?;
    check_len(matrices.shear.nrows(), matrices.second.nrows())?;
    let h = &matrices.second + &matrices.shear * (2.0 / 3.0);
    let shear_eigs = symmetric_eigenvalues(&matrices.shear);
    let bulk_eigs = symmetric_eigenvalues(&h);
    let min_shear = shear_eigs.iter().copied().fold(f64::INFINITY, f64::min);
    let max_shear = shear_eigs.iter().fold(0.0f64, |a, e| a.max(e.abs()));
    let min_bulk = bulk_eigs.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(ConstraintVerdict {
        min_eig_shear: min_shear,
        min_eig_bulk: min_bulk,
        shear_positive: min_shear > 0.0 && min_shear > DEFINITE_REL_TOL * max_shear,
        bulk_nonnegative: min_bulk >= SEMIDEFINITE_TOL,
    })
}

/// Eigenvalues of `(A + Aᵀ)/2`, ascending.
pub fn symmetric_eigenvalues(a: &DMatrix<f64>) -> Vec<f64> {
    let sym = (a + a.transpose()) * 0.5;
    let mut eigs: Vec<f64> = SymmetricEigen::new(sym).eigenvalues.iter().copied().collect();
    eigs.sort_by(f64::total_cmp);
    eigs
}

/// One-dimensional stresses `S_i = Σ_j (2μ_ij + λ_ij) ∂_x u_j`.
pub fn stress_1d(matrices: &ViscosityMatrices, dudx: &[f64]) -> Result<Vec<f64>> {
    check_len(matrices.size(), dudx.len())?;
    let g = DVector::from_column_slice(dudx);
    Ok((matrices.dissipation_matrix() * g).iter().copied().collect())
}

fn check_square(m: &DMatrix<f64>, name: &str) -> Result<()> {
    if m.nrows() != m.ncols() {
        return Err(invalid(format!(
            "{name} matrix is {}x{}, expected square",
            m.nrows(),
            m.ncols()
        )));
    }
    Ok(())
}
