//! Numerical laboratory for barotropic viscous compressible multi-fluids.
//!
//! The crate is organised bottom-up:
//!
//! - [`mixture`]: concentrations, the mixture adiabatic index, both pressure
//!   laws, the `α_i` coefficients and the two-constituent density reconstruction.
//! - [`adiabat`]: the isentropic material-volume process that produces the
//!   pressure constants `K` and `K₁`.
//! - [`viscosity`]: shear and second-viscosity matrices with positivity checks.
//! - [`counterexamples`]: explicit states on which the composite pressure law
//!   fails to be monotone, pointwise and in integral form.
//! - [`solver`]: a 1-D periodic finite-volume solver for the N-constituent
//!   continuity/momentum system.
//! - [`diagnostics`]: masses, energy budget and the discrete energy residual.
//! - [`output`]: CSV writers for snapshots, diagnostics and adiabat tables.

// `!(x > 0.0)` style guards are used on purpose: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]
// reference values in tests keep every digit of the high-precision oracle
#![cfg_attr(test, allow(clippy::excessive_precision))]

pub mod adiabat;
pub mod counterexamples;
pub mod diagnostics;
pub mod error;
pub mod mixture;
pub mod output;
pub mod solver;
pub mod viscosity;

pub use nalgebra;

pub use adiabat::{adiabat_process, AdiabatResult, AdiabatSample};
pub use counterexamples::{
    case_tilde_rho, case_total_rho, integral_counterexample, weight_search, CaseKind,
    CounterexampleReport, IntegralCounterexample, SearchOutcome, SearchRanges, Verdict,
    WeightChoice,
};
pub use diagnostics::{EnergyBudget, ExtremumVerdict};
pub use error::{Error, Result};
pub use mixture::{
    adiabatic_index, alpha_coeffs, average_velocity, concentrations, pressure_composite,
    pressure_simple, reconstruct_densities, tilde_quantities, AlphaMode, ConcentrationVector,
    DensityVector, GammaMode, MixtureSpec, ReferenceState,
};
pub use solver::{
    Forcing, Grid1D, InitialCondition, PressureSetting, Profile, RunOutput, RunSettings, Shape,
    Solver, SolverConfig, FieldState, Termination, ViscositySetting,
};
pub use viscosity::{
    bulk_constraint_check, offdiag_general, shear_matrix, stress_1d, ConstraintVerdict,
    OffDiagonal, OffDiagonalRule, Provenance, ViscosityMatrices, ViscosityModel,
};
