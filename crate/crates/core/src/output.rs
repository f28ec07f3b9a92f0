//! CSV writers. Every float is printed with 17 significant digits so values
//! round-trip exactly.

use std::io::{self, Write};

use crate::adiabat::AdiabatResult;
use crate::counterexamples::{CaseKind, CounterexampleReport};
use crate::error::Result;
use crate::solver::{DiagnosticsRow, FieldState, Solver};

pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn write_row<W: Write>(out: &mut W, cells: impl IntoIterator<Item = String>) -> io::Result<()> {
    let line: Vec<String> = cells.into_iter().collect();
    writeln!(out, "{}", line.join(","))
}

fn indexed(prefix: &str, n: usize) -> impl Iterator<Item = String> + '_ {
    (1..=n).map(move |i| format!("{prefix}_{i}"))
}

/// Columns `x, rho_1..rho_N, u_1..u_N, xi_1..xi_N, p, gamma`.
pub fn write_snapshot<W: Write>(out: &mut W, solver: &Solver, state: &FieldState) -> Result<()> {
    let prim = solver.primitives(state)?;
    let n = solver.n_constituents();
    let grid = solver.grid();
    write_row(
        out,
        std::iter::once("x".to_string())
            .chain(indexed("rho", n))
            .chain(indexed("u", n))
            .chain(indexed("xi", n))
            .chain(["p".to_string(), "gamma".to_string()]),
    )?;
    for k in 0..grid.n_cells() {
        let mut row = vec![fmt_f64(grid.center(k))];
        row.extend(state.rho.iter().map(|r| fmt_f64(r[k])));
        row.extend(prim.velocity.iter().map(|u| fmt_f64(u[k])));
        row.extend(prim.concentration.iter().map(|x| fmt_f64(x[k])));
        row.push(fmt_f64(prim.pressure[k]));
        row.push(fmt_f64(prim.gamma[k]));
        write_row(out, row)?;
    }
    Ok(())
}

/// Columns `t, mass_1..mass_N, E, D, W, energy_residual`.
pub fn write_diagnostics<W: Write>(out: &mut W, n_constituents: usize, rows: &[DiagnosticsRow]) -> Result<()> {
    write_row(
        out,
        std::iter::once("t".to_string())
            .chain(indexed("mass", n_constituents))
            .chain(["E", "D", "W", "energy_residual"].map(String::from)),
    )?;
    for r in rows {
        let mut row = vec![fmt_f64(r.time)];
        row.extend(r.masses.iter().map(|m| fmt_f64(*m)));
        row.extend([r.energy, r.dissipation, r.power_input, r.energy_residual].map(fmt_f64));
        write_row(out, row)?;
    }
    Ok(())
}

/// Columns `V, rho, theta, p_1..p_N, p, p_simple, p_composite, heat_residual`;
/// the residual on row `k > 0` belongs to the interval ending at `V_k`.
pub fn write_adiabat<W: Write>(out: &mut W, result: &AdiabatResult) -> Result<()> {
    let n = result.samples.first().map_or(0, |s| s.partial_pressures.len());
    write_row(
        out,
        ["V", "rho", "theta"]
            .map(String::from)
            .into_iter()
            .chain(indexed("p", n))
            .chain(["p", "p_simple", "p_composite", "heat_residual"].map(String::from)),
    )?;
    for (k, s) in result.samples.iter().enumerate() {
        let residual = if k == 0 { 0.0 } else { result.heat_residuals[k - 1] };
        let mut row = vec![fmt_f64(s.volume), fmt_f64(s.density), fmt_f64(s.temperature)];
        row.extend(s.partial_pressures.iter().map(|p| fmt_f64(*p)));
        row.extend([s.pressure, s.pressure_simple, s.pressure_composite, residual].map(fmt_f64));
        write_row(out, row)?;
    }
    Ok(())
}

pub const COUNTEREXAMPLE_HEADER: &str = "case,M1,M2,gamma,ratio,epsilon,rho_1,rho_2,tilde_rho_1,tilde_rho_2,\
rho_1_1,rho_1_2,rho_2_1,rho_2_2,p_1,p_2,product_tilde,product_total,all_positive,verdict";

pub fn counterexample_row(report: &CounterexampleReport) -> String {
    let (case, ratio) = match report.kind {
        CaseKind::TildeRho => ("tilde", f64::NAN),
        CaseKind::TotalRho { ratio } => ("total", ratio),
    };
    let [a, b] = report.states;
    let nums = [
        report.m1,
        report.m2,
        report.gamma,
        ratio,
        report.epsilon,
        a.total_density,
        b.total_density,
        a.tilde_density,
        b.tilde_density,
        a.components[0],
        a.components[1],
        b.components[0],
        b.components[1],
        a.pressure,
        b.pressure,
        report.product_tilde,
        report.product_total,
    ];
    let mut cells = vec![case.to_string()];
    cells.extend(nums.iter().map(|x| fmt_f64(*x)));
    cells.push(report.all_positive.to_string());
    cells.push(report.verdict.as_str().to_string());
    cells.join(",")
}
