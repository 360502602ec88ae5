//! Fixed-grid figure reproductions and the generic sweep table.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use spinsq_core::dynamics::{squeeze_propagator, SqueezeParam};
use spinsq_core::metrics::squeeze_report;
use spinsq_core::states::coherent_state;
use spinsq_core::sweep::{run_sweep, Evolution, RowStatus, SweepRow, SweepSpec};
use spinsq_core::twoatom::{analytic_s_theta0_pi, analytic_variances};
use spinsq_core::{CoherentParams, Error, SpinSpace};

use crate::error::Result;
use crate::table::{format_g10, Cell, Table};

/// η step of the two-atom figure.
pub const FIG1_STEP: f64 = PI / 512.0;
/// η step of the oscillation figure.
pub const FIG3_STEP: f64 = PI / 1024.0;
pub const FIG2_DEFAULT_ETA: f64 = PI / 20.0;
pub const FIG2_DEFAULT_J_MAX: u32 = 25;

/// k·step for k = 0..count.
pub fn uniform_grid(step: f64, count: usize) -> Vec<f64> {
    (0..count).map(|k| k as f64 * step).collect()
}

fn s_pair(row: &SweepRow) -> (f64, f64) {
    row.report
        .as_ref()
        .map_or((f64::NAN, f64::NAN), |r| (r.s_x, r.s_y))
}

/// Number of strict interior local minima, skipping non-finite samples.
pub fn count_local_minima(values: &[f64]) -> usize {
    values
        .windows(3)
        .filter(|w| w.iter().all(|v| v.is_finite()) && w[1] < w[0] && w[1] < w[2])
        .count()
}

/// j = 1, θ = 0, η ∈ [0, π/2) in steps of π/512, with the closed-form pair
/// alongside.
pub fn fig1(workers: Option<usize>) -> Result<Table> {
    let spec = SweepSpec {
        two_j: vec![2],
        theta: 0.0,
        phi: 0.0,
        evolution: Evolution::Squeeze {
            etas: uniform_grid(FIG1_STEP, 256),
        },
        workers,
    };
    let mut table = Table::new([
        "eta",
        "S_xprime",
        "S_yprime",
        "S_a_analytic",
        "S_b_analytic",
        "status",
    ]);
    for row in run_sweep(&spec)? {
        let (sx, sy) = s_pair(&row);
        let (sa, sb) = analytic_s_theta0_pi(row.param).unwrap_or((f64::NAN, f64::NAN));
        table.push(vec![
            Cell::Num(row.param),
            Cell::Num(sx),
            Cell::Num(sy),
            Cell::Num(sa),
            Cell::Num(sb),
            Cell::text(row.status.as_str()),
        ]);
    }
    Ok(table)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Fig2Options {
    pub eta: f64,
    pub j_max: u32,
    pub theta: f64,
    pub phi: f64,
}

impl Default for Fig2Options {
    fn default() -> Self {
        Self {
            eta: FIG2_DEFAULT_ETA,
            j_max: FIG2_DEFAULT_J_MAX,
            theta: FRAC_PI_2,
            phi: 0.0,
        }
    }
}

/// Fixed η, j = 1..j_max.
pub fn fig2(options: Fig2Options, workers: Option<usize>) -> Result<Table> {
    let spec = SweepSpec {
        two_j: (1..=options.j_max).map(|j| 2 * j).collect(),
        theta: options.theta,
        phi: options.phi,
        evolution: Evolution::Squeeze {
            etas: vec![options.eta],
        },
        workers,
    };
    let mut table = Table::new(["j", "S_xprime", "S_yprime", "S_min"]);
    for row in run_sweep(&spec)? {
        let (sx, sy) = s_pair(&row);
        table.push(vec![
            Cell::Num(row.j()),
            Cell::Num(sx),
            Cell::Num(sy),
            Cell::Num(sx.min(sy)),
        ]);
    }
    Ok(table)
}

/// Per-j S curves at θ = φ = 0 over η ∈ [0, π/2) (or [0, π) when
/// `extended`), plus a final `minima_count` row.
pub fn fig3(two_j: &[u32], extended: bool, workers: Option<usize>) -> Result<Table> {
    let count = if extended { 1024 } else { 512 };
    let etas = uniform_grid(FIG3_STEP, count);
    let spec = SweepSpec {
        two_j: two_j.to_vec(),
        theta: 0.0,
        phi: 0.0,
        evolution: Evolution::Squeeze { etas: etas.clone() },
        workers,
    };
    let rows = run_sweep(&spec)?;
    let mut columns = vec!["eta".to_string()];
    for &tj in two_j {
        let j = format_g10(f64::from(tj) / 2.0);
        columns.push(format!("S_xprime_j{j}"));
        columns.push(format!("S_yprime_j{j}"));
    }
    let mut table = Table::new(columns);
    let curves: Vec<(Vec<f64>, Vec<f64>)> = rows
        .chunks(count)
        .map(|chunk| chunk.iter().map(s_pair).unzip())
        .collect();
    for (k, eta) in etas.iter().enumerate() {
        let mut row = vec![Cell::Num(*eta)];
        for (sx, sy) in &curves {
            row.push(Cell::Num(sx[k]));
            row.push(Cell::Num(sy[k]));
        }
        table.push(row);
    }
    let mut summary = vec![Cell::text("minima_count")];
    for (sx, sy) in &curves {
        summary.push(Cell::Int(count_local_minima(sx) as i64));
        summary.push(Cell::Int(count_local_minima(sy) as i64));
    }
    table.push(summary);
    Ok(table)
}

/// Flattens sweep rows; `param` names the evolution column (`eta` or `t`).
pub fn sweep_table(rows: &[SweepRow], param: &str) -> Table {
    let mut table = Table::new([
        "j",
        "theta",
        "phi",
        param,
        "mean_spin_x",
        "mean_spin_y",
        "mean_spin_z",
        "mean_spin_norm",
        "var_xprime",
        "var_yprime",
        "S_xprime",
        "S_yprime",
        "S_min",
        "corr_xy",
        "corr_xz",
        "corr_yz",
        "status",
    ]);
    for row in rows {
        let mut cells = vec![
            Cell::Num(row.j()),
            Cell::Num(row.theta),
            Cell::Num(row.phi),
            Cell::Num(row.param),
        ];
        match &row.report {
            Some(r) => {
                let v = r.mean_spin.vector;
                cells.extend(
                    [
                        v[0],
                        v[1],
                        v[2],
                        r.mean_spin.magnitude,
                        r.var_x,
                        r.var_y,
                        r.s_x,
                        r.s_y,
                        r.s_min(),
                        r.corr_xy,
                        r.corr_xz,
                        r.corr_yz,
                    ]
                    .map(Cell::Num),
                );
            }
            None => cells.extend(std::iter::repeat_n(Cell::Num(f64::NAN), 12)),
        }
        cells.push(Cell::text(row.status.as_str()));
        table.push(cells);
    }
    table
}

pub fn all_degenerate(rows: &[SweepRow]) -> bool {
    rows.iter().all(|r| r.status == RowStatus::MeanSpinVanishes)
}

/// ξ ∈ {0, 0.2, …, 2.0}.
pub fn two_atom_xi_grid() -> Vec<f64> {
    (0..=10).map(|k| k as f64 / 5.0).collect()
}

/// 40 points from 0.01 to π/2 − 0.01 inclusive.
pub fn two_atom_eta_grid() -> Vec<f64> {
    let (a, b) = (0.01, FRAC_PI_2 - 0.01);
    (0..40).map(|k| a + (b - a) * k as f64 / 39.0).collect()
}

/// Closed-form and numerical two-atom variances side by side.
pub fn two_atom(xis: &[f64], etas: &[f64]) -> Result<Table> {
    let space = SpinSpace::new(2);
    let mut table = Table::new([
        "xi",
        "eta",
        "var_xprime_analytic",
        "var_yprime_analytic",
        "mean_spin_sq_analytic",
        "var_xprime",
        "var_yprime",
        "mean_spin_sq",
        "status",
    ]);
    for &xi in xis {
        let start = coherent_state(space, CoherentParams::from_real_xi(xi)?);
        for &eta in etas {
            let psi = start.evolved(&squeeze_propagator(
                space,
                SqueezeParam::new(Complex64::new(eta, 0.0))?,
            ))?;
            let numeric = match squeeze_report(&psi) {
                Ok(r) => Some((r.var_x, r.var_y, r.mean_spin.magnitude.powi(2))),
                Err(Error::MeanSpinVanishes { .. }) => None,
                Err(e) => return Err(e.into()),
            };
            let (analytic, status) = match analytic_variances(xi, eta) {
                Ok(a) => (Some((a.var_x, a.var_y, a.mean_spin_sq)), "ok"),
                Err(Error::PoleAtVanishingMeanSpin { .. }) => (None, "pole"),
                Err(e) => return Err(e.into()),
            };
            let status = if numeric.is_none() {
                "mean_spin_vanishes"
            } else {
                status
            };
            let split = |t: Option<(f64, f64, f64)>| {
                let (a, b, c) = t.unwrap_or((f64::NAN, f64::NAN, f64::NAN));
                [Cell::Num(a), Cell::Num(b), Cell::Num(c)]
            };
            let mut cells = vec![Cell::Num(xi), Cell::Num(eta)];
            cells.extend(split(analytic));
            cells.extend(split(numeric));
            cells.push(Cell::text(status));
            table.push(cells);
        }
    }
    Ok(table)
}
