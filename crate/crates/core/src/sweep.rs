//! Parameter sweeps over spin size and evolution parameter.
//!
//! Points are evaluated concurrently on a dedicated thread pool. Each point
//! only reads the shared per-j spectral data and writes its own output slot,
//! so the returned rows are identical for any worker count.

use rayon::prelude::*;
use serde::Serialize;

use crate::dynamics::{SpectralPropagator, MAX_ETA};
use crate::error::{Error, Result};
use crate::metrics::{squeeze_report, SqueezeReport};
use crate::spin::{build_hamiltonian, HamiltonianSpec, SpinSpace};
use crate::states::{coherent_state, CoherentParams};

/// What drives the state away from the coherent start.
#[derive(Clone, Debug, PartialEq)]
pub enum Evolution {
    /// Squeeze propagator U(η) for each real η.
    Squeeze { etas: Vec<f64> },
    /// exp(−iHt) for each time t.
    Hamiltonian { spec: HamiltonianSpec, times: Vec<f64> },
}

impl Evolution {
    pub fn grid(&self) -> &[f64] {
        match self {
            Evolution::Squeeze { etas } => etas,
            Evolution::Hamiltonian { times, .. } => times,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepSpec {
    /// Spin sizes as 2j, strictly increasing.
    pub two_j: Vec<u32>,
    pub theta: f64,
    pub phi: f64,
    pub evolution: Evolution,
    /// Worker threads; `None` lets the pool pick.
    pub workers: Option<usize>,
}

fn check_grid(name: &str, values: &[f64]) -> Result<()> {
    if values.is_empty() {
        return Err(Error::InvalidParameter(format!("{name} grid is empty")));
    }
    if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
        return Err(Error::InvalidParameter(format!("{name} grid contains {bad}")));
    }
    if values.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidParameter(format!(
            "{name} grid is not strictly increasing"
        )));
    }
    Ok(())
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.two_j.is_empty() {
            return Err(Error::InvalidParameter("no spin sizes given".into()));
        }
        if self.two_j.contains(&0) {
            return Err(Error::InvalidParameter("2j must be at least 1".into()));
        }
        if self.two_j.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidParameter(
                "2j list is not strictly increasing".into(),
            ));
        }
        CoherentParams::new(self.theta, self.phi)?;
        match &self.evolution {
            Evolution::Squeeze { etas } => {
                check_grid("eta", etas)?;
                if let Some(eta) = etas.iter().find(|e| e.abs() > MAX_ETA) {
                    return Err(Error::InvalidParameter(format!("|eta| = {eta} exceeds 10 pi")));
                }
            }
            Evolution::Hamiltonian { spec, times } => {
                check_grid("t", times)?;
                spec.validate()?;
                if !spec.is_hermitian() {
                    return Err(Error::InvalidParameter(
                        "sweeps need a Hermitian Hamiltonian".into(),
                    ));
                }
            }
        }
        if self.workers == Some(0) {
            return Err(Error::InvalidParameter("workers must be positive".into()));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.two_j.len() * self.evolution.grid().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RowStatus {
    Ok,
    MeanSpinVanishes,
}

impl RowStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            RowStatus::Ok => "ok",
            RowStatus::MeanSpinVanishes => "mean_spin_vanishes",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub two_j: u32,
    pub theta: f64,
    pub phi: f64,
    /// η for squeeze sweeps, t for Hamiltonian sweeps.
    pub param: f64,
    pub status: RowStatus,
    pub report: Option<SqueezeReport>,
}

impl SweepRow {
    pub fn j(&self) -> f64 {
        f64::from(self.two_j) / 2.0
    }
}

/// Evaluates every grid point; rows come back ordered by 2j, then by the
/// evolution parameter.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    spec.validate()?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = spec.workers {
        builder = builder.num_threads(n);
    }
    let pool = builder
        .build()
        .map_err(|e| Error::InvalidParameter(format!("cannot start worker pool: {e}")))?;
    pool.install(|| sweep_in_pool(spec))
}

fn sweep_in_pool(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    let params = CoherentParams::new(spec.theta, spec.phi)?;
    let propagators: Vec<(SpinSpace, SpectralPropagator)> = spec
        .two_j
        .par_iter()
        .map(|&two_j| {
            let space = SpinSpace::new(two_j);
            let prop = match &spec.evolution {
                Evolution::Squeeze { .. } => SpectralPropagator::squeeze(space)?,
                Evolution::Hamiltonian { spec: h, .. } => {
                    SpectralPropagator::new(space, &build_hamiltonian(space, h)?)?
                }
            };
            Ok((space, prop))
        })
        .collect::<Result<_>>()?;

    let grid = spec.evolution.grid();
    let points: Vec<(usize, f64)> = (0..propagators.len())
        .flat_map(|k| grid.iter().map(move |&p| (k, p)))
        .collect();

    points
        .par_iter()
        .map(|&(k, param)| {
            let (space, prop) = &propagators[k];
            let psi0 = coherent_state(*space, params);
            let psi = prop.evolve(param, &psi0)?;
            let (status, report) = match squeeze_report(&psi) {
                Ok(r) => (RowStatus::Ok, Some(r)),
                Err(Error::MeanSpinVanishes { .. }) => (RowStatus::MeanSpinVanishes, None),
                Err(e) => return Err(e),
            };
            Ok(SweepRow {
                two_j: space.two_j(),
                theta: params.theta(),
                phi: params.phi(),
                param,
                status,
                report,
            })
        })
        .collect()
}
