//! Oracle suites run by `spinsq selfcheck`.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spinsq_core::dynamics::{evolve_eigen, squeeze_operator, SqueezeConvention, SqueezeParam};
use spinsq_core::linalg::expm_antihermitian;
use spinsq_core::metrics::squeeze_report;
use spinsq_core::spin::{build_hamiltonian, lambda_similarity_check, HamiltonianSpec};
use spinsq_core::states::coherent_state;
use spinsq_core::twoatom::{analytic_coefficients, analytic_variances};
use spinsq_core::{CoherentParams, ComplexMatrix, SpinSpace, StateVector};

use crate::presets::{two_atom_eta_grid, two_atom_xi_grid};

const SEED: u64 = 0x5eed_2024;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SelfCheckOptions {
    pub convention: SqueezeConvention,
    /// Largest j exercised.
    pub max_j: u32,
}

impl Default for SelfCheckOptions {
    fn default() -> Self {
        Self {
            convention: SqueezeConvention::Ladder,
            max_j: 25,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteOutcome {
    pub name: &'static str,
    pub passed: bool,
    /// Worst deviation seen, relative to the suite's tolerance unit.
    pub max_deviation: f64,
    pub tolerance: f64,
    pub detail: String,
    pub seconds: f64,
}

impl fmt::Display for SuiteOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {:<22} max_dev={:.3e} tol={:.1e} ({:.3}s) {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.max_deviation,
            self.tolerance,
            self.seconds,
            self.detail
        )
    }
}

/// Tracks the worst deviation; a non-finite value or an error marks failure.
struct Tally {
    worst: f64,
    broken: Option<String>,
}

impl Tally {
    fn new() -> Self {
        Self {
            worst: 0.0,
            broken: None,
        }
    }

    fn see(&mut self, dev: f64) {
        if dev.is_nan() {
            self.worst = f64::INFINITY;
        } else {
            self.worst = self.worst.max(dev);
        }
    }

    fn fail(&mut self, why: impl Into<String>) {
        if self.broken.is_none() {
            self.broken = Some(why.into());
        }
    }

    fn finish(self, name: &'static str, tolerance: f64, detail: String, start: Instant) -> SuiteOutcome {
        let passed = self.broken.is_none() && self.worst <= tolerance;
        SuiteOutcome {
            name,
            passed,
            max_deviation: self.worst,
            tolerance,
            detail: self.broken.unwrap_or(detail),
            seconds: start.elapsed().as_secs_f64(),
        }
    }
}

fn squeezed(
    space: SpinSpace,
    start: &StateVector,
    eta: Complex64,
    convention: SqueezeConvention,
) -> Result<StateVector, String> {
    let param = SqueezeParam::new(eta).map_err(|e| e.to_string())?;
    let amps = squeeze_operator(space, param, convention)
        .apply(start.amplitudes())
        .map_err(|e| e.to_string())?;
    StateVector::new(space, amps).map_err(|e| format!("eta = {eta}: {e}"))
}

/// j = 1 amplitudes against the closed-form coefficients for 50 random
/// (ξ, complex η).
pub fn convention_lock(convention: SqueezeConvention) -> SuiteOutcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let space = SpinSpace::new(2);
    let mut tally = Tally::new();
    for _ in 0..50 {
        let xi: f64 = rng.gen_range(0.0..=2.0);
        let eta = Complex64::from_polar(rng.gen_range(0.0..=FRAC_PI_2), rng.gen_range(0.0..2.0 * PI));
        let psi0 = coherent_state(space, CoherentParams::from_real_xi(xi).expect("xi >= 0"));
        let param = SqueezeParam::new(eta).expect("|eta| <= pi/2");
        let amps = squeeze_operator(space, param, convention)
            .apply(psi0.amplitudes())
            .expect("dims match");
        let c = analytic_coefficients(Complex64::new(xi, 0.0), eta);
        for (z, e) in amps.iter().zip(c.as_array()) {
            tally.see((z - e).norm());
        }
    }
    tally.finish(
        "convention-lock",
        1e-10,
        "50 random (xi, eta) at j=1".into(),
        start,
    )
}

/// Numerical variances against the closed forms over the ξ × η grid.
pub fn closed_form_agreement(convention: SqueezeConvention) -> SuiteOutcome {
    let start = Instant::now();
    let space = SpinSpace::new(2);
    let mut tally = Tally::new();
    let mut points = 0;
    for xi in two_atom_xi_grid() {
        let psi0 = coherent_state(space, CoherentParams::from_real_xi(xi).expect("xi >= 0"));
        for eta in two_atom_eta_grid() {
            if (4.0 * eta).cos().abs() < 0.05 {
                continue;
            }
            points += 1;
            let report = squeezed(space, &psi0, Complex64::new(eta, 0.0), convention)
                .and_then(|psi| squeeze_report(&psi).map_err(|e| e.to_string()));
            let analytic = analytic_variances(xi, eta);
            match (report, analytic) {
                (Ok(r), Ok(a)) => {
                    tally.see((r.var_x - a.var_x).abs());
                    tally.see((r.var_y - a.var_y).abs());
                    tally.see((r.mean_spin.magnitude.powi(2) - a.mean_spin_sq).abs());
                }
                (Err(e), _) => tally.fail(format!("xi = {xi}, eta = {eta}: {e}")),
                (_, Err(e)) => tally.fail(format!("xi = {xi}, eta = {eta}: {e}")),
            }
        }
    }
    tally.finish("closed-form", 1e-9, format!("{points} grid points"), start)
}

/// Similarity identities of Λ for j ∈ {1, 5/2, 5} and ε ∈ {0.1, 0.5, 1}.
/// The metric identity is held to 1e−10·e^{2|ε|}; the reported deviation
/// is normalized by that scale.
pub fn lambda_identities(max_j: u32) -> SuiteOutcome {
    let start = Instant::now();
    let mut tally = Tally::new();
    let mut cases = 0;
    for two_j in [2u32, 5, 10].into_iter().filter(|&t| t <= 2 * max_j) {
        for eps in [0.1, 0.5, 1.0] {
            cases += 1;
            match lambda_similarity_check(SpinSpace::new(two_j), eps) {
                Ok(r) => {
                    tally.see(r.max_dev_similarity / 1e-11);
                    tally.see(r.max_dev_metric / (1e-10 * (2.0 * eps).exp()));
                }
                Err(e) => tally.fail(e.to_string()),
            }
        }
    }
    tally.finish(
        "lambda-identities",
        1.0,
        format!("{cases} cases, deviations in units of tolerance"),
        start,
    )
}

/// Eigen-path against expm-path evolution for 20 random quadratic
/// Hamiltonians with j ≤ 10.
pub fn eigen_expm_equivalence(max_j: u32) -> SuiteOutcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0xe16e);
    let mut tally = Tally::new();
    let top = (2 * max_j).clamp(1, 20);
    for _ in 0..20 {
        let two_j = rng.gen_range(1..=top);
        let space = SpinSpace::new(two_j);
        let mut c = [[0.0; 3]; 3];
        for (k, l) in [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)] {
            let v = rng.gen_range(-1.0..1.0);
            c[k][l] = v;
            c[l][k] = v;
        }
        let h = build_hamiltonian(space, &HamiltonianSpec::Quadratic { coefficients: c }).expect("symmetric");
        let t = rng.gen_range(0.0..2.0);
        let params =
            CoherentParams::new(rng.gen_range(0.0..PI), rng.gen_range(0.0..2.0 * PI)).expect("in range");
        let psi0 = coherent_state(space, params);
        let by_eigen = match evolve_eigen(&h, t, &psi0) {
            Ok(r) => r.state,
            Err(e) => {
                tally.fail(e.to_string());
                continue;
            }
        };
        let by_expm = expm_antihermitian(&h.scale(Complex64::new(0.0, -t))).and_then(|u| psi0.evolved(&u));
        match by_expm {
            Ok(psi) => {
                let dev = psi
                    .amplitudes()
                    .iter()
                    .zip(by_eigen.amplitudes())
                    .map(|(a, b)| (a - b).norm())
                    .fold(0.0, f64::max);
                tally.see(dev);
            }
            Err(e) => tally.fail(e.to_string()),
        }
    }
    tally.finish(
        "eigen-expm",
        1e-9,
        format!("20 random Hamiltonians, 2j <= {top}"),
        start,
    )
}

/// ‖U†U − I‖_max of the squeeze operator for every 2j ≤ 2·max_j (capped
/// at dimension 51).
pub fn unitarity(convention: SqueezeConvention, max_j: u32) -> SuiteOutcome {
    let start = Instant::now();
    let mut tally = Tally::new();
    let top = (2 * max_j).clamp(1, 50);
    let etas = [
        Complex64::new(0.1, 0.0),
        Complex64::new(PI / 16.0, 0.0),
        Complex64::new(-0.7, 0.4),
        Complex64::new(0.0, 1.3),
    ];
    for two_j in 1..=top {
        let space = SpinSpace::new(two_j);
        for eta in etas {
            let u: ComplexMatrix =
                squeeze_operator(space, SqueezeParam::new(eta).expect("small eta"), convention);
            tally.see(u.unitarity_defect());
        }
    }
    tally.finish(
        "unitarity",
        1e-10,
        format!("2j = 1..={top}, {} values of eta", etas.len()),
        start,
    )
}

pub fn run_selfcheck(options: SelfCheckOptions) -> Vec<SuiteOutcome> {
    vec![
        convention_lock(options.convention),
        closed_form_agreement(options.convention),
        lambda_identities(options.max_j),
        eigen_expm_equivalence(options.max_j),
        unitarity(options.convention, options.max_j),
    ]
}
