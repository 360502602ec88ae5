//! Unitary evolution of collective spin states.
//!
//! The squeeze propagator is defined as
//!
//! ```text
//! U(η) = exp(η J₊² − η* J₋²)
//! ```
//!
//! which for j = 1 produces the two-atom amplitudes
//! C₁ = [cos 2|η| + e^{i arg η} ξ² sin 2|η|]/(1+|ξ|²), C₂ = √2ξ/(1+|ξ|²),
//! C₃ = [ξ² cos 2|η| − e^{−i arg η} sin 2|η|]/(1+|ξ|²) on a coherent input.
//! Since JxJy + JyJx = (J₊² − J₋²)/(2i), evolving under
//! H = ζ(JxJy + JyJx) for a time t is U(η) with η = −ζt/2.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{self, ComplexMatrix, EigenSystem, UnitaryOperator};
use crate::spin::{build_spin_ops, parity_blocks, SpinSpace};
use crate::states::StateVector;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Largest |η| accepted.
pub const MAX_ETA: f64 = 10.0 * PI;

/// Complex squeeze amplitude η (distinct from the Λ metric operator).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SqueezeParam(Complex64);

impl SqueezeParam {
    pub fn new(eta_squeeze: Complex64) -> Result<Self> {
        if !eta_squeeze.re.is_finite() || !eta_squeeze.im.is_finite() {
            return Err(Error::InvalidParameter("eta must be finite".into()));
        }
        if eta_squeeze.norm() > MAX_ETA {
            return Err(Error::InvalidParameter(format!(
                "|eta| = {} exceeds 10 pi",
                eta_squeeze.norm()
            )));
        }
        Ok(Self(eta_squeeze))
    }

    pub fn real(eta: f64) -> Result<Self> {
        Self::new(Complex64::new(eta, 0.0))
    }

    pub fn value(self) -> Complex64 {
        self.0
    }
}

/// Which operator the squeeze amplitude is plugged into.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SqueezeConvention {
    /// exp(η J₊² − η* J₋²).
    #[default]
    Ladder,
    /// exp(η (JxJy + JyJx)) read literally. Not unitary for real η and does
    /// not reproduce the two-atom amplitudes; kept as a negative control.
    Naive,
}

/// η J₊² − η* J₋² (anti-Hermitian for every complex η).
pub fn squeeze_generator(space: SpinSpace, eta: SqueezeParam) -> ComplexMatrix {
    let ops = build_spin_ops(space);
    let raise2 = &ops.j_plus * &ops.j_plus;
    let lower2 = &ops.j_minus * &ops.j_minus;
    &raise2.scale(eta.value()) - &lower2.scale(eta.value().conj())
}

pub fn squeeze_propagator(space: SpinSpace, eta: SqueezeParam) -> UnitaryOperator {
    if eta.value() == Complex64::new(0.0, 0.0) {
        return UnitaryOperator::identity(space.dim());
    }
    // exp(G) = exp(−iK) with K = iG Hermitian and Δm = ±2 only
    let k = squeeze_generator(space, eta).scale(I);
    let eig = parity_blocks(space, &k)
        .and_then(|blocks| blocks.eigen())
        .expect("squeeze generator is Hermitian and parity-block structured");
    eig.propagator(1.0)
}

/// Squeeze operator under either convention. Only [`SqueezeConvention::Ladder`]
/// is guaranteed unitary.
pub fn squeeze_operator(space: SpinSpace, eta: SqueezeParam, convention: SqueezeConvention) -> ComplexMatrix {
    match convention {
        SqueezeConvention::Ladder => squeeze_propagator(space, eta).into_matrix(),
        SqueezeConvention::Naive => {
            let ops = build_spin_ops(space);
            let q = ops.j_x.anticommutator(&ops.j_y);
            let eig = linalg::hermitian_eigen(&q).expect("JxJy + JyJx is Hermitian");
            let v = &eig.eigenvectors;
            let n = space.dim();
            let factors: Vec<Complex64> = eig.eigenvalues.iter().map(|&l| (eta.value() * l).exp()).collect();
            ComplexMatrix::from_fn(n, |r, c| {
                (0..n).map(|k| v[(r, k)] * factors[k] * v[(c, k)].conj()).sum()
            })
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EvolutionResult {
    pub state: StateVector,
    /// ‖U†U − I‖_max of the propagator used.
    pub propagator_checksum: f64,
}

/// ψ(t) = Σ_k e^{−iλ_k t} |v_k⟩⟨v_k|ψ₀⟩ from the eigensystem of `h`.
pub fn evolve_eigen(h: &ComplexMatrix, t: f64, psi0: &StateVector) -> Result<EvolutionResult> {
    if h.dim() != psi0.space().dim() {
        return Err(Error::DimMismatch {
            expected: h.dim(),
            found: psi0.space().dim(),
        });
    }
    if !t.is_finite() {
        return Err(Error::InvalidParameter("time must be finite".into()));
    }
    let eig = linalg::hermitian_eigen(h)?;
    let u = eig.propagator(t);
    let propagator_checksum = u.unitarity_defect();
    let state = psi0.evolved(&u)?;
    Ok(EvolutionResult {
        state,
        propagator_checksum,
    })
}

/// Cached eigensystem of a time-independent Hermitian generator, reused
/// across many evolution times.
#[derive(Clone, Debug)]
pub struct SpectralPropagator {
    space: SpinSpace,
    eig: EigenSystem,
}

impl SpectralPropagator {
    /// Diagonalizes `h`, splitting into parity blocks when its structure
    /// allows it.
    pub fn new(space: SpinSpace, h: &ComplexMatrix) -> Result<Self> {
        if h.dim() != space.dim() {
            return Err(Error::DimMismatch {
                expected: space.dim(),
                found: h.dim(),
            });
        }
        let eig = match parity_blocks(space, h) {
            Ok(blocks) => blocks.eigen()?,
            Err(Error::NotBlockStructured { .. }) => linalg::hermitian_eigen(h)?,
            Err(e) => return Err(e),
        };
        Ok(Self { space, eig })
    }

    /// Generator K₁ = i(J₊² − J₋²), so that exp(−iηK₁) = U(η) for real η.
    pub fn squeeze(space: SpinSpace) -> Result<Self> {
        let unit = SqueezeParam::real(1.0)?;
        Self::new(space, &squeeze_generator(space, unit).scale(I))
    }

    pub fn space(&self) -> SpinSpace {
        self.space
    }

    pub fn eigensystem(&self) -> &EigenSystem {
        &self.eig
    }

    pub fn evolve(&self, t: f64, psi: &StateVector) -> Result<StateVector> {
        if psi.space() != self.space {
            return Err(Error::SpaceMismatch {
                left: self.space.two_j(),
                right: psi.space().two_j(),
            });
        }
        StateVector::new(self.space, self.eig.evolve(t, psi.amplitudes())?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spin::{build_hamiltonian, HamiltonianSpec};
    use crate::states::{coherent_state, CoherentParams};

    #[test]
    fn zero_is_identity() {
        let u = squeeze_propagator(SpinSpace::new(6), SqueezeParam::real(0.0).unwrap());
        assert_eq!(u.matrix(), &ComplexMatrix::identity(7));
    }

    #[test]
    fn spin_one_rotation_in_extreme_block() {
        let space = SpinSpace::new(2);
        let u = squeeze_propagator(space, SqueezeParam::real(PI / 16.0).unwrap());
        let out = StateVector::basis(space, 0).unwrap().evolved(&u).unwrap();
        let expected = [(PI / 8.0).cos(), 0.0, -(PI / 8.0).sin()];
        for (z, e) in out.amplitudes().iter().zip(expected) {
            assert!((z - Complex64::new(e, 0.0)).norm() < 1e-14);
        }
        let oracle =
            linalg::expm_antihermitian(&squeeze_generator(space, SqueezeParam::real(PI / 16.0).unwrap()))
                .unwrap();
        assert!(oracle.matrix().max_abs_diff(u.matrix()) < 1e-13);
    }

    #[test]
    fn group_property_for_real_eta() {
        let space = SpinSpace::new(9);
        let a = squeeze_propagator(space, SqueezeParam::real(0.31).unwrap());
        let b = squeeze_propagator(space, SqueezeParam::real(-0.12).unwrap());
        let ab = squeeze_propagator(space, SqueezeParam::real(0.19).unwrap());
        assert!(a.compose(&b).matrix().max_abs_diff(ab.matrix()) < 1e-10);
    }

    #[test]
    fn two_axis_time_maps_to_minus_half_zeta_t() {
        let space = SpinSpace::new(8);
        let zeta = 1.0;
        let h = build_hamiltonian(space, &HamiltonianSpec::TwoAxis { zeta }).unwrap();
        let psi = coherent_state(space, CoherentParams::new(1.0, 0.4).unwrap());
        for t in [0.0, 0.37, 1.9] {
            let eig_path = evolve_eigen(&h, t, &psi).unwrap();
            assert!(eig_path.propagator_checksum <= 1e-10);
            let u = squeeze_propagator(space, SqueezeParam::real(-zeta * t / 2.0).unwrap());
            let direct = psi.evolved(&u).unwrap();
            for (a, b) in eig_path.state.amplitudes().iter().zip(direct.amplitudes()) {
                assert!((a - b).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn one_axis_is_a_phase_per_m() {
        let space = SpinSpace::new(5);
        let gamma = 0.7;
        let t = 1.3;
        let h = build_hamiltonian(space, &HamiltonianSpec::OneAxis { gamma }).unwrap();
        let psi = coherent_state(space, CoherentParams::new(1.2, 0.3).unwrap());
        let out = evolve_eigen(&h, t, &psi).unwrap().state;
        for n in 0..space.dim() {
            let m = space.m(n);
            let expected = psi.amplitude(n) * Complex64::from_polar(1.0, gamma * t * m * m);
            assert!((out.amplitude(n) - expected).norm() < 1e-12);
        }
    }

    #[test]
    fn evolve_at_zero_time() {
        let space = SpinSpace::new(4);
        let h = build_hamiltonian(space, &HamiltonianSpec::Lipkin { g1: 0.3, g2: 0.2 }).unwrap();
        let psi = coherent_state(space, CoherentParams::new(0.5, 0.0).unwrap());
        let out = evolve_eigen(&h, 0.0, &psi).unwrap().state;
        for (a, b) in out.amplitudes().iter().zip(psi.amplitudes()) {
            assert!((a - b).norm() < 1e-14);
        }
    }

    #[test]
    fn evolve_rejects_lambda() {
        let space = SpinSpace::new(2);
        let h = build_hamiltonian(space, &HamiltonianSpec::LambdaOp { epsilon: 0.4 }).unwrap();
        let psi = StateVector::basis(space, 0).unwrap();
        assert!(matches!(
            evolve_eigen(&h, 1.0, &psi),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn spectral_propagator_matches_direct() {
        let space = SpinSpace::new(11);
        let prop = SpectralPropagator::squeeze(space).unwrap();
        let psi = coherent_state(space, CoherentParams::new(2.0, 1.0).unwrap());
        for eta in [0.05, 0.4, 1.2] {
            let a = prop.evolve(eta, &psi).unwrap();
            let b = psi
                .evolved(&squeeze_propagator(space, SqueezeParam::real(eta).unwrap()))
                .unwrap();
            for (x, y) in a.amplitudes().iter().zip(b.amplitudes()) {
                assert!((x - y).norm() < 1e-11);
            }
        }
    }

    #[test]
    fn naive_convention_differs() {
        let space = SpinSpace::new(2);
        let eta = SqueezeParam::real(0.2).unwrap();
        let naive = squeeze_operator(space, eta, SqueezeConvention::Naive);
        let ladder = squeeze_operator(space, eta, SqueezeConvention::Ladder);
        assert!(naive.max_abs_diff(&ladder) > 1e-2);
        assert!(naive.unitarity_defect() > 1e-2);
    }

    #[test]
    fn squeeze_param_bounds() {
        assert!(SqueezeParam::real(40.0).is_err());
        assert!(SqueezeParam::new(Complex64::new(f64::NAN, 0.0)).is_err());
        assert!(SqueezeParam::new(Complex64::new(1.0, -2.0)).is_ok());
    }
}
