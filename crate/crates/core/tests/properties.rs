use num_complex::Complex64;
use proptest::prelude::*;
use std::f64::consts::{PI, TAU};

use spinsq_core::dynamics::{squeeze_generator, squeeze_propagator, SqueezeParam};
use spinsq_core::linalg::{expm_antihermitian, hermitian_eigen};
use spinsq_core::metrics::squeeze_report;
use spinsq_core::spin::{
    build_hamiltonian, build_spin_ops, parity_blocks, rotation_operator, HamiltonianSpec,
};
use spinsq_core::states::{coherent_state, inner_product};
use spinsq_core::twoatom::{analytic_coefficients, analytic_variances};
use spinsq_core::{CoherentParams, ComplexMatrix, SpinSpace};

fn hermitian(dim: usize, entries: &[f64]) -> ComplexMatrix {
    let mut k = 0;
    let mut next = || {
        let v = entries[k % entries.len()];
        k += 1;
        v
    };
    let mut data = vec![Complex64::new(0.0, 0.0); dim * dim];
    for r in 0..dim {
        data[r * dim + r] = Complex64::new(next(), 0.0);
        for c in r + 1..dim {
            let z = Complex64::new(next(), next());
            data[r * dim + c] = z;
            data[c * dim + r] = z.conj();
        }
    }
    ComplexMatrix::from_row_major(dim, data).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn eigen_reconstructs(dim in 1usize..12, entries in prop::collection::vec(-3.0f64..3.0, 8..64)) {
        let h = hermitian(dim, &entries);
        let eig = hermitian_eigen(&h).unwrap();
        let scale = 1.0 + h.max_abs();
        prop_assert!(eig.reconstruct().max_abs_diff(&h) < 1e-11 * scale);
        prop_assert!(eig.orthonormality_defect() < 1e-12);
        prop_assert!(eig.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn eigen_and_expm_propagators_agree(dim in 1usize..10, t in -2.0f64..2.0, entries in prop::collection::vec(-1.0f64..1.0, 8..64)) {
        let h = hermitian(dim, &entries);
        let spectral = hermitian_eigen(&h).unwrap().propagator(t);
        let direct = expm_antihermitian(&h.scale(Complex64::new(0.0, -t))).unwrap();
        prop_assert!(spectral.matrix().max_abs_diff(direct.matrix()) < 1e-10);
    }

    #[test]
    fn squeeze_is_unitary_group(two_j in 1u32..30, a in -1.5f64..1.5, b in -1.5f64..1.5) {
        let space = SpinSpace::new(two_j);
        let ua = squeeze_propagator(space, SqueezeParam::real(a).unwrap());
        let ub = squeeze_propagator(space, SqueezeParam::real(b).unwrap());
        let uab = squeeze_propagator(space, SqueezeParam::real(a + b).unwrap());
        prop_assert!(ua.unitarity_defect() < 1e-10);
        prop_assert!(ua.compose(&ub).matrix().max_abs_diff(uab.matrix()) < 1e-10);
    }

    #[test]
    fn squeeze_matches_expm(two_j in 1u32..16, re in -1.0f64..1.0, im in -1.0f64..1.0) {
        let space = SpinSpace::new(two_j);
        let eta = SqueezeParam::new(Complex64::new(re, im)).unwrap();
        let oracle = expm_antihermitian(&squeeze_generator(space, eta)).unwrap();
        let u = squeeze_propagator(space, eta);
        prop_assert!(u.matrix().max_abs_diff(oracle.matrix()) < 1e-10);
    }

    #[test]
    fn two_atom_convention(xi in 0.0f64..2.0, re in -1.1f64..1.1, im in -1.1f64..1.1) {
        let space = SpinSpace::new(2);
        let eta = Complex64::new(re, im);
        prop_assume!(eta.norm() <= std::f64::consts::FRAC_PI_2);
        let psi = coherent_state(space, CoherentParams::from_real_xi(xi).unwrap())
            .evolved(&squeeze_propagator(space, SqueezeParam::new(eta).unwrap()))
            .unwrap();
        let c = analytic_coefficients(Complex64::new(xi, 0.0), eta);
        for (z, e) in psi.amplitudes().iter().zip(c.as_array()) {
            prop_assert!((z - e).norm() < 1e-10);
        }
    }

    #[test]
    fn uncertainty_floor(two_j in 1u32..24, theta in 0.0f64..=PI, phi in 0.0f64..TAU, eta in -1.5f64..1.5) {
        let space = SpinSpace::new(two_j);
        let psi = coherent_state(space, CoherentParams::new(theta, phi).unwrap())
            .evolved(&squeeze_propagator(space, SqueezeParam::real(eta).unwrap()))
            .unwrap();
        if let Ok(r) = squeeze_report(&psi) {
            prop_assert!(r.uncertainty_product() >= r.mean_spin.magnitude / 2.0 - 1e-9);
        }
    }

    #[test]
    fn rotations_preserve_casimir(two_j in 1u32..12, x in -1.0f64..1.0, y in -1.0f64..1.0, z in -1.0f64..1.0, angle in -6.0f64..6.0) {
        let n = (x * x + y * y + z * z).sqrt();
        prop_assume!(n > 1e-3);
        let space = SpinSpace::new(two_j);
        let ops = build_spin_ops(space);
        let r = rotation_operator(space, [x / n, y / n, z / n], angle).unwrap();
        prop_assert!(r.conjugate(&ops.j_squared).max_abs_diff(&ops.j_squared) < 1e-10);
    }

    #[test]
    fn coherent_states_normalized(two_j in 1u32..51, theta in 0.0f64..=PI, phi in -10.0f64..10.0) {
        let space = SpinSpace::new(two_j);
        let psi = coherent_state(space, CoherentParams::new(theta, phi).unwrap());
        prop_assert!((psi.norm() - 1.0).abs() < 1e-12);
        let overlap = inner_product(&psi, &psi).unwrap();
        prop_assert!((overlap.re - 1.0).abs() < 1e-12);
    }
}

#[test]
fn parity_blocks_match_full_solve() {
    for two_j in [2u32, 7, 20, 50] {
        let space = SpinSpace::new(two_j);
        let h = build_hamiltonian(space, &HamiltonianSpec::TwoAxis { zeta: 1.0 }).unwrap();
        let blocked = parity_blocks(space, &h).unwrap().eigen().unwrap();
        let full = hermitian_eigen(&h).unwrap();
        for (a, b) in blocked.eigenvalues.iter().zip(&full.eigenvalues) {
            assert!((a - b).abs() < 1e-10, "2j={two_j}: {a} vs {b}");
        }
        assert!(blocked.max_residual(&h) < 1e-10);
    }
}

#[test]
fn two_atom_closed_forms_match_numerics() {
    let space = SpinSpace::new(2);
    for &(xi, eta) in &[(1.0, 0.1), (0.4, 0.3), (1.7, 1.2), (0.0, 0.05)] {
        let psi = coherent_state(space, CoherentParams::from_real_xi(xi).unwrap())
            .evolved(&squeeze_propagator(space, SqueezeParam::real(eta).unwrap()))
            .unwrap();
        let r = squeeze_report(&psi).unwrap();
        let a = analytic_variances(xi, eta).unwrap();
        assert!((r.var_x - a.var_x).abs() < 1e-9);
        assert!((r.var_y - a.var_y).abs() < 1e-9);
        assert!((r.mean_spin.magnitude.powi(2) - a.mean_spin_sq).abs() < 1e-9);
    }
}
