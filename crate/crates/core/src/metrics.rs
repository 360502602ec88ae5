//! Mean spin, the frame it defines, and quadrature squeezing in that frame.
//!
//! Moments are taken in the lab frame from Jx|ψ⟩, Jy|ψ⟩, Jz|ψ⟩ (built
//! directly from the ladder coefficients, O(dim)) and then projected onto
//! the rotated axes, so no rotated operator matrices are ever formed.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::states::StateVector;

/// Below this |⟨J⟩| the mean-spin frame is undefined.
pub const MEAN_SPIN_THRESHOLD: f64 = 1e-10;

/// Transverse part of n̂ below which n̂ is treated as ±ẑ.
const POLAR_AXIS_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MeanSpin {
    /// (⟨Jx⟩, ⟨Jy⟩, ⟨Jz⟩) with ħ = 1.
    pub vector: [f64; 3],
    pub magnitude: f64,
}

/// Orthonormal right-handed frame with `normal` along ⟨J⟩.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RotatedFrame {
    pub e_x: [f64; 3],
    pub e_y: [f64; 3],
    pub normal: [f64; 3],
}

/// First and symmetrized second moments of J in the lab frame.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Moments {
    pub mean: [f64; 3],
    /// ⟨(J_k J_l + J_l J_k)/2⟩.
    pub second: [[f64; 3]; 3],
}

impl Moments {
    /// ⟨(e·J)²⟩ − ⟨e·J⟩².
    pub fn variance_along(&self, e: [f64; 3]) -> f64 {
        let mut quad = 0.0;
        for k in 0..3 {
            for l in 0..3 {
                quad += e[k] * e[l] * self.second[k][l];
            }
        }
        let lin = dot(e, self.mean);
        quad - lin * lin
    }

    /// ⟨J_kJ_l + J_lJ_k⟩ − 2⟨J_k⟩⟨J_l⟩.
    pub fn correlation(&self, k: usize, l: usize) -> f64 {
        2.0 * (self.second[k][l] - self.mean[k] * self.mean[l])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SqueezeReport {
    pub mean_spin: MeanSpin,
    pub frame: RotatedFrame,
    /// (ΔJ_x′)².
    pub var_x: f64,
    /// (ΔJ_y′)².
    pub var_y: f64,
    /// ΔJ_x′ √(2/|⟨J⟩|).
    pub s_x: f64,
    /// ΔJ_y′ √(2/|⟨J⟩|).
    pub s_y: f64,
    pub corr_xy: f64,
    pub corr_xz: f64,
    pub corr_yz: f64,
}

impl SqueezeReport {
    pub fn s_min(&self) -> f64 {
        self.s_x.min(self.s_y)
    }

    /// ΔJ_x′ ΔJ_y′.
    pub fn uncertainty_product(&self) -> f64 {
        (self.var_x * self.var_y).sqrt()
    }

    /// ΔJ_x′ ΔJ_y′ ≥ |⟨J⟩|/2 − 1e−9.
    pub fn satisfies_uncertainty_floor(&self) -> bool {
        self.uncertainty_product() >= self.mean_spin.magnitude / 2.0 - 1e-9
    }
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// (Jx|ψ⟩, Jy|ψ⟩, Jz|ψ⟩).
fn spin_images(psi: &StateVector) -> [Vec<Complex64>; 3] {
    let space = psi.space();
    let amps = psi.amplitudes();
    let dim = amps.len();
    let zero = Complex64::new(0.0, 0.0);
    let mut raised = vec![zero; dim];
    let mut lowered = vec![zero; dim];
    for n in 1..dim {
        let c = space.raising_coefficient(n);
        raised[n - 1] = amps[n] * c;
        lowered[n] = amps[n - 1] * c;
    }
    let jx = raised.iter().zip(&lowered).map(|(p, m)| (p + m) * 0.5).collect();
    let jy = raised
        .iter()
        .zip(&lowered)
        .map(|(p, m)| (p - m) * Complex64::new(0.0, -0.5))
        .collect();
    let jz = amps.iter().enumerate().map(|(n, a)| a * space.m(n)).collect();
    [jx, jy, jz]
}

fn braket(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub fn moments(psi: &StateVector) -> Moments {
    let images = spin_images(psi);
    let amps = psi.amplitudes();
    let mut mean = [0.0; 3];
    for k in 0..3 {
        let value = braket(amps, &images[k]);
        debug_assert!(value.im.abs() <= 1e-12 * (1.0 + psi.space().j()));
        mean[k] = value.re;
    }
    let mut second = [[0.0; 3]; 3];
    for k in 0..3 {
        for l in k..3 {
            // Re⟨J_kψ|J_lψ⟩ = ⟨{J_k, J_l}⟩/2 for Hermitian J_k
            let value = braket(&images[k], &images[l]).re;
            second[k][l] = value;
            second[l][k] = value;
        }
    }
    Moments { mean, second }
}

pub fn mean_spin(psi: &StateVector) -> MeanSpin {
    mean_spin_from_vector(moments(psi).mean)
}

fn mean_spin_from_vector(vector: [f64; 3]) -> MeanSpin {
    MeanSpin {
        vector,
        magnitude: dot(vector, vector).sqrt(),
    }
}

/// Spherical unit vectors (e_θ̄, e_φ̄, n̂) at the direction of ⟨J⟩. At the
/// poles φ̄ is taken as 0, so n̂ = +ẑ gives (x̂, ŷ) and n̂ = −ẑ gives (−x̂, ŷ).
pub fn rotated_frame(ms: &MeanSpin) -> Result<RotatedFrame> {
    if ms.magnitude.is_nan() || ms.magnitude < MEAN_SPIN_THRESHOLD {
        return Err(Error::MeanSpinVanishes {
            magnitude: ms.magnitude,
        });
    }
    let n = ms.vector.map(|v| v / ms.magnitude);
    let transverse = n[0].hypot(n[1]);
    let (cos_t, sin_t, cos_p, sin_p) = if transverse <= POLAR_AXIS_TOLERANCE {
        (n[2].signum(), 0.0, 1.0, 0.0)
    } else {
        (n[2], transverse, n[0] / transverse, n[1] / transverse)
    };
    Ok(RotatedFrame {
        e_x: [cos_t * cos_p, cos_t * sin_p, -sin_t],
        e_y: [-sin_p, cos_p, 0.0],
        normal: n,
    })
}

fn clip_variance(v: f64) -> f64 {
    debug_assert!(v >= -1e-9, "negative variance {v}");
    v.max(0.0)
}

pub fn squeeze_report(psi: &StateVector) -> Result<SqueezeReport> {
    let m = moments(psi);
    let mean_spin = mean_spin_from_vector(m.mean);
    let frame = rotated_frame(&mean_spin)?;
    let var_x = clip_variance(m.variance_along(frame.e_x));
    let var_y = clip_variance(m.variance_along(frame.e_y));
    let scale = (2.0 / mean_spin.magnitude).sqrt();
    Ok(SqueezeReport {
        mean_spin,
        frame,
        var_x,
        var_y,
        s_x: var_x.sqrt() * scale,
        s_y: var_y.sqrt() * scale,
        corr_xy: m.correlation(0, 1),
        corr_xz: m.correlation(0, 2),
        corr_yz: m.correlation(1, 2),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spin::{build_spin_ops, SpinSpace};
    use crate::states::{coherent_state, CoherentParams};
    use std::f64::consts::{FRAC_PI_2, PI};

    fn close3(a: [f64; 3], b: [f64; 3], tol: f64) -> bool {
        a.iter().zip(&b).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn frame_at_poles_and_equator() {
        let up = rotated_frame(&mean_spin_from_vector([0.0, 0.0, 2.0])).unwrap();
        assert_eq!(
            (up.e_x, up.e_y, up.normal),
            ([1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0])
        );
        let down = rotated_frame(&mean_spin_from_vector([0.0, 0.0, -0.3])).unwrap();
        assert_eq!((down.e_x, down.e_y), ([-1.0, 0.0, 0.0], [0.0, 1.0, 0.0]));
        let x = rotated_frame(&mean_spin_from_vector([1.5, 0.0, 0.0])).unwrap();
        assert!(close3(x.e_x, [0.0, 0.0, -1.0], 1e-15));
        assert!(close3(x.e_y, [0.0, 1.0, 0.0], 1e-15));
    }

    #[test]
    fn frame_is_right_handed() {
        for v in [[0.3, -0.2, 0.9], [-1.0, 2.0, -0.5], [0.0, 1.0, 0.0]] {
            let f = rotated_frame(&mean_spin_from_vector(v)).unwrap();
            let cross = [
                f.e_x[1] * f.e_y[2] - f.e_x[2] * f.e_y[1],
                f.e_x[2] * f.e_y[0] - f.e_x[0] * f.e_y[2],
                f.e_x[0] * f.e_y[1] - f.e_x[1] * f.e_y[0],
            ];
            assert!(close3(cross, f.normal, 1e-12));
            assert!(dot(f.e_x, f.e_y).abs() < 1e-12);
            assert!(dot(f.e_x, f.normal).abs() < 1e-12);
        }
    }

    #[test]
    fn vanishing_mean_spin() {
        let err = rotated_frame(&mean_spin_from_vector([0.0, 0.0, 0.0])).unwrap_err();
        assert!(matches!(err, Error::MeanSpinVanishes { .. }));
        // |1, 0> has <J> = 0
        let psi = StateVector::basis(SpinSpace::new(2), 1).unwrap();
        assert!(matches!(
            squeeze_report(&psi),
            Err(Error::MeanSpinVanishes { .. })
        ));
    }

    #[test]
    fn moments_match_dense_operators() {
        let space = SpinSpace::new(7);
        let ops = build_spin_ops(space);
        let psi = StateVector::normalized(
            space,
            (0..8)
                .map(|n| Complex64::new(1.0 + n as f64, (n as f64 * 0.7).sin()))
                .collect(),
        )
        .unwrap();
        let m = moments(&psi);
        let comps = [&ops.j_x, &ops.j_y, &ops.j_z];
        for k in 0..3 {
            assert!((psi.expectation(comps[k]).unwrap().re - m.mean[k]).abs() < 1e-12);
            for l in 0..3 {
                let sym = comps[k].anticommutator(comps[l]).scale_real(0.5);
                assert!((psi.expectation(&sym).unwrap().re - m.second[k][l]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn coherent_mean_spin_direction() {
        for two_j in [1, 2, 5, 20] {
            let space = SpinSpace::new(two_j);
            for (theta, phi) in [(0.0, 0.0), (0.4, 2.0), (FRAC_PI_2, 0.7), (2.9, 5.5), (PI, 0.0)] {
                let params = CoherentParams::new(theta, phi).unwrap();
                let ms = mean_spin(&coherent_state(space, params));
                let expected = params.direction().map(|d| d * space.j());
                assert!(close3(ms.vector, expected, 1e-10), "two_j={two_j} theta={theta}");
            }
        }
    }

    #[test]
    fn coherent_states_are_minimum_uncertainty() {
        for two_j in [1, 2, 3, 10, 50] {
            let space = SpinSpace::new(two_j);
            for (theta, phi) in [(0.0, 0.0), (0.4, 2.0), (FRAC_PI_2, 0.7), (2.9, 5.5), (PI, 0.0)] {
                let psi = coherent_state(space, CoherentParams::new(theta, phi).unwrap());
                let r = squeeze_report(&psi).unwrap();
                assert!((r.s_x - 1.0).abs() < 1e-9 && (r.s_y - 1.0).abs() < 1e-9);
                assert!(((r.var_x.sqrt()) - (r.mean_spin.magnitude / 2.0).sqrt()).abs() < 1e-9);
                assert!(r.satisfies_uncertainty_floor());
            }
        }
    }
}
