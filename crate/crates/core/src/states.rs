//! Pure states over the |j, m⟩ basis and spin coherent states.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, UnitaryOperator};
use crate::spin::SpinSpace;

/// Norm window accepted by the checked constructors.
pub const NORM_TOLERANCE: f64 = 1e-10;

/// Polar angles (θ, φ) of a spin coherent state. ξ = tan(θ/2) e^{iφ} is
/// derived on demand and never stored, since it diverges at θ = π.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoherentParams {
    theta: f64,
    phi: f64,
}

impl CoherentParams {
    /// θ must lie in [0, π]; φ is reduced to [0, 2π).
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !theta.is_finite() || !phi.is_finite() {
            return Err(Error::InvalidParameter("theta and phi must be finite".into()));
        }
        if !(0.0..=PI).contains(&theta) {
            return Err(Error::InvalidParameter(format!(
                "theta must lie in [0, pi], got {theta}"
            )));
        }
        let phi = phi.rem_euclid(TAU);
        // rem_euclid can round up to exactly 2π for tiny negative input
        let phi = if phi >= TAU { 0.0 } else { phi };
        Ok(Self { theta, phi })
    }

    /// Real ξ: θ = 2 arctan|ξ|, φ = 0 for ξ ≥ 0 and π otherwise.
    pub fn from_real_xi(xi: f64) -> Result<Self> {
        if !xi.is_finite() {
            return Err(Error::InvalidParameter("xi must be finite".into()));
        }
        Self::new(2.0 * xi.abs().atan(), if xi < 0.0 { PI } else { 0.0 })
    }

    pub fn from_xi(xi: Complex64) -> Result<Self> {
        if !xi.re.is_finite() || !xi.im.is_finite() {
            return Err(Error::InvalidParameter("xi must be finite".into()));
        }
        let phi = if xi.norm() == 0.0 { 0.0 } else { xi.arg() };
        Self::new(2.0 * xi.norm().atan(), phi)
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// tan(θ/2) e^{iφ}; `None` at θ = π.
    pub fn xi(&self) -> Option<Complex64> {
        if self.theta == PI {
            None
        } else {
            Some(Complex64::from_polar((self.theta / 2.0).tan(), self.phi))
        }
    }

    /// Unit vector (sinθcosφ, sinθsinφ, cosθ).
    pub fn direction(&self) -> [f64; 3] {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [st * cp, st * sp, ct]
    }
}

/// Unit-norm amplitudes indexed by n = j − m.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    space: SpinSpace,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    pub fn new(space: SpinSpace, amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() != space.dim() {
            return Err(Error::DimMismatch {
                expected: space.dim(),
                found: amplitudes.len(),
            });
        }
        let state = Self { space, amplitudes };
        let norm = state.norm();
        if !norm.is_finite() || (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::InvalidParameter(format!("state norm {norm} is not 1")));
        }
        Ok(state)
    }

    /// Rescales to unit norm.
    pub fn normalized(space: SpinSpace, mut amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() != space.dim() {
            return Err(Error::DimMismatch {
                expected: space.dim(),
                found: amplitudes.len(),
            });
        }
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::InvalidParameter(
                "cannot normalize a zero or non-finite vector".into(),
            ));
        }
        for z in &mut amplitudes {
            *z /= norm;
        }
        Ok(Self { space, amplitudes })
    }

    /// |j, m⟩ with m = j − n.
    pub fn basis(space: SpinSpace, n: usize) -> Result<Self> {
        if n >= space.dim() {
            return Err(Error::InvalidParameter(format!(
                "basis index {n} outside 0..{}",
                space.dim()
            )));
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); space.dim()];
        amplitudes[n] = Complex64::new(1.0, 0.0);
        Ok(Self { space, amplitudes })
    }

    /// |j, m⟩ addressed by 2m.
    pub fn basis_two_m(space: SpinSpace, two_m: i64) -> Result<Self> {
        let n = space
            .index_of_two_m(two_m)
            .ok_or_else(|| Error::InvalidParameter(format!("2m = {two_m} not in spin {}", space.j())))?;
        Self::basis(space, n)
    }

    pub fn space(&self) -> SpinSpace {
        self.space
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, n: usize) -> Complex64 {
        self.amplitudes[n]
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// U|ψ⟩, rejecting results that drift off the unit sphere.
    pub fn evolved(&self, u: &UnitaryOperator) -> Result<Self> {
        Self::new(self.space, u.apply(&self.amplitudes)?)
    }

    /// ⟨ψ|A|ψ⟩.
    pub fn expectation(&self, a: &ComplexMatrix) -> Result<Complex64> {
        a.sandwich(&self.amplitudes, &self.amplitudes)
    }
}

/// √C(n_max, n) for n = 0..=n_max via products of ratios.
pub(crate) fn sqrt_binomials(n_max: u32) -> Vec<f64> {
    let total = f64::from(n_max);
    let mut out = Vec::with_capacity(n_max as usize + 1);
    let mut acc = 1.0f64;
    out.push(acc);
    for n in 1..=n_max {
        let n = f64::from(n);
        acc *= ((total - n + 1.0) / n).sqrt();
        out.push(acc);
    }
    out
}

/// amplitude(n) = √C(2j, n) cos(θ/2)^{2j−n} sin(θ/2)^n e^{inφ}, the ξ form
/// multiplied through by cos(θ/2)^{2j}, which stays finite at θ = π.
pub fn coherent_state(space: SpinSpace, params: CoherentParams) -> StateVector {
    let two_j = space.two_j();
    let (s, c) = (params.theta / 2.0).sin_cos();
    let binomials = sqrt_binomials(two_j);
    let amplitudes = (0..space.dim())
        .map(|n| {
            let magnitude = binomials[n] * c.powi((two_j as usize - n) as i32) * s.powi(n as i32);
            Complex64::from_polar(magnitude, n as f64 * params.phi)
        })
        .collect();
    StateVector { space, amplitudes }
}

/// P(m) = |⟨j, m|ψ⟩|², listed from m = +j down to m = −j.
pub fn basis_distribution(psi: &StateVector) -> Vec<f64> {
    psi.amplitudes.iter().map(|z| z.norm_sqr()).collect()
}

/// ⟨a|b⟩, conjugate-linear in `a`.
pub fn inner_product(a: &StateVector, b: &StateVector) -> Result<Complex64> {
    if a.space != b.space {
        return Err(Error::SpaceMismatch {
            left: a.space.two_j(),
            right: b.space.two_j(),
        });
    }
    Ok(a.amplitudes
        .iter()
        .zip(&b.amplitudes)
        .map(|(x, y)| x.conj() * y)
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn polar_states() {
        for two_j in [1, 2, 7, 40] {
            let space = SpinSpace::new(two_j);
            let up = coherent_state(space, CoherentParams::new(0.0, 1.3).unwrap());
            assert_eq!(up, StateVector::basis(space, 0).unwrap());
            let down = coherent_state(space, CoherentParams::new(PI, 0.0).unwrap());
            let last = down.amplitude(space.dim() - 1);
            assert!((last.norm() - 1.0).abs() < 1e-15);
            for n in 0..space.dim() - 1 {
                assert!(down.amplitude(n).norm() < 1e-15, "n={n}");
            }
        }
    }

    #[test]
    fn spin_one_equator() {
        let psi = coherent_state(SpinSpace::new(2), CoherentParams::new(FRAC_PI_2, 0.0).unwrap());
        let expected = [0.5, std::f64::consts::FRAC_1_SQRT_2, 0.5];
        for (z, e) in psi.amplitudes().iter().zip(expected) {
            assert!((z.re - e).abs() < 1e-10 && z.im.abs() < 1e-15);
        }
    }

    #[test]
    fn matches_xi_series() {
        // j = 3/2, θ = π/3, φ = π/5 against (1+|ξ|²)^{-j} √C(2j,n) ξ^n
        let space = SpinSpace::new(3);
        let params = CoherentParams::new(PI / 3.0, PI / 5.0).unwrap();
        let psi = coherent_state(space, params);
        let xi = params.xi().unwrap();
        let prefactor = (1.0 + xi.norm_sqr()).powf(-1.5);
        let binom = [1.0f64, 3.0, 3.0, 1.0];
        for (n, b) in binom.iter().enumerate() {
            let expected = xi.powu(n as u32) * (prefactor * b.sqrt());
            let basis = StateVector::basis(space, n).unwrap();
            let overlap = inner_product(&basis, &psi).unwrap();
            assert!((overlap - expected).norm() < 1e-14, "n={n}");
        }
    }

    #[test]
    fn distribution_spin_one() {
        let psi = coherent_state(SpinSpace::new(2), CoherentParams::from_real_xi(1.0).unwrap());
        let p = basis_distribution(&psi);
        for (a, b) in p.iter().zip([0.25, 0.5, 0.25]) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn distribution_of_basis_state() {
        let space = SpinSpace::new(6);
        let p = basis_distribution(&StateVector::basis_two_m(space, -2).unwrap());
        assert_eq!(p, vec![0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0]);
    }

    #[test]
    fn orthonormal_basis() {
        let space = SpinSpace::new(4);
        for a in 0..5 {
            for b in 0..5 {
                let ip = inner_product(
                    &StateVector::basis(space, a).unwrap(),
                    &StateVector::basis(space, b).unwrap(),
                )
                .unwrap();
                assert_eq!(ip, Complex64::new(if a == b { 1.0 } else { 0.0 }, 0.0));
            }
        }
    }

    #[test]
    fn space_mismatch() {
        let a = StateVector::basis(SpinSpace::new(2), 0).unwrap();
        let b = StateVector::basis(SpinSpace::new(3), 0).unwrap();
        assert_eq!(
            inner_product(&a, &b),
            Err(Error::SpaceMismatch { left: 2, right: 3 })
        );
    }

    #[test]
    fn large_spin_stays_finite() {
        let psi = coherent_state(SpinSpace::new(120), CoherentParams::new(1.1, 0.4).unwrap());
        assert!((psi.norm() - 1.0).abs() < 1e-12);
        assert!(psi
            .amplitudes()
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite()));
    }

    #[test]
    fn xi_sugar() {
        let p = CoherentParams::from_real_xi(-1.0).unwrap();
        assert!((p.theta() - FRAC_PI_2).abs() < 1e-15);
        assert_eq!(p.phi(), PI);
        let p = CoherentParams::from_xi(Complex64::from_polar(0.5, PI / 3.0)).unwrap();
        assert!((p.xi().unwrap() - Complex64::from_polar(0.5, PI / 3.0)).norm() < 1e-15);
        assert!(CoherentParams::new(PI, 0.0).unwrap().xi().is_none());
        assert!(CoherentParams::new(-0.1, 0.0).is_err());
        assert_eq!(CoherentParams::new(0.3, -FRAC_PI_2).unwrap().phi(), 1.5 * PI);
    }

    #[test]
    fn checked_constructor() {
        let space = SpinSpace::new(1);
        let half = Complex64::new(0.5, 0.0);
        assert!(StateVector::new(space, vec![half, half]).is_err());
        let v = StateVector::normalized(space, vec![half, half]).unwrap();
        assert!((v.norm() - 1.0).abs() < 1e-15);
        assert!(StateVector::new(space, vec![half]).is_err());
    }
}
