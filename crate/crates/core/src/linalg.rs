//! Dense complex matrices, a cyclic Jacobi eigensolver for Hermitian input
//! and a scaling-and-squaring exponential for anti-Hermitian generators.
//!
//! Storage is row-major. Nothing here knows about spins; the Δm = ±2 block
//! structure of the squeezing Hamiltonians is exploited one level up, in
//! [`crate::spin::parity_blocks`].

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Hard cap on Jacobi sweeps.
pub const MAX_JACOBI_SWEEPS: usize = 100;

/// Jacobi stops once the off-diagonal Frobenius mass drops below this
/// fraction of ‖H‖_F².
pub const JACOBI_OFF_DIAGONAL_TOLERANCE: f64 = 1e-26;

/// Relative window inside which two component magnitudes count as tied when
/// fixing eigenvector phases.
const PHASE_TIE_WINDOW: f64 = 1e-10;

/// Square, dense, finite complex matrix.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "matrix dimension must be at least 1");
        Self {
            dim,
            data: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_diagonal(diag: &[Complex64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(dim);
        for r in 0..dim {
            for c in 0..dim {
                m[(r, c)] = f(r, c);
            }
        }
        m
    }

    /// Builds a matrix from row-major data, rejecting non-square or
    /// non-finite input.
    pub fn from_row_major(dim: usize, data: Vec<Complex64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidParameter(
                "matrix dimension must be at least 1".into(),
            ));
        }
        if data.len() != dim * dim {
            return Err(Error::DimMismatch {
                expected: dim * dim,
                found: data.len(),
            });
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidParameter("matrix entries must be finite".into()));
        }
        Ok(Self { dim, data })
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimMismatch {
                    expected: dim,
                    found: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Self::from_row_major(dim, data)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[Complex64] {
        &self.data[r * self.dim..(r + 1) * self.dim]
    }

    pub fn column(&self, c: usize) -> Vec<Complex64> {
        (0..self.dim).map(|r| self[(r, c)]).collect()
    }

    pub fn diagonal(&self) -> Vec<Complex64> {
        (0..self.dim).map(|i| self[(i, i)]).collect()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |r, c| self[(c, r)].conj())
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&z| z * factor).collect(),
        }
    }

    pub fn scale_real(&self, factor: f64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&z| z * factor).collect(),
        }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Maximum absolute column sum.
    pub fn one_norm(&self) -> f64 {
        (0..self.dim)
            .map(|c| (0..self.dim).map(|r| self[(r, c)].norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// ‖self − other‖_max. Panics on dimension mismatch.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// ‖H − H†‖_max.
    pub fn hermiticity_deviation(&self) -> f64 {
        let mut dev = 0.0f64;
        for r in 0..self.dim {
            for c in r..self.dim {
                dev = dev.max((self[(r, c)] - self[(c, r)].conj()).norm());
            }
        }
        dev
    }

    /// ‖A + A†‖_max.
    pub fn anti_hermiticity_deviation(&self) -> f64 {
        let mut dev = 0.0f64;
        for r in 0..self.dim {
            for c in r..self.dim {
                dev = dev.max((self[(r, c)] + self[(c, r)].conj()).norm());
            }
        }
        dev
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermiticity_deviation() <= 1e-12 * (1.0 + self.max_abs())
    }

    /// ‖U†U − I‖_max.
    pub fn unitarity_defect(&self) -> f64 {
        (&self.adjoint() * self).max_abs_diff(&Self::identity(self.dim))
    }

    /// Exact matrix-vector product, no renormalization.
    pub fn apply(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.dim {
            return Err(Error::DimMismatch {
                expected: self.dim,
                found: v.len(),
            });
        }
        Ok((0..self.dim)
            .map(|r| self.row(r).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// ⟨a|M|b⟩.
    pub fn sandwich(&self, a: &[Complex64], b: &[Complex64]) -> Result<Complex64> {
        if a.len() != self.dim {
            return Err(Error::DimMismatch {
                expected: self.dim,
                found: a.len(),
            });
        }
        let mb = self.apply(b)?;
        Ok(a.iter().zip(&mb).map(|(x, y)| x.conj() * y).sum())
    }

    /// AB − BA.
    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    /// AB + BA.
    pub fn anticommutator(&self, other: &Self) -> Self {
        &(self * other) + &(other * self)
    }

    pub fn powi(&self, exponent: u32) -> Self {
        let mut out = Self::identity(self.dim);
        for _ in 0..exponent {
            out = &out * self;
        }
        out
    }

    /// Sub-matrix on the given index list (rows and columns).
    pub fn principal_submatrix(&self, indices: &[usize]) -> Self {
        Self::from_fn(indices.len(), |r, c| self[(indices[r], indices[c])])
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    #[inline]
    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        &self.data[r * self.dim + c]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        &mut self.data[r * self.dim + c]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let n = self.dim;
        let mut out = ComplexMatrix::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let a = self[(r, k)];
                if a == ZERO {
                    continue;
                }
                let rhs_row = rhs.row(k);
                let out_row = &mut out.data[r * n..(r + 1) * n];
                for (o, b) in out_row.iter_mut().zip(rhs_row) {
                    *o += a * b;
                }
            }
        }
        out
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{})", self.dim, self.dim)?;
        for r in 0..self.dim {
            let row: Vec<String> = self
                .row(r)
                .iter()
                .map(|z| format!("{:+.6}{:+.6}i", z.re, z.im))
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// A matrix known to be unitary to 1e-10.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitaryOperator(ComplexMatrix);

impl UnitaryOperator {
    pub const UNITARITY_TOLERANCE: f64 = 1e-10;

    pub fn identity(dim: usize) -> Self {
        Self(ComplexMatrix::identity(dim))
    }

    pub fn try_from_matrix(m: ComplexMatrix) -> Result<Self> {
        let defect = m.unitarity_defect();
        if defect > Self::UNITARITY_TOLERANCE {
            return Err(Error::InvalidParameter(format!(
                "matrix is not unitary (defect {defect:e})"
            )));
        }
        Ok(Self(m))
    }

    pub(crate) fn from_matrix_unchecked(m: ComplexMatrix) -> Self {
        Self(m)
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn apply(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        self.0.apply(v)
    }

    /// U A U†.
    pub fn conjugate(&self, a: &ComplexMatrix) -> ComplexMatrix {
        &(&self.0 * a) * &self.0.adjoint()
    }

    pub fn compose(&self, other: &Self) -> Self {
        Self(&self.0 * &other.0)
    }

    pub fn unitarity_defect(&self) -> f64 {
        self.0.unitarity_defect()
    }
}

/// Eigenvalues in ascending order with eigenvectors stored as columns.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenSystem {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl EigenSystem {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvector(&self, k: usize) -> Vec<Complex64> {
        self.eigenvectors.column(k)
    }

    /// V Λ V†.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let v = &self.eigenvectors;
        let n = self.dim();
        ComplexMatrix::from_fn(n, |r, c| {
            (0..n)
                .map(|k| v[(r, k)] * self.eigenvalues[k] * v[(c, k)].conj())
                .sum()
        })
    }

    /// max_k ‖H v_k − λ_k v_k‖₂.
    pub fn max_residual(&self, h: &ComplexMatrix) -> f64 {
        (0..self.dim())
            .map(|k| {
                let vk = self.eigenvector(k);
                let hv = h.apply(&vk).expect("dimension checked by construction");
                hv.iter()
                    .zip(&vk)
                    .map(|(a, b)| (a - b * self.eigenvalues[k]).norm_sqr())
                    .sum::<f64>()
                    .sqrt()
            })
            .fold(0.0, f64::max)
    }

    /// ‖V†V − I‖_max.
    pub fn orthonormality_defect(&self) -> f64 {
        self.eigenvectors.unitarity_defect()
    }

    /// exp(−iHt) = V diag(e^{−iλ_k t}) V†.
    pub fn propagator(&self, t: f64) -> UnitaryOperator {
        let v = &self.eigenvectors;
        let n = self.dim();
        let phases: Vec<Complex64> = self
            .eigenvalues
            .iter()
            .map(|&l| Complex64::from_polar(1.0, -l * t))
            .collect();
        UnitaryOperator::from_matrix_unchecked(ComplexMatrix::from_fn(n, |r, c| {
            (0..n).map(|k| v[(r, k)] * phases[k] * v[(c, k)].conj()).sum()
        }))
    }

    /// Σ_k e^{−iλ_k t} |v_k⟩⟨v_k|ψ⟩ without forming the propagator.
    pub fn evolve(&self, t: f64, psi: &[Complex64]) -> Result<Vec<Complex64>> {
        let n = self.dim();
        if psi.len() != n {
            return Err(Error::DimMismatch {
                expected: n,
                found: psi.len(),
            });
        }
        let v = &self.eigenvectors;
        let coeffs: Vec<Complex64> = (0..n)
            .map(|k| {
                let overlap: Complex64 = (0..n).map(|r| v[(r, k)].conj() * psi[r]).sum();
                overlap * Complex64::from_polar(1.0, -self.eigenvalues[k] * t)
            })
            .collect();
        Ok((0..n)
            .map(|r| (0..n).map(|k| v[(r, k)] * coeffs[k]).sum())
            .collect())
    }
}

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations.
///
/// Eigenvalues come back ascending; each eigenvector has its largest
/// component real and non-negative (lowest index wins ties).
pub fn hermitian_eigen(h: &ComplexMatrix) -> Result<EigenSystem> {
    let deviation = h.hermiticity_deviation();
    if deviation > 1e-12 * (1.0 + h.max_abs()) {
        return Err(Error::NotHermitian { deviation });
    }
    let n = h.dim();
    // work on the exactly Hermitian part
    let mut a = ComplexMatrix::from_fn(n, |r, c| {
        if r == c {
            Complex64::new(h[(r, r)].re, 0.0)
        } else {
            (h[(r, c)] + h[(c, r)].conj()) * 0.5
        }
    });
    let mut v = ComplexMatrix::identity(n);
    let tolerance = JACOBI_OFF_DIAGONAL_TOLERANCE * a.frobenius_norm().powi(2);

    let mut converged = false;
    for _ in 0..=MAX_JACOBI_SWEEPS {
        if off_diagonal_mass(&a) <= tolerance {
            converged = true;
            break;
        }
        for p in 0..n.saturating_sub(1) {
            for q in p + 1..n {
                jacobi_rotate(&mut a, &mut v, p, q);
            }
        }
    }
    if !converged {
        return Err(Error::NoConvergence {
            sweeps: MAX_JACOBI_SWEEPS,
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re).then(i.cmp(&j)));
    let eigenvalues = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut eigenvectors = ComplexMatrix::from_fn(n, |r, c| v[(r, order[c])]);
    for c in 0..n {
        fix_phase(&mut eigenvectors, c);
    }
    Ok(EigenSystem {
        eigenvalues,
        eigenvectors,
    })
}

fn off_diagonal_mass(a: &ComplexMatrix) -> f64 {
    let n = a.dim();
    let mut mass = 0.0;
    for r in 0..n {
        for c in 0..n {
            if r != c {
                mass += a[(r, c)].norm_sqr();
            }
        }
    }
    mass
}

/// Annihilates a[p][q] with W = diag(1, e^{−iα}) · [[c, s], [−s, c]], where
/// a[p][q] = r e^{iα}, then applies A ← W†AW and V ← VW.
fn jacobi_rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let phase = apq / r;
    let phase_conj = phase.conj();
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;

    let theta = (aqq - app) / (2.0 * r);
    let t = if theta.is_infinite() {
        0.0
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    let n = a.dim();
    // columns: A ← A W
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * c - akq * (phase_conj * s);
        a[(k, q)] = akp * s + akq * (phase_conj * c);
    }
    // rows: A ← W† A
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = apk * c - aqk * (phase * s);
        a[(q, k)] = apk * s + aqk * (phase * c);
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)] = Complex64::new(app - t * r, 0.0);
    a[(q, q)] = Complex64::new(aqq + t * r, 0.0);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * c - vkq * (phase_conj * s);
        v[(k, q)] = vkp * s + vkq * (phase_conj * c);
    }
}

fn fix_phase(vectors: &mut ComplexMatrix, col: usize) {
    let n = vectors.dim();
    let largest = (0..n).map(|r| vectors[(r, col)].norm()).fold(0.0, f64::max);
    if largest == 0.0 {
        return;
    }
    let pivot = (0..n)
        .find(|&r| vectors[(r, col)].norm() >= largest * (1.0 - PHASE_TIE_WINDOW))
        .expect("some component attains the maximum");
    let z = vectors[(pivot, col)];
    let rotate = z.conj() / z.norm();
    for r in 0..n {
        vectors[(r, col)] *= rotate;
    }
    vectors[(pivot, col)] = Complex64::new(vectors[(pivot, col)].re.abs(), 0.0);
}

/// exp(A) for anti-Hermitian A by scaling and squaring a truncated Taylor
/// series. The scale is chosen so that ‖A/2^s‖₁ ≤ 0.5.
pub fn expm_antihermitian(a: &ComplexMatrix) -> Result<UnitaryOperator> {
    let deviation = a.anti_hermiticity_deviation();
    if deviation > 1e-12 * (1.0 + a.max_abs()) {
        return Err(Error::NotAntiHermitian { deviation });
    }
    Ok(UnitaryOperator::from_matrix_unchecked(expm_taylor(a)))
}

/// Scaling and squaring without the structural check. Accurate for any
/// matrix whose powers do not grow much faster than ‖A‖^k/k!.
pub(crate) fn expm_taylor(a: &ComplexMatrix) -> ComplexMatrix {
    let n = a.dim();
    let norm = a.one_norm();
    let mut squarings = 0u32;
    let mut scale = 1.0;
    while norm * scale > 0.5 {
        scale *= 0.5;
        squarings += 1;
    }
    let x = a.scale_real(scale);

    let mut sum = ComplexMatrix::identity(n);
    let mut term = ComplexMatrix::identity(n);
    for k in 1..=30 {
        term = (&term * &x).scale_real(1.0 / k as f64);
        sum = &sum + &term;
        if term.max_abs() <= 1e-18 {
            break;
        }
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_hermitian(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(n);
        for r in 0..n {
            m[(r, r)] = c(rng.gen_range(-1.0..1.0), 0.0);
            for col in r + 1..n {
                let z = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                m[(r, col)] = z;
                m[(col, r)] = z.conj();
            }
        }
        m
    }

    #[test]
    fn pauli_x_spectrum() {
        let h = ComplexMatrix::from_rows(&[vec![c(0., 0.), c(1., 0.)], vec![c(1., 0.), c(0., 0.)]]).unwrap();
        let eig = hermitian_eigen(&h).unwrap();
        assert!((eig.eigenvalues[0] + 1.0).abs() < 1e-14);
        assert!((eig.eigenvalues[1] - 1.0).abs() < 1e-14);
        // largest component real and non-negative, lowest index on ties
        assert!(eig.eigenvectors[(0, 0)].im == 0.0 && eig.eigenvectors[(0, 0)].re > 0.0);
        assert!(eig.eigenvectors[(0, 1)].im == 0.0 && eig.eigenvectors[(0, 1)].re > 0.0);
    }

    #[test]
    fn rejects_non_hermitian() {
        let h = ComplexMatrix::from_rows(&[vec![c(0., 0.), c(1., 0.)], vec![c(0., 0.), c(0., 0.)]]).unwrap();
        assert!(matches!(hermitian_eigen(&h), Err(Error::NotHermitian { .. })));
        assert!(matches!(
            expm_antihermitian(&h),
            Err(Error::NotAntiHermitian { .. })
        ));
    }

    #[test]
    fn zero_and_one_by_one() {
        let eig = hermitian_eigen(&ComplexMatrix::zeros(4)).unwrap();
        assert_eq!(eig.eigenvalues, vec![0.0; 4]);
        let one = ComplexMatrix::from_diagonal(&[c(3.5, 0.0)]);
        assert_eq!(hermitian_eigen(&one).unwrap().eigenvalues, vec![3.5]);
    }

    #[test]
    fn random_hermitian_reconstructs() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in [2, 3, 7, 20, 51] {
            let h = random_hermitian(&mut rng, n);
            let eig = hermitian_eigen(&h).unwrap();
            let scale = h.frobenius_norm();
            assert!(eig.max_residual(&h) <= 1e-11 * scale, "residual n={n}");
            assert!(eig.orthonormality_defect() <= 1e-11, "orthonormality n={n}");
            assert!(eig.reconstruct().max_abs_diff(&h) <= 1e-10 * (1.0 + h.max_abs()));
            assert!(eig.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn deterministic_output() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let h = random_hermitian(&mut rng, 17);
        let a = hermitian_eigen(&h).unwrap();
        let b = hermitian_eigen(&h).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn expm_zero_is_identity() {
        let u = expm_antihermitian(&ComplexMatrix::zeros(5)).unwrap();
        assert_eq!(u.matrix(), &ComplexMatrix::identity(5));
    }

    #[test]
    fn expm_planar_rotation() {
        let a = ComplexMatrix::from_rows(&[
            vec![c(0., 0.), c(FRAC_PI_2, 0.)],
            vec![c(-FRAC_PI_2, 0.), c(0., 0.)],
        ])
        .unwrap();
        let u = expm_antihermitian(&a).unwrap();
        let expected =
            ComplexMatrix::from_rows(&[vec![c(0., 0.), c(1., 0.)], vec![c(-1., 0.), c(0., 0.)]]).unwrap();
        assert!(u.matrix().max_abs_diff(&expected) < 1e-14);
    }

    #[test]
    fn expm_matches_eigen_path() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in [2, 5, 11, 21] {
            let h = random_hermitian(&mut rng, n);
            let t = rng.gen_range(0.1..4.0);
            let a = h.scale(c(0.0, -t));
            let u = expm_antihermitian(&a).unwrap();
            assert!(u.unitarity_defect() <= 1e-10);
            let eig = hermitian_eigen(&h).unwrap();
            assert!(u.matrix().max_abs_diff(eig.propagator(t).matrix()) <= 1e-9);
        }
    }

    #[test]
    fn apply_identity_and_unitary_norm() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let v: Vec<Complex64> = (0..6)
            .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        assert_eq!(ComplexMatrix::identity(6).apply(&v).unwrap(), v);
        let h = random_hermitian(&mut rng, 6);
        let u = expm_antihermitian(&h.scale(c(0.0, -PI))).unwrap();
        let norm = |x: &[Complex64]| x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        assert!((norm(&u.apply(&v).unwrap()) - norm(&v)).abs() <= 1e-12);
        assert!(matches!(
            ComplexMatrix::identity(3).apply(&v),
            Err(Error::DimMismatch {
                expected: 3,
                found: 6
            })
        ));
    }

    #[test]
    fn evolve_matches_propagator() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let h = random_hermitian(&mut rng, 8);
        let eig = hermitian_eigen(&h).unwrap();
        let v: Vec<Complex64> = (0..8).map(|k| c(k as f64, 1.0)).collect();
        let a = eig.evolve(0.7, &v).unwrap();
        let b = eig.propagator(0.7).apply(&v).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).norm() < 1e-12);
        }
    }
}
