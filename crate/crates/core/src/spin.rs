//! Spin-j operator matrices and the quadratic Hamiltonians built from them.
//!
//! Basis index `n` runs 0..=2j and labels |j, m = j − n⟩, so index 0 is the
//! fully polarized "all atoms up" state.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{self, ComplexMatrix, EigenSystem, UnitaryOperator};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Hilbert space of a spin j = two_j / 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpinSpace {
    two_j: u32,
}

impl SpinSpace {
    pub fn new(two_j: u32) -> Self {
        Self { two_j }
    }

    /// N two-level atoms span the symmetric spin j = N/2.
    pub fn from_atoms(atoms: u32) -> Self {
        Self::new(atoms)
    }

    pub fn two_j(self) -> u32 {
        self.two_j
    }

    pub fn j(self) -> f64 {
        f64::from(self.two_j) / 2.0
    }

    pub fn dim(self) -> usize {
        self.two_j as usize + 1
    }

    /// 2m for basis index n.
    pub fn two_m(self, n: usize) -> i64 {
        i64::from(self.two_j) - 2 * n as i64
    }

    pub fn m(self, n: usize) -> f64 {
        self.two_m(n) as f64 / 2.0
    }

    pub fn index_of_two_m(self, two_m: i64) -> Option<usize> {
        let two_j = i64::from(self.two_j);
        if two_m.abs() > two_j || (two_j - two_m) % 2 != 0 {
            return None;
        }
        Some(((two_j - two_m) / 2) as usize)
    }

    /// ⟨j, m+1| J₊ |j, m⟩ with m = m(n), i.e. the J₊ element taking index n
    /// to n − 1. Equals √(j(j+1) − m(m+1)) = √(n (2j − n + 1)).
    pub fn raising_coefficient(self, n: usize) -> f64 {
        if n == 0 || n > self.two_j as usize {
            return 0.0;
        }
        ((n as f64) * (self.two_j as f64 - n as f64 + 1.0)).sqrt()
    }
}

/// Cartesian axis label.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];
}

/// Dense J₊, J₋, Jx, Jy, Jz and J² over one [`SpinSpace`].
#[derive(Clone, Debug)]
pub struct SpinOperators {
    pub space: SpinSpace,
    pub j_plus: ComplexMatrix,
    pub j_minus: ComplexMatrix,
    pub j_x: ComplexMatrix,
    pub j_y: ComplexMatrix,
    pub j_z: ComplexMatrix,
    pub j_squared: ComplexMatrix,
}

impl SpinOperators {
    pub fn component(&self, axis: Axis) -> &ComplexMatrix {
        match axis {
            Axis::X => &self.j_x,
            Axis::Y => &self.j_y,
            Axis::Z => &self.j_z,
        }
    }

    /// n·J for a real 3-vector n.
    pub fn along(&self, n: [f64; 3]) -> ComplexMatrix {
        let x = self.j_x.scale_real(n[0]);
        let y = self.j_y.scale_real(n[1]);
        let z = self.j_z.scale_real(n[2]);
        &(&x + &y) + &z
    }

    /// (J_k J_l + J_l J_k) / 2.
    pub fn symmetrized(&self, k: Axis, l: Axis) -> ComplexMatrix {
        self.component(k)
            .anticommutator(self.component(l))
            .scale_real(0.5)
    }
}

pub fn build_spin_ops(space: SpinSpace) -> SpinOperators {
    let dim = space.dim();
    let mut j_plus = ComplexMatrix::zeros(dim);
    for n in 1..dim {
        j_plus[(n - 1, n)] = Complex64::new(space.raising_coefficient(n), 0.0);
    }
    let j_minus = j_plus.adjoint();
    let j_x = (&j_plus + &j_minus).scale_real(0.5);
    let j_y = (&j_plus - &j_minus).scale(Complex64::new(0.0, -0.5));
    let j_z = ComplexMatrix::from_diagonal(
        &(0..dim)
            .map(|n| Complex64::new(space.m(n), 0.0))
            .collect::<Vec<_>>(),
    );
    let j = space.j();
    let j_squared = ComplexMatrix::identity(dim).scale_real(j * (j + 1.0));
    SpinOperators {
        space,
        j_plus,
        j_minus,
        j_x,
        j_y,
        j_z,
        j_squared,
    }
}

/// Catalog of quadratic spin Hamiltonians plus the pseudo-Hermitian Λ.
#[derive(Clone, Debug, PartialEq)]
pub enum HamiltonianSpec {
    /// ζ (JxJy + JyJx), two-axis countertwisting.
    TwoAxis { zeta: f64 },
    /// −Γ Jz², one-axis twisting.
    OneAxis { gamma: f64 },
    /// G₁(J₊² + J₋²) + G₂(J₊J₋ + J₋J₊).
    Lipkin { g1: f64, g2: f64 },
    /// Σ_kl c_kl (J_k J_l + J_l J_k)/2 with symmetric c.
    Quadratic { coefficients: [[f64; 3]; 3] },
    /// (e^ε J₊ + e^{−ε} J₋)/2. Not Hermitian.
    LambdaOp { epsilon: f64 },
}

impl HamiltonianSpec {
    pub fn is_hermitian(&self) -> bool {
        !matches!(self, HamiltonianSpec::LambdaOp { .. })
    }

    pub fn validate(&self) -> Result<()> {
        let finite = |x: f64, name: &str| {
            if x.is_finite() {
                Ok(())
            } else {
                Err(Error::InvalidParameter(format!("{name} must be finite")))
            }
        };
        match *self {
            HamiltonianSpec::TwoAxis { zeta } => finite(zeta, "zeta"),
            HamiltonianSpec::OneAxis { gamma } => finite(gamma, "gamma"),
            HamiltonianSpec::Lipkin { g1, g2 } => finite(g1, "g1").and(finite(g2, "g2")),
            HamiltonianSpec::LambdaOp { epsilon } => finite(epsilon, "epsilon"),
            HamiltonianSpec::Quadratic { coefficients } => {
                for (r, row) in coefficients.iter().enumerate() {
                    for (c, &v) in row.iter().enumerate() {
                        finite(v, "quadratic coefficient")?;
                        if c > r && v != coefficients[c][r] {
                            return Err(Error::NonSymmetricCoefficients { row: r, col: c });
                        }
                    }
                }
                Ok(())
            }
        }
    }
}

pub fn build_hamiltonian(space: SpinSpace, spec: &HamiltonianSpec) -> Result<ComplexMatrix> {
    spec.validate()?;
    let ops = build_spin_ops(space);
    build_hamiltonian_with(&ops, spec)
}

/// Same as [`build_hamiltonian`] but reuses prebuilt operators.
pub fn build_hamiltonian_with(ops: &SpinOperators, spec: &HamiltonianSpec) -> Result<ComplexMatrix> {
    spec.validate()?;
    let h = match *spec {
        HamiltonianSpec::TwoAxis { zeta } => ops.j_x.anticommutator(&ops.j_y).scale_real(zeta),
        HamiltonianSpec::OneAxis { gamma } => (&ops.j_z * &ops.j_z).scale_real(-gamma),
        HamiltonianSpec::Lipkin { g1, g2 } => {
            let pair = &(&ops.j_plus * &ops.j_plus) + &(&ops.j_minus * &ops.j_minus);
            let hop = ops.j_plus.anticommutator(&ops.j_minus);
            &pair.scale_real(g1) + &hop.scale_real(g2)
        }
        HamiltonianSpec::Quadratic { coefficients } => {
            let mut h = ComplexMatrix::zeros(ops.space.dim());
            for (k, &ak) in Axis::ALL.iter().enumerate() {
                for (l, &al) in Axis::ALL.iter().enumerate() {
                    let c = coefficients[k][l];
                    if c != 0.0 {
                        h = &h + &ops.symmetrized(ak, al).scale_real(c);
                    }
                }
            }
            h
        }
        HamiltonianSpec::LambdaOp { epsilon } => {
            &ops.j_plus.scale_real(0.5 * epsilon.exp()) + &ops.j_minus.scale_real(0.5 * (-epsilon).exp())
        }
    };
    debug_assert!(!spec.is_hermitian() || h.hermiticity_deviation() <= 1e-13 * (1.0 + h.max_abs()));
    Ok(h)
}

/// Deviations found by [`lambda_similarity_check`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LambdaReport {
    /// ‖O Λ O⁻¹ − Jx‖_max with O = exp(−εJz).
    pub max_dev_similarity: f64,
    /// ‖metric · Λ · metric⁻¹ − Λ†‖_max with metric = exp(−2εJz).
    pub max_dev_metric: f64,
}

/// Largest |ε| accepted by the Λ routines.
pub const LAMBDA_MAX_EPSILON: f64 = 20.0;

fn check_lambda_epsilon(space: SpinSpace, epsilon: f64) -> Result<()> {
    if !epsilon.is_finite() || epsilon.abs() > LAMBDA_MAX_EPSILON {
        return Err(Error::InvalidParameter(format!(
            "|epsilon| must be at most {LAMBDA_MAX_EPSILON}, got {epsilon}"
        )));
    }
    // exp(2|ε| j) must stay well inside f64 range
    if 2.0 * epsilon.abs() * space.j() > 700.0 {
        return Err(Error::Overflow {
            eps: epsilon,
            two_j: space.two_j(),
        });
    }
    Ok(())
}

/// Diagonal of exp(scale · Jz), evaluated entry by entry.
fn exp_jz_diagonal(space: SpinSpace, scale: f64) -> Vec<f64> {
    (0..space.dim()).map(|n| (scale * space.m(n)).exp()).collect()
}

/// Checks the two similarity identities of Λ = (e^ε J₊ + e^{−ε} J₋)/2:
/// O Λ O⁻¹ = Jx for O = exp(−εJz), and metric Λ metric⁻¹ = Λ† for the
/// metric operator exp(−2εJz). Both exponentials are diagonal and exact.
pub fn lambda_similarity_check(space: SpinSpace, epsilon: f64) -> Result<LambdaReport> {
    check_lambda_epsilon(space, epsilon)?;
    let ops = build_spin_ops(space);
    let lambda = build_hamiltonian_with(&ops, &HamiltonianSpec::LambdaOp { epsilon })?;
    let lambda_dag = lambda.adjoint();

    let o = exp_jz_diagonal(space, -epsilon);
    let o_inv = exp_jz_diagonal(space, epsilon);
    let metric = exp_jz_diagonal(space, -2.0 * epsilon);
    let metric_inv = exp_jz_diagonal(space, 2.0 * epsilon);

    let dim = space.dim();
    let mut max_dev_similarity = 0.0f64;
    let mut max_dev_metric = 0.0f64;
    for r in 0..dim {
        for c in 0..dim {
            let l = lambda[(r, c)];
            let similar = l * (o[r] * o_inv[c]);
            max_dev_similarity = max_dev_similarity.max((similar - ops.j_x[(r, c)]).norm());
            let metric_conj = l * (metric[r] * metric_inv[c]);
            max_dev_metric = max_dev_metric.max((metric_conj - lambda_dag[(r, c)]).norm());
        }
    }
    Ok(LambdaReport {
        max_dev_similarity,
        max_dev_metric,
    })
}

/// Real spectrum and right eigenvectors of Λ, obtained through its exact
/// similarity to Jx: Λ = O⁻¹ Jx O, so Λ (O⁻¹ v) = λ (O⁻¹ v).
///
/// The returned columns are not normalized (Λ is not normal).
pub fn lambda_eigensystem(space: SpinSpace, epsilon: f64) -> Result<(Vec<f64>, ComplexMatrix)> {
    check_lambda_epsilon(space, epsilon)?;
    let ops = build_spin_ops(space);
    let eig = linalg::hermitian_eigen(&ops.j_x)?;
    let o_inv = exp_jz_diagonal(space, epsilon);
    let vectors = ComplexMatrix::from_fn(space.dim(), |r, c| eig.eigenvectors[(r, c)] * o_inv[r]);
    Ok((eig.eigenvalues, vectors))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    /// j − m even.
    Even,
    /// j − m odd.
    Odd,
}

/// One invariant subspace of a Δm ∈ {0, ±2} operator.
#[derive(Clone, Debug)]
pub struct ParityBlock {
    pub parity: Parity,
    /// Basis indices n = j − m of the block, ascending.
    pub indices: Vec<usize>,
    /// 2m for each entry of `indices`.
    pub two_m: Vec<i64>,
    pub matrix: ComplexMatrix,
}

/// Split of an operator into its (j − m)-even and (j − m)-odd blocks.
#[derive(Clone, Debug)]
pub struct ParityBlocks {
    pub space: SpinSpace,
    /// Even block first; the odd block is absent only for j = 0.
    pub blocks: Vec<ParityBlock>,
}

impl ParityBlocks {
    pub fn even(&self) -> &ParityBlock {
        &self.blocks[0]
    }

    pub fn odd(&self) -> Option<&ParityBlock> {
        self.blocks.get(1)
    }

    /// Diagonalizes each block and re-embeds the eigenvectors into the full
    /// space. Eigenvalues are merged in ascending order; on exact ties the
    /// even block comes first.
    pub fn eigen(&self) -> Result<EigenSystem> {
        let dim = self.space.dim();
        let mut pairs: Vec<(f64, usize, Vec<Complex64>)> = Vec::with_capacity(dim);
        for (b, block) in self.blocks.iter().enumerate() {
            let eig = linalg::hermitian_eigen(&block.matrix)?;
            for k in 0..eig.dim() {
                let mut full = vec![Complex64::new(0.0, 0.0); dim];
                for (local, &n) in block.indices.iter().enumerate() {
                    full[n] = eig.eigenvectors[(local, k)];
                }
                pairs.push((eig.eigenvalues[k], b, full));
            }
        }
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        let eigenvalues = pairs.iter().map(|p| p.0).collect();
        let eigenvectors = ComplexMatrix::from_fn(dim, |r, c| pairs[c].2[r]);
        Ok(EigenSystem {
            eigenvalues,
            eigenvectors,
        })
    }
}

/// Splits `h` into parity blocks. Fails if `h` couples indices whose
/// separation is neither 0 nor 2 beyond 1e-14 · ‖h‖_max.
pub fn parity_blocks(space: SpinSpace, h: &ComplexMatrix) -> Result<ParityBlocks> {
    let dim = space.dim();
    if h.dim() != dim {
        return Err(Error::DimMismatch {
            expected: dim,
            found: h.dim(),
        });
    }
    let threshold = 1e-14 * h.max_abs();
    for r in 0..dim {
        for c in 0..dim {
            let gap = r.abs_diff(c);
            if gap != 0 && gap != 2 && h[(r, c)].norm() > threshold {
                return Err(Error::NotBlockStructured {
                    row: r,
                    col: c,
                    value: h[(r, c)].norm(),
                });
            }
        }
    }
    let mut blocks = Vec::with_capacity(2);
    for (parity, start) in [(Parity::Even, 0usize), (Parity::Odd, 1usize)] {
        let indices: Vec<usize> = (start..dim).step_by(2).collect();
        if indices.is_empty() {
            continue;
        }
        blocks.push(ParityBlock {
            parity,
            two_m: indices.iter().map(|&n| space.two_m(n)).collect(),
            matrix: h.principal_submatrix(&indices),
            indices,
        });
    }
    Ok(ParityBlocks { space, blocks })
}

/// exp(−i · angle · (axis · J)).
pub fn rotation_operator(space: SpinSpace, axis: [f64; 3], angle: f64) -> Result<UnitaryOperator> {
    let norm = axis.iter().map(|a| a * a).sum::<f64>().sqrt();
    if !norm.is_finite() || (norm - 1.0).abs() > 1e-12 {
        return Err(Error::BadAxis { norm });
    }
    if !angle.is_finite() {
        return Err(Error::InvalidParameter("rotation angle must be finite".into()));
    }
    let ops = build_spin_ops(space);
    let generator = ops.along(axis).scale(-I * angle);
    linalg::expm_antihermitian(&generator)
}
