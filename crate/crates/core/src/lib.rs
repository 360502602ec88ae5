//! Exact simulation of collective spin systems (N two-level atoms, j = N/2).
//!
//! The crate prepares spin coherent states, evolves them under quadratic
//! spin Hamiltonians (two-axis countertwisting, one-axis twisting, Lipkin)
//! and measures squeezing in the frame of the mean spin. Everything is dense
//! and deterministic; the only numerical kernels are a complex Jacobi
//! eigensolver and a scaling-and-squaring matrix exponential.

pub mod dynamics;
pub mod error;
pub mod linalg;
pub mod metrics;
pub mod spin;
pub mod states;
pub mod sweep;
pub mod twoatom;

pub use num_complex::Complex64;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, EigenSystem, UnitaryOperator};
pub use spin::{HamiltonianSpec, SpinOperators, SpinSpace};
pub use states::{CoherentParams, StateVector};
