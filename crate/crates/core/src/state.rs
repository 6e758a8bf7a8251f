//! Validated density matrices over qubit registers.

use std::ops::Deref;

use crate::error::{Error, Result};
use crate::linalg::{self, Complex64, ComplexMatrix};

/// Default tolerance for Hermiticity, unit trace and positivity checks.
pub const STATE_TOL: f64 = 1e-8;

/// Hermitian, positive semidefinite, unit-trace matrix of dimension `2^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    n_qubits: usize,
}

impl DensityMatrix {
    /// Validates `matrix` with [`STATE_TOL`].
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        Self::with_tolerance(matrix, STATE_TOL)
    }

    /// Validates `matrix`; the error message names the first check that failed.
    pub fn with_tolerance(matrix: ComplexMatrix, tol: f64) -> Result<Self> {
        let n_qubits = matrix.n_qubits()?;
        let herm = matrix.hermiticity_error();
        if herm > tol {
            return Err(Error::InvalidState(format!("not Hermitian (max deviation {herm:e})")));
        }
        let tr = matrix.trace();
        if (tr - Complex64::new(1.0, 0.0)).norm() > tol {
            return Err(Error::InvalidState(format!("trace is {} + {}i, expected 1", tr.re, tr.im)));
        }
        let min = linalg::min_eigenvalue(&matrix)?;
        if min < -tol {
            return Err(Error::InvalidState(format!(
                "not positive semidefinite (min eigenvalue {min:e})"
            )));
        }
        Ok(DensityMatrix { matrix, n_qubits })
    }

    /// Wraps a matrix that is a state by construction.
    pub(crate) fn from_trusted(matrix: ComplexMatrix) -> Self {
        let n_qubits = matrix.n_qubits().expect("trusted state must be a qubit register");
        debug_assert!(matrix.hermiticity_error() < 1e-9);
        DensityMatrix { matrix, n_qubits }
    }

    /// |ψ⟩⟨ψ| for a state vector, normalized.
    pub fn from_pure(psi: &[Complex64]) -> Result<Self> {
        linalg::qubits_for_dim(psi.len())?;
        let norm: f64 = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::InvalidState("state vector has zero or non-finite norm".into()));
        }
        let unit: Vec<Complex64> = psi.iter().map(|z| z / norm).collect();
        Ok(Self::from_trusted(ComplexMatrix::projector(&unit)))
    }

    pub fn maximally_mixed(n_qubits: usize) -> Self {
        let d = 1usize << n_qubits;
        Self::from_trusted(ComplexMatrix::identity(d).scale(Complex64::new(1.0 / d as f64, 0.0)))
    }

    /// Convex combination `Σ w_i ρ_i`; weights must be nonnegative and are renormalized.
    pub fn mixture(weights: &[f64], states: &[DensityMatrix]) -> Result<Self> {
        if weights.len() != states.len() || states.is_empty() {
            return Err(Error::Domain("mixture needs one weight per state".into()));
        }
        if weights.iter().any(|&w| !(w >= 0.0 && w.is_finite())) {
            return Err(Error::Domain("mixture weights must be finite and nonnegative".into()));
        }
        let total: f64 = weights.iter().sum();
        if total <= 0.0 {
            return Err(Error::Domain("mixture weights sum to zero".into()));
        }
        let d = states[0].dim();
        let mut acc = ComplexMatrix::zeros(d, d);
        for (w, s) in weights.iter().zip(states) {
            if s.dim() != d {
                return Err(Error::DimensionMismatch { expected: d, got: s.dim() });
            }
            acc = acc.add(&s.matrix.scale(Complex64::new(w / total, 0.0)))?;
        }
        Ok(Self::from_trusted(acc))
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// Tr(ρ²)
    pub fn purity(&self) -> f64 {
        self.matrix.as_slice().iter().map(|z| z.norm_sqr()).sum()
    }
}

impl Deref for DensityMatrix {
    type Target = ComplexMatrix;

    fn deref(&self) -> &ComplexMatrix {
        &self.matrix
    }
}
