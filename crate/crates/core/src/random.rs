//! Random states, operators and rotations for sampling-based checks.

use nalgebra::{Matrix3, UnitQuaternion, Vector3};
use rand::Rng;
use rand_distr::StandardNormal;

use crate::linalg::{Complex64, ComplexMatrix};
use crate::spin::{self, BlochVector};
use crate::state::DensityMatrix;

fn normal<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.sample(StandardNormal)
}

/// Matrix with i.i.d. standard complex Gaussian entries.
pub fn ginibre<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| Complex64::new(normal(rng), normal(rng)))
}

/// Random Hermitian matrix `(G + G†)/2`.
pub fn hermitian<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> ComplexMatrix {
    let g = ginibre(dim, dim, rng);
    g.add(&g.adjoint()).expect("square").scale(Complex64::new(0.5, 0.0))
}

/// Uniformly distributed unit Bloch vector.
pub fn haar_bloch<R: Rng + ?Sized>(rng: &mut R) -> BlochVector {
    loop {
        let v = Vector3::new(normal(rng), normal(rng), normal(rng));
        let norm = v.norm();
        if norm > 1e-8 {
            return BlochVector::new(v[0] / norm, v[1] / norm, v[2] / norm);
        }
    }
}

/// Haar-random pure state vector on `n` qubits.
pub fn pure_vector<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<Complex64> {
    let d = 1usize << n;
    (0..d).map(|_| Complex64::new(normal(rng), normal(rng))).collect()
}

pub fn pure_state<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DensityMatrix {
    DensityMatrix::from_pure(&pure_vector(n, rng)).expect("nonzero Gaussian vector")
}

/// Hilbert-Schmidt random density matrix `GG†/Tr(GG†)` of the given rank.
pub fn density_matrix_with_rank<R: Rng + ?Sized>(n: usize, rank: usize, rng: &mut R) -> DensityMatrix {
    let d = 1usize << n;
    let g = ginibre(d, rank.clamp(1, d), rng);
    let m = &g * &g.adjoint();
    let tr = m.trace().re;
    DensityMatrix::from_trusted(m.scale(Complex64::new(1.0 / tr, 0.0)))
}

/// Full-rank Hilbert-Schmidt random density matrix.
pub fn density_matrix<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DensityMatrix {
    density_matrix_with_rank(n, 1 << n, rng)
}

/// Random pure product state with Haar-distributed factors.
pub fn product_state<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DensityMatrix {
    let blochs: Vec<BlochVector> = (0..n).map(|_| haar_bloch(rng)).collect();
    spin::product_state(&blochs).expect("unit Bloch vectors")
}

/// Mixture of `k` random pure product states with uniform random weights.
pub fn product_mixture<R: Rng + ?Sized>(n: usize, k: usize, rng: &mut R) -> DensityMatrix {
    let states: Vec<DensityMatrix> = (0..k.max(1)).map(|_| product_state(n, rng)).collect();
    let weights: Vec<f64> = states.iter().map(|_| rng.random::<f64>() + 1e-3).collect();
    DensityMatrix::mixture(&weights, &states).expect("positive weights")
}

/// Uniformly distributed rotation matrix.
pub fn rotation<R: Rng + ?Sized>(rng: &mut R) -> Matrix3<f64> {
    let q = nalgebra::Quaternion::new(normal(rng), normal(rng), normal(rng), normal(rng));
    *UnitQuaternion::from_quaternion(q).to_rotation_matrix().matrix()
}

/// Uniform point in the ball of the given radius.
pub fn ball_point<R: Rng + ?Sized>(radius: f64, rng: &mut R) -> Vector3<f64> {
    let dir = haar_bloch(rng).0;
    let r = radius * rng.random::<f64>().cbrt();
    Vector3::from(dir) * r
}
