//! Collective spin operators, reference states and moment extraction.
//!
//! `J_l = ½ Σ_k σ_l^(k)`. Basis state `|0⟩` is spin up (`σ_z = +1`).

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use nalgebra::{Matrix3, Vector3};

use crate::error::{Error, Result};
use crate::linalg::{self, Complex64, ComplexMatrix};
use crate::state::DensityMatrix;

/// Largest register handled by the dense routines.
pub const MAX_QUBITS: usize = 12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub fn index(self) -> usize {
        match self {
            Axis::X => 0,
            Axis::Y => 1,
            Axis::Z => 2,
        }
    }

    /// The two remaining axes, in x, y, z order.
    pub fn others(self) -> (Axis, Axis) {
        match self {
            Axis::X => (Axis::Y, Axis::Z),
            Axis::Y => (Axis::X, Axis::Z),
            Axis::Z => (Axis::X, Axis::Y),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Axis::X => "x",
            Axis::Y => "y",
            Axis::Z => "z",
        }
    }

    pub fn pauli(self) -> Pauli {
        match self {
            Axis::X => Pauli::X,
            Axis::Y => Pauli::Y,
            Axis::Z => Pauli::Z,
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Axis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "x" => Ok(Axis::X),
            "y" => Ok(Axis::Y),
            "z" => Ok(Axis::Z),
            _ => Err(Error::Domain(format!("unknown axis '{s}'"))),
        }
    }
}

/// Single-qubit Pauli operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    /// Action on a computational basis bit: `σ|b⟩ = amp |b'⟩`.
    pub fn apply(self, bit: usize) -> (usize, Complex64) {
        match (self, bit) {
            (Pauli::I, b) => (b, Complex64::new(1.0, 0.0)),
            (Pauli::X, b) => (b ^ 1, Complex64::new(1.0, 0.0)),
            (Pauli::Y, 0) => (1, Complex64::new(0.0, 1.0)),
            (Pauli::Y, _) => (0, Complex64::new(0.0, -1.0)),
            (Pauli::Z, 0) => (0, Complex64::new(1.0, 0.0)),
            (Pauli::Z, _) => (1, Complex64::new(-1.0, 0.0)),
        }
    }

    pub fn matrix(self) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(2, 2);
        for col in 0..2 {
            let (row, amp) = self.apply(col);
            m[(row, col)] = amp;
        }
        m
    }
}

/// Dense matrix of `coeff · ⊗_q P_q` over `n` qubits; unlisted qubits carry the identity.
pub fn pauli_string(n: usize, factors: &[(usize, Pauli)], coeff: f64) -> ComplexMatrix {
    let d = 1usize << n;
    let mut m = ComplexMatrix::zeros(d, d);
    for col in 0..d {
        let (row, amp) = apply_string(n, factors, col);
        m[(row, col)] += amp * coeff;
    }
    m
}

fn apply_string(n: usize, factors: &[(usize, Pauli)], col: usize) -> (usize, Complex64) {
    let mut row = col;
    let mut amp = Complex64::new(1.0, 0.0);
    for &(q, p) in factors {
        let shift = n - 1 - q;
        let (bit, a) = p.apply(row >> shift & 1);
        row = (row & !(1 << shift)) | (bit << shift);
        amp *= a;
    }
    (row, amp)
}

/// Row-sparse operator used for fast expectation values.
#[derive(Debug, Clone)]
pub(crate) struct SparseOp {
    rows: Vec<Vec<(usize, Complex64)>>,
}

impl SparseOp {
    fn collective(axis: Axis, n: usize) -> Self {
        let d = 1usize << n;
        let half = Complex64::new(0.5, 0.0);
        let rows = (0..d)
            .map(|r| {
                if axis == Axis::Z {
                    let up = n as f64 - 2.0 * r.count_ones() as f64;
                    return vec![(r, Complex64::new(up / 2.0, 0.0))];
                }
                let mut entries: Vec<(usize, Complex64)> = (0..n)
                    .map(|q| {
                        let mask = 1 << (n - 1 - q);
                        let c = r ^ mask;
                        // entry (r, c) = ⟨r|σ|c⟩ / 2
                        let (_, amp) = axis.pauli().apply(c >> (n - 1 - q) & 1);
                        (c, amp * half)
                    })
                    .collect();
                entries.sort_by_key(|e| e.0);
                entries
            })
            .collect();
        SparseOp { rows }
    }

    fn product(&self, other: &SparseOp) -> SparseOp {
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut acc: Vec<(usize, Complex64)> = Vec::new();
                for &(k, a) in row {
                    for &(c, b) in &other.rows[k] {
                        acc.push((c, a * b));
                    }
                }
                acc.sort_by_key(|e| e.0);
                let mut merged: Vec<(usize, Complex64)> = Vec::with_capacity(acc.len());
                for (c, v) in acc {
                    match merged.last_mut() {
                        Some(last) if last.0 == c => last.1 += v,
                        _ => merged.push((c, v)),
                    }
                }
                merged.retain(|e| e.1 != ZERO);
                merged
            })
            .collect();
        SparseOp { rows }
    }

    /// Tr(ρ A)
    pub(crate) fn expectation(&self, rho: &ComplexMatrix) -> Complex64 {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |&(c, v)| v * rho[(c, r)]))
            .sum()
    }

    fn to_dense(&self) -> ComplexMatrix {
        let d = self.rows.len();
        let mut m = ComplexMatrix::zeros(d, d);
        for (r, row) in self.rows.iter().enumerate() {
            for &(c, v) in row {
                m[(r, c)] = v;
            }
        }
        m
    }
}

/// Collective operators and their pairwise products for one register size,
/// built once and shared read-only.
#[derive(Debug)]
pub(crate) struct CollectiveOps {
    j: [SparseOp; 3],
    /// `jj[k][l]` = J_k J_l for k ≤ l.
    jj: [[Option<SparseOp>; 3]; 3],
}

impl CollectiveOps {
    pub(crate) fn get(n: usize) -> Arc<CollectiveOps> {
        static CACHE: OnceLock<Mutex<HashMap<usize, Arc<CollectiveOps>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(ops) = cache.lock().expect("operator cache poisoned").get(&n) {
            return Arc::clone(ops);
        }
        let built = Arc::new(Self::build(n));
        let mut guard = cache.lock().expect("operator cache poisoned");
        Arc::clone(guard.entry(n).or_insert(built))
    }

    fn build(n: usize) -> Self {
        let j = Axis::ALL.map(|a| SparseOp::collective(a, n));
        let mut jj: [[Option<SparseOp>; 3]; 3] = Default::default();
        for k in 0..3 {
            for l in k..3 {
                jj[k][l] = Some(j[k].product(&j[l]));
            }
        }
        CollectiveOps { j, jj }
    }

    pub(crate) fn j(&self, axis: Axis) -> &SparseOp {
        &self.j[axis.index()]
    }

    fn jj(&self, k: usize, l: usize) -> &SparseOp {
        let (a, b) = if k <= l { (k, l) } else { (l, k) };
        self.jj[a][b].as_ref().expect("upper triangle is populated")
    }
}

fn check_qubits(n: usize) -> Result<()> {
    if n == 0 || n > MAX_QUBITS {
        return Err(Error::Domain(format!("qubit count must be in 1..={MAX_QUBITS}, got {n}")));
    }
    Ok(())
}

/// Dense `J_axis` on `n` qubits.
pub fn collective_j(axis: Axis, n: usize) -> Result<ComplexMatrix> {
    check_qubits(n)?;
    Ok(CollectiveOps::get(n).j(axis).to_dense())
}

/// Single-qubit Bloch vector `(⟨σx⟩, ⟨σy⟩, ⟨σz⟩)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector(pub [f64; 3]);

impl BlochVector {
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        BlochVector([x, y, z])
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    /// ½(I + r⃗·σ⃗)
    pub fn density(&self) -> ComplexMatrix {
        let [x, y, z] = self.0;
        let c = Complex64::new;
        ComplexMatrix::from_vec(
            2,
            2,
            vec![c((1.0 + z) / 2.0, 0.0), c(x / 2.0, -y / 2.0), c(x / 2.0, y / 2.0), c((1.0 - z) / 2.0, 0.0)],
        )
        .expect("2x2 from four entries")
    }
}

/// Pure product state `⊗_i ½(I + r⃗_i·σ⃗)` from unit Bloch vectors.
pub fn product_state(blochs: &[BlochVector]) -> Result<DensityMatrix> {
    check_qubits(blochs.len())?;
    if let Some((i, b)) = blochs.iter().enumerate().find(|(_, b)| (b.norm() - 1.0).abs() > 1e-9) {
        return Err(Error::Domain(format!("Bloch vector {i} has norm {}, expected 1", b.norm())));
    }
    let factors: Vec<ComplexMatrix> = blochs.iter().map(BlochVector::density).collect();
    Ok(DensityMatrix::from_trusted(linalg::kron_all(&factors)))
}

/// First and second moments of the collective spin.
#[derive(Debug, Clone, PartialEq)]
pub struct CollectiveMoments {
    pub n: usize,
    /// (⟨Jx⟩, ⟨Jy⟩, ⟨Jz⟩)
    pub j_vec: Vector3<f64>,
    /// `C_kl = ⟨J_k J_l + J_l J_k⟩ / 2`
    pub corr: Matrix3<f64>,
    /// False when only the diagonal of `corr` was measured.
    pub off_diagonal_known: bool,
}

impl CollectiveMoments {
    /// Moments with a full correlation matrix.
    pub fn new(n: usize, j_vec: Vector3<f64>, corr: Matrix3<f64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("moments need at least one qubit".into()));
        }
        if j_vec.iter().chain(corr.iter()).any(|v| !v.is_finite()) {
            return Err(Error::Domain("moments must be finite".into()));
        }
        if (corr - corr.transpose()).abs().max() > 1e-10 {
            return Err(Error::Domain("correlation matrix is not symmetric".into()));
        }
        Ok(CollectiveMoments {
            n,
            j_vec,
            corr: (corr + corr.transpose()) * 0.5,
            off_diagonal_known: true,
        })
    }

    /// Moments from `J⃗` and `K⃗ = (⟨Jx²⟩, ⟨Jy²⟩, ⟨Jz²⟩)` only. Off-diagonal
    /// correlations are unknown; they are stored so the covariance is diagonal.
    pub fn from_first_second(n: usize, j_vec: Vector3<f64>, k_vec: Vector3<f64>) -> Result<Self> {
        let mut corr = j_vec * j_vec.transpose();
        for i in 0..3 {
            corr[(i, i)] = k_vec[i];
        }
        let mut m = Self::new(n, j_vec, corr)?;
        m.off_diagonal_known = false;
        Ok(m)
    }

    /// (⟨Jx²⟩, ⟨Jy²⟩, ⟨Jz²⟩)
    pub fn k_vec(&self) -> Vector3<f64> {
        self.corr.diagonal()
    }

    /// `γ = C − J⃗J⃗ᵀ`
    pub fn cov(&self) -> Matrix3<f64> {
        self.corr - self.j_vec * self.j_vec.transpose()
    }

    pub fn variance(&self, axis: Axis) -> f64 {
        let i = axis.index();
        self.corr[(i, i)] - self.j_vec[i] * self.j_vec[i]
    }

    pub fn mean(&self, axis: Axis) -> f64 {
        self.j_vec[axis.index()]
    }

    pub fn second(&self, axis: Axis) -> f64 {
        let i = axis.index();
        self.corr[(i, i)]
    }
}

/// All first and second collective moments of a state.
pub fn moments_from_state(rho: &DensityMatrix) -> CollectiveMoments {
    let n = rho.n_qubits();
    let ops = CollectiveOps::get(n);
    let m = rho.matrix();
    let j_vec = Vector3::from_fn(|i, _| ops.j(Axis::ALL[i]).expectation(m).re);
    // Tr(ρ J_l J_k) is the conjugate of Tr(ρ J_k J_l), so the symmetrized
    // product is the real part of either.
    let corr = Matrix3::from_fn(|k, l| ops.jj(k, l).expectation(m).re);
    CollectiveMoments {
        n,
        j_vec,
        corr,
        off_diagonal_known: true,
    }
}

/// Rotation matrix for `angle` about a unit axis (right-handed).
pub fn rotation_matrix(axis_unit: [f64; 3], angle: f64) -> Result<Matrix3<f64>> {
    let axis = unit_axis(axis_unit)?;
    Ok(*nalgebra::Rotation3::from_axis_angle(&nalgebra::Unit::new_unchecked(axis), angle).matrix())
}

fn unit_axis(axis: [f64; 3]) -> Result<Vector3<f64>> {
    let v = Vector3::from(axis);
    let norm = v.norm();
    if !(norm > 1e-12) || !norm.is_finite() {
        return Err(Error::Degenerate(format!("rotation axis {axis:?} has no direction")));
    }
    Ok(v / norm)
}

/// `U = exp(−i·angle·(n̂·J⃗))`, built as the tensor power of the single-qubit rotation.
///
/// For this `U`, the moments of `UρU†` are those of `ρ` rotated by
/// [`rotation_matrix`] with the same axis and angle.
pub fn collective_rotation(axis_unit: [f64; 3], angle: f64, n: usize) -> Result<ComplexMatrix> {
    check_qubits(n)?;
    let a = unit_axis(axis_unit)?;
    let (c, s) = ((angle / 2.0).cos(), (angle / 2.0).sin());
    // cos(θ/2) I − i sin(θ/2) n̂·σ⃗
    let u = ComplexMatrix::from_vec(
        2,
        2,
        vec![
            Complex64::new(c, -s * a[2]),
            Complex64::new(-s * a[1], -s * a[0]),
            Complex64::new(s * a[1], -s * a[0]),
            Complex64::new(c, s * a[2]),
        ],
    )?;
    Ok(linalg::kron_all(std::iter::repeat_n(&u, n)))
}

/// `UρU†`
pub fn conjugate_state(rho: &DensityMatrix, u: &ComplexMatrix) -> Result<DensityMatrix> {
    let out = u.matmul(rho.matrix())?.matmul(&u.adjoint())?;
    Ok(DensityMatrix::from_trusted(out))
}

fn swap_qubits_2(rho2: &ComplexMatrix) -> ComplexMatrix {
    // basis |ab⟩ -> |ba⟩ swaps indices 1 and 2
    let perm = [0, 2, 1, 3];
    ComplexMatrix::from_fn(4, 4, |i, j| rho2[(perm[i], perm[j])])
}

/// Average two-qubit reduced state `1/(N(N−1)) Σ_{i≠j} ρ_ij`.
pub fn avg_two_qubit_state(rho: &DensityMatrix) -> Result<DensityMatrix> {
    let n = rho.n_qubits();
    if n < 2 {
        return Err(Error::Domain("average two-qubit state needs at least two qubits".into()));
    }
    let mut acc = ComplexMatrix::zeros(4, 4);
    for i in 0..n {
        for j in (i + 1)..n {
            let red = linalg::partial_trace(rho, &[i, j])?;
            acc = acc.add(&red)?.add(&swap_qubits_2(&red))?;
        }
    }
    let pairs = (n * (n - 1)) as f64;
    Ok(DensityMatrix::from_trusted(acc.scale(Complex64::new(1.0 / pairs, 0.0))))
}

/// Named entangled reference states.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ReferenceState {
    /// Singlets on the adjacent pairs (0,1), (2,3), ...
    SingletPairs,
    /// Symmetric Dicke state with N/2 excitations.
    DickeHalf,
    /// (|0…0⟩ + |1…1⟩)/√2
    Ghz,
}

impl FromStr for ReferenceState {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "singlet_pairs" | "singlet-pairs" => Ok(ReferenceState::SingletPairs),
            "dicke_half" | "dicke-half" => Ok(ReferenceState::DickeHalf),
            "ghz" => Ok(ReferenceState::Ghz),
            _ => Err(Error::Domain(format!("unknown reference state '{s}'"))),
        }
    }
}

/// State vector of a reference state.
pub fn reference_vector(name: ReferenceState, n: usize) -> Result<Vec<Complex64>> {
    check_qubits(n)?;
    let d = 1usize << n;
    let mut psi = vec![ZERO; d];
    match name {
        ReferenceState::SingletPairs => {
            if !n.is_multiple_of(2) {
                return Err(Error::Domain(format!("singlet pairs need an even qubit count, got {n}")));
            }
            let pairs = n / 2;
            let amp = 0.5f64.powf(pairs as f64 / 2.0);
            // each pair contributes |01⟩ (+) or −|10⟩
            for choice in 0..1usize << pairs {
                let mut idx = 0usize;
                let mut sign = 1.0;
                for p in 0..pairs {
                    let bits = if choice >> (pairs - 1 - p) & 1 == 0 {
                        0b01
                    } else {
                        sign = -sign;
                        0b10
                    };
                    idx = (idx << 2) | bits;
                }
                psi[idx] = Complex64::new(sign * amp, 0.0);
            }
        }
        ReferenceState::DickeHalf => {
            if !n.is_multiple_of(2) {
                return Err(Error::Domain(format!("half-filled Dicke state needs an even qubit count, got {n}")));
            }
            let support: Vec<usize> = (0..d).filter(|i| i.count_ones() as usize == n / 2).collect();
            let amp = 1.0 / (support.len() as f64).sqrt();
            for i in support {
                psi[i] = Complex64::new(amp, 0.0);
            }
        }
        ReferenceState::Ghz => {
            let amp = std::f64::consts::FRAC_1_SQRT_2;
            psi[0] = Complex64::new(amp, 0.0);
            psi[d - 1] += Complex64::new(amp, 0.0);
        }
    }
    Ok(psi)
}

/// Density matrix of a reference state.
pub fn reference_state(name: ReferenceState, n: usize) -> Result<DensityMatrix> {
    DensityMatrix::from_pure(&reference_vector(name, n)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn single_qubit_jz() {
        let jz = collective_j(Axis::Z, 1).unwrap();
        assert_eq!(jz, Pauli::Z.matrix().scale(c(0.5, 0.0)));
        assert_eq!(collective_j(Axis::Y, 1).unwrap(), Pauli::Y.matrix().scale(c(0.5, 0.0)));
        assert!(collective_j(Axis::X, 0).is_err());
    }

    #[test]
    fn two_spin_jx_spectrum() {
        let vals = linalg::eigvalsh(&collective_j(Axis::X, 2).unwrap()).unwrap();
        let expected = [-1.0, 0.0, 0.0, 1.0];
        assert!(vals.iter().zip(expected).all(|(a, b)| (a - b).abs() < 1e-12));
    }

    #[test]
    fn angular_momentum_algebra() {
        let [jx, jy, jz] = Axis::ALL.map(|a| collective_j(a, 3).unwrap());
        let comm = (&jx * &jy).sub(&(&jy * &jx)).unwrap();
        assert!(comm.max_abs_diff(&jz.scale(c(0.0, 1.0))) < 1e-12);
    }

    #[test]
    fn collective_matches_pauli_sum() {
        for axis in Axis::ALL {
            let mut sum = ComplexMatrix::zeros(16, 16);
            for q in 0..4 {
                sum = sum.add(&pauli_string(4, &[(q, axis.pauli())], 0.5)).unwrap();
            }
            assert_eq!(collective_j(axis, 4).unwrap(), sum);
        }
    }

    #[test]
    fn product_state_examples() {
        let up = product_state(&[BlochVector::new(0.0, 0.0, 1.0)]).unwrap();
        assert_eq!(up.matrix(), &ComplexMatrix::from_real(2, 2, &[1.0, 0.0, 0.0, 0.0]).unwrap());

        let ud = product_state(&[BlochVector::new(0.0, 0.0, 1.0), BlochVector::new(0.0, 0.0, -1.0)]).unwrap();
        let mut expected = ComplexMatrix::zeros(4, 4);
        expected[(1, 1)] = c(1.0, 0.0);
        assert_eq!(ud.matrix(), &expected);

        assert!(product_state(&[BlochVector::new(0.5, 0.0, 0.0)]).is_err());

        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let blochs: Vec<BlochVector> = (0..4).map(|_| random::haar_bloch(&mut rng)).collect();
        let rho = product_state(&blochs).unwrap();
        assert!((rho.purity() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn moments_of_reference_states() {
        let all_up = product_state(&[BlochVector::new(0.0, 0.0, 1.0); 4]).unwrap();
        let m = moments_from_state(&all_up);
        assert!((m.j_vec - Vector3::new(0.0, 0.0, 2.0)).norm() < 1e-12);
        assert!((m.k_vec() - Vector3::new(1.0, 1.0, 4.0)).norm() < 1e-12);

        let singlet = reference_state(ReferenceState::SingletPairs, 2).unwrap();
        let m = moments_from_state(&singlet);
        assert!(m.j_vec.norm() < 1e-12 && m.k_vec().norm() < 1e-12);

        let mixed = DensityMatrix::maximally_mixed(3);
        let m = moments_from_state(&mixed);
        assert!(m.j_vec.norm() < 1e-15);
        assert!((m.k_vec() - Vector3::repeat(0.75)).norm() < 1e-12);
        assert!(m.cov().abs().max() <= 0.75 + 1e-12);
    }

    #[test]
    fn moment_invariants() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for n in 1..=5 {
            let rho = random::density_matrix(n, &mut rng);
            let m = moments_from_state(&rho);
            assert_eq!(m.k_vec(), m.corr.diagonal());
            assert!((m.cov() - (m.corr - m.j_vec * m.j_vec.transpose())).abs().max() < 1e-12);
            let bound = (n * n) as f64 / 4.0;
            assert!(m.k_vec().iter().all(|&k| (-1e-12..=bound + 1e-12).contains(&k)));
            assert!(m.k_vec().sum() <= (n * (n + 2)) as f64 / 4.0 + 1e-9);
        }
    }

    #[test]
    fn dicke_half_moments() {
        // ⟨J²⟩ = J(J+1) = 6 with ⟨Jz⟩ = ⟨Jz²⟩ = 0 for N = 4.
        let psi = reference_vector(ReferenceState::DickeHalf, 4).unwrap();
        assert_eq!(psi.iter().filter(|z| z.norm() > 0.0).count(), 6);
        let m = moments_from_state(&reference_state(ReferenceState::DickeHalf, 4).unwrap());
        assert!(m.mean(Axis::Z).abs() < 1e-12);
        assert!(m.second(Axis::Z).abs() < 1e-12);
        assert!((m.second(Axis::X) + m.second(Axis::Y) - 6.0).abs() < 1e-12);
    }

    #[test]
    fn reference_state_examples() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let singlet = reference_state(ReferenceState::SingletPairs, 2).unwrap();
        let expected = ComplexMatrix::projector(&[c(0.0, 0.0), c(s, 0.0), c(-s, 0.0), c(0.0, 0.0)]);
        assert!(singlet.max_abs_diff(&expected) < 1e-15);

        let dicke = reference_state(ReferenceState::DickeHalf, 2).unwrap();
        let expected = ComplexMatrix::projector(&[c(0.0, 0.0), c(s, 0.0), c(s, 0.0), c(0.0, 0.0)]);
        assert!(dicke.max_abs_diff(&expected) < 1e-15);

        let four = reference_state(ReferenceState::SingletPairs, 4).unwrap();
        let pair = linalg::partial_trace(&four, &[2, 3]).unwrap();
        assert!(pair.max_abs_diff(singlet.matrix()) < 1e-14);

        assert!(reference_state(ReferenceState::SingletPairs, 3).is_err());
        assert!(reference_state(ReferenceState::DickeHalf, 5).is_err());
        let ghz = reference_state(ReferenceState::Ghz, 3).unwrap();
        assert!((ghz[(0, 7)].re - 0.5).abs() < 1e-15);
    }

    #[test]
    fn rotation_examples() {
        let id = collective_rotation([0.0, 0.0, 1.0], 0.0, 3).unwrap();
        assert!(id.max_abs_diff(&ComplexMatrix::identity(8)) < 1e-15);

        let up = product_state(&[BlochVector::new(0.0, 0.0, 1.0); 3]).unwrap();
        let u = collective_rotation([0.0, 0.0, 1.0], std::f64::consts::PI, 3).unwrap();
        let rotated = conjugate_state(&up, &u).unwrap();
        assert!(rotated.max_abs_diff(up.matrix()) < 1e-12);

        assert!(matches!(collective_rotation([0.0; 3], 1.0, 2), Err(Error::Degenerate(_))));
    }

    #[test]
    fn rotation_is_exp_of_generator() {
        let axis = [0.3, -0.5, 0.8];
        let norm = (0.09f64 + 0.25 + 0.64).sqrt();
        let unit = axis.map(|a| a / norm);
        let angle = 0.7;
        let mut gen = ComplexMatrix::zeros(8, 8);
        for (a, &w) in Axis::ALL.iter().zip(&unit) {
            gen = gen.add(&collective_j(*a, 3).unwrap().scale(c(w, 0.0))).unwrap();
        }
        let eig = linalg::hermitian_eig(&gen).unwrap();
        let v = &eig.eigenvectors;
        let phases = ComplexMatrix::from_fn(8, 8, |i, k| v[(i, k)] * Complex64::from_polar(1.0, -angle * eig.eigenvalues[k]));
        let oracle = &phases * &v.adjoint();
        let u = collective_rotation(axis, angle, 3).unwrap();
        assert!(u.max_abs_diff(&oracle) < 1e-12);
    }

    #[test]
    fn avg_two_qubit_state_of_product() {
        // |0101⟩: ordered pairs (i, j) take values |b_i b_j⟩.
        let z = |s: f64| BlochVector::new(0.0, 0.0, s);
        let rho = product_state(&[z(1.0), z(-1.0), z(1.0), z(-1.0)]).unwrap();
        let avg = avg_two_qubit_state(&rho).unwrap();
        let bits = [0usize, 1, 0, 1];
        let mut oracle = ComplexMatrix::zeros(4, 4);
        for i in 0..4 {
            for j in 0..4 {
                if i != j {
                    let idx = bits[i] * 2 + bits[j];
                    oracle[(idx, idx)] += c(1.0 / 12.0, 0.0);
                }
            }
        }
        assert!(avg.max_abs_diff(&oracle) < 1e-15);
        assert!(avg_two_qubit_state(&DensityMatrix::maximally_mixed(1)).is_err());
    }

    #[test]
    fn avg_two_qubit_state_of_symmetric_state() {
        let dicke = reference_state(ReferenceState::DickeHalf, 4).unwrap();
        let avg = avg_two_qubit_state(&dicke).unwrap();
        let pair = linalg::partial_trace(&dicke, &[1, 3]).unwrap();
        assert!(avg.max_abs_diff(&pair) < 1e-14);
        assert!((avg.trace().re - 1.0).abs() < 1e-12);
        assert!(linalg::min_eigenvalue(&avg).unwrap() >= -1e-12);
    }
}
