//! Dense complex linear algebra on qubit registers.
//!
//! Index convention: qubit 0 is the most significant Kronecker factor. In a
//! basis index of an `n`-qubit register, qubit `q` occupies bit `n - 1 - q`.
//!
//! Eigenproblems are split along the exact-zero sparsity pattern of the input
//! before they reach the dense solver. Spin Hamiltonians that conserve the
//! magnetization produce block-diagonal thermal states, and partial transposes
//! and realignments only permute entries, so the blocks survive all the way to
//! the PPT and CCNR tests.

use std::ops::{Index, IndexMut, Mul};

use nalgebra::DMatrix;
pub use num_complex::Complex64;

use crate::error::{Error, Result};

/// Absolute tolerance (scaled by the largest entry) for Hermiticity checks.
pub const HERMITIAN_TOL: f64 = 1e-10;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Dense complex matrix stored in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ComplexMatrix {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim, dim);
        for i in 0..dim {
            m[(i, i)] = ONE;
        }
        m
    }

    /// Builds a matrix from row-major entries, rejecting NaN/Inf.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                got: data.len(),
            });
        }
        if let Some(pos) = data.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite {
                row: pos / cols.max(1),
                col: pos % cols.max(1),
            });
        }
        Ok(ComplexMatrix { rows, cols, data })
    }

    /// Builds a matrix from real row-major entries.
    pub fn from_real(rows: usize, cols: usize, data: &[f64]) -> Result<Self> {
        Self::from_vec(rows, cols, data.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        ComplexMatrix { rows, cols, data }
    }

    pub fn diagonal(values: &[f64]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = Complex64::new(v, 0.0);
        }
        m
    }

    /// Projector |ψ⟩⟨ψ| onto an (unnormalized) state vector.
    pub fn projector(psi: &[Complex64]) -> Self {
        Self::from_fn(psi.len(), psi.len(), |i, j| psi[i] * psi[j].conj())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Side length, or an error when the matrix is not square.
    pub fn dim(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    /// Number of qubits of a square `2^n`-dimensional matrix.
    pub fn n_qubits(&self) -> Result<usize> {
        let d = self.dim()?;
        qubits_for_dim(d)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, s: Complex64) -> Self {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                got: other.rows * other.cols,
            });
        }
        Ok(ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect(),
        })
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let out_row = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == ZERO {
                    continue;
                }
                for (o, &b) in out_row.iter_mut().zip(other.row(k)) {
                    *o += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest entrywise modulus of `self - self†`.
    pub fn hermiticity_error(&self) -> f64 {
        let mut err: f64 = 0.0;
        for i in 0..self.rows {
            for j in i..self.cols {
                err = err.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        err
    }

    /// Checks Hermiticity within `HERMITIAN_TOL`, relative to the largest entry.
    pub fn ensure_hermitian(&self) -> Result<()> {
        self.dim()?;
        let err = self.hermiticity_error();
        if err > HERMITIAN_TOL * self.max_abs().max(1.0) {
            return Err(Error::NotHermitian(err));
        }
        Ok(())
    }

    /// Connected components of the nonzero pattern of a square matrix, each
    /// sorted ascending, ordered by their smallest index.
    pub fn square_blocks(&self) -> Vec<Vec<usize>> {
        let n = self.rows;
        let mut dsu = DisjointSets::new(n);
        for i in 0..n {
            for j in (i + 1)..n {
                if self[(i, j)] != ZERO || self[(j, i)] != ZERO {
                    dsu.union(i, j);
                }
            }
        }
        dsu.groups(n)
    }

    /// Connected components of the bipartite row/column graph whose edges
    /// are the nonzero entries. Empty rows or columns become blocks with an
    /// empty partner list.
    pub fn rect_blocks(&self) -> Vec<(Vec<usize>, Vec<usize>)> {
        let (r, c) = (self.rows, self.cols);
        let mut dsu = DisjointSets::new(r + c);
        for i in 0..r {
            for j in 0..c {
                if self[(i, j)] != ZERO {
                    dsu.union(i, r + j);
                }
            }
        }
        dsu.groups(r + c)
            .into_iter()
            .map(|g| {
                let (rows, cols): (Vec<usize>, Vec<usize>) = g.into_iter().partition(|&x| x < r);
                (rows, cols.into_iter().map(|x| x - r).collect())
            })
            .collect()
    }

    fn submatrix(&self, rows: &[usize], cols: &[usize]) -> DMatrix<Complex64> {
        DMatrix::from_fn(rows.len(), cols.len(), |a, b| self[(rows[a], cols[b])])
    }

    pub fn to_nalgebra(&self) -> DMatrix<Complex64> {
        DMatrix::from_row_slice(self.rows, self.cols, &self.data)
    }

    pub fn from_nalgebra(m: &DMatrix<Complex64>) -> Self {
        Self::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    /// Panics on a shape mismatch; use [`ComplexMatrix::matmul`] to get an error instead.
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs).expect("matrix shapes do not match")
    }
}

struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }

    fn groups(&mut self, n: usize) -> Vec<Vec<usize>> {
        let mut slot = vec![usize::MAX; n];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for x in 0..n {
            let root = self.find(x);
            if slot[root] == usize::MAX {
                slot[root] = out.len();
                out.push(Vec::new());
            }
            out[slot[root]].push(x);
        }
        out
    }
}

pub(crate) fn qubits_for_dim(d: usize) -> Result<usize> {
    if d == 0 || !d.is_power_of_two() {
        return Err(Error::NotQubitRegister(d));
    }
    Ok(d.trailing_zeros() as usize)
}

/// Bit mask of a set of qubits in an `n`-qubit basis index.
pub fn qubit_mask(n: usize, qubits: &[usize]) -> usize {
    qubits.iter().fold(0, |m, &q| m | (1 << (n - 1 - q)))
}

/// For a sorted list of qubits, the basis-index bits of every local index
/// `0..2^len`, with the first listed qubit as the most significant local bit.
fn scatter_table(n: usize, qubits: &[usize]) -> Vec<usize> {
    let k = qubits.len();
    (0..1usize << k)
        .map(|local| {
            qubits
                .iter()
                .enumerate()
                .filter(|&(pos, _)| local >> (k - 1 - pos) & 1 == 1)
                .fold(0, |acc, (_, &q)| acc | 1 << (n - 1 - q))
        })
        .collect()
}

fn validate_qubits(n: usize, qubits: &[usize]) -> Result<Vec<usize>> {
    let mut sorted = qubits.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != qubits.len() {
        return Err(Error::InvalidQubits(format!("duplicate index in {qubits:?}")));
    }
    if let Some(&q) = sorted.iter().find(|&&q| q >= n) {
        return Err(Error::InvalidQubits(format!("qubit {q} out of range for {n} qubits")));
    }
    Ok(sorted)
}

/// Kronecker product `a ⊗ b`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (br, bc) = (b.rows, b.cols);
    let mut out = ComplexMatrix::zeros(a.rows * br, a.cols * bc);
    for i in 0..a.rows {
        for j in 0..a.cols {
            let s = a[(i, j)];
            if s == ZERO {
                continue;
            }
            for k in 0..br {
                for l in 0..bc {
                    out[(i * br + k, j * bc + l)] = s * b[(k, l)];
                }
            }
        }
    }
    out
}

/// Kronecker product of a sequence of factors; the first factor is qubit 0.
pub fn kron_all<'a>(factors: impl IntoIterator<Item = &'a ComplexMatrix>) -> ComplexMatrix {
    factors
        .into_iter()
        .fold(ComplexMatrix::identity(1), |acc, f| kron(&acc, f))
}

/// Eigendecomposition of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct HermitianEig {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// Orthonormal eigenvectors as columns, in the order of `eigenvalues`.
    pub eigenvectors: ComplexMatrix,
}

impl HermitianEig {
    /// V·diag(λ)·V†
    pub fn reconstruct(&self) -> ComplexMatrix {
        let v = &self.eigenvectors;
        let d = v.rows();
        let scaled = ComplexMatrix::from_fn(d, d, |i, k| v[(i, k)] * self.eigenvalues[k]);
        &scaled * &v.adjoint()
    }
}

#[derive(Debug, Clone)]
struct EigBlock {
    indices: Vec<usize>,
    values: Vec<f64>,
    vectors: DMatrix<Complex64>,
}

/// Eigendecomposition of a Hermitian matrix kept in its block-diagonal form.
///
/// Blocks are the connected components of the exact nonzero pattern, so the
/// decomposition is exact up to the dense solver's accuracy.
#[derive(Debug, Clone)]
pub struct BlockSpectrum {
    dim: usize,
    blocks: Vec<EigBlock>,
}

impl BlockSpectrum {
    pub fn new(h: &ComplexMatrix) -> Result<Self> {
        h.ensure_hermitian()?;
        let blocks = h
            .square_blocks()
            .into_iter()
            .map(|indices| {
                let sub = hermitian_part(h.submatrix(&indices, &indices));
                let eig = sub.symmetric_eigen();
                EigBlock {
                    indices,
                    values: eig.eigenvalues.iter().copied().collect(),
                    vectors: eig.eigenvectors,
                }
            })
            .collect();
        Ok(BlockSpectrum { dim: h.rows(), blocks })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Sizes of the diagonal blocks.
    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.indices.len()).collect()
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut all: Vec<f64> = self.blocks.iter().flat_map(|b| b.values.iter().copied()).collect();
        all.sort_by(f64::total_cmp);
        all
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.blocks
            .iter()
            .flat_map(|b| b.values.iter().copied())
            .fold(f64::INFINITY, f64::min)
    }

    /// Dense eigendecomposition with globally sorted eigenvalues.
    pub fn to_dense(&self) -> HermitianEig {
        let mut cols: Vec<(f64, usize, usize)> = self
            .blocks
            .iter()
            .enumerate()
            .flat_map(|(b, blk)| blk.values.iter().enumerate().map(move |(k, &v)| (v, b, k)))
            .collect();
        cols.sort_by(|x, y| x.0.total_cmp(&y.0));
        let mut vectors = ComplexMatrix::zeros(self.dim, self.dim);
        for (col, &(_, b, k)) in cols.iter().enumerate() {
            let blk = &self.blocks[b];
            for (a, &row) in blk.indices.iter().enumerate() {
                vectors[(row, col)] = blk.vectors[(a, k)];
            }
        }
        HermitianEig {
            eigenvalues: cols.iter().map(|c| c.0).collect(),
            eigenvectors: vectors,
        }
    }

    /// `exp(-beta·H) / Tr exp(-beta·H)` from the stored spectrum, with the
    /// ground energy shifted out before exponentiation.
    pub fn thermal(&self, beta: f64) -> Result<ComplexMatrix> {
        check_beta(beta)?;
        if beta == 0.0 {
            return Ok(ComplexMatrix::identity(self.dim).scale(Complex64::new(1.0 / self.dim as f64, 0.0)));
        }
        let shift = self.min_eigenvalue();
        let weights: Vec<Vec<f64>> = self
            .blocks
            .iter()
            .map(|b| b.values.iter().map(|&l| (-beta * (l - shift)).exp()).collect())
            .collect();
        let z: f64 = weights.iter().flatten().sum();
        let mut out = ComplexMatrix::zeros(self.dim, self.dim);
        for (blk, w) in self.blocks.iter().zip(&weights) {
            let mut scaled = blk.vectors.clone();
            for (k, mut col) in scaled.column_iter_mut().enumerate() {
                col *= Complex64::new(w[k] / z, 0.0);
            }
            let part = scaled * blk.vectors.adjoint();
            for (a, &i) in blk.indices.iter().enumerate() {
                for (b, &j) in blk.indices.iter().enumerate() {
                    out[(i, j)] = part[(a, b)];
                }
            }
        }
        Ok(out)
    }
}

fn hermitian_part(m: DMatrix<Complex64>) -> DMatrix<Complex64> {
    let adj = m.adjoint();
    (m + adj) * Complex64::new(0.5, 0.0)
}

fn check_beta(beta: f64) -> Result<()> {
    if !beta.is_finite() || beta < 0.0 {
        return Err(Error::Domain(format!("inverse temperature must be finite and >= 0, got {beta}")));
    }
    Ok(())
}

/// Full eigendecomposition of a Hermitian matrix.
pub fn hermitian_eig(h: &ComplexMatrix) -> Result<HermitianEig> {
    Ok(BlockSpectrum::new(h)?.to_dense())
}

/// Ascending eigenvalues of a Hermitian matrix, without eigenvectors.
pub fn eigvalsh(h: &ComplexMatrix) -> Result<Vec<f64>> {
    h.ensure_hermitian()?;
    let mut all = Vec::with_capacity(h.rows());
    for indices in h.square_blocks() {
        let sub = hermitian_part(h.submatrix(&indices, &indices));
        all.extend(sub.symmetric_eigenvalues().iter().copied());
    }
    all.sort_by(f64::total_cmp);
    Ok(all)
}

/// Smallest eigenvalue of a Hermitian matrix.
pub fn min_eigenvalue(h: &ComplexMatrix) -> Result<f64> {
    Ok(eigvalsh(h)?[0])
}

/// Normalized matrix exponential `exp(-beta·h) / Tr exp(-beta·h)`.
pub fn expm_hermitian_normalized(h: &ComplexMatrix, beta: f64) -> Result<ComplexMatrix> {
    check_beta(beta)?;
    h.ensure_hermitian()?;
    BlockSpectrum::new(h)?.thermal(beta)
}

/// Unordered split of a register into two nonempty parts, stored by the part
/// that contains qubit 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Bipartition {
    n_qubits: usize,
    left: Vec<usize>,
}

impl Bipartition {
    /// Accepts either side of the cut; the stored side always contains qubit 0.
    pub fn new(n_qubits: usize, side: &[usize]) -> Result<Self> {
        let sorted = validate_qubits(n_qubits, side).map_err(|e| Error::InvalidBipartition(e.to_string()))?;
        if sorted.is_empty() || sorted.len() >= n_qubits {
            return Err(Error::InvalidBipartition(format!(
                "{side:?} is not a nonempty proper subset of {n_qubits} qubits"
            )));
        }
        let left = if sorted[0] == 0 {
            sorted
        } else {
            (0..n_qubits).filter(|q| !sorted.contains(q)).collect()
        };
        Ok(Bipartition { n_qubits, left })
    }

    /// All `2^(n-1) - 1` inequivalent bipartitions of `n` qubits.
    pub fn all(n_qubits: usize) -> Vec<Bipartition> {
        if n_qubits < 2 {
            return Vec::new();
        }
        let rest = n_qubits - 1;
        (0..(1usize << rest) - 1)
            .map(|bits| {
                let mut left = vec![0];
                left.extend((1..n_qubits).filter(|&q| bits >> (q - 1) & 1 == 1));
                Bipartition { n_qubits, left }
            })
            .collect()
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn left(&self) -> &[usize] {
        &self.left
    }

    pub fn right(&self) -> Vec<usize> {
        (0..self.n_qubits).filter(|q| !self.left.contains(q)).collect()
    }
}

impl std::fmt::Display for Bipartition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let fmt_set = |s: &[usize]| s.iter().map(|q| q.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "{{{}}}|{{{}}}", fmt_set(&self.left), fmt_set(&self.right()))
    }
}

fn check_register(rho: &ComplexMatrix, n_qubits: usize) -> Result<()> {
    let d = rho.dim()?;
    if d != 1 << n_qubits {
        return Err(Error::DimensionMismatch {
            expected: 1 << n_qubits,
            got: d,
        });
    }
    Ok(())
}

/// Transposes the tensor indices of an arbitrary set of qubits.
pub fn partial_transpose_qubits(rho: &ComplexMatrix, qubits: &[usize]) -> Result<ComplexMatrix> {
    let n = rho.n_qubits()?;
    let sorted = validate_qubits(n, qubits)?;
    let mask = qubit_mask(n, &sorted);
    let d = rho.rows();
    let mut out = ComplexMatrix::zeros(d, d);
    for r in 0..d {
        for c in 0..d {
            let v = rho[(r, c)];
            if v != ZERO {
                let r2 = (r & !mask) | (c & mask);
                let c2 = (c & !mask) | (r & mask);
                out[(r2, c2)] = v;
            }
        }
    }
    Ok(out)
}

/// Partial transpose with respect to the stored side of a bipartition.
pub fn partial_transpose(rho: &ComplexMatrix, part: &Bipartition) -> Result<ComplexMatrix> {
    check_register(rho, part.n_qubits)?;
    partial_transpose_qubits(rho, &part.left)
}

/// Reduced state on `keep`, with kept qubits in ascending order.
pub fn partial_trace(rho: &ComplexMatrix, keep: &[usize]) -> Result<ComplexMatrix> {
    let n = rho.n_qubits()?;
    let keep = validate_qubits(n, keep)?;
    if keep.is_empty() {
        return Err(Error::InvalidQubits("keep set is empty".into()));
    }
    let traced: Vec<usize> = (0..n).filter(|q| !keep.contains(q)).collect();
    let kt = scatter_table(n, &keep);
    let tt = scatter_table(n, &traced);
    let dk = kt.len();
    let mut out = ComplexMatrix::zeros(dk, dk);
    for (a, &ra) in kt.iter().enumerate() {
        for (b, &cb) in kt.iter().enumerate() {
            out[(a, b)] = tt.iter().map(|&t| rho[(ra | t, cb | t)]).sum();
        }
    }
    Ok(out)
}

/// Realigned matrix `R[(i,j),(k,l)] = ρ[(i,k),(j,l)]`, where `i, j` index the
/// left part of the bipartition and `k, l` the right part.
pub fn realign(rho: &ComplexMatrix, part: &Bipartition) -> Result<ComplexMatrix> {
    let n = part.n_qubits;
    check_register(rho, n)?;
    let ta = scatter_table(n, &part.left);
    let tb = scatter_table(n, &part.right());
    let (da, db) = (ta.len(), tb.len());
    let mut out = ComplexMatrix::zeros(da * da, db * db);
    for (i, &bi) in ta.iter().enumerate() {
        for (j, &bj) in ta.iter().enumerate() {
            for (k, &bk) in tb.iter().enumerate() {
                for (l, &bl) in tb.iter().enumerate() {
                    out[(i * da + j, k * db + l)] = rho[(bi | bk, bj | bl)];
                }
            }
        }
    }
    Ok(out)
}

/// Sum of singular values.
pub fn trace_norm(m: &ComplexMatrix) -> f64 {
    m.rect_blocks()
        .into_iter()
        .filter(|(r, c)| !r.is_empty() && !c.is_empty())
        .map(|(rows, cols)| {
            if rows.len() == 1 && cols.len() == 1 {
                m[(rows[0], cols[0])].norm()
            } else {
                m.submatrix(&rows, &cols).singular_values().sum()
            }
        })
        .sum()
}
