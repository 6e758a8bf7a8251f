//! Spin-squeezing inequalities on collective moments.
//!
//! Every margin is oriented so that a positive value means the inequality is
//! violated, which certifies entanglement.
//!
//! The complete set consists of eight inequalities that hold for every
//! separable state of `N` spin-1/2 particles:
//!
//! ```text
//! eq2a:   ⟨Jx²⟩ + ⟨Jy²⟩ + ⟨Jz²⟩            ≤ N(N+2)/4
//! eq2b:   Var(Jx) + Var(Jy) + Var(Jz)       ≥ N/2
//! eq2c_k: ⟨Ji²⟩ + ⟨Jj²⟩ − N/2              ≤ (N−1) Var(Jk)
//! eq2d_k: (N−1)[Var(Ji) + Var(Jj)]          ≥ ⟨Jk²⟩ + N(N−2)/4
//! ```
//!
//! For fixed `J⃗` they bound a polytope in `(⟨Jx²⟩, ⟨Jy²⟩, ⟨Jz²⟩)` space
//! whose corners are the points returned by [`extreme_points`].

use std::collections::BTreeMap;
use std::fmt;

use nalgebra::{Matrix3, SymmetricEigen, Vector3};

use crate::error::{Error, Result};
use crate::spin::{self, Axis, BlochVector, CollectiveMoments};
use crate::state::DensityMatrix;

/// Margins above this value count as a detection.
pub const DETECTION_TOL: f64 = 1e-9;

/// Identifier of a single inequality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum InequalityId {
    Eq2a,
    Eq2b,
    Eq2c(Axis),
    Eq2d(Axis),
    /// Standard spin-squeezing inequality with the given squeezed axis.
    Eq1(Axis),
    /// `⟨Ji²⟩ + ⟨Jj²⟩ ≤ (N² + N)/4` for the two axes other than the given one.
    Case2(Axis),
}

impl fmt::Display for InequalityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InequalityId::Eq2a => f.write_str("eq2a"),
            InequalityId::Eq2b => f.write_str("eq2b"),
            InequalityId::Eq2c(a) => write!(f, "eq2c_{a}"),
            InequalityId::Eq2d(a) => write!(f, "eq2d_{a}"),
            InequalityId::Eq1(a) => write!(f, "eq1_{a}"),
            InequalityId::Case2(a) => write!(f, "case2_{a}"),
        }
    }
}

/// Signed margins for a set of inequalities.
#[derive(Debug, Clone, PartialEq)]
pub struct CriterionReport {
    pub margins: BTreeMap<InequalityId, f64>,
    pub detected: bool,
    pub max_margin: f64,
    pub argmax_id: InequalityId,
}

impl CriterionReport {
    fn from_margins(margins: BTreeMap<InequalityId, f64>) -> Self {
        let (&argmax_id, &max_margin) = margins
            .iter()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .expect("report has at least one margin");
        CriterionReport {
            detected: max_margin > DETECTION_TOL,
            margins,
            max_margin,
            argmax_id,
        }
    }

    pub fn margin(&self, id: InequalityId) -> Option<f64> {
        self.margins.get(&id).copied()
    }
}

fn require_pairs(m: &CollectiveMoments) -> Result<()> {
    if m.n < 2 {
        return Err(Error::Domain(format!("criteria need N >= 2, got {}", m.n)));
    }
    Ok(())
}

fn observation1_margins(m: &CollectiveMoments) -> BTreeMap<InequalityId, f64> {
    let n = m.n as f64;
    let k = m.k_vec();
    let var = Vector3::from_fn(|i, _| m.variance(Axis::ALL[i]));
    let mut out = BTreeMap::new();
    out.insert(InequalityId::Eq2a, k.sum() - n * (n + 2.0) / 4.0);
    out.insert(InequalityId::Eq2b, n / 2.0 - var.sum());
    for axis in Axis::ALL {
        let (i, j) = axis.others();
        let (ki, kj, kk) = (k[i.index()], k[j.index()], k[axis.index()]);
        let (vi, vj, vk) = (var[i.index()], var[j.index()], var[axis.index()]);
        out.insert(InequalityId::Eq2c(axis), ki + kj - n / 2.0 - (n - 1.0) * vk);
        out.insert(InequalityId::Eq2d(axis), kk + n * (n - 2.0) / 4.0 - (n - 1.0) * (vi + vj));
    }
    out
}

/// Margins of the eight inequalities on the canonical axes.
pub fn eval_observation1(m: &CollectiveMoments) -> Result<CriterionReport> {
    require_pairs(m)?;
    Ok(CriterionReport::from_margins(observation1_margins(m)))
}

/// The eight inequalities plus the standard squeezing inequality (for every
/// squeezed axis where it applies) and the Dicke-state criterion (every axis pair).
pub fn eval_full(m: &CollectiveMoments) -> Result<CriterionReport> {
    require_pairs(m)?;
    let mut margins = observation1_margins(m);
    for axis in Axis::ALL {
        if let Ok(v) = eval_standard_squeezing(m, axis) {
            margins.insert(InequalityId::Eq1(axis), v);
        }
        margins.insert(InequalityId::Case2(axis), eval_dicke_criterion(m, axis)?);
    }
    Ok(CriterionReport::from_margins(margins))
}

/// `1/N − Var(J_s) / (⟨J_i⟩² + ⟨J_j⟩²)` for squeezed axis `s` and the two
/// other axes `i, j`. The criterion does not apply when the mean spin in the
/// `i, j` plane vanishes.
pub fn eval_standard_squeezing(m: &CollectiveMoments, squeezed: Axis) -> Result<f64> {
    if m.n == 0 {
        return Err(Error::Domain("empty register".into()));
    }
    let (i, j) = squeezed.others();
    let denom = m.mean(i).powi(2) + m.mean(j).powi(2);
    if !(denom > 1e-12) {
        return Err(Error::Inapplicable(format!(
            "mean spin perpendicular to {squeezed} vanishes"
        )));
    }
    Ok(1.0 / m.n as f64 - m.variance(squeezed) / denom)
}

/// `⟨J_i²⟩ + ⟨J_j²⟩ − (N² + N)/4` for the two axes other than `excluded`.
pub fn eval_dicke_criterion(m: &CollectiveMoments, excluded: Axis) -> Result<f64> {
    require_pairs(m)?;
    let n = m.n as f64;
    let (i, j) = excluded.others();
    Ok(m.second(i) + m.second(j) - (n * n + n) / 4.0)
}

/// Corners of the polytope of separable second moments for a fixed `J⃗`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtremePoints {
    /// `A_x, A_y, A_z`
    pub a_points: [Vector3<f64>; 3],
    /// `B_x, B_y, B_z`
    pub b_points: [Vector3<f64>; 3],
    /// `(N − 1)/N`
    pub kappa: f64,
}

fn check_mean_spin(j_vec: &Vector3<f64>, n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::Domain(format!("extreme points need N >= 2, got {n}")));
    }
    let half = n as f64 / 2.0;
    if !j_vec.iter().all(|v| v.is_finite()) || j_vec.norm() > half * (1.0 + 1e-12) {
        return Err(Error::Infeasible(format!("|J| = {} exceeds N/2 = {half}", j_vec.norm())));
    }
    Ok(())
}

pub fn extreme_points(j_vec: &Vector3<f64>, n: usize) -> Result<ExtremePoints> {
    check_mean_spin(j_vec, n)?;
    let nf = n as f64;
    let kappa = (nf - 1.0) / nf;
    let sq = j_vec.map(|v| v * v);
    let point = |axis: Axis, along: f64| {
        Vector3::from_fn(|i, _| if i == axis.index() { along } else { nf / 4.0 + kappa * sq[i] })
    };
    let a_points = Axis::ALL.map(|axis| {
        let perp = sq.sum() - sq[axis.index()];
        point(axis, nf * nf / 4.0 - kappa * perp)
    });
    let b_points = Axis::ALL.map(|axis| {
        let perp = sq.sum() - sq[axis.index()];
        point(axis, sq[axis.index()] + perp / nf)
    });
    Ok(ExtremePoints {
        a_points,
        b_points,
        kappa,
    })
}

/// Single-qubit states and mixing weight shared by the separable corner states.
#[derive(Debug, Clone, Copy)]
struct CornerParams {
    plus: BlochVector,
    minus: BlochVector,
    c: f64,
    p: f64,
}

fn corner_params(axis: Axis, j_vec: &Vector3<f64>, n: usize) -> Result<CornerParams> {
    check_mean_spin(j_vec, n)?;
    let big_j = n as f64 / 2.0;
    let k = axis.index();
    let perp: f64 = (0..3).filter(|&i| i != k).map(|i| j_vec[i] * j_vec[i]).sum();
    let c = (1.0 - perp / (big_j * big_j)).max(0.0).sqrt();
    if c <= 1e-12 {
        return Err(Error::Degenerate(format!(
            "mean spin lies on the sphere perpendicular to {axis}; c = {c:e}"
        )));
    }
    let mut p = (1.0 + j_vec[k] / (big_j * c)) / 2.0;
    if !(-1e-12..=1.0 + 1e-12).contains(&p) {
        return Err(Error::Infeasible(format!("mixing weight p = {p} outside [0, 1]")));
    }
    p = p.clamp(0.0, 1.0);
    let bloch = |sign: f64| {
        let v = Vector3::from_fn(|i, _| if i == k { sign * c } else { j_vec[i] / big_j });
        BlochVector::new(v[0], v[1], v[2])
    };
    Ok(CornerParams {
        plus: bloch(1.0),
        minus: bloch(-1.0),
        c,
        p,
    })
}

/// Separable state whose moments are `J⃗` and the corner `A_axis`:
/// `p (|ψ₊⟩⟨ψ₊|)^⊗N + (1 − p)(|ψ₋⟩⟨ψ₋|)^⊗N`.
pub fn separable_extreme_a(axis: Axis, j_vec: &Vector3<f64>, n: usize) -> Result<DensityMatrix> {
    let cp = corner_params(axis, j_vec, n)?;
    let plus = spin::product_state(&vec![cp.plus; n])?;
    let minus = spin::product_state(&vec![cp.minus; n])?;
    DensityMatrix::mixture(&[cp.p, 1.0 - cp.p], &[plus, minus])
}

fn split_product(cp: &CornerParams, up: usize, n: usize) -> Result<DensityMatrix> {
    let blochs: Vec<BlochVector> = (0..n).map(|i| if i < up { cp.plus } else { cp.minus }).collect();
    spin::product_state(&blochs)
}

/// Separable state at (or next to) the corner `B_axis`.
///
/// With `M = N p`, an integer `M` gives the pure product state
/// `|ψ₊⟩^⊗M ⊗ |ψ₋⟩^⊗(N−M)` and a gap of zero. Otherwise the state mixes the
/// two neighbouring integer splits with weight `ε = M − ⌊M⌋`; its `⟨J_axis²⟩`
/// exceeds the corner by the returned gap `c²(ε − ε²) ≤ 1/4`.
pub fn separable_extreme_b(axis: Axis, j_vec: &Vector3<f64>, n: usize) -> Result<(DensityMatrix, f64)> {
    let cp = corner_params(axis, j_vec, n)?;
    let big_m = n as f64 * cp.p;
    let rounded = big_m.round();
    let (m, eps) = if (big_m - rounded).abs() < 1e-10 {
        (rounded as usize, 0.0)
    } else {
        let fl = big_m.floor();
        (fl as usize, big_m - fl)
    };
    if eps == 0.0 {
        return Ok((split_product(&cp, m, n)?, 0.0));
    }
    let lower = split_product(&cp, m, n)?;
    let upper = split_product(&cp, m + 1, n)?;
    let state = DensityMatrix::mixture(&[1.0 - eps, eps], &[lower, upper])?;
    Ok((state, cp.c * cp.c * (eps - eps * eps)))
}

fn check_orthogonal(o: &Matrix3<f64>) -> Result<()> {
    let err = (o.transpose() * o - Matrix3::identity()).abs().max();
    if !(err <= 1e-10) {
        return Err(Error::Domain(format!("matrix is not orthogonal (deviation {err:e})")));
    }
    Ok(())
}

/// Moments in the frame `x' = O x`: `J⃗ ↦ O J⃗`, `C ↦ O C Oᵀ`.
pub fn rotate_moments(m: &CollectiveMoments, o: &Matrix3<f64>) -> Result<CollectiveMoments> {
    check_orthogonal(o)?;
    if !m.off_diagonal_known {
        return Err(Error::MissingCorrelations);
    }
    let corr = o * m.corr * o.transpose();
    Ok(CollectiveMoments {
        n: m.n,
        j_vec: o * m.j_vec,
        corr: (corr + corr.transpose()) * 0.5,
        off_diagonal_known: true,
    })
}

/// Result of diagonalizing `𝔛 = (N−1)γ + C`.
#[derive(Debug, Clone)]
pub struct DirectionOptimization {
    /// Rows are the optimal measurement axes x', y', z' (proper rotation).
    pub o: Matrix3<f64>,
    /// Observation-1 margins in the rotated frame.
    pub report: CriterionReport,
    /// Eigenvalues of 𝔛, ascending.
    pub x_eigenvalues: [f64; 3],
    /// `Tr(C) − N/2 − λ_min(𝔛)`: best eq2c margin over all directions.
    pub eq2c_best_margin: f64,
    /// `λ_max(𝔛) − (N−1)Tr(γ) + N(N−2)/4`: best eq2d margin over all directions.
    pub eq2d_best_margin: f64,
}

impl DirectionOptimization {
    pub fn eq2c_violated(&self) -> bool {
        self.eq2c_best_margin > DETECTION_TOL
    }

    pub fn eq2d_violated(&self) -> bool {
        self.eq2d_best_margin > DETECTION_TOL
    }
}

/// `(N−1)γ + C`
pub fn x_matrix(m: &CollectiveMoments) -> Matrix3<f64> {
    m.cov() * (m.n as f64 - 1.0) + m.corr
}

/// Measurement frame that diagonalizes `𝔛`, with the closed-form
/// best-direction margins for eq2c and eq2d.
pub fn optimal_directions(m: &CollectiveMoments) -> Result<DirectionOptimization> {
    require_pairs(m)?;
    if !m.off_diagonal_known {
        return Err(Error::MissingCorrelations);
    }
    let nf = m.n as f64;
    let x = x_matrix(m);
    let eig = SymmetricEigen::new((x + x.transpose()) * 0.5);
    let mut order = [0usize, 1, 2];
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let mut o = Matrix3::from_fn(|r, c| eig.eigenvectors[(c, order[r])]);
    if o.determinant() < 0.0 {
        o.row_mut(2).neg_mut();
    }
    let x_eigenvalues = order.map(|i| eig.eigenvalues[i]);
    let rotated = rotate_moments(m, &o)?;
    let report = eval_observation1(&rotated)?;
    let tr_c = m.corr.trace();
    let tr_g = m.cov().trace();
    Ok(DirectionOptimization {
        o,
        report,
        x_eigenvalues,
        eq2c_best_margin: tr_c - nf / 2.0 - x_eigenvalues[0],
        eq2d_best_margin: x_eigenvalues[2] - (nf - 1.0) * tr_g + nf * (nf - 2.0) / 4.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random;
    use crate::spin::{moments_from_state, reference_state, ReferenceState};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn moments_jk(n: usize, j: [f64; 3], k: Vector3<f64>) -> CollectiveMoments {
        CollectiveMoments::from_first_second(n, Vector3::from(j), k).unwrap()
    }

    #[test]
    fn singlet_violates_variance_sum() {
        let m = moments_jk(2, [0.0; 3], Vector3::zeros());
        let r = eval_observation1(&m).unwrap();
        assert_eq!(r.margins.len(), 8);
        assert!((r.margin(InequalityId::Eq2b).unwrap() - 1.0).abs() < 1e-15);
        assert!(r.detected);
        assert_eq!(r.argmax_id, InequalityId::Eq2b);
    }

    #[test]
    fn polarized_state_sits_on_the_boundary() {
        let m = moments_jk(4, [0.0, 0.0, 2.0], Vector3::new(1.0, 1.0, 4.0));
        let r = eval_observation1(&m).unwrap();
        assert!(r.margins.values().all(|&v| v <= 1e-12));
        assert!(r.margin(InequalityId::Eq2c(Axis::Z)).unwrap().abs() < 1e-12);
        assert!(!r.detected);
        assert!(eval_observation1(&moments_jk(1, [0.0; 3], Vector3::zeros())).is_err());
    }

    #[test]
    fn dicke_state_margins() {
        let m = moments_from_state(&reference_state(ReferenceState::DickeHalf, 4).unwrap());
        let r = eval_observation1(&m).unwrap();
        assert!((r.margin(InequalityId::Eq2c(Axis::Z)).unwrap() - 4.0).abs() < 1e-10);
        assert!(r.detected);
        assert!((eval_dicke_criterion(&m, Axis::Z).unwrap() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn dicke_criterion_examples() {
        let up = moments_jk(4, [0.0, 0.0, 2.0], Vector3::new(1.0, 1.0, 4.0));
        assert!((eval_dicke_criterion(&up, Axis::Z).unwrap() + 3.0).abs() < 1e-12);
        let mixed = moments_jk(4, [0.0; 3], Vector3::repeat(1.0));
        assert!((eval_dicke_criterion(&mixed, Axis::Z).unwrap() + 3.0).abs() < 1e-12);
    }

    #[test]
    fn standard_squeezing_examples() {
        // Coherent state along z, squeezing axis x: boundary.
        let up = moments_jk(4, [0.0, 0.0, 2.0], Vector3::new(1.0, 1.0, 4.0));
        assert!(eval_standard_squeezing(&up, Axis::X).unwrap().abs() < 1e-12);
        // No perpendicular mean spin for squeezed axis z.
        assert!(matches!(eval_standard_squeezing(&up, Axis::Z), Err(Error::Inapplicable(_))));

        let j = Vector3::new(0.7, -0.4, 0.9);
        let pts = extreme_points(&j, 5).unwrap();
        let b = moments_jk(5, j.into(), pts.b_points[0]);
        assert!(eval_standard_squeezing(&b, Axis::X).unwrap().abs() < 1e-12);

        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let m = moments_from_state(&random::product_state(4, &mut rng));
            for axis in Axis::ALL {
                if let Ok(v) = eval_standard_squeezing(&m, axis) {
                    assert!(v <= 1e-9, "{v}");
                }
            }
        }
    }

    #[test]
    fn extreme_points_at_zero_mean_spin() {
        let pts = extreme_points(&Vector3::zeros(), 6).unwrap();
        assert_eq!(pts.a_points[0], Vector3::new(9.0, 1.5, 1.5));
        assert_eq!(pts.b_points[0], Vector3::new(0.0, 1.5, 1.5));
        assert_eq!(pts.b_points[1], Vector3::new(1.5, 0.0, 1.5));
        assert_eq!(pts.b_points[2], Vector3::new(1.5, 1.5, 0.0));
        assert!((pts.kappa - 5.0 / 6.0).abs() < 1e-15);
        assert!(extreme_points(&Vector3::new(3.1, 0.0, 0.0), 6).is_err());
    }

    #[test]
    fn extreme_points_touch_the_polytope() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for n in 2..=8 {
            for _ in 0..20 {
                let j = random::ball_point(n as f64 / 2.0, &mut rng);
                let pts = extreme_points(&j, n).unwrap();
                for k in pts.a_points.iter().chain(&pts.b_points) {
                    let r = eval_observation1(&moments_jk(n, j.into(), *k)).unwrap();
                    assert!(r.max_margin <= 1e-9, "n={n} margin {}", r.max_margin);
                    assert!(r.max_margin >= -1e-9, "no active inequality at corner");
                }
            }
        }
    }

    #[test]
    fn separable_a_examples() {
        let rho = separable_extreme_a(Axis::X, &Vector3::new(1.0, 0.0, 0.0), 4).unwrap();
        let m = moments_from_state(&rho);
        assert!((m.mean(Axis::X) - 1.0).abs() < 1e-12);
        assert!((m.second(Axis::X) - 4.0).abs() < 1e-12);

        let rho = separable_extreme_a(Axis::Y, &Vector3::zeros(), 4).unwrap();
        let m = moments_from_state(&rho);
        let pts = extreme_points(&Vector3::zeros(), 4).unwrap();
        assert!((m.k_vec() - pts.a_points[1]).norm() < 1e-12);
        assert!(!eval_observation1(&m).unwrap().detected);

        assert!(matches!(
            separable_extreme_a(Axis::X, &Vector3::new(0.0, 2.0, 0.0), 4),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn separable_b_examples() {
        let (rho, gap) = separable_extreme_b(Axis::X, &Vector3::new(1.0, 0.0, 0.0), 4).unwrap();
        assert_eq!(gap, 0.0);
        assert!((rho.purity() - 1.0).abs() < 1e-12);
        let m = moments_from_state(&rho);
        let pts = extreme_points(&Vector3::new(1.0, 0.0, 0.0), 4).unwrap();
        assert!((m.k_vec() - pts.b_points[0]).norm() < 1e-12);

        // p = 0.625, M = 2.5, ε = 0.5
        let j = Vector3::new(0.5, 0.0, 0.0);
        let (rho, gap) = separable_extreme_b(Axis::X, &j, 4).unwrap();
        assert!((gap - 0.25).abs() < 1e-15);
        let m = moments_from_state(&rho);
        let pts = extreme_points(&j, 4).unwrap();
        assert!((m.second(Axis::X) - pts.b_points[0][0] - gap).abs() < 1e-12);
        assert!((m.mean(Axis::X) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn rotation_invariants() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let m = moments_from_state(&random::density_matrix(3, &mut rng));
        assert_eq!(rotate_moments(&m, &Matrix3::identity()).unwrap(), m);
        let base = eval_observation1(&m).unwrap();
        for _ in 0..20 {
            let o = random::rotation(&mut rng);
            let r = eval_observation1(&rotate_moments(&m, &o).unwrap()).unwrap();
            for id in [InequalityId::Eq2a, InequalityId::Eq2b] {
                assert!((r.margin(id).unwrap() - base.margin(id).unwrap()).abs() < 1e-10);
            }
        }
        let skew = Matrix3::new(1.0, 0.1, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0);
        assert!(rotate_moments(&m, &skew).is_err());
    }

    #[test]
    fn optimal_directions_for_singlet() {
        let m = CollectiveMoments::new(2, Vector3::zeros(), Matrix3::zeros()).unwrap();
        let opt = optimal_directions(&m).unwrap();
        assert_eq!(opt.x_eigenvalues, [0.0, 0.0, 0.0]);
        assert!((opt.eq2c_best_margin + 1.0).abs() < 1e-15);
        assert!(!opt.eq2c_violated());
        assert!(opt.report.detected);
        assert_eq!(opt.report.argmax_id, InequalityId::Eq2b);
    }

    #[test]
    fn optimal_directions_on_diagonal_input() {
        let m = CollectiveMoments::new(4, Vector3::new(0.0, 0.0, 1.0), Matrix3::from_diagonal(&Vector3::new(2.5, 1.0, 1.5)))
            .unwrap();
        let opt = optimal_directions(&m).unwrap();
        // signed permutation
        for r in 0..3 {
            let row = opt.o.row(r);
            assert_eq!(row.iter().filter(|v| v.abs() > 1e-12).count(), 1);
        }
        let base = eval_observation1(&m).unwrap();
        let mut a: Vec<f64> = base.margins.values().copied().collect();
        let mut b: Vec<f64> = opt.report.margins.values().copied().collect();
        a.sort_by(f64::total_cmp);
        b.sort_by(f64::total_cmp);
        assert!(a.iter().zip(&b).all(|(x, y)| (x - y).abs() < 1e-12));
    }

    #[test]
    fn optimal_directions_match_rotated_report() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let dicke = reference_state(ReferenceState::DickeHalf, 4).unwrap();
        let m = rotate_moments(&moments_from_state(&dicke), &random::rotation(&mut rng)).unwrap();
        let opt = optimal_directions(&m).unwrap();
        let best_c = Axis::ALL
            .iter()
            .map(|&a| opt.report.margin(InequalityId::Eq2c(a)).unwrap())
            .fold(f64::NEG_INFINITY, f64::max);
        assert!((best_c - opt.eq2c_best_margin).abs() < 1e-10);
        assert!((opt.eq2c_best_margin - 4.0).abs() < 1e-10);
        assert!((opt.o.determinant() - 1.0).abs() < 1e-12);
        assert!(matches!(
            optimal_directions(&moments_jk(4, [0.0; 3], Vector3::repeat(1.0))),
            Err(Error::MissingCorrelations)
        ));
    }
}
