//! PPT and CCNR tests over every bipartition of a register.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{self, Bipartition};
use crate::state::DensityMatrix;

/// Partial-transpose eigenvalues below `-NPT_TOL` mark a state as NPT.
pub const NPT_TOL: f64 = 1e-10;

/// Realignment margins above this value count as a CCNR detection.
pub const CCNR_TOL: f64 = crate::criteria::DETECTION_TOL;

/// Verdicts for one bipartition. Fields are `None` when that test was not run.
#[derive(Debug, Clone, PartialEq)]
pub struct BipartitionRecord {
    pub bipartition: Bipartition,
    pub min_pt_eigenvalue: Option<f64>,
    /// `‖R(ρ)‖₁ − 1`
    pub ccnr_margin: Option<f64>,
}

/// Per-bipartition verdicts, in the order of [`Bipartition::all`].
#[derive(Debug, Clone, PartialEq)]
pub struct BipartitionVerdicts {
    pub records: Vec<BipartitionRecord>,
}

impl BipartitionVerdicts {
    pub fn min_pt_eigenvalue(&self) -> Option<f64> {
        self.records
            .iter()
            .filter_map(|r| r.min_pt_eigenvalue)
            .reduce(f64::min)
    }

    pub fn max_ccnr_margin(&self) -> Option<f64> {
        self.records.iter().filter_map(|r| r.ccnr_margin).reduce(f64::max)
    }

    /// NPT with respect to at least one bipartition.
    pub fn is_npt(&self) -> bool {
        self.min_pt_eigenvalue().is_some_and(|v| v < -NPT_TOL)
    }

    pub fn ccnr_detected(&self) -> bool {
        self.max_ccnr_margin().is_some_and(|v| v > CCNR_TOL)
    }
}

fn require_multipartite(rho: &DensityMatrix) -> Result<()> {
    if rho.n_qubits() < 2 {
        return Err(Error::Domain("bipartitions need at least two qubits".into()));
    }
    Ok(())
}

fn run(rho: &DensityMatrix, ppt: bool, ccnr: bool) -> Result<BipartitionVerdicts> {
    require_multipartite(rho)?;
    let records = Bipartition::all(rho.n_qubits())
        .into_par_iter()
        .map(|part| {
            let min_pt_eigenvalue = if ppt {
                Some(linalg::min_eigenvalue(&linalg::partial_transpose(rho, &part)?)?)
            } else {
                None
            };
            let ccnr_margin = if ccnr {
                Some(linalg::trace_norm(&linalg::realign(rho, &part)?) - 1.0)
            } else {
                None
            };
            Ok(BipartitionRecord {
                bipartition: part,
                min_pt_eigenvalue,
                ccnr_margin,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BipartitionVerdicts { records })
}

/// Smallest partial-transpose eigenvalue for every bipartition.
pub fn ppt_all(rho: &DensityMatrix) -> Result<BipartitionVerdicts> {
    run(rho, true, false)
}

/// Realignment margin for every bipartition.
pub fn ccnr_all(rho: &DensityMatrix) -> Result<BipartitionVerdicts> {
    run(rho, false, true)
}

/// Both tests for every bipartition.
pub fn separability_all(rho: &DensityMatrix) -> Result<BipartitionVerdicts> {
    run(rho, true, true)
}

/// `−λ_min(ρ^{T_A})` for a two-qubit state; positive means entangled.
pub fn two_qubit_ppt_margin(rho2: &DensityMatrix) -> Result<f64> {
    if rho2.n_qubits() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            got: rho2.dim(),
        });
    }
    let part = Bipartition::new(2, &[0])?;
    Ok(-linalg::min_eigenvalue(&linalg::partial_transpose(rho2, &part)?)?)
}
