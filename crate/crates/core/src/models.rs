//! Spin-model Hamiltonians and their thermal states.
//!
//! Couplings act on Pauli matrices directly (no factor ½ per spin) and
//! temperatures are in units of the coupling with `k_B = 1`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg::{BlockSpectrum, Complex64, ComplexMatrix};
use crate::spin::{self, Axis, CollectiveOps, Pauli, MAX_QUBITS};
use crate::state::DensityMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModelFamily {
    /// `Σ_k σ⃗_k·σ⃗_{k+1}` with periodic boundary.
    HeisenbergRing,
    /// `Σ_k (σx_k σx_{k+1} + σy_k σy_{k+1})` with periodic boundary.
    XyRing,
    /// Four-site Heisenberg ring plus `J₂(σ⃗₁·σ⃗₃ + σ⃗₂·σ⃗₄)`.
    Cluster4,
    /// `Σ_{i<j} σ⃗_i·σ⃗_j`
    HeisenbergComplete,
    /// `Σ_{i<j} (σx_i σx_j + σy_i σy_j)`
    XyComplete,
}

impl ModelFamily {
    pub fn name(self) -> &'static str {
        match self {
            ModelFamily::HeisenbergRing => "heisenberg",
            ModelFamily::XyRing => "xy",
            ModelFamily::Cluster4 => "cluster4",
            ModelFamily::HeisenbergComplete => "heisenberg-complete",
            ModelFamily::XyComplete => "xy-complete",
        }
    }
}

impl fmt::Display for ModelFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ModelFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "heisenberg" | "heisenberg-ring" => Ok(ModelFamily::HeisenbergRing),
            "xy" | "xy-ring" => Ok(ModelFamily::XyRing),
            "cluster4" | "cluster" => Ok(ModelFamily::Cluster4),
            "heisenberg-complete" => Ok(ModelFamily::HeisenbergComplete),
            "xy-complete" => Ok(ModelFamily::XyComplete),
            _ => Err(Error::InvalidModel(format!("unknown model family '{s}'"))),
        }
    }
}

/// A spin model: family, size and (for the cluster) the next-to-nearest coupling.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelSpec {
    pub family: ModelFamily,
    pub n: usize,
    pub j2: f64,
}

impl ModelSpec {
    pub fn new(family: ModelFamily, n: usize, j2: f64) -> Result<Self> {
        let spec = ModelSpec { family, n, j2 };
        spec.validate()?;
        Ok(spec)
    }

    pub fn heisenberg_ring(n: usize) -> Result<Self> {
        Self::new(ModelFamily::HeisenbergRing, n, 0.0)
    }

    pub fn xy_ring(n: usize) -> Result<Self> {
        Self::new(ModelFamily::XyRing, n, 0.0)
    }

    pub fn cluster4(j2: f64) -> Result<Self> {
        Self::new(ModelFamily::Cluster4, 4, j2)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n > MAX_QUBITS {
            return Err(Error::InvalidModel(format!("at most {MAX_QUBITS} qubits, got {}", self.n)));
        }
        if !self.j2.is_finite() {
            return Err(Error::InvalidModel("J2 must be finite".into()));
        }
        match self.family {
            ModelFamily::Cluster4 if self.n != 4 => {
                Err(Error::InvalidModel(format!("cluster4 has 4 qubits, got {}", self.n)))
            }
            ModelFamily::HeisenbergRing | ModelFamily::XyRing if self.n < 3 => {
                Err(Error::InvalidModel(format!("rings need at least 3 qubits, got {}", self.n)))
            }
            ModelFamily::HeisenbergComplete | ModelFamily::XyComplete if self.n < 2 => {
                Err(Error::InvalidModel(format!("complete graphs need at least 2 qubits, got {}", self.n)))
            }
            _ => Ok(()),
        }
    }

    /// Coupled pairs with their weights.
    fn bonds(&self) -> Vec<(usize, usize, f64)> {
        let n = self.n;
        let ring = || (0..n).map(move |k| (k, (k + 1) % n, 1.0));
        match self.family {
            ModelFamily::HeisenbergRing | ModelFamily::XyRing => ring().collect(),
            ModelFamily::Cluster4 => ring().chain([(0, 2, self.j2), (1, 3, self.j2)]).collect(),
            ModelFamily::HeisenbergComplete | ModelFamily::XyComplete => (0..n)
                .flat_map(|i| ((i + 1)..n).map(move |j| (i, j, 1.0)))
                .collect(),
        }
    }

    fn coupled_axes(&self) -> &'static [Pauli] {
        match self.family {
            ModelFamily::XyRing | ModelFamily::XyComplete => &[Pauli::X, Pauli::Y],
            _ => &[Pauli::X, Pauli::Y, Pauli::Z],
        }
    }
}

impl fmt::Display for ModelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            ModelFamily::Cluster4 => write!(f, "cluster4(J2={})", self.j2),
            fam => write!(f, "{fam}(N={})", self.n),
        }
    }
}

/// Dense Hamiltonian of a model.
pub fn hamiltonian(spec: &ModelSpec) -> Result<ComplexMatrix> {
    spec.validate()?;
    let d = 1usize << spec.n;
    let mut h = ComplexMatrix::zeros(d, d);
    for (a, b, w) in spec.bonds() {
        for &p in spec.coupled_axes() {
            h = h.add(&spin::pauli_string(spec.n, &[(a, p), (b, p)], w))?;
        }
    }
    Ok(h)
}

/// A model's Hamiltonian with its spectrum, reused across temperatures.
#[derive(Debug, Clone)]
pub struct ThermalModel {
    spec: ModelSpec,
    hamiltonian: ComplexMatrix,
    spectrum: BlockSpectrum,
}

impl ThermalModel {
    pub fn new(spec: ModelSpec) -> Result<Self> {
        let hamiltonian = hamiltonian(&spec)?;
        let spectrum = BlockSpectrum::new(&hamiltonian)?;
        Ok(ThermalModel {
            spec,
            hamiltonian,
            spectrum,
        })
    }

    pub fn spec(&self) -> &ModelSpec {
        &self.spec
    }

    pub fn hamiltonian(&self) -> &ComplexMatrix {
        &self.hamiltonian
    }

    pub fn spectrum(&self) -> &BlockSpectrum {
        &self.spectrum
    }

    /// `exp(−H/t)/Z`; `t = +∞` gives the maximally mixed state exactly.
    pub fn state(&self, t: f64) -> Result<DensityMatrix> {
        let beta = inverse_temperature(t)?;
        Ok(DensityMatrix::from_trusted(self.spectrum.thermal(beta)?))
    }

    pub fn thermal_point(&self, t: f64) -> Result<ThermalPoint> {
        Ok(ThermalPoint {
            model: self.spec,
            temperature: t,
            state: self.state(t)?,
        })
    }
}

fn inverse_temperature(t: f64) -> Result<f64> {
    if t == f64::INFINITY {
        return Ok(0.0);
    }
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::Domain(format!("temperature must be positive, got {t}")));
    }
    Ok(1.0 / t)
}

/// Thermal state of a model at one temperature.
#[derive(Debug, Clone)]
pub struct ThermalPoint {
    pub model: ModelSpec,
    pub temperature: f64,
    pub state: DensityMatrix,
}

pub fn thermal_state(spec: &ModelSpec, t: f64) -> Result<ThermalPoint> {
    ThermalModel::new(*spec)?.thermal_point(t)
}

/// Default field step for [`susceptibility`].
pub const DEFAULT_FIELD_STEP: f64 = 1e-3;

/// `χ_l = ∂⟨J_l⟩/∂B_l` at zero field by central differences, with the field
/// entering as the Zeeman term `H − B·J_l`.
pub fn susceptibility(spec: &ModelSpec, axis: Axis, t: f64, delta_b: f64) -> Result<f64> {
    let beta = inverse_temperature(t)?;
    if !t.is_finite() {
        return Err(Error::Domain("susceptibility needs a finite temperature".into()));
    }
    if !(delta_b > 0.0) || !delta_b.is_finite() {
        return Err(Error::Domain(format!("field step must be positive, got {delta_b}")));
    }
    let h = hamiltonian(spec)?;
    let ops = CollectiveOps::get(spec.n);
    let j_dense = spin::collective_j(axis, spec.n)?;
    let mean_at = |b: f64| -> Result<f64> {
        let hb = h.sub(&j_dense.scale(Complex64::new(b, 0.0)))?;
        let rho = BlockSpectrum::new(&hb)?.thermal(beta)?;
        Ok(ops.j(axis).expectation(&rho).re)
    };
    Ok((mean_at(delta_b)? - mean_at(-delta_b)?) / (2.0 * delta_b))
}
