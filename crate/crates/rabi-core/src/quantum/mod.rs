//! Quantum primitives on the truncated Fock space: ladder and Pauli
//! operators, pure/mixed states over a qubit ⊗ cavity split, partial trace,
//! von Neumann entropy, and the Wigner function.

mod wigner;

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;

use crate::linalg::{eigvalsh, ComplexMatrix, LinalgError};
use crate::math;

pub use wigner::{
    displacement_oracle, wigner, WignerGrid, DEFAULT_WIGNER_POINTS, DEFAULT_WIGNER_RANGE,
    WIGNER_BOUND_SLACK,
};

/// Pure-state vectors must have 2-norm within this distance of 1.
pub const PURE_NORM_TOL: f64 = 1e-10;

/// Density matrices must have trace within this distance of 1.
pub const DENSITY_TRACE_TOL: f64 = 1e-10;

/// Density-matrix eigenvalues below `-PSD_EIGENVALUE_TOL` are an error.
pub const PSD_EIGENVALUE_TOL: f64 = 1e-10;

/// Eigenvalues at or below this clamp contribute zero entropy.
pub const ENTROPY_EIGENVALUE_CLAMP: f64 = 1e-12;

/// Errors from state handling and quantum-mechanical operations.
#[derive(Debug, Clone, PartialEq)]
pub enum QuantumError {
    /// A state failed its construction invariants.
    InvalidState(String),
    /// A density matrix has a negative eigenvalue beyond tolerance.
    NotPositiveSemidefinite { min_eigenvalue: f64 },
    /// `keep` does not index a subsystem.
    SubsystemOutOfRange { keep: usize, subsystems: usize },
    /// The operation requires exactly two subsystems.
    NotBipartite { subsystems: usize },
    /// A phase-space axis contains a NaN/infinity or is not ascending.
    InvalidAxis(String),
    Linalg(LinalgError),
}

impl fmt::Display for QuantumError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuantumError::InvalidState(msg) => write!(f, "invalid state: {msg}"),
            QuantumError::NotPositiveSemidefinite { min_eigenvalue } => write!(
                f,
                "not a density matrix: eigenvalue {min_eigenvalue:e} below -{PSD_EIGENVALUE_TOL:e}"
            ),
            QuantumError::SubsystemOutOfRange { keep, subsystems } => write!(
                f,
                "subsystem index {keep} out of range for {subsystems} subsystems"
            ),
            QuantumError::NotBipartite { subsystems } => write!(
                f,
                "operation requires a bipartite state, got {subsystems} subsystems"
            ),
            QuantumError::InvalidAxis(msg) => write!(f, "invalid axis: {msg}"),
            QuantumError::Linalg(err) => write!(f, "{err}"),
        }
    }
}

impl core::error::Error for QuantumError {}

impl From<LinalgError> for QuantumError {
    fn from(err: LinalgError) -> Self {
        QuantumError::Linalg(err)
    }
}

/// Truncated bosonic mode keeping the number states `|0> .. |N-1>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FockSpace {
    dim: usize,
}

impl FockSpace {
    pub fn new(dim: usize) -> Result<Self, QuantumError> {
        if dim == 0 {
            return Err(QuantumError::InvalidState(String::from(
                "Fock space needs at least one retained state",
            )));
        }
        Ok(FockSpace { dim })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
}

/// Annihilation operator `a` with `a[n-1][n] = sqrt(n)`.
pub fn annihilation(space: FockSpace) -> ComplexMatrix {
    let n = space.dim();
    let mut m = ComplexMatrix::zeros(n, n);
    for k in 1..n {
        m[(k - 1, k)] = Complex64::new(math::sqrt(k as f64), 0.0);
    }
    m
}

/// Creation operator `a^dagger`.
pub fn creation(space: FockSpace) -> ComplexMatrix {
    annihilation(space).adjoint()
}

/// Number operator `a^dagger a = diag(0, 1, ..., N-1)`, built exactly.
pub fn number_operator(space: FockSpace) -> ComplexMatrix {
    let n = space.dim();
    let mut m = ComplexMatrix::zeros(n, n);
    for k in 0..n {
        m[(k, k)] = Complex64::new(k as f64, 0.0);
    }
    m
}

/// Photon-number parity `(-1)^(a^dagger a)`.
pub fn parity_operator(space: FockSpace) -> ComplexMatrix {
    let n = space.dim();
    let mut m = ComplexMatrix::zeros(n, n);
    for k in 0..n {
        m[(k, k)] = Complex64::new(if k % 2 == 0 { 1.0 } else { -1.0 }, 0.0);
    }
    m
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PauliAxis {
    X,
    Y,
    Z,
}

/// The standard 2x2 Pauli matrices.
pub fn pauli(which: PauliAxis) -> ComplexMatrix {
    let (a, b, c, d) = match which {
        PauliAxis::X => (
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
        ),
        PauliAxis::Y => (
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, -1.0),
            Complex64::new(0.0, 1.0),
            Complex64::new(0.0, 0.0),
        ),
        PauliAxis::Z => (
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(-1.0, 0.0),
        ),
    };
    ComplexMatrix::from_vec(2, 2, alloc::vec![a, b, c, d]).expect("finite entries")
}

/// Pure vector or density matrix together with its subsystem dimensions.
#[derive(Debug, Clone, PartialEq)]
pub enum StateData {
    Pure(Vec<Complex64>),
    Density(ComplexMatrix),
}

/// Quantum state over an ordered tensor product of subsystems.
///
/// The qubit ⊗ field composite used throughout this crate has
/// `dims = [2, N]`; a reduced field state has `dims = [N]`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumState {
    data: StateData,
    dims: Vec<usize>,
}

impl QuantumState {
    /// Pure state from amplitudes; the vector must be normalized.
    pub fn pure(amplitudes: Vec<Complex64>, dims: &[usize]) -> Result<Self, QuantumError> {
        check_dims(dims, amplitudes.len())?;
        let norm_sq: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
        if !norm_sq.is_finite() {
            return Err(QuantumError::InvalidState(String::from(
                "non-finite amplitudes",
            )));
        }
        let norm = math::sqrt(norm_sq);
        if math::abs(norm - 1.0) > PURE_NORM_TOL {
            return Err(QuantumError::InvalidState(format!(
                "pure state norm {norm} is not 1 within {PURE_NORM_TOL:e}"
            )));
        }
        Ok(QuantumState {
            data: StateData::Pure(amplitudes),
            dims: dims.to_vec(),
        })
    }

    /// Density matrix; must be Hermitian with unit trace. Positive
    /// semidefiniteness is enforced where eigenvalues are computed.
    pub fn density(matrix: ComplexMatrix, dims: &[usize]) -> Result<Self, QuantumError> {
        if !matrix.is_square() {
            return Err(QuantumError::InvalidState(format!(
                "density matrix must be square, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        check_dims(dims, matrix.rows())?;
        matrix.check_hermitian()?;
        let trace = matrix.trace();
        if math::abs(trace.re - 1.0) > DENSITY_TRACE_TOL || math::abs(trace.im) > DENSITY_TRACE_TOL
        {
            return Err(QuantumError::InvalidState(format!(
                "density matrix trace {} is not 1 within {DENSITY_TRACE_TOL:e}",
                trace.re
            )));
        }
        Ok(QuantumState {
            data: StateData::Density(matrix),
            dims: dims.to_vec(),
        })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn data(&self) -> &StateData {
        &self.data
    }

    pub fn is_pure(&self) -> bool {
        matches!(self.data, StateData::Pure(_))
    }

    /// Pure amplitudes, if this is a pure state.
    pub fn amplitudes(&self) -> Option<&[Complex64]> {
        match &self.data {
            StateData::Pure(amps) => Some(amps),
            StateData::Density(_) => None,
        }
    }

    /// The state as a density matrix (outer product for pure states).
    pub fn to_density_matrix(&self) -> ComplexMatrix {
        match &self.data {
            StateData::Density(m) => m.clone(),
            StateData::Pure(amps) => {
                let n = amps.len();
                let mut m = ComplexMatrix::zeros(n, n);
                for r in 0..n {
                    for c in 0..n {
                        m[(r, c)] = amps[r] * amps[c].conj();
                    }
                }
                m
            }
        }
    }
}

fn check_dims(dims: &[usize], total: usize) -> Result<(), QuantumError> {
    if dims.is_empty() || dims.contains(&0) {
        return Err(QuantumError::InvalidState(String::from(
            "subsystem dimensions must be nonempty and positive",
        )));
    }
    let product: usize = dims.iter().product();
    if product != total {
        return Err(QuantumError::InvalidState(format!(
            "subsystem dimensions {dims:?} do not multiply to state dimension {total}"
        )));
    }
    Ok(())
}

/// Reduced density matrix over subsystem `keep` of a bipartite state.
///
/// Trace is preserved and the result is Hermitian by construction.
pub fn partial_trace(state: &QuantumState, keep: usize) -> Result<QuantumState, QuantumError> {
    if state.dims.len() != 2 {
        return Err(QuantumError::NotBipartite {
            subsystems: state.dims.len(),
        });
    }
    if keep > 1 {
        return Err(QuantumError::SubsystemOutOfRange {
            keep,
            subsystems: 2,
        });
    }
    let (d0, d1) = (state.dims[0], state.dims[1]);
    let kept_dim = if keep == 0 { d0 } else { d1 };
    let mut reduced = ComplexMatrix::zeros(kept_dim, kept_dim);
    match &state.data {
        StateData::Pure(amps) => {
            if keep == 0 {
                for s in 0..d0 {
                    for t in 0..d0 {
                        let mut acc = Complex64::new(0.0, 0.0);
                        for b in 0..d1 {
                            acc += amps[s * d1 + b] * amps[t * d1 + b].conj();
                        }
                        reduced[(s, t)] = acc;
                    }
                }
            } else {
                for m in 0..d1 {
                    for n in 0..d1 {
                        let mut acc = Complex64::new(0.0, 0.0);
                        for a in 0..d0 {
                            acc += amps[a * d1 + m] * amps[a * d1 + n].conj();
                        }
                        reduced[(m, n)] = acc;
                    }
                }
            }
        }
        StateData::Density(rho) => {
            if keep == 0 {
                for s in 0..d0 {
                    for t in 0..d0 {
                        let mut acc = Complex64::new(0.0, 0.0);
                        for b in 0..d1 {
                            acc += rho[(s * d1 + b, t * d1 + b)];
                        }
                        reduced[(s, t)] = acc;
                    }
                }
            } else {
                for m in 0..d1 {
                    for n in 0..d1 {
                        let mut acc = Complex64::new(0.0, 0.0);
                        for a in 0..d0 {
                            acc += rho[(a * d1 + m, a * d1 + n)];
                        }
                        reduced[(m, n)] = acc;
                    }
                }
            }
        }
    }
    QuantumState::density(reduced, &[kept_dim])
}

/// Von Neumann entropy `S = -Tr(rho log2 rho)` in bits.
///
/// Eigenvalues at or below [`ENTROPY_EIGENVALUE_CLAMP`] contribute zero;
/// eigenvalues below `-`[`PSD_EIGENVALUE_TOL`] are rejected.
pub fn von_neumann_entropy(rho: &QuantumState) -> Result<f64, QuantumError> {
    let eigenvalues = match &rho.data {
        // A pure state is the projector with spectrum {1, 0, ...}.
        StateData::Pure(_) => return Ok(0.0),
        StateData::Density(m) => eigvalsh(m)?,
    };
    let mut entropy = 0.0f64;
    for &lambda in &eigenvalues {
        if lambda < -PSD_EIGENVALUE_TOL {
            return Err(QuantumError::NotPositiveSemidefinite {
                min_eigenvalue: lambda,
            });
        }
        if lambda > ENTROPY_EIGENVALUE_CLAMP {
            entropy -= lambda * math::log2(lambda);
        }
    }
    Ok(entropy.max(0.0))
}

#[cfg(test)]
mod tests;
