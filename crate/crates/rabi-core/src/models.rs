//! The quantum Rabi model family as dense Hermitian matrices on the
//! qubit ⊗ field composite space.
//!
//! Four variants share one parameter set: the plain Rabi model, its
//! Stark-shifted extension, and the two-photon versions of both where the
//! qubit couples to `(a^dagger)^2 + a^2`. The subsystem ordering is
//! qubit ⊗ field everywhere; `hbar = 1` and frequencies are in units of the
//! cavity frequency unless the caller says otherwise.

use alloc::format;
use alloc::string::String;
use core::fmt;

use crate::linalg::{lowest_eigenpairs, ComplexMatrix, LinalgError};
use crate::quantum::{
    annihilation, creation, number_operator, pauli, FockSpace, PauliAxis, QuantumError,
    QuantumState,
};

/// Which member of the model family to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelVariant {
    /// Linear coupling `g sigma_x (a^dagger + a)`.
    Qrm,
    /// QRM plus the Stark term `gamma sigma_z a^dagger a`.
    Qrsm,
    /// Two-photon coupling `g sigma_z ((a^dagger)^2 + a^2)`, no Stark term.
    TwoPhotonQrm,
    /// Two-photon coupling with the Stark term folded into the qubit energy:
    /// `-(omega_0/2 + gamma a^dagger a) sigma_x`.
    TwoPhotonRsm,
}

impl ModelVariant {
    pub fn is_two_photon(&self) -> bool {
        matches!(self, ModelVariant::TwoPhotonQrm | ModelVariant::TwoPhotonRsm)
    }

    /// CLI/file token for the variant.
    pub fn token(&self) -> &'static str {
        match self {
            ModelVariant::Qrm => "qrm",
            ModelVariant::Qrsm => "qrsm",
            ModelVariant::TwoPhotonQrm => "2pqrm",
            ModelVariant::TwoPhotonRsm => "2prsm",
        }
    }
}

impl fmt::Display for ModelVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

/// Physical parameters of a model instance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    pub variant: ModelVariant,
    /// Cavity frequency; the natural unit, default 1.
    pub omega_c: f64,
    /// Qubit splitting, same units.
    pub omega_0: f64,
    /// Qubit-field coupling strength.
    pub g: f64,
    /// Stark coupling strength.
    pub gamma: f64,
    /// Fock truncation N (states `|0> .. |N-1>`).
    pub fock_dim: usize,
}

impl ModelParams {
    /// Resonant defaults: `omega_c = omega_0 = 1`, `g = gamma = 0`.
    pub fn new(variant: ModelVariant, fock_dim: usize) -> Self {
        ModelParams {
            variant,
            omega_c: 1.0,
            omega_0: 1.0,
            g: 0.0,
            gamma: 0.0,
            fock_dim,
        }
    }

    /// Full invariants required of simulation inputs.
    pub fn validate(&self) -> Result<(), ModelError> {
        self.check_buildable()?;
        if self.fock_dim < 2 {
            return Err(ModelError::InvalidParams(format!(
                "fock_dim must be at least 2, got {}",
                self.fock_dim
            )));
        }
        if self.g < 0.0 {
            return Err(ModelError::InvalidParams(format!(
                "coupling g must be nonnegative, got {}",
                self.g
            )));
        }
        Ok(())
    }

    /// The weaker preconditions under which the matrix construction itself
    /// is well-defined (admits the degenerate N = 1 case and g of either
    /// sign, both useful in symmetry checks).
    fn check_buildable(&self) -> Result<(), ModelError> {
        for (name, value) in [
            ("omega_c", self.omega_c),
            ("omega_0", self.omega_0),
            ("g", self.g),
            ("gamma", self.gamma),
        ] {
            if !value.is_finite() {
                return Err(ModelError::InvalidParams(format!("{name} must be finite")));
            }
        }
        if self.omega_c <= 0.0 {
            return Err(ModelError::InvalidParams(format!(
                "omega_c must be positive, got {}",
                self.omega_c
            )));
        }
        if self.fock_dim == 0 {
            return Err(ModelError::InvalidParams(String::from(
                "fock_dim must be at least 1",
            )));
        }
        if self.variant == ModelVariant::TwoPhotonQrm && self.gamma != 0.0 {
            return Err(ModelError::InvalidParams(format!(
                "gamma must be exactly 0 for the 2pqrm variant (got {}); use 2prsm instead",
                self.gamma
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ModelError {
    InvalidParams(String),
    Linalg(LinalgError),
    Quantum(QuantumError),
}

impl fmt::Display for ModelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelError::InvalidParams(msg) => write!(f, "invalid model parameters: {msg}"),
            ModelError::Linalg(err) => write!(f, "{err}"),
            ModelError::Quantum(err) => write!(f, "{err}"),
        }
    }
}

impl core::error::Error for ModelError {}

impl From<LinalgError> for ModelError {
    fn from(err: LinalgError) -> Self {
        ModelError::Linalg(err)
    }
}

impl From<QuantumError> for ModelError {
    fn from(err: QuantumError) -> Self {
        ModelError::Quantum(err)
    }
}

/// Build the 2N x 2N Hamiltonian for the given parameters, ordering
/// qubit ⊗ field.
///
/// Terms follow the defining equations directly:
///
/// ```text
/// QRM:    omega_c I ⊗ n + (omega_0/2) sigma_z ⊗ I + g sigma_x ⊗ (a^dag + a)
/// QRSM:   QRM + gamma sigma_z ⊗ n
/// 2pRSM:  -sigma_x ⊗ (omega_0/2 I + gamma n) + omega_c I ⊗ n
///         + g sigma_z ⊗ ((a^dag)^2 + a^2)
/// 2pQRM:  2pRSM with gamma = 0
/// ```
///
/// The construction is manifestly Hermitian; the number operator enters as
/// the exact integer diagonal, and `(a^dagger)^2` is the square of the
/// truncated ladder operator (no boundary correction).
pub fn build_hamiltonian(params: &ModelParams) -> Result<ComplexMatrix, ModelError> {
    params.check_buildable()?;
    let space = FockSpace::new(params.fock_dim)?;
    let n_op = number_operator(space);
    let id_f = ComplexMatrix::identity(params.fock_dim);
    let id_q = ComplexMatrix::identity(2);
    let cavity = id_q.kron(&n_op.scale_re(params.omega_c))?;

    let h = match params.variant {
        ModelVariant::Qrm | ModelVariant::Qrsm => {
            let a = annihilation(space);
            let position = creation(space).add(&a)?;
            let qubit = pauli(PauliAxis::Z)
                .scale_re(params.omega_0 / 2.0)
                .kron(&id_f)?;
            let coupling = pauli(PauliAxis::X).kron(&position.scale_re(params.g))?;
            let mut h = cavity.add(&qubit)?.add(&coupling)?;
            if params.variant == ModelVariant::Qrsm {
                let stark = pauli(PauliAxis::Z).kron(&n_op.scale_re(params.gamma))?;
                h = h.add(&stark)?;
            }
            h
        }
        ModelVariant::TwoPhotonQrm | ModelVariant::TwoPhotonRsm => {
            let a = annihilation(space);
            let adag = creation(space);
            let two_photon = adag.matmul(&adag)?.add(&a.matmul(&a)?)?;
            let qubit_field = id_f
                .scale_re(params.omega_0 / 2.0)
                .add(&n_op.scale_re(params.gamma))?;
            let qubit = pauli(PauliAxis::X).kron(&qubit_field)?.scale_re(-1.0);
            let coupling = pauli(PauliAxis::Z).kron(&two_photon.scale_re(params.g))?;
            cavity.add(&qubit)?.add(&coupling)?
        }
    };
    Ok(h)
}

/// Ground energy and state of the model.
///
/// The state is the unit-norm lowest eigenvector as a pure state with
/// dims `(2, N)`; its phase follows the solver's convention (largest
/// amplitude real positive), so repeat calls agree bit for bit.
pub fn ground_state(params: &ModelParams) -> Result<(f64, QuantumState), ModelError> {
    params.validate()?;
    let h = build_hamiltonian(params)?;
    let decomp = lowest_eigenpairs(&h, 1)?;
    let state = QuantumState::pure(decomp.vectors.column(0), &[2, params.fock_dim])?;
    Ok((decomp.values[0], state))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{eigh, eigvalsh};
    use crate::quantum::{parity_operator, partial_trace, von_neumann_entropy};
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn params(variant: ModelVariant, n: usize) -> ModelParams {
        ModelParams::new(variant, n)
    }

    #[test]
    fn two_photon_with_frozen_field_reduces_to_the_qubit() {
        // N = 1 leaves only -(omega_0/2) sigma_x.
        let p = ModelParams {
            g: 0.7,
            gamma: 0.2,
            ..params(ModelVariant::TwoPhotonRsm, 1)
        };
        let h = build_hamiltonian(&p).unwrap();
        assert_eq!(h.rows(), 2);
        assert_eq!(h[(0, 1)], c(-0.5, 0.0));
        assert_eq!(h[(1, 0)], c(-0.5, 0.0));
        let vals = eigvalsh(&h).unwrap();
        assert!((vals[0] + 0.5).abs() < 1e-14);
        assert!((vals[1] - 0.5).abs() < 1e-14);
    }

    #[test]
    fn decoupled_two_photon_spectrum_is_the_shifted_ladder() {
        // g = 0, gamma = 0: eigenvalues n*omega_c ± omega_0/2.
        let p = params(ModelVariant::TwoPhotonRsm, 6);
        let vals = eigvalsh(&build_hamiltonian(&p).unwrap()).unwrap();
        let mut expected: Vec<f64> = (0..6)
            .flat_map(|n| [n as f64 - 0.5, n as f64 + 0.5])
            .collect();
        expected.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (got, want) in vals.iter().zip(&expected) {
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn two_photon_stark_matrix_matches_hand_expansion_at_n2() {
        // omega_c = omega_0 = 1, gamma = 0.5, g = 0.2, N = 2. The two-photon
        // term vanishes (a^2 = 0 at N = 2) and the remaining blocks are
        // diag(0,1) on each qubit branch with -(0.5 + 0.5 n) on sigma_x:
        let p = ModelParams {
            gamma: 0.5,
            g: 0.2,
            ..params(ModelVariant::TwoPhotonRsm, 2)
        };
        let h = build_hamiltonian(&p).unwrap();
        #[rustfmt::skip]
        let expected = ComplexMatrix::from_vec(4, 4, vec![
            c(0.0, 0.0),  c(0.0, 0.0), c(-0.5, 0.0), c(0.0, 0.0),
            c(0.0, 0.0),  c(1.0, 0.0), c(0.0, 0.0),  c(-1.0, 0.0),
            c(-0.5, 0.0), c(0.0, 0.0), c(0.0, 0.0),  c(0.0, 0.0),
            c(0.0, 0.0),  c(-1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0),
        ])
        .unwrap();
        assert_eq!(h.max_abs_diff(&expected), 0.0);
    }

    #[test]
    fn stark_free_variants_coincide() {
        let qrsm = ModelParams {
            g: 0.3,
            ..params(ModelVariant::Qrsm, 12)
        };
        let qrm = ModelParams {
            variant: ModelVariant::Qrm,
            ..qrsm
        };
        let h1 = build_hamiltonian(&qrsm).unwrap();
        let h2 = build_hamiltonian(&qrm).unwrap();
        assert_eq!(h1.max_abs_diff(&h2), 0.0);

        let tprsm = ModelParams {
            g: 0.3,
            ..params(ModelVariant::TwoPhotonRsm, 12)
        };
        let tpqrm = ModelParams {
            variant: ModelVariant::TwoPhotonQrm,
            ..tprsm
        };
        let h3 = build_hamiltonian(&tprsm).unwrap();
        let h4 = build_hamiltonian(&tpqrm).unwrap();
        assert_eq!(h3.max_abs_diff(&h4), 0.0);
    }

    #[test]
    fn hamiltonians_are_hermitian() {
        for variant in [
            ModelVariant::Qrm,
            ModelVariant::Qrsm,
            ModelVariant::TwoPhotonQrm,
            ModelVariant::TwoPhotonRsm,
        ] {
            let gamma = if variant == ModelVariant::TwoPhotonQrm {
                0.0
            } else {
                0.4
            };
            let p = ModelParams {
                g: 0.6,
                gamma,
                omega_0: 0.8,
                ..params(variant, 10)
            };
            let h = build_hamiltonian(&p).unwrap();
            assert!(h.is_hermitian(), "{variant} not Hermitian");
            assert_eq!(h.rows(), 20);
        }
    }

    #[test]
    fn two_photon_hamiltonian_commutes_with_photon_parity() {
        let p = ModelParams {
            g: 0.4,
            gamma: 0.3,
            ..params(ModelVariant::TwoPhotonRsm, 8)
        };
        let h = build_hamiltonian(&p).unwrap();
        let parity = ComplexMatrix::identity(2)
            .kron(&parity_operator(FockSpace::new(8).unwrap()))
            .unwrap();
        let comm = h
            .matmul(&parity)
            .unwrap()
            .sub(&parity.matmul(&h).unwrap())
            .unwrap();
        assert!(comm.max_abs() <= 1e-12 * h.max_abs());
    }

    #[test]
    fn two_photon_spectrum_is_even_in_g() {
        let plus = ModelParams {
            g: 0.35,
            gamma: 0.2,
            ..params(ModelVariant::TwoPhotonRsm, 40)
        };
        let minus = ModelParams { g: -0.35, ..plus };
        let ev_plus = eigvalsh(&build_hamiltonian(&plus).unwrap()).unwrap();
        let ev_minus = eigvalsh(&build_hamiltonian(&minus).unwrap()).unwrap();
        for (a, b) in ev_plus.iter().zip(&ev_minus) {
            assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn decoupled_ground_state_is_separable() {
        for variant in [ModelVariant::Qrm, ModelVariant::TwoPhotonRsm] {
            let p = params(variant, 16);
            let (energy, state) = ground_state(&p).unwrap();
            assert!((energy + 0.5).abs() < 1e-12, "{variant}: {energy}");
            let qubit = partial_trace(&state, 0).unwrap();
            assert!(von_neumann_entropy(&qubit).unwrap() < 1e-10);
            assert_eq!(state.dims(), &[2, 16]);
        }
    }

    #[test]
    fn ground_state_phase_is_deterministic_near_degeneracy() {
        let p = ModelParams {
            g: 0.45,
            ..params(ModelVariant::TwoPhotonQrm, 30)
        };
        let (e1, s1) = ground_state(&p).unwrap();
        let (e2, s2) = ground_state(&p).unwrap();
        assert_eq!(e1.to_bits(), e2.to_bits());
        assert_eq!(s1, s2);
        let amps = s1.amplitudes().unwrap();
        let largest = amps
            .iter()
            .cloned()
            .reduce(|a, b| if b.norm() > a.norm() { b } else { a })
            .unwrap();
        assert!(largest.im.abs() < 1e-14 && largest.re > 0.0);
    }

    #[test]
    fn ground_energy_is_converged_in_the_truncation() {
        let base = ModelParams {
            g: 0.1,
            ..params(ModelVariant::TwoPhotonQrm, 100)
        };
        let (e100, _) = ground_state(&base).unwrap();
        let (e200, _) = ground_state(&ModelParams {
            fock_dim: 200,
            ..base
        })
        .unwrap();
        assert!((e100 - e200).abs() < 1e-8);
    }

    #[test]
    fn lowest_eigenpairs_agree_with_full_solve_on_a_hamiltonian() {
        let p = ModelParams {
            g: 0.2,
            gamma: 0.3,
            ..params(ModelVariant::TwoPhotonRsm, 60)
        };
        let h = build_hamiltonian(&p).unwrap();
        let partial = crate::linalg::lowest_eigenpairs(&h, 5).unwrap();
        let full = eigh(&h).unwrap();
        for (a, b) in partial.values.iter().zip(full.values.iter().take(5)) {
            assert!((a - b).abs() < 1e-8);
        }
    }

    #[test]
    fn validation_rules() {
        let mut p = params(ModelVariant::TwoPhotonQrm, 1);
        assert!(build_hamiltonian(&p).is_ok());
        assert!(p.validate().is_err(), "fock_dim 1 fails full validation");
        p.fock_dim = 0;
        assert!(build_hamiltonian(&p).is_err());

        let bad_alias = ModelParams {
            gamma: 0.5,
            ..params(ModelVariant::TwoPhotonQrm, 8)
        };
        assert!(matches!(
            build_hamiltonian(&bad_alias),
            Err(ModelError::InvalidParams(_))
        ));

        let negative_g = ModelParams {
            g: -0.1,
            ..params(ModelVariant::Qrm, 8)
        };
        assert!(negative_g.validate().is_err());
        assert!(build_hamiltonian(&negative_g).is_ok());

        let bad_omega = ModelParams {
            omega_c: 0.0,
            ..params(ModelVariant::Qrm, 8)
        };
        assert!(bad_omega.validate().is_err());
    }
}
