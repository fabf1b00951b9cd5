use core::f64::consts::PI;

use super::*;
use crate::linalg::eigh;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn random_pure(rng: &mut ChaCha8Rng, dims: &[usize]) -> QuantumState {
    let total: usize = dims.iter().product();
    let mut amps: Vec<Complex64> = (0..total)
        .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let norm: f64 = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    for z in amps.iter_mut() {
        *z /= norm;
    }
    QuantumState::pure(amps, dims).unwrap()
}

fn random_density(rng: &mut ChaCha8Rng, dim: usize) -> ComplexMatrix {
    let a = ComplexMatrix::from_fn(dim, dim, |_, _| {
        c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    })
    .unwrap();
    let rho = a.matmul(&a.adjoint()).unwrap();
    rho.scale_re(1.0 / rho.trace().re)
}

// ---------------------------------------------------------------------------
// Operators
// ---------------------------------------------------------------------------

#[test]
fn annihilation_with_one_state_is_zero() {
    let a = annihilation(FockSpace::new(1).unwrap());
    assert_eq!(a.max_abs(), 0.0);
}

#[test]
fn annihilation_matrix_elements() {
    let a = annihilation(FockSpace::new(3).unwrap());
    assert_eq!(a[(0, 1)], c(1.0, 0.0));
    assert_eq!(a[(1, 2)], c(2.0f64.sqrt(), 0.0));
    let nonzero = a.data().iter().filter(|z| z.norm() > 0.0).count();
    assert_eq!(nonzero, 2);
}

#[test]
fn number_operator_is_exact_and_matches_the_ladder_product() {
    let space = FockSpace::new(200).unwrap();
    let n_op = number_operator(space);
    for k in 0..200 {
        assert_eq!(n_op[(k, k)], c(k as f64, 0.0));
    }
    // The explicit product a^dagger a carries one rounding of sqrt(k)^2 per
    // diagonal entry (at most 1 ulp; fl(sqrt(2))^2 = 2 + 2^-51 is the
    // classic case), and is exactly zero off the diagonal.
    let a = annihilation(space);
    let product = creation(space).matmul(&a).unwrap();
    for r in 0..200 {
        for s in 0..200 {
            if r == s {
                assert!((product[(r, r)].re - r as f64).abs() <= 1e-13);
                assert_eq!(product[(r, r)].im, 0.0);
            } else {
                assert_eq!(product[(r, s)], c(0.0, 0.0));
            }
        }
    }
}

#[test]
fn pauli_matrices_and_commutator() {
    let sx = pauli(PauliAxis::X);
    assert_eq!(sx[(0, 1)], c(1.0, 0.0));
    assert_eq!(sx[(1, 0)], c(1.0, 0.0));
    let sz = pauli(PauliAxis::Z);
    assert_eq!(sz[(0, 0)], c(1.0, 0.0));
    assert_eq!(sz[(1, 1)], c(-1.0, 0.0));

    // sigma_x sigma_y - sigma_y sigma_x = 2i sigma_z
    let sy = pauli(PauliAxis::Y);
    let comm = sx
        .matmul(&sy)
        .unwrap()
        .sub(&sy.matmul(&sx).unwrap())
        .unwrap();
    let expected = sz.scale(c(0.0, 2.0));
    assert_eq!(comm.max_abs_diff(&expected), 0.0);
}

#[test]
fn parity_alternates_sign() {
    let p = parity_operator(FockSpace::new(4).unwrap());
    assert_eq!(p[(0, 0)], c(1.0, 0.0));
    assert_eq!(p[(1, 1)], c(-1.0, 0.0));
    assert_eq!(p[(3, 3)], c(-1.0, 0.0));
}

// ---------------------------------------------------------------------------
// States and partial trace
// ---------------------------------------------------------------------------

#[test]
fn pure_state_norm_is_enforced() {
    let err = QuantumState::pure(vec![c(1.0, 0.0), c(0.5, 0.0)], &[2]).unwrap_err();
    assert!(matches!(err, QuantumError::InvalidState(_)));
}

#[test]
fn density_trace_is_enforced() {
    let m = ComplexMatrix::from_real_diag(&[0.5, 0.6]).unwrap();
    let err = QuantumState::density(m, &[2]).unwrap_err();
    assert!(matches!(err, QuantumError::InvalidState(_)));
}

#[test]
fn dims_must_multiply_to_state_dimension() {
    let err = QuantumState::pure(vec![c(1.0, 0.0), c(0.0, 0.0)], &[2, 2]).unwrap_err();
    assert!(matches!(err, QuantumError::InvalidState(_)));
}

#[test]
fn partial_trace_of_product_state_is_projector() {
    // |up> ⊗ |0> in dims (2, 3)
    let mut amps = vec![c(0.0, 0.0); 6];
    amps[0] = c(1.0, 0.0);
    let state = QuantumState::pure(amps, &[2, 3]).unwrap();
    let qubit = partial_trace(&state, 0).unwrap();
    let rho = qubit.to_density_matrix();
    assert_eq!(rho[(0, 0)], c(1.0, 0.0));
    assert_eq!(rho[(1, 1)], c(0.0, 0.0));
    assert!((von_neumann_entropy(&qubit).unwrap()).abs() < 1e-12);
}

#[test]
fn partial_trace_of_bell_like_state_is_maximally_mixed() {
    // (|up,0> + |down,1>)/sqrt(2) in dims (2, 2)
    let s = 1.0 / 2.0f64.sqrt();
    let amps = vec![c(s, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(s, 0.0)];
    let state = QuantumState::pure(amps, &[2, 2]).unwrap();
    let qubit = partial_trace(&state, 0).unwrap();
    let rho = qubit.to_density_matrix();
    assert!((rho[(0, 0)].re - 0.5).abs() < 1e-12);
    assert!((rho[(1, 1)].re - 0.5).abs() < 1e-12);
    assert!(rho[(0, 1)].norm() < 1e-12);
    assert!((von_neumann_entropy(&qubit).unwrap() - 1.0).abs() < 1e-10);
}

#[test]
fn partial_trace_rejects_bad_subsystem() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let state = random_pure(&mut rng, &[2, 4]);
    assert!(matches!(
        partial_trace(&state, 2),
        Err(QuantumError::SubsystemOutOfRange { keep: 2, .. })
    ));
    let single = random_pure(&mut rng, &[4]);
    assert!(matches!(
        partial_trace(&single, 0),
        Err(QuantumError::NotBipartite { subsystems: 1 })
    ));
}

#[test]
fn partial_trace_density_path_matches_pure_path() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let state = random_pure(&mut rng, &[2, 5]);
    let as_density = QuantumState::density(state.to_density_matrix(), &[2, 5]).unwrap();
    for keep in [0usize, 1] {
        let from_pure = partial_trace(&state, keep).unwrap().to_density_matrix();
        let from_density = partial_trace(&as_density, keep).unwrap().to_density_matrix();
        assert!(from_pure.max_abs_diff(&from_density) < 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    // Schmidt symmetry: both reductions of a pure bipartite state share a
    // spectrum, hence an entropy.
    #[test]
    fn reductions_share_spectrum_and_entropy(seed in 0u64..1_000_000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let state = random_pure(&mut rng, &[2, 8]);
        let rho_q = partial_trace(&state, 0).unwrap();
        let rho_cf = partial_trace(&state, 1).unwrap();
        let mut spec_q = crate::linalg::eigvalsh(&rho_q.to_density_matrix()).unwrap();
        let spec_cf = crate::linalg::eigvalsh(&rho_cf.to_density_matrix()).unwrap();
        // Pad the qubit spectrum with the zeros the larger side carries.
        spec_q.splice(0..0, [0.0; 6]);
        for (a, b) in spec_q.iter().zip(&spec_cf) {
            prop_assert!((a - b).abs() < 1e-10);
        }
        let s_q = von_neumann_entropy(&rho_q).unwrap();
        let s_cf = von_neumann_entropy(&rho_cf).unwrap();
        prop_assert!((s_q - s_cf).abs() < 1e-8);
        prop_assert!((0.0..=1.0 + 1e-9).contains(&s_q));
    }
}

// ---------------------------------------------------------------------------
// Entropy
// ---------------------------------------------------------------------------

#[test]
fn entropy_of_known_diagonal() {
    let rho = ComplexMatrix::from_real_diag(&[0.25, 0.75]).unwrap();
    let state = QuantumState::density(rho, &[2]).unwrap();
    let s = von_neumann_entropy(&state).unwrap();
    // -0.25 log2 0.25 - 0.75 log2 0.75
    assert!((s - 0.811_278_124_459_133).abs() < 1e-6);
}

#[test]
fn entropy_rejects_indefinite_matrix() {
    let rho = ComplexMatrix::from_real_diag(&[1.1, -0.1]).unwrap();
    let state = QuantumState::density(rho, &[2]).unwrap();
    assert!(matches!(
        von_neumann_entropy(&state),
        Err(QuantumError::NotPositiveSemidefinite { .. })
    ));
}

#[test]
fn entropy_clamps_tiny_negatives() {
    let rho = ComplexMatrix::from_real_diag(&[1.0 + 5e-11, -5e-11]).unwrap();
    let state = QuantumState::density(rho, &[2]).unwrap();
    let s = von_neumann_entropy(&state).unwrap();
    assert!((0.0..1e-8).contains(&s));
}

// ---------------------------------------------------------------------------
// Wigner function
// ---------------------------------------------------------------------------

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect()
}

fn fock_state(n: usize, dim: usize) -> QuantumState {
    let mut amps = vec![c(0.0, 0.0); dim];
    amps[n] = c(1.0, 0.0);
    QuantumState::pure(amps, &[dim]).unwrap()
}

/// Displaced-parity route, independent of the Laguerre expansion:
/// `W(x,p) = (1/pi) Tr[rho D(alpha) P D(alpha)^dagger]`, embedded in a
/// larger space so the truncation error stays below the tolerance.
fn wigner_oracle(rho: &ComplexMatrix, x: f64, p: f64, embed_dim: usize) -> f64 {
    let n = rho.rows();
    let mut big = ComplexMatrix::zeros(embed_dim, embed_dim);
    for r in 0..n {
        for s in 0..n {
            big[(r, s)] = rho[(r, s)];
        }
    }
    let alpha = c(x / 2.0f64.sqrt(), p / 2.0f64.sqrt());
    let d = displacement_oracle(alpha, embed_dim);
    let par = parity_operator(FockSpace::new(embed_dim).unwrap());
    let displaced_parity = d.matmul(&par).unwrap().matmul(&d.adjoint()).unwrap();
    big.matmul(&displaced_parity).unwrap().trace().re / PI
}

#[test]
fn wigner_of_vacuum_is_gaussian() {
    let state = fock_state(0, 12);
    let xs = linspace(-3.0, 3.0, 21);
    let ps = linspace(-3.0, 3.0, 21);
    let grid = wigner(&state, &xs, &ps).unwrap();
    for (xi, &x) in xs.iter().enumerate() {
        for (pi, &p) in ps.iter().enumerate() {
            let expected = (-(x * x + p * p)).exp() / PI;
            assert!((grid.value(xi, pi) - expected).abs() < 1e-8);
        }
    }
    assert!((grid.value(10, 10) - 1.0 / PI).abs() < 1e-12);
    assert!(grid.min_value() >= -1e-9);
}

#[test]
fn wigner_of_fock_one_matches_closed_form() {
    let state = fock_state(1, 12);
    let xs = linspace(-2.5, 2.5, 11);
    let ps = linspace(-2.5, 2.5, 11);
    let grid = wigner(&state, &xs, &ps).unwrap();
    for (xi, &x) in xs.iter().enumerate() {
        for (pi, &p) in ps.iter().enumerate() {
            let r2 = x * x + p * p;
            let expected = -(1.0 - 2.0 * r2) * (-r2).exp() / PI;
            assert!((grid.value(xi, pi) - expected).abs() < 1e-10);
        }
    }
    assert!((grid.value(5, 5) + 1.0 / PI).abs() < 1e-8);
}

#[test]
fn wigner_matches_displaced_parity_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let rho = random_density(&mut rng, 6);
    let state = QuantumState::density(rho.clone(), &[6]).unwrap();
    let xs = linspace(-2.0, 2.0, 5);
    let ps = linspace(-2.0, 2.0, 5);
    let grid = wigner(&state, &xs, &ps).unwrap();
    for (xi, &x) in xs.iter().enumerate() {
        for (pi, &p) in ps.iter().enumerate() {
            let oracle = wigner_oracle(&rho, x, p, 64);
            assert!(
                (grid.value(xi, pi) - oracle).abs() < 1e-6,
                "mismatch at ({x}, {p}): {} vs {}",
                grid.value(xi, pi),
                oracle
            );
        }
    }
}

#[test]
fn wigner_normalizes_over_a_wide_grid() {
    let state = fock_state(0, 8);
    let xs = linspace(-6.0, 6.0, 101);
    let ps = linspace(-6.0, 6.0, 101);
    let grid = wigner(&state, &xs, &ps).unwrap();
    assert!((grid.riemann_sum() - 1.0).abs() < 2e-2);
    assert_eq!(grid.negativity_volume(), 0.0);
}

#[test]
fn wigner_rejects_bad_axes() {
    let state = fock_state(0, 4);
    let good = [0.0, 1.0];
    assert!(matches!(
        wigner(&state, &[0.0, f64::NAN], &good),
        Err(QuantumError::InvalidAxis(_))
    ));
    assert!(matches!(
        wigner(&state, &good, &[1.0, 0.0]),
        Err(QuantumError::InvalidAxis(_))
    ));
}

#[test]
fn wigner_requires_single_mode_state() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let state = random_pure(&mut rng, &[2, 4]);
    assert!(matches!(
        wigner(&state, &[0.0, 1.0], &[0.0, 1.0]),
        Err(QuantumError::InvalidState(_))
    ));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    // |W| <= 1/pi + slack for every valid state.
    #[test]
    fn wigner_magnitude_is_bounded(seed in 0u64..1_000_000, dim in 2usize..8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rho = random_density(&mut rng, dim);
        let state = QuantumState::density(rho, &[dim]).unwrap();
        let xs = linspace(-3.0, 3.0, 9);
        let grid = wigner(&state, &xs, &xs).unwrap();
        for &w in grid.values() {
            prop_assert!(w.is_finite());
            prop_assert!(w.abs() <= 1.0 / PI + WIGNER_BOUND_SLACK);
        }
    }
}

// ---------------------------------------------------------------------------
// Displacement oracle
// ---------------------------------------------------------------------------

#[test]
fn displacement_at_zero_is_identity() {
    let d = displacement_oracle(c(0.0, 0.0), 8);
    assert!(d.max_abs_diff(&ComplexMatrix::identity(8)) < 1e-14);
}

#[test]
fn displaced_vacuum_has_poisson_statistics() {
    let alpha = c(1.0, 0.0);
    let d = displacement_oracle(alpha, 40);
    // |<n|D|0>|^2 = e^{-|a|^2} |a|^{2n} / n!
    let mut expected = (-alpha.norm_sqr()).exp();
    for n in 0..20 {
        let amp = d[(n, 0)].norm_sqr();
        assert!(
            (amp - expected).abs() < 1e-7,
            "n={n}: {amp} vs {expected}"
        );
        expected *= alpha.norm_sqr() / (n + 1) as f64;
    }
}

#[test]
fn displacement_inverse_and_unitarity() {
    let alpha = c(0.7, -1.1);
    let d = displacement_oracle(alpha, 48);
    let dinv = displacement_oracle(-alpha, 48);
    let product = d.matmul(&dinv).unwrap();
    // Truncation noise concentrates in the top rows; check a trusted block.
    for r in 0..24 {
        for s in 0..24 {
            let expected = if r == s { 1.0 } else { 0.0 };
            assert!((product[(r, s)] - c(expected, 0.0)).norm() < 1e-8);
        }
    }
    // Unitary within tolerance on the same block.
    let gram = d.adjoint().matmul(&d).unwrap();
    for r in 0..24 {
        let expected = c(1.0, 0.0);
        assert!((gram[(r, r)] - expected).norm() < 1e-8);
    }
}

#[test]
fn eigh_solves_displaced_number_operator() {
    // Consistency between modules: D n D^dagger has the same spectrum as n.
    let d = displacement_oracle(c(0.4, 0.2), 24);
    let n_op = number_operator(FockSpace::new(24).unwrap());
    let conjugated = d.matmul(&n_op).unwrap().matmul(&d.adjoint()).unwrap();
    // Hermitize away the truncation asymmetry before solving.
    let h = conjugated.add(&conjugated.adjoint()).unwrap().scale_re(0.5);
    let vals = eigh(&h).unwrap().values;
    for (k, v) in vals.iter().take(12).enumerate() {
        assert!((v - k as f64).abs() < 1e-6, "level {k}: {v}");
    }
}
