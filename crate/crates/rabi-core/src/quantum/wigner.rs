//! Wigner quasi-probability function of a single-mode state.
//!
//! Convention: `alpha = (x + i p) / sqrt(2)` and `integral W dx dp = 1`, so
//! the vacuum peaks at `1/pi` and Fock |1> dips to `-1/pi` at the origin.
//!
//! The fast path expands `W` in the Fock basis over the matrix diagonals of
//! rho: for offset `k = m - n`,
//!
//! ```text
//! W(x,p) = (1/pi) e^{-r^2} [ sum_n (-1)^n rho[n][n] L_n(2 r^2)
//!        + 2 sum_{k>=1} sum_n (-1)^n Re( rho[n+k][n] conj(B)^k sqrt(n!/(n+k)!) )
//!          L_n^{(k)}(2 r^2) ]          with  B = sqrt(2) (x + i p)
//! ```
//!
//! evaluated by an upward recurrence in the generalized Laguerre index; the
//! `conj(B)^k sqrt(n!/(n+k)!)` weights are accumulated multiplicatively so no
//! factorial or bare power ever overflows, even at N = 200.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use super::{FockSpace, QuantumError, QuantumState, StateData};
use crate::linalg::ComplexMatrix;
use crate::math;

/// Physical bound on |W| is 1/pi; stored grids may exceed it by at most this.
pub const WIGNER_BOUND_SLACK: f64 = 1e-9;

/// Default symmetric axis range `[-6, 6]` used when a caller gives none.
pub const DEFAULT_WIGNER_RANGE: f64 = 6.0;

/// Default number of samples per axis.
pub const DEFAULT_WIGNER_POINTS: usize = 201;

/// Real-valued Wigner samples over a rectangular phase-space grid.
///
/// `values` is laid out row-major in the x index: `value(xi, pi)` is
/// `values[xi * p_axis.len() + pi]`.
#[derive(Debug, Clone, PartialEq)]
pub struct WignerGrid {
    x_axis: Vec<f64>,
    p_axis: Vec<f64>,
    values: Vec<f64>,
}

impl WignerGrid {
    pub fn x_axis(&self) -> &[f64] {
        &self.x_axis
    }

    pub fn p_axis(&self) -> &[f64] {
        &self.p_axis
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value(&self, xi: usize, pi: usize) -> f64 {
        self.values[xi * self.p_axis.len() + pi]
    }

    pub fn min_value(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max_value(&self) -> f64 {
        self.values
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Riemann sum of `W dx dp` over the grid.
    pub fn riemann_sum(&self) -> f64 {
        self.cell_weighted_sum(|w| w)
    }

    /// Riemann sum of `|W| dx dp` over cells where `W < 0`; scalar proxy for
    /// non-classicality trends.
    pub fn negativity_volume(&self) -> f64 {
        self.cell_weighted_sum(|w| if w < 0.0 { -w } else { 0.0 })
    }

    fn cell_weighted_sum(&self, f: impl Fn(f64) -> f64) -> f64 {
        let wx = axis_weights(&self.x_axis);
        let wp = axis_weights(&self.p_axis);
        let np = self.p_axis.len();
        let mut total = 0.0;
        for (xi, wxi) in wx.iter().enumerate() {
            for (pi, wpi) in wp.iter().enumerate() {
                total += f(self.values[xi * np + pi]) * wxi * wpi;
            }
        }
        total
    }
}

/// Midpoint cell widths for a (possibly nonuniform) ascending axis.
fn axis_weights(axis: &[f64]) -> Vec<f64> {
    let n = axis.len();
    if n == 1 {
        return vec![1.0];
    }
    (0..n)
        .map(|i| {
            let lo = if i == 0 { axis[0] } else { 0.5 * (axis[i - 1] + axis[i]) };
            let hi = if i + 1 == n {
                axis[n - 1]
            } else {
                0.5 * (axis[i] + axis[i + 1])
            };
            hi - lo
        })
        .collect()
}

fn check_axis(name: &str, axis: &[f64]) -> Result<(), QuantumError> {
    if axis.is_empty() {
        return Err(QuantumError::InvalidAxis(format!("{name} axis is empty")));
    }
    if axis.iter().any(|v| !v.is_finite()) {
        return Err(QuantumError::InvalidAxis(format!(
            "{name} axis contains a non-finite value"
        )));
    }
    if axis.windows(2).any(|w| w[0] >= w[1]) {
        return Err(QuantumError::InvalidAxis(format!(
            "{name} axis must be strictly ascending"
        )));
    }
    Ok(())
}

/// Evaluate the Wigner function of a single-mode (field-only) state.
///
/// The state must carry exactly one subsystem; pure states are promoted to
/// their projector.
pub fn wigner(
    state: &QuantumState,
    x_axis: &[f64],
    p_axis: &[f64],
) -> Result<WignerGrid, QuantumError> {
    if state.dims().len() != 1 {
        return Err(QuantumError::InvalidState(format!(
            "Wigner evaluation needs a single-mode state, got {} subsystems \
             (trace out the qubit first)",
            state.dims().len()
        )));
    }
    check_axis("x", x_axis)?;
    check_axis("p", p_axis)?;
    let rho = match state.data() {
        StateData::Density(m) => m.clone(),
        StateData::Pure(_) => state.to_density_matrix(),
    };
    let n = rho.rows();

    // Pull the sub-diagonals of rho into contiguous bands up front; bands
    // that are exactly zero (every second one, for parity-even states)
    // contribute nothing and are dropped.
    let diag: Vec<f64> = (0..n).map(|j| rho[(j, j)].re).collect();
    let bands: Vec<(usize, Vec<Complex64>)> = (1..n)
        .filter_map(|k| {
            let band: Vec<Complex64> = (0..n - k).map(|j| rho[(j + k, j)]).collect();
            band.iter()
                .any(|z| z.re != 0.0 || z.im != 0.0)
                .then_some((k, band))
        })
        .collect();
    // Per-step ratios sqrt(j / (j + k)) for the coefficient recurrence.
    let sqrt_ratio: Vec<Vec<f64>> = bands
        .iter()
        .map(|(k, band)| {
            (0..band.len())
                .map(|j| math::sqrt((j + 1) as f64 / (j + 1 + k) as f64))
                .collect()
        })
        .collect();
    let inv_sqrt: Vec<f64> = (0..n).map(|k| 1.0 / math::sqrt(k.max(1) as f64)).collect();

    let mut values = vec![0.0f64; x_axis.len() * p_axis.len()];
    for (xi, &x) in x_axis.iter().enumerate() {
        for (pi, &p) in p_axis.iter().enumerate() {
            let r2 = x * x + p * p;
            let u = 2.0 * r2;
            let b_conj = Complex64::new(math::sqrt(2.0) * x, -math::sqrt(2.0) * p);

            // k = 0 band: sum_n (-1)^n rho_nn L_n(u).
            let mut acc = 0.0f64;
            let mut lag_prev = 0.0f64;
            let mut lag = 1.0f64;
            let mut sign = 1.0f64;
            for (j, &d) in diag.iter().enumerate() {
                acc += sign * d * lag;
                let jn = (j + 1) as f64;
                let lag_next = ((2 * j + 1) as f64 - u) * lag / jn - j as f64 * lag_prev / jn;
                lag_prev = lag;
                lag = lag_next;
                sign = -sign;
            }

            // k >= 1 bands; the head coefficient conj(B)^k / sqrt(k!) is a
            // running product over k, so nothing overflows.
            let mut head = Complex64::new(1.0, 0.0);
            let mut next_k = 1usize;
            for ((k, band), ratios) in bands.iter().zip(&sqrt_ratio) {
                while next_k <= *k {
                    head *= b_conj * inv_sqrt[next_k];
                    next_k += 1;
                }
                let mut band_sum = Complex64::new(0.0, 0.0);
                let mut coef = head;
                let mut lag_prev = 0.0f64;
                let mut lag = 1.0f64;
                let mut sign = 1.0f64;
                for (j, (z, ratio)) in band.iter().zip(ratios).enumerate() {
                    band_sum += z * coef * (sign * lag);
                    coef *= ratio;
                    let jn = (j + 1) as f64;
                    let lag_next =
                        ((2 * j + k + 1) as f64 - u) * lag / jn - (j + k) as f64 * lag_prev / jn;
                    lag_prev = lag;
                    lag = lag_next;
                    sign = -sign;
                }
                acc += 2.0 * band_sum.re;
            }

            values[xi * p_axis.len() + pi] = acc * math::exp(-r2) / PI;
        }
    }
    Ok(WignerGrid {
        x_axis: x_axis.to_vec(),
        p_axis: p_axis.to_vec(),
        values,
    })
}

/// Displacement operator `D(alpha) = exp(alpha a^dagger - conj(alpha) a)`
/// by scaling-and-squaring Taylor summation.
///
/// Test oracle for the Wigner fast path (via the displaced-parity identity
/// `W(alpha) = (1/pi) Tr[rho D(alpha) P D(alpha)^dagger]`); not used in any
/// production path. Unitary to ~1e-8 for `|alpha| <= 3` once
/// `dim >= 4 ceil(|alpha|^2) + 20`.
pub fn displacement_oracle(alpha: Complex64, dim: usize) -> ComplexMatrix {
    let space = FockSpace::new(dim.max(1)).expect("dim >= 1");
    let a = super::annihilation(space);
    let adag = a.adjoint();
    let generator = adag
        .scale(alpha)
        .sub(&a.scale(alpha.conj()))
        .expect("same shape");

    // Halve until the norm is comfortable for a plain Taylor series.
    let norm = generator.frobenius_norm();
    let mut squarings = 0u32;
    let mut scale = 1.0f64;
    while norm * scale > 0.5 {
        scale *= 0.5;
        squarings += 1;
    }
    let scaled = generator.scale_re(scale);

    let mut result = ComplexMatrix::identity(dim);
    let mut term = ComplexMatrix::identity(dim);
    for j in 1..=40u32 {
        term = term.matmul(&scaled).expect("square").scale_re(1.0 / j as f64);
        result = result.add(&term).expect("same shape");
        if term.max_abs() <= 1e-18 * result.max_abs() {
            break;
        }
    }
    for _ in 0..squarings {
        result = result.matmul(&result).expect("square");
    }
    result
}
