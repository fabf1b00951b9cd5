//! Deterministic dense Hermitian eigensolver.
//!
//! Pipeline: complex Householder reduction to a real symmetric tridiagonal
//! (phases folded into a diagonal unitary), implicit-shift QL iteration on
//! the tridiagonal, then back-transformation of whichever eigenvectors were
//! requested. No randomness, no pivot heuristics; identical input gives
//! identical output bits.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use super::{ComplexMatrix, LinalgError};
use crate::math;

/// QL sweeps allowed per eigenvalue before giving up.
const MAX_QL_ITERATIONS: usize = 50;

/// Eigenvalues (ascending) and matching unit-norm eigenvectors.
///
/// Column `k` of `vectors` belongs to `values[k]`. Within a degenerate
/// cluster the ordering is the stable sort of the QL output, and each
/// column's phase is fixed by making its largest-magnitude component real
/// and positive, so repeated runs agree bit for bit.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

/// Householder reduction output: `A = (Q Φ) T (Q Φ)^H` with `T` real
/// symmetric tridiagonal.
struct Tridiagonal {
    /// Diagonal of `T`.
    diag: Vec<f64>,
    /// Off-diagonal magnitudes, `offdiag[i] = |T[i+1][i]|`, length n-1.
    offdiag: Vec<f64>,
    /// Unit reflector for each step; empty when the step was skipped.
    reflectors: Vec<Vec<Complex64>>,
    /// Column phases Φ that make the off-diagonal real nonnegative.
    phases: Vec<Complex64>,
}

fn tridiagonalize(m: &ComplexMatrix, keep_reflectors: bool) -> Tridiagonal {
    let n = m.rows();
    let mut a = m.data().to_vec();
    let mut sub = vec![Complex64::new(0.0, 0.0); n.saturating_sub(1)];
    let mut reflectors: Vec<Vec<Complex64>> = Vec::new();
    if keep_reflectors {
        reflectors.resize(n.saturating_sub(1), Vec::new());
    }

    for i in 0..n.saturating_sub(1) {
        let len = n - 1 - i;
        // Column i below the diagonal.
        let mut v: Vec<Complex64> = (0..len).map(|t| a[(i + 1 + t) * n + i]).collect();
        let tail_zero = v[1..].iter().all(|z| z.re == 0.0 && z.im == 0.0);
        if len == 1 || tail_zero {
            // Already in tridiagonal form at this column.
            sub[i] = v[0];
            continue;
        }
        let xnorm = math::sqrt(v.iter().map(|z| z.norm_sqr()).sum());
        if xnorm == 0.0 {
            continue;
        }
        let alpha = v[0];
        let phase = if alpha.norm() > 0.0 {
            alpha / alpha.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        // v = x + phase*|x|*e1, u = v/|v|: H = I - 2uu^H maps x to
        // -phase*|x|*e1.
        v[0] += phase * xnorm;
        let vnorm = math::sqrt(v.iter().map(|z| z.norm_sqr()).sum());
        let inv = 1.0 / vnorm;
        for z in v.iter_mut() {
            *z *= inv;
        }
        sub[i] = -phase * xnorm;

        // Two-sided update of the trailing block B = A[i+1.., i+1..]:
        // p = 2 B u, mu = u^H B u, w = p - mu u, B <- B - u w^H - w u^H.
        let base = i + 1;
        let mut p = vec![Complex64::new(0.0, 0.0); len];
        for r in 0..len {
            let row = &a[(base + r) * n + base..(base + r) * n + base + len];
            let mut acc = Complex64::new(0.0, 0.0);
            for (b, u) in row.iter().zip(&v) {
                acc += b * u;
            }
            p[r] = 2.0 * acc;
        }
        // w = p - (u^H p) u; u^H p is real for Hermitian input.
        let upu = v
            .iter()
            .zip(&p)
            .map(|(u, q)| (u.conj() * q).re)
            .sum::<f64>();
        let w: Vec<Complex64> = p.iter().zip(&v).map(|(q, u)| q - upu * u).collect();
        for r in 0..len {
            let ur = v[r];
            let wr = w[r];
            let row = &mut a[(base + r) * n + base..(base + r) * n + base + len];
            for ((b, u), q) in row.iter_mut().zip(&v).zip(&w) {
                *b -= ur * q.conj() + wr * u.conj();
            }
        }
        if keep_reflectors {
            reflectors[i] = v;
        }
    }

    let diag: Vec<f64> = (0..n).map(|j| a[j * n + j].re).collect();
    let offdiag: Vec<f64> = sub.iter().map(|s| s.norm()).collect();
    let mut phases = vec![Complex64::new(1.0, 0.0); n];
    for i in 0..n.saturating_sub(1) {
        let mag = sub[i].norm();
        phases[i + 1] = if mag > 0.0 {
            sub[i] * phases[i] / mag
        } else {
            phases[i]
        };
    }
    Tridiagonal {
        diag,
        offdiag,
        reflectors,
        phases,
    }
}

/// Implicit-shift QL on a real symmetric tridiagonal.
///
/// `rot(i, c, s)` reports each plane rotation acting on columns `i`, `i+1`
/// of the accumulated transformation; pass a no-op for values only.
fn ql_implicit_shift(
    d: &mut [f64],
    e: &mut [f64],
    mut rot: impl FnMut(usize, f64, f64),
) -> Result<(), LinalgError> {
    let n = d.len();
    if n <= 1 {
        return Ok(());
    }
    debug_assert_eq!(e.len(), n);
    for l in 0..n {
        let mut iter = 0usize;
        loop {
            // Look for a negligible off-diagonal splitting the problem.
            let mut m = l;
            while m + 1 < n {
                let dd = math::abs(d[m]) + math::abs(d[m + 1]);
                if math::abs(e[m]) <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            if iter >= MAX_QL_ITERATIONS {
                return Err(LinalgError::NoConvergence {
                    eigenvalue_index: l,
                    iterations: iter,
                });
            }
            iter += 1;
            // Wilkinson-style shift from the 2x2 at the active corner.
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = math::hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + if g >= 0.0 { r } else { -r });
            let mut s = 1.0f64;
            let mut c = 1.0f64;
            let mut p = 0.0f64;
            let mut underflow = false;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = math::hypot(f, g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                let t = (d[i] - g) * s + 2.0 * c * b;
                p = s * t;
                d[i + 1] = g + p;
                g = c * t - b;
                rot(i, c, s);
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

/// Indices that sort `values` ascending, stable for ties.
fn ascending_order(values: &[f64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&a, &b| {
        values[a]
            .partial_cmp(&values[b])
            .expect("eigenvalues are finite")
    });
    idx
}

/// Fix the overall phase of each column: largest-magnitude component (first
/// such index on ties) becomes real and positive.
fn fix_column_phases(vectors: &mut ComplexMatrix) {
    let (n, k) = (vectors.rows(), vectors.cols());
    for col in 0..k {
        let mut best = 0usize;
        let mut best_mag = 0.0f64;
        for r in 0..n {
            let mag = vectors[(r, col)].norm();
            if mag > best_mag {
                best_mag = mag;
                best = r;
            }
        }
        if best_mag == 0.0 {
            continue;
        }
        let phase = vectors[(best, col)] / best_mag;
        let fix = phase.conj();
        for r in 0..n {
            vectors[(r, col)] *= fix;
        }
        // Pin the anchor exactly real.
        let anchor = vectors[(best, col)];
        vectors[(best, col)] = Complex64::new(anchor.norm(), 0.0);
    }
}

/// Full eigendecomposition of a Hermitian matrix.
///
/// Errors on non-Hermitian input (reporting the worst asymmetry) and on
/// QL non-convergence.
pub fn eigh(m: &ComplexMatrix) -> Result<EigenDecomposition, LinalgError> {
    m.check_hermitian()?;
    let n = m.rows();
    let tri = tridiagonalize(m, true);
    let mut d = tri.diag.clone();
    let mut e = tri.offdiag.clone();
    e.push(0.0);

    // Q = H_0 H_1 ... H_{n-2}, formed by applying reflectors in reverse to
    // the identity; columns <= i are untouched by H_i.
    let mut q = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        q[i * n + i] = Complex64::new(1.0, 0.0);
    }
    for i in (0..n.saturating_sub(1)).rev() {
        let u = &tri.reflectors[i];
        if u.is_empty() {
            continue;
        }
        let base = i + 1;
        for c in base..n {
            let mut dot = Complex64::new(0.0, 0.0);
            for (t, ut) in u.iter().enumerate() {
                dot += ut.conj() * q[(base + t) * n + c];
            }
            let f = 2.0 * dot;
            for (t, ut) in u.iter().enumerate() {
                q[(base + t) * n + c] -= f * ut;
            }
        }
    }
    for row in q.chunks_exact_mut(n) {
        for (z, phase) in row.iter_mut().zip(&tri.phases) {
            *z *= phase;
        }
    }

    ql_implicit_shift(&mut d, &mut e, |i, c, s| {
        for row in q.chunks_exact_mut(n) {
            let f = row[i + 1];
            let g = row[i];
            row[i + 1] = s * g + c * f;
            row[i] = c * g - s * f;
        }
    })?;

    let order = ascending_order(&d);
    let values: Vec<f64> = order.iter().map(|&j| d[j]).collect();
    let mut vectors = ComplexMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        for r in 0..n {
            vectors[(r, dst)] = q[r * n + src];
        }
    }
    fix_column_phases(&mut vectors);
    Ok(EigenDecomposition { values, vectors })
}

/// Eigenvalues only (ascending) of a Hermitian matrix; skips all
/// eigenvector work.
pub fn eigvalsh(m: &ComplexMatrix) -> Result<Vec<f64>, LinalgError> {
    m.check_hermitian()?;
    let tri = tridiagonalize(m, false);
    let mut d = tri.diag;
    let mut e = tri.offdiag;
    e.push(0.0);
    ql_implicit_shift(&mut d, &mut e, |_, _, _| {})?;
    d.sort_by(|a, b| a.partial_cmp(b).expect("eigenvalues are finite"));
    Ok(d)
}

/// The `k` smallest eigenvalues with their eigenvectors.
///
/// Runs the same tridiagonal QL as [`eigh`] but accumulates the rotations in
/// a real matrix and back-transforms only the requested columns, which is
/// substantially cheaper for small `k`. Values agree with the leading `k`
/// entries of [`eigh`] to [`super::PARTIAL_EIGENVALUE_TOL`] (in exact terms,
/// they come from the identical tridiagonal iteration).
pub fn lowest_eigenpairs(m: &ComplexMatrix, k: usize) -> Result<EigenDecomposition, LinalgError> {
    m.check_hermitian()?;
    let n = m.rows();
    if k == 0 || k > n {
        return Err(LinalgError::InvalidArgument(alloc::format!(
            "requested {k} eigenpairs of a {n}x{n} matrix; need 1 <= k <= {n}"
        )));
    }
    let tri = tridiagonalize(m, true);
    let mut d = tri.diag.clone();
    let mut e = tri.offdiag.clone();
    e.push(0.0);

    // Real accumulation of the QL rotations (column-major blocks of z).
    let mut z = vec![0.0f64; n * n];
    for i in 0..n {
        z[i * n + i] = 1.0;
    }
    ql_implicit_shift(&mut d, &mut e, |i, c, s| {
        for r in 0..n {
            let f = z[r * n + i + 1];
            let g = z[r * n + i];
            z[r * n + i + 1] = s * g + c * f;
            z[r * n + i] = c * g - s * f;
        }
    })?;

    let order = ascending_order(&d);
    let values: Vec<f64> = order.iter().take(k).map(|&j| d[j]).collect();
    let mut vectors = ComplexMatrix::zeros(n, k);
    for (dst, &src) in order.iter().take(k).enumerate() {
        // x = Phi * z_col, then reflectors applied innermost-first.
        let mut x: Vec<Complex64> = (0..n).map(|r| tri.phases[r] * z[r * n + src]).collect();
        for i in (0..n.saturating_sub(1)).rev() {
            let u = &tri.reflectors[i];
            if u.is_empty() {
                continue;
            }
            let base = i + 1;
            let mut dot = Complex64::new(0.0, 0.0);
            for (t, ut) in u.iter().enumerate() {
                dot += ut.conj() * x[base + t];
            }
            let f = 2.0 * dot;
            for (t, ut) in u.iter().enumerate() {
                x[base + t] -= f * ut;
            }
        }
        for r in 0..n {
            vectors[(r, dst)] = x[r];
        }
    }
    fix_column_phases(&mut vectors);
    Ok(EigenDecomposition { values, vectors })
}
