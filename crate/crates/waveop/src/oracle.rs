//! Independent ground truth: a self-contained dense symmetric eigensolver,
//! the textbook sum-over-states corrections, and series-coefficient
//! extraction from eigenvalue sweeps.
//!
//! Nothing here shares a code path with the wave-operator machinery it
//! validates; the eigensolver is a plain cyclic Jacobi iteration and the
//! perturbation formulas are the classical sums over intermediate states.

use crate::error::{Error, Result};
use crate::matrix::{OperatorMatrix, SYMMETRY_TOL};
use crate::perturbation::PerturbationProblem;

/// Eigenvalues (ascending) and orthonormal eigenvectors; column `i` of
/// `vectors` pairs with `values[i]`.
#[derive(Clone, Debug)]
pub struct EigenDecomposition {
    values: Vec<f64>,
    vectors: OperatorMatrix,
}

impl EigenDecomposition {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn vectors(&self) -> &OperatorMatrix {
        &self.vectors
    }

    /// Eigenvector `i` as an owned column.
    pub fn vector(&self, i: usize) -> Vec<f64> {
        (0..self.vectors.dim())
            .map(|r| self.vectors.get(r, i))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Convergence target for the Jacobi sweep: off-diagonal Frobenius norm
/// below `1e-13 * ||A||_F`.
const JACOBI_TOL: f64 = 1e-13;
const JACOBI_MAX_SWEEPS: usize = 100;

/// Diagonalize a real symmetric matrix with cyclic Jacobi rotations.
///
/// Robust and dependency-free; at the dimensions used here (a few hundred at
/// most) the cubic-per-sweep cost is irrelevant. Rejects inputs whose
/// asymmetry exceeds the symmetry tolerance.
pub fn diagonalize_symmetric(a: &OperatorMatrix) -> Result<EigenDecomposition> {
    let max_asym = a.max_asymmetry();
    if max_asym > SYMMETRY_TOL * a.max_norm().max(1.0) {
        return Err(Error::NonSymmetric {
            max_asymmetry: max_asym,
        });
    }
    let n = a.dim();
    let mut w = a.clone();
    let mut v = OperatorMatrix::identity(n);
    let target = JACOBI_TOL * a.frobenius_norm();

    for _sweep in 0..JACOBI_MAX_SWEEPS {
        let mut off2 = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                let x = w.get(p, q);
                off2 += 2.0 * x * x;
            }
        }
        if off2.sqrt() <= target {
            return Ok(sorted_decomposition(&w, &v));
        }
        for p in 0..n - 1 {
            for q in (p + 1)..n {
                let apq = w.get(p, q);
                if apq == 0.0 {
                    continue;
                }
                // rotation angle from the stable tangent formula
                let theta = 0.5 * (w.get(q, q) - w.get(p, p)) / apq;
                let t = if theta.abs() > 1e10 {
                    0.5 / theta
                } else {
                    let sign = if theta >= 0.0 { 1.0 } else { -1.0 };
                    sign / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let tau = s / (1.0 + c);
                let h = t * apq;

                w.set(p, p, w.get(p, p) - h);
                w.set(q, q, w.get(q, q) + h);
                w.set(p, q, 0.0);
                w.set(q, p, 0.0);
                for r in 0..n {
                    if r != p && r != q {
                        let g = w.get(r, p);
                        let hh = w.get(r, q);
                        let new_p = g - s * (hh + g * tau);
                        let new_q = hh + s * (g - hh * tau);
                        w.set(r, p, new_p);
                        w.set(p, r, new_p);
                        w.set(r, q, new_q);
                        w.set(q, r, new_q);
                    }
                }
                for r in 0..n {
                    let g = v.get(r, p);
                    let hh = v.get(r, q);
                    v.set(r, p, g - s * (hh + g * tau));
                    v.set(r, q, hh + s * (g - hh * tau));
                }
            }
        }
    }
    Err(Error::ConvergenceFailure(format!(
        "Jacobi sweep did not reach {:e} * ||A||_F in {} sweeps",
        JACOBI_TOL, JACOBI_MAX_SWEEPS
    )))
}

fn sorted_decomposition(w: &OperatorMatrix, v: &OperatorMatrix) -> EigenDecomposition {
    let n = w.dim();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| w.get(i, i).partial_cmp(&w.get(j, j)).unwrap());
    let values: Vec<f64> = order.iter().map(|&i| w.get(i, i)).collect();
    let vectors = OperatorMatrix::from_fn(n, |r, c| v.get(r, order[c]));
    EigenDecomposition { values, vectors }
}

/// Classical Rayleigh-Schrodinger corrections by explicit sums over
/// intermediate states:
///
/// * `eps1[n] = h[n][n]`
/// * `eps2[n] = sum_{m != n} h[n][m]^2 / (eps_n - eps_m)`
/// * `eps3[n] = sum_{m,l != n} h[n][m] h[m][l] h[l][n]
///              / ((eps_n - eps_m)(eps_n - eps_l))
///              - eps1[n] * sum_{m != n} h[n][m]^2 / (eps_n - eps_m)^2`
pub fn sum_over_states_corrections(
    p: &PerturbationProblem,
) -> Result<(Vec<f64>, Vec<f64>, Vec<f64>)> {
    p.h0().check_non_degenerate()?;
    let d = p.dim();
    let eps = p.h0().values();
    let h = p.h();

    let eps1: Vec<f64> = h.diagonal();
    let mut eps2 = vec![0.0; d];
    let mut eps3 = vec![0.0; d];
    for n in 0..d {
        let mut s2 = 0.0;
        let mut s2sq = 0.0;
        for m in 0..d {
            if m == n {
                continue;
            }
            let hnm = h.get(n, m);
            let denom = eps[n] - eps[m];
            s2 += hnm * hnm / denom;
            s2sq += hnm * hnm / (denom * denom);
        }
        eps2[n] = s2;

        let mut s3 = 0.0;
        for m in 0..d {
            if m == n {
                continue;
            }
            let dm = eps[n] - eps[m];
            for l in 0..d {
                if l == n {
                    continue;
                }
                s3 += h.get(n, m) * h.get(m, l) * h.get(l, n) / (dm * (eps[n] - eps[l]));
            }
        }
        eps3[n] = s3 - eps1[n] * s2sq;
    }
    Ok((eps1, eps2, eps3))
}

/// Least-squares polynomial fit `y = sum_j c_j x^j`, `j = 0..=order`,
/// returning the coefficients in ascending order.
///
/// Columns of the design matrix are scaled to unit max before a Householder
/// QR solve, which keeps geometric sample grids (x spanning decades) well
/// conditioned. Needs at least `order + 2` samples.
#[allow(clippy::needless_range_loop)]
pub fn fit_series_coefficients(samples: &[(f64, f64)], order: usize) -> Result<Vec<f64>> {
    let n = samples.len();
    let cols = order + 1;
    if n < order + 2 {
        return Err(Error::InsufficientData(format!(
            "fit of order {} needs at least {} samples, got {}",
            order,
            order + 2,
            n
        )));
    }

    // design matrix with per-column scaling
    let mut a = vec![vec![0.0; cols]; n];
    for (i, &(x, _)) in samples.iter().enumerate() {
        let mut p = 1.0;
        for j in 0..cols {
            a[i][j] = p;
            p *= x;
        }
    }
    let mut scale = vec![0.0; cols];
    for (j, s) in scale.iter_mut().enumerate() {
        let mx = a.iter().map(|row| row[j].abs()).fold(0.0, f64::max);
        if mx == 0.0 {
            return Err(Error::InsufficientData(format!(
                "design column {} is identically zero",
                j
            )));
        }
        *s = mx;
        for row in a.iter_mut() {
            row[j] /= mx;
        }
    }
    let mut y: Vec<f64> = samples.iter().map(|&(_, v)| v).collect();

    // Householder QR on the scaled design matrix
    for j in 0..cols {
        let mut norm2 = 0.0;
        for i in j..n {
            norm2 += a[i][j] * a[i][j];
        }
        let norm = norm2.sqrt();
        if norm < 1e-13 {
            return Err(Error::InsufficientData(format!(
                "rank-deficient fit: column {} collapsed (distinct x values required)",
                j
            )));
        }
        let alpha = if a[j][j] >= 0.0 { -norm } else { norm };
        let mut v = vec![0.0; n];
        for i in j..n {
            v[i] = a[i][j];
        }
        v[j] -= alpha;
        let vtv: f64 = v[j..].iter().map(|x| x * x).sum();
        if vtv > 0.0 {
            for col in j..cols {
                let dot: f64 = (j..n).map(|i| v[i] * a[i][col]).sum();
                let f = 2.0 * dot / vtv;
                for i in j..n {
                    a[i][col] -= f * v[i];
                }
            }
            let dot: f64 = (j..n).map(|i| v[i] * y[i]).sum();
            let f = 2.0 * dot / vtv;
            for i in j..n {
                y[i] -= f * v[i];
            }
        }
        a[j][j] = alpha;
    }

    // back-substitution on the triangular factor
    let mut coeffs = vec![0.0; cols];
    for j in (0..cols).rev() {
        let mut acc = y[j];
        for l in (j + 1)..cols {
            acc -= a[j][l] * coeffs[l];
        }
        coeffs[j] = acc / a[j][j];
    }
    for j in 0..cols {
        coeffs[j] /= scale[j];
    }
    Ok(coeffs)
}

/// Slope of the least-squares line through `(ln x, ln y)`; the standard
/// instrument for order-of-convergence checks. Requires positive data.
pub fn log_log_slope(points: &[(f64, f64)]) -> f64 {
    let logs: Vec<(f64, f64)> = points
        .iter()
        .filter(|&&(x, y)| x > 0.0 && y > 0.0)
        .map(|&(x, y)| (x.ln(), y.ln()))
        .collect();
    if logs.len() < 2 {
        return f64::NAN;
    }
    let n = logs.len() as f64;
    let sx: f64 = logs.iter().map(|p| p.0).sum();
    let sy: f64 = logs.iter().map(|p| p.1).sum();
    let sxx: f64 = logs.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = logs.iter().map(|p| p.0 * p.1).sum();
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}
