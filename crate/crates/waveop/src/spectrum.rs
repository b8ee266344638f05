//! The unperturbed spectrum: ordered eigenvalues of a diagonal Hamiltonian.

use crate::error::{Error, Result};
use crate::matrix::OperatorMatrix;

/// Ordered eigenvalues `eps_0 <= eps_1 <= ...` of the unperturbed Hamiltonian.
///
/// Construction only checks finiteness and ordering; non-degeneracy is
/// enforced by the operations that divide by level gaps, so that a
/// degenerate input surfaces as [`Error::DegenerateSpectrum`] at the point
/// of use.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    values: Vec<f64>,
}

impl Spectrum {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidParameter("spectrum must be non-empty".into()));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter(
                "spectrum contains non-finite values".into(),
            ));
        }
        if values.windows(2).any(|w| w[1] < w[0]) {
            return Err(Error::InvalidParameter(
                "spectrum values must be non-decreasing".into(),
            ));
        }
        Ok(Self { values })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn value(&self, n: usize) -> f64 {
        self.values[n]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Spectral range `eps_max - eps_min`.
    pub fn range(&self) -> f64 {
        self.values[self.values.len() - 1] - self.values[0]
    }

    /// Gap threshold below which two levels count as degenerate.
    ///
    /// `1e-8 * max(1, range)` keeps the largest admissible `1/(eps_n - eps_m)`
    /// around `1e8`, the edge of double-precision usefulness.
    pub fn degeneracy_tol(&self) -> f64 {
        1e-8 * self.range().max(1.0)
    }

    /// Smallest pairwise gap and the indices realizing it.
    ///
    /// Values are sorted, so the minimum pairwise gap is attained by an
    /// adjacent pair.
    pub fn min_gap(&self) -> Option<(f64, usize, usize)> {
        if self.values.len() < 2 {
            return None;
        }
        let mut best = (f64::INFINITY, 0, 1);
        for i in 0..self.values.len() - 1 {
            let gap = self.values[i + 1] - self.values[i];
            if gap < best.0 {
                best = (gap, i, i + 1);
            }
        }
        Some(best)
    }

    /// Err with the offending pair if any gap is at or below the tolerance.
    pub fn check_non_degenerate(&self) -> Result<()> {
        if let Some((gap, i, j)) = self.min_gap() {
            if gap <= self.degeneracy_tol() {
                return Err(Error::DegenerateSpectrum { i, j, gap });
            }
        }
        Ok(())
    }

    /// The spectrum as a diagonal matrix.
    pub fn to_diagonal_matrix(&self) -> OperatorMatrix {
        OperatorMatrix::from_diagonal(&self.values)
    }
}
