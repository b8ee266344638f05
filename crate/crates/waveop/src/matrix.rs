//! Dense real matrices representing operators in the unperturbed eigenbasis.
//!
//! Everything here is plain row-major `f64` storage. Dimensions stay in the
//! tens-to-hundreds range, so no attempt is made to exploit band structure.

use crate::error::{Error, Result};

/// Whether a matrix is known to be symmetric.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Symmetry {
    Symmetric,
    General,
}

/// A dense square real matrix tagged with its symmetry.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorMatrix {
    dim: usize,
    entries: Vec<f64>,
    symmetry: Symmetry,
}

/// Symmetry validation threshold: `|a_ij - a_ji| <= 1e-12 * max(1, max_norm)`.
pub const SYMMETRY_TOL: f64 = 1e-12;

impl OperatorMatrix {
    /// Zero matrix of the given dimension.
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            entries: vec![0.0; dim * dim],
            symmetry: Symmetry::General,
        }
    }

    /// Identity matrix.
    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.entries[i * dim + i] = 1.0;
        }
        m
    }

    /// Diagonal matrix from a slice.
    pub fn from_diagonal(diag: &[f64]) -> Self {
        let dim = diag.len();
        let mut m = Self::zeros(dim);
        for (i, &d) in diag.iter().enumerate() {
            m.entries[i * dim + i] = d;
        }
        m.symmetry = Symmetry::Symmetric;
        m
    }

    /// Build entry-by-entry; the result is tagged general.
    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> f64) -> Self {
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                entries.push(f(i, j));
            }
        }
        Self {
            dim,
            entries,
            symmetry: Symmetry::General,
        }
    }

    /// Build from explicit rows; every row must have length `rows.len()`.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let dim = rows.len();
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: row.len(),
                });
            }
        }
        Ok(Self {
            dim,
            entries: rows.iter().flatten().copied().collect(),
            symmetry: Symmetry::General,
        })
    }

    /// Tag this matrix symmetric, validating the symmetry invariant.
    pub fn into_symmetric(mut self) -> Result<Self> {
        let max_asym = self.max_asymmetry();
        if max_asym > SYMMETRY_TOL * self.max_norm().max(1.0) {
            return Err(Error::NonSymmetric {
                max_asymmetry: max_asym,
            });
        }
        self.symmetry = Symmetry::Symmetric;
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn symmetry(&self) -> Symmetry {
        self.symmetry
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetry == Symmetry::Symmetric
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.dim + j]
    }

    /// Overwrite one entry; the symmetry tag drops to general.
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        self.entries[i * self.dim + j] = value;
        self.symmetry = Symmetry::General;
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                t.entries[j * self.dim + i] = self.entries[i * self.dim + j];
            }
        }
        t.symmetry = self.symmetry;
        t
    }

    /// Matrix product `self * rhs`.
    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "matmul dimension mismatch");
        let d = self.dim;
        let mut out = Self::zeros(d);
        for i in 0..d {
            for k in 0..d {
                let aik = self.entries[i * d + k];
                if aik == 0.0 {
                    continue;
                }
                let row = &rhs.entries[k * d..(k + 1) * d];
                let dst = &mut out.entries[i * d..(i + 1) * d];
                for (o, r) in dst.iter_mut().zip(row) {
                    *o += aik * r;
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "add dimension mismatch");
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| a + b)
            .collect();
        let symmetry = if self.is_symmetric() && rhs.is_symmetric() {
            Symmetry::Symmetric
        } else {
            Symmetry::General
        };
        Self {
            dim: self.dim,
            entries,
            symmetry,
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "sub dimension mismatch");
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| a - b)
            .collect();
        let symmetry = if self.is_symmetric() && rhs.is_symmetric() {
            Symmetry::Symmetric
        } else {
            Symmetry::General
        };
        Self {
            dim: self.dim,
            entries,
            symmetry,
        }
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|a| c * a).collect(),
            symmetry: self.symmetry,
        }
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(self.dim, v.len(), "mul_vec dimension mismatch");
        let d = self.dim;
        (0..d)
            .map(|i| {
                self.entries[i * d..(i + 1) * d]
                    .iter()
                    .zip(v)
                    .map(|(a, x)| a * x)
                    .sum()
            })
            .collect()
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.dim).map(|i| self.get(i, i)).collect()
    }

    /// Largest entry magnitude.
    pub fn max_norm(&self) -> f64 {
        self.entries.iter().fold(0.0, |acc, a| acc.max(a.abs()))
    }

    /// Maximum column sum of magnitudes (the induced 1-norm).
    pub fn one_norm(&self) -> f64 {
        let d = self.dim;
        (0..d)
            .map(|j| (0..d).map(|i| self.entries[i * d + j].abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|a| a * a).sum::<f64>().sqrt()
    }

    /// Largest `|a_ij - a_ji|` over all pairs.
    pub fn max_asymmetry(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                worst = worst.max((self.get(i, j) - self.get(j, i)).abs());
            }
        }
        worst
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }
}

/// Commutator `[a, b] = ab - ba`.
pub fn commutator(a: &OperatorMatrix, b: &OperatorMatrix) -> Result<OperatorMatrix> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    Ok(a.matmul(b).sub(&b.matmul(a)))
}
