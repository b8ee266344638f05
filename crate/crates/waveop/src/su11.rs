//! Truncated matrix realization of the SU(1,1) ladder algebra.
//!
//! States `|k, m>` with `m = k, k+1, ..., k+D-1` map to basis indices
//! `0..D`. The generators satisfy `[K0, K+-] = +-K+-` and `[K+, K-] = -2 K0`
//! exactly in infinite dimension; on the truncated matrices the identities
//! hold on interior rows only, so every algebraic assertion in the tests is
//! restricted to the window where truncation cannot leak.

use crate::deep::DeepPotentialModel;
use crate::error::{Error, Result};
use crate::matrix::OperatorMatrix;

/// Lowest admissible Bargmann index; the physics layer only produces
/// `k = (l + 3/2)/2 >= 3/4`, but the algebra is valid for any `k > 1/2`.
pub const MIN_BARGMANN_INDEX: f64 = 0.5;

/// A truncated `|k, m>` ladder basis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Su11Basis {
    k: f64,
    dim: usize,
}

impl Su11Basis {
    /// Basis with Bargmann index `k` (must exceed 1/2) and `dim >= 4` states.
    pub fn new(k: f64, dim: usize) -> Result<Self> {
        if !k.is_finite() || k <= MIN_BARGMANN_INDEX {
            return Err(Error::InvalidParameter(format!(
                "Bargmann index k must exceed {}, got {}",
                MIN_BARGMANN_INDEX, k
            )));
        }
        if dim < 4 {
            return Err(Error::InvalidParameter(format!(
                "ladder basis needs dim >= 4, got {}",
                dim
            )));
        }
        Ok(Self { k, dim })
    }

    /// Basis for orbital angular momentum `l`: `k = (l + 3/2) / 2`.
    pub fn from_angular_momentum(l: u32, dim: usize) -> Result<Self> {
        Self::new((l as f64 + 1.5) / 2.0, dim)
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The `K0` eigenvalue of basis state `i`.
    pub fn m_value(&self, i: usize) -> f64 {
        self.k + i as f64
    }

    /// Indices far enough from the truncation boundary that finite products
    /// reproduce the infinite-dimensional algebra: `2 <= i <= dim - 3`.
    pub fn interior(&self) -> std::ops::RangeInclusive<usize> {
        2..=self.dim - 3
    }
}

/// The three generators as truncated matrices, `kminus = kplus^T` exactly.
#[derive(Clone, Debug)]
pub struct LadderMatrices {
    basis: Su11Basis,
    k0: OperatorMatrix,
    kplus: OperatorMatrix,
    kminus: OperatorMatrix,
}

/// Build `K0`, `K+`, `K-` for a basis.
///
/// `K+` carries `sqrt((m + k)(m - k + 1))` from state `m` to `m + 1`; the
/// action of `K- K+` on the top state is wrong by construction (the raised
/// state is truncated away), which is why correctness claims are
/// interior-only.
pub fn build_ladders(basis: &Su11Basis) -> LadderMatrices {
    let d = basis.dim();
    let k = basis.k();
    let k0 = OperatorMatrix::from_diagonal(&(0..d).map(|i| basis.m_value(i)).collect::<Vec<_>>());
    let mut kplus = OperatorMatrix::zeros(d);
    for i in 0..d - 1 {
        let m = basis.m_value(i);
        kplus.set(i + 1, i, ((m + k) * (m - k + 1.0)).sqrt());
    }
    let kminus = kplus.transpose();
    LadderMatrices {
        basis: *basis,
        k0,
        kplus,
        kminus,
    }
}

impl LadderMatrices {
    pub fn basis(&self) -> &Su11Basis {
        &self.basis
    }

    pub fn k0(&self) -> &OperatorMatrix {
        &self.k0
    }

    pub fn kplus(&self) -> &OperatorMatrix {
        &self.kplus
    }

    pub fn kminus(&self) -> &OperatorMatrix {
        &self.kminus
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }
}

/// Casimir `K0^2 - (K+ K- + K- K+)/2`; on interior rows it is diagonal with
/// value `k (k - 1)`.
pub fn casimir_matrix(lm: &LadderMatrices) -> OperatorMatrix {
    let k0sq = lm.k0.matmul(&lm.k0);
    let anti = lm
        .kplus
        .matmul(&lm.kminus)
        .add(&lm.kminus.matmul(&lm.kplus));
    k0sq.sub(&anti.scaled(0.5))
}

/// The Casimir eigenvalue `k (k - 1)` for a basis.
pub fn casimir_value(basis: &Su11Basis) -> f64 {
    basis.k() * (basis.k() - 1.0)
}

/// The composite raising/lowering operators
/// `A+ = K+ K0 + K0 K+` and `A- = K- K0 + K0 K- = A+^T`.
pub fn build_a_operators(lm: &LadderMatrices) -> (OperatorMatrix, OperatorMatrix) {
    let aplus = lm.kplus.matmul(&lm.k0).add(&lm.k0.matmul(&lm.kplus));
    let aminus = aplus.transpose();
    (aplus, aminus)
}

/// The squared radius `length_scale * (K+ + K- + 2 K0)`; symmetric,
/// tridiagonal, with `2 m * length_scale` on the diagonal.
pub fn build_r_squared(lm: &LadderMatrices, length_scale: f64) -> Result<OperatorMatrix> {
    if length_scale <= 0.0 || !length_scale.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "length scale must be positive, got {}",
            length_scale
        )));
    }
    let sum = lm.kplus.add(&lm.kminus).add(&lm.k0.scaled(2.0));
    sum.scaled(length_scale).into_symmetric()
}

/// The quartic perturbation `-(hbar^2 beta / (2 mu alpha)) (K+ + K- + 2 K0)^2`,
/// built by squaring the dimensionless radius-squared shape.
///
/// The expanded form `6 K0^2 - 2 C2 + 2 A+ + 2 A- + K+^2 + K-^2` is a test
/// target, not the construction route. Pentadiagonal: couples `m` only to
/// `m, m+-1, m+-2`.
pub fn build_h_matrix(lm: &LadderMatrices, model: &DeepPotentialModel) -> Result<OperatorMatrix> {
    let coeff = -model.hbar() * model.hbar() * model.beta() / (2.0 * model.mu() * model.alpha());
    let shape = lm.kplus.add(&lm.kminus).add(&lm.k0.scaled(2.0));
    shape.matmul(&shape).scaled(coeff).into_symmetric()
}

/// Closed-form wave-operator generator for the quartic perturbation:
///
/// `F = -(hbar beta / (4 alpha sqrt(2 alpha mu V0)))
///        [2 A- - 2 A+ + (K-^2 - K+^2)/2]`.
///
/// The prefactor is fixed by the commutator condition `[F, H0] = h_ND` with
/// `H0 = 2 hbar omega K0` (level spacing `2 hbar omega`); on interior rows it
/// agrees elementwise with the generic builder applied to the assembled
/// problem. Antisymmetric by construction.
pub fn build_f_analytic(lm: &LadderMatrices, model: &DeepPotentialModel) -> Result<OperatorMatrix> {
    let pref = -model.hbar() * model.beta()
        / (4.0 * model.alpha() * (2.0 * model.alpha() * model.mu() * model.v0()).sqrt());
    let (aplus, aminus) = build_a_operators(lm);
    let kp2 = lm.kplus.matmul(&lm.kplus);
    let km2 = lm.kminus.matmul(&lm.kminus);
    let bracket = aminus
        .scaled(2.0)
        .sub(&aplus.scaled(2.0))
        .add(&km2.sub(&kp2).scaled(0.5));
    Ok(bracket.scaled(pref))
}
