//! Wave-operator perturbation theory for finite non-degenerate spectra.
//!
//! The crate builds the operator `S(lambda) = exp(lambda F + lambda^2 G)`
//! mapping unperturbed eigenstates to perturbed ones, with `F` fixed by the
//! commutator condition `[F, H0] = h_ND` and `G` by the second-order
//! condition, and carries the energy expansion through third order. On top
//! of the generic machinery sit:
//!
//! * [`su11`] - a truncated SU(1,1) ladder-algebra realization in which the
//!   quartic perturbation of a deep radial potential is pentadiagonal and
//!   `F` has a closed form;
//! * [`deep`] - the deep-potential layer producing rotational band spectra
//!   as a series in the dimensionless depth parameter `delta`;
//! * [`oracle`] - an independent cyclic-Jacobi eigensolver, classical
//!   sum-over-states formulas, and series-coefficient extraction used to
//!   cross-check every result.
//!
//! All types are immutable after construction and all operations are pure
//! functions, so parameter sweeps can run in parallel freely.

pub mod deep;
pub mod error;
pub mod expm;
pub mod matrix;
pub mod oracle;
pub mod perturbation;
pub mod random;
pub mod spectrum;
pub mod su11;

pub use error::{Error, Result};
pub use expm::expm;
pub use matrix::{commutator, OperatorMatrix, Symmetry};
pub use perturbation::{
    apply_wave_operator, build_f_operator, build_g_operator, eigenvalue_residual,
    first_order_corrections, second_order_corrections, split_diagonal, third_order_corrections,
    EnergyExpansion, PerturbationProblem, WaveOperator,
};
pub use spectrum::Spectrum;
