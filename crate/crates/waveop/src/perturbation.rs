//! Operator formulation of non-degenerate Rayleigh-Schrodinger perturbation
//! theory.
//!
//! Instead of summing over intermediate states, the perturbed eigenstates are
//! generated by a wave operator `S(lambda) = exp(lambda F + lambda^2 G)`
//! acting on the unperturbed basis vectors. `F` is fixed by the commutator
//! condition `[F, H0] = h_ND`, `G` by the second-order condition, and the
//! energy corrections through third order come out as diagonal matrix
//! elements of commutators and products. Everything is basis-agnostic: the
//! inputs are a spectrum and a symmetric perturbation matrix in that basis.

use crate::error::{Error, Result};
use crate::expm::expm;
use crate::matrix::OperatorMatrix;
use crate::spectrum::Spectrum;

/// A perturbed eigenproblem `H = H0 + lambda * h` in the eigenbasis of `H0`.
///
/// `H0` is held as its spectrum (it is diagonal by construction); `h` must be
/// symmetric and match the spectrum's dimension. `lambda` is dimensionless
/// and finite; keeping it small enough for the expansion to be useful is the
/// caller's business.
#[derive(Clone, Debug)]
pub struct PerturbationProblem {
    h0: Spectrum,
    h: OperatorMatrix,
    lambda: f64,
}

impl PerturbationProblem {
    pub fn new(h0: Spectrum, h: OperatorMatrix, lambda: f64) -> Result<Self> {
        if h.dim() != h0.len() {
            return Err(Error::DimensionMismatch {
                expected: h0.len(),
                found: h.dim(),
            });
        }
        if !h.is_symmetric() {
            return Err(Error::NonSymmetric {
                max_asymmetry: h.max_asymmetry(),
            });
        }
        if !lambda.is_finite() {
            return Err(Error::InvalidParameter("lambda must be finite".into()));
        }
        Ok(Self { h0, h, lambda })
    }

    pub fn h0(&self) -> &Spectrum {
        &self.h0
    }

    pub fn h(&self) -> &OperatorMatrix {
        &self.h
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn dim(&self) -> usize {
        self.h0.len()
    }

    /// The full Hamiltonian `H0 + lambda * h` as a dense matrix.
    pub fn full_hamiltonian(&self) -> OperatorMatrix {
        self.h0
            .to_diagonal_matrix()
            .add(&self.h.scaled(self.lambda))
    }
}

/// Split `h` into its diagonal and non-diagonal parts; `h_d + h_nd`
/// reconstructs `h` bitwise since the split is by copy.
pub fn split_diagonal(h: &OperatorMatrix) -> (OperatorMatrix, OperatorMatrix) {
    let h_d = OperatorMatrix::from_diagonal(&h.diagonal());
    let h_nd = h.sub(&h_d);
    (h_d, h_nd)
}

/// First-order energy corrections: the diagonal of `h`.
pub fn first_order_corrections(p: &PerturbationProblem) -> Vec<f64> {
    p.h().diagonal()
}

/// Build the generator `F` with `F[m][n] = h[m][n] / (eps_n - eps_m)` off the
/// diagonal and zeros on it (the diagonal is pure gauge and is fixed to zero).
///
/// The result satisfies `[F, H0] = h_ND` and is antisymmetric for symmetric
/// `h`. Fails with the offending index pair if the spectrum has a gap at or
/// below the degeneracy tolerance.
pub fn build_f_operator(p: &PerturbationProblem) -> Result<OperatorMatrix> {
    p.h0().check_non_degenerate()?;
    let d = p.dim();
    let eps = p.h0().values();
    let h = p.h();
    let mut f = OperatorMatrix::zeros(d);
    for m in 0..d {
        for n in 0..d {
            if m != n {
                f.set(m, n, h.get(m, n) / (eps[n] - eps[m]));
            }
        }
    }
    Ok(f)
}

/// Second-order energy corrections `-1/2 <n|[F, h_ND]|n>`.
///
/// Equals the classical sum over intermediate states
/// `sum_{m != n} h[n][m]^2 / (eps_n - eps_m)`.
pub fn second_order_corrections(p: &PerturbationProblem, f: &OperatorMatrix) -> Vec<f64> {
    let (_, h_nd) = split_diagonal(p.h());
    let c = f.matmul(&h_nd).sub(&h_nd.matmul(f));
    c.diagonal().iter().map(|v| -0.5 * v).collect()
}

/// Build the second-order generator `G` (zero diagonal, like `F`).
///
/// Off the diagonal,
/// `G[m][n] = -((eps1_n - eps1_m)/(eps_n - eps_m)) F[m][n]
///            - [F, h_ND][m][n] / (2 (eps_n - eps_m))`.
pub fn build_g_operator(p: &PerturbationProblem, f: &OperatorMatrix) -> Result<OperatorMatrix> {
    p.h0().check_non_degenerate()?;
    let d = p.dim();
    let eps = p.h0().values();
    let eps1 = first_order_corrections(p);
    let (_, h_nd) = split_diagonal(p.h());
    let c = f.matmul(&h_nd).sub(&h_nd.matmul(f));
    let mut g = OperatorMatrix::zeros(d);
    for m in 0..d {
        for n in 0..d {
            if m != n {
                let denom = eps[n] - eps[m];
                let val = -((eps1[n] - eps1[m]) / denom) * f.get(m, n) - 0.5 * c.get(m, n) / denom;
                g.set(m, n, val);
            }
        }
    }
    Ok(g)
}

/// Third-order energy corrections
/// `<n| (F^2 h_D + h_D F^2)/2 - F h F |n>`, evaluated as matrix products.
pub fn third_order_corrections(p: &PerturbationProblem, f: &OperatorMatrix) -> Vec<f64> {
    let (h_d, _) = split_diagonal(p.h());
    let f2 = f.matmul(f);
    let sym = f2.matmul(&h_d).add(&h_d.matmul(&f2)).scaled(0.5);
    let fhf = f.matmul(p.h()).matmul(f);
    sym.sub(&fhf).diagonal()
}

/// The pair of generators defining the wave operator
/// `S(lambda) = exp(lambda F + lambda^2 G)`.
#[derive(Clone, Debug)]
pub struct WaveOperator {
    f: OperatorMatrix,
    g: OperatorMatrix,
}

impl WaveOperator {
    /// Build both generators from a problem.
    pub fn build(p: &PerturbationProblem) -> Result<Self> {
        let f = build_f_operator(p)?;
        let g = build_g_operator(p, &f)?;
        Ok(Self { f, g })
    }

    pub fn f(&self) -> &OperatorMatrix {
        &self.f
    }

    pub fn g(&self) -> &OperatorMatrix {
        &self.g
    }

    pub fn dim(&self) -> usize {
        self.f.dim()
    }
}

/// Apply the wave operator to the `n`-th basis vector:
/// `exp(lambda F + lambda^2 G) e_n`.
///
/// At `lambda = 0` this returns the basis vector exactly.
pub fn apply_wave_operator(w: &WaveOperator, lambda: f64, n: usize) -> Vec<f64> {
    let m = w.f.scaled(lambda).add(&w.g.scaled(lambda * lambda));
    let e = expm(&m);
    (0..w.dim()).map(|i| e.get(i, n)).collect()
}

/// Energy expansion through third order:
/// `E_n(lambda) = eps_n + lambda eps1[n] + lambda^2 eps2[n] + lambda^3 eps3[n]`.
#[derive(Clone, Debug)]
pub struct EnergyExpansion {
    eps0: Spectrum,
    eps1: Vec<f64>,
    eps2: Vec<f64>,
    eps3: Vec<f64>,
}

impl EnergyExpansion {
    /// Compute all corrections for a problem.
    pub fn build(p: &PerturbationProblem) -> Result<Self> {
        let f = build_f_operator(p)?;
        Ok(Self {
            eps0: p.h0().clone(),
            eps1: first_order_corrections(p),
            eps2: second_order_corrections(p, &f),
            eps3: third_order_corrections(p, &f),
        })
    }

    pub fn evaluate(&self, n: usize, lambda: f64) -> f64 {
        self.eps0.value(n)
            + lambda * (self.eps1[n] + lambda * (self.eps2[n] + lambda * self.eps3[n]))
    }

    pub fn eps0(&self) -> &Spectrum {
        &self.eps0
    }

    pub fn eps1(&self) -> &[f64] {
        &self.eps1
    }

    pub fn eps2(&self) -> &[f64] {
        &self.eps2
    }

    pub fn eps3(&self) -> &[f64] {
        &self.eps3
    }

    pub fn len(&self) -> usize {
        self.eps0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eps0.is_empty()
    }
}

/// Relative residual of the approximate eigenpair produced by the wave
/// operator and the energy expansion:
/// `||(H0 + lambda h) psi - E(n, lambda) psi||_2 / ||psi||_2`.
pub fn eigenvalue_residual(
    p: &PerturbationProblem,
    w: &WaveOperator,
    e: &EnergyExpansion,
    n: usize,
) -> f64 {
    let lambda = p.lambda();
    let psi = apply_wave_operator(w, lambda, n);
    let energy = e.evaluate(n, lambda);
    let h_psi = p.full_hamiltonian().mul_vec(&psi);
    let mut res2 = 0.0;
    let mut norm2 = 0.0;
    for i in 0..psi.len() {
        let r = h_psi[i] - energy * psi[i];
        res2 += r * r;
        norm2 += psi[i] * psi[i];
    }
    (res2 / norm2).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_level(c: f64, lambda: f64) -> PerturbationProblem {
        let h0 = Spectrum::new(vec![0.0, 1.0]).unwrap();
        let h = OperatorMatrix::from_rows(&[vec![0.0, c], vec![c, 0.0]])
            .unwrap()
            .into_symmetric()
            .unwrap();
        PerturbationProblem::new(h0, h, lambda).unwrap()
    }

    #[test]
    fn split_diagonal_examples() {
        let zero = OperatorMatrix::zeros(3);
        let (d, nd) = split_diagonal(&zero);
        assert_eq!(d.max_norm(), 0.0);
        assert_eq!(nd.max_norm(), 0.0);

        let diag = OperatorMatrix::from_diagonal(&[1.0, 2.0]);
        let (d, nd) = split_diagonal(&diag);
        assert_eq!(d, diag);
        assert_eq!(nd.max_norm(), 0.0);

        let h = OperatorMatrix::from_rows(&[vec![1.0, 2.0], vec![2.0, 3.0]]).unwrap();
        let (d, nd) = split_diagonal(&h);
        assert_eq!(d.get(0, 0), 1.0);
        assert_eq!(d.get(1, 1), 3.0);
        assert_eq!(d.get(0, 1), 0.0);
        assert_eq!(nd.get(0, 1), 2.0);
        assert_eq!(nd.get(1, 0), 2.0);
        assert_eq!(nd.get(0, 0), 0.0);
        // exact reconstruction
        assert_eq!(d.add(&nd).entries(), h.entries());
    }

    #[test]
    fn first_order_reads_the_diagonal() {
        let h0 = Spectrum::new(vec![0.0, 1.0]).unwrap();
        let h = OperatorMatrix::from_rows(&[vec![0.0, 0.7], vec![0.7, 1.0]])
            .unwrap()
            .into_symmetric()
            .unwrap();
        let p = PerturbationProblem::new(h0, h, 0.1).unwrap();
        assert_eq!(first_order_corrections(&p), vec![0.0, 1.0]);

        let zero = two_level(0.0, 0.1);
        assert_eq!(first_order_corrections(&zero), vec![0.0, 0.0]);
    }

    #[test]
    fn f_operator_two_level() {
        let p = two_level(0.4, 0.1);
        let f = build_f_operator(&p).unwrap();
        // h[0][1]/(eps_1 - eps_0) = c, h[1][0]/(eps_0 - eps_1) = -c
        assert!((f.get(0, 1) - 0.4).abs() < 1e-15);
        assert!((f.get(1, 0) + 0.4).abs() < 1e-15);
        assert_eq!(f.get(0, 0), 0.0);
        assert_eq!(f.get(1, 1), 0.0);
    }

    #[test]
    fn f_of_zero_perturbation_is_zero() {
        let p = two_level(0.0, 0.1);
        assert_eq!(build_f_operator(&p).unwrap().max_norm(), 0.0);
    }

    #[test]
    fn degenerate_spectrum_is_rejected_with_indices() {
        let h0 = Spectrum::new(vec![0.0, 1.0, 1.0, 2.0]).unwrap();
        let h = OperatorMatrix::zeros(4).into_symmetric().unwrap();
        let p = PerturbationProblem::new(h0, h, 0.1).unwrap();
        match build_f_operator(&p) {
            Err(Error::DegenerateSpectrum { i, j, .. }) => assert_eq!((i, j), (1, 2)),
            other => panic!("expected degeneracy error, got {:?}", other),
        }
    }

    #[test]
    fn second_order_two_level_closed_form() {
        // exact eigenvalues of [[0, lc], [lc, 1]] are (1 -+ sqrt(1+4l^2c^2))/2,
        // so the lambda^2 coefficients are -+ c^2
        let c = 0.37;
        let p = two_level(c, 0.01);
        let f = build_f_operator(&p).unwrap();
        let eps2 = second_order_corrections(&p, &f);
        assert!((eps2[0] + c * c).abs() < 1e-14);
        assert!((eps2[1] - c * c).abs() < 1e-14);
    }

    #[test]
    fn third_order_two_level_vanishes() {
        // eps1 = 0 here and the closed form is even in lambda up to the
        // linear diagonal term, so the lambda^3 coefficient is zero
        let p = two_level(0.37, 0.01);
        let f = build_f_operator(&p).unwrap();
        let eps3 = third_order_corrections(&p, &f);
        assert!(eps3[0].abs() < 1e-14);
        assert!(eps3[1].abs() < 1e-14);
    }

    #[test]
    fn zero_perturbation_gives_zero_corrections() {
        let p = two_level(0.0, 0.3);
        let f = build_f_operator(&p).unwrap();
        assert_eq!(second_order_corrections(&p, &f), vec![0.0, 0.0]);
        assert_eq!(third_order_corrections(&p, &f), vec![0.0, 0.0]);
    }

    #[test]
    fn diagonal_perturbation_gives_zero_f_and_g() {
        let h0 = Spectrum::new(vec![0.0, 1.0, 2.5]).unwrap();
        let h = OperatorMatrix::from_diagonal(&[0.3, -0.1, 0.9]);
        let p = PerturbationProblem::new(h0, h, 1.0).unwrap();
        let f = build_f_operator(&p).unwrap();
        let g = build_g_operator(&p, &f).unwrap();
        assert_eq!(f.max_norm(), 0.0);
        assert_eq!(g.max_norm(), 0.0);
    }

    #[test]
    fn wave_operator_at_lambda_zero_is_exact_basis_vector() {
        let p = two_level(0.3, 0.0);
        let w = WaveOperator::build(&p).unwrap();
        let psi = apply_wave_operator(&w, 0.0, 1);
        assert_eq!(psi, vec![0.0, 1.0]);
    }

    #[test]
    fn zero_perturbation_keeps_basis_vectors_for_all_lambda() {
        let p = two_level(0.0, 0.02);
        let w = WaveOperator::build(&p).unwrap();
        for &lambda in &[0.0, 0.1, 0.7] {
            let psi = apply_wave_operator(&w, lambda, 0);
            assert_eq!(psi, vec![1.0, 0.0]);
        }
    }

    #[test]
    fn residual_vanishes_for_trivial_cases() {
        let p = two_level(0.0, 0.5);
        let w = WaveOperator::build(&p).unwrap();
        let e = EnergyExpansion::build(&p).unwrap();
        assert!(eigenvalue_residual(&p, &w, &e, 0) < 1e-14);

        let p0 = two_level(0.3, 0.0);
        let w0 = WaveOperator::build(&p0).unwrap();
        let e0 = EnergyExpansion::build(&p0).unwrap();
        assert!(eigenvalue_residual(&p0, &w0, &e0, 1) < 1e-14);
    }

    #[test]
    fn two_level_residual_regression() {
        // pinned from the closed-form two-level solution at c = 0.3,
        // lambda = 0.01: the leading residual is order lambda^3 c^3
        let p = two_level(0.3, 0.01);
        let w = WaveOperator::build(&p).unwrap();
        let e = EnergyExpansion::build(&p).unwrap();
        let r = eigenvalue_residual(&p, &w, &e, 0);
        assert!(r <= 5e-6, "residual {} above the two-level bound", r);
        assert!(
            (r - 3.5999961525056105e-8).abs() < 1e-12,
            "residual {} drifted from the pinned value",
            r
        );
    }
}
