//! Matrix exponential by scaling-and-squaring with a truncated Taylor series.
//!
//! The argument is scaled by `2^-s` until its 1-norm drops below 0.5, the
//! exponential of the scaled matrix is summed to degree 13 (remainder bound
//! `2 * 0.5^14 / 14! < 1.5e-15`), and the result is squared `s` times.
//! Adequate for the dimensions this crate works at; no Pade machinery.

use crate::matrix::OperatorMatrix;

/// Norm threshold for the scaled matrix.
const THETA: f64 = 0.5;
/// Taylor degree; fixed so the truncation remainder is below 1e-14 at `THETA`.
const DEGREE: usize = 13;

/// Compute `exp(a)`.
pub fn expm(a: &OperatorMatrix) -> OperatorMatrix {
    let dim = a.dim();
    let norm = a.one_norm();
    let mut s = 0u32;
    while norm / f64::powi(2.0, s as i32) > THETA {
        s += 1;
    }
    let b = a.scaled(f64::powi(2.0, -(s as i32)));

    let mut sum = OperatorMatrix::identity(dim);
    let mut term = OperatorMatrix::identity(dim);
    for k in 1..=DEGREE {
        term = term.matmul(&b).scaled(1.0 / k as f64);
        sum = sum.add(&term);
    }
    for _ in 0..s {
        sum = sum.matmul(&sum);
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exp_of_zero_is_exact_identity() {
        let e = expm(&OperatorMatrix::zeros(4));
        let id = OperatorMatrix::identity(4);
        assert_eq!(e, id);
    }

    #[test]
    fn exp_of_diagonal() {
        let a = OperatorMatrix::from_diagonal(&[1.0, -2.0, 0.5]);
        let e = expm(&a);
        for (i, &d) in [1.0f64, -2.0, 0.5].iter().enumerate() {
            assert!((e.get(i, i) - d.exp()).abs() < 1e-14 * d.exp().abs().max(1.0));
        }
        assert!(e.get(0, 1).abs() < 1e-15);
    }

    #[test]
    fn exp_of_antisymmetric_is_a_rotation() {
        let t = 0.7;
        let a = OperatorMatrix::from_fn(2, |i, j| match (i, j) {
            (0, 1) => t,
            (1, 0) => -t,
            _ => 0.0,
        });
        let e = expm(&a);
        assert!((e.get(0, 0) - t.cos()).abs() < 1e-14);
        assert!((e.get(0, 1) - t.sin()).abs() < 1e-14);
        // orthogonality
        let prod = e.matmul(&e.transpose());
        assert!(prod.sub(&OperatorMatrix::identity(2)).max_norm() < 1e-14);
    }

    #[test]
    fn large_norm_triggers_scaling() {
        let a = OperatorMatrix::from_diagonal(&[20.0, -20.0]);
        let e = expm(&a);
        assert!((e.get(0, 0) - 20.0f64.exp()).abs() / 20.0f64.exp() < 1e-12);
        assert!((e.get(1, 1) - (-20.0f64).exp()).abs() < 1e-12);
    }
}
