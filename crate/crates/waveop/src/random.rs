//! Seeded generation of random test problems.
//!
//! A small SplitMix64 generator keeps every randomized suite reproducible
//! bit-for-bit from its seed, with no dependency on external RNG crates
//! whose streams may change between versions.

use crate::matrix::OperatorMatrix;
use crate::perturbation::PerturbationProblem;
use crate::spectrum::Spectrum;

/// SplitMix64: tiny, fast, and good enough for sampling test matrices.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, 1)`.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `[lo, hi)`.
    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }

    /// Uniform integer in `[lo, hi)`.
    pub fn uniform_usize(&mut self, lo: usize, hi: usize) -> usize {
        lo + (self.next_u64() % (hi - lo) as u64) as usize
    }
}

/// Increasing spectrum with every adjacent gap in `[min_gap, min_gap + 1)`.
pub fn random_spectrum(rng: &mut SplitMix64, dim: usize, min_gap: f64) -> Spectrum {
    let mut values = Vec::with_capacity(dim);
    let mut e = rng.uniform(-1.0, 1.0);
    values.push(e);
    for _ in 1..dim {
        e += min_gap + rng.next_f64();
        values.push(e);
    }
    Spectrum::new(values).expect("generated spectrum is ordered and finite")
}

/// Random symmetric matrix normalized to unit max-norm.
pub fn random_symmetric(rng: &mut SplitMix64, dim: usize) -> OperatorMatrix {
    let mut m = OperatorMatrix::zeros(dim);
    for i in 0..dim {
        for j in i..dim {
            let v = rng.uniform(-1.0, 1.0);
            m.set(i, j, v);
            m.set(j, i, v);
        }
    }
    let norm = m.max_norm();
    let scaled = if norm > 0.0 { m.scaled(1.0 / norm) } else { m };
    scaled.into_symmetric().expect("construction is symmetric")
}

/// Random well-separated problem: gap at least `min_gap`, `||h||_max = 1`.
pub fn random_problem(
    rng: &mut SplitMix64,
    dim: usize,
    min_gap: f64,
    lambda: f64,
) -> PerturbationProblem {
    let h0 = random_spectrum(rng, dim, min_gap);
    let h = random_symmetric(rng, dim);
    PerturbationProblem::new(h0, h, lambda).expect("generated problem is well-formed")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_stream() {
        let mut a = SplitMix64::new(42);
        let mut b = SplitMix64::new(42);
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn generated_problems_satisfy_their_contracts() {
        let mut rng = SplitMix64::new(7);
        for _ in 0..10 {
            let dim = rng.uniform_usize(4, 11);
            let p = random_problem(&mut rng, dim, 0.5, 0.01);
            assert_eq!(p.dim(), dim);
            assert!((p.h().max_norm() - 1.0).abs() < 1e-15);
            let (gap, _, _) = p.h0().min_gap().unwrap();
            assert!(gap >= 0.5);
        }
    }
}
