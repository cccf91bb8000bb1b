//! Seeded random draws shared by the schemes.
//!
//! Every stochastic ingredient (subcarrier indices, initial IRS phases, the
//! Gaussian vectors behind null-space projectors and randomization) comes
//! from a [`RandomSource`] so that a scenario seed reproduces a run
//! bit-for-bit.

use nalgebra::DVector;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;
use std::f64::consts::TAU;

/// Deterministic stream of the random quantities used by the schemes.
#[derive(Debug, Clone)]
pub struct RandomSource {
    rng: ChaCha12Rng,
}

impl RandomSource {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha12Rng::seed_from_u64(seed),
        }
    }

    /// Derives an independent stream for a labelled sub-purpose.
    ///
    /// Streams with different labels never collide, and forking does not
    /// advance `self`.
    pub fn fork(&self, label: u64) -> Self {
        let mut rng = self.rng.clone();
        rng.set_stream(label.wrapping_add(1));
        Self { rng }
    }

    /// Uniform integer in `0..bound`.
    pub fn index(&mut self, bound: usize) -> usize {
        self.rng.gen_range(0..bound)
    }

    /// Uniform phase in `[0, 2π)`.
    pub fn phase(&mut self) -> f64 {
        self.rng.gen_range(0.0..TAU)
    }

    /// Vector of `n` uniform phases in `[0, 2π)`.
    pub fn phases(&mut self, n: usize) -> Vec<f64> {
        (0..n).map(|_| self.phase()).collect()
    }

    /// Circularly-symmetric complex Gaussian vector with unit per-entry
    /// variance (`E|z_i|^2 = 1`).
    pub fn complex_gaussian(&mut self, n: usize) -> DVector<Complex64> {
        let scale = std::f64::consts::FRAC_1_SQRT_2;
        DVector::from_fn(n, |_, _| {
            let re: f64 = self.rng.sample(StandardNormal);
            let im: f64 = self.rng.sample(StandardNormal);
            Complex64::new(re * scale, im * scale)
        })
    }

    /// Unit-modulus vector with uniform random phases.
    pub fn unit_modulus(&mut self, n: usize) -> DVector<Complex64> {
        DVector::from_fn(n, |_, _| Complex64::from_polar(1.0, self.phase()))
    }
}
