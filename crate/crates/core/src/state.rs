//! Beamformer state and scheme results.

use crate::error::{Error, Result};
use nalgebra::DVector;
use num_complex::Complex64;
use std::time::Duration;

/// A complete transmit configuration: beamforming vector, artificial-noise
/// vector, per-IRS phase shifts and the power split.
#[derive(Debug, Clone)]
pub struct BeamformerState {
    /// Confidential-signal beamformer, unit norm.
    pub v: DVector<Complex64>,
    /// Artificial-noise vector, unit norm.
    pub w: DVector<Complex64>,
    /// Unit-modulus phase vector of each IRS.
    pub thetas: Vec<DVector<Complex64>>,
    /// Fraction of transmit power on the confidential signal.
    pub alpha: f64,
}

impl BeamformerState {
    /// Checks the norm and modulus invariants.
    pub fn validate(&self) -> Result<()> {
        if (self.v.norm() - 1.0).abs() > 1e-10 {
            return Err(Error::Config(format!(
                "beamformer norm {} is not 1",
                self.v.norm()
            )));
        }
        if (self.w.norm() - 1.0).abs() > 1e-10 {
            return Err(Error::Config(format!(
                "noise vector norm {} is not 1",
                self.w.norm()
            )));
        }
        if !(0.0..=1.0).contains(&self.alpha) {
            return Err(Error::Config(format!("alpha {} outside [0, 1]", self.alpha)));
        }
        for (k, theta) in self.thetas.iter().enumerate() {
            for (m, e) in theta.iter().enumerate() {
                if (e.norm() - 1.0).abs() > 1e-12 {
                    return Err(Error::Config(format!(
                        "phase entry ({k},{m}) has modulus {}",
                        e.norm()
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Outcome of one optimization run.
#[derive(Debug, Clone)]
pub struct SchemeResult {
    /// Converged objective (SINR, secrecy rate or SLNR depending on the
    /// scheme).
    pub objective: f64,
    /// Objective value after each iteration.
    pub trace: Vec<f64>,
    pub state: BeamformerState,
    /// Iterations actually performed.
    pub iterations: usize,
    /// False when the iteration budget ran out before the tolerance was
    /// met; the best iterate is still returned.
    pub converged: bool,
    pub wall_time: Duration,
}
