//! Brute-force and finite-difference baselines.
//!
//! These validate the optimizers at desk scale and deliberately know
//! nothing about them: a phase search enumerates a full grid, a beamformer
//! search samples random unit vectors, and derivatives come from central
//! differences. Anything an optimizer claims to maximize can be checked
//! against these on tiny instances.

use crate::error::{Error, Result};
use crate::random::RandomSource;
use nalgebra::DVector;
use num_complex::Complex64;
use std::f64::consts::TAU;

/// Resolution of the brute-force searches.
#[derive(Debug, Clone, Copy)]
pub struct GridSpec {
    /// Points per full turn for each phase coordinate.
    pub phase_points: usize,
    /// Sample count for random unit-vector searches.
    pub sample_count: usize,
    pub seed: u64,
}

impl GridSpec {
    pub fn new(phase_points: usize, sample_count: usize, seed: u64) -> Result<Self> {
        if phase_points < 8 {
            return Err(Error::Config(format!(
                "grid resolution {phase_points} is below the minimum of 8 points per turn"
            )));
        }
        Ok(Self {
            phase_points,
            sample_count,
            seed,
        })
    }
}

/// Exhaustive evaluation cap: full grids stay around ten million points
/// (a 64-point grid over four phases is the largest supported search).
const MAX_GRID_EVALS: f64 = 2.0e7;
const MAX_GRID_DIMS: usize = 6;

/// Exhaustively maximizes `objective` over a phase grid with
/// `spec.phase_points` values per coordinate and `dims` coordinates.
///
/// The objective receives the stacked unit-modulus vector. Ties keep the
/// first grid point in enumeration order, so results are deterministic.
pub fn brute_force_phase_search<F>(
    objective: F,
    dims: usize,
    spec: &GridSpec,
) -> Result<(DVector<Complex64>, f64)>
where
    F: Fn(&DVector<Complex64>) -> f64,
{
    if dims == 0 {
        return Err(Error::Config("phase search needs at least one coordinate".into()));
    }
    if dims > MAX_GRID_DIMS
        || (spec.phase_points as f64).powi(dims as i32) > MAX_GRID_EVALS
    {
        return Err(Error::OracleLimit(format!(
            "full grid of {} points over {dims} phases exceeds the desk-scale cap",
            spec.phase_points
        )));
    }
    let grid = spec.phase_points;
    let table: Vec<Complex64> = (0..grid)
        .map(|g| Complex64::from_polar(1.0, TAU * g as f64 / grid as f64))
        .collect();
    let total = grid.pow(dims as u32);
    let mut digits = vec![0usize; dims];
    let mut point = DVector::from_element(dims, table[0]);
    let mut best_value = f64::NEG_INFINITY;
    let mut best_point = point.clone();
    for _ in 0..total {
        for (d, &g) in digits.iter().enumerate() {
            point[d] = table[g];
        }
        let value = objective(&point);
        if value > best_value {
            best_value = value;
            best_point.copy_from(&point);
        }
        // Odometer increment.
        for d in 0..dims {
            digits[d] += 1;
            if digits[d] < grid {
                break;
            }
            digits[d] = 0;
        }
    }
    Ok((best_point, best_value))
}

/// Best of `count` i.i.d. complex-Gaussian unit vectors of length `n`.
pub fn random_search_unit_vectors<F>(
    objective: F,
    n: usize,
    count: usize,
    seed: u64,
) -> Result<(DVector<Complex64>, f64)>
where
    F: Fn(&DVector<Complex64>) -> f64,
{
    if count == 0 || n == 0 {
        return Err(Error::Config("random search needs count ≥ 1 and n ≥ 1".into()));
    }
    let mut rng = RandomSource::new(seed);
    let mut best_value = f64::NEG_INFINITY;
    let mut best = DVector::zeros(n);
    for _ in 0..count {
        let candidate = rng.complex_gaussian(n).normalize();
        let value = objective(&candidate);
        if value > best_value {
            best_value = value;
            best = candidate;
        }
    }
    Ok((best, best_value))
}

/// Central difference `(f(x+h·e_i) − f(x−h·e_i)) / 2h`.
pub fn finite_diff<F>(objective: F, point: &[f64], coordinate: usize, step: f64) -> f64
where
    F: Fn(&[f64]) -> f64,
{
    assert!(step > 0.0, "finite-difference step must be positive");
    let mut plus = point.to_vec();
    let mut minus = point.to_vec();
    plus[coordinate] += step;
    minus[coordinate] -= step;
    (objective(&plus) - objective(&minus)) / (2.0 * step)
}
