//! SINR, secrecy rate and SLNR for a beamformer state.
//!
//! Rates are in bits (`log2`). The reported secrecy rate is floored at
//! zero; the raw difference is available for traces.

use crate::channel::{build_cascade, composite_rows, stack_thetas, ChannelSet, UserChannel};
use crate::error::Result;
use crate::state::BeamformerState;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

/// SINR of one user for the given transmit state:
/// `|√α v^T Γ_u|² / (|√(1−α) w^T Γ_u|² + σ²)`.
pub fn sinr(state: &BeamformerState, user: &UserChannel, noise_power: f64) -> Result<f64> {
    let gamma = build_cascade(user, &state.thetas)?;
    Ok(sinr_from_cascade(
        &state.v,
        &state.w,
        &gamma,
        state.alpha,
        noise_power,
    ))
}

/// SINR given a precomputed cascade.
pub fn sinr_from_cascade(
    v: &DVector<Complex64>,
    w: &DVector<Complex64>,
    gamma: &DVector<Complex64>,
    alpha: f64,
    noise_power: f64,
) -> f64 {
    let signal = alpha * (v.transpose() * gamma)[0].norm_sqr();
    let interference = (1.0 - alpha) * (w.transpose() * gamma)[0].norm_sqr();
    signal / (interference + noise_power)
}

/// Achievable rate `log2(1 + SINR)`.
pub fn rate(sinr: f64) -> f64 {
    (1.0 + sinr).log2()
}

/// Worst-pair secrecy rate, floored at zero.
pub fn secrecy_rate(state: &BeamformerState, channels: &ChannelSet) -> Result<f64> {
    Ok(secrecy_rate_raw(state, channels)?.max(0.0))
}

/// Worst-pair secrecy rate without the zero floor:
/// `min_{p,q} log2(1+SINR_{B_p}) − log2(1+SINR_{E_q})`.
pub fn secrecy_rate_raw(state: &BeamformerState, channels: &ChannelSet) -> Result<f64> {
    let bob_rates = channels
        .desired
        .iter()
        .map(|u| Ok(rate(sinr(state, u, channels.noise_power)?)))
        .collect::<Result<Vec<_>>>()?;
    let eve_rates = channels
        .eavesdroppers
        .iter()
        .map(|u| Ok(rate(sinr(state, u, channels.noise_power)?)))
        .collect::<Result<Vec<_>>>()?;
    let min_bob = bob_rates.iter().cloned().fold(f64::INFINITY, f64::min);
    let max_eve = eve_rates.iter().cloned().fold(0.0f64, f64::max);
    Ok(min_bob - max_eve)
}

/// Signal-to-leakage-and-noise ratio via the composite rows:
/// `Σ_p |O_{B_p}Θ|² / (Σ_q |O_{E_q}Θ|² + σ²)`.
pub fn slnr(
    v: &DVector<Complex64>,
    thetas: &[DVector<Complex64>],
    channels: &ChannelSet,
    alpha: f64,
    noise_power: f64,
) -> Result<f64> {
    let stacked = stack_thetas(thetas);
    // Only the signal rows matter; the noise beamformer plays no role.
    let w = DVector::zeros(v.len());
    let mut num = 0.0;
    for user in &channels.desired {
        num += composite_rows(user, v, &w, alpha).signal_power(&stacked);
    }
    let mut den = noise_power;
    for user in &channels.eavesdroppers {
        den += composite_rows(user, v, &w, alpha).signal_power(&stacked);
    }
    Ok(num / den)
}

/// SLNR via the stacked-matrix form: with `H_B = [Γ_1 … Γ_P]` and
/// `H_E = [Γ_1 … Γ_Q]`, the ratio `α‖v^T H_B‖² / (α‖v^T H_E‖² + σ²)`.
///
/// Algebraically identical to [`slnr`]; kept as the second route for
/// validation.
pub fn slnr_stacked(
    v: &DVector<Complex64>,
    thetas: &[DVector<Complex64>],
    channels: &ChannelSet,
    alpha: f64,
    noise_power: f64,
) -> Result<f64> {
    let h_bob = stacked_cascades(&channels.desired, thetas)?;
    let h_eve = stacked_cascades(&channels.eavesdroppers, thetas)?;
    let num = alpha * (v.transpose() * &h_bob).iter().map(|c| c.norm_sqr()).sum::<f64>();
    let den = alpha
        * (v.transpose() * &h_eve)
            .iter()
            .map(|c| c.norm_sqr())
            .sum::<f64>()
        + noise_power;
    Ok(num / den)
}

/// Stacks the cascades of a user group into an `N×U` matrix.
pub fn stacked_cascades(
    users: &[UserChannel],
    thetas: &[DVector<Complex64>],
) -> Result<DMatrix<Complex64>> {
    let n = users.first().map_or(0, |u| u.n_elements());
    let mut out = DMatrix::zeros(n, users.len());
    for (j, user) in users.iter().enumerate() {
        let gamma = build_cascade(user, thetas)?;
        out.column_mut(j).copy_from(&gamma);
    }
    Ok(out)
}
