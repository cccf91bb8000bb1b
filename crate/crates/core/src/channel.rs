//! Subcarrier allocation, steering vectors and cascaded channels.
//!
//! Each transmit element is assigned a random subcarrier, so the phase of
//! every element toward a point depends on both the point's angles and its
//! range. The channel to a user through IRS `k` factors into the transmit
//! steering vector toward the panel, the panel's reflection steering matrix
//! toward the user, a path-loss scalar and the panel's phase-shift vector.
//! All schemes consume the cascade `Γ_u` or the composite rows `O_u`/`U_u`
//! built here.

use crate::error::{Error, Result};
use crate::geometry::{
    angles_from_alice, angles_from_irs, cone_angles_alice, cone_angles_irs, AngleSet,
    IrsPlacement, Position3D,
};
use crate::random::RandomSource;
use crate::scenario::ScenarioConfig;
use nalgebra::{DMatrix, DVector, RowDVector};
use num_complex::Complex64;
use std::f64::consts::TAU;

/// Stream label for the subcarrier draw within a scenario seed.
const SUBCARRIER_STREAM: u64 = 0x5343;

/// Random subcarrier assignment for the transmit elements.
///
/// Element `n` radiates at `f_n = f_c + η_n·Δf` with `η_n` drawn uniformly
/// from `{0, …, N_s−1}`, independently per element (row-major element
/// order).
#[derive(Debug, Clone, PartialEq)]
pub struct SubcarrierAllocation {
    pub carrier_hz: f64,
    pub spacing_hz: f64,
    pub subcarrier_count: u32,
    pub eta: Vec<u32>,
}

impl SubcarrierAllocation {
    /// Frequency of transmit element `n`.
    pub fn frequency(&self, n: usize) -> f64 {
        self.carrier_hz + self.eta[n] as f64 * self.spacing_hz
    }

    pub fn len(&self) -> usize {
        self.eta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eta.is_empty()
    }
}

/// Draws the per-element subcarrier indices.
///
/// Rejects allocations that violate the narrowband assumption
/// `N_s·Δf < f_c/100`.
pub fn allocate_subcarriers(
    n_elements: usize,
    n_sub: u32,
    carrier_hz: f64,
    spacing_hz: f64,
    seed: u64,
) -> Result<SubcarrierAllocation> {
    if n_elements == 0 || n_sub == 0 {
        return Err(Error::Config(
            "subcarrier allocation needs at least one element and one subcarrier".into(),
        ));
    }
    let total_bandwidth = n_sub as f64 * spacing_hz;
    if total_bandwidth >= carrier_hz / 100.0 {
        return Err(Error::Config(format!(
            "total bandwidth {total_bandwidth} Hz is not small against the carrier {carrier_hz} Hz"
        )));
    }
    let mut rng = RandomSource::new(seed).fork(SUBCARRIER_STREAM);
    let eta = (0..n_elements)
        .map(|_| rng.index(n_sub as usize) as u32)
        .collect();
    Ok(SubcarrierAllocation {
        carrier_hz,
        spacing_hz,
        subcarrier_count: n_sub,
        eta,
    })
}

/// Normalized transmit steering vector toward `(r, θ, φ)`.
///
/// Entry `(n_r, n_c)` (row-major) carries the phase of element
/// `(n_r, n_c)` at its own subcarrier relative to the reference element at
/// the carrier frequency, scaled by `1/√N`.
pub fn alice_steering(
    alloc: &SubcarrierAllocation,
    target: &AngleSet,
    rows: usize,
    cols: usize,
    spacing: f64,
    light_speed: f64,
) -> DVector<Complex64> {
    let n = rows * cols;
    assert_eq!(alloc.len(), n, "allocation length must match element count");
    let cone = cone_angles_alice(target);
    let cos_beta = cone.beta.cos();
    let cos_gamma = cone.gamma.cos();
    let scale = 1.0 / (n as f64).sqrt();
    let reference = alloc.carrier_hz * target.range;
    DVector::from_fn(n, |idx, _| {
        let i_r = (idx / cols) as f64;
        let i_c = (idx % cols) as f64;
        let path = target.range + i_r * spacing * cos_beta - i_c * spacing * cos_gamma;
        let phase = TAU * (alloc.frequency(idx) * path - reference) / light_speed;
        Complex64::from_polar(scale, phase)
    })
}

/// Reflection steering matrix of one IRS: `M×N`, column `n` holding the
/// panel's per-element phases at transmit element `n`'s subcarrier.
///
/// The phase of panel element `(m_r, m_c)` combines the departure path
/// toward the user (range plus the panel-axis projections) with the
/// incidence offset of the arriving wavefront from the transmitter.
pub fn irs_steering_matrix(
    irs: &IrsPlacement,
    incident: &AngleSet,
    departure: &AngleSet,
    alloc: &SubcarrierAllocation,
    light_speed: f64,
) -> DMatrix<Complex64> {
    let m = irs.element_count();
    let n = alloc.len();
    let cone = cone_angles_irs(departure, irs.placement_angle);
    let cos_beta = cone.beta.cos();
    let cos_gamma = cone.gamma.cos();
    let cos_pitch_in = incident.pitch.cos();
    let sin_pitch_in = incident.pitch.sin();
    let cos_offset = (incident.azimuth - irs.placement_angle).cos();
    DMatrix::from_fn(m, n, |row, col| {
        let m_r = (row / irs.cols) as f64;
        let m_c = (row % irs.cols) as f64;
        let incidence =
            m_c * irs.spacing * cos_pitch_in * cos_offset - m_r * irs.spacing * sin_pitch_in;
        let path = departure.range + incidence - m_r * irs.spacing * cos_beta
            + m_c * irs.spacing * cos_gamma;
        let phase = TAU * alloc.frequency(col) * path / light_speed;
        Complex64::from_polar(1.0, phase)
    })
}

/// Amplitude path gain of one reflection path: `c0 / (r_AI + r_IB)²`.
pub fn path_loss(r_alice_irs: f64, r_irs_user: f64, c0: f64) -> f64 {
    let total = r_alice_irs + r_irs_user;
    c0 / (total * total)
}

/// One transmitter→IRS→user link: path gain, the diagonal of
/// `diag(h_A^H)` and the reflection steering matrix.
#[derive(Debug, Clone)]
pub struct IrsLink {
    /// `Υ_k = ρ_k·√P_s`.
    pub upsilon: f64,
    /// Entries of `Ω_k = diag(h_{A_k}^H)`; each has magnitude `1/√N`.
    pub omega: DVector<Complex64>,
    /// `H_{I_k u}(f)`, `M×N`.
    pub steering: DMatrix<Complex64>,
}

impl IrsLink {
    /// Number of panel elements.
    pub fn elements(&self) -> usize {
        self.steering.nrows()
    }

    /// The row `v^T·Υ_k·Ω_k·H^H` (length `M`) that multiplies `Θ_k`.
    pub fn weighted_row(&self, weights: &DVector<Complex64>) -> RowDVector<Complex64> {
        let n = self.omega.len();
        let m = self.elements();
        let mut row = RowDVector::zeros(m);
        for mi in 0..m {
            let mut acc = Complex64::new(0.0, 0.0);
            for ni in 0..n {
                acc += weights[ni] * self.omega[ni] * self.steering[(mi, ni)].conj();
            }
            row[mi] = acc * Complex64::new(self.upsilon, 0.0);
        }
        row
    }
}

/// All links from the transmitter to one user position.
#[derive(Debug, Clone)]
pub struct UserChannel {
    pub links: Vec<IrsLink>,
    pub position: Position3D,
}

impl UserChannel {
    pub fn n_elements(&self) -> usize {
        self.links.first().map_or(0, |l| l.omega.len())
    }

    pub fn total_irs_elements(&self) -> usize {
        self.links.iter().map(|l| l.elements()).sum()
    }
}

/// Cascaded channels of every user in a scenario, plus the shared
/// subcarrier allocation. Immutable once built; safe to share across
/// workers.
#[derive(Debug, Clone)]
pub struct ChannelSet {
    pub alloc: SubcarrierAllocation,
    pub desired: Vec<UserChannel>,
    pub eavesdroppers: Vec<UserChannel>,
    pub noise_power: f64,
    pub n_elements: usize,
    /// Element count of each IRS, in scenario order.
    pub irs_elements: Vec<usize>,
}

impl ChannelSet {
    pub fn total_irs_elements(&self) -> usize {
        self.irs_elements.iter().sum()
    }
}

/// Builds the channel for an arbitrary ground position with an existing
/// allocation.
pub fn probe_channel(
    cfg: &ScenarioConfig,
    alloc: &SubcarrierAllocation,
    position: Position3D,
) -> Result<UserChannel> {
    let c = cfg.speed_of_light_m_s;
    let d_a = cfg.alice_spacing();
    let links = cfg
        .irs_placements()
        .iter()
        .map(|irs| {
            let incident = angles_from_alice(&irs.position)?;
            let departure = angles_from_irs(irs, &position);
            let h_alice = alice_steering(alloc, &incident, cfg.alice.rows, cfg.alice.cols, d_a, c);
            let steering = irs_steering_matrix(irs, &incident, &departure, alloc, c);
            let rho = path_loss(incident.range, departure.range, cfg.path_loss_constant);
            Ok(IrsLink {
                upsilon: rho * cfg.transmit_power_w.sqrt(),
                omega: h_alice.map(|e| e.conj()),
                steering,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(UserChannel { links, position })
}

/// Builds the channels of every configured user. Deterministic given the
/// scenario (the subcarrier draw comes from the scenario seed).
pub fn build_channel_set(cfg: &ScenarioConfig) -> Result<ChannelSet> {
    cfg.validate()?;
    let alloc = allocate_subcarriers(
        cfg.n_elements(),
        cfg.subcarrier_count,
        cfg.carrier_frequency_hz,
        cfg.subcarrier_spacing(),
        cfg.seed,
    )?;
    let desired = cfg
        .desired_positions()
        .into_iter()
        .map(|p| probe_channel(cfg, &alloc, p))
        .collect::<Result<Vec<_>>>()?;
    let eavesdroppers = cfg
        .eavesdropper_positions()
        .into_iter()
        .map(|p| probe_channel(cfg, &alloc, p))
        .collect::<Result<Vec<_>>>()?;
    Ok(ChannelSet {
        alloc,
        desired,
        eavesdroppers,
        noise_power: cfg.noise_power_w,
        n_elements: cfg.n_elements(),
        irs_elements: cfg.irs_placements().iter().map(|i| i.element_count()).collect(),
    })
}

/// The cascade `Γ_u = Σ_k Υ_k·Ω_k·H_k^H·Θ_k` (length `N`).
///
/// `v^T Γ_u` is exactly the signal factor of the received sum over all
/// panels.
pub fn build_cascade(
    user: &UserChannel,
    thetas: &[DVector<Complex64>],
) -> Result<DVector<Complex64>> {
    if thetas.len() != user.links.len() {
        return Err(Error::Dimension(format!(
            "{} phase vectors for {} IRS links",
            thetas.len(),
            user.links.len()
        )));
    }
    let n = user.n_elements();
    let mut gamma = DVector::zeros(n);
    for (link, theta) in user.links.iter().zip(thetas) {
        if theta.len() != link.elements() {
            return Err(Error::Dimension(format!(
                "phase vector of length {} for an IRS with {} elements",
                theta.len(),
                link.elements()
            )));
        }
        for ni in 0..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for mi in 0..link.elements() {
                acc += link.steering[(mi, ni)].conj() * theta[mi];
            }
            gamma[ni] += Complex64::new(link.upsilon, 0.0) * link.omega[ni] * acc;
        }
    }
    Ok(gamma)
}

/// Signal and artificial-noise composite rows of one user.
///
/// `signal·Θ = Σ_k ζ_{ku}Θ_k` and `noise·Θ = Σ_k η_{ku}Θ_k` for the
/// stacked phase vector `Θ`, with the power split already folded in.
#[derive(Debug, Clone)]
pub struct CompositeRows {
    /// `O_u`, length `K·M`.
    pub signal: RowDVector<Complex64>,
    /// `U_u`, length `K·M`.
    pub noise: RowDVector<Complex64>,
}

impl CompositeRows {
    /// `|O_u Θ|²` for a stacked phase vector.
    pub fn signal_power(&self, theta: &DVector<Complex64>) -> f64 {
        (&self.signal * theta)[0].norm_sqr()
    }

    /// `|U_u Θ|²` for a stacked phase vector.
    pub fn noise_power(&self, theta: &DVector<Complex64>) -> f64 {
        (&self.noise * theta)[0].norm_sqr()
    }
}

/// Builds the composite rows of one user for beamformers `v`, `w` and
/// power split `α`.
pub fn composite_rows(
    user: &UserChannel,
    v: &DVector<Complex64>,
    w: &DVector<Complex64>,
    alpha: f64,
) -> CompositeRows {
    let total: usize = user.total_irs_elements();
    let mut signal = RowDVector::zeros(total);
    let mut noise = RowDVector::zeros(total);
    let sa = Complex64::new(alpha.sqrt(), 0.0);
    let sw = Complex64::new((1.0 - alpha).sqrt(), 0.0);
    let mut offset = 0;
    for link in &user.links {
        let zeta = link.weighted_row(v);
        let eta = link.weighted_row(w);
        for mi in 0..link.elements() {
            signal[offset + mi] = sa * zeta[mi];
            noise[offset + mi] = sw * eta[mi];
        }
        offset += link.elements();
    }
    CompositeRows { signal, noise }
}

/// Stacks per-IRS phase vectors into one column.
pub fn stack_thetas(thetas: &[DVector<Complex64>]) -> DVector<Complex64> {
    let total: usize = thetas.iter().map(|t| t.len()).sum();
    let mut out = DVector::zeros(total);
    let mut offset = 0;
    for t in thetas {
        out.rows_mut(offset, t.len()).copy_from(t);
        offset += t.len();
    }
    out
}

/// Splits a stacked phase vector back into per-IRS blocks.
pub fn split_thetas(stacked: &DVector<Complex64>, sizes: &[usize]) -> Vec<DVector<Complex64>> {
    let mut out = Vec::with_capacity(sizes.len());
    let mut offset = 0;
    for &s in sizes {
        out.push(DVector::from_column_slice(
            stacked.rows(offset, s).as_slice(),
        ));
        offset += s;
    }
    out
}
