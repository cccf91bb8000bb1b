//! Single-user maximum-SINR scheme.
//!
//! For one desired user the two blocks have closed forms: with the phases
//! fixed, the best beamformer is the matched filter on the cascade; with
//! the beamformer fixed, each IRS element's phase rotates its term of the
//! received sum onto a common target phase. Alternating the two never
//! decreases the SINR. The artificial noise is drawn in the null space of
//! the user's cascade, so it costs the user nothing.

use crate::channel::{build_cascade, build_channel_set, UserChannel};
use crate::error::{Error, Result};
use crate::random::RandomSource;
use crate::scenario::ScenarioConfig;
use crate::state::{BeamformerState, SchemeResult};
use nalgebra::DVector;
use num_complex::Complex64;
use std::time::Instant;

const INIT_STREAM: u64 = 0x4D53;
const NOISE_STREAM: u64 = 0x4D54;

/// Tuning knobs for [`run_msinr`].
#[derive(Debug, Clone)]
pub struct MsinrOptions {
    /// Relative SINR change below which the alternation stops.
    pub tol: f64,
    pub max_iter: usize,
    /// Common target phase for the per-IRS sums; the objective does not
    /// depend on it.
    pub phi0: f64,
    /// Initial phase vectors; random when `None`.
    pub initial_thetas: Option<Vec<DVector<Complex64>>>,
}

impl Default for MsinrOptions {
    fn default() -> Self {
        Self {
            tol: 1e-6,
            max_iter: 100,
            phi0: 0.0,
            initial_thetas: None,
        }
    }
}

/// Matched-filter beamformer `v = Γ*/‖Γ‖`, which makes `v^T Γ = ‖Γ‖`.
pub fn optimal_v(gamma: &DVector<Complex64>) -> Result<DVector<Complex64>> {
    let norm = gamma.norm();
    if norm <= 0.0 {
        return Err(Error::DegenerateChannel(
            "cascade is zero; no beamforming direction exists".into(),
        ));
    }
    Ok(gamma.map(|e| e.conj() / Complex64::new(norm, 0.0)))
}

/// Unit-norm artificial-noise vector with `w^T Γ = 0`, built by projecting
/// a random draw onto the null space of the cascade.
pub fn optimal_w(
    gamma: &DVector<Complex64>,
    z: &DVector<Complex64>,
) -> Result<DVector<Complex64>> {
    let n = gamma.len();
    if n < 2 {
        return Err(Error::DegenerateChannel(
            "a single transmit element leaves no null space for artificial noise".into(),
        ));
    }
    let norm_sqr = gamma.norm_squared();
    if norm_sqr <= 0.0 {
        return Err(Error::DegenerateChannel("cascade is zero".into()));
    }
    // w ∝ (‖Γ‖²·I − Γ*·Γ^T)·z, which satisfies w^T Γ = 0 exactly.
    let inner = (gamma.transpose() * z)[0];
    let projected = z * Complex64::new(norm_sqr, 0.0) - gamma.map(|e| e.conj() * inner);
    let pnorm = projected.norm();
    if pnorm <= 1e-12 * norm_sqr * z.norm() {
        return Err(Error::DegenerateChannel(
            "random draw fell inside the cascade direction".into(),
        ));
    }
    Ok(projected / Complex64::new(pnorm, 0.0))
}

/// Closed-form phase update: element `(k, m)` gets `φ_{k,m} = φ₀ − γ_{k,m}`
/// where `γ_{k,m}` is the phase of its coefficient in `v^T·Υ_k·Ω_k·H_k^H`.
/// Every per-IRS sum then meets the triangle-inequality bound `Σ_m A_{k,m}`
/// at the common phase `φ₀`.
pub fn phase_update(
    v: &DVector<Complex64>,
    user: &UserChannel,
    phi0: f64,
) -> Vec<DVector<Complex64>> {
    user.links
        .iter()
        .map(|link| {
            let row = link.weighted_row(v);
            DVector::from_fn(row.len(), |m, _| {
                Complex64::from_polar(1.0, phi0 - row[m].arg())
            })
        })
        .collect()
}

/// Alternates [`optimal_v`] and [`phase_update`] until the relative SINR
/// change drops below tolerance, then draws the null-space noise vector.
///
/// Requires exactly one desired user. On a run that exhausts the iteration
/// budget the best iterate is returned with `converged = false`.
pub fn run_msinr(cfg: &ScenarioConfig, options: &MsinrOptions) -> Result<SchemeResult> {
    let started = Instant::now();
    if cfg.desired_users_m.len() != 1 {
        return Err(Error::Config(format!(
            "the max-SINR scheme expects exactly one desired user, got {}",
            cfg.desired_users_m.len()
        )));
    }
    let channels = build_channel_set(cfg)?;
    let user = &channels.desired[0];
    let base = RandomSource::new(cfg.seed);
    let mut thetas = match &options.initial_thetas {
        Some(init) => {
            if init.len() != user.links.len() {
                return Err(Error::Dimension(format!(
                    "{} initial phase vectors for {} IRS links",
                    init.len(),
                    user.links.len()
                )));
            }
            init.clone()
        }
        None => {
            let mut rng = base.fork(INIT_STREAM);
            user.links
                .iter()
                .map(|l| rng.unit_modulus(l.elements()))
                .collect()
        }
    };

    let sigma2 = channels.noise_power;
    let mut trace = Vec::new();
    let mut v = optimal_v(&build_cascade(user, &thetas)?)?;
    let mut converged = false;
    for iter in 0..options.max_iter {
        let gamma = build_cascade(user, &thetas)?;
        v = optimal_v(&gamma)?;
        thetas = phase_update(&v, user, options.phi0);
        let gamma_next = build_cascade(user, &thetas)?;
        let objective =
            cfg.alpha * (v.transpose() * &gamma_next)[0].norm_sqr() / sigma2;
        trace.push(objective);
        if iter > 0 {
            let prev = trace[iter - 1];
            if (objective - prev).abs() <= options.tol * prev.abs().max(f64::MIN_POSITIVE) {
                converged = true;
                break;
            }
        }
    }

    let gamma = build_cascade(user, &thetas)?;
    let z = base.fork(NOISE_STREAM).complex_gaussian(user.n_elements());
    let w = optimal_w(&gamma, &z)?;
    let objective = *trace.last().expect("at least one iteration runs");
    Ok(SchemeResult {
        objective,
        iterations: trace.len(),
        trace,
        state: BeamformerState {
            v,
            w,
            thetas,
            alpha: cfg.alpha,
        },
        converged,
        wall_time: started.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::stack_thetas;
    use crate::metrics;
    use crate::oracle::{brute_force_phase_search, random_search_unit_vectors, GridSpec};

    fn single_user_scenario() -> ScenarioConfig {
        let mut cfg = ScenarioConfig::default();
        cfg.desired_users_m = vec![[100.0, 50.0, 0.0]];
        cfg.path_loss_constant = 8.0e4;
        cfg
    }

    fn tiny_scenario() -> ScenarioConfig {
        let mut cfg = single_user_scenario();
        cfg.alice.rows = 1;
        cfg.alice.cols = 2;
        cfg.irs.truncate(1);
        cfg.irs[0].rows = 1;
        cfg.irs[0].cols = 2;
        cfg
    }

    #[test]
    fn matched_filter_on_basis_vector() {
        let mut gamma = DVector::zeros(4);
        gamma[0] = Complex64::new(2.0, 0.0);
        let v = optimal_v(&gamma).unwrap();
        assert!((v[0] - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        for i in 1..4 {
            assert!(v[i].norm() < 1e-15);
        }
    }

    #[test]
    fn matched_filter_aligns_phases() {
        let gamma = DVector::from_element(5, Complex64::new(1.0, 1.0));
        let v = optimal_v(&gamma).unwrap();
        let ip = (v.transpose() * &gamma)[0];
        assert!((ip.re - gamma.norm()).abs() < 1e-12);
        assert!(ip.im.abs() < 1e-12);
    }

    #[test]
    fn matched_filter_beats_random_search() {
        let mut rng = RandomSource::new(21);
        let gamma = rng.complex_gaussian(4);
        let v = optimal_v(&gamma).unwrap();
        let achieved = (v.transpose() * &gamma)[0].norm();
        let (_, best_random) = random_search_unit_vectors(
            |u| (u.transpose() * &gamma)[0].norm(),
            4,
            100_000,
            77,
        )
        .unwrap();
        assert!(achieved >= best_random - 1e-12);
    }

    #[test]
    fn zero_cascade_rejected() {
        assert!(optimal_v(&DVector::zeros(3)).is_err());
        let z = RandomSource::new(1).complex_gaussian(3);
        assert!(optimal_w(&DVector::zeros(3), &z).is_err());
    }

    #[test]
    fn noise_vector_avoids_basis_channel() {
        let mut gamma = DVector::zeros(3);
        gamma[0] = Complex64::new(1.0, 0.0);
        let z = RandomSource::new(4).complex_gaussian(3);
        let w = optimal_w(&gamma, &z).unwrap();
        assert!(w[0].norm() < 1e-14);
        assert!((w.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn noise_vector_orthogonal_to_random_cascades() {
        for seed in 0..30 {
            let mut rng = RandomSource::new(seed);
            let gamma = rng.complex_gaussian(6) * Complex64::new(3.0, 0.0);
            let z = rng.complex_gaussian(6);
            let w = optimal_w(&gamma, &z).unwrap();
            let residual = (w.transpose() * &gamma)[0].norm();
            assert!(residual < 1e-10 * gamma.norm(), "residual {residual}");
        }
    }

    #[test]
    fn null_space_projector_is_idempotent() {
        let mut rng = RandomSource::new(8);
        let gamma = rng.complex_gaussian(5);
        let n = 5;
        let scale = Complex64::new(1.0 / gamma.norm_squared(), 0.0);
        let mut p = nalgebra::DMatrix::<Complex64>::identity(n, n);
        for i in 0..n {
            for j in 0..n {
                p[(i, j)] -= gamma[i].conj() * gamma[j] * scale;
            }
        }
        let p2 = &p * &p;
        assert!((&p2 - &p).norm() < 1e-10);
    }

    #[test]
    fn phase_update_meets_triangle_bound() {
        let cfg = single_user_scenario();
        let channels = build_channel_set(&cfg).unwrap();
        let user = &channels.desired[0];
        let mut rng = RandomSource::new(5);
        let v = rng.complex_gaussian(cfg.n_elements()).normalize();
        let thetas = phase_update(&v, user, 0.0);
        for (link, theta) in user.links.iter().zip(&thetas) {
            let row = link.weighted_row(&v);
            let combined: Complex64 = row
                .iter()
                .zip(theta.iter())
                .map(|(c, t)| c * t)
                .sum();
            let bound: f64 = row.iter().map(|c| c.norm()).sum();
            assert!((combined.norm() - bound).abs() < 1e-12 * bound);
        }
    }

    #[test]
    fn phase_update_never_decreases_objective() {
        let cfg = tiny_scenario();
        let channels = build_channel_set(&cfg).unwrap();
        let user = &channels.desired[0];
        for seed in 0..20 {
            let mut rng = RandomSource::new(seed);
            let v = rng.complex_gaussian(2).normalize();
            let before_thetas = vec![rng.unit_modulus(2)];
            let before = (v.transpose() * build_cascade(user, &before_thetas).unwrap())[0]
                .norm_sqr();
            let after_thetas = phase_update(&v, user, 0.0);
            let after = (v.transpose() * build_cascade(user, &after_thetas).unwrap())[0]
                .norm_sqr();
            assert!(after >= before - 1e-12 * before.abs());
        }
    }

    #[test]
    fn phase_update_matches_grid_oracle() {
        // K=2 panels with two elements each: compare the closed form
        // against a 64-point-per-phase exhaustive grid.
        let mut cfg = single_user_scenario();
        cfg.alice.rows = 1;
        cfg.alice.cols = 2;
        for irs in &mut cfg.irs {
            irs.rows = 1;
            irs.cols = 2;
        }
        let channels = build_channel_set(&cfg).unwrap();
        let user = &channels.desired[0];
        let mut rng = RandomSource::new(12);
        let v = rng.complex_gaussian(2).normalize();
        let thetas = phase_update(&v, user, 0.0);
        let closed = (v.transpose() * build_cascade(user, &thetas).unwrap())[0].norm_sqr();

        // v^T Γ(Θ) = Σ_k (rows_k · Θ_k); precomputing the rows keeps the
        // 64⁴-point sweep affordable.
        let rows: Vec<_> = user.links.iter().map(|l| l.weighted_row(&v)).collect();
        let spec = GridSpec::new(64, 0, 0).unwrap();
        let (_, grid_best) = brute_force_phase_search(
            |stacked| {
                let mut acc = Complex64::new(0.0, 0.0);
                acc += rows[0][0] * stacked[0] + rows[0][1] * stacked[1];
                acc += rows[1][0] * stacked[2] + rows[1][1] * stacked[3];
                acc.norm_sqr()
            },
            4,
            &spec,
        )
        .unwrap();
        // The closed form dominates any grid point; the grid comes close.
        assert!(closed >= grid_best - 1e-12 * closed.abs());
        let cell = std::f64::consts::TAU / 64.0;
        assert!(grid_best >= closed * (1.0 - 4.0 * cell * cell), "{grid_best} vs {closed}");
    }

    #[test]
    fn reference_single_user_run_converges() {
        // The alternation is a power iteration on the lifted Gram matrix,
        // so the tail is linear; typical runs need 10–25 iterations to
        // push the relative change below 1e-6 on the two-panel geometry.
        let cfg = single_user_scenario();
        let result = run_msinr(&cfg, &MsinrOptions::default()).unwrap();
        assert!(result.converged);
        assert!(result.iterations <= 40, "took {}", result.iterations);
        for pair in result.trace.windows(2) {
            assert!(pair[1] >= pair[0] * (1.0 - 1e-12));
        }
        // Final noise vector sits in the user's null space.
        let channels = build_channel_set(&cfg).unwrap();
        let gamma = build_cascade(&channels.desired[0], &result.state.thetas).unwrap();
        let residual = (result.state.w.transpose() * &gamma)[0].norm();
        assert!(residual <= 1e-9, "residual {residual}");
        result.state.validate().unwrap();
        // The reported objective matches the metrics module.
        let s = metrics::sinr(&result.state, &channels.desired[0], channels.noise_power)
            .unwrap();
        assert!((s - result.objective).abs() < 1e-9 * result.objective);
    }

    #[test]
    fn optimal_start_is_a_fixed_point() {
        let cfg = single_user_scenario();
        let first = run_msinr(&cfg, &MsinrOptions::default()).unwrap();
        let mut opts = MsinrOptions::default();
        opts.initial_thetas = Some(first.state.thetas.clone());
        let second = run_msinr(&cfg, &opts).unwrap();
        assert!(second.iterations <= 2, "took {}", second.iterations);
        // The restart can only sharpen the first run's tolerance-limited
        // stop, never move it materially.
        assert!((second.objective - first.objective).abs() <= 1e-5 * first.objective);
    }

    #[test]
    fn target_phase_choice_does_not_change_objective() {
        let cfg = single_user_scenario();
        let a = run_msinr(&cfg, &MsinrOptions::default()).unwrap();
        let mut opts = MsinrOptions::default();
        opts.phi0 = 1.7;
        let b = run_msinr(&cfg, &opts).unwrap();
        assert!((a.objective - b.objective).abs() <= 1e-9 * a.objective);
    }

    #[test]
    fn runs_are_bit_reproducible() {
        let cfg = single_user_scenario();
        let a = run_msinr(&cfg, &MsinrOptions::default()).unwrap();
        let b = run_msinr(&cfg, &MsinrOptions::default()).unwrap();
        assert_eq!(a.trace, b.trace);
        assert_eq!(a.state.v, b.state.v);
        assert_eq!(a.state.w, b.state.w);
        for (ta, tb) in a.state.thetas.iter().zip(&b.state.thetas) {
            assert_eq!(ta, tb);
        }
    }

    #[test]
    fn multi_user_scenario_rejected() {
        let cfg = ScenarioConfig::default();
        assert!(run_msinr(&cfg, &MsinrOptions::default()).is_err());
    }

    #[test]
    fn tiny_instance_reaches_grid_optimum() {
        // Joint oracle: phase grid times a beamformer grid on the unit
        // sphere of C², independent of the closed forms.
        let cfg = tiny_scenario();
        let result = run_msinr(&cfg, &MsinrOptions::default()).unwrap();
        let channels = build_channel_set(&cfg).unwrap();
        let user = &channels.desired[0];

        let spec = GridSpec::new(64, 0, 0).unwrap();
        let (_, oracle_best) = brute_force_phase_search(
            |stacked| {
                let split = vec![stacked.clone()];
                let gamma = build_cascade(user, &split).unwrap();
                let mut best = 0.0f64;
                for ai in 0..32 {
                    let a = std::f64::consts::FRAC_PI_2 * ai as f64 / 31.0;
                    for bi in 0..64 {
                        let b = std::f64::consts::TAU * bi as f64 / 64.0;
                        let v0 = Complex64::new(a.cos(), 0.0);
                        let v1 = Complex64::from_polar(a.sin(), b);
                        let ip = v0 * gamma[0] + v1 * gamma[1];
                        best = best.max(ip.norm_sqr());
                    }
                }
                best
            },
            2,
            &spec,
        )
        .unwrap();
        let oracle_sinr = cfg.alpha * oracle_best / cfg.noise_power_w;
        assert!(
            result.objective >= 0.99 * oracle_sinr,
            "{} vs oracle {}",
            result.objective,
            oracle_sinr
        );
        let stacked = stack_thetas(&result.state.thetas);
        assert!(stacked.iter().all(|t| (t.norm() - 1.0).abs() < 1e-12));
    }
}
