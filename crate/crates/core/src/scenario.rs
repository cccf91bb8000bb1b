//! Experiment configuration.
//!
//! A [`ScenarioConfig`] carries the full parameterization of a deployment:
//! transmit array, IRS placements, user positions, powers, noise, carrier
//! plan and the seed. Defaults reproduce the reference desk-scale scenario
//! (4×4 transmit array, two 4×4 IRS panels, two desired users, two
//! eavesdroppers, 3 GHz carrier, 5 MHz bandwidth over 1024 subcarriers,
//! 1 W transmit power).
//!
//! Configs are flat JSON; unknown keys are rejected so typos fail loudly,
//! and missing keys fall back to the defaults.

use crate::error::{Error, Result};
use crate::geometry::{IrsPlacement, Position3D};
use serde::{Deserialize, Serialize};
use std::path::Path;

pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Transmit array shape. Spacing defaults to half a carrier wavelength
/// when not set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AliceArray {
    #[serde(default = "default_array_rows")]
    pub rows: usize,
    #[serde(default = "default_array_rows")]
    pub cols: usize,
    /// Element spacing in meters; `None` means `c / (2 f_c)`.
    #[serde(default)]
    pub spacing_m: Option<f64>,
}

impl Default for AliceArray {
    fn default() -> Self {
        Self {
            rows: 4,
            cols: 4,
            spacing_m: None,
        }
    }
}

fn default_array_rows() -> usize {
    4
}

/// One IRS entry in the config file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IrsConfig {
    pub position_m: [f64; 3],
    #[serde(default = "default_array_rows")]
    pub rows: usize,
    #[serde(default = "default_array_rows")]
    pub cols: usize,
    /// Element spacing in meters; `None` means `c / (2 f_c)`.
    #[serde(default)]
    pub spacing_m: Option<f64>,
    /// Panel orientation relative to the transmit array, radians.
    #[serde(default)]
    pub placement_angle_rad: f64,
}

/// Full experiment parameterization.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ScenarioConfig {
    pub alice: AliceArray,
    pub irs: Vec<IrsConfig>,
    /// Desired users' ground positions, meters.
    pub desired_users_m: Vec<[f64; 3]>,
    /// Eavesdroppers' ground positions, meters.
    pub eavesdroppers_m: Vec<[f64; 3]>,
    /// Total transmit power in watts.
    pub transmit_power_w: f64,
    /// Fraction of transmit power on the confidential signal.
    pub alpha: f64,
    /// Receiver noise power in watts.
    pub noise_power_w: f64,
    pub speed_of_light_m_s: f64,
    pub carrier_frequency_hz: f64,
    pub bandwidth_hz: f64,
    pub subcarrier_count: u32,
    /// Path-loss proportionality constant: the per-bounce amplitude gain is
    /// `c0 / (total path length)²`. The reference curves fix only the
    /// transmit-power-to-noise ratio, so the absolute receive scale is a
    /// free calibration knob.
    pub path_loss_constant: f64,
    pub seed: u64,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            alice: AliceArray::default(),
            irs: vec![
                IrsConfig {
                    position_m: [50.0, 150.0, 50.0],
                    rows: 4,
                    cols: 4,
                    spacing_m: None,
                    placement_angle_rad: 0.0,
                },
                IrsConfig {
                    position_m: [100.0, 200.0, 30.0],
                    rows: 4,
                    cols: 4,
                    spacing_m: None,
                    placement_angle_rad: 0.0,
                },
            ],
            desired_users_m: vec![[100.0, 50.0, 0.0], [200.0, 150.0, 0.0]],
            eavesdroppers_m: vec![[150.0, 0.0, 0.0], [200.0, 50.0, 0.0]],
            transmit_power_w: 1.0,
            alpha: 0.9,
            noise_power_w: 1.0,
            speed_of_light_m_s: SPEED_OF_LIGHT,
            carrier_frequency_hz: 3.0e9,
            bandwidth_hz: 5.0e6,
            subcarrier_count: 1024,
            path_loss_constant: 1.0,
            seed: 42,
        }
    }
}

impl ScenarioConfig {
    /// Number of transmit elements.
    pub fn n_elements(&self) -> usize {
        self.alice.rows * self.alice.cols
    }

    /// Transmit element spacing, defaulting to half a carrier wavelength.
    pub fn alice_spacing(&self) -> f64 {
        self.alice
            .spacing_m
            .unwrap_or(self.speed_of_light_m_s / (2.0 * self.carrier_frequency_hz))
    }

    /// Subcarrier spacing `B / N_s`.
    pub fn subcarrier_spacing(&self) -> f64 {
        self.bandwidth_hz / self.subcarrier_count as f64
    }

    /// IRS placements with spacing defaults resolved.
    pub fn irs_placements(&self) -> Vec<IrsPlacement> {
        let half_wavelength = self.speed_of_light_m_s / (2.0 * self.carrier_frequency_hz);
        self.irs
            .iter()
            .map(|c| IrsPlacement {
                position: Position3D::new(c.position_m[0], c.position_m[1], c.position_m[2]),
                placement_angle: c.placement_angle_rad,
                rows: c.rows,
                cols: c.cols,
                spacing: c.spacing_m.unwrap_or(half_wavelength),
            })
            .collect()
    }

    pub fn desired_positions(&self) -> Vec<Position3D> {
        self.desired_users_m
            .iter()
            .map(|p| Position3D::new(p[0], p[1], p[2]))
            .collect()
    }

    pub fn eavesdropper_positions(&self) -> Vec<Position3D> {
        self.eavesdroppers_m
            .iter()
            .map(|p| Position3D::new(p[0], p[1], p[2]))
            .collect()
    }

    /// Signal-to-noise ratio `10·log10(P_s/σ²)` implied by the config.
    pub fn snr_db(&self) -> f64 {
        10.0 * (self.transmit_power_w / self.noise_power_w).log10()
    }

    /// Sets the noise power so that `10·log10(P_s/σ²) = snr_db`.
    pub fn set_snr_db(&mut self, snr_db: f64) {
        self.noise_power_w = self.transmit_power_w / 10f64.powf(snr_db / 10.0);
    }

    /// Checks every config invariant, naming the offending field.
    pub fn validate(&self) -> Result<()> {
        if self.alice.rows * self.alice.cols == 0 {
            return Err(Error::Config("alice: array must be non-empty".into()));
        }
        if let Some(d) = self.alice.spacing_m {
            if !(d > 0.0) {
                return Err(Error::Config(format!(
                    "alice.spacing_m: must be positive, got {d}"
                )));
            }
        }
        if !(self.transmit_power_w > 0.0) {
            return Err(Error::Config(format!(
                "transmit_power_w: must be positive, got {}",
                self.transmit_power_w
            )));
        }
        if !(0.0..=1.0).contains(&self.alpha) {
            return Err(Error::Config(format!(
                "alpha: must lie in [0, 1], got {}",
                self.alpha
            )));
        }
        if !(self.noise_power_w > 0.0) {
            return Err(Error::Config(format!(
                "noise_power_w: must be positive, got {}",
                self.noise_power_w
            )));
        }
        if !(self.carrier_frequency_hz > 0.0) {
            return Err(Error::Config("carrier_frequency_hz: must be positive".into()));
        }
        if self.subcarrier_count == 0 {
            return Err(Error::Config("subcarrier_count: must be at least 1".into()));
        }
        if !(self.bandwidth_hz > 0.0) {
            return Err(Error::Config("bandwidth_hz: must be positive".into()));
        }
        // Narrowband assumption: total bandwidth far below the carrier.
        if self.bandwidth_hz >= self.carrier_frequency_hz / 100.0 {
            return Err(Error::Config(format!(
                "bandwidth_hz: N_s·Δf = {} must stay below f_c/100 = {}",
                self.bandwidth_hz,
                self.carrier_frequency_hz / 100.0
            )));
        }
        if !(self.path_loss_constant > 0.0) {
            return Err(Error::Config("path_loss_constant: must be positive".into()));
        }
        if !(self.speed_of_light_m_s > 0.0) {
            return Err(Error::Config("speed_of_light_m_s: must be positive".into()));
        }
        for (i, p) in self.desired_users_m.iter().enumerate() {
            if p[2] != 0.0 {
                return Err(Error::Config(format!(
                    "desired_users_m[{i}]: users must be on the ground (z = 0), got z = {}",
                    p[2]
                )));
            }
        }
        for (i, p) in self.eavesdroppers_m.iter().enumerate() {
            if p[2] != 0.0 {
                return Err(Error::Config(format!(
                    "eavesdroppers_m[{i}]: users must be on the ground (z = 0), got z = {}",
                    p[2]
                )));
            }
        }
        for (i, irs) in self.irs_placements().iter().enumerate() {
            irs.validate()
                .map_err(|e| Error::Config(format!("irs[{i}]: {e}")))?;
        }
        Ok(())
    }
}

/// Loads a scenario from a JSON file. Missing fields take the defaults;
/// unknown keys and invariant violations are rejected.
pub fn load_scenario(path: &Path) -> Result<ScenarioConfig> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
    parse_scenario(&text)
}

/// Parses a scenario from JSON text.
pub fn parse_scenario(text: &str) -> Result<ScenarioConfig> {
    let cfg: ScenarioConfig =
        serde_json::from_str(text).map_err(|e| Error::Config(format!("invalid config: {e}")))?;
    cfg.validate()?;
    Ok(cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_config_is_reference_default() {
        let cfg = parse_scenario("{}").unwrap();
        let def = ScenarioConfig::default();
        assert_eq!(cfg, def);
        assert_eq!(cfg.n_elements(), 16);
        assert_eq!(cfg.irs.len(), 2);
        assert_eq!(cfg.desired_users_m.len(), 2);
        assert_eq!(cfg.eavesdroppers_m.len(), 2);
        assert_eq!(cfg.subcarrier_count, 1024);
        assert_eq!(cfg.bandwidth_hz, 5.0e6);
        assert_eq!(cfg.transmit_power_w, 1.0);
        assert_eq!(cfg.alpha, 0.9);
        assert_eq!(cfg.carrier_frequency_hz, 3.0e9);
        assert_eq!(cfg.desired_users_m[0], [100.0, 50.0, 0.0]);
        assert_eq!(cfg.desired_users_m[1], [200.0, 150.0, 0.0]);
        assert_eq!(cfg.eavesdroppers_m[0], [150.0, 0.0, 0.0]);
        assert_eq!(cfg.eavesdroppers_m[1], [200.0, 50.0, 0.0]);
        assert_eq!(cfg.irs[0].position_m, [50.0, 150.0, 50.0]);
        assert_eq!(cfg.irs[1].position_m, [100.0, 200.0, 30.0]);
        // d = c / (2 f_c)
        let d = cfg.alice_spacing();
        assert!((d - SPEED_OF_LIGHT / 6.0e9).abs() < 1e-15);
        // Δf = B / N_s
        assert!((cfg.subcarrier_spacing() - 4882.8125).abs() < 1e-9);
    }

    #[test]
    fn override_changes_only_named_field() {
        let cfg = parse_scenario(r#"{"alpha": 0.5}"#).unwrap();
        let mut expect = ScenarioConfig::default();
        expect.alpha = 0.5;
        assert_eq!(cfg, expect);
    }

    #[test]
    fn negative_power_rejected() {
        let err = parse_scenario(r#"{"transmit_power_w": -1.0}"#).unwrap_err();
        assert!(err.to_string().contains("transmit_power_w"));
    }

    #[test]
    fn unknown_key_rejected() {
        assert!(parse_scenario(r#"{"transmit_power": 1.0}"#).is_err());
    }

    #[test]
    fn wideband_config_rejected() {
        let err = parse_scenario(r#"{"bandwidth_hz": 5.0e7}"#).unwrap_err();
        assert!(err.to_string().contains("f_c/100"));
    }

    #[test]
    fn elevated_user_rejected() {
        let err =
            parse_scenario(r#"{"desired_users_m": [[10.0, 5.0, 2.0]]}"#).unwrap_err();
        assert!(err.to_string().contains("z = 2"));
    }

    #[test]
    fn snr_round_trip() {
        let mut cfg = ScenarioConfig::default();
        cfg.set_snr_db(-7.5);
        assert!((cfg.snr_db() + 7.5).abs() < 1e-12);
    }
}
