//! Angles and distances of the 3D deployment.
//!
//! The transmitter (Alice) sits at the origin with its array rows along the
//! X axis and columns along the Y axis. Users are on the ground (`z = 0`)
//! and each IRS hangs at height `g > 0` on a facade. All link geometry
//! reduces to azimuth/pitch/range triples plus the two cone angles a planar
//! array sees toward a target.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Cartesian position in meters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Position3D {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Position3D {
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn norm(&self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }
}

/// Placement of one IRS: position of its reference element, orientation of
/// the panel relative to Alice's array, and the element lattice.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IrsPlacement {
    pub position: Position3D,
    /// Angle between Alice's array rows and the ground projection of the
    /// panel, radians in `[0, 2π)`.
    pub placement_angle: f64,
    pub rows: usize,
    pub cols: usize,
    /// Element spacing in meters.
    pub spacing: f64,
}

impl IrsPlacement {
    pub fn element_count(&self) -> usize {
        self.rows * self.cols
    }

    pub fn validate(&self) -> Result<()> {
        if self.rows * self.cols == 0 {
            return Err(Error::Config("IRS must have at least one element".into()));
        }
        if !(self.spacing > 0.0) {
            return Err(Error::Config(format!(
                "IRS element spacing must be positive, got {}",
                self.spacing
            )));
        }
        if !(0.0..std::f64::consts::TAU).contains(&self.placement_angle) {
            return Err(Error::Config(format!(
                "IRS placement angle must lie in [0, 2π), got {}",
                self.placement_angle
            )));
        }
        if !(self.position.z > 0.0) {
            return Err(Error::Config(format!(
                "IRS height must be positive, got {}",
                self.position.z
            )));
        }
        Ok(())
    }
}

/// Azimuth/pitch/range of a link endpoint as seen from a reference frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngleSet {
    /// Azimuth in `(-π, π]`.
    pub azimuth: f64,
    /// Pitch in `[0, π/2]`; `π/2` only in the degenerate overhead case.
    pub pitch: f64,
    /// Range in meters, `> 0`.
    pub range: f64,
    /// Set when the target sits exactly on the frame's vertical axis and
    /// the azimuth is ill-defined.
    pub degenerate: bool,
}

/// Cone angles between a target direction and the two lattice axes of a
/// planar array.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConeAngles {
    /// Angle to the column axis, radians in `[0, π]`.
    pub beta: f64,
    /// Angle to the row axis, radians in `[0, π]`.
    pub gamma: f64,
}

/// Azimuth, pitch and range of a point seen from Alice's reference element
/// at the origin.
///
/// Uses `atan2` so that positions with `x <= 0` land in the correct
/// quadrant.
pub fn angles_from_alice(p: &Position3D) -> Result<AngleSet> {
    if !p.is_finite() {
        return Err(Error::DegenerateGeometry(format!(
            "non-finite position ({}, {}, {})",
            p.x, p.y, p.z
        )));
    }
    let horizontal = p.x.hypot(p.y);
    let range = p.norm();
    if range == 0.0 {
        return Err(Error::DegenerateGeometry(
            "position coincides with the transmitter origin".into(),
        ));
    }
    if horizontal == 0.0 {
        // Directly above the array: azimuth undefined.
        return Ok(AngleSet {
            azimuth: 0.0,
            pitch: std::f64::consts::FRAC_PI_2,
            range,
            degenerate: true,
        });
    }
    Ok(AngleSet {
        azimuth: p.y.atan2(p.x),
        pitch: (p.z / horizontal).atan(),
        range,
        degenerate: false,
    })
}

/// Azimuth, pitch and range of a ground point seen from an IRS.
///
/// The IRS frame measures azimuth as `atan2(y_I - y_p, x_p - x_I)` and
/// pitch downward from the panel height. A point exactly beneath the panel
/// has no defined azimuth; its pitch is pinned to `π/2` and the result is
/// flagged degenerate.
pub fn angles_from_irs(irs: &IrsPlacement, p: &Position3D) -> AngleSet {
    let (xi, yi, g) = (irs.position.x, irs.position.y, irs.position.z);
    let dx = xi - p.x;
    let dy = yi - p.y;
    let dz = g - p.z;
    let horizontal = dx.hypot(dy);
    let range = (dx * dx + dy * dy + dz * dz).sqrt();
    if horizontal == 0.0 {
        return AngleSet {
            azimuth: 0.0,
            pitch: std::f64::consts::FRAC_PI_2,
            range,
            degenerate: true,
        };
    }
    AngleSet {
        azimuth: (yi - p.y).atan2(p.x - xi),
        pitch: (dz / horizontal).atan(),
        range,
        degenerate: false,
    }
}

/// Cone angles between a target and Alice's array axes.
pub fn cone_angles_alice(a: &AngleSet) -> ConeAngles {
    cone_angles(a.azimuth, a.pitch)
}

/// Cone angles between a target and an IRS panel with placement angle
/// `theta_ix`: the panel axes are rotated by `theta_ix` relative to
/// Alice's, so the azimuth is shifted before projecting.
pub fn cone_angles_irs(a: &AngleSet, theta_ix: f64) -> ConeAngles {
    cone_angles(a.azimuth + theta_ix, a.pitch)
}

fn cone_angles(azimuth: f64, pitch: f64) -> ConeAngles {
    let cp = pitch.cos();
    ConeAngles {
        beta: (cp * azimuth.sin()).clamp(-1.0, 1.0).acos(),
        gamma: (cp * azimuth.cos()).clamp(-1.0, 1.0).acos(),
    }
}
