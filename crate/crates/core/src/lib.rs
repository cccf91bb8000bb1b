//! Simulation and optimization toolkit for multi-IRS-aided secure precise
//! wireless transmission (SPWT) in 3D.
//!
//! A transmitter with a rectangular antenna array reaches ground users only
//! through the reflection paths offered by `K` intelligent reflecting
//! surfaces (IRS) mounted on building facades; the direct path is blocked.
//! Random subcarrier selection across the transmit elements couples the
//! steering phases to both angle and range, so a beam can be focused on a
//! 3D location rather than just a direction.
//!
//! The crate provides:
//!
//! - [`geometry`]: angles and distances of the 3D deployment,
//! - [`channel`]: subcarrier allocation, steering vectors and the cascaded
//!   transmitter-IRS-user channel composites,
//! - [`metrics`]: SINR, secrecy rate and SLNR evaluation,
//! - [`msinr`]: single-user max-SINR alternating optimization with
//!   null-space artificial noise,
//! - [`convex`]: semidefinite-relaxation machinery (PSD projection,
//!   Taylor anchors, a smoothed max-min projected-gradient solver, and
//!   Gaussian randomization),
//! - [`msr`]: multi-user max-secrecy-rate alternating SCA scheme,
//! - [`mslnr`]: low-complexity max-SLNR scheme with closed-form
//!   per-element phase updates,
//! - [`baseline`]: a direct-path maximum-ratio reference scheme,
//! - [`oracle`]: brute-force and finite-difference baselines used to
//!   validate every optimizer at desk scale.

pub mod baseline;
pub mod channel;
pub mod convex;
pub mod error;
pub mod geometry;
pub mod metrics;
pub mod mslnr;
pub mod msinr;
pub mod msr;
pub mod oracle;
pub mod random;
pub mod scenario;
pub mod state;

pub use error::{Error, Result};
pub use scenario::ScenarioConfig;
pub use state::{BeamformerState, SchemeResult};
