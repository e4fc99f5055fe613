//! Simulation of a weak measurement of spin-1 with a two-stage Stern-Gerlach setup.
//!
//! Metastable helium is pre-selected at angles `(θ, φ)`, given a small spin-dependent
//! momentum kick by a weak magnet, post-selected onto `m = +1` along x, and flown
//! freely to a detector. The crate computes the first-order (weak-value) detector
//! density, the exact three-component density it approximates, the calibrated
//! validity limit of the former, and closed-form displacement plans.

#![allow(clippy::neg_cmp_op_on_partial_ord)] // `!(x > 0.0)` also rejects NaN

pub mod calibration;
pub mod cli;
pub mod config;
pub mod constants;
pub mod error;
pub mod planner;
pub mod propagation;
pub mod spin;
pub mod wavepacket;

pub use calibration::{find_max_limit, gradient_for_limit, limit_of, scan_limits, LimitScan};
pub use config::RunConfig;
pub use constants::{constants, PhysicalConstants};
pub use error::{Error, Result};
pub use planner::{displacement, displacement_two_ways, PlanResult};
pub use propagation::{
    apply_weak_stage, exact_detector_density, post_select, truncated_expansion_amplitude,
    ExperimentParams, SpinorPacket,
};
pub use spin::{inner, make_spinor, post_selector, weak_value, SpinMatrices, Spinor3, WeakValue};
pub use wavepacket::{
    first_order_detector_density, initial_packet, spread_at, DetectorProfile, WavePacket,
};
