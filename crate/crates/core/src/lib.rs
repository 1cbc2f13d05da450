//! Rotor fidelity of single-spin composite pulses.
//!
//! The crate computes how well a (possibly mis-set) composite pulse acts as a
//! general rotor, i.e. how closely its propagator matches an ideal rotation
//! averaged over every initial state:
//!
//! * [`su2`]: 2×2 unitaries, product operators, quaternion and SO(3) images.
//! * [`pulse`]: hard pulses, composite sequences and the pulse-length /
//!   off-resonance error model.
//! * [`fidelity`]: the closed-form rotor fidelity, transfer efficiencies,
//!   the quaternion measure and a Monte Carlo Bloch-sphere average.
//! * [`sweep`] and [`optimize`]: error-grid surfaces and robust design.

pub mod error;
pub mod fidelity;
pub mod optimize;
pub mod pulse;
pub mod quadrature;
pub mod simplex;
pub mod su2;
pub mod sweep;

pub use error::{Error, Result};
pub use fidelity::{
    coefficient_integral, coefficient_integral_quadrature, monte_carlo_fidelity, overlap_term,
    quaternion_fidelity, report, rotor_fidelity, rotor_fidelity_unchecked, signed_quaternion_dot,
    transfer_efficiency, FidelityReport, MonteCarloConfig, MonteCarloEstimate,
};
pub use optimize::{optimize, DesignOutcome, DesignProblem, FreeMask};
pub use pulse::{
    pulse_propagator, sequence_propagator, target_propagator, CompositeSequence, ErrorPoint, Pulse,
    TargetRotation,
};
pub use su2::{
    compose, rotation, to_quaternion, to_rotation3, Axis, BlochState, Mat2, ProductOperator,
    Quaternion, Rotation3, Unitary2,
};
pub use sweep::{sweep, ErrorGrid, FidelitySurface, LinearRange, Objective};
