//! Hard pulses, composite sequences and the systematic-error model.
//!
//! A pulse with nominal flip angle `θ` and phase `φ` is applied with the
//! Hamiltonian (in units of the nominal RF amplitude)
//!
//! ```text
//! H = (1 + ε_p)(cos φ Ix + sin φ Iy) + f_off Iz
//! ```
//!
//! for a duration `θ`. `ε_p` is an RF amplitude miscalibration at fixed
//! duration and `f_off` is the resonance offset divided by the nominal RF
//! amplitude. One [`ErrorPoint`] applies to every pulse of a sequence.

use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};
use crate::su2::{compose, reduce_angle, rotation, rotation_about, Unitary2};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pulse {
    angle: f64,
    phase: f64,
}

impl Pulse {
    /// `angle` must be finite and non-negative; `phase` is reduced to `[0, 2π)`.
    pub fn new(angle: f64, phase: f64) -> Result<Self> {
        if !angle.is_finite() || angle < 0.0 {
            return Err(Error::InvalidPulse(format!(
                "flip angle must be finite and non-negative, got {angle}"
            )));
        }
        if !phase.is_finite() {
            return Err(Error::InvalidPulse(format!("phase must be finite, got {phase}")));
        }
        Ok(Pulse {
            angle,
            phase: reduce_angle(phase),
        })
    }

    pub fn from_degrees(angle_deg: f64, phase_deg: f64) -> Result<Self> {
        Self::new(angle_deg.to_radians(), phase_deg.to_radians())
    }

    /// Nominal flip angle in radians.
    pub fn angle(&self) -> f64 {
        self.angle
    }

    /// Phase in radians, in `[0, 2π)`.
    pub fn phase(&self) -> f64 {
        self.phase
    }

    pub fn propagator(&self, error: ErrorPoint) -> Unitary2 {
        pulse_propagator(self, error)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompositeSequence {
    name: String,
    pulses: Vec<Pulse>,
}

impl CompositeSequence {
    pub fn new(name: impl Into<String>, pulses: Vec<Pulse>) -> Result<Self> {
        let name = name.into();
        if pulses.is_empty() {
            return Err(Error::EmptySequence(name));
        }
        Ok(CompositeSequence { name, pulses })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Pulses in the order they are applied.
    pub fn pulses(&self) -> &[Pulse] {
        &self.pulses
    }

    pub fn len(&self) -> usize {
        self.pulses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pulses.is_empty()
    }

    /// `self` followed by `next`.
    pub fn concat(&self, next: &CompositeSequence, name: impl Into<String>) -> Self {
        let mut pulses = self.pulses.clone();
        pulses.extend_from_slice(&next.pulses);
        CompositeSequence {
            name: name.into(),
            pulses,
        }
    }

    pub fn propagator(&self, error: ErrorPoint) -> Unitary2 {
        sequence_propagator(self, error)
    }
}

/// Systematic error coordinates: RF amplitude is `nominal·(1 + pulse_length)`,
/// and `off_resonance` is the offset in units of the nominal RF amplitude.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ErrorPoint {
    pulse_length: f64,
    off_resonance: f64,
}

impl ErrorPoint {
    pub const IDEAL: ErrorPoint = ErrorPoint {
        pulse_length: 0.0,
        off_resonance: 0.0,
    };

    pub fn new(pulse_length: f64, off_resonance: f64) -> Result<Self> {
        if !pulse_length.is_finite() || !off_resonance.is_finite() {
            return Err(Error::InvalidErrorPoint(format!(
                "({pulse_length}, {off_resonance}) is not finite"
            )));
        }
        Ok(ErrorPoint {
            pulse_length,
            off_resonance,
        })
    }

    pub fn pulse_length(&self) -> f64 {
        self.pulse_length
    }

    pub fn off_resonance(&self) -> f64 {
        self.off_resonance
    }

    pub fn is_ideal(&self) -> bool {
        self.pulse_length == 0.0 && self.off_resonance == 0.0
    }
}

/// The ideal rotation a pulse sequence is meant to implement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TargetRotation {
    pub axis_polar: f64,
    pub axis_azimuth: f64,
    pub angle: f64,
}

impl TargetRotation {
    pub fn new(axis_polar: f64, axis_azimuth: f64, angle: f64) -> Self {
        TargetRotation {
            axis_polar,
            axis_azimuth,
            angle,
        }
    }

    pub fn x(angle: f64) -> Self {
        Self::new(FRAC_PI_2, 0.0, angle)
    }

    pub fn y(angle: f64) -> Self {
        Self::new(FRAC_PI_2, FRAC_PI_2, angle)
    }

    pub fn z(angle: f64) -> Self {
        Self::new(0.0, 0.0, angle)
    }

    pub fn propagator(&self) -> Unitary2 {
        target_propagator(self)
    }
}

/// Propagator of a single hard pulse under `error`.
pub fn pulse_propagator(p: &Pulse, error: ErrorPoint) -> Unitary2 {
    if error.is_ideal() {
        return rotation(FRAC_PI_2, p.phase, p.angle);
    }
    let amplitude = 1.0 + error.pulse_length;
    let (s, c) = p.phase.sin_cos();
    let field = [amplitude * c, amplitude * s, error.off_resonance];
    let strength = field.iter().map(|x| x * x).sum::<f64>().sqrt();
    rotation_about(field, p.angle * strength)
}

/// Time-ordered product of the pulse propagators; the first pulse acts first.
pub fn sequence_propagator(s: &CompositeSequence, error: ErrorPoint) -> Unitary2 {
    s.pulses
        .iter()
        .fold(Unitary2::identity(), |acc, p| compose(&acc, &pulse_propagator(p, error)))
}

pub fn target_propagator(t: &TargetRotation) -> Unitary2 {
    rotation(t.axis_polar, t.axis_azimuth, t.angle)
}

/// Effective rotation angle of a pulse under `error`, before reduction mod 2π.
pub fn effective_flip_angle(p: &Pulse, error: ErrorPoint) -> f64 {
    p.angle * (1.0 + error.pulse_length).hypot(error.off_resonance)
}

/// Hard pulse shorthand in degrees, e.g. `deg(90.0, 0.0)` for 90x.
pub fn deg(angle_deg: f64, phase_deg: f64) -> Pulse {
    Pulse::from_degrees(angle_deg, phase_deg).expect("literal pulse parameters are valid")
}
