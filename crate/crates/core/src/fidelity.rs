//! Rotor fidelity of a realized propagator `V` against an ideal rotation `U`.
//!
//! The state-averaged squared overlap `mean |⟨ψ|U†V|ψ⟩|²` over the Bloch
//! sphere reduces to
//!
//! ```text
//! f = 1/2 + 1/3 · Σ_{j=x,y,z} tr(U Ij U† V Ij V†)
//! ```
//!
//! The `1/2` is the `I0` term, which commutes with every propagator. Each
//! trace is half the transfer efficiency from `Ij` to `U Ij U†`, so `f` is
//! also `1/2 + mean(eff)/2`, and it relates to the quaternion overlap `q` by
//! `f = (1 + 2q²)/3`.
//!
//! Pure states are assumed throughout. A pseudo-pure deviation matrix with
//! polarization `ε` only rescales the trace terms by `ε²`; the polarization is
//! fixed at one and has no API surface.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::quadrature::gauss_legendre;
use crate::su2::{coefficients, to_quaternion, Axis, BlochState, ProductOperator, Unitary2};

pub const MIN_FIDELITY: f64 = 1.0 / 3.0;

/// Allowed excursion outside an analytic range before a value is treated as
/// an internal inconsistency instead of rounding noise.
pub const RANGE_SLACK: f64 = 1e-9;

/// Largest imaginary residue accepted on a trace that must be real.
pub const IMAG_TOL: f64 = 1e-12;

/// `tr(U·op·U† · V·op·V†)`.
pub fn overlap_term(u: &Unitary2, v: &Unitary2, op: ProductOperator) -> Complex64 {
    let m = op.matrix();
    (u.conjugate(&m) * v.conjugate(&m)).trace()
}

/// The closed-form fidelity without residue checks or clamping.
pub fn rotor_fidelity_unchecked(u: &Unitary2, v: &Unitary2) -> f64 {
    let sum: f64 = Axis::ALL
        .iter()
        .map(|a| overlap_term(u, v, a.operator()).re)
        .sum();
    0.5 + sum / 3.0
}

/// Rotor fidelity of `v` against the ideal `u`, in `[1/3, 1]`.
///
/// Fails with [`Error::Consistency`] if the trace sum carries an imaginary
/// residue above [`IMAG_TOL`] or lands more than [`RANGE_SLACK`] outside the
/// analytic range; smaller excursions are clamped.
pub fn rotor_fidelity(u: &Unitary2, v: &Unitary2) -> Result<f64> {
    let sum: Complex64 = Axis::ALL
        .iter()
        .map(|a| overlap_term(u, v, a.operator()))
        .sum();
    if sum.im.abs() > IMAG_TOL {
        return Err(Error::Consistency(format!(
            "trace sum has imaginary residue {:.3e}",
            sum.im
        )));
    }
    checked_range(0.5 + sum.re / 3.0, MIN_FIDELITY, 1.0, "rotor fidelity")
}

/// `2·tr(U Ij U† V Ij V†)`: how well `v` carries `Ij` to `U Ij U†`, in `[-1, 1]`.
pub fn transfer_efficiency(u: &Unitary2, v: &Unitary2, axis: Axis) -> f64 {
    2.0 * overlap_term(u, v, axis.operator()).re
}

/// Absolute dot product of the unit quaternions of `u` and `v`.
pub fn quaternion_fidelity(u: &Unitary2, v: &Unitary2) -> f64 {
    signed_quaternion_dot(u, v).abs().min(1.0)
}

/// Signed quaternion dot product, each quaternion in its `a ≥ 0` hemisphere.
/// Exposed for comparison; the sign depends on the hemisphere convention.
pub fn signed_quaternion_dot(u: &Unitary2, v: &Unitary2) -> f64 {
    to_quaternion(u).dot(&to_quaternion(v))
}

/// Sample mean of `|⟨ψ|U†V|ψ⟩|²` over states drawn uniformly on the Bloch
/// sphere (`cos θ` uniform on `[-1, 1]`, `φ` uniform on `[0, 2π)`).
/// Deterministic for a fixed `(samples, seed)`.
pub fn monte_carlo_fidelity(u: &Unitary2, v: &Unitary2, samples: usize, seed: u64) -> Result<f64> {
    if samples == 0 {
        return Err(Error::ZeroSamples);
    }
    let w = *(u.dagger() * *v).matrix();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut total = 0.0;
    for _ in 0..samples {
        let cos_theta = 2.0 * rng.random::<f64>() - 1.0;
        let phi = TAU * rng.random::<f64>();
        let state = BlochState::from_cos_theta(cos_theta, phi)?;
        let [k0, k1] = state.ket();
        let w0 = w.0[0][0] * k0 + w.0[0][1] * k1;
        let w1 = w.0[1][0] * k0 + w.0[1][1] * k1;
        let amplitude = k0.conj() * w0 + k1.conj() * w1;
        total += amplitude.norm_sqr();
    }
    Ok(total / samples as f64)
}

/// `(1/4π) ∮ c_i c_j dΩ = δij/3 + 2·δi0·δj0/3`.
pub fn coefficient_integral(i: ProductOperator, j: ProductOperator) -> f64 {
    let delta = |a: bool| if a { 1.0 } else { 0.0 };
    let d0 = delta(i == ProductOperator::I0 && j == ProductOperator::I0);
    delta(i == j) / 3.0 + 2.0 * d0 / 3.0
}

/// Numerical value of the same sphere average: Gauss–Legendre in `cos θ`
/// with `polar_nodes` points times the uniform rule in `φ` with
/// `azimuth_nodes` points.
pub fn coefficient_integral_quadrature(
    i: ProductOperator,
    j: ProductOperator,
    polar_nodes: usize,
    azimuth_nodes: usize,
) -> f64 {
    let rule = gauss_legendre(polar_nodes);
    let dphi = TAU / azimuth_nodes as f64;
    let mut total = 0.0;
    for &(x, w) in &rule {
        let theta = x.clamp(-1.0, 1.0).acos();
        for k in 0..azimuth_nodes {
            let c = coefficients(theta, k as f64 * dphi);
            total += w * dphi * c[i.index()] * c[j.index()];
        }
    }
    total / (2.0 * TAU)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MonteCarloConfig {
    pub samples: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonteCarloEstimate {
    pub value: f64,
    pub samples: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FidelityReport {
    /// Closed-form rotor fidelity.
    pub fidelity: f64,
    /// Transfer efficiencies for `Ix, Iy, Iz`.
    pub efficiency: [f64; 3],
    pub quaternion: f64,
    pub monte_carlo: Option<MonteCarloEstimate>,
}

impl FidelityReport {
    pub fn efficiency(&self, axis: Axis) -> f64 {
        self.efficiency[axis.index()]
    }

    /// `1/2 + mean(eff)/2 - fidelity`.
    pub fn averaging_residual(&self) -> f64 {
        0.5 + self.efficiency.iter().sum::<f64>() / 6.0 - self.fidelity
    }

    /// `(1 + 2q²)/3 - fidelity`.
    pub fn quaternion_residual(&self) -> f64 {
        (1.0 + 2.0 * self.quaternion * self.quaternion) / 3.0 - self.fidelity
    }
}

/// Every measure of `v` against the ideal `u`, cross-checked.
pub fn report(u: &Unitary2, v: &Unitary2, mc: Option<MonteCarloConfig>) -> Result<FidelityReport> {
    let fidelity = rotor_fidelity(u, v)?;
    let mut efficiency = [0.0; 3];
    for axis in Axis::ALL {
        let eff = transfer_efficiency(u, v, axis);
        efficiency[axis.index()] = checked_range(eff, -1.0, 1.0, "transfer efficiency")?;
    }
    let quaternion = checked_range(signed_quaternion_dot(u, v).abs(), 0.0, 1.0, "quaternion fidelity")?;
    let monte_carlo = match mc {
        Some(cfg) => Some(MonteCarloEstimate {
            value: monte_carlo_fidelity(u, v, cfg.samples, cfg.seed)?,
            samples: cfg.samples,
            seed: cfg.seed,
        }),
        None => None,
    };
    let out = FidelityReport {
        fidelity,
        efficiency,
        quaternion,
        monte_carlo,
    };
    if out.averaging_residual().abs() > RANGE_SLACK {
        return Err(Error::Consistency(format!(
            "efficiency average disagrees with fidelity by {:.3e}",
            out.averaging_residual()
        )));
    }
    if out.quaternion_residual().abs() > RANGE_SLACK {
        return Err(Error::Consistency(format!(
            "quaternion measure disagrees with fidelity by {:.3e}",
            out.quaternion_residual()
        )));
    }
    Ok(out)
}

fn checked_range(x: f64, lo: f64, hi: f64, what: &str) -> Result<f64> {
    if !x.is_finite() || x < lo - RANGE_SLACK || x > hi + RANGE_SLACK {
        return Err(Error::Consistency(format!("{what} {x} outside [{lo}, {hi}]")));
    }
    Ok(x.clamp(lo, hi))
}
