//! Robust composite-rotor design: maximize the grid-aggregated rotor
//! fidelity over the free pulse parameters with a restarted simplex search.
//!
//! Every objective call counts against one global budget and the best point
//! is tracked across all calls (strict improvement only), so a run with a
//! larger budget replays a smaller run exactly before continuing and the
//! earliest start wins ties. The first call is always the initial sequence.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::fidelity::rotor_fidelity;
use crate::pulse::{sequence_propagator, target_propagator, CompositeSequence, Pulse, TargetRotation};
use crate::simplex::{nelder_mead, SimplexOptions};
use crate::sweep::{ErrorGrid, Objective};
use crate::su2::Unitary2;

/// Which parameters of one pulse the search may change.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct FreeMask {
    pub angle: bool,
    pub phase: bool,
}

impl FreeMask {
    pub const FROZEN: FreeMask = FreeMask {
        angle: false,
        phase: false,
    };
    pub const ANGLE: FreeMask = FreeMask {
        angle: true,
        phase: false,
    };
    pub const PHASE: FreeMask = FreeMask {
        angle: false,
        phase: true,
    };
    pub const BOTH: FreeMask = FreeMask {
        angle: true,
        phase: true,
    };

    fn count(self) -> usize {
        usize::from(self.angle) + usize::from(self.phase)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DesignProblem {
    pub name: String,
    /// Starting sequence; its length fixes the pulse count.
    pub initial: Vec<Pulse>,
    pub free: Vec<FreeMask>,
    pub target: TargetRotation,
    pub grid: ErrorGrid,
    pub objective: Objective,
    /// Total objective evaluations across all starts.
    pub max_evaluations: usize,
    /// Number of simplex starts; start 0 is the initial sequence, later
    /// starts are seeded perturbations of it.
    pub starts: usize,
    pub seed: u64,
}

impl DesignProblem {
    pub fn validate(&self) -> Result<()> {
        if self.initial.is_empty() {
            return Err(Error::InvalidProblem("pulse count must be at least 1".into()));
        }
        if self.free.len() != self.initial.len() {
            return Err(Error::InvalidProblem(format!(
                "{} free-parameter masks for {} pulses",
                self.free.len(),
                self.initial.len()
            )));
        }
        if self.free_parameter_count() == 0 {
            return Err(Error::NoFreeParameters);
        }
        if self.max_evaluations == 0 {
            return Err(Error::InvalidProblem("evaluation budget must be at least 1".into()));
        }
        if self.starts == 0 {
            return Err(Error::InvalidProblem("at least one start is required".into()));
        }
        Ok(())
    }

    pub fn free_parameter_count(&self) -> usize {
        self.free.iter().map(|m| m.count()).sum()
    }

    fn initial_parameters(&self) -> Vec<f64> {
        self.initial
            .iter()
            .zip(&self.free)
            .flat_map(|(p, m)| {
                let angle = m.angle.then_some(p.angle());
                let phase = m.phase.then_some(p.phase());
                angle.into_iter().chain(phase)
            })
            .collect()
    }

    /// Flip angles enter as `|x|` so the search space is unbounded.
    fn pulses(&self, x: &[f64]) -> Result<Vec<Pulse>> {
        let mut it = x.iter().copied();
        self.initial
            .iter()
            .zip(&self.free)
            .map(|(p, m)| {
                let angle = if m.angle { it.next().unwrap_or(0.0).abs() } else { p.angle() };
                let phase = if m.phase { it.next().unwrap_or(0.0) } else { p.phase() };
                Pulse::new(angle, phase)
            })
            .collect()
    }

    fn score(&self, ideal: &Unitary2, pulses: Vec<Pulse>) -> Result<f64> {
        let seq = CompositeSequence::new(self.name.clone(), pulses)?;
        let values = (0..self.grid.len())
            .map(|k| rotor_fidelity(ideal, &sequence_propagator(&seq, self.grid.point(k))))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.objective.aggregate(&values))
    }

    /// Objective of a complete sequence on this problem's grid.
    pub fn evaluate(&self, seq: &CompositeSequence) -> Result<f64> {
        self.score(&target_propagator(&self.target), seq.pulses().to_vec())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DesignOutcome {
    pub sequence: CompositeSequence,
    pub objective: f64,
    pub initial_objective: f64,
    pub evaluations: usize,
    /// Whether the start that produced the best point met its convergence test.
    pub converged: bool,
    pub best_start: usize,
}

struct Best {
    value: f64,
    x: Vec<f64>,
    start: usize,
}

pub fn optimize(p: &DesignProblem) -> Result<DesignOutcome> {
    optimize_with(p, &SimplexOptions::default())
}

pub fn optimize_with(p: &DesignProblem, opts: &SimplexOptions) -> Result<DesignOutcome> {
    p.validate()?;
    let ideal = target_propagator(&p.target);
    let x0 = p.initial_parameters();
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);

    let mut used = 0usize;
    let mut best: Option<Best> = None;
    let mut initial_objective = f64::NAN;
    let mut converged_by_start = Vec::with_capacity(p.starts);

    for start in 0..p.starts {
        if used >= p.max_evaluations {
            break;
        }
        let origin: Vec<f64> = if start == 0 {
            x0.clone()
        } else {
            x0.iter().map(|x| x + rng.random_range(-PI..PI)).collect()
        };
        let mut objective = |x: &[f64]| -> Result<Option<f64>> {
            if used >= p.max_evaluations {
                return Ok(None);
            }
            used += 1;
            let value = p.score(&ideal, p.pulses(x)?)?;
            if used == 1 {
                initial_objective = value;
            }
            if best.as_ref().is_none_or(|b| value > b.value) {
                best = Some(Best {
                    value,
                    x: x.to_vec(),
                    start,
                });
            }
            Ok(Some(-value))
        };
        let run = nelder_mead(&mut objective, &origin, opts)?;
        converged_by_start.push(run.converged);
    }

    let best = best.expect("budget of at least one evaluates the initial sequence");
    let sequence = CompositeSequence::new(p.name.clone(), p.pulses(&best.x)?)?;
    Ok(DesignOutcome {
        sequence,
        objective: best.value,
        initial_objective,
        evaluations: used,
        converged: converged_by_start[best.start],
        best_start: best.start,
    })
}
