//! Fidelity over a grid of systematic errors.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fidelity::{report, FidelityReport};
use crate::pulse::{sequence_propagator, target_propagator, CompositeSequence, ErrorPoint, TargetRotation};

/// Linearly spaced values from `min` to `max` inclusive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearRange {
    min: f64,
    max: f64,
    count: usize,
}

impl LinearRange {
    /// A single-point range needs `min == max`, so both endpoints stay on the grid.
    pub fn new(min: f64, max: f64, count: usize) -> Result<Self> {
        if !min.is_finite() || !max.is_finite() {
            return Err(Error::InvalidGrid(format!("bounds {min}:{max} must be finite")));
        }
        if count == 0 {
            return Err(Error::InvalidGrid("point count must be at least 1".into()));
        }
        if min > max {
            return Err(Error::InvalidGrid(format!("min {min} exceeds max {max}")));
        }
        if count == 1 && min != max {
            return Err(Error::InvalidGrid(format!(
                "a single point cannot cover {min}:{max}"
            )));
        }
        Ok(LinearRange { min, max, count })
    }

    pub fn single(value: f64) -> Result<Self> {
        Self::new(value, value, 1)
    }

    pub fn min(&self) -> f64 {
        self.min
    }

    pub fn max(&self) -> f64 {
        self.max
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn value(&self, i: usize) -> f64 {
        if self.count == 1 || i == 0 {
            self.min
        } else if i + 1 == self.count {
            self.max
        } else {
            self.min + (self.max - self.min) * i as f64 / (self.count - 1) as f64
        }
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.count).map(|i| self.value(i)).collect()
    }
}

/// Pulse-length error (outer) by off-resonance (inner) grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorGrid {
    pub pulse_length: LinearRange,
    pub off_resonance: LinearRange,
}

impl ErrorGrid {
    pub fn new(pulse_length: LinearRange, off_resonance: LinearRange) -> Self {
        ErrorGrid {
            pulse_length,
            off_resonance,
        }
    }

    /// The single node `(0, 0)`.
    pub fn ideal() -> Self {
        let zero = LinearRange::single(0.0).expect("zero is finite");
        ErrorGrid::new(zero, zero)
    }

    pub fn len(&self) -> usize {
        self.pulse_length.count * self.off_resonance.count
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Node `k` in row-major order.
    pub fn point(&self, k: usize) -> ErrorPoint {
        let n_off = self.off_resonance.count;
        ErrorPoint::new(self.pulse_length.value(k / n_off), self.off_resonance.value(k % n_off))
            .expect("grid bounds are finite")
    }

    pub fn points(&self) -> Vec<ErrorPoint> {
        (0..self.len()).map(|k| self.point(k)).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FidelitySurface {
    pub sequence: String,
    pub target: TargetRotation,
    pub grid: ErrorGrid,
    /// One report per grid node, row-major.
    pub reports: Vec<FidelityReport>,
}

impl FidelitySurface {
    pub fn values(&self) -> Vec<f64> {
        self.reports.iter().map(|r| r.fidelity).collect()
    }

    pub fn at(&self, i: usize, j: usize) -> &FidelityReport {
        &self.reports[i * self.grid.off_resonance.count + j]
    }

    pub fn mean(&self) -> f64 {
        Objective::Mean.aggregate(&self.values())
    }

    pub fn worst(&self) -> f64 {
        Objective::WorstCase.aggregate(&self.values())
    }

    /// Iterator of `(error point, report)` in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (ErrorPoint, &FidelityReport)> + '_ {
        self.reports.iter().enumerate().map(|(k, r)| (self.grid.point(k), r))
    }
}

/// How grid fidelities are reduced to one robustness score.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Objective {
    Mean,
    WorstCase,
}

impl Objective {
    /// Ordered reduction; identical input order gives bit-identical output.
    pub fn aggregate(self, values: &[f64]) -> f64 {
        match self {
            Objective::Mean => values.iter().sum::<f64>() / values.len() as f64,
            Objective::WorstCase => values.iter().copied().fold(f64::INFINITY, f64::min),
        }
    }
}

/// Closed-form fidelity at every node. Nodes are evaluated in parallel and
/// collected in row-major order.
pub fn sweep(s: &CompositeSequence, t: &TargetRotation, g: &ErrorGrid) -> Result<FidelitySurface> {
    let ideal = target_propagator(t);
    let reports = (0..g.len())
        .into_par_iter()
        .map(|k| report(&ideal, &sequence_propagator(s, g.point(k)), None))
        .collect::<Result<Vec<_>>>()?;
    Ok(FidelitySurface {
        sequence: s.name().to_string(),
        target: *t,
        grid: *g,
        reports,
    })
}
