//! Design-problem files for `rotorfid optimize`.
//!
//! ```json
//! {
//!   "name": "robust-180x",
//!   "target": {"axis": "x", "angle_deg": 180},
//!   "pulses": [
//!     {"angle_deg": 180, "phase_deg": 0, "free_phase": true},
//!     {"angle_deg": 180, "phase_deg": 0, "free_phase": true},
//!     {"angle_deg": 180, "phase_deg": 0, "free_phase": true}
//!   ],
//!   "grid": {"eps": "-0.2:0.2:21", "off": "0"},
//!   "objective": "mean",
//!   "max_evaluations": 4000,
//!   "starts": 8,
//!   "seed": 7
//! }
//! ```

use std::fs;
use std::path::Path;

use rotor_fidelity::{DesignProblem, ErrorGrid, FreeMask, LinearRange, Objective, Pulse, TargetRotation};
use serde::Deserialize;

use crate::error::{CliError, Result};
use crate::spec::{parse_axis, parse_range};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProblemFile {
    name: String,
    target: TargetEntry,
    pulses: Vec<PulseEntry>,
    #[serde(default)]
    grid: GridEntry,
    #[serde(default)]
    objective: ObjectiveEntry,
    max_evaluations: usize,
    #[serde(default = "default_starts")]
    starts: usize,
    #[serde(default)]
    seed: u64,
}

fn default_starts() -> usize {
    8
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct TargetEntry {
    axis: String,
    angle_deg: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PulseEntry {
    angle_deg: f64,
    phase_deg: f64,
    #[serde(default)]
    free_angle: bool,
    #[serde(default)]
    free_phase: bool,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GridEntry {
    eps: String,
    off: String,
}

impl Default for GridEntry {
    fn default() -> Self {
        GridEntry {
            eps: "0".into(),
            off: "0".into(),
        }
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum ObjectiveEntry {
    #[default]
    Mean,
    WorstCase,
}

pub fn load_problem(path: &Path) -> Result<DesignProblem> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    parse_problem(&text).map_err(|e| match e {
        CliError::Input(msg) => CliError::Input(format!("{}: {msg}", path.display())),
        other => other,
    })
}

pub fn parse_problem(text: &str) -> Result<DesignProblem> {
    let file: ProblemFile = serde_json::from_str(text)
        .map_err(|e| CliError::Input(format!("line {}, column {}: {e}", e.line(), e.column())))?;
    let input = CliError::Input;

    let (polar, azimuth) =
        parse_axis(&file.target.axis).ok_or_else(|| input(format!("target.axis: unknown axis `{}`", file.target.axis)))?;
    if !file.target.angle_deg.is_finite() {
        return Err(input("target.angle_deg: must be finite".into()));
    }
    let target = TargetRotation::new(polar, azimuth, file.target.angle_deg.to_radians());

    let mut initial = Vec::with_capacity(file.pulses.len());
    let mut free = Vec::with_capacity(file.pulses.len());
    for (j, p) in file.pulses.iter().enumerate() {
        let pulse = Pulse::from_degrees(p.angle_deg, p.phase_deg).map_err(|e| input(format!("pulses[{j}]: {e}")))?;
        initial.push(pulse);
        free.push(FreeMask {
            angle: p.free_angle,
            phase: p.free_phase,
        });
    }

    let range = |field: &str, text: &str| -> Result<LinearRange> {
        parse_range(text).map_err(|e| input(format!("grid.{field}: {e}")))
    };
    let grid = ErrorGrid::new(range("eps", &file.grid.eps)?, range("off", &file.grid.off)?);

    let problem = DesignProblem {
        name: file.name,
        initial,
        free,
        target,
        grid,
        objective: match file.objective {
            ObjectiveEntry::Mean => Objective::Mean,
            ObjectiveEntry::WorstCase => Objective::WorstCase,
        },
        max_evaluations: file.max_evaluations,
        starts: file.starts,
        seed: file.seed,
    };
    problem.validate()?;
    Ok(problem)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn parses_full_problem() {
        let p = parse_problem(
            r#"{"name": "r", "target": {"axis": "x", "angle_deg": 180},
                "pulses": [{"angle_deg": 90, "phase_deg": 0, "free_phase": true}],
                "grid": {"eps": "-0.2:0.2:21", "off": "0"},
                "objective": "worst-case", "max_evaluations": 10, "seed": 3}"#,
        )
        .unwrap();
        assert_eq!(p.target, TargetRotation::x(PI));
        assert_eq!(p.grid.len(), 21);
        assert_eq!(p.objective, Objective::WorstCase);
        assert_eq!(p.starts, 8);
        assert_eq!(p.free, vec![FreeMask::PHASE]);
    }

    #[test]
    fn rejects_frozen_problem() {
        let err = parse_problem(
            r#"{"name": "r", "target": {"axis": "x", "angle_deg": 180},
                "pulses": [{"angle_deg": 180, "phase_deg": 0}], "max_evaluations": 10}"#,
        )
        .unwrap_err();
        assert!(matches!(err, CliError::Input(ref m) if m.contains("no free parameters")), "{err}");
    }

    #[test]
    fn reports_bad_fields() {
        let err = parse_problem(
            r#"{"name": "r", "target": {"axis": "q", "angle_deg": 180},
                "pulses": [{"angle_deg": 180, "phase_deg": 0, "free_angle": true}], "max_evaluations": 10}"#,
        )
        .unwrap_err()
        .to_string();
        assert!(err.contains("target.axis"), "{err}");
        let err = parse_problem(
            r#"{"name": "r", "target": {"axis": "x", "angle_deg": 180}, "grid": {"eps": "1:0:2", "off": "0"},
                "pulses": [{"angle_deg": 180, "phase_deg": 0, "free_angle": true}], "max_evaluations": 10}"#,
        )
        .unwrap_err()
        .to_string();
        assert!(err.contains("grid.eps"), "{err}");
    }
}
