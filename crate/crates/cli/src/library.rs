//! Pulse library files.
//!
//! One JSON document:
//!
//! ```json
//! {"sequences": [{"name": "90x-180y-90x",
//!                 "pulses": [{"angle_deg": 90, "phase_deg": 0}, "180y", "90x"]}]}
//! ```
//!
//! A pulse is either an object in degrees or NMR shorthand: `90x`, `180-y`,
//! or `270(45)` with the phase in parentheses. Degrees are converted to
//! radians here and nowhere else.

use std::collections::HashSet;
use std::fs;
use std::path::Path;

use rotor_fidelity::{CompositeSequence, Pulse};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

/// The starter set shipped with the tool.
pub const STARTER_LIBRARY: &str = include_str!("../data/pulses.json");

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct LibraryFile {
    sequences: Vec<SequenceEntry>,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct SequenceEntry {
    name: String,
    pulses: Vec<PulseEntry>,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(untagged)]
enum PulseEntry {
    Degrees { angle_deg: f64, phase_deg: f64 },
    Shorthand(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct PulseLibrary {
    sequences: Vec<CompositeSequence>,
}

impl PulseLibrary {
    pub fn new(sequences: Vec<CompositeSequence>) -> Result<Self> {
        let mut seen = HashSet::new();
        for s in &sequences {
            if !seen.insert(s.name()) {
                return Err(CliError::Input(format!("duplicate sequence name `{}`", s.name())));
            }
        }
        Ok(PulseLibrary { sequences })
    }

    pub fn starter() -> Self {
        Self::parse(STARTER_LIBRARY).expect("bundled library is valid")
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| match e {
            CliError::Input(msg) => CliError::Input(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn parse(text: &str) -> Result<Self> {
        let file: LibraryFile = serde_json::from_str(text).map_err(|e| {
            CliError::Input(format!("line {}, column {}: {e}", e.line(), e.column()))
        })?;
        let mut sequences = Vec::with_capacity(file.sequences.len());
        for (i, entry) in file.sequences.into_iter().enumerate() {
            let field = format!("sequences[{i}] (`{}`)", entry.name);
            if entry.name.trim().is_empty() {
                return Err(CliError::Input(format!("sequences[{i}].name: must not be empty")));
            }
            let pulses = entry
                .pulses
                .iter()
                .enumerate()
                .map(|(j, p)| p.to_pulse().map_err(|msg| CliError::Input(format!("{field}.pulses[{j}]: {msg}"))))
                .collect::<Result<Vec<_>>>()?;
            let seq = CompositeSequence::new(entry.name, pulses)
                .map_err(|_| CliError::Input(format!("{field}.pulses: must not be empty")))?;
            sequences.push(seq);
        }
        Self::new(sequences)
    }

    pub fn to_json(&self) -> String {
        let file = LibraryFile {
            sequences: self
                .sequences
                .iter()
                .map(|s| SequenceEntry {
                    name: s.name().to_string(),
                    pulses: s
                        .pulses()
                        .iter()
                        .map(|p| PulseEntry::Degrees {
                            angle_deg: p.angle().to_degrees(),
                            phase_deg: p.phase().to_degrees(),
                        })
                        .collect(),
                })
                .collect(),
        };
        let mut text = serde_json::to_string_pretty(&file).expect("library serializes");
        text.push('\n');
        text
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_json())
            .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))
    }

    pub fn sequences(&self) -> &[CompositeSequence] {
        &self.sequences
    }

    pub fn names(&self) -> Vec<&str> {
        self.sequences.iter().map(|s| s.name()).collect()
    }

    pub fn get(&self, name: &str) -> Result<&CompositeSequence> {
        self.sequences.iter().find(|s| s.name() == name).ok_or_else(|| {
            CliError::Input(format!(
                "unknown sequence `{name}`; available: {}",
                self.names().join(", ")
            ))
        })
    }
}

impl PulseEntry {
    fn to_pulse(&self) -> std::result::Result<Pulse, String> {
        let (angle, phase) = match self {
            PulseEntry::Degrees { angle_deg, phase_deg } => (*angle_deg, *phase_deg),
            PulseEntry::Shorthand(s) => parse_shorthand(s)?,
        };
        if !angle.is_finite() || angle < 0.0 {
            return Err(format!("angle_deg must be finite and non-negative, got {angle}"));
        }
        if !phase.is_finite() {
            return Err(format!("phase_deg must be finite, got {phase}"));
        }
        Pulse::from_degrees(angle, phase).map_err(|e| e.to_string())
    }
}

/// `90x`, `180-y`, `270(45)` → (angle, phase) in degrees.
pub fn parse_shorthand(s: &str) -> std::result::Result<(f64, f64), String> {
    let s = s.trim();
    let bad = || format!("cannot read pulse `{s}`; expected e.g. 90x, 180-y or 270(45)");
    if let Some(open) = s.find('(') {
        let close = s.strip_suffix(')').ok_or_else(bad)?;
        let angle: f64 = s[..open].parse().map_err(|_| bad())?;
        let phase: f64 = close[open + 1..].parse().map_err(|_| bad())?;
        return Ok((angle, phase));
    }
    let split = s
        .find(|c: char| c.is_ascii_alphabetic() || (c == '-' && !s.starts_with('-')))
        .ok_or_else(bad)?;
    let angle: f64 = s[..split].parse().map_err(|_| bad())?;
    let phase = match &s[split..] {
        "x" => 0.0,
        "y" => 90.0,
        "-x" => 180.0,
        "-y" => 270.0,
        _ => return Err(bad()),
    };
    Ok((angle, phase))
}
