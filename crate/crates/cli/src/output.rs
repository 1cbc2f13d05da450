//! Text formats: sweep CSV, report blocks and JSON documents.

use std::fmt::Write as _;

use rotor_fidelity::{ErrorPoint, FidelityReport, FidelitySurface, TargetRotation};
use serde::Serialize;

pub const CSV_HEADER: &str = "sequence,eps_p,f_off,f_eq8,f_quat,eff_x,eff_y,eff_z";

/// Magnitudes below this are written as zero so rounding noise cannot leak
/// into the fixed-width digits.
const ZERO_FLOOR: f64 = 1e-12;

/// Plain decimal with 12 significant digits, locale-free, never negative zero.
pub fn sig12(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x.abs() < ZERO_FLOOR {
        return "0.00000000000".to_string();
    }
    // round to 12 significant digits first so the exponent accounts for carries
    let sci = format!("{:.11e}", x);
    let exp: i32 = sci[sci.find('e').expect("scientific format") + 1..]
        .parse()
        .expect("integer exponent");
    let decimals = (11 - exp).max(0) as usize;
    format!("{:.*}", decimals, x)
}

/// Quote a CSV field if it contains a separator, quote or line break.
fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn csv_row(sequence: &str, e: ErrorPoint, r: &FidelityReport) -> String {
    format!(
        "{},{},{},{},{},{},{},{}",
        csv_field(sequence),
        sig12(e.pulse_length()),
        sig12(e.off_resonance()),
        sig12(r.fidelity),
        sig12(r.quaternion),
        sig12(r.efficiency[0]),
        sig12(r.efficiency[1]),
        sig12(r.efficiency[2]),
    )
}

/// Header plus one row per node, row-major, `\n` line endings.
pub fn surface_csv(surface: &FidelitySurface) -> String {
    let mut out = String::with_capacity(96 * (surface.reports.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for (e, r) in surface.iter() {
        out.push_str(&csv_row(&surface.sequence, e, r));
        out.push('\n');
    }
    out
}

#[derive(Debug, Serialize)]
pub struct TargetDoc {
    pub axis_polar_deg: f64,
    pub axis_azimuth_deg: f64,
    pub angle_deg: f64,
}

impl From<&TargetRotation> for TargetDoc {
    fn from(t: &TargetRotation) -> Self {
        TargetDoc {
            axis_polar_deg: t.axis_polar.to_degrees(),
            axis_azimuth_deg: t.axis_azimuth.to_degrees(),
            angle_deg: t.angle.to_degrees(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ReportDoc {
    pub sequence: String,
    pub target: TargetDoc,
    pub eps_p: f64,
    pub f_off: f64,
    pub f_eq8: f64,
    pub f_quat: f64,
    pub eff_x: f64,
    pub eff_y: f64,
    pub eff_z: f64,
    pub f_mc: Option<f64>,
    pub mc_samples: Option<usize>,
    pub mc_seed: Option<u64>,
}

impl ReportDoc {
    pub fn new(sequence: &str, target: &TargetRotation, e: ErrorPoint, r: &FidelityReport) -> Self {
        ReportDoc {
            sequence: sequence.to_string(),
            target: target.into(),
            eps_p: e.pulse_length(),
            f_off: e.off_resonance(),
            f_eq8: r.fidelity,
            f_quat: r.quaternion,
            eff_x: r.efficiency[0],
            eff_y: r.efficiency[1],
            eff_z: r.efficiency[2],
            f_mc: r.monte_carlo.map(|m| m.value),
            mc_samples: r.monte_carlo.map(|m| m.samples),
            mc_seed: r.monte_carlo.map(|m| m.seed),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    /// `key = value` lines; fidelities with 12 decimals.
    pub fn to_block(&self) -> String {
        let mut out = String::new();
        let mut line = |k: &str, v: String| {
            let _ = writeln!(out, "{k} = {v}");
        };
        line("sequence", self.sequence.clone());
        line(
            "target",
            format!(
                "axis=({},{}) angle={}",
                self.target.axis_polar_deg, self.target.axis_azimuth_deg, self.target.angle_deg
            ),
        );
        line("eps_p", self.eps_p.to_string());
        line("f_off", self.f_off.to_string());
        line("f_eq8", fixed12(self.f_eq8));
        line("f_quat", fixed12(self.f_quat));
        line("eff_x", fixed12(self.eff_x));
        line("eff_y", fixed12(self.eff_y));
        line("eff_z", fixed12(self.eff_z));
        if let (Some(f), Some(n), Some(seed)) = (self.f_mc, self.mc_samples, self.mc_seed) {
            line("f_mc", fixed12(f));
            line("mc_samples", n.to_string());
            line("mc_seed", seed.to_string());
        }
        out
    }
}

fn fixed12(x: f64) -> String {
    let s = format!("{x:.12}");
    if s.starts_with('-') && s[1..].chars().all(|c| c == '0' || c == '.') {
        s[1..].to_string()
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(sig12(1.0), "1.00000000000");
        assert_eq!(sig12(0.9363389981249824), "0.936338998125");
        assert_eq!(sig12(-0.2), "-0.200000000000");
        assert_eq!(sig12(0.0), "0.00000000000");
        assert_eq!(sig12(-0.0), "0.00000000000");
        assert_eq!(sig12(-3e-17), "0.00000000000");
        assert_eq!(sig12(0.99999999999999), "1.00000000000");
        assert_eq!(sig12(12.5), "12.5000000000");
        assert_eq!(sig12(0.015), "0.0150000000000");
    }

    #[test]
    fn fixed_decimals() {
        assert_eq!(fixed12(1.0), "1.000000000000");
        assert_eq!(fixed12(-1e-15), "0.000000000000");
        assert_eq!(fixed12(-0.5), "-0.500000000000");
    }

    #[test]
    fn csv_quoting() {
        assert_eq!(csv_field("90x"), "90x");
        assert_eq!(csv_field("a,b"), "\"a,b\"");
        assert_eq!(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
    }
}
