//! Command-line value syntaxes: targets, grid ranges and error points.

use std::f64::consts::{FRAC_PI_2, PI};

use rotor_fidelity::{LinearRange, TargetRotation};

use crate::error::{CliError, Result};

/// `axis=<x|y|z|theta,phi> angle=<degrees>`; `theta,phi` are the polar and
/// azimuthal angles of the axis in degrees. Tokens may arrive split or joined.
pub fn parse_target(tokens: &[String]) -> Result<TargetRotation> {
    let joined = tokens.join(" ");
    let usage = |why: &str| {
        CliError::Usage(format!(
            "bad target `{joined}`: {why}; expected `axis=<x|y|z|theta,phi> angle=<degrees>`"
        ))
    };
    let mut axis = None;
    let mut angle = None;
    for token in joined.split_whitespace() {
        let (key, value) = token.split_once('=').ok_or_else(|| usage("missing `=`"))?;
        match key {
            "axis" => axis = Some(parse_axis(value).ok_or_else(|| usage("unknown axis"))?),
            "angle" => {
                let deg: f64 = value.parse().map_err(|_| usage("angle is not a number"))?;
                if !deg.is_finite() {
                    return Err(usage("angle must be finite"));
                }
                angle = Some(deg.to_radians());
            }
            _ => return Err(usage("unknown key")),
        }
    }
    let (polar, azimuth) = axis.ok_or_else(|| usage("axis missing"))?;
    let angle = angle.ok_or_else(|| usage("angle missing"))?;
    Ok(TargetRotation::new(polar, azimuth, angle))
}

/// Axis as (polar, azimuth) in radians.
pub fn parse_axis(value: &str) -> Option<(f64, f64)> {
    match value {
        "x" => Some((FRAC_PI_2, 0.0)),
        "y" => Some((FRAC_PI_2, FRAC_PI_2)),
        "z" => Some((0.0, 0.0)),
        "-x" => Some((FRAC_PI_2, PI)),
        "-y" => Some((FRAC_PI_2, 3.0 * FRAC_PI_2)),
        "-z" => Some((PI, 0.0)),
        _ => {
            let (theta, phi) = value.split_once(',')?;
            let theta: f64 = theta.trim().parse().ok()?;
            let phi: f64 = phi.trim().parse().ok()?;
            (theta.is_finite() && phi.is_finite()).then(|| (theta.to_radians(), phi.to_radians()))
        }
    }
}

/// `min:max:count`, or a single number meaning `v:v:1`.
pub fn parse_range(text: &str) -> Result<LinearRange> {
    let usage = |why: String| CliError::Usage(format!("bad range `{text}`: {why}; expected min:max:count"));
    let parts: Vec<&str> = text.split(':').collect();
    let range = match parts.as_slice() {
        [single] => {
            let v: f64 = single.trim().parse().map_err(|_| usage("not a number".into()))?;
            LinearRange::single(v)
        }
        [min, max, count] => {
            let min: f64 = min.trim().parse().map_err(|_| usage("min is not a number".into()))?;
            let max: f64 = max.trim().parse().map_err(|_| usage("max is not a number".into()))?;
            let count: usize = count.trim().parse().map_err(|_| usage("count is not a whole number".into()))?;
            LinearRange::new(min, max, count)
        }
        _ => return Err(usage("wrong number of fields".into())),
    };
    range.map_err(|e| usage(e.to_string()))
}

pub fn parse_number(flag: &str, text: &str) -> Result<f64> {
    text.trim()
        .parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| CliError::Usage(format!("{flag} expects a finite number, got `{text}`")))
}
