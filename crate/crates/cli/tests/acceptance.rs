//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rotor_fidelity::pulse::deg;
use rotor_fidelity::*;
use rotorfid::PulseLibrary;

type Outcome = std::result::Result<String, String>;
type Criterion = (u32, &'static str, fn() -> Outcome);

const MC_TOL: f64 = 5e-3;
const MC_SAMPLES: usize = 100_000;
const MC_BUDGET: Duration = Duration::from_secs(10);
const QUADRATURE_TOL: f64 = 1e-9;
const EXACT_TOL: f64 = 1e-12;
const BRIDGE_TOL: f64 = 1e-10;
const ANGLE_TOL_DEG: f64 = 1e-4;
const OPTIMIZE_BUDGET: Duration = Duration::from_secs(60);

fn pairs(n: usize, seed: u64) -> Vec<(Unitary2, Unitary2)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| (Unitary2::random(&mut rng), Unitary2::random(&mut rng)))
        .collect()
}

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_rotorfid"))
}

fn run_cli(args: &[&str]) -> Outcome {
    let out = bin().args(args).output().map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!(
            "rotorfid {:?} exited with {:?}: {}",
            args,
            out.status.code(),
            String::from_utf8_lossy(&out.stderr)
        ));
    }
    Ok(String::from_utf8_lossy(&out.stdout).into_owned())
}

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

fn c1_monte_carlo_oracle() -> Outcome {
    let start = Instant::now();
    let worst = pairs(100, 1001)
        .par_iter()
        .enumerate()
        .map(|(i, (u, v))| {
            let mc = monte_carlo_fidelity(u, v, MC_SAMPLES, 7000 + i as u64).unwrap();
            (mc - rotor_fidelity(u, v).unwrap()).abs()
        })
        .reduce(|| 0.0, f64::max);
    let elapsed = start.elapsed();
    check(
        worst < MC_TOL && elapsed < MC_BUDGET,
        format!("max |mc - closed form| = {worst:.2e} (< {MC_TOL:e}), {:.2}s (< 10s)", elapsed.as_secs_f64()),
    )
}

fn c2_coefficient_table() -> Outcome {
    let mut worst = 0.0_f64;
    for i in ProductOperator::ALL {
        for j in ProductOperator::ALL {
            let analytic = coefficient_integral(i, j);
            let delta = |a: bool| if a { 1.0 } else { 0.0 };
            let table = delta(i == j) / 3.0 + 2.0 * delta(i == j && i == ProductOperator::I0) / 3.0;
            if analytic != table {
                return Err(format!("analytic table wrong at {i:?},{j:?}"));
            }
            worst = worst.max((coefficient_integral_quadrature(i, j, 100, 100) - table).abs());
        }
    }
    check(worst < QUADRATURE_TOL, format!("16 pairs, max quadrature error {worst:.2e} (< 1e-9)"))
}

fn c3_identity_term() -> Outcome {
    let mut worst = 0.0_f64;
    for (u, v) in pairs(100, 1003) {
        let t = overlap_term(&u, &v, ProductOperator::I0);
        worst = worst.max((t - 0.5).norm());
        let sum: f64 = Axis::ALL.iter().map(|a| overlap_term(&u, &v, a.operator()).re).sum();
        worst = worst.max((rotor_fidelity_unchecked(&u, &v) - sum / 3.0 - 0.5).abs());
    }
    check(worst < EXACT_TOL, format!("100 pairs, max |tr(U I0 U† V I0 V†) - 1/2| = {worst:.2e}"))
}

fn c4_averaging_identity() -> Outcome {
    let mut worst = 0.0_f64;
    for (u, v) in pairs(1000, 1004) {
        let f = rotor_fidelity(&u, &v).unwrap();
        let mean = Axis::ALL.iter().map(|&a| transfer_efficiency(&u, &v, a)).sum::<f64>() / 3.0;
        worst = worst.max((f - (0.5 + 0.5 * mean)).abs());
    }
    check(worst < EXACT_TOL, format!("1000 pairs, max residual {worst:.2e} (< 1e-12)"))
}

fn c5_quaternion_bridge() -> Outcome {
    let mut worst = 0.0_f64;
    for (u, v) in pairs(1000, 1005) {
        let f = rotor_fidelity(&u, &v).unwrap();
        let q = quaternion_fidelity(&u, &v);
        worst = worst.max((f - (1.0 + 2.0 * q * q) / 3.0).abs());
    }
    check(worst < BRIDGE_TOL, format!("1000 pairs, max residual {worst:.2e} (< 1e-10)"))
}

fn c6_range_and_extremes() -> Outcome {
    let min = (0..8u64)
        .into_par_iter()
        .map(|chunk| {
            pairs(125_000, 2000 + chunk)
                .iter()
                .map(|(u, v)| rotor_fidelity_unchecked(u, v))
                .fold(f64::INFINITY, f64::min)
        })
        .reduce(|| f64::INFINITY, f64::min);
    if min < 1.0 / 3.0 - EXACT_TOL {
        return Err(format!("min over 1e6 pairs {min} below 1/3"));
    }
    let z = rotor_fidelity(&Unitary2::identity(), &Unitary2::rz(PI)).unwrap();
    if (z - 1.0 / 3.0).abs() > EXACT_TOL {
        return Err(format!("f(I, Rz(pi)) = {z}"));
    }
    let mut cases = pairs(2000, 1006);
    let mut rng = ChaCha8Rng::seed_from_u64(1007);
    for k in 0..500 {
        let u = Unitary2::random(&mut rng);
        cases.push((u, u.with_global_phase(0.013 * k as f64)));
    }
    let mut ones = 0;
    for (u, v) in &cases {
        let is_one = (rotor_fidelity_unchecked(u, v) - 1.0).abs() < BRIDGE_TOL;
        let scalar = ((u.dagger() * *v).trace().norm() - 2.0).abs() < BRIDGE_TOL;
        if is_one != scalar {
            return Err("fidelity 1 without |tr(u†v)| = 2 or vice versa".into());
        }
        ones += usize::from(is_one);
    }
    check(
        ones == 500,
        format!("min over 1e6 pairs = {min:.15}, f(I,Rz(pi)) = {z:.15}, {ones}/2500 unit-fidelity pairs all scalar"),
    )
}

/// Net quaternion of ideal hard pulses, multiplied out by hand.
fn quaternion_oracle(pulses: &[(f64, f64)]) -> [f64; 4] {
    pulses.iter().fold([1.0, 0.0, 0.0, 0.0], |q, &(angle, phase)| {
        let (s, c) = (angle / 2.0).sin_cos();
        let p = [c, s * phase.cos(), s * phase.sin(), 0.0];
        [
            p[0] * q[0] - p[1] * q[1] - p[2] * q[2] - p[3] * q[3],
            p[0] * q[1] + p[1] * q[0] + p[2] * q[3] - p[3] * q[2],
            p[0] * q[2] - p[1] * q[3] + p[2] * q[0] + p[3] * q[1],
            p[0] * q[3] + p[1] * q[2] - p[2] * q[1] + p[3] * q[0],
        ]
    })
}

fn c7_composite_identity() -> Outcome {
    let lib = PulseLibrary::starter();
    let seq = lib.get("90x-180y-90x").map_err(|e| e.to_string())?;
    let v = sequence_propagator(seq, ErrorPoint::IDEAL);
    let f_y = rotor_fidelity(&TargetRotation::y(PI).propagator(), &v).unwrap();
    let f_x = rotor_fidelity(&TargetRotation::x(PI).propagator(), &v).unwrap();

    let q = quaternion_oracle(&[(FRAC_PI_2, 0.0), (PI, FRAC_PI_2), (FRAC_PI_2, 0.0)]);
    let oracle = |target: [f64; 4]| {
        let dot: f64 = q.iter().zip(target).map(|(a, b)| a * b).sum::<f64>().abs();
        // cos β = 2 cos²(β/2) - 1
        2.0 / 3.0 + (2.0 * dot * dot - 1.0) / 3.0
    };
    let oracle_y = oracle([0.0, 0.0, 1.0, 0.0]);
    let oracle_x = oracle([0.0, 1.0, 0.0, 0.0]);
    check(
        (f_y - 1.0).abs() < EXACT_TOL && (f_y - oracle_y).abs() < EXACT_TOL && (f_x - oracle_x).abs() < EXACT_TOL,
        format!("vs 180y: {f_y:.15}; vs 180x: {f_x:.15} (oracle {oracle_x:.15})"),
    )
}

fn c8_same_axis_sweep() -> Outcome {
    let seq = CompositeSequence::new("180x", vec![deg(180.0, 0.0)]).unwrap();
    let grid = ErrorGrid::new(LinearRange::new(-0.5, 0.5, 101).unwrap(), LinearRange::single(0.0).unwrap());
    let surface = sweep(&seq, &TargetRotation::x(PI), &grid).map_err(|e| e.to_string())?;
    let mut worst = 0.0_f64;
    for (e, r) in surface.iter() {
        let closed = 2.0 / 3.0 + (PI * e.pulse_length()).cos() / 3.0;
        worst = worst.max((r.fidelity - closed).abs());
    }
    if worst >= EXACT_TOL {
        return Err(format!("max node error {worst:.2e}"));
    }

    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut outputs = Vec::new();
    for run in 0..2 {
        let path = dir.path().join(format!("run{run}.csv"));
        run_cli(&[
            "sweep", "--sequence", "180x", "--target", "axis=x", "angle=180", "--eps", "-0.5:0.5:101", "--off",
            "0", "--output", path.to_str().unwrap(),
        ])?;
        outputs.push(fs::read(&path).map_err(|e| e.to_string())?);
    }
    let golden = fs::read(golden_dir().join("sweep_180x.csv")).map_err(|e| e.to_string())?;
    let rows = outputs[0].iter().filter(|&&b| b == b'\n').count() - 1;
    check(
        outputs[0] == outputs[1] && outputs[0] == golden && rows == 101,
        format!("max node error {worst:.2e}, {rows} rows, two runs and golden file byte-identical"),
    )
}

fn c9_optimizer() -> Outcome {
    let start = Instant::now();
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let problems = golden_dir().parent().unwrap().join("problems");

    let angle_file = dir.path().join("angle.json");
    run_cli(&[
        "optimize", "--problem", problems.join("single_angle.json").to_str().unwrap(), "--output",
        angle_file.to_str().unwrap(),
    ])?;
    let lib = PulseLibrary::load(&angle_file).map_err(|e| e.to_string())?;
    let angle_deg = lib.sequences()[0].pulses()[0].angle().to_degrees();
    if (angle_deg - 180.0).abs() >= ANGLE_TOL_DEG {
        return Err(format!("single free angle converged to {angle_deg} deg"));
    }

    let mut files = Vec::new();
    let mut summaries = Vec::new();
    for run in 0..2 {
        let path = dir.path().join(format!("phases{run}.json"));
        summaries.push(run_cli(&[
            "optimize", "--problem", problems.join("three_phases.json").to_str().unwrap(), "--output",
            path.to_str().unwrap(),
        ])?);
        files.push(fs::read(&path).map_err(|e| e.to_string())?);
    }
    let designed = PulseLibrary::load(&dir.path().join("phases0.json")).map_err(|e| e.to_string())?;
    let grid = ErrorGrid::new(LinearRange::new(-0.2, 0.2, 21).unwrap(), LinearRange::single(0.0).unwrap());
    let target = TargetRotation::x(PI);
    let simple = CompositeSequence::new("180x", vec![deg(180.0, 0.0)]).unwrap();
    let baseline = sweep(&simple, &target, &grid).unwrap().mean();
    let achieved = sweep(&designed.sequences()[0], &target, &grid).unwrap().mean();
    let elapsed = start.elapsed();
    check(
        achieved >= baseline && files[0] == files[1] && summaries[0] == summaries[1] && elapsed < OPTIMIZE_BUDGET,
        format!(
            "angle {angle_deg:.9} deg; three-phase mean {achieved:.12} vs 180x {baseline:.12}; repeat runs identical; {:.2}s",
            elapsed.as_secs_f64()
        ),
    )
}

fn main() {
    let criteria: [Criterion; 9] = [
        (1, "closed form vs Bloch-sphere Monte Carlo", c1_monte_carlo_oracle),
        (2, "coefficient integral table", c2_coefficient_table),
        (3, "identity-operator term is 1/2", c3_identity_term),
        (4, "transfer-efficiency averaging identity", c4_averaging_identity),
        (5, "quaternion bridge", c5_quaternion_bridge),
        (6, "range and extremes", c6_range_and_extremes),
        (7, "composite identity 90x-180y-90x", c7_composite_identity),
        (8, "same-axis sweep and golden CSV", c8_same_axis_sweep),
        (9, "optimizer sanity", c9_optimizer),
    ];
    let mut failed = 0;
    for (id, name, f) in criteria {
        match f() {
            Ok(detail) => println!("PASS criterion {id}: {name} | {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {id}: {name} | {detail}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
