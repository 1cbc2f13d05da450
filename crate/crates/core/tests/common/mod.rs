//! Reference computations that share no code path with the library's
//! rotation constructors or fidelity formula.

#![allow(dead_code)]

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rotor_fidelity::{Mat2, Unitary2};

pub type M = [[Complex64; 2]; 2];

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn mul(a: &M, b: &M) -> M {
    let mut out = [[c(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

/// `exp(-i t (hx Ix + hy Iy + hz Iz))` by scaling and squaring of the Taylor series.
pub fn expm_spin(h: [f64; 3], t: f64) -> M {
    let half = 0.5;
    // A = -i t H
    let hm: M = [
        [c(half * h[2], 0.0), c(half * h[0], -half * h[1])],
        [c(half * h[0], half * h[1]), c(-half * h[2], 0.0)],
    ];
    let a: M = std::array::from_fn(|i| std::array::from_fn(|j| hm[i][j] * c(0.0, -t)));
    let norm = a.iter().flatten().map(|z| z.norm()).sum::<f64>();
    let squarings = (norm.max(1.0).log2().ceil() as u32) + 4;
    let scale = 0.5_f64.powi(squarings as i32);
    let a: M = std::array::from_fn(|i| std::array::from_fn(|j| a[i][j] * scale));

    let mut result: M = [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(1.0, 0.0)]];
    let mut term = result;
    for k in 1..30 {
        term = mul(&term, &a);
        term = std::array::from_fn(|i| std::array::from_fn(|j| term[i][j] / k as f64));
        for i in 0..2 {
            for j in 0..2 {
                result[i][j] += term[i][j];
            }
        }
    }
    for _ in 0..squarings {
        result = mul(&result, &result);
    }
    result
}

pub fn max_diff(a: &M, b: &Mat2) -> f64 {
    let mut worst = 0.0_f64;
    for i in 0..2 {
        for j in 0..2 {
            worst = worst.max((a[i][j] - b.0[i][j]).norm());
        }
    }
    worst
}

/// Smallest entrywise distance between `a` and `b` over the global phases
/// that make the largest entries agree.
pub fn max_diff_up_to_phase(a: &M, b: &Mat2) -> f64 {
    let (mut bi, mut bj) = (0, 0);
    for i in 0..2 {
        for j in 0..2 {
            if b.0[i][j].norm() > b.0[bi][bj].norm() {
                (bi, bj) = (i, j);
            }
        }
    }
    let phase = a[bi][bj] / b.0[bi][bj];
    let phase = phase / phase.norm();
    let mut worst = 0.0_f64;
    for i in 0..2 {
        for j in 0..2 {
            worst = worst.max((a[i][j] - b.0[i][j] * phase).norm());
        }
    }
    worst
}

/// Plain quaternion `[w, x, y, z]` arithmetic.
pub type Q = [f64; 4];

pub fn q_axis_angle(axis: [f64; 3], angle: f64) -> Q {
    let n = (axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]).sqrt();
    let s = (angle / 2.0).sin() / n;
    [(angle / 2.0).cos(), s * axis[0], s * axis[1], s * axis[2]]
}

/// Hamilton product `p q` (apply `q` first).
pub fn q_mul(p: Q, q: Q) -> Q {
    [
        p[0] * q[0] - p[1] * q[1] - p[2] * q[2] - p[3] * q[3],
        p[0] * q[1] + p[1] * q[0] + p[2] * q[3] - p[3] * q[2],
        p[0] * q[2] - p[1] * q[3] + p[2] * q[0] + p[3] * q[1],
        p[0] * q[3] + p[1] * q[2] - p[2] * q[1] + p[3] * q[0],
    ]
}

/// Net quaternion of hard pulses `(angle, phase)` applied in order, no errors.
pub fn q_sequence(pulses: &[(f64, f64)]) -> Q {
    pulses.iter().fold([1.0, 0.0, 0.0, 0.0], |acc, &(angle, phase)| {
        q_mul(q_axis_angle([phase.cos(), phase.sin(), 0.0], angle), acc)
    })
}

pub fn q_dot(p: Q, q: Q) -> f64 {
    p.iter().zip(q).map(|(a, b)| a * b).sum()
}

/// Rotor fidelity from the angle of the relative rotation, `2/3 + cos β / 3`,
/// with `cos(β/2) = |p·q|`.
pub fn fidelity_from_quaternions(p: Q, q: Q) -> f64 {
    let half = q_dot(p, q).abs().min(1.0).acos();
    2.0 / 3.0 + (2.0 * half).cos() / 3.0
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_pairs(n: usize, seed: u64) -> Vec<(Unitary2, Unitary2)> {
    let mut r = rng(seed);
    (0..n)
        .map(|_| (Unitary2::random(&mut r), Unitary2::random(&mut r)))
        .collect()
}

/// `R[k][j] = 2 Re tr(Ik · u Ij u†)` by explicit conjugation.
pub fn adjoint_by_conjugation(u: &Unitary2) -> [[f64; 3]; 3] {
    use rotor_fidelity::Axis;
    let mut r = [[0.0; 3]; 3];
    for j in Axis::ALL {
        let moved = u.conjugate(&j.operator().matrix());
        for k in Axis::ALL {
            r[k.index()][j.index()] = 2.0 * (k.operator().matrix() * moved).trace().re;
        }
    }
    r
}
