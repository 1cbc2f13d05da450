//! Spin-1/2 rotation algebra.
//!
//! Sign convention: a rotation by `angle` about the unit axis `n` is the
//! propagator `exp(-i * angle * (nx Ix + ny Iy + nz Iz))`, where `Ix, Iy, Iz`
//! are half the Pauli matrices. Every constructor, conversion and example in
//! this crate uses that convention.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Entrywise tolerance used when accepting a matrix as unitary or orthogonal.
pub const UNITARITY_TOL: f64 = 1e-12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// General complex 2×2 matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2(pub [[Complex64; 2]; 2]);

impl Mat2 {
    pub const fn new(m00: Complex64, m01: Complex64, m10: Complex64, m11: Complex64) -> Self {
        Mat2([[m00, m01], [m10, m11]])
    }

    pub const fn identity() -> Self {
        Mat2([[ONE, ZERO], [ZERO, ONE]])
    }

    pub const fn zero() -> Self {
        Mat2([[ZERO, ZERO], [ZERO, ZERO]])
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        let m = &self.0;
        Mat2([[m[0][0].conj(), m[1][0].conj()], [m[0][1].conj(), m[1][1].conj()]])
    }

    pub fn trace(&self) -> Complex64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn det(&self) -> Complex64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let m = &self.0;
        Mat2([[m[0][0] * s, m[0][1] * s], [m[1][0] * s, m[1][1] * s]])
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Mat2) -> f64 {
        let mut worst = 0.0_f64;
        for r in 0..2 {
            for c in 0..2 {
                worst = worst.max((self.0[r][c] - other.0[r][c]).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.max_abs_diff(&self.dagger()) <= tol
    }
}

impl Mul for Mat2 {
    type Output = Mat2;

    fn mul(self, rhs: Mat2) -> Mat2 {
        let a = &self.0;
        let b = &rhs.0;
        Mat2([
            [
                a[0][0] * b[0][0] + a[0][1] * b[1][0],
                a[0][0] * b[0][1] + a[0][1] * b[1][1],
            ],
            [
                a[1][0] * b[0][0] + a[1][1] * b[1][0],
                a[1][0] * b[0][1] + a[1][1] * b[1][1],
            ],
        ])
    }
}

impl Add for Mat2 {
    type Output = Mat2;

    fn add(self, rhs: Mat2) -> Mat2 {
        let a = &self.0;
        let b = &rhs.0;
        Mat2([
            [a[0][0] + b[0][0], a[0][1] + b[0][1]],
            [a[1][0] + b[1][0], a[1][1] + b[1][1]],
        ])
    }
}

impl Sub for Mat2 {
    type Output = Mat2;

    fn sub(self, rhs: Mat2) -> Mat2 {
        self + rhs.scale(-ONE)
    }
}

/// Cartesian direction of a transverse or longitudinal product operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub fn index(self) -> usize {
        match self {
            Axis::X => 0,
            Axis::Y => 1,
            Axis::Z => 2,
        }
    }

    pub fn operator(self) -> ProductOperator {
        match self {
            Axis::X => ProductOperator::Ix,
            Axis::Y => ProductOperator::Iy,
            Axis::Z => ProductOperator::Iz,
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::X => "x",
            Axis::Y => "y",
            Axis::Z => "z",
        })
    }
}

/// Single-spin product operator basis: `I0 = E/2` and `Ix, Iy, Iz = σ/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProductOperator {
    I0,
    Ix,
    Iy,
    Iz,
}

impl ProductOperator {
    pub const ALL: [ProductOperator; 4] = [
        ProductOperator::I0,
        ProductOperator::Ix,
        ProductOperator::Iy,
        ProductOperator::Iz,
    ];

    pub fn matrix(self) -> Mat2 {
        let h = Complex64::new(0.5, 0.0);
        let hi = Complex64::new(0.0, 0.5);
        match self {
            ProductOperator::I0 => Mat2::new(h, ZERO, ZERO, h),
            ProductOperator::Ix => Mat2::new(ZERO, h, h, ZERO),
            ProductOperator::Iy => Mat2::new(ZERO, -hi, hi, ZERO),
            ProductOperator::Iz => Mat2::new(h, ZERO, ZERO, -h),
        }
    }

    /// Index into a Bloch coefficient vector `(c0, cx, cy, cz)`.
    pub fn index(self) -> usize {
        match self {
            ProductOperator::I0 => 0,
            ProductOperator::Ix => 1,
            ProductOperator::Iy => 2,
            ProductOperator::Iz => 3,
        }
    }

    pub fn axis(self) -> Option<Axis> {
        match self {
            ProductOperator::I0 => None,
            ProductOperator::Ix => Some(Axis::X),
            ProductOperator::Iy => Some(Axis::Y),
            ProductOperator::Iz => Some(Axis::Z),
        }
    }
}

impl From<Axis> for ProductOperator {
    fn from(axis: Axis) -> Self {
        axis.operator()
    }
}

/// A 2×2 unitary propagator. Global phase is kept as given.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Unitary2(Mat2);

impl Unitary2 {
    /// Accepts `m` if `m·m†` matches the identity entrywise and `|det m| = 1`,
    /// both to [`UNITARITY_TOL`]. Nothing is renormalized.
    pub fn new(m: Mat2) -> Result<Self> {
        if m.0.iter().flatten().any(|z| !z.is_finite()) {
            return Err(Error::NotUnitary { deviation: f64::NAN });
        }
        let gram = m * m.dagger();
        let deviation = gram
            .max_abs_diff(&Mat2::identity())
            .max((m.det().norm() - 1.0).abs());
        if !deviation.is_finite() || deviation > UNITARITY_TOL {
            return Err(Error::NotUnitary { deviation });
        }
        Ok(Unitary2(m))
    }

    /// For products and exponentials whose unitarity holds by construction.
    pub(crate) fn from_raw(m: Mat2) -> Self {
        debug_assert!((m * m.dagger()).max_abs_diff(&Mat2::identity()) < 1e-9);
        Unitary2(m)
    }

    pub fn identity() -> Self {
        Unitary2(Mat2::identity())
    }

    pub fn rx(angle: f64) -> Self {
        rotation_about([1.0, 0.0, 0.0], angle)
    }

    pub fn ry(angle: f64) -> Self {
        rotation_about([0.0, 1.0, 0.0], angle)
    }

    pub fn rz(angle: f64) -> Self {
        rotation_about([0.0, 0.0, 1.0], angle)
    }

    /// Haar-random element of SU(2) multiplied by a uniformly random global phase.
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        loop {
            let v: [f64; 4] = [
                rng.sample(StandardNormal),
                rng.sample(StandardNormal),
                rng.sample(StandardNormal),
                rng.sample(StandardNormal),
            ];
            if let Ok(q) = Quaternion::new(v[0], v[1], v[2], v[3]) {
                let phase = rng.random::<f64>() * TAU;
                return q.to_unitary().with_global_phase(phase);
            }
        }
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.0
    }

    pub fn dagger(&self) -> Self {
        Unitary2(self.0.dagger())
    }

    pub fn trace(&self) -> Complex64 {
        self.0.trace()
    }

    pub fn det(&self) -> Complex64 {
        self.0.det()
    }

    /// `e^{i alpha} · self`.
    pub fn with_global_phase(&self, alpha: f64) -> Self {
        Unitary2(self.0.scale(Complex64::from_polar(1.0, alpha)))
    }

    /// `self · op · self†`.
    pub fn conjugate(&self, op: &Mat2) -> Mat2 {
        self.0 * *op * self.0.dagger()
    }

    /// Apply `self` first, then `next`.
    pub fn then(&self, next: &Unitary2) -> Self {
        compose(self, next)
    }

    /// Rotation angle in `[0, π]` of the SO(3) image.
    pub fn rotation_angle(&self) -> f64 {
        let q = to_quaternion(self);
        let v = (q.b() * q.b() + q.c() * q.c() + q.d() * q.d()).sqrt();
        2.0 * v.atan2(q.a())
    }

    pub fn to_quaternion(&self) -> Quaternion {
        to_quaternion(self)
    }

    pub fn to_rotation3(&self) -> Rotation3 {
        to_rotation3(self)
    }
}

impl Mul for Unitary2 {
    type Output = Unitary2;

    /// Plain matrix product; `a * b` applies `b` first.
    fn mul(self, rhs: Unitary2) -> Unitary2 {
        Unitary2(self.0 * rhs.0)
    }
}

/// Unit quaternion `(a, b, c, d)`; the rotation by `angle` about `n` is
/// `(cos(angle/2), sin(angle/2)·n)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Quaternion {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
}

impl Quaternion {
    /// Normalizes the input; a zero (or non-finite) norm is rejected.
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let norm = (a * a + b * b + c * c + d * d).sqrt();
        if !norm.is_finite() || norm == 0.0 {
            return Err(Error::ZeroQuaternion);
        }
        Ok(Quaternion {
            a: a / norm,
            b: b / norm,
            c: c / norm,
            d: d / norm,
        })
    }

    pub const fn identity() -> Self {
        Quaternion {
            a: 1.0,
            b: 0.0,
            c: 0.0,
            d: 0.0,
        }
    }

    /// `axis` need not be normalized; a zero axis yields the identity.
    pub fn from_axis_angle(axis: [f64; 3], angle: f64) -> Self {
        let n = (axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]).sqrt();
        if n == 0.0 {
            return Quaternion::identity();
        }
        let (s, c) = (0.5 * angle).sin_cos();
        Quaternion {
            a: c,
            b: s * axis[0] / n,
            c: s * axis[1] / n,
            d: s * axis[2] / n,
        }
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn d(&self) -> f64 {
        self.d
    }

    pub fn components(&self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn dot(&self, other: &Quaternion) -> f64 {
        self.a * other.a + self.b * other.b + self.c * other.c + self.d * other.d
    }

    pub fn conjugate(&self) -> Self {
        Quaternion {
            a: self.a,
            b: -self.b,
            c: -self.c,
            d: -self.d,
        }
    }

    /// Representative with `a > 0`; when `a == 0` the first nonzero vector
    /// component is made positive.
    pub fn canonical(&self) -> Self {
        let flip = if self.a != 0.0 {
            self.a < 0.0
        } else {
            [self.b, self.c, self.d]
                .into_iter()
                .find(|x| *x != 0.0)
                .is_some_and(|x| x < 0.0)
        };
        if flip {
            Quaternion {
                a: -self.a,
                b: -self.b,
                c: -self.c,
                d: -self.d,
            }
        } else {
            *self
        }
    }

    /// `cos(a/2)·E − i·sin(a/2)·(n·σ)` written in quaternion components.
    pub fn to_unitary(&self) -> Unitary2 {
        let (a, b, c, d) = (self.a, self.b, self.c, self.d);
        Unitary2::from_raw(Mat2::new(
            Complex64::new(a, -d),
            Complex64::new(-c, -b),
            Complex64::new(c, -b),
            Complex64::new(a, d),
        ))
    }
}

impl Mul for Quaternion {
    type Output = Quaternion;

    /// Hamilton product; `p * q` applies `q` first.
    fn mul(self, q: Quaternion) -> Quaternion {
        let p = self;
        Quaternion {
            a: p.a * q.a - p.b * q.b - p.c * q.c - p.d * q.d,
            b: p.a * q.b + p.b * q.a + p.c * q.d - p.d * q.c,
            c: p.a * q.c - p.b * q.d + p.c * q.a + p.d * q.b,
            d: p.a * q.d + p.b * q.c - p.c * q.b + p.d * q.a,
        }
    }
}

/// Real 3×3 rotation matrix acting on `(Ix, Iy, Iz)` coefficient vectors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rotation3([[f64; 3]; 3]);

impl Rotation3 {
    /// Accepts `m` if `mᵀm = E` entrywise and `det m = +1`, both to [`UNITARITY_TOL`].
    pub fn new(m: [[f64; 3]; 3]) -> Result<Self> {
        if m.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Error::NotRotation { deviation: f64::NAN });
        }
        let r = Rotation3(m);
        let gram = r.transpose() * r;
        let mut deviation = (r.det() - 1.0).abs();
        for (i, row) in gram.0.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                let expected = if i == j { 1.0 } else { 0.0 };
                deviation = deviation.max((v - expected).abs());
            }
        }
        if !deviation.is_finite() || deviation > UNITARITY_TOL {
            return Err(Error::NotRotation { deviation });
        }
        Ok(r)
    }

    pub const fn identity() -> Self {
        Rotation3([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]])
    }

    pub fn matrix(&self) -> &[[f64; 3]; 3] {
        &self.0
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.0[row][col]
    }

    pub fn transpose(&self) -> Self {
        let m = &self.0;
        Rotation3(std::array::from_fn(|i| std::array::from_fn(|j| m[j][i])))
    }

    pub fn trace(&self) -> f64 {
        self.0[0][0] + self.0[1][1] + self.0[2][2]
    }

    pub fn det(&self) -> f64 {
        let m = &self.0;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    /// Rotation angle in `[0, π]` from `tr R = 1 + 2 cos β`.
    pub fn angle(&self) -> f64 {
        ((self.trace() - 1.0) / 2.0).clamp(-1.0, 1.0).acos()
    }

    pub fn apply(&self, v: [f64; 3]) -> [f64; 3] {
        let m = &self.0;
        std::array::from_fn(|i| m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2])
    }

    pub fn max_abs_diff(&self, other: &Rotation3) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..3 {
            for j in 0..3 {
                worst = worst.max((self.0[i][j] - other.0[i][j]).abs());
            }
        }
        worst
    }
}

impl Mul for Rotation3 {
    type Output = Rotation3;

    fn mul(self, rhs: Rotation3) -> Rotation3 {
        let a = &self.0;
        let b = &rhs.0;
        Rotation3(std::array::from_fn(|i| {
            std::array::from_fn(|j| (0..3).map(|k| a[i][k] * b[k][j]).sum())
        }))
    }
}

/// Pure spin-1/2 state as a point on the Bloch sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochState {
    theta: f64,
    phi: f64,
}

impl BlochState {
    /// `theta` must lie in `[0, π]`; `phi` is reduced to `[0, 2π)`.
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&theta) || !phi.is_finite() {
            return Err(Error::InvalidPulse(format!(
                "Bloch angles out of range: theta={theta}, phi={phi}"
            )));
        }
        Ok(BlochState {
            theta,
            phi: reduce_angle(phi),
        })
    }

    /// From `cos θ ∈ [-1, 1]` directly; used by the uniform sampler.
    pub fn from_cos_theta(cos_theta: f64, phi: f64) -> Result<Self> {
        if !(-1.0..=1.0).contains(&cos_theta) {
            return Err(Error::InvalidPulse(format!("cos theta out of range: {cos_theta}")));
        }
        Self::new(cos_theta.acos(), phi)
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// `(c0, cx, cy, cz) = (1, sinθ cosφ, sinθ sinφ, cosθ)`.
    pub fn coefficients(&self) -> [f64; 4] {
        coefficients(self.theta, self.phi)
    }

    /// `Σ_j c_j I_j`.
    pub fn density_matrix(&self) -> Mat2 {
        let c = self.coefficients();
        ProductOperator::ALL
            .iter()
            .fold(Mat2::zero(), |acc, op| {
                acc + op.matrix().scale(Complex64::new(c[op.index()], 0.0))
            })
    }

    /// `(cos θ/2, e^{iφ} sin θ/2)`.
    pub fn ket(&self) -> [Complex64; 2] {
        let (s, c) = (0.5 * self.theta).sin_cos();
        [Complex64::new(c, 0.0), Complex64::from_polar(s, self.phi)]
    }
}

/// Bloch coefficient vector for arbitrary `(θ, φ)`; no range checks.
pub fn coefficients(theta: f64, phi: f64) -> [f64; 4] {
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    [1.0, st * cp, st * sp, ct]
}

pub(crate) fn reduce_angle(x: f64) -> f64 {
    let r = x.rem_euclid(TAU);
    // rem_euclid can round up to exactly TAU for tiny negative inputs
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Rotation by `angle` about the axis with polar angle `axis_polar` and
/// azimuth `axis_azimuth`.
pub fn rotation(axis_polar: f64, axis_azimuth: f64, angle: f64) -> Unitary2 {
    let (st, ct) = axis_polar.sin_cos();
    let (sp, cp) = axis_azimuth.sin_cos();
    rotation_about([st * cp, st * sp, ct], angle)
}

/// Rotation by `angle` about `axis` (normalized here; a zero axis gives the identity).
pub fn rotation_about(axis: [f64; 3], angle: f64) -> Unitary2 {
    Quaternion::from_axis_angle(axis, angle).to_unitary()
}

/// Time-ordered product: `first` acts first, so the matrix is `second · first`.
pub fn compose(first: &Unitary2, second: &Unitary2) -> Unitary2 {
    Unitary2::from_raw(second.0 * first.0)
}

/// Quaternion of the rotation performed by `u`, in the `a ≥ 0` hemisphere.
pub fn to_quaternion(u: &Unitary2) -> Quaternion {
    // strip the global phase: s = u / sqrt(det u) lies in SU(2)
    let root = u.det().sqrt();
    let s = u.0.scale(root.inv());
    let m = &s.0;
    let a = 0.5 * (m[0][0] + m[1][1]).re;
    let b = -0.5 * (m[0][1] + m[1][0]).im;
    let c = 0.5 * (m[1][0] - m[0][1]).re;
    let d = 0.5 * (m[1][1] - m[0][0]).im;
    Quaternion::new(a, b, c, d)
        .expect("unitary matrices map to nonzero quaternions")
        .canonical()
}

/// Adjoint action of `u`: column `j` holds the `(Ix, Iy, Iz)` coefficients
/// of `u·Ij·u†`.
pub fn to_rotation3(u: &Unitary2) -> Rotation3 {
    let q = to_quaternion(u);
    let (a, b, c, d) = (q.a, q.b, q.c, q.d);
    Rotation3([
        [
            a * a + b * b - c * c - d * d,
            2.0 * (b * c - a * d),
            2.0 * (b * d + a * c),
        ],
        [
            2.0 * (b * c + a * d),
            a * a - b * b + c * c - d * d,
            2.0 * (c * d - a * b),
        ],
        [
            2.0 * (b * d - a * c),
            2.0 * (c * d + a * b),
            a * a - b * b - c * c + d * d,
        ],
    ])
}
