//! Minimal 2x2 complex matrix used for the spectral weight `V` and the
//! matrix-valued polynomials.

use std::ops::{Add, Mul, Sub};

use crate::scalar::{re, Cx, Real};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2<T: Real> {
    pub m: [[Cx<T>; 2]; 2],
}

impl<T: Real> Mat2<T> {
    pub fn new(a: Cx<T>, b: Cx<T>, c: Cx<T>, d: Cx<T>) -> Self {
        Self { m: [[a, b], [c, d]] }
    }

    pub fn real(a: T, b: T, c: T, d: T) -> Self {
        Self::new(re(a), re(b), re(c), re(d))
    }

    pub fn zero() -> Self {
        Self::real(T::zero(), T::zero(), T::zero(), T::zero())
    }

    pub fn identity() -> Self {
        Self::real(T::one(), T::zero(), T::zero(), T::one())
    }

    pub fn scalar(s: Cx<T>) -> Self {
        let z = re(T::zero());
        Self::new(s, z, z, s)
    }

    pub fn get(&self, i: usize, j: usize) -> Cx<T> {
        self.m[i][j]
    }

    pub fn transpose(&self) -> Self {
        Self::new(self.m[0][0], self.m[1][0], self.m[0][1], self.m[1][1])
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        self.transpose().conj()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.m[0][0].conj(), self.m[0][1].conj(), self.m[1][0].conj(), self.m[1][1].conj())
    }

    pub fn det(&self) -> Cx<T> {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn trace(&self) -> Cx<T> {
        self.m[0][0] + self.m[1][1]
    }

    /// Inverse, or `None` when `|det| <= guard`.
    pub fn inverse(&self, guard: T) -> Option<Self> {
        let d = self.det();
        if d.norm() <= guard {
            return None;
        }
        Some(Self::new(self.m[1][1] / d, -self.m[0][1] / d, -self.m[1][0] / d, self.m[0][0] / d))
    }

    pub fn scale(&self, s: Cx<T>) -> Self {
        Self::new(self.m[0][0] * s, self.m[0][1] * s, self.m[1][0] * s, self.m[1][1] * s)
    }

    pub fn apply(&self, v: [Cx<T>; 2]) -> [Cx<T>; 2] {
        [
            self.m[0][0] * v[0] + self.m[0][1] * v[1],
            self.m[1][0] * v[0] + self.m[1][1] * v[1],
        ]
    }

    /// Frobenius norm.
    pub fn norm(&self) -> T {
        self.m
            .iter()
            .flatten()
            .map(|z| z.norm_sqr())
            .fold(T::zero(), |a, b| a + b)
            .sqrt()
    }

    /// Eigenvalues of a Hermitian matrix, ascending.
    pub fn hermitian_eigenvalues(&self) -> [T; 2] {
        let a = self.m[0][0].re;
        let d = self.m[1][1].re;
        let b = self.m[0][1];
        let half = T::lit(0.5);
        let mean = (a + d) * half;
        let rad = (((a - d) * half).powi(2) + b.norm_sqr()).sqrt();
        [mean - rad, mean + rad]
    }
}

impl<T: Real> Add for Mat2<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(
            self.m[0][0] + o.m[0][0],
            self.m[0][1] + o.m[0][1],
            self.m[1][0] + o.m[1][0],
            self.m[1][1] + o.m[1][1],
        )
    }
}

impl<T: Real> Sub for Mat2<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(
            self.m[0][0] - o.m[0][0],
            self.m[0][1] - o.m[0][1],
            self.m[1][0] - o.m[1][0],
            self.m[1][1] - o.m[1][1],
        )
    }
}

impl<T: Real> Mul for Mat2<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let a = &self.m;
        let b = &o.m;
        Self::new(
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        )
    }
}
