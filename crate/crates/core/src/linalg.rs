//! Minimal fixed-size complex matrices for the propagator blocks and the
//! 4x4 coefficient system. Row-major public storage; only the handful of
//! operations the library actually uses.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;

use crate::real::Real;

/// 2x2 complex matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CMat2<T> {
    pub m: [[Complex<T>; 2]; 2],
}

/// 4x4 complex matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CMat4<T> {
    pub m: [[Complex<T>; 4]; 4],
}

/// Complex 4-vector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CVec4<T> {
    pub v: [Complex<T>; 4],
}

impl<T: Real> CMat2<T> {
    pub fn zeros() -> Self {
        Self {
            m: [[Complex::new(T::zero(), T::zero()); 2]; 2],
        }
    }

    pub fn identity() -> Self {
        let mut a = Self::zeros();
        a.m[0][0] = Complex::new(T::one(), T::zero());
        a.m[1][1] = Complex::new(T::one(), T::zero());
        a
    }

    pub fn scale(&self, z: Complex<T>) -> Self {
        let mut a = *self;
        for row in a.m.iter_mut() {
            for e in row.iter_mut() {
                *e = *e * z;
            }
        }
        a
    }

    pub fn transpose(&self) -> Self {
        let mut a = *self;
        a.m[0][1] = self.m[1][0];
        a.m[1][0] = self.m[0][1];
        a
    }

    pub fn conj(&self) -> Self {
        let mut a = *self;
        for row in a.m.iter_mut() {
            for e in row.iter_mut() {
                *e = e.conj();
            }
        }
        a
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        self.transpose().conj()
    }

    /// Largest elementwise modulus.
    pub fn max_abs(&self) -> T {
        let mut m = T::zero();
        for row in &self.m {
            for e in row {
                m = m.max(e.norm());
            }
        }
        m
    }
}

impl<T: Real> Mul for CMat2<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::zeros();
        for i in 0..2 {
            for j in 0..2 {
                let mut acc = Complex::new(T::zero(), T::zero());
                for k in 0..2 {
                    acc = acc + self.m[i][k] * rhs.m[k][j];
                }
                out.m[i][j] = acc;
            }
        }
        out
    }
}

impl<T: Real> Add for CMat2<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let mut out = self;
        for i in 0..2 {
            for j in 0..2 {
                out.m[i][j] = out.m[i][j] + rhs.m[i][j];
            }
        }
        out
    }
}

impl<T: Real> Sub for CMat2<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let mut out = self;
        for i in 0..2 {
            for j in 0..2 {
                out.m[i][j] = out.m[i][j] - rhs.m[i][j];
            }
        }
        out
    }
}

impl<T: Real> Neg for CMat2<T> {
    type Output = Self;
    fn neg(self) -> Self {
        let mut out = self;
        for i in 0..2 {
            for j in 0..2 {
                out.m[i][j] = -out.m[i][j];
            }
        }
        out
    }
}

impl<T: Real> CMat4<T> {
    pub fn zeros() -> Self {
        Self {
            m: [[Complex::new(T::zero(), T::zero()); 4]; 4],
        }
    }

    pub fn identity() -> Self {
        let mut a = Self::zeros();
        for i in 0..4 {
            a.m[i][i] = Complex::new(T::one(), T::zero());
        }
        a
    }

    /// Assembles [[a, b], [c, d]] from 2x2 blocks.
    pub fn from_blocks(a: &CMat2<T>, b: &CMat2<T>, c: &CMat2<T>, d: &CMat2<T>) -> Self {
        let mut out = Self::zeros();
        for i in 0..2 {
            for j in 0..2 {
                out.m[i][j] = a.m[i][j];
                out.m[i][j + 2] = b.m[i][j];
                out.m[i + 2][j] = c.m[i][j];
                out.m[i + 2][j + 2] = d.m[i][j];
            }
        }
        out
    }

    /// Extracts the 2x2 block at block-row `bi`, block-column `bj` (0 or 1).
    pub fn block(&self, bi: usize, bj: usize) -> CMat2<T> {
        let mut out = CMat2::zeros();
        for i in 0..2 {
            for j in 0..2 {
                out.m[i][j] = self.m[2 * bi + i][2 * bj + j];
            }
        }
        out
    }

    pub fn scale(&self, z: Complex<T>) -> Self {
        let mut a = *self;
        for row in a.m.iter_mut() {
            for e in row.iter_mut() {
                *e = *e * z;
            }
        }
        a
    }

    pub fn transpose(&self) -> Self {
        let mut a = Self::zeros();
        for i in 0..4 {
            for j in 0..4 {
                a.m[i][j] = self.m[j][i];
            }
        }
        a
    }

    pub fn conj(&self) -> Self {
        let mut a = *self;
        for row in a.m.iter_mut() {
            for e in row.iter_mut() {
                *e = e.conj();
            }
        }
        a
    }

    pub fn adjoint(&self) -> Self {
        self.transpose().conj()
    }

    pub fn mul_vec(&self, v: &CVec4<T>) -> CVec4<T> {
        let zero = Complex::new(T::zero(), T::zero());
        let mut out = CVec4 { v: [zero; 4] };
        for i in 0..4 {
            let mut acc = zero;
            for k in 0..4 {
                acc = acc + self.m[i][k] * v.v[k];
            }
            out.v[i] = acc;
        }
        out
    }

    pub fn max_abs(&self) -> T {
        let mut m = T::zero();
        for row in &self.m {
            for e in row {
                m = m.max(e.norm());
            }
        }
        m
    }

    /// Frobenius norm.
    pub fn fro_norm(&self) -> T {
        let mut acc = T::zero();
        for row in &self.m {
            for e in row {
                acc += e.norm_sqr();
            }
        }
        acc.sqrt()
    }
}

impl<T: Real> Mul for CMat4<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::zeros();
        for i in 0..4 {
            for j in 0..4 {
                let mut acc = Complex::new(T::zero(), T::zero());
                for k in 0..4 {
                    acc = acc + self.m[i][k] * rhs.m[k][j];
                }
                out.m[i][j] = acc;
            }
        }
        out
    }
}

impl<T: Real> Add for CMat4<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let mut out = self;
        for i in 0..4 {
            for j in 0..4 {
                out.m[i][j] = out.m[i][j] + rhs.m[i][j];
            }
        }
        out
    }
}

impl<T: Real> Sub for CMat4<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let mut out = self;
        for i in 0..4 {
            for j in 0..4 {
                out.m[i][j] = out.m[i][j] - rhs.m[i][j];
            }
        }
        out
    }
}

impl<T: Real> CVec4<T> {
    pub fn zeros() -> Self {
        Self {
            v: [Complex::new(T::zero(), T::zero()); 4],
        }
    }

    /// Outer product self * rhs^T (no conjugation).
    pub fn outer(&self, rhs: &Self) -> CMat4<T> {
        let mut out = CMat4::zeros();
        for i in 0..4 {
            for j in 0..4 {
                out.m[i][j] = self.v[i] * rhs.v[j];
            }
        }
        out
    }

    pub fn max_abs(&self) -> T {
        let mut m = T::zero();
        for e in &self.v {
            m = m.max(e.norm());
        }
        m
    }
}

impl<T: Real> Sub for CVec4<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let mut out = self;
        for i in 0..4 {
            out.v[i] = out.v[i] - rhs.v[i];
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn mat2_mul_identity() {
        let mut a = CMat2::zeros();
        a.m = [[c(1.0, 2.0), c(-0.5, 0.0)], [c(0.0, 1.0), c(3.0, -1.0)]];
        assert_eq!(a * CMat2::identity(), a);
        assert_eq!(CMat2::identity() * a, a);
    }

    #[test]
    fn mat2_adjoint_flips_and_conjugates() {
        let mut a = CMat2::zeros();
        a.m = [[c(1.0, 2.0), c(-0.5, 0.25)], [c(0.0, 1.0), c(3.0, -1.0)]];
        let ad = a.adjoint();
        assert_eq!(ad.m[0][1], c(0.0, -1.0));
        assert_eq!(ad.m[1][0], c(-0.5, -0.25));
        assert_eq!(ad.m[0][0], c(1.0, -2.0));
    }

    #[test]
    fn mat4_blocks_round_trip() {
        let mut b = CMat2::zeros();
        b.m = [[c(1.0, 0.0), c(2.0, 0.0)], [c(3.0, 0.0), c(4.0, 0.0)]];
        let full = CMat4::from_blocks(&CMat2::identity(), &b, &(-b), &CMat2::zeros());
        assert_eq!(full.block(0, 0), CMat2::identity());
        assert_eq!(full.block(0, 1), b);
        assert_eq!(full.block(1, 0), -b);
        assert_eq!(full.block(1, 1), CMat2::zeros());
    }

    #[test]
    fn mat4_mul_vec_matches_row_sums() {
        let mut a = CMat4::<f64>::identity();
        a.m[0][3] = c(0.0, 2.0);
        let mut v = CVec4::zeros();
        v.v = [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 1.0)];
        let w = a.mul_vec(&v);
        assert_eq!(w.v[0], c(-2.0, 0.0) + c(1.0, 0.0));
        assert_eq!(w.v[3], c(0.0, 1.0));
    }

    #[test]
    fn outer_product_layout() {
        let mut u = CVec4::zeros();
        u.v[1] = c(2.0, 0.0);
        let mut w = CVec4::zeros();
        w.v[3] = c(0.0, 1.0);
        let o = u.outer(&w);
        assert_eq!(o.m[1][3], c(0.0, 2.0));
        assert_eq!(o.m[3][1], c(0.0, 0.0));
    }

    #[test]
    fn fro_norm_of_identity_is_two() {
        assert!((CMat4::<f64>::identity().fro_norm() - 2.0).abs() < 1e-15);
    }
}
