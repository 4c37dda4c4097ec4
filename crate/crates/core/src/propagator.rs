//! Closed-form Bogoliubov propagator blocks U(t), V(t).
//!
//! One code path covers every regime: the trigonometric factors enter only
//! through [`cos_kernel`] and [`sinc_kernel`], which continue analytically
//! to negative squared frequencies (oscillation turns into exponential
//! growth) and to the critical point omega_minus = 0 (sin x / x -> t).

use num_complex::Complex;

use crate::linalg::CMat2;
use crate::model::ModelParams;
use crate::real::Real;

/// Kernels switch to a truncated power series when |x * t^2| < this, to
/// avoid cancellation in sin(sqrt(x) t)/sqrt(x) near x = 0.
pub const SERIES_THRESHOLD: f64 = 1e-4;

/// cos(sqrt(x) t) for x > 0, continued to cosh(sqrt(-x) t) for x < 0.
/// Total function of (x, t); continuous in x at 0.
pub fn cos_kernel<T: Real>(x: T, t: T) -> T {
    let u = x * t * t;
    if u.abs() < T::lit(SERIES_THRESHOLD) {
        // power series in u = x t^2; eight terms put the truncation error
        // around u^8/16!, far below roundoff at the switch point
        let mut acc = T::one();
        let mut term = T::one();
        for k in 1..8 {
            let k = T::from_usize(k).unwrap();
            let two_k = T::lit(2.0) * k;
            term = term * -u / ((two_k - T::one()) * two_k);
            acc += term;
        }
        acc
    } else if x > T::zero() {
        (x.sqrt() * t).cos()
    } else {
        ((-x).sqrt() * t).cosh()
    }
}

/// sin(sqrt(x) t)/sqrt(x) for x > 0, continued to sinh(sqrt(-x) t)/sqrt(-x)
/// for x < 0 and to t at x = 0. Total function of (x, t).
pub fn sinc_kernel<T: Real>(x: T, t: T) -> T {
    let u = x * t * t;
    if u.abs() < T::lit(SERIES_THRESHOLD) {
        let mut acc = T::one();
        let mut term = T::one();
        for k in 1..8 {
            let k = T::from_usize(k).unwrap();
            let two_k = T::lit(2.0) * k;
            term = term * -u / (two_k * (two_k + T::one()));
            acc += term;
        }
        t * acc
    } else if x > T::zero() {
        (x.sqrt() * t).sin() / x.sqrt()
    } else {
        ((-x).sqrt() * t).sinh() / (-x).sqrt()
    }
}

/// The 2x2 blocks of the Bogoliubov transformation at a fixed time:
/// a_j(t) = sum_k U_jk(t) a_k(0) + V_jk(t) a_k(0)^dagger.
///
/// Structural identities (up to floating-point error):
/// U U^dag - V V^dag = 1, U V^T = V U^T, U(0) = 1, V(0) = 0,
/// and exactly by construction U_21 = -U_12, V_21 = conj(V_12).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Propagator<T> {
    pub t: T,
    pub u: CMat2<T>,
    pub v: CMat2<T>,
}

impl<T: Real> Propagator<T> {
    /// Evaluates the closed form at time `t`. Valid in every regime.
    pub fn at(p: &ModelParams<T>, t: T) -> Self {
        let zero = T::zero();
        let one = T::one();
        let half = T::lit(0.5);
        let two = T::lit(2.0);

        let s = p.spectrum();
        if s.delta == zero {
            // omega = 0 with omega1 = omega2: a bare phase on both modes
            let ph = Complex::from_polar(one, -p.omega1() * t);
            return Self {
                t,
                u: CMat2::identity().scale(ph),
                v: CMat2::zeros(),
            };
        }

        let c = p.couplings();
        let sf = p.shape_factors().expect("delta > 0 past the early return");
        let (w1, w2) = (p.omega1(), p.omega2());

        let cp = cos_kernel(s.omega_plus_sq, t);
        let cm = cos_kernel(s.omega_minus_sq, t);
        let sp = sinc_kernel(s.omega_plus_sq, t);
        let sm = sinc_kernel(s.omega_minus_sq, t);

        let mut u = CMat2::zeros();
        let mut v = CMat2::zeros();

        let gam = [sf.gamma1, sf.gamma2];
        let del = [sf.delta1, sf.delta2];
        let wj = [w1, w2];
        for j in 0..2 {
            let re = half * ((one + gam[j]) * cp + (one - gam[j]) * cm);
            let im = -half * wj[j] * ((one + del[j]) * sp + (one - del[j]) * sm);
            u.m[j][j] = Complex::new(re, im);
            let sign = if j == 0 { one } else { -one };
            let vim = sign * w1 * w2 * c.lambda_plus * c.lambda_minus / (wj[j] * s.delta)
                * (sp - sm);
            v.m[j][j] = Complex::new(zero, vim);
        }

        // off-diagonal entries: the sum combination goes with lambda_plus
        // in U, the difference combination with lambda_minus in V
        let sum_frac = (w1 + w2) * (w1 + w2) / (two * s.delta);
        let dif_frac = (w1 - w2) * (w1 - w2) / (two * s.delta);
        u.m[0][1] = Complex::new(
            half * c.lambda_plus * ((one + sum_frac) * sp + (one - sum_frac) * sm),
            c.lambda_plus * (w1 + w2) / (two * s.delta) * (cp - cm),
        );
        v.m[0][1] = Complex::new(
            half * c.lambda_minus * ((one + dif_frac) * sp + (one - dif_frac) * sm),
            c.lambda_minus * (w1 - w2) / (two * s.delta) * (cp - cm),
        );
        u.m[1][0] = -u.m[0][1];
        v.m[1][0] = v.m[0][1].conj();

        Self { t, u, v }
    }
}

/// Max elementwise deviation of the two commutation-preservation
/// identities; zero for the exact solution up to floating-point error.
pub fn symplectic_defect<T: Real>(prop: &Propagator<T>) -> T {
    let (u, v) = (prop.u, prop.v);
    let d1 = (u * u.adjoint() - v * v.adjoint() - CMat2::identity()).max_abs();
    let d2 = (u * v.transpose() - v * u.transpose()).max_abs();
    d1.max(d2)
}

/// Symplectic defect divided by the size of the products entering it.
/// In the unstable regime the matrix entries grow exponentially; only the
/// normalized defect stays meaningful there.
pub fn symplectic_defect_normalized<T: Real>(prop: &Propagator<T>) -> T {
    let (u, v) = (prop.u, prop.v);
    let uu = u * u.adjoint();
    let vv = v * v.adjoint();
    let d1 = (uu - vv - CMat2::identity()).max_abs();
    let d2 = (u * v.transpose() - v * u.transpose()).max_abs();
    let scale = T::one().max(uu.max_abs()).max(vv.max_abs());
    d1.max(d2) / scale
}

/// Residual of the squared eigenfrequencies in the quartic characteristic
/// polynomial x^2 - A x + B written in coupling form; returns the larger of
/// the two residuals |x^2 - A x + B| at x = omega_plus^2, omega_minus^2.
pub fn characteristic_residual<T: Real>(p: &ModelParams<T>) -> T {
    let c = p.couplings();
    let s = p.spectrum();
    let (w1, w2) = (p.omega1(), p.omega2());
    let two = T::lit(2.0);
    let a = w1 * w1 + w2 * w2
        + two * (c.lambda_plus * c.lambda_plus - c.lambda_minus * c.lambda_minus);
    let sum = c.lambda_plus + c.lambda_minus;
    let dif = c.lambda_plus - c.lambda_minus;
    let b = (sum * sum - w1 * w2) * (dif * dif - w1 * w2);
    let residual = |x: T| (x * x - a * x + b).abs();
    residual(s.omega_plus_sq).max(residual(s.omega_minus_sq))
}
