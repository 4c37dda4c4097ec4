//! Independent numerical ground truth for the closed-form propagator:
//! fixed-step fourth-order integration of the first-order coefficient
//! system, plus direct moment evolution for coherent states.
//!
//! Nothing in this module looks at the closed-form expressions; agreement
//! between the two routes is what certifies them.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::linalg::{CMat4, CVec4};
use crate::model::{mode_index, ModelParams};
use crate::propagator::Propagator;
use crate::real::Real;

/// The 4x4 non-Hermitian generator of the coefficient system
/// i dW/dt = H W over the operator vector (a1, a2, a1+, a2+).
///
/// Pseudo-Hermitian: M H^dag M = H with M = diag(1, 1, -1, -1), exactly at
/// the floating-point level. Eigenvalues are {+-omega_plus, +-omega_minus}
/// whenever the matrix is diagonalizable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneratorMatrix<T> {
    pub h: CMat4<T>,
}

/// Builds the generator from the model parameters.
pub fn generator<T: Real>(p: &ModelParams<T>) -> GeneratorMatrix<T> {
    let c = p.couplings();
    let zero = T::zero();
    let re = |x: T| Complex::new(x, zero);
    let im = |x: T| Complex::new(zero, x);
    let mut h = CMat4::zeros();
    h.m[0][0] = re(p.omega1());
    h.m[0][1] = im(c.lambda_plus);
    h.m[0][3] = im(c.lambda_minus);
    h.m[1][0] = im(-c.lambda_plus);
    h.m[1][1] = re(p.omega2());
    h.m[1][2] = im(c.lambda_minus);
    h.m[2][1] = im(c.lambda_minus);
    h.m[2][2] = re(-p.omega1());
    h.m[2][3] = im(c.lambda_plus);
    h.m[3][0] = im(c.lambda_minus);
    h.m[3][2] = im(-c.lambda_plus);
    h.m[3][3] = re(-p.omega2());
    GeneratorMatrix { h }
}

/// Step size keeping the fourth-order global error below the closed-form
/// comparison tolerances at desk-scale times.
pub fn default_dt<T: Real>(p: &ModelParams<T>) -> T {
    let wp = p.spectrum().omega_plus_sq.sqrt();
    T::lit(1e-3).min(T::lit(0.01) / wp)
}

/// Integrates dW/dt = -i H W from W(0) = 1 with the classical fourth-order
/// scheme, n = ceil(|t|/dt) equal steps. Global error O(dt^4).
pub fn integrate_full<T: Real>(p: &ModelParams<T>, t: T, dt: T) -> Result<CMat4<T>> {
    if !(dt > T::zero()) || !dt.is_finite() {
        return Err(Error::StepSize(format!(
            "dt must be positive and finite, got {dt}"
        )));
    }
    let wp = p.spectrum().omega_plus_sq.sqrt();
    if dt * wp > T::lit(0.1) {
        return Err(Error::StepSize(format!(
            "dt * omega_plus = {} exceeds 0.1; the integrator would be inaccurate",
            dt * wp
        )));
    }
    let steps = (t.abs() / dt).ceil().to_usize().unwrap_or(1).max(1);
    let h = t / T::from_usize(steps).unwrap();

    let a = generator(p).h.scale(Complex::new(T::zero(), -T::one()));
    let half_h = Complex::new(h * T::lit(0.5), T::zero());
    let full_h = Complex::new(h, T::zero());
    let sixth_h = Complex::new(h / T::lit(6.0), T::zero());
    let two = Complex::new(T::lit(2.0), T::zero());

    let mut w = CMat4::identity();
    for _ in 0..steps {
        let k1 = a * w;
        let k2 = a * (w + k1.scale(half_h));
        let k3 = a * (w + k2.scale(half_h));
        let k4 = a * (w + k3.scale(full_h));
        w = w + (k1 + k2.scale(two) + k3.scale(two) + k4).scale(sixth_h);
    }
    Ok(w)
}

/// Integrated counterpart of the closed-form propagator: the top block row
/// of the full coefficient matrix is (U(t), V(t)).
pub fn integrate_propagator<T: Real>(p: &ModelParams<T>, t: T, dt: T) -> Result<Propagator<T>> {
    let full = integrate_full(p, t, dt)?;
    Ok(Propagator {
        t,
        u: full.block(0, 0),
        v: full.block(0, 1),
    })
}

/// First and symmetrized second moments of the operator vector
/// (a1, a2, a1+, a2+). mean[2] = conj(mean[0]) and mean[3] = conj(mean[1])
/// by construction, preserved by the evolution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentState<T> {
    pub mean: CVec4<T>,
    pub second: CMat4<T>,
}

impl<T: Real> MomentState<T> {
    /// Moments of the product coherent state |alpha1>|alpha2>.
    pub fn coherent(alpha1: Complex<T>, alpha2: Complex<T>) -> Self {
        let mean = CVec4 {
            v: [alpha1, alpha2, alpha1.conj(), alpha2.conj()],
        };
        // symmetrized <xi_i xi_j> = mu_i mu_j + K_ij/2 where K pairs each
        // mode with its conjugate
        let mut second = mean.outer(&mean);
        let half = Complex::new(T::lit(0.5), T::zero());
        for k in 0..2 {
            second.m[k][k + 2] = second.m[k][k + 2] + half;
            second.m[k + 2][k] = second.m[k + 2][k] + half;
        }
        Self { mean, second }
    }

    /// Covariance matrix: second moments minus the mean-field part. For a
    /// coherent input this is independent of (alpha1, alpha2).
    pub fn covariance(&self) -> CMat4<T> {
        self.second - self.mean.outer(&self.mean)
    }

    /// Occupation of mode j above the coherent background: the covariance
    /// entry for <a_j+ a_j> minus the vacuum half-quantum.
    pub fn covariance_occupation(&self, j: usize) -> Result<T> {
        let jj = mode_index(j)?;
        Ok(self.covariance().m[jj + 2][jj].re - T::lit(0.5))
    }

    /// Anomalous covariance <a_j^2> - <a_j>^2 of mode j.
    pub fn anomalous_covariance(&self, j: usize) -> Result<Complex<T>> {
        let jj = mode_index(j)?;
        Ok(self.covariance().m[jj][jj])
    }
}

/// Evolves the moments of a coherent state to time t with the integrated
/// coefficient matrix at the default step size: mean -> W mean, second ->
/// W second W^T (a transpose congruence, exact for Gaussian dynamics).
pub fn evolve_moments<T: Real>(
    p: &ModelParams<T>,
    alpha1: Complex<T>,
    alpha2: Complex<T>,
    t: T,
) -> Result<MomentState<T>> {
    let w = integrate_full(p, t, default_dt(p))?;
    let s0 = MomentState::coherent(alpha1, alpha2);
    Ok(MomentState {
        mean: w.mul_vec(&s0.mean),
        second: w * s0.second * w.transpose(),
    })
}
