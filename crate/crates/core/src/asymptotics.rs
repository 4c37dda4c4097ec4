//! Closed-form approximations to the vacuum observables in three limits:
//! near the lower instability threshold, at weak rotation, and at short
//! times. Each predictor is independent of the exact propagator path, so
//! comparing them quantifies where the limits hold.
//!
//! Applicability is advisory: every predictor evaluates for any parameters,
//! and `approximation_error` measures how good it actually is there.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::model::ModelParams;
use crate::observables::sample_series;
use crate::propagator::sinc_kernel;
use crate::real::Real;

/// Which limit a sample was computed in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ApproxRegime {
    NearInstability,
    WeakCoupling,
    ShortTime,
}

/// Approximate occupations and anomalous moments at one time.
///
/// NearInstability and ShortTime samples carry purely real anomalous
/// moments, with sign (-1)^j and (-1)^{j+1} respectively.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ApproxSample<T> {
    pub t: T,
    pub n1: T,
    pub n2: T,
    pub a1sq: Complex<T>,
    pub a2sq: Complex<T>,
    pub regime_tag: ApproxRegime,
}

fn zero_sample<T: Real>(t: T, regime_tag: ApproxRegime) -> ApproxSample<T> {
    let zero = Complex::new(T::zero(), T::zero());
    ApproxSample {
        t,
        n1: T::zero(),
        n2: T::zero(),
        a1sq: zero,
        a2sq: zero,
        regime_tag,
    }
}

/// Dominant slow-envelope terms near the lower stability edge. Both
/// occupations and anomalous moments ride the envelope sin^2(w_minus t) /
/// w_minus^2; the fast components at w_plus are dropped.
pub fn near_instability<T: Real>(p: &ModelParams<T>, t: T) -> ApproxSample<T> {
    let s = p.spectrum();
    if s.delta == T::zero() {
        return zero_sample(t, ApproxRegime::NearInstability);
    }
    let sf = p
        .shape_factors()
        .expect("shape factors exist whenever the splitting is nonzero");
    let (w1, w2) = (p.omega1(), p.omega2());
    let one = T::one();
    let two = T::lit(2.0);
    let sixteen = T::lit(16.0);
    let wsq = p.omega() * p.omega();
    let env = {
        let e = sinc_kernel(s.omega_minus_sq, t);
        e * e
    };
    let b = (w1 - w2) * (w1 - w2) / (two * s.delta);
    let bp = (w1 + w2) * (w1 + w2) / (two * s.delta);
    let n_pref = wsq * (w1 - w2) * (w1 - w2) / (sixteen * w1 * w2);
    let a_pref = wsq * (w1 * w1 - w2 * w2) / (sixteen * w1 * w2);
    let mut n = [T::zero(); 2];
    let mut a = [T::zero(); 2];
    for (jj, (wj, dj, sgn)) in [(w1, sf.delta1, -one), (w2, sf.delta2, one)]
        .into_iter()
        .enumerate()
    {
        let fast = wsq * (w1 + w2) * (w1 + w2) * w1 * w2 / (wj * wj * s.delta * s.delta);
        n[jj] = n_pref * ((one - b) * (one - b) + fast) * env;
        let bracket = two * w1 * w2 * (one - dj) / s.delta - (one - b) * (one - bp);
        a[jj] = sgn * a_pref * bracket * env;
    }
    ApproxSample {
        t,
        n1: n[0],
        n2: n[1],
        a1sq: Complex::new(a[0], T::zero()),
        a2sq: Complex::new(a[1], T::zero()),
        regime_tag: ApproxRegime::NearInstability,
    }
}

/// Leading order in the rotation rate. The occupations coincide between
/// the modes at this order; the anomalous moments keep their complex phase.
pub fn weak_coupling<T: Real>(p: &ModelParams<T>, t: T) -> ApproxSample<T> {
    let (w1, w2) = (p.omega1(), p.omega2());
    let half = T::lit(0.5);
    let two = T::lit(2.0);
    let wsq = p.omega() * p.omega();
    let sum_half = (w1 + w2) * half;
    let sin_sum = (sum_half * t).sin();
    let n = wsq * (w1 - w2) * (w1 - w2) / (w1 * w2 * (w1 + w2) * (w1 + w2)) * sin_sum * sin_sum;
    let u = (w1 - w2) * half;
    let term2 = sin_sum / (w1 + w2);
    let carrier = Complex::from_polar(T::one(), -sum_half * t);
    let mut a = [Complex::new(T::zero(), T::zero()); 2];
    for (jj, (wj, sgn)) in [(w1, T::one()), (w2, -T::one())].into_iter().enumerate() {
        let term1 = Complex::from_polar(half, -wj * t).scale(sinc_kernel(u * u, t));
        let pref = Complex::new(T::zero(), sgn * wsq * (w1 * w1 - w2 * w2) / (two * w1 * w2 * wj));
        a[jj] = pref * carrier * (term1 - Complex::new(term2, T::zero()));
    }
    ApproxSample {
        t,
        n1: n,
        n2: n,
        a1sq: a[0],
        a2sq: a[1],
        regime_tag: ApproxRegime::WeakCoupling,
    }
}

/// Quadratic-in-time growth out of the vacuum.
pub fn short_time<T: Real>(p: &ModelParams<T>, t: T) -> ApproxSample<T> {
    let (w1, w2) = (p.omega1(), p.omega2());
    let four = T::lit(4.0);
    let wsq = p.omega() * p.omega();
    let n = wsq * (w1 - w2) * (w1 - w2) * t * t / (four * w1 * w2);
    let a = wsq * (w1 * w1 - w2 * w2) * t * t / (four * w1 * w2);
    ApproxSample {
        t,
        n1: n,
        n2: n,
        a1sq: Complex::new(a, T::zero()),
        a2sq: Complex::new(-a, T::zero()),
        regime_tag: ApproxRegime::ShortTime,
    }
}

/// Dispatch by regime tag.
pub fn approx_at<T: Real>(p: &ModelParams<T>, t: T, regime_tag: ApproxRegime) -> ApproxSample<T> {
    match regime_tag {
        ApproxRegime::NearInstability => near_instability(p, t),
        ApproxRegime::WeakCoupling => weak_coupling(p, t),
        ApproxRegime::ShortTime => short_time(p, t),
    }
}

/// Worst deviation per quantity (n1, n2, a1sq, a2sq) over the grid, each
/// normalized by that quantity's peak exact magnitude on the same grid.
/// Normalizing pointwise would blow up at the nodes of sin^2 where the
/// exact value crosses zero, so the scale is global with floor 1e-12.
fn deviation_breakdown<T: Real>(
    p: &ModelParams<T>,
    t_grid: &[T],
    regime_tag: ApproxRegime,
) -> Result<[T; 4]> {
    if t_grid.is_empty() {
        return Err(Error::Domain(
            "approximation error needs a nonempty time grid".into(),
        ));
    }
    let exact = sample_series(p, t_grid)?;
    let mut dev = [T::zero(); 4];
    let mut scale = [T::zero(); 4];
    for sample in &exact {
        let approx = approx_at(p, sample.t, regime_tag);
        dev[0] = dev[0].max((sample.n1 - approx.n1).abs());
        dev[1] = dev[1].max((sample.n2 - approx.n2).abs());
        dev[2] = dev[2].max((sample.a1sq - approx.a1sq).norm());
        dev[3] = dev[3].max((sample.a2sq - approx.a2sq).norm());
        scale[0] = scale[0].max(sample.n1.abs());
        scale[1] = scale[1].max(sample.n2.abs());
        scale[2] = scale[2].max(sample.a1sq.norm());
        scale[3] = scale[3].max(sample.a2sq.norm());
    }
    let floor = T::lit(1e-12);
    let mut out = [T::zero(); 4];
    for q in 0..4 {
        out[q] = dev[q] / scale[q].max(floor);
    }
    Ok(out)
}

/// Maximum relative deviation between an approximation and the exact
/// observables over a time grid, taken over n1, n2, a1sq and a2sq.
pub fn approximation_error<T: Real>(
    p: &ModelParams<T>,
    t_grid: &[T],
    regime_tag: ApproxRegime,
) -> Result<T> {
    let devs = deviation_breakdown(p, t_grid, regime_tag)?;
    Ok(devs.into_iter().fold(T::zero(), T::max))
}
