//! Physical outputs computed from a propagator: occupations, anomalous
//! moments, quadrature squeezing ratios, the reduced-state symplectic
//! eigenvalue, entanglement entropy, and mean energy.
//!
//! Vacuum expectation values depend only on the V block, so they are the
//! same for every coherent input; the moment-level oracle checks that.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::model::{mode_index, ModelParams};
use crate::propagator::{cos_kernel, sinc_kernel, Propagator};
use crate::real::Real;

/// Product coherent state |alpha1>|alpha2> used as the initial condition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoherentInput<T> {
    pub alpha1: Complex<T>,
    pub alpha2: Complex<T>,
}

impl<T: Real> CoherentInput<T> {
    pub fn vacuum() -> Self {
        let zero = Complex::new(T::zero(), T::zero());
        Self {
            alpha1: zero,
            alpha2: zero,
        }
    }
}

/// Quadrature widths relative to their initial values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezingRatios<T> {
    pub rq1: T,
    pub rp1: T,
    pub rq2: T,
    pub rp2: T,
}

/// Shifted ratios Delta O = R_O - 1; negative means squeezed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShiftedRatios<T> {
    pub dq1: T,
    pub dp1: T,
    pub dq2: T,
    pub dp2: T,
}

/// Per-time record of every observable this module computes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ObservableSample<T> {
    pub t: T,
    pub n1: T,
    pub n2: T,
    pub a1sq: Complex<T>,
    pub a2sq: Complex<T>,
    pub rq1: T,
    pub rp1: T,
    pub rq2: T,
    pub rp2: T,
    pub f: T,
    pub s: T,
}

/// Mean occupation of mode j out of the vacuum: sum_k |V_jk(t)|^2.
pub fn vacuum_occupation<T: Real>(prop: &Propagator<T>, j: usize) -> Result<T> {
    let jj = mode_index(j)?;
    Ok(prop.v.m[jj][0].norm_sqr() + prop.v.m[jj][1].norm_sqr())
}

/// The same occupation through the expanded closed form, written directly
/// in terms of the kernels rather than the propagator entries. Used as a
/// second, independent route for cross-checking.
pub fn vacuum_occupation_direct<T: Real>(p: &ModelParams<T>, j: usize, t: T) -> Result<T> {
    let jj = mode_index(j)?;
    let s = p.spectrum();
    if s.delta == T::zero() {
        return Ok(T::zero());
    }
    let (w1, w2) = (p.omega1(), p.omega2());
    let wj = if jj == 0 { w1 } else { w2 };
    let one = T::one();
    let two = T::lit(2.0);
    let cp = cos_kernel(s.omega_plus_sq, t);
    let cm = cos_kernel(s.omega_minus_sq, t);
    let sp = sinc_kernel(s.omega_plus_sq, t);
    let sm = sinc_kernel(s.omega_minus_sq, t);
    let b = (w1 - w2) * (w1 - w2) / (two * s.delta);
    let re = (one + b) * sp + (one - b) * sm;
    let im = (w1 - w2) / s.delta * (cp - cm);
    let wsq = p.omega() * p.omega();
    let pref = wsq * (w1 - w2) * (w1 - w2) / (T::lit(16.0) * w1 * w2);
    let second = wsq * (w1 + w2) * (w1 + w2) * w1 * w2 / (wj * wj * s.delta * s.delta)
        * (sp - sm)
        * (sp - sm);
    Ok(pref * ((re * re + im * im) + second))
}

/// Vacuum anomalous moment <a_j^2(t)> = sum_k U_jk(t) V_jk(t).
pub fn anomalous_moment<T: Real>(prop: &Propagator<T>, j: usize) -> Result<Complex<T>> {
    let jj = mode_index(j)?;
    Ok(prop.u.m[jj][0] * prop.v.m[jj][0] + prop.u.m[jj][1] * prop.v.m[jj][1])
}

/// Quadrature ratios R_{Q_j/P_j} = sqrt(1 + 2[n_j +- Re <a_j^2>]).
/// The radicands are nonnegative analytically; a negative one beyond
/// roundoff signals a broken propagator and errors out.
pub fn squeezing_ratios<T: Real>(prop: &Propagator<T>) -> Result<SqueezingRatios<T>> {
    let mut out = [T::zero(); 4];
    for j in [1usize, 2] {
        let n = vacuum_occupation(prop, j)?;
        let a = anomalous_moment(prop, j)?;
        let two = T::lit(2.0);
        // 1 + 2(n - Re<a^2>) can cancel almost completely once the state
        // grows large, so the negative-value guard scales with the terms
        // being subtracted
        let noise = T::lit(1e-12) * (T::one() + two * (n + a.norm())).max(T::one());
        for (slot, sign) in [(0usize, T::one()), (1, -T::one())] {
            let radicand = T::one() + two * (n + sign * a.re);
            if radicand < -noise {
                return Err(Error::Inconsistent(format!(
                    "squeezing radicand {radicand} < 0 for mode {j}"
                )));
            }
            out[2 * (j - 1) + slot] = radicand.max(T::zero()).sqrt();
        }
    }
    Ok(SqueezingRatios {
        rq1: out[0],
        rp1: out[1],
        rq2: out[2],
        rp2: out[3],
    })
}

/// Delta O = R_O - 1 for each of the four ratios.
pub fn shifted_ratios<T: Real>(r: &SqueezingRatios<T>) -> ShiftedRatios<T> {
    let one = T::one();
    ShiftedRatios {
        dq1: r.rq1 - one,
        dp1: r.rp1 - one,
        dq2: r.rq2 - one,
        dp2: r.rp2 - one,
    }
}

fn symplectic_eigenvalue_for<T: Real>(prop: &Propagator<T>, j: usize) -> Result<(T, T)> {
    let n = vacuum_occupation(prop, j)?;
    let a = anomalous_moment(prop, j)?;
    let half = T::lit(0.5);
    let big = (n + half) * (n + half);
    let radicand = big - a.norm_sqr();
    // radicand >= 1/4 analytically, but the subtraction cancels down from
    // terms of size (n + 1/2)^2; only a shortfall beyond that roundoff
    // budget means the propagator violates the symplectic structure
    let noise = T::lit(1e-12) * big.max(T::one());
    if radicand < -noise {
        return Err(Error::Inconsistent(format!(
            "symplectic radicand {radicand} < 0 for mode {j}"
        )));
    }
    let f = radicand.max(T::zero()).sqrt() - half;
    if f < -noise {
        return Err(Error::Inconsistent(format!(
            "symplectic eigenvalue excess {f} below the pure-state floor"
        )));
    }
    Ok((f.max(T::zero()), big))
}

/// Excess f of the single-mode symplectic eigenvalue over its pure-state
/// value 1/2: f = sqrt((n_j + 1/2)^2 - |<a_j^2>|^2) - 1/2. The global state
/// stays pure, so both modes give the same value; computed for both and
/// cross-checked before returning the mode-1 value. The agreement budget
/// is 1e-10 widened by the condition number of the radicand subtraction,
/// which dominates the attainable precision once the occupations are large.
pub fn symplectic_eigenvalue<T: Real>(prop: &Propagator<T>) -> Result<T> {
    let (f1, big1) = symplectic_eigenvalue_for(prop, 1)?;
    let (f2, big2) = symplectic_eigenvalue_for(prop, 2)?;
    let half = T::lit(0.5);
    let cond = big1.max(big2) / (f1.max(f2) + half);
    let tol = T::lit(1e-10) * T::one().max(cond);
    if (f1 - f2).abs() > tol {
        return Err(Error::Inconsistent(format!(
            "symplectic eigenvalue differs between modes: {f1} vs {f2}"
        )));
    }
    Ok(f1)
}

/// Entanglement entropy in nats of either reduced mode,
/// S = (1+f) ln(1+f) - f ln f, with S(0) = 0 as the limit value.
pub fn entanglement_entropy<T: Real>(f: T) -> Result<T> {
    if f < T::zero() || !f.is_finite() {
        return Err(Error::Domain(format!(
            "symplectic excess must be finite and nonnegative, got {f}"
        )));
    }
    if f == T::zero() {
        return Ok(T::zero());
    }
    let one = T::one();
    Ok((one + f) * (one + f).ln() - f * f.ln())
}

/// Expectation of the (time-independent) Hamiltonian in the evolved state.
/// `prop` must have been built from `p`; the energy needs the frequencies
/// and couplings, which a bare propagator does not carry.
pub fn mean_energy<T: Real>(
    p: &ModelParams<T>,
    prop: &Propagator<T>,
    input: &CoherentInput<T>,
) -> T {
    let c = p.couplings();
    let alpha = [input.alpha1, input.alpha2];
    let mut m = [Complex::new(T::zero(), T::zero()); 2];
    for j in 0..2 {
        for k in 0..2 {
            m[j] = m[j] + prop.u.m[j][k] * alpha[k] + prop.v.m[j][k] * alpha[k].conj();
        }
    }
    let vrow = |j: usize| prop.v.m[j][0].norm_sqr() + prop.v.m[j][1].norm_sqr();
    let n1 = m[0].norm_sqr() + vrow(0);
    let n2 = m[1].norm_sqr() + vrow(1);
    // <a2+ a1> and <a1 a2> pick up both mean-field and vacuum parts
    let cross = m[1].conj() * m[0]
        + prop.v.m[1][0].conj() * prop.v.m[0][0]
        + prop.v.m[1][1].conj() * prop.v.m[0][1];
    let pair = m[0] * m[1]
        + prop.u.m[0][0] * prop.v.m[1][0]
        + prop.u.m[0][1] * prop.v.m[1][1];
    let half = T::lit(0.5);
    let two = T::lit(2.0);
    p.omega1() * (n1 + half) + p.omega2() * (n2 + half)
        + two * c.lambda_plus * cross.im
        + two * c.lambda_minus * pair.im
}

/// Every observable at a single time.
pub fn sample_at<T: Real>(p: &ModelParams<T>, t: T) -> Result<ObservableSample<T>> {
    let prop = Propagator::at(p, t);
    let ratios = squeezing_ratios(&prop)?;
    let f = symplectic_eigenvalue(&prop)?;
    Ok(ObservableSample {
        t,
        n1: vacuum_occupation(&prop, 1)?,
        n2: vacuum_occupation(&prop, 2)?,
        a1sq: anomalous_moment(&prop, 1)?,
        a2sq: anomalous_moment(&prop, 2)?,
        rq1: ratios.rq1,
        rp1: ratios.rp1,
        rq2: ratios.rq2,
        rp2: ratios.rp2,
        f,
        s: entanglement_entropy(f)?,
    })
}

/// Samples a sorted time grid. Rejects unsorted or non-finite grids.
pub fn sample_series<T: Real>(p: &ModelParams<T>, t_grid: &[T]) -> Result<Vec<ObservableSample<T>>> {
    for pair in t_grid.windows(2) {
        if !(pair[1] >= pair[0]) {
            return Err(Error::Domain(
                "time grid must be sorted ascending and finite".into(),
            ));
        }
    }
    if let Some(t) = t_grid.iter().find(|t| !t.is_finite()) {
        return Err(Error::Domain(format!("non-finite grid time {t}")));
    }
    t_grid.iter().map(|&t| sample_at(p, t)).collect()
}

/// Uniform grid of `n` points covering one slow period [0, 2 pi / omega_minus].
/// Needs a strictly stable spectrum (omega_minus^2 > 0).
pub fn default_figure_grid<T: Real>(p: &ModelParams<T>, n: usize) -> Result<Vec<T>> {
    let s = p.spectrum();
    if s.omega_minus_sq <= T::zero() {
        return Err(Error::NotApplicable(
            "figure grid needs omega_minus^2 > 0 (stable regime)".into(),
        ));
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let period = T::lit(2.0) * T::PI() / s.omega_minus_sq.sqrt();
    let denom = T::from_usize(n - 1).unwrap_or(T::one()).max(T::one());
    Ok((0..n)
        .map(|k| period * T::from_usize(k).unwrap() / denom)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use crate::linalg::CMat2;
    use proptest::prelude::*;

    fn p(w1: f64, w2: f64, w: f64) -> ModelParams<f64> {
        ModelParams::new(w1, w2, w).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn vacuum_occupation_reference_values() {
        let prop = Propagator::at(&p(1.0, 0.5, 0.49), 0.0);
        assert_eq!(vacuum_occupation(&prop, 1).unwrap(), 0.0);

        let prop = Propagator::at(&p(1.0, 0.5, 0.49), 1.0);
        assert_relative_eq!(
            vacuum_occupation(&prop, 1).unwrap(),
            0.023203136879641064,
            max_relative = 1e-13
        );
        assert_relative_eq!(
            vacuum_occupation(&prop, 2).unwrap(),
            0.023771161680268934,
            max_relative = 1e-13
        );
        assert!(matches!(vacuum_occupation(&prop, 0), Err(Error::InvalidMode(0))));
    }

    #[test]
    fn isotropic_occupation_is_exactly_zero() {
        let params = ModelParams::isotropic(0.8, 0.3).unwrap();
        for &t in &[0.5, 4.0, 20.0] {
            let prop = Propagator::at(&params, t);
            assert_eq!(vacuum_occupation(&prop, 1).unwrap(), 0.0);
            assert_eq!(anomalous_moment(&prop, 2).unwrap(), c(0.0, 0.0));
        }
    }

    #[test]
    fn lower_frequency_mode_heats_more() {
        let params = p(1.0, 0.5, 0.49);
        for k in 1..60 {
            let prop = Propagator::at(&params, k as f64 * 0.5);
            let n1 = vacuum_occupation(&prop, 1).unwrap();
            let n2 = vacuum_occupation(&prop, 2).unwrap();
            assert!(n2 >= n1, "t = {}: n1 = {n1}, n2 = {n2}", k as f64 * 0.5);
        }
    }

    #[test]
    fn occupation_routes_agree() {
        let params = p(1.0, 0.5, 0.49);
        for j in [1, 2] {
            for k in 0..40 {
                let t = k as f64 * 0.37;
                let via_blocks = vacuum_occupation(&Propagator::at(&params, t), j).unwrap();
                let direct = vacuum_occupation_direct(&params, j, t).unwrap();
                let scale = via_blocks.abs().max(1.0);
                assert!(
                    (via_blocks - direct).abs() <= 1e-12 * scale,
                    "t = {t}, j = {j}: {via_blocks} vs {direct}"
                );
            }
        }
    }

    #[test]
    fn anomalous_moment_reference_value() {
        let prop = Propagator::at(&p(1.0, 0.5, 0.49), 1.0);
        let a = anomalous_moment(&prop, 1).unwrap();
        assert_abs_diff_eq!(a.re, 0.030235428710574636, epsilon = 1e-14);
        assert_abs_diff_eq!(a.im, -0.06941991722408172, epsilon = 1e-14);
    }

    #[test]
    fn anomalous_moments_start_opposite_and_real() {
        // short times: <a_1^2> is real positive and <a_2^2> its negative
        let prop = Propagator::at(&p(1.0, 0.5, 0.49), 0.01);
        let a1 = anomalous_moment(&prop, 1).unwrap();
        let a2 = anomalous_moment(&prop, 2).unwrap();
        assert!(a1.re > 0.0);
        assert!(a1.im.abs() < 0.1 * a1.re);
        assert!((a1 + a2).norm() < 0.1 * a1.norm());
    }

    #[test]
    fn ratios_start_at_unity() {
        let r = squeezing_ratios(&Propagator::at(&p(1.0, 0.5, 0.49), 0.0)).unwrap();
        assert_eq!((r.rq1, r.rp1, r.rq2, r.rp2), (1.0, 1.0, 1.0, 1.0));
        let d = shifted_ratios(&r);
        assert_eq!((d.dq1, d.dp1, d.dq2, d.dp2), (0.0, 0.0, 0.0, 0.0));
    }

    #[test]
    fn shifted_ratios_are_plain_offsets() {
        let r = SqueezingRatios {
            rq1: 1.2,
            rp1: 0.9,
            rq2: 1.0,
            rp2: 2.5,
        };
        let d = shifted_ratios(&r);
        assert_abs_diff_eq!(d.dq1, 0.2, epsilon = 1e-15);
        assert_abs_diff_eq!(d.dp1, -0.1, epsilon = 1e-15);
        assert_eq!(d.dq2, 0.0);
        assert_abs_diff_eq!(d.dp2, 1.5, epsilon = 1e-15);
    }

    #[test]
    fn impossible_moments_are_rejected() {
        // hand-built blocks violating the symplectic structure: n - Re<a^2>
        // below -1/2 cannot come from a real propagator
        let mut u = CMat2::identity();
        u.m[0][0] = c(2.0, 0.0);
        let mut v = CMat2::zeros();
        v.m[0][0] = c(0.3, 0.0);
        let bogus = Propagator { t: 1.0, u, v };
        assert!(matches!(
            squeezing_ratios(&bogus),
            Err(Error::Inconsistent(_))
        ));
    }

    #[test]
    fn symplectic_eigenvalue_reference_values() {
        assert_eq!(
            symplectic_eigenvalue(&Propagator::at(&p(1.0, 0.5, 0.49), 0.0)).unwrap(),
            0.0
        );
        let f = symplectic_eigenvalue(&Propagator::at(&p(1.0, 0.5, 0.49), 1.0)).unwrap();
        assert_relative_eq!(f, 0.017695099826129157, max_relative = 1e-12);
        // isotropic dynamics generates no entanglement at any time
        let iso = ModelParams::isotropic(0.8, 0.3).unwrap();
        assert_eq!(symplectic_eigenvalue(&Propagator::at(&iso, 13.0)).unwrap(), 0.0);
    }

    #[test]
    fn entropy_examples() {
        assert_eq!(entanglement_entropy(0.0).unwrap(), 0.0);
        assert_relative_eq!(
            entanglement_entropy(1.0).unwrap(),
            2.0 * (2.0f64).ln(),
            max_relative = 1e-15
        );
        assert_relative_eq!(
            entanglement_entropy(0.5).unwrap(),
            0.9547712524422192,
            max_relative = 1e-15
        );
        assert!(entanglement_entropy(0.5).unwrap() < entanglement_entropy(1.0).unwrap());
        assert!(matches!(
            entanglement_entropy(-1e-3),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn mean_energy_reference_cases() {
        // free vacuum: zero-point energy only
        let params = p(1.0, 0.5, 0.0);
        let prop = Propagator::at(&params, 2.2);
        let e = mean_energy(&params, &prop, &CoherentInput::vacuum());
        assert_relative_eq!(e, 0.75, max_relative = 1e-14);

        // isotropic with one displaced mode: omega0 zero-point + omega0 |alpha|^2
        let iso = ModelParams::isotropic(0.8, 0.3).unwrap();
        let input = CoherentInput {
            alpha1: c(1.0, 0.0),
            alpha2: c(0.0, 0.0),
        };
        for &t in &[0.0, 1.7, 9.4] {
            let e = mean_energy(&iso, &Propagator::at(&iso, t), &input);
            assert_relative_eq!(e, 0.8 * 2.0, max_relative = 1e-12);
        }
    }

    #[test]
    fn mean_energy_is_conserved() {
        let input = CoherentInput {
            alpha1: c(0.6, -0.4),
            alpha2: c(-1.1, 0.2),
        };
        for params in [p(1.0, 0.5, 0.49), p(1.0, 0.5, 0.75), p(1.0, 0.5, 1.5)] {
            let e0 = mean_energy(&params, &Propagator::at(&params, 0.0), &input);
            let e1 = mean_energy(&params, &Propagator::at(&params, 17.3), &input);
            assert!(
                (e1 - e0).abs() <= 1e-9 * e0.abs().max(1.0),
                "energy drifted from {e0} to {e1}"
            );
        }
    }

    #[test]
    fn series_handles_edge_grids() {
        let params = p(1.0, 0.5, 0.49);
        assert!(sample_series(&params, &[]).unwrap().is_empty());
        let one = sample_series(&params, &[0.0]).unwrap();
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].rq1, 1.0);
        assert_eq!(one[0].f, 0.0);
        assert_eq!(one[0].s, 0.0);
        assert!(sample_series(&params, &[1.0, 0.5]).is_err());
        assert!(sample_series(&params, &[0.0, f64::NAN]).is_err());
    }

    fn figure_extrema(params: &ModelParams<f64>) -> (f64, f64, f64) {
        let grid = default_figure_grid(params, 2048).unwrap();
        let samples = sample_series(params, &grid).unwrap();
        let pick = |key: fn(&ObservableSample<f64>) -> f64, maximize: bool| -> f64 {
            let mut best = 0usize;
            for (i, s) in samples.iter().enumerate() {
                let better = if maximize {
                    key(s) > key(&samples[best])
                } else {
                    key(s) < key(&samples[best])
                };
                if better {
                    best = i;
                }
            }
            grid[best]
        };
        (
            pick(|s| s.s, true),
            pick(|s| s.rq1, false),
            pick(|s| s.rp2, false),
        )
    }

    #[test]
    fn squeezing_and_entanglement_oscillate_in_phase() {
        // The entanglement and the Q1/P2 squeezing depths all ride the
        // same slow envelope, but their fast ripples are offset by about
        // half a ripple spacing, so the sampled extremal times differ by
        // dozens of grid steps (measured: S peaks 3.6 time units away from
        // the deepest Q1 trough). The coincide-within-grid-resolution
        // claim recorded here fails honestly; the envelope-level statement
        // that does hold is squeezing_extrema_track_the_slow_crests below.
        let params = p(1.0, 0.5, 0.49);
        let grid = default_figure_grid(&params, 2048).unwrap();
        let step = grid[1] - grid[0];
        let (t_s, t_q1, t_p2) = figure_extrema(&params);
        assert!(
            (t_s - t_q1).abs() <= 2.0 * step && (t_s - t_p2).abs() <= 2.0 * step,
            "S peaks at t = {t_s}, deepest Q1 squeezing at {t_q1}, deepest P2 squeezing at {t_p2}"
        );
    }

    #[test]
    fn squeezing_extrema_track_the_slow_crests() {
        // the extremal times of S, R_Q1 and R_P2 each fall within two fast
        // ripple spacings of an odd multiple of pi/(2 w_minus)
        let params = p(1.0, 0.5, 0.49);
        let s = params.spectrum();
        let crest = std::f64::consts::FRAC_PI_2 / s.omega_minus_sq.sqrt();
        let ripple = std::f64::consts::PI / s.omega_plus_sq.sqrt();
        let (t_s, t_q1, t_p2) = figure_extrema(&params);
        for (label, t) in [("S", t_s), ("RQ1", t_q1), ("RP2", t_p2)] {
            let nearest = [1.0, 3.0]
                .iter()
                .map(|n| (t - n * crest).abs())
                .fold(f64::INFINITY, f64::min);
            assert!(
                nearest <= 2.0 * ripple,
                "{label} extremum at t = {t} sits {nearest} from the nearest crest"
            );
        }
    }

    #[test]
    fn figure_grid_spans_one_slow_period() {
        let params = p(1.0, 0.5, 0.49);
        let grid = default_figure_grid(&params, 2048).unwrap();
        assert_eq!(grid.len(), 2048);
        assert_eq!(grid[0], 0.0);
        let wm = params.spectrum().omega_minus_sq.sqrt();
        assert_relative_eq!(
            grid[2047],
            2.0 * std::f64::consts::PI / wm,
            max_relative = 1e-14
        );
        // unstable spectrum has no slow period to span
        assert!(matches!(
            default_figure_grid(&p(1.0, 0.5, 0.75), 16),
            Err(Error::NotApplicable(_))
        ));
    }

    proptest! {
        #[test]
        fn ratio_sum_rule_and_uncertainty_bound(
            w2 in 0.1f64..1.0,
            w in 0.0f64..2.0,
            t in 0.0f64..50.0,
        ) {
            let params = p(1.0, w2, w);
            let prop = Propagator::at(&params, t);
            let n1 = vacuum_occupation(&prop, 1).unwrap();
            let n2 = vacuum_occupation(&prop, 2).unwrap();
            let r = squeezing_ratios(&prop).unwrap();
            // the +-Re<a^2> parts cancel in the square sum
            let scale1 = (1.0 + 2.0 * n1).max(1.0);
            let scale2 = (1.0 + 2.0 * n2).max(1.0);
            prop_assert!(
                (r.rq1 * r.rq1 + r.rp1 * r.rp1 - 2.0 * (1.0 + 2.0 * n1)).abs()
                    <= 1e-10 * scale1
            );
            prop_assert!(
                (r.rq2 * r.rq2 + r.rp2 * r.rp2 - 2.0 * (1.0 + 2.0 * n2)).abs()
                    <= 1e-10 * scale2
            );
            // minimum-uncertainty initial state keeps R_Q R_P >= 1
            prop_assert!(r.rq1 * r.rp1 >= 1.0 - 1e-12);
            prop_assert!(r.rq2 * r.rp2 >= 1.0 - 1e-12);
        }

        #[test]
        fn occupations_and_entropy_stay_nonnegative(
            w2 in 0.1f64..1.0,
            w in 0.0f64..2.0,
            t in 0.0f64..50.0,
        ) {
            let sample = sample_at(&p(1.0, w2, w), t).unwrap();
            prop_assert!(sample.n1 >= 0.0);
            prop_assert!(sample.n2 >= 0.0);
            prop_assert!(sample.f >= 0.0);
            prop_assert!(sample.s >= 0.0);
        }
    }
}
