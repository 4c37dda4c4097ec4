//! Physical parameters, derived couplings, eigenfrequencies, and dynamical
//! regime classification for two harmonic modes in a rotating frame.
//!
//! Conventions: hbar = m = 1, omega1 >= omega2 > 0, rotation frequency
//! omega >= 0. Mode 1 is the higher-frequency mode.

use crate::error::{Error, Result};
use crate::real::Real;

/// Default relative tolerance for classifying a point as sitting on a
/// regime boundary (omega == omega1 or omega == omega2). Relative to omega1.
pub const REGIME_BOUNDARY_TOL: f64 = 1e-12;

/// Maps the 1-based mode index convention (mode 1 is the higher-frequency
/// mode) to internal 0-based storage.
pub(crate) fn mode_index(j: usize) -> Result<usize> {
    match j {
        1 => Ok(0),
        2 => Ok(1),
        _ => Err(Error::InvalidMode(j)),
    }
}

/// Dynamical regime as a function of the rotation frequency.
///
/// `StableI`: 0 < omega < omega2. `StableII`: omega > omega1.
/// `Unstable`: omega2 < omega < omega1 (omega_minus^2 < 0).
/// `Critical`: omega on either boundary with omega1 != omega2.
/// `Landau`: omega = omega1 = omega2 (both boundaries at once).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    Free,
    StableI,
    StableII,
    Unstable,
    Critical,
    Landau,
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Regime::Free => "Free",
            Regime::StableI => "StableI",
            Regime::StableII => "StableII",
            Regime::Unstable => "Unstable",
            Regime::Critical => "Critical",
            Regime::Landau => "Landau",
        };
        f.write_str(s)
    }
}

/// The three physical frequencies defining the system.
///
/// Immutable after validation, so every downstream formula may assume
/// omega1 >= omega2 > 0 and omega >= 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams<T> {
    omega1: T,
    omega2: T,
    omega: T,
}

/// Rotation-induced couplings between the modes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Couplings<T> {
    pub lambda_plus: T,
    pub lambda_minus: T,
}

/// Squared eigenfrequencies and the discriminant-like quantity delta.
///
/// `omega_minus_sq` goes negative in the unstable regime; storing squares
/// keeps this layer free of complex arithmetic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Spectrum<T> {
    pub delta: T,
    pub omega_plus_sq: T,
    pub omega_minus_sq: T,
    pub regime: Regime,
    pub isotropic: bool,
}

/// Dimensionless per-mode factors entering the diagonal propagator blocks.
/// gamma1 = -gamma2; all finite whenever delta > 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeShapeFactors<T> {
    pub gamma1: T,
    pub gamma2: T,
    pub delta1: T,
    pub delta2: T,
}

impl<T: Real> ModelParams<T> {
    /// Validates and constructs. Rejects omega1 < omega2 instead of
    /// swapping, to keep the mode numbering convention explicit.
    pub fn new(omega1: T, omega2: T, omega: T) -> Result<Self> {
        if !omega1.is_finite() || !omega2.is_finite() || !omega.is_finite() {
            return Err(Error::InvalidParams("frequencies must be finite".into()));
        }
        if !(omega2 > T::zero()) {
            return Err(Error::InvalidParams(format!(
                "omega2 must be positive, got {omega2}"
            )));
        }
        if omega1 < omega2 {
            return Err(Error::InvalidParams(format!(
                "mode ordering requires omega1 >= omega2, got omega1 = {omega1}, omega2 = {omega2}"
            )));
        }
        if omega < T::zero() {
            return Err(Error::InvalidParams(format!(
                "rotation frequency must be nonnegative, got {omega}"
            )));
        }
        Ok(Self {
            omega1,
            omega2,
            omega,
        })
    }

    /// Equal trap frequencies (lambda_minus vanishes identically).
    pub fn isotropic(omega0: T, omega: T) -> Result<Self> {
        Self::new(omega0, omega0, omega)
    }

    /// Builds parameters for a charged particle in a uniform magnetic field
    /// plus an anisotropic quadratic trap: omega = q B / (2 m c),
    /// omega_j = sqrt(k_j / m + omega^2).
    pub fn from_magnetic_trap(charge: T, field: T, mass: T, light_speed: T, k1: T, k2: T) -> Result<Self> {
        if !(mass > T::zero()) || !mass.is_finite() {
            return Err(Error::InvalidParams(format!(
                "mass must be positive, got {mass}"
            )));
        }
        if !(light_speed > T::zero()) || !light_speed.is_finite() {
            return Err(Error::InvalidParams(format!(
                "light speed must be positive, got {light_speed}"
            )));
        }
        let omega = charge * field / (T::lit(2.0) * mass * light_speed);
        let w_sq = |k: T| -> Result<T> {
            let arg = k / mass + omega * omega;
            if arg > T::zero() {
                Ok(arg.sqrt())
            } else {
                Err(Error::InvalidParams(format!(
                    "trap constant {k} gives nonpositive squared frequency"
                )))
            }
        };
        Self::new(w_sq(k1)?, w_sq(k2)?, omega)
    }

    pub fn omega1(&self) -> T {
        self.omega1
    }

    pub fn omega2(&self) -> T {
        self.omega2
    }

    pub fn omega(&self) -> T {
        self.omega
    }

    /// Exact frequency equality, the isotropic special case.
    pub fn is_isotropic(&self) -> bool {
        self.omega1 == self.omega2
    }

    /// lambda_pm = omega (omega1 +- omega2) / (2 sqrt(omega1 omega2)).
    pub fn couplings(&self) -> Couplings<T> {
        let root = (self.omega1 * self.omega2).sqrt();
        let two = T::lit(2.0);
        Couplings {
            lambda_plus: self.omega * (self.omega1 + self.omega2) / (two * root),
            lambda_minus: self.omega * (self.omega1 - self.omega2) / (two * root),
        }
    }

    /// Eigenfrequency data with the default boundary tolerance.
    pub fn spectrum(&self) -> Spectrum<T> {
        self.spectrum_with_tol(T::lit(REGIME_BOUNDARY_TOL))
    }

    /// Eigenfrequency data, classifying boundary regimes (Critical, Landau)
    /// when |omega - omega_j| <= eps_rel * omega1.
    pub fn spectrum_with_tol(&self, eps_rel: T) -> Spectrum<T> {
        let w1sq = self.omega1 * self.omega1;
        let w2sq = self.omega2 * self.omega2;
        let sum_sq = w1sq + w2sq;
        let diff_sq = w1sq - w2sq;
        let wsq = self.omega * self.omega;
        let delta =
            (diff_sq * diff_sq / T::lit(4.0) + T::lit(2.0) * wsq * sum_sq).sqrt();
        let center = wsq + sum_sq / T::lit(2.0);
        Spectrum {
            delta,
            omega_plus_sq: center + delta,
            omega_minus_sq: center - delta,
            regime: self.classify(eps_rel),
            isotropic: self.is_isotropic(),
        }
    }

    fn classify(&self, eps_rel: T) -> Regime {
        if self.omega == T::zero() {
            return Regime::Free;
        }
        let tol = eps_rel * self.omega1;
        let near1 = (self.omega - self.omega1).abs() <= tol;
        let near2 = (self.omega - self.omega2).abs() <= tol;
        match (near1, near2) {
            (true, true) => Regime::Landau,
            (true, false) | (false, true) => Regime::Critical,
            (false, false) => {
                if self.omega < self.omega2 {
                    Regime::StableI
                } else if self.omega > self.omega1 {
                    Regime::StableII
                } else {
                    Regime::Unstable
                }
            }
        }
    }

    /// Per-mode shape factors gamma_j, delta_j. Undefined (error) when
    /// delta = 0, i.e. omega = 0 with omega1 = omega2.
    pub fn shape_factors(&self) -> Result<ModeShapeFactors<T>> {
        let s = self.spectrum();
        if s.delta == T::zero() {
            return Err(Error::DegenerateSpectrum);
        }
        let w1sq = self.omega1 * self.omega1;
        let w2sq = self.omega2 * self.omega2;
        let sum_sq = w1sq + w2sq;
        let wsq = self.omega * self.omega;
        let two = T::lit(2.0);
        let gamma1 = (w1sq - w2sq) / (two * s.delta);
        let gamma2 = -gamma1;
        let dj = |gamma: T, wjsq: T| gamma + wsq * (two * wjsq + sum_sq) / (two * s.delta * wjsq);
        Ok(ModeShapeFactors {
            gamma1,
            gamma2,
            delta1: dj(gamma1, w1sq),
            delta2: dj(gamma2, w2sq),
        })
    }
}
