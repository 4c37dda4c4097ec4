//! Canonical transformation to decoupled quadratic form: the coefficients
//! (alpha_j, beta_j) of the transformed Hamiltonian, the normal-mode
//! frequencies they imply, and the energetic character of the spectrum in
//! the two dynamically stable sectors.

use crate::error::{Error, Result};
use crate::model::{ModelParams, Regime};
use crate::real::Real;

/// Coefficients of the decoupled form
/// H = sum_j (beta_j Q_j^2 + alpha_j P_j^2) / 2 after the canonical
/// transformation, plus the normal-mode frequencies sqrt(alpha_j beta_j).
///
/// In the first stable sector all four coefficients are positive. In the
/// second both j=2 coefficients turn negative together (their product,
/// hence the frequency, stays positive). In the unstable window alpha_2 > 0
/// while beta_2 < 0, the product is negative, and no second frequency
/// exists; `omega_nm_minus` is None there.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalModeDecomposition<T> {
    pub gamma: T,
    pub eta: T,
    pub alpha1: T,
    pub alpha2: T,
    pub beta1: T,
    pub beta2: T,
    pub omega_nm_plus: T,
    pub omega_nm_minus: Option<T>,
}

/// Energetic character of the Hamiltonian where the dynamics is stable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnergeticSignature {
    /// Both normal-mode excitations carry positive energy.
    PositiveDefinite,
    /// Dynamically stable, but one branch contributes negative energy.
    IndefiniteStable,
    /// Reserved for completeness; the unstable window has no normal
    /// representation here and the signature operation errors instead.
    Unstable,
}

/// Decoupling transformation coefficients. Needs a finite rotation rate:
/// gamma carries a 1/omega and the zero-rotation system is already
/// decoupled, so omega = 0 is an error rather than a limit.
pub fn decompose<T: Real>(p: &ModelParams<T>) -> Result<NormalModeDecomposition<T>> {
    let w = p.omega();
    if w == T::zero() {
        return Err(Error::DegenerateTransformation);
    }
    let (w1, w2) = (p.omega1(), p.omega2());
    let s = p.spectrum();
    let two = T::lit(2.0);
    let four = T::lit(4.0);
    let gamma = (two * s.delta - w1 * w1 + w2 * w2) / (four * w);
    let eta = two * gamma / (w1 * w1 + w2 * w2);
    let alpha1 = T::one() - (w / s.delta) * (gamma - w);
    let beta1 = (s.delta / w) * (gamma + w);
    let alpha2 = T::one() - (w / s.delta) * (gamma + w);
    let beta2 = (s.delta / w) * (gamma - w);
    let minus_product = alpha2 * beta2;
    Ok(NormalModeDecomposition {
        gamma,
        eta,
        alpha1,
        alpha2,
        beta1,
        beta2,
        omega_nm_plus: (alpha1 * beta1).sqrt(),
        omega_nm_minus: if minus_product >= T::zero() {
            Some(minus_product.sqrt())
        } else {
            None
        },
    })
}

/// Whether the stable Hamiltonian is positive definite. Only the two
/// stable sectors have a meaningful answer; everywhere else this errors.
pub fn hamiltonian_signature<T: Real>(p: &ModelParams<T>) -> Result<EnergeticSignature> {
    match p.spectrum().regime {
        Regime::StableI => Ok(EnergeticSignature::PositiveDefinite),
        Regime::StableII => Ok(EnergeticSignature::IndefiniteStable),
        other => Err(Error::NotApplicable(format!(
            "energetic signature is defined in the stable sectors only, regime is {other}"
        ))),
    }
}
