//! Precision-controlled complex arithmetic, special functions, and quadrature.

mod bessel;
mod erf;
mod quad;

pub use bessel::{bessel_i2, bessel_i32};
pub use erf::{erf_complex, erf_saturating, erf_times_exp, signed_erf_term};
pub use quad::{
    gauss_legendre, quad_finite, quad_finite_dist, quad_halfline_decay, ts_level_nodes,
    QuadratureResult, TsNode,
};

use crate::{Error, Result};
pub use num_complex::Complex64 as ComplexValue;

/// Working-precision settings shared by the evaluators.
///
/// The backing arithmetic is IEEE double precision, so `digits` is honored up
/// to the ~15-16 significant digits a double can carry; requesting more is
/// accepted but clamped in effect.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrecisionContext {
    digits: u32,
    default_tol: f64,
}

impl PrecisionContext {
    pub fn new(digits: u32, default_tol: f64) -> Result<Self> {
        if digits < 15 {
            return Err(Error::Domain(format!("digits must be >= 15, got {digits}")));
        }
        let floor = 10f64.powi(2 - digits.min(300) as i32);
        if !(default_tol > 0.0) || default_tol < floor {
            return Err(Error::Domain(format!(
                "default_tol must satisfy tol >= 10^(2-digits) = {floor:e}, got {default_tol:e}"
            )));
        }
        Ok(Self { digits, default_tol })
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn default_tol(&self) -> f64 {
        self.default_tol
    }

    /// The relative-accuracy target 10^(2-digits).
    pub fn accuracy_target(&self) -> f64 {
        10f64.powi(2 - self.digits.min(300) as i32)
    }
}

impl Default for PrecisionContext {
    fn default() -> Self {
        Self { digits: 15, default_tol: 1e-12 }
    }
}

/// Principal-branch complex square root: argument in (-pi/2, pi/2], branch
/// cut on the negative real axis, so `sqrt(-1) = i`.
pub fn sqrt_principal(z: ComplexValue) -> ComplexValue {
    // Complex64::sqrt is already the principal branch; kept behind a named
    // entry point so every branch choice in the crate routes through here.
    z.sqrt()
}

/// Checks a computed value for NaN/overflow escapes.
pub fn ensure_finite(z: ComplexValue, what: &str) -> Result<ComplexValue> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(Error::Range(format!("{what} produced a non-finite value")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn context_rejects_low_digits_and_tight_tol() {
        assert!(PrecisionContext::new(14, 1e-10).is_err());
        assert!(PrecisionContext::new(15, 1e-14).is_err());
        assert!(PrecisionContext::new(15, 1e-13).is_ok());
        assert!(PrecisionContext::new(30, 1e-12).is_ok());
    }

    #[test]
    fn sqrt_principal_branch_convention() {
        let one = sqrt_principal(ComplexValue::new(1.0, 0.0));
        assert!((one - ComplexValue::new(1.0, 0.0)).norm() < 1e-15);
        let i = sqrt_principal(ComplexValue::new(-1.0, 0.0));
        assert!((i - ComplexValue::new(0.0, 1.0)).norm() < 1e-15);
        let s = sqrt_principal(ComplexValue::new(0.0, 2.0));
        assert!((s - ComplexValue::new(1.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn sqrt_principal_argument_range() {
        for k in 0..64 {
            let th = -std::f64::consts::PI + (k as f64 + 0.5) * std::f64::consts::PI / 32.0;
            let z = ComplexValue::from_polar(2.0, th);
            let s = sqrt_principal(z);
            let arg = s.arg();
            assert!(arg > -std::f64::consts::FRAC_PI_2 - 1e-12 && arg <= std::f64::consts::FRAC_PI_2 + 1e-12);
            assert!((s * s - z).norm() < 1e-13);
        }
    }
}
