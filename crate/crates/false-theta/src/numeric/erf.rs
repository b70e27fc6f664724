//! Complex error function.
//!
//! Regime selection: Maclaurin series near the origin (and wherever the series
//! is cancellation-safe), a Lentz continued fraction for erfc in the sector
//! `Re(z^2) >= 0`, and the large-argument asymptotic expansion elsewhere. The
//! crossover is validated against the series in the unit tests.

use super::{sqrt_principal, ComplexValue};
use crate::{Error, Result};

const SAFE_RADIUS: f64 = 50.0;
const TWO_OVER_SQRT_PI: f64 = 1.1283791670955126;

/// erf(z) = (2/sqrt(pi)) * int_0^z exp(-t^2) dt, for |z| <= 50.
pub fn erf_complex(z: ComplexValue) -> Result<ComplexValue> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::Domain("erf_complex: non-finite argument".into()));
    }
    if z.norm() > SAFE_RADIUS {
        return Err(Error::Range(format!("erf_complex: |z| = {} exceeds safe range {SAFE_RADIUS}", z.norm())));
    }
    // erf is odd; reduce to Re(z) >= 0.
    if z.re < 0.0 {
        return Ok(-erf_complex(-z)?);
    }
    let z2 = z * z;
    let r = z.norm();
    if r <= 4.0 {
        return maclaurin(z);
    }
    if z2.re >= 0.0 {
        // erfc via continued fraction; erf = 1 - erfc.
        return Ok(ComplexValue::new(1.0, 0.0) - erfc_cf(z)?);
    }
    // Re(z^2) < 0: erf grows like exp(-Re z^2). The Maclaurin series loses
    // roughly exp(|z|^2 + Re z^2) relative to the result; keep it where that
    // loss is tolerable, otherwise use the asymptotic expansion.
    let loss = r * r + z2.re;
    if loss <= 20.0 && r <= 26.0 {
        return maclaurin(z);
    }
    if -z2.re > 705.0 {
        return Err(Error::Range("erf_complex: result overflows double precision".into()));
    }
    let s = asymptotic_tail_sum(z2)?;
    // erf(z) = 1 - exp(-z^2)/(sqrt(pi) z) * S
    let corr = (-z2).exp() * s / (std::f64::consts::PI.sqrt() * z);
    Ok(ComplexValue::new(1.0, 0.0) - corr)
}

/// erf(z), short-circuited to +-1 when the complement is below double
/// precision (`Re(z^2) > 40`). Unlike [`erf_complex`] this has no radius
/// limit in the saturated sector; elsewhere it delegates to `erf_complex`.
pub fn erf_saturating(z: ComplexValue) -> Result<ComplexValue> {
    if z.re < 0.0 {
        return Ok(-erf_saturating(-z)?);
    }
    let z2 = z * z;
    if z2.re > 40.0 {
        // |erfc(z)| <= e^{-Re z^2} / (sqrt(pi) |z|) < 1e-17 here
        return Ok(ComplexValue::new(1.0, 0.0));
    }
    erf_complex(z)
}

/// exp(g) * erf(z), formed without overflow in the regime where erf grows
/// (`Re(z^2)` strongly negative) while exp(g) decays fast enough that the
/// product stays representable. This is the generic term shape of completed
/// theta sums evaluated below the diagonal Im(w) < Im(tau), where neither
/// factor fits in a double on its own.
pub fn erf_times_exp(z: ComplexValue, g: ComplexValue) -> Result<ComplexValue> {
    if z.re < 0.0 {
        return Ok(-erf_times_exp(-z, g)?);
    }
    let z2 = z * z;
    if z2.re > 40.0 {
        // |erfc(z)| < 1e-17: erf is +1 to double precision
        return Ok(g.exp());
    }
    if z2.re >= 0.0 {
        if z.norm() > SAFE_RADIUS {
            // erf = 1 - erfc, with erfc from the continued fraction (valid at
            // any radius in this sector)
            return Ok(g.exp() * (ComplexValue::new(1.0, 0.0) - erfc_cf(z)?));
        }
        return Ok(g.exp() * erf_complex(z)?);
    }
    let r = z.norm();
    if r <= 4.0 || (r * r + z2.re <= 20.0 && r <= 26.0) {
        return Ok(g.exp() * erf_complex(z)?);
    }
    // erf(z) = 1 - e^{-z^2} S / (sqrt(pi) z): fold e^{-z^2} into the
    // prefactor so the growing and decaying exponentials combine analytically
    let s = asymptotic_tail_sum(z2)?;
    Ok(g.exp() - (g - z2).exp() * s / (std::f64::consts::PI.sqrt() * z))
}

/// Stable evaluation of `exp(-pi s^2 V) * (sgn(s) + erf(i s sqrt(pi V)))`
/// for real `s` and `Re(V) > 0`.
///
/// This is the generic term of the conditionally convergent erf-series for
/// the Eichler integral at a rational point; the exponential prefactor and
/// the growing part of erf cancel exactly and must not be formed separately.
pub fn signed_erf_term(s: f64, v: ComplexValue) -> Result<ComplexValue> {
    if v.re <= 0.0 {
        return Err(Error::Domain("signed_erf_term requires Re(V) > 0".into()));
    }
    if s == 0.0 {
        return Ok(ComplexValue::new(0.0, 0.0));
    }
    if s < 0.0 {
        return Ok(-signed_erf_term(-s, v)?);
    }
    let pref = (-std::f64::consts::PI * s * s * v).exp();
    let zeta = ComplexValue::i() * s * sqrt_principal(std::f64::consts::PI * v);
    let z2 = zeta * zeta; // = -pi s^2 V, Re < 0
    let r = zeta.norm();
    if r <= 4.0 || (r * r + z2.re <= 20.0 && r <= 26.0) {
        return Ok(pref * (ComplexValue::new(1.0, 0.0) + maclaurin(zeta)?));
    }
    // exp(-pi s^2 V) * exp(-zeta^2) = 1 exactly, so the asymptotic form is
    //   2 exp(-pi s^2 V) - S / (sqrt(pi) zeta).
    let sum = asymptotic_tail_sum(z2)?;
    Ok(2.0 * pref - sum / (std::f64::consts::PI.sqrt() * zeta))
}

fn maclaurin(z: ComplexValue) -> Result<ComplexValue> {
    let z2 = z * z;
    let mut p = z; // z^(2k+1) / k!
    let mut sum = z;
    let mut sign = 1.0;
    for k in 1..20_000usize {
        p = p * z2 / k as f64;
        sign = -sign;
        let term = sign * p / (2 * k + 1) as f64;
        sum += term;
        if !sum.re.is_finite() || !sum.im.is_finite() {
            return Err(Error::Range("erf_complex: Maclaurin overflow".into()));
        }
        if term.norm() < 1e-18 * (sum.norm() + 1e-300) && k as f64 > z.norm_sqr() {
            return Ok(TWO_OVER_SQRT_PI * sum);
        }
    }
    Err(Error::NonConvergence("erf_complex: Maclaurin series did not converge".into()))
}

/// Modified Lentz evaluation of the erfc continued fraction, Re(z) > 0:
/// erfc(z) = exp(-z^2)/sqrt(pi) * 1/(z + (1/2)/(z + 1/(z + (3/2)/(z + ...)))).
fn erfc_cf(z: ComplexValue) -> Result<ComplexValue> {
    let tiny = ComplexValue::new(1e-290, 0.0);
    let mut f = z;
    let mut c = z;
    let mut d = ComplexValue::new(0.0, 0.0);
    for n in 1..2000usize {
        let a = ComplexValue::new(n as f64 / 2.0, 0.0);
        d = z + a * d;
        if d.norm() < 1e-290 {
            d = tiny;
        }
        c = z + a / c;
        if c.norm() < 1e-290 {
            c = tiny;
        }
        d = d.inv();
        let delta = c * d;
        f *= delta;
        if (delta - ComplexValue::new(1.0, 0.0)).norm() < 1e-17 {
            let e = (-z * z).exp();
            return Ok(e / (std::f64::consts::PI.sqrt() * f));
        }
    }
    Err(Error::NonConvergence("erf_complex: continued fraction did not converge".into()))
}

/// S = sum_m (-1)^m (2m-1)!! / (2 z^2)^m, truncated at the smallest term.
fn asymptotic_tail_sum(z2: ComplexValue) -> Result<ComplexValue> {
    let mut term = ComplexValue::new(1.0, 0.0);
    let mut sum = term;
    let mut best = f64::INFINITY;
    for m in 1..200usize {
        term = -term * (2 * m - 1) as f64 / (2.0 * z2);
        let t = term.norm();
        if t > best {
            break; // divergent tail reached
        }
        best = t;
        sum += term;
        if t < 1e-18 * sum.norm() {
            break;
        }
    }
    if best > 1e-11 {
        return Err(Error::NonConvergence(format!(
            "erf asymptotic expansion floor {best:e} too large for |z^2| = {}",
            z2.norm()
        )));
    }
    Ok(sum)
}
