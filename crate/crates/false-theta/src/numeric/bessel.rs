//! Modified Bessel functions of the first kind for the two orders the exact
//! formula needs: I_2 (ascending series, all terms positive) and I_{3/2}
//! (hyperbolic closed form, with a series fallback near zero where
//! cosh x - sinh(x)/x cancels).

use crate::{Error, Result};

/// I_2(x) for x >= 0 via the ascending series sum_m (x/2)^(2m+2) / (m! (m+2)!).
pub fn bessel_i2(x: f64) -> Result<f64> {
    if x < 0.0 || !x.is_finite() {
        return Err(Error::Domain(format!("bessel_i2: x must be >= 0, got {x}")));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    let h = x / 2.0;
    let h2 = h * h;
    let mut term = h2 / 2.0; // m = 0: (x/2)^2 / (0! 2!)
    let mut sum = term;
    for m in 1..500usize {
        term *= h2 / (m as f64 * (m + 2) as f64);
        sum += term;
        if term < 1e-17 * sum {
            return Ok(sum);
        }
    }
    Err(Error::NonConvergence("bessel_i2 series did not converge".into()))
}

/// I_{3/2}(x) = sqrt(2/(pi x)) (cosh x - sinh x / x) for x >= 0.
pub fn bessel_i32(x: f64) -> Result<f64> {
    if x < 0.0 || !x.is_finite() {
        return Err(Error::Domain(format!("bessel_i32: x must be >= 0, got {x}")));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    if x > 700.0 {
        return Err(Error::Range(format!("bessel_i32: cosh overflow at x = {x}")));
    }
    if x < 0.5 {
        return i32_series(x);
    }
    Ok((2.0 / (std::f64::consts::PI * x)).sqrt() * (x.cosh() - x.sinh() / x))
}

/// Ascending series sum_m (x/2)^(2m+3/2) / (m! Gamma(m+5/2)).
fn i32_series(x: f64) -> Result<f64> {
    let h = x / 2.0;
    let gamma_5_2 = 0.75 * std::f64::consts::PI.sqrt();
    let mut term = h.powf(1.5) / gamma_5_2;
    let mut sum = term;
    for m in 1..200usize {
        term *= h * h / (m as f64 * (m as f64 + 1.5));
        sum += term;
        if term < 1e-17 * sum {
            return Ok(sum);
        }
    }
    Err(Error::NonConvergence("bessel_i32 series did not converge".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn i2_at_zero_and_one() {
        assert_eq!(bessel_i2(0.0).unwrap(), 0.0);
        // frozen from the 30-term ascending series oracle
        assert!((bessel_i2(1.0).unwrap() - 0.13574766976703828).abs() < 1e-15);
        assert!(bessel_i2(-1.0).is_err());
    }

    #[test]
    fn i32_series_matches_closed_form() {
        for &x in &[0.1_f64, 0.4, 0.5, 1.0, 5.0, 20.0] {
            let series = i32_series(x).unwrap();
            let closed = (2.0 / (std::f64::consts::PI * x)).sqrt() * (x.cosh() - x.sinh() / x);
            let got = bessel_i32(x).unwrap();
            assert!((series - closed).abs() < 1e-13 * closed.max(1e-10), "x = {x}");
            assert!((got - closed).abs() < 1e-13 * closed.max(1e-10) || x < 0.5);
            assert!((got - series).abs() < 1e-13 * series.max(1e-10));
        }
    }

    #[test]
    fn i32_at_two_closed_form() {
        // sqrt(2/(2 pi)) (cosh 2 - sinh 2 / 2)
        let expect = (1.0 / std::f64::consts::PI).sqrt() * (2.0f64.cosh() - 2.0f64.sinh() / 2.0);
        assert!((bessel_i32(2.0).unwrap() - expect).abs() < 1e-15);
    }

    #[test]
    fn contour_identity() {
        // the clockwise loop integral of Z^{1/2} e^{2 pi d1/Z + 2 pi d2 Z}
        // around |Z - 1/2| = 1/2 equals -2 pi i (d1/d2)^{3/4} I_{3/2}(4 pi sqrt(d1 d2)).
        // Parameterize Z = 1/(1 - it); the real line (counterclockwise) is
        // deformed at |t| = T into downward rays, where the factor
        // e^{2 pi d1 (1 - it)} decays like e^{-2 pi d1 u}.
        use crate::numeric::{quad_finite, quad_halfline_decay, sqrt_principal, ComplexValue};
        let f = |t: ComplexValue, d1: f64, d2: f64| {
            let zeta = ComplexValue::new(1.0, 0.0) - ComplexValue::i() * t;
            ComplexValue::i() / (zeta * zeta * sqrt_principal(zeta))
                * (2.0 * std::f64::consts::PI * (d1 * zeta + d2 * zeta.inv())).exp()
        };
        let big_t = 3.0;
        for (d1, d2) in [(1.0 / 12.0, 1.0), (1.0 / 24.0, 2.0)] {
            let central = quad_finite(
                |t| Ok(f(ComplexValue::new(t, 0.0), d1, d2)),
                -big_t,
                big_t,
                1e-11,
            )
            .unwrap();
            let decay = 2.0 * std::f64::consts::PI * d1;
            let right = quad_halfline_decay(
                |u| Ok(f(ComplexValue::new(big_t, -u), d1, d2)),
                decay,
                1e-11,
            )
            .unwrap();
            let left = quad_halfline_decay(
                |u| Ok(f(ComplexValue::new(-big_t, -u), d1, d2)),
                decay,
                1e-11,
            )
            .unwrap();
            let ccw = central.value - ComplexValue::i() * right.value
                + ComplexValue::i() * left.value;
            let clockwise = -ccw;
            let expect = ComplexValue::new(0.0, -2.0 * std::f64::consts::PI)
                * (d1 / d2).powf(0.75)
                * bessel_i32(4.0 * std::f64::consts::PI * (d1 * d2).sqrt()).unwrap();
            assert!(
                (clockwise - expect).norm() < 1e-8 * expect.norm(),
                "(d1, d2) = ({d1}, {d2}): {clockwise} vs {expect}"
            );
        }
    }
}
