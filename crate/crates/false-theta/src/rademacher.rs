//! Convergent exact formula for the unimodal counts u(n), organized as a
//! modular Bessel/Kloosterman series minus a false-part series whose terms
//! carry a cot-kernel integral, together with the leading asymptotic term.

use num_bigint::BigInt;
use num_traits::FromPrimitive;

use crate::modular::{kloosterman_f, kloosterman_g};
use crate::numeric::{bessel_i2, bessel_i32, quad_finite_dist, ComplexValue};
use crate::{Error, Result};

/// Tuning knobs for the exact-formula evaluation.
#[derive(Debug, Clone, Copy)]
pub struct RademacherConfig {
    /// Number of terms k = 1..=kmax retained in both series.
    pub kmax: usize,
    /// Tolerance handed to the cot-kernel quadrature.
    pub quad_tol: f64,
    /// Maximum distance from the nearest integer tolerated when rounding.
    pub round_margin: f64,
}

impl Default for RademacherConfig {
    fn default() -> Self {
        Self { kmax: 20, quad_tol: 1e-10, round_margin: 0.25 }
    }
}

/// Per-k contributions to the two series, so prefix sums recover every
/// truncation level from a single pass.
#[derive(Debug, Clone, Copy)]
pub struct TermBreakdown {
    pub k: usize,
    /// k-th term of the modular (Bessel I_2) series; `None` at n = 0, where
    /// the series argument 12n - 1 is negative and the series is undefined.
    pub modular_term: Option<f64>,
    /// k-th term of the false-part (cot-kernel, Bessel I_{3/2}) series.
    pub false_term: f64,
}

/// k-th term of the modular series
/// `(2 pi / (12n - 1)) * (K_k(n)/k) * I_2(pi sqrt(12n - 1) / (3k))`.
/// Requires n >= 1 so that 12n - 1 > 0.
pub fn modular_term(n: u64, k: usize) -> Result<f64> {
    if n < 1 || k < 1 {
        return Err(Error::Domain(format!("modular_term: need n >= 1, k >= 1 (n = {n}, k = {k})")));
    }
    let m = 12.0 * n as f64 - 1.0;
    let kk = kloosterman_g(k as i64, n as i64)?;
    let bessel = bessel_i2(std::f64::consts::PI * m.sqrt() / (3.0 * k as f64))?;
    let term = 2.0 * std::f64::consts::PI / m * kk / k as f64 * bessel;
    // the complexified sum must come out real; a surviving imaginary part
    // points at a phase bug in the Kloosterman-type sum
    if term.im.abs() > 1e-8 * (1.0 + term.re.abs()) {
        return Err(Error::Range(format!(
            "modular_term(n = {n}, k = {k}): imaginary residue {:e}",
            term.im
        )));
    }
    Ok(term.re)
}

/// k-th term of the false-part series
/// `pi / (2^(3/4) sqrt(3) (24n + 1)^(3/4)) * sum_{r mod 2k} (K_k(n, r)/k^2) *
///  int_{-1}^{1} (1 - x^2)^(3/4) cot(pi/(2k) (x/sqrt(6) - r - 1/2))
///               I_{3/2}(pi/(3 sqrt(2) k) sqrt((1 - x^2)(24n + 1))) dx`.
pub fn false_term(n: u64, k: usize, quad_tol: f64) -> Result<f64> {
    if k < 1 {
        return Err(Error::Domain(format!("false_term: need k >= 1, got {k}")));
    }
    let kf = k as f64;
    let m = 24.0 * n as f64 + 1.0;
    let pref = std::f64::consts::PI / (2f64.powf(0.75) * 3f64.sqrt() * m.powf(0.75));
    let bessel_scale = std::f64::consts::PI / (3.0 * 2f64.sqrt() * kf);
    let mut sum = ComplexValue::new(0.0, 0.0);
    for r in 0..2 * k as i64 {
        let kk = kloosterman_f(k as i64, n as i64, r)?;
        if kk.norm() < 1e-14 {
            continue;
        }
        let integral = cot_kernel_integral(kf, r as f64, m, bessel_scale, quad_tol)?;
        sum += kk / (kf * kf) * integral;
    }
    let term = pref * sum;
    if term.im.abs() > 10.0 * quad_tol * (1.0 + term.re.abs()) {
        return Err(Error::Range(format!(
            "false_term(n = {n}, k = {k}): imaginary residue {:e}",
            term.im
        )));
    }
    Ok(term.re)
}

fn cot_kernel_integral(
    kf: f64,
    r: f64,
    m: f64,
    bessel_scale: f64,
    quad_tol: f64,
) -> Result<f64> {
    let cot_scale = std::f64::consts::PI / (2.0 * kf);
    let inv_sqrt6 = 1.0 / 6f64.sqrt();
    let res = quad_finite_dist(
        |x, da, db| {
            // (1 - x^2) from the endpoint distances, cancellation-free
            let one_minus_x2 = da * db;
            let kernel = one_minus_x2.powf(0.75);
            let theta = cot_scale * (x * inv_sqrt6 - r - 0.5);
            let cot = theta.cos() / theta.sin();
            let bess = bessel_i32(bessel_scale * (one_minus_x2 * m).sqrt())?;
            Ok(ComplexValue::new(kernel * cot * bess, 0.0))
        },
        -1.0,
        1.0,
        quad_tol,
    )?;
    Ok(res.value.re)
}

/// Per-k terms of both series for k = 1..=kmax.
pub fn term_breakdown(n: u64, cfg: &RademacherConfig) -> Result<Vec<TermBreakdown>> {
    if cfg.kmax < 1 {
        return Err(Error::Domain("term_breakdown: kmax must be >= 1".into()));
    }
    let mut out = Vec::with_capacity(cfg.kmax);
    for k in 1..=cfg.kmax {
        let g = if n >= 1 { Some(modular_term(n, k)?) } else { None };
        let f = false_term(n, k, cfg.quad_tol)?;
        out.push(TermBreakdown { k, modular_term: g, false_term: f });
    }
    Ok(out)
}

/// Truncated modular series: approximates alpha_g(n). Rejects n = 0, where
/// the Bessel argument sqrt(12n - 1) is undefined.
pub fn alpha_g_formula(n: u64, cfg: &RademacherConfig) -> Result<f64> {
    if n < 1 {
        return Err(Error::Domain(
            "alpha_g_formula: n = 0 is outside the series (12n - 1 < 0)".into(),
        ));
    }
    Ok(term_breakdown(n, cfg)?.iter().map(|t| t.modular_term.unwrap_or(0.0)).sum())
}

/// Truncated false-part series: approximates alpha_f(n), valid from n = 0.
pub fn alpha_f_formula(n: u64, cfg: &RademacherConfig) -> Result<f64> {
    Ok(term_breakdown(n, cfg)?.iter().map(|t| t.false_term).sum())
}

/// Truncated exact formula for u(n), n >= 1: modular series minus false series.
pub fn u_estimate(n: u64, cfg: &RademacherConfig) -> Result<f64> {
    if n < 1 {
        return Err(Error::Domain("u_estimate: n must be >= 1".into()));
    }
    Ok(term_breakdown(n, cfg)?
        .iter()
        .map(|t| t.modular_term.unwrap_or(0.0) - t.false_term)
        .sum())
}

/// u(n) recovered by rounding the truncated exact formula; errors if the
/// estimate is farther than `round_margin` from the nearest integer.
pub fn u_rademacher(n: u64, cfg: &RademacherConfig) -> Result<BigInt> {
    let est = u_estimate(n, cfg)?;
    let rounded = est.round();
    if (est - rounded).abs() > cfg.round_margin {
        return Err(Error::NonConvergence(format!(
            "u_rademacher: estimate {est} is {:.3} from the nearest integer (margin {})",
            (est - rounded).abs(),
            cfg.round_margin
        )));
    }
    BigInt::from_f64(rounded)
        .ok_or_else(|| Error::Range(format!("u_rademacher: estimate {est} not representable")))
}

/// Leading asymptotic term `e^(2 pi sqrt(n/3)) / (8 * 3^(3/4) * n^(5/4))`.
pub fn auluck_main(n: u64) -> Result<f64> {
    if n < 1 {
        return Err(Error::Domain("auluck_main: n must be >= 1".into()));
    }
    let nf = n as f64;
    Ok((2.0 * std::f64::consts::PI * (nf / 3.0).sqrt()).exp()
        / (8.0 * 3f64.powf(0.75) * nf.powf(1.25)))
}
