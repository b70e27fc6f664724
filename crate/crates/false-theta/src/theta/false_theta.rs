//! The unary false theta functions indexed by a level N and a residue j, the
//! weight-3/2 theta functions paired with them under differentiation, the
//! erf-completion, and the finite multiplier system governing their behavior
//! under the modular group.

use num_complex::Complex64;

use crate::modular::{SL2Z, UnityPower};
use crate::numeric::{erf_saturating, sqrt_principal, ComplexValue};
use crate::{Error, Result};

/// Level/residue pair for the unary family: `N >= 2`, `1 <= j <= N - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FalseThetaParams {
    pub j: i64,
    pub n: i64,
}

impl FalseThetaParams {
    pub fn new(j: i64, n: i64) -> Result<Self> {
        if n < 2 {
            return Err(Error::Domain(format!("level must be >= 2, got {n}")));
        }
        if j < 1 || j > n - 1 {
            return Err(Error::Domain(format!("residue {j} not in 1..={}", n - 1)));
        }
        Ok(Self { j, n })
    }
}

fn two_pi_i() -> ComplexValue {
    ComplexValue::new(0.0, 2.0 * std::f64::consts::PI)
}

/// Driver over the arithmetic progression n = j + 2Nk, k in Z, truncated by
/// the Gaussian factor q^(n^2/4N) at the declared decay rate per unit of
/// n^2/4N (pass `tau.im` unless an extra growing factor must be absorbed).
fn progression_sum<F>(
    p: FalseThetaParams,
    tau: ComplexValue,
    decay_im: f64,
    tol: f64,
    mut f: F,
) -> Result<ComplexValue>
where
    F: FnMut(f64) -> Result<ComplexValue>,
{
    if tau.im <= 0.0 {
        return Err(Error::Domain(format!("Im(tau) = {} must be positive", tau.im)));
    }
    let log_q = two_pi_i() * tau;
    let four_n = 4.0 * p.n as f64;
    let rate = std::f64::consts::PI * decay_im / (2.0 * p.n as f64); // per unit n^2
    let e = (100.0 / tol).ln().max(1.0);
    let cutoff = (e / rate).sqrt() + 2.0 * p.n as f64 + 1.0;
    let mut total = ComplexValue::new(0.0, 0.0);
    let mut k: i64 = 0;
    loop {
        let mut alive = false;
        for m in [p.j + 2 * p.n * k, p.j - 2 * p.n * (k + 1)] {
            let mf = m as f64;
            if mf.abs() > cutoff {
                continue;
            }
            alive = true;
            total += f(mf)? * (log_q * (mf * mf / four_n)).exp();
        }
        if !alive {
            return Ok(total);
        }
        k += 1;
        if k > 1_000_000 {
            return Err(Error::TailBound("progression sum: term budget exceeded".into()));
        }
    }
}

/// `F_{j,N}(tau) = sum_{n = j mod 2N} sgn(n) q^(n^2/4N)`, the weight-1/2
/// false theta function.
pub fn f_false(p: FalseThetaParams, tau: ComplexValue, tol: f64) -> Result<ComplexValue> {
    progression_sum(p, tau, tau.im, tol, |m| {
        Ok(ComplexValue::new(if m > 0.0 { 1.0 } else { -1.0 }, 0.0))
    })
}

/// `f_{j,N}(tau) = (1/2N) sum_{n = j mod 2N} n q^(n^2/4N)`, the weight-3/2
/// unary theta function appearing under the Eichler integral.
pub fn f_unary(p: FalseThetaParams, tau: ComplexValue, tol: f64) -> Result<ComplexValue> {
    let scale = 1.0 / (2.0 * p.n as f64);
    progression_sum(p, tau, tau.im, tol, |m| Ok(ComplexValue::new(scale * m, 0.0)))
}

/// The completion `F_hat_{j,N}(tau, w) = sum_{n = j mod 2N}
/// erf(-i sqrt(pi i (w - tau)) n / sqrt(2N)) q^(n^2/4N)`.
pub fn f_hat(
    p: FalseThetaParams,
    tau: ComplexValue,
    w: ComplexValue,
    tol: f64,
) -> Result<ComplexValue> {
    if w.im <= 0.0 {
        return Err(Error::Domain(format!("f_hat: Im(w) = {} must be positive", w.im)));
    }
    let arg_scale =
        -ComplexValue::i() * sqrt_principal(ComplexValue::new(0.0, std::f64::consts::PI) * (w - tau))
            / (2.0 * p.n as f64).sqrt();
    // erf grows at most like e^{pi (tau2 - w2) n^2 / 2N} when w2 < tau2
    progression_sum(p, tau, tau.im.min(w.im), tol, |m| erf_saturating(arg_scale * m))
}

/// Entry `psi_{j,r}(M)` of the finite multiplier system: for c = 0,
/// `e^{2 pi i a b j^2 / 4N} e^{-(pi i/4)(1 - sgn d)} delta_{j,r}`; for c != 0,
/// `e^{-(3 pi i/4) sgn c} sqrt(2/(N |c|)) sum_{k mod |c|}
///  e^{(pi i/(2 N c)) (a (2Nk + j)^2 + d r^2)} sin(pi r (2Nk + j)/(N |c|))`.
pub fn multiplier_psi(level: i64, m: &SL2Z, j: i64, r: i64) -> Result<Complex64> {
    if level < 2 {
        return Err(Error::Domain(format!("level must be >= 2, got {level}")));
    }
    for v in [j, r] {
        if v < 1 || v > level - 1 {
            return Err(Error::Domain(format!("residue {v} not in 1..={}", level - 1)));
        }
    }
    let n = level;
    if m.c == 0 {
        if j != r {
            return Ok(Complex64::new(0.0, 0.0));
        }
        // e^{2 pi i (ab j^2/4N)} e^{-(pi i/4)(1 - sgn d)}; both exact rationals
        let phase = UnityPower::new(num_rational::BigRational::new(
            (m.a * m.b * j * j).into(),
            (4 * n).into(),
        ))
        .mul(&UnityPower::from_frac(-(1 - m.d.signum()), 8));
        return Ok(phase.to_complex());
    }
    let cabs = m.c.abs();
    let front = UnityPower::from_frac(-3 * m.c.signum(), 8).to_complex()
        * (2.0 / (n * cabs) as f64).sqrt();
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 0..cabs {
        let t = 2 * n * k + j;
        // exact exponent (a t^2 + d r^2)/(4 N c) of e^{2 pi i x}
        let phase = UnityPower::new(num_rational::BigRational::new(
            (m.a * t * t + m.d * r * r).into(),
            (4 * n * m.c).into(),
        ));
        let s = (std::f64::consts::PI * (r * t) as f64 / (n * cabs) as f64).sin();
        sum += phase.to_complex() * s;
    }
    Ok(front * sum)
}

/// The full (N-1) x (N-1) multiplier matrix for `M`.
pub fn multiplier_matrix(level: i64, m: &SL2Z) -> Result<Vec<Vec<Complex64>>> {
    (1..level)
        .map(|j| (1..level).map(|r| multiplier_psi(level, m, j, r)).collect())
        .collect()
}
