//! The two-variable false theta function, its error-function completion, the
//! general lattice versions, and residual checks for every Jacobi-type
//! transformation law they satisfy.

use num_rational::BigRational;
use num_traits::{FromPrimitive, ToPrimitive};

use super::lattice::LatticePair;
use crate::modular::{SL2Z, UnityPower};
use crate::numeric::{erf_times_exp, sqrt_principal, ComplexValue};
use crate::{Error, Result};

const TERM_BUDGET: usize = 2_000_000;

fn two_pi_i() -> ComplexValue {
    ComplexValue::new(0.0, 2.0 * std::f64::consts::PI)
}

/// psi(z; tau) = i sum_n sgn(n + 1/2) (-1)^n q^((n+1/2)^2/2) zeta^(n+1/2).
pub fn psi_false(z: ComplexValue, tau: ComplexValue, tol: f64) -> Result<ComplexValue> {
    bilateral_half_integer_sum(tau, tol, |s| {
        let sgn = if s > 0.0 { 1.0 } else { -1.0 };
        Ok(ComplexValue::new(sgn, 0.0) * (two_pi_i() * (s * z)).exp())
    })
}

/// psi_hat(z; tau, w): the sign factor replaced by
/// erf(-i sqrt(pi i (w - tau)) (n + 1/2 + Im(z)/Im(tau))).
pub fn psi_hat(z: ComplexValue, tau: ComplexValue, w: ComplexValue, tol: f64) -> Result<ComplexValue> {
    if w.im <= 0.0 {
        return Err(Error::Domain(format!("psi_hat: Im(w) = {} must be positive", w.im)));
    }
    let shift = z.im / tau.im;
    let root = sqrt_principal(ComplexValue::new(0.0, std::f64::consts::PI) * (w - tau));
    let arg_scale = -ComplexValue::i() * root;
    bilateral_half_integer_sum_damped(tau, w, tol, |s, log_gauss| {
        // the erf factor can grow like e^{pi (tau2 - w2) s^2}; fold the
        // decaying Gaussian into its evaluation so neither factor overflows
        erf_times_exp(arg_scale * (s + shift), log_gauss + two_pi_i() * (s * z))
    })
}

/// Shared driver: i * sum over n of f(n+1/2) (-1)^n q^((n+1/2)^2/2), with
/// Gaussian truncation certified against |f| <= 2-ish factors.
fn bilateral_half_integer_sum<F>(tau: ComplexValue, tol: f64, mut f: F) -> Result<ComplexValue>
where
    F: FnMut(f64) -> Result<ComplexValue>,
{
    if tau.im <= 0.0 {
        return Err(Error::Domain(format!("Im(tau) = {} must be positive", tau.im)));
    }
    let log_q = two_pi_i() * tau;
    let mut total = ComplexValue::new(0.0, 0.0);
    let mut n: i64 = 0;
    let mut dead_rows = 0usize;
    loop {
        let mut row = ComplexValue::new(0.0, 0.0);
        let mut row_scale = 0.0f64;
        for m in [n, -n - 1] {
            let s = m as f64 + 0.5;
            let gauss = (log_q * (0.5 * s * s)).exp();
            let v = f(s)? * gauss;
            let sign = if m.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
            row += sign * v;
            row_scale = row_scale.max(v.norm());
        }
        total += row;
        if row_scale < 0.01 * tol {
            dead_rows += 1;
            if dead_rows >= 3 {
                return Ok(ComplexValue::i() * total);
            }
        } else {
            dead_rows = 0;
        }
        n += 1;
        if n as usize > TERM_BUDGET {
            return Err(Error::TailBound("half-integer theta sum: term budget exceeded".into()));
        }
    }
}

/// Like [`bilateral_half_integer_sum`], but with the effective Gaussian decay
/// rate min(Im tau, Im w): for Im(w) <= Im(tau) the erf factor grows like
/// e^(-pi (w2 - tau2) s^2) and the truncation must absorb it.
fn bilateral_half_integer_sum_damped<F>(
    tau: ComplexValue,
    w: ComplexValue,
    tol: f64,
    mut f: F,
) -> Result<ComplexValue>
where
    F: FnMut(f64, ComplexValue) -> Result<ComplexValue>,
{
    if tau.im <= 0.0 {
        return Err(Error::Domain(format!("Im(tau) = {} must be positive", tau.im)));
    }
    let decay = std::f64::consts::PI * tau.im.min(w.im);
    let cutoff = {
        // e^{-decay s^2} below tol/100 with a few dead rows of margin
        let e = (100.0 / tol).ln().max(1.0);
        (e / decay).sqrt() + 3.0
    };
    let log_q = two_pi_i() * tau;
    let mut total = ComplexValue::new(0.0, 0.0);
    let mut n: i64 = 0;
    loop {
        let s_mag = n as f64 + 0.5;
        if s_mag > cutoff {
            return Ok(ComplexValue::i() * total);
        }
        for m in [n, -n - 1] {
            let s = m as f64 + 0.5;
            let sign = if m.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
            // the closure owns the Gaussian factor: its log is handed over so
            // growing erf factors can be folded in before exponentiating
            total += sign * f(s, log_q * (0.5 * s * s))?;
        }
        n += 1;
        if n as usize > TERM_BUDGET {
            return Err(Error::TailBound("completed theta sum: term budget exceeded".into()));
        }
    }
}

/// Lattice enumeration shared by [`big_psi`] and [`big_psi_hat`]: all points
/// mu + ell/2 + k with k in an integer box large enough that the certified
/// Gaussian tail (decay rate `t_eff` per unit of Q) is below tol.
fn lattice_points(
    lat: &LatticePair,
    z_im: &[f64],
    t_eff: f64,
    tol: f64,
) -> Result<Vec<Vec<f64>>> {
    let n = lat.rank();
    let base: Vec<f64> = lat.base_point().iter().map(|x| x.to_f64().unwrap()).collect();
    let lambda = lat.lambda_min();
    // |term| <= e^{-pi t_eff lambda |v|^2 + 2 pi |A z_im| |v|}
    let a_norm = lat
        .gram()
        .iter()
        .map(|row| row.iter().map(|&v| v.abs() as f64).sum::<f64>())
        .fold(0.0f64, f64::max);
    let z_norm = z_im.iter().map(|v| v.abs()).fold(0.0f64, f64::max) * (n as f64);
    let drift = 2.0 * std::f64::consts::PI * a_norm * z_norm;
    let e = (1e4 / tol).ln().max(1.0);
    let a_coef = std::f64::consts::PI * t_eff * lambda;
    let r = (drift + (drift * drift + 4.0 * a_coef * e).sqrt()) / (2.0 * a_coef) + 1.0;
    let mut ranges = Vec::with_capacity(n);
    let mut count = 1usize;
    for b in &base {
        let lo = (-r - b).floor() as i64;
        let hi = (r - b).ceil() as i64;
        count = count.saturating_mul((hi - lo + 1) as usize);
        ranges.push((lo, hi));
    }
    if count > TERM_BUDGET {
        return Err(Error::CostGuard(format!(
            "lattice sum needs {count} terms (radius {r:.1}); tighten tol or reduce rank"
        )));
    }
    let mut pts = Vec::with_capacity(count);
    let mut idx: Vec<i64> = ranges.iter().map(|&(lo, _)| lo).collect();
    loop {
        pts.push((0..n).map(|i| base[i] + idx[i] as f64).collect());
        let mut pos = 0;
        loop {
            if pos == n {
                return Ok(pts);
            }
            idx[pos] += 1;
            if idx[pos] <= ranges[pos].1 {
                break;
            }
            idx[pos] = ranges[pos].0;
            pos += 1;
        }
    }
}

/// log of the elliptic factor: 2 pi i B(v, z + ell/2). Kept in log form so
/// callers can combine it with the Gaussian exponent before exponentiating
/// (either factor alone can overflow while the product is tiny).
fn elliptic_exponent(lat: &LatticePair, v: &[f64], z: &[ComplexValue]) -> ComplexValue {
    let n = lat.rank();
    let mut b = ComplexValue::new(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            let zj = z[j] + 0.5 * lat.ell()[j] as f64;
            b += v[i] * lat.gram()[i][j] as f64 * zj;
        }
    }
    two_pi_i() * b
}

/// Psi_{Q,mu,ell,c}(z; tau) =
/// sum_{n in mu + ell/2 + L} sgn(B(c, n)) q^Q(n) e^{2 pi i B(n, z + ell/2)}.
pub fn big_psi(
    lat: &LatticePair,
    z: &[ComplexValue],
    tau: ComplexValue,
    tol: f64,
) -> Result<ComplexValue> {
    if tau.im <= 0.0 {
        return Err(Error::Domain("big_psi: Im(tau) must be positive".into()));
    }
    if z.len() != lat.rank() {
        return Err(Error::Domain("big_psi: elliptic variable has wrong dimension".into()));
    }
    let z_im: Vec<f64> = z.iter().map(|v| v.im).collect();
    let log_q = two_pi_i() * tau;
    let mut total = ComplexValue::new(0.0, 0.0);
    for v in lattice_points(lat, &z_im, tau.im, tol)? {
        let b = lat.bilinear(lat.direction(), &v);
        let sgn = if b.abs() < 1e-12 {
            continue;
        } else if b > 0.0 {
            1.0
        } else {
            -1.0
        };
        total += sgn * (log_q * lat.quadratic(&v) + elliptic_exponent(lat, &v, z)).exp();
    }
    Ok(total)
}

/// The completion: sgn(B(c, n)) replaced by
/// erf(-i sqrt(pi i (w - tau)) B(c, n + Im(z)/Im(tau))).
pub fn big_psi_hat(
    lat: &LatticePair,
    z: &[ComplexValue],
    tau: ComplexValue,
    w: ComplexValue,
    tol: f64,
) -> Result<ComplexValue> {
    if tau.im <= 0.0 || w.im <= 0.0 {
        return Err(Error::Domain("big_psi_hat: Im(tau), Im(w) must be positive".into()));
    }
    if z.len() != lat.rank() {
        return Err(Error::Domain("big_psi_hat: elliptic variable has wrong dimension".into()));
    }
    let n = lat.rank();
    let z_im: Vec<f64> = z.iter().map(|v| v.im).collect();
    let shift: Vec<f64> = z_im.iter().map(|v| v / tau.im).collect();
    let root = sqrt_principal(ComplexValue::new(0.0, std::f64::consts::PI) * (w - tau));
    let arg_scale = -ComplexValue::i() * root;
    let log_q = two_pi_i() * tau;
    // B(c, v)^2 <= 2 Q(v) (Cauchy-Schwarz with 2Q(c) = 1), so the combined
    // Gaussian decay rate per unit of Q is at least min(tau2, w2).
    let t_eff = tau.im.min(w.im);
    let mut total = ComplexValue::new(0.0, 0.0);
    for v in lattice_points(lat, &z_im, t_eff, tol)? {
        let shifted: Vec<f64> = (0..n).map(|i| v[i] + shift[i]).collect();
        let b = lat.bilinear(lat.direction(), &shifted);
        // fold the Gaussian and elliptic exponents into the erf evaluation:
        // along near-c directions the erf factor grows almost as fast as the
        // Gaussian decays, and large elliptic shifts make the phase factor
        // overflow on its own
        let log_term = log_q * lat.quadratic(&v) + elliptic_exponent(lat, &v, z);
        total += erf_times_exp(arg_scale * b, log_term)?;
    }
    Ok(total)
}

/// Residual of the elliptic shift law of Theorem-type (1):
/// `Psi_hat(z + m tau + r) = (-1)^{2Q(m+r)} q^{-Q(m)} e^{-2 pi i B(m,z)} Psi_hat(z)`.
pub fn verify_elliptic_shift(
    lat: &LatticePair,
    z: &[ComplexValue],
    tau: ComplexValue,
    w: ComplexValue,
    m: &[i64],
    r: &[i64],
    tol: f64,
) -> Result<f64> {
    let n = lat.rank();
    if m.len() != n || r.len() != n {
        return Err(Error::Domain("verify_elliptic_shift: wrong shift dimensions".into()));
    }
    let z_shift: Vec<ComplexValue> =
        (0..n).map(|i| z[i] + m[i] as f64 * tau + r[i] as f64).collect();
    let lhs = big_psi_hat(lat, &z_shift, tau, w, tol)?;
    let mr: Vec<f64> = (0..n).map(|i| (m[i] + r[i]) as f64).collect();
    let mf: Vec<f64> = m.iter().map(|&x| x as f64).collect();
    let two_q = lat.bilinear(&mr, &mr); // 2Q(m+r), an integer
    let sign = if (two_q.round() as i64).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    let mut bmz = ComplexValue::new(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            bmz += mf[i] * lat.gram()[i][j] as f64 * z[j];
        }
    }
    let factor = sign
        * (two_pi_i() * tau * (-lat.quadratic(&mf))).exp()
        * (two_pi_i() * (-bmz)).exp();
    let rhs = factor * big_psi_hat(lat, z, tau, w, tol)?;
    // the prefactor q^{-Q(m)} makes both sides exponentially large for
    // nonzero m, so the residual is reported relative to their scale
    Ok((lhs - rhs).norm() / lhs.norm().max(rhs.norm()).max(1.0))
}

/// Residual of the T-law: `Psi_hat(z; tau+1, w+1) = e^{2 pi i Q(mu + ell/2)} Psi_hat(z; tau, w)`.
pub fn verify_jacobi_t(
    lat: &LatticePair,
    z: &[ComplexValue],
    tau: ComplexValue,
    w: ComplexValue,
    tol: f64,
) -> Result<f64> {
    let lhs = big_psi_hat(lat, z, tau + 1.0, w + 1.0, tol)?;
    let phase = UnityPower::new(lat.quadratic_exact(&lat.base_point())).to_complex();
    let rhs = phase * big_psi_hat(lat, z, tau, w, tol)?;
    Ok((lhs - rhs).norm())
}

/// chi_{tau,w} = sqrt(i(w-tau)/(tau w)) * sqrt(tau) sqrt(w) / sqrt(i(w-tau)),
/// every root principal and evaluated separately.
pub fn chi_factor(tau: ComplexValue, w: ComplexValue) -> ComplexValue {
    let iwt = ComplexValue::i() * (w - tau);
    sqrt_principal(iwt / (tau * w)) * sqrt_principal(tau) * sqrt_principal(w)
        / sqrt_principal(iwt)
}

/// chi_{tau,w}(M) = sqrt(i(w-tau)/((c tau+d)(c w+d)))
///                  * sqrt(c tau+d) sqrt(c w+d) / sqrt(i(w-tau)).
pub fn chi_factor_matrix(m: &SL2Z, tau: ComplexValue, w: ComplexValue) -> ComplexValue {
    let iwt = ComplexValue::i() * (w - tau);
    let dt = m.denom(tau);
    let dw = m.denom(w);
    sqrt_principal(iwt / (dt * dw)) * sqrt_principal(dt) * sqrt_principal(dw)
        / sqrt_principal(iwt)
}

/// Residual of the S-law:
/// `Psi_hat_mu(z/tau; -1/tau, -1/w) = chi_{tau,w} ((-i tau)^{N/2}/sqrt(|L*/L|))
///  e^{2 pi i Q(z)/tau - pi i Q(ell)} sum_nu e^{-2 pi i B(mu,nu)} Psi_hat_nu(z; tau, w)`.
pub fn verify_jacobi_s(
    lat: &LatticePair,
    z: &[ComplexValue],
    tau: ComplexValue,
    w: ComplexValue,
    tol: f64,
) -> Result<f64> {
    let n = lat.rank();
    let z_over_tau: Vec<ComplexValue> = z.iter().map(|&v| v / tau).collect();
    let lhs = big_psi_hat(lat, &z_over_tau, -tau.inv(), -w.inv(), tol)?;

    let disc = lat.discriminant().to_f64().unwrap();
    let mut qz = ComplexValue::new(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            qz += 0.5 * z[i] * lat.gram()[i][j] as f64 * z[j];
        }
    }
    let ell_rat: Vec<BigRational> =
        lat.ell().iter().map(|&v| BigRational::from_i64(v).unwrap()).collect();
    // e^{-pi i Q(ell)} = e^{2 pi i (-Q(ell)/2)}, exact
    let q_ell = lat.quadratic_exact(&ell_rat);
    let ell_phase = UnityPower::new(-q_ell / BigRational::from_i64(2).unwrap()).to_complex();
    let prefactor = chi_factor(tau, w)
        * sqrt_principal(-ComplexValue::i() * tau).powi(n as i32)
        / disc.sqrt()
        * (two_pi_i() * qz / tau).exp()
        * ell_phase;

    let mut sum = ComplexValue::new(0.0, 0.0);
    for nu in lat.dual_cosets()? {
        let phase = UnityPower::new(-lat.bilinear_exact(lat.shift(), &nu)).to_complex();
        let shifted = lat.with_shift(nu)?;
        sum += phase * big_psi_hat(&shifted, z, tau, w, tol)?;
    }
    Ok((lhs - prefactor * sum).norm())
}

/// Residual of the rank-1 modular law:
/// `psi_hat(z/(c tau+d); M tau, M w) = chi_{tau,w}(M) nu_eta(M)^3 (c tau+d)^{1/2}
///  e^{pi i c z^2/(c tau+d)} psi_hat(z; tau, w)`.
pub fn verify_rank1_modular(
    m: &SL2Z,
    z: ComplexValue,
    tau: ComplexValue,
    w: ComplexValue,
    tol: f64,
) -> Result<f64> {
    let dt = m.denom(tau);
    let lhs = psi_hat(z / dt, m.apply(tau), m.apply(w), tol)?;
    let nu3 = crate::modular::eta_multiplier(m)?.pow(3).to_complex();
    let rhs = chi_factor_matrix(m, tau, w)
        * nu3
        * sqrt_principal(dt)
        * (ComplexValue::new(0.0, std::f64::consts::PI) * (m.c as f64) * z * z / dt).exp()
        * psi_hat(z, tau, w, tol)?;
    Ok((lhs - rhs).norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn rank1() -> LatticePair {
        LatticePair::new(vec![vec![1]], vec![1], vec![1.0], vec![rat(0, 1)]).unwrap()
    }

    fn rank2() -> LatticePair {
        LatticePair::new(
            vec![vec![2, 1], vec![1, 2]],
            vec![0, 0],
            vec![1.0 / 2f64.sqrt(), 0.0],
            vec![rat(0, 1), rat(0, 1)],
        )
        .unwrap()
    }

    fn c(re: f64, im: f64) -> ComplexValue {
        ComplexValue::new(re, im)
    }

    #[test]
    fn psi_at_i_matches_direct_series() {
        // psi(0; i) = 2i sum_{n>=0} (-1)^n e^{-pi (n+1/2)^2}: two independent
        // truncation depths of the folded series agree
        let deep: f64 = (0..40)
            .map(|n| {
                let s = n as f64 + 0.5;
                (if n % 2 == 0 { 2.0 } else { -2.0 }) * (-std::f64::consts::PI * s * s).exp()
            })
            .sum();
        let shallow: f64 = (0..8)
            .map(|n| {
                let s = n as f64 + 0.5;
                (if n % 2 == 0 { 2.0 } else { -2.0 }) * (-std::f64::consts::PI * s * s).exp()
            })
            .sum();
        assert!((deep - shallow).abs() < 1e-15);
        let v = psi_false(c(0.0, 0.0), c(0.0, 1.0), 1e-13).unwrap();
        assert!((v - c(0.0, deep)).norm() < 1e-13, "{v}");
    }

    #[test]
    fn psi_is_even_in_z() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let z = c(rng.gen_range(-0.4..0.4), rng.gen_range(-0.3..0.3));
            let tau = c(rng.gen_range(-0.5..0.5), rng.gen_range(0.7..1.6));
            let a = psi_false(z, tau, 1e-12).unwrap();
            let b = psi_false(-z, tau, 1e-12).unwrap();
            assert!((a - b).norm() < 1e-11 * (1.0 + a.norm()), "z = {z}, tau = {tau}");
        }
    }

    #[test]
    fn psi_invariant_under_t() {
        // termwise: q^{(n+1/2)^2/2} gains e^{pi i (n+1/2)^2} = e^{pi i/4} i^{n(n+1)}
        // and the full sum is invariant up to the constant phase e^{pi i/4}
        let tau = c(0.13, 0.9);
        let z = c(0.2, 0.1);
        let a = psi_false(z, tau + 1.0, 1e-12).unwrap();
        let phase = ComplexValue::from_polar(1.0, std::f64::consts::FRAC_PI_4);
        let b = phase * psi_false(z, tau, 1e-12).unwrap();
        assert!((a - b).norm() < 1e-11 * (1.0 + b.norm()), "{a} vs {b}");
    }

    #[test]
    fn completion_limit_recovers_psi() {
        // as Im(w) grows, erf -> sgn at rate e^{-pi (Im w - 1)/4}; check the
        // error shrinks accordingly and is negligible by Im(w) = 41
        let b = psi_false(c(0.0, 0.0), c(0.0, 1.0), 1e-12).unwrap();
        let e11 = (psi_hat(c(0.0, 0.0), c(0.0, 1.0), c(0.01, 11.0), 1e-12).unwrap() - b).norm();
        let e21 = (psi_hat(c(0.0, 0.0), c(0.0, 1.0), c(0.01, 21.0), 1e-12).unwrap() - b).norm();
        let e41 = (psi_hat(c(0.0, 0.0), c(0.0, 1.0), c(0.01, 41.0), 1e-12).unwrap() - b).norm();
        assert!(e11 < 1e-3 && e21 < 1e-6 && e41 < 1e-10, "{e11} {e21} {e41}");
        assert!(e21 < e11 && e41 < e21);
    }

    #[test]
    fn rank1_lattice_sum_equals_psi() {
        // termwise: B(n, z + 1/2) with n in 1/2 + Z makes the lattice series
        // reproduce psi exactly (prefactor 1, checked, not assumed)
        let lat = rank1();
        for (z, tau) in [
            (c(0.0, 0.0), c(0.0, 1.0)),
            (c(0.2, 0.1), c(0.3, 0.8)),
            (c(-0.1, -0.2), c(-0.4, 1.3)),
        ] {
            let a = big_psi(&lat, &[z], tau, 1e-12).unwrap();
            let b = psi_false(z, tau, 1e-12).unwrap();
            assert!((a - b).norm() < 1e-11 * (1.0 + b.norm()), "z = {z}: {a} vs {b}");
        }
        // and for the completion
        let a = big_psi_hat(&lat, &[c(0.1, 0.05)], c(0.2, 0.7), c(-0.1, 1.1), 1e-12).unwrap();
        let b = psi_hat(c(0.1, 0.05), c(0.2, 0.7), c(-0.1, 1.1), 1e-12).unwrap();
        assert!((a - b).norm() < 1e-11 * (1.0 + b.norm()), "{a} vs {b}");
    }

    #[test]
    fn direction_flip_negates_big_psi() {
        let lat = rank2();
        let flipped = LatticePair::new(
            lat.gram().to_vec(),
            lat.ell().to_vec(),
            lat.direction().iter().map(|v| -v).collect(),
            lat.shift().to_vec(),
        )
        .unwrap();
        let z = [c(0.0, 0.0), c(0.0, 0.0)];
        let tau = c(0.1, 0.9);
        let a = big_psi(&lat, &z, tau, 1e-12).unwrap();
        let b = big_psi(&flipped, &z, tau, 1e-12).unwrap();
        assert!((a + b).norm() < 1e-12 * (1.0 + a.norm()));
    }

    #[test]
    fn elliptic_shift_law_rank1() {
        let lat = rank1();
        for (m, r) in [(1i64, 0i64), (0, 1), (1, 1)] {
            let res = verify_elliptic_shift(
                &lat,
                &[c(0.11, 0.07)],
                c(0.2, 0.9),
                c(-0.3, 1.4),
                &[m],
                &[r],
                1e-11,
            )
            .unwrap();
            assert!(res < 1e-8, "(m,r) = ({m},{r}): residual {res}");
        }
    }

    #[test]
    fn t_law_rank2_with_dual_shift() {
        let lat = rank2().with_shift(vec![rat(2, 3), rat(-1, 3)]).unwrap();
        let z = [c(0.05, 0.02), c(-0.04, 0.03)];
        let res = verify_jacobi_t(&lat, &z, c(0.17, 0.85), c(-0.2, 1.2), 1e-11).unwrap();
        assert!(res < 1e-8, "residual {res}");
    }

    #[test]
    fn s_law_rank1_fixture() {
        let res = verify_jacobi_s(
            &rank1(),
            &[c(0.0, 0.0)],
            c(0.2, 0.5),
            c(0.0, 2.0),
            1e-11,
        )
        .unwrap();
        assert!(res < 1e-8, "residual {res}");
    }

    #[test]
    fn s_law_rank2_fixture() {
        let lat = rank2().with_shift(vec![rat(2, 3), rat(-1, 3)]).unwrap();
        let z = [c(0.03, 0.01), c(-0.02, 0.02)];
        let res = verify_jacobi_s(&lat, &z, c(0.1, 0.8), c(-0.15, 1.3), 1e-10).unwrap();
        assert!(res < 1e-6, "residual {res}");
    }

    #[test]
    fn rank1_modular_law_generic_matrix() {
        let m = SL2Z::new(2, 1, 1, 1).unwrap();
        let res = verify_rank1_modular(&m, c(0.1, 0.05), c(0.15, 0.9), c(-0.2, 1.4), 1e-11).unwrap();
        assert!(res < 1e-8, "residual {res}");
    }

    #[test]
    fn branch_point_degenerates_to_zero() {
        // tau = w: the erf argument scale vanishes, so Psi_hat is identically 0
        let v = big_psi_hat(&rank1(), &[c(0.1, 0.0)], c(0.2, 0.8), c(0.2, 0.8), 1e-12).unwrap();
        assert!(v.norm() < 1e-14);
    }
}
