//! Exact SL2(Z) arithmetic: matrices, roots of unity with rational exponent,
//! Dedekind sums, the eta multiplier system, and the two Kloosterman-type
//! sums entering the exact formula for unimodal counts. All phases are held
//! as exact rationals modulo 1 and converted to floating point once, at the
//! end, so no accumulation of phase error is possible.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, ToPrimitive, Zero};

use crate::numeric::ComplexValue;
use crate::{Error, Result};

/// An element of SL2(Z), row-major `(a b; c d)` with `ad - bc = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SL2Z {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl SL2Z {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        if a.checked_mul(d)
            .zip(b.checked_mul(c))
            .and_then(|(ad, bc)| ad.checked_sub(bc))
            != Some(1)
        {
            return Err(Error::Domain(format!("({a} {b}; {c} {d}) is not in SL2(Z)")));
        }
        Ok(Self { a, b, c, d })
    }

    pub fn identity() -> Self {
        Self { a: 1, b: 0, c: 0, d: 1 }
    }

    /// T = (1 1; 0 1), the unit translation.
    pub fn t() -> Self {
        Self { a: 1, b: 1, c: 0, d: 1 }
    }

    /// S = (0 -1; 1 0), the inversion.
    pub fn s() -> Self {
        Self { a: 0, b: -1, c: 1, d: 0 }
    }

    pub fn mul(&self, o: &SL2Z) -> SL2Z {
        SL2Z {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }

    pub fn inverse(&self) -> SL2Z {
        SL2Z { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    /// Mobius action on the upper half plane.
    pub fn apply(&self, tau: ComplexValue) -> ComplexValue {
        (self.a as f64 * tau + self.b as f64) / (self.c as f64 * tau + self.d as f64)
    }

    /// The automorphy denominator c*tau + d.
    pub fn denom(&self, tau: ComplexValue) -> ComplexValue {
        self.c as f64 * tau + self.d as f64
    }
}

/// A root of unity `e^(2 pi i x)` with exact rational exponent `x`, stored
/// reduced modulo 1 into [0, 1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnityPower {
    exp: BigRational,
}

impl UnityPower {
    pub fn new(exp: BigRational) -> Self {
        let one = BigRational::one();
        let mut e = &exp - exp.floor();
        if e >= one {
            e -= one; // guard against floor rounding at exact integers
        }
        Self { exp: e }
    }

    pub fn from_frac(num: i64, den: i64) -> Self {
        assert!(den != 0);
        Self::new(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn one() -> Self {
        Self { exp: BigRational::zero() }
    }

    /// The exponent x in [0, 1), as an exact rational.
    pub fn exponent(&self) -> &BigRational {
        &self.exp
    }

    pub fn mul(&self, o: &UnityPower) -> UnityPower {
        UnityPower::new(&self.exp + &o.exp)
    }

    pub fn inv(&self) -> UnityPower {
        UnityPower::new(-&self.exp)
    }

    pub fn pow(&self, k: i64) -> UnityPower {
        UnityPower::new(&self.exp * BigRational::from_i64(k).unwrap())
    }

    pub fn to_complex(&self) -> ComplexValue {
        let x = self.exp.to_f64().expect("unity exponent fits in f64");
        ComplexValue::from_polar(1.0, 2.0 * std::f64::consts::PI * x)
    }
}

/// The representative `h'` in [0, k) with `h h' = -1 (mod k)`; requires
/// gcd(h, k) = 1 and k >= 1.
pub fn inverse_neg_mod(h: i64, k: i64) -> Result<i64> {
    if k < 1 {
        return Err(Error::Domain(format!("inverse_neg_mod: k = {k} must be >= 1")));
    }
    let (g, x, _) = egcd(h.rem_euclid(k), k);
    if g != 1 {
        return Err(Error::Domain(format!("inverse_neg_mod: gcd({h}, {k}) = {g} != 1")));
    }
    // x satisfies h x = 1 (mod k); negate it.
    Ok((-x).rem_euclid(k.max(1)))
}

fn egcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = egcd(b, a.rem_euclid(b));
        (g, y, x - (a.div_euclid(b)) * y)
    }
}

/// Exact Dedekind sum s(h, k) = sum_{r=1}^{k-1} ((r/k)) ((hr/k)) for k >= 1,
/// gcd(h, k) = 1, where ((x)) is the sawtooth x - floor(x) - 1/2 away from
/// integers and 0 at integers.
pub fn dedekind_sum(h: i64, k: i64) -> Result<BigRational> {
    if k < 1 {
        return Err(Error::Domain(format!("dedekind_sum: k = {k} must be >= 1")));
    }
    if num_integer::gcd(h, k) != 1 {
        return Err(Error::Domain(format!("dedekind_sum: gcd({h}, {k}) != 1")));
    }
    // With gcd(h,k) = 1, hr/k is never an integer for 0 < r < k, so
    // s(h,k) = sum_r r*(hr mod k)/k^2 - sum_r r/(2k); accumulate both pieces
    // exactly in i128 and form the rational at the end.
    let mut num: i128 = 0;
    let mut half: i128 = 0;
    for r in 1..k {
        let m = ((h as i128 * r as i128).rem_euclid(k as i128)) as i64;
        if m != 0 {
            num += r as i128 * m as i128; // r * (hr mod k)
            half += r as i128; // contributes r/k * 1/2
        }
    }
    // s = num/k^2 - half/(2k)
    let k_big = BigInt::from(k);
    let s = BigRational::new(BigInt::from(num), &k_big * &k_big)
        - BigRational::new(BigInt::from(half), BigInt::from(2) * &k_big);
    Ok(s)
}

/// The eta multiplier nu(M), an exact 24th root of unity (times a sign
/// structure folded into the rational exponent): for c > 0,
/// `nu(M) = exp(pi i ((a+d)/(12c) - 1/4 + s(-d, c)))`; for c = 0 (so
/// a = d = 1), `nu = exp(pi i b / 12)`.
pub fn eta_multiplier(m: &SL2Z) -> Result<UnityPower> {
    if m.c == 0 {
        if m.a == 1 && m.d == 1 {
            return Ok(UnityPower::new(BigRational::new(BigInt::from(m.b), BigInt::from(24))));
        }
        return Err(Error::Domain(format!(
            "eta_multiplier: c = 0 requires a = d = 1, got ({} {}; {} {})",
            m.a, m.b, m.c, m.d
        )));
    }
    if m.c < 0 {
        return Err(Error::Domain(
            "eta_multiplier: c < 0; negate the matrix (it acts identically on tau)".into(),
        ));
    }
    let c = m.c;
    // exponent of e^{2 pi i x}: x = ((a+d)/(12c) - 1/4 + s(-d, c)) / 2
    let s = dedekind_sum(-m.d, c)?;
    let x = (BigRational::new(BigInt::from(m.a + m.d), BigInt::from(12 * c))
        - BigRational::new(BigInt::one(), BigInt::from(4))
        + s)
        / BigRational::from_i64(2).unwrap();
    Ok(UnityPower::new(x))
}

/// The matrix `M_{h,k} = (h', -(h h' + 1)/k; k, -h)` sending the cusp h/k to
/// h'/k, with `h'` the canonical representative from [`inverse_neg_mod`].
pub fn matrix_hk(h: i64, k: i64) -> Result<SL2Z> {
    let hp = inverse_neg_mod(h, k)?;
    let b = -(h * hp + 1) / k;
    SL2Z::new(hp, b, k, -h)
}

/// Kloosterman-type sum for the modular part:
/// `K_k(n) = i * sum_{h mod k, (h,k)=1} nu(M_{h,k})^2 zeta_{12k}^{-(12n-1)h - h'}`.
pub fn kloosterman_g(k: i64, n: i64) -> Result<ComplexValue> {
    if k < 1 {
        return Err(Error::Domain(format!("kloosterman_g: k = {k} must be >= 1")));
    }
    let mut sum = ComplexValue::new(0.0, 0.0);
    for h in 0..k {
        if num_integer::gcd(h, k) != 1 {
            continue;
        }
        let hp = inverse_neg_mod(h, k)?;
        let nu = eta_multiplier(&matrix_hk(h, k)?)?;
        let phase = nu
            .pow(2)
            .mul(&UnityPower::new(BigRational::new(
                BigInt::from(-(12 * n - 1) * h - hp),
                BigInt::from(12 * k),
            )))
            // the leading factor i = e^{2 pi i / 4}
            .mul(&UnityPower::from_frac(1, 4));
        sum += phase.to_complex();
    }
    Ok(sum)
}

/// Kloosterman-type sum for the false part:
/// `K_k(n, r) = e^{3 pi i/4} (-1)^r sum_{h mod k, (h,k)=1}
///  nu(M_{h,k})^{-1} zeta_{24k}^{-(24n+1)h + (12r^2 + 12r + 1)h'}`.
pub fn kloosterman_f(k: i64, n: i64, r: i64) -> Result<ComplexValue> {
    if k < 1 {
        return Err(Error::Domain(format!("kloosterman_f: k = {k} must be >= 1")));
    }
    let mut sum = ComplexValue::new(0.0, 0.0);
    for h in 0..k {
        if num_integer::gcd(h, k) != 1 {
            continue;
        }
        let hp = inverse_neg_mod(h, k)?;
        let nu = eta_multiplier(&matrix_hk(h, k)?)?;
        let phase = nu
            .inv()
            .mul(&UnityPower::new(BigRational::new(
                BigInt::from(-(24 * n + 1) * h + (12 * r * r + 12 * r + 1) * hp),
                BigInt::from(24 * k),
            )))
            // e^{3 pi i/4} (-1)^r = e^{2 pi i (3/8 + r/2)}
            .mul(&UnityPower::from_frac(3 + 4 * (r.rem_euclid(2)), 8));
        sum += phase.to_complex();
    }
    Ok(sum)
}

/// Dedekind eta at tau in the upper half plane, via the pentagonal-number
/// expansion `q^(1/24) sum_j (-1)^j q^(j(3j-1)/2)`.
pub fn eta(tau: ComplexValue) -> Result<ComplexValue> {
    if tau.im <= 0.0 {
        return Err(Error::Domain(format!("eta: Im(tau) = {} must be positive", tau.im)));
    }
    let two_pi_i = ComplexValue::new(0.0, 2.0 * std::f64::consts::PI);
    let log_q = two_pi_i * tau;
    let mut sum = ComplexValue::new(0.0, 0.0);
    let decay = 2.0 * std::f64::consts::PI * tau.im;
    let mut j: i64 = 0;
    loop {
        let mut any = false;
        for jj in [j, -j] {
            let e = jj * (3 * jj - 1) / 2;
            if decay * e as f64 <= 40.0 + decay {
                any = true;
                let sign = if jj.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
                sum += sign * (log_q * e as f64).exp();
            }
            if jj == 0 {
                break;
            }
        }
        if !any && j > 0 {
            break;
        }
        j += 1;
        if j > 100_000 {
            return Err(Error::CostGuard("eta: series term budget exceeded".into()));
        }
    }
    Ok((log_q / 24.0).exp() * sum)
}

/// eta(tau)^3 via the lacunary expansion
/// `q^(1/8) sum_{n>=0} (-1)^n (2n+1) q^(n(n+1)/2)`.
pub fn eta_cubed(tau: ComplexValue) -> Result<ComplexValue> {
    if tau.im <= 0.0 {
        return Err(Error::Domain(format!("eta_cubed: Im(tau) = {} must be positive", tau.im)));
    }
    let two_pi_i = ComplexValue::new(0.0, 2.0 * std::f64::consts::PI);
    let log_q = two_pi_i * tau;
    let decay = 2.0 * std::f64::consts::PI * tau.im;
    let mut sum = ComplexValue::new(0.0, 0.0);
    let mut n: i64 = 0;
    loop {
        let e = n * (n + 1) / 2;
        if decay * e as f64 > 45.0 + decay && n > 0 {
            break;
        }
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * (2 * n + 1) as f64 * (log_q * e as f64).exp();
        n += 1;
        if n > 100_000 {
            return Err(Error::CostGuard("eta_cubed: series term budget exceeded".into()));
        }
    }
    Ok((log_q / 8.0).exp() * sum)
}
