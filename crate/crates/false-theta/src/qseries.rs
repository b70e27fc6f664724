//! Exact integer q-series arithmetic.
//!
//! Ground truth for the coefficient strips alpha_f(n), alpha_g(n) and the
//! unimodal counts u(n) = alpha_g(n) - alpha_f(n), plus a combinatorial
//! enumeration oracle independent of the series arithmetic.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Exact integer q-expansion `q^(offset24/24) * sum_n coeffs[n] q^n`.
///
/// The fractional prefactor carries the eta-quotient offsets: eta has
/// offset24 = 1, f = q^(1/24)(1 + q + ...) has offset24 = 1, g = 1/eta^2 has
/// offset24 = -2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntSeries {
    offset24: i64,
    coeffs: Vec<BigInt>,
}

impl IntSeries {
    pub fn new(offset24: i64, coeffs: Vec<BigInt>) -> Self {
        assert!(!coeffs.is_empty(), "IntSeries needs at least one coefficient");
        Self { offset24, coeffs }
    }

    pub fn one(order: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); order];
        coeffs[0] = BigInt::one();
        Self { offset24: 0, coeffs }
    }

    pub fn offset24(&self) -> i64 {
        self.offset24
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, n: usize) -> &BigInt {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Product, truncated to the shorter of the two orders (all coefficients
    /// up to that order are exact).
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut coeffs = vec![BigInt::zero(); order];
        for (i, a) in self.coeffs.iter().take(order).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(order - i).enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        Self { offset24: self.offset24 + other.offset24, coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.offset24, other.offset24, "offset mismatch in subtraction");
        let order = self.order().min(other.order());
        let coeffs = (0..order).map(|n| &self.coeffs[n] - &other.coeffs[n]).collect();
        Self { offset24: self.offset24, coeffs }
    }
}

/// (q;q)_infinity = prod_{j>=1} (1 - q^j) to the given order, via the
/// pentagonal number expansion sum_j (-1)^j q^(j(3j-1)/2).
pub fn euler_product(order: usize) -> Result<IntSeries> {
    if order == 0 {
        return Err(Error::Domain("euler_product: order must be >= 1".into()));
    }
    let mut coeffs = vec![BigInt::zero(); order];
    let mut j: i64 = 0;
    loop {
        let mut hit = false;
        for jj in [j, -j] {
            let e = jj * (3 * jj - 1) / 2;
            if e >= 0 && (e as usize) < order {
                hit = true;
                let sign = if jj.rem_euclid(2) == 0 { BigInt::one() } else { -BigInt::one() };
                coeffs[e as usize] += sign;
            }
            if jj == 0 {
                break;
            }
        }
        if j > 0 && !hit {
            break;
        }
        j += 1;
    }
    Ok(IntSeries { offset24: 0, coeffs })
}

/// Multiplicative inverse of a series with unit constant term, to `order`.
pub fn series_inverse(s: &IntSeries, order: usize) -> Result<IntSeries> {
    if order == 0 {
        return Err(Error::Domain("series_inverse: order must be >= 1".into()));
    }
    let a0 = &s.coeffs[0];
    if a0.abs() != BigInt::one() {
        return Err(Error::Domain(format!("series_inverse: constant term {a0} is not a unit")));
    }
    let mut inv = vec![BigInt::zero(); order];
    inv[0] = a0.clone(); // 1/(+-1) = +-1
    for n in 1..order {
        let mut acc = BigInt::zero();
        for k in 1..=n {
            if k < s.coeffs.len() && !s.coeffs[k].is_zero() {
                acc += &s.coeffs[k] * &inv[n - k];
            }
        }
        inv[n] = -a0 * acc;
    }
    Ok(IntSeries { offset24: -s.offset24, coeffs: inv })
}

/// The folded numerator of f: sum_{n>=0} (-1)^n q^(n(n+1)/2).
fn psi_folded(order: usize) -> IntSeries {
    let mut coeffs = vec![BigInt::zero(); order];
    let mut n: i64 = 0;
    loop {
        let e = n * (n + 1) / 2;
        if e as usize >= order {
            break;
        }
        coeffs[e as usize] += if n % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        n += 1;
    }
    IntSeries { offset24: 0, coeffs }
}

/// alpha_f(0..order-1): f = -(i/2) psi / eta^2 = q^(1/24) sum alpha_f(n) q^n.
pub fn coeffs_f(order: usize) -> Result<IntSeries> {
    let ep = euler_product(order)?;
    let inv_sq = series_inverse(&ep.mul(&ep), order)?;
    let mut out = psi_folded(order).mul(&inv_sq);
    out.offset24 = 1;
    Ok(out)
}

/// alpha_g(0..order-1): g = 1/eta^2 = q^(-1/12) sum alpha_g(n) q^n.
pub fn coeffs_g(order: usize) -> Result<IntSeries> {
    let ep = euler_product(order)?;
    let mut out = series_inverse(&ep.mul(&ep), order)?;
    out.offset24 = -2;
    Ok(out)
}

/// Exact u(n) = alpha_g(n) - alpha_f(n) for n >= 1.
pub fn unimodal_count(n: usize) -> Result<BigInt> {
    if n < 1 {
        return Err(Error::Domain(
            "unimodal_count: n must be >= 1 (the generating function forces u(0) = 0)".into(),
        ));
    }
    let order = n + 1;
    let g = coeffs_g(order)?;
    let f = coeffs_f(order)?;
    Ok(g.coeff(n) - f.coeff(n))
}

/// Counts unimodal sequences of size n by enumerating the unique
/// decomposition (ascending run with parts < m) + (t >= 1 copies of the peak
/// m) + (descending run with parts < m), so no sequence is double-counted.
pub fn brute_force_unimodal(n: usize) -> Result<BigInt> {
    if n < 1 || n > 40 {
        return Err(Error::CostGuard(format!("brute_force_unimodal: n = {n} outside 1..=40")));
    }
    // p[i][b] = partitions of i into parts <= b
    let mut p = vec![vec![BigInt::zero(); n + 1]; n + 1];
    for b in 0..=n {
        p[0][b] = BigInt::one();
    }
    for i in 1..=n {
        for b in 1..=n {
            p[i][b] = p[i][b - 1].clone();
            if i >= b {
                let add = p[i - b][b].clone();
                p[i][b] += add;
            }
        }
    }
    let mut total = BigInt::zero();
    for m in 1..=n {
        for t in 1.. {
            if t * m > n {
                break;
            }
            let rest = n - t * m;
            for i in 0..=rest {
                total += &p[i][m - 1] * &p[rest - i][m - 1];
            }
        }
    }
    Ok(total)
}
