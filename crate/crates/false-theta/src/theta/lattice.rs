//! Positive-definite lattice data for the multi-variable theta series: the
//! Gram matrix, characteristic vector, sign direction, and rational shift,
//! plus Smith normal form and the enumeration of the discriminant group.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

const MAX_RANK: usize = 4;

/// Lattice data (L, B, Q, ell, c, mu): `B(m, n) = m^T A n`, `Q(n) = B(n,n)/2`.
///
/// Constructor invariants: A symmetric positive definite integer matrix;
/// `ell` characteristic (`A_ii + (A ell)_i` even for every i, equivalently
/// `Q(n) + B(ell, n)/2` integral on L); `c^T A c = 1` (i.e. 2Q(c) = 1);
/// `A mu` integral (mu in the dual lattice).
#[derive(Debug, Clone)]
pub struct LatticePair {
    gram: Vec<Vec<i64>>,
    ell: Vec<i64>,
    c: Vec<f64>,
    mu: Vec<BigRational>,
}

impl LatticePair {
    pub fn new(
        gram: Vec<Vec<i64>>,
        ell: Vec<i64>,
        c: Vec<f64>,
        mu: Vec<BigRational>,
    ) -> Result<Self> {
        let n = gram.len();
        if n == 0 || n > MAX_RANK {
            return Err(Error::CostGuard(format!("lattice rank {n} outside 1..={MAX_RANK}")));
        }
        if gram.iter().any(|row| row.len() != n) || ell.len() != n || c.len() != n || mu.len() != n
        {
            return Err(Error::Domain("lattice data dimensions disagree".into()));
        }
        for i in 0..n {
            for j in 0..n {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::Domain("Gram matrix is not symmetric".into()));
                }
            }
        }
        // positive definiteness via leading principal minors (exact)
        for m in 1..=n {
            let minor: Vec<Vec<BigInt>> = (0..m)
                .map(|i| (0..m).map(|j| BigInt::from(gram[i][j])).collect())
                .collect();
            if det_bigint(&minor) <= BigInt::zero() {
                return Err(Error::Domain(format!(
                    "Gram matrix is not positive definite (minor {m} <= 0)"
                )));
            }
        }
        // characteristic vector: A_ii + (A ell)_i even
        for i in 0..n {
            let a_ell: i64 = (0..n).map(|j| gram[i][j] * ell[j]).sum();
            if (gram[i][i] + a_ell) % 2 != 0 {
                return Err(Error::Domain(format!(
                    "ell is not characteristic: A_{{{i}{i}}} + (A ell)_{i} is odd"
                )));
            }
        }
        // 2Q(c) = 1
        let mut cac = 0.0;
        for i in 0..n {
            for j in 0..n {
                cac += c[i] * gram[i][j] as f64 * c[j];
            }
        }
        if (cac - 1.0).abs() > 1e-10 {
            return Err(Error::Domain(format!("direction must satisfy c^T A c = 1, got {cac}")));
        }
        // A mu integral
        for i in 0..n {
            let mut v = BigRational::zero();
            for j in 0..n {
                v += BigRational::from_i64(gram[i][j]).unwrap() * &mu[j];
            }
            if !v.is_integer() {
                return Err(Error::Domain(format!("shift mu is not in the dual lattice: (A mu)_{i} = {v}")));
            }
        }
        Ok(Self { gram, ell, c, mu })
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn ell(&self) -> &[i64] {
        &self.ell
    }

    pub fn direction(&self) -> &[f64] {
        &self.c
    }

    pub fn shift(&self) -> &[BigRational] {
        &self.mu
    }

    /// Same lattice with the shift replaced by a dual-coset representative.
    pub fn with_shift(&self, mu: Vec<BigRational>) -> Result<Self> {
        Self::new(self.gram.clone(), self.ell.clone(), self.c.clone(), mu)
    }

    /// |det A| = |L*/L|.
    pub fn discriminant(&self) -> BigInt {
        let m: Vec<Vec<BigInt>> = self
            .gram
            .iter()
            .map(|row| row.iter().map(|&v| BigInt::from(v)).collect())
            .collect();
        det_bigint(&m).abs()
    }

    /// B(u, v) = u^T A v for real vectors.
    pub fn bilinear(&self, u: &[f64], v: &[f64]) -> f64 {
        let mut s = 0.0;
        for i in 0..self.rank() {
            for j in 0..self.rank() {
                s += u[i] * self.gram[i][j] as f64 * v[j];
            }
        }
        s
    }

    /// Q(v) = B(v, v)/2.
    pub fn quadratic(&self, v: &[f64]) -> f64 {
        0.5 * self.bilinear(v, v)
    }

    /// Exact B(u, v) for rational vectors.
    pub fn bilinear_exact(&self, u: &[BigRational], v: &[BigRational]) -> BigRational {
        let mut s = BigRational::zero();
        for i in 0..self.rank() {
            for j in 0..self.rank() {
                s += &u[i] * BigRational::from_i64(self.gram[i][j]).unwrap() * &v[j];
            }
        }
        s
    }

    /// Exact Q(v) for a rational vector.
    pub fn quadratic_exact(&self, v: &[BigRational]) -> BigRational {
        self.bilinear_exact(v, v) / BigRational::from_i64(2).unwrap()
    }

    /// The base point mu + ell/2 of the shifted lattice, exactly.
    pub fn base_point(&self) -> Vec<BigRational> {
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        (0..self.rank())
            .map(|i| &self.mu[i] + &half * BigRational::from_i64(self.ell[i]).unwrap())
            .collect()
    }

    /// Smallest eigenvalue of A, by bisection on the characteristic
    /// polynomial sign (the matrix is positive definite, so it is in
    /// (0, max_i sum_j |A_ij|]).
    pub fn lambda_min(&self) -> f64 {
        let n = self.rank();
        let hi0 = self
            .gram
            .iter()
            .map(|row| row.iter().map(|v| v.abs() as f64).sum::<f64>())
            .fold(0.0f64, f64::max);
        let charpoly_sign = |lam: f64| -> f64 {
            // det(A - lam I) via Gaussian elimination with partial pivoting
            let mut m: Vec<Vec<f64>> = self
                .gram
                .iter()
                .enumerate()
                .map(|(i, row)| {
                    row.iter()
                        .enumerate()
                        .map(|(j, &v)| v as f64 - if i == j { lam } else { 0.0 })
                        .collect()
                })
                .collect();
            let mut det = 1.0;
            for col in 0..n {
                let piv = (col..n).max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs())).unwrap();
                if m[piv][col] == 0.0 {
                    return 0.0;
                }
                if piv != col {
                    m.swap(piv, col);
                    det = -det;
                }
                det *= m[col][col];
                for row in col + 1..n {
                    let f = m[row][col] / m[col][col];
                    for k in col..n {
                        let sub = f * m[col][k];
                        m[row][k] -= sub;
                    }
                }
            }
            det
        };
        let (mut lo, mut hi) = (0.0f64, hi0);
        // det(A - lam I) has sign (+) below the smallest eigenvalue
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if charpoly_sign(mid) > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    }

    /// Representatives of L*/L, reduced to [0,1)^N; exactly |det A| classes.
    pub fn dual_cosets(&self) -> Result<Vec<Vec<BigRational>>> {
        let n = self.rank();
        let a: Vec<Vec<BigInt>> = self
            .gram
            .iter()
            .map(|row| row.iter().map(|&v| BigInt::from(v)).collect())
            .collect();
        let SmithForm { d, v, .. } = snf(&a)?;
        let v_inv = unimodular_inverse(&v)?;
        // L* / L = V^{-1} D^{-1} Z^N / Z^N: representatives V^{-1} (k_i / d_i)
        let divisors: Vec<i64> = (0..n)
            .map(|i| d[i][i].to_i64().ok_or_else(|| Error::Range("SNF divisor overflow".into())))
            .collect::<Result<_>>()?;
        let mut reps = Vec::new();
        let mut idx = vec![0i64; n];
        loop {
            let mut rep = vec![BigRational::zero(); n];
            for row in 0..n {
                for col in 0..n {
                    rep[row] += BigRational::new(&v_inv[row][col] * BigInt::from(idx[col]), BigInt::from(divisors[col]));
                }
            }
            for x in rep.iter_mut() {
                let f = x.floor();
                *x -= f;
            }
            reps.push(rep);
            // odometer over 0..d_i
            let mut pos = 0;
            loop {
                if pos == n {
                    let total = divisors.iter().product::<i64>();
                    debug_assert_eq!(reps.len() as i64, total);
                    return Ok(reps);
                }
                idx[pos] += 1;
                if idx[pos] < divisors[pos] {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
        }
    }
}

/// Smith normal form A = U D V with U, V unimodular and D diagonal with
/// d_i | d_{i+1}.
pub struct SmithForm {
    pub u: Vec<Vec<BigInt>>,
    pub d: Vec<Vec<BigInt>>,
    pub v: Vec<Vec<BigInt>>,
}

pub fn snf(a: &[Vec<BigInt>]) -> Result<SmithForm> {
    let n = a.len();
    if n == 0 || a.iter().any(|r| r.len() != n) {
        return Err(Error::Domain("snf: matrix must be square and nonempty".into()));
    }
    if det_bigint(a).is_zero() {
        return Err(Error::Domain("snf: matrix is singular".into()));
    }
    let mut d: Vec<Vec<BigInt>> = a.to_vec();
    let mut u = identity(n);
    let mut v = identity(n);
    // Row ops on D are tracked as inverse ops on U (A = U D V throughout);
    // column ops likewise on V.
    for t in 0..n {
        loop {
            // find pivot: minimal nonzero |entry| in the trailing block
            let mut pivot: Option<(usize, usize)> = None;
            for i in t..n {
                for j in t..n {
                    if !d[i][j].is_zero()
                        && pivot.map_or(true, |(pi, pj)| d[i][j].abs() < d[pi][pj].abs())
                    {
                        pivot = Some((i, j));
                    }
                }
            }
            let (pi, pj) = pivot.ok_or_else(|| Error::Domain("snf: singular block".into()))?;
            if pi != t {
                d.swap(pi, t);
                for row in u.iter_mut() {
                    row.swap(pi, t);
                }
            }
            if pj != t {
                for row in d.iter_mut() {
                    row.swap(pj, t);
                }
                v.swap(pj, t);
            }
            let mut clean = true;
            for i in t + 1..n {
                if !d[i][t].is_zero() {
                    let qt = floored_div(&d[i][t], &d[t][t]);
                    for j in t..n {
                        let sub = &qt * &d[t][j];
                        d[i][j] -= sub;
                    }
                    for k in 0..n {
                        let add = &qt * &u[k][i];
                        u[k][t] += add;
                    }
                    if !d[i][t].is_zero() {
                        clean = false;
                    }
                }
            }
            for j in t + 1..n {
                if !d[t][j].is_zero() {
                    let qt = floored_div(&d[t][j], &d[t][t]);
                    for i in t..n {
                        let sub = &qt * &d[i][t];
                        d[i][j] -= sub;
                    }
                    for k in 0..n {
                        let add = &qt * &v[j][k];
                        v[t][k] += add;
                    }
                    if !d[t][j].is_zero() {
                        clean = false;
                    }
                }
            }
            if clean
                && (t + 1..n).all(|i| d[i][t].is_zero())
                && (t + 1..n).all(|j| d[t][j].is_zero())
            {
                break;
            }
        }
    }
    // positive diagonal
    for t in 0..n {
        if d[t][t].is_negative() {
            for j in 0..n {
                d[t][j] = -d[t][j].clone();
                let neg = -v[t][j].clone();
                v[t][j] = neg;
            }
        }
    }
    // enforce divisibility d_i | d_{i+1}
    for t in 0..n {
        for s in t + 1..n {
            let (dt, ds) = (d[t][t].clone(), d[s][s].clone());
            if (&ds % &dt).is_zero() {
                continue;
            }
            let g = gcd_bigint(&dt, &ds);
            let l = &dt / &g * &ds;
            // replace (dt, ds) by (g, lcm) via standard 2x2 unimodular moves;
            // track on U and V by direct reconstruction of the 2x2 block
            let (x, y) = bezout(&dt, &ds);
            // row_t += row_s ; col_s adjustments — implemented by explicit
            // block transform: [g 0; 0 l] = P [dt 0; 0 ds] Q
            // with P = [x y; -ds/g dt/g], Q = [1 y*ds/g; 1  -x*dt/g]... to
            // avoid sign bookkeeping, just recombine through small matrices:
            apply_two_by_two(&mut d, &mut u, &mut v, t, s, &dt, &ds, &g, &l, &x, &y);
        }
    }
    Ok(SmithForm { u, d, v })
}

#[allow(clippy::too_many_arguments)]
fn apply_two_by_two(
    d: &mut [Vec<BigInt>],
    u: &mut [Vec<BigInt>],
    v: &mut [Vec<BigInt>],
    t: usize,
    s: usize,
    dt: &BigInt,
    ds: &BigInt,
    g: &BigInt,
    l: &BigInt,
    x: &BigInt,
    y: &BigInt,
) {
    // With x dt + y ds = g:
    //   P = [ x       y      ]   Q = [ 1   -y ds / g ]
    //       [ -ds/g   dt/g   ]       [ 1    x dt / g ]
    // satisfy P [dt 0; 0 ds] Q = [g 0; 0 l] and det P = det Q = 1 (up to
    // sign absorbed below). Update D directly and fold P^{-1}, Q^{-1} into
    // U, V so that A = U D V is preserved.
    let p = [
        [x.clone(), y.clone()],
        [-(ds / g), dt / g],
    ];
    let q = [
        [BigInt::one(), -(y * ds) / g],
        [BigInt::one(), (x * dt) / g],
    ];
    // D_block := P * diag(dt, ds) * Q  (should equal diag(g, l))
    let n = d.len();
    // rows t,s of D: D <- P * D
    for j in 0..n {
        let rt = &p[0][0] * &d[t][j] + &p[0][1] * &d[s][j];
        let rs = &p[1][0] * &d[t][j] + &p[1][1] * &d[s][j];
        d[t][j] = rt;
        d[s][j] = rs;
    }
    // cols t,s of D: D <- D * Q
    for row in d.iter_mut() {
        let ct = &row[t] * &q[0][0] + &row[s] * &q[1][0];
        let cs = &row[t] * &q[0][1] + &row[s] * &q[1][1];
        row[t] = ct;
        row[s] = cs;
    }
    // U <- U * P^{-1}; P^{-1} = adj(P) / det(P), det(P) = x dt/g + y ds/g = 1
    let pinv = [
        [p[1][1].clone(), -p[0][1].clone()],
        [-p[1][0].clone(), p[0][0].clone()],
    ];
    for row in u.iter_mut() {
        let ct = &row[t] * &pinv[0][0] + &row[s] * &pinv[1][0];
        let cs = &row[t] * &pinv[0][1] + &row[s] * &pinv[1][1];
        row[t] = ct;
        row[s] = cs;
    }
    // V <- Q^{-1} * V; det(Q) = x dt/g + y ds/g = 1
    let qinv = [
        [q[1][1].clone(), -q[0][1].clone()],
        [-q[1][0].clone(), q[0][0].clone()],
    ];
    let rt: Vec<BigInt> = (0..n).map(|j| &qinv[0][0] * &v[t][j] + &qinv[0][1] * &v[s][j]).collect();
    let rs: Vec<BigInt> = (0..n).map(|j| &qinv[1][0] * &v[t][j] + &qinv[1][1] * &v[s][j]).collect();
    v[t] = rt;
    v[s] = rs;
    let _ = l;
    let _ = g;
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

fn floored_div(a: &BigInt, b: &BigInt) -> BigInt {
    // round-to-nearest quotient keeps remainders small
    let half = b.abs() / BigInt::from(2);
    if a.is_negative() {
        -((-a + half) / b.abs()) * if b.is_negative() { -BigInt::one() } else { BigInt::one() }
    } else {
        ((a + half) / b.abs()) * if b.is_negative() { -BigInt::one() } else { BigInt::one() }
    }
}

fn gcd_bigint(a: &BigInt, b: &BigInt) -> BigInt {
    let (mut a, mut b) = (a.abs(), b.abs());
    while !b.is_zero() {
        let r = &a % &b;
        a = b;
        b = r;
    }
    a
}

fn bezout(a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
    // x a + y b = gcd(a, b)
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut x0, mut x1) = (BigInt::one(), BigInt::zero());
    let (mut y0, mut y1) = (BigInt::zero(), BigInt::one());
    while !r1.is_zero() {
        let qt = &r0 / &r1;
        let r2 = &r0 - &qt * &r1;
        let x2 = &x0 - &qt * &x1;
        let y2 = &y0 - &qt * &y1;
        r0 = r1;
        r1 = r2;
        x0 = x1;
        x1 = x2;
        y0 = y1;
        y1 = y2;
    }
    if r0.is_negative() {
        (-x0, -y0)
    } else {
        (x0, y0)
    }
}

/// Determinant of an exact integer matrix by cofactor expansion (rank <= 4).
pub fn det_bigint(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    match n {
        0 => BigInt::one(),
        1 => m[0][0].clone(),
        _ => {
            let mut acc = BigInt::zero();
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<BigInt>> = (1..n)
                    .map(|i| (0..n).filter(|&k| k != j).map(|k| m[i][k].clone()).collect())
                    .collect();
                let term = &m[0][j] * det_bigint(&minor);
                if j % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc
        }
    }
}

/// Inverse of a unimodular integer matrix (det = +-1) via the adjugate.
fn unimodular_inverse(m: &[Vec<BigInt>]) -> Result<Vec<Vec<BigInt>>> {
    let n = m.len();
    let det = det_bigint(m);
    if det.abs() != BigInt::one() {
        return Err(Error::Domain("matrix is not unimodular".into()));
    }
    let mut inv = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: Vec<Vec<BigInt>> = (0..n)
                .filter(|&r| r != j)
                .map(|r| (0..n).filter(|&c| c != i).map(|c| m[r][c].clone()).collect())
                .collect();
            let mut cof = det_bigint(&minor);
            if (i + j) % 2 == 1 {
                cof = -cof;
            }
            inv[i][j] = cof * &det; // dividing by det = multiplying, det^2 = 1
        }
    }
    Ok(inv)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big_mat(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect()
    }

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

    #[test]
    fn constructor_enforces_invariants() {
        // non-symmetric
        assert!(LatticePair::new(vec![vec![1, 1], vec![0, 1]], vec![0, 0], vec![1.0, 0.0], vec![rat(0, 1), rat(0, 1)]).is_err());
        // indefinite
        assert!(LatticePair::new(vec![vec![-1]], vec![1], vec![1.0], vec![rat(0, 1)]).is_err());
        // non-characteristic ell for A = (2,1;1,2): A_ii + (A ell)_i = 2 + 3 odd
        assert!(LatticePair::new(
            vec![vec![2, 1], vec![1, 2]],
            vec![1, 1],
            vec![1.0 / 2f64.sqrt(), 0.0],
            vec![rat(0, 1), rat(0, 1)]
        )
        .is_err());
        // wrong normalization of c
        assert!(LatticePair::new(vec![vec![1]], vec![1], vec![0.5], vec![rat(0, 1)]).is_err());
        // mu not in the dual
        assert!(LatticePair::new(vec![vec![2]], vec![0], vec![1.0 / 2f64.sqrt()], vec![rat(1, 3)]).is_err());
        // valid fixtures
        rank1();
        rank2();
        // valid dual shift for the rank-2 fixture: A^{-1}(1,0) = (2/3, -1/3)
        rank2().with_shift(vec![rat(2, 3), rat(-1, 3)]).unwrap();
    }

    #[test]
    fn snf_examples() {
        for mat in [big_mat(&[&[1, 0], &[0, 1]]), big_mat(&[&[2]]), big_mat(&[&[2, 1], &[1, 2]]), big_mat(&[&[4, 2], &[2, 8]]), big_mat(&[&[0, 3], &[5, 1]])] {
            let SmithForm { u, d, v } = snf(&mat).unwrap();
            // A = U D V reconstruction
            let n = mat.len();
            for i in 0..n {
                for j in 0..n {
                    let mut s = BigInt::zero();
                    for k in 0..n {
                        for l in 0..n {
                            s += &u[i][k] * &d[k][l] * &v[l][j];
                        }
                    }
                    assert_eq!(s, mat[i][j], "reconstruction ({i},{j})");
                }
            }
            // U, V unimodular; D diagonal, divisibility chain
            assert_eq!(det_bigint(&u).abs(), BigInt::one());
            assert_eq!(det_bigint(&v).abs(), BigInt::one());
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        assert!(d[i][j].is_zero());
                    }
                }
                if i + 1 < n {
                    assert!((&d[i + 1][i + 1] % &d[i][i]).is_zero(), "divisibility");
                }
            }
        }
        // frozen values
        let s = snf(&big_mat(&[&[2, 1], &[1, 2]])).unwrap();
        assert_eq!(s.d[0][0], BigInt::one());
        assert_eq!(s.d[1][1], BigInt::from(3));
        assert_eq!(snf(&big_mat(&[&[2]])).unwrap().d[0][0], BigInt::from(2));
        assert!(snf(&big_mat(&[&[1, 1], &[1, 1]])).is_err());
    }

    #[test]
    fn dual_cosets_enumeration() {
        // A = (2): classes {0, 1/2}
        let l = LatticePair::new(vec![vec![2]], vec![0], vec![1.0 / 2f64.sqrt()], vec![rat(0, 1)]).unwrap();
        let mut reps = l.dual_cosets().unwrap();
        reps.sort();
        assert_eq!(reps, vec![vec![rat(0, 1)], vec![rat(1, 2)]]);
        // A = I2: self-dual
        let l = LatticePair::new(
            vec![vec![1, 0], vec![0, 1]],
            vec![1, 1],
            vec![1.0, 0.0],
            vec![rat(0, 1), rat(0, 1)],
        )
        .unwrap();
        assert_eq!(l.dual_cosets().unwrap(), vec![vec![rat(0, 1), rat(0, 1)]]);
        // A = (2,1;1,2): 3 distinct classes, each in the dual
        let l = rank2();
        let reps = l.dual_cosets().unwrap();
        assert_eq!(reps.len(), 3);
        for r in &reps {
            for i in 0..2 {
                let mut v = BigRational::zero();
                for j in 0..2 {
                    v += BigRational::from_i64(l.gram()[i][j]).unwrap() * &r[j];
                }
                assert!(v.is_integer(), "A rep not integral: {r:?}");
            }
        }
        for a in 0..3 {
            for b in 0..3 {
                if a != b {
                    let diff_integral = (0..2).all(|i| (&reps[a][i] - &reps[b][i]).is_integer());
                    assert!(!diff_integral, "duplicate cosets {a}, {b}");
                }
            }
        }
    }

    #[test]
    fn lambda_min_values() {
        assert!((rank1().lambda_min() - 1.0).abs() < 1e-10);
        // eigenvalues of (2,1;1,2) are 1 and 3
        assert!((rank2().lambda_min() - 1.0).abs() < 1e-10);
        let l = LatticePair::new(vec![vec![4, 0], vec![0, 2]], vec![0, 0], vec![0.5, 0.0], vec![rat(0, 1), rat(0, 1)]).unwrap();
        assert!((l.lambda_min() - 2.0).abs() < 1e-10);
    }

    #[test]
    fn exact_forms() {
        let l = rank2();
        assert_eq!(l.discriminant(), BigInt::from(3));
        let mu = vec![rat(2, 3), rat(-1, 3)];
        // Q(mu) = 1/2 mu^T A mu = 1/2 * (2/3*1 + (-1/3)*0) = 1/3
        assert_eq!(l.quadratic_exact(&mu), rat(1, 3));
        assert_eq!(l.bilinear(&[1.0, 0.0], &[0.0, 1.0]), 1.0);
        assert_eq!(l.quadratic(&[1.0, 1.0]), 3.0);
    }
}
