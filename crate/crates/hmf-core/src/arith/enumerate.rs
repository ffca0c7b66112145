//! Short vectors of positive definite rational quadratic forms.
//!
//! LLL preconditioning and Fincke–Pohst use floating point with slack; every
//! reported vector is re-checked exactly, and definiteness is certified by an
//! exact rational LDLᵀ decomposition.

use super::int::{common_denom, q_to_f64, Q};
use super::qmat::QMat;
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EnumError {
    #[error("quadratic form is not positive definite")]
    NotPositiveDefinite,
    #[error("more than {0} vectors below the bound")]
    TooManyVectors(usize),
}

/// Exact LDLᵀ pivots of a symmetric rational matrix; `None` if a pivot is ≤ 0.
pub fn ldl_pivots(g: &QMat) -> Option<Vec<Q>> {
    let n = g.len();
    let mut a = g.clone();
    let mut piv = Vec::with_capacity(n);
    for i in 0..n {
        let d = a[i][i].clone();
        if !d.is_positive() {
            return None;
        }
        for k in i + 1..n {
            if a[k][i].is_zero() {
                continue;
            }
            let f = &a[k][i] / &d;
            for l in i + 1..n {
                let t = &f * &a[i][l];
                a[k][l] -= t;
            }
        }
        piv.push(d);
    }
    Some(piv)
}

fn int_gram(g: &QMat) -> (Vec<Vec<BigInt>>, BigInt) {
    let d = common_denom(g.iter().flatten());
    let dq = Q::from_integer(d.clone());
    (g.iter().map(|r| r.iter().map(|x| (x * &dq).to_integer()).collect()).collect(), d)
}

fn quad_int(g: &[Vec<BigInt>], x: &[i64]) -> BigInt {
    let n = x.len();
    let mut s = BigInt::zero();
    for i in 0..n {
        if x[i] == 0 {
            continue;
        }
        let mut t = BigInt::zero();
        for j in 0..n {
            if x[j] != 0 {
                t += &g[i][j] * x[j];
            }
        }
        s += t * x[i];
    }
    s
}

fn gso(g: &[Vec<f64>]) -> (Vec<Vec<f64>>, Vec<f64>) {
    let n = g.len();
    let mut mu = vec![vec![0.0; n]; n];
    let mut r = vec![vec![0.0; n]; n];
    let mut bs = vec![0.0; n];
    for i in 0..n {
        for j in 0..=i {
            let mut v = g[i][j];
            for k in 0..j {
                v -= mu[j][k] * r[i][k];
            }
            r[i][j] = v;
            if j < i {
                mu[i][j] = v / bs[j];
            } else {
                bs[i] = v;
            }
        }
    }
    (mu, bs)
}

/// LLL-reduce an integral positive definite Gram matrix.
/// Returns the unimodular transform `u` (rows = new basis in old coordinates)
/// and the reduced Gram `u g uᵀ`.
pub fn lll_gram(g: &[Vec<BigInt>]) -> (Vec<Vec<i64>>, Vec<Vec<BigInt>>) {
    let n = g.len();
    let mut u: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect();
    let mut cur: Vec<Vec<BigInt>> = g.to_vec();
    let to_f = |m: &Vec<Vec<BigInt>>| -> Vec<Vec<f64>> {
        m.iter().map(|r| r.iter().map(|x| x.to_f64().unwrap_or(f64::MAX)).collect()).collect()
    };
    let mut k = 1;
    let mut iters = 0;
    while k < n && iters < 100_000 {
        iters += 1;
        for j in (0..k).rev() {
            let (mu, _) = gso(&to_f(&cur));
            let qf = mu[k][j].round();
            if qf != 0.0 && qf.is_finite() && qf.abs() < 1e15 {
                let qi = qf as i64;
                // row_k -= q row_j
                for c in 0..n {
                    u[k][c] -= qi * u[j][c];
                }
                let qb = BigInt::from(qi);
                let gkj = cur[k][j].clone();
                let gjj = cur[j][j].clone();
                let new_kk = &cur[k][k] - BigInt::from(2) * &qb * &gkj + &qb * &qb * &gjj;
                for c in 0..n {
                    if c != k {
                        let v = &cur[k][c] - &qb * &cur[j][c];
                        cur[k][c] = v.clone();
                        cur[c][k] = v;
                    }
                }
                cur[k][k] = new_kk;
            }
        }
        let (mu, bs) = gso(&to_f(&cur));
        if bs[k] < (0.99 - mu[k][k - 1] * mu[k][k - 1]) * bs[k - 1] {
            u.swap(k, k - 1);
            cur.swap(k, k - 1);
            for row in cur.iter_mut() {
                row.swap(k, k - 1);
            }
            k = if k > 1 { k - 1 } else { 1 };
        } else {
            k += 1;
        }
    }
    (u, cur)
}

/// All nonzero `v` with `vᵀ g v ≤ bound`, one per ± pair (first nonzero
/// coordinate positive), sorted by value then coordinates. Values are exact.
pub fn short_vectors(g: &QMat, bound: &Q, cap: Option<usize>) -> Result<Vec<(Vec<i64>, Q)>, EnumError> {
    let n = g.len();
    if ldl_pivots(g).is_none() {
        return Err(EnumError::NotPositiveDefinite);
    }
    if bound.is_negative() || n == 0 {
        return Ok(Vec::new());
    }
    let (gi, d) = int_gram(g);
    let bound_i = (bound * Q::from_integer(d.clone())).floor().to_integer();
    if bound_i.is_zero() {
        return Ok(Vec::new());
    }
    let (u, red) = lll_gram(&gi);
    // float Cholesky of reduced Gram
    let mut qf: Vec<Vec<f64>> = red.iter().map(|r| r.iter().map(|x| x.to_f64().unwrap()).collect()).collect();
    for i in 0..n {
        for j in i + 1..n {
            qf[j][i] = qf[i][j];
            qf[i][j] /= qf[i][i];
        }
        for k in i + 1..n {
            for l in k..n {
                qf[k][l] -= qf[k][i] * qf[i][l];
            }
        }
    }
    let bf = bound_i.to_f64().unwrap() * (1.0 + 1e-9) + 1e-6;
    let mut x = vec![0i64; n];
    let mut found: Vec<Vec<i64>> = Vec::new();
    let mut overflow = false;
    enumerate_rec(&qf, n, n - 1, bf, 0.0, true, &mut x, &mut found, cap, &mut overflow);
    if overflow {
        return Err(EnumError::TooManyVectors(cap.unwrap_or(usize::MAX)));
    }
    let mut out = Vec::with_capacity(found.len());
    for xr in found {
        let val = quad_int(&red, &xr);
        if val > bound_i || val.is_zero() {
            continue;
        }
        let mut v = vec![0i64; n];
        for (i, &c) in xr.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for j in 0..n {
                v[j] += c * u[i][j];
            }
        }
        if let Some(first) = v.iter().find(|&&c| c != 0) {
            if *first < 0 {
                v.iter_mut().for_each(|c| *c = -*c);
            }
        }
        out.push((v, Q::new(val, d.clone())));
    }
    out.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
    if let Some(c) = cap {
        if out.len() > c {
            return Err(EnumError::TooManyVectors(c));
        }
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn enumerate_rec(
    q: &[Vec<f64>],
    n: usize,
    i: usize,
    bound: f64,
    partial: f64,
    zero_above: bool,
    x: &mut [i64],
    out: &mut Vec<Vec<i64>>,
    cap: Option<usize>,
    overflow: &mut bool,
) {
    if *overflow {
        return;
    }
    let mut c = 0.0;
    for j in i + 1..n {
        c -= q[i][j] * x[j] as f64;
    }
    let rem = bound - partial;
    if rem < 0.0 {
        return;
    }
    let r = (rem / q[i][i]).sqrt() + 1e-9;
    let mut lo = (c - r).ceil() as i64;
    let hi = (c + r).floor() as i64;
    if zero_above && lo < 0 {
        lo = 0;
    }
    for v in lo..=hi {
        let t = v as f64 - c;
        let np = partial + q[i][i] * t * t;
        if np > bound {
            continue;
        }
        x[i] = v;
        if i == 0 {
            if !(zero_above && v == 0) {
                out.push(x.to_vec());
                if let Some(cp) = cap {
                    if out.len() > cp.saturating_mul(4).max(1000) {
                        *overflow = true;
                        x[i] = 0;
                        return;
                    }
                }
            }
        } else {
            enumerate_rec(q, n, i - 1, bound, np, zero_above && v == 0, x, out, cap, overflow);
        }
    }
    x[i] = 0;
}

/// Exhaustive box search (test oracle): |x_i| ≤ sqrt(bound·(G⁻¹)_ii).
pub fn box_search(g: &QMat, bound: &Q) -> Vec<(Vec<i64>, Q)> {
    let n = g.len();
    let inv = super::qmat::inverse(g).expect("invertible");
    let lims: Vec<i64> =
        (0..n).map(|i| (q_to_f64(&(bound * &inv[i][i])).max(0.0).sqrt() + 1e-9).floor() as i64).collect();
    let mut out = Vec::new();
    let mut x: Vec<i64> = lims.iter().map(|l| -l).collect();
    loop {
        let val = {
            let mut s = Q::zero();
            for i in 0..n {
                for j in 0..n {
                    if x[i] != 0 && x[j] != 0 {
                        s += &g[i][j] * Q::from_integer(BigInt::from(x[i] * x[j]));
                    }
                }
            }
            s
        };
        let first = x.iter().find(|&&c| c != 0).copied();
        if let Some(f) = first {
            if f > 0 && &val <= bound {
                out.push((x.clone(), val));
            }
        }
        let mut k = 0;
        loop {
            if k == n {
                out.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
                return out;
            }
            if x[k] < lims[k] {
                x[k] += 1;
                break;
            }
            x[k] = -lims[k];
            k += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int::{q, qq};
    use crate::arith::qmat::from_int;

    #[test]
    fn pizer_form() {
        // x^2+xz+y^2+yw+6z^2+6w^2
        let g = vec![
            vec![q(1), q(0), qq(1, 2), q(0)],
            vec![q(0), q(1), q(0), qq(1, 2)],
            vec![qq(1, 2), q(0), q(6), q(0)],
            vec![q(0), qq(1, 2), q(0), q(6)],
        ];
        let v = short_vectors(&g, &q(1), None).unwrap();
        assert_eq!(v.len(), 2);
        let v4 = short_vectors(&g, &q(4), None).unwrap();
        assert_eq!(v4, box_search(&g, &q(4)));
        assert!(short_vectors(&g, &q(0), None).unwrap().is_empty());
    }

    #[test]
    fn skewed_form_matches_box() {
        let g = from_int(&[vec![10, 7, 3], vec![7, 6, 2], vec![3, 2, 5]]);
        for b in [3, 10, 40] {
            assert_eq!(short_vectors(&g, &q(b), None).unwrap(), box_search(&g, &q(b)));
        }
        assert_eq!(
            short_vectors(&from_int(&[vec![1, 2], vec![2, 1]]), &q(1), None),
            Err(EnumError::NotPositiveDefinite)
        );
    }
}
