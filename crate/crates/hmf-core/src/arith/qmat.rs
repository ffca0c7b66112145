//! Dense matrices over Q and Z: elimination, kernels, inverses,
//! characteristic polynomials.

use super::int::{common_denom, Q};
use num_bigint::BigInt;
use num_traits::{One, Zero};

pub type QMat = Vec<Vec<Q>>;

pub fn zeros(r: usize, c: usize) -> QMat {
    vec![vec![Q::zero(); c]; r]
}

pub fn identity(n: usize) -> QMat {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Q::one();
    }
    m
}

pub fn from_int(m: &[Vec<i64>]) -> QMat {
    m.iter().map(|r| r.iter().map(|&x| Q::from_integer(BigInt::from(x))).collect()).collect()
}

pub fn transpose(m: &QMat) -> QMat {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len()).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn mul(a: &QMat, b: &QMat) -> QMat {
    let n = a.len();
    let k = b.len();
    let m = if k == 0 { 0 } else { b[0].len() };
    let mut out = zeros(n, m);
    for i in 0..n {
        for t in 0..k {
            if a[i][t].is_zero() {
                continue;
            }
            for j in 0..m {
                if !b[t][j].is_zero() {
                    out[i][j] += &a[i][t] * &b[t][j];
                }
            }
        }
    }
    out
}

pub fn add(a: &QMat, b: &QMat) -> QMat {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect()).collect()
}

pub fn sub(a: &QMat, b: &QMat) -> QMat {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x - y).collect()).collect()
}

pub fn scale(a: &QMat, s: &Q) -> QMat {
    a.iter().map(|r| r.iter().map(|x| x * s).collect()).collect()
}

pub fn vec_mat(v: &[Q], m: &QMat) -> Vec<Q> {
    let cols = if m.is_empty() { 0 } else { m[0].len() };
    let mut out = vec![Q::zero(); cols];
    for (i, vi) in v.iter().enumerate() {
        if vi.is_zero() {
            continue;
        }
        for j in 0..cols {
            if !m[i][j].is_zero() {
                out[j] += vi * &m[i][j];
            }
        }
    }
    out
}

/// Reduced row echelon form; returns (rref, pivot columns).
pub fn rref(m: &QMat) -> (QMat, Vec<usize>) {
    let mut a = m.clone();
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = Q::one() / &a[r][c];
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in c..cols {
                    if !a[r][j].is_zero() {
                        let d = &f * &a[r][j];
                        a[i][j] -= d;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    (a, pivots)
}

pub fn rank(m: &QMat) -> usize {
    rref(m).1.len()
}

/// Basis of {x : m x = 0} (column vectors returned as rows).
pub fn right_kernel(m: &QMat, ncols: usize) -> QMat {
    let (r, piv) = rref(m);
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !piv.contains(c)) {
        let mut v = vec![Q::zero(); ncols];
        v[free] = Q::one();
        for (i, &pc) in piv.iter().enumerate() {
            v[pc] = -r[i][free].clone();
        }
        out.push(v);
    }
    out
}

/// Basis of {v : v m = 0}.
pub fn left_kernel(m: &QMat) -> QMat {
    right_kernel(&transpose(m), m.len())
}

pub fn inverse(m: &QMat) -> Option<QMat> {
    let n = m.len();
    let aug: QMat = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            row
        })
        .collect();
    let (r, piv) = rref(&aug);
    if piv.len() < n || piv[n - 1] != n - 1 {
        return None;
    }
    Some(r.into_iter().map(|row| row[n..].to_vec()).collect())
}

pub fn det(m: &QMat) -> Q {
    let n = m.len();
    let mut a = m.clone();
    let mut d = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else { return Q::zero() };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        d *= &a[c][c];
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] / &a[c][c];
            for j in c..n {
                let t = &f * &a[c][j];
                a[i][j] -= t;
            }
        }
    }
    d
}

/// Coordinates of `v` in the row span of the independent rows `basis`.
pub fn solve_left(basis: &QMat, v: &[Q]) -> Option<Vec<Q>> {
    let k = basis.len();
    let n = v.len();
    // Solve x * basis = v, i.e. basis^T x^T = v^T.
    let mut aug = zeros(n, k + 1);
    for j in 0..n {
        for i in 0..k {
            aug[j][i] = basis[i][j].clone();
        }
        aug[j][k] = v[j].clone();
    }
    let (r, piv) = rref(&aug);
    if piv.contains(&k) {
        return None;
    }
    let mut x = vec![Q::zero(); k];
    for (i, &pc) in piv.iter().enumerate() {
        x[pc] = r[i][k].clone();
    }
    Some(x)
}

/// Characteristic polynomial det(xI - m) of an integer matrix by the
/// division-free Berkowitz recurrence; coefficients lowest degree first.
pub fn charpoly_int(m: &[Vec<BigInt>]) -> Vec<BigInt> {
    let n = m.len();
    if n == 0 {
        return vec![BigInt::one()];
    }
    let mut transforms: Vec<Vec<BigInt>> = Vec::new();
    for size in (2..=n).rev() {
        let k = size - 1;
        let r: Vec<BigInt> = (0..k).map(|j| -m[k][j].clone()).collect();
        let mut col: Vec<BigInt> = (0..k).map(|i| m[i][k].clone()).collect();
        let a = -m[k][k].clone();
        let mut items = vec![BigInt::one(), a];
        for step in 0..k {
            if step > 0 {
                col = (0..k).map(|i| (0..k).fold(BigInt::zero(), |acc, j| acc + &m[i][j] * &col[j])).collect();
            }
            items.push(r.iter().zip(&col).fold(BigInt::zero(), |acc, (x, y)| acc + x * y));
        }
        transforms.push(items);
    }
    transforms.reverse();
    let mut poly = vec![BigInt::one(), -m[0][0].clone()];
    for items in transforms {
        let len = poly.len() + 1;
        let out: Vec<BigInt> = (0..len)
            .map(|row| {
                let mut s = BigInt::zero();
                for (col, pc) in poly.iter().enumerate() {
                    if col <= row {
                        s += &items[row - col] * pc;
                    }
                }
                s
            })
            .collect();
        poly = out;
    }
    poly.reverse();
    poly
}

/// Characteristic polynomial of a rational matrix (monic, lowest first).
pub fn charpoly(m: &QMat) -> Vec<Q> {
    let n = m.len();
    let d = common_denom(m.iter().flatten());
    let ints: Vec<Vec<BigInt>> =
        m.iter().map(|r| r.iter().map(|x| (x * Q::from_integer(d.clone())).to_integer()).collect()).collect();
    let cp = charpoly_int(&ints);
    // det(xI - M) = d^{-n} det(d x I - dM)
    let mut out = Vec::with_capacity(n + 1);
    for (k, c) in cp.into_iter().enumerate() {
        let pw = num_traits::pow(d.clone(), n - k);
        out.push(Q::new(c, pw));
    }
    out
}

pub fn is_zero_mat(m: &QMat) -> bool {
    m.iter().all(|r| r.iter().all(|x| x.is_zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int::{bi, q};

    fn cofactor_det(m: &[Vec<Vec<BigInt>>]) -> Vec<BigInt> {
        // determinant of a matrix of polynomials (lowest first) by expansion
        let n = m.len();
        if n == 1 {
            return m[0][0].clone();
        }
        let mut acc = vec![BigInt::zero()];
        for j in 0..n {
            let minor: Vec<Vec<Vec<BigInt>>> =
                (1..n).map(|i| (0..n).filter(|&c| c != j).map(|c| m[i][c].clone()).collect()).collect();
            let sub = cofactor_det(&minor);
            let mut prod = vec![BigInt::zero(); m[0][j].len() + sub.len()];
            for (a, x) in m[0][j].iter().enumerate() {
                for (b, y) in sub.iter().enumerate() {
                    prod[a + b] += x * y;
                }
            }
            if acc.len() < prod.len() {
                acc.resize(prod.len(), BigInt::zero());
            }
            for (k, p) in prod.into_iter().enumerate() {
                if j % 2 == 0 {
                    acc[k] += p;
                } else {
                    acc[k] -= p;
                }
            }
        }
        acc
    }

    fn oracle_charpoly(m: &[Vec<i64>]) -> Vec<BigInt> {
        let n = m.len();
        let pm: Vec<Vec<Vec<BigInt>>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { vec![bi(-m[i][j]), bi(1)] } else { vec![bi(-m[i][j])] }).collect())
            .collect();
        let mut p = cofactor_det(&pm);
        while p.len() > n + 1 {
            assert!(p.pop().unwrap().is_zero());
        }
        p
    }

    #[test]
    fn charpoly_pizer() {
        let t2 = [vec![1, 1, 0], vec![2, 1, 3], vec![0, 1, 0]];
        let cp = charpoly_int(&t2.iter().map(|r| r.iter().map(|&x| bi(x)).collect()).collect::<Vec<_>>());
        // (x-3)(x^2+x-1) = x^3 - 2x^2 - 4x + 3
        assert_eq!(cp, vec![bi(3), bi(-4), bi(-2), bi(1)]);
    }

    #[test]
    fn charpoly_identity() {
        let cp = charpoly(&identity(2));
        assert_eq!(cp, vec![q(1), q(-2), q(1)]);
    }

    #[test]
    fn charpoly_random_vs_cofactor() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for n in 1..=5 {
            for _ in 0..5 {
                let m: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(-9..=9)).collect()).collect();
                let cp = charpoly_int(&m.iter().map(|r| r.iter().map(|&x| bi(x)).collect()).collect::<Vec<_>>());
                assert_eq!(cp, oracle_charpoly(&m));
            }
        }
    }

    #[test]
    fn inverse_and_kernel() {
        let m = from_int(&[vec![2, 1], vec![1, 1]]);
        let inv = inverse(&m).unwrap();
        assert_eq!(mul(&m, &inv), identity(2));
        let s = from_int(&[vec![1, 2], vec![2, 4]]);
        let k = left_kernel(&s);
        assert_eq!(k.len(), 1);
        assert!(vec_mat(&k[0], &s).iter().all(|x| x.is_zero()));
        assert_eq!(det(&m), q(1));
        assert_eq!(solve_left(&m, &[q(3), q(2)]), Some(vec![q(1), q(1)]));
    }
}
