//! Exact linear algebra on Hecke operators: cusp space, decomposition into
//! irreducible constituents, and eigenvalues over Hecke fields Q[t]/(h).
//!
//! Modular forms are row vectors and operators act on the right.

use crate::arith::int::{fnv1a, Q};
use crate::arith::poly::{self, QPoly};
use crate::arith::qmat::{self, QMat};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HeckeError {
    #[error("operators {0} and {1} do not commute")]
    NotCommuting(usize, usize),
    #[error("subspace is not invariant under the operators")]
    NotInvariant,
    #[error("eigenvector check failed for operator {0}")]
    EigenCheck(usize),
    #[error("eigenvalue for operator {0} is not an algebraic integer")]
    NotIntegral(usize),
}

/// The number field Q[t]/(h), h monic irreducible; elements are coefficient
/// vectors of length deg h, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeField {
    pub h: QPoly,
}

pub type KElem = Vec<Q>;

impl HeckeField {
    pub fn new(h: QPoly) -> Self {
        HeckeField { h: poly::monic(&h) }
    }
    pub fn degree(&self) -> usize {
        self.h.len() - 1
    }
    fn pad(&self, mut a: QPoly) -> KElem {
        a = poly::rem(&a, &self.h);
        a.resize(self.degree(), Q::zero());
        a
    }
    pub fn from_q(&self, x: &Q) -> KElem {
        self.pad(vec![x.clone()])
    }
    pub fn zero(&self) -> KElem {
        vec![Q::zero(); self.degree()]
    }
    pub fn gen(&self) -> KElem {
        self.pad(vec![Q::zero(), Q::one()])
    }
    pub fn add(&self, a: &KElem, b: &KElem) -> KElem {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }
    pub fn sub(&self, a: &KElem, b: &KElem) -> KElem {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }
    pub fn mul(&self, a: &KElem, b: &KElem) -> KElem {
        self.pad(poly::mul(a, b))
    }
    pub fn is_zero(&self, a: &KElem) -> bool {
        a.iter().all(|x| x.is_zero())
    }
    pub fn inv(&self, a: &KElem) -> Option<KElem> {
        // extended Euclid: s a + u h = 1
        let mut a0 = a.clone();
        poly::trim(&mut a0);
        if a0.is_empty() {
            return None;
        }
        let (mut r0, mut r1) = (self.h.clone(), a0);
        let (mut s0, mut s1): (QPoly, QPoly) = (vec![], vec![Q::one()]);
        while poly::deg(&r1) > 0 {
            let (qt, r) = poly::divrem(&r0, &r1);
            let s = poly::sub(&s0, &poly::mul(&qt, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        if r1.is_empty() {
            return None;
        }
        let c = Q::one() / &r1[0];
        Some(self.pad(poly::scale(&s1, &c)))
    }
    /// Minimal polynomial over Q of an element.
    pub fn minpoly(&self, a: &KElem) -> QPoly {
        let d = self.degree();
        // matrix of multiplication by a on the power basis
        let mut m = qmat::zeros(d, d);
        let mut x = self.from_q(&Q::one());
        for row in m.iter_mut() {
            *row = self.mul(&x, a);
            x = self.mul(&x, &self.gen());
        }
        let cp = qmat::charpoly(&m);
        let (_, fac) = poly::factor_q(&cp);
        fac[0].0.clone()
    }
    pub fn format(&self, a: &KElem, var: &str) -> String {
        let mut p = a.clone();
        poly::trim(&mut p);
        poly::to_string_var(&p, var)
    }
}

/// Rows spanning {f : Σ f_i / w_i = 0}.
pub fn cusp_basis(weights: &[usize]) -> QMat {
    let h = weights.len();
    (1..h)
        .map(|i| {
            let mut r = vec![Q::zero(); h];
            r[0] = -Q::from_integer(BigInt::from(weights[0]));
            r[i] = Q::from_integer(BigInt::from(weights[i]));
            r
        })
        .collect()
}

/// Matrix of v ↦ v·T on the row span of `basis`, in basis coordinates.
pub fn restrict(basis: &QMat, t: &QMat) -> Result<QMat, HeckeError> {
    basis.iter().map(|b| qmat::solve_left(basis, &qmat::vec_mat(b, t)).ok_or(HeckeError::NotInvariant)).collect()
}

pub fn int_matrix(m: &[Vec<i64>]) -> QMat {
    m.iter().map(|r| r.iter().map(|&x| Q::from_integer(BigInt::from(x))).collect()).collect()
}

fn poly_at_matrix(p: &QPoly, a: &QMat) -> QMat {
    let n = a.len();
    let mut acc = qmat::zeros(n, n);
    for c in p.iter().rev() {
        acc = qmat::mul(&acc, a);
        for (i, row) in acc.iter_mut().enumerate() {
            row[i] += c;
        }
    }
    acc
}

pub fn check_commuting(mats: &[QMat]) -> Result<(), HeckeError> {
    for a in 0..mats.len() {
        for b in a + 1..mats.len() {
            if qmat::mul(&mats[a], &mats[b]) != qmat::mul(&mats[b], &mats[a]) {
                return Err(HeckeError::NotCommuting(a, b));
            }
        }
    }
    Ok(())
}

/// A joint invariant subspace on which every operator has a characteristic
/// polynomial that is a power of one irreducible polynomial.
#[derive(Clone, Debug)]
pub struct Block {
    /// rows in the coordinates of the input space
    pub basis: QMat,
    /// Hecke field polynomial (minimal polynomial of the generator)
    pub hecke_poly: QPoly,
    /// dim / deg(hecke_poly)
    pub multiplicity: usize,
    /// integer coefficients of the generating combination of operators
    pub generator: Vec<i64>,
}

fn combination(mats: &[QMat], c: &[i64]) -> QMat {
    let n = mats[0].len();
    let mut acc = qmat::zeros(n, n);
    for (m, &k) in mats.iter().zip(c) {
        if k != 0 {
            acc = qmat::add(&acc, &qmat::scale(m, &Q::from_integer(BigInt::from(k))));
        }
    }
    acc
}

/// Split the space (dimension = size of the matrices) into joint generalized
/// eigenspaces over Q. Operators are tried in order, then seeded random
/// integer combinations.
pub fn decompose(mats: &[QMat], seed: u64) -> Result<Vec<Block>, HeckeError> {
    check_commuting(mats)?;
    let Some(first) = mats.first() else { return Ok(Vec::new()) };
    let dim = first.len();
    if dim == 0 {
        return Ok(Vec::new());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ fnv1a(b"decompose"));
    let mut combos: Vec<Vec<i64>> =
        (0..mats.len()).map(|k| (0..mats.len()).map(|j| (j == k) as i64).collect()).collect();
    for _ in 0..24 {
        combos.push((0..mats.len()).map(|_| rng.gen_range(-3..=3)).collect());
    }
    let ops: Vec<QMat> = combos.iter().map(|c| combination(mats, c)).collect();
    let mut work: Vec<QMat> = vec![qmat::identity(dim)];
    let mut done = Vec::new();
    while let Some(basis) = work.pop() {
        let k = basis.len();
        let mut split = false;
        let mut best: Option<(usize, QPoly)> = None;
        for (oi, op) in ops.iter().enumerate() {
            let a = restrict(&basis, op)?;
            let (_, fac) = poly::factor_q(&qmat::charpoly(&a));
            if fac.len() > 1 {
                for (g, m) in fac {
                    let gm = poly::pow(&g, m);
                    let ker = qmat::left_kernel(&poly_at_matrix(&gm, &a));
                    work.push(qmat::mul(&ker, &basis));
                }
                split = true;
                break;
            }
            let g = fac[0].0.clone();
            if best.as_ref().is_none_or(|b| poly::deg(&g) > poly::deg(&b.1)) {
                best = Some((oi, g));
                if fac[0].1 == 1 {
                    break;
                }
            }
        }
        if split {
            continue;
        }
        let (oi, g) = best.unwrap();
        let d = poly::deg(&g) as usize;
        done.push(Block { basis, hecke_poly: g, multiplicity: k / d, generator: combos[oi].clone() });
    }
    done.sort_by(|a, b| {
        (a.basis.len(), poly::to_primitive_z(&a.hecke_poly).iter().rev().cloned().collect::<Vec<BigInt>>())
            .cmp(&(b.basis.len(), poly::to_primitive_z(&b.hecke_poly).iter().rev().cloned().collect::<Vec<BigInt>>()))
    });
    Ok(done)
}

/// Left eigenvector over K of the generator on a block, and the eigenvalue
/// of each operator, verified exactly.
#[derive(Clone, Debug)]
pub struct Eigensystem {
    pub field: HeckeField,
    /// eigenvector in the coordinates of the input space
    pub vector: Vec<KElem>,
    pub eigenvalues: Vec<KElem>,
}

pub fn eigensystem(block: &Block, mats: &[QMat]) -> Result<Eigensystem, HeckeError> {
    let k = HeckeField::new(block.hecke_poly.clone());
    let gen_op = restrict(&block.basis, &combination(mats, &block.generator))?;
    let dim = gen_op.len();
    // v (A - t) = 0: right kernel of (Aᵀ - t) over K
    let t = k.gen();
    let mut m: Vec<Vec<KElem>> = (0..dim)
        .map(|r| {
            (0..dim)
                .map(|c| {
                    let a = k.from_q(&gen_op[c][r]);
                    if r == c {
                        k.sub(&a, &t)
                    } else {
                        a
                    }
                })
                .collect()
        })
        .collect();
    let v = kernel_vector(&k, &mut m).ok_or(HeckeError::EigenCheck(usize::MAX))?;
    // to input coordinates
    let n = block.basis[0].len();
    let mut vec_in: Vec<KElem> = vec![k.zero(); n];
    for (r, vr) in v.iter().enumerate() {
        for (c, b) in block.basis[r].iter().enumerate() {
            vec_in[c] = k.add(&vec_in[c], &k.mul(vr, &k.from_q(b)));
        }
    }
    let piv = vec_in.iter().position(|x| !k.is_zero(x)).unwrap();
    let piv_inv = k.inv(&vec_in[piv]).unwrap();
    let mut eigenvalues = Vec::with_capacity(mats.len());
    for (oi, op) in mats.iter().enumerate() {
        let image = k_vec_mat(&k, &vec_in, op);
        let a = k.mul(&image[piv], &piv_inv);
        for (x, y) in image.iter().zip(&vec_in) {
            if *x != k.mul(&a, y) {
                return Err(HeckeError::EigenCheck(oi));
            }
        }
        let mp = k.minpoly(&a);
        if !mp.iter().all(|c| c.is_integer()) {
            return Err(HeckeError::NotIntegral(oi));
        }
        eigenvalues.push(a);
    }
    Ok(Eigensystem { field: k, vector: vec_in, eigenvalues })
}

pub fn k_vec_mat(k: &HeckeField, v: &[KElem], m: &QMat) -> Vec<KElem> {
    let cols = m[0].len();
    (0..cols)
        .map(|c| {
            v.iter().zip(m).fold(k.zero(), |acc, (x, row)| {
                if row[c].is_zero() {
                    acc
                } else {
                    k.add(&acc, &k.mul(x, &k.from_q(&row[c])))
                }
            })
        })
        .collect()
}

/// A nonzero solution of m x = 0 over K.
fn kernel_vector(k: &HeckeField, m: &mut [Vec<KElem>]) -> Option<Vec<KElem>> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !k.is_zero(&m[i][c])) else { continue };
        m.swap(r, p);
        let inv = k.inv(&m[r][c]).unwrap();
        for x in m[r].iter_mut() {
            *x = k.mul(x, &inv);
        }
        for i in 0..rows {
            if i != r && !k.is_zero(&m[i][c]) {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let d = k.mul(&f, &m[r][j]);
                    m[i][j] = k.sub(&m[i][j], &d);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free = (0..cols).find(|c| !pivots.contains(c))?;
    let mut x = vec![k.zero(); cols];
    x[free] = k.from_q(&Q::one());
    for (i, &pc) in pivots.iter().enumerate() {
        x[pc] = k.sub(&k.zero(), &m[i][free]);
    }
    Some(x)
}

/// Express `a` as a polynomial (coefficient vector) in the generator `g`,
/// or None if g does not generate K.
pub fn express_in(k: &HeckeField, g: &KElem, a: &KElem) -> Option<QPoly> {
    let d = k.degree();
    let mut rows: QMat = Vec::with_capacity(d);
    let mut x = k.from_q(&Q::one());
    for _ in 0..d {
        rows.push(x.clone());
        x = k.mul(&x, g);
    }
    if qmat::rank(&rows) < d {
        return None;
    }
    let mut c = qmat::solve_left(&rows, a)?;
    poly::trim(&mut c);
    Some(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_ops() {
        let k = HeckeField::new(poly::from_i64(&[-1, 1, 1]));
        let t = k.gen();
        let ti = k.inv(&t).unwrap();
        assert_eq!(k.mul(&t, &ti), k.from_q(&Q::one()));
        assert_eq!(k.minpoly(&k.add(&t, &k.from_q(&Q::one()))), poly::from_i64(&[-1, -1, 1]));
    }

    #[test]
    fn pizer_decomposition() {
        let t2 = int_matrix(&[vec![1, 1, 0], vec![2, 1, 3], vec![0, 1, 0]]);
        let cp = qmat::charpoly(&t2);
        let expect = poly::mul(&poly::from_i64(&[-3, 1]), &poly::from_i64(&[-1, 1, 1]));
        assert_eq!(cp, expect);
        let blocks = decompose(std::slice::from_ref(&t2), 1).unwrap();
        assert_eq!(blocks.len(), 2);
        for b in &blocks {
            let es = eigensystem(b, std::slice::from_ref(&t2)).unwrap();
            assert_eq!(es.field.minpoly(&es.eigenvalues[0]), b.hecke_poly);
        }
    }

    #[test]
    fn cusp_functional() {
        let b = cusp_basis(&[2, 5, 3]);
        assert_eq!(b.len(), 2);
        let w = [2, 5, 3];
        for r in &b {
            let s: Q = r.iter().zip(&w).map(|(x, &e)| x / Q::from_integer(BigInt::from(e))).sum();
            assert!(s.is_zero());
        }
        assert!(decompose(&[], 0).unwrap().is_empty());
        assert!(decompose(&[qmat::zeros(0, 0)], 0).unwrap().is_empty());
    }

    #[test]
    fn charpoly_oracle() {
        let m = int_matrix(&[
            vec![2, -1, 0, 3, 1],
            vec![1, 0, 4, -2, 2],
            vec![0, 3, 1, 1, -1],
            vec![5, 2, -3, 0, 1],
            vec![1, 1, 1, 1, 1],
        ]);
        let cp = qmat::charpoly(&m);
        // evaluate det(xI - M) at a few integers by elimination
        for x in -2i64..=2 {
            let mut a = qmat::scale(&m, &-Q::one());
            for (i, row) in a.iter_mut().enumerate() {
                row[i] += Q::from_integer(BigInt::from(x));
            }
            assert_eq!(poly::eval(&cp, &Q::from_integer(BigInt::from(x))), qmat::det(&a));
        }
        let id = qmat::identity(2);
        assert_eq!(qmat::charpoly(&id), poly::from_i64(&[1, -2, 1]));
    }
}
