//! Hermite normal forms and full-rank rational lattices.
//!
//! Row convention: row `k` of an HNF basis has its pivot in column `k` and
//! zeros in every column to the right of `k` (lower triangular). Entries left
//! of a pivot are reduced into `[0, pivot)`.

use super::int::{common_denom, xgcd, Q};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

struct HnfBuilder {
    dim: usize,
    rows: Vec<Option<Vec<BigInt>>>,
    modulus: Option<BigInt>,
}

impl HnfBuilder {
    fn new(dim: usize) -> Self {
        HnfBuilder { dim, rows: vec![None; dim], modulus: None }
    }

    fn reduce_vec(&self, v: &mut [BigInt]) {
        if let Some(m) = &self.modulus {
            for x in v.iter_mut() {
                if !x.is_zero() {
                    *x = x.mod_floor(m);
                }
            }
        }
    }

    fn insert(&mut self, mut v: Vec<BigInt>) {
        debug_assert_eq!(v.len(), self.dim);
        self.reduce_vec(&mut v);
        for c in (0..self.dim).rev() {
            if v[c].is_zero() {
                continue;
            }
            match self.rows[c].take() {
                None => {
                    self.rows[c] = Some(v);
                    if self.modulus.is_none() && self.rows.iter().all(|r| r.is_some()) {
                        let mut d = BigInt::one();
                        for (k, r) in self.rows.iter().enumerate() {
                            d *= r.as_ref().unwrap()[k].abs();
                        }
                        self.modulus = Some(d);
                    }
                    return;
                }
                Some(mut r) => {
                    let (pr, pv) = (r[c].clone(), v[c].clone());
                    if (&pv % &pr).is_zero() {
                        let t = &pv / &pr;
                        for k in 0..=c {
                            if !r[k].is_zero() {
                                let d = &t * &r[k];
                                v[k] -= d;
                            }
                        }
                    } else {
                        let (g, s, t) = xgcd(&pr, &pv);
                        let a = &pr / &g;
                        let b = &pv / &g;
                        let mut nr = Vec::with_capacity(self.dim);
                        for k in 0..self.dim {
                            if k > c {
                                nr.push(BigInt::zero());
                            } else {
                                nr.push(&s * &r[k] + &t * &v[k]);
                            }
                        }
                        for k in 0..=c {
                            let nv = &a * &v[k] - &b * &r[k];
                            v[k] = nv;
                        }
                        r = nr;
                    }
                    if let Some(m) = &self.modulus {
                        for k in 0..c {
                            r[k] = r[k].mod_floor(m);
                        }
                    }
                    self.reduce_vec(&mut v[..c]);
                    v[c] = BigInt::zero();
                    self.rows[c] = Some(r);
                }
            }
        }
    }

    fn finish(mut self) -> Vec<Option<Vec<BigInt>>> {
        if let Some(m) = self.modulus.clone() {
            for c in 0..self.dim {
                let mut e = vec![BigInt::zero(); self.dim];
                e[c] = m.clone();
                self.insert(e);
            }
        }
        let mut rows = self.rows;
        for k in 0..rows.len() {
            if let Some(r) = rows[k].as_mut() {
                if r[k].is_negative() {
                    for x in r.iter_mut() {
                        *x = -x.clone();
                    }
                }
            }
        }
        for k in 0..rows.len() {
            if rows[k].is_none() {
                continue;
            }
            for c in (0..k).rev() {
                let Some(rc) = rows[c].clone() else { continue };
                let r = rows[k].as_mut().unwrap();
                let t = r[c].div_floor(&rc[c]);
                if !t.is_zero() {
                    for j in 0..=c {
                        let d = &t * &rc[j];
                        r[j] -= d;
                    }
                }
            }
        }
        rows
    }
}

/// HNF of the Z-span of `rows` in Z^dim; `None` if the span has rank < dim.
pub fn hnf_full<I: IntoIterator<Item = Vec<BigInt>>>(dim: usize, rows: I) -> Option<Vec<Vec<BigInt>>> {
    let mut b = HnfBuilder::new(dim);
    for r in rows {
        b.insert(r);
    }
    b.finish().into_iter().collect()
}

/// HNF rows of the Z-span, indexed by pivot column (missing pivots are `None`).
pub fn hnf_partial<I: IntoIterator<Item = Vec<BigInt>>>(dim: usize, rows: I) -> Vec<Option<Vec<BigInt>>> {
    let mut b = HnfBuilder::new(dim);
    for r in rows {
        b.insert(r);
    }
    b.finish()
}

/// Basis of `{x in Z^m : sum_i x_i images[i] in L}` for a full-rank lattice
/// `L` in Z^k given by its HNF. Returned in HNF (rows of length m).
pub fn kernel_mod(images: &[Vec<BigInt>], modulus_hnf: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let m = images.len();
    let k = modulus_hnf.len();
    let mut gens = Vec::with_capacity(m + k);
    for (i, a) in images.iter().enumerate() {
        let mut v = vec![BigInt::zero(); m + k];
        v[i] = BigInt::one();
        for (c, x) in a.iter().enumerate() {
            v[m + c] = x.clone();
        }
        gens.push(v);
    }
    for h in modulus_hnf {
        let mut v = vec![BigInt::zero(); m + k];
        for (c, x) in h.iter().enumerate() {
            v[m + c] = x.clone();
        }
        gens.push(v);
    }
    let rows = hnf_full(m + k, gens).expect("augmented lattice is full rank");
    rows.into_iter().take(m).map(|r| r[..m].to_vec()).collect()
}

/// Reduce `v` modulo the full-rank lattice with lower-triangular HNF `h`.
pub fn reduce_mod_hnf(v: &mut [BigInt], h: &[Vec<BigInt>]) {
    for c in (0..h.len()).rev() {
        let t = v[c].div_floor(&h[c][c]);
        if !t.is_zero() {
            for j in 0..=c {
                let d = &t * &h[c][j];
                v[j] -= d;
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("generators do not span a full-rank lattice")]
pub struct RankDeficient;

/// A full-rank lattice in Q^dim stored as `(1/denom) * span(basis)` with
/// `basis` in canonical HNF and gcd(entries, denom) = 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QLattice {
    denom: BigInt,
    basis: Vec<Vec<BigInt>>,
}

impl QLattice {
    pub fn from_int_rows<I: IntoIterator<Item = Vec<BigInt>>>(
        dim: usize,
        denom: BigInt,
        rows: I,
    ) -> Result<Self, RankDeficient> {
        let basis = hnf_full(dim, rows).ok_or(RankDeficient)?;
        Ok(Self::canonical(denom, basis))
    }

    pub fn from_q_rows(dim: usize, rows: &[Vec<Q>]) -> Result<Self, RankDeficient> {
        let d = common_denom(rows.iter().flatten());
        let ints: Vec<Vec<BigInt>> =
            rows.iter().map(|r| r.iter().map(|x| (x * Q::from_integer(d.clone())).to_integer()).collect()).collect();
        Self::from_int_rows(dim, d, ints)
    }

    fn canonical(denom: BigInt, mut basis: Vec<Vec<BigInt>>) -> Self {
        let mut g = denom.clone();
        for r in &basis {
            for x in r {
                if g.is_one() {
                    break;
                }
                g = g.gcd(x);
            }
        }
        let mut denom = denom;
        if !g.is_one() {
            denom /= &g;
            for r in basis.iter_mut() {
                for x in r.iter_mut() {
                    *x /= &g;
                }
            }
        }
        QLattice { denom, basis }
    }

    /// Identity lattice Z^dim.
    pub fn standard(dim: usize) -> Self {
        let basis =
            (0..dim).map(|i| (0..dim).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect();
        QLattice { denom: BigInt::one(), basis }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn denom(&self) -> &BigInt {
        &self.denom
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    pub fn row_q(&self, i: usize) -> Vec<Q> {
        self.basis[i].iter().map(|x| Q::new(x.clone(), self.denom.clone())).collect()
    }

    pub fn rows_q(&self) -> Vec<Vec<Q>> {
        (0..self.dim()).map(|i| self.row_q(i)).collect()
    }

    /// Covolume |det(basis)| / denom^dim.
    pub fn covolume(&self) -> Q {
        let mut p = BigInt::one();
        for (k, r) in self.basis.iter().enumerate() {
            p *= &r[k];
        }
        Q::new(p, num_traits::pow(self.denom.clone(), self.dim()))
    }

    /// Rational coordinates of `v` with respect to the basis.
    pub fn coords(&self, v: &[Q]) -> Vec<Q> {
        let d = Q::from_integer(self.denom.clone());
        let mut x: Vec<Q> = v.iter().map(|t| t * &d).collect();
        let n = self.dim();
        let mut c = vec![Q::zero(); n];
        for k in (0..n).rev() {
            if x[k].is_zero() {
                continue;
            }
            let t = &x[k] / Q::from_integer(self.basis[k][k].clone());
            for j in 0..=k {
                if !self.basis[k][j].is_zero() {
                    let s = &t * Q::from_integer(self.basis[k][j].clone());
                    x[j] -= s;
                }
            }
            c[k] = t;
        }
        c
    }

    /// Integer coordinates of `v`, if `v` lies in the lattice.
    pub fn int_coords(&self, v: &[Q]) -> Option<Vec<BigInt>> {
        self.coords(v).into_iter().map(|c| if c.is_integer() { Some(c.to_integer()) } else { None }).collect()
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        let d = Q::from_integer(self.denom.clone());
        let mut x = Vec::with_capacity(v.len());
        for t in v {
            let s = t * &d;
            if !s.is_integer() {
                return false;
            }
            x.push(s.to_integer());
        }
        for k in (0..self.dim()).rev() {
            if x[k].is_zero() {
                continue;
            }
            let (t, r) = x[k].div_rem(&self.basis[k][k]);
            if !r.is_zero() {
                return false;
            }
            for j in 0..=k {
                let s = &t * &self.basis[k][j];
                x[j] -= s;
            }
        }
        true
    }

    pub fn contains_lattice(&self, other: &QLattice) -> bool {
        (0..other.dim()).all(|i| self.contains(&other.row_q(i)))
    }

    fn rescaled_rows(&self, d: &BigInt) -> Vec<Vec<BigInt>> {
        let f = d / &self.denom;
        self.basis.iter().map(|r| r.iter().map(|x| x * &f).collect()).collect()
    }

    pub fn sum(&self, other: &QLattice) -> QLattice {
        let d = self.denom.lcm(&other.denom);
        let mut rows = self.rescaled_rows(&d);
        rows.extend(other.rescaled_rows(&d));
        Self::from_int_rows(self.dim(), d, rows).expect("sum of full-rank lattices")
    }

    pub fn intersect(&self, other: &QLattice) -> QLattice {
        let d = self.denom.lcm(&other.denom);
        let a = self.rescaled_rows(&d);
        let b = other.rescaled_rows(&d);
        let b_hnf = hnf_full(self.dim(), b).expect("full rank");
        let ker = kernel_mod(&a, &b_hnf);
        let n = self.dim();
        let rows = ker.iter().map(|c| {
            let mut v = vec![BigInt::zero(); n];
            for (i, ci) in c.iter().enumerate() {
                if ci.is_zero() {
                    continue;
                }
                for j in 0..n {
                    v[j] += ci * &a[i][j];
                }
            }
            v
        });
        Self::from_int_rows(n, d, rows.collect::<Vec<_>>()).expect("intersection of full-rank lattices")
    }

    pub fn intersect_all<'a, I: IntoIterator<Item = &'a QLattice>>(it: I) -> Option<QLattice> {
        let mut it = it.into_iter();
        let mut acc = it.next()?.clone();
        for l in it {
            acc = acc.intersect(l);
        }
        Some(acc)
    }

    /// Scale by a nonzero rational.
    pub fn scale(&self, s: &Q) -> QLattice {
        let d = &self.denom * s.denom();
        let rows = self.basis.iter().map(|r| r.iter().map(|x| x * s.numer()).collect::<Vec<_>>());
        Self::from_int_rows(self.dim(), d, rows.collect::<Vec<_>>()).expect("nonzero scale")
    }

    /// [other : self] for self ⊆ other (or the ratio of covolumes in general).
    pub fn index_in(&self, other: &QLattice) -> Q {
        self.covolume() / other.covolume()
    }

    pub fn is_integral(&self) -> bool {
        self.denom.is_one()
    }
}
