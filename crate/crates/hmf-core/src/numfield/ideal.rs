//! Fractional ideals of Z_F as rank-n Z-lattices in the power basis, and
//! prime ideals from Dedekind factorization.

use super::{FieldDesc, FieldElem, NumFieldError};
use crate::arith::hnf::QLattice;
use crate::arith::int::{factor_bigint, Q};
use crate::arith::poly_fp::Fp;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use serde::{Deserialize, Serialize};
use std::hash::{Hash, Hasher};

/// A nonzero fractional ideal. Equality and hashing use the lattice only.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ZFIdeal {
    lat: QLattice,
    gen: Option<FieldElem>,
}

impl PartialEq for ZFIdeal {
    fn eq(&self, o: &Self) -> bool {
        self.lat == o.lat
    }
}
impl Eq for ZFIdeal {}

impl Hash for ZFIdeal {
    fn hash<H: Hasher>(&self, h: &mut H) {
        self.lat.hash(h)
    }
}

impl ZFIdeal {
    pub fn lattice(&self) -> &QLattice {
        &self.lat
    }

    pub fn gen(&self) -> Option<&FieldElem> {
        self.gen.as_ref()
    }

    pub fn with_gen(mut self, g: FieldElem) -> Self {
        self.gen = Some(g);
        self
    }

    pub fn norm(&self) -> Q {
        self.lat.covolume()
    }

    /// Norm of an integral ideal.
    pub fn norm_int(&self) -> BigInt {
        let n = self.norm();
        assert!(n.is_integer(), "fractional ideal has no integer norm");
        n.to_integer()
    }

    pub fn is_integral(&self) -> bool {
        self.lat.is_integral()
    }

    pub fn is_one(&self) -> bool {
        self.lat == QLattice::standard(self.lat.dim())
    }

    pub fn hnf(&self) -> &[Vec<BigInt>] {
        self.lat.basis()
    }

    pub fn contains(&self, x: &FieldElem) -> bool {
        self.lat.contains(x.coeffs())
    }

    /// `self` divides `other` (i.e. other ⊆ self).
    pub fn divides(&self, other: &ZFIdeal) -> bool {
        self.lat.contains_lattice(&other.lat)
    }

    /// Sort key: norm, then HNF.
    pub fn key(&self) -> (Q, QLattice) {
        (self.norm(), self.lat.clone())
    }
}

/// A prime ideal P = (p, g(w)) of Z_F.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PrimeIdeal {
    pub p: u64,
    /// residue degree
    pub f: u32,
    /// ramification index
    pub e: u32,
    /// position in the canonical order of primes above p
    pub index: usize,
    /// monic factor of f mod p (lowest first)
    pub factor: Vec<u64>,
    pub ideal: ZFIdeal,
}

impl PartialEq for PrimeIdeal {
    fn eq(&self, o: &Self) -> bool {
        self.ideal == o.ideal
    }
}
impl Eq for PrimeIdeal {}

impl PrimeIdeal {
    pub fn norm(&self) -> u64 {
        self.p.pow(self.f)
    }

    pub fn norm_int(&self) -> BigInt {
        BigInt::from(self.norm())
    }

    /// Totally positive generator (always present for primes returned by
    /// [`FieldDesc::factor_rational_prime`]).
    pub fn gen(&self) -> &FieldElem {
        self.ideal.gen().expect("prime ideal generator")
    }

    pub fn label(&self) -> String {
        match self.ideal.gen() {
            Some(g) => format!("({})", g),
            None => format!("P{}_{}", self.p, self.index),
        }
    }
}

impl FieldDesc {
    fn elem_rows(&self, g: &FieldElem) -> Vec<Vec<Q>> {
        self.mul_matrix(g)
    }

    /// Ideal generated by the given elements.
    pub fn ideal_from_gens(&self, gens: &[FieldElem]) -> ZFIdeal {
        let rows: Vec<Vec<Q>> = gens.iter().filter(|g| !g.is_zero()).flat_map(|g| self.elem_rows(g)).collect();
        let lat = QLattice::from_q_rows(self.n, &rows).expect("nonzero ideal");
        let gen = if gens.len() == 1 { Some(gens[0].clone()) } else { None };
        ZFIdeal { lat, gen }
    }

    pub fn principal_ideal(&self, g: &FieldElem) -> ZFIdeal {
        self.ideal_from_gens(std::slice::from_ref(g))
    }

    pub fn unit_ideal(&self) -> ZFIdeal {
        ZFIdeal { lat: QLattice::standard(self.n), gen: Some(self.one()) }
    }

    fn basis_elems(&self, a: &ZFIdeal) -> Vec<FieldElem> {
        a.lat.rows_q().into_iter().map(FieldElem::from_coeffs).collect()
    }

    pub fn ideal_mul(&self, a: &ZFIdeal, b: &ZFIdeal) -> ZFIdeal {
        let ea = self.basis_elems(a);
        let eb = self.basis_elems(b);
        let rows: Vec<Vec<Q>> = ea
            .iter()
            .flat_map(|x| eb.iter().map(move |y| (x, y)))
            .map(|(x, y)| self.mul(x, y).coeffs().to_vec())
            .collect();
        let lat = QLattice::from_q_rows(self.n, &rows).expect("nonzero product");
        let gen = match (&a.gen, &b.gen) {
            (Some(x), Some(y)) => Some(self.mul(x, y)),
            _ => None,
        };
        ZFIdeal { lat, gen }
    }

    pub fn ideal_pow(&self, a: &ZFIdeal, e: u32) -> ZFIdeal {
        let mut r = self.unit_ideal();
        for _ in 0..e {
            r = self.ideal_mul(&r, a);
        }
        r
    }

    pub fn ideal_add(&self, a: &ZFIdeal, b: &ZFIdeal) -> ZFIdeal {
        ZFIdeal { lat: a.lat.sum(&b.lat), gen: None }
    }

    pub fn ideal_intersect(&self, a: &ZFIdeal, b: &ZFIdeal) -> ZFIdeal {
        ZFIdeal { lat: a.lat.intersect(&b.lat), gen: None }
    }

    pub fn ideal_scale(&self, a: &ZFIdeal, s: &FieldElem) -> ZFIdeal {
        let rows: Vec<Vec<Q>> = self.basis_elems(a).iter().map(|x| self.mul(x, s).coeffs().to_vec()).collect();
        let lat = QLattice::from_q_rows(self.n, &rows).expect("nonzero scale");
        ZFIdeal { lat, gen: a.gen.as_ref().map(|g| self.mul(g, s)) }
    }

    pub fn coprime(&self, a: &ZFIdeal, b: &ZFIdeal) -> bool {
        self.ideal_add(a, b).is_one()
    }

    /// Dedekind factorization of p, primes in canonical order, without generators.
    pub(crate) fn factor_rational_prime_raw(&self, p: u64) -> Vec<PrimeIdeal> {
        let fp = Fp::new(p);
        let fbar: Vec<u64> = self
            .f
            .iter()
            .map(|c| {
                use num_integer::Integer;
                c.mod_floor(&BigInt::from(p)).to_u64().unwrap()
            })
            .collect();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(p ^ 0x9e37);
        let mut facs = fp.factor(&fbar, &mut rng);
        facs.sort_by(|a, b| (a.0.len(), &a.0).cmp(&(b.0.len(), &b.0)));
        let pq = Q::from_integer(BigInt::from(p));
        facs.into_iter()
            .enumerate()
            .map(|(index, (g, e))| {
                let ideal = if g.len() - 1 == self.n {
                    self.principal_ideal(&self.from_q(&pq))
                } else {
                    let gq: Vec<Q> = g.iter().map(|&c| Q::from_integer(BigInt::from(c))).collect();
                    let ge = self.from_poly(&gq);
                    let mut id = self.ideal_from_gens(&[self.from_q(&pq), ge]);
                    id.gen = None;
                    id
                };
                PrimeIdeal { p, f: (g.len() - 1) as u32, e, index, factor: g, ideal }
            })
            .collect()
    }

    /// Primes above p in canonical order (residue degree, then factor coefficients),
    /// each with a totally positive generator.
    pub fn factor_rational_prime(&self, p: u64) -> Vec<PrimeIdeal> {
        self.factor_rational_prime_raw(p)
            .into_iter()
            .map(|mut pr| {
                let g = self.totally_positive_generator(&pr.ideal).expect("class number one is certified");
                pr.ideal.gen = Some(g);
                pr
            })
            .collect()
    }

    /// All primes of norm ≤ bound, sorted by (norm, p, index).
    pub fn primes_up_to_norm(&self, bound: u64) -> Vec<PrimeIdeal> {
        let mut out: Vec<PrimeIdeal> = Vec::new();
        for p in crate::arith::int::primes_up_to(bound) {
            for pr in self.factor_rational_prime(p) {
                if pr.norm() <= bound {
                    out.push(pr);
                }
            }
        }
        out.sort_by_key(|pr| (pr.norm(), pr.p, pr.index));
        out
    }

    /// The prime ideal generated by `g` (which must generate a prime).
    pub fn prime_of(&self, g: &FieldElem) -> Result<PrimeIdeal, NumFieldError> {
        let id = self.principal_ideal(g);
        let norm = id.norm();
        if !norm.is_integer() {
            return Err(NumFieldError::NotPrime);
        }
        let nz = norm.to_integer();
        let fac = factor_bigint(&nz).ok_or(NumFieldError::NotPrime)?;
        if fac.len() != 1 {
            return Err(NumFieldError::NotPrime);
        }
        let p = fac[0].0.to_u64().ok_or(NumFieldError::NotPrime)?;
        self.factor_rational_prime(p).into_iter().find(|pr| pr.ideal == id).ok_or(NumFieldError::NotPrime)
    }

    /// v_P(x) for nonzero x.
    pub fn valuation(&self, x: &FieldElem, pr: &PrimeIdeal) -> i64 {
        assert!(!x.is_zero(), "valuation of zero");
        let d = x.denom();
        let mut y = x.scale(&Q::from_integer(d.clone()));
        let pi = pr.gen();
        let mut v = 0i64;
        loop {
            let z = self.div(&y, pi).unwrap();
            if z.is_integral() {
                v += 1;
                y = z;
            } else {
                break;
            }
        }
        let mut dv = 0i64;
        let mut dd = d;
        let pb = BigInt::from(pr.p);
        while (&dd % &pb).is_zero() {
            dd /= &pb;
            dv += 1;
        }
        v - dv * pr.e as i64
    }

    /// v_P(a) for a nonzero ideal.
    pub fn ideal_valuation(&self, a: &ZFIdeal, pr: &PrimeIdeal) -> i64 {
        // a = (1/d) b with b integral
        let d = a.lat.denom().clone();
        let b = ZFIdeal { lat: a.lat.scale(&Q::from_integer(d.clone())), gen: None };
        let mut v = 0i64;
        let mut pk = pr.ideal.clone();
        while pk.divides(&b) {
            v += 1;
            pk = self.ideal_mul(&pk, &pr.ideal);
        }
        let mut dv = 0i64;
        let mut dd = d;
        let pb = BigInt::from(pr.p);
        while (&dd % &pb).is_zero() {
            dd /= &pb;
            dv += 1;
        }
        v - dv * pr.e as i64
    }

    /// Prime factorization of a nonzero fractional ideal.
    pub fn ideal_factor(&self, a: &ZFIdeal) -> Vec<(PrimeIdeal, i64)> {
        let nrm = a.norm();
        let mut ps: Vec<u64> = Vec::new();
        for part in [nrm.numer(), nrm.denom(), a.lat.denom()] {
            if part.is_one() {
                continue;
            }
            for (p, _) in factor_bigint(part).expect("norm factorization") {
                let p = p.to_u64().expect("small prime");
                if !ps.contains(&p) {
                    ps.push(p);
                }
            }
        }
        ps.sort();
        let mut out = Vec::new();
        for p in ps {
            for pr in self.factor_rational_prime(p) {
                let v = self.ideal_valuation(a, &pr);
                if v != 0 {
                    out.push((pr, v));
                }
            }
        }
        out
    }

    pub fn ideal_from_factors(&self, fac: &[(PrimeIdeal, i64)]) -> ZFIdeal {
        let mut g = self.one();
        for (pr, e) in fac {
            g = self.mul(&g, &self.pow(pr.gen(), *e).unwrap());
        }
        self.principal_ideal(&g)
    }

    /// a / b for nonzero ideals.
    pub fn ideal_div(&self, a: &ZFIdeal, b: &ZFIdeal) -> ZFIdeal {
        let mut fac = self.ideal_factor(a);
        for (pr, e) in self.ideal_factor(b) {
            if let Some(x) = fac.iter_mut().find(|x| x.0 == pr) {
                x.1 -= e;
            } else {
                fac.push((pr, -e));
            }
        }
        fac.retain(|x| x.1 != 0);
        self.ideal_from_factors(&fac)
    }

    /// Attach a totally positive generator.
    pub fn with_tp_gen(&self, a: &ZFIdeal) -> Result<ZFIdeal, NumFieldError> {
        let g = self.totally_positive_generator(a)?;
        Ok(ZFIdeal { lat: a.lat.clone(), gen: Some(g) })
    }

    pub fn is_squarefree(&self, a: &ZFIdeal) -> bool {
        self.ideal_factor(a).iter().all(|(_, e)| *e == 1)
    }

    pub fn ideal_is_zero_free(&self, a: &ZFIdeal) -> bool {
        !a.norm().is_zero() && !a.norm().is_negative()
    }
}
