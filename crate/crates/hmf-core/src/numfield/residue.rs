//! Residue rings Z_F / P^e with elements stored as reduced coordinates.

use super::{FieldDesc, FieldElem, NumFieldError, PrimeIdeal, ZFIdeal};
use crate::arith::int::Q;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Element of Z_F / P^e: power-basis coordinates reduced into the HNF box.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RElem(pub Vec<i64>);

#[derive(Clone, Debug)]
pub struct ResidueRing {
    fd: FieldDesc,
    prime: PrimeIdeal,
    e: u32,
    modulus: ZFIdeal,
    hnf: Vec<Vec<i128>>,
    diag: Vec<i64>,
    /// HNFs of P^k for k = 1..=e
    powers: Vec<Vec<Vec<i128>>>,
    s0: FieldElem,
}

impl ResidueRing {
    /// `prime` must carry a generator (as returned by `factor_rational_prime`).
    pub fn new(fd: &FieldDesc, prime: &PrimeIdeal, e: u32) -> ResidueRing {
        assert!(e >= 1);
        let mut powers = vec![prime.ideal.clone()];
        for _ in 1..e {
            powers.push(fd.ideal_mul(powers.last().unwrap(), &prime.ideal));
        }
        let modulus = powers.last().unwrap().clone();
        let to_i128 = |id: &ZFIdeal| -> Vec<Vec<i128>> {
            id.hnf().iter().map(|r| r.iter().map(|x| x.to_i128().expect("small modulus")).collect()).collect()
        };
        let powers: Vec<Vec<Vec<i128>>> = powers.iter().map(to_i128).collect();
        let hnf = powers.last().unwrap().clone();
        let diag = (0..fd.n).map(|i| hnf[i][i] as i64).collect();
        let pi_e = fd.pow(prime.gen(), prime.e as i64).unwrap();
        let s0 = fd.div(&fd.from_int(prime.p as i64), &pi_e).unwrap();
        ResidueRing { fd: fd.clone(), prime: prime.clone(), e, modulus, hnf, diag, powers, s0 }
    }

    pub fn field(&self) -> &FieldDesc {
        &self.fd
    }

    pub fn prime(&self) -> &PrimeIdeal {
        &self.prime
    }

    pub fn exponent(&self) -> u32 {
        self.e
    }

    pub fn modulus(&self) -> &ZFIdeal {
        &self.modulus
    }

    pub fn size(&self) -> u64 {
        self.diag.iter().map(|&d| d as u64).product()
    }

    pub fn unit_count(&self) -> u64 {
        let q = self.prime.norm();
        q.pow(self.e - 1) * (q - 1)
    }

    fn reduce(&self, v: Vec<BigInt>) -> RElem {
        let mut w: Vec<i128> = Vec::with_capacity(v.len());
        // p^e Z_F ⊆ P^e, so coordinates may first be reduced mod p^e
        let m = BigInt::from(self.prime.p).pow(self.e);
        for x in &v {
            w.push(x.mod_floor(&m).to_i128().unwrap());
        }
        self.reduce_i128(&w)
    }

    fn reduce_i128(&self, v: &[i128]) -> RElem {
        let mut w = v.to_vec();
        reduce_i128_hnf(&mut w, &self.hnf);
        RElem(w.into_iter().map(|x| x as i64).collect())
    }

    pub fn zero(&self) -> RElem {
        RElem(vec![0; self.fd.n])
    }

    pub fn one(&self) -> RElem {
        self.from_int(1)
    }

    pub fn from_int(&self, x: i64) -> RElem {
        let mut v = vec![BigInt::zero(); self.fd.n];
        v[0] = BigInt::from(x);
        self.reduce(v)
    }

    /// Reduction of an integral element.
    pub fn from_integral(&self, x: &FieldElem) -> RElem {
        self.reduce(x.to_int_vec())
    }

    /// Reduction of a P-integral element.
    pub fn from_elem(&self, x: &FieldElem) -> Result<RElem, NumFieldError> {
        if x.is_integral() {
            return Ok(self.from_integral(x));
        }
        let d = x.denom();
        let y = x.scale(&Q::from_integer(d.clone()));
        let pb = BigInt::from(self.prime.p);
        let mut t = 0i64;
        let mut dp = d;
        while dp.is_multiple_of(&pb) {
            dp /= &pb;
            t += 1;
        }
        let pik = self.fd.pow(self.prime.gen(), t * self.prime.e as i64).unwrap();
        let z = self.fd.div(&y, &pik).unwrap();
        if !z.is_integral() {
            return Err(NumFieldError::NotIntegral);
        }
        let s = self.fd.mul(&self.fd.pow(&self.s0, t).unwrap(), &self.fd.from_q(&Q::from_integer(dp)));
        let sinv = self.inv(&self.from_integral(&s)).ok_or(NumFieldError::NotIntegral)?;
        Ok(self.mul(&self.from_integral(&z), &sinv))
    }

    pub fn lift(&self, a: &RElem) -> FieldElem {
        self.fd.elem(&a.0)
    }

    pub fn add(&self, a: &RElem, b: &RElem) -> RElem {
        self.reduce(a.0.iter().zip(&b.0).map(|(x, y)| BigInt::from(x + y)).collect())
    }

    pub fn sub(&self, a: &RElem, b: &RElem) -> RElem {
        self.reduce(a.0.iter().zip(&b.0).map(|(x, y)| BigInt::from(x - y)).collect())
    }

    pub fn neg(&self, a: &RElem) -> RElem {
        self.reduce(a.0.iter().map(|x| BigInt::from(-x)).collect())
    }

    pub fn mul(&self, a: &RElem, b: &RElem) -> RElem {
        let x: Vec<i128> = a.0.iter().map(|&c| c as i128).collect();
        let y: Vec<i128> = b.0.iter().map(|&c| c as i128).collect();
        self.reduce_i128(&self.fd.mul_i128(&x, &y))
    }

    pub fn pow(&self, a: &RElem, mut e: u64) -> RElem {
        let mut r = self.one();
        let mut b = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        r
    }

    pub fn is_zero(&self, a: &RElem) -> bool {
        a.0.iter().all(|&c| c == 0)
    }

    pub fn is_unit(&self, a: &RElem) -> bool {
        self.valuation(a) == 0
    }

    pub fn inv(&self, a: &RElem) -> Option<RElem> {
        self.is_unit(a).then(|| self.pow(a, self.unit_count() - 1))
    }

    /// min(v_P(a), e).
    pub fn valuation(&self, a: &RElem) -> u32 {
        self.powers
            .iter()
            .take_while(|h| {
                let mut w: Vec<i128> = a.0.iter().map(|&c| c as i128).collect();
                reduce_i128_hnf(&mut w, h);
                w.iter().all(|&c| c == 0)
            })
            .count() as u32
    }

    /// Mixed-radix index in [0, size).
    pub fn index(&self, a: &RElem) -> u64 {
        let mut idx = 0u64;
        let mut m = 1u64;
        for (c, &d) in a.0.iter().zip(&self.diag) {
            idx += c.mod_floor(&d) as u64 * m;
            m *= d as u64;
        }
        idx
    }

    pub fn elem_at(&self, mut idx: u64) -> RElem {
        let mut v = Vec::with_capacity(self.diag.len());
        for &d in &self.diag {
            v.push((idx % d as u64) as i64);
            idx /= d as u64;
        }
        self.reduce_i128(&v.into_iter().map(|x| x as i128).collect::<Vec<_>>())
    }

    pub fn elements(&self) -> impl Iterator<Item = RElem> + '_ {
        (0..self.size()).map(move |i| self.elem_at(i))
    }

    pub fn is_one(&self, a: &RElem) -> bool {
        *a == self.one()
    }
}

/// Reduce modulo a lower-triangular integer HNF (entries of the result in [0, pivot)).
fn reduce_i128_hnf(v: &mut [i128], h: &[Vec<i128>]) {
    for c in (0..h.len()).rev() {
        let t = v[c].div_euclid(h[c][c]);
        if t != 0 {
            for j in 0..=c {
                v[j] -= t * h[c][j];
            }
        }
    }
}

impl FieldDesc {
    /// Residue ring Z_F / P^e.
    pub fn residue_ring(&self, prime: &PrimeIdeal, e: u32) -> ResidueRing {
        ResidueRing::new(self, prime, e)
    }
}

impl RElem {
    pub fn coords(&self) -> &[i64] {
        &self.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_axioms_and_inverses() {
        let f = FieldDesc::parse("x^2-x-1").unwrap();
        for (p, e) in [(2u64, 1u32), (5, 2), (11, 1), (3, 2)] {
            let pr = f.factor_rational_prime(p).remove(0);
            let r = f.residue_ring(&pr, e);
            assert_eq!(r.size(), pr.norm().pow(e));
            let elems: Vec<RElem> = r.elements().collect();
            let units = elems.iter().filter(|a| r.is_unit(a)).count() as u64;
            assert_eq!(units, r.unit_count());
            for (i, a) in elems.iter().enumerate() {
                assert_eq!(r.index(a), i as u64);
                if let Some(b) = r.inv(a) {
                    assert!(r.is_one(&r.mul(a, &b)));
                }
            }
        }
    }

    #[test]
    fn p_integral_reduction() {
        let f = FieldDesc::parse("x^2-x-1").unwrap();
        let pr = f.factor_rational_prime(11).remove(0);
        let r = f.residue_ring(&pr, 1);
        let x = f.parse_elem("(w+5)/3").unwrap();
        let rx = r.from_elem(&x).unwrap();
        assert_eq!(r.mul(&rx, &r.from_int(3)), r.from_integral(&f.parse_elem("w+5").unwrap()));
        // 11/pi-type elements: (w-4)/(w+3)... v_P((w-4)) = 0, so 1/(w-4) reduces
        let y = f.inv(&f.parse_elem("w-4").unwrap()).unwrap();
        let ry = r.from_elem(&y).unwrap();
        assert!(r.is_one(&r.mul(&ry, &r.from_integral(&f.parse_elem("w-4").unwrap()))));
        let z = f.inv(pr.gen()).unwrap();
        assert_eq!(r.from_elem(&z), Err(NumFieldError::NotIntegral));
        // denominator 11 with compensating numerator: 11 = (w+3)(4-w)*unit-ish
        let u = f.div(&f.mul(pr.gen(), &f.from_int(5)), &f.from_int(11)).unwrap();
        assert!(r.from_elem(&u).is_ok());
    }
}
