//! Totally real number fields F = Q[x]/(f) with Z_F = Z[w], exact element
//! arithmetic, certified signs at the real places, ideals, units, and
//! residue rings.

mod fmat;
mod ideal;
mod residue;
mod units;

pub use fmat::FMat;
pub use ideal::{PrimeIdeal, ZFIdeal};
pub use residue::{RElem, ResidueRing};

use crate::arith::int::{common_denom, factor_bigint, q_to_f64, Q};
use crate::arith::parse::{parse_poly, ParseError};
use crate::arith::poly::{self, QPoly, RootInterval};
use crate::arith::poly_fp::Fp;
use crate::arith::qmat::{self, QMat};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Neg, Sub};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NumFieldError {
    #[error("defining polynomial must be monic with integer coefficients and degree >= 1")]
    NotMonic,
    #[error("defining polynomial is reducible over Q")]
    Reducible,
    #[error("field is not totally real: {real} of {n} roots are real")]
    NotTotallyReal { real: usize, n: usize },
    #[error("Z[w] fails the Dedekind criterion at p = {p}; re-present the field by a monogenic polynomial")]
    NotMonogenicCertified { p: BigInt },
    #[error("prime ideal above {p} of norm {norm} is not principal")]
    ClassNumberNotOne { p: u64, norm: BigInt },
    #[error("sign vectors of -1 and the units span rank {rank} < {n}; strict class number exceeds one")]
    StrictClassNumberNotOne { rank: usize, n: usize },
    #[error("element is zero")]
    ZeroElement,
    #[error("generator search exceeded its cap (T2 bound {bound})")]
    GeneratorSearchExceeded { bound: String },
    #[error("unit search exceeded its cap")]
    UnitSearchExceeded,
    #[error("element is not integral at the requested prime")]
    NotIntegral,
    #[error("ideal is not prime")]
    NotPrime,
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// Element Σ c_k w^k of F, always carrying exactly n coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FieldElem {
    c: Vec<Q>,
}

impl FieldElem {
    pub fn coeffs(&self) -> &[Q] {
        &self.c
    }

    pub fn from_coeffs(c: Vec<Q>) -> Self {
        FieldElem { c }
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    pub fn is_integral(&self) -> bool {
        self.c.iter().all(|x| x.is_integer())
    }

    pub fn is_rational(&self) -> bool {
        self.c.iter().skip(1).all(|x| x.is_zero())
    }

    pub fn denom(&self) -> BigInt {
        common_denom(self.c.iter())
    }

    pub fn scale(&self, s: &Q) -> FieldElem {
        FieldElem { c: self.c.iter().map(|x| x * s).collect() }
    }

    /// Integer coefficient vector; panics if not integral.
    pub fn to_int_vec(&self) -> Vec<BigInt> {
        self.c
            .iter()
            .map(|x| {
                assert!(x.is_integer(), "non-integral element");
                x.to_integer()
            })
            .collect()
    }

    pub fn format(&self, var: &str) -> String {
        let mut c = self.c.clone();
        poly::trim(&mut c);
        poly::to_string_var(&c, var)
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.format("w"))
    }
}

impl Add for &FieldElem {
    type Output = FieldElem;
    fn add(self, o: &FieldElem) -> FieldElem {
        FieldElem { c: self.c.iter().zip(&o.c).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &FieldElem {
    type Output = FieldElem;
    fn sub(self, o: &FieldElem) -> FieldElem {
        FieldElem { c: self.c.iter().zip(&o.c).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        FieldElem { c: self.c.iter().map(|a| -a).collect() }
    }
}

/// A validated totally real field with Z_F = Z[w] and h = h⁺ = 1.
#[derive(Clone, Debug)]
pub struct FieldDesc {
    f: Vec<BigInt>,
    n: usize,
    disc: BigInt,
    /// w^{n+k} in the power basis, k = 0..n-1.
    red: Vec<Vec<BigInt>>,
    /// Tr(w^k), k = 0..2n-1.
    trace_pow: Vec<BigInt>,
    roots: Vec<RootInterval>,
    root_f64: Vec<f64>,
    fq: QPoly,
    fund_units: Vec<FieldElem>,
    /// Units (together with -1) whose sign vectors span F_2^n.
    sign_units: Vec<FieldElem>,
    /// Cap on T2 of a reduced generator of an integral ideal of norm 1.
    gen_t2_factor: f64,
}

impl PartialEq for FieldDesc {
    fn eq(&self, o: &Self) -> bool {
        self.f == o.f
    }
}
impl Eq for FieldDesc {}

impl FieldDesc {
    /// Validate `f` (lowest-degree coefficient first) and build the field.
    pub fn new(f: &[BigInt]) -> Result<FieldDesc, NumFieldError> {
        let mut f = f.to_vec();
        while f.last().is_some_and(|c| c.is_zero()) {
            f.pop();
        }
        if f.len() < 2 || !f.last().unwrap().is_one() {
            return Err(NumFieldError::NotMonic);
        }
        let n = f.len() - 1;
        let fq = poly::from_z(&f);
        if !poly::is_irreducible(&fq) {
            return Err(NumFieldError::Reducible);
        }
        let real = poly::count_real_roots(&fq);
        if real != n {
            return Err(NumFieldError::NotTotallyReal { real, n });
        }
        let mut roots = poly::isolate_real_roots(&fq);
        let eps = Q::new(BigInt::one(), BigInt::one() << 64);
        for r in roots.iter_mut() {
            r.refine_to(&fq, &eps);
        }
        let root_f64 = roots.iter().map(|r| q_to_f64(&r.midpoint())).collect();
        // w^{n+k} reduction table
        let mut red = Vec::with_capacity(n);
        let mut cur: Vec<BigInt> = f[..n].iter().map(|c| -c.clone()).collect();
        for _ in 0..n {
            red.push(cur.clone());
            // multiply by w
            let top = cur[n - 1].clone();
            let mut next = vec![BigInt::zero(); n];
            for k in (1..n).rev() {
                next[k] = cur[k - 1].clone();
            }
            for k in 0..n {
                next[k] -= &top * &f[k];
            }
            cur = next;
        }
        let mut fd = FieldDesc {
            f: f.clone(),
            n,
            disc: BigInt::zero(),
            red,
            trace_pow: Vec::new(),
            roots,
            root_f64,
            fq,
            fund_units: Vec::new(),
            sign_units: Vec::new(),
            gen_t2_factor: f64::INFINITY,
        };
        fd.trace_pow = fd.compute_trace_powers();
        let fprime: Vec<Q> = poly::deriv(&fd.fq);
        let mut fp_elem = fprime.clone();
        fp_elem.resize(n, Q::zero());
        let nrm = fd.norm(&FieldElem { c: fp_elem });
        let sign = if (n * (n - 1) / 2).is_multiple_of(2) { 1 } else { -1 };
        fd.disc = (nrm * Q::from_integer(BigInt::from(sign))).to_integer();
        fd.check_dedekind()?;
        units::compute_units(&mut fd)?;
        fd.check_class_number()?;
        Ok(fd)
    }

    pub fn parse(s: &str) -> Result<FieldDesc, NumFieldError> {
        let p = parse_poly(s, "x")?;
        if p.iter().any(|c| !c.is_integer()) {
            return Err(NumFieldError::NotMonic);
        }
        Self::new(&p.iter().map(|c| c.to_integer()).collect::<Vec<_>>())
    }

    pub fn rationals() -> FieldDesc {
        Self::new(&[BigInt::from(-1), BigInt::one()]).expect("Q is valid")
    }

    fn compute_trace_powers(&self) -> Vec<BigInt> {
        let n = self.n;
        let mut out = Vec::with_capacity(2 * n);
        let mut p = self.one();
        for _ in 0..2 * n {
            let m = self.mul_matrix(&p);
            let t: Q = (0..n).map(|i| m[i][i].clone()).fold(Q::zero(), |a, b| a + b);
            out.push(t.to_integer());
            p = self.mul(&p, &self.gen());
        }
        out
    }

    fn check_dedekind(&self) -> Result<(), NumFieldError> {
        let fac = factor_bigint(&self.disc).unwrap_or_default();
        for (p, e) in fac {
            if e < 2 {
                continue;
            }
            let Some(pu) = p.to_u64() else { continue };
            let fp = Fp::new(pu);
            let fbar: Vec<u64> = self.f.iter().map(|c| c.mod_floor_u64(pu)).collect();
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(pu);
            let facs = fp.factor(&fbar, &mut rng);
            let mut g = vec![1u64];
            let mut h = vec![1u64];
            for (gi, ei) in &facs {
                g = fp.mul(&g, gi);
                for _ in 1..*ei {
                    h = fp.mul(&h, gi);
                }
            }
            // F = (f - g h) / p computed over Z using the [0,p) lifts
            let gz: Vec<BigInt> = g.iter().map(|&c| BigInt::from(c)).collect();
            let hz: Vec<BigInt> = h.iter().map(|&c| BigInt::from(c)).collect();
            let mut gh = vec![BigInt::zero(); gz.len() + hz.len() - 1];
            for (i, a) in gz.iter().enumerate() {
                for (j, b) in hz.iter().enumerate() {
                    gh[i + j] += a * b;
                }
            }
            let len = gh.len().max(self.f.len());
            let pb = BigInt::from(pu);
            let big_f: Vec<u64> = (0..len)
                .map(|i| {
                    let d = self.f.get(i).cloned().unwrap_or_default() - gh.get(i).cloned().unwrap_or_default();
                    (d / &pb).mod_floor_u64(pu)
                })
                .collect();
            let mut big_f = big_f;
            fp.trim(&mut big_f);
            let t = fp.gcd(&fp.gcd(&big_f, &g), &h);
            if t.len() > 1 {
                return Err(NumFieldError::NotMonogenicCertified { p });
            }
        }
        Ok(())
    }

    fn check_class_number(&mut self) -> Result<(), NumFieldError> {
        if self.n == 1 {
            return Ok(());
        }
        let bound = self.minkowski_bound();
        let mut p = 2u64;
        while (p as f64) <= bound {
            if crate::arith::int::is_prime(p) {
                for pr in self.factor_rational_prime_raw(p) {
                    let norm = pr.norm_int();
                    if norm.to_f64().unwrap() <= bound && self.find_generator(&pr.ideal).is_err() {
                        return Err(NumFieldError::ClassNumberNotOne { p, norm });
                    }
                }
            }
            p += 1;
        }
        Ok(())
    }

    pub fn minkowski_bound(&self) -> f64 {
        let n = self.n as f64;
        let mut fact = 1.0;
        for k in 1..=self.n {
            fact *= k as f64;
        }
        fact / n.powf(n) * self.disc.to_f64().unwrap().abs().sqrt()
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    /// Defining polynomial, lowest coefficient first.
    pub fn poly(&self) -> &[BigInt] {
        &self.f
    }

    pub fn poly_string(&self) -> String {
        poly::to_string_var(&self.fq, "x")
    }

    pub fn disc(&self) -> &BigInt {
        &self.disc
    }

    pub fn fund_units(&self) -> &[FieldElem] {
        &self.fund_units
    }

    pub fn root_intervals(&self) -> &[RootInterval] {
        &self.roots
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem { c: vec![Q::zero(); self.n] }
    }

    pub fn one(&self) -> FieldElem {
        self.from_q(&Q::one())
    }

    pub fn from_q(&self, x: &Q) -> FieldElem {
        let mut c = vec![Q::zero(); self.n];
        c[0] = x.clone();
        FieldElem { c }
    }

    pub fn from_int(&self, x: i64) -> FieldElem {
        self.from_q(&Q::from_integer(BigInt::from(x)))
    }

    /// The generator w (equals 1 when n = 1).
    pub fn gen(&self) -> FieldElem {
        if self.n == 1 {
            return self.from_q(&Q::from_integer(-self.f[0].clone()));
        }
        let mut c = vec![Q::zero(); self.n];
        c[1] = Q::one();
        FieldElem { c }
    }

    pub fn elem(&self, c: &[i64]) -> FieldElem {
        self.from_poly(&c.iter().map(|&x| Q::from_integer(BigInt::from(x))).collect::<Vec<_>>())
    }

    pub fn from_int_vec(&self, c: &[BigInt]) -> FieldElem {
        self.from_poly(&c.iter().map(|x| Q::from_integer(x.clone())).collect::<Vec<_>>())
    }

    /// Reduce an arbitrary polynomial in w modulo f.
    pub fn from_poly(&self, p: &[Q]) -> FieldElem {
        let n = self.n;
        let mut c: Vec<Q> = p.to_vec();
        if c.len() < n {
            c.resize(n, Q::zero());
        }
        // reduce high powers using w^n = -(f_0 + ... + f_{n-1} w^{n-1})
        let mut k = c.len();
        while k > n {
            k -= 1;
            let top = std::mem::replace(&mut c[k], Q::zero());
            if top.is_zero() {
                continue;
            }
            for j in 0..n {
                let t = &top * Q::from_integer(self.f[j].clone());
                c[k - n + j] -= t;
            }
        }
        c.truncate(n);
        FieldElem { c }
    }

    pub fn parse_elem(&self, s: &str) -> Result<FieldElem, NumFieldError> {
        Ok(self.from_poly(&parse_poly(s, "w")?))
    }

    pub fn mul(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        let n = self.n;
        let mut prod = vec![Q::zero(); 2 * n - 1];
        for (i, x) in a.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.c.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        let mut c: Vec<Q> = prod[..n].to_vec();
        for k in n..2 * n - 1 {
            if prod[k].is_zero() {
                continue;
            }
            for j in 0..n {
                if !self.red[k - n][j].is_zero() {
                    c[j] += &prod[k] * Q::from_integer(self.red[k - n][j].clone());
                }
            }
        }
        FieldElem { c }
    }

    /// Product of integral coefficient vectors.
    pub fn mul_int(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let n = self.n;
        let mut prod = vec![BigInt::zero(); 2 * n - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        let mut c: Vec<BigInt> = prod[..n].to_vec();
        for k in n..2 * n - 1 {
            if prod[k].is_zero() {
                continue;
            }
            for j in 0..n {
                if !self.red[k - n][j].is_zero() {
                    c[j] += &prod[k] * &self.red[k - n][j];
                }
            }
        }
        c
    }

    /// Product of small integral coefficient vectors.
    pub fn mul_i128(&self, a: &[i128], b: &[i128]) -> Vec<i128> {
        let n = self.n;
        let mut prod = vec![0i128; 2 * n - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] += x * y;
            }
        }
        let mut c: Vec<i128> = prod[..n].to_vec();
        for k in n..2 * n - 1 {
            if prod[k] == 0 {
                continue;
            }
            for j in 0..n {
                let r = self.red[k - n][j].to_i128().expect("small field polynomial");
                c[j] += prod[k] * r;
            }
        }
        c
    }

    /// Rows are the coordinates of a·w^k.
    pub fn mul_matrix(&self, a: &FieldElem) -> QMat {
        let mut rows = Vec::with_capacity(self.n);
        let mut cur = a.clone();
        let w = self.gen();
        for _ in 0..self.n {
            rows.push(cur.c.clone());
            cur = self.mul(&cur, &w);
        }
        rows
    }

    pub fn inv(&self, a: &FieldElem) -> Result<FieldElem, NumFieldError> {
        if a.is_zero() {
            return Err(NumFieldError::ZeroElement);
        }
        if a.is_rational() {
            return Ok(self.from_q(&(Q::one() / &a.c[0])));
        }
        let m = self.mul_matrix(a);
        let mut e0 = vec![Q::zero(); self.n];
        e0[0] = Q::one();
        let x = qmat::solve_left(&m, &e0).expect("nonzero element is invertible");
        Ok(FieldElem { c: x })
    }

    pub fn div(&self, a: &FieldElem, b: &FieldElem) -> Result<FieldElem, NumFieldError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &FieldElem, e: i64) -> Result<FieldElem, NumFieldError> {
        let base = if e < 0 { self.inv(a)? } else { a.clone() };
        let mut r = self.one();
        let mut b = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                r = self.mul(&r, &b);
            }
            b = self.mul(&b, &b);
            k >>= 1;
        }
        Ok(r)
    }

    pub fn trace(&self, a: &FieldElem) -> Q {
        a.c.iter().zip(&self.trace_pow).fold(Q::zero(), |acc, (c, t)| acc + c * Q::from_integer(t.clone()))
    }

    pub fn norm(&self, a: &FieldElem) -> Q {
        if self.n == 1 {
            return a.c[0].clone();
        }
        qmat::det(&self.mul_matrix(a))
    }

    pub fn trace_and_norm(&self, a: &FieldElem) -> (Q, Q) {
        (self.trace(a), self.norm(a))
    }

    /// Exact Tr(w^k) for k < 2n.
    pub fn trace_power(&self, k: usize) -> &BigInt {
        &self.trace_pow[k]
    }

    /// Floating approximations of the real embeddings (sorted by root).
    pub fn embeddings(&self, a: &FieldElem) -> Vec<f64> {
        let cf: Vec<f64> = a.c.iter().map(q_to_f64).collect();
        self.root_f64.iter().map(|&r| cf.iter().rev().fold(0.0, |acc, &c| acc * r + c)).collect()
    }

    /// Exact sign of a at the i-th real place.
    pub fn sign_at(&self, a: &FieldElem, i: usize) -> i8 {
        if a.is_zero() {
            return 0;
        }
        if a.is_rational() {
            return if a.c[0].is_positive() { 1 } else { -1 };
        }
        let mut iv = self.roots[i].clone();
        loop {
            if iv.is_exact() {
                let v = poly::eval(&a.c, &iv.lo);
                return if v.is_positive() { 1 } else { -1 };
            }
            let (lo, hi) = interval_horner(&a.c, &iv.lo, &iv.hi);
            if lo.is_positive() {
                return 1;
            }
            if hi.is_negative() {
                return -1;
            }
            iv.bisect(&self.fq);
        }
    }

    pub fn signs(&self, a: &FieldElem) -> Vec<i8> {
        (0..self.n).map(|i| self.sign_at(a, i)).collect()
    }

    pub fn is_totally_positive(&self, a: &FieldElem) -> Result<bool, NumFieldError> {
        if a.is_zero() {
            return Err(NumFieldError::ZeroElement);
        }
        Ok((0..self.n).all(|i| self.sign_at(a, i) > 0))
    }

    /// Gram matrix of the trace form Tr(xy) on the power basis.
    pub fn t2_gram(&self) -> QMat {
        let n = self.n;
        (0..n).map(|k| (0..n).map(|l| Q::from_integer(self.trace_pow[k + l].clone())).collect()).collect()
    }

    pub fn t2(&self, a: &FieldElem) -> Q {
        self.trace(&self.mul(a, a))
    }
}

trait ModU64 {
    fn mod_floor_u64(&self, p: u64) -> u64;
}

impl ModU64 for BigInt {
    fn mod_floor_u64(&self, p: u64) -> u64 {
        use num_integer::Integer;
        self.mod_floor(&BigInt::from(p)).to_u64().unwrap()
    }
}

/// Enclosure of {g(x) : x ∈ [lo, hi]} by interval Horner evaluation.
fn interval_horner(g: &[Q], lo: &Q, hi: &Q) -> (Q, Q) {
    let mut a = Q::zero();
    let mut b = Q::zero();
    for c in g.iter().rev() {
        let ps = [&a * lo, &a * hi, &b * lo, &b * hi];
        let mn = ps.iter().min().unwrap().clone();
        let mx = ps.iter().max().unwrap().clone();
        a = mn + c;
        b = mx + c;
    }
    (a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int::{bi, q};

    fn qsqrt5() -> FieldDesc {
        FieldDesc::parse("x^2-x-1").unwrap()
    }

    #[test]
    fn golden_field() {
        let f = qsqrt5();
        assert_eq!(f.degree(), 2);
        assert_eq!(f.disc(), &bi(5));
        assert_eq!(f.fund_units(), &[f.gen()]);
        let x = f.parse_elem("3*w+7").unwrap();
        assert_eq!(f.trace_and_norm(&x), (q(17), q(61)));
        assert_eq!(f.trace_and_norm(&f.parse_elem("3*w-14").unwrap()), (q(-25), q(145)));
        assert_eq!(f.trace_and_norm(&f.one()), (q(2), q(1)));
        assert!(!f.is_totally_positive(&f.gen()).unwrap());
        assert!(f.is_totally_positive(&f.parse_elem("w+2").unwrap()).unwrap());
        assert!(!f.is_totally_positive(&f.from_int(-1)).unwrap());
        assert_eq!(f.is_totally_positive(&f.zero()), Err(NumFieldError::ZeroElement));
    }

    #[test]
    fn rational_field() {
        let f = FieldDesc::parse("x-1").unwrap();
        assert_eq!(f.degree(), 1);
        assert!(f.fund_units().is_empty());
        assert_eq!(f.trace_and_norm(&f.one()), (q(1), q(1)));
    }

    #[test]
    fn sqrt29_unit() {
        let f = FieldDesc::parse("x^2-x-7").unwrap();
        assert_eq!(f.fund_units(), &[f.parse_elem("w+2").unwrap()]);
    }

    #[test]
    fn rejections() {
        assert!(matches!(FieldDesc::parse("x^2+1"), Err(NumFieldError::NotTotallyReal { .. })));
        assert!(matches!(FieldDesc::parse("x^2-4"), Err(NumFieldError::Reducible)));
        assert!(matches!(FieldDesc::parse("x^2-5"), Err(NumFieldError::NotMonogenicCertified { .. })));
        assert!(matches!(FieldDesc::parse("2*x^2-1"), Err(NumFieldError::NotMonic)));
        // Q(sqrt 3): h = 1 but h+ = 2
        assert!(matches!(FieldDesc::parse("x^2-3"), Err(NumFieldError::StrictClassNumberNotOne { .. })));
        // Q(sqrt 10): h = 2 (x^2 - 10 is monogenic with disc 40)
        assert!(matches!(FieldDesc::parse("x^2-10"), Err(NumFieldError::ClassNumberNotOne { .. })));
    }

    #[test]
    fn cubic_field() {
        // Q(zeta_7)^+ : x^3 + x^2 - 2x - 1, disc 49
        let f = FieldDesc::parse("x^3+x^2-2*x-1").unwrap();
        assert_eq!(f.disc(), &bi(49));
        assert_eq!(f.fund_units().len(), 2);
        for u in f.fund_units() {
            assert_eq!(f.norm(u).abs(), q(1));
        }
    }

    #[test]
    fn arithmetic_properties() {
        use rand::Rng;
        let f = qsqrt5();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..30 {
            let a = f.elem(&[rng.gen_range(-20..20), rng.gen_range(-20..20)]);
            let b = f.elem(&[rng.gen_range(-20..20), rng.gen_range(-20..20)]);
            assert_eq!(f.trace(&(&a + &b)), f.trace(&a) + f.trace(&b));
            assert_eq!(f.norm(&f.mul(&a, &b)), f.norm(&a) * f.norm(&b));
            if !a.is_zero() {
                assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), f.one());
                let emb = f.embeddings(&a);
                let s = f.signs(&a);
                for (e, sg) in emb.iter().zip(s) {
                    if e.abs() > 1e-6 {
                        assert_eq!(*e > 0.0, sg > 0);
                    }
                }
            }
        }
    }
}
