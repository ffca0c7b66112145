//! Univariate polynomials over a prime field F_p (coefficients lowest first).

use num_bigint::BigUint;
use rand::Rng;

pub type FpPoly = Vec<u64>;

#[derive(Clone, Copy, Debug)]
pub struct Fp {
    pub p: u64,
}

impl Fp {
    pub fn new(p: u64) -> Self {
        Fp { p }
    }

    #[inline]
    pub fn mulm(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    #[inline]
    pub fn addm(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn subm(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    pub fn powm(&self, mut b: u64, mut e: u64) -> u64 {
        let mut r = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mulm(r, b);
            }
            b = self.mulm(b, b);
            e >>= 1;
        }
        r
    }

    pub fn inv(&self, a: u64) -> u64 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero");
        self.powm(a, self.p - 2)
    }

    pub fn trim(&self, a: &mut FpPoly) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    pub fn from_i64(&self, v: &[i64]) -> FpPoly {
        let mut r: FpPoly = v.iter().map(|&x| x.rem_euclid(self.p as i64) as u64).collect();
        self.trim(&mut r);
        r
    }

    pub fn deg(a: &FpPoly) -> isize {
        a.len() as isize - 1
    }

    pub fn add(&self, a: &FpPoly, b: &FpPoly) -> FpPoly {
        let n = a.len().max(b.len());
        let mut r: FpPoly = (0..n).map(|i| self.addm(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0))).collect();
        self.trim(&mut r);
        r
    }

    pub fn sub(&self, a: &FpPoly, b: &FpPoly) -> FpPoly {
        let n = a.len().max(b.len());
        let mut r: FpPoly = (0..n).map(|i| self.subm(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0))).collect();
        self.trim(&mut r);
        r
    }

    pub fn mul(&self, a: &FpPoly, b: &FpPoly) -> FpPoly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut r = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                r[i + j] = self.addm(r[i + j], self.mulm(x, y));
            }
        }
        self.trim(&mut r);
        r
    }

    pub fn scal(&self, a: &FpPoly, s: u64) -> FpPoly {
        let mut r: FpPoly = a.iter().map(|&x| self.mulm(x, s)).collect();
        self.trim(&mut r);
        r
    }

    pub fn monic(&self, a: &FpPoly) -> FpPoly {
        match a.last() {
            None => Vec::new(),
            Some(&l) => self.scal(a, self.inv(l)),
        }
    }

    pub fn divrem(&self, a: &FpPoly, b: &FpPoly) -> (FpPoly, FpPoly) {
        assert!(!b.is_empty(), "division by zero polynomial");
        let mut r = a.clone();
        self.trim(&mut r);
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let lb = self.inv(*b.last().unwrap());
        let mut qt = vec![0u64; r.len() - b.len() + 1];
        while r.len() >= b.len() {
            let c = self.mulm(*r.last().unwrap(), lb);
            let sh = r.len() - b.len();
            qt[sh] = c;
            for (j, &y) in b.iter().enumerate() {
                r[sh + j] = self.subm(r[sh + j], self.mulm(c, y));
            }
            self.trim(&mut r);
        }
        self.trim(&mut qt);
        (qt, r)
    }

    pub fn rem(&self, a: &FpPoly, b: &FpPoly) -> FpPoly {
        self.divrem(a, b).1
    }

    pub fn gcd(&self, a: &FpPoly, b: &FpPoly) -> FpPoly {
        let (mut x, mut y) = (a.clone(), b.clone());
        self.trim(&mut x);
        self.trim(&mut y);
        while !y.is_empty() {
            let r = self.rem(&x, &y);
            x = y;
            y = r;
        }
        self.monic(&x)
    }

    /// Extended gcd: (g, s, t) with s*a + t*b = g monic.
    pub fn xgcd(&self, a: &FpPoly, b: &FpPoly) -> (FpPoly, FpPoly, FpPoly) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (vec![1u64], Vec::new());
        let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
        while !r1.is_empty() {
            let (qt, r) = self.divrem(&r0, &r1);
            let s = self.sub(&s0, &self.mul(&qt, &s1));
            let t = self.sub(&t0, &self.mul(&qt, &t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        let l = self.inv(*r0.last().expect("xgcd of zeros"));
        (self.scal(&r0, l), self.scal(&s0, l), self.scal(&t0, l))
    }

    pub fn deriv(&self, a: &FpPoly) -> FpPoly {
        let mut r: FpPoly = a.iter().enumerate().skip(1).map(|(i, &x)| self.mulm(x, i as u64 % self.p)).collect();
        self.trim(&mut r);
        r
    }

    pub fn powmod(&self, base: &FpPoly, e: &BigUint, m: &FpPoly) -> FpPoly {
        let mut r = self.rem(&vec![1u64], m);
        let b = self.rem(base, m);
        for i in (0..e.bits()).rev() {
            r = self.rem(&self.mul(&r, &r), m);
            if e.bit(i) {
                r = self.rem(&self.mul(&r, &b), m);
            }
        }
        r
    }

    pub fn eval(&self, a: &FpPoly, x: u64) -> u64 {
        a.iter().rev().fold(0, |acc, &c| self.addm(self.mulm(acc, x), c))
    }

    /// Squarefree decomposition of a monic polynomial.
    pub fn squarefree(&self, f: &FpPoly) -> Vec<(FpPoly, u32)> {
        let f = self.monic(f);
        if f.len() <= 1 {
            return Vec::new();
        }
        let mut out = Vec::new();
        let d = self.deriv(&f);
        let mut c = self.gcd(&f, &d);
        let mut w = self.divrem(&f, &c).0;
        let mut i = 1u32;
        while w.len() > 1 {
            let y = self.gcd(&w, &c);
            let z = self.divrem(&w, &y).0;
            if z.len() > 1 {
                out.push((self.monic(&z), i));
            }
            i += 1;
            w = y;
            c = self.divrem(&c, &w).0;
        }
        if c.len() > 1 {
            let p = self.p as usize;
            let root: FpPoly = c.iter().step_by(p).copied().collect();
            for (g, e) in self.squarefree(&root) {
                out.push((g, e * self.p as u32));
            }
        }
        out
    }

    /// Distinct-degree factorization of a monic squarefree polynomial.
    pub fn ddf(&self, f: &FpPoly) -> Vec<(FpPoly, usize)> {
        let mut out = Vec::new();
        let mut fs = self.monic(f);
        let x = vec![0u64, 1];
        let mut h = self.rem(&x, &fs);
        let p = BigUint::from(self.p);
        let mut d = 1;
        while Self::deg(&fs) >= 2 * d as isize {
            h = self.powmod(&h, &p, &fs);
            let g = self.gcd(&self.sub(&h, &x), &fs);
            if g.len() > 1 {
                out.push((g.clone(), d));
                fs = self.divrem(&fs, &g).0;
                h = self.rem(&h, &fs);
            }
            d += 1;
        }
        if fs.len() > 1 {
            let dd = fs.len() - 1;
            out.push((fs, dd));
        }
        out
    }

    /// Equal-degree splitting (Cantor–Zassenhaus) of a product of degree-d irreducibles.
    pub fn edf<R: Rng>(&self, f: &FpPoly, d: usize, rng: &mut R) -> Vec<FpPoly> {
        let n = f.len() - 1;
        if n == d {
            return vec![self.monic(f)];
        }
        loop {
            let a: FpPoly = {
                let mut a: FpPoly = (0..n).map(|_| rng.gen_range(0..self.p)).collect();
                self.trim(&mut a);
                a
            };
            if a.len() <= 1 {
                continue;
            }
            let t = if self.p == 2 {
                let mut acc = a.clone();
                let mut cur = a.clone();
                for _ in 1..d {
                    cur = self.rem(&self.mul(&cur, &cur), f);
                    acc = self.add(&acc, &cur);
                }
                acc
            } else {
                let e = (num_traits::pow(BigUint::from(self.p), d) - 1u32) / 2u32;
                let pw = self.powmod(&a, &e, f);
                self.sub(&pw, &vec![1u64])
            };
            let g = self.gcd(&t, f);
            if g.len() > 1 && g.len() < f.len() {
                let h = self.divrem(f, &g).0;
                let mut out = self.edf(&g, d, rng);
                out.extend(self.edf(&h, d, rng));
                return out;
            }
        }
    }

    /// Full factorization into monic irreducibles with multiplicities, sorted.
    pub fn factor<R: Rng>(&self, f: &FpPoly, rng: &mut R) -> Vec<(FpPoly, u32)> {
        let mut out = Vec::new();
        for (g, e) in self.squarefree(f) {
            for (h, d) in self.ddf(&g) {
                for k in self.edf(&h, d, rng) {
                    out.push((k, e));
                }
            }
        }
        out.sort_by(|a, b| {
            (a.0.len(), a.0.iter().rev().collect::<Vec<_>>()).cmp(&(b.0.len(), b.0.iter().rev().collect::<Vec<_>>()))
        });
        out
    }

    /// Roots in F_p of f, sorted.
    pub fn roots(&self, f: &FpPoly) -> Vec<u64> {
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(self.p);
        let mut r: Vec<u64> = self
            .factor(f, &mut rng)
            .into_iter()
            .filter(|(g, _)| g.len() == 2)
            .map(|(g, _)| self.subm(0, g[0]))
            .collect();
        r.sort();
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn factor_x4_minus_1_mod_5() {
        let fp = Fp::new(5);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let f = fp.from_i64(&[-1, 0, 0, 0, 1]);
        let fac = fp.factor(&f, &mut rng);
        assert_eq!(fac.len(), 4);
        assert!(fac.iter().all(|(g, e)| g.len() == 2 && *e == 1));
    }

    #[test]
    fn factor_with_multiplicity_char2() {
        let fp = Fp::new(2);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        // (x^2+x+1)^2 (x+1)^3
        let a = fp.from_i64(&[1, 1, 1]);
        let b = fp.from_i64(&[1, 1]);
        let f = fp.mul(&fp.mul(&a, &a), &fp.mul(&b, &fp.mul(&b, &b)));
        let fac = fp.factor(&f, &mut rng);
        assert_eq!(fac, vec![(b.clone(), 3), (a.clone(), 2)]);
    }

    #[test]
    fn roots_golden_ratio() {
        // x^2 - x - 1 mod 61: roots 18 and 44
        let fp = Fp::new(61);
        assert_eq!(fp.roots(&fp.from_i64(&[-1, -1, 1])), vec![18, 44]);
        let fp2 = Fp::new(2);
        assert!(fp2.roots(&fp2.from_i64(&[-1, -1, 1])).is_empty());
    }

    #[test]
    fn xgcd_bezout() {
        let fp = Fp::new(7);
        let a = fp.from_i64(&[1, 2, 3, 1]);
        let b = fp.from_i64(&[3, 0, 1]);
        let (g, s, t) = fp.xgcd(&a, &b);
        assert_eq!(fp.add(&fp.mul(&s, &a), &fp.mul(&t, &b)), g);
    }
}
