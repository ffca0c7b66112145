//! Quaternion algebras B = (a, b | F) with i² = a, j² = b, ji = -ij.

mod hilbert;

pub use hilbert::hilbert_symbol;

use crate::arith::int::Q;
use crate::numfield::{FieldDesc, FieldElem, NumFieldError, PrimeIdeal, ZFIdeal};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QuatError {
    #[error("structure constants must be nonzero")]
    ZeroConstant,
    #[error("ramified place count is odd ({0}); Hilbert symbol computation is inconsistent")]
    ParityViolation(usize),
    #[error("no definite algebra with the requested discriminant up to height {0}")]
    SearchExhausted(i64),
    #[error("discriminant must be a squarefree integral ideal")]
    BadDiscriminant,
    #[error("algebra is not totally definite")]
    DefinitenessRequired,
    #[error(transparent)]
    Field(#[from] NumFieldError),
}

/// Element t + x i + y j + z ij.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QuatElem {
    pub c: [FieldElem; 4],
}

#[derive(Clone, Debug)]
pub struct QuatAlgebra {
    field: FieldDesc,
    a: FieldElem,
    b: FieldElem,
    disc: ZFIdeal,
    ramified_finite: Vec<PrimeIdeal>,
    ramified_real: Vec<usize>,
}

impl PartialEq for QuatAlgebra {
    fn eq(&self, o: &Self) -> bool {
        self.field == o.field && self.a == o.a && self.b == o.b
    }
}
impl Eq for QuatAlgebra {}

impl QuatAlgebra {
    pub fn new(field: &FieldDesc, a: &FieldElem, b: &FieldElem) -> Result<QuatAlgebra, QuatError> {
        if a.is_zero() || b.is_zero() {
            return Err(QuatError::ZeroConstant);
        }
        let ramified_real: Vec<usize> =
            (0..field.degree()).filter(|&i| field.sign_at(a, i) < 0 && field.sign_at(b, i) < 0).collect();
        let ramified_finite = ramified_primes(field, a, b);
        let total = ramified_real.len() + ramified_finite.len();
        if total % 2 == 1 {
            return Err(QuatError::ParityViolation(total));
        }
        let mut g = field.one();
        for pr in &ramified_finite {
            g = field.mul(&g, pr.gen());
        }
        let disc = field.principal_ideal(&g);
        Ok(QuatAlgebra { field: field.clone(), a: a.clone(), b: b.clone(), disc, ramified_finite, ramified_real })
    }

    pub fn field(&self) -> &FieldDesc {
        &self.field
    }
    pub fn a(&self) -> &FieldElem {
        &self.a
    }
    pub fn b(&self) -> &FieldElem {
        &self.b
    }
    pub fn disc(&self) -> &ZFIdeal {
        &self.disc
    }
    pub fn ramified_finite(&self) -> &[PrimeIdeal] {
        &self.ramified_finite
    }
    pub fn is_definite(&self) -> bool {
        self.ramified_real.len() == self.field.degree()
    }

    /// Dimension over Q.
    pub fn qdim(&self) -> usize {
        4 * self.field.degree()
    }

    pub fn zero(&self) -> QuatElem {
        let z = self.field.zero();
        QuatElem { c: [z.clone(), z.clone(), z.clone(), z] }
    }
    pub fn one(&self) -> QuatElem {
        self.from_field(&self.field.one())
    }
    pub fn from_field(&self, x: &FieldElem) -> QuatElem {
        let mut e = self.zero();
        e.c[0] = x.clone();
        e
    }
    /// Basis element 1, i, j or ij.
    pub fn basis(&self, k: usize) -> QuatElem {
        let mut e = self.zero();
        e.c[k] = self.field.one();
        e
    }
    pub fn elem(&self, t: &FieldElem, x: &FieldElem, y: &FieldElem, z: &FieldElem) -> QuatElem {
        QuatElem { c: [t.clone(), x.clone(), y.clone(), z.clone()] }
    }

    /// Rational coordinates in the basis w^k·{1,i,j,ij}, index c·n + k.
    pub fn coords(&self, u: &QuatElem) -> Vec<Q> {
        u.c.iter().flat_map(|x| x.coeffs().iter().cloned()).collect()
    }
    pub fn from_coords(&self, v: &[Q]) -> QuatElem {
        let n = self.field.degree();
        let c: Vec<FieldElem> = (0..4).map(|k| FieldElem::from_coeffs(v[k * n..(k + 1) * n].to_vec())).collect();
        QuatElem { c: c.try_into().unwrap() }
    }
    pub fn from_int_coords(&self, v: &[BigInt]) -> QuatElem {
        self.from_coords(&v.iter().map(|x| Q::from_integer(x.clone())).collect::<Vec<_>>())
    }

    pub fn add(&self, u: &QuatElem, v: &QuatElem) -> QuatElem {
        QuatElem { c: std::array::from_fn(|k| &u.c[k] + &v.c[k]) }
    }
    pub fn sub(&self, u: &QuatElem, v: &QuatElem) -> QuatElem {
        QuatElem { c: std::array::from_fn(|k| &u.c[k] - &v.c[k]) }
    }
    pub fn neg(&self, u: &QuatElem) -> QuatElem {
        QuatElem { c: std::array::from_fn(|k| -&u.c[k]) }
    }
    pub fn scale(&self, u: &QuatElem, s: &FieldElem) -> QuatElem {
        QuatElem { c: std::array::from_fn(|k| self.field.mul(&u.c[k], s)) }
    }

    pub fn mul(&self, u: &QuatElem, v: &QuatElem) -> QuatElem {
        let f = &self.field;
        let m = |x: &FieldElem, y: &FieldElem| f.mul(x, y);
        let [t1, x1, y1, z1] = &u.c;
        let [t2, x2, y2, z2] = &v.c;
        let (a, b) = (&self.a, &self.b);
        let ab = m(a, b);
        let t = &(&(&m(t1, t2) + &m(a, &m(x1, x2))) + &m(b, &m(y1, y2))) - &m(&ab, &m(z1, z2));
        let x = &(&(&m(t1, x2) + &m(x1, t2)) - &m(b, &m(y1, z2))) + &m(b, &m(z1, y2));
        let y = &(&(&m(t1, y2) + &m(y1, t2)) + &m(a, &m(x1, z2))) - &m(a, &m(z1, x2));
        let z = &(&(&m(t1, z2) + &m(z1, t2)) + &m(x1, y2)) - &m(y1, x2);
        QuatElem { c: [t, x, y, z] }
    }

    pub fn conj(&self, u: &QuatElem) -> QuatElem {
        QuatElem { c: [u.c[0].clone(), -&u.c[1], -&u.c[2], -&u.c[3]] }
    }

    pub fn nrd(&self, u: &QuatElem) -> FieldElem {
        let f = &self.field;
        let [t, x, y, z] = &u.c;
        let ab = f.mul(&self.a, &self.b);
        &(&(&f.mul(t, t) - &f.mul(&self.a, &f.mul(x, x))) - &f.mul(&self.b, &f.mul(y, y))) + &f.mul(&ab, &f.mul(z, z))
    }

    pub fn trd(&self, u: &QuatElem) -> FieldElem {
        &u.c[0] + &u.c[0]
    }

    /// trd(u v̄), the bilinear form with trd(u ū) = 2 nrd(u).
    pub fn trd_pair(&self, u: &QuatElem, v: &QuatElem) -> FieldElem {
        self.trd(&self.mul(u, &self.conj(v)))
    }

    pub fn inv(&self, u: &QuatElem) -> Result<QuatElem, QuatError> {
        let n = self.nrd(u);
        let ni = self.field.inv(&n)?;
        Ok(self.scale(&self.conj(u), &ni))
    }

    pub fn is_zero(&self, u: &QuatElem) -> bool {
        u.c.iter().all(|x| x.is_zero())
    }

    /// Parse an element in i, j, k (= ij) and w, e.g. "1/2 + w*i + j".
    pub fn parse_elem(&self, s: &str) -> Result<QuatElem, QuatError> {
        parse_quat(self, s)
    }

    pub fn format_elem(&self, u: &QuatElem) -> String {
        let names = ["", "i", "j", "k"];
        let mut parts = Vec::new();
        for (k, x) in u.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let s = x.to_string();
            parts.push(if k == 0 { s } else { format!("({})*{}", s, names[k]) });
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

impl fmt::Display for QuatElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}, {}, {}]", self.c[0], self.c[1], self.c[2], self.c[3])
    }
}

/// Finite primes where (a, b) ramifies, sorted by (norm, p, index).
fn ramified_primes(field: &FieldDesc, a: &FieldElem, b: &FieldElem) -> Vec<PrimeIdeal> {
    let mut ps: Vec<u64> = vec![2];
    for x in [a, b] {
        let nrm = field.norm(x);
        for part in [nrm.numer(), nrm.denom()] {
            let fac = crate::arith::int::factor_bigint(part).expect("norm factorization");
            for (p, _) in fac {
                let p = p.to_u64().expect("small prime");
                if !ps.contains(&p) {
                    ps.push(p);
                }
            }
        }
    }
    ps.sort();
    let mut out = Vec::new();
    for p in ps {
        for pr in field.factor_rational_prime(p) {
            if hilbert_symbol(field, a, b, &pr) == -1 {
                out.push(pr);
            }
        }
    }
    out.sort_by_key(|pr| (pr.norm(), pr.p, pr.index));
    out
}

/// Candidate constants of height h: elements with max |coefficient| = h,
/// ordered by (sum of |c|, coefficients with negatives first).
fn elements_of_height(field: &FieldDesc, h: i64) -> Vec<FieldElem> {
    let n = field.degree();
    let mut out: Vec<Vec<i64>> = Vec::new();
    let mut c = vec![-h; n];
    loop {
        if c.iter().map(|x| x.abs()).max() == Some(h) {
            out.push(c.clone());
        }
        let mut k = 0;
        loop {
            if k == n {
                out.sort_by_key(|v| {
                    (
                        v.iter().map(|x| x.abs()).sum::<i64>(),
                        v.iter().map(|x| (x.abs(), -x.signum())).collect::<Vec<_>>(),
                    )
                });
                return out.iter().map(|v| field.elem(v)).collect();
            }
            if c[k] < h {
                c[k] += 1;
                break;
            }
            c[k] = -h;
            k += 1;
        }
    }
}

fn is_totally_negative(field: &FieldDesc, x: &FieldElem) -> bool {
    (0..field.degree()).all(|i| field.sign_at(x, i) < 0)
}

/// First totally definite algebra (a, b) in canonical (height, then element order)
/// order whose discriminant equals `target`.
pub fn find_definite_algebra(field: &FieldDesc, target: &ZFIdeal, max_height: i64) -> Result<QuatAlgebra, QuatError> {
    if !target.is_integral() || !field.is_squarefree(target) {
        return Err(QuatError::BadDiscriminant);
    }
    let tprimes: Vec<PrimeIdeal> = field.ideal_factor(target).into_iter().map(|x| x.0).collect();
    if (tprimes.len() + field.degree()) % 2 == 1 {
        return Err(QuatError::SearchExhausted(0));
    }
    let mut pool: Vec<FieldElem> = Vec::new();
    for h in 1..=max_height {
        let new: Vec<FieldElem> =
            elements_of_height(field, h).into_iter().filter(|x| is_totally_negative(field, x)).collect();
        let start = pool.len();
        pool.extend(new);
        // pairs (a, b) with a <= b in pool order and b of height h
        for bi in start..pool.len() {
            for ai in 0..=bi {
                let (a, b) = (&pool[ai], &pool[bi]);
                let prod = field.principal_ideal(&field.mul(&field.mul(a, b), &field.from_int(2)));
                if !tprimes.iter().all(|pr| pr.ideal.divides(&prod)) {
                    continue;
                }
                let alg = QuatAlgebra::new(field, a, b)?;
                if alg.disc() == target {
                    return Ok(alg);
                }
            }
        }
    }
    Err(QuatError::SearchExhausted(max_height))
}

fn parse_quat(alg: &QuatAlgebra, s: &str) -> Result<QuatElem, QuatError> {
    // split into top-level terms, each a product containing at most one of i, j, k
    let f = alg.field();
    let mut acc = alg.zero();
    let bytes: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut depth = 0i32;
    let mut start = 0usize;
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut sign = false;
    for (idx, &ch) in bytes.iter().enumerate() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' | '-' if depth == 0 && idx > 0 && !matches!(bytes[idx - 1], '*' | '/' | '^') => {
                let t: String = bytes[start..idx].iter().collect();
                if !t.is_empty() {
                    terms.push((sign, t));
                }
                sign = ch == '-';
                start = idx + 1;
            }
            '-' if depth == 0 && idx == 0 => {
                sign = true;
                start = 1;
            }
            _ => {}
        }
    }
    let t: String = bytes[start..].iter().collect();
    if !t.is_empty() {
        terms.push((sign, t));
    }
    for (neg, t) in terms {
        let mut unit = 0usize;
        let mut rest: Vec<String> = Vec::new();
        for factor in split_top(&t, '*') {
            match factor.as_str() {
                "i" => unit = 1,
                "j" => unit = 2,
                "k" => unit = 3,
                _ => rest.push(factor),
            }
        }
        let coef = if rest.is_empty() { f.one() } else { f.parse_elem(&rest.join("*"))? };
        let coef = if neg { -&coef } else { coef };
        acc = alg.add(&acc, &alg.scale(&alg.basis(unit), &coef));
    }
    Ok(acc)
}

fn split_top(s: &str, sep: char) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if ch == sep && depth == 0 {
            out.push(std::mem::take(&mut cur));
        } else {
            cur.push(ch);
        }
    }
    out.push(cur);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int::q;
    use rand::{Rng, SeedableRng};

    fn alg(field: &str, a: &str, b: &str) -> QuatAlgebra {
        let f = FieldDesc::parse(field).unwrap();
        let (a, b) = (f.parse_elem(a).unwrap(), f.parse_elem(b).unwrap());
        QuatAlgebra::new(&f, &a, &b).unwrap()
    }

    #[test]
    fn arithmetic() {
        let b = alg("x^2-x-1", "-1", "-1");
        let i = b.basis(1);
        assert_eq!(b.nrd(&i), b.field().one());
        assert_eq!(b.trd(&i), b.field().zero());
        assert_eq!(b.nrd(&b.one()), b.field().one());
        assert_eq!(b.trd(&b.one()), b.field().from_int(2));
        let j = b.basis(2);
        assert_eq!(b.mul(&j, &i), b.neg(&b.mul(&i, &j)));
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let f = b.field().clone();
        let rnd = |rng: &mut rand_chacha::ChaCha8Rng| {
            let c: Vec<FieldElem> = (0..4).map(|_| f.elem(&[rng.gen_range(-5..5), rng.gen_range(-5..5)])).collect();
            b.elem(&c[0], &c[1], &c[2], &c[3])
        };
        for _ in 0..20 {
            let (u, v, w) = (rnd(&mut rng), rnd(&mut rng), rnd(&mut rng));
            assert_eq!(b.nrd(&b.mul(&u, &v)), f.mul(&b.nrd(&u), &b.nrd(&v)));
            assert_eq!(b.mul(&b.mul(&u, &v), &w), b.mul(&u, &b.mul(&v, &w)));
            assert_eq!(b.mul(&u, &b.conj(&u)), b.from_field(&b.nrd(&u)));
            assert_eq!(b.trd(&b.add(&u, &v)), &b.trd(&u) + &b.trd(&v));
        }
    }

    #[test]
    fn pizer_form() {
        let b = alg("x-1", "-1", "-23");
        let k = b.parse_elem("1/2 + 1/2*j").unwrap();
        let ik = b.mul(&b.basis(1), &k);
        let (x, y, z, w) = (3i64, -2i64, 5i64, 1i64);
        let el = [b.one(), b.basis(1), k, ik];
        let mut v = b.zero();
        for (c, e) in [x, y, z, w].iter().zip(&el) {
            v = b.add(&v, &b.scale(e, &b.field().from_int(*c)));
        }
        let want = x * x + x * z + y * y + y * w + 6 * z * z + 6 * w * w;
        assert_eq!(b.nrd(&v), b.field().from_int(want));
        assert_eq!(b.nrd(&b.parse_elem("1+i").unwrap()), b.field().from_int(2));
    }

    #[test]
    fn discriminants() {
        let b = alg("x^2-x-1", "-1", "-1");
        assert!(b.disc().is_one());
        assert!(b.is_definite());
        let b = alg("x-1", "-1", "-23");
        assert_eq!(b.disc().norm(), q(23));
        let b = alg("x-1", "-1", "-1");
        assert_eq!(b.disc().norm(), q(2));
        let b = alg("x-1", "-1", "3");
        assert!(!b.is_definite());
        assert_eq!(b.disc().norm(), q(6));
    }

    #[test]
    fn product_formula_random() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for field in ["x-1", "x^2-x-1", "x^2-x-7"] {
            let f = FieldDesc::parse(field).unwrap();
            for _ in 0..17 {
                let n = f.degree();
                let mut r = || f.elem(&(0..n).map(|_| rng.gen_range(-12..12)).collect::<Vec<_>>());
                let (a, b) = (r(), r());
                if a.is_zero() || b.is_zero() {
                    continue;
                }
                // construction fails with ParityViolation if the product formula breaks
                if let Err(e) = QuatAlgebra::new(&f, &a, &b) {
                    panic!("{field} ({a}, {b}): {e}");
                }
            }
        }
    }

    #[test]
    fn search() {
        let f = FieldDesc::parse("x^2-x-1").unwrap();
        let b = find_definite_algebra(&f, &f.unit_ideal(), 4).unwrap();
        assert_eq!((b.a(), b.b()), (&f.from_int(-1), &f.from_int(-1)));
        let q1 = FieldDesc::parse("x-1").unwrap();
        let t = q1.principal_ideal(&q1.from_int(23));
        let b = find_definite_algebra(&q1, &t, 30).unwrap();
        assert_eq!(b.disc(), &t);
        assert!(matches!(find_definite_algebra(&q1, &q1.unit_ideal(), 5), Err(QuatError::SearchExhausted(_))));
        let t2 = f.principal_ideal(&f.parse_elem("2*(w+2)").unwrap());
        let b = find_definite_algebra(&f, &t2, 6).unwrap();
        assert_eq!(b.disc(), &t2);
    }
}
