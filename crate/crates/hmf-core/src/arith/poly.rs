//! Polynomials over Q and Z (coefficients lowest first): arithmetic, Sturm
//! sequences, real-root isolation, and factorization over Q.

use super::int::{common_denom, Q};
use super::poly_fp::{Fp, FpPoly};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;

pub type QPoly = Vec<Q>;
pub type ZPoly = Vec<BigInt>;

pub fn trim(a: &mut QPoly) {
    while a.last().is_some_and(|x| x.is_zero()) {
        a.pop();
    }
}

pub fn ztrim(a: &mut ZPoly) {
    while a.last().is_some_and(|x| x.is_zero()) {
        a.pop();
    }
}

pub fn deg(a: &QPoly) -> isize {
    a.len() as isize - 1
}

pub fn from_z(a: &ZPoly) -> QPoly {
    a.iter().map(|x| Q::from_integer(x.clone())).collect()
}

pub fn from_i64(a: &[i64]) -> QPoly {
    let mut r: QPoly = a.iter().map(|&x| Q::from_integer(BigInt::from(x))).collect();
    trim(&mut r);
    r
}

pub fn add(a: &QPoly, b: &QPoly) -> QPoly {
    let n = a.len().max(b.len());
    let z = Q::zero();
    let mut r: QPoly = (0..n).map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z)).collect();
    trim(&mut r);
    r
}

pub fn sub(a: &QPoly, b: &QPoly) -> QPoly {
    let n = a.len().max(b.len());
    let z = Q::zero();
    let mut r: QPoly = (0..n).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect();
    trim(&mut r);
    r
}

pub fn mul(a: &QPoly, b: &QPoly) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut r = vec![Q::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            r[i + j] += x * y;
        }
    }
    trim(&mut r);
    r
}

pub fn scale(a: &QPoly, s: &Q) -> QPoly {
    let mut r: QPoly = a.iter().map(|x| x * s).collect();
    trim(&mut r);
    r
}

pub fn divrem(a: &QPoly, b: &QPoly) -> (QPoly, QPoly) {
    assert!(!b.is_empty(), "polynomial division by zero");
    let mut r = a.clone();
    trim(&mut r);
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let lb = b.last().unwrap().clone();
    let mut qt = vec![Q::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() && !r.is_empty() {
        let c = r.last().unwrap() / &lb;
        let sh = r.len() - b.len();
        for (j, y) in b.iter().enumerate() {
            r[sh + j] -= &c * y;
        }
        qt[sh] = c;
        r.pop();
        trim(&mut r);
    }
    trim(&mut qt);
    (qt, r)
}

pub fn rem(a: &QPoly, b: &QPoly) -> QPoly {
    divrem(a, b).1
}

pub fn monic(a: &QPoly) -> QPoly {
    match a.last() {
        None => Vec::new(),
        Some(l) => {
            let inv = Q::one() / l;
            scale(a, &inv)
        }
    }
}

pub fn gcd(a: &QPoly, b: &QPoly) -> QPoly {
    let (mut x, mut y) = (a.clone(), b.clone());
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y);
        x = y;
        y = primitive_q(&r);
    }
    monic(&x)
}

/// Scale a rational polynomial to a primitive integer multiple (leading coefficient positive).
pub fn primitive_q(a: &QPoly) -> QPoly {
    if a.is_empty() {
        return Vec::new();
    }
    from_z(&to_primitive_z(a))
}

pub fn to_primitive_z(a: &QPoly) -> ZPoly {
    if a.is_empty() {
        return Vec::new();
    }
    let d = common_denom(a.iter());
    let mut z: ZPoly = a.iter().map(|x| (x * Q::from_integer(d.clone())).to_integer()).collect();
    let mut g = BigInt::zero();
    for c in &z {
        g = g.gcd(c);
    }
    if z.last().unwrap().is_negative() {
        g = -g;
    }
    for c in z.iter_mut() {
        *c /= &g;
    }
    z
}

pub fn deriv(a: &QPoly) -> QPoly {
    let mut r: QPoly = a.iter().enumerate().skip(1).map(|(i, x)| x * Q::from_integer(BigInt::from(i))).collect();
    trim(&mut r);
    r
}

pub fn eval(a: &QPoly, x: &Q) -> Q {
    let mut acc = Q::zero();
    for c in a.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

pub fn sign_at(a: &QPoly, x: &Q) -> i8 {
    let v = eval(a, x);
    if v.is_zero() {
        0
    } else if v.is_positive() {
        1
    } else {
        -1
    }
}

pub fn pow(a: &QPoly, e: u32) -> QPoly {
    let mut r = vec![Q::one()];
    for _ in 0..e {
        r = mul(&r, a);
    }
    r
}

/// Compose a(b(x)).
pub fn compose(a: &QPoly, b: &QPoly) -> QPoly {
    let mut acc: QPoly = Vec::new();
    for c in a.iter().rev() {
        acc = add(&mul(&acc, b), &vec![c.clone()]);
    }
    acc
}

/// Squarefree part (monic).
pub fn squarefree_part(a: &QPoly) -> QPoly {
    let g = gcd(a, &deriv(a));
    monic(&divrem(a, &g).0)
}

/// Yun squarefree decomposition of a monic polynomial over Q.
pub fn squarefree_decomposition(f: &QPoly) -> Vec<(QPoly, u32)> {
    let f = monic(f);
    let mut out = Vec::new();
    if f.len() <= 1 {
        return out;
    }
    let d = deriv(&f);
    let a0 = gcd(&f, &d);
    let mut b = divrem(&f, &a0).0;
    let mut c = divrem(&d, &a0).0;
    let mut dd = sub(&c, &deriv(&b));
    let mut i = 1;
    loop {
        let a = gcd(&b, &dd);
        if a.len() > 1 {
            out.push((monic(&a), i));
        }
        b = divrem(&b, &a).0;
        if b.len() <= 1 {
            break;
        }
        c = divrem(&dd, &a).0;
        dd = sub(&c, &deriv(&b));
        i += 1;
    }
    out
}

pub fn sturm_sequence(f: &QPoly) -> Vec<QPoly> {
    let mut seq = vec![f.clone(), deriv(f)];
    loop {
        let n = seq.len();
        if seq[n - 1].is_empty() {
            seq.pop();
            break;
        }
        let r = rem(&seq[n - 2], &seq[n - 1]);
        if r.is_empty() {
            break;
        }
        let r = primitive_q(&r);
        // keep sign: sturm needs -rem; primitive_q normalizes lc sign so re-sign
        let actual = rem(&seq[n - 2], &seq[n - 1]);
        let neg = actual.last().unwrap().is_positive();
        let r = if neg { scale(&r, &-Q::one()) } else { r };
        seq.push(r);
    }
    seq
}

fn sign_changes(seq: &[QPoly], x: &Q) -> usize {
    let mut last = 0i8;
    let mut n = 0;
    for p in seq {
        let s = sign_at(p, x);
        if s != 0 {
            if last != 0 && s != last {
                n += 1;
            }
            last = s;
        }
    }
    n
}

fn sign_changes_inf(seq: &[QPoly], positive: bool) -> usize {
    let mut last = 0i8;
    let mut n = 0;
    for p in seq {
        let mut s: i8 = if p.last().unwrap().is_positive() { 1 } else { -1 };
        if !positive && (p.len() - 1) % 2 == 1 {
            s = -s;
        }
        if last != 0 && s != last {
            n += 1;
        }
        last = s;
    }
    n
}

/// Number of distinct real roots of a squarefree `f`.
pub fn count_real_roots(f: &QPoly) -> usize {
    let seq = sturm_sequence(f);
    sign_changes_inf(&seq, false) - sign_changes_inf(&seq, true)
}

/// Number of distinct roots in the half-open interval (a, b].
pub fn count_roots_in(seq: &[QPoly], a: &Q, b: &Q) -> usize {
    sign_changes(seq, a) - sign_changes(seq, b)
}

/// Isolating interval for a simple real root. When `lo == hi` the root is exactly `lo`.
/// Otherwise the root lies in the open interval (lo, hi), `f(hi)` has sign `s_hi`,
/// and `f` has sign `-s_hi` on (lo, root).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: Q,
    pub hi: Q,
    pub s_hi: i8,
}

impl RootInterval {
    pub fn is_exact(&self) -> bool {
        self.s_hi == 0
    }

    pub fn width(&self) -> Q {
        &self.hi - &self.lo
    }

    pub fn bisect(&mut self, f: &QPoly) {
        if self.is_exact() {
            return;
        }
        let m = (&self.lo + &self.hi) / Q::from_integer(BigInt::from(2));
        let s = sign_at(f, &m);
        if s == 0 {
            self.lo = m.clone();
            self.hi = m;
            self.s_hi = 0;
        } else if s == self.s_hi {
            self.hi = m;
        } else {
            self.lo = m;
        }
    }

    pub fn refine_to(&mut self, f: &QPoly, width: &Q) {
        while !self.is_exact() && &self.width() > width {
            self.bisect(f);
        }
    }

    pub fn midpoint(&self) -> Q {
        (&self.lo + &self.hi) / Q::from_integer(BigInt::from(2))
    }
}

/// Cauchy bound on absolute values of roots.
pub fn root_bound(f: &QPoly) -> Q {
    let lc = f.last().unwrap().abs();
    let m = f[..f.len() - 1].iter().map(|c| c.abs() / &lc).fold(Q::zero(), |a, b| if b > a { b } else { a });
    m + Q::one()
}

/// Isolate all real roots of a squarefree polynomial, sorted increasingly.
pub fn isolate_real_roots(f: &QPoly) -> Vec<RootInterval> {
    let seq = sturm_sequence(f);
    let b = root_bound(f);
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    while let Some((lo, hi)) = stack.pop() {
        let c = count_roots_in(&seq, &lo, &hi);
        if c == 0 {
            continue;
        }
        if c == 1 {
            let s = sign_at(f, &hi);
            if s == 0 {
                out.push(RootInterval { lo: hi.clone(), hi, s_hi: 0 });
            } else {
                out.push(RootInterval { lo, hi, s_hi: s });
            }
            continue;
        }
        let m = (&lo + &hi) / Q::from_integer(BigInt::from(2));
        stack.push((lo, m.clone()));
        stack.push((m, hi));
    }
    out.sort_by(|a, b| (&a.lo, &a.hi).cmp(&(&b.lo, &b.hi)));
    out
}

fn zmul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut r = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            r[i + j] += x * y;
        }
    }
    ztrim(&mut r);
    r
}

fn zmod(a: &ZPoly, m: &BigInt) -> ZPoly {
    let mut r: ZPoly = a.iter().map(|x| x.mod_floor(m)).collect();
    ztrim(&mut r);
    r
}

fn to_fp(a: &ZPoly, p: u64) -> FpPoly {
    let pb = BigInt::from(p);
    let mut r: FpPoly = a.iter().map(|x| x.mod_floor(&pb).to_u64().unwrap()).collect();
    while r.last() == Some(&0) {
        r.pop();
    }
    r
}

fn from_fp(a: &FpPoly) -> ZPoly {
    a.iter().map(|&x| BigInt::from(x)).collect()
}

/// Exact division over Z; `None` if b does not divide a.
pub fn zdiv_exact(a: &ZPoly, b: &ZPoly) -> Option<ZPoly> {
    let (qt, r) = divrem(&from_z(a), &from_z(b));
    if !r.is_empty() || qt.iter().any(|c| !c.is_integer()) {
        return None;
    }
    Some(qt.into_iter().map(|c| c.to_integer()).collect())
}

/// Lift f ≡ lc(f)·g·h (mod p) with g, h monic coprime to a factorization mod p^k.
fn hensel_lift2(f: &ZPoly, g: &FpPoly, h: &FpPoly, fp: &Fp, k: u32) -> (ZPoly, ZPoly) {
    let p = BigInt::from(fp.p);
    let pk = num_traits::pow(p.clone(), k as usize);
    let lc = f.last().unwrap().clone();
    let lc_inv = lc.extended_gcd(&pk).x.mod_floor(&pk);
    let fm: ZPoly = zmod(&f.iter().map(|c| c * &lc_inv).collect(), &pk);
    let (_, s, t) = fp.xgcd(g, h);
    let mut gg = from_fp(g);
    let mut hh = from_fp(h);
    let mut pj = p.clone();
    for _ in 1..k {
        let pj1 = &pj * &p;
        let prod = zmul(&gg, &hh);
        let n = fm.len().max(prod.len());
        let z = BigInt::zero();
        let diff: ZPoly =
            (0..n).map(|i| (fm.get(i).unwrap_or(&z) - prod.get(i).unwrap_or(&z)).mod_floor(&pj1) / &pj).collect();
        let e = to_fp(&diff, fp.p);
        if !e.is_empty() {
            let (qt, a) = fp.divrem(&fp.mul(&t, &e), g);
            let b = fp.add(&fp.mul(&s, &e), &fp.mul(&qt, h));
            for (i, c) in a.iter().enumerate() {
                gg[i] += &pj * BigInt::from(*c);
            }
            if hh.len() < b.len() {
                hh.resize(b.len(), BigInt::zero());
            }
            for (i, c) in b.iter().enumerate() {
                hh[i] += &pj * BigInt::from(*c);
            }
        }
        pj = pj1;
    }
    (gg, hh)
}

fn factor_squarefree_primitive(g: &ZPoly) -> Vec<ZPoly> {
    let d = g.len() - 1;
    if d <= 1 {
        return vec![g.clone()];
    }
    let gq = from_z(g);
    let dg = deriv(&gq);
    let lc = g.last().unwrap().clone();
    let mut p = 2u64;
    let fp = loop {
        if super::int::is_prime(p) && !(&lc % BigInt::from(p)).is_zero() {
            let fp = Fp::new(p);
            let a = to_fp(g, p);
            let b = to_fp(&dg.iter().map(|c| c.to_integer()).collect(), p);
            let gg = fp.gcd(&a, &b);
            if gg.len() == 1 && a.len() == g.len() {
                break fp;
            }
        }
        p += 1;
    };
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed ^ p);
    let facs: Vec<FpPoly> = fp.factor(&to_fp(g, p), &mut rng).into_iter().map(|(f, _)| f).collect();
    if facs.len() == 1 {
        return vec![g.clone()];
    }
    let norm1: BigInt = g.iter().map(|c| c.abs()).sum();
    let bound = BigInt::from(2) * lc.abs() * (BigInt::one() << d) * norm1;
    let mut k = 1u32;
    let mut pk = BigInt::from(p);
    while pk <= bound {
        pk *= p;
        k += 1;
    }
    // Multifactor lift, one factor at a time.
    let mut lifted = Vec::new();
    let mut target = g.clone();
    let mut rest = facs.clone();
    while rest.len() > 1 {
        let g0 = rest.remove(0);
        let h0 = rest.iter().fold(vec![1u64], |acc, x| fp.mul(&acc, x));
        let (gl, hl) = hensel_lift2(&target, &g0, &h0, &fp, k);
        lifted.push(gl);
        target = hl;
    }
    lifted.push(zmod(&target, &pk));
    // Recombination.
    let mut out = Vec::new();
    let mut cur = g.clone();
    let mut avail: Vec<ZPoly> = lifted;
    let half = &pk / BigInt::from(2);
    let mut s = 1;
    while 2 * s <= avail.len() {
        let mut found = false;
        let idx: Vec<usize> = (0..avail.len()).collect();
        for comb in combinations(&idx, s) {
            let lc_cur = cur.last().unwrap().clone();
            let mut cand = vec![lc_cur];
            for &i in &comb {
                cand = zmod(&zmul(&cand, &avail[i]), &pk);
            }
            let cand: ZPoly = cand.into_iter().map(|c| if c > half { c - &pk } else { c }).collect();
            let cand = to_primitive_z(&from_z(&cand));
            if let Some(qt) = zdiv_exact(&cur, &cand) {
                out.push(cand);
                cur = qt;
                let mut keep = Vec::new();
                for (i, f) in avail.into_iter().enumerate() {
                    if !comb.contains(&i) {
                        keep.push(f);
                    }
                }
                avail = keep;
                found = true;
                break;
            }
        }
        if !found {
            s += 1;
        }
    }
    let cur = to_primitive_z(&from_z(&cur));
    if cur.len() > 1 {
        out.push(cur);
    }
    out
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            rec(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(items, k, 0, &mut cur, &mut out);
    out
}

fn poly_key(a: &ZPoly) -> (usize, Vec<BigInt>) {
    (a.len(), a.iter().rev().cloned().collect())
}

/// Factor a nonzero polynomial over Q into monic irreducible factors with
/// multiplicities; returns (leading coefficient, factors sorted by degree then coefficients).
pub fn factor_q(f: &QPoly) -> (Q, Vec<(QPoly, u32)>) {
    let mut f = f.clone();
    trim(&mut f);
    assert!(!f.is_empty(), "factor of zero polynomial");
    let lc = f.last().unwrap().clone();
    let mut out = Vec::new();
    for (g, e) in squarefree_decomposition(&f) {
        let gz = to_primitive_z(&g);
        for h in factor_squarefree_primitive(&gz) {
            out.push((monic(&from_z(&h)), e));
        }
    }
    out.sort_by(|a, b| {
        let ka = poly_key(&to_primitive_z(&a.0));
        let kb = poly_key(&to_primitive_z(&b.0));
        ka.cmp(&kb)
    });
    (lc, out)
}

pub fn is_irreducible(f: &QPoly) -> bool {
    let (_, fac) = factor_q(f);
    fac.len() == 1 && fac[0].1 == 1
}

pub fn to_string_var(a: &QPoly, var: &str) -> String {
    if a.is_empty() {
        return "0".to_string();
    }
    let mut s = String::new();
    for (i, c) in a.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let ab = c.abs();
        if s.is_empty() {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{}^{}", var, i),
        };
        if i == 0 {
            s.push_str(&ab.to_string());
        } else if ab.is_one() {
            s.push_str(&mono);
        } else {
            s.push_str(&format!("{}*{}", ab, mono));
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int::q;

    #[test]
    fn factor_x4_minus_1() {
        let (_, fac) = factor_q(&from_i64(&[-1, 0, 0, 0, 1]));
        let got: Vec<QPoly> = fac.iter().map(|x| x.0.clone()).collect();
        assert_eq!(got, vec![from_i64(&[-1, 1]), from_i64(&[1, 1]), from_i64(&[1, 0, 1])]);
    }

    #[test]
    fn irreducible_cubic() {
        assert!(is_irreducible(&from_i64(&[1, -1, -3, 1])));
        assert!(is_irreducible(&from_i64(&[-1, 1, 1])));
    }

    #[test]
    fn factor_with_multiplicities_and_big_degree() {
        // (x^2-2)^2 (x^3 - x - 1) (2x+3)
        let a = from_i64(&[-2, 0, 1]);
        let b = from_i64(&[-1, -1, 0, 1]);
        let c = from_i64(&[3, 2]);
        let f = mul(&mul(&mul(&a, &a), &b), &c);
        let (lc, fac) = factor_q(&f);
        assert_eq!(lc, q(2));
        assert_eq!(fac.len(), 3);
        let mut prod = vec![lc];
        for (g, e) in &fac {
            prod = mul(&prod, &pow(g, *e));
        }
        assert_eq!(prod, f);
        // product of two quadratics that split mod many primes
        let g = mul(&from_i64(&[1, 0, 1]), &from_i64(&[2, 0, 1]));
        let (_, fac) = factor_q(&mul(&g, &from_i64(&[-3, 0, 0, 1])));
        assert_eq!(fac.len(), 3);
    }

    #[test]
    fn swinnerton_dyer_like() {
        // x^4 - 10x^2 + 1 is irreducible but splits mod every prime
        assert!(is_irreducible(&from_i64(&[1, 0, -10, 0, 1])));
    }

    #[test]
    fn sturm_counts() {
        let f = from_i64(&[-1, -1, 1]);
        assert_eq!(count_real_roots(&f), 2);
        assert_eq!(count_real_roots(&from_i64(&[1, 0, 1])), 0);
        let roots = isolate_real_roots(&from_i64(&[0, -1, 0, 1]));
        assert_eq!(roots.len(), 3);
        let mut r = roots[2].clone();
        r.refine_to(&from_i64(&[0, -1, 0, 1]), &Q::new(BigInt::from(1), BigInt::from(1000)));
        assert!(r.lo <= q(1) && r.hi >= q(1));
    }

    #[test]
    fn squarefree() {
        let f = mul(&pow(&from_i64(&[-1, 1]), 3), &from_i64(&[2, 0, 1]));
        let d = squarefree_decomposition(&f);
        assert_eq!(d, vec![(from_i64(&[2, 0, 1]), 1), (from_i64(&[-1, 1]), 3)]);
    }
}
