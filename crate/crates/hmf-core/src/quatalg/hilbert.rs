//! Local Hilbert symbols at finite primes.
//!
//! Odd primes use the tame symbol. Dyadic primes search for a primitive
//! (x, y) with a x² + b y² a nonzero square, working modulo P^M with M large
//! enough that the square class of each value is decided.

use crate::numfield::{FieldDesc, FieldElem, PrimeIdeal, RElem, ResidueRing};
use std::collections::HashSet;

/// (a, b)_P ∈ {1, -1} for nonzero a, b.
pub fn hilbert_symbol(field: &FieldDesc, a: &FieldElem, b: &FieldElem, pr: &PrimeIdeal) -> i8 {
    assert!(!a.is_zero() && !b.is_zero());
    if pr.p != 2 {
        tame_symbol(field, a, b, pr)
    } else {
        dyadic_symbol(field, a, b, pr)
    }
}

/// Split x = π^v u with u a P-unit.
fn split_val(field: &FieldDesc, x: &FieldElem, pr: &PrimeIdeal) -> (i64, FieldElem) {
    let v = field.valuation(x, pr);
    let u = field.div(x, &field.pow(pr.gen(), v).unwrap()).unwrap();
    (v, u)
}

fn legendre(r: &ResidueRing, u: &FieldElem) -> i8 {
    let q = r.prime().norm();
    let x = r.from_elem(u).expect("unit");
    if r.is_one(&r.pow(&x, (q - 1) / 2)) {
        1
    } else {
        -1
    }
}

fn tame_symbol(field: &FieldDesc, a: &FieldElem, b: &FieldElem, pr: &PrimeIdeal) -> i8 {
    let (va, ua) = split_val(field, a, pr);
    let (vb, ub) = split_val(field, b, pr);
    if va == 0 && vb == 0 {
        return 1;
    }
    let r = field.residue_ring(pr, 1);
    let q = pr.norm() as i64;
    let mut s: i8 = if (va * vb * ((q - 1) / 2)) % 2 != 0 { -1 } else { 1 };
    if vb % 2 != 0 {
        s *= legendre(&r, &ua);
    }
    if va % 2 != 0 {
        s *= legendre(&r, &ub);
    }
    s
}

struct SquareTest<'a> {
    field: &'a FieldDesc,
    pr: &'a PrimeIdeal,
    unit_ring: ResidueRing,
    squares: HashSet<RElem>,
    /// 2e + 1 where e = v_P(2)
    prec: u32,
}

impl<'a> SquareTest<'a> {
    fn new(field: &'a FieldDesc, pr: &'a PrimeIdeal) -> Self {
        let prec = 2 * pr.e + 1;
        let unit_ring = field.residue_ring(pr, prec);
        let squares = unit_ring.elements().filter(|x| unit_ring.is_unit(x)).map(|x| unit_ring.mul(&x, &x)).collect();
        SquareTest { field, pr, unit_ring, squares, prec }
    }

    /// Square class of a nonzero element given exactly.
    fn is_square(&self, x: &FieldElem) -> bool {
        let (v, u) = split_val(self.field, x, self.pr);
        v % 2 == 0 && self.squares.contains(&self.unit_ring.from_elem(&u).unwrap())
    }
}

fn dyadic_symbol(field: &FieldDesc, a: &FieldElem, b: &FieldElem, pr: &PrimeIdeal) -> i8 {
    let st = SquareTest::new(field, pr);
    let normalize = |x: &FieldElem| {
        let (v, u) = split_val(field, x, pr);
        if v % 2 == 0 {
            u
        } else {
            field.mul(&u, pr.gen())
        }
    };
    let (a, b) = (normalize(a), normalize(b));
    if st.is_square(&a) || st.is_square(&b) {
        return 1;
    }
    let mab = -&field.mul(&a, &b);
    if st.is_square(&mab) {
        return 1;
    }
    // anisotropic binary form: values on primitive vectors have bounded valuation
    let mut m = st.prec + 2;
    loop {
        let ring = field.residue_ring(pr, m);
        let (ra, rb) = (ring.from_elem(&a).unwrap(), ring.from_elem(&b).unwrap());
        let mut undecided = false;
        for y in ring.elements() {
            // (1, y) and (y, 1) with y ∈ P
            let y2 = ring.mul(&y, &y);
            let mut cands = vec![ring.add(&ra, &ring.mul(&rb, &y2))];
            if ring.valuation(&y) > 0 {
                cands.push(ring.add(&ring.mul(&ra, &y2), &rb));
            }
            for z in cands {
                let t = ring.valuation(&z);
                if t + st.prec >= m {
                    undecided = true;
                    continue;
                }
                if t % 2 == 1 {
                    continue;
                }
                if st.is_square(&ring.lift(&z)) {
                    return 1;
                }
            }
        }
        if !undecided {
            return -1;
        }
        m += 2;
        assert!(m <= 8 * st.prec + 16, "dyadic Hilbert symbol precision cap");
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_symbols() {
        let f = FieldDesc::parse("x-1").unwrap();
        let sym = |a: i64, b: i64, p: u64| {
            let pr = f.factor_rational_prime(p).remove(0);
            hilbert_symbol(&f, &f.from_int(a), &f.from_int(b), &pr)
        };
        assert_eq!(sym(-1, -1, 2), -1);
        assert_eq!(sym(-1, -23, 23), -1);
        assert_eq!(sym(-1, -23, 2), 1);
        assert_eq!(sym(2, 5, 5), -1);
        assert_eq!(sym(2, 7, 2), 1);
        assert_eq!(sym(3, 3, 2), -1);
        assert_eq!(sym(1, 7, 7), 1);
        assert_eq!(sym(5, 3, 3), -1);
        // cross-check against the closed form at p = 2 for units and 2·units
        let e = |u: i64| ((u - 1) / 2).rem_euclid(2);
        let w = |u: i64| ((u * u - 1) / 8).rem_euclid(2);
        for a in [1i64, 3, 5, 7, 2, 6, 10, 14] {
            for b in [1i64, 3, 5, 7, 2, 6, 10, 14] {
                let (al, u) = if a % 2 == 0 { (1, a / 2) } else { (0, a) };
                let (be, v) = if b % 2 == 0 { (1, b / 2) } else { (0, b) };
                let ex = (e(u) * e(v) + al * w(v) + be * w(u)) % 2;
                assert_eq!(sym(a, b, 2), if ex == 0 { 1 } else { -1 }, "({a},{b})_2");
            }
        }
    }

    #[test]
    fn golden_symbols() {
        let f = FieldDesc::parse("x^2-x-1").unwrap();
        let m1 = f.from_int(-1);
        for p in [2u64, 3, 5, 11] {
            for pr in f.factor_rational_prime(p) {
                assert_eq!(hilbert_symbol(&f, &m1, &m1, &pr), 1);
            }
        }
        let one = f.one();
        let pr = f.factor_rational_prime(2).remove(0);
        assert_eq!(hilbert_symbol(&f, &one, &f.from_int(7), &pr), 1);
    }
}
