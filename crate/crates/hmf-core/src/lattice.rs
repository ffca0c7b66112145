//! The positive definite forms Tr(nrd(x)/q) on quaternion lattices: Gram
//! matrices, short vectors, unit groups and isomorphism of right ideals.
//!
//! Completeness of the isomorphism test: if I = xJ then nrd(x) = u·q_I/q_J
//! for a totally positive unit u. Strict class number one makes u = ε², and
//! x/ε is another witness with nrd exactly q_I/q_J, whose form value is
//! exactly Tr(1) = n. So enumerating up to n is a decision procedure.

use crate::arith::enumerate::{short_vectors as fp_short_vectors, EnumError};
use crate::arith::int::Q;
use crate::arith::qmat::QMat;
use crate::numfield::{FieldElem, NumFieldError};
use crate::orders::{QuatLattice, QuatOrder, RightIdeal};
use crate::quatalg::{QuatAlgebra, QuatElem};
use num_bigint::BigInt;
use num_traits::Zero;

/// Enumeration cap; exceeding it is reported, never truncated silently.
pub const ENUM_CAP: usize = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    #[error("scale must be totally positive")]
    NotTotallyPositiveScale,
    #[error("short vector enumeration exceeded {0} vectors")]
    BoundExceeded(usize),
    #[error("form is not positive definite (algebra not definite?)")]
    NotPositiveDefinite,
    #[error(transparent)]
    Field(#[from] NumFieldError),
}

impl From<EnumError> for LatticeError {
    fn from(e: EnumError) -> Self {
        match e {
            EnumError::NotPositiveDefinite => LatticeError::NotPositiveDefinite,
            EnumError::TooManyVectors(c) => LatticeError::BoundExceeded(c),
        }
    }
}

/// Q(v) = Tr(nrd(Σ v_k b_k) / scale) on a Z-basis b.
#[derive(Clone, Debug)]
pub struct GramForm {
    pub gram: QMat,
    pub basis: Vec<QuatElem>,
    pub scale: FieldElem,
}

impl GramForm {
    pub fn elem(&self, alg: &QuatAlgebra, v: &[i64]) -> QuatElem {
        let f = alg.field();
        let mut x = alg.zero();
        for (k, &c) in v.iter().enumerate() {
            if c != 0 {
                x = alg.add(&x, &alg.scale(&self.basis[k], &f.from_int(c)));
            }
        }
        x
    }

    pub fn value(&self, v: &[i64]) -> Q {
        let mut s = Q::zero();
        for (i, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in v.iter().enumerate() {
                if b != 0 {
                    s += &self.gram[i][j] * Q::from_integer(BigInt::from(a * b));
                }
            }
        }
        s
    }
}

pub fn gram_of(alg: &QuatAlgebra, l: &QuatLattice, scale: &FieldElem) -> Result<GramForm, LatticeError> {
    let f = alg.field();
    if !f.is_totally_positive(scale)? {
        return Err(LatticeError::NotTotallyPositiveScale);
    }
    let basis = alg.lattice_basis(l);
    let half_inv = f.inv(&f.mul(scale, &f.from_int(2)))?;
    let m = basis.len();
    let mut gram = vec![vec![Q::zero(); m]; m];
    for k in 0..m {
        for j in k..m {
            let v = f.trace(&f.mul(&alg.trd_pair(&basis[k], &basis[j]), &half_inv));
            gram[j][k] = v.clone();
            gram[k][j] = v;
        }
    }
    Ok(GramForm { gram, basis, scale: scale.clone() })
}

/// Nonzero v with Q(v) ≤ bound, one per ± pair, canonically sorted.
pub fn short_vectors(g: &GramForm, bound: &Q) -> Result<Vec<(Vec<i64>, Q)>, LatticeError> {
    Ok(fp_short_vectors(&g.gram, bound, Some(ENUM_CAP))?)
}

/// Elements x of L with nrd(x) = target exactly, one per ± pair.
pub fn elements_of_nrd(alg: &QuatAlgebra, l: &QuatLattice, target: &FieldElem) -> Result<Vec<QuatElem>, LatticeError> {
    let g = gram_of(alg, l, target)?;
    let n = Q::from_integer(BigInt::from(alg.field().degree()));
    let mut out = Vec::new();
    for (v, val) in short_vectors(&g, &n)? {
        if val != n {
            continue;
        }
        let x = g.elem(alg, &v);
        if alg.nrd(&x) == *target {
            out.push(x);
        }
    }
    Ok(out)
}

/// All x ∈ O with nrd(x) = 1 (both signs), and e = #/2.
pub fn nrd_one_units(alg: &QuatAlgebra, o: &QuatOrder) -> Result<(Vec<QuatElem>, usize), LatticeError> {
    let half = elements_of_nrd(alg, o.lattice(), &alg.field().one())?;
    let e = half.len();
    let mut all = Vec::with_capacity(2 * e);
    for x in half {
        all.push(alg.neg(&x));
        all.push(x);
    }
    Ok((all, e))
}

/// x with I = xJ (I, J right ideals of the same order), or None.
pub fn is_isomorphic(alg: &QuatAlgebra, i: &RightIdeal, j: &RightIdeal) -> Result<Option<QuatElem>, LatticeError> {
    let f = alg.field();
    let l = alg.lattice_mul(i.lattice(), &j.inverse_lattice(alg));
    let target = f.div(i.q(), j.q())?;
    for x in elements_of_nrd(alg, &l, &target)? {
        if alg.lattice_left_mul(&x, j.lattice()) == *i.lattice() {
            return Ok(Some(x));
        }
    }
    Ok(None)
}

/// x with I = x·O_R(I), or None if I is not principal.
pub fn principal_generator(alg: &QuatAlgebra, i: &RightIdeal) -> Result<Option<QuatElem>, LatticeError> {
    for x in elements_of_nrd(alg, i.lattice(), i.q())? {
        if alg.lattice_left_mul(&x, i.right_order().lattice()) == *i.lattice() {
            return Ok(Some(x));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::enumerate::box_search;
    use crate::numfield::FieldDesc;
    use crate::orders::maximal_order;
    use num_traits::Signed;

    fn pizer() -> (QuatAlgebra, QuatOrder) {
        let f = FieldDesc::rationals();
        let alg = QuatAlgebra::new(&f, &f.from_int(-1), &f.from_int(-23)).unwrap();
        let o = maximal_order(&alg).unwrap();
        (alg, o)
    }

    /// Right ideal generated by products of the given factor lists.
    fn ideal(alg: &QuatAlgebra, o: &QuatOrder, gens: &[&[&str]]) -> RightIdeal {
        let gs: Vec<QuatElem> = gens
            .iter()
            .map(|fs| fs.iter().fold(alg.one(), |acc, s| alg.mul(&acc, &alg.parse_elem(s).unwrap())))
            .collect();
        let elems: Vec<QuatElem> =
            gs.iter().flat_map(|g| o.basis().iter().map(move |b| (g, b))).map(|(g, b)| alg.mul(g, b)).collect();
        RightIdeal::new(alg, alg.lattice_from_z_span(&elems).unwrap(), o).unwrap()
    }

    #[test]
    fn pizer_gram_and_vectors() {
        let (alg, o) = pizer();
        let f = alg.field();
        let i = alg.basis(1);
        let k = alg.parse_elem("1/2+1/2*j").unwrap();
        let reference = alg.lattice_from_z_span(&[alg.one(), i.clone(), k.clone(), alg.mul(&i, &k)]).unwrap();
        assert_eq!(&reference, o.lattice());
        let g = gram_of(&alg, o.lattice(), &f.one()).unwrap();
        // nrd(x + y i + z k + w ik) = x² + xz + y² + yw + 6z² + 6w²
        let basis = [alg.one(), i.clone(), k.clone(), alg.mul(&i, &k)];
        for v in [[1i64, 0, 0, 0], [0, 0, 1, 0], [1, 0, 1, 0], [0, 1, 0, 1], [2, -1, 3, 1]] {
            let mut x = alg.zero();
            for (c, b) in v.iter().zip(&basis) {
                x = alg.add(&x, &alg.scale(b, &f.from_int(*c)));
            }
            let expect = v[0] * v[0] + v[0] * v[2] + v[1] * v[1] + v[1] * v[3] + 6 * v[2] * v[2] + 6 * v[3] * v[3];
            assert_eq!(alg.nrd(&x), f.from_int(expect));
        }
        let vs = short_vectors(&g, &Q::from_integer(BigInt::from(2))).unwrap();
        let two: Vec<QuatElem> =
            vs.iter().filter(|(_, q)| *q == Q::from_integer(BigInt::from(2))).map(|(v, _)| g.elem(&alg, v)).collect();
        assert_eq!(two.len(), 2);
        for x in &two {
            assert_eq!(x.c[0].coeffs()[0].numer().abs(), BigInt::from(1));
            assert_eq!(x.c[1].coeffs()[0].numer().abs(), BigInt::from(1));
        }
        assert!(short_vectors(&g, &Q::zero()).unwrap().is_empty());
        let four = Q::from_integer(BigInt::from(4));
        assert_eq!(short_vectors(&g, &four).unwrap().len(), box_search(&g.gram, &four).len());
        let g2 = gram_of(&alg, o.lattice(), &f.from_int(2)).unwrap();
        assert_eq!(&g2.gram[0][0] * Q::from_integer(BigInt::from(2)), g.gram[0][0]);
    }

    #[test]
    fn pizer_units_and_isomorphism() {
        let (alg, o) = pizer();
        let (units, e) = nrd_one_units(&alg, &o).unwrap();
        assert_eq!((units.len(), e), (4, 2));
        let i11 = ideal(&alg, &o, &[&["2"], &["1+i", "1/2+1/2*j"]]);
        let i10 = ideal(&alg, &o, &[&["2"], &["1/2+1/2*j"]]);
        let i01 = ideal(&alg, &o, &[&["2"], &["i", "1/2+1/2*j"]]);
        let g = principal_generator(&alg, &i11).unwrap().unwrap();
        assert_eq!(alg.nrd(&g), alg.field().from_int(2));
        assert!(principal_generator(&alg, &i10).unwrap().is_none());
        assert!(principal_generator(&alg, &i01).unwrap().is_none());
        let w = is_isomorphic(&alg, &i01, &i10).unwrap().unwrap();
        assert_eq!(alg.lattice_left_mul(&w, i10.lattice()), *i01.lattice());
        assert!(is_isomorphic(&alg, &i10, &i10).unwrap().is_some());
        let unit = RightIdeal::unit(&alg, &o);
        assert!(principal_generator(&alg, &unit).unwrap().is_some());
    }

    #[test]
    fn hamilton_units() {
        let f = FieldDesc::parse("x^2-x-1").unwrap();
        let alg = QuatAlgebra::new(&f, &f.from_int(-1), &f.from_int(-1)).unwrap();
        let o = maximal_order(&alg).unwrap();
        let (units, e) = nrd_one_units(&alg, &o).unwrap();
        assert_eq!(e, 60);
        // group closure
        for a in units.iter().step_by(7) {
            for b in units.iter().step_by(11) {
                assert!(units.contains(&alg.mul(a, b)));
            }
        }
    }
}
