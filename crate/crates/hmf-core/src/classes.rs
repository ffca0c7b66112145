//! Right ideal classes by neighbor search, Brandt matrices by element
//! counting and by neighbor classification, and theta series.

use crate::arith::hnf::{kernel_mod, QLattice};
use crate::arith::int::Q;
use crate::lattice::{elements_of_nrd, gram_of, is_isomorphic, nrd_one_units, short_vectors, LatticeError};
use crate::numfield::{FieldElem, NumFieldError, PrimeIdeal, RElem, ResidueRing, ZFIdeal};
use crate::orders::{local_generator, OrderError, QuatLattice, QuatOrder, RightIdeal, Splitting};
use crate::quatalg::{QuatAlgebra, QuatElem};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClassError {
    #[error("prime {0} divides the discriminant or level")]
    BadPrime(String),
    #[error("neighbor {0} matches no class representative")]
    Unclassified(usize),
    #[error("element count {count} is not divisible by e = {e}")]
    Inconsistent { count: usize, e: usize },
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Field(#[from] NumFieldError),
}

/// Representatives of the right ideal classes of an order.
#[derive(Clone, Debug)]
pub struct ClassSet {
    pub order: QuatOrder,
    /// I_1 = O, the rest sorted by (norm of nrd, lattice)
    pub reps: Vec<RightIdeal>,
    pub e: Vec<usize>,
    pub q: Vec<FieldElem>,
    pub left_orders: Vec<QuatOrder>,
    /// nrd-one units of each left order, both signs
    pub units: Vec<Vec<QuatElem>>,
    /// the prime used for neighbor search
    pub p0: PrimeIdeal,
    inverses: Vec<QuatLattice>,
}

impl ClassSet {
    pub fn size(&self) -> usize {
        self.reps.len()
    }

    /// I_j · I_i⁻¹.
    pub fn connecting_lattice(&self, alg: &QuatAlgebra, i: usize, j: usize) -> QuatLattice {
        alg.lattice_mul(self.reps[j].lattice(), &self.inverses[i])
    }

    /// Index of the class of J.
    pub fn classify(&self, alg: &QuatAlgebra, j: &RightIdeal) -> Result<Option<usize>, ClassError> {
        for (k, r) in self.reps.iter().enumerate() {
            if r.nrd() == j.nrd() && r.lattice() == j.lattice() {
                return Ok(Some(k));
            }
        }
        for (k, r) in self.reps.iter().enumerate() {
            if is_isomorphic(alg, j, r)?.is_some() {
                return Ok(Some(k));
            }
        }
        Ok(None)
    }

    pub fn check_prime(&self, alg: &QuatAlgebra, pr: &PrimeIdeal) -> Result<(), ClassError> {
        if alg.field().ideal_valuation(self.order.red_disc(), pr) != 0 {
            return Err(ClassError::BadPrime(pr.label()));
        }
        Ok(())
    }
}

/// Points of P¹(Z_F/P) as row vectors: (1 : r) for r in the residue field, then (0 : 1).
pub fn p1_points(ring: &ResidueRing) -> Vec<[RElem; 2]> {
    let mut pts: Vec<[RElem; 2]> = ring.elements().map(|r| [ring.one(), r]).collect();
    pts.push([ring.zero(), ring.one()]);
    pts
}

/// The N(P)+1 right ideals J ⊆ I with nrd(J) = P·nrd(I), as
/// J_v = {x ∈ I : v·ι(α⁻¹x) ≡ 0 mod P} where I_P = α O_P.
pub fn p_neighbors(
    alg: &QuatAlgebra,
    i: &RightIdeal,
    pr: &PrimeIdeal,
    sp: &Splitting,
) -> Result<Vec<RightIdeal>, ClassError> {
    let f = alg.field();
    let n = f.degree();
    let ring = sp.ring();
    if ring.exponent() != 1 || ring.prime() != pr {
        return Err(ClassError::Order(OrderError::BadSplitting("splitting modulus must be the prime itself")));
    }
    let alpha = local_generator(alg, i.lattice(), pr).ok_or(ClassError::Order(OrderError::NotInvertible))?;
    let ainv = alg.inv(&alpha).map_err(OrderError::from)?;
    let basis = alg.lattice_basis(i.lattice());
    let mats = basis.iter().map(|b| sp.image(alg, &alg.mul(&ainv, b))).collect::<Result<Vec<_>, _>>()?;
    let ph = pr.ideal.hnf();
    let mut modulus = vec![vec![BigInt::zero(); 2 * n]; 2 * n];
    for blk in 0..2 {
        for r in 0..n {
            for c in 0..n {
                modulus[blk * n + r][blk * n + c] = ph[r][c].clone();
            }
        }
    }
    let rows_q = i.lattice().rows_q();
    let mut out = Vec::with_capacity(pr.norm() as usize + 1);
    for v in p1_points(ring) {
        let images: Vec<Vec<BigInt>> = mats
            .iter()
            .map(|m| {
                let c0 = ring.add(&ring.mul(&v[0], &m[0][0]), &ring.mul(&v[1], &m[1][0]));
                let c1 = ring.add(&ring.mul(&v[0], &m[0][1]), &ring.mul(&v[1], &m[1][1]));
                c0.0.iter().chain(c1.0.iter()).map(|&x| BigInt::from(x)).collect()
            })
            .collect();
        let ker = kernel_mod(&images, &modulus);
        let rows: Vec<Vec<Q>> = ker
            .iter()
            .map(|c| {
                let mut acc = vec![Q::zero(); rows_q[0].len()];
                for (k, ck) in c.iter().enumerate() {
                    if ck.is_zero() {
                        continue;
                    }
                    let s = Q::from_integer(ck.clone());
                    for (a, x) in acc.iter_mut().zip(&rows_q[k]) {
                        *a += x * &s;
                    }
                }
                acc
            })
            .collect();
        let lat = QLattice::from_q_rows(rows_q[0].len(), &rows).map_err(OrderError::from)?;
        out.push(RightIdeal::new_unchecked(alg, lat, i.right_order())?);
    }
    Ok(out)
}

/// Smallest prime not dividing `avoid`.
pub fn auxiliary_prime(alg: &QuatAlgebra, avoid: &ZFIdeal, skip: usize) -> PrimeIdeal {
    let f = alg.field();
    let mut bound = 16u64;
    loop {
        let good: Vec<PrimeIdeal> =
            f.primes_up_to_norm(bound).into_iter().filter(|p| f.ideal_valuation(avoid, p) == 0).collect();
        if good.len() > skip {
            return good[skip].clone();
        }
        bound *= 4;
    }
}

/// Right ideal classes of `o` by breadth-first search along P0-neighbors,
/// P0 the (skip+1)-th smallest prime not dividing red_disc(O)·avoid.
pub fn right_class_set(alg: &QuatAlgebra, o: &QuatOrder, avoid: &ZFIdeal, skip: usize) -> Result<ClassSet, ClassError> {
    let f = alg.field();
    let p0 = auxiliary_prime(alg, &f.ideal_mul(o.red_disc(), avoid), skip);
    let sp = Splitting::new(alg, o, &p0, 1)?;
    let mut reps = vec![RightIdeal::unit(alg, o)];
    let mut head = 0;
    while head < reps.len() {
        let nbrs = p_neighbors(alg, &reps[head], &p0, &sp)?;
        head += 1;
        for j in nbrs {
            let mut known = false;
            for r in &reps {
                if is_isomorphic(alg, &j, r)?.is_some() {
                    known = true;
                    break;
                }
            }
            if !known {
                reps.push(j);
            }
        }
    }
    let first = reps.remove(0);
    reps.sort_by(|a, b| a.key().cmp(&b.key()));
    reps.insert(0, first);
    ClassSet::from_reps(alg, o, reps, p0)
}

impl ClassSet {
    /// Class set from known representatives (I_1 = O first); recomputes the
    /// left orders and their units.
    pub fn from_reps(
        alg: &QuatAlgebra,
        o: &QuatOrder,
        reps: Vec<RightIdeal>,
        p0: PrimeIdeal,
    ) -> Result<ClassSet, ClassError> {
        let mut e = Vec::new();
        let mut q = Vec::new();
        let mut left_orders = Vec::new();
        let mut units = Vec::new();
        let mut inverses = Vec::new();
        for r in &reps {
            let ol = r.left_order(alg)?;
            let (u, ei) = nrd_one_units(alg, &ol)?;
            e.push(ei);
            q.push(r.q().clone());
            left_orders.push(ol);
            units.push(u);
            inverses.push(r.inverse_lattice(alg));
        }
        Ok(ClassSet { order: o.clone(), reps, e, q, left_orders, units, p0, inverses })
    }
}

/// Integer Brandt matrix; column j holds the classes of the neighbors of I_j.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BrandtMatrix {
    pub p: PrimeIdeal,
    pub entries: Vec<Vec<i64>>,
}

/// b_ij = #{x ∈ I_j I_i⁻¹ : nrd(x) = p q_j / q_i} / (2 e_i).
pub fn brandt_matrix(alg: &QuatAlgebra, cs: &ClassSet, pr: &PrimeIdeal) -> Result<BrandtMatrix, ClassError> {
    cs.check_prime(alg, pr)?;
    let f = alg.field();
    let h = cs.size();
    let mut entries = vec![vec![0i64; h]; h];
    for (i, row) in entries.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            let l = cs.connecting_lattice(alg, i, j);
            let target = f.div(&f.mul(pr.gen(), &cs.q[j]), &cs.q[i])?;
            let count = elements_of_nrd(alg, &l, &target)?.len();
            if count % cs.e[i] != 0 {
                return Err(ClassError::Inconsistent { count, e: cs.e[i] });
            }
            *entry = (count / cs.e[i]) as i64;
        }
    }
    Ok(BrandtMatrix { p: pr.clone(), entries })
}

/// b_ij = #{J neighbor of I_j : [J] = [I_i]}.
pub fn brandt_matrix_oracle(alg: &QuatAlgebra, cs: &ClassSet, pr: &PrimeIdeal) -> Result<BrandtMatrix, ClassError> {
    cs.check_prime(alg, pr)?;
    let h = cs.size();
    let sp = Splitting::new(alg, &cs.order, pr, 1)?;
    let mut entries = vec![vec![0i64; h]; h];
    for j in 0..h {
        for (k, nb) in p_neighbors(alg, &cs.reps[j], pr, &sp)?.iter().enumerate() {
            let i = cs.classify(alg, nb)?.ok_or(ClassError::Unclassified(k))?;
            entries[i][j] += 1;
        }
    }
    Ok(BrandtMatrix { p: pr.clone(), entries })
}

/// c_k = #{x ∈ L : 2 nrd(x)/q = k} for k = 0..=terms (c_0 = 1).
pub fn theta_series(alg: &QuatAlgebra, l: &QuatLattice, q: &FieldElem, terms: usize) -> Result<Vec<u64>, ClassError> {
    let f = alg.field();
    let g = gram_of(alg, l, q)?;
    let bound = Q::new(BigInt::from(f.degree() * terms), BigInt::from(2));
    let mut c = vec![0u64; terms + 1];
    c[0] = 1;
    let qi = f.inv(q)?;
    for (v, _) in short_vectors(&g, &bound)? {
        let x = g.elem(alg, &v);
        let r = f.mul(&alg.nrd(&x), &qi);
        if !r.is_rational() {
            continue;
        }
        let k = &r.coeffs()[0] * Q::from_integer(BigInt::from(2));
        if k.is_integer() {
            if let Some(k) = k.to_integer().to_usize() {
                if k <= terms {
                    c[k] += 2;
                }
            }
        }
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::FieldDesc;
    use crate::orders::{eichler_order, maximal_order};

    fn column_sums(m: &[Vec<i64>]) -> Vec<i64> {
        (0..m.len()).map(|j| m.iter().map(|r| r[j]).sum()).collect()
    }

    #[test]
    fn pizer_classes() {
        let f = FieldDesc::rationals();
        let alg = QuatAlgebra::new(&f, &f.from_int(-1), &f.from_int(-23)).unwrap();
        let o = maximal_order(&alg).unwrap();
        let cs = right_class_set(&alg, &o, &f.unit_ideal(), 0).unwrap();
        assert_eq!(cs.size(), 3);
        let mut e = cs.e.clone();
        e.sort();
        assert_eq!(e, vec![1, 2, 3]);
        let p2 = f.factor_rational_prime(2).remove(0);
        let t = brandt_matrix(&alg, &cs, &p2).unwrap();
        assert_eq!(column_sums(&t.entries), vec![3, 3, 3]);
        assert_eq!(t, brandt_matrix_oracle(&alg, &cs, &p2).unwrap());
        let theta = theta_series(&alg, o.lattice(), &f.one(), 10).unwrap();
        assert_eq!(theta, vec![1, 0, 4, 0, 4, 0, 0, 0, 4, 0, 8]);
    }

    #[test]
    fn golden_level_61() {
        let f = FieldDesc::parse("x^2-x-1").unwrap();
        let alg = QuatAlgebra::new(&f, &f.from_int(-1), &f.from_int(-1)).unwrap();
        let omax = maximal_order(&alg).unwrap();
        let cs1 = right_class_set(&alg, &omax, &f.unit_ideal(), 0).unwrap();
        assert_eq!(cs1.size(), 1);
        let level = f.principal_ideal(&f.parse_elem("3*w+7").unwrap());
        let o = eichler_order(&alg, &omax, &level).unwrap();
        let cs = right_class_set(&alg, &o, &f.unit_ideal(), 0).unwrap();
        assert_eq!(cs.size(), 3);
        let mut e = cs.e.clone();
        e.sort();
        assert_eq!(e, vec![2, 3, 5]);
        for p in [2u64, 5, 3] {
            let pr = f.factor_rational_prime(p).remove(0);
            let t = brandt_matrix(&alg, &cs, &pr).unwrap();
            let np = pr.norm() as i64 + 1;
            assert_eq!(column_sums(&t.entries), vec![np; 3]);
            assert_eq!(t, brandt_matrix_oracle(&alg, &cs, &pr).unwrap());
        }
    }
}
