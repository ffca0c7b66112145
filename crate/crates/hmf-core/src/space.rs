//! Spaces of quaternionic modular forms of a given level: Hecke matrices from
//! either backend, the cusp subspace, and its decomposition into eigensystems.

use crate::arith::int::Q;
use crate::arith::poly::{self, QPoly};
use crate::arith::qmat::{self, QMat};
use crate::classes::{brandt_matrix, right_class_set, ClassError, ClassSet};
use crate::heckelin::{self, cusp_basis, decompose, int_matrix, restrict, HeckeError, HeckeField, KElem};
use crate::numfield::{NumFieldError, PrimeIdeal, ZFIdeal};
use crate::orders::{eichler_order, OrderError, QuatOrder};
use crate::p1hecke::{build_p1, hecke_matrix_p1, maximal_class_reps, orbit_table, OrbitData, P1Data, P1Error};
use crate::quatalg::QuatAlgebra;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpaceError {
    #[error("prime {0} divides the discriminant or level")]
    BadPrime(String),
    #[error("level is not coprime to the discriminant")]
    LevelNotCoprime,
    #[error(transparent)]
    Class(#[from] ClassError),
    #[error(transparent)]
    P1(#[from] P1Error),
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error(transparent)]
    Hecke(#[from] HeckeError),
    #[error(transparent)]
    Field(#[from] NumFieldError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Backend {
    Brandt,
    P1,
}

#[derive(Clone, Debug)]
enum Data {
    Brandt(ClassSet),
    P1 { cs: ClassSet, p1: Box<P1Data>, od: OrbitData },
}

/// M_2^B(N): functions on the right ideal classes of the Eichler order of level N.
#[derive(Clone, Debug)]
pub struct HeckeSpace {
    pub alg: QuatAlgebra,
    pub level: ZFIdeal,
    pub backend: Backend,
    data: Data,
}

impl HeckeSpace {
    pub fn new(alg: &QuatAlgebra, omax: &QuatOrder, level: &ZFIdeal, backend: Backend) -> Result<Self, SpaceError> {
        let f = alg.field();
        if !f.coprime(level, alg.disc()) {
            return Err(SpaceError::LevelNotCoprime);
        }
        let data = match backend {
            Backend::Brandt => {
                let eo = eichler_order(alg, omax, level)?;
                Data::Brandt(right_class_set(alg, &eo, &f.unit_ideal(), 0)?)
            }
            Backend::P1 => {
                let cs = maximal_class_reps(alg, omax, level)?;
                Self::p1_data(alg, cs, level)?
            }
        };
        Ok(HeckeSpace { alg: alg.clone(), level: level.clone(), backend, data })
    }

    /// P¹ backend reusing a precomputed maximal class set.
    pub fn from_maximal_classes(alg: &QuatAlgebra, cs: ClassSet, level: &ZFIdeal) -> Result<Self, SpaceError> {
        let data = Self::p1_data(alg, cs, level)?;
        Ok(HeckeSpace { alg: alg.clone(), level: level.clone(), backend: Backend::P1, data })
    }

    /// Brandt backend from a precomputed Eichler class set.
    pub fn from_eichler_classes(alg: &QuatAlgebra, cs: ClassSet, level: &ZFIdeal) -> Self {
        HeckeSpace { alg: alg.clone(), level: level.clone(), backend: Backend::Brandt, data: Data::Brandt(cs) }
    }

    fn p1_data(alg: &QuatAlgebra, cs: ClassSet, level: &ZFIdeal) -> Result<Data, SpaceError> {
        let p1 = build_p1(alg.field(), level);
        let od = orbit_table(alg, &cs, &p1)?;
        Ok(Data::P1 { cs, p1: Box::new(p1), od })
    }

    pub fn dim(&self) -> usize {
        match &self.data {
            Data::Brandt(cs) => cs.size(),
            Data::P1 { od, .. } => od.dim(),
        }
    }

    pub fn cusp_dim(&self) -> usize {
        self.dim().saturating_sub(1)
    }

    /// e-values of the basis classes.
    pub fn weights(&self) -> Vec<usize> {
        match &self.data {
            Data::Brandt(cs) => cs.e.clone(),
            Data::P1 { od, .. } => od.weights(),
        }
    }

    pub fn class_set(&self) -> &ClassSet {
        match &self.data {
            Data::Brandt(cs) => cs,
            Data::P1 { cs, .. } => cs,
        }
    }

    pub fn orbit_data(&self) -> Option<&OrbitData> {
        match &self.data {
            Data::Brandt(_) => None,
            Data::P1 { od, .. } => Some(od),
        }
    }

    pub fn is_good_prime(&self, pr: &PrimeIdeal) -> bool {
        let f = self.alg.field();
        f.ideal_valuation(&self.level, pr) == 0 && f.ideal_valuation(self.alg.disc(), pr) == 0
    }

    /// Primes of norm ≤ bound not dividing D·N, in canonical order.
    pub fn good_primes(&self, bound: u64) -> Vec<PrimeIdeal> {
        self.alg.field().primes_up_to_norm(bound).into_iter().filter(|p| self.is_good_prime(p)).collect()
    }

    /// Integer matrix of T(p); column j lists the neighbors of class j.
    pub fn hecke_matrix(&self, pr: &PrimeIdeal) -> Result<Vec<Vec<i64>>, SpaceError> {
        if !self.is_good_prime(pr) {
            return Err(SpaceError::BadPrime(pr.label()));
        }
        Ok(match &self.data {
            Data::Brandt(cs) => brandt_matrix(&self.alg, cs, pr)?.entries,
            Data::P1 { cs, p1, od } => hecke_matrix_p1(&self.alg, cs, p1, od, pr)?.matrix,
        })
    }

    pub fn cusp_basis(&self) -> QMat {
        cusp_basis(&self.weights())
    }

    /// Irreducible constituents of the cusp space under T(p) for `primes`.
    pub fn constituents(&self, primes: &[PrimeIdeal], seed: u64) -> Result<Vec<Constituent>, SpaceError> {
        let mats =
            primes.iter().map(|p| self.hecke_matrix(p).map(|m| int_matrix(&m))).collect::<Result<Vec<_>, _>>()?;
        constituents(&self.weights(), primes, &mats, seed)
    }
}

/// A Hecke irreducible piece of the cusp space with its eigenvalues.
#[derive(Clone, Debug)]
pub struct Constituent {
    pub dim: usize,
    /// number of copies of the eigensystem (1 unless the primes fail to separate)
    pub multiplicity: usize,
    pub field: HeckeField,
    pub primes: Vec<PrimeIdeal>,
    pub eigenvalues: Vec<KElem>,
    /// left eigenvector in the ambient basis
    pub eigenvector: Vec<KElem>,
}

impl Constituent {
    pub fn hecke_poly(&self) -> &QPoly {
        &self.field.h
    }

    pub fn eigenvalue(&self, pr: &PrimeIdeal) -> Option<&KElem> {
        self.primes.iter().position(|p| p == pr).map(|k| &self.eigenvalues[k])
    }

    /// Number of eigenvalues violating |σ(a_p)| ≤ 2 √N(p) at some real place.
    pub fn ramanujan_violations(&self) -> usize {
        self.primes
            .iter()
            .zip(&self.eigenvalues)
            .filter(|(p, a)| !ramanujan_ok(&self.field.minpoly(a), p.norm()))
            .count()
    }
}

/// All roots r of g satisfy r real and r² ≤ 4·norm.
pub fn ramanujan_ok(g: &QPoly, norm: u64) -> bool {
    let sq = poly::squarefree_part(g);
    if poly::count_real_roots(&sq) != poly::deg(&sq) as usize {
        return false;
    }
    // h(x²) = g(x) g(-x); roots of h are the r²
    let gneg: QPoly = g.iter().enumerate().map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() }).collect();
    let even = poly::mul(g, &gneg);
    let h: QPoly = even.iter().step_by(2).cloned().collect();
    let h = poly::squarefree_part(&h);
    let seq = poly::sturm_sequence(&h);
    let limit = Q::from_integer(BigInt::from(4 * norm));
    let top = poly::root_bound(&h).abs() + Q::from_integer(BigInt::from(1));
    top <= limit || poly::count_roots_in(&seq, &limit, &top) == 0
}

/// Decompose the cusp space of an ambient space with the given weights.
pub fn constituents(
    weights: &[usize],
    primes: &[PrimeIdeal],
    mats: &[QMat],
    seed: u64,
) -> Result<Vec<Constituent>, SpaceError> {
    let cb = cusp_basis(weights);
    if cb.is_empty() || mats.is_empty() {
        return Ok(Vec::new());
    }
    let restricted = mats.iter().map(|m| restrict(&cb, m)).collect::<Result<Vec<_>, _>>()?;
    let mut out = Vec::new();
    for block in decompose(&restricted, seed)? {
        let es = heckelin::eigensystem(&block, &restricted)?;
        // back to ambient coordinates and re-verify there
        let k = &es.field;
        let mut v: Vec<KElem> = vec![k.zero(); weights.len()];
        for (c, row) in es.vector.iter().zip(&cb) {
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x = k.add(x, &k.mul(c, &k.from_q(r)));
                }
            }
        }
        for (oi, (m, a)) in mats.iter().zip(&es.eigenvalues).enumerate() {
            let img = heckelin::k_vec_mat(k, &v, m);
            if img.iter().zip(&v).any(|(x, y)| *x != k.mul(a, y)) {
                return Err(HeckeError::EigenCheck(oi).into());
            }
        }
        out.push(Constituent {
            dim: block.basis.len(),
            multiplicity: block.multiplicity,
            field: es.field,
            primes: primes.to_vec(),
            eigenvalues: es.eigenvalues,
            eigenvector: v,
        });
    }
    Ok(out)
}

/// Characteristic polynomial of an integer matrix.
pub fn charpoly_int(m: &[Vec<i64>]) -> QPoly {
    qmat::charpoly(&int_matrix(m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::FieldDesc;
    use crate::orders::maximal_order;

    #[test]
    fn ramanujan() {
        // x² - 3 at norm 4: roots ±1.73 ≤ 4
        assert!(ramanujan_ok(&poly::from_i64(&[-3, 0, 1]), 4));
        assert!(!ramanujan_ok(&poly::from_i64(&[-5, 1]), 4));
        assert!(ramanujan_ok(&poly::from_i64(&[-4, 1]), 4));
        assert!(!ramanujan_ok(&poly::from_i64(&[1, 0, 1]), 4));
    }

    #[test]
    fn pizer_space() {
        let f = FieldDesc::rationals();
        let alg = QuatAlgebra::new(&f, &f.from_int(-1), &f.from_int(-23)).unwrap();
        let o = maximal_order(&alg).unwrap();
        let sp = HeckeSpace::new(&alg, &o, &f.unit_ideal(), Backend::Brandt).unwrap();
        assert_eq!(sp.cusp_dim(), 2);
        let primes = sp.good_primes(13);
        let cs = sp.constituents(&primes, 0).unwrap();
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].hecke_poly(), &poly::from_i64(&[-1, 1, 1]));
        assert_eq!(cs[0].ramanujan_violations(), 0);
        let p23 = f.factor_rational_prime(23).remove(0);
        assert!(sp.hecke_matrix(&p23).is_err());
    }
}
