//! Level structure through the projective line: the Eichler classes of level
//! N are the orbits of the unit groups Γ_i of the maximal class set acting on
//! P¹(Z_F/N), and Hecke operators act blockwise through the sets Θ(p)_{i,j}.
//!
//! Points are column vectors (x : y); γ acts by ι(γ)·(x, y)ᵀ. The class of
//! (j, x) is the Eichler ideal {y ∈ I_j : ι(y)e_1 ∈ line x}, and a p-neighbor
//! γ I_i of I_j (γ ∈ I_j I_i⁻¹) carries it to (i, ι(γ̄)x).

use crate::classes::{right_class_set, ClassError, ClassSet};
use crate::lattice::{elements_of_nrd, LatticeError};
use crate::numfield::{FieldDesc, NumFieldError, PrimeIdeal, RElem, ResidueRing, ZFIdeal};
use crate::orders::{Mat2, OrderError, QuatOrder, Splitting};
use crate::quatalg::{QuatAlgebra, QuatElem};
use std::collections::{HashMap, HashSet};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum P1Error {
    #[error("class representative norms are not coprime to the level")]
    NonCoprimeReps,
    #[error("prime {0} divides the discriminant or level")]
    BadPrime(String),
    #[error("theta set count {count} is not divisible by e = {e}")]
    Inconsistent { count: usize, e: usize },
    #[error(transparent)]
    Class(#[from] ClassError),
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Field(#[from] NumFieldError),
}

/// P¹(Z_F/P^e). Canonical forms: (1 : y), or (x : 1) with x a non-unit.
#[derive(Clone, Debug)]
struct LocalP1 {
    ring: ResidueRing,
    /// residue index of each non-unit, in increasing order
    nonunits: Vec<u64>,
    nonunit_rank: HashMap<u64, u64>,
}

impl LocalP1 {
    fn new(ring: ResidueRing) -> Self {
        let nonunits: Vec<u64> = (0..ring.size()).filter(|&k| !ring.is_unit(&ring.elem_at(k))).collect();
        let nonunit_rank = nonunits.iter().enumerate().map(|(r, &k)| (k, r as u64)).collect();
        LocalP1 { ring, nonunits, nonunit_rank }
    }

    fn count(&self) -> u64 {
        self.ring.size() + self.nonunits.len() as u64
    }

    fn index(&self, x: &RElem, y: &RElem) -> Option<u64> {
        let r = &self.ring;
        if let Some(xi) = r.inv(x) {
            return Some(r.index(&r.mul(y, &xi)));
        }
        let yi = r.inv(y)?;
        let k = r.index(&r.mul(x, &yi));
        Some(r.size() + self.nonunit_rank[&k])
    }

    fn point(&self, id: u64) -> [RElem; 2] {
        let r = &self.ring;
        if id < r.size() {
            [r.one(), r.elem_at(id)]
        } else {
            [r.elem_at(self.nonunits[(id - r.size()) as usize]), r.one()]
        }
    }
}

/// P¹(Z_F/N) as the product of its prime power components.
#[derive(Clone, Debug)]
pub struct P1Data {
    pub modulus: ZFIdeal,
    locals: Vec<LocalP1>,
    count: usize,
}

impl P1Data {
    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    /// Prime power factors P^e of N, in canonical order.
    pub fn components(&self) -> Vec<(&PrimeIdeal, u32)> {
        self.locals.iter().map(|l| (l.ring.prime(), l.ring.exponent())).collect()
    }

    /// Canonical id of (x : y) given by components, or None if not unimodular.
    pub fn index(&self, pt: &[[RElem; 2]]) -> Option<usize> {
        let mut id = 0u64;
        for (l, [x, y]) in self.locals.iter().zip(pt) {
            id = id * l.count() + l.index(x, y)?;
        }
        Some(id as usize)
    }

    pub fn point(&self, id: usize) -> Vec<[RElem; 2]> {
        let mut id = id as u64;
        let mut out: Vec<[RElem; 2]> = Vec::with_capacity(self.locals.len());
        for l in self.locals.iter().rev() {
            out.push(l.point(id % l.count()));
            id /= l.count();
        }
        out.reverse();
        out
    }

    /// Id of m·pt, with one matrix per component.
    pub fn act(&self, m: &[Mat2], id: usize) -> usize {
        let pt = self.point(id);
        let moved: Vec<[RElem; 2]> = self
            .locals
            .iter()
            .zip(m.iter().zip(&pt))
            .map(|(l, (a, [x, y]))| {
                let r = &l.ring;
                [r.add(&r.mul(&a[0][0], x), &r.mul(&a[0][1], y)), r.add(&r.mul(&a[1][0], x), &r.mul(&a[1][1], y))]
            })
            .collect();
        self.index(&moved).expect("invertible matrix moved a point off P¹")
    }
}

pub fn build_p1(f: &FieldDesc, n: &ZFIdeal) -> P1Data {
    let locals: Vec<LocalP1> =
        f.ideal_factor(n).into_iter().map(|(pr, e)| LocalP1::new(f.residue_ring(&pr, e as u32))).collect();
    let count = locals.iter().map(|l| l.count() as usize).product();
    P1Data { modulus: n.clone(), locals, count }
}

/// Right ideal classes of the maximal order with norms supported at a prime
/// coprime to `avoid`.
pub fn maximal_class_reps(alg: &QuatAlgebra, omax: &QuatOrder, avoid: &ZFIdeal) -> Result<ClassSet, P1Error> {
    Ok(right_class_set(alg, omax, avoid, 0)?)
}

#[derive(Clone, Debug)]
pub struct ClassOrbits {
    /// orbit number of each point
    pub orbit_of: Vec<usize>,
    /// smallest point id of each orbit
    pub reps: Vec<usize>,
    /// stabilizer orders in Γ_i = O_i¹/{±1}
    pub stabilizers: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct OrbitData {
    pub classes: Vec<ClassOrbits>,
    /// basis of the level-N space: (class, orbit)
    pub basis: Vec<(usize, usize)>,
    offsets: Vec<usize>,
    splittings: Vec<Splitting>,
}

impl OrbitData {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Stabilizer orders in basis order; these are the Eichler e-values.
    pub fn weights(&self) -> Vec<usize> {
        self.basis.iter().map(|&(i, o)| self.classes[i].stabilizers[o]).collect()
    }

    fn images(&self, alg: &QuatAlgebra, x: &QuatElem) -> Result<Vec<Mat2>, OrderError> {
        self.splittings.iter().map(|sp| sp.image(alg, x)).collect()
    }
}

fn find(parent: &mut [usize], mut a: usize) -> usize {
    while parent[a] != a {
        parent[a] = parent[parent[a]];
        a = parent[a];
    }
    a
}

pub fn orbit_table(alg: &QuatAlgebra, cs: &ClassSet, p1: &P1Data) -> Result<OrbitData, P1Error> {
    let f = alg.field();
    for q in &cs.q {
        if !f.coprime(&f.principal_ideal(q), &p1.modulus) {
            return Err(P1Error::NonCoprimeReps);
        }
    }
    let splittings = p1
        .components()
        .into_iter()
        .map(|(pr, e)| Splitting::new(alg, &cs.order, pr, e))
        .collect::<Result<Vec<_>, _>>()?;
    let mut od = OrbitData { classes: Vec::new(), basis: Vec::new(), offsets: Vec::new(), splittings };
    for (i, units) in cs.units.iter().enumerate() {
        let mats = units.iter().map(|u| od.images(alg, u)).collect::<Result<Vec<_>, _>>()?;
        let n = p1.len();
        let mut parent: Vec<usize> = (0..n).collect();
        for x in 0..n {
            for m in &mats {
                let y = p1.act(m, x);
                let (a, b) = (find(&mut parent, x), find(&mut parent, y));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut orbit_of = vec![0usize; n];
        let mut reps = Vec::new();
        let mut sizes: Vec<usize> = Vec::new();
        let mut root_orbit: HashMap<usize, usize> = HashMap::new();
        for x in 0..n {
            let r = find(&mut parent, x);
            let o = *root_orbit.entry(r).or_insert_with(|| {
                reps.push(x);
                sizes.push(0);
                reps.len() - 1
            });
            orbit_of[x] = o;
            sizes[o] += 1;
        }
        let stabilizers = sizes
            .iter()
            .map(|&s| {
                debug_assert_eq!(cs.e[i] % s, 0);
                cs.e[i] / s
            })
            .collect();
        od.offsets.push(od.basis.len());
        od.basis.extend((0..reps.len()).map(|o| (i, o)));
        od.classes.push(ClassOrbits { orbit_of, reps, stabilizers });
    }
    Ok(od)
}

/// Representatives of {γ ∈ I_j I_i⁻¹ : nrd(γ) = p q_j / q_i} modulo ± and
/// right multiplication by Γ_i; each gives a distinct p-neighbor γ I_i of I_j.
pub fn theta_set(
    alg: &QuatAlgebra,
    cs: &ClassSet,
    pr: &PrimeIdeal,
    i: usize,
    j: usize,
) -> Result<Vec<QuatElem>, P1Error> {
    cs.check_prime(alg, pr)?;
    let f = alg.field();
    let target = f.div(&f.mul(pr.gen(), &cs.q[j]), &cs.q[i])?;
    let all = elements_of_nrd(alg, &cs.connecting_lattice(alg, i, j), &target)?;
    if all.len() % cs.e[i] != 0 {
        return Err(P1Error::Inconsistent { count: all.len(), e: cs.e[i] });
    }
    let mut seen: HashSet<QuatElem> = HashSet::new();
    let mut out = Vec::with_capacity(all.len() / cs.e[i]);
    for g in all {
        if seen.contains(&g) {
            continue;
        }
        for u in &cs.units[i] {
            seen.insert(alg.mul(&g, u));
        }
        out.push(g);
    }
    Ok(out)
}

/// T(p) on the orbit basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeBlockMatrix {
    pub p: PrimeIdeal,
    pub matrix: Vec<Vec<i64>>,
}

pub fn hecke_matrix_p1(
    alg: &QuatAlgebra,
    cs: &ClassSet,
    p1: &P1Data,
    od: &OrbitData,
    pr: &PrimeIdeal,
) -> Result<HeckeBlockMatrix, P1Error> {
    if alg.field().ideal_valuation(&p1.modulus, pr) != 0 {
        return Err(P1Error::BadPrime(pr.label()));
    }
    let dim = od.dim();
    let mut matrix = vec![vec![0i64; dim]; dim];
    for j in 0..cs.size() {
        for i in 0..cs.size() {
            for g in theta_set(alg, cs, pr, i, j)? {
                let m = od.images(alg, &alg.conj(&g))?;
                for (o, &x) in od.classes[j].reps.iter().enumerate() {
                    let y = p1.act(&m, x);
                    let row = od.offsets[i] + od.classes[i].orbit_of[y];
                    matrix[row][od.offsets[j] + o] += 1;
                }
            }
        }
    }
    Ok(HeckeBlockMatrix { p: pr.clone(), matrix })
}
