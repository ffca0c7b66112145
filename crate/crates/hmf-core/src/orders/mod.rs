//! Z_F-lattices of rank 4 in B, stored as rank-4n Z-lattices in the
//! coordinates w^k·{1, i, j, ij}; orders, ideals and maximal orders.

mod split;

pub use split::{eichler_order, Mat2, Splitting};

use crate::arith::hnf::{hnf_full, kernel_mod, QLattice};
use crate::arith::int::Q;
use crate::arith::qmat;
use crate::numfield::{FieldElem, NumFieldError, PrimeIdeal, ZFIdeal};
use crate::quatalg::{QuatAlgebra, QuatElem, QuatError};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

pub type QuatLattice = QLattice;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OrderError {
    #[error("generators do not span a full-rank lattice")]
    RankDeficient,
    #[error("lattice is not an order: {0}")]
    NotAnOrder(&'static str),
    #[error("ideal is not invertible")]
    NotInvertible,
    #[error("algebra is not totally definite")]
    DefinitenessRequired,
    #[error("prime {0} ramifies in the algebra or divides the order discriminant")]
    RamifiedPrime(String),
    #[error("level is not coprime to the discriminant")]
    LevelNotCoprime,
    #[error("splitting construction failed: {0}")]
    BadSplitting(&'static str),
    #[error("no enlargement found at {0} although the order is not maximal there")]
    EnlargementFailed(String),
    #[error(transparent)]
    Quat(#[from] QuatError),
    #[error(transparent)]
    Field(#[from] NumFieldError),
}

impl From<crate::arith::hnf::RankDeficient> for OrderError {
    fn from(_: crate::arith::hnf::RankDeficient) -> Self {
        OrderError::RankDeficient
    }
}

/// Lattice operations relative to an algebra.
impl QuatAlgebra {
    /// Z-span of w^k·g for g in `gens`.
    pub fn lattice_from_generators(&self, gens: &[QuatElem]) -> Result<QuatLattice, OrderError> {
        let f = self.field();
        let w = f.gen();
        let mut rows = Vec::with_capacity(gens.len() * f.degree());
        for g in gens {
            let mut x = g.clone();
            for _ in 0..f.degree() {
                rows.push(self.coords(&x));
                x = self.scale(&x, &w);
            }
        }
        Ok(QLattice::from_q_rows(self.qdim(), &rows)?)
    }

    /// Z-span of the given elements (no Z_F-closure).
    pub fn lattice_from_z_span(&self, elems: &[QuatElem]) -> Result<QuatLattice, OrderError> {
        let rows: Vec<Vec<Q>> = elems.iter().map(|x| self.coords(x)).collect();
        Ok(QLattice::from_q_rows(self.qdim(), &rows)?)
    }

    /// Z-basis of a lattice as algebra elements.
    pub fn lattice_basis(&self, l: &QuatLattice) -> Vec<QuatElem> {
        l.rows_q().iter().map(|r| self.from_coords(r)).collect()
    }

    pub fn lattice_contains(&self, l: &QuatLattice, x: &QuatElem) -> bool {
        l.contains(&self.coords(x))
    }

    /// A short list of basis elements generating `l` as a Z_F-module.
    pub fn zf_generators(&self, l: &QuatLattice) -> Vec<QuatElem> {
        let basis = self.lattice_basis(l);
        if self.field().degree() == 1 {
            return basis;
        }
        let mut gens: Vec<QuatElem> = Vec::new();
        let mut span: Option<QuatLattice> = None;
        for b in basis {
            if let Some(s) = &span {
                if self.lattice_contains(s, &b) {
                    continue;
                }
            }
            gens.push(b);
            // rank-deficient spans are kept as partial generator lists
            if gens.len() >= 4 {
                if let Ok(s) = self.lattice_from_generators(&gens) {
                    if &s == l {
                        return gens;
                    }
                    span = Some(s);
                }
            }
        }
        gens
    }

    /// Z-span of all products l·m.
    pub fn lattice_mul(&self, l: &QuatLattice, m: &QuatLattice) -> QuatLattice {
        let lg = self.zf_generators(l);
        let mb = self.lattice_basis(m);
        let prods: Vec<QuatElem> =
            lg.iter().flat_map(|x| mb.iter().map(move |y| (x, y))).map(|(x, y)| self.mul(x, y)).collect();
        self.lattice_from_z_span(&prods).expect("product of full-rank lattices")
    }

    pub fn lattice_conj(&self, l: &QuatLattice) -> QuatLattice {
        let elems: Vec<QuatElem> = self.lattice_basis(l).iter().map(|x| self.conj(x)).collect();
        self.lattice_from_z_span(&elems).expect("full rank")
    }

    /// x·L.
    pub fn lattice_left_mul(&self, x: &QuatElem, l: &QuatLattice) -> QuatLattice {
        let elems: Vec<QuatElem> = self.lattice_basis(l).iter().map(|b| self.mul(x, b)).collect();
        self.lattice_from_z_span(&elems).expect("x is invertible")
    }

    /// L·x.
    pub fn lattice_right_mul(&self, l: &QuatLattice, x: &QuatElem) -> QuatLattice {
        let elems: Vec<QuatElem> = self.lattice_basis(l).iter().map(|b| self.mul(b, x)).collect();
        self.lattice_from_z_span(&elems).expect("x is invertible")
    }

    /// s·L for a nonzero central s.
    pub fn lattice_scale(&self, l: &QuatLattice, s: &FieldElem) -> QuatLattice {
        if s.is_rational() {
            return l.scale(&s.coeffs()[0]);
        }
        let elems: Vec<QuatElem> = self.lattice_basis(l).iter().map(|b| self.scale(b, s)).collect();
        self.lattice_from_z_span(&elems).expect("nonzero scale")
    }

    /// {x : x L ⊆ L}.
    pub fn left_order_of(&self, l: &QuatLattice) -> QuatLattice {
        let gens = self.zf_generators(l);
        let parts: Vec<QuatLattice> =
            gens.iter().map(|g| self.lattice_right_mul(l, &self.inv(g).expect("nonzero generator"))).collect();
        QLattice::intersect_all(&parts).unwrap()
    }

    /// {x : L x ⊆ L}.
    pub fn right_order_of(&self, l: &QuatLattice) -> QuatLattice {
        let gens = self.zf_generators(l);
        let parts: Vec<QuatLattice> =
            gens.iter().map(|g| self.lattice_left_mul(&self.inv(g).expect("nonzero generator"), l)).collect();
        QLattice::intersect_all(&parts).unwrap()
    }

    /// Z_F-ideal generated by nrd(x) for x in L.
    pub fn nrd_ideal(&self, l: &QuatLattice) -> ZFIdeal {
        let g = self.zf_generators(l);
        let mut vals = Vec::new();
        for (a, x) in g.iter().enumerate() {
            vals.push(self.nrd(x));
            for y in &g[a + 1..] {
                vals.push(self.trd_pair(x, y));
            }
        }
        vals.retain(|v| !v.is_zero());
        self.field().ideal_from_gens(&vals)
    }

    /// Matrix (trd(b_k b_l)) over a Z-basis.
    pub(crate) fn trd_matrix(&self, basis: &[QuatElem]) -> Vec<Vec<FieldElem>> {
        let m = basis.len();
        let mut t = vec![vec![self.field().zero(); m]; m];
        for k in 0..m {
            for l in k..m {
                let v = self.trd(&self.mul(&basis[k], &basis[l]));
                t[l][k] = v.clone();
                t[k][l] = v;
            }
        }
        t
    }

    /// Reduced discriminant of an order given by its Z-basis.
    fn reduced_discriminant(&self, basis: &[QuatElem]) -> ZFIdeal {
        let f = self.field();
        let t = self.trd_matrix(basis);
        let tz: Vec<Vec<Q>> = t.iter().map(|r| r.iter().map(|x| f.trace(x)).collect()).collect();
        let dz = qmat::det(&tz).abs();
        let df = Q::from_integer(f.disc().abs());
        let target = dz / df.pow(4);
        let m = basis.len();
        let mut gens: Vec<FieldElem> = Vec::new();
        let mut acc: Option<ZFIdeal> = None;
        // 4-subsets of the Z-basis in lexicographic order
        'outer: for a in 0..m {
            for b in a + 1..m {
                for c in b + 1..m {
                    for d in c + 1..m {
                        let idx = [a, b, c, d];
                        let sub: Vec<Vec<FieldElem>> =
                            idx.iter().map(|&r| idx.iter().map(|&s| t[r][s].clone()).collect()).collect();
                        let det = f.mat_det(&sub);
                        if det.is_zero() {
                            continue;
                        }
                        gens.push(det);
                        let id = f.ideal_from_gens(&gens);
                        if id.norm() == target {
                            acc = Some(id);
                            break 'outer;
                        }
                    }
                }
            }
        }
        let disc = acc.unwrap_or_else(|| f.ideal_from_gens(&gens));
        let fac: Vec<(PrimeIdeal, i64)> = f
            .ideal_factor(&disc)
            .into_iter()
            .map(|(p, e)| {
                assert!(e % 2 == 0, "order discriminant is a square");
                (p, e / 2)
            })
            .collect();
        f.ideal_from_factors(&fac)
    }
}

/// An order with its reduced discriminant.
#[derive(Clone, Debug)]
pub struct QuatOrder {
    lattice: QuatLattice,
    red_disc: ZFIdeal,
    basis: Vec<QuatElem>,
}

impl PartialEq for QuatOrder {
    fn eq(&self, o: &Self) -> bool {
        self.lattice == o.lattice
    }
}
impl Eq for QuatOrder {}

impl QuatOrder {
    /// Validate that `lattice` is an order and compute its reduced discriminant.
    pub fn new(alg: &QuatAlgebra, lattice: QuatLattice) -> Result<QuatOrder, OrderError> {
        if !alg.lattice_contains(&lattice, &alg.one()) {
            return Err(OrderError::NotAnOrder("does not contain 1"));
        }
        let basis = alg.lattice_basis(&lattice);
        for x in &basis {
            if !alg.trd(x).is_integral() || !alg.nrd(x).is_integral() {
                return Err(OrderError::NotAnOrder("non-integral element"));
            }
        }
        let gens = alg.zf_generators(&lattice);
        for g in &gens {
            for b in &basis {
                if !alg.lattice_contains(&lattice, &alg.mul(g, b)) {
                    return Err(OrderError::NotAnOrder("not closed under multiplication"));
                }
            }
        }
        let red_disc = alg.reduced_discriminant(&basis);
        Ok(QuatOrder { lattice, red_disc, basis })
    }

    pub fn lattice(&self) -> &QuatLattice {
        &self.lattice
    }
    pub fn red_disc(&self) -> &ZFIdeal {
        &self.red_disc
    }
    /// Z-basis (rank 4n).
    pub fn basis(&self) -> &[QuatElem] {
        &self.basis
    }
    pub fn contains(&self, alg: &QuatAlgebra, x: &QuatElem) -> bool {
        alg.lattice_contains(&self.lattice, x)
    }
    /// [self : sub] as a rational number.
    pub fn index_of(&self, sub: &QuatOrder) -> Q {
        sub.lattice.index_in(&self.lattice)
    }
}

/// An invertible right ideal of a fixed order.
#[derive(Clone, Debug)]
pub struct RightIdeal {
    lattice: QuatLattice,
    right_order: QuatOrder,
    nrd: ZFIdeal,
    q: FieldElem,
}

impl PartialEq for RightIdeal {
    fn eq(&self, o: &Self) -> bool {
        self.lattice == o.lattice
    }
}
impl Eq for RightIdeal {}

impl RightIdeal {
    /// `lattice` must be a right `order`-module; invertibility is certified
    /// by I⁻¹I = O.
    pub fn new(alg: &QuatAlgebra, lattice: QuatLattice, order: &QuatOrder) -> Result<RightIdeal, OrderError> {
        let id = Self::new_unchecked(alg, lattice, order)?;
        if alg.lattice_mul(&id.lattice, order.lattice()) != id.lattice {
            return Err(OrderError::NotAnOrder("lattice is not a right module over the order"));
        }
        let inv = id.inverse_lattice(alg);
        if alg.lattice_mul(&inv, &id.lattice) != *order.lattice() {
            return Err(OrderError::NotInvertible);
        }
        Ok(id)
    }

    /// Skip the module and invertibility checks (for lattices known to be
    /// locally principal right ideals, such as neighbors).
    pub fn new_unchecked(alg: &QuatAlgebra, lattice: QuatLattice, order: &QuatOrder) -> Result<RightIdeal, OrderError> {
        let nrd = alg.nrd_ideal(&lattice);
        let q = alg.field().totally_positive_generator(&nrd)?;
        Ok(RightIdeal { lattice, right_order: order.clone(), nrd, q })
    }

    /// The order itself as a right ideal.
    pub fn unit(alg: &QuatAlgebra, order: &QuatOrder) -> RightIdeal {
        let f = alg.field();
        RightIdeal { lattice: order.lattice.clone(), right_order: order.clone(), nrd: f.unit_ideal(), q: f.one() }
    }

    pub fn lattice(&self) -> &QuatLattice {
        &self.lattice
    }
    pub fn right_order(&self) -> &QuatOrder {
        &self.right_order
    }
    pub fn nrd(&self) -> &ZFIdeal {
        &self.nrd
    }
    /// Totally positive generator of nrd(I).
    pub fn q(&self) -> &FieldElem {
        &self.q
    }

    /// I⁻¹ = conj(I)·q⁻¹.
    pub fn inverse_lattice(&self, alg: &QuatAlgebra) -> QuatLattice {
        let qi = alg.field().inv(&self.q).unwrap();
        alg.lattice_scale(&alg.lattice_conj(&self.lattice), &qi)
    }

    /// x·I as a right ideal of the same order.
    pub fn left_mul(&self, alg: &QuatAlgebra, x: &QuatElem) -> Result<RightIdeal, OrderError> {
        RightIdeal::new_unchecked(alg, alg.lattice_left_mul(x, &self.lattice), &self.right_order)
    }

    pub fn left_order(&self, alg: &QuatAlgebra) -> Result<QuatOrder, OrderError> {
        QuatOrder::new(alg, alg.left_order_of(&self.lattice))
    }

    /// Canonical sort key.
    pub fn key(&self) -> (Q, &QuatLattice) {
        (self.nrd.norm(), &self.lattice)
    }
}

/// Order generated by 1, i', j', i'j' with i', j' integral rescalings.
pub fn standard_order(alg: &QuatAlgebra) -> Result<QuatOrder, OrderError> {
    let f = alg.field();
    let da = Q::from_integer(alg.a().denom());
    let db = Q::from_integer(alg.b().denom());
    let i = alg.scale(&alg.basis(1), &f.from_q(&da));
    let j = alg.scale(&alg.basis(2), &f.from_q(&db));
    let k = alg.mul(&i, &j);
    let l = alg.lattice_from_generators(&[alg.one(), i, j, k])?;
    QuatOrder::new(alg, l)
}

/// A maximal order: start from the standard order and enlarge prime by
/// prime until the reduced discriminant equals disc(B).
pub fn maximal_order(alg: &QuatAlgebra) -> Result<QuatOrder, OrderError> {
    if !alg.is_definite() {
        return Err(OrderError::DefinitenessRequired);
    }
    let mut o = standard_order(alg)?;
    let f = alg.field();
    loop {
        if o.red_disc() == alg.disc() {
            return Ok(o);
        }
        let excess = f.ideal_div(o.red_disc(), alg.disc());
        let (pr, _) = f.ideal_factor(&excess).into_iter().find(|x| x.1 > 0).expect("disc(B) divides red_disc");
        o = enlarge_at(alg, &o, &pr)?.ok_or_else(|| OrderError::EnlargementFailed(pr.label()))?;
    }
}

/// A strictly larger order O' ⊇ O with [O' : O] a power of N(P), or None if
/// O is maximal at P. Candidates x = y/π have y in the kernel of the trd form
/// modulo P, which contains π·O' for every overorder O'.
pub fn enlarge_at(alg: &QuatAlgebra, o: &QuatOrder, pr: &PrimeIdeal) -> Result<Option<QuatOrder>, OrderError> {
    let f = alg.field();
    let n = f.degree();
    let m = o.basis.len();
    let pi = pr.gen().clone();
    let pi_inv = f.inv(&pi)?;
    let t = alg.trd_matrix(&o.basis);
    let images: Vec<Vec<BigInt>> = t.iter().map(|row| row.iter().flat_map(|x| x.to_int_vec()).collect()).collect();
    // P in each of the m blocks
    let ph = pr.ideal.hnf();
    let mut modulus = vec![vec![BigInt::zero(); m * n]; m * n];
    for blk in 0..m {
        for r in 0..n {
            for c in 0..n {
                modulus[blk * n + r][blk * n + c] = ph[r][c].clone();
            }
        }
    }
    let kz = kernel_mod(&images, &modulus);
    // coordinates of π·O in the kernel basis
    let kq: Vec<Vec<Q>> = kz.iter().map(|r| r.iter().map(|x| Q::from_integer(x.clone())).collect()).collect();
    let klat = QLattice::from_q_rows(m, &kq)?;
    let mut sub_rows = Vec::with_capacity(m);
    for b in &o.basis {
        let y = alg.scale(b, &pi);
        let c = o.lattice.int_coords(&alg.coords(&y)).expect("πO ⊆ O");
        let cq: Vec<Q> = c.into_iter().map(Q::from_integer).collect();
        let kc = klat.int_coords(&cq).expect("πO lies in the trd kernel");
        sub_rows.push(kc);
    }
    let h = hnf_full(m, sub_rows).expect("full rank");
    let diag: Vec<BigInt> = (0..m).map(|i| h[i][i].clone()).collect();
    let kb: Vec<Vec<BigInt>> = klat.basis().to_vec();
    let kd = klat.denom().clone();
    // enumerate the residues c (0 <= c_i < diag_i), skipping zero
    let mut c = vec![BigInt::zero(); m];
    loop {
        let mut k = 0;
        loop {
            if k == m {
                return Ok(None);
            }
            c[k] += 1;
            if c[k] < diag[k] {
                break;
            }
            c[k] = BigInt::zero();
            k += 1;
        }
        let mut zc = vec![BigInt::zero(); m];
        for (i, ci) in c.iter().enumerate() {
            if ci.is_zero() {
                continue;
            }
            for j in 0..m {
                zc[j] += ci * &kb[i][j];
            }
        }
        // Z-coordinates in O's basis
        let mut y = alg.zero();
        for (j, cj) in zc.iter().enumerate() {
            if cj.is_zero() {
                continue;
            }
            let (qt, r) = cj.div_rem(&kd);
            debug_assert!(r.is_zero());
            y = alg.add(&y, &alg.scale(&o.basis[j], &f.from_q(&Q::from_integer(qt))));
        }
        if f.valuation(&alg.nrd(&y), pr) < 2 {
            continue;
        }
        let x = alg.scale(&y, &pi_inv);
        if !alg.trd(&x).is_integral() {
            continue;
        }
        if let Some(lat) = close_order(alg, &o.lattice, &x) {
            return Ok(Some(QuatOrder::new(alg, lat)?));
        }
    }
}

/// The ring generated by an order and x, if it is an order.
fn close_order(alg: &QuatAlgebra, o: &QuatLattice, x: &QuatElem) -> Option<QuatLattice> {
    let mut elems = alg.lattice_basis(o);
    let w = alg.field().gen();
    let mut y = x.clone();
    for _ in 0..alg.field().degree() {
        elems.push(y.clone());
        y = alg.scale(&y, &w);
    }
    let mut l = alg.lattice_from_z_span(&elems).ok()?;
    loop {
        let basis = alg.lattice_basis(&l);
        for a in 0..basis.len() {
            for b in a..basis.len() {
                if !alg.trd(&alg.mul(&basis[a], &basis[b])).is_integral() {
                    return None;
                }
            }
        }
        let next = l.sum(&alg.lattice_mul(&l, &l));
        if next == l {
            return Some(l);
        }
        l = next;
    }
}

/// x ∈ L with v_P(nrd x) = v_P(nrd L), searched over small combinations of
/// the Z-basis.
pub fn local_generator(alg: &QuatAlgebra, l: &QuatLattice, pr: &PrimeIdeal) -> Option<QuatElem> {
    let f = alg.field();
    let target = f.ideal_valuation(&alg.nrd_ideal(l), pr);
    let basis = alg.lattice_basis(l);
    for b in &basis {
        if f.valuation(&alg.nrd(b), pr) == target {
            return Some(b.clone());
        }
    }
    for a in 0..basis.len() {
        for b in a + 1..basis.len() {
            for s in [1i64, -1, 2, -2] {
                let x = alg.add(&basis[a], &alg.scale(&basis[b], &f.from_int(s)));
                if !alg.is_zero(&x) && f.valuation(&alg.nrd(&x), pr) == target {
                    return Some(x);
                }
            }
        }
    }
    // exhaustive small combinations
    let m = basis.len();
    let mut c = vec![-1i64; m];
    loop {
        let mut x = alg.zero();
        for (k, &ck) in c.iter().enumerate() {
            if ck != 0 {
                x = alg.add(&x, &alg.scale(&basis[k], &f.from_int(ck)));
            }
        }
        if !alg.is_zero(&x) && f.valuation(&alg.nrd(&x), pr) == target {
            return Some(x);
        }
        let mut k = 0;
        loop {
            if k == m {
                return None;
            }
            if c[k] < 1 {
                c[k] += 1;
                break;
            }
            c[k] = -1;
            k += 1;
        }
    }
}

impl std::fmt::Display for QuatOrder {
    fn fmt(&self, fm: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(fm, "order(denom {}, rank {})", self.lattice.denom(), self.lattice.dim())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::FieldDesc;

    pub(crate) fn pizer() -> QuatAlgebra {
        let f = FieldDesc::rationals();
        QuatAlgebra::new(&f, &f.from_int(-1), &f.from_int(-23)).unwrap()
    }

    pub(crate) fn hamilton5() -> QuatAlgebra {
        let f = FieldDesc::parse("x^2-x-1").unwrap();
        QuatAlgebra::new(&f, &f.from_int(-1), &f.from_int(-1)).unwrap()
    }

    #[test]
    fn lattice_generators() {
        let alg = hamilton5();
        let l = alg.lattice_from_generators(&[alg.one(), alg.basis(1), alg.basis(2), alg.basis(3)]).unwrap();
        assert_eq!(l, QLattice::standard(8));
        let l2 =
            alg.lattice_from_generators(&[alg.one(), alg.basis(1), alg.basis(1), alg.basis(2), alg.basis(3)]).unwrap();
        assert_eq!(l, l2);
    }

    #[test]
    fn pizer_maximal_order() {
        let alg = pizer();
        let o = maximal_order(&alg).unwrap();
        assert_eq!(o.red_disc(), alg.disc());
        let k = alg.parse_elem("1/2 + 1/2*j").unwrap();
        assert!(o.contains(&alg, &k));
        let i = alg.basis(1);
        let reference = alg.lattice_from_generators(&[alg.one(), i.clone(), k.clone(), alg.mul(&i, &k)]).unwrap();
        assert_eq!(o.lattice(), &reference);
        assert_eq!(alg.lattice_mul(o.lattice(), o.lattice()), *o.lattice());
        assert_eq!(alg.right_order_of(o.lattice()), *o.lattice());
        // fixed point of enlargement
        let pr = alg.field().factor_rational_prime(23).remove(0);
        assert!(enlarge_at(&alg, &o, &pr).unwrap().is_none());
    }

    #[test]
    fn hamilton_maximal_order() {
        let alg = hamilton5();
        let o = maximal_order(&alg).unwrap();
        assert!(o.red_disc().is_one());
        let k = alg.parse_elem("(1+w)/2 + w/2*i + 1/2*j").unwrap();
        let i = alg.basis(1);
        let reference = alg.lattice_from_generators(&[alg.one(), i.clone(), k.clone(), alg.mul(&i, &k)]).unwrap();
        let po = QuatOrder::new(&alg, reference).unwrap();
        assert!(po.red_disc().is_one());
    }

    #[test]
    fn ideal_inverse() {
        let alg = pizer();
        let o = maximal_order(&alg).unwrap();
        let k = alg.parse_elem("1/2 + 1/2*j").unwrap();
        let two = alg.from_field(&alg.field().from_int(2));
        let gens: Vec<QuatElem> = o.basis().iter().flat_map(|b| [alg.mul(&two, b), alg.mul(&k, b)]).collect();
        let lat = alg.lattice_from_z_span(&gens).unwrap();
        let id = RightIdeal::new(&alg, lat, &o).unwrap();
        assert_eq!(id.nrd().norm(), Q::from_integer(BigInt::from(2)));
        let inv = id.inverse_lattice(&alg);
        assert_eq!(alg.lattice_mul(&inv, id.lattice()), *o.lattice());
        let ol = id.left_order(&alg).unwrap();
        assert_eq!(alg.lattice_mul(id.lattice(), &inv), *ol.lattice());
        assert_eq!(ol.red_disc(), o.red_disc());
    }
}
