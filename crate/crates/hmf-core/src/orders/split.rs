//! Splitting maps O → M_2(Z_F/P^e) at primes not dividing the order
//! discriminant, and Eichler orders as preimages of upper triangular matrices.

use super::{OrderError, QuatOrder};
use crate::arith::hnf::{kernel_mod, QLattice};
use crate::arith::int::{fnv1a, Q};
use crate::numfield::{FMat, FieldElem, PrimeIdeal, RElem, ResidueRing, ZFIdeal};
use crate::quatalg::{QuatAlgebra, QuatElem};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// 2×2 matrix over Z_F/P^e, row-major.
pub type Mat2 = [[RElem; 2]; 2];

/// Element of O ⊗ Z_F/P^e in local-basis coordinates.
type AElem = [RElem; 4];

#[derive(Clone, Debug)]
pub struct Splitting {
    ring: ResidueRing,
    /// rows: components of the local basis x_1..x_4 over F
    coord_inv: FMat,
    /// images of the local basis
    images: [Mat2; 4],
}

impl Splitting {
    /// Splitting of `order` modulo P^e. Deterministic: the random elements
    /// used to find an idempotent come from a seed derived from (O, P, e).
    pub fn new(alg: &QuatAlgebra, order: &QuatOrder, pr: &PrimeIdeal, e: u32) -> Result<Splitting, OrderError> {
        let f = alg.field();
        if f.ideal_valuation(order.red_disc(), pr) != 0 {
            return Err(OrderError::RamifiedPrime(pr.label()));
        }
        let ring = f.residue_ring(pr, e);
        let basis = order.basis();
        // local basis: 4 Z-basis elements whose trd Gram is a P-unit
        let t = alg.trd_matrix(basis);
        let m = basis.len();
        let mut chosen = None;
        'outer: for a in 0..m {
            for b in a + 1..m {
                for c in b + 1..m {
                    for d in c + 1..m {
                        let idx = [a, b, c, d];
                        let sub: FMat = idx.iter().map(|&r| idx.iter().map(|&s| t[r][s].clone()).collect()).collect();
                        let det = f.mat_det(&sub);
                        if !det.is_zero() && f.valuation(&det, pr) == 0 {
                            chosen = Some(idx);
                            break 'outer;
                        }
                    }
                }
            }
        }
        let idx = chosen.ok_or(OrderError::BadSplitting("no local basis"))?;
        let local: Vec<QuatElem> = idx.iter().map(|&k| basis[k].clone()).collect();
        let xm: FMat = local.iter().map(|x| x.c.to_vec()).collect();
        let coord_inv = f.mat_inverse(&xm).ok_or(OrderError::BadSplitting("local basis is singular"))?;
        let sp = Splitting {
            ring,
            coord_inv,
            images: std::array::from_fn(|_| std::array::from_fn(|_| std::array::from_fn(|_| RElem(vec![])))),
        };
        let loc = |x: &QuatElem| sp.local_coords(x);
        // structure constants
        let mut sc: Vec<Vec<AElem>> = Vec::with_capacity(4);
        for x in &local {
            let mut row = Vec::with_capacity(4);
            for y in &local {
                row.push(loc(&alg.mul(x, y))?);
            }
            sc.push(row);
        }
        let alg_r = LocalAlg { ring: &sp.ring, sc };
        let one = loc(&alg.one())?;

        let mut seed_bytes = format!("{:?}|{}|{}|{}", order.lattice().basis(), pr.p, pr.index, e).into_bytes();
        seed_bytes.extend_from_slice(b"split");
        let mut rng = ChaCha8Rng::seed_from_u64(fnv1a(&seed_bytes));
        let ring1 = f.residue_ring(pr, 1);
        let mut idem = None;
        for _ in 0..500 {
            let mut y = alg.zero();
            for b in basis {
                let c: i64 = rng.gen_range(-3..=3);
                if c != 0 {
                    y = alg.add(&y, &alg.scale(b, &f.from_int(c)));
                }
            }
            let (tr, nr) = (alg.trd(&y), alg.nrd(&y));
            let (tr1, nr1) = (ring1.from_integral(&tr), ring1.from_integral(&nr));
            let roots: Vec<RElem> = ring1
                .elements()
                .filter(|r| {
                    let v = ring1.add(&ring1.sub(&ring1.mul(r, r), &ring1.mul(&tr1, r)), &nr1);
                    ring1.is_zero(&v)
                })
                .collect();
            if roots.len() != 2 {
                continue;
            }
            let r = &sp.ring;
            let r1 = r.from_integral(&ring1.lift(&roots[0]));
            let r2 = r.from_integral(&ring1.lift(&roots[1]));
            let dinv = r.inv(&r.sub(&r1, &r2)).expect("distinct roots mod P");
            let ylo = loc(&y)?;
            let e0 = alg_r.scale(&alg_r.sub(&ylo, &alg_r.scale(&one, &r2)), &dinv);
            idem = Some(e0);
            break;
        }
        let mut ep = idem.ok_or(OrderError::BadSplitting("no element with split characteristic polynomial"))?;
        // Newton iteration e <- 3e² - 2e³
        let three = sp.ring.from_int(3);
        let two = sp.ring.from_int(2);
        for _ in 0..(2 * e + 4) {
            let e2 = alg_r.mul(&ep, &ep);
            if e2 == ep {
                break;
            }
            let e3 = alg_r.mul(&e2, &ep);
            ep = alg_r.sub(&alg_r.scale(&e2, &three), &alg_r.scale(&e3, &two));
        }
        if alg_r.mul(&ep, &ep) != ep {
            return Err(OrderError::BadSplitting("idempotent lift did not converge"));
        }
        let fe = alg_r.sub(&one, &ep);
        let unit_basis: Vec<AElem> =
            (0..4).map(|k| std::array::from_fn(|l| if k == l { sp.ring.one() } else { sp.ring.zero() })).collect();
        let e12 = unit_basis
            .iter()
            .map(|z| alg_r.mul(&alg_r.mul(&ep, z), &fe))
            .find(|u| u.iter().any(|c| sp.ring.is_unit(c)))
            .ok_or(OrderError::BadSplitting("e A (1-e) vanishes mod P"))?;
        let mut e21 = None;
        for z in &unit_basis {
            let v = alg_r.mul(&alg_r.mul(&fe, z), &ep);
            let c = alg_r.coeff(&ep, &alg_r.mul(&e12, &v))?;
            if let Some(ci) = sp.ring.inv(&c) {
                e21 = Some(alg_r.scale(&v, &ci));
                break;
            }
        }
        let e21 = e21.ok_or(OrderError::BadSplitting("no dual matrix unit"))?;
        if alg_r.mul(&e21, &e12) != fe {
            return Err(OrderError::BadSplitting("matrix units inconsistent"));
        }
        let mut images: Vec<Mat2> = Vec::with_capacity(4);
        for z in &unit_basis {
            let lft = [&ep, &e12];
            let rgt = [&ep, &e21];
            let mut mat: Mat2 = std::array::from_fn(|_| std::array::from_fn(|_| sp.ring.zero()));
            for (r, a) in lft.iter().enumerate() {
                for (c, b) in rgt.iter().enumerate() {
                    mat[r][c] = alg_r.coeff(&ep, &alg_r.mul(&alg_r.mul(a, z), b))?;
                }
            }
            images.push(mat);
        }
        let sp = Splitting { images: images.try_into().unwrap(), ..sp };
        // verify the homomorphism on the local basis
        for (k, x) in local.iter().enumerate() {
            let m = &sp.images[k];
            if sp.det(m) != sp.reduce(&alg.nrd(x))? || sp.trace(m) != sp.reduce(&alg.trd(x))? {
                return Err(OrderError::BadSplitting("det/trace mismatch"));
            }
            for (l, y) in local.iter().enumerate() {
                if sp.mat_mul(m, &sp.images[l]) != sp.image(alg, &alg.mul(x, y))? {
                    return Err(OrderError::BadSplitting("not multiplicative"));
                }
            }
        }
        Ok(sp)
    }

    pub fn ring(&self) -> &ResidueRing {
        &self.ring
    }

    fn reduce(&self, x: &FieldElem) -> Result<RElem, OrderError> {
        Ok(self.ring.from_elem(x)?)
    }

    fn local_coords(&self, x: &QuatElem) -> Result<AElem, OrderError> {
        let f = &self.coord_inv;
        let fd = self.ring_field();
        let c = fd.vec_mat(&x.c, f);
        let mut out: Vec<RElem> = Vec::with_capacity(4);
        for v in &c {
            out.push(self.reduce(v)?);
        }
        Ok(out.try_into().unwrap())
    }

    fn ring_field(&self) -> &crate::numfield::FieldDesc {
        self.ring.field()
    }

    /// ι(x) for x integral at P.
    pub fn image(&self, _alg: &QuatAlgebra, x: &QuatElem) -> Result<Mat2, OrderError> {
        let c = self.local_coords(x)?;
        let r = &self.ring;
        let mut m: Mat2 = std::array::from_fn(|_| std::array::from_fn(|_| r.zero()));
        for (k, ck) in c.iter().enumerate() {
            if r.is_zero(ck) {
                continue;
            }
            for a in 0..2 {
                for b in 0..2 {
                    m[a][b] = r.add(&m[a][b], &r.mul(ck, &self.images[k][a][b]));
                }
            }
        }
        Ok(m)
    }

    pub fn mat_mul(&self, x: &Mat2, y: &Mat2) -> Mat2 {
        let r = &self.ring;
        std::array::from_fn(|a| std::array::from_fn(|b| r.add(&r.mul(&x[a][0], &y[0][b]), &r.mul(&x[a][1], &y[1][b]))))
    }

    pub fn det(&self, m: &Mat2) -> RElem {
        let r = &self.ring;
        r.sub(&r.mul(&m[0][0], &m[1][1]), &r.mul(&m[0][1], &m[1][0]))
    }

    pub fn trace(&self, m: &Mat2) -> RElem {
        self.ring.add(&m[0][0], &m[1][1])
    }
}

/// O ⊗ Z_F/P^e via structure constants on the local basis.
struct LocalAlg<'a> {
    ring: &'a ResidueRing,
    sc: Vec<Vec<AElem>>,
}

impl LocalAlg<'_> {
    fn mul(&self, u: &AElem, v: &AElem) -> AElem {
        let r = self.ring;
        let mut out: AElem = std::array::from_fn(|_| r.zero());
        for k in 0..4 {
            if r.is_zero(&u[k]) {
                continue;
            }
            for l in 0..4 {
                if r.is_zero(&v[l]) {
                    continue;
                }
                let c = r.mul(&u[k], &v[l]);
                for m in 0..4 {
                    out[m] = r.add(&out[m], &r.mul(&c, &self.sc[k][l][m]));
                }
            }
        }
        out
    }
    fn sub(&self, u: &AElem, v: &AElem) -> AElem {
        std::array::from_fn(|k| self.ring.sub(&u[k], &v[k]))
    }
    fn scale(&self, u: &AElem, s: &RElem) -> AElem {
        std::array::from_fn(|k| self.ring.mul(&u[k], s))
    }
    /// c with w = c·e, for w in eAe.
    fn coeff(&self, e: &AElem, w: &AElem) -> Result<RElem, OrderError> {
        let r = self.ring;
        let k = (0..4).find(|&k| r.is_unit(&e[k])).ok_or(OrderError::BadSplitting("idempotent vanishes mod P"))?;
        let c = r.mul(&w[k], &r.inv(&e[k]).unwrap());
        if self.scale(e, &c) != *w {
            return Err(OrderError::BadSplitting("element outside eAe"));
        }
        Ok(c)
    }
}

/// O_0(N) ⊆ Omax: elements whose splitting at each P^e ‖ N is upper triangular.
pub fn eichler_order(alg: &QuatAlgebra, omax: &QuatOrder, level: &ZFIdeal) -> Result<QuatOrder, OrderError> {
    let f = alg.field();
    if !f.coprime(level, alg.disc()) {
        return Err(OrderError::LevelNotCoprime);
    }
    let mut lat = omax.lattice().clone();
    for (pr, e) in f.ideal_factor(level) {
        let sp = Splitting::new(alg, omax, &pr, e as u32)?;
        lat = upper_triangular_preimage(alg, &lat, &sp)?;
    }
    QuatOrder::new(alg, lat)
}

/// {x ∈ L : ι(x)_{21} ≡ 0}.
pub fn upper_triangular_preimage(alg: &QuatAlgebra, lat: &QLattice, sp: &Splitting) -> Result<QLattice, OrderError> {
    let basis = alg.lattice_basis(lat);
    let mut images: Vec<Vec<BigInt>> = Vec::with_capacity(basis.len());
    for b in &basis {
        let m = sp.image(alg, b)?;
        images.push(m[1][0].0.iter().map(|&c| BigInt::from(c)).collect());
    }
    let ker = kernel_mod(&images, sp.ring().modulus().hnf());
    let rows: Vec<Vec<Q>> = ker
        .iter()
        .map(|c| {
            let mut v = vec![Q::from_integer(BigInt::from(0)); lat.dim()];
            for (k, ck) in c.iter().enumerate() {
                let row = lat.row_q(k);
                for j in 0..v.len() {
                    v[j] += &row[j] * Q::from_integer(ck.clone());
                }
            }
            v
        })
        .collect();
    Ok(QLattice::from_q_rows(lat.dim(), &rows)?)
}

#[cfg(test)]
mod tests {
    use super::super::maximal_order;
    use super::super::tests::{hamilton5, pizer};
    use super::*;

    #[test]
    fn splitting_relations() {
        let alg = hamilton5();
        let o = maximal_order(&alg).unwrap();
        let f = alg.field();
        let n = f.prime_of(&f.parse_elem("3*w+7").unwrap()).unwrap();
        for e in [1u32, 2] {
            let sp = Splitting::new(&alg, &o, &n, e).unwrap();
            let i = sp.image(&alg, &alg.basis(1)).unwrap();
            let m1 = sp.ring().neg(&sp.ring().one());
            let sq = sp.mat_mul(&i, &i);
            assert_eq!(sq[0][0], m1);
            assert!(sp.ring().is_zero(&sq[0][1]));
            for x in o.basis() {
                for y in o.basis() {
                    let xy = alg.mul(x, y);
                    let ixy = sp.image(&alg, &xy).unwrap();
                    assert_eq!(ixy, sp.mat_mul(&sp.image(&alg, x).unwrap(), &sp.image(&alg, y).unwrap()));
                    assert_eq!(sp.det(&ixy), sp.ring().from_integral(&alg.nrd(&xy)));
                }
            }
        }
    }

    #[test]
    fn eichler_level_61() {
        let alg = hamilton5();
        let o = maximal_order(&alg).unwrap();
        let f = alg.field();
        let level = f.principal_ideal(&f.parse_elem("3*w+7").unwrap());
        let e = eichler_order(&alg, &o, &level).unwrap();
        assert_eq!(e.red_disc(), &level);
        assert_eq!(o.index_of(&e), Q::from_integer(BigInt::from(61)));
        let sq = f.ideal_mul(
            &f.principal_ideal(&f.parse_elem("w+3").unwrap()),
            &f.principal_ideal(&f.parse_elem("w+3").unwrap()),
        );
        let e2 = eichler_order(&alg, &o, &sq).unwrap();
        assert_eq!(e2.red_disc(), &sq);
        assert_eq!(o.index_of(&e2), Q::from_integer(BigInt::from(121)));
        let one = eichler_order(&alg, &o, &f.unit_ideal()).unwrap();
        assert_eq!(one, o);
    }

    #[test]
    fn ramified_prime_rejected() {
        let alg = pizer();
        let o = maximal_order(&alg).unwrap();
        let pr = alg.field().factor_rational_prime(23).remove(0);
        assert!(matches!(Splitting::new(&alg, &o, &pr, 1), Err(OrderError::RamifiedPrime(_))));
        let pr2 = alg.field().factor_rational_prime(2).remove(0);
        let sp = Splitting::new(&alg, &o, &pr2, 3).unwrap();
        assert_eq!(sp.ring().size(), 8);
    }
}
