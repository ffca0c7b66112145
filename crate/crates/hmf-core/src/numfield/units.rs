//! Units, strict class number check, and (totally positive) generators of
//! principal ideals.

use super::{FieldDesc, FieldElem, NumFieldError, ZFIdeal};
use crate::arith::enumerate::{short_vectors, EnumError};
use crate::arith::int::{exact_sqrt, Q};
use crate::arith::qmat;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

const PELL_Y_CAP: i64 = 5_000_000;
const ENUM_CAP: usize = 200_000;

/// Fill in fundamental units, sign units and the generator T2 factor, then
/// certify that units of every sign pattern exist.
pub(super) fn compute_units(fd: &mut FieldDesc) -> Result<(), NumFieldError> {
    match fd.n {
        1 => {
            fd.gen_t2_factor = 1.0;
        }
        2 => {
            let eps = pell_unit(fd)?;
            fd.fund_units = vec![eps.clone()];
            fd.sign_units = vec![eps];
        }
        _ => {
            let (fund, all) = short_units(fd)?;
            fd.fund_units = fund;
            fd.sign_units = all;
        }
    }
    if fd.n > 1 {
        let mut factor = 0.0;
        for i in 0..fd.n {
            let c: f64 = fd.fund_units.iter().map(|u| fd.embeddings(u)[i].abs().ln().abs()).sum::<f64>() / 2.0;
            factor += (2.0 * c).exp();
        }
        fd.gen_t2_factor = 1.01 * factor;
    }
    let mut vecs = vec![sign_bits(fd, &fd.from_int(-1))];
    vecs.extend(fd.sign_units.iter().map(|u| sign_bits(fd, u)));
    let rank = f2_rank(&vecs);
    if rank < fd.n {
        return Err(NumFieldError::StrictClassNumberNotOne { rank, n: fd.n });
    }
    Ok(())
}

fn sign_bits(fd: &FieldDesc, a: &FieldElem) -> u64 {
    fd.signs(a).iter().enumerate().filter(|(_, &s)| s < 0).fold(0, |acc, (i, _)| acc | (1 << i))
}

fn f2_rank(vecs: &[u64]) -> usize {
    let mut basis: Vec<u64> = Vec::new();
    for &v in vecs {
        let mut x = v;
        for &b in &basis {
            x = x.min(x ^ b);
        }
        if x != 0 {
            basis.push(x);
            basis.sort_by(|a, b| b.cmp(a));
        }
    }
    basis.len()
}

/// Solve target = XOR of a subset of `vecs`; returns the subset as a mask.
fn f2_solve(vecs: &[u64], target: u64) -> Option<u64> {
    // basis entries carry (vector, combination)
    let mut basis: Vec<(u64, u64)> = Vec::new();
    for (i, &v) in vecs.iter().enumerate() {
        let (mut x, mut c) = (v, 1u64 << i);
        for &(b, bc) in &basis {
            if x ^ b < x {
                x ^= b;
                c ^= bc;
            }
        }
        if x != 0 {
            basis.push((x, c));
            basis.sort_by_key(|b| std::cmp::Reverse(b.0));
        }
    }
    let (mut x, mut c) = (target, 0u64);
    for &(b, bc) in &basis {
        if x ^ b < x {
            x ^= b;
            c ^= bc;
        }
    }
    (x == 0).then_some(c)
}

/// Fundamental unit of a real quadratic order Z[w]: the unit with minimal
/// w-coefficient, normalized to be the smallest such unit > 1 at the largest root.
fn pell_unit(fd: &FieldDesc) -> Result<FieldElem, NumFieldError> {
    let f0 = &fd.f[0];
    let f1 = &fd.f[1];
    let d = f1 * f1 - BigInt::from(4) * f0;
    let top = fd.n - 1;
    for y in 1..=PELL_Y_CAP {
        let yb = BigInt::from(y);
        let mut cands = Vec::new();
        for s in [1i64, -1] {
            let delta = &d * &yb * &yb + BigInt::from(4 * s);
            if delta.is_negative() {
                continue;
            }
            let Some(r) = exact_sqrt(&delta) else { continue };
            for num in [f1 * &yb + &r, f1 * &yb - &r] {
                if num.is_even() {
                    let x = num / 2;
                    cands.push(FieldElem { c: vec![Q::from_integer(x), Q::from_integer(yb.clone())] });
                }
            }
        }
        if cands.is_empty() {
            continue;
        }
        let mut best: Option<(f64, FieldElem)> = None;
        for u in cands {
            debug_assert!(fd.norm(&u).abs().is_one());
            let v = fd.embeddings(&u)[top];
            if v > 1.0 && best.as_ref().is_none_or(|b| v < b.0) {
                best = Some((v, u));
            }
        }
        if let Some((_, u)) = best {
            return Ok(u);
        }
    }
    Err(NumFieldError::UnitSearchExceeded)
}

/// Units of small T2 in degree >= 3: an independent system of rank n-1
/// (greedy by log-embedding rank) and every unit found.
fn short_units(fd: &FieldDesc) -> Result<(Vec<FieldElem>, Vec<FieldElem>), NumFieldError> {
    let n = fd.n;
    let gram = fd.t2_gram();
    let mut bound = Q::from_integer(BigInt::from(2 * n as i64));
    loop {
        let vs = match short_vectors(&gram, &bound, Some(ENUM_CAP)) {
            Ok(v) => v,
            Err(_) => return Err(NumFieldError::UnitSearchExceeded),
        };
        let mut all = Vec::new();
        let mut fund: Vec<FieldElem> = Vec::new();
        let mut logs: Vec<Vec<f64>> = Vec::new();
        for (v, _) in vs {
            let u = fd.from_int_vec(&v.iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>());
            if !fd.norm(&u).abs().is_one() || u.is_rational() {
                continue;
            }
            let l: Vec<f64> = fd.embeddings(&u).iter().map(|x| x.abs().ln()).collect();
            let mut trial = logs.clone();
            trial.push(l[..n - 1].to_vec());
            if fund.len() < n - 1 && float_rank(&trial) == trial.len() {
                logs = trial;
                fund.push(u.clone());
            }
            all.push(u);
        }
        if fund.len() == n - 1 {
            return Ok((fund, all));
        }
        bound *= Q::from_integer(BigInt::from(2));
    }
}

fn float_rank(rows: &[Vec<f64>]) -> usize {
    let mut m = rows.to_vec();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).max_by(|&a, &b| m[a][c].abs().partial_cmp(&m[b][c].abs()).unwrap()) else {
            break;
        };
        if m[p][c].abs() < 1e-6 {
            continue;
        }
        m.swap(rank, p);
        for r in 0..m.len() {
            if r != rank {
                let f = m[r][c] / m[rank][c];
                for k in 0..cols {
                    m[r][k] -= f * m[rank][k];
                }
            }
        }
        rank += 1;
    }
    rank
}

impl FieldDesc {
    /// A generator of the principal ideal `a`, reduced to small T2.
    pub fn find_generator(&self, a: &ZFIdeal) -> Result<FieldElem, NumFieldError> {
        let d = Q::from_integer(a.lattice().denom().clone());
        let b = a.lattice().scale(&d);
        let norm = b.covolume();
        let rows = b.rows_q();
        let t = self.t2_gram();
        let bm = qmat::mul(&qmat::mul(&rows, &t), &qmat::transpose(&rows));
        let n = self.n as f64;
        let nf = norm.to_f64().unwrap_or(f64::MAX);
        let final_bound = nf.powf(2.0 / n) * self.gen_t2_factor;
        let mut bf = n * nf.powf(2.0 / n);
        loop {
            let bq = Q::from_f64(bf.min(final_bound) * (1.0 + 1e-9) + 1e-9)
                .unwrap_or_else(|| Q::from_integer(BigInt::one()));
            let vs = short_vectors(&bm, &bq, Some(ENUM_CAP)).map_err(|e| match e {
                EnumError::TooManyVectors(_) | EnumError::NotPositiveDefinite => {
                    NumFieldError::GeneratorSearchExceeded { bound: format!("{:.3e}", bf) }
                }
            })?;
            for (v, _) in vs {
                let mut c = vec![Q::zero(); self.n];
                for (k, &x) in v.iter().enumerate() {
                    if x != 0 {
                        for j in 0..self.n {
                            c[j] += &rows[k][j] * Q::from_integer(BigInt::from(x));
                        }
                    }
                }
                let x = FieldElem { c };
                if self.norm(&x).abs() == norm {
                    return Ok(x.scale(&(Q::one() / &d)));
                }
            }
            if bf >= final_bound {
                return Err(NumFieldError::GeneratorSearchExceeded { bound: format!("{:.3e}", final_bound) });
            }
            bf *= 2.0;
        }
    }

    /// A totally positive generator of `a`, reduced by squares of units.
    pub fn totally_positive_generator(&self, a: &ZFIdeal) -> Result<FieldElem, NumFieldError> {
        let mut g = self.find_generator(a)?;
        let mut units = vec![self.from_int(-1)];
        units.extend(self.sign_units.iter().cloned());
        let vecs: Vec<u64> = units.iter().map(|u| sign_bits(self, u)).collect();
        let mask = f2_solve(&vecs, sign_bits(self, &g)).expect("strict class number one is certified");
        for (i, u) in units.iter().enumerate() {
            if mask >> i & 1 == 1 {
                g = self.mul(&g, u);
            }
        }
        // coordinate descent on T2 by squares of fundamental units
        let sq: Vec<FieldElem> = self.fund_units.iter().map(|u| self.mul(u, u)).collect();
        let sq_inv: Vec<FieldElem> = sq.iter().map(|u| self.inv(u).unwrap()).collect();
        let mut cur = self.t2(&g);
        loop {
            let mut improved = false;
            for u in sq.iter().chain(sq_inv.iter()) {
                let h = self.mul(&g, u);
                let t = self.t2(&h);
                if t < cur {
                    g = h;
                    cur = t;
                    improved = true;
                }
            }
            if !improved {
                return Ok(g);
            }
        }
    }

    /// The generating unit of `a` relative to `g`: returns u with a = u g,
    /// or None if a and g generate different ideals.
    pub fn unit_ratio(&self, a: &FieldElem, g: &FieldElem) -> Option<FieldElem> {
        let u = self.div(a, g).ok()?;
        (u.is_integral() && self.norm(&u).abs().is_one()).then_some(u)
    }

    pub fn sign_units(&self) -> &[FieldElem] {
        &self.sign_units
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f2_linear_algebra() {
        assert_eq!(f2_rank(&[0b01, 0b11, 0b10]), 2);
        let m = f2_solve(&[0b01, 0b11], 0b10).unwrap();
        assert_eq!(m, 0b11);
        assert!(f2_solve(&[0b01], 0b10).is_none());
    }

    #[test]
    fn generators_golden_field() {
        let f = FieldDesc::parse("x^2-x-1").unwrap();
        let a = f.ideal_from_gens(&[f.from_int(11), f.parse_elem("w+3").unwrap()]);
        let g = f.totally_positive_generator(&a).unwrap();
        assert_eq!(f.norm(&g), Q::from_integer(BigInt::from(11)));
        assert!(f.is_totally_positive(&g).unwrap());
        assert_eq!(f.principal_ideal(&g), a);
        // fractional ideal
        let half = f.principal_ideal(&f.parse_elem("(w+3)/2").unwrap());
        let g2 = f.find_generator(&half).unwrap();
        assert_eq!(f.principal_ideal(&g2), half);
    }
}
