//! Small dense matrices over F.

use super::{FieldDesc, FieldElem};

pub type FMat = Vec<Vec<FieldElem>>;

impl FieldDesc {
    /// Determinant by Gaussian elimination over F.
    pub fn mat_det(&self, m: &FMat) -> FieldElem {
        let n = m.len();
        let mut a = m.clone();
        let mut det = self.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
                return self.zero();
            };
            if p != c {
                a.swap(p, c);
                det = -&det;
            }
            det = self.mul(&det, &a[c][c]);
            let inv = self.inv(&a[c][c]).unwrap();
            for r in c + 1..n {
                if a[r][c].is_zero() {
                    continue;
                }
                let f = self.mul(&a[r][c], &inv);
                for k in c..n {
                    let t = self.mul(&f, &a[c][k]);
                    a[r][k] = &a[r][k] - &t;
                }
            }
        }
        det
    }

    /// Inverse over F, `None` if singular.
    pub fn mat_inverse(&self, m: &FMat) -> Option<FMat> {
        let n = m.len();
        let mut a: FMat = m
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut row = r.clone();
                row.extend((0..n).map(|j| if i == j { self.one() } else { self.zero() }));
                row
            })
            .collect();
        for c in 0..n {
            let p = (c..n).find(|&r| !a[r][c].is_zero())?;
            a.swap(p, c);
            let inv = self.inv(&a[c][c]).unwrap();
            for k in 0..2 * n {
                a[c][k] = self.mul(&a[c][k], &inv);
            }
            for r in 0..n {
                if r == c || a[r][c].is_zero() {
                    continue;
                }
                let f = a[r][c].clone();
                for k in 0..2 * n {
                    let t = self.mul(&f, &a[c][k]);
                    a[r][k] = &a[r][k] - &t;
                }
            }
        }
        Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
    }

    /// Row vector times matrix.
    pub fn vec_mat(&self, v: &[FieldElem], m: &FMat) -> Vec<FieldElem> {
        let cols = m.first().map_or(0, |r| r.len());
        (0..cols).map(|j| v.iter().zip(m).fold(self.zero(), |acc, (x, row)| &acc + &self.mul(x, &row[j]))).collect()
    }
}
