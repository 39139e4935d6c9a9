//! Dense matrices over arbitrary-precision rationals.
//!
//! Everything downstream (arrow maps, socle filtrations, quiver Grassmannian
//! submodules) is exact, so this module provides plain rational row reduction
//! and the handful of subspace operations the rest of the crate needs.
//! Subspaces are represented by their reduced row echelon basis, which doubles
//! as a canonical form: two row spaces are equal iff their `row_basis`
//! matrices are equal.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qq(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Row-major dense rational matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct QMat {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl std::fmt::Debug for QMat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "QMat {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self[(r, c)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl std::ops::Index<(usize, usize)> for QMat {
    type Output = Q;
    fn index(&self, (r, c): (usize, usize)) -> &Q {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMat {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Q {
        &mut self.data[r * self.cols + c]
    }
}

impl QMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMat { rows, cols, data: vec![Q::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Q::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Q>>, cols: usize) -> Self {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged row");
            data.extend(r);
        }
        QMat { rows: nrows, cols, data }
    }

    pub fn from_int_rows(rows: &[Vec<i64>], cols: usize) -> Self {
        Self::from_rows(
            rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect(),
            cols,
        )
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[Q] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn rows_vec(&self) -> Vec<Vec<Q>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> QMat {
        let mut t = QMat::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &QMat) -> QMat {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        let mut out = QMat::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = &other[(k, c)];
                    if !b.is_zero() {
                        let prod = a * b;
                        out[(r, c)] += prod;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &QMat) -> QMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a += b;
        }
        out
    }

    pub fn scale(&self, s: &Q) -> QMat {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a *= s;
        }
        out
    }

    /// Stack `self` on top of `other`.
    pub fn vstack(&self, other: &QMat) -> QMat {
        assert_eq!(self.cols, other.cols, "dimension mismatch in vstack");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        QMat { rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut lead = 0usize;
        for col in 0..self.cols {
            // find a pivot in this column at or below `lead`
            let mut pr = None;
            for r in lead..self.rows {
                if !self[(r, col)].is_zero() {
                    pr = Some(r);
                    break;
                }
            }
            let Some(pr) = pr else { continue };
            self.swap_rows(lead, pr);
            let inv = self[(lead, col)].recip();
            for c in col..self.cols {
                let v = &self[(lead, c)] * &inv;
                self[(lead, c)] = v;
            }
            for r in 0..self.rows {
                if r != lead && !self[(r, col)].is_zero() {
                    let factor = self[(r, col)].clone();
                    for c in col..self.cols {
                        let delta = &factor * &self[(lead, c)];
                        let v = &self[(r, c)] - delta;
                        self[(r, c)] = v;
                    }
                }
            }
            pivots.push(col);
            lead += 1;
            if lead == self.rows {
                break;
            }
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref_in_place().len()
    }

    /// Canonical basis of the row space: rref with zero rows dropped.
    pub fn row_basis(&self) -> QMat {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let k = pivots.len();
        let data = m.data[..k * m.cols].to_vec();
        QMat { rows: k, cols: m.cols, data }
    }

    /// Basis (as rows) of `{ v : self · vᵀ = 0 }`.
    pub fn kernel(&self) -> QMat {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivot_set.contains(c)).collect();
        let mut rows = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = vec![Q::zero(); self.cols];
            v[f] = Q::one();
            for (t, &p) in pivots.iter().enumerate() {
                v[p] = -m[(t, f)].clone();
            }
            rows.push(v);
        }
        QMat::from_rows(rows, self.cols)
    }

    /// Left kernel: basis (as rows) of `{ w : w · self = 0 }`.
    pub fn left_kernel(&self) -> QMat {
        self.transpose().kernel()
    }

    /// Common denominator-free display helper used by JSON dumps.
    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(|x| x.to_string()).collect())
            .collect()
    }
}

/// Parse a rational from "p/q" or "p".
pub fn parse_q(s: &str) -> Result<Q, String> {
    let s = s.trim();
    let mk = |t: &str| -> Result<BigInt, String> {
        t.trim().parse::<BigInt>().map_err(|e| format!("bad integer {t:?}: {e}"))
    };
    match s.split_once('/') {
        Some((p, d)) => {
            let den = mk(d)?;
            if den.is_zero() {
                return Err(format!("zero denominator in {s:?}"));
            }
            Ok(Q::new(mk(p)?, den))
        }
        None => Ok(Q::from_integer(mk(s)?)),
    }
}

// ---------------------------------------------------------------------------
// Subspace operations. A subspace of Q^d is a QMat whose rows span it; the
// canonical representative is `row_basis()`.
// ---------------------------------------------------------------------------

/// Does the row space of `space` contain the vector `v`?
pub fn space_contains(space: &QMat, v: &[Q]) -> bool {
    let m = space.row_basis();
    let mut res = v.to_vec();
    let pivots = pivot_cols(&m);
    for (t, &p) in pivots.iter().enumerate() {
        if !res[p].is_zero() {
            let f = res[p].clone();
            for c in 0..m.ncols() {
                let delta = &f * &m[(t, c)];
                res[c] = &res[c] - delta;
            }
        }
    }
    res.iter().all(|x| x.is_zero())
}

fn pivot_cols(rref: &QMat) -> Vec<usize> {
    let mut pivots = Vec::new();
    for r in 0..rref.nrows() {
        if let Some(c) = (0..rref.ncols()).find(|&c| !rref[(r, c)].is_zero()) {
            pivots.push(c);
        }
    }
    pivots
}

/// Is row space `b` contained in row space `a`?
pub fn space_subset(b: &QMat, a: &QMat) -> bool {
    let ra = a.row_basis();
    if b.nrows() == 0 {
        return true;
    }
    ra.vstack(b).rank() == ra.nrows()
}

pub fn space_eq(a: &QMat, b: &QMat) -> bool {
    a.row_basis() == b.row_basis()
}

pub fn space_sum(a: &QMat, b: &QMat) -> QMat {
    a.vstack(b).row_basis()
}

/// Intersection of two row spaces.
pub fn space_intersect(a: &QMat, b: &QMat) -> QMat {
    let a = a.row_basis();
    let b = b.row_basis();
    if a.nrows() == 0 || b.nrows() == 0 {
        return QMat::zeros(0, a.ncols());
    }
    // w = (u, v) with uA = vB  <=>  w · [A; -B] = 0
    let stacked = a.vstack(&b.scale(&-Q::one()));
    let w = stacked.left_kernel();
    let mut rows = Vec::new();
    for r in 0..w.nrows() {
        let mut v = vec![Q::zero(); a.ncols()];
        for k in 0..a.nrows() {
            let c = &w[(r, k)];
            if !c.is_zero() {
                for j in 0..a.ncols() {
                    let delta = c * &a[(k, j)];
                    v[j] = &v[j] + delta;
                }
            }
        }
        rows.push(v);
    }
    QMat::from_rows(rows, a.ncols()).row_basis()
}

/// Image of a row space under the linear map with matrix `f`
/// (`f` acts on column vectors, so rows map by `v ↦ v fᵀ`).
pub fn space_image(space: &QMat, f: &QMat) -> QMat {
    space.mul(&f.transpose()).row_basis()
}

/// Preimage `{ v : f(v) ∈ rowspace(target) }` of a row space under `f`.
pub fn space_preimage(target: &QMat, f: &QMat) -> QMat {
    let b = target.row_basis();
    let e = f.nrows();
    // residual operator R with y·R = y reduced against the rref basis b
    let mut r_op = QMat::identity(e);
    let pivots = pivot_cols(&b);
    for (t, &p) in pivots.iter().enumerate() {
        for j in 0..e {
            let delta = b[(t, j)].clone();
            let v = &r_op[(p, j)] - delta;
            r_op[(p, j)] = v;
        }
    }
    // v ∈ preimage  <=>  (v fᵀ) R = 0  <=>  v · (fᵀ R) = 0
    f.transpose().mul(&r_op).left_kernel().row_basis()
}

/// dim(U ∩ W) computed from ranks, avoiding an explicit intersection basis.
pub fn dim_intersection(a: &QMat, b: &QMat) -> usize {
    let ra = a.rank();
    let rb = b.rank();
    let rs = a.vstack(b).rank();
    ra + rb - rs
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_and_rank() {
        let m = QMat::from_int_rows(&[vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]], 3);
        assert_eq!(m.rank(), 2);
        let b = m.row_basis();
        assert_eq!(b.nrows(), 2);
        assert_eq!(b[(0, 0)], q(1));
        assert_eq!(b[(0, 1)], q(0));
        assert_eq!(b[(0, 2)], q(1));
    }

    #[test]
    fn kernel_is_annihilated() {
        let m = QMat::from_int_rows(&[vec![1, 2, 3], vec![0, 1, 1]], 3);
        let k = m.kernel();
        assert_eq!(k.nrows(), 1);
        let prod = m.mul(&k.transpose());
        assert!(prod.is_zero());
    }

    #[test]
    fn intersect_sum_dims() {
        let a = QMat::from_int_rows(&[vec![1, 0, 0], vec![0, 1, 0]], 3);
        let b = QMat::from_int_rows(&[vec![0, 1, 0], vec![0, 0, 1]], 3);
        let i = space_intersect(&a, &b);
        assert_eq!(i.nrows(), 1);
        assert!(space_contains(&i, &[q(0), q(1), q(0)]));
        assert_eq!(space_sum(&a, &b).nrows(), 3);
        assert_eq!(dim_intersection(&a, &b), 1);
    }

    #[test]
    fn preimage_shift() {
        // f = downward shift on Q^3: e3 -> e2 -> e1 -> 0 (columns act)
        let f = QMat::from_int_rows(&[vec![0, 1, 0], vec![0, 0, 1], vec![0, 0, 0]], 3);
        let target = QMat::from_int_rows(&[vec![1, 0, 0]], 3);
        let pre = space_preimage(&target, &f);
        // v with f(v) ∈ <e1>: v = (a, b, 0) arbitrary a,b
        assert_eq!(pre.nrows(), 2);
        assert!(space_contains(&pre, &[q(1), q(0), q(0)]));
        assert!(space_contains(&pre, &[q(0), q(1), q(0)]));
        assert!(!space_contains(&pre, &[q(0), q(0), q(1)]));
    }

    #[test]
    fn parse_rationals() {
        assert_eq!(parse_q("3/4").unwrap(), qq(3, 4));
        assert_eq!(parse_q("-7").unwrap(), q(-7));
        assert!(parse_q("1/0").is_err());
    }
}
