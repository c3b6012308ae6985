//! Exact integer matrices: Smith normal form with unimodular transforms,
//! determinants, and integer kernel bases.
//!
//! The public matrix type is i128 (plenty for the word-map data this
//! crate manipulates); the elimination itself runs over arbitrary
//! precision integers, because intermediate entries square at every
//! pivot step and overflow fixed width even for small inputs.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<i128>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i128>]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c);
            data.extend_from_slice(row);
        }
        Mat { rows: r, cols: c, data }
    }
}

impl std::ops::Index<(usize, usize)> for Mat {
    type Output = i128;
    fn index(&self, (i, j): (usize, usize)) -> &i128 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i128 {
        &mut self.data[i * self.cols + j]
    }
}

/// Arbitrary-precision matrix used by the elimination.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigMat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<BigInt>,
}

impl BigMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        BigMat { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = BigMat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_mat(m: &Mat) -> Self {
        BigMat {
            rows: m.rows,
            cols: m.cols,
            data: m.data.iter().map(|&x| BigInt::from(x)).collect(),
        }
    }

    pub fn mul(&self, other: &BigMat) -> BigMat {
        assert_eq!(self.cols, other.rows);
        let mut out = BigMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)].clone();
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = &a * &other[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        out
    }

    pub fn col_i128(&self, j: usize) -> Result<Vec<i128>> {
        (0..self.rows)
            .map(|i| {
                i128::try_from(&self[(i, j)])
                    .map_err(|_| Error::Structure("matrix entry exceeds 128 bits".into()))
            })
            .collect()
    }
}

impl std::ops::Index<(usize, usize)> for BigMat {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for BigMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

/// P * A * Q = D with P, Q unimodular and the diagonal of D a
/// divisibility chain d1 | d2 | ... (nonnegative entries).
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub p: BigMat,
    pub q: BigMat,
    pub d: BigMat,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        (0..self.d.rows.min(self.d.cols)).take_while(|&i| !self.d[(i, i)].is_zero()).count()
    }

    /// Diagonal entries; they always fit i128 for i128 input because
    /// each divides the gcd quotient chain of the input minors.
    pub fn diagonal(&self) -> Vec<i128> {
        (0..self.d.rows.min(self.d.cols))
            .map(|i| i128::try_from(&self.d[(i, i)]).expect("diagonal entry exceeds 128 bits"))
            .collect()
    }

    /// Exhaustive validity check against the original matrix.
    pub fn verify(&self, a: &Mat) -> Result<()> {
        let big_a = BigMat::from_mat(a);
        let paq = self.p.mul(&big_a).mul(&self.q);
        if paq != self.d {
            return Err(Error::Structure("P*A*Q != D".into()));
        }
        for i in 0..self.d.rows {
            for j in 0..self.d.cols {
                if i != j && !self.d[(i, j)].is_zero() {
                    return Err(Error::Structure("D not diagonal".into()));
                }
            }
        }
        let diag: Vec<BigInt> =
            (0..self.d.rows.min(self.d.cols)).map(|i| self.d[(i, i)].clone()).collect();
        for w in diag.windows(2) {
            if w[0].is_negative()
                || (!w[0].is_zero() && (&w[1] % &w[0]) != BigInt::zero())
                || (w[0].is_zero() && !w[1].is_zero())
            {
                return Err(Error::Structure("diagonal not a divisibility chain".into()));
            }
        }
        if det_big(&self.p).abs() != BigInt::one() || det_big(&self.q).abs() != BigInt::one() {
            return Err(Error::Structure("transforms not unimodular".into()));
        }
        Ok(())
    }
}

/// Smith normal form over arbitrary precision integers. Entries are
/// cleared with unimodular extended-gcd rotations, so each clearing pass
/// replaces the pivot by a proper divisor and the whole reduction
/// terminates after logarithmically many passes per pivot.
pub fn smith_normal_form(a: &Mat) -> SmithForm {
    let (m, n) = (a.rows, a.cols);
    let mut d = BigMat::from_mat(a);
    let mut p = BigMat::identity(m);
    let mut q = BigMat::identity(n);

    fn swap_rows(d: &mut BigMat, p: &mut BigMat, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..d.cols {
            d.data.swap(i * d.cols + c, j * d.cols + c);
        }
        for c in 0..p.cols {
            p.data.swap(i * p.cols + c, j * p.cols + c);
        }
    }
    fn swap_cols(d: &mut BigMat, q: &mut BigMat, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..d.rows {
            d.data.swap(r * d.cols + i, r * d.cols + j);
        }
        for r in 0..q.rows {
            q.data.swap(r * q.cols + i, r * q.cols + j);
        }
    }
    // rows (k, i): when the pivot divides the entry this is a plain
    // shear (which cannot disturb anything else); otherwise a unimodular
    // rotation [[s, t], [-b, a]] with s*pivot + t*entry = g, a = pivot/g,
    // b = entry/g, which replaces the pivot by the strictly smaller g
    fn rotate_rows(d: &mut BigMat, p: &mut BigMat, k: usize, i: usize) {
        let pivot = d[(k, k)].clone();
        let entry = d[(i, k)].clone();
        if (&entry % &pivot).is_zero() {
            let f = &entry / &pivot;
            for mat in [&mut *d, &mut *p] {
                for c in 0..mat.cols {
                    let delta = &f * &mat[(k, c)];
                    mat[(i, c)] -= delta;
                }
            }
            return;
        }
        let ext = num_integer::Integer::extended_gcd(&pivot, &entry);
        let (g, s, t) = (ext.gcd, ext.x, ext.y);
        let a = &pivot / &g;
        let b = &entry / &g;
        for mat in [&mut *d, &mut *p] {
            for c in 0..mat.cols {
                let top = &s * &mat[(k, c)] + &t * &mat[(i, c)];
                let bottom = -&b * &mat[(k, c)] + &a * &mat[(i, c)];
                mat[(k, c)] = top;
                mat[(i, c)] = bottom;
            }
        }
    }
    // columns (k, j), same logic acting on the right
    fn rotate_cols(d: &mut BigMat, q: &mut BigMat, k: usize, j: usize) {
        let pivot = d[(k, k)].clone();
        let entry = d[(k, j)].clone();
        if (&entry % &pivot).is_zero() {
            let f = &entry / &pivot;
            for mat in [&mut *d, &mut *q] {
                for r in 0..mat.rows {
                    let delta = &f * &mat[(r, k)];
                    mat[(r, j)] -= delta;
                }
            }
            return;
        }
        let ext = num_integer::Integer::extended_gcd(&pivot, &entry);
        let (g, s, t) = (ext.gcd, ext.x, ext.y);
        let a = &pivot / &g;
        let b = &entry / &g;
        for mat in [&mut *d, &mut *q] {
            for r in 0..mat.rows {
                let left = &s * &mat[(r, k)] + &t * &mat[(r, j)];
                let right = -&b * &mat[(r, k)] + &a * &mat[(r, j)];
                mat[(r, k)] = left;
                mat[(r, j)] = right;
            }
        }
    }
    // row_i -= f * row_j (used by the divisibility fold with f = -1)
    fn row_add(d: &mut BigMat, p: &mut BigMat, i: usize, j: usize) {
        for c in 0..d.cols {
            let delta = d[(j, c)].clone();
            d[(i, c)] += delta;
        }
        for c in 0..p.cols {
            let delta = p[(j, c)].clone();
            p[(i, c)] += delta;
        }
    }

    let mut k = 0usize;
    while k < m.min(n) {
        let mut best: Option<(usize, usize)> = None;
        for i in k..m {
            for j in k..n {
                if d[(i, j)].is_zero() {
                    continue;
                }
                match best {
                    None => best = Some((i, j)),
                    Some((bi, bj)) => {
                        if d[(i, j)].abs() < d[(bi, bj)].abs() {
                            best = Some((i, j));
                        }
                    }
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        swap_rows(&mut d, &mut p, k, bi);
        swap_cols(&mut d, &mut q, k, bj);

        // clear, then enforce divisibility; a fold re-enters the clearing
        // with the same pivot position, and the subsequent rotation
        // replaces the pivot by a proper divisor, so the loop ends after
        // at most log2(pivot) folds
        loop {
            let cleared = (k + 1..m).all(|i| d[(i, k)].is_zero())
                && (k + 1..n).all(|j| d[(k, j)].is_zero());
            if !cleared {
                for i in k + 1..m {
                    if !d[(i, k)].is_zero() {
                        rotate_rows(&mut d, &mut p, k, i);
                    }
                }
                for j in k + 1..n {
                    if !d[(k, j)].is_zero() {
                        rotate_cols(&mut d, &mut q, k, j);
                    }
                }
                continue;
            }
            let mut offending = None;
            'scan: for i in k + 1..m {
                for j in k + 1..n {
                    if (&d[(i, j)] % &d[(k, k)]) != BigInt::zero() {
                        offending = Some(i);
                        break 'scan;
                    }
                }
            }
            match offending {
                Some(i) => row_add(&mut d, &mut p, k, i),
                None => break,
            }
        }
        k += 1;
    }

    // sign normalization: negating row i of D negates row i of P
    for i in 0..m.min(n) {
        if d[(i, i)].is_negative() {
            for j in 0..n {
                let v = -d[(i, j)].clone();
                d[(i, j)] = v;
            }
            for j in 0..p.cols {
                let v = -p[(i, j)].clone();
                p[(i, j)] = v;
            }
        }
    }

    SmithForm { p, q, d }
}

/// Determinant by fraction-free Bareiss elimination over BigInt.
pub fn det_big(a: &BigMat) -> BigInt {
    assert_eq!(a.rows, a.cols);
    let n = a.rows;
    if n == 0 {
        return BigInt::one();
    }
    let mut m = a.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[(k, k)].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !m[(i, k)].is_zero()) else {
                return BigInt::zero();
            };
            for c in 0..n {
                m.data.swap(k * n + c, swap * n + c);
            }
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[(i, j)] * &m[(k, k)] - &m[(i, k)] * &m[(k, j)];
                m[(i, j)] = num / &prev;
            }
            m[(i, k)] = BigInt::zero();
        }
        prev = m[(k, k)].clone();
    }
    sign * m[(n - 1, n - 1)].clone()
}

pub fn det_bareiss(a: &Mat) -> i128 {
    i128::try_from(&det_big(&BigMat::from_mat(a))).expect("determinant exceeds 128 bits")
}

/// Basis of the integer kernel {v : A v = 0}: the trailing columns of Q.
/// The basis spans the full kernel lattice (Q is unimodular).
pub fn kernel_basis(a: &Mat) -> Vec<Vec<i128>> {
    let snf = smith_normal_form(a);
    let rank = snf.rank();
    (rank..a.cols)
        .map(|j| snf.q.col_i128(j).expect("kernel basis entry exceeds 128 bits"))
        .collect()
}
