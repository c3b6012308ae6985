//! Dense linear algebra over the prime field F_p, p < 256.
//!
//! Vectors are `Vec<u8>` with entries in `0..p`. The workhorse is
//! [`Echelon`], an incrementally built reduced row echelon basis that
//! supports membership tests and canonical coset representatives.

pub fn modinv(a: u8, p: u8) -> u8 {
    // p prime, a != 0
    let mut r = 1u32;
    let mut b = a as u32 % p as u32;
    let mut e = p as u32 - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u32;
        }
        b = b * b % p as u32;
        e >>= 1;
    }
    r as u8
}

pub fn addv(p: u8, a: &mut [u8], b: &[u8], scale: u8) {
    debug_assert_eq!(a.len(), b.len());
    if scale == 0 {
        return;
    }
    if p == 2 {
        for (x, &y) in a.iter_mut().zip(b) {
            *x ^= y & scale;
        }
        return;
    }
    for (x, &y) in a.iter_mut().zip(b) {
        *x = ((*x as u32 + scale as u32 * y as u32) % p as u32) as u8;
    }
}

pub fn negv(p: u8, a: &[u8]) -> Vec<u8> {
    a.iter().map(|&x| if x == 0 { 0 } else { p - x }).collect()
}

/// Reduced row echelon basis over F_p, built one vector at a time.
#[derive(Clone, Debug)]
pub struct Echelon {
    p: u8,
    dim: usize,
    rows: Vec<Vec<u8>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(p: u8, dim: usize) -> Self {
        Echelon { p, dim, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[Vec<u8>] {
        &self.rows
    }

    /// Reduce `v` against the basis in place; afterwards every pivot
    /// coordinate of `v` is zero. The result is the canonical coset
    /// representative of `v` modulo the row span.
    pub fn reduce(&self, v: &mut [u8]) {
        debug_assert_eq!(v.len(), self.dim);
        for (row, &piv) in self.rows.iter().zip(&self.pivots) {
            let c = v[piv];
            if c != 0 {
                addv(self.p, v, row, self.p - c);
            }
        }
    }

    pub fn contains(&self, v: &[u8]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Insert `v` into the basis. Returns false when `v` already lies in
    /// the span. Keeps the basis in reduced form (pivot entries are 1 and
    /// are the only nonzero entries in their column).
    pub fn insert(&mut self, v: &[u8]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        let Some(piv) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = modinv(w[piv], self.p);
        for x in w.iter_mut() {
            *x = (*x as u32 * inv as u32 % self.p as u32) as u8;
        }
        // back-substitute into existing rows
        for row in self.rows.iter_mut() {
            let c = row[piv];
            if c != 0 {
                addv(self.p, row, &w, self.p - c);
            }
        }
        let at = self.pivots.iter().position(|&q| q > piv).unwrap_or(self.rows.len());
        self.rows.insert(at, w);
        self.pivots.insert(at, piv);
        true
    }

    /// Coordinates of `v` in terms of the basis rows, or None when `v` is
    /// outside the span.
    pub fn coordinates(&self, v: &[u8]) -> Option<Vec<u8>> {
        let mut w = v.to_vec();
        let mut coeff = vec![0u8; self.rows.len()];
        for (i, (row, &piv)) in self.rows.iter().zip(&self.pivots).enumerate() {
            let c = w[piv];
            if c != 0 {
                coeff[i] = c;
                addv(self.p, &mut w, row, self.p - c);
            }
        }
        if w.iter().all(|&x| x == 0) {
            Some(coeff)
        } else {
            None
        }
    }
}

/// Solve A x = b over F_p by Gaussian elimination. `a` holds the rows of A.
/// Returns one solution when the system is consistent.
pub fn solve(p: u8, a: &[Vec<u8>], b: &[u8]) -> Option<Vec<u8>> {
    let m = a.len();
    debug_assert_eq!(m, b.len());
    let n = if m == 0 { 0 } else { a[0].len() };
    let mut aug: Vec<Vec<u8>> = a
        .iter()
        .zip(b)
        .map(|(row, &rhs)| {
            let mut r = row.clone();
            r.push(rhs);
            r
        })
        .collect();
    let mut pivot_cols = Vec::new();
    let mut r = 0usize;
    for c in 0..n {
        let Some(sel) = (r..m).find(|&i| aug[i][c] != 0) else { continue };
        aug.swap(r, sel);
        let inv = modinv(aug[r][c], p);
        for x in aug[r].iter_mut() {
            *x = (*x as u32 * inv as u32 % p as u32) as u8;
        }
        for i in 0..m {
            if i != r && aug[i][c] != 0 {
                let f = p - aug[i][c];
                let row = aug[r].clone();
                addv(p, &mut aug[i], &row, f);
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == m {
            break;
        }
    }
    // consistency
    for row in aug.iter().skip(r) {
        if row[n] != 0 && row[..n].iter().all(|&x| x == 0) {
            return None;
        }
    }
    let mut x = vec![0u8; n];
    for (i, &c) in pivot_cols.iter().enumerate() {
        x[c] = aug[i][n];
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn echelon_membership_and_reduction() {
        let mut e = Echelon::new(2, 3);
        assert!(e.insert(&[0, 1, 1]));
        assert!(e.insert(&[1, 0, 1]));
        assert!(!e.insert(&[1, 1, 0]));
        assert_eq!(e.rank(), 2);
        assert!(e.contains(&[1, 1, 0]));
        assert!(!e.contains(&[1, 0, 0]));
        // (1,0,0) and (0,1,0) differ by the in-span vector (1,1,0),
        // so they share a canonical representative
        let mut v = vec![1, 0, 0];
        e.reduce(&mut v);
        let mut v2 = vec![0, 1, 0];
        e.reduce(&mut v2);
        assert_eq!(v, v2);
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        // over F_3: x + 2y = 1, 2x + y = 2  => x=1, y=0
        let a = vec![vec![1, 2], vec![2, 1]];
        let x = solve(3, &a, &[1, 2]).unwrap();
        assert_eq!(x, vec![1, 0]);
        // inconsistent: x + y = 1, x + y = 2
        let a = vec![vec![1, 1], vec![1, 1]];
        assert!(solve(3, &a, &[1, 2]).is_none());
    }

    #[test]
    fn coordinates_roundtrip() {
        let mut e = Echelon::new(5, 4);
        e.insert(&[1, 2, 3, 4]);
        e.insert(&[0, 1, 1, 1]);
        let mut v = vec![0u8; 4];
        // v = 2*r0 + 3*r1 in terms of the *reduced* rows
        for (row, &c) in e.rows().iter().zip(&[2u8, 3u8]) {
            addv(5, &mut v, row, c);
        }
        let got = e.coordinates(&v).unwrap();
        assert_eq!(got, vec![2, 3]);
        assert!(e.coordinates(&[1, 0, 0, 0]).is_none());
    }
}
