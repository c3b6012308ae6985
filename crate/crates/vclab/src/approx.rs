//! The polynomial evaluation code R inside C^t, C = F_p^d: values of
//! constant-free polynomials of degree at most r on the nonzero points of
//! F_p^n, one d-tuple per point (so t = p^n - 1). The code simultaneously
//! avoids every coordinate block (each member vanishes somewhere) and
//! surjects onto any k coordinate blocks, and it admits a direct
//! complement spanned by coordinate blocks, with an integer projection
//! matrix that is scalar on each block.

use rand::Rng;

use crate::error::{Error, Result};
use crate::fp::Echelon;

pub const DEFAULT_ENUM_CAP: u64 = 1 << 20;

/// Construction mode: paper parameters pick the minimal r = k(p-1) and
/// n = r*d + 1 that make the two covering properties provable; explicit
/// mode admits anything (for probing failures below those parameters).
#[derive(Clone, Copy, Debug)]
pub enum CodeMode {
    Paper,
    Explicit { r: u32, n: u32 },
}

#[derive(Clone, Debug)]
pub struct PolynomialCode {
    pub p: u8,
    pub d: usize,
    pub k: usize,
    pub r: u32,
    pub n: u32,
    pub t: usize,
    /// whether r >= k(p-1) and n > r*d hold (always in paper mode)
    pub parameters_sufficient: bool,
    /// nonzero points of F_p^n in lexicographic order
    pub points: Vec<Vec<u8>>,
    /// reduced monomial basis: exponent vectors with entries < p,
    /// total degree in 1..=r (reduction x^p = x is degree-decreasing,
    /// so these span the same functions as all formal monomials of
    /// degree <= r without constant term)
    pub monomials: Vec<Vec<u8>>,
    /// generator vectors of R in C^t: one per (monomial, coordinate)
    pub generators: Vec<Vec<u8>>,
    /// reduced echelon basis of the span
    pub basis: Echelon,
}

fn eval_monomial(p: u8, expo: &[u8], point: &[u8]) -> u8 {
    let mut acc = 1u32;
    for (&e, &x) in expo.iter().zip(point) {
        for _ in 0..e {
            acc = acc * x as u32 % p as u32;
        }
    }
    acc as u8
}

impl PolynomialCode {
    pub fn construct(p: u8, d: usize, k: usize, mode: CodeMode, t_cap: usize) -> Result<Self> {
        if !crate::structure::is_prime(p as u64) {
            return Err(Error::Structure(format!("{p} is not prime")));
        }
        if d == 0 || k == 0 {
            return Err(Error::Structure("d and k must be positive".into()));
        }
        let (r, n) = match mode {
            CodeMode::Paper => {
                let r = k as u32 * (p as u32 - 1);
                (r, r * d as u32 + 1)
            }
            CodeMode::Explicit { r, n } => (r, n),
        };
        if r == 0 || n == 0 {
            return Err(Error::Structure("r and n must be positive".into()));
        }
        let t = (p as u64)
            .checked_pow(n)
            .map(|x| x - 1)
            .filter(|&t| t as usize <= t_cap)
            .ok_or_else(|| Error::CapExceeded(format!("t = {p}^{n} - 1 exceeds cap {t_cap}")))?
            as usize;
        let parameters_sufficient = r >= k as u32 * (p as u32 - 1) && n > r * d as u32;

        // nonzero points, lexicographic
        let mut points = Vec::with_capacity(t);
        let mut cur = vec![0u8; n as usize];
        loop {
            // increment
            let mut i = n as usize;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                cur[i] += 1;
                if cur[i] < p {
                    break;
                }
                cur[i] = 0;
                if i == 0 {
                    break;
                }
            }
            if cur.iter().all(|&c| c == 0) {
                break;
            }
            points.push(cur.clone());
        }
        // lexicographic order on the vectors themselves
        points.sort_unstable();
        debug_assert_eq!(points.len(), t);

        // reduced monomials: entries < p, total degree in 1..=r
        let mut monomials = Vec::new();
        let mut expo = vec![0u8; n as usize];
        'enumerate: loop {
            let deg: u32 = expo.iter().map(|&e| e as u32).sum();
            if deg >= 1 && deg <= r {
                monomials.push(expo.clone());
            }
            let mut i = n as usize;
            loop {
                if i == 0 {
                    break 'enumerate;
                }
                i -= 1;
                expo[i] += 1;
                if (expo[i] as u32) < p as u32 {
                    break;
                }
                expo[i] = 0;
            }
        }
        monomials.sort_unstable();

        let dim_ambient = t * d;
        let mut generators = Vec::new();
        let mut basis = Echelon::new(p, dim_ambient);
        for expo in &monomials {
            let values: Vec<u8> = points.iter().map(|pt| eval_monomial(p, expo, pt)).collect();
            for coord in 0..d {
                let mut v = vec![0u8; dim_ambient];
                for (i, &val) in values.iter().enumerate() {
                    v[i * d + coord] = val;
                }
                basis.insert(&v);
                generators.push(v);
            }
        }
        Ok(PolynomialCode {
            p,
            d,
            k,
            r,
            n,
            t,
            parameters_sufficient,
            points,
            monomials,
            generators,
            basis,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.rank()
    }

    /// |R| as p^dim, saturating at u64::MAX.
    pub fn size(&self) -> u64 {
        (self.p as u64).checked_pow(self.dim() as u32).unwrap_or(u64::MAX)
    }

    pub fn contains(&self, v: &[u8]) -> bool {
        self.basis.contains(v)
    }

    /// The i-th member of R under the coefficient enumeration of the
    /// echelon basis (mixed-radix over basis rows).
    fn member(&self, mut code: u64) -> Vec<u8> {
        let mut v = vec![0u8; self.t * self.d];
        for row in self.basis.rows() {
            let c = (code % self.p as u64) as u8;
            code /= self.p as u64;
            crate::fp::addv(self.p, &mut v, row, c);
        }
        v
    }

    fn block_is_zero(&self, v: &[u8], j: usize) -> bool {
        v[j * self.d..(j + 1) * self.d].iter().all(|&x| x == 0)
    }

    /// Zero-coordinate property: every member of R vanishes on some
    /// coordinate block. Exhaustive when |R| fits the cap, otherwise a
    /// labeled random sample.
    pub fn check_zero_coordinate(
        &self,
        enum_cap: u64,
        samples: usize,
        rng: &mut impl Rng,
    ) -> ZeroCoordinateReport {
        let size = self.size();
        let exhaustive = size <= enum_cap;
        let total = if exhaustive { size } else { samples as u64 };
        let mut counterexample = None;
        for i in 0..total {
            let code =
                if exhaustive { i } else { rng.gen_range(0..size.max(1)) };
            let v = self.member(code);
            if !(0..self.t).any(|j| self.block_is_zero(&v, j)) {
                counterexample = Some(v);
                break;
            }
        }
        ZeroCoordinateReport { exhaustive, members_checked: total, counterexample }
    }

    /// Interpolation onto the blocks in `j_set`: find f in R with the
    /// prescribed block values. In sufficient-parameter mode with
    /// |J| <= k a solution always exists.
    pub fn interpolate(&self, j_set: &[usize], targets: &[Vec<u8>]) -> Option<Vec<u8>> {
        assert_eq!(j_set.len(), targets.len());
        // d independent systems sharing the evaluation matrix
        let rows: Vec<Vec<u8>> = j_set
            .iter()
            .map(|&j| {
                self.monomials
                    .iter()
                    .map(|expo| eval_monomial(self.p, expo, &self.points[j]))
                    .collect()
            })
            .collect();
        let mut coeffs: Vec<Vec<u8>> = Vec::with_capacity(self.d);
        for coord in 0..self.d {
            let rhs: Vec<u8> = targets.iter().map(|w| w[coord]).collect();
            coeffs.push(crate::fp::solve(self.p, &rows, &rhs)?);
        }
        // assemble the evaluated vector
        let mut v = vec![0u8; self.t * self.d];
        for (mi, expo) in self.monomials.iter().enumerate() {
            for (i, pt) in self.points.iter().enumerate() {
                let val = eval_monomial(self.p, expo, pt);
                if val == 0 {
                    continue;
                }
                for coord in 0..self.d {
                    let c = coeffs[coord][mi];
                    if c != 0 {
                        v[i * self.d + coord] = ((v[i * self.d + coord] as u32
                            + c as u32 * val as u32)
                            % self.p as u32) as u8;
                    }
                }
            }
        }
        debug_assert!(self.contains(&v));
        for (&j, w) in j_set.iter().zip(targets) {
            debug_assert_eq!(&v[j * self.d..(j + 1) * self.d], w.as_slice());
        }
        Some(v)
    }

    /// Exhaustively verify interpolation over every size-k block set and
    /// every target tuple. Counts the systems solved.
    pub fn check_interpolation_exhaustive(&self) -> Result<InterpolationReport> {
        let combos = combinations(self.t, self.k);
        let target_count = (self.p as u64).pow((self.d * self.k) as u32);
        if combos.len() as u64 * target_count > 5_000_000 {
            return Err(Error::CapExceeded(
                "exhaustive interpolation check too large; use sampling".into(),
            ));
        }
        let mut solved = 0u64;
        let mut failures = 0u64;
        for j_set in &combos {
            for code in 0..target_count {
                let mut c = code;
                let targets: Vec<Vec<u8>> = (0..self.k)
                    .map(|_| {
                        (0..self.d)
                            .map(|_| {
                                let v = (c % self.p as u64) as u8;
                                c /= self.p as u64;
                                v
                            })
                            .collect()
                    })
                    .collect();
                if self.interpolate(j_set, &targets).is_some() {
                    solved += 1;
                } else {
                    failures += 1;
                }
            }
        }
        Ok(InterpolationReport { systems: solved + failures, solved, failures })
    }

    /// Invariance of R under the diagonal action of the elementary
    /// matrices E_{uv} on values (checked on every generator).
    pub fn check_matrix_invariance(&self) -> bool {
        for gen in &self.generators {
            for u in 0..self.d {
                for v in 0..self.d {
                    // E_{uv}: value w ↦ w[v] placed at coordinate u, zeros elsewhere
                    let mut image = vec![0u8; self.t * self.d];
                    for i in 0..self.t {
                        image[i * self.d + u] = gen[i * self.d + v];
                    }
                    if !self.contains(&image) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Grow J' ⊇ J so that the untouched blocks complement R directly:
    /// walk the blocks in ascending order outside J and exclude block j
    /// (into J') exactly when its block is already inside the span of R,
    /// the kept blocks, and the still-undecided blocks. Returns J' with
    /// the complement blocks and the integer projection data.
    pub fn complement_and_projection(&self, j_set: &[usize]) -> Result<ComplementReport> {
        let p = self.p;
        let dim = self.t * self.d;
        let mut in_j = vec![false; self.t];
        for &j in j_set {
            if j >= self.t {
                return Err(Error::Structure(format!("block index {j} out of range")));
            }
            in_j[j] = true;
        }
        let block_vectors = |j: usize| -> Vec<Vec<u8>> {
            (0..self.d)
                .map(|coord| {
                    let mut v = vec![0u8; dim];
                    v[j * self.d + coord] = 1;
                    v
                })
                .collect()
        };
        let mut j_prime: Vec<usize> = j_set.to_vec();
        let mut kept: Vec<usize> = Vec::new();
        for j in 0..self.t {
            if in_j[j] {
                continue;
            }
            // span of R + kept + undecided-later blocks
            let mut ech = self.basis.clone();
            for &kj in &kept {
                for v in block_vectors(kj) {
                    ech.insert(&v);
                }
            }
            for l in j + 1..self.t {
                if !in_j[l] {
                    for v in block_vectors(l) {
                        ech.insert(&v);
                    }
                }
            }
            let redundant = block_vectors(j).iter().all(|v| ech.contains(v));
            if redundant {
                j_prime.push(j);
            } else {
                kept.push(j);
            }
        }
        j_prime.sort_unstable();

        // rank certificate: dim R + d*|kept| must equal t*d
        if self.dim() + self.d * kept.len() != dim {
            return Err(Error::Structure(format!(
                "complement is not direct: dim R = {}, kept blocks = {}",
                self.dim(),
                kept.len()
            )));
        }
        // the projection with kernel R onto the kept blocks: decompose
        // each ambient basis vector e = r + c and keep c
        let mut full = self.basis.clone();
        let mut complement_rows: Vec<Vec<u8>> = Vec::new();
        for &kj in &kept {
            for v in block_vectors(kj) {
                let added = full.insert(&v);
                debug_assert!(added);
                complement_rows.push(v);
            }
        }
        debug_assert_eq!(full.rank(), dim);
        // solve: express e in terms of (R basis rows | complement rows);
        // the projection image is the complement part
        let mut solver_rows: Vec<Vec<u8>> = self.basis.rows().to_vec();
        solver_rows.extend(complement_rows.iter().cloned());
        // transpose for column solving
        let mat: Vec<Vec<u8>> = (0..dim)
            .map(|row| solver_rows.iter().map(|col| col[row]).collect())
            .collect();
        let r_rank = self.dim();
        let mut projection_columns: Vec<Vec<u8>> = Vec::with_capacity(dim);
        for e_idx in 0..dim {
            let mut rhs = vec![0u8; dim];
            rhs[e_idx] = 1;
            let x = crate::fp::solve(p, &mat, &rhs)
                .ok_or_else(|| Error::Structure("projection solve failed".into()))?;
            // image = sum of complement rows weighted by the tail coefficients
            let mut img = vec![0u8; dim];
            for (ci, coeff) in x[r_rank..].iter().enumerate() {
                crate::fp::addv(p, &mut img, &complement_rows[ci], *coeff);
            }
            projection_columns.push(img);
        }

        // idempotence and kernel checks
        let apply = |v: &[u8]| -> Vec<u8> {
            let mut out = vec![0u8; dim];
            for (i, &c) in v.iter().enumerate() {
                if c != 0 {
                    crate::fp::addv(p, &mut out, &projection_columns[i], c);
                }
            }
            out
        };
        for row in self.basis.rows() {
            if apply(row).iter().any(|&x| x != 0) {
                return Err(Error::Structure("projection does not kill R".into()));
            }
        }
        for e_idx in 0..dim {
            let mut e = vec![0u8; dim];
            e[e_idx] = 1;
            let once = apply(&e);
            let twice = apply(&once);
            if once != twice {
                return Err(Error::Structure("projection is not idempotent".into()));
            }
            // e - pi(e) must lie in R
            let mut diff = e;
            crate::fp::addv(p, &mut diff, &crate::fp::negv(p, &once), 1);
            if !self.contains(&diff) {
                return Err(Error::Structure("projection complement misses R".into()));
            }
        }

        // scalar blocks: the map C_i -> C_j must be a scalar multiple of
        // the identity identification
        let kept_pos: Vec<usize> = kept.clone();
        let mut scalars = vec![vec![0u8; kept_pos.len()]; self.t];
        for i in 0..self.t {
            // apply pi to each basis vector of block i and read the blocks
            let mut block_images: Vec<Vec<u8>> = Vec::new();
            for coord in 0..self.d {
                let mut e = vec![0u8; dim];
                e[i * self.d + coord] = 1;
                block_images.push(apply(&e));
            }
            for (jj, &j) in kept_pos.iter().enumerate() {
                // extract the d x d block mapping C_i -> C_j
                let mut scalar: Option<u8> = None;
                for (coord_in, img) in block_images.iter().enumerate() {
                    for coord_out in 0..self.d {
                        let val = img[j * self.d + coord_out];
                        if coord_in == coord_out {
                            match scalar {
                                None => scalar = Some(val),
                                Some(s) if s == val => {}
                                _ => {
                                    return Err(Error::Structure(format!(
                                        "projection block ({i},{j}) is not scalar"
                                    )))
                                }
                            }
                        } else if val != 0 {
                            return Err(Error::Structure(format!(
                                "projection block ({i},{j}) is not scalar"
                            )));
                        }
                    }
                }
                scalars[i][jj] = scalar.unwrap_or(0);
            }
        }
        Ok(ComplementReport {
            j_prime,
            complement_blocks: kept,
            exponents: scalars,
        })
    }
}

#[derive(Clone, Debug)]
pub struct ZeroCoordinateReport {
    pub exhaustive: bool,
    pub members_checked: u64,
    pub counterexample: Option<Vec<u8>>,
}

impl ZeroCoordinateReport {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }
}

#[derive(Clone, Debug)]
pub struct InterpolationReport {
    pub systems: u64,
    pub solved: u64,
    pub failures: u64,
}

#[derive(Clone, Debug)]
pub struct ComplementReport {
    /// the grown exclusion set J' ⊇ J
    pub j_prime: Vec<usize>,
    /// blocks spanning the direct complement (everything outside J')
    pub complement_blocks: Vec<usize>,
    /// integer lifts n_{ij} in 0..p: row per block i, column per
    /// complement block j; the projection acts as c_i ↦ ∏_j c_j^{n_ij}
    pub exponents: Vec<Vec<u8>>,
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn smallest_binary_code_is_even_weight() {
        let code = PolynomialCode::construct(2, 1, 1, CodeMode::Paper, 10_000).unwrap();
        assert_eq!((code.r, code.n, code.t), (1, 2, 3));
        assert_eq!(code.dim(), 2);
        // members: 000, 110, 101, 011
        let members: Vec<Vec<u8>> = (0..4).map(|i| code.member(i)).collect();
        for m in &members {
            assert_eq!(m.iter().filter(|&&x| x != 0).count() % 2, 0);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(code.check_zero_coordinate(DEFAULT_ENUM_CAP, 0, &mut rng).holds());
        assert!(code.check_matrix_invariance());
    }

    #[test]
    fn ternary_code_parameters() {
        let code = PolynomialCode::construct(3, 1, 1, CodeMode::Paper, 10_000).unwrap();
        assert_eq!((code.r, code.n, code.t), (2, 3, 26));
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(code.check_zero_coordinate(DEFAULT_ENUM_CAP, 0, &mut rng).holds());
    }

    #[test]
    fn binary_d2_dimension() {
        let code = PolynomialCode::construct(2, 2, 1, CodeMode::Paper, 10_000).unwrap();
        assert_eq!((code.r, code.n, code.t), (1, 3, 7));
        assert_eq!(code.dim(), 6);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(code.check_zero_coordinate(DEFAULT_ENUM_CAP, 0, &mut rng).holds());
        assert!(code.check_matrix_invariance());
    }

    #[test]
    fn below_paper_parameters_fail_zero_coordinate() {
        // r = 2, n = 2 over F_2: x1 x2 + x1 + x2 vanishes only at the origin
        let code =
            PolynomialCode::construct(2, 1, 1, CodeMode::Explicit { r: 2, n: 2 }, 10_000).unwrap();
        assert!(!code.parameters_sufficient);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let report = code.check_zero_coordinate(DEFAULT_ENUM_CAP, 0, &mut rng);
        assert!(!report.holds());
        let witness = report.counterexample.unwrap();
        assert!(witness.iter().all(|&x| x != 0));
    }

    #[test]
    fn interpolation_single_point() {
        let code = PolynomialCode::construct(2, 1, 1, CodeMode::Paper, 10_000).unwrap();
        // a linear form with value 1 at block 0 exists
        let f = code.interpolate(&[0], &[vec![1]]).unwrap();
        assert_eq!(f[0], 1);
        // all-zero targets are met by the zero polynomial
        let f = code.interpolate(&[0], &[vec![0]]).unwrap();
        assert!(code.contains(&f));
        let r = code.check_interpolation_exhaustive().unwrap();
        assert_eq!(r.failures, 0);
        assert_eq!(r.systems, 6); // 3 blocks x 2 targets
    }

    #[test]
    fn ternary_interpolation_exhaustive() {
        let code = PolynomialCode::construct(3, 1, 1, CodeMode::Paper, 10_000).unwrap();
        let r = code.check_interpolation_exhaustive().unwrap();
        assert_eq!(r.failures, 0);
        assert_eq!(r.systems, 26 * 3);
    }

    #[test]
    fn complement_reproduces_fixture() {
        let code = PolynomialCode::construct(2, 1, 1, CodeMode::Paper, 10_000).unwrap();
        let rep = code.complement_and_projection(&[0]).unwrap();
        // blocks are 0-based here: J' = {0,1}, complement = {2}
        assert_eq!(rep.j_prime, vec![0, 1]);
        assert_eq!(rep.complement_blocks, vec![2]);
        // every generator maps through with exponent 1
        assert_eq!(rep.exponents, vec![vec![1], vec![1], vec![1]]);
    }

    #[test]
    fn complement_dimension_count() {
        let code = PolynomialCode::construct(3, 1, 1, CodeMode::Paper, 10_000).unwrap();
        let rep = code.complement_and_projection(&[0]).unwrap();
        assert_eq!(code.dim() + rep.complement_blocks.len(), code.t);
        assert!(rep.j_prime.contains(&0));

        let code = PolynomialCode::construct(2, 2, 1, CodeMode::Paper, 10_000).unwrap();
        let rep = code.complement_and_projection(&[0]).unwrap();
        assert_eq!(code.dim() + 2 * rep.complement_blocks.len(), 2 * code.t);
    }
}
