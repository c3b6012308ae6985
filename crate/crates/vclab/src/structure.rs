//! Structure predicates: nonabelian-monolith certification, the
//! self-centralizing-core criteria, exhaustive G-module homogeneity
//! reports, and the centre-direct-factor probe with its equivariant
//! homomorphism search.

use std::collections::{BTreeSet, HashMap};

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::group::retract::all_homomorphisms_into;
use crate::group::{centralizer, monolith, normal_subgroups, quotient, GroupRef, Subgroup};

/// True iff the monolith is nontrivial and nonabelian. A true verdict
/// certifies the strong-retract property for the group.
pub fn has_nonabelian_monolith(h: &GroupRef, cap: usize) -> Result<bool> {
    let m = monolith(h, cap)?;
    Ok(!m.is_trivial() && !m.is_abelian())
}

/// The three hypotheses on a normal subgroup C of H whose conjunction
/// certifies the strong-retract property: C self-centralizing, C without
/// a nontrivial internal direct decomposition into H-normal subgroups,
/// and |C| coprime to |H/C|.
#[derive(Clone, Debug)]
pub struct CoreCriteria {
    pub self_centralizing: bool,
    pub indecomposable: bool,
    pub decomposition_witness: Option<(Vec<u32>, Vec<u32>)>,
    pub coprime: bool,
    /// the decomposition reading used: internal direct products of *two*
    /// H-normal factors (n-fold splittings reduce to pairs)
    pub note: &'static str,
}

impl CoreCriteria {
    pub fn all_hold(&self) -> bool {
        self.self_centralizing && self.indecomposable && self.coprime
    }
}

pub fn core_criteria(h: &GroupRef, c: &Subgroup, cap: usize) -> Result<CoreCriteria> {
    if !c.is_normal() {
        return Err(Error::Subgroup("core criteria need a normal subgroup".into()));
    }
    let self_centralizing = centralizer(h, c).members() == c.members();
    let normals = normal_subgroups(h, cap)?;
    let inside: Vec<&Subgroup> = normals
        .iter()
        .filter(|n| !n.is_trivial() && n.order() < c.order() && n.is_subset_of(c))
        .collect();
    let mut witness = None;
    'outer: for (i, n1) in inside.iter().enumerate() {
        for n2 in &inside[i + 1..] {
            if n1.order() * n2.order() == c.order() && n1.intersect(n2).is_trivial() {
                witness = Some((n1.members().to_vec(), n2.members().to_vec()));
                break 'outer;
            }
        }
    }
    let coprime =
        num_integer::gcd(c.order(), h.order() / c.order()) == 1;
    Ok(CoreCriteria {
        self_centralizing,
        indecomposable: witness.is_none(),
        decomposition_witness: witness,
        coprime,
        note: "decompositions read as internal direct products of two H-normal subgroups",
    })
}

/// A finite abelian p-group with a coprime-order action: the abelian
/// group is ⊕ Z_{orders[i]} (each a power of p) and every acting
/// generator is an integer matrix sending coordinates to coordinates.
#[derive(Clone, Debug, Deserialize)]
pub struct GModule {
    pub p: u64,
    pub cyclic_orders: Vec<u64>,
    pub acting_order: u64,
    /// row-major matrices, one per generator of the acting group
    pub action: Vec<Vec<Vec<i64>>>,
}

pub const DEFAULT_MODULE_CAP: usize = 6561;

/// Validated, enumerable form of a [`GModule`].
pub struct ModuleSpace {
    p: u64,
    orders: Vec<u64>,
    size: usize,
    /// permutation tables of the module induced by each acting generator
    gen_perms: Vec<Vec<u32>>,
}

impl ModuleSpace {
    pub fn new(m: &GModule, cap: usize) -> Result<ModuleSpace> {
        if !is_prime(m.p) {
            return Err(Error::Structure(format!("{} is not prime", m.p)));
        }
        for &q in &m.cyclic_orders {
            let mut x = q;
            while x % m.p == 0 {
                x /= m.p;
            }
            if x != 1 || q == 1 {
                return Err(Error::Structure(format!(
                    "cyclic order {q} is not a positive power of {}",
                    m.p
                )));
            }
        }
        let size = m.cyclic_orders.iter().try_fold(1usize, |acc, &q| {
            acc.checked_mul(q as usize).filter(|&s| s <= cap)
        });
        let Some(size) = size else {
            return Err(Error::CapExceeded(format!("module larger than cap {cap}")));
        };
        let orders = m.cyclic_orders.clone();
        let rank = orders.len();
        let decode = |mut x: usize| -> Vec<u64> {
            let mut v = vec![0u64; rank];
            for i in (0..rank).rev() {
                v[i] = (x % orders[i] as usize) as u64;
                x /= orders[i] as usize;
            }
            v
        };
        let encode = |v: &[u64]| -> usize {
            v.iter().zip(&orders).fold(0usize, |acc, (&c, &q)| acc * q as usize + c as usize)
        };
        let mut gen_perms = Vec::new();
        for (gi, mat) in m.action.iter().enumerate() {
            if mat.len() != rank || mat.iter().any(|r| r.len() != rank) {
                return Err(Error::Structure(format!("action matrix {gi} has wrong shape")));
            }
            // additivity needs mat[i][j] * orders[j] ≡ 0 (mod orders[i])
            for i in 0..rank {
                for j in 0..rank {
                    let prod =
                        (mat[i][j] as i128 * orders[j] as i128).rem_euclid(orders[i] as i128);
                    if prod != 0 {
                        return Err(Error::Structure(format!(
                            "action matrix {gi} does not respect coordinate orders"
                        )));
                    }
                }
            }
            let mut perm = vec![0u32; size];
            let mut seen = vec![false; size];
            for x in 0..size {
                let v = decode(x);
                let mut w = vec![0u64; rank];
                for i in 0..rank {
                    let mut acc: i128 = 0;
                    for j in 0..rank {
                        acc += mat[i][j] as i128 * v[j] as i128;
                    }
                    w[i] = acc.rem_euclid(orders[i] as i128) as u64;
                }
                let y = encode(&w);
                perm[x] = y as u32;
                if seen[y] {
                    return Err(Error::Structure(format!(
                        "action matrix {gi} is not injective on the module"
                    )));
                }
                seen[y] = true;
            }
            gen_perms.push(perm);
        }
        // close the acting permutations into a group
        let identity: Vec<u32> = (0..size as u32).collect();
        let mut acting: Vec<Vec<u32>> = vec![identity.clone()];
        let mut index: HashMap<Vec<u32>, usize> = HashMap::new();
        index.insert(identity, 0);
        let mut head = 0;
        while head < acting.len() {
            let cur = acting[head].clone();
            head += 1;
            for gp in &gen_perms {
                let next: Vec<u32> = cur.iter().map(|&x| gp[x as usize]).collect();
                if !index.contains_key(&next) {
                    if acting.len() > 10_000 {
                        return Err(Error::CapExceeded("acting group too large".into()));
                    }
                    index.insert(next.clone(), acting.len());
                    acting.push(next);
                }
            }
        }
        if acting.len() as u64 != m.acting_order {
            return Err(Error::Structure(format!(
                "acting group has order {}, declared {}",
                acting.len(),
                m.acting_order
            )));
        }
        if num_integer::gcd(acting.len() as u64, m.p) != 1 {
            return Err(Error::Structure("acting order not coprime to p".into()));
        }
        Ok(ModuleSpace { p: m.p, orders, size, gen_perms })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    fn rank(&self) -> usize {
        self.orders.len()
    }

    fn decode(&self, mut x: usize) -> Vec<u64> {
        let mut v = vec![0u64; self.rank()];
        for i in (0..self.rank()).rev() {
            v[i] = (x % self.orders[i] as usize) as u64;
            x /= self.orders[i] as usize;
        }
        v
    }

    fn encode(&self, v: &[u64]) -> usize {
        v.iter()
            .zip(&self.orders)
            .fold(0usize, |acc, (&c, &q)| acc * q as usize + c as usize)
    }

    fn add(&self, x: usize, y: usize) -> usize {
        let (a, b) = (self.decode(x), self.decode(y));
        let sum: Vec<u64> =
            a.iter().zip(&b).zip(&self.orders).map(|((&u, &v), &q)| (u + v) % q).collect();
        self.encode(&sum)
    }

    fn scale(&self, x: usize, k: u64) -> usize {
        let a = self.decode(x);
        let scaled: Vec<u64> =
            a.iter().zip(&self.orders).map(|(&u, &q)| (u as u128 * k as u128 % q as u128) as u64).collect();
        self.encode(&scaled)
    }

    fn element_order_exp(&self, x: usize) -> u32 {
        // p-adic order: smallest e with p^e * x = 0
        let mut e = 0u32;
        let mut cur = x;
        while cur != 0 {
            cur = self.scale(cur, self.p);
            e += 1;
        }
        e
    }

    /// exponent of a subset as p^e
    fn exponent_exp(&self, members: &[usize]) -> u32 {
        members.iter().map(|&x| self.element_order_exp(x)).max().unwrap_or(0)
    }

    /// submodule generated by a set: closure under addition and action
    fn submodule_closure(&self, seed: &[usize]) -> Vec<usize> {
        let mut mask = vec![false; self.size];
        mask[0] = true;
        let mut members = vec![0usize];
        let mut queue: Vec<usize> = Vec::new();
        for &s in seed {
            if !mask[s] {
                mask[s] = true;
                members.push(s);
                queue.push(s);
            }
        }
        while let Some(x) = queue.pop() {
            let snapshot = members.clone();
            for &m in &snapshot {
                let s = self.add(x, m);
                if !mask[s] {
                    mask[s] = true;
                    members.push(s);
                    queue.push(s);
                }
            }
            for gp in &self.gen_perms {
                let y = gp[x] as usize;
                if !mask[y] {
                    mask[y] = true;
                    members.push(y);
                    queue.push(y);
                }
            }
        }
        members.sort_unstable();
        members
    }

    /// all submodules (subgroups closed under the action)
    pub fn all_submodules(&self, count_cap: usize) -> Result<Vec<Vec<usize>>> {
        let trivial = vec![0usize];
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
        found.insert(trivial.clone());
        let mut queue = vec![trivial];
        while let Some(s) = queue.pop() {
            let mask: Vec<bool> = {
                let mut m = vec![false; self.size];
                for &x in &s {
                    m[x] = true;
                }
                m
            };
            for x in 0..self.size {
                if mask[x] {
                    continue;
                }
                let mut seed = s.clone();
                seed.push(x);
                let bigger = self.submodule_closure(&seed);
                if !found.contains(&bigger) {
                    if found.len() >= count_cap {
                        return Err(Error::CapExceeded(format!(
                            "more than {count_cap} submodules"
                        )));
                    }
                    found.insert(bigger.clone());
                    queue.push(bigger);
                }
            }
        }
        Ok(found.into_iter().collect())
    }

    /// the layer p^i M / p^{i+1} M as an F_p space with induced action:
    /// returns (dimension, action matrices over F_p)
    fn layer(&self, i: u32) -> (usize, Vec<Vec<Vec<u8>>>) {
        let p = self.p;
        let pi = p.pow(i);
        // surviving coordinates: orders[j] > p^i (i.e. p^i e_j != 0), and
        // the layer kills p^{i+1}: basis = images of p^i e_j with
        // orders[j] >= p^{i+1}
        let survivors: Vec<usize> = (0..self.rank())
            .filter(|&j| self.orders[j] as u128 >= p as u128 * pi as u128)
            .collect();
        let dim = survivors.len();
        let mut mats = Vec::new();
        for gp in &self.gen_perms {
            // column j: action on p^i e_{survivors[j]}, coordinates mod p
            let mut mat = vec![vec![0u8; dim]; dim];
            for (jj, &j) in survivors.iter().enumerate() {
                let mut basis = vec![0u64; self.rank()];
                basis[j] = pi % self.orders[j];
                let x = self.encode(&basis);
                let y = gp[x] as usize;
                let w = self.decode(y);
                for (ii, &i2) in survivors.iter().enumerate() {
                    // w[i2] is a multiple of p^i; its layer coordinate is
                    // (w[i2] / p^i) mod p
                    debug_assert_eq!(w[i2] % pi, 0);
                    mat[ii][jj] = ((w[i2] / pi) % p) as u8;
                }
            }
            mats.push(mat);
        }
        (dim, mats)
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Status of one implication in the homogeneity report.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ImplicationStatus {
    Verified,
    Vacuous,
    Violated,
}

impl ImplicationStatus {
    pub fn label(&self) -> &'static str {
        match self {
            ImplicationStatus::Verified => "verified",
            ImplicationStatus::Vacuous => "vacuous",
            ImplicationStatus::Violated => "VIOLATED",
        }
    }
}

/// Report of the exhaustive module checks: if every proper submodule has
/// smaller exponent then the module is homogeneous, its layers are
/// isomorphic simple modules, and generators trivial on the bottom layer
/// are trivial everywhere; and if the module is directly indecomposable
/// then every proper submodule has smaller exponent. A `Violated` entry
/// signals an implementation bug, never a mathematical possibility.
#[derive(Clone, Debug)]
pub struct ModuleReport {
    pub submodule_count: usize,
    pub premise_small_proper_submodules: bool,
    pub homogeneous: ImplicationStatus,
    pub layers_simple_isomorphic: ImplicationStatus,
    pub bottom_layer_faithfulness: ImplicationStatus,
    pub indecomposable: bool,
    pub indecomposable_implies_premise: ImplicationStatus,
}

impl ModuleReport {
    pub fn any_violated(&self) -> bool {
        [self.homogeneous, self.layers_simple_isomorphic, self.bottom_layer_faithfulness,
         self.indecomposable_implies_premise]
            .iter()
            .any(|s| *s == ImplicationStatus::Violated)
    }
}

pub fn check_module(m: &GModule, cap: usize, count_cap: usize) -> Result<ModuleReport> {
    let space = ModuleSpace::new(m, cap)?;
    let submodules = space.all_submodules(count_cap)?;
    let all: Vec<usize> = (0..space.size).collect();
    let full_exp = space.exponent_exp(&all);
    let k = full_exp;

    let premise = submodules
        .iter()
        .filter(|s| s.len() < space.size)
        .all(|s| space.exponent_exp(s) < full_exp);

    // homogeneity: all declared cyclic orders equal
    let homogeneous_fact = space.orders.iter().all(|&q| q == space.orders[0]);
    let homogeneous = implication(premise, homogeneous_fact);

    // layers
    let layers_ok = if premise {
        let mut ok = true;
        let layers: Vec<(usize, Vec<Vec<Vec<u8>>>)> = (0..k).map(|i| space.layer(i)).collect();
        for (dim, mats) in &layers {
            if *dim > 3 {
                return Err(Error::CapExceeded(
                    "layer dimension above 3; exhaustive isomorphism search is capped".into(),
                ));
            }
            if !layer_simple(space.p as u8, *dim, mats) {
                ok = false;
            }
        }
        for w in layers.windows(2) {
            let (d0, m0) = &w[0];
            let (d1, m1) = &w[1];
            if d0 != d1 || !equivariant_bijection_exists(space.p as u8, *d0, m0, m1) {
                ok = false;
            }
        }
        ok
    } else {
        true
    };
    let layers_simple_isomorphic = implication(premise, layers_ok);

    // bottom layer faithfulness: generators trivial on the socle layer
    // p^{k-1}M are trivial on M
    let bottom_ok = if premise && k > 0 {
        let (dim, mats) = space.layer(k - 1);
        let mut ok = true;
        for (gi, mat) in mats.iter().enumerate() {
            let trivial_on_layer = (0..dim).all(|j| {
                (0..dim).all(|i| mat[i][j] == if i == j { 1 } else { 0 })
            });
            if trivial_on_layer {
                let trivial_on_module =
                    (0..space.size).all(|x| space.gen_perms[gi][x] as usize == x);
                if !trivial_on_module {
                    ok = false;
                }
            }
        }
        ok
    } else {
        true
    };
    let bottom_layer_faithfulness = implication(premise, bottom_ok);

    // direct indecomposability via submodule pairs (equivalently: no
    // equivariant idempotent endomorphism besides 0 and the identity)
    let mut decomposable = false;
    for (i, s1) in submodules.iter().enumerate() {
        if s1.len() == 1 || s1.len() == space.size {
            continue;
        }
        for s2 in &submodules[i + 1..] {
            if s2.len() == 1 || s2.len() == space.size {
                continue;
            }
            if s1.len() * s2.len() == space.size
                && intersect_sorted(s1, s2).len() == 1
            {
                decomposable = true;
                break;
            }
        }
        if decomposable {
            break;
        }
    }
    let indecomposable = !decomposable;
    let indecomposable_implies_premise = implication(indecomposable, premise);

    Ok(ModuleReport {
        submodule_count: submodules.len(),
        premise_small_proper_submodules: premise,
        homogeneous,
        layers_simple_isomorphic,
        bottom_layer_faithfulness,
        indecomposable,
        indecomposable_implies_premise,
    })
}

fn implication(premise: bool, conclusion: bool) -> ImplicationStatus {
    if !premise {
        ImplicationStatus::Vacuous
    } else if conclusion {
        ImplicationStatus::Verified
    } else {
        ImplicationStatus::Violated
    }
}

fn intersect_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().copied().filter(|x| b.binary_search(x).is_ok()).collect()
}

fn apply_mat(p: u8, mat: &[Vec<u8>], v: &[u8]) -> Vec<u8> {
    let dim = v.len();
    (0..dim)
        .map(|i| {
            (0..dim).fold(0u32, |acc, j| (acc + mat[i][j] as u32 * v[j] as u32) % p as u32) as u8
        })
        .collect()
}

/// No proper nonzero invariant subspace: the action-closure of every
/// nonzero vector spans everything.
fn layer_simple(p: u8, dim: usize, mats: &[Vec<Vec<u8>>]) -> bool {
    if dim == 0 {
        return true; // nothing to check on a zero layer
    }
    let total = (p as usize).pow(dim as u32);
    for code in 1..total {
        let v = decode_vec(p, dim, code);
        let mut ech = crate::fp::Echelon::new(p, dim);
        let mut queue = vec![v.clone()];
        ech.insert(&v);
        while let Some(x) = queue.pop() {
            for m in mats {
                let y = apply_mat(p, m, &x);
                if ech.insert(&y) {
                    queue.push(y);
                }
            }
        }
        if ech.rank() < dim {
            return false;
        }
    }
    true
}

fn decode_vec(p: u8, dim: usize, mut code: usize) -> Vec<u8> {
    let mut v = vec![0u8; dim];
    for i in (0..dim).rev() {
        v[i] = (code % p as usize) as u8;
        code /= p as usize;
    }
    v
}

/// Exhaustive search for an invertible T with T A_g = B_g T for all g.
fn equivariant_bijection_exists(
    p: u8,
    dim: usize,
    a_mats: &[Vec<Vec<u8>>],
    b_mats: &[Vec<Vec<u8>>],
) -> bool {
    if dim == 0 {
        return true;
    }
    let total = (p as usize).pow((dim * dim) as u32);
    'outer: for code in 0..total {
        let mut t = vec![vec![0u8; dim]; dim];
        let mut c = code;
        for i in 0..dim {
            for j in 0..dim {
                t[i][j] = (c % p as usize) as u8;
                c /= p as usize;
            }
        }
        if !invertible(p, &t) {
            continue;
        }
        for (a, b) in a_mats.iter().zip(b_mats) {
            if mat_mul(p, &t, a) != mat_mul(p, b, &t) {
                continue 'outer;
            }
        }
        return true;
    }
    false
}

fn mat_mul(p: u8, a: &[Vec<u8>], b: &[Vec<u8>]) -> Vec<Vec<u8>> {
    let n = a.len();
    let mut out = vec![vec![0u8; n]; n];
    for i in 0..n {
        for j in 0..n {
            out[i][j] = (0..n)
                .fold(0u32, |acc, k| (acc + a[i][k] as u32 * b[k][j] as u32) % p as u32)
                as u8;
        }
    }
    out
}

fn invertible(p: u8, t: &[Vec<u8>]) -> bool {
    let mut ech = crate::fp::Echelon::new(p, t.len());
    t.iter().all(|row| ech.insert(row))
}

/// Result of the centre-direct-factor probe on (H, N).
#[derive(Clone, Debug)]
pub struct CentreFactorReport {
    /// |L| where L is the centralizer of the centre of N
    pub l_order: usize,
    pub z_l_order: usize,
    /// normal complement D with L = Z(L) × D, when one exists
    pub complement: Option<Vec<u32>>,
    /// per prime p | |Z(L)|: does an equivariant homomorphism L -> Z(L)
    /// injective on the p-part of Z(L) exist?
    pub psi_exists: Vec<(usize, bool)>,
}

impl CentreFactorReport {
    pub fn complement_found(&self) -> bool {
        self.complement.is_some()
    }
    pub fn all_psi_exist(&self) -> bool {
        self.psi_exists.iter().all(|&(_, e)| e)
    }
}

/// Probe whether Z(L) is a direct factor of L = C_H(Z(N)) with an
/// H-normal complement, and independently whether the per-prime
/// equivariant homomorphisms exist. The two searches must agree.
pub fn centre_factor_report(h: &GroupRef, n: &Subgroup, cap: usize) -> Result<CentreFactorReport> {
    if !n.is_normal() {
        return Err(Error::Subgroup("centre factor probe needs a normal subgroup".into()));
    }
    // Z(N) as a subgroup of H
    let zn_members: Vec<u32> = n
        .members()
        .iter()
        .copied()
        .filter(|&z| n.members().iter().all(|&x| h.mul(z, x) == h.mul(x, z)))
        .collect();
    let zn = Subgroup::from_members(h.clone(), zn_members)?;
    let l = centralizer(h, &zn);
    // Z(L)
    let zl_members: Vec<u32> = l
        .members()
        .iter()
        .copied()
        .filter(|&z| l.members().iter().all(|&x| h.mul(z, x) == h.mul(x, z)))
        .collect();
    let zl = Subgroup::from_members(h.clone(), zl_members)?;

    // complement search: D normal in H, D ⊆ L, D ∩ Z(L) = 1, D·Z(L) = L
    let normals = normal_subgroups(h, cap)?;
    let complement = normals
        .iter()
        .find(|d| {
            d.is_subset_of(&l)
                && d.intersect(&zl).is_trivial()
                && d.order() * zl.order() == l.order()
        })
        .map(|d| d.members().to_vec());

    // psi_p search: equivariant homs L -> Z(L) factor through L/[L,H]
    // (the target is central, so equivariance means constancy on
    // H-conjugacy classes); enumerate homs of that quotient
    let mut commutators = Vec::new();
    for &x in l.members() {
        for y in h.elements() {
            // x^{-1} y^{-1} x y with x in L stays in L (L normal in H)
            let c = h.mul(h.mul(h.inv(x), h.inv(y)), h.mul(x, y));
            commutators.push(c);
        }
    }
    let lh = Subgroup::generated(h, &commutators);
    if !lh.is_subset_of(&l) {
        return Err(Error::Structure("[L,H] escaped L; L should be normal".into()));
    }

    // quotient group L/[L,H]: build L as its own group, then quotient
    let (l_group, l_embed) = l.as_group()?;
    let lh_in_l: Vec<u32> =
        lh.members().iter().map(|&x| l_embed[&x]).collect();
    let lh_sub = Subgroup::from_members(l_group.clone(), lh_in_l)?;
    let (lab, proj) = quotient(&l_group, &lh_sub)?;

    // homs lab -> Z(L): target subgroup of H; enumerate
    let zl_in_h = zl.clone();
    let homs = all_homomorphisms_into(&lab, h, &zl_in_h, 1_000_000);

    let mut primes = Vec::new();
    let mut x = zl.order();
    let mut d = 2;
    while d * d <= x {
        if x % d == 0 {
            primes.push(d);
            while x % d == 0 {
                x /= d;
            }
        }
        d += 1;
    }
    if x > 1 {
        primes.push(x);
    }

    let mut psi_exists = Vec::new();
    for &p in &primes {
        let zp = crate::group::p_component(&zl, p)?;
        let mut exists = false;
        'hom: for hom in &homs {
            // compose: L -> L/[L,H] -> Z(L); injectivity on the p-part
            let mut seen = HashMap::new();
            for &z in zp.members() {
                let img = hom.apply(proj.apply(l_embed[&z]));
                if seen.insert(img, z).is_some() {
                    continue 'hom;
                }
            }
            exists = true;
            break;
        }
        psi_exists.push((p, exists));
    }

    Ok(CentreFactorReport {
        l_order: l.order(),
        z_l_order: zl.order(),
        complement,
        psi_exists,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::build::{alternating, cyclic, dihedral, direct_product, symmetric};
    use crate::group::{centre, Subgroup, DEFAULT_LATTICE_CAP};
    use std::sync::Arc;

    #[test]
    fn nonabelian_monolith_predicate() {
        let a5 = Arc::new(alternating(5).unwrap());
        assert!(has_nonabelian_monolith(&a5, DEFAULT_LATTICE_CAP).unwrap());
        let d4 = Arc::new(dihedral(4).unwrap());
        assert!(!has_nonabelian_monolith(&d4, DEFAULT_LATTICE_CAP).unwrap());
        let z6 = Arc::new(cyclic(6).unwrap());
        assert!(!has_nonabelian_monolith(&z6, DEFAULT_LATTICE_CAP).unwrap());
    }

    #[test]
    fn core_criteria_fixtures() {
        // (A4, V4): all three hold
        let a4 = Arc::new(alternating(4).unwrap());
        let v4: Vec<u32> =
            a4.elements().filter(|&g| g == 0 || a4.element_order(g) == 2).collect();
        let v4 = Subgroup::from_members(a4.clone(), v4).unwrap();
        let r = core_criteria(&a4, &v4, DEFAULT_LATTICE_CAP).unwrap();
        assert!(r.all_hold(), "{r:?}");

        // (D4, centre): fails self-centralizing
        let d4 = Arc::new(dihedral(4).unwrap());
        let z = centre(&d4);
        let r = core_criteria(&d4, &z, DEFAULT_LATTICE_CAP).unwrap();
        assert!(!r.self_centralizing);

        // (S3, A3): all hold
        let s3 = Arc::new(symmetric(3).unwrap());
        let a3: Vec<u32> = s3.elements().filter(|&g| s3.element_order(g) != 2).collect();
        let a3 = Subgroup::from_members(s3.clone(), a3).unwrap();
        let r = core_criteria(&s3, &a3, DEFAULT_LATTICE_CAP).unwrap();
        assert!(r.all_hold(), "{r:?}");
    }

    #[test]
    fn module_z9_sign_action() {
        let m = GModule {
            p: 3,
            cyclic_orders: vec![9],
            acting_order: 2,
            action: vec![vec![vec![-1]]],
        };
        let r = check_module(&m, DEFAULT_MODULE_CAP, 100_000).unwrap();
        assert!(r.premise_small_proper_submodules);
        assert_eq!(r.homogeneous, ImplicationStatus::Verified);
        assert_eq!(r.layers_simple_isomorphic, ImplicationStatus::Verified);
        assert!(!r.any_violated());
        assert_eq!(r.submodule_count, 3); // 0, 3Z9, Z9
    }

    #[test]
    fn module_z3_plus_z9_trivial_action() {
        let m = GModule {
            p: 3,
            cyclic_orders: vec![3, 9],
            acting_order: 1,
            action: vec![],
        };
        let r = check_module(&m, DEFAULT_MODULE_CAP, 100_000).unwrap();
        // the Z9 summand is proper of full exponent: premise fails
        assert!(!r.premise_small_proper_submodules);
        assert_eq!(r.homogeneous, ImplicationStatus::Vacuous);
        assert!(!r.indecomposable);
        assert!(!r.any_violated());
    }

    #[test]
    fn module_z3_squared_swap() {
        let m = GModule {
            p: 3,
            cyclic_orders: vec![3, 3],
            acting_order: 2,
            action: vec![vec![vec![0, 1], vec![1, 0]]],
        };
        let r = check_module(&m, DEFAULT_MODULE_CAP, 100_000).unwrap();
        // diagonal and antidiagonal submodules decompose it, and indeed a
        // proper submodule of full exponent exists
        assert!(!r.indecomposable);
        assert!(!r.premise_small_proper_submodules);
        assert_eq!(r.indecomposable_implies_premise, ImplicationStatus::Vacuous);
        assert!(!r.any_violated());
    }

    #[test]
    fn centre_factor_on_d4_and_d15() {
        let d4 = Arc::new(dihedral(4).unwrap());
        let whole = Subgroup::whole(&d4);
        let r = centre_factor_report(&d4, &whole, DEFAULT_LATTICE_CAP).unwrap();
        assert_eq!(r.l_order, 8); // centraliser of the centre is all of D4
        assert_eq!(r.z_l_order, 2);
        assert!(!r.complement_found());
        assert_eq!(r.psi_exists, vec![(2, false)]);

        let d15 = Arc::new(dihedral(15).unwrap());
        let whole = Subgroup::whole(&d15);
        let r = centre_factor_report(&d15, &whole, DEFAULT_LATTICE_CAP).unwrap();
        assert_eq!(r.z_l_order, 1);
        assert!(r.complement_found());
        assert!(r.all_psi_exist()); // vacuously: no primes
    }

    #[test]
    fn centre_factor_on_z4_times_s3() {
        let g = Arc::new(direct_product(&[cyclic(4).unwrap(), symmetric(3).unwrap()]).unwrap());
        let whole = Subgroup::whole(&g);
        let r = centre_factor_report(&g, &whole, DEFAULT_LATTICE_CAP).unwrap();
        assert_eq!(r.z_l_order, 4);
        assert!(r.complement_found());
        assert!(r.all_psi_exist());
        assert_eq!(r.complement_found(), r.all_psi_exist());
    }
}
