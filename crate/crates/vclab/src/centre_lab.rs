//! The fibered-quotient construction: given a finite H, take the fibered
//! power Q over L (the centralizer of the centre of a normal subgroup),
//! and quotient by a code R inside C^t, C the elementary socle of the
//! p-part of Z(L). The diagonal copy of H inside G = Q/R stays verbally
//! closed; whether it is a retract is what the lab measures, explicitly
//! at small t, by sampling at code parameters.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigUint;
use rand::Rng;

use crate::approx::{CodeMode, PolynomialCode};
use crate::error::{Error, Result};
use crate::fp::Echelon;
use crate::group::retract::{find_retraction, RetractionOutcome};
use crate::group::{
    all_subgroups, centralizer, elementary_socle, p_component, quotient, GroupRef, Homomorphism,
    Subgroup,
};
use crate::wordmaps::{decide_verbally_closed, VerbalClosureReport};
use crate::words::evaluate;

pub const DEFAULT_EXPLICIT_CAP: usize = 4096;

/// How the quotient is represented: a full multiplication table, or
/// tuples with a canonical coset normal form (for code-parameter t).
pub enum Representation {
    Explicit {
        q_group: GroupRef,
        q_tuples: Vec<Vec<u32>>,
        g_group: GroupRef,
        projection: Homomorphism,
        diagonal: Subgroup,
    },
    Implicit,
}

/// Source of the code R ⊂ C^t.
pub enum CodeSource {
    /// paper parameters: k = number of subgroups of H
    Paper,
    /// explicit copy count and generator rows over F_p (length t*d each)
    Explicit { t: usize, rows: Vec<Vec<u8>> },
}

pub struct FiberedQuotient {
    pub h: GroupRef,
    pub n_sub: Subgroup,
    pub l: Subgroup,
    pub p: u8,
    /// the elementary socle C of the p-part of Z(L)
    pub c: Subgroup,
    pub d: usize,
    pub t: usize,
    /// subgroup count of H when built at paper parameters
    pub k: Option<usize>,
    c_basis: Vec<u32>,
    c_coords: HashMap<u32, Vec<u8>>,
    c_decode: HashMap<Vec<u8>, u32>,
    pub code: Echelon,
    pub representation: Representation,
}

/// A tuple element of the implicit quotient, stored in normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CosetTuple {
    pub components: Vec<u32>,
}

impl FiberedQuotient {
    pub fn build(
        h: &GroupRef,
        n_sub: Option<Subgroup>,
        p: u8,
        source: CodeSource,
        explicit_cap: usize,
    ) -> Result<FiberedQuotient> {
        let n_sub = n_sub.unwrap_or_else(|| Subgroup::whole(h));
        if !n_sub.is_normal() {
            return Err(Error::Subgroup("the designated subgroup must be normal".into()));
        }
        // L = centralizer of the centre of N; C = socle of the p-part of Z(L)
        let zn_members: Vec<u32> = n_sub
            .members()
            .iter()
            .copied()
            .filter(|&z| n_sub.members().iter().all(|&x| h.mul(z, x) == h.mul(x, z)))
            .collect();
        let zn = Subgroup::from_members(h.clone(), zn_members)?;
        let l = centralizer(h, &zn);
        let zl_members: Vec<u32> = l
            .members()
            .iter()
            .copied()
            .filter(|&z| l.members().iter().all(|&x| h.mul(z, x) == h.mul(x, z)))
            .collect();
        let zl = Subgroup::from_members(h.clone(), zl_members)?;
        let zp = p_component(&zl, p as usize)?;
        let c = elementary_socle(&zp, p as usize)?;
        if c.is_trivial() {
            return Err(Error::Structure(format!(
                "the centre of L has no elementary p-part for p = {p}"
            )));
        }
        // F_p coordinates on C
        let (c_basis, c_coords, c_decode) = coordinatize(h, &c, p)?;
        let d = c_basis.len();

        let (t, rows, k) = match source {
            CodeSource::Paper => {
                let k = all_subgroups(h, 4096, 1_000_000)?.len();
                let code = PolynomialCode::construct(p, d, k, CodeMode::Paper, 1 << 22)?;
                let rows: Vec<Vec<u8>> = code.basis.rows().to_vec();
                (code.t, rows, Some(k))
            }
            CodeSource::Explicit { t, rows } => (t, rows, None),
        };
        let mut code = Echelon::new(p, t * d);
        for row in &rows {
            if row.len() != t * d {
                return Err(Error::Structure(format!(
                    "code row has length {}, expected {}",
                    row.len(),
                    t * d
                )));
            }
            code.insert(row);
        }

        // invariance of the code under the diagonal conjugation action of H
        for &gen in Subgroup::whole(h).small_generating_set().iter() {
            let mat = conjugation_matrix(h, &c, &c_basis, &c_coords, p, gen)?;
            for row in code.rows() {
                let image = apply_blockwise(p, &mat, row, d, t);
                if !code.contains(&image) {
                    return Err(Error::Structure(
                        "code is not invariant under the conjugation action".into(),
                    ));
                }
            }
        }

        let q_order = (l.order() as u128)
            .checked_pow(t as u32)
            .map(|x| x * (h.order() / l.order()) as u128);
        let explicit = matches!(q_order, Some(q) if q <= explicit_cap as u128);

        let representation = if explicit {
            let (q_group_raw, q_tuples) =
                crate::group::build::fibered_with_tuples(h, &l, t, explicit_cap)?;
            let q_group = Arc::new(q_group_raw);
            let tuple_index: HashMap<&[u32], u32> = q_tuples
                .iter()
                .enumerate()
                .map(|(i, tup)| (tup.as_slice(), i as u32))
                .collect();
            // members of R as Q-indices
            let rank = code.rank();
            let member_count = (p as u64).checked_pow(rank as u32).ok_or_else(|| {
                Error::CapExceeded("code too large to enumerate explicitly".into())
            })?;
            if member_count > (1 << 22) {
                return Err(Error::CapExceeded("code too large to enumerate explicitly".into()));
            }
            let mut r_members = Vec::with_capacity(member_count as usize);
            for code_idx in 0..member_count {
                let mut v = vec![0u8; t * d];
                let mut cc = code_idx;
                for row in code.rows() {
                    let coeff = (cc % p as u64) as u8;
                    cc /= p as u64;
                    crate::fp::addv(p, &mut v, row, coeff);
                }
                let tuple: Vec<u32> = (0..t)
                    .map(|i| c_decode[&v[i * d..(i + 1) * d].to_vec()])
                    .collect();
                let idx = tuple_index
                    .get(tuple.as_slice())
                    .copied()
                    .ok_or_else(|| Error::Structure("code tuple escapes the fibered power".into()))?;
                r_members.push(idx);
            }
            let r_sub = Subgroup::from_members(q_group.clone(), r_members)?;
            if !r_sub.is_normal() {
                return Err(Error::Structure("code subgroup is not normal in the fibered power".into()));
            }
            let (g_group, projection) = quotient(&q_group, &r_sub)?;
            // diagonal embedding
            let mut diag_members = Vec::with_capacity(h.order());
            let mut seen = vec![false; g_group.order()];
            for x in h.elements() {
                let tuple = vec![x; t];
                let qi = tuple_index[tuple.as_slice()];
                let gi = projection.apply(qi);
                if seen[gi as usize] {
                    return Err(Error::Structure("diagonal embedding is not injective".into()));
                }
                seen[gi as usize] = true;
                diag_members.push(gi);
            }
            let diagonal = Subgroup::from_members(g_group.clone(), diag_members)?;
            Representation::Explicit { q_group, q_tuples, g_group, projection, diagonal }
        } else {
            Representation::Implicit
        };

        Ok(FiberedQuotient {
            h: h.clone(),
            n_sub,
            l,
            p,
            c,
            d,
            t,
            k,
            c_basis,
            c_coords,
            c_decode,
            code,
            representation,
        })
    }

    pub fn is_explicit(&self) -> bool {
        matches!(self.representation, Representation::Explicit { .. })
    }

    /// F_p basis of the socle C (element indices in H).
    pub fn socle_basis(&self) -> &[u32] {
        &self.c_basis
    }

    /// |G| = |Q| / |R|, exact.
    pub fn order(&self) -> BigUint {
        let q = BigUint::from(self.l.order()).pow(self.t as u32)
            * BigUint::from(self.h.order() / self.l.order());
        let r = BigUint::from(self.p as u64).pow(self.code.rank() as u32);
        q / r
    }

    /// Diagonal-injectivity certificate valid in both representations: a
    /// nontrivial constant tuple over C has no trivial coordinate, so it
    /// cannot lie in the code.
    pub fn diagonal_injective(&self) -> bool {
        for &cm in self.c.members() {
            if cm == self.h.identity() {
                continue;
            }
            let coords = &self.c_coords[&cm];
            let mut v = Vec::with_capacity(self.t * self.d);
            for _ in 0..self.t {
                v.extend_from_slice(coords);
            }
            if self.code.contains(&v) {
                return false;
            }
        }
        true
    }

    /// Normal form of a tuple: reduce its componentwise C-displacement
    /// from the canonical coset representatives modulo the code.
    pub fn normalize(&self, components: &[u32]) -> Result<CosetTuple> {
        let h = &self.h;
        debug_assert_eq!(components.len(), self.t);
        // common-coset invariant
        let base = components[0];
        for &x in components {
            if !self.l.contains(h.mul(h.inv(base), x)) {
                return Err(Error::Structure("tuple components span several cosets".into()));
            }
        }
        let mut refs = Vec::with_capacity(self.t);
        let mut delta = vec![0u8; self.t * self.d];
        for (i, &x) in components.iter().enumerate() {
            // canonical representative of x C: minimal element index
            let rep = self.c.members().iter().map(|&cm| h.mul(x, cm)).min().unwrap();
            let diff = h.mul(h.inv(rep), x);
            let coords = self
                .c_coords
                .get(&diff)
                .ok_or_else(|| Error::Structure("coset displacement escapes C".into()))?;
            delta[i * self.d..(i + 1) * self.d].copy_from_slice(coords);
            refs.push(rep);
        }
        self.code.reduce(&mut delta);
        let components = refs
            .iter()
            .enumerate()
            .map(|(i, &rep)| {
                let coords = delta[i * self.d..(i + 1) * self.d].to_vec();
                h.mul(rep, self.c_decode[&coords])
            })
            .collect();
        Ok(CosetTuple { components })
    }

    pub fn mul_tuples(&self, a: &CosetTuple, b: &CosetTuple) -> Result<CosetTuple> {
        let prod: Vec<u32> = a
            .components
            .iter()
            .zip(&b.components)
            .map(|(&x, &y)| self.h.mul(x, y))
            .collect();
        self.normalize(&prod)
    }

    pub fn diagonal_tuple(&self, x: u32) -> Result<CosetTuple> {
        self.normalize(&vec![x; self.t])
    }

    /// Sample-based echo of the closedness mechanism: evaluate a random
    /// word at tuples diag(a_j) * r_j; the componentwise discrepancy from
    /// diag(w(a))) must land in the code, expose a trivial coordinate,
    /// and that coordinate's slice must solve the equation in H.
    pub fn mechanism_samples(
        &self,
        samples: usize,
        arity: usize,
        max_len: usize,
        rng: &mut impl Rng,
    ) -> Result<MechanismReport> {
        let h = &self.h;
        let vars: Vec<String> = (1..=arity).map(|i| format!("x{i}")).collect();
        let mut checked = 0usize;
        for _ in 0..samples {
            let w = crate::wordmaps::random_word(&vars, max_len, rng);
            // base assignment in H and code offsets
            let base: Vec<u32> =
                (0..arity).map(|_| rng.gen_range(0..h.order()) as u32).collect();
            let tuples: Vec<Vec<u32>> = base
                .iter()
                .map(|&a| {
                    let offset = self.random_code_vector(rng);
                    (0..self.t)
                        .map(|i| {
                            let coords = offset[i * self.d..(i + 1) * self.d].to_vec();
                            h.mul(a, self.c_decode[&coords])
                        })
                        .collect()
                })
                .collect();
            // componentwise evaluation
            let mut w_components = Vec::with_capacity(self.t);
            for i in 0..self.t {
                let mut asg = HashMap::new();
                for (j, var) in vars.iter().enumerate() {
                    asg.insert(var.clone(), tuples[j][i]);
                }
                w_components.push(evaluate(&w, h, &asg, &HashMap::new())?);
            }
            let target = {
                let mut asg = HashMap::new();
                for (j, var) in vars.iter().enumerate() {
                    asg.insert(var.clone(), base[j]);
                }
                evaluate(&w, h, &asg, &HashMap::new())?
            };
            // discrepancy
            let mut delta = vec![0u8; self.t * self.d];
            let mut trivial_at = None;
            for (i, &wc) in w_components.iter().enumerate() {
                let diff = h.mul(h.inv(target), wc);
                let coords = self.c_coords.get(&diff).ok_or_else(|| {
                    Error::Structure("mechanism discrepancy escapes C".into())
                })?;
                if coords.iter().all(|&x| x == 0) {
                    trivial_at.get_or_insert(i);
                }
                delta[i * self.d..(i + 1) * self.d].copy_from_slice(coords);
            }
            if !self.code.contains(&delta) {
                return Ok(MechanismReport {
                    samples_checked: checked,
                    failure: Some(format!("discrepancy outside the code for word {}", w.render())),
                });
            }
            let Some(i) = trivial_at else {
                return Ok(MechanismReport {
                    samples_checked: checked,
                    failure: Some(format!(
                        "no trivial coordinate in the discrepancy of {}",
                        w.render()
                    )),
                });
            };
            // the i-th slice solves the equation
            if w_components[i] != target {
                return Ok(MechanismReport {
                    samples_checked: checked,
                    failure: Some("coordinate slice does not solve the equation".into()),
                });
            }
            checked += 1;
        }
        Ok(MechanismReport { samples_checked: checked, failure: None })
    }

    fn random_code_vector(&self, rng: &mut impl Rng) -> Vec<u8> {
        let mut v = vec![0u8; self.t * self.d];
        let rank = self.code.rank();
        if rank == 0 {
            return v;
        }
        // combine a bounded number of random rows: cheap and uniform
        // enough for sampling purposes
        let picks = rank.min(48);
        for _ in 0..picks {
            let row = &self.code.rows()[rng.gen_range(0..rank)];
            let coeff = rng.gen_range(1..self.p as u32) as u8;
            crate::fp::addv(self.p, &mut v, row, coeff);
        }
        v
    }

    /// Bounded verbal-closedness verdict on the explicit quotient.
    pub fn explicit_verbal_closure(
        &self,
        s_max: usize,
        map_cap: usize,
        rng: &mut impl Rng,
    ) -> Result<VerbalClosureReport> {
        match &self.representation {
            Representation::Explicit { g_group, diagonal, .. } => {
                decide_verbally_closed(g_group, diagonal, s_max, map_cap, &[], 0, rng)
            }
            Representation::Implicit => Err(Error::CapExceeded(
                "verbal-closure enumeration needs the explicit representation".into(),
            )),
        }
    }

    /// Retraction verdict: a complete search in the explicit
    /// representation, UNKNOWN (with the reason) in the implicit one.
    pub fn retraction_verdict(&self, cap: usize) -> RetractionOutcome {
        match &self.representation {
            Representation::Explicit { g_group, diagonal, .. } => {
                find_retraction(g_group, diagonal, cap)
            }
            Representation::Implicit => RetractionOutcome::Unknown(
                "implicit representation: exhaustive retraction search is infeasible at code \
                 parameters; the construction is designed so that no retraction exists there"
                    .into(),
            ),
        }
    }

    /// For a found retraction: the image of every coordinate copy of L
    /// must centralize the double centralizer of L (diagonal side).
    pub fn check_coordinate_image_containment(&self, rho: &Homomorphism) -> Result<bool> {
        let Representation::Explicit { q_group, q_tuples, projection, .. } =
            &self.representation
        else {
            return Err(Error::CapExceeded("needs the explicit representation".into()));
        };
        let h = &self.h;
        let chl = centralizer(h, &self.l);
        let chchl = centralizer(h, &chl);
        // diagonal element index in G for each h-element
        let tuple_index: HashMap<&[u32], u32> = q_tuples
            .iter()
            .enumerate()
            .map(|(i, tup)| (tup.as_slice(), i as u32))
            .collect();
        let diag_of: HashMap<u32, u32> = h
            .elements()
            .map(|x| {
                let qi = tuple_index[vec![x; self.t].as_slice()];
                (projection.apply(qi), x)
            })
            .collect();
        let _ = q_group;
        for coord in 0..self.t {
            for &lv in self.l.members() {
                let mut tuple = vec![h.identity(); self.t];
                tuple[coord] = lv;
                let qi = tuple_index[tuple.as_slice()];
                let gi = projection.apply(qi);
                let image = rho.apply(gi);
                let Some(&back) = diag_of.get(&image) else {
                    return Ok(false);
                };
                if !chchl.contains(back) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

#[derive(Clone, Debug)]
pub struct MechanismReport {
    pub samples_checked: usize,
    pub failure: Option<String>,
}

impl MechanismReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// F_p coordinates on an elementary abelian p-subgroup: basis, the
/// coordinate table, and its inverse.
fn coordinatize(
    h: &GroupRef,
    c: &Subgroup,
    p: u8,
) -> Result<(Vec<u32>, HashMap<u32, Vec<u8>>, HashMap<Vec<u8>, u32>)> {
    let mut basis: Vec<u32> = Vec::new();
    let mut coords: HashMap<u32, Vec<u8>> = HashMap::new();
    coords.insert(h.identity(), Vec::new());
    for &x in c.members() {
        if coords.contains_key(&x) {
            continue;
        }
        // extend every known element by powers of the new basis vector
        basis.push(x);
        let snapshot: Vec<(u32, Vec<u8>)> =
            coords.iter().map(|(&e, v)| (e, v.clone())).collect();
        for (elem, mut coord) in snapshot {
            coord.push(0);
            coords.insert(elem, coord.clone());
            let mut acc = elem;
            for e in 1..p {
                acc = h.mul(acc, x);
                let mut v = coord.clone();
                *v.last_mut().unwrap() = e;
                coords.insert(acc, v);
            }
        }
    }
    let d = basis.len();
    // pad all coordinates to full length
    let coords: HashMap<u32, Vec<u8>> = coords
        .into_iter()
        .map(|(e, mut v)| {
            v.resize(d, 0);
            (e, v)
        })
        .collect();
    if coords.len() != c.order() {
        return Err(Error::Structure("socle is not elementary abelian".into()));
    }
    let decode: HashMap<Vec<u8>, u32> = coords.iter().map(|(&e, v)| (v.clone(), e)).collect();
    Ok((basis, coords, decode))
}

/// Matrix of the conjugation action c ↦ g c g^{-1} on C in the given
/// basis; errors if conjugation leaves C.
fn conjugation_matrix(
    h: &GroupRef,
    c: &Subgroup,
    basis: &[u32],
    coords: &HashMap<u32, Vec<u8>>,
    p: u8,
    g: u32,
) -> Result<Vec<Vec<u8>>> {
    let d = basis.len();
    let mut mat = vec![vec![0u8; d]; d];
    for (j, &b) in basis.iter().enumerate() {
        let image = h.conj(g, b);
        if !c.contains(image) {
            return Err(Error::Structure("conjugation action leaves the socle".into()));
        }
        let v = &coords[&image];
        for i in 0..d {
            mat[i][j] = v[i];
        }
    }
    let _ = p;
    Ok(mat)
}

fn apply_blockwise(p: u8, mat: &[Vec<u8>], v: &[u8], d: usize, t: usize) -> Vec<u8> {
    let mut out = vec![0u8; v.len()];
    for block in 0..t {
        for i in 0..d {
            let mut acc = 0u32;
            for j in 0..d {
                acc = (acc + mat[i][j] as u32 * v[block * d + j] as u32) % p as u32;
            }
            out[block * d + i] = acc as u8;
        }
    }
    out
}
