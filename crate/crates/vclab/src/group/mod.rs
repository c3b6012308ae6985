//! Finite groups as dense multiplication tables, with subgroups,
//! homomorphisms, and the structural queries the labs build on.
//!
//! Elements are indices `0..order` with the identity fixed at index 0.
//! Groups are immutable once built and shared through [`GroupRef`].

pub mod build;
pub mod retract;

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::Arc;

use crate::error::{Error, Result};

pub type GroupRef = Arc<FiniteGroup>;

/// Default cap on the order of an explicitly constructed group.
pub const DEFAULT_ORDER_CAP: usize = 20_000;
/// Default cap for full subgroup-lattice enumerations.
pub const DEFAULT_LATTICE_CAP: usize = 2_000;

#[derive(Debug)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    inv: Vec<u32>,
    names: Vec<String>,
    gens: Vec<(String, u32)>,
    /// Shortest generator word per element (indices into `gens`).
    gen_words: Vec<Vec<u32>>,
    /// For direct products: how many generators each factor contributed.
    factor_gen_counts: Option<Vec<usize>>,
}

impl FiniteGroup {
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline(always)]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.table[a as usize * self.order + b as usize]
    }

    #[inline(always)]
    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    pub fn identity(&self) -> u32 {
        0
    }

    pub fn conj(&self, x: u32, g: u32) -> u32 {
        // x g x^{-1}
        self.mul(self.mul(x, g), self.inv(x))
    }

    pub fn commutator(&self, a: u32, b: u32) -> u32 {
        // a^{-1} b^{-1} a b
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn pow(&self, g: u32, e: i64) -> u32 {
        let base = if e < 0 { self.inv(g) } else { g };
        let mut e = e.unsigned_abs();
        let mut acc = 0u32;
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }

    pub fn element_order(&self, g: u32) -> usize {
        let mut x = g;
        let mut n = 1usize;
        while x != 0 {
            x = self.mul(x, g);
            n += 1;
        }
        n
    }

    pub fn exponent(&self) -> usize {
        (0..self.order as u32).fold(1usize, |acc, g| num_integer::lcm(acc, self.element_order(g)))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order as u32)
            .all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn name(&self, g: u32) -> &str {
        &self.names[g as usize]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn generators(&self) -> &[(String, u32)] {
        &self.gens
    }

    pub fn factor_gen_counts(&self) -> Option<&[usize]> {
        self.factor_gen_counts.as_deref()
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> + '_ {
        0..self.order as u32
    }

    /// Index of the element with the given display name, searching
    /// generator names first.
    pub fn element_by_name(&self, name: &str) -> Option<u32> {
        if let Some((_, idx)) = self.gens.iter().find(|(n, _)| n == name) {
            return Some(*idx);
        }
        self.names.iter().position(|n| n == name).map(|i| i as u32)
    }

    pub fn conjugacy_classes(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.order];
        let mut classes = Vec::new();
        for g in 0..self.order as u32 {
            if seen[g as usize] {
                continue;
            }
            let mut class = Vec::new();
            for x in 0..self.order as u32 {
                let c = self.conj(x, g);
                if !seen[c as usize] {
                    seen[c as usize] = true;
                    class.push(c);
                }
            }
            class.sort_unstable();
            classes.push(class);
        }
        classes
    }

    /// Exhaustive table validation: associativity, two-sided identity,
    /// two-sided inverses, generator closure.
    pub fn validate_full(&self) -> Result<()> {
        let n = self.order as u32;
        for g in 0..n {
            if self.mul(0, g) != g || self.mul(g, 0) != g {
                return Err(Error::Group(format!("identity fails at {g}")));
            }
            if self.mul(g, self.inv(g)) != 0 || self.mul(self.inv(g), g) != 0 {
                return Err(Error::Group(format!("inverse fails at {g}")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(Error::Group(format!("associativity fails at ({a},{b},{c})")));
                    }
                }
            }
        }
        let gen_idx: Vec<u32> = self.gens.iter().map(|&(_, i)| i).collect();
        let closure = close_under(self, &gen_idx);
        if closure.len() != self.order {
            return Err(Error::Group("generators do not generate the group".into()));
        }
        Ok(())
    }

    /// Render a generator word (sequence of generator positions) as a
    /// display name, merging runs into exponents.
    fn render_word(&self, word: &[u32]) -> String {
        if word.is_empty() {
            return "1".to_string();
        }
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < word.len() {
            let mut j = i;
            while j < word.len() && word[j] == word[i] {
                j += 1;
            }
            let name = &self.gens[word[i] as usize].0;
            if j - i == 1 {
                parts.push(name.clone());
            } else {
                parts.push(format!("{}^{}", name, j - i));
            }
            i = j;
        }
        parts.join("*")
    }
}

/// Subgroup closure of a set of element indices.
pub fn close_under(g: &FiniteGroup, seed: &[u32]) -> Vec<u32> {
    let mut mask = vec![false; g.order()];
    mask[0] = true;
    let mut members = vec![0u32];
    let mut queue: VecDeque<u32> = VecDeque::new();
    for &s in seed {
        if !mask[s as usize] {
            mask[s as usize] = true;
            members.push(s);
            queue.push_back(s);
        }
    }
    // close under products with already-known members (inverses appear
    // automatically in a finite group)
    while let Some(x) = queue.pop_front() {
        let snapshot: Vec<u32> = members.clone();
        for &m in &snapshot {
            for &prod in &[g.mul(x, m), g.mul(m, x)] {
                if !mask[prod as usize] {
                    mask[prod as usize] = true;
                    members.push(prod);
                    queue.push_back(prod);
                }
            }
        }
    }
    members.sort_unstable();
    members
}

#[derive(Clone, Debug)]
pub struct Subgroup {
    parent: GroupRef,
    members: Vec<u32>,
    mask: Vec<bool>,
}

impl Subgroup {
    pub fn from_members(parent: GroupRef, mut members: Vec<u32>) -> Result<Self> {
        members.sort_unstable();
        members.dedup();
        let mut mask = vec![false; parent.order()];
        for &m in &members {
            if m as usize >= parent.order() {
                return Err(Error::Subgroup(format!("index {m} out of range")));
            }
            mask[m as usize] = true;
        }
        let s = Subgroup { parent, members, mask };
        s.check_closed()?;
        Ok(s)
    }

    pub fn generated(parent: &GroupRef, seed: &[u32]) -> Self {
        let members = close_under(parent, seed);
        let mut mask = vec![false; parent.order()];
        for &m in &members {
            mask[m as usize] = true;
        }
        Subgroup { parent: parent.clone(), members, mask }
    }

    pub fn trivial(parent: &GroupRef) -> Self {
        Subgroup::generated(parent, &[])
    }

    pub fn whole(parent: &GroupRef) -> Self {
        Subgroup::generated(parent, &(0..parent.order() as u32).collect::<Vec<_>>())
    }

    fn check_closed(&self) -> Result<()> {
        if !self.contains(0) {
            return Err(Error::Subgroup("missing identity".into()));
        }
        for &a in &self.members {
            if !self.contains(self.parent.inv(a)) {
                return Err(Error::Subgroup(format!("not closed under inverse at {a}")));
            }
            for &b in &self.members {
                if !self.contains(self.parent.mul(a, b)) {
                    return Err(Error::Subgroup(format!("not closed under product at ({a},{b})")));
                }
            }
        }
        Ok(())
    }

    pub fn parent(&self) -> &GroupRef {
        &self.parent
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[u32] {
        &self.members
    }

    #[inline(always)]
    pub fn contains(&self, g: u32) -> bool {
        self.mask[g as usize]
    }

    pub fn is_whole(&self) -> bool {
        self.members.len() == self.parent.order()
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn same_parent(&self, other: &Subgroup) -> bool {
        Arc::ptr_eq(&self.parent, &other.parent)
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&m| other.contains(m))
    }

    pub fn intersect(&self, other: &Subgroup) -> Subgroup {
        let members: Vec<u32> =
            self.members.iter().copied().filter(|&m| other.contains(m)).collect();
        let mut mask = vec![false; self.parent.order()];
        for &m in &members {
            mask[m as usize] = true;
        }
        Subgroup { parent: self.parent.clone(), members, mask }
    }

    pub fn is_normal(&self) -> bool {
        let g = &self.parent;
        self.members
            .iter()
            .all(|&m| g.elements().all(|x| self.contains(g.conj(x, m))))
    }

    pub fn is_abelian(&self) -> bool {
        self.members.iter().all(|&a| {
            self.members.iter().all(|&b| self.parent.mul(a, b) == self.parent.mul(b, a))
        })
    }

    pub fn element_names(&self) -> Vec<&str> {
        self.members.iter().map(|&m| self.parent.name(m)).collect()
    }

    /// A small generating set, grown greedily by minimal element index.
    pub fn small_generating_set(&self) -> Vec<u32> {
        let mut gens = Vec::new();
        let mut current = vec![0u32];
        let mut cur_mask = vec![false; self.parent.order()];
        cur_mask[0] = true;
        while current.len() < self.members.len() {
            let next = self.members.iter().copied().find(|&m| !cur_mask[m as usize]).unwrap();
            gens.push(next);
            current = close_under(&self.parent, &gens);
            for c in cur_mask.iter_mut() {
                *c = false;
            }
            for &m in &current {
                cur_mask[m as usize] = true;
            }
        }
        gens
    }

    /// Exponent of the subgroup (lcm of element orders).
    pub fn exponent(&self) -> usize {
        self.members
            .iter()
            .fold(1usize, |acc, &g| num_integer::lcm(acc, self.parent.element_order(g)))
    }

    /// Materialize this subgroup as a standalone group, together with the
    /// index map from parent indices to the new group's indices.
    pub fn as_group(&self) -> Result<(GroupRef, HashMap<u32, u32>)> {
        let h = &self.parent;
        let members = self.members();
        let index_of: HashMap<u32, u32> =
            members.iter().enumerate().map(|(i, &m)| (m, i as u32)).collect();
        let n = members.len();
        let mut table = vec![0u32; n * n];
        for (i, &a) in members.iter().enumerate() {
            for (j, &b) in members.iter().enumerate() {
                table[i * n + j] = index_of[&h.mul(a, b)];
            }
        }
        let names: Vec<String> = members.iter().map(|&m| h.name(m).to_string()).collect();
        let gens: Vec<(String, u32)> = self
            .small_generating_set()
            .iter()
            .map(|&g| (h.name(g).to_string(), index_of[&g]))
            .collect();
        let group = build::from_table_unchecked(table, names, gens, None)?;
        Ok((Arc::new(group), index_of))
    }
}

#[derive(Clone, Debug)]
pub struct Homomorphism {
    pub source: GroupRef,
    pub target: GroupRef,
    pub image: Vec<u32>,
}

impl Homomorphism {
    pub fn identity(g: &GroupRef) -> Self {
        Homomorphism { source: g.clone(), target: g.clone(), image: (0..g.order() as u32).collect() }
    }

    pub fn apply(&self, g: u32) -> u32 {
        self.image[g as usize]
    }

    pub fn validate(&self) -> Result<()> {
        if self.image.len() != self.source.order() {
            return Err(Error::Homomorphism("image table has wrong length".into()));
        }
        if self.image[0] != 0 {
            return Err(Error::Homomorphism("does not fix the identity".into()));
        }
        let n = self.source.order() as u32;
        for a in 0..n {
            for b in 0..n {
                let lhs = self.image[self.source.mul(a, b) as usize];
                let rhs = self.target.mul(self.image[a as usize], self.image[b as usize]);
                if lhs != rhs {
                    return Err(Error::Homomorphism(format!(
                        "not multiplicative at ({a},{b})"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Check that this endomorphism is a retraction onto `h`:
    /// it fixes `h` pointwise, maps everything into `h`, and is idempotent.
    pub fn validate_retraction(&self, h: &Subgroup) -> Result<()> {
        if !Arc::ptr_eq(&self.source, &self.target) {
            return Err(Error::Homomorphism("retraction must be an endomorphism".into()));
        }
        self.validate()?;
        for &m in h.members() {
            if self.image[m as usize] != m {
                return Err(Error::Homomorphism(format!("does not fix subgroup element {m}")));
            }
        }
        for g in self.source.elements() {
            let img = self.image[g as usize];
            if !h.contains(img) {
                return Err(Error::Homomorphism(format!("image of {g} escapes the subgroup")));
            }
            if self.image[img as usize] != img {
                return Err(Error::Homomorphism("not idempotent".into()));
            }
        }
        Ok(())
    }

    pub fn image_subgroup(&self) -> Subgroup {
        let mut img: Vec<u32> = self.image.clone();
        img.sort_unstable();
        img.dedup();
        Subgroup::from_members(self.target.clone(), img)
            .expect("homomorphic image is a subgroup")
    }
}

/// Centre by exhaustive commutation scan.
pub fn centre(g: &GroupRef) -> Subgroup {
    let members: Vec<u32> = g
        .elements()
        .filter(|&z| g.elements().all(|x| g.mul(z, x) == g.mul(x, z)))
        .collect();
    Subgroup::from_members(g.clone(), members).expect("centre is a subgroup")
}

/// Centralizer of `s` in `g` by exhaustive scan.
pub fn centralizer(g: &GroupRef, s: &Subgroup) -> Subgroup {
    let members: Vec<u32> = g
        .elements()
        .filter(|&z| s.members().iter().all(|&x| g.mul(z, x) == g.mul(x, z)))
        .collect();
    Subgroup::from_members(g.clone(), members).expect("centralizer is a subgroup")
}

/// Normal closure of a set of elements.
pub fn normal_closure(g: &GroupRef, seed: &[u32]) -> Subgroup {
    let mut current: HashSet<u32> = seed.iter().copied().collect();
    loop {
        let closed = close_under(g, &current.iter().copied().collect::<Vec<_>>());
        let mut extra = Vec::new();
        for &m in &closed {
            for x in g.elements() {
                let c = g.conj(x, m);
                if !closed.binary_search(&c).is_ok() {
                    extra.push(c);
                }
            }
        }
        if extra.is_empty() {
            return Subgroup::from_members(g.clone(), closed).expect("normal closure");
        }
        current = closed.into_iter().chain(extra).collect();
    }
}

/// All normal subgroups, by walking the lattice of normal closures of
/// conjugacy-class unions.
pub fn normal_subgroups(g: &GroupRef, cap: usize) -> Result<Vec<Subgroup>> {
    if g.order() > cap {
        return Err(Error::CapExceeded(format!(
            "normal subgroup enumeration needs order <= {cap}, got {}",
            g.order()
        )));
    }
    let classes = g.conjugacy_classes();
    let reps: Vec<u32> = classes.iter().map(|c| c[0]).filter(|&r| r != 0).collect();
    let trivial = Subgroup::trivial(g);
    let mut found: HashMap<Vec<u32>, Subgroup> = HashMap::new();
    found.insert(trivial.members().to_vec(), trivial.clone());
    let mut queue = vec![trivial];
    while let Some(n) = queue.pop() {
        for &r in &reps {
            if n.contains(r) {
                continue;
            }
            let mut seed = n.members().to_vec();
            seed.push(r);
            let bigger = normal_closure(g, &seed);
            if !found.contains_key(bigger.members()) {
                found.insert(bigger.members().to_vec(), bigger.clone());
                queue.push(bigger);
            }
        }
    }
    let mut out: Vec<Subgroup> = found.into_values().collect();
    out.sort_by(|a, b| (a.order(), a.members().to_vec()).cmp(&(b.order(), b.members().to_vec())));
    Ok(out)
}

/// Intersection of all nonidentity normal subgroups. A trivial result
/// means the group is not monolithic.
pub fn monolith(g: &GroupRef, cap: usize) -> Result<Subgroup> {
    if g.order() > cap {
        return Err(Error::CapExceeded(format!(
            "monolith needs order <= {cap}, got {}",
            g.order()
        )));
    }
    // every nonidentity normal subgroup contains the normal closure of
    // one of its nonidentity elements, so intersecting the closures of
    // single class representatives suffices
    let classes = g.conjugacy_classes();
    let mut result: Option<Subgroup> = None;
    for class in &classes {
        if class[0] == 0 && class.len() == 1 {
            continue;
        }
        let ncl = normal_closure(g, &[class[0]]);
        result = Some(match result {
            None => ncl,
            Some(acc) => acc.intersect(&ncl),
        });
        if result.as_ref().map(|s| s.is_trivial()) == Some(true) {
            break;
        }
    }
    Ok(result.unwrap_or_else(|| Subgroup::whole(g)))
}

/// All subgroups by closure-extension search. Exponential in general;
/// guarded by `cap` on the group order and `count_cap` on the lattice size.
pub fn all_subgroups(g: &GroupRef, cap: usize, count_cap: usize) -> Result<Vec<Subgroup>> {
    if g.order() > cap {
        return Err(Error::CapExceeded(format!(
            "subgroup enumeration needs order <= {cap}, got {}",
            g.order()
        )));
    }
    let trivial = Subgroup::trivial(g);
    let mut found: HashMap<Vec<u32>, Subgroup> = HashMap::new();
    found.insert(trivial.members().to_vec(), trivial.clone());
    let mut queue = vec![trivial];
    while let Some(s) = queue.pop() {
        for x in g.elements() {
            if s.contains(x) {
                continue;
            }
            let mut seed = s.members().to_vec();
            seed.push(x);
            let bigger = Subgroup::generated(g, &seed);
            if !found.contains_key(bigger.members()) {
                if found.len() >= count_cap {
                    return Err(Error::CapExceeded(format!(
                        "subgroup lattice exceeds {count_cap} subgroups"
                    )));
                }
                found.insert(bigger.members().to_vec(), bigger.clone());
                queue.push(bigger);
            }
        }
    }
    let mut out: Vec<Subgroup> = found.into_values().collect();
    out.sort_by(|a, b| (a.order(), a.members().to_vec()).cmp(&(b.order(), b.members().to_vec())));
    Ok(out)
}

/// Quotient G/N with canonical minimal-index coset representatives.
/// Returns the quotient group and the projection homomorphism.
pub fn quotient(g: &GroupRef, n: &Subgroup) -> Result<(GroupRef, Homomorphism)> {
    if !Arc::ptr_eq(g, n.parent()) {
        return Err(Error::Subgroup("subgroup belongs to a different group".into()));
    }
    if !n.is_normal() {
        return Err(Error::Subgroup("quotient by a non-normal subgroup".into()));
    }
    let order = g.order();
    // coset representative: minimal index in gN
    let mut rep = vec![u32::MAX; order];
    let mut reps = Vec::new();
    for x in g.elements() {
        if rep[x as usize] != u32::MAX {
            continue;
        }
        let mut coset: Vec<u32> = n.members().iter().map(|&m| g.mul(x, m)).collect();
        coset.sort_unstable();
        let r = coset[0];
        for &c in &coset {
            rep[c as usize] = r;
        }
        reps.push(r);
    }
    reps.sort_unstable();
    debug_assert_eq!(reps[0], 0);
    let index_of: HashMap<u32, u32> =
        reps.iter().enumerate().map(|(i, &r)| (r, i as u32)).collect();
    let q_order = reps.len();
    let mut table = vec![0u32; q_order * q_order];
    for (i, &a) in reps.iter().enumerate() {
        for (j, &b) in reps.iter().enumerate() {
            let prod_rep = rep[g.mul(a, b) as usize];
            table[i * q_order + j] = index_of[&prod_rep];
        }
    }
    let names: Vec<String> = reps.iter().map(|&r| format!("[{}]", g.name(r))).collect();
    // push the parent's generators through the projection
    let mut gens = Vec::new();
    let mut seen = HashSet::new();
    for (gname, gidx) in g.generators() {
        let img = index_of[&rep[*gidx as usize]];
        if img != 0 && seen.insert(img) {
            gens.push((format!("[{gname}]"), img));
        }
    }
    let quotient_group = build::from_table_unchecked(table, names, gens, None)?;
    let q = Arc::new(quotient_group);
    let image: Vec<u32> = (0..order).map(|x| index_of[&rep[x]]).collect();
    let proj = Homomorphism { source: g.clone(), target: q.clone(), image };
    Ok((q, proj))
}

/// Elements of p-power order in an abelian subgroup.
pub fn p_component(a: &Subgroup, p: usize) -> Result<Subgroup> {
    if !a.is_abelian() {
        return Err(Error::Subgroup("p-component of a nonabelian subgroup".into()));
    }
    let g = a.parent();
    let members: Vec<u32> = a
        .members()
        .iter()
        .copied()
        .filter(|&m| {
            let mut ord = g.element_order(m);
            while ord % p == 0 {
                ord /= p;
            }
            ord == 1
        })
        .collect();
    Subgroup::from_members(g.clone(), members)
}

/// Largest exponent-p subgroup of the p-component: {x : x^p = 1}.
pub fn elementary_socle(a: &Subgroup, p: usize) -> Result<Subgroup> {
    if !a.is_abelian() {
        return Err(Error::Subgroup("socle of a nonabelian subgroup".into()));
    }
    let g = a.parent();
    let members: Vec<u32> =
        a.members().iter().copied().filter(|&m| g.pow(m, p as i64) == 0).collect();
    Subgroup::from_members(g.clone(), members)
}

/// Verbal subgroup generated by all squares.
pub fn squares_subgroup(g: &GroupRef) -> Subgroup {
    let squares: Vec<u32> = g.elements().map(|x| g.mul(x, x)).collect();
    Subgroup::generated(g, &squares)
}

#[cfg(test)]
mod tests {
    use super::build::*;
    use super::*;

    #[test]
    fn dihedral_basics() {
        let d15 = Arc::new(dihedral(15).unwrap());
        assert_eq!(d15.order(), 30);
        let a = d15.element_by_name("a").unwrap();
        let b = d15.element_by_name("b").unwrap();
        assert_eq!(d15.element_order(a), 15);
        assert_eq!(d15.element_order(b), 2);
        // b a b^{-1} = a^{-1}
        assert_eq!(d15.conj(b, a), d15.inv(a));
        d15.validate_full().unwrap();
    }

    #[test]
    fn centre_of_dihedral() {
        let d4 = Arc::new(dihedral(4).unwrap());
        let z = centre(&d4);
        assert_eq!(z.order(), 2);
        let a = d4.element_by_name("a").unwrap();
        assert!(z.contains(d4.mul(a, a)));

        let d15 = Arc::new(dihedral(15).unwrap());
        assert!(centre(&d15).is_trivial());
    }

    #[test]
    fn centralizer_v4_in_a4() {
        let a4 = Arc::new(alternating(4).unwrap());
        assert_eq!(a4.order(), 12);
        // V4 = identity plus the three double transpositions = the
        // elements of order 2
        let v4: Vec<u32> =
            a4.elements().filter(|&g| g == 0 || a4.element_order(g) == 2).collect();
        assert_eq!(v4.len(), 4);
        let v4 = Subgroup::from_members(a4.clone(), v4).unwrap();
        let c = centralizer(&a4, &v4);
        assert_eq!(c.members(), v4.members());
    }

    #[test]
    fn monolith_examples() {
        let a5 = Arc::new(alternating(5).unwrap());
        assert_eq!(a5.order(), 60);
        let m = monolith(&a5, DEFAULT_LATTICE_CAP).unwrap();
        assert_eq!(m.order(), 60);

        let d4 = Arc::new(dihedral(4).unwrap());
        let m = monolith(&d4, DEFAULT_LATTICE_CAP).unwrap();
        assert_eq!(m.order(), 2);
        let a = d4.element_by_name("a").unwrap();
        assert!(m.contains(d4.mul(a, a)));

        let v4 = Arc::new(direct_product(&[cyclic(2).unwrap(), cyclic(2).unwrap()]).unwrap());
        let m = monolith(&v4, DEFAULT_LATTICE_CAP).unwrap();
        assert!(m.is_trivial());
    }

    #[test]
    fn monolith_contained_in_every_normal() {
        let d4 = Arc::new(dihedral(4).unwrap());
        let m = monolith(&d4, DEFAULT_LATTICE_CAP).unwrap();
        assert!(!m.is_trivial());
        for n in normal_subgroups(&d4, DEFAULT_LATTICE_CAP).unwrap() {
            if !n.is_trivial() {
                assert!(m.is_subset_of(&n));
            }
        }
    }

    #[test]
    fn quotient_projection_is_homomorphism() {
        let d4 = Arc::new(dihedral(4).unwrap());
        let z = centre(&d4);
        let (q, proj) = quotient(&d4, &z).unwrap();
        assert_eq!(q.order(), 4);
        proj.validate().unwrap();
        q.validate_full().unwrap();
    }

    #[test]
    fn p_component_of_z12() {
        let z12 = Arc::new(cyclic(12).unwrap());
        let whole = Subgroup::whole(&z12);
        let two_part = p_component(&whole, 2).unwrap();
        assert_eq!(two_part.order(), 4);
        let socle = elementary_socle(&whole, 2).unwrap();
        assert_eq!(socle.order(), 2);
    }

    #[test]
    fn triple_centralizer_collapses() {
        let d4 = Arc::new(dihedral(4).unwrap());
        for g in d4.elements() {
            let s = Subgroup::generated(&d4, &[g]);
            let c1 = centralizer(&d4, &s);
            let c2 = centralizer(&d4, &c1);
            let c3 = centralizer(&d4, &c2);
            assert_eq!(c1.members(), c3.members());
        }
    }

    #[test]
    fn a5_subgroup_lattice_oracle() {
        // independent route to monolith(A5): enumerate the full subgroup
        // lattice and filter for normality
        let a5 = Arc::new(alternating(5).unwrap());
        let subs = all_subgroups(&a5, 100, 100_000).unwrap();
        assert_eq!(subs.len(), 59);
        let normals: Vec<_> = subs.iter().filter(|s| s.is_normal()).collect();
        assert_eq!(normals.len(), 2);
    }
}
