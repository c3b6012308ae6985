//! Exhaustive retraction search: backtracking over generator images with
//! incremental closure and conflict pruning.

use std::sync::Arc;

use super::{FiniteGroup, GroupRef, Homomorphism, Subgroup};

/// Default cap on |G| for the retraction search.
pub const DEFAULT_RETRACTION_CAP: usize = 1024;

/// Outcome of a completed or abandoned retraction search. `Absent` is a
/// certificate: the whole search space was exhausted. `Unknown` only
/// reports that the search was not attempted (cap exceeded); callers must
/// not conflate the two.
#[derive(Clone, Debug)]
pub enum RetractionOutcome {
    Found(Homomorphism),
    Absent,
    Unknown(String),
}

impl RetractionOutcome {
    pub fn is_found(&self) -> bool {
        matches!(self, RetractionOutcome::Found(_))
    }
    pub fn label(&self) -> &'static str {
        match self {
            RetractionOutcome::Found(_) => "FOUND",
            RetractionOutcome::Absent => "ABSENT",
            RetractionOutcome::Unknown(_) => "UNKNOWN",
        }
    }
}

/// Greedy coset generators: elements extending `start` to all of `g`,
/// chosen by minimal index. Returns the extension chain.
fn extension_generators(g: &GroupRef, start: &[u32]) -> Vec<u32> {
    let mut gens: Vec<u32> = Vec::new();
    let mut current = super::close_under(g, start);
    while current.len() < g.order() {
        let mut mask = vec![false; g.order()];
        for &m in &current {
            mask[m as usize] = true;
        }
        let next = g.elements().find(|&x| !mask[x as usize]).unwrap();
        gens.push(next);
        let mut seed = start.to_vec();
        seed.extend_from_slice(&gens);
        current = super::close_under(g, &seed);
    }
    gens
}

struct SearchState<'a> {
    g: &'a FiniteGroup,
    h: &'a Subgroup,
    /// generating set used for closure propagation: generators of H first,
    /// then the coset generators in order
    gamma: Vec<u32>,
    coset_gens: Vec<u32>,
    solutions_wanted: usize,
    found: Vec<Vec<u32>>,
}

impl<'a> SearchState<'a> {
    /// Close the partial map under right multiplication by the decided
    /// part of gamma. `image[x] != u32::MAX` marks x as mapped.
    /// Returns false on conflict.
    fn propagate(&self, image: &mut Vec<u32>, members: &mut Vec<u32>, decided: usize) -> bool {
        let g = self.g;
        let mut head = 0usize;
        while head < members.len() {
            let x = members[head];
            head += 1;
            let fx = image[x as usize];
            for &gam in &self.gamma[..decided] {
                let y = g.mul(x, gam);
                let fy = g.mul(fx, image[gam as usize]);
                let slot = &mut image[y as usize];
                if *slot == u32::MAX {
                    *slot = fy;
                    members.push(y);
                } else if *slot != fy {
                    return false;
                }
            }
        }
        true
    }

    fn search(&mut self, image: Vec<u32>, members: Vec<u32>, level: usize) {
        if self.found.len() >= self.solutions_wanted {
            return;
        }
        if level == self.coset_gens.len() {
            debug_assert_eq!(members.len(), self.g.order());
            self.found.push(image);
            return;
        }
        let x = self.coset_gens[level];
        let decided = self.gamma.len() - self.coset_gens.len() + level + 1;
        for &candidate in self.h.members() {
            let mut img = image.clone();
            let mut mem = members.clone();
            if img[x as usize] == u32::MAX {
                img[x as usize] = candidate;
                mem.push(x);
            } else if img[x as usize] != candidate {
                continue;
            }
            if self.propagate(&mut img, &mut mem, decided) {
                self.search(img, mem, level + 1);
                if self.found.len() >= self.solutions_wanted {
                    return;
                }
            }
        }
    }
}

/// Search for a retraction of `g` onto `h`: an endomorphism fixing `h`
/// pointwise with image exactly `h`. The search over coset-generator
/// images is exhaustive, so `Absent` means no retraction exists.
pub fn find_retraction(g: &GroupRef, h: &Subgroup, cap: usize) -> RetractionOutcome {
    assert!(Arc::ptr_eq(g, h.parent()), "subgroup belongs to a different group");
    if g.order() > cap {
        return RetractionOutcome::Unknown(format!(
            "retraction search needs |G| <= {cap}, got {}",
            g.order()
        ));
    }
    let h_gens = h.small_generating_set();
    let coset_gens = extension_generators(g, h.members());
    let mut gamma = h_gens.clone();
    gamma.extend_from_slice(&coset_gens);

    // seed: identity on H
    let mut image = vec![u32::MAX; g.order()];
    let mut members = Vec::with_capacity(g.order());
    for &m in h.members() {
        image[m as usize] = m;
        members.push(m);
    }

    let mut state = SearchState {
        g,
        h,
        gamma,
        coset_gens,
        solutions_wanted: 1,
        found: Vec::new(),
    };
    // propagate the H-part once (consistent by construction)
    let decided_h = state.gamma.len() - state.coset_gens.len();
    let ok = state.propagate(&mut image, &mut members, decided_h);
    debug_assert!(ok);
    state.search(image, members, 0);

    match state.found.pop() {
        Some(image) => {
            let hom = Homomorphism { source: g.clone(), target: g.clone(), image };
            hom.validate_retraction(h).expect("search result must validate");
            RetractionOutcome::Found(hom)
        }
        None => RetractionOutcome::Absent,
    }
}

/// All homomorphisms from `source` into the subgroup `target` of
/// `target_parent`, enumerated by backtracking over generator images.
/// `limit` bounds the number of returned homomorphisms.
pub fn all_homomorphisms_into(
    source: &GroupRef,
    target_parent: &GroupRef,
    target: &Subgroup,
    limit: usize,
) -> Vec<Homomorphism> {
    let src_gens: Vec<u32> = {
        let whole = Subgroup::whole(source);
        whole.small_generating_set()
    };
    let mut results: Vec<Vec<u32>> = Vec::new();
    let mut image = vec![u32::MAX; source.order()];
    image[0] = 0;
    fn rec(
        source: &FiniteGroup,
        tgt: &FiniteGroup,
        target: &Subgroup,
        gens: &[u32],
        level: usize,
        image: &mut Vec<u32>,
        members: &mut Vec<u32>,
        results: &mut Vec<Vec<u32>>,
        limit: usize,
    ) {
        if results.len() >= limit {
            return;
        }
        if level == gens.len() {
            results.push(image.clone());
            return;
        }
        let x = gens[level];
        for &cand in target.members() {
            // candidate image order must divide the generator's order
            if tgt.pow(cand, source.element_order(x) as i64) != 0 {
                continue;
            }
            let mut img = image.clone();
            let mut mem = members.clone();
            if img[x as usize] == u32::MAX {
                img[x as usize] = cand;
                mem.push(x);
            } else if img[x as usize] != cand {
                continue;
            }
            // propagate closure under right multiplication by decided gens
            let decided: Vec<u32> = gens[..=level].to_vec();
            let mut ok = true;
            let mut head = 0usize;
            while head < mem.len() {
                let a = mem[head];
                head += 1;
                let fa = img[a as usize];
                for &gam in &decided {
                    let b = source.mul(a, gam);
                    let fb = tgt.mul(fa, img[gam as usize]);
                    let slot = &mut img[b as usize];
                    if *slot == u32::MAX {
                        *slot = fb;
                        mem.push(b);
                    } else if *slot != fb {
                        ok = false;
                        break;
                    }
                }
                if !ok {
                    break;
                }
            }
            if ok {
                rec(source, tgt, target, gens, level + 1, &mut img, &mut mem, results, limit);
                if results.len() >= limit {
                    return;
                }
            }
        }
    }
    let mut members = vec![0u32];
    rec(
        source.as_ref(),
        target_parent.as_ref(),
        target,
        &src_gens,
        0,
        &mut image,
        &mut members,
        &mut results,
        limit,
    );
    results
        .into_iter()
        .map(|image| Homomorphism {
            source: source.clone(),
            target: target_parent.clone(),
            image,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::super::build::*;
    use super::super::*;
    use super::*;

    #[test]
    fn projection_retraction_on_direct_product() {
        // G = D4 x Z3, H = D4 x {1}: the coordinate projection retracts
        let g = Arc::new(direct_product(&[dihedral(4).unwrap(), cyclic(3).unwrap()]).unwrap());
        let members: Vec<u32> = (0..8u32).map(|x| x * 3).collect();
        let h = Subgroup::from_members(g.clone(), members).unwrap();
        match find_retraction(&g, &h, DEFAULT_RETRACTION_CAP) {
            RetractionOutcome::Found(rho) => rho.validate_retraction(&h).unwrap(),
            other => panic!("expected FOUND, got {}", other.label()),
        }
    }

    #[test]
    fn no_retraction_onto_diagonal_d15() {
        let g = Arc::new(direct_product(&[dihedral(3).unwrap(), dihedral(5).unwrap()]).unwrap());
        let a3 = g.element_by_name("a1").unwrap();
        let b3 = g.element_by_name("b1").unwrap();
        let a5 = g.element_by_name("a2").unwrap();
        let b5 = g.element_by_name("b2").unwrap();
        let h = Subgroup::generated(&g, &[g.mul(a3, a5), g.mul(b3, b5)]);
        assert_eq!(h.order(), 30);
        match find_retraction(&g, &h, DEFAULT_RETRACTION_CAP) {
            RetractionOutcome::Absent => {}
            other => panic!("expected ABSENT, got {}", other.label()),
        }
    }

    #[test]
    fn cap_yields_unknown() {
        let g = Arc::new(dihedral(4).unwrap());
        let h = Subgroup::trivial(&g);
        match find_retraction(&g, &h, 4) {
            RetractionOutcome::Unknown(_) => {}
            other => panic!("expected UNKNOWN, got {}", other.label()),
        }
    }

    #[test]
    fn hom_enumeration_counts() {
        // Hom(Z4, Z2) has 2 elements; Hom(Z2, Z4) has 2
        let z4 = Arc::new(cyclic(4).unwrap());
        let z2 = Arc::new(cyclic(2).unwrap());
        let homs = all_homomorphisms_into(&z4, &z2, &Subgroup::whole(&z2), 100);
        assert_eq!(homs.len(), 2);
        let homs = all_homomorphisms_into(&z2, &z4, &Subgroup::whole(&z4), 100);
        assert_eq!(homs.len(), 2);
        for h in homs {
            h.validate().unwrap();
        }
    }
}
