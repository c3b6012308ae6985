//! Word maps G^s -> G as value tables: the closure of the coordinate
//! projections under pointwise product and inverse. Bounded
//! verbal-closedness checks compare images over G-tuples with images over
//! H-tuples, map by map.

use std::collections::HashMap;

use rand::Rng;

use crate::error::{Error, Result};
use crate::group::{GroupRef, Subgroup};
use crate::words::Word;

pub const DEFAULT_TABLE_CAP: usize = 1 << 22;
pub const DEFAULT_MAP_CAP: usize = 100_000;

/// One word map: its full value table over G^s and a witness word
/// realizing it.
#[derive(Clone, Debug)]
pub struct WordMap {
    pub table: Vec<u32>,
    pub witness: Word,
}

/// The set of all s-variable word maps of G, or an overflow marker with
/// the partial closure discarded.
#[derive(Debug)]
pub enum WordMapClosure {
    Complete(Vec<WordMap>),
    Overflow { reached: usize },
}

fn tuple_tables(g: &GroupRef, s: usize) -> Result<(usize, Vec<Vec<u32>>)> {
    let table_len = g
        .order()
        .checked_pow(s as u32)
        .filter(|&l| l <= DEFAULT_TABLE_CAP)
        .ok_or_else(|| {
            Error::CapExceeded(format!("|G|^{s} exceeds the table cap {DEFAULT_TABLE_CAP}"))
        })?;
    // projection tables: index k encodes the tuple big-endian in base |G|
    let mut projections = Vec::with_capacity(s);
    for slot in 0..s {
        let mut t = vec![0u32; table_len];
        let block = g.order().pow((s - 1 - slot) as u32);
        for (k, v) in t.iter_mut().enumerate() {
            *v = ((k / block) % g.order()) as u32;
        }
        projections.push(t);
    }
    Ok((table_len, projections))
}

/// Enumerate all s-variable word maps of `g` by closure of the
/// projections under pointwise product with generator maps and their
/// inverses.
pub fn enumerate_word_maps(g: &GroupRef, s: usize, map_cap: usize) -> Result<WordMapClosure> {
    let (table_len, projections) = tuple_tables(g, s)?;
    let identity_table = vec![0u32; table_len];
    let mut maps: Vec<WordMap> = Vec::new();
    let mut index: HashMap<Vec<u32>, usize> = HashMap::new();
    maps.push(WordMap { table: identity_table.clone(), witness: Word::one() });
    index.insert(identity_table, 0);

    // generator action: pointwise multiply by projection^{±1}
    let gen_tables: Vec<(Vec<u32>, String, i64)> = (0..s)
        .flat_map(|slot| {
            let name = format!("x{}", slot + 1);
            let proj = projections[slot].clone();
            let inv: Vec<u32> = proj.iter().map(|&v| g.inv(v)).collect();
            [(proj, name.clone(), 1i64), (inv, name, -1i64)]
        })
        .collect();

    let mut head = 0usize;
    while head < maps.len() {
        let base_table = maps[head].table.clone();
        let base_witness = maps[head].witness.clone();
        head += 1;
        for (gt, name, exp) in &gen_tables {
            let product: Vec<u32> = base_table
                .iter()
                .zip(gt)
                .map(|(&a, &b)| g.mul(a, b))
                .collect();
            if !index.contains_key(&product) {
                if maps.len() >= map_cap {
                    return Ok(WordMapClosure::Overflow { reached: maps.len() });
                }
                let mut w = base_witness.clone();
                w.push(name, *exp);
                index.insert(product.clone(), maps.len());
                maps.push(WordMap { table: product, witness: w });
            }
        }
    }
    Ok(WordMapClosure::Complete(maps))
}

/// Verdict for one arity s.
#[derive(Clone, Debug)]
pub enum ArityVerdict {
    /// every word map passed: for all φ, φ(G^s) ∩ H ⊆ φ(H^s)
    Closed { maps_checked: usize },
    /// a word map failed, with a witness value in φ(G^s) ∩ H \ φ(H^s)
    NotClosed { witness_word: Word, witness_value: u32 },
    /// closure enumeration overflowed; sampled words only (incomplete)
    SampledOnly { words_checked: usize, finding: Option<(Word, u32)> },
}

#[derive(Clone, Debug)]
pub struct VerbalClosureReport {
    pub s_max: usize,
    pub per_arity: Vec<(usize, ArityVerdict)>,
    /// caller-supplied probe words, each checked exhaustively whatever
    /// its arity, with the failing value when one exists
    pub probe_results: Vec<(Word, Option<u32>)>,
}

impl VerbalClosureReport {
    /// True when every enumerated arity was fully covered and closed.
    /// Says nothing beyond `s_max`.
    pub fn closed_up_to_bound(&self) -> bool {
        self.per_arity
            .iter()
            .all(|(_, v)| matches!(v, ArityVerdict::Closed { .. }))
    }

    pub fn witness(&self) -> Option<(&Word, u32)> {
        let from_arity = self.per_arity.iter().find_map(|(_, v)| match v {
            ArityVerdict::NotClosed { witness_word, witness_value } => {
                Some((witness_word, *witness_value))
            }
            ArityVerdict::SampledOnly { finding: Some((w, h)), .. } => Some((w, *h)),
            _ => None,
        });
        from_arity.or_else(|| {
            self.probe_results
                .iter()
                .find_map(|(w, f)| f.map(|h| (w, h)))
        })
    }
}

/// Check one word map: is φ(G^s) ∩ H contained in φ(H^s)?
/// H-tuples are read off the same value table, so the comparison is
/// exact by construction.
fn map_closed(g: &GroupRef, h: &Subgroup, s: usize, table: &[u32]) -> Option<u32> {
    let mut h_image = vec![false; g.order()];
    // enumerate H-tuples: mixed-radix over h.members()
    let hm = h.members();
    let mut code = vec![0usize; s];
    loop {
        let mut k = 0usize;
        for slot in 0..s {
            k = k * g.order() + hm[code[slot]] as usize;
        }
        h_image[table[k] as usize] = true;
        if !increment(&mut code, hm.len()) {
            break;
        }
    }
    table
        .iter()
        .find(|&&v| h.contains(v) && !h_image[v as usize])
        .copied()
}

/// Decide verbal closedness of `h` in `g` up to `s_max` variables.
/// Complete word-map enumeration per arity where it fits; otherwise the
/// supplied probe words plus `sample_words` random words are evaluated
/// (explicitly labeled incomplete). The bound is a hard limitation: a
/// CLOSED verdict says nothing about arities beyond `s_max`.
pub fn decide_verbally_closed(
    g: &GroupRef,
    h: &Subgroup,
    s_max: usize,
    map_cap: usize,
    probes: &[Word],
    sample_words: usize,
    rng: &mut impl Rng,
) -> Result<VerbalClosureReport> {
    let mut per_arity = Vec::new();
    for s in 1..=s_max {
        let verdict = match enumerate_word_maps(g, s, map_cap) {
            Ok(WordMapClosure::Complete(maps)) => {
                let mut failed = None;
                for m in &maps {
                    if let Some(value) = map_closed(g, h, s, &m.table) {
                        failed = Some((m.witness.clone(), value));
                        break;
                    }
                }
                match failed {
                    Some((witness_word, witness_value)) => {
                        ArityVerdict::NotClosed { witness_word, witness_value }
                    }
                    None => ArityVerdict::Closed { maps_checked: maps.len() },
                }
            }
            Ok(WordMapClosure::Overflow { .. }) | Err(Error::CapExceeded(_)) => {
                let vars: Vec<String> = (1..=s).map(|i| format!("x{i}")).collect();
                let mut words: Vec<Word> = Vec::new();
                for _ in 0..sample_words {
                    words.push(random_word(&vars, 12, rng));
                }
                let mut finding = None;
                for w in &words {
                    if let Some(value) = probe_word(g, h, w)? {
                        finding = Some((w.clone(), value));
                        break;
                    }
                }
                ArityVerdict::SampledOnly { words_checked: words.len(), finding }
            }
            Err(e) => return Err(e),
        };
        per_arity.push((s, verdict));
    }
    // probe words run exhaustively whatever their arity
    let mut probe_results = Vec::new();
    for w in probes {
        let finding = probe_word(g, h, w)?;
        probe_results.push((w.clone(), finding));
    }
    Ok(VerbalClosureReport { s_max, per_arity, probe_results })
}

/// Exhaustively check one word: find a value in w(G^s) ∩ H outside
/// w(H^s), if any. Works directly from evaluations, so it is usable when
/// the full closure does not fit.
pub fn probe_word(g: &GroupRef, h: &Subgroup, w: &Word) -> Result<Option<u32>> {
    let vars = w.variables(&Default::default());
    let s = vars.len();
    let g_total = (g.order() as u64).checked_pow(s as u32);
    if g_total.is_none() || g_total.unwrap() > crate::words::DEFAULT_SOLVE_CAP {
        return Err(Error::CapExceeded(format!("probe word has too many variables ({s})")));
    }
    let coeff = std::collections::HashMap::new();
    let compiled = crate::words::CompiledWord::compile(w, g, &vars, &coeff)?;
    let mut h_image = vec![false; g.order()];
    let hm = h.members();
    let mut assignment = vec![0u32; s];
    // H-image
    let mut code = vec![0usize; s];
    loop {
        for (slot, &ci) in code.iter().enumerate() {
            assignment[slot] = hm[ci];
        }
        h_image[compiled.eval(g, &assignment) as usize] = true;
        if !increment(&mut code, hm.len()) {
            break;
        }
    }
    // G-image scan
    let mut code = vec![0usize; s];
    loop {
        for (slot, &ci) in code.iter().enumerate() {
            assignment[slot] = ci as u32;
        }
        let v = compiled.eval(g, &assignment);
        if h.contains(v) && !h_image[v as usize] {
            return Ok(Some(v));
        }
        if !increment(&mut code, g.order()) {
            break;
        }
    }
    Ok(None)
}

fn increment(code: &mut [usize], radix: usize) -> bool {
    for i in (0..code.len()).rev() {
        code[i] += 1;
        if code[i] < radix {
            return true;
        }
        code[i] = 0;
    }
    false
}

pub fn random_word(vars: &[String], max_len: usize, rng: &mut impl Rng) -> Word {
    let len = rng.gen_range(1..=max_len);
    let mut w = Word::one();
    for _ in 0..len {
        let v = &vars[rng.gen_range(0..vars.len())];
        let e = *[-2i64, -1, 1, 2][..].iter().nth(rng.gen_range(0..4)).unwrap();
        w.push(v, e);
    }
    w
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::build::{cyclic, dihedral, direct_product, symmetric};
    use crate::words::evaluate;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::collections::HashMap;
    use std::sync::Arc;

    #[test]
    fn word_maps_on_abelian_are_power_maps() {
        let z6 = Arc::new(cyclic(6).unwrap());
        match enumerate_word_maps(&z6, 1, DEFAULT_MAP_CAP).unwrap() {
            WordMapClosure::Complete(maps) => assert_eq!(maps.len(), 6),
            _ => panic!("overflow"),
        }
    }

    #[test]
    fn word_maps_on_s3_single_variable() {
        let s3 = Arc::new(symmetric(3).unwrap());
        match enumerate_word_maps(&s3, 1, DEFAULT_MAP_CAP).unwrap() {
            WordMapClosure::Complete(maps) => assert_eq!(maps.len(), 6),
            _ => panic!("overflow"),
        }
    }

    #[test]
    fn word_maps_on_z2_two_variables() {
        let z2 = Arc::new(cyclic(2).unwrap());
        match enumerate_word_maps(&z2, 2, DEFAULT_MAP_CAP).unwrap() {
            WordMapClosure::Complete(maps) => assert_eq!(maps.len(), 4),
            _ => panic!("overflow"),
        }
    }

    #[test]
    fn witness_words_reproduce_tables() {
        let d4 = Arc::new(dihedral(4).unwrap());
        let WordMapClosure::Complete(maps) = enumerate_word_maps(&d4, 2, DEFAULT_MAP_CAP).unwrap()
        else {
            panic!("overflow")
        };
        for m in &maps {
            for x in d4.elements() {
                for y in d4.elements() {
                    let mut asg = HashMap::new();
                    asg.insert("x1".to_string(), x);
                    asg.insert("x2".to_string(), y);
                    let direct = evaluate(&m.witness, &d4, &asg, &HashMap::new()).unwrap();
                    let k = x as usize * d4.order() + y as usize;
                    assert_eq!(direct, m.table[k], "word {}", m.witness.render());
                }
            }
        }
    }

    #[test]
    fn whole_group_is_closed() {
        let d4 = Arc::new(dihedral(4).unwrap());
        let whole = Subgroup::whole(&d4);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let report =
            decide_verbally_closed(&d4, &whole, 2, DEFAULT_MAP_CAP, &[], 0, &mut rng).unwrap();
        assert!(report.closed_up_to_bound());
    }

    #[test]
    fn probe_word_finds_nothing_on_retract() {
        // H x {1} is a retract of H x K, hence verbally closed: no word
        // can witness failure
        let g = Arc::new(direct_product(&[dihedral(3).unwrap(), cyclic(5).unwrap()]).unwrap());
        let members: Vec<u32> = (0..6u32).map(|x| x * 5).collect();
        let h = Subgroup::from_members(g.clone(), members).unwrap();
        for text in ["x1^2", "[x1,x2]", "x1^2 x2^2"] {
            let w = crate::words::parse_word(text).unwrap();
            assert!(probe_word(&g, &h, &w).unwrap().is_none(), "{text}");
        }
    }
}
