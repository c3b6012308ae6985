//! Constructors: cyclic, dihedral, symmetric/alternating, permutation
//! closures, explicit tables, and the product constructions.

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::Arc;

use crate::error::{Error, Result};

use super::{quotient, FiniteGroup, GroupRef, Subgroup, DEFAULT_ORDER_CAP};

/// Build a group from concrete elements: BFS closure from the generators,
/// identity at index 0, shortest generator words for display names.
pub fn from_concrete<E, F>(
    gens: Vec<(String, E)>,
    identity: E,
    mul: F,
    cap: usize,
) -> Result<FiniteGroup>
where
    E: Hash + Eq + Clone,
    F: Fn(&E, &E) -> E,
{
    let mut index: HashMap<E, u32> = HashMap::new();
    let mut elems: Vec<E> = vec![identity.clone()];
    let mut words: Vec<Vec<u32>> = vec![Vec::new()];
    index.insert(identity, 0);
    let mut head = 0usize;
    while head < elems.len() {
        let cur = elems[head].clone();
        let cur_word = words[head].clone();
        for (gi, (_, gen)) in gens.iter().enumerate() {
            let next = mul(&cur, gen);
            if !index.contains_key(&next) {
                if elems.len() >= cap {
                    return Err(Error::CapExceeded(format!("group order exceeds cap {cap}")));
                }
                index.insert(next.clone(), elems.len() as u32);
                let mut w = cur_word.clone();
                w.push(gi as u32);
                words.push(w);
                elems.push(next);
            }
        }
        head += 1;
    }
    let order = elems.len();
    let mut table = vec![0u32; order * order];
    for (i, a) in elems.iter().enumerate() {
        for (j, b) in elems.iter().enumerate() {
            table[i * order + j] = index[&mul(a, b)];
        }
    }
    let gen_pairs: Vec<(String, u32)> =
        gens.iter().map(|(n, e)| (n.clone(), index[e])).collect();
    finish(table, None, gen_pairs, words, None)
}

/// Assemble a `FiniteGroup` from a multiplication table known to be valid
/// by construction. Computes inverses, and derives element names from
/// shortest generator words unless explicit names are given.
pub fn from_table_unchecked(
    table: Vec<u32>,
    names: Vec<String>,
    gens: Vec<(String, u32)>,
    factor_gen_counts: Option<Vec<usize>>,
) -> Result<FiniteGroup> {
    let order = names.len();
    if table.len() != order * order {
        return Err(Error::Group("table size mismatch".into()));
    }
    let words = generator_words(&table, order, &gens)?;
    finish(table, Some(names), gens, words, factor_gen_counts)
}

/// Build from an explicit table with full validation (associativity,
/// identity, inverses, generation). Reserved for externally supplied
/// tables, hence the tight default cap.
pub fn from_table_checked(
    table: Vec<u32>,
    names: Vec<String>,
    gens: Vec<(String, u32)>,
) -> Result<FiniteGroup> {
    let order = names.len();
    if order > 512 {
        return Err(Error::CapExceeded(
            "explicit tables are validated exhaustively; order must be <= 512".into(),
        ));
    }
    for &v in &table {
        if v as usize >= order {
            return Err(Error::Group("table entry out of range".into()));
        }
    }
    let g = from_table_unchecked(table, names, gens, None)?;
    g.validate_full()?;
    Ok(g)
}

fn generator_words(
    table: &[u32],
    order: usize,
    gens: &[(String, u32)],
) -> Result<Vec<Vec<u32>>> {
    let mut words: Vec<Option<Vec<u32>>> = vec![None; order];
    words[0] = Some(Vec::new());
    let mut frontier = vec![0u32];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &x in &frontier {
            let base = words[x as usize].clone().unwrap();
            for (gi, &(_, gidx)) in gens.iter().enumerate() {
                let y = table[x as usize * order + gidx as usize];
                if words[y as usize].is_none() {
                    let mut w = base.clone();
                    w.push(gi as u32);
                    words[y as usize] = Some(w);
                    next.push(y);
                }
            }
        }
        frontier = next;
    }
    words
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::Group("generators do not generate the group".into()))
}

fn finish(
    table: Vec<u32>,
    names: Option<Vec<String>>,
    gens: Vec<(String, u32)>,
    words: Vec<Vec<u32>>,
    factor_gen_counts: Option<Vec<usize>>,
) -> Result<FiniteGroup> {
    let order = words.len();
    let mut inv = vec![u32::MAX; order];
    for a in 0..order {
        for b in 0..order {
            if table[a * order + b] == 0 {
                inv[a] = b as u32;
            }
        }
        if inv[a] == u32::MAX {
            return Err(Error::Group(format!("no inverse for element {a}")));
        }
    }
    let mut g = FiniteGroup {
        order,
        table,
        inv,
        names: Vec::new(),
        gens,
        gen_words: words,
        factor_gen_counts,
    };
    g.names = match names {
        Some(n) => {
            if n.len() != order {
                return Err(Error::Group("name list has wrong length".into()));
            }
            n
        }
        None => (0..order).map(|i| g.render_word(&g.gen_words[i])).collect(),
    };
    Ok(g)
}

/// Cyclic group of order n with generator `g` (or a custom name).
pub fn cyclic_named(n: usize, gen_name: &str) -> Result<FiniteGroup> {
    if n == 0 || n > DEFAULT_ORDER_CAP {
        return Err(Error::Group(format!("cyclic order {n} out of range")));
    }
    let order = n;
    let mut table = vec![0u32; order * order];
    for i in 0..order {
        for j in 0..order {
            table[i * order + j] = ((i + j) % order) as u32;
        }
    }
    let gens = if n == 1 { vec![] } else { vec![(gen_name.to_string(), 1u32)] };
    let words: Vec<Vec<u32>> = (0..order).map(|i| vec![0u32; i]).collect();
    let words = if n == 1 { vec![Vec::new()] } else { words };
    finish(table, None, gens, words, None)
}

pub fn cyclic(n: usize) -> Result<FiniteGroup> {
    cyclic_named(n, "g")
}

/// Dihedral group of order 2n: generators `a` of order n and `b` of
/// order 2 with b a b^{-1} = a^{-1}. Element a^i b^j has index i + n*j.
pub fn dihedral(n: usize) -> Result<FiniteGroup> {
    if n < 1 || 2 * n > DEFAULT_ORDER_CAP {
        return Err(Error::Group(format!("dihedral parameter {n} out of range")));
    }
    let order = 2 * n;
    let idx = |i: usize, j: usize| (i + n * j) as u32;
    let mut table = vec![0u32; order * order];
    for i1 in 0..n {
        for j1 in 0..2 {
            for i2 in 0..n {
                for j2 in 0..2 {
                    // a^{i1} b^{j1} a^{i2} b^{j2} = a^{i1 + (-1)^{j1} i2} b^{j1+j2}
                    let i = if j1 == 0 { (i1 + i2) % n } else { (i1 + n - i2 % n) % n };
                    let j = (j1 + j2) % 2;
                    table[idx(i1, j1) as usize * order + idx(i2, j2) as usize] = idx(i, j);
                }
            }
        }
    }
    let mut gens = Vec::new();
    if n > 1 {
        gens.push(("a".to_string(), idx(1, 0)));
    }
    gens.push(("b".to_string(), idx(0, 1)));
    let names = (0..order)
        .map(|k| {
            let (i, j) = (k % n, k / n);
            match (i, j) {
                (0, 0) => "1".to_string(),
                (0, 1) => "b".to_string(),
                (1, 0) => "a".to_string(),
                (i, 0) => format!("a^{i}"),
                (1, 1) => "a*b".to_string(),
                (i, 1) => format!("a^{i}*b"),
                _ => unreachable!(),
            }
        })
        .collect();
    from_table_unchecked(table, names, gens, None)
}

pub type Perm = Vec<u8>;

fn perm_mul(a: &Perm, b: &Perm) -> Perm {
    // a then b
    a.iter().map(|&x| b[x as usize]).collect()
}

fn perm_name(p: &Perm) -> String {
    // cycle notation on 0-based points
    let n = p.len();
    let mut seen = vec![false; n];
    let mut out = String::new();
    for s in 0..n {
        if seen[s] || p[s] as usize == s {
            seen[s] = true;
            continue;
        }
        out.push('(');
        let mut x = s;
        let mut first = true;
        while !seen[x] {
            seen[x] = true;
            if !first {
                out.push(' ');
            }
            out.push_str(&x.to_string());
            first = false;
            x = p[x] as usize;
        }
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

/// Permutation group generated by the given one-line images.
pub fn perm_group(gens: Vec<(String, Vec<usize>)>, cap: usize) -> Result<FiniteGroup> {
    if gens.is_empty() {
        return Err(Error::Group("permutation group needs at least one generator".into()));
    }
    let degree = gens[0].1.len();
    if degree == 0 || degree > 255 {
        return Err(Error::Group("permutation degree out of range".into()));
    }
    let mut cgens: Vec<(String, Perm)> = Vec::new();
    for (name, img) in gens {
        if img.len() != degree {
            return Err(Error::Group(format!("generator {name} has wrong degree")));
        }
        let mut check = vec![false; degree];
        for &x in &img {
            if x >= degree || check[x] {
                return Err(Error::Group(format!("generator {name} is not a permutation")));
            }
            check[x] = true;
        }
        cgens.push((name, img.iter().map(|&x| x as u8).collect()));
    }
    let identity: Perm = (0..degree as u8).collect();
    let concrete_gens: Vec<Perm> = cgens.iter().map(|(_, p)| p.clone()).collect();
    let mut g = from_concrete(cgens, identity.clone(), perm_mul, cap)?;
    // cycle-notation names read better than generator words here
    let names: Vec<String> = (0..g.order)
        .map(|i| {
            let mut p = identity.clone();
            for &gi in &g.gen_words[i] {
                p = perm_mul(&p, &concrete_gens[gi as usize]);
            }
            perm_name(&p)
        })
        .collect();
    g.names = names;
    Ok(g)
}

pub fn symmetric(n: usize) -> Result<FiniteGroup> {
    if n < 1 || n > 8 {
        return Err(Error::Group("symmetric group degree must be 1..=8".into()));
    }
    if n == 1 {
        return cyclic(1);
    }
    let transposition: Vec<usize> =
        (0..n).map(|i| if i == 0 { 1 } else if i == 1 { 0 } else { i }).collect();
    let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    perm_group(
        vec![("s".to_string(), transposition), ("c".to_string(), cycle)],
        DEFAULT_ORDER_CAP,
    )
}

pub fn alternating(n: usize) -> Result<FiniteGroup> {
    if n < 3 || n > 8 {
        return Err(Error::Group("alternating group degree must be 3..=8".into()));
    }
    let three_cycle: Vec<usize> =
        (0..n).map(|i| match i {
            0 => 1,
            1 => 2,
            2 => 0,
            i => i,
        }).collect();
    let long: Vec<usize> = if n % 2 == 1 {
        (0..n).map(|i| (i + 1) % n).collect()
    } else {
        // fix point 0, cycle the rest
        (0..n).map(|i| if i == 0 { 0 } else { i % (n - 1) + 1 }).collect()
    };
    if n == 3 {
        return perm_group(vec![("r".to_string(), three_cycle)], DEFAULT_ORDER_CAP);
    }
    perm_group(
        vec![("r".to_string(), three_cycle), ("c".to_string(), long)],
        DEFAULT_ORDER_CAP,
    )
}

fn disambiguate(names: &mut [Vec<(String, u32)>]) {
    let mut counts: HashMap<String, usize> = HashMap::new();
    for factor in names.iter() {
        for (n, _) in factor {
            *counts.entry(n.clone()).or_insert(0) += 1;
        }
    }
    for (fi, factor) in names.iter_mut().enumerate() {
        for (n, _) in factor.iter_mut() {
            if counts[n.as_str()] > 1 {
                *n = format!("{}{}", n, fi + 1);
            }
        }
    }
}

/// Direct product of the given factors, elements indexed mixed-radix with
/// the identity at 0. Generator names are suffixed with the factor
/// position when they collide.
pub fn direct_product(factors: &[FiniteGroup]) -> Result<FiniteGroup> {
    if factors.is_empty() {
        return Err(Error::Group("direct product needs at least one factor".into()));
    }
    let order: usize = factors.iter().map(|f| f.order()).product();
    if order > DEFAULT_ORDER_CAP {
        return Err(Error::CapExceeded(format!("direct product order {order} exceeds cap")));
    }
    let k = factors.len();
    let radices: Vec<usize> = factors.iter().map(|f| f.order()).collect();
    let decode = |mut x: usize| -> Vec<u32> {
        let mut coords = vec![0u32; k];
        for i in (0..k).rev() {
            coords[i] = (x % radices[i]) as u32;
            x /= radices[i];
        }
        coords
    };
    let encode = |coords: &[u32]| -> usize {
        coords.iter().zip(&radices).fold(0usize, |acc, (&c, &r)| acc * r + c as usize)
    };
    let mut table = vec![0u32; order * order];
    for x in 0..order {
        let cx = decode(x);
        for y in 0..order {
            let cy = decode(y);
            let cz: Vec<u32> =
                (0..k).map(|i| factors[i].mul(cx[i], cy[i])).collect();
            table[x * order + y] = encode(&cz) as u32;
        }
    }
    let names: Vec<String> = (0..order)
        .map(|x| {
            let cx = decode(x);
            let parts: Vec<&str> = (0..k)
                .filter(|&i| cx[i] != 0)
                .map(|i| factors[i].name(cx[i]))
                .collect();
            if parts.is_empty() {
                "1".to_string()
            } else {
                parts.join("*")
            }
        })
        .collect();
    let mut factor_gens: Vec<Vec<(String, u32)>> = Vec::new();
    for (i, f) in factors.iter().enumerate() {
        let gens = f
            .generators()
            .iter()
            .map(|(n, idx)| {
                let mut coords = vec![0u32; k];
                coords[i] = *idx;
                (n.clone(), encode(&coords) as u32)
            })
            .collect();
        factor_gens.push(gens);
    }
    disambiguate(&mut factor_gens);
    let counts: Vec<usize> = factor_gens.iter().map(|g| g.len()).collect();
    let gens: Vec<(String, u32)> = factor_gens.into_iter().flatten().collect();
    from_table_unchecked(table, names, gens, Some(counts))
}

/// Semidirect product C ⋉ Q. The action sends each generator of C to an
/// automorphism of Q, given by the images of Q's generators (element
/// indices in Q). Validated: each map extends to an automorphism and the
/// assignment extends to a homomorphism C -> Aut(Q).
pub fn semidirect(
    c: &FiniteGroup,
    q: &FiniteGroup,
    action_on_gens: &[Vec<u32>],
) -> Result<FiniteGroup> {
    let order = c.order() * q.order();
    if order > DEFAULT_ORDER_CAP {
        return Err(Error::CapExceeded(format!("semidirect order {order} exceeds cap")));
    }
    if action_on_gens.len() != c.generators().len() {
        return Err(Error::Group(
            "action table must have one row per generator of the acting group".into(),
        ));
    }
    // extend each generator action to all of Q via generator words
    let mut gen_autos: Vec<Vec<u32>> = Vec::new();
    for (row, images) in action_on_gens.iter().enumerate() {
        if images.len() != q.generators().len() {
            return Err(Error::Group(format!(
                "action row {row} must list an image per generator of Q"
            )));
        }
        let auto = extend_to_endomorphism(q, images)?;
        let mut seen = vec![false; q.order()];
        for &v in &auto {
            seen[v as usize] = true;
        }
        if seen.iter().any(|&s| !s) {
            return Err(Error::Group(format!("action row {row} is not an automorphism")));
        }
        gen_autos.push(auto);
    }
    // automorphism attached to every c, via c's generator word
    let id_auto: Vec<u32> = (0..q.order() as u32).collect();
    let compose = |f: &[u32], g: &[u32]| -> Vec<u32> {
        // apply f then g
        f.iter().map(|&x| g[x as usize]).collect()
    };
    let mut autos: Vec<Vec<u32>> = Vec::with_capacity(c.order());
    for x in 0..c.order() {
        // alpha(g0*g1*...*gk) applies alpha(gk) first
        let mut a = id_auto.clone();
        for &gi in c.gen_words[x].iter().rev() {
            a = compose(&a, &gen_autos[gi as usize]);
        }
        autos.push(a);
    }
    // the word-wise extension must be a homomorphism C -> Aut(Q)
    for x in 0..c.order() as u32 {
        for y in 0..c.order() as u32 {
            let xy = c.mul(x, y) as usize;
            let lhs = &autos[xy];
            let rhs = compose(&autos[x as usize], &autos[y as usize]);
            if *lhs != rhs {
                return Err(Error::Group(
                    "generator action does not extend to a homomorphism into Aut(Q)".into(),
                ));
            }
        }
    }
    // element (c, q) indexed c*|Q| + q; product
    // (c1 q1)(c2 q2) = (c1 c2, alpha(c2^{-1})(q1) q2)
    let qn = q.order();
    let mut table = vec![0u32; order * order];
    for c1 in 0..c.order() as u32 {
        for q1 in 0..qn as u32 {
            let i = c1 as usize * qn + q1 as usize;
            for c2 in 0..c.order() as u32 {
                let act = &autos[c.inv(c2) as usize];
                for q2 in 0..qn as u32 {
                    let j = c2 as usize * qn + q2 as usize;
                    let cc = c.mul(c1, c2) as usize;
                    let qq = q.mul(act[q1 as usize], q2) as usize;
                    table[i * order + j] = (cc * qn + qq) as u32;
                }
            }
        }
    }
    let names: Vec<String> = (0..order)
        .map(|x| {
            let (ci, qi) = ((x / qn) as u32, (x % qn) as u32);
            match (ci, qi) {
                (0, 0) => "1".to_string(),
                (0, _) => q.name(qi).to_string(),
                (_, 0) => c.name(ci).to_string(),
                _ => format!("{}*{}", c.name(ci), q.name(qi)),
            }
        })
        .collect();
    let mut factor_gens = vec![
        c.generators()
            .iter()
            .map(|(n, i)| (n.clone(), *i * qn as u32))
            .collect::<Vec<_>>(),
        q.generators().iter().map(|(n, i)| (n.clone(), *i)).collect::<Vec<_>>(),
    ];
    disambiguate(&mut factor_gens);
    let gens: Vec<(String, u32)> = factor_gens.into_iter().flatten().collect();
    from_table_unchecked(table, names, gens, None)
}

/// Extend generator images to an endomorphism table via generator words;
/// errors when the extension is inconsistent.
pub fn extend_to_endomorphism(q: &FiniteGroup, gen_images: &[u32]) -> Result<Vec<u32>> {
    let mut image = vec![u32::MAX; q.order()];
    image[0] = 0;
    for x in 0..q.order() {
        let mut v = 0u32;
        for &gi in &q.gen_words[x] {
            v = q.mul(v, gen_images[gi as usize]);
        }
        image[x] = v;
    }
    // consistency: multiplicativity
    for a in 0..q.order() as u32 {
        for b in 0..q.order() as u32 {
            if image[q.mul(a, b) as usize] != q.mul(image[a as usize], image[b as usize]) {
                return Err(Error::Group(
                    "generator images do not define an endomorphism".into(),
                ));
            }
        }
    }
    Ok(image)
}

/// Fibered power over a subgroup: tuples (h1..ht) of elements of `h`
/// whose components lie in a common left coset of `l`.
pub fn fibered(h: &GroupRef, l: &Subgroup, t: usize, cap: usize) -> Result<FiniteGroup> {
    fibered_with_tuples(h, l, t, cap).map(|(g, _)| g)
}

/// As [`fibered`], also returning the tuple carried by each element
/// index (tuples are sorted, so indices are reproducible).
pub fn fibered_with_tuples(
    h: &GroupRef,
    l: &Subgroup,
    t: usize,
    cap: usize,
) -> Result<(FiniteGroup, Vec<Vec<u32>>)> {
    if t == 0 {
        return Err(Error::Group("fibered power needs t >= 1".into()));
    }
    let index = h.order() / l.order();
    let order = index
        .checked_mul(l.order().checked_pow(t as u32).unwrap_or(usize::MAX))
        .unwrap_or(usize::MAX);
    if order > cap {
        return Err(Error::CapExceeded(format!(
            "fibered power has order {index}*{}^{t}; exceeds cap {cap}",
            l.order()
        )));
    }
    // enumerate: for each coset representative r and each tuple of l-elements,
    // the tuple (r*l1, ..., r*lt); collect sorted so the identity tuple is first
    let mut reps = Vec::new();
    let mut seen = vec![false; h.order()];
    for x in h.elements() {
        if seen[x as usize] {
            continue;
        }
        let mut coset: Vec<u32> = l.members().iter().map(|&m| h.mul(x, m)).collect();
        coset.sort_unstable();
        for &c in &coset {
            seen[c as usize] = true;
        }
        reps.push(coset[0]);
    }
    let lmem = l.members().to_vec();
    let mut tuples: Vec<Vec<u32>> = Vec::with_capacity(order);
    let per_coset = lmem.len().pow(t as u32);
    for &r in &reps {
        for code in 0..per_coset {
            let mut c = code;
            let mut tuple = Vec::with_capacity(t);
            for _ in 0..t {
                tuple.push(h.mul(r, lmem[c % lmem.len()]));
                c /= lmem.len();
            }
            tuples.push(tuple);
        }
    }
    tuples.sort_unstable();
    debug_assert!(tuples[0].iter().all(|&x| x == 0));
    let index_of: HashMap<Vec<u32>, u32> =
        tuples.iter().enumerate().map(|(i, t)| (t.clone(), i as u32)).collect();
    let n = tuples.len();
    let mut table = vec![0u32; n * n];
    for (i, a) in tuples.iter().enumerate() {
        for (j, b) in tuples.iter().enumerate() {
            let prod: Vec<u32> = a.iter().zip(b).map(|(&x, &y)| h.mul(x, y)).collect();
            table[i * n + j] = index_of[&prod];
        }
    }
    let names: Vec<String> = tuples
        .iter()
        .map(|t| {
            let parts: Vec<&str> = t.iter().map(|&x| h.name(x)).collect();
            format!("({})", parts.join(","))
        })
        .collect();
    // generators: diagonal images of h's generators plus per-coordinate
    // generators of l
    let mut gens: Vec<(String, u32)> = Vec::new();
    for (gname, gidx) in h.generators() {
        let tuple = vec![*gidx; t];
        gens.push((format!("d[{gname}]"), index_of[&tuple]));
    }
    for (pos, &lg) in l.small_generating_set().iter().enumerate() {
        for coord in 0..t {
            let mut tuple = vec![0u32; t];
            tuple[coord] = lg;
            gens.push((format!("l{}[{}]", pos, coord), index_of[&tuple]));
        }
    }
    let g = from_table_unchecked(table, names, gens, None)?;
    Ok((g, tuples))
}

/// Central product of `h` and `k`: quotient of the direct product by
/// {(c, iso(c)^{-1})} for an isomorphism of the centres given on all of
/// Z(h) element by element (indices in h mapped to indices in k).
pub fn central_product(
    h: &GroupRef,
    k: &GroupRef,
    iso: &HashMap<u32, u32>,
) -> Result<FiniteGroup> {
    let zh = super::centre(h);
    let zk = super::centre(k);
    if iso.len() != zh.order() {
        return Err(Error::Group("centre isomorphism must cover the whole centre".into()));
    }
    let mut hit = vec![false; k.order()];
    for (&a, &b) in iso {
        if !zh.contains(a) || !zk.contains(b) || hit[b as usize] {
            return Err(Error::Group("centre isomorphism is not a bijection of centres".into()));
        }
        hit[b as usize] = true;
    }
    if zh.order() != zk.order() {
        return Err(Error::Group("centres have different orders".into()));
    }
    for (&a1, &b1) in iso {
        for (&a2, &b2) in iso {
            if iso[&h.mul(a1, a2)] != k.mul(b1, b2) {
                return Err(Error::Group("centre map is not an isomorphism".into()));
            }
        }
    }
    let prod = Arc::new(direct_product(&[clone_group(h), clone_group(k)])?);
    // indices in prod: x*|k| + y
    let kn = k.order();
    let members: Vec<u32> =
        iso.iter().map(|(&c, &ci)| (c as usize * kn + k.inv(ci) as usize) as u32).collect();
    let n = Subgroup::generated(&prod, &members);
    if n.order() != zh.order() {
        return Err(Error::Group("identified centre subgroup has unexpected order".into()));
    }
    let (q, _) = quotient(&prod, &n)?;
    Ok(clone_group(&q))
}

pub(crate) fn clone_group(g: &FiniteGroup) -> FiniteGroup {
    FiniteGroup {
        order: g.order,
        table: g.table.clone(),
        inv: g.inv.clone(),
        names: g.names.clone(),
        gens: g.gens.clone(),
        gen_words: g.gen_words.clone(),
        factor_gen_counts: g.factor_gen_counts.clone(),
    }
}

/// Rename generators (by position) and rebuild derived element names.
pub fn rename_generators(g: &FiniteGroup, new_names: &[&str]) -> Result<FiniteGroup> {
    if new_names.len() != g.gens.len() {
        return Err(Error::Group("wrong number of generator names".into()));
    }
    let mut out = clone_group(g);
    for (pair, name) in out.gens.iter_mut().zip(new_names) {
        pair.0 = name.to_string();
    }
    out.names = (0..out.order).map(|i| out.render_word(&out.gen_words[i])).collect();
    Ok(out)
}

/// Quaternion group of order 8 (test fixture and lab input).
pub fn quaternion() -> FiniteGroup {
    // elements 1, i, j, k, -1, -i, -j, -k as (sign, axis)
    #[derive(Clone, PartialEq, Eq, Hash)]
    struct Q(bool, u8); // (negative?, axis 0=1,1=i,2=j,3=k)
    let mul = |a: &Q, b: &Q| -> Q {
        let (s1, x) = (a.0, a.1);
        let (s2, y) = (b.0, b.1);
        let (s3, z) = match (x, y) {
            (0, y) => (false, y),
            (x, 0) => (false, x),
            (x, y) if x == y => (true, 0),
            (1, 2) => (false, 3),
            (2, 3) => (false, 1),
            (3, 1) => (false, 2),
            (2, 1) => (true, 3),
            (3, 2) => (true, 1),
            (1, 3) => (true, 2),
            _ => unreachable!(),
        };
        Q(s1 ^ s2 ^ s3, z)
    };
    from_concrete(
        vec![("i".to_string(), Q(false, 1)), ("j".to_string(), Q(false, 2))],
        Q(false, 0),
        mul,
        16,
    )
    .expect("quaternion group")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{centre, monolith, DEFAULT_LATTICE_CAP};

    #[test]
    fn orders_of_standard_constructions() {
        assert_eq!(cyclic(12).unwrap().order(), 12);
        assert_eq!(dihedral(15).unwrap().order(), 30);
        assert_eq!(symmetric(4).unwrap().order(), 24);
        assert_eq!(alternating(5).unwrap().order(), 60);
        assert_eq!(quaternion().order(), 8);
    }

    #[test]
    fn direct_product_d3_d5() {
        let g = direct_product(&[dihedral(3).unwrap(), dihedral(5).unwrap()]).unwrap();
        assert_eq!(g.order(), 60);
        assert_eq!(g.generators().len(), 4);
        // generator names disambiguated
        let names: Vec<&str> = g.generators().iter().map(|(n, _)| n.as_str()).collect();
        assert_eq!(names, vec!["a1", "b1", "a2", "b2"]);
        g.validate_full().unwrap();
    }

    #[test]
    fn semidirect_builds_dihedral() {
        let c2 = cyclic_named(2, "b").unwrap();
        let z15 = cyclic_named(15, "a").unwrap();
        let inv_gen = z15.inv(1);
        let g = semidirect(&c2, &z15, &[vec![inv_gen]]).unwrap();
        assert_eq!(g.order(), 30);
        g.validate_full().unwrap();
        // isomorphic to D15: centre trivial, exponent 30
        let g = Arc::new(g);
        assert!(centre(&g).is_trivial());
        assert_eq!(g.exponent(), 30);
    }

    #[test]
    fn semidirect_rejects_bad_action() {
        let c2 = cyclic_named(2, "b").unwrap();
        let z9 = cyclic_named(9, "a").unwrap();
        // sends the generator to an element of smaller order: not an automorphism
        assert!(semidirect(&c2, &z9, &[vec![3]]).is_err());
        // order-3 map attached to an involution: not a homomorphism into Aut(Q)
        let z7 = cyclic_named(7, "a").unwrap();
        assert!(semidirect(&c2, &z7, &[vec![2]]).is_err());
    }

    #[test]
    fn fibered_power_full_subgroup() {
        let d4 = Arc::new(dihedral(4).unwrap());
        let whole = Subgroup::whole(&d4);
        let q = fibered(&d4, &whole, 3, 1024).unwrap();
        assert_eq!(q.order(), 512);
    }

    #[test]
    fn fibered_power_proper_subgroup() {
        let d4 = Arc::new(dihedral(4).unwrap());
        let a = d4.element_by_name("a").unwrap();
        let l = Subgroup::generated(&d4, &[a]);
        let q = fibered(&d4, &l, 2, 1024).unwrap();
        // |H/L| * |L|^2 = 2 * 16
        assert_eq!(q.order(), 32);
        q.validate_full().unwrap();
    }

    #[test]
    fn central_product_of_d4s() {
        let d4a = Arc::new(dihedral(4).unwrap());
        let d4b = Arc::new(dihedral(4).unwrap());
        let za = centre(&d4a);
        let mut iso = HashMap::new();
        for (&x, &y) in za.members().iter().zip(centre(&d4b).members()) {
            iso.insert(x, y);
        }
        let g = central_product(&d4a, &d4b, &iso).unwrap();
        assert_eq!(g.order(), 32);
        let g = Arc::new(g);
        assert_eq!(centre(&g).order(), 2);
    }

    #[test]
    fn quaternion_structure() {
        let q8 = Arc::new(quaternion());
        q8.validate_full().unwrap();
        assert_eq!(centre(&q8).order(), 2);
        let m = monolith(&q8, DEFAULT_LATTICE_CAP).unwrap();
        assert_eq!(m.order(), 2);
    }

    #[test]
    fn table_kind_rejects_garbage() {
        // 2x2 "table" that is not associative / has no identity row
        let table = vec![1u32, 1, 1, 1];
        let names = vec!["1".into(), "x".into()];
        assert!(from_table_checked(table, names, vec![("x".into(), 1)]).is_err());
    }
}
