//! Group specification documents (JSON) and subgroup selectors: the file
//! formats the command line consumes.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::group::{build, GroupRef, Subgroup};
use crate::words::evaluate_constant;

#[derive(Clone, Debug, Deserialize)]
pub struct PermGen {
    pub name: String,
    pub image: Vec<usize>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct TableGen {
    pub name: String,
    pub index: u32,
}

/// A structured description of a finite group.
#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GroupSpec {
    Cyclic {
        n: usize,
        #[serde(default)]
        gen_name: Option<String>,
    },
    Dihedral {
        n: usize,
    },
    Symmetric {
        n: usize,
    },
    Alternating {
        n: usize,
    },
    Perm {
        generators: Vec<PermGen>,
    },
    Table {
        names: Vec<String>,
        table: Vec<Vec<u32>>,
        generators: Vec<TableGen>,
    },
    DirectProduct {
        factors: Vec<GroupSpec>,
    },
    Semidirect {
        c: Box<GroupSpec>,
        q: Box<GroupSpec>,
        /// one row per generator of c: images of q's generators, written
        /// as words in q's generator names
        action: Vec<Vec<String>>,
    },
    Quotient {
        g: Box<GroupSpec>,
        n: String,
    },
    Fibered {
        h: Box<GroupSpec>,
        l: String,
        t: usize,
    },
    CentralProduct {
        h: Box<GroupSpec>,
        h2: Box<GroupSpec>,
        /// centre identification on a generating set: pairs of words
        /// (in h, in h2)
        iso: Vec<(String, String)>,
    },
    /// generators renamed on top of an inner spec
    Rename {
        inner: Box<GroupSpec>,
        names: Vec<String>,
    },
}

impl GroupSpec {
    pub fn from_json(text: &str) -> Result<GroupSpec> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn build(&self, cap: usize) -> Result<GroupRef> {
        Ok(Arc::new(self.build_raw(cap)?))
    }

    fn build_raw(&self, cap: usize) -> Result<crate::FiniteGroup> {
        match self {
            GroupSpec::Cyclic { n, gen_name } => {
                check_cap(*n, cap)?;
                build::cyclic_named(*n, gen_name.as_deref().unwrap_or("g"))
            }
            GroupSpec::Dihedral { n } => {
                check_cap(2 * n, cap)?;
                build::dihedral(*n)
            }
            GroupSpec::Symmetric { n } => build::symmetric(*n),
            GroupSpec::Alternating { n } => build::alternating(*n),
            GroupSpec::Perm { generators } => {
                let gens = generators.iter().map(|g| (g.name.clone(), g.image.clone())).collect();
                build::perm_group(gens, cap)
            }
            GroupSpec::Table { names, table, generators } => {
                let flat: Vec<u32> = table.iter().flatten().copied().collect();
                let gens = generators.iter().map(|g| (g.name.clone(), g.index)).collect();
                build::from_table_checked(flat, names.clone(), gens)
            }
            GroupSpec::DirectProduct { factors } => {
                let built: Result<Vec<_>> =
                    factors.iter().map(|f| f.build_raw(cap)).collect();
                build::direct_product(&built?)
            }
            GroupSpec::Semidirect { c, q, action } => {
                let cg = c.build_raw(cap)?;
                let qg = q.build_raw(cap)?;
                let mut rows = Vec::new();
                for row in action {
                    let mut images = Vec::new();
                    for word_text in row {
                        let w = crate::words::parse_word(word_text)?;
                        images.push(evaluate_constant(&w, &qg)?);
                    }
                    rows.push(images);
                }
                build::semidirect(&cg, &qg, &rows)
            }
            GroupSpec::Quotient { g, n } => {
                let gg = g.build(cap)?;
                let sub = resolve_subgroup(&gg, n)?;
                let (q, _) = crate::group::quotient(&gg, &sub)?;
                Ok(build::clone_group(&q))
            }
            GroupSpec::Fibered { h, l, t } => {
                let hg = h.build(cap)?;
                let sub = resolve_subgroup(&hg, l)?;
                build::fibered(&hg, &sub, *t, cap)
            }
            GroupSpec::CentralProduct { h, h2, iso } => {
                let hg = h.build(cap)?;
                let kg = h2.build(cap)?;
                let zh = crate::group::centre(&hg);
                let zk = crate::group::centre(&kg);
                // extend the generating pairs multiplicatively
                let mut map: HashMap<u32, u32> = HashMap::new();
                map.insert(0, 0);
                let mut pairs = Vec::new();
                for (wh, wk) in iso {
                    let a = evaluate_constant(&crate::words::parse_word(wh)?, &hg)?;
                    let b = evaluate_constant(&crate::words::parse_word(wk)?, &kg)?;
                    if !zh.contains(a) || !zk.contains(b) {
                        return Err(Error::Spec(
                            "centre identification uses non-central elements".into(),
                        ));
                    }
                    pairs.push((a, b));
                }
                let mut grew = true;
                while grew {
                    grew = false;
                    let snapshot: Vec<(u32, u32)> =
                        map.iter().map(|(&a, &b)| (a, b)).collect();
                    for &(a, b) in &snapshot {
                        for &(pa, pb) in &pairs {
                            let na = hg.mul(a, pa);
                            let nb = kg.mul(b, pb);
                            match map.get(&na) {
                                None => {
                                    map.insert(na, nb);
                                    grew = true;
                                }
                                Some(&existing) if existing != nb => {
                                    return Err(Error::Spec(
                                        "centre identification is inconsistent".into(),
                                    ))
                                }
                                _ => {}
                            }
                        }
                    }
                }
                if map.len() != zh.order() {
                    return Err(Error::Spec(
                        "centre identification does not cover the centre".into(),
                    ));
                }
                build::central_product(&hg, &kg, &map)
            }
            GroupSpec::Rename { inner, names } => {
                let g = inner.build_raw(cap)?;
                let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
                build::rename_generators(&g, &refs)
            }
        }
    }
}

fn check_cap(order: usize, cap: usize) -> Result<()> {
    if order > cap {
        return Err(Error::CapExceeded(format!("requested order {order} exceeds cap {cap}")));
    }
    Ok(())
}

/// Resolve a subgroup selector:
/// `whole` | `trivial` | `centre` | `squares` | `diagonal[-label]` |
/// `gen:WORD[,WORD...]` | `elements:i,j,...`
pub fn resolve_subgroup(g: &GroupRef, selector: &str) -> Result<Subgroup> {
    let s = selector.trim();
    if s == "whole" {
        return Ok(Subgroup::whole(g));
    }
    if s == "trivial" {
        return Ok(Subgroup::trivial(g));
    }
    if s == "centre" || s == "center" {
        return Ok(crate::group::centre(g));
    }
    if s == "squares" {
        return Ok(crate::group::squares_subgroup(g));
    }
    if s == "diagonal" || s.starts_with("diagonal-") {
        let counts = g.factor_gen_counts().ok_or_else(|| {
            Error::Spec("diagonal selector needs a direct product".into())
        })?;
        let per_factor = counts[0];
        if counts.iter().any(|&c| c != per_factor) {
            return Err(Error::Spec(
                "diagonal selector needs factors with matching generator counts".into(),
            ));
        }
        let gens = g.generators();
        let mut seed = Vec::new();
        for k in 0..per_factor {
            let mut prod = g.identity();
            let mut offset = 0;
            for &c in counts {
                prod = g.mul(prod, gens[offset + k].1);
                offset += c;
            }
            seed.push(prod);
        }
        return Ok(Subgroup::generated(g, &seed));
    }
    if let Some(rest) = s.strip_prefix("gen:") {
        let mut seed = Vec::new();
        for part in rest.split(',') {
            let w = crate::words::parse_word(part)?;
            seed.push(evaluate_constant(&w, g)?);
        }
        return Ok(Subgroup::generated(g, &seed));
    }
    if let Some(rest) = s.strip_prefix("elements:") {
        let mut members = Vec::new();
        for part in rest.split(',') {
            let idx: u32 = part
                .trim()
                .parse()
                .map_err(|_| Error::Spec(format!("bad element index `{part}`")))?;
            members.push(idx);
        }
        return Subgroup::from_members(g.clone(), members);
    }
    Err(Error::Spec(format!("unknown subgroup selector `{selector}`")))
}

/// Load a spec from a file path.
pub fn load_spec(path: &std::path::Path) -> Result<GroupSpec> {
    let text = std::fs::read_to_string(path)?;
    GroupSpec::from_json(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_ORDER_CAP;

    #[test]
    fn build_d3xd5_from_json() {
        let text = r#"{
            "kind": "rename",
            "names": ["a3", "b3", "a5", "b5"],
            "inner": {
                "kind": "direct_product",
                "factors": [
                    {"kind": "dihedral", "n": 3},
                    {"kind": "dihedral", "n": 5}
                ]
            }
        }"#;
        let spec = GroupSpec::from_json(text).unwrap();
        let g = spec.build(DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(g.order(), 60);
        let diag = resolve_subgroup(&g, "diagonal-d15").unwrap();
        assert_eq!(diag.order(), 30);
    }

    #[test]
    fn build_semidirect_from_json() {
        let text = r#"{
            "kind": "semidirect",
            "c": {"kind": "cyclic", "n": 2, "gen_name": "b"},
            "q": {
                "kind": "direct_product",
                "factors": [
                    {"kind": "cyclic", "n": 15, "gen_name": "u"},
                    {"kind": "cyclic", "n": 5, "gen_name": "v"}
                ]
            },
            "action": [["u^-1", "v^-1"]]
        }"#;
        let spec = GroupSpec::from_json(text).unwrap();
        let g = spec.build(DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(g.order(), 150);
        let h = resolve_subgroup(&g, "gen:b,u").unwrap();
        assert_eq!(h.order(), 30);
    }

    #[test]
    fn build_quotient_and_fibered() {
        let text = r#"{
            "kind": "fibered",
            "h": {"kind": "dihedral", "n": 4},
            "l": "whole",
            "t": 3
        }"#;
        let g = GroupSpec::from_json(text).unwrap().build(DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(g.order(), 512);

        let text = r#"{
            "kind": "quotient",
            "g": {"kind": "dihedral", "n": 4},
            "n": "centre"
        }"#;
        let g = GroupSpec::from_json(text).unwrap().build(DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(g.order(), 4);
    }

    #[test]
    fn build_central_product_from_json() {
        let text = r#"{
            "kind": "central_product",
            "h": {"kind": "dihedral", "n": 4},
            "h2": {"kind": "dihedral", "n": 4},
            "iso": [["a^2", "a^2"]]
        }"#;
        let g = GroupSpec::from_json(text).unwrap().build(DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(g.order(), 32);
    }

    #[test]
    fn bad_selectors_error() {
        let g = GroupSpec::Dihedral { n: 4 }.build(DEFAULT_ORDER_CAP).unwrap();
        assert!(resolve_subgroup(&g, "diagonal").is_err());
        assert!(resolve_subgroup(&g, "nonsense").is_err());
        assert!(resolve_subgroup(&g, "gen:zzz").is_err());
    }
}
