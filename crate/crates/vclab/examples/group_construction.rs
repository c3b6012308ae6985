//! Build finite groups from code and from JSON spec documents, and query
//! their basic structure.
//!
//!     cargo run --example group_construction

use std::sync::Arc;

use vclab::group::build::{dihedral, direct_product, fibered, quaternion};
use vclab::group::{centre, monolith, normal_subgroups, Subgroup, DEFAULT_LATTICE_CAP};
use vclab::spec::GroupSpec;

fn main() -> vclab::Result<()> {
    // direct constructions
    let d15 = Arc::new(dihedral(15)?);
    println!("dihedral n=15: order {}, centre order {}", d15.order(), centre(&d15).order());

    let q8 = Arc::new(quaternion());
    let m = monolith(&q8, DEFAULT_LATTICE_CAP)?;
    println!(
        "quaternion group: order {}, monolith order {} (abelian: {})",
        q8.order(),
        m.order(),
        m.is_abelian()
    );

    let g = Arc::new(direct_product(&[dihedral(3)?, dihedral(5)?])?);
    println!("product of two dihedral groups: order {}", g.order());
    for n in normal_subgroups(&g, DEFAULT_LATTICE_CAP)? {
        if n.order() > 1 && n.order() < g.order() {
            println!("  proper normal subgroup of order {}", n.order());
        }
    }

    // fibered power: tuples in a common coset of L
    let d4 = Arc::new(dihedral(4)?);
    let whole = Subgroup::whole(&d4);
    let cube = fibered(&d4, &whole, 3, 1024)?;
    println!("fibered cube of the order-8 dihedral group: order {}", cube.order());

    // the same shapes from a JSON document
    let spec = r#"{
        "kind": "semidirect",
        "c": {"kind": "cyclic", "n": 2, "gen_name": "b"},
        "q": {"kind": "cyclic", "n": 9, "gen_name": "a"},
        "action": [["a^-1"]]
    }"#;
    let d9 = GroupSpec::from_json(spec)?.build(20_000)?;
    println!("semidirect spec gives order {}: exponent {}", d9.order(), d9.exponent());
    Ok(())
}
