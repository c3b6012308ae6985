//! Structure predicates: monoliths, the self-centralizing-core criteria,
//! the centre-direct-factor probe, and exhaustive module homogeneity
//! reports from fixture files.
//!
//!     cargo run --example structure_checks

use std::sync::Arc;

use vclab::group::build::{alternating, dihedral};
use vclab::group::{Subgroup, DEFAULT_LATTICE_CAP};
use vclab::structure::{
    centre_factor_report, check_module, core_criteria, has_nonabelian_monolith, GModule,
};

fn main() -> vclab::Result<()> {
    let a5 = Arc::new(alternating(5)?);
    println!(
        "simple alternating group has a nonabelian monolith: {}",
        has_nonabelian_monolith(&a5, DEFAULT_LATTICE_CAP)?
    );

    let a4 = Arc::new(alternating(4)?);
    let v4: Vec<u32> = a4.elements().filter(|&g| g == 0 || a4.element_order(g) == 2).collect();
    let v4 = Subgroup::from_members(a4.clone(), v4)?;
    let r = core_criteria(&a4, &v4, DEFAULT_LATTICE_CAP)?;
    println!(
        "core criteria on (A4, V4): self-centralizing {}, indecomposable {}, coprime {}",
        r.self_centralizing, r.indecomposable, r.coprime
    );

    // the order-8 dihedral group fails the centre-factor probe both ways
    let d4 = Arc::new(dihedral(4)?);
    let rep = centre_factor_report(&d4, &Subgroup::whole(&d4), DEFAULT_LATTICE_CAP)?;
    println!(
        "order-8 dihedral: complement found = {}, equivariant maps = {:?}",
        rep.complement_found(),
        rep.psi_exists
    );
    let d15 = Arc::new(dihedral(15)?);
    let rep = centre_factor_report(&d15, &Subgroup::whole(&d15), DEFAULT_LATTICE_CAP)?;
    println!("trivial-centre dihedral: complement found = {}", rep.complement_found());

    // module fixtures: every implication verified or vacuous, never violated
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/modules");
    let mut entries: Vec<_> = std::fs::read_dir(dir)?.map(|e| e.unwrap()).collect();
    entries.sort_by_key(|e| e.file_name());
    for entry in entries {
        let text = std::fs::read_to_string(entry.path())?;
        let module: GModule = serde_json::from_str(&text)?;
        let report = check_module(&module, 6561, 100_000)?;
        println!(
            "{:<24} submodules {:>3}, premise {}, homogeneous {}, layers {}, violated {}",
            entry.file_name().to_string_lossy(),
            report.submodule_count,
            report.premise_small_proper_submodules,
            report.homogeneous.label(),
            report.layers_simple_isomorphic.label(),
            report.any_violated()
        );
    }
    Ok(())
}
