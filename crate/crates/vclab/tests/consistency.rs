//! Cross-module consistency echoes: facts one lab certifies must show up
//! in another lab's measurements.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use vclab::group::build::{alternating, cyclic, dihedral, direct_product};
use vclab::group::retract::{find_retraction, RetractionOutcome, DEFAULT_RETRACTION_CAP};
use vclab::group::{Subgroup, DEFAULT_LATTICE_CAP};
use vclab::structure::has_nonabelian_monolith;
use vclab::wordmaps::{decide_verbally_closed, probe_word, DEFAULT_MAP_CAP};
use vclab::words::parse_word;

#[test]
fn nonabelian_monolith_group_retracts_from_variety_overgroup() {
    // the certificate predicts a retraction from any overgroup satisfying
    // the group's identities; echo it on a product with a Klein factor
    let a5 = Arc::new(alternating(5).unwrap());
    assert!(has_nonabelian_monolith(&a5, DEFAULT_LATTICE_CAP).unwrap());
    let g = Arc::new(
        direct_product(&[
            alternating(5).unwrap(),
            direct_product(&[cyclic(2).unwrap(), cyclic(2).unwrap()]).unwrap(),
        ])
        .unwrap(),
    );
    assert_eq!(g.order(), 240);
    let members: Vec<u32> = (0..60u32).map(|x| x * 4).collect();
    let h = Subgroup::from_members(g.clone(), members).unwrap();
    match find_retraction(&g, &h, DEFAULT_RETRACTION_CAP) {
        RetractionOutcome::Found(rho) => rho.validate_retraction(&h).unwrap(),
        other => panic!("expected FOUND, got {}", other.label()),
    }
}

#[test]
fn retract_implies_bounded_verbal_closure() {
    // a subgroup with a retraction must pass every bounded closure probe
    let g = Arc::new(direct_product(&[dihedral(4).unwrap(), cyclic(3).unwrap()]).unwrap());
    let members: Vec<u32> = (0..8u32).map(|x| x * 3).collect();
    let h = Subgroup::from_members(g.clone(), members).unwrap();
    assert!(matches!(
        find_retraction(&g, &h, DEFAULT_RETRACTION_CAP),
        RetractionOutcome::Found(_)
    ));
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let report = decide_verbally_closed(&g, &h, 2, DEFAULT_MAP_CAP, &[], 0, &mut rng).unwrap();
    assert!(report.closed_up_to_bound(), "{report:?}");
}

#[test]
fn diagonal_dihedral_subgroup_is_not_closed() {
    // the generated separating word, probed exhaustively, exhibits a
    // value reached over the product but not over the diagonal subgroup
    let (g, emb) = vclab::dihedral::worked_example_group().unwrap();
    let h = emb.validate(&g).unwrap();
    let text = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/fixtures/eq15.txt"
    ))
    .unwrap();
    let lhs = text.split('=').next().unwrap();
    let word = parse_word(lhs.trim()).unwrap();
    let witness = probe_word(&g, &h, &word).unwrap();
    assert!(witness.is_some(), "expected a witness value");
    assert!(h.contains(witness.unwrap()));
}

#[test]
fn reports_are_deterministic_for_a_fixed_seed() {
    use clap::Parser;
    let run_once = || {
        let cli = vclab::cli::Cli::parse_from([
            "vclab",
            "--seed",
            "7",
            "heisenberg-word",
            "--word",
            "[t1,t2]",
            "--arity",
            "2",
            "--box",
            "4",
        ]);
        let mut report = vclab::cli::run(cli).unwrap();
        report.timings_ms.clear();
        report.render_json()
    };
    assert_eq!(run_once(), run_once());
}
