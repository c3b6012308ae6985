//! Bounded verbal-closedness probes: enumerate every word map up to an
//! arity bound by closing the coordinate projections under pointwise
//! product, then compare images over group tuples and subgroup tuples.
//!
//!     cargo run --example verbal_closure

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use vclab::wordmaps::{
    decide_verbally_closed, enumerate_word_maps, probe_word, ArityVerdict, WordMapClosure,
    DEFAULT_MAP_CAP,
};
use vclab::words::parse_word;

fn main() -> vclab::Result<()> {
    let (g, emb) = vclab::dihedral::worked_example_group()?;
    let h = emb.validate(&g)?;

    // how many 1-variable word maps does the product carry?
    if let WordMapClosure::Complete(maps) = enumerate_word_maps(&g, 1, DEFAULT_MAP_CAP)? {
        println!("one-variable word maps: {} (power maps of the exponent)", maps.len());
    }

    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let report = decide_verbally_closed(&g, &h, 1, DEFAULT_MAP_CAP, &[], 0, &mut rng)?;
    for (s, verdict) in &report.per_arity {
        match verdict {
            ArityVerdict::Closed { maps_checked } => {
                println!("arity {s}: closed across all {maps_checked} maps")
            }
            ArityVerdict::NotClosed { witness_word, witness_value } => println!(
                "arity {s}: NOT closed, witness {} -> {}",
                witness_word.render(),
                g.name(*witness_value)
            ),
            ArityVerdict::SampledOnly { words_checked, .. } => {
                println!("arity {s}: closure overflowed, {words_checked} sampled words")
            }
        }
    }

    // a four-variable word the closure cannot reach, probed exhaustively:
    // the bundled separating equation witnesses failure
    let text = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/fixtures/eq15.txt"
    ))?;
    let lhs = text.split('=').next().unwrap();
    let word = parse_word(lhs.trim())?;
    match probe_word(&g, &h, &word)? {
        Some(value) => println!(
            "probe word reaches {} over the product but not over the diagonal subgroup",
            g.name(value)
        ),
        None => println!("probe word found nothing"),
    }
    println!("note: verdicts are bounded by the probed arity; nothing beyond is claimed");
    Ok(())
}
