//! Exhaustive retraction search: a completed negative search is a
//! certificate, distinct from an abandoned one.
//!
//!     cargo run --example retraction_search

use std::sync::Arc;

use vclab::group::build::{cyclic, dihedral, direct_product};
use vclab::group::retract::{find_retraction, RetractionOutcome, DEFAULT_RETRACTION_CAP};
use vclab::group::Subgroup;

fn main() -> vclab::Result<()> {
    // coordinate factors always retract
    let g = Arc::new(direct_product(&[dihedral(4)?, cyclic(3)?])?);
    let members: Vec<u32> = (0..8u32).map(|x| x * 3).collect();
    let h = Subgroup::from_members(g.clone(), members)?;
    match find_retraction(&g, &h, DEFAULT_RETRACTION_CAP) {
        RetractionOutcome::Found(rho) => {
            rho.validate_retraction(&h)?;
            println!("factor subgroup: retraction found and validated");
        }
        other => println!("factor subgroup: {}", other.label()),
    }

    // the diagonal dihedral subgroup of the product admits none
    let (g, emb) = vclab::dihedral::worked_example_group()?;
    let h = emb.validate(&g)?;
    match find_retraction(&g, &h, DEFAULT_RETRACTION_CAP) {
        RetractionOutcome::Absent => {
            println!("diagonal subgroup: ABSENT - the search space was exhausted")
        }
        other => println!("diagonal subgroup: {}", other.label()),
    }

    // a cap that is too small yields UNKNOWN, never a false ABSENT
    match find_retraction(&g, &h, 16) {
        RetractionOutcome::Unknown(why) => println!("tiny cap: UNKNOWN ({why})"),
        other => println!("tiny cap: {}", other.label()),
    }
    Ok(())
}
