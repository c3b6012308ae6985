//! The fibered-quotient construction: quotient a fibered power by a code
//! sitting inside copies of the central socle. The diagonal subgroup is
//! verbally closed by the code's vanishing property; whether it retracts
//! is measured, not assumed.
//!
//!     cargo run --example centre_counterexample

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use vclab::centre_lab::{CodeSource, FiberedQuotient, DEFAULT_EXPLICIT_CAP};
use vclab::group::build::dihedral;
use vclab::group::retract::RetractionOutcome;

fn main() -> vclab::Result<()> {
    let d4 = Arc::new(dihedral(4)?);
    let mut rng = ChaCha8Rng::seed_from_u64(42);

    // explicit: three copies, the even-weight code over the centre
    let fq = FiberedQuotient::build(
        &d4,
        None,
        2,
        CodeSource::Explicit { t: 3, rows: vec![vec![1, 1, 0], vec![1, 0, 1]] },
        DEFAULT_EXPLICIT_CAP,
    )?;
    println!("explicit t = 3: |G| = {}, diagonal injective: {}", fq.order(), fq.diagonal_injective());
    let mech = fq.mechanism_samples(300, 2, 10, &mut rng)?;
    println!("closedness mechanism: {} samples, failures: {:?}", mech.samples_checked, mech.failure);
    let closure = fq.explicit_verbal_closure(2, 100_000, &mut rng)?;
    println!("verbally closed up to 2 variables: {}", closure.closed_up_to_bound());
    match fq.retraction_verdict(1024) {
        RetractionOutcome::Absent => {
            println!("retraction: ABSENT - already at t = 3 the diagonal copy is not a retract")
        }
        other => println!("retraction: {}", other.label()),
    }

    // code parameters: k = number of subgroups, t grows to 2^n - 1; the
    // quotient is handled through tuple normal forms
    let fq = FiberedQuotient::build(&d4, None, 2, CodeSource::Paper, DEFAULT_EXPLICIT_CAP)?;
    println!(
        "code parameters: k = {:?}, t = {}, code rank = {}, |G| = 2^{}",
        fq.k,
        fq.t,
        fq.code.rank(),
        fq.order().bits() - 1
    );
    let mech = fq.mechanism_samples(50, 2, 8, &mut rng)?;
    println!("mechanism at full size: {} samples, failures: {:?}", mech.samples_checked, mech.failure);
    match fq.retraction_verdict(1024) {
        RetractionOutcome::Unknown(why) => println!("retraction: UNKNOWN ({why})"),
        other => println!("retraction: {}", other.label()),
    }
    Ok(())
}
