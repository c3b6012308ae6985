//! The polynomial evaluation code R inside C^t: every member vanishes on
//! some coordinate block, yet the code covers any k blocks, and the
//! untouched blocks complement it directly with an integer projection.
//!
//!     cargo run --example approximation_code

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use vclab::approx::{CodeMode, PolynomialCode, DEFAULT_ENUM_CAP};

fn main() -> vclab::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for (p, d, k) in [(2u8, 1usize, 1usize), (3, 1, 1), (2, 2, 1)] {
        let code = PolynomialCode::construct(p, d, k, CodeMode::Paper, 1 << 22)?;
        println!(
            "p = {p}, d = {d}, k = {k}: r = {}, n = {}, t = {}, dim R = {}",
            code.r,
            code.n,
            code.t,
            code.dim()
        );
        let zero = code.check_zero_coordinate(DEFAULT_ENUM_CAP, 0, &mut rng);
        println!(
            "  every member vanishes somewhere: {} ({} checked)",
            zero.holds(),
            zero.members_checked
        );
        let interp = code.check_interpolation_exhaustive()?;
        println!(
            "  interpolation onto any {k} blocks: {} systems, {} failures",
            interp.systems, interp.failures
        );
        let rep = code.complement_and_projection(&(0..k).collect::<Vec<_>>())?;
        println!(
            "  complement blocks {:?} (excluded {:?}); projection exponents per block: {:?}",
            rep.complement_blocks, rep.j_prime, rep.exponents
        );
    }

    // below the sufficient parameters the vanishing property genuinely fails
    let code = PolynomialCode::construct(2, 1, 1, CodeMode::Explicit { r: 2, n: 2 }, 1 << 22)?;
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let zero = code.check_zero_coordinate(DEFAULT_ENUM_CAP, 0, &mut rng);
    println!(
        "explicit r = 2, n = 2 over F_2: parameters sufficient = {}, vanishing holds = {}",
        code.parameters_sufficient,
        zero.holds()
    );
    Ok(())
}
