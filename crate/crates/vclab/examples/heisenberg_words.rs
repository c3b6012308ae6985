//! Symbolic word maps on integer unitriangular matrices: extract the
//! linear form and bilinear matrix, check skew-symmetry on the kernel,
//! and compare the gcd description of the image's centre slice with box
//! enumeration.
//!
//!     cargo run --example heisenberg_words

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use vclab::heisenberg::{central_product_closedness, extract, verbal_image_structure};
use vclab::words::parse_word;

fn main() -> vclab::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for (text, arity) in [("[t1,t2]", 2usize), ("t1^2", 1), ("t1 t2 t1^-1 t2", 2)] {
        let w = parse_word(text)?;
        let bd = extract(&w, arity)?;
        let f: Vec<Vec<i128>> =
            (0..arity).map(|i| (0..arity).map(|j| bd.f[(i, j)]).collect()).collect();
        println!("{text}: l = {:?}, F = {:?}", bd.l, f);
        println!("  skew on ker l: {}", bd.skew_on_kernel(50, &mut rng));
        let r = verbal_image_structure(&w, arity, 5, &mut rng)?;
        println!(
            "  image meets the centre in {}Z; box agreement: {}, coset union: {}",
            r.centre_gcd, r.box_agreement, r.coset_union_verified
        );
    }

    // the central product of two copies: sampled instances of the
    // closedness argument, replayed through the gcd description
    let words: Vec<_> = ["[t1,t2]", "t1", "t1^2"]
        .iter()
        .map(|t| parse_word(t).unwrap())
        .collect();
    let report = central_product_closedness(&words, 2, 50, 4, &mut rng)?;
    println!(
        "central product closedness: {} sampled instances, {} failures",
        report.samples, report.failures
    );
    Ok(())
}
