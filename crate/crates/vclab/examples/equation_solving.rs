//! Parse and exhaustively solve word equations over a finite group,
//! including typed (multi-sort) equations and their translation.
//!
//!     cargo run --example equation_solving

use std::collections::HashMap;

use vclab::group::Subgroup;
use vclab::words::{
    parse_equation, solve, translate_multisort, SolveOutcome, DEFAULT_SOLVE_CAP,
};

fn main() -> vclab::Result<()> {
    let (g, emb) = vclab::dihedral::worked_example_group()?;
    let whole = Subgroup::whole(&g);
    let diag = Subgroup::generated(&g, &[emb.a, emb.b]);
    let coeff: HashMap<String, u32> =
        [("a".to_string(), emb.a)].into_iter().collect();

    // a plain equation: the commutator word hits the rotation in G
    let eq = parse_equation("[x, y] = a")?;
    match solve(&eq, &g, &coeff, &whole, DEFAULT_SOLVE_CAP, true)? {
        SolveOutcome::Solved(asg) => {
            let pretty: Vec<String> =
                asg.iter().map(|(v, &i)| format!("{v} = {}", g.name(i))).collect();
            println!("[x,y] = a over G: {}", pretty.join(", "));
        }
        other => println!("[x,y] = a over G: {}", other.label()),
    }

    // a typed equation and its plain translation
    let eq = parse_equation("x:[2] y:[3] x:[2] y:[3] = a^10")?;
    let translated = translate_multisort(&eq, 15)?;
    println!("typed form:      {} = {}", eq.lhs.render(), eq.rhs.render());
    println!("translated form: {} = {}", translated.lhs.render(), translated.rhs.render());
    let native = solve(&eq, &g, &coeff, &diag, DEFAULT_SOLVE_CAP, true)?;
    let plain = solve(&translated, &g, &coeff, &diag, DEFAULT_SOLVE_CAP, true)?;
    println!("typed solver: {}, translated solver: {}", native.label(), plain.label());

    // the bundled separating equation is unsolvable over the diagonal
    // subgroup: a completed search is a certificate
    let text = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/fixtures/eq15.txt"
    ))?;
    let eq = parse_equation(text.trim())?;
    let coeff: HashMap<String, u32> = eq
        .lhs
        .letters
        .iter()
        .chain(eq.rhs.letters.iter())
        .filter_map(|l| g.element_by_name(&l.symbol).map(|i| (l.symbol.clone(), i)))
        .collect();
    match solve(&eq, &g, &coeff, &diag, DEFAULT_SOLVE_CAP, true)? {
        SolveOutcome::Absent => {
            println!("bundled equation over the diagonal subgroup: ABSENT (complete search)")
        }
        other => println!("bundled equation: unexpected {}", other.label()),
    }
    Ok(())
}
