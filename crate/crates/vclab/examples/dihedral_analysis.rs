//! Dihedral decomposition end to end: split an overgroup as C ⋉ Q,
//! decompose Q into character components, test the full-order component
//! condition, and either build the retraction it guarantees or generate
//! the typed equation separating the two groups.
//!
//!     cargo run --example dihedral_analysis

use vclab::dihedral::{
    decompose, full_order_component, generate_equation, run_worked_example, EquationNaming,
};

fn main() -> vclab::Result<()> {
    // the failing side: the diagonal dihedral subgroup of a product
    let (g, emb) = vclab::dihedral::worked_example_group()?;
    let b3 = g.element_by_name("b3").unwrap();
    let b5 = g.element_by_name("b5").unwrap();
    let ctx = decompose(&g, 15, Some(vec![b3, b5]))?;
    println!(
        "decomposition: |Q| = {}, complement rank {}, component sizes {:?}",
        ctx.q.order(),
        ctx.rank(),
        ctx.components.iter().map(|c| c.len()).collect::<Vec<_>>()
    );
    let verdict = full_order_component(&ctx, &emb)?;
    println!(
        "full-order component condition: {} (component orders {:?}, need {})",
        verdict.holds,
        verdict.orders.iter().map(|&(_, o)| o).collect::<Vec<_>>(),
        verdict.full_order
    );

    let naming = EquationNaming {
        x_names: vec!["x3".into(), "x5".into()],
        y_names: [(1usize, "y3".to_string()), (2usize, "y5".to_string())].into(),
        rhs_name: Some("a".into()),
    };
    let eq = generate_equation(&ctx, &emb, &naming)?;
    println!("typed equation:      {} = {}", eq.equation.lhs.render(), eq.equation.rhs.render());
    println!("translated equation: {} = {}", eq.translated.lhs.render(), g.name(eq.rhs_element));

    // the whole case study: witness evaluation, exhaustive unsolvability,
    // case split, retraction verdict, transcription comparison
    let report = run_worked_example()?;
    println!("case study: {report:#?}");
    Ok(())
}
