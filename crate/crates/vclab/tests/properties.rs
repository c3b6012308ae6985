//! Property tests for the algebraic kernels: parser/renderer agreement,
//! multiplicativity of evaluation, exact unitriangular arithmetic, and
//! Smith-form validity with shrinking.

use std::collections::HashMap;
use std::sync::Arc;

use proptest::prelude::*;

use vclab::group::build::dihedral;
use vclab::heisenberg::Heis;
use vclab::intmat::{smith_normal_form, Mat};
use vclab::words::{evaluate, parse_word, Word};

fn arb_word() -> impl Strategy<Value = Word> {
    prop::collection::vec(("[xyz]", -3i64..=3i64), 0..12).prop_map(|letters| {
        let mut w = Word::one();
        for (sym, exp) in letters {
            w.push(&sym, exp);
        }
        w
    })
}

proptest! {
    #[test]
    fn render_parse_roundtrip(w in arb_word()) {
        let text = w.render();
        let parsed = parse_word(&text).unwrap();
        prop_assert_eq!(parsed, w);
    }

    #[test]
    fn evaluation_respects_concatenation(
        u in arb_word(),
        v in arb_word(),
        xi in 0u32..8,
        yi in 0u32..8,
        zi in 0u32..8,
    ) {
        let g = Arc::new(dihedral(4).unwrap());
        let mut asg = HashMap::new();
        asg.insert("x".to_string(), xi);
        asg.insert("y".to_string(), yi);
        asg.insert("z".to_string(), zi);
        let coeff = HashMap::new();
        let a = evaluate(&u, &g, &asg, &coeff).unwrap();
        let b = evaluate(&v, &g, &asg, &coeff).unwrap();
        let c = evaluate(&u.concat(&v), &g, &asg, &coeff).unwrap();
        prop_assert_eq!(g.mul(a, b), c);
    }

    #[test]
    fn word_inverse_cancels(w in arb_word(), xi in 0u32..8, yi in 0u32..8, zi in 0u32..8) {
        let g = Arc::new(dihedral(4).unwrap());
        let mut asg = HashMap::new();
        asg.insert("x".to_string(), xi);
        asg.insert("y".to_string(), yi);
        asg.insert("z".to_string(), zi);
        let coeff = HashMap::new();
        let v = evaluate(&w.concat(&w.inverse()), &g, &asg, &coeff).unwrap();
        prop_assert_eq!(v, 0);
    }

    #[test]
    fn unitriangular_group_laws(
        ax in -1000i128..1000, ay in -1000i128..1000, az in -1000i128..1000,
        bx in -1000i128..1000, by in -1000i128..1000, bz in -1000i128..1000,
        e in -6i64..=6,
    ) {
        let a = Heis::new(ax, ay, az);
        let b = Heis::new(bx, by, bz);
        prop_assert_eq!(a.mul(b).mul(b.inv()), a);
        prop_assert_eq!(a.mul(a.inv()), Heis::IDENTITY);
        // pow agrees with iterated multiplication
        let mut acc = Heis::IDENTITY;
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(if e < 0 { a.inv() } else { a });
        }
        prop_assert_eq!(a.pow(e), acc);
    }

    #[test]
    fn smith_form_always_valid(
        rows in 1usize..=5,
        cols in 1usize..=5,
        seed in prop::collection::vec(-30i128..=30, 25),
    ) {
        let m = Mat::from_rows(
            &(0..rows).map(|i| (0..cols).map(|j| seed[i * 5 + j]).collect()).collect::<Vec<_>>(),
        );
        let snf = smith_normal_form(&m);
        prop_assert!(snf.verify(&m).is_ok());
    }
}
