//! Invariant-level laws checked on the corpus and on random one-relator groups.

mod common;

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

use common::corpus_text;
use vknot::algebra::{Coeff, LaurentPoly};
use vknot::diagrams::VirtualDiagram;
use vknot::groups::{hnn_free_reduction, operator_presentation, Action, Gamma, Letter, Presentation, Word};
use vknot::invariants::{alexander_matrix, diagram_alexander, h0_order, is_reciprocal, wada};
use vknot::representations::Abelianization;

fn one_relator() -> impl Strategy<Value = Presentation> {
    prop::collection::vec((0..2usize, any::<bool>()), 1..12).prop_map(|v| {
        let r = Word::from_letters(v.into_iter().map(|(g, s)| Letter::new(["a", "b"][g], if s { 1 } else { -1 })));
        Presentation::new(vec!["a".into(), "b".into()], vec![r]).unwrap()
    })
}

#[test]
fn wada_times_h0_is_delta_times_denominator() {
    let mut runner = TestRunner::new(Config { cases: 300, failure_persistence: None, ..Config::default() });
    runner
        .run(&one_relator(), |p| {
            let Ok(ab) = Abelianization::infer(&p, "t") else { return Ok(()) };
            let rep = ab.scalar_rep();
            let Some(g) = p.gens().iter().find(|g| ab.image(g).unwrap()[0] != 0) else { return Ok(()) };
            let w = wada(&p, &rep, g).unwrap();
            let full = alexander_matrix(&p, &rep).unwrap().elementary_poly(0);
            let h0 = h0_order(&rep, p.gens()).unwrap();
            prop_assert!(
                (&w.numerator * &h0).unit_equivalent(&(&w.denominator * &full)),
                "{:?}: W = {}/{}, Delta = {}, h0 = {}",
                p.rels()[0].to_string(),
                w.numerator,
                w.denominator,
                full,
                h0
            );
            Ok(())
        })
        .unwrap();
}

#[test]
fn classical_polynomials_are_reciprocal_and_normalized() {
    for name in ["figure_eight.gauss", "trefoil.gauss", "unknot.gauss"] {
        let d = VirtualDiagram::parse(&corpus_text(name)).unwrap();
        let delta = diagram_alexander(&d, 0).unwrap();
        assert!(is_reciprocal(&delta), "{name}: {delta}");
        let at_one = delta.evaluate(&[Coeff::int(1)]).unwrap().as_integer().unwrap();
        assert_eq!(at_one.magnitude().to_string(), "1", "{name}: Delta(1) = {at_one}");
    }
}

#[test]
fn non_reciprocal_example() {
    let d = VirtualDiagram::parse(&corpus_text("almost_classical.gauss")).unwrap();
    let delta: LaurentPoly = diagram_alexander(&d, 0).unwrap();
    assert!(!is_reciprocal(&delta));
}

#[test]
fn trefoil_hnn_fiber_is_free() {
    let p = Presentation::parse(&corpus_text("trefoil_hnn.pres")).unwrap();
    let action = Action::scalar(Gamma::free(&["t"]), &[("x", 1), ("a", 0), ("b", 0)]).unwrap();
    let op = operator_presentation(&p, &action).unwrap();
    let r = hnn_free_reduction(&op, "x", true).unwrap();
    assert!(r.success);
    assert_eq!(r.rank, 2);
    assert_eq!(r.monodromy.len(), 2);
}
