//! Shared helpers for the integration tests: corpus paths and the
//! randomized property suites (1000 cases each).

#![allow(dead_code)]

use std::path::PathBuf;

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

use vknot::algebra::{gcd_pair, Coeff, LaurentPoly, RingMatrix, Vars};
use vknot::groups::{
    delta_rewrite, expand_normal_form, fox_derivative, normal_form, Action, DerivedLetter,
    DerivedWord, Gamma, GroupRingElement, Letter, Segment, Word,
};
use vknot::invariants::elementary_poly;
use vknot::representations::{eval_word, product_rep, Abelianization, MatrixRep};

pub fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(name)
}

pub fn corpus_text(name: &str) -> String {
    std::fs::read_to_string(corpus(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub const CASES: u32 = 1000;

const GENS: [&str; 3] = ["a", "b", "c"];

fn runner() -> TestRunner {
    TestRunner::new(Config { cases: CASES, failure_persistence: None, ..Config::default() })
}

fn finish(r: Result<(), proptest::test_runner::TestError<impl std::fmt::Debug>>) -> Result<(), String> {
    r.map_err(|e| e.to_string())
}

fn word(max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..GENS.len(), any::<bool>()), 0..max)
        .prop_map(|v| Word::from_letters(v.into_iter().map(|(g, s)| Letter::new(GENS[g], if s { 1 } else { -1 }))))
}

/// Γ = ℤ, ℤ/3 or ℤ² with random generator images.
fn action() -> impl Strategy<Value = Action> {
    prop_oneof![
        prop::collection::vec(-2i64..=2, 3).prop_map(|v| {
            let images: Vec<(&str, i64)> = GENS.iter().copied().zip(v).collect();
            Action::scalar(Gamma::free(&["t"]), &images).unwrap()
        }),
        prop::collection::vec(-3i64..=3, 3).prop_map(|v| {
            let images: Vec<(&str, i64)> = GENS.iter().copied().zip(v).collect();
            Action::scalar(Gamma::cyclic("t", 3).unwrap(), &images).unwrap()
        }),
        prop::collection::vec((-1i64..=1, -1i64..=1), 3).prop_map(|v| {
            let gamma = Gamma::free(&["u", "v"]);
            let images = GENS
                .iter()
                .zip(v)
                .map(|(g, (x, y))| (g.to_string(), gamma.element(&[x, y]).unwrap()))
                .collect();
            Action::new(gamma, images).unwrap()
        }),
    ]
}

fn uv() -> Vars {
    Vars::new(&["u", "v"])
}

fn poly(vars: Vars, max_exp: i64) -> impl Strategy<Value = LaurentPoly> {
    let n = vars.len();
    prop::collection::vec((prop::collection::vec(-1..=max_exp, n), -3i64..=3), 1..4)
        .prop_map(move |terms| LaurentPoly::from_terms(&vars, terms.into_iter().map(|(e, c)| (e, Coeff::int(c)))))
}

fn one() -> GroupRingElement {
    GroupRingElement::from_word(Word::empty())
}

fn omega() -> MatrixRep {
    MatrixRep::parse("dim 2\na:\n1, 1\n0, 1\nb:\n1, 0\nw(1/2,-1/2), 1\nc:\n0, 1\n-1, 0\n").unwrap()
}

/// `Σ_g ∂w/∂g · (g − 1) = w − 1`.
pub fn fox_fundamental_identity() -> Result<(), String> {
    finish(runner().run(&word(14), |w| {
        let mut lhs = GroupRingElement::zero();
        for g in GENS {
            let gm1 = GroupRingElement::from_word(Word::gen(g)).sub(&one());
            lhs = lhs.add(&fox_derivative(&w, g).mul(&gm1));
        }
        prop_assert_eq!(lhs, GroupRingElement::from_word(w).sub(&one()));
        Ok(())
    }))
}

/// `δ(uv) = δ(u) · δ(v)^{P(u)}` after free reduction.
pub fn delta_crossed_product() -> Result<(), String> {
    finish(runner().run(&(word(10), word(10), action()), |(u, v, act)| {
        let lhs = delta_rewrite(&u.multiply(&v), &act).unwrap().free_reduce();
        let shift = act.image_word(&u).unwrap();
        let rhs = delta_rewrite(&u, &act)
            .unwrap()
            .concat(&delta_rewrite(&v, &act).unwrap().shift(&act.gamma, &shift))
            .free_reduce();
        prop_assert_eq!(lhs, rhs);
        Ok(())
    }))
}

/// Expanding a normal form gives the same element, and re-normalizing
/// gives the same normal form.
pub fn normal_form_idempotent() -> Result<(), String> {
    finish(runner().run(&(word(14), -2i64..=2, action()), |(w, by, act)| {
        let g = &act.gamma;
        let by = g.pow(&g.element(&vec![1; g.rank()]).unwrap(), by);
        let dw = delta_rewrite(&w, &act).unwrap().shift(g, &by);
        let nf = normal_form(&dw, &act).unwrap();
        let back = expand_normal_form(&nf, &act).unwrap();
        prop_assert_eq!(back.free_reduce(), dw.free_reduce());
        prop_assert_eq!(normal_form(&back, &act).unwrap(), nf);
        Ok(())
    }))
}

/// `(g^γ)^{-1} = (g^{-1})^{γg}`, and `g^γ (g^γ)^{-1}` is trivial.
pub fn normal_form_inverse_law() -> Result<(), String> {
    finish(runner().run(&(0..GENS.len(), prop::collection::vec(-3i64..=3, 2), action()), |(g, c, act)| {
        let gamma = &act.gamma;
        let coord = gamma.element(&c[..gamma.rank()]).unwrap();
        let letter = DerivedWord(vec![DerivedLetter::new(GENS[g], -1, coord.clone())]);
        let expected = Segment { word: Word::gen(GENS[g]).invert(), coord: act.act(&coord, GENS[g]).unwrap() };
        prop_assert_eq!(normal_form(&letter, &act).unwrap(), vec![expected]);
        let pair = DerivedWord(vec![
            DerivedLetter::new(GENS[g], 1, coord.clone()),
            DerivedLetter::new(GENS[g], -1, coord),
        ]);
        prop_assert!(normal_form(&pair, &act).unwrap().is_empty());
        Ok(())
    }))
}

/// `gcd(ac, bc)` divides both and is divisible by `c`.
pub fn gcd_divisibility() -> Result<(), String> {
    finish(runner().run(&(poly(uv(), 2), poly(uv(), 2), poly(uv(), 1)), |(a, b, c)| {
        let ac = &a * &c;
        let bc = &b * &c;
        let g = gcd_pair(&ac, &bc);
        if ac.is_zero() && bc.is_zero() {
            prop_assert!(g.is_zero());
        } else {
            prop_assert!(g.divides(&ac) && g.divides(&bc));
            if !c.is_zero() {
                prop_assert!(c.divides(&g), "c = {} does not divide gcd {}", c, g);
            }
        }
        Ok(())
    }))
}

/// Multiplying by `±monomial` does not change the canonical form.
pub fn canonical_unit_invariance() -> Result<(), String> {
    finish(runner().run(&(poly(uv(), 3), prop::collection::vec(-3i64..=3, 2), any::<bool>()), |(p, e, neg)| {
        let unit = LaurentPoly::monomial(&uv(), e, Coeff::int(if neg { -1 } else { 1 }));
        prop_assert_eq!((&p * &unit).canonicalize(), p.canonicalize());
        prop_assert!(p.canonicalize().is_canonical());
        Ok(())
    }))
}

/// `Δ_{i+1}` divides `Δ_i` on random matrices of size up to 3 × 3.
pub fn elementary_divisibility_chain() -> Result<(), String> {
    let t = Vars::new(&["t"]);
    let strat = (1usize..=3, 1usize..=3, prop::collection::vec(poly(t.clone(), 1), 9));
    finish(runner().run(&strat, |(rows, cols, entries)| {
        let grid: Vec<Vec<LaurentPoly>> =
            (0..rows).map(|i| (0..cols).map(|j| entries[i * 3 + j].clone()).collect()).collect();
        let m = RingMatrix::from_rows(&t, grid).unwrap();
        for i in 0..rows {
            let (hi, lo) = (elementary_poly(&m, i + 1), elementary_poly(&m, i));
            prop_assert!(hi.divides(&lo), "Delta_{} = {} does not divide Delta_{} = {}", i + 1, hi, i, lo);
        }
        Ok(())
    }))
}

/// `eval(uv) = eval(u) eval(v)` for the ω product representation.
pub fn evaluation_homomorphism() -> Result<(), String> {
    let rep = product_rep(&Abelianization::uniform(&GENS, "t"), &omega()).unwrap();
    finish(runner().run(&(word(8), word(8)), |(u, v)| {
        let lhs = eval_word(&rep, &u.multiply(&v)).unwrap();
        let rhs = eval_word(&rep, &u).unwrap().mul(&eval_word(&rep, &v).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        Ok(())
    }))
}

/// `eval(P1 ⊗ P2, w) = t^{P1(w)} · eval(P2, w)`.
pub fn product_rep_factors() -> Result<(), String> {
    let p2 = omega();
    finish(runner().run(&(word(8), prop::collection::vec(-2i64..=2, 3)), |(w, e)| {
        let images = GENS.iter().zip(e).map(|(g, k)| (g.to_string(), vec![k])).collect();
        let p1 = Abelianization::new(Vars::new(&["t"]), images).unwrap();
        let p = product_rep(&p1, &p2).unwrap();
        let mono = p1.monomial(&p1.image_word(&w).unwrap());
        let expected = eval_word(&p2, &w).unwrap().embed(p.vars()).unwrap().scale(&mono);
        prop_assert_eq!(eval_word(&p, &w).unwrap(), expected);
        Ok(())
    }))
}

/// The suites required by the acceptance run, with display names.
pub type Suite = fn() -> Result<(), String>;

pub fn acceptance_suites() -> Vec<(&'static str, Suite)> {
    vec![
        ("Fox fundamental identity", fox_fundamental_identity),
        ("delta crossed-product law", delta_crossed_product),
        ("normal-form idempotence", normal_form_idempotent),
        ("normal-form inverse law", normal_form_inverse_law),
        ("gcd divisibility", gcd_divisibility),
        ("canonical-form unit invariance", canonical_unit_invariance),
        ("elementary-ideal divisibility chain", elementary_divisibility_chain),
    ]
}
