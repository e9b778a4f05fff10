//! Randomized algebraic laws, 1000 cases each.

mod common;

macro_rules! suites {
    ($($name:ident),* $(,)?) => {
        $(
            #[test]
            fn $name() {
                if let Err(e) = common::$name() {
                    panic!("{e}");
                }
            }
        )*
    };
}

suites!(
    fox_fundamental_identity,
    delta_crossed_product,
    normal_form_idempotent,
    normal_form_inverse_law,
    gcd_divisibility,
    canonical_unit_invariance,
    elementary_divisibility_chain,
    evaluation_homomorphism,
    product_rep_factors,
);
