//! Multivariate gcd by recursion on the main variable: content / primitive
//! part over the remaining variables and a primitive pseudo-remainder
//! sequence in the main variable.

use num_integer::Integer;

use super::coeff::{Coeff, Ring};
use super::poly::LaurentPoly;

/// Canonical gcd of a nonempty list. Zeros are ignored; the gcd of only
/// zeros is zero.
pub fn poly_gcd(ps: &[LaurentPoly]) -> LaurentPoly {
    assert!(!ps.is_empty(), "poly_gcd of an empty list");
    let ring = ps
        .iter()
        .try_fold(Ring::Integer, |r, p| r.join(p.ring()))
        .unwrap_or_else(|e| panic!("{e}"));
    let mut acc = LaurentPoly::zero(ps[0].vars());
    for p in ps {
        if p.is_zero() {
            continue;
        }
        let (q, _) = p.split_monomial();
        acc = gcd2(&acc, &promote(&q, ring), ring);
        if acc.is_unit() {
            break;
        }
    }
    acc.canonicalize()
}

pub fn gcd_pair(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    poly_gcd(&[a.clone(), b.clone()])
}

fn promote(p: &LaurentPoly, ring: Ring) -> LaurentPoly {
    LaurentPoly::from_terms(p.vars(), p.terms().map(|(e, c)| (e.clone(), c.promote(ring))))
}

fn main_var(a: &LaurentPoly, b: &LaurentPoly) -> Option<usize> {
    (0..a.vars().len())
        .rev()
        .find(|&i| a.terms().chain(b.terms()).any(|(e, _)| e[i] > 0))
}

fn const_gcd(a: &Coeff, b: &Coeff, ring: Ring) -> Coeff {
    if ring.is_field() {
        return if a.is_zero() && b.is_zero() { Coeff::zero() } else { Coeff::one().promote(ring) };
    }
    match (a.as_integer(), b.as_integer()) {
        (Some(x), Some(y)) => Coeff::Int(x.gcd(&y)),
        _ => unreachable!("integer ring holds integers"),
    }
}

/// gcd of two genuine polynomials (no negative exponents) up to units.
fn gcd2(a: &LaurentPoly, b: &LaurentPoly, ring: Ring) -> LaurentPoly {
    // monomials are units; dropping them keeps every exponent non-negative
    let (a, _) = a.split_monomial();
    let (b, _) = b.split_monomial();
    let (a, b) = (&a, &b);
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    let vars = a.vars();
    let Some(x) = main_var(a, b) else {
        let c = const_gcd(&a.as_constant().unwrap(), &b.as_constant().unwrap(), ring);
        return LaurentPoly::constant(vars, c);
    };
    let ca = content(a, x, ring);
    let cb = content(b, x, ring);
    let pa = a.exact_div(&ca).expect("content divides");
    let pb = b.exact_div(&cb).expect("content divides");
    let c = gcd2(&ca, &cb, ring);
    let g = primitive_prs(pa, pb, x, ring);
    &c * &g
}

/// gcd of the coefficients of `p` viewed as a polynomial in `x`.
fn content(p: &LaurentPoly, x: usize, ring: Ring) -> LaurentPoly {
    let mut acc = LaurentPoly::zero(p.vars());
    for c in p.coeffs_in(x).values() {
        acc = gcd2(&acc, c, ring);
        if acc.is_unit() {
            break;
        }
    }
    acc
}

fn primitive_part(p: &LaurentPoly, x: usize, ring: Ring) -> LaurentPoly {
    if p.is_zero() {
        return p.clone();
    }
    p.exact_div(&content(p, x, ring)).expect("content divides")
}

fn primitive_prs(a: LaurentPoly, b: LaurentPoly, x: usize, ring: Ring) -> LaurentPoly {
    let (mut a, mut b) = if a.degree_in(x) >= b.degree_in(x) { (a, b) } else { (b, a) };
    loop {
        if b.is_zero() {
            return a;
        }
        if b.degree_in(x) == 0 {
            return LaurentPoly::one(a.vars());
        }
        let r = pseudo_rem(&a, &b, x);
        a = b;
        b = primitive_part(&r, x, ring);
    }
}

/// `lc(b)^k · a mod b` in the main variable `x`.
fn pseudo_rem(a: &LaurentPoly, b: &LaurentPoly, x: usize) -> LaurentPoly {
    let db = b.degree_in(x);
    let lcb = b.coeff_in(x, db);
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(x) >= db {
        let dr = r.degree_in(x);
        let lcr = r.coeff_in(x, dr);
        let mut shift = vec![0; a.vars().len()];
        shift[x] = dr - db;
        r = &(&lcb * &r) - &(&lcr * &b.shift(&shift));
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_poly, Vars};

    fn t(s: &str) -> LaurentPoly {
        parse_poly(s, &Vars::new(&["t"])).unwrap()
    }

    fn uv(s: &str) -> LaurentPoly {
        parse_poly(s, &Vars::new(&["u", "v"])).unwrap()
    }

    #[test]
    fn gcd_with_zero() {
        let p = t("-t^-1 + 3 - t");
        assert_eq!(poly_gcd(&[t("0"), p.clone()]), p.canonicalize());
    }

    #[test]
    fn gcd_of_difference_of_squares() {
        assert_eq!(poly_gcd(&[t("t^2 - 1"), t("t - 1")]), t("1 - t").canonicalize());
    }

    #[test]
    fn gcd_of_wada_parts() {
        let num = t("(t-1)^2*(t^2-4*t+1)");
        let den = t("(t-1)^2");
        assert_eq!(poly_gcd(&[num, den.clone()]), den.canonicalize());
    }

    #[test]
    fn integer_content_kept() {
        assert_eq!(poly_gcd(&[t("2*t - 2"), t("4*t^2 - 4")]), t("2 - 2*t"));
        assert_eq!(poly_gcd(&[t("6"), t("4*t")]), t("2"));
    }

    #[test]
    fn multivariate() {
        let g = uv("(u*v - 1)*(u + v^2)");
        let h = uv("(u*v - 1)*(u - 2)*v");
        assert_eq!(poly_gcd(&[g, h]), uv("1 - u*v"));
        assert!(poly_gcd(&[uv("2 - u*v"), uv("u - 1")]).is_one());
    }

    #[test]
    fn quadratic_field() {
        let vars = Vars::new(&["t"]);
        let a = parse_poly("(t - w(1/2,-1/2))*(t + 3)", &vars).unwrap();
        let b = parse_poly("(t - w(1/2,-1/2))*(t - 1)", &vars).unwrap();
        let g = poly_gcd(&[a, b]);
        let expect = parse_poly("t - w(1/2,-1/2)", &vars).unwrap().canonicalize();
        assert_eq!(g, expect);
    }

    #[test]
    fn laurent_inputs_with_common_factor() {
        let c = uv("u^-1*v - 1");
        let a = &uv("1 - v^-1") * &c;
        let b = &uv("-1 - v") * &c;
        assert_eq!(gcd_pair(&a, &b), c.canonicalize());
    }
}
