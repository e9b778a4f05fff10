//! Integral group ring of a free group and Fox derivatives.

use std::collections::BTreeMap;
use std::fmt;

use super::word::Word;

/// Finite formal sum `Σ n_w · w`; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GroupRingElement(BTreeMap<Word, i64>);

impl GroupRingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_word(w: Word) -> Self {
        let mut e = Self::zero();
        e.add_term(w, 1);
        e
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, i64)> {
        self.0.iter().map(|(w, &n)| (w, n))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add_term(&mut self, w: Word, n: i64) {
        if n == 0 {
            return;
        }
        let c = self.0.entry(w).or_insert(0);
        *c += n;
        if *c == 0 {
            self.0.retain(|_, v| *v != 0);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, n) in other.terms() {
            out.add_term(w.clone(), n);
        }
        out
    }

    pub fn neg(&self) -> Self {
        GroupRingElement(self.0.iter().map(|(w, n)| (w.clone(), -n)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (u, m) in self.terms() {
            for (v, n) in other.terms() {
                out.add_term(u.multiply(v), m * n);
            }
        }
        out
    }

    /// Left multiplication by a group element.
    pub fn left_mul(&self, u: &Word) -> Self {
        let mut out = Self::zero();
        for (w, n) in self.terms() {
            out.add_term(u.multiply(w), n);
        }
        out
    }

    /// Ring homomorphism into any target, given the image of each word.
    pub fn evaluate<T, E>(
        &self,
        zero: T,
        mut image: impl FnMut(&Word) -> Result<T, E>,
        mut add_scaled: impl FnMut(T, T, i64) -> T,
    ) -> Result<T, E> {
        let mut acc = zero;
        for (w, n) in self.terms() {
            acc = add_scaled(acc, image(w)?, n);
        }
        Ok(acc)
    }
}

impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        for (i, (w, n)) in self.terms().enumerate() {
            match (i, n < 0) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            match n.abs() {
                1 => write!(f, "[{w}]")?,
                k => write!(f, "{k}*[{w}]")?,
            }
        }
        Ok(())
    }
}

/// `∂w/∂g`, from `∂(uv) = ∂u + u·∂v`, `∂g/∂g = 1` and `∂ḡ/∂g = −ḡ`.
pub fn fox_derivative(w: &Word, g: &str) -> GroupRingElement {
    let mut out = GroupRingElement::zero();
    for (i, l) in w.letters().iter().enumerate() {
        if l.gen != g {
            continue;
        }
        if l.exp == 1 {
            out.add_term(w.prefix(i), 1);
        } else {
            out.add_term(w.prefix(i + 1), -1);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::parse_word;

    fn w(s: &str) -> Word {
        parse_word(s, &["a".into(), "b".into()]).unwrap()
    }

    #[test]
    fn base_cases() {
        assert_eq!(fox_derivative(&w("a b"), "a"), GroupRingElement::from_word(Word::empty()));
        assert_eq!(fox_derivative(&w("A"), "a"), GroupRingElement::from_word(w("A")).neg());
        assert!(fox_derivative(&w("b"), "a").is_zero());
    }

    #[test]
    fn figure_eight_abelianized() {
        let r = w("A b a B a b A B a B");
        let d = fox_derivative(&r, "a");
        let mut by_exp: BTreeMap<i64, i64> = BTreeMap::new();
        for (word, n) in d.terms() {
            let e = word.exponent_sum("a") + word.exponent_sum("b");
            *by_exp.entry(e).or_default() += n;
        }
        by_exp.retain(|_, n| *n != 0);
        assert_eq!(by_exp, BTreeMap::from([(-1, -1), (0, 3), (1, -1)]));
    }

    #[test]
    fn fundamental_identity() {
        let r = w("A b a B a b A B a B");
        let mut lhs = GroupRingElement::zero();
        for g in ["a", "b"] {
            let gm1 = GroupRingElement::from_word(Word::gen(g)).sub(&GroupRingElement::from_word(Word::empty()));
            lhs = lhs.add(&fox_derivative(&r, g).mul(&gm1));
        }
        let rhs = GroupRingElement::from_word(r).sub(&GroupRingElement::from_word(Word::empty()));
        assert_eq!(lhs, rhs);
    }
}
