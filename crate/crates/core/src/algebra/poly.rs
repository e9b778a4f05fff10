//! Sparse multivariate Laurent polynomials over [`Coeff`].

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::coeff::{Coeff, Ring};
use super::AlgebraError;

/// Ordered list of variable names shared by polynomials that are combined.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Vars(Arc<[String]>);

impl Vars {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Self {
        Vars(names.iter().map(|s| s.as_ref().to_string()).collect())
    }

    pub fn empty() -> Self {
        Vars(Arc::from(Vec::<String>::new()))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|v| v == name)
    }
}

impl fmt::Debug for Vars {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

pub type Exponents = Vec<i64>;

/// Invariant: no stored zero coefficient; every exponent vector has
/// `vars.len()` entries.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    vars: Vars,
    terms: BTreeMap<Exponents, Coeff>,
}

impl LaurentPoly {
    pub fn zero(vars: &Vars) -> Self {
        LaurentPoly { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(vars: &Vars, c: Coeff) -> Self {
        Self::monomial(vars, vec![0; vars.len()], c)
    }

    pub fn one(vars: &Vars) -> Self {
        Self::constant(vars, Coeff::one())
    }

    pub fn monomial(vars: &Vars, exps: Exponents, c: Coeff) -> Self {
        assert_eq!(exps.len(), vars.len(), "exponent vector length");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        LaurentPoly { vars: vars.clone(), terms }
    }

    /// The variable `name` itself.
    pub fn var(vars: &Vars, name: &str) -> Option<Self> {
        let i = vars.index_of(name)?;
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        Some(Self::monomial(vars, e, Coeff::one()))
    }

    pub fn from_terms<I: IntoIterator<Item = (Exponents, Coeff)>>(vars: &Vars, it: I) -> Self {
        let mut p = Self::zero(vars);
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponents, &Coeff)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.iter().all(|(e, c)| c.is_one() && e.iter().all(|&x| x == 0))
    }

    /// Constant value when the polynomial has no variable dependence.
    pub fn as_constant(&self) -> Option<Coeff> {
        match self.terms.len() {
            0 => Some(Coeff::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// `c·x^e` with `c` a unit of the coefficient ring: the units of the
    /// Laurent ring.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms.values().all(Coeff::is_unit)
    }

    /// Join of the coefficient rings of all terms (`Integer` for zero).
    pub fn ring(&self) -> Ring {
        self.terms
            .values()
            .try_fold(Ring::Integer, |r, c| r.join(c.ring()))
            .unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn coeff(&self, exps: &[i64]) -> Coeff {
        self.terms.get(exps).cloned().unwrap_or_else(Coeff::zero)
    }

    pub(crate) fn add_term(&mut self, exps: Exponents, c: Coeff) {
        debug_assert_eq!(exps.len(), self.vars.len());
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(old) => {
                let s = &*old + &c;
                if s.is_zero() {
                    self.terms.remove(&exps);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(exps, c);
            }
        }
    }

    fn check_vars(&self, other: &LaurentPoly) {
        assert!(
            self.vars == other.vars,
            "variable mismatch: {:?} vs {:?}",
            self.vars,
            other.vars
        );
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        let terms = self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect();
        LaurentPoly { vars: self.vars.clone(), terms }
    }

    /// Multiply by the monomial `x^shift`.
    pub fn shift(&self, shift: &[i64]) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone()))
            .collect();
        LaurentPoly { vars: self.vars.clone(), terms }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(&self.vars);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Per-variable minimum exponent (zeros for the zero polynomial).
    pub fn min_exponents(&self) -> Exponents {
        let mut m: Option<Exponents> = None;
        for e in self.terms.keys() {
            m = Some(match m {
                None => e.clone(),
                Some(m) => m.iter().zip(e).map(|(a, b)| *a.min(b)).collect(),
            });
        }
        m.unwrap_or_else(|| vec![0; self.vars.len()])
    }

    pub fn max_exponents(&self) -> Exponents {
        let mut m: Option<Exponents> = None;
        for e in self.terms.keys() {
            m = Some(match m {
                None => e.clone(),
                Some(m) => m.iter().zip(e).map(|(a, b)| *a.max(b)).collect(),
            });
        }
        m.unwrap_or_else(|| vec![0; self.vars.len()])
    }

    /// Shift so that every variable's minimum exponent is zero; returns the
    /// polynomial part and the monomial that was divided out.
    pub fn split_monomial(&self) -> (Self, Exponents) {
        let m = self.min_exponents();
        let neg: Exponents = m.iter().map(|x| -x).collect();
        (self.shift(&neg), m)
    }

    /// Unique representative of the class `{ u·self : u a unit }`: minimum
    /// exponents zero, then the lexicographically first coefficient made
    /// positive (over ℤ) or 1 (over a field).
    pub fn canonicalize(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let (p, _) = self.split_monomial();
        let lead = p.terms.values().next().unwrap().clone();
        match p.ring() {
            Ring::Integer => {
                if lead.is_negative() {
                    -&p
                } else {
                    p
                }
            }
            ring => {
                let inv = lead.promote(ring).inverse().expect("nonzero lead");
                p.scale(&inv)
            }
        }
    }

    pub fn is_canonical(&self) -> bool {
        *self == self.canonicalize()
    }

    pub fn unit_equivalent(&self, other: &LaurentPoly) -> bool {
        self.canonicalize() == other.canonicalize()
    }

    /// Exact quotient in the Laurent ring, `None` if `other` does not divide.
    pub fn exact_div(&self, other: &LaurentPoly) -> Option<LaurentPoly> {
        self.check_vars(other);
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(self.clone());
        }
        let (a, ma) = self.split_monomial();
        let (b, mb) = other.split_monomial();
        let q = poly_div_exact(&a, &b)?;
        let s: Exponents = ma.iter().zip(&mb).map(|(x, y)| x - y).collect();
        Some(q.shift(&s))
    }

    pub fn divides(&self, other: &LaurentPoly) -> bool {
        other.is_zero() || other.exact_div(self).is_some()
    }

    /// Rewrite in a larger (or reordered) variable list.
    pub fn embed(&self, target: &Vars) -> Result<LaurentPoly, AlgebraError> {
        let map: Vec<usize> = self
            .vars
            .names()
            .iter()
            .map(|n| target.index_of(n).ok_or_else(|| AlgebraError::UnknownVariable(n.clone())))
            .collect::<Result<_, _>>()?;
        let mut out = LaurentPoly::zero(target);
        for (e, c) in &self.terms {
            let mut ne = vec![0; target.len()];
            for (i, x) in e.iter().enumerate() {
                ne[map[i]] += x;
            }
            out.add_term(ne, c.clone());
        }
        Ok(out)
    }

    /// Ring homomorphism sending variable `i` to `images[i]` (all over
    /// `target`). Negative powers require the image to be a unit.
    pub fn substitute(&self, target: &Vars, images: &[LaurentPoly]) -> Option<LaurentPoly> {
        assert_eq!(images.len(), self.vars.len());
        let mut inverses: Vec<Option<LaurentPoly>> = vec![None; images.len()];
        let mut out = LaurentPoly::zero(target);
        for (e, c) in &self.terms {
            let mut term = LaurentPoly::constant(target, c.clone());
            for (i, &x) in e.iter().enumerate() {
                if x >= 0 {
                    term = &term * &images[i].pow(x as u32);
                } else {
                    if inverses[i].is_none() {
                        inverses[i] = Some(LaurentPoly::one(target).exact_div(&images[i])?);
                    }
                    term = &term * &inverses[i].as_ref().unwrap().pow((-x) as u32);
                }
            }
            out = &out + &term;
        }
        Some(out)
    }

    /// Replace every variable by its reciprocal.
    pub fn reciprocal(&self) -> LaurentPoly {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.iter().map(|x| -x).collect(), c.clone()))
            .collect();
        LaurentPoly { vars: self.vars.clone(), terms }
    }

    /// Evaluate at constant values for every variable.
    pub fn evaluate(&self, values: &[Coeff]) -> Option<Coeff> {
        let empty = Vars::empty();
        let images: Vec<_> = values.iter().map(|c| LaurentPoly::constant(&empty, c.clone())).collect();
        self.substitute(&empty, &images)?.as_constant()
    }

    pub(crate) fn degree_in(&self, var: usize) -> i64 {
        self.terms.keys().map(|e| e[var]).max().unwrap_or(i64::MIN)
    }

    /// Coefficient of `x_var^k`, as a polynomial free of `x_var`.
    pub(crate) fn coeff_in(&self, var: usize, k: i64) -> LaurentPoly {
        let mut out = LaurentPoly::zero(&self.vars);
        for (e, c) in &self.terms {
            if e[var] == k {
                let mut ne = e.clone();
                ne[var] = 0;
                out.terms.insert(ne, c.clone());
            }
        }
        out
    }

    pub(crate) fn coeffs_in(&self, var: usize) -> BTreeMap<i64, LaurentPoly> {
        let mut out: BTreeMap<i64, LaurentPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut ne = e.clone();
            ne[var] = 0;
            out.entry(e[var])
                .or_insert_with(|| LaurentPoly::zero(&self.vars))
                .terms
                .insert(ne, c.clone());
        }
        out
    }

    /// Terms in graded-lex order (total degree, then exponent vector).
    fn graded_terms(&self) -> Vec<(&Exponents, &Coeff)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| {
            let da: i64 = a.0.iter().sum();
            let db: i64 = b.0.iter().sum();
            da.cmp(&db).then_with(|| a.0.cmp(b.0))
        });
        v
    }
}

/// Exact division of genuine polynomials (all exponents ≥ 0), lex order.
fn poly_div_exact(a: &LaurentPoly, b: &LaurentPoly) -> Option<LaurentPoly> {
    let (mb, cb) = b.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone()))?;
    let mut rem = a.clone();
    let mut q = LaurentPoly::zero(&a.vars);
    while let Some((m, c)) = rem.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
        if m.iter().zip(&mb).any(|(x, y)| x < y) {
            return None;
        }
        let cq = c.exact_div(&cb)?;
        let mq: Exponents = m.iter().zip(&mb).map(|(x, y)| x - y).collect();
        let t = LaurentPoly::monomial(&a.vars, mq, cq);
        rem = &rem - &(&t * b);
        q = &q + &t;
    }
    Some(q)
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.check_vars(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.check_vars(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect();
        LaurentPoly { vars: self.vars.clone(), terms }
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.check_vars(rhs);
        let mut out = LaurentPoly::zero(&self.vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

fn fmt_monomial(vars: &Vars, e: &[i64]) -> String {
    let parts: Vec<String> = e
        .iter()
        .enumerate()
        .filter(|(_, &x)| x != 0)
        .map(|(i, &x)| {
            let v = &vars.names()[i];
            if x == 1 {
                v.clone()
            } else {
                format!("{v}^{x}")
            }
        })
        .collect();
    parts.join("*")
}

/// Printed highest-degree first when that term is positive, otherwise lowest
/// first, so the leading printed term never carries a minus sign when avoidable.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms = self.graded_terms();
        if !terms.last().unwrap().1.is_negative() {
            terms.reverse();
        }
        for (k, (e, c)) in terms.iter().enumerate() {
            let neg = c.is_negative() && c.as_rational().is_some();
            let abs = if neg { -*c } else { (*c).clone() };
            let mono = fmt_monomial(&self.vars, e);
            let body = match (mono.is_empty(), abs.is_one()) {
                (true, _) => abs.to_string(),
                (false, true) => mono,
                (false, false) => format!("{abs}*{mono}"),
            };
            match (k, neg) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;

    fn t() -> Vars {
        Vars::new(&["t"])
    }

    fn p(s: &str) -> LaurentPoly {
        parse_poly(s, &t()).unwrap()
    }

    #[test]
    fn canonicalize_zero() {
        assert!(LaurentPoly::zero(&t()).canonicalize().is_zero());
    }

    #[test]
    fn canonicalize_alexander_entry() {
        let q = p("-t^-1 + 3 - t").canonicalize();
        assert_eq!(q, p("t^2 - 3*t + 1"));
        assert_eq!(q.to_string(), "t^2 - 3*t + 1");
        assert_eq!(q.canonicalize(), q);
    }

    #[test]
    fn canonicalize_over_field_is_monic_in_lowest_term() {
        // over ℤ the content stays, only the sign is fixed
        assert_eq!(p("2*t - 2").canonicalize(), p("2 - 2*t"));
        let r = parse_poly("1/2*t - 1/2", &t()).unwrap().canonicalize();
        assert_eq!(r, p("1 - t"));
        assert_eq!(r.to_string(), "1 - t");
    }

    #[test]
    fn exact_division() {
        let a = p("t^2 - 1");
        let b = p("t - 1");
        assert_eq!(a.exact_div(&b).unwrap(), p("t + 1"));
        assert!(p("t^2 + 1").exact_div(&b).is_none());
        assert_eq!(p("t^-1 - t").exact_div(&p("1 - t^2")).unwrap(), p("t^-1"));
        assert!(p("2*t").exact_div(&p("4")).is_none());
    }

    #[test]
    fn display_orders() {
        let v = Vars::new(&["u", "v"]);
        let q = parse_poly("2 - u*v", &v).unwrap();
        assert_eq!(q.to_string(), "2 - u*v");
        let r = parse_poly("-t^-1", &t()).unwrap();
        assert_eq!(r.to_string(), "-t^-1");
    }

    #[test]
    fn substitution_and_evaluation() {
        let q = p("t^2 - 3*t + 1");
        assert_eq!(q.evaluate(&[Coeff::int(-1)]).unwrap(), Coeff::int(5));
        let r = p("t^-1 + 2");
        assert_eq!(r.evaluate(&[Coeff::rat(2, 1)]).unwrap(), Coeff::rat(5, 2));
        assert_eq!(p("2 - t").reciprocal().canonicalize(), p("1 - 2*t"));
    }
}
