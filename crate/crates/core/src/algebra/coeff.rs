//! Exact scalars: integers, rationals and elements of a quadratic field `Q(√d)`.
//!
//! Arithmetic promotes `Int -> Rat -> Quad`. Two quadratic elements over
//! different fields never combine; doing so is a programming error and
//! panics. Callers that accept user input validate fields up front with
//! [`Ring::join`].

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::AlgebraError;

/// The coefficient ring a value (or a whole polynomial) lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ring {
    Integer,
    Rational,
    /// `Q(√d)` with `d` square-free and not 0 or 1.
    Quadratic(i64),
}

impl Ring {
    /// Smallest ring containing both; fails for two distinct quadratic fields.
    pub fn join(self, other: Ring) -> Result<Ring, AlgebraError> {
        use Ring::*;
        Ok(match (self, other) {
            (Quadratic(a), Quadratic(b)) if a != b => return Err(AlgebraError::MixedFields(a, b)),
            (Quadratic(a), _) | (_, Quadratic(a)) => Quadratic(a),
            (Rational, _) | (_, Rational) => Rational,
            _ => Integer,
        })
    }

    pub fn is_field(self) -> bool {
        !matches!(self, Ring::Integer)
    }
}

/// `re + im·√d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quadratic {
    pub re: BigRational,
    pub im: BigRational,
    pub d: i64,
}

impl Quadratic {
    pub fn new(re: BigRational, im: BigRational, d: i64) -> Self {
        Quadratic { re, im, d }
    }

    fn norm(&self) -> BigRational {
        &self.re * &self.re - &self.im * &self.im * BigRational::from_integer(self.d.into())
    }

    pub fn conj(&self) -> Self {
        Quadratic::new(self.re.clone(), -self.im.clone(), self.d)
    }
}

/// Validates that `d` defines a genuine quadratic extension.
pub fn check_square_free(d: i64) -> Result<(), AlgebraError> {
    if d == 0 || d == 1 {
        return Err(AlgebraError::BadField(d));
    }
    let n = d.unsigned_abs();
    let mut k = 2u64;
    while k * k <= n {
        if n.is_multiple_of(k * k) {
            return Err(AlgebraError::BadField(d));
        }
        k += 1;
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub enum Coeff {
    Int(BigInt),
    Rat(BigRational),
    Quad(Quadratic),
}

impl Coeff {
    pub fn int(n: i64) -> Self {
        Coeff::Int(BigInt::from(n))
    }

    pub fn rat(n: i64, d: i64) -> Self {
        Coeff::Rat(BigRational::new(n.into(), d.into()))
    }

    pub fn quad(re: BigRational, im: BigRational, d: i64) -> Self {
        Coeff::Quad(Quadratic::new(re, im, d))
    }

    pub fn zero() -> Self {
        Coeff::Int(BigInt::zero())
    }

    pub fn one() -> Self {
        Coeff::Int(BigInt::one())
    }

    pub fn ring(&self) -> Ring {
        match self {
            Coeff::Int(_) => Ring::Integer,
            Coeff::Rat(_) => Ring::Rational,
            Coeff::Quad(q) => Ring::Quadratic(q.d),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coeff::Int(n) => n.is_zero(),
            Coeff::Rat(r) => r.is_zero(),
            Coeff::Quad(q) => q.re.is_zero() && q.im.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coeff::Int(n) => n.is_one(),
            Coeff::Rat(r) => r.is_one(),
            Coeff::Quad(q) => q.re.is_one() && q.im.is_zero(),
        }
    }

    /// Units of the ring the value lives in: ±1 over ℤ, anything nonzero over a field.
    pub fn is_unit(&self) -> bool {
        match self {
            Coeff::Int(n) => n.abs().is_one(),
            _ => !self.is_zero(),
        }
    }

    /// Rational value when the element has no irrational part.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self {
            Coeff::Int(n) => Some(BigRational::from_integer(n.clone())),
            Coeff::Rat(r) => Some(r.clone()),
            Coeff::Quad(q) if q.im.is_zero() => Some(q.re.clone()),
            Coeff::Quad(_) => None,
        }
    }

    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational().filter(|r| r.is_integer()).map(|r| r.to_integer())
    }

    /// Re-express the value in `ring` (which must contain it).
    pub fn promote(&self, ring: Ring) -> Coeff {
        match (self, ring) {
            (Coeff::Int(_), Ring::Integer) => self.clone(),
            (Coeff::Int(n), Ring::Rational) => Coeff::Rat(BigRational::from_integer(n.clone())),
            (Coeff::Rat(_), Ring::Rational) => self.clone(),
            (Coeff::Quad(q), Ring::Quadratic(d)) => {
                assert_eq!(q.d, d, "mixed quadratic fields Q(√{}) and Q(√{})", q.d, d);
                self.clone()
            }
            (_, Ring::Quadratic(d)) => {
                let r = self.as_rational().expect("rational value");
                Coeff::quad(r, BigRational::zero(), d)
            }
            (c, r) => panic!("cannot demote {c} into {r:?}"),
        }
    }

    fn promoted_pair(&self, other: &Coeff) -> (Coeff, Coeff) {
        let ring = self
            .ring()
            .join(other.ring())
            .unwrap_or_else(|e| panic!("{e}"));
        (self.promote(ring), other.promote(ring))
    }

    /// Exact quotient `self / other`, or `None` when it does not exist in the
    /// joined ring (integer non-divisibility or division by zero).
    pub fn exact_div(&self, other: &Coeff) -> Option<Coeff> {
        if other.is_zero() {
            return None;
        }
        match self.promoted_pair(other) {
            (Coeff::Int(a), Coeff::Int(b)) => {
                let (q, r) = a.div_rem(&b);
                r.is_zero().then_some(Coeff::Int(q))
            }
            (Coeff::Rat(a), Coeff::Rat(b)) => Some(Coeff::Rat(a / b)),
            (Coeff::Quad(a), Coeff::Quad(b)) => {
                let n = b.norm();
                let c = b.conj();
                let num = mul_quad(&a, &c);
                Some(Coeff::quad(num.re / &n, num.im / n, a.d))
            }
            _ => unreachable!(),
        }
    }

    /// Multiplicative inverse in the value's own ring.
    pub fn inverse(&self) -> Option<Coeff> {
        self.promote_one().exact_div(self)
    }

    fn promote_one(&self) -> Coeff {
        Coeff::one().promote(self.ring())
    }

    /// Integer absolute value / sign helpers used for canonical forms.
    pub fn is_negative(&self) -> bool {
        match self {
            Coeff::Int(n) => n.is_negative(),
            Coeff::Rat(r) => r.is_negative(),
            Coeff::Quad(q) => q.re.is_negative() || (q.re.is_zero() && q.im.is_negative()),
        }
    }

    /// Total order used only to break ties deterministically.
    pub fn cmp_repr(&self, other: &Coeff) -> Ordering {
        let key = |c: &Coeff| match c {
            Coeff::Int(n) => (BigRational::from_integer(n.clone()), BigRational::zero()),
            Coeff::Rat(r) => (r.clone(), BigRational::zero()),
            Coeff::Quad(q) => (q.re.clone(), q.im.clone()),
        };
        key(self).cmp(&key(other))
    }
}

fn mul_quad(a: &Quadratic, b: &Quadratic) -> Quadratic {
    let d = BigRational::from_integer(a.d.into());
    Quadratic::new(
        &a.re * &b.re + &a.im * &b.im * d,
        &a.re * &b.im + &a.im * &b.re,
        a.d,
    )
}

impl PartialEq for Coeff {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Coeff::Quad(a), Coeff::Quad(b)) => a == b,
            (Coeff::Quad(q), c) | (c, Coeff::Quad(q)) => {
                q.im.is_zero() && c.as_rational().is_some_and(|r| r == q.re)
            }
            _ => self.as_rational() == other.as_rational(),
        }
    }
}

impl Eq for Coeff {}

impl Add for &Coeff {
    type Output = Coeff;
    fn add(self, rhs: &Coeff) -> Coeff {
        match self.promoted_pair(rhs) {
            (Coeff::Int(a), Coeff::Int(b)) => Coeff::Int(a + b),
            (Coeff::Rat(a), Coeff::Rat(b)) => Coeff::Rat(a + b),
            (Coeff::Quad(a), Coeff::Quad(b)) => Coeff::quad(a.re + b.re, a.im + b.im, a.d),
            _ => unreachable!(),
        }
    }
}

impl Mul for &Coeff {
    type Output = Coeff;
    fn mul(self, rhs: &Coeff) -> Coeff {
        match self.promoted_pair(rhs) {
            (Coeff::Int(a), Coeff::Int(b)) => Coeff::Int(a * b),
            (Coeff::Rat(a), Coeff::Rat(b)) => Coeff::Rat(a * b),
            (Coeff::Quad(a), Coeff::Quad(b)) => Coeff::Quad(mul_quad(&a, &b)),
            _ => unreachable!(),
        }
    }
}

impl Neg for &Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        match self {
            Coeff::Int(a) => Coeff::Int(-a),
            Coeff::Rat(a) => Coeff::Rat(-a),
            Coeff::Quad(q) => Coeff::quad(-q.re.clone(), -q.im.clone(), q.d),
        }
    }
}

impl Sub for &Coeff {
    type Output = Coeff;
    fn sub(self, rhs: &Coeff) -> Coeff {
        self + &(-rhs)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Coeff {
            type Output = Coeff;
            fn $m(self, rhs: Coeff) -> Coeff {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        -&self
    }
}

impl From<i64> for Coeff {
    fn from(n: i64) -> Self {
        Coeff::int(n)
    }
}

fn fmt_rat(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Int(n) => write!(f, "{n}"),
            Coeff::Rat(r) => write!(f, "{}", fmt_rat(r)),
            Coeff::Quad(q) if q.im.is_zero() => write!(f, "{}", fmt_rat(&q.re)),
            Coeff::Quad(q) => write!(f, "w({},{})", fmt_rat(&q.re), fmt_rat(&q.im)),
        }
    }
}

/// `ω = (1 - √-3)/2`, the sixth root of unity used by the figure-eight
/// parabolic representation.
pub fn omega() -> Coeff {
    Coeff::quad(
        BigRational::new(1.into(), 2.into()),
        BigRational::new((-1).into(), 2.into()),
        -3,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_are_reduced() {
        let c = Coeff::rat(4, -6);
        match c {
            Coeff::Rat(r) => {
                assert_eq!(*r.numer(), BigInt::from(-2));
                assert_eq!(*r.denom(), BigInt::from(3));
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn omega_is_primitive_sixth_root() {
        let w = omega();
        // ω² − ω + 1 = 0
        let v = &(&(&w * &w) - &w) + &Coeff::one();
        assert!(v.is_zero());
        let inv = w.inverse().unwrap();
        assert!((&inv * &w).is_one());
        // ω̄ = 1 − ω
        if let Coeff::Quad(q) = &w {
            assert_eq!(Coeff::Quad(q.conj()), &Coeff::one() - &w);
        }
    }

    #[test]
    fn integer_division_is_exact_only() {
        assert_eq!(Coeff::int(6).exact_div(&Coeff::int(3)), Some(Coeff::int(2)));
        assert_eq!(Coeff::int(6).exact_div(&Coeff::int(4)), None);
        assert_eq!(Coeff::int(6).exact_div(&Coeff::zero()), None);
        assert_eq!(Coeff::rat(6, 1).exact_div(&Coeff::int(4)), Some(Coeff::rat(3, 2)));
    }

    #[test]
    fn mixed_fields_rejected() {
        assert!(Ring::Quadratic(-3).join(Ring::Quadratic(2)).is_err());
        assert_eq!(Ring::Integer.join(Ring::Quadratic(5)).unwrap(), Ring::Quadratic(5));
        assert!(check_square_free(-3).is_ok());
        assert!(check_square_free(8).is_err());
        assert!(check_square_free(1).is_err());
    }

    #[test]
    #[should_panic(expected = "cannot mix")]
    fn mixed_field_arithmetic_panics() {
        let a = Coeff::quad(BigRational::one(), BigRational::one(), -3);
        let b = Coeff::quad(BigRational::one(), BigRational::one(), 2);
        let _ = &a + &b;
    }

    #[test]
    fn quadratic_equality_is_componentwise() {
        let a = Coeff::quad(BigRational::one(), BigRational::zero(), -3);
        assert_eq!(a, Coeff::one());
        let b = Coeff::quad(BigRational::one(), BigRational::one(), -3);
        assert_ne!(b, Coeff::one());
    }
}
