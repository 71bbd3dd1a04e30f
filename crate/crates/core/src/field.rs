//! Exact coefficient fields: the rationals and prime fields.
//!
//! A field is a small value object; elements are plain data and every
//! arithmetic operation goes through the field, so `F_p` elements do not
//! have to carry their modulus around.

use std::fmt::{self, Debug, Display};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};

pub trait Field: Clone + Debug + PartialEq + Send + Sync {
    type Elem: Clone + Debug + PartialEq + Display + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse. Panics on zero; callers only invert pivots.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn characteristic(&self) -> u64;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// `a * (-1)^k` without a multiplication.
    fn signed(&self, a: &Self::Elem, negate: bool) -> Self::Elem {
        if negate {
            self.neg(a)
        } else {
            a.clone()
        }
    }

    /// `a + b*c`, the elimination kernel.
    fn mul_add(&self, a: &Self::Elem, b: &Self::Elem, c: &Self::Elem) -> Self::Elem {
        self.add(a, &self.mul(b, c))
    }

    fn name(&self) -> String;
}

/// An exact rational number. Values whose reduced numerator and
/// denominator fit in `i64` are stored inline; the representation is
/// canonical, so derived equality is value equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Rational {
    /// Numerator and positive denominator, coprime.
    Small(i64, i64),
    Big(BigRational),
}

impl Rational {
    fn from_i128(n: i128, d: i128) -> Self {
        if d == 1 {
            if let Ok(n) = i64::try_from(n) {
                return Rational::Small(n, 1);
            }
        }
        let g = n.gcd(&d);
        let (mut n, mut d) = (n / g, d / g);
        if d < 0 {
            n = -n;
            d = -d;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) => Rational::Small(n, d),
            _ => Rational::Big(BigRational::new(BigInt::from(n), BigInt::from(d))),
        }
    }

    fn from_big(r: BigRational) -> Self {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) => Rational::Small(n, d),
            _ => Rational::Big(r),
        }
    }

    fn to_big(&self) -> BigRational {
        match self {
            Rational::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Rational::Big(r) => r.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Rational::Small(0, _))
    }
}

impl Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rational::Small(n, 1) => write!(f, "{n}"),
            Rational::Small(n, d) => write!(f, "{n}/{d}"),
            Rational::Big(r) => write!(f, "{r}"),
        }
    }
}

/// The field of rational numbers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Rationals;

impl Rationals {
    fn combine(
        a: &Rational,
        b: &Rational,
        small: impl Fn(i128, i128, i128, i128) -> (i128, i128),
        big: impl Fn(BigRational, BigRational) -> BigRational,
    ) -> Rational {
        match (a, b) {
            (Rational::Small(an, ad), Rational::Small(bn, bd)) => {
                let (n, d) = small(*an as i128, *ad as i128, *bn as i128, *bd as i128);
                Rational::from_i128(n, d)
            }
            _ => Rational::from_big(big(a.to_big(), b.to_big())),
        }
    }
}

impl Field for Rationals {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::Small(0, 1)
    }
    fn one(&self) -> Rational {
        Rational::Small(1, 1)
    }
    fn from_i64(&self, v: i64) -> Rational {
        Rational::Small(v, 1)
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        Self::combine(a, b, |an, ad, bn, bd| (an * bd + bn * ad, ad * bd), |x, y| x + y)
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        Self::combine(a, b, |an, ad, bn, bd| (an * bd - bn * ad, ad * bd), |x, y| x - y)
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        Self::combine(a, b, |an, ad, bn, bd| (an * bn, ad * bd), |x, y| x * y)
    }
    fn neg(&self, a: &Rational) -> Rational {
        match a {
            Rational::Small(n, d) => Rational::from_i128(-(*n as i128), *d as i128),
            Rational::Big(r) => Rational::from_big(-r),
        }
    }
    fn inv(&self, a: &Rational) -> Rational {
        assert!(!a.is_zero(), "inverse of zero");
        match a {
            Rational::Small(n, d) => Rational::from_i128(*d as i128, *n as i128),
            Rational::Big(r) => Rational::from_big(r.recip()),
        }
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &Rational) -> bool {
        *a == Rational::Small(1, 1)
    }
    fn signed(&self, a: &Rational, negate: bool) -> Rational {
        if negate {
            self.neg(a)
        } else {
            a.clone()
        }
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn name(&self) -> String {
        "Q".to_string()
    }
}

/// The prime field `F_p`, elements stored as canonical representatives in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p >= 1 << 32 {
            return Err(Error::Parse(format!("prime {p} is too large (must be < 2^32)")));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        acc
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero");
        self.pow(*a, self.p - 2)
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn mul_add(&self, a: &u64, b: &u64, c: &u64) -> u64 {
        (a + b * c) % self.p
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn name(&self) -> String {
        format!("F_{}", self.p)
    }
}

/// Field selection as given on the command line: `q` or `fp:<prime>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum FieldChoice {
    #[default]
    Rational,
    Prime(u64),
}

impl FromStr for FieldChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase();
        if t == "q" || t == "qq" {
            return Ok(FieldChoice::Rational);
        }
        let digits = t
            .strip_prefix("fp:")
            .or_else(|| t.strip_prefix("f"))
            .ok_or_else(|| Error::Parse(format!("unknown field `{s}` (expected q or fp:<prime>)")))?;
        let p: u64 = digits
            .parse()
            .map_err(|_| Error::Parse(format!("bad prime in field `{s}`")))?;
        PrimeField::new(p)?;
        Ok(FieldChoice::Prime(p))
    }
}

impl Display for FieldChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldChoice::Rational => write!(f, "q"),
            FieldChoice::Prime(p) => write!(f, "fp:{p}"),
        }
    }
}
