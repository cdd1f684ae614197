//! Exact scalars: the rationals and prime fields with a runtime modulus.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};

/// Largest supported prime modulus; products of two residues fit in a `u64`.
pub const MAX_PRIME: u32 = (1 << 31) - 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rationals,
    Prime(u32),
}

impl Field {
    pub fn prime(p: u32) -> Result<Field> {
        if !is_prime(p) || p > MAX_PRIME {
            return Err(Error::Parse(format!("{p} is not a supported prime modulus")));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(self) -> u32 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => p,
        }
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Scalar::Modular { value: n.rem_euclid(p as i64) as u32, modulus: p },
        }
    }

    pub fn from_bigint(self, n: &BigInt) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rational(BigRational::from_integer(n.clone())),
            Field::Prime(p) => {
                let r = n % BigInt::from(p);
                let r = if r.is_negative() { r + BigInt::from(p) } else { r };
                Scalar::Modular { value: r.to_u32().unwrap(), modulus: p }
            }
        }
    }

    /// `num / den`, rejecting a vanishing denominator.
    pub fn from_ratio(self, num: &BigInt, den: &BigInt) -> Result<Scalar> {
        let d = self.from_bigint(den);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.from_bigint(num) * d.inv()?)
    }

    /// Parses an integer, a fraction `a/b`, or a residue.
    pub fn parse_scalar(self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        let bad = || Error::Parse(format!("bad coefficient `{s}`"));
        match s.split_once('/') {
            Some((a, b)) => {
                let a = BigInt::from_str(a.trim()).map_err(|_| bad())?;
                let b = BigInt::from_str(b.trim()).map_err(|_| bad())?;
                self.from_ratio(&a, &b)
            }
            None => Ok(self.from_bigint(&BigInt::from_str(s).map_err(|_| bad())?)),
        }
    }

    /// Uniform over F_p; integers in `[-height, height]` over Q.
    pub fn random<R: Rng + ?Sized>(self, rng: &mut R, height: i64) -> Scalar {
        match self {
            Field::Rationals => self.from_i64(rng.gen_range(-height..=height)),
            Field::Prime(p) => Scalar::Modular { value: rng.gen_range(0..p), modulus: p },
        }
    }

    /// Like [`Field::random`] but never zero.
    pub fn random_nonzero<R: Rng + ?Sized>(self, rng: &mut R, height: i64) -> Scalar {
        loop {
            let x = self.random(rng, height.max(1));
            if !x.is_zero() {
                return x;
            }
        }
    }

    /// All elements of a prime field in residue order.
    pub fn elements(self) -> Result<Vec<Scalar>> {
        match self {
            Field::Rationals => Err(Error::Precondition("Q is infinite".into())),
            Field::Prime(p) => Ok((0..p).map(|v| Scalar::Modular { value: v, modulus: p }).collect()),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Field> {
        let s = s.trim();
        if s == "Q" || s == "QQ" {
            return Ok(Field::Rationals);
        }
        let digits = s
            .strip_prefix("Fp:")
            .or_else(|| s.strip_prefix("GF("))
            .map(|d| d.trim_end_matches(')'))
            .or_else(|| s.strip_prefix('F'))
            .ok_or_else(|| Error::Parse(format!("unknown field `{s}`")))?;
        let p: u32 = digits.parse().map_err(|_| Error::Parse(format!("unknown field `{s}`")))?;
        Field::prime(p)
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn inv_mod(a: u32, p: u32) -> u32 {
    let (mut t, mut new_t) = (0i64, 1i64);
    let (mut r, mut new_r) = (p as i64, a as i64);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    debug_assert_eq!(r, 1);
    t.rem_euclid(p as i64) as u32
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Modular { value: u32, modulus: u32 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rationals,
            Scalar::Modular { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Modular { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Modular { value, .. } => *value == 1,
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Modular { value, modulus } => {
                Scalar::Modular { value: inv_mod(*value, *modulus), modulus: *modulus }
            }
        })
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, mut e: u32) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Residue of an F_p element, numerator/denominator of a rational.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(r) => Some(r),
            Scalar::Modular { .. } => None,
        }
    }

    pub fn residue(&self) -> Option<u32> {
        match self {
            Scalar::Modular { value, .. } => Some(*value),
            Scalar::Rational(_) => None,
        }
    }

    /// Height-like size used to pick sparse pivots over Q.
    pub(crate) fn weight(&self) -> usize {
        match self {
            Scalar::Rational(r) => (r.numer().bits() + r.denom().bits()) as usize,
            Scalar::Modular { .. } => 1,
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Scalar::Rational(r) if r.is_integer() => r.to_integer().to_i64(),
            Scalar::Rational(_) => None,
            Scalar::Modular { value, modulus } => {
                let v = *value as i64;
                let m = *modulus as i64;
                Some(if v > m / 2 { v - m } else { v })
            }
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{r}"),
            Scalar::Modular { value, .. } => write!(f, "{value}"),
        }
    }
}

#[inline]
fn same_modulus(a: u32, b: u32) -> u32 {
    assert_eq!(a, b, "scalars from different prime fields");
    a
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Modular { value: a, modulus: p }, Scalar::Modular { value: b, modulus: q }) => {
                let p = same_modulus(*p, *q);
                let s = *a as u64 + *b as u64;
                Scalar::Modular { value: (s % p as u64) as u32, modulus: p }
            }
            _ => panic!("scalars from different fields"),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (Scalar::Modular { value: a, modulus: p }, Scalar::Modular { value: b, modulus: q }) => {
                let p = same_modulus(*p, *q);
                let s = *a as u64 + (p - *b) as u64;
                Scalar::Modular { value: (s % p as u64) as u32, modulus: p }
            }
            _ => panic!("scalars from different fields"),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Modular { value: a, modulus: p }, Scalar::Modular { value: b, modulus: q }) => {
                let p = same_modulus(*p, *q);
                Scalar::Modular { value: ((*a as u64 * *b as u64) % p as u64) as u32, modulus: p }
            }
            _ => panic!("scalars from different fields"),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Modular { value, modulus } => {
                Scalar::Modular { value: if *value == 0 { 0 } else { modulus - value }, modulus: *modulus }
            }
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { (&self).$m(&rhs) }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar { (&self).$m(rhs) }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { self.$m(&rhs) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modular_arithmetic_is_canonical() {
        let f = Field::prime(7).unwrap();
        let a = f.from_i64(-3);
        assert_eq!(a.residue(), Some(4));
        assert_eq!((&a * &a).residue(), Some(2));
        assert!((&a * &a.inv().unwrap()).is_one());
        assert_eq!((-&a).residue(), Some(3));
    }

    #[test]
    fn division_by_zero_is_rejected() {
        assert!(Field::Rationals.zero().inv().is_err());
        assert!(Field::Prime(5).parse_scalar("1/5").is_err());
        assert_eq!(Field::Prime(5).parse_scalar("1/2").unwrap().residue(), Some(3));
    }

    #[test]
    fn parses_fields() {
        assert_eq!("Q".parse::<Field>().unwrap(), Field::Rationals);
        assert_eq!("Fp:101".parse::<Field>().unwrap(), Field::Prime(101));
        assert!("Fp:100".parse::<Field>().is_err());
    }

    #[test]
    fn rational_fractions() {
        let q = Field::Rationals;
        let x = q.parse_scalar("-2/6").unwrap();
        assert_eq!(x.to_string(), "-1/3");
        assert_eq!((&x + &q.from_i64(1)).to_string(), "2/3");
    }
}
