//! Exact scalars: arbitrary-precision rationals and residues modulo a prime.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::LabError;

/// Largest modulus accepted for a prime field. Keeps products of two residues inside `u64`.
pub const MAX_PRIME: u64 = 1 << 31;

/// The ground field every object of a computation lives over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self, LabError> {
        if !is_prime(p) || p > MAX_PRIME {
            return Err(LabError::InvalidField(format!(
                "{p} is not a prime below {MAX_PRIME}"
            )));
        }
        Ok(FieldSpec::Prime(p))
    }

    /// Characteristic zero, or the prime.
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => *p,
        }
    }

    /// True when 2 is invertible.
    pub fn has_half(&self) -> bool {
        !matches!(self, FieldSpec::Prime(2))
    }

    pub fn require_half(&self, op: &'static str) -> Result<(), LabError> {
        if self.has_half() {
            Ok(())
        } else {
            Err(LabError::CharacteristicTwo(op))
        }
    }

    pub fn is_prime_field(&self) -> bool {
        matches!(self, FieldSpec::Prime(_))
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match *self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            FieldSpec::Prime(p) => Scalar::Residue {
                value: v.rem_euclid(p as i64) as u64,
                modulus: p,
            },
        }
    }

    /// Residue with value already reduced; callers in hot loops use this.
    pub fn residue(&self, v: u64) -> Scalar {
        match *self {
            FieldSpec::Rationals => self.from_i64(v as i64),
            FieldSpec::Prime(p) => Scalar::Residue {
                value: v % p,
                modulus: p,
            },
        }
    }

    /// The fraction `num/den` in this field.
    pub fn fraction(&self, num: i64, den: i64) -> Result<Scalar, LabError> {
        self.from_bigints(BigInt::from(num), BigInt::from(den))
    }

    pub fn from_bigints(&self, num: BigInt, den: BigInt) -> Result<Scalar, LabError> {
        if den.is_zero() {
            return Err(LabError::Scalar(format!("{num}/{den}: zero denominator")));
        }
        match *self {
            FieldSpec::Rationals => Ok(Scalar::Rational(BigRational::new(num, den))),
            FieldSpec::Prime(p) => {
                let pb = BigInt::from(p);
                let n = num.mod_floor(&pb).to_u64().unwrap_or(0);
                let d = den.mod_floor(&pb).to_u64().unwrap_or(0);
                if d == 0 {
                    return Err(LabError::Scalar(format!(
                        "{num}/{den}: scalar not representable in {self}"
                    )));
                }
                Ok(Scalar::Residue {
                    value: n * mod_inverse(d, p) % p,
                    modulus: p,
                })
            }
        }
    }

    /// Parses `"a/b"`, `"a"`, or `"-a/b"`.
    pub fn parse_scalar(&self, s: &str) -> Result<Scalar, LabError> {
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let num = BigInt::from_str(n).map_err(|_| LabError::Scalar(format!("cannot parse {s:?}")))?;
        let den = BigInt::from_str(d).map_err(|_| LabError::Scalar(format!("cannot parse {s:?}")))?;
        self.from_bigints(num, den)
    }

    /// Checks that `s` belongs to this field.
    pub fn contains(&self, s: &Scalar) -> bool {
        s.field() == *self
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = LabError;

    /// Accepts `Q`, `Fp:<p>`, `F<p>` and `GF(<p>)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "Q" || s.eq_ignore_ascii_case("rationals") {
            return Ok(FieldSpec::Rationals);
        }
        let digits = s
            .strip_prefix("Fp:")
            .or_else(|| s.strip_prefix('F'))
            .or_else(|| s.strip_prefix("GF(").and_then(|t| t.strip_suffix(')')))
            .ok_or_else(|| LabError::InvalidField(format!("unknown field {s:?}")))?;
        let p: u64 = digits
            .parse()
            .map_err(|_| LabError::InvalidField(format!("unknown field {s:?}")))?;
        FieldSpec::prime(p)
    }
}

impl Serialize for FieldSpec {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for FieldSpec {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    mod_pow(a, p - 2, p)
}

/// An exact field element. Rationals are kept reduced with positive denominator
/// (guaranteed by `BigRational`); residues are kept in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::Rationals,
            Scalar::Residue { modulus, .. } => FieldSpec::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    pub fn inverse(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: mod_inverse(*value, *modulus),
                modulus: *modulus,
            },
        })
    }

    /// Residue value for prime-field scalars.
    pub fn residue_value(&self) -> Option<u64> {
        match self {
            Scalar::Residue { value, .. } => Some(*value),
            Scalar::Rational(_) => None,
        }
    }

    /// Whether the scalar is an integer (always true for residues).
    pub fn is_integer(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_integer(),
            Scalar::Residue { .. } => true,
        }
    }

    /// Integer value when it fits in `i64`.
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Scalar::Rational(q) if q.is_integer() => q.to_integer().to_i64(),
            Scalar::Rational(_) => None,
            Scalar::Residue { value, .. } => Some(*value as i64),
        }
    }

    pub fn double(&self) -> Scalar {
        self + self
    }

    /// Magnitude proxy used for residual summaries: |q| for rationals, 0/1 for residues.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_negative(),
            Scalar::Residue { .. } => false,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&self.to_string())
    }
}

#[track_caller]
fn mixed(a: &Scalar, b: &Scalar) -> ! {
    panic!("scalar field mismatch: {} vs {}", a.field(), b.field())
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (
                Scalar::Residue { value: a, modulus: p },
                Scalar::Residue { value: b, modulus: q },
            ) if p == q => Scalar::Residue {
                value: (a + b) % p,
                modulus: *p,
            },
            _ => mixed(self, rhs),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (
                Scalar::Residue { value: a, modulus: p },
                Scalar::Residue { value: b, modulus: q },
            ) if p == q => Scalar::Residue {
                value: (a + p - b) % p,
                modulus: *p,
            },
            _ => mixed(self, rhs),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (
                Scalar::Residue { value: a, modulus: p },
                Scalar::Residue { value: b, modulus: q },
            ) if p == q => Scalar::Residue {
                value: a * b % p,
                modulus: *p,
            },
            _ => mixed(self, rhs),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &'a Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fields() {
        assert_eq!("Q".parse::<FieldSpec>().unwrap(), FieldSpec::Rationals);
        assert_eq!("F3".parse::<FieldSpec>().unwrap(), FieldSpec::Prime(3));
        assert_eq!("Fp:5".parse::<FieldSpec>().unwrap(), FieldSpec::Prime(5));
        assert!("F4".parse::<FieldSpec>().is_err());
        assert!("F1".parse::<FieldSpec>().is_err());
        assert!("R".parse::<FieldSpec>().is_err());
    }

    #[test]
    fn has_half_only_away_from_two() {
        assert!(FieldSpec::Rationals.has_half());
        assert!(FieldSpec::Prime(3).has_half());
        assert!(!FieldSpec::Prime(2).has_half());
        assert!(matches!(
            FieldSpec::Prime(2).require_half("split"),
            Err(LabError::CharacteristicTwo("split"))
        ));
    }

    #[test]
    fn canonical_forms() {
        let q = FieldSpec::Rationals;
        assert_eq!(q.parse_scalar("2/-4").unwrap().to_string(), "-1/2");
        assert_eq!(q.parse_scalar("6/3").unwrap().to_string(), "2");
        let f5 = FieldSpec::Prime(5);
        assert_eq!(f5.from_i64(-1).to_string(), "4");
        assert_eq!(f5.parse_scalar("1/2").unwrap().to_string(), "3");
        assert!(FieldSpec::Prime(2).parse_scalar("1/2").is_err());
    }

    #[test]
    fn residue_arithmetic() {
        let f7 = FieldSpec::Prime(7);
        let a = f7.from_i64(3);
        let b = f7.from_i64(5);
        assert_eq!((&a + &b).to_string(), "1");
        assert_eq!((&a - &b).to_string(), "5");
        assert_eq!((&a * &b).to_string(), "1");
        assert_eq!(a.inverse().unwrap(), b);
        assert!(f7.zero().inverse().is_none());
    }

    #[test]
    #[should_panic(expected = "field mismatch")]
    fn mixing_fields_panics() {
        let _ = FieldSpec::Prime(3).one() + FieldSpec::Rationals.one();
    }
}
