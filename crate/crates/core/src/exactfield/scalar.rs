//! Exact scalar fields: prime fields `F_p` with word-size residues and the
//! rationals with arbitrary-precision numerators and denominators.

use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use crate::error::{Error, Result};

/// Runtime identity of a field, used in JSON and in mismatch errors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldTag {
    Prime(u32),
    Rational,
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldTag::Prime(p) => write!(f, "F_{p}"),
            FieldTag::Rational => write!(f, "Q"),
        }
    }
}

impl Serialize for FieldTag {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            FieldTag::Prime(p) => serde_json::json!({ "p": p }).serialize(s),
            FieldTag::Rational => s.serialize_str("Q"),
        }
    }
}

impl<'de> Deserialize<'de> for FieldTag {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Value::deserialize(d)?;
        FieldTag::from_json(&v).map_err(serde::de::Error::custom)
    }
}

impl FieldTag {
    pub fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::String(s) if s == "Q" => Ok(FieldTag::Rational),
            Value::Object(m) => {
                let p = m
                    .get("p")
                    .and_then(Value::as_u64)
                    .ok_or_else(|| Error::Invalid("field object needs an integer \"p\"".into()))?;
                PrimeField::new(p).map(|f| FieldTag::Prime(f.p))
            }
            other => Err(Error::Invalid(format!("unrecognised field {other}"))),
        }
    }

    /// Parses the CLI spelling: a prime number or `Q`.
    pub fn parse_flag(s: &str) -> Result<Self> {
        if s.eq_ignore_ascii_case("q") {
            return Ok(FieldTag::Rational);
        }
        let p: u64 = s
            .parse()
            .map_err(|_| Error::Invalid(format!("field must be a prime or Q, got {s:?}")))?;
        PrimeField::new(p).map(|f| FieldTag::Prime(f.p))
    }
}

/// An exact field. Elements are plain values; all arithmetic goes through
/// the field instance, which carries the modulus for `F_p`.
pub trait Field: Clone + fmt::Debug + PartialEq + Eq + Hash + Send + Sync + 'static {
    type Elem: Clone + fmt::Debug + PartialEq + Eq + Hash + Ord + Send + Sync;

    fn tag(&self) -> FieldTag;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn from_i64(&self, v: i64) -> Self::Elem;
    /// 0 for the rationals.
    fn characteristic(&self) -> u64;

    fn elem_to_json(&self, a: &Self::Elem) -> Value;
    fn elem_from_json(&self, v: &Value) -> Result<Self::Elem>;
    fn fmt_elem(&self, a: &Self::Elem) -> String;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// `acc + a*b`
    fn mul_add(&self, acc: &Self::Elem, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(acc, &self.mul(a, b))
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::FieldMismatch { left: self.tag(), right: other.tag() })
        }
    }
}

/// Fields whose elements can be listed. Element `i` is the residue `i`.
pub trait FiniteField: Field {
    fn order(&self) -> u64;
    fn element(&self, index: u64) -> Self::Elem;
    fn index_of(&self, a: &Self::Elem) -> u64;
}

/// `F_p` for a prime `p < 2^31`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p >= (1 << 31) || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p: p as u32 })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn reduce(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    fn pow(&self, base: u32, mut exp: u64) -> u32 {
        let p = self.p as u64;
        let mut acc = 1u64;
        let mut b = base as u64 % p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * b % p;
            }
            b = b * b % p;
            exp >>= 1;
        }
        acc as u32
    }
}

impl Field for PrimeField {
    type Elem = u32;

    fn tag(&self) -> FieldTag {
        FieldTag::Prime(self.p)
    }
    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1 % self.p
    }
    #[inline]
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let s = *a as u64 + *b as u64;
        (s % self.p as u64) as u32
    }
    #[inline]
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        let s = *a as u64 + self.p as u64 - *b as u64;
        (s % self.p as u64) as u32
    }
    #[inline]
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.p as u64) as u32
    }
    #[inline]
    fn mul_add(&self, acc: &u32, a: &u32, b: &u32) -> u32 {
        ((*acc as u64 + *a as u64 * *b as u64) % self.p as u64) as u32
    }
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            None
        } else {
            Some(self.pow(*a, self.p as u64 - 2))
        }
    }
    #[inline]
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn from_i64(&self, v: i64) -> u32 {
        self.reduce(v)
    }
    fn characteristic(&self) -> u64 {
        self.p as u64
    }
    fn elem_to_json(&self, a: &u32) -> Value {
        Value::from(*a)
    }
    fn elem_from_json(&self, v: &Value) -> Result<u32> {
        match v {
            Value::Number(n) => n
                .as_i64()
                .map(|i| self.reduce(i))
                .ok_or_else(|| Error::Invalid(format!("expected an integer residue, got {n}"))),
            Value::String(s) => {
                let r = BigRational::from_str(s.trim())
                    .map_err(|_| Error::Invalid(format!("bad scalar {s:?}")))?;
                rational_to_prime(self, &r)
            }
            other => Err(Error::Invalid(format!("expected a scalar, got {other}"))),
        }
    }
    fn fmt_elem(&self, a: &u32) -> String {
        a.to_string()
    }
}

fn rational_to_prime(f: &PrimeField, r: &BigRational) -> Result<u32> {
    let p = BigInt::from(f.p);
    let num = (r.numer() % &p + &p) % &p;
    let den = (r.denom() % &p + &p) % &p;
    let den = den.to_u32().unwrap_or(0);
    let inv = f
        .inv(&den)
        .ok_or_else(|| Error::Invalid(format!("denominator of {r} vanishes mod {}", f.p)))?;
    Ok(f.mul(&num.to_u32().unwrap_or(0), &inv))
}

impl FiniteField for PrimeField {
    fn order(&self) -> u64 {
        self.p as u64
    }
    fn element(&self, index: u64) -> u32 {
        (index % self.p as u64) as u32
    }
    fn index_of(&self, a: &u32) -> u64 {
        *a as u64
    }
}

/// The field of rational numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn tag(&self) -> FieldTag {
        FieldTag::Rational
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn elem_to_json(&self, a: &BigRational) -> Value {
        Value::String(self.fmt_elem(a))
    }
    fn elem_from_json(&self, v: &Value) -> Result<BigRational> {
        match v {
            Value::Number(n) => n
                .as_i64()
                .map(|i| self.from_i64(i))
                .ok_or_else(|| Error::Invalid(format!("expected an integer or \"a/b\", got {n}"))),
            Value::String(s) => parse_rational(s),
            other => Err(Error::Invalid(format!("expected a scalar, got {other}"))),
        }
    }
    fn fmt_elem(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
}

/// Parses `"a"`, `"-a"` or `"a/b"`; the result is in lowest terms with a
/// positive denominator.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let r = BigRational::from_str(s.trim()).map_err(|_| Error::Invalid(format!("bad rational {s:?}")))?;
    Ok(r)
}

/// Sign of a rational, for positivity checks.
pub fn is_positive(r: &BigRational) -> bool {
    r.is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_residues_stay_reduced() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.from_i64(-1), 6);
        assert_eq!(f.add(&6, &5), 4);
        assert_eq!(f.sub(&2, &5), 4);
        assert_eq!(f.mul(&3, &5), 1);
        assert_eq!(f.inv(&3), Some(5));
        assert_eq!(f.inv(&0), None);
        assert_eq!(f.neg(&0), 0);
    }

    #[test]
    fn rejects_composites_and_large_primes() {
        assert_eq!(PrimeField::new(4), Err(Error::NotPrime(4)));
        assert_eq!(PrimeField::new(1), Err(Error::NotPrime(1)));
        assert!(PrimeField::new(2_147_483_647).is_ok());
        assert!(PrimeField::new(4_294_967_311).is_err());
    }

    #[test]
    fn rationals_are_normalised() {
        let q = Rationals;
        let r = parse_rational("6/-4").unwrap();
        assert_eq!(q.fmt_elem(&r), "-3/2");
        assert_eq!(q.fmt_elem(&q.from_i64(5)), "5");
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn json_scalars() {
        let f = PrimeField::new(5).unwrap();
        assert_eq!(f.elem_from_json(&serde_json::json!(-2)).unwrap(), 3);
        assert_eq!(f.elem_from_json(&serde_json::json!("1/2")).unwrap(), 3);
        let q = Rationals;
        assert_eq!(q.elem_to_json(&parse_rational("2/4").unwrap()), serde_json::json!("1/2"));
    }

    #[test]
    fn field_tag_json() {
        let t: FieldTag = serde_json::from_str(r#"{"p": 3}"#).unwrap();
        assert_eq!(t, FieldTag::Prime(3));
        let q: FieldTag = serde_json::from_str(r#""Q""#).unwrap();
        assert_eq!(q, FieldTag::Rational);
        assert!(serde_json::from_str::<FieldTag>(r#"{"p": 9}"#).is_err());
        assert_eq!(serde_json::to_string(&FieldTag::Prime(2)).unwrap(), r#"{"p":2}"#);
    }
}
