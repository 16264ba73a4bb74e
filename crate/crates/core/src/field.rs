//! Exact scalar fields: small prime fields and the rationals.
//!
//! Everything downstream is generic over [`Field`]. The concrete field of an
//! instance is only known at runtime, so callers dispatch once through
//! [`AnyField`] and stay monomorphic afterwards.

use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

pub trait Field: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + PartialEq + Eq + Hash + Ord + fmt::Debug + fmt::Display + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `None` exactly for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn from_i64(&self, v: i64) -> Self::Elem;
    /// Image of a rational number; fails when the denominator vanishes in the field.
    fn from_rational(&self, q: &BigRational) -> Result<Self::Elem>;
    /// Canonical rational representative (for F_p the integer in `[0, p)`).
    fn to_rational(&self, a: &Self::Elem) -> BigRational;

    fn characteristic(&self) -> u64;
    /// Number of elements, `None` for infinite fields.
    fn size(&self) -> Option<u64>;
    /// All elements in canonical order, finite fields only.
    fn elements(&self) -> Option<Vec<Self::Elem>>;
    fn descriptor(&self) -> FieldDescriptor;

    fn to_json(&self, a: &Self::Elem) -> Value {
        scalar_to_json(&self.descriptor(), &self.to_rational(a))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

/// The prime field F_p with elements stored as residues in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if p < 2 || !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not a prime")));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field for PrimeField {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 + *b as u64) % self.p as u64) as u32
    }
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.p as u64) as u32
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            return None;
        }
        Some(self.pow(a, self.p as u64 - 2))
    }
    fn from_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }
    fn from_rational(&self, q: &BigRational) -> Result<u32> {
        let p = BigInt::from(self.p);
        let num = q.numer().mod_floor(&p).to_u32().unwrap_or(0);
        let den = q.denom().mod_floor(&p).to_u32().unwrap_or(0);
        let den_inv = self
            .inv(&den)
            .ok_or_else(|| Error::InvalidField(format!("denominator of {q} vanishes mod {}", self.p)))?;
        Ok(self.mul(&num, &den_inv))
    }
    fn to_rational(&self, a: &u32) -> BigRational {
        BigRational::from_integer(BigInt::from(*a))
    }
    fn characteristic(&self) -> u64 {
        self.p as u64
    }
    fn size(&self) -> Option<u64> {
        Some(self.p as u64)
    }
    fn elements(&self) -> Option<Vec<u32>> {
        Some((0..self.p).collect())
    }
    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::Fp { p: self.p }
    }
}

/// The field of rational numbers with arbitrary precision.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
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
    fn from_rational(&self, q: &BigRational) -> Result<BigRational> {
        Ok(q.clone())
    }
    fn to_rational(&self, a: &BigRational) -> BigRational {
        a.clone()
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn size(&self) -> Option<u64> {
        None
    }
    fn elements(&self) -> Option<Vec<BigRational>> {
        None
    }
    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::Rational
    }
}

/// Serialized field choice: `{"kind":"fp","p":3}` or `{"kind":"rational"}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FieldDescriptor {
    Fp { p: u32 },
    Rational,
}

impl Default for FieldDescriptor {
    fn default() -> Self {
        FieldDescriptor::Fp { p: 3 }
    }
}

impl FieldDescriptor {
    pub fn build(&self) -> Result<AnyField> {
        Ok(match *self {
            FieldDescriptor::Fp { p } => AnyField::Prime(PrimeField::new(p)?),
            FieldDescriptor::Rational => AnyField::Rational(Rationals),
        })
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::Fp { p } => write!(f, "F_{p}"),
            FieldDescriptor::Rational => write!(f, "Q"),
        }
    }
}

impl FromStr for FieldDescriptor {
    type Err = Error;

    /// Accepts `q`, `rational`, `fp3`, `f3`, `F_3` or a bare prime.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase();
        if t == "q" || t == "rational" || t == "rationals" {
            return Ok(FieldDescriptor::Rational);
        }
        let digits = t.trim_start_matches("fp").trim_start_matches("f_").trim_start_matches('f');
        let p: u32 = digits
            .parse()
            .map_err(|_| Error::InvalidField(format!("unrecognized field `{s}`")))?;
        PrimeField::new(p)?;
        Ok(FieldDescriptor::Fp { p })
    }
}

pub enum AnyField {
    Prime(PrimeField),
    Rational(Rationals),
}

/// Parses a JSON scalar: an integer, or a string holding an integer or `a/b`.
pub fn parse_scalar(v: &Value) -> Result<BigRational> {
    let bad = || Error::Parse {
        field: None,
        line: 0,
        column: 0,
        message: format!("expected an integer or a rational string, found {v}"),
    };
    match v {
        Value::Number(n) => {
            let i = n.as_i64().ok_or_else(bad)?;
            Ok(BigRational::from_integer(BigInt::from(i)))
        }
        Value::String(s) => {
            let s = s.trim();
            if let Some((a, b)) = s.split_once('/') {
                let a = BigInt::from_str(a.trim()).map_err(|_| bad())?;
                let b = BigInt::from_str(b.trim()).map_err(|_| bad())?;
                if b.is_zero() {
                    return Err(bad());
                }
                Ok(BigRational::new(a, b))
            } else {
                Ok(BigRational::from_integer(BigInt::from_str(s).map_err(|_| bad())?))
            }
        }
        _ => Err(bad()),
    }
}

/// Canonical JSON scalar: integers for F_p, strings for rationals.
pub fn scalar_to_json(field: &FieldDescriptor, q: &BigRational) -> Value {
    match field {
        FieldDescriptor::Fp { p } => {
            let p = BigInt::from(*p);
            let num = q.numer().mod_floor(&p);
            let den = q.denom().mod_floor(&p);
            // Literals stored for F_p are integers; a stray denominator is reduced too.
            let v = if den.is_one() {
                num
            } else {
                let f = PrimeField::new(p.to_u32().unwrap_or(2)).expect("prime");
                BigInt::from(f.from_rational(q).unwrap_or(0))
            };
            Value::from(v.to_i64().unwrap_or(0))
        }
        FieldDescriptor::Rational => Value::String(format_rational(q)),
    }
}

pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}
