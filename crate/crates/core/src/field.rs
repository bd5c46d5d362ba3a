//! Exact scalar fields: the rationals and prime fields `F_p`.
//!
//! Everything downstream is generic over [`Field`]. Field values are plain
//! data; the field object carries whatever context the arithmetic needs
//! (the modulus for `F_p`).

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Runtime description of a supported field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    pub kind: FieldKind,
    /// 0 for the rationals, the prime `p` otherwise.
    pub characteristic: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldKind {
    Rationals,
    PrimeField,
}

impl FieldSpec {
    pub const RATIONALS: FieldSpec = FieldSpec {
        kind: FieldKind::Rationals,
        characteristic: 0,
    };

    pub fn prime(p: u64) -> Result<Self> {
        let spec = FieldSpec {
            kind: FieldKind::PrimeField,
            characteristic: p,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        match self.kind {
            FieldKind::Rationals if self.characteristic == 0 => Ok(()),
            FieldKind::Rationals => Err(Error::InvalidField(format!(
                "rationals must have characteristic 0, got {}",
                self.characteristic
            ))),
            FieldKind::PrimeField => {
                let p = self.characteristic;
                if !is_prime(p) {
                    return Err(Error::InvalidField(format!("{p} is not a prime")));
                }
                if p >= 1 << 31 {
                    return Err(Error::InvalidField(format!(
                        "prime {p} too large (must be below 2^31)"
                    )));
                }
                Ok(())
            }
        }
    }

    /// Parses `Q`, `GF(p)`, `F_p` or `Fp`.
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("q") || t.eq_ignore_ascii_case("rationals") {
            return Ok(FieldSpec::RATIONALS);
        }
        let digits = if let Some(rest) = t.strip_prefix("GF(").and_then(|r| r.strip_suffix(')')) {
            rest
        } else if let Some(rest) = t.strip_prefix("F_") {
            rest
        } else if let Some(rest) = t.strip_prefix('F') {
            rest
        } else {
            return Err(Error::InvalidField(format!("unrecognised field `{s}`")));
        };
        let p: u64 = digits
            .parse()
            .map_err(|_| Error::InvalidField(format!("unrecognised field `{s}`")))?;
        FieldSpec::prime(p)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            FieldKind::Rationals => write!(f, "Q"),
            FieldKind::PrimeField => write!(f, "GF({})", self.characteristic),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact field. Implementations must never lose precision.
pub trait Field: Clone + fmt::Debug + PartialEq + Eq + Send + Sync + 'static {
    type Elem: Clone + fmt::Debug + PartialEq + Eq + Hash + Send + Sync + 'static;

    fn spec(&self) -> FieldSpec;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, n: i64) -> Self::Elem;
    /// Fails when the denominator is not invertible in the field.
    #[allow(clippy::wrong_self_convention)]
    fn from_rational(&self, q: &BigRational) -> Result<Self::Elem>;

    /// Canonical text form: an integer or `p/q` in lowest terms.
    fn format(&self, a: &Self::Elem) -> String;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// `acc += b * c`
    fn add_mul_assign(&self, acc: &mut Self::Elem, b: &Self::Elem, c: &Self::Elem) {
        let prod = self.mul(b, c);
        *acc = self.add(acc, &prod);
    }

    fn parse(&self, s: &str) -> Result<Self::Elem> {
        let q = parse_rational(s)?;
        self.from_rational(&q)
    }
}

/// Parses an integer or a fraction `p/q` (no decimals).
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let t = s.trim();
    let bad = || Error::Parse(format!("invalid coefficient `{s}`"));
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = den.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

/// The field of rational numbers with arbitrary-precision numerators and
/// denominators. Values are always kept in lowest terms.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn spec(&self) -> FieldSpec {
        FieldSpec::RATIONALS
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
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
        (!a.is_zero()).then(|| a.recip())
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn from_rational(&self, q: &BigRational) -> Result<BigRational> {
        Ok(q.clone())
    }
    fn format(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn add_mul_assign(&self, acc: &mut BigRational, b: &BigRational, c: &BigRational) {
        if b.is_zero() || c.is_zero() {
            return;
        }
        *acc += b * c;
    }
}

/// The prime field `F_p` for `p < 2^31`; elements are canonical residues.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        FieldSpec::prime(p)?;
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.p;
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

    fn reduce_bigint(&self, n: &BigInt) -> u64 {
        let p = BigInt::from(self.p);
        n.mod_floor(&p).to_u64().expect("residue fits in u64")
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn spec(&self) -> FieldSpec {
        FieldSpec {
            kind: FieldKind::PrimeField,
            characteristic: self.p,
        }
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
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
    fn inv(&self, a: &u64) -> Option<u64> {
        (*a != 0).then(|| self.pow(*a, self.p - 2))
    }
    fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }
    fn from_rational(&self, q: &BigRational) -> Result<u64> {
        let num = self.reduce_bigint(q.numer());
        let den = self.reduce_bigint(q.denom());
        let inv = self.inv(&den).ok_or_else(|| {
            Error::InvalidField(format!(
                "denominator {} is not invertible in GF({})",
                q.denom().abs(),
                self.p
            ))
        })?;
        Ok(num * inv % self.p)
    }
    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
}
