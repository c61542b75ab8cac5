//! Ground fields: prime fields `F_p` with `p < 2^31` and the rationals.
//!
//! Both implement [`Field`], a runtime field descriptor that carries whatever
//! context arithmetic needs (the modulus for `F_p`). Elements are plain values
//! so matrices and polynomials can store them densely.

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, RngCore};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::poly;

pub trait Field: Clone + fmt::Debug + PartialEq + Eq + Send + Sync + 'static {
    type Elem: Clone + fmt::Debug + PartialEq + Eq + Hash + Send + Sync + 'static;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    /// 0 for the rationals.
    fn characteristic(&self) -> u64;

    /// Number of elements, `None` when infinite.
    fn order(&self) -> Option<u64>;

    /// All elements in a fixed order, for finite fields.
    fn elements(&self) -> Option<Vec<Self::Elem>>;

    /// Uniform for `F_p`; small integers for `Q`.
    fn random(&self, rng: &mut dyn RngCore) -> Self::Elem;

    /// Smallest nonnegative integer representative, for prime fields.
    fn lift(&self, a: &Self::Elem) -> Option<u64>;

    fn spec(&self) -> FieldSpec;

    fn to_json(&self, a: &Self::Elem) -> serde_json::Value;

    fn from_json(&self, v: &serde_json::Value) -> Result<Self::Elem>;

    /// Splits a polynomial (low degree first) into two nonconstant coprime
    /// factors when it has at least two distinct irreducible factors.
    fn coprime_split(
        &self,
        m: &[Self::Elem],
        rng: &mut dyn RngCore,
    ) -> Result<Option<(Vec<Self::Elem>, Vec<Self::Elem>)>>;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
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

/// Serializable description of a ground field, as found in algebra files.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldSpec {
    Prime { p: u64 },
    Rational { rational: bool },
}

impl FieldSpec {
    pub fn default_prime() -> Self {
        FieldSpec::Prime { p: DEFAULT_PRIME }
    }
}

pub const DEFAULT_PRIME: u64 = 1009;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p >= (1 << 31) || !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not a prime below 2^31")));
        }
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn reduce(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, v: i64) -> u64 {
        self.reduce(v)
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
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            None
        } else {
            Some(self.pow(a, self.p - 2))
        }
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn order(&self) -> Option<u64> {
        Some(self.p)
    }
    fn elements(&self) -> Option<Vec<u64>> {
        Some((0..self.p).collect())
    }
    fn random(&self, rng: &mut dyn RngCore) -> u64 {
        rng.gen_range(0..self.p)
    }
    fn lift(&self, a: &u64) -> Option<u64> {
        Some(*a)
    }
    fn spec(&self) -> FieldSpec {
        FieldSpec::Prime { p: self.p }
    }
    fn to_json(&self, a: &u64) -> serde_json::Value {
        serde_json::Value::from(*a)
    }
    fn from_json(&self, v: &serde_json::Value) -> Result<u64> {
        if let Some(i) = v.as_i64() {
            return Ok(self.reduce(i));
        }
        if let Some(u) = v.as_u64() {
            return Ok(u % self.p);
        }
        Err(Error::Parse(format!("expected an integer entry, got {v}")))
    }
    fn coprime_split(&self, m: &[u64], rng: &mut dyn RngCore) -> Result<Option<(Vec<u64>, Vec<u64>)>> {
        poly::coprime_split_prime(self, m, rng)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
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
    fn characteristic(&self) -> u64 {
        0
    }
    fn order(&self) -> Option<u64> {
        None
    }
    fn elements(&self) -> Option<Vec<BigRational>> {
        None
    }
    fn random(&self, rng: &mut dyn RngCore) -> BigRational {
        self.from_i64(rng.gen_range(-4..=4))
    }
    fn lift(&self, _a: &BigRational) -> Option<u64> {
        None
    }
    fn spec(&self) -> FieldSpec {
        FieldSpec::Rational { rational: true }
    }
    fn to_json(&self, a: &BigRational) -> serde_json::Value {
        if a.is_integer() {
            if let Some(i) = a.to_integer().to_i64() {
                return serde_json::Value::from(i);
            }
        }
        serde_json::Value::from(a.to_string())
    }
    fn from_json(&self, v: &serde_json::Value) -> Result<BigRational> {
        if let Some(i) = v.as_i64() {
            return Ok(self.from_i64(i));
        }
        if let Some(s) = v.as_str() {
            return parse_rational(s);
        }
        Err(Error::Parse(format!("expected an integer or \"a/b\" entry, got {v}")))
    }
    fn coprime_split(
        &self,
        m: &[BigRational],
        _rng: &mut dyn RngCore,
    ) -> Result<Option<(Vec<BigRational>, Vec<BigRational>)>> {
        poly::coprime_split_rational(self, m)
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("bad rational literal {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

/// Rational numbers are kept in lowest terms with a positive denominator by
/// `num_rational`; this only double-checks it for tests.
pub fn is_normalized(q: &BigRational) -> bool {
    use num_integer::Integer;
    q.denom().is_positive() && q.numer().gcd(q.denom()).is_one()
}
