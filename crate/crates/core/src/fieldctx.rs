//! Arithmetic frame shared by every enumeration: the field size `q = p^f`,
//! the modular prime `ell`, the order `e` of `q^2` mod `ell`, and whether
//! `ell` is linear or unitary.

use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A sign in `{+1, -1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn pow(self, k: u64) -> Sign {
        if self == Sign::Minus && k % 2 == 1 {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sign::Plus => write!(f, "+1"),
            Sign::Minus => write!(f, "-1"),
        }
    }
}

impl Serialize for Sign {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_i8(self.value() as i8)
    }
}

impl<'de> Deserialize<'de> for Sign {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match i8::deserialize(d)? {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            v => Err(serde::de::Error::custom(format!(
                "sign must be +1 or -1, got {v}"
            ))),
        }
    }
}

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

/// Distinct prime divisors of `n`, ascending.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    let m128 = m as u128;
    let mut acc = 1u128 % m128;
    let mut b = (base % m) as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    acc as u64
}

/// Multiplicative order of `a` modulo the prime `m`.
pub fn order_mod(a: u64, m: u64) -> Result<u64> {
    if !is_prime(m) {
        return Err(Error::NotPrime(m));
    }
    let a = a % m;
    if a == 0 {
        return Err(Error::NotInvertible(a, m));
    }
    let mut k = 1u64;
    let mut x = a;
    while x != 1 {
        x = ((x as u128 * a as u128) % m as u128) as u64;
        k += 1;
    }
    Ok(k)
}

/// The parameters `(p, f, q, ell, e, epsilon)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldContext {
    pub p: u64,
    pub f: u32,
    pub q: u64,
    pub ell: u64,
    pub e: u64,
    pub epsilon: Sign,
}

impl FieldContext {
    pub fn new(p: u64, f: u32, ell: u64) -> Result<Self> {
        make_context(p, f, ell)
    }

    /// Checks that `q^(4n+2)` fits in 64 bits, which bounds every power of
    /// `q` the polynomial layer takes for rank `n`.
    pub fn check_rank(&self, n: u32) -> Result<()> {
        let exp = 4 * n + 2;
        self.q
            .checked_pow(exp)
            .map(|_| ())
            .ok_or_else(|| Error::Overflow(format!("q^{exp} with q = {}", self.q)))
    }

    /// `q^k`, or an overflow error.
    pub fn q_pow(&self, k: u32) -> Result<u64> {
        self.q
            .checked_pow(k)
            .ok_or_else(|| Error::Overflow(format!("q^{k} with q = {}", self.q)))
    }

    /// The ell'-part of `x`.
    pub fn ell_prime_part(&self, mut x: u64) -> u64 {
        while x.is_multiple_of(self.ell) {
            x /= self.ell;
        }
        x
    }
}

pub fn make_context(p: u64, f: u32, ell: u64) -> Result<FieldContext> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p == 2 {
        return Err(Error::EvenPrime {
            what: "p",
            value: p,
        });
    }
    if !is_prime(ell) {
        return Err(Error::NotPrime(ell));
    }
    if ell == 2 {
        return Err(Error::EvenPrime {
            what: "ell",
            value: ell,
        });
    }
    if ell == p {
        return Err(Error::DefiningCharacteristic(ell));
    }
    if f == 0 {
        return Err(Error::Overflow("f must be positive".into()));
    }
    let q = p
        .checked_pow(f)
        .ok_or_else(|| Error::Overflow(format!("{p}^{f}")))?;
    let q2 = pow_mod(q, 2, ell);
    let e = order_mod(q2, ell)?;
    let qe = pow_mod(q, e, ell);
    let epsilon = if qe == 1 {
        Sign::Plus
    } else {
        debug_assert_eq!(qe, ell - 1);
        Sign::Minus
    };
    Ok(FieldContext {
        p,
        f,
        q,
        ell,
        e,
        epsilon,
    })
}
