//! Arithmetic in `F_q`, `q = p^f`.
//!
//! Elements are encoded as integers in `[0, q)`: the base-`p` digits of an
//! element are its coordinates in `F_p[y]/(m(y))`, where `m` is the
//! lexicographically first monic irreducible of degree `f` over `F_p`. For
//! `f = 1` the encoding is the residue mod `p`. Multiplication goes through
//! discrete-log tables built once per field.

use crate::error::{Error, Result};
use crate::fieldctx::{is_prime, FieldContext};

/// Largest field size for which tables are built.
pub const MAX_FIELD_SIZE: u64 = 1 << 20;

#[derive(Debug, Clone)]
pub struct GaloisField {
    p: u64,
    f: u32,
    q: u64,
    exp: Vec<u64>,
    log: Vec<u64>,
}

impl GaloisField {
    pub fn new(p: u64, f: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let q = p
            .checked_pow(f)
            .filter(|&q| q <= MAX_FIELD_SIZE)
            .ok_or_else(|| Error::Overflow(format!("field of size {p}^{f} is too large")))?;
        let modulus = if f == 1 {
            vec![0, 1]
        } else {
            first_irreducible_over_prime(p, f as usize)
        };
        let mul_slow = |a: u64, b: u64| -> u64 {
            let da = digits(a, p, f as usize);
            let db = digits(b, p, f as usize);
            let mut prod = vec![0u64; 2 * f as usize];
            for (i, &x) in da.iter().enumerate() {
                for (j, &y) in db.iter().enumerate() {
                    prod[i + j] = (prod[i + j] + x * y) % p;
                }
            }
            // reduce modulo the monic modulus
            for k in (f as usize..prod.len()).rev() {
                let c = prod[k];
                if c == 0 {
                    continue;
                }
                for (t, &m) in modulus.iter().enumerate() {
                    let idx = k - f as usize + t;
                    prod[idx] = (prod[idx] + (p - c) * m) % p;
                }
            }
            undigits(&prod[..f as usize], p)
        };

        let order = q - 1;
        let mut exp = Vec::new();
        for g in 1..q {
            exp.clear();
            let mut x = 1u64;
            loop {
                exp.push(x);
                x = mul_slow(x, g);
                if x == 1 || exp.len() as u64 > order {
                    break;
                }
            }
            if exp.len() as u64 == order {
                break;
            }
        }
        debug_assert_eq!(exp.len() as u64, order);
        let mut log = vec![0u64; q as usize];
        for (k, &x) in exp.iter().enumerate() {
            log[x as usize] = k as u64;
        }
        Ok(GaloisField { p, f, q, exp, log })
    }

    pub fn for_context(ctx: &FieldContext) -> Result<Self> {
        Self::new(ctx.p, ctx.f)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn f(&self) -> u32 {
        self.f
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Image of an integer under `Z -> F_p ⊆ F_q`.
    pub fn from_int(&self, k: i64) -> u64 {
        k.rem_euclid(self.p as i64) as u64
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        if self.f == 1 {
            return (a + b) % self.p;
        }
        let (mut a, mut b, mut out, mut place) = (a, b, 0u64, 1u64);
        for _ in 0..self.f {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn neg(&self, a: u64) -> u64 {
        if self.f == 1 {
            return (self.p - a % self.p) % self.p;
        }
        let (mut a, mut out, mut place) = (a, 0u64, 1u64);
        for _ in 0..self.f {
            out += ((self.p - a % self.p) % self.p) * place;
            a /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        let k = (self.log[a as usize] + self.log[b as usize]) % (self.q - 1);
        self.exp[k as usize]
    }

    pub fn inv(&self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(Error::NotInvertible(0, self.q));
        }
        let k = (self.q - 1 - self.log[a as usize]) % (self.q - 1);
        Ok(self.exp[k as usize])
    }

    pub fn pow(&self, a: u64, k: u64) -> u64 {
        if k == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let l = (self.log[a as usize] as u128 * k as u128) % (self.q - 1) as u128;
        self.exp[l as usize]
    }

    /// `a^(p^i)`.
    pub fn frob(&self, a: u64, i: u32) -> u64 {
        let mut x = a;
        for _ in 0..(i % self.f) {
            x = self.pow(x, self.p);
        }
        x
    }
}

fn digits(mut a: u64, p: u64, len: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(a % p);
        a /= p;
    }
    out
}

fn undigits(ds: &[u64], p: u64) -> u64 {
    ds.iter().rev().fold(0, |acc, &d| acc * p + d)
}

/// Lexicographically first monic irreducible of degree `d` over `F_p`
/// (constant term most significant), by trial division.
fn first_irreducible_over_prime(p: u64, d: usize) -> Vec<u64> {
    let total = p.pow(d as u32);
    let mut candidates: Vec<Vec<u64>> = (0..total)
        .map(|idx| {
            let mut c = digits(idx, p, d);
            c.reverse();
            c.push(1);
            c
        })
        .collect();
    candidates.sort();
    for c in candidates {
        if c[0] == 0 {
            continue;
        }
        let mut reducible = false;
        'outer: for k in 1..=d / 2 {
            for idx in 0..p.pow(k as u32) {
                let mut div = digits(idx, p, k);
                div.push(1);
                if prime_rem(&c, &div, p).iter().all(|&x| x == 0) {
                    reducible = true;
                    break 'outer;
                }
            }
        }
        if !reducible {
            return c;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn prime_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let c = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        for (t, &mc) in m.iter().enumerate() {
            r[shift + t] = (r[shift + t] + (p - c) * mc % p) % p;
        }
        r.pop();
    }
    r
}
