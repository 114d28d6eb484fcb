//! Monic polynomials over `F_q` and the elementary-divisor families
//! `F0 = {X-1, X+1}`, `F1` (self-reciprocal irreducibles) and `F2`
//! (products `ΔΔ*` of a non-self-reciprocal irreducible with its reciprocal).

mod field;

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};

pub use field::{GaloisField, MAX_FIELD_SIZE};

use crate::error::{Error, Result};
use crate::fieldctx::{order_mod, pow_mod, prime_divisors, FieldContext, Sign};

/// Upper bound on the number of candidate polynomials a single enumeration
/// may scan.
pub const MAX_CANDIDATES: u64 = 50_000_000;

/// A monic polynomial over `F_q`, coefficients constant term first.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FqPoly {
    coeffs: Vec<u64>,
}

impl FqPoly {
    /// Builds a monic polynomial from its coefficients (constant first).
    pub fn new(coeffs: Vec<u64>) -> Result<Self> {
        match coeffs.last() {
            Some(1) => Ok(FqPoly { coeffs }),
            _ => Err(Error::InvalidPolynomial(format!("{coeffs:?} is not monic"))),
        }
    }

    /// `X + c` for an integer `c` (read in the prime field).
    pub fn linear(fq: &GaloisField, c: i64) -> Self {
        FqPoly {
            coeffs: vec![fq.from_int(c), 1],
        }
    }

    pub fn x_minus_one(fq: &GaloisField) -> Self {
        Self::linear(fq, -1)
    }

    pub fn x_plus_one(fq: &GaloisField) -> Self {
        Self::linear(fq, 1)
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn degree(&self) -> u32 {
        (self.coeffs.len() - 1) as u32
    }

    pub fn constant_term(&self) -> u64 {
        self.coeffs[0]
    }

    pub fn is_x(&self) -> bool {
        self.coeffs == [0, 1]
    }
}

impl Ord for FqPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl PartialOrd for FqPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for FqPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FqPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (k, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "X")?,
                (1, c) => write!(f, "{c}X")?,
                (k, 1) => write!(f, "X^{k}")?,
                (k, c) => write!(f, "{c}X^{k}")?,
            }
        }
        Ok(())
    }
}

// Dense polynomial arithmetic on raw coefficient vectors (constant first,
// no trailing zeros; the zero polynomial is empty).
impl GaloisField {
    fn trim(v: &mut Vec<u64>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    pub(crate) fn poly_sub(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let mut out = vec![0u64; a.len().max(b.len())];
        for (k, slot) in out.iter_mut().enumerate() {
            let x = a.get(k).copied().unwrap_or(0);
            let y = b.get(k).copied().unwrap_or(0);
            *slot = self.sub(x, y);
        }
        Self::trim(&mut out);
        out
    }

    pub(crate) fn poly_mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = self.add(out[i + j], self.mul(x, y));
            }
        }
        Self::trim(&mut out);
        out
    }

    /// Quotient and remainder of `a` by a nonzero `m`.
    pub(crate) fn poly_divrem(&self, a: &[u64], m: &[u64]) -> (Vec<u64>, Vec<u64>) {
        let mut r = a.to_vec();
        Self::trim(&mut r);
        let dm = m.len() - 1;
        let lead_inv = self
            .inv(*m.last().unwrap())
            .expect("nonzero leading coefficient");
        if r.len() <= dm {
            return (Vec::new(), r);
        }
        let mut quot = vec![0u64; r.len() - dm];
        while r.len() > dm {
            let c = self.mul(*r.last().unwrap(), lead_inv);
            let shift = r.len() - 1 - dm;
            quot[shift] = c;
            for (t, &mc) in m.iter().enumerate() {
                r[shift + t] = self.sub(r[shift + t], self.mul(c, mc));
            }
            r.pop();
            Self::trim(&mut r);
        }
        (quot, r)
    }

    pub(crate) fn poly_rem(&self, a: &[u64], m: &[u64]) -> Vec<u64> {
        self.poly_divrem(a, m).1
    }

    pub(crate) fn poly_mulmod(&self, a: &[u64], b: &[u64], m: &[u64]) -> Vec<u64> {
        self.poly_rem(&self.poly_mul(a, b), m)
    }

    pub(crate) fn poly_powmod(&self, a: &[u64], mut k: u64, m: &[u64]) -> Vec<u64> {
        let mut acc = self.poly_rem(&[1], m);
        let mut base = self.poly_rem(a, m);
        while k > 0 {
            if k & 1 == 1 {
                acc = self.poly_mulmod(&acc, &base, m);
            }
            base = self.poly_mulmod(&base, &base, m);
            k >>= 1;
        }
        acc
    }

    pub(crate) fn poly_gcd(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        Self::trim(&mut x);
        Self::trim(&mut y);
        while !y.is_empty() {
            let r = self.poly_rem(&x, &y);
            x = y;
            y = r;
        }
        if let Some(&lead) = x.last() {
            let inv = self.inv(lead).expect("nonzero");
            for c in x.iter_mut() {
                *c = self.mul(*c, inv);
            }
        }
        x
    }
}

/// Deterministic irreducibility test: `g` of degree `d` is irreducible iff
/// `X^(q^d) ≡ X (mod g)` and `gcd(X^(q^(d/r)) - X, g) = 1` for every prime
/// `r | d`.
pub fn is_irreducible(fq: &GaloisField, g: &FqPoly) -> bool {
    let d = g.degree() as usize;
    if d == 0 {
        return false;
    }
    if d == 1 {
        return true;
    }
    let m = g.coeffs();
    let x = [0u64, 1];
    // frob_powers[k] = X^(q^k) mod g
    let mut frob_powers = vec![fq.poly_rem(&x, m)];
    for k in 1..=d {
        let next = fq.poly_powmod(&frob_powers[k - 1], fq.q(), m);
        frob_powers.push(next);
    }
    if frob_powers[d] != fq.poly_rem(&x, m) {
        return false;
    }
    prime_divisors(d as u64).into_iter().all(|r| {
        let h = fq.poly_sub(&frob_powers[d / r as usize], &x);
        fq.poly_gcd(&h, m) == [1]
    })
}

fn monic_of_degree(fq: &GaloisField, d: u32) -> Result<Vec<FqPoly>> {
    let q = fq.q();
    let total = q
        .checked_pow(d)
        .filter(|&t| t <= MAX_CANDIDATES)
        .ok_or_else(|| Error::Overflow(format!("q^{d} candidate polynomials with q = {q}")))?;
    let out = (0..total)
        .map(|mut idx| {
            let mut coeffs = vec![0u64; d as usize + 1];
            // constant term is the most significant digit
            for k in (0..d as usize).rev() {
                coeffs[k] = idx % q;
                idx /= q;
            }
            coeffs[d as usize] = 1;
            FqPoly { coeffs }
        })
        .collect();
    Ok(out)
}

/// All monic irreducibles of degree `<= maxdeg`, ordered by degree then
/// coefficient vector.
pub fn enumerate_irreducibles(fq: &GaloisField, maxdeg: u32) -> Result<Vec<FqPoly>> {
    let mut out = Vec::new();
    for d in 1..=maxdeg {
        out.extend(
            monic_of_degree(fq, d)?
                .into_iter()
                .filter(|g| is_irreducible(fq, g)),
        );
    }
    Ok(out)
}

/// The monic polynomial whose roots are the inverses of the roots of `g`.
pub fn star(fq: &GaloisField, g: &FqPoly) -> Result<FqPoly> {
    let c0 = g.constant_term();
    if c0 == 0 {
        return Err(Error::InvalidPolynomial(format!(
            "{g} has zero constant term"
        )));
    }
    let inv = fq.inv(c0)?;
    let coeffs = g.coeffs().iter().rev().map(|&c| fq.mul(c, inv)).collect();
    Ok(FqPoly { coeffs })
}

/// Minimal polynomial over `F_q` of `t^(p^i)` in `F_q[t]/(g)`, for `g`
/// irreducible.
fn minpoly_of_frobenius_image(fq: &GaloisField, g: &FqPoly, i: u32) -> Result<FqPoly> {
    let d = g.degree() as usize;
    let m = g.coeffs();
    let mut beta = fq.poly_rem(&[0, 1], m);
    for _ in 0..i % (fq.f() * d as u32) {
        beta = fq.poly_powmod(&beta, fq.p(), m);
    }
    // columns: beta^0 .. beta^(d-1); right-hand side: -beta^d
    let mut powers = Vec::with_capacity(d + 1);
    let mut cur = fq.poly_rem(&[1], m);
    for _ in 0..=d {
        let mut v = cur.clone();
        v.resize(d, 0);
        powers.push(v);
        cur = fq.poly_mulmod(&cur, &beta, m);
    }
    let mut rows: Vec<Vec<u64>> = (0..d)
        .map(|r| {
            let mut row: Vec<u64> = (0..d).map(|k| powers[k][r]).collect();
            row.push(fq.neg(powers[d][r]));
            row
        })
        .collect();
    for col in 0..d {
        let pivot = (col..d)
            .find(|&r| rows[r][col] != 0)
            .ok_or_else(|| Error::InvalidPolynomial(format!("{g} is not irreducible")))?;
        rows.swap(col, pivot);
        let inv = fq.inv(rows[col][col])?;
        for x in rows[col].iter_mut() {
            *x = fq.mul(*x, inv);
        }
        let pivot_row = rows[col].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != col && row[col] != 0 {
                let factor = row[col];
                for (x, &y) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                    *x = fq.sub(*x, fq.mul(factor, y));
                }
            }
        }
    }
    let mut coeffs: Vec<u64> = rows.iter().map(|row| row[d]).collect();
    coeffs.push(1);
    Ok(FqPoly { coeffs })
}

/// The polynomial whose roots are the `p^i`-th powers of the roots of `g`.
/// `g` must be irreducible or a product `ΔΔ*`; products are handled by
/// applying the map to `Δ` and re-pairing.
pub fn frobenius(fq: &GaloisField, g: &FqPoly, i: u32) -> Result<FqPoly> {
    if i.is_multiple_of(fq.f()) {
        return Ok(g.clone());
    }
    if is_irreducible(fq, g) {
        return minpoly_of_frobenius_image(fq, g, i);
    }
    let delta = split_star_pair(fq, g)?;
    let image = minpoly_of_frobenius_image(fq, &delta, i)?;
    let image_star = star(fq, &image)?;
    Ok(FqPoly {
        coeffs: fq.poly_mul(image.coeffs(), image_star.coeffs()),
    })
}

/// Finds the canonical irreducible factor `Δ` of `g = ΔΔ*`, `Δ ≠ Δ*`.
fn split_star_pair(fq: &GaloisField, g: &FqPoly) -> Result<FqPoly> {
    let bad = || Error::InvalidPolynomial(format!("{g} is not of the form ΔΔ*"));
    let d = g.degree();
    if !d.is_multiple_of(2) || g.constant_term() == 0 {
        return Err(bad());
    }
    for cand in monic_of_degree(fq, d / 2)? {
        if cand.constant_term() == 0 || !fq.poly_rem(g.coeffs(), cand.coeffs()).is_empty() {
            continue;
        }
        if !is_irreducible(fq, &cand) {
            continue;
        }
        let cstar = star(fq, &cand)?;
        if cstar == cand {
            continue;
        }
        if fq.poly_mul(cand.coeffs(), cstar.coeffs()) == g.coeffs() {
            return Ok(cand.min(cstar));
        }
    }
    Err(bad())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    F0,
    F1,
    F2,
}

/// A classified elementary divisor together with its invariants.
#[derive(Clone, Serialize, Deserialize)]
pub struct PolyClass {
    gamma: FqPoly,
    factor: FqPoly,
    family: Family,
    deg: u32,
    delta: u32,
    sign: Sign,
    e_gamma: u64,
    beta: u32,
}

impl PolyClass {
    /// The class generated by the irreducible `delta`: `F0` for `X±1`, `F1`
    /// if `delta` is self-reciprocal, otherwise the `F2` product
    /// `delta·delta*`.
    pub fn from_irreducible(ctx: &FieldContext, fq: &GaloisField, delta: &FqPoly) -> Result<Self> {
        if delta.is_x() || delta.constant_term() == 0 {
            return Err(Error::InvalidPolynomial(
                "X is not an elementary divisor".into(),
            ));
        }
        if *delta == FqPoly::x_minus_one(fq) || *delta == FqPoly::x_plus_one(fq) {
            return Ok(PolyClass {
                gamma: delta.clone(),
                factor: delta.clone(),
                family: Family::F0,
                deg: 1,
                delta: 1,
                sign: Sign::Plus,
                e_gamma: ctx.e,
                beta: 2,
            });
        }
        let dstar = star(fq, delta)?;
        let (family, gamma, factor, reduced, sign) = if dstar == *delta {
            if !delta.degree().is_multiple_of(2) {
                return Err(Error::InvalidPolynomial(format!(
                    "self-reciprocal irreducible {delta} of odd degree"
                )));
            }
            (
                Family::F1,
                delta.clone(),
                delta.clone(),
                delta.degree() / 2,
                Sign::Minus,
            )
        } else {
            let gamma = FqPoly {
                coeffs: fq.poly_mul(delta.coeffs(), dstar.coeffs()),
            };
            let factor = delta.clone().min(dstar);
            (Family::F2, gamma, factor, delta.degree(), Sign::Plus)
        };
        let qd = pow_mod(ctx.q, reduced as u64, ctx.ell);
        let base = if sign == Sign::Minus {
            (ctx.ell - qd) % ctx.ell
        } else {
            qd
        };
        let e_gamma = order_mod(base, ctx.ell)?;
        Ok(PolyClass {
            deg: gamma.degree(),
            gamma,
            factor,
            family,
            delta: reduced,
            sign,
            e_gamma,
            beta: 1,
        })
    }

    pub fn x_minus_one(ctx: &FieldContext, fq: &GaloisField) -> Self {
        Self::from_irreducible(ctx, fq, &FqPoly::x_minus_one(fq)).expect("X-1 classifies")
    }

    pub fn x_plus_one(ctx: &FieldContext, fq: &GaloisField) -> Self {
        Self::from_irreducible(ctx, fq, &FqPoly::x_plus_one(fq)).expect("X+1 classifies")
    }

    pub fn gamma(&self) -> &FqPoly {
        &self.gamma
    }

    /// The irreducible factor carrying the class: `gamma` itself for `F0`
    /// and `F1`, the smaller of `Δ, Δ*` for `F2`.
    pub fn factor(&self) -> &FqPoly {
        &self.factor
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    /// Reduced degree. Not defined for `F0`.
    pub fn reduced_degree(&self) -> u32 {
        assert!(
            self.family != Family::F0,
            "reduced degree read on an F0 class"
        );
        self.delta
    }

    /// Sign `ε_Γ`. Not defined for `F0`.
    pub fn sign(&self) -> Sign {
        assert!(self.family != Family::F0, "sign read on an F0 class");
        self.sign
    }

    pub fn e_gamma(&self) -> u64 {
        self.e_gamma
    }

    pub fn beta(&self) -> u32 {
        self.beta
    }

    /// Number of partitions in a weight component for this class.
    pub fn branches(&self) -> usize {
        (self.beta as u64 * self.e_gamma) as usize
    }

    /// Image under `x -> x^(p^i)` on roots.
    pub fn frobenius(&self, ctx: &FieldContext, fq: &GaloisField, i: u32) -> Result<Self> {
        if self.family == Family::F0 {
            return Ok(self.clone());
        }
        let image = frobenius(fq, &self.factor, i)?;
        Self::from_irreducible(ctx, fq, &image)
    }

    /// JSON-lines record for table dumps.
    pub fn record(&self) -> ClassRecord {
        ClassRecord {
            coeffs: self.gamma.coeffs().to_vec(),
            family: self.family,
            delta: self.delta,
            sign: self.sign,
            e_gamma: self.e_gamma,
            beta_gamma: self.beta,
        }
    }
}

impl PartialEq for PolyClass {
    fn eq(&self, other: &Self) -> bool {
        self.gamma == other.gamma
    }
}

impl Eq for PolyClass {}

impl Hash for PolyClass {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.gamma.hash(state);
    }
}

impl Ord for PolyClass {
    fn cmp(&self, other: &Self) -> Ordering {
        self.gamma.cmp(&other.gamma)
    }
}

impl PartialOrd for PolyClass {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for PolyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}[{}]", self.family, self.gamma)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ClassRecord {
    pub coeffs: Vec<u64>,
    pub family: Family,
    pub delta: u32,
    pub sign: Sign,
    pub e_gamma: u64,
    pub beta_gamma: u32,
}

/// Classifies `g` as an element of `F0`, `F1` or `F2`.
pub fn classify(ctx: &FieldContext, fq: &GaloisField, g: &FqPoly) -> Result<PolyClass> {
    if is_irreducible(fq, g) {
        let class = PolyClass::from_irreducible(ctx, fq, g)?;
        if class.family == Family::F2 {
            return Err(Error::InvalidPolynomial(format!(
                "{g} is irreducible but not self-reciprocal"
            )));
        }
        return Ok(class);
    }
    let delta = split_star_pair(fq, g)?;
    if delta == FqPoly::x_minus_one(fq) || delta == FqPoly::x_plus_one(fq) {
        return Err(Error::InvalidPolynomial(format!("{g} is a power of X±1")));
    }
    PolyClass::from_irreducible(ctx, fq, &delta)
}

/// True iff every root of the class has order prime to `ell`.
pub fn is_ell_prime_order(ctx: &FieldContext, fq: &GaloisField, class: &PolyClass) -> Result<bool> {
    let h = class.factor();
    let qd = ctx.q_pow(h.degree())?;
    let m = ctx.ell_prime_part(qd - 1);
    Ok(fq.poly_powmod(&[0, 1], m, h.coeffs()) == [1])
}

/// All `F1` and `F2` classes of degree `<= maxdeg`, in canonical order.
pub fn enumerate_classes(
    ctx: &FieldContext,
    fq: &GaloisField,
    maxdeg: u32,
) -> Result<Vec<PolyClass>> {
    let mut out = Vec::new();
    for d in 1..=maxdeg {
        // F2 factors have degree deg/2; F1 members have full degree and are
        // self-reciprocal, so the star test filters before irreducibility.
        for g in monic_of_degree(fq, d)? {
            if g.constant_term() == 0 {
                continue;
            }
            let self_star = star(fq, &g)? == g;
            let wanted = if self_star {
                d % 2 == 0
            } else {
                2 * d <= maxdeg
            };
            if !wanted || !is_irreducible(fq, &g) {
                continue;
            }
            let class = PolyClass::from_irreducible(ctx, fq, &g)?;
            if class.family != Family::F0 && *class.factor() == g {
                out.push(class);
            }
        }
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fieldctx::make_context;

    fn poly(c: &[u64]) -> FqPoly {
        FqPoly::new(c.to_vec()).unwrap()
    }

    #[test]
    fn linear_irreducibles_over_f3() {
        let fq = GaloisField::new(3, 1).unwrap();
        let irr = enumerate_irreducibles(&fq, 1).unwrap();
        assert_eq!(irr, vec![poly(&[0, 1]), poly(&[1, 1]), poly(&[2, 1])]);
        let irr2 = enumerate_irreducibles(&fq, 2).unwrap();
        assert!(irr2.contains(&poly(&[1, 0, 1])));
        assert!(!irr2.contains(&poly(&[2, 0, 1])));
    }

    #[test]
    fn star_examples() {
        let f3 = GaloisField::new(3, 1).unwrap();
        let f5 = GaloisField::new(5, 1).unwrap();
        assert_eq!(star(&f3, &poly(&[1, 1])).unwrap(), poly(&[1, 1]));
        // X - 2 over F5 -> X - 3
        assert_eq!(star(&f5, &poly(&[3, 1])).unwrap(), poly(&[2, 1]));
        assert_eq!(star(&f3, &poly(&[1, 0, 1])).unwrap(), poly(&[1, 0, 1]));
        assert!(star(&f3, &poly(&[0, 1])).is_err());
    }

    #[test]
    fn classify_examples() {
        let ctx = make_context(3, 1, 5).unwrap();
        let fq = GaloisField::for_context(&ctx).unwrap();
        let c = classify(&ctx, &fq, &poly(&[2, 1])).unwrap();
        assert_eq!((c.family(), c.beta(), c.e_gamma()), (Family::F0, 2, ctx.e));
        let c = classify(&ctx, &fq, &poly(&[1, 0, 1])).unwrap();
        assert_eq!(c.family(), Family::F1);
        assert_eq!(
            (c.reduced_degree(), c.sign(), c.e_gamma()),
            (1, Sign::Minus, 4)
        );

        let ctx5 = make_context(5, 1, 3).unwrap();
        let f5 = GaloisField::for_context(&ctx5).unwrap();
        // (X-2)(X-3) = X^2 - 5X + 6 = X^2 + 1 over F5
        let c = classify(&ctx5, &f5, &poly(&[1, 0, 1])).unwrap();
        assert_eq!(c.family(), Family::F2);
        assert_eq!((c.reduced_degree(), c.sign()), (1, Sign::Plus));
        assert_eq!(c.factor(), &poly(&[2, 1]));
    }

    #[test]
    fn classify_rejects_other_shapes() {
        let ctx = make_context(3, 1, 5).unwrap();
        let fq = GaloisField::for_context(&ctx).unwrap();
        assert!(classify(&ctx, &fq, &poly(&[0, 1])).is_err());
        // (X-1)^2
        assert!(classify(&ctx, &fq, &poly(&[1, 1, 1])).is_err());
        // (X-1)(X+1)
        assert!(classify(&ctx, &fq, &poly(&[2, 0, 1])).is_err());
        // X^2 + X + 2 is irreducible and not self-reciprocal
        let g = poly(&[2, 1, 1]);
        assert!(is_irreducible(&fq, &g));
        assert!(classify(&ctx, &fq, &g).is_err());
    }

    #[test]
    #[should_panic(expected = "F0")]
    fn f0_sign_is_unreadable() {
        let ctx = make_context(3, 1, 5).unwrap();
        let fq = GaloisField::for_context(&ctx).unwrap();
        let _ = PolyClass::x_minus_one(&ctx, &fq).sign();
    }

    #[test]
    fn frobenius_examples() {
        let f5 = GaloisField::new(5, 1).unwrap();
        let g = poly(&[3, 1]);
        assert_eq!(frobenius(&f5, &g, 1).unwrap(), g);
        assert_eq!(frobenius(&f5, &poly(&[1, 1]), 3).unwrap(), poly(&[1, 1]));
        assert_eq!(frobenius(&f5, &g, 0).unwrap(), g);
    }

    #[test]
    fn ell_prime_examples() {
        let ctx = make_context(3, 1, 5).unwrap();
        let fq = GaloisField::for_context(&ctx).unwrap();
        for g in [
            FqPoly::x_minus_one(&fq),
            FqPoly::x_plus_one(&fq),
            poly(&[1, 0, 1]),
        ] {
            let c = classify(&ctx, &fq, &g).unwrap();
            assert!(is_ell_prime_order(&ctx, &fq, &c).unwrap());
        }
        // Over F9 with ell = 5: F2 classes of degree 2 have roots of order
        // dividing 8, F1 classes of degree 2 have roots of order 5 or 10.
        let ctx9 = make_context(3, 2, 5).unwrap();
        let f9 = GaloisField::for_context(&ctx9).unwrap();
        let classes = enumerate_classes(&ctx9, &f9, 2).unwrap();
        let flags: Vec<bool> = classes
            .iter()
            .map(|c| is_ell_prime_order(&ctx9, &f9, c).unwrap())
            .collect();
        assert!(flags.iter().any(|&b| b) && flags.iter().any(|&b| !b));
    }

    #[test]
    fn class_table_shapes() {
        let ctx = make_context(3, 1, 5).unwrap();
        let fq = GaloisField::for_context(&ctx).unwrap();
        let classes = enumerate_classes(&ctx, &fq, 4).unwrap();
        for c in &classes {
            assert_eq!(c.degree(), 2 * c.reduced_degree());
            match c.family() {
                Family::F1 => assert_eq!(&star(&fq, c.gamma()).unwrap(), c.gamma()),
                Family::F2 => {
                    let d = c.factor();
                    let ds = star(&fq, d).unwrap();
                    assert_ne!(&ds, d);
                    assert_eq!(fq.poly_mul(d.coeffs(), ds.coeffs()), c.gamma().coeffs());
                }
                Family::F0 => panic!("F0 in the class table"),
            }
            assert_eq!((ctx.ell - 1) % c.e_gamma(), 0);
        }
        // X^2+1 is the unique F1 class of degree 2 over F3
        let f1_deg2: Vec<_> = classes
            .iter()
            .filter(|c| c.family() == Family::F1 && c.degree() == 2)
            .collect();
        assert_eq!(f1_deg2.len(), 1);
        let rec = serde_json::to_string(&f1_deg2[0].record()).unwrap();
        assert_eq!(
            rec,
            r#"{"coeffs":[1,0,1],"family":"F1","delta":1,"sign":-1,"eGamma":4,"betaGamma":1}"#
        );
    }
}
