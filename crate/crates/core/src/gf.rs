//! Finite fields `F_q` for prime powers `2 <= q <= 256`.
//!
//! Elements are byte codes `0..q`. For a prime field the code is the residue
//! itself. For an extension `F_{p^k}` the code packs the coefficient vector of
//! the polynomial basis in base `p`: code `c0 + c1*p + ... + c_{k-1}*p^{k-1}`
//! represents `c0 + c1*x + ... + c_{k-1}*x^{k-1}` modulo a fixed Conway
//! polynomial, so the same `q` always produces the same tables.
//!
//! All arithmetic goes through precomputed `q x q` tables. The raw `u8` API
//! ([`Field::add`], [`Field::mul`], ...) is what the hot loops use; the checked
//! [`FieldElement`] wrapper catches elements from different fields.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Largest supported field order.
pub const MAX_ORDER: u32 = 256;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GfError {
    #[error("{0} is not a prime power")]
    NotPrimePower(u32),
    #[error("field order {0} exceeds the supported maximum {MAX_ORDER}")]
    TooLarge(u32),
    #[error("elements belong to different fields (F_{0} and F_{1})")]
    FieldMismatch(u32, u32),
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("code {code} is not an element of F_{q}")]
    BadCode { code: u32, q: u32 },
}

/// Conway polynomials for every extension degree that fits under `MAX_ORDER`.
/// Coefficients are listed from the constant term upwards, without the
/// leading 1.
const CONWAY: &[(u32, u32, &[u32])] = &[
    (2, 2, &[1, 1]),
    (2, 3, &[1, 1, 0]),
    (2, 4, &[1, 1, 0, 0]),
    (2, 5, &[1, 0, 1, 0, 0]),
    (2, 6, &[1, 1, 0, 1, 1, 0]),
    (2, 7, &[1, 1, 0, 0, 0, 0, 0]),
    (2, 8, &[1, 0, 1, 1, 1, 0, 0, 0]),
    (3, 2, &[2, 2]),
    (3, 3, &[1, 2, 0]),
    (3, 4, &[2, 0, 0, 2]),
    (3, 5, &[1, 2, 0, 0, 0]),
    (5, 2, &[2, 4]),
    (5, 3, &[3, 3, 0]),
    (7, 2, &[3, 6]),
    (11, 2, &[2, 7]),
    (13, 2, &[2, 12]),
];

fn smallest_prime_factor(q: u32) -> u32 {
    let mut d = 2;
    while d * d <= q {
        if q.is_multiple_of(d) {
            return d;
        }
        d += 1;
    }
    q
}

/// Splits `q = p^k`, or reports why it cannot be done.
pub fn prime_power(q: u32) -> Result<(u32, u32), GfError> {
    if q > MAX_ORDER {
        return Err(GfError::TooLarge(q));
    }
    if q < 2 {
        return Err(GfError::NotPrimePower(q));
    }
    let p = smallest_prime_factor(q);
    let (mut rest, mut k) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    if rest != 1 {
        return Err(GfError::NotPrimePower(q));
    }
    Ok((p, k))
}

struct Tables {
    q: u32,
    p: u32,
    k: u32,
    modulus: Vec<u32>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

/// The field `F_q`. Cheap to clone; the tables are shared.
#[derive(Clone)]
pub struct Field(Arc<Tables>);

impl Field {
    pub fn new(q: u32) -> Result<Field, GfError> {
        let (p, k) = prime_power(q)?;
        let modulus = if k == 1 {
            Vec::new()
        } else {
            CONWAY
                .iter()
                .find(|(pp, kk, _)| *pp == p && *kk == k)
                .map(|(_, _, c)| c.to_vec())
                .expect("every prime power up to 256 has a tabulated polynomial")
        };
        let qs = q as usize;
        let digits = |mut c: u32| -> Vec<u32> {
            let mut v = vec![0; k as usize];
            for d in v.iter_mut() {
                *d = c % p;
                c /= p;
            }
            v
        };
        let pack = |v: &[u32]| -> u32 { v.iter().rev().fold(0, |acc, &d| acc * p + d) };

        let mut add = vec![0u8; qs * qs];
        let mut mul = vec![0u8; qs * qs];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = pack(&sum) as u8;
                mul[(a * q + b) as usize] = pack(&poly_mulmod(&da, &db, &modulus, p)) as u8;
            }
        }
        let mut neg = vec![0u8; qs];
        let mut inv = vec![0u8; qs];
        for a in 0..qs {
            neg[a] = (0..qs).find(|&b| add[a * qs + b] == 0).unwrap() as u8;
            if a != 0 {
                // A reducible modulus would show up here as a missing inverse.
                inv[a] = (1..qs)
                    .find(|&b| mul[a * qs + b] == 1)
                    .expect("modulus is irreducible") as u8;
            }
        }
        Ok(Field(Arc::new(Tables { q, p, k, modulus, add, mul, neg, inv })))
    }

    #[inline]
    pub fn order(&self) -> u32 {
        self.0.q
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.0.k
    }

    /// Coefficients of the defining polynomial (constant term first, monic
    /// leading term omitted). Empty for prime fields.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.0.add[a as usize * self.0.q as usize + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.0.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.0.mul[a as usize * self.0.q as usize + b as usize]
    }

    /// Inverse of a nonzero code. `inv(0)` returns 0; use [`Field::try_inv`]
    /// when the argument may be zero.
    #[inline]
    pub fn inv(&self, a: u8) -> u8 {
        debug_assert!(a != 0, "inverse of zero");
        self.0.inv[a as usize]
    }

    pub fn try_inv(&self, a: u8) -> Result<u8, GfError> {
        if a == 0 {
            Err(GfError::ZeroInverse)
        } else {
            Ok(self.inv(a))
        }
    }

    pub fn pow(&self, a: u8, mut e: u64) -> u8 {
        let (mut base, mut acc) = (a, 1u8);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `a + s*b`, the row-operation primitive.
    #[inline]
    pub fn mul_add(&self, a: u8, s: u8, b: u8) -> u8 {
        self.add(a, self.mul(s, b))
    }

    /// Code of the integer `m` reduced into the prime subfield.
    pub fn from_int(&self, m: i64) -> u8 {
        m.rem_euclid(self.0.p as i64) as u8
    }

    pub fn elements(&self) -> impl Iterator<Item = u8> + Clone {
        (0..self.0.q).map(|c| c as u8)
    }

    /// The `q - 1` nonzero codes in increasing order.
    pub fn nonzero(&self) -> impl Iterator<Item = u8> + Clone {
        (1..self.0.q).map(|c| c as u8)
    }

    pub fn is_code(&self, code: u32) -> bool {
        code < self.0.q
    }

    pub fn element(&self, code: u32) -> Result<FieldElement, GfError> {
        if !self.is_code(code) {
            return Err(GfError::BadCode { code, q: self.0.q });
        }
        Ok(FieldElement { field: self.clone(), code: code as u8 })
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        // Tables are a deterministic function of q.
        self.0.q == other.0.q
    }
}

impl Eq for Field {}

impl std::hash::Hash for Field {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.order().hash(state);
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.0.q)
    }
}

fn poly_mulmod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let k = a.len();
    if k == 1 {
        return vec![(a[0] * b[0]) % p];
    }
    let mut prod = vec![0u32; 2 * k - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    // x^k = -(m_0 + m_1 x + ... + m_{k-1} x^{k-1})
    for deg in (k..prod.len()).rev() {
        let c = prod[deg];
        if c == 0 {
            continue;
        }
        prod[deg] = 0;
        for (i, &m) in modulus.iter().enumerate() {
            let idx = deg - k + i;
            prod[idx] = (prod[idx] + (p - (c * m) % p)) % p;
        }
    }
    prod.truncate(k);
    prod
}

/// An element tagged with its field, for callers that want mismatches caught.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: Field,
    code: u8,
}

impl FieldElement {
    pub fn code(&self) -> u8 {
        self.code
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.code == 0
    }

    fn check(&self, other: &FieldElement) -> Result<(), GfError> {
        if self.field != other.field {
            return Err(GfError::FieldMismatch(self.field.order(), other.field.order()));
        }
        Ok(())
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement, GfError> {
        self.check(other)?;
        Ok(FieldElement { field: self.field.clone(), code: self.field.add(self.code, other.code) })
    }

    pub fn sub(&self, other: &FieldElement) -> Result<FieldElement, GfError> {
        self.check(other)?;
        Ok(FieldElement { field: self.field.clone(), code: self.field.sub(self.code, other.code) })
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement, GfError> {
        self.check(other)?;
        Ok(FieldElement { field: self.field.clone(), code: self.field.mul(self.code, other.code) })
    }

    pub fn inv(&self) -> Result<FieldElement, GfError> {
        let code = self.field.try_inv(self.code)?;
        Ok(FieldElement { field: self.field.clone(), code })
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@F_{}", self.code, self.field.order())
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.code)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(f: &Field, c: u32) -> FieldElement {
        f.element(c).unwrap()
    }

    #[test]
    fn rejects_bad_orders() {
        assert_eq!(Field::new(1).unwrap_err(), GfError::NotPrimePower(1));
        assert_eq!(Field::new(0).unwrap_err(), GfError::NotPrimePower(0));
        assert_eq!(Field::new(6).unwrap_err(), GfError::NotPrimePower(6));
        assert_eq!(Field::new(12).unwrap_err(), GfError::NotPrimePower(12));
        assert_eq!(Field::new(257).unwrap_err(), GfError::TooLarge(257));
        assert_eq!(Field::new(512).unwrap_err(), GfError::TooLarge(512));
    }

    #[test]
    fn small_prime_fields() {
        let f2 = Field::new(2).unwrap();
        assert_eq!(f2.add(1, 1), 0);
        let f3 = Field::new(3).unwrap();
        assert_eq!(f3.add(1, 2), 0);
        let f5 = Field::new(5).unwrap();
        assert_eq!(f5.inv(2), 3);
        assert_eq!(f5.mul(2, 4), 3);
        let f7 = Field::new(7).unwrap();
        assert_eq!(f7.inv(3), 5);
    }

    #[test]
    fn f4_matches_hand_tables() {
        // Basis {1, x} with x^2 = x + 1; code c0 + 2*c1.
        let f = Field::new(4).unwrap();
        let add = [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]];
        let mul = [[0, 0, 0, 0], [0, 1, 2, 3], [0, 2, 3, 1], [0, 3, 1, 2]];
        for a in 0..4u8 {
            for b in 0..4u8 {
                assert_eq!(f.add(a, b), add[a as usize][b as usize]);
                assert_eq!(f.mul(a, b), mul[a as usize][b as usize]);
            }
        }
        assert_eq!(f.add(2, 3), 1);
        assert_eq!(f.mul(2, 2), 3);
    }

    #[test]
    fn checked_ops_catch_mismatch_and_zero() {
        let f3 = Field::new(3).unwrap();
        let f5 = Field::new(5).unwrap();
        assert_eq!(el(&f3, 1).add(&el(&f5, 1)).unwrap_err(), GfError::FieldMismatch(3, 5));
        assert_eq!(el(&f3, 1).mul(&el(&f5, 1)).unwrap_err(), GfError::FieldMismatch(3, 5));
        assert_eq!(el(&f3, 0).inv().unwrap_err(), GfError::ZeroInverse);
        assert_eq!(el(&f5, 2).mul(&el(&f5, 4)).unwrap().code(), 3);
        assert!(f3.element(3).is_err());
    }

    #[test]
    fn inverse_table_f9() {
        let f = Field::new(9).unwrap();
        for a in f.nonzero() {
            assert_eq!(f.mul(a, f.inv(a)), 1);
        }
        for q in [2, 3, 4, 5, 7, 8] {
            let f = Field::new(q).unwrap();
            assert_eq!(f.inv(1), 1);
            for b in f.elements() {
                assert_eq!(f.mul(0, b), 0);
            }
        }
    }

    #[test]
    fn field_axioms_exhaustive_up_to_16() {
        for q in [2, 3, 4, 5, 7, 8, 9, 11, 13, 16] {
            let f = Field::new(q).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.add(a, f.neg(a)), 0);
                for b in f.elements() {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in f.elements() {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn every_prime_power_builds_with_frobenius_and_primitive_generator() {
        for q in 2..=MAX_ORDER {
            let Ok((p, k)) = prime_power(q) else { continue };
            let f = Field::new(q).unwrap();
            assert_eq!((f.characteristic(), f.degree()), (p, k));
            for a in f.elements() {
                assert_eq!(f.pow(a, q as u64), a, "Frobenius in F_{q}");
            }
            for a in f.nonzero() {
                assert_eq!(f.mul(a, f.inv(a)), 1);
            }
            let nz: std::collections::BTreeSet<u8> = f.nonzero().collect();
            assert_eq!(nz.len() as u32, q - 1);
            if k > 1 {
                // Conway polynomials are primitive: x (code p) has order q - 1.
                let x = p as u8;
                let order = (1..q).find(|&e| f.pow(x, e as u64) == 1).unwrap();
                assert_eq!(order, q - 1, "x is not primitive in F_{q}");
            }
        }
    }
}
