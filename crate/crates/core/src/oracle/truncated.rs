//! The quotient `U_n / (1 + n^3)` and conjugacy class censuses.

use crate::gf::Field;
use crate::linalg::{position_index, triangle_len};

use super::orbit::{OrbitCensus, OrbitMode};
use super::space::{FunctionalSpace, GroupKind, Support};
use super::{check_guard, OracleError};

/// An element of `U_n(F_q) / (1 + n^3)`, recorded by its first two
/// superdiagonals. Multiplication:
/// `(ab).d1_i = a.d1_i + b.d1_i`,
/// `(ab).d2_i = a.d2_i + b.d2_i + a.d1_i b.d1_{i+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruncatedElement {
    field: Field,
    n: usize,
    d1: Vec<u8>,
    d2: Vec<u8>,
}

impl TruncatedElement {
    pub fn identity(field: &Field, n: usize) -> Self {
        TruncatedElement { field: field.clone(), n, d1: vec![0; n.saturating_sub(1)], d2: vec![0; n.saturating_sub(2)] }
    }

    pub fn new(field: &Field, n: usize, d1: Vec<u8>, d2: Vec<u8>) -> Result<Self, OracleError> {
        if d1.len() != n.saturating_sub(1) || d2.len() != n.saturating_sub(2) {
            return Err(OracleError::Invalid(format!(
                "truncated element for n = {n} needs {} and {} entries",
                n.saturating_sub(1),
                n.saturating_sub(2)
            )));
        }
        if let Some(&c) = d1.iter().chain(&d2).find(|&&c| !field.is_code(c as u32)) {
            return Err(OracleError::Invalid(format!("{c} is not an element of F_{}", field.order())));
        }
        Ok(TruncatedElement { field: field.clone(), n, d1, d2 })
    }

    /// Image of `1 + t e_ij`.
    pub fn elementary(field: &Field, n: usize, i: usize, j: usize, t: u8) -> Self {
        let mut e = Self::identity(field, n);
        match j - i {
            1 => e.d1[i - 1] = t,
            2 => e.d2[i - 1] = t,
            _ => {}
        }
        e
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d1(&self) -> &[u8] {
        &self.d1
    }

    pub fn d2(&self) -> &[u8] {
        &self.d2
    }

    pub fn is_identity(&self) -> bool {
        self.d1.iter().chain(&self.d2).all(|&c| c == 0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let f = &self.field;
        let d1 = self.d1.iter().zip(&other.d1).map(|(&a, &b)| f.add(a, b)).collect();
        let d2 = (0..self.d2.len())
            .map(|i| {
                let s = f.add(self.d2[i], other.d2[i]);
                f.mul_add(s, self.d1[i], other.d1[i + 1])
            })
            .collect();
        TruncatedElement { field: f.clone(), n: self.n, d1, d2 }
    }

    /// `d1 -> -d1`, `d2_i -> -d2_i + d1_i d1_{i+1}`.
    pub fn inv(&self) -> Self {
        let f = &self.field;
        let d1 = self.d1.iter().map(|&a| f.neg(a)).collect();
        let d2 = (0..self.d2.len()).map(|i| f.mul_add(f.neg(self.d2[i]), self.d1[i], self.d1[i + 1])).collect();
        TruncatedElement { field: f.clone(), n: self.n, d1, d2 }
    }

    /// Group order `q^{2n-3}` (1 for `n <= 1`).
    pub fn group_order(field: &Field, n: usize) -> u128 {
        let e = (n.saturating_sub(1) + n.saturating_sub(2)) as u32;
        (field.order() as u128).checked_pow(e).unwrap_or(u128::MAX)
    }

    /// Mixed-radix code over `d1` then `d2`.
    pub fn encode(&self) -> u64 {
        let q = self.field.order() as u64;
        self.d1.iter().chain(&self.d2).rev().fold(0u64, |acc, &c| acc * q + c as u64)
    }

    pub fn decode(field: &Field, n: usize, mut code: u64) -> Self {
        let q = field.order() as u64;
        let mut e = Self::identity(field, n);
        for c in e.d1.iter_mut().chain(e.d2.iter_mut()) {
            *c = (code % q) as u8;
            code /= q;
        }
        e
    }
}

/// Groups whose conjugacy classes the oracle can sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClassGroup {
    /// `U_n / (1 + n^3)`.
    Truncated,
    /// The image of the alternating subgroup in `U_n / (1 + n^3)`: `sum d1 = 0`.
    TruncatedAlternating,
    /// `U_n` itself, elements coded by their above-diagonal entries.
    Unitriangular,
}

/// Conjugacy classes by closure under conjugation by generators.
pub fn conjugacy_classes(group: ClassGroup, field: &Field, n: usize) -> Result<OrbitCensus, OracleError> {
    match group {
        ClassGroup::Truncated | ClassGroup::TruncatedAlternating => {
            let universe = TruncatedElement::group_order(field, n);
            check_guard(universe)?;
            let kind = if group == ClassGroup::Truncated { GroupKind::Full } else { GroupKind::Alternating };
            let gens: Vec<TruncatedElement> = FunctionalSpace::new(field, n, Support::Full, kind)
                .generators()
                .iter()
                .map(|g| {
                    g.iter().fold(TruncatedElement::identity(field, n), |acc, &(i, j, t)| {
                        acc.mul(&TruncatedElement::elementary(field, n, i, j, t))
                    })
                })
                .filter(|g| !g.is_identity())
                .collect();
            let pairs: Vec<_> = gens.iter().map(|g| (g.clone(), g.inv())).collect();
            let alternating = group == ClassGroup::TruncatedAlternating;
            Ok(OrbitCensus::build(
                OrbitMode::Conjugacy,
                universe as u64,
                |c| {
                    !alternating
                        || TruncatedElement::decode(field, n, c).d1.iter().fold(0u8, |s, &a| field.add(s, a)) == 0
                },
                |c, out| {
                    let x = TruncatedElement::decode(field, n, c);
                    out.extend(pairs.iter().map(|(g, gi)| g.mul(&x).mul(gi).encode()));
                },
            ))
        }
        ClassGroup::Unitriangular => {
            let dim = triangle_len(n);
            let universe = (field.order() as u128).checked_pow(dim as u32).unwrap_or(u128::MAX);
            check_guard(universe)?;
            let q = field.order() as u64;
            let decode = |mut code: u64| {
                let mut v = vec![0u8; dim];
                for c in v.iter_mut() {
                    *c = (code % q) as u8;
                    code /= q;
                }
                v
            };
            let encode = |v: &[u8]| v.iter().rev().fold(0u64, |acc, &c| acc * q + c as u64);
            Ok(OrbitCensus::build(
                OrbitMode::Conjugacy,
                universe as u64,
                |_| true,
                |c, out| {
                    let x = decode(c);
                    for i in 1..n {
                        for t in field.nonzero() {
                            // (1 + t e) X (1 - t e) with e = e_{i,i+1}: a row step then a column step.
                            let mut y = x.clone();
                            for b in i + 2..=n {
                                let (p, r) = (position_index(n, i, b), position_index(n, i + 1, b));
                                y[p] = field.mul_add(y[p], t, y[r]);
                            }
                            let mt = field.neg(t);
                            for a in 1..i {
                                let (p, r) = (position_index(n, a, i + 1), position_index(n, a, i));
                                y[p] = field.mul_add(y[p], mt, y[r]);
                            }
                            out.push(encode(&y));
                        }
                    }
                },
            ))
        }
    }
}
