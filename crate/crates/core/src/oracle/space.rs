//! Coordinate spaces of functionals and the generator actions on them.

use crate::gf::Field;
use crate::linalg::{position_index, positions, triangle_len, Functional, StrictUpperMatrix};

use super::orbit::OrbitMode;
use super::OracleError;

/// Which functionals a space holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Support {
    /// All of `n*`.
    Full,
    /// Functionals vanishing on `n^3`, i.e. supported on the first two superdiagonals.
    Heisenberg,
}

/// The acting group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupKind {
    /// `U_n(F_q)`, generated by `1 + t e_{i,i+1}`.
    Full,
    /// The kernel of the superdiagonal-sum homomorphism. Its algebra is
    /// `h = {X : sum X_{i,i+1} = 0}` and `h*` is modelled as `n*` modulo
    /// multiples of `gamma`, with the `(1,2)` coordinate zeroed.
    Alternating,
}

/// An elementary factor `1 + t e_{ij}`.
pub(crate) type Factor = (usize, usize, u8);

/// A set of functionals, densely coded, together with a generating set of the
/// acting group. Codes are mixed-radix over the free coordinates in storage
/// order, least significant first.
#[derive(Debug, Clone)]
pub struct FunctionalSpace {
    field: Field,
    n: usize,
    support: Support,
    group: GroupKind,
    slots: Vec<usize>,
    superdiagonal: Vec<usize>,
    generators: Vec<Vec<Factor>>,
}

impl FunctionalSpace {
    pub fn new(field: &Field, n: usize, support: Support, group: GroupKind) -> Self {
        let superdiagonal: Vec<usize> = (1..n).map(|i| position_index(n, i, i + 1)).collect();
        let slots = positions(n)
            .filter(|&(i, j)| support == Support::Full || j <= i + 2)
            .filter(|&(i, j)| !(group == GroupKind::Alternating && (i, j) == (1, 2)))
            .map(|(i, j)| position_index(n, i, j))
            .collect();
        let mut generators = Vec::new();
        match group {
            GroupKind::Full => {
                for i in 1..n {
                    for t in field.nonzero() {
                        generators.push(vec![(i, i + 1, t)]);
                    }
                }
            }
            GroupKind::Alternating => {
                for i in 1..n.saturating_sub(1) {
                    for t in field.nonzero() {
                        generators.push(vec![(i, i + 1, t), (i + 1, i + 2, field.neg(t))]);
                    }
                }
                for (i, j) in positions(n).filter(|&(i, j)| j >= i + 2) {
                    for t in field.nonzero() {
                        generators.push(vec![(i, j, t)]);
                    }
                }
            }
        }
        FunctionalSpace { field: field.clone(), n, support, group, slots, superdiagonal, generators }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn support(&self) -> Support {
        self.support
    }

    pub fn group(&self) -> GroupKind {
        self.group
    }

    /// Number of free coordinates.
    pub fn dim(&self) -> usize {
        self.slots.len()
    }

    /// `q^dim`, saturating.
    pub fn points(&self) -> u128 {
        (self.field.order() as u128).checked_pow(self.dim() as u32).unwrap_or(u128::MAX)
    }

    /// Generators of the acting group as products of elementary factors.
    pub fn generators(&self) -> &[Vec<(usize, usize, u8)>] {
        &self.generators
    }

    /// Zeroes the `(1,2)` coordinate by a `gamma` shift when the group is alternating.
    pub fn normalize(&self, coords: &mut [u8]) {
        if self.group == GroupKind::Alternating && self.n >= 2 {
            let c = coords[0];
            if c != 0 {
                for &p in &self.superdiagonal {
                    coords[p] = self.field.sub(coords[p], c);
                }
            }
        }
    }

    fn in_support(&self, coords: &[u8]) -> bool {
        self.support == Support::Full
            || positions(self.n).zip(coords).all(|((i, j), &c)| j <= i + 2 || c == 0)
    }

    pub fn encode(&self, coords: &[u8]) -> u64 {
        let q = self.field.order() as u64;
        self.slots.iter().rev().fold(0u64, |acc, &p| acc * q + coords[p] as u64)
    }

    pub fn decode(&self, mut code: u64) -> Vec<u8> {
        let q = self.field.order() as u64;
        let mut coords = vec![0u8; triangle_len(self.n)];
        for &p in &self.slots {
            coords[p] = (code % q) as u8;
            code /= q;
        }
        coords
    }

    /// Normalized coordinates of `lambda`, checking that it lives here.
    pub fn coords_of(&self, lambda: &Functional) -> Result<Vec<u8>, OracleError> {
        if lambda.field() != &self.field || lambda.n() != self.n {
            return Err(OracleError::Invalid(format!(
                "functional over F_{} with n = {} used in a space over F_{} with n = {}",
                lambda.field().order(),
                lambda.n(),
                self.field.order(),
                self.n
            )));
        }
        let mut c = lambda.coords().to_vec();
        if !self.in_support(&c) {
            return Err(OracleError::Invalid(format!("{lambda} does not vanish on n^3")));
        }
        self.normalize(&mut c);
        Ok(c)
    }

    pub fn code_of(&self, lambda: &Functional) -> Result<u64, OracleError> {
        Ok(self.encode(&self.coords_of(lambda)?))
    }

    pub fn functional(&self, coords: &[u8]) -> Functional {
        let m = StrictUpperMatrix::from_entries(&self.field, self.n, coords.to_vec())
            .expect("coordinate vector has triangle length");
        Functional::from_matrix(m)
    }

    pub fn functional_of_code(&self, code: u64) -> Functional {
        self.functional(&self.decode(code))
    }

    /// `lambda + t gamma`, normalized.
    pub fn shift_gamma(&self, coords: &[u8], t: u8) -> Vec<u8> {
        let mut c = coords.to_vec();
        for &p in &self.superdiagonal {
            c[p] = self.field.add(c[p], t);
        }
        self.normalize(&mut c);
        c
    }

    /// `lambda + tau` for a superdiagonal vector `tau`, normalized.
    pub fn shift_superdiagonal(&self, coords: &[u8], tau: &[u8]) -> Vec<u8> {
        let mut c = coords.to_vec();
        for (&p, &t) in self.superdiagonal.iter().zip(tau) {
            c[p] = self.field.add(c[p], t);
        }
        self.normalize(&mut c);
        c
    }

    // Left action of 1 + t e_ij: row j picks up -t times row i.
    fn left_factor(&self, c: &mut [u8], (i, j, t): Factor) {
        let f = &self.field;
        let mt = f.neg(t);
        for b in j + 1..=self.n {
            let (pj, pi) = (position_index(self.n, j, b), position_index(self.n, i, b));
            c[pj] = f.mul_add(c[pj], mt, c[pi]);
        }
    }

    // Right action of 1 + t e_ij: column i picks up -t times column j.
    fn right_factor(&self, c: &mut [u8], (i, j, t): Factor) {
        let f = &self.field;
        let mt = f.neg(t);
        for a in 1..i {
            let (pi, pj) = (position_index(self.n, a, i), position_index(self.n, a, j));
            c[pi] = f.mul_add(c[pi], mt, c[pj]);
        }
    }

    /// `g lambda` for `g` the product of `gen` in order.
    pub fn act_left(&self, gen: &[Factor], coords: &[u8]) -> Vec<u8> {
        let mut c = coords.to_vec();
        for &fac in gen.iter().rev() {
            self.left_factor(&mut c, fac);
        }
        self.normalize(&mut c);
        c
    }

    /// `lambda g`.
    pub fn act_right(&self, gen: &[Factor], coords: &[u8]) -> Vec<u8> {
        let mut c = coords.to_vec();
        for &fac in gen {
            self.right_factor(&mut c, fac);
        }
        self.normalize(&mut c);
        c
    }

    /// `g lambda g^{-1}`.
    pub fn act_coadjoint(&self, gen: &[Factor], coords: &[u8]) -> Vec<u8> {
        let mut c = coords.to_vec();
        for &fac in gen.iter().rev() {
            self.left_factor(&mut c, fac);
        }
        for &(i, j, t) in gen.iter().rev() {
            self.right_factor(&mut c, (i, j, self.field.neg(t)));
        }
        self.normalize(&mut c);
        c
    }

    /// Images of `coords` under every generator for the given mode.
    pub(crate) fn neighbours(&self, mode: OrbitMode, coords: &[u8]) -> Vec<Vec<u8>> {
        let mut out = Vec::with_capacity(2 * self.generators.len());
        for g in &self.generators {
            match mode {
                OrbitMode::Left => out.push(self.act_left(g, coords)),
                OrbitMode::Right => out.push(self.act_right(g, coords)),
                OrbitMode::TwoSided => {
                    out.push(self.act_left(g, coords));
                    out.push(self.act_right(g, coords));
                }
                OrbitMode::Coadjoint => out.push(self.act_coadjoint(g, coords)),
                OrbitMode::Conjugacy => unreachable!("conjugacy acts on group elements, not functionals"),
            }
        }
        out
    }
}
