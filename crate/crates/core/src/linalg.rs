//! The algebra `u_n(F_q)` of strictly upper triangular matrices, the group
//! `U_n(F_q) = 1 + u_n(F_q)`, and the dual space of functionals with its left,
//! right and coadjoint actions.
//!
//! Indices are 1-based throughout: position `(i, j)` means row `i`, column `j`
//! with `1 <= i < j <= n`. The above-diagonal triangle is stored densely in
//! row-major order, see [`position_index`].

use std::fmt;

use thiserror::Error;

use crate::gf::{Field, GfError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("field mismatch: F_{0} vs F_{1}")]
    FieldMismatch(u32, u32),
    #[error("expected {expected} entries, got {got}")]
    BadLength { expected: usize, got: usize },
    #[error(transparent)]
    Field(#[from] GfError),
    #[error("cannot parse functional: {0}")]
    Parse(String),
}

/// Number of above-diagonal positions of an `n x n` matrix.
#[inline]
pub fn triangle_len(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Offset of position `(i, j)` in the row-major triangle.
#[inline]
pub fn position_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(1 <= i && i < j && j <= n, "({i},{j}) is not above the diagonal of {n}x{n}");
    (i - 1) * n - (i - 1) * i / 2 + (j - i - 1)
}

/// All positions `(i, j)`, `i < j`, in storage order.
pub fn positions(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..=n).flat_map(move |i| (i + 1..=n).map(move |j| (i, j)))
}

/// Support of the ideal `n^k`: positions with `j >= i + k`.
pub fn ideal_positions(n: usize, k: usize) -> Vec<(usize, usize)> {
    assert!(k >= 1, "ideal power must be positive");
    positions(n).filter(|&(i, j)| j >= i + k).collect()
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct StrictUpperMatrix {
    field: Field,
    n: usize,
    entries: Vec<u8>,
}

impl StrictUpperMatrix {
    pub fn zero(field: &Field, n: usize) -> Self {
        StrictUpperMatrix { field: field.clone(), n, entries: vec![0; triangle_len(n)] }
    }

    pub fn from_entries(field: &Field, n: usize, entries: Vec<u8>) -> Result<Self, LinalgError> {
        if entries.len() != triangle_len(n) {
            return Err(LinalgError::BadLength { expected: triangle_len(n), got: entries.len() });
        }
        if let Some(&c) = entries.iter().find(|&&c| !field.is_code(c as u32)) {
            return Err(GfError::BadCode { code: c as u32, q: field.order() }.into());
        }
        Ok(StrictUpperMatrix { field: field.clone(), n, entries })
    }

    /// Builds a matrix from `(i, j, code)` triples; later triples overwrite.
    pub fn from_triples(field: &Field, n: usize, triples: &[(usize, usize, u8)]) -> Self {
        let mut m = Self::zero(field, n);
        for &(i, j, c) in triples {
            m.set(i, j, c);
        }
        m
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn field(&self) -> &Field {
        &self.field
    }

    #[inline]
    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.entries[position_index(self.n, i, j)]
    }

    /// Entry `(i, j)` for any `1 <= i, j <= n`, zero on and below the diagonal.
    #[inline]
    pub fn entry(&self, i: usize, j: usize) -> u8 {
        if i < j {
            self.get(i, j)
        } else {
            0
        }
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, c: u8) {
        debug_assert!(self.field.is_code(c as u32));
        let idx = position_index(self.n, i, j);
        self.entries[idx] = c;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&c| c == 0)
    }

    /// Nonzero entries as `(i, j, code)` in storage order.
    pub fn support(&self) -> Vec<(usize, usize, u8)> {
        positions(self.n)
            .zip(&self.entries)
            .filter(|(_, &c)| c != 0)
            .map(|((i, j), &c)| (i, j, c))
            .collect()
    }

    fn compatible(&self, other: &Self) -> Result<(), LinalgError> {
        if self.field != other.field {
            return Err(LinalgError::FieldMismatch(self.field.order(), other.field.order()));
        }
        if self.n != other.n {
            return Err(LinalgError::DimensionMismatch(self.n, other.n));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, LinalgError> {
        self.compatible(other)?;
        let f = &self.field;
        let entries = self.entries.iter().zip(&other.entries).map(|(&a, &b)| f.add(a, b)).collect();
        Ok(StrictUpperMatrix { field: f.clone(), n: self.n, entries })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, LinalgError> {
        self.compatible(other)?;
        let f = &self.field;
        let entries = self.entries.iter().zip(&other.entries).map(|(&a, &b)| f.sub(a, b)).collect();
        Ok(StrictUpperMatrix { field: f.clone(), n: self.n, entries })
    }

    pub fn scale(&self, s: u8) -> Self {
        let f = &self.field;
        StrictUpperMatrix {
            field: f.clone(),
            n: self.n,
            entries: self.entries.iter().map(|&a| f.mul(s, a)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(self.field.neg(1))
    }

    /// Matrix product; strictly upper matrices are closed under it.
    pub fn mul(&self, other: &Self) -> Result<Self, LinalgError> {
        self.compatible(other)?;
        let (f, n) = (&self.field, self.n);
        let mut out = Self::zero(f, n);
        for i in 1..=n {
            for k in i + 1..=n {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in k + 1..=n {
                    let b = other.get(k, j);
                    if b != 0 {
                        let idx = position_index(n, i, j);
                        out.entries[idx] = f.mul_add(out.entries[idx], a, b);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Full `n x n` array, rows and columns 0-based.
    pub fn to_dense(&self) -> Vec<Vec<u8>> {
        let mut d = vec![vec![0u8; self.n]; self.n];
        for ((i, j), &c) in positions(self.n).zip(&self.entries) {
            d[i - 1][j - 1] = c;
        }
        d
    }
}

impl fmt::Debug for StrictUpperMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "u_{}(F_{})", self.n, self.field.order())?;
        f.debug_list().entries(self.support()).finish()
    }
}

/// An element `1 + X` of `U_n(F_q)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct UnitriangularElement {
    above: StrictUpperMatrix,
}

impl UnitriangularElement {
    pub fn identity(field: &Field, n: usize) -> Self {
        UnitriangularElement { above: StrictUpperMatrix::zero(field, n) }
    }

    pub fn from_above(above: StrictUpperMatrix) -> Self {
        UnitriangularElement { above }
    }

    /// `1 + t e_{ij}`.
    pub fn elementary(field: &Field, n: usize, i: usize, j: usize, t: u8) -> Self {
        let mut above = StrictUpperMatrix::zero(field, n);
        above.set(i, j, t);
        UnitriangularElement { above }
    }

    pub fn above(&self) -> &StrictUpperMatrix {
        &self.above
    }

    pub fn n(&self) -> usize {
        self.above.n
    }

    pub fn field(&self) -> &Field {
        &self.above.field
    }

    pub fn is_identity(&self) -> bool {
        self.above.is_zero()
    }

    /// Entry `(i, j)` of the full matrix, including the unit diagonal.
    pub fn entry(&self, i: usize, j: usize) -> u8 {
        if i == j {
            1
        } else {
            self.above.entry(i, j)
        }
    }

    /// `(1 + A)(1 + B) = 1 + A + B + AB`.
    pub fn mul(&self, other: &Self) -> Result<Self, LinalgError> {
        let ab = self.above.mul(&other.above)?;
        let above = self.above.add(&other.above)?.add(&ab)?;
        Ok(UnitriangularElement { above })
    }

    /// `(1 + X)^{-1} = 1 - X + X^2 - ...`, which stops because `X^n = 0`.
    pub fn inv(&self) -> Self {
        let minus_x = self.above.neg();
        let mut term = minus_x.clone();
        let mut sum = minus_x.clone();
        for _ in 2..self.n() {
            term = term.mul(&minus_x).expect("same shape");
            if term.is_zero() {
                break;
            }
            sum = sum.add(&term).expect("same shape");
        }
        UnitriangularElement { above: sum }
    }

    pub fn to_dense(&self) -> Vec<Vec<u8>> {
        let mut d = self.above.to_dense();
        for (i, row) in d.iter_mut().enumerate() {
            row[i] = 1;
        }
        d
    }
}

/// Sum of the first-superdiagonal entries.
pub fn sigma(g: &UnitriangularElement) -> u8 {
    let f = g.field();
    (1..g.n()).fold(0, |acc, i| f.add(acc, g.entry(i, i + 1)))
}

/// A linear functional on `u_n(F_q)`, stored through its matrix: the unique
/// strictly upper `X` with `lambda(Y) = sum_{i<j} X_ij Y_ij`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Functional {
    matrix: StrictUpperMatrix,
}

impl Functional {
    pub fn zero(field: &Field, n: usize) -> Self {
        Functional { matrix: StrictUpperMatrix::zero(field, n) }
    }

    pub fn from_matrix(matrix: StrictUpperMatrix) -> Self {
        Functional { matrix }
    }

    /// `t e*_{ij}`.
    pub fn basis(field: &Field, n: usize, i: usize, j: usize, t: u8) -> Self {
        let mut m = StrictUpperMatrix::zero(field, n);
        m.set(i, j, t);
        Functional { matrix: m }
    }

    pub fn from_triples(field: &Field, n: usize, triples: &[(usize, usize, u8)]) -> Self {
        Functional { matrix: StrictUpperMatrix::from_triples(field, n, triples) }
    }

    /// `gamma = e*_{12} + e*_{23} + ... + e*_{n-1,n}`.
    pub fn gamma(field: &Field, n: usize) -> Self {
        let triples: Vec<_> = (1..n).map(|i| (i, i + 1, 1u8)).collect();
        Self::from_triples(field, n, &triples)
    }

    pub fn matrix(&self) -> &StrictUpperMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> StrictUpperMatrix {
        self.matrix
    }

    pub fn n(&self) -> usize {
        self.matrix.n
    }

    pub fn field(&self) -> &Field {
        &self.matrix.field
    }

    pub fn coords(&self) -> &[u8] {
        &self.matrix.entries
    }

    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.matrix.get(i, j)
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn eval(&self, x: &StrictUpperMatrix) -> Result<u8, LinalgError> {
        self.matrix.compatible(x)?;
        let f = self.field();
        Ok(self.matrix.entries.iter().zip(&x.entries).fold(0, |acc, (&a, &b)| f.mul_add(acc, a, b)))
    }

    /// Evaluates on an arbitrary `n x n` array (0-based), ignoring everything
    /// on or below the diagonal.
    fn eval_dense(&self, y: &[Vec<u8>]) -> u8 {
        let f = self.field();
        positions(self.n())
            .zip(&self.matrix.entries)
            .fold(0, |acc, ((i, j), &c)| f.mul_add(acc, c, y[i - 1][j - 1]))
    }

    pub fn add(&self, other: &Self) -> Result<Self, LinalgError> {
        Ok(Functional { matrix: self.matrix.add(&other.matrix)? })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, LinalgError> {
        Ok(Functional { matrix: self.matrix.sub(&other.matrix)? })
    }

    pub fn scale(&self, s: u8) -> Self {
        Functional { matrix: self.matrix.scale(s) }
    }

    /// `n q c_1 c_2 ...` with the above-diagonal codes in row-major order.
    pub fn to_canonical_string(&self) -> String {
        let mut s = format!("{} {}", self.n(), self.field().order());
        for c in self.coords() {
            s.push(' ');
            s.push_str(&c.to_string());
        }
        s
    }

    pub fn parse_canonical(s: &str) -> Result<Self, LinalgError> {
        let nums: Vec<u32> = s
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<u32>().map_err(|_| LinalgError::Parse(format!("bad token {t:?}"))))
            .collect::<Result<_, _>>()?;
        if nums.len() < 2 {
            return Err(LinalgError::Parse("expected `n q codes...`".into()));
        }
        let (n, q) = (nums[0] as usize, nums[1]);
        let field = Field::new(q)?;
        let codes = nums[2..].iter().map(|&c| c as u8).collect::<Vec<_>>();
        if nums[2..].iter().any(|&c| c > 255) {
            return Err(GfError::BadCode { code: *nums[2..].iter().max().unwrap(), q }.into());
        }
        Ok(Functional { matrix: StrictUpperMatrix::from_entries(&field, n, codes)? })
    }
}

impl fmt::Debug for Functional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "λ[{}]", self.to_canonical_string())
    }
}

impl fmt::Display for Functional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .matrix
            .support()
            .iter()
            .map(|&(i, j, c)| if c == 1 { format!("e*{i},{j}") } else { format!("{c}e*{i},{j}") })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ActionMode {
    /// `(g lambda)(X) = lambda(g^{-1} X)`
    Left,
    /// `(lambda g)(X) = lambda(X g^{-1})`
    Right,
    /// `(g lambda g^{-1})(X) = lambda(g^{-1} X g)`
    Coadjoint,
}

fn dense_mul(field: &Field, a: &[Vec<u8>], b: &[Vec<u8>]) -> Vec<Vec<u8>> {
    let n = a.len();
    let mut out = vec![vec![0u8; n]; n];
    for i in 0..n {
        for k in 0..n {
            let x = a[i][k];
            if x == 0 {
                continue;
            }
            for j in 0..n {
                out[i][j] = field.mul_add(out[i][j], x, b[k][j]);
            }
        }
    }
    out
}

fn unit(n: usize, a: usize, b: usize) -> Vec<Vec<u8>> {
    let mut e = vec![vec![0u8; n]; n];
    e[a - 1][b - 1] = 1;
    e
}

/// Applies `g` to `lambda`. The result is rebuilt coordinate by coordinate by
/// evaluating the transformed functional on each `e_{ab}`.
pub fn act(mode: ActionMode, g: &UnitriangularElement, lambda: &Functional) -> Result<Functional, LinalgError> {
    if g.field() != lambda.field() {
        return Err(LinalgError::FieldMismatch(g.field().order(), lambda.field().order()));
    }
    if g.n() != lambda.n() {
        return Err(LinalgError::DimensionMismatch(g.n(), lambda.n()));
    }
    let (f, n) = (lambda.field(), lambda.n());
    let gd = g.to_dense();
    let ginv = g.inv().to_dense();
    let mut out = StrictUpperMatrix::zero(f, n);
    for (a, b) in positions(n) {
        let e = unit(n, a, b);
        let y = match mode {
            ActionMode::Left => dense_mul(f, &ginv, &e),
            ActionMode::Right => dense_mul(f, &e, &ginv),
            ActionMode::Coadjoint => dense_mul(f, &dense_mul(f, &ginv, &e), &gd),
        };
        out.set(a, b, lambda.eval_dense(&y));
    }
    Ok(Functional { matrix: out })
}

/// A square matrix over `F_q` with 1-based `(row, column)` access.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SquareMatrix {
    size: usize,
    data: Vec<u8>,
}

impl SquareMatrix {
    pub fn zero(size: usize) -> Self {
        SquareMatrix { size, data: vec![0; size * size] }
    }

    pub fn from_rows(rows: &[Vec<u8>]) -> Self {
        let size = rows.len();
        assert!(rows.iter().all(|r| r.len() == size), "rows must form a square");
        SquareMatrix { size, data: rows.concat() }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.data[(r - 1) * self.size + (c - 1)]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u8) {
        self.data[(r - 1) * self.size + (c - 1)] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&c| c == 0)
    }

    pub fn rows(&self) -> Vec<Vec<u8>> {
        self.data.chunks(self.size.max(1)).take(self.size).map(|r| r.to_vec()).collect()
    }

    /// Whether `diag(self[..c], self[c..])` splits cleanly after index `c`:
    /// both off-diagonal rectangles vanish.
    pub fn admits_cut(&self, c: usize) -> bool {
        let m = self.size;
        (1..=m).all(|i| (1..=m).all(|j| ((i <= c) == (j <= c)) || self.get(i, j) == 0))
    }

    /// The sub-block with rows and columns `start..start+len` (1-based start).
    pub fn sub_block(&self, start: usize, len: usize) -> SquareMatrix {
        let mut b = SquareMatrix::zero(len);
        for r in 1..=len {
            for c in 1..=len {
                b.set(r, c, self.get(start + r - 1, start + c - 1));
            }
        }
        b
    }

    pub fn block_diag(blocks: &[SquareMatrix]) -> SquareMatrix {
        let size = blocks.iter().map(|b| b.size).sum();
        let mut out = SquareMatrix::zero(size);
        let mut off = 0;
        for b in blocks {
            for r in 1..=b.size {
                for c in 1..=b.size {
                    out.set(off + r, off + c, b.get(r, c));
                }
            }
            off += b.size;
        }
        out
    }
}

impl fmt::Debug for SquareMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.rows())
    }
}

/// Deletes the first column and last row: `U[a][b] = X[a][b+1]`.
pub fn upper_form(x: &StrictUpperMatrix) -> SquareMatrix {
    let m = x.n().saturating_sub(1);
    let mut u = SquareMatrix::zero(m);
    for a in 1..=m {
        for b in 1..=m {
            u.set(a, b, x.entry(a, b + 1));
        }
    }
    u
}

/// Inverse of [`upper_form`]. Entries of `u` below the diagonal must be zero.
pub fn from_upper_form(field: &Field, u: &SquareMatrix) -> StrictUpperMatrix {
    let n = u.size() + 1;
    let mut x = StrictUpperMatrix::zero(field, n);
    for a in 1..n {
        for b in a..n {
            x.set(a, b + 1, u.get(a, b));
        }
    }
    debug_assert!((1..n).all(|a| (1..a).all(|b| u.get(a, b) == 0)), "not an upper form");
    x
}

/// The maximal block-diagonal splitting of the upper form of `lambda`'s
/// matrix. Block sizes sum to `n - 1`.
pub fn block_decomposition(lambda: &Functional) -> Vec<SquareMatrix> {
    let u = upper_form(lambda.matrix());
    let m = u.size();
    let mut blocks = Vec::new();
    let mut start = 1;
    for c in 1..=m {
        if c == m || u.admits_cut(c) {
            blocks.push(u.sub_block(start, c + 1 - start));
            start = c + 1;
        }
    }
    blocks
}

/// Reassembles a functional from its blocks.
pub fn functional_from_blocks(field: &Field, blocks: &[SquareMatrix]) -> Functional {
    Functional::from_matrix(from_upper_form(field, &SquareMatrix::block_diag(blocks)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{rngs::StdRng, Rng, SeedableRng};

    fn field(q: u32) -> Field {
        Field::new(q).unwrap()
    }

    fn random_group_element(f: &Field, n: usize, rng: &mut StdRng) -> UnitriangularElement {
        let entries = (0..triangle_len(n)).map(|_| rng.gen_range(0..f.order()) as u8).collect();
        UnitriangularElement::from_above(StrictUpperMatrix::from_entries(f, n, entries).unwrap())
    }

    fn random_functional(f: &Field, n: usize, rng: &mut StdRng) -> Functional {
        let entries = (0..triangle_len(n)).map(|_| rng.gen_range(0..f.order()) as u8).collect();
        Functional::from_matrix(StrictUpperMatrix::from_entries(f, n, entries).unwrap())
    }

    #[test]
    fn storage_order() {
        let n = 5;
        for (k, (i, j)) in positions(n).enumerate() {
            assert_eq!(position_index(n, i, j), k);
        }
        assert_eq!(triangle_len(5), 10);
    }

    #[test]
    fn product_of_generators_n3() {
        let f = field(2);
        let a = UnitriangularElement::elementary(&f, 3, 1, 2, 1);
        let b = UnitriangularElement::elementary(&f, 3, 2, 3, 1);
        let ab = a.mul(&b).unwrap();
        let want = StrictUpperMatrix::from_triples(&f, 3, &[(1, 2, 1), (2, 3, 1), (1, 3, 1)]);
        assert_eq!(ab.above(), &want);
        assert_eq!(a.mul(&UnitriangularElement::identity(&f, 3)).unwrap(), a);
    }

    #[test]
    fn inverses() {
        let f2 = field(2);
        let id = UnitriangularElement::identity(&f2, 3);
        assert_eq!(id.inv(), id);
        let g = UnitriangularElement::elementary(&f2, 3, 1, 2, 1);
        assert_eq!(g.inv(), g);

        // Solve (1+X)(1+Y) = 1 by hand over F_3 for X = e12 + e23:
        // Y12 = -1 = 2, Y23 = 2, Y13 = -(X13 + X12 Y23) = -(0 + 2) = 1.
        let f3 = field(3);
        let g = UnitriangularElement::from_above(StrictUpperMatrix::from_triples(&f3, 3, &[(1, 2, 1), (2, 3, 1)]));
        let want = StrictUpperMatrix::from_triples(&f3, 3, &[(1, 2, 2), (2, 3, 2), (1, 3, 1)]);
        assert_eq!(g.inv().above(), &want);
    }

    #[test]
    fn random_inverse_round_trip() {
        let f = field(3);
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..50 {
            let g = random_group_element(&f, 4, &mut rng);
            assert!(g.mul(&g.inv()).unwrap().is_identity());
            assert!(g.inv().mul(&g).unwrap().is_identity());
        }
    }

    #[test]
    fn group_axioms_and_order_by_enumeration() {
        for (n, q) in [(3usize, 2u32), (3, 3), (4, 2)] {
            let f = field(q);
            let len = triangle_len(n);
            let total = (q as usize).pow(len as u32);
            let mut all = Vec::with_capacity(total);
            for mut code in 0..total {
                let entries = (0..len)
                    .map(|_| {
                        let d = (code % q as usize) as u8;
                        code /= q as usize;
                        d
                    })
                    .collect();
                all.push(UnitriangularElement::from_above(StrictUpperMatrix::from_entries(&f, n, entries).unwrap()));
            }
            let set: std::collections::HashSet<_> = all.iter().cloned().collect();
            assert_eq!(set.len() as u64, (q as u64).pow(len as u32));
            // closure under products of a sample
            for g in all.iter().step_by(5) {
                for h in all.iter().step_by(7) {
                    assert!(set.contains(&g.mul(h).unwrap()));
                }
            }
        }
    }

    #[test]
    fn mismatches_are_errors() {
        let f2 = field(2);
        let f3 = field(3);
        let a = UnitriangularElement::identity(&f2, 3);
        let b = UnitriangularElement::identity(&f2, 4);
        assert_eq!(a.mul(&b).unwrap_err(), LinalgError::DimensionMismatch(3, 4));
        let c = UnitriangularElement::identity(&f3, 3);
        assert!(matches!(a.mul(&c).unwrap_err(), LinalgError::FieldMismatch(2, 3)));
        let l = Functional::zero(&f2, 4);
        assert_eq!(act(ActionMode::Left, &a, &l).unwrap_err(), LinalgError::DimensionMismatch(3, 4));
    }

    #[test]
    fn actions_on_small_cases() {
        let f = field(2);
        let lambda = Functional::basis(&f, 3, 1, 3, 1);
        let id = UnitriangularElement::identity(&f, 3);
        for mode in [ActionMode::Left, ActionMode::Right, ActionMode::Coadjoint] {
            assert_eq!(act(mode, &id, &lambda).unwrap(), lambda);
        }
        // g = 1 + e23: g^{-1} e_ab = e_ab + [a = 3] e_2b, so every coordinate of
        // the left translate is unchanged; e_ab g^{-1} = e_ab + [b = 2] e_a3 picks
        // up lambda(e13) at position (1,2).
        let g = UnitriangularElement::elementary(&f, 3, 2, 3, 1);
        assert_eq!(act(ActionMode::Left, &g, &lambda).unwrap(), lambda);
        let right = Functional::from_triples(&f, 3, &[(1, 3, 1), (1, 2, 1)]);
        assert_eq!(act(ActionMode::Right, &g, &lambda).unwrap(), right);
        // g = 1 + e12 on the left moves e*13 onto e*23.
        let g = UnitriangularElement::elementary(&f, 3, 1, 2, 1);
        let left = Functional::from_triples(&f, 3, &[(1, 3, 1), (2, 3, 1)]);
        assert_eq!(act(ActionMode::Left, &g, &lambda).unwrap(), left);
    }

    #[test]
    fn coadjoint_fixes_degree_two_part_when_kernel_contains_cube() {
        // For lambda = e*13 in n = 4 every conjugate agrees with lambda on the
        // second and third superdiagonals.
        let f = field(2);
        let n = 4;
        let lambda = Functional::basis(&f, n, 1, 3, 1);
        let len = triangle_len(n);
        for code in 0..(1u32 << len) {
            let entries = (0..len).map(|k| ((code >> k) & 1) as u8).collect();
            let g = UnitriangularElement::from_above(StrictUpperMatrix::from_entries(&f, n, entries).unwrap());
            let mu = act(ActionMode::Coadjoint, &g, &lambda).unwrap();
            for (i, j) in positions(n).filter(|&(i, j)| j >= i + 2) {
                assert_eq!(mu.get(i, j), lambda.get(i, j));
            }
        }
    }

    #[test]
    fn actions_commute_and_compose() {
        let mut rng = StdRng::seed_from_u64(11);
        for q in [2, 3, 4] {
            let f = field(q);
            for _ in 0..20 {
                let n = rng.gen_range(2..=5);
                let g = random_group_element(&f, n, &mut rng);
                let h = random_group_element(&f, n, &mut rng);
                let l = random_functional(&f, n, &mut rng);
                let a = act(ActionMode::Right, &h, &act(ActionMode::Left, &g, &l).unwrap()).unwrap();
                let b = act(ActionMode::Left, &g, &act(ActionMode::Right, &h, &l).unwrap()).unwrap();
                assert_eq!(a, b);
                let co = act(ActionMode::Coadjoint, &g, &l).unwrap();
                let via = act(ActionMode::Right, &g.inv(), &act(ActionMode::Left, &g, &l).unwrap()).unwrap();
                assert_eq!(co, via);
                // left action is a group action: (gh)l = g(hl)
                let gh = g.mul(&h).unwrap();
                assert_eq!(
                    act(ActionMode::Left, &gh, &l).unwrap(),
                    act(ActionMode::Left, &g, &act(ActionMode::Left, &h, &l).unwrap()).unwrap()
                );
            }
        }
    }

    #[test]
    fn evaluation_is_linear() {
        let mut rng = StdRng::seed_from_u64(3);
        let f = field(5);
        for _ in 0..30 {
            let l = random_functional(&f, 4, &mut rng);
            let y = random_functional(&f, 4, &mut rng).into_matrix();
            let z = random_functional(&f, 4, &mut rng).into_matrix();
            let a = rng.gen_range(0..5u8);
            let lhs = l.eval(&y.scale(a).add(&z).unwrap()).unwrap();
            let rhs = f.add(f.mul(a, l.eval(&y).unwrap()), l.eval(&z).unwrap());
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn ideal_supports() {
        assert_eq!(ideal_positions(4, 1).len(), 6);
        assert_eq!(ideal_positions(4, 3), vec![(1, 4)]);
        assert_eq!(ideal_positions(5, 3), vec![(1, 4), (1, 5), (2, 5)]);
    }

    #[test]
    fn cube_of_the_algebra_is_spanned_by_its_ideal_positions() {
        // Products e_ab e_bc e_cd are exactly the e_ad with d >= a + 3.
        let n = 5;
        let mut span = std::collections::BTreeSet::new();
        for a in 1..=n {
            for b in a + 1..=n {
                for c in b + 1..=n {
                    for d in c + 1..=n {
                        span.insert((a, d));
                    }
                }
            }
        }
        assert_eq!(span.into_iter().collect::<Vec<_>>(), ideal_positions(n, 3));
    }

    #[test]
    fn sigma_values() {
        let f2 = field(2);
        assert_eq!(sigma(&UnitriangularElement::identity(&f2, 4)), 0);
        let g = UnitriangularElement::from_above(StrictUpperMatrix::from_triples(&f2, 3, &[(1, 2, 1), (2, 3, 1)]));
        assert_eq!(sigma(&g), 0);
        let f3 = field(3);
        let g = UnitriangularElement::from_above(StrictUpperMatrix::from_triples(&f3, 4, &[(1, 2, 1), (2, 3, 2), (3, 4, 1), (1, 4, 2)]));
        assert_eq!(sigma(&g), 1);
    }

    fn lambda_ex(f: &Field, r: u8, s: u8, t: u8, u: u8, v: u8) -> Functional {
        Functional::from_triples(f, 8, &[(1, 3, r), (4, 5, s), (4, 6, t), (5, 7, u), (7, 8, v)])
    }

    #[test]
    fn upper_form_and_blocks() {
        let f = field(3);
        assert!(upper_form(&StrictUpperMatrix::zero(&f, 4)).is_zero());
        let u = upper_form(&StrictUpperMatrix::from_triples(&f, 3, &[(1, 3, 1)]));
        assert_eq!(u.rows(), vec![vec![0, 1], vec![0, 0]]);

        let blocks = block_decomposition(&Functional::zero(&f, 5));
        assert_eq!(blocks.len(), 4);
        assert!(blocks.iter().all(|b| b.size() == 1 && b.is_zero()));

        let (r, s, t, u, v) = (1, 2, 1, 2, 2);
        let l = lambda_ex(&f, r, s, t, u, v);
        let blocks = block_decomposition(&l);
        assert_eq!(blocks.iter().map(|b| b.size()).collect::<Vec<_>>(), vec![2, 1, 3, 1]);
        assert_eq!(blocks[0].rows(), vec![vec![0, r], vec![0, 0]]);
        assert_eq!(blocks[1].rows(), vec![vec![0]]);
        assert_eq!(blocks[2].rows(), vec![vec![s, t, 0], vec![0, 0, u], vec![0, 0, 0]]);
        assert_eq!(blocks[3].rows(), vec![vec![v]]);
        let full = upper_form(l.matrix());
        assert_eq!(full, SquareMatrix::block_diag(&blocks));

        let blocks = block_decomposition(&Functional::basis(&f, 3, 1, 2, 1));
        assert_eq!(blocks.iter().map(|b| b.rows()).collect::<Vec<_>>(), vec![vec![vec![1]], vec![vec![0]]]);
    }

    #[test]
    fn block_decomposition_reassembles_and_is_maximal() {
        let mut rng = StdRng::seed_from_u64(5);
        let f = field(2);
        for _ in 0..300 {
            let n = rng.gen_range(1..=7);
            // sparse random functionals so that interesting cuts appear
            let mut l = Functional::zero(&f, n);
            for (i, j) in positions(n) {
                if rng.gen_bool(0.2) {
                    l = l.add(&Functional::basis(&f, n, i, j, 1)).unwrap();
                }
            }
            let blocks = block_decomposition(&l);
            assert_eq!(blocks.iter().map(|b| b.size()).sum::<usize>(), n.saturating_sub(1));
            assert_eq!(functional_from_blocks(&f, &blocks), l);
            for b in &blocks {
                assert!((1..b.size()).all(|c| !b.admits_cut(c)));
            }
        }
    }

    #[test]
    fn canonical_serialization() {
        let f = field(3);
        let l = Functional::from_triples(&f, 4, &[(1, 3, 2), (2, 4, 1)]);
        let s = l.to_canonical_string();
        assert_eq!(s, "4 3 0 2 0 0 1 0");
        assert_eq!(Functional::parse_canonical(&s).unwrap(), l);
        assert!(Functional::parse_canonical("4 3 0 0").is_err());
        assert!(Functional::parse_canonical("3 3 0 0 7").is_err());
        assert!(Functional::parse_canonical("3 6 0 0 0").is_err());
    }
}
