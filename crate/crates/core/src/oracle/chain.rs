//! The subalgebra chains `l^i` and `s^i` attached to a functional, computed
//! with null spaces over `F_q`.

use crate::gf::Field;
use crate::linalg::{positions, triangle_len, Functional, StrictUpperMatrix};

/// A subspace of `F_q^ambient`, kept as a reduced row echelon basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    basis: Vec<Vec<u8>>,
}

/// Reduced row echelon form; zero rows are dropped. Returns the rows and
/// their pivot columns.
fn rref(field: &Field, mut rows: Vec<Vec<u8>>, cols: usize) -> (Vec<Vec<u8>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&k| rows[k][c] != 0) else { continue };
        rows.swap(r, p);
        let inv = field.inv(rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = field.mul(*x, inv);
        }
        for k in 0..rows.len() {
            if k != r && rows[k][c] != 0 {
                let s = field.neg(rows[k][c]);
                let (pivot_row, other) = if k < r {
                    let (a, b) = rows.split_at_mut(r);
                    (&b[0], &mut a[k])
                } else {
                    let (a, b) = rows.split_at_mut(k);
                    (&a[r], &mut b[0])
                };
                for (x, &y) in other.iter_mut().zip(pivot_row.iter()) {
                    *x = field.mul_add(*x, s, y);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

/// Basis of `{x : A x = 0}` for `A` given by rows of length `cols`.
fn null_space(field: &Field, rows: Vec<Vec<u8>>, cols: usize) -> Vec<Vec<u8>> {
    let (red, pivots) = rref(field, rows, cols);
    let mut out = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut x = vec![0u8; cols];
        x[free] = 1;
        for (row, &p) in red.iter().zip(&pivots) {
            x[p] = field.neg(row[free]);
        }
        out.push(x);
    }
    out
}

impl Subspace {
    pub fn zero(field: &Field, ambient: usize) -> Self {
        Subspace { field: field.clone(), ambient, basis: Vec::new() }
    }

    pub fn full(field: &Field, ambient: usize) -> Self {
        let basis = (0..ambient)
            .map(|k| {
                let mut v = vec![0u8; ambient];
                v[k] = 1;
                v
            })
            .collect();
        Subspace { field: field.clone(), ambient, basis }
    }

    pub fn span(field: &Field, ambient: usize, vectors: Vec<Vec<u8>>) -> Self {
        let (basis, _) = rref(field, vectors, ambient);
        Subspace { field: field.clone(), ambient, basis }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vec<u8>] {
        &self.basis
    }

    pub fn contains(&self, v: &[u8]) -> bool {
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        rref(&self.field, rows, self.ambient).0.len() == self.dim()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|v| other.contains(v))
    }

    /// For a subspace of the strictly upper triangular `n x n` matrices:
    /// whether it is closed under multiplication.
    pub fn is_subalgebra(&self, n: usize) -> bool {
        let as_matrix =
            |v: &Vec<u8>| StrictUpperMatrix::from_entries(&self.field, n, v.clone()).expect("triangle-length vector");
        let mats: Vec<_> = self.basis.iter().map(as_matrix).collect();
        mats.iter().all(|a| {
            mats.iter().all(|b| self.contains(a.mul(b).expect("same shape").entries()))
        })
    }
}

/// The two chains and their limits.
#[derive(Debug, Clone)]
pub struct ChainResult {
    /// `l^0, l^1, ...` up to stabilization.
    pub l_chain: Vec<Subspace>,
    /// `s^0, s^1, ...` up to stabilization.
    pub s_chain: Vec<Subspace>,
    pub l_bar: Subspace,
    pub s_bar: Subspace,
}

impl ChainResult {
    pub fn l_dims(&self) -> Vec<usize> {
        self.l_chain.iter().map(Subspace::dim).collect()
    }

    pub fn s_dims(&self) -> Vec<usize> {
        self.s_chain.iter().map(Subspace::dim).collect()
    }

    // The chains may stop at index 0 when n is trivial.
    fn l1(&self) -> &Subspace {
        self.l_chain.get(1).unwrap_or(&self.l_bar)
    }

    fn s1(&self) -> &Subspace {
        self.s_chain.get(1).unwrap_or(&self.s_bar)
    }

    /// `log_q chi(1) = dim n - dim l^1`.
    pub fn chi_degree_exponent(&self) -> usize {
        self.s_chain[0].dim() - self.l1().dim()
    }

    /// `log_q <chi, chi> = dim s^1 - dim l^1`.
    pub fn chi_norm_exponent(&self) -> usize {
        self.s1().dim() - self.l1().dim()
    }

    /// `0 = l^0 <= l^1 <= ... <= l_bar <= s_bar <= ... <= s^1 <= s^0`.
    pub fn inclusions_hold(&self) -> bool {
        let up = self.l_chain.windows(2).all(|w| w[0].is_subspace_of(&w[1]));
        let down = self.s_chain.windows(2).all(|w| w[1].is_subspace_of(&w[0]));
        up && down && self.l_bar.is_subspace_of(&self.s_bar) && self.l_chain[0].dim() == 0
    }

    pub fn all_subalgebras(&self, n: usize) -> bool {
        self.l_chain.iter().chain(&self.s_chain).all(|s| s.is_subalgebra(n))
    }
}

// The part of `within` orthogonal to all of `against` under `form`, found as
// the null space of the pairings between the two bases.
fn orthogonal_in(field: &Field, form: &[Vec<u8>], within: &Subspace, against: &Subspace) -> Subspace {
    let pair = |u: &[u8], v: &[u8]| -> u8 {
        let mut acc = 0u8;
        for (p, &up) in u.iter().enumerate() {
            if up == 0 {
                continue;
            }
            for (r, &vr) in v.iter().enumerate() {
                if vr != 0 && form[p][r] != 0 {
                    acc = field.add(acc, field.mul(up, field.mul(vr, form[p][r])));
                }
            }
        }
        acc
    };
    let rows: Vec<Vec<u8>> =
        against.basis().iter().map(|v| within.basis().iter().map(|u| pair(u, v)).collect()).collect();
    let k = within.dim();
    let combos = if rows.is_empty() { Subspace::full(field, k).basis } else { null_space(field, rows, k) };
    let vectors = combos
        .iter()
        .map(|alpha| {
            let mut x = vec![0u8; within.ambient()];
            for (a, u) in alpha.iter().zip(within.basis()) {
                if *a != 0 {
                    for (xi, &ui) in x.iter_mut().zip(u) {
                        *xi = field.mul_add(*xi, *a, ui);
                    }
                }
            }
            x
        })
        .collect();
    Subspace::span(field, within.ambient(), vectors)
}

/// Runs the recursion `l^{i+1} = s^i ∩ (s^i)^⊥`, `s^{i+1} = s^i ∩ (l^{i+1})^⊥`
/// for the form `(X, Y) -> lambda(XY)` until both chains stop moving.
pub fn ls_chain(lambda: &Functional) -> ChainResult {
    let (field, n) = (lambda.field().clone(), lambda.n());
    let dim = triangle_len(n);
    let pos: Vec<(usize, usize)> = positions(n).collect();
    // e_ab e_cd = [b = c] e_ad
    let form: Vec<Vec<u8>> = pos
        .iter()
        .map(|&(a, b)| pos.iter().map(|&(c, d)| if b == c { lambda.get(a, d) } else { 0 }).collect())
        .collect();
    let mut l_chain = vec![Subspace::zero(&field, dim)];
    let mut s_chain = vec![Subspace::full(&field, dim)];
    loop {
        let s = s_chain.last().expect("nonempty");
        let l_next = orthogonal_in(&field, &form, s, s);
        let s_next = orthogonal_in(&field, &form, s, &l_next);
        let stable = l_next.dim() == l_chain.last().expect("nonempty").dim() && s_next.dim() == s.dim();
        if stable {
            break;
        }
        l_chain.push(l_next);
        s_chain.push(s_next);
    }
    let l_bar = l_chain.last().expect("nonempty").clone();
    let s_bar = s_chain.last().expect("nonempty").clone();
    ChainResult { l_chain, s_chain, l_bar, s_bar }
}

/// Degree and irreducibility of the induced character `xi_lambda`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct XiStats {
    /// `log_q` of `|n| / |l_bar|`.
    pub degree_exponent: usize,
    /// `l_bar = s_bar`.
    pub irreducible: bool,
}

pub fn xi_stats(lambda: &Functional) -> XiStats {
    let c = ls_chain(lambda);
    XiStats {
        degree_exponent: triangle_len(lambda.n()) - c.l_bar.dim(),
        irreducible: c.l_bar.dim() == c.s_bar.dim(),
    }
}
