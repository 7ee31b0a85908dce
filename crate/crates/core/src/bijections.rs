//! Maps between labeled lattice paths, functionals and set partitions.
//!
//! `path_to_functional` and `functional_to_path` are mutually inverse between
//! the paths of [`PathFamily::HeisTilde`] and the class-X functionals, those
//! whose block decomposition uses only the kinds in [`BlockKind`].

use thiserror::Error;

use crate::combinat::{CombinatError, LabeledArc, LabeledLatticePath, LabeledSetPartition, PathFamily, Step, StepKind};
use crate::gf::Field;
use crate::linalg::{block_decomposition, Functional, SquareMatrix, StrictUpperMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BijectionError {
    #[error(transparent)]
    NotInFamily(#[from] CombinatError),
    /// 1-based index of the first block that has none of the three kinds.
    #[error("functional is not in class X: block {block} has no admissible kind")]
    NotClassX { block: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BlockKind {
    /// `1 x 1`, any entry.
    A,
    /// `m x m`, `m > 1`, nonzero exactly on the superdiagonal.
    B,
    /// `m x m`, `m > 1` odd, nonzero exactly on the superdiagonal and at `(1,1)`.
    C,
}

/// Kind of a single block, if it has one.
pub fn block_kind(b: &SquareMatrix) -> Option<BlockKind> {
    let m = b.size();
    if m == 1 {
        return Some(BlockKind::A);
    }
    for r in 1..=m {
        for c in 1..=m {
            let nonzero = b.get(r, c) != 0;
            let superdiag = c == r + 1;
            if superdiag != nonzero && (r, c) != (1, 1) {
                return None;
            }
        }
    }
    match b.get(1, 1) {
        0 => Some(BlockKind::B),
        _ if m % 2 == 1 => Some(BlockKind::C),
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassXWitness {
    pub blocks: Vec<SquareMatrix>,
    pub kinds: Vec<BlockKind>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    /// Every block has kind A or B.
    ClassY(ClassXWitness),
    /// Every block has kind A, B or C, and some block has kind C.
    ClassX(ClassXWitness),
    /// 1-based index of the first block without a kind.
    Neither { block: usize },
}

impl Classification {
    pub fn witness(&self) -> Option<&ClassXWitness> {
        match self {
            Classification::ClassY(w) | Classification::ClassX(w) => Some(w),
            Classification::Neither { .. } => None,
        }
    }

    /// Membership in X, which contains Y.
    pub fn in_x(&self) -> bool {
        self.witness().is_some()
    }

    pub fn in_y(&self) -> bool {
        matches!(self, Classification::ClassY(_))
    }
}

pub fn classify_functional(lambda: &Functional) -> Classification {
    let blocks = block_decomposition(lambda);
    let mut kinds = Vec::with_capacity(blocks.len());
    for (idx, b) in blocks.iter().enumerate() {
        match block_kind(b) {
            Some(k) => kinds.push(k),
            None => return Classification::Neither { block: idx + 1 },
        }
    }
    let w = ClassXWitness { blocks, kinds };
    if w.kinds.contains(&BlockKind::C) {
        Classification::ClassX(w)
    } else {
        Classification::ClassY(w)
    }
}

/// `lambda_P`: each step starting on `x + y = d` writes at `i = d + 1`.
pub fn path_to_functional(path: &LabeledLatticePath, n: usize, field: &Field) -> Result<Functional, BijectionError> {
    PathFamily::HeisTilde.check(path, n, field)?;
    let mut m = StrictUpperMatrix::zero(field, n);
    let mut d = 0;
    for s in path.steps() {
        let i = d + 1;
        let l = s.labels();
        match s.kind {
            StepKind::Right => {}
            StepKind::Up => m.set(i, i + 1, l[0]),
            StepKind::Diag => m.set(i, i + 2, l[0]),
            StepKind::UpUp => {
                m.set(i - 1, i + 1, l[0]);
                m.set(i, i + 2, l[1]);
            }
            StepKind::Wide | StepKind::Tall => unreachable!("rejected by the family check"),
        }
        d += s.kind.advance();
    }
    Ok(Functional::from_matrix(m))
}

/// `P_lambda`, built block by block.
pub fn functional_to_path(lambda: &Functional) -> Result<LabeledLatticePath, BijectionError> {
    let w = match classify_functional(lambda) {
        Classification::Neither { block } => return Err(BijectionError::NotClassX { block }),
        c => c.witness().cloned().expect("class X"),
    };
    let mut steps = Vec::new();
    for (b, kind) in w.blocks.iter().zip(&w.kinds) {
        let m = b.size();
        let t: Vec<u8> = (1..m).map(|i| b.get(i, i + 1)).collect();
        // Labels left over for the pairs of double steps.
        let rest = match kind {
            BlockKind::A => {
                steps.push(if b.get(1, 1) == 0 { Step::right() } else { Step::up(b.get(1, 1)) });
                &t[..]
            }
            BlockKind::B if m % 2 == 1 => {
                steps.push(Step::right());
                &t[..]
            }
            BlockKind::B => {
                steps.push(Step::diag(t[0]));
                &t[1..]
            }
            BlockKind::C => {
                steps.push(Step::up(b.get(1, 1)));
                &t[..]
            }
        };
        steps.extend(rest.chunks(2).map(|p| Step::up_up(p[0], p[1])));
    }
    Ok(LabeledLatticePath::new(steps))
}

/// The noncrossing partition of a Pell path: an up step starting on
/// `x + y = s` gives the arc `(s+1, s+2)`, a diagonal step `(s+1, s+3)`.
pub fn pell_path_to_partition(
    path: &LabeledLatticePath,
    n: usize,
    field: &Field,
) -> Result<LabeledSetPartition, BijectionError> {
    PathFamily::Pell.check(path, n, field)?;
    let mut arcs = Vec::new();
    let mut s = 0;
    for step in path.steps() {
        match step.kind {
            StepKind::Up => arcs.push(LabeledArc::new(s + 1, s + 2, step.labels()[0])),
            StepKind::Diag => arcs.push(LabeledArc::new(s + 1, s + 3, step.labels()[0])),
            _ => {}
        }
        s += step.kind.advance();
    }
    Ok(LabeledSetPartition::new(n, arcs)?)
}

/// Exponent `e` of the degree `q^e` of the Heisenberg character of a path:
/// the number of diagonal and double-up steps.
pub fn heis_degree_exponent(path: &LabeledLatticePath) -> usize {
    path.count(StepKind::Diag) + path.count(StepKind::UpUp)
}

/// Whether the character of `path` is fixed by every linear character: the
/// path uses only diagonal and double-up steps.
pub fn is_c_invariant_heis_path(path: &LabeledLatticePath) -> bool {
    path.steps().iter().all(|s| matches!(s.kind, StepKind::Diag | StepKind::UpUp))
}

/// Arc criterion for the supercharacter of `p` to be fixed by the linear
/// characters through the superdiagonal sum: every `j < n` is either the
/// target-minus-one of an arc `(i, j+1)` with `i < j`, or the source of an
/// arc of length at least two.
pub fn is_c_invariant_partition(p: &LabeledSetPartition) -> bool {
    (1..p.n()).all(|j| p.arcs().iter().any(|a| (a.j == j + 1 && a.i < j) || (a.i == j && a.j >= j + 2)))
}
