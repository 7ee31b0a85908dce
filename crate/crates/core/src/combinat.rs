//! `F_q`-labeled set partitions and lattice paths.
//!
//! A labeled set partition of `[n]` is stored by its arcs: the pairs `(i, j)`
//! where `j` is the next element after `i` in the same block, each carrying a
//! nonzero label. Labeled lattice paths are sequences of steps whose height
//! equals the number of nonzero labels they carry.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::gf::Field;
use crate::linalg::{Functional, StrictUpperMatrix};

/// Advisory bound for partition enumeration.
pub const PARTITION_LIMIT: usize = 10;
/// Advisory bound for path enumeration.
pub const PATH_LIMIT: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CombinatError {
    #[error("not a set partition: {0}")]
    NotAPartition(String),
    #[error("invalid arc set: {0}")]
    InvalidArcs(String),
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
    #[error("path not in family: {0}")]
    NotInFamily(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{what} enumeration for n = {n} exceeds the advisory bound {limit}; pass force to override")]
    TooLarge { what: &'static str, n: usize, limit: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LabeledArc {
    pub i: usize,
    pub j: usize,
    pub label: u8,
}

impl LabeledArc {
    pub fn new(i: usize, j: usize, label: u8) -> Self {
        LabeledArc { i, j, label }
    }
}

/// Covering pairs of a set partition given by its blocks, sorted by source.
pub fn arcs_of(n: usize, blocks: &[Vec<usize>]) -> Result<Vec<(usize, usize)>, CombinatError> {
    let mut seen = vec![false; n + 1];
    let mut arcs = Vec::new();
    for block in blocks {
        if block.is_empty() {
            return Err(CombinatError::NotAPartition("empty block".into()));
        }
        let mut b = block.clone();
        b.sort_unstable();
        for &x in &b {
            if x == 0 || x > n {
                return Err(CombinatError::NotAPartition(format!("{x} is outside [{n}]")));
            }
            if std::mem::replace(&mut seen[x], true) {
                return Err(CombinatError::NotAPartition(format!("{x} appears twice")));
            }
        }
        arcs.extend(b.windows(2).map(|w| (w[0], w[1])));
    }
    if let Some(x) = (1..=n).find(|&x| !seen[x]) {
        return Err(CombinatError::NotAPartition(format!("{x} is not covered")));
    }
    arcs.sort_unstable();
    Ok(arcs)
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LabeledSetPartition {
    n: usize,
    arcs: Vec<LabeledArc>,
}

impl LabeledSetPartition {
    /// Validates and sorts an arc list.
    pub fn new(n: usize, mut arcs: Vec<LabeledArc>) -> Result<Self, CombinatError> {
        arcs.sort_unstable();
        let mut src = vec![false; n + 1];
        let mut tgt = vec![false; n + 1];
        for a in &arcs {
            if !(1 <= a.i && a.i < a.j && a.j <= n) {
                return Err(CombinatError::InvalidArcs(format!("({}, {}) is not an arc of [{n}]", a.i, a.j)));
            }
            if a.label == 0 {
                return Err(CombinatError::InvalidArcs(format!("arc ({}, {}) has label 0", a.i, a.j)));
            }
            if std::mem::replace(&mut src[a.i], true) {
                return Err(CombinatError::InvalidArcs(format!("{} is the source of two arcs", a.i)));
            }
            if std::mem::replace(&mut tgt[a.j], true) {
                return Err(CombinatError::InvalidArcs(format!("{} is the target of two arcs", a.j)));
            }
        }
        Ok(LabeledSetPartition { n, arcs })
    }

    pub fn empty(n: usize) -> Self {
        LabeledSetPartition { n, arcs: Vec::new() }
    }

    /// Labels every covering pair of `blocks` with `label`.
    pub fn from_blocks(n: usize, blocks: &[Vec<usize>], label: u8) -> Result<Self, CombinatError> {
        let arcs = arcs_of(n, blocks)?.into_iter().map(|(i, j)| LabeledArc::new(i, j, label)).collect();
        Self::new(n, arcs)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arcs(&self) -> &[LabeledArc] {
        &self.arcs
    }

    pub fn label(&self, i: usize, j: usize) -> Option<u8> {
        self.arcs.iter().find(|a| a.i == i && a.j == j).map(|a| a.label)
    }

    /// Blocks as increasing chains, ordered by least element.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut next = vec![0usize; self.n + 1];
        let mut has_pred = vec![false; self.n + 1];
        for a in &self.arcs {
            next[a.i] = a.j;
            has_pred[a.j] = true;
        }
        (1..=self.n)
            .filter(|&x| !has_pred[x])
            .map(|start| {
                let mut block = vec![start];
                let mut x = start;
                while next[x] != 0 {
                    x = next[x];
                    block.push(x);
                }
                block
            })
            .collect()
    }

    pub fn is_noncrossing(&self) -> bool {
        !self.arcs.iter().any(|a| self.arcs.iter().any(|b| a.i < b.i && b.i < a.j && a.j < b.j))
    }

    /// No singleton blocks.
    pub fn is_feasible(&self) -> bool {
        let mut touched = vec![false; self.n + 1];
        for a in &self.arcs {
            touched[a.i] = true;
            touched[a.j] = true;
        }
        touched[1..].iter().all(|&t| t)
    }

    /// Every arc has the form `(i, i+1)` or `(i, i+2)`.
    pub fn has_heis_support(&self) -> bool {
        self.arcs.iter().all(|a| a.j <= a.i + 2)
    }

    /// Moves every arc `(i, j)` to `(i, j+1)` on `[n+1]`.
    pub fn shift(&self) -> Self {
        LabeledSetPartition {
            n: self.n + 1,
            arcs: self.arcs.iter().map(|a| LabeledArc::new(a.i, a.j + 1, a.label)).collect(),
        }
    }

    pub fn to_functional(&self, field: &Field) -> Functional {
        let mut m = StrictUpperMatrix::zero(field, self.n);
        for a in &self.arcs {
            assert!(field.is_code(a.label as u32), "label {} is not in F_{}", a.label, field.order());
            m.set(a.i, a.j, a.label);
        }
        Functional::from_matrix(m)
    }

    /// Inverse of [`to_functional`](Self::to_functional), defined on matrices
    /// with at most one nonzero entry in each row and column.
    pub fn from_functional(lambda: &Functional) -> Result<Self, CombinatError> {
        let arcs = lambda.matrix().support().into_iter().map(|(i, j, c)| LabeledArc::new(i, j, c)).collect();
        Self::new(lambda.n(), arcs)
    }
}

impl fmt::Display for LabeledSetPartition {
    /// `i-j:t` tokens separated by spaces; `-` for no arcs.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.arcs.is_empty() {
            return write!(f, "-");
        }
        let parts: Vec<String> = self.arcs.iter().map(|a| format!("{}-{}:{}", a.i, a.j, a.label)).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Parses the [`Display`](fmt::Display) form for a partition of `[n]`.
pub fn parse_partition(n: usize, s: &str) -> Result<LabeledSetPartition, CombinatError> {
    let s = s.trim();
    if s == "-" || s.is_empty() {
        return Ok(LabeledSetPartition::empty(n));
    }
    let bad = |t: &str| CombinatError::Parse(format!("bad arc token {t:?}, expected i-j:t"));
    let arcs = s
        .split_whitespace()
        .map(|tok| {
            let (ij, t) = tok.split_once(':').ok_or_else(|| bad(tok))?;
            let (i, j) = ij.split_once('-').ok_or_else(|| bad(tok))?;
            Ok(LabeledArc::new(
                i.parse().map_err(|_| bad(tok))?,
                j.parse().map_err(|_| bad(tok))?,
                t.parse().map_err(|_| bad(tok))?,
            ))
        })
        .collect::<Result<Vec<_>, CombinatError>>()?;
    LabeledSetPartition::new(n, arcs)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PartitionFilter {
    All,
    Noncrossing,
    Feasible,
    HeisSupport,
}

impl FromStr for PartitionFilter {
    type Err = CombinatError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "all" => Ok(PartitionFilter::All),
            "noncrossing" => Ok(PartitionFilter::Noncrossing),
            "feasible" => Ok(PartitionFilter::Feasible),
            "heis_support" => Ok(PartitionFilter::HeisSupport),
            _ => Err(CombinatError::UnknownFamily(s.to_string())),
        }
    }
}

/// Lazy stream of labeled partitions in lexicographic order of arc lists.
///
/// The search tree has one node per arc list with increasing sources and
/// distinct targets; a node's children append one more arc. Preorder on this
/// tree, with children in increasing `(i, j, label)`, is lexicographic order.
#[derive(Debug, Clone)]
pub struct PartitionStream {
    n: usize,
    q: u8,
    filter: PartitionFilter,
    arcs: Vec<LabeledArc>,
    used_target: Vec<bool>,
    started: bool,
    done: bool,
}

impl PartitionStream {
    /// Unguarded constructor; see [`enumerate_partitions`].
    pub fn new(field: &Field, n: usize, filter: PartitionFilter) -> Self {
        PartitionStream {
            n,
            q: (field.order() - 1) as u8,
            filter,
            arcs: Vec::new(),
            used_target: vec![false; n + 2],
            started: false,
            done: false,
        }
    }

    fn max_target(&self, i: usize) -> usize {
        match self.filter {
            PartitionFilter::HeisSupport => (i + 2).min(self.n),
            _ => self.n,
        }
    }

    /// Smallest arc `>= (i, j, label)` that can follow the current list.
    fn first_arc_from(&self, mut i: usize, mut j: usize, label: u16) -> Option<LabeledArc> {
        if label <= self.q as u16 && j <= self.max_target(i) && !self.used_target[j] && j > i {
            return Some(LabeledArc::new(i, j, label as u8));
        }
        j += 1;
        loop {
            while j <= self.max_target(i) {
                if !self.used_target[j] {
                    return Some(LabeledArc::new(i, j, 1));
                }
                j += 1;
            }
            i += 1;
            if i >= self.n {
                return None;
            }
            j = i + 1;
        }
    }

    fn push(&mut self, a: LabeledArc) {
        self.used_target[a.j] = true;
        self.arcs.push(a);
    }

    fn pop(&mut self) -> Option<LabeledArc> {
        let a = self.arcs.pop()?;
        self.used_target[a.j] = false;
        Some(a)
    }

    /// Moves to the next node in preorder. Returns false when exhausted.
    fn advance(&mut self) -> bool {
        let start = self.arcs.last().map_or(1, |a| a.i + 1);
        if start < self.n {
            if let Some(a) = self.first_arc_from(start, start + 1, 1) {
                self.push(a);
                return true;
            }
        }
        while let Some(a) = self.pop() {
            if let Some(b) = self.first_arc_from(a.i, a.j, a.label as u16 + 1) {
                self.push(b);
                return true;
            }
        }
        false
    }

    fn accepts(&self, p: &LabeledSetPartition) -> bool {
        match self.filter {
            PartitionFilter::All | PartitionFilter::HeisSupport => true,
            PartitionFilter::Noncrossing => p.is_noncrossing(),
            PartitionFilter::Feasible => p.is_feasible(),
        }
    }
}

impl Iterator for PartitionStream {
    type Item = LabeledSetPartition;

    fn next(&mut self) -> Option<LabeledSetPartition> {
        loop {
            if self.done {
                return None;
            }
            if self.started {
                if !self.advance() {
                    self.done = true;
                    return None;
                }
            } else {
                self.started = true;
            }
            let p = LabeledSetPartition { n: self.n, arcs: self.arcs.clone() };
            if self.accepts(&p) {
                return Some(p);
            }
        }
    }
}

/// All labeled partitions of `[n]` over `F_q` passing `filter`, guarded by
/// [`PARTITION_LIMIT`] unless `force` is set.
pub fn enumerate_partitions(
    field: &Field,
    n: usize,
    filter: PartitionFilter,
    force: bool,
) -> Result<PartitionStream, CombinatError> {
    if n > PARTITION_LIMIT && !force {
        return Err(CombinatError::TooLarge { what: "partition", n, limit: PARTITION_LIMIT });
    }
    Ok(PartitionStream::new(field, n, filter))
}

/// Step vectors, in canonical order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StepKind {
    /// `(1,0)`
    Right,
    /// `(1,1)`
    Diag,
    /// `(0,1)`
    Up,
    /// `(0,2)`
    UpUp,
    /// `(2,1)`
    Wide,
    /// `(1,2)`
    Tall,
}

impl StepKind {
    pub const ALL: [StepKind; 6] =
        [StepKind::Right, StepKind::Diag, StepKind::Up, StepKind::UpUp, StepKind::Wide, StepKind::Tall];

    pub fn vector(self) -> (usize, usize) {
        match self {
            StepKind::Right => (1, 0),
            StepKind::Diag => (1, 1),
            StepKind::Up => (0, 1),
            StepKind::UpUp => (0, 2),
            StepKind::Wide => (2, 1),
            StepKind::Tall => (1, 2),
        }
    }

    /// Number of labels, the height of the step.
    pub fn height(self) -> usize {
        self.vector().1
    }

    /// Increase of `x + y`.
    pub fn advance(self) -> usize {
        let (dx, dy) = self.vector();
        dx + dy
    }

    fn token(self) -> &'static str {
        match self {
            StepKind::Right => "R",
            StepKind::Diag => "N",
            StepKind::Up => "U",
            StepKind::UpUp => "UU",
            StepKind::Wide => "S21",
            StepKind::Tall => "S12",
        }
    }
}

/// A step with its labels. Unused label slots are zero, so the derived order
/// is lexicographic on (kind, labels).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Step {
    pub kind: StepKind,
    labels: [u8; 2],
}

impl Step {
    /// Panics if the number of labels differs from the height or a label is 0.
    pub fn new(kind: StepKind, labels: &[u8]) -> Self {
        assert_eq!(labels.len(), kind.height(), "{kind:?} takes {} labels", kind.height());
        assert!(labels.iter().all(|&t| t != 0), "labels must be nonzero");
        let mut l = [0u8; 2];
        l[..labels.len()].copy_from_slice(labels);
        Step { kind, labels: l }
    }

    pub fn right() -> Self {
        Step::new(StepKind::Right, &[])
    }
    pub fn diag(t: u8) -> Self {
        Step::new(StepKind::Diag, &[t])
    }
    pub fn up(t: u8) -> Self {
        Step::new(StepKind::Up, &[t])
    }
    pub fn up_up(t: u8, u: u8) -> Self {
        Step::new(StepKind::UpUp, &[t, u])
    }
    pub fn wide(t: u8) -> Self {
        Step::new(StepKind::Wide, &[t])
    }
    pub fn tall(t: u8, u: u8) -> Self {
        Step::new(StepKind::Tall, &[t, u])
    }

    pub fn labels(&self) -> &[u8] {
        &self.labels[..self.kind.height()]
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind.token())?;
        if !self.labels().is_empty() {
            let l: Vec<String> = self.labels().iter().map(|t| t.to_string()).collect();
            write!(f, "({})", l.join(","))?;
        }
        Ok(())
    }
}

impl FromStr for Step {
    type Err = CombinatError;
    fn from_str(tok: &str) -> Result<Self, Self::Err> {
        let bad = || CombinatError::Parse(format!("bad step token {tok:?}"));
        let (name, args) = match tok.split_once('(') {
            Some((name, rest)) => (name, rest.strip_suffix(')').ok_or_else(bad)?),
            None => (tok, ""),
        };
        let kind = StepKind::ALL.into_iter().find(|k| k.token() == name).ok_or_else(bad)?;
        let labels: Vec<u8> = if args.is_empty() {
            Vec::new()
        } else {
            args.split(',').map(|a| a.trim().parse::<u8>().map_err(|_| bad())).collect::<Result<_, _>>()?
        };
        if labels.len() != kind.height() || labels.contains(&0) {
            return Err(bad());
        }
        Ok(Step::new(kind, &labels))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LabeledLatticePath {
    steps: Vec<Step>,
}

impl LabeledLatticePath {
    pub fn new(steps: Vec<Step>) -> Self {
        LabeledLatticePath { steps }
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn endpoint(&self) -> (usize, usize) {
        self.steps.iter().fold((0, 0), |(x, y), s| {
            let (dx, dy) = s.kind.vector();
            (x + dx, y + dy)
        })
    }

    /// `x + y` at the endpoint.
    pub fn line(&self) -> usize {
        let (x, y) = self.endpoint();
        x + y
    }

    pub fn count(&self, kind: StepKind) -> usize {
        self.steps.iter().filter(|s| s.kind == kind).count()
    }
}

impl fmt::Display for LabeledLatticePath {
    /// Space-separated step tokens, `-` for the empty path.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.steps.is_empty() {
            return write!(f, "-");
        }
        let toks: Vec<String> = self.steps.iter().map(|s| s.to_string()).collect();
        write!(f, "{}", toks.join(" "))
    }
}

impl FromStr for LabeledLatticePath {
    type Err = CombinatError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "-" || s.is_empty() {
            return Ok(LabeledLatticePath::default());
        }
        Ok(LabeledLatticePath { steps: s.split_whitespace().map(str::parse).collect::<Result<_, _>>()? })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PathFamily {
    /// Steps `(1,0), (1,1), (0,1)` ending on `x + y = n - 1`.
    Pell,
    /// Pell steps plus `(0,2)`.
    Heis,
    /// Heis paths not beginning with `(0,2)`.
    HeisTilde,
    /// Steps `(2,1), (1,2), (0,1)` ending on `x + y = n - 1`.
    Inv,
    /// Nonempty Inv paths ending on `x + y = n - 1` or `n - 2` whose first
    /// step is `(0,1)`.
    InvTilde,
}

impl PathFamily {
    pub const ALL: [PathFamily; 5] =
        [PathFamily::Pell, PathFamily::Heis, PathFamily::HeisTilde, PathFamily::Inv, PathFamily::InvTilde];

    pub fn name(self) -> &'static str {
        match self {
            PathFamily::Pell => "pell",
            PathFamily::Heis => "heis",
            PathFamily::HeisTilde => "heis_tilde",
            PathFamily::Inv => "inv",
            PathFamily::InvTilde => "inv_tilde",
        }
    }

    pub fn steps(self) -> &'static [StepKind] {
        match self {
            PathFamily::Pell => &[StepKind::Right, StepKind::Diag, StepKind::Up],
            PathFamily::Heis | PathFamily::HeisTilde => &[StepKind::Right, StepKind::Diag, StepKind::Up, StepKind::UpUp],
            PathFamily::Inv | PathFamily::InvTilde => &[StepKind::Up, StepKind::Wide, StepKind::Tall],
        }
    }

    /// Target values of `x + y` for paths in the family of index `n`.
    fn lines(self, n: usize) -> Vec<usize> {
        let mut v = Vec::new();
        if n >= 1 {
            v.push(n - 1);
        }
        if self == PathFamily::InvTilde && n >= 2 {
            v.push(n - 2);
        }
        v
    }

    fn first_step_ok(self, k: StepKind) -> bool {
        match self {
            PathFamily::HeisTilde => k != StepKind::UpUp,
            PathFamily::InvTilde => k == StepKind::Up,
            _ => true,
        }
    }

    fn allows_empty(self) -> bool {
        self != PathFamily::InvTilde
    }

    /// Membership test with a reason on failure.
    pub fn check(self, path: &LabeledLatticePath, n: usize, field: &Field) -> Result<(), CombinatError> {
        let fail = |why: String| Err(CombinatError::NotInFamily(format!("{path} in {}({n}): {why}", self.name())));
        for s in path.steps() {
            if !self.steps().contains(&s.kind) {
                return fail(format!("step {s} not allowed"));
            }
            if let Some(&t) = s.labels().iter().find(|&&t| !field.is_code(t as u32) || t == 0) {
                return fail(format!("label {t} is not a nonzero element of F_{}", field.order()));
            }
        }
        if path.is_empty() && !self.allows_empty() {
            return fail("empty path".into());
        }
        if let Some(first) = path.steps().first() {
            if !self.first_step_ok(first.kind) {
                return fail(format!("may not begin with {first}"));
            }
        }
        if !self.lines(n).contains(&path.line()) {
            return fail(format!("ends on x+y = {}", path.line()));
        }
        Ok(())
    }

    pub fn contains(self, path: &LabeledLatticePath, n: usize, field: &Field) -> bool {
        self.check(path, n, field).is_ok()
    }
}

impl FromStr for PathFamily {
    type Err = CombinatError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PathFamily::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| CombinatError::UnknownFamily(s.to_string()))
    }
}

impl fmt::Display for PathFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Lazy stream of the paths of a family in canonical order (preorder of the
/// prefix tree with children sorted by step kind, then labels).
#[derive(Debug, Clone)]
pub struct PathStream {
    family: PathFamily,
    q: u8,
    lines: Vec<usize>,
    max_line: usize,
    steps: Vec<Step>,
    line: usize,
    started: bool,
    done: bool,
}

impl PathStream {
    /// Unguarded constructor; see [`enumerate_paths`].
    pub fn new(family: PathFamily, n: usize, field: &Field) -> Self {
        let lines = family.lines(n);
        PathStream {
            family,
            q: (field.order() - 1) as u8,
            max_line: lines.iter().copied().max().unwrap_or(0),
            done: lines.is_empty(),
            lines,
            steps: Vec::new(),
            line: 0,
            started: false,
        }
    }

    /// Smallest step `>= s` allowed at the current position.
    fn first_step_from(&self, kind_from: StepKind, labels: [u8; 2]) -> Option<Step> {
        let at_start = self.steps.is_empty();
        let mut labels = Some(labels);
        for &k in self.family.steps() {
            if k < kind_from {
                continue;
            }
            let l = if k == kind_from { labels.take() } else { None }.unwrap_or([1, 1]);
            if self.line + k.advance() > self.max_line || (at_start && !self.family.first_step_ok(k)) {
                continue;
            }
            let h = k.height();
            if l[..h].iter().all(|&t| t <= self.q) {
                let mut lab = [0u8; 2];
                lab[..h].copy_from_slice(&l[..h]);
                return Some(Step { kind: k, labels: lab });
            }
        }
        None
    }

    fn next_labels(&self, s: Step) -> Option<[u8; 2]> {
        let mut l = s.labels;
        for pos in (0..s.kind.height()).rev() {
            if l[pos] < self.q {
                l[pos] += 1;
                return Some(l);
            }
            l[pos] = 1;
        }
        None
    }

    fn push(&mut self, s: Step) {
        self.line += s.kind.advance();
        self.steps.push(s);
    }

    fn pop(&mut self) -> Option<Step> {
        let s = self.steps.pop()?;
        self.line -= s.kind.advance();
        Some(s)
    }

    fn successor(&self, s: Step) -> Option<Step> {
        if let Some(l) = self.next_labels(s) {
            return Some(Step { kind: s.kind, labels: l });
        }
        let next_kind = StepKind::ALL.into_iter().find(|&k| k > s.kind)?;
        self.first_step_from(next_kind, [1, 1])
    }

    fn advance(&mut self) -> bool {
        if let Some(s) = self.first_step_from(StepKind::Right, [1, 1]) {
            self.push(s);
            return true;
        }
        while let Some(s) = self.pop() {
            if let Some(t) = self.successor(s) {
                self.push(t);
                return true;
            }
        }
        false
    }

    fn accepts(&self) -> bool {
        self.lines.contains(&self.line) && (self.family.allows_empty() || !self.steps.is_empty())
    }
}

impl Iterator for PathStream {
    type Item = LabeledLatticePath;

    fn next(&mut self) -> Option<LabeledLatticePath> {
        loop {
            if self.done {
                return None;
            }
            if self.started {
                if !self.advance() {
                    self.done = true;
                    return None;
                }
            } else {
                self.started = true;
            }
            if self.accepts() {
                return Some(LabeledLatticePath { steps: self.steps.clone() });
            }
        }
    }
}

/// All paths of `family` with index `n` over `F_q`, guarded by
/// [`PATH_LIMIT`] unless `force` is set.
pub fn enumerate_paths(field: &Field, family: PathFamily, n: usize, force: bool) -> Result<PathStream, CombinatError> {
    if n > PATH_LIMIT && !force {
        return Err(CombinatError::TooLarge { what: "path", n, limit: PATH_LIMIT });
    }
    Ok(PathStream::new(family, n, field))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn field(q: u32) -> Field {
        Field::new(q).unwrap()
    }

    fn arc_pairs(p: &LabeledSetPartition) -> Vec<(usize, usize)> {
        p.arcs().iter().map(|a| (a.i, a.j)).collect()
    }

    fn arcs(n: usize, pairs: &[(usize, usize)]) -> LabeledSetPartition {
        LabeledSetPartition::new(n, pairs.iter().map(|&(i, j)| LabeledArc::new(i, j, 1)).collect()).unwrap()
    }

    #[test]
    fn arcs_of_examples() {
        assert_eq!(
            arcs_of(7, &[vec![1, 3], vec![2, 4, 6, 7], vec![5]]).unwrap(),
            vec![(1, 3), (2, 4), (4, 6), (6, 7)]
        );
        assert!(arcs_of(4, &[vec![1], vec![2], vec![3], vec![4]]).unwrap().is_empty());
        assert_eq!(arcs_of(3, &[vec![1, 2, 3]]).unwrap(), vec![(1, 2), (2, 3)]);
        assert!(matches!(arcs_of(3, &[vec![1, 2]]), Err(CombinatError::NotAPartition(_))));
        assert!(matches!(arcs_of(3, &[vec![1, 2], vec![2, 3]]), Err(CombinatError::NotAPartition(_))));
        assert!(matches!(arcs_of(2, &[vec![1, 3]]), Err(CombinatError::NotAPartition(_))));
    }

    #[test]
    fn blocks_round_trip() {
        let blocks = vec![vec![1, 3], vec![2, 4, 6, 7], vec![5]];
        let p = LabeledSetPartition::from_blocks(7, &blocks, 1).unwrap();
        assert_eq!(p.blocks(), blocks);
        assert_eq!(arcs_of(7, &p.blocks()).unwrap(), arc_pairs(&p));
    }

    #[test]
    fn invalid_arc_sets() {
        let bad = |v: Vec<LabeledArc>| LabeledSetPartition::new(4, v).is_err();
        assert!(bad(vec![LabeledArc::new(1, 2, 0)]));
        assert!(bad(vec![LabeledArc::new(2, 2, 1)]));
        assert!(bad(vec![LabeledArc::new(1, 5, 1)]));
        assert!(bad(vec![LabeledArc::new(1, 2, 1), LabeledArc::new(1, 3, 1)]));
        assert!(bad(vec![LabeledArc::new(1, 3, 1), LabeledArc::new(2, 3, 1)]));
    }

    #[test]
    fn noncrossing_and_feasible_examples() {
        assert!(!arcs(4, &[(1, 3), (2, 4)]).is_noncrossing());
        assert!(arcs(4, &[(1, 4), (2, 3)]).is_noncrossing());
        assert!(LabeledSetPartition::from_blocks(4, &[vec![1, 2], vec![3, 4]], 1).unwrap().is_feasible());
        assert!(!LabeledSetPartition::from_blocks(3, &[vec![1], vec![2, 3]], 1).unwrap().is_feasible());
    }

    #[test]
    fn unlabeled_counts() {
        let f2 = field(2);
        let count = |n, filter| enumerate_partitions(&f2, n, filter, false).unwrap().count();
        assert_eq!(count(4, PartitionFilter::All), 15);
        assert_eq!(count(4, PartitionFilter::Noncrossing), 14);
        assert_eq!(count(5, PartitionFilter::Feasible), 11);
        let bell = [1, 1, 2, 5, 15, 52, 203, 877];
        for (n, &b) in bell.iter().enumerate() {
            assert_eq!(count(n, PartitionFilter::All), b, "Bell {n}");
        }
    }

    #[test]
    fn labeled_count_n3_q3() {
        assert_eq!(enumerate_partitions(&field(3), 3, PartitionFilter::All, false).unwrap().count(), 11);
    }

    #[test]
    fn partition_stream_is_sorted_and_distinct() {
        for q in [2, 3] {
            let all: Vec<_> = PartitionStream::new(&field(q), 5, PartitionFilter::All).collect();
            assert!(all.windows(2).all(|w| w[0].arcs() < w[1].arcs()));
            let heis: Vec<_> = PartitionStream::new(&field(q), 5, PartitionFilter::HeisSupport).collect();
            let want: Vec<_> = all.iter().filter(|p| p.has_heis_support()).cloned().collect();
            assert_eq!(heis, want);
        }
    }

    #[test]
    fn partitions_from_exhaustive_matrices() {
        // Every 0/1 pattern on the triangle of n = 4 with at most one 1 per row
        // and column is a partition, and nothing else is.
        let f = field(2);
        let n = 4;
        let mut found = HashSet::new();
        for code in 0u32..(1 << 6) {
            let entries: Vec<u8> = (0..6).map(|k| ((code >> k) & 1) as u8).collect();
            let l = Functional::from_matrix(StrictUpperMatrix::from_entries(&f, n, entries).unwrap());
            let supp = l.matrix().support();
            let rows_ok = (1..=n).all(|r| supp.iter().filter(|e| e.0 == r).count() <= 1);
            let cols_ok = (1..=n).all(|c| supp.iter().filter(|e| e.1 == c).count() <= 1);
            match LabeledSetPartition::from_functional(&l) {
                Ok(p) => {
                    assert!(rows_ok && cols_ok);
                    assert_eq!(p.to_functional(&f), l);
                    found.insert(p);
                }
                Err(_) => assert!(!(rows_ok && cols_ok)),
            }
        }
        assert_eq!(found.len(), 15);
    }

    #[test]
    fn shift_examples() {
        let e = LabeledSetPartition::empty(2).shift();
        assert_eq!((e.n(), e.arcs().len()), (3, 0));
        let p = LabeledSetPartition::new(2, vec![LabeledArc::new(1, 2, 2)]).unwrap().shift();
        assert_eq!(p.arcs(), &[LabeledArc::new(1, 3, 2)]);
        let shifted: HashSet<_> =
            PartitionStream::new(&field(2), 4, PartitionFilter::Feasible).map(|p| p.shift()).collect();
        assert_eq!(shifted.len(), 4);
    }

    #[test]
    fn partition_text_round_trip() {
        let p = LabeledSetPartition::new(5, vec![LabeledArc::new(1, 3, 2), LabeledArc::new(3, 5, 1)]).unwrap();
        assert_eq!(p.to_string(), "1-3:2 3-5:1");
        assert_eq!(parse_partition(5, &p.to_string()).unwrap(), p);
        assert_eq!(parse_partition(3, "-").unwrap(), LabeledSetPartition::empty(3));
        assert!(parse_partition(3, "1-3").is_err());
        assert!(parse_partition(3, "1-2:1 1-3:1").is_err());
    }

    #[test]
    fn guards() {
        assert!(matches!(
            enumerate_partitions(&field(2), 11, PartitionFilter::All, false),
            Err(CombinatError::TooLarge { .. })
        ));
        assert!(enumerate_partitions(&field(2), 11, PartitionFilter::All, true).is_ok());
        assert!(enumerate_paths(&field(2), PathFamily::Pell, 13, false).is_err());
    }

    #[test]
    fn path_text() {
        let p = LabeledLatticePath::new(vec![Step::right(), Step::diag(2), Step::up(3), Step::up_up(1, 2)]);
        assert_eq!(p.to_string(), "R N(2) U(3) UU(1,2)");
        assert_eq!(p.to_string().parse::<LabeledLatticePath>().unwrap(), p);
        let q = LabeledLatticePath::new(vec![Step::up(1), Step::wide(1), Step::tall(1, 2)]);
        assert_eq!(q.to_string(), "U(1) S21(1) S12(1,2)");
        assert_eq!(q.to_string().parse::<LabeledLatticePath>().unwrap(), q);
        assert_eq!("-".parse::<LabeledLatticePath>().unwrap(), LabeledLatticePath::default());
        for bad in ["X", "U", "U(0)", "R(1)", "UU(1)", "U(1"] {
            assert!(bad.parse::<LabeledLatticePath>().is_err(), "{bad}");
        }
        assert_eq!(p.endpoint(), (2, 4));
    }

    #[test]
    fn family_names() {
        for f in PathFamily::ALL {
            assert_eq!(f.name().parse::<PathFamily>().unwrap(), f);
        }
        assert_eq!("bogus".parse::<PathFamily>().unwrap_err(), CombinatError::UnknownFamily("bogus".into()));
    }

    #[test]
    fn small_path_counts() {
        let f2 = field(2);
        let count = |fam, n| PathStream::new(fam, n, &f2).count();
        assert_eq!(count(PathFamily::HeisTilde, 3), 5);
        assert_eq!(count(PathFamily::Pell, 3), 5);
        assert_eq!(count(PathFamily::Pell, 4), 12);
        let at_03: Vec<String> = PathStream::new(PathFamily::Heis, 4, &f2)
            .filter(|p| p.endpoint() == (0, 3))
            .map(|p| p.to_string())
            .collect();
        assert_eq!(at_03, vec!["U(1) U(1) U(1)", "U(1) UU(1,1)", "UU(1,1) U(1)"]);
        assert_eq!(count(PathFamily::Pell, 0), 0);
        assert_eq!(count(PathFamily::Pell, 1), 1);
        assert_eq!(count(PathFamily::InvTilde, 1), 0);
    }

    #[test]
    fn path_streams_are_sorted_distinct_and_members() {
        for q in [2, 3] {
            let f = field(q);
            for fam in PathFamily::ALL {
                for n in 0..=6 {
                    let v: Vec<_> = PathStream::new(fam, n, &f).collect();
                    assert!(v.windows(2).all(|w| w[0] < w[1]), "{fam} {n}");
                    let texts: HashSet<String> = v.iter().map(|p| p.to_string()).collect();
                    assert_eq!(texts.len(), v.len());
                    for p in &v {
                        fam.check(p, n, &f).unwrap();
                        assert!(p.steps().iter().all(|s| s.labels().len() == s.kind.height()));
                    }
                }
            }
        }
    }

    #[test]
    fn membership_rejections() {
        let f = field(2);
        let p = LabeledLatticePath::new(vec![Step::up_up(1, 1)]);
        assert!(PathFamily::Heis.contains(&p, 3, &f));
        assert!(!PathFamily::HeisTilde.contains(&p, 3, &f));
        assert!(!PathFamily::Pell.contains(&p, 3, &f));
        assert!(!PathFamily::Heis.contains(&p, 4, &f));
        assert!(!PathFamily::Pell.contains(&LabeledLatticePath::new(vec![Step::up(2)]), 2, &f));
        assert!(!PathFamily::InvTilde.contains(&LabeledLatticePath::default(), 1, &f));
        let w = LabeledLatticePath::new(vec![Step::up(1), Step::wide(1)]);
        assert!(PathFamily::InvTilde.contains(&w, 5, &f));
        assert!(PathFamily::InvTilde.contains(&w, 6, &f));
        assert!(!PathFamily::InvTilde.contains(&w, 7, &f));
    }
}
