//! Orbit enumeration by breadth-first closure under generators.

use std::collections::{HashSet, VecDeque};

use crate::linalg::Functional;

use super::space::{FunctionalSpace, GroupKind, Support};
use super::{check_guard, size_guard, OracleError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrbitMode {
    /// `G lambda`
    Left,
    /// `lambda G`
    Right,
    /// `G lambda G`
    TwoSided,
    /// `{g lambda g^{-1}}`
    Coadjoint,
    /// Conjugation on group elements.
    Conjugacy,
}

/// One orbit: its smallest code and its size.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Orbit {
    pub rep: u64,
    pub size: u64,
}

const UNSEEN: u32 = u32::MAX;
const OUTSIDE: u32 = u32::MAX - 1;

/// A partition of a densely coded point set into orbits.
#[derive(Debug, Clone)]
pub struct OrbitCensus {
    mode: OrbitMode,
    orbits: Vec<Orbit>,
    total: u64,
    labels: Vec<u32>,
}

impl OrbitCensus {
    /// Sweeps codes `0..universe`, skipping those that fail `member`. The
    /// `step` callback pushes the generator images of a code.
    pub(crate) fn build(
        mode: OrbitMode,
        universe: u64,
        member: impl Fn(u64) -> bool,
        mut step: impl FnMut(u64, &mut Vec<u64>),
    ) -> Self {
        let mut labels: Vec<u32> = (0..universe).map(|c| if member(c) { UNSEEN } else { OUTSIDE }).collect();
        let mut orbits = Vec::new();
        let mut total = 0u64;
        let mut queue = VecDeque::new();
        let mut next = Vec::new();
        for start in 0..universe {
            if labels[start as usize] != UNSEEN {
                continue;
            }
            let label = orbits.len() as u32;
            labels[start as usize] = label;
            queue.push_back(start);
            let mut size = 0u64;
            while let Some(c) = queue.pop_front() {
                size += 1;
                next.clear();
                step(c, &mut next);
                for &d in &next {
                    let slot = &mut labels[d as usize];
                    debug_assert_ne!(*slot, OUTSIDE, "generator left the point set");
                    if *slot == UNSEEN {
                        *slot = label;
                        queue.push_back(d);
                    }
                }
            }
            total += size;
            orbits.push(Orbit { rep: start, size });
        }
        OrbitCensus { mode, orbits, total, labels }
    }

    pub fn mode(&self) -> OrbitMode {
        self.mode
    }

    pub fn orbits(&self) -> &[Orbit] {
        &self.orbits
    }

    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }

    /// Number of points swept.
    pub fn total(&self) -> u64 {
        self.total
    }

    /// Index into [`orbits`](Self::orbits) of the orbit holding `code`.
    pub fn label(&self, code: u64) -> Option<usize> {
        match self.labels.get(code as usize) {
            Some(&l) if l < OUTSIDE => Some(l as usize),
            _ => None,
        }
    }

    pub fn same_orbit(&self, a: u64, b: u64) -> bool {
        matches!((self.label(a), self.label(b)), (Some(x), Some(y)) if x == y)
    }
}

/// Orbit census of a whole functional space.
pub fn census(space: &FunctionalSpace, mode: OrbitMode) -> Result<OrbitCensus, OracleError> {
    if mode == OrbitMode::Conjugacy {
        return Err(OracleError::Invalid("conjugacy census needs a group, see conjugacy_classes".into()));
    }
    check_guard(space.points())?;
    let universe = space.points() as u64;
    Ok(OrbitCensus::build(
        mode,
        universe,
        |_| true,
        |c, out| {
            let coords = space.decode(c);
            out.extend(space.neighbours(mode, &coords).iter().map(|v| space.encode(v)));
        },
    ))
}

/// The orbit of one point, as coordinate vectors. The number of visited
/// points is bounded by the size guard.
pub fn orbit_set(space: &FunctionalSpace, coords: &[u8], mode: OrbitMode) -> Result<HashSet<Vec<u8>>, OracleError> {
    if mode == OrbitMode::Conjugacy {
        return Err(OracleError::Invalid("conjugacy acts on group elements".into()));
    }
    let budget = size_guard();
    let mut seen: HashSet<Vec<u8>> = HashSet::new();
    let mut queue = VecDeque::new();
    let mut start = coords.to_vec();
    space.normalize(&mut start);
    seen.insert(start.clone());
    queue.push_back(start);
    while let Some(c) = queue.pop_front() {
        for d in space.neighbours(mode, &c) {
            if !seen.contains(&d) {
                if seen.len() as u64 >= budget {
                    return Err(OracleError::SpaceTooLarge { points: seen.len() as u128 + 1, limit: budget });
                }
                seen.insert(d.clone());
                queue.push_back(d);
            }
        }
    }
    Ok(seen)
}

/// The `U_n(F_q)` orbit of `lambda`, sorted by coordinates.
pub fn orbit(lambda: &Functional, mode: OrbitMode) -> Result<Vec<Functional>, OracleError> {
    let n = lambda.n();
    let heis = crate::linalg::positions(n).zip(lambda.coords()).all(|((i, j), &c)| j <= i + 2 || c == 0);
    let support = if heis { Support::Heisenberg } else { Support::Full };
    let space = FunctionalSpace::new(lambda.field(), n, support, GroupKind::Full);
    let coords = space.coords_of(lambda)?;
    let mut points: Vec<Vec<u8>> = orbit_set(&space, &coords, mode)?.into_iter().collect();
    points.sort();
    Ok(points.iter().map(|c| space.functional(c)).collect())
}
