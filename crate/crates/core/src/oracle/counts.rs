//! Character counts read off orbit censuses.

use std::collections::BTreeMap;

use crate::gf::Field;
use crate::linalg::Functional;

use super::chain::xi_stats;
use super::orbit::{census, orbit_set, OrbitCensus, OrbitMode};
use super::space::{FunctionalSpace, GroupKind, Support};
use super::truncated::{conjugacy_classes, ClassGroup};
use super::OracleError;

/// `|G lambda ∩ lambda G| = 1`, i.e. the supercharacter of `lambda` is irreducible.
fn left_right_meet_trivially(space: &FunctionalSpace, coords: &[u8]) -> Result<bool, OracleError> {
    let left = orbit_set(space, coords, OrbitMode::Left)?;
    let right = orbit_set(space, coords, OrbitMode::Right)?;
    let (small, big) = if left.len() <= right.len() { (&left, &right) } else { (&right, &left) };
    Ok(small.iter().filter(|p| big.contains(*p)).count() == 1)
}

/// Two-sided census of `space`, with an irreducibility flag per orbit.
pub fn irreducible_orbit_census(space: &FunctionalSpace) -> Result<(OrbitCensus, Vec<bool>), OracleError> {
    let c = census(space, OrbitMode::TwoSided)?;
    let flags = c
        .orbits()
        .iter()
        .map(|o| left_right_meet_trivially(space, &space.decode(o.rep)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((c, flags))
}

/// Whether the orbit of `code` contains `code + t gamma` for every `t`.
fn gamma_stable(space: &FunctionalSpace, census: &OrbitCensus, code: u64) -> bool {
    let coords = space.decode(code);
    space.field().elements().all(|t| census.same_orbit(code, space.encode(&space.shift_gamma(&coords, t))))
}

/// Histogram of C-orbit sizes: for each orbit, the number of distinct orbits
/// met by `lambda + t gamma` as `t` runs over `F_q`.
pub fn c_orbit_sizes(space: &FunctionalSpace, census: &OrbitCensus) -> BTreeMap<usize, u64> {
    let mut hist = BTreeMap::new();
    for o in census.orbits() {
        let coords = space.decode(o.rep);
        let mut met: Vec<usize> = space
            .field()
            .elements()
            .filter_map(|t| census.label(space.encode(&space.shift_gamma(&coords, t))))
            .collect();
        met.sort_unstable();
        met.dedup();
        *hist.entry(met.len()).or_insert(0) += 1;
    }
    hist
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SupercharacterFamilies {
    pub supercharacters: u64,
    pub irreducible_supercharacters: u64,
    /// Irreducible supercharacters whose kernel contains the third term of
    /// the lower central series.
    pub heisenberg_supercharacters: u64,
}

/// Supercharacter counts for `U_n(F_q)` or its alternating subgroup.
pub fn count_supercharacter_families(
    field: &Field,
    n: usize,
    group: GroupKind,
) -> Result<SupercharacterFamilies, OracleError> {
    let full = FunctionalSpace::new(field, n, Support::Full, group);
    let (c, irr) = irreducible_orbit_census(&full)?;
    let heis = FunctionalSpace::new(field, n, Support::Heisenberg, group);
    let (_, heis_irr) = irreducible_orbit_census(&heis)?;
    Ok(SupercharacterFamilies {
        supercharacters: c.len() as u64,
        irreducible_supercharacters: irr.iter().filter(|&&b| b).count() as u64,
        heisenberg_supercharacters: heis_irr.iter().filter(|&&b| b).count() as u64,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HeisMethod {
    /// Conjugacy classes of `U_n / (1 + n^3)`.
    QuotientClasses,
    /// Coadjoint orbits of functionals vanishing on `n^3` whose `xi` is irreducible.
    XiCensus,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeisenbergCount {
    pub count: u64,
    /// Degree exponent to number of characters; only filled by [`HeisMethod::XiCensus`].
    pub histogram: Option<BTreeMap<usize, u64>>,
}

/// Number of Heisenberg characters of `U_n(F_q)`.
pub fn count_heisenberg_characters(field: &Field, n: usize, method: HeisMethod) -> Result<HeisenbergCount, OracleError> {
    match method {
        HeisMethod::QuotientClasses => {
            let c = conjugacy_classes(ClassGroup::Truncated, field, n)?;
            Ok(HeisenbergCount { count: c.len() as u64, histogram: None })
        }
        HeisMethod::XiCensus => {
            let space = FunctionalSpace::new(field, n, Support::Heisenberg, GroupKind::Full);
            let c = census(&space, OrbitMode::Coadjoint)?;
            let mut hist = BTreeMap::new();
            let mut count = 0;
            for o in c.orbits() {
                let xi = xi_stats(&space.functional_of_code(o.rep));
                if xi.irreducible {
                    count += 1;
                    *hist.entry(xi.degree_exponent).or_insert(0) += 1;
                }
            }
            Ok(HeisenbergCount { count, histogram: Some(hist) })
        }
    }
}

/// Number of Heisenberg characters of the alternating subgroup, as the class
/// number of its image in `U_n / (1 + n^3)`.
pub fn count_alternating_heisenberg_characters(field: &Field, n: usize) -> Result<u64, OracleError> {
    Ok(conjugacy_classes(ClassGroup::TruncatedAlternating, field, n)?.len() as u64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CInvariantKind {
    Supercharacters,
    IrreducibleSupercharacters,
    HeisenbergSupercharacters,
    HeisenbergCharacters,
}

/// Characters of `U_n(F_q)` of the given kind fixed by tensoring with every
/// linear character that factors through the superdiagonal sum.
pub fn count_c_invariant(field: &Field, n: usize, kind: CInvariantKind) -> Result<u64, OracleError> {
    let (support, irreducible_only) = match kind {
        CInvariantKind::Supercharacters => (Support::Full, false),
        CInvariantKind::IrreducibleSupercharacters => (Support::Full, true),
        CInvariantKind::HeisenbergSupercharacters => (Support::Heisenberg, true),
        CInvariantKind::HeisenbergCharacters => {
            let space = FunctionalSpace::new(field, n, Support::Heisenberg, GroupKind::Full);
            let c = census(&space, OrbitMode::Coadjoint)?;
            let count = c
                .orbits()
                .iter()
                .filter(|o| xi_stats(&space.functional_of_code(o.rep)).irreducible && gamma_stable(&space, &c, o.rep))
                .count();
            return Ok(count as u64);
        }
    };
    let space = FunctionalSpace::new(field, n, support, GroupKind::Full);
    let (c, irr) = irreducible_orbit_census(&space)?;
    let count = c
        .orbits()
        .iter()
        .zip(&irr)
        .filter(|(o, &ok)| (ok || !irreducible_only) && gamma_stable(&space, &c, o.rep))
        .count();
    Ok(count as u64)
}

/// Number of superdiagonal functionals `tau` with `lambda + tau` in the
/// coadjoint orbit of `lambda`.
pub fn linear_character_stabilizer(lambda: &Functional) -> Result<u64, OracleError> {
    let n = lambda.n();
    let space = FunctionalSpace::new(lambda.field(), n, Support::Full, GroupKind::Full);
    let coords = space.coords_of(lambda)?;
    let orbit = orbit_set(&space, &coords, OrbitMode::Coadjoint)?;
    let q = lambda.field().order() as u64;
    let shifts = q.checked_pow(n.saturating_sub(1) as u32).ok_or(OracleError::SpaceTooLarge {
        points: u128::MAX,
        limit: super::size_guard(),
    })?;
    super::check_guard(shifts as u128)?;
    let mut count = 0;
    let mut tau = vec![0u8; n.saturating_sub(1)];
    for mut code in 0..shifts {
        for t in tau.iter_mut() {
            *t = (code % q) as u8;
            code /= q;
        }
        if orbit.contains(&space.shift_superdiagonal(&coords, &tau)) {
            count += 1;
        }
    }
    Ok(count)
}

/// Counts `t` in `(F_q^x)^{2d}` for which `lambda_t + gamma` lies in the
/// coadjoint orbit of `lambda_t = sum_i t_i e*_{i,i+2}`, inside `U_{2d+2}`.
pub fn tech_lem1_bruteforce(field: &Field, d: usize) -> Result<u64, OracleError> {
    if d == 0 {
        return Err(OracleError::Invalid("d must be at least 1".into()));
    }
    let n = 2 * d + 2;
    let space = FunctionalSpace::new(field, n, Support::Heisenberg, GroupKind::Full);
    let units: Vec<u8> = field.nonzero().collect();
    let tuples = (units.len() as u128).pow(2 * d as u32);
    super::check_guard(tuples)?;
    let mut count = 0;
    for mut code in 0..tuples as u64 {
        let mut triples = Vec::with_capacity(2 * d);
        for i in 1..=2 * d {
            triples.push((i, i + 2, units[(code % units.len() as u64) as usize]));
            code /= units.len() as u64;
        }
        let coords = space.coords_of(&Functional::from_triples(field, n, &triples))?;
        let orbit = orbit_set(&space, &coords, OrbitMode::Coadjoint)?;
        if orbit.contains(&space.shift_gamma(&coords, 1)) {
            count += 1;
        }
    }
    Ok(count)
}
