//! Family names on the command line and the objects each family counts.

use num_bigint::BigInt;
use unitri_core::combinat::{PartitionFilter, PathFamily};
use unitri_core::counting::{poly, Family};
use unitri_core::gf::Field;
use unitri_core::oracle::{
    count_alternating_heisenberg_characters, count_c_invariant, count_heisenberg_characters,
    count_supercharacter_families, CInvariantKind, GroupKind, HeisMethod,
};

use crate::CliError;

/// Parses a counting family. `heis` is accepted for `he` (Heisenberg
/// characters) and dashes for underscores.
pub fn parse_family(s: &str) -> Result<Family, CliError> {
    let norm = s.trim().to_ascii_lowercase().replace('-', "_");
    let norm = match norm.as_str() {
        "heis" => "he",
        "in" => "inv",
        other => other,
    };
    norm.parse::<Family>().map_err(|_| {
        let names: Vec<&str> = Family::ALL.iter().map(|f| f.name()).collect();
        CliError::Usage(format!("unknown family {s:?}; expected one of {} (or heis)", names.join(", ")))
    })
}

/// Combinatorial model enumerated for a counting family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Model {
    Paths(PathFamily),
    Partitions(PartitionFilter),
}

impl Model {
    pub fn of(family: Family) -> Option<Model> {
        Some(match family {
            Family::Del => Model::Paths(PathFamily::Pell),
            Family::PreHe => Model::Paths(PathFamily::Heis),
            Family::He => Model::Paths(PathFamily::HeisTilde),
            Family::PreIn => Model::Paths(PathFamily::Inv),
            Family::Inv => Model::Paths(PathFamily::InvTilde),
            Family::Bell => Model::Partitions(PartitionFilter::All),
            Family::Cat => Model::Partitions(PartitionFilter::Noncrossing),
            Family::Fe => Model::Partitions(PartitionFilter::Feasible),
            Family::AltBell | Family::AltCat | Family::AltDel | Family::AltHe => return None,
        })
    }

    pub fn name(self) -> String {
        match self {
            Model::Paths(p) => format!("paths:{}", p.name()),
            Model::Partitions(f) => format!("partitions:{}", filter_name(f)),
        }
    }
}

pub fn filter_name(f: PartitionFilter) -> &'static str {
    match f {
        PartitionFilter::All => "all",
        PartitionFilter::Noncrossing => "noncrossing",
        PartitionFilter::Feasible => "feasible",
        PartitionFilter::HeisSupport => "heis_support",
    }
}

pub fn poly_value(family: Family, n: i64, x: &BigInt) -> Result<BigInt, CliError> {
    Ok(poly(family, n)?.eval(x))
}

fn oracle_domain(family: Family, n: i64) -> Result<usize, CliError> {
    let min = family.min_index().unwrap_or(1).max(1);
    if n < min {
        return Err(CliError::Usage(format!("the oracle for {family} needs n >= {min}")));
    }
    Ok(n as usize)
}

/// Brute-force count of the objects a family enumerates in group theory.
pub fn oracle_value(family: Family, n: i64, field: &Field) -> Result<BigInt, CliError> {
    let m = oracle_domain(family, n)?;
    let v = match family {
        Family::He => count_heisenberg_characters(field, m, HeisMethod::QuotientClasses)?.count,
        Family::Del => count_supercharacter_families(field, m, GroupKind::Full)?.heisenberg_supercharacters,
        Family::Bell => count_supercharacter_families(field, m, GroupKind::Full)?.supercharacters,
        Family::Cat => count_supercharacter_families(field, m, GroupKind::Full)?.irreducible_supercharacters,
        Family::Fe => count_c_invariant(field, m + 1, CInvariantKind::Supercharacters)?,
        Family::Inv => count_c_invariant(field, m + 1, CInvariantKind::HeisenbergCharacters)?,
        Family::AltBell => count_supercharacter_families(field, m, GroupKind::Alternating)?.supercharacters,
        Family::AltCat => count_supercharacter_families(field, m, GroupKind::Alternating)?.irreducible_supercharacters,
        Family::AltDel => count_supercharacter_families(field, m, GroupKind::Alternating)?.heisenberg_supercharacters,
        Family::AltHe => count_alternating_heisenberg_characters(field, m)?,
        Family::PreHe | Family::PreIn => {
            return Err(CliError::Usage(format!("{family} has no group-theoretic oracle")));
        }
    };
    Ok(BigInt::from(v))
}
