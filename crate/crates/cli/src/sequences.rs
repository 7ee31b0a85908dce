//! Named integer sequences produced by the counting polynomials.

use num_bigint::BigInt;
use unitri_core::counting::{fibonacci, poly, Family};

pub struct NamedSequence {
    pub name: &'static str,
    pub oeis: &'static str,
    pub description: &'static str,
    pub start: i64,
    pub values: Vec<BigInt>,
}

fn at(family: Family, n: i64, x: i64) -> BigInt {
    poly(family, n).expect("index inside the family's domain").eval_i64(x)
}

fn coeff(family: Family, n: i64, k: usize) -> BigInt {
    poly(family, n).expect("index inside the family's domain").coeff(k)
}

/// The sequences, each with `terms` values from its start index.
pub fn named_sequences(terms: usize) -> Vec<NamedSequence> {
    let range = |start: i64| start..start + terms as i64;
    let mk = |name, oeis, description, start: i64, f: &dyn Fn(i64) -> BigInt| NamedSequence {
        name,
        oeis,
        description,
        start,
        values: range(start).map(f).collect(),
    };
    vec![
        mk("heis_q2", "A052945", "Heisenberg characters of U_n(F_2)", 1, &|n| at(Family::He, n, 1)),
        mk("pell", "A000129", "Heisenberg supercharacters of U_n(F_2)", 0, &|n| at(Family::Del, n, 1)),
        mk("del_q3", "A007482", "Heisenberg supercharacters of U_n(F_3)", 0, &|n| at(Family::Del, n, 2)),
        mk("fibonacci", "A000045", "leading coefficient of He_{n+1}", 0, &|n| fibonacci(n as usize)),
        mk("d_prime_1", "A023610", "coefficient of x^n in preHe_{n+2}", 0, &|n| coeff(Family::PreHe, n + 2, n as usize)),
        mk("d_prime_1_diff", "A055244", "coefficient of x^n in He_{n+2}", 0, &|n| coeff(Family::He, n + 2, n as usize)),
        mk("bell", "A000110", "supercharacters of U_n(F_2)", 0, &|n| at(Family::Bell, n, 1)),
        mk("catalan", "A000108", "irreducible supercharacters of U_n(F_2)", 0, &|n| at(Family::Cat, n, 1)),
        mk("fe", "A000296", "set partitions of [n] without singletons", 0, &|n| at(Family::Fe, n, 1)),
        mk("alt_cat", "A000150", "irreducible supercharacters of the alternating subgroup, q = 2", 2, &|n| {
            at(Family::AltCat, n, 1)
        }),
        mk("alt_del", "A105635", "Heisenberg supercharacters of the alternating subgroup, q = 2", 1, &|n| {
            at(Family::AltDel, n, 1)
        }),
        mk("alt_bell_minus_bell", "A102287", "AltBell_n(1) - Bell_{n-1}(1)", 2, &|n| {
            at(Family::AltBell, n, 1) - at(Family::Bell, n - 1, 1)
        }),
        mk("bell_minus_alt_bell", "A102286", "Bell_n(1) - AltBell_n(1)", 2, &|n| {
            at(Family::Bell, n, 1) - at(Family::AltBell, n, 1)
        }),
    ]
}
