//! Counting polynomials in `x = q - 1` and the integer arrays behind them.
//!
//! Everything is exact: coefficients are `BigInt`, divisions by `x + 1` are
//! synthetic divisions that fail loudly on a nonzero remainder.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CountingError {
    #[error("{family}_{n}: division by x+1 left a nonzero remainder")]
    NonIntegralDivision { family: &'static str, n: i64 },
    #[error("{family}_{n} is not defined")]
    IndexOutOfDomain { family: &'static str, n: i64 },
    #[error("no closed form is implemented for {0}")]
    NoClosedForm(&'static str),
    #[error("no generating function is implemented for {0}")]
    NoSeries(&'static str),
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
    #[error("value {value} is not divisible by {divisor}")]
    NonIntegral { value: BigInt, divisor: BigInt },
}

/// Integer polynomial; `coeffs[k]` is the coefficient of `x^k`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::new(vec![c.into()])
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    /// `c x^k`
    pub fn monomial(c: impl Into<BigInt>, k: usize) -> Self {
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = c.into();
        Self::new(v)
    }

    /// `x + 1`, i.e. `q`.
    pub fn x_plus_1() -> Self {
        Self::from_i64(&[1, 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut v = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Self::new(v)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_i64(&self, x: i64) -> BigInt {
        self.eval(&BigInt::from(x))
    }

    /// Exact division by `x + 1`; `None` if the remainder `p(-1)` is nonzero.
    pub fn div_x_plus_1(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        // Synthetic division by the root -1, from the top coefficient down.
        let d = self.coeffs.len() - 1;
        let mut quot = vec![BigInt::zero(); d];
        let mut carry = BigInt::zero();
        for k in (0..=d).rev() {
            let v = &self.coeffs[k] + &carry;
            if k == 0 {
                return v.is_zero().then(|| Self::new(quot));
            }
            carry = -&v;
            quot[k - 1] = v;
        }
        unreachable!()
    }

    /// `p(x + c)`.
    pub fn translate(&self, c: i64) -> Self {
        let shift = Self::from_i64(&[c, 1]);
        self.coeffs.iter().rev().fold(Self::zero(), |acc, a| acc.mul(&shift).add(&Self::constant(a.clone())))
    }

    /// Re-expansion in `q = x + 1`: the coefficients of `p(q - 1)`.
    pub fn in_q(&self) -> Self {
        self.translate(-1)
    }

    /// Coefficients read the same in both directions.
    pub fn is_palindromic(&self) -> bool {
        self.coeffs.iter().eq(self.coeffs.iter().rev())
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            if k == 0 || !mag.is_one() {
                out.push_str(&mag.to_string());
            }
            out.push_str(&mono);
        }
        out
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("x"))
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({self})")
    }
}

/// `C(n, k)`, zero unless `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `C_n = C(2n, n) / (n + 1)`.
pub fn catalan(n: usize) -> BigInt {
    binomial(2 * n as i64, n as i64) / (n + 1)
}

/// `f_0 = 0, f_1 = 1, f_{n+1} = f_n + f_{n-1}`.
pub fn fibonacci(n: usize) -> BigInt {
    let (mut a, mut b) = (BigInt::zero(), BigInt::one());
    for _ in 0..n {
        let c = &a + &b;
        a = std::mem::replace(&mut b, c);
    }
    a
}

/// Stirling numbers of the second kind.
pub fn stirling2(n: usize, k: usize) -> BigInt {
    let mut row = vec![BigInt::one()];
    for m in 1..=n {
        let mut next = vec![BigInt::zero(); m + 1];
        for j in 1..=m {
            let keep = row.get(j).map_or(BigInt::zero(), |v| v * j);
            next[j] = keep + &row[j - 1];
        }
        row = next;
    }
    row.get(k).cloned().unwrap_or_default()
}

/// Associated Stirling numbers of the second kind: partitions of `[n]` into
/// `k` blocks, none of them singletons.
pub fn associated_stirling2(n: usize, k: usize) -> BigInt {
    // {{m, j}} = j {{m-1, j}} + (m-1) {{m-2, j-1}}
    let mut rows: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
    for m in 1..=n {
        let mut row = vec![BigInt::zero(); m + 1];
        for (j, slot) in row.iter_mut().enumerate().skip(1) {
            let a = rows[m - 1].get(j).map_or(BigInt::zero(), |v| v * j);
            let b = if m >= 2 { rows[m - 2].get(j - 1).map_or(BigInt::zero(), |v| v * (m - 1)) } else { BigInt::zero() };
            *slot = a + b;
        }
        rows.push(row);
    }
    rows[n].get(k).cloned().unwrap_or_default()
}

/// Narayana numbers `N(n, k)`: Dyck paths of semilength `n` with `k` peaks,
/// counted by a walk over (height, last step was up, peaks so far).
pub fn narayana(n: usize, k: usize) -> BigInt {
    if n == 0 {
        return if k == 0 { BigInt::one() } else { BigInt::zero() };
    }
    let mut state: HashMap<(usize, bool, usize), BigInt> = HashMap::new();
    state.insert((0, false, 0), BigInt::one());
    for _ in 0..2 * n {
        let mut next: HashMap<(usize, bool, usize), BigInt> = HashMap::new();
        for ((h, up, p), c) in state {
            if h < n {
                *next.entry((h + 1, true, p)).or_default() += &c;
            }
            if h > 0 {
                *next.entry((h - 1, false, p + usize::from(up))).or_default() += &c;
            }
        }
        state = next;
    }
    state.get(&(0, false, k)).cloned().unwrap_or_default()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DelannoyKind {
    /// Steps `(1,0), (1,1), (0,1)`.
    D,
    /// Adds `(0,2)`.
    Dp,
    /// Steps `(2,1), (1,2), (0,1)`.
    Dpp,
}

impl DelannoyKind {
    fn steps(self) -> &'static [(usize, usize)] {
        match self {
            DelannoyKind::D => &[(1, 0), (1, 1), (0, 1)],
            DelannoyKind::Dp => &[(1, 0), (1, 1), (0, 1), (0, 2)],
            DelannoyKind::Dpp => &[(2, 1), (1, 2), (0, 1)],
        }
    }
}

/// Number of lattice paths from the origin to `(a, b)`, by dynamic
/// programming over the last step.
pub fn delannoy(kind: DelannoyKind, a: usize, b: usize) -> BigInt {
    let mut t = vec![vec![BigInt::zero(); b + 1]; a + 1];
    t[0][0] = BigInt::one();
    for i in 0..=a {
        for j in 0..=b {
            if i == 0 && j == 0 {
                continue;
            }
            let mut s = BigInt::zero();
            for &(dx, dy) in kind.steps() {
                if i >= dx && j >= dy {
                    s += &t[i - dx][j - dy];
                }
            }
            t[i][j] = s;
        }
    }
    t[a][b].clone()
}

/// The binomial-sum form of [`delannoy`].
pub fn delannoy_closed(kind: DelannoyKind, a: usize, b: usize) -> BigInt {
    let (a, b) = (a as i64, b as i64);
    let s = a + b;
    (0..=s)
        .map(|k| match kind {
            DelannoyKind::D => binomial(s - k, k) * binomial(s - 2 * k, b - k),
            DelannoyKind::Dp => binomial(k, s - k) * binomial(k, a),
            DelannoyKind::Dpp => binomial(s - 2 * k, k) * binomial(k, a - k),
        })
        .sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Del,
    PreHe,
    PreIn,
    He,
    Inv,
    Bell,
    Cat,
    Fe,
    AltBell,
    AltCat,
    AltDel,
    AltHe,
}

impl Family {
    pub const ALL: [Family; 12] = [
        Family::Del,
        Family::PreHe,
        Family::PreIn,
        Family::He,
        Family::Inv,
        Family::Bell,
        Family::Cat,
        Family::Fe,
        Family::AltBell,
        Family::AltCat,
        Family::AltDel,
        Family::AltHe,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Del => "del",
            Family::PreHe => "pre_he",
            Family::PreIn => "pre_in",
            Family::He => "he",
            Family::Inv => "inv",
            Family::Bell => "bell",
            Family::Cat => "cat",
            Family::Fe => "fe",
            Family::AltBell => "alt_bell",
            Family::AltCat => "alt_cat",
            Family::AltDel => "alt_del",
            Family::AltHe => "alt_he",
        }
    }

    /// Smallest index at which the family is defined, if any.
    pub fn min_index(self) -> Option<i64> {
        match self {
            Family::Del | Family::PreHe | Family::PreIn | Family::He | Family::Inv => None,
            Family::Bell | Family::Cat | Family::Fe => Some(0),
            Family::AltBell | Family::AltCat | Family::AltDel => Some(1),
            Family::AltHe => Some(2),
        }
    }

    pub fn has_closed_form(self) -> bool {
        !matches!(self, Family::Bell | Family::Cat | Family::Fe | Family::AltHe)
    }
}

impl FromStr for Family {
    type Err = CountingError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL.into_iter().find(|f| f.name() == s).ok_or_else(|| CountingError::UnknownFamily(s.to_string()))
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn check_domain(family: Family, n: i64) -> Result<(), CountingError> {
    match family.min_index() {
        Some(m) if n < m => Err(CountingError::IndexOutOfDomain { family: family.name(), n }),
        _ => Ok(()),
    }
}

/// `sum_k D(n-1-k, k) x^k` for the given step set.
fn lattice_poly(kind: DelannoyKind, n: i64) -> IntPolynomial {
    if n <= 0 {
        return IntPolynomial::zero();
    }
    let m = (n - 1) as usize;
    IntPolynomial::new((0..=m).map(|k| delannoy(kind, m - k, k)).collect())
}

fn row_poly(n: usize, coeff: impl Fn(usize, usize) -> BigInt) -> IntPolynomial {
    // sum_k c(n, k) x^{n-k}
    IntPolynomial::new((0..=n).map(|e| coeff(n, n - e)).collect())
}

fn divide(family: Family, n: i64, p: &IntPolynomial) -> Result<IntPolynomial, CountingError> {
    p.div_x_plus_1().ok_or(CountingError::NonIntegralDivision { family: family.name(), n })
}

/// `(-x)^e`
fn neg_x_pow(e: usize) -> IntPolynomial {
    IntPolynomial::monomial(if e.is_multiple_of(2) { 1 } else { -1 }, e)
}

/// The polynomial of `family` at index `n`, from its defining expression.
pub fn poly(family: Family, n: i64) -> Result<IntPolynomial, CountingError> {
    check_domain(family, n)?;
    let x = IntPolynomial::monomial(1, 1);
    Ok(match family {
        Family::Del => lattice_poly(DelannoyKind::D, n),
        Family::PreHe => lattice_poly(DelannoyKind::Dp, n),
        Family::PreIn => lattice_poly(DelannoyKind::Dpp, n),
        Family::He => poly(Family::PreHe, n)?.sub(&x.pow(2).mul(&poly(Family::PreHe, n - 2)?)),
        Family::Inv => x.mul(&poly(Family::PreIn, n - 1)?.add(&poly(Family::PreIn, n - 2)?)),
        Family::Bell => row_poly(n as usize, stirling2),
        Family::Cat => row_poly(n as usize, narayana),
        Family::Fe => row_poly(n as usize, associated_stirling2),
        Family::AltBell => {
            let (bell, fe) = (poly(Family::Bell, n)?, poly(Family::Fe, n - 1)?);
            divide(family, n, &bell.sub(&fe))?.add(&fe)
        }
        Family::AltCat | Family::AltDel => {
            let base = poly(if family == Family::AltCat { Family::Cat } else { Family::Del }, n)?;
            let m = (n - 1) as usize;
            let correction = neg_x_pow(m / 2).scale(&base.eval_i64(-1));
            divide(family, n, &base.sub(&correction))?
        }
        Family::AltHe => {
            let (he, inv) = (poly(Family::He, n)?, poly(Family::Inv, n - 1)?);
            divide(family, n, &he.sub(&inv))?.add(&IntPolynomial::x_plus_1().mul(&inv))
        }
    })
}

/// The same polynomial from its binomial-sum expression.
pub fn closed_form(family: Family, n: i64) -> Result<IntPolynomial, CountingError> {
    if !family.has_closed_form() {
        return Err(CountingError::NoClosedForm(family.name()));
    }
    check_domain(family, n)?;
    let x = IntPolynomial::monomial(1, 1);
    let x1 = IntPolynomial::x_plus_1();
    let term = |c: BigInt, xe: usize, qe: usize| x.pow(xe).mul(&x1.pow(qe)).scale(&c);
    let sum = |terms: Vec<IntPolynomial>| terms.iter().fold(IntPolynomial::zero(), |a, t| a.add(t));
    // Every family below is written at index m + 1.
    let m = n - 1;
    Ok(match family {
        _ if m < 0 && !matches!(family, Family::AltBell | Family::AltCat | Family::AltDel) => IntPolynomial::zero(),
        Family::Del => sum((0..=m / 2).map(|k| term(binomial(m - k, k), k as usize, (m - 2 * k) as usize)).collect()),
        Family::PreHe => sum((0..=m / 2).map(|k| term(binomial(m - k, k), k as usize, (m - k) as usize)).collect()),
        Family::PreIn => sum((0..=m / 3).map(|k| term(binomial(m - 2 * k, k), (m - 2 * k) as usize, k as usize)).collect()),
        Family::He if m == 0 => IntPolynomial::one(),
        Family::He => sum(
            (0..=m / 2)
                .map(|k| {
                    let inner = IntPolynomial::constant(binomial(m - k, k)).add(&x.scale(&binomial(m - k - 1, k)));
                    inner.mul(&term(BigInt::one(), k as usize, (m - k - 1) as usize))
                })
                .collect(),
        ),
        Family::Inv if m == 0 => IntPolynomial::zero(),
        Family::Inv => sum(
            (0..=(m - 1) / 3)
                .map(|k| {
                    let inner =
                        IntPolynomial::constant(binomial(m - 2 * k - 2, k)).add(&x.scale(&binomial(m - 2 * k - 1, k)));
                    inner.mul(&term(BigInt::one(), (m - 2 * k - 1) as usize, k as usize))
                })
                .collect(),
        ),
        Family::AltBell => sum(
            (0..=m)
                .map(|k| {
                    let e = (usize::from(k == 0) + k as usize) - 1;
                    poly(Family::Fe, m - k).expect("fe index in range").mul(&x1.pow(e)).scale(&binomial(m, k))
                })
                .collect(),
        ),
        Family::AltCat if m == 0 => IntPolynomial::zero(),
        Family::AltCat => sum(
            (0..=(m - 1) / 2)
                .map(|k| term(catalan(k as usize) * binomial(m, 2 * k), k as usize, (m - 2 * k - 1) as usize))
                .collect(),
        ),
        Family::AltDel if m == 0 => IntPolynomial::zero(),
        Family::AltDel => {
            sum((0..=(m - 1) / 2).map(|k| term(binomial(m - k, k), k as usize, (m - 2 * k - 1) as usize)).collect())
        }
        Family::Bell | Family::Cat | Family::Fe | Family::AltHe => unreachable!(),
    })
}

/// The first `len + 1` coefficients of the ordinary generating function of
/// `family` at the integer `x`, read off its linear recurrence.
pub fn series_coeffs(family: Family, x: i64, len: usize) -> Result<Vec<BigInt>, CountingError> {
    let x: BigInt = BigInt::from(x);
    let x1: BigInt = &x + BigInt::one();
    // c_n = a c_{n-1} + b c_{n-2} + c c_{n-3}
    let (a, b, c) = match family {
        Family::Del => (x1.clone(), x.clone(), BigInt::zero()),
        Family::PreHe => (x1.clone(), &x * &x1, BigInt::zero()),
        Family::PreIn => (x.clone(), BigInt::zero(), &x * &x1),
        _ => return Err(CountingError::NoSeries(family.name())),
    };
    let mut out: Vec<BigInt> = Vec::with_capacity(len + 1);
    for n in 0..=len {
        let v = match n {
            0 => BigInt::zero(),
            1 => BigInt::one(),
            _ => {
                let get = |k: usize| if n >= k { out[n - k].clone() } else { BigInt::zero() };
                &a * get(1) + &b * get(2) + &c * get(3)
            }
        };
        out.push(v);
    }
    Ok(out)
}

/// Number of Heisenberg characters of `U_n(F_q)` of degree `q^e`, as a
/// polynomial in `x = q - 1`. The formula holds for `n >= 2`; the trivial
/// group `U_1` is not covered.
pub fn degree_count(n: i64, e: i64) -> IntPolynomial {
    let qe = n - e - 2;
    if qe < 0 || e < 0 {
        return IntPolynomial::zero();
    }
    let x = IntPolynomial::monomial(1, 1);
    let inner = x
        .pow(e as usize)
        .scale(&binomial(n - e - 1, e))
        .add(&x.pow(e as usize + 1).scale(&binomial(n - e - 2, e)));
    IntPolynomial::x_plus_1().pow(qe as usize).mul(&inner)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CInvariantMethod {
    Compositions,
    Recurrence,
}

/// `sin(k pi / 2)` for integer `k`.
fn sin_half_pi(k: usize) -> i64 {
    match k % 4 {
        1 => 1,
        3 => -1,
        _ => 0,
    }
}

/// Number of C-invariant Heisenberg characters of `U_{n+1}(F_q)`.
pub fn c_invariant_heis_count(n: usize, q: u64, method: CInvariantMethod) -> BigInt {
    let x: BigInt = BigInt::from(q) - 1;
    match method {
        CInvariantMethod::Compositions => {
            // Sum over compositions of the product of part weights, grouped by
            // the last part.
            let weight = |c: usize| -> BigInt {
                let s = sin_half_pi(c);
                let mut w = num_traits::pow(x.clone(), c - 1);
                if s != 0 {
                    w -= num_traits::pow(x.clone(), (c - 1) / 2) * s;
                }
                w
            };
            let mut a = vec![BigInt::one()];
            for m in 1..=n {
                a.push((1..=m).map(|c| weight(c) * &a[m - c]).sum());
            }
            a[n].clone()
        }
        CInvariantMethod::Recurrence => {
            let mut a = vec![BigInt::zero(), BigInt::zero(), x.clone(), &x * (&x + 1)];
            for m in 4..=n {
                let v = &x * &a[m - 1] + &x * (&x + 1) * &a[m - 3];
                a.push(v);
            }
            a[n].clone()
        }
    }
}

/// `((q-1)^{2d} - (-1)^d (q-1)^d) / q`, checked to be integral.
pub fn tech_lem_count(d: u32, q: u64) -> Result<BigInt, CountingError> {
    let x: BigInt = BigInt::from(q) - 1;
    let sign = if d.is_multiple_of(2) { BigInt::one() } else { -BigInt::one() };
    let num = num_traits::pow(x.clone(), 2 * d as usize) - sign * num_traits::pow(x, d as usize);
    let q = BigInt::from(q);
    if !(&num % &q).is_zero() {
        return Err(CountingError::NonIntegral { value: num, divisor: q });
    }
    Ok(num / q)
}

/// Memoized polynomials of one family.
#[derive(Debug, Clone)]
pub struct SequenceTable {
    family: Family,
    memo: HashMap<i64, IntPolynomial>,
}

impl SequenceTable {
    pub fn new(family: Family) -> Self {
        SequenceTable { family, memo: HashMap::new() }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn poly(&mut self, n: i64) -> Result<&IntPolynomial, CountingError> {
        if !self.memo.contains_key(&n) {
            let p = poly(self.family, n)?;
            self.memo.insert(n, p);
        }
        Ok(&self.memo[&n])
    }

    pub fn value(&mut self, n: i64, x: i64) -> Result<BigInt, CountingError> {
        Ok(self.poly(n)?.eval_i64(x))
    }

    /// Values at `x` for `n` in `range`.
    pub fn values(&mut self, range: std::ops::RangeInclusive<i64>, x: i64) -> Result<Vec<BigInt>, CountingError> {
        range.map(|n| self.value(n, x)).collect()
    }
}
