//! `unitri`: counting, enumeration, bijections and brute-force verification
//! for Heisenberg characters and supercharacters of unitriangular groups.

mod family;
mod output;
mod sequences;
mod verify;

use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};
use thiserror::Error;

use unitri_core::bijections::{functional_to_path, path_to_functional, pell_path_to_partition, BijectionError};
use unitri_core::combinat::{
    enumerate_partitions, enumerate_paths, parse_partition, CombinatError, LabeledLatticePath, PartitionFilter,
    PathFamily,
};
use unitri_core::counting::{poly, CountingError};
use unitri_core::gf::Field;
use unitri_core::linalg::{Functional, LinalgError};
use unitri_core::oracle::OracleError;

use family::{oracle_value, parse_family, poly_value, Model};
use output::{big, csv_table, json_lines, Format};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Combinat(#[from] CombinatError),
    #[error(transparent)]
    Counting(#[from] CountingError),
    #[error(transparent)]
    Bijection(#[from] BijectionError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("i/o: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Oracle(OracleError::SpaceTooLarge { .. }) | CliError::Combinat(CombinatError::TooLarge { .. }) => 3,
            CliError::Io(_) => 1,
            _ => 2,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "unitri", version, about = "Heisenberg characters and supercharacters of U_n(F_q)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Via {
    /// Evaluate the counting polynomial.
    Poly,
    /// Enumerate the path or partition model.
    Enumerate,
    /// Brute-force group computation.
    Oracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Direction {
    PathToFunctional,
    FunctionalToPath,
    PathToPartition,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate a counting family at x = q - 1.
    Count {
        /// Counting family (del, pre_he, pre_in, he|heis, inv, bell, cat, fe, alt_bell, alt_cat, alt_del, alt_he).
        #[arg(long, required_unless_present = "stdin")]
        family: Option<String>,
        /// Indices, e.g. `3,5-7`.
        #[arg(long, value_parser = parse_ints, allow_hyphen_values = true, required_unless_present = "stdin")]
        n: Option<IntList>,
        /// Field sizes.
        #[arg(long, value_parser = parse_ints, allow_hyphen_values = true, conflicts_with = "x")]
        q: Option<IntList>,
        /// Values of x directly (polynomial evaluation only).
        #[arg(long, value_parser = parse_ints, allow_hyphen_values = true)]
        x: Option<IntList>,
        #[arg(long, value_enum, default_value_t = Via::Poly)]
        via: Via,
        /// Count the items of an `enumerate` listing read from standard input.
        #[arg(long)]
        stdin: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Coefficients of a counting polynomial.
    Poly {
        #[arg(long)]
        family: String,
        #[arg(long, value_parser = parse_ints, allow_hyphen_values = true)]
        n: IntList,
        /// Re-expand in q instead of x = q - 1.
        #[arg(long)]
        in_q: bool,
        #[command(flatten)]
        common: Common,
    },
    /// List labeled paths or set partitions.
    Enumerate {
        /// Counting family whose model to list.
        #[arg(long, conflicts_with_all = ["paths", "partitions"])]
        family: Option<String>,
        /// Path family (pell, heis, heis_tilde, inv, inv_tilde).
        #[arg(long, conflicts_with = "partitions")]
        paths: Option<String>,
        /// Partition filter (all, noncrossing, feasible, heis_support).
        #[arg(long)]
        partitions: Option<String>,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u32,
        /// Stop after this many items.
        #[arg(long)]
        limit: Option<usize>,
        /// Allow sizes beyond the enumeration limits.
        #[arg(long)]
        force: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Apply one of the bijections.
    Map {
        #[arg(long, value_enum)]
        direction: Direction,
        /// Needed for path inputs.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        q: Option<u32>,
        /// A path such as `R N(1) UU(1,2)`, or a functional as `n q c_1 c_2 ...`.
        input: String,
        #[command(flatten)]
        common: Common,
    },
    /// Check a theorem against enumerations and the oracle.
    Verify {
        /// One of bell-thm, heis-thm, del-thm, deg-cor, fe-thm, c-irr-thm, c-heis-thm, tech-lem1, alt-thm.
        theorem: String,
        #[arg(long, value_parser = parse_ints, allow_hyphen_values = true)]
        n: IntList,
        #[arg(long, value_parser = parse_ints, allow_hyphen_values = true)]
        q: IntList,
        #[command(flatten)]
        common: Common,
    },
    /// Print the named integer sequences.
    Sequences {
        /// Number of terms per sequence.
        #[arg(long, default_value_t = 10)]
        terms: usize,
        #[command(flatten)]
        common: Common,
    },
}

/// Parsed `--n`/`--q`/`--x` list. An alias keeps clap from treating it as a repeated flag.
type IntList = Vec<i64>;

/// Inclusive comma/dash lists: `2,3`, `1-4`, `-1,0-2`.
fn parse_ints(s: &str) -> Result<Vec<i64>, String> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let split = part.char_indices().skip(1).find(|&(_, c)| c == '-').map(|(i, _)| i);
        match split {
            Some(i) => {
                let (a, b) = (&part[..i], &part[i + 1..]);
                let a: i64 = a.parse().map_err(|_| format!("bad range start {a:?}"))?;
                let b: i64 = b.parse().map_err(|_| format!("bad range end {b:?}"))?;
                if a > b {
                    return Err(format!("empty range {part:?}"));
                }
                out.extend(a..=b);
            }
            None => out.push(part.parse().map_err(|_| format!("bad integer {part:?}"))?),
        }
    }
    if out.is_empty() {
        return Err("empty list".into());
    }
    Ok(out)
}

fn field(q: i64) -> Result<Field, CliError> {
    let q = u32::try_from(q).map_err(|_| CliError::Usage(format!("q = {q} is not a field size")))?;
    Field::new(q).map_err(|e| CliError::Usage(e.to_string()))
}

fn emit(common: &Common, text: String) -> Result<(), CliError> {
    match &common.output {
        Some(path) => std::fs::write(path, text)?,
        None => io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

/// Items of an `enumerate` listing in any of the three formats.
fn listing_items(input: &str) -> Result<Vec<String>, CliError> {
    let trimmed = input.trim_start();
    if trimmed.starts_with('{') {
        let mut items = Vec::new();
        for line in trimmed.lines().filter(|l| !l.trim().is_empty()) {
            let v: Value = serde_json::from_str(line).map_err(|e| CliError::Usage(format!("bad JSON listing: {e}")))?;
            let arr = v["items"].as_array().ok_or_else(|| CliError::Usage("JSON listing without items".into()))?;
            items.extend(arr.iter().map(|s| s.as_str().unwrap_or_default().to_string()));
        }
        Ok(items)
    } else if trimmed.starts_with("index,item") {
        let mut r = csv::Reader::from_reader(trimmed.as_bytes());
        r.records()
            .map(|rec| {
                let rec = rec.map_err(|e| CliError::Usage(format!("bad CSV listing: {e}")))?;
                Ok(rec.get(1).unwrap_or_default().to_string())
            })
            .collect()
    } else {
        Ok(trimmed.lines().filter(|l| !l.trim().is_empty()).map(str::to_string).collect())
    }
}

fn run_count(
    family: Option<String>,
    ns: Option<Vec<i64>>,
    qs: Option<Vec<i64>>,
    xs: Option<Vec<i64>>,
    via: Via,
    stdin: bool,
    common: &Common,
) -> Result<(), CliError> {
    if stdin {
        let mut buf = String::new();
        io::stdin().read_to_string(&mut buf)?;
        let count = listing_items(&buf)?.len();
        let text = match common.format {
            Format::Text => format!("{count}\n"),
            Format::Json => json_lines(&[json!({ "value": count })]),
            Format::Csv => csv_table(&["value"], &[vec![count.to_string()]]),
        };
        return emit(common, text);
    }
    let family = parse_family(family.as_deref().unwrap_or_default())?;
    let ns = ns.unwrap_or_default();
    let (key, points): (&str, Vec<i64>) = match (qs, xs) {
        (Some(q), None) => ("q", q),
        (None, Some(x)) if via == Via::Poly => ("x", x),
        (None, Some(_)) => return Err(CliError::Usage("--x only works with --via poly".into())),
        _ => return Err(CliError::Usage("give --q or --x".into())),
    };
    let mut rows: Vec<(i64, i64, BigInt)> = Vec::new();
    for &n in &ns {
        for &p in &points {
            let x = if key == "q" {
                field(p)?;
                p - 1
            } else {
                p
            };
            let v = match via {
                Via::Poly => poly_value(family, n, &BigInt::from(x))?,
                Via::Enumerate => {
                    let model = Model::of(family)
                        .ok_or_else(|| CliError::Usage(format!("{family} has no enumerable model")))?;
                    let m = usize::try_from(n).map_err(|_| CliError::Usage(format!("n = {n} is negative")))?;
                    let f = field(p)?;
                    BigInt::from(match model {
                        Model::Paths(pf) => enumerate_paths(&f, pf, m, false)?.count(),
                        Model::Partitions(filter) => enumerate_partitions(&f, m, filter, false)?.count(),
                    })
                }
                Via::Oracle => oracle_value(family, n, &field(p)?)?,
            };
            rows.push((n, p, v));
        }
    }
    let text = match common.format {
        Format::Text if rows.len() == 1 => format!("{}\n", rows[0].2),
        Format::Text => rows.iter().map(|(n, p, v)| format!("n={n} {key}={p} {v}\n")).collect(),
        Format::Json => json_lines(
            &rows
                .iter()
                .map(|(n, p, v)| json!({ "family": family.name(), "n": n, key: p, "value": big(v) }))
                .collect::<Vec<_>>(),
        ),
        Format::Csv => csv_table(
            &["family", "n", key, "value"],
            &rows
                .iter()
                .map(|(n, p, v)| vec![family.name().to_string(), n.to_string(), p.to_string(), v.to_string()])
                .collect::<Vec<_>>(),
        ),
    };
    emit(common, text)
}

fn run_poly(family: String, ns: Vec<i64>, in_q: bool, common: &Common) -> Result<(), CliError> {
    let family = parse_family(&family)?;
    let var = if in_q { "q" } else { "x" };
    let mut polys = Vec::new();
    for &n in &ns {
        let p = poly(family, n)?;
        polys.push((n, if in_q { p.in_q() } else { p }));
    }
    let coeff_list = |p: &unitri_core::counting::IntPolynomial| {
        let c: Vec<String> = if p.coeffs().is_empty() {
            vec!["0".into()]
        } else {
            p.coeffs().iter().map(|c| c.to_string()).collect()
        };
        c
    };
    let text = match common.format {
        Format::Text => polys
            .iter()
            .map(|(n, p)| {
                let list = format!("[{}]", coeff_list(p).join(","));
                if ns.len() == 1 { format!("{list}\n") } else { format!("n={n} {list}\n") }
            })
            .collect(),
        Format::Json => json_lines(
            &polys
                .iter()
                .map(|(n, p)| {
                    let coeffs: Vec<Value> = coeff_list(p).iter().map(|c| big(&c.parse().expect("integer"))).collect();
                    json!({
                        "family": family.name(),
                        "n": n,
                        "variable": var,
                        "coefficients": coeffs,
                        "polynomial": p.display_in(var),
                    })
                })
                .collect::<Vec<_>>(),
        ),
        Format::Csv => csv_table(
            &["family", "n", "variable", "coefficients"],
            &polys
                .iter()
                .map(|(n, p)| vec![family.name().into(), n.to_string(), var.into(), coeff_list(p).join(" ")])
                .collect::<Vec<_>>(),
        ),
    };
    emit(common, text)
}

#[allow(clippy::too_many_arguments)]
fn run_enumerate(
    family: Option<String>,
    paths: Option<String>,
    partitions: Option<String>,
    n: usize,
    q: u32,
    limit: Option<usize>,
    force: bool,
    common: &Common,
) -> Result<(), CliError> {
    let model = match (family, paths, partitions) {
        (Some(f), None, None) => {
            let fam = parse_family(&f)?;
            Model::of(fam).ok_or_else(|| CliError::Usage(format!("{fam} has no enumerable model")))?
        }
        (None, Some(p), None) => Model::Paths(p.parse::<PathFamily>()?),
        (None, None, Some(p)) => Model::Partitions(p.parse::<PartitionFilter>()?),
        _ => return Err(CliError::Usage("give exactly one of --family, --paths, --partitions".into())),
    };
    let f = field(q as i64)?;
    let take = limit.unwrap_or(usize::MAX);
    let items: Vec<String> = match model {
        Model::Paths(pf) => enumerate_paths(&f, pf, n, force)?.take(take).map(|p| p.to_string()).collect(),
        Model::Partitions(filter) => {
            enumerate_partitions(&f, n, filter, force)?.take(take).map(|p| p.to_string()).collect()
        }
    };
    let text = match common.format {
        Format::Text => items.iter().map(|s| format!("{s}\n")).collect(),
        Format::Json => json_lines(&[json!({
            "family": model.name(),
            "n": n,
            "q": q,
            "count": items.len(),
            "items": items,
        })]),
        Format::Csv => csv_table(
            &["index", "item"],
            &items.iter().enumerate().map(|(i, s)| vec![i.to_string(), s.clone()]).collect::<Vec<_>>(),
        ),
    };
    emit(common, text)
}

fn run_map(direction: Direction, n: Option<usize>, q: Option<u32>, input: String, common: &Common) -> Result<(), CliError> {
    fn need<T>(what: &str, v: Option<T>) -> Result<T, CliError> {
        v.ok_or_else(|| CliError::Usage(format!("--{what} is required for path input")))
    }
    let (name, out) = match direction {
        Direction::PathToFunctional => {
            let (n, f) = (need("n", n)?, field(need("q", q)? as i64)?);
            let path: LabeledLatticePath = input.parse()?;
            ("path-to-functional", path_to_functional(&path, n, &f)?.to_canonical_string())
        }
        Direction::FunctionalToPath => {
            let lambda = Functional::parse_canonical(&input)?;
            ("functional-to-path", functional_to_path(&lambda)?.to_string())
        }
        Direction::PathToPartition => {
            let (n, f) = (need("n", n)?, field(need("q", q)? as i64)?);
            let path: LabeledLatticePath = input.parse()?;
            let p = pell_path_to_partition(&path, n, &f)?;
            // Re-parse as a sanity check on the printed form.
            debug_assert_eq!(parse_partition(n, &p.to_string()).ok(), Some(p.clone()));
            ("path-to-partition", p.to_string())
        }
    };
    let text = match common.format {
        Format::Text => format!("{out}\n"),
        Format::Json => json_lines(&[json!({ "direction": name, "input": input.trim(), "output": out })]),
        Format::Csv => csv_table(&["direction", "input", "output"], &[vec![name.into(), input.trim().into(), out]]),
    };
    emit(common, text)
}

fn run_verify(theorem: String, ns: Vec<i64>, qs: Vec<i64>, common: &Common) -> Result<bool, CliError> {
    let qs: Vec<u32> = qs
        .iter()
        .map(|&q| u32::try_from(q).map_err(|_| CliError::Usage(format!("q = {q} is not a field size"))))
        .collect::<Result<_, _>>()?;
    let checks = verify::run(&theorem, &ns, &qs)?;
    let pass = checks.iter().all(|c| c.pass);
    let text = match common.format {
        Format::Text => {
            let mut s: String = checks
                .iter()
                .map(|c| {
                    let tag = if c.pass { "PASS" } else { "FAIL" };
                    format!("{tag} {theorem} n={} q={} {}: expected {}, computed {}\n", c.n, c.q, c.check, c.expected, c.computed)
                })
                .collect();
            s.push_str(&format!("{theorem}: {}\n", if pass { "pass" } else { "fail" }));
            s
        }
        Format::Json => {
            let report: Vec<Value> = checks
                .iter()
                .map(|c| {
                    json!({
                        "n": c.n,
                        "q": c.q,
                        "check": c.check,
                        "expected": big(&c.expected.parse().expect("integer")),
                        "computed": big(&c.computed.parse().expect("integer")),
                        "pass": c.pass,
                    })
                })
                .collect();
            json_lines(&[json!({ "theorem": theorem, "n": ns, "q": qs, "pass": pass, "report": report })])
        }
        Format::Csv => csv_table(
            &["theorem", "n", "q", "check", "expected", "computed", "pass"],
            &checks
                .iter()
                .map(|c| {
                    vec![
                        theorem.clone(),
                        c.n.to_string(),
                        c.q.to_string(),
                        c.check.clone(),
                        c.expected.clone(),
                        c.computed.clone(),
                        c.pass.to_string(),
                    ]
                })
                .collect::<Vec<_>>(),
        ),
    };
    emit(common, text)?;
    Ok(pass)
}

fn run_sequences(terms: usize, common: &Common) -> Result<(), CliError> {
    let seqs = sequences::named_sequences(terms);
    let text = match common.format {
        Format::Text => seqs
            .iter()
            .map(|s| {
                let vals: Vec<String> = s.values.iter().map(|v| v.to_string()).collect();
                format!("{} ({}) from n={}: {}\n", s.name, s.oeis, s.start, vals.join(", "))
            })
            .collect(),
        Format::Json => json_lines(
            &seqs
                .iter()
                .map(|s| {
                    json!({
                        "name": s.name,
                        "oeis": s.oeis,
                        "description": s.description,
                        "start": s.start,
                        "values": s.values.iter().map(big).collect::<Vec<_>>(),
                    })
                })
                .collect::<Vec<_>>(),
        ),
        Format::Csv => csv_table(
            &["name", "oeis", "start", "values"],
            &seqs
                .iter()
                .map(|s| {
                    let vals: Vec<String> = s.values.iter().map(|v| v.to_string()).collect();
                    vec![s.name.into(), s.oeis.into(), s.start.to_string(), vals.join(" ")]
                })
                .collect::<Vec<_>>(),
        ),
    };
    emit(common, text)
}

fn run(cli: Cli) -> Result<bool, CliError> {
    match cli.command {
        Command::Count { family, n, q, x, via, stdin, common } => run_count(family, n, q, x, via, stdin, &common)?,
        Command::Poly { family, n, in_q, common } => run_poly(family, n, in_q, &common)?,
        Command::Enumerate { family, paths, partitions, n, q, limit, force, common } => {
            run_enumerate(family, paths, partitions, n, q, limit, force, &common)?
        }
        Command::Map { direction, n, q, input, common } => run_map(direction, n, q, input, &common)?,
        Command::Verify { theorem, n, q, common } => return run_verify(theorem, n, q, &common),
        Command::Sequences { terms, common } => run_sequences(terms, &common)?,
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("unitri: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
