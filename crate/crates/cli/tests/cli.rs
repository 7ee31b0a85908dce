use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;
use unitri_core::combinat::{parse_partition, LabeledLatticePath, PathFamily};
use unitri_core::gf::Field;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_unitri"));
    c.env_remove("UNITRI_SIZE_GUARD");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).expect("utf-8")
}

fn run_stdin(args: &[&str], input: &str) -> String {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    String::from_utf8(out.stdout).unwrap()
}

const MODELED: [&str; 8] = ["del", "pre_he", "he", "pre_in", "inv", "bell", "cat", "fe"];

#[test]
fn count_heisenberg_characters_u5_f2() {
    assert_eq!(stdout(&["count", "--family", "heis", "--n", "5", "--q", "2"]), "38\n");
    assert_eq!(stdout(&["count", "--family", "he", "--n", "4", "--q", "3"]), "51\n");
}

#[test]
fn count_grid_in_every_format() {
    let text = stdout(&["count", "--family", "del", "--n", "1-3", "--q", "2,3"]);
    assert_eq!(text, "n=1 q=2 1\nn=1 q=3 1\nn=2 q=2 2\nn=2 q=3 3\nn=3 q=2 5\nn=3 q=3 11\n");
    let json = stdout(&["count", "--family", "del", "--n", "3", "--q", "3", "--format", "json"]);
    let v: Value = serde_json::from_str(json.trim()).unwrap();
    assert_eq!(v["value"], 11);
    assert_eq!(v["family"], "del");
    let csv = stdout(&["count", "--family", "del", "--n", "3", "--q", "3", "--format", "csv"]);
    assert_eq!(csv, "family,n,q,value\ndel,3,3,11\n");
}

#[test]
fn count_at_negative_x() {
    assert_eq!(stdout(&["count", "--family", "he", "--n", "1-4", "--x", "-1"]), "n=1 x=-1 1\nn=2 x=-1 0\nn=3 x=-1 -1\nn=4 x=-1 0\n");
}

#[test]
fn large_values_are_exact_json_integers() {
    let json = stdout(&["count", "--family", "bell", "--n", "40", "--q", "5", "--format", "json"]);
    let want = stdout(&["count", "--family", "bell", "--n", "40", "--q", "5"]);
    assert!(json.contains(&format!("\"value\":{}", want.trim())), "{json}");
    assert!(want.trim().len() > 20);
}

#[test]
fn poly_text_and_json() {
    assert_eq!(stdout(&["poly", "--family", "inv", "--n", "3"]), "[0,1,1]\n");
    assert_eq!(stdout(&["poly", "--family", "he", "--n", "3"]), "[1,3,1]\n");
    assert_eq!(stdout(&["poly", "--family", "he", "--n", "3", "--in-q"]), "[-1,1,1]\n");
    let v: Value = serde_json::from_str(stdout(&["poly", "--family", "he", "--n", "3", "--format", "json"]).trim()).unwrap();
    assert_eq!(v["coefficients"], serde_json::json!([1, 3, 1]));
    assert_eq!(v["polynomial"], "x^2 + 3x + 1");
}

#[test]
fn count_via_every_method_agrees() {
    for (fam, n, q) in [("he", 4, 2), ("del", 4, 3), ("bell", 3, 3), ("cat", 4, 2), ("fe", 3, 2), ("inv", 3, 3)] {
        let (n, q) = (n.to_string(), q.to_string());
        let base = ["count", "--family", fam, "--n", &n, "--q", &q];
        let p = stdout(&[&base[..], &["--via", "poly"]].concat());
        let e = stdout(&[&base[..], &["--via", "enumerate"]].concat());
        let o = stdout(&[&base[..], &["--via", "oracle"]].concat());
        assert_eq!(p, e, "{fam} {n} {q}");
        assert_eq!(p, o, "{fam} {n} {q}");
    }
    let p = stdout(&["count", "--family", "alt_cat", "--n", "4", "--q", "2"]);
    let o = stdout(&["count", "--family", "alt_cat", "--n", "4", "--q", "2", "--via", "oracle"]);
    assert_eq!(p, o);
}

#[test]
fn enumerate_piped_into_count_matches_count() {
    for fam in MODELED {
        for q in 2..=3 {
            for n in 0..=6 {
                if fam == "inv" && n == 0 || fam.starts_with("pre") && n == 0 {
                    continue;
                }
                let (ns, qs) = (n.to_string(), q.to_string());
                let want = stdout(&["count", "--family", fam, "--n", &ns, "--q", &qs]);
                for format in ["text", "json", "csv"] {
                    let listing = stdout(&["enumerate", "--family", fam, "--n", &ns, "--q", &qs, "--format", format]);
                    let got = run_stdin(&["count", "--stdin"], &listing);
                    assert_eq!(got, want, "{fam} n={n} q={q} {format}");
                }
            }
        }
    }
}

#[test]
fn enumerated_items_parse_back() {
    let f = Field::new(3).unwrap();
    let text = stdout(&["enumerate", "--paths", "heis_tilde", "--n", "5", "--q", "3"]);
    for line in text.lines() {
        let p: LabeledLatticePath = line.parse().unwrap();
        assert!(PathFamily::HeisTilde.contains(&p, 5, &f), "{line}");
        assert_eq!(p.to_string(), line);
    }
    let json = stdout(&["enumerate", "--partitions", "noncrossing", "--n", "4", "--q", "3", "--format", "json"]);
    let v: Value = serde_json::from_str(json.trim()).unwrap();
    let items = v["items"].as_array().unwrap();
    assert_eq!(v["count"].as_u64().unwrap() as usize, items.len());
    for s in items {
        let p = parse_partition(4, s.as_str().unwrap()).unwrap();
        assert!(p.is_noncrossing());
    }
    let csv = stdout(&["enumerate", "--partitions", "feasible", "--n", "4", "--q", "2", "--format", "csv"]);
    let mut r = csv::Reader::from_reader(csv.as_bytes());
    let mut seen = 0;
    for rec in r.records() {
        let rec = rec.unwrap();
        assert_eq!(rec[0].parse::<usize>().unwrap(), seen);
        assert!(parse_partition(4, &rec[1]).unwrap().is_feasible());
        seen += 1;
    }
    assert_eq!(seen, 4);
}

#[test]
fn enumerate_limit_and_guard() {
    assert_eq!(stdout(&["enumerate", "--family", "bell", "--n", "5", "--q", "3", "--limit", "7"]).lines().count(), 7);
    assert_eq!(run(&["enumerate", "--family", "bell", "--n", "11", "--q", "2"]).status.code(), Some(3));
}

#[test]
fn map_round_trips() {
    let lam = stdout(&["map", "--direction", "path-to-functional", "--n", "4", "--q", "3", "U(1) N(2)"]);
    assert_eq!(lam, "4 3 1 0 0 0 2 0\n");
    assert_eq!(stdout(&["map", "--direction", "functional-to-path", lam.trim()]), "U(1) N(2)\n");
    assert_eq!(stdout(&["map", "--direction", "path-to-partition", "--n", "3", "--q", "2", "U(1) U(1)"]), "1-2:1 2-3:1\n");
    assert_eq!(run(&["map", "--direction", "path-to-functional", "--n", "3", "--q", "2", "R N(1)"]).status.code(), Some(2));
}

#[test]
fn verify_passes_and_reports() {
    let out = run(&["verify", "heis-thm", "--n", "3,4", "--q", "2,3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 12);
    assert!(!text.contains("FAIL"));
    assert!(text.ends_with("heis-thm: pass\n"));
    let json = stdout(&["verify", "tech-lem1", "--n", "1,2", "--q", "3", "--format", "json"]);
    let v: Value = serde_json::from_str(json.trim()).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(v["report"].as_array().unwrap().len(), 2);
}

#[test]
fn every_theorem_verifies_on_a_small_grid() {
    let grid = [
        ("bell-thm", "1-4", "2,3"),
        ("heis-thm", "1-4", "2,3"),
        ("del-thm", "1-4", "2,3"),
        ("deg-cor", "2-5", "2,3"),
        ("fe-thm", "0-3", "2,3"),
        ("c-irr-thm", "0-3", "2,3"),
        ("c-heis-thm", "1-3", "2,3"),
        ("tech-lem1", "1,2", "2,3"),
        ("alt-thm", "2-4", "2,3"),
    ];
    for (id, n, q) in grid {
        let out = run(&["verify", id, "--n", n, "--q", q]);
        assert_eq!(out.status.code(), Some(0), "{id}: {}", String::from_utf8_lossy(&out.stdout));
    }
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["count", "--family", "nope", "--n", "3", "--q", "2"]).status.code(), Some(2));
    assert_eq!(run(&["count", "--family", "he", "--n", "3", "--q", "6"]).status.code(), Some(2));
    assert_eq!(run(&["count", "--family", "he", "--n", "3"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "no-such", "--n", "3", "--q", "2"]).status.code(), Some(2));
    assert_eq!(run(&["count", "--family", "pre_he", "--n", "3", "--q", "2", "--via", "oracle"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "deg-cor", "--n", "1", "--q", "2"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["count", "--family", "he", "--n", "12", "--q", "3", "--via", "oracle"]).status.code(), Some(3));
    let small = bin()
        .env("UNITRI_SIZE_GUARD", "10")
        .args(["count", "--family", "bell", "--n", "4", "--q", "2", "--via", "oracle"])
        .output()
        .unwrap();
    assert_eq!(small.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&small.stderr).contains("UNITRI_SIZE_GUARD"));
}

#[test]
fn output_is_deterministic_and_file_output_matches() {
    let args = ["enumerate", "--family", "he", "--n", "5", "--q", "3", "--format", "json"];
    let a = stdout(&args);
    assert_eq!(a, stdout(&args));
    let dir = std::env::temp_dir().join(format!("unitri-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("out.json");
    let out = run(&[&args[..], &["--output", path.to_str().unwrap()]].concat());
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), a);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn sequences_listing() {
    let text = stdout(&["sequences", "--terms", "7"]);
    let line = |name: &str| text.lines().find(|l| l.starts_with(&format!("{name} "))).unwrap().to_string();
    assert_eq!(line("heis_q2"), "heis_q2 (A052945) from n=1: 1, 2, 5, 14, 38, 104, 284");
    assert_eq!(line("del_q3"), "del_q3 (A007482) from n=0: 0, 1, 3, 11, 39, 139, 495");
    assert_eq!(line("alt_bell_minus_bell"), "alt_bell_minus_bell (A102287) from n=2: 0, 1, 3, 13, 55, 256, 1274");
    assert_eq!(line("bell_minus_alt_bell"), "bell_minus_alt_bell (A102286) from n=2: 1, 2, 7, 24, 96, 418, 1989");
    let json = stdout(&["sequences", "--terms", "3", "--format", "json"]);
    assert_eq!(json.lines().count(), 13);
    for l in json.lines() {
        let v: Value = serde_json::from_str(l).unwrap();
        assert_eq!(v["values"].as_array().unwrap().len(), 3);
    }
}
