use std::path::Path;
use std::process::{Command, Output};

use lefschetz_cli::json::{parse_report, CountReport, RegionReport};
use lefschetz_core::wlp::{wlp_report, ScanOptions, WlpReport};
use lefschetz_core::{parse_ideal, BalanceKind};

const SIX_GEN: &str = "x^7,y^7,z^6,x*y^4*z^2,x^3*y*z^2,x^4*y*z";

fn lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lefschetz-lab")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn wlp_verdict_example() {
    let o = lab(&["wlp", "x^4,y^4,z^4,x^2*z^2", "--primes", "2,3,5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verdict: char0 holds; fails at 2; holds at 3, 5"));
}

#[test]
fn count_six_generator_region() {
    let o = lab(&["count", SIX_GEN, "--d", "8"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("T_8: 13 tilings\n"));
}

#[test]
fn exit_codes() {
    assert_eq!(lab(&["wlp", "x^-1"]).status.code(), Some(2));
    assert_eq!(lab(&["wlp", "x^2,y^2"]).status.code(), Some(1));
    assert_eq!(lab(&["wlp", "x^2,y^2,z^2", "--primes", "4"]).status.code(), Some(2));
    assert_eq!(lab(&["wlp", "x^2,y^2,z^2", "--primes", "2", "--all-primes"]).status.code(), Some(2));
    assert_eq!(lab(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(lab(&["count", "x^3,y^3,z^3", "--d", "4"]).status.code(), Some(1));
    assert_eq!(lab(&["type2", "x^2,y^3,z^4"]).status.code(), Some(1));
    assert_eq!(lab(&["--help"]).status.code(), Some(0));
    let o = lab(&["wlp", "x^2,y^2"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("not Artinian"));
}

#[test]
fn svg_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.svg");
    let b = dir.path().join("b.svg");
    for path in [&a, &b] {
        let o = lab(&["region", "x^4,y^4,z^4,x^2*z^2", "--d", "5", "--svg", path.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
    }
    let text = std::fs::read_to_string(&a).unwrap();
    assert_eq!(text, std::fs::read_to_string(&b).unwrap());
    assert!(text.starts_with("<?xml"));
    assert_eq!(text.matches("class=\"removed\"").count(), 4);
}

#[test]
fn svg_tiling_rhombi() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("six.svg");
    let o = lab(&["region", SIX_GEN, "--d", "8", "--tiling", "--svg", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.matches("class=\"lozenge").count(), 25);
    assert!(text.contains("class=\"lozenge fixed\""));
}

#[test]
fn svg_needs_one_degree() {
    let o = lab(&["region", "x^4,y^4,z^4,x^2*z^2", "--svg", "/nonexistent/x.svg"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn wlp_json_round_trip() {
    let o = lab(&["wlp", "x^4,y^4,z^4,x^2*z^2", "--all-primes", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let report: WlpReport = parse_report(&text).unwrap();
    let i = parse_ideal("x^4,y^4,z^4,x^2*z^2").unwrap();
    assert_eq!(report, wlp_report(&i, &ScanOptions { primes: vec![], divisors: true }).unwrap());
    assert!(report.holds_char0);
    assert_eq!(report.bad_primes, Some(vec![2]));
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["schema"], "lefschetz-lab/1");
    assert_eq!(v["degrees"][0]["leading_divisor"], "4");
}

#[test]
fn count_json_round_trip() {
    let o = lab(&["count", SIX_GEN, "--d", "8", "--json"]);
    let r: CountReport = parse_report(&stdout(&o)).unwrap();
    assert_eq!(r.count, Some(13));
    assert_eq!(r.per, "13");
    assert_eq!(r.det_z.trim_start_matches('-'), r.det_n.trim_start_matches('-'));
    // hexagon: count = per = |det|
    let o = lab(&["count", "x^4,y^4,z^4", "--json"]);
    let r: CountReport = parse_report(&stdout(&o)).unwrap();
    assert_eq!((r.count, r.per.as_str(), r.det_z.trim_start_matches('-')), (Some(20), "20", "20"));
}

#[test]
fn empty_region_json() {
    let o = lab(&["region", "x,y,z", "--d", "3", "--json"]);
    let r: RegionReport = parse_report(&stdout(&o)).unwrap();
    assert_eq!((r.up, r.down, r.kind), (0, 0, BalanceKind::Balanced));
}

#[test]
fn closed_forms() {
    let o = lab(&["ci", "4", "4", "4"]);
    let text = stdout(&o);
    assert!(text.contains("Mac(2, 2, 2) = 20"));
    assert!(text.contains("char 2: fails") && text.contains("char 5: fails") && text.contains("char 3: holds"));
    assert_eq!(stdout(&lab(&["formula", "hyper", "4"])), "12\n");
    assert_eq!(stdout(&lab(&["formula", "mac", "2", "2", "2"])), "20\n");
    assert_eq!(lab(&["formula", "splitdet", "1", "2", "2", "1", "1"]).status.code(), Some(1));
}

/// Splits a command line on spaces, keeping double-quoted words whole.
fn split_words(line: &str) -> Vec<String> {
    let mut words = Vec::new();
    let mut cur = String::new();
    let mut quoted = false;
    for ch in line.chars() {
        match ch {
            '"' => quoted = !quoted,
            ' ' if !quoted => {
                if !cur.is_empty() {
                    words.push(std::mem::take(&mut cur));
                }
            }
            _ => cur.push(ch),
        }
    }
    if !cur.is_empty() {
        words.push(cur);
    }
    words
}

/// Every `$ lefschetz-lab ...` line in the README's console blocks, with the
/// output printed under it.
#[test]
fn readme_examples() {
    let readme = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("../../README.md")).unwrap();
    let mut examples: Vec<(String, String)> = Vec::new();
    let mut in_block = false;
    for line in readme.lines() {
        if line.starts_with("```") {
            in_block = line == "```console";
            continue;
        }
        if !in_block {
            continue;
        }
        if let Some(cmd) = line.strip_prefix("$ ") {
            examples.push((cmd.to_string(), String::new()));
        } else if let Some((_, want)) = examples.last_mut() {
            want.push_str(line);
            want.push('\n');
        }
    }
    assert!(examples.len() >= 5);
    for (cmd, want) in examples {
        let words = split_words(&cmd);
        assert_eq!(words[0], "lefschetz-lab");
        let args: Vec<&str> = words[1..].iter().map(String::as_str).collect();
        let o = lab(&args);
        assert_eq!(o.status.code(), Some(0), "{cmd}");
        assert_eq!(stdout(&o), want, "{cmd}");
    }
}
