//! The `lefschetz-lab` command line.

pub mod json;
pub mod render;

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use lefschetz_core::formulas::{self, SplitBinomParams};
use lefschetz_core::ideal::{artinian_hilbert_function, socle_profile};
use lefschetz_core::linalg::{self, DEFAULT_PERMANENT_CAP};
use lefschetz_core::region::{puncture_analysis, Tileability};
use lefschetz_core::tiling::{enumerate_tilings, signed_enumeration_with, EnumerationOptions, PermanentRoute};
use lefschetz_core::wlp::{self, ScanOptions, WlpReport};
use lefschetz_core::{build_region, parse_ideal, MonomialIdeal};

use json::{report_json, CountReport, RegionReport};
use render::{render_ascii, render_svg, PunctureStyle};

#[derive(Debug, Parser)]
#[command(name = "lefschetz-lab", version, about = "Weak Lefschetz property of Artinian monomial algebras K[x,y,z]/I")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Hilbert function and socle of R/I.
    Hilbert {
        ideal: String,
        #[arg(long)]
        json: bool,
    },
    /// The triangular region T_d(I).
    Region {
        ideal: String,
        /// Defaults to the decisive degrees.
        #[arg(long)]
        d: Option<u32>,
        #[arg(long, value_name = "PATH")]
        svg: Option<PathBuf>,
        #[arg(long)]
        ascii: bool,
        /// Draw the first tiling, when there is one.
        #[arg(long)]
        tiling: bool,
        #[arg(long, value_enum, default_value_t = PunctureStyle::Shaded)]
        style: PunctureStyle,
        #[arg(long)]
        json: bool,
    },
    /// Lozenge tilings of T_d(I), counted and signed.
    Count {
        ideal: String,
        /// Defaults to the decisive degrees.
        #[arg(long)]
        d: Option<u32>,
        #[arg(long)]
        json: bool,
    },
    /// Weak Lefschetz verdicts over Q and in the requested characteristics.
    Wlp {
        ideal: String,
        #[arg(long, value_delimiter = ',', conflicts_with = "all_primes")]
        primes: Vec<u64>,
        /// Compute the exact set of bad primes.
        #[arg(long)]
        all_primes: bool,
        /// Scan every degree even when a peak shortcut applies.
        #[arg(long)]
        full_scan: bool,
        #[arg(long)]
        json: bool,
    },
    /// Complete intersections (x^a, y^b, z^c) by the closed forms.
    Ci {
        a: u32,
        b: u32,
        c: u32,
        #[arg(long, value_delimiter = ',', default_value = "2,3,5,7,11,13")]
        primes: Vec<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Type-two normal form, characteristic-0 verdict and bound.
    Type2 {
        ideal: String,
        #[arg(long)]
        json: bool,
    },
    /// Search type-two ideals for failures above (a+b+c)/2.
    Scan {
        #[arg(long)]
        max_exponent: u32,
        #[arg(long)]
        prime_cap: u64,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate a closed-form enumeration.
    Formula {
        #[command(subcommand)]
        which: FormulaCommand,
    },
}

#[derive(Debug, Subcommand)]
enum FormulaCommand {
    /// Plane partitions in an a x b x c box.
    Mac { a: u32, b: u32, c: u32 },
    /// Hyperfactorial H(n) = 0! 1! ... (n-1)!.
    Hyper { n: u32 },
    /// Determinant of the split binomial matrix.
    Splitdet { p: u32, q: u32, r: u32, m: u32, n: u32 },
    /// Tilings of T_d(x^a, y^b, z^c, x^alpha y^beta).
    Twomahonian { a: u32, b: u32, c: u32, alpha: u32, beta: u32, d: u32 },
}

#[derive(Debug)]
enum Failure {
    /// Exit code 2.
    Usage(String),
    /// Exit code 1.
    Domain(String),
}

fn domain(e: impl std::fmt::Display) -> Failure {
    Failure::Domain(e.to_string())
}

fn parse(text: &str) -> Result<MonomialIdeal, Failure> {
    parse_ideal(text).map_err(|e| Failure::Usage(format!("cannot parse ideal {text:?}: {e}")))
}

type Out<'a> = &'a mut dyn Write;

/// Runs the command line `argv` (program name first) and returns the exit code.
pub fn run(argv: &[String], out: Out, err: Out) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(()) => 0,
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            2
        }
        Err(Failure::Domain(m)) => {
            let _ = writeln!(err, "error: {m}");
            1
        }
    }
}

fn dispatch(command: Command, out: Out) -> Result<(), Failure> {
    match command {
        Command::Hilbert { ideal, json } => hilbert(&parse(&ideal)?, json, out),
        Command::Region { ideal, d, svg, ascii, tiling, style, json } => {
            let i = parse(&ideal)?;
            let degrees = degrees_or_decisive(&i, d)?;
            if svg.is_some() && degrees.len() != 1 {
                return Err(Failure::Usage(format!("--svg needs a single degree; decisive degrees are {degrees:?}, pass --d")));
            }
            for d in degrees {
                region(&i, d, svg.as_ref(), ascii, tiling, style, json, out)?;
            }
            Ok(())
        }
        Command::Count { ideal, d, json } => {
            let i = parse(&ideal)?;
            for d in degrees_or_decisive(&i, d)? {
                count(&i, d, json, out)?;
            }
            Ok(())
        }
        Command::Wlp { ideal, primes, all_primes, full_scan, json } => {
            let i = parse(&ideal)?;
            let options = ScanOptions { primes, divisors: all_primes };
            let report = if full_scan {
                wlp::wlp_full_scan_with(&i, &options)
            } else {
                wlp::wlp_report(&i, &options)
            }
            .map_err(engine_failure)?;
            if json {
                writeln!(out, "{}", report_json(&report)).map_err(domain)
            } else {
                print_wlp(&report, &options.primes, out).map_err(domain)
            }
        }
        Command::Ci { a, b, c, primes, json } => ci(a, b, c, &primes, json, out),
        Command::Type2 { ideal, json } => type2(&parse(&ideal)?, json, out),
        Command::Scan { max_exponent, prime_cap, json } => scan(max_exponent, prime_cap, json, out),
        Command::Formula { which } => formula(which, out),
    }
}

fn engine_failure(e: wlp::EngineError) -> Failure {
    match e {
        wlp::EngineError::InvalidCharacteristic(_) => Failure::Usage(e.to_string()),
        other => domain(other),
    }
}

fn degrees_or_decisive(i: &MonomialIdeal, d: Option<u32>) -> Result<Vec<u32>, Failure> {
    if let Some(d) = d {
        return Ok(vec![d]);
    }
    match wlp::peak_shortcut(i).map_err(engine_failure)? {
        Some(s) => Ok(s.degrees),
        None => Err(Failure::Domain("no decisive degree (socle too low for a peak shortcut); pass --d".into())),
    }
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>, sep: &str) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

fn hilbert(i: &MonomialIdeal, json: bool, out: Out) -> Result<(), Failure> {
    let h = artinian_hilbert_function(i).map_err(domain)?;
    let s = socle_profile(i).map_err(domain)?;
    if json {
        #[derive(serde::Serialize)]
        struct HilbertReport<'a> {
            ideal: &'a MonomialIdeal,
            hilbert: &'a [u64],
            socle_degrees: &'a [u32],
            socle_type: usize,
            level: bool,
        }
        let r = HilbertReport { ideal: i, hilbert: &h.values, socle_degrees: &s.degrees, socle_type: s.type_(), level: s.is_level() };
        return writeln!(out, "{}", report_json(&r)).map_err(domain);
    }
    (|| -> std::io::Result<()> {
        writeln!(out, "ideal: {i}")?;
        writeln!(out, "hilbert function: {}", join(&h.values, " "))?;
        writeln!(out, "socle degrees: {}", join(&s.degrees, " "))?;
        writeln!(out, "type: {}{}", s.type_(), if s.is_level() { " (level)" } else { "" })
    })()
    .map_err(domain)
}

#[allow(clippy::too_many_arguments)]
fn region(
    i: &MonomialIdeal,
    d: u32,
    svg: Option<&PathBuf>,
    ascii: bool,
    draw_tiling: bool,
    style: PunctureStyle,
    json: bool,
    out: Out,
) -> Result<(), Failure> {
    let t = build_region(i, d);
    let tileability = t.is_tileable();
    let tiling = match (&tileability, draw_tiling) {
        (Tileability::Tileable(_), true) => enumerate_tilings(&t).next(),
        _ => None,
    };
    if let Some(path) = svg {
        std::fs::write(path, render_svg(&t, tiling.as_ref(), style))
            .map_err(|e| domain(format!("cannot write {}: {e}", path.display())))?;
    }
    let io = |e: std::io::Error| domain(e);
    if json {
        let r = RegionReport::new(i, d, t.balance(), tileability.is_tileable());
        return writeln!(out, "{}", report_json(&r)).map_err(io);
    }
    let b = t.balance();
    let kind = serde_json::to_value(b.kind).expect("enum").as_str().unwrap_or_default().replace('_', "-");
    writeln!(out, "T_{d}: {} up, {} down ({kind}), {}", b.n_up, b.n_down, if tileability.is_tileable() { "tileable" } else { "not tileable" }).map_err(io)?;
    for p in puncture_analysis(i, d).into_iter().rev() {
        let place = if p.floating { "floating" } else if p.touches_boundary { "boundary" } else { "attached" };
        writeln!(out, "  puncture {} side {} {place}", p.generator, p.side_length).map_err(io)?;
    }
    if ascii {
        write!(out, "{}", render_ascii(&t)).map_err(io)?;
    }
    Ok(())
}

fn count(i: &MonomialIdeal, d: u32, json: bool, out: Out) -> Result<(), Failure> {
    let t = build_region(i, d);
    let b = t.balance();
    if b.n_up != b.n_down {
        return Err(domain(format!("T_{d} is not balanced ({} up, {} down)", b.n_up, b.n_down)));
    }
    let z = linalg::biadjacency(&t);
    let per = linalg::permanent_capped(&z, DEFAULT_PERMANENT_CAP)
        .or_else(|_| linalg::sparse_permanent(&z))
        .map_err(domain)?;
    let options = EnumerationOptions {
        permanent: PermanentRoute::RyserThenSparse { cap: DEFAULT_PERMANENT_CAP },
        max_tilings: 1_000_000,
    };
    let report = if per <= options.max_tilings.into() {
        let s = signed_enumeration_with(&t, &options).map_err(domain)?;
        CountReport::from_enumeration(i, d, &s)
    } else {
        CountReport {
            ideal: i.clone(),
            d,
            count: None,
            per: per.to_string(),
            det_z: linalg::determinant(&z).map_err(domain)?.to_string(),
            det_n: linalg::determinant(&linalg::lattice_path_matrix(&t).0).map_err(domain)?.to_string(),
            sum_msgn: None,
            sum_lpsgn: None,
        }
    };
    let io = |e: std::io::Error| domain(e);
    if json {
        return writeln!(out, "{}", report_json(&report)).map_err(io);
    }
    match report.count {
        Some(n) => writeln!(out, "T_{d}: {n} tilings").map_err(io)?,
        None => writeln!(out, "T_{d}: {} tilings (permanent; too many to list)", report.per).map_err(io)?,
    }
    writeln!(out, "  per Z = {}, det Z = {}, det N = {}", report.per, report.det_z, report.det_n).map_err(io)
}

fn print_wlp(r: &WlpReport, primes: &[u64], out: Out) -> std::io::Result<()> {
    writeln!(out, "ideal: {}", r.ideal)?;
    let method = serde_json::to_value(r.method).expect("enum");
    writeln!(out, "method: {}", method.as_str().unwrap_or_default())?;
    let mut header = format!("{:>4} {:>9} {:>7}", "d", "required", "rank_Q");
    for p in primes {
        header += &format!(" {:>7}", format!("mod {p}"));
    }
    let divisors = r.degrees.iter().any(|x| x.leading_divisor.is_some());
    if divisors {
        header += "  divisor";
    }
    writeln!(out, "{header}")?;
    for x in &r.degrees {
        let mut line = format!("{:>4} {:>9} {:>7}", x.d, x.required_rank, x.rank_q);
        for p in primes {
            line += &format!(" {:>7}", x.rank_mod[p]);
        }
        if let Some(v) = &x.leading_divisor {
            line += &format!("  {v}");
        }
        writeln!(out, "{line}")?;
    }
    let mut verdict = if r.holds_char0 {
        "char0 holds".to_string()
    } else {
        format!("char0 fails at d = {}", join(&r.failing_degrees[&0], ", "))
    };
    let failing: Vec<u64> = primes.iter().copied().filter(|p| r.holds_in(*p) == Some(false)).collect();
    if !failing.is_empty() {
        verdict += &format!("; fails at {}", join(&failing, ", "));
    }
    let holding: Vec<u64> = primes.iter().copied().filter(|p| r.holds_in(*p) == Some(true)).collect();
    if !holding.is_empty() {
        verdict += &format!("; holds at {}", join(&holding, ", "));
    }
    writeln!(out, "verdict: {verdict}")?;
    if let Some(bad) = &r.bad_primes {
        let list = if bad.is_empty() { "none".to_string() } else { join(bad, ", ") };
        writeln!(out, "bad primes: {list}")?;
    }
    Ok(())
}

fn ci(a: u32, b: u32, c: u32, primes: &[u64], json: bool, out: Out) -> Result<(), Failure> {
    if a == 0 || b == 0 || c == 0 {
        return Err(Failure::Usage("exponents must be positive".into()));
    }
    let mut chars = vec![0];
    chars.extend_from_slice(primes);
    let mut rows = Vec::new();
    for p in &chars {
        rows.push((*p, wlp::type_one_verdict(a, b, c, *p).map_err(engine_failure)?));
    }
    let case = rows[0].1.case;
    if json {
        #[derive(serde::Serialize)]
        struct CiReport {
            a: u32,
            b: u32,
            c: u32,
            case: wlp::TypeOneCase,
            holds: std::collections::BTreeMap<u64, bool>,
        }
        let r = CiReport { a, b, c, case, holds: rows.iter().map(|(p, v)| (*p, v.holds)).collect() };
        return writeln!(out, "{}", report_json(&r)).map_err(domain);
    }
    let io = |e: std::io::Error| domain(e);
    let d = (a + b + c) / 2;
    let case_name = serde_json::to_value(case).expect("enum");
    writeln!(out, "(x^{a}, y^{b}, z^{c}): d = {d}, case {}", case_name.as_str().unwrap_or_default()).map_err(io)?;
    if case == wlp::TypeOneCase::EvenSum {
        let mac = formulas::macmahon(d - a, d - b, d - c).map_err(domain)?;
        writeln!(out, "Mac({}, {}, {}) = {mac}", d - a, d - b, d - c).map_err(io)?;
    }
    for (p, v) in rows {
        writeln!(out, "  char {p}: {}", if v.holds { "holds" } else { "fails" }).map_err(io)?;
    }
    Ok(())
}

fn type2(i: &MonomialIdeal, json: bool, out: Out) -> Result<(), Failure> {
    let v = wlp::type2_char0_verdict(i).map_err(engine_failure)?;
    let bound = wlp::type2_poschar_bound(i).map_err(engine_failure)?;
    if json {
        #[derive(serde::Serialize)]
        struct Type2Report<'a> {
            ideal: &'a MonomialIdeal,
            verdict: &'a wlp::Type2Verdict,
            bound: Option<wlp::PosCharBound>,
        }
        return writeln!(out, "{}", report_json(&Type2Report { ideal: i, verdict: &v, bound })).map_err(domain);
    }
    let f = &v.form;
    let io = |e: std::io::Error| domain(e);
    let normal = f.normal_ideal();
    let form = match f.form {
        wlp::Type2Shape::Four => "i",
        wlp::Type2Shape::Five => "ii",
    };
    writeln!(out, "form ({form}): {normal}  [variables renamed by {:?}]", f.permutation.0).map_err(io)?;
    let gamma = f.gamma.map(|g| format!(", gamma = {g}")).unwrap_or_default();
    writeln!(out, "a = {}, b = {}, c = {}, alpha = {}, beta = {}{gamma}", f.a, f.b, f.c, f.alpha, f.beta).map_err(io)?;
    writeln!(
        out,
        "socle degrees: {} {}{}",
        f.socle_degrees.0,
        f.socle_degrees.1,
        if f.is_level { " (level)" } else { "" }
    )
    .map_err(io)?;
    if v.holds {
        writeln!(out, "char0: holds").map_err(io)?;
    } else {
        writeln!(out, "char0: fails at d = {}", join(&v.failing_degrees, ", ")).map_err(io)?;
    }
    if let Some(b) = bound {
        let kind = match b.kind {
            wlp::BoundKind::CondFreeLinear => "linear".to_string(),
            wlp::BoundKind::Hadamard => format!("3^({}/2)", b.twice_e.unwrap_or_default()),
        };
        writeln!(out, "holds in every characteristic >= {} ({kind})", b.bound).map_err(io)?;
    }
    Ok(())
}

fn scan(max_exponent: u32, prime_cap: u64, json: bool, out: Out) -> Result<(), Failure> {
    if max_exponent > 8 {
        return Err(Failure::Usage("--max-exponent above 8 is beyond desk scale".into()));
    }
    let ideals = wlp::type2_ideals(max_exponent).len();
    let found = wlp::conjecture_scan(max_exponent, prime_cap).map_err(engine_failure)?;
    if json {
        #[derive(serde::Serialize)]
        struct ScanReport<'a> {
            max_exponent: u32,
            prime_cap: u64,
            ideals: usize,
            counterexamples: &'a [wlp::Counterexample],
        }
        let r = ScanReport { max_exponent, prime_cap, ideals, counterexamples: &found };
        return writeln!(out, "{}", report_json(&r)).map_err(domain);
    }
    let io = |e: std::io::Error| domain(e);
    writeln!(out, "scanned {ideals} type-two ideals, primes up to {prime_cap}").map_err(io)?;
    if found.is_empty() {
        writeln!(out, "no counterexamples").map_err(io)?;
    }
    for c in &found {
        writeln!(out, "counterexample: ({}) fails at p = {} in degrees {}", c.ideal, c.prime, join(&c.degrees, ", ")).map_err(io)?;
    }
    Ok(())
}

fn formula(which: FormulaCommand, out: Out) -> Result<(), Failure> {
    let value = match which {
        FormulaCommand::Mac { a, b, c } => formulas::macmahon(a, b, c),
        FormulaCommand::Hyper { n } => Ok(formulas::hyperfactorial(n)),
        FormulaCommand::Splitdet { p, q, r, m, n } => {
            let s = SplitBinomParams { p, q, r, m, n };
            if !s.is_well_defined() {
                return Err(domain(format!("need 1 <= m <= n and q + r <= p, got {s:?}")));
            }
            formulas::split_binom_det(&s)
        }
        FormulaCommand::Twomahonian { a, b, c, alpha, beta, d } => formulas::two_mahonian_enumeration(a, b, c, alpha, beta, d),
    }
    .map_err(domain)?;
    writeln!(out, "{value}").map_err(domain)
}
