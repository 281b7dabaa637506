//! Weak Lefschetz decisions. The linear form is always `x + y + z`, whose
//! multiplication matrix from degree `d-2` to `d-1` is `Z(T_d(I))^T`.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formulas::{self, FormulaError};
use crate::ideal::{artinian_hilbert_function, socle_profile, HilbertFunction, IdealError, Monomial, MonomialIdeal, VarPerm};
use crate::linalg::{self, biadjacency, LinalgError};
use crate::region::{build_region, Balance};

#[derive(Debug, Error)]
pub enum EngineError {
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error("{0} is neither 0 nor a prime")]
    InvalidCharacteristic(u64),
    #[error("the socle has type {0}, not 2")]
    NotType2(usize),
    #[error("no variable renaming puts the ideal in a type-two normal form")]
    Unclassified,
    #[error("weak Lefschetz fails in characteristic 0 (degrees {0:?})")]
    Char0Failure(Vec<u32>),
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Formula(#[from] FormulaError),
}

/// The map `[R/I]_{d-2} -> [R/I]_{d-1}`, i.e. `Z(T_d(I))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeReport {
    pub d: u32,
    pub required_rank: usize,
    pub rank_q: usize,
    pub rank_mod: BTreeMap<u64, usize>,
    /// Gcd of the minors of order `required_rank`; absent when not requested.
    #[serde(with = "decimal_opt")]
    pub leading_divisor: Option<BigInt>,
    pub region: Balance,
}

impl DegreeReport {
    pub fn max_rank_in(&self, p: u64) -> Option<bool> {
        if p == 0 {
            Some(self.rank_q == self.required_rank)
        } else {
            self.rank_mod.get(&p).map(|r| *r == self.required_rank)
        }
    }

    /// Surjective onto degree `d-1` in characteristic `p`.
    fn surjective_in(&self, p: u64) -> Option<bool> {
        let r = if p == 0 { Some(self.rank_q) } else { self.rank_mod.get(&p).copied() };
        r.map(|r| r == self.region.n_up)
    }

    fn injective_in(&self, p: u64) -> Option<bool> {
        let r = if p == 0 { Some(self.rank_q) } else { self.rank_mod.get(&p).copied() };
        r.map(|r| r == self.region.n_down)
    }
}

mod decimal_opt {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(n) => s.collect_str(n),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigInt>, D::Error> {
        let text: Option<String> = Option::deserialize(d)?;
        text.map(|t| t.parse().map_err(serde::de::Error::custom)).transpose()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    FullScan,
    PeakShortcut,
    TwinPeak,
    TypeOne,
    TypeTwo,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WlpReport {
    pub ideal: MonomialIdeal,
    pub degrees: Vec<DegreeReport>,
    pub holds_char0: bool,
    /// `None` when WLP fails in characteristic 0 or divisors were not computed.
    pub bad_primes: Option<Vec<u64>>,
    /// Characteristic (0 for the rationals) to the degrees without maximal rank.
    pub failing_degrees: BTreeMap<u64, Vec<u32>>,
    pub method: Method,
}

impl WlpReport {
    /// The verdict in characteristic `p`, when the report decides it.
    pub fn holds_in(&self, p: u64) -> Option<bool> {
        if let Some(f) = self.failing_degrees.get(&p) {
            return Some(f.is_empty());
        }
        match (&self.bad_primes, self.holds_char0) {
            (Some(bad), true) => Some(!bad.contains(&p)),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanOptions {
    pub primes: Vec<u64>,
    /// Compute leading determinantal divisors (and hence bad primes).
    pub divisors: bool,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions { primes: Vec::new(), divisors: true }
    }
}

fn check_primes(primes: &[u64]) -> Result<(), EngineError> {
    match primes.iter().find(|p| !linalg::is_prime(**p)) {
        Some(p) => Err(EngineError::InvalidCharacteristic(*p)),
        None => Ok(()),
    }
}

pub fn degree_report(ideal: &MonomialIdeal, d: u32, options: &ScanOptions) -> Result<DegreeReport, EngineError> {
    let t = build_region(ideal, d);
    let z = biadjacency(&t);
    let region = t.balance();
    let required_rank = region.n_up.min(region.n_down);
    let rank_q = linalg::rank_q(&z);
    let mut rank_mod = BTreeMap::new();
    for p in &options.primes {
        rank_mod.insert(*p, linalg::rank_mod_p(&z, *p)?);
    }
    let leading_divisor = if options.divisors {
        Some(linalg::determinantal_divisor(&z, required_rank)?)
    } else {
        None
    };
    Ok(DegreeReport { d, required_rank, rank_q, rank_mod, leading_divisor, region })
}

pub fn wlp_full_scan(ideal: &MonomialIdeal, primes: &[u64]) -> Result<WlpReport, EngineError> {
    wlp_full_scan_with(ideal, &ScanOptions { primes: primes.to_vec(), divisors: true })
}

/// Every degree `1..=socle_degree+2`; past that both graded pieces vanish.
pub fn wlp_full_scan_with(ideal: &MonomialIdeal, options: &ScanOptions) -> Result<WlpReport, EngineError> {
    check_primes(&options.primes)?;
    let socle = socle_profile(ideal)?;
    let top = socle.socle_degree() + 2;
    let degrees = (1..=top)
        .into_par_iter()
        .map(|d| degree_report(ideal, d, options))
        .collect::<Result<Vec<_>, _>>()?;
    check_monotone(&degrees, &options.primes, socle.min_degree())?;
    Ok(assemble(ideal, degrees, &options.primes, Method::FullScan))
}

fn assemble(ideal: &MonomialIdeal, degrees: Vec<DegreeReport>, primes: &[u64], method: Method) -> WlpReport {
    let mut failing_degrees = BTreeMap::new();
    for p in std::iter::once(0).chain(primes.iter().copied()) {
        let bad: Vec<u32> = degrees.iter().filter(|r| r.max_rank_in(p) == Some(false)).map(|r| r.d).collect();
        failing_degrees.insert(p, bad);
    }
    let holds_char0 = failing_degrees[&0].is_empty();
    let bad_primes = if holds_char0 && degrees.iter().all(|r| r.leading_divisor.is_some()) {
        let mut set = BTreeSet::new();
        for r in &degrees {
            set.extend(linalg::prime_factors(r.leading_divisor.as_ref().expect("checked")));
        }
        Some(set.into_iter().collect())
    } else {
        None
    };
    WlpReport { ideal: ideal.clone(), degrees, holds_char0, bad_primes, failing_degrees, method }
}

/// Surjectivity persists upwards; injectivity persists downwards as long as
/// the socle starts no lower than the source degree.
fn check_monotone(degrees: &[DegreeReport], primes: &[u64], socle_min: u32) -> Result<(), EngineError> {
    for p in std::iter::once(0).chain(primes.iter().copied()) {
        if let Some(first) = degrees.iter().position(|r| r.surjective_in(p) == Some(true)) {
            if let Some(r) = degrees[first..].iter().find(|r| r.surjective_in(p) == Some(false)) {
                return Err(EngineError::Inconsistent(format!(
                    "surjective at d = {} but not at d = {} (p = {p})",
                    degrees[first].d, r.d
                )));
            }
        }
        for (k, r) in degrees.iter().enumerate() {
            if r.d >= 2 && socle_min >= r.d - 2 && r.injective_in(p) == Some(true) {
                if let Some(s) = degrees[..k].iter().find(|s| s.injective_in(p) == Some(false)) {
                    return Err(EngineError::Inconsistent(format!(
                        "injective at d = {} but not at d = {} (p = {p})",
                        r.d, s.d
                    )));
                }
            }
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PeakKind {
    /// `h(d-1) = h(d)`: one square matrix decides.
    TwinPeak,
    /// `h(d-2) < h(d-1) > h(d)`: injective at `d`, surjective at `d+1`.
    StrictPeak,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeakShortcut {
    pub kind: PeakKind,
    /// Degrees `d` whose `Z(T_d(I))` decide the property.
    pub degrees: Vec<u32>,
    pub hilbert: HilbertFunction,
    pub socle_min_degree: u32,
}

/// With `d` the first degree where `h` stops increasing, the decisive
/// degrees when the socle lies high enough, otherwise `None`.
pub fn peak_shortcut(ideal: &MonomialIdeal) -> Result<Option<PeakShortcut>, EngineError> {
    let h = artinian_hilbert_function(ideal)?;
    let socle = socle_profile(ideal)?;
    let socle_min = socle.min_degree() as i64;
    let d = (1..).find(|d: &i64| h.get(d - 1) >= h.get(*d)).expect("h eventually vanishes");
    let (kind, degrees) = if h.get(d - 1) == h.get(d) {
        if socle_min < d - 1 {
            return Ok(None);
        }
        (PeakKind::TwinPeak, vec![d as u32 + 1])
    } else {
        if socle_min < d - 2 {
            return Ok(None);
        }
        (PeakKind::StrictPeak, vec![d as u32, d as u32 + 1])
    };
    Ok(Some(PeakShortcut { kind, degrees, hilbert: h, socle_min_degree: socle_min as u32 }))
}

/// Peak shortcut when it applies, full scan otherwise.
pub fn wlp_report(ideal: &MonomialIdeal, options: &ScanOptions) -> Result<WlpReport, EngineError> {
    check_primes(&options.primes)?;
    let Some(shortcut) = peak_shortcut(ideal)? else {
        return wlp_full_scan_with(ideal, options);
    };
    let degrees = shortcut
        .degrees
        .par_iter()
        .map(|d| degree_report(ideal, *d, options))
        .collect::<Result<Vec<_>, _>>()?;
    let method = match shortcut.kind {
        PeakKind::TwinPeak => Method::TwinPeak,
        PeakKind::StrictPeak => Method::PeakShortcut,
    };
    Ok(assemble(ideal, degrees, &options.primes, method))
}

/// Characteristics in which WLP fails although it holds over the rationals.
pub fn bad_primes(ideal: &MonomialIdeal) -> Result<Vec<u64>, EngineError> {
    let report = wlp_report(ideal, &ScanOptions::default())?;
    if !report.holds_char0 {
        return Err(EngineError::Char0Failure(report.failing_degrees[&0].clone()));
    }
    Ok(report.bad_primes.expect("divisors requested"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TypeOneCase {
    /// `⌊(a+b+c)/2⌋ < max{a,b,c}`.
    Unbalanced,
    EvenSum,
    OddSum,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeOneVerdict {
    pub holds: bool,
    pub case: TypeOneCase,
}

/// WLP of `R/(x^a, y^b, z^c)` in characteristic `p` from closed forms.
pub fn type_one_verdict(a: u32, b: u32, c: u32, p: u64) -> Result<TypeOneVerdict, EngineError> {
    if p != 0 && !linalg::is_prime(p) {
        return Err(EngineError::InvalidCharacteristic(p));
    }
    if a == 0 || b == 0 || c == 0 {
        return Err(FormulaError::Hypothesis("exponents must be positive".into()).into());
    }
    let d = (a + b + c) / 2;
    let divides = |n: &BigInt| p != 0 && (n % BigInt::from(p)).is_zero();
    let verdict = if d < a.max(b).max(c) {
        TypeOneVerdict { holds: true, case: TypeOneCase::Unbalanced }
    } else if (a + b + c) % 2 == 0 {
        let mac = formulas::macmahon(d - a, d - b, d - c)?;
        TypeOneVerdict { holds: !divides(&mac), case: TypeOneCase::EvenSum }
    } else {
        // fails only if p divides every minor
        let mut holds = false;
        for i in (d - b)..a {
            if !divides(&formulas::type_one_odd_minor(a, b, c, i)?) {
                holds = true;
                break;
            }
        }
        TypeOneVerdict { holds, case: TypeOneCase::OddSum }
    };
    if !verdict.holds && (p == 0 || p >= d as u64) {
        return Err(EngineError::Inconsistent(format!(
            "({a},{b},{c}) fails in characteristic {p} >= {d}"
        )));
    }
    Ok(verdict)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Type2Shape {
    /// `(x^a, y^b, z^c, x^α y^β)`.
    #[serde(rename = "i")]
    Four,
    /// `(x^a, y^b, z^c, x^α y^β, x^α z^γ)`.
    #[serde(rename = "ii")]
    Five,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Type2Form {
    pub form: Type2Shape,
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub alpha: u32,
    pub beta: u32,
    pub gamma: Option<u32>,
    /// Renaming taking the input ideal to the normal form.
    pub permutation: VarPerm,
    /// Renaming taking the normal form back to the input ideal.
    pub inverse: VarPerm,
    pub socle_degrees: (u32, u32),
    pub is_level: bool,
}

impl Type2Form {
    pub fn normal_ideal(&self) -> MonomialIdeal {
        let mut gens = vec![
            Monomial::new(self.a, 0, 0),
            Monomial::new(0, self.b, 0),
            Monomial::new(0, 0, self.c),
            Monomial::new(self.alpha, self.beta, 0),
        ];
        if let Some(g) = self.gamma {
            gens.push(Monomial::new(self.alpha, 0, g));
        }
        MonomialIdeal::new(gens)
    }
}

fn match_normal_form(j: &MonomialIdeal) -> Option<(Type2Shape, [u32; 6])> {
    let [a, b, c] = j.pure_powers().ok()?;
    let mixed: Vec<&Monomial> = j.generators().iter().filter(|m| m.pure_power_var().is_none()).collect();
    let xy = |m: &Monomial| m.z() == 0 && 0 < m.x() && m.x() < a && 0 < m.y() && m.y() < b;
    match mixed.as_slice() {
        [m] if xy(m) => Some((Type2Shape::Four, [a, b, c, m.x(), m.y(), 0])),
        [m1, m2] => {
            let (p, q) = if xy(m1) { (m1, m2) } else { (m2, m1) };
            let xz = q.y() == 0 && q.x() == p.x() && 0 < q.z() && q.z() < c;
            (xy(p) && xz).then(|| (Type2Shape::Five, [a, b, c, p.x(), p.y(), q.z()]))
        }
        _ => None,
    }
}

/// The first renaming, in lexicographic order, that normalises `I`.
pub fn classify_type2(ideal: &MonomialIdeal) -> Result<Type2Form, EngineError> {
    let socle = socle_profile(ideal)?;
    if socle.type_() != 2 {
        return Err(EngineError::NotType2(socle.type_()));
    }
    for perm in VarPerm::all() {
        let Some((form, [a, b, c, alpha, beta, gamma])) = match_normal_form(&ideal.permuted(&perm)) else {
            continue;
        };
        let (s1, s2) = match form {
            Type2Shape::Four => (a + beta + c - 3, alpha + b + c - 3),
            Type2Shape::Five => (a + beta + gamma - 3, alpha + b + c - 3),
        };
        let socle_degrees = (s1.min(s2), s1.max(s2));
        if (socle.degrees[0], socle.degrees[1]) != socle_degrees {
            return Err(EngineError::Inconsistent(format!(
                "socle degrees {:?} differ from {socle_degrees:?}",
                socle.degrees
            )));
        }
        return Ok(Type2Form {
            form,
            a,
            b,
            c,
            alpha,
            beta,
            gamma: (form == Type2Shape::Five).then_some(gamma),
            permutation: perm,
            inverse: perm.inverse(),
            socle_degrees,
            is_level: s1 == s2,
        });
    }
    Err(EngineError::Unclassified)
}

/// Integers strictly between `lo2/2` and `hi2/2`.
fn open_range_doubled(lo2: u32, hi2: u32) -> Vec<u32> {
    (lo2 / 2 + 1..).take_while(|d| 2 * d < hi2).collect()
}

/// Degrees where a five-generator type-two algebra fails in characteristic 0.
pub fn type2_condition_range(f: &Type2Form) -> Vec<u32> {
    let Some(g) = f.gamma else {
        return Vec::new();
    };
    let (a, b, c, al, be) = (f.a, f.b, f.c, f.alpha, f.beta);
    let lo2 = [2 * a, 2 * (al + be), 2 * (al + g), a + al + be + g].into_iter().max().unwrap();
    let hi2 = [2 * (a + be + g), al + b + c, 2 * (b + c), 2 * (al + c), 2 * (al + b)].into_iter().min().unwrap();
    open_range_doubled(lo2, hi2)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Type2Verdict {
    pub form: Type2Form,
    pub holds: bool,
    pub failing_degrees: Vec<u32>,
}

pub fn type2_char0_verdict(ideal: &MonomialIdeal) -> Result<Type2Verdict, EngineError> {
    let form = classify_type2(ideal)?;
    let failing_degrees = type2_condition_range(&form);
    Ok(Type2Verdict { form, holds: failing_degrees.is_empty(), failing_degrees })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundKind {
    CondFreeLinear,
    Hadamard,
}

/// WLP holds in every characteristic `p >= bound`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosCharBound {
    pub kind: BoundKind,
    pub bound: BigUint,
    /// Twice the Hadamard exponent `e`.
    pub twice_e: Option<u64>,
}

/// Degrees satisfying the auxiliary condition that blocks the linear bound.
pub fn type2_auxiliary_range(f: &Type2Form) -> Option<Vec<u32>> {
    let g = f.gamma?;
    let (a, b, c, al, be) = (f.a, f.b, f.c, f.alpha, f.beta);
    let lo2 = [2 * al, 2 * b, 2 * c, al + b + c].into_iter().max().unwrap();
    let hi2 = [2 * (a + be), 2 * (a + g), 2 * (al + be + c), a + al + be + c].into_iter().min().unwrap();
    Some(open_range_doubled(lo2, hi2))
}

/// `⌈3^e⌉` for `e = twice_e / 2`.
fn ceil_power_of_three(twice_e: u64) -> BigUint {
    let three = BigUint::from(3u32);
    if twice_e % 2 == 0 {
        three.pow((twice_e / 2) as u32)
    } else {
        // 3^(odd) is never a square
        three.pow(twice_e as u32).sqrt() + BigUint::one()
    }
}

/// `None` when WLP fails in characteristic 0.
pub fn type2_poschar_bound(ideal: &MonomialIdeal) -> Result<Option<PosCharBound>, EngineError> {
    let verdict = type2_char0_verdict(ideal)?;
    if !verdict.holds {
        return Ok(None);
    }
    let f = verdict.form;
    let bound = match type2_auxiliary_range(&f) {
        Some(r) if r.is_empty() => PosCharBound {
            kind: BoundKind::CondFreeLinear,
            bound: BigUint::from((f.alpha + f.b + f.c) / 2),
            twice_e: None,
        },
        _ => {
            let k = ((f.a + f.b + f.c) / 2) as i64;
            let twice_e = u64::try_from(linalg::binomial(k + 2, 2)).expect("small binomial");
            PosCharBound { kind: BoundKind::Hadamard, bound: ceil_power_of_three(twice_e), twice_e: Some(twice_e) }
        }
    };
    let bad = bad_primes(ideal)?;
    if let Some(p) = bad.iter().find(|p| BigUint::from(**p) >= bound.bound) {
        return Err(EngineError::Inconsistent(format!("bad prime {p} is not below {}", bound.bound)));
    }
    Ok(Some(bound))
}

/// Every type-two ideal of either shape with all exponents at most `max_exponent`,
/// under every renaming of the variables.
pub fn type2_ideals(max_exponent: u32) -> Vec<MonomialIdeal> {
    let n = max_exponent;
    let mut seen: BTreeSet<Vec<Monomial>> = BTreeSet::new();
    let mut push = |gens: &[Monomial]| {
        let base = MonomialIdeal::new(gens.iter().copied());
        for perm in VarPerm::all() {
            seen.insert(base.permuted(&perm).generators().to_vec());
        }
    };
    for a in 2..=n {
        for b in 2..=n {
            for c in 1..=n {
                for al in 1..a {
                    for be in 1..b {
                        let mut gens =
                            vec![Monomial::new(a, 0, 0), Monomial::new(0, b, 0), Monomial::new(0, 0, c), Monomial::new(al, be, 0)];
                        push(&gens);
                        for g in 1..c {
                            gens.push(Monomial::new(al, 0, g));
                            push(&gens);
                            gens.pop();
                        }
                    }
                }
            }
        }
    }
    seen.into_iter().map(MonomialIdeal::new).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub ideal: MonomialIdeal,
    pub prime: u64,
    pub degrees: Vec<u32>,
}

/// Type-two ideals with WLP in characteristic 0 that fail it in some
/// characteristic `p` with `(a+b+c)/2 < p <= prime_cap`.
pub fn conjecture_scan(max_exponent: u32, prime_cap: u64) -> Result<Vec<Counterexample>, EngineError> {
    let primes = linalg::primes_up_to(prime_cap);
    let found: Vec<Vec<Counterexample>> = type2_ideals(max_exponent)
        .par_iter()
        .map(|ideal| {
            let [a, b, c] = ideal.pure_powers()?;
            let s = (a + b + c) as u64;
            let relevant: Vec<u64> = primes.iter().copied().filter(|p| 2 * p > s).collect();
            let report = wlp_report(ideal, &ScanOptions { primes: relevant.clone(), divisors: false })?;
            if !report.holds_char0 {
                return Ok(Vec::new());
            }
            Ok(relevant
                .into_iter()
                .filter_map(|p| {
                    let degrees = report.failing_degrees[&p].clone();
                    (!degrees.is_empty()).then(|| Counterexample { ideal: ideal.clone(), prime: p, degrees })
                })
                .collect())
        })
        .collect::<Result<_, EngineError>>()?;
    Ok(found.into_iter().flatten().collect())
}
