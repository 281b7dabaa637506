//! Monomials and monomial ideals of `K[x, y, z]`.
//!
//! Everything here is exponent arithmetic: membership is generator
//! divisibility, the Hilbert function is a count of standard monomials and the
//! socle is found by scanning every standard monomial up to the regularity
//! bound.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// One of the three variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    X,
    Y,
    Z,
}

impl Var {
    pub const ALL: [Var; 3] = [Var::X, Var::Y, Var::Z];

    pub fn index(self) -> usize {
        match self {
            Var::X => 0,
            Var::Y => 1,
            Var::Z => 2,
        }
    }

    pub fn from_index(i: usize) -> Var {
        Var::ALL[i]
    }

    pub fn symbol(self) -> char {
        ['x', 'y', 'z'][self.index()]
    }
}

/// A monomial `x^a y^b z^c`.
///
/// The ordering is graded reverse-lex: higher degree is larger, and at equal
/// degree `m > m'` iff the last non-zero entry of `m - m'` is negative. So in
/// degree three `x^3 > x^2y > xy^2 > y^3 > x^2z > ... > z^3`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial([u32; 3]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0, 0, 0]);

    pub const fn new(x: u32, y: u32, z: u32) -> Self {
        Monomial([x, y, z])
    }

    pub fn pure_power(v: Var, e: u32) -> Self {
        let mut ex = [0; 3];
        ex[v.index()] = e;
        Monomial(ex)
    }

    pub fn x(&self) -> u32 {
        self.0[0]
    }

    pub fn y(&self) -> u32 {
        self.0[1]
    }

    pub fn z(&self) -> u32 {
        self.0[2]
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0[v.index()]
    }

    pub fn exponents(&self) -> [u32; 3] {
        self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial([
            self.0[0] + other.0[0],
            self.0[1] + other.0[1],
            self.0[2] + other.0[2],
        ])
    }

    /// `self / other`, if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        other.divides(self).then(|| {
            Monomial([
                self.0[0] - other.0[0],
                self.0[1] - other.0[1],
                self.0[2] - other.0[2],
            ])
        })
    }

    pub fn mul_var(&self, v: Var) -> Monomial {
        let mut ex = self.0;
        ex[v.index()] += 1;
        Monomial(ex)
    }

    pub fn div_var(&self, v: Var) -> Option<Monomial> {
        let mut ex = self.0;
        let e = &mut ex[v.index()];
        if *e == 0 {
            return None;
        }
        *e -= 1;
        Some(Monomial(ex))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial([
            self.0[0].max(other.0[0]),
            self.0[1].max(other.0[1]),
            self.0[2].max(other.0[2]),
        ])
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial([
            self.0[0].min(other.0[0]),
            self.0[1].min(other.0[1]),
            self.0[2].min(other.0[2]),
        ])
    }

    /// The variable this monomial is a positive power of, if any.
    pub fn pure_power_var(&self) -> Option<Var> {
        let nonzero: Vec<Var> = Var::ALL.into_iter().filter(|v| self.exponent(*v) > 0).collect();
        match nonzero.as_slice() {
            [v] => Some(*v),
            _ => None,
        }
    }

    pub fn permuted(&self, perm: &VarPerm) -> Monomial {
        let mut ex = [0; 3];
        for (i, e) in self.0.iter().enumerate() {
            ex[perm.0[i] as usize] = *e;
        }
        Monomial(ex)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.z().cmp(&self.z()))
            .then_with(|| other.y().cmp(&self.y()))
            .then_with(|| self.x().cmp(&other.x()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree() == 0 {
            return f.write_str("1");
        }
        let mut first = true;
        for v in Var::ALL {
            let e = self.exponent(v);
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            write!(f, "{}", v.symbol())?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// All monomials of degree `k`, ascending in reverse-lex order.
pub fn monomials_of_degree(k: u32) -> Vec<Monomial> {
    let mut out = Vec::with_capacity(((k + 1) * (k + 2) / 2) as usize);
    for z in 0..=k {
        for y in 0..=(k - z) {
            out.push(Monomial::new(k - z - y, y, z));
        }
    }
    out.reverse();
    out
}

/// A renaming of the variables: variable `i` becomes variable `self.0[i]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct VarPerm(pub [u8; 3]);

impl VarPerm {
    pub const IDENTITY: VarPerm = VarPerm([0, 1, 2]);

    /// The six permutations in lexicographic order.
    pub fn all() -> [VarPerm; 6] {
        [
            VarPerm([0, 1, 2]),
            VarPerm([0, 2, 1]),
            VarPerm([1, 0, 2]),
            VarPerm([1, 2, 0]),
            VarPerm([2, 0, 1]),
            VarPerm([2, 1, 0]),
        ]
    }

    pub fn inverse(&self) -> VarPerm {
        let mut inv = [0u8; 3];
        for (i, j) in self.0.iter().enumerate() {
            inv[*j as usize] = i as u8;
        }
        VarPerm(inv)
    }
}

impl fmt::Display for VarPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = (0..3)
            .map(|i| format!("{}->{}", Var::from_index(i).symbol(), Var::from_index(self.0[i] as usize).symbol()))
            .collect();
        f.write_str(&parts.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdealError {
    #[error("ideal is not Artinian: it lacks a pure power of {0}")]
    NotArtinian(char),
    #[error("{0} divides {1}; the monomials must be incomparable")]
    Comparable(Monomial, Monomial),
}

/// A monomial ideal, stored by its minimal generators in ascending order.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MonomialIdeal {
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    /// Builds the ideal generated by `gens`, discarding non-minimal ones.
    pub fn new(gens: impl IntoIterator<Item = Monomial>) -> Self {
        let mut all: Vec<Monomial> = gens.into_iter().collect();
        all.sort();
        all.dedup();
        let mut minimal: Vec<Monomial> = Vec::with_capacity(all.len());
        // ascending degree, so any divisor of `m` is already in `minimal`
        for m in all {
            if !minimal.iter().any(|g| g.divides(&m)) {
                minimal.push(m);
            }
        }
        MonomialIdeal { gens: minimal }
    }

    pub fn zero() -> Self {
        MonomialIdeal { gens: Vec::new() }
    }

    /// `(x^a, y^b, z^c)`.
    pub fn complete_intersection(a: u32, b: u32, c: u32) -> Self {
        Self::new([Monomial::new(a, 0, 0), Monomial::new(0, b, 0), Monomial::new(0, 0, c)])
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    pub fn is_proper(&self) -> bool {
        !self.contains(&Monomial::ONE)
    }

    /// Exponent of the pure power of `v` among the generators.
    pub fn pure_power(&self, v: Var) -> Option<u32> {
        self.gens
            .iter()
            .find(|g| g.pure_power_var() == Some(v) || (g.degree() == 0))
            .map(|g| g.exponent(v))
    }

    pub fn is_artinian(&self) -> bool {
        Var::ALL.iter().all(|v| self.pure_power(*v).is_some())
    }

    /// Pure-power exponents `(a, b, c)` of an Artinian ideal.
    pub fn pure_powers(&self) -> Result<[u32; 3], IdealError> {
        let mut out = [0; 3];
        for v in Var::ALL {
            out[v.index()] = self.pure_power(v).ok_or(IdealError::NotArtinian(v.symbol()))?;
        }
        Ok(out)
    }

    /// Largest degree of a monomial outside the ideal.
    pub fn regularity_bound(&self) -> Result<u32, IdealError> {
        let [a, b, c] = self.pure_powers()?;
        Ok((a + b + c).saturating_sub(3))
    }

    pub fn with_generator(&self, m: Monomial) -> Self {
        Self::new(self.gens.iter().copied().chain(std::iter::once(m)))
    }

    pub fn permuted(&self, perm: &VarPerm) -> Self {
        Self::new(self.gens.iter().map(|g| g.permuted(perm)))
    }

    /// Monomials of degree `k` outside the ideal, ascending.
    pub fn standard_monomials(&self, k: u32) -> Vec<Monomial> {
        monomials_of_degree(k)
            .into_iter()
            .filter(|m| !self.contains(m))
            .collect()
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gens.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.gens.iter().rev().map(|g| g.to_string()).collect();
        f.write_str(&parts.join(", "))
    }
}

impl fmt::Debug for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for MonomialIdeal {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_ideal(s)
    }
}

impl Serialize for MonomialIdeal {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for MonomialIdeal {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        if s.trim() == "0" {
            return Ok(MonomialIdeal::zero());
        }
        parse_ideal(&s).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} at byte {offset}")]
pub struct ParseError {
    pub offset: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("empty generator list")]
    Empty,
    #[error("expected a variable x, y or z")]
    ExpectedVariable,
    #[error("expected an unsigned exponent")]
    ExpectedExponent,
    #[error("exponent overflows")]
    Overflow,
    #[error("unexpected character {0:?}")]
    Unexpected(char),
}

/// Parses `mono (',' mono)*` with `mono := term ('*'? term)*` and
/// `term := ('x'|'y'|'z') ('^' uint)?`. Whitespace is ignored.
pub fn parse_ideal(text: &str) -> Result<MonomialIdeal, ParseError> {
    let mut p = Parser { src: text, pos: 0 };
    p.skip_ws();
    if p.peek().is_none() {
        return Err(p.err(ParseErrorKind::Empty));
    }
    let mut gens = vec![p.monomial()?];
    loop {
        p.skip_ws();
        match p.peek() {
            None => break,
            Some(',') => {
                p.bump();
                gens.push(p.monomial()?);
            }
            Some(c) => return Err(p.err(ParseErrorKind::Unexpected(c))),
        }
    }
    Ok(MonomialIdeal::new(gens))
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) {
        if let Some(c) = self.peek() {
            self.pos += c.len_utf8();
        }
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.bump();
        }
    }

    fn err(&self, kind: ParseErrorKind) -> ParseError {
        ParseError { offset: self.pos, kind }
    }

    fn monomial(&mut self) -> Result<Monomial, ParseError> {
        let mut m = self.term()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some('*') => {
                    self.bump();
                    m = m.mul(&self.term()?);
                }
                Some('x' | 'y' | 'z') => m = m.mul(&self.term()?),
                _ => return Ok(m),
            }
        }
    }

    fn term(&mut self) -> Result<Monomial, ParseError> {
        self.skip_ws();
        let v = match self.peek() {
            Some('x') => Var::X,
            Some('y') => Var::Y,
            Some('z') => Var::Z,
            _ => return Err(self.err(ParseErrorKind::ExpectedVariable)),
        };
        self.bump();
        self.skip_ws();
        let mut e = 1u32;
        if self.peek() == Some('^') {
            self.bump();
            self.skip_ws();
            let start = self.pos;
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.bump();
            }
            if start == self.pos {
                return Err(self.err(ParseErrorKind::ExpectedExponent));
            }
            e = self.src[start..self.pos].parse().map_err(|_| ParseError {
                offset: start,
                kind: ParseErrorKind::Overflow,
            })?;
        }
        Ok(Monomial::pure_power(v, e))
    }
}

/// Values of a Hilbert function from degree 0; zero beyond the stored length.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertFunction {
    pub values: Vec<u64>,
}

impl HilbertFunction {
    pub fn get(&self, j: i64) -> u64 {
        if j < 0 {
            return 0;
        }
        self.values.get(j as usize).copied().unwrap_or(0)
    }

    /// Drops trailing zeros.
    pub fn trimmed(&self) -> HilbertFunction {
        let mut values = self.values.clone();
        while values.last() == Some(&0) {
            values.pop();
        }
        HilbertFunction { values }
    }
}

pub fn hilbert_function(ideal: &MonomialIdeal, d_max: u32) -> HilbertFunction {
    let values = (0..=d_max)
        .map(|j| monomials_of_degree(j).iter().filter(|m| !ideal.contains(m)).count() as u64)
        .collect();
    HilbertFunction { values }
}

/// The whole Hilbert function of an Artinian quotient, trailing zeros removed.
pub fn artinian_hilbert_function(ideal: &MonomialIdeal) -> Result<HilbertFunction, IdealError> {
    Ok(hilbert_function(ideal, ideal.regularity_bound()?).trimmed())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SocleProfile {
    pub socle_monomials: Vec<Monomial>,
    /// Ascending.
    pub degrees: Vec<u32>,
}

impl SocleProfile {
    pub fn type_(&self) -> usize {
        self.socle_monomials.len()
    }

    pub fn socle_degree(&self) -> u32 {
        self.degrees.last().copied().unwrap_or(0)
    }

    pub fn min_degree(&self) -> u32 {
        self.degrees.first().copied().unwrap_or(0)
    }

    pub fn is_level(&self) -> bool {
        self.degrees.windows(2).all(|w| w[0] == w[1])
    }
}

pub fn socle_profile(ideal: &MonomialIdeal) -> Result<SocleProfile, IdealError> {
    let top = ideal.regularity_bound()?;
    let mut socle_monomials = Vec::new();
    if ideal.is_proper() {
        for k in 0..=top {
            for m in ideal.standard_monomials(k) {
                if Var::ALL.iter().all(|v| ideal.contains(&m.mul_var(*v))) {
                    socle_monomials.push(m);
                }
            }
        }
    }
    let degrees = socle_monomials.iter().map(Monomial::degree).collect();
    Ok(SocleProfile { socle_monomials, degrees })
}

impl Serialize for Monomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Monomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        if s.trim() == "1" {
            return Ok(Monomial::ONE);
        }
        let ideal = parse_ideal(&s).map_err(serde::de::Error::custom)?;
        match ideal.generators() {
            [m] => Ok(*m),
            _ => Err(serde::de::Error::custom("expected a single monomial")),
        }
    }
}

/// Annihilator of the inverse system spanned by two incomparable monomials:
/// `(x^{a1+1}, y^{b1+1}, z^{c1+1}) ∩ (x^{a2+1}, y^{b2+1}, z^{c2+1})`.
pub fn annihilator_of_two_monomials(m1: &Monomial, m2: &Monomial) -> Result<MonomialIdeal, IdealError> {
    if m1.divides(m2) {
        return Err(IdealError::Comparable(*m1, *m2));
    }
    if m2.divides(m1) {
        return Err(IdealError::Comparable(*m2, *m1));
    }
    let irreducible = |m: &Monomial| -> Vec<Monomial> {
        Var::ALL.iter().map(|v| Monomial::pure_power(*v, m.exponent(*v) + 1)).collect()
    };
    let (g1, g2) = (irreducible(m1), irreducible(m2));
    Ok(MonomialIdeal::new(
        g1.iter().flat_map(|p| g2.iter().map(move |q| p.lcm(q))),
    ))
}

/// Inclusive ranges of `j` on which the Hilbert function `h` of
/// `R/(x^a, y^b, z^c)` satisfies `h(j-2) < h(j-1)`, `=`, or `>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CiPeakProfile {
    pub increasing: Option<(u32, u32)>,
    pub flat: Option<(u32, u32)>,
    pub decreasing: Option<(u32, u32)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slope {
    Increasing,
    Flat,
    Decreasing,
}

impl CiPeakProfile {
    pub fn slope_at(&self, j: u32) -> Option<Slope> {
        let inside = |r: &Option<(u32, u32)>| r.is_some_and(|(lo, hi)| lo <= j && j <= hi);
        if inside(&self.increasing) {
            Some(Slope::Increasing)
        } else if inside(&self.flat) {
            Some(Slope::Flat)
        } else if inside(&self.decreasing) {
            Some(Slope::Decreasing)
        } else {
            None
        }
    }
}

pub fn ci_peak_profile(a: u32, b: u32, c: u32) -> CiPeakProfile {
    // doubled so that (a+b+c)/2 stays integral
    let s = a + b + c;
    let lo2 = [2 * (a + b), 2 * (a + c), 2 * (b + c), s].into_iter().min().unwrap();
    let hi2 = [2 * a, 2 * b, 2 * c, s].into_iter().max().unwrap();
    let range = |lo: u32, hi: u32| (lo <= hi).then_some((lo, hi));
    // 1 <= j < lo2/2
    let increasing = range(1, (lo2 - 1) / 2);
    // lo2/2 <= j <= hi2/2
    let flat = range(lo2.div_ceil(2), hi2 / 2);
    // hi2/2 < j <= s-1
    let decreasing = range(hi2 / 2 + 1, s - 1);
    CiPeakProfile { increasing, flat, decreasing }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(x: u32, y: u32, z: u32) -> Monomial {
        Monomial::new(x, y, z)
    }

    #[test]
    fn parse_examples() {
        let i = parse_ideal("x^4, y^4, z^4, x^2*z^2").unwrap();
        let mut want = vec![m(4, 0, 0), m(0, 4, 0), m(0, 0, 4), m(2, 0, 2)];
        want.sort();
        assert_eq!(i.generators(), want.as_slice());

        let i = parse_ideal("x^2, x^3, y, z").unwrap();
        let mut want = vec![m(2, 0, 0), m(0, 1, 0), m(0, 0, 1)];
        want.sort();
        assert_eq!(i.generators(), want.as_slice());

        let e = parse_ideal("x^-1").unwrap_err();
        assert_eq!(e.offset, 2);
        assert_eq!(e.kind, ParseErrorKind::ExpectedExponent);
    }

    #[test]
    fn parse_errors() {
        assert_eq!(parse_ideal("   ").unwrap_err().kind, ParseErrorKind::Empty);
        assert_eq!(parse_ideal("x,").unwrap_err().kind, ParseErrorKind::ExpectedVariable);
        assert_eq!(parse_ideal("x^99999999999").unwrap_err().kind, ParseErrorKind::Overflow);
        assert_eq!(parse_ideal("x w").unwrap_err(), ParseError { offset: 2, kind: ParseErrorKind::Unexpected('w') });
        // juxtaposition and whitespace
        assert_eq!(parse_ideal(" x y ^ 2 z").unwrap().generators(), &[m(1, 2, 1)]);
    }

    #[test]
    fn canonical_printing_round_trips() {
        let i = parse_ideal("z^4,x^2*z^2, y^4,x^4").unwrap();
        let s = i.to_string();
        assert_eq!(s, "x^4, y^4, x^2*z^2, z^4");
        assert_eq!(parse_ideal(&s).unwrap(), i);
        assert_eq!(Monomial::ONE.to_string(), "1");
        assert_eq!(m(1, 1, 3).to_string(), "x*y*z^3");
    }

    #[test]
    fn revlex_degree_three() {
        let mut ms = monomials_of_degree(3);
        ms.sort_by(|a, b| b.cmp(a));
        let shown: Vec<String> = ms.iter().map(|m| m.to_string()).collect();
        assert_eq!(
            shown,
            ["x^3", "x^2*y", "x*y^2", "y^3", "x^2*z", "x*y*z", "y^2*z", "x*z^2", "y*z^2", "z^3"]
        );
    }

    #[test]
    fn hilbert_examples() {
        let i = parse_ideal("x^4,y^4,z^4,x^2z^2").unwrap();
        assert_eq!(artinian_hilbert_function(&i).unwrap().values, vec![1, 3, 6, 10, 11, 9, 6, 2]);
        let i = parse_ideal("x,y,z").unwrap();
        assert_eq!(artinian_hilbert_function(&i).unwrap().values, vec![1]);
        let i = parse_ideal("x^3,y^7,z^7,xy^2,xz^2").unwrap();
        assert_eq!(
            artinian_hilbert_function(&i).unwrap().values,
            vec![1, 3, 6, 7, 6, 6, 7, 6, 5, 4, 3, 2, 1]
        );
        assert_eq!(hilbert_function(&MonomialIdeal::zero(), 3).values, vec![1, 3, 6, 10]);
    }

    #[test]
    fn socle_examples() {
        let s = socle_profile(&MonomialIdeal::complete_intersection(2, 3, 4)).unwrap();
        assert_eq!(s.socle_monomials, vec![m(1, 2, 3)]);
        assert_eq!(s.type_(), 1);

        let s = socle_profile(&parse_ideal("x^4,y^4,z^4,x^2z^2").unwrap()).unwrap();
        assert_eq!(s.type_(), 2);
        assert!(s.is_level());
        assert_eq!(s.socle_degree(), 7);
        let mut want = vec![m(1, 3, 3), m(3, 3, 1)];
        want.sort();
        assert_eq!(s.socle_monomials, want);

        let s = socle_profile(&parse_ideal("x^3,y^7,z^7,xy^2,xz^2").unwrap()).unwrap();
        assert_eq!(s.degrees, vec![4, 12]);
        assert!(!s.is_level());

        assert_eq!(
            socle_profile(&parse_ideal("x^2,y^2").unwrap()).unwrap_err(),
            IdealError::NotArtinian('z')
        );
    }

    #[test]
    fn annihilator_examples() {
        let ann = annihilator_of_two_monomials(&m(3, 1, 2), &m(1, 4, 2)).unwrap();
        assert_eq!(ann, parse_ideal("x^4, y^5, z^3, x^2y^2").unwrap());
        let ann = annihilator_of_two_monomials(&m(2, 0, 0), &m(0, 2, 0)).unwrap();
        assert_eq!(ann, parse_ideal("x^3, y^3, z, xy").unwrap());
        let ann = annihilator_of_two_monomials(&m(2, 0, 0), &m(0, 1, 1)).unwrap();
        assert_eq!(ann, parse_ideal("x^3, y^2, z^2, xy, xz").unwrap());
        assert!(annihilator_of_two_monomials(&m(1, 0, 0), &m(2, 1, 0)).is_err());
        assert!(annihilator_of_two_monomials(&m(1, 1, 0), &m(1, 1, 0)).is_err());
    }

    #[test]
    fn ci_peak_examples() {
        let p = ci_peak_profile(3, 3, 3);
        assert_eq!(p.flat, None);
        assert_eq!(p.increasing, Some((1, 4)));
        assert_eq!(p.decreasing, Some((5, 8)));
        assert_eq!(ci_peak_profile(4, 4, 4).flat, Some((6, 6)));
        let p = ci_peak_profile(1, 1, 1);
        assert_eq!(p.increasing, Some((1, 1)));
        assert_eq!(p.decreasing, Some((2, 2)));
    }

    #[test]
    fn permutation_inverse() {
        for p in VarPerm::all() {
            let mono = m(1, 2, 3);
            assert_eq!(mono.permuted(&p).permuted(&p.inverse()), mono);
        }
    }
}
