//! Closed-form enumerations of lozenge tilings: hyperfactorials, MacMahon's
//! box formula, a split binomial determinant, hexagons, nested hexagons and
//! the four-puncture region with two Mahonian factors.
//!
//! Every quotient is formed from exact products and checked for integrality.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::linalg::{binomial, IntMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("{what}: {num} is not divisible by {den}")]
    NotExact { what: &'static str, num: BigInt, den: BigInt },
    #[error("{0} exceeds the oracle size cap")]
    SizeCap(String),
}

fn hypothesis(ok: bool, msg: impl FnOnce() -> String) -> Result<(), FormulaError> {
    if ok {
        Ok(())
    } else {
        Err(FormulaError::Hypothesis(msg()))
    }
}

fn exact(what: &'static str, num: BigInt, den: BigInt) -> Result<BigInt, FormulaError> {
    let (q, r) = num.div_rem(&den);
    if r.is_zero() {
        Ok(q)
    } else {
        Err(FormulaError::NotExact { what, num, den })
    }
}

/// `H(n) = 0! 1! ... (n-1)!`.
pub fn hyperfactorial(n: u32) -> BigInt {
    let mut h = BigInt::one();
    let mut fact = BigInt::one();
    for i in 1..n {
        fact *= i;
        h *= &fact;
    }
    h
}

fn h(n: i64) -> Result<BigInt, FormulaError> {
    let n = u32::try_from(n).map_err(|_| FormulaError::Hypothesis(format!("hyperfactorial of {n}")))?;
    Ok(hyperfactorial(n))
}

fn product(args: &[i64]) -> Result<BigInt, FormulaError> {
    args.iter().try_fold(BigInt::one(), |acc, &n| Ok(acc * h(n)?))
}

/// Number of plane partitions in an `a x b x c` box.
pub fn macmahon(a: u32, b: u32, c: u32) -> Result<BigInt, FormulaError> {
    let (a, b, c) = (a as i64, b as i64, c as i64);
    exact("MacMahon quotient", product(&[a, b, c, a + b + c])?, product(&[a + b, a + c, b + c])?)
}

fn mac(a: i64, b: i64, c: i64) -> Result<BigInt, FormulaError> {
    let conv = |v: i64| u32::try_from(v).map_err(|_| FormulaError::Hypothesis(format!("Mac({a}, {b}, {c})")));
    macmahon(conv(a)?, conv(b)?, conv(c)?)
}

pub const PLANE_PARTITION_CELL_CAP: u32 = 16;

/// Counts `a x b` arrays with entries in `0..=c`, weakly decreasing along
/// rows and columns, one row at a time.
pub fn plane_partition_oracle(a: u32, b: u32, c: u32) -> Result<BigInt, FormulaError> {
    if a * b > PLANE_PARTITION_CELL_CAP {
        return Err(FormulaError::SizeCap(format!("{a}x{b} base")));
    }
    let rows = weakly_decreasing_rows(b as usize, c);
    let mut counts: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
    // a virtual row of height c sits above the first row
    counts.insert(vec![c; b as usize], BigInt::one());
    for _ in 0..a {
        let mut next = BTreeMap::new();
        for (above, n) in &counts {
            for row in rows.iter().filter(|r| r.iter().zip(above).all(|(x, y)| x <= y)) {
                *next.entry(row.clone()).or_insert_with(BigInt::zero) += n;
            }
        }
        counts = next;
    }
    Ok(counts.values().sum())
}

fn weakly_decreasing_rows(len: usize, max: u32) -> Vec<Vec<u32>> {
    fn go(len: usize, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() == len {
            out.push(prefix.clone());
            return;
        }
        let bound = prefix.last().copied().unwrap_or(max);
        for v in 0..=bound {
            prefix.push(v);
            go(len, max, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(len, max, &mut Vec::new(), &mut out);
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SplitBinomParams {
    pub p: u32,
    pub q: u32,
    pub r: u32,
    pub m: u32,
    pub n: u32,
}

impl SplitBinomParams {
    /// Every hyperfactorial and MacMahon argument of the closed form is
    /// non-negative exactly when `q + r <= p`.
    pub fn is_well_defined(&self) -> bool {
        1 <= self.m && self.m <= self.n && self.q + self.r <= self.p
    }
}

/// The `n x n` matrix with entries `C(p, q+j-i)` in the first `m` columns
/// and `C(p, q+r+j-i)` in the others.
pub fn split_binom_matrix(s: &SplitBinomParams) -> IntMatrix {
    let (p, q, r, m) = (s.p as i64, s.q as i64, s.r as i64, s.m as usize);
    IntMatrix::from_fn(s.n as usize, s.n as usize, |i, j| {
        let shift = if j < m { q } else { q + r };
        binomial(p, shift + j as i64 - i as i64)
    })
}

pub fn split_binom_det(s: &SplitBinomParams) -> Result<BigInt, FormulaError> {
    hypothesis(1 <= s.m && s.m <= s.n, || format!("need 1 <= m <= n, got m = {}, n = {}", s.m, s.n))?;
    let (p, q, r, m, n) = (s.p as i64, s.q as i64, s.r as i64, s.m as i64, s.n as i64);
    let macs = mac(m, q, r)? * mac(n - m, p - q - r, r)?;
    let num = product(&[q + r, p - q, n + r, n + p])?;
    let den = product(&[n + p - q, n + q + r, p, r])?;
    exact("split binomial determinant", macs * num, den)
}

fn check_ci(a: u32, b: u32, c: u32) -> Result<u32, FormulaError> {
    hypothesis(a > 0 && b > 0 && c > 0, || format!("({a}, {b}, {c}) must be positive"))?;
    hypothesis(a <= b + c && b <= a + c && c <= a + b, || format!("({a}, {b}, {c}) violates the triangle inequalities"))?;
    hypothesis((a + b + c) % 2 == 0, || format!("{a} + {b} + {c} is odd"))?;
    Ok((a + b + c) / 2)
}

/// Tilings of the hexagon `T_d(x^a, y^b, z^c)`, `d = (a+b+c)/2`.
pub fn ci_enumeration(a: u32, b: u32, c: u32) -> Result<BigInt, FormulaError> {
    let d = check_ci(a, b, c)?;
    macmahon(d - a, d - b, d - c)
}

/// Tilings of `T_d(x^{a+alpha}, y^b, z^c, x^a y^beta, x^a z^gamma)`: a hexagon
/// whose top puncture is replaced by a smaller hexagon.
pub fn ci_nest_enumeration(a: u32, b: u32, c: u32, alpha: u32, beta: u32, gamma: u32) -> Result<BigInt, FormulaError> {
    let d = check_ci(a, b, c)?;
    let inner = check_ci(alpha, beta, gamma)?;
    hypothesis(inner == d - a, || format!("inner hexagon has degree {inner}, expected {}", d - a))?;
    Ok(macmahon(d - a, d - b, d - c)? * macmahon(inner - alpha, inner - beta, inner - gamma)?)
}

/// Tilings of `T_d(x^a, y^b, z^c, x^alpha y^beta)` with non-overlapping
/// punctures and `3d = a+b+c+alpha+beta`.
pub fn two_mahonian_enumeration(a: u32, b: u32, c: u32, alpha: u32, beta: u32, d: u32) -> Result<BigInt, FormulaError> {
    hypothesis(3 * d == a + b + c + alpha + beta, || format!("3d = {} but a+b+c+alpha+beta = {}", 3 * d, a + b + c + alpha + beta))?;
    hypothesis(0 < alpha && alpha < a && 0 < beta && beta < b, || format!("need 0 < {alpha} < {a} and 0 < {beta} < {b}"))?;
    let lo = a.max(b).max(c).max(alpha + beta);
    let hi = (a + beta).min(alpha + b).min(a + c).min(b + c);
    hypothesis(lo <= d && d <= hi, || format!("need {lo} <= d = {d} <= {hi}"))?;
    let (a, b, c, al, be, d) = (a as i64, b as i64, c as i64, alpha as i64, beta as i64, d as i64);
    let s = d - (al + be);
    let macs = mac(a + be - d, d - a, s)? * mac(al + b - d, d - b, s)?;
    let num = product(&[d - a + s, d - b + s, d - c + s, d])?;
    let den = product(&[a, b, c, s])?;
    exact("two-Mahonian quotient", macs * num, den)
}

/// `|det Z|` of the restricted maximal minor `T_d(x^a, y^b, z^c, x^i y^{d-1-i})`
/// of a hexagon-like region with `a+b+c` odd, `d = (a+b+c-1)/2`, evaluated
/// through the two-Mahonian product before any simplification.
pub fn type_one_odd_minor(a: u32, b: u32, c: u32, i: u32) -> Result<BigInt, FormulaError> {
    let d = check_type_one_odd(a, b, c, i)?;
    let (a, b, c, i, d) = (a as i64, b as i64, c as i64, i as i64, d as i64);
    let macs = mac(a - 1 - i, d - a, 1)? * mac(i + b - d, d - b, 1)?;
    let num = product(&[d - a + 1, d - b + 1, d - c + 1, d])?;
    let den = product(&[a, b, c, 1])?;
    exact("odd-sum minor", macs * num, den)
}

fn check_type_one_odd(a: u32, b: u32, c: u32, i: u32) -> Result<u32, FormulaError> {
    hypothesis(a > 0 && b > 0 && c > 0, || format!("({a}, {b}, {c}) must be positive"))?;
    hypothesis((a + b + c) % 2 == 1, || format!("{a} + {b} + {c} is even"))?;
    let d = (a + b + c - 1) / 2;
    hypothesis(d >= a.max(b).max(c), || format!("d = {d} is below max(a, b, c)"))?;
    hypothesis(d as i64 - 1 - (b as i64) < i as i64 && i < a, || format!("need {} < i = {i} < {a}", d as i64 - 1 - b as i64))?;
    Ok(d)
}

/// The fully simplified display `C(d-1, a-1) / C(d-1, i) * C(d-c, a-i-1) *
/// Mac(d-a-1, d-b, d-c)` as a reduced fraction `(num, den)`. It does not
/// agree with [`type_one_odd_minor`] in general (already at `(3, 3, 3, 1)` it
/// gives 1 instead of 3); kept only to report the discrepancy.
pub fn type_one_simplified_display(a: u32, b: u32, c: u32, i: u32) -> Result<(BigInt, BigInt), FormulaError> {
    let d = check_type_one_odd(a, b, c, i)? as i64;
    let (a, b, c, i) = (a as i64, b as i64, c as i64, i as i64);
    let num = binomial(d - 1, a - 1) * binomial(d - c, a - i - 1) * mac(d - a - 1, d - b, d - c)?;
    let den = binomial(d - 1, i);
    let g = num.gcd(&den);
    if g.is_zero() {
        return Ok((num, den));
    }
    Ok((num / &g, den / g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::{Monomial, MonomialIdeal};
    use crate::linalg::{biadjacency, determinant, lattice_path_matrix, permanent, prime_factors};
    use crate::region::build_region;
    use num_traits::Signed;

    fn abs_det_z(gens: &[Monomial], d: u32) -> BigInt {
        determinant(&biadjacency(&build_region(&MonomialIdeal::new(gens.iter().copied()), d))).unwrap().abs()
    }

    #[test]
    fn hyperfactorial_examples() {
        assert_eq!(hyperfactorial(0), BigInt::one());
        assert_eq!(hyperfactorial(1), BigInt::one());
        assert_eq!(hyperfactorial(4), BigInt::from(12));
        assert_eq!(hyperfactorial(5), BigInt::from(288));
    }

    #[test]
    fn macmahon_examples() {
        for b in 0..5 {
            for c in 0..5 {
                assert_eq!(macmahon(0, b, c).unwrap(), BigInt::one());
            }
        }
        assert_eq!(macmahon(1, 1, 1).unwrap(), BigInt::from(2));
        assert_eq!(macmahon(2, 2, 2).unwrap(), BigInt::from(20));
    }

    #[test]
    fn oracle_examples() {
        for c in 0..6 {
            assert_eq!(plane_partition_oracle(1, 1, c).unwrap(), BigInt::from(c + 1));
        }
        assert_eq!(plane_partition_oracle(2, 2, 2).unwrap(), BigInt::from(20));
        assert_eq!(plane_partition_oracle(2, 6, 3).unwrap(), macmahon(2, 6, 3).unwrap());
        assert!(matches!(plane_partition_oracle(5, 5, 1), Err(FormulaError::SizeCap(_))));
    }

    #[test]
    fn macmahon_matches_oracle() {
        for a in 0..=4 {
            for b in 0..=4 {
                for c in 0..=4 {
                    assert_eq!(macmahon(a, b, c).unwrap(), plane_partition_oracle(a, b, c).unwrap(), "({a},{b},{c})");
                }
            }
        }
    }

    #[test]
    fn split_binom_matches_determinant() {
        for p in 0..=6 {
            for q in 0..=p {
                for r in 0..=p - q {
                    for n in 1..=6 {
                        for m in 1..=n {
                            let s = SplitBinomParams { p, q, r, m, n };
                            assert!(s.is_well_defined());
                            let direct = determinant(&split_binom_matrix(&s)).unwrap();
                            assert_eq!(split_binom_det(&s).unwrap(), direct, "{s:?}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn split_binom_special_cases() {
        for (p, q, n) in [(4, 1, 3), (5, 2, 4), (6, 6, 2)] {
            let s = SplitBinomParams { p, q, r: 0, m: 1, n };
            assert_eq!(split_binom_det(&s).unwrap(), macmahon(n, p - q, q).unwrap());
        }
        assert!(split_binom_det(&SplitBinomParams { p: 3, q: 1, r: 1, m: 0, n: 2 }).is_err());
    }

    #[test]
    fn ci_examples() {
        assert_eq!(ci_enumeration(2, 2, 2).unwrap(), BigInt::from(2));
        // d = max(a, b, c) collapses one side
        assert_eq!(ci_enumeration(4, 2, 2).unwrap(), BigInt::one());
        assert!(ci_enumeration(1, 1, 3).is_err());
        assert!(ci_enumeration(1, 1, 1).is_err());
        for a in 1..=5u32 {
            for b in 1..=5 {
                for c in 1..=5 {
                    let Ok(v) = ci_enumeration(a, b, c) else { continue };
                    let d = (a + b + c) / 2;
                    let t = build_region(&MonomialIdeal::complete_intersection(a, b, c), d);
                    let z = biadjacency(&t);
                    assert_eq!(determinant(&z).unwrap().abs(), v);
                    assert_eq!(permanent(&z).unwrap(), v);
                    assert!(prime_factors(&v).iter().all(|p| *p < d as u64));
                }
            }
        }
    }

    #[test]
    fn ci_nest_examples() {
        // outer (2,3,3), d = 4; inner (1,1,2) on d - a = 2
        let (a, b, c, al, be, ga) = (2, 3, 3, 1, 1, 2);
        let v = ci_nest_enumeration(a, b, c, al, be, ga).unwrap();
        let gens = [
            Monomial::new(a + al, 0, 0),
            Monomial::new(0, b, 0),
            Monomial::new(0, 0, c),
            Monomial::new(a, be, 0),
            Monomial::new(a, 0, ga),
        ];
        assert_eq!(abs_det_z(&gens, 4), v);
        assert_eq!(permanent(&biadjacency(&build_region(&MonomialIdeal::new(gens), 4))).unwrap(), v);
        // degenerate inner hexagon
        assert_eq!(ci_nest_enumeration(2, 3, 3, 2, 1, 1).unwrap(), macmahon(2, 1, 1).unwrap());
        assert!(ci_nest_enumeration(2, 2, 2, 1, 1, 1).is_err());
    }

    #[test]
    fn two_mahonian_examples() {
        assert_eq!(two_mahonian_enumeration(3, 3, 3, 1, 2, 4).unwrap(), BigInt::from(3));
        assert_eq!(two_mahonian_enumeration(3, 3, 3, 2, 1, 4).unwrap(), BigInt::from(3));
        assert!(two_mahonian_enumeration(3, 3, 3, 1, 1, 4).is_err());
        let t = build_region(&crate::ideal::parse_ideal("x^3,y^3,z^3,xy^2").unwrap(), 4);
        assert_eq!(crate::tiling::enumerate_tilings(&t).count(), 3);
    }

    #[test]
    fn two_mahonian_matches_lattice_determinant() {
        let mut checked = 0;
        for d in 2..=6u32 {
            for a in 1..=d {
                for b in 1..=d {
                    for c in 1..=d {
                        for alpha in 1..a {
                            for beta in 1..b {
                                let Ok(v) = two_mahonian_enumeration(a, b, c, alpha, beta, d) else { continue };
                                let gens = [
                                    Monomial::new(a, 0, 0),
                                    Monomial::new(0, b, 0),
                                    Monomial::new(0, 0, c),
                                    Monomial::new(alpha, beta, 0),
                                ];
                                let t = build_region(&MonomialIdeal::new(gens), d);
                                let (n, _) = lattice_path_matrix(&t);
                                assert_eq!(determinant(&n).unwrap().abs(), v);
                                assert!(prime_factors(&v).iter().all(|p| *p < d as u64));
                                checked += 1;
                            }
                        }
                    }
                }
            }
        }
        assert!(checked > 10);
    }

    #[test]
    fn odd_minor_examples() {
        assert_eq!(type_one_odd_minor(3, 3, 3, 1).unwrap(), BigInt::from(3));
        assert_eq!(type_one_odd_minor(3, 3, 3, 2).unwrap(), BigInt::from(3));
        assert_eq!(type_one_odd_minor(2, 2, 3, 1).unwrap(), BigInt::one());
        assert!(type_one_odd_minor(3, 3, 3, 0).is_err());
        assert!(type_one_odd_minor(2, 2, 2, 1).is_err());
    }

    #[test]
    fn simplified_display_disagrees_at_three() {
        assert_eq!(type_one_simplified_display(3, 3, 3, 1).unwrap(), (BigInt::one(), BigInt::one()));
        assert_ne!(type_one_odd_minor(3, 3, 3, 1).unwrap(), BigInt::one());
    }

    #[test]
    fn odd_minor_matches_determinant() {
        for a in 1..=6u32 {
            for b in 1..=6 {
                for c in 1..=6 {
                    if (a + b + c) % 2 == 0 {
                        continue;
                    }
                    let d = (a + b + c - 1) / 2;
                    for i in 0..a {
                        let Ok(v) = type_one_odd_minor(a, b, c, i) else { continue };
                        let gens = [
                            Monomial::new(a, 0, 0),
                            Monomial::new(0, b, 0),
                            Monomial::new(0, 0, c),
                            Monomial::new(i, d - 1 - i, 0),
                        ];
                        assert_eq!(abs_det_z(&gens, d), v, "({a},{b},{c}) i = {i}");
                    }
                }
            }
        }
    }
}
