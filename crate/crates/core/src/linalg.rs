//! Exact integer matrices: bi-adjacency and lattice path matrices of regions,
//! determinants, permanents, ranks over Q and F_p, Smith invariants.
//!
//! Elimination runs first in `i128` with checked arithmetic and restarts in
//! arbitrary precision on overflow, so no result is ever rounded.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ideal::Monomial;
use crate::region::{TriangularRegion, LATTICE_VAR};

pub const DEFAULT_PERMANENT_CAP: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("matrix is {rows}x{cols}, not square")]
    NotSquare { rows: usize, cols: usize },
    #[error("permanent of a {n}x{n} matrix exceeds the cap of {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("minor order {r} out of range (at most {max})")]
    OrderOutOfRange { r: usize, max: usize },
}

/// Dense row-major matrix of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, entries: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { 1 } else { 0 })
    }

    pub fn from_fn<T: Into<BigInt>>(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j).into());
            }
        }
        IntMatrix { rows, cols, entries }
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self::from_fn(rows.len(), cols, |i, j| rows[i][j].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: impl Into<BigInt>) {
        self.entries[i * self.cols + j] = v.into();
    }

    pub fn transpose(&self) -> IntMatrix {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> IntMatrix {
        Self::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    fn to_i128_rows(&self) -> Option<Vec<Vec<i128>>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).to_i128()).collect())
            .collect()
    }

    fn to_big_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.entries[i * self.cols..(i + 1) * self.cols].to_vec()).collect()
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

/// Minimal exact ring interface for the elimination kernels; `None` means
/// overflow.
trait Scalar: Clone + PartialEq {
    fn nil() -> Self;
    fn unit() -> Self;
    fn is_nil(&self) -> bool;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn sub(&self, o: &Self) -> Option<Self>;
    fn add(&self, o: &Self) -> Option<Self>;
    fn neg(&self) -> Option<Self>;
    /// Truncated quotient.
    fn quot(&self, o: &Self) -> Self;
    fn abs_lt(&self, o: &Self) -> bool;
    fn into_big(self) -> BigInt;
}

impl Scalar for i128 {
    fn nil() -> Self {
        0
    }
    fn unit() -> Self {
        1
    }
    fn is_nil(&self) -> bool {
        *self == 0
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o)
    }
    fn add(&self, o: &Self) -> Option<Self> {
        self.checked_add(*o)
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn quot(&self, o: &Self) -> Self {
        self / o
    }
    fn abs_lt(&self, o: &Self) -> bool {
        self.unsigned_abs() < o.unsigned_abs()
    }
    fn into_big(self) -> BigInt {
        BigInt::from(self)
    }
}

impl Scalar for BigInt {
    fn nil() -> Self {
        Zero::zero()
    }
    fn unit() -> Self {
        One::one()
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn quot(&self, o: &Self) -> Self {
        self / o
    }
    fn abs_lt(&self, o: &Self) -> bool {
        self.magnitude() < o.magnitude()
    }
    fn into_big(self) -> BigInt {
        self
    }
}

/// Fraction-free Gaussian elimination. Returns the rank and, for square
/// input, the determinant.
fn bareiss<T: Scalar>(mut a: Vec<Vec<T>>, cols: usize) -> Option<(usize, T)> {
    let rows = a.len();
    let mut prev = T::unit();
    let mut rank = 0;
    let mut negate = false;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !a[r][col].is_nil()) else {
            continue;
        };
        if p != rank {
            a.swap(p, rank);
            negate = !negate;
        }
        let (top, bottom) = a.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        let pivot = pivot_row[col].clone();
        for row in bottom.iter_mut() {
            let factor = row[col].clone();
            for j in col + 1..cols {
                let v = row[j].mul(&pivot)?.sub(&factor.mul(&pivot_row[j])?)?;
                row[j] = v.quot(&prev);
            }
            row[col] = T::nil();
        }
        prev = pivot;
        rank += 1;
    }
    let det = if rows == cols {
        if rank < rows {
            T::nil()
        } else if rows == 0 {
            T::unit()
        } else if negate {
            a[rows - 1][cols - 1].neg()?
        } else {
            a[rows - 1][cols - 1].clone()
        }
    } else {
        T::nil()
    };
    Some((rank, det))
}

fn eliminate(m: &IntMatrix) -> (usize, BigInt) {
    if let Some(small) = m.to_i128_rows() {
        if let Some((rank, det)) = bareiss(small, m.cols) {
            return (rank, det.into_big());
        }
    }
    bareiss(m.to_big_rows(), m.cols).expect("arbitrary precision cannot overflow")
}

pub fn determinant(m: &IntMatrix) -> Result<BigInt, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare { rows: m.rows, cols: m.cols });
    }
    Ok(eliminate(m).1)
}

pub fn rank_q(m: &IntMatrix) -> usize {
    eliminate(m).0
}

pub fn rank_mod_p(m: &IntMatrix, p: u64) -> Result<usize, LinalgError> {
    if !is_prime(p) {
        return Err(LinalgError::NotPrime(p));
    }
    let modulus = BigInt::from(p);
    let mut a: Vec<Vec<u64>> = (0..m.rows)
        .map(|i| {
            (0..m.cols)
                .map(|j| m.get(i, j).mod_floor(&modulus).to_u64().expect("reduced below p"))
                .collect()
        })
        .collect();
    let mulmod = |x: u64, y: u64| ((x as u128 * y as u128) % p as u128) as u64;
    let mut rank = 0;
    for col in 0..m.cols {
        if rank == m.rows {
            break;
        }
        let Some(piv) = (rank..m.rows).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(piv, rank);
        let inv = pow_mod(a[rank][col], p - 2, p);
        for j in col..m.cols {
            a[rank][j] = mulmod(a[rank][j], inv);
        }
        for r in 0..m.rows {
            if r != rank && a[r][col] != 0 {
                let f = a[r][col];
                for j in col..m.cols {
                    let sub = mulmod(f, a[rank][j]);
                    a[r][j] = (a[r][j] + p - sub) % p;
                }
            }
        }
        rank += 1;
    }
    Ok(rank)
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = ((r as u128 * b as u128) % p as u128) as u64;
        }
        b = ((b as u128 * b as u128) % p as u128) as u64;
        e >>= 1;
    }
    r
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = ((x as u128 * x as u128) % n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes up to and including `n`.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    (2..=n).filter(|p| is_prime(*p)).collect()
}

/// Permanent by Ryser's formula, refusing blocks larger than the default
/// cap.
pub fn permanent(m: &IntMatrix) -> Result<BigInt, LinalgError> {
    permanent_capped(m, DEFAULT_PERMANENT_CAP)
}

/// Rows or columns with a single non-zero entry are expanded first and the
/// rest is split into independent blocks; the cap applies to each block
/// handed to Ryser's formula.
pub fn permanent_capped(m: &IntMatrix, cap: usize) -> Result<BigInt, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare { rows: m.rows, cols: m.cols });
    }
    let (factor, blocks) = reduce_for_permanent(m);
    if factor.is_zero() {
        return Ok(factor);
    }
    if let Some(big) = blocks.iter().find(|b| b.rows > cap) {
        return Err(LinalgError::CapExceeded { n: big.rows, cap });
    }
    let mut total = factor;
    for block in &blocks {
        let p = match block.to_i128_rows().and_then(|small| ryser(&small)) {
            Some(v) => v.into_big(),
            None => ryser(&block.to_big_rows()).expect("arbitrary precision cannot overflow"),
        };
        total *= p;
    }
    Ok(total)
}

/// Returns a scalar and square blocks whose permanents multiply to the
/// permanent of `m`; the scalar is zero when the permanent visibly vanishes.
fn reduce_for_permanent(m: &IntMatrix) -> (BigInt, Vec<IntMatrix>) {
    let n = m.rows;
    let mut rows: Vec<bool> = vec![true; n];
    let mut cols: Vec<bool> = vec![true; n];
    let mut factor = BigInt::one();
    let nonzero_in_row = |i: usize, cols: &[bool]| (0..n).filter(|&j| cols[j] && !m.get(i, j).is_zero()).collect::<Vec<_>>();
    let nonzero_in_col = |j: usize, rows: &[bool]| (0..n).filter(|&i| rows[i] && !m.get(i, j).is_zero()).collect::<Vec<_>>();
    loop {
        let mut changed = false;
        for i in 0..n {
            if !rows[i] {
                continue;
            }
            let nz = nonzero_in_row(i, &cols);
            match nz.len() {
                0 => return (BigInt::zero(), Vec::new()),
                1 => {
                    factor *= m.get(i, nz[0]);
                    rows[i] = false;
                    cols[nz[0]] = false;
                    changed = true;
                }
                _ => {}
            }
        }
        for j in 0..n {
            if !cols[j] {
                continue;
            }
            let nz = nonzero_in_col(j, &rows);
            match nz.len() {
                0 => return (BigInt::zero(), Vec::new()),
                1 => {
                    factor *= m.get(nz[0], j);
                    rows[nz[0]] = false;
                    cols[j] = false;
                    changed = true;
                }
                _ => {}
            }
        }
        if !changed {
            break;
        }
    }
    // connected components of the remaining bipartite support
    let mut comp_of_row = vec![usize::MAX; n];
    let mut comp_of_col = vec![usize::MAX; n];
    let mut blocks = Vec::new();
    for start in 0..n {
        if !rows[start] || comp_of_row[start] != usize::MAX {
            continue;
        }
        let id = blocks.len();
        let (mut brows, mut bcols) = (vec![start], Vec::new());
        comp_of_row[start] = id;
        let mut queue = VecDeque::from([(true, start)]);
        while let Some((is_row, idx)) = queue.pop_front() {
            if is_row {
                for j in nonzero_in_row(idx, &cols) {
                    if comp_of_col[j] == usize::MAX {
                        comp_of_col[j] = id;
                        bcols.push(j);
                        queue.push_back((false, j));
                    }
                }
            } else {
                for i in nonzero_in_col(idx, &rows) {
                    if comp_of_row[i] == usize::MAX {
                        comp_of_row[i] = id;
                        brows.push(i);
                        queue.push_back((true, i));
                    }
                }
            }
        }
        if brows.len() != bcols.len() {
            return (BigInt::zero(), Vec::new());
        }
        brows.sort_unstable();
        bcols.sort_unstable();
        blocks.push(m.submatrix(&brows, &bcols));
    }
    (factor, blocks)
}

fn ryser<T: Scalar>(a: &[Vec<T>]) -> Option<T> {
    let n = a.len();
    if n == 0 {
        return Some(T::unit());
    }
    let mut row_sums = vec![T::nil(); n];
    let mut total = T::nil();
    let mut gray: u64 = 0;
    for g in 1u64..(1u64 << n) {
        let j = g.trailing_zeros() as usize;
        gray ^= 1 << j;
        let adding = gray & (1 << j) != 0;
        for (i, s) in row_sums.iter_mut().enumerate() {
            *s = if adding { s.add(&a[i][j])? } else { s.sub(&a[i][j])? };
        }
        let mut prod = T::unit();
        for s in &row_sums {
            prod = prod.mul(s)?;
            if prod.is_nil() {
                break;
            }
        }
        total = if gray.count_ones() % 2 == 1 { total.sub(&prod)? } else { total.add(&prod)? };
    }
    if n % 2 == 1 {
        total.neg()
    } else {
        Some(total)
    }
}

/// Permanent by row expansion, memoised on the set of columns that are used
/// and still have non-zero entries in later rows. Exact with no size cap;
/// fast when the non-zero pattern is banded, as for bi-adjacency matrices.
pub fn sparse_permanent(m: &IntMatrix) -> Result<BigInt, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare { rows: m.rows, cols: m.cols });
    }
    let n = m.rows;
    let words = n.div_ceil(64).max(1);
    let mut last_row = vec![None; n];
    for i in 0..n {
        for (j, last) in last_row.iter_mut().enumerate() {
            if !m.get(i, j).is_zero() {
                *last = Some(i);
            }
        }
    }
    if last_row.iter().any(Option::is_none) {
        return Ok(BigInt::zero());
    }
    let mut states: HashMap<Vec<u64>, BigInt> = HashMap::new();
    states.insert(vec![0; words], BigInt::one());
    for i in 0..n {
        let closing: Vec<usize> = (0..n).filter(|j| last_row[*j] == Some(i)).collect();
        let mut next: HashMap<Vec<u64>, BigInt> = HashMap::new();
        for (used, count) in &states {
            for j in 0..n {
                let w = m.get(i, j);
                if w.is_zero() || used[j / 64] >> (j % 64) & 1 == 1 {
                    continue;
                }
                let mut s = used.clone();
                s[j / 64] |= 1 << (j % 64);
                if !closing.iter().all(|c| s[c / 64] >> (c % 64) & 1 == 1) {
                    continue;
                }
                for c in &closing {
                    s[c / 64] &= !(1 << (c % 64));
                }
                *next.entry(s).or_insert_with(BigInt::zero) += count * w;
            }
        }
        states = next;
    }
    Ok(states.remove(&vec![0; words]).unwrap_or_default())
}

/// Invariant factors `s_1 | s_2 | ...` (positive, one per unit of rank).
pub fn smith_invariants(m: &IntMatrix) -> Vec<BigInt> {
    if let Some(small) = m.to_i128_rows() {
        if let Some(v) = smith(small) {
            return v.into_iter().map(Scalar::into_big).collect();
        }
    }
    smith(m.to_big_rows()).expect("arbitrary precision cannot overflow")
}

fn smith<T: Scalar>(mut a: Vec<Vec<T>>) -> Option<Vec<T>> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    for t in 0..rows.min(cols) {
        // smallest non-zero entry of the trailing block becomes the pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_nil() && best.is_none_or(|(bi, bj)| a[i][j].abs_lt(&a[bi][bj])) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if a[i][t].is_nil() {
                    continue;
                }
                let q = a[i][t].quot(&a[t][t]);
                for j in t..cols {
                    a[i][j] = a[i][j].sub(&q.mul(&a[t][j])?)?;
                }
                if !a[i][t].is_nil() {
                    dirty = true;
                    if a[i][t].abs_lt(&a[t][t]) {
                        a.swap(t, i);
                    }
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_nil() {
                    continue;
                }
                let q = a[t][j].quot(&a[t][t]);
                for row in a.iter_mut().skip(t) {
                    row[j] = row[j].sub(&q.mul(&row[t])?)?;
                }
                if !a[t][j].is_nil() {
                    dirty = true;
                    if a[t][j].abs_lt(&a[t][t]) {
                        for row in a.iter_mut() {
                            row.swap(t, j);
                        }
                    }
                }
            }
            if dirty {
                continue;
            }
            // pivot must divide the rest of the block
            let offender = (t + 1..rows).find(|&i| {
                (t + 1..cols).any(|j| {
                    let q = a[i][j].quot(&a[t][t]);
                    q.mul(&a[t][t]).is_some_and(|p| p != a[i][j])
                })
            });
            match offender {
                Some(i) => {
                    for j in t..cols {
                        a[t][j] = a[t][j].add(&a[i][j])?;
                    }
                }
                None => break,
            }
        }
        let p = a[t][t].clone();
        out.push(if is_negative(&p) { p.neg()? } else { p });
    }
    Some(out)
}

fn is_negative<T: Scalar>(v: &T) -> bool {
    v.clone().into_big().sign() == Sign::Minus
}

/// The gcd of all `r x r` minors (0 if they all vanish).
pub fn determinantal_divisor(m: &IntMatrix, r: usize) -> Result<BigInt, LinalgError> {
    let max = m.rows.min(m.cols);
    if r > max {
        return Err(LinalgError::OrderOutOfRange { r, max });
    }
    let inv = smith_invariants(m);
    if r > inv.len() {
        return Ok(BigInt::zero());
    }
    Ok(inv[..r].iter().fold(BigInt::one(), |acc, s| acc * s))
}

/// Prime factorisation by trial division, with a primality check on what
/// remains so that a large prime cofactor ends the search.
pub fn factorize(n: &BigUint) -> BTreeMap<BigUint, u32> {
    let mut out = BTreeMap::new();
    let mut rest = n.clone();
    if rest.is_zero() {
        return out;
    }
    let mut p = BigUint::from(2u32);
    while !rest.is_one() {
        if let Some(small) = rest.to_u64() {
            if is_prime(small) {
                *out.entry(rest.clone()).or_insert(0) += 1;
                break;
            }
        }
        if &p * &p > rest {
            *out.entry(rest.clone()).or_insert(0) += 1;
            break;
        }
        while (&rest % &p).is_zero() {
            rest /= &p;
            *out.entry(p.clone()).or_insert(0) += 1;
        }
        p += if p == BigUint::from(2u32) { 1u32 } else { 2u32 };
    }
    out
}

pub fn prime_factors(n: &BigInt) -> Vec<u64> {
    factorize(n.magnitude())
        .into_keys()
        .map(|p| p.to_u64().expect("prime factor exceeds u64"))
        .collect()
}

/// `C(n, k)`, zero when `k < 0` or `k > n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut r = BigInt::one();
    for i in 1..=k {
        r *= n - k + i;
        r /= i;
    }
    r
}

/// `Z(T)`: rows are downward triangles, columns upward triangles, both
/// ascending; entry 1 when the triangles share an edge.
pub fn biadjacency(t: &TriangularRegion) -> IntMatrix {
    let mut m = IntMatrix::zeros(t.n_down(), t.n_up());
    for (i, n) in t.down().iter().enumerate() {
        for u in t.up_neighbors(n) {
            let j = t.up_index(&u).expect("neighbour is present");
            m.set(i, j, 1);
        }
    }
    m
}

/// Start and end points of the lattice of a region: the label and its
/// position `(d-1-c, a)` for a label `x^a y^b z^c`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticePoints {
    pub starts: Vec<(Monomial, (i64, i64))>,
    pub ends: Vec<(Monomial, (i64, i64))>,
}

pub fn lattice_point(d: u32, label: &Monomial) -> (i64, i64) {
    (d as i64 - 1 - label.z() as i64, label.x() as i64)
}

/// Number of lattice paths with unit East and South steps from `from` to `to`.
pub fn lattice_path_count(from: (i64, i64), to: (i64, i64)) -> BigInt {
    let dx = to.0 - from.0;
    let dy = from.1 - to.1;
    if dx < 0 || dy < 0 {
        return BigInt::zero();
    }
    binomial(dx + dy, dx)
}

/// `N(T)`: rows are start points, columns end points, entries path counts.
pub fn lattice_path_matrix(t: &TriangularRegion) -> (IntMatrix, LatticePoints) {
    let d = t.degree();
    let starts: Vec<(Monomial, (i64, i64))> =
        t.a_vertices().into_iter().map(|m| (m, lattice_point(d, &m))).collect();
    let ends: Vec<(Monomial, (i64, i64))> = t
        .e_vertices()
        .into_iter()
        .map(|n| {
            let label = n.mul_var(LATTICE_VAR);
            (label, lattice_point(d, &label))
        })
        .collect();
    let m = IntMatrix::from_fn(starts.len(), ends.len(), |i, j| lattice_path_count(starts[i].1, ends[j].1));
    (m, LatticePoints { starts, ends })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::{parse_ideal, MonomialIdeal};
    use crate::region::build_region;
    use num_traits::Signed;
    use proptest::prelude::*;

    /// Cofactor expansion along the first row.
    fn cofactor_det(m: &IntMatrix) -> BigInt {
        let n = m.rows();
        if n == 0 {
            return BigInt::one();
        }
        let mut total = BigInt::zero();
        for j in 0..n {
            if m.get(0, j).is_zero() {
                continue;
            }
            let rows: Vec<usize> = (1..n).collect();
            let cols: Vec<usize> = (0..n).filter(|c| *c != j).collect();
            let term = m.get(0, j) * cofactor_det(&m.submatrix(&rows, &cols));
            if j % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
        total
    }

    fn brute_permanent(m: &IntMatrix) -> BigInt {
        let n = m.rows();
        fn go(m: &IntMatrix, i: usize, used: &mut Vec<bool>) -> BigInt {
            if i == m.rows() {
                return BigInt::one();
            }
            let mut s = BigInt::zero();
            for j in 0..m.cols() {
                if !used[j] && !m.get(i, j).is_zero() {
                    used[j] = true;
                    s += m.get(i, j) * go(m, i + 1, used);
                    used[j] = false;
                }
            }
            s
        }
        go(m, 0, &mut vec![false; n])
    }

    fn all_minors_gcd(m: &IntMatrix, r: usize) -> BigInt {
        use itertools::Itertools;
        let mut g = BigInt::zero();
        for rows in (0..m.rows()).combinations(r) {
            for cols in (0..m.cols()).combinations(r) {
                g = g.gcd(&determinant(&m.submatrix(&rows, &cols)).unwrap());
            }
        }
        g
    }

    fn small_matrix(max_n: usize, lo: i64, hi: i64) -> impl Strategy<Value = IntMatrix> {
        (1..=max_n, 1..=max_n).prop_flat_map(move |(r, c)| {
            prop::collection::vec(lo..=hi, r * c)
                .prop_map(move |v| IntMatrix::from_fn(r, c, |i, j| v[i * c + j]))
        })
    }

    fn square_matrix(max_n: usize, lo: i64, hi: i64) -> impl Strategy<Value = IntMatrix> {
        (0..=max_n).prop_flat_map(move |n| {
            prop::collection::vec(lo..=hi, n * n)
                .prop_map(move |v| IntMatrix::from_fn(n, n, |i, j| v[i * n + j]))
        })
    }

    #[test]
    fn biadjacency_examples() {
        let z = biadjacency(&build_region(&MonomialIdeal::zero(), 2));
        assert_eq!(z, IntMatrix::from_rows(&[vec![1, 1, 1]]));
        let empty = biadjacency(&TriangularRegion::empty(3));
        assert_eq!((empty.rows(), empty.cols()), (0, 0));
        assert_eq!(determinant(&empty).unwrap(), BigInt::one());
        let hex = biadjacency(&build_region(&parse_ideal("x^2,y^2,z^2").unwrap(), 3));
        assert_eq!(determinant(&hex).unwrap().abs(), BigInt::from(2));
        assert_eq!(cofactor_det(&hex).abs(), BigInt::from(2));
    }

    #[test]
    fn biadjacency_has_at_most_three_ones() {
        let z = biadjacency(&build_region(&parse_ideal("x^5,y^6,z^4,xy^3").unwrap(), 7));
        for i in 0..z.rows() {
            assert!((0..z.cols()).filter(|j| !z.get(i, *j).is_zero()).count() <= 3);
        }
        for j in 0..z.cols() {
            assert!((0..z.rows()).filter(|i| !z.get(*i, j).is_zero()).count() <= 3);
        }
    }

    #[test]
    fn lattice_examples() {
        let i = parse_ideal("x^4,y^4,z^4,x^2z^2").unwrap();
        let (n5, _) = lattice_path_matrix(&build_region(&i, 5));
        assert_eq!((n5.rows(), n5.cols()), (2, 1));
        let (n6, _) = lattice_path_matrix(&build_region(&i, 6));
        assert_eq!((n6.rows(), n6.cols()), (0, 2));
    }

    #[test]
    fn lattice_entry_is_binomial_in_e() {
        // A at x^s z^{d-1-s}, E at x^p y^e z^{d-1-p-e} gives C(e, s-p)
        let d = 9u32;
        for s in 0..d {
            for e in 1..d {
                for p in 0..d - e {
                    let a = Monomial::new(s, 0, d - 1 - s);
                    let en = Monomial::new(p, e, d - 1 - p - e);
                    let got = lattice_path_count(lattice_point(d, &a), lattice_point(d, &en));
                    assert_eq!(got, binomial(e as i64, s as i64 - p as i64));
                }
            }
        }
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(determinant(&IntMatrix::identity(5)).unwrap(), BigInt::one());
        assert!(matches!(determinant(&IntMatrix::zeros(2, 3)), Err(LinalgError::NotSquare { .. })));
        // forces the arbitrary precision path
        let big = IntMatrix::from_fn(3, 3, |i, j| BigInt::from(10).pow(30) * (i * 3 + j + 1 + (i == j) as usize));
        assert_eq!(determinant(&big).unwrap(), cofactor_det(&big));
    }

    #[test]
    fn permanent_examples() {
        assert_eq!(permanent(&IntMatrix::from_rows(&[vec![1]])).unwrap(), BigInt::one());
        let hex = biadjacency(&build_region(&parse_ideal("x^2,y^2,z^2").unwrap(), 3));
        assert_eq!(permanent(&hex).unwrap(), BigInt::from(2));
        let ones = IntMatrix::from_fn(5, 5, |_, _| 1);
        assert!(matches!(permanent_capped(&ones, 4), Err(LinalgError::CapExceeded { n: 5, cap: 4 })));
        assert_eq!(permanent_capped(&ones, 5).unwrap(), BigInt::from(120));
        // forced entries and blocks are peeled off before the cap applies
        assert_eq!(permanent_capped(&IntMatrix::identity(30), 4).unwrap(), BigInt::one());
        let six = biadjacency(&build_region(&parse_ideal("x^7,y^7,z^6,x*y^4*z^2,x^3*y*z^2,x^4*y*z").unwrap(), 8));
        assert_eq!(six.rows(), 25);
        assert_eq!(permanent(&six).unwrap(), BigInt::from(13));
        assert_eq!(permanent(&IntMatrix::zeros(0, 0)).unwrap(), BigInt::one());
    }

    #[test]
    fn rank_examples() {
        let i = parse_ideal("x^4,y^4,z^4,x^2z^2").unwrap();
        let z = biadjacency(&build_region(&i, 5));
        assert_eq!(rank_q(&z), 10);
        assert!(rank_mod_p(&z, 2).unwrap() <= 9);
        assert_eq!(rank_mod_p(&z, 3).unwrap(), 10);
        assert_eq!(rank_mod_p(&IntMatrix::identity(4), 7).unwrap(), 4);
        assert_eq!(rank_q(&IntMatrix::identity(4)), 4);
        assert_eq!(rank_mod_p(&z, 4), Err(LinalgError::NotPrime(4)));
    }

    #[test]
    fn divisor_examples() {
        let i = parse_ideal("x^4,y^4,z^4,x^2z^2").unwrap();
        let z = biadjacency(&build_region(&i, 5));
        assert_eq!(determinantal_divisor(&z, 10).unwrap(), BigInt::from(4));
        assert_eq!(determinantal_divisor(&IntMatrix::identity(3), 3).unwrap(), BigInt::one());
        assert!(determinantal_divisor(&z, 11).is_err());
        assert_eq!(determinantal_divisor(&IntMatrix::zeros(2, 2), 1).unwrap(), BigInt::zero());
    }

    #[test]
    fn factorize_examples() {
        let f = factorize(&BigUint::from(10080u32));
        let want: BTreeMap<BigUint, u32> =
            [(2u32, 5u32), (3, 2), (5, 1), (7, 1)].into_iter().map(|(p, e)| (BigUint::from(p), e)).collect();
        assert_eq!(f, want);
        assert!(factorize(&BigUint::one()).is_empty());
        let big = BigUint::from(1_000_000_007u64) * BigUint::from(1u64 << 40);
        assert_eq!(factorize(&big).len(), 2);
    }

    #[test]
    fn binomial_convention() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(5, -1), BigInt::zero());
        assert_eq!(binomial(5, 6), BigInt::zero());
        assert_eq!(binomial(0, 0), BigInt::one());
    }

    #[test]
    fn primality() {
        let small: Vec<u64> = primes_up_to(30);
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(3_215_031_751));
    }

    proptest! {
        #[test]
        fn determinant_matches_cofactor(m in square_matrix(6, -4, 4)) {
            prop_assert_eq!(determinant(&m).unwrap(), cofactor_det(&m));
        }

        #[test]
        fn permanent_routes_agree(m in square_matrix(6, -2, 3)) {
            let brute = brute_permanent(&m);
            prop_assert_eq!(permanent(&m).unwrap(), brute.clone());
            prop_assert_eq!(sparse_permanent(&m).unwrap(), brute);
        }

        #[test]
        fn divisor_matches_all_minors(m in small_matrix(5, -3, 3)) {
            for r in 0..=m.rows().min(m.cols()) {
                prop_assert_eq!(determinantal_divisor(&m, r).unwrap(), all_minors_gcd(&m, r));
            }
        }

        #[test]
        fn modular_rank_follows_leading_divisor(m in small_matrix(6, 0, 1)) {
            let r = rank_q(&m);
            let lead = determinantal_divisor(&m, r).unwrap();
            for p in [2u64, 3, 5, 7] {
                let rp = rank_mod_p(&m, p).unwrap();
                let divides = (&lead % BigInt::from(p)).is_zero();
                prop_assert_eq!(rp == r, !divides);
            }
        }
    }
}
