//! Lozenge tilings of triangular regions as perfect matchings of the
//! down/up adjacency graph, their two signs, and the translation to families
//! of non-intersecting lattice paths.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ideal::{Monomial, Var};
use crate::linalg::{self, LinalgError};
use crate::region::{BalanceKind, TriangularRegion, LATTICE_VAR};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TilingError {
    #[error("region is not balanced ({up} up, {down} down)")]
    NotBalanced { up: usize, down: usize },
    #[error("triangle {0} is not covered")]
    Uncovered(Monomial),
    #[error("triangle {0} is covered twice")]
    CoveredTwice(Monomial),
    #[error("{0} is not a triangle of the region")]
    Foreign(Monomial),
    #[error("{down} and {up} are not adjacent")]
    NotAdjacent { down: Monomial, up: Monomial },
    #[error("path family does not match the region: {0}")]
    BadPathFamily(String),
    #[error("more than {0} tilings")]
    TooManyTilings(u64),
    #[error("signed enumeration mismatch: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A lozenge tiling, stored as the matching from downward to upward
/// triangles.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Tiling {
    pairs: BTreeMap<Monomial, Monomial>,
}

impl Tiling {
    /// Builds a tiling from `(down, up)` pairs without checking it.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (Monomial, Monomial)>) -> Self {
        Tiling { pairs: pairs.into_iter().collect() }
    }

    pub fn pairs(&self) -> &BTreeMap<Monomial, Monomial> {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn partner_of_down(&self, n: &Monomial) -> Option<Monomial> {
        self.pairs.get(n).copied()
    }

    /// The variable `v` with `up = v·down` for the lozenge containing `down`.
    pub fn direction(&self, n: &Monomial) -> Option<Var> {
        let up = self.pairs.get(n)?;
        Var::ALL.into_iter().find(|v| n.mul_var(*v) == *up)
    }

    pub fn validate(&self, t: &TriangularRegion) -> Result<(), TilingError> {
        let mut seen_up = BTreeSet::new();
        for (n, u) in &self.pairs {
            if !t.has_down(n) {
                return Err(TilingError::Foreign(*n));
            }
            if !t.has_up(u) {
                return Err(TilingError::Foreign(*u));
            }
            if !Var::ALL.iter().any(|v| n.mul_var(*v) == *u) {
                return Err(TilingError::NotAdjacent { down: *n, up: *u });
            }
            if !seen_up.insert(*u) {
                return Err(TilingError::CoveredTwice(*u));
            }
        }
        if let Some(n) = t.down().iter().find(|n| !self.pairs.contains_key(n)) {
            return Err(TilingError::Uncovered(*n));
        }
        if let Some(u) = t.up().iter().find(|u| !seen_up.contains(u)) {
            return Err(TilingError::Uncovered(*u));
        }
        Ok(())
    }
}

/// Streams every tiling of a region exactly once. Downward triangles are
/// matched in ascending order, partners tried in x, y, z order.
pub fn enumerate_tilings(t: &TriangularRegion) -> TilingIter<'_> {
    TilingIter::new(t)
}

pub struct TilingIter<'a> {
    region: &'a TriangularRegion,
    down_adj: Vec<Vec<usize>>,
    up_adj: Vec<Vec<usize>>,
    covered_up: Vec<bool>,
    partner: Vec<usize>,
    avail_down: Vec<usize>,
    avail_up: Vec<usize>,
    next_opt: Vec<usize>,
    depth: usize,
    started: bool,
    done: bool,
}

impl<'a> TilingIter<'a> {
    fn new(t: &'a TriangularRegion) -> Self {
        let down_adj: Vec<Vec<usize>> = t
            .down()
            .iter()
            .map(|n| t.up_neighbors(n).filter_map(|u| t.up_index(&u)).collect())
            .collect();
        let mut up_adj = vec![Vec::new(); t.n_up()];
        for (i, ups) in down_adj.iter().enumerate() {
            for &j in ups {
                up_adj[j].push(i);
            }
        }
        let avail_down = down_adj.iter().map(Vec::len).collect();
        let avail_up: Vec<usize> = up_adj.iter().map(Vec::len).collect();
        let n = t.n_down();
        let hopeless = t.balance().kind != BalanceKind::Balanced
            || down_adj.iter().any(Vec::is_empty)
            || (n > 0 && avail_up.contains(&0));
        TilingIter {
            region: t,
            covered_up: vec![false; t.n_up()],
            partner: vec![usize::MAX; n],
            avail_down,
            avail_up,
            next_opt: vec![0; n + 1],
            down_adj,
            up_adj,
            depth: 0,
            started: false,
            done: hopeless,
        }
    }

    /// Matches down `i` with up `j`; undoes and returns false when some
    /// uncovered triangle is left without a possible partner.
    fn assign(&mut self, i: usize, j: usize) -> bool {
        self.partner[i] = j;
        self.covered_up[j] = true;
        let mut dead = false;
        for &j2 in &self.down_adj[i] {
            if !self.covered_up[j2] {
                self.avail_up[j2] -= 1;
                dead |= self.avail_up[j2] == 0;
            }
        }
        for &i2 in &self.up_adj[j] {
            if i2 > i {
                self.avail_down[i2] -= 1;
                dead |= self.avail_down[i2] == 0;
            }
        }
        if dead {
            self.unassign(i);
            return false;
        }
        true
    }

    fn unassign(&mut self, i: usize) {
        let j = self.partner[i];
        for &i2 in &self.up_adj[j] {
            if i2 > i {
                self.avail_down[i2] += 1;
            }
        }
        for &j2 in &self.down_adj[i] {
            if !self.covered_up[j2] {
                self.avail_up[j2] += 1;
            }
        }
        self.covered_up[j] = false;
        self.partner[i] = usize::MAX;
    }

    fn search(&mut self) -> bool {
        let n = self.down_adj.len();
        loop {
            let depth = self.depth;
            if depth == n {
                return true;
            }
            let mut placed = false;
            while self.next_opt[depth] < self.down_adj[depth].len() {
                let j = self.down_adj[depth][self.next_opt[depth]];
                self.next_opt[depth] += 1;
                if self.covered_up[j] {
                    continue;
                }
                if self.assign(depth, j) {
                    self.depth += 1;
                    self.next_opt[depth + 1] = 0;
                    placed = true;
                    break;
                }
            }
            if !placed {
                if depth == 0 {
                    return false;
                }
                self.depth -= 1;
                self.unassign(self.depth);
            }
        }
    }

    fn current(&self) -> Tiling {
        let t = self.region;
        Tiling::from_pairs(self.partner.iter().enumerate().map(|(i, j)| (t.down()[i], t.up()[*j])))
    }
}

impl Iterator for TilingIter<'_> {
    type Item = Tiling;

    fn next(&mut self) -> Option<Tiling> {
        if self.done {
            return None;
        }
        let n = self.down_adj.len();
        if self.started {
            if n == 0 {
                self.done = true;
                return None;
            }
            self.depth -= 1;
            self.unassign(self.depth);
        }
        self.started = true;
        if self.search() {
            Some(self.current())
        } else {
            self.done = true;
            None
        }
    }
}

/// Sign of the permutation sending the rank of each down triangle to the
/// rank of its partner.
pub fn msgn(t: &TriangularRegion, tiling: &Tiling) -> Result<i32, TilingError> {
    tiling.validate(t)?;
    let perm: Vec<usize> = t
        .down()
        .iter()
        .map(|n| t.up_index(&tiling.pairs[n]).expect("validated"))
        .collect();
    Ok(permutation_sign(&perm))
}

pub fn permutation_sign(perm: &[usize]) -> i32 {
    let mut seen = vec![false; perm.len()];
    let mut sign = 1;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

/// Non-intersecting lattice paths; `paths[i]` starts at the i-th start
/// vertex and ends at end vertex `lambda[i]`. Vertices are labels of degree
/// `d - 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathFamily {
    pub paths: Vec<Vec<Monomial>>,
    pub lambda: Vec<usize>,
}

pub fn to_path_family(t: &TriangularRegion, tiling: &Tiling) -> Result<PathFamily, TilingError> {
    tiling.validate(t)?;
    let balance = t.balance();
    if balance.kind != BalanceKind::Balanced {
        return Err(TilingError::NotBalanced { up: balance.n_up, down: balance.n_down });
    }
    // up triangle -> down triangle it is paired with
    let down_of: BTreeMap<Monomial, Monomial> = tiling.pairs.iter().map(|(n, u)| (*u, *n)).collect();
    let ends: Vec<Monomial> = t.e_vertices().iter().map(|n| n.mul_var(LATTICE_VAR)).collect();
    let mut paths = Vec::new();
    let mut lambda = Vec::new();
    for start in t.a_vertices() {
        let mut path = vec![start];
        let mut v = start;
        while t.has_up(&v) {
            let n = down_of[&v];
            if n.mul_var(LATTICE_VAR) == v {
                return Err(TilingError::BadPathFamily(format!("path enters a lozenge without a step at {v}")));
            }
            v = n.mul_var(LATTICE_VAR);
            path.push(v);
        }
        let j = ends
            .iter()
            .position(|e| *e == v)
            .ok_or_else(|| TilingError::BadPathFamily(format!("path ends at {v}, not an end vertex")))?;
        paths.push(path);
        lambda.push(j);
    }
    Ok(PathFamily { paths, lambda })
}

/// Inverse of [`to_path_family`].
pub fn to_tiling(t: &TriangularRegion, family: &PathFamily) -> Result<Tiling, TilingError> {
    let mut pairs = BTreeMap::new();
    let mut on_path = BTreeSet::new();
    for path in &family.paths {
        for w in path.windows(2) {
            let (u, v) = (w[0], w[1]);
            let n = v
                .div_var(LATTICE_VAR)
                .ok_or_else(|| TilingError::BadPathFamily(format!("step into {v}")))?;
            if pairs.insert(n, u).is_some() {
                return Err(TilingError::CoveredTwice(n));
            }
            on_path.insert(u);
        }
    }
    for m in t.up() {
        if !on_path.contains(m) {
            let n = m.div_var(LATTICE_VAR).ok_or(TilingError::Uncovered(*m))?;
            if pairs.insert(n, *m).is_some() {
                return Err(TilingError::CoveredTwice(n));
            }
        }
    }
    let tiling = Tiling { pairs };
    tiling.validate(t)?;
    Ok(tiling)
}

pub fn lpsgn(t: &TriangularRegion, tiling: &Tiling) -> Result<i32, TilingError> {
    Ok(permutation_sign(&to_path_family(t, tiling)?.lambda))
}

/// How the permanent is evaluated inside [`signed_enumeration_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PermanentRoute {
    /// Ryser's formula; larger matrices are an error.
    Ryser { cap: usize },
    /// Ryser up to `cap`, the banded row-expansion beyond it.
    RyserThenSparse { cap: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationOptions {
    pub permanent: PermanentRoute,
    pub max_tilings: u64,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        EnumerationOptions {
            permanent: PermanentRoute::Ryser { cap: linalg::DEFAULT_PERMANENT_CAP },
            max_tilings: 1_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignedEnumeration {
    pub count: u64,
    pub sum_msgn: i64,
    pub sum_lpsgn: i64,
    pub det_z: BigInt,
    pub det_n: BigInt,
    pub per_z: BigInt,
}

pub fn signed_enumeration(t: &TriangularRegion) -> Result<SignedEnumeration, TilingError> {
    signed_enumeration_with(t, &EnumerationOptions::default())
}

/// Counts tilings by enumeration, by permanent, and by both signed sums, and
/// checks that they agree: count = per Z, Σ msgn = det Z, Σ lpsgn = det N,
/// |det Z| = |det N|.
pub fn signed_enumeration_with(
    t: &TriangularRegion,
    options: &EnumerationOptions,
) -> Result<SignedEnumeration, TilingError> {
    let balance = t.balance();
    if balance.kind != BalanceKind::Balanced {
        return Err(TilingError::NotBalanced { up: balance.n_up, down: balance.n_down });
    }
    let z = linalg::biadjacency(t);
    let per_z = match options.permanent {
        PermanentRoute::Ryser { cap } => linalg::permanent_capped(&z, cap)?,
        PermanentRoute::RyserThenSparse { cap } if z.rows() <= cap => linalg::permanent_capped(&z, cap)?,
        PermanentRoute::RyserThenSparse { .. } => linalg::sparse_permanent(&z)?,
    };
    let det_z = linalg::determinant(&z)?;
    let (n, _) = linalg::lattice_path_matrix(t);
    let det_n = linalg::determinant(&n)?;
    let mut count = 0u64;
    let mut sum_msgn = 0i64;
    let mut sum_lpsgn = 0i64;
    for tiling in enumerate_tilings(t) {
        count += 1;
        if count > options.max_tilings {
            return Err(TilingError::TooManyTilings(options.max_tilings));
        }
        sum_msgn += msgn(t, &tiling)? as i64;
        sum_lpsgn += lpsgn(t, &tiling)? as i64;
    }
    let report = SignedEnumeration { count, sum_msgn, sum_lpsgn, det_z, det_n, per_z };
    if BigInt::from(report.count) != report.per_z {
        return Err(TilingError::Inconsistent(format!("count {} but per Z {}", report.count, report.per_z)));
    }
    if BigInt::from(report.sum_msgn) != report.det_z {
        return Err(TilingError::Inconsistent(format!("sum msgn {} but det Z {}", report.sum_msgn, report.det_z)));
    }
    if BigInt::from(report.sum_lpsgn) != report.det_n {
        return Err(TilingError::Inconsistent(format!("sum lpsgn {} but det N {}", report.sum_lpsgn, report.det_n)));
    }
    if report.det_z.abs() != report.det_n.abs() {
        return Err(TilingError::Inconsistent(format!("|det Z| {} but |det N| {}", report.det_z, report.det_n)));
    }
    Ok(report)
}
