//! Triangular regions: subsets of the unit triangles of the side-`d` triangle.
//!
//! An upward triangle carries a label of degree `d - 1` and a downward one a
//! label of degree `d - 2`. A downward triangle `n` shares an edge with the
//! upward triangles `x·n`, `y·n` and `z·n`, so every adjacency question is a
//! question about exponents.
//!
//! Lattice points of the big triangle are triples `(i, j, k)` with
//! `i + j + k = d`. The upward triangle `x^a y^b z^c` has corners
//! `(a+1, b, c)`, `(a, b+1, c)`, `(a, b, c+1)` and the puncture of a generator
//! `g` is the closed triangle `{i >= g_x, j >= g_y, k >= g_z}`.

use std::collections::BTreeSet;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::ideal::{monomials_of_degree, Monomial, MonomialIdeal, Var};
use crate::tiling::Tiling;

/// Lattice vertices sit on the edges joining an upward triangle `m` to the
/// downward triangle `m / y`; the vertex carries the label `m`.
pub const LATTICE_VAR: Var = Var::Y;

#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct TriangularRegion {
    d: u32,
    up: Vec<Monomial>,
    down: Vec<Monomial>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RegionError {
    #[error("degree must be at least 1")]
    ZeroDegree,
    #[error("label {label} has degree {found}, expected {expected}")]
    BadLabel { label: Monomial, found: u32, expected: u32 },
}

impl TriangularRegion {
    /// `T_d(I)`: the triangles whose labels lie outside `I`.
    pub fn from_ideal(ideal: &MonomialIdeal, d: u32) -> Self {
        assert!(d >= 1, "triangular regions need d >= 1");
        let up = ideal.standard_monomials(d - 1);
        let down = if d >= 2 { ideal.standard_monomials(d - 2) } else { Vec::new() };
        TriangularRegion { d, up, down }
    }

    /// The whole side-`d` triangle.
    pub fn full(d: u32) -> Self {
        Self::from_ideal(&MonomialIdeal::zero(), d)
    }

    pub fn empty(d: u32) -> Self {
        TriangularRegion { d, up: Vec::new(), down: Vec::new() }
    }

    pub fn from_parts(
        d: u32,
        up: impl IntoIterator<Item = Monomial>,
        down: impl IntoIterator<Item = Monomial>,
    ) -> Result<Self, RegionError> {
        if d == 0 {
            return Err(RegionError::ZeroDegree);
        }
        let up: BTreeSet<Monomial> = up.into_iter().collect();
        let down: BTreeSet<Monomial> = down.into_iter().collect();
        for m in &up {
            if m.degree() != d - 1 {
                return Err(RegionError::BadLabel { label: *m, found: m.degree(), expected: d - 1 });
            }
        }
        for m in &down {
            if m.degree() + 2 != d {
                return Err(RegionError::BadLabel {
                    label: *m,
                    found: m.degree(),
                    expected: d.saturating_sub(2),
                });
            }
        }
        Ok(TriangularRegion { d, up: up.into_iter().collect(), down: down.into_iter().collect() })
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    /// Upward triangles, ascending.
    pub fn up(&self) -> &[Monomial] {
        &self.up
    }

    /// Downward triangles, ascending.
    pub fn down(&self) -> &[Monomial] {
        &self.down
    }

    pub fn n_up(&self) -> usize {
        self.up.len()
    }

    pub fn n_down(&self) -> usize {
        self.down.len()
    }

    pub fn is_empty(&self) -> bool {
        self.up.is_empty() && self.down.is_empty()
    }

    pub fn up_index(&self, m: &Monomial) -> Option<usize> {
        self.up.binary_search(m).ok()
    }

    pub fn down_index(&self, m: &Monomial) -> Option<usize> {
        self.down.binary_search(m).ok()
    }

    pub fn has_up(&self, m: &Monomial) -> bool {
        self.up_index(m).is_some()
    }

    pub fn has_down(&self, m: &Monomial) -> bool {
        self.down_index(m).is_some()
    }

    /// Upward neighbours of a downward triangle, in x, y, z order.
    pub fn up_neighbors(&self, n: &Monomial) -> impl Iterator<Item = Monomial> + '_ {
        let n = *n;
        Var::ALL.into_iter().map(move |v| n.mul_var(v)).filter(|m| self.has_up(m))
    }

    /// Upward triangles `m` whose lattice edge is not shared with a downward
    /// triangle, i.e. `m / LATTICE_VAR` is absent. These start lattice paths.
    pub fn a_vertices(&self) -> Vec<Monomial> {
        self.up
            .iter()
            .filter(|m| m.div_var(LATTICE_VAR).is_none_or(|n| !self.has_down(&n)))
            .copied()
            .collect()
    }

    /// Downward triangles `n` whose lattice partner `LATTICE_VAR·n` is absent.
    /// These end lattice paths; the vertex label is `LATTICE_VAR·n`.
    pub fn e_vertices(&self) -> Vec<Monomial> {
        self.down
            .iter()
            .filter(|n| !self.has_up(&n.mul_var(LATTICE_VAR)))
            .copied()
            .collect()
    }

    pub fn balance(&self) -> Balance {
        Balance::new(self.n_up(), self.n_down())
    }

    pub fn without(&self, up: &[Monomial], down: &[Monomial]) -> TriangularRegion {
        let up_drop: BTreeSet<&Monomial> = up.iter().collect();
        let down_drop: BTreeSet<&Monomial> = down.iter().collect();
        TriangularRegion {
            d: self.d,
            up: self.up.iter().filter(|m| !up_drop.contains(m)).copied().collect(),
            down: self.down.iter().filter(|m| !down_drop.contains(m)).copied().collect(),
        }
    }

    /// Triangles of `self` not in `other`.
    pub fn difference(&self, other: &TriangularRegion) -> TriangularRegion {
        TriangularRegion {
            d: self.d,
            up: self.up.iter().filter(|m| !other.has_up(m)).copied().collect(),
            down: self.down.iter().filter(|m| !other.has_down(m)).copied().collect(),
        }
    }

    /// Triangles of the full triangle missing from `self`.
    pub fn removed(&self) -> TriangularRegion {
        TriangularRegion::full(self.d).difference(self)
    }

    /// The part of the region inside the puncture of `m`, i.e. the triangles
    /// whose labels are divisible by `m`.
    pub fn monomial_subregion(&self, m: &Monomial) -> TriangularRegion {
        TriangularRegion {
            d: self.d,
            up: self.up.iter().filter(|u| m.divides(u)).copied().collect(),
            down: self.down.iter().filter(|n| m.divides(n)).copied().collect(),
        }
    }

    /// Re-labels a region whose labels are all divisible by `m` as a region
    /// of the triangle of side `d - deg(m)`.
    pub fn quotient_by(&self, m: &Monomial) -> Option<TriangularRegion> {
        let d = self.d.checked_sub(m.degree()).filter(|d| *d >= 1)?;
        let up = self.up.iter().map(|u| u.div(m)).collect::<Option<Vec<_>>>()?;
        let down = self.down.iter().map(|n| n.div(m)).collect::<Option<Vec<_>>>()?;
        Some(TriangularRegion { d, up, down })
    }

    /// Splits along the line `alpha` rows above the bottom edge into the
    /// triangles with x-exponent at least `alpha` (upper) and the rest.
    pub fn split_portions(&self, alpha: u32) -> (TriangularRegion, TriangularRegion) {
        let upper = self.monomial_subregion(&Monomial::new(alpha, 0, 0));
        let lower = self.difference(&upper);
        (upper, lower)
    }

    /// Whether every triangle is covered by some lozenge.
    pub fn is_tileable(&self) -> Tileability {
        let balance = self.balance();
        if balance.kind != BalanceKind::Balanced {
            return Tileability::Unbalanced(balance);
        }
        let adj: Vec<Vec<usize>> = self
            .down
            .iter()
            .map(|n| self.up_neighbors(n).filter_map(|u| self.up_index(&u)).collect())
            .collect();
        let matching = crate::matching::maximum_matching(&adj, self.n_up());
        if matching.size == self.n_down() {
            let pairs = matching
                .pair_of_left
                .iter()
                .enumerate()
                .map(|(i, j)| (self.down[i], self.up[j.expect("perfect matching")]));
            Tileability::Tileable(Tiling::from_pairs(pairs))
        } else {
            let (left, right) = matching.hall_violator(&adj);
            Tileability::HallViolator {
                down: left.into_iter().map(|i| self.down[i]).collect(),
                neighbors: right.into_iter().map(|j| self.up[j]).collect(),
            }
        }
    }

    /// Balanced subregions obtained by deleting `excess` triangles of the
    /// heavier orientation, in lexicographic order of the deleted positions.
    pub fn maximal_minors(&self) -> impl Iterator<Item = TriangularRegion> + '_ {
        let balance = self.balance();
        let heavy_up = balance.kind == BalanceKind::UpHeavy;
        let pool: Vec<Monomial> = if heavy_up { self.up.clone() } else { self.down.clone() };
        self.minors_from_pool(pool, balance.excess(), heavy_up)
    }

    /// Maximal minors deleting only A-vertex upward triangles (when
    /// up-heavy) or E-vertex downward triangles (when down-heavy).
    pub fn restricted_maximal_minors(&self) -> impl Iterator<Item = TriangularRegion> + '_ {
        let balance = self.balance();
        let heavy_up = balance.kind == BalanceKind::UpHeavy;
        let pool = if heavy_up { self.a_vertices() } else { self.e_vertices() };
        self.minors_from_pool(pool, balance.excess(), heavy_up)
    }

    fn minors_from_pool(
        &self,
        pool: Vec<Monomial>,
        k: usize,
        heavy_up: bool,
    ) -> impl Iterator<Item = TriangularRegion> + '_ {
        pool.into_iter().combinations(k).map(move |drop| {
            if heavy_up {
                self.without(&drop, &[])
            } else {
                self.without(&[], &drop)
            }
        })
    }
}

pub fn build_region(ideal: &MonomialIdeal, d: u32) -> TriangularRegion {
    TriangularRegion::from_ideal(ideal, d)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tileability {
    Tileable(Tiling),
    Unbalanced(Balance),
    /// A set of downward triangles with fewer upward neighbours than members.
    HallViolator { down: Vec<Monomial>, neighbors: Vec<Monomial> },
}

impl Tileability {
    pub fn is_tileable(&self) -> bool {
        matches!(self, Tileability::Tileable(_))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BalanceKind {
    /// More downward than upward triangles.
    DownHeavy,
    Balanced,
    /// More upward than downward triangles.
    UpHeavy,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Balance {
    #[serde(rename = "up")]
    pub n_up: usize,
    #[serde(rename = "down")]
    pub n_down: usize,
    pub kind: BalanceKind,
}

impl Balance {
    pub fn new(n_up: usize, n_down: usize) -> Self {
        let kind = match n_up.cmp(&n_down) {
            std::cmp::Ordering::Less => BalanceKind::DownHeavy,
            std::cmp::Ordering::Equal => BalanceKind::Balanced,
            std::cmp::Ordering::Greater => BalanceKind::UpHeavy,
        };
        Balance { n_up, n_down, kind }
    }

    pub fn excess(&self) -> usize {
        self.n_up.abs_diff(self.n_down)
    }
}

/// The puncture cut out of `T_d(I)` by one minimal generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Puncture {
    pub generator: Monomial,
    pub side_length: u32,
    pub touches_boundary: bool,
    pub floating: bool,
    /// Generators whose punctures share at least an edge with this one.
    pub overlap_partners: Vec<Monomial>,
    /// Generators whose punctures share exactly one vertex with this one.
    pub touch_partners: Vec<Monomial>,
}

/// Overlap iff the common part `lcm(g1, g2)` still has positive side length;
/// touch iff it degenerates to the single point of degree `d`.
pub fn punctures_meet(g1: &Monomial, g2: &Monomial, d: u32) -> PunctureContact {
    let l = g1.lcm(g2).degree();
    if l < d {
        PunctureContact::Overlap
    } else if l == d {
        PunctureContact::Touch
    } else {
        PunctureContact::Disjoint
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PunctureContact {
    Overlap,
    Touch,
    Disjoint,
}

pub fn puncture_analysis(ideal: &MonomialIdeal, d: u32) -> Vec<Puncture> {
    let gens: Vec<Monomial> = ideal.generators().iter().filter(|g| g.degree() < d).copied().collect();
    let mut punctures: Vec<Puncture> = gens
        .iter()
        .map(|g| {
            let mut overlap_partners = Vec::new();
            let mut touch_partners = Vec::new();
            for h in gens.iter().filter(|h| *h != g) {
                match punctures_meet(g, h, d) {
                    PunctureContact::Overlap => overlap_partners.push(*h),
                    PunctureContact::Touch => touch_partners.push(*h),
                    PunctureContact::Disjoint => {}
                }
            }
            Puncture {
                generator: *g,
                side_length: d - g.degree(),
                touches_boundary: g.exponents().contains(&0),
                floating: true,
                overlap_partners,
                touch_partners,
            }
        })
        .collect();
    let grounded = non_floating_closure(&punctures, 0..punctures.len());
    for (i, p) in punctures.iter_mut().enumerate() {
        p.floating = !grounded.contains(&i);
    }
    punctures
}

/// Indices of non-floating punctures: seeded from the boundary-touching ones
/// (restricted to `seed_order`'s order of visiting) and closed under
/// overlap/touch.
pub(crate) fn non_floating_closure(
    punctures: &[Puncture],
    seed_order: impl IntoIterator<Item = usize>,
) -> BTreeSet<usize> {
    let index_of = |g: &Monomial| punctures.iter().position(|p| p.generator == *g);
    let mut grounded = BTreeSet::new();
    let mut stack: Vec<usize> = seed_order
        .into_iter()
        .filter(|i| punctures[*i].touches_boundary)
        .collect();
    while let Some(i) = stack.pop() {
        if !grounded.insert(i) {
            continue;
        }
        let p = &punctures[i];
        for g in p.overlap_partners.iter().chain(&p.touch_partners) {
            if let Some(j) = index_of(g) {
                if !grounded.contains(&j) {
                    stack.push(j);
                }
            }
        }
    }
    grounded
}

/// Repeatedly replaces two overlapping or touching punctures by their
/// covering puncture (the gcd of the generators), provided the part of the
/// cover outside both punctures meets no other puncture.
pub fn merge_touching_punctures(ideal: &MonomialIdeal, d: u32) -> MonomialIdeal {
    let mut current = ideal.clone();
    'outer: loop {
        let gens: Vec<Monomial> =
            current.generators().iter().filter(|g| g.degree() < d).copied().collect();
        for (i, g1) in gens.iter().enumerate() {
            for g2 in &gens[i + 1..] {
                if punctures_meet(g1, g2, d) == PunctureContact::Disjoint {
                    continue;
                }
                let cover = g1.gcd(g2);
                let gap = TriangularRegion::full(d)
                    .monomial_subregion(&cover)
                    .without_divisible_by(&[*g1, *g2]);
                let others: Vec<Monomial> =
                    gens.iter().filter(|g| *g != g1 && *g != g2).copied().collect();
                if gap.triangles().any(|t| others.iter().any(|g| g.divides(&t))) {
                    continue;
                }
                current = current.with_generator(cover);
                continue 'outer;
            }
        }
        return current;
    }
}

impl TriangularRegion {
    fn without_divisible_by(&self, gens: &[Monomial]) -> TriangularRegion {
        let keep = |m: &&Monomial| !gens.iter().any(|g| g.divides(m));
        TriangularRegion {
            d: self.d,
            up: self.up.iter().filter(keep).copied().collect(),
            down: self.down.iter().filter(keep).copied().collect(),
        }
    }

    /// All labels, upward then downward.
    pub fn triangles(&self) -> impl Iterator<Item = Monomial> + '_ {
        self.up.iter().chain(self.down.iter()).copied()
    }

    /// Every monomial subregion, one per monomial of degree below `d`.
    pub fn monomial_subregions(&self) -> impl Iterator<Item = (Monomial, TriangularRegion)> + '_ {
        (0..self.d)
            .flat_map(monomials_of_degree)
            .map(|m| (m, self.monomial_subregion(&m)))
    }
}
