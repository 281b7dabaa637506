//! SVG and ASCII pictures of triangular regions and their tilings.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;

use lefschetz_core::{Monomial, Tiling, TriangularRegion};

/// Side of a unit triangle in pixels.
pub const UNIT_PX: f64 = 50.0;
const MARGIN_PX: f64 = 10.0;
const H: f64 = 0.866_025_403_784_438_6;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum PunctureStyle {
    /// Removed triangles filled dark gray.
    #[default]
    Shaded,
    /// Removed triangles left blank.
    Removed,
}

/// A lattice point: `x` in half units, `y` in triangle heights.
type Pt = (i64, i64);

fn up_vertices(m: &Monomial) -> [Pt; 3] {
    let (a, c) = (m.x() as i64, m.z() as i64);
    [(2 * c + a, a), (2 * c + a + 2, a), (2 * c + a + 1, a + 1)]
}

fn down_vertices(m: &Monomial) -> [Pt; 3] {
    let (p, r) = (m.x() as i64, m.z() as i64);
    [(2 * r + p + 1, p + 1), (2 * r + p + 3, p + 1), (2 * r + p + 2, p)]
}

struct Canvas {
    d: u32,
    body: String,
}

impl Canvas {
    fn point(&self, (x2, yh): Pt) -> String {
        let x = MARGIN_PX + x2 as f64 * UNIT_PX / 2.0;
        let y = MARGIN_PX + (self.d as i64 - yh) as f64 * H * UNIT_PX;
        format!("{x:.3},{y:.3}")
    }

    fn polygon(&mut self, class: &str, fill: &str, stroke: &str, pts: &[Pt]) {
        let points: Vec<String> = pts.iter().map(|p| self.point(*p)).collect();
        writeln!(
            self.body,
            r#"  <polygon class="{class}" points="{}" fill="{fill}" stroke="{stroke}" stroke-width="1"/>"#,
            points.join(" ")
        )
        .expect("string write");
    }
}

/// Lozenges that every tiling must contain: repeatedly pair a triangle that
/// has a single free neighbour with that neighbour.
pub fn forced_lozenges(t: &TriangularRegion) -> BTreeSet<(Monomial, Monomial)> {
    let mut free_up: BTreeSet<Monomial> = t.up().iter().copied().collect();
    let mut free_down: BTreeSet<Monomial> = t.down().iter().copied().collect();
    let mut forced = BTreeSet::new();
    loop {
        let mut found = None;
        for n in &free_down {
            let nbrs: Vec<Monomial> = t.up_neighbors(n).filter(|u| free_up.contains(u)).collect();
            if let [u] = nbrs.as_slice() {
                found = Some((*n, *u));
                break;
            }
        }
        if found.is_none() {
            for u in &free_up {
                let nbrs: Vec<Monomial> = lefschetz_core::Var::ALL
                    .iter()
                    .filter_map(|v| u.div_var(*v))
                    .filter(|n| free_down.contains(n))
                    .collect();
                if let [n] = nbrs.as_slice() {
                    found = Some((*n, *u));
                    break;
                }
            }
        }
        match found {
            Some((n, u)) => {
                free_down.remove(&n);
                free_up.remove(&u);
                forced.insert((n, u));
            }
            None => return forced,
        }
    }
}

/// Rhombus outline: up apex, shared vertex, down apex, shared vertex.
fn rhombus(down: &Monomial, up: &Monomial) -> Vec<Pt> {
    let u = up_vertices(up);
    let n = down_vertices(down);
    let shared: Vec<Pt> = u.iter().filter(|p| n.contains(p)).copied().collect();
    let u_only = u.iter().find(|p| !n.contains(p)).copied().expect("adjacent triangles");
    let n_only = n.iter().find(|p| !u.contains(p)).copied().expect("adjacent triangles");
    vec![u_only, shared[0], n_only, shared[1]]
}

/// Deterministic SVG 1.1 drawing of `t`, with the lozenges of `tiling` fused
/// into rhombi (forced ones light gray).
pub fn render_svg(t: &TriangularRegion, tiling: Option<&Tiling>, style: PunctureStyle) -> String {
    let d = t.degree();
    let mut canvas = Canvas { d, body: String::new() };
    let width = 2.0 * MARGIN_PX + d as f64 * UNIT_PX;
    let height = 2.0 * MARGIN_PX + d as f64 * H * UNIT_PX;
    canvas.polygon("outline", "none", "#000000", &[(0, 0), (2 * d as i64, 0), (d as i64, d as i64)]);

    if style == PunctureStyle::Shaded {
        let removed = t.removed();
        for m in removed.up() {
            canvas.polygon("removed", "#404040", "#404040", &up_vertices(m));
        }
        for m in removed.down() {
            canvas.polygon("removed", "#404040", "#404040", &down_vertices(m));
        }
    }

    let pairs: BTreeMap<Monomial, Monomial> = tiling.map(|x| x.pairs().clone()).unwrap_or_default();
    let covered_up: BTreeSet<Monomial> = pairs.values().copied().collect();
    for m in t.up().iter().filter(|m| !covered_up.contains(m)) {
        canvas.polygon("up", "#ffffff", "#808080", &up_vertices(m));
    }
    for m in t.down().iter().filter(|m| !pairs.contains_key(m)) {
        canvas.polygon("down", "#ffffff", "#808080", &down_vertices(m));
    }
    if !pairs.is_empty() {
        let forced = forced_lozenges(t);
        for (n, u) in &pairs {
            let (class, fill) = if forced.contains(&(*n, *u)) {
                ("lozenge fixed", "#d3d3d3")
            } else {
                ("lozenge", "#ffffff")
            };
            canvas.polygon(class, fill, "#000000", &rhombus(n, u));
        }
    }

    format!(
        concat!(
            "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n",
            "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w:.3}\" height=\"{h:.3}\" viewBox=\"0 0 {w:.3} {h:.3}\">\n",
            "{body}</svg>\n"
        ),
        w = width,
        h = height,
        body = canvas.body
    )
}

/// One text row per horizontal strip, top first: `^`/`v` for present up/down
/// triangles, `#` for removed ones.
pub fn render_ascii(t: &TriangularRegion) -> String {
    let d = t.degree();
    let mut out = String::new();
    for a in (0..d).rev() {
        let mut row = " ".repeat(a as usize);
        let width = d - a;
        for c in 0..width {
            let y = width - 1 - c;
            row.push(if t.has_up(&Monomial::new(a, y, c)) { '^' } else { '#' });
            if c + 1 < width {
                let down = Monomial::new(a, y - 1, c);
                row.push(if t.has_down(&down) { 'v' } else { '#' });
            }
        }
        out.push_str(row.trim_end());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use lefschetz_core::tiling::enumerate_tilings;
    use lefschetz_core::{build_region, parse_ideal, MonomialIdeal};

    fn hexagon() -> TriangularRegion {
        build_region(&MonomialIdeal::complete_intersection(2, 2, 2), 3)
    }

    #[test]
    fn geometry_of_unit_triangles() {
        // the up triangle x^a y^b z^c sits at (c + a/2, a h)
        assert_eq!(up_vertices(&Monomial::new(1, 0, 2)), [(5, 1), (7, 1), (6, 2)]);
        assert_eq!(down_vertices(&Monomial::new(0, 0, 0)), [(1, 1), (3, 1), (2, 0)]);
    }

    #[test]
    fn down_triangles_touch_their_up_neighbours() {
        let t = TriangularRegion::full(5);
        for n in t.down() {
            for u in t.up_neighbors(n) {
                let shared = up_vertices(&u).iter().filter(|p| down_vertices(n).contains(p)).count();
                assert_eq!(shared, 2, "{n} {u}");
            }
        }
    }

    #[test]
    fn unit_hexagon() {
        let t = hexagon();
        let svg = render_svg(&t, None, PunctureStyle::Removed);
        assert_eq!(svg.matches("class=\"up\"").count() + svg.matches("class=\"down\"").count(), 6);
        assert!(!svg.contains("#404040"));
        let tiling = enumerate_tilings(&t).next().unwrap();
        let svg = render_svg(&t, Some(&tiling), PunctureStyle::Removed);
        assert_eq!(svg.matches("class=\"lozenge").count(), 3);
        assert_eq!(svg.matches("class=\"up\"").count(), 0);
    }

    #[test]
    fn punctures_shaded() {
        let t = build_region(&parse_ideal("x^4,y^4,z^4,x^2*z^2").unwrap(), 5);
        let svg = render_svg(&t, None, PunctureStyle::Shaded);
        assert_eq!(svg.matches("class=\"removed\"").count(), 4);
        assert_eq!(svg, render_svg(&t, None, PunctureStyle::Shaded));
    }

    #[test]
    fn ascii_full_triangle() {
        assert_eq!(render_ascii(&TriangularRegion::full(3)), "  ^\n ^v^\n^v^v^\n");
        let t = build_region(&MonomialIdeal::complete_intersection(2, 2, 2), 3);
        assert_eq!(render_ascii(&t), "  #\n ^v^\n#v^v#\n");
    }

    #[test]
    fn forced_on_six_generator_region() {
        let t = build_region(&parse_ideal("x^7,y^7,z^6,x*y^4*z^2,x^3*y*z^2,x^4*y*z").unwrap(), 8);
        let forced = forced_lozenges(&t);
        for tiling in enumerate_tilings(&t) {
            for (n, u) in &forced {
                assert_eq!(tiling.partner_of_down(n), Some(*u));
            }
        }
    }
}
