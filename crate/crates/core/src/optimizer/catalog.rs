//! Representative topologies for every way a halving or a three-way equal
//! split of the unit triangle can meet its boundary.

use std::f64::consts::{FRAC_PI_3, PI};
use std::fmt;
use std::str::FromStr;

use super::topology::{InteriorPoints, LoopStep, TopologySpec};
use crate::error::{Error, Result};
use crate::geometry::{build_polygon, Point2, RegularPolygon};

/// Which catalog: two regions or three regions of the triangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CatalogId {
    Halves,
    Thirds,
}

impl FromStr for CatalogId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "3.1" | "halves" => Ok(CatalogId::Halves),
            "3.2" | "thirds" => Ok(CatalogId::Thirds),
            other => Err(Error::Domain(format!(
                "unknown catalog '{other}' (expected 3.1 or 3.2)"
            ))),
        }
    }
}

impl fmt::Display for CatalogId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CatalogId::Halves => "3.1",
            CatalogId::Thirds => "3.2",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CatalogCase {
    /// Roman numeral, "i" to "vi".
    pub id: &'static str,
    pub description: &'static str,
    pub spec: TopologySpec,
}

fn triangle() -> RegularPolygon {
    build_polygon(3).expect("n = 3")
}

/// Closed polyline around `center` starting and ending at angle `start`;
/// returns the start point and the guide between.
fn ring_guide(center: Point2, radius: f64, start: f64) -> (Point2, Vec<Point2>) {
    let guide = (1..16)
        .map(|j| center + Point2::polar(radius, start + 2.0 * PI * j as f64 / 16.0))
        .collect();
    (center + Point2::polar(radius, start), guide)
}

/// Arc around vertex `j` from side `j` to side `j - 1`.
fn corner_guide(poly: &RegularPolygon, j: usize, radius: f64) -> Vec<Point2> {
    let start = poly.side_angle(j);
    (1..8)
        .map(|i| {
            poly.vertex(j) + Point2::polar(radius, start + poly.interior_angle() * i as f64 / 8.0)
        })
        .collect()
}

/// Half-ellipse bulging inwards from side `side` between fractions `t0 < t1`.
fn bump_guide(poly: &RegularPolygon, side: usize, t0: f64, t1: f64, height: f64) -> Vec<Point2> {
    let dir = poly.side_direction(side);
    let inward = -poly.outward_normal(side);
    let centre = poly.side_point(side, 0.5 * (t0 + t1));
    let half = 0.5 * (t1 - t0);
    (1..8)
        .map(|i| {
            let phi = PI - PI * i as f64 / 8.0;
            centre + dir * (half * phi.cos()) + inward * (height * phi.sin())
        })
        .collect()
}

fn halves() -> Vec<CatalogCase> {
    let auto = InteriorPoints::Auto;

    let mut closed = TopologySpec::equipartition("closed loop", triangle(), 2);
    let (start, guide) = ring_guide(Point2::ORIGIN, 0.2, 0.0);
    let j = closed.add_junction("j", start);
    let e = closed.add_edge("loop", j, j, auto, guide);
    closed.add_region(vec![vec![LoopStep::forward(e)]]);

    let mut same = TopologySpec::equipartition("chord on one side", triangle(), 2);
    let guide = bump_guide(&same.polygon, 0, 0.3, 0.7, 0.2);
    let a = same.add_anchor("a", 0, 0.3);
    let b = same.add_anchor("b", 0, 0.7);
    let e = same.add_edge("cut", a, b, auto, guide);
    same.add_region(vec![vec![LoopStep::walk(a, b), LoopStep::backward(e)]]);

    let mut corner = TopologySpec::equipartition("chord across a corner", triangle(), 2);
    let a = corner.add_anchor("a", 0, 0.6);
    let b = corner.add_anchor("b", 2, 0.4);
    let e = corner.add_edge("cut", a, b, auto, vec![]);
    corner.add_region(vec![vec![LoopStep::walk(b, a), LoopStep::forward(e)]]);

    vec![
        CatalogCase {
            id: "i",
            description: "closed curve inside the triangle",
            spec: closed,
        },
        CatalogCase {
            id: "ii",
            description: "curve with both ends on one side",
            spec: same,
        },
        CatalogCase {
            id: "iii",
            description: "curve joining two adjacent sides",
            spec: corner,
        },
    ]
}

fn thirds() -> Vec<CatalogCase> {
    let auto = InteriorPoints::Auto;
    let straight = InteriorPoints::Count(0);

    let mut nested = TopologySpec::equipartition("nested loops", triangle(), 3);
    let (s_in, g_in) = ring_guide(Point2::ORIGIN, 0.12, 0.0);
    let (s_out, g_out) = ring_guide(Point2::ORIGIN, 0.26, 0.0);
    let ji = nested.add_junction("ji", s_in);
    let jo = nested.add_junction("jo", s_out);
    let inner = nested.add_edge("inner", ji, ji, auto, g_in);
    let outer = nested.add_edge("outer", jo, jo, auto, g_out);
    nested.add_region(vec![vec![LoopStep::forward(inner)]]);
    nested.add_region(vec![
        vec![LoopStep::forward(outer)],
        vec![LoopStep::backward(inner)],
    ]);

    let mut chord_loop = TopologySpec::equipartition("corner chord around a loop", triangle(), 3);
    let tri = chord_loop.polygon.clone();
    let centre = tri.vertex(0) + Point2::polar(0.48, FRAC_PI_3 / 2.0);
    let (s_loop, g_loop) = ring_guide(centre, 0.2, 0.0);
    let a = chord_loop.add_anchor("a", 0, 0.74);
    let b = chord_loop.add_anchor("b", 2, 0.26);
    let j = chord_loop.add_junction("j", s_loop);
    let chord = chord_loop.add_edge("chord", a, b, auto, corner_guide(&tri, 0, 0.74));
    let lp = chord_loop.add_edge("loop", j, j, auto, g_loop);
    chord_loop.add_region(vec![vec![LoopStep::forward(lp)]]);
    chord_loop.add_region(vec![
        vec![LoopStep::walk(b, a), LoopStep::forward(chord)],
        vec![LoopStep::backward(lp)],
    ]);

    let mut two_one =
        TopologySpec::equipartition("two ends on one side, one on another", triangle(), 3);
    let pa = two_one.add_anchor("a", 0, 0.15);
    let pb = two_one.add_anchor("b", 0, 0.85);
    let pc = two_one.add_anchor("c", 1, 0.5);
    let d = two_one.add_junction("d", Point2::new(0.0, -0.05));
    let e0 = two_one.add_edge("ad", pa, d, auto, vec![]);
    let e1 = two_one.add_edge("bd", pb, d, auto, vec![]);
    let e2 = two_one.add_edge("dc", d, pc, auto, vec![]);
    two_one.add_region(vec![vec![
        LoopStep::walk(pa, pb),
        LoopStep::forward(e1),
        LoopStep::backward(e0),
    ]]);
    two_one.add_region(vec![vec![
        LoopStep::walk(pb, pc),
        LoopStep::backward(e2),
        LoopStep::backward(e1),
    ]]);

    let mut three_one = TopologySpec::equipartition("three ends on one side", triangle(), 3);
    let pa = three_one.add_anchor("a", 0, 0.1);
    let pb = three_one.add_anchor("b", 0, 0.5);
    let pc = three_one.add_anchor("c", 0, 0.9);
    let d = three_one.add_junction("d", Point2::ORIGIN);
    let e0 = three_one.add_edge("ad", pa, d, auto, vec![]);
    let e1 = three_one.add_edge("bd", pb, d, auto, vec![]);
    let e2 = three_one.add_edge("cd", pc, d, auto, vec![]);
    three_one.add_region(vec![vec![
        LoopStep::walk(pa, pb),
        LoopStep::forward(e1),
        LoopStep::backward(e0),
    ]]);
    three_one.add_region(vec![vec![
        LoopStep::walk(pb, pc),
        LoopStep::forward(e2),
        LoopStep::backward(e1),
    ]]);

    let mut y = TopologySpec::equipartition("one end on each side", triangle(), 3);
    let ends = [
        y.add_anchor("a0", 0, 0.35),
        y.add_anchor("a1", 1, 0.6),
        y.add_anchor("a2", 2, 0.45),
    ];
    let d = y.add_junction("d", Point2::new(0.04, -0.03));
    let spokes: Vec<usize> = ends
        .iter()
        .enumerate()
        .map(|(i, &a)| y.add_edge(&format!("e{i}"), a, d, straight, vec![]))
        .collect();
    y.add_region(vec![vec![
        LoopStep::walk(ends[0], ends[1]),
        LoopStep::forward(spokes[1]),
        LoopStep::backward(spokes[0]),
    ]]);
    y.add_region(vec![vec![
        LoopStep::walk(ends[1], ends[2]),
        LoopStep::forward(spokes[2]),
        LoopStep::backward(spokes[1]),
    ]]);

    let mut two_cuts =
        TopologySpec::equipartition("corner cut and chord on the far side", triangle(), 3);
    let tri = two_cuts.polygon.clone();
    let a = two_cuts.add_anchor("a", 0, 0.5);
    let b = two_cuts.add_anchor("b", 2, 0.5);
    let c = two_cuts.add_anchor("c", 1, 0.25);
    let d = two_cuts.add_anchor("d", 1, 0.75);
    let arc = two_cuts.add_edge("corner", a, b, auto, corner_guide(&tri, 0, 0.5));
    let bump = two_cuts.add_edge("chord", c, d, auto, bump_guide(&tri, 1, 0.25, 0.75, 0.2));
    two_cuts.add_region(vec![vec![LoopStep::walk(b, a), LoopStep::forward(arc)]]);
    two_cuts.add_region(vec![vec![LoopStep::walk(c, d), LoopStep::backward(bump)]]);

    vec![
        CatalogCase {
            id: "i",
            description: "closed curves only",
            spec: nested,
        },
        CatalogCase {
            id: "ii",
            description: "one chord plus a closed curve",
            spec: chord_loop,
        },
        CatalogCase {
            id: "iii",
            description: "two ends on one side, one on another",
            spec: two_one,
        },
        CatalogCase {
            id: "iv",
            description: "three ends on one side",
            spec: three_one,
        },
        CatalogCase {
            id: "v",
            description: "one end on each side, meeting at a junction",
            spec: y,
        },
        CatalogCase {
            id: "vi",
            description: "two disjoint cuts",
            spec: two_cuts,
        },
    ]
}

/// One representative topology per case, in catalog order.
pub fn case_catalog(id: CatalogId) -> Vec<CatalogCase> {
    match id {
        CatalogId::Halves => halves(),
        CatalogId::Thirds => thirds(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_sizes() {
        assert_eq!(case_catalog(CatalogId::Halves).len(), 3);
        assert_eq!(case_catalog(CatalogId::Thirds).len(), 6);
    }

    #[test]
    fn every_case_validates() {
        for th in [CatalogId::Halves, CatalogId::Thirds] {
            for case in case_catalog(th) {
                case.spec
                    .validate()
                    .unwrap_or_else(|e| panic!("{th} {}: {e}", case.id));
            }
        }
    }

    #[test]
    fn parse_names() {
        assert_eq!("3.1".parse::<CatalogId>().unwrap(), CatalogId::Halves);
        assert_eq!("thirds".parse::<CatalogId>().unwrap(), CatalogId::Thirds);
        assert!("3.3".parse::<CatalogId>().is_err());
    }
}
