//! Explicit equal-area split systems and their validator.
//!
//! Every constructor emits its cut primitives together with the boundary loop of
//! each region, so areas are checked analytically and no planar arrangement is
//! ever computed.

use std::f64::consts::PI;
use std::fmt;

use crate::closed_form::{self, sector_minimum};
use crate::error::{domain, Result};
use crate::geometry::{
    build_polygon, loop_area, point_in_polygon, ArcSpec, BoundaryLoop, CurveChain, Location, Piece,
    Point2, RegularPolygon, Segment,
};

/// A single cut primitive.
#[derive(Debug, Clone, PartialEq)]
pub enum Cut {
    Segment(Segment),
    Arc(ArcSpec),
    Chain(CurveChain),
}

impl Cut {
    pub fn length(&self) -> f64 {
        match self {
            Cut::Segment(s) => s.length(),
            Cut::Arc(a) => a.length(),
            Cut::Chain(c) => c.length(),
        }
    }

    /// Points used for the containment check.
    fn probe_points(&self) -> Vec<Point2> {
        match self {
            Cut::Segment(s) => vec![s.a, s.b],
            Cut::Arc(a) => a.sample(64),
            Cut::Chain(c) => c.points().to_vec(),
        }
    }
}

/// A division of a polygon into `m` regions by a set of cuts.
#[derive(Debug, Clone, PartialEq)]
pub struct SplitSystem {
    pub label: String,
    pub polygon: RegularPolygon,
    pub m: usize,
    pub cuts: Vec<Cut>,
    pub regions: Vec<BoundaryLoop>,
    pub total_length: f64,
}

impl SplitSystem {
    fn new(
        label: &str,
        polygon: RegularPolygon,
        m: usize,
        cuts: Vec<Cut>,
        regions: Vec<BoundaryLoop>,
    ) -> Self {
        let total_length = cuts.iter().map(Cut::length).sum();
        Self {
            label: label.to_string(),
            polygon,
            m,
            cuts,
            regions,
            total_length,
        }
    }
}

/// Arc of the given radius centred on vertex `j`, spanning the interior angle.
/// It starts on side `j` and ends on side `j - 1`.
pub fn vertex_arc(poly: &RegularPolygon, j: usize, radius: f64) -> Result<ArcSpec> {
    let start = poly.side_angle(j);
    ArcSpec::new(poly.vertex(j), radius, start, start + poly.interior_angle())
}

fn prev_side(poly: &RegularPolygon, j: usize) -> usize {
    (j + poly.n() - 1) % poly.n()
}

/// Sector loop cut off at vertex `j` by `arc` (from [`vertex_arc`]).
fn corner_loop(poly: &RegularPolygon, j: usize, arc: &ArcSpec) -> BoundaryLoop {
    let r = arc.radius();
    let from = prev_side(poly, j) as f64 + 1.0 - r;
    BoundaryLoop::new(vec![
        Piece::Walk(poly.walk(from, j as f64 + r)),
        Piece::arc(*arc),
    ])
}

/// Arc at a vertex of the triangle enclosing half its area.
pub fn corner_arc_split() -> SplitSystem {
    let tri = build_polygon(3).expect("n = 3");
    let radius = sector_minimum(tri.area() / 2.0)
        .expect("positive area")
        .radius;
    let arc = vertex_arc(&tri, 0, radius).expect("valid arc");
    let sector = corner_loop(&tri, 0, &arc);
    let rest = BoundaryLoop::new(vec![
        Piece::Walk(tri.walk(radius, 3.0 - radius)),
        Piece::arc_reversed(arc),
    ]);
    SplitSystem::new(
        "corner-arc",
        tri,
        2,
        vec![Cut::Arc(arc)],
        vec![sector, rest],
    )
}

/// Straight spokes from `hub` to every side midpoint; one region per vertex.
pub fn midpoint_spokes(polygon: RegularPolygon, hub: Point2, label: &str) -> SplitSystem {
    let n = polygon.n();
    let cuts = (0..n)
        .map(|i| Cut::Segment(Segment::new(hub, polygon.side_midpoint(i))))
        .collect();
    let regions = (0..n)
        .map(|j| {
            let before = prev_side(&polygon, j);
            BoundaryLoop::new(vec![
                Piece::Walk(polygon.walk(before as f64 + 0.5, j as f64 + 0.5)),
                Piece::segment(polygon.side_midpoint(j), hub),
                Piece::segment(hub, polygon.side_midpoint(before)),
            ])
        })
        .collect();
    SplitSystem::new(label, polygon, n, cuts, regions)
}

/// Segments from the centroid of the triangle to its side midpoints.
pub fn y_split() -> SplitSystem {
    midpoint_spokes(build_polygon(3).expect("n = 3"), Point2::ORIGIN, "y-split")
}

/// One arc per triangle corner, each enclosing a quarter of the area.
pub fn three_corner_arcs() -> SplitSystem {
    let tri = build_polygon(3).expect("n = 3");
    let radius = sector_minimum(tri.area() / 4.0)
        .expect("positive area")
        .radius;
    let arcs: Vec<ArcSpec> = (0..3)
        .map(|j| vertex_arc(&tri, j, radius).expect("valid arc"))
        .collect();
    let mut regions: Vec<BoundaryLoop> = (0..3).map(|j| corner_loop(&tri, j, &arcs[j])).collect();
    let mut centre = Vec::new();
    for j in 0..3 {
        centre.push(Piece::Walk(
            tri.walk(j as f64 + radius, j as f64 + 1.0 - radius),
        ));
        centre.push(Piece::arc_reversed(arcs[(j + 1) % 3]));
    }
    regions.push(BoundaryLoop::new(centre));
    let cuts = arcs.into_iter().map(Cut::Arc).collect();
    SplitSystem::new("three-arcs", tri, 4, cuts, regions)
}

/// Three corner arcs enclosing a sixth each, joined to the centroid by spokes
/// along the medians.
pub fn median_arc_split() -> SplitSystem {
    let tri = build_polygon(3).expect("n = 3");
    let radius = sector_minimum(tri.area() / 6.0)
        .expect("positive area")
        .radius;
    let arcs: Vec<ArcSpec> = (0..3)
        .map(|j| vertex_arc(&tri, j, radius).expect("valid arc"))
        .collect();
    let feet: Vec<Point2> = arcs.iter().map(|a| a.point_at(a.mid_angle())).collect();

    let mut cuts: Vec<Cut> = arcs.iter().copied().map(Cut::Arc).collect();
    cuts.extend(
        feet.iter()
            .map(|&f| Cut::Segment(Segment::new(f, Point2::ORIGIN))),
    );

    let mut regions: Vec<BoundaryLoop> = (0..3).map(|j| corner_loop(&tri, j, &arcs[j])).collect();
    for j in 0..3 {
        let here = &arcs[j];
        let next = &arcs[(j + 1) % 3];
        // Half of the arc at vertex j from its foot back to side j, and the half
        // of the next arc from side j up to its foot.
        let to_side = here
            .sub_arc(here.start_angle(), here.mid_angle())
            .expect("half arc");
        let from_side = next
            .sub_arc(next.mid_angle(), next.end_angle())
            .expect("half arc");
        regions.push(BoundaryLoop::new(vec![
            Piece::segment(Point2::ORIGIN, feet[j]),
            Piece::arc_reversed(to_side),
            Piece::Walk(tri.walk(j as f64 + radius, j as f64 + 1.0 - radius)),
            Piece::arc_reversed(from_side),
            Piece::segment(feet[(j + 1) % 3], Point2::ORIGIN),
        ]));
    }
    SplitSystem::new("median-arc", tri, 6, cuts, regions)
}

/// The two perpendicular bisectors of the unit square.
pub fn square_cross_split() -> SplitSystem {
    let sq = build_polygon(4).expect("n = 4");
    let spokes = midpoint_spokes(sq.clone(), Point2::ORIGIN, "cross");
    let cuts = vec![
        Cut::Segment(Segment::new(sq.side_midpoint(0), sq.side_midpoint(2))),
        Cut::Segment(Segment::new(sq.side_midpoint(3), sq.side_midpoint(1))),
    ];
    SplitSystem::new("cross", sq, 4, cuts, spokes.regions)
}

/// A full-width cut leaving a bottom strip of area 1/3, and a vertical cut
/// halving the rest.
pub fn square_t_split() -> SplitSystem {
    let sq = build_polygon(4).expect("n = 4");
    let h = -0.5 + 1.0 / 3.0;
    let left = Point2::new(-0.5, h);
    let right = Point2::new(0.5, h);
    let foot = Point2::new(0.0, h);
    let top = Point2::new(0.0, 0.5);
    // Boundary parameters: left side runs downwards (side 3), right side upwards (side 1).
    let s_left = 3.0 + (0.5 - h);
    let s_right = 1.0 + (h + 0.5);
    let s_top = 2.5;
    let cuts = vec![
        Cut::Segment(Segment::new(left, right)),
        Cut::Segment(Segment::new(foot, top)),
    ];
    let regions = vec![
        BoundaryLoop::new(vec![
            Piece::Walk(sq.walk(s_left, s_right)),
            Piece::segment(right, left),
        ]),
        BoundaryLoop::new(vec![
            Piece::Walk(sq.walk(s_right, s_top)),
            Piece::segment(top, foot),
            Piece::segment(foot, right),
        ]),
        BoundaryLoop::new(vec![
            Piece::Walk(sq.walk(s_top, s_left)),
            Piece::segment(left, foot),
            Piece::segment(foot, top),
        ]),
    ];
    SplitSystem::new("t-split", sq, 3, cuts, regions)
}

/// Inner regular `n`-gon of side `1/sqrt(n+1)` whose vertices face the outer side
/// midpoints, plus a spoke from each inner vertex to that midpoint.
pub fn annulus_split(n: usize) -> Result<SplitSystem> {
    if n < 3 {
        return domain(format!("annulus split needs n >= 3, got {n}"));
    }
    let poly = build_polygon(n)?;
    let side = (1.0 / (n as f64 + 1.0)).sqrt();
    let inner_r = side / (2.0 * (PI / n as f64).sin());
    let inner: Vec<Point2> = (0..n).map(|k| poly.outward_normal(k) * inner_r).collect();
    let mids: Vec<Point2> = (0..n).map(|k| poly.side_midpoint(k)).collect();

    let mut cuts: Vec<Cut> = (0..n)
        .map(|k| Cut::Segment(Segment::new(inner[k], inner[(k + 1) % n])))
        .collect();
    for k in 0..n {
        // At n = 3 the spokes have zero length and the inner triangle is medial.
        if inner[k].dist(mids[k]) > 1e-14 {
            cuts.push(Cut::Segment(Segment::new(inner[k], mids[k])));
        }
    }

    let mut regions = vec![BoundaryLoop::new(
        (0..n)
            .map(|k| Piece::segment(inner[k], inner[(k + 1) % n]))
            .collect(),
    )];
    for k in 0..n {
        let k1 = (k + 1) % n;
        regions.push(BoundaryLoop::new(vec![
            Piece::Walk(poly.walk(k as f64 + 0.5, k as f64 + 1.5)),
            Piece::segment(mids[k1], inner[k1]),
            Piece::segment(inner[k1], inner[k]),
            Piece::segment(inner[k], mids[k]),
        ]));
    }
    Ok(SplitSystem::new(
        &format!("annulus:{n}"),
        poly,
        n + 1,
        cuts,
        regions,
    ))
}

/// Identifiers accepted by [`construct`].
pub const CASE_IDS: [&str; 7] = [
    "corner-arc",
    "y-split",
    "three-arcs",
    "median-arc",
    "t-split",
    "cross",
    "annulus:<n>",
];

/// Builds a shipped construction from its identifier.
pub fn construct(case_id: &str) -> Result<SplitSystem> {
    Ok(match case_id {
        "corner-arc" => corner_arc_split(),
        "y-split" => y_split(),
        "three-arcs" => three_corner_arcs(),
        "median-arc" => median_arc_split(),
        "t-split" => square_t_split(),
        "cross" => square_cross_split(),
        other => match other.strip_prefix("annulus:").map(str::parse::<usize>) {
            Some(Ok(n)) => annulus_split(n)?,
            _ => return domain(format!("unknown construction '{other}'")),
        },
    })
}

/// All seven constructions, with the annulus at `n = 4`.
pub fn shipped() -> Vec<SplitSystem> {
    vec![
        corner_arc_split(),
        y_split(),
        three_corner_arcs(),
        median_arc_split(),
        square_t_split(),
        square_cross_split(),
        annulus_split(4).expect("n = 4"),
    ]
}

/// Outcome of [`validate_split`].
#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub label: String,
    pub m: usize,
    pub n: usize,
    pub region_areas: Vec<f64>,
    pub target_area: f64,
    pub max_area_deviation: f64,
    pub total_length: f64,
    pub recorded_length: f64,
    pub contained: bool,
    pub lower_bound: f64,
    pub failures: Vec<String>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "construction      {}", self.label)?;
        writeln!(f, "polygon n         {}", self.n)?;
        writeln!(f, "regions m         {}", self.m)?;
        writeln!(f, "target area       {:.10}", self.target_area)?;
        for (i, a) in self.region_areas.iter().enumerate() {
            writeln!(f, "  region {i:<3}      {a:.10}")?;
        }
        writeln!(f, "max deviation     {:.3e}", self.max_area_deviation)?;
        writeln!(f, "total length      {:.10}", self.total_length)?;
        writeln!(f, "lower bound       {:.10}", self.lower_bound)?;
        writeln!(f, "contained         {}", self.contained)?;
        if self.passed() {
            write!(f, "status            PASS")
        } else {
            write!(f, "status            FAIL ({})", self.failures.join("; "))
        }
    }
}

/// Checks region count, equal areas within `tol`, length bookkeeping,
/// containment of every cut and consistency with the isoperimetric lower bound.
pub fn validate_split(s: &SplitSystem, tol: f64) -> ValidationReport {
    let poly = &s.polygon;
    let target_area = poly.area() / s.m as f64;
    let mut failures = Vec::new();

    if s.regions.len() != s.m {
        failures.push(format!(
            "expected {} regions, found {}",
            s.m,
            s.regions.len()
        ));
    }
    let mut region_areas = Vec::with_capacity(s.regions.len());
    for (i, lp) in s.regions.iter().enumerate() {
        match loop_area(lp) {
            Ok(a) => region_areas.push(a),
            Err(e) => {
                failures.push(format!("region {i}: {e}"));
                region_areas.push(f64::NAN);
            }
        }
    }
    let max_area_deviation =
        region_areas
            .iter()
            .map(|a| (a - target_area).abs())
            .fold(0.0, |acc: f64, d| {
                if d.is_nan() {
                    f64::INFINITY
                } else {
                    acc.max(d)
                }
            });
    if !(max_area_deviation <= tol) {
        failures.push(format!(
            "area deviation {max_area_deviation:.3e} exceeds {tol:.1e}"
        ));
    }

    let total_length: f64 = s.cuts.iter().map(Cut::length).sum();
    if (total_length - s.total_length).abs() > 1e-12 * (1.0 + total_length) {
        failures.push(format!(
            "recorded length {} differs from cut sum {}",
            s.total_length, total_length
        ));
    }

    let contained = s
        .cuts
        .iter()
        .flat_map(Cut::probe_points)
        .all(|p| point_in_polygon(p, poly) != Location::Outside);
    if !contained {
        failures.push("a cut leaves the polygon".to_string());
    }

    let lower_bound = closed_form::lower_bound(s.m.max(1), poly.n()).unwrap_or(0.0);
    if total_length < lower_bound - tol {
        failures.push(format!(
            "length {total_length} is below the lower bound {lower_bound}"
        ));
    }

    ValidationReport {
        label: s.label.clone(),
        m: s.m,
        n: poly.n(),
        region_areas,
        target_area,
        max_area_deviation,
        total_length,
        recorded_length: s.total_length,
        contained,
        lower_bound,
        failures,
    }
}
