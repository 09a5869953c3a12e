//! Planar primitives: points, regular polygons, arcs, polylines and boundary loops.
//!
//! Every polygon is built in a canonical pose: unit side length, centroid at the
//! origin, side 0 horizontal at the bottom, vertices counterclockwise. A point on
//! the boundary is addressed by a parameter `s` in `[0, n)`: side `floor(s)`,
//! fraction `s - floor(s)` along it.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{Matrix2, Matrix3, SymmetricEigen, Vector3};

use crate::error::{domain, Error, Result};

/// Pieces of a loop must chain within this distance.
pub const LOOP_CLOSURE_TOL: f64 = 1e-9;

/// Distance below which a point counts as lying on a polygon edge.
pub const BOUNDARY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const ORIGIN: Point2 = Point2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn polar(radius: f64, angle: f64) -> Self {
        Self::new(radius * angle.cos(), radius * angle.sin())
    }

    pub fn dot(self, o: Point2) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the 3D cross product.
    pub fn cross(self, o: Point2) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dist(self, o: Point2) -> f64 {
        (self - o).norm()
    }

    pub fn lerp(self, o: Point2, t: f64) -> Point2 {
        self + (o - self) * t
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// Counterclockwise rotation by 90 degrees.
    pub fn perp(self) -> Point2 {
        Point2::new(-self.y, self.x)
    }
}

impl Add for Point2 {
    type Output = Point2;
    fn add(self, o: Point2) -> Point2 {
        Point2::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point2 {
    type Output = Point2;
    fn sub(self, o: Point2) -> Point2 {
        Point2::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point2 {
    type Output = Point2;
    fn mul(self, s: f64) -> Point2 {
        Point2::new(self.x * s, self.y * s)
    }
}

impl Neg for Point2 {
    type Output = Point2;
    fn neg(self) -> Point2 {
        Point2::new(-self.x, -self.y)
    }
}

impl fmt::Display for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:.10}, {:.10})", self.x, self.y)
    }
}

/// Unit-side regular polygon in canonical pose.
#[derive(Debug, Clone, PartialEq)]
pub struct RegularPolygon {
    n: usize,
    vertices: Vec<Point2>,
    area: f64,
    apothem: f64,
    circumradius: f64,
}

/// Builds the unit-side regular `n`-gon in canonical pose.
pub fn build_polygon(n: usize) -> Result<RegularPolygon> {
    RegularPolygon::new(n)
}

impl RegularPolygon {
    pub fn new(n: usize) -> Result<Self> {
        if n < 3 {
            return domain(format!(
                "a regular polygon needs at least 3 vertices, got {n}"
            ));
        }
        let half = PI / n as f64;
        let circumradius = 0.5 / half.sin();
        let apothem = 0.5 / half.tan();
        let vertices = (0..n)
            .map(|k| Point2::polar(circumradius, -PI / 2.0 - half + TAU * k as f64 / n as f64))
            .collect();
        Ok(Self {
            n,
            vertices,
            area: n as f64 / (4.0 * half.tan()),
            apothem,
            circumradius,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn area(&self) -> f64 {
        self.area
    }

    pub fn apothem(&self) -> f64 {
        self.apothem
    }

    pub fn circumradius(&self) -> f64 {
        self.circumradius
    }

    /// Vertex `i`, wrapping modulo `n`.
    pub fn vertex(&self, i: usize) -> Point2 {
        self.vertices[i % self.n]
    }

    /// Interior angle at every vertex.
    pub fn interior_angle(&self) -> f64 {
        PI - TAU / self.n as f64
    }

    /// Polar angle of the direction of side `i` (from vertex `i` to `i + 1`).
    pub fn side_angle(&self, i: usize) -> f64 {
        TAU * (i % self.n) as f64 / self.n as f64
    }

    /// Unit vector along side `i`.
    pub fn side_direction(&self, i: usize) -> Point2 {
        Point2::polar(1.0, self.side_angle(i))
    }

    /// Unit normal of side `i` pointing out of the polygon.
    pub fn outward_normal(&self, i: usize) -> Point2 {
        Point2::polar(1.0, self.side_angle(i) - PI / 2.0)
    }

    pub fn side_point(&self, side: usize, t: f64) -> Point2 {
        self.vertex(side) + self.side_direction(side) * t
    }

    pub fn side_midpoint(&self, side: usize) -> Point2 {
        self.outward_normal(side) * self.apothem
    }

    /// Point at boundary parameter `s` (taken modulo `n`).
    pub fn boundary_point(&self, s: f64) -> Point2 {
        let s = s.rem_euclid(self.n as f64);
        let side = (s.floor() as usize).min(self.n - 1);
        self.side_point(side, s - side as f64)
    }

    /// Signed distance from `p` to the supporting line of side `i`, positive inside.
    pub fn side_clearance(&self, i: usize, p: Point2) -> f64 {
        self.apothem - self.outward_normal(i).dot(p)
    }

    /// Smallest signed distance from `p` to any side line; positive strictly inside.
    pub fn clearance(&self, p: Point2) -> f64 {
        (0..self.n)
            .map(|i| self.side_clearance(i, p))
            .fold(f64::INFINITY, f64::min)
    }

    /// Counterclockwise walk along the boundary from parameter `from` to `to`.
    ///
    /// Equal parameters give an empty walk (a single point), never a full lap.
    pub fn walk(&self, from: f64, to: f64) -> PolygonWalk {
        let nf = self.n as f64;
        let from = from.rem_euclid(nf);
        let mut end = to.rem_euclid(nf);
        if end < from {
            end += nf;
        }
        let mut points = vec![self.boundary_point(from)];
        let first = from.floor() as i64 + 1;
        let mut k = first;
        while (k as f64) < end {
            points.push(self.vertex(k as usize % self.n));
            k += 1;
        }
        let last = self.boundary_point(end);
        if points.len() == 1 || points.last().map_or(true, |p| p.dist(last) > 0.0) {
            points.push(last);
        }
        PolygonWalk {
            from,
            to: to.rem_euclid(nf),
            points,
        }
    }

    pub fn perimeter(&self) -> f64 {
        self.n as f64
    }
}

/// Position of a point relative to a polygon.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Location {
    Inside,
    Boundary,
    Outside,
}

/// Ray-crossing classification with a [`BOUNDARY_TOL`] band around the edges.
pub fn point_in_polygon(p: Point2, poly: &RegularPolygon) -> Location {
    let n = poly.n();
    for i in 0..n {
        if point_segment_distance(p, poly.vertex(i), poly.vertex(i + 1)) <= BOUNDARY_TOL {
            return Location::Boundary;
        }
    }
    let mut inside = false;
    for i in 0..n {
        let a = poly.vertex(i);
        let b = poly.vertex(i + 1);
        if (a.y > p.y) != (b.y > p.y) {
            let x = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
            if x > p.x {
                inside = !inside;
            }
        }
    }
    if inside {
        Location::Inside
    } else {
        Location::Outside
    }
}

pub fn point_segment_distance(p: Point2, a: Point2, b: Point2) -> f64 {
    let ab = b - a;
    let len2 = ab.dot(ab);
    if len2 == 0.0 {
        return p.dist(a);
    }
    let t = ((p - a).dot(ab) / len2).clamp(0.0, 1.0);
    p.dist(a + ab * t)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub a: Point2,
    pub b: Point2,
}

impl Segment {
    pub fn new(a: Point2, b: Point2) -> Self {
        Self { a, b }
    }

    pub fn length(&self) -> f64 {
        self.a.dist(self.b)
    }

    pub fn reversed(&self) -> Segment {
        Segment::new(self.b, self.a)
    }
}

/// Circular arc traversed counterclockwise from `start_angle` to `end_angle`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArcSpec {
    center: Point2,
    radius: f64,
    start_angle: f64,
    end_angle: f64,
}

impl ArcSpec {
    pub fn new(center: Point2, radius: f64, start_angle: f64, end_angle: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return domain(format!("arc radius must be positive, got {radius}"));
        }
        let sweep = end_angle - start_angle;
        if !(sweep > 0.0 && sweep <= TAU + 1e-12) {
            return domain(format!("arc sweep must lie in (0, 2pi], got {sweep}"));
        }
        Ok(Self {
            center,
            radius,
            start_angle,
            end_angle,
        })
    }

    pub fn full_circle(center: Point2, radius: f64) -> Result<Self> {
        Self::new(center, radius, 0.0, TAU)
    }

    pub fn center(&self) -> Point2 {
        self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn start_angle(&self) -> f64 {
        self.start_angle
    }

    pub fn end_angle(&self) -> f64 {
        self.end_angle
    }

    pub fn sweep(&self) -> f64 {
        self.end_angle - self.start_angle
    }

    pub fn length(&self) -> f64 {
        self.radius * self.sweep()
    }

    pub fn point_at(&self, angle: f64) -> Point2 {
        self.center + Point2::polar(self.radius, angle)
    }

    pub fn start_point(&self) -> Point2 {
        self.point_at(self.start_angle)
    }

    pub fn end_point(&self) -> Point2 {
        self.point_at(self.end_angle)
    }

    pub fn mid_angle(&self) -> f64 {
        0.5 * (self.start_angle + self.end_angle)
    }

    /// Area between the arc and its chord: `r^2 (theta - sin theta) / 2`.
    pub fn segment_correction(&self) -> f64 {
        let theta = self.sweep();
        0.5 * self.radius * self.radius * (theta - theta.sin())
    }

    /// Sub-arc between two angles inside this arc's range.
    pub fn sub_arc(&self, from: f64, to: f64) -> Result<ArcSpec> {
        ArcSpec::new(self.center, self.radius, from, to)
    }

    /// `segments + 1` points evenly spaced in angle, start and end included.
    pub fn sample(&self, segments: usize) -> Vec<Point2> {
        let segments = segments.max(1);
        (0..=segments)
            .map(|i| self.point_at(self.start_angle + self.sweep() * i as f64 / segments as f64))
            .collect()
    }
}

/// Polyline with at least two points and no repeated consecutive points.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveChain {
    points: Vec<Point2>,
}

impl CurveChain {
    pub fn new(points: Vec<Point2>) -> Result<Self> {
        if points.len() < 2 {
            return domain("a curve chain needs at least two points");
        }
        if points.iter().any(|p| !p.is_finite()) {
            return domain("curve chain contains a non-finite point");
        }
        if let Some(i) = points.windows(2).position(|w| w[0] == w[1]) {
            return domain(format!("curve chain repeats point {i}"));
        }
        Ok(Self { points })
    }

    pub fn points(&self) -> &[Point2] {
        &self.points
    }

    pub fn length(&self) -> f64 {
        self.points.windows(2).map(|w| w[0].dist(w[1])).sum()
    }

    pub fn reversed(&self) -> CurveChain {
        let mut points = self.points.clone();
        points.reverse();
        CurveChain { points }
    }
}

/// Portion of a polygon boundary, resolved to its corner points.
#[derive(Debug, Clone, PartialEq)]
pub struct PolygonWalk {
    pub from: f64,
    pub to: f64,
    points: Vec<Point2>,
}

impl PolygonWalk {
    pub fn points(&self) -> &[Point2] {
        &self.points
    }

    pub fn length(&self) -> f64 {
        self.points.windows(2).map(|w| w[0].dist(w[1])).sum()
    }
}

/// One oriented piece of a [`BoundaryLoop`].
#[derive(Debug, Clone, PartialEq)]
pub enum Piece {
    Segment(Segment),
    Arc { arc: ArcSpec, reversed: bool },
    Chain(CurveChain),
    Walk(PolygonWalk),
}

impl Piece {
    pub fn arc(arc: ArcSpec) -> Self {
        Piece::Arc {
            arc,
            reversed: false,
        }
    }

    pub fn arc_reversed(arc: ArcSpec) -> Self {
        Piece::Arc {
            arc,
            reversed: true,
        }
    }

    pub fn segment(a: Point2, b: Point2) -> Self {
        Piece::Segment(Segment::new(a, b))
    }

    pub fn start(&self) -> Point2 {
        match self {
            Piece::Segment(s) => s.a,
            Piece::Arc {
                arc,
                reversed: false,
            } => arc.start_point(),
            Piece::Arc {
                arc,
                reversed: true,
            } => arc.end_point(),
            Piece::Chain(c) => c.points[0],
            Piece::Walk(w) => w.points[0],
        }
    }

    pub fn end(&self) -> Point2 {
        match self {
            Piece::Segment(s) => s.b,
            Piece::Arc {
                arc,
                reversed: false,
            } => arc.end_point(),
            Piece::Arc {
                arc,
                reversed: true,
            } => arc.start_point(),
            Piece::Chain(c) => *c.points.last().unwrap(),
            Piece::Walk(w) => *w.points.last().unwrap(),
        }
    }

    /// Contribution of this piece to the signed area `1/2 * closed-integral(x dy - y dx)`.
    fn area_term(&self) -> f64 {
        match self {
            Piece::Segment(s) => 0.5 * s.a.cross(s.b),
            Piece::Arc { arc, reversed } => {
                let chord = 0.5 * arc.start_point().cross(arc.end_point());
                let corr = arc.segment_correction();
                if *reversed {
                    -chord - corr
                } else {
                    chord + corr
                }
            }
            Piece::Chain(c) => polyline_area_term(&c.points),
            Piece::Walk(w) => polyline_area_term(&w.points),
        }
    }

    pub fn length(&self) -> f64 {
        match self {
            Piece::Segment(s) => s.length(),
            Piece::Arc { arc, .. } => arc.length(),
            Piece::Chain(c) => c.length(),
            Piece::Walk(w) => w.length(),
        }
    }
}

fn polyline_area_term(points: &[Point2]) -> f64 {
    0.5 * points.windows(2).map(|w| w[0].cross(w[1])).sum::<f64>()
}

/// Closed region boundary made of oriented pieces.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct BoundaryLoop {
    pub pieces: Vec<Piece>,
}

impl BoundaryLoop {
    pub fn new(pieces: Vec<Piece>) -> Self {
        Self { pieces }
    }

    /// Largest head-to-tail gap and the index of the piece it follows.
    pub fn closure_gap(&self) -> (usize, f64) {
        let k = self.pieces.len();
        (0..k)
            .map(|i| {
                (
                    i,
                    self.pieces[i].end().dist(self.pieces[(i + 1) % k].start()),
                )
            })
            .fold(
                (0, 0.0),
                |best, cur| if cur.1 > best.1 { cur } else { best },
            )
    }
}

/// Signed area enclosed by a loop; counterclockwise loops are positive.
pub fn loop_area(lp: &BoundaryLoop) -> Result<f64> {
    if lp.pieces.is_empty() {
        return domain("empty boundary loop");
    }
    let (piece, gap) = lp.closure_gap();
    if !(gap <= LOOP_CLOSURE_TOL) {
        return Err(Error::OpenLoop { piece, gap });
    }
    Ok(lp.pieces.iter().map(Piece::area_term).sum())
}

/// Signed shoelace area of a closed polygon given by its vertices.
pub fn shoelace_area(points: &[Point2]) -> f64 {
    let k = points.len();
    0.5 * (0..k)
        .map(|i| points[i].cross(points[(i + 1) % k]))
        .sum::<f64>()
}

/// Area of the circular segment with radius `r` and half-chord `d`.
pub fn segment_area(r: f64, d: f64) -> Result<f64> {
    if !(r > 0.0 && d >= 0.0 && d <= r) || !r.is_finite() {
        return domain(format!(
            "segment area needs 0 <= d <= r and r > 0, got r={r}, d={d}"
        ));
    }
    Ok(r * r * (d / r).asin() - d * (r * r - d * d).sqrt())
}

/// Result of [`circle_fit`]. A collinear input yields an infinite radius, and
/// `residual` then measures the distance to the best-fit line through `center`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircleFit {
    pub center: Point2,
    pub radius: f64,
    pub residual: f64,
}

impl CircleFit {
    pub fn is_line(&self) -> bool {
        self.radius.is_infinite()
    }
}

/// Algebraic (Kasa) least-squares circle with a max-deviation residual.
pub fn circle_fit(points: &[Point2]) -> Result<CircleFit> {
    if points.len() < 3 {
        return domain(format!(
            "circle fit needs at least 3 points, got {}",
            points.len()
        ));
    }
    let k = points.len() as f64;
    let mean = points.iter().fold(Point2::ORIGIN, |a, &p| a + p) * (1.0 / k);
    let scale = (points
        .iter()
        .map(|&p| (p - mean).dot(p - mean))
        .sum::<f64>()
        / k)
        .sqrt();
    if scale == 0.0 {
        return domain("circle fit points are all identical");
    }
    let local: Vec<Point2> = points.iter().map(|&p| (p - mean) * (1.0 / scale)).collect();

    let (mut suu, mut suv, mut svv) = (0.0, 0.0, 0.0);
    for p in &local {
        suu += p.x * p.x;
        suv += p.x * p.y;
        svv += p.y * p.y;
    }
    let scatter = SymmetricEigen::new(Matrix2::new(suu, suv, suv, svv));
    let (lo, hi) = if scatter.eigenvalues[0] <= scatter.eigenvalues[1] {
        (0, 1)
    } else {
        (1, 0)
    };
    let line_fit = || {
        let normal = scatter.eigenvectors.column(lo);
        let normal = Point2::new(normal[0], normal[1]);
        let residual = points
            .iter()
            .map(|&p| (p - mean).dot(normal).abs())
            .fold(0.0, f64::max);
        CircleFit {
            center: mean,
            radius: f64::INFINITY,
            residual,
        }
    };
    if scatter.eigenvalues[lo] <= 1e-24 * scatter.eigenvalues[hi] {
        return Ok(line_fit());
    }

    // Minimize sum (z + D u + E v + F)^2 with z = u^2 + v^2.
    let mut ata = Matrix3::zeros();
    let mut atb = Vector3::zeros();
    for p in &local {
        let row = Vector3::new(p.x, p.y, 1.0);
        let z = p.dot(*p);
        ata += row * row.transpose();
        atb -= row * z;
    }
    let sol = match ata.lu().solve(&atb) {
        Some(s) => s,
        None => return Ok(line_fit()),
    };
    let c = Point2::new(-0.5 * sol[0], -0.5 * sol[1]);
    let r2 = c.dot(c) - sol[2];
    if !(r2 > 0.0) || !r2.is_finite() || r2.sqrt() > 1e12 {
        return Ok(line_fit());
    }
    let center = mean + c * scale;
    let radius = r2.sqrt() * scale;
    let residual = points
        .iter()
        .map(|&p| (p.dist(center) - radius).abs())
        .fold(0.0, f64::max);
    Ok(CircleFit {
        center,
        radius,
        residual,
    })
}
