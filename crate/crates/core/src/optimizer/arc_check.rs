//! Circle fits and discrete curvature of optimized edges.

use std::fmt;

use super::OptimizedPartition;
use crate::geometry::{circle_fit, point_segment_distance, CircleFit, Point2};

/// Edges with fewer interior points are only tested for straightness.
pub const MIN_FIT_POINTS: usize = 8;

/// Relative line residual below which an edge counts as straight.
pub const STRAIGHT_TOL: f64 = 1e-6;

/// Clearance below which an interior point counts as touching the boundary.
pub const CONTACT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct EdgeArcStats {
    pub edge: usize,
    pub interior_points: usize,
    pub length: f64,
    /// Largest distance of a vertex from the endpoint chord (infinite for closed edges).
    pub line_residual: f64,
    pub straight: bool,
    /// Some interior point lies on the polygon boundary; such edges are
    /// shaped by the wall and are not assessed.
    pub touches_boundary: bool,
    /// Fit through the vertices and chord midpoints.
    pub fit: Option<CircleFit>,
    /// Largest deviation of the vertices alone from `fit`.
    pub vertex_residual: Option<f64>,
    /// Mean turning angle per unit length.
    pub curvature_mean: f64,
    /// Largest deviation of the local curvature from the mean, relative to the mean.
    pub curvature_spread: f64,
    pub passed: bool,
}

impl EdgeArcStats {
    pub fn relative_residual(&self) -> Option<f64> {
        self.fit.map(|f| f.residual / self.length)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ArcReport {
    pub tol: f64,
    pub edges: Vec<EdgeArcStats>,
}

impl ArcReport {
    pub fn passed(&self) -> bool {
        self.edges.iter().all(|e| e.passed)
    }
}

impl fmt::Display for ArcReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.edges {
            write!(
                f,
                "edge {} ({} pts, length {:.6}): ",
                e.edge, e.interior_points, e.length
            )?;
            if e.straight {
                write!(f, "straight, line residual {:.2e}", e.line_residual)?;
            } else if e.touches_boundary {
                write!(f, "pressed against the boundary, not assessed")?;
            } else if let Some(fit) = e.fit {
                write!(
                    f,
                    "radius {:.6}, residual/length {:.2e}, curvature {:.6} (spread {:.2e})",
                    fit.radius,
                    fit.residual / e.length,
                    e.curvature_mean,
                    e.curvature_spread
                )?;
            } else {
                write!(f, "too few points to fit")?;
            }
            writeln!(f, "{}", if e.passed { "" } else { "  FAIL" })?;
        }
        Ok(())
    }
}

fn turning(a: Point2, b: Point2, c: Point2) -> f64 {
    let u = b - a;
    let v = c - b;
    u.cross(v).atan2(u.dot(v))
}

fn curvature(path: &[Point2], closed: bool) -> (f64, f64) {
    let pts: Vec<Point2> = if closed {
        path[..path.len() - 1].to_vec()
    } else {
        path.to_vec()
    };
    let m = pts.len();
    let range: Vec<usize> = if closed {
        (0..m).collect()
    } else {
        (1..m.saturating_sub(1)).collect()
    };
    if range.is_empty() {
        return (0.0, 0.0);
    }
    let local: Vec<f64> = range
        .iter()
        .map(|&i| {
            let (a, b, c) = (pts[(i + m - 1) % m], pts[i], pts[(i + 1) % m]);
            turning(a, b, c) / (0.5 * (a.dist(b) + b.dist(c)))
        })
        .collect();
    let total: f64 = range
        .iter()
        .map(|&i| turning(pts[(i + m - 1) % m], pts[i], pts[(i + 1) % m]))
        .sum();
    let length: f64 = path.windows(2).map(|w| w[0].dist(w[1])).sum();
    let mean = total / length;
    let spread = local.iter().fold(0.0f64, |s, k| s.max((k - mean).abs())) / mean.abs();
    (mean, spread)
}

/// Fits every edge with at least [`MIN_FIT_POINTS`] interior points to a
/// circle. An edge passes when it is straight, rests against the polygon, or
/// its fit residual is at most `tol` times its length.
pub fn arc_property_check(p: &OptimizedPartition, tol: f64) -> ArcReport {
    let mut edges = Vec::new();
    for (ei, path) in p.edge_paths.iter().enumerate() {
        let k = path.len() - 2;
        let length = p.edge_length(ei);
        let closed = path[0] == path[path.len() - 1];
        let line_residual = if closed {
            f64::INFINITY
        } else {
            path.iter()
                .map(|&q| point_segment_distance(q, path[0], path[path.len() - 1]))
                .fold(0.0, f64::max)
        };
        let straight = line_residual <= STRAIGHT_TOL * length;
        let (curvature_mean, curvature_spread) = curvature(path, closed);
        let touches_boundary = path[1..path.len() - 1]
            .iter()
            .any(|&q| p.polygon.clearance(q) <= CONTACT_TOL);

        let (fit, vertex_residual) = if k >= MIN_FIT_POINTS && !straight && !touches_boundary {
            let mut samples: Vec<Point2> = path.clone();
            if closed {
                samples.pop();
            }
            samples.extend(path.windows(2).map(|w| w[0].lerp(w[1], 0.5)));
            match circle_fit(&samples) {
                Ok(fit) => {
                    let vr = path
                        .iter()
                        .map(|&q| (q.dist(fit.center) - fit.radius).abs())
                        .fold(0.0, f64::max);
                    (Some(fit), Some(vr))
                }
                Err(_) => (None, None),
            }
        } else {
            (None, None)
        };
        let passed = straight
            || touches_boundary
            || fit.map_or(k < MIN_FIT_POINTS, |f| f.residual <= tol * length);
        edges.push(EdgeArcStats {
            edge: ei,
            interior_points: k,
            length,
            line_residual,
            straight,
            touches_boundary,
            fit,
            vertex_residual,
            curvature_mean,
            curvature_spread,
            passed,
        });
    }
    ArcReport { tol, edges }
}
