//! Flattening of a topology into a vector of free variables, with the length
//! objective, region areas and containment margins as functions of it.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::topology::{LoopStep, NodeKind, TopologySpec};
use crate::geometry::{Point2, RegularPolygon};

/// Distance to a side below which a free point counts as touching it.
const ACTIVE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy)]
pub(crate) enum Slot {
    Fixed(Point2),
    /// Anchor sliding along `side`; the variable is its fraction `t`.
    Slide {
        side: usize,
        var: usize,
    },
    /// Two consecutive variables `x, y`.
    Free {
        var: usize,
    },
}

#[derive(Debug, Clone, Copy)]
pub(crate) enum PRef {
    Fixed(Point2),
    Node(usize),
    Free(usize),
}

#[derive(Debug, Clone)]
pub(crate) struct EdgeLayout {
    pub a: usize,
    pub b: usize,
    pub start: usize,
    pub k: usize,
}

#[derive(Debug, Clone)]
struct Ring {
    region: usize,
    points: Vec<PRef>,
}

#[derive(Debug, Clone)]
pub(crate) struct Problem {
    pub polygon: RegularPolygon,
    pub slots: Vec<Slot>,
    pub edges: Vec<EdgeLayout>,
    rings: Vec<Ring>,
    pub targets: Vec<f64>,
    /// First variable of every free point (junctions and edge interiors).
    pub free_points: Vec<usize>,
    /// Variables confined to `[0, 1]`.
    pub bounded: Vec<usize>,
    pub n_vars: usize,
    normals: Vec<Point2>,
}

fn resample(path: &[Point2], k: usize) -> Vec<Point2> {
    let mut cum = vec![0.0];
    for w in path.windows(2) {
        cum.push(cum.last().unwrap() + w[0].dist(w[1]));
    }
    let total = *cum.last().unwrap();
    let mut out = Vec::with_capacity(k);
    let mut seg = 0;
    for j in 1..=k {
        let s = total * j as f64 / (k + 1) as f64;
        while seg + 2 < cum.len() && cum[seg + 1] < s {
            seg += 1;
        }
        let span = cum[seg + 1] - cum[seg];
        let t = if span > 0.0 {
            (s - cum[seg]) / span
        } else {
            0.0
        };
        out.push(path[seg].lerp(path[seg + 1], t));
    }
    out
}

impl Problem {
    /// Builds the layout and the jittered starting point.
    pub fn build(
        spec: &TopologySpec,
        points_per_edge: usize,
        jitter: f64,
        rng: &mut ChaCha8Rng,
    ) -> (Self, Vec<f64>) {
        let poly = spec.polygon.clone();
        let mut x = Vec::new();
        let mut slots = Vec::new();
        let mut bounded = Vec::new();
        let mut free_points = Vec::new();

        for node in &spec.nodes {
            let slot = match node.kind {
                NodeKind::Anchor {
                    side,
                    t,
                    fixed: true,
                } => Slot::Fixed(poly.side_point(side, t)),
                NodeKind::Anchor {
                    side,
                    t,
                    fixed: false,
                } => {
                    bounded.push(x.len());
                    x.push(t);
                    Slot::Slide {
                        side,
                        var: x.len() - 1,
                    }
                }
                NodeKind::Junction { at } => {
                    free_points.push(x.len());
                    x.push(at.x + rng.gen_range(-jitter..=jitter));
                    x.push(at.y + rng.gen_range(-jitter..=jitter));
                    Slot::Free { var: x.len() - 2 }
                }
            };
            slots.push(slot);
        }

        let mut edges = Vec::new();
        for e in &spec.edges {
            let k = e.interior.resolve(points_per_edge);
            let pa = spec.nodes[e.a].position(&poly);
            let pb = spec.nodes[e.b].position(&poly);
            let mut guide = vec![pa];
            guide.extend_from_slice(&e.guide);
            guide.push(pb);
            let start = x.len();
            for p in resample(&guide, k) {
                free_points.push(x.len());
                x.push(p.x + rng.gen_range(-jitter..=jitter));
                x.push(p.y + rng.gen_range(-jitter..=jitter));
            }
            edges.push(EdgeLayout {
                a: e.a,
                b: e.b,
                start,
                k,
            });
        }

        let mut problem = Problem {
            normals: (0..poly.n()).map(|i| poly.outward_normal(i)).collect(),
            polygon: poly,
            slots,
            edges,
            rings: Vec::new(),
            targets: Vec::new(),
            free_points,
            bounded,
            n_vars: x.len(),
        };

        let area = problem.polygon.area();
        problem.targets = spec.target_fractions[..spec.regions.len()]
            .iter()
            .map(|f| f * area)
            .collect();
        for (ri, region) in spec.regions.iter().enumerate() {
            for ring in &region.rings {
                let mut pts = Vec::new();
                for step in ring {
                    match *step {
                        LoopStep::Edge { edge, reversed } => {
                            let mut path = problem.edge_refs(edge);
                            if reversed {
                                path.reverse();
                            }
                            path.pop();
                            pts.extend(path);
                        }
                        LoopStep::Walk { from, to } => {
                            pts.push(PRef::Node(from));
                            pts.extend(
                                problem
                                    .walk_corners(spec, from, to)
                                    .into_iter()
                                    .map(PRef::Fixed),
                            );
                        }
                    }
                }
                problem.rings.push(Ring {
                    region: ri,
                    points: pts,
                });
            }
        }
        (problem, x)
    }

    /// Polygon vertices passed when walking from anchor `from` to anchor `to`.
    fn walk_corners(&self, spec: &TopologySpec, from: usize, to: usize) -> Vec<Point2> {
        let n = self.polygon.n();
        let (sa, ta, sb, tb) = match (&spec.nodes[from].kind, &spec.nodes[to].kind) {
            (
                NodeKind::Anchor {
                    side: sa, t: ta, ..
                },
                NodeKind::Anchor {
                    side: sb, t: tb, ..
                },
            ) => (*sa, *ta, *sb, *tb),
            _ => unreachable!("walks join anchors"),
        };
        let count = if sa == sb {
            if ta <= tb {
                0
            } else {
                n
            }
        } else {
            (sb + n - sa) % n
        };
        (1..=count).map(|i| self.polygon.vertex(sa + i)).collect()
    }

    pub fn edge_refs(&self, edge: usize) -> Vec<PRef> {
        let e = &self.edges[edge];
        let mut out = Vec::with_capacity(e.k + 2);
        out.push(PRef::Node(e.a));
        out.extend((0..e.k).map(|j| PRef::Free(e.start + 2 * j)));
        out.push(PRef::Node(e.b));
        out
    }

    pub fn node_point(&self, x: &[f64], node: usize) -> Point2 {
        match self.slots[node] {
            Slot::Fixed(p) => p,
            Slot::Slide { side, var } => self.polygon.side_point(side, x[var]),
            Slot::Free { var } => Point2::new(x[var], x[var + 1]),
        }
    }

    pub fn point(&self, x: &[f64], r: PRef) -> Point2 {
        match r {
            PRef::Fixed(p) => p,
            PRef::Node(i) => self.node_point(x, i),
            PRef::Free(v) => Point2::new(x[v], x[v + 1]),
        }
    }

    fn add_grad(&self, g: &mut [f64], r: PRef, d: Point2) {
        let node_var = |v: usize, g: &mut [f64]| {
            g[v] += d.x;
            g[v + 1] += d.y;
        };
        match r {
            PRef::Fixed(_) => {}
            PRef::Free(v) => node_var(v, g),
            PRef::Node(i) => match self.slots[i] {
                Slot::Fixed(_) => {}
                Slot::Slide { side, var } => {
                    g[var] += d.dot(self.polygon.vertex(side + 1) - self.polygon.vertex(side));
                }
                Slot::Free { var } => node_var(var, g),
            },
        }
    }

    pub fn edge_path(&self, x: &[f64], edge: usize) -> Vec<Point2> {
        self.edge_refs(edge)
            .into_iter()
            .map(|r| self.point(x, r))
            .collect()
    }

    /// Total cut length, adding its gradient into `g` when given.
    pub fn length(&self, x: &[f64], mut g: Option<&mut [f64]>) -> f64 {
        let mut total = 0.0;
        for ei in 0..self.edges.len() {
            let refs = self.edge_refs(ei);
            let pts: Vec<Point2> = refs.iter().map(|&r| self.point(x, r)).collect();
            for i in 0..pts.len() - 1 {
                let d = pts[i + 1] - pts[i];
                let len = d.norm();
                total += len;
                if let Some(g) = g.as_deref_mut() {
                    if len > 0.0 {
                        let u = d * (1.0 / len);
                        self.add_grad(g, refs[i + 1], u);
                        self.add_grad(g, refs[i], -u);
                    }
                }
            }
        }
        total
    }

    /// Signed area of every declared region.
    pub fn areas(&self, x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.targets.len()];
        for ring in &self.rings {
            let pts: Vec<Point2> = ring.points.iter().map(|&r| self.point(x, r)).collect();
            let m = pts.len();
            let twice: f64 = (0..m).map(|i| pts[i].cross(pts[(i + 1) % m])).sum();
            out[ring.region] += 0.5 * twice;
        }
        out
    }

    /// Adds `sum_r w[r] * grad A_r` into `g`.
    pub fn add_area_grad(&self, x: &[f64], w: &[f64], g: &mut [f64]) {
        for ring in &self.rings {
            let wr = w[ring.region];
            if wr == 0.0 {
                continue;
            }
            let pts: Vec<Point2> = ring.points.iter().map(|&r| self.point(x, r)).collect();
            let m = pts.len();
            for i in 0..m {
                let prev = pts[(i + m - 1) % m];
                let next = pts[(i + 1) % m];
                let d = Point2::new(0.5 * (next.y - prev.y), 0.5 * (prev.x - next.x));
                self.add_grad(g, ring.points[i], d * wr);
            }
        }
    }

    /// Margins `apothem - n_j . p` for every free point and side; feasible when >= 0.
    pub fn containment(&self, x: &[f64]) -> Vec<f64> {
        let apothem = self.polygon.apothem();
        let mut out = Vec::with_capacity(self.free_points.len() * self.normals.len());
        for &v in &self.free_points {
            let p = Point2::new(x[v], x[v + 1]);
            out.extend(self.normals.iter().map(|nrm| apothem - nrm.dot(p)));
        }
        out
    }

    /// Clamps anchor fractions to `[0, 1]` and moves free points outside the
    /// polygon to the nearest boundary point.
    pub fn project(&self, x: &mut [f64]) -> bool {
        let mut moved = false;
        for &v in &self.bounded {
            let c = x[v].clamp(0.0, 1.0);
            if c != x[v] {
                x[v] = c;
                moved = true;
            }
        }
        let apothem = self.polygon.apothem();
        let n = self.normals.len();
        for &v in &self.free_points {
            let p = Point2::new(x[v], x[v + 1]);
            if self.normals.iter().all(|nrm| nrm.dot(p) <= apothem) {
                continue;
            }
            let mut best = p;
            let mut best_d = f64::INFINITY;
            for j in 0..n {
                let a = self.polygon.vertex(j);
                let ab = self.polygon.vertex(j + 1) - a;
                let t = ((p - a).dot(ab) / ab.dot(ab)).clamp(0.0, 1.0);
                let q = a + ab * t;
                if q.dist(p) < best_d {
                    best_d = q.dist(p);
                    best = q;
                }
            }
            x[v] = best.x;
            x[v + 1] = best.y;
            moved = true;
        }
        moved
    }

    /// Removes the parts of step `d` pointing out of the feasible set at `x`.
    pub fn tangent(&self, x: &[f64], d: &mut [f64]) {
        for &v in &self.bounded {
            if (x[v] <= 0.0 && d[v] < 0.0) || (x[v] >= 1.0 && d[v] > 0.0) {
                d[v] = 0.0;
            }
        }
        let apothem = self.polygon.apothem();
        for &v in &self.free_points {
            let p = Point2::new(x[v], x[v + 1]);
            let active: Vec<Point2> = self
                .normals
                .iter()
                .copied()
                .filter(|nrm| apothem - nrm.dot(p) <= ACTIVE_TOL)
                .collect();
            if active.is_empty() {
                continue;
            }
            let mut step = Point2::new(d[v], d[v + 1]);
            for nrm in &active {
                let out = step.dot(*nrm);
                if out > 0.0 {
                    step = step - *nrm * out;
                }
            }
            // At a corner, sliding along one side may still leave through the other.
            if active
                .iter()
                .any(|nrm| step.dot(*nrm) > 1e-15 * step.norm())
            {
                step = Point2::ORIGIN;
            }
            d[v] = step.x;
            d[v + 1] = step.y;
        }
    }

    /// Per-variable scale turning raw gradient entries into force densities:
    /// interior points divide by half the length of their two segments.
    pub fn gradient_scales(&self, x: &[f64]) -> Vec<f64> {
        let mut s = vec![1.0; self.n_vars];
        for ei in 0..self.edges.len() {
            let e = &self.edges[ei];
            if e.k == 0 {
                continue;
            }
            let pts = self.edge_path(x, ei);
            for j in 0..e.k {
                let dual = 0.5 * (pts[j].dist(pts[j + 1]) + pts[j + 1].dist(pts[j + 2]));
                let v = e.start + 2 * j;
                s[v] = dual.max(f64::MIN_POSITIVE);
                s[v + 1] = s[v];
            }
        }
        s
    }
}
