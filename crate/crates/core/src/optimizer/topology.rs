//! Combinatorial description of a candidate split: boundary anchors, interior
//! junctions, curved edges between them, and the loops bounding each region.

use crate::error::{Error, Result};
use crate::geometry::{Point2, RegularPolygon};

#[derive(Debug, Clone, PartialEq)]
pub enum NodeKind {
    /// A point on side `side` at fraction `t`; slides along that side unless fixed.
    Anchor { side: usize, t: f64, fixed: bool },
    /// A free interior point.
    Junction { at: Point2 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Node {
    pub name: String,
    pub kind: NodeKind,
}

impl Node {
    pub fn is_anchor(&self) -> bool {
        matches!(self.kind, NodeKind::Anchor { .. })
    }

    pub fn position(&self, poly: &RegularPolygon) -> Point2 {
        match self.kind {
            NodeKind::Anchor { side, t, .. } => poly.side_point(side, t),
            NodeKind::Junction { at } => at,
        }
    }

    /// Boundary parameter `side + t` for anchors.
    pub fn boundary_param(&self) -> Option<f64> {
        match self.kind {
            NodeKind::Anchor { side, t, .. } => Some(side as f64 + t),
            NodeKind::Junction { .. } => None,
        }
    }
}

/// Number of free points placed strictly inside an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InteriorPoints {
    /// Use `OptimizerConfig::points_per_edge`.
    Auto,
    Count(usize),
}

impl InteriorPoints {
    pub fn resolve(self, auto: usize) -> usize {
        match self {
            InteriorPoints::Auto => auto,
            InteriorPoints::Count(k) => k,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EdgeSpec {
    pub name: String,
    pub a: usize,
    pub b: usize,
    pub interior: InteriorPoints,
    /// Optional polyline (endpoints excluded) shaping the initial layout; the
    /// interior points are spread evenly along it by arc length.
    pub guide: Vec<Point2>,
}

impl EdgeSpec {
    pub fn is_closed(&self) -> bool {
        self.a == self.b
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LoopStep {
    Edge {
        edge: usize,
        reversed: bool,
    },
    /// Counterclockwise along the polygon boundary between two anchors.
    Walk {
        from: usize,
        to: usize,
    },
}

impl LoopStep {
    pub fn forward(edge: usize) -> Self {
        LoopStep::Edge {
            edge,
            reversed: false,
        }
    }

    pub fn backward(edge: usize) -> Self {
        LoopStep::Edge {
            edge,
            reversed: true,
        }
    }

    pub fn walk(from: usize, to: usize) -> Self {
        LoopStep::Walk { from, to }
    }

    fn endpoints(&self, edges: &[EdgeSpec]) -> (usize, usize) {
        match *self {
            LoopStep::Edge {
                edge,
                reversed: false,
            } => (edges[edge].a, edges[edge].b),
            LoopStep::Edge {
                edge,
                reversed: true,
            } => (edges[edge].b, edges[edge].a),
            LoopStep::Walk { from, to } => (from, to),
        }
    }
}

/// A region bounded by one or more closed rings (holes run clockwise).
#[derive(Debug, Clone, PartialEq)]
pub struct RegionSpec {
    pub rings: Vec<Vec<LoopStep>>,
}

/// A candidate split. `regions[i]` carries target `target_fractions[i]`;
/// trailing fractions without a declared region belong to regions that are
/// implied by the others and are left unconstrained.
#[derive(Debug, Clone, PartialEq)]
pub struct TopologySpec {
    pub label: String,
    pub polygon: RegularPolygon,
    pub nodes: Vec<Node>,
    pub edges: Vec<EdgeSpec>,
    pub regions: Vec<RegionSpec>,
    pub target_fractions: Vec<f64>,
}

impl TopologySpec {
    pub fn new(
        label: impl Into<String>,
        polygon: RegularPolygon,
        target_fractions: Vec<f64>,
    ) -> Self {
        Self {
            label: label.into(),
            polygon,
            nodes: Vec::new(),
            edges: Vec::new(),
            regions: Vec::new(),
            target_fractions,
        }
    }

    /// Equal fractions `1/m`.
    pub fn equipartition(label: impl Into<String>, polygon: RegularPolygon, m: usize) -> Self {
        Self::new(label, polygon, vec![1.0 / m as f64; m])
    }

    pub fn m(&self) -> usize {
        self.target_fractions.len()
    }

    pub fn add_anchor(&mut self, name: &str, side: usize, t: f64) -> usize {
        self.nodes.push(Node {
            name: name.into(),
            kind: NodeKind::Anchor {
                side,
                t,
                fixed: false,
            },
        });
        self.nodes.len() - 1
    }

    pub fn add_junction(&mut self, name: &str, at: Point2) -> usize {
        self.nodes.push(Node {
            name: name.into(),
            kind: NodeKind::Junction { at },
        });
        self.nodes.len() - 1
    }

    pub fn add_edge(
        &mut self,
        name: &str,
        a: usize,
        b: usize,
        interior: InteriorPoints,
        guide: Vec<Point2>,
    ) -> usize {
        self.edges.push(EdgeSpec {
            name: name.into(),
            a,
            b,
            interior,
            guide,
        });
        self.edges.len() - 1
    }

    pub fn add_region(&mut self, rings: Vec<Vec<LoopStep>>) -> usize {
        self.regions.push(RegionSpec { rings });
        self.regions.len() - 1
    }

    pub fn node_index(&self, name: &str) -> Option<usize> {
        self.nodes.iter().position(|n| n.name == name)
    }

    pub fn edge_index(&self, name: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.name == name)
    }

    /// Checks references, ring closure, edge coverage and the target fractions.
    pub fn validate(&self) -> Result<()> {
        let invalid = |msg: String| Err(Error::Domain(format!("topology '{}': {msg}", self.label)));

        if self.target_fractions.is_empty() {
            return invalid("no target fractions".into());
        }
        if let Some(i) = self
            .target_fractions
            .iter()
            .position(|&f| !(f > 0.0 && f.is_finite()))
        {
            return invalid(format!(
                "degenerate region {i}: target fraction {}",
                self.target_fractions[i]
            ));
        }
        let sum: f64 = self.target_fractions.iter().sum();
        if (sum - 1.0).abs() > 1e-12 {
            return invalid(format!("target fractions sum to {sum}, not 1"));
        }
        if self.regions.len() > self.target_fractions.len() {
            return invalid(format!(
                "{} regions declared but only {} target fractions",
                self.regions.len(),
                self.target_fractions.len()
            ));
        }

        let n = self.polygon.n();
        for node in &self.nodes {
            match node.kind {
                NodeKind::Anchor { side, t, .. } => {
                    if side >= n || !(0.0..=1.0).contains(&t) {
                        return invalid(format!(
                            "anchor '{}' at side {side}, t={t} is off the polygon",
                            node.name
                        ));
                    }
                }
                NodeKind::Junction { at } => {
                    if !at.is_finite() {
                        return invalid(format!("junction '{}' is not finite", node.name));
                    }
                }
            }
        }

        for e in &self.edges {
            if e.a >= self.nodes.len() || e.b >= self.nodes.len() {
                return invalid(format!("edge '{}' references a missing node", e.name));
            }
            if e.is_closed() && e.guide.is_empty() {
                return invalid(format!("closed edge '{}' needs a guide polyline", e.name));
            }
            if e.is_closed() && e.interior == InteriorPoints::Count(0) {
                return invalid(format!("closed edge '{}' needs interior points", e.name));
            }
        }

        let mut uses: Vec<Vec<bool>> = vec![Vec::new(); self.edges.len()];
        for (ri, region) in self.regions.iter().enumerate() {
            if region.rings.is_empty() {
                return invalid(format!("region {ri} has no rings"));
            }
            for ring in &region.rings {
                if ring.is_empty() {
                    return invalid(format!("region {ri} has an empty ring"));
                }
                for step in ring {
                    match *step {
                        LoopStep::Edge { edge, reversed } => {
                            if edge >= self.edges.len() {
                                return invalid(format!(
                                    "region {ri} references missing edge {edge}"
                                ));
                            }
                            uses[edge].push(reversed);
                        }
                        LoopStep::Walk { from, to } => {
                            let ok = |i: usize| i < self.nodes.len() && self.nodes[i].is_anchor();
                            if !ok(from) || !ok(to) {
                                return invalid(format!(
                                    "region {ri} walks between non-anchor nodes"
                                ));
                            }
                        }
                    }
                }
                for (i, step) in ring.iter().enumerate() {
                    let (_, end) = step.endpoints(&self.edges);
                    let (next_start, _) = ring[(i + 1) % ring.len()].endpoints(&self.edges);
                    if end != next_start {
                        return invalid(format!(
                            "region {ri}: step {i} ends at '{}' but the next step starts at '{}'",
                            self.nodes[end].name, self.nodes[next_start].name
                        ));
                    }
                }
            }
        }
        for (ei, u) in uses.iter().enumerate() {
            let ok = match u.as_slice() {
                [_] => true,
                [a, b] => a != b,
                _ => false,
            };
            if !ok {
                return invalid(format!(
                    "edge '{}' must bound one region, or two with opposite orientations (used {} times)",
                    self.edges[ei].name,
                    u.len()
                ));
            }
        }
        Ok(())
    }
}
