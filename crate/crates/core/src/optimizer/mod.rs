//! Constrained minimization of total cut length over discretized splits.
//!
//! Every edge is a polyline whose interior points are free; anchors slide along
//! their side and junctions move freely. Equal-area conditions are enforced by
//! an augmented Lagrangian; free points are projected back into the polygon
//! after every step.

mod arc_check;
mod catalog;
mod extremum;
mod problem;
mod schema;
mod solver;
mod topology;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub use arc_check::{arc_property_check, ArcReport, EdgeArcStats};
pub use catalog::{case_catalog, CatalogCase, CatalogId};
pub use extremum::{
    sector_extremum_solve, segment_extremum_solve, SectorExtremum, SegmentExtremum,
};
pub use schema::{parse_topology, write_partition, write_topology};
pub use topology::{EdgeSpec, InteriorPoints, LoopStep, Node, NodeKind, RegionSpec, TopologySpec};

use crate::error::{domain, Result};
use crate::geometry::{Point2, RegularPolygon};
use problem::{Problem, Slot};
use solver::{gradient_descent, lbfgs, projected_gradient, InnerOutcome, LineSearch, Smooth};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InnerSolver {
    /// Steepest descent with backtracking.
    GradientDescent,
    /// Limited-memory BFGS with the same backtracking rule.
    Lbfgs { memory: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizerConfig {
    pub points_per_edge: usize,
    pub penalty_init: f64,
    pub penalty_growth: f64,
    pub armijo: f64,
    pub shrink: f64,
    /// Relative to the polygon area.
    pub constraint_tol: f64,
    /// On gradients scaled to force densities, see [`OptimizedPartition::stationarity`].
    pub gradient_tol: f64,
    pub max_outer: usize,
    pub max_inner: usize,
    pub inner_solver: InnerSolver,
    pub jitter: f64,
    pub seed: u64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            points_per_edge: 64,
            penalty_init: 10.0,
            penalty_growth: 2.0,
            armijo: 1e-4,
            shrink: 0.5,
            constraint_tol: 1e-8,
            gradient_tol: 1e-6,
            max_outer: 40,
            max_inner: 20_000,
            inner_solver: InnerSolver::Lbfgs { memory: 12 },
            jitter: 1e-3,
            seed: 0,
        }
    }
}

impl OptimizerConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = [
            self.penalty_init,
            self.penalty_growth - 1.0,
            self.armijo,
            self.shrink,
            1.0 - self.shrink,
            1.0 - self.armijo,
            self.constraint_tol,
            self.gradient_tol,
        ];
        if positive.iter().any(|v| !(*v > 0.0)) || !(self.jitter >= 0.0) {
            return domain("optimizer tolerances and penalty parameters must be positive");
        }
        if self.max_outer == 0 || self.max_inner == 0 {
            return domain("iteration limits must be positive");
        }
        if let InnerSolver::Lbfgs { memory: 0 } = self.inner_solver {
            return domain("L-BFGS memory must be positive");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizedPartition {
    pub label: String,
    pub polygon: RegularPolygon,
    pub node_positions: Vec<Point2>,
    /// `Some(t)` for anchors.
    pub anchor_params: Vec<Option<f64>>,
    /// Every edge from its first node to its second, endpoints included.
    pub edge_paths: Vec<Vec<Point2>>,
    pub total_length: f64,
    pub region_areas: Vec<f64>,
    /// `(area - target) / polygon area` per declared region.
    pub constraint_residuals: Vec<f64>,
    /// Lagrange multiplier of each area constraint.
    pub multiplier_estimates: Vec<f64>,
    pub converged: bool,
    pub outer_iterations: usize,
    pub inner_iterations: usize,
    /// Largest projected Lagrangian gradient, interior points divided by the
    /// length of polyline they represent.
    pub stationarity: f64,
    /// Largest distance of a free point outside the polygon.
    pub containment_violation: f64,
}

impl OptimizedPartition {
    pub fn max_residual(&self) -> f64 {
        self.constraint_residuals
            .iter()
            .fold(0.0, |m, r| m.max(r.abs()))
    }

    pub fn edge_length(&self, edge: usize) -> f64 {
        self.edge_paths[edge]
            .windows(2)
            .map(|w| w[0].dist(w[1]))
            .sum()
    }

    /// The input topology with nodes and guides moved to this result.
    pub fn warm_start(&self, spec: &TopologySpec) -> TopologySpec {
        let mut out = spec.clone();
        for (node, &p) in out.nodes.iter_mut().zip(&self.node_positions) {
            if let NodeKind::Junction { at } = &mut node.kind {
                *at = p;
            }
        }
        for (node, t) in out.nodes.iter_mut().zip(&self.anchor_params) {
            if let (NodeKind::Anchor { t: slot, .. }, Some(t)) = (&mut node.kind, t) {
                *slot = *t;
            }
        }
        for (edge, path) in out.edges.iter_mut().zip(&self.edge_paths) {
            edge.interior = InteriorPoints::Count(path.len() - 2);
            edge.guide = path[1..path.len() - 1].to_vec();
        }
        out
    }
}

struct Lagrangian<'a> {
    problem: &'a Problem,
    lambda: Vec<f64>,
    mu: f64,
}

impl Smooth for Lagrangian<'_> {
    fn eval(&mut self, x: &[f64], g: &mut [f64]) -> f64 {
        g.iter_mut().for_each(|v| *v = 0.0);
        let p = self.problem;
        let mut value = p.length(x, Some(g));
        let areas = p.areas(x);
        let mut w = Vec::with_capacity(areas.len());
        // Each constraint is measured relative to its own target, so that
        // shrinking a region to nothing costs mu / 2 whatever its size.
        for ((a, t), l) in areas.iter().zip(&p.targets).zip(&self.lambda) {
            let c = (a - t) / t;
            value += l * c + 0.5 * self.mu * c * c;
            w.push((l + self.mu * c) / t);
        }
        p.add_area_grad(x, &w, g);
        value
    }

    fn project(&self, x: &mut [f64]) -> bool {
        self.problem.project(x)
    }

    fn tangent(&self, x: &[f64], d: &mut [f64]) {
        self.problem.tangent(x, d)
    }

    fn stationarity(&self, x: &[f64], g: &[f64]) -> f64 {
        let pg = projected_gradient(self, x, g);
        let s = self.problem.gradient_scales(x);
        pg.iter()
            .zip(&s)
            .fold(0.0, |m, (g, s)| m.max((g / s).abs()))
    }
}

/// Minimizes total length of the split described by `spec` subject to its
/// area targets. Non-convergence is reported through
/// [`OptimizedPartition::converged`], not as an error.
pub fn optimize(spec: &TopologySpec, cfg: &OptimizerConfig) -> Result<OptimizedPartition> {
    spec.validate()?;
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let (problem, mut x) = Problem::build(spec, cfg.points_per_edge, cfg.jitter, &mut rng);
    let scale = spec.polygon.area();
    let mut al = Lagrangian {
        problem: &problem,
        lambda: vec![0.0; problem.targets.len()],
        mu: cfg.penalty_init,
    };
    let ls = LineSearch {
        armijo: cfg.armijo,
        shrink: cfg.shrink,
    };

    let mut converged = false;
    let mut outer = 0;
    let mut inner_total = 0;
    let mut stationarity = f64::INFINITY;
    let mut infeasibility = f64::INFINITY;
    while outer < cfg.max_outer {
        outer += 1;
        let inner: InnerOutcome = match cfg.inner_solver {
            InnerSolver::GradientDescent => {
                gradient_descent(&mut al, &mut x, cfg.gradient_tol, cfg.max_inner, ls)
            }
            InnerSolver::Lbfgs { memory } => {
                lbfgs(&mut al, &mut x, cfg.gradient_tol, cfg.max_inner, memory, ls)
            }
        };
        inner_total += inner.iterations;
        stationarity = inner.stationarity;

        let areas = problem.areas(&x);
        for ((l, a), t) in al.lambda.iter_mut().zip(&areas).zip(&problem.targets) {
            *l += al.mu * (a - t) / t;
        }
        let residuals: Vec<f64> = areas
            .iter()
            .zip(&problem.targets)
            .map(|(a, t)| (a - t) / scale)
            .collect();
        let worst = residuals.iter().fold(0.0f64, |m, c| m.max(c.abs()));
        if worst <= cfg.constraint_tol && inner.converged {
            converged = true;
            break;
        }
        if worst > 0.25 * infeasibility {
            al.mu *= cfg.penalty_growth;
        }
        infeasibility = worst;
    }

    let areas = problem.areas(&x);
    let constraint_residuals: Vec<f64> = areas
        .iter()
        .zip(&problem.targets)
        .map(|(a, t)| (a - t) / scale)
        .collect();
    let containment_violation = problem
        .containment(&x)
        .iter()
        .fold(0.0f64, |m, &h| m.max(-h));
    let node_positions: Vec<Point2> = (0..spec.nodes.len())
        .map(|i| problem.node_point(&x, i))
        .collect();
    let anchor_params = problem
        .slots
        .iter()
        .zip(&spec.nodes)
        .map(|(slot, node)| match (slot, &node.kind) {
            (Slot::Slide { var, .. }, _) => Some(x[*var]),
            (Slot::Fixed(_), NodeKind::Anchor { t, .. }) => Some(*t),
            _ => None,
        })
        .collect();
    let edge_paths = (0..problem.edges.len())
        .map(|e| problem.edge_path(&x, e))
        .collect();

    Ok(OptimizedPartition {
        label: spec.label.clone(),
        polygon: spec.polygon.clone(),
        node_positions,
        anchor_params,
        edge_paths,
        total_length: problem.length(&x, None),
        region_areas: areas,
        constraint_residuals,
        multiplier_estimates: al
            .lambda
            .iter()
            .zip(&problem.targets)
            .map(|(l, t)| l / t)
            .collect(),
        converged,
        outer_iterations: outer,
        inner_iterations: inner_total,
        stationarity,
        containment_violation,
    })
}
