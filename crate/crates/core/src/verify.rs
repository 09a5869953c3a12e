//! The self-check suite behind `equisplit verify`.

use std::f64::consts::PI;
use std::fmt;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::closed_form::{
    asymptotic_bracket, exact_infimum, lower_bound, polygon_area, simplex_distance_sum, SimplexSpec,
};
use crate::constructions::{shipped, validate_split};
use crate::geometry::build_polygon;
use crate::hexpack::ratio_series;
use crate::optimizer::{
    arc_property_check, case_catalog, optimize, sector_extremum_solve, segment_extremum_solve,
    CatalogId, OptimizedPartition, OptimizerConfig,
};

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} [{}] {} ({:.2} s): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.elapsed.as_secs_f64(),
            self.detail
        )
    }
}

type Check = fn() -> (bool, String);

const CHECKS: [(&str, Check); 8] = [
    ("closed forms", closed_forms),
    ("optimizer, halves", halves),
    ("optimizer, thirds", thirds),
    ("arc emergence", arc_emergence),
    ("extremum systems", extremum_systems),
    ("simplex distance sums", simplex_sums),
    ("shipped constructions", constructions),
    ("hexagon packing asymptotics", hexpack),
];

/// Number of checks in [`run_all`].
pub fn check_count() -> usize {
    CHECKS.len()
}

/// Runs check `id` (1-based).
pub fn run_check(id: usize) -> Option<CheckOutcome> {
    let (name, f) = *CHECKS.get(id.checked_sub(1)?)?;
    let start = Instant::now();
    let (passed, detail) = f();
    Some(CheckOutcome {
        id,
        name,
        passed,
        detail,
        elapsed: start.elapsed(),
    })
}

pub fn run_all() -> Vec<CheckOutcome> {
    (1..=CHECKS.len()).filter_map(run_check).collect()
}

fn near(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

fn closed_forms() -> (bool, String) {
    let l23 = exact_infimum(2, 3).ok().flatten().unwrap_or(f64::NAN);
    let l33 = exact_infimum(3, 3).ok().flatten().unwrap_or(f64::NAN);
    let lb = lower_bound(2, 3).unwrap_or(f64::NAN);
    let up = asymptotic_bracket(6).map_or(f64::NAN, |b| b.upper_const);
    let ok = near(l23, 0.6733868435, 1e-9)
        && near(l33, 0.8660254038, 1e-9)
        && near(lb, 0.1494539, 1e-6)
        && near(up, 3.0, 1e-12);
    (
        ok,
        format!("l(2,3) {l23:.10}, l(3,3) {l33:.10}, lower(2,3) {lb:.7}, upper const(6) {up:.12}"),
    )
}

fn run_catalog(th: CatalogId) -> Result<Vec<(&'static str, OptimizedPartition)>, String> {
    let cfg = OptimizerConfig::default();
    case_catalog(th)
        .into_iter()
        .map(|c| {
            optimize(&c.spec, &cfg)
                .map(|p| (c.id, p))
                .map_err(|e| format!("case ({}): {e}", c.id))
        })
        .collect()
}

fn lengths(runs: &[(&str, OptimizedPartition)]) -> String {
    runs.iter()
        .map(|(id, p)| format!("({id}) {:.6}", p.total_length))
        .collect::<Vec<_>>()
        .join(", ")
}

fn halves() -> (bool, String) {
    let runs = match run_catalog(CatalogId::Halves) {
        Ok(r) => r,
        Err(e) => return (false, e),
    };
    let t = polygon_area(3).unwrap_or(f64::NAN);
    let best = (3f64.sqrt() * PI / 12.0).sqrt();
    let [(_, i), (_, ii), (_, iii)] = &runs[..] else {
        return (false, format!("expected 3 cases, got {}", runs.len()));
    };
    // A closed curve around half the area, and a semicircle on one side.
    let loop_min = 2.0 * (PI * t / 2.0).sqrt();
    let semi_min = (PI * t).sqrt();
    let ok = iii.converged
        && (iii.total_length - best).abs() <= 0.005 * best
        && i.total_length >= loop_min * 0.99
        && ii.total_length >= semi_min * 0.99
        && i.total_length > iii.total_length
        && ii.total_length > iii.total_length;
    (ok, lengths(&runs))
}

fn thirds() -> (bool, String) {
    let runs = match run_catalog(CatalogId::Thirds) {
        Ok(r) => r,
        Err(e) => return (false, e),
    };
    let Some((_, v)) = runs.iter().find(|(id, _)| *id == "v") else {
        return (false, "case (v) missing".into());
    };
    let best = 3f64.sqrt() / 2.0;
    let junction = v.node_positions[3].norm();
    let anchors = v
        .anchor_params
        .iter()
        .flatten()
        .fold(0.0f64, |m, t| m.max((t - 0.5).abs()));
    let others = runs
        .iter()
        .filter(|(id, _)| *id != "v")
        .all(|(_, p)| p.total_length > v.total_length);
    let ok = v.converged
        && (v.total_length - best).abs() <= 0.005 * best
        && junction <= 1e-3
        && anchors <= 1e-3
        && others;
    (
        ok,
        format!(
            "{}; junction offset {junction:.2e}, anchor offset {anchors:.2e}",
            lengths(&runs)
        ),
    )
}

fn arc_emergence() -> (bool, String) {
    let Some(case) = case_catalog(CatalogId::Halves)
        .into_iter()
        .find(|c| c.id == "iii")
    else {
        return (false, "case (iii) missing".into());
    };
    let mut residuals = Vec::new();
    for ppe in [64, 128] {
        let cfg = OptimizerConfig {
            points_per_edge: ppe,
            ..OptimizerConfig::default()
        };
        match optimize(&case.spec, &cfg) {
            Ok(p) => {
                let rep = arc_property_check(&p, 1e-3);
                match rep.edges.first().and_then(|e| e.relative_residual()) {
                    Some(r) => residuals.push(r),
                    None => return (false, format!("no circle fit at {ppe} points")),
                }
            }
            Err(e) => return (false, e.to_string()),
        }
    }
    let ok = residuals[0] < 1e-3 && residuals[1] < residuals[0];
    (
        ok,
        format!(
            "residual/length {:.3e} at 64 points, {:.3e} at 128",
            residuals[0], residuals[1]
        ),
    )
}

fn extremum_systems() -> (bool, String) {
    let mut worst = 0.0f64;
    for a in [3f64.sqrt() / 8.0, 3f64.sqrt() / 12.0, PI / 6.0, 1.0] {
        let (Ok(s), Ok(g)) = (sector_extremum_solve(a), segment_extremum_solve(a)) else {
            return (false, format!("solver failed at A = {a}"));
        };
        let rs = (6.0 * a / PI).sqrt();
        let rg = (2.0 * a / PI).sqrt();
        for err in [s.a - rs, s.b - rs, s.r - rs, g.r - rg, g.d - rg] {
            worst = worst.max(err.abs());
        }
    }
    (worst <= 1e-10, format!("largest deviation {worst:.2e}"))
}

fn tetrahedron_face_sum(p: [f64; 3], v: &[[f64; 3]; 4]) -> f64 {
    let sub = |a: [f64; 3], b: [f64; 3]| [a[0] - b[0], a[1] - b[1], a[2] - b[2]];
    let dot = |a: [f64; 3], b: [f64; 3]| a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
    (0..4)
        .map(|skip| {
            let f: Vec<[f64; 3]> = (0..4).filter(|&k| k != skip).map(|k| v[k]).collect();
            let (u, w) = (sub(f[1], f[0]), sub(f[2], f[0]));
            let nrm = [
                u[1] * w[2] - u[2] * w[1],
                u[2] * w[0] - u[0] * w[2],
                u[0] * w[1] - u[1] * w[0],
            ];
            (dot(nrm, sub(p, f[0])) / dot(nrm, nrm).sqrt()).abs()
        })
        .sum()
}

fn simplex_sums() -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let tri = build_polygon(3).expect("n = 3");
    let expect2 = SimplexSpec::new(2, 1.0)
        .map(|s| simplex_distance_sum(&s))
        .unwrap_or(f64::NAN);
    let mut worst2 = 0.0f64;
    for _ in 0..1000 {
        let (mut u, mut w): (f64, f64) = (rng.gen(), rng.gen());
        if u + w > 1.0 {
            (u, w) = (1.0 - u, 1.0 - w);
        }
        let p = tri.vertex(0)
            + (tri.vertex(1) - tri.vertex(0)) * u
            + (tri.vertex(2) - tri.vertex(0)) * w;
        let sum: f64 = (0..3).map(|i| tri.side_clearance(i, p)).sum();
        worst2 = worst2.max((sum - expect2).abs());
    }

    let s = 1.0 / 8f64.sqrt();
    let v = [[s, s, s], [s, -s, -s], [-s, s, -s], [-s, -s, s]];
    let expect3 = SimplexSpec::new(3, 1.0)
        .map(|s| simplex_distance_sum(&s))
        .unwrap_or(f64::NAN);
    let mut worst3 = 0.0f64;
    for _ in 0..1000 {
        let mut b: [f64; 4] = [0.0; 4];
        b.iter_mut()
            .for_each(|x| *x = -rng.gen::<f64>().max(1e-300).ln());
        let total: f64 = b.iter().sum();
        let p = [0, 1, 2].map(|k| (0..4).map(|j| b[j] / total * v[j][k]).sum::<f64>());
        worst3 = worst3.max((tetrahedron_face_sum(p, &v) - expect3).abs());
    }
    let ok = near(expect2, 3f64.sqrt() / 2.0, 1e-15)
        && worst2 <= 1e-12
        && near(expect3, (2.0f64 / 3.0).sqrt(), 1e-15)
        && worst3 <= 1e-10;
    (
        ok,
        format!("triangle deviation {worst2:.2e}, tetrahedron deviation {worst3:.2e}"),
    )
}

fn constructions() -> (bool, String) {
    let mut ok = true;
    let mut notes = Vec::new();
    for s in shipped() {
        let rep = validate_split(&s, 1e-9);
        let lb = lower_bound(s.m, s.polygon.n()).unwrap_or(f64::INFINITY);
        let pass = rep.passed() && s.total_length >= lb;
        ok &= pass;
        notes.push(format!(
            "{} {:.7}{}",
            s.label,
            s.total_length,
            if pass { "" } else { " FAIL" }
        ));
    }
    let all = shipped();
    let l23 = exact_infimum(2, 3).ok().flatten().unwrap_or(f64::NAN);
    let l33 = exact_infimum(3, 3).ok().flatten().unwrap_or(f64::NAN);
    ok &= near(all[0].total_length, l23, 1e-12) && near(all[1].total_length, l33, 1e-12);
    (ok, notes.join(", "))
}

fn hexpack() -> (bool, String) {
    let ms = [100, 1_000, 10_000, 100_000];
    let series = match ratio_series(4, &ms) {
        Ok(s) => s,
        Err(e) => return (false, e.to_string()),
    };
    let Ok(bracket) = asymptotic_bracket(4) else {
        return (false, "bracket unavailable".into());
    };
    let last = series[series.len() - 1];
    let decreasing = series
        .windows(2)
        .all(|w| w[1].l_t_per_m() < w[0].l_t_per_m());
    let ok = (last.ratio - bracket.upper_const).abs() <= 0.15 * bracket.upper_const
        && last.ratio >= bracket.lower_const * 0.95
        && last.l_t_per_m() < 0.01
        && decreasing;
    let ratios: Vec<String> = series.iter().map(|r| format!("{:.6}", r.ratio)).collect();
    (
        ok,
        format!(
            "ratios {}; l_t/m at 1e5 {:.3e}",
            ratios.join(", "),
            last.l_t_per_m()
        ),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_checks_pass() {
        for id in [1, 5, 6, 7, 8] {
            let out = run_check(id).unwrap();
            assert!(out.passed, "{out}");
        }
        assert!(run_check(0).is_none());
        assert!(run_check(9).is_none());
    }
}
