//! End-to-end acceptance criteria. Each criterion prints one PASS/FAIL line;
//! the process exits non-zero if any fails.
//!
//! Reference values are recomputed here from first principles rather than
//! taken from the library.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use equisplit::closed_form::{
    asymptotic_bracket, exact_infimum, lower_bound, simplex_distance_sum, SimplexSpec,
};
use equisplit::constructions::{shipped, validate_split};
use equisplit::hexpack::ratio_series;
use equisplit::optimizer::{
    case_catalog, optimize, sector_extremum_solve, segment_extremum_solve, CatalogId,
    OptimizedPartition, OptimizerConfig,
};
use equisplit::Point2;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn sqrt3() -> f64 {
    3f64.sqrt()
}

struct Outcome {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome {
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failures.push(what.into());
        }
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

fn c1_closed_forms(o: &mut Outcome) {
    let l23 = exact_infimum(2, 3).unwrap().unwrap();
    let l33 = exact_infimum(3, 3).unwrap().unwrap();
    let lb = lower_bound(2, 3).unwrap();
    let up = asymptotic_bracket(6).unwrap().upper_const;
    o.check(close(l23, 0.6733868435, 1e-9), format!("l(2,3) = {l23}"));
    o.check(close(l33, 0.8660254038, 1e-9), format!("l(3,3) = {l33}"));
    o.check(close(lb, 0.1494539, 1e-6), format!("lower(2,3) = {lb}"));
    o.check(close(up, 3.0, 1e-12), format!("upper const(6) = {up}"));
    // Independent evaluation of the same quantities.
    o.check(
        close(l23, (sqrt3() * PI / 12.0).sqrt(), 1e-15),
        "l(2,3) formula",
    );
    o.check(
        close(lb, 0.5 * ((6.0 * PI / 3f64.sqrt()).sqrt() - 3.0), 1e-15),
        "lower(2,3) formula",
    );
    o.note(format!(
        "l23 {l23:.10} l33 {l33:.10} lb {lb:.7} up6 {up:.12}"
    ));
}

fn run(id: CatalogId) -> Vec<(&'static str, OptimizedPartition)> {
    let cfg = OptimizerConfig::default();
    case_catalog(id)
        .into_iter()
        .map(|c| {
            (
                c.id,
                optimize(&c.spec, &cfg).expect("catalog case optimizes"),
            )
        })
        .collect()
}

fn summary(runs: &[(&str, OptimizedPartition)]) -> String {
    runs.iter()
        .map(|(id, p)| {
            format!(
                "({id}) {:.7}{}",
                p.total_length,
                if p.converged { "" } else { "*" }
            )
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn c2_halves(o: &mut Outcome) {
    let runs = run(CatalogId::Halves);
    let len = |id: &str| {
        runs.iter()
            .find(|(i, _)| *i == id)
            .map(|(_, p)| p.total_length)
            .unwrap()
    };
    let best = (sqrt3() * PI / 12.0).sqrt();
    let iii = &runs.iter().find(|(i, _)| *i == "iii").unwrap().1;
    o.check(iii.converged, "case (iii) did not converge");
    o.check(
        (len("iii") - best).abs() <= 0.005 * best,
        format!("case (iii) {} vs {best}", len("iii")),
    );
    let loop_bound = (sqrt3() * PI / 2.0).sqrt() * 0.99;
    let semi_bound = (sqrt3() * PI / 4.0).sqrt() * 0.99;
    o.check(
        len("i") >= loop_bound,
        format!("case (i) {} < {loop_bound}", len("i")),
    );
    o.check(
        len("ii") >= semi_bound,
        format!("case (ii) {} < {semi_bound}", len("ii")),
    );
    o.check(
        len("i") > len("iii") && len("ii") > len("iii"),
        "case (iii) is not the shortest",
    );
    o.note(summary(&runs));
}

fn c3_thirds(o: &mut Outcome) {
    let runs = run(CatalogId::Thirds);
    let v = &runs.iter().find(|(i, _)| *i == "v").unwrap().1;
    let best = sqrt3() / 2.0;
    o.check(v.converged, "case (v) did not converge");
    o.check(
        (v.total_length - best).abs() <= 0.005 * best,
        format!("case (v) {} vs {best}", v.total_length),
    );
    // Centroid of the canonical triangle: mean of its vertices.
    let verts = [
        Point2::new(-0.5, -sqrt3() / 6.0),
        Point2::new(0.5, -sqrt3() / 6.0),
        Point2::new(0.0, sqrt3() / 3.0),
    ];
    let centroid = (verts[0] + verts[1] + verts[2]) * (1.0 / 3.0);
    let junction = v
        .node_positions
        .iter()
        .zip(&v.anchor_params)
        .find(|(_, t)| t.is_none())
        .unwrap()
        .0;
    o.check(
        junction.dist(centroid) <= 1e-3,
        format!("junction {junction} off centroid"),
    );
    for (k, (p, t)) in v.node_positions.iter().zip(&v.anchor_params).enumerate() {
        if t.is_some() {
            let mid = [0, 1, 2]
                .map(|s| (verts[s] + verts[(s + 1) % 3]) * 0.5)
                .into_iter()
                .map(|m| m.dist(*p))
                .fold(f64::INFINITY, f64::min);
            o.check(
                mid <= 1e-3,
                format!("anchor {k} is {mid:.2e} from the nearest side midpoint"),
            );
        }
    }
    for (id, p) in &runs {
        if *id != "v" {
            o.check(
                p.total_length > v.total_length,
                format!("case ({id}) {} not above case (v)", p.total_length),
            );
        }
    }
    o.note(summary(&runs));
}

/// Least-squares circle through `pts`: solves the 3x3 normal equations of
/// x^2 + y^2 + D x + E y + F = 0 by Cramer's rule; returns the largest
/// radial deviation.
fn fit_residual(pts: &[Point2]) -> f64 {
    let mut m = [[0.0f64; 3]; 3];
    let mut rhs = [0.0f64; 3];
    for p in pts {
        let row = [p.x, p.y, 1.0];
        let z = -(p.x * p.x + p.y * p.y);
        for i in 0..3 {
            for j in 0..3 {
                m[i][j] += row[i] * row[j];
            }
            rhs[i] += row[i] * z;
        }
    }
    let det = |a: [[f64; 3]; 3]| {
        a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
            - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
            + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
    };
    let d = det(m);
    let sol: Vec<f64> = (0..3)
        .map(|c| {
            let mut a = m;
            for r in 0..3 {
                a[r][c] = rhs[r];
            }
            det(a) / d
        })
        .collect();
    let centre = Point2::new(-sol[0] / 2.0, -sol[1] / 2.0);
    let radius = (centre.x * centre.x + centre.y * centre.y - sol[2]).sqrt();
    pts.iter()
        .map(|p| (p.dist(centre) - radius).abs())
        .fold(0.0, f64::max)
}

fn c4_arc(o: &mut Outcome) {
    let case = case_catalog(CatalogId::Halves)
        .into_iter()
        .find(|c| c.id == "iii")
        .unwrap();
    let mut rel = Vec::new();
    for ppe in [64, 128] {
        let cfg = OptimizerConfig {
            points_per_edge: ppe,
            ..OptimizerConfig::default()
        };
        let p = optimize(&case.spec, &cfg).unwrap();
        let path = &p.edge_paths[0];
        let length: f64 = path.windows(2).map(|w| w[0].dist(w[1])).sum();
        // Vertices plus chord midpoints: the polyline itself, not just its corners.
        let mut pts = path.clone();
        pts.extend(path.windows(2).map(|w| (w[0] + w[1]) * 0.5));
        rel.push(fit_residual(&pts) / length);
    }
    o.check(
        rel[0] < 1e-3,
        format!("residual/length {:.3e} at 64 points", rel[0]),
    );
    o.check(
        rel[1] < rel[0],
        format!(
            "no decrease on refinement: {:.3e} -> {:.3e}",
            rel[0], rel[1]
        ),
    );
    o.note(format!(
        "residual/length {:.3e} (64) {:.3e} (128)",
        rel[0], rel[1]
    ));
}

fn c5_extremum(o: &mut Outcome) {
    let mut worst = 0.0f64;
    for a in [sqrt3() / 8.0, sqrt3() / 12.0, PI / 6.0, 1.0] {
        let s = sector_extremum_solve(a).unwrap();
        let g = segment_extremum_solve(a).unwrap();
        let rs = (6.0 * a / PI).sqrt();
        let rg = (2.0 * a / PI).sqrt();
        for (got, want, what) in [
            (s.a, rs, "a"),
            (s.b, rs, "b"),
            (s.r, rs, "r"),
            (g.r, rg, "seg r"),
            (g.d, rg, "seg d"),
        ] {
            o.check(
                close(got, want, 1e-10),
                format!("A = {a}: {what} = {got}, expected {want}"),
            );
            worst = worst.max((got - want).abs());
        }
    }
    o.note(format!("largest deviation {worst:.2e}"));
}

fn c6_simplex(o: &mut Outcome) {
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_601);
    let s2 = simplex_distance_sum(&SimplexSpec::new(2, 1.0).unwrap());
    o.check(
        close(s2, sqrt3() / 2.0, 1e-15),
        format!("planar constant {s2}"),
    );
    let (a, b, c) = (
        Point2::new(0.0, 0.0),
        Point2::new(1.0, 0.0),
        Point2::new(0.5, sqrt3() / 2.0),
    );
    let line_dist = |p: Point2, u: Point2, v: Point2| ((v - u).cross(p - u)).abs() / u.dist(v);
    let mut worst2 = 0.0f64;
    for _ in 0..1000 {
        let (x, y): (f64, f64) = (rng.gen_range(0.0..1.0), rng.gen_range(0.0..1.0));
        let (x, y) = if x + y > 1.0 {
            (1.0 - x, 1.0 - y)
        } else {
            (x, y)
        };
        let p = a + (b - a) * x + (c - a) * y;
        let sum = line_dist(p, a, b) + line_dist(p, b, c) + line_dist(p, c, a);
        worst2 = worst2.max((sum - s2).abs());
    }
    o.check(worst2 <= 1e-12, format!("triangle deviation {worst2:.2e}"));

    let s3 = simplex_distance_sum(&SimplexSpec::new(3, 1.0).unwrap());
    o.check(
        close(s3, (2.0f64 / 3.0).sqrt(), 1e-15),
        format!("tetrahedron constant {s3}"),
    );
    // Unit-edge tetrahedron: base triangle in z = 0, apex above its centroid.
    let h = (2.0f64 / 3.0).sqrt();
    let v = [
        [0.0, 0.0, 0.0],
        [1.0, 0.0, 0.0],
        [0.5, sqrt3() / 2.0, 0.0],
        [0.5, sqrt3() / 6.0, h],
    ];
    let mut worst3 = 0.0f64;
    for _ in 0..1000 {
        let mut w: Vec<f64> = (0..4).map(|_| rng.gen_range(1e-6..1.0)).collect();
        let total: f64 = w.iter().sum();
        w.iter_mut().for_each(|x| *x /= total);
        let p: Vec<f64> = (0..3)
            .map(|k| (0..4).map(|j| w[j] * v[j][k]).sum())
            .collect();
        let mut sum = 0.0;
        for skip in 0..4 {
            let f: Vec<[f64; 3]> = (0..4).filter(|&j| j != skip).map(|j| v[j]).collect();
            let e1 = [f[1][0] - f[0][0], f[1][1] - f[0][1], f[1][2] - f[0][2]];
            let e2 = [f[2][0] - f[0][0], f[2][1] - f[0][1], f[2][2] - f[0][2]];
            let n = [
                e1[1] * e2[2] - e1[2] * e2[1],
                e1[2] * e2[0] - e1[0] * e2[2],
                e1[0] * e2[1] - e1[1] * e2[0],
            ];
            let nn = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
            let d = (0..3).map(|k| n[k] * (p[k] - f[0][k])).sum::<f64>() / nn;
            sum += d.abs();
        }
        worst3 = worst3.max((sum - s3).abs());
    }
    o.check(
        worst3 <= 1e-10,
        format!("tetrahedron deviation {worst3:.2e}"),
    );
    o.note(format!("triangle {worst2:.1e}, tetrahedron {worst3:.1e}"));
}

fn c7_constructions(o: &mut Outcome) {
    let all = shipped();
    o.check(
        all.len() == 7,
        format!("{} shipped constructions", all.len()),
    );
    for s in &all {
        let rep = validate_split(s, 1e-9);
        o.check(
            rep.passed(),
            format!("{}: {}", s.label, rep.failures.join("; ")),
        );
        let n = s.polygon.n() as f64;
        let cot = 1.0 / (PI / n).tan();
        let lb = (0.5 * ((s.m as f64 * n * PI * cot).sqrt() - n)).max(0.0);
        o.check(
            s.total_length >= lb,
            format!("{} length {} below bound {lb}", s.label, s.total_length),
        );
    }
    let l23 = (sqrt3() * PI / 12.0).sqrt();
    o.check(
        close(all[0].total_length, l23, 1e-12),
        format!("corner arc {}", all[0].total_length),
    );
    o.check(
        close(all[1].total_length, sqrt3() / 2.0, 1e-12),
        format!("y split {}", all[1].total_length),
    );
    o.note(
        all.iter()
            .map(|s| format!("{} {:.7}", s.label, s.total_length))
            .collect::<Vec<_>>()
            .join(", "),
    );
}

fn c8_hexpack(o: &mut Outcome) {
    let ms = [100u64, 1_000, 10_000, 100_000];
    let series = ratio_series(4, &ms).unwrap();
    // For the unit square, n cot(pi/n) = 4.
    let upper = (sqrt3() / 2.0 * 4.0).sqrt();
    let lower = 0.5 * (PI * 4.0).sqrt();
    o.check(
        close(upper, 1.8612097, 1e-7) && close(lower, 1.7724539, 1e-7),
        "bracket constants",
    );
    let last = series.last().unwrap();
    o.check(
        (last.ratio - upper).abs() <= 0.15 * upper,
        format!("ratio {} at 1e5", last.ratio),
    );
    o.check(
        last.ratio >= lower * 0.95,
        format!("ratio {} below bracket", last.ratio),
    );
    let per_m: Vec<f64> = series
        .iter()
        .map(|r| {
            let h = (4.0 / (6.0 * sqrt3() * r.m as f64)).sqrt();
            (r.m - r.embedded_count) as f64 * 2.0 * h / r.m as f64
        })
        .collect();
    for (r, v) in series.iter().zip(&per_m) {
        o.check(
            close(r.l_t / r.m as f64, *v, 1e-12),
            format!("l_t at m = {}", r.m),
        );
    }
    o.check(per_m[3] < 0.01, format!("l_t/m {} at 1e5", per_m[3]));
    o.check(
        per_m.windows(2).all(|w| w[1] < w[0]),
        format!("l_t/m not decreasing: {per_m:?}"),
    );
    o.note(format!(
        "ratios {}",
        series
            .iter()
            .map(|r| format!("{:.6}", r.ratio))
            .collect::<Vec<_>>()
            .join(" ")
    ));
}

fn main() -> ExitCode {
    let criteria: [(&str, fn(&mut Outcome), Duration); 8] = [
        (
            "closed-form fidelity",
            c1_closed_forms,
            Duration::from_secs(1),
        ),
        (
            "optimizer recovers the halves infimum",
            c2_halves,
            Duration::from_secs(60),
        ),
        (
            "optimizer recovers the thirds infimum",
            c3_thirds,
            Duration::from_secs(120),
        ),
        ("arc emergence", c4_arc, Duration::from_secs(120)),
        ("extremum systems", c5_extremum, Duration::from_secs(1)),
        ("simplex identity", c6_simplex, Duration::from_secs(1)),
        (
            "construction validity",
            c7_constructions,
            Duration::from_secs(1),
        ),
        ("hexpack asymptotics", c8_hexpack, Duration::from_secs(120)),
    ];
    let mut failed = 0;
    for (k, (name, f, budget)) in criteria.iter().enumerate() {
        let mut o = Outcome::new();
        let start = Instant::now();
        f(&mut o);
        let elapsed = start.elapsed();
        o.check(
            elapsed <= *budget,
            format!(
                "took {:.1} s, budget {} s",
                elapsed.as_secs_f64(),
                budget.as_secs()
            ),
        );
        let ok = o.failures.is_empty();
        if !ok {
            failed += 1;
        }
        println!(
            "{} criterion {} {name} ({:.3} s): {}",
            if ok { "PASS" } else { "FAIL" },
            k + 1,
            elapsed.as_secs_f64(),
            o.notes.join("; ")
        );
        for msg in &o.failures {
            println!("    {msg}");
        }
    }
    println!("acceptance: {} of 8 criteria passed", 8 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
