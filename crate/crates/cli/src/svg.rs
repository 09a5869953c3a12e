use std::f64::consts::{PI, TAU};
use std::fmt::Write;

use equisplit::constructions::{Cut, SplitSystem};
use equisplit::geometry::{ArcSpec, RegularPolygon};
use equisplit::Point2;

/// Drawing units per polygon side.
pub const SCALE: f64 = 500.0;
const MARGIN: f64 = 20.0;

struct Frame {
    half: f64,
}

impl Frame {
    fn new(poly: &RegularPolygon) -> Self {
        Frame {
            half: poly.circumradius() * SCALE + MARGIN,
        }
    }

    fn size(&self) -> f64 {
        2.0 * self.half
    }

    fn map(&self, p: Point2) -> (f64, f64) {
        (self.half + SCALE * p.x, self.half - SCALE * p.y)
    }

    fn pt(&self, p: Point2) -> String {
        let (x, y) = self.map(p);
        format!("{x:.3},{y:.3}")
    }
}

fn polyline(f: &Frame, pts: &[Point2], close: bool) -> String {
    let mut d = String::new();
    for (i, &p) in pts.iter().enumerate() {
        let _ = write!(d, "{}{} ", if i == 0 { "M" } else { "L" }, f.pt(p));
    }
    if close {
        d.push('Z');
    }
    d.trim_end().to_string()
}

/// Counterclockwise arcs turn clockwise once y is flipped, hence sweep flag 0.
fn arc_path(f: &Frame, arc: &ArcSpec) -> String {
    let r = arc.radius() * SCALE;
    let sweep = arc.sweep();
    if sweep >= TAU - 1e-12 {
        let mid = arc.point_at(arc.start_angle() + PI);
        return format!(
            "M{} A{r:.3},{r:.3} 0 1 0 {} A{r:.3},{r:.3} 0 1 0 {}",
            f.pt(arc.start_point()),
            f.pt(mid),
            f.pt(arc.start_point())
        );
    }
    let large = u8::from(sweep > PI);
    format!(
        "M{} A{r:.3},{r:.3} 0 {large} 0 {}",
        f.pt(arc.start_point()),
        f.pt(arc.end_point())
    )
}

fn cut_path(f: &Frame, cut: &Cut) -> String {
    match cut {
        Cut::Segment(s) => polyline(f, &[s.a, s.b], false),
        Cut::Arc(a) => arc_path(f, a),
        Cut::Chain(c) => polyline(f, c.points(), false),
    }
}

pub fn render(s: &SplitSystem) -> String {
    let f = Frame::new(&s.polygon);
    let size = f.size();
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size:.0}" height="{size:.0}" viewBox="0 0 {size:.3} {size:.3}">"#
    );
    let _ = writeln!(
        out,
        "<!-- {}: m={} n={} total length {:.10}. Scale {SCALE} units per polygon side, polygon centroid at the centre, y axis points down. -->",
        s.label,
        s.m,
        s.polygon.n(),
        s.total_length
    );
    let _ = writeln!(
        out,
        r##"<path d="{}" fill="#f4f4f4" stroke="#000000" stroke-width="2"/>"##,
        polyline(&f, s.polygon.vertices(), true)
    );
    for cut in &s.cuts {
        let _ = writeln!(
            out,
            r##"<path d="{}" fill="none" stroke="#c0392b" stroke-width="3"/>"##,
            cut_path(&f, cut)
        );
    }
    out.push_str("</svg>\n");
    out
}
