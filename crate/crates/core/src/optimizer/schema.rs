//! Line-based text format for topologies and optimization results. See
//! `docs/topology-format.md` for the grammar.

use std::collections::HashMap;
use std::fmt::Write;

use super::topology::{
    EdgeSpec, InteriorPoints, LoopStep, Node, NodeKind, RegionSpec, TopologySpec,
};
use super::OptimizedPartition;
use crate::error::{Error, Result};
use crate::geometry::{build_polygon, Point2};

fn schema<T>(line: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Schema {
        line,
        message: message.into(),
    })
}

fn number(line: usize, s: &str) -> Result<f64> {
    let v = match s.split_once('/') {
        Some((p, q)) => match (p.trim().parse::<f64>(), q.trim().parse::<f64>()) {
            (Ok(p), Ok(q)) if q != 0.0 => p / q,
            _ => return schema(line, format!("bad fraction '{s}'")),
        },
        None => match s.parse::<f64>() {
            Ok(v) => v,
            Err(_) => return schema(line, format!("bad number '{s}'")),
        },
    };
    if v.is_finite() {
        Ok(v)
    } else {
        schema(line, format!("non-finite number '{s}'"))
    }
}

fn keyed<'a>(line: usize, token: &'a str, key: &str) -> Result<&'a str> {
    match token.split_once('=') {
        Some((k, v)) if k == key => Ok(v),
        _ => schema(line, format!("expected {key}=..., found '{token}'")),
    }
}

fn point_list(line: usize, s: &str) -> Result<Vec<Point2>> {
    s.split(';')
        .filter(|p| !p.is_empty())
        .map(|p| match p.split_once(',') {
            Some((x, y)) => Ok(Point2::new(number(line, x)?, number(line, y)?)),
            None => schema(line, format!("bad point '{p}'")),
        })
        .collect()
}

enum RawStep<'a> {
    Edge(&'a str, bool),
    Walk(&'a str, &'a str),
}

fn raw_step(line: usize, tok: &str) -> Result<RawStep<'_>> {
    if let Some(name) = tok.strip_prefix('+') {
        Ok(RawStep::Edge(name, false))
    } else if let Some(name) = tok.strip_prefix('-') {
        Ok(RawStep::Edge(name, true))
    } else if let Some(inner) = tok.strip_prefix("walk(").and_then(|t| t.strip_suffix(')')) {
        match inner.split_once(',') {
            Some((a, b)) => Ok(RawStep::Walk(a.trim(), b.trim())),
            None => schema(line, format!("bad walk '{tok}'")),
        }
    } else {
        schema(line, format!("unknown region step '{tok}'"))
    }
}

/// Parses a topology. Result lines (`result`, `residual`, `multiplier`) are
/// ignored, so the output of [`write_partition`] reads back as a warm start.
pub fn parse_topology(text: &str) -> Result<TopologySpec> {
    let mut polygon = None;
    let mut label = String::new();
    let mut fractions = None;
    let mut nodes: Vec<Node> = Vec::new();
    let mut edges: Vec<(usize, String, String, String, InteriorPoints, Vec<Point2>)> = Vec::new();
    let mut regions: Vec<(usize, String)> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (keyword, rest) = content
            .split_once(char::is_whitespace)
            .unwrap_or((content, ""));
        let rest = rest.trim();
        let toks: Vec<&str> = rest.split_whitespace().collect();
        match keyword {
            "polygon" => {
                if polygon.is_some() {
                    return schema(ln, "polygon given twice");
                }
                let n: usize = match rest.parse() {
                    Ok(n) => n,
                    Err(_) => return schema(ln, format!("bad side count '{rest}'")),
                };
                polygon = Some(build_polygon(n).or_else(|e| schema(ln, e.to_string()))?);
            }
            "label" => label = rest.to_string(),
            "fractions" => {
                if toks.is_empty() {
                    return schema(ln, "no fractions");
                }
                fractions = Some(
                    toks.iter()
                        .map(|t| number(ln, t))
                        .collect::<Result<Vec<_>>>()?,
                );
            }
            "anchor" => {
                if !(toks.len() == 3 || (toks.len() == 4 && toks[3] == "fixed")) {
                    return schema(ln, "expected: anchor <name> side=<i> t=<x> [fixed]");
                }
                let side = keyed(ln, toks[1], "side")?;
                let side: usize = side
                    .parse()
                    .or_else(|_| schema(ln, format!("bad side '{side}'")))?;
                let t = number(ln, keyed(ln, toks[2], "t")?)?;
                nodes.push(Node {
                    name: toks[0].into(),
                    kind: NodeKind::Anchor {
                        side,
                        t,
                        fixed: toks.len() == 4,
                    },
                });
            }
            "junction" => {
                if toks.len() != 3 {
                    return schema(ln, "expected: junction <name> x=<x> y=<y>");
                }
                let at = Point2::new(
                    number(ln, keyed(ln, toks[1], "x")?)?,
                    number(ln, keyed(ln, toks[2], "y")?)?,
                );
                nodes.push(Node {
                    name: toks[0].into(),
                    kind: NodeKind::Junction { at },
                });
            }
            "edge" => {
                if toks.len() < 4 || toks.len() > 5 {
                    return schema(
                        ln,
                        "expected: edge <name> <from> <to> k=<n|auto> [guide=x,y;...]",
                    );
                }
                let k = keyed(ln, toks[3], "k")?;
                let interior = if k == "auto" {
                    InteriorPoints::Auto
                } else {
                    InteriorPoints::Count(
                        k.parse()
                            .or_else(|_| schema(ln, format!("bad point count '{k}'")))?,
                    )
                };
                let guide = match toks.get(4) {
                    Some(g) => point_list(ln, keyed(ln, g, "guide")?)?,
                    None => Vec::new(),
                };
                edges.push((
                    ln,
                    toks[0].into(),
                    toks[1].into(),
                    toks[2].into(),
                    interior,
                    guide,
                ));
            }
            "region" => regions.push((ln, rest.to_string())),
            "result" | "residual" | "multiplier" => {}
            other => return schema(ln, format!("unknown keyword '{other}'")),
        }
    }

    let polygon = match polygon {
        Some(p) => p,
        None => return schema(0, "missing polygon line"),
    };
    let fractions = match fractions {
        Some(f) => f,
        None => return schema(0, "missing fractions line"),
    };
    let mut spec = TopologySpec::new(label, polygon, fractions);

    let mut node_ids = HashMap::new();
    for (i, node) in nodes.iter().enumerate() {
        if node_ids.insert(node.name.clone(), i).is_some() {
            return schema(0, format!("duplicate node '{}'", node.name));
        }
    }
    spec.nodes = nodes;
    let mut edge_ids = HashMap::new();
    for (ln, name, a, b, interior, guide) in edges {
        let a = *node_ids.get(&a).ok_or_else(|| Error::Schema {
            line: ln,
            message: format!("unknown node '{a}'"),
        })?;
        let b = *node_ids.get(&b).ok_or_else(|| Error::Schema {
            line: ln,
            message: format!("unknown node '{b}'"),
        })?;
        if edge_ids.insert(name.clone(), spec.edges.len()).is_some() {
            return schema(ln, format!("duplicate edge '{name}'"));
        }
        spec.edges.push(EdgeSpec {
            name,
            a,
            b,
            interior,
            guide,
        });
    }
    for (ln, text) in regions {
        let mut rings = Vec::new();
        for ring_text in text.split('|') {
            let mut ring = Vec::new();
            for tok in ring_text.split_whitespace() {
                let step = match raw_step(ln, tok)? {
                    RawStep::Edge(name, reversed) => match edge_ids.get(name) {
                        Some(&edge) => LoopStep::Edge { edge, reversed },
                        None => return schema(ln, format!("unknown edge '{name}'")),
                    },
                    RawStep::Walk(a, b) => match (node_ids.get(a), node_ids.get(b)) {
                        (Some(&from), Some(&to)) => LoopStep::Walk { from, to },
                        _ => return schema(ln, format!("unknown node in '{tok}'")),
                    },
                };
                ring.push(step);
            }
            rings.push(ring);
        }
        spec.regions.push(RegionSpec { rings });
    }
    spec.validate()?;
    Ok(spec)
}

pub fn write_topology(spec: &TopologySpec) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "polygon {}", spec.polygon.n());
    if !spec.label.is_empty() {
        let _ = writeln!(out, "label {}", spec.label);
    }
    let fr: Vec<String> = spec
        .target_fractions
        .iter()
        .map(|f| f.to_string())
        .collect();
    let _ = writeln!(out, "fractions {}", fr.join(" "));
    for node in &spec.nodes {
        match node.kind {
            NodeKind::Anchor { side, t, fixed } => {
                let _ = writeln!(
                    out,
                    "anchor {} side={side} t={t}{}",
                    node.name,
                    if fixed { " fixed" } else { "" }
                );
            }
            NodeKind::Junction { at } => {
                let _ = writeln!(out, "junction {} x={} y={}", node.name, at.x, at.y);
            }
        }
    }
    for e in &spec.edges {
        let k = match e.interior {
            InteriorPoints::Auto => "auto".to_string(),
            InteriorPoints::Count(k) => k.to_string(),
        };
        let _ = write!(
            out,
            "edge {} {} {} k={k}",
            e.name, spec.nodes[e.a].name, spec.nodes[e.b].name
        );
        if !e.guide.is_empty() {
            let pts: Vec<String> = e.guide.iter().map(|p| format!("{},{}", p.x, p.y)).collect();
            let _ = write!(out, " guide={}", pts.join(";"));
        }
        out.push('\n');
    }
    for r in &spec.regions {
        let rings: Vec<String> = r
            .rings
            .iter()
            .map(|ring| {
                ring.iter()
                    .map(|s| match *s {
                        LoopStep::Edge { edge, reversed } => {
                            format!(
                                "{}{}",
                                if reversed { '-' } else { '+' },
                                spec.edges[edge].name
                            )
                        }
                        LoopStep::Walk { from, to } => {
                            format!("walk({},{})", spec.nodes[from].name, spec.nodes[to].name)
                        }
                    })
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        let _ = writeln!(out, "region {}", rings.join(" | "));
    }
    out
}

/// The optimized geometry in topology form followed by result lines.
pub fn write_partition(spec: &TopologySpec, p: &OptimizedPartition) -> String {
    let mut out = write_topology(&p.warm_start(spec));
    let _ = writeln!(
        out,
        "result length={} converged={} outer={} inner={}",
        p.total_length, p.converged, p.outer_iterations, p.inner_iterations
    );
    for (i, r) in p.constraint_residuals.iter().enumerate() {
        let _ = writeln!(out, "residual {i} {r}");
    }
    for (i, l) in p.multiplier_estimates.iter().enumerate() {
        let _ = writeln!(out, "multiplier {i} {l}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const CORNER: &str = "\
# halving cut across a corner
polygon 3
label corner
fractions 1/2 1/2
anchor a side=0 t=0.6
anchor b side=2 t=0.4
edge cut a b k=auto
region walk(b,a) +cut
";

    #[test]
    fn parses_corner() {
        let spec = parse_topology(CORNER).unwrap();
        assert_eq!(spec.nodes.len(), 2);
        assert_eq!(spec.target_fractions, vec![0.5, 0.5]);
        assert_eq!(
            spec.regions[0].rings[0],
            vec![LoopStep::walk(1, 0), LoopStep::forward(0)]
        );
    }

    #[test]
    fn round_trip() {
        let spec = parse_topology(CORNER).unwrap();
        assert_eq!(parse_topology(&write_topology(&spec)).unwrap(), spec);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let bad = CORNER.replace("edge cut a b k=auto", "edge cut a zz k=auto");
        match parse_topology(&bad) {
            Err(Error::Schema { line, .. }) => assert_eq!(line, 7),
            other => panic!("{other:?}"),
        }
        let bad = CORNER.replace("t=0.6", "t=abc");
        assert!(matches!(
            parse_topology(&bad),
            Err(Error::Schema { line: 5, .. })
        ));
        assert!(matches!(
            parse_topology("fractions 1\n"),
            Err(Error::Schema { .. })
        ));
    }
}
