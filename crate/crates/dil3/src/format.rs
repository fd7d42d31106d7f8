//! Plain-text formats: edge lists, periodic specs, path literals and render
//! states. All of them are line based, `#` starts a comment and blank lines
//! are ignored.

use std::fmt::Write as _;

use dil3_core::cert::BoundWitness;
use dil3_core::dilation::{PeriodicSpec, VariantBlock};
use dil3_core::lattice::split_stroke;
use dil3_core::paths::{ClosePair, PathCandidate};
use dil3_core::{Edge, GraphPatch, Point};
use thiserror::Error;

use crate::render::Annotation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct FormatError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> FormatError {
    FormatError { line, message: message.into() }
}

/// Content lines with their 1-based numbers, comments stripped.
fn lines(src: &str) -> impl Iterator<Item = (usize, &str)> {
    src.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

fn ints(line: usize, s: &str) -> Result<Vec<i32>, FormatError> {
    s.split_whitespace()
        .map(|t| t.parse::<i32>().map_err(|_| err(line, format!("expected an integer, found {t:?}"))))
        .collect()
}

fn edges_from_ints(line: usize, v: &[i32]) -> Result<Vec<Edge>, FormatError> {
    if !v.len().is_multiple_of(4) {
        return Err(err(line, "edges need four coordinates each"));
    }
    v.chunks(4)
        .map(|c| {
            Edge::new(Point::new(c[0], c[1]), Point::new(c[2], c[3])).ok_or_else(|| err(line, "edge endpoints coincide"))
        })
        .collect()
}

fn parse_point(line: usize, t: &str) -> Result<Point, FormatError> {
    let (x, y) = t.split_once(',').ok_or_else(|| err(line, format!("expected x,y, found {t:?}")))?;
    let x = x.trim().parse().map_err(|_| err(line, format!("bad x in {t:?}")))?;
    let y = y.trim().parse().map_err(|_| err(line, format!("bad y in {t:?}")))?;
    Ok(Point::new(x, y))
}

fn parse_points(line: usize, s: &str) -> Result<Vec<Point>, FormatError> {
    s.split_whitespace().map(|t| parse_point(line, t)).collect()
}

/// One edge per line: `x1 y1 x2 y2`.
pub fn parse_edge_list(src: &str) -> Result<GraphPatch, FormatError> {
    let mut s = GraphPatch::new();
    for (n, l) in lines(src) {
        let v = ints(n, l)?;
        if v.len() != 4 {
            return Err(err(n, "expected x1 y1 x2 y2"));
        }
        for e in edges_from_ints(n, &v)? {
            s.insert(e);
        }
    }
    Ok(s)
}

pub fn write_edge_list(s: &GraphPatch) -> String {
    let mut out = String::new();
    for e in s.edges() {
        let [a, b] = e.endpoints();
        writeln!(out, "{} {} {} {}", a.x, a.y, b.x, b.y).unwrap();
    }
    out
}

/// Whitespace-separated `x,y` vertices.
pub fn parse_path(src: &str) -> Result<PathCandidate, FormatError> {
    let pts = parse_points(1, src)?;
    PathCandidate::from_vertices(pts).ok_or_else(|| err(1, "not a simple path of unit and diagonal steps"))
}

/// `period t1x t1y t2x t2y`, then edge lines, then optional
/// `variant ax ay { A-edges | B-edges }` lines. An edge passing through
/// lattice points is split there.
pub fn parse_periodic(src: &str) -> Result<PeriodicSpec, FormatError> {
    let mut period: Option<(Point, Point)> = None;
    let mut edges: Vec<Edge> = Vec::new();
    let mut variants = Vec::new();
    let strokes = |n: usize, v: &[i32]| -> Result<Vec<Edge>, FormatError> {
        let raw = edges_from_ints(n, v)?;
        Ok(raw.iter().flat_map(|e| split_stroke(e.a(), e.b())).collect())
    };
    for (n, l) in lines(src) {
        if let Some(rest) = l.strip_prefix("period") {
            let v = ints(n, rest)?;
            if v.len() != 4 {
                return Err(err(n, "expected period t1x t1y t2x t2y"));
            }
            if period.is_some() {
                return Err(err(n, "period given twice"));
            }
            period = Some((Point::new(v[0], v[1]), Point::new(v[2], v[3])));
        } else if let Some(rest) = l.strip_prefix("variant") {
            let (head, body) = rest.split_once('{').ok_or_else(|| err(n, "expected '{' after the anchor"))?;
            let body = body.trim().strip_suffix('}').ok_or_else(|| err(n, "expected closing '}'"))?;
            let (a, b) = body.split_once('|').ok_or_else(|| err(n, "expected A-edges | B-edges"))?;
            let anchor = ints(n, head)?;
            if anchor.len() != 2 {
                return Err(err(n, "expected variant ax ay"));
            }
            variants.push(VariantBlock {
                anchor: Point::new(anchor[0], anchor[1]),
                a: strokes(n, &ints(n, a)?)?,
                b: strokes(n, &ints(n, b)?)?,
            });
        } else {
            if period.is_none() {
                return Err(err(n, "edges before the period line"));
            }
            let v = ints(n, l)?;
            if v.len() != 4 {
                return Err(err(n, "expected x1 y1 x2 y2"));
            }
            for e in strokes(n, &v)? {
                if !edges.contains(&e) {
                    edges.push(e);
                }
            }
        }
    }
    let (t1, t2) = period.ok_or_else(|| err(0, "missing period line"))?;
    Ok(PeriodicSpec { t1, t2, edges, variants })
}

pub fn write_periodic(spec: &PeriodicSpec) -> String {
    let mut out = String::new();
    writeln!(out, "period {} {} {} {}", spec.t1.x, spec.t1.y, spec.t2.x, spec.t2.y).unwrap();
    let edge = |e: &Edge| {
        let [a, b] = e.endpoints();
        format!("{} {} {} {}", a.x, a.y, b.x, b.y)
    };
    for e in &spec.edges {
        writeln!(out, "{}", edge(e)).unwrap();
    }
    for v in &spec.variants {
        let a: Vec<String> = v.a.iter().map(edge).collect();
        let b: Vec<String> = v.b.iter().map(edge).collect();
        writeln!(out, "variant {} {} {{ {} | {} }}", v.anchor.x, v.anchor.y, a.join(" "), b.join(" ")).unwrap();
    }
    out
}

/// A patch plus overlays, as drawn by [`crate::render::render_svg`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RenderState {
    pub patch: GraphPatch,
    pub annotations: Vec<Annotation>,
}

/// Edge lines plus directives:
///
/// ```text
/// contradiction x1 y1 x2 y2
/// deduction x,y x,y ...
/// pattern-edge x1 y1 x2 y2
/// bound x,y ... | x,y ...
/// ```
///
/// Consecutive `pattern-edge` lines form one highlighted copy. A `bound`
/// line lists the walk from `u` and the walk into `v`.
pub fn parse_render_state(src: &str) -> Result<RenderState, FormatError> {
    let mut state = RenderState::default();
    let mut pattern: Vec<Edge> = Vec::new();
    let flush = |pattern: &mut Vec<Edge>, anns: &mut Vec<Annotation>| {
        if !pattern.is_empty() {
            anns.push(Annotation::Pattern(std::mem::take(pattern)));
        }
    };
    for (n, l) in lines(src) {
        let (word, rest) = l.split_once(char::is_whitespace).unwrap_or((l, ""));
        if word != "pattern-edge" {
            flush(&mut pattern, &mut state.annotations);
        }
        match word {
            "contradiction" => {
                let v = ints(n, rest)?;
                if v.len() != 4 {
                    return Err(err(n, "expected contradiction x1 y1 x2 y2"));
                }
                let pair = ClosePair::new(Point::new(v[0], v[1]), Point::new(v[2], v[3]))
                    .map_err(|e| err(n, e.to_string()))?;
                state.annotations.push(Annotation::Contradiction(pair));
            }
            "deduction" => {
                let path = PathCandidate::from_vertices(parse_points(n, rest)?)
                    .ok_or_else(|| err(n, "not a simple path of unit and diagonal steps"))?;
                state.annotations.push(Annotation::Deduction(path));
            }
            "pattern-edge" => {
                let v = ints(n, rest)?;
                if v.len() != 4 {
                    return Err(err(n, "expected pattern-edge x1 y1 x2 y2"));
                }
                pattern.extend(edges_from_ints(n, &v)?);
            }
            "bound" => {
                let (h, t) = rest.split_once('|').ok_or_else(|| err(n, "expected head | tail"))?;
                let head = parse_points(n, h)?;
                let tail = parse_points(n, t)?;
                if head.is_empty() || tail.is_empty() {
                    return Err(err(n, "bound walks must be nonempty"));
                }
                state.annotations.push(Annotation::Bound(BoundWitness { head, tail }));
            }
            _ => {
                let v = ints(n, l)?;
                if v.len() != 4 {
                    return Err(err(n, format!("unknown directive {word:?}")));
                }
                for e in edges_from_ints(n, &v)? {
                    state.patch.insert(e);
                }
            }
        }
    }
    flush(&mut pattern, &mut state.annotations);
    Ok(state)
}
