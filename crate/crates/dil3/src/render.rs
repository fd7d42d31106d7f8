//! Static SVG views of edge sets and proof states.

use std::fmt::Write as _;

use dil3_core::cert::BoundWitness;
use dil3_core::paths::{ClosePair, PathCandidate};
use dil3_core::{Edge, GraphPatch, Point};

pub const UNIT_PX: i32 = 40;
pub const PADDING: i32 = 2;

pub const CONTRADICTION_COLOR: &str = "#d62728";
pub const DEDUCTION_COLOR: &str = "#2ca02c";
pub const PATTERN_COLOR: &str = "#7b2cbf";
pub const BOUND_COLOR: &str = "#e377c2";

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Annotation {
    /// A close pair without admissible paths.
    Contradiction(ClosePair),
    /// The single admissible path of a pair.
    Deduction(PathCandidate),
    /// A copy of a forbidden pattern.
    Pattern(Vec<Edge>),
    /// Walks from `u` and into `v` bridged by a close pair.
    Bound(BoundWitness),
}

impl Annotation {
    fn points(&self) -> Vec<Point> {
        match self {
            Annotation::Contradiction(p) => vec![p.p, p.q],
            Annotation::Deduction(path) => path.vertices.clone(),
            Annotation::Pattern(edges) => edges.iter().flat_map(|e| e.endpoints()).collect(),
            Annotation::Bound(w) => w.head.iter().chain(&w.tail).copied().collect(),
        }
    }
}

fn sx(p: Point) -> i32 {
    p.x * UNIT_PX
}

fn sy(p: Point) -> i32 {
    -p.y * UNIT_PX
}

fn line(out: &mut String, a: Point, b: Point, extra: &str) {
    writeln!(out, r#"    <line x1="{}" y1="{}" x2="{}" y2="{}"{extra}/>"#, sx(a), sy(a), sx(b), sy(b)).unwrap();
}

fn polyline(out: &mut String, pts: &[Point], extra: &str) {
    let coords: Vec<String> = pts.iter().map(|p| format!("{},{}", sx(*p), sy(*p))).collect();
    writeln!(out, r#"    <polyline points="{}" fill="none"{extra}/>"#, coords.join(" ")).unwrap();
}

fn marker(out: &mut String, p: Point, color: &str, label: &str) {
    writeln!(out, r#"    <circle cx="{}" cy="{}" r="7" fill="{color}"/>"#, sx(p), sy(p)).unwrap();
    writeln!(
        out,
        r#"    <text x="{}" y="{}" font-family="sans-serif" font-size="14" fill="{color}">{label}</text>"#,
        sx(p) + 9,
        sy(p) - 9
    )
    .unwrap();
}

/// Deterministic SVG of `s` with overlays. One lattice unit is
/// [`UNIT_PX`] pixels, y points up, and the view is centered on the origin
/// with [`PADDING`] units to spare around everything drawn.
pub fn render_svg(s: &GraphPatch, annotations: &[Annotation]) -> String {
    let reach = s
        .vertices()
        .chain(annotations.iter().flat_map(|a| a.points()))
        .map(|p| p.x.abs().max(p.y.abs()))
        .max()
        .unwrap_or(0)
        + PADDING;
    let side = 2 * reach * UNIT_PX;
    let mut out = String::new();
    writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{side}" height="{side}" viewBox="{} {} {side} {side}">"#,
        -reach * UNIT_PX,
        -reach * UNIT_PX
    )
    .unwrap();

    writeln!(out, r##"  <g id="lattice" fill="#999999">"##).unwrap();
    for y in (-reach..=reach).rev() {
        for x in -reach..=reach {
            let p = Point::new(x, y);
            writeln!(out, r#"    <circle cx="{}" cy="{}" r="2"/>"#, sx(p), sy(p)).unwrap();
        }
    }
    writeln!(out, "  </g>").unwrap();

    writeln!(out, r##"  <g id="edges" stroke="#000000" stroke-width="3" stroke-linecap="round">"##).unwrap();
    for e in s.edges() {
        line(&mut out, e.a(), e.b(), "");
    }
    writeln!(out, "  </g>").unwrap();

    for (i, a) in annotations.iter().enumerate() {
        match a {
            Annotation::Contradiction(pair) => {
                writeln!(out, r#"  <g id="annotation-{i}" class="contradiction" stroke="{CONTRADICTION_COLOR}" stroke-width="4">"#).unwrap();
                line(&mut out, pair.p, pair.q, "");
                for p in [pair.p, pair.q] {
                    writeln!(out, r#"    <circle cx="{}" cy="{}" r="6" fill="{CONTRADICTION_COLOR}"/>"#, sx(p), sy(p)).unwrap();
                }
            }
            Annotation::Deduction(path) => {
                writeln!(
                    out,
                    r#"  <g id="annotation-{i}" class="deduction" stroke="{DEDUCTION_COLOR}" stroke-width="4" stroke-dasharray="8 6">"#
                )
                .unwrap();
                polyline(&mut out, &path.vertices, "");
            }
            Annotation::Pattern(edges) => {
                writeln!(
                    out,
                    r#"  <g id="annotation-{i}" class="pattern" stroke="{PATTERN_COLOR}" stroke-width="6" stroke-opacity="0.6">"#
                )
                .unwrap();
                for e in edges {
                    line(&mut out, e.a(), e.b(), "");
                }
            }
            Annotation::Bound(w) => {
                writeln!(out, r#"  <g id="annotation-{i}" class="bound" stroke="{BOUND_COLOR}" stroke-width="5">"#).unwrap();
                polyline(&mut out, &w.head, "");
                polyline(&mut out, &w.tail, "");
                let (a, b) = w.bridge();
                if a != b {
                    line(&mut out, a, b, r#" stroke-dasharray="4 4""#);
                }
                marker(&mut out, w.head[0], BOUND_COLOR, "u");
                marker(&mut out, *w.tail.last().unwrap(), BOUND_COLOR, "v");
            }
        }
        writeln!(out, "  </g>").unwrap();
    }
    writeln!(out, "</svg>").unwrap();
    out
}
