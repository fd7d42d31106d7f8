//! `.cert` documents: JSON with integer coordinates, edges as
//! `[x1, y1, x2, y2]`, points as `[x, y]` and `Z[√2]` values as `[a, b]`.
//!
//! Encoding is canonical (fixed field order, no maps), so encoding a decoded
//! document reproduces it byte for byte.

use dil3_core::cert::{BoundConstraint, BoundWitness, Certificate, NamedPattern, ProofNode, Step};
use dil3_core::lattice::BBox;
use dil3_core::paths::{ClosePair, PathCandidate};
use dil3_core::{Edge, GraphPatch, Point, Symmetry, Zr2};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

pub const FORMAT: &str = "dil3-cert/1";

#[derive(Debug, Error)]
pub enum CertFileError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("at {field}: {message}")]
    Field { field: String, message: String },
}

type Pt = [i32; 2];
type Ed = [i32; 4];

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Doc {
    format: String,
    engine: String,
    heuristic: String,
    bounds: [Pt; 2],
    start: Vec<Ed>,
    patterns: Vec<PatternDoc>,
    bound: Option<BoundDoc>,
    root: NodeDoc,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PatternDoc {
    id: String,
    edges: Vec<Ed>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BoundDoc {
    u: Pt,
    v: Pt,
    c: [i64; 2],
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NodeDoc {
    added: Vec<Ed>,
    step: StepDoc,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
enum StepDoc {
    Contradiction { pair: [Pt; 2] },
    PatternHit { pattern: usize, orient: u8, shift: Pt },
    BoundHit { head: Vec<Pt>, tail: Vec<Pt> },
    Deduction { pair: [Pt; 2], path: Vec<Pt>, child: Box<NodeDoc> },
    Branch { pair: [Pt; 2], children: Vec<ChildDoc> },
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ChildDoc {
    path: Vec<Pt>,
    node: NodeDoc,
}

fn pt(p: Point) -> Pt {
    [p.x, p.y]
}

fn ed(e: &Edge) -> Ed {
    let [a, b] = e.endpoints();
    [a.x, a.y, b.x, b.y]
}

fn pair_doc(p: &ClosePair) -> [Pt; 2] {
    [pt(p.p), pt(p.q)]
}

fn node_doc(n: &ProofNode) -> NodeDoc {
    let step = match &n.step {
        Step::Contradiction { pair } => StepDoc::Contradiction { pair: pair_doc(pair) },
        Step::PatternHit { pattern, transform } => {
            StepDoc::PatternHit { pattern: *pattern, orient: transform.orient(), shift: pt(transform.shift()) }
        }
        Step::BoundHit { witness } => StepDoc::BoundHit {
            head: witness.head.iter().copied().map(pt).collect(),
            tail: witness.tail.iter().copied().map(pt).collect(),
        },
        Step::Deduction { pair, path, child } => StepDoc::Deduction {
            pair: pair_doc(pair),
            path: path.vertices.iter().copied().map(pt).collect(),
            child: Box::new(node_doc(child)),
        },
        Step::Branch { pair, children } => StepDoc::Branch {
            pair: pair_doc(pair),
            children: children
                .iter()
                .map(|(path, c)| ChildDoc { path: path.vertices.iter().copied().map(pt).collect(), node: node_doc(c) })
                .collect(),
        },
    };
    NodeDoc { added: n.added.iter().map(ed).collect(), step }
}

/// Canonical JSON text of `cert`, newline terminated.
pub fn encode(cert: &Certificate) -> String {
    let doc = Doc {
        format: FORMAT.to_string(),
        engine: cert.engine.clone(),
        heuristic: cert.heuristic.clone(),
        bounds: [pt(cert.bounds.min), pt(cert.bounds.max)],
        start: cert.start.edges().map(ed).collect(),
        patterns: cert
            .patterns
            .iter()
            .map(|p| PatternDoc { id: p.id.clone(), edges: p.edges.edges().map(ed).collect() })
            .collect(),
        bound: cert.bound.map(|b| BoundDoc { u: pt(b.u), v: pt(b.v), c: [b.c.a, b.c.b] }),
        root: node_doc(&cert.root),
    };
    let value = serde_json::to_value(&doc).expect("certificate serializes");
    let mut out = String::new();
    write_value(&mut out, &value, 0);
    out.push('\n');
    out
}

/// Arrays holding no objects go on one line; everything else is indented
/// by two spaces per level.
fn write_value(out: &mut String, v: &Value, depth: usize) {
    let pad = |out: &mut String, d: usize| out.extend(std::iter::repeat_n(' ', 2 * d));
    match v {
        Value::Array(items) if items.is_empty() || !items.iter().any(has_object) => {
            out.push_str(&serde_json::to_string(v).expect("scalar array"));
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, item) in items.iter().enumerate() {
                pad(out, depth + 1);
                write_value(out, item, depth + 1);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            pad(out, depth);
            out.push(']');
        }
        Value::Object(fields) => {
            out.push_str("{\n");
            for (i, (k, item)) in fields.iter().enumerate() {
                pad(out, depth + 1);
                out.push_str(&serde_json::to_string(k).expect("key"));
                out.push_str(": ");
                write_value(out, item, depth + 1);
                out.push_str(if i + 1 < fields.len() { ",\n" } else { "\n" });
            }
            pad(out, depth);
            out.push('}');
        }
        scalar => out.push_str(&serde_json::to_string(scalar).expect("scalar")),
    }
}

fn has_object(v: &Value) -> bool {
    match v {
        Value::Object(_) => true,
        Value::Array(items) => items.iter().any(has_object),
        _ => false,
    }
}

struct Ctx {
    field: Vec<String>,
}

impl Ctx {
    fn fail<T>(&self, message: impl Into<String>) -> Result<T, CertFileError> {
        Err(CertFileError::Field { field: self.field.concat(), message: message.into() })
    }

    fn within<T>(&mut self, seg: impl Into<String>, f: impl FnOnce(&mut Self) -> Result<T, CertFileError>) -> Result<T, CertFileError> {
        self.field.push(seg.into());
        let r = f(self);
        self.field.pop();
        r
    }

    fn edge(&self, e: &Ed) -> Result<Edge, CertFileError> {
        match Edge::new(Point::new(e[0], e[1]), Point::new(e[2], e[3])) {
            Some(e) => Ok(e),
            None => self.fail("edge endpoints coincide"),
        }
    }

    fn edges(&mut self, es: &[Ed]) -> Result<Vec<Edge>, CertFileError> {
        es.iter().enumerate().map(|(i, e)| self.within(format!("[{i}]"), |c| c.edge(e))).collect()
    }

    fn pair(&mut self, p: &[Pt; 2]) -> Result<ClosePair, CertFileError> {
        self.within(".pair", |c| match ClosePair::new(pt_of(p[0]), pt_of(p[1])) {
            Ok(pair) => Ok(pair),
            Err(e) => c.fail(e.to_string()),
        })
    }

    fn path(&mut self, field: &str, vs: &[Pt]) -> Result<PathCandidate, CertFileError> {
        self.within(field, |c| match PathCandidate::from_vertices(vs.iter().copied().map(pt_of).collect()) {
            Some(p) => Ok(p),
            None => c.fail("not a simple path of unit and diagonal steps"),
        })
    }

    fn node(&mut self, n: &NodeDoc) -> Result<ProofNode, CertFileError> {
        let added = self.within(".added", |c| c.edges(&n.added))?;
        let step = self.within(".step", |c| c.step(&n.step))?;
        Ok(ProofNode { added, step })
    }

    fn step(&mut self, s: &StepDoc) -> Result<Step, CertFileError> {
        Ok(match s {
            StepDoc::Contradiction { pair } => Step::Contradiction { pair: self.pair(pair)? },
            StepDoc::PatternHit { pattern, orient, shift } => match Symmetry::new(*orient, pt_of(*shift)) {
                Some(transform) => Step::PatternHit { pattern: *pattern, transform },
                None => return self.within(".orient", |c| c.fail("orientation must be below 8")),
            },
            StepDoc::BoundHit { head, tail } => {
                if head.is_empty() || tail.is_empty() {
                    return self.fail("bound walks must be nonempty");
                }
                Step::BoundHit {
                    witness: BoundWitness {
                        head: head.iter().copied().map(pt_of).collect(),
                        tail: tail.iter().copied().map(pt_of).collect(),
                    },
                }
            }
            StepDoc::Deduction { pair, path, child } => Step::Deduction {
                pair: self.pair(pair)?,
                path: self.path(".path", path)?,
                child: Box::new(self.within(".child", |c| c.node(child))?),
            },
            StepDoc::Branch { pair, children } => {
                let pair = self.pair(pair)?;
                let children = children
                    .iter()
                    .enumerate()
                    .map(|(i, ch)| {
                        self.within(format!(".children[{i}]"), |c| {
                            let path = c.path(".path", &ch.path)?;
                            let node = c.within(".node", |c| c.node(&ch.node))?;
                            Ok((path, node))
                        })
                    })
                    .collect::<Result<_, _>>()?;
                Step::Branch { pair, children }
            }
        })
    }
}

fn pt_of(p: Pt) -> Point {
    Point::new(p[0], p[1])
}

/// Parses a `.cert` document. Structural validity only; use
/// [`dil3_core::cert::check_certificate`] for the proof itself.
pub fn decode(src: &str) -> Result<Certificate, CertFileError> {
    let mut de = serde_json::Deserializer::from_str(src);
    de.disable_recursion_limit();
    let doc = Doc::deserialize(&mut de)
        .and_then(|d| de.end().map(|_| d))
        .map_err(|e| CertFileError::Syntax { line: e.line(), column: e.column(), message: e.to_string() })?;
    let mut c = Ctx { field: vec!["$".to_string()] };
    if doc.format != FORMAT {
        return c.within(".format", |c| c.fail(format!("expected {FORMAT:?}, found {:?}", doc.format)));
    }
    let start: GraphPatch = c.within(".start", |c| c.edges(&doc.start))?.into_iter().collect();
    let patterns = doc
        .patterns
        .iter()
        .enumerate()
        .map(|(i, p)| {
            c.within(format!(".patterns[{i}].edges"), |c| c.edges(&p.edges))
                .map(|es| NamedPattern { id: p.id.clone(), edges: es.into_iter().collect() })
        })
        .collect::<Result<_, _>>()?;
    let bound = doc.bound.as_ref().map(|b| BoundConstraint { u: pt_of(b.u), v: pt_of(b.v), c: Zr2::new(b.c[0], b.c[1]) });
    let [lo, hi] = doc.bounds;
    if lo[0] > hi[0] || lo[1] > hi[1] {
        return c.within(".bounds", |c| c.fail("min exceeds max"));
    }
    let root = c.within(".root", |c| c.node(&doc.root))?;
    Ok(Certificate {
        start,
        patterns,
        bound,
        bounds: BBox::new(pt_of(lo), pt_of(hi)),
        engine: doc.engine,
        heuristic: doc.heuristic,
        root,
    })
}
