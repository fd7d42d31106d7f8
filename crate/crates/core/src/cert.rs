//! Proof certificates and their replay checker.
//!
//! A certificate is the search tree of a refutation: every node records the
//! local reason it is closed or how it splits. The checker re-derives each
//! reason from the edge set at that node using only the lattice, path and
//! exact-arithmetic primitives. It never searches.

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::exact::{scaled_sqrt_lt, Zr2};
use crate::lattice::{is_valid_partial, BBox, Edge, GraphPatch, PatchIndex, Point, Symmetry};
use crate::paths::{enumerate_in, satisfied_in, ClosePair, PathCandidate};

/// A distance lower bound `d_G(u, v) ≥ c` that every graph in the refuted
/// family must satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BoundConstraint {
    pub u: Point,
    pub v: Point,
    pub c: Zr2,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NamedPattern {
    pub id: String,
    pub edges: GraphPatch,
}

/// Evidence that `d_G(u, v) < c` for every locally optimal `G ⊇ S`: a walk
/// in `S` from `u` to `w`, a walk in `S` from `w'` to `v`, and the close
/// pair `(w, w')` bridged by the local dilation guarantee.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BoundWitness {
    pub head: Vec<Point>,
    pub tail: Vec<Point>,
}

impl BoundWitness {
    pub fn bridge(&self) -> (Point, Point) {
        (*self.head.last().unwrap(), self.tail[0])
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Step {
    Contradiction { pair: ClosePair },
    PatternHit { pattern: usize, transform: Symmetry },
    BoundHit { witness: BoundWitness },
    Deduction { pair: ClosePair, path: PathCandidate, child: Box<ProofNode> },
    Branch { pair: ClosePair, children: Vec<(PathCandidate, ProofNode)> },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProofNode {
    /// Edges added to the parent's set; empty at the root.
    pub added: Vec<Edge>,
    pub step: Step,
}

impl ProofNode {
    pub fn count(&self) -> usize {
        1 + match &self.step {
            Step::Deduction { child, .. } => child.count(),
            Step::Branch { children, .. } => children.iter().map(|(_, c)| c.count()).sum(),
            _ => 0,
        }
    }

    pub fn depth(&self) -> usize {
        1 + match &self.step {
            Step::Deduction { child, .. } => child.depth(),
            Step::Branch { children, .. } => children.iter().map(|(_, c)| c.depth()).max().unwrap_or(0),
            _ => 0,
        }
    }

    pub fn children(&self) -> Vec<&ProofNode> {
        match &self.step {
            Step::Deduction { child, .. } => alloc::vec![&**child],
            Step::Branch { children, .. } => children.iter().map(|(_, c)| c).collect(),
            _ => Vec::new(),
        }
    }

    pub fn children_mut(&mut self) -> Vec<&mut ProofNode> {
        match &mut self.step {
            Step::Deduction { child, .. } => alloc::vec![&mut **child],
            Step::Branch { children, .. } => children.iter_mut().map(|(_, c)| c).collect(),
            _ => Vec::new(),
        }
    }

    fn visit_points(&self, f: &mut impl FnMut(Point)) {
        for e in &self.added {
            f(e.a());
            f(e.b());
        }
        match &self.step {
            Step::Contradiction { pair } => {
                f(pair.p);
                f(pair.q);
            }
            Step::PatternHit { .. } => {}
            Step::BoundHit { witness } => witness.head.iter().chain(witness.tail.iter()).for_each(|p| f(*p)),
            Step::Deduction { pair, path, child } => {
                f(pair.p);
                f(pair.q);
                path.vertices.iter().for_each(|p| f(*p));
                child.visit_points(f);
            }
            Step::Branch { pair, children } => {
                f(pair.p);
                f(pair.q);
                for (path, c) in children {
                    path.vertices.iter().for_each(|p| f(*p));
                    c.visit_points(f);
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Certificate {
    pub start: GraphPatch,
    pub patterns: Vec<NamedPattern>,
    pub bound: Option<BoundConstraint>,
    /// Every coordinate mentioned anywhere in the tree lies in this box.
    pub bounds: BBox,
    pub engine: String,
    pub heuristic: String,
    pub root: ProofNode,
}

impl Certificate {
    /// Smallest box containing the start set, the bound endpoints and every
    /// point referenced by the tree.
    pub fn compute_bounds(start: &GraphPatch, bound: Option<&BoundConstraint>, root: &ProofNode) -> BBox {
        let mut pts: Vec<Point> = start.vertices().collect();
        if let Some(b) = bound {
            pts.push(b.u);
            pts.push(b.v);
        }
        root.visit_points(&mut |p| pts.push(p));
        BBox::around(pts).unwrap_or(BBox::new(Point::ORIGIN, Point::ORIGIN))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Failure {
    InvalidStart,
    OutOfBounds,
    RootDelta,
    WrongDelta,
    SatisfiedPair,
    AdmissiblePathExists,
    DeductionMismatch,
    BranchMismatch,
    UnknownPattern(usize),
    PatternAbsent,
    NoBoundConstraint,
    MalformedWitness,
    WitnessNotInPatch,
    WitnessNotShorter,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Failure::InvalidStart => "start set is not a plane graph of maximum degree 3",
            Failure::OutOfBounds => "coordinate outside the declared bounds",
            Failure::RootDelta => "root node adds edges",
            Failure::WrongDelta => "added edges differ from the path's new edges",
            Failure::SatisfiedPair => "pair is already served by the edge set",
            Failure::AdmissiblePathExists => "an admissible path exists",
            Failure::DeductionMismatch => "admissible paths are not exactly the recorded path",
            Failure::BranchMismatch => "children are not exactly the admissible paths in canonical order",
            Failure::UnknownPattern(_) => "pattern index out of range",
            Failure::PatternAbsent => "transformed pattern is not contained in the edge set",
            Failure::NoBoundConstraint => "bound witness without a bound constraint",
            Failure::MalformedWitness => "bound witness does not join u to v",
            Failure::WitnessNotInPatch => "bound witness uses an edge outside the short edges of the set",
            Failure::WitnessNotShorter => "bound witness does not beat the constant",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeFailure {
    /// Child indices from the root.
    pub at: Vec<usize>,
    pub failure: Failure,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckReport {
    pub nodes_checked: usize,
    pub failures: Vec<NodeFailure>,
}

impl CheckReport {
    pub fn valid(&self) -> bool {
        self.failures.is_empty()
    }
}

struct Checker<'a> {
    cert: &'a Certificate,
    report: CheckReport,
    at: Vec<usize>,
}

impl Checker<'_> {
    fn fail(&mut self, failure: Failure) {
        self.report.failures.push(NodeFailure { at: self.at.clone(), failure });
    }

    fn check_delta(&mut self, s: &GraphPatch, path: &PathCandidate, node: &ProofNode) -> bool {
        let mut expected = path.new_edges(s);
        expected.sort();
        if node.added != expected {
            self.fail(Failure::WrongDelta);
            return false;
        }
        true
    }

    fn node(&mut self, s: &GraphPatch, node: &ProofNode) {
        self.report.nodes_checked += 1;
        let idx = PatchIndex::new(s);
        match &node.step {
            Step::Contradiction { pair } => {
                if satisfied_in(&idx, *pair) {
                    self.fail(Failure::SatisfiedPair);
                } else if !enumerate_in(&idx, *pair, 1).is_empty() {
                    self.fail(Failure::AdmissiblePathExists);
                }
            }
            Step::PatternHit { pattern, transform } => match self.cert.patterns.get(*pattern) {
                None => self.fail(Failure::UnknownPattern(*pattern)),
                Some(pat) => {
                    if !pat.edges.edges().all(|e| s.contains(&transform.apply_edge(e))) {
                        self.fail(Failure::PatternAbsent);
                    }
                }
            },
            Step::BoundHit { witness } => self.bound_hit(s, witness),
            Step::Deduction { pair, path, child } => {
                if satisfied_in(&idx, *pair) {
                    self.fail(Failure::SatisfiedPair);
                    return;
                }
                let paths = enumerate_in(&idx, *pair, 2);
                if paths.len() != 1 || paths[0] != *path {
                    self.fail(Failure::DeductionMismatch);
                    return;
                }
                if self.check_delta(s, path, child) {
                    self.at.push(0);
                    self.descend(s, child);
                    self.at.pop();
                }
            }
            Step::Branch { pair, children } => {
                if satisfied_in(&idx, *pair) {
                    self.fail(Failure::SatisfiedPair);
                    return;
                }
                let paths = enumerate_in(&idx, *pair, usize::MAX);
                if paths.len() != children.len() || paths.iter().zip(children).any(|(a, (b, _))| a != b) {
                    self.fail(Failure::BranchMismatch);
                    return;
                }
                for (i, (path, child)) in children.iter().enumerate() {
                    self.at.push(i);
                    if self.check_delta(s, path, child) {
                        self.descend(s, child);
                    }
                    self.at.pop();
                }
            }
        }
    }

    fn descend(&mut self, s: &GraphPatch, child: &ProofNode) {
        let mut next = s.clone();
        for e in &child.added {
            next.insert(*e);
        }
        self.node(&next, child);
    }

    fn bound_hit(&mut self, s: &GraphPatch, w: &BoundWitness) {
        let Some(bound) = self.cert.bound else {
            self.fail(Failure::NoBoundConstraint);
            return;
        };
        if w.head.first() != Some(&bound.u) || w.tail.last() != Some(&bound.v) {
            self.fail(Failure::MalformedWitness);
            return;
        }
        let (a, b) = w.bridge();
        let n = a.dist_sq(b);
        if n > 5 {
            self.fail(Failure::MalformedWitness);
            return;
        }
        let mut total = Zr2::ZERO;
        for walk in [&w.head, &w.tail] {
            for pair in walk.windows(2) {
                match Edge::new(pair[0], pair[1]) {
                    Some(e) if e.is_short() && s.contains(&e) => total += e.short_length().unwrap(),
                    _ => {
                        self.fail(Failure::WitnessNotInPatch);
                        return;
                    }
                }
            }
        }
        // total + (1 + √2)√n < c
        if !scaled_sqrt_lt(Zr2::DILATION, n as u64, bound.c - total).unwrap() {
            self.fail(Failure::WitnessNotShorter);
        }
    }
}

/// Replays every node of `cert` and reports each local justification that
/// fails.
pub fn check_certificate(cert: &Certificate) -> CheckReport {
    let mut checker = Checker { cert, report: CheckReport::default(), at: Vec::new() };
    if !is_valid_partial(&cert.start) {
        checker.fail(Failure::InvalidStart);
        return checker.report;
    }
    if !cert.root.added.is_empty() {
        checker.fail(Failure::RootDelta);
        return checker.report;
    }
    let declared = Certificate::compute_bounds(&cert.start, cert.bound.as_ref(), &cert.root);
    if !(cert.bounds.contains(declared.min) && cert.bounds.contains(declared.max)) {
        checker.fail(Failure::OutOfBounds);
        return checker.report;
    }
    checker.node(&cert.start, &cert.root);
    checker.report
}
