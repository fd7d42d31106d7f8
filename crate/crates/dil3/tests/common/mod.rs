#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use dil3_core::cert::{check_certificate, Certificate, ProofNode, Step};
use dil3_core::lattice::is_valid_partial;
use dil3_core::paths::ClosePair;
use dil3_core::{Edge, GraphPatch, Point, Symmetry};
use rand::seq::SliceRandom;
use rand::Rng;

/// Ways to damage a certificate, each of which no valid proof survives:
/// the checker compares branches and deductions against a fresh
/// enumeration, deltas against the chosen path, and leaves against the edge
/// set at that node. Points moved by `FAR` land in empty lattice where every
/// close pair has several admissible paths and no pattern occurs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Mutation {
    DropChild,
    SwapChildren,
    EmptyBranch,
    MoveBranchPair,
    ReverseDeduction,
    DropAddedEdge,
    ExtraAddedEdge,
    MoveContradiction,
    ShiftPattern,
    BreakWitness,
}

const FAR: Point = Point::new(1000, 0);

const ALL: [Mutation; 10] = [
    Mutation::DropChild,
    Mutation::SwapChildren,
    Mutation::EmptyBranch,
    Mutation::MoveBranchPair,
    Mutation::ReverseDeduction,
    Mutation::DropAddedEdge,
    Mutation::ExtraAddedEdge,
    Mutation::MoveContradiction,
    Mutation::ShiftPattern,
    Mutation::BreakWitness,
];

/// Child-index paths of every node, preorder.
fn addresses(root: &ProofNode) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut stack = vec![(root, Vec::new())];
    while let Some((n, at)) = stack.pop() {
        for (i, c) in n.children().into_iter().enumerate().rev() {
            let mut next = at.clone();
            next.push(i);
            stack.push((c, next));
        }
        out.push(at);
    }
    out
}

fn node_at<'a>(root: &'a mut ProofNode, at: &[usize]) -> &'a mut ProofNode {
    at.iter().fold(root, |n, &i| n.children_mut().into_iter().nth(i).unwrap())
}

fn node_ref<'a>(root: &'a ProofNode, at: &[usize]) -> &'a ProofNode {
    at.iter().fold(root, |n, &i| n.children()[i])
}

fn applies(kind: Mutation, at: &[usize], n: &ProofNode) -> bool {
    match (kind, &n.step) {
        (Mutation::DropChild | Mutation::EmptyBranch | Mutation::MoveBranchPair, Step::Branch { .. }) => true,
        (Mutation::SwapChildren, Step::Branch { children, .. }) => children.len() >= 2,
        (Mutation::ReverseDeduction, Step::Deduction { .. }) => true,
        (Mutation::DropAddedEdge, _) => !at.is_empty() && !n.added.is_empty(),
        (Mutation::ExtraAddedEdge, _) => !at.is_empty(),
        (Mutation::MoveContradiction, Step::Contradiction { .. }) => true,
        (Mutation::ShiftPattern, Step::PatternHit { .. }) => true,
        (Mutation::BreakWitness, Step::BoundHit { .. }) => true,
        _ => false,
    }
}

fn far(pair: ClosePair) -> ClosePair {
    ClosePair { p: pair.p + FAR, q: pair.q + FAR }
}

fn apply(kind: Mutation, n: &mut ProofNode, rng: &mut impl Rng, v: Point) {
    match (kind, &mut n.step) {
        (Mutation::DropChild, Step::Branch { children, .. }) => {
            let i = rng.gen_range(0..children.len());
            children.remove(i);
        }
        (Mutation::SwapChildren, Step::Branch { children, .. }) => {
            let i = rng.gen_range(0..children.len());
            let j = (i + rng.gen_range(1..children.len())) % children.len();
            children.swap(i, j);
        }
        (Mutation::EmptyBranch, Step::Branch { children, .. }) => children.clear(),
        (Mutation::MoveBranchPair, Step::Branch { pair, .. }) => *pair = far(*pair),
        (Mutation::ReverseDeduction, Step::Deduction { path, .. }) => *path = path.reversed(),
        (Mutation::DropAddedEdge, _) => {
            let i = rng.gen_range(0..n.added.len());
            n.added.remove(i);
        }
        (Mutation::ExtraAddedEdge, _) => {
            let e = Edge::new(FAR, FAR + Point::new(0, 1)).unwrap();
            let at = rng.gen_range(0..=n.added.len());
            n.added.insert(at, e);
        }
        (Mutation::MoveContradiction, Step::Contradiction { pair }) => *pair = far(*pair),
        (Mutation::ShiftPattern, Step::PatternHit { transform, .. }) => {
            *transform = Symmetry::translation(FAR).compose(transform);
        }
        (Mutation::BreakWitness, Step::BoundHit { witness }) => {
            *witness.tail.last_mut().unwrap() = v + Point::new(1, 1);
        }
        _ => unreachable!("{kind:?} chosen for an unsuitable node"),
    }
}

/// One random mutant of `cert`, with honestly recomputed bounds so the
/// rejection has to come from the proof itself.
pub fn mutate(cert: &Certificate, rng: &mut impl Rng) -> (Mutation, Certificate) {
    let nodes = addresses(&cert.root);
    let v = cert.bound.map(|b| b.v).unwrap_or(Point::ORIGIN);
    loop {
        let kind = *ALL.choose(rng).unwrap();
        let fits: Vec<&Vec<usize>> = nodes.iter().filter(|at| applies(kind, at, node_ref(&cert.root, at))).collect();
        let Some(at) = fits.choose(rng) else { continue };
        let mut m = cert.clone();
        apply(kind, node_at(&mut m.root, at), rng, v);
        m.bounds = Certificate::compute_bounds(&m.start, m.bound.as_ref(), &m.root);
        return (kind, m);
    }
}

#[derive(Debug, Default)]
pub struct FuzzOutcome {
    pub mutants: usize,
    pub rejected: usize,
    pub by_kind: BTreeMap<Mutation, (usize, usize)>,
}

impl FuzzOutcome {
    pub fn all_rejected(&self) -> bool {
        self.mutants == self.rejected
    }
}

/// `n` mutants spread round-robin over `certs`.
pub fn fuzz(certs: &[Certificate], n: usize, rng: &mut impl Rng) -> FuzzOutcome {
    let mut out = FuzzOutcome::default();
    for i in 0..n {
        let (kind, m) = mutate(&certs[i % certs.len()], rng);
        let rejected = !check_certificate(&m).valid();
        out.mutants += 1;
        out.rejected += rejected as usize;
        let e = out.by_kind.entry(kind).or_default();
        e.0 += 1;
        e.1 += rejected as usize;
    }
    out
}

pub const STEPS: [(i32, i32); 8] = [(1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1), (0, -1), (1, -1)];

pub fn random_patch(rng: &mut impl Rng, r: i32, tries: usize) -> GraphPatch {
    let mut s = GraphPatch::new();
    for _ in 0..tries {
        let p = Point::new(rng.gen_range(-r..=r), rng.gen_range(-r..=r));
        let (dx, dy) = STEPS[rng.gen_range(0..8)];
        let e = Edge::new(p, p + Point::new(dx, dy)).unwrap();
        if s.insert(e) && !is_valid_partial(&s) {
            s.remove(&e);
        }
    }
    s
}

/// Plain float Dijkstra with a linear scan for the next vertex.
pub fn float_dijkstra(s: &GraphPatch, src: Point) -> BTreeMap<Point, f64> {
    let mut adj: BTreeMap<Point, Vec<(Point, f64)>> = BTreeMap::new();
    for e in s.edges() {
        let [a, b] = e.endpoints();
        let w = (a.dist_sq(b) as f64).sqrt();
        adj.entry(a).or_default().push((b, w));
        adj.entry(b).or_default().push((a, w));
    }
    let mut dist: BTreeMap<Point, f64> = BTreeMap::from([(src, 0.0)]);
    let mut done = BTreeSet::new();
    while let Some((&u, &du)) = dist.iter().filter(|(p, _)| !done.contains(*p)).min_by(|x, y| x.1.total_cmp(y.1)) {
        done.insert(u);
        for &(v, w) in adj.get(&u).map(Vec::as_slice).unwrap_or(&[]) {
            if dist.get(&v).is_none_or(|&old| du + w < old) {
                dist.insert(v, du + w);
            }
        }
    }
    dist
}
