//! Close pairs and the admissible paths that can serve them.
//!
//! An admissible path for a close pair `(p, q)` relative to a partial edge set
//! `S` is a simple walk of unit and diagonal steps from `p` to `q` whose
//! length is at most `(1 + √2)|pq|` and whose union with `S` is still a plane
//! graph of maximum degree 3.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::dilation::{distance_with, within_budget};
use crate::exact::{leq_scaled_sqrt, Zr2};
use crate::lattice::{dir_index, is_diagonal, Edge, GraphPatch, PatchIndex, Point, Symmetry, DIRS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathError {
    #[error("{0} and {1} do not form a close pair")]
    NotClose(Point, Point),
    #[error("expected a knight-move pair, got squared distance {0}")]
    NotKnightPair(i64),
}

/// The 20 nonzero offsets of squared norm at most 5.
pub fn close_pair_offsets() -> Vec<Point> {
    let mut out = Vec::with_capacity(20);
    for x in -2..=2i32 {
        for y in -2..=2i32 {
            let n = x * x + y * y;
            if n > 0 && n <= 5 {
                out.push(Point::new(x, y));
            }
        }
    }
    out
}

/// An ordered pair of points at squared distance 1, 2, 4 or 5.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClosePair {
    pub p: Point,
    pub q: Point,
}

impl ClosePair {
    pub fn new(p: Point, q: Point) -> Result<Self, PathError> {
        let n = p.dist_sq(q);
        if n == 0 || n > 5 {
            return Err(PathError::NotClose(p, q));
        }
        Ok(ClosePair { p, q })
    }

    /// The same pair with its endpoints in sorted order.
    pub fn normalized(self) -> Self {
        if self.p <= self.q {
            self
        } else {
            self.reversed()
        }
    }

    pub fn reversed(self) -> Self {
        ClosePair { p: self.q, q: self.p }
    }

    pub fn norm_sq(&self) -> i64 {
        self.p.dist_sq(self.q)
    }
}

impl fmt::Display for ClosePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}~{}", self.p, self.q)
    }
}

/// A walk of unit and diagonal steps with its exact length.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PathCandidate {
    pub vertices: Vec<Point>,
    pub length: Zr2,
}

impl PathCandidate {
    /// Builds a candidate from its vertices, rejecting steps that are not
    /// unit or diagonal and repeated vertices.
    pub fn from_vertices(vertices: Vec<Point>) -> Option<Self> {
        if vertices.is_empty() {
            return None;
        }
        let mut length = Zr2::ZERO;
        for w in vertices.windows(2) {
            length += Zr2::step_length(w[0].dist_sq(w[1]))?;
        }
        let distinct: BTreeSet<Point> = vertices.iter().copied().collect();
        if distinct.len() != vertices.len() {
            return None;
        }
        Some(PathCandidate { vertices, length })
    }

    pub fn start(&self) -> Point {
        self.vertices[0]
    }

    pub fn end(&self) -> Point {
        *self.vertices.last().unwrap()
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.vertices.windows(2).map(|w| Edge::new(w[0], w[1]).unwrap())
    }

    pub fn reversed(&self) -> Self {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        PathCandidate { vertices, length: self.length }
    }

    pub fn transformed(&self, t: &Symmetry) -> Self {
        PathCandidate {
            vertices: self.vertices.iter().map(|p| t.apply(*p)).collect(),
            length: self.length,
        }
    }

    /// Edges of the path that are not already in `s`.
    pub fn new_edges(&self, s: &GraphPatch) -> Vec<Edge> {
        self.edges().filter(|e| !s.contains(e)).collect()
    }

    pub fn within(&self, s: &GraphPatch) -> bool {
        self.edges().all(|e| s.contains(&e))
    }
}

impl fmt::Display for PathCandidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{},{}", v.x, v.y)?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CaseTag {
    Contradiction,
    Satisfaction,
    Deduction,
    Exploration,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairCase {
    /// No admissible path.
    Contradiction,
    /// `S` alone already meets the dilation budget for the pair.
    Satisfaction,
    /// Exactly one admissible path, not contained in `S`.
    Deduction(PathCandidate),
    /// Several admissible paths, none contained in `S`.
    Exploration(Vec<PathCandidate>),
}

impl PairCase {
    pub fn tag(&self) -> CaseTag {
        match self {
            PairCase::Contradiction => CaseTag::Contradiction,
            PairCase::Satisfaction => CaseTag::Satisfaction,
            PairCase::Deduction(_) => CaseTag::Deduction,
            PairCase::Exploration(_) => CaseTag::Exploration,
        }
    }
}

/// For a length budget `(1 + √2)√n`, the largest number of diagonal steps
/// that fits next to `u` unit steps (`-1` when none does).
#[derive(Clone, Copy, Debug)]
struct LengthBudget {
    max_diag: [i8; 8],
}

impl LengthBudget {
    fn new(n: i64) -> Self {
        let mut max_diag = [-1i8; 8];
        for (u, slot) in max_diag.iter_mut().enumerate() {
            let mut d = -1i8;
            while leq_scaled_sqrt(Zr2::new(u as i64, (d + 1) as i64), Zr2::DILATION, n as u64).unwrap() {
                d += 1;
            }
            *slot = d;
        }
        LengthBudget { max_diag }
    }

    #[inline]
    fn fits(&self, units: i64, diags: i64) -> bool {
        units < 8 && diags <= self.max_diag[units as usize] as i64
    }
}

struct Search<'a> {
    idx: &'a PatchIndex,
    target: Point,
    budget: LengthBudget,
    path: Vec<Point>,
    out: Vec<PathCandidate>,
    cap: usize,
}

impl Search<'_> {
    fn run(&mut self, units: i64, diags: i64, prev_new: bool) {
        if self.out.len() >= self.cap {
            return;
        }
        let x = *self.path.last().unwrap();
        if x == self.target {
            self.out.push(PathCandidate {
                vertices: self.path.clone(),
                length: Zr2::new(units, diags),
            });
            return;
        }
        for (dir, d) in DIRS.iter().enumerate() {
            let y = x + *d;
            let (u2, d2) = if is_diagonal(dir) { (units, diags + 1) } else { (units + 1, diags) };
            let rest = y.octile(self.target);
            if !self.budget.fits(u2 + rest.a, d2 + rest.b) {
                continue;
            }
            if self.path.contains(&y) {
                continue;
            }
            let in_s = self.idx.has_step(x, dir);
            if !in_s {
                if self.idx.degree(x) + prev_new as u32 + 1 > 3 || self.idx.degree(y) + 1 > 3 {
                    continue;
                }
                if self.idx.step_blocked(x, dir) || (is_diagonal(dir) && self.crosses_own(x, *d)) {
                    continue;
                }
            }
            self.path.push(y);
            self.run(u2, d2, !in_s);
            self.path.pop();
            if self.out.len() >= self.cap {
                return;
            }
        }
    }

    /// Whether the walk already contains the other diagonal of the unit
    /// square spanned by `x → x + d`.
    fn crosses_own(&self, x: Point, d: Point) -> bool {
        let c1 = Point::new(x.x + d.x, x.y);
        let c2 = Point::new(x.x, x.y + d.y);
        self.path
            .windows(2)
            .any(|w| (w[0] == c1 && w[1] == c2) || (w[0] == c2 && w[1] == c1))
    }
}

/// Admissible paths for `pair` against an indexed patch, in lexicographic
/// vertex order, stopping after `cap` paths.
pub fn enumerate_in(idx: &PatchIndex, pair: ClosePair, cap: usize) -> Vec<PathCandidate> {
    let mut search = Search {
        idx,
        target: pair.q,
        budget: LengthBudget::new(pair.norm_sq()),
        path: alloc::vec![pair.p],
        out: Vec::new(),
        cap,
    };
    search.run(0, 0, false);
    search.out.sort();
    search.out
}

/// All `S`-admissible paths between the endpoints of `pair`, sorted.
pub fn enumerate_admissible(s: &GraphPatch, pair: ClosePair) -> Vec<PathCandidate> {
    enumerate_in(&PatchIndex::new(s), pair, usize::MAX)
}

/// `S` alone serves the pair within its budget. Edges longer than a
/// diagonal count with a lower bound on their length, so this may report
/// satisfaction that a later edge set would not confirm, never the reverse.
pub fn satisfied_in(idx: &PatchIndex, pair: ClosePair) -> bool {
    distance_with(idx, pair.p, pair.q, within_budget(pair.norm_sq())).is_some()
}

/// Classification with path enumeration capped at `cap` (at least 2) for
/// the exploration case.
pub fn classify_in(idx: &PatchIndex, pair: ClosePair, cap: usize) -> PairCase {
    if satisfied_in(idx, pair) {
        return PairCase::Satisfaction;
    }
    let mut paths = enumerate_in(idx, pair, cap.max(2));
    match paths.len() {
        0 => PairCase::Contradiction,
        1 => PairCase::Deduction(paths.pop().unwrap()),
        _ => PairCase::Exploration(paths),
    }
}

pub fn classify_pair(s: &GraphPatch, pair: ClosePair) -> PairCase {
    classify_in(&PatchIndex::new(s), pair, usize::MAX)
}

/// A symmetry class of candidate shortest paths between a knight-move pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShortestClass {
    /// Canonical member, running from `(0, 0)` to `(1, 2)`.
    pub representative: PathCandidate,
    pub members: usize,
}

/// The isometries carrying the unordered pair `{u, v}` onto
/// `{(0, 0), (1, 2)}`, each paired with whether it swaps the endpoints.
fn knight_frames(u: Point, v: Point) -> Vec<Symmetry> {
    let target = Point::new(1, 2);
    let mut out = Vec::new();
    for lin in Symmetry::point_group() {
        if lin.linear(v - u) == target {
            out.push(lin.with_shift(-lin.linear(u)));
        }
        if lin.linear(u - v) == target {
            out.push(lin.with_shift(-lin.linear(v)));
        }
    }
    out
}

fn canonical_form(path: &PathCandidate, frames: &[Symmetry]) -> PathCandidate {
    frames
        .iter()
        .map(|t| {
            let img = path.transformed(t);
            if img.start() == Point::ORIGIN {
                img
            } else {
                img.reversed()
            }
        })
        .min()
        .expect("a knight pair has frames")
}

/// Candidate shortest paths between `u` and `v` (`|uv|² = 5`) in a locally
/// optimal graph violating the `3 + √2` distance bound: simple plane walks
/// with length in `(3 + √2, (1 + √2)√5]` whose every close pair of vertices
/// is served by the walk itself within budget. Returned up to the lattice
/// isometries preserving `{u, v}`.
pub fn enumerate_shortest_candidates(u: Point, v: Point) -> Result<Vec<ShortestClass>, PathError> {
    let n = u.dist_sq(v);
    if n != 5 {
        return Err(PathError::NotKnightPair(n));
    }
    let pair = ClosePair::new(u, v)?;
    let floor = Zr2::new(3, 1);
    let all = enumerate_admissible(&GraphPatch::new(), pair);
    let frames = knight_frames(u, v);
    let mut classes: Vec<ShortestClass> = Vec::new();
    for path in all.into_iter().filter(|p| p.length > floor && subpaths_within_budget(p)) {
        let rep = canonical_form(&path, &frames);
        match classes.iter_mut().find(|c| c.representative == rep) {
            Some(c) => c.members += 1,
            None => classes.push(ShortestClass { representative: rep, members: 1 }),
        }
    }
    classes.sort_by(|a, b| a.representative.cmp(&b.representative));
    Ok(classes)
}

/// Every close pair of vertices on the walk is within the dilation budget
/// measured along the walk.
pub fn subpaths_within_budget(path: &PathCandidate) -> bool {
    let vs = &path.vertices;
    let mut prefix = alloc::vec![Zr2::ZERO];
    for w in vs.windows(2) {
        let step = Zr2::step_length(w[0].dist_sq(w[1])).expect("short step");
        prefix.push(*prefix.last().unwrap() + step);
    }
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            let n = vs[i].dist_sq(vs[j]);
            if n > 5 {
                continue;
            }
            let along = prefix[j] - prefix[i];
            if !leq_scaled_sqrt(along, Zr2::DILATION, n as u64).unwrap() {
                return false;
            }
        }
    }
    true
}

/// Edge directions of a candidate as indices into [`DIRS`].
pub fn step_directions(path: &PathCandidate) -> Vec<usize> {
    path.vertices
        .windows(2)
        .map(|w| dir_index(w[1] - w[0]).expect("short step"))
        .collect()
}
