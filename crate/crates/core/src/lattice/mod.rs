//! Finite geometric graphs on the integer lattice.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Neg, Sub};

use crate::exact::Zr2;

mod index;

pub use index::{dir_index, is_diagonal, PatchIndex, DIRS};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    pub x: i32,
    pub y: i32,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0, y: 0 };

    pub const fn new(x: i32, y: i32) -> Self {
        Point { x, y }
    }

    pub fn norm_sq(self) -> i64 {
        let x = self.x as i64;
        let y = self.y as i64;
        x * x + y * y
    }

    pub fn dist_sq(self, other: Point) -> i64 {
        (other - self).norm_sq()
    }

    pub fn chebyshev(self, other: Point) -> i32 {
        (self.x - other.x).abs().max((self.y - other.y).abs())
    }

    /// Length of the shortest unit/diagonal step walk to `other`, ignoring
    /// any obstacles: `(max - min) + min·√2` over the coordinate gaps.
    pub fn octile(self, other: Point) -> Zr2 {
        let dx = (self.x - other.x).abs() as i64;
        let dy = (self.y - other.y).abs() as i64;
        let (lo, hi) = if dx < dy { (dx, dy) } else { (dy, dx) };
        Zr2::new(hi - lo, lo)
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, rhs: Point) -> Point {
        Point::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, rhs: Point) -> Point {
        Point::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// An undirected straight segment between two distinct lattice points,
/// stored with its endpoints in sorted order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    a: Point,
    b: Point,
}

impl Edge {
    /// Returns `None` for a degenerate edge.
    pub fn new(p: Point, q: Point) -> Option<Edge> {
        match p.cmp(&q) {
            core::cmp::Ordering::Less => Some(Edge { a: p, b: q }),
            core::cmp::Ordering::Greater => Some(Edge { a: q, b: p }),
            core::cmp::Ordering::Equal => None,
        }
    }

    /// Panicking constructor for literals.
    pub fn of(x1: i32, y1: i32, x2: i32, y2: i32) -> Edge {
        Edge::new(Point::new(x1, y1), Point::new(x2, y2)).expect("degenerate edge literal")
    }

    pub fn a(&self) -> Point {
        self.a
    }

    pub fn b(&self) -> Point {
        self.b
    }

    pub fn endpoints(&self) -> [Point; 2] {
        [self.a, self.b]
    }

    pub fn norm_sq(&self) -> i64 {
        self.a.dist_sq(self.b)
    }

    /// Unit or diagonal.
    pub fn is_short(&self) -> bool {
        self.norm_sq() <= 2
    }

    /// Exact length for unit and diagonal edges.
    pub fn short_length(&self) -> Option<Zr2> {
        Zr2::step_length(self.norm_sq())
    }

    pub fn other(&self, p: Point) -> Option<Point> {
        if p == self.a {
            Some(self.b)
        } else if p == self.b {
            Some(self.a)
        } else {
            None
        }
    }

    pub fn touches(&self, p: Point) -> bool {
        self.a == p || self.b == p
    }

    pub fn translate(&self, t: Point) -> Edge {
        Edge { a: self.a + t, b: self.b + t }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}–{}", self.a, self.b)
    }
}

/// Twice the signed area of `(a, b, c)`.
pub fn orient(a: Point, b: Point, c: Point) -> i64 {
    let abx = (b.x - a.x) as i64;
    let aby = (b.y - a.y) as i64;
    let acx = (c.x - a.x) as i64;
    let acy = (c.y - a.y) as i64;
    abx * acy - aby * acx
}

/// `p` lies on the closed segment `ab`.
fn on_segment(a: Point, b: Point, p: Point) -> bool {
    orient(a, b, p) == 0
        && p.x >= a.x.min(b.x)
        && p.x <= a.x.max(b.x)
        && p.y >= a.y.min(b.y)
        && p.y <= a.y.max(b.y)
}

/// True iff the closed segments share a point other than a common endpoint:
/// proper crossings, an endpoint touching the other segment's interior, and
/// collinear overlaps all count.
pub fn segments_intersect(e1: &Edge, e2: &Edge) -> bool {
    if e1 == e2 {
        return true;
    }
    let (p1, p2) = (e1.a, e1.b);
    let (q1, q2) = (e2.a, e2.b);
    let shared = [p1, p2].iter().find(|p| **p == q1 || **p == q2).copied();
    if let Some(s) = shared {
        // Two distinct segments with a common endpoint meet elsewhere only if
        // they are collinear and point the same way.
        let u = if s == p1 { p2 } else { p1 };
        let v = if s == q1 { q2 } else { q1 };
        if orient(s, u, v) != 0 {
            return false;
        }
        let du = u - s;
        let dv = v - s;
        return (du.x as i64) * (dv.x as i64) + (du.y as i64) * (dv.y as i64) > 0;
    }
    let d1 = orient(q1, q2, p1).signum();
    let d2 = orient(q1, q2, p2).signum();
    let d3 = orient(p1, p2, q1).signum();
    let d4 = orient(p1, p2, q2).signum();
    if d1 * d2 < 0 && d3 * d4 < 0 {
        return true;
    }
    (d1 == 0 && on_segment(q1, q2, p1))
        || (d2 == 0 && on_segment(q1, q2, p2))
        || (d3 == 0 && on_segment(p1, p2, q1))
        || (d4 == 0 && on_segment(p1, p2, q2))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BBox {
    pub min: Point,
    pub max: Point,
}

impl BBox {
    pub fn new(min: Point, max: Point) -> Self {
        BBox { min, max }
    }

    pub fn around(points: impl IntoIterator<Item = Point>) -> Option<BBox> {
        let mut it = points.into_iter();
        let first = it.next()?;
        let mut bb = BBox::new(first, first);
        for p in it {
            bb.min.x = bb.min.x.min(p.x);
            bb.min.y = bb.min.y.min(p.y);
            bb.max.x = bb.max.x.max(p.x);
            bb.max.y = bb.max.y.max(p.y);
        }
        Some(bb)
    }

    pub fn inflate(&self, r: i32) -> BBox {
        BBox::new(self.min - Point::new(r, r), self.max + Point::new(r, r))
    }

    pub fn contains(&self, p: Point) -> bool {
        p.x >= self.min.x && p.x <= self.max.x && p.y >= self.min.y && p.y <= self.max.y
    }

    pub fn width(&self) -> i32 {
        self.max.x - self.min.x
    }

    pub fn height(&self) -> i32 {
        self.max.y - self.min.y
    }
}

/// A finite set of lattice edges with its degree map.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GraphPatch {
    edges: BTreeSet<Edge>,
    degree: BTreeMap<Point, u32>,
}

impl GraphPatch {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_edges(edges: impl IntoIterator<Item = Edge>) -> Self {
        let mut s = GraphPatch::new();
        for e in edges {
            s.insert(e);
        }
        s
    }

    /// Returns false if the edge was already present.
    pub fn insert(&mut self, e: Edge) -> bool {
        if !self.edges.insert(e) {
            return false;
        }
        for p in e.endpoints() {
            *self.degree.entry(p).or_insert(0) += 1;
        }
        true
    }

    pub fn remove(&mut self, e: &Edge) -> bool {
        if !self.edges.remove(e) {
            return false;
        }
        for p in e.endpoints() {
            if let Some(d) = self.degree.get_mut(&p) {
                *d -= 1;
                if *d == 0 {
                    self.degree.remove(&p);
                }
            }
        }
        true
    }

    pub fn contains(&self, e: &Edge) -> bool {
        self.edges.contains(e)
    }

    pub fn degree(&self, p: Point) -> u32 {
        self.degree.get(&p).copied().unwrap_or(0)
    }

    pub fn max_degree(&self) -> u32 {
        self.degree.values().copied().max().unwrap_or(0)
    }

    pub fn edges(&self) -> impl Iterator<Item = &Edge> + '_ {
        self.edges.iter()
    }

    pub fn vertices(&self) -> impl Iterator<Item = Point> + '_ {
        self.degree.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn bbox(&self) -> Option<BBox> {
        BBox::around(self.vertices())
    }

    pub fn is_subset(&self, other: &GraphPatch) -> bool {
        self.edges.is_subset(&other.edges)
    }

    pub fn union(&self, other: &GraphPatch) -> GraphPatch {
        let mut s = self.clone();
        for e in other.edges() {
            s.insert(*e);
        }
        s
    }

    pub fn translate(&self, t: Point) -> GraphPatch {
        GraphPatch::from_edges(self.edges.iter().map(|e| e.translate(t)))
    }

    pub fn neighbors(&self, p: Point) -> impl Iterator<Item = Point> + '_ {
        // Edges at p sort between (p, MIN) and (p, MAX) only when p is the
        // smaller endpoint, so scan linearly; patches here are small.
        self.edges.iter().filter_map(move |e| e.other(p))
    }
}

impl FromIterator<Edge> for GraphPatch {
    fn from_iter<I: IntoIterator<Item = Edge>>(iter: I) -> Self {
        GraphPatch::from_edges(iter)
    }
}

/// Max degree at most 3 and no two edges intersect.
pub fn is_valid_partial(s: &GraphPatch) -> bool {
    if s.max_degree() > 3 {
        return false;
    }
    let edges: Vec<&Edge> = s.edges().collect();
    for (i, e) in edges.iter().enumerate() {
        for f in &edges[i + 1..] {
            if segments_intersect(e, f) {
                return false;
            }
        }
    }
    true
}

/// The eight linear isometries of the square lattice, as row-major 2×2
/// matrices. Index 0 is the identity, 0..4 are rotations by k·90°, 4..8 are
/// reflections.
const D4: [[i32; 4]; 8] = [
    [1, 0, 0, 1],
    [0, -1, 1, 0],
    [-1, 0, 0, -1],
    [0, 1, -1, 0],
    [1, 0, 0, -1],
    [0, 1, 1, 0],
    [-1, 0, 0, 1],
    [0, -1, -1, 0],
];

fn d4_index(m: [i32; 4]) -> u8 {
    D4.iter().position(|x| *x == m).expect("not a D4 element") as u8
}

/// A lattice isometry `p ↦ M·p + t` with `M` in the dihedral group D₄.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symmetry {
    orient: u8,
    shift: Point,
}

impl Symmetry {
    pub const IDENTITY: Symmetry = Symmetry { orient: 0, shift: Point::ORIGIN };

    pub fn new(orient: u8, shift: Point) -> Option<Self> {
        (orient < 8).then_some(Symmetry { orient, shift })
    }

    pub fn rotation(quarter_turns: u8) -> Self {
        Symmetry { orient: quarter_turns % 4, shift: Point::ORIGIN }
    }

    pub fn translation(t: Point) -> Self {
        Symmetry { orient: 0, shift: t }
    }

    pub fn point_group() -> impl Iterator<Item = Symmetry> {
        (0..8).map(|o| Symmetry { orient: o, shift: Point::ORIGIN })
    }

    pub fn orient(&self) -> u8 {
        self.orient
    }

    pub fn shift(&self) -> Point {
        self.shift
    }

    pub fn with_shift(self, shift: Point) -> Self {
        Symmetry { shift, ..self }
    }

    fn matrix(&self) -> [i32; 4] {
        D4[self.orient as usize]
    }

    pub fn linear(&self, p: Point) -> Point {
        let m = self.matrix();
        Point::new(m[0] * p.x + m[1] * p.y, m[2] * p.x + m[3] * p.y)
    }

    pub fn apply(&self, p: Point) -> Point {
        self.linear(p) + self.shift
    }

    pub fn apply_edge(&self, e: &Edge) -> Edge {
        Edge::new(self.apply(e.a), self.apply(e.b)).expect("isometry is injective")
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Symmetry) -> Symmetry {
        let a = self.matrix();
        let b = other.matrix();
        let m = [
            a[0] * b[0] + a[1] * b[2],
            a[0] * b[1] + a[1] * b[3],
            a[2] * b[0] + a[3] * b[2],
            a[2] * b[1] + a[3] * b[3],
        ];
        Symmetry { orient: d4_index(m), shift: self.apply(other.shift) }
    }

    pub fn inverse(&self) -> Symmetry {
        let m = self.matrix();
        let mt = [m[0], m[2], m[1], m[3]];
        let lin = Symmetry { orient: d4_index(mt), shift: Point::ORIGIN };
        Symmetry { orient: lin.orient, shift: -lin.apply(self.shift) }
    }
}

pub fn apply_symmetry(t: &Symmetry, s: &GraphPatch) -> GraphPatch {
    s.edges().map(|e| t.apply_edge(e)).collect()
}

/// Every isometry `T` (eight orientations, translations placing the image
/// inside `window`) with `T(pattern) ⊆ s`. `window` defaults to the
/// bounding box of `s` inflated by the pattern diameter.
pub fn find_pattern(s: &GraphPatch, pattern: &GraphPatch, window: Option<BBox>) -> Vec<Symmetry> {
    let mut out = Vec::new();
    let Some(first) = pattern.edges().next().copied() else {
        return out;
    };
    let Some(sbox) = s.bbox() else {
        return out;
    };
    let window = window.unwrap_or_else(|| {
        let pb = pattern.bbox().expect("nonempty pattern");
        sbox.inflate(pb.width().max(pb.height()))
    });
    for lin in Symmetry::point_group() {
        let img = lin.apply_edge(&first);
        let dir = img.b - img.a;
        for cand in s.edges() {
            if cand.b - cand.a != dir {
                continue;
            }
            let t = lin.with_shift(cand.a - img.a);
            let fits = pattern.edges().all(|e| {
                let m = t.apply_edge(e);
                window.contains(m.a) && window.contains(m.b) && s.contains(&m)
            });
            if fits {
                out.push(t);
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// The first forbidden configuration: a 5-cycle around the origin.
pub fn h1() -> GraphPatch {
    GraphPatch::from_edges([
        Edge::of(0, 0, -1, 0),
        Edge::of(-1, 0, 0, 1),
        Edge::of(0, 1, 1, 0),
        Edge::of(1, 0, 1, -1),
        Edge::of(1, -1, 0, 0),
    ])
}

/// The second forbidden configuration, long strokes split into unit edges.
pub fn h2() -> GraphPatch {
    GraphPatch::from_edges([
        Edge::of(-1, 2, 0, 2),
        Edge::of(0, 2, 1, 2),
        Edge::of(-1, 0, -1, 1),
        Edge::of(-1, 1, -1, 2),
        Edge::of(-1, 0, 0, 0),
        Edge::of(0, 0, 1, 0),
        Edge::of(1, 0, 0, 1),
        Edge::of(0, 1, 1, 1),
        Edge::of(1, 1, 0, 2),
    ])
}

/// Splits the segment `p–q` into the primitive lattice segments along it.
pub fn split_stroke(p: Point, q: Point) -> Vec<Edge> {
    let d = q - p;
    let g = gcd(d.x.unsigned_abs(), d.y.unsigned_abs()) as i32;
    if g == 0 {
        return Vec::new();
    }
    let step = Point::new(d.x / g, d.y / g);
    (0..g)
        .map(|i| {
            let a = p + Point::new(step.x * i, step.y * i);
            Edge::new(a, a + step).expect("nonzero step")
        })
        .collect()
}

fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}
