//! Exact shortest paths and dilation checks.

use alloc::collections::{BTreeMap, BinaryHeap};
use alloc::vec::Vec;
use core::cmp::Reverse;

use crate::exact::{leq_scaled_sqrt, Zr2};
use crate::lattice::{GraphPatch, PatchIndex, Point, DIRS};

mod knight;
mod periodic;

pub use knight::{
    induction_inequality_certificate, knight_graph_distance, lemma24_bounded_check, BoundedCheck,
    BoundedEntry, InductionCertificate, KnightGraph, Poly2,
};
pub use periodic::{
    lower_bound_tightness, materialized_patch, verify_periodic_local_optimality, PeriodicError,
    PeriodicReport,
    PeriodicSpec, PeriodicWitness, TightnessReport, VariantBlock,
};

/// A weighted graph on lattice points with nonnegative exact weights.
pub trait LatticeGraph {
    fn neighbors(&self, p: Point, out: &mut Vec<(Point, Zr2)>);
}

impl LatticeGraph for PatchIndex {
    /// Unit and diagonal edges carry their exact length. Longer edges carry
    /// `⌊√m⌋`, a lower bound on their length `√m`, so distances through them
    /// are lower bounds.
    fn neighbors(&self, p: Point, out: &mut Vec<(Point, Zr2)>) {
        let m = self.mask(p);
        for (k, d) in DIRS.iter().enumerate() {
            if m & (1 << k) != 0 {
                let len = if k % 2 == 0 { Zr2::ONE } else { Zr2::SQRT2 };
                out.push((p + *d, len));
            }
        }
        for e in self.long_edges() {
            if let Some(q) = e.other(p) {
                out.push((q, Zr2::int(isqrt(e.norm_sq()))));
            }
        }
    }
}

pub(crate) fn isqrt(n: i64) -> i64 {
    if n < 2 {
        return n.max(0);
    }
    let mut x = n;
    let mut y = (x + 1) / 2;
    while y < x {
        x = y;
        y = (x + n / x) / 2;
    }
    x
}

/// Dijkstra from `p`, expanding only vertices whose distance satisfies
/// `keep`. Returns the distance to `q` if it is reached under `keep`.
pub fn distance_with<G: LatticeGraph + ?Sized>(
    g: &G,
    p: Point,
    q: Point,
    keep: impl Fn(Zr2) -> bool,
) -> Option<Zr2> {
    if !keep(Zr2::ZERO) {
        return None;
    }
    let mut dist: BTreeMap<Point, Zr2> = BTreeMap::new();
    let mut heap = BinaryHeap::new();
    let mut buf = Vec::new();
    dist.insert(p, Zr2::ZERO);
    heap.push(Reverse((Zr2::ZERO, p)));
    while let Some(Reverse((d, u))) = heap.pop() {
        if dist.get(&u).is_some_and(|best| *best < d) {
            continue;
        }
        if u == q {
            return Some(d);
        }
        buf.clear();
        g.neighbors(u, &mut buf);
        for &(v, w) in &buf {
            let nd = d + w;
            if !keep(nd) {
                continue;
            }
            if dist.get(&v).is_none_or(|old| nd < *old) {
                dist.insert(v, nd);
                heap.push(Reverse((nd, v)));
            }
        }
    }
    None
}

/// All distances from `p` under `keep`, in increasing vertex order.
pub fn distances_from<G: LatticeGraph + ?Sized>(
    g: &G,
    p: Point,
    keep: impl Fn(Zr2) -> bool,
) -> BTreeMap<Point, Zr2> {
    let mut done: BTreeMap<Point, Zr2> = BTreeMap::new();
    let mut best: BTreeMap<Point, Zr2> = BTreeMap::new();
    let mut heap = BinaryHeap::new();
    let mut buf = Vec::new();
    best.insert(p, Zr2::ZERO);
    heap.push(Reverse((Zr2::ZERO, p)));
    while let Some(Reverse((d, u))) = heap.pop() {
        if done.contains_key(&u) {
            continue;
        }
        done.insert(u, d);
        buf.clear();
        g.neighbors(u, &mut buf);
        for &(v, w) in &buf {
            let nd = d + w;
            if done.contains_key(&v) || !keep(nd) {
                continue;
            }
            if best.get(&v).is_none_or(|old| nd < *old) {
                best.insert(v, nd);
                heap.push(Reverse((nd, v)));
            }
        }
    }
    done
}

/// Shortest path length from `p` to `q` in `s`, or `None` when no path of
/// length at most `cutoff` exists.
///
/// Exact when every edge of `s` is a unit or diagonal step; longer edges
/// are weighted from below (see [`PatchIndex`]).
pub fn shortest_path_length(s: &GraphPatch, p: Point, q: Point, cutoff: Option<Zr2>) -> Option<Zr2> {
    let idx = PatchIndex::new(s);
    match cutoff {
        Some(c) => distance_with(&idx, p, q, |d| d <= c),
        None => distance_with(&idx, p, q, |_| true),
    }
}

/// The dilation budget `(1 + √2)·|pq|` as a pruning predicate.
pub fn within_budget(n: i64) -> impl Fn(Zr2) -> bool {
    move |d: Zr2| leq_scaled_sqrt(d, Zr2::DILATION, n as u64).expect("lengths are nonnegative")
}

/// `d(p, q) ≤ (1 + √2)|pq|` in `g`.
pub fn pair_ok_in<G: LatticeGraph + ?Sized>(g: &G, p: Point, q: Point) -> bool {
    distance_with(g, p, q, within_budget(p.dist_sq(q))).is_some()
}

pub fn pair_dilation_ok(s: &GraphPatch, p: Point, q: Point) -> bool {
    assert_ne!(p, q, "dilation of a pair needs distinct points");
    pair_ok_in(&PatchIndex::new(s), p, q)
}
