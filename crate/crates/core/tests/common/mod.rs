#![allow(dead_code)]

use dil3_core::lattice::is_valid_partial;
use dil3_core::{Edge, GraphPatch, Point};
use proptest::prelude::*;
use rand::Rng;

pub const STEPS: [(i32, i32); 8] = [(1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1), (0, -1), (1, -1)];

/// Random plane patch of unit and diagonal edges in `[-r, r]²`, built by
/// inserting candidates that keep it valid.
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

/// Short edges in a box, not necessarily plane.
pub fn arb_edges(r: i32, max: usize) -> impl Strategy<Value = Vec<Edge>> {
    prop::collection::vec((-r..=r, -r..=r, 0usize..8), 0..max).prop_map(|v| {
        v.into_iter()
            .map(|(x, y, k)| {
                let p = Point::new(x, y);
                Edge::new(p, p + Point::new(STEPS[k].0, STEPS[k].1)).unwrap()
            })
            .collect()
    })
}

/// Plane patch from a list of candidate edges, dropping those that break
/// validity.
pub fn plane_from(edges: Vec<Edge>) -> GraphPatch {
    let mut s = GraphPatch::new();
    for e in edges {
        if s.insert(e) && !is_valid_partial(&s) {
            s.remove(&e);
        }
    }
    s
}

pub fn arb_plane(r: i32, max: usize) -> impl Strategy<Value = GraphPatch> {
    arb_edges(r, max).prop_map(plane_from)
}

pub fn step_len(a: Point, b: Point) -> f64 {
    (a.dist_sq(b) as f64).sqrt()
}

/// Unit or diagonal segments only meet away from a shared endpoint when two
/// diagonals cross in the middle of a unit square.
pub fn diagonals_cross(a: (Point, Point), b: (Point, Point)) -> bool {
    let mid = |(p, q): (Point, Point)| (p.x + q.x, p.y + q.y);
    a.0.dist_sq(a.1) == 2 && b.0.dist_sq(b.1) == 2 && mid(a) == mid(b) && a != b && a != (b.1, b.0)
}
