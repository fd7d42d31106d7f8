//! Finite verification of local optimality for doubly periodic graphs,
//! including graphs where every translate of a block independently picks
//! one of two edge variants.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use thiserror::Error;

use super::{distance_with, distances_from, within_budget};
use crate::exact::{leq_scaled_sqrt, Zr2};
use crate::lattice::{segments_intersect, BBox, Edge, GraphPatch, PatchIndex, Point};
use crate::paths::close_pair_offsets;

/// Materialization margin around the fundamental domain. A path meeting the
/// dilation budget of a close pair has length at most `(1+√2)√5 < 5.5`, so
/// it never leaves this window.
pub const WINDOW_RADIUS: i32 = 8;

/// Two alternative edge sets for one block. Each lattice translate of the
/// block chooses independently.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VariantBlock {
    pub anchor: Point,
    pub a: Vec<Edge>,
    pub b: Vec<Edge>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicSpec {
    pub t1: Point,
    pub t2: Point,
    pub edges: Vec<Edge>,
    pub variants: Vec<VariantBlock>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PeriodicError {
    #[error("period vectors {0} and {1} are linearly dependent")]
    DependentPeriods(Point, Point),
    #[error("spec has no edges")]
    Empty,
    #[error("vertex {vertex} has degree {degree} > 3")]
    DegreeExceeded { vertex: Point, degree: u32 },
    #[error("edges {0} and {1} intersect")]
    Crossing(Edge, Edge),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicWitness {
    pub p: Point,
    pub q: Point,
    /// Variant choices (`false` = A, `true` = B) of the blocks that could
    /// influence the pair, keyed by translated anchor.
    pub choices: Vec<(Point, bool)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicReport {
    pub domain_size: usize,
    pub pairs_checked: usize,
    pub assignments_checked: usize,
    pub failure: Option<PeriodicWitness>,
}

impl PeriodicReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

#[derive(Clone, Debug)]
struct Instance {
    anchor: Point,
    a: Vec<Edge>,
    b: Vec<Edge>,
}

impl Instance {
    fn edges(&self, pick_b: bool) -> &[Edge] {
        if pick_b {
            &self.b
        } else {
            &self.a
        }
    }

    fn all_edges(&self) -> impl Iterator<Item = &Edge> {
        self.a.iter().chain(self.b.iter())
    }
}

impl PeriodicSpec {
    pub fn determinant(&self) -> i64 {
        self.t1.x as i64 * self.t2.y as i64 - self.t1.y as i64 * self.t2.x as i64
    }

    pub fn in_period_lattice(&self, v: Point) -> bool {
        let d = self.determinant();
        if d == 0 {
            return false;
        }
        let c1 = v.x as i64 * self.t2.y as i64 - v.y as i64 * self.t2.x as i64;
        let c2 = self.t1.x as i64 * v.y as i64 - self.t1.y as i64 * v.x as i64;
        c1 % d == 0 && c2 % d == 0
    }

    /// One representative per class of `Z²` modulo the period lattice, each
    /// the class member closest to the origin.
    pub fn fundamental_domain(&self) -> Vec<Point> {
        let d = self.determinant().unsigned_abs() as i32;
        let mut cands: Vec<Point> = Vec::new();
        for x in -d..=d {
            for y in -d..=d {
                cands.push(Point::new(x, y));
            }
        }
        cands.sort_by_key(|p| (p.norm_sq(), *p));
        let mut reps: Vec<Point> = Vec::new();
        for c in cands {
            if !reps.iter().any(|r| self.in_period_lattice(c - *r)) {
                reps.push(c);
            }
        }
        reps.sort();
        reps
    }

    fn translations(&self, window: BBox) -> Vec<Point> {
        let extent = self
            .edges
            .iter()
            .chain(self.variants.iter().flat_map(|v| v.a.iter().chain(v.b.iter())))
            .flat_map(|e| e.endpoints())
            .chain(self.variants.iter().map(|v| v.anchor))
            .map(|p| p.x.abs().max(p.y.abs()))
            .max()
            .unwrap_or(0);
        let reach = window.min.x.abs().max(window.min.y.abs()).max(window.max.x.abs()).max(window.max.y.abs());
        let m = (reach + extent) as i64;
        let l1 = |t: Point| (t.x.abs() + t.y.abs()) as i64;
        let k = (l1(self.t1).max(l1(self.t2)) * m) / self.determinant().abs() + 2;
        let mut out = Vec::new();
        for k1 in -k..=k {
            for k2 in -k..=k {
                let v = Point::new(
                    (k1 * self.t1.x as i64 + k2 * self.t2.x as i64) as i32,
                    (k1 * self.t1.y as i64 + k2 * self.t2.y as i64) as i32,
                );
                out.push(v);
            }
        }
        out
    }

    fn materialize(&self, window: BBox) -> (GraphPatch, Vec<Instance>) {
        let touches = |e: &Edge| window.contains(e.a()) || window.contains(e.b());
        let mut base = GraphPatch::new();
        let mut instances = Vec::new();
        for v in self.translations(window) {
            for e in &self.edges {
                let f = e.translate(v);
                if touches(&f) {
                    base.insert(f);
                }
            }
            for block in &self.variants {
                let inst = Instance {
                    anchor: block.anchor + v,
                    a: block.a.iter().map(|e| e.translate(v)).collect(),
                    b: block.b.iter().map(|e| e.translate(v)).collect(),
                };
                if inst.all_edges().any(touches) {
                    instances.push(inst);
                }
            }
        }
        (base, instances)
    }
}

/// Graph for one assignment of the selected instances; every other instance
/// takes variant A.
fn assemble(base: &GraphPatch, instances: &[Instance], selected: &[usize], mask: u64) -> GraphPatch {
    let mut g = base.clone();
    for (i, inst) in instances.iter().enumerate() {
        let pick_b = selected
            .iter()
            .position(|s| *s == i)
            .is_some_and(|bit| mask & (1 << bit) != 0);
        for e in inst.edges(pick_b) {
            g.insert(*e);
        }
    }
    g
}

fn choices(instances: &[Instance], selected: &[usize], mask: u64) -> Vec<(Point, bool)> {
    selected
        .iter()
        .enumerate()
        .map(|(bit, i)| (instances[*i].anchor, mask & (1 << bit) != 0))
        .collect()
}

/// `x` can lie on a unit/diagonal walk from `p` to `q` within the pair's
/// dilation budget.
fn in_path_envelope(p: Point, q: Point, x: Point) -> bool {
    let walk = p.octile(x) + x.octile(q);
    leq_scaled_sqrt(walk, Zr2::DILATION, p.dist_sq(q) as u64).unwrap()
}

/// Checks degree, planarity, and the dilation bound for every close pair
/// anchored in one fundamental domain. Variant specs are checked for every
/// assignment of the blocks that can influence each check.
pub fn verify_periodic_local_optimality(spec: &PeriodicSpec) -> Result<PeriodicReport, PeriodicError> {
    if spec.determinant() == 0 {
        return Err(PeriodicError::DependentPeriods(spec.t1, spec.t2));
    }
    if spec.edges.is_empty() && spec.variants.is_empty() {
        return Err(PeriodicError::Empty);
    }
    let domain = spec.fundamental_domain();
    let window = BBox::around(domain.iter().copied())
        .expect("nonempty domain")
        .inflate(WINDOW_RADIUS);
    let (base, instances) = spec.materialize(window);
    let reach = base
        .edges()
        .chain(instances.iter().flat_map(|i| i.all_edges()))
        .map(|e| e.a().chebyshev(e.b()))
        .max()
        .unwrap_or(1);

    let mut report = PeriodicReport {
        domain_size: domain.len(),
        pairs_checked: 0,
        assignments_checked: 0,
        failure: None,
    };

    for &p in &domain {
        // Structural validity around p.
        let near: Vec<usize> = instances
            .iter()
            .enumerate()
            .filter(|(_, inst)| inst.all_edges().flat_map(|e| e.endpoints()).any(|x| x.chebyshev(p) <= 2 * reach))
            .map(|(i, _)| i)
            .collect();
        for mask in 0..(1u64 << near.len()) {
            let g = assemble(&base, &instances, &near, mask);
            let degree = g.degree(p);
            if degree > 3 {
                return Err(PeriodicError::DegreeExceeded { vertex: p, degree });
            }
            let at_p: Vec<Edge> = g.edges().filter(|e| e.touches(p)).copied().collect();
            for e in &at_p {
                for f in g.edges() {
                    if f != e && segments_intersect(e, f) {
                        return Err(PeriodicError::Crossing(*e, *f));
                    }
                }
            }
        }

        for off in close_pair_offsets() {
            let q = p + off;
            let selected: Vec<usize> = instances
                .iter()
                .enumerate()
                .filter(|(_, inst)| {
                    inst.all_edges()
                        .any(|e| in_path_envelope(p, q, e.a()) && in_path_envelope(p, q, e.b()))
                })
                .map(|(i, _)| i)
                .collect();
            report.pairs_checked += 1;
            for mask in 0..(1u64 << selected.len()) {
                report.assignments_checked += 1;
                let g = assemble(&base, &instances, &selected, mask);
                let idx = PatchIndex::new(&g);
                if distance_with(&idx, p, q, within_budget(p.dist_sq(q))).is_none() {
                    report.failure = Some(PeriodicWitness {
                        p,
                        q,
                        choices: choices(&instances, &selected, mask),
                    });
                    return Ok(report);
                }
            }
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TightnessReport {
    /// For each domain vertex, a unit neighbor at distance exactly `1 + √2`,
    /// if one exists.
    pub witnesses: Vec<(Point, Option<(Point, Zr2)>)>,
}

impl TightnessReport {
    pub fn passed(&self) -> bool {
        self.witnesses.iter().all(|(_, w)| w.is_some())
    }
}

/// For every vertex of the fundamental domain, looks for a unit neighbor at
/// graph distance exactly `1 + √2`. Variant blocks take choice A.
pub fn lower_bound_tightness(spec: &PeriodicSpec) -> Result<TightnessReport, PeriodicError> {
    if spec.determinant() == 0 {
        return Err(PeriodicError::DependentPeriods(spec.t1, spec.t2));
    }
    let domain = spec.fundamental_domain();
    let window = BBox::around(domain.iter().copied()).unwrap().inflate(WINDOW_RADIUS);
    let (base, instances) = spec.materialize(window);
    let g = assemble(&base, &instances, &[], 0);
    let idx = PatchIndex::new(&g);
    let units = [Point::new(1, 0), Point::new(0, 1), Point::new(-1, 0), Point::new(0, -1)];
    let cutoff = Zr2::DILATION;
    let witnesses = domain
        .iter()
        .map(|&p| {
            let dist = distances_from(&idx, p, |d| d <= cutoff);
            let hit = units.iter().map(|u| p + *u).find_map(|q| {
                dist.get(&q).filter(|d| **d == Zr2::DILATION).map(|d| (q, *d))
            });
            (p, hit)
        })
        .collect();
    Ok(TightnessReport { witnesses })
}

/// Vertex set of the materialized graph around the domain. Used by tests
/// and renderers.
pub fn materialized_patch(spec: &PeriodicSpec, radius: i32) -> GraphPatch {
    let domain = spec.fundamental_domain();
    let window = BBox::around(domain.iter().copied()).unwrap().inflate(radius);
    let (base, instances) = spec.materialize(window);
    let g = assemble(&base, &instances, &[], 0);
    g.edges()
        .filter(|e| window.contains(e.a()) && window.contains(e.b()))
        .copied()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}
