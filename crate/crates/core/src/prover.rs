//! Backtracking refutation of partial edge sets.
//!
//! Starting from a finite edge set `S₀`, the prover rebuilds every way a
//! locally optimal graph could contain `S₀`: any close pair must be served by
//! one of its admissible paths, so a pair with none closes the branch, a pair
//! with exactly one forces that path, and otherwise the search splits over
//! all of them. Forbidden subpatterns and a distance lower bound between two
//! fixed points close branches early. If every branch closes, the search
//! tree is a certificate that no locally optimal graph contains `S₀`.

use alloc::collections::{BTreeMap, BTreeSet, BinaryHeap};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Reverse;
use core::sync::atomic::{AtomicU64, Ordering};

use hashbrown::HashMap;
use thiserror::Error;

use crate::cert::{BoundConstraint, BoundWitness, Certificate, NamedPattern, ProofNode, Step};
use crate::exact::{leq_scaled_sqrt, scaled_sqrt_lt, Zr2};
use crate::lattice::{find_pattern, h1, h2, is_valid_partial, Edge, GraphPatch, PatchIndex, Point, Symmetry};
use crate::paths::{
    close_pair_offsets, enumerate_in, enumerate_shortest_candidates, satisfied_in, ClosePair,
    PathCandidate,
};

pub const ENGINE: &str = concat!("dil3-core ", env!("CARGO_PKG_VERSION"));
pub const DEFAULT_BUDGET: u64 = 10_000_000;
pub const DEFAULT_SCAN_RADIUS: i32 = 2;
pub const PROGRESS_EVERY: u64 = 10_000;

/// Which exploration pair to split on when nothing is forced.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Heuristic {
    /// Fewest admissible paths; ties go to the smallest pair.
    FailFirst,
    /// Smallest pair.
    Lex,
    /// Nearest to the start set, then fewest admissible paths, then the
    /// smallest pair. Deductions are also taken nearest first.
    #[default]
    Local,
}

impl Heuristic {
    pub fn id(&self) -> &'static str {
        match self {
            Heuristic::FailFirst => "fail-first",
            Heuristic::Lex => "lex",
            Heuristic::Local => "local",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "fail-first" => Some(Heuristic::FailFirst),
            "lex" => Some(Heuristic::Lex),
            "local" => Some(Heuristic::Local),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ProverConfig {
    pub start: GraphPatch,
    pub patterns: Vec<NamedPattern>,
    pub bound: Option<BoundConstraint>,
    pub scan_radius: i32,
    pub budget: u64,
    pub heuristic: Heuristic,
}

impl ProverConfig {
    pub fn new(start: GraphPatch) -> Self {
        ProverConfig {
            start,
            patterns: Vec::new(),
            bound: None,
            scan_radius: DEFAULT_SCAN_RADIUS,
            budget: DEFAULT_BUDGET,
            heuristic: Heuristic::default(),
        }
    }

    pub fn with_pattern(mut self, id: &str, edges: GraphPatch) -> Self {
        self.patterns.push(NamedPattern { id: id.to_string(), edges });
        self
    }

    pub fn with_bound(mut self, bound: BoundConstraint) -> Self {
        self.bound = Some(bound);
        self
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn with_scan_radius(mut self, r: i32) -> Self {
        self.scan_radius = r;
        self
    }

    pub fn with_heuristic(mut self, h: Heuristic) -> Self {
        self.heuristic = h;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProverError {
    #[error("node budget of {budget} exhausted; inconclusive")]
    BudgetExceeded { budget: u64 },
    #[error("no close pair near the edge set is open at depth {depth}; inconclusive")]
    Stalled { depth: u32 },
    #[error("start set is not a plane graph of maximum degree 3")]
    InvalidStart,
    #[error("bound constant must be positive")]
    NonPositiveBound,
    #[error("unknown pattern id {0:?}")]
    UnknownPattern(String),
    #[error("enumerated shortest-path classes differ from the stored ones")]
    ClassDrift,
}

/// What to do at one node of the search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decision {
    /// A closed leaf.
    Leaf(Step),
    /// The pair admits a single path; continue with its new edges.
    Deduce { pair: ClosePair, path: PathCandidate, added: Vec<Edge> },
    /// Split over every admissible path of the pair, in canonical order.
    Branch { pair: ClosePair, options: Vec<(PathCandidate, Vec<Edge>)> },
    /// Every scanned pair is already served; nothing to propagate.
    Stalled,
}

/// Shared state of one search: node counter, budget and progress hook.
pub struct SearchContext<'a> {
    nodes: AtomicU64,
    max_depth: AtomicU64,
    budget: u64,
    progress: Option<&'a (dyn Fn(u64, u32) + Sync)>,
}

impl<'a> SearchContext<'a> {
    pub fn new(budget: u64, progress: Option<&'a (dyn Fn(u64, u32) + Sync)>) -> Self {
        SearchContext { nodes: AtomicU64::new(0), max_depth: AtomicU64::new(0), budget, progress }
    }

    pub fn nodes(&self) -> u64 {
        self.nodes.load(Ordering::Relaxed)
    }

    pub fn max_depth(&self) -> u64 {
        self.max_depth.load(Ordering::Relaxed)
    }

    /// Counts one node; fails once the budget is spent.
    pub fn tick(&self, depth: u32) -> Result<(), ProverError> {
        let n = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        self.max_depth.fetch_max(depth as u64, Ordering::Relaxed);
        if n > self.budget {
            return Err(ProverError::BudgetExceeded { budget: self.budget });
        }
        if n.is_multiple_of(PROGRESS_EVERY) {
            if let Some(f) = self.progress {
                f(n, depth);
            }
        }
        Ok(())
    }
}

/// Shortest walks from `from` in `idx`, with predecessors, limited to
/// distance `< limit`. Ties resolve towards the smaller vertex.
fn shortest_tree(idx: &PatchIndex, from: Point, limit: Zr2) -> BTreeMap<Point, (Zr2, Point)> {
    use crate::dilation::LatticeGraph;
    let mut done: BTreeMap<Point, (Zr2, Point)> = BTreeMap::new();
    let mut heap = BinaryHeap::new();
    let mut buf = Vec::new();
    heap.push(Reverse((Zr2::ZERO, from, from)));
    while let Some(Reverse((d, u, parent))) = heap.pop() {
        if done.contains_key(&u) {
            continue;
        }
        done.insert(u, (d, parent));
        buf.clear();
        idx.neighbors(u, &mut buf);
        for &(v, w) in &buf {
            let nd = d + w;
            if nd < limit && !done.contains_key(&v) {
                heap.push(Reverse((nd, v, u)));
            }
        }
    }
    done
}

fn walk_back(tree: &BTreeMap<Point, (Zr2, Point)>, mut p: Point) -> Vec<Point> {
    let mut out = alloc::vec![p];
    loop {
        let (_, parent) = tree[&p];
        if parent == p {
            break;
        }
        p = parent;
        out.push(p);
    }
    out
}

/// Looks for walks `u → w` and `w' → v` inside the unit and diagonal edges
/// of `s`, with `(w, w')` a close pair (or `w = w'`), whose total length plus
/// the close-pair guarantee `(1 + √2)|ww'|` stays below `c`. Any locally
/// optimal graph containing `s` then has `d(u, v) < c`.
pub fn detect_bound_violation(s: &GraphPatch, u: Point, v: Point, c: Zr2) -> Option<BoundWitness> {
    let short: GraphPatch = s.edges().filter(|e| e.is_short()).copied().collect();
    let idx = PatchIndex::new(&short);
    let from_u = shortest_tree(&idx, u, c);
    let from_v = shortest_tree(&idx, v, c);
    let mut offsets = alloc::vec![Point::ORIGIN];
    offsets.extend(close_pair_offsets());
    for (&w, &(du, _)) in &from_u {
        for off in &offsets {
            let w2 = w + *off;
            let Some(&(dv, _)) = from_v.get(&w2) else { continue };
            let n = off.norm_sq() as u64;
            if scaled_sqrt_lt(Zr2::DILATION, n, c - du - dv).unwrap() {
                let mut head = walk_back(&from_u, w);
                head.reverse();
                let tail = walk_back(&from_v, w2);
                return Some(BoundWitness { head, tail });
            }
        }
    }
    None
}

/// Close pairs with at least one endpoint within Chebyshev distance `r` of
/// a vertex of `s`, endpoints sorted, in increasing order.
pub fn scan_pairs(s: &GraphPatch, r: i32) -> Vec<ClosePair> {
    let mut points = BTreeSet::new();
    for v in s.vertices() {
        for dx in -r..=r {
            for dy in -r..=r {
                points.insert(v + Point::new(dx, dy));
            }
        }
    }
    let offsets = close_pair_offsets();
    let mut pairs = BTreeSet::new();
    for p in points {
        for off in &offsets {
            pairs.insert(ClosePair { p, q: p + *off }.normalized());
        }
    }
    pairs.into_iter().collect()
}

/// Path counts at or above this are not told apart when choosing where to
/// branch.
pub const COUNT_CAP: usize = 16;

/// Pair classification as the search uses it: exploration keeps only the
/// (capped) number of admissible paths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Class {
    Satisfied,
    Contradiction,
    Deduction(PathCandidate),
    Exploration(usize),
}

impl Class {
    fn of(idx: &PatchIndex, pair: ClosePair) -> Class {
        if satisfied_in(idx, pair) {
            return Class::Satisfied;
        }
        let mut paths = enumerate_in(idx, pair, COUNT_CAP);
        match paths.len() {
            0 => Class::Contradiction,
            1 => Class::Deduction(paths.pop().unwrap()),
            n => Class::Exploration(n),
        }
    }
}

/// Memo of pair classifications keyed by the pair's offset and the edge
/// masks of every lattice point within one step of its path envelope. Both
/// the budgeted distance and the admissible-path search only look at those
/// points when the patch has no edges longer than a diagonal.
/// Envelope points of one pair offset and the memo over their edge masks.
type OffsetMemo = (Vec<Point>, HashMap<Vec<u8>, Class>);

#[derive(Default)]
pub struct ClassCache {
    windows: BTreeMap<Point, OffsetMemo>,
    key: Vec<u8>,
    hits: u64,
    misses: u64,
}

impl ClassCache {
    pub fn hits(&self) -> u64 {
        self.hits
    }

    pub fn misses(&self) -> u64 {
        self.misses
    }

    pub fn len(&self) -> usize {
        self.windows.values().map(|(_, m)| m.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn classify(&mut self, idx: &PatchIndex, pair: ClosePair) -> Class {
        if !idx.long_edges().is_empty() {
            return Class::of(idx, pair);
        }
        let off = pair.q - pair.p;
        let (window, memo) = self.windows.entry(off).or_insert_with(|| (envelope_window(off), HashMap::new()));
        self.key.clear();
        self.key.extend(window.iter().map(|x| idx.mask(pair.p + *x)));
        let there = Symmetry::translation(pair.p);
        if let Some(c) = memo.get(self.key.as_slice()) {
            self.hits += 1;
            return match c {
                Class::Deduction(path) => Class::Deduction(path.transformed(&there)),
                c => c.clone(),
            };
        }
        self.misses += 1;
        let class = Class::of(idx, pair);
        let stored = match &class {
            Class::Deduction(path) => Class::Deduction(path.transformed(&Symmetry::translation(-pair.p))),
            c => c.clone(),
        };
        memo.insert(self.key.clone(), stored);
        class
    }
}

/// Relative points within Chebyshev distance 1 of some `x` with
/// `oct(0, x) + oct(x, off) ≤ (1 + √2)|off|`.
fn envelope_window(off: Point) -> Vec<Point> {
    // every close pair's envelope lies within 6 of its endpoints
    let r = 6;
    let mut core = BTreeSet::new();
    let lo = Point::new(off.x.min(0) - r, off.y.min(0) - r);
    let hi = Point::new(off.x.max(0) + r, off.y.max(0) + r);
    for x in lo.x..=hi.x {
        for y in lo.y..=hi.y {
            let p = Point::new(x, y);
            let walk = Point::ORIGIN.octile(p) + p.octile(off);
            if leq_scaled_sqrt(walk, Zr2::DILATION, off.norm_sq() as u64).unwrap() {
                core.insert(p);
            }
        }
    }
    let mut out = BTreeSet::new();
    for p in core {
        for dx in -1..=1 {
            for dy in -1..=1 {
                out.insert(p + Point::new(dx, dy));
            }
        }
    }
    out.into_iter().collect()
}

pub struct Prover {
    config: ProverConfig,
    anchors: Vec<Point>,
    cache: ClassCache,
}

impl Prover {
    pub fn new(config: ProverConfig) -> Result<Self, ProverError> {
        if !is_valid_partial(&config.start) {
            return Err(ProverError::InvalidStart);
        }
        if config.bound.is_some_and(|b| b.c.sign() <= 0) {
            return Err(ProverError::NonPositiveBound);
        }
        let anchors = config.start.vertices().collect();
        Ok(Prover { config, anchors, cache: ClassCache::default() })
    }

    /// Chebyshev distance from each endpoint of `pair` to the start set,
    /// summed.
    fn proximity(&self, pair: ClosePair) -> u32 {
        let near = |p: Point| self.anchors.iter().map(|a| a.chebyshev(p)).min().unwrap_or(0) as u32;
        near(pair.p) + near(pair.q)
    }

    pub fn cache(&self) -> &ClassCache {
        &self.cache
    }

    pub fn config(&self) -> &ProverConfig {
        &self.config
    }

    /// Local decision at edge set `s`, in priority order: bound violation,
    /// forbidden pattern, contradiction, deduction, branch.
    pub fn decide(&mut self, s: &GraphPatch) -> Decision {
        if let Some(b) = self.config.bound {
            if let Some(witness) = detect_bound_violation(s, b.u, b.v, b.c) {
                return Decision::Leaf(Step::BoundHit { witness });
            }
        }
        for (i, pat) in self.config.patterns.iter().enumerate() {
            if let Some(t) = find_pattern(s, &pat.edges, None).first() {
                return Decision::Leaf(Step::PatternHit { pattern: i, transform: *t });
            }
        }

        let idx = PatchIndex::new(s);
        let mut pairs = scan_pairs(s, self.config.scan_radius);
        if self.config.heuristic == Heuristic::Local {
            pairs.sort_by_key(|pair| (self.proximity(*pair), *pair));
        }
        let mut deduction: Option<(ClosePair, PathCandidate)> = None;
        // (rank, path count, pair); smaller is better
        let mut best: Option<(u32, usize, ClosePair)> = None;
        for pair in pairs {
            match self.cache.classify(&idx, pair) {
                Class::Contradiction => return Decision::Leaf(Step::Contradiction { pair }),
                Class::Satisfied => {}
                Class::Deduction(path) => {
                    if deduction.is_none() {
                        deduction = Some((pair, path));
                    }
                }
                Class::Exploration(n) => {
                    let rank = match self.config.heuristic {
                        Heuristic::Local => self.proximity(pair),
                        _ => 0,
                    };
                    let key = (rank, n, pair);
                    let better = match (best, self.config.heuristic) {
                        (None, _) => true,
                        (Some(_), Heuristic::Lex) => false,
                        (Some(b), _) => key < b,
                    };
                    if better {
                        best = Some(key);
                    }
                }
            }
        }
        if let Some((pair, path)) = deduction {
            let mut added = path.new_edges(s);
            added.sort();
            return Decision::Deduce { pair, path, added };
        }
        match best {
            Some((_, _, pair)) => {
                let options = enumerate_in(&idx, pair, usize::MAX)
                    .into_iter()
                    .map(|p| {
                        let mut added = p.new_edges(s);
                        added.sort();
                        (p, added)
                    })
                    .collect();
                Decision::Branch { pair, options }
            }
            None => Decision::Stalled,
        }
    }

    /// Depth-first expansion of the subtree rooted at `s`.
    pub fn expand_subtree(
        &mut self,
        s: &GraphPatch,
        added: Vec<Edge>,
        depth: u32,
        ctx: &SearchContext<'_>,
    ) -> Result<ProofNode, ProverError> {
        ctx.tick(depth)?;
        let step = match self.decide(s) {
            Decision::Leaf(step) => step,
            Decision::Stalled => return Err(ProverError::Stalled { depth }),
            Decision::Deduce { pair, path, added: delta } => {
                let next = extend(s, &delta);
                let child = self.expand_subtree(&next, delta, depth + 1, ctx)?;
                Step::Deduction { pair, path, child: alloc::boxed::Box::new(child) }
            }
            Decision::Branch { pair, options } => {
                let mut children = Vec::with_capacity(options.len());
                for (path, delta) in options {
                    let next = extend(s, &delta);
                    let child = self.expand_subtree(&next, delta, depth + 1, ctx)?;
                    children.push((path, child));
                }
                Step::Branch { pair, children }
            }
        };
        Ok(ProofNode { added, step })
    }

    /// Runs the search to completion on a single thread.
    pub fn expand(&mut self, ctx: &SearchContext<'_>) -> Result<Certificate, ProverError> {
        let start = self.config.start.clone();
        let root = self.expand_subtree(&start, Vec::new(), 0, ctx)?;
        Ok(self.certificate(root))
    }

    /// Wraps a finished tree with the configuration echo.
    pub fn certificate(&self, root: ProofNode) -> Certificate {
        let bounds = Certificate::compute_bounds(&self.config.start, self.config.bound.as_ref(), &root);
        Certificate {
            start: self.config.start.clone(),
            patterns: self.config.patterns.clone(),
            bound: self.config.bound,
            bounds,
            engine: ENGINE.to_string(),
            heuristic: self.config.heuristic.id().to_string(),
            root,
        }
    }
}

pub fn extend(s: &GraphPatch, delta: &[Edge]) -> GraphPatch {
    let mut next = s.clone();
    for e in delta {
        next.insert(*e);
    }
    next
}

/// Single-threaded convenience wrapper around [`Prover::expand`].
pub fn expand(config: ProverConfig) -> Result<Certificate, ProverError> {
    let budget = config.budget;
    let mut prover = Prover::new(config)?;
    let ctx = SearchContext::new(budget, None);
    prover.expand(&ctx)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PatternId {
    H1,
    H2,
}

impl PatternId {
    pub fn parse(s: &str) -> Result<Self, ProverError> {
        match s.to_ascii_lowercase().as_str() {
            "h1" => Ok(PatternId::H1),
            "h2" => Ok(PatternId::H2),
            _ => Err(ProverError::UnknownPattern(s.to_string())),
        }
    }

    pub fn id(&self) -> &'static str {
        match self {
            PatternId::H1 => "h1",
            PatternId::H2 => "h2",
        }
    }

    pub fn edges(&self) -> GraphPatch {
        match self {
            PatternId::H1 => h1(),
            PatternId::H2 => h2(),
        }
    }
}

/// `H1` is refuted without pruning; `H2` may prune on copies of `H1`.
pub fn forbidden_config(pattern: PatternId) -> ProverConfig {
    match pattern {
        PatternId::H1 => ProverConfig::new(h1()),
        PatternId::H2 => ProverConfig::new(h2()).with_pattern("h1", h1()),
    }
}

/// The knight-move pair of the distance boost.
pub const BOOST_U: Point = Point::new(0, 0);
pub const BOOST_V: Point = Point::new(1, 2);

/// The four candidate shortest paths from `(0, 0)` to `(1, 2)`, unit and
/// diagonal steps spelled out.
pub fn boost_paths() -> [PathCandidate; 4] {
    let p = |v: &[(i32, i32)]| {
        PathCandidate::from_vertices(v.iter().map(|&(x, y)| Point::new(x, y)).collect()).unwrap()
    };
    [
        p(&[(0, 0), (-1, 1), (-1, 2), (0, 3), (1, 2)]),
        p(&[(0, 0), (-1, 1), (0, 2), (0, 3), (1, 2)]),
        p(&[(0, 0), (-1, 1), (0, 2), (1, 3), (1, 2)]),
        // drawn from (-1, 0) to (0, 2); translated onto the fixed pair
        p(&[(0, 0), (1, 0), (2, 0), (2, 1), (2, 2), (1, 2)]),
    ]
}

pub fn boost_config(path: &PathCandidate, with_bound: bool) -> ProverConfig {
    let start: GraphPatch = path.edges().collect();
    let mut cfg = ProverConfig::new(start).with_pattern("h1", h1()).with_pattern("h2", h2());
    if with_bound {
        cfg = cfg.with_bound(BoundConstraint { u: BOOST_U, v: BOOST_V, c: path.length });
    }
    cfg
}

/// Checks that the stored boost paths are exactly the enumerated classes.
pub fn verify_boost_paths() -> Result<(), ProverError> {
    let classes = enumerate_shortest_candidates(BOOST_U, BOOST_V).map_err(|_| ProverError::ClassDrift)?;
    let stored = boost_paths();
    let frames_match = classes.len() == stored.len()
        && stored.iter().all(|p| classes.iter().filter(|c| same_class(&c.representative, p)).count() == 1);
    if frames_match {
        Ok(())
    } else {
        Err(ProverError::ClassDrift)
    }
}

/// `a` and `b` join `(0,0)` and `(1,2)` and agree up to the half-turn
/// swapping the endpoints.
fn same_class(a: &PathCandidate, b: &PathCandidate) -> bool {
    let swap = |p: &PathCandidate| {
        let mut vs: Vec<Point> = p.vertices.iter().map(|q| Point::new(1 - q.x, 2 - q.y)).collect();
        vs.reverse();
        vs
    };
    a.vertices == b.vertices || a.vertices == swap(b)
}

/// Runs the four bounded searches of the distance boost, with a custom
/// configuration hook for budget, radius and heuristic.
pub fn prove_boost_with(tune: impl Fn(ProverConfig) -> ProverConfig) -> Result<Vec<Certificate>, ProverError> {
    verify_boost_paths()?;
    boost_paths().iter().map(|p| expand(tune(boost_config(p, true)))).collect()
}

pub fn prove_boost() -> Result<Vec<Certificate>, ProverError> {
    prove_boost_with(|c| c)
}

pub fn prove_forbidden(pattern: PatternId) -> Result<Certificate, ProverError> {
    expand(forbidden_config(pattern))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EdgeVerdict {
    Refuted { nodes: usize },
    Inconclusive(ProverError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShortEdgeReport {
    pub classes: Vec<(Edge, EdgeVerdict)>,
}

impl ShortEdgeReport {
    pub fn all_refuted(&self) -> bool {
        self.classes.iter().all(|(_, v)| matches!(v, EdgeVerdict::Refuted { .. }))
    }
}

/// Edge classes `(0,0)–(i,j)` with `0 ≤ i ≤ j` and `2 < i² + j² ≤ max`,
/// one per orbit under the lattice isometries.
pub fn long_edge_classes(max_norm_sq: i64) -> Vec<Edge> {
    let mut out = Vec::new();
    let mut j = 0i32;
    while (j as i64) * (j as i64) <= max_norm_sq {
        for i in 0..=j {
            let n = (i * i + j * j) as i64;
            if n > 2 && n <= max_norm_sq {
                out.push(Edge::of(0, 0, i, j));
            }
        }
        j += 1;
    }
    out.sort_by_key(|e| (e.norm_sq(), *e));
    out
}

/// Tries to refute each long edge class as a start set.
pub fn corroborate_short_edges_with(
    max_norm_sq: i64,
    tune: impl Fn(ProverConfig) -> ProverConfig,
) -> ShortEdgeReport {
    let classes = long_edge_classes(max_norm_sq)
        .into_iter()
        .map(|e| {
            let cfg = tune(ProverConfig::new(GraphPatch::from_edges([e])));
            let verdict = match expand(cfg) {
                Ok(cert) => EdgeVerdict::Refuted { nodes: cert.root.count() },
                Err(err) => EdgeVerdict::Inconclusive(err),
            };
            (e, verdict)
        })
        .collect();
    ShortEdgeReport { classes }
}

pub fn corroborate_short_edges(max_norm_sq: i64) -> ShortEdgeReport {
    corroborate_short_edges_with(max_norm_sq, |c| c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paths::{classify_pair, CaseTag};

    fn patch(edges: &[(i32, i32, i32, i32)]) -> GraphPatch {
        edges.iter().map(|&(a, b, c, d)| Edge::of(a, b, c, d)).collect()
    }

    #[test]
    fn bound_violation_through_patch_walk() {
        // u → a → b inside S, b one step from v
        let s = patch(&[(0, 0, 1, 0), (1, 0, 1, 1)]);
        let (u, v) = (Point::new(0, 0), Point::new(1, 2));
        let w = detect_bound_violation(&s, u, v, Zr2::from(5)).unwrap();
        assert_eq!(w.head, [Point::new(0, 0), Point::new(1, 0), Point::new(1, 1)]);
        assert_eq!(w.tail, [Point::new(1, 2)]);
        // 2 + (1 + √2) is not below itself
        assert!(detect_bound_violation(&s, u, v, Zr2::new(3, 1)).is_none());
        assert!(detect_bound_violation(&s, u, v, Zr2::new(3, 1) + Zr2::new(0, 1)).is_some());
    }

    #[test]
    fn bound_violation_on_empty_patch() {
        let s = GraphPatch::new();
        let (u, v) = (Point::new(0, 0), Point::new(2, 0));
        // (1 + √2)·2
        assert!(detect_bound_violation(&s, u, v, Zr2::new(2, 2)).is_none());
        assert!(detect_bound_violation(&s, u, v, Zr2::new(1, 1)).is_none());
        let w = detect_bound_violation(&s, u, v, Zr2::new(3, 2)).unwrap();
        assert_eq!((w.head.as_slice(), w.tail.as_slice()), ([u].as_slice(), [v].as_slice()));
        // knight pairs are not close-pair bridged beyond √5
        assert!(detect_bound_violation(&s, u, Point::new(3, 0), Zr2::from(100)).is_none());
    }

    fn saturated() -> GraphPatch {
        // (0,0), (0,1) and (0,-1) all at degree 3
        patch(&[
            (0, 0, -1, 0),
            (0, 0, 0, 1),
            (0, 0, 0, -1),
            (0, 1, -1, 1),
            (0, 1, 0, 2),
            (0, -1, -1, -1),
            (0, -1, 0, -2),
        ])
    }

    #[test]
    fn contradiction_closes_the_node() {
        let s = saturated();
        let pair = ClosePair::new(Point::new(0, 0), Point::new(1, 0)).unwrap();
        assert_eq!(classify_pair(&s, pair).tag(), CaseTag::Contradiction);
        let mut prover = Prover::new(ProverConfig::new(s.clone())).unwrap();
        assert!(matches!(prover.decide(&s), Decision::Leaf(Step::Contradiction { .. })));
        let cert = expand(ProverConfig::new(s)).unwrap();
        assert_eq!(cert.root.count(), 1);
        assert!(crate::cert::check_certificate(&cert).valid());
    }

    #[test]
    fn rotated_pattern_is_found() {
        let quarter = Symmetry::rotation(1);
        let s = crate::lattice::apply_symmetry(&quarter, &h1());
        let mut prover = Prover::new(ProverConfig::new(s.clone()).with_pattern("h1", h1())).unwrap();
        match prover.decide(&s) {
            Decision::Leaf(Step::PatternHit { pattern, transform }) => {
                assert_eq!(pattern, 0);
                assert!(h1().edges().all(|e| s.contains(&transform.apply_edge(e))));
            }
            other => panic!("expected a pattern hit, got {other:?}"),
        }
    }

    #[test]
    fn bound_takes_priority() {
        let s = patch(&[(0, 0, 1, 0), (1, 0, 1, 1)]);
        let bound = BoundConstraint { u: Point::new(0, 0), v: Point::new(1, 2), c: Zr2::from(5) };
        let mut prover = Prover::new(ProverConfig::new(s.clone()).with_bound(bound)).unwrap();
        assert!(matches!(prover.decide(&s), Decision::Leaf(Step::BoundHit { .. })));
    }

    #[test]
    fn open_configurations_exhaust_the_budget() {
        let cfg = ProverConfig::new(patch(&[(0, 0, 1, 0)])).with_budget(300);
        assert_eq!(expand(cfg).unwrap_err(), ProverError::BudgetExceeded { budget: 300 });
    }

    #[test]
    fn config_errors() {
        let crossing = patch(&[(0, 0, 1, 1), (1, 0, 0, 1)]);
        assert!(matches!(Prover::new(ProverConfig::new(crossing)), Err(ProverError::InvalidStart)));
        let bound = BoundConstraint { u: Point::new(0, 0), v: Point::new(1, 2), c: Zr2::new(1, -1) };
        assert!(matches!(
            Prover::new(ProverConfig::new(h1()).with_bound(bound)),
            Err(ProverError::NonPositiveBound)
        ));
        assert_eq!(PatternId::parse("H2").unwrap(), PatternId::H2);
        assert_eq!(PatternId::parse("h1").unwrap().id(), "h1");
        assert!(matches!(PatternId::parse("h3"), Err(ProverError::UnknownPattern(_))));
        assert_eq!(Heuristic::parse("fail-first"), Some(Heuristic::FailFirst));
        assert_eq!(Heuristic::parse("local").map(|h| h.id()), Some("local"));
        assert_eq!(Heuristic::parse("random"), None);
    }

    #[test]
    fn scan_pairs_are_normalized_and_unique() {
        let pairs = scan_pairs(&patch(&[(0, 0, 1, 0)]), 1);
        assert!(pairs.windows(2).all(|w| w[0] < w[1]));
        assert!(pairs.iter().all(|p| *p == p.normalized()));
        assert!(pairs.contains(&ClosePair::new(Point::new(-1, -1), Point::new(1, 0)).unwrap()));
    }

    #[test]
    fn long_edge_orbits() {
        let norms: Vec<i64> = long_edge_classes(25).iter().map(|e| e.norm_sq()).collect();
        assert_eq!(norms, [4, 5, 8, 9, 10, 13, 16, 17, 18, 20, 25, 25]);
        assert!(long_edge_classes(2).is_empty());
    }

    #[test]
    fn boost_paths_match_their_classes() {
        verify_boost_paths().unwrap();
        let lengths: Vec<Zr2> = boost_paths().iter().map(|p| p.length).collect();
        assert_eq!(lengths, [Zr2::new(1, 3), Zr2::new(1, 3), Zr2::new(1, 3), Zr2::from(5)]);
        for p in boost_paths() {
            assert_eq!((p.start(), p.end()), (BOOST_U, BOOST_V));
        }
    }

    #[test]
    fn cache_replays_translated_deductions() {
        let s = saturated();
        let far = s.translate(Point::new(40, -7));
        let idx = PatchIndex::new(&s);
        let idx_far = PatchIndex::new(&far);
        let mut cache = ClassCache::default();
        for pair in scan_pairs(&s, 2) {
            let shifted = ClosePair { p: pair.p + Point::new(40, -7), q: pair.q + Point::new(40, -7) };
            let here = cache.classify(&idx, pair);
            let there = cache.classify(&idx_far, shifted);
            let moved = match here {
                Class::Deduction(p) => Class::Deduction(p.transformed(&Symmetry::translation(Point::new(40, -7)))),
                c => c,
            };
            assert_eq!(moved, there);
        }
        assert!(cache.hits() >= cache.misses());
    }
}
