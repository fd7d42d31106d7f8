mod common;

use common::{arb_plane, plane_from};
use dil3_core::cert::check_certificate;
use dil3_core::lattice::{apply_symmetry, h1, is_valid_partial, PatchIndex};
use dil3_core::paths::{classify_pair, PairCase};
use dil3_core::prover::{expand, scan_pairs, Class, ClassCache, ProverConfig, COUNT_CAP};
use dil3_core::{Edge, GraphPatch, Point, Symmetry};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn uncached(s: &GraphPatch, pair: dil3_core::paths::ClosePair) -> Class {
    match classify_pair(s, pair) {
        PairCase::Satisfaction => Class::Satisfied,
        PairCase::Contradiction => Class::Contradiction,
        PairCase::Deduction(p) => Class::Deduction(p),
        PairCase::Exploration(v) => Class::Exploration(v.len().min(COUNT_CAP)),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn cache_agrees_with_direct_classification(patches in prop::collection::vec(arb_plane(3, 30), 1..6)) {
        // one cache across several patches so later ones hit earlier entries
        let mut cache = ClassCache::default();
        for s in &patches {
            let idx = PatchIndex::new(s);
            for pair in scan_pairs(s, 1) {
                prop_assert_eq!(cache.classify(&idx, pair), uncached(s, pair), "{}", pair);
            }
        }
    }
}

#[test]
fn cache_is_bypassed_with_long_edges() {
    let s = GraphPatch::from_edges([Edge::of(0, 0, 1, 2), Edge::of(3, 0, 3, 1)]);
    let idx = PatchIndex::new(&s);
    let mut cache = ClassCache::default();
    for pair in scan_pairs(&s, 1) {
        assert_eq!(cache.classify(&idx, pair), uncached(&s, pair));
    }
    assert!(cache.is_empty());
}

/// Any locally optimal graph containing a superset of `H1` contains `H1`,
/// so supersets are refuted too.
#[test]
fn supersets_of_h1_are_refuted() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let mut tried = 0;
    while tried < 6 {
        let mut extra = Vec::new();
        for _ in 0..rng.gen_range(1..4) {
            let p = Point::new(rng.gen_range(-2..=2), rng.gen_range(-2..=2));
            let (dx, dy) = common::STEPS[rng.gen_range(0..8)];
            extra.push(Edge::new(p, p + Point::new(dx, dy)).unwrap());
        }
        let s = h1().union(&plane_from(extra));
        if !is_valid_partial(&s) || s == h1() {
            continue;
        }
        tried += 1;
        let cert = expand(ProverConfig::new(s.clone()).with_budget(200_000))
            .unwrap_or_else(|e| panic!("superset {s:?} not refuted: {e}"));
        assert!(check_certificate(&cert).valid());
    }
}

#[test]
fn images_of_h1_are_refuted() {
    for t in [Symmetry::new(3, Point::new(4, -1)).unwrap(), Symmetry::new(6, Point::new(-2, 7)).unwrap()] {
        let cert = expand(ProverConfig::new(apply_symmetry(&t, &h1()))).unwrap();
        let report = check_certificate(&cert);
        assert!(report.valid());
    }
}

#[test]
fn search_is_deterministic() {
    let a = expand(ProverConfig::new(h1())).unwrap();
    let b = expand(ProverConfig::new(h1())).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.heuristic, "local");
}
