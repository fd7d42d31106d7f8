use dil3::certfile::encode;
use dil3::driver::prove;
use dil3_core::prover::{boost_config, boost_paths, forbidden_config, PatternId, ProverConfig, ProverError};
use dil3_core::{Edge, GraphPatch};

fn at_threads(cfg: &ProverConfig, threads: usize) -> (String, u64) {
    let (cert, summary) = prove(cfg.clone(), threads, None);
    (encode(&cert.unwrap()), summary.nodes)
}

#[test]
fn certificates_do_not_depend_on_thread_count() {
    let configs = [
        forbidden_config(PatternId::H1),
        forbidden_config(PatternId::H2),
        boost_config(&boost_paths()[1], true),
    ];
    for cfg in &configs {
        let (one, nodes) = at_threads(cfg, 1);
        for threads in [2, 8] {
            let (many, n) = at_threads(cfg, threads);
            assert!(one == many, "certificate differs at {threads} threads");
            assert_eq!(n, nodes);
        }
    }
}

#[test]
fn budget_is_shared_across_threads() {
    let cfg = ProverConfig::new(GraphPatch::from_edges([Edge::of(0, 0, 1, 0)])).with_budget(500);
    for threads in [1, 4] {
        let (result, summary) = prove(cfg.clone(), threads, None);
        assert_eq!(result.unwrap_err(), ProverError::BudgetExceeded { budget: 500 });
        assert!(summary.nodes > 500);
    }
}

#[test]
fn progress_reports_at_the_interval() {
    use std::sync::atomic::{AtomicU64, Ordering};
    let calls = AtomicU64::new(0);
    let hook = |n: u64, _d: u32| {
        assert_eq!(n % 10_000, 0);
        calls.fetch_add(1, Ordering::Relaxed);
    };
    let cfg = ProverConfig::new(GraphPatch::from_edges([Edge::of(0, 0, 1, 0)])).with_budget(10_000);
    let _ = prove(cfg, 1, Some(&hook));
    assert_eq!(calls.load(Ordering::Relaxed), 1);
}
