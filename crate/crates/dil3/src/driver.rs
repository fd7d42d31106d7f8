//! Multi-threaded proof search. Shallow branch points fan out over a rayon
//! pool and each task runs its own [`Prover`]; children are assembled in
//! canonical path order, so the certificate does not depend on scheduling.

use std::time::{Duration, Instant};

use dil3_core::cert::{Certificate, ProofNode, Step};
use dil3_core::prover::{extend, Decision, Prover, ProverConfig, ProverError, SearchContext};
use dil3_core::{Edge, GraphPatch};
use rayon::prelude::*;
use serde::Serialize;

/// Branch points at this depth or deeper are explored sequentially.
pub const SPLIT_DEPTH: u32 = 6;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunSummary {
    pub nodes: u64,
    pub max_depth: u64,
    pub wall_ms: u128,
}

fn node(
    cfg: &ProverConfig,
    s: &GraphPatch,
    added: Vec<Edge>,
    depth: u32,
    ctx: &SearchContext<'_>,
) -> Result<ProofNode, ProverError> {
    let mut prover = Prover::new(cfg.clone())?;
    if depth >= SPLIT_DEPTH {
        return prover.expand_subtree(s, added, depth, ctx);
    }
    ctx.tick(depth)?;
    let step = match prover.decide(s) {
        Decision::Leaf(step) => step,
        Decision::Stalled => return Err(ProverError::Stalled { depth }),
        Decision::Deduce { pair, path, added: delta } => {
            let child = node(cfg, &extend(s, &delta), delta, depth + 1, ctx)?;
            Step::Deduction { pair, path, child: Box::new(child) }
        }
        Decision::Branch { pair, options } => {
            let children = options
                .into_par_iter()
                .map(|(path, delta)| node(cfg, &extend(s, &delta), delta, depth + 1, ctx).map(|n| (path, n)))
                .collect::<Result<Vec<_>, _>>()?;
            Step::Branch { pair, children }
        }
    };
    Ok(ProofNode { added, step })
}

/// Runs `config` on `threads` threads (1 = plain sequential search).
/// `progress` receives `(nodes, depth)` at the telemetry interval.
pub fn prove(
    config: ProverConfig,
    threads: usize,
    progress: Option<&(dyn Fn(u64, u32) + Sync)>,
) -> (Result<Certificate, ProverError>, RunSummary) {
    let started = Instant::now();
    let ctx = SearchContext::new(config.budget, progress);
    let result = if threads <= 1 {
        Prover::new(config).and_then(|mut p| p.expand(&ctx))
    } else {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().expect("thread pool");
        pool.install(|| {
            let prover = Prover::new(config.clone())?;
            let root = node(&config, &config.start, Vec::new(), 0, &ctx)?;
            Ok(prover.certificate(root))
        })
    };
    let summary = RunSummary { nodes: ctx.nodes(), max_depth: ctx.max_depth(), wall_ms: elapsed_ms(started.elapsed()) };
    (result, summary)
}

fn elapsed_ms(d: Duration) -> u128 {
    d.as_millis()
}
