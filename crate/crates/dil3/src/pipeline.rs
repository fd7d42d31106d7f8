//! The verification stages and their reports. The CLI prints these; the
//! JSON form carries every number the text form shows.

use std::fmt;
use std::path::PathBuf;

use dil3_core::cert::{check_certificate, Certificate};
use dil3_core::dilation::{
    induction_inequality_certificate, lemma24_bounded_check, lower_bound_tightness, verify_periodic_local_optimality,
    PeriodicSpec,
};
use dil3_core::paths::enumerate_shortest_candidates;
use dil3_core::prover::{
    boost_config, boost_paths, forbidden_config, long_edge_classes, verify_boost_paths, Heuristic, PatternId,
    ProverConfig, BOOST_U, BOOST_V, DEFAULT_BUDGET, DEFAULT_SCAN_RADIUS,
};
use dil3_core::{GraphPatch, Zr2};
use serde::Serialize;

use crate::certfile;
use crate::data::builtin_periodic;
use crate::driver::{self, RunSummary};

#[derive(Clone, Debug)]
pub struct Options {
    pub budget: u64,
    pub scan_radius: i32,
    pub heuristic: Heuristic,
    pub threads: usize,
    pub emit_cert: Option<PathBuf>,
    /// Print node telemetry to stderr.
    pub progress: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            budget: DEFAULT_BUDGET,
            scan_radius: DEFAULT_SCAN_RADIUS,
            heuristic: Heuristic::default(),
            threads: 1,
            emit_cert: None,
            progress: false,
        }
    }
}

impl Options {
    pub fn apply(&self, cfg: ProverConfig) -> ProverConfig {
        cfg.with_budget(self.budget).with_scan_radius(self.scan_radius).with_heuristic(self.heuristic)
    }
}

fn zr2(z: Zr2) -> [i64; 2] {
    [z.a, z.b]
}

#[derive(Clone, Debug, Serialize)]
pub struct CoefficientReport {
    pub term: &'static str,
    pub value: [i64; 2],
    pub approx: f64,
    pub nonnegative: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Lemma24Report {
    pub scanned: usize,
    pub all_hold: bool,
    /// Targets where the bound holds with equality.
    pub tight: Vec<[i32; 2]>,
    pub min_slack_approx: f64,
    pub gap: [i64; 2],
    pub linear_nonnegative: bool,
    pub coefficients: Vec<CoefficientReport>,
    pub passed: bool,
}

pub fn lemma24() -> Lemma24Report {
    let check = lemma24_bounded_check();
    let cert = induction_inequality_certificate();
    let tight = check.entries.iter().filter(|e| e.tight).map(|e| [e.q.x, e.q.y]).collect();
    let min_slack_approx =
        check.entries.iter().filter(|e| !e.tight).map(|e| e.margin_approx()).fold(f64::INFINITY, f64::min);
    let coefficients: Vec<CoefficientReport> = cert
        .coefficients()
        .iter()
        .map(|(term, c)| CoefficientReport { term, value: zr2(*c), approx: c.approx(), nonnegative: c.is_nonnegative() })
        .collect();
    let passed = check.passed() && cert.passed();
    Lemma24Report {
        scanned: check.entries.len(),
        all_hold: check.passed(),
        tight,
        min_slack_approx,
        gap: zr2(cert.gap),
        linear_nonnegative: cert.linear.coefficients_nonnegative(),
        coefficients,
        passed,
    }
}

impl fmt::Display for Lemma24Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "knight graph bound: {} targets with 0 < |q|^2 < 50, all hold: {}", self.scanned, self.all_hold)?;
        writeln!(f, "  tight targets: {}, smallest slack elsewhere ~ {:.6}", self.tight.len(), self.min_slack_approx)?;
        writeln!(f, "  gap {}, linear part nonnegative: {}", Zr2::new(self.gap[0], self.gap[1]), self.linear_nonnegative)?;
        for c in &self.coefficients {
            writeln!(
                f,
                "  coefficient {:>3}: {:>12} ~ {:>9.5}  {}",
                c.term,
                Zr2::new(c.value[0], c.value[1]).to_string(),
                c.approx,
                if c.nonnegative { "ok" } else { "NEGATIVE" }
            )?;
        }
        write!(f, "  result: {}", if self.passed { "pass" } else { "FAIL" })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassReport {
    pub path: String,
    pub length: [i64; 2],
    pub length_approx: f64,
    pub members: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ShortestReport {
    pub from: [i32; 2],
    pub to: [i32; 2],
    pub classes: Vec<ClassReport>,
    pub matches_stored: bool,
    pub passed: bool,
}

pub fn enumerate_shortest() -> ShortestReport {
    let classes = enumerate_shortest_candidates(BOOST_U, BOOST_V).expect("knight pair");
    let matches_stored = verify_boost_paths().is_ok();
    ShortestReport {
        from: [BOOST_U.x, BOOST_U.y],
        to: [BOOST_V.x, BOOST_V.y],
        classes: classes
            .iter()
            .map(|c| ClassReport {
                path: c.representative.to_string(),
                length: zr2(c.representative.length),
                length_approx: c.representative.length.approx(),
                members: c.members,
            })
            .collect(),
        matches_stored,
        passed: matches_stored && classes.len() == 4,
    }
}

impl fmt::Display for ShortestReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "candidate shortest paths (0,0)->(1,2) longer than 3+√2: {} classes", self.classes.len())?;
        for c in &self.classes {
            let len = Zr2::new(c.length[0], c.length[1]);
            writeln!(f, "  {}  length {} ~ {:.5}  ({} members)", c.path, len, c.length_approx, c.members)?;
        }
        write!(f, "  matches stored paths: {}", self.matches_stored)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ProofReport {
    pub target: String,
    pub refuted: bool,
    pub error: Option<String>,
    pub nodes: u64,
    pub max_depth: u64,
    pub wall_ms: u128,
    pub certificate_nodes: Option<usize>,
    pub replay_valid: Option<bool>,
    pub replay_failures: usize,
    pub cert_file: Option<String>,
}

impl ProofReport {
    pub fn passed(&self) -> bool {
        self.refuted && self.replay_valid == Some(true)
    }
}

impl fmt::Display for ProofReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.error {
            None => write!(
                f,
                "{}: refuted, {} nodes, depth {}, {} ms, replay {}",
                self.target,
                self.nodes,
                self.max_depth,
                self.wall_ms,
                if self.replay_valid == Some(true) { "valid".to_string() } else { format!("INVALID ({} failures)", self.replay_failures) }
            )?,
            Some(e) => write!(f, "{}: {} ({} nodes, {} ms)", self.target, e, self.nodes, self.wall_ms)?,
        }
        if let Some(p) = &self.cert_file {
            write!(f, ", wrote {p}")?;
        }
        Ok(())
    }
}

/// Runs one search, replays its certificate and optionally writes it.
pub fn run_proof(target: &str, cfg: ProverConfig, opts: &Options) -> (ProofReport, Option<Certificate>) {
    let cfg = opts.apply(cfg);
    let label = target.to_string();
    let telemetry = move |n: u64, d: u32| eprintln!("[{label}] {n} nodes, depth {d}");
    let progress: Option<&(dyn Fn(u64, u32) + Sync)> = if opts.progress { Some(&telemetry) } else { None };
    let (result, RunSummary { nodes, max_depth, wall_ms }) = driver::prove(cfg, opts.threads, progress);
    let mut report = ProofReport {
        target: target.to_string(),
        refuted: false,
        error: None,
        nodes,
        max_depth,
        wall_ms,
        certificate_nodes: None,
        replay_valid: None,
        replay_failures: 0,
        cert_file: None,
    };
    match result {
        Ok(cert) => {
            let replay = check_certificate(&cert);
            report.refuted = true;
            report.certificate_nodes = Some(cert.root.count());
            report.replay_valid = Some(replay.valid());
            report.replay_failures = replay.failures.len();
            if let Some(dir) = &opts.emit_cert {
                let path = dir.join(format!("{target}.cert"));
                match std::fs::create_dir_all(dir).and_then(|_| std::fs::write(&path, certfile::encode(&cert))) {
                    Ok(()) => report.cert_file = Some(path.display().to_string()),
                    Err(e) => report.error = Some(format!("could not write {}: {e}", path.display())),
                }
            }
            (report, Some(cert))
        }
        Err(e) => {
            report.error = Some(e.to_string());
            (report, None)
        }
    }
}

pub fn prove_forbidden(pattern: PatternId, opts: &Options) -> (ProofReport, Option<Certificate>) {
    run_proof(&format!("forbidden-{}", pattern.id()), forbidden_config(pattern), opts)
}

/// The four bounded searches; fails before searching if the stored paths
/// drifted from a fresh enumeration.
pub fn prove_boost(opts: &Options) -> Result<Vec<(ProofReport, Option<Certificate>)>, String> {
    verify_boost_paths().map_err(|e| e.to_string())?;
    Ok(boost_paths()
        .iter()
        .enumerate()
        .map(|(i, p)| run_proof(&format!("boost-p{}", i + 1), boost_config(p, true), opts))
        .collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct PeriodicStageReport {
    pub name: String,
    pub determinant: i64,
    pub domain_size: usize,
    pub pairs_checked: usize,
    pub assignments_checked: usize,
    pub locally_optimal: bool,
    pub tight_everywhere: bool,
    /// A close pair over its budget.
    pub failure: Option<String>,
    /// The spec itself is malformed (dependent periods, degree, crossings).
    pub spec_error: Option<String>,
}

impl PeriodicStageReport {
    pub fn passed(&self) -> bool {
        self.locally_optimal && self.tight_everywhere
    }
}

impl fmt::Display for PeriodicStageReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: det {}, {} domain vertices, {} pairs, {} assignments, locally optimal: {}, tight at every vertex: {}",
            self.name,
            self.determinant,
            self.domain_size,
            self.pairs_checked,
            self.assignments_checked,
            self.locally_optimal,
            self.tight_everywhere
        )?;
        if let Some(e) = &self.spec_error {
            write!(f, " (invalid spec: {e})")?;
        }
        if let Some(e) = &self.failure {
            write!(f, " ({e})")?;
        }
        Ok(())
    }
}

pub fn verify_periodic(name: &str, spec: &PeriodicSpec) -> PeriodicStageReport {
    let mut report = PeriodicStageReport {
        name: name.to_string(),
        determinant: spec.determinant(),
        domain_size: 0,
        pairs_checked: 0,
        assignments_checked: 0,
        locally_optimal: false,
        tight_everywhere: false,
        failure: None,
        spec_error: None,
    };
    match verify_periodic_local_optimality(spec) {
        Ok(r) => {
            report.domain_size = r.domain_size;
            report.pairs_checked = r.pairs_checked;
            report.assignments_checked = r.assignments_checked;
            report.locally_optimal = r.passed();
            if let Some(w) = r.failure {
                report.failure = Some(format!("pair {} {} exceeds its budget", w.p, w.q));
            }
        }
        Err(e) => {
            report.spec_error = Some(e.to_string());
            return report;
        }
    }
    if let Ok(t) = lower_bound_tightness(spec) {
        report.tight_everywhere = t.passed();
    }
    report
}

#[derive(Clone, Debug, Serialize)]
pub struct CorroborationReport {
    pub max_norm_sq: i64,
    pub classes: Vec<ProofReport>,
}

impl CorroborationReport {
    pub fn passed(&self) -> bool {
        self.classes.iter().all(|c| c.passed())
    }
}

pub fn corroborate_short_edges(max_norm_sq: i64, opts: &Options) -> CorroborationReport {
    let classes = long_edge_classes(max_norm_sq)
        .into_iter()
        .map(|e| {
            let [a, b] = e.endpoints();
            let name = format!("edge_{}_{}_{}_{}", a.x, a.y, b.x, b.y);
            run_proof(&name, ProverConfig::new(GraphPatch::from_edges([e])), opts).0
        })
        .collect();
    CorroborationReport { max_norm_sq, classes }
}

#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub lemma24: Option<Lemma24Report>,
    pub shortest: Option<ShortestReport>,
    pub forbidden: Vec<ProofReport>,
    pub boost: Vec<ProofReport>,
    pub periodic: Vec<PeriodicStageReport>,
    pub failed_stage: Option<String>,
    pub conclusion: String,
    pub passed: bool,
}

/// Everything, in order, stopping at the first failed stage. The
/// certificates come back in run order.
pub fn run_all(opts: &Options) -> (Summary, Vec<Certificate>) {
    let mut certs = Vec::new();
    let mut summary = Summary {
        lemma24: None,
        shortest: None,
        forbidden: Vec::new(),
        boost: Vec::new(),
        periodic: Vec::new(),
        failed_stage: None,
        conclusion: String::new(),
        passed: false,
    };
    let fail = |mut s: Summary, stage: &str| {
        s.failed_stage = Some(stage.to_string());
        s.conclusion = format!("stage {stage} failed; nothing established");
        s
    };

    let l = lemma24();
    let ok = l.passed;
    summary.lemma24 = Some(l);
    if !ok {
        return (fail(summary, "lemma24"), certs);
    }

    let sh = enumerate_shortest();
    let ok = sh.passed;
    summary.shortest = Some(sh);
    if !ok {
        return (fail(summary, "enumerate-shortest"), certs);
    }

    for pattern in [PatternId::H1, PatternId::H2] {
        let (r, c) = prove_forbidden(pattern, opts);
        let ok = r.passed();
        summary.forbidden.push(r);
        certs.extend(c);
        if !ok {
            let stage = format!("prove forbidden {}", pattern.id());
            return (fail(summary, &stage), certs);
        }
    }

    match prove_boost(opts) {
        Err(e) => {
            let mut s = fail(summary, "prove boost");
            s.conclusion = e;
            return (s, certs);
        }
        Ok(runs) => {
            let ok = runs.iter().all(|(r, _)| r.passed());
            for (r, c) in runs {
                summary.boost.push(r);
                certs.extend(c);
            }
            if !ok {
                return (fail(summary, "prove boost"), certs);
            }
        }
    }

    for (name, spec) in builtin_periodic() {
        let r = verify_periodic(name, &spec);
        let ok = r.passed();
        summary.periodic.push(r);
        if !ok {
            let stage = format!("verify-periodic {name}");
            return (fail(summary, &stage), certs);
        }
    }

    summary.passed = true;
    summary.conclusion = "every locally optimal graph is optimal; the shipped periodic graphs are locally optimal, \
                          so they have dilation exactly 1+√2 and the degree-3 dilation of Z^2 is 1+√2"
        .to_string();
    (summary, certs)
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(l) = &self.lemma24 {
            writeln!(f, "{l}")?;
        }
        if let Some(s) = &self.shortest {
            writeln!(f, "{s}")?;
        }
        for r in self.forbidden.iter().chain(&self.boost) {
            writeln!(f, "{r}")?;
        }
        for r in &self.periodic {
            writeln!(f, "{r}")?;
        }
        write!(f, "{}: {}", if self.passed { "PASS" } else { "FAIL" }, self.conclusion)
    }
}
