//! Seeded campaigns over the checkers, aggregated into JSON-serializable
//! reports.
//!
//! Instances are split into fixed chunks, each drawing from its own stream of
//! the campaign seed; chunks may run in parallel but are merged in order, so
//! a report depends only on its configuration.

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use super::{
    check_component_density, check_degree_bound, check_density_control, check_pair_inequality,
    check_sparse_component_density, check_sparse_pair_inequality, verdict_bounds, BoundVerdict,
    CheckOutcome, HostSpec, VerdictContext, MIN_DEGREE_DENSE, MIN_DEGREE_THREE_COLOR, PROVEN,
};
use crate::adversary::fuzz::{fuzz_coloring, FuzzKind};
use crate::adversary::{anneal, colorings_with_first_fixed, InitStrategy, SearchParams};
use crate::construct::gyarfas_coloring;
use crate::error::{Error, Result};
use crate::graph::{
    intersect_multipartite, materialize_multipartite, write_colored, EdgeColoring, Graph,
};
use crate::random::{
    min_degree_graph, random_part_structure, random_subset, sample_gnp, RngSeed, SeededRng,
};
use crate::ratio::{fmt, ratio, to_f64, Rational};

pub const SCHEMA_VERSION: u32 = 1;

const CHUNKS: u64 = 64;

/// Aggregate over all instances of one check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckSummary {
    pub check: String,
    pub instances: u64,
    pub violations: u64,
    pub vacuous: u64,
    /// fuzzed inputs discarded because they missed the check's precondition
    pub rejected: u64,
    pub min_margin: Option<String>,
    pub first_failure: Option<Value>,
}

impl CheckSummary {
    pub fn pass(&self) -> bool {
        self.violations == 0
    }
}

/// A violating colored graph in the text file format.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reproduction {
    pub check: String,
    pub file: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub schema_version: u32,
    pub suite: &'static str,
    pub config: Value,
    pub checks: Vec<CheckSummary>,
    pub pass: bool,
    #[serde(skip)]
    pub reproductions: Vec<Reproduction>,
}

impl SuiteReport {
    fn new(
        suite: &'static str,
        config: &impl Serialize,
        checks: Vec<CheckSummary>,
        reproductions: Vec<Reproduction>,
    ) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            suite,
            config: serde_json::to_value(config).expect("config serializes"),
            pass: checks.iter().all(CheckSummary::pass),
            checks,
            reproductions,
        }
    }

    pub fn first_failure(&self) -> Option<&CheckSummary> {
        self.checks.iter().find(|c| !c.pass())
    }
}

#[derive(Debug, Default)]
struct Tally {
    instances: u64,
    violations: u64,
    vacuous: u64,
    rejected: u64,
    min_margin: Option<Rational>,
    first_failure: Option<Value>,
    reproduction: Option<String>,
}

impl Tally {
    fn record(
        &mut self,
        holds: bool,
        vacuous: bool,
        margin: Rational,
        detail: impl FnOnce() -> Value,
    ) {
        self.instances += 1;
        self.vacuous += vacuous as u64;
        if !vacuous && self.min_margin.is_none_or(|m| margin < m) {
            self.min_margin = Some(margin);
        }
        if !holds {
            self.violations += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(detail());
            }
        }
    }

    fn outcome(&mut self, o: &CheckOutcome) {
        self.record(o.holds, o.vacuous, o.margin, || {
            serde_json::to_value(o).expect("outcome serializes")
        });
    }

    /// Records a bound verdict, keyed on the margin of threshold `key`.
    fn verdict(&mut self, v: &BoundVerdict, key: &str, g: &Graph, c: &EdgeColoring) {
        let t = &v.thresholds[key];
        let before = self.violations;
        self.record(v.pass(), false, t.measured - t.required, || {
            serde_json::to_value(v).expect("verdict serializes")
        });
        if self.violations > before && self.reproduction.is_none() {
            let mut buf = Vec::new();
            write_colored(&mut buf, g, c).expect("write to memory");
            self.reproduction = Some(String::from_utf8(buf).expect("ascii"));
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.instances += other.instances;
        self.violations += other.violations;
        self.vacuous += other.vacuous;
        self.rejected += other.rejected;
        self.min_margin = match (self.min_margin, other.min_margin) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        self.first_failure = self.first_failure.or(other.first_failure);
        self.reproduction = self.reproduction.or(other.reproduction);
        self
    }

    fn finish(
        self,
        check: impl Into<String>,
        reproductions: &mut Vec<Reproduction>,
    ) -> CheckSummary {
        let check = check.into();
        if let Some(file) = self.reproduction {
            reproductions.push(Reproduction {
                check: check.clone(),
                file,
            });
        }
        CheckSummary {
            check,
            instances: self.instances,
            violations: self.violations,
            vacuous: self.vacuous,
            rejected: self.rejected,
            min_margin: self.min_margin.map(|m| fmt(&m)),
            first_failure: self.first_failure,
        }
    }
}

/// Runs `total` instances of `one` split over [`CHUNKS`] streams starting at
/// `stream_base`.
fn chunked<F>(seed: u64, stream_base: u64, total: u64, one: F) -> Result<Tally>
where
    F: Fn(&mut SeededRng, &mut Tally) -> Result<()> + Sync,
{
    let chunks = CHUNKS.min(total.max(1));
    let tallies: Vec<Tally> = (0..chunks)
        .into_par_iter()
        .map(|j| {
            let mut rng = RngSeed::new(seed).with_stream(stream_base + j).rng();
            let mut tally = Tally::default();
            let count = total / chunks + u64::from(j < total % chunks);
            for _ in 0..count {
                one(&mut rng, &mut tally)?;
            }
            Ok(tally)
        })
        .collect::<Result<_>>()?;
    Ok(tallies.into_iter().fold(Tally::default(), Tally::merge))
}

/// Retries `attempt` until it produces an outcome, counting precondition
/// misses as rejections.
fn until_valid(tally: &mut Tally, mut attempt: impl FnMut() -> Result<CheckOutcome>) -> Result<()> {
    const MAX_ATTEMPTS: u32 = 10_000;
    for _ in 0..MAX_ATTEMPTS {
        match attempt() {
            Ok(o) => {
                tally.outcome(&o);
                return Ok(());
            }
            Err(
                Error::PreconditionViolated(_)
                | Error::DensityPreconditionViolated { .. }
                | Error::EmptySet,
            ) => {
                tally.rejected += 1;
            }
            Err(e) => return Err(e),
        }
    }
    Err(Error::Domain(format!(
        "no valid instance after {MAX_ATTEMPTS} attempts"
    )))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeterministicConfig {
    pub seed: u64,
    pub pair_instances: u64,
    pub density_instances: u64,
    pub max_n: usize,
}

impl Default for DeterministicConfig {
    fn default() -> Self {
        Self {
            seed: 1,
            pair_instances: 100_000,
            density_instances: 10_000,
            max_n: 60,
        }
    }
}

/// Exact inequalities for complete multipartite graphs on fuzzed partitions.
pub fn deterministic_suite(cfg: &DeterministicConfig) -> Result<SuiteReport> {
    if cfg.max_n < 2 {
        return Err(Error::Domain(format!(
            "max_n must be at least 2, got {}",
            cfg.max_n
        )));
    }
    let pair = chunked(cfg.seed, 0, cfg.pair_instances, |rng, tally| {
        let n = rng.gen_range(2..=cfg.max_n);
        let parts = random_part_structure(n, rng.gen_range(2..=n), rng)?;
        let s = random_subset(n, rng.gen(), rng);
        let t = if rng.gen_bool(0.2) {
            s.clone()
        } else {
            random_subset(n, rng.gen(), rng)
        };
        tally.outcome(&check_pair_inequality(&parts, &s, &t)?);
        Ok(())
    })?;
    let density = chunked(cfg.seed, CHUNKS, cfg.density_instances, |rng, tally| {
        let n = rng.gen_range(2..=cfg.max_n);
        let parts = random_part_structure(n, rng.gen_range(2..=n), rng)?;
        let m = materialize_multipartite(&parts)?;
        let q: f64 = rng.gen();
        let region: Vec<bool> = if rng.gen_bool(0.5) {
            let density = rng.gen();
            (0..n).map(|_| rng.gen_bool(density)).collect()
        } else {
            vec![true; n]
        };
        let h = m.filter_edges(|_, (u, v)| region[u] && region[v] && rng.gen::<f64>() < q);
        tally.outcome(&check_component_density(&parts, &h)?);
        Ok(())
    })?;
    let mut repro = Vec::new();
    let checks = vec![
        pair.finish("pair_inequality", &mut repro),
        density.finish("component_density", &mut repro),
    ];
    Ok(SuiteReport::new("deterministic", cfg, checks, repro))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SparseConfig {
    /// seed of the fuzzed instances
    pub seed: u64,
    /// seeds of the host graphs `G(n, p)`
    pub graph_seeds: Vec<u64>,
    pub n: usize,
    #[serde(serialize_with = "crate::ratio::serialize")]
    pub p: Rational,
    pub instances: u64,
    #[serde(serialize_with = "crate::ratio::serialize")]
    pub density_eps: Rational,
    #[serde(serialize_with = "crate::ratio::serialize")]
    pub degree_eps: Rational,
    #[serde(serialize_with = "crate::ratio::serialize")]
    pub c0: Rational,
    #[serde(serialize_with = "crate::ratio::serialize")]
    pub pair_eps: Rational,
    #[serde(serialize_with = "crate::ratio::serialize")]
    pub c: Rational,
    #[serde(serialize_with = "crate::ratio::serialize")]
    pub component_eps: Rational,
    #[serde(serialize_with = "crate::ratio::serialize")]
    pub c1: Rational,
    #[serde(serialize_with = "crate::ratio::serialize")]
    pub c2: Rational,
}

impl Default for SparseConfig {
    fn default() -> Self {
        Self {
            seed: 1,
            graph_seeds: vec![1, 2, 3],
            n: 500,
            p: ratio(3, 10),
            instances: 100,
            density_eps: ratio(1, 5),
            degree_eps: ratio(3, 10),
            c0: ratio(1, 5),
            pair_eps: ratio(1, 2),
            c: ratio(1, 20),
            component_eps: ratio(1, 2),
            c1: ratio(1, 5),
            c2: ratio(1, 5),
        }
    }
}

/// The four random-graph checks on `G(n, p)` for each graph seed.
pub fn sparse_suite(cfg: &SparseConfig) -> Result<SuiteReport> {
    let n = cfg.n;
    if n < 4 {
        return Err(Error::Domain(format!("sparse suite needs n >= 4, got {n}")));
    }
    let p = cfg.p;
    let pf = to_f64(&p);
    let mut repro = Vec::new();
    let mut checks = Vec::new();
    for (gi, &gs) in cfg.graph_seeds.iter().enumerate() {
        let g = sample_gnp(n, pf, RngSeed::new(gs));
        let base = 4 * CHUNKS * gi as u64;
        let density = chunked(cfg.seed, base, cfg.instances, |rng, tally| {
            until_valid(tally, || {
                let spec = if rng.gen_bool(0.5) {
                    HostSpec::Clique(random_subset(n, rng.gen_range(0.4..1.0), rng))
                } else {
                    HostSpec::Multipartite(random_part_structure(n, rng.gen_range(2..=12), rng)?)
                };
                check_density_control(&g, &spec, p, cfg.density_eps)
            })
        })?;
        let degree = chunked(cfg.seed, base + CHUNKS, cfg.instances, |rng, tally| {
            until_valid(tally, || {
                let s = if rng.gen_bool(0.25) {
                    let v = rng.gen_range(0..n);
                    let mut s = g.neighbors(v).to_vec();
                    s.push(v);
                    s
                } else {
                    random_subset(n, rng.gen_range(0.02..1.0), rng)
                };
                check_degree_bound(&g, &s, p, cfg.degree_eps, cfg.c0)
            })
        })?;
        let pair = chunked(cfg.seed, base + 2 * CHUNKS, cfg.instances, |rng, tally| {
            until_valid(tally, || {
                let parts = random_part_structure(n, rng.gen_range(2..=10), rng)?;
                let s = random_subset(n, rng.gen_range(0.2..1.0), rng);
                let t = random_subset(n, rng.gen_range(0.2..1.0), rng);
                check_sparse_pair_inequality(&g, &parts, &s, &t, p, cfg.pair_eps, cfg.c)
            })
        })?;
        let component = chunked(cfg.seed, base + 3 * CHUNKS, cfg.instances, |rng, tally| {
            until_valid(tally, || {
                let parts = random_part_structure(n, rng.gen_range(2..=10), rng)?;
                let gp = intersect_multipartite(&g, &parts)?;
                let r = rng.gen_range(2..=4);
                let kind = FuzzKind::ALL[rng.gen_range(0..FuzzKind::ALL.len())];
                let coloring = fuzz_coloring(&gp, r, kind, rng);
                let counts = coloring.color_counts();
                let color = rng.gen_range(1..=r as u8);
                let h = gp.filter_edges(|e, _| coloring.color(e) == color);
                if counts[color as usize - 1] == 0 {
                    return Err(Error::EmptySet);
                }
                check_sparse_component_density(&g, &parts, &h, cfg.component_eps, cfg.c1, cfg.c2)
            })
        })?;
        for (name, t) in [
            ("density_control", density),
            ("degree_bound", degree),
            ("sparse_pair_inequality", pair),
            ("sparse_component_density", component),
        ] {
            checks.push(t.finish(format!("{name}/graph_seed={gs}"), &mut repro));
        }
    }
    Ok(SuiteReport::new("sparse", cfg, checks, repro))
}

/// Minimum-degree host `min_degree_graph(n, beta)` colored with `r` colors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinDegreeCase {
    pub n: usize,
    #[serde(serialize_with = "crate::ratio::serialize")]
    pub beta: Rational,
    pub r: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundsConfig {
    pub seed: u64,
    /// every 2-coloring of `K_exhaustive_n` with the first edge fixed
    pub exhaustive_n: Option<usize>,
    pub fuzz_n: usize,
    pub fuzz_colors: Vec<usize>,
    /// fuzzed colorings per color count
    pub fuzz_instances: u64,
    pub anneal_iterations: u64,
    pub anneal_restarts: u64,
    pub min_degree: Vec<MinDegreeCase>,
    pub min_degree_fuzz: u64,
    pub min_degree_anneals: u64,
    pub min_degree_iterations: u64,
}

impl Default for BoundsConfig {
    fn default() -> Self {
        Self {
            seed: 1,
            exhaustive_n: Some(5),
            fuzz_n: 12,
            fuzz_colors: vec![2, 3, 4],
            fuzz_instances: 100_000,
            anneal_iterations: 2_000,
            anneal_restarts: 4,
            min_degree: vec![
                MinDegreeCase {
                    n: 300,
                    beta: ratio(1, 25),
                    r: 3,
                },
                MinDegreeCase {
                    n: 300,
                    beta: ratio(1, 10),
                    r: 4,
                },
            ],
            min_degree_fuzz: 1_000,
            min_degree_anneals: 10,
            min_degree_iterations: 10_000,
        }
    }
}

fn random_kind(rng: &mut SeededRng) -> FuzzKind {
    FuzzKind::ALL[rng.gen_range(0..FuzzKind::ALL.len())]
}

/// Edge-fraction and minimum-degree verdicts on exhaustive, fuzzed and
/// annealed colorings.
pub fn bounds_suite(cfg: &BoundsConfig) -> Result<SuiteReport> {
    let mut repro = Vec::new();
    let mut checks = Vec::new();
    let ctx = VerdictContext::default();

    if let Some(n) = cfg.exhaustive_n {
        let kn = Graph::complete(n);
        let mut exhaustive = Tally::default();
        for c in colorings_with_first_fixed(kn.num_edges(), 2, 1 << 24)? {
            let v = verdict_bounds(&kn, &c, &ctx)?;
            exhaustive.verdict(&v, PROVEN, &kn, &c);
        }
        checks.push(exhaustive.finish(format!("complete_exhaustive/n={n}/r=2"), &mut repro));
    }

    let kf = Graph::complete(cfg.fuzz_n);
    let mut stream = 0;
    for &r in &cfg.fuzz_colors {
        let tally = chunked(cfg.seed, stream, cfg.fuzz_instances, |rng, tally| {
            let c = fuzz_coloring(&kf, r, random_kind(rng), rng);
            let v = verdict_bounds(&kf, &c, &ctx)?;
            tally.verdict(&v, PROVEN, &kf, &c);
            Ok(())
        })?;
        stream += CHUNKS;
        checks.push(tally.finish(format!("complete_fuzz/n={}/r={r}", cfg.fuzz_n), &mut repro));
    }

    if !cfg.fuzz_colors.is_empty() {
        let mut annealed = Tally::default();
        for &r in &cfg.fuzz_colors {
            let params = SearchParams {
                iterations: cfg.anneal_iterations,
                restarts: cfg.anneal_restarts,
                seed: cfg.seed,
                ..SearchParams::default()
            };
            let res = anneal(&kf, r, &params)?;
            let v = verdict_bounds(&kf, &res.best, &ctx)?;
            annealed.verdict(&v, PROVEN, &kf, &res.best);
        }
        checks.push(annealed.finish(format!("complete_annealed/n={}", cfg.fuzz_n), &mut repro));
    }

    for case in &cfg.min_degree {
        let g = min_degree_graph(case.n, case.beta)?;
        let ctx = VerdictContext {
            beta: Some(case.beta),
            ..VerdictContext::default()
        };
        let key = if case.r == 3 {
            MIN_DEGREE_THREE_COLOR
        } else {
            MIN_DEGREE_DENSE
        };
        let label = format!("n={}/beta={}/r={}", case.n, fmt(&case.beta), case.r);
        let fuzz = chunked(cfg.seed, stream, cfg.min_degree_fuzz, |rng, tally| {
            let c = fuzz_coloring(&g, case.r, random_kind(rng), rng);
            let v = verdict_bounds(&g, &c, &ctx)?;
            tally.verdict(&v, key, &g, &c);
            Ok(())
        })?;
        stream += CHUNKS;
        checks.push(fuzz.finish(format!("min_degree_fuzz/{label}"), &mut repro));

        let runs: Vec<(BoundVerdict, EdgeColoring)> = (0..cfg.min_degree_anneals)
            .into_par_iter()
            .map(|i| {
                let params = SearchParams {
                    iterations: cfg.min_degree_iterations,
                    restarts: 1,
                    seed: cfg.seed.wrapping_add(i),
                    init: if gyarfas_coloring(case.n, case.r).is_ok() {
                        InitStrategy::Gyarfas
                    } else {
                        InitStrategy::Random
                    },
                    ..SearchParams::default()
                };
                let res = anneal(&g, case.r, &params)?;
                Ok((verdict_bounds(&g, &res.best, &ctx)?, res.best))
            })
            .collect::<Result<_>>()?;
        let mut annealed = Tally::default();
        for (v, c) in &runs {
            annealed.verdict(v, key, &g, c);
        }
        checks.push(annealed.finish(format!("min_degree_annealed/{label}"), &mut repro));
    }
    Ok(SuiteReport::new("bounds", cfg, checks, repro))
}
