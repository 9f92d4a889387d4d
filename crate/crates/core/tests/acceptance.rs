//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so every criterion reports even when an earlier one fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use monocomp::adversary::fuzz::{fuzz_coloring, uniform_coloring, FuzzKind};
use monocomp::adversary::{anneal, brute_force_optimum, SearchParams};
use monocomp::cli::{self, Source, SweepConfig};
use monocomp::construct::{gyarfas_coloring, induced_coloring};
use monocomp::geometry::{affine_plane_of_order, validate_affine_plane};
use monocomp::graph::{binomial2, materialize_multipartite, monochromatic_components};
use monocomp::random::{
    min_degree_graph, random_part_structure, random_subset, sample_gnp, RngSeed,
};
use monocomp::ratio::{fmt, ratio};
use monocomp::verify::suite::{
    bounds_suite, deterministic_suite, sparse_suite, BoundsConfig, DeterministicConfig,
    SparseConfig, SuiteReport,
};
use monocomp::verify::{
    check_component_density, check_pair_inequality, verdict_bounds, VerdictContext,
};
use monocomp::{Graph, Rational};
use rand::Rng;

type Outcome = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn within(limit: Duration, start: Instant, what: &str) -> Outcome {
    let took = start.elapsed();
    ensure!(
        took < limit,
        "{what} took {:.2?}, limit {:.0?}",
        took,
        limit
    );
    Ok(())
}

fn suite_clean(report: &SuiteReport) -> Outcome {
    if let Some(bad) = report.first_failure() {
        return Err(format!("{} failed: {:?}", bad.check, bad.first_failure));
    }
    ensure!(report.pass, "{} suite did not pass", report.suite);
    Ok(())
}

fn affine_planes() -> Outcome {
    let start = Instant::now();
    for q in [2usize, 3, 4, 5, 7, 8, 9] {
        let plane = affine_plane_of_order(q as u64).map_err(|e| e.to_string())?;
        validate_affine_plane(&plane).map_err(|v| format!("q={q}: {v}"))?;
        ensure!(
            plane.lines.len() == q * q + q,
            "q={q}: {} lines",
            plane.lines.len()
        );
        ensure!(
            plane.classes.len() == q + 1,
            "q={q}: {} classes",
            plane.classes.len()
        );
        // every pair of points on exactly one line, counted directly
        let np = q * q;
        let mut cover = vec![0u32; np * np];
        for line in &plane.lines {
            for &a in line {
                for &b in line {
                    if a != b {
                        cover[a * np + b] += 1;
                    }
                }
            }
        }
        for a in 0..np {
            for b in 0..np {
                ensure!(
                    a == b || cover[a * np + b] == 1,
                    "q={q}: pair ({a}, {b}) covered {} times",
                    cover[a * np + b]
                );
            }
        }
    }
    within(Duration::from_secs(1), start, "planes")
}

fn cluster_construction() -> Outcome {
    for (r, n) in [(3usize, 120usize), (4, 180), (5, 320)] {
        let start = Instant::now();
        let gy = gyarfas_coloring(n, r).map_err(|e| e.to_string())?;
        let g = Graph::complete(n);
        let colors = gy.coloring().colors();
        let comps = common::component_edge_counts(n, g.edges(), colors, r);
        ensure!(
            comps.len() == r * (r - 1),
            "(r={r}, n={n}): {} components",
            comps.len()
        );
        let max = comps.iter().map(|c| c.2).max().unwrap();
        let cap = binomial2(n as u64) / (r * (r - 1)) as u64 + (r * n) as u64;
        ensure!(max <= cap, "(r={r}, n={n}): largest {max} > {cap}");
        let report = monochromatic_components(&g, gy.coloring()).map_err(|e| e.to_string())?;
        ensure!(
            report.max_component_edges() == max,
            "library largest {} != {max}",
            report.max_component_edges()
        );
        let sizes: Vec<usize> = (0..gy.num_clusters())
            .map(|c| gy.cluster(c).len())
            .collect();
        ensure!(
            sizes.iter().max().unwrap() - sizes.iter().min().unwrap() <= 1,
            "cluster sizes {sizes:?}"
        );
        for c in 0..gy.num_clusters() {
            let mut per_color = vec![0u64; r];
            let members: Vec<usize> = gy.cluster(c).collect();
            for (i, &u) in members.iter().enumerate() {
                for &v in &members[i + 1..] {
                    let e = g.edge_index(u, v).unwrap();
                    per_color[colors[e] as usize - 1] += 1;
                }
            }
            let spread = per_color.iter().max().unwrap() - per_color.iter().min().unwrap();
            ensure!(
                spread <= 1,
                "(r={r}, n={n}) cluster {c}: color counts {per_color:?}"
            );
        }
        within(Duration::from_secs(2), start, &format!("(r={r}, n={n})"))?;
    }
    Ok(())
}

fn deterministic_inequalities() -> Outcome {
    let start = Instant::now();
    let report = deterministic_suite(&DeterministicConfig::default()).map_err(|e| e.to_string())?;
    suite_clean(&report)?;
    let counts: Vec<u64> = report.checks.iter().map(|c| c.instances).collect();
    ensure!(counts == [100_000, 10_000], "instance counts {counts:?}");

    // the checkers' integers against direct pair counting
    let mut rng = RngSeed::new(99).rng();
    for _ in 0..2_000 {
        let n = rng.gen_range(2..=30);
        let parts = random_part_structure(n, rng.gen_range(2..=n), &mut rng).unwrap();
        let block: Vec<usize> = (0..n).map(|v| parts.block_of(v)).collect();
        let s = random_subset(n, rng.gen(), &mut rng);
        let t = random_subset(n, rng.gen(), &mut rng);
        let o = check_pair_inequality(&parts, &s, &t).map_err(|e| e.to_string())?;
        let (es, et, est) = (
            common::multipartite_within(&block, &s),
            common::multipartite_within(&block, &t),
            common::multipartite_between(&block, &s, &t),
        );
        ensure!(
            o.lhs == Rational::from_integer((est * est) as i128),
            "lhs mismatch {o:?}"
        );
        ensure!(
            o.rhs == Rational::from_integer((4 * es * et) as i128),
            "rhs mismatch {o:?}"
        );
        ensure!(o.holds && est * est >= 4 * es * et, "violation {o:?}");

        let m = materialize_multipartite(&parts).unwrap();
        let q: f64 = rng.gen();
        let h = m.filter_edges(|_, _| rng.gen::<f64>() < q);
        let o = check_component_density(&parts, &h).map_err(|e| e.to_string())?;
        let all: Vec<usize> = (0..n).collect();
        let e_m = common::multipartite_within(&block, &all);
        let ones = vec![1u8; h.num_edges()];
        let best = common::max_component_edges(n, h.edges(), &ones, 1);
        let e_h = h.num_edges() as u64;
        ensure!(
            o.holds == (best * e_m >= e_h * e_h),
            "component density disagrees {o:?}"
        );
        ensure!(o.holds, "violation {o:?}");
    }
    within(Duration::from_secs(60), start, "inequality fuzz")
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let k4 = Graph::complete(4);
    let bf4 = brute_force_optimum(&k4, 2, 1 << 20).map_err(|e| e.to_string())?;
    ensure!(
        bf4.objective.max_component_edges == 3,
        "K4 optimum {}",
        bf4.objective.max_component_edges
    );
    ensure!(
        common::min_max_component(4, k4.edges(), 2) == 3,
        "K4 oracle disagrees"
    );

    let k6 = Graph::complete(6);
    let bf6 = brute_force_optimum(&k6, 2, 1 << 14).map_err(|e| e.to_string())?;
    let oracle = common::min_max_component(6, k6.edges(), 2);
    ensure!(
        bf6.objective.max_component_edges == oracle,
        "K6 brute force {} vs oracle {oracle}",
        bf6.objective.max_component_edges
    );
    // ceil(15 * 4 / 13) = 5
    ensure!(
        oracle * 13 >= 15 * 4 && oracle >= 5,
        "K6 optimum {oracle} below the floor"
    );
    let params = SearchParams {
        iterations: 1_000,
        restarts: 10,
        seed: 1,
        ..SearchParams::default()
    };
    let found = anneal(&k6, 2, &params).map_err(|e| e.to_string())?;
    ensure!(
        found.best_objective == bf6.objective,
        "anneal {:?} vs brute force {:?}",
        found.best_objective,
        bf6.objective
    );
    within(Duration::from_secs(30), start, "oracle equivalence")
}

fn complete_graph_bound() -> Outcome {
    let start = Instant::now();
    let cfg = BoundsConfig {
        min_degree: Vec::new(),
        ..BoundsConfig::default()
    };
    let report = bounds_suite(&cfg).map_err(|e| e.to_string())?;
    suite_clean(&report)?;
    let exhaustive = &report.checks[0];
    ensure!(
        exhaustive.instances == 512,
        "K5 colorings {}",
        exhaustive.instances
    );
    // the smallest margin over all 2-colorings of K5, from unreduced enumeration
    let k5 = common::complete_edges(5);
    let min = common::min_max_component(5, &k5, 2);
    let expected = ratio(min as i128, 10) - ratio(4, 13);
    ensure!(
        expected >= ratio(0, 1),
        "K5 oracle minimum {min} below 4/13"
    );
    ensure!(
        exhaustive.min_margin.as_deref() == Some(fmt(&expected).as_str()),
        "K5 margin {:?} vs {}",
        exhaustive.min_margin,
        fmt(&expected)
    );
    for (i, r) in [2usize, 3, 4].into_iter().enumerate() {
        ensure!(
            report.checks[1 + i].instances == 100_000,
            "r={r}: {} instances",
            report.checks[1 + i].instances
        );
    }

    let k12 = Graph::complete(12);
    let mut rng = RngSeed::new(5).rng();
    for i in 0..3_000 {
        let r = 2 + i % 3;
        let c = fuzz_coloring(&k12, r, FuzzKind::ALL[i % 4], &mut rng);
        let max = common::max_component_edges(12, k12.edges(), c.colors(), r);
        let v = verdict_bounds(&k12, &c, &VerdictContext::default()).map_err(|e| e.to_string())?;
        ensure!(
            v.z == ratio(max as i128, 66),
            "z {} vs oracle {max}/66",
            fmt(&v.z)
        );
        let (ri, m) = (r as u64, max);
        ensure!(
            m * (4 * ri * ri - 4 * ri + 5) >= 4 * 66,
            "r={r}: largest {m} of 66 below the floor"
        );
    }
    within(Duration::from_secs(120), start, "complete-graph bound")
}

fn sparse_inequalities() -> Outcome {
    let start = Instant::now();
    let report = sparse_suite(&SparseConfig::default()).map_err(|e| e.to_string())?;
    suite_clean(&report)?;
    ensure!(report.checks.len() == 12, "{} checks", report.checks.len());
    for c in &report.checks {
        ensure!(c.instances == 100, "{}: {} instances", c.check, c.instances);
    }
    within(Duration::from_secs(120), start, "sparse suite")
}

fn stress_config() -> SweepConfig {
    SweepConfig {
        n: 400,
        r: 3,
        ps: vec![ratio(1, 10), ratio(1, 5)],
        seeds: vec![1, 2, 3, 4, 5],
        iterations: 10_000,
        restarts: 5,
        init: None,
    }
}

fn random_graph_stress() -> Outcome {
    let start = Instant::now();
    let cfg = stress_config();
    let rows = cli::sweep(&cfg).map_err(|e| e.to_string())?;
    ensure!(rows.len() == 30, "{} rows", rows.len());
    for row in &rows {
        let z = row.z().ok_or("row without edges")?;
        match row.source {
            Source::Annealed => ensure!(
                z >= ratio(4, 29),
                "annealed z {} < 4/29 at p={} seed={}",
                fmt(&z),
                fmt(&row.p),
                row.seed
            ),
            Source::GyarfasInduced => {
                ensure!(
                    z <= ratio(11, 60),
                    "cluster z {} > 1.1/6 at p={} seed={}",
                    fmt(&z),
                    fmt(&row.p),
                    row.seed
                );
                let g = sample_gnp(
                    cfg.n,
                    monocomp::ratio::to_f64(&row.p),
                    RngSeed::new(row.seed),
                );
                let c = induced_coloring(&gyarfas_coloring(cfg.n, cfg.r).unwrap(), &g).unwrap();
                let max = common::max_component_edges(cfg.n, g.edges(), c.colors(), cfg.r);
                ensure!(
                    max == row.largest_component_edges,
                    "row {} vs oracle {max}",
                    row.largest_component_edges
                );
            }
            _ => {}
        }
        ensure!(z >= ratio(4, 29), "{:?} z {} < 4/29", row.source, fmt(&z));
    }
    within(Duration::from_secs(600), start, "random-graph stress")
}

fn min_degree_config() -> BoundsConfig {
    BoundsConfig {
        exhaustive_n: None,
        fuzz_colors: Vec::new(),
        ..BoundsConfig::default()
    }
}

fn min_degree_hosts() -> Outcome {
    let start = Instant::now();
    let report = bounds_suite(&min_degree_config()).map_err(|e| e.to_string())?;
    suite_clean(&report)?;
    let counts: Vec<u64> = report.checks.iter().map(|c| c.instances).collect();
    ensure!(
        counts == [1_000, 10, 1_000, 10],
        "instance counts {counts:?}"
    );

    let mut rng = RngSeed::new(8).rng();
    for (beta, r) in [(ratio(1, 25), 3usize), (ratio(1, 10), 4)] {
        let g = min_degree_graph(300, beta).map_err(|e| e.to_string())?;
        let d = (beta * Rational::from_integer(300)).floor().to_integer() as usize;
        ensure!(
            g.min_degree() >= 299 - d,
            "min degree {} < {}",
            g.min_degree(),
            299 - d
        );
        let e = g.num_edges() as u64;
        for i in 0..20 {
            let c = fuzz_coloring(&g, r, FuzzKind::ALL[i % 4], &mut rng);
            let max = common::max_component_edges(300, g.edges(), c.colors(), r);
            if r == 3 {
                ensure!(6 * max >= e, "r=3: largest {max} of {e}");
            } else {
                // (1 - 1/10)^2 * 4/53 * C(300, 2)
                ensure!(
                    max * 100 * 53 >= 81 * 4 * binomial2(300),
                    "r=4: largest {max}"
                );
            }
        }
    }
    within(Duration::from_secs(300), start, "min-degree suite")
}

fn performance() -> Outcome {
    let n = 20_000usize;
    let p = 10.0 * (n as f64).ln() / n as f64;
    let g = sample_gnp(n, p, RngSeed::new(1));
    let c = uniform_coloring(g.num_edges(), 3, &mut RngSeed::new(2).rng());
    let start = Instant::now();
    let report = monochromatic_components(&g, &c).map_err(|e| e.to_string())?;
    within(Duration::from_secs(5), start, "components at n=20000")?;
    let total: u64 = report.components().map(|c| c.edges).sum();
    ensure!(
        total == g.num_edges() as u64,
        "component edges {total} != {}",
        g.num_edges()
    );

    let n = 100_000usize;
    let p = 10.0 * (n as f64).ln() / n as f64;
    let start = Instant::now();
    let g = sample_gnp(n, p, RngSeed::new(3));
    within(Duration::from_secs(10), start, "sampling at n=100000")?;
    let expected = p * binomial2(n as u64) as f64;
    let dev = (g.num_edges() as f64 - expected).abs() / expected;
    ensure!(
        dev < 0.01,
        "edge count {} vs expected {expected:.0}",
        g.num_edges()
    );
    Ok(())
}

fn run_cli(args: &[&str]) -> Result<(), String> {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = cli::run(
        std::iter::once("monocomp").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    ensure!(
        code == 0,
        "{args:?} exited {code}: {}",
        String::from_utf8_lossy(&err)
    );
    Ok(())
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = |name: &str| dir.path().join(name).to_string_lossy().into_owned();
    let (sparse, sweep, bounds) = (path("sparse.json"), path("sweep.csv"), path("bounds.json"));
    let runs: [Vec<&str>; 3] = [
        vec![
            "verify", "--suite", "sparse", "--seed", "1", "--json", &sparse,
        ],
        vec![
            "sweep",
            "--n",
            "400",
            "--r",
            "3",
            "--p",
            "0.1,0.2",
            "--seeds",
            "1,2,3,4,5",
            "--iters",
            "10000",
            "--restarts",
            "5",
            "--out",
            &sweep,
        ],
        vec![
            "verify", "--suite", "bounds", "--seed", "1", "--json", &bounds,
        ],
    ];
    for (args, file) in runs.iter().zip([&sparse, &sweep, &bounds]) {
        run_cli(args)?;
        let first = std::fs::read(file).map_err(|e| e.to_string())?;
        run_cli(args)?;
        let second = std::fs::read(file).map_err(|e| e.to_string())?;
        ensure!(
            !first.is_empty() && first == second,
            "{} differs between runs",
            args[..3].join(" ")
        );
    }
    // library reports too
    let a = serde_json::to_string(&bounds_suite(&min_degree_config()).unwrap()).unwrap();
    let b = serde_json::to_string(&bounds_suite(&min_degree_config()).unwrap()).unwrap();
    ensure!(a == b, "min-degree report differs between runs");
    let a = cli::to_csv(&cli::sweep(&stress_config()).unwrap());
    let b = cli::to_csv(&cli::sweep(&stress_config()).unwrap());
    ensure!(a == b, "sweep differs between runs");
    Ok(())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("affine planes", affine_planes),
        ("cluster construction", cluster_construction),
        ("deterministic inequality fuzz", deterministic_inequalities),
        ("oracle equivalence", oracle_equivalence),
        ("complete-graph edge fraction", complete_graph_bound),
        ("sparse random inequalities", sparse_inequalities),
        ("random-graph stress", random_graph_stress),
        ("minimum-degree hosts", min_degree_hosts),
        ("performance", performance),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("criterion {:>2} {name}: PASS ({secs:.2} s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} {name}: FAIL ({secs:.2} s): {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all {} criteria passed", criteria.len());
}
