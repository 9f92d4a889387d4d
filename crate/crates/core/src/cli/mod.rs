//! The `monocomp` command line.
//!
//! Every setting can come from a flag or from a flat `key = value` file given
//! with `--config`; flags win. Exit status is 0 on success, 1 when a verdict
//! or check fails, and 2 on usage or input errors.

mod config;
mod sweep;

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::Serialize;

pub use config::{parse_config, parse_list, parse_num, read_config, Resolver, KNOWN_KEYS};
pub use sweep::{sweep, to_csv, Source, SweepConfig, SweepRow, CSV_HEADER};

use crate::adversary::{anneal, InitStrategy, Objective, SearchParams, TraceEntry};
use crate::construct::gyarfas_coloring;
use crate::error::{Error, Result};
use crate::geometry::{affine_plane_of_order, validate_affine_plane};
use crate::graph::{read_graph_file, write_colored, write_uncolored, Graph};
use crate::random::{sample_gnp, RngSeed};
use crate::ratio::{fmt, int, parse_rational, to_f64, Rational};
use crate::verify::suite::{
    bounds_suite, deterministic_suite, sparse_suite, BoundsConfig, DeterministicConfig,
    SparseConfig, SuiteReport, SCHEMA_VERSION,
};
use crate::verify::{verdict_bounds, BoundVerdict, VerdictContext};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "monocomp",
    version,
    about = "Monochromatic components of edge-colored graphs"
)]
struct Cli {
    /// Flat `key = value` settings file; flags override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the lines of the affine plane of order q as `class: points`.
    Plane { q: Option<String> },
    /// Write the affine-plane cluster coloring of K_n.
    Color {
        #[arg(long)]
        n: Option<String>,
        #[arg(long)]
        r: Option<String>,
        #[arg(long)]
        out: Option<String>,
    },
    /// Sample G(n, p) and write it uncolored.
    Sample {
        #[arg(long)]
        n: Option<String>,
        #[arg(long)]
        p: Option<String>,
        #[arg(long)]
        seed: Option<String>,
        #[arg(long)]
        out: Option<String>,
    },
    /// Report monochromatic components and bound verdicts of a colored graph.
    Analyze {
        #[arg(long = "in")]
        input: Option<String>,
        /// minimum-degree slack of the host, enabling those bounds
        #[arg(long)]
        beta: Option<String>,
        #[arg(long)]
        json: Option<String>,
    },
    /// Anneal for a coloring with a small largest monochromatic component.
    Search {
        #[arg(long = "in")]
        input: Option<String>,
        #[arg(long)]
        n: Option<String>,
        #[arg(long)]
        p: Option<String>,
        #[arg(long)]
        r: Option<String>,
        #[arg(long)]
        seed: Option<String>,
        #[arg(long)]
        iters: Option<String>,
        #[arg(long)]
        restarts: Option<String>,
        /// random or gyarfas
        #[arg(long)]
        init: Option<String>,
        /// initial temperature, default 0.05 e(G)
        #[arg(long)]
        t0: Option<String>,
        #[arg(long)]
        cooling: Option<String>,
        #[arg(long)]
        json: Option<String>,
        /// write the best coloring here
        #[arg(long)]
        out: Option<String>,
    },
    /// Run a checker campaign: deterministic, sparse or bounds.
    Verify {
        #[arg(long)]
        suite: Option<String>,
        #[arg(long)]
        seed: Option<String>,
        #[arg(long)]
        json: Option<String>,
        /// where counterexample files are saved
        #[arg(long = "repro-dir")]
        repro_dir: Option<String>,
    },
    /// Sweep G(n, p) over a grid of p and seeds, writing CSV.
    #[command(long_about = concat!(
        "Sweep G(n, p) over a grid of p and seeds. For each cell the cluster coloring (when it exists), ",
        "a uniform random coloring and an annealed coloring are evaluated.\n\nCSV columns:\n  ",
        "n,p,r,seed,source,edges,largest_component_edges,z_num,z_den,z_float,pass_proven,pass_conjectured\n\n",
        "z = largest_component_edges / edges as an exact fraction plus a float. source is one of annealed, ",
        "gyarfas-induced, random, or skipped for a cell without edges. Rows are sorted by (p, seed, source)."
    ))]
    Sweep {
        #[arg(long)]
        n: Option<String>,
        #[arg(long)]
        r: Option<String>,
        /// comma-separated edge probabilities
        #[arg(long)]
        p: Option<String>,
        /// comma-separated seeds
        #[arg(long)]
        seeds: Option<String>,
        #[arg(long)]
        iters: Option<String>,
        #[arg(long)]
        restarts: Option<String>,
        #[arg(long)]
        init: Option<String>,
        #[arg(long)]
        out: Option<String>,
        #[arg(long)]
        json: Option<String>,
    },
}

#[derive(Serialize)]
struct Report<'a, T: Serialize> {
    schema_version: u32,
    command: &'static str,
    config: &'a BTreeMap<String, String>,
    outcomes: T,
    pass: bool,
}

fn write_report<T: Serialize>(
    path: &str,
    command: &'static str,
    res: &Resolver,
    outcomes: T,
    pass: bool,
) -> Result<()> {
    let report = Report {
        schema_version: SCHEMA_VERSION,
        command,
        config: res.echo(),
        outcomes,
        pass,
    };
    let mut text = serde_json::to_string_pretty(&report).map_err(|e| Error::Io(e.to_string()))?;
    text.push('\n');
    write_file(Path::new(path), text.as_bytes())
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    std::fs::write(path, bytes).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// Writes to `path`, or to `out` when no path is set.
fn emit(path: Option<&str>, out: &mut dyn Write, bytes: &[u8]) -> Result<()> {
    match path {
        Some(p) => write_file(Path::new(p), bytes),
        None => Ok(out.write_all(bytes)?),
    }
}

fn parse_prob(s: &str) -> Result<Rational> {
    let p = parse_rational(s)?;
    if p < int(0) || p > int(1) {
        return Err(Error::Domain(format!("probability {s} outside [0, 1]")));
    }
    Ok(p)
}

fn parse_string(s: &str) -> Result<String> {
    Ok(s.to_string())
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    let file = match cli.config.as_deref().map(read_config).transpose() {
        Ok(f) => f.unwrap_or_default(),
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let mut res = Resolver::new(file);
    match dispatch(cli.command, &mut res, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn dispatch(
    cmd: Command,
    res: &mut Resolver,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32> {
    match cmd {
        Command::Plane { q } => {
            let q = res.required("q", q.as_deref(), parse_num::<u64>)?;
            let plane = affine_plane_of_order(q)?;
            if let Err(v) = validate_affine_plane(&plane) {
                writeln!(err, "invalid plane: {v}")?;
                return Ok(EXIT_CHECK_FAILED);
            }
            let class = plane.class_of_line();
            let mut text = String::new();
            for (l, line) in plane.lines.iter().enumerate() {
                let pts: Vec<String> = line.iter().map(|p| p.to_string()).collect();
                text.push_str(&format!("{}: {}\n", class[l], pts.join(" ")));
            }
            out.write_all(text.as_bytes())?;
            Ok(EXIT_OK)
        }
        Command::Color { n, r, out: path } => {
            let n = res.required("n", n.as_deref(), parse_num::<usize>)?;
            let r = res.required("r", r.as_deref(), parse_num::<usize>)?;
            let path = res.opt("out", path.as_deref(), parse_string)?;
            let gy = gyarfas_coloring(n, r)?;
            let mut buf = Vec::new();
            write_colored(&mut buf, &Graph::complete(n), gy.coloring())?;
            emit(path.as_deref(), out, &buf)?;
            Ok(EXIT_OK)
        }
        Command::Sample {
            n,
            p,
            seed,
            out: path,
        } => {
            let n = res.required("n", n.as_deref(), parse_num::<usize>)?;
            let p = res.required("p", p.as_deref(), parse_prob)?;
            let seed = res.or_default("seed", seed.as_deref(), "0", parse_num::<u64>)?;
            let path = res.opt("out", path.as_deref(), parse_string)?;
            let g = sample_gnp(n, to_f64(&p), RngSeed::new(seed));
            let mut buf = Vec::new();
            write_uncolored(&mut buf, &g)?;
            emit(path.as_deref(), out, &buf)?;
            Ok(EXIT_OK)
        }
        Command::Analyze { input, beta, json } => {
            let input = res.required("in", input.as_deref(), parse_string)?;
            let beta = res.opt("beta", beta.as_deref(), parse_rational)?;
            let json = res.opt("json", json.as_deref(), parse_string)?;
            let file = read_graph_file(Path::new(&input))?;
            let coloring = file
                .coloring
                .ok_or_else(|| Error::Domain(format!("{input} has no coloring")))?;
            let ctx = VerdictContext {
                beta,
                ..VerdictContext::default()
            };
            let v = verdict_bounds(&file.graph, &coloring, &ctx)?;
            print_verdict(out, &v)?;
            if let Some(path) = json {
                write_report(&path, "analyze", res, [&v], v.pass())?;
            }
            verdict_exit(err, &v)
        }
        Command::Search {
            input,
            n,
            p,
            r,
            seed,
            iters,
            restarts,
            init,
            t0,
            cooling,
            json,
            out: path,
        } => {
            let r = res.required("r", r.as_deref(), parse_num::<usize>)?;
            let seed = res.or_default("seed", seed.as_deref(), "0", parse_num::<u64>)?;
            let g = match res.opt("in", input.as_deref(), parse_string)? {
                Some(input) => read_graph_file(Path::new(&input))?.graph,
                None => {
                    let n = res.required("n", n.as_deref(), parse_num::<usize>)?;
                    let p = res.required("p", p.as_deref(), parse_prob)?;
                    sample_gnp(n, to_f64(&p), RngSeed::new(seed))
                }
            };
            let params = SearchParams {
                iterations: res.or_default("iters", iters.as_deref(), "10000", parse_num)?,
                restarts: res.or_default("restarts", restarts.as_deref(), "1", parse_num)?,
                initial_temperature: res.opt("t0", t0.as_deref(), parse_num)?,
                cooling: res.or_default("cooling", cooling.as_deref(), "0.999", parse_num)?,
                seed,
                first_stream: 2,
                init: res.or_default("init", init.as_deref(), "random", |s| {
                    s.parse::<InitStrategy>()
                })?,
            };
            let json = res.opt("json", json.as_deref(), parse_string)?;
            let path = res.opt("out", path.as_deref(), parse_string)?;
            let result = anneal(&g, r, &params)?;
            let v = verdict_bounds(&g, &result.best, &VerdictContext::default())?;
            writeln!(
                out,
                "best largest component: {} of {} edges after {} evaluations (restart {})",
                result.best_objective.max_component_edges,
                g.num_edges(),
                result.evaluations,
                result.best_restart
            )?;
            print_verdict(out, &v)?;
            if let Some(path) = path {
                let mut buf = Vec::new();
                write_colored(&mut buf, &g, &result.best)?;
                write_file(Path::new(&path), &buf)?;
            }
            if let Some(json) = json {
                #[derive(Serialize)]
                struct SearchOutcome<'a> {
                    edges: usize,
                    best_objective: &'a Objective,
                    z: String,
                    best_restart: u64,
                    evaluations: u64,
                    verdict: &'a BoundVerdict,
                    trace: &'a [TraceEntry],
                }
                let outcome = SearchOutcome {
                    edges: g.num_edges(),
                    best_objective: &result.best_objective,
                    z: fmt(&v.z),
                    best_restart: result.best_restart,
                    evaluations: result.evaluations,
                    verdict: &v,
                    trace: &result.trace,
                };
                write_report(&json, "search", res, outcome, v.pass())?;
            }
            verdict_exit(err, &v)
        }
        Command::Verify {
            suite,
            seed,
            json,
            repro_dir,
        } => {
            let suite = res.required("suite", suite.as_deref(), parse_string)?;
            let seed = res.or_default("seed", seed.as_deref(), "1", parse_num::<u64>)?;
            let json = res.opt("json", json.as_deref(), parse_string)?;
            let repro_dir = res.or_default(
                "repro-dir",
                repro_dir.as_deref(),
                "counterexamples",
                parse_string,
            )?;
            let report = match suite.as_str() {
                "deterministic" => deterministic_suite(&DeterministicConfig {
                    seed,
                    ..DeterministicConfig::default()
                })?,
                "sparse" => sparse_suite(&SparseConfig {
                    seed,
                    ..SparseConfig::default()
                })?,
                "bounds" => bounds_suite(&BoundsConfig {
                    seed,
                    ..BoundsConfig::default()
                })?,
                other => {
                    return Err(Error::Domain(format!(
                        "unknown suite {other:?}; expected deterministic, sparse or bounds"
                    )))
                }
            };
            print_suite(out, &report)?;
            save_reproductions(err, &report, Path::new(&repro_dir))?;
            if let Some(json) = json {
                write_report(&json, "verify", res, &report, report.pass)?;
            }
            if let Some(failed) = report.first_failure() {
                let detail = failed
                    .first_failure
                    .as_ref()
                    .map(|v| v.to_string())
                    .unwrap_or_default();
                writeln!(err, "check failed: {} {detail}", failed.check)?;
                return Ok(EXIT_CHECK_FAILED);
            }
            Ok(EXIT_OK)
        }
        Command::Sweep {
            n,
            r,
            p,
            seeds,
            iters,
            restarts,
            init,
            out: path,
            json,
        } => {
            let cfg = SweepConfig {
                n: res.required("n", n.as_deref(), parse_num)?,
                r: res.required("r", r.as_deref(), parse_num)?,
                ps: res.required("p", p.as_deref(), |s| parse_list(s, parse_prob))?,
                seeds: res.required("seeds", seeds.as_deref(), |s| {
                    parse_list(s, parse_num::<u64>)
                })?,
                iterations: res.or_default("iters", iters.as_deref(), "10000", parse_num)?,
                restarts: res.or_default("restarts", restarts.as_deref(), "5", parse_num)?,
                init: res.opt("init", init.as_deref(), |s| s.parse::<InitStrategy>())?,
            };
            let path = res.opt("out", path.as_deref(), parse_string)?;
            let json = res.opt("json", json.as_deref(), parse_string)?;
            let rows = sweep(&cfg)?;
            for row in rows.iter().filter(|r| r.source == Source::Skipped) {
                writeln!(
                    err,
                    "warning: p={} seed={} has no edges; skipped",
                    fmt(&row.p),
                    row.seed
                )?;
            }
            emit(path.as_deref(), out, to_csv(&rows).as_bytes())?;
            let pass = rows.iter().all(|r| r.pass_proven != Some(false));
            if let Some(json) = json {
                write_report(&json, "sweep", res, &rows, pass)?;
            }
            if let Some(bad) = rows.iter().find(|r| r.pass_proven == Some(false)) {
                writeln!(err, "check failed: {}", bad.csv_line())?;
                return Ok(EXIT_CHECK_FAILED);
            }
            Ok(EXIT_OK)
        }
    }
}

fn print_verdict(out: &mut dyn Write, v: &BoundVerdict) -> Result<()> {
    writeln!(out, "n={} r={} edges={}", v.n, v.r, v.edges)?;
    writeln!(
        out,
        "largest component: {} edges, {} vertices",
        v.largest_component_edges, v.largest_component_vertices
    )?;
    writeln!(out, "z = {} ({:.6})", fmt(&v.z), to_f64(&v.z))?;
    for (name, t) in &v.thresholds {
        writeln!(
            out,
            "{name}: {} {} >= {} {} [{}]",
            t.basis,
            fmt(&t.measured),
            fmt(&t.required),
            if t.pass { "pass" } else { "FAIL" },
            if t.enforced { "enforced" } else { "reported" }
        )?;
    }
    Ok(())
}

fn verdict_exit(err: &mut dyn Write, v: &BoundVerdict) -> Result<i32> {
    match v.first_failure() {
        Some((name, t)) => {
            writeln!(
                err,
                "check failed: {name}: {} {} < {}",
                t.basis,
                fmt(&t.measured),
                fmt(&t.required)
            )?;
            Ok(EXIT_CHECK_FAILED)
        }
        None => Ok(EXIT_OK),
    }
}

fn print_suite(out: &mut dyn Write, report: &SuiteReport) -> Result<()> {
    for c in &report.checks {
        writeln!(
            out,
            "{}: {} instances, {} violations, {} vacuous, {} rejected, min margin {}",
            c.check,
            c.instances,
            c.violations,
            c.vacuous,
            c.rejected,
            c.min_margin.as_deref().unwrap_or("-")
        )?;
    }
    writeln!(
        out,
        "{} suite: {}",
        report.suite,
        if report.pass { "pass" } else { "FAIL" }
    )?;
    Ok(())
}

fn save_reproductions(err: &mut dyn Write, report: &SuiteReport, dir: &Path) -> Result<()> {
    if report.reproductions.is_empty() {
        return Ok(());
    }
    std::fs::create_dir_all(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
    for repro in &report.reproductions {
        let name: String = repro
            .check
            .chars()
            .map(|c| {
                if c.is_ascii_alphanumeric() || c == '-' || c == '=' {
                    c
                } else {
                    '_'
                }
            })
            .collect();
        let path = dir.join(format!("{name}.txt"));
        write_file(&path, repro.file.as_bytes())?;
        writeln!(err, "counterexample saved to {}", path.display())?;
    }
    Ok(())
}
