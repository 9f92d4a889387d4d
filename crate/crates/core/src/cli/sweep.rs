use rayon::prelude::*;
use serde::Serialize;

use crate::adversary::fuzz::uniform_coloring;
use crate::adversary::{anneal, InitStrategy, SearchParams};
use crate::construct::{gyarfas_coloring, induced_coloring};
use crate::error::{Error, Result};
use crate::graph::{EdgeColoring, Graph};
use crate::random::{sample_gnp, RngSeed};
use crate::ratio::{int, to_f64, Rational};
use crate::verify::{verdict_bounds, VerdictContext, CONJECTURED, PROVEN};

pub const CSV_HEADER: &str =
    "n,p,r,seed,source,edges,largest_component_edges,z_num,z_den,z_float,pass_proven,pass_conjectured";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepConfig {
    pub n: usize,
    pub r: usize,
    #[serde(serialize_with = "serialize_rationals")]
    pub ps: Vec<Rational>,
    pub seeds: Vec<u64>,
    pub iterations: u64,
    pub restarts: u64,
    /// annealing start; `None` uses the cluster coloring when it exists
    pub init: Option<InitStrategy>,
}

fn serialize_rationals<S: serde::Serializer>(
    v: &[Rational],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(crate::ratio::fmt))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Source {
    #[serde(rename = "annealed")]
    Annealed,
    #[serde(rename = "gyarfas-induced")]
    GyarfasInduced,
    #[serde(rename = "random")]
    Random,
    /// no edges to color
    #[serde(rename = "skipped")]
    Skipped,
}

impl Source {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Annealed => "annealed",
            Self::GyarfasInduced => "gyarfas-induced",
            Self::Random => "random",
            Self::Skipped => "skipped",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub n: usize,
    #[serde(serialize_with = "crate::ratio::serialize")]
    pub p: Rational,
    pub r: usize,
    pub seed: u64,
    pub source: Source,
    pub edges: u64,
    pub largest_component_edges: u64,
    pub z: Option<(i128, i128)>,
    pub pass_proven: Option<bool>,
    pub pass_conjectured: Option<bool>,
}

impl SweepRow {
    pub fn z(&self) -> Option<Rational> {
        self.z.map(|(a, b)| Rational::new(a, b))
    }

    pub fn csv_line(&self) -> String {
        let opt = |b: Option<bool>| b.map_or(String::new(), |b| b.to_string());
        let (num, den, float) = match self.z {
            Some((a, b)) => (
                a.to_string(),
                b.to_string(),
                (a as f64 / b as f64).to_string(),
            ),
            None => Default::default(),
        };
        format!(
            "{},{},{},{},{},{},{},{num},{den},{float},{},{}",
            self.n,
            to_f64(&self.p),
            self.r,
            self.seed,
            self.source.as_str(),
            self.edges,
            self.largest_component_edges,
            opt(self.pass_proven),
            opt(self.pass_conjectured),
        )
    }
}

pub fn to_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&row.csv_line());
        out.push('\n');
    }
    out
}

fn row(
    cfg: &SweepConfig,
    p: Rational,
    seed: u64,
    source: Source,
    g: &Graph,
    c: &EdgeColoring,
) -> Result<SweepRow> {
    let v = verdict_bounds(g, c, &VerdictContext::default())?;
    Ok(SweepRow {
        n: cfg.n,
        p,
        r: cfg.r,
        seed,
        source,
        edges: v.edges,
        largest_component_edges: v.largest_component_edges,
        z: Some((*v.z.numer(), *v.z.denom())),
        pass_proven: v.passes(PROVEN),
        pass_conjectured: v.passes(CONJECTURED),
    })
}

fn cell(cfg: &SweepConfig, p: Rational, seed: u64) -> Result<Vec<SweepRow>> {
    let g = sample_gnp(cfg.n, to_f64(&p), RngSeed::new(seed));
    if g.num_edges() == 0 {
        return Ok(vec![SweepRow {
            n: cfg.n,
            p,
            r: cfg.r,
            seed,
            source: Source::Skipped,
            edges: 0,
            largest_component_edges: 0,
            z: None,
            pass_proven: None,
            pass_conjectured: None,
        }]);
    }
    let mut rows = Vec::new();
    let base = gyarfas_coloring(cfg.n, cfg.r).ok();
    if let Some(base) = &base {
        rows.push(row(
            cfg,
            p,
            seed,
            Source::GyarfasInduced,
            &g,
            &induced_coloring(base, &g)?,
        )?);
    }
    let mut rng = RngSeed::new(seed).with_stream(1).rng();
    rows.push(row(
        cfg,
        p,
        seed,
        Source::Random,
        &g,
        &uniform_coloring(g.num_edges(), cfg.r, &mut rng),
    )?);
    let init = cfg.init.unwrap_or(if base.is_some() {
        InitStrategy::Gyarfas
    } else {
        InitStrategy::Random
    });
    let params = SearchParams {
        iterations: cfg.iterations,
        restarts: cfg.restarts,
        seed,
        first_stream: 2,
        init,
        ..SearchParams::default()
    };
    let res = anneal(&g, cfg.r, &params)?;
    rows.push(row(cfg, p, seed, Source::Annealed, &g, &res.best)?);
    Ok(rows)
}

/// One row per `(p, seed, source)`, sorted by those keys.
pub fn sweep(cfg: &SweepConfig) -> Result<Vec<SweepRow>> {
    if cfg.ps.is_empty() || cfg.seeds.is_empty() {
        return Err(Error::Domain(
            "sweep needs at least one p and one seed".into(),
        ));
    }
    if cfg.r < 2 || cfg.r > EdgeColoring::MAX_COLORS {
        return Err(Error::Domain(format!(
            "r must be in 2..={}, got {}",
            EdgeColoring::MAX_COLORS,
            cfg.r
        )));
    }
    if let Some(p) = cfg.ps.iter().find(|&&p| p < int(0) || p > int(1)) {
        return Err(Error::Domain(format!(
            "p = {} outside [0, 1]",
            crate::ratio::fmt(p)
        )));
    }
    let cells: Vec<(Rational, u64)> = cfg
        .ps
        .iter()
        .flat_map(|&p| cfg.seeds.iter().map(move |&s| (p, s)))
        .collect();
    let mut rows: Vec<SweepRow> = cells
        .par_iter()
        .map(|&(p, s)| cell(cfg, p, s))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    rows.sort_by_key(|a| (a.p, a.seed, a.source));
    Ok(rows)
}
