use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{ComponentState, Objective};
use crate::construct::{gyarfas_coloring, induced_coloring};
use crate::error::{Error, Result};
use crate::graph::{EdgeColoring, Graph};
use crate::random::RngSeed;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum InitStrategy {
    #[default]
    Random,
    Gyarfas,
}

impl std::str::FromStr for InitStrategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "random" => Ok(Self::Random),
            "gyarfas" => Ok(Self::Gyarfas),
            other => Err(Error::Domain(format!("unknown init strategy {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchParams {
    pub iterations: u64,
    pub restarts: u64,
    /// `None` means `0.05 * e(G)`.
    pub initial_temperature: Option<f64>,
    pub cooling: f64,
    pub seed: u64,
    /// restart `i` draws from stream `first_stream + i` of `seed`
    pub first_stream: u64,
    pub init: InitStrategy,
}

impl Default for SearchParams {
    fn default() -> Self {
        Self {
            iterations: 10_000,
            restarts: 1,
            initial_temperature: None,
            cooling: 0.999,
            seed: 0,
            first_stream: 0,
            init: InitStrategy::Random,
        }
    }
}

impl SearchParams {
    pub fn validate(&self) -> Result<()> {
        if self.iterations == 0 {
            return Err(Error::Domain("iterations must be at least 1".into()));
        }
        if self.restarts == 0 {
            return Err(Error::Domain("restarts must be at least 1".into()));
        }
        if !(self.cooling > 0.0 && self.cooling < 1.0) {
            return Err(Error::Domain(format!(
                "cooling factor {} outside (0, 1)",
                self.cooling
            )));
        }
        if let Some(t) = self.initial_temperature {
            if !(t.is_finite() && t >= 0.0) {
                return Err(Error::Domain(format!(
                    "initial temperature {t} must be finite and non-negative"
                )));
            }
        }
        Ok(())
    }
}

/// A new best objective found during one restart.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceEntry {
    pub restart: u64,
    pub iteration: u64,
    pub max_component_edges: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchResult {
    #[serde(skip)]
    pub best: EdgeColoring,
    pub best_objective: Objective,
    /// Restart that produced `best`.
    pub best_restart: u64,
    pub trace: Vec<TraceEntry>,
    pub evaluations: u64,
}

struct Replica {
    best: Objective,
    colors: Vec<u8>,
    trace: Vec<TraceEntry>,
    evaluations: u64,
}

fn initial_coloring(
    g: &Graph,
    r: usize,
    init: InitStrategy,
    rng: &mut impl Rng,
) -> Result<EdgeColoring> {
    match init {
        InitStrategy::Random => {
            let colors = (0..g.num_edges())
                .map(|_| rng.gen_range(1..=r as u8))
                .collect();
            EdgeColoring::new(r, colors)
        }
        InitStrategy::Gyarfas => induced_coloring(&gyarfas_coloring(g.n(), r)?, g),
    }
}

fn run_replica(g: &Graph, r: usize, params: &SearchParams, restart: u64) -> Result<Replica> {
    let mut rng = RngSeed::new(params.seed)
        .with_stream(params.first_stream + restart)
        .rng();
    let start = initial_coloring(g, r, params.init, &mut rng)?;
    let mut state = ComponentState::new(g, &start);
    let mut best = state.objective();
    let mut colors = start.colors().to_vec();
    let mut trace = vec![TraceEntry {
        restart,
        iteration: 0,
        max_component_edges: best.max_component_edges,
    }];
    let mut current = state.primary();
    let mut temperature = params
        .initial_temperature
        .unwrap_or(0.05 * g.num_edges() as f64);
    let m = g.num_edges();
    for it in 1..=params.iterations {
        let e = rng.gen_range(0..m);
        let old = state.color(e);
        // uniform over the other r - 1 colors
        let mut to = rng.gen_range(1..r as u8);
        if to >= old {
            to += 1;
        }
        state.recolor(e, to);
        let next = state.primary();
        let accept = next <= current || {
            let delta = (next - current) as f64;
            temperature > 0.0 && rng.gen::<f64>() < (-delta / temperature).exp()
        };
        if accept {
            current = next;
            if current <= best.max_component_edges {
                let obj = state.objective();
                if obj < best {
                    if obj.max_component_edges < best.max_component_edges {
                        trace.push(TraceEntry {
                            restart,
                            iteration: it,
                            max_component_edges: obj.max_component_edges,
                        });
                    }
                    best = obj;
                    colors.copy_from_slice(state.colors());
                }
            }
        } else {
            state.recolor(e, old);
        }
        temperature *= params.cooling;
    }
    Ok(Replica {
        best,
        colors,
        trace,
        evaluations: params.iterations + 1,
    })
}

/// Simulated annealing over single-edge recolorings.
///
/// Restarts run independently on their own random streams;
/// the result is the best objective over all restarts, ties going to the lower
/// restart index, so the output does not depend on thread scheduling.
pub fn anneal(g: &Graph, r: usize, params: &SearchParams) -> Result<SearchResult> {
    params.validate()?;
    if g.num_edges() == 0 {
        return Err(Error::NoEdges);
    }
    if !(2..=EdgeColoring::MAX_COLORS).contains(&r) {
        return Err(Error::Domain(format!(
            "color count {r} outside 2..={}",
            EdgeColoring::MAX_COLORS
        )));
    }
    let replicas: Vec<Replica> = (0..params.restarts)
        .into_par_iter()
        .map(|i| run_replica(g, r, params, i))
        .collect::<Result<_>>()?;
    let (best_restart, winner) = replicas
        .iter()
        .enumerate()
        .min_by(|(i, a), (j, b)| a.best.cmp(&b.best).then(i.cmp(j)))
        .expect("at least one restart");
    Ok(SearchResult {
        best: EdgeColoring::new(r, winner.colors.clone())?,
        best_objective: winner.best.clone(),
        best_restart: best_restart as u64,
        trace: replicas
            .iter()
            .flat_map(|x| x.trace.iter().cloned())
            .collect(),
        evaluations: replicas.iter().map(|x| x.evaluations).sum(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adversary::{brute_force_optimum, objective};
    use crate::random::sample_gnp;

    fn params(iterations: u64, restarts: u64, seed: u64) -> SearchParams {
        SearchParams {
            iterations,
            restarts,
            seed,
            ..SearchParams::default()
        }
    }

    #[test]
    fn finds_small_optima() {
        for seed in 0..5 {
            let k4 = anneal(&Graph::complete(4), 2, &params(1000, 1, seed)).unwrap();
            assert_eq!(k4.best_objective.max_component_edges, 3);
        }
        let k3 = anneal(&Graph::complete(3), 3, &params(200, 1, 0)).unwrap();
        assert_eq!(k3.best_objective.max_component_edges, 1);
    }

    #[test]
    fn best_objective_reevaluates_and_is_deterministic() {
        let g = sample_gnp(60, 0.3, RngSeed::new(4));
        let p = params(2000, 4, 9);
        let a = anneal(&g, 3, &p).unwrap();
        assert_eq!(objective(&g, &a.best).unwrap(), a.best_objective);
        let b = anneal(&g, 3, &p).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.evaluations, 4 * 2001);
    }

    #[test]
    fn matches_brute_force_on_small_graphs() {
        let graphs = [
            Graph::complete(5),
            Graph::from_edges(
                6,
                [
                    (0, 1),
                    (1, 2),
                    (2, 3),
                    (3, 4),
                    (4, 5),
                    (5, 0),
                    (0, 3),
                    (1, 4),
                ],
            )
            .unwrap(),
        ];
        for g in &graphs {
            for r in 2..=3 {
                let exact = brute_force_optimum(g, r, u128::MAX).unwrap().objective;
                let found = anneal(g, r, &params(1000, 10, 1)).unwrap().best_objective;
                assert_eq!(found, exact, "r={r}");
            }
        }
    }

    #[test]
    fn gyarfas_start_and_parameter_errors() {
        let g = Graph::complete(16);
        let p = SearchParams {
            init: InitStrategy::Gyarfas,
            iterations: 1,
            ..SearchParams::default()
        };
        let res = anneal(&g, 3, &p).unwrap();
        assert!(res.best_objective.max_component_edges <= 30);
        assert!(anneal(&g, 2, &p).is_err());
        assert_eq!(
            anneal(&Graph::empty(3), 2, &SearchParams::default()).unwrap_err(),
            Error::NoEdges
        );
        let bad = SearchParams {
            cooling: 1.0,
            ..SearchParams::default()
        };
        assert!(anneal(&g, 3, &bad).is_err());
    }
}
