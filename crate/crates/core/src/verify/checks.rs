use super::{CheckOutcome, Witness};
use crate::error::{Error, Result};
use crate::graph::{
    binomial2, monochromatic_components, multipartite_counts, EdgeColoring, Graph, PartStructure,
};
use crate::ratio::{fmt, int, Rational};

fn one() -> Rational {
    Rational::from_integer(1)
}

/// The largest connected component of `h` by edge count.
pub fn largest_component(h: &Graph) -> Option<Witness> {
    let single = EdgeColoring::constant(1, h.num_edges(), 1).expect("one color");
    let report = monochromatic_components(h, &single).expect("coloring sized to graph");
    report.largest.map(|c| Witness {
        edges: c.edges,
        vertices: c.vertices,
        min_vertex: c.min_vertex,
    })
}

/// `e_M(S, T)^2 >= 4 e_M(S) e_M(T)` in the complete multipartite graph of `parts`.
pub fn check_pair_inequality(
    parts: &PartStructure,
    s: &[usize],
    t: &[usize],
) -> Result<CheckOutcome> {
    let c = multipartite_counts(parts, s, t)?;
    let lhs = int(c.between) * int(c.between);
    let rhs = int(4) * int(c.within_s) * int(c.within_t);
    Ok(CheckOutcome::at_least(
        "pair_inequality",
        lhs,
        rhs,
        format!(
            "n={} blocks={} |S|={} |T|={} e_M(S,T)={} e_M(S)={} e_M(T)={}",
            parts.n(),
            parts.num_blocks(),
            s.len(),
            t.len(),
            c.between,
            c.within_s,
            c.within_t
        ),
    ))
}

fn ensure_crossing(h: &Graph, parts: &PartStructure) -> Result<()> {
    if h.n() != parts.n() {
        return Err(Error::VertexCountMismatch {
            expected: parts.n(),
            found: h.n(),
        });
    }
    match h.edges().iter().find(|&&(u, v)| !parts.crosses(u, v)) {
        Some(&(u, v)) => Err(Error::EdgeInsideBlock(u, v)),
        None => Ok(()),
    }
}

/// Some component `H'` of `H ⊆ M` has `e(H') e(M) >= e(H)^2`.
pub fn check_component_density(parts: &PartStructure, h: &Graph) -> Result<CheckOutcome> {
    ensure_crossing(h, parts)?;
    let e_m = parts.num_edges();
    let e_h = h.num_edges() as u64;
    let witness = largest_component(h);
    let best = witness.map_or(0, |w| w.edges);
    Ok(CheckOutcome::at_least(
        "component_density",
        int(best) * int(e_m),
        int(e_h) * int(e_h),
        format!(
            "n={} blocks={} e(M)={e_m} e(H)={e_h} e(H')={best}",
            parts.n(),
            parts.num_blocks()
        ),
    )
    .with_witness(witness))
}

/// The graphs `H` whose density is controlled: a clique on a vertex subset or
/// the complete multipartite graph of a partition of all vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HostSpec {
    Clique(Vec<usize>),
    Multipartite(PartStructure),
}

/// `(1 - eps) p e(H) <= e(H ∩ G) <= (1 + eps) p e(H)` for a dense enough `H`.
pub fn check_density_control(
    g: &Graph,
    h: &HostSpec,
    p: Rational,
    eps: Rational,
) -> Result<CheckOutcome> {
    let n = g.n();
    let (e_h, e_hg, shape) = match h {
        HostSpec::Clique(s) => {
            let mask = g.membership(s)?;
            let size = mask.iter().filter(|&&b| b).count() as u64;
            let dedup: Vec<usize> = (0..n).filter(|&v| mask[v]).collect();
            (
                binomial2(size),
                g.count_edges_within(&dedup)?,
                format!("clique |S|={size}"),
            )
        }
        HostSpec::Multipartite(parts) => {
            if parts.n() != n {
                return Err(Error::VertexCountMismatch {
                    expected: n,
                    found: parts.n(),
                });
            }
            let crossing = g
                .edges()
                .iter()
                .filter(|&&(u, v)| parts.crosses(u, v))
                .count() as u64;
            (
                parts.num_edges(),
                crossing,
                format!("multipartite blocks={}", parts.num_blocks()),
            )
        }
    };
    let floor = eps * int(binomial2(n as u64));
    if int(e_h) < floor {
        return Err(Error::DensityPreconditionViolated {
            edges: e_h,
            required: fmt(&floor),
        });
    }
    let mu = p * int(e_h);
    let context = format!(
        "n={n} {shape} e(H)={e_h} e(H∩G)={e_hg} p={} eps={}",
        fmt(&p),
        fmt(&eps)
    );
    let lower = CheckOutcome::at_least(
        "density_control",
        int(e_hg),
        (one() - eps) * mu,
        context.clone(),
    );
    let upper = CheckOutcome::at_least("density_control", (one() + eps) * mu, int(e_hg), context);
    // report the failing side, otherwise the tighter one
    Ok(match (lower.holds, upper.holds) {
        (false, _) => lower,
        (_, false) => upper,
        _ if lower.margin <= upper.margin => lower,
        _ => upper,
    })
}

/// For `H = G[S]` with average degree at least `c0 p (n - 1)`:
/// `|S| > d(H) (1 - eps) n / (p (n - 1))`. Vacuous below the degree floor.
pub fn check_degree_bound(
    g: &Graph,
    s: &[usize],
    p: Rational,
    eps: Rational,
    c0: Rational,
) -> Result<CheckOutcome> {
    let mask = g.membership(s)?;
    let size = mask.iter().filter(|&&b| b).count() as u64;
    if size == 0 {
        return Err(Error::EmptySet);
    }
    let set: Vec<usize> = (0..g.n()).filter(|&v| mask[v]).collect();
    let e = g.count_edges_within(&set)?;
    let n = g.n() as u64;
    let avg_degree = Rational::new(2 * e as i128, size as i128);
    let context = format!(
        "n={n} |S|={size} e(G[S])={e} p={} eps={} c0={}",
        fmt(&p),
        fmt(&eps),
        fmt(&c0)
    );
    let floor = c0 * p * int(n - 1);
    if avg_degree < floor {
        return Ok(CheckOutcome::vacuous(
            "degree_bound",
            avg_degree,
            floor,
            context,
        ));
    }
    let required = avg_degree * (one() - eps) * int(n) / (p * int(n - 1));
    Ok(CheckOutcome::greater(
        "degree_bound",
        int(size),
        required,
        context,
    ))
}

/// Ordered crossing pairs and crossing edges of `g` restricted to the sets.
struct SparseCounts {
    between: u64,
    within_s: u64,
    within_t: u64,
}

fn sparse_counts(g: &Graph, parts: &PartStructure, in_s: &[bool], in_t: &[bool]) -> SparseCounts {
    let mut out = SparseCounts {
        between: 0,
        within_s: 0,
        within_t: 0,
    };
    for &(u, v) in g.edges() {
        if !parts.crosses(u, v) {
            continue;
        }
        out.between += (in_s[u] && in_t[v]) as u64 + (in_s[v] && in_t[u]) as u64;
        out.within_s += (in_s[u] && in_s[v]) as u64;
        out.within_t += (in_t[u] && in_t[v]) as u64;
    }
    out
}

/// With `G' = G ∩ M` and `e_M(S, T) >= c n^2`:
/// `e_G'(S, T) >= (1 - eps) p e_M(S, T)` and
/// `e_G'(S, T)^2 >= 4 (1 - eps) e_G'(S) e_G'(T)`.
pub fn check_sparse_pair_inequality(
    g: &Graph,
    parts: &PartStructure,
    s: &[usize],
    t: &[usize],
    p: Rational,
    eps: Rational,
    c: Rational,
) -> Result<CheckOutcome> {
    if parts.n() != g.n() {
        return Err(Error::VertexCountMismatch {
            expected: g.n(),
            found: parts.n(),
        });
    }
    let n = g.n() as u64;
    let m = multipartite_counts(parts, s, t)?;
    let floor = c * int(n * n);
    if int(m.between) < floor {
        return Err(Error::PreconditionViolated(format!(
            "e_M(S,T) = {} < c n^2 = {}",
            m.between,
            fmt(&floor)
        )));
    }
    let in_s = g.membership(s)?;
    let in_t = g.membership(t)?;
    let sc = sparse_counts(g, parts, &in_s, &in_t);
    let context = format!(
        "n={n} blocks={} e_M(S,T)={} e_G'(S,T)={} e_G'(S)={} e_G'(T)={} p={} eps={}",
        parts.num_blocks(),
        m.between,
        sc.between,
        sc.within_s,
        sc.within_t,
        fmt(&p),
        fmt(&eps)
    );
    let first = CheckOutcome::at_least(
        "sparse_pair_inequality",
        int(sc.between),
        (one() - eps) * p * int(m.between),
        context.clone(),
    );
    if !first.holds {
        return Ok(first);
    }
    Ok(CheckOutcome::at_least(
        "sparse_pair_inequality",
        int(sc.between) * int(sc.between),
        int(4) * (one() - eps) * int(sc.within_s) * int(sc.within_t),
        context,
    ))
}

/// With `G' = G ∩ M`, every block of size at most `(1 - c1) n`,
/// `H ⊆ G'` and `e(H) / e(G') >= c2`: some component `H'` of `H` has
/// `e(H') e(G') >= (1 - eps) e(H)^2`.
pub fn check_sparse_component_density(
    g: &Graph,
    parts: &PartStructure,
    h: &Graph,
    eps: Rational,
    c1: Rational,
    c2: Rational,
) -> Result<CheckOutcome> {
    let n = g.n();
    if parts.n() != n || h.n() != n {
        return Err(Error::VertexCountMismatch {
            expected: n,
            found: if parts.n() != n { parts.n() } else { h.n() },
        });
    }
    let cap = (one() - c1) * int(n as u64);
    if int(parts.max_block_size() as u64) > cap {
        return Err(Error::PreconditionViolated(format!(
            "block of size {} exceeds (1 - c1) n = {}",
            parts.max_block_size(),
            fmt(&cap)
        )));
    }
    if let Some(&(u, v)) = h
        .edges()
        .iter()
        .find(|&&(u, v)| !parts.crosses(u, v) || !g.has_edge(u, v))
    {
        return Err(Error::PreconditionViolated(format!(
            "edge ({u}, {v}) of H is not an edge of G ∩ M"
        )));
    }
    let e_gp = g
        .edges()
        .iter()
        .filter(|&&(u, v)| parts.crosses(u, v))
        .count() as u64;
    let e_h = h.num_edges() as u64;
    if e_gp == 0 || Rational::new(e_h as i128, e_gp as i128) < c2 {
        return Err(Error::PreconditionViolated(format!(
            "e(H) / e(G') = {e_h}/{e_gp} below c2 = {}",
            fmt(&c2)
        )));
    }
    let witness = largest_component(h);
    let best = witness.map_or(0, |w| w.edges);
    Ok(CheckOutcome::at_least(
        "sparse_component_density",
        int(best) * int(e_gp),
        (one() - eps) * int(e_h) * int(e_h),
        format!(
            "n={n} blocks={} e(G')={e_gp} e(H)={e_h} e(H')={best} eps={}",
            parts.num_blocks(),
            fmt(&eps)
        ),
    )
    .with_witness(witness))
}
