//! Staged computations: exhaustive base cases, schedule execution, count
//! verification, brute-force Folkman oracles, the join lift and the final
//! theorem report.

mod manifest;
mod report;
mod runner;
mod schedule;
mod verify;

pub use manifest::{sha256_bytes, sha256_file, Manifest, StageRecord};
pub use report::{report_main_theorem, TheoremReport};
pub use runner::{run_schedule, RunOptions};
pub use schedule::{Schedule, StageKind, StageSpec};
pub use verify::{
    parse_expected, verify_tables, AlphaFilter, CellOutcome, ExpectedRow, RowResult, VerifyReport,
};

use rayon::prelude::*;
use thiserror::Error;

use crate::arrowing::{self, ArrowError, ArrowSpec, ArrowTuple};
use crate::canon;
use crate::graph::{Graph, GraphError};
use crate::search::{self, AlphaMode};

/// Largest order for which base classes are enumerated over all labeled
/// graphs.
pub const MAX_EXHAUSTIVE_VERTICES: usize = 8;

/// Largest order accepted by [`brute_force_folkman`].
pub const MAX_BRUTE_FORCE_VERTICES: usize = 7;

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("exhaustive enumeration supports at most {max} vertices, got {n} (and no structural shortcut applies)", max = MAX_EXHAUSTIVE_VERTICES)]
    TooLargeForExhaustive { n: usize },
    #[error("brute-force search supports at most {max} vertices, got {n}", max = MAX_BRUTE_FORCE_VERTICES)]
    TooLargeForBruteForce { n: usize },
    #[error("lift input is not in H~({m}|{p}; {q})", m = spec.m, p = spec.p)]
    LiftInputNotInClass { spec: ArrowSpec, q: usize },
    #[error("lift verification failed: join is not in H~({m}|{p}; {q})", m = spec.m, p = spec.p)]
    LiftVerificationFailed { spec: ArrowSpec, q: usize },
    #[error("lift requires t >= 1")]
    LiftWithoutApex,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Arrow(#[from] ArrowError),
    #[error(transparent)]
    Search(#[from] crate::search::SearchError),
    #[error(transparent)]
    Schedule(#[from] schedule::ScheduleError),
    #[error(transparent)]
    StageFile(#[from] crate::g6::StageFileError),
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("manifest error: {0}")]
    Manifest(String),
    #[error("stage {stage}: input stage {input} was not run")]
    MissingInput { stage: String, input: String },
}

/// All `(+K_{plus_t})`-graphs in `H~(m|p; q; n)` (with the independence
/// filter of `alpha_mode`), one representative per isomorphism class.
///
/// Orders up to [`MAX_EXHAUSTIVE_VERTICES`] are enumerated over all
/// labeled graphs. Above that, two degenerate shapes are still exact: on
/// `n = plus_t` vertices the only `(+K_{plus_t})`-graphs are the complete
/// graph and the complete graph minus one edge (a missing edge can only
/// complete a `plus_t`-clique if every other pair is adjacent), and on
/// `n < plus_t` vertices only the complete graph qualifies (no added edge
/// can create a `plus_t`-clique at all, so no edge may be missing).
pub fn base_enumerate(
    spec: &ArrowSpec,
    q: usize,
    n: usize,
    plus_t: usize,
    alpha_mode: AlphaMode,
    audit_full_tuples: bool,
) -> Result<Vec<Graph>, PipelineError> {
    let keep = |g: &Graph| -> bool {
        if !search::is_plus_kt(g, plus_t) || g.has_clique(q) {
            return false;
        }
        if alpha_mode == AlphaMode::ExactlyTwo && !g.alpha_at_most(2) {
            return false;
        }
        if audit_full_tuples {
            arrowing::arrows_uni_full(g, spec)
        } else {
            arrowing::arrows_uni(g, spec)
        }
    };

    if n > MAX_EXHAUSTIVE_VERTICES {
        let candidates: Vec<Graph> = if n == plus_t {
            let kn = Graph::complete(n)?;
            let kn_e = kn.remove_edge(0, 1)?;
            vec![kn, kn_e]
        } else if n < plus_t {
            vec![Graph::complete(n)?]
        } else {
            return Err(PipelineError::TooLargeForExhaustive { n });
        };
        return Ok(candidates.into_iter().filter(|g| keep(g)).collect());
    }

    if n == 1 {
        let g = Graph::complete(1)?;
        return Ok(if keep(&g) { vec![g] } else { Vec::new() });
    }

    let nbits = n * (n - 1) / 2;
    let pairs: Vec<(usize, usize)> = {
        let mut v = Vec::with_capacity(nbits);
        for a in 0..n {
            for b in (a + 1)..n {
                v.push((a, b));
            }
        }
        v
    };

    let total: u64 = 1u64 << nbits;
    let chunks = (rayon::current_num_threads() * 8).max(1) as u64;
    let chunk_len = total.div_ceil(chunks);
    let survivors: Vec<Vec<u64>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let lo = c * chunk_len;
            let hi = (lo + chunk_len).min(total);
            let mut rows = [0u64; 8];
            let mut out = Vec::new();
            for mask in lo..hi {
                rows[..n].fill(0);
                let mut rest = mask;
                while rest != 0 {
                    let idx = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    let (a, b) = pairs[idx];
                    rows[a] |= 1 << b;
                    rows[b] |= 1 << a;
                }
                let g = Graph::from_rows(n, &rows[..n]);
                if keep(&g) {
                    out.push(mask);
                }
            }
            out
        })
        .collect();

    let graphs = survivors.into_iter().flatten().map(|mask| {
        let mut rows = [0u64; 8];
        let mut rest = mask;
        while rest != 0 {
            let idx = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let (a, b) = pairs[idx];
            rows[a] |= 1 << b;
            rows[b] |= 1 << a;
        }
        Graph::from_rows(n, &rows[..n])
    });
    Ok(canon::dedup(graphs))
}

/// Result of a brute-force Folkman number search.
#[derive(Debug, Clone)]
pub struct FolkmanResult {
    /// The least order admitting a graph with `omega < q` that arrows the
    /// tuple, or `None` if no order up to `n_max` does.
    pub value: Option<usize>,
    /// All extremal isomorphism classes at that order.
    pub extremal: Vec<Graph>,
}

/// Computes `F_v(a_1,...,a_s; q)` restricted to `n <= n_max` by plain
/// enumeration of all labeled graphs. Independent of the staged search: it
/// relies only on the graph kernels and the arrowing decision.
pub fn brute_force_folkman(
    tuple: &ArrowTuple,
    q: usize,
    n_max: usize,
) -> Result<FolkmanResult, PipelineError> {
    if n_max > MAX_BRUTE_FORCE_VERTICES {
        return Err(PipelineError::TooLargeForBruteForce { n: n_max });
    }
    for n in 1..=n_max {
        let extremal = folkman_graphs_at(tuple, q, n);
        if !extremal.is_empty() {
            return Ok(FolkmanResult {
                value: Some(n),
                extremal,
            });
        }
    }
    Ok(FolkmanResult {
        value: None,
        extremal: Vec::new(),
    })
}

fn folkman_graphs_at(tuple: &ArrowTuple, q: usize, n: usize) -> Vec<Graph> {
    let mut pairs = Vec::new();
    for a in 0..n {
        for b in (a + 1)..n {
            pairs.push((a, b));
        }
    }
    let total: u64 = 1u64 << pairs.len();
    let hits: Vec<Graph> = (0..total)
        .into_par_iter()
        .filter_map(|mask| {
            let mut edges = Vec::new();
            for (idx, &(a, b)) in pairs.iter().enumerate() {
                if mask & (1 << idx) != 0 {
                    edges.push((a, b));
                }
            }
            let g = Graph::from_edges(n, &edges).expect("enumerated edges are valid");
            (!g.has_clique(q) && arrowing::arrows(&g, tuple)).then_some(g)
        })
        .collect();
    canon::dedup(hits)
}

/// Joins `K_t` onto a member of `H~(m|p; q)` and verifies that the result
/// lies in `H~(m+t|p; q+t)`. Verification failure is an error, never a
/// silent pass.
pub fn lift_upper_bound(
    g: &Graph,
    t: usize,
    spec: &ArrowSpec,
    q: usize,
) -> Result<Graph, PipelineError> {
    if t == 0 {
        return Err(PipelineError::LiftWithoutApex);
    }
    if !arrowing::in_class(g, spec, q) {
        return Err(PipelineError::LiftInputNotInClass { spec: *spec, q });
    }
    let lifted = Graph::complete(t)?.join(g)?;
    let lifted_spec = ArrowSpec::new(spec.m + t, spec.p)?;
    if !arrowing::in_class(&lifted, &lifted_spec, q + t) {
        return Err(PipelineError::LiftVerificationFailed {
            spec: lifted_spec,
            q: q + t,
        });
    }
    Ok(lifted)
}
