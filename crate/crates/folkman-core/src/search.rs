//! Generators for the graph classes: maximal `K_t`-free subsets, `(+K_t)`
//! tests, independent-vertex extension and edge-removal closure.
//!
//! Extension adds `k` pairwise-nonadjacent vertices to a `(+K_{q-1})`-graph
//! `H`, attaching each to a maximal `K_{q-1}`-free subset of `V(H)`; by the
//! correctness theorem for the algorithm this produces exactly the maximal
//! class members with independence number at least `k` (exactly 2 in the
//! restricted mode).
//!
//! Closure walks down from the maximal graphs by single edge deletions.
//! Three facts keep the walk small: arrowing is monotone under edge
//! addition, alpha is monotone under edge deletion, and the `(+K_t)`
//! property is upward closed (a supergraph of a `(+K_t)`-graph on the same
//! vertices is again `(+K_t)`, since common neighborhoods only grow). The
//! last fact means every intermediate between a maximal graph and a
//! `(+K_t)` descendant is itself a `(+K_t)` class member, so the search
//! space is exactly the output set.

use std::collections::HashSet;

use rayon::prelude::*;
use thiserror::Error;

use crate::arrowing::{self, ArrowSpec};
use crate::canon::{canonical_certificate, Certificate};
use crate::graph::{Graph, VertexSet, MAX_VERTICES};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("k must be at least 1")]
    KZero,
    #[error("exactly-two mode requires k = 2, got k = {0}")]
    AlphaModeNeedsK2(usize),
    #[error("exactly-two mode requires every seed to have alpha <= 2")]
    SeedAlphaTooLarge,
    #[error("seeds must all have the same vertex count")]
    MixedSeedOrders,
    #[error("extension to {0} vertices exceeds the 64-vertex cap")]
    CapacityExceeded(usize),
}

/// Independence-number restriction of a stage.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum AlphaMode {
    Unrestricted,
    ExactlyTwo,
}

/// One independent-vertex extension step.
#[derive(Clone, Debug)]
pub struct ExtensionJob {
    /// The `(+K_{q-1})`-graphs of the previous stage.
    pub seeds: Vec<Graph>,
    /// Number of independent vertices to add.
    pub k: usize,
    /// Target arrowing level of the produced class.
    pub spec: ArrowSpec,
    /// Clique bound of the class.
    pub q: usize,
    pub alpha_mode: AlphaMode,
    /// Check membership against the full tuple set instead of the
    /// merge-maximal subset.
    pub audit_full_tuples: bool,
}

/// All maximal `K_t`-free vertex subsets of `h`, in ascending bitmask
/// order. A set qualifies when it spans no `K_t` and every outside vertex
/// would close one.
pub fn maximal_ktfree_subsets(h: &Graph, t: usize) -> Vec<VertexSet> {
    debug_assert!(t >= 2);
    let mut out = Vec::new();
    let mut grow = VertexSet::EMPTY;
    subsets_rec(h, t, 0, &mut grow, &mut out);
    out.sort_unstable_by_key(|s| s.bits());
    out
}

fn subsets_rec(h: &Graph, t: usize, v: usize, grow: &mut VertexSet, out: &mut Vec<VertexSet>) {
    if v == h.n() {
        let s = *grow;
        let maximal = (0..h.n()).all(|u| {
            s.contains(u) || h.has_clique_within(s.intersect(h.neighbors(u)), t - 1)
        });
        if maximal {
            out.push(s);
        }
        return;
    }
    // adding v creates a K_t only through v itself
    if !h.has_clique_within(grow.intersect(h.neighbors(v)), t - 1) {
        *grow = grow.with(v);
        subsets_rec(h, t, v + 1, grow, out);
        *grow = grow.without(v);
    }
    subsets_rec(h, t, v + 1, grow, out);
}

/// True iff adding any missing edge creates a new `t`-clique, i.e. every
/// non-edge has a `(t-2)`-clique in the common neighborhood. Vacuously true
/// for complete graphs.
pub fn is_plus_kt(g: &Graph, t: usize) -> bool {
    debug_assert!(t >= 2);
    for u in 0..g.n() {
        for v in (u + 1)..g.n() {
            if g.has_edge(u, v) {
                continue;
            }
            let common = g.neighbors(u).intersect(g.neighbors(v));
            if !g.has_clique_within(common, t - 2) {
                return false;
            }
        }
    }
    true
}

/// Runs one extension step. Returns the maximal graphs of the target class
/// with independence number at least `k` (exactly 2 in restricted mode),
/// deduplicated, membership-checked, in deterministic order.
pub fn extend_independent(job: &ExtensionJob) -> Result<Vec<Graph>, SearchError> {
    if job.k == 0 {
        return Err(SearchError::KZero);
    }
    if job.alpha_mode == AlphaMode::ExactlyTwo {
        if job.k != 2 {
            return Err(SearchError::AlphaModeNeedsK2(job.k));
        }
        if !job.seeds.iter().all(|h| h.alpha_at_most(2)) {
            return Err(SearchError::SeedAlphaTooLarge);
        }
    }
    let Some(first) = job.seeds.first() else {
        return Ok(Vec::new());
    };
    if job.seeds.iter().any(|h| h.n() != first.n()) {
        return Err(SearchError::MixedSeedOrders);
    }
    let n = first.n() + job.k;
    if n > MAX_VERTICES {
        return Err(SearchError::CapacityExceeded(n));
    }

    let per_seed: Vec<Vec<Graph>> = job
        .seeds
        .par_iter()
        .map(|h| extend_one_seed(h, job))
        .collect();

    let deduped = crate::canon::dedup(per_seed.into_iter().flatten());

    // membership filter last: arrowing dominates the cost
    let kept: Vec<Option<Graph>> = deduped
        .into_par_iter()
        .map(|g| {
            let ok = if job.audit_full_tuples {
                arrowing::arrows_uni_full(&g, &job.spec)
            } else {
                arrowing::arrows_uni(&g, &job.spec)
            };
            ok.then_some(g)
        })
        .collect();
    Ok(kept.into_iter().flatten().collect())
}

fn extend_one_seed(h: &Graph, job: &ExtensionJob) -> Vec<Graph> {
    let t = job.q - 1;
    let subsets = maximal_ktfree_subsets(h, t);
    let m = subsets.len();
    if m == 0 {
        return Vec::new();
    }

    // a candidate is maximal only if each pair of attachment sets shares a
    // K_{q-2}: that is the common neighborhood of the two new vertices
    let mut pair_ok = vec![true; m * m];
    for i in 0..m {
        for j in i..m {
            let ok = h.has_clique_within(subsets[i].intersect(subsets[j]), job.q - 2);
            pair_ok[i * m + j] = ok;
            pair_ok[j * m + i] = ok;
        }
    }

    let mut out = Vec::new();
    let mut choice = vec![0usize; job.k];
    combos_rec(h, job, &subsets, &pair_ok, 0, 0, &mut choice, &mut out);
    out
}

fn combos_rec(
    h: &Graph,
    job: &ExtensionJob,
    subsets: &[VertexSet],
    pair_ok: &[bool],
    depth: usize,
    start: usize,
    choice: &mut [usize],
    out: &mut Vec<Graph>,
) {
    if depth == job.k {
        let g = attach_vertices(h, subsets, choice);
        debug_assert!(!g.has_clique(job.q));
        if !is_plus_kt(&g, job.q) {
            return;
        }
        if job.alpha_mode == AlphaMode::ExactlyTwo && !g.alpha_at_most(2) {
            return;
        }
        out.push(g);
        return;
    }
    let m = subsets.len();
    'next: for i in start..m {
        for &prev in &choice[..depth] {
            if !pair_ok[prev * m + i] {
                continue 'next;
            }
        }
        choice[depth] = i;
        combos_rec(h, job, subsets, pair_ok, depth + 1, i, choice, out);
    }
}

fn attach_vertices(h: &Graph, subsets: &[VertexSet], choice: &[usize]) -> Graph {
    let mut edges = h.edges();
    for (j, &i) in choice.iter().enumerate() {
        let v = h.n() + j;
        for u in subsets[i].iter() {
            edges.push((u, v));
        }
    }
    Graph::from_edges(h.n() + choice.len(), &edges).expect("extension stays under the vertex cap")
}

/// Collects every `(+K_{plus_t})`-graph of the class that lies under one of
/// the maximal graphs, by breadth-first single-edge deletions with
/// isomorph rejection per edge-count level. Output in ascending
/// certificate order, independent of scheduling.
pub fn edge_removal_closure(
    maximal: &[Graph],
    spec: &ArrowSpec,
    q: usize,
    plus_t: usize,
    alpha_mode: AlphaMode,
    audit_full_tuples: bool,
) -> Vec<Graph> {
    let member_ok = |g: &Graph| -> bool {
        if !is_plus_kt(g, plus_t) {
            return false;
        }
        match alpha_mode {
            AlphaMode::Unrestricted => {}
            AlphaMode::ExactlyTwo => {
                if !g.alpha_at_most(2) || g.alpha_at_most(1) {
                    return false;
                }
            }
        }
        if audit_full_tuples {
            arrowing::in_class_full(g, spec, q)
        } else {
            arrowing::in_class(g, spec, q)
        }
    };

    // levels keyed by edge count; a graph and all its parents live on
    // adjacent levels, so only two levels are alive at a time
    let mut levels: Vec<HashSet<Certificate>> = Vec::new();
    let grow = |levels: &mut Vec<HashSet<Certificate>>, e: usize, c: Certificate| {
        if levels.len() <= e {
            levels.resize_with(e + 1, HashSet::new);
        }
        levels[e].insert(c);
    };

    for g in maximal {
        if member_ok(g) {
            grow(&mut levels, g.edge_count(), canonical_certificate(g));
        }
    }

    let mut collected: Vec<Certificate> = Vec::new();
    let mut level = levels.len();
    while level > 0 {
        level -= 1;
        if levels.len() <= level || levels[level].is_empty() {
            continue;
        }
        let mut frontier: Vec<Certificate> = levels[level].drain().collect();
        frontier.sort_unstable();

        let children: Vec<Vec<Certificate>> = frontier
            .par_iter()
            .map(|cert| {
                let g = cert.to_graph();
                let mut out = Vec::new();
                for (u, v) in g.edges() {
                    let child = g.remove_edge(u, v).expect("edge listed");
                    if member_ok(&child) {
                        out.push(canonical_certificate(&child));
                    }
                }
                out
            })
            .collect();

        collected.append(&mut frontier);
        if level > 0 {
            for c in children.into_iter().flatten() {
                grow(&mut levels, level - 1, c);
            }
        }
    }

    collected.sort_unstable();
    collected.dedup();
    collected.iter().map(Certificate::to_graph).collect()
}
