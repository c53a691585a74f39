//! Vertex arrowing decisions.
//!
//! `arrows(G, (a_1,...,a_s))` holds when every s-coloring of the vertices
//! puts an `a_i`-clique inside some color class `i`. The universal form
//! `G -v-> m|p` quantifies over all tuples with `sum(a_i - 1) + 1 = m` and
//! `max(a_i) <= p`. Deciding it only requires the merge-maximal tuples:
//! replacing two parts `a_i, a_j` by `a_i + a_j - 1` weakens the arrowing
//! property, so any tuple is implied by the one it merges into.

use thiserror::Error;

use crate::graph::{Graph, VertexSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArrowError {
    #[error("tuple parts must be at least 2, got {0}")]
    PartTooSmall(usize),
    #[error("tuple must have at least one part")]
    EmptyTuple,
    #[error("arrow parameters must satisfy m >= 2 and p >= 2, got m={m}, p={p}")]
    BadSpec { m: usize, p: usize },
    #[error("class H~({m}|{p}; {q}) with q = m-1 is empty unless m >= p+2")]
    ClassEmpty { m: usize, p: usize, q: usize },
}

/// A sorted clique-size tuple `(a_1,...,a_s)`, `a_1 >= ... >= a_s >= 2`.
///
/// Parts equal to 1 are rejected: a 1-clique is any nonempty class, so such
/// parts add no constraint and contribute nothing to `m`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArrowTuple {
    parts: Vec<usize>,
}

impl ArrowTuple {
    pub fn new(mut parts: Vec<usize>) -> Result<ArrowTuple, ArrowError> {
        if parts.is_empty() {
            return Err(ArrowError::EmptyTuple);
        }
        if let Some(&bad) = parts.iter().find(|&&a| a < 2) {
            return Err(ArrowError::PartTooSmall(bad));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(ArrowTuple { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `m = sum(a_i - 1) + 1`.
    pub fn m(&self) -> usize {
        self.parts.iter().map(|a| a - 1).sum::<usize>() + 1
    }

    /// `p = max(a_i)`.
    pub fn max_part(&self) -> usize {
        self.parts[0]
    }

    /// True when no two parts can merge into a single part `<= p`, i.e.
    /// every pair satisfies `(a_i - 1) + (a_j - 1) > p - 1`.
    pub fn is_merge_maximal(&self, p: usize) -> bool {
        let s = self.parts.len();
        if s < 2 {
            return true;
        }
        // parts are sorted descending, so the two smallest decide
        (self.parts[s - 2] - 1) + (self.parts[s - 1] - 1) > p - 1
    }
}

impl std::fmt::Debug for ArrowTuple {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

/// Parameters of the universal arrowing `m|p`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct ArrowSpec {
    pub m: usize,
    pub p: usize,
}

impl ArrowSpec {
    pub fn new(m: usize, p: usize) -> Result<ArrowSpec, ArrowError> {
        if m < 2 || p < 2 {
            return Err(ArrowError::BadSpec { m, p });
        }
        Ok(ArrowSpec { m, p })
    }

    /// For class queries at q = m-1 the class is nonempty only when
    /// `m >= p + 2`; other q are unconstrained.
    pub fn validate_class_target(&self, q: usize) -> Result<(), ArrowError> {
        if q + 1 == self.m && self.m < self.p + 2 {
            return Err(ArrowError::ClassEmpty {
                m: self.m,
                p: self.p,
                q,
            });
        }
        Ok(())
    }
}

/// All tuples with `sum(a_i - 1) = m - 1` and parts in `[2, p]`, i.e. the
/// integer partitions of `m - 1` into parts `<= p - 1`, each part plus one.
/// Sorted lexicographically on the descending part lists.
pub fn tuples_for(m: usize, p: usize) -> Vec<ArrowTuple> {
    debug_assert!(m >= 2 && p >= 2);
    let mut out = Vec::new();
    let mut current = Vec::new();
    partition_rec(m - 1, p - 1, &mut current, &mut out);
    out.sort();
    out
}

fn partition_rec(rest: usize, max_part: usize, current: &mut Vec<usize>, out: &mut Vec<ArrowTuple>) {
    if rest == 0 {
        out.push(ArrowTuple {
            parts: current.iter().map(|x| x + 1).collect(),
        });
        return;
    }
    let cap = max_part.min(rest);
    for part in (1..=cap).rev() {
        current.push(part);
        partition_rec(rest - part, part, current, out);
        current.pop();
    }
}

/// The merge-maximal subset of `tuples_for(m, p)`. Checking these tuples
/// decides `m|p`; the equivalence with the full set is property-tested.
pub fn reduced_tuples_for(m: usize, p: usize) -> Vec<ArrowTuple> {
    tuples_for(m, p)
        .into_iter()
        .filter(|t| t.is_merge_maximal(p))
        .collect()
}

/// Decides `G -v-> T`. Returns `None` when the arrowing holds, otherwise a
/// witness free coloring (color class per vertex).
pub fn arrows_witness(g: &Graph, tuple: &ArrowTuple) -> Option<Vec<usize>> {
    let n = g.n();
    let parts = tuple.parts();

    // an m-clique cannot be split into classes avoiding all a_i-cliques
    if g.has_clique(tuple.m()) {
        return None;
    }

    let order = g.descending_degree_order();
    let mut classes = vec![0u64; parts.len()];
    if free_coloring_rec(g, parts, &order, 0, &mut classes) {
        let mut colors = vec![0usize; n];
        for (c, &mask) in classes.iter().enumerate() {
            let mut rest = mask;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                colors[v] = c;
            }
        }
        Some(colors)
    } else {
        None
    }
}

/// Decides `G -v-> (a_1,...,a_s)`.
pub fn arrows(g: &Graph, tuple: &ArrowTuple) -> bool {
    arrows_witness(g, tuple).is_none()
}

fn free_coloring_rec(
    g: &Graph,
    parts: &[usize],
    order: &[usize],
    i: usize,
    classes: &mut [u64],
) -> bool {
    if i == order.len() {
        return true;
    }
    let v = order[i];
    let row = g.neighbors(v).bits();
    let mut skipped_empty_part = usize::MAX;
    for c in 0..parts.len() {
        if classes[c] == 0 {
            // classes with equal part sizes are interchangeable while empty
            if parts[c] == skipped_empty_part {
                continue;
            }
            skipped_empty_part = parts[c];
        }
        // placing v creates an a_c-clique in class c only through v itself
        let cand = VertexSet::from_bits(classes[c] & row);
        if !g.has_clique_within(cand, parts[c] - 1) {
            classes[c] |= 1u64 << v;
            if free_coloring_rec(g, parts, order, i + 1, classes) {
                return true;
            }
            classes[c] &= !(1u64 << v);
        }
    }
    false
}

/// Decides `G -v-> m|p` by checking the merge-maximal tuples.
pub fn arrows_uni(g: &Graph, spec: &ArrowSpec) -> bool {
    arrows_uni_over(g, spec, &reduced_tuples_for(spec.m, spec.p))
}

/// Audit variant of [`arrows_uni`] that checks every tuple, not just the
/// merge-maximal ones.
pub fn arrows_uni_full(g: &Graph, spec: &ArrowSpec) -> bool {
    arrows_uni_over(g, spec, &tuples_for(spec.m, spec.p))
}

fn arrows_uni_over(g: &Graph, spec: &ArrowSpec, tuples: &[ArrowTuple]) -> bool {
    if g.has_clique(spec.m) {
        return true;
    }
    // every tuple needs a clique of its largest part somewhere
    if let Some(need) = tuples.iter().map(|t| t.max_part()).max() {
        if !g.has_clique(need) {
            return false;
        }
    }
    tuples.iter().all(|t| arrows(g, t))
}

/// Membership in `H~(m|p; q)`: `G -v-> m|p` and `omega(G) < q`.
pub fn in_class(g: &Graph, spec: &ArrowSpec, q: usize) -> bool {
    !g.has_clique(q) && arrows_uni(g, spec)
}

/// Audit variant of [`in_class`] using the full tuple set.
pub fn in_class_full(g: &Graph, spec: &ArrowSpec, q: usize) -> bool {
    !g.has_clique(q) && arrows_uni_full(g, spec)
}
