//! Bitset graph kernels: exact clique, independence and coloring
//! computations for simple undirected graphs on at most 64 vertices.
//!
//! Every graph stores one `u64` adjacency row per vertex, so neighborhood
//! intersections, clique tests and subset iteration are single-word
//! operations. Graphs are immutable values; edits return new graphs.

use std::fmt;

use thiserror::Error;

/// One adjacency row per machine word.
pub const MAX_VERTICES: usize = 64;

/// Default vertex cap for exact chromatic-number computation.
pub const DEFAULT_CHI_CAP: usize = 20;

#[inline(always)]
const fn bit(v: usize) -> u64 {
    1u64 << v
}

#[inline(always)]
const fn low_bits(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Errors from graph constructors and edits.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex count {0} out of range 1..=64")]
    BadOrder(usize),
    #[error("vertex {vertex} out of range for a graph on {order} vertices")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("loop edge ({0},{0}) rejected")]
    LoopEdge(usize),
    #[error("edge ({0},{1}) already present")]
    EdgePresent(usize, usize),
    #[error("edge ({0},{1}) not present")]
    EdgeAbsent(usize, usize),
    #[error("result would have {0} > 64 vertices")]
    CapacityExceeded(usize),
    #[error("cannot delete all {0} vertices")]
    DeleteAll(usize),
    #[error("cycle length {0} must be at least 3")]
    BadCycle(usize),
    #[error("complete-minus-cycle requires m >= p+1 and p >= 2, got m={m}, p={p}")]
    BadMinusCycle { m: usize, p: usize },
}

/// Subset of the vertices of a host graph, stored as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    #[inline(always)]
    pub const fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub fn from_vertices(vs: &[usize]) -> Self {
        let mut bits = 0u64;
        for &v in vs {
            debug_assert!(v < MAX_VERTICES);
            bits |= bit(v);
        }
        VertexSet(bits)
    }

    /// All vertices of a graph on `n` vertices.
    #[inline(always)]
    pub const fn full(n: usize) -> Self {
        VertexSet(low_bits(n))
    }

    #[inline(always)]
    pub const fn bits(self) -> u64 {
        self.0
    }

    #[inline(always)]
    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline(always)]
    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline(always)]
    pub const fn contains(self, v: usize) -> bool {
        self.0 & bit(v) != 0
    }

    #[inline(always)]
    pub const fn with(self, v: usize) -> Self {
        VertexSet(self.0 | bit(v))
    }

    #[inline(always)]
    pub const fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !bit(v))
    }

    #[inline(always)]
    pub const fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    #[inline(always)]
    pub const fn intersect(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    #[inline(always)]
    pub const fn is_subset_of(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// Iterates members in ascending order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(v)
            }
        })
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut bits = 0u64;
        for v in iter {
            debug_assert!(v < MAX_VERTICES);
            bits |= bit(v);
        }
        VertexSet(bits)
    }
}

/// Simple undirected graph on `n <= 64` vertices.
///
/// Invariants: adjacency is symmetric, the diagonal is zero, and all bits
/// at positions `>= n` are zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: [u64; MAX_VERTICES],
}

impl Graph {
    fn empty_order(n: usize) -> Result<Graph, GraphError> {
        if n == 0 || n > MAX_VERTICES {
            return Err(GraphError::BadOrder(n));
        }
        Ok(Graph {
            n,
            adj: [0u64; MAX_VERTICES],
        })
    }

    /// Builds a graph directly from adjacency rows. The rows must already
    /// satisfy the representation invariants.
    pub(crate) fn from_rows(n: usize, rows: &[u64]) -> Graph {
        debug_assert!(n >= 1 && n <= MAX_VERTICES && rows.len() == n);
        let mut adj = [0u64; MAX_VERTICES];
        adj[..n].copy_from_slice(rows);
        let g = Graph { n, adj };
        debug_assert!(g.is_valid());
        g
    }

    /// Builds a graph from an explicit edge list. Duplicate edges collapse.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut g = Graph::empty_order(n)?;
        for &(u, v) in edges {
            if u >= n {
                return Err(GraphError::VertexOutOfRange { vertex: u, order: n });
            }
            if v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: v, order: n });
            }
            if u == v {
                return Err(GraphError::LoopEdge(u));
            }
            g.adj[u] |= bit(v);
            g.adj[v] |= bit(u);
        }
        debug_assert!(g.is_valid());
        Ok(g)
    }

    /// Edgeless graph on `n` vertices.
    pub fn edgeless(n: usize) -> Result<Graph, GraphError> {
        Graph::empty_order(n)
    }

    /// Complete graph `K_n`.
    pub fn complete(n: usize) -> Result<Graph, GraphError> {
        let mut g = Graph::empty_order(n)?;
        let full = low_bits(n);
        for v in 0..n {
            g.adj[v] = full & !bit(v);
        }
        debug_assert!(g.is_valid());
        Ok(g)
    }

    /// Cycle `C_n` with edges `(i, i+1 mod n)`.
    pub fn cycle(n: usize) -> Result<Graph, GraphError> {
        if n < 3 {
            return Err(GraphError::BadCycle(n));
        }
        let mut g = Graph::empty_order(n)?;
        for v in 0..n {
            let w = (v + 1) % n;
            g.adj[v] |= bit(w);
            g.adj[w] |= bit(v);
        }
        debug_assert!(g.is_valid());
        Ok(g)
    }

    /// `K_{m+p} - C_{2p+1}`: the complete graph on `m+p` vertices with the
    /// cycle through vertices `0..2p+1` removed. Requires `m >= p+1`,
    /// `p >= 2`.
    pub fn complete_minus_cycle(m: usize, p: usize) -> Result<Graph, GraphError> {
        if p < 2 || m < p + 1 {
            return Err(GraphError::BadMinusCycle { m, p });
        }
        let n = m + p;
        let mut g = Graph::complete(n)?;
        let c = 2 * p + 1;
        for v in 0..c {
            let w = (v + 1) % c;
            g.adj[v] &= !bit(w);
            g.adj[w] &= !bit(v);
        }
        debug_assert!(g.is_valid());
        Ok(g)
    }

    /// Edge-complement on the same vertex set.
    pub fn complement(&self) -> Graph {
        let full = low_bits(self.n);
        let mut g = Graph {
            n: self.n,
            adj: [0u64; MAX_VERTICES],
        };
        for v in 0..self.n {
            g.adj[v] = full & !self.adj[v] & !bit(v);
        }
        debug_assert!(g.is_valid());
        g
    }

    /// Disjoint union plus all cross edges. The vertices of `other` are
    /// shifted up by `self.n()`.
    pub fn join(&self, other: &Graph) -> Result<Graph, GraphError> {
        let n = self.n + other.n;
        if n > MAX_VERTICES {
            return Err(GraphError::CapacityExceeded(n));
        }
        let left = low_bits(self.n);
        let right = low_bits(n) & !left;
        let mut g = Graph {
            n,
            adj: [0u64; MAX_VERTICES],
        };
        for v in 0..self.n {
            g.adj[v] = self.adj[v] | right;
        }
        for w in 0..other.n {
            g.adj[self.n + w] = (other.adj[w] << self.n) | left;
        }
        debug_assert!(g.is_valid());
        Ok(g)
    }

    #[inline(always)]
    pub fn n(&self) -> usize {
        self.n
    }

    /// All vertices as a set.
    #[inline(always)]
    pub fn vertices(&self) -> VertexSet {
        VertexSet(low_bits(self.n))
    }

    #[inline(always)]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        debug_assert!(v < self.n);
        VertexSet(self.adj[v])
    }

    #[inline(always)]
    pub fn degree(&self, v: usize) -> usize {
        debug_assert!(v < self.n);
        self.adj[v].count_ones() as usize
    }

    #[inline(always)]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        debug_assert!(u < self.n && v < self.n);
        self.adj[u] & bit(v) != 0
    }

    pub fn edge_count(&self) -> usize {
        self.adj[..self.n]
            .iter()
            .map(|row| row.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            let mut row = self.adj[u] & !low_bits(u + 1);
            while row != 0 {
                let v = row.trailing_zeros() as usize;
                row &= row - 1;
                out.push((u, v));
            }
        }
        out
    }

    /// Non-edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn non_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if self.adj[u] & bit(v) == 0 {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Returns a copy with the edge `(u, v)` added.
    pub fn add_edge(&self, u: usize, v: usize) -> Result<Graph, GraphError> {
        self.check_pair(u, v)?;
        if self.has_edge(u, v) {
            return Err(GraphError::EdgePresent(u, v));
        }
        let mut g = self.clone();
        g.adj[u] |= bit(v);
        g.adj[v] |= bit(u);
        Ok(g)
    }

    /// Returns a copy with the edge `(u, v)` removed.
    pub fn remove_edge(&self, u: usize, v: usize) -> Result<Graph, GraphError> {
        self.check_pair(u, v)?;
        if !self.has_edge(u, v) {
            return Err(GraphError::EdgeAbsent(u, v));
        }
        let mut g = self.clone();
        g.adj[u] &= !bit(v);
        g.adj[v] &= !bit(u);
        Ok(g)
    }

    fn check_pair(&self, u: usize, v: usize) -> Result<(), GraphError> {
        for w in [u, v] {
            if w >= self.n {
                return Err(GraphError::VertexOutOfRange {
                    vertex: w,
                    order: self.n,
                });
            }
        }
        if u == v {
            return Err(GraphError::LoopEdge(u));
        }
        Ok(())
    }

    /// Induced subgraph on `V \ drop`, with the kept vertices renumbered to
    /// `0..` preserving their relative order.
    pub fn delete_vertices(&self, drop: VertexSet) -> Result<Graph, GraphError> {
        let out_of_range = drop.bits() & !low_bits(self.n);
        if out_of_range != 0 {
            return Err(GraphError::VertexOutOfRange {
                vertex: out_of_range.trailing_zeros() as usize,
                order: self.n,
            });
        }
        let keep = low_bits(self.n) & !drop.bits();
        if keep == 0 {
            return Err(GraphError::DeleteAll(self.n));
        }
        let mut map = [0usize; MAX_VERTICES];
        let mut new_n = 0usize;
        for v in 0..self.n {
            if keep & bit(v) != 0 {
                map[v] = new_n;
                new_n += 1;
            }
        }
        let mut g = Graph {
            n: new_n,
            adj: [0u64; MAX_VERTICES],
        };
        for v in 0..self.n {
            if keep & bit(v) == 0 {
                continue;
            }
            let mut row = self.adj[v] & keep;
            while row != 0 {
                let w = row.trailing_zeros() as usize;
                row &= row - 1;
                g.adj[map[v]] |= bit(map[w]);
            }
        }
        debug_assert!(g.is_valid());
        Ok(g)
    }

    /// Applies a relabeling: vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        debug_assert_eq!(perm.len(), self.n);
        let mut g = Graph {
            n: self.n,
            adj: [0u64; MAX_VERTICES],
        };
        for u in 0..self.n {
            let nu = perm[u];
            let mut row = self.adj[u];
            while row != 0 {
                let v = row.trailing_zeros() as usize;
                row &= row - 1;
                g.adj[nu] |= bit(perm[v]);
            }
        }
        debug_assert!(g.is_valid());
        g
    }

    /// True iff the vertices of `within` contain a clique of size `k`.
    #[inline]
    pub fn has_clique_within(&self, within: VertexSet, k: usize) -> bool {
        has_clique_rec(&self.adj, within.bits() & low_bits(self.n), k)
    }

    /// True iff `omega(G) >= t`, with early exit.
    pub fn has_clique(&self, t: usize) -> bool {
        self.has_clique_within(self.vertices(), t)
    }

    /// Exact clique number via branch-and-bound; root vertices are expanded
    /// in descending-degree order.
    pub fn clique_number(&self) -> usize {
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by_key(|&v| std::cmp::Reverse(self.adj[v].count_ones()));
        let mut best = 0usize;
        let mut seen = 0u64;
        for &v in &order {
            grow_clique(&self.adj, self.adj[v] & !seen, 1, &mut best);
            seen |= bit(v);
        }
        best
    }

    /// `alpha(G) = omega(complement(G))`.
    pub fn independence_number(&self) -> usize {
        self.complement().clique_number()
    }

    /// True iff `alpha(G) <= k`.
    pub fn alpha_at_most(&self, k: usize) -> bool {
        !self.complement().has_clique(k + 1)
    }

    /// Exact chromatic number under the default vertex cap; `None` when the
    /// graph is too large for the exact search.
    pub fn chromatic_number(&self) -> Option<usize> {
        self.chromatic_number_with_cap(DEFAULT_CHI_CAP)
    }

    /// Exact chromatic number via iterative k-colorability, seeded with the
    /// clique lower bound and a greedy upper bound.
    pub fn chromatic_number_with_cap(&self, cap: usize) -> Option<usize> {
        if self.n > cap {
            return None;
        }
        let lower = self.clique_number();
        let upper = self.greedy_coloring_bound();
        for k in lower..upper {
            if self.colorable(k) {
                return Some(k);
            }
        }
        Some(upper)
    }

    fn greedy_coloring_bound(&self) -> usize {
        let order = self.descending_degree_order();
        let mut classes: Vec<u64> = Vec::new();
        for &v in &order {
            match classes.iter_mut().find(|c| **c & self.adj[v] == 0) {
                Some(c) => *c |= bit(v),
                None => classes.push(bit(v)),
            }
        }
        classes.len()
    }

    fn colorable(&self, k: usize) -> bool {
        if k == 0 {
            return false;
        }
        let order = self.descending_degree_order();
        let mut classes = vec![0u64; k];
        self.color_rec(&order, 0, &mut classes)
    }

    fn color_rec(&self, order: &[usize], i: usize, classes: &mut [u64]) -> bool {
        if i == order.len() {
            return true;
        }
        let v = order[i];
        let mut tried_empty = false;
        for c in 0..classes.len() {
            if classes[c] == 0 {
                // empty classes are interchangeable
                if tried_empty {
                    continue;
                }
                tried_empty = true;
            }
            if classes[c] & self.adj[v] == 0 {
                classes[c] |= bit(v);
                if self.color_rec(order, i + 1, classes) {
                    return true;
                }
                classes[c] &= !bit(v);
            }
        }
        false
    }

    pub(crate) fn descending_degree_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by_key(|&v| std::cmp::Reverse(self.adj[v].count_ones()));
        order
    }

    /// Checks the representation invariants: symmetry, zero diagonal, no
    /// bits at positions `>= n`.
    pub fn is_valid(&self) -> bool {
        let full = low_bits(self.n);
        for v in 0..self.n {
            if self.adj[v] & !full != 0 || self.adj[v] & bit(v) != 0 {
                return false;
            }
        }
        for v in self.n..MAX_VERTICES {
            if self.adj[v] != 0 {
                return false;
            }
        }
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if (self.adj[u] >> v) & 1 != (self.adj[v] >> u) & 1 {
                    return false;
                }
            }
        }
        true
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

fn has_clique_rec(adj: &[u64; MAX_VERTICES], mut cand: u64, k: usize) -> bool {
    if k == 0 {
        return true;
    }
    while (cand.count_ones() as usize) >= k {
        let v = cand.trailing_zeros() as usize;
        cand &= cand - 1;
        if has_clique_rec(adj, adj[v] & cand, k - 1) {
            return true;
        }
    }
    false
}

fn grow_clique(adj: &[u64; MAX_VERTICES], cand: u64, size: usize, best: &mut usize) {
    if size > *best {
        *best = size;
    }
    let mut rest = cand;
    while rest != 0 {
        if size + (rest.count_ones() as usize) <= *best {
            return;
        }
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        grow_clique(adj, adj[v] & rest, size + 1, best);
    }
}
