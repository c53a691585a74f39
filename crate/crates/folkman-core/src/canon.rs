//! Canonical labeling and isomorph rejection.
//!
//! Certificates are computed by individualization-refinement: equitable
//! partition refinement (which separates by degree on the first round and
//! by neighbor-cell count vectors afterwards), branching on the first
//! smallest non-singleton cell, and taking the lexicographically least
//! adjacency encoding over all discrete leaves. Two vertices of a target
//! cell whose adjacency rows agree outside the pair are interchangeable by
//! a transposition automorphism, so only one of them is branched on; this
//! keeps clique-like modules from blowing the leaf count up factorially.

use std::collections::HashMap;
use std::fmt;

use crate::graph::{Graph, MAX_VERTICES};

/// Canonical certificate: the vertex count followed by the packed
/// upper-triangle adjacency bits (column order, most significant bit
/// first) of the canonically relabeled graph.
///
/// Two graphs have equal certificates exactly when they are isomorphic.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Certificate {
    bytes: Box<[u8]>,
}

impl Certificate {
    pub fn as_bytes(&self) -> &[u8] {
        &self.bytes
    }

    pub fn order(&self) -> usize {
        self.bytes[0] as usize
    }

    /// Decodes the certificate back into the canonical graph.
    pub fn to_graph(&self) -> Graph {
        let n = self.order();
        let mut edges = Vec::new();
        let mut idx = 0usize;
        for v in 1..n {
            for u in 0..v {
                let byte = self.bytes[1 + idx / 8];
                if byte & (0x80 >> (idx % 8)) != 0 {
                    edges.push((u, v));
                }
                idx += 1;
            }
        }
        Graph::from_edges(n, &edges).expect("certificate encodes a valid graph")
    }
}

impl fmt::Debug for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Certificate(n={}, ", self.order())?;
        for b in &self.bytes[1..] {
            write!(f, "{b:02x}")?;
        }
        write!(f, ")")
    }
}

fn encode_triangle(g: &Graph) -> Box<[u8]> {
    let n = g.n();
    let nbits = n * (n - 1) / 2;
    let mut bytes = vec![0u8; 1 + nbits.div_ceil(8)];
    bytes[0] = n as u8;
    let mut idx = 0usize;
    for v in 1..n {
        for u in 0..v {
            if g.has_edge(u, v) {
                bytes[1 + idx / 8] |= 0x80 >> (idx % 8);
            }
            idx += 1;
        }
    }
    bytes.into_boxed_slice()
}

/// Computes the canonical certificate of `g`.
pub fn canonical_certificate(g: &Graph) -> Certificate {
    Certificate {
        bytes: encode_triangle(&canonical_form(g)),
    }
}

/// Computes the canonically relabeled copy of `g`.
pub fn canonical_form(g: &Graph) -> Graph {
    let n = g.n();
    if n == 1 {
        return g.clone();
    }
    let mut cells: Vec<Vec<usize>> = vec![(0..n).collect()];
    refine(g, &mut cells);
    let mut best: Option<Box<[u8]>> = None;
    search(g, cells, &mut best);
    let best = best.expect("at least one discrete leaf");
    Certificate { bytes: best }.to_graph()
}

fn search(g: &Graph, cells: Vec<Vec<usize>>, best: &mut Option<Box<[u8]>>) {
    let target = cells
        .iter()
        .enumerate()
        .filter(|(_, c)| c.len() > 1)
        .min_by_key(|(i, c)| (c.len(), *i))
        .map(|(i, _)| i);

    let Some(ti) = target else {
        // discrete partition: cell order is the labeling
        let mut perm = vec![0usize; g.n()];
        for (label, cell) in cells.iter().enumerate() {
            perm[cell[0]] = label;
        }
        let enc = encode_triangle(&g.relabel(&perm));
        if best.as_ref().is_none_or(|b| enc < *b) {
            *best = Some(enc);
        }
        return;
    };

    let mut branched: Vec<usize> = Vec::new();
    for &v in &cells[ti] {
        // skip vertices interchangeable with an already-branched one by a
        // transposition automorphism
        let pair_mask = |a: usize, b: usize| !((1u64 << a) | (1u64 << b));
        if branched.iter().any(|&u| {
            g.neighbors(u).bits() & pair_mask(u, v) == g.neighbors(v).bits() & pair_mask(u, v)
        }) {
            continue;
        }
        branched.push(v);

        let mut child: Vec<Vec<usize>> = Vec::with_capacity(cells.len() + 1);
        for (i, cell) in cells.iter().enumerate() {
            if i == ti {
                child.push(vec![v]);
                child.push(cell.iter().copied().filter(|&u| u != v).collect());
            } else {
                child.push(cell.clone());
            }
        }
        refine(g, &mut child);
        search(g, child, best);
    }
}

/// Refines the ordered partition until it is equitable. Cells split by the
/// vector of neighbor counts into every current cell; split groups are
/// ordered by that vector, which only depends on the isomorphism type.
fn refine(g: &Graph, cells: &mut Vec<Vec<usize>>) {
    let n = g.n();
    loop {
        let mut cell_masks: Vec<u64> = Vec::with_capacity(cells.len());
        for cell in cells.iter() {
            let mut m = 0u64;
            for &v in cell {
                m |= 1u64 << v;
            }
            cell_masks.push(m);
        }

        let mut sig = vec![Vec::new(); n];
        for cell in cells.iter() {
            if cell.len() == 1 {
                continue;
            }
            for &v in cell {
                let row = g.neighbors(v).bits();
                sig[v] = cell_masks
                    .iter()
                    .map(|&m| (row & m).count_ones())
                    .collect();
            }
        }

        let mut next: Vec<Vec<usize>> = Vec::with_capacity(cells.len());
        let mut changed = false;
        for cell in cells.iter() {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut members = cell.clone();
            members.sort_by(|&a, &b| sig[a].cmp(&sig[b]).then(a.cmp(&b)));
            let mut start = 0;
            for i in 1..=members.len() {
                if i == members.len() || sig[members[i]] != sig[members[start]] {
                    next.push(members[start..i].to_vec());
                    if i - start != cell.len() {
                        changed = true;
                    }
                    start = i;
                }
            }
        }
        *cells = next;
        if !changed {
            return;
        }
    }
}

/// Keeps one representative per isomorphism class, the first encountered.
/// Stable across reruns given the same input order.
pub fn dedup<I: IntoIterator<Item = Graph>>(graphs: I) -> Vec<Graph> {
    let mut seen: HashMap<Certificate, ()> = HashMap::new();
    let mut out = Vec::new();
    for g in graphs {
        debug_assert!(g.n() <= MAX_VERTICES);
        let cert = canonical_certificate(&g);
        if seen.insert(cert, ()).is_none() {
            out.push(g);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};

    fn random_graph(rng: &mut StdRng, n: usize, p: f64) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in (u + 1)..n {
                if rng.random_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        Graph::from_edges(n, &edges).unwrap()
    }

    fn random_relabel(rng: &mut StdRng, g: &Graph) -> Graph {
        let mut perm: Vec<usize> = (0..g.n()).collect();
        perm.shuffle(rng);
        g.relabel(&perm)
    }

    /// Brute-force isomorphism test: all n! bijections.
    pub(crate) fn isomorphic_brute(a: &Graph, b: &Graph) -> bool {
        if a.n() != b.n() || a.edge_count() != b.edge_count() {
            return false;
        }
        let n = a.n();
        let mut perm: Vec<usize> = (0..n).collect();
        permute(&mut perm, 0, &mut |p| a.relabel(p) == *b)
    }

    fn permute(perm: &mut Vec<usize>, i: usize, found: &mut impl FnMut(&[usize]) -> bool) -> bool {
        if i == perm.len() {
            return found(perm);
        }
        for j in i..perm.len() {
            perm.swap(i, j);
            if permute(perm, i + 1, found) {
                perm.swap(i, j);
                return true;
            }
            perm.swap(i, j);
        }
        false
    }

    #[test]
    fn relabelings_share_certificates() {
        let mut rng = StdRng::seed_from_u64(42);
        let c5 = Graph::cycle(5).unwrap();
        let base = canonical_certificate(&c5);
        for _ in 0..20 {
            assert_eq!(canonical_certificate(&random_relabel(&mut rng, &c5)), base);
        }
    }

    #[test]
    fn different_graphs_get_distinct_certificates() {
        let k6 = Graph::complete(6).unwrap();
        let k6e = k6.remove_edge(0, 1).unwrap();
        assert_ne!(canonical_certificate(&k6), canonical_certificate(&k6e));
    }

    #[test]
    fn five_vertex_graphs_fall_into_34_classes() {
        let mut reps: Vec<(Certificate, Graph)> = Vec::new();
        for mask in 0u64..(1 << 10) {
            let mut edges = Vec::new();
            let mut idx = 0;
            for u in 0..5 {
                for v in (u + 1)..5 {
                    if mask & (1 << idx) != 0 {
                        edges.push((u, v));
                    }
                    idx += 1;
                }
            }
            let g = Graph::from_edges(5, &edges).unwrap();
            let cert = canonical_certificate(&g);
            match reps.iter().find(|(c, _)| *c == cert) {
                Some((_, rep)) => assert!(isomorphic_brute(rep, &g)),
                None => {
                    // a new certificate must be a genuinely new class
                    for (_, rep) in &reps {
                        assert!(!isomorphic_brute(rep, &g));
                    }
                    reps.push((cert, g));
                }
            }
        }
        assert_eq!(reps.len(), 34);
    }

    #[test]
    fn certificate_equality_matches_brute_force_on_small_pairs() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..200 {
            let n = rng.random_range(1..=7);
            let p = rng.random_range(0.1..0.9);
            let a = random_graph(&mut rng, n, p);
            let b = if rng.random_bool(0.5) {
                random_relabel(&mut rng, &a)
            } else {
                let p2 = rng.random_range(0.1..0.9);
                random_graph(&mut rng, n, p2)
            };
            assert_eq!(
                canonical_certificate(&a) == canonical_certificate(&b),
                isomorphic_brute(&a, &b),
                "a={a:?} b={b:?}"
            );
        }
    }

    #[test]
    fn permutation_invariance_up_to_16_vertices() {
        let mut rng = StdRng::seed_from_u64(13);
        for _ in 0..20 {
            let n = rng.random_range(2..=16);
            let p = rng.random_range(0.2..0.8);
            let g = random_graph(&mut rng, n, p);
            let base = canonical_certificate(&g);
            for _ in 0..5 {
                assert_eq!(canonical_certificate(&random_relabel(&mut rng, &g)), base);
            }
        }
    }

    #[test]
    fn canonical_form_is_isomorphic_to_input() {
        let mut rng = StdRng::seed_from_u64(3);
        for _ in 0..50 {
            let n = rng.random_range(1..=7);
            let g = random_graph(&mut rng, n, 0.5);
            assert!(isomorphic_brute(&g, &canonical_form(&g)));
        }
    }

    #[test]
    fn canonical_form_is_idempotent() {
        let mut rng = StdRng::seed_from_u64(17);
        for _ in 0..30 {
            let n = rng.random_range(1..=12);
            let g = random_graph(&mut rng, n, 0.5);
            let c = canonical_form(&g);
            assert_eq!(c, canonical_form(&c));
        }
    }

    #[test]
    fn dense_symmetric_graphs_canonize_quickly() {
        // complete graphs and complete multipartite-like graphs are the
        // worst case for plain individualization-refinement
        let k20 = Graph::complete(20).unwrap();
        assert_eq!(canonical_form(&k20), k20);

        let mut g = Graph::complete(16).unwrap();
        for i in 0..8 {
            g = g.remove_edge(2 * i, 2 * i + 1).unwrap();
        }
        let cert = canonical_certificate(&g);
        let mut rng = StdRng::seed_from_u64(5);
        for _ in 0..5 {
            assert_eq!(canonical_certificate(&random_relabel(&mut rng, &g)), cert);
        }
    }

    #[test]
    fn certificate_roundtrips_through_graph() {
        let mut rng = StdRng::seed_from_u64(23);
        for _ in 0..30 {
            let n = rng.random_range(1..=14);
            let g = random_graph(&mut rng, n, 0.5);
            let cert = canonical_certificate(&g);
            assert_eq!(canonical_certificate(&cert.to_graph()), cert);
        }
    }

    #[test]
    fn dedup_keeps_one_per_class() {
        let mut rng = StdRng::seed_from_u64(1);
        let c5 = Graph::cycle(5).unwrap();
        let out = dedup(vec![
            c5.clone(),
            random_relabel(&mut rng, &c5),
            Graph::complete(5).unwrap(),
        ]);
        assert_eq!(out.len(), 2);
        assert_eq!(out[0], c5); // first encountered wins

        assert!(dedup(Vec::new()).is_empty());
    }

    #[test]
    fn dedup_is_idempotent() {
        let mut rng = StdRng::seed_from_u64(2);
        let graphs: Vec<Graph> = (0..40)
            .map(|_| {
                let n = rng.random_range(1..=8);
                random_graph(&mut rng, n, 0.5)
            })
            .collect();
        let once = dedup(graphs);
        let twice = dedup(once.clone());
        assert_eq!(once, twice);
    }
}
