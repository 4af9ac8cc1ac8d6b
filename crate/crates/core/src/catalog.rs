//! Graph families used by the verification runs.

use crate::error::Result;
use crate::graph::Graph;
use crate::io::to_graph6;

/// A graph with a human-readable key.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedGraph {
    pub id: String,
    pub graph: Graph,
}

impl NamedGraph {
    pub fn new(id: impl Into<String>, graph: Graph) -> Self {
        Self { id: id.into(), graph }
    }

    /// Keyed by graph6 string.
    pub fn from_graph(graph: Graph) -> Result<Self> {
        Ok(Self {
            id: to_graph6(&graph)?,
            graph,
        })
    }
}

/// Paths, cycles, complete graphs, complete bipartite graphs and stars with
/// at most `n_max` vertices (each graph listed once).
pub fn named_families(n_max: usize) -> Result<Vec<NamedGraph>> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        out.push(NamedGraph::new(format!("P{n}"), Graph::path(n)?));
        if n >= 3 {
            out.push(NamedGraph::new(format!("C{n}"), Graph::cycle(n)?));
        }
        if n >= 4 {
            out.push(NamedGraph::new(format!("K{n}"), Graph::complete(n)?));
        }
        if n >= 5 {
            out.push(NamedGraph::new(format!("S{}", n - 1), Graph::star(n - 1)?));
        }
        for a in 2..=n / 2 {
            out.push(NamedGraph::new(format!("K{a},{}", n - a), Graph::complete_bipartite(a, n - a)?));
        }
    }
    Ok(out)
}

/// Canonical code: the smallest upper-triangle bit string over all vertex
/// orders that list vertices by decreasing degree. Degree blocks are an
/// isomorphism invariant, so permuting only within blocks still yields a
/// complete invariant. Only meant for `n <= 7`.
fn canonical_code(g: &Graph) -> u64 {
    let n = g.n();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    let mut blocks = Vec::new();
    let mut start = 0;
    for i in 1..=n {
        if i == n || g.degree(order[i]) != g.degree(order[start]) {
            blocks.push((start, i));
            start = i;
        }
    }
    let mut best = u64::MAX;
    permute_blocks(&mut order, &blocks, 0, &mut |p| {
        let mut code = 0u64;
        let mut bitpos = 0;
        for j in 1..n {
            for i in 0..j {
                if g.has_edge(p[i], p[j]) {
                    code |= 1 << bitpos;
                }
                bitpos += 1;
            }
        }
        best = best.min(code);
    });
    best
}

fn permute_blocks(order: &mut Vec<usize>, blocks: &[(usize, usize)], b: usize, f: &mut impl FnMut(&[usize])) {
    match blocks.get(b) {
        None => f(order),
        Some(&(lo, hi)) => permute_range(order, lo, hi, &mut |o| {
            permute_blocks(o, blocks, b + 1, f)
        }),
    }
}

fn permute_range(
    order: &mut Vec<usize>,
    k: usize,
    hi: usize,
    f: &mut dyn FnMut(&mut Vec<usize>),
) {
    if k == hi {
        f(order);
        return;
    }
    for i in k..hi {
        order.swap(k, i);
        permute_range(order, k + 1, hi, f);
        order.swap(k, i);
    }
}

/// Every connected graph on exactly `n` vertices up to isomorphism, in
/// increasing order of edge count then canonical code. `n <= 7`.
pub fn connected_graphs(n: usize) -> Result<Vec<Graph>> {
    assert!(n <= 7, "exhaustive generation is limited to n <= 7");
    let pairs: Vec<(usize, usize)> = (1..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    let mut seen = std::collections::BTreeMap::new();
    for mask in 0u64..(1u64 << pairs.len()) {
        // at least n-1 edges needed to be connected
        if (mask.count_ones() as usize) + 1 < n {
            continue;
        }
        let edges: Vec<_> = pairs
            .iter()
            .enumerate()
            .filter(|(b, _)| mask >> b & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        let g = Graph::from_edges(n, &edges)?;
        if !g.is_connected() {
            continue;
        }
        let code = canonical_code(&g);
        seen.entry((g.m(), code)).or_insert(g);
    }
    Ok(seen.into_values().collect())
}

/// Connected graphs on `1..=n_max` vertices keyed by graph6.
pub fn connected_catalog(n_max: usize) -> Result<Vec<NamedGraph>> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        for g in connected_graphs(n)? {
            out.push(NamedGraph::from_graph(g)?);
        }
    }
    Ok(out)
}

/// Connected bipartite graphs on `1..=n_max` vertices.
pub fn connected_bipartite_catalog(n_max: usize) -> Result<Vec<NamedGraph>> {
    Ok(connected_catalog(n_max)?
        .into_iter()
        .filter(|g| g.graph.is_bipartite())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn connected_graph_counts() {
        // 1, 1, 2, 6, 21, 112 connected graphs on 1..=6 vertices
        let counts: Vec<usize> = (1..=6).map(|n| connected_graphs(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 21, 112]);
    }

    #[test]
    fn connected_bipartite_counts() {
        let cat = connected_bipartite_catalog(6).unwrap();
        let mut counts = [0usize; 7];
        for g in &cat {
            counts[g.graph.n()] += 1;
        }
        assert_eq!(&counts[1..], &[1, 1, 1, 3, 5, 17]);
    }

    #[test]
    fn families_are_distinct_and_connected() {
        let fam = named_families(6).unwrap();
        assert!(fam.iter().all(|g| g.graph.is_connected()));
        let ids: std::collections::HashSet<_> = fam.iter().map(|g| g.id.clone()).collect();
        assert_eq!(ids.len(), fam.len());
    }
}
