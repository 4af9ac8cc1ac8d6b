//! Labeled simple undirected graphs on vertices `0..n`.
//!
//! Adjacency is stored as one `u64` bitmask per vertex, so graphs are limited
//! to 64 vertices. Every algorithm in this crate works far below that.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Hard limit imposed by the bitmask adjacency representation.
pub const MAX_VERTICES: usize = 64;

/// Default cap for exhaustive automorphism enumeration.
pub const DEFAULT_AUTOMORPHISM_CAP: usize = 10;

pub type Vertex = usize;

/// An unordered edge, always stored with `0 < 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge(pub Vertex, pub Vertex);

impl Edge {
    pub fn new(u: Vertex, v: Vertex) -> Self {
        if u <= v {
            Edge(u, v)
        } else {
            Edge(v, u)
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.0, self.1)
    }
}

/// A simple undirected graph. Immutable once built; all structural
/// operations return new graphs.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n)?;
        for (i, e) in self.edges().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}-{}", e.0, e.1)?;
        }
        write!(f, "])")
    }
}

/// Exact small-subgraph counts used by the coefficient formulas.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgraphCensus {
    /// Number of edges.
    pub m: u64,
    /// Triangles (subgraphs isomorphic to C3 = K3).
    pub tri: u64,
    /// Induced 4-cycles.
    pub ind_c4: u64,
    /// Copies of K4.
    pub k4: u64,
}

/// Vertex map produced by [`Graph::contract_edge`]: `map[old] = new`.
/// Both endpoints of the contracted edge map to the merged vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relabeling {
    pub map: Vec<Vertex>,
    pub merged: Vertex,
    pub u: Vertex,
    pub v: Vertex,
}

/// One connected component together with `back[i]`, the original id of the
/// component's vertex `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub graph: Graph,
    pub back: Vec<Vertex>,
}

#[inline]
fn bit(v: Vertex) -> u64 {
    1u64 << v
}

impl Graph {
    /// Graph with `n` vertices and no edges.
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
        Ok(Graph { n, adj: vec![0; n] })
    }

    /// Builds a graph, rejecting loops, duplicates and out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.insert_edge(u, v)?;
        }
        Ok(g)
    }

    fn insert_edge(&mut self, u: Vertex, v: Vertex) -> Result<()> {
        if u >= self.n || v >= self.n {
            return Err(Error::VertexOutOfRange {
                vertex: u.max(v),
                n: self.n,
            });
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        if self.adj[u] & bit(v) != 0 {
            return Err(Error::DuplicateEdge(u.min(v), u.max(v)));
        }
        self.adj[u] |= bit(v);
        self.adj[v] |= bit(u);
        Ok(())
    }

    pub fn path(n: usize) -> Result<Self> {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges)
    }

    /// The cycle `0-1-...-(n-1)-0`. Requires `n >= 3`.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidArgument(format!(
                "cycle needs at least 3 vertices, got {n}"
            )));
        }
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        edges.push((0, n - 1));
        Graph::from_edges(n, &edges)
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::from_edges(n, &edges)
    }

    /// K_{a,b} with parts `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Result<Self> {
        let mut edges = Vec::new();
        for u in 0..a {
            for v in a..a + b {
                edges.push((u, v));
            }
        }
        Graph::from_edges(a + b, &edges)
    }

    /// Star with centre 0 and `leaves` leaves.
    pub fn star(leaves: usize) -> Result<Self> {
        Graph::complete_bipartite(1, leaves)
    }

    /// Disjoint union; `other`'s vertices are shifted up by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Self> {
        let mut g = Graph::empty(self.n + other.n)?;
        for e in self.edges() {
            g.insert_edge(e.0, e.1)?;
        }
        for e in other.edges() {
            g.insert_edge(e.0 + self.n, e.1 + self.n)?;
        }
        Ok(g)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2
    }

    #[inline]
    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n && v < self.n && self.adj[u] & bit(v) != 0
    }

    /// Open neighbourhood as a bitmask.
    #[inline]
    pub fn neighbor_mask(&self, u: Vertex) -> u64 {
        self.adj[u]
    }

    pub fn neighbors(&self, u: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        BitIter(self.adj[u])
    }

    pub fn degree(&self, u: Vertex) -> usize {
        self.adj[u].count_ones() as usize
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        (0..self.n).flat_map(move |u| {
            BitIter(self.adj[u] & !((bit(u) << 1).wrapping_sub(1))).map(move |v| Edge(u, v))
        })
    }

    /// Lexicographically smallest edge, if any.
    pub fn first_edge(&self) -> Option<Edge> {
        self.edges().next()
    }

    pub fn is_empty_graph(&self) -> bool {
        self.adj.iter().all(|&a| a == 0)
    }

    /// `G - e`: same vertices, edge removed.
    pub fn delete_edge(&self, e: Edge) -> Result<Graph> {
        let Edge(u, v) = Edge::new(e.0, e.1);
        if !self.has_edge(u, v) {
            return Err(Error::EdgeNotInGraph(u, v));
        }
        let mut g = self.clone();
        g.adj[u] &= !bit(v);
        g.adj[v] &= !bit(u);
        Ok(g)
    }

    /// `G · e`: identifies the endpoints and keeps the underlying simple graph.
    ///
    /// The merged vertex takes the slot of the smaller endpoint; vertices
    /// above the larger endpoint's slot shift down by one.
    pub fn contract_edge(&self, e: Edge) -> Result<(Graph, Relabeling)> {
        let Edge(u, v) = Edge::new(e.0, e.1);
        if !self.has_edge(u, v) {
            return Err(Error::EdgeNotInGraph(u, v));
        }
        let map: Vec<Vertex> = (0..self.n)
            .map(|a| match a.cmp(&v) {
                std::cmp::Ordering::Less => a,
                std::cmp::Ordering::Equal => u,
                std::cmp::Ordering::Greater => a - 1,
            })
            .collect();
        let mut adj = vec![0u64; self.n - 1];
        for a in 0..self.n {
            for b in self.neighbors(a) {
                let (na, nb) = (map[a], map[b]);
                if na != nb {
                    adj[na] |= bit(nb);
                }
            }
        }
        Ok((
            Graph { n: self.n - 1, adj },
            Relabeling {
                map,
                merged: u,
                u,
                v,
            },
        ))
    }

    /// Exhaustive triangle, induced-C4 and K4 counts.
    pub fn census(&self) -> SubgraphCensus {
        let n = self.n;
        let mut tri = 0;
        let mut ind_c4 = 0;
        let mut k4 = 0;
        for a in 0..n {
            for b in a + 1..n {
                let ab = self.has_edge(a, b);
                for c in b + 1..n {
                    let ac = self.has_edge(a, c);
                    let bc = self.has_edge(b, c);
                    if ab && ac && bc {
                        tri += 1;
                    }
                    for d in c + 1..n {
                        let ad = self.has_edge(a, d);
                        let bd = self.has_edge(b, d);
                        let cd = self.has_edge(c, d);
                        let cnt = [ab, ac, ad, bc, bd, cd].iter().filter(|&&x| x).count();
                        if cnt == 6 {
                            k4 += 1;
                        } else if cnt == 4 {
                            // 4 edges on 4 vertices with all degrees 2 is C4;
                            // the other shape is a triangle plus pendant edge.
                            let degs = [
                                ab as u8 + ac as u8 + ad as u8,
                                ab as u8 + bc as u8 + bd as u8,
                                ac as u8 + bc as u8 + cd as u8,
                                ad as u8 + bd as u8 + cd as u8,
                            ];
                            if degs.iter().all(|&d| d == 2) {
                                ind_c4 += 1;
                            }
                        }
                    }
                }
            }
        }
        SubgraphCensus {
            m: self.m() as u64,
            tri,
            ind_c4,
            k4,
        }
    }

    /// The full automorphism group as explicit permutations `p` with
    /// `uv ∈ E ⇔ p[u]p[v] ∈ E`. Identity comes first.
    pub fn automorphisms(&self) -> Result<Vec<Vec<Vertex>>> {
        self.automorphisms_capped(DEFAULT_AUTOMORPHISM_CAP)
    }

    pub fn automorphisms_capped(&self, cap: usize) -> Result<Vec<Vec<Vertex>>> {
        if self.n > cap {
            return Err(Error::AutomorphismCap { n: self.n, cap });
        }
        let n = self.n;
        let degrees: Vec<usize> = (0..n).map(|v| self.degree(v)).collect();
        let mut out = Vec::new();
        let mut perm = vec![usize::MAX; n];
        let mut used = 0u64;
        self.extend_automorphism(0, &degrees, &mut perm, &mut used, &mut out);
        Ok(out)
    }

    fn extend_automorphism(
        &self,
        depth: usize,
        degrees: &[usize],
        perm: &mut Vec<Vertex>,
        used: &mut u64,
        out: &mut Vec<Vec<Vertex>>,
    ) {
        if depth == self.n {
            out.push(perm.clone());
            return;
        }
        for img in 0..self.n {
            if *used & bit(img) != 0 || degrees[img] != degrees[depth] {
                continue;
            }
            let consistent = (0..depth).all(|w| self.has_edge(depth, w) == self.has_edge(img, perm[w]));
            if !consistent {
                continue;
            }
            perm[depth] = img;
            *used |= bit(img);
            self.extend_automorphism(depth + 1, degrees, perm, used, out);
            *used &= !bit(img);
            perm[depth] = usize::MAX;
        }
    }

    /// Applies a vertex permutation: edge `uv` becomes `p[u]p[v]`.
    pub fn permute(&self, p: &[Vertex]) -> Graph {
        let mut adj = vec![0u64; self.n];
        for e in self.edges() {
            adj[p[e.0]] |= bit(p[e.1]);
            adj[p[e.1]] |= bit(p[e.0]);
        }
        Graph { n: self.n, adj }
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.reach_mask(0).count_ones() as usize == self.n
    }

    fn reach_mask(&self, start: Vertex) -> u64 {
        let mut seen = bit(start);
        let mut frontier = bit(start);
        while frontier != 0 {
            let mut next = 0;
            for v in BitIter(frontier) {
                next |= self.adj[v];
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen
    }

    /// Connected components ordered by smallest original vertex.
    pub fn components(&self) -> Vec<Component> {
        let mut remaining: u64 = if self.n == 64 { u64::MAX } else { bit(self.n) - 1 };
        let mut out = Vec::new();
        while remaining != 0 {
            let start = remaining.trailing_zeros() as usize;
            let mask = self.reach_mask(start);
            remaining &= !mask;
            out.push(self.induced(mask));
        }
        out
    }

    /// Subgraph induced by a vertex mask, relabeled in increasing order.
    pub fn induced(&self, mask: u64) -> Component {
        let back: Vec<Vertex> = BitIter(mask).collect();
        let mut fwd = vec![usize::MAX; self.n];
        for (i, &v) in back.iter().enumerate() {
            fwd[v] = i;
        }
        let mut adj = vec![0u64; back.len()];
        for (i, &v) in back.iter().enumerate() {
            for w in BitIter(self.adj[v] & mask) {
                adj[i] |= bit(fwd[w]);
            }
        }
        Component {
            graph: Graph { n: back.len(), adj },
            back,
        }
    }

    /// BFS 2-colouring of a connected graph. `Ok(None)` when an odd cycle exists.
    pub fn bipartition(&self) -> Result<Option<(Vec<Vertex>, Vec<Vertex>)>> {
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        if self.n == 0 {
            return Ok(Some((Vec::new(), Vec::new())));
        }
        let mut side = vec![u8::MAX; self.n];
        side[0] = 0;
        let mut queue = VecDeque::from([0]);
        while let Some(u) = queue.pop_front() {
            for w in self.neighbors(u) {
                if side[w] == u8::MAX {
                    side[w] = 1 - side[u];
                    queue.push_back(w);
                } else if side[w] == side[u] {
                    return Ok(None);
                }
            }
        }
        let left = (0..self.n).filter(|&v| side[v] == 0).collect();
        let right = (0..self.n).filter(|&v| side[v] == 1).collect();
        Ok(Some((left, right)))
    }

    pub fn is_bipartite(&self) -> bool {
        self.components()
            .iter()
            .all(|c| matches!(c.graph.bipartition(), Ok(Some(_))))
    }

    /// Edge-list text: a header `n <count>` then one `u v` pair per line.
    pub fn to_edge_list(&self) -> String {
        let mut s = format!("n {}\n", self.n);
        for e in self.edges() {
            s.push_str(&format!("{} {}\n", e.0, e.1));
        }
        s
    }
}

/// Iterates the set bits of a mask in increasing order.
#[derive(Clone, Copy)]
pub struct BitIter(pub u64);

impl Iterator for BitIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let t = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(t)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn edge_set(g: &Graph) -> Vec<(usize, usize)> {
        g.edges().map(|e| (e.0, e.1)).collect()
    }

    #[test]
    fn rejects_malformed_edges() {
        assert!(matches!(Graph::from_edges(3, &[(1, 1)]), Err(Error::SelfLoop(1))));
        assert!(matches!(
            Graph::from_edges(3, &[(0, 1), (1, 0)]),
            Err(Error::DuplicateEdge(0, 1))
        ));
        assert!(Graph::from_edges(3, &[(0, 3)]).is_err());
    }

    #[test]
    fn delete_edge_examples() {
        let k3 = Graph::complete(3).unwrap();
        let p = k3.delete_edge(Edge::new(0, 1)).unwrap();
        assert_eq!(edge_set(&p), vec![(0, 2), (1, 2)]);

        let k2 = Graph::complete(2).unwrap();
        let e = k2.delete_edge(Edge::new(0, 1)).unwrap();
        assert_eq!(e.n(), 2);
        assert_eq!(e.m(), 0);

        let c4 = Graph::cycle(4).unwrap();
        let p4 = c4.delete_edge(Edge::new(0, 1)).unwrap();
        assert_eq!(p4.m(), 3);
        assert!(p4.is_connected());

        let err = c4.delete_edge(Edge::new(0, 2)).unwrap_err();
        assert_eq!(err.to_string(), "edge not in graph: {0,2}");
    }

    #[test]
    fn contract_edge_examples() {
        let (g, _) = Graph::complete(3).unwrap().contract_edge(Edge::new(0, 1)).unwrap();
        assert_eq!(g, Graph::complete(2).unwrap());

        let (g, rel) = Graph::cycle(4).unwrap().contract_edge(Edge::new(0, 1)).unwrap();
        assert_eq!(g, Graph::cycle(3).unwrap());
        assert_eq!(rel.map, vec![0, 0, 1, 2]);
        assert_eq!(rel.merged, 0);

        let (g, _) = Graph::path(3).unwrap().contract_edge(Edge::new(0, 1)).unwrap();
        assert_eq!(g, Graph::complete(2).unwrap());

        assert!(Graph::path(3).unwrap().contract_edge(Edge::new(0, 2)).is_err());
    }

    #[test]
    fn contraction_relabels_above_removed_slot() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 3), (2, 3), (3, 4)]).unwrap();
        let (g, rel) = g.contract_edge(Edge::new(3, 1)).unwrap();
        assert_eq!(rel.map, vec![0, 1, 2, 1, 3]);
        // merged 1 adjacent to 0, 2 (from 1) and 2, 3 (from 3's neighbours 2, 4)
        assert_eq!(edge_set(&g), vec![(0, 1), (1, 2), (1, 3)]);
    }

    #[test]
    fn census_examples() {
        let k4 = Graph::complete(4).unwrap().census();
        assert_eq!(k4, SubgraphCensus { m: 6, tri: 4, ind_c4: 0, k4: 1 });
        let c4 = Graph::cycle(4).unwrap().census();
        assert_eq!(c4, SubgraphCensus { m: 4, tri: 0, ind_c4: 1, k4: 0 });
        let c7 = Graph::cycle(7).unwrap().census();
        assert_eq!(c7, SubgraphCensus { m: 7, tri: 0, ind_c4: 0, k4: 0 });
        // K_{2,3} has three 4-cycles, all induced
        assert_eq!(Graph::complete_bipartite(2, 3).unwrap().census().ind_c4, 3);
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(Graph::cycle(4).unwrap().automorphisms().unwrap().len(), 8);
        assert_eq!(Graph::complete(3).unwrap().automorphisms().unwrap().len(), 6);
        assert_eq!(Graph::path(3).unwrap().automorphisms().unwrap().len(), 2);
        let auts = Graph::path(3).unwrap().automorphisms().unwrap();
        assert_eq!(auts[0], vec![0, 1, 2]);
    }

    #[test]
    fn automorphism_cap() {
        let err = Graph::empty(11).unwrap().automorphisms().unwrap_err();
        assert!(err.to_string().starts_with("graph too large for automorphism enumeration"));
        assert_eq!(Graph::cycle(11).unwrap().automorphisms_capped(11).unwrap().len(), 22);
    }

    #[test]
    fn components_examples() {
        let g = Graph::complete(3).unwrap().disjoint_union(&Graph::complete(2).unwrap()).unwrap();
        let comps = g.components();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].graph.n(), 3);
        assert_eq!(comps[1].graph.n(), 2);
        assert_eq!(comps[1].back, vec![3, 4]);

        let c5 = Graph::cycle(5).unwrap();
        let comps = c5.components();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].graph, c5);

        let comps = Graph::empty(3).unwrap().components();
        assert_eq!(comps.len(), 3);
        assert!(comps.iter().all(|c| c.graph.n() == 1));
    }

    #[test]
    fn bipartition_examples() {
        assert_eq!(
            Graph::cycle(4).unwrap().bipartition().unwrap(),
            Some((vec![0, 2], vec![1, 3]))
        );
        assert_eq!(Graph::cycle(7).unwrap().bipartition().unwrap(), None);
        assert_eq!(
            Graph::complete(2).unwrap().bipartition().unwrap(),
            Some((vec![0], vec![1]))
        );
        assert!(matches!(
            Graph::empty(2).unwrap().bipartition(),
            Err(Error::Disconnected)
        ));
    }
}
