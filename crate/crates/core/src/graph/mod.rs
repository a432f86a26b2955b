//! Weighted undirected graphs, the text file format, generators and the exact
//! reference algorithms used to check everything else.

mod exact;
mod flow;
mod generate;
mod io;

use std::collections::HashMap;
use std::fmt::Debug;
use std::ops::{Add, AddAssign, Sub, SubAssign};

pub use exact::{
    brute_force_min_cut, cut_value, enumerate_cuts_at_most, exact_max_cut, exact_min_cut,
    exact_strengths, local_max_cut, max_cut_distortion, min_st_cut, MaxCut,
};
pub use flow::{max_flow, FlowResult};
pub use generate::{generate, GenSpec};
pub use io::{format_dyadic, parse_graph, parse_sparsifier, read_graph, write_graph, write_sparsifier};

use crate::error::{CutQueryError, Result};
use crate::partition::ContractionPartition;

/// Edge weight: exact integers for hidden graphs, floats for sparsifiers.
pub trait Weight:
    Copy
    + Debug
    + PartialOrd
    + Default
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + AddAssign
    + SubAssign
{
    const ZERO: Self;
    const INFINITY: Self;
    fn to_f64(self) -> f64;
    fn from_u64(x: u64) -> Self;
    /// Positive beyond numerical noise.
    fn is_positive(self) -> bool;
    /// `self <= other` up to numerical noise.
    fn approx_le(self, other: Self) -> bool {
        self <= other
    }
    fn min_of(a: Self, b: Self) -> Self {
        if b < a {
            b
        } else {
            a
        }
    }
}

impl Weight for u64 {
    const ZERO: Self = 0;
    const INFINITY: Self = u64::MAX / 4;
    fn to_f64(self) -> f64 {
        self as f64
    }
    fn from_u64(x: u64) -> Self {
        x
    }
    fn is_positive(self) -> bool {
        self > 0
    }
}

impl Weight for f64 {
    const ZERO: Self = 0.0;
    const INFINITY: Self = f64::INFINITY;
    fn to_f64(self) -> f64 {
        self
    }
    fn from_u64(x: u64) -> Self {
        x as f64
    }
    fn is_positive(self) -> bool {
        self > 1e-9
    }
    fn approx_le(self, other: Self) -> bool {
        self <= other + 1e-9 * (1.0 + other.abs())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Edge<W> {
    pub u: usize,
    pub v: usize,
    pub w: W,
}

#[derive(Clone, Debug)]
pub struct Graph<W> {
    n: usize,
    edges: Vec<Edge<W>>,
    adj: Vec<Vec<(usize, W)>>,
}

pub type WeightedGraph = Graph<u64>;

/// One side of a cut together with its value. Canonical cuts list the side
/// that does not contain vertex 0.
#[derive(Clone, Debug, PartialEq)]
pub struct Cut<W> {
    pub side: Vec<usize>,
    pub value: W,
}

impl<W: Weight> Cut<W> {
    pub fn canonical(mut self, n: usize) -> Self {
        self.side.sort_unstable();
        if self.side.first() == Some(&0) {
            let mut inside = vec![false; n];
            for &v in &self.side {
                inside[v] = true;
            }
            self.side = (0..n).filter(|&v| !inside[v]).collect();
        }
        self
    }
}

impl<W: Weight> Graph<W> {
    pub fn empty(n: usize) -> Self {
        Graph { n, edges: Vec::new(), adj: vec![Vec::new(); n] }
    }

    fn from_edges_unchecked(n: usize, edges: Vec<Edge<W>>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for e in &edges {
            adj[e.u].push((e.v, e.w));
            adj[e.v].push((e.u, e.w));
        }
        Graph { n, edges, adj }
    }

    /// Simple graph: rejects self-loops, duplicate pairs, non-positive weights
    /// and out-of-range endpoints.
    pub fn new_simple(n: usize, edges: impl IntoIterator<Item = (usize, usize, W)>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        let mut list = Vec::new();
        for (u, v, w) in edges {
            if u >= n || v >= n {
                return Err(CutQueryError::InvalidGraph(format!("edge ({u},{v}) out of range for n={n}")));
            }
            if u == v {
                return Err(CutQueryError::InvalidGraph(format!("self-loop at {u}")));
            }
            if !w.is_positive() {
                return Err(CutQueryError::InvalidGraph(format!("non-positive weight on ({u},{v})")));
            }
            let key = (u.min(v), u.max(v));
            if !seen.insert(key) {
                return Err(CutQueryError::InvalidGraph(format!("duplicate edge ({u},{v})")));
            }
            list.push(Edge { u: key.0, v: key.1, w });
        }
        Ok(Self::from_edges_unchecked(n, list))
    }

    /// Multigraph view: parallel edges are summed, self-loops and zero
    /// weights dropped.
    pub fn multigraph(n: usize, edges: impl IntoIterator<Item = (usize, usize, W)>) -> Self {
        let mut acc: HashMap<(usize, usize), W> = HashMap::new();
        let mut order = Vec::new();
        for (u, v, w) in edges {
            assert!(u < n && v < n, "edge ({u},{v}) out of range for n={n}");
            if u == v || !w.is_positive() {
                continue;
            }
            let key = (u.min(v), u.max(v));
            match acc.get_mut(&key) {
                Some(x) => *x += w,
                None => {
                    acc.insert(key, w);
                    order.push(key);
                }
            }
        }
        order.sort_unstable();
        let list = order.into_iter().map(|(u, v)| Edge { u, v, w: acc[&(u, v)] }).collect();
        Self::from_edges_unchecked(n, list)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge<W>] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[(usize, W)] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> W {
        let mut d = W::ZERO;
        for &(_, w) in &self.adj[v] {
            d += w;
        }
        d
    }

    pub fn min_degree(&self) -> W {
        (0..self.n).map(|v| self.degree(v)).fold(W::INFINITY, W::min_of)
    }

    pub fn max_weight(&self) -> W {
        let mut best = W::ZERO;
        for e in &self.edges {
            if e.w > best {
                best = e.w;
            }
        }
        best
    }

    pub fn total_weight(&self) -> W {
        let mut t = W::ZERO;
        for e in &self.edges {
            t += e.w;
        }
        t
    }

    pub fn weight_between(&self, u: usize, v: usize) -> W {
        let mut t = W::ZERO;
        for &(x, w) in &self.adj[u] {
            if x == v {
                t += w;
            }
        }
        t
    }

    pub fn cut(&self, side: &[usize]) -> W {
        let mut mark = vec![false; self.n];
        for &v in side {
            mark[v] = true;
        }
        cut_value(self, &mark)
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                i += 1;
                for &(x, w) in &self.adj[v] {
                    if w.is_positive() && !seen[x] {
                        seen[x] = true;
                        comp.push(x);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    /// Multigraph whose vertices are the blocks of `partition`, in block order.
    pub fn contract(&self, partition: &ContractionPartition) -> Graph<W> {
        let block = partition.block_of();
        Graph::multigraph(
            partition.block_count(),
            self.edges.iter().map(|e| (block[e.u], block[e.v], e.w)),
        )
    }

    /// Subgraph induced by `vertices`; vertex `i` of the result is `vertices[i]`.
    pub fn induced(&self, vertices: &[usize]) -> Graph<W> {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let list = self
            .edges
            .iter()
            .filter(|e| index[e.u] != usize::MAX && index[e.v] != usize::MAX)
            .map(|e| {
                let (a, b) = (index[e.u], index[e.v]);
                Edge { u: a.min(b), v: a.max(b), w: e.w }
            })
            .collect();
        Self::from_edges_unchecked(vertices.len(), list)
    }

    pub fn map_weights<V: Weight>(&self, f: impl Fn(W) -> V) -> Graph<V> {
        let list = self.edges.iter().map(|e| Edge { u: e.u, v: e.v, w: f(e.w) }).collect();
        Graph::from_edges_unchecked(self.n, list)
    }
}

impl WeightedGraph {
    pub fn to_f64(&self) -> Graph<f64> {
        self.map_weights(|w| w as f64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple_rejects_bad_input() {
        assert!(WeightedGraph::new_simple(3, [(0, 0, 1)]).is_err());
        assert!(WeightedGraph::new_simple(3, [(0, 1, 1), (1, 0, 2)]).is_err());
        assert!(WeightedGraph::new_simple(3, [(0, 5, 1)]).is_err());
        assert!(WeightedGraph::new_simple(3, [(0, 1, 0)]).is_err());
    }

    #[test]
    fn multigraph_merges_parallel_edges() {
        let g = WeightedGraph::multigraph(3, [(0, 1, 2), (1, 0, 3), (2, 2, 5)]);
        assert_eq!(g.m(), 1);
        assert_eq!(g.weight_between(0, 1), 5);
    }

    #[test]
    fn canonical_cut_excludes_vertex_zero() {
        let c = Cut { side: vec![0, 2], value: 1u64 }.canonical(4);
        assert_eq!(c.side, vec![1, 3]);
    }
}
