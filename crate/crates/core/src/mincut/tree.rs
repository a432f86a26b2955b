use rand::seq::index::sample;
use rand::Rng;

use crate::graph::Graph;
use crate::partition::ContractionPartition;

/// A rooted spanning forest. Tree edge `c` is the edge from `c` to its parent;
/// its subtree `X_c` is one side of the 1-respecting cut it defines.
#[derive(Clone, Debug)]
pub struct SpanningTree {
    pub parent: Vec<Option<usize>>,
    pub children: Vec<Vec<usize>>,
    /// Vertices in preorder.
    pub order: Vec<usize>,
    tin: Vec<usize>,
    tout: Vec<usize>,
}

impl SpanningTree {
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut parent = vec![None; n];
        let mut children = vec![Vec::new(); n];
        let mut seen = vec![false; n];
        let mut order = Vec::with_capacity(n);
        let (mut tin, mut tout) = (vec![0; n], vec![0; n]);
        for root in 0..n {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            let mut stack = vec![(root, 0usize)];
            tin[root] = order.len();
            order.push(root);
            while let Some(&mut (v, ref mut i)) = stack.last_mut() {
                if *i < adj[v].len() {
                    let x = adj[v][*i];
                    *i += 1;
                    if !seen[x] {
                        seen[x] = true;
                        parent[x] = Some(v);
                        children[v].push(x);
                        tin[x] = order.len();
                        order.push(x);
                        stack.push((x, 0));
                    }
                } else {
                    tout[v] = order.len();
                    stack.pop();
                }
            }
        }
        SpanningTree { parent, children, order, tin, tout }
    }

    pub fn n(&self) -> usize {
        self.parent.len()
    }

    /// Tree edges, named by their child endpoint, in preorder.
    pub fn edges(&self) -> Vec<usize> {
        self.order.iter().copied().filter(|&v| self.parent[v].is_some()).collect()
    }

    /// `a` is an ancestor of `b` or equal to it.
    pub fn is_ancestor(&self, a: usize, b: usize) -> bool {
        self.tin[a] <= self.tin[b] && self.tout[b] <= self.tout[a]
    }

    pub fn subtree(&self, c: usize) -> Vec<usize> {
        let mut out = self.order[self.tin[c]..self.tout[c]].to_vec();
        out.sort_unstable();
        out
    }

    /// Heavy-light decomposition: paths of tree edges, each listed top-down.
    /// Every tree edge lies on exactly one path.
    pub fn heavy_paths(&self) -> Vec<Vec<usize>> {
        let size: Vec<usize> = (0..self.n()).map(|v| self.tout[v] - self.tin[v]).collect();
        let mut paths = Vec::new();
        for &v in &self.order {
            let head = match self.parent[v] {
                None => false,
                Some(p) => self.heavy_child(p, &size) != Some(v),
            };
            if !head {
                continue;
            }
            let mut path = vec![v];
            let mut x = v;
            while let Some(h) = self.heavy_child(x, &size) {
                path.push(h);
                x = h;
            }
            paths.push(path);
        }
        // Root chains: a root's heavy child starts a path too.
        for &v in &self.order {
            if self.parent[v].is_none() {
                if let Some(h) = self.heavy_child(v, &size) {
                    let mut path = vec![h];
                    let mut x = h;
                    while let Some(y) = self.heavy_child(x, &size) {
                        path.push(y);
                        x = y;
                    }
                    paths.push(path);
                }
            }
        }
        paths
    }

    fn heavy_child(&self, v: usize, size: &[usize]) -> Option<usize> {
        self.children[v].iter().copied().max_by_key(|&c| (size[c], std::cmp::Reverse(c)))
    }

    /// Number of tree edges crossing the cut with side `side`.
    pub fn crossings(&self, side: &[usize]) -> usize {
        let mut inside = vec![false; self.n()];
        for &v in side {
            inside[v] = true;
        }
        self.edges().into_iter().filter(|&c| inside[c] != inside[self.parent[c].unwrap()]).count()
    }

    /// Cut values in `h` of every 1- and 2-respecting cut: `single[c]` for
    /// edge `c`, `pair[c][d]` for the cut `X_c △ X_d`. Quadratic in `n`.
    pub fn respecting_values(&self, h: &Graph<f64>) -> (Vec<f64>, Vec<Vec<f64>>) {
        let n = self.n();
        // rho[u][f] = w(u, X_f), by subtree sums of u's adjacency.
        let mut rho = vec![vec![0.0; n]; n];
        for u in 0..n {
            let row = &mut rho[u];
            for &(v, w) in h.neighbors(u) {
                row[v] += w;
            }
            for &v in self.order.iter().rev() {
                if let Some(p) = self.parent[v] {
                    row[p] += row[v];
                }
            }
        }
        // cross[e][f] = sum over u in X_e of rho[u][f].
        let mut cross = rho;
        for &v in self.order.iter().rev() {
            if let Some(p) = self.parent[v] {
                let (a, b) = if p < v {
                    let (lo, hi) = cross.split_at_mut(v);
                    (&mut lo[p], &hi[0])
                } else {
                    let (lo, hi) = cross.split_at_mut(p);
                    (&mut hi[0], &lo[v])
                };
                for (x, y) in a.iter_mut().zip(b) {
                    *x += *y;
                }
            }
        }
        let degree: Vec<f64> = (0..n).map(|u| h.neighbors(u).iter().map(|&(_, w)| w).sum()).collect();
        let mut deg_sum = degree.clone();
        for &v in self.order.iter().rev() {
            if let Some(p) = self.parent[v] {
                deg_sum[p] += deg_sum[v];
            }
        }
        let single: Vec<f64> = (0..n).map(|c| deg_sum[c] - cross[c][c]).collect();
        let mut pair = vec![vec![0.0; n]; n];
        for e in 0..n {
            for f in 0..n {
                pair[e][f] = if e == f {
                    0.0
                } else if self.is_ancestor(e, f) {
                    single[e] - single[f] + 2.0 * (cross[e][f] - cross[f][f])
                } else if self.is_ancestor(f, e) {
                    single[f] - single[e] + 2.0 * (cross[f][e] - cross[e][e])
                } else {
                    single[e] + single[f] - 2.0 * cross[e][f]
                };
            }
        }
        (single, pair)
    }
}

/// Greedy load-balancing packing: `rounds` minimum spanning trees under
/// `load / weight`, each incrementing the load of its edges; then `count`
/// distinct trees drawn uniformly from the pool.
pub fn greedy_tree_packing(h: &Graph<f64>, rounds: usize, count: usize, rng: &mut impl Rng) -> Vec<SpanningTree> {
    let n = h.n();
    let mut load = vec![0.0f64; h.m()];
    let mut pool = Vec::with_capacity(rounds);
    let mut idx: Vec<usize> = (0..h.m()).collect();
    for _ in 0..rounds.max(1) {
        idx.sort_by(|&a, &b| (load[a] / h.edges()[a].w).total_cmp(&(load[b] / h.edges()[b].w)).then(a.cmp(&b)));
        let mut p = ContractionPartition::identity(n);
        let mut tree = Vec::with_capacity(n.saturating_sub(1));
        for &i in &idx {
            let e = h.edges()[i];
            if p.union(e.u, e.v) {
                load[i] += 1.0;
                tree.push((e.u, e.v));
            }
        }
        pool.push(tree);
    }
    let take = count.clamp(1, pool.len());
    sample(rng, pool.len(), take).into_iter().map(|i| SpanningTree::from_edges(n, &pool[i])).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::WeightedGraph;

    #[test]
    fn respecting_values_match_direct_cuts() {
        let g = crate::graph::generate(&"gnp:12,0.5,5".parse().unwrap(), 4).unwrap();
        let h = g.to_f64();
        let edges: Vec<(usize, usize)> = (1..12).map(|v| (v, (v - 1) / 2)).collect();
        let t = SpanningTree::from_edges(12, &edges);
        let (single, pair) = t.respecting_values(&h);
        for c in t.edges() {
            assert_eq!(single[c], g.cut(&t.subtree(c)) as f64);
            for d in t.edges() {
                if c == d {
                    continue;
                }
                let (a, b) = (t.subtree(c), t.subtree(d));
                let side: Vec<usize> = (0..12).filter(|v| a.contains(v) != b.contains(v)).collect();
                assert_eq!(pair[c][d], g.cut(&side) as f64, "edges {c} {d}");
            }
        }
    }

    #[test]
    fn heavy_paths_partition_edges() {
        let g = crate::graph::generate(&"gnp:30,0.2".parse().unwrap(), 1).unwrap();
        let mut rng = crate::rng::Seed::new(3).rng();
        for t in greedy_tree_packing(&g.to_f64(), 10, 4, &mut rng) {
            let mut all: Vec<usize> = t.heavy_paths().concat();
            all.sort_unstable();
            assert_eq!(all, {
                let mut e = t.edges();
                e.sort_unstable();
                e
            });
            for p in t.heavy_paths() {
                assert!(p.windows(2).all(|w| t.parent[w[1]] == Some(w[0])));
            }
        }
        let _ = WeightedGraph::empty(1);
    }
}
