use std::collections::VecDeque;

use super::{Graph, Weight};

#[derive(Clone, Debug)]
pub struct FlowResult<W> {
    pub value: W,
    /// Absolute flow on each edge of the input graph, in edge order.
    pub edge_flow: Vec<W>,
    /// Vertices reachable from the source in the residual graph.
    pub source_side: Vec<usize>,
}

struct Arc<W> {
    to: usize,
    cap: W,
}

/// Dinic's algorithm on an undirected graph (each edge is a pair of opposite
/// arcs sharing its capacity).
pub fn max_flow<W: Weight>(g: &Graph<W>, s: usize, t: usize) -> FlowResult<W> {
    assert!(s != t && s < g.n() && t < g.n());
    let n = g.n();
    let mut arcs: Vec<Arc<W>> = Vec::with_capacity(2 * g.m());
    let mut head = vec![Vec::new(); n];
    for e in g.edges() {
        head[e.u].push(arcs.len());
        arcs.push(Arc { to: e.v, cap: e.w });
        head[e.v].push(arcs.len());
        arcs.push(Arc { to: e.u, cap: e.w });
    }
    let mut total = W::ZERO;
    let mut level = vec![usize::MAX; n];
    let mut it = vec![0usize; n];
    loop {
        level.iter_mut().for_each(|l| *l = usize::MAX);
        level[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(v) = q.pop_front() {
            for &a in &head[v] {
                let to = arcs[a].to;
                if level[to] == usize::MAX && arcs[a].cap.is_positive() {
                    level[to] = level[v] + 1;
                    q.push_back(to);
                }
            }
        }
        if level[t] == usize::MAX {
            break;
        }
        it.iter_mut().for_each(|x| *x = 0);
        loop {
            let pushed = augment(&mut arcs, &head, &level, &mut it, s, t, W::INFINITY);
            if !pushed.is_positive() {
                break;
            }
            total += pushed;
        }
    }
    let edge_flow = g
        .edges()
        .iter()
        .enumerate()
        .map(|(i, e)| {
            let fwd = arcs[2 * i].cap;
            if fwd < e.w {
                e.w - fwd
            } else {
                e.w - arcs[2 * i + 1].cap
            }
        })
        .collect();
    let source_side = (0..n).filter(|&v| level[v] != usize::MAX).collect();
    FlowResult { value: total, edge_flow, source_side }
}

fn augment<W: Weight>(
    arcs: &mut [Arc<W>],
    head: &[Vec<usize>],
    level: &[usize],
    it: &mut [usize],
    v: usize,
    t: usize,
    limit: W,
) -> W {
    if v == t {
        return limit;
    }
    while it[v] < head[v].len() {
        let a = head[v][it[v]];
        let to = arcs[a].to;
        if arcs[a].cap.is_positive() && level[to] == level[v] + 1 {
            let d = augment(arcs, head, level, it, to, t, W::min_of(limit, arcs[a].cap));
            if d.is_positive() {
                arcs[a].cap -= d;
                arcs[a ^ 1].cap += d;
                return d;
            }
        }
        it[v] += 1;
    }
    W::ZERO
}
