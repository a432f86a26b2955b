//! Exact reference algorithms. Everything the query algorithms return is
//! checked against these.

use super::{max_flow, Cut, Graph, Weight};
use crate::error::{CutQueryError, Result};
use crate::partition::ContractionPartition;

/// Largest graph the exhaustive routines accept.
pub const EXHAUSTIVE_LIMIT: usize = 22;

pub fn cut_value<W: Weight>(g: &Graph<W>, inside: &[bool]) -> W {
    let mut total = W::ZERO;
    for e in g.edges() {
        if inside[e.u] != inside[e.v] {
            total += e.w;
        }
    }
    total
}

/// Global minimum cut by Stoer–Wagner. Disconnected graphs yield a component
/// with value zero; graphs with fewer than two vertices yield an empty side.
pub fn exact_min_cut<W: Weight>(g: &Graph<W>) -> Cut<W> {
    let n = g.n();
    if n < 2 {
        return Cut { side: Vec::new(), value: W::ZERO };
    }
    let comps = g.components();
    if comps.len() > 1 {
        let side = comps.into_iter().last().unwrap();
        return Cut { side, value: W::ZERO }.canonical(n);
    }
    let mut w = vec![W::ZERO; n * n];
    for e in g.edges() {
        w[e.u * n + e.v] += e.w;
        w[e.v * n + e.u] += e.w;
    }
    let mut members: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    let mut alive: Vec<usize> = (0..n).collect();
    let mut best: Option<Cut<W>> = None;
    let mut key = vec![W::ZERO; n];
    let mut added = vec![false; n];
    while alive.len() > 1 {
        for &v in &alive {
            key[v] = W::ZERO;
            added[v] = false;
        }
        let mut prev = alive[0];
        added[prev] = true;
        for &v in &alive {
            key[v] = w[prev * n + v];
        }
        let mut last = prev;
        for _ in 1..alive.len() {
            let mut pick = usize::MAX;
            for &v in &alive {
                if !added[v] && (pick == usize::MAX || key[v] > key[pick]) {
                    pick = v;
                }
            }
            added[pick] = true;
            prev = last;
            last = pick;
            for &v in &alive {
                if !added[v] {
                    let x = w[pick * n + v];
                    key[v] += x;
                }
            }
        }
        let phase = key[last];
        if best.as_ref().map_or(true, |b| phase < b.value) {
            best = Some(Cut { side: members[last].clone(), value: phase });
        }
        let moved = std::mem::take(&mut members[last]);
        members[prev].extend(moved);
        for &v in &alive {
            if v != prev && v != last {
                let x = w[last * n + v];
                w[prev * n + v] += x;
                w[v * n + prev] += x;
            }
        }
        alive.retain(|&v| v != last);
    }
    best.unwrap().canonical(n)
}

/// Visits every nonempty side that excludes vertex 0, in Gray-code order,
/// with its cut value.
fn for_each_cut<W: Weight>(g: &Graph<W>, mut visit: impl FnMut(&[bool], W)) {
    let n = g.n();
    assert!(n <= EXHAUSTIVE_LIMIT, "exhaustive enumeration limited to n <= {EXHAUSTIVE_LIMIT}");
    if n < 2 {
        return;
    }
    let mut inside = vec![false; n];
    let mut value = W::ZERO;
    let total = 1u64 << (n - 1);
    for i in 1..total {
        let bit = i.trailing_zeros() as usize;
        let v = bit + 1;
        let mut plus = W::ZERO;
        let mut minus = W::ZERO;
        for &(x, w) in g.neighbors(v) {
            if inside[x] == inside[v] {
                plus += w;
            } else {
                minus += w;
            }
        }
        value = value + plus - minus;
        inside[v] = !inside[v];
        visit(&inside, value);
    }
}

fn side_of(inside: &[bool]) -> Vec<usize> {
    (0..inside.len()).filter(|&v| inside[v]).collect()
}

/// Largest relative deviation `|cut_h(S) / cut_g(S) - 1|` over all cuts.
/// A cut that is empty in `g` but not in `h` counts as infinite.
pub fn max_cut_distortion(g: &Graph<u64>, h: &Graph<f64>) -> f64 {
    assert_eq!(g.n(), h.n());
    let mut hv = Vec::with_capacity(1usize << g.n().saturating_sub(1));
    for_each_cut(h, |_, value| hv.push(value));
    let mut worst = 0.0f64;
    let mut i = 0;
    for_each_cut(g, |_, value| {
        let (a, b) = (value as f64, hv[i]);
        i += 1;
        let d = if a == 0.0 {
            if b.abs() > 1e-9 { f64::INFINITY } else { 0.0 }
        } else {
            (b / a - 1.0).abs()
        };
        worst = worst.max(d);
    });
    worst
}

/// Minimum cut by exhaustive search; second reference for small graphs.
pub fn brute_force_min_cut<W: Weight>(g: &Graph<W>) -> Cut<W> {
    let mut best: Option<Cut<W>> = None;
    for_each_cut(g, |inside, value| {
        if best.as_ref().map_or(true, |b| value < b.value) {
            best = Some(Cut { side: side_of(inside), value });
        }
    });
    best.unwrap_or(Cut { side: Vec::new(), value: W::ZERO })
}

/// All cuts of value at most `bound`, canonicalized. Fails with
/// `ResourceCap` once more than `cap` cuts qualify.
pub fn enumerate_cuts_at_most<W: Weight>(g: &Graph<W>, bound: W, cap: usize) -> Result<Vec<Cut<W>>> {
    let mut out = Vec::new();
    let overflow = || CutQueryError::ResourceCap(format!("more than {cap} cuts below the bound"));
    if g.n() < 2 {
        return Ok(out);
    }
    if g.n() <= 20 {
        let mut over = false;
        for_each_cut(g, |inside, value| {
            if !over && value.approx_le(bound) {
                out.push(Cut { side: side_of(inside), value });
                over = out.len() > cap;
            }
        });
        if over {
            return Err(overflow());
        }
        return Ok(out);
    }
    let mut assign: Vec<Option<bool>> = vec![None; g.n()];
    assign[0] = Some(false);
    branch(g, bound, cap, 1, &mut assign, &mut out).map_err(|_| overflow())?;
    Ok(out)
}

fn branch<W: Weight>(
    g: &Graph<W>,
    bound: W,
    cap: usize,
    next: usize,
    assign: &mut Vec<Option<bool>>,
    out: &mut Vec<Cut<W>>,
) -> std::result::Result<(), ()> {
    let n = g.n();
    if next == n {
        if !assign.iter().any(|a| *a == Some(true)) {
            return Ok(());
        }
        let inside: Vec<bool> = assign.iter().map(|a| *a == Some(true)).collect();
        let value = cut_value(g, &inside);
        if value.approx_le(bound) {
            out.push(Cut { side: side_of(&inside), value });
            if out.len() > cap {
                return Err(());
            }
        }
        return Ok(());
    }
    for choice in [false, true] {
        assign[next] = Some(choice);
        if lower_bound(g, assign).approx_le(bound) {
            branch(g, bound, cap, next + 1, assign, out)?;
        }
    }
    assign[next] = None;
    Ok(())
}

/// Cheapest cut consistent with a partial assignment.
fn lower_bound<W: Weight>(g: &Graph<W>, assign: &[Option<bool>]) -> W {
    let n = g.n();
    let mut p = ContractionPartition::identity(n);
    let (mut a_rep, mut b_rep) = (None, None);
    for v in 0..n {
        match assign[v] {
            Some(false) => {
                if let Some(r) = a_rep {
                    p.union(r, v);
                } else {
                    a_rep = Some(v);
                }
            }
            Some(true) => {
                if let Some(r) = b_rep {
                    p.union(r, v);
                } else {
                    b_rep = Some(v);
                }
            }
            None => {}
        }
    }
    let block = p.block_of();
    let h = g.contract(&p);
    match (a_rep, b_rep) {
        (Some(a), Some(b)) => max_flow(&h, block[a], block[b]).value,
        (Some(_), None) if h.n() >= 2 => exact_min_cut(&h).value,
        _ => W::INFINITY,
    }
}

/// Strength of every edge (in edge order): the largest minimum cut of an
/// induced subgraph containing both endpoints. Computed by recursively
/// splitting along minimum cuts.
pub fn exact_strengths<W: Weight>(g: &Graph<W>) -> Vec<W> {
    let mut strength = vec![W::ZERO; g.m()];
    let mut edge_index = std::collections::HashMap::new();
    for (i, e) in g.edges().iter().enumerate() {
        edge_index.insert((e.u, e.v), i);
    }
    let mut stack = vec![(0..g.n()).collect::<Vec<_>>()];
    while let Some(set) = stack.pop() {
        if set.len() < 2 {
            continue;
        }
        let sub = g.induced(&set);
        let comps = sub.components();
        if comps.len() > 1 {
            for c in comps {
                stack.push(c.into_iter().map(|i| set[i]).collect());
            }
            continue;
        }
        let cut = exact_min_cut(&sub);
        for e in sub.edges() {
            let (a, b) = (set[e.u], set[e.v]);
            let idx = edge_index[&(a.min(b), a.max(b))];
            if strength[idx] < cut.value {
                strength[idx] = cut.value;
            }
        }
        let mut inside = vec![false; set.len()];
        for &i in &cut.side {
            inside[i] = true;
        }
        stack.push((0..set.len()).filter(|&i| inside[i]).map(|i| set[i]).collect());
        stack.push((0..set.len()).filter(|&i| !inside[i]).map(|i| set[i]).collect());
    }
    strength
}

#[derive(Clone, Debug)]
pub struct MaxCut<W> {
    pub cut: Cut<W>,
    /// True when the value is certified optimal.
    pub exact: bool,
}

/// Maximum cut: exhaustive for small graphs, local search otherwise.
pub fn exact_max_cut<W: Weight>(g: &Graph<W>) -> MaxCut<W> {
    if g.n() > 20 {
        return MaxCut { cut: local_max_cut(g), exact: false };
    }
    let mut best = Cut { side: Vec::new(), value: W::ZERO };
    for_each_cut(g, |inside, value| {
        if value > best.value {
            best = Cut { side: side_of(inside), value };
        }
    });
    MaxCut { cut: best, exact: true }
}

/// Single-flip local search from a greedy start.
pub fn local_max_cut<W: Weight>(g: &Graph<W>) -> Cut<W> {
    let n = g.n();
    let mut inside = vec![false; n];
    let mut placed = vec![false; n];
    for v in 0..n {
        let (mut to_in, mut to_out) = (W::ZERO, W::ZERO);
        for &(x, w) in g.neighbors(v) {
            if placed[x] {
                if inside[x] {
                    to_in += w;
                } else {
                    to_out += w;
                }
            }
        }
        inside[v] = to_out > to_in;
        placed[v] = true;
    }
    loop {
        let mut improved = false;
        for v in 0..n {
            let (mut same, mut other) = (W::ZERO, W::ZERO);
            for &(x, w) in g.neighbors(v) {
                if inside[x] == inside[v] {
                    same += w;
                } else {
                    other += w;
                }
            }
            if same > other && !(same - other).approx_le(W::ZERO) {
                inside[v] = !inside[v];
                improved = true;
            }
        }
        if !improved {
            break;
        }
    }
    let value = cut_value(g, &inside);
    Cut { side: side_of(&inside), value }.canonical(n)
}

/// Minimum s-t cut; the side contains `s`.
pub fn min_st_cut<W: Weight>(g: &Graph<W>, s: usize, t: usize) -> Cut<W> {
    let f = max_flow(g, s, t);
    Cut { side: f.source_side, value: f.value }
}
