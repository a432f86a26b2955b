//! One-round reconstruction of a whole (contracted) graph from cut queries.
//!
//! Points are colored into `B` groups, several times. For every pair of
//! groups the round measures the cross weight and, for each id bit, the
//! cross weight restricted to points with that bit set on either side. A
//! group pair holding a single edge spells out both endpoints; decoded edges
//! are peeled from every coloring, and the total weight (from the singleton
//! degrees) must be fully accounted for.

use rand::Rng;

use crate::error::{CutQueryError, Result};
use crate::graph::WeightedGraph;
use crate::oracle::{Answers, CutOracle, QueryId, RoundPlan, Staged, View};
use crate::rng::Seed;
use crate::sampling::ceil_log2;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RecoveryStrategy {
    /// Whichever of the other two needs fewer queries.
    Auto,
    /// Every singleton and every pair of points.
    Direct,
    /// Group-pair isolation sized by the edge budget.
    Grouped,
}

#[derive(Clone, Debug)]
pub struct RecoveryConfig {
    /// Isolation constant: `B^2 >= c_rec * budget`.
    pub c_rec: f64,
    /// Independent colorings; `None` means `max(6, ceil(log2 n) + 2)`.
    pub colorings: Option<usize>,
    pub strategy: RecoveryStrategy,
}

impl Default for RecoveryConfig {
    fn default() -> Self {
        RecoveryConfig { c_rec: 4.0, colorings: None, strategy: RecoveryStrategy::Auto }
    }
}

impl RecoveryConfig {
    pub fn groups(&self, budget: usize) -> usize {
        (self.c_rec * budget.max(1) as f64).sqrt().ceil().max(2.0) as usize
    }

    fn colorings_for(&self, points: usize) -> usize {
        self.colorings.unwrap_or_else(|| (ceil_log2(points) + 2).max(6))
    }

    /// Query count of the grouped scheme, ignoring empty groups.
    pub fn grouped_cost(&self, points: usize, budget: usize) -> usize {
        let b = self.groups(budget).min(points.max(1));
        let bits = ceil_log2(points).max(1);
        points + self.colorings_for(points) * (b * (1 + bits) + b * (b - 1) / 2 * (1 + 2 * bits))
    }

    pub fn direct_cost(points: usize) -> usize {
        points + points * points.saturating_sub(1) / 2
    }

    pub fn resolve(&self, points: usize, budget: usize) -> RecoveryStrategy {
        match self.strategy {
            RecoveryStrategy::Auto if Self::direct_cost(points) <= self.grouped_cost(points, budget) => {
                RecoveryStrategy::Direct
            }
            RecoveryStrategy::Auto => RecoveryStrategy::Grouped,
            s => s,
        }
    }
}

struct GroupPair {
    a: usize,
    b: usize,
    union: QueryId,
    /// Per bit: union of (a restricted to the bit) with b, and a with (b restricted).
    bit_unions: Vec<(Option<QueryId>, Option<QueryId>)>,
}

struct Coloring {
    color: Vec<usize>,
    group: Vec<Option<QueryId>>,
    group_bit: Vec<Vec<Option<QueryId>>>,
    pairs: Vec<GroupPair>,
}

enum Plan {
    Direct { pairs: Vec<(usize, usize, QueryId)> },
    Grouped { bits: usize, colorings: Vec<Coloring> },
}

/// Recovers every edge between the points of `view`, assuming at most
/// `budget / c_rec` of them.
pub struct GraphRecovery {
    view: View,
    budget: usize,
    cfg: RecoveryConfig,
    seed: Seed,
    singles: Vec<QueryId>,
    plan: Option<Plan>,
    result: Option<Result<WeightedGraph>>,
}

impl GraphRecovery {
    pub fn new(view: &View, budget: usize, cfg: &RecoveryConfig, seed: Seed) -> Self {
        GraphRecovery { view: view.clone(), budget, cfg: cfg.clone(), seed, singles: Vec::new(), plan: None, result: None }
    }

    pub fn strategy(&self) -> RecoveryStrategy {
        self.cfg.resolve(self.view.points(), self.budget)
    }

    pub fn result(&self) -> Result<&WeightedGraph> {
        match self.result.as_ref().expect("recovery not resolved") {
            Ok(g) => Ok(g),
            Err(e) => Err(CutQueryError::RecoveryFailed(e.to_string())),
        }
    }

    pub fn into_result(self) -> Result<WeightedGraph> {
        self.result.expect("recovery not resolved")
    }

    fn members(&self, points: impl Iterator<Item = usize>) -> Vec<usize> {
        points.flat_map(|p| self.view.members(p).iter().map(|&v| v as usize)).collect()
    }

    fn plan_grouped(&self, round: &mut RoundPlan) -> Plan {
        let n = self.view.points();
        let b = self.cfg.groups(self.budget).min(n);
        let bits = ceil_log2(n).max(1);
        let mut rng = self.seed.named("colorings").rng();
        let mut colorings = Vec::new();
        for _ in 0..self.cfg.colorings_for(n) {
            let color: Vec<usize> = (0..n).map(|_| rng.gen_range(0..b)).collect();
            let mut members = vec![Vec::new(); b];
            for (p, &c) in color.iter().enumerate() {
                members[c].push(p);
            }
            let group: Vec<Option<QueryId>> = members
                .iter()
                .map(|m| (!m.is_empty()).then(|| round.query(self.members(m.iter().copied()))))
                .collect();
            let restricted = |m: &Vec<usize>, j: usize| -> Vec<usize> { m.iter().copied().filter(|p| p >> j & 1 == 1).collect() };
            let group_bit: Vec<Vec<Option<QueryId>>> = members
                .iter()
                .map(|m| {
                    (0..bits)
                        .map(|j| {
                            let r = restricted(m, j);
                            (!r.is_empty()).then(|| round.query(self.members(r.into_iter())))
                        })
                        .collect()
                })
                .collect();
            let mut pairs = Vec::new();
            for a in 0..b {
                for c in a + 1..b {
                    if members[a].is_empty() || members[c].is_empty() {
                        continue;
                    }
                    let union = round.query(self.members(members[a].iter().chain(&members[c]).copied()));
                    let bit_unions = (0..bits)
                        .map(|j| {
                            let ra = restricted(&members[a], j);
                            let rc = restricted(&members[c], j);
                            let left = (!ra.is_empty())
                                .then(|| round.query(self.members(ra.iter().chain(&members[c]).copied())));
                            let right = (!rc.is_empty())
                                .then(|| round.query(self.members(members[a].iter().chain(&rc).copied())));
                            (left, right)
                        })
                        .collect();
                    pairs.push(GroupPair { a, b: c, union, bit_unions });
                }
            }
            colorings.push(Coloring { color, group, group_bit, pairs });
        }
        Plan::Grouped { bits, colorings }
    }

    fn decode(&self, answers: &Answers) -> Result<WeightedGraph> {
        let n = self.view.points();
        let deg: Vec<u64> = self.singles.iter().map(|&q| answers.get(q)).collect();
        let total: u64 = deg.iter().sum::<u64>() / 2;
        let fail = |why: &str| CutQueryError::RecoveryFailed(why.to_string());
        let edges = match self.plan.as_ref().expect("planned") {
            Plan::Direct { pairs } => pairs
                .iter()
                .filter_map(|&(p, q, id)| {
                    let w = (deg[p] + deg[q] - answers.get(id)) / 2;
                    (w > 0).then_some((p, q, w))
                })
                .collect::<Vec<_>>(),
            Plan::Grouped { bits, colorings } => decode_grouped(*bits, colorings, answers)
                .ok_or_else(|| fail("group pairs could not be fully decoded"))?,
        };
        let found: u64 = edges.iter().map(|e| e.2).sum();
        if found != total {
            return Err(fail(&format!("recovered weight {found} of {total}")));
        }
        Ok(WeightedGraph::multigraph(n, edges))
    }
}

fn cross(answers: &Answers, a: Option<QueryId>, b: Option<QueryId>, union: Option<QueryId>) -> i128 {
    let get = |q: Option<QueryId>| q.map_or(0, |q| answers.get(q) as i128);
    (get(a) + get(b) - get(union)) / 2
}

/// Residual cell: total followed by left-bit and right-bit weights.
fn decode_grouped(bits: usize, colorings: &[Coloring], answers: &Answers) -> Option<Vec<(usize, usize, u64)>> {
    let mut cells: Vec<Vec<Vec<i128>>> = Vec::new();
    let mut index: Vec<std::collections::HashMap<(usize, usize), usize>> = Vec::new();
    for c in colorings {
        let mut rows = Vec::with_capacity(c.pairs.len());
        let mut idx = std::collections::HashMap::new();
        for (k, p) in c.pairs.iter().enumerate() {
            let mut cell = Vec::with_capacity(1 + 2 * bits);
            cell.push(cross(answers, c.group[p.a], c.group[p.b], Some(p.union)));
            for (j, &(l, _)) in p.bit_unions.iter().enumerate() {
                cell.push(if l.is_none() { 0 } else { cross(answers, c.group_bit[p.a][j], c.group[p.b], l) });
            }
            for (j, &(_, r)) in p.bit_unions.iter().enumerate() {
                cell.push(if r.is_none() { 0 } else { cross(answers, c.group[p.a], c.group_bit[p.b][j], r) });
            }
            rows.push(cell);
            idx.insert((p.a, p.b), k);
        }
        cells.push(rows);
        index.push(idx);
    }
    let mut found = Vec::new();
    let mut seen = std::collections::HashSet::new();
    loop {
        let mut progress = false;
        for ci in 0..colorings.len() {
            for k in 0..cells[ci].len() {
                let cell = &cells[ci][k];
                let t = cell[0];
                if t <= 0 {
                    continue;
                }
                let spell = |off: usize| -> Option<usize> {
                    let mut id = 0;
                    for j in 0..bits {
                        let x = cell[off + j];
                        if x == t {
                            id |= 1 << j;
                        } else if x != 0 {
                            return None;
                        }
                    }
                    Some(id)
                };
                let (Some(u), Some(v)) = (spell(1), spell(1 + bits)) else { continue };
                let color = &colorings[ci].color;
                let pair = &colorings[ci].pairs[k];
                if u >= color.len() || v >= color.len() || color[u] != pair.a || color[v] != pair.b {
                    continue;
                }
                let key = (u.min(v), u.max(v));
                if !seen.insert(key) {
                    return None;
                }
                found.push((key.0, key.1, t as u64));
                for (cj, c) in colorings.iter().enumerate() {
                    let (cu, cv) = (c.color[u], c.color[v]);
                    if cu == cv {
                        continue;
                    }
                    let (lo, hi, lo_pt, hi_pt) = if cu < cv { (cu, cv, u, v) } else { (cv, cu, v, u) };
                    let Some(&kk) = index[cj].get(&(lo, hi)) else { return None };
                    let cell = &mut cells[cj][kk];
                    cell[0] -= t;
                    for j in 0..bits {
                        if lo_pt >> j & 1 == 1 {
                            cell[1 + j] -= t;
                        }
                        if hi_pt >> j & 1 == 1 {
                            cell[1 + bits + j] -= t;
                        }
                    }
                }
                progress = true;
            }
        }
        if !progress {
            break;
        }
    }
    cells.iter().all(|c| c.iter().all(|cell| cell.iter().all(|&x| x == 0))).then_some(found)
}

impl Staged for GraphRecovery {
    fn plan(&mut self, round: &mut RoundPlan) {
        let n = self.view.points();
        self.singles = (0..n).map(|p| round.query_points(&self.view, &[p])).collect();
        self.plan = Some(match self.strategy() {
            RecoveryStrategy::Grouped => self.plan_grouped(round),
            _ => {
                let mut pairs = Vec::with_capacity(n * n.saturating_sub(1) / 2);
                for p in 0..n {
                    for q in p + 1..n {
                        pairs.push((p, q, round.query_points(&self.view, &[p, q])));
                    }
                }
                Plan::Direct { pairs }
            }
        });
    }

    fn resolve(&mut self, answers: &Answers) {
        self.result = Some(self.decode(answers));
        self.plan = None;
    }

    fn done(&self) -> bool {
        self.result.is_some()
    }
}

/// Recovers the graph on the points of `view` in one round.
pub fn recover_graph<O: CutOracle + ?Sized>(
    oracle: &mut O,
    view: &View,
    budget: usize,
    cfg: &RecoveryConfig,
    seed: Seed,
) -> Result<WeightedGraph> {
    crate::oracle::run_one(oracle, GraphRecovery::new(view, budget, cfg, seed)).into_result()
}

/// Spends one round on `trials` uniformly random vertex sets and checks that
/// `g` reproduces every answer.
pub fn verify_recovery<O: CutOracle + ?Sized>(g: &WeightedGraph, oracle: &mut O, trials: usize, seed: Seed) -> bool {
    if trials == 0 {
        return true;
    }
    let n = oracle.n();
    let mut rng = seed.rng();
    let sets: Vec<Vec<usize>> = (0..trials).map(|_| (0..n).filter(|_| rng.gen_bool(0.5)).collect()).collect();
    let answers = oracle.query_batch(&sets);
    sets.iter().zip(answers).all(|(s, a)| g.cut(s) == a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, GenSpec};
    use crate::oracle::GraphOracle;

    fn grouped() -> RecoveryConfig {
        RecoveryConfig { strategy: RecoveryStrategy::Grouped, ..Default::default() }
    }

    #[test]
    fn k4_both_strategies() {
        let g = generate(&"clique:4".parse::<GenSpec>().unwrap(), 0).unwrap();
        for cfg in [RecoveryConfig::default(), grouped()] {
            let mut o = GraphOracle::new(&g);
            let h = recover_graph(&mut o, &View::identity(4), 32, &cfg, Seed::new(1)).unwrap();
            assert_eq!(h.edges(), g.edges());
            assert_eq!(o.ledger().rounds, 1);
        }
    }

    #[test]
    fn empty_graph() {
        let g = WeightedGraph::empty(6);
        let mut o = GraphOracle::new(&g);
        let h = recover_graph(&mut o, &View::identity(6), 8, &grouped(), Seed::new(1)).unwrap();
        assert_eq!(h.m(), 0);
    }

    #[test]
    fn overloaded_budget_fails_loudly() {
        let g = generate(&"clique:24".parse::<GenSpec>().unwrap(), 0).unwrap();
        let mut o = GraphOracle::new(&g);
        let cfg = RecoveryConfig { colorings: Some(1), ..grouped() };
        match recover_graph(&mut o, &View::identity(24), 4, &cfg, Seed::new(2)) {
            Ok(h) => assert_eq!(h.edges(), g.edges()),
            Err(e) => assert!(matches!(e, CutQueryError::RecoveryFailed(_))),
        }
    }

    #[test]
    fn verify_detects_missing_edge() {
        let g = generate(&"gnp:20,0.3,5".parse::<GenSpec>().unwrap(), 3).unwrap();
        let mut o = GraphOracle::new(&g);
        assert!(verify_recovery(&g, &mut o, 16, Seed::new(1)));
        let e = g.edges()[0];
        let missing = WeightedGraph::multigraph(20, g.edges().iter().skip(1).map(|e| (e.u, e.v, e.w)));
        assert_ne!(missing.weight_between(e.u, e.v), e.w);
        assert!(!verify_recovery(&missing, &mut o, 64, Seed::new(1)));
    }
}
