//! Maximal k-packing of edge-disjoint forests in `2r` rounds.
//!
//! Each of the `r` iterations spends one round estimating, for every vertex,
//! its number of edges leaving its current supervertex, and one round drawing
//! uniform inter-supervertex edges (a vertex is picked proportionally to its
//! estimate, then a uniform edge of its star). Sampled edges go greedily into
//! the first forest they do not close a cycle in, and nodes connected in
//! every forest are merged.

use std::collections::{HashMap, HashSet};

use rand_distr::{Binomial, Distribution, Exp1};

use crate::error::{CutQueryError, Result};
use crate::graph::{Edge, WeightedGraph};
use crate::oracle::{run_one, Answers, CutOracle, RoundPlan, Staged, View};
use crate::partition::ContractionPartition;
use crate::rng::Seed;
use crate::sampling::{DegreeEstimator, DrawMode, SamplerConfig, StarDraws, WeightedSamplerConfig};

#[derive(Clone, Debug)]
pub struct PackingConfig {
    pub k: usize,
    pub r: usize,
    /// Constant `A` in the per-iteration sample count `A k n^(1+1/r) log2 n`.
    pub a_pack: f64,
    pub sampler: SamplerConfig,
}

impl PackingConfig {
    pub fn new(k: usize, r: usize) -> Self {
        PackingConfig { k, r, a_pack: 8.0, sampler: SamplerConfig::default() }
    }

    /// Edge samples per iteration on a graph with `nodes` vertices.
    pub fn samples(&self, nodes: usize) -> u64 {
        if nodes < 2 {
            return 0;
        }
        let n = nodes as f64;
        (self.a_pack * self.k as f64 * n.powf(1.0 + 1.0 / self.r as f64) * n.log2()).ceil() as u64
    }
}

#[derive(Clone, Debug)]
pub struct ForestPacking {
    pub n: usize,
    /// Forest node of every vertex (the blocks of the starting partition).
    pub node_of: Vec<usize>,
    pub nodes: usize,
    /// Forests as lists of original edges.
    pub forests: Vec<Vec<Edge<u64>>>,
    /// Vertices whose nodes are connected in every forest.
    pub contracted: ContractionPartition,
    /// `contracted` after each iteration.
    pub history: Vec<ContractionPartition>,
    pub samples_per_iteration: Vec<u64>,
}

impl ForestPacking {
    /// All forest edges over the original vertices.
    pub fn union_graph(&self) -> WeightedGraph {
        WeightedGraph::multigraph(self.n, self.forests.iter().flatten().map(|e| (e.u, e.v, e.w)))
    }

    /// All forest edges over the forest nodes.
    pub fn node_graph(&self) -> WeightedGraph {
        WeightedGraph::multigraph(
            self.nodes,
            self.forests.iter().flatten().map(|e| (self.node_of[e.u], self.node_of[e.v], e.w)),
        )
    }

    /// Component partition of forest `i` over nodes.
    pub fn components(&self, i: usize) -> ContractionPartition {
        let mut p = ContractionPartition::identity(self.nodes);
        for e in &self.forests[i] {
            p.union(self.node_of[e.u], self.node_of[e.v]);
        }
        p
    }

    pub fn is_acyclic(&self) -> bool {
        self.forests.iter().all(|f| {
            let mut p = ContractionPartition::identity(self.nodes);
            f.iter().all(|e| p.union(self.node_of[e.u], self.node_of[e.v]))
        })
    }

    pub fn is_edge_disjoint(&self) -> bool {
        let mut seen = HashSet::new();
        self.forests.iter().flatten().all(|e| seen.insert((e.u.min(e.v), e.u.max(e.v))))
    }

    /// Every edge of `g` outside the forests closes a cycle in every forest.
    pub fn is_maximal(&self, g: &WeightedGraph) -> bool {
        let used: HashSet<(usize, usize)> = self.forests.iter().flatten().map(|e| (e.u.min(e.v), e.u.max(e.v))).collect();
        let comps: Vec<ContractionPartition> = (0..self.forests.len()).map(|i| self.components(i)).collect();
        g.edges().iter().filter(|e| !used.contains(&(e.u, e.v))).all(|e| {
            let (a, b) = (self.node_of[e.u], self.node_of[e.v]);
            a == b || comps.iter().all(|c| c.same(a, b))
        })
    }
}

enum Stage {
    Estimate(Vec<(usize, DegreeEstimator)>),
    Draw(Vec<StarDraws>),
    Idle,
}

/// The packing as a staged computation of exactly `2r` rounds.
pub struct PackingRun {
    n: usize,
    cfg: PackingConfig,
    seed: Seed,
    view: View,
    node_of: Vec<usize>,
    nodes: usize,
    forests: Vec<Vec<Edge<u64>>>,
    forest_parts: Vec<ContractionPartition>,
    used: HashSet<(usize, usize)>,
    contracted: ContractionPartition,
    history: Vec<ContractionPartition>,
    samples: Vec<u64>,
    estimates: Vec<u64>,
    stage: usize,
    pending: Stage,
    error: Option<CutQueryError>,
}

impl PackingRun {
    pub fn new(initial: &ContractionPartition, cfg: &PackingConfig, seed: Seed) -> Self {
        let n = initial.n();
        let node_of = initial.block_of();
        let nodes = initial.block_count();
        PackingRun {
            n,
            cfg: cfg.clone(),
            seed,
            view: View::identity(n),
            node_of,
            nodes,
            forests: vec![Vec::new(); cfg.k],
            forest_parts: vec![ContractionPartition::identity(nodes); cfg.k],
            used: HashSet::new(),
            contracted: initial.clone(),
            history: Vec::new(),
            samples: Vec::new(),
            estimates: vec![0; n],
            stage: 0,
            pending: Stage::Idle,
            error: None,
        }
    }

    pub fn into_result(self) -> Result<ForestPacking> {
        if let Some(e) = self.error {
            return Err(e);
        }
        Ok(ForestPacking {
            n: self.n,
            node_of: self.node_of,
            nodes: self.nodes,
            forests: self.forests,
            contracted: self.contracted,
            history: self.history,
            samples_per_iteration: self.samples,
        })
    }

    /// Vertices outside the supervertex of `v`, per vertex.
    fn outside(&self) -> Vec<Vec<usize>> {
        let block = self.contracted.block_of();
        let mut members = vec![Vec::new(); self.contracted.block_count()];
        for (v, &b) in block.iter().enumerate() {
            members[b].push(v);
        }
        (0..self.n)
            .map(|v| {
                let b = block[v];
                members.iter().enumerate().filter(|&(c, _)| c != b).flat_map(|(_, m)| m.iter().copied()).collect()
            })
            .collect()
    }

    fn plan_estimates(&mut self, round: &mut RoundPlan) {
        let iter = self.stage / 2;
        let outside = self.outside();
        let mut est: Vec<(usize, DegreeEstimator)> = outside
            .iter()
            .enumerate()
            .filter(|(_, t)| !t.is_empty())
            .map(|(v, t)| (v, DegreeEstimator::new(&self.view, v, t, self.seed.child(iter as u64).named("deg").child(v as u64))))
            .collect();
        for (_, e) in &mut est {
            e.plan(round);
        }
        self.pending = Stage::Estimate(est);
    }

    fn plan_draws(&mut self, round: &mut RoundPlan) {
        let iter = self.stage / 2;
        let tau = self.cfg.samples(self.nodes);
        self.samples.push(tau);
        let total: u64 = self.estimates.iter().sum();
        if total == 0 || tau == 0 {
            self.pending = Stage::Draw(Vec::new());
            return;
        }
        let outside = self.outside();
        let seed = self.seed.child(iter as u64).named("draw");
        let mut rng = seed.named("alloc").rng();
        let (mut left, mut mass) = (tau, total as f64);
        let wcfg = WeightedSamplerConfig::new(self.n, 1);
        let mut draws = Vec::new();
        for v in 0..self.n {
            let d = self.estimates[v];
            if d == 0 || left == 0 {
                continue;
            }
            let p = (d as f64 / mass).min(1.0);
            let c = if p >= 1.0 { left } else { Binomial::new(left, p).unwrap().sample(&mut rng) };
            left -= c;
            mass -= d as f64;
            if c > 0 {
                let hint = (32 * d) as usize;
                draws.push(StarDraws::new(
                    &self.view,
                    v,
                    &outside[v],
                    c,
                    DrawMode::Uniform,
                    Some(hint),
                    &self.cfg.sampler,
                    &wcfg,
                    seed.child(v as u64),
                ));
            }
        }
        for d in &mut draws {
            d.plan(round);
        }
        self.pending = Stage::Draw(draws);
    }

    fn insert(&mut self, draws: Vec<StarDraws>) {
        let iter = self.stage / 2;
        let mut count: HashMap<(usize, usize), (u64, u64)> = HashMap::new();
        for d in draws {
            let Some(edges) = d.into_result() else {
                self.error.get_or_insert(CutQueryError::SamplingFailed("inter-supervertex edge draw".into()));
                return;
            };
            for (e, c) in edges {
                let key = (e.s.min(e.v), e.s.max(e.v));
                count.entry(key).or_insert((0, e.w)).0 += c;
            }
        }
        // Order distinct edges roughly by first appearance in the sample sequence.
        let mut rng = self.seed.child(iter as u64).named("order").rng();
        let mut keyed: Vec<(f64, (usize, usize), u64)> = count
            .into_iter()
            .map(|(e, (c, w))| {
                let x: f64 = Exp1.sample(&mut rng);
                (x / c as f64, e, w)
            })
            .collect();
        keyed.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        for (_, (u, v), w) in keyed {
            if self.used.contains(&(u, v)) {
                continue;
            }
            let (a, b) = (self.node_of[u], self.node_of[v]);
            if let Some(i) = (0..self.cfg.k).find(|&i| !self.forest_parts[i].same(a, b)) {
                self.forest_parts[i].union(a, b);
                self.forests[i].push(Edge { u, v, w });
                self.used.insert((u, v));
            }
        }
        let mut label: HashMap<Vec<usize>, usize> = HashMap::new();
        let node_label: Vec<usize> = (0..self.nodes)
            .map(|x| {
                let key: Vec<usize> = self.forest_parts.iter().map(|p| p.find(x)).collect();
                let next = label.len();
                *label.entry(key).or_insert(next)
            })
            .collect();
        let labels: Vec<usize> = (0..self.n).map(|v| node_label[self.node_of[v]]).collect();
        let mut merged = ContractionPartition::from_labels(&labels);
        merged.merge_from(&self.contracted);
        self.contracted = merged;
        self.history.push(self.contracted.clone());
    }
}

impl Staged for PackingRun {
    fn plan(&mut self, round: &mut RoundPlan) {
        if self.error.is_some() {
            self.pending = Stage::Idle;
            return;
        }
        if self.stage % 2 == 0 {
            self.plan_estimates(round);
        } else {
            self.plan_draws(round);
        }
    }

    fn resolve(&mut self, answers: &Answers) {
        match std::mem::replace(&mut self.pending, Stage::Idle) {
            Stage::Estimate(mut est) => {
                self.estimates = vec![0; self.n];
                for (v, e) in &mut est {
                    e.resolve(answers);
                    self.estimates[*v] = e.estimate();
                }
            }
            Stage::Draw(mut draws) => {
                for d in &mut draws {
                    d.resolve(answers);
                }
                self.insert(draws);
            }
            Stage::Idle => {}
        }
        self.stage += 1;
    }

    fn done(&self) -> bool {
        self.stage >= 2 * self.cfg.r
    }
}

/// Packs `k` forests of the whole graph.
pub fn pack_forests<O: CutOracle + ?Sized>(oracle: &mut O, cfg: &PackingConfig, seed: Seed) -> Result<ForestPacking> {
    pack_forests_from(oracle, &ContractionPartition::identity(oracle.n()), cfg, seed)
}

/// Packs `k` forests of the graph contracted by `initial`; forest nodes are
/// its blocks and forest edges are original edges between blocks.
pub fn pack_forests_from<O: CutOracle + ?Sized>(
    oracle: &mut O,
    initial: &ContractionPartition,
    cfg: &PackingConfig,
    seed: Seed,
) -> Result<ForestPacking> {
    if cfg.k == 0 || cfg.r == 0 {
        return Err(CutQueryError::InvalidArgument("packing needs k >= 1 and r >= 1".into()));
    }
    run_one(oracle, PackingRun::new(initial, cfg, seed)).into_result()
}
