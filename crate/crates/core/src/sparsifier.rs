//! Cut sparsification in `3r + 3` rounds.
//!
//! `r` sample-and-contract passes estimate edge strengths: each pass draws
//! weight-proportional edges of the current contraction, keeps the parts of
//! the sample that no sparse cut separates, and contracts them. The strata
//! those passes produce are then sampled with rates inversely proportional to
//! their strength estimates.

use std::collections::HashMap;

use crate::error::{CutQueryError, Result};
use crate::graph::{exact_min_cut, exact_strengths, Graph, WeightedGraph};
use crate::oracle::{run_one, Answers, CutOracle, QueryId, RoundPlan, Staged, View};
use crate::partition::ContractionPartition;
use crate::rng::Seed;
use crate::sampling::{multinomial, DrawMode, SamplerConfig, StarDraws, WeightedSamplerConfig};

fn log2n(n: usize) -> f64 {
    (n.max(2) as f64).log2()
}

/// A component `members` (original vertices, sorted) whose newly contracted
/// edges have strength at least `beta`.
#[derive(Clone, Debug, PartialEq)]
pub struct StrengthEntry {
    pub members: Vec<usize>,
    pub beta: f64,
}

/// True if the entries form a laminar family listed children first.
pub fn is_laminar(entries: &[StrengthEntry]) -> bool {
    for (j, b) in entries.iter().enumerate() {
        for a in &entries[..j] {
            let common = a.members.iter().filter(|v| b.members.binary_search(v).is_ok()).count();
            if common != 0 && common != a.members.len() {
                return false;
            }
        }
    }
    true
}

/// For every edge of `g`: the estimate of the first entry containing both
/// endpoints, and the exact strength. `None` if some edge is uncovered.
pub fn strength_pairs(g: &WeightedGraph, entries: &[StrengthEntry]) -> Option<Vec<(f64, u64)>> {
    let kappa = exact_strengths(g);
    g.edges()
        .iter()
        .zip(kappa)
        .map(|(e, k)| {
            entries
                .iter()
                .find(|c| c.members.binary_search(&e.u).is_ok() && c.members.binary_search(&e.v).is_ok())
                .map(|c| (c.beta, k))
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct OneStepConfig {
    /// Strength scale `K`.
    pub k: f64,
    /// Constant `A` in `rho = A log2 n`.
    pub a_sp: f64,
}

impl OneStepConfig {
    pub fn rho(&self, n: usize) -> f64 {
        self.a_sp * log2n(n)
    }

    /// Edge draws per pass, `rho n K`.
    pub fn samples(&self, n: usize) -> u64 {
        (self.rho(n) * n as f64 * self.k).ceil() as u64
    }

    /// Sampled cuts below this many draws are split off.
    pub fn threshold(&self, n: usize) -> f64 {
        0.8 * self.rho(n)
    }
}

/// Components of `h` after repeatedly splitting along any cut lighter than
/// `threshold`. Singletons included.
pub fn strong_components(h: &WeightedGraph, threshold: f64) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut stack = h.components();
    while let Some(set) = stack.pop() {
        if set.len() < 2 {
            out.push(set);
            continue;
        }
        let sub = h.induced(&set);
        let cut = exact_min_cut(&sub);
        if (cut.value as f64) >= threshold {
            out.push(set);
            continue;
        }
        let mut inside = vec![false; set.len()];
        for &i in &cut.side {
            inside[i] = true;
        }
        for keep in [true, false] {
            let part: Vec<usize> = (0..set.len()).filter(|&i| inside[i] == keep).map(|i| set[i]).collect();
            stack.extend(h.induced(&part).components().into_iter().map(|c| c.into_iter().map(|i| part[i]).collect()));
        }
    }
    out.sort();
    out
}

#[derive(Clone, Debug)]
pub struct OneStepOutcome {
    /// Contraction over the original vertices after this pass.
    pub partition: ContractionPartition,
    pub entries: Vec<StrengthEntry>,
    /// Total weight of the contracted graph the pass started from.
    pub weight: u64,
    /// Draw counts over the blocks of the starting partition.
    pub sampled: WeightedGraph,
}

/// One sample-and-contract pass, always exactly 3 rounds: supervertex
/// degrees, then two rounds of weight-proportional draws.
pub struct OneStep {
    base: ContractionPartition,
    view: View,
    cfg: OneStepConfig,
    sampler: SamplerConfig,
    wcfg: WeightedSamplerConfig,
    seed: Seed,
    stage: u8,
    degrees: Vec<QueryId>,
    draws: Vec<StarDraws>,
    weight: u64,
    outcome: Option<Result<OneStepOutcome>>,
}

impl OneStep {
    pub fn new(base: &ContractionPartition, cfg: &OneStepConfig, sampler: &SamplerConfig, w_max: u64, seed: Seed) -> Self {
        let n = base.n();
        let mut wcfg = WeightedSamplerConfig::new(n, w_max);
        wcfg.mass_bound = wcfg.mass_bound.saturating_mul(n.max(2) as u64);
        OneStep {
            base: base.clone(),
            view: View::from_partition(base),
            cfg: cfg.clone(),
            sampler: sampler.clone(),
            wcfg,
            seed,
            stage: 0,
            degrees: Vec::new(),
            draws: Vec::new(),
            weight: 0,
            outcome: None,
        }
    }

    pub fn into_outcome(self) -> Result<OneStepOutcome> {
        self.outcome.expect("one-step pass not finished")
    }

    fn allocate(&mut self, answers: &Answers) {
        let n = self.base.n();
        let degrees: Vec<f64> = self.degrees.iter().map(|&q| answers.get(q) as f64).collect();
        self.weight = (degrees.iter().sum::<f64>() / 2.0).round() as u64;
        if self.weight == 0 {
            return;
        }
        let counts = multinomial(self.cfg.samples(n), &degrees, &mut self.seed.named("alloc").rng());
        let points = self.view.points();
        for (v, &c) in counts.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let others: Vec<usize> = (0..points).filter(|&x| x != v).collect();
            self.draws.push(StarDraws::new(
                &self.view,
                v,
                &others,
                c,
                DrawMode::Weighted,
                None,
                &self.sampler,
                &self.wcfg,
                self.seed.named("draw").child(v as u64),
            ));
        }
    }

    fn finish(&mut self) -> Result<OneStepOutcome> {
        let n = self.base.n();
        let points = self.view.points();
        let mut pairs = Vec::new();
        for d in std::mem::take(&mut self.draws) {
            let edges = d.into_result().ok_or_else(|| CutQueryError::SamplingFailed("supervertex edge draw".into()))?;
            pairs.extend(edges.into_iter().map(|(e, c)| (e.s, e.v, c)));
        }
        let sampled = WeightedGraph::multigraph(points, pairs);
        let beta = self.weight as f64 / (2.0 * n as f64 * self.cfg.k);
        let mut partition = self.base.clone();
        let mut entries = Vec::new();
        for comp in strong_components(&sampled, self.cfg.threshold(n)) {
            if comp.len() < 2 {
                continue;
            }
            let members = self.view.expand(&comp);
            for w in members.windows(2) {
                partition.union(w[0], w[1]);
            }
            entries.push(StrengthEntry { members, beta });
        }
        Ok(OneStepOutcome { partition, entries, weight: self.weight, sampled })
    }
}

impl Staged for OneStep {
    fn plan(&mut self, round: &mut RoundPlan) {
        if self.stage == 0 {
            if self.view.points() >= 2 {
                self.degrees = (0..self.view.points()).map(|p| round.query_points(&self.view, &[p])).collect();
            }
        } else {
            for d in self.draws.iter_mut().filter(|d| !d.done()) {
                d.plan(round);
            }
        }
    }

    fn resolve(&mut self, answers: &Answers) {
        match self.stage {
            0 => self.allocate(answers),
            _ => {
                for d in self.draws.iter_mut().filter(|d| !d.done()) {
                    d.resolve(answers);
                }
            }
        }
        self.stage += 1;
        if self.stage == 3 {
            self.outcome = Some(self.finish());
        }
    }

    fn done(&self) -> bool {
        self.stage >= 3
    }
}

/// One pass over the whole graph, starting from the identity contraction.
pub fn one_step_contraction<O: CutOracle + ?Sized>(
    oracle: &mut O,
    cfg: &OneStepConfig,
    w_max: u64,
    seed: Seed,
) -> Result<OneStepOutcome> {
    let base = ContractionPartition::identity(oracle.n());
    run_one(oracle, OneStep::new(&base, cfg, &SamplerConfig::default(), w_max, seed)).into_outcome()
}

#[derive(Clone, Debug)]
pub struct SparsifyConfig {
    pub eps: f64,
    /// Number of strength-estimation passes.
    pub r: usize,
    /// Bound on edge weights.
    pub w_max: u64,
    pub a_sp: f64,
    /// Constant `c` in the stratum draw count `c eps^-2 log2(n)^2 w(F)/beta`.
    pub c1: f64,
    pub sampler: SamplerConfig,
}

impl SparsifyConfig {
    pub fn new(eps: f64, r: usize, w_max: u64) -> Self {
        SparsifyConfig { eps, r, w_max, a_sp: 8.0, c1: 4.0, sampler: SamplerConfig::default() }
    }

    /// `1 + log_n W`.
    pub fn gamma(&self, n: usize) -> f64 {
        1.0 + (self.w_max.max(1) as f64).ln() / (n.max(2) as f64).ln()
    }

    /// Strength scale of every pass, `2 n^(gamma/r)`.
    pub fn k(&self, n: usize) -> f64 {
        2.0 * (n.max(2) as f64).powf(self.gamma(n) / self.r as f64)
    }

    pub fn one_step(&self, n: usize) -> OneStepConfig {
        OneStepConfig { k: self.k(n), a_sp: self.a_sp }
    }

    fn check(&self) -> Result<()> {
        if self.r == 0 {
            return Err(CutQueryError::InvalidArgument("r must be at least 1".into()));
        }
        if !(self.eps > 0.0 && self.eps < 1.0) {
            return Err(CutQueryError::InvalidArgument(format!("eps must lie in (0, 1), got {}", self.eps)));
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct Strengths {
    pub entries: Vec<StrengthEntry>,
    /// Contraction after the last pass.
    pub partition: ContractionPartition,
    /// Contracted total weight at the start of each pass.
    pub weights: Vec<u64>,
}

/// `r` passes, exactly `3r` rounds. A failed pass idles through the rest.
pub struct StrengthRun {
    cfg: SparsifyConfig,
    seed: Seed,
    stage: usize,
    current: Option<OneStep>,
    partition: ContractionPartition,
    entries: Vec<StrengthEntry>,
    weights: Vec<u64>,
    error: Option<CutQueryError>,
}

impl StrengthRun {
    pub fn new(n: usize, cfg: &SparsifyConfig, seed: Seed) -> Self {
        StrengthRun {
            cfg: cfg.clone(),
            seed,
            stage: 0,
            current: None,
            partition: ContractionPartition::identity(n),
            entries: Vec::new(),
            weights: Vec::new(),
            error: None,
        }
    }

    pub fn into_result(self) -> Result<Strengths> {
        assert!(self.done(), "strength estimation not finished");
        match self.error {
            Some(e) => Err(e),
            None => Ok(Strengths { entries: self.entries, partition: self.partition, weights: self.weights }),
        }
    }
}

impl Staged for StrengthRun {
    fn plan(&mut self, round: &mut RoundPlan) {
        if self.error.is_some() {
            return;
        }
        let n = self.partition.n();
        let pass = (self.stage / 3) as u64;
        let step = self.current.get_or_insert_with(|| {
            OneStep::new(&self.partition, &self.cfg.one_step(n), &self.cfg.sampler, self.cfg.w_max, self.seed.child(pass))
        });
        step.plan(round);
    }

    fn resolve(&mut self, answers: &Answers) {
        self.stage += 1;
        let Some(step) = self.current.as_mut() else { return };
        step.resolve(answers);
        if step.done() {
            match self.current.take().unwrap().into_outcome() {
                Ok(o) => {
                    self.partition = o.partition;
                    self.entries.extend(o.entries);
                    self.weights.push(o.weight);
                }
                Err(e) => self.error = Some(e),
            }
        }
    }

    fn done(&self) -> bool {
        self.stage >= 3 * self.cfg.r
    }
}

pub fn estimate_strengths<O: CutOracle + ?Sized>(oracle: &mut O, cfg: &SparsifyConfig, seed: Seed) -> Result<Strengths> {
    cfg.check()?;
    let n = oracle.n();
    run_one(oracle, StrengthRun::new(n, cfg, seed)).into_result()
}

#[derive(Clone, Debug)]
pub struct Sparsifier {
    /// Sampled edges of `G` reweighted by inverse inclusion probability.
    pub graph: Graph<f64>,
    pub entries: Vec<StrengthEntry>,
    /// `w(F(C_i))`: weight of the edges first covered by entry `i`.
    pub strata: Vec<u64>,
    /// Draws taken from each stratum.
    pub draws: Vec<u64>,
    /// Weighted degree of every vertex, read in the first build round.
    pub degrees: Vec<u64>,
}

struct Child {
    entry: Option<usize>,
    members: Vec<usize>,
    rest: QueryId,
    with: Vec<QueryId>,
}

/// Strength-proportional sampling of all strata, exactly 3 rounds: one of
/// stratum weights and per-vertex stratum degrees, two of draws.
pub struct SparsifierBuild {
    n: usize,
    entries: Vec<StrengthEntry>,
    cfg: SparsifyConfig,
    wcfg: WeightedSamplerConfig,
    seed: Seed,
    stage: u8,
    singles: Vec<QueryId>,
    whole: Vec<QueryId>,
    children: Vec<Vec<Child>>,
    strata: Vec<u64>,
    mu: Vec<u64>,
    degrees: Vec<u64>,
    draws: Vec<(usize, StarDraws)>,
    outcome: Option<Result<Sparsifier>>,
}

impl SparsifierBuild {
    pub fn new(n: usize, entries: &[StrengthEntry], cfg: &SparsifyConfig, seed: Seed) -> Self {
        SparsifierBuild {
            n,
            entries: entries.to_vec(),
            cfg: cfg.clone(),
            wcfg: WeightedSamplerConfig::new(n, cfg.w_max),
            seed,
            stage: 0,
            singles: Vec::new(),
            whole: Vec::new(),
            children: Vec::new(),
            strata: Vec::new(),
            mu: Vec::new(),
            degrees: Vec::new(),
            draws: Vec::new(),
            outcome: None,
        }
    }

    pub fn into_result(self) -> Result<Sparsifier> {
        self.outcome.expect("sparsifier not finished")
    }

    fn plan_weights(&mut self, round: &mut RoundPlan) {
        let n = self.n;
        self.singles = (0..n).map(|v| round.query([v])).collect();
        let mut owner: Vec<Option<usize>> = vec![None; n];
        for (i, c) in self.entries.iter().enumerate() {
            self.whole.push(round.query(c.members.iter().copied()));
            let mut groups: Vec<(Option<usize>, Vec<usize>)> = Vec::new();
            let mut slot: HashMap<usize, usize> = HashMap::new();
            for &v in &c.members {
                match owner[v] {
                    Some(j) => {
                        let k = *slot.entry(j).or_insert_with(|| {
                            groups.push((Some(j), Vec::new()));
                            groups.len() - 1
                        });
                        groups[k].1.push(v);
                    }
                    None => groups.push((None, vec![v])),
                }
            }
            let mut kids = Vec::with_capacity(groups.len());
            for (entry, members) in groups {
                let rest: Vec<usize> = c.members.iter().copied().filter(|v| members.binary_search(v).is_err()).collect();
                let rest_id = round.query(rest.iter().copied());
                let with = members.iter().map(|&u| round.query(rest.iter().copied().chain([u]))).collect();
                kids.push(Child { entry, members, rest: rest_id, with });
            }
            self.children.push(kids);
            for &v in &c.members {
                owner[v] = Some(i);
            }
        }
    }

    fn allocate(&mut self, answers: &Answers) -> Result<()> {
        let d: Vec<u64> = self.singles.iter().map(|&q| answers.get(q)).collect();
        self.degrees = d.clone();
        let inner: Vec<u64> = self
            .entries
            .iter()
            .zip(&self.whole)
            .map(|(c, &q)| (c.members.iter().map(|&v| d[v]).sum::<u64>() - answers.get(q)) / 2)
            .collect();
        self.strata = self
            .children
            .iter()
            .enumerate()
            .map(|(i, kids)| inner[i] - kids.iter().filter_map(|k| k.entry).map(|j| inner[j]).sum::<u64>())
            .collect();
        let total = d.iter().sum::<u64>() / 2;
        let covered: u64 = self.strata.iter().sum();
        if covered != total {
            return Err(CutQueryError::SamplingFailed(format!(
                "strength entries cover weight {covered} of {total}"
            )));
        }
        let eps = self.cfg.eps;
        let scale = self.cfg.c1 * log2n(self.n).powi(2) / (eps * eps);
        let identity = View::identity(self.n);
        for (i, kids) in self.children.iter().enumerate() {
            let wf = self.strata[i];
            let mu = if wf == 0 { 0 } else { (scale * wf as f64 / self.entries[i].beta).ceil() as u64 };
            self.mu.push(mu);
            if mu == 0 {
                continue;
            }
            let mut vertices = Vec::new();
            let mut degree = Vec::new();
            for k in kids {
                let rest = answers.get(k.rest);
                for (&u, &q) in k.members.iter().zip(&k.with) {
                    vertices.push((u, k));
                    degree.push(((d[u] + rest - answers.get(q)) / 2) as f64);
                }
            }
            debug_assert_eq!(degree.iter().sum::<f64>() as u64, 2 * wf);
            let seed = self.seed.child(i as u64);
            let counts = multinomial(mu, &degree, &mut seed.named("alloc").rng());
            for ((u, k), c) in vertices.into_iter().zip(counts) {
                if c == 0 {
                    continue;
                }
                let targets: Vec<usize> =
                    self.entries[i].members.iter().copied().filter(|v| k.members.binary_search(v).is_err()).collect();
                self.draws.push((
                    i,
                    StarDraws::new(
                        &identity,
                        u,
                        &targets,
                        c,
                        DrawMode::Weighted,
                        None,
                        &self.cfg.sampler,
                        &self.wcfg,
                        seed.named("draw").child(u as u64),
                    ),
                ));
            }
        }
        Ok(())
    }

    fn finish(&mut self) -> Result<Sparsifier> {
        let mut seen: HashMap<(usize, usize), (usize, u64)> = HashMap::new();
        for (i, d) in std::mem::take(&mut self.draws) {
            let edges = d.into_result().ok_or_else(|| CutQueryError::SamplingFailed("stratum edge draw".into()))?;
            for (e, _) in edges {
                seen.insert((e.s.min(e.v), e.s.max(e.v)), (i, e.w));
            }
        }
        let edges = seen.into_iter().map(|((u, v), (i, w))| {
            let share = w as f64 / self.strata[i] as f64;
            let p = if share >= 1.0 { 1.0 } else { -(self.mu[i] as f64 * (-share).ln_1p()).exp_m1() };
            (u, v, w as f64 / p)
        });
        Ok(Sparsifier {
            graph: Graph::multigraph(self.n, edges),
            entries: std::mem::take(&mut self.entries),
            strata: std::mem::take(&mut self.strata),
            draws: std::mem::take(&mut self.mu),
            degrees: std::mem::take(&mut self.degrees),
        })
    }
}

impl Staged for SparsifierBuild {
    fn plan(&mut self, round: &mut RoundPlan) {
        match self.stage {
            0 => self.plan_weights(round),
            _ => {
                for (_, d) in self.draws.iter_mut().filter(|(_, d)| !d.done()) {
                    d.plan(round);
                }
            }
        }
    }

    fn resolve(&mut self, answers: &Answers) {
        if self.stage == 0 {
            if let Err(e) = self.allocate(answers) {
                self.outcome = Some(Err(e));
                self.draws.clear();
            }
        } else {
            for (_, d) in self.draws.iter_mut().filter(|(_, d)| !d.done()) {
                d.resolve(answers);
            }
        }
        self.stage += 1;
        if self.stage == 3 && self.outcome.is_none() {
            self.outcome = Some(self.finish());
        }
    }

    fn done(&self) -> bool {
        self.stage >= 3
    }
}

pub fn build_sparsifier<O: CutOracle + ?Sized>(
    oracle: &mut O,
    entries: &[StrengthEntry],
    cfg: &SparsifyConfig,
    seed: Seed,
) -> Result<Sparsifier> {
    cfg.check()?;
    let n = oracle.n();
    run_one(oracle, SparsifierBuild::new(n, entries, cfg, seed)).into_result()
}

/// Strength estimation followed by stratum sampling, exactly `3r + 3` rounds.
pub struct SparsifyRun {
    n: usize,
    cfg: SparsifyConfig,
    seed: Seed,
    stage: usize,
    strengths: Option<StrengthRun>,
    build: Option<SparsifierBuild>,
    error: Option<CutQueryError>,
}

impl SparsifyRun {
    pub fn new(n: usize, cfg: &SparsifyConfig, seed: Seed) -> Self {
        SparsifyRun {
            n,
            cfg: cfg.clone(),
            seed,
            stage: 0,
            strengths: Some(StrengthRun::new(n, cfg, seed.named("strength"))),
            build: None,
            error: None,
        }
    }

    pub fn rounds(&self) -> usize {
        3 * self.cfg.r + 3
    }

    pub fn into_result(self) -> Result<Sparsifier> {
        assert!(self.done(), "sparsifier not finished");
        match (self.error, self.build) {
            (Some(e), _) => Err(e),
            (None, Some(b)) => b.into_result(),
            (None, None) => unreachable!("finished run without a build stage"),
        }
    }
}

impl Staged for SparsifyRun {
    fn plan(&mut self, round: &mut RoundPlan) {
        if self.error.is_some() {
            return;
        }
        if let Some(s) = self.strengths.as_mut() {
            s.plan(round);
        } else if let Some(b) = self.build.as_mut() {
            b.plan(round);
        }
    }

    fn resolve(&mut self, answers: &Answers) {
        self.stage += 1;
        if self.error.is_some() {
            return;
        }
        if let Some(s) = self.strengths.as_mut() {
            s.resolve(answers);
            if s.done() {
                match self.strengths.take().unwrap().into_result() {
                    Ok(st) => self.build = Some(SparsifierBuild::new(self.n, &st.entries, &self.cfg, self.seed.named("build"))),
                    Err(e) => self.error = Some(e),
                }
            }
        } else if let Some(b) = self.build.as_mut() {
            b.resolve(answers);
            if b.done() {
                if let Some(Err(_)) = &b.outcome {
                    self.error = self.build.take().unwrap().into_result().err();
                }
            }
        }
    }

    fn done(&self) -> bool {
        self.stage >= self.rounds()
    }
}

pub fn sparsify<O: CutOracle + ?Sized>(oracle: &mut O, cfg: &SparsifyConfig, seed: Seed) -> Result<Sparsifier> {
    cfg.check()?;
    let n = oracle.n();
    run_one(oracle, SparsifyRun::new(n, cfg, seed)).into_result()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, max_cut_distortion, GenSpec};
    use crate::oracle::GraphOracle;

    fn gen(s: &str, seed: u64) -> WeightedGraph {
        generate(&s.parse::<GenSpec>().unwrap(), seed).unwrap()
    }

    #[test]
    fn two_triangles_split_at_empty_cut() {
        let g = WeightedGraph::new_simple(6, [(0, 1, 1), (1, 2, 1), (0, 2, 1), (3, 4, 1), (4, 5, 1), (3, 5, 1)]).unwrap();
        let mut o = GraphOracle::new(&g);
        let cfg = OneStepConfig { k: 1.0, a_sp: 8.0 };
        let out = one_step_contraction(&mut o, &cfg, 1, Seed::new(3)).unwrap();
        let sets: Vec<_> = out.entries.iter().map(|e| e.members.clone()).collect();
        assert_eq!(sets, vec![vec![0, 1, 2], vec![3, 4, 5]]);
        assert_eq!(o.ledger().rounds, 3);
    }

    #[test]
    fn lobes_contract_bridge_survives() {
        let g = gen("planted:8,8,1", 0);
        let mut o = GraphOracle::new(&g);
        let cfg = OneStepConfig { k: 1.0, a_sp: 8.0 };
        let out = one_step_contraction(&mut o, &cfg, 1, Seed::new(8)).unwrap();
        assert_eq!(out.entries.len(), 2);
        assert_eq!(out.partition.block_count(), 2);
        let beta = g.total_weight() as f64 / (2.0 * 16.0 * 1.0);
        assert!(out.entries.iter().all(|e| e.members.len() == 8 && e.beta == beta));
    }

    #[test]
    fn single_supervertex_is_a_no_op() {
        let g = gen("clique:4", 0);
        let mut p = ContractionPartition::identity(4);
        for v in 1..4 {
            p.union(0, v);
        }
        let mut o = GraphOracle::new(&g);
        let cfg = OneStepConfig { k: 2.0, a_sp: 8.0 };
        let out = run_one(&mut o, OneStep::new(&p, &cfg, &SamplerConfig::default(), 1, Seed::new(1))).into_outcome().unwrap();
        assert!(out.entries.is_empty());
        assert_eq!(o.ledger().queries, 0);
    }

    #[test]
    fn single_heavy_edge() {
        let g = WeightedGraph::new_simple(2, [(0, 1, 5)]).unwrap();
        let mut o = GraphOracle::new(&g);
        let st = estimate_strengths(&mut o, &SparsifyConfig::new(0.25, 1, 5), Seed::new(2)).unwrap();
        assert_eq!(st.entries.len(), 1);
        assert!(st.entries[0].beta <= 5.0);
        let h = build_sparsifier(&mut o, &st.entries, &SparsifyConfig::new(0.25, 1, 5), Seed::new(2)).unwrap();
        assert_eq!(h.graph.edges().len(), 1);
        assert_eq!(h.graph.edges()[0].w, 5.0);
    }

    #[test]
    fn k4_covered_and_underestimated() {
        let g = gen("clique:4", 0);
        let mut o = GraphOracle::new(&g);
        let st = estimate_strengths(&mut o, &SparsifyConfig::new(0.25, 2, 1), Seed::new(4)).unwrap();
        assert!(is_laminar(&st.entries));
        let pairs = strength_pairs(&g, &st.entries).expect("all edges covered");
        assert!(pairs.iter().all(|&(b, k)| k == 3 && b <= 3.0));
        assert_eq!(o.ledger().rounds, 6);
    }

    #[test]
    fn empty_graph_has_no_entries() {
        let g = WeightedGraph::empty(5);
        let mut o = GraphOracle::new(&g);
        let cfg = SparsifyConfig::new(0.25, 2, 1);
        assert!(estimate_strengths(&mut o, &cfg, Seed::new(0)).unwrap().entries.is_empty());
        let mut o = GraphOracle::new(&g);
        let h = sparsify(&mut o, &cfg, Seed::new(0)).unwrap();
        assert_eq!(h.graph.m(), 0);
        assert_eq!(o.ledger().rounds, 9);
    }

    #[test]
    fn deflated_strengths_only_oversample() {
        let g = gen("gnp:10,0.5,8", 3);
        let entries = vec![StrengthEntry { members: (0..10).collect(), beta: 0.01 }];
        let mut o = GraphOracle::new(&g);
        let h = build_sparsifier(&mut o, &entries, &SparsifyConfig::new(0.2, 1, 8), Seed::new(1)).unwrap();
        assert!(max_cut_distortion(&g, &h.graph) <= 0.2);
    }

    #[test]
    fn sparsify_quality_and_rounds() {
        for r in 1..=2 {
            let g = gen("gnp:12,0.5,8", 10 + r as u64);
            let mut o = GraphOracle::new(&g);
            let h = sparsify(&mut o, &SparsifyConfig::new(0.25, r, 8), Seed::new(r as u64)).unwrap();
            assert_eq!(o.ledger().rounds, 3 * r + 3);
            assert!(is_laminar(&h.entries));
            assert!(h.graph.edges().iter().all(|e| e.w > 0.0 && g.weight_between(e.u, e.v) > 0));
            assert!(max_cut_distortion(&g, &h.graph) <= 0.25);
        }
    }
}
