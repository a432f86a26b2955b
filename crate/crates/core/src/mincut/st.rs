use super::{default_trials, lift, run_trials, Candidate, MinCutResult, Trial};
use crate::error::{CutQueryError, Result};
use crate::graph::{max_flow, min_st_cut as exact_st_cut, Graph, Weight};
use crate::oracle::{Answers, CutOracle, RoundPlan, Staged, View};
use crate::partition::ContractionPartition;
use crate::recovery::{GraphRecovery, RecoveryConfig};
use crate::rng::Seed;
use crate::sparsifier::{Sparsifier, SparsifyConfig, SparsifyRun};

#[derive(Clone, Debug)]
pub struct StCutConfig {
    pub s: usize,
    pub t: usize,
    pub r: usize,
    pub recovery: RecoveryConfig,
    /// Budget constant in `c n^(5/3) log2 n`.
    pub c_budget: f64,
    pub trials: Option<usize>,
}

impl StCutConfig {
    pub fn new(s: usize, t: usize, r: usize) -> Self {
        StCutConfig { s, t, r, recovery: RecoveryConfig::default(), c_budget: 8.0, trials: None }
    }

    /// Sparsifier with `eps = n^(-1/3)`.
    pub fn sparsify(&self, n: usize) -> SparsifyConfig {
        SparsifyConfig::new((n.max(2) as f64).powf(-1.0 / 3.0).min(0.5), self.r, 1)
    }

    pub fn budget(&self, n: usize) -> usize {
        let n = n.max(2) as f64;
        (self.c_budget * n.powf(5.0 / 3.0) * n.log2()).ceil() as usize
    }
}

/// Components of `h` without the edges that carry `s`-`t` flow. A component
/// holding both `s` and `t` is left uncontracted.
fn flow_free_components(h: &Graph<f64>, s: usize, t: usize) -> ContractionPartition {
    let flow = max_flow(h, s, t);
    let n = h.n();
    let mut p = ContractionPartition::identity(n);
    for (e, f) in h.edges().iter().zip(&flow.edge_flow) {
        if !f.is_positive() {
            p.union(e.u, e.v);
        }
    }
    if p.same(s, t) {
        let shared = p.find(s);
        let labels: Vec<usize> = (0..n).map(|v| if p.find(v) == shared { n + v } else { p.find(v) }).collect();
        return ContractionPartition::from_labels(&labels);
    }
    p
}

/// Rounds 1..3r+3: a sparsifier with `eps = n^(-1/3)`. Round 3r+4: recover
/// the graph contracted along the flow-free components of the sparsifier.
pub struct StCutTrial {
    n: usize,
    cfg: StCutConfig,
    seed: Seed,
    stage: usize,
    sparsify: Option<SparsifyRun>,
    recovery: Option<(Vec<Vec<usize>>, GraphRecovery)>,
    outcome: Option<Result<Candidate>>,
}

impl StCutTrial {
    pub fn new(n: usize, cfg: &StCutConfig, seed: Seed) -> Self {
        let sp = SparsifyRun::new(n, &cfg.sparsify(n), seed.named("sparsify"));
        StCutTrial { n, cfg: cfg.clone(), seed, stage: 0, sparsify: Some(sp), recovery: None, outcome: None }
    }

    fn rounds(&self) -> usize {
        3 * self.cfg.r + 4
    }

    fn contract(&mut self, h: Sparsifier) {
        let blocks = flow_free_components(&h.graph, self.cfg.s, self.cfg.t).blocks();
        let view = View::from_blocks(self.n, blocks.clone());
        let rec = GraphRecovery::new(&view, self.cfg.budget(self.n), &self.cfg.recovery, self.seed.named("recover"));
        self.recovery = Some((blocks, rec));
    }

    fn finish(&self, blocks: &[Vec<usize>], g: crate::graph::WeightedGraph) -> Candidate {
        let block_of = |v: usize| blocks.iter().position(|b| b.contains(&v)).unwrap();
        let cut = exact_st_cut(&g, block_of(self.cfg.s), block_of(self.cfg.t));
        Candidate { value: cut.value, side: lift(blocks, &cut.side) }
    }
}

impl Staged for StCutTrial {
    fn plan(&mut self, round: &mut RoundPlan) {
        if let Some(s) = self.sparsify.as_mut() {
            s.plan(round);
        } else if let Some((_, rec)) = self.recovery.as_mut() {
            rec.plan(round);
        }
    }

    fn resolve(&mut self, answers: &Answers) {
        self.stage += 1;
        if let Some(s) = self.sparsify.as_mut() {
            s.resolve(answers);
            if s.done() {
                match self.sparsify.take().unwrap().into_result() {
                    Ok(h) => self.contract(h),
                    Err(e) => self.outcome = Some(Err(e)),
                }
            }
        } else if let Some((blocks, mut rec)) = self.recovery.take() {
            rec.resolve(answers);
            self.outcome = Some(rec.into_result().map(|g| self.finish(&blocks, g)));
        }
    }

    fn done(&self) -> bool {
        self.stage >= self.rounds()
    }
}

impl Trial for StCutTrial {
    fn into_candidate(self) -> Result<Candidate> {
        self.outcome.unwrap_or_else(|| Err(CutQueryError::SamplingFailed("trial did not finish".into())))
    }
}

/// Minimum `s`-`t` cut of an unweighted graph, `3r + 4` rounds.
pub fn min_st_cut<O: CutOracle + ?Sized>(oracle: &mut O, cfg: &StCutConfig, seed: Seed) -> Result<MinCutResult> {
    let n = oracle.n();
    if cfg.s == cfg.t || cfg.s >= n || cfg.t >= n || cfg.r == 0 {
        return Err(CutQueryError::InvalidArgument("needs distinct s, t < n and r >= 1".into()));
    }
    let trials = cfg.trials.unwrap_or_else(|| default_trials(n));
    let items = (0..trials).map(|i| StCutTrial::new(n, cfg, seed.child(i as u64))).collect();
    run_trials(oracle, items, false)
}
