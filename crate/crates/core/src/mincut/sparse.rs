use std::collections::HashMap;

use super::{default_trials, lift, run_trials, Candidate, MinCutResult, Trial};
use crate::error::{CutQueryError, Result};
use crate::graph::{enumerate_cuts_at_most, exact_min_cut};
use crate::oracle::{Answers, CutOracle, RoundPlan, Staged, View};
use crate::partition::ContractionPartition;
use crate::recovery::{GraphRecovery, RecoveryConfig};
use crate::rng::Seed;
use crate::sparsifier::{Sparsifier, SparsifyConfig, SparsifyRun};

#[derive(Clone, Debug)]
pub struct SparseCutConfig {
    pub sparsify: SparsifyConfig,
    pub recovery: RecoveryConfig,
    /// Budget constant in `c n log2 n`.
    pub c_budget: f64,
    /// Most near-minimum sparsifier cuts enumerated before the trial gives up.
    pub cut_cap: usize,
    pub trials: Option<usize>,
}

impl SparseCutConfig {
    pub fn new(r: usize) -> Self {
        SparseCutConfig {
            sparsify: SparsifyConfig::new(1.0 / 50.0, r, 1),
            recovery: RecoveryConfig::default(),
            c_budget: 8.0,
            cut_cap: 100_000,
            trials: None,
        }
    }

    pub fn budget(&self, n: usize) -> usize {
        (self.c_budget * n.max(2) as f64 * (n.max(2) as f64).log2()).ceil() as usize
    }
}

/// Vertices on the same side of every cut in `cuts`.
fn atoms(n: usize, cuts: &[Vec<usize>]) -> ContractionPartition {
    let mut signature: Vec<Vec<u32>> = vec![Vec::new(); n];
    for (i, side) in cuts.iter().enumerate() {
        for &v in side {
            signature[v].push(i as u32);
        }
    }
    let mut label: HashMap<&[u32], usize> = HashMap::new();
    let labels: Vec<usize> = signature
        .iter()
        .map(|s| {
            let next = label.len();
            *label.entry(s.as_slice()).or_insert(next)
        })
        .collect();
    ContractionPartition::from_labels(&labels)
}

/// Rounds 1..3r+3: a sparsifier with quality 51/50. Round 3r+4: recover the
/// graph with every edge outside the near-minimum sparsifier cuts
/// contracted, unless no nontrivial sparsifier cut is below 51/50 of the min
/// degree (then the round is empty and the min-degree cut is returned).
pub struct SparseCutTrial {
    n: usize,
    cfg: SparseCutConfig,
    seed: Seed,
    stage: usize,
    sparsify: Option<SparsifyRun>,
    recovery: Option<(Vec<Vec<usize>>, GraphRecovery)>,
    trivial: Option<Candidate>,
    outcome: Option<Result<Candidate>>,
}

impl SparseCutTrial {
    pub fn new(n: usize, cfg: &SparseCutConfig, seed: Seed) -> Self {
        SparseCutTrial {
            n,
            cfg: cfg.clone(),
            seed,
            stage: 0,
            sparsify: Some(SparsifyRun::new(n, &cfg.sparsify, seed.named("sparsify"))),
            recovery: None,
            trivial: None,
            outcome: None,
        }
    }

    fn rounds(&self) -> usize {
        3 * self.cfg.sparsify.r + 4
    }

    fn after_sparsifier(&mut self, h: Sparsifier) -> Result<()> {
        let trivial = Candidate::min_degree(&h.degrees).expect("nonempty graph");
        let delta = trivial.value as f64;
        self.trivial = Some(trivial);
        let lambda_h = exact_min_cut(&h.graph).value;
        let cuts = enumerate_cuts_at_most(&h.graph, lambda_h * 53.0 / 50.0, self.cfg.cut_cap)?;
        let n = self.n;
        let nontrivial = |side: &[usize]| side.len() >= 2 && n - side.len() >= 2;
        if !cuts.iter().any(|c| nontrivial(&c.side) && c.value < delta * 51.0 / 50.0) {
            return Ok(());
        }
        let sides: Vec<Vec<usize>> = cuts.into_iter().map(|c| c.side).collect();
        let blocks = atoms(n, &sides).blocks();
        let view = View::from_blocks(n, blocks.clone());
        let rec = GraphRecovery::new(&view, self.cfg.budget(n), &self.cfg.recovery, self.seed.named("recover"));
        self.recovery = Some((blocks, rec));
        Ok(())
    }
}

impl Staged for SparseCutTrial {
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
                let res = self.sparsify.take().unwrap().into_result().and_then(|h| self.after_sparsifier(h));
                if let Err(e) = res {
                    self.outcome = Some(Err(e));
                }
            }
        } else if let Some((blocks, mut rec)) = self.recovery.take() {
            rec.resolve(answers);
            let trivial = self.trivial.clone().unwrap();
            self.outcome = Some(rec.into_result().map(|g| {
                let cut = exact_min_cut(&g);
                trivial.better(Some(Candidate { value: cut.value, side: lift(&blocks, &cut.side) }), false)
            }));
        }
        if self.stage == self.rounds() && self.outcome.is_none() {
            self.outcome = self.trivial.clone().map(Ok);
        }
    }

    fn done(&self) -> bool {
        self.stage >= self.rounds()
    }
}

impl Trial for SparseCutTrial {
    fn into_candidate(self) -> Result<Candidate> {
        self.outcome.unwrap_or_else(|| Err(CutQueryError::SamplingFailed("trial did not finish".into())))
    }
}

/// Global minimum cut of an unweighted graph through a sparsifier, `3r + 4` rounds.
pub fn min_cut_unweighted_sparsifier<O: CutOracle + ?Sized>(
    oracle: &mut O,
    cfg: &SparseCutConfig,
    seed: Seed,
) -> Result<MinCutResult> {
    let n = oracle.n();
    if n < 2 || cfg.sparsify.r == 0 {
        return Err(CutQueryError::InvalidArgument("needs n >= 2 and r >= 1".into()));
    }
    let trials = cfg.trials.unwrap_or_else(|| default_trials(n));
    let items = (0..trials).map(|i| SparseCutTrial::new(n, cfg, seed.child(i as u64))).collect();
    run_trials(oracle, items, false)
}

