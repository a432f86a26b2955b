use super::{default_trials, run_trials, Candidate, MinCutResult, Trial};
use crate::error::{CutQueryError, Result};
use crate::graph::exact_max_cut;
use crate::oracle::{Answers, CutOracle, QueryId, RoundPlan, Staged};
use crate::rng::Seed;
use crate::sparsifier::{SparsifyConfig, SparsifyRun};

#[derive(Clone, Debug)]
pub struct MaxCutConfig {
    pub eps: f64,
    pub r: usize,
    pub w_max: u64,
    pub trials: Option<usize>,
}

impl MaxCutConfig {
    pub fn new(eps: f64, r: usize, w_max: u64) -> Self {
        MaxCutConfig { eps, r, w_max, trials: None }
    }

    /// Sparsifier quality `eps / 3`.
    pub fn sparsify(&self) -> SparsifyConfig {
        SparsifyConfig::new(self.eps / 3.0, self.r, self.w_max)
    }
}

/// Rounds 1..3r+3: a sparsifier. Round 3r+4: query the sparsifier's maximum cut.
pub struct MaxCutTrial {
    r: usize,
    stage: usize,
    sparsify: Option<SparsifyRun>,
    side: Option<(Vec<usize>, Option<QueryId>)>,
    outcome: Option<Result<Candidate>>,
}

impl MaxCutTrial {
    pub fn new(n: usize, cfg: &MaxCutConfig, seed: Seed) -> Self {
        let sp = SparsifyRun::new(n, &cfg.sparsify(), seed.named("sparsify"));
        MaxCutTrial { r: cfg.r, stage: 0, sparsify: Some(sp), side: None, outcome: None }
    }
}

impl Staged for MaxCutTrial {
    fn plan(&mut self, round: &mut RoundPlan) {
        if let Some(s) = self.sparsify.as_mut() {
            s.plan(round);
        } else if let Some((side, id)) = self.side.as_mut() {
            *id = Some(round.query(side.iter().copied()));
        }
    }

    fn resolve(&mut self, answers: &Answers) {
        self.stage += 1;
        if let Some(s) = self.sparsify.as_mut() {
            s.resolve(answers);
            if s.done() {
                match self.sparsify.take().unwrap().into_result() {
                    Ok(h) => self.side = Some((exact_max_cut(&h.graph).cut.side, None)),
                    Err(e) => self.outcome = Some(Err(e)),
                }
            }
        } else if let Some((side, Some(id))) = self.side.take() {
            self.outcome = Some(Ok(Candidate { value: answers.get(id), side }));
        }
    }

    fn done(&self) -> bool {
        self.stage >= 3 * self.r + 4
    }
}

impl Trial for MaxCutTrial {
    fn into_candidate(self) -> Result<Candidate> {
        self.outcome.unwrap_or_else(|| Err(CutQueryError::SamplingFailed("trial did not finish".into())))
    }
}

/// A cut of value at least `(1 - eps)` times the maximum, `3r + 4` rounds.
pub fn approx_max_cut<O: CutOracle + ?Sized>(oracle: &mut O, cfg: &MaxCutConfig, seed: Seed) -> Result<MinCutResult> {
    let n = oracle.n();
    if n < 2 || cfg.r == 0 || !(cfg.eps > 0.0 && cfg.eps < 1.0) {
        return Err(CutQueryError::InvalidArgument("needs n >= 2, r >= 1 and eps in (0, 1)".into()));
    }
    let trials = cfg.trials.unwrap_or_else(|| default_trials(n));
    let items = (0..trials).map(|i| MaxCutTrial::new(n, cfg, seed.child(i as u64))).collect();
    run_trials(oracle, items, true)
}
