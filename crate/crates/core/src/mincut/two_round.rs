use super::{default_trials, lift, run_trials, Candidate, MinCutResult, Trial};
use crate::contraction::{StarContraction, StarContractionConfig};
use crate::error::{CutQueryError, Result};
use crate::graph::exact_min_cut;
use crate::oracle::{Answers, CutOracle, RoundPlan, Staged, View};
use crate::recovery::{GraphRecovery, RecoveryConfig};
use crate::rng::Seed;

#[derive(Clone, Debug)]
pub struct TwoRoundConfig {
    pub star: StarContractionConfig,
    pub recovery: RecoveryConfig,
    /// Budget constant in `c n^(4/3) log2 n`.
    pub c_budget: f64,
    pub trials: Option<usize>,
}

impl Default for TwoRoundConfig {
    fn default() -> Self {
        TwoRoundConfig { star: StarContractionConfig::default(), recovery: RecoveryConfig::default(), c_budget: 8.0, trials: None }
    }
}

impl TwoRoundConfig {
    pub fn budget(&self, n: usize) -> usize {
        let n = n.max(2) as f64;
        (self.c_budget * n.powf(4.0 / 3.0) * n.log2()).ceil() as usize
    }
}

/// Round 1: degrees and τ-star neighbor samples. Round 2: recover the
/// contracted graph. Answer: the lighter of its min cut and the min degree.
pub struct TwoRoundTrial {
    n: usize,
    cfg: TwoRoundConfig,
    seed: Seed,
    stage: u8,
    star: Option<StarContraction>,
    recovery: Option<(Vec<Vec<usize>>, Candidate, GraphRecovery)>,
    outcome: Option<Result<Candidate>>,
}

impl TwoRoundTrial {
    pub fn new(n: usize, cfg: &TwoRoundConfig, seed: Seed) -> Self {
        let star = StarContraction::new(&View::identity(n), &cfg.star, seed.named("star"));
        TwoRoundTrial { n, cfg: cfg.clone(), seed, stage: 0, star: Some(star), recovery: None, outcome: None }
    }
}

impl Staged for TwoRoundTrial {
    fn plan(&mut self, round: &mut RoundPlan) {
        match self.stage {
            0 => self.star.as_mut().unwrap().plan(round),
            _ => {
                if let Some((_, _, rec)) = self.recovery.as_mut() {
                    rec.plan(round);
                }
            }
        }
    }

    fn resolve(&mut self, answers: &Answers) {
        if self.stage == 0 {
            let mut star = self.star.take().unwrap();
            star.resolve(answers);
            match star.into_outcome() {
                Ok(out) => {
                    let trivial = Candidate::min_degree(&out.degrees).expect("nonempty graph");
                    let blocks = out.partition.blocks();
                    let view = View::from_blocks(self.n, blocks.clone());
                    let budget = self.cfg.budget(self.n);
                    let rec = GraphRecovery::new(&view, budget, &self.cfg.recovery, self.seed.named("recover"));
                    self.recovery = Some((blocks, trivial, rec));
                }
                Err(e) => self.outcome = Some(Err(e)),
            }
        } else if let Some((blocks, trivial, mut rec)) = self.recovery.take() {
            rec.resolve(answers);
            self.outcome = Some(rec.into_result().map(|h| {
                if h.n() < 2 {
                    return trivial.clone();
                }
                let cut = exact_min_cut(&h);
                trivial.clone().better(Some(Candidate { value: cut.value, side: lift(&blocks, &cut.side) }), false)
            }));
        }
        self.stage += 1;
    }

    fn done(&self) -> bool {
        self.stage >= 2
    }
}

impl Trial for TwoRoundTrial {
    fn into_candidate(self) -> Result<Candidate> {
        self.outcome.unwrap_or_else(|| Err(CutQueryError::SamplingFailed("trial did not finish".into())))
    }
}

/// Global minimum cut of an unweighted graph in 2 rounds.
pub fn min_cut_2round<O: CutOracle + ?Sized>(oracle: &mut O, cfg: &TwoRoundConfig, seed: Seed) -> Result<MinCutResult> {
    let n = oracle.n();
    if n < 2 {
        return Err(CutQueryError::InvalidArgument("minimum cut needs at least 2 vertices".into()));
    }
    let trials = cfg.trials.unwrap_or_else(|| default_trials(n));
    let items = (0..trials).map(|i| TwoRoundTrial::new(n, cfg, seed.child(i as u64))).collect();
    run_trials(oracle, items, false)
}
