use super::{default_trials, run_trials, Candidate, MinCutResult, Trial};
use crate::contraction::TwoOutContraction;
use crate::error::{CutQueryError, Result};
use crate::graph::exact_min_cut;
use crate::oracle::{Answers, CutOracle, RoundPlan, Staged, View};
use crate::packing::{PackingConfig, PackingRun};
use crate::rng::Seed;
use crate::sampling::SamplerConfig;

#[derive(Clone, Debug)]
pub struct UnweightedConfig {
    pub r: usize,
    pub a_pack: f64,
    pub sampler: SamplerConfig,
    pub trials: Option<usize>,
}

impl UnweightedConfig {
    pub fn new(r: usize) -> Self {
        UnweightedConfig { r, a_pack: 8.0, sampler: SamplerConfig::default(), trials: None }
    }
}

/// Round 1: degrees and a 2-out contraction. Rounds 2..2r+1: a maximal
/// packing of δ forests over the contracted graph. Answer: the lighter of the
/// min degree and the forest union's min cut.
pub struct UnweightedTrial {
    n: usize,
    cfg: UnweightedConfig,
    seed: Seed,
    stage: usize,
    two_out: Option<TwoOutContraction>,
    packing: Option<(Candidate, Option<PackingRun>)>,
    outcome: Option<Result<Candidate>>,
}

impl UnweightedTrial {
    pub fn new(n: usize, cfg: &UnweightedConfig, seed: Seed) -> Self {
        let two_out = TwoOutContraction::new(&View::identity(n), &cfg.sampler, seed.named("two-out"));
        UnweightedTrial { n, cfg: cfg.clone(), seed, stage: 0, two_out: Some(two_out), packing: None, outcome: None }
    }

    fn start_packing(&mut self) {
        let out = match self.two_out.take().unwrap().into_outcome() {
            Ok(o) => o,
            Err(e) => {
                self.outcome = Some(Err(e));
                return;
            }
        };
        let trivial = Candidate::min_degree(&out.degrees).expect("nonempty graph");
        let run = (trivial.value > 0 && out.partition.block_count() > 1).then(|| {
            let mut pc = PackingConfig::new(trivial.value as usize, self.cfg.r);
            pc.a_pack = self.cfg.a_pack;
            pc.sampler = self.cfg.sampler.clone();
            PackingRun::new(&out.partition, &pc, self.seed.named("pack"))
        });
        self.packing = Some((trivial, run));
    }

    fn finish(&mut self) {
        let (trivial, run) = self.packing.take().unwrap();
        let Some(run) = run else {
            self.outcome = Some(Ok(trivial));
            return;
        };
        self.outcome = Some(run.into_result().map(|p| {
            let cut = exact_min_cut(&p.node_graph());
            let side: Vec<usize> = (0..self.n).filter(|&v| cut.side.contains(&p.node_of[v])).collect();
            trivial.better(Some(Candidate { value: cut.value, side }), false)
        }));
    }
}

impl Staged for UnweightedTrial {
    fn plan(&mut self, round: &mut RoundPlan) {
        if self.stage == 0 {
            self.two_out.as_mut().unwrap().plan(round);
        } else if let Some((_, Some(run))) = self.packing.as_mut() {
            run.plan(round);
        }
    }

    fn resolve(&mut self, answers: &Answers) {
        if self.stage == 0 {
            self.two_out.as_mut().unwrap().resolve(answers);
            self.start_packing();
        } else if let Some((_, Some(run))) = self.packing.as_mut() {
            run.resolve(answers);
        }
        self.stage += 1;
        if self.stage == 2 * self.cfg.r + 1 && self.packing.is_some() {
            self.finish();
        }
    }

    fn done(&self) -> bool {
        self.stage > 2 * self.cfg.r
    }
}

impl Trial for UnweightedTrial {
    fn into_candidate(self) -> Result<Candidate> {
        self.outcome.unwrap_or_else(|| Err(CutQueryError::SamplingFailed("trial did not finish".into())))
    }
}

/// Global minimum cut of an unweighted graph in `2r + 1` rounds.
pub fn min_cut_unweighted<O: CutOracle + ?Sized>(oracle: &mut O, cfg: &UnweightedConfig, seed: Seed) -> Result<MinCutResult> {
    let n = oracle.n();
    if n < 2 || cfg.r == 0 {
        return Err(CutQueryError::InvalidArgument("needs n >= 2 and r >= 1".into()));
    }
    let trials = cfg.trials.unwrap_or_else(|| default_trials(n));
    let items = (0..trials).map(|i| UnweightedTrial::new(n, cfg, seed.child(i as u64))).collect();
    run_trials(oracle, items, false)
}
