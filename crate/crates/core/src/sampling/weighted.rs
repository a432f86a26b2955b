use std::collections::HashMap;

use rand::Rng;

use super::heavy::{CountMinPlan, HeavyHittersConfig};
use super::{ceil_log2, nested_levels, SampleOutcome, SampledEdge};
use crate::oracle::{Answers, CrossHandle, RoundPlan, Staged, View};
use crate::rng::{Rng as StdRng, Seed};

#[derive(Clone, Debug)]
pub struct WeightedSamplerConfig {
    /// Upper bound on `w(E(s,T))`; fixes the number of levels.
    pub mass_bound: u64,
    /// Heavy-hitter parameter `alpha = c * log2(mass_bound)`.
    pub c: f64,
    /// Co-scheduled instances; the first that does not fail wins.
    pub instances: usize,
    pub n: usize,
    pub force_sketch: bool,
}

impl WeightedSamplerConfig {
    /// Defaults for an `n`-vertex graph with weights at most `w_max`. One
    /// instance succeeds with probability about 2^-5, so `126 ln n`
    /// instances leave a failure probability below `n^-4`.
    pub fn new(n: usize, w_max: u64) -> Self {
        WeightedSamplerConfig {
            mass_bound: (n.max(2) as u64).saturating_mul(w_max.max(1)),
            c: 4.0,
            instances: (126.0 * (n.max(2) as f64).ln()).ceil() as usize,
            n,
            force_sketch: false,
        }
    }

    pub fn alpha(&self) -> f64 {
        self.c * (ceil_log2(self.mass_bound as usize).max(1) as f64)
    }

    fn levels(&self) -> usize {
        ceil_log2(self.mass_bound as usize)
    }
}

struct Instance {
    sketches: Vec<CountMinPlan>,
    /// Candidate members per level after round one.
    candidates: Vec<Vec<usize>>,
    failed: bool,
}

/// Two-round sampler returning an edge of `E(s, T)` with probability
/// proportional to its weight.
///
/// Round one sketches heavy hitters at every level of a nested subsampling
/// of `T`; round two reads the exact weights of the candidates. An edge
/// found at level `i` inside its weight window is accepted with probability
/// `2^(i-5) w(e) / w(E(s,T))`, which makes every edge equally likely per
/// unit of weight.
pub struct WeightedEdgeSampler {
    view: View,
    s: usize,
    targets: Vec<usize>,
    cfg: WeightedSamplerConfig,
    rng: StdRng,
    stage: u8,
    total: Option<CrossHandle>,
    total_weight: u64,
    instances: Vec<Instance>,
    exact: HashMap<usize, CrossHandle>,
    outcome: Option<SampleOutcome>,
    instance_successes: usize,
}

impl WeightedEdgeSampler {
    pub fn new(view: &View, s: usize, targets: &[usize], cfg: &WeightedSamplerConfig, seed: Seed) -> Self {
        debug_assert!(!targets.contains(&s));
        WeightedEdgeSampler {
            view: view.clone(),
            s,
            targets: targets.to_vec(),
            cfg: cfg.clone(),
            rng: seed.rng(),
            stage: 0,
            total: None,
            total_weight: 0,
            instances: Vec::new(),
            exact: HashMap::new(),
            outcome: None,
            instance_successes: 0,
        }
    }

    pub fn outcome(&self) -> SampleOutcome {
        self.outcome.expect("sampler not resolved")
    }

    /// Instances that returned an edge (not only the winner).
    pub fn instance_successes(&self) -> usize {
        self.instance_successes
    }

    pub fn instances(&self) -> usize {
        self.cfg.instances
    }

    fn plan_sketches(&mut self, round: &mut RoundPlan) {
        self.total = Some(round.cross(&self.view, &[self.s], &self.targets));
        let hh = HeavyHittersConfig {
            force_sketch: self.cfg.force_sketch,
            ..HeavyHittersConfig::new(self.cfg.alpha(), self.cfg.n.max(self.view.points()))
        };
        for _ in 0..self.cfg.instances {
            let levels = nested_levels(&self.targets, self.cfg.levels(), &mut self.rng);
            let sketches = levels
                .into_iter()
                .map(|members| CountMinPlan::plan(round, &self.view, self.s, members, &hh, &mut self.rng))
                .collect();
            self.instances.push(Instance { sketches, candidates: Vec::new(), failed: false });
        }
    }

    fn read_sketches(&mut self, answers: &Answers) {
        self.total_weight = answers.cross(self.total.expect("planned"));
        if self.total_weight == 0 {
            self.outcome = Some(SampleOutcome::Empty);
            return;
        }
        let cap = 256.0 * self.cfg.alpha();
        let total = self.total_weight as u128;
        for inst in &mut self.instances {
            let mut distinct = std::collections::HashSet::new();
            for (i, sk) in inst.sketches.iter().enumerate() {
                let est = sk.estimates(answers);
                let cand: Vec<usize> = sk
                    .members()
                    .iter()
                    .zip(est)
                    .filter(|&(_, w)| (w as u128) << (i + 5) >= total)
                    .map(|(&v, _)| v)
                    .collect();
                distinct.extend(cand.iter().copied());
                inst.candidates.push(cand);
            }
            inst.failed = distinct.len() as f64 >= cap;
            inst.sketches.clear();
        }
    }

    fn plan_exact(&mut self, round: &mut RoundPlan) {
        for inst in self.instances.iter().filter(|i| !i.failed) {
            for &v in inst.candidates.iter().flatten() {
                let (view, s) = (&self.view, self.s);
                self.exact.entry(v).or_insert_with(|| round.cross(view, &[s], &[v]));
            }
        }
    }

    fn choose(&mut self, answers: &Answers) {
        let total = self.total_weight as u128;
        let weight: HashMap<usize, u64> = self.exact.iter().map(|(&v, &h)| (v, answers.cross(h))).collect();
        let mut winner = None;
        for inst in &self.instances {
            if inst.failed {
                continue;
            }
            let mut assigned = std::collections::HashSet::new();
            let mut picks: Vec<(usize, u64, f64)> = Vec::new();
            for (i, cand) in inst.candidates.iter().enumerate() {
                for &v in cand {
                    let w = weight[&v];
                    if w == 0 || assigned.contains(&v) {
                        continue;
                    }
                    let w128 = w as u128;
                    let low = w128 << (i + 5) >= total;
                    // The level-0 window is closed on the right so that a
                    // star with a single edge can be sampled.
                    let high = (w128 << i) < total || (i == 0 && w128 == total);
                    if low && high {
                        assigned.insert(v);
                        let p = (w as f64 / self.total_weight as f64) * 2f64.powi(i as i32 - 5);
                        picks.push((v, w, p));
                    }
                }
            }
            let mass: f64 = picks.iter().map(|x| x.2).sum();
            if mass > 1.0 {
                continue;
            }
            let u: f64 = self.rng.gen();
            let mut acc = 0.0;
            let mut chosen = None;
            for &(v, w, p) in &picks {
                acc += p;
                if u < acc {
                    chosen = Some(SampledEdge { s: self.s, v, w });
                    break;
                }
            }
            if let Some(e) = chosen {
                self.instance_successes += 1;
                winner.get_or_insert(e);
            }
        }
        self.outcome = Some(winner.map_or(SampleOutcome::Failed, SampleOutcome::Edge));
    }
}

impl Staged for WeightedEdgeSampler {
    fn plan(&mut self, round: &mut RoundPlan) {
        match self.stage {
            0 => self.plan_sketches(round),
            _ => self.plan_exact(round),
        }
    }

    fn resolve(&mut self, answers: &Answers) {
        match self.stage {
            0 => {
                if self.targets.is_empty() {
                    self.outcome = Some(SampleOutcome::Empty);
                } else {
                    self.read_sketches(answers);
                }
            }
            _ => self.choose(answers),
        }
        self.stage += 1;
    }

    fn done(&self) -> bool {
        self.outcome.is_some()
    }
}
