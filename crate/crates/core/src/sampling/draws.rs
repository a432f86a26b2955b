use rand_distr::{Binomial, Distribution};

use super::star::LevelPlan;
use super::{ceil_log2, uniform_sampler_cost, SampleOutcome, SampledEdge, SamplerConfig};
use super::{UniformEdgeSampler, WeightedEdgeSampler, WeightedSamplerConfig};
use crate::oracle::{Answers, CrossHandle, RoundPlan, Staged, View};
use crate::rng::{Rng as StdRng, Seed};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DrawMode {
    /// Uniform over the neighbors of `s` in `T`; one round.
    Uniform,
    /// Proportional to edge weight; two rounds.
    Weighted,
}

enum Strategy {
    Uniform(Vec<UniformEdgeSampler>),
    Weighted(Vec<WeightedEdgeSampler>),
    /// Recover the whole star, then draw locally.
    FullStar { level: Option<LevelPlan>, total: Option<CrossHandle>, edges: Vec<(usize, u64)>, exact: Vec<CrossHandle> },
}

/// `count` independent draws from `E(s, T)` in the rounds of a single draw.
///
/// Depending on sizes this either runs `count` independent samplers or
/// recovers the star once (exactly, or by sparse recovery when `hint` bounds
/// the number of neighbors) and draws from it locally; both yield exactly
/// the target distribution. The result lists distinct edges with their
/// multiplicities.
pub struct StarDraws {
    view: View,
    s: usize,
    targets: Vec<usize>,
    count: u64,
    mode: DrawMode,
    hint: Option<usize>,
    cfg: SamplerConfig,
    rng: StdRng,
    stage: u8,
    strategy: Strategy,
    result: Option<Option<Vec<(SampledEdge, u64)>>>,
}

impl StarDraws {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        view: &View,
        s: usize,
        targets: &[usize],
        count: u64,
        mode: DrawMode,
        hint: Option<usize>,
        cfg: &SamplerConfig,
        wcfg: &WeightedSamplerConfig,
        seed: Seed,
    ) -> Self {
        let t = targets.len();
        let sparsity = hint.unwrap_or(t).max(1);
        let full_cost = t.min(cfg.repetitions * 2 * sparsity * (1 + ceil_log2(t))) + 1;
        let single_cost = match mode {
            DrawMode::Uniform => uniform_sampler_cost(t, view.points(), cfg),
            DrawMode::Weighted => wcfg.instances * 2 * (ceil_log2(wcfg.mass_bound as usize) + 1) + 2 * t,
        };
        let strategy = if count == 0 || t == 0 || (count as u128) * (single_cost as u128) >= full_cost as u128 {
            Strategy::FullStar { level: None, total: None, edges: Vec::new(), exact: Vec::new() }
        } else {
            match mode {
                DrawMode::Uniform => Strategy::Uniform(
                    (0..count).map(|i| UniformEdgeSampler::new(view, s, targets, cfg, seed.child(i))).collect(),
                ),
                DrawMode::Weighted => Strategy::Weighted(
                    (0..count).map(|i| WeightedEdgeSampler::new(view, s, targets, wcfg, seed.child(i))).collect(),
                ),
            }
        };
        StarDraws {
            view: view.clone(),
            s,
            targets: targets.to_vec(),
            count,
            mode,
            hint,
            cfg: cfg.clone(),
            rng: seed.named("local").rng(),
            stage: 0,
            strategy,
            result: None,
        }
    }

    /// Distinct edges with multiplicities summing to `count`, an empty list
    /// if the star is empty, or `None` if sampling failed.
    pub fn result(&self) -> Option<&[(SampledEdge, u64)]> {
        self.result.as_ref().expect("draws not resolved").as_deref()
    }

    pub fn into_result(self) -> Option<Vec<(SampledEdge, u64)>> {
        self.result.expect("draws not resolved")
    }

    fn stages(&self) -> u8 {
        match self.mode {
            DrawMode::Uniform => 1,
            DrawMode::Weighted => 2,
        }
    }

    fn collect(outcomes: impl Iterator<Item = SampleOutcome>) -> Option<Vec<(SampledEdge, u64)>> {
        let mut out: Vec<(SampledEdge, u64)> = Vec::new();
        for o in outcomes {
            match o {
                SampleOutcome::Empty => return Some(Vec::new()),
                SampleOutcome::Failed => return None,
                SampleOutcome::Edge(e) => match out.iter_mut().find(|(x, _)| x.v == e.v) {
                    Some(slot) => slot.1 += 1,
                    None => out.push((e, 1)),
                },
            }
        }
        out.sort_by_key(|(e, _)| e.v);
        Some(out)
    }

    /// Multinomial split of `count` draws over the recovered star.
    fn draw_locally(&mut self, edges: &[(usize, u64)]) -> Vec<(SampledEdge, u64)> {
        let mass = |w: u64| match self.mode {
            DrawMode::Uniform => 1.0,
            DrawMode::Weighted => w as f64,
        };
        let mut remaining_mass: f64 = edges.iter().map(|&(_, w)| mass(w)).sum();
        let mut remaining = self.count;
        let mut out = Vec::new();
        for &(v, w) in edges {
            if remaining == 0 {
                break;
            }
            let p = (mass(w) / remaining_mass).clamp(0.0, 1.0);
            let k = if p >= 1.0 { remaining } else { Binomial::new(remaining, p).unwrap().sample(&mut self.rng) };
            remaining -= k;
            remaining_mass -= mass(w);
            if k > 0 {
                out.push((SampledEdge { s: self.s, v, w }, k));
            }
        }
        out
    }
}

impl Staged for StarDraws {
    fn plan(&mut self, round: &mut RoundPlan) {
        match &mut self.strategy {
            Strategy::Uniform(v) => v.iter_mut().for_each(|x| x.plan(round)),
            Strategy::Weighted(v) => v.iter_mut().filter(|x| !x.done()).for_each(|x| x.plan(round)),
            Strategy::FullStar { level, total, edges, exact } => {
                if self.stage == 0 {
                    if self.targets.is_empty() || self.count == 0 {
                        return;
                    }
                    let sparsity = self.hint.unwrap_or(self.targets.len()).max(1);
                    *total = Some(round.cross(&self.view, &[self.s], &self.targets));
                    *level = Some(LevelPlan::plan(
                        round,
                        &self.view,
                        self.s,
                        self.targets.clone(),
                        2 * sparsity,
                        self.cfg.repetitions,
                        true,
                        &mut self.rng,
                    ));
                } else {
                    *exact = edges.iter().map(|&(v, _)| round.cross(&self.view, &[self.s], &[v])).collect();
                }
            }
        }
    }

    fn resolve(&mut self, answers: &Answers) {
        let last = self.stage + 1 == self.stages();
        match &mut self.strategy {
            Strategy::Uniform(v) => {
                v.iter_mut().for_each(|x| x.resolve(answers));
                self.result = Some(Self::collect(v.iter().map(|x| x.outcome())));
            }
            Strategy::Weighted(v) => {
                v.iter_mut().filter(|x| !x.done()).for_each(|x| x.resolve(answers));
                if last {
                    self.result = Some(Self::collect(v.iter().map(|x| x.outcome())));
                }
            }
            Strategy::FullStar { level, total, edges, exact } => {
                if self.stage == 0 {
                    match (level.take(), total.take()) {
                        (Some(level), Some(total)) => match level.decode(answers) {
                            Some(found) if found.iter().map(|e| e.1).sum::<u64>() == answers.cross(total) => {
                                *edges = found;
                                edges.sort_unstable();
                            }
                            _ => self.result = Some(None),
                        },
                        _ => self.result = Some(Some(Vec::new())),
                    }
                } else if exact.iter().zip(edges.iter()).any(|(&h, &(_, w))| answers.cross(h) != w) {
                    self.result = Some(None);
                }
                if last && self.result.is_none() {
                    let star = std::mem::take(edges);
                    self.result = Some(Some(self.draw_locally(&star)));
                }
            }
        }
        self.stage += 1;
    }

    fn done(&self) -> bool {
        self.stage >= self.stages()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::WeightedGraph;
    use crate::oracle::{run_one, CutOracle, GraphOracle};

    #[test]
    fn many_weighted_draws_take_two_rounds() {
        let g = WeightedGraph::new_simple(6, [(0, 1, 1), (0, 2, 3), (0, 4, 4)]).unwrap();
        let view = View::identity(6);
        let mut o = GraphOracle::new(&g);
        let d = run_one(
            &mut o,
            StarDraws::new(
                &view,
                0,
                &[1, 2, 3, 4, 5],
                80_000,
                DrawMode::Weighted,
                None,
                &SamplerConfig::default(),
                &WeightedSamplerConfig::new(6, 4),
                Seed::new(3),
            ),
        );
        let r = d.result().unwrap();
        assert_eq!(r.iter().map(|x| x.1).sum::<u64>(), 80_000);
        let share = |v| r.iter().find(|x| x.0.v == v).unwrap().1 as f64 / 80_000.0;
        assert!((share(4) - 0.5).abs() < 0.01);
        assert!((share(1) - 0.125).abs() < 0.01);
        assert_eq!(o.ledger().rounds, 2);
    }

    #[test]
    fn uniform_draws_with_sparse_hint() {
        let g = WeightedGraph::new_simple(2000, [(0, 10, 5), (0, 1500, 1)]).unwrap();
        let view = View::identity(2000);
        let t: Vec<usize> = (1..2000).collect();
        let mut o = GraphOracle::new(&g);
        let d = run_one(
            &mut o,
            StarDraws::new(&view, 0, &t, 1000, DrawMode::Uniform, Some(4), &SamplerConfig::default(), &WeightedSamplerConfig::new(2000, 5), Seed::new(8)),
        );
        let r = d.result().unwrap();
        assert_eq!(r.len(), 2);
        assert!(o.ledger().queries < 1999, "{}", o.ledger().queries);
        assert_eq!(o.ledger().rounds, 1);
    }
}
