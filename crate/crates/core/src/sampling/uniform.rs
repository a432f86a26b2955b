use rand::Rng;

use super::star::LevelPlan;
use super::{ceil_log2, nested_levels, SampleOutcome, SampledEdge, SamplerConfig};
use crate::oracle::{Answers, CrossHandle, RoundPlan, Staged, View};
use crate::rng::{Rng as StdRng, Seed};

/// One-round sampler returning a uniformly random neighbor of `s` in `T`.
///
/// `T` is subsampled into nested levels; the deepest level with an edge is
/// recovered exactly and one of its edges is picked uniformly.
pub struct UniformEdgeSampler {
    view: View,
    s: usize,
    targets: Vec<usize>,
    cfg: SamplerConfig,
    rng: StdRng,
    planned: Option<(Vec<LevelPlan>, Vec<CrossHandle>)>,
    outcome: Option<SampleOutcome>,
}

impl UniformEdgeSampler {
    pub fn new(view: &View, s: usize, targets: &[usize], cfg: &SamplerConfig, seed: Seed) -> Self {
        debug_assert!(!targets.contains(&s));
        UniformEdgeSampler {
            view: view.clone(),
            s,
            targets: targets.to_vec(),
            cfg: cfg.clone(),
            rng: seed.rng(),
            planned: None,
            outcome: None,
        }
    }

    pub fn outcome(&self) -> SampleOutcome {
        self.outcome.expect("sampler not resolved")
    }
}

impl Staged for UniformEdgeSampler {
    fn plan(&mut self, round: &mut RoundPlan) {
        if self.targets.is_empty() {
            self.planned = Some((Vec::new(), Vec::new()));
            return;
        }
        let levels = nested_levels(&self.targets, ceil_log2(self.view.points()), &mut self.rng);
        let mut plans = Vec::with_capacity(levels.len());
        let mut weights = Vec::with_capacity(levels.len());
        for members in levels {
            weights.push(round.cross(&self.view, &[self.s], &members));
            plans.push(LevelPlan::plan(
                round,
                &self.view,
                self.s,
                members,
                self.cfg.buckets(),
                self.cfg.repetitions,
                self.cfg.dense_reads,
                &mut self.rng,
            ));
        }
        self.planned = Some((plans, weights));
    }

    fn resolve(&mut self, answers: &Answers) {
        let (plans, weights) = self.planned.take().expect("planned");
        let level_weight: Vec<u64> = weights.iter().map(|&h| answers.cross(h)).collect();
        let Some(deepest) = level_weight.iter().rposition(|&w| w > 0) else {
            self.outcome = Some(SampleOutcome::Empty);
            return;
        };
        self.outcome = Some(match plans[deepest].decode(answers) {
            Some(edges) if !edges.is_empty() && edges.iter().map(|e| e.1).sum::<u64>() == level_weight[deepest] => {
                let (v, w) = edges[self.rng.gen_range(0..edges.len())];
                SampleOutcome::Edge(SampledEdge { s: self.s, v, w })
            }
            _ => SampleOutcome::Failed,
        });
    }

    fn done(&self) -> bool {
        self.outcome.is_some()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::WeightedGraph;
    use crate::oracle::{run_one, run_staged, CutOracle, GraphOracle};

    #[test]
    fn empty_and_single_edge_stars() {
        let g = WeightedGraph::new_simple(30, [(0, 17, 1)]).unwrap();
        let view = View::identity(30);
        let cfg = SamplerConfig::default();
        let t: Vec<usize> = (1..30).collect();
        let mut o = GraphOracle::new(&g);
        let a = run_one(&mut o, UniformEdgeSampler::new(&view, 0, &t, &cfg, Seed::new(2)));
        assert_eq!(a.outcome(), SampleOutcome::Edge(SampledEdge { s: 0, v: 17, w: 1 }));
        let t2: Vec<usize> = (1..30).filter(|&v| v != 17).collect();
        let b = run_one(&mut o, UniformEdgeSampler::new(&view, 0, &t2, &cfg, Seed::new(2)));
        assert_eq!(b.outcome(), SampleOutcome::Empty);
    }

    #[test]
    fn frequencies_on_small_star() {
        let g = WeightedGraph::new_simple(5, (1..5).map(|v| (0, v, 1))).unwrap();
        let view = View::identity(5);
        let cfg = SamplerConfig::default();
        let t: Vec<usize> = (1..5).collect();
        let mut o = GraphOracle::new(&g);
        let mut samplers: Vec<_> =
            (0..4000).map(|i| UniformEdgeSampler::new(&view, 0, &t, &cfg, Seed::new(9).child(i))).collect();
        run_staged(&mut o, &mut samplers);
        let mut count = [0usize; 5];
        for s in &samplers {
            match s.outcome() {
                SampleOutcome::Edge(e) => count[e.v] += 1,
                other => panic!("unexpected {other:?}"),
            }
        }
        for c in &count[1..] {
            assert!((*c as f64 / 4000.0 - 0.25).abs() < 0.03, "{count:?}");
        }
        assert_eq!(o.ledger().rounds, 1);
    }
}
