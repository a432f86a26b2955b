use super::ceil_log2;
use crate::oracle::{Answers, CrossHandle, RoundPlan, Staged, View};
use crate::rng::{Rng as StdRng, Seed};
use rand::Rng;

/// One-round estimate of the number of edges between `v` and `S`, within a
/// factor of 2^5 with high probability.
///
/// Each repetition halves `S` repeatedly and records the first level with no
/// edge to `v`; the median depth `a` gives the estimate `2^(a-1)`.
pub struct DegreeEstimator {
    view: View,
    v: usize,
    targets: Vec<usize>,
    reps: usize,
    rng: StdRng,
    planned: Option<(CrossHandle, Vec<Vec<CrossHandle>>)>,
    estimate: Option<u64>,
}

impl DegreeEstimator {
    pub fn new(view: &View, v: usize, targets: &[usize], seed: Seed) -> Self {
        let reps = ceil_log2(view.points()).max(5) | 1;
        DegreeEstimator { view: view.clone(), v, targets: targets.to_vec(), reps, rng: seed.rng(), planned: None, estimate: None }
    }

    pub fn estimate(&self) -> u64 {
        self.estimate.expect("estimator not resolved")
    }
}

impl Staged for DegreeEstimator {
    fn plan(&mut self, round: &mut RoundPlan) {
        if self.targets.is_empty() {
            self.estimate = Some(0);
            return;
        }
        let depth = 2 * ceil_log2(self.view.points()).max(1);
        let top = round.cross(&self.view, &[self.v], &self.targets);
        let mut chains = Vec::with_capacity(self.reps);
        for _ in 0..self.reps {
            let mut set = self.targets.clone();
            let mut chain = Vec::new();
            for _ in 0..depth {
                set.retain(|_| self.rng.gen_bool(0.5));
                if set.is_empty() {
                    break;
                }
                chain.push(round.cross(&self.view, &[self.v], &set));
            }
            chains.push(chain);
        }
        self.planned = Some((top, chains));
    }

    fn resolve(&mut self, answers: &Answers) {
        let Some((top, chains)) = self.planned.take() else { return };
        if answers.cross(top) == 0 {
            self.estimate = Some(0);
            return;
        }
        let mut depths: Vec<usize> = chains
            .iter()
            .map(|chain| 1 + chain.iter().take_while(|&&h| answers.cross(h) > 0).count())
            .collect();
        depths.sort_unstable();
        let a = depths[depths.len() / 2];
        self.estimate = Some(1u64 << (a - 1).min(62));
    }

    fn done(&self) -> bool {
        self.estimate.is_some()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::WeightedGraph;
    use crate::oracle::{run_staged, GraphOracle};

    #[test]
    fn estimates_stay_in_envelope() {
        let g = WeightedGraph::new_simple(65, (1..65).map(|v| (0, v, 1))).unwrap();
        let view = View::identity(65);
        let t: Vec<usize> = (1..65).collect();
        let mut o = GraphOracle::new(&g);
        let mut est: Vec<_> = (0..200).map(|i| DegreeEstimator::new(&view, 0, &t, Seed::new(4).child(i))).collect();
        run_staged(&mut o, &mut est);
        for e in &est {
            assert!((2..=2048).contains(&e.estimate()), "{}", e.estimate());
        }
        let mut none = [DegreeEstimator::new(&view, 1, &[2, 3], Seed::new(1))];
        run_staged(&mut o, &mut none);
        assert_eq!(none[0].estimate(), 0);
    }
}
