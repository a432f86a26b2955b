use std::collections::BTreeMap;

use rand::Rng;

use crate::oracle::{Answers, CrossHandle, RoundPlan, Staged, View};
use crate::rng::{Rng as StdRng, Seed};

const PRIME: u64 = (1 << 61) - 1;

#[derive(Clone, Debug)]
pub struct HeavyHittersConfig {
    pub alpha: f64,
    /// Failure probability; the sketch uses `ceil(ln(1/delta))` rows.
    pub delta: f64,
    /// Build the sketch even when reading every member exactly is cheaper.
    pub force_sketch: bool,
}

impl HeavyHittersConfig {
    pub fn new(alpha: f64, n: usize) -> Self {
        HeavyHittersConfig { alpha, delta: (n.max(2) as f64).powi(-10), force_sketch: false }
    }

    pub fn width(&self) -> usize {
        (std::f64::consts::E * self.alpha).ceil() as usize
    }

    pub fn depth(&self) -> usize {
        (1.0 / self.delta).ln().ceil().max(1.0) as usize
    }
}

fn hash(a: u64, b: u64, x: usize, width: usize) -> usize {
    let h = ((a as u128 * x as u128 + b as u128) % PRIME as u128) as u64;
    (h % width as u64) as usize
}

enum Sketch {
    Exact(Vec<CrossHandle>),
    Rows { width: usize, coeff: Vec<(u64, u64)>, cells: Vec<Vec<Option<CrossHandle>>> },
}

/// Count-min sketch over `E(s, X)`, one cross-weight query per cell.
pub(crate) struct CountMinPlan {
    members: Vec<usize>,
    sketch: Sketch,
}

impl CountMinPlan {
    pub(crate) fn plan(
        round: &mut RoundPlan,
        view: &View,
        s: usize,
        members: Vec<usize>,
        cfg: &HeavyHittersConfig,
        rng: &mut impl Rng,
    ) -> Self {
        let width = cfg.width().max(1);
        if members.len() <= width && !cfg.force_sketch {
            let h = members.iter().map(|&v| round.cross(view, &[s], &[v])).collect();
            return CountMinPlan { members, sketch: Sketch::Exact(h) };
        }
        let depth = cfg.depth();
        let coeff: Vec<(u64, u64)> = (0..depth).map(|_| (rng.gen_range(1..PRIME), rng.gen_range(0..PRIME))).collect();
        let cells = coeff
            .iter()
            .map(|&(a, b)| {
                let mut content = vec![Vec::new(); width];
                for &v in &members {
                    content[hash(a, b, v, width)].push(v);
                }
                content.iter().map(|c| (!c.is_empty()).then(|| round.cross(view, &[s], c))).collect()
            })
            .collect();
        CountMinPlan { members, sketch: Sketch::Rows { width, coeff, cells } }
    }

    pub(crate) fn members(&self) -> &[usize] {
        &self.members
    }

    /// Estimate per member, never below the true weight.
    pub(crate) fn estimates(&self, answers: &Answers) -> Vec<u64> {
        match &self.sketch {
            Sketch::Exact(h) => h.iter().map(|&h| answers.cross(h)).collect(),
            Sketch::Rows { width, coeff, cells } => self
                .members
                .iter()
                .map(|&v| {
                    coeff
                        .iter()
                        .zip(cells)
                        .map(|(&(a, b), row)| row[hash(a, b, v, *width)].map_or(0, |h| answers.cross(h)))
                        .min()
                        .unwrap_or(0)
                })
                .collect(),
        }
    }
}

/// One-round heavy-hitter estimates `w(e) <= w~(e) <= w(e) + w(E(s,T))/alpha`.
pub struct HeavyHitters {
    view: View,
    s: usize,
    targets: Vec<usize>,
    cfg: HeavyHittersConfig,
    rng: StdRng,
    plan: Option<CountMinPlan>,
    result: Option<BTreeMap<usize, u64>>,
}

impl HeavyHitters {
    pub fn new(view: &View, s: usize, targets: &[usize], cfg: &HeavyHittersConfig, seed: Seed) -> Self {
        HeavyHitters { view: view.clone(), s, targets: targets.to_vec(), cfg: cfg.clone(), rng: seed.rng(), plan: None, result: None }
    }

    /// Estimates for members with a positive estimate.
    pub fn estimates(&self) -> &BTreeMap<usize, u64> {
        self.result.as_ref().expect("heavy hitters not resolved")
    }
}

impl Staged for HeavyHitters {
    fn plan(&mut self, round: &mut RoundPlan) {
        self.plan = Some(CountMinPlan::plan(round, &self.view, self.s, self.targets.clone(), &self.cfg, &mut self.rng));
    }

    fn resolve(&mut self, answers: &Answers) {
        let plan = self.plan.take().expect("planned");
        let est = plan.estimates(answers);
        self.result = Some(plan.members().iter().zip(est).filter(|&(_, w)| w > 0).map(|(&v, w)| (v, w)).collect());
    }

    fn done(&self) -> bool {
        self.result.is_some()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::WeightedGraph;
    use crate::oracle::{run_one, GraphOracle};

    #[test]
    fn forced_sketch_bounds() {
        let g = WeightedGraph::new_simple(40, [(0, 1, 5), (0, 2, 1), (0, 3, 1), (0, 4, 1)]).unwrap();
        let view = View::identity(40);
        let t: Vec<usize> = (1..40).collect();
        let mut cfg = HeavyHittersConfig::new(8.0, 40);
        cfg.force_sketch = true;
        let mut o = GraphOracle::new(&g);
        let h = run_one(&mut o, HeavyHitters::new(&view, 0, &t, &cfg, Seed::new(3)));
        let est = h.estimates();
        for (v, w) in [(1, 5), (2, 1), (3, 1), (4, 1)] {
            let e = est[&v];
            assert!(e >= w && e <= w + 1, "{v}: {e}");
        }
    }
}
