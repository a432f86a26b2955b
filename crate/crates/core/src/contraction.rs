//! Randomized contractions driven by one round of edge samples.

use rand::Rng;

use crate::error::{CutQueryError, Result};
use crate::oracle::{run_one, Answers, CutOracle, QueryId, RoundPlan, Staged, View};
use crate::partition::ContractionPartition;
use crate::rng::Seed;
use crate::sampling::{SampleOutcome, SamplerConfig, UniformEdgeSampler};

#[derive(Clone, Debug)]
pub struct StarContractionConfig {
    /// Degree threshold; `None` means `max(n^(1/3), min degree)`, decided
    /// after the degrees of the same round are known.
    pub tau: Option<f64>,
    /// Constant in the center probability `p = a_star * log2(n) / tau`.
    pub a_star: f64,
    /// Threshold used for `p`. Defaults to `tau`, or `n^(1/3)` when `tau`
    /// itself depends on the degrees.
    pub sample_tau: Option<f64>,
    /// Fixed center set instead of sampling.
    pub forced_centers: Option<Vec<usize>>,
    pub sampler: SamplerConfig,
}

impl Default for StarContractionConfig {
    fn default() -> Self {
        StarContractionConfig { tau: None, a_star: 400.0, sample_tau: None, forced_centers: None, sampler: SamplerConfig::default() }
    }
}

impl StarContractionConfig {
    pub fn with_tau(tau: f64) -> Self {
        StarContractionConfig { tau: Some(tau), ..Default::default() }
    }

    pub fn center_probability(&self, n: usize) -> f64 {
        let cube = (n as f64).cbrt();
        let t = self.sample_tau.or(self.tau).unwrap_or(cube).max(1.0);
        (self.a_star * (n.max(2) as f64).log2() / t).min(1.0)
    }
}

#[derive(Clone, Debug)]
pub struct StarContractionOutcome {
    /// Partition of the view's points.
    pub partition: ContractionPartition,
    /// Weighted degree of every point.
    pub degrees: Vec<u64>,
    pub tau: f64,
    pub centers: Vec<usize>,
    /// Contracted (non-center, center) pairs.
    pub merged: Vec<(usize, usize)>,
}

/// One-round τ-star contraction: each vertex outside the center set `R`
/// samples a uniform neighbor in `R`; vertices of degree at least `τ` with a
/// neighbor in `R` merge into it.
pub struct StarContraction {
    view: View,
    cfg: StarContractionConfig,
    seed: Seed,
    centers: Vec<usize>,
    degrees: Vec<QueryId>,
    samplers: Vec<(usize, UniformEdgeSampler)>,
    outcome: Option<Result<StarContractionOutcome>>,
}

impl StarContraction {
    pub fn new(view: &View, cfg: &StarContractionConfig, seed: Seed) -> Self {
        let n = view.points();
        let centers = match &cfg.forced_centers {
            Some(c) => c.clone(),
            None => {
                let p = cfg.center_probability(n);
                let mut rng = seed.named("centers").rng();
                (0..n).filter(|_| rng.gen_bool(p)).collect()
            }
        };
        StarContraction {
            view: view.clone(),
            cfg: cfg.clone(),
            seed,
            centers,
            degrees: Vec::new(),
            samplers: Vec::new(),
            outcome: None,
        }
    }

    pub fn centers(&self) -> &[usize] {
        &self.centers
    }

    pub fn outcome(&self) -> Result<&StarContractionOutcome> {
        match self.outcome.as_ref().expect("contraction not resolved") {
            Ok(o) => Ok(o),
            Err(e) => Err(CutQueryError::SamplingFailed(e.to_string())),
        }
    }

    pub fn into_outcome(self) -> Result<StarContractionOutcome> {
        self.outcome.expect("contraction not resolved")
    }
}

impl Staged for StarContraction {
    fn plan(&mut self, round: &mut RoundPlan) {
        let n = self.view.points();
        self.degrees = (0..n).map(|p| round.query_points(&self.view, &[p])).collect();
        let mut is_center = vec![false; n];
        for &c in &self.centers {
            is_center[c] = true;
        }
        self.samplers = (0..n)
            .filter(|&v| !is_center[v])
            .map(|v| {
                (v, UniformEdgeSampler::new(&self.view, v, &self.centers, &self.cfg.sampler, self.seed.child(v as u64)))
            })
            .collect();
        for (_, s) in &mut self.samplers {
            s.plan(round);
        }
    }

    fn resolve(&mut self, answers: &Answers) {
        let n = self.view.points();
        let degrees: Vec<u64> = self.degrees.iter().map(|&q| answers.get(q)).collect();
        let min_degree = degrees.iter().copied().min().unwrap_or(0) as f64;
        let tau = self.cfg.tau.unwrap_or_else(|| (n as f64).cbrt().max(min_degree));
        let mut partition = ContractionPartition::identity(n);
        let mut merged = Vec::new();
        let mut failed = None;
        for (v, s) in &mut self.samplers {
            s.resolve(answers);
            if (degrees[*v] as f64) < tau {
                continue;
            }
            match s.outcome() {
                SampleOutcome::Edge(e) => {
                    partition.union(*v, e.v);
                    merged.push((*v, e.v));
                }
                SampleOutcome::Empty => {}
                SampleOutcome::Failed => failed = Some(*v),
            }
        }
        self.samplers.clear();
        self.outcome = Some(match failed {
            Some(v) => Err(CutQueryError::SamplingFailed(format!("neighbor sample of vertex {v}"))),
            None => Ok(StarContractionOutcome { partition, degrees, tau, centers: self.centers.clone(), merged }),
        });
    }

    fn done(&self) -> bool {
        self.outcome.is_some()
    }
}

/// τ-star contraction of the whole graph in one round.
pub fn tau_star_contract<O: CutOracle + ?Sized>(
    oracle: &mut O,
    cfg: &StarContractionConfig,
    seed: Seed,
) -> Result<StarContractionOutcome> {
    let view = View::identity(oracle.n());
    run_one(oracle, StarContraction::new(&view, cfg, seed)).into_outcome()
}

#[derive(Clone, Debug)]
pub struct TwoOutOutcome {
    pub partition: ContractionPartition,
    pub degrees: Vec<u64>,
    /// The sampled edges that were contracted.
    pub sampled: Vec<(usize, usize)>,
}

/// One-round 2-out contraction: every point samples two uniform incident
/// edges and all of them are contracted.
pub struct TwoOutContraction {
    view: View,
    cfg: SamplerConfig,
    seed: Seed,
    degrees: Vec<QueryId>,
    samplers: Vec<(usize, UniformEdgeSampler)>,
    outcome: Option<Result<TwoOutOutcome>>,
}

impl TwoOutContraction {
    pub fn new(view: &View, cfg: &SamplerConfig, seed: Seed) -> Self {
        TwoOutContraction { view: view.clone(), cfg: cfg.clone(), seed, degrees: Vec::new(), samplers: Vec::new(), outcome: None }
    }

    pub fn into_outcome(self) -> Result<TwoOutOutcome> {
        self.outcome.expect("contraction not resolved")
    }
}

impl Staged for TwoOutContraction {
    fn plan(&mut self, round: &mut RoundPlan) {
        let n = self.view.points();
        self.degrees = (0..n).map(|p| round.query_points(&self.view, &[p])).collect();
        for v in 0..n {
            let others: Vec<usize> = (0..n).filter(|&x| x != v).collect();
            for k in 0..2u64 {
                let seed = self.seed.child(v as u64).child(k);
                self.samplers.push((v, UniformEdgeSampler::new(&self.view, v, &others, &self.cfg, seed)));
            }
        }
        for (_, s) in &mut self.samplers {
            s.plan(round);
        }
    }

    fn resolve(&mut self, answers: &Answers) {
        let n = self.view.points();
        let degrees = self.degrees.iter().map(|&q| answers.get(q)).collect();
        let mut partition = ContractionPartition::identity(n);
        let mut sampled = Vec::new();
        let mut failed = None;
        for (v, s) in &mut self.samplers {
            s.resolve(answers);
            match s.outcome() {
                SampleOutcome::Edge(e) => {
                    partition.union(*v, e.v);
                    sampled.push((*v, e.v));
                }
                SampleOutcome::Empty => {}
                SampleOutcome::Failed => failed = Some(*v),
            }
        }
        self.samplers.clear();
        self.outcome = Some(match failed {
            Some(v) => Err(CutQueryError::SamplingFailed(format!("2-out sample of vertex {v}"))),
            None => Ok(TwoOutOutcome { partition, degrees, sampled }),
        });
    }

    fn done(&self) -> bool {
        self.outcome.is_some()
    }
}

pub fn two_out_contract<O: CutOracle + ?Sized>(oracle: &mut O, seed: Seed) -> Result<TwoOutOutcome> {
    let view = View::identity(oracle.n());
    run_one(oracle, TwoOutContraction::new(&view, &SamplerConfig::default(), seed)).into_outcome()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{exact_min_cut, generate, GenSpec, WeightedGraph};
    use crate::oracle::GraphOracle;

    fn spec(s: &str) -> GenSpec {
        s.parse().unwrap()
    }

    #[test]
    fn forced_centers() {
        let g = generate(&spec("clique:3"), 0).unwrap();
        let mut o = GraphOracle::new(&g);
        let all = StarContractionConfig { forced_centers: Some(vec![0, 1, 2]), ..StarContractionConfig::with_tau(1.0) };
        assert_eq!(tau_star_contract(&mut o, &all, Seed::new(1)).unwrap().partition.block_count(), 3);
        let one = StarContractionConfig { forced_centers: Some(vec![0]), ..StarContractionConfig::with_tau(1.0) };
        let out = tau_star_contract(&mut o, &one, Seed::new(1)).unwrap();
        assert_eq!(out.partition.block_count(), 1);
        assert_eq!(o.ledger().rounds, 2);
    }

    #[test]
    fn low_degree_vertices_stay() {
        let g = WeightedGraph::new_simple(4, [(0, 1, 1), (0, 2, 1), (0, 3, 1), (1, 2, 1)]).unwrap();
        let mut o = GraphOracle::new(&g);
        let cfg = StarContractionConfig { forced_centers: Some(vec![0]), ..StarContractionConfig::with_tau(2.0) };
        let out = tau_star_contract(&mut o, &cfg, Seed::new(5)).unwrap();
        assert!(out.partition.same(0, 1) && out.partition.same(0, 2));
        assert!(!out.partition.same(0, 3));
    }

    #[test]
    fn two_out_never_lowers_min_cut() {
        let g = generate(&spec("planted:8,8,2"), 1).unwrap();
        let lambda = exact_min_cut(&g).value;
        for s in 0..20 {
            let mut o = GraphOracle::new(&g);
            let out = two_out_contract(&mut o, Seed::new(s)).unwrap();
            let h = g.contract(&out.partition);
            if h.n() > 1 {
                assert!(exact_min_cut(&h).value >= lambda);
            }
            assert_eq!(o.ledger().rounds, 1);
        }
    }

    #[test]
    fn single_edge_two_out() {
        let g = WeightedGraph::new_simple(2, [(0, 1, 1)]).unwrap();
        let mut o = GraphOracle::new(&g);
        assert_eq!(two_out_contract(&mut o, Seed::new(0)).unwrap().partition.block_count(), 1);
    }
}
