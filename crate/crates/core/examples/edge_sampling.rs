//! One-round uniform edge sampling, two-round weight-proportional sampling
//! and count-min heavy hitters on a weighted star.

use std::collections::BTreeMap;

use cutquery::graph::WeightedGraph;
use cutquery::oracle::{run_one, GraphOracle, View};
use cutquery::rng::Seed;
use cutquery::sampling::{
    HeavyHitters, HeavyHittersConfig, SampleOutcome, SamplerConfig, UniformEdgeSampler, WeightedEdgeSampler,
    WeightedSamplerConfig,
};

fn main() {
    let weights = [1u64, 2, 3, 4, 5, 6, 7, 8];
    let g = WeightedGraph::new_simple(9, weights.iter().enumerate().map(|(i, &w)| (0, i + 1, w))).unwrap();
    let view = View::identity(9);
    let leaves: Vec<usize> = (1..9).collect();

    let mut uniform = BTreeMap::new();
    let mut weighted = BTreeMap::new();
    let mut failed = 0;
    for i in 0..2000 {
        let mut o = GraphOracle::new(&g);
        let s = run_one(&mut o, UniformEdgeSampler::new(&view, 0, &leaves, &SamplerConfig::default(), Seed::new(i)));
        if let SampleOutcome::Edge(e) = s.outcome() {
            *uniform.entry(e.v).or_insert(0) += 1;
        }
        let cfg = WeightedSamplerConfig::new(9, 8);
        let s = run_one(&mut o, WeightedEdgeSampler::new(&view, 0, &leaves, &cfg, Seed::new(i).named("w")));
        match s.outcome() {
            SampleOutcome::Edge(e) => *weighted.entry(e.v).or_insert(0) += 1,
            _ => failed += 1,
        }
    }
    println!("uniform draws per leaf:  {:?}", uniform.values().collect::<Vec<_>>());
    println!("weighted draws per leaf: {:?} ({failed} failed instances)", weighted.values().collect::<Vec<_>>());

    let mut o = GraphOracle::new(&g);
    let mut cfg = HeavyHittersConfig::new(4.0, 9);
    cfg.force_sketch = true;
    let hh = run_one(&mut o, HeavyHitters::new(&view, 0, &leaves, &cfg, Seed::new(7)));
    println!("heavy hitter estimates (alpha = 4): {:?}", hh.estimates());
}
