//! Recover a whole graph in one non-adaptive round, then check it with one
//! round of random cut queries.

use cutquery::graph::generate;
use cutquery::oracle::{CutOracle, GraphOracle, View};
use cutquery::recovery::{recover_graph, verify_recovery, RecoveryConfig, RecoveryStrategy};
use cutquery::rng::Seed;

fn main() {
    let g = generate(&"gnp:64,0.1,10".parse().unwrap(), 3).unwrap();
    let mut oracle = GraphOracle::new(&g);
    let cfg = RecoveryConfig { strategy: RecoveryStrategy::Grouped, ..RecoveryConfig::default() };
    let h = recover_graph(&mut oracle, &View::identity(g.n()), 4 * g.m(), &cfg, Seed::new(1)).unwrap();
    let edges = |x: &cutquery::graph::WeightedGraph| {
        let mut e: Vec<_> = x.edges().iter().map(|e| (e.u.min(e.v), e.u.max(e.v), e.w)).collect();
        e.sort_unstable();
        e
    };
    println!("m = {}, recovered {} edges, identical: {}", g.m(), h.m(), edges(&h) == edges(&g));
    println!("queries {} in {} round", oracle.ledger().queries, oracle.ledger().rounds);
    println!("verified: {}", verify_recovery(&h, &mut oracle, 64, Seed::new(2)));
}
