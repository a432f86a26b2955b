//! Batches of cut queries, cross weights and the round ledger.

use cutquery::graph::WeightedGraph;
use cutquery::oracle::{CutOracle, GraphOracle, View};

fn main() {
    let g = WeightedGraph::new_simple(4, [(0, 1, 2), (1, 2, 3), (0, 2, 4), (2, 3, 5)]).unwrap();
    let mut oracle = GraphOracle::new(&g);

    let answers = oracle.query_batch(&[vec![0], vec![0, 1], vec![3]]);
    println!("cut({{0}}) = {}, cut({{0,1}}) = {}, cut({{3}}) = {}", answers[0], answers[1], answers[2]);

    let view = View::identity(4);
    let mut round = oracle.open_round();
    let h = round.cross(&view, &[0, 1], &[2]);
    let answers = oracle.submit_round(round);
    println!("w(E({{0,1}}, {{2}})) = {}", answers.cross(h));

    let led = oracle.ledger();
    println!("rounds {} queries {} per round {:?}", led.rounds, led.queries, led.per_round);
}
