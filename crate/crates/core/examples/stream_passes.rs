//! Running a pipeline over a dynamic edge stream: one pass per round.

use cutquery::graph::generate;
use cutquery::mincut::{min_cut_weighted, WeightedConfig};
use cutquery::oracle::{parse_stream, StreamOracle};
use cutquery::rng::Seed;

fn main() {
    let text = "6\n0 1 3\n1 2 3\n0 2 3\n3 4 3\n4 5 3\n3 5 3\n2 3 5\n2 3 -4\n0 1 1\n";
    let (n, events) = parse_stream(text).unwrap();
    let mut oracle = StreamOracle::new(n, events).unwrap();
    let res = min_cut_weighted(&mut oracle, &WeightedConfig::new(1, 8), Seed::new(1)).unwrap();
    println!("min cut {} side {:?}", res.value, res.side);
    println!("rounds {} passes {}", res.ledger.rounds, oracle.passes());

    let g = generate(&"cycle:10".parse().unwrap(), 0).unwrap();
    let mut oracle = StreamOracle::from_graph(&g);
    let res = min_cut_weighted(&mut oracle, &WeightedConfig::new(1, 1), Seed::new(2)).unwrap();
    println!("cycle: min cut {} in {} passes", res.value, oracle.passes());
}
