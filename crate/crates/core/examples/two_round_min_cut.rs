//! Global minimum cut of an unweighted graph in two rounds.

use cutquery::graph::{exact_min_cut, generate};
use cutquery::mincut::{min_cut_2round, TwoRoundConfig};
use cutquery::oracle::GraphOracle;
use cutquery::rng::Seed;

fn main() {
    let g = generate(&"planted:8,8,3".parse().unwrap(), 1).unwrap();
    let res = min_cut_2round(&mut GraphOracle::new(&g), &TwoRoundConfig::default(), Seed::new(9)).unwrap();
    println!("value {} (exact {}), side {:?}", res.value, exact_min_cut(&g).value, res.side);
    println!("rounds {} queries {}", res.ledger.rounds, res.ledger.queries);
}
