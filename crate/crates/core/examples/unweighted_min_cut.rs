//! The round/query tradeoff: 2r + 1 rounds via forest packing and 3r + 4
//! rounds via a sparsifier.

use cutquery::graph::generate;
use cutquery::mincut::{min_cut_unweighted, min_cut_unweighted_sparsifier, SparseCutConfig, UnweightedConfig};
use cutquery::oracle::GraphOracle;
use cutquery::rng::Seed;

fn main() {
    let g = generate(&"planted:10,10,2".parse().unwrap(), 3).unwrap();
    for r in 1..=3 {
        let a = min_cut_unweighted(&mut GraphOracle::new(&g), &UnweightedConfig::new(r), Seed::new(r as u64)).unwrap();
        let b = min_cut_unweighted_sparsifier(&mut GraphOracle::new(&g), &SparseCutConfig::new(r), Seed::new(r as u64))
            .unwrap();
        println!(
            "r = {r}: packing value {} ({} rounds, {} queries); sparsifier value {} ({} rounds, {} queries)",
            a.value, a.ledger.rounds, a.ledger.queries, b.value, b.ledger.rounds, b.ledger.queries
        );
    }
}
