//! Weighted minimum cut: sparsifier, tree packing, 2-respecting cuts through
//! monotone matrix searches.

use cutquery::graph::{exact_min_cut, generate};
use cutquery::mincut::{min_cut_weighted, WeightedConfig};
use cutquery::oracle::GraphOracle;
use cutquery::rng::Seed;

fn main() {
    let g = generate(&"planted:8,8,2,16".parse().unwrap(), 5).unwrap();
    for all_pairs in [false, true] {
        let mut cfg = WeightedConfig::new(2, g.max_weight());
        cfg.all_pairs = all_pairs;
        let res = min_cut_weighted(&mut GraphOracle::new(&g), &cfg, Seed::new(1)).unwrap();
        println!(
            "all pairs {all_pairs}: value {} (exact {}), rounds {}, queries {}",
            res.value,
            exact_min_cut(&g).value,
            res.ledger.rounds,
            res.ledger.queries
        );
    }
}
