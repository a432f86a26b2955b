//! Minimum s-t cut and an approximate maximum cut through a sparsifier.

use cutquery::graph::{exact_max_cut, generate, min_st_cut as exact_st};
use cutquery::mincut::{approx_max_cut, min_st_cut, MaxCutConfig, StCutConfig};
use cutquery::oracle::GraphOracle;
use cutquery::rng::Seed;

fn main() {
    let g = generate(&"planted:6,6,3".parse().unwrap(), 2).unwrap();
    for (s, t) in [(0, 11), (0, 3)] {
        let res = min_st_cut(&mut GraphOracle::new(&g), &StCutConfig::new(s, t, 1), Seed::new(1)).unwrap();
        println!("s-t cut ({s}, {t}): {} (exact {}), rounds {}", res.value, exact_st(&g, s, t).value, res.ledger.rounds);
    }

    let g = generate(&"gnp:14,0.4,8".parse().unwrap(), 6).unwrap();
    let res = approx_max_cut(&mut GraphOracle::new(&g), &MaxCutConfig::new(0.3, 1, g.max_weight()), Seed::new(2)).unwrap();
    println!("max cut {} vs optimum {}, rounds {}", res.value, exact_max_cut(&g).cut.value, res.ledger.rounds);
}
