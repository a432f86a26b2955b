//! τ-star and 2-out contraction on two cliques joined by one bridge.

use cutquery::contraction::{tau_star_contract, two_out_contract, StarContractionConfig};
use cutquery::graph::{exact_min_cut, generate};
use cutquery::oracle::GraphOracle;
use cutquery::rng::Seed;

fn main() {
    let g = generate(&"planted:8,8,1".parse().unwrap(), 1).unwrap();
    let lambda = exact_min_cut(&g).value;

    let cfg = StarContractionConfig { tau: Some(4.0), a_star: 0.1, ..StarContractionConfig::default() };
    let mut kept = 0;
    for s in 0..100 {
        let out = tau_star_contract(&mut GraphOracle::new(&g), &cfg, Seed::new(s)).unwrap();
        kept += (exact_min_cut(&g.contract(&out.partition)).value == lambda) as usize;
    }
    println!("tau-star (tau = 4) kept the min cut on {kept}/100 seeds");

    let out = two_out_contract(&mut GraphOracle::new(&g), Seed::new(5)).unwrap();
    let h = g.contract(&out.partition);
    println!("2-out: {} -> {} vertices, min cut {} (was {lambda})", g.n(), h.n(), exact_min_cut(&h).value);
}
