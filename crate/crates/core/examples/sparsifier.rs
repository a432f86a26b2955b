//! A (1 ± ε) cut sparsifier in 3r + 3 rounds, checked against every cut.

use cutquery::graph::{generate, max_cut_distortion, write_sparsifier};
use cutquery::oracle::{CutOracle, GraphOracle};
use cutquery::rng::Seed;
use cutquery::sparsifier::{sparsify, SparsifyConfig};

fn main() {
    let g = generate(&"gnp:12,0.5,8".parse().unwrap(), 2).unwrap();
    let cfg = SparsifyConfig::new(0.25, 2, g.max_weight());
    let mut oracle = GraphOracle::new(&g);
    let h = sparsify(&mut oracle, &cfg, Seed::new(3)).unwrap();
    println!("{} strength classes, {} of {} edges kept", h.entries.len(), h.graph.m(), g.m());
    println!("worst cut distortion {:.4} (eps 0.25)", max_cut_distortion(&g, &h.graph));
    println!("rounds {} queries {}", oracle.ledger().rounds, oracle.ledger().queries);
    write_sparsifier(&h.graph, std::io::stdout().lock()).unwrap();
}
