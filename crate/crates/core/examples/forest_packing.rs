//! A maximal packing of k forests in 2r rounds.

use cutquery::graph::{exact_min_cut, generate};
use cutquery::oracle::{CutOracle, GraphOracle};
use cutquery::packing::{pack_forests, PackingConfig};
use cutquery::rng::Seed;

fn main() {
    let g = generate(&"gnp:32,0.3".parse().unwrap(), 4).unwrap();
    let lambda = exact_min_cut(&g).value;
    let k = lambda as usize;
    let mut oracle = GraphOracle::new(&g);
    let p = pack_forests(&mut oracle, &PackingConfig::new(k, 2), Seed::new(1)).unwrap();
    let sizes: Vec<usize> = p.forests.iter().map(Vec::len).collect();
    println!("k = {k}, forest sizes {sizes:?}");
    println!("disjoint {} acyclic {} maximal {}", p.is_edge_disjoint(), p.is_acyclic(), p.is_maximal(&g));
    println!("min cut of the union {} vs lambda {lambda}", exact_min_cut(&p.union_graph()).value);
    println!("rounds {}", oracle.ledger().rounds);
}
