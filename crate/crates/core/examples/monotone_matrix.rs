//! Minimum of a monotone matrix in r rounds of entry reads.

use cutquery::monmat::{brute_force_min, random_monotone, solve_monotone};
use cutquery::rng::Seed;

fn main() {
    let a = 64;
    let m = random_monotone(a, a, &mut Seed::new(1).rng());
    println!("brute force: {:?}", brute_force_min(&m));
    for r in 1..=3 {
        let (res, led) = solve_monotone(a, a, r, |i, j| m[i][j]);
        println!("r = {r}: {res:?}, reads per round {:?}", led.per_round);
    }
}
