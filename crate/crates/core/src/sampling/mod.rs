//! Edge sampling through cut queries: sparse star recovery, uniform and
//! weight-proportional samplers, degree estimation and count-min heavy
//! hitters. Samplers work over a [`View`](crate::oracle::View), so the same
//! code serves contracted graphs.

mod degree;
mod draws;
mod heavy;
mod star;
mod uniform;
mod weighted;

use rand::Rng;
use rand_distr::Distribution;

pub use degree::DegreeEstimator;
pub use draws::{DrawMode, StarDraws};
pub use heavy::{HeavyHitters, HeavyHittersConfig};
pub use star::StarRecovery;
pub use uniform::UniformEdgeSampler;
pub use weighted::{WeightedEdgeSampler, WeightedSamplerConfig};

/// An edge `(s, v)` of the star being sampled, with its exact weight.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SampledEdge {
    pub s: usize,
    pub v: usize,
    pub w: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SampleOutcome {
    Edge(SampledEdge),
    /// The star has no edges.
    Empty,
    /// Internal recovery or acceptance failure.
    Failed,
}

#[derive(Clone, Debug)]
pub struct SamplerConfig {
    /// Sparsity handled by one bucket family; levels hash into `2 * sparsity` buckets.
    pub sparsity: usize,
    /// Independent hash families per recovered level.
    pub repetitions: usize,
    /// Uniform sampling reads a level member by member when that is cheaper
    /// than its sketch. Off, every level above the bucket count is sketched.
    pub dense_reads: bool,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        SamplerConfig { sparsity: 4, repetitions: 3, dense_reads: true }
    }
}

impl SamplerConfig {
    pub fn buckets(&self) -> usize {
        2 * self.sparsity
    }
}

pub(crate) fn ceil_log2(x: usize) -> usize {
    if x <= 1 {
        0
    } else {
        (usize::BITS - (x - 1).leading_zeros()) as usize
    }
}

/// Nested subsampling `T = T_0 ⊇ T_1 ⊇ ... ⊇ T_levels`, each element kept
/// with probability 1/2 per level. Empty trailing levels are dropped.
pub(crate) fn nested_levels(targets: &[usize], levels: usize, rng: &mut impl Rng) -> Vec<Vec<usize>> {
    let mut out = vec![targets.to_vec()];
    for _ in 0..levels {
        let next: Vec<usize> = out.last().unwrap().iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
        if next.is_empty() {
            break;
        }
        out.push(next);
    }
    out
}

/// Rough query cost of one uniform sampler over `t` targets, used to choose
/// between independent samplers and full star recovery.
pub(crate) fn uniform_sampler_cost(t: usize, n: usize, cfg: &SamplerConfig) -> usize {
    let b = cfg.buckets();
    let mut cost = 0;
    let mut size = t as f64;
    for _ in 0..=ceil_log2(n) {
        if size < 1.0 {
            break;
        }
        let k = size.ceil() as usize;
        cost += 2;
        cost += if k <= b { k } else { cfg.repetitions * b * (1 + ceil_log2(k)) * 2 };
        size /= 2.0;
    }
    cost
}

/// Splits `total` draws among categories proportionally to `weights`
/// (a multinomial sample, by sequential binomials).
pub fn multinomial(total: u64, weights: &[f64], rng: &mut impl Rng) -> Vec<u64> {
    let mut out = vec![0; weights.len()];
    let mut left = total;
    let mut mass: f64 = weights.iter().sum();
    for (i, &w) in weights.iter().enumerate() {
        if left == 0 || w <= 0.0 {
            continue;
        }
        let p = w / mass;
        let c = if p >= 1.0 { left } else { rand_distr::Binomial::new(left, p).unwrap().sample(rng) };
        out[i] = c;
        left -= c;
        mass -= w;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log2_ceiling() {
        assert_eq!([0, 1, 2, 3, 4, 5, 8, 9].map(ceil_log2), [0, 0, 1, 2, 2, 3, 3, 4]);
    }
}
