//! End-to-end pipelines: global minimum cut (2-round, `2r + 1` rounds via
//! forest packing, `3r + 4` via a sparsifier, weighted via tree packing and
//! monotone matrices), minimum s-t cut and approximate maximum cut.
//!
//! Every pipeline runs independent trials co-scheduled into shared rounds
//! and keeps the best one. Each trial returns a vertex set whose value comes
//! from exact knowledge of the hidden graph (a query or an exactly recovered
//! contraction), so the reported value is always the true cut of the witness.

mod maxcut;
mod sparse;
mod st;
mod tree;
mod two_round;
mod unweighted;
mod weighted;

use serde::Serialize;

use crate::error::{CutQueryError, Result};
use crate::graph::WeightedGraph;
use crate::oracle::{run_staged, CutOracle, QueryLedger, Staged};

pub use maxcut::{approx_max_cut, MaxCutConfig, MaxCutTrial};
pub use sparse::{min_cut_unweighted_sparsifier, SparseCutConfig, SparseCutTrial};
pub use st::{min_st_cut, StCutConfig, StCutTrial};
pub use tree::{greedy_tree_packing, SpanningTree};
pub use two_round::{min_cut_2round, TwoRoundConfig, TwoRoundTrial};
pub use unweighted::{min_cut_unweighted, UnweightedConfig, UnweightedTrial};
pub use weighted::{min_cut_weighted, respecting_side, tree_instances, WeightedConfig, WeightedTrial};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinCutResult {
    pub value: u64,
    /// One side of the returned cut, over the original vertices.
    pub side: Vec<usize>,
    pub ledger: QueryLedger,
    pub trials: usize,
    pub failed_trials: usize,
}

impl MinCutResult {
    /// The witness has exactly the reported value in `g`.
    pub fn witness_consistent(&self, g: &WeightedGraph) -> bool {
        g.cut(&self.side) == self.value
    }
}

/// A trial's answer: a vertex set and its exact cut value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub value: u64,
    pub side: Vec<usize>,
}

impl Candidate {
    /// The lightest singleton cut.
    pub fn min_degree(degrees: &[u64]) -> Option<Candidate> {
        let (v, &d) = degrees.iter().enumerate().min_by_key(|&(v, &d)| (d, v))?;
        Some(Candidate { value: d, side: vec![v] })
    }

    fn better(self, other: Option<Candidate>, maximize: bool) -> Candidate {
        match other {
            Some(o) if (maximize && o.value > self.value) || (!maximize && o.value < self.value) => o,
            _ => self,
        }
    }
}

/// Lifts a side given over blocks to the original vertices.
pub(crate) fn lift(blocks: &[Vec<usize>], side: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = side.iter().flat_map(|&b| blocks[b].iter().copied()).collect();
    out.sort_unstable();
    out
}

/// One independent attempt of a pipeline, run as a staged computation.
pub trait Trial: Staged {
    fn into_candidate(self) -> Result<Candidate>;
}

/// Default trial count `ceil(4 log2 n)`.
pub fn default_trials(n: usize) -> usize {
    (4.0 * (n.max(2) as f64).log2()).ceil() as usize
}

/// Co-schedules the trials and keeps the best candidate.
pub fn run_trials<O: CutOracle + ?Sized, T: Trial>(oracle: &mut O, mut trials: Vec<T>, maximize: bool) -> Result<MinCutResult> {
    run_staged(oracle, &mut trials);
    let count = trials.len();
    let mut best: Option<Candidate> = None;
    let mut failed = 0;
    for t in trials {
        match t.into_candidate() {
            Ok(c) => best = Some(c.better(best, maximize)),
            Err(_) => failed += 1,
        }
    }
    let ledger = oracle.ledger().clone();
    match best {
        Some(c) => Ok(MinCutResult { value: c.value, side: c.side, ledger, trials: count, failed_trials: failed }),
        None => Err(CutQueryError::AllTrialsFailed { trials: count, ledger }),
    }
}
