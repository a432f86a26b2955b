use std::sync::Arc;

use super::{Answers, CutOracle, QueryLedger, RoundPlan};
use crate::graph::WeightedGraph;

/// Dense adjacency is kept for graphs up to this many vertices.
const DENSE_LIMIT: usize = 1536;

/// Evaluates `cut(S)` on a known graph, choosing the cheapest of a dense
/// pair sum, an adjacency scan, and the complementary side.
pub struct CutEvaluator {
    n: usize,
    deg: Vec<u64>,
    adj: Vec<Vec<(u32, u64)>>,
    dense: Option<Vec<u64>>,
}

impl CutEvaluator {
    pub fn new(g: &WeightedGraph) -> Self {
        let n = g.n();
        let adj: Vec<Vec<(u32, u64)>> =
            (0..n).map(|v| g.neighbors(v).iter().map(|&(x, w)| (x as u32, w)).collect()).collect();
        let deg = (0..n).map(|v| g.degree(v)).collect();
        let dense = (n <= DENSE_LIMIT).then(|| {
            let mut d = vec![0u64; n * n];
            for e in g.edges() {
                d[e.u * n + e.v] += e.w;
                d[e.v * n + e.u] += e.w;
            }
            d
        });
        CutEvaluator { n, deg, adj, dense }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `mark` must be all-false on entry and is restored on exit.
    pub fn cut(&self, set: &[u32], mark: &mut [bool]) -> u64 {
        if set.is_empty() || set.len() == self.n {
            return 0;
        }
        if 2 * set.len() > self.n {
            for &v in set {
                mark[v as usize] = true;
            }
            let comp: Vec<u32> = (0..self.n as u32).filter(|&v| !mark[v as usize]).collect();
            for &v in set {
                mark[v as usize] = false;
            }
            return self.cut_small(&comp, mark);
        }
        self.cut_small(set, mark)
    }

    fn cut_small(&self, set: &[u32], mark: &mut [bool]) -> u64 {
        let k = set.len();
        let scan: usize = set.iter().map(|&v| self.adj[v as usize].len()).sum();
        if let Some(d) = &self.dense {
            if k * k / 2 < scan {
                let mut degs = 0u64;
                let mut inner = 0u64;
                for (i, &a) in set.iter().enumerate() {
                    degs += self.deg[a as usize];
                    let row = &d[a as usize * self.n..(a as usize + 1) * self.n];
                    for &b in &set[i + 1..] {
                        inner += row[b as usize];
                    }
                }
                return degs - 2 * inner;
            }
        }
        for &v in set {
            mark[v as usize] = true;
        }
        let mut total = 0u64;
        for &v in set {
            for &(x, w) in &self.adj[v as usize] {
                if !mark[x as usize] {
                    total += w;
                }
            }
        }
        for &v in set {
            mark[v as usize] = false;
        }
        total
    }
}

/// Oracle over a graph held in memory.
pub struct GraphOracle {
    eval: Arc<CutEvaluator>,
    ledger: QueryLedger,
}

impl GraphOracle {
    pub fn new(g: &WeightedGraph) -> Self {
        GraphOracle { eval: Arc::new(CutEvaluator::new(g)), ledger: QueryLedger::default() }
    }
}

impl CutOracle for GraphOracle {
    fn n(&self) -> usize {
        self.eval.n()
    }

    fn open_round(&self) -> RoundPlan {
        RoundPlan::eager(self.eval.n(), self.eval.clone())
    }

    fn submit_round(&mut self, plan: RoundPlan) -> Answers {
        let answers = plan.finish_with(&self.eval);
        self.ledger.record(answers.len());
        answers
    }

    fn ledger(&self) -> &QueryLedger {
        &self.ledger
    }
}
