//! Cut-query oracles. An oracle only accepts whole rounds: a batch of vertex
//! sets is planned, submitted, and answered together. Answers cannot be read
//! before submission, so later queries in a round cannot depend on earlier
//! ones.

mod contracted;
mod memory;
mod record;
mod staged;
mod stream;

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use serde::Serialize;

pub use contracted::ContractedOracle;
pub use memory::{CutEvaluator, GraphOracle};
pub use record::{RecordedRound, RecordingOracle};
pub use staged::{run_one, run_staged, Staged};
pub use stream::{parse_stream, stream_answer_pass, StreamEvent, StreamOracle};

use crate::partition::ContractionPartition;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct QueryLedger {
    pub rounds: usize,
    pub queries: u64,
    pub per_round: Vec<u64>,
}

impl QueryLedger {
    fn record(&mut self, queries: usize) {
        self.rounds += 1;
        self.queries += queries as u64;
        self.per_round.push(queries as u64);
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QueryId(u32);

/// `w(E(S, T))` for disjoint `S`, `T`, from `cut S`, `cut T` and `cut (S ∪ T)`.
#[derive(Clone, Copy, Debug)]
pub struct CrossHandle {
    s: QueryId,
    t: QueryId,
    st: QueryId,
}

/// Pending evaluation is flushed once this many vertex ids are buffered.
const CHUNK: usize = 1 << 20;

/// A round under construction.
pub struct RoundPlan {
    n: usize,
    data: Vec<u32>,
    offsets: Vec<usize>,
    answered: Vec<u64>,
    total: usize,
    eval: Option<Arc<CutEvaluator>>,
    shared: HashMap<(u64, usize, usize), QueryId>,
}

impl RoundPlan {
    /// A plan whose sets are kept until submission.
    pub fn deferred(n: usize) -> Self {
        RoundPlan { n, data: Vec::new(), offsets: vec![0], answered: Vec::new(), total: 0, eval: None, shared: HashMap::new() }
    }

    fn eager(n: usize, eval: Arc<CutEvaluator>) -> Self {
        RoundPlan { eval: Some(eval), ..Self::deferred(n) }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.total
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    /// Queries `cut(S)` for a set of original vertices.
    pub fn query(&mut self, set: impl IntoIterator<Item = usize>) -> QueryId {
        for v in set {
            debug_assert!(v < self.n, "vertex {v} out of range");
            self.data.push(v as u32);
        }
        self.offsets.push(self.data.len());
        let id = QueryId(self.total as u32);
        self.total += 1;
        if self.eval.is_some() && self.data.len() >= CHUNK {
            self.flush();
        }
        id
    }

    /// Queries the union of the given view points. Sets of at most two points
    /// are shared within the round.
    pub fn query_points(&mut self, view: &View, points: &[usize]) -> QueryId {
        if points.len() <= 2 && !points.is_empty() {
            let (a, b) = if points.len() == 1 {
                (points[0], usize::MAX)
            } else {
                (points[0].min(points[1]), points[0].max(points[1]))
            };
            let key = (view.id, a, b);
            if let Some(&id) = self.shared.get(&key) {
                return id;
            }
            let id = self.query(points.iter().flat_map(|&p| view.members(p).iter().map(|&v| v as usize)));
            self.shared.insert(key, id);
            return id;
        }
        self.query(points.iter().flat_map(|&p| view.members(p).iter().map(|&v| v as usize)))
    }

    /// Plans `w(E(S, T))` for disjoint point sets.
    pub fn cross(&mut self, view: &View, s: &[usize], t: &[usize]) -> CrossHandle {
        let st: Vec<usize> = s.iter().chain(t).copied().collect();
        CrossHandle { s: self.query_points(view, s), t: self.query_points(view, t), st: self.query_points(view, &st) }
    }

    fn flush(&mut self) {
        let Some(eval) = self.eval.clone() else { return };
        let mut mark = vec![false; self.n];
        for w in self.offsets.windows(2) {
            self.answered.push(eval.cut(&self.data[w[0]..w[1]], &mut mark));
        }
        self.data.clear();
        self.offsets.clear();
        self.offsets.push(0);
    }

    /// Sets not yet evaluated; for deferred plans this is every set.
    pub fn pending_sets(&self) -> impl Iterator<Item = &[u32]> {
        self.offsets.windows(2).map(move |w| &self.data[w[0]..w[1]])
    }

    pub(crate) fn finish_with(mut self, eval: &Arc<CutEvaluator>) -> Answers {
        if self.eval.is_none() {
            self.eval = Some(eval.clone());
        }
        self.flush();
        debug_assert_eq!(self.answered.len(), self.total);
        Answers { values: self.answered }
    }

    pub(crate) fn evaluated_prefix(&self) -> usize {
        self.answered.len()
    }
}

/// Answers of a submitted round.
#[derive(Clone, Debug)]
pub struct Answers {
    values: Vec<u64>,
}

impl Answers {
    pub fn from_values(values: Vec<u64>) -> Self {
        Answers { values }
    }

    pub fn get(&self, id: QueryId) -> u64 {
        self.values[id.0 as usize]
    }

    pub fn cross(&self, h: CrossHandle) -> u64 {
        let (a, b, c) = (self.get(h.s) as i128, self.get(h.t) as i128, self.get(h.st) as i128);
        let twice = a + b - c;
        debug_assert!(twice >= 0 && twice % 2 == 0, "inconsistent cut answers {a} {b} {c}");
        (twice / 2) as u64
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

pub trait CutOracle {
    /// Number of vertices of the hidden graph.
    fn n(&self) -> usize;

    fn open_round(&self) -> RoundPlan {
        RoundPlan::deferred(self.n())
    }

    /// Answers a whole round and charges it to the ledger.
    fn submit_round(&mut self, plan: RoundPlan) -> Answers;

    fn ledger(&self) -> &QueryLedger;

    /// One round consisting of the given sets.
    fn query_batch(&mut self, sets: &[Vec<usize>]) -> Vec<u64> {
        let mut plan = self.open_round();
        for s in sets {
            plan.query(s.iter().copied());
        }
        self.submit_round(plan).values
    }
}

impl<O: CutOracle + ?Sized> CutOracle for &mut O {
    fn n(&self) -> usize {
        (**self).n()
    }
    fn open_round(&self) -> RoundPlan {
        (**self).open_round()
    }
    fn submit_round(&mut self, plan: RoundPlan) -> Answers {
        (**self).submit_round(plan)
    }
    fn ledger(&self) -> &QueryLedger {
        (**self).ledger()
    }
}

static NEXT_VIEW: AtomicU64 = AtomicU64::new(1);

/// Supervertices ("points") as blocks of original vertices. The identity
/// view has one point per vertex.
#[derive(Clone, Debug)]
pub struct View {
    id: u64,
    n: usize,
    blocks: Option<Arc<Vec<Vec<u32>>>>,
    identity: Arc<Vec<u32>>,
}

impl View {
    pub fn identity(n: usize) -> Self {
        View { id: 0, n, blocks: None, identity: Arc::new((0..n as u32).collect()) }
    }

    pub fn from_blocks(n: usize, blocks: Vec<Vec<usize>>) -> Self {
        let blocks = blocks.into_iter().map(|b| b.into_iter().map(|v| v as u32).collect()).collect();
        View { id: NEXT_VIEW.fetch_add(1, Ordering::Relaxed), n, blocks: Some(Arc::new(blocks)), identity: Arc::new(Vec::new()) }
    }

    pub fn from_partition(p: &ContractionPartition) -> Self {
        Self::from_blocks(p.n(), p.blocks())
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn points(&self) -> usize {
        match &self.blocks {
            Some(b) => b.len(),
            None => self.n,
        }
    }

    pub fn members(&self, p: usize) -> &[u32] {
        match &self.blocks {
            Some(b) => &b[p],
            None => std::slice::from_ref(&self.identity[p]),
        }
    }

    pub fn expand(&self, points: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = points.iter().flat_map(|&p| self.members(p).iter().map(|&v| v as usize)).collect();
        out.sort_unstable();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::WeightedGraph;

    fn triangle_plus() -> WeightedGraph {
        WeightedGraph::new_simple(4, [(0, 1, 2), (1, 2, 3), (0, 2, 4), (2, 3, 5)]).unwrap()
    }

    #[test]
    fn rounds_and_queries_are_counted() {
        let mut o = GraphOracle::new(&triangle_plus());
        let mut r = o.open_round();
        let a = r.query([0]);
        let b = r.query([0, 1]);
        let ans = o.submit_round(r);
        assert_eq!(ans.get(a), 6);
        assert_eq!(ans.get(b), 7 + 0);
        let empty = o.open_round();
        o.submit_round(empty);
        assert_eq!(o.ledger().rounds, 2);
        assert_eq!(o.ledger().queries, 2);
        assert_eq!(o.ledger().per_round, vec![2, 0]);
    }

    #[test]
    fn cross_weight_and_sharing() {
        let g = triangle_plus();
        let mut o = GraphOracle::new(&g);
        let view = View::identity(4);
        let mut r = o.open_round();
        let h = r.cross(&view, &[0, 1], &[2]);
        let h2 = r.cross(&view, &[2], &[3]);
        let _ = r.query_points(&view, &[2]);
        let ans = o.submit_round(r);
        assert_eq!(ans.cross(h), 7);
        assert_eq!(ans.cross(h2), 5);
        // {0,1}, {2}, {0,1,2}, {3}, {2,3}; {2} shared.
        assert_eq!(o.ledger().queries, 5);
    }

    #[test]
    fn view_expands_blocks() {
        let mut p = ContractionPartition::identity(4);
        p.union(0, 3);
        let v = View::from_partition(&p);
        assert_eq!(v.points(), 3);
        assert_eq!(v.expand(&[0, 2]), vec![0, 2, 3]);
    }
}
