//! Dynamic-stream adapter: the graph arrives as signed weight updates and
//! every round costs one pass over the stream.

use std::collections::HashMap;
use std::path::Path;

use super::{Answers, CutOracle, QueryLedger, RoundPlan};
use crate::error::{CutQueryError, Result};
use crate::graph::WeightedGraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StreamEvent {
    pub u: usize,
    pub v: usize,
    pub dw: i64,
}

/// Parses `u v dw` lines; an optional first line holding a single integer
/// gives the vertex count.
pub fn parse_stream(text: &str) -> Result<(usize, Vec<StreamEvent>)> {
    let mut n = None;
    let mut events = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tok: Vec<&str> = line.split_whitespace().collect();
        let bad = |reason: &str| CutQueryError::MalformedGraph { line: i + 1, reason: reason.to_string() };
        match tok.len() {
            1 if n.is_none() && events.is_empty() => n = Some(tok[0].parse().map_err(|_| bad("bad vertex count"))?),
            3 => events.push(StreamEvent {
                u: tok[0].parse().map_err(|_| bad("bad endpoint"))?,
                v: tok[1].parse().map_err(|_| bad("bad endpoint"))?,
                dw: tok[2].parse().map_err(|_| bad("bad weight update"))?,
            }),
            _ => return Err(bad("expected `u v dw`")),
        }
    }
    let n = n.unwrap_or_else(|| events.iter().map(|e| e.u.max(e.v) + 1).max().unwrap_or(0));
    Ok((n, events))
}

/// Answers a batch of cut queries with a single pass over the stream, keeping
/// one counter per query.
pub fn stream_answer_pass<'a>(n: usize, events: &[StreamEvent], sets: impl IntoIterator<Item = &'a [u32]>) -> Vec<u64> {
    let words = n.div_ceil(64).max(1);
    let mut bits: Vec<u64> = Vec::new();
    let mut count = 0;
    for set in sets {
        let base = bits.len();
        bits.resize(base + words, 0);
        for &v in set {
            bits[base + (v as usize >> 6)] |= 1u64 << (v & 63);
        }
        count += 1;
    }
    let mut acc = vec![0i64; count];
    for e in events {
        let (wu, bu, wv, bv) = (e.u >> 6, 1u64 << (e.u & 63), e.v >> 6, 1u64 << (e.v & 63));
        for (q, c) in acc.iter_mut().enumerate() {
            let row = &bits[q * words..(q + 1) * words];
            if (row[wu] & bu != 0) != (row[wv] & bv != 0) {
                *c += e.dw;
            }
        }
    }
    acc.into_iter().map(|c| c.max(0) as u64).collect()
}

pub struct StreamOracle {
    n: usize,
    events: Vec<StreamEvent>,
    ledger: QueryLedger,
}

impl StreamOracle {
    /// Rejects streams whose final multigraph has a negative or self-loop
    /// weight or an out-of-range endpoint.
    pub fn new(n: usize, events: Vec<StreamEvent>) -> Result<Self> {
        let mut fin: HashMap<(usize, usize), i64> = HashMap::new();
        for e in &events {
            if e.u >= n || e.v >= n {
                return Err(CutQueryError::StreamRejected(format!("endpoint out of range in ({},{})", e.u, e.v)));
            }
            *fin.entry((e.u.min(e.v), e.u.max(e.v))).or_default() += e.dw;
        }
        for (&(u, v), &w) in &fin {
            if w < 0 {
                return Err(CutQueryError::StreamRejected(format!("final weight of ({u},{v}) is {w}")));
            }
            if u == v && w != 0 {
                return Err(CutQueryError::StreamRejected(format!("self-loop at {u}")));
            }
        }
        Ok(StreamOracle { n, events, ledger: QueryLedger::default() })
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let (n, events) = parse_stream(&std::fs::read_to_string(path)?)?;
        Self::new(n, events)
    }

    /// Stream of insertions, one per edge.
    pub fn from_graph(g: &WeightedGraph) -> Self {
        let events = g.edges().iter().map(|e| StreamEvent { u: e.u, v: e.v, dw: e.w as i64 }).collect();
        StreamOracle { n: g.n(), events, ledger: QueryLedger::default() }
    }

    /// Final graph described by the stream.
    pub fn final_graph(&self) -> WeightedGraph {
        let mut fin: HashMap<(usize, usize), i64> = HashMap::new();
        for e in &self.events {
            *fin.entry((e.u.min(e.v), e.u.max(e.v))).or_default() += e.dw;
        }
        WeightedGraph::multigraph(self.n, fin.into_iter().map(|((u, v), w)| (u, v, w as u64)))
    }

    pub fn passes(&self) -> usize {
        self.ledger.rounds
    }
}

impl CutOracle for StreamOracle {
    fn n(&self) -> usize {
        self.n
    }

    fn submit_round(&mut self, plan: RoundPlan) -> Answers {
        debug_assert_eq!(plan.evaluated_prefix(), 0);
        let values = stream_answer_pass(self.n, &self.events, plan.pending_sets());
        self.ledger.record(values.len());
        Answers { values }
    }

    fn ledger(&self) -> &QueryLedger {
        &self.ledger
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::GraphOracle;

    #[test]
    fn insert_delete_matches_final_graph() {
        let text = "4\n0 1 3\n1 2 2\n0 1 -1\n2 3 4\n1 2 -2\n";
        let mut s = StreamOracle::from_file_text(text);
        let g = s.final_graph();
        assert_eq!(g.m(), 2);
        let mut o = GraphOracle::new(&g);
        let sets = vec![vec![0], vec![1], vec![1, 2], vec![0, 3]];
        assert_eq!(s.query_batch(&sets), o.query_batch(&sets));
        assert_eq!(s.passes(), 1);
    }

    #[test]
    fn negative_final_weight_is_rejected() {
        let (n, ev) = parse_stream("0 1 1\n0 1 -2\n").unwrap();
        assert!(matches!(StreamOracle::new(n, ev), Err(CutQueryError::StreamRejected(_))));
    }

    impl StreamOracle {
        fn from_file_text(text: &str) -> Self {
            let (n, ev) = parse_stream(text).unwrap();
            StreamOracle::new(n, ev).unwrap()
        }
    }
}
