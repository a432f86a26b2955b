use super::{Answers, CutOracle, QueryLedger, RoundPlan};

#[derive(Clone, Debug)]
pub struct RecordedRound {
    pub sets: Vec<Vec<u32>>,
    pub answers: Vec<u64>,
}

/// Wraps an oracle and keeps every batch with its answers, so a run can be
/// replayed elsewhere.
pub struct RecordingOracle<O> {
    inner: O,
    rounds: Vec<RecordedRound>,
}

impl<O: CutOracle> RecordingOracle<O> {
    pub fn new(inner: O) -> Self {
        RecordingOracle { inner, rounds: Vec::new() }
    }

    pub fn rounds(&self) -> &[RecordedRound] {
        &self.rounds
    }

    pub fn into_inner(self) -> O {
        self.inner
    }
}

impl<O: CutOracle> CutOracle for RecordingOracle<O> {
    fn n(&self) -> usize {
        self.inner.n()
    }

    fn submit_round(&mut self, plan: RoundPlan) -> Answers {
        let sets: Vec<Vec<u32>> = plan.pending_sets().map(|s| s.to_vec()).collect();
        let mut inner_plan = self.inner.open_round();
        for s in &sets {
            inner_plan.query(s.iter().map(|&v| v as usize));
        }
        let answers = self.inner.submit_round(inner_plan);
        self.rounds.push(RecordedRound { sets, answers: answers.values().to_vec() });
        answers
    }

    fn ledger(&self) -> &QueryLedger {
        self.inner.ledger()
    }
}
