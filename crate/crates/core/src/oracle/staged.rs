use super::{Answers, CutOracle, RoundPlan};

/// A multi-round primitive. Each stage plans its whole batch before any
/// answer of that round is visible, so co-scheduled primitives share rounds.
pub trait Staged {
    fn plan(&mut self, round: &mut RoundPlan);
    fn resolve(&mut self, answers: &Answers);
    fn done(&self) -> bool;
}

/// Advances all primitives in lockstep until every one is done.
pub fn run_staged<O: CutOracle + ?Sized, S: Staged>(oracle: &mut O, items: &mut [S]) {
    while items.iter().any(|s| !s.done()) {
        let mut round = oracle.open_round();
        for s in items.iter_mut().filter(|s| !s.done()) {
            s.plan(&mut round);
        }
        let answers = oracle.submit_round(round);
        for s in items.iter_mut().filter(|s| !s.done()) {
            s.resolve(&answers);
        }
    }
}

/// Runs a single primitive to completion.
pub fn run_one<O: CutOracle + ?Sized, S: Staged>(oracle: &mut O, item: S) -> S {
    let mut items = [item];
    run_staged(oracle, &mut items);
    let [item] = items;
    item
}
