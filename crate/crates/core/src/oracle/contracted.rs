use super::{Answers, CutOracle, QueryLedger, RoundPlan, View};
use crate::partition::ContractionPartition;

/// Oracle over the supervertices of a partition: a query on a set of blocks
/// is answered by the base oracle on the union of their vertices, in the
/// same round.
pub struct ContractedOracle<'a, O: ?Sized> {
    base: &'a mut O,
    view: View,
}

impl<'a, O: CutOracle + ?Sized> ContractedOracle<'a, O> {
    pub fn new(base: &'a mut O, partition: &ContractionPartition) -> Self {
        assert_eq!(partition.n(), base.n());
        ContractedOracle { base, view: View::from_partition(partition) }
    }

    pub fn view(&self) -> &View {
        &self.view
    }
}

impl<O: CutOracle + ?Sized> CutOracle for ContractedOracle<'_, O> {
    fn n(&self) -> usize {
        self.view.points()
    }

    fn submit_round(&mut self, plan: RoundPlan) -> Answers {
        let mut base_plan = self.base.open_round();
        for set in plan.pending_sets() {
            base_plan.query(set.iter().flat_map(|&p| self.view.members(p as usize).iter().map(|&v| v as usize)));
        }
        self.base.submit_round(base_plan)
    }

    fn ledger(&self) -> &QueryLedger {
        self.base.ledger()
    }
}
