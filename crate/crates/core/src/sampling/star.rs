//! Sparse recovery of a star `E(s, X)` with bucket and bit tests.
//!
//! Members of `X` are hashed into buckets; each bucket is queried for its
//! total weight towards `s` and, for every bit of the member index, for the
//! weight of the members with that bit set. A bucket holding one edge shows
//! every bit weight equal to either 0 or the total, and the full bits spell
//! the member. Decoded edges are peeled out of the other repetitions, which
//! can expose further singletons.

use rand::Rng;

use super::{ceil_log2, SampledEdge, SamplerConfig};
use crate::oracle::{Answers, CrossHandle, RoundPlan, Staged, View};
use crate::rng::{Rng as StdRng, Seed};

enum Bit {
    Zero,
    Full,
    Query(CrossHandle),
}

struct Bucket {
    total: CrossHandle,
    bits: Vec<Bit>,
}

enum Kind {
    /// One pair query per member.
    Exact(Vec<CrossHandle>),
    Buckets { bits: usize, assign: Vec<Vec<u32>>, buckets: Vec<Vec<Option<Bucket>>> },
}

pub(crate) struct LevelPlan {
    members: Vec<usize>,
    kind: Kind,
}

impl LevelPlan {
    /// Plans recovery of `E(s, members)`. Sets for which bucketing would not
    /// save queries are read member by member.
    pub(crate) fn plan(
        round: &mut RoundPlan,
        view: &View,
        s: usize,
        members: Vec<usize>,
        buckets: usize,
        reps: usize,
        dense: bool,
        rng: &mut impl Rng,
    ) -> Self {
        if members.len() <= buckets || dense && reps * buckets * (1 + ceil_log2(members.len())) >= members.len() {
            let handles = members.iter().map(|&v| round.cross(view, &[s], &[v])).collect();
            return LevelPlan { members, kind: Kind::Exact(handles) };
        }
        let bits = ceil_log2(members.len());
        let mut assign = Vec::with_capacity(reps);
        let mut all = Vec::with_capacity(reps);
        for _ in 0..reps {
            let a: Vec<u32> = (0..members.len()).map(|_| rng.gen_range(0..buckets) as u32).collect();
            let mut content = vec![Vec::new(); buckets];
            for (i, &b) in a.iter().enumerate() {
                content[b as usize].push(i);
            }
            let planned = content
                .iter()
                .map(|idx| {
                    if idx.is_empty() {
                        return None;
                    }
                    let pts: Vec<usize> = idx.iter().map(|&i| members[i]).collect();
                    let total = round.cross(view, &[s], &pts);
                    let bits = (0..bits)
                        .map(|j| {
                            let sub: Vec<usize> = idx.iter().filter(|&&i| i >> j & 1 == 1).map(|&i| members[i]).collect();
                            if sub.is_empty() {
                                Bit::Zero
                            } else if sub.len() == idx.len() {
                                Bit::Full
                            } else {
                                Bit::Query(round.cross(view, &[s], &sub))
                            }
                        })
                        .collect();
                    Some(Bucket { total, bits })
                })
                .collect();
            assign.push(a);
            all.push(planned);
        }
        LevelPlan { members, kind: Kind::Buckets { bits, assign, buckets: all } }
    }

    /// All edges of the star with exact weights, or `None` if some weight
    /// could not be accounted for.
    pub(crate) fn decode(&self, answers: &Answers) -> Option<Vec<(usize, u64)>> {
        match &self.kind {
            Kind::Exact(h) => Some(
                self.members.iter().zip(h).map(|(&v, &h)| (v, answers.cross(h))).filter(|&(_, w)| w > 0).collect(),
            ),
            Kind::Buckets { bits, assign, buckets } => {
                let nb = *bits;
                // Residual total and bit weights per repetition and bucket.
                let mut res: Vec<Vec<Vec<i128>>> = buckets
                    .iter()
                    .map(|rep| {
                        rep.iter()
                            .map(|b| match b {
                                None => vec![0; nb + 1],
                                Some(b) => {
                                    let t = answers.cross(b.total) as i128;
                                    let mut v = vec![t];
                                    v.extend(b.bits.iter().map(|x| match x {
                                        Bit::Zero => 0,
                                        Bit::Full => t,
                                        Bit::Query(h) => answers.cross(*h) as i128,
                                    }));
                                    v
                                }
                            })
                            .collect()
                    })
                    .collect();
                let mut found = Vec::new();
                let mut taken = vec![false; self.members.len()];
                loop {
                    let mut progress = false;
                    for r in 0..res.len() {
                        for b in 0..res[r].len() {
                            let cell = &res[r][b];
                            let t = cell[0];
                            if t <= 0 {
                                continue;
                            }
                            let mut id = 0usize;
                            let mut single = true;
                            for j in 0..nb {
                                let x = cell[j + 1];
                                if x == t {
                                    id |= 1 << j;
                                } else if x != 0 {
                                    single = false;
                                    break;
                                }
                            }
                            if !single || id >= self.members.len() || assign[r][id] as usize != b || taken[id] {
                                continue;
                            }
                            taken[id] = true;
                            found.push((self.members[id], t as u64));
                            for (rr, a) in assign.iter().enumerate() {
                                let cell = &mut res[rr][a[id] as usize];
                                cell[0] -= t;
                                for j in 0..nb {
                                    if id >> j & 1 == 1 {
                                        cell[j + 1] -= t;
                                    }
                                }
                            }
                            progress = true;
                        }
                    }
                    if !progress {
                        break;
                    }
                }
                let clean = res.iter().all(|rep| rep.iter().all(|cell| cell.iter().all(|&x| x == 0)));
                clean.then_some(found)
            }
        }
    }
}

/// Recovers every edge of `E(s, T)` in one round, assuming at most
/// `sparsity` of them; more edges show up as a failure, never as wrong edges.
pub struct StarRecovery {
    view: View,
    s: usize,
    targets: Vec<usize>,
    sparsity: usize,
    reps: usize,
    rng: StdRng,
    plan: Option<(LevelPlan, CrossHandle)>,
    result: Option<Option<Vec<SampledEdge>>>,
}

impl StarRecovery {
    pub fn new(view: &View, s: usize, targets: &[usize], sparsity: usize, cfg: &SamplerConfig, seed: Seed) -> Self {
        debug_assert!(!targets.contains(&s));
        StarRecovery {
            view: view.clone(),
            s,
            targets: targets.to_vec(),
            sparsity: sparsity.max(1),
            reps: cfg.repetitions,
            rng: seed.rng(),
            plan: None,
            result: None,
        }
    }

    /// `None` on recovery failure.
    pub fn result(&self) -> Option<&[SampledEdge]> {
        self.result.as_ref().expect("star recovery not resolved").as_deref()
    }

    pub fn into_result(self) -> Option<Vec<SampledEdge>> {
        self.result.expect("star recovery not resolved")
    }
}

impl Staged for StarRecovery {
    fn plan(&mut self, round: &mut RoundPlan) {
        let total = round.cross(&self.view, &[self.s], &self.targets);
        let level = LevelPlan::plan(
            round,
            &self.view,
            self.s,
            self.targets.clone(),
            2 * self.sparsity,
            self.reps,
            true,
            &mut self.rng,
        );
        self.plan = Some((level, total));
    }

    fn resolve(&mut self, answers: &Answers) {
        let (level, total) = self.plan.take().expect("planned");
        let s = self.s;
        let out = level.decode(answers).filter(|edges| edges.iter().map(|e| e.1).sum::<u64>() == answers.cross(total));
        self.result = Some(out.map(|edges| edges.into_iter().map(|(v, w)| SampledEdge { s, v, w }).collect()));
    }

    fn done(&self) -> bool {
        self.result.is_some()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::WeightedGraph;
    use crate::oracle::{run_one, CutOracle, GraphOracle};

    #[test]
    fn single_edge_is_spelled_out() {
        let g = WeightedGraph::new_simple(40, [(0, 27, 9)]).unwrap();
        let mut o = GraphOracle::new(&g);
        let view = View::identity(40);
        let t: Vec<usize> = (1..40).collect();
        let r = run_one(&mut o, StarRecovery::new(&view, 0, &t, 2, &SamplerConfig::default(), Seed::new(1)));
        assert_eq!(r.result().unwrap(), &[SampledEdge { s: 0, v: 27, w: 9 }]);
        assert_eq!(o.ledger().rounds, 1);
    }

    #[test]
    fn too_many_edges_fail_instead_of_lying() {
        let g = WeightedGraph::new_simple(64, (1..64).map(|v| (0, v, v as u64))).unwrap();
        let view = View::identity(64);
        let t: Vec<usize> = (1..64).collect();
        for seed in 0..20 {
            let mut o = GraphOracle::new(&g);
            let r = run_one(&mut o, StarRecovery::new(&view, 0, &t, 2, &SamplerConfig::default(), Seed::new(seed)));
            if let Some(edges) = r.result() {
                assert_eq!(edges.len(), 63);
            }
        }
    }
}
