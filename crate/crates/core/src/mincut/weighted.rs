use super::tree::{greedy_tree_packing, SpanningTree};
use super::{default_trials, run_trials, Candidate, MinCutResult, Trial};
use crate::error::{CutQueryError, Result};
use crate::graph::exact_min_cut;
use crate::monmat::MonotoneSearch;
use crate::oracle::{Answers, CutOracle, QueryId, RoundPlan, Staged};
use crate::rng::Seed;
use crate::sparsifier::{Sparsifier, SparsifyConfig, SparsifyRun};

#[derive(Clone, Debug)]
pub struct WeightedConfig {
    pub sparsify: SparsifyConfig,
    /// Search every pair of tree paths instead of only the relevant ones.
    pub all_pairs: bool,
    /// Trees searched per trial; default `ceil(2 log2 n)`.
    pub trees: Option<usize>,
    /// Greedy packing iterations; default `ceil(3 log2^2 n)`.
    pub packing_rounds: Option<usize>,
    pub trials: Option<usize>,
}

impl WeightedConfig {
    pub fn new(r: usize, w_max: u64) -> Self {
        WeightedConfig {
            sparsify: SparsifyConfig::new(1.0 / 20.0, r, w_max),
            all_pairs: false,
            trees: None,
            packing_rounds: None,
            trials: None,
        }
    }

    pub fn r(&self) -> usize {
        self.sparsify.r
    }

    /// Slack `(1 + eps) / (1 - eps)` under which a path pair is searched.
    pub fn relevance(&self) -> f64 {
        let e = self.sparsify.eps;
        (1.0 + e) / (1.0 - e)
    }

    fn tree_count(&self, n: usize) -> usize {
        self.trees.unwrap_or_else(|| (2.0 * (n.max(2) as f64).log2()).ceil() as usize)
    }

    fn packing(&self, n: usize) -> usize {
        self.packing_rounds.unwrap_or_else(|| {
            let l = (n.max(2) as f64).log2();
            (3.0 * l * l).ceil() as usize
        })
    }
}

/// The cut `X_a △ X_b` for tree edges `a`, `b` (nested or disjoint subtrees).
pub fn respecting_side(t: &SpanningTree, a: usize, b: usize) -> Vec<usize> {
    (0..t.n()).filter(|&v| t.is_ancestor(a, v) != t.is_ancestor(b, v)).collect()
}

/// One monotone search: entry `(i, j)` is the cut `X_rows[i] △ X_cols[j]`.
struct Instance {
    tree: usize,
    rows: Vec<usize>,
    cols: Vec<usize>,
    search: MonotoneSearch,
    ids: Vec<QueryId>,
}

/// Halving instances of a single path: rows are the upper half deepest
/// first, columns the lower half top-down.
fn path_instances(path: &[usize], out: &mut Vec<(Vec<usize>, Vec<usize>)>) {
    if path.len() < 2 {
        return;
    }
    let mid = path.len() / 2;
    out.push((path[..mid].iter().rev().copied().collect(), path[mid..].to_vec()));
    path_instances(&path[..mid], out);
    path_instances(&path[mid..], out);
}

/// Instances for edges of two different paths. The part of `upper` above
/// `lower`'s head forms a nested instance; the rest is independent of `lower`.
fn pair_instances(t: &SpanningTree, a: &[usize], b: &[usize], out: &mut Vec<(Vec<usize>, Vec<usize>)>) {
    let (upper, lower) = if t.is_ancestor(a[0], b[0]) { (a, b) } else { (b, a) };
    let above = upper.iter().take_while(|&&c| t.is_ancestor(c, lower[0])).count();
    if above > 0 {
        out.push((upper[..above].iter().rev().copied().collect(), lower.to_vec()));
    }
    if above < upper.len() {
        out.push((upper[above..].to_vec(), lower.to_vec()));
    }
}

/// Monotone instances `(rows, cols)` covering every pair of distinct tree
/// edges on one heavy path, and on the path pairs accepted by `keep`.
pub fn tree_instances(t: &SpanningTree, mut keep: impl FnMut(&[usize], &[usize]) -> bool) -> Vec<(Vec<usize>, Vec<usize>)> {
    let paths = t.heavy_paths();
    let mut out = Vec::new();
    for p in &paths {
        path_instances(p, &mut out);
    }
    for i in 0..paths.len() {
        for j in i + 1..paths.len() {
            if keep(&paths[i], &paths[j]) {
                pair_instances(t, &paths[i], &paths[j], &mut out);
            }
        }
    }
    out
}

/// Rounds 1..3r+3: a sparsifier H with quality 1/20. Locally: a greedy tree
/// packing of H, heavy-light paths of sampled trees, and the path pairs whose
/// best 2-respecting value in H is within the relevance slack of H's minimum
/// cut. Then at most `r` rounds: every 1-respecting cut in the first, next to
/// the monotone searches over all instances.
pub struct WeightedTrial {
    cfg: WeightedConfig,
    seed: Seed,
    stage: usize,
    sparsify: Option<SparsifyRun>,
    trees: Vec<SpanningTree>,
    singles: Vec<(Vec<usize>, Option<QueryId>)>,
    instances: Vec<Instance>,
    best: Option<Candidate>,
    outcome: Option<Result<Candidate>>,
}

impl WeightedTrial {
    pub fn new(n: usize, cfg: &WeightedConfig, seed: Seed) -> Self {
        WeightedTrial {
            cfg: cfg.clone(),
            seed,
            stage: 0,
            sparsify: Some(SparsifyRun::new(n, &cfg.sparsify, seed.named("sparsify"))),
            trees: Vec::new(),
            singles: Vec::new(),
            instances: Vec::new(),
            best: None,
            outcome: None,
        }
    }

    fn offer(&mut self, c: Candidate) {
        self.best = Some(match self.best.take() {
            Some(b) => b.better(Some(c), false),
            None => c,
        });
    }

    fn prepare(&mut self, h: Sparsifier) {
        let n = h.graph.n();
        let r = self.cfg.r();
        if let Some(c) = Candidate::min_degree(&h.degrees) {
            self.offer(c);
        }
        let comps = h.graph.components();
        for c in comps.iter().skip(1) {
            self.singles.push((c.clone(), None));
        }
        let lambda = exact_min_cut(&h.graph).value;
        let slack = self.cfg.relevance() * lambda * (1.0 + 1e-9) + 1e-9;
        let mut rng = self.seed.named("trees").rng();
        self.trees = greedy_tree_packing(&h.graph, self.cfg.packing(n), self.cfg.tree_count(n), &mut rng);
        for (ti, t) in self.trees.iter().enumerate() {
            for c in t.edges() {
                self.singles.push((t.subtree(c), None));
            }
            let pair = (!self.cfg.all_pairs).then(|| t.respecting_values(&h.graph).1);
            let keep = |a: &[usize], b: &[usize]| {
                pair.as_ref().map_or(true, |v| a.iter().any(|&e| b.iter().any(|&f| v[e][f] <= slack)))
            };
            for (rows, cols) in tree_instances(t, keep) {
                let search = MonotoneSearch::new(rows.len(), cols.len(), r);
                self.instances.push(Instance { tree: ti, rows, cols, search, ids: Vec::new() });
            }
        }
    }

    fn local_done(&self) -> bool {
        self.singles.is_empty() && self.instances.iter().all(|i| i.search.done())
    }
}

impl Staged for WeightedTrial {
    fn plan(&mut self, round: &mut RoundPlan) {
        if let Some(s) = self.sparsify.as_mut() {
            s.plan(round);
            return;
        }
        for (side, id) in &mut self.singles {
            *id = Some(round.query(side.iter().copied()));
        }
        for inst in &mut self.instances {
            let t = &self.trees[inst.tree];
            inst.ids = inst.search.pending().iter().map(|&(i, j)| round.query(respecting_side(t, inst.rows[i], inst.cols[j]))).collect();
        }
    }

    fn resolve(&mut self, answers: &Answers) {
        self.stage += 1;
        if let Some(s) = self.sparsify.as_mut() {
            s.resolve(answers);
            if s.done() {
                match self.sparsify.take().unwrap().into_result() {
                    Ok(h) => self.prepare(h),
                    Err(e) => self.outcome = Some(Err(e)),
                }
            }
            return;
        }
        for (side, id) in std::mem::take(&mut self.singles) {
            self.offer(Candidate { value: answers.get(id.unwrap()), side });
        }
        let mut found = Vec::new();
        for inst in &mut self.instances {
            if inst.search.done() {
                continue;
            }
            let values: Vec<u64> = inst.ids.iter().map(|&id| answers.get(id)).collect();
            inst.search.feed(&values);
            if inst.search.done() {
                let res = inst.search.result();
                let t = &self.trees[inst.tree];
                found.push(Candidate { value: res.value, side: respecting_side(t, inst.rows[res.row], inst.cols[res.col]) });
            }
        }
        for c in found {
            self.offer(c);
        }
        if self.local_done() {
            self.outcome = Some(self.best.take().ok_or_else(|| CutQueryError::SamplingFailed("no candidate cut".into())));
        }
    }

    fn done(&self) -> bool {
        self.outcome.is_some()
    }
}

impl Trial for WeightedTrial {
    fn into_candidate(self) -> Result<Candidate> {
        self.outcome.unwrap_or_else(|| Err(CutQueryError::SamplingFailed("trial did not finish".into())))
    }
}

/// Global minimum cut of a weighted graph in at most `4r + 3` rounds.
pub fn min_cut_weighted<O: CutOracle + ?Sized>(oracle: &mut O, cfg: &WeightedConfig, seed: Seed) -> Result<MinCutResult> {
    let n = oracle.n();
    if n < 2 || cfg.r() == 0 {
        return Err(CutQueryError::InvalidArgument("needs n >= 2 and r >= 1".into()));
    }
    let trials = cfg.trials.unwrap_or_else(|| default_trials(n));
    let items = (0..trials).map(|i| WeightedTrial::new(n, cfg, seed.child(i as u64))).collect();
    run_trials(oracle, items, false)
}
