//! Graph generators addressed by short textual specs such as `gnp:64,0.15`.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;

use super::{read_graph, WeightedGraph};
use crate::error::{CutQueryError, Result};
use crate::rng::Seed;

#[derive(Clone, Debug, PartialEq)]
pub enum GenSpec {
    /// Erdős–Rényi, resampled until connected.
    Gnp { n: usize, p: f64, wmax: u64 },
    /// Two cliques joined by `k` random bridges.
    Planted { n1: usize, n2: usize, k: usize, wmax: u64 },
    Cycle { n: usize },
    Clique { n: usize },
    /// Two `K_n` lobes joined by a path of `k` edges.
    Dumbbell { n: usize, k: usize },
    File(PathBuf),
}

const MAX_ATTEMPTS: u64 = 1000;

fn bad(spec: &str, reason: &str) -> CutQueryError {
    CutQueryError::InvalidSpec { spec: spec.to_string(), reason: reason.to_string() }
}

impl FromStr for GenSpec {
    type Err = CutQueryError;

    fn from_str(spec: &str) -> Result<Self> {
        let (kind, args) = spec.split_once(':').ok_or_else(|| bad(spec, "expected `kind:args`"))?;
        if kind == "file" {
            return Ok(GenSpec::File(PathBuf::from(args)));
        }
        let parts: Vec<&str> = args.split(',').map(str::trim).collect();
        let int = |i: usize| -> Result<usize> {
            parts.get(i).ok_or_else(|| bad(spec, "missing argument"))?.parse().map_err(|_| bad(spec, "expected an integer"))
        };
        let wmax = |i: usize| -> Result<u64> {
            match parts.get(i) {
                None => Ok(1),
                Some(s) => match s.parse() {
                    Ok(w) if w >= 1 => Ok(w),
                    _ => Err(bad(spec, "weight bound must be a positive integer")),
                },
            }
        };
        let arity = |lo: usize, hi: usize| -> Result<()> {
            if parts.len() < lo || parts.len() > hi {
                Err(bad(spec, "wrong number of arguments"))
            } else {
                Ok(())
            }
        };
        let g = match kind {
            "gnp" => {
                arity(2, 3)?;
                let p: f64 = parts[1].parse().map_err(|_| bad(spec, "expected a probability"))?;
                if !(0.0..=1.0).contains(&p) {
                    return Err(bad(spec, "probability outside [0,1]"));
                }
                GenSpec::Gnp { n: int(0)?, p, wmax: wmax(2)? }
            }
            "planted" => {
                arity(3, 4)?;
                GenSpec::Planted { n1: int(0)?, n2: int(1)?, k: int(2)?, wmax: wmax(3)? }
            }
            "cycle" => {
                arity(1, 1)?;
                GenSpec::Cycle { n: int(0)? }
            }
            "clique" => {
                arity(1, 1)?;
                GenSpec::Clique { n: int(0)? }
            }
            "dumbbell" => {
                arity(2, 2)?;
                GenSpec::Dumbbell { n: int(0)?, k: int(1)? }
            }
            _ => return Err(bad(spec, "unknown generator")),
        };
        match &g {
            GenSpec::Gnp { n, .. } | GenSpec::Clique { n } if *n < 2 => Err(bad(spec, "need at least 2 vertices")),
            GenSpec::Cycle { n } if *n < 3 => Err(bad(spec, "cycle needs at least 3 vertices")),
            GenSpec::Planted { n1, n2, k, .. } if *n1 < 1 || *n2 < 1 || *k < 1 || k > &(n1 * n2) => {
                Err(bad(spec, "need nonempty lobes and 1 <= k <= n1*n2"))
            }
            GenSpec::Dumbbell { n, k } if *n < 2 || *k < 1 => Err(bad(spec, "need n >= 2 and k >= 1")),
            _ => Ok(g),
        }
    }
}

impl fmt::Display for GenSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenSpec::Gnp { n, p, wmax: 1 } => write!(f, "gnp:{n},{p}"),
            GenSpec::Gnp { n, p, wmax } => write!(f, "gnp:{n},{p},{wmax}"),
            GenSpec::Planted { n1, n2, k, wmax: 1 } => write!(f, "planted:{n1},{n2},{k}"),
            GenSpec::Planted { n1, n2, k, wmax } => write!(f, "planted:{n1},{n2},{k},{wmax}"),
            GenSpec::Cycle { n } => write!(f, "cycle:{n}"),
            GenSpec::Clique { n } => write!(f, "clique:{n}"),
            GenSpec::Dumbbell { n, k } => write!(f, "dumbbell:{n},{k}"),
            GenSpec::File(p) => write!(f, "file:{}", p.display()),
        }
    }
}

fn clique_edges(offset: usize, n: usize, wmax: u64, rng: &mut impl Rng, out: &mut Vec<(usize, usize, u64)>) {
    for a in 0..n {
        for b in a + 1..n {
            out.push((offset + a, offset + b, rng.gen_range(1..=wmax)));
        }
    }
}

/// Deterministic graph for `(spec, seed)`.
pub fn generate(spec: &GenSpec, seed: u64) -> Result<WeightedGraph> {
    let root = Seed::new(seed).named("generate");
    let mut rng = root.rng();
    match *spec {
        GenSpec::Gnp { n, p, wmax } => {
            for attempt in 0..MAX_ATTEMPTS {
                let mut rng = root.child(attempt).rng();
                let mut edges = Vec::new();
                for a in 0..n {
                    for b in a + 1..n {
                        if rng.gen_bool(p) {
                            edges.push((a, b, rng.gen_range(1..=wmax)));
                        }
                    }
                }
                let g = WeightedGraph::new_simple(n, edges)?;
                if g.is_connected() {
                    return Ok(g);
                }
            }
            Err(CutQueryError::InvalidSpec {
                spec: spec.to_string(),
                reason: format!("no connected sample in {MAX_ATTEMPTS} attempts"),
            })
        }
        GenSpec::Planted { n1, n2, k, wmax } => {
            let mut edges = Vec::new();
            clique_edges(0, n1, wmax, &mut rng, &mut edges);
            clique_edges(n1, n2, wmax, &mut rng, &mut edges);
            let mut pairs: Vec<(usize, usize)> = (0..n1).flat_map(|a| (0..n2).map(move |b| (a, n1 + b))).collect();
            pairs.shuffle(&mut rng);
            for &(a, b) in pairs.iter().take(k) {
                edges.push((a, b, rng.gen_range(1..=wmax)));
            }
            WeightedGraph::new_simple(n1 + n2, edges)
        }
        GenSpec::Cycle { n } => WeightedGraph::new_simple(n, (0..n).map(|i| (i, (i + 1) % n, 1))),
        GenSpec::Clique { n } => {
            let mut edges = Vec::new();
            clique_edges(0, n, 1, &mut rng, &mut edges);
            WeightedGraph::new_simple(n, edges)
        }
        GenSpec::Dumbbell { n, k } => {
            let mut edges = Vec::new();
            clique_edges(0, n, 1, &mut rng, &mut edges);
            clique_edges(n, n, 1, &mut rng, &mut edges);
            // Path 0 - 2n - 2n+1 - ... - n with k edges.
            let mut prev = 0;
            for i in 0..k - 1 {
                edges.push((prev, 2 * n + i, 1));
                prev = 2 * n + i;
            }
            edges.push((prev, n, 1));
            WeightedGraph::new_simple(2 * n + k - 1, edges)
        }
        GenSpec::File(ref path) => read_graph(path),
    }
}
