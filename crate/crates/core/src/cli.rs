//! Experiment harness behind the `cutquery` binary: graph generation, runs
//! against instrumented oracles with optional verification, parameter sweeps
//! and a quick self-test.

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Serialize, Serializer};

use crate::error::{CutQueryError, Result};
use crate::graph::{
    exact_max_cut, exact_min_cut, generate, max_cut_distortion, min_st_cut as exact_st_cut, read_graph, write_graph,
    GenSpec, WeightedGraph,
};
use crate::mincut::{
    approx_max_cut, min_cut_2round, min_cut_unweighted, min_cut_unweighted_sparsifier, min_cut_weighted, min_st_cut,
    MaxCutConfig, MinCutResult, SparseCutConfig, StCutConfig, TwoRoundConfig, UnweightedConfig, WeightedConfig,
};
use crate::monmat::{brute_force_min, random_monotone, solve_monotone};
use crate::oracle::{CutOracle, GraphOracle, QueryLedger, StreamOracle};
use crate::packing::{pack_forests, PackingConfig};
use crate::rng::Seed;
use crate::sparsifier::{sparsify, SparsifyConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
pub enum Algo {
    #[value(name = "mincut2")]
    #[serde(rename = "mincut2")]
    MinCut2,
    #[value(name = "mincutU")]
    #[serde(rename = "mincutU")]
    MinCutU,
    #[value(name = "mincutUS")]
    #[serde(rename = "mincutUS")]
    MinCutUS,
    #[value(name = "mincutW")]
    #[serde(rename = "mincutW")]
    MinCutW,
    #[value(name = "stcut")]
    #[serde(rename = "stcut")]
    StCut,
    #[value(name = "maxcut")]
    #[serde(rename = "maxcut")]
    MaxCut,
    #[value(name = "monmat")]
    #[serde(rename = "monmat")]
    MonMat,
    #[value(name = "sparsify")]
    #[serde(rename = "sparsify")]
    Sparsify,
    #[value(name = "pack")]
    #[serde(rename = "pack")]
    Pack,
}

impl Algo {
    pub fn name(self) -> &'static str {
        match self {
            Algo::MinCut2 => "mincut2",
            Algo::MinCutU => "mincutU",
            Algo::MinCutUS => "mincutUS",
            Algo::MinCutW => "mincutW",
            Algo::StCut => "stcut",
            Algo::MaxCut => "maxcut",
            Algo::MonMat => "monmat",
            Algo::Sparsify => "sparsify",
            Algo::Pack => "pack",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Parser, Debug)]
#[command(name = "cutquery", version, about = "Low-round cut-query algorithms against an instrumented oracle")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate a graph and write it in the edge-list format.
    Gen(Args),
    /// Run one algorithm `--trials` times.
    Run(Args),
    /// Run the cartesian product of `--algo`, `--n` and `--r` and aggregate.
    Sweep(Args),
    /// Quick built-in checks; exits nonzero on failure.
    Selftest(Args),
}

#[derive(clap::Args, Clone, Debug)]
pub struct Args {
    #[arg(long, value_enum, value_delimiter = ',')]
    pub algo: Vec<Algo>,
    /// Vertex count (matrix size for monmat); a comma list in sweeps.
    #[arg(long, value_delimiter = ',')]
    pub n: Vec<usize>,
    #[arg(long, value_delimiter = ',')]
    pub r: Vec<usize>,
    #[arg(long, default_value_t = 0.25)]
    pub eps: f64,
    /// Forest count for pack (default: the min degree).
    #[arg(long)]
    pub k: Option<usize>,
    /// Master seed; CUTQUERY_SEED overrides it.
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub trials: usize,
    #[arg(long)]
    pub verify: bool,
    /// Generator spec; `{n}` is replaced by the vertex count.
    #[arg(long)]
    pub gen: Option<String>,
    #[arg(long)]
    pub graph: Option<PathBuf>,
    #[arg(long)]
    pub stream: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    #[arg(long)]
    pub all_pairs: bool,
    /// Report `ms` as 0 so that output is byte-reproducible.
    #[arg(long)]
    pub no_timing: bool,
}

/// One algorithm on one input.
#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentSpec {
    pub algo: Algo,
    pub input: Input,
    pub n: usize,
    pub r: usize,
    pub eps: f64,
    pub k: Option<usize>,
    pub seed: u64,
    pub trials: usize,
    pub verify: bool,
    pub all_pairs: bool,
    pub timing: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Input {
    Gen(GenSpec),
    Graph(PathBuf),
    Stream(PathBuf),
}

impl ExperimentSpec {
    pub fn new(algo: Algo, gen: &str, r: usize) -> Result<Self> {
        Ok(ExperimentSpec {
            algo,
            input: Input::Gen(gen.parse()?),
            n: 0,
            r,
            eps: 0.25,
            k: None,
            seed: 1,
            trials: 1,
            verify: true,
            all_pairs: false,
            timing: false,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunRecord {
    pub algorithm: &'static str,
    pub n: usize,
    pub m: usize,
    #[serde(rename = "W")]
    pub w: u64,
    pub r: usize,
    pub seed: u64,
    pub rounds: usize,
    pub queries: u64,
    #[serde(serialize_with = "number")]
    pub value: Option<f64>,
    #[serde(serialize_with = "number", skip_serializing_if = "Option::is_none")]
    pub exact: Option<f64>,
    pub success: bool,
    pub ms: f64,
}

pub const FIELDS: [&str; 12] = ["algorithm", "n", "m", "W", "r", "seed", "rounds", "queries", "value", "exact", "success", "ms"];

fn format_number(x: f64) -> String {
    if x.fract() == 0.0 && x.abs() < 9e15 {
        format!("{}", x as i64)
    } else {
        format!("{x}")
    }
}

fn number<S: Serializer>(x: &Option<f64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        None => s.serialize_none(),
        Some(v) if v.fract() == 0.0 && v.abs() < 9e15 => s.serialize_i64(*v as i64),
        Some(v) => s.serialize_f64(*v),
    }
}

impl RunRecord {
    pub fn csv_row(&self) -> Vec<String> {
        let opt = |x: Option<f64>| x.map(format_number).unwrap_or_default();
        vec![
            self.algorithm.to_string(),
            self.n.to_string(),
            self.m.to_string(),
            self.w.to_string(),
            self.r.to_string(),
            self.seed.to_string(),
            self.rounds.to_string(),
            self.queries.to_string(),
            opt(self.value),
            opt(self.exact),
            self.success.to_string(),
            format!("{:.3}", self.ms),
        ]
    }
}

/// Aggregate of a sweep cell: medians over its runs and the success rate.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub algorithm: &'static str,
    pub n: usize,
    pub r: usize,
    pub runs: usize,
    pub rounds: f64,
    pub queries: f64,
    pub success: f64,
    pub ms: f64,
}

pub const SWEEP_FIELDS: [&str; 8] = ["algorithm", "n", "r", "runs", "rounds", "queries", "success", "ms"];

fn median(mut xs: Vec<f64>) -> f64 {
    if xs.is_empty() {
        return 0.0;
    }
    xs.sort_by(f64::total_cmp);
    let h = xs.len() / 2;
    if xs.len() % 2 == 1 {
        xs[h]
    } else {
        (xs[h - 1] + xs[h]) / 2.0
    }
}

struct Outcome {
    value: Option<f64>,
    exact: Option<f64>,
    success: bool,
    ledger: QueryLedger,
}

fn from_mincut(res: Result<MinCutResult>, exact: impl FnOnce() -> u64, verify: bool) -> Result<Outcome> {
    match res {
        Ok(r) => {
            let exact = verify.then(exact);
            Ok(Outcome {
                value: Some(r.value as f64),
                exact: exact.map(|e| e as f64),
                success: exact.map_or(true, |e| e == r.value),
                ledger: r.ledger,
            })
        }
        Err(CutQueryError::AllTrialsFailed { ledger, .. }) => {
            Ok(Outcome { value: None, exact: verify.then(|| exact() as f64), success: false, ledger })
        }
        Err(e) => Err(e),
    }
}

fn run_graph_algo(spec: &ExperimentSpec, g: &WeightedGraph, oracle: &mut dyn CutOracle, seed: Seed) -> Result<Outcome> {
    let n = g.n();
    let w = g.max_weight().max(1);
    let verify = spec.verify;
    let lambda = || exact_min_cut(g).value;
    match spec.algo {
        Algo::MinCut2 => from_mincut(min_cut_2round(oracle, &TwoRoundConfig::default(), seed), lambda, verify),
        Algo::MinCutU => from_mincut(min_cut_unweighted(oracle, &UnweightedConfig::new(spec.r), seed), lambda, verify),
        Algo::MinCutUS => {
            from_mincut(min_cut_unweighted_sparsifier(oracle, &SparseCutConfig::new(spec.r), seed), lambda, verify)
        }
        Algo::MinCutW => {
            let mut cfg = WeightedConfig::new(spec.r, w);
            cfg.all_pairs = spec.all_pairs;
            from_mincut(min_cut_weighted(oracle, &cfg, seed), lambda, verify)
        }
        Algo::StCut => {
            let (s, t) = (0, n - 1);
            from_mincut(min_st_cut(oracle, &StCutConfig::new(s, t, spec.r), seed), || exact_st_cut(g, s, t).value, verify)
        }
        Algo::MaxCut => {
            let res = approx_max_cut(oracle, &MaxCutConfig::new(spec.eps, spec.r, w), seed);
            let best = || exact_max_cut(g).cut.value;
            let mut out = from_mincut(res, best, verify)?;
            if let (Some(v), Some(e)) = (out.value, out.exact) {
                out.success = v >= (1.0 - spec.eps) * e;
            }
            Ok(out)
        }
        Algo::Sparsify => {
            let cfg = SparsifyConfig::new(spec.eps, spec.r, w);
            match sparsify(oracle, &cfg, seed) {
                Ok(h) => {
                    let lam_h = exact_min_cut(&h.graph).value;
                    let exact = verify.then(|| lambda() as f64);
                    let success = !verify
                        || if n <= 20 {
                            max_cut_distortion(g, &h.graph) <= spec.eps
                        } else {
                            (lam_h / exact.unwrap() - 1.0).abs() <= spec.eps
                        };
                    Ok(Outcome { value: Some(lam_h), exact, success, ledger: oracle.ledger().clone() })
                }
                Err(CutQueryError::SamplingFailed(_)) => Ok(Outcome {
                    value: None,
                    exact: verify.then(|| lambda() as f64),
                    success: false,
                    ledger: oracle.ledger().clone(),
                }),
                Err(e) => Err(e),
            }
        }
        Algo::Pack => {
            let k = spec.k.unwrap_or_else(|| g.min_degree() as usize).max(1);
            match pack_forests(oracle, &PackingConfig::new(k, spec.r), seed) {
                Ok(p) => {
                    let union = exact_min_cut(&p.union_graph()).value;
                    let exact = verify.then(lambda);
                    let success = !verify
                        || (p.is_acyclic()
                            && p.is_edge_disjoint()
                            && p.is_maximal(g)
                            && (k < exact.unwrap() as usize || union == exact.unwrap()));
                    Ok(Outcome {
                        value: Some(union as f64),
                        exact: exact.map(|e| e as f64),
                        success,
                        ledger: oracle.ledger().clone(),
                    })
                }
                Err(CutQueryError::SamplingFailed(_)) => Ok(Outcome {
                    value: None,
                    exact: verify.then(|| lambda() as f64),
                    success: false,
                    ledger: oracle.ledger().clone(),
                }),
                Err(e) => Err(e),
            }
        }
        Algo::MonMat => unreachable!("monmat has no graph input"),
    }
}

/// Loads or generates the input graph for one seed.
pub fn input_graph(input: &Input, seed: u64) -> Result<WeightedGraph> {
    match input {
        Input::Gen(g) => generate(g, seed),
        Input::Graph(p) => read_graph(p),
        Input::Stream(p) => Ok(StreamOracle::from_file(p)?.final_graph()),
    }
}

/// A single run with master seed `seed`.
pub fn run_once(spec: &ExperimentSpec, seed: u64) -> Result<RunRecord> {
    let start = Instant::now();
    let master = Seed::new(seed);
    if spec.algo == Algo::MonMat {
        let a = spec.n.max(1);
        let r = spec.r.max(1);
        let m = random_monotone(a, a, &mut master.named("matrix").rng());
        let (res, led) = solve_monotone(a, a, r, |i, j| m[i][j]);
        let exact = spec.verify.then(|| brute_force_min(&m).value);
        return Ok(RunRecord {
            algorithm: spec.algo.name(),
            n: a,
            m: 0,
            w: 0,
            r,
            seed,
            rounds: led.rounds,
            queries: led.reads as u64,
            value: Some(res.value as f64),
            exact: exact.map(|e| e as f64),
            success: exact.map_or(true, |e| e == res.value),
            ms: if spec.timing { start.elapsed().as_secs_f64() * 1e3 } else { 0.0 },
        });
    }
    let g = input_graph(&spec.input, seed)?;
    if g.n() < 2 {
        return Err(CutQueryError::InvalidArgument("graph needs at least 2 vertices".into()));
    }
    let out = match &spec.input {
        Input::Stream(p) => {
            let mut o = StreamOracle::from_file(p)?;
            let out = run_graph_algo(spec, &g, &mut o, master)?;
            debug_assert_eq!(o.passes(), out.ledger.rounds);
            out
        }
        _ => run_graph_algo(spec, &g, &mut GraphOracle::new(&g), master)?,
    };
    Ok(RunRecord {
        algorithm: spec.algo.name(),
        n: g.n(),
        m: g.m(),
        w: g.max_weight(),
        r: spec.r,
        seed,
        rounds: out.ledger.rounds,
        queries: out.ledger.queries,
        value: out.value,
        exact: out.exact,
        success: out.success,
        ms: if spec.timing { start.elapsed().as_secs_f64() * 1e3 } else { 0.0 },
    })
}

/// `spec.trials` runs with seeds `seed, seed + 1, ...`, in seed order.
pub fn run(spec: &ExperimentSpec) -> Result<Vec<RunRecord>> {
    (0..spec.trials as u64).map(|i| run_once(spec, spec.seed.wrapping_add(i))).collect()
}

/// Grid over algorithms, sizes and round parameters. `gen` may contain `{n}`.
pub fn sweep(base: &ExperimentSpec, algos: &[Algo], ns: &[usize], rs: &[usize], gen: &str) -> Result<Vec<SweepRow>> {
    let mut rows = Vec::new();
    for &algo in algos {
        for &n in ns {
            for &r in rs {
                let mut spec = base.clone();
                spec.algo = algo;
                spec.n = n;
                spec.r = r;
                if algo != Algo::MonMat {
                    spec.input = Input::Gen(gen.replace("{n}", &n.to_string()).parse()?);
                }
                let recs = run(&spec)?;
                rows.push(SweepRow {
                    algorithm: algo.name(),
                    n,
                    r,
                    runs: recs.len(),
                    rounds: median(recs.iter().map(|x| x.rounds as f64).collect()),
                    queries: median(recs.iter().map(|x| x.queries as f64).collect()),
                    success: recs.iter().filter(|x| x.success).count() as f64 / recs.len().max(1) as f64,
                    ms: median(recs.iter().map(|x| x.ms).collect()),
                });
            }
        }
    }
    Ok(rows)
}

pub fn write_records(records: &[RunRecord], format: Format, mut out: impl Write) -> Result<()> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut out, records).map_err(std::io::Error::from)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(FIELDS).map_err(std::io::Error::from)?;
            for r in records {
                w.write_record(r.csv_row()).map_err(std::io::Error::from)?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

pub fn write_sweep(rows: &[SweepRow], format: Format, mut out: impl Write) -> Result<()> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut out, rows).map_err(std::io::Error::from)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(SWEEP_FIELDS).map_err(std::io::Error::from)?;
            for r in rows {
                w.write_record([
                    r.algorithm.to_string(),
                    r.n.to_string(),
                    r.r.to_string(),
                    r.runs.to_string(),
                    format_number(r.rounds),
                    format_number(r.queries),
                    format_number(r.success),
                    format!("{:.3}", r.ms),
                ])
                .map_err(std::io::Error::from)?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

/// One named check of the self-test.
pub struct Check {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

fn check_mincut(name: &'static str, spec: ExperimentSpec, want: u64, rounds: usize) -> Check {
    match run_once(&spec, spec.seed) {
        Ok(r) => Check {
            name,
            pass: r.value == Some(want as f64) && r.rounds == rounds,
            detail: format!("value {:?} rounds {}", r.value, r.rounds),
        },
        Err(e) => Check { name, pass: false, detail: e.to_string() },
    }
}

pub fn selftest(seed: u64) -> Vec<Check> {
    let spec = |algo, gen: &str, r| {
        let mut s = ExperimentSpec::new(algo, gen, r).expect("valid spec");
        s.seed = seed;
        s
    };
    let mut checks = Vec::new();
    let mut rng = Seed::new(seed).named("selftest").rng();
    let exact = (0..100)
        .filter(|_| {
            let m = random_monotone(32, 32, &mut rng);
            let (res, led) = solve_monotone(32, 32, 2, |i, j| m[i][j]);
            res.value == brute_force_min(&m).value && led.rounds <= 2
        })
        .count();
    checks.push(Check { name: "monmat a=32 r=2", pass: exact == 100, detail: format!("{exact}/100 exact") });
    let planted = generate(&"planted:8,8,3".parse().expect("valid spec"), 1).map(|g| exact_min_cut(&g).value);
    checks.push(Check { name: "gen planted:8,8,3", pass: planted.as_ref().ok() == Some(&3), detail: format!("{planted:?}") });
    checks.push(check_mincut("mincut2 cycle:12", spec(Algo::MinCut2, "cycle:12", 1), 2, 2));
    checks.push(check_mincut("mincutU cycle:16 r=2", spec(Algo::MinCutU, "cycle:16", 2), 2, 5));
    checks.push(check_mincut("mincutU clique:8 r=1", spec(Algo::MinCutU, "clique:8", 1), 7, 3));
    checks.push(check_mincut("mincutUS planted:6,6,2 r=1", spec(Algo::MinCutUS, "planted:6,6,2", 1), 2, 7));
    let w = run_once(&spec(Algo::MinCutW, "planted:6,6,1,8", 2), seed);
    checks.push(Check {
        name: "mincutW planted:6,6,1,8 r=2",
        pass: matches!(&w, Ok(r) if r.value == r.exact && r.rounds <= 4 * 2 + 5),
        detail: w.map(|r| format!("value {:?} exact {:?} rounds {}", r.value, r.exact, r.rounds)).unwrap_or_else(|e| e.to_string()),
    });
    checks.push(check_mincut("stcut planted:6,6,3", spec(Algo::StCut, "planted:6,6,3", 1), 3, 7));
    checks.push(check_mincut("maxcut cycle:4", spec(Algo::MaxCut, "cycle:4", 1), 4, 7));
    let sp = run_once(&spec(Algo::Sparsify, "gnp:10,0.6,4", 1), seed);
    checks.push(Check {
        name: "sparsify gnp:10,0.6,4 r=1",
        pass: matches!(&sp, Ok(r) if r.rounds == 6),
        detail: sp.map(|r| format!("rounds {} within eps {}", r.rounds, r.success)).unwrap_or_else(|e| e.to_string()),
    });
    let pk = run_once(&spec(Algo::Pack, "gnp:16,0.5", 2), seed);
    checks.push(Check {
        name: "pack gnp:16,0.5 r=2",
        pass: matches!(&pk, Ok(r) if r.rounds == 4 && r.success),
        detail: pk.map(|r| format!("rounds {} union min cut {:?}", r.rounds, r.value)).unwrap_or_else(|e| e.to_string()),
    });
    checks
}

fn spec_from_args(a: &Args, algo: Algo, n: usize, r: usize) -> Result<ExperimentSpec> {
    let input = match (&a.graph, &a.stream) {
        (Some(p), None) => Input::Graph(p.clone()),
        (None, Some(p)) => Input::Stream(p.clone()),
        (None, None) => Input::Gen(a.gen.as_deref().unwrap_or("gnp:{n},0.3").replace("{n}", &n.to_string()).parse()?),
        (Some(_), Some(_)) => return Err(CutQueryError::InvalidArgument("--graph and --stream are exclusive".into())),
    };
    Ok(ExperimentSpec {
        algo,
        input,
        n,
        r,
        eps: a.eps,
        k: a.k,
        seed: a.seed,
        trials: a.trials,
        verify: a.verify,
        all_pairs: a.all_pairs,
        timing: !a.no_timing,
    })
}

fn single<T: Copy>(xs: &[T], default: T, flag: &str) -> Result<T> {
    match xs {
        [] => Ok(default),
        [x] => Ok(*x),
        _ => Err(CutQueryError::InvalidArgument(format!("--{flag} takes one value here; use sweep for grids"))),
    }
}

fn output(path: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(std::io::BufWriter::new(std::fs::File::create(p)?)),
        None => Box::new(std::io::stdout().lock()),
    })
}

/// Applies the CUTQUERY_SEED override.
pub fn effective_seed(flag: u64, env: Option<&str>) -> Result<u64> {
    match env {
        Some(s) => s.trim().parse().map_err(|_| CutQueryError::InvalidArgument(format!("CUTQUERY_SEED={s} is not an integer"))),
        None => Ok(flag),
    }
}

/// Entry point of the binary; returns the process exit code.
pub fn main_with(cli: Cli) -> Result<i32> {
    let env = std::env::var("CUTQUERY_SEED").ok();
    match cli.command {
        Command::Gen(mut a) => {
            a.seed = effective_seed(a.seed, env.as_deref())?;
            let n = single(&a.n, 32, "n")?;
            let spec = a.gen.as_deref().unwrap_or("gnp:{n},0.3").replace("{n}", &n.to_string());
            let g = generate(&spec.parse()?, a.seed)?;
            write_graph(&g, output(&a.out)?)?;
            Ok(0)
        }
        Command::Run(mut a) => {
            a.seed = effective_seed(a.seed, env.as_deref())?;
            let algo = single(&a.algo, Algo::MinCut2, "algo")?;
            let spec = spec_from_args(&a, algo, single(&a.n, 32, "n")?, single(&a.r, 2, "r")?)?;
            write_records(&run(&spec)?, a.format, output(&a.out)?)?;
            Ok(0)
        }
        Command::Sweep(mut a) => {
            a.seed = effective_seed(a.seed, env.as_deref())?;
            let base = spec_from_args(&a, Algo::MinCut2, a.n.first().copied().unwrap_or(32), 1)?;
            let gen = a.gen.clone().unwrap_or_else(|| "gnp:{n},0.3".into());
            let rs = if a.r.is_empty() { vec![2] } else { a.r.clone() };
            let rows = sweep(&base, &a.algo, &a.n, &rs, &gen)?;
            write_sweep(&rows, a.format, output(&a.out)?)?;
            Ok(0)
        }
        Command::Selftest(a) => {
            let checks = selftest(effective_seed(a.seed, env.as_deref())?);
            let mut out = output(&a.out)?;
            for c in &checks {
                writeln!(out, "{} {} ({})", if c.pass { "PASS" } else { "FAIL" }, c.name, c.detail)?;
            }
            Ok(if checks.iter().all(|c| c.pass) { 0 } else { 1 })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_flags() {
        let cli = Cli::try_parse_from([
            "cutquery", "sweep", "--algo", "mincutU,mincut2", "--n", "8,16", "--r", "1,2", "--format", "csv", "--all-pairs",
        ])
        .unwrap();
        let Command::Sweep(a) = cli.command else { panic!("wrong subcommand") };
        assert_eq!(a.algo, vec![Algo::MinCutU, Algo::MinCut2]);
        assert_eq!((a.n, a.r, a.format, a.all_pairs), (vec![8, 16], vec![1, 2], Format::Csv, true));
        assert!(Cli::try_parse_from(["cutquery", "run", "--algo", "nope"]).is_err());
    }

    #[test]
    fn seed_override() {
        assert_eq!(effective_seed(5, None).unwrap(), 5);
        assert_eq!(effective_seed(5, Some("9")).unwrap(), 9);
        assert!(effective_seed(5, Some("x")).is_err());
    }

    #[test]
    fn json_keys_and_csv_columns() {
        let mut spec = ExperimentSpec::new(Algo::MinCutU, "planted:5,5,2", 1).unwrap();
        spec.trials = 2;
        let recs = run(&spec).unwrap();
        assert_eq!(recs.len(), 2);
        let v: serde_json::Value = serde_json::to_value(&recs[0]).unwrap();
        let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
        let mut want = FIELDS.to_vec();
        want.sort_unstable();
        assert_eq!(keys, want);
        assert_eq!(v["value"], serde_json::json!(2));
        let mut buf = Vec::new();
        write_records(&recs, Format::Csv, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().next().unwrap(), FIELDS.join(","));
        assert_eq!(text.lines().count(), 3);
    }

    #[test]
    fn verify_off_omits_exact() {
        let mut spec = ExperimentSpec::new(Algo::MonMat, "cycle:3", 2).unwrap();
        spec.n = 16;
        spec.verify = false;
        let v = serde_json::to_value(run_once(&spec, 3).unwrap()).unwrap();
        assert!(v.get("exact").is_none());
        spec.verify = true;
        let rec = run_once(&spec, 3).unwrap();
        assert!(rec.success && rec.exact == rec.value);
    }

    #[test]
    fn reproducible_output() {
        let mut spec = ExperimentSpec::new(Algo::MinCutW, "planted:5,5,1,6", 2).unwrap();
        spec.trials = 2;
        let render = |s: &ExperimentSpec| {
            let mut buf = Vec::new();
            write_records(&run(s).unwrap(), Format::Json, &mut buf).unwrap();
            buf
        };
        assert_eq!(render(&spec), render(&spec));
    }

    #[test]
    fn empty_grid_is_empty_table() {
        let base = ExperimentSpec::new(Algo::MinCut2, "cycle:4", 1).unwrap();
        assert!(sweep(&base, &[Algo::MinCut2], &[], &[1], "cycle:{n}").unwrap().is_empty());
    }

    #[test]
    fn unweighted_sweep_rounds() {
        let mut base = ExperimentSpec::new(Algo::MinCutU, "cycle:4", 1).unwrap();
        base.trials = 2;
        let rows = sweep(&base, &[Algo::MinCutU], &[12], &[1, 2, 3], "cycle:{n}").unwrap();
        let rounds: Vec<f64> = rows.iter().map(|r| r.rounds).collect();
        assert_eq!(rounds, vec![3.0, 5.0, 7.0]);
        assert!(rows.iter().all(|r| r.success == 1.0));
    }
}
