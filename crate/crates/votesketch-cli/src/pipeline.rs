//! Named experiment pipelines behind a common trait.

use std::borrow::Borrow;
use std::collections::BTreeMap;

use anyhow::{bail, Context};
use rayon::prelude::*;
use serde_json::json;
use votesketch::election::mov::{exact_mov, plurality_mov};
use votesketch::rng::{fork, seeded, trial_rng, SketchRng};
use votesketch::sampling::{estimate_mov, predict_winner, PredictionParams, ProfileSource};
use votesketch::streams::{
    BordaReport, EpsBorda, EpsBordaFactory, EpsMaximin, EpsMaximinFactory, EpsMaximum, EpsMaximumFactory,
    EpsMinimum, EpsMinimumFactory, HeavyHitterParams, HeavyHittersReport, MaximinReport, MaximumReport,
    MinimumReport, OptimalHeavyHitters, SimpleHeavyHitters, SimpleHeavyHittersFactory, SketchFactory,
    StreamSketch, UnknownLength,
};
use votesketch::{evaluate_rule, Profile};

use crate::config::{ExperimentConfig, HhAlgorithm, Oracle, SketchKind};
use crate::gen;
use crate::io::{self, ItemStream, RankingStream};
use crate::output::{Body, Output, Table};

pub trait Pipeline: Send + Sync {
    fn name(&self) -> &'static str;
    fn about(&self) -> &'static str;
    fn run(&self, cfg: &ExperimentConfig) -> anyhow::Result<Output>;
}

/// Pipelines keyed by command name.
pub struct PipelineRegistry {
    entries: BTreeMap<&'static str, Box<dyn Pipeline>>,
}

impl PipelineRegistry {
    pub fn empty() -> Self {
        PipelineRegistry { entries: BTreeMap::new() }
    }

    pub fn register(&mut self, p: Box<dyn Pipeline>) {
        self.entries.insert(p.name(), p);
    }

    pub fn get(&self, name: &str) -> Option<&dyn Pipeline> {
        self.entries.get(name).map(|p| p.as_ref())
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn Pipeline> {
        self.entries.values().map(|p| p.as_ref())
    }

    pub fn run(&self, cfg: &ExperimentConfig) -> anyhow::Result<Output> {
        match self.get(&cfg.command) {
            Some(p) => p.run(cfg),
            None => bail!(
                "unknown command `{}`; available: {}",
                cfg.command,
                self.entries.keys().copied().collect::<Vec<_>>().join(", ")
            ),
        }
    }
}

impl Default for PipelineRegistry {
    fn default() -> Self {
        let mut r = PipelineRegistry::empty();
        r.register(Box::new(Winner));
        r.register(Box::new(SampleWinner));
        r.register(Box::new(EstimateMov));
        r.register(Box::new(Stream(SketchKind::Hh)));
        r.register(Box::new(Stream(SketchKind::Max)));
        r.register(Box::new(Stream(SketchKind::Min)));
        r.register(Box::new(Stream(SketchKind::Borda)));
        r.register(Box::new(Stream(SketchKind::Maximin)));
        r.register(Box::new(Unknown));
        r.register(Box::new(GenProfile));
        r.register(Box::new(GenMcGarvey));
        r.register(Box::new(GenItems));
        r.register(Box::new(GenRankings));
        r
    }
}

/// Cells of one trial, with the oracle's verdict when one is available.
struct TrialRow {
    cells: Vec<String>,
    success: Option<bool>,
}

/// Runs `trials` seeded trials in parallel; rows come out in trial order and
/// a final `summary` row carries the empirical success rate.
fn run_trials<F>(cfg: &ExperimentConfig, columns: &[&str], trial: F) -> Table
where
    F: Fn(&mut SketchRng) -> anyhow::Result<TrialRow> + Sync,
{
    let mut table = Table::new(["trial", "seed"].iter().chain(columns).chain(&["success", "error"]).copied());
    let rows: Vec<anyhow::Result<TrialRow>> =
        (0..cfg.trials).into_par_iter().map(|t| trial(&mut trial_rng(cfg.seed, t))).collect();
    let (mut judged, mut wins) = (0u64, 0u64);
    for (t, row) in rows.into_iter().enumerate() {
        let mut cells = vec![t.to_string(), cfg.seed.to_string()];
        match row {
            Ok(r) => {
                debug_assert_eq!(r.cells.len(), columns.len());
                cells.extend(r.cells);
                if let Some(s) = r.success {
                    judged += 1;
                    wins += s as u64;
                }
                cells.push(r.success.map(|s| s.to_string()).unwrap_or_default());
                cells.push(String::new());
            }
            Err(e) => {
                judged += 1;
                cells.extend(std::iter::repeat_n(String::new(), columns.len() + 1));
                cells.push(format!("{e:#}"));
            }
        }
        table.push(cells);
    }
    let mut summary = vec!["summary".to_string(), cfg.seed.to_string()];
    summary.extend(std::iter::repeat_n(String::new(), columns.len()));
    summary.push(if judged > 0 { format!("{:.4}", wins as f64 / judged as f64) } else { String::new() });
    summary.push(String::new());
    table.push(summary);
    table
}

fn fmt_f(x: f64) -> String {
    format!("{x:.3}")
}

fn prediction_params(cfg: &ExperimentConfig) -> anyhow::Result<PredictionParams> {
    Ok(PredictionParams::new(cfg.eps, cfg.delta)?)
}

fn hh_params(cfg: &ExperimentConfig) -> anyhow::Result<HeavyHitterParams> {
    Ok(HeavyHitterParams::new(cfg.eps, cfg.phi, cfg.delta)?)
}

/// Exact winner and score on a vote file.
struct Winner;

impl Pipeline for Winner {
    fn name(&self) -> &'static str {
        "winner"
    }

    fn about(&self) -> &'static str {
        "exact winner and winning score of --in under --rule"
    }

    fn run(&self, cfg: &ExperimentConfig) -> anyhow::Result<Output> {
        let profile = io::read_profile(cfg.input()?)?;
        let rule = cfg.rule()?;
        let r = evaluate_rule(&profile, &rule)?;
        let mut t = Table::new(["winner", "score"]);
        t.push(vec![profile.name(r.winner).to_string(), r.scores[r.winner].to_string()]);
        let names = |v: &[usize]| v.iter().map(|&c| profile.name(c).to_string()).collect::<Vec<_>>();
        let scores: BTreeMap<&str, String> =
            (0..profile.num_candidates()).map(|c| (profile.name(c), r.scores[c].to_string())).collect();
        Ok(Output {
            body: Body::Table(t),
            meta: json!({
                "rule": rule.to_string(),
                "scores": scores,
                "co_winners": names(&r.co_winners),
                "eliminated": names(&r.eliminated),
            }),
        })
    }
}

/// Winner prediction from `winner_sample_size` sampled votes.
struct SampleWinner;

impl Pipeline for SampleWinner {
    fn name(&self) -> &'static str {
        "sample-winner"
    }

    fn about(&self) -> &'static str {
        "predict the winner of --in from a uniform vote sample"
    }

    fn run(&self, cfg: &ExperimentConfig) -> anyhow::Result<Output> {
        let profile = io::read_profile(cfg.input()?)?;
        let rule = cfg.rule()?;
        let params = prediction_params(cfg)?;
        let truth = match cfg.oracle {
            Oracle::None => None,
            _ => Some(evaluate_rule(&profile, &rule)?.winner),
        };
        let source = ProfileSource::new(&profile);
        let table = run_trials(cfg, &["sample_size", "predicted", "truth"], |rng| {
            let p = predict_winner(&source, &rule, &params, rng)?;
            Ok(TrialRow {
                cells: vec![
                    p.sample_size.to_string(),
                    profile.name(p.winner).to_string(),
                    truth.map(|w| profile.name(w).to_string()).unwrap_or_default(),
                ],
                success: truth.map(|w| w == p.winner),
            })
        });
        Ok(Output::table(table))
    }
}

fn mov_truth(cfg: &ExperimentConfig, profile: &Profile, rule: &votesketch::Rule) -> anyhow::Result<Option<u64>> {
    Ok(match cfg.oracle {
        Oracle::None => None,
        Oracle::Exact => Some(exact_mov(profile, rule).context("exact margin oracle (try --oracle plurality or none)")?),
        Oracle::Plurality => {
            if *rule != votesketch::Rule::Plurality {
                bail!("--oracle plurality only applies to --rule plurality");
            }
            Some(plurality_mov(profile)?)
        }
    })
}

/// Margin-of-victory estimation from `mov_sample_size` sampled votes.
struct EstimateMov;

impl Pipeline for EstimateMov {
    fn name(&self) -> &'static str {
        "estimate-mov"
    }

    fn about(&self) -> &'static str {
        "estimate the margin of victory of --in from a uniform vote sample"
    }

    fn run(&self, cfg: &ExperimentConfig) -> anyhow::Result<Output> {
        let profile = io::read_profile(cfg.input()?)?;
        let rule = cfg.rule()?;
        let params = prediction_params(cfg)?;
        let truth = mov_truth(cfg, &profile, &rule)?;
        let source = ProfileSource::new(&profile);
        let columns = ["sample_size", "predicted", "estimate", "c_factor", "eps_n", "truth"];
        let table = run_trials(cfg, &columns, |rng| {
            let e = estimate_mov(&source, &rule, &params, rng)?;
            Ok(TrialRow {
                cells: vec![
                    e.sample_size.to_string(),
                    profile.name(e.predicted_winner).to_string(),
                    fmt_f(e.mov),
                    fmt_f(e.c_factor),
                    fmt_f(e.eps_n),
                    truth.map(|t| t.to_string()).unwrap_or_default(),
                ],
                success: truth.map(|t| e.within_guarantee(t as f64)),
            })
        });
        Ok(Output::table(table))
    }
}

fn load_items(cfg: &ExperimentConfig) -> anyhow::Result<ItemStream> {
    match cfg.zipf {
        Some(s) => {
            let universe = cfg.universe.unwrap_or(1_000);
            let items = gen::zipf_items(cfg.len.unwrap_or(100_000), universe, s, &mut trial_rng(cfg.seed, u64::MAX))?;
            Ok(ItemStream::from_ids(items, universe))
        }
        None => ItemStream::parse(&io::read_text(cfg.input()?)?, cfg.universe),
    }
}

fn load_rankings(cfg: &ExperimentConfig) -> anyhow::Result<RankingStream> {
    match cfg.plant_share()? {
        Some(share) => {
            let m = cfg.m.unwrap_or(10);
            let rankings = gen::planted_rankings(m, cfg.len.unwrap_or(10_000), 0, share, &mut trial_rng(cfg.seed, u64::MAX))?;
            Ok(RankingStream { candidates: Profile::default_names(m), rankings })
        }
        None => RankingStream::parse(&io::read_text(cfg.input()?)?),
    }
}

fn feed<S: StreamSketch, T: Borrow<S::Item>>(sketch: &mut S, items: &[T]) {
    for x in items {
        sketch.insert(x.borrow());
    }
}

fn len_of<T>(items: &[T]) -> anyhow::Result<u64> {
    if items.is_empty() {
        bail!("the stream is empty");
    }
    Ok(items.len() as u64)
}

/// Loaded stream plus whatever the exact oracle needs to judge reports.
enum StreamData {
    Items { stream: ItemStream, counts: Option<Vec<u64>> },
    Rankings { stream: RankingStream, truth: Option<Vec<f64>> },
}

impl StreamData {
    fn load(cfg: &ExperimentConfig, kind: SketchKind) -> anyhow::Result<Self> {
        let exact = cfg.oracle != Oracle::None;
        Ok(match kind {
            SketchKind::Hh | SketchKind::Max | SketchKind::Min => {
                let stream = load_items(cfg)?;
                let counts = exact.then(|| stream.counts());
                StreamData::Items { stream, counts }
            }
            SketchKind::Borda | SketchKind::Maximin => {
                let stream = load_rankings(cfg)?;
                let truth = exact.then(|| match kind {
                    SketchKind::Borda => stream.borda_scores(),
                    _ => stream.maximin_scores(),
                });
                StreamData::Rankings { stream, truth }
            }
        })
    }

    fn items(&self) -> (&ItemStream, Option<&[u64]>) {
        match self {
            StreamData::Items { stream, counts } => (stream, counts.as_deref()),
            StreamData::Rankings { .. } => unreachable!("item sketch on a ranking stream"),
        }
    }

    fn rankings(&self) -> (&RankingStream, Option<&[f64]>) {
        match self {
            StreamData::Rankings { stream, truth } => (stream, truth.as_deref()),
            StreamData::Items { .. } => unreachable!("ranking sketch on an item stream"),
        }
    }
}

fn columns(kind: SketchKind) -> &'static [&'static str] {
    match kind {
        SketchKind::Hh => &["sampled", "reported", "recall", "precision", "max_error"],
        SketchKind::Max => &["sampled", "item", "estimate", "item_frequency", "max_frequency"],
        SketchKind::Min => &["item", "source", "item_frequency", "min_frequency"],
        SketchKind::Borda => &["sampled", "argmax", "true_argmax", "listed", "max_error"],
        SketchKind::Maximin => &["sampled", "argmax", "true_argmax", "max_error"],
    }
}

/// Recall of `φ`-heavy items, precision against the `(φ - ε)` floor, and worst estimate error.
pub fn judge_heavy_hitters(report: &HeavyHittersReport, counts: &[u64], eps: f64, phi: f64) -> (f64, f64, f64) {
    let m = counts.iter().sum::<u64>() as f64;
    let reported: Vec<u64> = report.items.iter().map(|h| h.item).collect();
    let heavy: Vec<u64> = (0..counts.len() as u64).filter(|&x| counts[x as usize] as f64 >= phi * m).collect();
    let recall = if heavy.is_empty() {
        1.0
    } else {
        heavy.iter().filter(|x| reported.contains(x)).count() as f64 / heavy.len() as f64
    };
    let precision = if reported.is_empty() {
        1.0
    } else {
        reported.iter().filter(|&&x| counts[x as usize] as f64 > (phi - eps) * m).count() as f64 / reported.len() as f64
    };
    let max_error = report.items.iter().map(|h| (h.estimate - counts[h.item as usize] as f64).abs()).fold(0.0, f64::max);
    (recall, precision, max_error)
}

fn judge_hh(cfg: &ExperimentConfig, data: &StreamData, r: &HeavyHittersReport) -> TrialRow {
    let (stream, counts) = data.items();
    let reported =
        r.items.iter().map(|h| format!("{}:{:.1}", stream.names[h.item as usize], h.estimate)).collect::<Vec<_>>();
    let mut cells = vec![r.sampled.to_string(), reported.join(";")];
    let success = counts.map(|c| {
        let (recall, precision, err) = judge_heavy_hitters(r, c, cfg.eps, cfg.phi);
        cells.extend([fmt_f(recall), fmt_f(precision), fmt_f(err)]);
        recall == 1.0 && precision == 1.0 && err <= cfg.eps * stream.items.len() as f64
    });
    cells.resize(columns(SketchKind::Hh).len(), String::new());
    TrialRow { cells, success }
}

fn judge_max(cfg: &ExperimentConfig, data: &StreamData, r: &MaximumReport, sampled: u64) -> TrialRow {
    let (stream, counts) = data.items();
    let mut cells = vec![sampled.to_string(), stream.names[r.item as usize].clone(), fmt_f(r.estimate)];
    let success = counts.map(|c| {
        let max = *c.iter().max().unwrap_or(&0);
        cells.extend([c[r.item as usize].to_string(), max.to_string()]);
        c[r.item as usize] as f64 + cfg.eps * stream.items.len() as f64 >= max as f64
    });
    cells.resize(columns(SketchKind::Max).len(), String::new());
    TrialRow { cells, success }
}

fn judge_min(cfg: &ExperimentConfig, data: &StreamData, r: &MinimumReport) -> TrialRow {
    let (stream, counts) = data.items();
    let source = serde_json::to_value(r.source).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
    let mut cells = vec![stream.names[r.item as usize].clone(), source];
    let success = counts.map(|c| {
        let min = *c.iter().min().unwrap_or(&0);
        cells.extend([c[r.item as usize].to_string(), min.to_string()]);
        c[r.item as usize] as f64 <= min as f64 + cfg.eps * stream.items.len() as f64
    });
    cells.resize(columns(SketchKind::Min).len(), String::new());
    TrialRow { cells, success }
}

fn argmax(v: &[f64]) -> usize {
    (0..v.len()).fold(0, |best, c| if v[c] > v[best] { c } else { best })
}

fn max_abs_error(est: &[f64], truth: &[f64]) -> f64 {
    est.iter().zip(truth).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
}

fn judge_borda(cfg: &ExperimentConfig, data: &StreamData, r: &BordaReport) -> TrialRow {
    let (stream, truth) = data.rankings();
    let len = stream.rankings.len() as u64;
    let listed: Vec<&str> =
        r.list(cfg.phi, cfg.eps, len).into_iter().map(|c| stream.candidates[c].as_str()).collect();
    let mut cells = vec![r.sampled.to_string(), stream.candidates[r.argmax()].clone()];
    let success = truth.map(|t| {
        let err = max_abs_error(&r.estimates, t);
        cells.extend([stream.candidates[argmax(t)].clone(), listed.join(";"), fmt_f(err)]);
        err <= cfg.eps * len as f64 * stream.candidates.len() as f64
    });
    if truth.is_none() {
        cells.extend([String::new(), listed.join(";"), String::new()]);
    }
    TrialRow { cells, success }
}

fn judge_maximin(cfg: &ExperimentConfig, data: &StreamData, r: &MaximinReport) -> TrialRow {
    let (stream, truth) = data.rankings();
    let mut cells = vec![r.sampled.to_string(), stream.candidates[r.argmax()].clone()];
    let success = truth.map(|t| {
        let err = max_abs_error(&r.estimates, t);
        cells.extend([stream.candidates[argmax(t)].clone(), fmt_f(err)]);
        err <= cfg.eps * stream.rankings.len() as f64
    });
    cells.resize(columns(SketchKind::Maximin).len(), String::new());
    TrialRow { cells, success }
}

/// One known-length sketch run per trial.
struct Stream(SketchKind);

impl Stream {
    fn trial(&self, cfg: &ExperimentConfig, data: &StreamData, rng: &mut SketchRng) -> anyhow::Result<TrialRow> {
        let rng = fork(rng);
        Ok(match self.0 {
            SketchKind::Hh => {
                let (s, _) = data.items();
                let len = len_of(&s.items)?;
                let report = match cfg.algorithm {
                    HhAlgorithm::Simple => {
                        let mut sk = SimpleHeavyHitters::new(hh_params(cfg)?, len, s.domain(), rng)?;
                        feed(&mut sk, &s.items);
                        sk.report()?
                    }
                    HhAlgorithm::Optimal => {
                        let mut sk =
                            OptimalHeavyHitters::new(hh_params(cfg)?, cfg.hh_constants.values(), len, s.domain(), rng)?;
                        feed(&mut sk, &s.items);
                        sk.report()?
                    }
                };
                judge_hh(cfg, data, &report)
            }
            SketchKind::Max => {
                let (s, _) = data.items();
                let mut sk = EpsMaximum::new(hh_params(cfg)?, len_of(&s.items)?, s.domain(), rng)?;
                feed(&mut sk, &s.items);
                judge_max(cfg, data, &sk.report()?, sk.sampled())
            }
            SketchKind::Min => {
                let (s, _) = data.items();
                let universe = (0..s.names.len() as u64).collect();
                let mut sk = EpsMinimum::new(universe, cfg.eps, cfg.delta, len_of(&s.items)?, rng)?;
                feed(&mut sk, &s.items);
                judge_min(cfg, data, &sk.report()?)
            }
            SketchKind::Borda => {
                let (s, _) = data.rankings();
                let mut sk = EpsBorda::new(s.candidates.len(), cfg.eps, cfg.delta, len_of(&s.rankings)?, rng)?;
                feed(&mut sk, &s.rankings);
                judge_borda(cfg, data, &sk.report()?)
            }
            SketchKind::Maximin => {
                let (s, _) = data.rankings();
                let mut sk = EpsMaximin::new(s.candidates.len(), cfg.eps, cfg.delta, len_of(&s.rankings)?, rng)?;
                feed(&mut sk, &s.rankings);
                judge_maximin(cfg, data, &sk.report()?)
            }
        })
    }
}

impl Pipeline for Stream {
    fn name(&self) -> &'static str {
        match self.0 {
            SketchKind::Hh => "stream-hh",
            SketchKind::Max => "stream-max",
            SketchKind::Min => "stream-min",
            SketchKind::Borda => "stream-borda",
            SketchKind::Maximin => "stream-maximin",
        }
    }

    fn about(&self) -> &'static str {
        match self.0 {
            SketchKind::Hh => "list heavy hitters of an item stream (--algorithm simple|optimal)",
            SketchKind::Max => "an item within eps*m of the most frequent",
            SketchKind::Min => "an item within eps*m of the least frequent in the universe",
            SketchKind::Borda => "Borda score estimates of a ranking stream",
            SketchKind::Maximin => "maximin score estimates of a ranking stream",
        }
    }

    fn run(&self, cfg: &ExperimentConfig) -> anyhow::Result<Output> {
        let data = StreamData::load(cfg, self.0)?;
        let table = run_trials(cfg, columns(self.0), |rng| self.trial(cfg, &data, rng));
        let mut out = Output::table(table);
        if self.0 == SketchKind::Hh && cfg.algorithm == HhAlgorithm::Optimal {
            out.meta = json!({ "constants": cfg.hh_constants.values() });
        }
        Ok(out)
    }
}

/// Final wrapper state of an unknown-length run.
struct Wrapped<R> {
    report: R,
    instance: u32,
    approximate_length: f64,
    max_live: usize,
}

fn run_unknown<F, T>(factory: F, cfg: &ExperimentConfig, items: &[T], rng: SketchRng) -> anyhow::Result<Wrapped<<F::Sketch as StreamSketch>::Report>>
where
    F: SketchFactory,
    T: Borrow<<F::Sketch as StreamSketch>::Item>,
{
    let mut u = UnknownLength::new(factory, cfg.eps, cfg.delta, rng)?;
    for x in items {
        u.insert(x.borrow())?;
    }
    let r = u.report()?;
    Ok(Wrapped { report: r.report, instance: r.instance, approximate_length: r.approximate_length, max_live: u.max_live_instances() })
}

/// The chosen sketch run without telling it the stream length.
struct Unknown;

impl Unknown {
    fn trial(cfg: &ExperimentConfig, data: &StreamData, rng: &mut SketchRng) -> anyhow::Result<TrialRow> {
        let rng = fork(rng);
        let wrap = |instance: u32, approx: f64, live: usize, row: TrialRow| {
            let mut cells = vec![instance.to_string(), fmt_f(approx), live.to_string()];
            cells.extend(row.cells);
            TrialRow { cells, success: row.success }
        };
        Ok(match cfg.sketch {
            SketchKind::Hh => {
                let (s, _) = data.items();
                let w = run_unknown(SimpleHeavyHittersFactory { params: hh_params(cfg)?, domain: s.domain() }, cfg, &s.items, rng)?;
                wrap(w.instance, w.approximate_length, w.max_live, judge_hh(cfg, data, &w.report))
            }
            SketchKind::Max => {
                let (s, _) = data.items();
                let w = run_unknown(EpsMaximumFactory { params: hh_params(cfg)?, domain: s.domain() }, cfg, &s.items, rng)?;
                let sampled = 0;
                let mut row = judge_max(cfg, data, &w.report, sampled);
                row.cells[0] = String::new();
                wrap(w.instance, w.approximate_length, w.max_live, row)
            }
            SketchKind::Min => {
                let (s, _) = data.items();
                let universe = (0..s.names.len() as u64).collect();
                let f = EpsMinimumFactory { universe, eps: cfg.eps, delta: cfg.delta };
                let w = run_unknown(f, cfg, &s.items, rng)?;
                wrap(w.instance, w.approximate_length, w.max_live, judge_min(cfg, data, &w.report))
            }
            SketchKind::Borda => {
                let (s, _) = data.rankings();
                let f = EpsBordaFactory { candidates: s.candidates.len(), eps: cfg.eps, delta: cfg.delta };
                let w = run_unknown(f, cfg, &s.rankings, rng)?;
                wrap(w.instance, w.approximate_length, w.max_live, judge_borda(cfg, data, &w.report))
            }
            SketchKind::Maximin => {
                let (s, _) = data.rankings();
                let f = EpsMaximinFactory { candidates: s.candidates.len(), eps: cfg.eps, delta: cfg.delta };
                let w = run_unknown(f, cfg, &s.rankings, rng)?;
                wrap(w.instance, w.approximate_length, w.max_live, judge_maximin(cfg, data, &w.report))
            }
        })
    }
}

impl Pipeline for Unknown {
    fn name(&self) -> &'static str {
        "unknown-length"
    }

    fn about(&self) -> &'static str {
        "run --sketch without knowing the stream length in advance"
    }

    fn run(&self, cfg: &ExperimentConfig) -> anyhow::Result<Output> {
        let data = StreamData::load(cfg, cfg.sketch)?;
        let mut cols = vec!["instance", "approximate_length", "max_live"];
        cols.extend(columns(cfg.sketch));
        Ok(Output::table(run_trials(cfg, &cols, |rng| Self::trial(cfg, &data, rng))))
    }
}

/// Vote file with a certified margin of victory.
struct GenProfile;

impl Pipeline for GenProfile {
    fn name(&self) -> &'static str {
        "gen-profile"
    }

    fn about(&self) -> &'static str {
        "votes (--m, --n) whose --rule winner has margin of victory at least eps*n"
    }

    fn run(&self, cfg: &ExperimentConfig) -> anyhow::Result<Output> {
        let rule = cfg.rule()?;
        let g = gen::gen_margin_election(cfg.m.unwrap_or(3), cfg.n.unwrap_or(100), &rule, cfg.eps, cfg.seed)?;
        Ok(Output {
            body: Body::File(g.profile.emit()),
            meta: json!({
                "winner": g.profile.name(g.winner),
                "planted_fraction": g.planted_fraction,
                "certificate": g.certificate,
            }),
        })
    }
}

/// Vote file realising a pairwise margin table.
struct GenMcGarvey;

impl Pipeline for GenMcGarvey {
    fn name(&self) -> &'static str {
        "gen-mcgarvey"
    }

    fn about(&self) -> &'static str {
        "votes realising the margin table in --in, or a random even table (--m, --max-margin)"
    }

    fn run(&self, cfg: &ExperimentConfig) -> anyhow::Result<Output> {
        let (names, targets) = match &cfg.input {
            Some(path) => io::parse_margins(&io::read_text(path)?)?,
            None => {
                let m = cfg.m.unwrap_or(4);
                (Profile::default_names(m), gen::random_even_targets(m, cfg.max_margin, &mut seeded(cfg.seed)))
            }
        };
        let g = gen::gen_mcgarvey(&targets)?;
        let profile = Profile::new(names, g.profile.ballots().to_vec())?;
        Ok(Output { body: Body::File(profile.emit()), meta: json!({ "padded": g.padded, "margins": g.targets }) })
    }
}

struct GenItems;

impl Pipeline for GenItems {
    fn name(&self) -> &'static str {
        "gen-items"
    }

    fn about(&self) -> &'static str {
        "Zipf item stream (--zipf, --len, --universe)"
    }

    fn run(&self, cfg: &ExperimentConfig) -> anyhow::Result<Output> {
        let universe = cfg.universe.unwrap_or(1_000);
        let items = gen::zipf_items(cfg.len.unwrap_or(100_000), universe, cfg.zipf.unwrap_or(1.1), &mut seeded(cfg.seed))?;
        Ok(Output { body: Body::File(ItemStream::from_ids(items, universe).emit()), meta: json!({}) })
    }
}

struct GenRankings;

impl Pipeline for GenRankings {
    fn name(&self) -> &'static str {
        "gen-rankings"
    }

    fn about(&self) -> &'static str {
        "uniform ranking stream (--m, --len), optionally with --plant top=<frac>"
    }

    fn run(&self, cfg: &ExperimentConfig) -> anyhow::Result<Output> {
        let m = cfg.m.unwrap_or(10);
        let share = cfg.plant_share()?.unwrap_or(0.0);
        let rankings = gen::planted_rankings(m, cfg.len.unwrap_or(10_000), 0, share, &mut seeded(cfg.seed))?;
        let stream = RankingStream { candidates: Profile::default_names(m), rankings };
        Ok(Output { body: Body::File(stream.emit()), meta: json!({ "planted": stream.candidates[0], "share": share }) })
    }
}
