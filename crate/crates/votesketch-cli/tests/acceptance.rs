//! Acceptance suite. Every criterion runs once and prints one PASS/FAIL line.
//! The process exits nonzero when a criterion fails, unless the failure is
//! exactly one of the known gaps described next to the criterion, in which
//! case the line reads `FAIL (known gap)`.

#[path = "../../votesketch/tests/support/oracle.rs"]
mod oracle;
#[path = "../../votesketch/tests/support/rules.rs"]
mod rules;

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use votesketch::election::mov::{
    bucklin_delta, copeland_margins, exact_mov, exact_mov_with, plurality_mov, top_two_gap, BruteForceLimits,
    MovSemantics,
};
use votesketch::rng::{fork, trial_rng, SketchRng};
use votesketch::sampling::{estimate_mov, predict_winner, winner_sample_size, PredictionParams, ProfileSource};
use votesketch::streams::{
    morris_accuracy_bits, EpsBorda, EpsMaximin, EpsMaximum, EpsMaximumFactory, EpsMinimum, HeavyHitterParams,
    MorrisCounter, OptimalHeavyHitters, OptimalHhConstants, SimpleHeavyHitters, StreamSketch, UnknownLength,
};
use votesketch::{condorcet_winner, evaluate_rule, pairwise_margins, Profile, Rule, Score};
use votesketch_cli::gen::{gen_margin_election, gen_mcgarvey, planted_rankings, random_even_targets, zipf_items};

const ICE_CREAM: &str = "\
candidates: Chocolate,Butterscotch,Pesta,Vanilla,Kulfi
Chocolate>Kulfi>Butterscotch>Vanilla>Pesta
Butterscotch>Kulfi>Chocolate>Vanilla>Pesta
Pesta>Butterscotch>Kulfi>Vanilla>Chocolate
Chocolate>Vanilla>Kulfi>Pesta>Butterscotch
Kulfi>Butterscotch>Chocolate>Vanilla>Pesta
";

struct Outcome {
    pass: bool,
    /// The failure is confined to a sub-check that cannot hold as stated.
    known_gap: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome { pass, known_gap: false, detail: detail.into() }
    }
}

struct Criterion {
    id: u32,
    title: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

fn random_votes(rng: &mut SketchRng, m: usize, n: usize) -> Vec<Vec<usize>> {
    (0..n)
        .map(|_| {
            let mut r: Vec<usize> = (0..m).collect();
            r.shuffle(rng);
            r
        })
        .collect()
}

fn build(m: usize, votes: &[Vec<usize>]) -> Profile {
    Profile::from_rankings(oracle::names(m), votes.iter().cloned()).unwrap()
}

fn at_least(hits: usize, total: usize, fraction: f64) -> bool {
    hits as f64 >= fraction * total as f64
}

fn counts(items: &[u64], universe: usize) -> Vec<u64> {
    let mut c = vec![0; universe];
    for &x in items {
        c[x as usize] += 1;
    }
    c
}

fn rule_evaluations_match_definitions() -> Outcome {
    let results: Vec<(usize, Vec<String>)> = (0..1000u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = trial_rng(1, i);
            let m = rng.random_range(1..=4);
            let n = rng.random_range(1..=6);
            let votes = random_votes(&mut rng, m, n);
            let p = build(m, &votes);
            let lex = oracle::lex_rank(p.candidates());
            let rules = rules::rules_for(m);
            let bad = rules
                .iter()
                .filter(|rule| {
                    let got = evaluate_rule(&p, rule).unwrap();
                    let (w, co) = oracle::winner(&votes, m, &rules::ref_rule(rule, m), &lex);
                    got.winner != w || oracle::as_set(&got.co_winners) != oracle::as_set(&co)
                })
                .map(|rule| format!("profile {i}: {rule}"))
                .collect();
            (rules.len(), bad)
        })
        .collect();
    let checked: usize = results.iter().map(|r| r.0).sum();
    let bad: Vec<&String> = results.iter().flat_map(|r| &r.1).collect();
    Outcome::new(bad.is_empty(), format!("{checked} rule evaluations, {} mismatches {:?}", bad.len(), bad.first()))
}

/// Known gap: the votes in the table make Kulfi the Condorcet winner (it beats
/// Butterscotch 3-2), so the stated Butterscotch outcome cannot be reproduced.
fn worked_example() -> Outcome {
    let p = Profile::parse(ICE_CREAM).unwrap();
    let plurality = evaluate_rule(&p, &Rule::Plurality).unwrap();
    let borda = evaluate_rule(&p, &Rule::Borda).unwrap();
    let condorcet = condorcet_winner(&p).map(|c| p.name(c).to_string());
    let stated = p.name(plurality.winner) == "Chocolate"
        && p.name(borda.winner) == "Kulfi"
        && borda.scores[borda.winner] == Score::from_integer(14);
    let condorcet_ok = condorcet.as_deref() == Some("Butterscotch");
    Outcome {
        pass: stated && condorcet_ok,
        known_gap: stated && !condorcet_ok,
        detail: format!(
            "plurality {}, Borda {} with {}, Condorcet winner {:?} (expected Butterscotch)",
            p.name(plurality.winner),
            p.name(borda.winner),
            borda.scores[borda.winner],
            condorcet
        ),
    }
}

fn plurality_winner_prediction() -> Outcome {
    let (m, n, eps) = (5, 100_000, 0.05);
    let g = gen_margin_election(m, n, &Rule::Plurality, eps, 3).unwrap();
    let mov = plurality_mov(&g.profile).unwrap();
    let params = PredictionParams::new(eps, 0.1).unwrap();
    let ell = winner_sample_size(&Rule::Plurality, m, &params).unwrap();
    let truth = evaluate_rule(&g.profile, &Rule::Plurality).unwrap().winner;
    let source = ProfileSource::new(&g.profile);
    let trials = 200;
    let failures = (0..trials as u64)
        .into_par_iter()
        .filter(|&t| {
            let pr = predict_winner(&source, &Rule::Plurality, &params, &mut trial_rng(3, t)).unwrap();
            pr.sample_size != ell || pr.winner != truth
        })
        .count();
    let rate = failures as f64 / trials as f64;
    Outcome::new(
        mov as f64 >= eps * n as f64 && rate <= 0.15,
        format!("MOV {mov}, sample size {ell}, failure rate {rate:.3} (<= 0.15)"),
    )
}

fn borda_mov_small() -> Outcome {
    let (m, n, eps) = (4, 10, 0.2);
    let params = PredictionParams::new(eps, 0.1).unwrap();
    let hits: Vec<usize> = (0..50u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = trial_rng(4, i);
            let p = build(m, &random_votes(&mut rng, m, n));
            let truth = exact_mov(&p, &Rule::Borda).unwrap() as f64;
            let source = ProfileSource::new(&p);
            (0..20)
                .filter(|_| {
                    let e = estimate_mov(&source, &Rule::Borda, &params, &mut fork(&mut rng)).unwrap();
                    (e.mov - truth).abs() <= truth / 3.0 + eps * n as f64
                })
                .count()
        })
        .collect();
    let total: usize = hits.iter().sum();
    Outcome::new(at_least(total, 1000, 0.85), format!("{total}/1000 estimates within MOV/3 + eps*n"))
}

fn plurality_mov_large() -> Outcome {
    let (m, n, eps) = (5, 10_000, 0.05);
    let g = gen_margin_election(m, n, &Rule::Plurality, eps, 5).unwrap();
    let truth = plurality_mov(&g.profile).unwrap();
    let votes: Vec<Vec<usize>> = g.profile.ballots().iter().map(|b| b.ranking.clone()).collect();
    let oracle_truth = oracle::plurality_mov(&votes, m, &oracle::lex_rank(g.profile.candidates()));
    let params = PredictionParams::new(eps, 0.1).unwrap();
    let source = ProfileSource::new(&g.profile);
    let hits = (0..200u64)
        .into_par_iter()
        .filter(|&t| {
            let e = estimate_mov(&source, &Rule::Plurality, &params, &mut trial_rng(5, t)).unwrap();
            (e.mov - truth as f64).abs() <= eps * n as f64
        })
        .count();
    Outcome::new(
        truth == oracle_truth && at_least(hits, 200, 0.85),
        format!("MOV {truth} (reference {oracle_truth}), {hits}/200 within eps*n"),
    )
}

fn cowinner_mov(p: &Profile, rule: &Rule) -> u64 {
    exact_mov_with(p, rule, MovSemantics::CoWinner, BruteForceLimits::default()).unwrap()
}

fn lemma_profile(lemma: u64, i: u64) -> Profile {
    let mut rng = trial_rng(600 + lemma, i);
    let limits = BruteForceLimits::default();
    let m = rng.random_range(2..=limits.max_candidates);
    let n = rng.random_range(1..=limits.max_votes as usize);
    build(m, &random_votes(&mut rng, m, n))
}

/// Violation counts per lemma side over 200 profiles each.
fn lemma_violations() -> BTreeMap<&'static str, usize> {
    let count = |lemma: u64, check: &(dyn Fn(&Profile) -> Vec<(&'static str, bool)> + Sync)| {
        (0..200u64)
            .into_par_iter()
            .map(|i| check(&lemma_profile(lemma, i)))
            .flatten_iter()
            .fold(BTreeMap::new, |mut acc: BTreeMap<&'static str, usize>, (side, ok)| {
                *acc.entry(side).or_default() += !ok as usize;
                acc
            })
            .reduce(BTreeMap::new, |mut a, b| {
                for (k, v) in b {
                    *a.entry(k).or_default() += v;
                }
                a
            })
    };
    let gap = |p: &Profile, rule: &Rule| {
        let scores = evaluate_rule(p, rule).unwrap().scores;
        top_two_gap(&scores, p.tie_break()).unwrap().2
    };
    let mut all = BTreeMap::new();
    all.extend(count(0, &|p| {
        let m = p.num_candidates();
        let custom = votesketch::ScoreVector::from_ints(&(0..m).map(|i| ((m - i) * (m - i)) as i64).collect::<Vec<_>>()).unwrap();
        let mut out = vec![];
        for rule in [Rule::Plurality, Rule::Borda, Rule::Veto, Rule::Scoring { alpha: custom }] {
            let alpha = rule.score_vector(m).unwrap().unwrap();
            let a1 = alpha.values()[0] - alpha.values()[m - 1];
            let (g, mov) = (gap(p, &rule), Score::from_integer(cowinner_mov(p, &rule) as i64));
            out.push(("scoring lower", a1 * (mov - 1) <= g));
            out.push(("scoring upper", g <= a1 * mov * 2));
        }
        out
    }));
    all.extend(count(1, &|p| {
        let (g, mov) = (gap(p, &Rule::Maximin), Score::from_integer(cowinner_mov(p, &Rule::Maximin) as i64));
        vec![("maximin lower", mov * 2 <= g), ("maximin upper", g <= mov * 4)]
    }));
    all.extend(count(2, &|p| {
        (1..p.num_candidates())
            .flat_map(|k| {
                let rule = Rule::KApproval { k };
                let (g, mov) = (gap(p, &rule), Score::from_integer(cowinner_mov(p, &rule) as i64));
                [("k-approval lower", (mov - 1) * 2 < g), ("k-approval upper", g <= mov * 2)]
            })
            .collect()
    }));
    all.extend(count(3, &|p| match bucklin_delta(p) {
        Ok(d) => {
            let mov = cowinner_mov(p, &Rule::Bucklin) as f64;
            vec![("bucklin lower", d.delta / 2.0 <= mov), ("bucklin upper", mov <= d.delta)]
        }
        Err(_) => vec![],
    }));
    all.extend(count(4, &|p| {
        let m = p.num_candidates();
        let factor = 2 * ((m as f64).ln().ceil() as i64 + 1);
        [Rule::copeland(), Rule::Copeland { alpha: Score::new(1, 2) }]
            .into_iter()
            .flat_map(|rule| {
                let Rule::Copeland { alpha } = rule else { unreachable!() };
                let gamma = copeland_margins(p, alpha).unwrap().gamma;
                let mov = cowinner_mov(p, &rule) as i64;
                let upper = if gamma < 0 { "copeland upper, negative gamma" } else { "copeland upper" };
                [("copeland lower", gamma <= mov), (upper, mov <= factor * gamma)]
            })
            .collect()
    }));
    all
}

/// Known gaps, both sides of sandwiches that cannot hold as stated:
///
/// * `Δ/2 <= MOV` fails for Bucklin in general. With votes
///   `x>w>y, x>w>y, y>w>x, y>w>x`, `w` wins at depth 2 with `Δ = 3`, yet
///   replacing one `x>w>y` by `y>x>w` gives `y` a first-place majority.
/// * `MOV <= 2(⌈ln m⌉+1)Γ` needs `Γ >= 0`, but `Γ` is negative whenever the
///   Copeland winner only wins on the tie-break against a challenger that
///   beats it head to head, while `MOV` is never negative.
fn structural_lemmas() -> Outcome {
    let v = lemma_violations();
    let failing: Vec<&str> = v.iter().filter(|(_, &n)| n > 0).map(|(k, _)| *k).collect();
    let gaps = ["bucklin lower", "copeland upper, negative gamma"];
    Outcome {
        pass: failing.is_empty(),
        known_gap: failing.iter().all(|f| gaps.contains(f)),
        detail: format!("violations {v:?}"),
    }
}

fn optimal_heavy_hitters() -> Outcome {
    let (len, universe, phi, eps) = (1_000_000u64, 10_000u64, 0.01f64, 0.005);
    let cap = (2.0 / phi).ceil() as usize;
    let constants = OptimalHhConstants::reduced();
    let results: Vec<(bool, usize)> = (0..50u64)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(7, t);
            let items = zipf_items(len, universe, 1.1, &mut rng).unwrap();
            let params = HeavyHitterParams::new(eps, phi, 0.1).unwrap();
            let mut sk = OptimalHeavyHitters::new(params, constants, len, universe, fork(&mut rng)).unwrap();
            let mut t1_max = 0;
            for x in &items {
                sk.insert(x);
                t1_max = t1_max.max(sk.t1().len());
            }
            let report = sk.report().unwrap();
            let f = counts(&items, universe as usize);
            let m = len as f64;
            let reported: Vec<u64> = report.items.iter().map(|h| h.item).collect();
            let recall = (0..universe).filter(|&x| f[x as usize] as f64 >= phi * m).all(|x| reported.contains(&x));
            let precise = reported.iter().all(|&x| f[x as usize] as f64 > (phi - eps) * m);
            let accurate = report.items.iter().all(|h| (h.estimate - f[h.item as usize] as f64).abs() <= eps * m);
            (recall && precise && accurate, t1_max)
        })
        .collect();
    let ok = results.iter().filter(|r| r.0).count();
    let t1 = results.iter().map(|r| r.1).max().unwrap();
    Outcome::new(
        at_least(ok, 50, 2.0 / 3.0) && t1 <= cap,
        format!("{ok}/50 trials correct, largest T1 {t1} (cap {cap}), constants {constants:?}"),
    )
}

/// 60/40 two-item stream of length 10^5 in random order.
fn majority_stream(rng: &mut SketchRng) -> Vec<u64> {
    let mut s: Vec<u64> = (0..100_000).map(|i| (i >= 60_000) as u64).collect();
    s.shuffle(rng);
    s
}

fn majority_params() -> HeavyHitterParams {
    HeavyHitterParams::new(0.05, 0.5, 0.1).unwrap()
}

fn simple_hh_and_maximum() -> Outcome {
    let results: Vec<(bool, bool)> = (0..50u64)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(8, t);
            let s = majority_stream(&mut rng);
            let mut hh = SimpleHeavyHitters::new(majority_params(), s.len() as u64, 2, fork(&mut rng)).unwrap();
            let mut max = EpsMaximum::new(majority_params(), s.len() as u64, 2, fork(&mut rng)).unwrap();
            for x in &s {
                hh.insert(x);
                max.insert(x);
            }
            let hh_items: Vec<u64> = hh.report().unwrap().items.iter().map(|h| h.item).collect();
            (hh_items == [0], max.report().unwrap().item == 0)
        })
        .collect();
    let hh = results.iter().filter(|r| r.0).count();
    let max = results.iter().filter(|r| r.1).count();
    Outcome::new(
        at_least(hh, 50, 0.9) && at_least(max, 50, 0.9),
        format!("heavy hitters {hh}/50, eps-maximum {max}/50 report exactly the majority item"),
    )
}

fn eps_minimum() -> Outcome {
    let (len, universe, eps) = (100_000usize, 20u64, 0.1);
    let hits = (0..50u64)
        .into_par_iter()
        .filter(|&t| {
            let mut rng = trial_rng(9, t);
            let mut s: Vec<u64> = (0..len).map(|i| if i < len / 100 { 0 } else { rng.random_range(1..universe) }).collect();
            s.shuffle(&mut rng);
            let mut sk = EpsMinimum::new((0..universe).collect(), eps, 0.1, len as u64, fork(&mut rng)).unwrap();
            for x in &s {
                sk.insert(x);
            }
            let f = counts(&s, universe as usize);
            let min = *f.iter().min().unwrap();
            f[sk.report().unwrap().item as usize] as f64 <= min as f64 + eps * len as f64
        })
        .count();
    Outcome::new(at_least(hits, 50, 0.85), format!("{hits}/50 trials within min + eps*m"))
}

/// Exact Borda and maximin scores of a ranking stream.
fn exact_ranking_scores(rankings: &[Vec<usize>], n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut borda = vec![0.0; n];
    let mut wins = vec![vec![0i64; n]; n];
    for r in rankings {
        for (i, &x) in r.iter().enumerate() {
            borda[x] += (n - 1 - i) as f64;
            for &y in &r[i + 1..] {
                wins[x][y] += 1;
            }
        }
    }
    let maximin = (0..n)
        .map(|x| (0..n).filter(|&y| y != x).map(|y| wins[x][y] - wins[y][x]).min().unwrap() as f64)
        .collect();
    (borda, maximin)
}

fn argmax(v: &[f64]) -> usize {
    (0..v.len()).fold(0, |b, c| if v[c] > v[b] { c } else { b })
}

fn ranking_sketches() -> Outcome {
    let (n, len, eps) = (50usize, 100_000u64, 0.1);
    let results: Vec<(bool, bool)> = (0..20u64)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(10, t);
            let stream = planted_rankings(n, len, 0, 0.6, &mut rng).unwrap();
            let (borda, maximin) = exact_ranking_scores(&stream, n);
            let mut b = EpsBorda::new(n, eps, 0.1, len, fork(&mut rng)).unwrap();
            let mut mm = EpsMaximin::new(n, eps, 0.1, len, fork(&mut rng)).unwrap();
            for r in &stream {
                b.insert(r);
                mm.insert(r);
            }
            let (br, mr) = (b.report().unwrap(), mm.report().unwrap());
            let within = |est: &[f64], truth: &[f64], bound: f64| est.iter().zip(truth).all(|(a, b)| (a - b).abs() <= bound);
            (
                within(&br.estimates, &borda, eps * len as f64 * n as f64) && br.argmax() == 0 && argmax(&borda) == 0,
                within(&mr.estimates, &maximin, eps * len as f64) && mr.argmax() == 0 && argmax(&maximin) == 0,
            )
        })
        .collect();
    let b = results.iter().filter(|r| r.0).count();
    let m = results.iter().filter(|r| r.1).count();
    Outcome::new(at_least(b, 20, 0.9) && at_least(m, 20, 0.9), format!("Borda {b}/20, maximin {m}/20 trials accurate with planted argmax"))
}

fn unknown_length_wrapper() -> Outcome {
    let results: Vec<(bool, usize)> = (0..50u64)
        .into_par_iter()
        .map(|t| {
            let s = majority_stream(&mut trial_rng(11, t));
            let mut known = EpsMaximum::new(majority_params(), s.len() as u64, 2, trial_rng(1100, t)).unwrap();
            let factory = EpsMaximumFactory { params: majority_params(), domain: 2 };
            let mut unknown = UnknownLength::new(factory, 0.05, 0.1, trial_rng(1100, t)).unwrap();
            let mut live = 0;
            for x in &s {
                known.insert(x);
                unknown.insert(x).unwrap();
                live = live.max(unknown.live_instances());
            }
            let agree = known.report().unwrap().item == unknown.report().unwrap().report.item;
            (agree, live.max(unknown.max_live_instances()))
        })
        .collect();
    let agree = results.iter().filter(|r| r.0).count();
    let live = results.iter().map(|r| r.1).max().unwrap();
    let target = 4096.0;
    let morris_mean = |bits: u32| {
        let total: f64 = (0..500u64)
            .into_par_iter()
            .map(|i| {
                let mut rng = trial_rng(1101 + bits as u64, i);
                let mut c = MorrisCounter::new(bits);
                for _ in 0..4096 {
                    c.increment(&mut rng);
                }
                c.estimate()
            })
            .sum();
        total / 500.0
    };
    let wrapper_bits = morris_accuracy_bits(0.1);
    let (classic, tuned) = (morris_mean(0), morris_mean(wrapper_bits));
    let close = |x: f64| (x - target).abs() <= 0.2 * target;
    Outcome::new(
        at_least(agree, 50, 0.9) && live <= 2 && close(classic) && close(tuned),
        format!(
            "{agree}/50 pairs agree, at most {live} live instances, Morris mean {classic:.0} (0 bits) and {tuned:.0} ({wrapper_bits} bits) vs 4096"
        ),
    )
}

fn mcgarvey_generator() -> Outcome {
    let bad: Vec<u64> = (0..100u64)
        .into_par_iter()
        .filter(|&i| {
            let targets = random_even_targets(4, 6, &mut trial_rng(12, i));
            let g = gen_mcgarvey(&targets).unwrap();
            let d = pairwise_margins(&g.profile);
            let votes: Vec<Vec<usize>> = g.profile.expanded().ballots().iter().map(|b| b.ranking.clone()).collect();
            let exact = (0..4).all(|x| (0..4).all(|y| d.get(x, y) == targets[x][y] && oracle::margin(&votes, x, y) == targets[x][y]));
            g.padded || !exact
        })
        .collect();
    Outcome::new(bad.is_empty(), format!("{} of 100 targets realised exactly; failing seeds {bad:?}", 100 - bad.len()))
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let criteria = [
        Criterion { id: 1, title: "rule evaluation matches definitions", limit: Some(secs(30)), run: rule_evaluations_match_definitions },
        Criterion { id: 2, title: "worked example", limit: None, run: worked_example },
        Criterion { id: 3, title: "plurality winner prediction", limit: Some(secs(120)), run: plurality_winner_prediction },
        Criterion { id: 4, title: "Borda MoV estimation, exact oracle", limit: Some(secs(300)), run: borda_mov_small },
        Criterion { id: 5, title: "plurality MoV estimation, large n", limit: Some(secs(120)), run: plurality_mov_large },
        Criterion { id: 6, title: "structural margin lemmas", limit: None, run: structural_lemmas },
        Criterion { id: 7, title: "optimal heavy hitters", limit: Some(secs(300)), run: optimal_heavy_hitters },
        Criterion { id: 8, title: "simple heavy hitters and eps-maximum", limit: None, run: simple_hh_and_maximum },
        Criterion { id: 9, title: "eps-minimum", limit: None, run: eps_minimum },
        Criterion { id: 10, title: "eps-Borda and eps-maximin", limit: Some(secs(300)), run: ranking_sketches },
        Criterion { id: 11, title: "unknown-length wrapper and Morris counter", limit: None, run: unknown_length_wrapper },
        Criterion { id: 12, title: "McGarvey generator", limit: None, run: mcgarvey_generator },
    ];
    let mut unexpected = 0;
    for c in &criteria {
        let start = Instant::now();
        let mut out = (c.run)();
        let elapsed = start.elapsed();
        if let Some(limit) = c.limit {
            if elapsed > limit {
                out.pass = false;
                out.known_gap = false;
                out.detail.push_str(&format!("; exceeded {}s", limit.as_secs()));
            }
        }
        let status = match (out.pass, out.known_gap) {
            (true, _) => "PASS",
            (false, true) => "FAIL (known gap)",
            (false, false) => {
                unexpected += 1;
                "FAIL"
            }
        };
        println!("criterion {:>2} {status}: {} [{:.1}s] {}", c.id, c.title, elapsed.as_secs_f64(), out.detail);
    }
    if unexpected > 0 {
        println!("{unexpected} criteria failed");
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
