//! Synthetic elections and streams.

use rand::seq::SliceRandom;
use rand::{Rng, RngCore};
use rand_distr::{Distribution, Zipf};
use serde::Serialize;
use votesketch::election::mov::{exact_mov, plurality_mov, top_two_gap, BruteForceLimits};
use votesketch::rng::seeded;
use votesketch::election::score_to_f64;
use votesketch::{condorcet_winner, evaluate_rule, pairwise_margins, Error, Profile, Result, Rule};

/// A profile realising a pairwise margin table.
#[derive(Debug, Clone)]
pub struct McGarvey {
    pub profile: Profile,
    /// Margins actually realised; equal to the request unless `padded`.
    pub targets: Vec<Vec<i64>>,
    /// Whether even entries were bumped by one to give the table a single parity.
    pub padded: bool,
}

/// Builds a profile whose pairwise margins equal `targets`.
///
/// Each unit of `f(a, b) = 2` comes from the pair `a > b > c1 > ... > ck` and
/// `ck > ... > c1 > a > b`, which agree on `a > b` and cancel on every other
/// pair. Odd tables start from one seed vote. If the entries mix parities,
/// every even entry `f(a, b)` with `a < b` moves one step away from zero
/// (zero becomes `+1`), and the result records the padding.
pub fn gen_mcgarvey(targets: &[Vec<i64>]) -> Result<McGarvey> {
    let m = targets.len();
    if m == 0 || targets.iter().any(|row| row.len() != m) {
        return Err(Error::InvalidParameter("margin table must be square and nonempty".into()));
    }
    for a in 0..m {
        if targets[a][a] != 0 {
            return Err(Error::InvalidParameter(format!("diagonal entry ({a}, {a}) must be zero")));
        }
        for b in 0..m {
            if targets[a][b] != -targets[b][a] {
                return Err(Error::InvalidParameter(format!("margins ({a}, {b}) and ({b}, {a}) are not antisymmetric")));
            }
        }
    }
    let mut f: Vec<Vec<i64>> = targets.to_vec();
    let pairs = || (0..m).flat_map(move |a| (a + 1..m).map(move |b| (a, b)));
    let odd = pairs().filter(|&(a, b)| f[a][b].rem_euclid(2) == 1).count();
    let padded = odd > 0 && odd < pairs().count();
    if padded {
        for (a, b) in pairs() {
            if f[a][b].rem_euclid(2) == 0 {
                f[a][b] += if f[a][b] < 0 { -1 } else { 1 };
                f[b][a] = -f[a][b];
            }
        }
    }
    let mut votes: Vec<Vec<usize>> = Vec::new();
    let mut residual = f.clone();
    if odd > 0 {
        let seed: Vec<usize> = (0..m).collect();
        for (a, b) in pairs() {
            residual[a][b] -= 1;
            residual[b][a] += 1;
        }
        votes.push(seed);
    }
    for (a, b) in pairs() {
        let (hi, lo, d) = if residual[a][b] >= 0 { (a, b, residual[a][b]) } else { (b, a, residual[b][a]) };
        let rest: Vec<usize> = (0..m).filter(|&c| c != hi && c != lo).collect();
        for _ in 0..d / 2 {
            let mut first = vec![hi, lo];
            first.extend(&rest);
            let mut second: Vec<usize> = rest.iter().rev().copied().collect();
            second.extend([hi, lo]);
            votes.push(first);
            votes.push(second);
        }
    }
    if votes.is_empty() {
        votes.push((0..m).collect());
        votes.push((0..m).rev().collect());
    }
    let profile = Profile::from_rankings(Profile::default_names(m), votes)?;
    let d = pairwise_margins(&profile);
    debug_assert!((0..m).all(|a| (0..m).all(|b| d.get(a, b) == f[a][b])));
    Ok(McGarvey { profile, targets: f, padded })
}

/// Random antisymmetric table with even entries in `[-max_magnitude, max_magnitude]`.
pub fn random_even_targets(m: usize, max_magnitude: i64, rng: &mut dyn RngCore) -> Vec<Vec<i64>> {
    let half = max_magnitude / 2;
    let mut f = vec![vec![0i64; m]; m];
    for a in 0..m {
        for b in a + 1..m {
            f[a][b] = 2 * rng.random_range(-half..=half);
            f[b][a] = -f[a][b];
        }
    }
    f
}

/// How a generated profile's margin of victory was established.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertificateMethod {
    /// Brute-force search over vote changes.
    Exact,
    /// The plurality move-votes simulation.
    PluralityOracle,
    /// One changed vote moves any score gap by at most `2(α1 - αm)`.
    ScoreGap,
    /// One changed vote moves each pairwise margin by at most two.
    PairwiseGap,
    /// The winner keeps a first-place majority until enough votes change.
    FirstPlaceMajority,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Certificate {
    pub method: CertificateMethod,
    /// Proven lower bound on the margin of victory (exact for the exact methods).
    pub mov_lower_bound: u64,
}

#[derive(Debug, Clone)]
pub struct MarginElection {
    pub profile: Profile,
    pub winner: usize,
    /// Fraction of votes that rank the winner first by construction.
    pub planted_fraction: f64,
    pub certificate: Certificate,
}

fn ceil_div(a: f64, b: f64) -> u64 {
    (a / b - 1e-9).ceil().max(0.0) as u64
}

/// Proven lower bound on the tie-broken margin of victory of `profile` under `rule`.
pub fn certify_mov(profile: &Profile, rule: &Rule) -> Result<Certificate> {
    let m = profile.num_candidates();
    let n = profile.num_votes();
    let limits = BruteForceLimits::default();
    if profile.is_unweighted() && m <= limits.max_candidates && n <= limits.max_votes {
        return Ok(Certificate { method: CertificateMethod::Exact, mov_lower_bound: exact_mov(profile, rule)? });
    }
    if *rule == Rule::Plurality {
        return Ok(Certificate { method: CertificateMethod::PluralityOracle, mov_lower_bound: plurality_mov(profile)? });
    }
    let result = evaluate_rule(profile, rule)?;
    let w = result.winner;
    let certificate = |method, bound| Ok(Certificate { method, mov_lower_bound: bound });
    if let Some(alpha) = rule.score_vector(m)? {
        let range = score_to_f64(&(alpha.values()[0] - alpha.values()[m - 1]));
        let (_, _, gap) = top_two_gap(&result.scores, profile.tie_break()).expect("two candidates");
        return certificate(CertificateMethod::ScoreGap, ceil_div(score_to_f64(&gap), 2.0 * range));
    }
    match rule {
        Rule::Maximin => {
            let (_, _, gap) = top_two_gap(&result.scores, profile.tie_break()).expect("two candidates");
            certificate(CertificateMethod::PairwiseGap, ceil_div(score_to_f64(&gap), 4.0))
        }
        Rule::Copeland { .. } => {
            let d = pairwise_margins(profile);
            let bound = match condorcet_winner(profile) {
                Some(c) if c == w => (0..m).filter(|&y| y != w).map(|y| d.get(w, y)).min().map_or(0, |g| ceil_div(g as f64, 2.0)),
                _ => 0,
            };
            certificate(CertificateMethod::PairwiseGap, bound)
        }
        _ => {
            let firsts: u64 = profile.ballots().iter().filter(|b| b.ranking[0] == w).map(|b| b.weight).sum();
            certificate(CertificateMethod::FirstPlaceMajority, firsts.saturating_sub(n / 2))
        }
    }
}

/// A uniformly random ranking of `m` candidates whose top is not `avoid`.
fn ranking_without_top(m: usize, avoid: usize, rng: &mut dyn RngCore) -> Vec<usize> {
    let mut r: Vec<usize> = (0..m).collect();
    loop {
        r.shuffle(rng);
        if r[0] != avoid {
            return r;
        }
    }
}

/// Generates `n` votes over `m` candidates whose winner under `rule` has a
/// certified margin of victory of at least `⌈target·n⌉`.
///
/// A fraction `q` of the votes put candidate `a` first (the rest of each
/// ranking uniform) and the others are uniform rankings with a different top.
/// `q` starts at `1/m` and grows in steps of 0.05 until a certificate clears
/// the target.
pub fn gen_margin_election(m: usize, n: u64, rule: &Rule, target: f64, seed: u64) -> Result<MarginElection> {
    if m < 2 || n == 0 {
        return Err(Error::InvalidParameter("need at least two candidates and one vote".into()));
    }
    if !(target > 0.0 && target < 0.5) {
        return Err(Error::InvalidParameter(format!("target margin fraction must lie in (0, 0.5), got {target}")));
    }
    rule.score_vector(m)?;
    let need = (target * n as f64).ceil() as u64;
    let w = 0;
    let start = 1.0 / m as f64;
    let mut steps: Vec<f64> = (0..).map(|i| start + 0.05 * i as f64).take_while(|&q| q < 1.0).collect();
    steps.push(1.0);
    for q in steps {
        let mut rng = seeded(seed);
        let planted = ((q * n as f64 - 1e-9).ceil() as u64).min(n);
        let votes = (0..n).map(|i| {
            if i < planted {
                let mut r: Vec<usize> = (1..m).collect();
                r.shuffle(&mut rng);
                r.insert(0, w);
                r
            } else {
                ranking_without_top(m, w, &mut rng)
            }
        });
        let profile = Profile::from_rankings(Profile::default_names(m), votes.collect::<Vec<_>>())?;
        if evaluate_rule(&profile, rule)?.winner != w {
            continue;
        }
        let certificate = certify_mov(&profile, rule)?;
        if certificate.mov_lower_bound >= need {
            return Ok(MarginElection { profile, winner: w, planted_fraction: q, certificate });
        }
    }
    Err(Error::Unsupported(format!("could not certify a margin of {need} votes for {rule} with m={m}, n={n}")))
}

/// `len` items drawn from a Zipf law with exponent `s` over ids `0..universe`.
pub fn zipf_items(len: u64, universe: u64, s: f64, rng: &mut dyn RngCore) -> Result<Vec<u64>> {
    let z = Zipf::new(universe as f64, s).map_err(|e| Error::InvalidParameter(format!("zipf: {e}")))?;
    Ok((0..len).map(|_| z.sample(rng) as u64 - 1).collect())
}

/// `len` uniform rankings of `m` candidates, each moved to have `top` first with probability `share`.
pub fn planted_rankings(m: usize, len: u64, top: usize, share: f64, rng: &mut dyn RngCore) -> Result<Vec<Vec<usize>>> {
    if top >= m || !(0.0..=1.0).contains(&share) {
        return Err(Error::InvalidParameter(format!("cannot plant candidate {top} of {m} with share {share}")));
    }
    Ok((0..len)
        .map(|_| {
            let mut r: Vec<usize> = (0..m).collect();
            r.shuffle(rng);
            if rng.random_bool(share) {
                let i = r.iter().position(|&c| c == top).expect("top is a candidate");
                r.remove(i);
                r.insert(0, top);
            }
            r
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_table_gives_two_reversed_votes() {
        let g = gen_mcgarvey(&vec![vec![0; 3]; 3]).unwrap();
        assert_eq!(g.profile.num_votes(), 2);
        assert!(!g.padded);
        let b = g.profile.ballots();
        assert_eq!(b[0].ranking.iter().rev().copied().collect::<Vec<_>>(), b[1].ranking);
    }

    #[test]
    fn single_edge_uses_one_pair() {
        let mut f = vec![vec![0; 3]; 3];
        f[0][1] = 2;
        f[1][0] = -2;
        let g = gen_mcgarvey(&f).unwrap();
        assert_eq!(g.profile.num_votes(), 2);
        let d = pairwise_margins(&g.profile);
        assert_eq!((d.get(0, 1), d.get(0, 2), d.get(1, 2)), (2, 0, 0));
    }

    #[test]
    fn mixed_parity_is_padded() {
        let f = vec![vec![0, 1, 2], vec![-1, 0, 0], vec![-2, 0, 0]];
        let g = gen_mcgarvey(&f).unwrap();
        assert!(g.padded);
        assert_eq!(g.targets, vec![vec![0, 1, 3], vec![-1, 0, 1], vec![-3, -1, 0]]);
        let d = pairwise_margins(&g.profile);
        assert_eq!((d.get(0, 1), d.get(0, 2), d.get(1, 2)), (1, 3, 1));
    }

    #[test]
    fn asymmetric_table_is_rejected() {
        assert!(gen_mcgarvey(&[vec![0, 2], vec![2, 0]]).is_err());
    }

    #[test]
    fn plurality_margin_election_is_seventy_thirty() {
        let g = gen_margin_election(2, 100, &Rule::Plurality, 0.2, 1).unwrap();
        let first_a = g.profile.ballots().iter().filter(|b| b.ranking[0] == 0).count();
        assert_eq!(first_a, 70);
        assert_eq!(plurality_mov(&g.profile), Ok(21));
    }

    #[test]
    fn small_borda_election_is_certified_exactly() {
        let g = gen_margin_election(3, 8, &Rule::Borda, 0.1, 3).unwrap();
        assert_eq!(g.certificate.method, CertificateMethod::Exact);
        assert!(g.certificate.mov_lower_bound >= 1);
        assert_eq!(exact_mov(&g.profile, &Rule::Borda), Ok(g.certificate.mov_lower_bound));
    }
}
