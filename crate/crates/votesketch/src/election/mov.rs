//! Margin of victory: exact brute force, the plurality move-votes oracle,
//! and the structural quantities used by the sampled estimators.

use std::collections::HashSet;

use serde::Serialize;

use super::rules::{score_to_f64, Bucklin, Score};
use super::tally::{Tally, TallyKind};
use super::{evaluate_rule, Profile, Rule, TieBreak, VotingRule};
use crate::{Error, Result};

/// What counts as "changing the winner".
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MovSemantics {
    /// The tie-broken winner differs from the original one.
    #[default]
    TieBroken,
    /// The original winner is no longer the unique co-winner. Zero when the
    /// original election already has several co-winners.
    CoWinner,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BruteForceLimits {
    pub max_candidates: usize,
    pub max_votes: u64,
}

impl Default for BruteForceLimits {
    fn default() -> Self {
        BruteForceLimits { max_candidates: 4, max_votes: 10 }
    }
}

/// All permutations of `0..m` in lexicographic order.
pub fn permutations(m: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for c in 0..used.len() {
            if !used[c] {
                used[c] = true;
                prefix.push(c);
                rec(prefix, used, out);
                prefix.pop();
                used[c] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::with_capacity(m), &mut vec![false; m], &mut out);
    out
}

/// Tallies of every sub-multiset of size `t` drawn from `groups` (ranking, multiplicity).
fn removal_tallies(groups: &[(Vec<usize>, u64)], t: u64, kind: TallyKind, m: usize) -> HashSet<Tally> {
    fn rec(
        groups: &[(Vec<usize>, u64)],
        i: usize,
        left: u64,
        acc: &mut Tally,
        out: &mut HashSet<Tally>,
    ) {
        if left == 0 {
            out.insert(acc.clone());
            return;
        }
        if i == groups.len() {
            return;
        }
        let (ranking, avail) = &groups[i];
        for take in 0..=left.min(*avail) {
            acc.add(ranking, take as i64);
            rec(groups, i + 1, left - take, acc, out);
            acc.add(ranking, -(take as i64));
        }
    }
    let mut out = HashSet::new();
    rec(groups, 0, t, &mut Tally::new(kind, m), &mut out);
    out
}

/// Smallest number of votes whose replacement changes the winner, by exhaustive
/// search over which votes are replaced and by which rankings.
pub fn exact_mov(profile: &Profile, rule: &Rule) -> Result<u64> {
    exact_mov_with(profile, rule, MovSemantics::TieBroken, BruteForceLimits::default())
}

pub fn exact_mov_with(
    profile: &Profile,
    rule: &Rule,
    semantics: MovSemantics,
    limits: BruteForceLimits,
) -> Result<u64> {
    let m = profile.num_candidates();
    let n = profile.num_votes();
    if !profile.is_unweighted() {
        return Err(Error::Unsupported("exact margin of victory needs an unweighted profile".into()));
    }
    if m > limits.max_candidates || n > limits.max_votes {
        return Err(Error::TooLarge(format!(
            "m = {m}, n = {n} exceeds m <= {}, n <= {}",
            limits.max_candidates, limits.max_votes
        )));
    }
    if n == 0 {
        return Err(Error::EmptyProfile);
    }
    let strategy = rule.strategy(m)?;
    let kind = strategy.tally_kind();
    let tie = profile.tie_break();
    let base = Tally::from_profile(kind, profile);
    let original = strategy.decide(&base, tie);
    let w = original.winner;
    let changed = |t: &Tally| {
        let r = strategy.decide(t, tie);
        match semantics {
            MovSemantics::TieBroken => r.winner != w,
            MovSemantics::CoWinner => r.co_winners != [w],
        }
    };
    if changed(&base) {
        return Ok(0);
    }

    let mut groups: Vec<(Vec<usize>, u64)> = Vec::new();
    for b in profile.ballots() {
        match groups.iter_mut().find(|(r, _)| *r == b.ranking) {
            Some(g) => g.1 += 1,
            None => groups.push((b.ranking.clone(), 1)),
        }
    }
    let unit: Vec<Tally> = permutations(m)
        .iter()
        .map(|r| {
            let mut t = Tally::new(kind, m);
            t.add(r, 1);
            t
        })
        .collect();

    let mut additions: HashSet<Tally> = HashSet::from([Tally::new(kind, m)]);
    for t in 1..=n {
        additions = additions
            .iter()
            .flat_map(|a| {
                unit.iter().map(move |u| {
                    let mut s = a.clone();
                    s.merge(u, 1);
                    s
                })
            })
            .collect();
        for removed in removal_tallies(&groups, t, kind, m) {
            let mut rest = base.clone();
            rest.merge(&removed, -1);
            for added in &additions {
                let mut cand = rest.clone();
                cand.merge(added, 1);
                if changed(&cand) {
                    return Ok(t);
                }
            }
        }
    }
    Err(Error::Degenerate("no replacement of votes changes the winner".into()))
}

/// Plurality margin of victory for any number of votes: the fewest ballots
/// that must move from the winner to a single challenger before the
/// challenger becomes the tie-broken winner.
pub fn plurality_mov(profile: &Profile) -> Result<u64> {
    let m = profile.num_candidates();
    if m < 2 {
        return Err(Error::Degenerate("a single candidate always wins".into()));
    }
    let r = evaluate_rule(profile, &Rule::Plurality)?;
    let s: Vec<i64> = r.scores.iter().map(|x| x.to_integer()).collect();
    let tie = profile.tie_break();
    let w = r.winner;
    (0..m)
        .filter(|&c| c != w)
        .map(|c| plurality_moves_to(&s, tie, w, c))
        .min()
        .ok_or_else(|| Error::Degenerate("no challenger".into()))
}

fn plurality_moves_to(s: &[i64], tie: &TieBreak, w: usize, c: usize) -> u64 {
    let mut scores = s.to_vec();
    let mut t = 0u64;
    loop {
        let leader = tie.argmax_by(0..scores.len(), |x| scores[x]).unwrap();
        if leader == c {
            return t;
        }
        scores[w] -= 1;
        scores[c] += 1;
        t += 1;
    }
}

/// Best and runner-up by score: the tie-broken winner `w` and the best
/// remaining candidate `z`, with `s(w) - s(z)`.
pub fn top_two_gap(scores: &[Score], tie: &TieBreak) -> Option<(usize, usize, Score)> {
    let m = scores.len();
    let w = tie.argmax_by(0..m, |c| scores[c])?;
    let z = tie.argmax_by((0..m).filter(|&c| c != w), |c| scores[c])?;
    Some((w, z, scores[w] - scores[z]))
}

/// The Bucklin quantity `Δ`: minimum over depths `l < m` where the winner has
/// a strict majority, and challengers `x` without one, of
/// `n_l(w) - n_l(x) + 1`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BucklinDelta {
    pub winner: usize,
    pub delta: f64,
    pub depth: usize,
    pub challenger: usize,
}

/// `counts[x][l-1]` is the (possibly estimated) weight placing `x` within the top `l`.
pub fn bucklin_delta_from_counts(counts: &[Vec<f64>], n: f64, winner: usize) -> Option<BucklinDelta> {
    let m = counts.len();
    let mut best: Option<BucklinDelta> = None;
    for l in 1..m {
        let nw = counts[winner][l - 1];
        if nw <= n / 2.0 {
            continue;
        }
        for x in (0..m).filter(|&x| x != winner) {
            let nx = counts[x][l - 1];
            if nx > n / 2.0 {
                continue;
            }
            let delta = nw - nx + 1.0;
            if best.as_ref().is_none_or(|b| delta < b.delta) {
                best = Some(BucklinDelta { winner, delta, depth: l, challenger: x });
            }
        }
    }
    best
}

pub fn bucklin_delta(profile: &Profile) -> Result<BucklinDelta> {
    let m = profile.num_candidates();
    let t = Tally::from_profile(TallyKind::Positions, profile);
    if t.total() == 0 {
        return Err(Error::EmptyProfile);
    }
    let winner = Bucklin.decide(&t, profile.tie_break()).winner;
    let counts: Vec<Vec<f64>> =
        (0..m).map(|c| (1..=m).map(|l| t.top_count(c, l) as f64).collect()).collect();
    bucklin_delta_from_counts(&counts, t.total() as f64, winner)
        .ok_or_else(|| Error::Degenerate("no depth separates the Bucklin winner from a challenger".into()))
}

/// `s'_t(x) = |{y : D(y,x) < 2t}| + alpha * |{y : D(y,x) = 2t}|`.
fn shifted_copeland(d: &dyn Fn(usize, usize) -> f64, m: usize, alpha: f64, x: usize, t: i64) -> f64 {
    let two_t = 2.0 * t as f64;
    (0..m)
        .filter(|&y| y != x)
        .map(|y| {
            let v = d(y, x);
            if v < two_t {
                1.0
            } else if v == two_t {
                alpha
            } else {
                0.0
            }
        })
        .sum()
}

/// Copeland relative margin `RM(x,y)`: the least integer `t` with
/// `s'_{-t}(x) <= s'_t(y)`. `d(a,b)` is the pairwise margin and `n` bounds
/// its magnitude.
pub fn relative_margin(d: &dyn Fn(usize, usize) -> f64, m: usize, alpha: f64, n: f64, x: usize, y: usize) -> i64 {
    let holds = |t: i64| shifted_copeland(d, m, alpha, x, -t) <= shifted_copeland(d, m, alpha, y, t);
    let bound = (n / 2.0).ceil() as i64 + 2;
    let (mut lo, mut hi) = (-bound, bound);
    if holds(lo) {
        return lo;
    }
    // Invariant: !holds(lo) && holds(hi); the predicate is monotone in t.
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if holds(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CopelandMargins {
    pub winner: usize,
    /// `RM(w, x)` per candidate; `None` at the winner.
    pub relative: Vec<Option<i64>>,
    /// `Γ = min_x RM(w, x)`.
    pub gamma: i64,
    pub challenger: usize,
}

pub fn copeland_margins_from(
    d: &dyn Fn(usize, usize) -> f64,
    m: usize,
    alpha: f64,
    n: f64,
    winner: usize,
    tie: &TieBreak,
) -> Option<CopelandMargins> {
    let relative: Vec<Option<i64>> = (0..m)
        .map(|x| (x != winner).then(|| relative_margin(d, m, alpha, n, winner, x)))
        .collect();
    let challenger = tie.argmax_by((0..m).filter(|&x| x != winner), |x| -relative[x].unwrap())?;
    Some(CopelandMargins { winner, gamma: relative[challenger].unwrap(), relative, challenger })
}

pub fn copeland_margins(profile: &Profile, alpha: Score) -> Result<CopelandMargins> {
    let m = profile.num_candidates();
    let result = evaluate_rule(profile, &Rule::Copeland { alpha })?;
    let t = Tally::from_profile(TallyKind::Pairwise, profile);
    let d = |a: usize, b: usize| t.margin(a, b) as f64;
    copeland_margins_from(&d, m, score_to_f64(&alpha), t.total() as f64, result.winner, profile.tie_break())
        .ok_or_else(|| Error::Degenerate("a single candidate always wins".into()))
}
