//! Reference implementations written straight from the rule definitions.
//! They work on plain lists of rankings and share no code with the library.

#![allow(dead_code)]

use std::collections::BTreeSet;

/// Rule description for the reference evaluator. Copeland's alpha is given
/// in halves so every score stays an integer.
#[derive(Debug, Clone, PartialEq)]
pub enum RefRule {
    Scoring(Vec<i64>),
    Maximin,
    CopelandHalves(i64),
    Bucklin,
    Runoff,
    Stv,
}

/// Lexicographic rank of each candidate name.
pub fn lex_rank(names: &[String]) -> Vec<usize> {
    (0..names.len()).map(|c| names.iter().filter(|o| *o < &names[c]).count()).collect()
}

fn position(r: &[usize], c: usize) -> usize {
    r.iter().position(|&x| x == c).unwrap()
}

/// Number of votes preferring `x` to `y`.
pub fn prefers(votes: &[Vec<usize>], x: usize, y: usize) -> i64 {
    votes.iter().filter(|r| position(r, x) < position(r, y)).count() as i64
}

pub fn margin(votes: &[Vec<usize>], x: usize, y: usize) -> i64 {
    prefers(votes, x, y) - prefers(votes, y, x)
}

fn best(cands: &[usize], key: &dyn Fn(usize) -> i64, lex: &[usize]) -> (usize, Vec<usize>) {
    let top = cands.iter().map(|&c| key(c)).max().unwrap();
    let mut tied: Vec<usize> = cands.iter().copied().filter(|&c| key(c) == top).collect();
    tied.sort_by_key(|&c| lex[c]);
    (tied[0], tied)
}

/// `(tie-broken winner, co-winners)`; sequential rules report only the winner.
pub fn winner(votes: &[Vec<usize>], m: usize, rule: &RefRule, lex: &[usize]) -> (usize, Vec<usize>) {
    let all: Vec<usize> = (0..m).collect();
    match rule {
        RefRule::Scoring(alpha) => {
            let score = |c: usize| votes.iter().map(|r| alpha[position(r, c)]).sum::<i64>();
            best(&all, &score, lex)
        }
        RefRule::Maximin => {
            let score = |c: usize| (0..m).filter(|&y| y != c).map(|y| margin(votes, c, y)).min().unwrap_or(0);
            best(&all, &score, lex)
        }
        RefRule::CopelandHalves(h) => {
            let score = |c: usize| {
                (0..m)
                    .filter(|&y| y != c)
                    .map(|y| match margin(votes, c, y) {
                        d if d > 0 => 2,
                        0 => *h,
                        _ => 0,
                    })
                    .sum::<i64>()
            };
            best(&all, &score, lex)
        }
        RefRule::Bucklin => {
            let n = votes.len() as i64;
            for depth in 1..=m {
                let count = |c: usize| votes.iter().filter(|r| position(r, c) < depth).count() as i64;
                let mut maj: Vec<usize> = all.iter().copied().filter(|&c| 2 * count(c) > n).collect();
                if !maj.is_empty() {
                    maj.sort_by_key(|&c| lex[c]);
                    return (maj[0], maj);
                }
            }
            unreachable!("everyone has a majority at full depth")
        }
        RefRule::Runoff => {
            if m == 1 {
                return (0, vec![0]);
            }
            let first = |c: usize| votes.iter().filter(|r| r[0] == c).count() as i64;
            let mut order = all.clone();
            order.sort_by_key(|&c| (-first(c), lex[c]));
            let (a, b) = (order[0], order[1]);
            let d = margin(votes, a, b);
            let w = if d > 0 || (d == 0 && lex[a] < lex[b]) { a } else { b };
            (w, vec![w])
        }
        RefRule::Stv => {
            let mut alive = all.clone();
            while alive.len() > 1 {
                let tally = |c: usize| {
                    votes.iter().filter(|r| *r.iter().find(|x| alive.contains(x)).unwrap() == c).count() as i64
                };
                let low = alive.iter().map(|&c| tally(c)).min().unwrap();
                let out = *alive.iter().filter(|&&c| tally(c) == low).max_by_key(|&&c| lex[c]).unwrap();
                alive.retain(|&c| c != out);
            }
            (alive[0], alive)
        }
    }
}

pub fn all_rankings(m: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for r in all_rankings(m - 1) {
        for pos in 0..=r.len() {
            let mut v = r.clone();
            v.insert(pos, m - 1);
            out.push(v);
        }
    }
    out
}

/// Margin of victory by enumerating every choice of replaced votes and every
/// assignment of new rankings. Exponential; keep `n` and `m` tiny.
pub fn mov(votes: &[Vec<usize>], m: usize, rule: &RefRule, lex: &[usize], co_winner: bool) -> Option<u64> {
    let (w, co) = winner(votes, m, rule, lex);
    let changed = |vs: &[Vec<usize>]| {
        let (w2, co2) = winner(vs, m, rule, lex);
        if co_winner { co2 != vec![w] } else { w2 != w }
    };
    if co_winner && co != vec![w] {
        return Some(0);
    }
    let perms = all_rankings(m);
    let n = votes.len();
    for t in 1..=n {
        let mut found = false;
        for_each_subset(n, t, &mut |idx: &[usize]| {
            if found {
                return;
            }
            let mut choice = vec![0usize; t];
            loop {
                let mut vs = votes.to_vec();
                for (k, &i) in idx.iter().enumerate() {
                    vs[i] = perms[choice[k]].clone();
                }
                if changed(&vs) {
                    found = true;
                    return;
                }
                let mut k = 0;
                while k < t && choice[k] + 1 == perms.len() {
                    choice[k] = 0;
                    k += 1;
                }
                if k == t {
                    break;
                }
                choice[k] += 1;
            }
        });
        if found {
            return Some(t as u64);
        }
    }
    None
}

fn for_each_subset(n: usize, t: usize, f: &mut dyn FnMut(&[usize])) {
    fn rec(start: usize, n: usize, t: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == t {
            f(cur);
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, t, cur, f);
            cur.pop();
        }
    }
    rec(0, n, t, &mut Vec::new(), f);
}

/// `n_l(x)`: votes placing `x` within the top `l`.
pub fn top_count(votes: &[Vec<usize>], x: usize, l: usize) -> i64 {
    votes.iter().filter(|r| position(r, x) < l).count() as i64
}

/// Bucklin `Δ` from its definition.
pub fn bucklin_delta(votes: &[Vec<usize>], m: usize, lex: &[usize]) -> Option<i64> {
    let n = votes.len() as i64;
    let (w, _) = winner(votes, m, &RefRule::Bucklin, lex);
    let mut best: Option<i64> = None;
    for l in 1..m {
        if 2 * top_count(votes, w, l) <= n {
            continue;
        }
        for x in (0..m).filter(|&x| x != w) {
            if 2 * top_count(votes, x, l) <= n {
                let d = top_count(votes, w, l) - top_count(votes, x, l) + 1;
                best = Some(best.map_or(d, |b: i64| b.min(d)));
            }
        }
    }
    best
}

/// Copeland `Γ` by scanning every integer shift, alpha in halves.
pub fn copeland_gamma(votes: &[Vec<usize>], m: usize, halves: i64, lex: &[usize]) -> i64 {
    let n = votes.len() as i64;
    let (w, _) = winner(votes, m, &RefRule::CopelandHalves(halves), lex);
    // Twice s'_t(x).
    let shifted = |x: usize, t: i64| -> i64 {
        (0..m)
            .filter(|&y| y != x)
            .map(|y| {
                let d = margin(votes, y, x);
                if d < 2 * t {
                    2
                } else if d == 2 * t {
                    halves
                } else {
                    0
                }
            })
            .sum()
    };
    (0..m)
        .filter(|&x| x != w)
        .map(|x| (-n - 2..=n + 2).find(|&t| shifted(w, -t) <= shifted(x, t)).unwrap())
        .min()
        .unwrap()
}

pub fn names(m: usize) -> Vec<String> {
    (0..m).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
}

/// Plurality margin of victory by simulating ballot moves to each challenger.
pub fn plurality_mov(votes: &[Vec<usize>], m: usize, lex: &[usize]) -> u64 {
    let first: Vec<i64> = (0..m).map(|c| votes.iter().filter(|r| r[0] == c).count() as i64).collect();
    let (w, _) = winner(votes, m, &RefRule::Scoring((0..m).map(|i| (i == 0) as i64).collect()), lex);
    let lead = |s: &[i64]| best(&(0..m).collect::<Vec<_>>(), &|c| s[c], lex).0;
    (0..m)
        .filter(|&c| c != w)
        .map(|c| {
            let mut s = first.clone();
            let mut t = 0;
            while lead(&s) != c {
                s[w] -= 1;
                s[c] += 1;
                t += 1;
            }
            t
        })
        .min()
        .unwrap()
}

/// Set view of a co-winner list.
pub fn as_set(v: &[usize]) -> BTreeSet<usize> {
    v.iter().copied().collect()
}
