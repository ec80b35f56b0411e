use std::collections::HashMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::{Error, ParseErrorKind, Result};

/// One (possibly weighted) complete ranking; `ranking[0]` is the top choice.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Ballot {
    pub ranking: Vec<usize>,
    pub weight: u64,
}

/// Fixed lexicographic order over candidate identifiers used to break every tie.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TieBreak {
    rank: Vec<usize>,
}

impl TieBreak {
    pub fn from_names<S: AsRef<str>>(names: &[S]) -> Self {
        let mut order: Vec<usize> = (0..names.len()).collect();
        order.sort_by(|&a, &b| names[a].as_ref().cmp(names[b].as_ref()));
        let mut rank = vec![0; names.len()];
        for (r, &c) in order.iter().enumerate() {
            rank[c] = r;
        }
        TieBreak { rank }
    }

    /// Identity order, candidate 0 first.
    pub fn by_index(m: usize) -> Self {
        TieBreak { rank: (0..m).collect() }
    }

    pub fn len(&self) -> usize {
        self.rank.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rank.is_empty()
    }

    pub fn rank(&self, c: usize) -> usize {
        self.rank[c]
    }

    /// True if `a` wins a tie against `b`.
    pub fn precedes(&self, a: usize, b: usize) -> bool {
        self.rank[a] < self.rank[b]
    }

    /// Best candidate under `better`, ties resolved in favour of the earlier identifier.
    pub fn argmax_by<T, I, F>(&self, candidates: I, mut key: F) -> Option<usize>
    where
        I: IntoIterator<Item = usize>,
        F: FnMut(usize) -> T,
        T: PartialOrd,
    {
        let mut best: Option<(usize, T)> = None;
        for c in candidates {
            let k = key(c);
            best = match best {
                None => Some((c, k)),
                Some((b, bk)) => {
                    if k > bk || (k == bk && self.precedes(c, b)) {
                        Some((c, k))
                    } else {
                        Some((b, bk))
                    }
                }
            };
        }
        best.map(|(c, _)| c)
    }

    /// Candidate to eliminate: smallest key, ties resolved against the later identifier.
    pub fn argmin_eliminate<T, I, F>(&self, candidates: I, mut key: F) -> Option<usize>
    where
        I: IntoIterator<Item = usize>,
        F: FnMut(usize) -> T,
        T: PartialOrd,
    {
        let mut worst: Option<(usize, T)> = None;
        for c in candidates {
            let k = key(c);
            worst = match worst {
                None => Some((c, k)),
                Some((b, bk)) => {
                    if k < bk || (k == bk && self.precedes(b, c)) {
                        Some((c, k))
                    } else {
                        Some((b, bk))
                    }
                }
            };
        }
        worst.map(|(c, _)| c)
    }
}

/// A list of complete rankings over a fixed candidate set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Profile {
    candidates: Vec<String>,
    ballots: Vec<Ballot>,
    tie: TieBreak,
}

pub(crate) fn valid_identifier(s: &str) -> bool {
    !s.is_empty()
        && s.bytes()
            .all(|b| b.is_ascii_graphic() && !matches!(b, b',' | b'>' | b':' | b'#'))
}

fn is_permutation(ranking: &[usize], m: usize) -> bool {
    if ranking.len() != m {
        return false;
    }
    let mut seen = vec![false; m];
    ranking.iter().all(|&c| c < m && !std::mem::replace(&mut seen[c], true))
}

impl Profile {
    pub fn new(candidates: Vec<String>, ballots: Vec<Ballot>) -> Result<Self> {
        if candidates.is_empty() {
            return Err(Error::InvalidParameter("no candidates".into()));
        }
        let mut seen = HashMap::new();
        for name in &candidates {
            if !valid_identifier(name) {
                return Err(Error::InvalidParameter(format!("invalid identifier `{name}`")));
            }
            if seen.insert(name.as_str(), ()).is_some() {
                return Err(Error::InvalidParameter(format!("duplicate candidate `{name}`")));
            }
        }
        let m = candidates.len();
        for b in &ballots {
            if b.weight == 0 {
                return Err(Error::InvalidParameter("ballot weight must be positive".into()));
            }
            if !is_permutation(&b.ranking, m) {
                return Err(Error::InvalidParameter(format!(
                    "ballot {:?} is not a ranking of {m} candidates",
                    b.ranking
                )));
            }
        }
        let tie = TieBreak::from_names(&candidates);
        Ok(Profile { candidates, ballots, tie })
    }

    /// Unweighted profile from index rankings.
    pub fn from_rankings<S: Into<String>>(
        candidates: impl IntoIterator<Item = S>,
        rankings: impl IntoIterator<Item = Vec<usize>>,
    ) -> Result<Self> {
        let candidates = candidates.into_iter().map(Into::into).collect();
        let ballots = rankings.into_iter().map(|ranking| Ballot { ranking, weight: 1 }).collect();
        Profile::new(candidates, ballots)
    }

    /// Candidate names `a, b, c, ...` (or `c0, c1, ...` beyond 26).
    pub fn default_names(m: usize) -> Vec<String> {
        if m <= 26 {
            (0..m).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
        } else {
            (0..m).map(|i| format!("c{i}")).collect()
        }
    }

    pub fn num_candidates(&self) -> usize {
        self.candidates.len()
    }

    /// Total weight of all ballots.
    pub fn num_votes(&self) -> u64 {
        self.ballots.iter().map(|b| b.weight).sum()
    }

    pub fn candidates(&self) -> &[String] {
        &self.candidates
    }

    pub fn name(&self, c: usize) -> &str {
        &self.candidates[c]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.candidates.iter().position(|c| c == name)
    }

    pub fn ballots(&self) -> &[Ballot] {
        &self.ballots
    }

    pub fn tie_break(&self) -> &TieBreak {
        &self.tie
    }

    pub fn is_unweighted(&self) -> bool {
        self.ballots.iter().all(|b| b.weight == 1)
    }

    /// Same candidates, different ballots.
    pub fn with_ballots(&self, ballots: Vec<Ballot>) -> Result<Self> {
        Profile::new(self.candidates.clone(), ballots)
    }

    /// Every ballot repeated `weight` times with weight one.
    pub fn expanded(&self) -> Profile {
        let ballots = self
            .ballots
            .iter()
            .flat_map(|b| {
                std::iter::repeat_n(Ballot { ranking: b.ranking.clone(), weight: 1 }, b.weight as usize)
            })
            .collect();
        Profile { candidates: self.candidates.clone(), ballots, tie: self.tie.clone() }
    }

    /// Parses the vote-file format:
    ///
    /// ```text
    /// candidates: a,b,c
    /// a>b>c
    /// 3: c>a>b   # weight 3
    /// ```
    pub fn parse(text: &str) -> Result<Self> {
        let err = |line: usize, kind| Error::Parse { line, kind };
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());

        let (hline, header) = lines.next().ok_or(err(1, ParseErrorKind::MissingHeader))?;
        let list = header
            .strip_prefix("candidates")
            .and_then(|r| r.trim_start().strip_prefix(':'))
            .ok_or(err(hline, ParseErrorKind::MissingHeader))?;
        let mut candidates = Vec::new();
        let mut index = HashMap::new();
        for tok in list.split(',').map(str::trim) {
            if !valid_identifier(tok) {
                return Err(err(hline, ParseErrorKind::InvalidIdentifier(tok.into())));
            }
            if index.insert(tok.to_string(), candidates.len()).is_some() {
                return Err(err(hline, ParseErrorKind::DuplicateCandidate(tok.into())));
            }
            candidates.push(tok.to_string());
        }
        let m = candidates.len();

        let mut ballots = Vec::new();
        for (no, line) in lines {
            let (weight, body) = match line.split_once(':') {
                Some((w, body)) => {
                    let w = w.trim();
                    let weight = match w.parse::<i128>() {
                        Ok(v) if v > 0 && v <= u64::MAX as i128 => v as u64,
                        Ok(_) => return Err(err(no, ParseErrorKind::NonpositiveWeight(w.into()))),
                        Err(_) => return Err(err(no, ParseErrorKind::Malformed(line.into()))),
                    };
                    (weight, body)
                }
                None => (1, line),
            };
            let mut ranking = Vec::with_capacity(m);
            let mut used = vec![false; m];
            for tok in body.split('>').map(str::trim) {
                if !valid_identifier(tok) {
                    return Err(err(no, ParseErrorKind::Malformed(line.into())));
                }
                let c = *index
                    .get(tok)
                    .ok_or_else(|| err(no, ParseErrorKind::UnknownCandidate(tok.into())))?;
                if std::mem::replace(&mut used[c], true) {
                    return Err(err(no, ParseErrorKind::DuplicateCandidate(tok.into())));
                }
                ranking.push(c);
            }
            if ranking.len() != m {
                return Err(err(no, ParseErrorKind::IncompleteRanking));
            }
            ballots.push(Ballot { ranking, weight });
        }
        Profile::new(candidates, ballots)
    }

    /// Writes the vote-file format; `Profile::parse(&p.emit()) == p`.
    pub fn emit(&self) -> String {
        let mut out = format!("candidates: {}\n", self.candidates.join(","));
        for b in &self.ballots {
            if b.weight != 1 {
                let _ = write!(out, "{}: ", b.weight);
            }
            let names: Vec<&str> = b.ranking.iter().map(|&c| self.name(c)).collect();
            out.push_str(&names.join(">"));
            out.push('\n');
        }
        out
    }
}
