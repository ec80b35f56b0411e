use std::collections::BTreeMap;

use super::Profile;

/// Which additive summary of the ballots a rule needs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TallyKind {
    /// `positions[x][j]`: weight of ballots ranking `x` at position `j`.
    Positions,
    /// `pairwise[x][y]`: weight of ballots ranking `x` above `y`.
    Pairwise,
    PositionsAndPairwise,
    /// The multiset of rankings itself.
    Ballots,
}

/// Additive summary of a set of ballots. Adding and removing ballots are exact,
/// so equal tallies always yield equal outcomes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tally {
    kind: TallyKind,
    m: usize,
    total: i64,
    positions: Vec<i64>,
    pairwise: Vec<i64>,
    ballots: BTreeMap<Vec<usize>, i64>,
}

impl Tally {
    pub fn new(kind: TallyKind, m: usize) -> Self {
        let pos = matches!(kind, TallyKind::Positions | TallyKind::PositionsAndPairwise);
        let pair = matches!(kind, TallyKind::Pairwise | TallyKind::PositionsAndPairwise);
        Tally {
            kind,
            m,
            total: 0,
            positions: if pos { vec![0; m * m] } else { Vec::new() },
            pairwise: if pair { vec![0; m * m] } else { Vec::new() },
            ballots: BTreeMap::new(),
        }
    }

    pub fn from_profile(kind: TallyKind, profile: &Profile) -> Self {
        let mut t = Tally::new(kind, profile.num_candidates());
        for b in profile.ballots() {
            t.add(&b.ranking, b.weight as i64);
        }
        t
    }

    pub fn kind(&self) -> TallyKind {
        self.kind
    }

    pub fn num_candidates(&self) -> usize {
        self.m
    }

    pub fn total(&self) -> i64 {
        self.total
    }

    /// Adds `weight` copies of `ranking`; negative weights remove ballots.
    pub fn add(&mut self, ranking: &[usize], weight: i64) {
        let m = self.m;
        self.total += weight;
        if !self.positions.is_empty() {
            for (j, &c) in ranking.iter().enumerate() {
                self.positions[c * m + j] += weight;
            }
        }
        if !self.pairwise.is_empty() {
            for (i, &x) in ranking.iter().enumerate() {
                for &y in &ranking[i + 1..] {
                    self.pairwise[x * m + y] += weight;
                }
            }
        }
        if self.kind == TallyKind::Ballots {
            let e = self.ballots.entry(ranking.to_vec()).or_insert(0);
            *e += weight;
            if *e == 0 {
                self.ballots.remove(ranking);
            }
        }
    }

    /// `self += sign * other`.
    pub fn merge(&mut self, other: &Tally, sign: i64) {
        debug_assert_eq!((self.kind, self.m), (other.kind, other.m));
        self.total += sign * other.total;
        for (a, b) in self.positions.iter_mut().zip(&other.positions) {
            *a += sign * b;
        }
        for (a, b) in self.pairwise.iter_mut().zip(&other.pairwise) {
            *a += sign * b;
        }
        for (r, &w) in &other.ballots {
            let e = self.ballots.entry(r.clone()).or_insert(0);
            *e += sign * w;
            if *e == 0 {
                self.ballots.remove(r);
            }
        }
    }

    pub fn position_count(&self, c: usize, j: usize) -> i64 {
        self.positions[c * self.m + j]
    }

    /// Weight of ballots placing `c` within the top `depth` positions.
    pub fn top_count(&self, c: usize, depth: usize) -> i64 {
        self.positions[c * self.m..c * self.m + depth].iter().sum()
    }

    /// Weight of ballots ranking `x` above `y`.
    pub fn prefer(&self, x: usize, y: usize) -> i64 {
        self.pairwise[x * self.m + y]
    }

    /// Pairwise margin `N(x,y) - N(y,x)`.
    pub fn margin(&self, x: usize, y: usize) -> i64 {
        self.prefer(x, y) - self.prefer(y, x)
    }

    pub fn ballots(&self) -> &BTreeMap<Vec<usize>, i64> {
        &self.ballots
    }
}

/// Antisymmetric pairwise margin matrix `d(x,y) = N(x,y) - N(y,x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarginMatrix {
    m: usize,
    d: Vec<i64>,
}

impl MarginMatrix {
    pub fn from_tally(t: &Tally) -> Self {
        let m = t.num_candidates();
        let mut d = vec![0; m * m];
        for x in 0..m {
            for y in 0..m {
                if x != y {
                    d[x * m + y] = t.margin(x, y);
                }
            }
        }
        MarginMatrix { m, d }
    }

    pub fn num_candidates(&self) -> usize {
        self.m
    }

    pub fn get(&self, x: usize, y: usize) -> i64 {
        self.d[x * self.m + y]
    }
}

pub fn pairwise_margins(profile: &Profile) -> MarginMatrix {
    MarginMatrix::from_tally(&Tally::from_profile(TallyKind::Pairwise, profile))
}

/// The candidate beating every other candidate pairwise, if any.
pub fn condorcet_winner(profile: &Profile) -> Option<usize> {
    let d = pairwise_margins(profile);
    let m = d.num_candidates();
    (0..m).find(|&x| (0..m).all(|y| y == x || d.get(x, y) > 0))
}
