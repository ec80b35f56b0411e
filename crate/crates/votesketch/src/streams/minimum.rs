use std::collections::HashMap;

use rand::{Rng, RngCore};
use serde::Serialize;

use super::select::PowerOfTwoCoin;
use super::{SketchFactory, StreamSketch};
use crate::rng::{fork, SketchRng};
use crate::{Error, Result};

/// Which part of the sketch produced the answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MinimumSource {
    /// The universe is large enough that any of its first items is ε-minimal.
    LargeUniverse,
    /// The item was never sampled into the presence vector.
    Unseen,
    /// Exact counts of a sample, kept while few distinct items appear.
    SmallSupport,
    /// Truncated counts of a sample.
    Counts,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MinimumReport {
    pub item: u64,
    pub source: MinimumSource,
}

/// ε-minimum over a known universe: an item whose frequency is within `εm`
/// of the least frequent universe item.
///
/// Three independent samples feed a presence vector `S1`, an exact count
/// table `S2` (dropped once more than `1/(ε log2(1/ε))` distinct items have
/// appeared) and a table `S3` of counts truncated at `2 log2^7(2/(εδ))`.
#[derive(Debug, Clone)]
pub struct EpsMinimum {
    universe: Vec<u64>,
    index: HashMap<u64, usize>,
    coins: [PowerOfTwoCoin; 3],
    large_pick: Option<usize>,
    s1: Vec<bool>,
    s2: Option<HashMap<usize, u64>>,
    s3: HashMap<usize, u64>,
    s3_cap: u64,
    appeared: Vec<bool>,
    distinct: usize,
    distinct_cap: f64,
    sampled: u64,
    rng: SketchRng,
}

impl EpsMinimum {
    pub fn new(universe: Vec<u64>, eps: f64, delta: f64, stream_len: u64, rng: SketchRng) -> Result<Self> {
        Self::with_budget_scale(universe, eps, delta, stream_len, 1.0, rng)
    }

    pub fn with_budget_scale(
        universe: Vec<u64>,
        eps: f64,
        delta: f64,
        stream_len: u64,
        budget_scale: f64,
        mut rng: SketchRng,
    ) -> Result<Self> {
        if !(eps > 0.0 && eps < 1.0) || !(delta > 0.0 && delta < 1.0) {
            return Err(Error::InvalidParameter(format!("need 0 < eps, delta < 1, got {eps}, {delta}")));
        }
        if universe.is_empty() || stream_len == 0 {
            return Err(Error::InvalidParameter("universe and stream length must be nonempty".into()));
        }
        let mut index = HashMap::with_capacity(universe.len());
        for (i, &x) in universe.iter().enumerate() {
            if index.insert(x, i).is_some() {
                return Err(Error::InvalidParameter(format!("duplicate universe item {x}")));
            }
        }
        let log2 = f64::log2;
        let budgets = [
            log2(6.0 / (eps * delta)) / eps,
            log2(6.0 / delta) / (eps * eps),
            log2(6.0 / (delta * eps)).powi(6) / eps,
        ];
        let rate = |l: f64| PowerOfTwoCoin::for_rate(6.0 * l * budget_scale / stream_len as f64);
        let coins = [rate(budgets[0])?, rate(budgets[1])?, rate(budgets[2])?];
        let large = 1.0 / ((1.0 - delta) * eps);
        let large_pick =
            (universe.len() as f64 >= large).then(|| rng.random_range(0..(large.ceil() as usize).min(universe.len())));
        let m = universe.len();
        Ok(EpsMinimum {
            universe,
            index,
            coins,
            large_pick,
            s1: vec![false; m],
            s2: Some(HashMap::new()),
            s3: HashMap::new(),
            s3_cap: (2.0 * log2(2.0 / (eps * delta)).powi(7)).ceil() as u64,
            appeared: vec![false; m],
            distinct: 0,
            distinct_cap: 1.0 / (eps * log2(1.0 / eps)),
            sampled: 0,
            rng,
        })
    }

    pub fn s2_active(&self) -> bool {
        self.s2.is_some()
    }

    pub fn s3_cap(&self) -> u64 {
        self.s3_cap
    }

    pub fn s3_counts(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.s3.iter().map(|(&i, &c)| (self.universe[i], c))
    }

    fn least(&self, counts: &HashMap<usize, u64>) -> u64 {
        let i = (0..self.universe.len())
            .min_by_key(|i| (counts.get(i).copied().unwrap_or(0), *i))
            .expect("nonempty universe");
        self.universe[i]
    }
}

impl StreamSketch for EpsMinimum {
    type Item = u64;
    type Report = MinimumReport;

    /// Items outside the universe are ignored.
    fn insert(&mut self, item: &u64) {
        let Some(&i) = self.index.get(item) else { return };
        if !std::mem::replace(&mut self.appeared[i], true) {
            self.distinct += 1;
            if self.distinct as f64 > self.distinct_cap {
                self.s2 = None;
            }
        }
        let [c1, c2, c3] = self.coins;
        let mut hit = false;
        if c1.flip(&mut self.rng) {
            self.s1[i] = true;
            hit = true;
        }
        if c2.flip(&mut self.rng) {
            if let Some(s2) = &mut self.s2 {
                *s2.entry(i).or_insert(0) += 1;
            }
            hit = true;
        }
        if c3.flip(&mut self.rng) {
            let c = self.s3.entry(i).or_insert(0);
            *c = (*c + 1).min(self.s3_cap);
            hit = true;
        }
        self.sampled += hit as u64;
    }

    fn report(&self) -> Result<MinimumReport> {
        if let Some(i) = self.large_pick {
            return Ok(MinimumReport { item: self.universe[i], source: MinimumSource::LargeUniverse });
        }
        if let Some(i) = self.s1.iter().position(|&b| !b) {
            return Ok(MinimumReport { item: self.universe[i], source: MinimumSource::Unseen });
        }
        if let Some(s2) = &self.s2 {
            return Ok(MinimumReport { item: self.least(s2), source: MinimumSource::SmallSupport });
        }
        Ok(MinimumReport { item: self.least(&self.s3), source: MinimumSource::Counts })
    }

    fn sampled(&self) -> u64 {
        self.sampled
    }
}

#[derive(Debug, Clone)]
pub struct EpsMinimumFactory {
    pub universe: Vec<u64>,
    pub eps: f64,
    pub delta: f64,
}

impl SketchFactory for EpsMinimumFactory {
    type Sketch = EpsMinimum;

    fn build(&self, stream_len: u64, budget_scale: f64, rng: &mut dyn RngCore) -> Result<EpsMinimum> {
        EpsMinimum::with_budget_scale(self.universe.clone(), self.eps, self.delta, stream_len, budget_scale, fork(rng))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::seeded;

    #[test]
    fn large_universe_answers_from_prefix() {
        let u: Vec<u64> = (100..130).collect();
        let s = EpsMinimum::new(u, 0.1, 0.1, 1000, seeded(1)).unwrap();
        let r = s.report().unwrap();
        assert_eq!(r.source, MinimumSource::LargeUniverse);
        assert!((100..112).contains(&r.item));
        assert_eq!(s.report().unwrap(), r);
    }

    #[test]
    fn absent_item_is_reported() {
        let mut s = EpsMinimum::new(vec![1, 2, 3], 0.2, 0.1, 300, seeded(2)).unwrap();
        for i in 0..300u64 {
            s.insert(&(1 + i % 2));
        }
        assert_eq!(s.report().unwrap(), MinimumReport { item: 3, source: MinimumSource::Unseen });
    }

    #[test]
    fn small_support_uses_exact_counts() {
        let mut s = EpsMinimum::new(vec![1, 2, 3], 0.1, 0.1, 3000, seeded(3)).unwrap();
        for i in 0..3000u64 {
            s.insert(&[1, 2, 3, 1, 2, 3, 1, 3, 1, 3][(i % 10) as usize]);
        }
        assert!(s.s2_active());
        assert_eq!(s.report().unwrap(), MinimumReport { item: 2, source: MinimumSource::SmallSupport });
    }

    #[test]
    fn many_distinct_items_drop_s2() {
        let u: Vec<u64> = (0..8).collect();
        let mut s = EpsMinimum::new(u, 0.1, 0.1, 8000, seeded(4)).unwrap();
        for i in 0..8000u64 {
            s.insert(&if i % 100 == 0 { 7 } else { i % 7 });
        }
        assert!(!s.s2_active());
        let r = s.report().unwrap();
        assert_eq!(r.item, 7);
        assert!(s.s3_counts().all(|(_, c)| c <= s.s3_cap()));
    }
}
