use std::collections::VecDeque;

use serde::Serialize;

use super::morris::MorrisCounter;
use super::{SketchFactory, StreamSketch};
use crate::rng::SketchRng;
use crate::{Error, Result};

/// Runs a known-length sketch on a stream whose length is not known in advance.
///
/// Instance `J_0` assumes length `ε^-2` and `J_1` assumes `ε^-3`; both start at
/// the beginning. When the approximate length (a Morris counter) reaches
/// `ε^-(k+1)` for `k >= 1`, `J_{k-1}` is retired and `J_{k+1}`, assuming
/// length `ε^-(k+3)`, starts. Every instance oversamples by `1/ε`. At most two
/// instances are live and the older one answers, having missed at most an
/// `ε` fraction of the stream.
#[derive(Debug)]
pub struct UnknownLength<F: SketchFactory> {
    factory: F,
    eps: f64,
    length: MorrisCounter,
    live: VecDeque<(u32, F::Sketch)>,
    next_instance: u32,
    max_live: usize,
    rng: SketchRng,
}

/// Morris accuracy bits `2 log2(log2(m_max) / δ)` for streams up to `2^63`.
pub fn morris_accuracy_bits(delta: f64) -> u32 {
    (2.0 * (63.0 / delta).log2()).ceil() as u32
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UnknownLengthReport<R> {
    pub report: R,
    /// Index `k` of the answering instance `J_k`.
    pub instance: u32,
    pub approximate_length: f64,
}

impl<F: SketchFactory> UnknownLength<F> {
    pub fn new(factory: F, eps: f64, delta: f64, mut rng: SketchRng) -> Result<Self> {
        if !(eps > 0.0 && eps < 1.0) || !(delta > 0.0 && delta < 1.0) {
            return Err(Error::InvalidParameter(format!("need 0 < eps, delta < 1, got {eps}, {delta}")));
        }
        let mut live = VecDeque::with_capacity(2);
        for k in 0..2 {
            live.push_back((k, factory.build(Self::assumed_len(eps, k), 1.0 / eps, &mut rng)?));
        }
        Ok(UnknownLength {
            factory,
            eps,
            length: MorrisCounter::new(morris_accuracy_bits(delta)),
            live,
            next_instance: 2,
            max_live: 2,
            rng,
        })
    }

    fn assumed_len(eps: f64, k: u32) -> u64 {
        eps.powi(-(k as i32 + 2)).ceil().min(u64::MAX as f64 / 2.0) as u64
    }

    /// Length at which `J_{k}` starts, for `k >= 2`.
    fn start_threshold(&self, k: u32) -> f64 {
        self.eps.powi(-(k as i32))
    }

    pub fn live_instances(&self) -> usize {
        self.live.len()
    }

    /// Largest number of simultaneously live instances so far.
    pub fn max_live_instances(&self) -> usize {
        self.max_live
    }

    pub fn approximate_length(&self) -> f64 {
        self.length.estimate()
    }

    fn advance(&mut self) -> Result<()> {
        while self.length.estimate() >= self.start_threshold(self.next_instance) {
            let k = self.next_instance;
            let sketch = self.factory.build(Self::assumed_len(self.eps, k), 1.0 / self.eps, &mut self.rng)?;
            self.live.pop_front();
            self.live.push_back((k, sketch));
            self.next_instance += 1;
            self.max_live = self.max_live.max(self.live.len());
        }
        Ok(())
    }

    pub fn insert(&mut self, item: &<F::Sketch as StreamSketch>::Item) -> Result<()> {
        self.length.increment(&mut self.rng);
        self.advance()?;
        for (_, s) in &mut self.live {
            s.insert(item);
        }
        Ok(())
    }

    pub fn report(&self) -> Result<UnknownLengthReport<<F::Sketch as StreamSketch>::Report>> {
        let (instance, sketch) = self.live.front().expect("an instance is always live");
        Ok(UnknownLengthReport {
            report: sketch.report()?,
            instance: *instance,
            approximate_length: self.length.estimate(),
        })
    }
}
