use rand::{Rng, RngCore};

use super::select::low_space_select;

/// Approximate counter storing only an exponent-like register `C`.
///
/// With `accuracy_bits = k` the counter counts in base `1 + 2^-k`; `k = 0` is
/// the classic counter incrementing with probability `2^-C` and estimating
/// `2^C - 1`. Both estimates are unbiased; larger `k` trades `k` extra bits
/// for a relative standard deviation of about `2^(-k/2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct MorrisCounter {
    register: u64,
    accuracy_bits: u32,
}

impl MorrisCounter {
    pub fn new(accuracy_bits: u32) -> Self {
        MorrisCounter { register: 0, accuracy_bits }
    }

    pub fn register(&self) -> u64 {
        self.register
    }

    fn base_step(&self) -> f64 {
        2f64.powi(-(self.accuracy_bits as i32))
    }

    pub fn increment<R: RngCore + ?Sized>(&mut self, rng: &mut R) {
        let hit = if self.accuracy_bits == 0 {
            low_space_select(self.register.min(u32::MAX as u64) as u32, rng)
        } else {
            rng.random::<f64>() < (1.0 + self.base_step()).powf(-(self.register as f64))
        };
        if hit {
            self.register += 1;
        }
    }

    pub fn estimate(&self) -> f64 {
        let a = self.base_step();
        ((1.0 + a).powf(self.register as f64) - 1.0) / a
    }
}
