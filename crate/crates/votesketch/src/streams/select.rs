use rand::RngCore;

use crate::{Error, Result};

/// Exponent `e` with `2^-e = floor_prob_to_power_of_two(p)`.
pub fn power_of_two_exponent(p: f64) -> Result<u32> {
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::InvalidParameter(format!("probability must lie in (0, 1], got {p}")));
    }
    let mut e = (1.0 / p).log2().ceil().max(0.0) as i32;
    while e > 0 && 2f64.powi(-(e - 1)) <= p {
        e -= 1;
    }
    while 2f64.powi(-e) > p {
        e += 1;
    }
    Ok(e as u32)
}

/// Largest power of two not exceeding `p`, i.e. `1 / 2^ceil(log2(1/p))`.
pub fn floor_prob_to_power_of_two(p: f64) -> Result<f64> {
    Ok(2f64.powi(-(power_of_two_exponent(p)? as i32)))
}

/// Returns true with probability `2^-log2m` by checking that `log2m` fair
/// bits are all zero. Only a running OR and a bit counter are kept.
pub fn low_space_select<R: RngCore + ?Sized>(log2m: u32, rng: &mut R) -> bool {
    let mut left = log2m;
    let mut or = 0u64;
    while left > 0 {
        let take = left.min(64);
        let bits = rng.next_u64();
        or |= if take == 64 { bits } else { bits & ((1u64 << take) - 1) };
        if or != 0 {
            return false;
        }
        left -= take;
    }
    true
}

/// A coin landing heads with probability `2^-exponent`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PowerOfTwoCoin {
    exponent: u32,
}

impl PowerOfTwoCoin {
    pub fn new(exponent: u32) -> Self {
        PowerOfTwoCoin { exponent }
    }

    /// Coin for `min(p, 1)` floored to a power of two.
    pub fn for_rate(p: f64) -> Result<Self> {
        if !(p > 0.0) {
            return Err(Error::InvalidParameter(format!("sampling rate must be positive, got {p}")));
        }
        Ok(PowerOfTwoCoin { exponent: power_of_two_exponent(p.min(1.0))? })
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn probability(&self) -> f64 {
        2f64.powi(-(self.exponent as i32))
    }

    pub fn flip<R: RngCore + ?Sized>(&self, rng: &mut R) -> bool {
        low_space_select(self.exponent, rng)
    }
}
