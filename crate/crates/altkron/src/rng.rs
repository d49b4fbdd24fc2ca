//! Seeded splitmix64 generator for reproducible randomized checks.
//!
//! Falsification witnesses must be replayable, so every randomized report
//! records the seed it was produced from and all draws go through this
//! generator. Not cryptographic.

use crate::scalar::{FieldSpec, Scalar};

#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform draw from `0..bound` (`bound > 0`).
    pub fn below(&mut self, bound: u64) -> u64 {
        // Rejection sampling keeps the draw exactly uniform.
        let zone = u64::MAX - (u64::MAX % bound + 1) % bound;
        loop {
            let v = self.next_u64();
            if v <= zone {
                return v % bound;
            }
        }
    }

    /// A scalar coefficient: uniform over `{-3, ..., 3}` for the rationals,
    /// uniform over the field for `F_p`.
    pub fn scalar(&mut self, field: &FieldSpec) -> Scalar {
        match field {
            FieldSpec::Rational => field.from_i64(self.below(7) as i64 - 3),
            FieldSpec::Prime { p } => field.from_i64(self.below(*p) as i64),
        }
    }

    pub fn scalar_vec(&mut self, field: &FieldSpec, len: usize) -> Vec<Scalar> {
        (0..len).map(|_| self.scalar(field)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_for_fixed_seed() {
        let mut a = SplitMix64::new(42);
        let mut b = SplitMix64::new(42);
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn rational_draws_stay_in_range() {
        let mut g = SplitMix64::new(7);
        let q = FieldSpec::Rational;
        for _ in 0..200 {
            let s = g.scalar(&q);
            let ok = (-3..=3).any(|n| s == q.from_i64(n));
            assert!(ok, "draw {s} outside -3..=3");
        }
    }
}
