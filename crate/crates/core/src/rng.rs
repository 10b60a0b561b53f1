//! Seeded 64-bit linear congruential generator.
//!
//! Fixtures must be reproducible from a seed in any language, so the
//! recurrence is fixed here rather than delegated to a library whose stream
//! may change between versions:
//!
//! ```text
//! state' = 6364136223846793005 * state + 1442695040888963407   (mod 2^64)
//! ```
//!
//! The initial state is the seed itself. Each draw advances the state once and
//! uses its high 32 bits. A draw in `lo..=hi` is `lo + ((high32 * span) >> 32)`
//! with `span = hi - lo + 1`.

pub const MULTIPLIER: u64 = 6364136223846793005;
pub const INCREMENT: u64 = 1442695040888963407;

#[derive(Debug, Clone)]
pub struct Lcg64 {
    state: u64,
}

impl Lcg64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u32(&mut self) -> u32 {
        self.state = self
            .state
            .wrapping_mul(MULTIPLIER)
            .wrapping_add(INCREMENT);
        (self.state >> 32) as u32
    }

    /// Uniform-ish integer in `lo..=hi`.
    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        assert!(lo <= hi, "empty range {lo}..={hi}");
        let span = (hi - lo + 1) as u64;
        lo + ((self.next_u32() as u64 * span) >> 32) as i64
    }

    pub fn below(&mut self, bound: usize) -> usize {
        self.range(0, bound as i64 - 1) as usize
    }
}
