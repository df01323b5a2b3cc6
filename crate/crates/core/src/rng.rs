//! SplitMix64 stream used for every random configuration.
//!
//! The output sequence is part of the file-level contract: other
//! implementations must reproduce it bit for bit, so nothing here may change.

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Top 53 bits of the next draw; the uniform variate is this value times 2⁻⁵³.
    #[inline]
    pub fn next_mantissa(&mut self) -> u64 {
        self.next_u64() >> 11
    }

    /// Uniform in [0, 1).
    #[inline]
    pub fn next_unit(&mut self) -> f64 {
        self.next_mantissa() as f64 * UNIT_SCALE
    }
}

pub(crate) const UNIT_BITS: u32 = 53;
const UNIT_SCALE: f64 = 1.0 / (1u64 << UNIT_BITS) as f64;

/// Seed for the `index`-th independent sub-stream (fuzz trial, optimizer restart).
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    SplitMix64::new(seed.wrapping_add(index)).next_u64()
}
