use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Parameters of the numeric evaluator.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PrecisionConfig {
    /// Working precision in bits.
    pub prec_bits: u32,
    /// Number of terms summed directly.
    pub trunc: u64,
    /// Number of Bernoulli correction terms in the tail expansions.
    pub tail_order: u32,
    /// Largest acceptable error bound for a single value.
    pub tolerance: f64,
}

impl Default for PrecisionConfig {
    fn default() -> Self {
        PrecisionConfig {
            prec_bits: 128,
            trunc: 100_000,
            tail_order: 6,
            tolerance: 1e-9,
        }
    }
}

impl PrecisionConfig {
    pub const MIN_PREC: u32 = 53;
    pub const MAX_PREC: u32 = 8192;
    pub const MIN_TRUNC: u64 = 8;
    pub const MAX_TRUNC: u64 = 100_000_000;
    pub const MAX_TAIL_ORDER: u32 = 40;

    pub fn validate(&self) -> Result<()> {
        if !(Self::MIN_PREC..=Self::MAX_PREC).contains(&self.prec_bits) {
            return Err(Error::domain(format!(
                "precision must be between {} and {} bits, got {}",
                Self::MIN_PREC,
                Self::MAX_PREC,
                self.prec_bits
            )));
        }
        if !(Self::MIN_TRUNC..=Self::MAX_TRUNC).contains(&self.trunc) {
            return Err(Error::domain(format!(
                "truncation must be between {} and {}, got {}",
                Self::MIN_TRUNC,
                Self::MAX_TRUNC,
                self.trunc
            )));
        }
        if self.tail_order == 0 || self.tail_order > Self::MAX_TAIL_ORDER {
            return Err(Error::domain(format!(
                "tail order must be between 1 and {}, got {}",
                Self::MAX_TAIL_ORDER,
                self.tail_order
            )));
        }
        if !(self.tolerance.is_finite() && self.tolerance > 0.0) {
            return Err(Error::domain(format!(
                "tolerance must be positive and finite, got {}",
                self.tolerance
            )));
        }
        Ok(())
    }

    /// The reference configuration used to audit error bounds: four times the
    /// truncation and twice the precision.
    pub fn strengthened(&self) -> Self {
        PrecisionConfig {
            prec_bits: (self.prec_bits * 2).min(Self::MAX_PREC),
            trunc: (self.trunc * 4).min(Self::MAX_TRUNC),
            ..*self
        }
    }
}
