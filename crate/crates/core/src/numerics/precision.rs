use crate::error::{Error, Result};
use rug::Float;

/// Working precision plus the absolute error a caller is asking for.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PrecisionContext {
    decimal_digits: u32,
    target_tolerance: f64,
}

const LOG2_10: f64 = std::f64::consts::LOG2_10;
const GUARD_BITS: u32 = 64;

impl PrecisionContext {
    pub fn new(decimal_digits: u32, target_tolerance: f64) -> Result<Self> {
        if decimal_digits < 20 {
            return Err(Error::Precision(format!(
                "need at least 20 digits, got {decimal_digits}"
            )));
        }
        if !(target_tolerance.is_finite() && target_tolerance > 0.0) {
            return Err(Error::Precision(format!(
                "tolerance must be positive, got {target_tolerance}"
            )));
        }
        let floor = 10f64.powi(10 - decimal_digits as i32);
        if target_tolerance < floor {
            return Err(Error::Precision(format!(
                "tolerance {target_tolerance:e} is below 1e{} for {decimal_digits} digits",
                10 - decimal_digits as i32
            )));
        }
        Ok(Self { decimal_digits, target_tolerance })
    }

    /// Same tolerance, more digits. Used when a kernel needs headroom.
    pub fn with_digits(&self, digits: u32) -> Result<Self> {
        Self::new(digits, self.target_tolerance)
    }

    pub fn with_tolerance(&self, tol: f64) -> Result<Self> {
        Self::new(self.decimal_digits, tol)
    }

    pub fn digits(&self) -> u32 {
        self.decimal_digits
    }

    pub fn tolerance(&self) -> f64 {
        self.target_tolerance
    }

    /// MPFR mantissa bits: the requested digits plus guard bits.
    pub fn bits(&self) -> u32 {
        (self.decimal_digits as f64 * LOG2_10).ceil() as u32 + GUARD_BITS
    }

    /// Relative size of one rounding at this precision.
    pub fn epsilon(&self) -> f64 {
        2f64.powi(1 - self.bits() as i32)
    }

    pub fn float<T>(&self, v: T) -> Float
    where
        Float: rug::Assign<T>,
    {
        Float::with_val(self.bits(), v)
    }
}

impl Default for PrecisionContext {
    fn default() -> Self {
        Self { decimal_digits: 40, target_tolerance: 1e-12 }
    }
}
