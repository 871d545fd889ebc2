//! Fixed-point scalars used by the neuronal datapath.
//!
//! Thresholds and leak factors are stored with a configurable number of
//! fractional bits (the membrane-potential quantization width). Membrane
//! potentials themselves are integer-valued; the only fractional operation
//! in the datapath is the leak multiply, which truncates toward zero.

use serde::{Deserialize, Serialize};

/// A fixed-point value: `raw / 2^frac_bits`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Fixed {
    raw: i64,
    frac_bits: u8,
}

impl Fixed {
    pub fn from_raw(raw: i64, frac_bits: u8) -> Self {
        debug_assert!(frac_bits < 63);
        Fixed { raw, frac_bits }
    }

    /// Quantize a float with round-to-nearest, ties to even.
    pub fn from_f64_rne(value: f64, frac_bits: u8) -> Self {
        let scaled = value * (1i64 << frac_bits) as f64;
        Fixed {
            raw: scaled.round_ties_even() as i64,
            frac_bits,
        }
    }

    pub fn one(frac_bits: u8) -> Self {
        Fixed {
            raw: 1i64 << frac_bits,
            frac_bits,
        }
    }

    pub fn raw(&self) -> i64 {
        self.raw
    }

    pub fn frac_bits(&self) -> u8 {
        self.frac_bits
    }

    pub fn to_f64(&self) -> f64 {
        self.raw as f64 / (1i64 << self.frac_bits) as f64
    }

    pub fn is_one(&self) -> bool {
        self.raw == 1i64 << self.frac_bits
    }

    /// `self * v` truncated toward zero to an integer.
    ///
    /// This is the hardware leak multiply: the fractional product bits are
    /// dropped, not rounded, so 3 * 0.5 -> 1 and -3 * 0.5 -> -1.
    pub fn mul_int_trunc(&self, v: i64) -> i64 {
        let prod = self.raw as i128 * v as i128;
        (prod / (1i128 << self.frac_bits)) as i64
    }

    /// True when the integer `v` strictly exceeds this fixed-point value.
    pub fn int_exceeds(&self, v: i64) -> bool {
        (v as i128) << self.frac_bits > self.raw as i128
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quantize_round_to_even() {
        // 0.5 ulp cases at 1 fractional bit: 0.75 is exactly between raw 1
        // and raw 2 -> even picks 2; 0.25 between 0 and 1 -> picks 0.
        assert_eq!(Fixed::from_f64_rne(0.75, 1).raw(), 2);
        assert_eq!(Fixed::from_f64_rne(0.25, 1).raw(), 0);
        assert_eq!(Fixed::from_f64_rne(0.5, 8).raw(), 128);
    }

    #[test]
    fn leak_truncates_toward_zero() {
        let half = Fixed::from_f64_rne(0.5, 8);
        assert_eq!(half.mul_int_trunc(3), 1);
        assert_eq!(half.mul_int_trunc(-3), -1);
        assert_eq!(half.mul_int_trunc(4), 2);
        let one = Fixed::one(8);
        assert_eq!(one.mul_int_trunc(-7), -7);
    }

    #[test]
    fn strict_threshold_compare() {
        let th = Fixed::from_f64_rne(10.0, 8);
        assert!(!th.int_exceeds(10));
        assert!(th.int_exceeds(11));
        let th_frac = Fixed::from_f64_rne(9.5, 8);
        assert!(th_frac.int_exceeds(10));
    }
}
