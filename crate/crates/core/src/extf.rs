//! Extended-exponent floating point.
//!
//! The surrogate integrals pair a polynomial factor that reaches magnitudes
//! around `exp(1000)` against a kernel factor near `exp(-700)`; neither the
//! factors nor the accumulated integral fit in an `f64`. `ExtF` keeps an
//! `f64` mantissa together with an explicit power-of-two offset, renormalized
//! whenever the mantissa drifts out of a safe band.

/// Value represented as `mantissa * 2^exp2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtF {
    mantissa: f64,
    exp2: i64,
}

const BAND: f64 = 1.3407807929942597e154; // 2^512
const BAND_INV: f64 = 7.458340731200207e-155; // 2^-512

impl ExtF {
    pub const ZERO: ExtF = ExtF { mantissa: 0.0, exp2: 0 };

    pub fn new(value: f64) -> Self {
        ExtF { mantissa: value, exp2: 0 }.normalized()
    }

    fn normalized(mut self) -> Self {
        if self.mantissa == 0.0 {
            return ExtF::ZERO;
        }
        while self.mantissa.abs() >= BAND {
            self.mantissa *= BAND_INV;
            self.exp2 += 512;
        }
        while self.mantissa.abs() < BAND_INV {
            self.mantissa *= BAND;
            self.exp2 -= 512;
        }
        self
    }

    /// e^l as an extended value; well-defined for any finite l (and for
    /// l = -inf, which maps to zero).
    pub fn exp_of_ln(l: f64) -> Self {
        if l == f64::NEG_INFINITY {
            return ExtF::ZERO;
        }
        let e2 = (l / std::f64::consts::LN_2).floor();
        let mantissa = (l - e2 * std::f64::consts::LN_2).exp();
        ExtF { mantissa, exp2: e2 as i64 }.normalized()
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa == 0.0
    }

    pub fn sign(&self) -> f64 {
        if self.mantissa == 0.0 {
            0.0
        } else {
            self.mantissa.signum()
        }
    }

    pub fn mul(self, other: ExtF) -> ExtF {
        ExtF {
            mantissa: self.mantissa * other.mantissa,
            exp2: self.exp2 + other.exp2,
        }
        .normalized()
    }

    pub fn mul_f64(self, factor: f64) -> ExtF {
        ExtF { mantissa: self.mantissa * factor, exp2: self.exp2 }.normalized()
    }

    pub fn div_f64(self, divisor: f64) -> ExtF {
        ExtF { mantissa: self.mantissa / divisor, exp2: self.exp2 }.normalized()
    }

    pub fn add(self, other: ExtF) -> ExtF {
        if self.is_zero() {
            return other;
        }
        if other.is_zero() {
            return self;
        }
        let (hi, lo) = if self.exp2 >= other.exp2 { (self, other) } else { (other, self) };
        let shift = lo.exp2 - hi.exp2; // <= 0
        if shift < -1400 {
            return hi;
        }
        let scaled = lo.mantissa * pow2(shift);
        ExtF { mantissa: hi.mantissa + scaled, exp2: hi.exp2 }.normalized()
    }

    pub fn sub(self, other: ExtF) -> ExtF {
        self.add(other.mul_f64(-1.0))
    }

    /// Natural log of the absolute value; `-inf` for zero.
    pub fn ln_abs(&self) -> f64 {
        if self.mantissa == 0.0 {
            f64::NEG_INFINITY
        } else {
            self.mantissa.abs().ln() + self.exp2 as f64 * std::f64::consts::LN_2
        }
    }

    /// Collapse to `f64`, saturating to `inf`/`0` outside the exponent range.
    pub fn to_f64(&self) -> f64 {
        if self.mantissa == 0.0 {
            return 0.0;
        }
        if self.exp2 > 1200 {
            return f64::INFINITY * self.mantissa.signum();
        }
        if self.exp2 < -1200 {
            return 0.0;
        }
        self.mantissa * pow2(self.exp2)
    }

    /// |self| / |other| collapsed to `f64` (saturating).
    pub fn abs_ratio(&self, other: &ExtF) -> f64 {
        if other.is_zero() {
            return f64::INFINITY;
        }
        if self.is_zero() {
            return 0.0;
        }
        (self.ln_abs() - other.ln_abs()).exp()
    }
}

fn pow2(e: i64) -> f64 {
    // split so each factor stays representable
    if e.abs() <= 1000 {
        (e as f64).exp2()
    } else {
        let half = e / 2;
        (half as f64).exp2() * ((e - half) as f64).exp2()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_and_arithmetic() {
        let a = ExtF::new(3.0);
        let b = ExtF::new(4.0);
        assert_eq!(a.mul(b).to_f64(), 12.0);
        assert_eq!(a.add(b).to_f64(), 7.0);
        assert_eq!(a.sub(b).to_f64(), -1.0);
    }

    #[test]
    fn huge_products_stay_finite() {
        // (1e300)^4 = 1e1200, far outside f64 range
        let mut p = ExtF::new(1.0);
        for _ in 0..4 {
            p = p.mul(ExtF::new(1e300));
        }
        let expected_ln = 4.0 * 1e300_f64.ln();
        assert!((p.ln_abs() - expected_ln).abs() < 1e-9 * expected_ln);
        assert!(p.to_f64().is_infinite());
    }

    #[test]
    fn addition_across_scales() {
        let big = ExtF::new(1e200).mul(ExtF::new(1e200));
        let tiny = ExtF::new(1.0);
        let s = big.add(tiny);
        assert!((s.ln_abs() - big.ln_abs()).abs() < 1e-12);
        // signed cancellation
        let d = big.sub(big);
        assert!(d.is_zero());
    }
}
