//! sqrt, exp, log, atan and real powers on [`HPReal`].
//!
//! Each routine runs at the argument's precision plus `EXTRA_BITS` and rounds
//! once at the end.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::constants::{ln2_mant, pi_mant};
use super::{round_shr, HPReal};
use crate::error::{Error, Result};

const EXTRA_BITS: u32 = 32;

fn domain(function: &'static str, x: &HPReal, domain: &str) -> Error {
    Error::Domain { function, argument: x.to_sig_string(12), domain: domain.into() }
}

fn mul_fixed(a: &BigInt, b: &BigInt, bits: u32) -> BigInt {
    round_shr(&(a * b), bits)
}

fn div_fixed(a: &BigInt, b: &BigInt, bits: u32) -> BigInt {
    (a << bits as usize) / b
}

/// 2·atanh(z) for a fixed-point z with |z| small, i.e. log((1+z)/(1−z)).
fn log_ratio_series(z: &BigInt, bits: u32) -> BigInt {
    let z2 = mul_fixed(z, z, bits);
    let mut power = z.clone();
    let mut sum = BigInt::zero();
    let mut k: u64 = 1;
    while !power.is_zero() {
        sum += &power / k;
        power = mul_fixed(&power, &z2, bits);
        k += 2;
    }
    sum << 1usize
}

/// Natural log of a positive mantissa at `bits`, returned at `bits`.
pub(crate) fn ln_mant(mant: &BigInt, bits: u32) -> BigInt {
    debug_assert!(mant.is_positive());
    let wb = bits + EXTRA_BITS;
    // x = m · 2^t with m ∈ [1/2, 1)
    let mut t = mant.bits() as i64 - bits as i64;
    let shift = wb as i64 - bits as i64 - t;
    let mut m = if shift >= 0 { mant << shift as usize } else { round_shr(mant, (-shift) as u32) };
    let one: BigInt = BigInt::one() << wb as usize;
    // move m into [1/√2, √2)
    if (&m * &m) << 1usize < (&one * &one) {
        m <<= 1usize;
        t -= 1;
    }
    let z = div_fixed(&(&m - &one), &(&m + &one), wb);
    let log_m = log_ratio_series(&z, wb);
    let total = log_m + ln2_mant(wb) * t;
    round_shr(&total, EXTRA_BITS)
}

fn exp_mant(x: &BigInt, bits: u32) -> BigInt {
    let wb = bits + EXTRA_BITS + 16;
    let xw: BigInt = x << (wb - bits) as usize;
    let ln2 = ln2_mant(wb);
    // k = round(x / ln 2)
    let k = {
        let twice: BigInt = (&xw << 1usize) / &ln2;
        let q: BigInt = (twice + if xw.is_negative() { -1 } else { 1 }) / 2;
        q
    };
    let k_i64: i64 = (&k).try_into().expect("exp argument too large");
    let r = &xw - &ln2 * &k;
    // r /= 2^halvings, then square back
    let halvings = 16u32;
    let r = round_shr(&r, halvings);
    let one: BigInt = BigInt::one() << wb as usize;
    let mut sum = one.clone();
    let mut term = one;
    let mut n: u64 = 1;
    loop {
        term = mul_fixed(&term, &r, wb) / n;
        if term.is_zero() {
            break;
        }
        sum += &term;
        n += 1;
    }
    for _ in 0..halvings {
        sum = mul_fixed(&sum, &sum, wb);
    }
    let total_shift = wb as i64 - bits as i64 - k_i64;
    if total_shift >= 0 {
        round_shr(&sum, total_shift as u32)
    } else {
        sum << (-total_shift) as usize
    }
}

/// atan for |x| ≤ 1 (fixed point at `bits`).
fn atan_small(x: &BigInt, bits: u32) -> BigInt {
    let wb = bits + EXTRA_BITS;
    let one: BigInt = BigInt::one() << wb as usize;
    let mut y: BigInt = x << EXTRA_BITS as usize;
    // three angle halvings: y ← y / (1 + √(1 + y²))
    let halvings = 3u32;
    for _ in 0..halvings {
        let y2 = mul_fixed(&y, &y, wb);
        let root = ((&one + y2) << wb as usize).sqrt();
        y = div_fixed(&y, &(&one + root), wb);
    }
    let y2 = mul_fixed(&y, &y, wb);
    let mut power = y;
    let mut sum = BigInt::zero();
    let mut k: u64 = 1;
    let mut sign = true;
    while !power.is_zero() {
        let t = &power / k;
        if sign {
            sum += t;
        } else {
            sum -= t;
        }
        sign = !sign;
        power = mul_fixed(&power, &y2, wb);
        k += 2;
    }
    round_shr(&(sum << halvings as usize), EXTRA_BITS)
}

impl HPReal {
    pub fn sqrt(&self) -> Result<HPReal> {
        if self.is_negative() {
            return Err(domain("sqrt", self, "x >= 0"));
        }
        let bits = self.bits();
        let scaled: BigInt = (self.mant() << (bits as usize + 2)).sqrt();
        Ok(HPReal::from_parts(round_shr(&scaled, 1), bits))
    }

    pub fn exp(&self) -> HPReal {
        HPReal::from_parts(exp_mant(self.mant(), self.bits()), self.bits())
    }

    pub fn ln(&self) -> Result<HPReal> {
        if self.signum() <= 0 {
            return Err(domain("log", self, "x > 0"));
        }
        Ok(HPReal::from_parts(ln_mant(self.mant(), self.bits()), self.bits()))
    }

    pub fn atan(&self) -> HPReal {
        let bits = self.bits();
        let one: BigInt = BigInt::one() << bits as usize;
        if self.mant().abs() <= one {
            return HPReal::from_parts(atan_small(self.mant(), bits), bits);
        }
        // atan x = sign(x)·π/2 − atan(1/x)
        let wb = bits + EXTRA_BITS;
        let xw: BigInt = self.mant() << EXTRA_BITS as usize;
        let inv = div_fixed(&(BigInt::one() << wb as usize), &xw, wb);
        let half_pi: BigInt = pi_mant(wb) >> 1usize;
        let a = atan_small(&inv, wb);
        let r = if self.is_negative() { -half_pi - a } else { half_pi - a };
        HPReal::from_parts(round_shr(&r, EXTRA_BITS), bits)
    }

    /// x^y for x > 0, via exp(y·log x).
    pub fn powf(&self, y: &HPReal) -> Result<HPReal> {
        if self.signum() <= 0 {
            return Err(domain("pow", self, "base > 0"));
        }
        let wide = self.with_bits(self.bits() + EXTRA_BITS);
        let l = wide.ln()?;
        Ok((l * y.with_bits(wide.bits())).exp().with_bits(self.bits()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hpreal::PrecisionContext;

    fn close(a: &HPReal, b: &HPReal, ulps: i64) -> bool {
        (a - b).abs() <= a.ulp().mul_int(ulps)
    }

    #[test]
    fn sqrt_basics() {
        let c = PrecisionContext::default();
        assert_eq!(HPReal::from_i64(4, &c).sqrt().unwrap(), HPReal::from_i64(2, &c));
        let r2 = HPReal::from_i64(2, &c).sqrt().unwrap();
        assert!(close(&r2.square(), &HPReal::from_i64(2, &c), 4));
        assert!(HPReal::from_i64(-1, &c).sqrt().is_err());
    }

    #[test]
    fn log_and_exp_are_inverse() {
        let c = PrecisionContext::default();
        assert!(HPReal::one(&c).ln().unwrap().is_zero());
        assert!(HPReal::zero(&c).ln().is_err());
        assert!(HPReal::from_i64(-2, &c).ln().is_err());
        let three = HPReal::from_i64(3, &c);
        assert!(close(&three.ln().unwrap().exp(), &three, 8));
        for (n, d) in [(1, 1000), (7, 3), (-5, 2), (123, 1), (1, 7)] {
            let x = HPReal::from_ratio(n, d, &c);
            assert!(close(&x.exp().ln().unwrap(), &x, 8), "{n}/{d}");
        }
        assert!(HPReal::zero(&c).exp() == HPReal::one(&c));
    }

    #[test]
    fn log_of_tiny_and_huge() {
        let c = PrecisionContext::default();
        let tiny = HPReal::from_ratio(1, 1_000_000_007, &c);
        let l = tiny.ln().unwrap();
        // ln(1e-9) ≈ −20.72
        assert!((l.to_f64() + (1_000_000_007f64).ln()).abs() < 1e-12);
        let big = HPReal::from_i64(1 << 40, &c);
        assert!((big.ln().unwrap().to_f64() - 40.0 * std::f64::consts::LN_2).abs() < 1e-12);
    }

    #[test]
    fn atan_values() {
        let c = PrecisionContext::default();
        let pi = crate::hpreal::const_pi(&c);
        assert!(close(&HPReal::one(&c).atan().mul_int(4), &pi, 8));
        assert!(close(&HPReal::from_i64(-1, &c).atan().mul_int(-4), &pi, 8));
        // atan(√3) = π/3
        let s3 = HPReal::from_i64(3, &c).sqrt().unwrap();
        assert!(close(&s3.atan().mul_int(3), &pi, 8));
        assert!(HPReal::zero(&c).atan().is_zero());
    }

    #[test]
    fn powf_half() {
        let c = PrecisionContext::default();
        let x = HPReal::from_ratio(13, 10, &c);
        let p = x.powf(&HPReal::from_ratio(-1, 2, &c)).unwrap();
        let direct = x.sqrt().unwrap().recip().unwrap();
        assert!(close(&p, &direct, 16));
    }
}
