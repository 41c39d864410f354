//! Configurable-precision real arithmetic.
//!
//! An [`HPReal`] is a binary fixed-point number `mant / 2^bits`. The number of
//! fractional bits comes from a [`PrecisionContext`], which is stated in
//! decimal digits: `working_digits` are the digits callers rely on and
//! `guard_digits` absorb accumulated rounding. Absolute error is what is
//! controlled, which suits every quantity here (constants, series sums and
//! terms of size at most a few hundred).

mod constants;
pub mod crosscheck;
mod elementary;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::ExactRational;

pub use constants::{
    const_catalan, const_gamma, const_log2, const_log3, const_pi, const_sqrt_pi_recip,
    const_zeta2,
};

const LOG2_10: f64 = std::f64::consts::LOG2_10;

/// Minimum number of working digits accepted by [`PrecisionContext::new`].
pub const MIN_WORKING_DIGITS: u32 = 32;
pub const DEFAULT_WORKING_DIGITS: u32 = 64;
pub const DEFAULT_GUARD_DIGITS: u32 = 10;

/// Decimal precision carried by every value built from it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrecisionContext {
    working_digits: u32,
    guard_digits: u32,
}

impl Default for PrecisionContext {
    fn default() -> Self {
        PrecisionContext {
            working_digits: DEFAULT_WORKING_DIGITS,
            guard_digits: DEFAULT_GUARD_DIGITS,
        }
    }
}

impl PrecisionContext {
    pub fn new(working_digits: u32) -> Result<Self> {
        Self::with_guard(working_digits, DEFAULT_GUARD_DIGITS)
    }

    pub fn with_guard(working_digits: u32, guard_digits: u32) -> Result<Self> {
        if working_digits < MIN_WORKING_DIGITS {
            return Err(Error::InvalidPrecision(format!(
                "working_digits = {working_digits}, need at least {MIN_WORKING_DIGITS}"
            )));
        }
        if guard_digits == 0 {
            return Err(Error::InvalidPrecision("guard_digits must be positive".into()));
        }
        Ok(PrecisionContext { working_digits, guard_digits })
    }

    pub fn working_digits(&self) -> u32 {
        self.working_digits
    }

    pub fn guard_digits(&self) -> u32 {
        self.guard_digits
    }

    pub fn total_digits(&self) -> u32 {
        self.working_digits + self.guard_digits
    }

    /// Fractional bits used for values in this context.
    pub fn bits(&self) -> u32 {
        (self.total_digits() as f64 * LOG2_10).ceil() as u32 + 4
    }

    /// The same context with `extra` more working digits.
    pub fn widened(&self, extra: u32) -> Self {
        PrecisionContext {
            working_digits: self.working_digits + extra,
            guard_digits: self.guard_digits,
        }
    }

    /// 10^-working_digits.
    pub fn epsilon(&self) -> HPReal {
        HPReal::pow10(-(self.working_digits as i32), self)
    }
}

/// Fixed-point real `mant · 2^-bits`.
#[derive(Clone, Debug)]
pub struct HPReal {
    mant: BigInt,
    bits: u32,
}

/// Rounds `x / 2^s` to nearest (ties toward +∞).
pub(crate) fn round_shr(x: &BigInt, s: u32) -> BigInt {
    if s == 0 {
        return x.clone();
    }
    (x + (BigInt::one() << (s - 1))) >> s as usize
}

fn rescale(mant: &BigInt, from: u32, to: u32) -> BigInt {
    match from.cmp(&to) {
        Ordering::Equal => mant.clone(),
        Ordering::Less => mant << (to - from) as usize,
        Ordering::Greater => round_shr(mant, from - to),
    }
}

impl HPReal {
    pub(crate) fn from_parts(mant: BigInt, bits: u32) -> Self {
        HPReal { mant, bits }
    }

    pub(crate) fn mant(&self) -> &BigInt {
        &self.mant
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn zero(ctx: &PrecisionContext) -> Self {
        HPReal { mant: BigInt::zero(), bits: ctx.bits() }
    }

    pub fn one(ctx: &PrecisionContext) -> Self {
        Self::from_i64(1, ctx)
    }

    pub fn from_i64(v: i64, ctx: &PrecisionContext) -> Self {
        let bits = ctx.bits();
        HPReal { mant: BigInt::from(v) << bits as usize, bits }
    }

    pub fn from_bigint(v: &BigInt, ctx: &PrecisionContext) -> Self {
        let bits = ctx.bits();
        HPReal { mant: v << bits as usize, bits }
    }

    /// Nearest fixed-point value to `q`.
    pub fn from_rational(q: &ExactRational, ctx: &PrecisionContext) -> Self {
        Self::from_fraction(q.as_bigrational().numer(), q.as_bigrational().denom(), ctx.bits())
    }

    pub fn from_ratio(num: i64, den: i64, ctx: &PrecisionContext) -> Self {
        Self::from_rational(&ExactRational::ratio(num, den), ctx)
    }

    pub(crate) fn from_fraction(num: &BigInt, den: &BigInt, bits: u32) -> Self {
        // round(num * 2^bits / den) with den > 0
        let scaled: BigInt = num << (bits as usize + 1);
        let q = scaled.div_floor(den);
        HPReal { mant: round_shr(&q, 1), bits }
    }

    /// 10^k for integer k.
    pub fn pow10(k: i32, ctx: &PrecisionContext) -> Self {
        Self::from_rational(&ExactRational::from(10u32).pow(k), ctx)
    }

    /// One unit in the last guarded place, 2^-bits.
    pub fn ulp(&self) -> HPReal {
        HPReal { mant: BigInt::one(), bits: self.bits }
    }

    /// The value re-rounded to `bits` fractional bits.
    pub fn with_bits(&self, bits: u32) -> HPReal {
        HPReal { mant: rescale(&self.mant, self.bits, bits), bits }
    }

    pub fn with_ctx(&self, ctx: &PrecisionContext) -> HPReal {
        self.with_bits(ctx.bits())
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn signum(&self) -> i32 {
        if self.mant.is_zero() {
            0
        } else if self.mant.is_negative() {
            -1
        } else {
            1
        }
    }

    pub fn abs(&self) -> HPReal {
        HPReal { mant: self.mant.abs(), bits: self.bits }
    }

    pub fn max(self, other: HPReal) -> HPReal {
        if self >= other {
            self
        } else {
            other
        }
    }

    pub fn min(self, other: HPReal) -> HPReal {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn mul_int(&self, k: i64) -> HPReal {
        HPReal { mant: &self.mant * k, bits: self.bits }
    }

    pub fn mul_bigint(&self, k: &BigInt) -> HPReal {
        HPReal { mant: &self.mant * k, bits: self.bits }
    }

    /// Division by a nonzero integer, rounded toward zero.
    pub fn div_int(&self, k: i64) -> HPReal {
        assert!(k != 0, "division by zero");
        HPReal { mant: &self.mant / k, bits: self.bits }
    }

    pub fn div_bigint(&self, k: &BigInt) -> HPReal {
        assert!(!k.is_zero(), "division by zero");
        HPReal { mant: &self.mant / k, bits: self.bits }
    }

    /// `self · 2^k`.
    pub fn ldexp(&self, k: i64) -> HPReal {
        let mant = if k >= 0 {
            &self.mant << k as usize
        } else {
            round_shr(&self.mant, (-k) as u32)
        };
        HPReal { mant, bits: self.bits }
    }

    pub fn checked_div(&self, other: &HPReal) -> Result<HPReal> {
        if other.is_zero() {
            return Err(Error::Domain {
                function: "div",
                argument: "0".into(),
                domain: "nonzero divisor".into(),
            });
        }
        let bits = self.bits.min(other.bits);
        let a = rescale(&self.mant, self.bits, bits);
        let b = rescale(&other.mant, other.bits, bits);
        let num: BigInt = a << bits as usize;
        Ok(HPReal { mant: num / b, bits })
    }

    pub fn recip(&self) -> Result<HPReal> {
        HPReal::from_parts(BigInt::one() << self.bits as usize, self.bits).checked_div(self)
    }

    pub fn square(&self) -> HPReal {
        self * self
    }

    pub fn powi(&self, n: i32) -> Result<HPReal> {
        if n < 0 {
            return self.recip()?.powi(-n);
        }
        let mut base = self.clone();
        let mut acc = HPReal::from_parts(BigInt::one() << self.bits as usize, self.bits);
        let mut e = n as u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = base.square();
            e >>= 1;
        }
        Ok(acc)
    }

    /// Floor of log10|x|, or `None` for zero.
    pub fn log10_abs_floor(&self) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        let (e, m) = self.decimal_digits(1, true);
        debug_assert!(!m.is_empty());
        Some(e)
    }

    pub fn to_f64(&self) -> f64 {
        let len = self.mant.bits() as i64;
        let shift = (len - 62).max(0);
        let top = (&self.mant >> shift as usize).to_f64().unwrap_or(0.0);
        top * 2f64.powi((shift - self.bits as i64) as i32)
    }

    /// Decimal exponent `e` and the `sig` leading digits of |x| rounded to
    /// nearest, so that |x| ≈ 0.d1d2… · 10^(e+1).
    fn decimal_digits(&self, sig: u32, truncate: bool) -> (i64, String) {
        let abs = self.mant.abs();
        let approx = (abs.bits() as f64 - self.bits as f64) * std::f64::consts::LOG10_2;
        let mut e = approx.floor() as i64;
        let ten = BigInt::from(10u32);
        let lo = num_traits::pow(ten.clone(), sig as usize - 1);
        let hi = &lo * &ten;
        for _ in 0..8 {
            let k = sig as i64 - 1 - e;
            let m = if k >= 0 {
                let scaled: BigInt = &abs * num_traits::pow(ten.clone(), k as usize);
                if truncate {
                    scaled >> self.bits as usize
                } else {
                    round_shr(&scaled, self.bits)
                }
            } else {
                let den: BigInt = num_traits::pow(ten.clone(), (-k) as usize) << self.bits as usize;
                if truncate {
                    &abs / &den
                } else {
                    let twice: BigInt = (&abs << 1usize) / &den;
                    (twice + 1) >> 1usize
                }
            };
            if m >= hi {
                e += 1;
            } else if m < lo {
                e -= 1;
            } else {
                return (e, m.to_string());
            }
        }
        unreachable!("decimal exponent search did not settle")
    }

    /// Exactly `sig` significant digits, positional for moderate exponents and
    /// scientific otherwise.
    pub fn to_sig_string(&self, sig: u32) -> String {
        self.format_sig(sig, false)
    }

    /// Like [`HPReal::to_sig_string`] but chops instead of rounding, so every
    /// printed digit is a digit of the value.
    pub fn to_sig_string_truncated(&self, sig: u32) -> String {
        self.format_sig(sig, true)
    }

    fn format_sig(&self, sig: u32, truncate: bool) -> String {
        let sig = sig.max(1);
        if self.is_zero() {
            return if sig == 1 { "0".into() } else { format!("0.{}", "0".repeat(sig as usize - 1)) };
        }
        let (e, digits) = self.decimal_digits(sig, truncate);
        let sign = if self.is_negative() { "-" } else { "" };
        let digits = digits.as_str();
        if (-7..21).contains(&e) && e < sig as i64 {
            if e >= 0 {
                let split = (e + 1) as usize;
                let (int, frac) = digits.split_at(split);
                if frac.is_empty() {
                    format!("{sign}{int}")
                } else {
                    format!("{sign}{int}.{frac}")
                }
            } else {
                format!("{sign}0.{}{digits}", "0".repeat((-e - 1) as usize))
            }
        } else {
            let (first, rest) = digits.split_at(1);
            if rest.is_empty() {
                format!("{sign}{first}e{e}")
            } else {
                format!("{sign}{first}.{rest}e{e}")
            }
        }
    }

    /// Scientific notation with `sig` significant digits.
    pub fn to_sci_string(&self, sig: u32) -> String {
        let sig = sig.max(1);
        if self.is_zero() {
            return "0".into();
        }
        let (e, digits) = self.decimal_digits(sig, false);
        let sign = if self.is_negative() { "-" } else { "" };
        let (first, rest) = digits.split_at(1);
        if rest.is_empty() {
            format!("{sign}{first}e{e}")
        } else {
            format!("{sign}{first}.{rest}e{e}")
        }
    }

    /// Parses a decimal or rational literal at the given precision.
    pub fn parse(s: &str, ctx: &PrecisionContext) -> Result<HPReal> {
        Ok(Self::from_rational(&ExactRational::parse(s)?, ctx))
    }

    /// Number of leading significant decimal digits on which `self` and
    /// `reference` agree, measured as ⌊−log10(|self − reference| / |reference|)⌋
    /// and capped at `cap`.
    pub fn agreeing_digits(&self, reference: &HPReal, cap: u32) -> u32 {
        let diff = (self - reference).abs();
        if diff.is_zero() {
            return cap;
        }
        let rel = if reference.is_zero() {
            diff
        } else {
            match diff.checked_div(&reference.abs()) {
                Ok(r) => r,
                Err(_) => return 0,
            }
        };
        if rel.is_zero() {
            return cap;
        }
        match rel.log10_abs_floor() {
            Some(e) if e < 0 => ((-e - 1) as u32).min(cap),
            _ => 0,
        }
    }
}

impl fmt::Display for HPReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sig = f.precision().unwrap_or(20) as u32;
        f.write_str(&self.to_sig_string(sig))
    }
}

fn aligned(a: &HPReal, b: &HPReal) -> (BigInt, BigInt, u32) {
    let bits = a.bits.min(b.bits);
    (rescale(&a.mant, a.bits, bits), rescale(&b.mant, b.bits, bits), bits)
}

impl PartialEq for HPReal {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for HPReal {}

impl PartialOrd for HPReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HPReal {
    fn cmp(&self, other: &Self) -> Ordering {
        // compare at the finer grid so the order is exact
        let bits = self.bits.max(other.bits);
        rescale(&self.mant, self.bits, bits).cmp(&rescale(&other.mant, other.bits, bits))
    }
}

impl<'a> Add<&'a HPReal> for &'a HPReal {
    type Output = HPReal;
    fn add(self, rhs: &'a HPReal) -> HPReal {
        if self.bits == rhs.bits {
            return HPReal { mant: &self.mant + &rhs.mant, bits: self.bits };
        }
        let (a, b, bits) = aligned(self, rhs);
        HPReal { mant: a + b, bits }
    }
}

impl<'a> Sub<&'a HPReal> for &'a HPReal {
    type Output = HPReal;
    fn sub(self, rhs: &'a HPReal) -> HPReal {
        if self.bits == rhs.bits {
            return HPReal { mant: &self.mant - &rhs.mant, bits: self.bits };
        }
        let (a, b, bits) = aligned(self, rhs);
        HPReal { mant: a - b, bits }
    }
}

impl<'a> Mul<&'a HPReal> for &'a HPReal {
    type Output = HPReal;
    fn mul(self, rhs: &'a HPReal) -> HPReal {
        let (a, b, bits) = aligned(self, rhs);
        HPReal { mant: round_shr(&(a * b), bits), bits }
    }
}

impl<'a> Div<&'a HPReal> for &'a HPReal {
    type Output = HPReal;
    /// Panics on division by zero; use [`HPReal::checked_div`] to get an error.
    fn div(self, rhs: &'a HPReal) -> HPReal {
        self.checked_div(rhs).expect("division by zero")
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<HPReal> for HPReal {
            type Output = HPReal;
            fn $m(self, rhs: HPReal) -> HPReal { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a HPReal> for HPReal {
            type Output = HPReal;
            fn $m(self, rhs: &'a HPReal) -> HPReal { (&self).$m(rhs) }
        }
        impl<'a> $tr<HPReal> for &'a HPReal {
            type Output = HPReal;
            fn $m(self, rhs: HPReal) -> HPReal { self.$m(&rhs) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul, Div div);

impl AddAssign<&HPReal> for HPReal {
    fn add_assign(&mut self, rhs: &HPReal) {
        if self.bits == rhs.bits {
            self.mant += &rhs.mant;
        } else {
            *self = &*self + rhs;
        }
    }
}

impl AddAssign<HPReal> for HPReal {
    fn add_assign(&mut self, rhs: HPReal) {
        *self += &rhs;
    }
}

impl SubAssign<&HPReal> for HPReal {
    fn sub_assign(&mut self, rhs: &HPReal) {
        if self.bits == rhs.bits {
            self.mant -= &rhs.mant;
        } else {
            *self = &*self - rhs;
        }
    }
}

impl SubAssign<HPReal> for HPReal {
    fn sub_assign(&mut self, rhs: HPReal) {
        *self -= &rhs;
    }
}

impl Neg for HPReal {
    type Output = HPReal;
    fn neg(self) -> HPReal {
        HPReal { mant: -self.mant, bits: self.bits }
    }
}

impl Neg for &HPReal {
    type Output = HPReal;
    fn neg(self) -> HPReal {
        HPReal { mant: -&self.mant, bits: self.bits }
    }
}
