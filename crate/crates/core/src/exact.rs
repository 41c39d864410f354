//! Exact integer and rational arithmetic for the combinatorial quantities:
//! harmonic and alternating harmonic numbers, central binomial coefficients,
//! Catalan numbers, Pochhammer values and the binomial transform.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision integer.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactInt(BigInt);

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactRational(BigRational);

impl ExactInt {
    pub fn zero() -> Self {
        ExactInt(BigInt::zero())
    }

    pub fn one() -> Self {
        ExactInt(BigInt::one())
    }

    pub fn as_bigint(&self) -> &BigInt {
        &self.0
    }

    pub fn into_bigint(self) -> BigInt {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    /// `self` divided by `other` when the division is exact.
    pub fn checked_exact_div(&self, other: &ExactInt) -> Option<ExactInt> {
        if other.is_zero() {
            return None;
        }
        let (q, r) = self.0.div_rem(&other.0);
        r.is_zero().then_some(ExactInt(q))
    }

    pub fn is_divisible_by(&self, other: &ExactInt) -> bool {
        self.checked_exact_div(other).is_some()
    }

    pub fn pow(&self, exp: u32) -> ExactInt {
        ExactInt(num_traits::pow(self.0.clone(), exp as usize))
    }

    pub fn to_i64(&self) -> Option<i64> {
        self.0.to_i64()
    }
}

impl From<BigInt> for ExactInt {
    fn from(v: BigInt) -> Self {
        ExactInt(v)
    }
}

macro_rules! int_from {
    ($($t:ty),*) => {$(
        impl From<$t> for ExactInt {
            fn from(v: $t) -> Self { ExactInt(BigInt::from(v)) }
        }
        impl From<$t> for ExactRational {
            fn from(v: $t) -> Self { ExactRational(BigRational::from_integer(BigInt::from(v))) }
        }
    )*};
}
int_from!(i32, i64, u32, u64, usize, i128, u128);

impl From<ExactInt> for ExactRational {
    fn from(v: ExactInt) -> Self {
        ExactRational(BigRational::from_integer(v.0))
    }
}

impl fmt::Display for ExactInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl ExactRational {
    pub fn zero() -> Self {
        ExactRational(BigRational::zero())
    }

    pub fn one() -> Self {
        ExactRational(BigRational::one())
    }

    /// Builds `num / den`, reduced. Returns `None` when `den` is zero.
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Option<Self> {
        let den = den.into();
        if den.is_zero() {
            return None;
        }
        Some(ExactRational(BigRational::new(num.into(), den)))
    }

    /// Shorthand for small literal fractions; panics on a zero denominator.
    pub fn ratio(num: i64, den: i64) -> Self {
        Self::new(num, den).expect("zero denominator")
    }

    pub fn numer(&self) -> ExactInt {
        ExactInt(self.0.numer().clone())
    }

    pub fn denom(&self) -> ExactInt {
        ExactInt(self.0.denom().clone())
    }

    pub fn as_bigrational(&self) -> &BigRational {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        ExactRational(self.0.abs())
    }

    pub fn recip(&self) -> Option<Self> {
        (!self.is_zero()).then(|| ExactRational(self.0.recip()))
    }

    pub fn pow(&self, exp: i32) -> Self {
        ExactRational(num_traits::Pow::pow(&self.0, exp))
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Parses `"a/b"`, integers and plain decimals such as `"-0.1875"` or
    /// `"1.5e-3"` exactly.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("not a rational or decimal literal: {s:?}"));
        if let Some((n, d)) = s.split_once('/') {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            return Self::new(n, d).ok_or_else(bad);
        }
        let (mantissa, exp) = match s.find(['e', 'E']) {
            Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
            None => (s, 0),
        };
        let (neg, body) = match mantissa.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
        };
        let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(bad());
        }
        if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let digits = format!("{int_part}{frac_part}");
        let mut num = BigInt::from_str(if digits.is_empty() { "0" } else { &digits })
            .map_err(|_| bad())?;
        if neg {
            num = -num;
        }
        let scale = exp - frac_part.len() as i32;
        let ten = ExactRational::from(10u32);
        Ok(ExactRational(BigRational::from_integer(num)) * ten.pow(scale))
    }
}

impl FromStr for ExactRational {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

macro_rules! binop {
    ($ty:ident, $tr:ident, $m:ident, $atr:ident, $am:ident) => {
        impl $tr for $ty {
            type Output = $ty;
            fn $m(self, rhs: $ty) -> $ty {
                $ty(self.0.$m(rhs.0))
            }
        }
        impl<'a> $tr<&'a $ty> for $ty {
            type Output = $ty;
            fn $m(self, rhs: &'a $ty) -> $ty {
                $ty(self.0.$m(&rhs.0))
            }
        }
        impl<'a> $tr<&'a $ty> for &'a $ty {
            type Output = $ty;
            fn $m(self, rhs: &'a $ty) -> $ty {
                $ty((&self.0).$m(&rhs.0))
            }
        }
        impl $atr for $ty {
            fn $am(&mut self, rhs: $ty) {
                self.0.$am(rhs.0)
            }
        }
        impl<'a> $atr<&'a $ty> for $ty {
            fn $am(&mut self, rhs: &'a $ty) {
                self.0.$am(&rhs.0)
            }
        }
    };
}
binop!(ExactInt, Add, add, AddAssign, add_assign);
binop!(ExactInt, Sub, sub, SubAssign, sub_assign);
binop!(ExactInt, Mul, mul, MulAssign, mul_assign);
binop!(ExactRational, Add, add, AddAssign, add_assign);
binop!(ExactRational, Sub, sub, SubAssign, sub_assign);
binop!(ExactRational, Mul, mul, MulAssign, mul_assign);

impl Div for ExactRational {
    type Output = ExactRational;
    /// Panics on division by zero, like the primitive types.
    fn div(self, rhs: ExactRational) -> ExactRational {
        ExactRational(self.0 / rhs.0)
    }
}

impl<'a> Div<&'a ExactRational> for &'a ExactRational {
    type Output = ExactRational;
    fn div(self, rhs: &'a ExactRational) -> ExactRational {
        ExactRational(&self.0 / &rhs.0)
    }
}

impl Neg for ExactInt {
    type Output = ExactInt;
    fn neg(self) -> ExactInt {
        ExactInt(-self.0)
    }
}

impl Neg for ExactRational {
    type Output = ExactRational;
    fn neg(self) -> ExactRational {
        ExactRational(-self.0)
    }
}

impl std::iter::Sum for ExactRational {
    fn sum<I: Iterator<Item = ExactRational>>(iter: I) -> Self {
        iter.fold(ExactRational::zero(), |a, b| a + b)
    }
}

/// Σ_{k=1..n} 1/k; `harmonic(0) = 0`.
pub fn harmonic(n: u64) -> ExactRational {
    HarmonicNumbers::new().nth(n as usize).map(|(_, h)| h).unwrap()
}

/// Σ_{k=1..n} (−1)^{k+1}/k; `alt_harmonic(0) = 0`.
pub fn alt_harmonic(n: u64) -> ExactRational {
    AltHarmonicNumbers::new().nth(n as usize).map(|(_, h)| h).unwrap()
}

/// binom(2n, n), built from the ratio binom(2n+2, n+1)/binom(2n, n) = 2(2n+1)/(n+1).
pub fn central_binomial(n: u64) -> ExactInt {
    CentralBinomials::new().nth(n as usize).map(|(_, b)| b).unwrap()
}

/// C_n = binom(2n, n)/(n+1).
pub fn catalan_number(n: u64) -> ExactInt {
    central_binomial(n)
        .checked_exact_div(&ExactInt::from(n + 1))
        .expect("Catalan numbers are integers")
}

/// binom(n, k), zero outside 0 ≤ k ≤ n.
pub fn binomial(n: u64, k: i64) -> ExactInt {
    if k < 0 || k as u64 > n {
        return ExactInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    ExactInt(acc)
}

/// Row `n` of Pascal's triangle.
pub fn binomial_row(n: u64) -> Vec<ExactInt> {
    let mut row = Vec::with_capacity(n as usize + 1);
    let mut acc = BigInt::one();
    row.push(ExactInt(acc.clone()));
    for i in 0..n {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
        row.push(ExactInt(acc.clone()));
    }
    row
}

/// (1/2)_n = Π_{k=0..n−1} (1/2 + k).
pub fn pochhammer_half(n: u64) -> ExactRational {
    (0..n).fold(ExactRational::one(), |acc, k| {
        acc * ExactRational::ratio(2 * k as i64 + 1, 2)
    })
}

pub fn factorial(n: u64) -> ExactInt {
    ExactInt((1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k)))
}

/// Σ_{k=0..n} binom(n, k)(−1)^k f(k). Applying it twice is the identity.
pub fn binomial_transform(f: &[ExactRational], n: usize) -> ExactRational {
    assert!(f.len() > n, "sequence must be defined on 0..=n");
    binomial_row(n as u64)
        .into_iter()
        .zip(f)
        .enumerate()
        .map(|(k, (b, fk))| {
            let term = ExactRational::from(b) * fk;
            if k % 2 == 1 {
                -term
            } else {
                term
            }
        })
        .sum()
}

/// The binomial transform evaluated at every index of `f`.
pub fn binomial_transform_seq(f: &[ExactRational]) -> Vec<ExactRational> {
    (0..f.len()).map(|n| binomial_transform(f, n)).collect()
}

/// Bernoulli numbers B_0..=B_n with B_1 = −1/2.
pub fn bernoulli_numbers(n: usize) -> Vec<ExactRational> {
    let mut b: Vec<ExactRational> = Vec::with_capacity(n + 1);
    b.push(ExactRational::one());
    for m in 1..=n {
        let row = binomial_row(m as u64 + 1);
        let s: ExactRational = (0..m)
            .map(|k| ExactRational::from(row[k].clone()) * &b[k])
            .sum();
        b.push(-(s / ExactRational::from(m as u64 + 1)));
    }
    b
}

/// Yields `(n, H_n)` for n = 0, 1, 2, ….
#[derive(Clone, Debug)]
pub struct HarmonicNumbers {
    n: u64,
    value: ExactRational,
}

impl HarmonicNumbers {
    pub fn new() -> Self {
        HarmonicNumbers { n: 0, value: ExactRational::zero() }
    }
}

impl Default for HarmonicNumbers {
    fn default() -> Self {
        Self::new()
    }
}

impl Iterator for HarmonicNumbers {
    type Item = (u64, ExactRational);
    fn next(&mut self) -> Option<Self::Item> {
        let out = (self.n, self.value.clone());
        self.n += 1;
        self.value += ExactRational::ratio(1, self.n as i64);
        Some(out)
    }
}

/// Yields `(n, H'_n)` for n = 0, 1, 2, ….
#[derive(Clone, Debug)]
pub struct AltHarmonicNumbers {
    n: u64,
    value: ExactRational,
}

impl AltHarmonicNumbers {
    pub fn new() -> Self {
        AltHarmonicNumbers { n: 0, value: ExactRational::zero() }
    }
}

impl Default for AltHarmonicNumbers {
    fn default() -> Self {
        Self::new()
    }
}

impl Iterator for AltHarmonicNumbers {
    type Item = (u64, ExactRational);
    fn next(&mut self) -> Option<Self::Item> {
        let out = (self.n, self.value.clone());
        self.n += 1;
        let step = ExactRational::ratio(1, self.n as i64);
        if self.n % 2 == 1 {
            self.value += step;
        } else {
            self.value -= step;
        }
        Some(out)
    }
}

/// Yields `(n, binom(2n, n))` for n = 0, 1, 2, ….
#[derive(Clone, Debug)]
pub struct CentralBinomials {
    n: u64,
    value: BigInt,
}

impl CentralBinomials {
    pub fn new() -> Self {
        CentralBinomials { n: 0, value: BigInt::one() }
    }
}

impl Default for CentralBinomials {
    fn default() -> Self {
        Self::new()
    }
}

impl Iterator for CentralBinomials {
    type Item = (u64, ExactInt);
    fn next(&mut self) -> Option<Self::Item> {
        let out = (self.n, ExactInt(self.value.clone()));
        self.value = &self.value * BigInt::from(2 * (2 * self.n + 1)) / BigInt::from(self.n + 1);
        self.n += 1;
        Some(out)
    }
}
