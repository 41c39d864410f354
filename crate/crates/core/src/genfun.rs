//! Generating functions: closed forms and truncated power series.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{ExactRational, AltHarmonicNumbers, HarmonicNumbers};
use crate::hpreal::{const_log2, HPReal, PrecisionContext};
use crate::special::dilog;

/// The generating functions evaluated by this module.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum GenFunId {
    /// Σ binom(2n,n) xⁿ = 1/√(1−4x)
    Cbc,
    /// Σ C_n xⁿ = (1 − √(1−4x))/(2x)
    Catalan,
    /// Σ_{n≥1} binom(2n,n) xⁿ/n = 2·log((1 − √(1−4x))/(2x))
    CbcOverN,
    /// Σ H_n xⁿ = −log(1−x)/(1−x)
    Harmonic,
    /// Σ H'_n xⁿ = log(1+x)/(1−x)
    AltHarmonic,
    /// Σ H'_n xⁿ/n, in dilogarithms
    AltHOverN,
    /// Σ (−1)^{n+1} H_n binom(2n,n) xⁿ
    HnCbcAlt,
    /// Σ H_n binom(2n,n) xⁿ
    HnCbc,
    /// Σ H_n binom(2n,n) x^{n+1}/(n+1)
    HnCbcInt,
}

/// An interval of x, with each end open or closed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: ExactRational,
    pub hi: ExactRational,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl Interval {
    fn open(lo: ExactRational, hi: ExactRational) -> Self {
        Interval { lo, hi, lo_closed: false, hi_closed: false }
    }

    pub fn contains(&self, x: &HPReal, ctx: &PrecisionContext) -> bool {
        let lo = HPReal::from_rational(&self.lo, ctx);
        let hi = HPReal::from_rational(&self.hi, ctx);
        let above = if self.lo_closed { *x >= lo } else { *x > lo };
        let below = if self.hi_closed { *x <= hi } else { *x < hi };
        above && below
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |q: &ExactRational| {
            let v = q.to_f64();
            format!("{v}")
        };
        write!(
            f,
            "{}{}, {}{}",
            if self.lo_closed { '[' } else { '(' },
            show(&self.lo),
            show(&self.hi),
            if self.hi_closed { ']' } else { ')' }
        )
    }
}

pub const ALL: [GenFunId; 9] = [
    GenFunId::Cbc,
    GenFunId::Catalan,
    GenFunId::CbcOverN,
    GenFunId::Harmonic,
    GenFunId::AltHarmonic,
    GenFunId::AltHOverN,
    GenFunId::HnCbcAlt,
    GenFunId::HnCbc,
    GenFunId::HnCbcInt,
];

impl GenFunId {
    pub fn name(self) -> &'static str {
        match self {
            GenFunId::Cbc => "CBC",
            GenFunId::Catalan => "CATALAN",
            GenFunId::CbcOverN => "CBC_OVER_N",
            GenFunId::Harmonic => "HARMONIC",
            GenFunId::AltHarmonic => "ALT_HARMONIC",
            GenFunId::AltHOverN => "ALT_H_OVER_N",
            GenFunId::HnCbcAlt => "HN_CBC_ALT",
            GenFunId::HnCbc => "HN_CBC",
            GenFunId::HnCbcInt => "HN_CBC_INT",
        }
    }

    /// Where the closed form is evaluated. The integrated series is the only
    /// one admitted at |x| = 1/4.
    pub fn validity(self) -> Interval {
        let q = ExactRational::ratio;
        match self {
            GenFunId::Cbc
            | GenFunId::Catalan
            | GenFunId::CbcOverN
            | GenFunId::HnCbcAlt
            | GenFunId::HnCbc => Interval::open(q(-1, 4), q(1, 4)),
            GenFunId::HnCbcInt => Interval { lo: q(-1, 4), hi: q(1, 4), lo_closed: true, hi_closed: true },
            GenFunId::Harmonic | GenFunId::AltHarmonic => Interval::open(q(-1, 1), q(1, 1)),
            GenFunId::AltHOverN => Interval { lo: q(-1, 1), hi: q(1, 1), lo_closed: true, hi_closed: false },
        }
    }

    /// Radius of convergence of the power series.
    pub fn radius(self) -> ExactRational {
        match self {
            GenFunId::Harmonic | GenFunId::AltHarmonic | GenFunId::AltHOverN => ExactRational::one(),
            _ => ExactRational::ratio(1, 4),
        }
    }

    /// First index of the defining series.
    pub fn start_index(self) -> u64 {
        match self {
            GenFunId::Cbc | GenFunId::Catalan | GenFunId::HnCbc | GenFunId::HnCbcInt => 0,
            _ => 1,
        }
    }
}

impl fmt::Display for GenFunId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GenFunId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ALL.iter()
            .copied()
            .find(|id| id.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownId(s.to_string()))
    }
}

fn check_domain(id: GenFunId, x: &HPReal, ctx: &PrecisionContext) -> Result<()> {
    let interval = id.validity();
    if interval.contains(x, ctx) {
        Ok(())
    } else {
        Err(Error::Domain {
            function: id.name(),
            argument: x.to_sig_string(12),
            domain: interval.to_string(),
        })
    }
}

/// Right-hand side of the generating function at `x`.
pub fn closed_form(id: GenFunId, x: &HPReal, ctx: &PrecisionContext) -> Result<HPReal> {
    check_domain(id, x, ctx)?;
    let wide = ctx.widened(6);
    let x = x.with_ctx(&wide);
    let one = HPReal::one(&wide);
    let two = HPReal::from_i64(2, &wide);
    let root = || (&one - &x.mul_int(4)).sqrt();
    let value = match id {
        GenFunId::Cbc => root()?.recip()?,
        GenFunId::Catalan => {
            if x.is_zero() {
                one.clone()
            } else {
                (&one - &root()?).checked_div(&x.mul_int(2))?
            }
        }
        GenFunId::CbcOverN => {
            if x.is_zero() {
                HPReal::zero(&wide)
            } else {
                (&one - &root()?).checked_div(&x.mul_int(2))?.ln()?.mul_int(2)
            }
        }
        GenFunId::Harmonic => {
            let y = &one - &x;
            -(y.ln()?.checked_div(&y)?)
        }
        GenFunId::AltHarmonic => (&one + &x).ln()?.checked_div(&(&one - &x))?,
        GenFunId::AltHOverN => {
            let a = alt_h_over_n_first(&x, &wide)?;
            let b = alt_h_over_n_second(&x, &wide)?;
            // both printed forms must describe the same function
            let tol = HPReal::pow10(-(ctx.working_digits() as i32), &wide);
            if (&a - &b).abs() > tol {
                return Err(Error::MethodDisagreement {
                    series: "ALT_H_OVER_N".into(),
                    a: a.to_sig_string(20),
                    b: b.to_sig_string(20),
                    bound: tol.to_sci_string(3),
                });
            }
            a
        }
        GenFunId::HnCbcAlt => {
            let r = (&one + &x.mul_int(4)).sqrt()?;
            let log = (r.mul_int(2)).checked_div(&(&one + &r))?.ln()?;
            two.checked_div(&r)? * log
        }
        GenFunId::HnCbc => {
            let r = root()?;
            let log = (&one + &r).checked_div(&r.mul_int(2))?.ln()?;
            two.checked_div(&r)? * log
        }
        GenFunId::HnCbcInt => {
            let y = root()?;
            let log2 = const_log2(&wide);
            // y·log(2y) → 0 as y → 0, which is the x = 1/4 endpoint
            let first = if y.is_zero() { HPReal::zero(&wide) } else { &y * &y.mul_int(2).ln()? };
            let one_y = &one + &y;
            first - &one_y * &one_y.ln()? + log2
        }
    };
    Ok(value.with_ctx(ctx))
}

/// Li₂(1/2) − Li₂(−x) − Li₂((1+x)/2) − log((1−x)/2)·log(1+x).
pub fn alt_h_over_n_first(x: &HPReal, ctx: &PrecisionContext) -> Result<HPReal> {
    let one = HPReal::one(ctx);
    let half = HPReal::from_ratio(1, 2, ctx);
    let up = &one + x;
    let mut v = dilog(&half, ctx)? - dilog(&-x, ctx)? - dilog(&up.ldexp(-1), ctx)?;
    // at x = −1 the log product is 0·log 0, whose limit is 0
    if !up.is_zero() {
        v -= (&one - x).ldexp(-1).ln()? * up.ln()?;
    }
    Ok(v)
}

/// Li₂((1−x)/2) − Li₂(1/2) − Li₂(−x) − log(1−x)·log 2.
pub fn alt_h_over_n_second(x: &HPReal, ctx: &PrecisionContext) -> Result<HPReal> {
    let one = HPReal::one(ctx);
    let half = HPReal::from_ratio(1, 2, ctx);
    let down = &one - x;
    Ok(dilog(&down.ldexp(-1), ctx)? - dilog(&half, ctx)? - dilog(&-x, ctx)?
        - down.ln()? * const_log2(ctx))
}

/// The first `n` terms of the defining power series at `x`.
///
/// Coefficients come from exact harmonic numbers; binom(2n,n)·xⁿ is carried
/// as one product by its ratio recurrence so that neither factor is formed
/// on its own.
pub fn series_partial(id: GenFunId, x: &HPReal, n: u64, ctx: &PrecisionContext) -> Result<HPReal> {
    if n == 0 {
        return Err(Error::Unsupported("series_partial needs at least one term".into()));
    }
    let digits_lost = (n as f64).log10().ceil() as u32 + 2;
    let wide = ctx.widened(digits_lost + 4);
    let x = x.with_ctx(&wide);
    let cbc_weighted = matches!(
        id,
        GenFunId::Cbc | GenFunId::Catalan | GenFunId::CbcOverN | GenFunId::HnCbcAlt | GenFunId::HnCbc | GenFunId::HnCbcInt
    );
    let start = id.start_index();
    let mut harmonic = HarmonicNumbers::new();
    let mut alt = AltHarmonicNumbers::new();
    for _ in 0..start {
        harmonic.next();
        alt.next();
    }
    // weight_k = binom(2k,k)·x^k or x^k
    let mut weight = if start == 0 {
        HPReal::one(&wide)
    } else if cbc_weighted {
        x.mul_int(2)
    } else {
        x.clone()
    };
    let mut sum = HPReal::zero(&wide);
    for k in start..start + n {
        let (_, h) = harmonic.next().expect("infinite");
        let (_, ha) = alt.next().expect("infinite");
        let k_i = k as i64;
        let coef: Option<ExactRational> = match id {
            GenFunId::Cbc => None,
            GenFunId::Catalan => Some(ExactRational::ratio(1, k_i + 1)),
            GenFunId::CbcOverN => Some(ExactRational::ratio(1, k_i)),
            GenFunId::Harmonic | GenFunId::HnCbc => Some(h),
            GenFunId::AltHarmonic => Some(ha),
            GenFunId::AltHOverN => Some(ha / ExactRational::from(k)),
            GenFunId::HnCbcAlt => Some(if k % 2 == 1 { h } else { -h }),
            GenFunId::HnCbcInt => Some(h / ExactRational::from(k + 1)),
        };
        let term = match coef {
            None => weight.clone(),
            Some(c) => &weight * &HPReal::from_rational(&c, &wide),
        };
        sum += if id == GenFunId::HnCbcInt { &term * &x } else { term };
        weight = if cbc_weighted {
            (&weight * &x).mul_int(2 * (2 * k_i + 1)).div_int(k_i + 1)
        } else {
            &weight * &x
        };
    }
    Ok(sum.with_ctx(ctx))
}

/// Terms needed for the partial sum to be within 10^-digits of the closed
/// form, from the geometric rate |x|/radius with a margin for the
/// polynomial and logarithmic factors. `None` on or outside the radius.
pub fn terms_for_digits(id: GenFunId, x: &HPReal, digits: u32) -> Option<u64> {
    let r = x.to_f64().abs() / id.radius().to_f64();
    if r >= 1.0 {
        return None;
    }
    if r == 0.0 {
        return Some(1);
    }
    let needed = (digits as f64 + 4.0) * std::f64::consts::LN_10 / -r.ln();
    Some(needed.ceil() as u64 + 40)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PrecisionContext {
        PrecisionContext::default()
    }

    fn close(a: &HPReal, b: &HPReal, digits: i32, c: &PrecisionContext) -> bool {
        (a - b).abs() <= HPReal::pow10(-digits, c)
    }

    #[test]
    fn closed_form_examples() {
        let c = ctx();
        let x = HPReal::from_ratio(3, 16, &c);
        assert!(close(&closed_form(GenFunId::Cbc, &x, &c).unwrap(), &HPReal::from_i64(2, &c), 64, &c));
        let l2 = const_log2(&c);
        let h = closed_form(GenFunId::Harmonic, &HPReal::from_ratio(1, 2, &c), &c).unwrap();
        assert!(close(&h, &l2.mul_int(2), 64, &c));
        let expect = HPReal::from_ratio(3, 2, &c).ln().unwrap().mul_int(4);
        let got = closed_form(GenFunId::HnCbc, &x, &c).unwrap();
        assert!(close(&got, &expect, 64, &c));
        assert!(got.to_sig_string(11).starts_with("1.6218604324"));
    }

    #[test]
    fn domain_error_reports_interval() {
        let c = ctx();
        let err = closed_form(GenFunId::Cbc, &HPReal::from_ratio(3, 10, &c), &c).unwrap_err();
        match err {
            Error::Domain { domain, .. } => assert_eq!(domain, "(-0.25, 0.25)"),
            other => panic!("unexpected {other:?}"),
        }
        assert!(closed_form(GenFunId::HnCbc, &HPReal::from_ratio(1, 4, &c), &c).is_err());
        assert!(closed_form(GenFunId::AltHOverN, &HPReal::one(&c), &c).is_err());
        assert!(closed_form(GenFunId::AltHOverN, &HPReal::from_i64(-1, &c), &c).is_ok());
    }

    #[test]
    fn integrated_series_at_quarter_is_log2() {
        let c = ctx();
        let v = closed_form(GenFunId::HnCbcInt, &HPReal::from_ratio(1, 4, &c), &c).unwrap();
        assert!(close(&v, &const_log2(&c), 64, &c));
    }

    #[test]
    fn series_partial_examples() {
        let c = ctx();
        for n in [1, 5, 40] {
            let v = series_partial(GenFunId::Cbc, &HPReal::zero(&c), n, &c).unwrap();
            assert_eq!(v, HPReal::one(&c));
        }
        let v = series_partial(GenFunId::Harmonic, &HPReal::from_ratio(1, 2, &c), 3, &c).unwrap();
        assert!(close(&v, &HPReal::from_ratio(53, 48, &c), 64, &c));
        assert_eq!(v.to_sig_string_truncated(8), "1.1041666");
        let x = HPReal::from_ratio(3, 16, &c);
        let long = series_partial(GenFunId::HnCbc, &x, 2000, &c).unwrap();
        let cf = closed_form(GenFunId::HnCbc, &x, &c).unwrap();
        assert!(close(&long, &cf, 60, &c));
        let short = series_partial(GenFunId::HnCbc, &x, 50, &c).unwrap();
        assert!((&short - &cf).abs() > (&long - &cf).abs());
    }

    #[test]
    fn first_coefficients_match_exact_module() {
        use crate::exact::{catalan_number, central_binomial, harmonic};
        let c = ctx();
        // at x = 1/1000 the coefficients are readable digit blocks; compare the
        // 4-term partial sums against exact rationals instead
        let xq = ExactRational::ratio(1, 1000);
        let x = HPReal::from_rational(&xq, &c);
        let exact: ExactRational = (0..4u64)
            .map(|k| {
                ExactRational::from(central_binomial(k))
                    * harmonic(k)
                    * xq.pow(k as i32)
            })
            .sum();
        let v = series_partial(GenFunId::HnCbc, &x, 4, &c).unwrap();
        assert!(close(&v, &HPReal::from_rational(&exact, &c), 63, &c));
        let exact: ExactRational =
            (0..4u64).map(|k| ExactRational::from(catalan_number(k)) * xq.pow(k as i32)).sum();
        let v = series_partial(GenFunId::Catalan, &x, 4, &c).unwrap();
        assert!(close(&v, &HPReal::from_rational(&exact, &c), 63, &c));
    }

    #[test]
    fn ids_round_trip_through_names() {
        for id in ALL {
            assert_eq!(id.name().parse::<GenFunId>().unwrap(), id);
        }
        assert!("NOPE".parse::<GenFunId>().is_err());
    }
}
