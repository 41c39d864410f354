//! Dilogarithm on [−1, 1], digamma at integers and half-integers, and the
//! digamma form of the alternating harmonic numbers.

use crate::error::{Error, Result};
use crate::exact::{harmonic, ExactRational};
use crate::hpreal::{const_gamma, const_log2, const_log3, const_pi, HPReal, PrecisionContext};

/// A dilogarithm evaluation, argument in [−1, 1].
#[derive(Clone, Debug)]
pub struct DilogValue {
    pub argument: HPReal,
    pub value: HPReal,
}

impl DilogValue {
    pub fn new(x: &HPReal, ctx: &PrecisionContext) -> Result<Self> {
        Ok(DilogValue { argument: x.clone(), value: dilog(x, ctx)? })
    }
}

fn zeta2(ctx: &PrecisionContext) -> HPReal {
    const_pi(ctx).square().div_int(6)
}

/// Σ x^m/m², valid and geometric for |x| ≤ 1/2.
fn dilog_series(x: &HPReal) -> HPReal {
    let mut power = x.clone();
    let mut sum = HPReal::from_parts(Default::default(), x.bits());
    let mut m: i64 = 1;
    // rounding can pin |power| at one ulp when |x| = 1/2, so stop there
    while power.abs() > power.ulp() {
        sum += power.div_int(m * m);
        power = &power * x;
        m += 1;
    }
    sum
}

/// Li₂(x) for −1 ≤ x ≤ 1.
///
/// |x| ≤ 1/2 sums the power series directly. (1/2, 1) goes through the
/// reflection Li₂(x) = π²/6 − log x·log(1−x) − Li₂(1−x) and [−1, −1/2)
/// through Landen's Li₂(x) = −Li₂(x/(x−1)) − ½·log²(1−x); both land in the
/// direct-series range, so the term ratio never exceeds 1/2.
pub fn dilog(x: &HPReal, ctx: &PrecisionContext) -> Result<HPReal> {
    let one = HPReal::one(ctx);
    if x.abs() > one {
        return Err(Error::Domain {
            function: "dilog",
            argument: x.to_sig_string(12),
            domain: "[-1, 1]".into(),
        });
    }
    if *x == one {
        return Ok(zeta2(ctx));
    }
    let wide = ctx.widened(4);
    let x = x.with_ctx(&wide);
    let one = HPReal::one(&wide);
    let half = HPReal::from_ratio(1, 2, &wide);
    let value = if x > half {
        let y = &one - &x;
        zeta2(&wide) - x.ln()? * y.ln()? - dilog_series(&y)
    } else if x < -&half {
        let y = &one - &x;
        let mapped = x.checked_div(&(&x - &one))?;
        -dilog_series(&mapped) - y.ln()?.square().div_int(2)
    } else {
        dilog_series(&x)
    };
    Ok(value.with_ctx(ctx))
}

/// Li₂ at a rational argument.
pub fn dilog_rational(x: &ExactRational, ctx: &PrecisionContext) -> Result<HPReal> {
    dilog(&HPReal::from_rational(x, ctx), ctx)
}

/// A positive integer or half-integer, stored as twice its value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInteger(u64);

impl HalfInteger {
    /// The number `twice / 2`; `twice` must be at least 1.
    pub fn from_twice(twice: u64) -> Result<Self> {
        if twice == 0 {
            return Err(Error::Unsupported("digamma argument must be positive".into()));
        }
        Ok(HalfInteger(twice))
    }

    pub fn from_rational(q: &ExactRational) -> Result<Self> {
        let twice = q.clone() * ExactRational::from(2u32);
        let unsupported =
            || Error::Unsupported(format!("digamma argument {q} is not a positive integer or half-integer"));
        if !twice.is_integer() || twice.is_negative() {
            return Err(unsupported());
        }
        let t = twice.numer().to_i64().ok_or_else(unsupported)?;
        Self::from_twice(t as u64).map_err(|_| unsupported())
    }

    pub fn twice(&self) -> u64 {
        self.0
    }
}

/// ψ(m) for m ∈ {1/2, 1, 3/2, 2, …}:
/// ψ(n) = −γ + H_{n−1} and ψ(n + 1/2) = −γ − 2·log 2 + 2·Σ_{k=1..n} 1/(2k−1).
pub fn digamma_half(m: HalfInteger, ctx: &PrecisionContext) -> HPReal {
    let gamma = const_gamma(ctx);
    if m.0.is_multiple_of(2) {
        let n = m.0 / 2;
        HPReal::from_rational(&harmonic(n - 1), ctx) - gamma
    } else {
        let n = (m.0 - 1) / 2;
        let odd: ExactRational = (1..=n).map(|k| ExactRational::ratio(1, 2 * k as i64 - 1)).sum();
        HPReal::from_rational(&(odd * ExactRational::from(2u32)), ctx)
            - gamma
            - const_log2(ctx).mul_int(2)
    }
}

/// H'_n = log 2 + ((−1)^n/2)·[ψ((n+1)/2) − ψ((n+2)/2)].
pub fn alt_harmonic_closed(n: u64, ctx: &PrecisionContext) -> Result<HPReal> {
    if n == 0 {
        return Err(Error::Unsupported("alt_harmonic_closed needs n >= 1".into()));
    }
    let wide = ctx.widened(2);
    let a = digamma_half(HalfInteger::from_twice(n + 1)?, &wide);
    let b = digamma_half(HalfInteger::from_twice(n + 2)?, &wide);
    let bracket = (a - b).div_int(2);
    let signed = if n.is_multiple_of(2) { bracket } else { -bracket };
    Ok((const_log2(&wide) + signed).with_ctx(ctx))
}

/// Both sides of 2·Li₂(1/3) − Li₂(−1/3) = π²/6 − ½·log²3.
pub fn eq21_check(ctx: &PrecisionContext) -> Result<(HPReal, HPReal)> {
    let lhs = dilog_rational(&ExactRational::ratio(1, 3), ctx)?.mul_int(2)
        - dilog_rational(&ExactRational::ratio(-1, 3), ctx)?;
    let rhs = zeta2(ctx) - const_log3(ctx).square().div_int(2);
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::alt_harmonic;

    fn ctx() -> PrecisionContext {
        PrecisionContext::default()
    }

    fn close(a: &HPReal, b: &HPReal, c: &PrecisionContext) -> bool {
        (a - b).abs() <= c.epsilon()
    }

    #[test]
    fn special_values() {
        let c = ctx();
        let pi2 = const_pi(&c).square();
        let l2 = const_log2(&c);
        assert!(close(&dilog(&HPReal::one(&c), &c).unwrap(), &pi2.div_int(6), &c));
        assert!(close(&dilog(&HPReal::from_i64(-1, &c), &c).unwrap(), &-pi2.div_int(12), &c));
        let half = dilog(&HPReal::from_ratio(1, 2, &c), &c).unwrap();
        assert!(close(&half, &(pi2.div_int(12) - l2.square().div_int(2)), &c));
        assert!(dilog(&HPReal::zero(&c), &c).unwrap().is_zero());
    }

    #[test]
    fn domain_enforced() {
        let c = ctx();
        assert!(matches!(
            dilog(&HPReal::from_ratio(11, 10, &c), &c),
            Err(Error::Domain { .. })
        ));
        assert!(dilog(&HPReal::from_ratio(-11, 10, &c), &c).is_err());
    }

    #[test]
    fn direct_series_oracle_at_point_four() {
        let c = ctx();
        let x = HPReal::from_ratio(2, 5, &c);
        // plain power series at double precision as the oracle
        let wide = c.widened(20);
        let xw = HPReal::from_ratio(2, 5, &wide);
        let mut oracle = HPReal::zero(&wide);
        let mut p = xw.clone();
        for m in 1..400i64 {
            oracle += p.div_int(m * m);
            p = &p * &xw;
        }
        assert!(close(&dilog(&x, &c).unwrap(), &oracle.with_ctx(&c), &c));
    }

    #[test]
    fn monotone_and_bounded_on_unit_interval() {
        let c = PrecisionContext::new(32).unwrap();
        let bound = const_pi(&c).square().div_int(6);
        let mut prev = dilog(&HPReal::zero(&c), &c).unwrap();
        for k in 1..=20 {
            let v = DilogValue::new(&HPReal::from_ratio(k, 20, &c), &c).unwrap();
            assert!(v.value > prev);
            assert!(v.value.abs() <= bound);
            prev = v.value;
        }
    }

    #[test]
    fn digamma_examples() {
        let c = ctx();
        let g = const_gamma(&c);
        let l2 = const_log2(&c);
        let one = HalfInteger::from_rational(&ExactRational::one()).unwrap();
        assert!(close(&digamma_half(one, &c), &-g.clone(), &c));
        let half = HalfInteger::from_twice(1).unwrap();
        assert!(close(&digamma_half(half, &c), &(-g.clone() - l2.mul_int(2)), &c));
        let five_halves = HalfInteger::from_rational(&ExactRational::ratio(5, 2)).unwrap();
        let expect = HPReal::from_ratio(8, 3, &c) - g - l2.mul_int(2);
        assert!(close(&digamma_half(five_halves, &c), &expect, &c));
    }

    #[test]
    fn digamma_rejects_other_arguments() {
        assert!(HalfInteger::from_rational(&ExactRational::ratio(1, 3)).is_err());
        assert!(HalfInteger::from_rational(&ExactRational::ratio(-1, 2)).is_err());
        assert!(HalfInteger::from_rational(&ExactRational::zero()).is_err());
        assert!(HalfInteger::from_twice(0).is_err());
    }

    #[test]
    fn alt_harmonic_closed_matches_exact() {
        let c = ctx();
        assert!(close(&alt_harmonic_closed(1, &c).unwrap(), &HPReal::one(&c), &c));
        assert!(close(&alt_harmonic_closed(2, &c).unwrap(), &HPReal::from_ratio(1, 2, &c), &c));
        let h7 = alt_harmonic_closed(7, &c).unwrap();
        assert!(h7.to_sig_string(10).starts_with("0.759523809"));
        for n in 1..60 {
            let exact = HPReal::from_rational(&alt_harmonic(n), &c);
            assert!(close(&alt_harmonic_closed(n, &c).unwrap(), &exact, &c), "n = {n}");
        }
        assert!(alt_harmonic_closed(0, &c).is_err());
    }

    #[test]
    fn eq21_sides_agree() {
        let c = ctx();
        let (l, r) = eq21_check(&c).unwrap();
        assert!(l.to_sig_string(12).starts_with("1.04145958644"));
        assert!((&l - &r).abs() <= HPReal::pow10(-(c.working_digits() as i32) + 2, &c));
        let c128 = PrecisionContext::new(128).unwrap();
        let (l, r) = eq21_check(&c128).unwrap();
        assert!((&l - &r).abs() <= c128.epsilon());
    }
}
