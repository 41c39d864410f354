//! Euler's transformation of series in Knopp's form, the binomial-coefficient
//! variant with exponent α, and Euler's transformation of alternating sums
//! over exact forward differences.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::error::{Error, Result};
use crate::exact::ExactRational;
use crate::hpreal::{HPReal, PrecisionContext};

/// Coefficients a_k with the expansion point and, for the binomial form,
/// the exponent α.
#[derive(Clone, Debug)]
pub struct TransformInput {
    pub a: Vec<ExactRational>,
    pub point: HPReal,
    pub alpha: Option<HPReal>,
}

impl TransformInput {
    /// y = x/(1+x), the point at which the transformed series is evaluated.
    pub fn mapped(&self) -> Result<HPReal> {
        let one = HPReal::one_like(&self.point);
        self.point.checked_div(&(&one + &self.point))
    }

    pub fn euler(&self, n: usize, ctx: &PrecisionContext) -> Result<(HPReal, HPReal)> {
        euler_partial_sums(&self.a, &self.point, n, ctx)
    }

    pub fn boyadzhiev(&self, n: usize, ctx: &PrecisionContext) -> Result<(HPReal, HPReal)> {
        let alpha = self
            .alpha
            .as_ref()
            .ok_or_else(|| Error::Unsupported("the binomial form needs alpha".into()))?;
        boyadzhiev_two_sided(&self.a, alpha, &self.point, n, ctx)
    }
}

impl HPReal {
    pub(crate) fn one_like(x: &HPReal) -> HPReal {
        HPReal::from_parts(BigInt::one() << x.bits() as usize, x.bits())
    }
}

/// b_n = Σ_{k≤n} binom(n,k)·a_k for n < len, in exact arithmetic. The
/// a_k are brought to a common denominator once so the inner sums are
/// integer convolutions with Pascal rows.
pub fn binomial_sums(a: &[ExactRational]) -> Vec<ExactRational> {
    signed_binomial_sums(a, false)
}

fn signed_binomial_sums(a: &[ExactRational], alternate: bool) -> Vec<ExactRational> {
    if a.is_empty() {
        return Vec::new();
    }
    let lcm = a.iter().fold(BigInt::one(), |l, q| l.lcm(q.denom().as_bigint()));
    let nums: Vec<BigInt> = a
        .iter()
        .enumerate()
        .map(|(k, q)| {
            let v = q.numer().as_bigint() * (&lcm / q.denom().as_bigint());
            if alternate && k % 2 == 1 {
                -v
            } else {
                v
            }
        })
        .collect();
    let mut row: Vec<BigInt> = vec![BigInt::one()];
    let mut out = Vec::with_capacity(a.len());
    for n in 0..a.len() {
        if n > 0 {
            let mut next = Vec::with_capacity(n + 1);
            next.push(BigInt::one());
            for k in 1..n {
                next.push(&row[k - 1] + &row[k]);
            }
            next.push(BigInt::one());
            row = next;
        }
        let s: BigInt = row.iter().zip(&nums).map(|(b, v)| b * v).sum();
        out.push(ExactRational::new(s, lcm.clone()).expect("nonzero denominator"));
    }
    out
}

/// Decimal digits by which the largest |b_n| exceeds 1. Powers of the
/// expansion point are carried with that many extra digits so that
/// multiplying them by b_n loses nothing.
fn headroom_digits(b: &[ExactRational]) -> u32 {
    let bits = b
        .iter()
        .filter(|q| !q.is_zero())
        .map(|q| q.numer().as_bigint().bits() as i64 - q.denom().as_bigint().bits() as i64)
        .max()
        .unwrap_or(0)
        .max(0);
    (bits as f64 * std::f64::consts::LOG10_2).ceil() as u32 + 2
}

fn outside(function: &'static str, what: &str, v: &HPReal) -> Error {
    Error::Domain { function, argument: v.to_sig_string(12), domain: what.into() }
}

/// N-term values of Σ a_k x^{k+1} and Σ b_n y^{n+1}, where
/// b_n = Σ_{m≤n} binom(n,m)·a_m and y = x/(1+x), so that x = y/(1−y).
pub fn euler_partial_sums(
    a: &[ExactRational],
    x: &HPReal,
    n: usize,
    ctx: &PrecisionContext,
) -> Result<(HPReal, HPReal)> {
    if a.len() < n {
        return Err(Error::Unsupported(format!("need {n} coefficients, got {}", a.len())));
    }
    let one = HPReal::one_like(x);
    if x.abs() >= one {
        return Err(outside("euler_partial_sums", "|x| < 1", x));
    }
    if (&one + x).signum() <= 0 || x.checked_div(&(&one + x))?.abs() >= one {
        return Err(outside("euler_partial_sums", "|x/(1+x)| < 1", x));
    }
    let b = binomial_sums(&a[..n]);
    let wide = ctx.widened(8 + headroom_digits(&b).max(headroom_digits(&a[..n])));
    let x = x.with_ctx(&wide);
    let one = HPReal::one(&wide);
    let y = x.checked_div(&(&one + &x))?;
    let mut px = x.clone();
    let mut py = y.clone();
    let mut lhs = HPReal::zero(&wide);
    let mut rhs = HPReal::zero(&wide);
    for k in 0..n {
        lhs += &px * &HPReal::from_rational(&a[k], &wide);
        rhs += &py * &HPReal::from_rational(&b[k], &wide);
        px = &px * &x;
        py = &py * &y;
    }
    Ok((lhs.with_ctx(ctx), rhs.with_ctx(ctx)))
}

/// N-term values of both sides of
/// Σ binom(α,n)(−1)ⁿ a_n zⁿ = (z+1)^α Σ binom(α,n)(−1)ⁿ b_n (z/(z+1))ⁿ,
/// with binom(α,n)(−1)ⁿ = Π_{j<n} (j−α)/(j+1) built by its product formula.
pub fn boyadzhiev_two_sided(
    a: &[ExactRational],
    alpha: &HPReal,
    z: &HPReal,
    n: usize,
    ctx: &PrecisionContext,
) -> Result<(HPReal, HPReal)> {
    if a.len() < n {
        return Err(Error::Unsupported(format!("need {n} coefficients, got {}", a.len())));
    }
    let one = HPReal::one_like(z);
    let zp1 = &one + z;
    if zp1.signum() <= 0 {
        return Err(outside("boyadzhiev_two_sided", "z > -1", z));
    }
    if z.checked_div(&zp1)?.abs() >= one {
        return Err(outside("boyadzhiev_two_sided", "|z/(z+1)| < 1", z));
    }
    let b = binomial_sums(&a[..n]);
    let wide = ctx.widened(10 + headroom_digits(&b).max(headroom_digits(&a[..n])));
    let z = z.with_ctx(&wide);
    let alpha = alpha.with_ctx(&wide);
    let one = HPReal::one(&wide);
    let zp1 = &one + &z;
    let w = z.checked_div(&zp1)?;
    let mut coef = one.clone();
    let mut pz = one.clone();
    let mut pw = one.clone();
    let mut lhs = HPReal::zero(&wide);
    let mut rhs = HPReal::zero(&wide);
    for k in 0..n {
        lhs += &(&coef * &pz) * &HPReal::from_rational(&a[k], &wide);
        rhs += &(&coef * &pw) * &HPReal::from_rational(&b[k], &wide);
        let j = k as i64;
        coef = (&coef * &(&HPReal::from_i64(j, &wide) - &alpha)).div_int(j + 1);
        pz = &pz * &z;
        pw = &pw * &w;
    }
    let rhs = zp1.powf(&alpha)? * rhs;
    Ok((lhs.with_ctx(ctx), rhs.with_ctx(ctx)))
}

/// Euler's transformation of an alternating series,
/// Σ_{k≥0} (−1)^k u_k = Σ_{j≥0} Δ^j u_0 / 2^{j+1} with
/// Δ^j u_0 = Σ_i binom(j,i)(−1)^i u_i, truncated after `u.len()` terms.
///
/// Returns the truncated value and its last term Δ^{J−1}u_0/2^J. When u is
/// completely monotone the differences are nonnegative and decreasing, so
/// that last term also bounds everything neglected.
pub fn euler_alternating(u: &[ExactRational]) -> (ExactRational, ExactRational) {
    let diffs = signed_binomial_sums(u, true);
    let mut sum = ExactRational::zero();
    let mut scale = ExactRational::ratio(1, 2);
    let half = ExactRational::ratio(1, 2);
    let mut tail = ExactRational::zero();
    for d in &diffs {
        sum += d * &scale;
        tail = d * &scale;
        scale *= &half;
    }
    (sum, tail)
}

/// binom(α, n) at rational α.
pub fn generalized_binomial(alpha: &ExactRational, n: u64) -> ExactRational {
    let mut acc = ExactRational::one();
    for j in 0..n {
        acc = acc * (alpha - &ExactRational::from(j)) / ExactRational::from(j + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{harmonic, binomial_transform};
    use crate::hpreal::const_log2;

    fn ctx() -> PrecisionContext {
        PrecisionContext::new(40).unwrap()
    }

    fn within(a: &HPReal, b: &HPReal, digits: i32, c: &PrecisionContext) -> bool {
        (a - b).abs() <= HPReal::pow10(-digits, c)
    }

    #[test]
    fn geometric_examples() {
        let c = ctx();
        let ones = vec![ExactRational::one(); 400];
        let (l, r) = euler_partial_sums(&ones, &HPReal::from_ratio(1, 2, &c), 400, &c).unwrap();
        assert!(within(&l, &HPReal::one(&c), 38, &c));
        assert!(within(&r, &HPReal::one(&c), 38, &c));
        let alt: Vec<_> = (0..200).map(|k| ExactRational::from(if k % 2 == 0 { 1 } else { -1 })).collect();
        let (l, r) = euler_partial_sums(&alt, &HPReal::from_ratio(1, 3, &c), 200, &c).unwrap();
        let quarter = HPReal::from_ratio(1, 4, &c);
        assert!(within(&l, &quarter, 38, &c));
        assert!(within(&r, &quarter, 38, &c));
    }

    #[test]
    fn log2_example() {
        let c = ctx();
        let a: Vec<_> = (0..400).map(|k| ExactRational::ratio(1, k + 1)).collect();
        let (l, r) = euler_partial_sums(&a, &HPReal::from_ratio(1, 2, &c), 400, &c).unwrap();
        assert!(within(&l, &const_log2(&c), 38, &c));
        assert!(within(&r, &const_log2(&c), 38, &c));
    }

    #[test]
    fn mapping_leaves_domain() {
        let c = ctx();
        let a = vec![ExactRational::one(); 4];
        assert!(euler_partial_sums(&a, &HPReal::from_i64(2, &c), 4, &c).is_err());
        assert!(euler_partial_sums(&a, &HPReal::from_ratio(-2, 3, &c), 4, &c).is_err());
        assert!(boyadzhiev_two_sided(&a, &HPReal::from_ratio(-1, 2, &c), &HPReal::from_ratio(-3, 4, &c), 4, &c).is_err());
    }

    #[test]
    fn boyadzhiev_constant_sequence() {
        let c = ctx();
        let ones = vec![ExactRational::one(); 400];
        let z = HPReal::from_ratio(3, 10, &c);
        let half = HPReal::from_ratio(-1, 2, &c);
        let (l, r) = boyadzhiev_two_sided(&ones, &half, &z, 400, &c).unwrap();
        let expect = HPReal::from_ratio(7, 10, &c).sqrt().unwrap().recip().unwrap();
        assert_eq!(expect.to_sig_string_truncated(7), "1.195228");
        assert!(within(&l, &expect, 25, &c));
        assert!(within(&r, &expect, 25, &c));
        let zeros = vec![ExactRational::zero(); 10];
        let (l, r) = boyadzhiev_two_sided(&zeros, &half, &z, 10, &c).unwrap();
        assert!(l.is_zero() && r.is_zero());
    }

    #[test]
    fn binomial_sums_of_alternating_harmonics_are_reciprocals() {
        // Σ_k binom(n,k)(−1)^{k−1} H_k = 1/n
        let a: Vec<_> = (0..120u64)
            .map(|k| if k % 2 == 1 { harmonic(k) } else { -harmonic(k) })
            .collect();
        let b = binomial_sums(&a);
        assert!(b[0].is_zero());
        for n in 1..120 {
            assert_eq!(b[n], ExactRational::ratio(1, n as i64));
        }
        // consistent with the exact module's transform on the plain H_k
        let h: Vec<_> = (0..30u64).map(harmonic).collect();
        for n in 1..30 {
            assert_eq!(binomial_transform(&h, n), -b[n].clone());
        }
    }

    #[test]
    fn euler_alternating_on_reciprocals() {
        // Σ (−1)^k/(k+1) = log 2, differences are 1/(j+1)
        let c = ctx();
        let u: Vec<_> = (0..160).map(|k| ExactRational::ratio(1, k + 1)).collect();
        let (s, tail) = euler_alternating(&u);
        assert!(tail < ExactRational::ratio(1, 10i64.pow(18)).pow(2));
        assert!(within(&HPReal::from_rational(&s, &c), &const_log2(&c), 38, &c));
    }

    #[test]
    fn generalized_binomial_half() {
        // binom(−1/2, n)(−1)^n = binom(2n,n)/4^n
        let b = generalized_binomial(&ExactRational::ratio(-1, 2), 3);
        assert_eq!(b, ExactRational::ratio(-5, 16));
    }
}
