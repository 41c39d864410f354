//! Second, independent algorithms for the constants, used to validate the
//! primary ones. None of these share a series with `constants`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::constants::arctan_recip;
use super::{round_shr, HPReal, PrecisionContext};
use crate::exact::{bernoulli_numbers, harmonic, ExactRational};

const GUARD: u32 = 24;

fn finish(mant: BigInt, ctx: &PrecisionContext) -> HPReal {
    HPReal::from_parts(round_shr(&mant, GUARD), ctx.bits())
}

/// π by the Gauss–Legendre arithmetic–geometric mean iteration.
pub fn pi_agm(ctx: &PrecisionContext) -> HPReal {
    let bits = ctx.bits() + GUARD;
    let one: BigInt = BigInt::one() << bits as usize;
    let mul = |a: &BigInt, b: &BigInt| round_shr(&(a * b), bits);
    let mut a = one.clone();
    let mut b = ((&one * &one) >> 1usize).sqrt();
    let mut t = &one >> 2usize;
    let mut p: u64 = 1;
    loop {
        let a_next: BigInt = (&a + &b) >> 1usize;
        let b_next = (&a * &b).sqrt();
        let d = &a - &a_next;
        t -= mul(&d, &d) * p;
        p *= 2;
        let done = (&a_next - &b_next).magnitude().bits() <= 2;
        a = a_next;
        b = b_next;
        if done {
            break;
        }
    }
    let s = &a + &b;
    let pi = (mul(&s, &s) << bits as usize) / (t << 2usize);
    finish(pi, ctx)
}

/// log 2 = Σ_{k≥1} 1/(k·2^k).
pub fn log2_series(ctx: &PrecisionContext) -> HPReal {
    let bits = ctx.bits() + GUARD;
    let mut power: BigInt = BigInt::one() << (bits as usize - 1);
    let mut sum = BigInt::zero();
    let mut k: u64 = 1;
    while !power.is_zero() {
        sum += &power / k;
        power >>= 1usize;
        k += 1;
    }
    finish(sum, ctx)
}

/// log 3 = 2·atanh(1/2).
pub fn log3_atanh(ctx: &PrecisionContext) -> HPReal {
    let bits = ctx.bits() + GUARD;
    finish(arctan_recip(2, bits, true) * 2, ctx)
}

/// γ from H_N − log N − 1/(2N) + Σ_k B_{2k}/(2k·N^{2k}) with the
/// Euler–Maclaurin correction carried until it stops shrinking.
pub fn gamma_euler_maclaurin(ctx: &PrecisionContext, n: u64) -> HPReal {
    let wide = ctx.widened(10);
    let h = HPReal::from_rational(&harmonic(n), &wide);
    let log_n = HPReal::from_i64(n as i64, &wide).ln().expect("positive");
    let mut acc = h - log_n - HPReal::from_ratio(1, 2 * n as i64, &wide);
    let bern = bernoulli_numbers(160);
    let n2 = ExactRational::from(n * n);
    let mut npow = n2.clone();
    let mut last: Option<HPReal> = None;
    for k in 1..=80usize {
        let term = &bern[2 * k] / &(ExactRational::from(2 * k as u64) * &npow);
        let t = HPReal::from_rational(&term, &wide);
        if let Some(prev) = &last {
            if t.abs() > prev.abs() || t.is_zero() {
                break;
            }
        }
        acc += &t;
        last = Some(t);
        npow *= &n2;
    }
    acc.with_ctx(ctx)
}

/// ζ(2) = 3·Σ_{n≥1} 1/(n²·binom(2n,n)).
pub fn zeta2_binomial(ctx: &PrecisionContext) -> HPReal {
    let bits = ctx.bits() + GUARD;
    let mut inv_binom: BigInt = (BigInt::one() << bits as usize) / 2u32;
    let mut sum = BigInt::zero();
    let mut n: u64 = 1;
    while !inv_binom.is_zero() {
        sum += &inv_binom / (n * n);
        n += 1;
        inv_binom = inv_binom * n / (2 * (2 * n - 1));
    }
    finish(sum * 3, ctx)
}

/// G from Σ_{n≥0} binom(2n,n)/((2n+1)²·8^n) = √2·(π·log2/8 + G/2), summed to
/// `terms` terms; the neglected tail is below 2^-terms.
pub fn catalan_from_eighth_power_series(ctx: &PrecisionContext, terms: u64) -> HPReal {
    let wide = ctx.widened(6);
    let mut w = HPReal::one(&wide);
    let mut sum = HPReal::zero(&wide);
    for n in 0..terms {
        if n > 0 {
            // binom(2n,n)/8^n from its predecessor: ·2(2n−1)/(8n)
            w = w.mul_int(2 * (2 * n as i64 - 1)).div_int(8 * n as i64);
        }
        sum += w.div_int((2 * n as i64 + 1) * (2 * n as i64 + 1));
    }
    let pi = pi_agm(&wide);
    let log2 = log2_series(&wide);
    let root2 = HPReal::from_i64(2, &wide).sqrt().expect("positive");
    let g = (sum / root2 - (pi * log2).div_int(8)).mul_int(2);
    g.with_ctx(ctx)
}

/// G from its defining alternating series Σ (−1)^n/(2n+1)², accelerated by
/// Euler's transformation over exact forward differences.
pub fn catalan_definition_euler(ctx: &PrecisionContext) -> HPReal {
    let wide = ctx.widened(6);
    // Σ (−1)^n u_n = Σ_j T_j / 2^{j+1}, T_j = Σ_i binom(j,i)(−1)^i u_i
    let terms = (wide.total_digits() as f64 * 3.33) as usize + 16;
    let u: Vec<ExactRational> = (0..terms as i64)
        .map(|n| ExactRational::ratio(1, (2 * n + 1) * (2 * n + 1)))
        .collect();
    let mut sum = ExactRational::zero();
    let mut diffs = u;
    let mut scale = ExactRational::ratio(1, 2);
    let half = ExactRational::ratio(1, 2);
    for _ in 0..terms {
        sum += &diffs[0] * &scale;
        scale *= &half;
        diffs = diffs.windows(2).map(|w| &w[0] - &w[1]).collect();
        if diffs.is_empty() {
            break;
        }
    }
    HPReal::from_rational(&sum, &wide).with_ctx(ctx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hpreal::{const_catalan, const_gamma, const_log2, const_log3, const_pi, const_zeta2};

    fn agree(a: &HPReal, b: &HPReal, ctx: &PrecisionContext) -> bool {
        (a - b).abs() <= ctx.epsilon()
    }

    #[test]
    fn each_constant_matches_its_second_method() {
        for digits in [32u32, 64, 100] {
            let c = PrecisionContext::new(digits).unwrap();
            assert!(agree(&const_pi(&c), &pi_agm(&c), &c), "pi @ {digits}");
            assert!(agree(&const_log2(&c), &log2_series(&c), &c), "log2 @ {digits}");
            assert!(agree(&const_log3(&c), &log3_atanh(&c), &c), "log3 @ {digits}");
            assert!(agree(&const_zeta2(&c), &zeta2_binomial(&c), &c), "zeta2 @ {digits}");
            assert!(agree(&const_catalan(&c), &catalan_definition_euler(&c), &c), "G @ {digits}");
        }
    }

    #[test]
    fn gamma_against_harmonic_asymptotics() {
        let c = PrecisionContext::default();
        // with N = 1000 the Bernoulli correction is good far past 74 digits
        let g = gamma_euler_maclaurin(&c, 1000);
        assert!(agree(&const_gamma(&c), &g, &c));
    }

    #[test]
    fn catalan_from_eighth_power_series_converges() {
        let c = PrecisionContext::default();
        let g = catalan_from_eighth_power_series(&c, 260);
        assert!(agree(&const_catalan(&c), &g, &c));
        let rough = catalan_from_eighth_power_series(&c, 20);
        assert!((&rough - &const_catalan(&c)).abs() > c.epsilon());
    }
}
