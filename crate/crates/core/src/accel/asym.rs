//! Large-n expansions of the summands and Euler–Maclaurin tails of
//! n^{−a}·logᵖ n.

use std::sync::OnceLock;

use super::shape::{Factor, Sign, TermShape, Weight};
use crate::error::{Error, Result};
use crate::exact::{bernoulli_numbers, binomial, ExactRational};
use crate::hpreal::{const_gamma, const_sqrt_pi_recip, HPReal, PrecisionContext};
use crate::transform::generalized_binomial;

const CACHE: usize = 64;

fn bernoulli() -> &'static [ExactRational] {
    static B: OnceLock<Vec<ExactRational>> = OnceLock::new();
    B.get_or_init(|| bernoulli_numbers(2 * CACHE + 2))
}

/// binom(2n,n)/4ⁿ ~ (πn)^{−1/2}·Σ c_j n^{−j}.
pub fn cbc_coefficients() -> &'static [ExactRational] {
    static C: OnceLock<Vec<ExactRational>> = OnceLock::new();
    C.get_or_init(|| {
        let mut c = vec![ExactRational::one()];
        let half = ExactRational::ratio(1, 2);
        for m in 2..=CACHE as u64 + 1 {
            let s: ExactRational = (0..m - 1)
                .map(|j| &c[j as usize] * &generalized_binomial(&(&half - &ExactRational::from(j)), m - j))
                .sum();
            c.push(s / ExactRational::from(m - 1));
        }
        c
    })
}

/// r_n ~ Σ_{j≥1} d_j n^{−j}, from r_n + r_{n+1} = 1/(n+1). Index 0 holds 0.
pub fn remainder_coefficients() -> &'static [ExactRational] {
    static D: OnceLock<Vec<ExactRational>> = OnceLock::new();
    D.get_or_init(|| {
        let mut d = vec![ExactRational::zero()];
        for m in 1..=CACHE as u64 {
            let mut rhs = ExactRational::from(if m % 2 == 1 { 1i64 } else { -1 });
            for j in 1..m {
                let sign = if (m - j) % 2 == 0 { 1i64 } else { -1 };
                let b = ExactRational::from(binomial(m - 1, (m - j) as i64)) * ExactRational::from(sign);
                rhs -= &d[j as usize] * &b;
            }
            d.push(rhs / ExactRational::from(2u32));
        }
        d
    })
}

/// The non-logarithmic, γ-free part of H_n − log n − γ (index = power of 1/n).
fn harmonic_tail(len: usize, prev: bool) -> Vec<ExactRational> {
    let b = bernoulli();
    let mut f = vec![ExactRational::zero(); len];
    if len > 1 {
        f[1] = ExactRational::ratio(if prev { -1 } else { 1 }, 2);
    }
    let mut k = 1;
    while 2 * k < len {
        f[2 * k] = -(&b[2 * k] / &ExactRational::from(2 * k as u64));
        k += 1;
    }
    f
}

fn convolve(a: &[ExactRational], b: &[ExactRational], len: usize) -> Vec<ExactRational> {
    (0..len)
        .map(|k| (0..=k).filter(|&i| i < a.len() && k - i < b.len()).map(|i| &a[i] * &b[k - i]).sum())
        .collect()
}

/// Series quotient numer/denom in u = 1/n, both given high degree first.
fn rational_series(numer: &[i64], denom: &[i64], len: usize) -> Vec<ExactRational> {
    let at = |p: &[i64], i: usize| ExactRational::from(p.get(i).copied().unwrap_or(0));
    let b0 = at(denom, 0);
    let mut q: Vec<ExactRational> = Vec::with_capacity(len);
    for j in 0..len {
        let mut acc = at(numer, j);
        for i in 1..=j {
            acc -= at(denom, i) * &q[j - i];
        }
        q.push(acc / b0.clone());
    }
    q
}

/// t(n) ~ P·n^{−e2/2}·Σ_j (rational_j + γ·gamma_j + log n·log_j)·n^{−j},
/// P = 1 or π^{−1/2}.
#[derive(Clone, Debug)]
pub struct Expansion {
    pub e2: i64,
    pub root_pi: bool,
    pub rational: Vec<ExactRational>,
    pub gamma: Vec<ExactRational>,
    pub log: Vec<ExactRational>,
}

impl Expansion {
    /// Expansion to `len` orders. Requires a non-alternating summand whose
    /// geometric factor exactly cancels the weight's growth.
    pub fn of(shape: &TermShape, len: usize) -> Result<Self> {
        if shape.sign != Sign::Plus {
            return Err(Error::Unsupported("expansion of an alternating summand".into()));
        }
        if shape.limit_ratio() != ExactRational::one() {
            return Err(Error::Unsupported(format!(
                "summand ratio tends to {}, not 1",
                shape.limit_ratio()
            )));
        }
        let dn = shape.numer.degree();
        let dd = shape.denom.degree();
        let hi = |p: &[i64], d: usize| p[..=d].iter().rev().copied().collect::<Vec<_>>();
        let mut base = rational_series(&hi(&shape.numer.0, dn), &hi(&shape.denom.0, dd), len);
        let mut e2 = 2 * (dd as i64 - dn as i64);
        let root_pi = shape.weight != Weight::One;
        if root_pi {
            base = convolve(&base, cbc_coefficients(), len);
            e2 += 1;
        }
        for c in &mut base {
            *c = &*c * &shape.scale;
        }
        let zeros = vec![ExactRational::zero(); len];
        let (rational, gamma, log) = match shape.factor {
            Factor::One => (base, zeros.clone(), zeros),
            Factor::Harmonic | Factor::HarmonicPrev => {
                let tail = harmonic_tail(len, shape.factor == Factor::HarmonicPrev);
                (convolve(&base, &tail, len), base.clone(), base)
            }
            Factor::AltRemainder => (convolve(&base, remainder_coefficients(), len), zeros.clone(), zeros),
            Factor::AltHarmonic => {
                return Err(Error::Unsupported("H'_n has no smooth expansion".into()));
            }
        };
        Ok(Expansion { e2, root_pi, rational, gamma, log })
    }

    pub fn len(&self) -> usize {
        self.rational.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rational.is_empty()
    }

    pub fn uses_gamma(&self) -> bool {
        self.gamma.iter().any(|g| !g.is_zero())
    }

    pub fn has_log(&self) -> bool {
        self.log.iter().any(|g| !g.is_zero())
    }

    /// Twice the exponent of the slowest-decaying nonzero order.
    pub fn leading_e2(&self) -> i64 {
        let j = (0..self.len())
            .find(|&j| !(self.rational[j].is_zero() && self.log[j].is_zero() && self.gamma[j].is_zero()))
            .unwrap_or(0);
        self.e2 + 2 * j as i64
    }

    /// Numeric (constant, log) coefficients of order j.
    pub fn coefficients(&self, j: usize, ctx: &PrecisionContext) -> (HPReal, HPReal) {
        let mut c = HPReal::from_rational(&self.rational[j], ctx);
        if !self.gamma[j].is_zero() {
            c += HPReal::from_rational(&self.gamma[j], ctx) * const_gamma(ctx);
        }
        let mut l = HPReal::from_rational(&self.log[j], ctx);
        if self.root_pi {
            let p = const_sqrt_pi_recip(ctx);
            c = &c * &p;
            l = &l * &p;
        }
        (c, l)
    }
}

/// Powers of N shared by all orders of one tail evaluation.
pub struct TailPoint {
    pub n: u64,
    inv: HPReal,
    inv_sqrt: HPReal,
    pub log_n: HPReal,
}

impl TailPoint {
    pub fn new(n: u64, ctx: &PrecisionContext) -> Result<Self> {
        let big = HPReal::from_i64(n as i64, ctx);
        Ok(TailPoint {
            n,
            inv: HPReal::from_ratio(1, n as i64, ctx),
            inv_sqrt: big.sqrt()?.recip()?,
            log_n: big.ln()?,
        })
    }

    /// N^{−e2/2}.
    pub fn power(&self, e2: i64) -> Result<HPReal> {
        let mut p = self.inv.powi((e2 / 2) as i32)?;
        if e2 % 2 != 0 {
            p = &p * &self.inv_sqrt;
        }
        Ok(p)
    }
}

/// Σ_{n≥N} n^{−a}·(log n)^p by Euler–Maclaurin, a = e2/2 > 1, p ∈ {0, 1}.
/// Returns the value and the magnitude of the last correction used.
pub fn em_tail(e2: i64, log_power: u32, at: &TailPoint, ctx: &PrecisionContext) -> Result<(HPReal, HPReal)> {
    if e2 <= 2 {
        return Err(Error::Unsupported(format!("tail of n^-{}/2 diverges", e2)));
    }
    let a = ExactRational::ratio(e2, 2);
    let am1 = &a - &ExactRational::one();
    let f_n = at.power(e2)?;
    let n_big = HPReal::from_i64(at.n as i64, ctx);
    let lead = &f_n * &n_big; // N^{1−a}
    let inv_am1 = HPReal::from_rational(&am1.recip().expect("a > 1"), ctx);
    let mut total = if log_power == 0 {
        &lead * &inv_am1
    } else {
        &lead * &(&(&at.log_n * &inv_am1) + &inv_am1.square())
    };
    total += if log_power == 0 { f_n.div_int(2) } else { (&f_n * &at.log_n).div_int(2) };

    let b = bernoulli();
    let eps = ctx.epsilon();
    let inv2 = at.inv.square();
    // (a)_{2k−1}, Σ_{i<2k−1} 1/(a+i), B_{2k}/(2k)!
    let mut poch = a.clone();
    let mut digamma_sum = a.recip().expect("a > 0");
    let mut fact = ExactRational::from(2u32);
    let mut power = f_n.clone() * at.inv.clone(); // N^{−a−1}
    let mut last = HPReal::zero(ctx);
    let mut prev_mag: Option<HPReal> = None;
    for k in 1..CACHE {
        let coef = &b[2 * k] / &fact * &poch;
        let plain = HPReal::from_rational(&coef, ctx) * power.clone();
        // divergence is judged on the log-free part: the log factor can pass
        // through zero without the expansion having turned
        let mag = plain.abs();
        if let Some(p) = &prev_mag {
            if mag > *p {
                break;
            }
        }
        let term = if log_power == 1 {
            &plain * &(&at.log_n - &HPReal::from_rational(&digamma_sum, ctx))
        } else {
            plain
        };
        total += &term;
        last = term.abs();
        if mag <= eps {
            break;
        }
        prev_mag = Some(mag);
        // advance k → k+1
        let i1 = &a + &ExactRational::from(2 * k as u64 - 1);
        let i2 = &a + &ExactRational::from(2 * k as u64);
        poch = poch * &i1 * &i2;
        digamma_sum = digamma_sum + i1.recip().expect("positive") + i2.recip().expect("positive");
        fact *= ExactRational::from((2 * k as u64 + 1) * (2 * k as u64 + 2));
        power = &power * &inv2;
    }
    Ok((total, last))
}
