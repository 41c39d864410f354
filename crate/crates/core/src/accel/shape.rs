//! Summand descriptions and their streaming evaluation.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::exact::{central_binomial, factorial, harmonic, alt_harmonic, pochhammer_half, ExactRational};
use crate::hpreal::{const_log2, HPReal, PrecisionContext};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Sign {
    Plus,
    /// (−1)^{n+1}
    Alternating,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Weight {
    One,
    /// binom(2n, n)
    CentralBinomial,
    /// (1/2)_n / n!
    PochhammerHalf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Factor {
    One,
    /// H_n
    Harmonic,
    /// H_{n−1}
    HarmonicPrev,
    /// H'_n
    AltHarmonic,
    /// r_n = |H'_n − log 2|, the tail of the alternating harmonic series
    AltRemainder,
}

/// Integer polynomial in n, coefficients from the constant term up.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Poly(pub Vec<i64>);

impl Poly {
    pub fn one() -> Self {
        Poly(vec![1])
    }

    pub fn degree(&self) -> usize {
        self.0.iter().rposition(|&c| c != 0).unwrap_or(0)
    }

    pub fn eval(&self, n: u64) -> BigInt {
        let n = BigInt::from(n);
        self.0.iter().rev().fold(BigInt::zero(), |acc, &c| acc * &n + c)
    }

    /// Product of linear and constant factors, e.g. `Poly::product(&[&[1, 2], &[1, 1]])`
    /// for (2n+1)(n+1).
    pub fn product(factors: &[&[i64]]) -> Self {
        let mut acc = vec![1i64];
        for f in factors {
            let mut next = vec![0i64; acc.len() + f.len() - 1];
            for (i, a) in acc.iter().enumerate() {
                for (j, b) in f.iter().enumerate() {
                    next[i + j] += a * b;
                }
            }
            acc = next;
        }
        Poly(acc)
    }
}

/// One summand, scale·sign·weight(n)·factor(n)·R(n)·(p/q)ⁿ with
/// R = numer/denom.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TermShape {
    pub sign: Sign,
    pub weight: Weight,
    pub factor: Factor,
    pub numer: Poly,
    pub denom: Poly,
    pub base: (u64, u64),
    #[serde(serialize_with = "ser_rational")]
    pub scale: ExactRational,
}

fn ser_rational<S: serde::Serializer>(q: &ExactRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

impl Default for TermShape {
    fn default() -> Self {
        TermShape {
            sign: Sign::Plus,
            weight: Weight::One,
            factor: Factor::One,
            numer: Poly::one(),
            denom: Poly::one(),
            base: (1, 1),
            scale: ExactRational::one(),
        }
    }
}

impl TermShape {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn alternating(mut self) -> Self {
        self.sign = Sign::Alternating;
        self
    }

    pub fn weight(mut self, w: Weight) -> Self {
        self.weight = w;
        self
    }

    pub fn factor(mut self, f: Factor) -> Self {
        self.factor = f;
        self
    }

    pub fn numer(mut self, p: Poly) -> Self {
        self.numer = p;
        self
    }

    pub fn denom(mut self, p: Poly) -> Self {
        self.denom = p;
        self
    }

    pub fn base(mut self, p: u64, q: u64) -> Self {
        self.base = (p, q);
        self
    }

    pub fn scale(mut self, s: ExactRational) -> Self {
        self.scale = s;
        self
    }

    /// lim |t_{n+1}/t_n|.
    pub fn limit_ratio(&self) -> ExactRational {
        let b = ExactRational::ratio(self.base.0 as i64, self.base.1 as i64);
        match self.weight {
            Weight::CentralBinomial => b * ExactRational::from(4u32),
            _ => b,
        }
    }

    /// R(n) = numer(n)/denom(n).
    pub fn rational(&self, n: u64) -> ExactRational {
        ExactRational::new(self.numer.eval(n), self.denom.eval(n)).expect("denominator vanishes")
    }

    fn sign_at(&self, n: u64) -> i64 {
        match self.sign {
            Sign::Alternating if n.is_multiple_of(2) => -1,
            _ => 1,
        }
    }

    /// The exact summand, or `None` when the factor is transcendental.
    pub fn exact_term(&self, n: u64) -> Option<ExactRational> {
        let w = match self.weight {
            Weight::One => ExactRational::one(),
            Weight::CentralBinomial => ExactRational::from(central_binomial(n)),
            Weight::PochhammerHalf => pochhammer_half(n) / ExactRational::from(factorial(n)),
        };
        let f = match self.factor {
            Factor::One => ExactRational::one(),
            Factor::Harmonic => harmonic(n),
            Factor::HarmonicPrev => harmonic(n.checked_sub(1)?),
            Factor::AltHarmonic => alt_harmonic(n),
            Factor::AltRemainder => return None,
        };
        let b = ExactRational::ratio(self.base.0 as i64, self.base.1 as i64).pow(n as i32);
        Some(ExactRational::from(self.sign_at(n)) * &self.scale * w * f * self.rational(n) * b)
    }

    /// Streams the summands from `start` on, in fixed point at `ctx`.
    pub fn stream(&self, start: u64, ctx: &PrecisionContext) -> TermStream<'_> {
        TermStream::new(self, start, ctx)
    }
}

/// Summands by recurrence: the weight times the geometric factor, H_n and
/// H'_n are each updated with one multiply/divide per step.
pub struct TermStream<'a> {
    shape: &'a TermShape,
    n: u64,
    ctx: PrecisionContext,
    weighted: HPReal,
    harmonic: HPReal,
    alt: HPReal,
    log2: Option<HPReal>,
}

impl<'a> TermStream<'a> {
    fn new(shape: &'a TermShape, start: u64, ctx: &PrecisionContext) -> Self {
        let w = match shape.weight {
            Weight::One => ExactRational::one(),
            Weight::CentralBinomial => ExactRational::from(central_binomial(start)),
            Weight::PochhammerHalf => pochhammer_half(start) / ExactRational::from(factorial(start)),
        };
        let b = ExactRational::ratio(shape.base.0 as i64, shape.base.1 as i64).pow(start as i32);
        let weighted = HPReal::from_rational(&(w * b * &shape.scale), ctx);
        let log2 = (shape.factor == Factor::AltRemainder).then(|| const_log2(ctx));
        TermStream {
            shape,
            n: start,
            ctx: *ctx,
            weighted,
            harmonic: HPReal::from_rational(&harmonic(start), ctx),
            alt: HPReal::from_rational(&alt_harmonic(start), ctx),
            log2,
        }
    }

    pub fn index(&self) -> u64 {
        self.n
    }

    fn factor_value(&self) -> HPReal {
        match self.shape.factor {
            Factor::One => HPReal::one(&self.ctx),
            Factor::Harmonic => self.harmonic.clone(),
            Factor::HarmonicPrev => &self.harmonic - &HPReal::from_ratio(1, self.n as i64, &self.ctx),
            Factor::AltHarmonic => self.alt.clone(),
            Factor::AltRemainder => {
                let d = self.log2.as_ref().expect("log 2 cached") - &self.alt;
                if self.n.is_multiple_of(2) {
                    d
                } else {
                    -d
                }
            }
        }
    }

    fn advance(&mut self) {
        let n = self.n as i64;
        let (p, q) = (self.shape.base.0 as i64, self.shape.base.1 as i64);
        self.weighted = match self.shape.weight {
            Weight::One => self.weighted.mul_int(p).div_int(q),
            Weight::CentralBinomial => self
                .weighted
                .mul_bigint(&(BigInt::from(2 * (2 * n + 1)) * p))
                .div_bigint(&(BigInt::from(n + 1) * q)),
            Weight::PochhammerHalf => self
                .weighted
                .mul_bigint(&(BigInt::from(2 * n + 1) * p))
                .div_bigint(&(BigInt::from(2 * (n + 1)) * q)),
        };
        let next = n + 1;
        let inv = HPReal::from_ratio(1, next, &self.ctx);
        self.harmonic += &inv;
        if next % 2 == 1 {
            self.alt += &inv;
        } else {
            self.alt -= &inv;
        }
        self.n += 1;
    }
}

impl Iterator for TermStream<'_> {
    type Item = (u64, HPReal);

    fn next(&mut self) -> Option<(u64, HPReal)> {
        let n = self.n;
        let base = &self.weighted * &self.factor_value();
        let r = base.mul_bigint(&self.shape.numer.eval(n)).div_bigint(&self.shape.denom.eval(n));
        let term = if self.shape.sign_at(n) < 0 { -r } else { r };
        self.advance();
        Some((n, term))
    }
}
