//! The summation engine.
//!
//! Geometric series are summed directly with a ratio tail bound. Series
//! whose terms decay like a power of n (the x = 1/4 boundary) use a partial
//! sum plus an Euler–Maclaurin tail built from the large-n expansion of the
//! summand, cross-checked by generalized Richardson extrapolation, which
//! needs no γ. Alternating sums with algebraic decay split H'_n into log 2
//! and its remainder and use Euler's transformation for the oscillating
//! part.

pub mod asym;
pub mod extrap;
pub mod shape;

use std::fmt;

use serde::Serialize;

pub use shape::{Factor, Poly, Sign, TermShape, Weight};

use crate::error::{Error, Result};
use crate::exact::ExactRational;
use crate::hpreal::{const_log2, const_sqrt_pi_recip, HPReal, PrecisionContext};
use crate::transform::euler_alternating;
use asym::{cbc_coefficients, em_tail, Expansion, TailPoint};

pub const DEFAULT_TERM_BUDGET: u64 = 1_000_000;

/// How the terms decay; declared per series, not inferred.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum DecayClass {
    Geometric { ratio: ExactRational },
    AlternatingGeometric { ratio: ExactRational },
    /// |t_n| ≍ logᵖ n / nˢ
    Algebraic { exponent: ExactRational, log_power: u32 },
    /// (−1)^{n+1}·H'_n·R(n) with R ≍ n^{−s}
    AlternatingAlgebraic { exponent: ExactRational },
}

impl DecayClass {
    pub fn tag(&self) -> &'static str {
        match self {
            DecayClass::Geometric { .. } => "GEOMETRIC",
            DecayClass::AlternatingGeometric { .. } => "ALTERNATING_GEOMETRIC",
            DecayClass::Algebraic { .. } => "ALGEBRAIC",
            DecayClass::AlternatingAlgebraic { .. } => "ALTERNATING_ALGEBRAIC",
        }
    }

    /// The class a shape's asymptotics imply; catalog declarations are
    /// checked against this.
    pub fn implied_by(shape: &TermShape) -> Result<DecayClass> {
        let ratio = shape.limit_ratio();
        let one = ExactRational::one();
        if ratio > one {
            return Err(Error::RatioNotConvergent(ratio.to_string()));
        }
        if ratio < one {
            return Ok(match shape.sign {
                Sign::Plus => DecayClass::Geometric { ratio },
                Sign::Alternating => DecayClass::AlternatingGeometric { ratio },
            });
        }
        let mut exponent = ExactRational::from(shape.denom.degree() as u64) - ExactRational::from(shape.numer.degree() as u64);
        if shape.weight != Weight::One {
            exponent += ExactRational::ratio(1, 2);
        }
        if shape.factor == Factor::AltRemainder {
            exponent += ExactRational::one();
        }
        match (shape.sign, shape.factor) {
            (Sign::Plus, Factor::Harmonic | Factor::HarmonicPrev) => Ok(DecayClass::Algebraic { exponent, log_power: 1 }),
            (Sign::Plus, Factor::One | Factor::AltRemainder) => Ok(DecayClass::Algebraic { exponent, log_power: 0 }),
            (Sign::Alternating, Factor::One | Factor::AltHarmonic) if shape.weight == Weight::One => {
                Ok(DecayClass::AlternatingAlgebraic { exponent })
            }
            _ => Err(Error::Unsupported(format!("no summation route for {shape:?}"))),
        }
    }
}

impl fmt::Display for DecayClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecayClass::Geometric { ratio } | DecayClass::AlternatingGeometric { ratio } => {
                write!(f, "{}({ratio})", self.tag())
            }
            DecayClass::Algebraic { exponent, log_power } => {
                write!(f, "ALGEBRAIC(s={exponent}, log^{log_power})")
            }
            DecayClass::AlternatingAlgebraic { exponent } => write!(f, "ALTERNATING_ALGEBRAIC(s={exponent})"),
        }
    }
}

impl Serialize for DecayClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A series Σ_{n ≥ start} t(n).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesSpec {
    pub name: String,
    pub shape: TermShape,
    pub start: u64,
    pub decay: DecayClass,
}

impl SeriesSpec {
    pub fn new(name: impl Into<String>, shape: TermShape, start: u64, decay: DecayClass) -> Self {
        SeriesSpec { name: name.into(), shape, start, decay }
    }

    pub fn exact_term(&self, n: u64) -> Option<ExactRational> {
        self.shape.exact_term(n)
    }

    pub fn term(&self, n: u64, ctx: &PrecisionContext) -> HPReal {
        match self.exact_term(n) {
            Some(q) => HPReal::from_rational(&q, ctx),
            None => self.shape.stream(n, ctx).next().expect("endless").1,
        }
    }

    /// Sum of the first `count` terms.
    pub fn partial_sum(&self, count: u64, ctx: &PrecisionContext) -> HPReal {
        let wide = ctx.widened(4 + digits_of(count));
        let mut s = HPReal::zero(&wide);
        for (_, t) in self.shape.stream(self.start, &wide).take(count as usize) {
            s += t;
        }
        s.with_ctx(ctx)
    }
}

fn digits_of(n: u64) -> u32 {
    (n.max(1) as f64).log10().ceil() as u32 + 1
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Method {
    DirectGeometric,
    DirectAlternating,
    EulerMaclaurin,
    Extrapolation,
    EulerTransformSplit,
    PairedExtrapolation,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Method::DirectGeometric => "DIRECT_GEOMETRIC",
            Method::DirectAlternating => "DIRECT_ALTERNATING",
            Method::EulerMaclaurin => "EULER_MACLAURIN",
            Method::Extrapolation => "EXTRAPOLATION",
            Method::EulerTransformSplit => "EULER_TRANSFORM_SPLIT",
            Method::PairedExtrapolation => "PAIRED_EXTRAPOLATION",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum BoundKind {
    /// A proven tail bound plus accumulated rounding.
    Rigorous,
    /// An error estimate with a safety factor.
    Heuristic,
}

/// The second method's answer for a boundary sum.
#[derive(Clone, Debug)]
pub struct CrossCheck {
    pub method: Method,
    pub value: HPReal,
    pub error_bound: HPReal,
}

#[derive(Clone, Debug)]
pub struct SumResult {
    pub value: HPReal,
    pub error_bound: HPReal,
    pub terms_used: u64,
    pub method: Method,
    pub bound: BoundKind,
    pub cross_check: Option<CrossCheck>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SumOptions {
    pub budget: u64,
    /// Never use γ: boundary sums go through extrapolation only.
    pub gamma_free: bool,
    pub cross_check: bool,
}

impl Default for SumOptions {
    fn default() -> Self {
        SumOptions { budget: DEFAULT_TERM_BUDGET, gamma_free: false, cross_check: true }
    }
}

/// One method's estimate, in the wide context.
struct Estimate {
    value: HPReal,
    bound: HPReal,
    terms: u64,
}

fn tolerance(target: u32, ctx: &PrecisionContext) -> HPReal {
    HPReal::pow10(-(target as i32) - 3, ctx)
}

fn check_target(target: u32, ctx: &PrecisionContext) -> Result<()> {
    if target == 0 || target > ctx.working_digits() {
        return Err(Error::InvalidPrecision(format!(
            "target of {target} digits needs 1..={} at this precision",
            ctx.working_digits()
        )));
    }
    Ok(())
}

fn budget_error(opts: &SumOptions, target: u32, best: &HPReal) -> Error {
    Error::BudgetExhausted { budget: opts.budget, target_digits: target, best_bound: best.to_sci_string(3) }
}

/// Sums to an absolute accuracy of 10^{−target}, choosing the route from
/// the declared decay class.
pub fn sum(spec: &SeriesSpec, target: u32, ctx: &PrecisionContext) -> Result<SumResult> {
    sum_with(spec, target, ctx, &SumOptions::default())
}

pub fn sum_with(spec: &SeriesSpec, target: u32, ctx: &PrecisionContext, opts: &SumOptions) -> Result<SumResult> {
    match spec.decay {
        DecayClass::Geometric { .. } | DecayClass::AlternatingGeometric { .. } => sum_geometric(spec, target, ctx, opts),
        DecayClass::Algebraic { .. } => sum_algebraic_boundary(spec, target, ctx, opts),
        DecayClass::AlternatingAlgebraic { .. } => sum_alternating_algebraic(spec, target, ctx, opts),
    }
}

fn finish(est: Estimate, ctx: &PrecisionContext, method: Method, bound: BoundKind, cross: Option<CrossCheck>) -> SumResult {
    let value = est.value.with_ctx(ctx);
    let rounding = (&value - &est.value).abs() + value.ulp();
    SumResult {
        value,
        error_bound: (est.bound + rounding).with_ctx(ctx),
        terms_used: est.terms,
        method,
        bound,
        cross_check: cross,
    }
}

/// Direct summation of a series with geometric decay.
///
/// Plain series stop once |t_N|·r/(1−r) is below tolerance, with r the
/// larger of the declared ratio and the last observed one; alternating
/// series stop at the first term below tolerance whose magnitude no longer
/// grows, which then bounds the tail.
pub fn sum_geometric(spec: &SeriesSpec, target: u32, ctx: &PrecisionContext, opts: &SumOptions) -> Result<SumResult> {
    check_target(target, ctx)?;
    let (ratio, alternating) = match &spec.decay {
        DecayClass::Geometric { ratio } => (ratio, false),
        DecayClass::AlternatingGeometric { ratio } => (ratio, true),
        other => return Err(Error::Unsupported(format!("{other} is not geometric"))),
    };
    if *ratio >= ExactRational::one() || ratio.is_negative() {
        return Err(Error::RatioNotConvergent(ratio.to_string()));
    }
    let wide = ctx.widened(8 + digits_of(opts.budget));
    let tol = tolerance(target, &wide);
    let one = HPReal::one(&wide);
    let declared = HPReal::from_rational(ratio, &wide);
    let mut sum = HPReal::zero(&wide);
    let mut prev: Option<HPReal> = None;
    let mut count = 0u64;
    let mut best = HPReal::pow10(3, &wide);
    for (_, t) in spec.shape.stream(spec.start, &wide) {
        let mag = t.abs();
        if alternating
            && count >= 4 && mag < tol && prev.as_ref().is_some_and(|p| mag <= *p) {
                let rounding = wide.epsilon().mul_int(4 * count as i64 + 4);
                let est = Estimate { value: sum, bound: mag + rounding, terms: count };
                return Ok(finish(est, ctx, Method::DirectAlternating, BoundKind::Rigorous, None));
            }
        if count >= opts.budget {
            return Err(budget_error(opts, target, &best));
        }
        sum += &t;
        count += 1;
        if !alternating && count >= 4 && !mag.is_zero() {
            if let Some(p) = prev.as_ref().filter(|p| !p.is_zero()) {
                let r = declared.clone().max(mag.checked_div(p)?);
                if r < one {
                    let tail = (&mag * &r).checked_div(&(&one - &r))?;
                    if tail < tol {
                        let rounding = wide.epsilon().mul_int(4 * count as i64);
                        let est = Estimate { value: sum, bound: tail + rounding, terms: count };
                        return Ok(finish(est, ctx, Method::DirectGeometric, BoundKind::Rigorous, None));
                    }
                    best = tail;
                }
            }
        } else if alternating {
            best = mag.clone();
        }
        prev = Some(mag);
    }
    unreachable!("term streams are endless")
}

const MAX_ORDERS: usize = 64;
const EM_START: u64 = 64;

/// Partial sum to N−1 plus the Euler–Maclaurin integral of the summand's
/// expansion from N; N doubles until the omitted orders are negligible.
fn euler_maclaurin(spec: &SeriesSpec, target: u32, wide: &PrecisionContext, opts: &SumOptions) -> Result<Estimate> {
    let expansion = Expansion::of(&spec.shape, MAX_ORDERS)?;
    let tol = tolerance(target, wide);
    let small = &tol * &HPReal::pow10(-3, wide);
    let mut stream = spec.shape.stream(spec.start, wide);
    let mut partial = HPReal::zero(wide);
    let mut cut = EM_START.max(spec.start + 1);
    let mut best = HPReal::pow10(3, wide);
    loop {
        if cut > opts.budget {
            return Err(budget_error(opts, target, &best));
        }
        while stream.index() < cut {
            partial += stream.next().expect("endless").1;
        }
        let at = TailPoint::new(cut, wide)?;
        let mut tail = HPReal::zero(wide);
        let mut em_error = HPReal::zero(wide);
        let mut mags: Vec<HPReal> = Vec::new();
        let mut truncation = None;
        for j in 0..expansion.len() {
            let (c, l) = expansion.coefficients(j, wide);
            if c.is_zero() && l.is_zero() {
                continue;
            }
            let e2 = expansion.e2 + 2 * j as i64;
            let (t0, r0) = em_tail(e2, 0, &at, wide)?;
            let mut contrib = &c * &t0;
            em_error += &c.abs() * &r0;
            if !l.is_zero() {
                let (t1, r1) = em_tail(e2, 1, &at, wide)?;
                contrib += &l * &t1;
                em_error += &l.abs() * &r1;
            }
            let mag = contrib.abs();
            // an asymptotic series: stop where it turns
            if mags.last().is_some_and(|m| mag > *m && *m < tol) {
                truncation = Some(mags.last().unwrap().clone());
                break;
            }
            tail += &contrib;
            mags.push(mag);
            let k = mags.len();
            if k >= 2 && mags[k - 1] < small && mags[k - 2] < small {
                truncation = Some(&mags[k - 1] + &mags[k - 2]);
                break;
            }
        }
        let truncation = truncation.unwrap_or_else(|| {
            let k = mags.len();
            &mags[k - 1] + &mags[k.saturating_sub(2)]
        });
        let rounding = wide.epsilon().mul_int(8 * (cut - spec.start) as i64 + 64);
        let bound = truncation.mul_int(10) + em_error.mul_int(10) + rounding;
        if bound < tol {
            return Ok(Estimate { value: partial + tail, bound, terms: cut - spec.start });
        }
        best = bound;
        cut *= 2;
    }
}

const EXTRAP_START: u64 = 400;
const EXTRAP_COUNTS: [usize; 5] = [8, 12, 16, 20, 24];

/// Richardson extrapolation of samples; returns the estimate whose
/// difference to the previous sample count is smallest.
fn richardson(samples: &[(u64, HPReal)], tail_e2: i64, logs: bool, wide: &PrecisionContext) -> Result<(HPReal, HPReal)> {
    let solve_ctx = wide.widened(30);
    let usable: Vec<usize> = EXTRAP_COUNTS.iter().copied().filter(|&c| c <= samples.len()).collect();
    if usable.len() < 2 {
        return Err(Error::Unsupported("too few extrapolation samples".into()));
    }
    let mut prev: Option<HPReal> = None;
    let mut best: Option<(HPReal, HPReal)> = None;
    for c in usable {
        let v = extrap::extrapolate(&samples[..c], tail_e2, logs, &solve_ctx)?.with_ctx(wide);
        if let Some(p) = &prev {
            let d = (&v - p).abs();
            if best.as_ref().is_none_or(|(_, bd)| d <= *bd) {
                best = Some((v.clone(), d));
            }
        }
        prev = Some(v);
    }
    let (v, d) = best.expect("two counts");
    Ok((v, d.mul_int(10)))
}

fn sample_sums(
    spec: &SeriesSpec,
    points: &[u64],
    stride: u64,
    wide: &PrecisionContext,
) -> Vec<(u64, HPReal)> {
    let mut stream = spec.shape.stream(spec.start, wide);
    let mut s = HPReal::zero(wide);
    let mut out = Vec::with_capacity(points.len());
    let mut used = 0u64;
    for &m in points {
        while used < m * stride {
            s += stream.next().expect("endless").1;
            used += 1;
        }
        out.push((m, s.clone()));
    }
    out
}

fn sample_plan(budget: u64, stride: u64) -> Result<Vec<u64>> {
    let mut m0 = EXTRAP_START;
    let max = *EXTRAP_COUNTS.last().unwrap();
    let mut pts = extrap::sample_points(m0, max);
    while pts.last().unwrap() * stride > budget && m0 > 25 {
        m0 /= 2;
        pts = extrap::sample_points(m0, max);
    }
    if pts.last().unwrap() * stride > budget {
        return Err(Error::Unsupported(format!("term budget {budget} too small to extrapolate")));
    }
    Ok(pts)
}

/// Extrapolation of partial sums S(M) = Σ_{n < start+M} t(n) over the
/// lattice M^{1−s−j}, with the log companions when the summand has log n.
fn extrapolation(spec: &SeriesSpec, wide: &PrecisionContext, opts: &SumOptions) -> Result<Estimate> {
    let expansion = Expansion::of(&spec.shape, 4)?;
    let points = sample_plan(opts.budget, 1)?;
    let samples = sample_sums(spec, &points, 1, wide);
    let (value, bound) = richardson(&samples, expansion.leading_e2() - 2, expansion.has_log(), wide)?;
    let rounding = wide.epsilon().mul_int(8 * *points.last().unwrap() as i64);
    Ok(Estimate { value, bound: bound + rounding, terms: *points.last().unwrap() })
}

fn agree(series: &str, a: &Estimate, b: &Estimate) -> Result<()> {
    let diff = (&a.value - &b.value).abs();
    let allowed = &a.bound + &b.bound;
    if diff > allowed {
        return Err(Error::MethodDisagreement {
            series: series.to_string(),
            a: a.value.to_sig_string(30),
            b: b.value.to_sig_string(30),
            bound: allowed.to_sci_string(3),
        });
    }
    Ok(())
}

/// Sums a series with algebraic decay: Euler–Maclaurin as primary route,
/// Richardson extrapolation as the independent cross-check (or as the only
/// route in γ-free mode when the summand carries H_n).
pub fn sum_algebraic_boundary(spec: &SeriesSpec, target: u32, ctx: &PrecisionContext, opts: &SumOptions) -> Result<SumResult> {
    check_target(target, ctx)?;
    let DecayClass::Algebraic { exponent, .. } = &spec.decay else {
        return Err(Error::Unsupported(format!("{} is not algebraic", spec.decay)));
    };
    if *exponent <= ExactRational::one() {
        return Err(Error::Unsupported(format!("Σ n^-{exponent} diverges")));
    }
    let wide = ctx.widened(12 + digits_of(opts.budget));
    let needs_gamma = Expansion::of(&spec.shape, 2)?.uses_gamma();
    if opts.gamma_free && needs_gamma {
        let est = extrapolation(spec, &wide, opts)?;
        if est.bound > tolerance(target, &wide).mul_int(1000) {
            return Err(budget_error(opts, target, &est.bound));
        }
        return Ok(finish(est, ctx, Method::Extrapolation, BoundKind::Heuristic, None));
    }
    let primary = euler_maclaurin(spec, target, &wide, opts)?;
    let cross = if opts.cross_check {
        let second = extrapolation(spec, &wide, opts)?;
        agree(&spec.name, &primary, &second)?;
        Some(CrossCheck {
            method: Method::Extrapolation,
            value: second.value.with_ctx(ctx),
            error_bound: second.bound.with_ctx(ctx),
        })
    } else {
        None
    };
    Ok(finish(primary, ctx, Method::EulerMaclaurin, BoundKind::Heuristic, cross))
}

/// Σ (−1)^{n+1}·H'_n·R(n) (or without H'_n), split through
/// H'_n = log 2 + (−1)^{n+1}·r_n into log 2·Σ(−1)^{n+1}R(n), summed by
/// Euler's transformation over exact differences, and Σ r_n·R(n), which is
/// non-alternating and goes through Euler–Maclaurin. The cross-check sums
/// consecutive pairs and extrapolates.
pub fn sum_alternating_algebraic(spec: &SeriesSpec, target: u32, ctx: &PrecisionContext, opts: &SumOptions) -> Result<SumResult> {
    check_target(target, ctx)?;
    let shape = &spec.shape;
    if shape.sign != Sign::Alternating
        || shape.weight != Weight::One
        || shape.base.0 != shape.base.1
        || !matches!(shape.factor, Factor::One | Factor::AltHarmonic)
    {
        return Err(Error::Unsupported(format!("{} does not fit {}", spec.name, spec.decay)));
    }
    let wide = ctx.widened(12 + digits_of(opts.budget));
    let tol = tolerance(target, &wide);

    // oscillating part: Σ_k (−1)^k u_k, u_k = R(start+k), sign of the first term (−1)^{start+1}
    let count = ((target + 8) as f64 * std::f64::consts::LOG2_10).ceil() as u64 + 16;
    let u: Vec<ExactRational> = (0..count).map(|k| shape.rational(spec.start + k) * &shape.scale).collect();
    let (euler, last) = euler_alternating(&u);
    let mut osc = HPReal::from_rational(&euler, &wide);
    if spec.start.is_multiple_of(2) {
        osc = -osc;
    }
    let osc_bound = HPReal::from_rational(&last.abs(), &wide).mul_int(2) + wide.epsilon();
    if osc_bound > tol {
        return Err(budget_error(opts, target, &osc_bound));
    }

    let primary = if shape.factor == Factor::AltHarmonic {
        let rest = SeriesSpec::new(
            format!("{} remainder", spec.name),
            TermShape { sign: Sign::Plus, factor: Factor::AltRemainder, ..shape.clone() },
            spec.start,
            DecayClass::Algebraic {
                exponent: ExactRational::from(shape.denom.degree() as u64 + 1) - ExactRational::from(shape.numer.degree() as u64),
                log_power: 0,
            },
        );
        let smooth = euler_maclaurin(&rest, target, &wide, opts)?;
        Estimate {
            value: &const_log2(&wide) * &osc + smooth.value,
            bound: osc_bound + smooth.bound,
            terms: smooth.terms.max(count),
        }
    } else {
        Estimate { value: osc, bound: osc_bound, terms: count }
    };

    let cross = if opts.cross_check {
        let points = sample_plan(opts.budget, 2)?;
        let samples = sample_sums(spec, &points, 2, &wide);
        let lead = 2 * (shape.denom.degree() as i64 - shape.numer.degree() as i64);
        let (value, bound) = richardson(&samples, lead, false, &wide)?;
        let second = Estimate { value, bound: bound + wide.epsilon().mul_int(16 * *points.last().unwrap() as i64), terms: 0 };
        agree(&spec.name, &primary, &second)?;
        Some(CrossCheck {
            method: Method::PairedExtrapolation,
            value: second.value.with_ctx(ctx),
            error_bound: second.bound.with_ctx(ctx),
        })
    } else {
        None
    };
    Ok(finish(primary, ctx, Method::EulerTransformSplit, BoundKind::Heuristic, cross))
}

/// (πn)^{−1/2}·Σ_{j<k} c_j n^{−j}, the k-term approximation of binom(2n,n)/4ⁿ.
pub fn cbc_ratio_asymptotic(n: u64, k_terms: u32, ctx: &PrecisionContext) -> Result<HPReal> {
    if n == 0 || !(1..=4).contains(&k_terms) {
        return Err(Error::Unsupported(format!("cbc_ratio_asymptotic({n}, {k_terms})")));
    }
    let wide = ctx.widened(4);
    let inv = HPReal::from_ratio(1, n as i64, &wide);
    let mut s = HPReal::zero(&wide);
    let mut p = HPReal::one(&wide);
    for c in &cbc_coefficients()[..k_terms as usize] {
        s += HPReal::from_rational(c, &wide) * p.clone();
        p = &p * &inv;
    }
    let root = HPReal::from_i64(n as i64, &wide).sqrt()?;
    Ok((&s * &const_sqrt_pi_recip(&wide)).checked_div(&root)?.with_ctx(ctx))
}
