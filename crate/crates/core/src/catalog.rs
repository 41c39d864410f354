//! The identity inventory: each entry pairs a series with its closed form
//! (or none, for the open sums) and the verifier that compares the two.

use std::fmt;
use std::sync::OnceLock;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::accel::{sum_with, DecayClass, Factor, Poly, SeriesSpec, SumOptions, SumResult, TermShape, Weight};
use crate::error::{Error, Result};
use crate::exact::ExactRational;
use crate::hpreal::{const_catalan, const_log2, const_log3, const_pi, const_zeta2, HPReal, PrecisionContext};
use crate::special::dilog_rational;

pub type ClosedForm = fn(&PrecisionContext) -> Result<HPReal>;

pub struct Identity {
    pub id: &'static str,
    pub description: &'static str,
    /// Where the identity comes from, as free text.
    pub reference: &'static str,
    pub series: SeriesSpec,
    pub closed_form: Option<ClosedForm>,
    pub notes: &'static str,
}

impl Identity {
    pub fn class(&self) -> &DecayClass {
        &self.series.decay
    }

    pub fn is_open(&self) -> bool {
        self.closed_form.is_none()
    }
}

impl fmt::Debug for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Identity")
            .field("id", &self.id)
            .field("class", &self.series.decay.to_string())
            .field("open", &self.is_open())
            .finish()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Pass,
    Fail,
    OpenEvaluated,
    Error,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::OpenEvaluated => "OPEN_EVALUATED",
            Status::Error => "ERROR",
        })
    }
}

/// Decimal values travel as strings; field order is the wire order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub id: String,
    pub lhs_value: String,
    pub rhs_value: String,
    pub abs_diff: String,
    pub rel_diff: String,
    pub digits_verified: u32,
    pub terms_used: u64,
    pub elapsed_ms: u64,
    pub status: Status,
    #[serde(skip)]
    pub diagnostic: Option<String>,
}

/// A report together with the numbers behind it.
#[derive(Clone, Debug)]
pub struct Verification {
    pub report: VerificationReport,
    pub sum: Option<SumResult>,
    pub rhs: Option<HPReal>,
}

fn r(p: i64, q: i64) -> ExactRational {
    ExactRational::ratio(p, q)
}

fn poly(factors: &[&[i64]]) -> Poly {
    Poly::product(factors)
}

const N: &[i64] = &[0, 1];
const N1: &[i64] = &[1, 1];
const TWO_N1: &[i64] = &[1, 2];
const TWO_N_M1: &[i64] = &[-1, 2];

fn cbc(base: (u64, u64)) -> TermShape {
    TermShape::new().weight(Weight::CentralBinomial).base(base.0, base.1)
}

fn hcbc(base: (u64, u64)) -> TermShape {
    cbc(base).factor(Factor::Harmonic)
}

fn alt_h() -> TermShape {
    TermShape::new().alternating().factor(Factor::AltHarmonic)
}

fn geo(p: i64, q: i64) -> DecayClass {
    DecayClass::Geometric { ratio: r(p, q) }
}

fn alt_geo(p: i64, q: i64) -> DecayClass {
    DecayClass::AlternatingGeometric { ratio: r(p, q) }
}

fn alg(p: i64, q: i64, log_power: u32) -> DecayClass {
    DecayClass::Algebraic { exponent: r(p, q), log_power }
}

fn alt_alg(s: i64) -> DecayClass {
    DecayClass::AlternatingAlgebraic { exponent: r(s, 1) }
}

// closed forms

fn pi(c: &PrecisionContext) -> HPReal {
    const_pi(c)
}
fn pi2(c: &PrecisionContext) -> HPReal {
    const_pi(c).square()
}
fn l2(c: &PrecisionContext) -> HPReal {
    const_log2(c)
}
fn l3(c: &PrecisionContext) -> HPReal {
    const_log3(c)
}
fn int(v: i64, c: &PrecisionContext) -> HPReal {
    HPReal::from_i64(v, c)
}
fn li2(p: i64, q: i64, c: &PrecisionContext) -> Result<HPReal> {
    dilog_rational(&r(p, q), c)
}
fn sqrt5(c: &PrecisionContext) -> Result<HPReal> {
    int(5, c).sqrt()
}

fn rhs_e1e(c: &PrecisionContext) -> Result<HPReal> {
    Ok(pi2(c).div_int(12) - l2(c).square().div_int(2))
}
fn rhs_e1g(c: &PrecisionContext) -> Result<HPReal> {
    Ok(pi2(c).div_int(12) + l2(c).square().div_int(2))
}
fn rhs_ah1(c: &PrecisionContext) -> Result<HPReal> {
    Ok(l2(c).square())
}
fn rhs_ah2(c: &PrecisionContext) -> Result<HPReal> {
    Ok(pi2(c).div_int(6))
}
fn rhs_e1h(c: &PrecisionContext) -> Result<HPReal> {
    Ok(li2(1, 4, c)?.div_int(2) + l2(c).square())
}
fn rhs_e1h_alt(c: &PrecisionContext) -> Result<HPReal> {
    Ok(-li2(1, 9, c)?.div_int(6) + pi2(c).div_int(36) - l3(c).square().div_int(3) + l2(c) * l3(c))
}
fn rhs_e1i(c: &PrecisionContext) -> Result<HPReal> {
    Ok(-li2(1, 9, c)?.div_int(3) - pi2(c).div_int(36) - l2(c).square().div_int(2)
        - l3(c).square().mul_int(2).div_int(3)
        + (l2(c) * l3(c)).mul_int(2))
}
fn rhs_e1j(c: &PrecisionContext) -> Result<HPReal> {
    Ok(pi2(c).mul_int(2).div_int(3) + l2(c).square())
}
fn rhs_e1j_corrected(c: &PrecisionContext) -> Result<HPReal> {
    Ok(pi2(c).div_int(6) + l2(c).square())
}
fn rhs_eq5(c: &PrecisionContext) -> Result<HPReal> {
    Ok(l2(c).mul_int(4))
}
fn rhs_eq6(c: &PrecisionContext) -> Result<HPReal> {
    Ok(int(4, c) - l2(c).mul_int(4))
}
fn rhs_eq7(c: &PrecisionContext) -> Result<HPReal> {
    Ok(int(2, c))
}
fn rhs_eq8(c: &PrecisionContext) -> Result<HPReal> {
    let s5 = sqrt5(c)?;
    let a = (s5.mul_int(4) - int(8, c)).ln()?.mul_int(16);
    let b = (int(10, c) - s5.mul_int(4)).ln()? * s5.mul_int(8);
    Ok(a + b)
}
fn rhs_eq9(c: &PrecisionContext) -> Result<HPReal> {
    let s5 = sqrt5(c)?;
    let inner = s5.recip()? + HPReal::from_ratio(1, 2, c);
    Ok(&s5 - &int(2, c) + &s5 * &inner.ln()?)
}
fn rhs_ed2(c: &PrecisionContext) -> Result<HPReal> {
    Ok((pi(c) * l2(c)).div_int(2))
}
fn rhs_ed3(c: &PrecisionContext) -> Result<HPReal> {
    let s2 = int(2, c).sqrt()?;
    Ok(s2 * ((pi(c) * l2(c)).div_int(8) + const_catalan(c).div_int(2)))
}
fn rhs_eq10(c: &PrecisionContext) -> Result<HPReal> {
    Ok(pi2(c).div_int(3))
}
fn rhs_eq11(c: &PrecisionContext) -> Result<HPReal> {
    Ok(pi2(c).div_int(3) - l2(c).mul_int(4))
}
fn rhs_eq12(c: &PrecisionContext) -> Result<HPReal> {
    Ok(const_zeta2(c) - l2(c).square().mul_int(2))
}
fn rhs_eq13(c: &PrecisionContext) -> Result<HPReal> {
    Ok(const_zeta2(c) + l2(c).square().mul_int(2))
}
fn rhs_eq14(c: &PrecisionContext) -> Result<HPReal> {
    Ok(int(8, c) - l2(c).mul_int(8) - pi2(c).div_int(3) + l2(c).square().mul_int(4))
}
fn rhs_eq15(c: &PrecisionContext) -> Result<HPReal> {
    Ok(-pi2(c).div_int(3) - l2(c).square().mul_int(4) + l2(c).mul_int(8))
}
fn rhs_eq16(c: &PrecisionContext) -> Result<HPReal> {
    Ok(pi2(c).mul_int(2).div_int(3) + l2(c).square().mul_int(4) - l2(c).mul_int(12))
}
fn rhs_eq17(c: &PrecisionContext) -> Result<HPReal> {
    Ok(const_catalan(c).mul_int(4) - pi(c) * l2(c))
}
fn rhs_arc(c: &PrecisionContext) -> Result<HPReal> {
    Ok(pi(c).div_int(2))
}
fn rhs_eq18(c: &PrecisionContext) -> Result<HPReal> {
    Ok(pi(c).mul_int(2) + l2(c).mul_int(4) - int(8, c))
}
fn rhs_eq19(c: &PrecisionContext) -> Result<HPReal> {
    Ok(pi(c) * (int(1, c) - l2(c)) - (int(1, c) - const_catalan(c)).mul_int(4))
}
fn rhs_eq20(c: &PrecisionContext) -> Result<HPReal> {
    Ok(const_zeta2(c) - l2(c).square())
}
fn rhs_eq22(c: &PrecisionContext) -> Result<HPReal> {
    Ok(li2(1, 3, c)?.mul_int(2))
}
fn rhs_eq22_alt(c: &PrecisionContext) -> Result<HPReal> {
    Ok(li2(1, 9, c)?.div_int(3) + pi2(c).div_int(9) - l3(c).square().div_int(3))
}

struct Entry {
    id: &'static str,
    description: &'static str,
    reference: &'static str,
    shape: TermShape,
    start: u64,
    decay: DecayClass,
    closed_form: Option<ClosedForm>,
    notes: &'static str,
}

fn build() -> Vec<Identity> {
    let quarter = (1, 4);
    let entries = vec![
        Entry {
            id: "E1E",
            description: "Σ (−1)^{n+1} H'_n/(n+1) = π²/12 − log²2/2",
            reference: "Σ H'_n xⁿ/n integrated from −1 to 0",
            shape: alt_h().denom(Poly(N1.to_vec())),
            start: 1,
            decay: alt_alg(1),
            closed_form: Some(rhs_e1e),
            notes: "conditionally convergent",
        },
        Entry {
            id: "E1G",
            description: "Σ (−1)^{n+1} H'_n/n = π²/12 + log²2/2",
            reference: "Σ H'_n xⁿ/n at x = −1, computed a second way",
            shape: alt_h().denom(Poly(N.to_vec())),
            start: 1,
            decay: alt_alg(1),
            closed_form: Some(rhs_e1g),
            notes: "conditionally convergent",
        },
        Entry {
            id: "AH1",
            description: "Σ (−1)^{n+1} H'_n/(n(n+1)) = log²2",
            reference: "difference of E1G and E1E",
            shape: alt_h().denom(poly(&[N, N1])),
            start: 1,
            decay: alt_alg(2),
            closed_form: Some(rhs_ah1),
            notes: "",
        },
        Entry {
            id: "AH2",
            description: "Σ (−1)^{n+1} (2n+1)H'_n/(n(n+1)) = π²/6",
            reference: "sum of E1G and E1E",
            shape: alt_h().numer(Poly(TWO_N1.to_vec())).denom(poly(&[N, N1])),
            start: 1,
            decay: alt_alg(1),
            closed_form: Some(rhs_ah2),
            notes: "conditionally convergent",
        },
        Entry {
            id: "E1H",
            description: "Σ H'_n/(n·2ⁿ) = Li₂(1/4)/2 + log²2",
            reference: "Σ H'_n xⁿ/n at x = 1/2",
            shape: TermShape::new().factor(Factor::AltHarmonic).denom(Poly(N.to_vec())).base(1, 2),
            start: 1,
            decay: geo(1, 2),
            closed_form: Some(rhs_e1h),
            notes: "first printed right-hand side",
        },
        Entry {
            id: "E1H_ALT",
            description: "Σ H'_n/(n·2ⁿ) = −Li₂(1/9)/6 + π²/36 − log²3/3 + log2·log3",
            reference: "Σ H'_n xⁿ/n at x = 1/2, second form",
            shape: TermShape::new().factor(Factor::AltHarmonic).denom(Poly(N.to_vec())).base(1, 2),
            start: 1,
            decay: geo(1, 2),
            closed_form: Some(rhs_e1h_alt),
            notes: "equality with E1H amounts to a Li₂(1/4)/Li₂(1/9) relation",
        },
        Entry {
            id: "E1I",
            description: "Σ H'_n/((n+1)·2^{n+1}) = −Li₂(1/9)/3 − π²/36 − log²2/2 − 2log²3/3 + 2·log2·log3",
            reference: "Σ H'_n xⁿ integrated from 0 to 1/2",
            shape: TermShape::new()
                .factor(Factor::AltHarmonic)
                .denom(Poly(N1.to_vec()))
                .base(1, 2)
                .scale(r(1, 2)),
            start: 1,
            decay: geo(1, 2),
            closed_form: Some(rhs_e1i),
            notes: "",
        },
        Entry {
            id: "E1J",
            description: "Σ (3n+4)H'_n/(n(n+1)2ⁿ) = 2π²/3 + log²2",
            reference: "2·E1I combined with E1H, as printed",
            shape: TermShape::new()
                .factor(Factor::AltHarmonic)
                .numer(Poly(vec![4, 3]))
                .denom(poly(&[N, N1]))
                .base(1, 2),
            start: 1,
            decay: geo(1, 2),
            closed_form: Some(rhs_e1j),
            notes: "the printed value is wrong: the sum is π²/6 + log²2 (see E1J_CORRECTED)",
        },
        Entry {
            id: "E1J_CORRECTED",
            description: "Σ (3n+4)H'_n/(n(n+1)2ⁿ) = π²/6 + log²2",
            reference: "4·E1H − 4·E1I; the Li₂(1/9) terms cancel",
            shape: TermShape::new()
                .factor(Factor::AltHarmonic)
                .numer(Poly(vec![4, 3]))
                .denom(poly(&[N, N1]))
                .base(1, 2),
            start: 1,
            decay: geo(1, 2),
            closed_form: Some(rhs_e1j_corrected),
            notes: "equals 2·E1G",
        },
        Entry {
            id: "EQ5",
            description: "Σ H_n binom(2n,n)/((n+1)4ⁿ) = 4·log2",
            reference: "Σ H_n binom(2n,n) x^{n+1}/(n+1) at x = 1/4",
            shape: hcbc(quarter).denom(Poly(N1.to_vec())),
            start: 1,
            decay: alg(3, 2, 1),
            closed_form: Some(rhs_eq5),
            notes: "boundary of convergence",
        },
        Entry {
            id: "EQ6",
            description: "Σ binom(2n,n)/((n+1)²4ⁿ) = 4 − 4·log2",
            reference: "Edwards' arcsine-type sum",
            shape: cbc(quarter).denom(poly(&[N1, N1])),
            start: 0,
            decay: alg(5, 2, 0),
            closed_form: Some(rhs_eq6),
            notes: "",
        },
        Entry {
            id: "EQ7",
            description: "Σ H_n binom(2n,n)/((2n−1)4ⁿ) = 2",
            reference: "x = 1/4 in the H_n generating function divided by 2n−1",
            shape: hcbc(quarter).denom(Poly(TWO_N_M1.to_vec())),
            start: 1,
            decay: alg(3, 2, 1),
            closed_form: Some(rhs_eq7),
            notes: "",
        },
        Entry {
            id: "EQ8",
            description: "Σ (−1)^{n+1} H_n binom(2n,n)/((n+1)16ⁿ) = 16·log(4√5−8) + 8√5·log(10−4√5)",
            reference: "EQ5's generating function at x = −1/16",
            shape: hcbc((1, 16)).alternating().denom(Poly(N1.to_vec())),
            start: 1,
            decay: alt_geo(1, 4),
            closed_form: Some(rhs_eq8),
            notes: "",
        },
        Entry {
            id: "EQ9",
            description: "Σ (−1)^{n+1} H_n binom(2n,n)/((2n−1)16ⁿ) = (√5−2) + √5·log(1/√5 + 1/2)",
            reference: "EQ7's generating function at x = −1/16",
            shape: hcbc((1, 16)).alternating().denom(Poly(TWO_N_M1.to_vec())),
            start: 1,
            decay: alt_geo(1, 4),
            closed_form: Some(rhs_eq9),
            notes: "",
        },
        Entry {
            id: "ED2",
            description: "Σ binom(2n,n)/((2n+1)²4ⁿ) = π·log2/2",
            reference: "Edwards, integral of arcsin(x)/x",
            shape: cbc(quarter).denom(poly(&[TWO_N1, TWO_N1])),
            start: 0,
            decay: alg(5, 2, 0),
            closed_form: Some(rhs_ed2),
            notes: "",
        },
        Entry {
            id: "ED3",
            description: "Σ binom(2n,n)/((2n+1)²8ⁿ) = √2(π·log2/8 + G/2)",
            reference: "Edwards-type sum at x = 1/8",
            shape: cbc((1, 8)).denom(poly(&[TWO_N1, TWO_N1])),
            start: 0,
            decay: geo(1, 2),
            closed_form: Some(rhs_ed3),
            notes: "",
        },
        Entry {
            id: "EQ10",
            description: "Σ H_n binom(2n,n)/(n·4ⁿ) = π²/3",
            reference: "Σ H_n binom(2n,n) xⁿ/n at x = 1/4",
            shape: hcbc(quarter).denom(Poly(N.to_vec())),
            start: 1,
            decay: alg(3, 2, 1),
            closed_form: Some(rhs_eq10),
            notes: "term ≍ log n/(√π·n^{3/2})",
        },
        Entry {
            id: "EQ11",
            description: "Σ H_n binom(2n,n)/(n(n+1)4ⁿ) = π²/3 − 4·log2",
            reference: "EQ10 − EQ5",
            shape: hcbc(quarter).denom(poly(&[N, N1])),
            start: 1,
            decay: alg(5, 2, 1),
            closed_form: Some(rhs_eq11),
            notes: "",
        },
        Entry {
            id: "EQ12",
            description: "Σ binom(2n,n)/(n²4ⁿ) = ζ(2) − 2·log²2",
            reference: "Σ binom(2n,n) xⁿ/n integrated at x = 1/4",
            shape: cbc(quarter).denom(poly(&[N, N])),
            start: 1,
            decay: alg(5, 2, 0),
            closed_form: Some(rhs_eq12),
            notes: "",
        },
        Entry {
            id: "EQ13",
            description: "Σ (1/2)_n H_{n−1}/(n·n!) = ζ(2) + 2·log²2",
            reference: "EQ10 − EQ12",
            shape: TermShape::new()
                .weight(Weight::PochhammerHalf)
                .factor(Factor::HarmonicPrev)
                .denom(Poly(N.to_vec())),
            start: 1,
            decay: alg(3, 2, 1),
            closed_form: Some(rhs_eq13),
            notes: "(1/2)_n/n! = binom(2n,n)/4ⁿ",
        },
        Entry {
            id: "EQ14",
            description: "Σ binom(2n,n)/((n+1)³4ⁿ) = 8 − 8·log2 − π²/3 + 4·log²2",
            reference: "EQ6's generating function integrated once more",
            shape: cbc(quarter).denom(poly(&[N1, N1, N1])),
            start: 0,
            decay: alg(7, 2, 0),
            closed_form: Some(rhs_eq14),
            notes: "",
        },
        Entry {
            id: "EQ15",
            description: "Σ H_n binom(2n,n)/((n+1)²4ⁿ) = −π²/3 − 4·log²2 + 8·log2",
            reference: "EQ5's generating function divided by x and integrated",
            shape: hcbc(quarter).denom(poly(&[N1, N1])),
            start: 1,
            decay: alg(5, 2, 1),
            closed_form: Some(rhs_eq15),
            notes: "",
        },
        Entry {
            id: "EQ16",
            description: "Σ H_n binom(2n,n)/(n(n+1)²4ⁿ) = 2π²/3 + 4·log²2 − 12·log2",
            reference: "EQ10 − EQ5 − EQ15 by partial fractions",
            shape: hcbc(quarter).denom(poly(&[N, N1, N1])),
            start: 1,
            decay: alg(7, 2, 1),
            closed_form: Some(rhs_eq16),
            notes: "",
        },
        Entry {
            id: "EQ17",
            description: "Σ H_n binom(2n,n)/((2n+1)4ⁿ) = 4G − π·log2",
            reference: "x = 1/4 with the odd-index integral; G is Catalan's constant",
            shape: hcbc(quarter).denom(Poly(TWO_N1.to_vec())),
            start: 1,
            decay: alg(3, 2, 1),
            closed_form: Some(rhs_eq17),
            notes: "",
        },
        Entry {
            id: "ARC",
            description: "Σ binom(2n,n)/((2n+1)4ⁿ) = π/2",
            reference: "arcsine series at x = 1",
            shape: cbc(quarter).denom(Poly(TWO_N1.to_vec())),
            start: 0,
            decay: alg(3, 2, 0),
            closed_form: Some(rhs_arc),
            notes: "",
        },
        Entry {
            id: "EQ18",
            description: "Σ binom(2n,n)/((2n+1)(n+1)²4ⁿ) = 2π + 4·log2 − 8",
            reference: "partial fractions over ARC, EQ6 and the (n+1)⁻¹ sum",
            shape: cbc(quarter).denom(poly(&[TWO_N1, N1, N1])),
            start: 0,
            decay: alg(7, 2, 0),
            closed_form: Some(rhs_eq18),
            notes: "",
        },
        Entry {
            id: "EQ19",
            description: "Σ H_n binom(2n,n)/((2n−1)²4ⁿ) = π(1−log2) − 4(1−G)",
            reference: "EQ7's generating function divided by x and integrated",
            shape: hcbc(quarter).denom(poly(&[TWO_N_M1, TWO_N_M1])),
            start: 1,
            decay: alg(5, 2, 1),
            closed_form: Some(rhs_eq19),
            notes: "",
        },
        Entry {
            id: "EQ20",
            description: "Σ 2ⁿ H_n binom(2n,n)/(n·9ⁿ) = π²/6 − log²2",
            reference: "Σ H_n binom(2n,n) xⁿ/n at x = 2/9",
            shape: hcbc((2, 9)).denom(Poly(N.to_vec())),
            start: 1,
            decay: geo(8, 9),
            closed_form: Some(rhs_eq20),
            notes: "",
        },
        Entry {
            id: "EQ22",
            description: "Σ 3ⁿ H_n binom(2n,n)/(n·16ⁿ) = 2·Li₂(1/3)",
            reference: "Σ H_n binom(2n,n) xⁿ/n at x = 3/16",
            shape: hcbc((3, 16)).denom(Poly(N.to_vec())),
            start: 1,
            decay: geo(3, 4),
            closed_form: Some(rhs_eq22),
            notes: "≈ 0.73242645995",
        },
        Entry {
            id: "EQ22_ALT",
            description: "Σ 3ⁿ H_n binom(2n,n)/(n·16ⁿ) = Li₂(1/9)/3 + π²/9 − log²3/3",
            reference: "second printed form of EQ22",
            shape: hcbc((3, 16)).denom(Poly(N.to_vec())),
            start: 1,
            decay: geo(3, 4),
            closed_form: Some(rhs_eq22_alt),
            notes: "",
        },
        Entry {
            id: "OS1",
            description: "Σ H_n binom(2n,n)/(n²4ⁿ)",
            reference: "left open",
            shape: hcbc(quarter).denom(poly(&[N, N])),
            start: 1,
            decay: alg(5, 2, 1),
            closed_form: None,
            notes: "no closed form; digits are checked for stability across precisions",
        },
        Entry {
            id: "OS2",
            description: "Σ H_n binom(2n,n)/((2n+1)²4ⁿ)",
            reference: "left open",
            shape: hcbc(quarter).denom(poly(&[TWO_N1, TWO_N1])),
            start: 1,
            decay: alg(5, 2, 1),
            closed_form: None,
            notes: "no closed form; digits are checked for stability across precisions",
        },
    ];
    entries
        .into_iter()
        .map(|e| Identity {
            id: e.id,
            description: e.description,
            reference: e.reference,
            series: SeriesSpec::new(e.id, e.shape, e.start, e.decay),
            closed_form: e.closed_form,
            notes: e.notes,
        })
        .collect()
}

/// Every identity, in a fixed order.
pub fn inventory() -> &'static [Identity] {
    static INV: OnceLock<Vec<Identity>> = OnceLock::new();
    INV.get_or_init(build)
}

pub fn get(id: &str) -> Result<&'static Identity> {
    inventory()
        .iter()
        .find(|i| i.id.eq_ignore_ascii_case(id))
        .ok_or_else(|| Error::UnknownId(id.to_string()))
}

/// Extra precision for the second evaluation of an open sum.
pub const OPEN_PRECISION_STEP: u32 = 32;

pub fn verify(id: &str, digits: u32, ctx: &PrecisionContext) -> Result<VerificationReport> {
    Ok(verify_identity(get(id)?, digits, ctx, &SumOptions::default()).report)
}

fn error_report(identity: &Identity, started: Instant, err: &Error) -> Verification {
    Verification {
        report: VerificationReport {
            id: identity.id.to_string(),
            lhs_value: "error".into(),
            rhs_value: "error".into(),
            abs_diff: "error".into(),
            rel_diff: "error".into(),
            digits_verified: 0,
            terms_used: 0,
            elapsed_ms: started.elapsed().as_millis() as u64,
            status: Status::Error,
            diagnostic: Some(err.to_string()),
        },
        sum: None,
        rhs: None,
    }
}

fn relative(diff: &HPReal, reference: &HPReal) -> HPReal {
    diff.checked_div(&reference.abs()).unwrap_or_else(|_| diff.clone())
}

/// Sums the left side and compares it with the right side, or, for an open
/// sum, with a second evaluation at higher precision.
pub fn verify_identity(identity: &Identity, digits: u32, ctx: &PrecisionContext, opts: &SumOptions) -> Verification {
    let started = Instant::now();
    let wd = ctx.working_digits();
    let target = (digits + 4).min(wd);
    let lhs = match sum_with(&identity.series, target, ctx, opts) {
        Ok(s) => s,
        Err(e) => return error_report(identity, started, &e),
    };
    let (reference, rhs_value, rhs) = match identity.closed_form {
        Some(f) => match f(ctx) {
            Ok(v) => (v.clone(), v.to_sig_string(wd), Some(v)),
            Err(e) => return error_report(identity, started, &e),
        },
        None => {
            let Ok(hi) = PrecisionContext::new(wd + OPEN_PRECISION_STEP) else {
                return error_report(identity, started, &Error::InvalidPrecision("open-sum precision".into()));
            };
            match sum_with(&identity.series, target, &hi, opts) {
                Ok(s) => (s.value.with_ctx(ctx), "open".to_string(), None),
                Err(e) => return error_report(identity, started, &e),
            }
        }
    };
    let diff = (&lhs.value - &reference).abs();
    let digits_verified = lhs.value.agreeing_digits(&reference, wd);
    let status = match (identity.is_open(), digits_verified >= digits) {
        (false, true) => Status::Pass,
        (false, false) => Status::Fail,
        (true, true) => Status::OpenEvaluated,
        (true, false) => Status::Fail,
    };
    let report = VerificationReport {
        id: identity.id.to_string(),
        lhs_value: lhs.value.to_sig_string(wd),
        rhs_value,
        abs_diff: diff.to_sci_string(6),
        rel_diff: relative(&diff, &reference).to_sci_string(6),
        digits_verified,
        terms_used: lhs.terms_used,
        elapsed_ms: started.elapsed().as_millis() as u64,
        status,
        diagnostic: None,
    };
    Verification { report, sum: Some(lhs), rhs }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn ctx() -> PrecisionContext {
        PrecisionContext::new(32).unwrap()
    }

    #[test]
    fn inventory_shape() {
        let inv = inventory();
        assert!(inv.len() >= 29);
        let ids: HashSet<_> = inv.iter().map(|i| i.id).collect();
        assert_eq!(ids.len(), inv.len());
        assert_eq!(inv.iter().filter(|i| i.is_open()).count(), 2);
        assert!(inv.iter().filter(|i| !i.is_open()).count() >= 27);
        assert_eq!(get("EQ22").unwrap().class().to_string(), "GEOMETRIC(3/4)");
        assert_eq!(get("eq10").unwrap().class().to_string(), "ALGEBRAIC(s=3/2, log^1)");
        assert!(matches!(get("EQ99"), Err(Error::UnknownId(_))));
    }

    #[test]
    fn declared_classes_match_term_asymptotics() {
        for i in inventory() {
            assert_eq!(*i.class(), DecayClass::implied_by(&i.series.shape).unwrap(), "{}", i.id);
        }
    }

    #[test]
    fn direct_checks_of_the_sixteenth_sums() {
        // 30 plain terms against the printed right-hand sides
        let c = ctx();
        for (id, sig, prefix) in [("EQ8", 4, "0.05264"), ("EQ9", 4, "0.1148")] {
            let i = get(id).unwrap();
            let direct = i.series.partial_sum(30, &c);
            let rhs = (i.closed_form.unwrap())(&c).unwrap();
            assert!((&direct - &rhs).abs() < HPReal::pow10(-18, &c), "{id}");
            assert_eq!(rhs.to_sig_string_truncated(sig), prefix, "{id}");
        }
    }

    #[test]
    fn examples() {
        let c = ctx();
        let r = verify("EQ7", 12, &c).unwrap();
        assert_eq!(r.status, Status::Pass);
        let r = verify("EQ5", 12, &c).unwrap();
        assert_eq!(r.status, Status::Pass);
        assert!(r.rhs_value.starts_with("2.7725887222"));
        assert_eq!(r.rhs_value.replace(['.', '-'], "").len(), 32);
    }

    #[test]
    fn open_sum_report() {
        let c = ctx();
        let r = verify("OS2", 20, &c).unwrap();
        assert_eq!(r.status, Status::OpenEvaluated);
        assert_eq!(r.rhs_value, "open");
        assert!(r.digits_verified >= 20);
    }

    #[test]
    fn budget_exhaustion_is_an_error_status() {
        let c = ctx();
        let opts = SumOptions { budget: 10, ..SumOptions::default() };
        let v = verify_identity(get("EQ20").unwrap(), 12, &c, &opts);
        assert_eq!(v.report.status, Status::Error);
        assert!(v.report.diagnostic.unwrap().contains("budget"));
    }

    #[test]
    fn report_json_roundtrip() {
        let c = ctx();
        let r = verify("ARC", 12, &c).unwrap();
        let json = serde_json::to_string(&r).unwrap();
        assert!(json.starts_with("{\"id\":\"ARC\",\"lhs_value\":"));
        let back: VerificationReport = serde_json::from_str(&json).unwrap();
        assert_eq!(serde_json::to_string(&back).unwrap(), json);
    }
}
